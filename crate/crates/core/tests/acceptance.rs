//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria whose printed formula is contradicted by exact computation are reported as FAIL and
//! marked "known"; for those the counter-witness itself is asserted, so the binary exits 0 only
//! when every line is either a PASS or the expected, verified FAIL.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use conekernels::compact_dual::{
    a_n_derived, a_n_printed, family_orthogonality_check, interval_scaling_check, jacobi_family,
    rank1_coefficient_check, rank1_coefficient_derived, rank1_coefficient_printed, rank1_compact_suite, rank1_sq_coefficients, shat_routes_check,
};
use conekernels::exact_core::rational::{int, rat, to_f64};
use conekernels::hyper_fk::{conjecture_verify, rank1_sum_identity};
use conekernels::kernel_lab::{gram_matrix, KernelSpaceSpec};
use conekernels::report::{emit_json, preset_cells, run_grid_at, GridSpec, Report, Target};
use conekernels::selberg::{
    moment_noncompact, moment_noncompact_chamber, moment_noncompact_even, moment_numeric, selberg_total_mass,
    WeightKind, DEFAULT_NODES, DEFAULT_TERM_BUDGET,
};
use conekernels::symfunc::jack::{is_dominance_triangular, jack_pairing};
use conekernels::symfunc::signature::partitions;
use conekernels::symfunc::{
    ball, domain_params, gen_signatures, jack_p, jack_p_symbolic, kernel_k, kernel_k_by_extraction, spherical_phi,
    Signature, SymPoly,
};
use conekernels::{RatFun, Rational, Status};

/// (m, [(monomial, coefficient)])
type Table = Vec<(Vec<u32>, Vec<(Vec<u32>, Rational)>)>;

const TS: &str = "2000-01-01T00:00:00Z";

struct Line {
    id: &'static str,
    pass: bool,
    /// FAIL expected because the printed statement is contradicted; the counter-witness was checked.
    known: bool,
    detail: String,
}

impl Line {
    fn ok(&self) -> bool {
        self.pass != self.known
    }
}

fn sig(p: &[u32]) -> Signature {
    Signature::new(p).unwrap()
}

fn grid(preset: &str, t: Target, jobs: usize) -> Report {
    run_grid_at(&GridSpec::new(preset_cells(preset).unwrap(), t, jobs).unwrap(), TS.into()).unwrap()
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn within(t: Instant, limit: Duration) -> (bool, String) {
    let e = t.elapsed();
    (e <= limit, format!("{:.1}s of {}s", e.as_secs_f64(), limit.as_secs()))
}

fn c1() -> Line {
    let t = Instant::now();
    let mut bad = Vec::new();
    for d in [1, 2, 3, 5] {
        for q in 0..=3 {
            let v = conjecture_verify(&ball(d).unwrap(), q).unwrap();
            if !(v.pass() && v.constant_ratio.as_ref().is_some_and(RatFun::is_one)) {
                bad.push(format!("d={d} q={q}"));
            }
        }
    }
    let (fast, time) = within(t, Duration::from_secs(10));
    Line {
        id: "1",
        pass: bad.is_empty() && fast,
        known: false,
        detail: format!("rank-1 conjecture, 16 cells, constantRatio ≡ 1; failures [{}]; {time}", bad.join(", ")),
    }
}

fn c2_c3() -> (Line, Line) {
    let t = Instant::now();
    let mut rep = Vec::new();
    let mut pp = Vec::new();
    for preset in ["paper-r2", "paper-r3"] {
        rep.push(grid(preset, Target::Reproducing, jobs()));
        pp.push(grid(preset, Target::PropPP, jobs()));
    }
    let (fast, time) = within(t, Duration::from_secs(600));
    let count = |rs: &[Report]| {
        rs.iter().fold((0, 0), |(p, n), r| {
            let s = r.summary();
            (p + s.pass, n + r.cells.len())
        })
    };
    let (rp, rn) = count(&rep);
    let (pp_pass, pn) = count(&pp);
    (
        Line {
            id: "2",
            pass: rp == rn && fast,
            known: false,
            detail: format!("reproducing property {rp}/{rn} cells over paper-r2 and paper-r3; {time}"),
        },
        Line { id: "3", pass: pp_pass == pn, known: false, detail: format!("₃F₂ identity {pp_pass}/{pn} cells") },
    )
}

fn c4() -> Line {
    let mut bad = Vec::new();
    for a in 1..=8u32 {
        let ai = a as i64;
        let p2 = domain_params(2, a, 0).unwrap();
        let table2: Table = vec![
            (vec![], vec![(vec![], int(1))]),
            (vec![1], vec![(vec![1], int(1))]),
            (vec![1, 1], vec![(vec![1, 1], rat(2, ai + 2))]),
            (vec![2], vec![(vec![2], rat(1, 2)), (vec![1, 1], rat(ai, ai + 2))]),
            (vec![2, 1], vec![(vec![2, 1], rat(2, ai + 4))]),
            (vec![2, 2], vec![(vec![2, 2], rat(2, (ai + 2) * (ai + 4)))]),
        ];
        for (m, terms) in table2 {
            let expect = SymPoly::from_terms(2, terms.into_iter().map(|(s, c)| (sig(&s), c)));
            if kernel_k(&sig(&m), &p2).unwrap() != expect {
                bad.push(format!("K{} a={a}", sig(&m)));
            }
        }
        let p3 = domain_params(3, a, 0).unwrap();
        let den = 3 * (3 * ai + 2);
        let table3: Table = vec![
            (vec![], vec![(vec![], int(1))]),
            (vec![1], vec![(vec![1], rat(1, 3))]),
            (vec![1, 1], vec![(vec![1, 1], rat(1, 3))]),
            (vec![1, 1, 1], vec![(vec![1, 1, 1], int(1))]),
            (vec![2], vec![(vec![2], rat(ai + 2, den)), (vec![1, 1], rat(2 * ai, den))]),
            (vec![2, 1], vec![(vec![2, 1], rat(ai + 1, den)), (vec![1, 1, 1], rat(3 * ai, den))]),
            (vec![2, 1, 1], vec![(vec![2, 1, 1], rat(1, 3))]),
            (vec![2, 2], vec![(vec![2, 2], rat(ai + 2, den)), (vec![2, 1, 1], rat(2 * ai, den))]),
            (vec![2, 2, 1], vec![(vec![2, 2, 1], rat(1, 3))]),
            (vec![2, 2, 2], vec![(vec![2, 2, 2], int(1))]),
        ];
        for (m, terms) in table3 {
            let expect = SymPoly::from_terms(3, terms.into_iter().map(|(s, c)| (sig(&s), c)));
            if spherical_phi(&sig(&m), &p3).unwrap() != expect {
                bad.push(format!("φ{} a={a}", sig(&m)));
            }
        }
    }
    Line {
        id: "4",
        pass: bad.is_empty(),
        known: false,
        detail: format!("six r=2 kernels and the r=3 spherical list for a = 1..8; mismatches [{}]", bad.join(", ")),
    }
}

fn c5() -> Line {
    let t = Instant::now();
    let mut bad = Vec::new();
    for n in 1..=8u32 {
        let ps = partitions(n);
        for alpha in [int(2), int(1), rat(2, 3), rat(1, 4)] {
            let fam: Vec<_> = ps.iter().map(|l| jack_p(l, &alpha)).collect();
            for (i, l) in ps.iter().enumerate() {
                if !is_dominance_triangular(l, &fam[i]) {
                    bad.push(format!("triangularity {l} α={alpha}"));
                }
                for j in 0..i {
                    if jack_pairing(n, &fam[i], &fam[j], &alpha) != int(0) {
                        bad.push(format!("⟨{l},{}⟩ α={alpha}", ps[j]));
                    }
                }
            }
        }
        let sym: Vec<BTreeMap<Signature, RatFun>> = ps.iter().map(jack_p_symbolic).collect();
        for (i, l) in ps.iter().enumerate() {
            if !is_dominance_triangular(l, &sym[i]) {
                bad.push(format!("triangularity {l} symbolic"));
            }
            for j in 0..i {
                if !jack_pairing(n, &sym[i], &sym[j], &RatFun::nu()).is_zero() {
                    bad.push(format!("⟨{l},{}⟩ symbolic", ps[j]));
                }
            }
        }
    }
    for (r, a, b) in [(1, 2, 0), (1, 2, 3), (2, 1, 0), (2, 2, 1), (2, 5, 2), (3, 1, 0), (3, 2, 1), (3, 4, 0)] {
        let p = domain_params(r, a, b).unwrap();
        for (m, k) in kernel_k_by_extraction(&p, 4).unwrap() {
            if k != kernel_k(&m, &p).unwrap() {
                bad.push(format!("two routes K{m} r={r} a={a} b={b}"));
            }
        }
    }
    let (fast, time) = within(t, Duration::from_secs(60));
    Line {
        id: "5",
        pass: bad.is_empty() && fast,
        known: false,
        detail: format!(
            "Jack triangularity and orthogonality |λ| ≤ 8 at α ∈ {{2,1,2/3,1/4}} and symbolic α; extraction ≡ closed form r ≤ 3, m₁ ≤ 4; failures [{}]; {time}",
            bad.join(", ")
        ),
    }
}

fn c6() -> Line {
    let t = Instant::now();
    let mut bad = Vec::new();
    let cells = [(1, 2, 0), (1, 2, 2), (2, 2, 0), (2, 4, 1), (2, 2, 3), (3, 2, 0), (3, 2, 1), (3, 4, 0)];
    for (r, a, b) in cells {
        let p = domain_params(r, a, b).unwrap();
        for lam in gen_signatures(Some(6), 6, r as usize) {
            if moment_noncompact_even(&lam, &p).unwrap() != moment_noncompact_chamber(&lam, &p, DEFAULT_TERM_BUDGET).unwrap() {
                bad.push(format!("even path {lam} ({r},{a},{b})"));
            }
        }
    }
    for (r, a, b) in [(1, 2, 0), (1, 2, 3), (2, 1, 0), (2, 3, 1), (2, 2, 2), (3, 1, 0), (3, 3, 1), (3, 2, 0)] {
        let p = domain_params(r, a, b).unwrap();
        let chamber = moment_noncompact_chamber(&Signature::empty(), &p, DEFAULT_TERM_BUDGET).unwrap();
        if chamber != selberg_total_mass(&p, WeightKind::NoncompactRho).unwrap() {
            bad.push(format!("total mass ({r},{a},{b})"));
        }
    }
    // numeric oracle: 50 random moments, each at 20 random rational ν well inside the convergence range
    let mut rng = StdRng::seed_from_u64(20_241_019);
    let pool = [(1, 2, 0), (1, 2, 1), (2, 1, 0), (2, 2, 1), (2, 3, 0), (2, 5, 2), (3, 1, 0), (3, 2, 0)];
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let (r, a, b) = pool[rng.random_range(0..pool.len())];
        let p = domain_params(r, a, b).unwrap();
        let sigs = gen_signatures(Some(if r == 3 { 3 } else { 5 }), 4, r as usize);
        let lam = sigs[rng.random_range(0..sigs.len())].clone();
        let exact = moment_noncompact(&lam, &p).unwrap();
        for _ in 0..20 {
            let base = (p.p + lam.weight() + 2) as i64;
            let nu = int(base) + rat(rng.random_range(0..60), 7);
            let e = to_f64(&exact.eval(&nu).unwrap());
            let nodes = if r == 3 { 48 } else { DEFAULT_NODES };
            let n = moment_numeric(&lam, &p, to_f64(&nu), WeightKind::NoncompactRho, nodes).unwrap();
            let rel = ((n - e) / e).abs();
            worst = worst.max(rel);
            if rel > 1e-6 {
                bad.push(format!("numeric {lam} ({r},{a},{b}) ν={nu}: {rel:.1e}"));
            }
        }
    }
    let (fast, time) = within(t, Duration::from_secs(120));
    bad.truncate(5);
    Line {
        id: "6",
        pass: bad.is_empty() && fast,
        known: false,
        detail: format!(
            "even ≡ chamber r ≤ 3, |λ| ≤ 6; mass ≡ Selberg product; 1000 quadratures, worst relative error {worst:.1e}; failures [{}]; {time}",
            bad.join(", ")
        ),
    }
}

fn c7() -> Line {
    let mut bad = Vec::new();
    let mut printed = Vec::new();
    for d in 1..=3 {
        for q in 1..=3 {
            let v = rank1_sum_identity(d, q).unwrap();
            if !v.pass() {
                bad.push(format!("d={d} q={q}"));
            }
            let a_note = v.notes.iter().find(|n| n.starts_with("family A")).cloned().unwrap_or_default();
            printed.push(format!("(d={d},q={q}) {a_note}"));
        }
    }
    // the printed family holds only at d = 1 with q ≤ 2
    let a_holds: Vec<bool> = printed.iter().map(|s| s.contains("holds")).collect();
    let expected: Vec<bool> = (1..=3).flat_map(|d| (1..=3).map(move |q| d == 1 && q <= 2)).collect();
    Line {
        id: "7",
        pass: bad.is_empty() && a_holds == expected,
        known: false,
        detail: format!("d₁-based family holds for d,q ∈ 1..3 (failures [{}]); printed family: {}", bad.join(", "), printed.join("; ")),
    }
}

fn c8() -> Line {
    let mut cells = Vec::new();
    for preset in ["paper-r2", "paper-r3"] {
        cells.extend(grid(preset, Target::Conjecture, jobs()).cells);
    }
    let total = cells.len();
    let with_ratio = cells.iter().filter(|v| v.shape_match == Some(false) || v.constant_ratio.is_some()).count();
    let q_pos: Vec<_> = cells.iter().filter(|v| v.cell["q"].as_u64().unwrap() >= 1).collect();
    let shape_ok = q_pos.iter().filter(|v| v.shape_match == Some(true)).count();
    let q0_ratio = cells.iter().filter(|v| v.cell["q"].as_u64() == Some(0)).all(|v| v.constant_ratio.is_some());
    // counter-witness: the printed shape fails exactly when a ≠ 2 and q ≥ 1, always first at m = (1)
    let witness = q_pos.iter().all(|v| {
        let a2 = v.cell["a"].as_u64() == Some(2);
        let first = v.notes.iter().any(|n| n == "shape differs first at m = (1)");
        if a2 { v.shape_match == Some(true) && v.pass() } else { v.shape_match == Some(false) && first }
    });
    let adjusted = cells
        .iter()
        .filter(|v| v.details.get("rankAdjusted").and_then(|d| d["ratioIsOne"].as_bool()) == Some(true))
        .count();
    assert!(witness, "conjecture counter-witness pattern changed");
    assert!(q0_ratio && with_ratio == total, "constantRatio missing on some cell");
    assert_eq!(adjusted, total, "rank-adjusted form no longer reconciles every cell");
    Line {
        id: "8",
        pass: shape_ok == q_pos.len(),
        known: true,
        detail: format!(
            "printed form: shapeMatch on {shape_ok} of {} cells with q ≥ 1, mismatches exactly the a ≠ 2 cells, first at m = (1); constantRatio reported on all {total} cells; with 2r → (r−1)a+2 every cell matches with ratio 1",
            q_pos.len()
        ),
    }
}

fn c9() -> Line {
    let mut parts = Vec::new();
    let mut bad = Vec::new();
    // (i) full orthogonality
    for (r, a, b) in [(1, 2, 0), (1, 2, 2), (2, 1, 0), (2, 2, 1), (2, 3, 0), (3, 1, 0), (3, 2, 1)] {
        let p = domain_params(r, a, b).unwrap();
        for nu in 0..=3 {
            let fam = jacobi_family(&p, nu, 5).unwrap();
            if !family_orthogonality_check(&fam).unwrap().pass() || !interval_scaling_check(&fam).unwrap().pass() {
                bad.push(format!("(i) ({r},{a},{b}) ν={nu}"));
            }
        }
    }
    parts.push("(i) PASS".to_string());
    // (ii) orthogonal-expansion route ≡ Grammian route
    for (r, a, b) in [(1, 2, 0), (1, 2, 1), (2, 1, 0), (2, 2, 0), (2, 3, 1), (2, 4, 1)] {
        let p = domain_params(r, a, b).unwrap();
        for nu in 0..=3 {
            let fam = jacobi_family(&p, nu, 3).unwrap();
            for m in 1..=4 {
                if !shat_routes_check(&fam, m).unwrap().pass() {
                    bad.push(format!("(ii) ({r},{a},{b}) ν={nu} m={m}"));
                }
            }
        }
    }
    parts.push("(ii) PASS".to_string());
    // (iii) rank-one coefficient: printed value contradicted, derived value reproduced
    let mut printed_ok = true;
    for d in 1..=3 {
        for nu in 0..=3 {
            printed_ok &= rank1_coefficient_check(d, nu, 5).unwrap().pass();
            let c = rank1_sq_coefficients(d, nu, 5).unwrap();
            assert!(c.iter().enumerate().all(|(j, x)| *x == rank1_coefficient_derived(d, nu, j as u32)));
        }
    }
    assert!(!printed_ok, "printed rank-one coefficient unexpectedly reproduced");
    let (computed, printed) = (&rank1_sq_coefficients(1, 0, 2).unwrap()[1], rank1_coefficient_printed(1, 0, 1));
    assert_ne!(*computed, printed);
    parts.push(format!(
        "(iii) FAIL: printed coefficient differs (d=1 ν=0 j=1: computed {computed}, printed {printed}); (2j+d+ν)Γ(j+d+ν)/((d−1)!Γ(j+ν+1)) reproduced"
    ));
    // (iv) A_n: printed parameter and constant contradicted
    let mut an_ok = true;
    for d in 1..=3 {
        for nu in 0..=3 {
            for n in 0..=3 {
                let v = rank1_compact_suite(d, nu, n).unwrap();
                an_ok &= v.pass();
                assert!(v.notes.iter().any(|s| s.ends_with("matches: true")), "derived A_n failed at d={d} ν={nu} n={n}");
                assert!(v.notes.iter().any(|s| s.starts_with("kernel at 0") && !s.contains("false")));
            }
        }
    }
    assert!(!an_ok && a_n_printed(1, 0, 1) != a_n_derived(1, 0, 1));
    parts.push("(iv) FAIL: Σ d_(ν,m)φ_(ν,m) = binom(n+d,d)·binom(n+d+ν,d)·₂F₁(−n, n+d+ν+1; d+1; x), not the printed n+d+ν+2 form and A_n".into());
    // (v) compact grid runs with shape/constant reporting
    let rep = grid("compact-r2", Target::CompactGG, jobs());
    let reported = rep.cells.iter().all(|v| v.status != Status::Error && v.shape_match.is_some());
    let s = rep.summary();
    if !reported {
        bad.push("(v) cells without shape/constant report".into());
    }
    parts.push(format!("(v) PASS: {} of {} cells match with ratio 1", s.pass, rep.cells.len()));
    assert!(bad.is_empty(), "criterion 9 regressions: {bad:?}");
    Line { id: "9", pass: false, known: true, detail: parts.join("; ") }
}

fn c10() -> Line {
    let t = Instant::now();
    let p = domain_params(3, 8, 0).unwrap();
    let g = gram_matrix(&KernelSpaceSpec::stabilized(p, 2)).unwrap();
    let (fast, time) = within(t, Duration::from_secs(120));
    Line {
        id: "10",
        pass: g.basis.len() == 10 && fast,
        known: false,
        detail: format!("10-signature Gram matrix at (3,8,0), q=2, symbolic ν: {time}"),
    }
}

fn c11() -> Line {
    let cells = preset_cells("paper-r3").unwrap();
    let run = |j: usize| emit_json(&run_grid_at(&GridSpec::new(cells.clone(), Target::All, j).unwrap(), TS.into()).unwrap());
    let one = run(1);
    let same = [2, 4, 8].iter().all(|&j| run(j) == one);
    Line { id: "11", pass: same, known: false, detail: format!("paper-r3 all-target report ({} bytes) identical for --jobs 1, 2, 4, 8", one.len()) }
}

fn main() {
    let start = Instant::now();
    let mut lines = vec![c1()];
    let (l2, l3) = c2_c3();
    lines.extend([l2, l3, c4(), c5(), c6(), c7(), c8(), c9(), c10(), c11()]);
    let (fast, total) = within(start, Duration::from_secs(1200));
    let mut ok = fast;
    for l in &lines {
        let tag = match (l.pass, l.known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known: printed formula contradicted, counter-witness verified)",
            (false, false) => "FAIL",
        };
        println!("criterion {}: {tag}: {}", l.id, l.detail);
        ok &= l.ok();
    }
    println!("acceptance suite wall time {total}");
    if !ok {
        std::process::exit(1);
    }
}
