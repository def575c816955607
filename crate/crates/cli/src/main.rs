use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use conekernels::compact_dual::{gg_verify, jacobi_family, rank1_coefficient_check, rank1_compact_suite, shat_routes_check};
use conekernels::exact_core::parse_rational;
use conekernels::exact_core::rational::is_integer;
use conekernels::hyper_fk::{conjecture_verify, prop_pp_identity, rank1_spherical_sum, rank1_sum_identity};
use conekernels::kernel_lab::{gram_matrix, repker_n_origin, repker_p_origin, repker_s, KernelSpaceSpec};
use conekernels::report::{emit_json, emit_table, preset_cells, report_timestamp, run_grid, GridCell, GridSpec, Report, Target};
use conekernels::symfunc::{domain_params, jack_p, jack_p_symbolic, kernel_k, DomainParams, Signature};
use conekernels::{Error, RatFun, Rational, Verdict};

#[derive(Parser)]
#[command(name = "conekernels", version, about = "Exact reproducing kernels on bounded symmetric domains and their compact duals")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Domain {
    /// rank r
    #[arg(long, default_value_t = 2)]
    rank: u32,
    /// multiplicity a (forced to 2 when r = 1)
    #[arg(long, default_value_t = 2)]
    a: u32,
    /// multiplicity b
    #[arg(long, default_value_t = 0)]
    b: u32,
}

impl Domain {
    fn params(&self) -> Result<DomainParams, Error> {
        domain_params(self.rank, self.a, self.b)
    }
}

#[derive(Args, Clone)]
struct Output {
    /// machine-readable JSON output
    #[arg(long)]
    json: bool,
    /// write output to FILE instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Structure constants of a domain
    Params {
        #[command(flatten)]
        dom: Domain,
        #[command(flatten)]
        out: Output,
    },
    /// Jack polynomial P_λ^(α) in the monomial basis
    Jack {
        /// partition, e.g. 2,1
        #[arg(long)]
        sig: String,
        /// rational α or "symbolic"; defaults to 2/a
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value_t = 2)]
        a: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Peter–Weyl kernel K_m(te, e)
    KernelK {
        #[command(flatten)]
        dom: Domain,
        #[arg(long)]
        sig: String,
        #[command(flatten)]
        out: Output,
    },
    /// Gram matrix of the kernel-space basis
    Gram {
        #[command(flatten)]
        dom: Domain,
        #[command(flatten)]
        space: Space,
        #[command(flatten)]
        out: Output,
    },
    /// Reproducing kernel at the origin
    Repker {
        #[command(flatten)]
        dom: Domain,
        #[command(flatten)]
        space: Space,
        /// s (cone coordinate), n (nearly holomorphic chart) or p (polyanalytic chart)
        #[arg(long, default_value = "s")]
        form: String,
        #[command(flatten)]
        out: Output,
    },
    /// Compare the Grammian kernel with the conjectured ₂F₁ form
    VerifyConjecture {
        #[command(flatten)]
        dom: Domain,
        #[arg(long, default_value_t = 1)]
        q: u32,
        /// "symbolic" or a rational value at which the ratio is also evaluated
        #[arg(long, default_value = "symbolic")]
        nu: String,
        #[command(flatten)]
        out: Output,
    },
    /// Compact dual: the ₂F₁ form of Q^q_ν and, with --m-order, the two routes to Ŝ
    VerifyCompact {
        #[command(flatten)]
        dom: Domain,
        #[arg(long, default_value_t = 1)]
        q: u32,
        /// nonnegative integer ν
        #[arg(long)]
        nu: String,
        #[arg(long)]
        m_order: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
    /// Integral of the conjectured ₂F₁ against ₃F₂ at e
    PropPp {
        #[command(flatten)]
        dom: Domain,
        #[arg(long, default_value_t = 1)]
        q: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Unit-ball identities in dimension d
    Rank1 {
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        q: u32,
        /// numeric ν enables the spherical-sum check; a nonnegative integer also runs the compact checks
        #[arg(long, default_value = "symbolic")]
        nu: String,
        #[arg(long)]
        m_order: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
    /// Evaluate a verification grid
    Grid {
        /// paper-r2, paper-r3, compact-r2 or rank1; omitted: the single cell given by the domain flags
        #[arg(long)]
        preset: Option<String>,
        /// conjecture, compactGG, reproducing, proppp, rank1 or all
        #[arg(long, default_value = "all")]
        target: String,
        #[command(flatten)]
        dom: Domain,
        #[arg(long, default_value_t = 1)]
        q: u32,
        /// worker threads
        #[arg(long, env = "CONEKERNELS_JOBS")]
        jobs: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Clone)]
struct Space {
    /// stabilized basis {m : m₁ ≤ q} (symbolic ν)
    #[arg(long, conflicts_with = "m_order")]
    q: Option<u32>,
    /// truncated basis {m : |m| < m-order}, needs numeric --nu
    #[arg(long)]
    m_order: Option<u32>,
    #[arg(long, default_value = "symbolic")]
    nu: String,
}

impl Space {
    fn spec(&self, p: DomainParams) -> Result<KernelSpaceSpec, Error> {
        match (self.q, self.m_order, parse_nu(&self.nu)?) {
            (_, Some(m), Some(nu)) => Ok(KernelSpaceSpec::truncation(p, m, nu)),
            (_, Some(_), None) => Err(Error::InvalidParams("--m-order needs a numeric --nu".into())),
            (q, None, _) => Ok(KernelSpaceSpec::stabilized(p, q.unwrap_or(1))),
        }
    }
}

fn parse_nu(s: &str) -> Result<Option<Rational>, Error> {
    if s == "symbolic" { Ok(None) } else { parse_rational(s).map(Some) }
}

fn parse_sig(s: &str) -> Result<Signature, Error> {
    Signature::parse(s)
}

enum Outcome {
    Value(Value, String),
    Verdicts(Vec<Verdict>),
    Report(Report),
}

fn exact(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn run(cmd: Cmd) -> Result<(Outcome, Output), Error> {
    Ok(match cmd {
        Cmd::Params { dom, out } => {
            let p = dom.params()?;
            let v = json!({
                "r": p.r, "a": p.a, "b": p.b, "p": p.p, "d": p.d,
                "qOmega": exact(&p.q_omega()), "dOverR": exact(&p.d_over_r()),
            });
            let text = format!("{p} q_Ω={} d/r={}", p.q_omega(), p.d_over_r());
            (Outcome::Value(v, text), out)
        }
        Cmd::Jack { sig, alpha, a, out } => {
            let lam = parse_sig(&sig)?;
            let alpha = match alpha.as_deref() {
                Some("symbolic") => None,
                Some(s) => Some(parse_rational(s)?),
                None if a == 0 => return Err(Error::InvalidParams("a must be positive".into())),
                None => Some(Rational::new(2.into(), (a as i64).into())),
            };
            let (terms, text): (Vec<Value>, Vec<String>) = match &alpha {
                Some(al) => jack_p(&lam, al)
                    .into_iter()
                    .map(|(s, c)| (json!({"sig": s.to_vec(), "coef": exact(&c)}), format!("({c})*m{s}")))
                    .unzip(),
                None => jack_p_symbolic(&lam)
                    .into_iter()
                    .map(|(s, c)| (json!({"sig": s.to_vec(), "coef": c.to_json()}), format!("({})*m{s}", c.fmt_var("α"))))
                    .unzip(),
            };
            let alpha_json = alpha.as_ref().map_or(json!("symbolic"), exact);
            let v = json!({"lambda": lam.to_vec(), "alpha": alpha_json, "terms": terms});
            (Outcome::Value(v, format!("P{lam} = {}", text.join(" + "))), out)
        }
        Cmd::KernelK { dom, sig, out } => {
            let p = dom.params()?;
            let m = parse_sig(&sig)?;
            if m.len() > p.r_usize() {
                return Err(Error::InvalidParams(format!("{m} has more than r = {} parts", p.r)));
            }
            let k = kernel_k(&m, &p)?;
            let v = json!({"sig": m.to_vec(), "kernel": k.to_json()});
            (Outcome::Value(v, format!("K{m}(te,e) = {}", k.fmt_with("t"))), out)
        }
        Cmd::Gram { dom, space, out } => {
            let spec = space.spec(dom.params()?)?;
            let g = gram_matrix(&spec)?;
            let rows: Vec<Value> = g.entries.iter().map(|row| json!(row.iter().map(RatFun::to_json).collect::<Vec<_>>())).collect();
            let v = json!({
                "basis": g.basis.iter().map(|s| s.to_vec()).collect::<Vec<_>>(),
                "entries": rows,
                "piGrade": g.pi_grade,
                "spec": spec.to_json(),
            });
            let mut text = format!("basis {}\n", g.basis.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" "));
            for (s, row) in g.basis.iter().zip(&g.entries) {
                text.push_str(&format!("{s}: {}\n", row.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" | ")));
            }
            text.push_str(&format!("(times π^{}d)", g.pi_grade));
            (Outcome::Value(v, text), out)
        }
        Cmd::Repker { dom, space, form, out } => {
            let spec = space.spec(dom.params()?)?;
            let (v, text) = match form.as_str() {
                "s" => {
                    let k = repker_s(&spec)?;
                    (k.to_json(), format!("S(x,0) = π^{}d·[{}]", k.pi_grade, k.value.fmt_with("x")))
                }
                "n" => {
                    let k = repker_n_origin(&spec)?;
                    (k.to_json(), format!("N(t,0) = π^{}d·Π(1−t_j)^{}·[{}]", k.pi_grade, k.prefactor, k.poly.fmt_with("t")))
                }
                "p" => {
                    let m = match &spec.rule {
                        conekernels::kernel_lab::BasisRule::Truncation { m_order, .. } => *m_order,
                        conekernels::kernel_lab::BasisRule::Stabilized { q } => spec.params.r * q + 1,
                    };
                    let k = repker_p_origin(&spec, m)?;
                    (k.to_json(), format!("P(t,0) = π^{}d·Π(1−t_j)^{}·[{}]", k.pi_grade, k.prefactor, k.poly.fmt_with("t")))
                }
                other => return Err(Error::Parse(format!("unknown form {other:?}; expected s, n or p"))),
            };
            (Outcome::Value(v, text), out)
        }
        Cmd::VerifyConjecture { dom, q, nu, out } => {
            let p = dom.params()?;
            let nu = parse_nu(&nu)?;
            let mut v = conjecture_verify(&p, q)?;
            if let (Some(nu), Some(k)) = (&nu, &v.constant_ratio) {
                let at = k.eval(nu).map_or("pole".to_string(), |x| x.to_string());
                v = v.note(format!("constantRatio at ν = {nu}: {at}"));
            }
            (Outcome::Verdicts(vec![v]), out)
        }
        Cmd::VerifyCompact { dom, q, nu, m_order, out } => {
            let p = dom.params()?;
            let nu = integer_nu(&nu)?;
            let mut vs = vec![gg_verify(&p, nu, q)?];
            if let Some(m) = m_order {
                if m == 0 {
                    return Err(Error::InvalidParams("--m-order must be at least 1".into()));
                }
                let fam = jacobi_family(&p, nu, m - 1)?;
                vs.push(shat_routes_check(&fam, m)?);
            }
            (Outcome::Verdicts(vs), out)
        }
        Cmd::PropPp { dom, q, out } => (Outcome::Verdicts(vec![prop_pp_identity(&dom.params()?, q)?]), out),
        Cmd::Rank1 { d, q, nu, m_order, out } => {
            if d == 0 {
                return Err(Error::InvalidParams("d must be positive".into()));
            }
            let mut vs = Vec::new();
            if q >= 1 {
                vs.push(rank1_sum_identity(d, q)?);
            }
            if let Some(nu) = parse_nu(&nu)? {
                let m = m_order.unwrap_or(q + 1).max(1);
                if nu > Rational::from_integer((d as i64).into()) {
                    vs.push(rank1_spherical_sum(d, &nu, m)?);
                }
                if is_integer(&nu) && nu >= Rational::from_integer(0.into()) {
                    let n = nu.to_integer().try_into().map_err(|_| Error::InvalidParams("ν too large".into()))?;
                    vs.push(rank1_compact_suite(d, n, q)?);
                    vs.push(rank1_coefficient_check(d, n, m)?);
                }
            }
            if vs.is_empty() {
                return Err(Error::InvalidParams("nothing to check: give --q ≥ 1 or a numeric --nu".into()));
            }
            (Outcome::Verdicts(vs), out)
        }
        Cmd::Grid { preset, target, dom, q, jobs, out } => {
            let target: Target = target.parse()?;
            let cells = match &preset {
                Some(name) => preset_cells(name)?,
                None => {
                    dom.params()?;
                    vec![GridCell::new(dom.rank, dom.a, dom.b, q)]
                }
            };
            let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let spec = GridSpec::new(cells, target, jobs)?;
            (Outcome::Report(run_grid(&spec)?), out)
        }
    })
}

fn integer_nu(s: &str) -> Result<u32, Error> {
    let nu = parse_rational(s)?;
    if !is_integer(&nu) || nu < Rational::from_integer(0.into()) {
        return Err(Error::InvalidParams(format!("ν = {s} must be a nonnegative integer here")));
    }
    nu.to_integer().try_into().map_err(|_| Error::InvalidParams("ν too large".into()))
}

fn emit(outcome: Outcome, out: &Output) -> std::io::Result<i32> {
    let (bytes, code) = match outcome {
        Outcome::Value(v, text) => {
            let s = if out.json { serde_json::to_string_pretty(&v).expect("JSON values always serialise") } else { text };
            (format!("{s}\n").into_bytes(), 0)
        }
        Outcome::Verdicts(vs) => render(&Report::new(vs, report_timestamp()), out.json),
        Outcome::Report(r) => render(&r, out.json),
    };
    match &out.out {
        Some(path) => fs::write(path, bytes)?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    Ok(code)
}

fn render(r: &Report, json: bool) -> (Vec<u8>, i32) {
    (if json { emit_json(r) } else { emit_table(r).into_bytes() }, r.exit_code())
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok((outcome, out)) => match emit(outcome, &out) {
            Ok(code) => ExitCode::from(code as u8),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
