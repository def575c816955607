//! Verification grids, parallel evaluation and deterministic reports.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::compact_dual::gg_verify;
use crate::error::{Error, Result};
use crate::hyper_fk::{conjecture_verify, prop_pp_identity, rank1_sum_identity};
use crate::kernel_lab::{reproducing_property_check, KernelSpaceSpec};
use crate::symfunc::domain_params;
use crate::verdict::{cell, Status, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Conjecture,
    CompactGG,
    Reproducing,
    PropPP,
    Rank1,
    All,
}

impl Target {
    pub fn as_str(&self) -> &'static str {
        match self {
            Target::Conjecture => "conjecture",
            Target::CompactGG => "compactGG",
            Target::Reproducing => "reproducing",
            Target::PropPP => "proppp",
            Target::Rank1 => "rank1",
            Target::All => "all",
        }
    }

    /// Concrete targets evaluated for a cell.
    fn expand(self, c: &GridCell) -> Vec<Target> {
        match self {
            Target::All => {
                let mut v = vec![Target::Conjecture, Target::Reproducing, Target::PropPP];
                if c.nu.is_some() {
                    v.push(Target::CompactGG);
                }
                if c.r == 1 && c.q >= 1 {
                    v.push(Target::Rank1);
                }
                v
            }
            t => vec![t],
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "conjecture" => Target::Conjecture,
            "compactGG" | "compact-gg" => Target::CompactGG,
            "reproducing" => Target::Reproducing,
            "proppp" | "prop-pp" => Target::PropPP,
            "rank1" => Target::Rank1,
            "all" => Target::All,
            _ => return Err(Error::Parse(format!("unknown target {s:?}"))),
        })
    }
}

/// One grid point; `nu` is the integer compact-dual parameter and is only used by compactGG.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridCell {
    pub r: u32,
    pub a: u32,
    pub b: u32,
    pub q: u32,
    pub nu: Option<u32>,
}

impl GridCell {
    pub fn new(r: u32, a: u32, b: u32, q: u32) -> Self {
        GridCell { r, a, b, q, nu: None }
    }

    fn descriptor(&self, t: Target) -> Map<String, Value> {
        let mut c = cell(&[
            ("target", json!(t.as_str())),
            ("r", json!(self.r)),
            ("a", json!(self.a)),
            ("b", json!(self.b)),
            ("q", json!(self.q)),
        ]);
        if let Some(nu) = self.nu {
            c.insert("nu".into(), json!(nu));
        }
        c
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub cells: Vec<GridCell>,
    pub target: Target,
    pub parallelism: usize,
}

impl GridSpec {
    /// Sorted, deduplicated cells.
    pub fn new(mut cells: Vec<GridCell>, target: Target, parallelism: usize) -> Result<Self> {
        if parallelism == 0 {
            return Err(Error::InvalidParams("parallelism must be positive".into()));
        }
        for c in &cells {
            if c.r == 0 || c.a == 0 {
                return Err(Error::InvalidParams(format!("inadmissible cell {c:?}")));
            }
        }
        cells.sort();
        cells.dedup();
        Ok(GridSpec { cells, target, parallelism })
    }
}

fn product(r: u32, a_range: &[u32], b_range: &[u32], q_range: &[u32]) -> Vec<GridCell> {
    let mut out = Vec::new();
    for &a in a_range {
        for &b in b_range {
            for &q in q_range {
                out.push(GridCell::new(r, a, b, q));
            }
        }
    }
    out
}

/// Named cell sets: paper-r2, paper-r3, compact-r2 and rank1.
pub fn preset_cells(name: &str) -> Result<Vec<GridCell>> {
    let b4 = [0, 1, 2, 3];
    Ok(match name {
        "paper-r2" => {
            let mut v = product(2, &(1..=8).collect::<Vec<_>>(), &b4, &[0, 1, 2]);
            v.extend(product(2, &[1, 2, 3, 4], &b4, &[3]));
            v
        }
        "paper-r3" => {
            let mut v = product(3, &[2, 4], &b4, &[0, 1, 2]);
            v.extend(product(3, &[8], &[0], &[0, 1, 2]));
            v
        }
        "compact-r2" => {
            let mut v = Vec::new();
            for c in product(2, &[1, 2, 3, 4], &[0, 1], &[0, 1, 2]) {
                for nu in 0..=3 {
                    v.push(GridCell { nu: Some(nu), ..c });
                }
            }
            v
        }
        // balls of dimension d = b + 1
        "rank1" => product(1, &[2], &[0, 1, 2, 4], &[0, 1, 2, 3]),
        _ => return Err(Error::Parse(format!("unknown preset {name:?}"))),
    })
}

fn eval_cell(c: &GridCell, t: Target) -> Result<Verdict> {
    let p = domain_params(c.r, c.a, c.b)?;
    match t {
        Target::Conjecture => conjecture_verify(&p, c.q),
        Target::Reproducing => reproducing_property_check(&KernelSpaceSpec::stabilized(p, c.q)),
        Target::PropPP => prop_pp_identity(&p, c.q),
        Target::CompactGG => {
            let nu = c.nu.ok_or_else(|| Error::InvalidParams("compactGG cells need ν".into()))?;
            gg_verify(&p, nu, c.q)
        }
        Target::Rank1 => {
            if c.r != 1 {
                return Err(Error::InvalidParams("rank1 target needs r = 1".into()));
            }
            rank1_sum_identity(p.d, c.q)
        }
        Target::All => unreachable!("expanded before evaluation"),
    }
}

fn evaluate(c: &GridCell, t: Target) -> Verdict {
    let desc = c.descriptor(t);
    match eval_cell(c, t) {
        // keep the verdict's own diagnostics, but key every cell uniformly
        Ok(mut v) => {
            for (k, val) in desc {
                v.cell.insert(k, val);
            }
            v
        }
        Err(e) => Verdict::from_error(desc, &e),
    }
}

fn value_cmp(x: &Value, y: &Value) -> Ordering {
    match (x.as_i64(), y.as_i64()) {
        (Some(i), Some(j)) => i.cmp(&j),
        _ => x.to_string().cmp(&y.to_string()),
    }
}

/// Orders cells by target and then by their remaining key/value pairs, numerically where possible.
pub fn cell_order(x: &Map<String, Value>, y: &Map<String, Value>) -> Ordering {
    let tx = x.get("target").map(|v| v.to_string());
    let ty = y.get("target").map(|v| v.to_string());
    tx.cmp(&ty).then_with(|| {
        for ((kx, vx), (ky, vy)) in x.iter().zip(y.iter()) {
            let o = kx.cmp(ky).then_with(|| value_cmp(vx, vy));
            if o != Ordering::Equal {
                return o;
            }
        }
        x.len().cmp(&y.len())
    })
}

#[derive(Clone, Debug)]
pub struct Report {
    pub tool_version: String,
    pub timestamp: String,
    pub cells: Vec<Verdict>,
    /// Cross-cell observations (for instance the conjecture's normalization pattern).
    pub findings: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub resource: usize,
    pub error: usize,
}

impl Report {
    pub fn new(mut cells: Vec<Verdict>, timestamp: String) -> Self {
        cells.sort_by(|x, y| cell_order(&x.cell, &y.cell));
        let findings = conjecture_findings(&cells);
        Report { tool_version: env!("CARGO_PKG_VERSION").to_string(), timestamp, cells, findings }
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for v in &self.cells {
            match v.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Resource => s.resource += 1,
                Status::Error => s.error += 1,
            }
        }
        s
    }

    /// 0 when every cell passes or is resource-limited, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        let s = self.summary();
        if s.fail + s.error == 0 { 0 } else { 1 }
    }
}

/// RFC 3339 time, taken from SOURCE_DATE_EPOCH when set so that reports can be reproduced.
pub fn report_timestamp() -> String {
    let t = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .map(|secs| UNIX_EPOCH + Duration::from_secs(secs))
        .unwrap_or_else(SystemTime::now);
    humantime::format_rfc3339_seconds(t).to_string()
}

/// Evaluates every (cell, target) pair on a pool of `parallelism` threads; output order is fixed.
pub fn run_grid(spec: &GridSpec) -> Result<Report> {
    run_grid_at(spec, report_timestamp())
}

pub fn run_grid_at(spec: &GridSpec, timestamp: String) -> Result<Report> {
    let tasks: Vec<(GridCell, Target)> =
        spec.cells.iter().flat_map(|c| spec.target.expand(c).into_iter().map(move |t| (*c, t))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.parallelism)
        .build()
        .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
    let cells = pool.install(|| tasks.par_iter().map(|(c, t)| evaluate(c, *t)).collect::<Vec<_>>());
    Ok(Report::new(cells, timestamp))
}

fn conjecture_findings(cells: &[Verdict]) -> Vec<String> {
    let conj: Vec<&Verdict> =
        cells.iter().filter(|v| v.cell.get("target").and_then(Value::as_str) == Some("conjecture")).collect();
    if conj.is_empty() {
        return Vec::new();
    }
    let evaluated: Vec<&&Verdict> = conj.iter().filter(|v| v.shape_match.is_some()).collect();
    let shape = evaluated.iter().filter(|v| v.shape_match == Some(true)).count();
    let one = evaluated.iter().filter(|v| v.pass()).count();
    let mut out = vec![format!(
        "conjecture as printed: shapeMatch on {shape} of {} cells, constantRatio ≡ 1 on {one}",
        evaluated.len()
    )];
    let mismatched: Vec<String> = evaluated
        .iter()
        .filter(|v| v.shape_match == Some(false))
        .map(|v| format!("({},{},{},q={})", v.cell["r"], v.cell["a"], v.cell["b"], v.cell["q"]))
        .collect();
    if !mismatched.is_empty() {
        let a_values: std::collections::BTreeSet<String> =
            evaluated.iter().filter(|v| v.shape_match == Some(false)).map(|v| v.cell["a"].to_string()).collect();
        out.push(format!(
            "shape counter-witnesses at {} cells, a ∈ {{{}}}; first: {}",
            mismatched.len(),
            a_values.into_iter().collect::<Vec<_>>().join(","),
            mismatched[0]
        ));
    }
    let non_one: Vec<String> = evaluated
        .iter()
        .filter(|v| v.shape_match == Some(true) && !v.pass())
        .filter_map(|v| {
            v.constant_ratio
                .as_ref()
                .map(|k| format!("({},{},{},q={}): {}", v.cell["r"], v.cell["a"], v.cell["b"], v.cell["q"], k.fmt_var("ν")))
        })
        .collect();
    if !non_one.is_empty() {
        out.push(format!("constantRatio ≠ 1 where shapes match: {}", non_one.join("; ")));
    }
    let adj_ok = evaluated
        .iter()
        .filter(|v| v.details.get("rankAdjusted").and_then(|d| d.get("ratioIsOne")).and_then(Value::as_bool) == Some(true))
        .count();
    out.push(format!(
        "with 2r replaced by (r−1)a+2 in β and c^q_ν: shapeMatch and constantRatio ≡ 1 on {adj_ok} of {} cells",
        evaluated.len()
    ));
    if adj_ok == evaluated.len() && one < evaluated.len() {
        out.push("no renormalization of dρ reconciles the printed form: its shape differs, while the adjusted form needs none".into());
    }
    out
}

fn summary_json(s: &Summary) -> Value {
    let mut m = Map::new();
    m.insert("pass".into(), json!(s.pass));
    m.insert("fail".into(), json!(s.fail));
    if s.resource > 0 {
        m.insert("resource".into(), json!(s.resource));
    }
    if s.error > 0 {
        m.insert("error".into(), json!(s.error));
    }
    Value::Object(m)
}

pub fn report_to_json(r: &Report) -> Value {
    let mut m = Map::new();
    m.insert("toolVersion".into(), json!(r.tool_version));
    m.insert("timestamp".into(), json!(r.timestamp));
    m.insert("cells".into(), Value::Array(r.cells.iter().map(Verdict::to_json).collect()));
    m.insert("summary".into(), summary_json(&r.summary()));
    if !r.findings.is_empty() {
        m.insert("findings".into(), json!(r.findings));
    }
    Value::Object(m)
}

/// Pretty UTF-8 JSON with sorted keys and a trailing newline.
pub fn emit_json(r: &Report) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(&report_to_json(r)).expect("JSON values always serialise");
    s.push('\n');
    s.into_bytes()
}

fn cell_label(c: &Map<String, Value>) -> String {
    c.iter()
        .map(|(k, v)| match v {
            Value::String(s) => format!("{k}={s}"),
            other => format!("{k}={other}"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn emit_table(r: &Report) -> String {
    let rows: Vec<[String; 4]> = r
        .cells
        .iter()
        .map(|v| {
            [
                cell_label(&v.cell),
                v.shape_match.map_or("-".into(), |b| b.to_string()),
                v.constant_ratio.as_ref().map_or("-".into(), |k| k.fmt_var("ν")),
                match v.status {
                    Status::Pass => "PASS".into(),
                    Status::Fail => "FAIL".into(),
                    Status::Resource => "RESOURCE".into(),
                    Status::Error => "ERROR".into(),
                },
            ]
        })
        .collect();
    let header = ["cell".to_string(), "shapeMatch".into(), "constantRatio".into(), "pass".into()];
    let mut widths = header.clone().map(|h| h.chars().count());
    for row in &rows {
        for (w, s) in widths.iter_mut().zip(row) {
            *w = (*w).max(s.chars().count());
        }
    }
    let fmt_row = |row: &[String; 4]| {
        let cols: Vec<String> =
            row.iter().zip(&widths).map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count()))).collect();
        cols.join("  ").trim_end().to_string()
    };
    let mut out = fmt_row(&header);
    out.push('\n');
    for (row, v) in rows.iter().zip(&r.cells) {
        out.push_str(&fmt_row(row));
        out.push('\n');
        if !v.pass() {
            for n in &v.notes {
                out.push_str(&format!("    {n}\n"));
            }
        }
    }
    let s = r.summary();
    out.push_str(&format!("pass {}  fail {}", s.pass, s.fail));
    if s.resource > 0 {
        out.push_str(&format!("  resource {}", s.resource));
    }
    if s.error > 0 {
        out.push_str(&format!("  error {}", s.error));
    }
    out.push('\n');
    for f in &r.findings {
        out.push_str(f);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TS: &str = "2000-01-01T00:00:00Z";

    #[test]
    fn empty_grid() {
        let spec = GridSpec::new(vec![], Target::All, 1).unwrap();
        let r = run_grid_at(&spec, TS.into()).unwrap();
        let v = report_to_json(&r);
        assert_eq!(v["cells"], json!([]));
        assert_eq!(v["summary"], json!({"pass": 0, "fail": 0}));
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn one_passing_cell() {
        let spec = GridSpec::new(vec![GridCell::new(1, 2, 0, 1)], Target::Conjecture, 1).unwrap();
        let r = run_grid_at(&spec, TS.into()).unwrap();
        let v = report_to_json(&r);
        assert_eq!(v["summary"], json!({"pass": 1, "fail": 0}));
        assert_eq!(v["cells"][0]["constantRatio"], json!({"num": ["1"], "den": ["1"]}));
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn per_cell_errors_do_not_abort() {
        let spec = GridSpec::new(vec![GridCell::new(2, 2, 0, 1), GridCell::new(1, 2, 0, 0)], Target::CompactGG, 2).unwrap();
        let r = run_grid_at(&spec, TS.into()).unwrap();
        assert_eq!(r.summary().error, 2);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn deterministic_across_jobs() {
        let cells = preset_cells("rank1").unwrap();
        let a = emit_json(&run_grid_at(&GridSpec::new(cells.clone(), Target::All, 1).unwrap(), TS.into()).unwrap());
        let b = emit_json(&run_grid_at(&GridSpec::new(cells, Target::All, 4).unwrap(), TS.into()).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn json_round_trip_is_fixed_point() {
        let spec = GridSpec::new(vec![GridCell::new(2, 1, 0, 0), GridCell::new(2, 1, 0, 1)], Target::Conjecture, 2).unwrap();
        let bytes = emit_json(&run_grid_at(&spec, TS.into()).unwrap());
        let parsed: Value = serde_json::from_slice(&bytes).unwrap();
        let mut again = serde_json::to_string_pretty(&parsed).unwrap();
        again.push('\n');
        assert_eq!(again.into_bytes(), bytes);
    }

    #[test]
    fn preset_sizes() {
        assert_eq!(preset_cells("paper-r2").unwrap().len(), 96 + 16);
        assert_eq!(preset_cells("paper-r3").unwrap().len(), 24 + 3);
        assert_eq!(preset_cells("compact-r2").unwrap().len(), 96);
        assert!(preset_cells("nope").is_err());
    }

    #[test]
    fn table_renders_exact_ratio() {
        let spec = GridSpec::new(vec![GridCell::new(1, 2, 0, 1)], Target::Conjecture, 1).unwrap();
        let t = emit_table(&run_grid_at(&spec, TS.into()).unwrap());
        assert!(t.contains("PASS"));
        assert!(t.lines().nth(1).unwrap().contains("  1  "));
    }
}
