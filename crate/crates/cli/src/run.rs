//! Dispatch of typed jobs to the core library and tabular reports.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use horo_core::atlas::{atlas_map, DomainSpec, PrimeEndRef};
use horo_core::curve::SampledCurve;
use horo_core::horocycle::{busemann, horocycle_invariance_check, GeneralHorocycle, Membership};
use horo_core::metric::{curve_length_in, geodesic_join, geodesic_join_sampled, pull_distance, qg_certify_grid};
use horo_core::model::DiscPoint;
use horo_core::orthogonality::{
    betsakos_scenario, classify, hub_approach_angle, ClassifyOptions, ConvergenceVerdict, Falsifier, InclusionWitness, SandwichScenario,
    VerdictKind,
};
use horo_core::probes::{step1_bound, step1_probe, step2_probe, step2_threshold, step3_probe, step4_probe};
use horo_core::semigroup::{corollary_runner, dw_point, slope_trace, CorollaryOptions, KoenigsModel, SlopeClass, SlopeOptions};
use horo_core::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value as Json};

use crate::config::{CurveSpec, Expectation, Job, ProbeKind, RadiusSpec, ScenarioConfig};
use crate::grammar::fmt_complex;

/// Relative agreement required between a geodesic's length and the distance.
pub const GEODESIC_LENGTH_TOL: f64 = 1e-8;

/// Failure of a job, with a stable machine-readable code.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunError {
    pub code: String,
    pub message: String,
}

impl RunError {
    pub fn new(code: &str, message: impl Into<String>) -> Self {
        RunError { code: code.to_string(), message: message.into() }
    }
}

impl From<horo_core::Error> for RunError {
    fn from(e: horo_core::Error) -> Self {
        RunError::new(e.code(), e.to_string())
    }
}

/// Rows, property flags and summary fields produced by one job.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Pass/fail flags of property checks; any `false` makes the run fail.
    pub flags: BTreeMap<String, bool>,
    pub summary: Map<String, Json>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), ..Table::default() }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn note(&mut self, key: &str, value: impl Into<Json>) {
        self.summary.insert(key.to_string(), value.into());
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    PropertyFailure,
    Error,
}

/// Outcome of one scenario line (a plain job or a whole sweep).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub index: usize,
    pub line: usize,
    /// Canonical text of the scenario.
    pub command: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<RunError>,
    pub flags: BTreeMap<String, bool>,
    pub summary: Map<String, Json>,
    pub rows: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cells: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cell_errors: Vec<CellError>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub ignored_keys: Vec<String>,
    pub seed: Option<u64>,
    pub wall_time_s: f64,
    pub version: &'static str,
    #[serde(skip)]
    pub header: Vec<String>,
    #[serde(skip)]
    pub table: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellError {
    pub cell: usize,
    pub code: String,
    pub message: String,
}

impl RunReport {
    /// The CSV body: header row plus one row per item.
    pub fn csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        if !self.header.is_empty() {
            w.write_record(&self.header).expect("in-memory csv write");
        }
        for row in &self.table {
            w.write_record(row).expect("in-memory csv write");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv output is utf-8")
    }
}

/// Library version string recorded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Decimal with 17 significant digits; scientific notation outside
/// `1e-5 <= |x| < 1e17`.
pub fn fmt17(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if x == 0.0 || !(-5..17).contains(&exp) {
        return if x == 0.0 { format!("{x:.16}") } else { sci };
    }
    let (sign, mant) = match mant.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mant),
    };
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    if exp >= 0 {
        let split = exp as usize + 1;
        let (int, frac) = digits.split_at(split);
        if frac.is_empty() {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    } else {
        format!("{sign}0.{}{digits}", "0".repeat((-exp - 1) as usize))
    }
}

/// Complex number with 17 significant digits per component.
pub fn fmt17c(z: Complex) -> String {
    let sign = if z.im.is_sign_negative() { "-" } else { "+" };
    format!("{}{}{}i", fmt17(z.re), sign, fmt17(z.im.abs()))
}

fn verdict_name(kind: &VerdictKind) -> String {
    match kind {
        VerdictKind::Orthogonal(_) => "orthogonal".into(),
        VerdictKind::Tangential(s) => format!("tangential({s})"),
        VerdictKind::Inconclusive => "inconclusive".into(),
    }
}

fn slope_name(c: SlopeClass) -> String {
    match c {
        SlopeClass::Orthogonal => "orthogonal".into(),
        SlopeClass::Tangential(s) => format!("tangential({s})"),
        SlopeClass::Undetermined => "undetermined".into(),
    }
}

fn domain_label(d: &DomainSpec) -> String {
    horo_core::atlas::describe(d)
}

fn end_label(e: &PrimeEndRef) -> String {
    match e {
        PrimeEndRef::Infinity => "infinity".into(),
        PrimeEndRef::Finite(p) => fmt17c(*p),
        PrimeEndRef::Slit { point, side } => format!("{} ({side:?})", fmt17c(*point)),
    }
}

fn membership_label(m: Membership) -> &'static str {
    match m {
        Membership::Inside => "inside",
        Membership::Outside => "outside",
        Membership::Indeterminate => "indeterminate",
    }
}

fn arc_curve(center: Complex, r: f64, t0: f64, t1: f64, n: usize) -> horo_core::Result<SampledCurve> {
    let path = Arc::new(move |u: f64| {
        let e = Complex::from_polar(1.0, u);
        (center + r * e, Complex::new(0.0, r) * e)
    });
    SampledCurve::from_path(t0, t1, n, path)
}

fn expectation_flag(t: &mut Table, expect: Option<Expectation>, observed: Expectation) {
    if let Some(e) = expect {
        t.flags.insert("expectation_met".into(), e == observed);
    }
}

fn verdict_rows(t: &mut Table, seq: &[Complex], v: &ConvergenceVerdict) {
    let start = seq.len() - v.distance_tail.len();
    let name = verdict_name(&v.kind);
    for (k, (d, a)) in v.distance_tail.iter().zip(&v.angle_tail).enumerate() {
        t.push(vec![(start + k).to_string(), fmt17c(seq[start + k]), fmt17(*d), fmt17(*a), name.clone()]);
    }
}

/// Runs one typed job with the given RNG seed.
pub fn execute(job: &Job, seed: Option<u64>) -> Result<Table, RunError> {
    let rng = || -> Result<ChaCha8Rng, RunError> {
        seed.map(ChaCha8Rng::seed_from_u64).ok_or_else(|| RunError::new("MISSING_SEED", "Monte Carlo commands need --seed or seed="))
    };
    if job.is_monte_carlo() && seed.is_none() {
        return Err(RunError::new("MISSING_SEED", "Monte Carlo commands need --seed or seed="));
    }
    Ok(match job {
        Job::Dist { domain, z, w } => {
            let mut t = Table::new(&["z", "w", "distance"]);
            t.push(vec![fmt_complex(*z), fmt_complex(*w), fmt17(pull_distance(domain, *z, *w)?)]);
            t
        }
        Job::Geodesic { domain, z, w, samples } => {
            let mut t = Table::new(&["s", "re", "im"]);
            let g = geodesic_join_sampled(domain, *z, *w, *samples)?;
            for (s, p) in g.params().iter().zip(g.points()) {
                t.push(vec![fmt17(*s), fmt17(p.re), fmt17(p.im)]);
            }
            let d = pull_distance(domain, *z, *w)?;
            let len = curve_length_in(&g, domain)?;
            t.note("distance", d);
            t.note("length", len);
            t.flags.insert("length_matches_distance".into(), (len - d).abs() <= GEODESIC_LENGTH_TOL * d.max(1.0));
            t
        }
        Job::Horocycle { domain, end, base, radius, z, samples, map } => {
            let mut t = Table::new(&["z", "busemann", "level", "membership"]);
            let h = GeneralHorocycle::new(domain.clone(), *end, *base, *radius)?;
            let mut points: Vec<Complex> = z.iter().copied().collect();
            let mut rng = if *samples > 0 || map.is_some() { Some(rng()?) } else { None };
            if let Some(r) = rng.as_mut() {
                for _ in 0..*samples {
                    points.push(horo_core::sampling::sample_interior(domain, r));
                }
            }
            for p in points {
                let b = busemann(domain, *base, end, p)?;
                t.push(vec![fmt17c(p), fmt17(b), fmt17(h.level(p)?), membership_label(h.membership(p)?).into()]);
            }
            t.note("domain", domain_label(domain));
            t.note("end", end_label(end));
            if let (Some(target), Some(r)) = (map, rng.as_mut()) {
                let f = atlas_map(domain, target)?;
                let bad = horocycle_invariance_check(&f, &h, 2000, r)?;
                t.note("invariance_disagreements", bad);
                t.flags.insert("invariant".into(), bad == 0);
            }
            t
        }
        Job::Qgeo { domain, curve, a, b, grid, expect } => {
            let c = match curve {
                CurveSpec::Geodesic { z, w } => geodesic_join(domain, *z, *w)?,
                CurveSpec::Arc { center, r, t0, t1, n } => arc_curve(*center, *r, *t0, *t1, *n)?,
            };
            let cert = qg_certify_grid(&c, domain, *a, *b, *grid)?;
            let mut t = Table::new(&["A", "B", "max_defect", "witness_s", "witness_t", "valid"]);
            t.push(vec![
                fmt17(cert.a),
                fmt17(cert.b),
                fmt17(cert.max_defect),
                fmt17(cert.witness.0),
                fmt17(cert.witness.1),
                cert.is_valid().to_string(),
            ]);
            t.note("slack", cert.slack);
            let observed = if cert.is_valid() { Expectation::Valid } else { Expectation::Invalid };
            expectation_flag(&mut t, *expect, observed);
            t
        }
        Job::Classify { inner, outer, end, base, radius, seq, tol, tail, falsifier, expect } => {
            let mut r = rng()?;
            let falsifier = Falsifier { samples: *falsifier };
            let scenario = match radius {
                RadiusSpec::Fixed(radius) => {
                    let witness = if inner == outer {
                        InclusionWitness::SameDomain
                    } else {
                        InclusionWitness::Declared("asserted by the scenario file".into())
                    };
                    SandwichScenario::new(inner.clone(), outer.clone(), *end, *radius, *base, seq.clone(), witness)?
                }
                RadiusSpec::Auto { p, strip } => betsakos_scenario(p.re, p.im, inner, strip, seq.clone(), &falsifier, &mut r)?,
            };
            let opts = ClassifyOptions { tol: *tol, tail: *tail, falsifier };
            let v = classify(&scenario, &opts, &mut r)?;
            let mut t = Table::new(&["n", "z", "distance", "angle", "verdict"]);
            verdict_rows(&mut t, seq, &v);
            t.note("verdict", verdict_name(&v.kind));
            t.note("sigma", fmt17c(v.sigma));
            t.note("radius", scenario.radius);
            t.note("max_distance", v.max_distance());
            t.note("max_angle", v.max_angle());
            let observed = match v.kind {
                VerdictKind::Orthogonal(_) => Expectation::Orthogonal,
                VerdictKind::Tangential(_) => Expectation::Tangential,
                VerdictKind::Inconclusive => Expectation::Inconclusive,
            };
            expectation_flag(&mut t, *expect, observed);
            t
        }
        Job::Slope { omega, z, t: at, t_min, t_max, samples, threshold, tail } => {
            let model = KoenigsModel::new(omega.clone())?;
            let start = DiscPoint::new(*z)?;
            let mut t = Table::new(&["t", "re", "im", "angle"]);
            match at {
                Some(time) => {
                    let tau = dw_point(&model)?;
                    let w = model.evolve_hub(start, *time)?;
                    let p = horo_core::model::cayley_inverse(w);
                    t.push(vec![fmt17(*time), fmt17(p.re), fmt17(p.im), fmt17(hub_approach_angle(tau, w))]);
                    t.note("tau", fmt17c(tau));
                }
                None => {
                    let opts = SlopeOptions { threshold: *threshold, tail: *tail };
                    let tr = slope_trace(&model, start, *t_min, *t_max, *samples, &opts)?;
                    for ((s, p), a) in tr.times.iter().zip(&tr.points).zip(&tr.angles) {
                        t.push(vec![fmt17(*s), fmt17(p.re), fmt17(p.im), fmt17(*a)]);
                    }
                    t.note("tau", fmt17c(tr.tau));
                    t.note("classification", slope_name(tr.classification));
                    t.note("tail_max_angle", tr.tail_max_angle(*tail));
                }
            }
            t
        }
        Job::Corollary { case, starts, t_min, t_max, samples, threshold, tol, tail, falsifier } => {
            let mut r = rng()?;
            let points = starts.iter().map(|z| DiscPoint::new(*z)).collect::<Result<Vec<_>, _>>()?;
            let opts = CorollaryOptions {
                t_min: *t_min,
                t_max: *t_max,
                samples: *samples,
                slope: SlopeOptions { threshold: *threshold, tail: *tail },
                classify: ClassifyOptions { tol: *tol, tail: *tail, falsifier: Falsifier { samples: *falsifier } },
            };
            let rep = corollary_runner(case, &points, &opts, &mut r)?;
            let mut t = Table::new(&["start", "classification", "tail_max_angle", "cross_check", "cross_check_max_distance", "orthogonal"]);
            for ((z, tr), v) in starts.iter().zip(&rep.traces).zip(&rep.cross_checks) {
                let ok = tr.classification == SlopeClass::Orthogonal && v.is_orthogonal();
                t.push(vec![
                    fmt_complex(*z),
                    slope_name(tr.classification),
                    fmt17(tr.tail_max_angle(*tail)),
                    verdict_name(&v.kind),
                    fmt17(v.max_distance()),
                    ok.to_string(),
                ]);
            }
            t.note("case", rep.case);
            t.note("omega", domain_label(&rep.omega));
            t.note("tau", fmt17c(rep.tau));
            t.note("tau_symbolic", fmt17c(rep.tau_symbolic));
            t.note("violations", rep.violations.clone());
            t.flags.insert("all_orthogonal".into(), rep.passed());
            t
        }
        Job::Probe { kind, beta, samples, domain, x0, x1, grid } => match kind {
            ProbeKind::Step1 => {
                let p = step1_probe(*beta, *samples, &mut rng()?)?;
                let mut t = Table::new(&["beta", "K", "max_distance", "holds"]);
                t.push(vec![fmt17(p.beta), fmt17(p.bound), fmt17(p.max_distance), p.holds().to_string()]);
                t.note("witness", vec![p.witness.0, p.witness.1, p.witness.2]);
                t.flags.insert("bound_holds".into(), p.holds());
                t
            }
            ProbeKind::Step2 => {
                let alpha = step2_threshold(*beta)?;
                let a = x0.unwrap_or(alpha);
                let b = x1.unwrap_or(1e3 * a);
                let inside = step2_probe(domain, *beta, a, b)?;
                let mut t = Table::new(&["beta", "alpha", "x0", "x1", "inside_sector"]);
                t.push(vec![fmt17(*beta), fmt17(alpha), fmt17(a), fmt17(b), inside.to_string()]);
                t.flags.insert("inside_sector".into(), inside);
                t
            }
            ProbeKind::Step3 => {
                let a = x0.unwrap_or(2.0);
                let b = x1.unwrap_or(1e3 * a);
                let (min_mod, c) = step3_probe(domain, *beta, a, b)?;
                let mut t = Table::new(&["beta", "K", "x0", "x1", "min_modulus", "c_bound"]);
                t.push(vec![fmt17(*beta), fmt17(step1_bound(*beta)?), fmt17(a), fmt17(b), fmt17(min_mod), fmt17(c)]);
                t.flags.insert("modulus_above_bound".into(), min_mod > c);
                t
            }
            ProbeKind::Step4 => {
                let a = x0.unwrap_or(2.0);
                let b = x1.unwrap_or(1e3 * a);
                let gap = step4_probe(domain, a, b, *grid)?;
                let mut t = Table::new(&["x0", "x1", "gap"]);
                t.push(vec![fmt17(a), fmt17(b), fmt17(gap)]);
                t
            }
        },
    })
}

fn status_of(flags: &BTreeMap<String, bool>, errored: bool) -> Status {
    if errored {
        Status::Error
    } else if flags.values().all(|v| *v) {
        Status::Ok
    } else {
        Status::PropertyFailure
    }
}

/// Runs one scenario line; sweeps go through [`crate::sweep::run_cells`].
pub fn run_scenario(index: usize, cfg: &ScenarioConfig, default_seed: Option<u64>) -> RunReport {
    let start = Instant::now();
    let seed = cfg.seed().or(default_seed);
    let mut report = RunReport {
        index,
        line: cfg.line,
        command: cfg.to_line(),
        status: Status::Ok,
        error: None,
        flags: BTreeMap::new(),
        summary: Map::new(),
        rows: 0,
        cells: None,
        cell_errors: Vec::new(),
        ignored_keys: cfg.ignored.clone(),
        seed,
        wall_time_s: 0.0,
        version: VERSION,
        header: Vec::new(),
        table: Vec::new(),
    };
    if !cfg.is_sweep() {
        let result = cfg.job_for_cell(0).map_err(|e| RunError::new(e.code, e.to_string())).and_then(|job| execute(&job, seed));
        match result {
            Ok(t) => {
                report.header = t.header;
                report.table = t.rows;
                report.flags = t.flags;
                report.summary = t.summary;
            }
            Err(e) => report.error = Some(e),
        }
    } else {
        let out = crate::sweep::run_cells(cfg, seed);
        report.cells = Some(out.cells);
        report.header = out.header;
        report.table = out.table;
        report.flags = out.flags;
        report.cell_errors = out.errors;
        if !out.summaries.is_empty() {
            report.summary.insert("cells".into(), Json::Array(out.summaries));
        }
        if let Some(first) = report.cell_errors.first() {
            let n = report.cell_errors.len();
            report.error = Some(RunError::new(&first.code, format!("{n} of {} cells failed; first: {}", out.cells, first.message)));
        }
    }
    report.rows = report.table.len();
    report.status = status_of(&report.flags, report.error.is_some());
    report.wall_time_s = start.elapsed().as_secs_f64();
    report
}

/// Runs every scenario on a pool of `workers` threads (0: one per core).
pub fn run_all(configs: &[ScenarioConfig], seed: Option<u64>, workers: usize) -> Vec<RunReport> {
    use rayon::prelude::*;

    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool");
    pool.install(|| configs.par_iter().enumerate().map(|(i, c)| run_scenario(i + 1, c, seed)).collect())
}

/// Process exit code for a set of reports: 0 when everything passed, 1 on
/// property failures, 2 when any scenario errored.
pub fn exit_code(reports: &[RunReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Error) {
        2
    } else if reports.iter().any(|r| r.status == Status::PropertyFailure) {
        1
    } else {
        0
    }
}

/// The JSON summary document. Timestamps live only here.
pub fn summary_json(reports: &[RunReport], seed: Option<u64>, wall_time_s: f64, started_unix_s: u64) -> Json {
    json!({
        "version": VERSION,
        "seed": seed,
        "started_unix_s": started_unix_s,
        "wall_time_s": wall_time_s,
        "exit_code": exit_code(reports),
        "scenarios": reports,
    })
}

/// File name of the CSV for report `r`.
pub fn csv_name(r: &RunReport) -> String {
    let cmd = r.command.split_whitespace().next().unwrap_or("scenario");
    format!("{:03}-{cmd}.csv", r.index)
}

#[cfg(test)]
// 2.718281828 is a truncated input, not an attempt at `E`
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    fn run(text: &str, seed: Option<u64>) -> RunReport {
        let cfg = parse_config(text, true).unwrap();
        run_scenario(1, &cfg[0], seed)
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt17(0.5), "0.50000000000000000");
        assert_eq!(fmt17(-2.5), "-2.5000000000000000");
        assert_eq!(fmt17(1234.5), "1234.5000000000000");
        assert_eq!(fmt17(1e-3), "0.0010000000000000000");
        assert_eq!(fmt17(1e20), "1.0000000000000000e20");
        assert_eq!(fmt17(0.0), "0.0000000000000000");
        for x in [0.1, 1.0 / 3.0, 2.718281828, -7.25e-4, 6.02e23, 1e-300] {
            assert_eq!(fmt17(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt17c(Complex::new(1.0, -0.5)), "1.0000000000000000-0.50000000000000000i");
    }

    #[test]
    fn dist_example_row() {
        let r = run("dist domain=halfplane z=1+0i w=2.718281828+0i", None);
        assert_eq!(r.status, Status::Ok);
        let csv = r.csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("z,w,distance"));
        let row = lines.next().unwrap();
        assert!(row.starts_with("1+0i,2.718281828+0i,0.49999999"), "{row}");
        let d: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!((d - 0.5 * 2.718281828f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn monte_carlo_commands_need_a_seed() {
        let r = run("probe kind=step1 beta=0.3 samples=10", None);
        assert_eq!(r.status, Status::Error);
        assert_eq!(r.error.unwrap().code, "MISSING_SEED");
        assert_eq!(run("probe kind=step1 beta=0.3 samples=10", Some(1)).status, Status::Ok);
        assert_eq!(run("probe kind=step1 beta=0.3 samples=10 seed=4", None).seed, Some(4));
    }

    #[test]
    fn falsified_inclusion_is_an_error() {
        let r = run("classify inner=shifted_halfplane{a:1} outer=halfplane R=4 base=1+0i seq=horizontal{n:30,start:2}", Some(3));
        assert_eq!(r.status, Status::Error);
        assert_eq!(r.error.unwrap().code, "SCENARIO_INVALID");
        assert_eq!(exit_code(&[run("dist domain=disc z=0 w=0.5", None)]), 0);
    }

    #[test]
    fn sweeps_prefix_the_swept_columns() {
        let r = run("probe kind=step1 beta=lin(0.07,0.7,10) samples=50", Some(9));
        assert_eq!(r.cells, Some(10));
        assert_eq!(r.header[..2], ["sweep.beta".to_string(), "beta".to_string()]);
        let k: Vec<f64> = r.table.iter().map(|row| row[2].parse().unwrap()).collect();
        assert!(k.windows(2).all(|w| w[1] > w[0]), "{k:?}");
        let empty = run("probe kind=step1 beta=list() samples=50", Some(9));
        assert_eq!((empty.status, empty.rows), (Status::Ok, 0));
        assert_eq!(empty.csv(), "sweep.beta\n");
    }

    #[test]
    fn property_failures_are_reported() {
        let r = run("qgeo domain=disc curve=arc{r:0.5,t0:-1,t1:1} expect=valid", None);
        assert_eq!(r.status, Status::PropertyFailure);
        assert_eq!(exit_code(&[r]), 1);
        let ok = run("qgeo domain=disc curve=arc{r:0.5,t0:-1,t1:1} expect=invalid", None);
        assert_eq!(ok.status, Status::Ok);
        // numerical results alone never fail a run
        assert_eq!(run("qgeo domain=disc curve=arc{r:0.5,t0:-1,t1:1}", None).status, Status::Ok);
    }
}
