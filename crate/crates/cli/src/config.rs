//! Typed scenario configurations built on top of [`crate::grammar`].

use std::f64::consts::FRAC_PI_4;
use std::fmt;

use horo_core::atlas::{DomainSpec, PrimeEndRef, Semistrip, SlitSide};
use horo_core::semigroup::CorollaryCase;
use horo_core::Complex;

use crate::grammar::{parse_line, Entry, ParseError, RawLine, Sweep, Value};

/// Largest number of cells a sweep may expand to.
pub const MAX_CELLS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Dist,
    Geodesic,
    Horocycle,
    Qgeo,
    Classify,
    Slope,
    Corollary,
    Probe,
}

impl Command {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "dist" => Command::Dist,
            "geodesic" => Command::Geodesic,
            "horocycle" => Command::Horocycle,
            "qgeo" => Command::Qgeo,
            "classify" => Command::Classify,
            "slope" => Command::Slope,
            "corollary" => Command::Corollary,
            "probe" => Command::Probe,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Command::Dist => "dist",
            Command::Geodesic => "geodesic",
            Command::Horocycle => "horocycle",
            Command::Qgeo => "qgeo",
            Command::Classify => "classify",
            Command::Slope => "slope",
            Command::Corollary => "corollary",
            Command::Probe => "probe",
        }
    }

    /// Keys accepted by the command, besides `seed`.
    pub fn keys(self) -> &'static [&'static str] {
        match self {
            Command::Dist => &["domain", "z", "w"],
            Command::Geodesic => &["domain", "z", "w", "samples"],
            Command::Horocycle => &["domain", "end", "base", "R", "z", "samples", "map"],
            Command::Qgeo => &["domain", "curve", "z", "w", "A", "B", "grid", "expect"],
            Command::Classify => &["inner", "outer", "end", "base", "R", "strip", "seq", "tol", "tail", "falsifier", "expect"],
            Command::Slope => &["omega", "z", "t", "t_min", "t_max", "samples", "threshold", "tail"],
            Command::Corollary => &[
                "case",
                "shift",
                "beta",
                "p",
                "domain",
                "strip",
                "starts",
                "t_min",
                "t_max",
                "samples",
                "threshold",
                "tol",
                "tail",
                "falsifier",
            ],
            Command::Probe => &["kind", "beta", "samples", "domain", "x0", "x1", "grid"],
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A parsed, validated scenario line.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub line: usize,
    pub command: Command,
    pub entries: Vec<Entry>,
    /// Keys dropped in lenient mode.
    pub ignored: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CurveSpec {
    Geodesic {
        z: Complex,
        w: Complex,
    },
    /// `center + r e^{iu}` for `u` in `[t0, t1]`, sampled at `n` points.
    Arc {
        center: Complex,
        r: f64,
        t0: f64,
        t1: f64,
        n: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum RadiusSpec {
    Fixed(f64),
    /// Largest radius surviving the falsifier against the Koebe domain slit
    /// below the boundary point `p`.
    Auto {
        p: Complex,
        strip: Semistrip,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeKind {
    Step1,
    Step2,
    Step3,
    Step4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    Valid,
    Invalid,
    Orthogonal,
    Tangential,
    Inconclusive,
}

/// Fully typed job for one scenario (or one sweep cell).
#[derive(Debug, Clone, PartialEq)]
pub enum Job {
    Dist {
        domain: DomainSpec,
        z: Complex,
        w: Complex,
    },
    Geodesic {
        domain: DomainSpec,
        z: Complex,
        w: Complex,
        samples: usize,
    },
    Horocycle {
        domain: DomainSpec,
        end: PrimeEndRef,
        base: Complex,
        radius: f64,
        z: Option<Complex>,
        samples: usize,
        map: Option<DomainSpec>,
    },
    Qgeo {
        domain: DomainSpec,
        curve: CurveSpec,
        a: f64,
        b: f64,
        grid: usize,
        expect: Option<Expectation>,
    },
    Classify {
        inner: DomainSpec,
        outer: DomainSpec,
        end: PrimeEndRef,
        base: Complex,
        radius: RadiusSpec,
        seq: Vec<Complex>,
        tol: f64,
        tail: usize,
        falsifier: usize,
        expect: Option<Expectation>,
    },
    Slope {
        omega: DomainSpec,
        z: Complex,
        t: Option<f64>,
        t_min: f64,
        t_max: f64,
        samples: usize,
        threshold: f64,
        tail: usize,
    },
    Corollary {
        case: CorollaryCase,
        starts: Vec<Complex>,
        t_min: f64,
        t_max: f64,
        samples: usize,
        threshold: f64,
        tol: f64,
        tail: usize,
        falsifier: usize,
    },
    Probe {
        kind: ProbeKind,
        beta: f64,
        samples: usize,
        domain: DomainSpec,
        x0: Option<f64>,
        x1: Option<f64>,
        grid: usize,
    },
}

impl Job {
    /// Whether the job draws random numbers and therefore needs a seed.
    pub fn is_monte_carlo(&self) -> bool {
        match self {
            Job::Classify { .. } | Job::Corollary { .. } => true,
            Job::Probe { kind, .. } => *kind == ProbeKind::Step1,
            Job::Horocycle { samples, map, .. } => *samples > 0 || map.is_some(),
            _ => false,
        }
    }
}

/// Typed view of the entries of one line, with sweep values substituted.
struct Params<'a> {
    line: usize,
    entries: &'a [Entry],
    subst: &'a [(usize, f64)],
}

type Res<T> = Result<T, ParseError>;

impl<'a> Params<'a> {
    fn find(&self, key: &str) -> Option<(usize, &'a Entry)> {
        self.entries.iter().enumerate().find(|(_, e)| e.key == key)
    }

    fn get(&self, key: &str) -> Option<(Value, usize)> {
        let (idx, e) = self.find(key)?;
        match self.subst.iter().find(|(i, _)| *i == idx) {
            Some((_, v)) => Some((Value::Real(*v), e.col)),
            None => Some((e.value.clone(), e.col)),
        }
    }

    fn err(&self, col: usize, code: &'static str, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, col, code, msg)
    }

    fn missing(&self, key: &str) -> ParseError {
        self.err(1, "MISSING_KEY", format!("missing required key `{key}`"))
    }

    fn real_opt(&self, key: &str) -> Res<Option<f64>> {
        match self.get(key) {
            None => Ok(None),
            Some((v, col)) => as_real(&v).map(Some).ok_or_else(|| self.err(col, "TYPE_ERROR", format!("`{key}` expects a real number"))),
        }
    }

    fn real(&self, key: &str, default: f64) -> Res<f64> {
        Ok(self.real_opt(key)?.unwrap_or(default))
    }

    fn real_req(&self, key: &str) -> Res<f64> {
        self.real_opt(key)?.ok_or_else(|| self.missing(key))
    }

    fn positive(&self, key: &str, default: f64) -> Res<f64> {
        let x = self.real(key, default)?;
        if x > 0.0 && x.is_finite() {
            Ok(x)
        } else {
            Err(self.range(key, format!("`{key}` must be positive, got {x}")))
        }
    }

    fn range(&self, key: &str, msg: String) -> ParseError {
        let col = self.find(key).map_or(1, |(_, e)| e.col);
        self.err(col, "RANGE_VIOLATION", msg)
    }

    fn count(&self, key: &str, default: usize) -> Res<usize> {
        match self.real_opt(key)? {
            None => Ok(default),
            Some(x) if x >= 0.0 && x.fract() == 0.0 && x <= 1e9 => Ok(x as usize),
            Some(x) => Err(self.range(key, format!("`{key}` must be a non-negative integer, got {x}"))),
        }
    }

    fn complex_opt(&self, key: &str) -> Res<Option<Complex>> {
        match self.get(key) {
            None => Ok(None),
            Some((v, col)) => {
                as_complex(&v).map(Some).ok_or_else(|| self.err(col, "TYPE_ERROR", format!("`{key}` expects a complex number")))
            }
        }
    }

    fn complex_req(&self, key: &str) -> Res<Complex> {
        self.complex_opt(key)?.ok_or_else(|| self.missing(key))
    }

    fn word(&self, key: &str, allowed: &[&str]) -> Res<Option<String>> {
        match self.get(key) {
            None => Ok(None),
            Some((Value::Word(w), col)) => {
                if allowed.contains(&w.as_str()) {
                    Ok(Some(w))
                } else {
                    Err(self.err(col, "RANGE_VIOLATION", format!("`{key}` must be one of {}", allowed.join("|"))))
                }
            }
            Some((Value::Real(x), col)) => {
                let w = crate::grammar::fmt_real(x);
                if allowed.contains(&w.as_str()) {
                    Ok(Some(w))
                } else {
                    Err(self.err(col, "RANGE_VIOLATION", format!("`{key}` must be one of {}", allowed.join("|"))))
                }
            }
            Some((_, col)) => Err(self.err(col, "TYPE_ERROR", format!("`{key}` expects one of {}", allowed.join("|")))),
        }
    }

    fn domain_opt(&self, key: &str) -> Res<Option<DomainSpec>> {
        match self.get(key) {
            None => Ok(None),
            Some((v, col)) => domain_from_value(&v, self.line, col).map(Some),
        }
    }

    fn domain_req(&self, key: &str) -> Res<DomainSpec> {
        self.domain_opt(key)?.ok_or_else(|| self.missing(key))
    }

    fn end(&self, key: &str) -> Res<PrimeEndRef> {
        match self.get(key) {
            None => Ok(PrimeEndRef::Infinity),
            Some((v, col)) => end_from_value(&v, self.line, col),
        }
    }

    fn interior(&self, domain: &DomainSpec, key: &str, z: Complex) -> Res<()> {
        domain.require_interior(z).map_err(|e| self.range(key, e.to_string()))
    }

    fn complex_list(&self, key: &str) -> Res<Option<Vec<Complex>>> {
        match self.get(key) {
            None => Ok(None),
            Some((Value::List(items), col)) => items
                .iter()
                .map(|v| as_complex(v).ok_or_else(|| self.err(col, "TYPE_ERROR", format!("`{key}` expects complex numbers"))))
                .collect::<Res<Vec<_>>>()
                .map(Some),
            Some((_, col)) => Err(self.err(col, "TYPE_ERROR", format!("`{key}` expects a list [z1;z2;...]"))),
        }
    }

    fn strip(&self, key: &str) -> Res<Option<Semistrip>> {
        match self.get(key) {
            None => Ok(None),
            Some((v, col)) => {
                let r = Record::new(&v, self.line, col)?;
                r.expect_name(&["semistrip"], "UNKNOWN_RECORD")?;
                r.allow(&["a", "b", "c"])?;
                let s = Semistrip { a: r.real_req("a")?, b: r.real_req("b")?, c: r.real_req("c")? };
                if !(s.a < s.b) || !s.c.is_finite() {
                    return Err(self.err(col, "RANGE_VIOLATION", "semistrip needs a < b and finite c"));
                }
                Ok(Some(s))
            }
        }
    }
}

fn as_real(v: &Value) -> Option<f64> {
    match v {
        Value::Real(x) => Some(*x),
        Value::Complex(z) if z.im == 0.0 => Some(z.re),
        _ => None,
    }
}

fn as_complex(v: &Value) -> Option<Complex> {
    match v {
        Value::Real(x) => Some(Complex::new(*x, 0.0)),
        Value::Complex(z) => Some(*z),
        _ => None,
    }
}

/// Accessor for the fields of a record value.
struct Record<'a> {
    name: &'a str,
    fields: &'a [(String, Value)],
    line: usize,
    col: usize,
}

impl<'a> Record<'a> {
    fn new(v: &'a Value, line: usize, col: usize) -> Res<Self> {
        match v {
            Value::Record { name, fields } => Ok(Record { name, fields, line, col }),
            Value::Word(name) => Ok(Record { name, fields: &[], line, col }),
            _ => Err(ParseError::new(line, col, "TYPE_ERROR", "expected a record such as name{key:value}")),
        }
    }

    fn err(&self, code: &'static str, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col, code, msg)
    }

    fn expect_name(&self, names: &[&str], code: &'static str) -> Res<()> {
        if names.contains(&self.name) {
            Ok(())
        } else {
            Err(self.err(code, format!("unknown variant `{}` (expected {})", self.name, names.join("|"))))
        }
    }

    fn allow(&self, keys: &[&str]) -> Res<()> {
        for (k, _) in self.fields {
            if !keys.contains(&k.as_str()) {
                return Err(self.err("UNKNOWN_KEY", format!("`{}` has no field `{k}`", self.name)));
            }
        }
        Ok(())
    }

    fn value(&self, key: &str) -> Option<&'a Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    fn real_opt(&self, key: &str) -> Res<Option<f64>> {
        match self.value(key) {
            None => Ok(None),
            Some(v) => as_real(v).map(Some).ok_or_else(|| self.err("TYPE_ERROR", format!("field `{key}` expects a real number"))),
        }
    }

    fn real(&self, key: &str, default: f64) -> Res<f64> {
        Ok(self.real_opt(key)?.unwrap_or(default))
    }

    fn real_req(&self, key: &str) -> Res<f64> {
        self.real_opt(key)?.ok_or_else(|| self.err("MISSING_KEY", format!("`{}` needs field `{key}`", self.name)))
    }

    fn count(&self, key: &str, default: usize) -> Res<usize> {
        match self.real_opt(key)? {
            None => Ok(default),
            Some(x) if x >= 0.0 && x.fract() == 0.0 && x <= 1e9 => Ok(x as usize),
            Some(x) => Err(self.err("RANGE_VIOLATION", format!("field `{key}` must be a non-negative integer, got {x}"))),
        }
    }

    fn pair(&self, re: &str, im: &str, default: Complex) -> Res<Complex> {
        Ok(Complex::new(self.real(re, default.re)?, self.real(im, default.im)?))
    }
}

/// Domain grammar: `disc`, `halfplane`, `upper_halfplane`,
/// `shifted_halfplane{a}`, `sector{beta,rot_re,rot_im}`,
/// `koebe_slit{p_re,p_im}` and `affine{base,scale_re,scale_im,t_re,t_im}`.
pub fn domain_from_value(v: &Value, line: usize, col: usize) -> Res<DomainSpec> {
    let r = Record::new(v, line, col)?;
    r.expect_name(&["disc", "halfplane", "upper_halfplane", "shifted_halfplane", "sector", "koebe_slit", "affine"], "UNKNOWN_DOMAIN")?;
    let one = Complex::new(1.0, 0.0);
    let zero = Complex::new(0.0, 0.0);
    let spec = match r.name {
        "disc" => {
            r.allow(&[])?;
            DomainSpec::Disc
        }
        "halfplane" => {
            r.allow(&[])?;
            DomainSpec::RightHalfPlane
        }
        "upper_halfplane" => {
            r.allow(&[])?;
            DomainSpec::UpperHalfPlane
        }
        "shifted_halfplane" => {
            r.allow(&["a"])?;
            DomainSpec::shifted(r.real_req("a")?)
        }
        "sector" => {
            r.allow(&["beta", "rot_re", "rot_im"])?;
            DomainSpec::sector(r.real_req("beta")?, r.pair("rot_re", "rot_im", one)?)
        }
        "koebe_slit" => {
            r.allow(&["p_re", "p_im"])?;
            DomainSpec::koebe(r.pair("p_re", "p_im", zero)?)
        }
        _ => {
            r.allow(&["base", "scale_re", "scale_im", "t_re", "t_im"])?;
            let base = match r.value("base") {
                Some(b) => domain_from_value(b, line, col)?,
                None => return Err(r.err("MISSING_KEY", "`affine` needs field `base`")),
            };
            DomainSpec::affine(base, r.pair("scale_re", "scale_im", one)?, r.pair("t_re", "t_im", zero)?)
        }
    };
    spec.validate().map_err(|e| ParseError::new(line, col, "RANGE_VIOLATION", e.to_string()))?;
    Ok(spec)
}

/// Prime ends: `infinity`, `point{re,im}` and `slit{re,im,side:left|right}`.
pub fn end_from_value(v: &Value, line: usize, col: usize) -> Res<PrimeEndRef> {
    let r = Record::new(v, line, col)?;
    r.expect_name(&["infinity", "point", "slit"], "UNKNOWN_END")?;
    match r.name {
        "infinity" => {
            r.allow(&[])?;
            Ok(PrimeEndRef::Infinity)
        }
        "point" => {
            r.allow(&["re", "im"])?;
            Ok(PrimeEndRef::Finite(Complex::new(r.real_req("re")?, r.real_req("im")?)))
        }
        _ => {
            r.allow(&["re", "im", "side"])?;
            let side = match r.value("side") {
                Some(Value::Word(w)) if w == "left" => SlitSide::Left,
                Some(Value::Word(w)) if w == "right" => SlitSide::Right,
                _ => return Err(r.err("RANGE_VIOLATION", "`slit` needs side:left or side:right")),
            };
            Ok(PrimeEndRef::Slit { point: Complex::new(r.real_req("re")?, r.real_req("im")?), side })
        }
    }
}

/// Sequences: `vertical{n,re,start,ratio}` gives `re + i start ratio^k`,
/// `horizontal{n,im,start,ratio}` gives `start ratio^k + i im`,
/// `polar{n,angle,start,ratio}` gives `start ratio^k e^{i angle}`,
/// for `k = 0..n`; a list `[z1;z2;...]` is taken verbatim.
pub fn sequence_from_value(v: &Value, line: usize, col: usize) -> Res<Vec<Complex>> {
    if let Value::List(items) = v {
        return items
            .iter()
            .map(|x| as_complex(x).ok_or_else(|| ParseError::new(line, col, "TYPE_ERROR", "sequence lists hold complex numbers")))
            .collect();
    }
    let r = Record::new(v, line, col)?;
    r.expect_name(&["vertical", "horizontal", "polar"], "UNKNOWN_SEQUENCE")?;
    let n = r.count("n", 50)?;
    let start = r.real("start", 1.0)?;
    let ratio = r.real("ratio", 1.3)?;
    if !(start > 0.0 && ratio > 1.0 && start.is_finite() && ratio.is_finite()) {
        return Err(r.err("RANGE_VIOLATION", "sequences need start > 0 and ratio > 1"));
    }
    let radii = (0..n).map(|k| start * ratio.powi(k as i32));
    Ok(match r.name {
        "vertical" => {
            r.allow(&["n", "re", "start", "ratio"])?;
            let re = r.real("re", 0.0)?;
            radii.map(|s| Complex::new(re, s)).collect()
        }
        "horizontal" => {
            r.allow(&["n", "im", "start", "ratio"])?;
            let im = r.real("im", 0.0)?;
            radii.map(|s| Complex::new(s, im)).collect()
        }
        _ => {
            r.allow(&["n", "angle", "start", "ratio"])?;
            let angle = r.real("angle", 0.0)?;
            radii.map(|s| Complex::from_polar(s, angle)).collect()
        }
    })
}

fn curve_from_value(v: &Value, line: usize, col: usize, p: &Params) -> Res<CurveSpec> {
    let r = Record::new(v, line, col)?;
    r.expect_name(&["geodesic", "arc"], "UNKNOWN_CURVE")?;
    if r.name == "geodesic" {
        r.allow(&[])?;
        return Ok(CurveSpec::Geodesic { z: p.complex_req("z")?, w: p.complex_req("w")? });
    }
    r.allow(&["c_re", "c_im", "r", "t0", "t1", "n"])?;
    let (r_, t0, t1) = (r.real_req("r")?, r.real_req("t0")?, r.real_req("t1")?);
    let n = r.count("n", 257)?;
    if !(r_ > 0.0 && t1 > t0 && n >= 2) {
        return Err(r.err("RANGE_VIOLATION", "arc needs r > 0, t1 > t0 and n >= 2"));
    }
    Ok(CurveSpec::Arc { center: r.pair("c_re", "c_im", Complex::new(0.0, 0.0))?, r: r_, t0, t1, n })
}

fn expectation(p: &Params, allowed: &[&str]) -> Res<Option<Expectation>> {
    Ok(p.word("expect", allowed)?.map(|w| match w.as_str() {
        "valid" => Expectation::Valid,
        "invalid" => Expectation::Invalid,
        "orthogonal" => Expectation::Orthogonal,
        "tangential" => Expectation::Tangential,
        _ => Expectation::Inconclusive,
    }))
}

fn build(cmd: Command, p: &Params) -> Res<Job> {
    Ok(match cmd {
        Command::Dist => {
            let domain = p.domain_req("domain")?;
            let (z, w) = (p.complex_req("z")?, p.complex_req("w")?);
            p.interior(&domain, "z", z)?;
            p.interior(&domain, "w", w)?;
            Job::Dist { domain, z, w }
        }
        Command::Geodesic => {
            let domain = p.domain_req("domain")?;
            let (z, w) = (p.complex_req("z")?, p.complex_req("w")?);
            p.interior(&domain, "z", z)?;
            p.interior(&domain, "w", w)?;
            let samples = p.count("samples", 65)?;
            if samples < 2 {
                return Err(p.range("samples", "geodesics need at least two samples".into()));
            }
            Job::Geodesic { domain, z, w, samples }
        }
        Command::Horocycle => {
            let domain = p.domain_req("domain")?;
            let end = p.end("end")?;
            let base = p.complex_opt("base")?.unwrap_or_else(|| domain.canonical_point());
            p.interior(&domain, "base", base)?;
            let radius = p.positive("R", 1.0)?;
            let z = p.complex_opt("z")?;
            if let Some(z) = z {
                p.interior(&domain, "z", z)?;
            }
            let samples = p.count("samples", 0)?;
            let map = p.domain_opt("map")?;
            domain.prime_end_to_hub(&end).map_err(|e| p.range("end", e.to_string()))?;
            Job::Horocycle { domain, end, base, radius, z, samples, map }
        }
        Command::Qgeo => {
            let domain = p.domain_req("domain")?;
            let curve = match p.get("curve") {
                None => CurveSpec::Geodesic { z: p.complex_req("z")?, w: p.complex_req("w")? },
                Some((v, col)) => curve_from_value(&v, p.line, col, p)?,
            };
            if let CurveSpec::Geodesic { z, w } = curve {
                p.interior(&domain, "z", z)?;
                p.interior(&domain, "w", w)?;
            }
            let a = p.positive("A", 1.0)?;
            let b = p.real("B", 0.0)?;
            if !(b >= 0.0 && b.is_finite()) {
                return Err(p.range("B", format!("`B` must be non-negative, got {b}")));
            }
            let grid = p.count("grid", horo_core::metric::DEFAULT_QG_GRID)?;
            if grid < 2 {
                return Err(p.range("grid", "the certificate grid needs at least two points".into()));
            }
            Job::Qgeo { domain, curve, a, b, grid, expect: expectation(p, &["valid", "invalid"])? }
        }
        Command::Classify => {
            let inner = p.domain_req("inner")?;
            let outer = match p.get("outer") {
                None => inner.clone(),
                Some((Value::Word(w), _)) if w == "same" => inner.clone(),
                Some((v, col)) => domain_from_value(&v, p.line, col)?,
            };
            let end = p.end("end")?;
            let base = p.complex_opt("base")?.unwrap_or_else(|| outer.canonical_point());
            let radius = match p.get("R") {
                Some((Value::Word(w), col)) => {
                    if w != "auto" {
                        return Err(p.err(col, "RANGE_VIOLATION", "`R` must be positive or `auto`"));
                    }
                    let DomainSpec::KoebeSlit { tip } = outer else {
                        return Err(p.err(col, "RANGE_VIOLATION", "`R=auto` needs a koebe_slit outer domain"));
                    };
                    let strip = p.strip("strip")?.unwrap_or(Semistrip { a: tip.re - 1.0, b: tip.re + 1.0, c: tip.im + 1.0 });
                    RadiusSpec::Auto { p: tip, strip }
                }
                _ => RadiusSpec::Fixed(p.positive("R", 1.0)?),
            };
            let seq = match p.get("seq") {
                None => return Err(p.missing("seq")),
                Some((v, col)) => sequence_from_value(&v, p.line, col)?,
            };
            let tol = p.positive("tol", 1e-2)?;
            let tail = p.count("tail", 5)?.max(1);
            let falsifier = p.count("falsifier", 10_000)?;
            let expect = expectation(p, &["orthogonal", "tangential", "inconclusive"])?;
            Job::Classify { inner, outer, end, base, radius, seq, tol, tail, falsifier, expect }
        }
        Command::Slope => {
            let omega = p.domain_req("omega")?;
            let z = p.complex_opt("z")?.unwrap_or(Complex::new(0.0, 0.0));
            if !(z.norm() < 1.0) {
                return Err(p.range("z", format!("start {z} is not in the unit disc")));
            }
            let t = p.real_opt("t")?;
            if let Some(t) = t {
                if !(t > 0.0 && t.is_finite()) {
                    return Err(p.range("t", format!("`t` must be positive, got {t}")));
                }
            }
            let (t_min, t_max) = (p.positive("t_min", 1.0)?, p.positive("t_max", 1e6)?);
            let samples = p.count("samples", 61)?;
            Job::Slope { omega, z, t, t_min, t_max, samples, threshold: p.positive("threshold", 0.05)?, tail: p.count("tail", 5)?.max(1) }
        }
        Command::Corollary => {
            let number = p.word("case", &["1", "2", "3"])?.ok_or_else(|| p.missing("case"))?;
            let case = match number.as_str() {
                "1" => CorollaryCase::HalfPlane { shift: p.real("shift", 0.0)? },
                "2" => CorollaryCase::Sector { beta: p.real("beta", FRAC_PI_4)?, shift: p.real("shift", 0.0)? },
                _ => {
                    let pt = p.complex_opt("p")?.unwrap_or(Complex::new(0.0, 0.0));
                    let domain = p.domain_opt("domain")?.unwrap_or_else(|| DomainSpec::koebe(pt));
                    let strip = p.strip("strip")?.unwrap_or(Semistrip { a: pt.re - 1.0, b: pt.re + 1.0, c: pt.im + 1.0 });
                    CorollaryCase::Semistrip { domain, strip }
                }
            };
            case.omega().map_err(|e| p.range("case", e.to_string()))?;
            let starts = p.complex_list("starts")?.unwrap_or_else(default_starts);
            if let Some(bad) = starts.iter().find(|z| !(z.norm() < 1.0)) {
                return Err(p.range("starts", format!("start {bad} is not in the unit disc")));
            }
            Job::Corollary {
                case,
                starts,
                t_min: p.positive("t_min", 1.0)?,
                t_max: p.positive("t_max", 1e6)?,
                samples: p.count("samples", 61)?,
                threshold: p.positive("threshold", 0.05)?,
                tol: p.positive("tol", 1e-2)?,
                tail: p.count("tail", 5)?.max(1),
                falsifier: p.count("falsifier", 10_000)?,
            }
        }
        Command::Probe => {
            let kind = match p.word("kind", &["step1", "step2", "step3", "step4"])?.ok_or_else(|| p.missing("kind"))?.as_str() {
                "step1" => ProbeKind::Step1,
                "step2" => ProbeKind::Step2,
                "step3" => ProbeKind::Step3,
                _ => ProbeKind::Step4,
            };
            let beta = match kind {
                ProbeKind::Step4 => p.real("beta", FRAC_PI_4)?,
                _ => p.real_req("beta")?,
            };
            Job::Probe {
                kind,
                beta,
                samples: p.count("samples", 1000)?,
                domain: p.domain_opt("domain")?.unwrap_or(DomainSpec::RightHalfPlane),
                x0: p.real_opt("x0")?,
                x1: p.real_opt("x1")?,
                grid: p.count("grid", 17)?,
            }
        }
    })
}

/// Starting points used when a corollary scenario does not list its own.
pub fn default_starts() -> Vec<Complex> {
    vec![Complex::new(0.0, 0.0), Complex::new(0.0, 0.3), Complex::new(-0.5, 0.0), Complex::new(0.4, 0.0), Complex::new(0.3, 0.3)]
}

impl ScenarioConfig {
    /// Validates a raw line. In strict mode unknown keys are errors; otherwise
    /// they are dropped and listed in [`ScenarioConfig::ignored`].
    pub fn from_raw(raw: RawLine, strict: bool) -> Res<Self> {
        let command = Command::parse(&raw.command)
            .ok_or_else(|| ParseError::new(raw.line, 1, "UNKNOWN_COMMAND", format!("unknown command `{}`", raw.command)))?;
        let mut entries = Vec::with_capacity(raw.entries.len());
        let mut ignored = Vec::new();
        for e in raw.entries {
            if e.key == "seed" || command.keys().contains(&e.key.as_str()) {
                entries.push(e);
            } else if strict {
                return Err(ParseError::new(raw.line, e.col, "UNKNOWN_KEY", format!("`{}` does not accept `{}`", command, e.key)));
            } else {
                ignored.push(e.key);
            }
        }
        let cfg = ScenarioConfig { line: raw.line, command, entries, ignored };
        if let Some(e) = cfg.entries.iter().find(|e| e.key == "seed") {
            cfg.seed_value(e)?;
        }
        let swept = cfg.swept();
        if swept.len() > 2 {
            return Err(ParseError::new(cfg.line, cfg.entries[swept[2]].col, "SWEEP_ERROR", "at most two parameters may be swept"));
        }
        let cells = cfg.cell_count();
        if cells > MAX_CELLS {
            return Err(ParseError::new(cfg.line, 1, "GRID_TOO_LARGE", format!("sweep has {cells} cells (limit {MAX_CELLS})")));
        }
        // validate plain lines, and the first cell of sweeps, eagerly
        if cells > 0 {
            cfg.job_for_cell(0)?;
        }
        Ok(cfg)
    }

    fn seed_value(&self, e: &Entry) -> Res<u64> {
        match &e.value {
            Value::Real(x) if *x >= 0.0 && x.fract() == 0.0 && *x < 1.8446744073709552e19 => Ok(*x as u64),
            _ => Err(ParseError::new(self.line, e.col, "RANGE_VIOLATION", "`seed` must be an unsigned integer")),
        }
    }

    /// Seed written in the scenario itself, if any.
    pub fn seed(&self) -> Option<u64> {
        self.entries.iter().find(|e| e.key == "seed").and_then(|e| self.seed_value(e).ok())
    }

    /// Indices of swept entries.
    pub fn swept(&self) -> Vec<usize> {
        self.entries.iter().enumerate().filter(|(_, e)| matches!(e.value, Value::Sweep(_))).map(|(i, _)| i).collect()
    }

    pub fn is_sweep(&self) -> bool {
        !self.swept().is_empty()
    }

    fn sweeps(&self) -> Vec<(usize, &Sweep)> {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(i, e)| match &e.value {
                Value::Sweep(s) => Some((i, s)),
                _ => None,
            })
            .collect()
    }

    /// Number of cells; 1 for a plain line.
    pub fn cell_count(&self) -> usize {
        self.sweeps().iter().map(|(_, s)| s.len()).fold(1usize, |acc, n| acc.saturating_mul(n))
    }

    /// Names of the swept keys, in line order.
    pub fn swept_keys(&self) -> Vec<String> {
        self.sweeps().iter().map(|(i, _)| self.entries[*i].key.clone()).collect()
    }

    /// Swept values of cell `index`. The last swept key varies fastest.
    pub fn cell_values(&self, index: usize) -> Vec<(usize, f64)> {
        let sweeps = self.sweeps();
        let values: Vec<Vec<f64>> = sweeps.iter().map(|(_, s)| s.values()).collect();
        let mut rem = index;
        let mut out = vec![(0, 0.0); sweeps.len()];
        for k in (0..sweeps.len()).rev() {
            let n = values[k].len();
            out[k] = (sweeps[k].0, values[k][rem % n]);
            rem /= n;
        }
        out
    }

    /// Typed job for sweep cell `index` (0 for plain lines).
    pub fn job_for_cell(&self, index: usize) -> Res<Job> {
        let subst = self.cell_values(index);
        let params = Params { line: self.line, entries: &self.entries, subst: &subst };
        build(self.command, &params)
    }

    /// Canonical one-line form.
    pub fn to_line(&self) -> String {
        RawLine { line: self.line, command: self.command.name().to_string(), entries: self.entries.clone() }.to_string()
    }
}

impl fmt::Display for ScenarioConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

/// Parses a whole scenario file.
pub fn parse_config(text: &str, strict: bool) -> Res<Vec<ScenarioConfig>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(raw) = parse_line(line, i + 1)? {
            out.push(ScenarioConfig::from_raw(raw, strict)?);
        }
    }
    Ok(out)
}

/// Canonical text of a scenario file: one normalised line per scenario.
pub fn serialize_config(configs: &[ScenarioConfig]) -> String {
    let mut s = String::new();
    for c in configs {
        s.push_str(&c.to_line());
        s.push('\n');
    }
    s
}
