//! Line-oriented scenario files driving the command-line tool.
//!
//! ```text
//! # Minkowski difference of a disk by a rectangle
//! domain [-6,6] [-6,6]
//! eps 0.05
//! let b = disk 0 0 5
//! let a = rect 0 0 2 1
//! minkowski-diff b a
//! expect nonempty
//! ```
//!
//! Parsing never touches the file system; map files are loaded by [`run`].

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{
    sep_disk, sep_halfplane, sep_halfplane_union_map, sep_pie, sep_raster_map, sep_rect, sep_ring,
    sep_triangle, PieSpec,
};
use crate::interval::Interval;
use crate::interval_box::IntervalBox;
use crate::localization::{
    build_pose_separator, parse_measurements, ring_directions, simulate_range, simulate_scan, RangeBracket,
    SonarMeasurement,
};
use crate::minkowski::{default_eps_a, sep_minkowski_diff, sep_minkowski_sum};
use crate::paver::{pave, BoxClass, PaverConfig};
use crate::raster::OccupancyMap;
use crate::separator::Separator;
use crate::subpaving::SubPaving;

#[derive(Clone, Debug, PartialEq)]
pub enum SetExpr {
    Disk {
        center: [f64; 2],
        radius: f64,
    },
    Rect {
        center: [f64; 2],
        half: [f64; 2],
    },
    Tri([[f64; 2]; 3]),
    Ring {
        center: [f64; 2],
        r_lo: f64,
        r_hi: f64,
    },
    Pie(PieSpec),
    /// `n · x ≥ offset`.
    Halfplane {
        normal: [f64; 2],
        offset: f64,
    },
    /// The two-wall map `x₁ ≤ 5 or x₂ ≤ 3`.
    Walls,
    Map(PathBuf),
    Union(Vec<String>),
    Inter(Vec<String>),
    Compl(String),
}

/// Simulated scan used by `localize` when no measurements are given.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanSpec {
    pub count: usize,
    pub gamma: f64,
    pub d_max: f64,
    /// Half-width added on each side of every simulated bracket.
    pub noise: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Pave(String),
    MinkowskiSum(String, String),
    MinkowskiDiff(String, String),
    SonarSim { map: String, alpha: f64, gamma: f64, d_max: f64 },
    Localize(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub domain: Option<IntervalBox>,
    pub eps: f64,
    pub eps_a: Option<f64>,
    /// Explicit enclosure of the first Minkowski operand.
    pub a_domain: Option<IntervalBox>,
    pub sets: Vec<(String, SetExpr)>,
    pub command: Command,
    pub pose: Option<[f64; 2]>,
    pub heading: f64,
    pub measurements: Vec<SonarMeasurement>,
    pub measurements_file: Option<PathBuf>,
    pub scan: Option<ScanSpec>,
    pub expect_nonempty: bool,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub threads: usize,
}

struct Line<'a> {
    no: usize,
    toks: Vec<&'a str>,
}

impl Line<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::ParseAt { line: self.no, message: message.into() }
    }

    fn arity(&self, n: usize) -> Result<()> {
        if self.toks.len() == n {
            Ok(())
        } else {
            Err(self.err(format!("`{}` takes {} argument(s)", self.toks[0], n - 1)))
        }
    }

    fn num(&self, i: usize) -> Result<f64> {
        let t = self.toks[i];
        t.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| self.err(format!("bad number {t:?}")))
    }

    fn nums<const N: usize>(&self, from: usize) -> Result<[f64; N]> {
        let mut out = [0.0; N];
        for (k, v) in out.iter_mut().enumerate() {
            *v = self.num(from + k)?;
        }
        Ok(out)
    }

    fn rest(&self, from: usize) -> String {
        self.toks[from..].join(" ")
    }
}

fn is_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn parse_set(l: &Line, from: usize) -> Result<SetExpr> {
    let kind = *l.toks.get(from).ok_or_else(|| l.err("missing set kind"))?;
    let argc = l.toks.len() - from - 1;
    let want = |n: usize| -> Result<()> {
        if argc == n {
            Ok(())
        } else {
            Err(l.err(format!("`{kind}` takes {n} argument(s), got {argc}")))
        }
    };
    let a = from + 1;
    let e = match kind {
        "disk" => {
            want(3)?;
            let [cx, cy, r] = l.nums(a)?;
            SetExpr::Disk { center: [cx, cy], radius: r }
        }
        "rect" => {
            want(4)?;
            let [cx, cy, hw, hh] = l.nums(a)?;
            SetExpr::Rect { center: [cx, cy], half: [hw, hh] }
        }
        "tri" => {
            want(6)?;
            let v: [f64; 6] = l.nums(a)?;
            SetExpr::Tri([[v[0], v[1]], [v[2], v[3]], [v[4], v[5]]])
        }
        "ring" => {
            want(4)?;
            let [cx, cy, r_lo, r_hi] = l.nums(a)?;
            SetExpr::Ring { center: [cx, cy], r_lo, r_hi }
        }
        "pie" => {
            want(4)?;
            let [alpha, gamma, r_lo, r_hi] = l.nums(a)?;
            SetExpr::Pie(PieSpec::new(alpha, gamma, r_lo, r_hi).map_err(|e| l.err(e.to_string()))?)
        }
        "halfplane" => {
            want(3)?;
            let [nx, ny, offset] = l.nums(a)?;
            SetExpr::Halfplane { normal: [nx, ny], offset }
        }
        "walls" => {
            want(0)?;
            SetExpr::Walls
        }
        "map" => {
            want(1)?;
            SetExpr::Map(PathBuf::from(l.toks[a]))
        }
        "union" | "inter" => {
            if argc < 2 {
                return Err(l.err(format!("`{kind}` needs at least two operands")));
            }
            let names = l.toks[a..].iter().map(|s| s.to_string()).collect();
            if kind == "union" {
                SetExpr::Union(names)
            } else {
                SetExpr::Inter(names)
            }
        }
        "compl" => {
            want(1)?;
            SetExpr::Compl(l.toks[a].to_string())
        }
        other => return Err(l.err(format!("unknown set kind {other:?}"))),
    };
    Ok(e)
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario> {
        let mut domain = None;
        let mut eps = None;
        let mut eps_a = None;
        let mut a_domain = None;
        let mut sets: Vec<(String, SetExpr)> = Vec::new();
        let mut command: Option<(usize, Command)> = None;
        let mut pose = None;
        let mut heading = None;
        let mut measurements = Vec::new();
        let mut measurements_file = None;
        let mut scan = None;
        let mut expect_nonempty = false;
        let mut out = None;
        let mut svg = None;
        let mut threads = None;

        fn once<T>(slot: &mut Option<T>, v: T, l: &Line) -> Result<()> {
            if slot.is_some() {
                return Err(l.err(format!("`{}` given twice", l.toks[0])));
            }
            *slot = Some(v);
            Ok(())
        }

        for (i, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = body.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            let l = Line { no: i + 1, toks };
            let set_cmd = |c: Command, command: &mut Option<(usize, Command)>| -> Result<()> {
                if let Some((prev, _)) = command {
                    return Err(l.err(format!("second command; the first is on line {prev}")));
                }
                *command = Some((l.no, c));
                Ok(())
            };
            match l.toks[0] {
                "domain" => {
                    if l.toks.len() < 2 {
                        return Err(l.err("`domain` needs interval literals"));
                    }
                    let b: IntervalBox = l.rest(1).parse().map_err(|e: Error| l.err(e.to_string()))?;
                    if b.is_empty() || !b.is_bounded() {
                        return Err(l.err("domain must be bounded and nonempty"));
                    }
                    once(&mut domain, b, &l)?;
                }
                "a_domain" => {
                    let b: IntervalBox = l.rest(1).parse().map_err(|e: Error| l.err(e.to_string()))?;
                    if b.is_empty() || !b.is_bounded() {
                        return Err(l.err("a_domain must be bounded and nonempty"));
                    }
                    once(&mut a_domain, b, &l)?;
                }
                "eps" | "eps_a" => {
                    l.arity(2)?;
                    let v = l.num(1)?;
                    if !(v > 0.0) {
                        return Err(l.err(format!("`{}` must be positive", l.toks[0])));
                    }
                    once(if l.toks[0] == "eps" { &mut eps } else { &mut eps_a }, v, &l)?;
                }
                "let" => {
                    if l.toks.len() < 4 || l.toks[2] != "=" {
                        return Err(l.err("expected `let NAME = KIND ARGS...`"));
                    }
                    let name = l.toks[1];
                    if !is_name(name) {
                        return Err(l.err(format!("invalid name {name:?}")));
                    }
                    if sets.iter().any(|(n, _)| n == name) {
                        return Err(l.err(format!("{name:?} defined twice")));
                    }
                    let e = parse_set(&l, 3)?;
                    let refs: &[String] = match &e {
                        SetExpr::Union(v) | SetExpr::Inter(v) => v,
                        SetExpr::Compl(n) => std::slice::from_ref(n),
                        _ => &[],
                    };
                    if let Some(bad) = refs.iter().find(|r| !sets.iter().any(|(n, _)| n == *r)) {
                        return Err(l.err(format!("undefined set {bad:?}")));
                    }
                    sets.push((name.to_string(), e));
                }
                "pave" => {
                    l.arity(2)?;
                    set_cmd(Command::Pave(l.toks[1].into()), &mut command)?;
                }
                "minkowski-sum" | "minkowski-diff" => {
                    l.arity(3)?;
                    let (x, y) = (l.toks[1].to_string(), l.toks[2].to_string());
                    let c = if l.toks[0] == "minkowski-sum" {
                        Command::MinkowskiSum(x, y)
                    } else {
                        Command::MinkowskiDiff(x, y)
                    };
                    set_cmd(c, &mut command)?;
                }
                "sonar-sim" => {
                    l.arity(5)?;
                    let [alpha, gamma, d_max] = l.nums(2)?;
                    let c = Command::SonarSim { map: l.toks[1].into(), alpha, gamma, d_max };
                    set_cmd(c, &mut command)?;
                }
                "localize" => {
                    l.arity(2)?;
                    set_cmd(Command::Localize(l.toks[1].into()), &mut command)?;
                }
                "pose" => {
                    l.arity(3)?;
                    once(&mut pose, l.nums(1)?, &l)?;
                }
                "heading" => {
                    l.arity(2)?;
                    once(&mut heading, l.num(1)?, &l)?;
                }
                "measure" => {
                    l.arity(6)?;
                    let [alpha, gamma, lo, hi, d_max] = l.nums(1)?;
                    let r = Interval::checked(lo, hi).ok_or_else(|| l.err("bad range"))?;
                    let m =
                        SonarMeasurement::new(alpha, gamma, r, d_max).map_err(|e| l.err(e.to_string()))?;
                    measurements.push(m);
                }
                "measurements" => {
                    l.arity(2)?;
                    once(&mut measurements_file, PathBuf::from(l.toks[1]), &l)?;
                }
                "scan" => {
                    l.arity(5)?;
                    let count = l.toks[1]
                        .parse::<usize>()
                        .ok()
                        .filter(|c| (1..=64).contains(c))
                        .ok_or_else(|| l.err("scan count must be in 1..=64"))?;
                    let [gamma, d_max, noise] = l.nums(2)?;
                    if !(gamma > 0.0 && d_max > 0.0 && noise >= 0.0) {
                        return Err(l.err("scan needs gamma > 0, d_max > 0, noise ≥ 0"));
                    }
                    once(&mut scan, ScanSpec { count, gamma, d_max, noise }, &l)?;
                }
                "expect" => {
                    if l.toks.len() != 2 || l.toks[1] != "nonempty" {
                        return Err(l.err("only `expect nonempty` is supported"));
                    }
                    expect_nonempty = true;
                }
                "out" => {
                    l.arity(2)?;
                    once(&mut out, PathBuf::from(l.toks[1]), &l)?;
                }
                "svg" => {
                    l.arity(2)?;
                    once(&mut svg, PathBuf::from(l.toks[1]), &l)?;
                }
                "threads" => {
                    l.arity(2)?;
                    let n = l.toks[1]
                        .parse::<usize>()
                        .ok()
                        .filter(|n| (1..=256).contains(n))
                        .ok_or_else(|| l.err("threads must be in 1..=256"))?;
                    once(&mut threads, n, &l)?;
                }
                other => return Err(l.err(format!("unknown directive {other:?}"))),
            }
        }

        let (cmd_line, command) = command.ok_or_else(|| Error::ParseAt {
            line: text.lines().count().max(1),
            message: "no command (pave, minkowski-sum, minkowski-diff, sonar-sim, localize)".into(),
        })?;
        let names: Vec<&str> = match &command {
            Command::Pave(s) | Command::Localize(s) => vec![s],
            Command::MinkowskiSum(a, b) | Command::MinkowskiDiff(a, b) => vec![a, b],
            Command::SonarSim { map, .. } => vec![map],
        };
        for n in names {
            if !sets.iter().any(|(s, _)| s == n) {
                return Err(Error::ParseAt { line: cmd_line, message: format!("undefined set {n:?}") });
            }
        }
        let sc = Scenario {
            domain,
            eps: eps.unwrap_or(0.1),
            eps_a,
            a_domain,
            sets,
            command,
            pose,
            heading: heading.unwrap_or(0.0),
            measurements,
            measurements_file,
            scan,
            expect_nonempty,
            out,
            svg,
            threads: threads.unwrap_or(1),
        };
        sc.validate().map_err(|message| Error::ParseAt { line: cmd_line, message })?;
        Ok(sc)
    }

    fn validate(&self) -> std::result::Result<(), String> {
        match &self.command {
            Command::SonarSim { .. } => {
                if self.pose.is_none() {
                    return Err("sonar-sim needs `pose`".into());
                }
            }
            Command::Localize(_) => {
                let sources = usize::from(!self.measurements.is_empty())
                    + usize::from(self.measurements_file.is_some())
                    + usize::from(self.scan.is_some());
                if sources > 1 {
                    return Err("use only one of `measure`, `measurements` and `scan`".into());
                }
                if self.scan.is_some() && self.pose.is_none() {
                    return Err("`scan` simulates from `pose`, which is missing".into());
                }
                if self.domain.is_none() {
                    return Err("localize needs `domain`".into());
                }
            }
            _ => {
                if self.domain.is_none() {
                    return Err("missing `domain`".into());
                }
            }
        }
        if let Some(d) = &self.domain {
            if d.dim() != 2 {
                return Err("domain must be two-dimensional".into());
            }
        }
        Ok(())
    }

    fn expr(&self, name: &str) -> &SetExpr {
        &self.sets.iter().find(|(n, _)| n == name).expect("validated").1
    }

    /// Closed-form enclosure of a bounded set, if one is known.
    pub fn bounding_box(&self, name: &str) -> Option<IntervalBox> {
        let b =
            |lo: [f64; 2], hi: [f64; 2]| Some(IntervalBox::from_bounds(&[(lo[0], hi[0]), (lo[1], hi[1])]));
        match self.expr(name) {
            SetExpr::Disk { center: c, radius: r } | SetExpr::Ring { center: c, r_hi: r, .. } => {
                b([c[0] - r, c[1] - r], [c[0] + r, c[1] + r])
            }
            SetExpr::Rect { center: c, half: h } => b([c[0] - h[0], c[1] - h[1]], [c[0] + h[0], c[1] + h[1]]),
            SetExpr::Tri(v) => {
                let lo = [0, 1].map(|i| v.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min));
                let hi = [0, 1].map(|i| v.iter().map(|p| p[i]).fold(f64::NEG_INFINITY, f64::max));
                b(lo, hi)
            }
            SetExpr::Pie(p) => Some(p.bounding_box()),
            SetExpr::Union(ns) => ns
                .iter()
                .map(|n| self.bounding_box(n))
                .try_fold(IntervalBox::empty(2), |acc, x| Some(acc.hull(&x?))),
            SetExpr::Inter(ns) => {
                let known: Vec<IntervalBox> = ns.iter().filter_map(|n| self.bounding_box(n)).collect();
                known.into_iter().reduce(|a, x| a.intersect(&x))
            }
            _ => None,
        }
    }
}

/// Loads maps lazily and builds separators for named sets.
pub struct SetBuilder<'a> {
    scenario: &'a Scenario,
    base_dir: PathBuf,
    maps: HashMap<PathBuf, Arc<OccupancyMap>>,
}

impl<'a> SetBuilder<'a> {
    pub fn new(scenario: &'a Scenario, base_dir: &Path) -> Self {
        SetBuilder { scenario, base_dir: base_dir.to_path_buf(), maps: HashMap::new() }
    }

    pub fn build(&mut self, name: &str) -> Result<Separator> {
        let sep = match self.scenario.expr(name).clone() {
            SetExpr::Disk { center, radius } => sep_disk(center, radius)?,
            SetExpr::Rect { center, half } => sep_rect(center, half)?,
            SetExpr::Tri(v) => sep_triangle(v)?,
            SetExpr::Ring { center, r_lo, r_hi } => sep_ring(center, r_lo, r_hi)?,
            SetExpr::Pie(p) => sep_pie(&p)?,
            SetExpr::Halfplane { normal, offset } => sep_halfplane(normal, offset)?,
            SetExpr::Walls => sep_halfplane_union_map(),
            SetExpr::Map(rel) => {
                let path = self.base_dir.join(rel);
                let map = match self.maps.get(&path) {
                    Some(m) => m.clone(),
                    None => {
                        let m = Arc::new(
                            OccupancyMap::load(&path)
                                .map_err(|e| Error::Map(format!("{}: {e}", path.display())))?,
                        );
                        self.maps.insert(path, m.clone());
                        m
                    }
                };
                sep_raster_map(map)
            }
            SetExpr::Union(ns) => {
                let parts = ns.iter().map(|n| self.build(n)).collect::<Result<Vec<_>>>()?;
                Separator::union_all(parts)?
            }
            SetExpr::Inter(ns) => {
                let parts = ns.iter().map(|n| self.build(n)).collect::<Result<Vec<_>>>()?;
                Separator::intersect_all(parts)?
            }
            SetExpr::Compl(n) => self.build(&n)?.complement(),
        };
        Ok(sep)
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub paving: Option<SubPaving>,
    pub range: Option<RangeBracket>,
    pub measurements: Vec<SonarMeasurement>,
    /// The separator that was paved, if any.
    pub separator: Option<Separator>,
    /// Points to highlight in plots (e.g. the true pose).
    pub markers: Vec<[f64; 2]>,
}

impl Outcome {
    /// True when the computed set has no INSIDE or BOUNDARY box.
    pub fn is_empty(&self) -> bool {
        match &self.paving {
            Some(sp) => sp.boxes().iter().all(|(_, c)| *c == BoxClass::Outside),
            None => false,
        }
    }
}

fn a_domain_for(sc: &Scenario, name: &str) -> Result<IntervalBox> {
    sc.a_domain
        .clone()
        .or_else(|| sc.bounding_box(name))
        .ok_or_else(|| Error::InvalidParameter(format!("cannot bound {name:?}; give `a_domain` explicitly")))
}

/// Executes a scenario. Relative paths inside it resolve against `base_dir`.
pub fn run(sc: &Scenario, base_dir: &Path) -> Result<Outcome> {
    let mut sets = SetBuilder::new(sc, base_dir);
    let cfg = |domain: &IntervalBox| -> Result<PaverConfig> {
        Ok(PaverConfig::new(domain.clone(), sc.eps)?.with_threads(sc.threads))
    };
    let mut outcome = Outcome {
        paving: None,
        range: None,
        measurements: Vec::new(),
        separator: None,
        markers: sc.pose.into_iter().collect(),
    };
    match &sc.command {
        Command::Pave(name) => {
            let sep = sets.build(name)?;
            outcome.paving = Some(pave(&sep, &cfg(sc.domain.as_ref().expect("validated"))?)?);
            outcome.separator = Some(sep);
        }
        Command::MinkowskiDiff(b, a) | Command::MinkowskiSum(a, b) => {
            let (sa, sb) = (sets.build(a)?, sets.build(b)?);
            let a_dom = a_domain_for(sc, a)?;
            let eps_a = sc.eps_a.unwrap_or_else(|| default_eps_a(&a_dom));
            let sep = if matches!(sc.command, Command::MinkowskiSum(..)) {
                sep_minkowski_sum(&sa, &sb, &a_dom, eps_a)?
            } else {
                sep_minkowski_diff(&sb, &sa, &a_dom, eps_a)?
            };
            outcome.paving = Some(pave(&sep, &cfg(sc.domain.as_ref().expect("validated"))?)?);
            outcome.separator = Some(sep);
        }
        Command::SonarSim { map, alpha, gamma, d_max } => {
            let m = sets.build(map)?;
            let pose = sc.pose.expect("validated");
            outcome.range = Some(simulate_range(&m, pose, sc.heading + alpha, *gamma, *d_max, sc.eps)?);
        }
        Command::Localize(map) => {
            let m = sets.build(map)?;
            let ms: Vec<SonarMeasurement> = if let Some(scan) = &sc.scan {
                let pose = sc.pose.expect("validated");
                let dirs = ring_directions(sc.heading, scan.count);
                let sim_eps = (scan.d_max / 1000.0).max(1e-3);
                simulate_scan(&m, pose, &dirs, scan.gamma, scan.d_max, sim_eps)?
                    .into_iter()
                    .map(|x| x.inflated(scan.noise))
                    .collect()
            } else {
                let raw = match &sc.measurements_file {
                    Some(rel) => {
                        let path = base_dir.join(rel);
                        let text = std::fs::read_to_string(&path)
                            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                        parse_measurements(&text)?
                    }
                    None => sc.measurements.clone(),
                };
                raw.into_iter()
                    .map(|x| SonarMeasurement {
                        alpha: crate::geometry::normalize_angle(sc.heading + x.alpha),
                        ..x
                    })
                    .collect()
            };
            let sep = build_pose_separator(&m, &ms, sc.eps_a)?;
            outcome.paving = Some(pave(&sep, &cfg(sc.domain.as_ref().expect("validated"))?)?);
            outcome.separator = Some(sep);
            outcome.measurements = ms;
        }
    }
    Ok(outcome)
}
