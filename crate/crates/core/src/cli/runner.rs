//! Experiment dispatch: config in, CSV report and pass/fail out.

use crate::analysis::bounds::{
    line_grid, pointwise_modulus_sweep, possibility_rate_sweep, simplex_lattice, uniform_k_check,
    LpOperatorContext,
};
use crate::analysis::improvement::improvement_check;
use crate::analysis::reduction::reduction_suite;
use crate::analysis::{BoundKind, BoundReport, SmoothingLadder};
use crate::bernstein::{classical_bernstein, classical_genuine, durrmeyer_borel, SimplexPoint};
use crate::capacity::{check_structure, Capacity, SetDomain};
use crate::choquet::{choquet_integral, IntegralMethod};
use crate::error::{Error, Result};
use crate::function::{ContinuousFunction1D, SampleMode, SampledFunction1D, SampledFunctionSimplex};
use crate::operators::{CapacityFamily, ChoquetRoute, Discretization, EndTerms, OperatorPlan, Target};
use crate::properties::property_suite;
use crate::sets::{IntervalSet, SimplexCellSet, SimplexGrid};

use super::catalog::{capacities, capacity, capacity_or, targets};
use super::config::{parse_float_list, parse_int_list, parse_value, RawConfig};
use super::report::{Cell, CsvReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Keys that do not change the computed rows.
const UNHASHED_KEYS: &[&str] = &["output"];

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub report: CsvReport,
    pub all_passed: bool,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.all_passed {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Integrate,
    OperatorEval,
    BoundCheck,
    Compare,
    Sweep,
    PropertySuite,
}

impl Kind {
    fn parse(v: &str) -> Result<Self> {
        Ok(match v {
            "integrate" => Kind::Integrate,
            "operator-eval" => Kind::OperatorEval,
            "bound-check" => Kind::BoundCheck,
            "compare" => Kind::Compare,
            "sweep" => Kind::Sweep,
            "property-suite" => Kind::PropertySuite,
            other => return Err(Error::Config(format!("`kind`: unknown experiment kind `{other}`"))),
        })
    }
}

/// Runs the experiment described by `cfg`. Every key is validated before
/// any computation; errors mean exit code 2 and no CSV.
pub fn run(cfg: &RawConfig) -> Result<RunOutcome> {
    let kind_name = cfg.require("kind")?.to_string();
    let kind = Kind::parse(&kind_name)?;
    let seed: Option<u64> = match cfg.get("seed") {
        Some(v) => Some(parse_value("seed", v)?),
        None => None,
    };
    cfg.get("output");
    let job: Box<dyn FnOnce() -> Result<(CsvReport, bool)>> = match kind {
        Kind::Integrate => integrate(cfg)?,
        Kind::OperatorEval => operator_eval(cfg)?,
        Kind::Sweep => sweep(cfg)?,
        Kind::BoundCheck => bound_check(cfg)?,
        Kind::Compare => compare(cfg)?,
        Kind::PropertySuite => {
            let seed = seed.ok_or_else(|| Error::Config("`seed` is required for property-suite".into()))?;
            property(cfg, seed)?
        }
    };
    cfg.check_all_used()?;
    let (mut report, all_passed) = job()?;
    report.sort();
    let mut meta = vec![
        ("tool".to_string(), "bdchoquet".to_string()),
        ("version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        ("kind".to_string(), kind_name),
        ("config_sha256".to_string(), config_hash(cfg)),
    ];
    if let Some(s) = seed {
        meta.push(("seed".to_string(), s.to_string()));
    }
    meta.push(("rows".to_string(), report.rows.len().to_string()));
    meta.push(("all_passed".to_string(), all_passed.to_string()));
    report.metadata = meta;
    Ok(RunOutcome { report, all_passed })
}

pub fn config_hash(cfg: &RawConfig) -> String {
    let mut c = cfg.clone();
    for k in UNHASHED_KEYS {
        c.remove(k);
    }
    c.sha256()
}

type Job = Box<dyn FnOnce() -> Result<(CsvReport, bool)>>;

fn discretization(cfg: &RawConfig, dim: usize) -> Result<Discretization> {
    let mut d = Discretization::default();
    d.cells = cfg.parse_or("grid.cells", d.cells)?;
    d.simplex_resolution = cfg.parse_or("grid.simplex", if dim == 2 { 32 } else { d.simplex_resolution })?;
    d.beta_steps = cfg.parse_or("grid.beta-steps", d.beta_steps)?;
    d.additive_fast_path = cfg.parse_or("grid.fast-path", true)?;
    d.route = match cfg.get("grid.route").unwrap_or("sorted-levels") {
        "sorted-levels" => ChoquetRoute::SortedLevels,
        "beta-quadrature" => ChoquetRoute::BetaQuadrature,
        "continuous" => ChoquetRoute::Continuous,
        other => return Err(Error::Config(format!("`grid.route`: unknown route `{other}`"))),
    };
    if d.cells == 0 || d.simplex_resolution == 0 {
        return Err(Error::Config("`grid.cells` and `grid.simplex` must be positive".into()));
    }
    if d.beta_steps < 16 || !d.beta_steps.is_power_of_two() {
        return Err(Error::Config("`grid.beta-steps` must be a power of two >= 16".into()));
    }
    Ok(d)
}

/// `function`, or its short form `f`.
fn functions(cfg: &RawConfig, dim: usize) -> Result<Vec<Target>> {
    match (cfg.get("function"), cfg.get("f")) {
        (Some(_), Some(_)) => Err(Error::Config("give one of `function` and `f`".into())),
        (Some(v), None) => targets("function", v, dim),
        (None, Some(v)) => targets("f", v, dim),
        (None, None) => Err(Error::Config("missing required key `function`".into())),
    }
}

fn dimension(cfg: &RawConfig) -> Result<usize> {
    let d: usize = cfg.parse_or("dim", 1)?;
    if d != 1 && d != 2 {
        return Err(Error::Config(format!("`dim`: {d} is not 1 or 2")));
    }
    Ok(d)
}

fn degrees(cfg: &RawConfig) -> Result<Vec<u32>> {
    let ns = parse_int_list("n", cfg.require("n")?)?;
    if ns.contains(&0) {
        return Err(Error::Config("`n`: degrees must be positive".into()));
    }
    Ok(ns)
}

fn points(cfg: &RawConfig, dim: usize) -> Result<Vec<SimplexPoint>> {
    if dim == 1 {
        let p: usize = cfg.parse_or("x.points", 101)?;
        line_grid(p).map_err(|e| Error::Config(format!("`x.points`: {e}")))
    } else {
        let l: usize = cfg.parse_or("x.lattice", 10)?;
        simplex_lattice(l).map_err(|e| Error::Config(format!("`x.lattice`: {e}")))
    }
}

fn ladder(cfg: &RawConfig, dim: usize) -> Result<SmoothingLadder> {
    match cfg.get("ladder") {
        None if dim == 2 => Ok(SmoothingLadder::simplex_default()),
        None => Ok(SmoothingLadder::default()),
        Some(v) => SmoothingLadder::new(parse_int_list("ladder", v)?).map_err(|e| Error::Config(format!("`ladder`: {e}"))),
    }
}

fn x_cells(x: &SimplexPoint) -> (Cell, Cell) {
    match x.coords() {
        [a] => ((*a).into(), Cell::Empty),
        [a, b] => ((*a).into(), (*b).into()),
        _ => (Cell::Empty, Cell::Empty),
    }
}

#[derive(Debug, Clone)]
enum FamilySpec {
    Constant(Capacity),
    Possibility,
    AllDirac,
    MixedDirac(Capacity),
    TwoMeasure { delta: Capacity, mu: Capacity, ends: EndTerms },
    Genuine { start: Capacity, end: Capacity, middle: Capacity },
}

impl FamilySpec {
    fn build(&self, n: u32, d: usize) -> Result<CapacityFamily> {
        Ok(match self {
            FamilySpec::Constant(c) => CapacityFamily::Constant(c.clone()),
            FamilySpec::Possibility => CapacityFamily::Possibility,
            FamilySpec::AllDirac => CapacityFamily::all_dirac(n, d)?,
            FamilySpec::MixedDirac(c) => CapacityFamily::MixedDiracTail(c.clone()),
            FamilySpec::TwoMeasure { delta, mu, ends } => CapacityFamily::two_measure(delta.clone(), mu.clone(), *ends)?,
            FamilySpec::Genuine { start, end, middle } => CapacityFamily::Genuine {
                start: start.clone(),
                end: end.clone(),
                middle: vec![middle.clone()],
            },
        })
    }

    fn label(&self) -> String {
        match self {
            FamilySpec::Constant(c) => format!("constant({c})"),
            FamilySpec::Possibility => "possibility".into(),
            FamilySpec::AllDirac => "all-dirac".into(),
            FamilySpec::MixedDirac(c) => format!("mixed-dirac({c})"),
            FamilySpec::TwoMeasure { delta, mu, .. } => format!("delta={delta};mu={mu}"),
            FamilySpec::Genuine { start, end, middle } => format!("start={start};end={end};middle={middle}"),
        }
    }
}

#[derive(Debug, Clone)]
enum OpSpec {
    Family { name: String, family: FamilySpec, lower: f64 },
    Bernstein,
    Durrmeyer(Capacity),
    ClassicalGenuine,
}

fn mn_family(cfg: &RawConfig) -> Result<FamilySpec> {
    Ok(match cfg.get("operator.family").unwrap_or("constant") {
        "constant" => FamilySpec::Constant(capacity(cfg, "operator.capacity")?),
        "possibility" => FamilySpec::Possibility,
        "all-dirac" => FamilySpec::AllDirac,
        "mixed-dirac" => FamilySpec::MixedDirac(capacity(cfg, "operator.capacity")?),
        other => return Err(Error::Config(format!("`operator.family`: unknown family `{other}`"))),
    })
}

fn operator_spec(cfg: &RawConfig, dim: usize) -> Result<OpSpec> {
    let name = cfg.require("operator")?.to_string();
    let line_only = |name: &str| -> Result<()> {
        if dim != 1 {
            return Err(Error::Config(format!("`operator`: `{name}` is defined on [0, 1] only")));
        }
        Ok(())
    };
    let two = |ends| -> Result<FamilySpec> {
        Ok(FamilySpec::TwoMeasure {
            delta: capacity_or(cfg, "operator.delta", Capacity::LebesgueBorel)?,
            mu: capacity(cfg, "operator.capacity")?,
            ends,
        })
    };
    let family = match name.as_str() {
        "mn-gamma" => mn_family(cfg)?,
        "dn-possibility" => FamilySpec::Possibility,
        "dbar" => two(EndTerms::Upper)?,
        "dtilde" => two(EndTerms::Lower)?,
        "dstar" => two(EndTerms::Both)?,
        "dn-single-mu" => FamilySpec::Constant(capacity(cfg, "operator.capacity")?),
        "genuine-u" => FamilySpec::Genuine {
            start: capacity_or(cfg, "operator.start", Capacity::dirac(0.0))?,
            end: capacity(cfg, "operator.capacity")?,
            middle: capacity_or(cfg, "operator.middle", Capacity::LebesgueBorel)?,
        },
        "mstar" => {
            let family = mn_family(cfg)?;
            let lower: f64 = cfg.parse_required("operator.lower")?;
            return Ok(OpSpec::Family { name, family, lower });
        }
        "bernstein" => {
            line_only(&name)?;
            return Ok(OpSpec::Bernstein);
        }
        "durrmeyer" => {
            line_only(&name)?;
            return Ok(OpSpec::Durrmeyer(capacity_or(cfg, "operator.delta", Capacity::LebesgueBorel)?));
        }
        "classical-genuine" => {
            line_only(&name)?;
            return Ok(OpSpec::ClassicalGenuine);
        }
        other => return Err(Error::Config(format!("`operator`: unknown operator `{other}`"))),
    };
    if !matches!(family, FamilySpec::Constant(_) | FamilySpec::AllDirac) {
        line_only(&name)?;
    }
    Ok(OpSpec::Family { name, family, lower: 0.0 })
}

impl OpSpec {
    fn name(&self) -> String {
        match self {
            OpSpec::Family { name, .. } => name.clone(),
            OpSpec::Bernstein => "bernstein".into(),
            OpSpec::Durrmeyer(_) => "durrmeyer".into(),
            OpSpec::ClassicalGenuine => "classical-genuine".into(),
        }
    }

    fn label(&self) -> String {
        match self {
            OpSpec::Family { family, lower, .. } if *lower != 0.0 => format!("{};lower={lower}", family.label()),
            OpSpec::Family { family, .. } => family.label(),
            OpSpec::Durrmeyer(c) => format!("delta={c}"),
            _ => String::new(),
        }
    }

    /// Operator values at every point of `xs`.
    fn values(&self, f: &Target, n: u32, xs: &[SimplexPoint], disc: &Discretization) -> Result<Vec<f64>> {
        let line = |f: &Target| match f {
            Target::Line(g) => Ok(g.clone()),
            _ => Err(Error::Config("classical operators are defined on [0, 1] only".into())),
        };
        match self {
            OpSpec::Family { family, lower, .. } => {
                let plan = OperatorPlan::new(n, f.dim(), &family.build(n, f.dim())?, disc)?;
                let op = plan.apply(&f.shift(-*lower)).map_err(|e| match e {
                    Error::NegativeIntegrand { value, location } if *lower != 0.0 => Error::LowerBoundViolated {
                        bound: *lower,
                        value: value + lower,
                        location,
                    },
                    e => e,
                })?;
                xs.iter().map(|x| Ok(op.evaluate(x)?.value + lower)).collect()
            }
            OpSpec::Bernstein => {
                let g = line(f)?;
                xs.iter().map(|x| classical_bernstein(&g, n, x.coords()[0])).collect()
            }
            OpSpec::Durrmeyer(delta) => {
                let g = line(f)?;
                xs.iter().map(|x| durrmeyer_borel(&g, n, x.coords()[0], delta, disc.cells)).collect()
            }
            OpSpec::ClassicalGenuine => {
                let g = line(f)?;
                xs.iter().map(|x| classical_genuine(&g, n, x.coords()[0], disc.cells)).collect()
            }
        }
    }
}

fn integrate(cfg: &RawConfig) -> Result<Job> {
    let dim = dimension(cfg)?;
    let fs = functions(cfg, dim)?;
    let cs = capacities(cfg, "capacity")?;
    let disc = discretization(cfg, dim)?;
    let method_name = cfg.get("method").unwrap_or(if dim == 1 { "continuous" } else { "sorted-levels" }).to_string();
    let method = match method_name.as_str() {
        "sorted-levels" => IntegralMethod::SortedLevels,
        "beta-quadrature" | "continuous" => IntegralMethod::beta(disc.beta_steps),
        other => return Err(Error::Config(format!("`method`: unknown method `{other}`"))),
    };
    if dim == 2 && method_name == "continuous" {
        return Err(Error::Config("`method`: continuous is available on [0, 1] only".into()));
    }
    let set = match cfg.get("set") {
        None => IntervalSet::full(),
        Some(_) if dim == 2 => return Err(Error::Config("`set`: only the whole triangle is supported".into())),
        Some(v) => parse_set(v)?,
    };
    Ok(Box::new(move || {
        let mut r = CsvReport::new(&["function", "capacity", "set", "method", "value"]);
        for f in &fs {
            for c in &cs {
                let value = match f {
                    Target::Line(g) if method_name == "continuous" => {
                        choquet_integral(&ContinuousFunction1D::new(g.clone())?, &set, c, method)?
                    }
                    Target::Line(g) => {
                        let s = SampledFunction1D::from_fn(disc.cells, SampleMode::Midpoint, g)?;
                        choquet_integral(&s, &set, c, method)?
                    }
                    Target::Simplex(g) => {
                        let grid = SimplexGrid::new(disc.simplex_resolution)?;
                        let s = SampledFunctionSimplex::from_fn(grid, g)?;
                        choquet_integral(&s, &SimplexCellSet::full(grid), c, method)?
                    }
                };
                let set_label = if dim == 2 { "triangle".to_string() } else { set.to_string() };
                r.push(vec![f.label().into(), c.label().into(), set_label.into(), method_name.as_str().into(), value.into()])?;
            }
        }
        Ok((r, true))
    }))
}

/// `[a,b] [c,d]` → union of closed intervals.
fn parse_set(v: &str) -> Result<IntervalSet> {
    let mut set = IntervalSet::empty();
    for piece in v.split(']').map(str::trim).filter(|s| !s.is_empty()) {
        let inner = piece
            .strip_prefix('[')
            .ok_or_else(|| Error::Config(format!("`set`: expected `[a,b]`, got `{piece}]`")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Config(format!("`set`: expected `[a,b]`, got `{piece}]`")))?;
        let iv = IntervalSet::interval(parse_value("set", a)?, parse_value("set", b)?)
            .map_err(|e| Error::Config(format!("`set`: {e}")))?;
        set = set.union(&iv);
    }
    Ok(set)
}

fn operator_eval(cfg: &RawConfig) -> Result<Job> {
    let dim = dimension(cfg)?;
    let fs = functions(cfg, dim)?;
    let op = operator_spec(cfg, dim)?;
    let ns = degrees(cfg)?;
    let xs = points(cfg, dim)?;
    let disc = discretization(cfg, dim)?;
    Ok(Box::new(move || {
        let mut r = CsvReport::new(&["operator", "function", "n", "x1", "x2", "value", "f", "error", "capacity"]);
        for f in &fs {
            for &n in &ns {
                let vals = op.values(f, n, &xs, &disc)?;
                for (x, v) in xs.iter().zip(vals) {
                    let fx = f.eval(x);
                    let (x1, x2) = x_cells(x);
                    r.push(vec![
                        op.name().into(),
                        f.label().into(),
                        n.into(),
                        x1,
                        x2,
                        v.into(),
                        fx.into(),
                        (v - fx).abs().into(),
                        op.label().into(),
                    ])?;
                }
            }
        }
        Ok((r, true))
    }))
}

fn sweep(cfg: &RawConfig) -> Result<Job> {
    let dim = dimension(cfg)?;
    let fs = functions(cfg, dim)?;
    let op = operator_spec(cfg, dim)?;
    let ns = degrees(cfg)?;
    let xs = points(cfg, dim)?;
    let disc = discretization(cfg, dim)?;
    Ok(Box::new(move || {
        let mut r = CsvReport::new(&["operator", "function", "n", "points", "sup_error", "mean_error", "capacity"]);
        for f in &fs {
            for &n in &ns {
                let vals = op.values(f, n, &xs, &disc)?;
                let errs: Vec<f64> = xs.iter().zip(&vals).map(|(x, v)| (v - f.eval(x)).abs()).collect();
                let sup = errs.iter().cloned().fold(0.0, f64::max);
                let mean = errs.iter().sum::<f64>() / errs.len() as f64;
                r.push(vec![
                    op.name().into(),
                    f.label().into(),
                    n.into(),
                    xs.len().into(),
                    sup.into(),
                    mean.into(),
                    op.label().into(),
                ])?;
            }
        }
        Ok((r, true))
    }))
}

const BOUND_HEADER: &[&str] = &[
    "theorem", "n", "x1", "x2", "function", "capacity", "argument", "lhs", "rhs", "margin", "tolerance", "passed",
];

fn bound_row(tag: &str, b: &BoundReport) -> Vec<Cell> {
    let (x1, x2) = match b.x.as_deref() {
        Some([a]) => ((*a).into(), Cell::Empty),
        Some([a, c]) => ((*a).into(), (*c).into()),
        _ => (Cell::Empty, Cell::Empty),
    };
    vec![
        tag.into(),
        b.n.into(),
        x1,
        x2,
        b.function.as_str().into(),
        b.capacity.as_str().into(),
        b.argument.into(),
        b.lhs.into(),
        b.rhs.into(),
        b.margin.into(),
        b.tolerance.into(),
        b.passed.into(),
    ]
}

fn bound_check(cfg: &RawConfig) -> Result<Job> {
    let theorem = cfg.require("theorem")?.to_string();
    let kind = BoundKind::parse(&theorem)
        .ok_or_else(|| Error::Config(format!("`theorem`: unknown theorem `{theorem}`")))?;
    let dim = dimension(cfg)?;
    let fs = functions(cfg, dim)?;
    let ns = degrees(cfg)?;
    let disc = discretization(cfg, dim)?;
    let tag = kind.tag();
    match kind {
        BoundKind::PointwiseModulus | BoundKind::UniformK => {
            let op = operator_spec(cfg, dim)?;
            let family = match &op {
                OpSpec::Family { family, lower, .. } if *lower == 0.0 => family.clone(),
                _ => return Err(Error::Config("`operator`: the check needs a capacity-family operator".into())),
            };
            let xs = points(cfg, dim)?;
            let default_res = if dim == 1 { 4 * disc.cells } else { 4 * disc.simplex_resolution };
            let modulus_res: usize = cfg.parse_or("modulus.resolution", default_res)?;
            let sup_nodes: usize = cfg.parse_or("sup.nodes", if dim == 1 { 4096 } else { disc.simplex_resolution })?;
            let lad = if kind == BoundKind::UniformK { Some(ladder(cfg, dim)?) } else { None };
            Ok(Box::new(move || {
                let mut r = CsvReport::new(BOUND_HEADER);
                let mut ok = true;
                for f in &fs {
                    for &n in &ns {
                        let fam = family.build(n, dim)?;
                        let reports = match &lad {
                            None => pointwise_modulus_sweep(f, n, &xs, &fam, &disc, modulus_res)?,
                            Some(l) => vec![uniform_k_check(f, n, &fam, &disc, l, &xs, sup_nodes)?],
                        };
                        for b in reports {
                            ok &= b.passed;
                            r.push(bound_row(tag, &b))?;
                        }
                    }
                }
                Ok((r, ok))
            }))
        }
        BoundKind::LpDbar | BoundKind::LpDstar => {
            if dim != 1 {
                return Err(Error::Config(format!("`dim`: {tag} is defined on [0, 1] only")));
            }
            let delta = capacity_or(cfg, "operator.delta", Capacity::LebesgueBorel)?;
            let mus = capacities(cfg, "operator.capacity")?;
            let ps = parse_float_list("p", cfg.get("p").unwrap_or("1"))?;
            if let Some(p) = ps.iter().find(|p| !(**p >= 1.0)) {
                return Err(Error::Config(format!("`p`: {p} must be >= 1")));
            }
            let xcells: usize = cfg.parse_or("x.cells", 512)?;
            let sandwich: bool = cfg.parse_or("sandwich", true)?;
            let lad = ladder(cfg, 1)?;
            Ok(Box::new(move || {
                let mut r = CsvReport::new(BOUND_HEADER);
                let mut ok = true;
                for mu in &mus {
                    for &n in &ns {
                        let ctx = LpOperatorContext::new(kind, n, &delta, mu, &disc, xcells)?;
                        for f in &fs {
                            let Target::Line(g) = f else { unreachable!("dimension checked") };
                            for &p in &ps {
                                let (b, rows) = ctx.check(g, p, &lad)?;
                                ok &= b.passed;
                                r.push(bound_row(tag, &b))?;
                                if sandwich {
                                    for s in rows {
                                        ok &= s.holds;
                                        let cap = format!("{};m={}", b.capacity, s.order);
                                        for (name, lhs, rhs) in [("sandwich-lower", s.lower, s.middle), ("sandwich-upper", s.middle, s.upper)] {
                                            r.push(vec![
                                                name.into(),
                                                n.into(),
                                                Cell::Empty,
                                                Cell::Empty,
                                                b.function.as_str().into(),
                                                cap.as_str().into(),
                                                b.argument.into(),
                                                lhs.into(),
                                                rhs.into(),
                                                (rhs - lhs).into(),
                                                0.0.into(),
                                                s.holds.into(),
                                            ])?;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                Ok((r, ok))
            }))
        }
        BoundKind::PossibilityRate => {
            if dim != 1 {
                return Err(Error::Config(format!("`dim`: {tag} is defined on [0, 1] only")));
            }
            if ns.iter().any(|&n| n < 2) {
                return Err(Error::Config("`n`: the possibility rate needs n >= 2".into()));
            }
            let xs: Vec<f64> = points(cfg, 1)?.iter().map(|p| p.coords()[0]).collect();
            let modulus_res: usize = cfg.parse_or("modulus.resolution", 4 * disc.cells)?;
            Ok(Box::new(move || {
                let mut r = CsvReport::new(BOUND_HEADER);
                let mut ok = true;
                for f in &fs {
                    let Target::Line(g) = f else { unreachable!("dimension checked") };
                    for &n in &ns {
                        for b in possibility_rate_sweep(g, n, &xs, &disc, modulus_res)? {
                            ok &= b.passed;
                            r.push(bound_row(tag, &b))?;
                        }
                    }
                }
                Ok((r, ok))
            }))
        }
    }
}

fn compare(cfg: &RawConfig) -> Result<Job> {
    let mode = cfg.get("compare.mode").unwrap_or("improvement").to_string();
    let fs = functions(cfg, 1)?;
    let ns = degrees(cfg)?;
    let disc = discretization(cfg, 1)?;
    let line = |f: &Target| match f {
        Target::Line(g) => g.clone(),
        Target::Simplex(_) => unreachable!("one-dimensional targets"),
    };
    let fs: Vec<_> = fs.iter().map(line).collect();
    match mode.as_str() {
        "improvement" => {
            let mus = capacities(cfg, "capacity")?;
            let count: usize = cfg.parse_or("x.interior", 99)?;
            if count == 0 {
                return Err(Error::Config("`x.interior` must be positive".into()));
            }
            let xs: Vec<f64> = (1..=count).map(|i| i as f64 / (count + 1) as f64).collect();
            if ns.iter().any(|&n| n < 2) {
                return Err(Error::Config("`n`: the comparison needs n >= 2".into()));
            }
            Ok(Box::new(move || {
                let mut r = CsvReport::new(&[
                    "function", "capacity", "n", "c_n", "f_at_one", "bernstein_above", "end_below",
                    "strict_improvement", "genuine_above", "genuine_strict_improvement", "identity_gap",
                    "genuine_identity_gap", "passed",
                ]);
                let mut ok = true;
                for f in &fs {
                    for mu in &mus {
                        for &n in &ns {
                            let c = improvement_check(f, n, mu, &xs, &disc)?;
                            ok &= c.passed();
                            r.push(vec![
                                f.label().into(),
                                mu.label().into(),
                                n.into(),
                                c.c_n.into(),
                                c.f_at_one.into(),
                                c.bernstein_above.into(),
                                c.end_below.into(),
                                c.strict_improvement.into(),
                                c.genuine_above.into(),
                                c.genuine_strict_improvement.into(),
                                c.identity_gap.into(),
                                c.genuine_identity_gap.into(),
                                c.passed().into(),
                            ])?;
                        }
                    }
                }
                Ok((r, ok))
            }))
        }
        "reduction" => {
            let mu = capacity_or(cfg, "capacity", Capacity::sqrt_lebesgue())?;
            let xs: Vec<f64> = points(cfg, 1)?.iter().map(|p| p.coords()[0]).collect();
            Ok(Box::new(move || {
                let mut r = CsvReport::new(&[
                    "operator", "function", "n", "x", "value", "reference", "difference", "tolerance", "passed",
                ]);
                let mut ok = true;
                for f in &fs {
                    for &n in &ns {
                        for row in reduction_suite(f, n, &xs, &mu, disc.cells)? {
                            ok &= row.passed;
                            r.push(vec![
                                row.operator.into(),
                                row.function.into(),
                                row.n.into(),
                                row.x.into(),
                                row.value.into(),
                                row.reference.into(),
                                row.difference.into(),
                                row.tolerance.into(),
                                row.passed.into(),
                            ])?;
                        }
                    }
                }
                Ok((r, ok))
            }))
        }
        other => Err(Error::Config(format!("`compare.mode`: unknown mode `{other}`"))),
    }
}

fn property(cfg: &RawConfig, seed: u64) -> Result<Job> {
    let cs = capacities(cfg, "capacity")?;
    let functions: usize = cfg.parse_or("functions", 500)?;
    let cells: usize = cfg.parse_or("grid.cells", 64)?;
    let trials: usize = cfg.parse_or("structure.trials", 1000)?;
    let domain = match cfg.get("structure.domain").unwrap_or("interval") {
        "interval" => SetDomain::Interval,
        other if other.starts_with("simplex") => {
            {
                let (_, args) = super::config::split_args(other)?;
                let n: usize = match args.as_slice() {
                    [a] => parse_value("structure.domain", a)?,
                    _ => 16,
                };
                SetDomain::Simplex(n)
            }
        }
        other => return Err(Error::Config(format!("`structure.domain`: unknown domain `{other}`"))),
    };
    if functions == 0 || cells == 0 || trials == 0 {
        return Err(Error::Config("`functions`, `grid.cells` and `structure.trials` must be positive".into()));
    }
    Ok(Box::new(move || {
        let mut r = CsvReport::new(&["capacity", "check", "trials", "worst_gap", "expected", "passed", "detail"]);
        let mut ok = true;
        for c in &cs {
            let flags = c.flags();
            let s = check_structure(c, domain, trials, seed)?;
            let detail = s
                .counterexample
                .as_ref()
                .map(|ce| format!("{}: A={} B={} lhs={} rhs={}", ce.property, ce.a, ce.b, ce.lhs, ce.rhs))
                .unwrap_or_default();
            let mono = s.monotone_ok;
            let sub = s.submodular_ok || !flags.submodular;
            ok &= mono && sub;
            r.push(vec![c.label().into(), "structure-monotone".into(), trials.into(), Cell::Empty, true.into(), mono.into(), String::new().into()])?;
            r.push(vec![
                c.label().into(),
                "structure-submodular".into(),
                trials.into(),
                Cell::Empty,
                flags.submodular.into(),
                sub.into(),
                detail.into(),
            ])?;
            if matches!(domain, SetDomain::Interval) && flags.monotone {
                let rep = property_suite(c, seed, functions, cells)?;
                for o in rep.outcomes {
                    ok &= o.passed;
                    r.push(vec![
                        c.label().into(),
                        o.name.into(),
                        o.trials.into(),
                        o.worst_gap.into(),
                        true.into(),
                        o.passed.into(),
                        String::new().into(),
                    ])?;
                }
            }
        }
        Ok((r, ok))
    }))
}
