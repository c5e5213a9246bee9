//! Comparison of the mixed Dirac/Choquet operator with the Bernstein
//! operator (and the genuine analog) for strictly convex increasing `f`.

use crate::bernstein::{classical_bernstein, classical_genuine_coefficients, combine};
use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::function::Func1;
use crate::operators::{CapacityFamily, ChoquetRoute, Discretization, OperatorPlan, Target};

/// Threshold for the finite-difference convexity and monotonicity probes.
pub const PROBE_THRESHOLD: f64 = 1e-10;
const PROBE_NODES: usize = 1000;
/// Below this relative size the smaller of two opposite-signed errors is
/// invisible in floating point, and the strict inequality degenerates to equality.
const FLOAT_RESOLUTION: f64 = 1e-12;

/// Rejects `f` unless its first and second differences on a uniform grid
/// exceed [`PROBE_THRESHOLD`].
pub fn probe_strictly_convex_increasing(f: &Func1) -> Result<()> {
    let h = 1.0 / PROBE_NODES as f64;
    let v: Vec<f64> = (0..=PROBE_NODES).map(|i| f.eval(i as f64 * h)).collect();
    if let Some(i) = v.iter().position(|&y| y < 0.0) {
        return Err(Error::ProbeFailed(format!("{} is negative at t = {}", f.label(), i as f64 * h)));
    }
    for i in 0..PROBE_NODES {
        if v[i + 1] - v[i] <= PROBE_THRESHOLD {
            return Err(Error::ProbeFailed(format!(
                "{} is not strictly increasing near t = {}",
                f.label(),
                i as f64 * h
            )));
        }
    }
    for i in 1..PROBE_NODES {
        if v[i + 1] - 2.0 * v[i] + v[i - 1] <= PROBE_THRESHOLD {
            return Err(Error::ProbeFailed(format!(
                "{} is not strictly convex near t = {}",
                f.label(),
                i as f64 * h
            )));
        }
    }
    Ok(())
}

/// `|a + b| < max(|a|, |b|)` for `a > 0 > b`, up to float resolution.
fn strictly_improves(err: f64, a: f64, b: f64) -> bool {
    let (big, small) = if a.abs() >= b.abs() { (a.abs(), b.abs()) } else { (b.abs(), a.abs()) };
    err < big || (small <= FLOAT_RESOLUTION * big && err <= big * (1.0 + FLOAT_RESOLUTION))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImprovementReport {
    pub n: u32,
    pub capacity: String,
    /// `(C)∫ f tⁿ dμ / (C)∫ tⁿ dμ`.
    pub c_n: f64,
    pub f_at_one: f64,
    pub points: usize,
    /// `B_n(f) > f` at every interior point.
    pub bernstein_above: bool,
    pub end_below: bool,
    pub strict_improvement: bool,
    /// `max |D − B_n − xⁿ(c_n − f(1))|`.
    pub identity_gap: f64,
    pub genuine_above: bool,
    pub genuine_strict_improvement: bool,
    pub genuine_identity_gap: f64,
    /// First failing point per clause, if any.
    pub failures: Vec<String>,
}

impl ImprovementReport {
    pub fn passed(&self) -> bool {
        self.bernstein_above
            && self.end_below
            && self.strict_improvement
            && self.genuine_above
            && self.genuine_strict_improvement
            && self.failures.is_empty()
    }
}

/// Checks `B_n(f) > f`, `c_n < f(1)` and
/// `|D(f) − f| < max{|B_n(f) − f|, xⁿ|c_n − f(1)|}` at the interior points
/// `xs`, where `D` uses point masses at `k/n` for `k < n` and `μ` at `k = n`;
/// then the same for the genuine operator against its classical version.
pub fn improvement_check(f: &Func1, n: u32, mu: &Capacity, xs: &[f64], disc: &Discretization) -> Result<ImprovementReport> {
    probe_strictly_convex_increasing(f)?;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n} must be >= 2")));
    }
    if let Some(x) = xs.iter().find(|x| !(**x > 0.0 && **x < 1.0)) {
        return Err(Error::InvalidParameter(format!("x = {x} is not interior")));
    }
    let cont = disc.with_route(ChoquetRoute::Continuous);
    let target = Target::Line(f.clone());
    let d = OperatorPlan::new(n, 1, &CapacityFamily::MixedDiracTail(mu.clone()), &cont)?.apply(&target)?;
    let genuine = CapacityFamily::Genuine {
        start: Capacity::dirac(0.0),
        end: mu.clone(),
        middle: vec![Capacity::LebesgueBorel],
    };
    let u = OperatorPlan::new(n, 1, &genuine, &cont)?.apply(&target)?;
    let c_n = d.coefficients()[n as usize];
    let f1 = f.eval(1.0);
    let end = c_n - f1;

    let mut report = ImprovementReport {
        n,
        capacity: mu.label(),
        c_n,
        f_at_one: f1,
        points: xs.len(),
        bernstein_above: true,
        end_below: end < 0.0,
        strict_improvement: true,
        identity_gap: 0.0,
        genuine_above: true,
        genuine_strict_improvement: true,
        genuine_identity_gap: 0.0,
        failures: Vec::new(),
    };
    if !report.end_below {
        report.failures.push(format!("c_n - f(1) = {end} is not negative"));
    }
    let genuine_coefficients = classical_genuine_coefficients(f, n, disc.cells)?;
    let mut failures = Vec::new();
    for &x in xs {
        let fx = f.eval(x);
        let xn = x.powi(n as i32);
        let tail = xn * end;

        let b = classical_bernstein(f, n, x)?;
        let dv = d.evaluate_at(x)?;
        report.identity_gap = report.identity_gap.max((dv - b - tail).abs());
        if !(b - fx > 0.0) && report.bernstein_above {
            report.bernstein_above = false;
            failures.push(format!("B_n(f) - f = {} at x = {x}", b - fx));
        }
        if !strictly_improves((dv - fx).abs(), b - fx, tail) && report.strict_improvement {
            report.strict_improvement = false;
            failures.push(format!("|D(f) - f| = {} not below max at x = {x}", (dv - fx).abs()));
        }

        let g = combine(&genuine_coefficients, n, x);
        let uv = u.evaluate_at(x)?;
        report.genuine_identity_gap = report.genuine_identity_gap.max((uv - g - tail).abs());
        if !(g - fx > 0.0) && report.genuine_above {
            report.genuine_above = false;
            failures.push(format!("G_n(f) - f = {} at x = {x}", g - fx));
        }
        if !strictly_improves((uv - fx).abs(), g - fx, tail) && report.genuine_strict_improvement {
            report.genuine_strict_improvement = false;
            failures.push(format!("|U(f) - f| = {} not below max at x = {x}", (uv - fx).abs()));
        }
    }
    report.failures.extend(failures);
    Ok(report)
}

/// `{0.01, 0.02, …, 0.99}`.
pub fn interior_grid() -> Vec<f64> {
    (1..100).map(|i| i as f64 / 100.0).collect()
}
