//! Machine checks of the approximation error estimates.

use std::f64::consts::SQRT_2;

use rayon::prelude::*;

use super::kfunctional::{candidate_norms, k_upper, kbar_of_norms, sandwich_rows, SandwichRow, SmoothingLadder};
use super::modulus::ModulusTable;
use crate::bernstein::SimplexPoint;
use crate::capacity::Capacity;
use crate::choquet::{lp_choquet_functional, IntegralMethod};
use crate::error::{Error, Result};
use crate::function::{Func1, Func2, SampledFunction1D};
use crate::operators::{CapacityFamily, Discretization, EndTerms, OperatorPlan, Target};

/// Relative slack for discretized inequality checks.
pub const RELATIVE_TOLERANCE: f64 = 1e-6;
/// A vanishing modulus argument passes only when the error is below this.
pub const DEGENERATE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundKind {
    /// `|M(f)(x) − f(x)| ≤ 2ω₁(f; M(φ_x)(x))`.
    PointwiseModulus,
    /// `‖M(f) − f‖_C ≤ 2K(f; Δ_n/2)`.
    UniformK,
    /// `‖f − D̄(f)‖_{L^p_μ} ≤ 2K̄(f; ‖D̄(φ_x)‖/2)`.
    LpDbar,
    /// `‖f − D*(f)‖_{L^p_μ} ≤ 3K̄(f; ‖D*(φ_x)‖/3)`.
    LpDstar,
    /// Possibility operator rate with the explicit modulus argument.
    PossibilityRate,
}

impl BoundKind {
    pub const ALL: [BoundKind; 5] = [
        BoundKind::PointwiseModulus,
        BoundKind::UniformK,
        BoundKind::LpDbar,
        BoundKind::LpDstar,
        BoundKind::PossibilityRate,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            BoundKind::PointwiseModulus => "pointwise-modulus",
            BoundKind::UniformK => "uniform-k",
            BoundKind::LpDbar => "lp-dbar",
            BoundKind::LpDstar => "lp-dstar",
            BoundKind::PossibilityRate => "possibility-rate",
        }
    }

    /// Catalog identifiers accepted as synonyms of the tag.
    pub fn aliases(&self) -> &'static [&'static str] {
        match self {
            BoundKind::PointwiseModulus => &["thm-3.1i"],
            BoundKind::UniformK => &["thm-3.1ii"],
            BoundKind::LpDbar => &["thm-3.3", "thm-3.4"],
            BoundKind::LpDstar => &["rem-3.6"],
            BoundKind::PossibilityRate => &["thm-4.1"],
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        BoundKind::ALL
            .into_iter()
            .find(|k| {
                k.tag() == s
                    || k.aliases().iter().any(|a| *a == s || a.split_once('-').is_some_and(|(_, bare)| bare == s))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub n: u32,
    /// `None` for uniform and integral checks.
    pub x: Option<Vec<f64>>,
    pub function: String,
    pub capacity: String,
    /// Argument of the modulus or K-functional.
    pub argument: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl BoundReport {
    #[allow(clippy::too_many_arguments)]
    fn new(
        kind: BoundKind,
        n: u32,
        x: Option<Vec<f64>>,
        function: &str,
        capacity: String,
        argument: f64,
        lhs: f64,
        rhs: f64,
    ) -> Self {
        let margin = rhs - lhs;
        let (tolerance, passed) = if argument <= 0.0 {
            (DEGENERATE_TOLERANCE, lhs <= DEGENERATE_TOLERANCE)
        } else {
            let tol = RELATIVE_TOLERANCE * (1.0 + rhs.abs());
            (tol, margin >= -tol)
        };
        BoundReport {
            kind,
            n,
            x,
            function: function.to_string(),
            capacity,
            argument,
            lhs,
            rhs,
            margin,
            tolerance,
            passed,
        }
    }
}

/// `points` equispaced points of `[0, 1]`.
pub fn line_grid(points: usize) -> Result<Vec<SimplexPoint>> {
    if points < 2 {
        return Err(Error::InvalidParameter("a grid needs at least two points".into()));
    }
    (0..points)
        .map(|i| SimplexPoint::new(vec![i as f64 / (points - 1) as f64]))
        .collect()
}

/// Lattice `(i/l, j/l)`, `i + j ≤ l`.
pub fn simplex_lattice(l: usize) -> Result<Vec<SimplexPoint>> {
    if l == 0 {
        return Err(Error::InvalidParameter("lattice resolution must be positive".into()));
    }
    let mut out = Vec::new();
    for i in 0..=l {
        for j in 0..=(l - i) {
            out.push(SimplexPoint::new(vec![i as f64 / l as f64, j as f64 / l as f64])?);
        }
    }
    Ok(out)
}

fn distance_target(x: &SimplexPoint) -> Target {
    match x.coords() {
        [a] => Target::Line(Func1::distance_from(*a)),
        [a, b] => Target::Simplex(Func2::distance_from([*a, *b])),
        _ => unreachable!("points are one- or two-dimensional"),
    }
}

fn family_label(family: &CapacityFamily) -> String {
    match family {
        CapacityFamily::Constant(c) => format!("constant({c})"),
        CapacityFamily::PerIndex(_) => "per-index".into(),
        CapacityFamily::Possibility => "possibility".into(),
        CapacityFamily::MixedDiracTail(c) => format!("mixed-dirac({c})"),
        CapacityFamily::TwoMeasure { additive, choquet, .. } => format!("two-measure({additive};{choquet})"),
        CapacityFamily::Genuine { end, .. } => format!("genuine({end})"),
        CapacityFamily::PerPoint(_) => "per-point".into(),
    }
}

/// `|M(f)(x) − f(x)| ≤ 2ω₁(f; M(φ_x)(x))` at every point of `xs`.
/// The modulus is taken on a grid of `modulus_resolution`.
pub fn pointwise_modulus_sweep(
    f: &Target,
    n: u32,
    xs: &[SimplexPoint],
    family: &CapacityFamily,
    disc: &Discretization,
    modulus_resolution: usize,
) -> Result<Vec<BoundReport>> {
    let table = ModulusTable::for_target(f, modulus_resolution)?;
    let d = f.dim();
    let shared = if family.is_point_dependent() {
        None
    } else {
        let plan = OperatorPlan::new(n, d, family, disc)?;
        let mf = plan.apply(f)?;
        Some((plan, mf))
    };
    let label = family_label(family);
    xs.par_iter()
        .map(|x| {
            if x.dim() != d {
                return Err(Error::DimensionMismatch("grid point and function differ in dimension".into()));
            }
            let (mf, mphi) = match &shared {
                Some((plan, mf)) => (mf.evaluate(x)?.value, plan.apply(&distance_target(x))?.evaluate(x)?.value),
                None => {
                    let plan = OperatorPlan::new(n, d, &family.at(x)?, disc)?;
                    (
                        plan.apply(f)?.evaluate(x)?.value,
                        plan.apply(&distance_target(x))?.evaluate(x)?.value,
                    )
                }
            };
            let lhs = (mf - f.eval(x)).abs();
            let rhs = 2.0 * table.omega(mphi.max(0.0))?;
            Ok(BoundReport::new(
                BoundKind::PointwiseModulus,
                n,
                Some(x.coords().to_vec()),
                f.label(),
                label.clone(),
                mphi,
                lhs,
                rhs,
            ))
        })
        .collect()
}

pub fn pointwise_modulus_check(
    f: &Target,
    n: u32,
    x: &SimplexPoint,
    family: &CapacityFamily,
    disc: &Discretization,
    modulus_resolution: usize,
) -> Result<BoundReport> {
    Ok(pointwise_modulus_sweep(f, n, std::slice::from_ref(x), family, disc, modulus_resolution)?.remove(0))
}

fn reject_point_dependent(family: &CapacityFamily) -> Result<()> {
    if family.is_point_dependent() {
        return Err(Error::InvalidParameter(
            "uniform estimates need a family that does not depend on x".into(),
        ));
    }
    Ok(())
}

/// `Δ_n = Σ_i sup_x M(|t_i − x_i|)(x)` over the grid `xs`.
pub fn first_moment_aggregate(
    n: u32,
    family: &CapacityFamily,
    d: usize,
    disc: &Discretization,
    xs: &[SimplexPoint],
) -> Result<f64> {
    reject_point_dependent(family)?;
    let plan = OperatorPlan::new(n, d, family, disc)?;
    let mut total = 0.0;
    for i in 0..d {
        let sup = xs
            .par_iter()
            .map(|x| {
                let xi = x.coords()[i];
                let g = match d {
                    1 => Target::Line(Func1::new("|t-x|", move |t: f64| (t - xi).abs())),
                    _ => Target::Simplex(Func2::new("|t_i-x_i|", move |t: [f64; 2]| (t[i] - xi).abs())),
                };
                Ok(plan.apply(&g)?.evaluate(x)?.value)
            })
            .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))?;
        total += sup;
    }
    Ok(total)
}

/// `sup_x |M(f)(x) − f(x)| ≤ 2·k_upper(f; Δ_n/2)`; valid a fortiori because
/// the ladder bound dominates the K-functional.
pub fn uniform_k_check(
    f: &Target,
    n: u32,
    family: &CapacityFamily,
    disc: &Discretization,
    ladder: &SmoothingLadder,
    xs: &[SimplexPoint],
    sup_nodes: usize,
) -> Result<BoundReport> {
    reject_point_dependent(family)?;
    let d = f.dim();
    let mf = OperatorPlan::new(n, d, family, disc)?.apply(f)?;
    let lhs = xs
        .par_iter()
        .map(|x| Ok((mf.evaluate(x)?.value - f.eval(x)).abs()))
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))?;
    let delta_n = first_moment_aggregate(n, family, d, disc, xs)?;
    let rhs = 2.0 * k_upper(f, delta_n / 2.0, ladder, sup_nodes)?;
    // a zero Δ_n still has a meaningful K bound, so never treat it as degenerate
    let mut r = BoundReport::new(BoundKind::UniformK, n, None, f.label(), family_label(family), 1.0, lhs, rhs);
    r.argument = delta_n;
    Ok(r)
}

/// Shared state for L^p checks of the two-measure operators: the operator
/// plan and `h(x) = D(φ_x)(x)` on the x-cell midpoints.
#[derive(Debug, Clone)]
pub struct LpOperatorContext {
    kind: BoundKind,
    n: u32,
    mu: Capacity,
    delta: Capacity,
    disc: Discretization,
    plan: OperatorPlan,
    h: SampledFunction1D,
}

impl LpOperatorContext {
    /// `kind` is [`BoundKind::LpDbar`] or [`BoundKind::LpDstar`].
    pub fn new(
        kind: BoundKind,
        n: u32,
        delta: &Capacity,
        mu: &Capacity,
        disc: &Discretization,
        x_cells: usize,
    ) -> Result<Self> {
        let ends = match kind {
            BoundKind::LpDbar => EndTerms::Upper,
            BoundKind::LpDstar => EndTerms::Both,
            other => return Err(Error::InvalidParameter(format!("{} is not an L^p check", other.tag()))),
        };
        if x_cells == 0 {
            return Err(Error::InvalidParameter("x grid needs cells".into()));
        }
        let family = CapacityFamily::two_measure(delta.clone(), mu.clone(), ends)?;
        let plan = OperatorPlan::new(n, 1, &family, disc)?;
        let h: Result<Vec<f64>> = (0..x_cells)
            .into_par_iter()
            .map(|j| {
                let x = (j as f64 + 0.5) / x_cells as f64;
                plan.apply(&Target::Line(Func1::distance_from(x)))?.evaluate_at(x)
            })
            .collect();
        Ok(LpOperatorContext {
            kind,
            n,
            mu: mu.clone(),
            delta: delta.clone(),
            disc: *disc,
            plan,
            h: SampledFunction1D::from_cell_values(h?)?,
        })
    }

    fn constant(&self) -> f64 {
        if self.kind == BoundKind::LpDstar {
            3.0
        } else {
            2.0
        }
    }

    /// `‖h‖_{L^p_μ} / c` with `c = 2` or `3`.
    pub fn argument(&self, p: f64) -> Result<f64> {
        Ok(lp_choquet_functional(&self.h, &self.mu, p, IntegralMethod::SortedLevels)? / self.constant())
    }

    /// The bound for `f` and the sandwich rows at the same argument.
    pub fn check(&self, f: &Func1, p: f64, ladder: &SmoothingLadder) -> Result<(BoundReport, Vec<SandwichRow>)> {
        if !(p >= 1.0) {
            return Err(Error::InvalidParameter(format!("p = {p} must be >= 1")));
        }
        let df = self.plan.apply(&Target::Line(f.clone()))?;
        let cells = self.h.cell_count();
        let diff: Result<Vec<f64>> = (0..cells)
            .map(|j| {
                let x = (j as f64 + 0.5) / cells as f64;
                Ok((f.eval(x) - df.evaluate_at(x)?).abs())
            })
            .collect();
        let diff = SampledFunction1D::from_cell_values(diff?)?;
        let lhs = lp_choquet_functional(&diff, &self.mu, p, IntegralMethod::SortedLevels)?;
        let t = self.argument(p)?;
        let norms = candidate_norms(f, &self.mu, &self.delta, p, ladder, self.disc.cells)?;
        let rhs = self.constant() * kbar_of_norms(&norms, t);
        let mut report = BoundReport::new(
            self.kind,
            self.n,
            None,
            f.label(),
            format!("delta={};mu={};p={p}", self.delta, self.mu),
            1.0,
            lhs,
            rhs,
        );
        report.argument = t;
        Ok((report, sandwich_rows(&norms, t)))
    }
}

/// `‖f − D̄(f)‖_{L^p_μ} ≤ 2K̄(f; ‖D̄(φ_x)‖_{L^p_μ}/2)`.
#[allow(clippy::too_many_arguments)]
pub fn lp_dbar_check(
    f: &Func1,
    n: u32,
    delta: &Capacity,
    mu: &Capacity,
    p: f64,
    disc: &Discretization,
    ladder: &SmoothingLadder,
    x_cells: usize,
) -> Result<BoundReport> {
    Ok(LpOperatorContext::new(BoundKind::LpDbar, n, delta, mu, disc, x_cells)?
        .check(f, p, ladder)?
        .0)
}

/// Modulus argument `((1+√2)√(x(1−x)) + √2√x)/√n + 1/n`.
pub fn possibility_rate_argument(n: u32, x: f64) -> f64 {
    let nf = n as f64;
    ((1.0 + SQRT_2) * (x * (1.0 - x)).sqrt() + SQRT_2 * x.sqrt()) / nf.sqrt() + 1.0 / nf
}

/// `|D_n(f)(x) − f(x)| ≤ 2ω₁(f; ((1+√2)√(x(1−x)) + √2√x)/√n + 1/n)` for the
/// possibility operator, at every `x` in `xs`.
pub fn possibility_rate_sweep(
    f: &Func1,
    n: u32,
    xs: &[f64],
    disc: &Discretization,
    modulus_resolution: usize,
) -> Result<Vec<BoundReport>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n} must be >= 2")));
    }
    let table = ModulusTable::line(f, modulus_resolution)?;
    let target = Target::Line(f.clone());
    let d = OperatorPlan::new(n, 1, &CapacityFamily::Possibility, disc)?.apply(&target)?;
    xs.par_iter()
        .map(|&x| {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::InvalidParameter(format!("x = {x} outside [0, 1]")));
            }
            let arg = possibility_rate_argument(n, x);
            let lhs = (d.evaluate_at(x)? - f.eval(x)).abs();
            let rhs = 2.0 * table.omega(arg)?;
            Ok(BoundReport::new(
                BoundKind::PossibilityRate,
                n,
                Some(vec![x]),
                f.label(),
                "possibility".into(),
                arg,
                lhs,
                rhs,
            ))
        })
        .collect()
}

pub fn possibility_rate_check(
    f: &Func1,
    n: u32,
    x: f64,
    disc: &Discretization,
    modulus_resolution: usize,
) -> Result<BoundReport> {
    Ok(possibility_rate_sweep(f, n, &[x], disc, modulus_resolution)?.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc() -> Discretization {
        Discretization::default().with_cells(1024)
    }

    #[test]
    fn kinds_parse_from_tags_and_aliases() {
        for k in BoundKind::ALL {
            assert_eq!(BoundKind::parse(k.tag()), Some(k));
            for a in k.aliases() {
                assert_eq!(BoundKind::parse(a), Some(k));
            }
        }
        assert_eq!(BoundKind::parse("nope"), None);
    }

    #[test]
    fn pointwise_examples() {
        let x = SimplexPoint::new(vec![0.5]).unwrap();
        let one = Target::Line(Func1::e0());
        let r = pointwise_modulus_check(&one, 8, &x, &CapacityFamily::Possibility, &disc(), 4096).unwrap();
        assert!(r.lhs < 1e-12 && r.passed);
        let sq = Target::Line(Func1::monomial(2));
        let r = pointwise_modulus_check(&sq, 8, &x, &CapacityFamily::Possibility, &disc(), 4096).unwrap();
        assert!(r.passed && r.margin > 0.0, "{r:?}");
        let f = Target::Simplex(Func2::new("x1+x2", |p: [f64; 2]| p[0] + p[1]));
        let fam = CapacityFamily::Constant(Capacity::sqrt_lebesgue());
        let d = disc().with_simplex_resolution(16);
        let x = SimplexPoint::new(vec![0.2, 0.3]).unwrap();
        let r = pointwise_modulus_check(&f, 4, &x, &fam, &d, 64).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn degenerate_argument_requires_exactness() {
        // all-Dirac family at a node: M(φ_x)(x) = 0 at x = 0
        let fam = CapacityFamily::all_dirac(4, 1).unwrap();
        let x = SimplexPoint::new(vec![0.0]).unwrap();
        let r = pointwise_modulus_check(&Target::Line(Func1::monomial(2)), 4, &x, &fam, &disc(), 1024).unwrap();
        assert_eq!(r.argument, 0.0);
        assert!(r.passed && r.tolerance == DEGENERATE_TOLERANCE);
    }

    #[test]
    fn first_moment_of_bernstein_matches_brute_force() {
        let n = 16;
        let fam = CapacityFamily::all_dirac(n, 1).unwrap();
        let xs = line_grid(101).unwrap();
        let got = first_moment_aggregate(n, &fam, 1, &disc(), &xs).unwrap();
        let want = (0..=100)
            .map(|i| {
                let x = i as f64 / 100.0;
                (0..=n)
                    .map(|k| crate::bernstein::bernstein_basis_1d(n, k, x).unwrap() * (k as f64 / n as f64 - x).abs())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max);
        assert!((got - want).abs() < 1e-14);
        assert!(got <= 1.0 / (2.0 * (n as f64).sqrt()) * 1.05);
    }

    #[test]
    fn uniform_check_passes() {
        let xs = line_grid(101).unwrap();
        let r = uniform_k_check(
            &Target::Line(Func1::monomial(2)),
            16,
            &CapacityFamily::Possibility,
            &disc(),
            &SmoothingLadder::default(),
            &xs,
            1024,
        )
        .unwrap();
        assert!(r.passed && r.margin > 0.0, "{r:?}");
        let per_point = CapacityFamily::PerPoint(crate::operators::PointFamily::new(|_| Ok(CapacityFamily::Possibility)));
        assert!(first_moment_aggregate(4, &per_point, 1, &disc(), &xs).is_err());
    }

    #[test]
    fn lp_checks_pass() {
        let ladder = SmoothingLadder::default();
        let (leb, sin) = (Capacity::LebesgueBorel, Capacity::sin_lebesgue());
        let r = lp_dbar_check(&Func1::e0(), 8, &leb, &sin, 1.0, &disc(), &ladder, 128).unwrap();
        assert!(r.lhs < 1e-12 && r.passed);
        let ctx = LpOperatorContext::new(BoundKind::LpDbar, 16, &leb, &sin, &disc(), 128).unwrap();
        for p in [1.0, 2.0] {
            let (r, rows) = ctx.check(&Func1::monomial(2), p, &ladder).unwrap();
            assert!(r.passed, "{r:?}");
            assert!(rows.iter().all(|s| s.holds));
        }
        let ctx = LpOperatorContext::new(BoundKind::LpDstar, 8, &leb, &sin, &disc(), 128).unwrap();
        assert!(ctx.check(&Func1::monomial(2), 1.0, &ladder).unwrap().0.passed);
        assert!(ctx.check(&Func1::monomial(2), 0.5, &ladder).is_err());
        assert!(LpOperatorContext::new(BoundKind::LpDbar, 4, &leb, &Capacity::sqrt_lebesgue(), &disc(), 16).is_err());
    }

    #[test]
    fn possibility_rate_examples() {
        let sq = Func1::monomial(2);
        let r = possibility_rate_check(&sq, 4, 0.0, &disc(), 4096).unwrap();
        assert!((r.argument - 0.25).abs() < 1e-15);
        assert!((r.rhs - 0.875).abs() < 1e-12);
        assert!(r.passed);
        let one = possibility_rate_check(&Func1::e0(), 4, 0.3, &disc(), 1024).unwrap();
        assert!(one.lhs < 1e-12 && one.passed);
        assert!(possibility_rate_check(&sq, 1, 0.3, &disc(), 64).is_err());
    }
}
