//! Choquet integrals of grid-sampled and continuous integrands.
//!
//! For a capacity `μ`, a set `A` and `F_β = {f ≥ β}` (closed),
//!
//! ```text
//! (C)∫_A f dμ = ∫_0^∞ μ(F_β ∩ A) dβ + ∫_{-∞}^0 [μ(F_β ∩ A) − μ(A)] dβ.
//! ```
//!
//! Two independent algorithms are provided. `SortedLevels` walks the distinct
//! cell values in decreasing order and accumulates per-cell statistics; it is
//! exact for piecewise-constant integrands. `BetaQuadrature` builds each level
//! set explicitly, calls [`Capacity::measure`] and integrates over `β`.

use crate::capacity::{Capacity, Measurable, PieceStats};
use crate::error::{Error, Result};
use crate::function::{ContinuousFunction1D, SampledFunction1D, SampledFunctionSimplex};
use crate::sets::{IntervalSet, SimplexCellSet, SimplexGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IntegralMethod {
    #[default]
    SortedLevels,
    /// Graded composite midpoint rule over `β`, doubled until successive
    /// values differ by less than [`BETA_TOLERANCE`]. `steps` is the initial
    /// count on continuous stretches and must be a power of two `≥ 16`.
    BetaQuadrature { steps: usize },
}

impl IntegralMethod {
    pub const fn beta(steps: usize) -> Self {
        IntegralMethod::BetaQuadrature { steps }
    }
}


pub const BETA_TOLERANCE: f64 = 1e-8;
pub const BETA_STEP_CAP: usize = 1 << 20;

/// A function whose superlevel sets lie in a [`Measurable`] set class.
pub trait Integrand {
    type Set: Measurable;

    fn domain(&self) -> Self::Set;

    /// Minimum and maximum over the closure of `a`; `None` when `a` is empty.
    fn range_on(&self, a: &Self::Set) -> Option<(f64, f64)>;

    /// `{f ≥ β} ∩ a`.
    fn superlevel_on(&self, beta: f64, a: &Self::Set) -> Result<Self::Set>;

    /// Values of `β` where `μ({f ≥ β} ∩ a)` may jump or kink.
    fn critical_values_on(&self, a: &Self::Set) -> Vec<f64>;

    /// True when `β ↦ {f ≥ β} ∩ a` is constant between critical values.
    fn is_step(&self) -> bool;

    /// `(value, statistics of piece ∩ a)` for every constant piece meeting `a`.
    fn pieces_on(&self, a: &Self::Set, c: &Capacity) -> Result<Vec<(f64, PieceStats)>>;

    /// `|f|^p`.
    fn abs_pow(&self, p: f64) -> Result<Self>
    where
        Self: Sized;
}

impl Integrand for SampledFunction1D {
    type Set = IntervalSet;

    fn domain(&self) -> IntervalSet {
        IntervalSet::full()
    }

    fn range_on(&self, a: &IntervalSet) -> Option<(f64, f64)> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for_cells_meeting(self, a, |j, _, _| {
            let v = self.values()[j];
            lo = lo.min(v);
            hi = hi.max(v);
        });
        (lo <= hi).then_some((lo, hi))
    }

    fn superlevel_on(&self, beta: f64, a: &IntervalSet) -> Result<IntervalSet> {
        let m = self.cell_count();
        let mut runs = Vec::new();
        let mut start: Option<usize> = None;
        for (j, v) in self.values().iter().enumerate() {
            match (*v >= beta, start) {
                (true, None) => start = Some(j),
                (false, Some(s)) => {
                    runs.push((s as f64 / m as f64, j as f64 / m as f64));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            runs.push((s as f64 / m as f64, 1.0));
        }
        // runs are separated by at least one whole cell
        Ok(IntervalSet::from_sorted_unchecked(runs).intersection(a))
    }

    fn critical_values_on(&self, a: &IntervalSet) -> Vec<f64> {
        let mut out = Vec::new();
        for_cells_meeting(self, a, |j, _, _| out.push(self.values()[j]));
        out
    }

    fn is_step(&self) -> bool {
        true
    }

    fn pieces_on(&self, a: &IntervalSet, c: &Capacity) -> Result<Vec<(f64, PieceStats)>> {
        let mut out = Vec::with_capacity(self.cell_count());
        for_cells_meeting(self, a, |j, lo, hi| {
            out.push((self.values()[j], cell_stats_1d(c, lo, hi, a)));
        });
        Ok(out)
    }

    fn abs_pow(&self, p: f64) -> Result<Self> {
        self.map(|v| v.abs().powf(p))
    }
}

/// Calls `visit(j, lo, hi)` once for every closed cell `[lo, hi]` meeting `a`,
/// in increasing order of `j`.
fn for_cells_meeting(f: &SampledFunction1D, a: &IntervalSet, mut visit: impl FnMut(usize, f64, f64)) {
    let m = f.cell_count();
    let mf = m as f64;
    let mut next = 0usize;
    for &(l, r) in a.intervals() {
        let first = ((l * mf).floor() as usize).saturating_sub(1).max(next);
        let last = ((r * mf).ceil() as usize + 1).min(m);
        for j in first..last {
            let (lo, hi) = f.cell_bounds(j);
            if hi >= l && lo <= r {
                visit(j, lo, hi);
                next = j + 1;
            }
        }
    }
}

/// Statistics of `[lo, hi] ∩ a`.
fn cell_stats_1d(c: &Capacity, lo: f64, hi: f64, a: &IntervalSet) -> PieceStats {
    let ivs = a.intervals();
    if ivs.len() == 1 && ivs[0].0 <= lo && hi <= ivs[0].1 {
        return c.interval_stats(lo, hi);
    }
    let start = ivs.partition_point(|&(_, b)| b < lo);
    let mut acc = PieceStats::EMPTY;
    for &(l, r) in &ivs[start..] {
        if l > hi {
            break;
        }
        acc = acc.combine(c.interval_stats(l.max(lo), r.min(hi)));
    }
    acc
}

impl Integrand for SampledFunctionSimplex {
    type Set = SimplexCellSet;

    fn domain(&self) -> SimplexCellSet {
        SimplexCellSet::full(self.grid())
    }

    fn range_on(&self, a: &SimplexCellSet) -> Option<(f64, f64)> {
        let v = self.values();
        let mut ids = a.ids().peekable();
        ids.peek()?;
        Some(ids.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), id| {
            (lo.min(v[id]), hi.max(v[id]))
        }))
    }

    fn superlevel_on(&self, beta: f64, a: &SimplexCellSet) -> Result<SimplexCellSet> {
        check_grid(self.grid(), a)?;
        let v = self.values();
        SimplexCellSet::from_ids(self.grid(), a.ids().filter(|id| v[*id] >= beta))
    }

    fn critical_values_on(&self, a: &SimplexCellSet) -> Vec<f64> {
        a.ids().map(|id| self.values()[id]).collect()
    }

    fn is_step(&self) -> bool {
        true
    }

    fn pieces_on(&self, a: &SimplexCellSet, c: &Capacity) -> Result<Vec<(f64, PieceStats)>> {
        check_grid(self.grid(), a)?;
        let grid = self.grid();
        let area = grid.cell_area();
        let (inner, _) = c.unscaled();
        let located = match inner {
            Capacity::Dirac(p) if p.len() == 2 => grid.locate([p[0], p[1]]),
            Capacity::Dirac(p) => {
                return Err(Error::DimensionMismatch(format!(
                    "Dirac point {p:?} on the simplex"
                )))
            }
            _ => Vec::new(),
        };
        let table = match inner {
            Capacity::Possibility(d) => {
                // errors unless the distribution is tabulated per cell
                SimplexCellSet::full(grid).distribution_sup(d)?;
                match d {
                    crate::capacity::UnimodalDistribution::Tabulated(t) => Some(t),
                    _ => None,
                }
            }
            _ => None,
        };
        Ok(a.ids()
            .map(|id| {
                (
                    self.values()[id],
                    PieceStats {
                        length: area,
                        sup: table.map_or(0.0, |t| t[id]),
                        hit: located.contains(&id),
                    },
                )
            })
            .collect())
    }

    fn abs_pow(&self, p: f64) -> Result<Self> {
        self.map(|v| v.abs().powf(p))
    }
}

fn check_grid(g: SimplexGrid, a: &SimplexCellSet) -> Result<()> {
    if a.grid() != g {
        return Err(Error::DimensionMismatch(format!(
            "function on resolution {}, set on resolution {}",
            g.resolution(),
            a.grid().resolution()
        )));
    }
    Ok(())
}

impl Integrand for ContinuousFunction1D {
    type Set = IntervalSet;

    fn domain(&self) -> IntervalSet {
        IntervalSet::full()
    }

    fn range_on(&self, a: &IntervalSet) -> Option<(f64, f64)> {
        ContinuousFunction1D::range_on(self, a)
    }

    fn superlevel_on(&self, beta: f64, a: &IntervalSet) -> Result<IntervalSet> {
        Ok(self.superlevel(beta).intersection(a))
    }

    fn critical_values_on(&self, a: &IntervalSet) -> Vec<f64> {
        ContinuousFunction1D::critical_values_on(self, a)
    }

    fn is_step(&self) -> bool {
        false
    }

    fn pieces_on(&self, _a: &IntervalSet, _c: &Capacity) -> Result<Vec<(f64, PieceStats)>> {
        Err(Error::Unsupported(
            "sorted levels need a piecewise-constant integrand".into(),
        ))
    }

    fn abs_pow(&self, p: f64) -> Result<Self> {
        let g = self.func().clone();
        ContinuousFunction1D::new(crate::function::Func1::new(
            format!("|{}|^{p}", g.label()),
            move |t| g.eval(t).abs().powf(p),
        ))
    }
}

/// `(C)∫_A f dμ`.
pub fn choquet_integral<I: Integrand>(
    f: &I,
    a: &I::Set,
    c: &Capacity,
    method: IntegralMethod,
) -> Result<f64> {
    c.validate()?;
    if a.is_empty() {
        return Ok(0.0);
    }
    match method {
        IntegralMethod::SortedLevels => sorted_levels(f, a, c),
        IntegralMethod::BetaQuadrature { steps } => {
            if steps < 16 || !steps.is_power_of_two() {
                return Err(Error::InvalidParameter(format!(
                    "beta quadrature steps {steps} must be a power of two >= 16"
                )));
            }
            beta_quadrature(f, a, c, steps)
        }
    }
}

/// `(C)∫ f dμ` over the whole domain of `f`.
pub fn choquet_full<I: Integrand>(f: &I, c: &Capacity, method: IntegralMethod) -> Result<f64> {
    choquet_integral(f, &f.domain(), c, method)
}

fn sorted_levels<I: Integrand>(f: &I, a: &I::Set, c: &Capacity) -> Result<f64> {
    let mut pieces = f.pieces_on(a, c)?;
    if pieces.is_empty() {
        return Ok(0.0);
    }
    let mu_a = c.from_stats(
        pieces
            .iter()
            .fold(PieceStats::EMPTY, |acc, (_, s)| acc.combine(*s)),
    );
    pieces.sort_by(|x, y| y.0.total_cmp(&x.0));

    // above the maximum the level set is empty: −μ(A) on (max f, 0)
    let mut total = -(-pieces[0].0).max(0.0) * mu_a;
    let mut acc = PieceStats::EMPTY;
    let mut i = 0;
    while i < pieces.len() {
        let level = pieces[i].0;
        while i < pieces.len() && pieces[i].0 == level {
            acc = acc.combine(pieces[i].1);
            i += 1;
        }
        // μ({f ≥ β} ∩ A) = mu_j for β in (next, level]
        let mu_j = c.from_stats(acc);
        match pieces.get(i) {
            Some(&(next, _)) => {
                let pos = level.max(0.0) - next.max(0.0);
                let neg = level.min(0.0) - next.min(0.0);
                total += pos * mu_j + neg * (mu_j - mu_a);
            }
            None => total += level.max(0.0) * mu_j,
        }
    }
    Ok(total)
}

/// Node `i` of an `n`-step mesh on `[u, v]` graded towards both ends.
#[inline]
fn graded(u: f64, v: f64, i: usize, n: usize) -> f64 {
    let s = i as f64 / n as f64;
    u + (v - u) * s * s * (3.0 - 2.0 * s)
}

fn graded_midpoint(g: &mut impl FnMut(f64) -> Result<f64>, u: f64, v: f64, n: usize) -> Result<f64> {
    let mut sum = 0.0;
    let mut left = u;
    for i in 1..=n {
        let right = graded(u, v, i, n);
        sum += (right - left) * g(0.5 * (left + right))?;
        left = right;
    }
    Ok(sum)
}

fn beta_quadrature<I: Integrand>(f: &I, a: &I::Set, c: &Capacity, steps: usize) -> Result<f64> {
    let Some((lo, hi)) = f.range_on(a) else {
        return Ok(0.0);
    };
    let mu_a = c.measure(a)?;

    let mut breaks: Vec<f64> = f
        .critical_values_on(a)
        .into_iter()
        .chain([lo, hi, 0.0])
        .filter(|b| *b >= lo && *b <= hi)
        .collect();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let span = hi - lo;
    let initial = if f.is_step() { 1 } else { steps };
    let mut total = 0.0;
    for w in breaks.windows(2) {
        let (u, v) = (w[0], w[1]);
        if v <= u {
            continue;
        }
        let shift = if v <= 0.0 { mu_a } else { 0.0 };
        let mut g = |beta: f64| -> Result<f64> {
            Ok(c.measure(&f.superlevel_on(beta, a)?)? - shift)
        };
        let tol = BETA_TOLERANCE * (v - u) / span;
        let mut n = initial;
        let mut prev = graded_midpoint(&mut g, u, v, n)?;
        loop {
            n *= 2;
            let next = graded_midpoint(&mut g, u, v, n)?;
            if (next - prev).abs() < tol {
                total += next;
                break;
            }
            if n >= BETA_STEP_CAP {
                return Err(Error::NotConverged {
                    value: total + next,
                    steps: n,
                });
            }
            prev = next;
        }
    }
    // flat stretches outside [lo, hi]: μ(A) on [0, lo] and −μ(A) on [hi, 0]
    total += lo.max(0.0) * mu_a;
    total -= (-hi).max(0.0) * mu_a;
    Ok(total)
}

/// Ordinary integral for additive capacities, with closed-cell semantics:
/// a point mass on a cell boundary sees the larger adjacent value.
pub fn ordinary_integral<I: Integrand>(f: &I, a: &I::Set, c: &Capacity) -> Result<f64> {
    if !c.flags().additive {
        return Err(Error::Unsupported(format!(
            "ordinary quadrature needs an additive capacity, got {c}"
        )));
    }
    c.validate()?;
    let (inner, factor) = c.unscaled();
    let pieces = f.pieces_on(a, c)?;
    Ok(match inner {
        Capacity::Dirac(_) => {
            factor
                * pieces
                    .iter()
                    .filter(|(_, s)| s.hit)
                    .map(|(v, _)| *v)
                    .reduce(f64::max)
                    .unwrap_or(0.0)
        }
        _ => factor * pieces.iter().map(|(v, s)| v * s.length).sum::<f64>(),
    })
}

/// `((C)∫ |f|^p dμ)^{1/p}` over the whole domain.
pub fn lp_choquet_functional<I: Integrand>(
    f: &I,
    c: &Capacity,
    p: f64,
    method: IntegralMethod,
) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!("p = {p} must be at least 1")));
    }
    let g = f.abs_pow(p)?;
    Ok(choquet_full(&g, c, method)?.powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::{Distortion, UnimodalDistribution};
    use crate::function::{Func1, Func2, SampleMode};
    use proptest::prelude::*;

    const BETA: IntegralMethod = IntegralMethod::beta(16);

    fn sampled(m: usize, f: &Func1) -> SampledFunction1D {
        SampledFunction1D::from_fn(m, SampleMode::Midpoint, f).unwrap()
    }

    fn builtins() -> Vec<Capacity> {
        vec![
            Capacity::sqrt_lebesgue(),
            Capacity::sin_lebesgue(),
            Capacity::DistortedLebesgue(Distortion::Power(0.3)),
            Capacity::possibility_bump(4, 2).unwrap(),
            Capacity::possibility_bump(3, 0).unwrap(),
            Capacity::LebesgueBorel,
            Capacity::dirac(0.37),
            Capacity::LebesgueBorel.scaled(0.5).unwrap(),
        ]
    }

    #[test]
    fn constant_integrand_gives_measure() {
        let one = sampled(64, &Func1::e0());
        let a = IntervalSet::canonicalize([(0.1, 0.2), (0.5, 0.75)]).unwrap();
        for c in builtins() {
            let want = c.measure(&a).unwrap();
            for method in [IntegralMethod::SortedLevels, BETA] {
                let got = choquet_integral(&one, &a, &c, method).unwrap();
                assert!((got - want).abs() < 1e-12, "{c} {method:?}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn identity_against_sqrt_lebesgue() {
        // ∫_0^1 √(1-β) dβ = 2/3
        let cont = ContinuousFunction1D::new(Func1::e1()).unwrap();
        let c = Capacity::sqrt_lebesgue();
        let got = choquet_full(&cont, &c, BETA).unwrap();
        assert!((got - 2.0 / 3.0).abs() < 1e-8, "{got}");
        let grid = choquet_full(&sampled(2048, &Func1::e1()), &c, IntegralMethod::SortedLevels).unwrap();
        assert!((grid - 2.0 / 3.0).abs() < 2e-5, "{grid}");
    }

    #[test]
    fn lp_functional_examples() {
        let c = Capacity::sin_lebesgue();
        let cont = ContinuousFunction1D::new(Func1::e1()).unwrap();
        let got = lp_choquet_functional(&cont, &c, 1.0, BETA).unwrap();
        assert!((got - 0.459_697_694_131_860_3).abs() < 1e-8, "{got}");

        let zero = sampled(16, &Func1::constant(0.0));
        assert_eq!(lp_choquet_functional(&zero, &c, 2.0, IntegralMethod::SortedLevels).unwrap(), 0.0);
        let one = sampled(16, &Func1::e0());
        let sq = Capacity::sqrt_lebesgue();
        for p in [1.0, 2.0, 3.5] {
            let v = lp_choquet_functional(&one, &sq, p, IntegralMethod::SortedLevels).unwrap();
            assert!((v - 1.0).abs() < 1e-15);
        }
        assert!(lp_choquet_functional(&one, &sq, 0.5, IntegralMethod::SortedLevels).is_err());
    }

    #[test]
    fn bump_denominator_is_peak_value() {
        // t(1-t) against its own possibility measure: level sets contain the mode
        let g = ContinuousFunction1D::new(Func1::new("t(1-t)", |t: f64| t * (1.0 - t))).unwrap();
        let c = Capacity::possibility_bump(2, 1).unwrap();
        let got = choquet_full(&g, &c, BETA).unwrap();
        assert!((got - 0.25).abs() < 1e-15, "{got}");
    }

    #[test]
    fn negative_values_use_second_term() {
        // f = t - 1/2 on Lebesgue: ordinary integral 0
        let f = sampled(256, &Func1::new("t-1/2", |t: f64| t - 0.5));
        let c = Capacity::LebesgueBorel;
        for method in [IntegralMethod::SortedLevels, BETA] {
            let v = choquet_full(&f, &c, method).unwrap();
            assert!(v.abs() < 1e-12, "{method:?}: {v}");
        }
        // translation identity with a non-additive capacity
        let s = Capacity::sqrt_lebesgue();
        let shifted = f.map(|v| v + 0.5).unwrap();
        let lhs = choquet_full(&f, &s, IntegralMethod::SortedLevels).unwrap();
        let rhs = choquet_full(&shifted, &s, IntegralMethod::SortedLevels).unwrap() - 0.5;
        assert!((lhs - rhs).abs() < 1e-12);
        // entirely negative integrand
        let neg = f.map(|v| v - 2.0).unwrap();
        let a = choquet_full(&neg, &s, IntegralMethod::SortedLevels).unwrap();
        let b = choquet_full(&neg, &s, BETA).unwrap();
        assert!((a - (lhs - 2.0)).abs() < 1e-12 && (a - b).abs() < 1e-12, "{a} {b} {lhs}");
    }

    #[test]
    fn empty_set_integrates_to_zero() {
        let f = sampled(8, &Func1::e1());
        let v = choquet_integral(&f, &IntervalSet::empty(), &Capacity::sqrt_lebesgue(), BETA).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn quadrature_steps_validated() {
        let f = sampled(8, &Func1::e1());
        let c = Capacity::LebesgueBorel;
        assert!(choquet_full(&f, &c, IntegralMethod::beta(8)).is_err());
        assert!(choquet_full(&f, &c, IntegralMethod::beta(24)).is_err());
    }

    #[test]
    fn dirac_on_boundary_sees_upper_envelope() {
        let f = SampledFunction1D::from_cell_values(vec![0.2, 0.7]).unwrap();
        let c = Capacity::dirac(0.5);
        assert_eq!(choquet_full(&f, &c, IntegralMethod::SortedLevels).unwrap(), 0.7);
        assert_eq!(choquet_full(&f, &c, BETA).unwrap(), 0.7);
        assert_eq!(ordinary_integral(&f, &f.domain(), &c).unwrap(), 0.7);
    }

    #[test]
    fn simplex_integrals() {
        let grid = SimplexGrid::new(8).unwrap();
        let f = SampledFunctionSimplex::from_fn(grid, &Func2::new("x1+x2", |p: [f64; 2]| p[0] + p[1])).unwrap();
        let lin = Capacity::LebesgueBorel;
        let full = f.domain();
        let exact = ordinary_integral(&f, &full, &lin).unwrap();
        // ∫_S (x1 + x2) = 1/3 and centroid sampling is exact for linear f
        assert!((exact - 1.0 / 3.0).abs() < 1e-14);
        for c in [Capacity::sqrt_lebesgue(), lin.clone(), Capacity::Dirac(vec![0.25, 0.25])] {
            let a = choquet_full(&f, &c, IntegralMethod::SortedLevels).unwrap();
            let b = choquet_full(&f, &c, BETA).unwrap();
            assert!((a - b).abs() < 1e-12, "{c}: {a} vs {b}");
        }
        let table = UnimodalDistribution::Tabulated(
            (0..grid.cell_count()).map(|i| if i == 3 { 1.0 } else { 0.5 }).collect(),
        );
        let c = Capacity::Possibility(table);
        let a = choquet_full(&f, &c, IntegralMethod::SortedLevels).unwrap();
        let b = choquet_full(&f, &c, BETA).unwrap();
        assert!((a - b).abs() < 1e-12);
        assert!(choquet_full(&f, &Capacity::possibility_bump(2, 1).unwrap(), IntegralMethod::SortedLevels).is_err());
    }

    #[test]
    fn additive_fast_path_matches_choquet() {
        let f = sampled(512, &Func1::new("wave", |t: f64| (7.0 * t).sin() + 1.5));
        let a = IntervalSet::canonicalize([(0.05, 0.3), (0.3, 0.41), (0.6, 0.97)]).unwrap();
        for c in [
            Capacity::LebesgueBorel,
            Capacity::dirac(0.7),
            Capacity::LebesgueBorel.scaled(2.5).unwrap(),
        ] {
            let o = ordinary_integral(&f, &a, &c).unwrap();
            let s = choquet_integral(&f, &a, &c, IntegralMethod::SortedLevels).unwrap();
            let b = choquet_integral(&f, &a, &c, BETA).unwrap();
            assert!((o - s).abs() < 1e-9 && (o - b).abs() < 1e-9, "{c}: {o} {s} {b}");
        }
        assert!(ordinary_integral(&f, &a, &Capacity::sqrt_lebesgue()).is_err());
    }

    fn cell_values(m: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-1.0f64..3.0, m)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn sorted_levels_agree_with_beta_quadrature(
            vals in cell_values(2048),
            which in 0usize..8,
            a0 in 0.0f64..0.5,
            a1 in 0.5f64..1.0,
        ) {
            let f = SampledFunction1D::from_cell_values(vals).unwrap();
            let c = builtins()[which].clone();
            let a = IntervalSet::interval(a0, a1).unwrap();
            let s = choquet_integral(&f, &a, &c, IntegralMethod::SortedLevels).unwrap();
            let b = choquet_integral(&f, &a, &c, BETA).unwrap();
            prop_assert!((s - b).abs() < 2e-6, "{}: {} vs {}", c, s, b);
        }

        #[test]
        fn monotone_in_the_set(vals in prop::collection::vec(0.0f64..2.0, 128), cut in 0.0f64..1.0, which in 0usize..8) {
            let f = SampledFunction1D::from_cell_values(vals).unwrap();
            let c = builtins()[which].clone();
            let small = IntervalSet::interval(0.0, cut).unwrap();
            let big = IntervalSet::full();
            let s = choquet_integral(&f, &small, &c, IntegralMethod::SortedLevels).unwrap();
            let b = choquet_integral(&f, &big, &c, IntegralMethod::SortedLevels).unwrap();
            prop_assert!(s <= b + 1e-12);
        }
    }
}
