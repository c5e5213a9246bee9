//! Monotone set functions (capacities) and their structural flags.

use std::fmt;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sets::{IntervalSet, SimplexCellSet, SimplexGrid};

/// Distortion functions γ applied to Lebesgue measure, `μ(A) = γ(m(A))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distortion {
    Sqrt,
    Sin,
    /// `u ↦ u^p` with `0 < p ≤ 1`.
    Power(f64),
    Identity,
    /// `u ↦ u²`. Convex, hence not submodular; kept as a negative control.
    Square,
}

impl Distortion {
    pub fn power(p: f64) -> Result<Self> {
        let d = Distortion::Power(p);
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Distortion::Power(p) if !(p > 0.0 && p <= 1.0) => Err(Error::InvalidParameter(
                format!("power distortion exponent {p} outside (0, 1]"),
            )),
            _ => Ok(()),
        }
    }

    pub fn apply(&self, u: f64) -> f64 {
        match *self {
            Distortion::Sqrt => u.sqrt(),
            Distortion::Sin => u.sin(),
            Distortion::Power(p) => u.powf(p),
            Distortion::Identity => u,
            Distortion::Square => u * u,
        }
    }

    pub fn is_concave(&self) -> bool {
        !matches!(self, Distortion::Square)
    }
}

impl fmt::Display for Distortion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distortion::Sqrt => write!(f, "sqrt"),
            Distortion::Sin => write!(f, "sin"),
            Distortion::Power(p) => write!(f, "power({p})"),
            Distortion::Identity => write!(f, "identity"),
            Distortion::Square => write!(f, "square"),
        }
    }
}

/// A possibility distribution: values in `[0, 1]` with supremum 1.
#[derive(Debug, Clone, PartialEq)]
pub enum UnimodalDistribution {
    /// `λ_{n,k}(t) = t^k (1-t)^{n-k} / E_{n,k}` with `E_{n,k} = k^k n^{-n} (n-k)^{n-k}`
    /// and `0⁰ = 1`; its mode is `k/n`.
    BernsteinBump { n: u32, k: u32 },
    /// Tabulated values. On `[0, 1]` they are node values on a uniform grid,
    /// linearly interpolated; on the simplex they are one value per cell.
    Tabulated(Vec<f64>),
}

/// `k^k n^{-n} (n-k)^{n-k}`, the maximum of `t^k (1-t)^{n-k}` on `[0, 1]`.
pub fn bump_peak(n: u32, k: u32) -> f64 {
    let nf = n as f64;
    let kf = k as f64;
    let rest = (n - k) as f64;
    // (k/n)^k ((n-k)/n)^{n-k}; powi(0) = 1 gives the 0⁰ convention
    (kf / nf).powi(k as i32) * (rest / nf).powi((n - k) as i32)
}

impl UnimodalDistribution {
    pub fn bernstein_bump(n: u32, k: u32) -> Result<Self> {
        let d = UnimodalDistribution::BernsteinBump { n, k };
        d.validate()?;
        Ok(d)
    }

    pub fn tabulated(values: Vec<f64>) -> Result<Self> {
        let d = UnimodalDistribution::Tabulated(values);
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            UnimodalDistribution::BernsteinBump { n, k } => {
                if *n == 0 || k > n {
                    return Err(Error::InvalidParameter(format!(
                        "Bernstein bump needs 0 <= k <= n and n >= 1, got n = {n}, k = {k}"
                    )));
                }
                Ok(())
            }
            UnimodalDistribution::Tabulated(v) => {
                if v.is_empty() {
                    return Err(Error::InvalidParameter("empty tabulated distribution".into()));
                }
                if v.iter().any(|x| !x.is_finite() || *x < 0.0 || *x > 1.0) {
                    return Err(Error::InvalidParameter(
                        "tabulated distribution values must lie in [0, 1]".into(),
                    ));
                }
                let max = v.iter().cloned().fold(0.0, f64::max);
                if (max - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidParameter(format!(
                        "tabulated distribution has supremum {max}, expected 1"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Pointwise value on `[0, 1]`.
    pub fn value(&self, t: f64) -> f64 {
        match self {
            UnimodalDistribution::BernsteinBump { n, k } => {
                let raw = t.powi(*k as i32) * (1.0 - t).powi((n - k) as i32);
                (raw / bump_peak(*n, *k)).min(1.0)
            }
            UnimodalDistribution::Tabulated(v) => {
                if v.len() == 1 {
                    return v[0];
                }
                let m = (v.len() - 1) as f64;
                let s = (t.clamp(0.0, 1.0) * m).min(m);
                let i = (s.floor() as usize).min(v.len() - 2);
                let w = s - i as f64;
                v[i] * (1.0 - w) + v[i + 1] * w
            }
        }
    }

    /// Supremum over the closed interval `[a, b]`.
    pub fn sup_on(&self, a: f64, b: f64) -> f64 {
        match self {
            UnimodalDistribution::BernsteinBump { n, k } => {
                let mode = *k as f64 / *n as f64;
                self.value(mode.clamp(a, b))
            }
            UnimodalDistribution::Tabulated(v) => {
                let mut best = self.value(a).max(self.value(b));
                if v.len() > 1 {
                    let m = (v.len() - 1) as f64;
                    let first = (a * m).ceil() as usize;
                    let last = ((b * m).floor() as usize).min(v.len() - 1);
                    for x in v.iter().take(last + 1).skip(first) {
                        best = best.max(*x);
                    }
                }
                best
            }
        }
    }

    fn strictly_positive(&self) -> bool {
        match self {
            UnimodalDistribution::BernsteinBump { .. } => true,
            UnimodalDistribution::Tabulated(v) => v.iter().all(|x| *x > 0.0),
        }
    }
}

/// Sets on which every built-in capacity can be evaluated.
pub trait Measurable: Clone + fmt::Debug {
    fn lebesgue(&self) -> f64;
    fn contains_point(&self, p: &[f64]) -> bool;
    fn is_empty(&self) -> bool;
    fn distribution_sup(&self, d: &UnimodalDistribution) -> Result<f64>;
    fn union_with(&self, other: &Self) -> Result<Self>;
    fn intersect_with(&self, other: &Self) -> Result<Self>;
    fn subset_of(&self, other: &Self) -> bool;
    fn describe(&self) -> String;
}

impl Measurable for IntervalSet {
    fn lebesgue(&self) -> f64 {
        self.length()
    }

    fn contains_point(&self, p: &[f64]) -> bool {
        p.len() == 1 && self.contains(p[0])
    }

    fn is_empty(&self) -> bool {
        IntervalSet::is_empty(self)
    }

    fn distribution_sup(&self, d: &UnimodalDistribution) -> Result<f64> {
        Ok(self
            .intervals()
            .iter()
            .map(|&(a, b)| d.sup_on(a, b))
            .fold(0.0, f64::max))
    }

    fn union_with(&self, other: &Self) -> Result<Self> {
        Ok(self.union(other))
    }

    fn intersect_with(&self, other: &Self) -> Result<Self> {
        Ok(self.intersection(other))
    }

    fn subset_of(&self, other: &Self) -> bool {
        self.is_subset_of(other)
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

impl Measurable for SimplexCellSet {
    fn lebesgue(&self) -> f64 {
        self.area()
    }

    fn contains_point(&self, p: &[f64]) -> bool {
        p.len() == 2 && SimplexCellSet::contains_point(self, [p[0], p[1]])
    }

    fn is_empty(&self) -> bool {
        SimplexCellSet::is_empty(self)
    }

    fn distribution_sup(&self, d: &UnimodalDistribution) -> Result<f64> {
        match d {
            UnimodalDistribution::Tabulated(v) if v.len() == self.grid().cell_count() => {
                Ok(self.ids().map(|id| v[id]).fold(0.0, f64::max))
            }
            UnimodalDistribution::Tabulated(v) => Err(Error::DimensionMismatch(format!(
                "tabulated distribution has {} values, simplex grid has {} cells",
                v.len(),
                self.grid().cell_count()
            ))),
            UnimodalDistribution::BernsteinBump { .. } => Err(Error::Unsupported(
                "Bernstein bump distributions are defined on [0, 1] only".into(),
            )),
        }
    }

    fn union_with(&self, other: &Self) -> Result<Self> {
        self.union(other)
    }

    fn intersect_with(&self, other: &Self) -> Result<Self> {
        self.intersection(other)
    }

    fn subset_of(&self, other: &Self) -> bool {
        self.is_subset_of(other)
    }

    fn describe(&self) -> String {
        let ids: Vec<String> = self.ids().map(|i| i.to_string()).collect();
        format!("cells{{{}}}@N={}", ids.join(","), self.grid().resolution())
    }
}

/// Structural properties declared per capacity variant.
///
/// `normalized` refers to the unit interval; on the simplex the Lebesgue
/// area of the whole domain is `1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapacityFlags {
    pub monotone: bool,
    pub submodular: bool,
    pub additive: bool,
    pub normalized: bool,
    pub strictly_positive: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Capacity {
    DistortedLebesgue(Distortion),
    Possibility(UnimodalDistribution),
    /// Unit point mass at the given point (one coordinate on `[0, 1]`, two on the simplex).
    Dirac(Vec<f64>),
    LebesgueBorel,
    Scaled(Box<Capacity>, f64),
}

/// Per-set statistics from which every built-in capacity is a function.
///
/// Combining pieces with disjoint interiors adds lengths, takes the maximum
/// of distribution suprema and ORs point membership.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PieceStats {
    pub length: f64,
    pub sup: f64,
    pub hit: bool,
}

impl PieceStats {
    pub const EMPTY: PieceStats = PieceStats {
        length: 0.0,
        sup: 0.0,
        hit: false,
    };

    pub fn combine(self, other: PieceStats) -> PieceStats {
        PieceStats {
            length: self.length + other.length,
            sup: self.sup.max(other.sup),
            hit: self.hit || other.hit,
        }
    }
}

impl Capacity {
    pub fn sqrt_lebesgue() -> Self {
        Capacity::DistortedLebesgue(Distortion::Sqrt)
    }

    pub fn sin_lebesgue() -> Self {
        Capacity::DistortedLebesgue(Distortion::Sin)
    }

    pub fn possibility_bump(n: u32, k: u32) -> Result<Self> {
        Ok(Capacity::Possibility(UnimodalDistribution::bernstein_bump(
            n, k,
        )?))
    }

    pub fn dirac(at: f64) -> Self {
        Capacity::Dirac(vec![at])
    }

    pub fn scaled(self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "scale factor {factor} must be finite and nonnegative"
            )));
        }
        Ok(Capacity::Scaled(Box::new(self), factor))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Capacity::DistortedLebesgue(d) => d.validate(),
            Capacity::Possibility(d) => d.validate(),
            Capacity::Dirac(p) => {
                let ok = match p.as_slice() {
                    [x] => (0.0..=1.0).contains(x),
                    [x, y] => *x >= 0.0 && *y >= 0.0 && x + y <= 1.0,
                    _ => false,
                };
                if ok {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!(
                        "Dirac point {p:?} is not in the domain"
                    )))
                }
            }
            Capacity::LebesgueBorel => Ok(()),
            Capacity::Scaled(base, factor) => {
                if !(factor.is_finite() && *factor >= 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "scale factor {factor} must be finite and nonnegative"
                    )));
                }
                base.validate()
            }
        }
    }

    pub fn flags(&self) -> CapacityFlags {
        match self {
            Capacity::DistortedLebesgue(d) => CapacityFlags {
                monotone: true,
                submodular: d.is_concave(),
                additive: matches!(d, Distortion::Identity),
                normalized: (d.apply(1.0) - 1.0).abs() < 1e-15,
                strictly_positive: true,
            },
            Capacity::Possibility(d) => CapacityFlags {
                monotone: true,
                submodular: true,
                additive: false,
                normalized: true,
                strictly_positive: d.strictly_positive(),
            },
            Capacity::Dirac(_) => CapacityFlags {
                monotone: true,
                submodular: true,
                additive: true,
                normalized: true,
                strictly_positive: false,
            },
            Capacity::LebesgueBorel => CapacityFlags {
                monotone: true,
                submodular: true,
                additive: true,
                normalized: true,
                strictly_positive: true,
            },
            Capacity::Scaled(base, factor) => {
                let b = base.flags();
                CapacityFlags {
                    normalized: b.normalized && *factor == 1.0,
                    strictly_positive: b.strictly_positive && *factor > 0.0,
                    ..b
                }
            }
        }
    }

    /// Scale factor and innermost capacity.
    pub(crate) fn unscaled(&self) -> (&Capacity, f64) {
        match self {
            Capacity::Scaled(base, factor) => {
                let (inner, f) = base.unscaled();
                (inner, f * factor)
            }
            other => (other, 1.0),
        }
    }

    /// Dirac point mass location, if this is a (scaled) point mass.
    pub fn point_mass(&self) -> Option<(&[f64], f64)> {
        match self.unscaled() {
            (Capacity::Dirac(p), f) => Some((p.as_slice(), f)),
            _ => None,
        }
    }

    pub fn measure<S: Measurable>(&self, set: &S) -> Result<f64> {
        self.validate()?;
        if set.is_empty() {
            return Ok(0.0);
        }
        Ok(match self {
            Capacity::DistortedLebesgue(d) => d.apply(set.lebesgue()),
            Capacity::Possibility(d) => set.distribution_sup(d)?,
            Capacity::Dirac(p) => {
                if set.contains_point(p) {
                    1.0
                } else {
                    0.0
                }
            }
            Capacity::LebesgueBorel => set.lebesgue(),
            Capacity::Scaled(base, factor) => factor * base.measure(set)?,
        })
    }

    /// Statistics of the closed interval `[lo, hi]` without building a set.
    pub fn interval_stats(&self, lo: f64, hi: f64) -> PieceStats {
        let (inner, _) = self.unscaled();
        match inner {
            Capacity::Possibility(d) => PieceStats {
                length: hi - lo,
                sup: d.sup_on(lo, hi),
                hit: false,
            },
            Capacity::Dirac(p) => PieceStats {
                length: hi - lo,
                sup: 0.0,
                hit: p.len() == 1 && lo <= p[0] && p[0] <= hi,
            },
            _ => PieceStats {
                length: hi - lo,
                sup: 0.0,
                hit: false,
            },
        }
    }

    pub fn from_stats(&self, s: PieceStats) -> f64 {
        match self {
            Capacity::DistortedLebesgue(d) => d.apply(s.length),
            Capacity::Possibility(_) => s.sup,
            Capacity::Dirac(_) => {
                if s.hit {
                    1.0
                } else {
                    0.0
                }
            }
            Capacity::LebesgueBorel => s.length,
            Capacity::Scaled(base, factor) => factor * base.from_stats(s),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Capacity::DistortedLebesgue(Distortion::Sqrt) => "sqrt-lebesgue".into(),
            Capacity::DistortedLebesgue(Distortion::Sin) => "sin-lebesgue".into(),
            Capacity::DistortedLebesgue(d) => format!("{d}-lebesgue"),
            Capacity::Possibility(UnimodalDistribution::BernsteinBump { n, k }) => {
                format!("possibility({n},{k})")
            }
            Capacity::Possibility(UnimodalDistribution::Tabulated(v)) => {
                format!("possibility-tabulated[{}]", v.len())
            }
            Capacity::Dirac(p) => {
                let coords: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                format!("dirac({})", coords.join(","))
            }
            Capacity::LebesgueBorel => "lebesgue".into(),
            Capacity::Scaled(base, f) => format!("{f}*{}", base.label()),
        }
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Domain on which random test sets are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetDomain {
    Interval,
    Simplex(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub property: &'static str,
    pub a: String,
    pub b: String,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructureReport {
    pub trials: usize,
    pub monotone_ok: bool,
    pub submodular_ok: bool,
    pub counterexample: Option<Counterexample>,
}

/// A random canonical interval set with up to four pieces. Endpoints are
/// snapped to a dyadic grid half of the time so shared endpoints occur.
pub fn random_interval_set(rng: &mut ChaCha8Rng) -> IntervalSet {
    let pieces = rng.random_range(0..=4usize);
    let snap = rng.random_bool(0.5);
    let mut raw = Vec::with_capacity(pieces);
    for _ in 0..pieces {
        let mut a: f64 = rng.random_range(0.0..=1.0);
        let mut b: f64 = rng.random_range(0.0..=1.0);
        if snap {
            a = (a * 8.0).round() / 8.0;
            b = (b * 8.0).round() / 8.0;
        }
        raw.push((a.min(b), a.max(b)));
    }
    IntervalSet::canonicalize(raw).expect("random endpoints lie in [0, 1]")
}

pub fn random_cell_set(rng: &mut ChaCha8Rng, grid: SimplexGrid) -> SimplexCellSet {
    let p: f64 = rng.random_range(0.0..=1.0);
    let ids: Vec<usize> = (0..grid.cell_count())
        .filter(|_| rng.random_bool(p))
        .collect();
    SimplexCellSet::from_ids(grid, ids).expect("distinct in-range ids")
}

fn structure_trials<S: Measurable>(
    c: &Capacity,
    trials: usize,
    mut draw: impl FnMut() -> S,
) -> Result<StructureReport> {
    const TOL: f64 = 1e-12;
    let mut report = StructureReport {
        trials,
        monotone_ok: true,
        submodular_ok: true,
        counterexample: None,
    };
    for _ in 0..trials {
        let a = draw();
        let b = draw();

        let big = a.union_with(&b)?;
        let (ma, mbig) = (c.measure(&a)?, c.measure(&big)?);
        if ma > mbig + TOL {
            report.monotone_ok = false;
            report.counterexample.get_or_insert(Counterexample {
                property: "monotone",
                a: a.describe(),
                b: big.describe(),
                lhs: ma,
                rhs: mbig,
            });
        }

        let meet = a.intersect_with(&b)?;
        let lhs = mbig + c.measure(&meet)?;
        let rhs = ma + c.measure(&b)?;
        if lhs > rhs + TOL {
            report.submodular_ok = false;
            report.counterexample.get_or_insert(Counterexample {
                property: "submodular",
                a: a.describe(),
                b: b.describe(),
                lhs,
                rhs,
            });
        }
    }
    Ok(report)
}

/// Statistical evidence for monotonicity and submodularity on random set pairs.
///
/// Monotonicity is tested on the nested pair `A ⊆ A ∪ B`, submodularity on
/// `(A, B)`, both with tolerance `1e-12`.
pub fn check_structure(
    c: &Capacity,
    domain: SetDomain,
    trials: usize,
    seed: u64,
) -> Result<StructureReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    c.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match domain {
        SetDomain::Interval => structure_trials(c, trials, || random_interval_set(&mut rng)),
        SetDomain::Simplex(n) => {
            let grid = SimplexGrid::new(n)?;
            structure_trials(c, trials, || random_cell_set(&mut rng, grid))
        }
    }
}

/// Spot-checks `μ(A) ≤ δ(A)` on random interval sets.
pub fn check_dominance(mu: &Capacity, delta: &Capacity, trials: usize, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fixed = [IntervalSet::full(), IntervalSet::empty()];
    let randoms = (0..trials).map(|_| random_interval_set(&mut rng));
    for set in fixed.into_iter().chain(randoms) {
        let (m, d) = (mu.measure(&set)?, delta.measure(&set)?);
        if m > d + 1e-12 {
            return Err(Error::DominanceViolated {
                mu: m,
                delta: d,
                set: set.to_string(),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: f64, b: f64) -> IntervalSet {
        IntervalSet::interval(a, b).unwrap()
    }

    #[test]
    fn sqrt_lebesgue_on_quarter() {
        assert_eq!(Capacity::sqrt_lebesgue().measure(&iv(0.0, 0.25)).unwrap(), 0.5);
    }

    #[test]
    fn bump_possibility_clamps_mode_into_interval() {
        let c = Capacity::possibility_bump(2, 1).unwrap();
        let closed = c.measure(&iv(0.0, 0.25)).unwrap();
        assert!((closed - 0.75).abs() < 1e-15);
        // grid supremum over 10^5 points as an independent check
        let lambda = |t: f64| 4.0 * t * (1.0 - t);
        let grid = (0..=100_000)
            .map(|i| 0.25 * i as f64 / 100_000.0)
            .map(lambda)
            .fold(0.0, f64::max);
        assert!((closed - grid).abs() < 1e-12);
    }

    #[test]
    fn dirac_outside_set_is_zero() {
        assert_eq!(Capacity::dirac(0.0).measure(&iv(0.5, 1.0)).unwrap(), 0.0);
        assert_eq!(Capacity::dirac(0.5).measure(&iv(0.5, 1.0)).unwrap(), 1.0);
    }

    #[test]
    fn invalid_power_rejected() {
        assert!(Distortion::power(1.5).is_err());
        assert!(Distortion::power(0.0).is_err());
        let c = Capacity::DistortedLebesgue(Distortion::Power(2.0));
        assert!(c.measure(&IntervalSet::full()).is_err());
        assert!(Distortion::power(0.5).is_ok());
    }

    #[test]
    fn bump_peak_uses_zero_power_convention() {
        assert_eq!(bump_peak(5, 0), 1.0);
        assert_eq!(bump_peak(5, 5), 1.0);
        assert!((bump_peak(4, 2) - 1.0 / 16.0).abs() < 1e-16);
        assert!((bump_peak(2, 1) - 0.25).abs() < 1e-16);
    }

    #[test]
    fn bump_distribution_reaches_one_at_mode() {
        for n in 1..=12u32 {
            for k in 0..=n {
                let d = UnimodalDistribution::bernstein_bump(n, k).unwrap();
                let at_mode = d.value(k as f64 / n as f64);
                assert!((at_mode - 1.0).abs() < 1e-12, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn tabulated_distribution_validated() {
        assert!(UnimodalDistribution::tabulated(vec![0.2, 0.9]).is_err());
        assert!(UnimodalDistribution::tabulated(vec![0.2, 1.0, 1.2]).is_err());
        let d = UnimodalDistribution::tabulated(vec![0.0, 1.0, 0.5]).unwrap();
        assert_eq!(d.value(0.25), 0.5);
        assert_eq!(d.sup_on(0.0, 0.3), 0.6);
        assert_eq!(d.sup_on(0.4, 1.0), 1.0);
    }

    #[test]
    fn flags_follow_variant() {
        assert!(!Capacity::dirac(0.3).flags().strictly_positive);
        assert!(Capacity::sqrt_lebesgue().flags().strictly_positive);
        assert!(Capacity::possibility_bump(4, 2).unwrap().flags().strictly_positive);
        assert!(!Capacity::sin_lebesgue().flags().normalized);
        assert!(Capacity::DistortedLebesgue(Distortion::Identity).flags().additive);
        assert!(!Capacity::DistortedLebesgue(Distortion::Square).flags().submodular);
        let half = Capacity::LebesgueBorel.scaled(0.5).unwrap();
        assert!(half.flags().additive && !half.flags().normalized);
    }

    #[test]
    fn structure_holds_for_concave_and_possibility() {
        for c in [
            Capacity::sqrt_lebesgue(),
            Capacity::possibility_bump(4, 2).unwrap(),
        ] {
            let r = check_structure(&c, SetDomain::Interval, 1000, 7).unwrap();
            assert!(r.monotone_ok && r.submodular_ok, "{c}: {r:?}");
        }
    }

    #[test]
    fn convex_distortion_fails_submodularity() {
        let c = Capacity::DistortedLebesgue(Distortion::Square);
        let r = check_structure(&c, SetDomain::Interval, 1000, 7).unwrap();
        assert!(r.monotone_ok);
        assert!(!r.submodular_ok);
        let ce = r.counterexample.unwrap();
        assert_eq!(ce.property, "submodular");
        assert!(ce.lhs > ce.rhs);

        // the explicit pair [0, 1/2], [1/2, 1]
        let (a, b) = (iv(0.0, 0.5), iv(0.5, 1.0));
        let lhs = c.measure(&a.union(&b)).unwrap() + c.measure(&a.intersection(&b)).unwrap();
        let rhs = c.measure(&a).unwrap() + c.measure(&b).unwrap();
        assert_eq!((lhs, rhs), (1.0, 0.5));
    }

    #[test]
    fn possibility_union_axiom_is_exact() {
        let c = Capacity::possibility_bump(5, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let a = random_interval_set(&mut rng);
            let b = random_interval_set(&mut rng);
            let u = c.measure(&a.union(&b)).unwrap();
            let m = c.measure(&a).unwrap().max(c.measure(&b).unwrap());
            assert_eq!(u, m);
        }
    }

    #[test]
    fn sin_is_dominated_by_lebesgue_but_sqrt_is_not() {
        assert!(check_dominance(&Capacity::sin_lebesgue(), &Capacity::LebesgueBorel, 500, 1).is_ok());
        assert!(matches!(
            check_dominance(&Capacity::sqrt_lebesgue(), &Capacity::LebesgueBorel, 500, 1),
            Err(Error::DominanceViolated { .. })
        ));
    }

    #[test]
    fn simplex_capacities() {
        let grid = SimplexGrid::new(4).unwrap();
        let full = SimplexCellSet::full(grid);
        assert!((Capacity::LebesgueBorel.measure(&full).unwrap() - 0.5).abs() < 1e-15);
        let r = check_structure(&Capacity::sqrt_lebesgue(), SetDomain::Simplex(4), 300, 5).unwrap();
        assert!(r.submodular_ok && r.monotone_ok);
        let d = Capacity::Dirac(vec![0.0, 0.0]);
        let first = SimplexCellSet::from_ids(grid, [0]).unwrap();
        assert_eq!(d.measure(&first).unwrap(), 1.0);
        let bump = Capacity::possibility_bump(2, 1).unwrap();
        assert!(bump.measure(&full).is_err());
    }
}
