//! Bernstein-Durrmeyer-Choquet operators
//! `M(f)(x) = Σ_{|α|=n} B_α(x) · (C)∫ f·P_α dμ_α / (C)∫ P_α dμ_α`
//! and their variants, parameterized by a [`CapacityFamily`].

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::bernstein::{
    basis_simplex, enumerate_multi_indices, normalized_weight, p_nk, weight_peak, MultiIndex,
    SimplexPoint, DENOMINATOR_GUARD,
};
use crate::capacity::{check_dominance, Capacity};
use crate::choquet::{choquet_full, IntegralMethod};
use crate::error::{Error, Result};
use crate::function::{
    ContinuousFunction1D, Func1, Func2, SampleMode, SampledFunction1D, SampledFunctionSimplex,
};
use crate::sets::SimplexGrid;

/// Values below this are treated as negative integrands.
pub const NEGATIVITY_SLACK: f64 = 1e-12;

const DOMINANCE_TRIALS: usize = 500;
const DOMINANCE_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChoquetRoute {
    /// Cell sampling, sorted-levels algorithm.
    SortedLevels,
    /// Cell sampling, explicit level sets and `β` quadrature.
    BetaQuadrature,
    /// No sampling: exact level sets of the continuous product and `β`
    /// quadrature. Only on `[0, 1]`.
    Continuous,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discretization {
    pub cells: usize,
    pub simplex_resolution: usize,
    pub route: ChoquetRoute,
    pub beta_steps: usize,
    /// Additive capacities use midpoint quadrature instead of a Choquet route.
    pub additive_fast_path: bool,
}

impl Default for Discretization {
    fn default() -> Self {
        Discretization {
            cells: 2048,
            simplex_resolution: 64,
            route: ChoquetRoute::SortedLevels,
            beta_steps: 16,
            additive_fast_path: true,
        }
    }
}

impl Discretization {
    pub fn with_route(mut self, route: ChoquetRoute) -> Self {
        self.route = route;
        self
    }

    pub fn with_cells(mut self, cells: usize) -> Self {
        self.cells = cells;
        self
    }

    pub fn with_simplex_resolution(mut self, n: usize) -> Self {
        self.simplex_resolution = n;
        self
    }

    pub fn without_fast_path(mut self) -> Self {
        self.additive_fast_path = false;
        self
    }

    fn method(&self) -> IntegralMethod {
        match self.route {
            ChoquetRoute::BetaQuadrature => IntegralMethod::beta(self.beta_steps),
            _ => IntegralMethod::SortedLevels,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.cells == 0 || self.simplex_resolution == 0 {
            return Err(Error::InvalidParameter("grid sizes must be positive".into()));
        }
        Ok(())
    }
}

/// Which end terms of a two-measure operator use the Choquet capacity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndTerms {
    /// `k = n` only.
    Upper,
    /// `k = 0` only.
    Lower,
    Both,
}

type FamilyAt = dyn Fn(&SimplexPoint) -> Result<CapacityFamily> + Send + Sync;

/// A family that is re-evaluated at every point `x`.
#[derive(Clone)]
pub struct PointFamily(Arc<FamilyAt>);

impl PointFamily {
    pub fn new(f: impl Fn(&SimplexPoint) -> Result<CapacityFamily> + Send + Sync + 'static) -> Self {
        PointFamily(Arc::new(f))
    }
}

impl fmt::Debug for PointFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointFamily(..)")
    }
}

#[derive(Debug, Clone)]
pub enum CapacityFamily {
    Constant(Capacity),
    /// One capacity per multi-index, in enumeration order.
    PerIndex(Vec<Capacity>),
    /// `P_{λ_{n,k}}` for `k = 0..n`.
    Possibility,
    /// Point masses at `k/n` for `k < n` and the given capacity at `k = n`.
    MixedDiracTail(Capacity),
    /// Ordinary integrals against `additive` except at the selected end terms,
    /// which use `choquet`. Build with [`CapacityFamily::two_measure`].
    TwoMeasure {
        additive: Capacity,
        choquet: Capacity,
        ends: EndTerms,
    },
    /// End terms weighted by `(1−t)ⁿ` and `tⁿ`; middle terms by `p_{n−2,k−1}`.
    /// `middle` holds one shared capacity or `n − 1` of them.
    Genuine {
        start: Capacity,
        end: Capacity,
        middle: Vec<Capacity>,
    },
    PerPoint(PointFamily),
}

/// One summand: outer weight `B_α`, inner weight `Π tᵢ^{innerᵢ}`, capacity.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub alpha: MultiIndex,
    pub inner: Vec<u32>,
    pub capacity: Capacity,
}

impl CapacityFamily {
    /// Validates `δ` additive and spot-checks `μ ≤ δ` on random sets.
    pub fn two_measure(additive: Capacity, choquet: Capacity, ends: EndTerms) -> Result<Self> {
        additive.validate()?;
        choquet.validate()?;
        if !additive.flags().additive {
            return Err(Error::InvalidParameter(format!("{additive} is not additive")));
        }
        check_dominance(&choquet, &additive, DOMINANCE_TRIALS, DOMINANCE_SEED)?;
        Ok(CapacityFamily::TwoMeasure {
            additive,
            choquet,
            ends,
        })
    }

    /// Point masses at every lattice node `α/n`; reproduces the Bernstein operator.
    pub fn all_dirac(n: u32, d: usize) -> Result<Self> {
        Ok(CapacityFamily::PerIndex(
            enumerate_multi_indices(n, d)?
                .iter()
                .map(|a| Capacity::Dirac(a.node()))
                .collect(),
        ))
    }

    pub fn is_point_dependent(&self) -> bool {
        matches!(self, CapacityFamily::PerPoint(_))
    }

    /// Resolves a point-dependent family at `x`.
    pub fn at(&self, x: &SimplexPoint) -> Result<CapacityFamily> {
        match self {
            CapacityFamily::PerPoint(pf) => {
                let inner = (pf.0)(x)?;
                if inner.is_point_dependent() {
                    return Err(Error::InvalidParameter(
                        "point family resolved to another point family".into(),
                    ));
                }
                Ok(inner)
            }
            other => Ok(other.clone()),
        }
    }

    pub fn terms(&self, n: u32, d: usize) -> Result<Vec<Term>> {
        let alphas = enumerate_multi_indices(n, d)?;
        let plain = |alpha: MultiIndex, capacity: Capacity| Term {
            inner: alpha.components().to_vec(),
            alpha,
            capacity,
        };
        let need_line = |name: &str| -> Result<()> {
            if d != 1 {
                return Err(Error::Unsupported(format!("{name} family is defined on [0, 1] only")));
            }
            Ok(())
        };
        match self {
            CapacityFamily::Constant(c) => Ok(alphas.into_iter().map(|a| plain(a, c.clone())).collect()),
            CapacityFamily::PerIndex(cs) => {
                if cs.len() != alphas.len() {
                    return Err(Error::DimensionMismatch(format!(
                        "{} capacities for {} multi-indices",
                        cs.len(),
                        alphas.len()
                    )));
                }
                Ok(alphas.into_iter().zip(cs.iter().cloned()).map(|(a, c)| plain(a, c)).collect())
            }
            CapacityFamily::Possibility => {
                need_line("possibility")?;
                alphas
                    .into_iter()
                    .map(|a| {
                        let k = a.components()[1];
                        Ok(plain(a, Capacity::possibility_bump(n, k)?))
                    })
                    .collect()
            }
            CapacityFamily::MixedDiracTail(mu) => {
                need_line("mixed Dirac")?;
                Ok(alphas
                    .into_iter()
                    .map(|a| {
                        let k = a.components()[1];
                        let c = if k < n { Capacity::dirac(k as f64 / n as f64) } else { mu.clone() };
                        plain(a, c)
                    })
                    .collect())
            }
            CapacityFamily::TwoMeasure {
                additive,
                choquet,
                ends,
            } => {
                need_line("two-measure")?;
                Ok(alphas
                    .into_iter()
                    .map(|a| {
                        let k = a.components()[1];
                        let upper = k == n && matches!(ends, EndTerms::Upper | EndTerms::Both);
                        let lower = k == 0 && matches!(ends, EndTerms::Lower | EndTerms::Both);
                        let c = if upper || lower { choquet.clone() } else { additive.clone() };
                        plain(a, c)
                    })
                    .collect())
            }
            CapacityFamily::Genuine { start, end, middle } => {
                need_line("genuine")?;
                if n < 2 {
                    return Err(Error::InvalidParameter("genuine operator needs n >= 2".into()));
                }
                if middle.len() != 1 && middle.len() != (n - 1) as usize {
                    return Err(Error::DimensionMismatch(format!(
                        "{} middle capacities for n = {n}",
                        middle.len()
                    )));
                }
                Ok(alphas
                    .into_iter()
                    .map(|a| {
                        let k = a.components()[1];
                        if k == 0 {
                            plain(a, start.clone())
                        } else if k == n {
                            plain(a, end.clone())
                        } else {
                            let c = if middle.len() == 1 { &middle[0] } else { &middle[(k - 1) as usize] };
                            Term {
                                alpha: a,
                                inner: vec![n - 1 - k, k - 1],
                                capacity: c.clone(),
                            }
                        }
                    })
                    .collect())
            }
            CapacityFamily::PerPoint(_) => Err(Error::InvalidParameter(
                "point-dependent family must be resolved with `at` first".into(),
            )),
        }
    }
}

/// The function an operator is applied to.
#[derive(Debug, Clone)]
pub enum Target {
    Line(Func1),
    Simplex(Func2),
}

impl Target {
    pub fn dim(&self) -> usize {
        match self {
            Target::Line(_) => 1,
            Target::Simplex(_) => 2,
        }
    }

    pub fn label(&self) -> &str {
        match self {
            Target::Line(f) => f.label(),
            Target::Simplex(f) => f.label(),
        }
    }

    pub fn eval(&self, x: &SimplexPoint) -> f64 {
        match self {
            Target::Line(f) => f.eval(x.coords()[0]),
            Target::Simplex(f) => f.eval([x.coords()[0], x.coords()[1]]),
        }
    }

    pub fn shift(&self, c: f64) -> Target {
        match self {
            Target::Line(f) => Target::Line(f.shift(c)),
            Target::Simplex(f) => Target::Simplex(f.shift(c)),
        }
    }
}

impl From<Func1> for Target {
    fn from(f: Func1) -> Self {
        Target::Line(f)
    }
}

impl From<Func2> for Target {
    fn from(f: Func2) -> Self {
        Target::Simplex(f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorOutput {
    pub value: f64,
    pub coefficients: Vec<f64>,
    pub numerators: Vec<f64>,
    pub denominators: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
struct PreparedTerm {
    alpha: MultiIndex,
    numerator: f64,
    denominator: f64,
    coefficient: f64,
}

/// Coefficients of an x-independent operator, ready for evaluation at any point.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparedOperator {
    n: u32,
    d: usize,
    terms: Vec<PreparedTerm>,
}

impl PreparedOperator {
    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn coefficients(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.coefficient).collect()
    }

    pub fn evaluate(&self, x: &SimplexPoint) -> Result<OperatorOutput> {
        if x.dim() != self.d {
            return Err(Error::DimensionMismatch(format!(
                "operator on dimension {}, point of dimension {}",
                self.d,
                x.dim()
            )));
        }
        let mut value = 0.0;
        for t in &self.terms {
            let b = if self.d == 1 {
                p_nk(self.n, t.alpha.components()[1], x.coords()[0])
            } else {
                basis_simplex(&t.alpha, x)?.0
            };
            value += b * t.coefficient;
        }
        Ok(OperatorOutput {
            value,
            coefficients: self.coefficients(),
            numerators: self.terms.iter().map(|t| t.numerator).collect(),
            denominators: self.terms.iter().map(|t| t.denominator).collect(),
        })
    }

    pub fn evaluate_at(&self, x: f64) -> Result<f64> {
        Ok(self.evaluate(&SimplexPoint::new(vec![x])?)?.value)
    }
}

fn negative(value: f64, location: String) -> Error {
    Error::NegativeIntegrand { value, location }
}

fn check_sampled(values: &[f64], locate: impl Fn(usize) -> String) -> Result<()> {
    if let Some((i, v)) = values
        .iter()
        .enumerate()
        .find(|(_, v)| **v < -NEGATIVITY_SLACK)
    {
        return Err(negative(*v, locate(i)));
    }
    Ok(())
}

enum Sampled {
    Line(SampledFunction1D),
    Simplex(SampledFunctionSimplex),
}

#[derive(Debug, Clone)]
enum Weights {
    Point { point: SimplexPoint, factor: f64, w: f64 },
    /// Midpoint quadrature; `scale` is factor × cell measure.
    Additive { values: Vec<f64>, scale: f64 },
    Line(SampledFunction1D),
    Simplex(SampledFunctionSimplex),
    Continuous,
}

#[derive(Debug, Clone)]
struct PlannedTerm {
    term: Term,
    weights: Weights,
    /// Denominator of the normalized weight.
    denominator: f64,
}

/// Everything about an x-independent operator that does not depend on `f`:
/// sampled inner weights and denominators. Reused across integrands.
#[derive(Debug, Clone)]
pub struct OperatorPlan {
    n: u32,
    d: usize,
    disc: Discretization,
    terms: Vec<PlannedTerm>,
}

fn line_weight(inner: &[u32]) -> Func1 {
    let inner = inner.to_vec();
    Func1::new("w", move |t: f64| normalized_weight(&inner, &[1.0 - t, t]))
}

fn simplex_weight(inner: &[u32]) -> Func2 {
    let inner = inner.to_vec();
    Func2::new("w", move |q: [f64; 2]| normalized_weight(&inner, &[1.0 - q[0] - q[1], q[0], q[1]]))
}

impl OperatorPlan {
    pub fn new(n: u32, d: usize, family: &CapacityFamily, disc: &Discretization) -> Result<Self> {
        disc.validate()?;
        if d == 2 && disc.route == ChoquetRoute::Continuous {
            return Err(Error::Unsupported("the continuous route is available on [0, 1] only".into()));
        }
        let terms = family.terms(n, d)?;
        let method = disc.method();
        let planned: Result<Vec<PlannedTerm>> = terms
            .into_par_iter()
            .map(|term| {
                let c = &term.capacity;
                c.validate()?;
                let inner = &term.inner;
                let (weights, den) = if let Some((p, factor)) = c.point_mass() {
                    let point = SimplexPoint::new(p.to_vec())?;
                    let w = normalized_weight(inner, &point.barycentric());
                    (Weights::Point { point, factor, w }, factor * w)
                } else if d == 1 {
                    let s = SampledFunction1D::from_fn(disc.cells, SampleMode::Midpoint, &line_weight(inner))?;
                    if c.flags().additive && disc.additive_fast_path {
                        let scale = c.unscaled().1 / disc.cells as f64;
                        let den = scale * s.values().iter().sum::<f64>();
                        (Weights::Additive { values: s.values().to_vec(), scale }, den)
                    } else if disc.route == ChoquetRoute::Continuous {
                        let q = IntegralMethod::beta(disc.beta_steps);
                        let den = choquet_full(&ContinuousFunction1D::new(line_weight(inner))?, c, q)?;
                        (Weights::Continuous, den)
                    } else {
                        let den = choquet_full(&s, c, method)?;
                        (Weights::Line(s), den)
                    }
                } else {
                    let grid = SimplexGrid::new(disc.simplex_resolution)?;
                    let s = SampledFunctionSimplex::from_fn(grid, &simplex_weight(inner))?;
                    if c.flags().additive && disc.additive_fast_path {
                        let scale = c.unscaled().1 * grid.cell_area();
                        let den = scale * s.values().iter().sum::<f64>();
                        (Weights::Additive { values: s.values().to_vec(), scale }, den)
                    } else {
                        let den = choquet_full(&s, c, method)?;
                        (Weights::Simplex(s), den)
                    }
                };
                if !(den > DENOMINATOR_GUARD) {
                    return Err(Error::NotStrictlyPositive {
                        term: format!("alpha={} capacity={}", term.alpha, term.capacity),
                        denominator: den * weight_peak(inner),
                    });
                }
                Ok(PlannedTerm {
                    term,
                    weights,
                    denominator: den,
                })
            })
            .collect();
        Ok(OperatorPlan {
            n,
            d,
            disc: *disc,
            terms: planned?,
        })
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter().map(|t| &t.term)
    }

    /// Computes the numerators for `f`; rejects negative sampled values.
    pub fn apply(&self, f: &Target) -> Result<PreparedOperator> {
        if f.dim() != self.d {
            return Err(Error::DimensionMismatch(format!(
                "operator on dimension {}, function of dimension {}",
                self.d,
                f.dim()
            )));
        }
        let sampled = sample(f, &self.disc)?;
        let method = self.disc.method();
        let prepared: Result<Vec<PreparedTerm>> = self
            .terms
            .par_iter()
            .map(|pt| {
                let c = &pt.term.capacity;
                let num = match (&pt.weights, &sampled, f) {
                    (Weights::Point { point, factor, w }, _, _) => {
                        let fv = f.eval(point);
                        if fv < -NEGATIVITY_SLACK {
                            return Err(negative(fv, format!("{:?}", point.coords())));
                        }
                        factor * fv * w
                    }
                    (Weights::Additive { values, scale }, s, _) => {
                        let fv = match s {
                            Sampled::Line(s) => s.values(),
                            Sampled::Simplex(s) => s.values(),
                        };
                        scale * fv.iter().zip(values).map(|(a, b)| a * b).sum::<f64>()
                    }
                    (Weights::Line(w), Sampled::Line(s), _) => {
                        choquet_full(&s.zip_with(w, |a, b| a * b)?, c, method)?
                    }
                    (Weights::Simplex(w), Sampled::Simplex(s), _) => {
                        choquet_full(&s.zip_with(w, |a, b| a * b)?, c, method)?
                    }
                    (Weights::Continuous, _, Target::Line(g)) => {
                        let w = line_weight(&pt.term.inner);
                        let g = g.clone();
                        let prod = Func1::new("f*w", move |t: f64| g.eval(t) * w.eval(t));
                        choquet_full(&ContinuousFunction1D::new(prod)?, c, IntegralMethod::beta(self.disc.beta_steps))?
                    }
                    _ => return Err(Error::DimensionMismatch("sampling does not match the target".into())),
                };
                let peak = weight_peak(&pt.term.inner);
                Ok(PreparedTerm {
                    alpha: pt.term.alpha.clone(),
                    numerator: num * peak,
                    denominator: pt.denominator * peak,
                    coefficient: num / pt.denominator,
                })
            })
            .collect();
        Ok(PreparedOperator {
            n: self.n,
            d: self.d,
            terms: prepared?,
        })
    }
}

fn sample(f: &Target, disc: &Discretization) -> Result<Sampled> {
    Ok(match f {
        Target::Line(g) => {
            let s = SampledFunction1D::from_fn(disc.cells, SampleMode::Midpoint, g)?;
            check_sampled(s.values(), |j| format!("t={}", s.midpoint(j)))?;
            Sampled::Line(s)
        }
        Target::Simplex(g) => {
            let grid = SimplexGrid::new(disc.simplex_resolution)?;
            let s = SampledFunctionSimplex::from_fn(grid, g)?;
            check_sampled(s.values(), |id| format!("cell {id}"))?;
            Sampled::Simplex(s)
        }
    })
}

/// Computes every coefficient of an x-independent operator.
pub fn prepare(f: &Target, n: u32, family: &CapacityFamily, disc: &Discretization) -> Result<PreparedOperator> {
    OperatorPlan::new(n, f.dim(), family, disc)?.apply(f)
}

/// `M_{n,Γ}(f)(x)`; point-dependent families are resolved at `x`.
pub fn mn_gamma(
    f: &Target,
    n: u32,
    x: &SimplexPoint,
    family: &CapacityFamily,
    disc: &Discretization,
) -> Result<OperatorOutput> {
    if x.dim() != f.dim() {
        return Err(Error::DimensionMismatch(format!(
            "function on dimension {}, point of dimension {}",
            f.dim(),
            x.dim()
        )));
    }
    prepare(f, n, &family.at(x)?, disc)?.evaluate(x)
}

fn line_point(x: f64) -> Result<SimplexPoint> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!("x = {x} outside [0, 1]")));
    }
    SimplexPoint::new(vec![x])
}

fn line_op(f: &Func1, n: u32, x: f64, family: &CapacityFamily, disc: &Discretization) -> Result<OperatorOutput> {
    mn_gamma(&Target::Line(f.clone()), n, &line_point(x)?, family, disc)
}

/// Possibility-measure operator `D_{n,Γ_n}` with `Γ_n = {P_{λ_{n,k}}}`.
pub fn dn_possibility(f: &Func1, n: u32, x: f64, disc: &Discretization) -> Result<OperatorOutput> {
    line_op(f, n, x, &CapacityFamily::Possibility, disc)
}

/// Ordinary `δ` coefficients for `k < n`, Choquet coefficient against `μ` at `k = n`.
pub fn dbar(f: &Func1, n: u32, x: f64, delta: &Capacity, mu: &Capacity, disc: &Discretization) -> Result<OperatorOutput> {
    let fam = CapacityFamily::two_measure(delta.clone(), mu.clone(), EndTerms::Upper)?;
    line_op(f, n, x, &fam, disc)
}

/// Choquet coefficient against `μ` at `k = 0` only.
pub fn dtilde(f: &Func1, n: u32, x: f64, delta: &Capacity, mu: &Capacity, disc: &Discretization) -> Result<OperatorOutput> {
    let fam = CapacityFamily::two_measure(delta.clone(), mu.clone(), EndTerms::Lower)?;
    line_op(f, n, x, &fam, disc)
}

/// Choquet coefficients against `μ` at `k = 0` and `k = n`.
pub fn dstar(f: &Func1, n: u32, x: f64, delta: &Capacity, mu: &Capacity, disc: &Discretization) -> Result<OperatorOutput> {
    let fam = CapacityFamily::two_measure(delta.clone(), mu.clone(), EndTerms::Both)?;
    line_op(f, n, x, &fam, disc)
}

/// `M(f − m) + m` for `f ≥ m`.
pub fn mstar(
    f: &Target,
    m_lower: f64,
    n: u32,
    x: &SimplexPoint,
    family: &CapacityFamily,
    disc: &Discretization,
) -> Result<f64> {
    let shifted = f.shift(-m_lower);
    match sample(&shifted, disc) {
        Err(Error::NegativeIntegrand { value, location }) => {
            return Err(Error::LowerBoundViolated {
                bound: m_lower,
                value: value + m_lower,
                location,
            })
        }
        Err(e) => return Err(e),
        Ok(_) => {}
    }
    Ok(mn_gamma(&shifted, n, x, family, disc)?.value + m_lower)
}

pub fn genuine_u(f: &Func1, n: u32, x: f64, family: &CapacityFamily, disc: &Discretization) -> Result<OperatorOutput> {
    if !matches!(family, CapacityFamily::Genuine { .. }) {
        return Err(Error::InvalidParameter("genuine_u needs a genuine family".into()));
    }
    line_op(f, n, x, family, disc)
}

/// The possibility-operator shape with one capacity `μ` in every term.
pub fn dn_single_mu(f: &Func1, n: u32, x: f64, mu: &Capacity, disc: &Discretization) -> Result<OperatorOutput> {
    line_op(f, n, x, &CapacityFamily::Constant(mu.clone()), disc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernstein::{classical_bernstein, classical_genuine, durrmeyer_borel};
    use crate::capacity::bump_peak;

    fn disc() -> Discretization {
        Discretization::default()
    }

    #[test]
    fn constants_are_fixed() {
        let one = Func1::e0();
        let mu = Capacity::sqrt_lebesgue();
        let sin = Capacity::sin_lebesgue();
        let leb = Capacity::LebesgueBorel;
        let genuine = CapacityFamily::Genuine {
            start: Capacity::dirac(0.0),
            end: mu.clone(),
            middle: vec![leb.clone()],
        };
        for x in [0.0, 0.3, 1.0] {
            let vals = [
                dn_possibility(&one, 5, x, &disc()).unwrap().value,
                dbar(&one, 5, x, &leb, &sin, &disc()).unwrap().value,
                dtilde(&one, 5, x, &leb, &sin, &disc()).unwrap().value,
                dstar(&one, 5, x, &leb, &sin, &disc()).unwrap().value,
                genuine_u(&one, 5, x, &genuine, &disc()).unwrap().value,
                dn_single_mu(&one, 5, x, &mu, &disc()).unwrap().value,
            ];
            for v in vals {
                assert!((v - 1.0).abs() < 1e-12, "{v}");
            }
        }
    }

    #[test]
    fn possibility_denominators_match_peak() {
        let out = dn_possibility(&Func1::e0(), 4, 0.5, &disc().with_route(ChoquetRoute::Continuous)).unwrap();
        for (k, den) in out.denominators.iter().enumerate() {
            let e = bump_peak(4, k as u32);
            assert!((den / e - 1.0).abs() < 1e-6, "k={k}: {den} vs {e}");
        }
        assert!((out.denominators[2] - 1.0 / 16.0).abs() < 1e-12);
    }

    #[test]
    fn possibility_endpoint_value() {
        // numerator of k = 0 is (C)∫ t(1−t)² dP_{λ_{2,0}} = 97/810, by an
        // independent high-precision evaluation of the level-set integral
        let cont = disc().with_route(ChoquetRoute::Continuous);
        let out = dn_possibility(&Func1::e1(), 2, 0.0, &cont).unwrap();
        assert!((out.numerators[0] - 97.0 / 810.0).abs() < 1e-8, "{}", out.numerators[0]);
        assert!((out.value - out.numerators[0] / 1.0).abs() < 1e-8);
        let end = dn_possibility(&Func1::e1(), 2, 1.0, &cont).unwrap();
        assert!((end.value - end.coefficients[2]).abs() < 1e-15);
    }

    #[test]
    fn dirac_family_reproduces_bernstein() {
        let f = Func1::new("exp", |t: f64| t.exp());
        let fam = CapacityFamily::all_dirac(6, 1).unwrap();
        for i in 0..=10 {
            let x = i as f64 / 10.0;
            let v = line_op(&f, 6, x, &fam, &disc()).unwrap().value;
            assert!((v - classical_bernstein(&f, 6, x).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn lebesgue_reductions() {
        let e1 = Func1::e1();
        let leb = Capacity::LebesgueBorel;
        let v = line_op(&e1, 2, 0.5, &CapacityFamily::Constant(leb.clone()), &disc()).unwrap().value;
        assert!((v - 0.5).abs() < 1e-12);
        let f = Func1::monomial(2);
        let slow = disc().without_fast_path();
        for x in [0.0, 0.25, 0.9] {
            let want = durrmeyer_borel(&f, 4, x, &leb, 2048).unwrap();
            for got in [
                dbar(&f, 4, x, &leb, &leb, &disc()).unwrap().value,
                dstar(&f, 4, x, &leb, &leb, &slow).unwrap().value,
                dn_single_mu(&f, 4, x, &leb, &slow).unwrap().value,
            ] {
                assert!((got - want).abs() < 2e-6, "{got} vs {want}");
            }
        }
    }

    #[test]
    fn dtilde_at_right_end_is_durrmeyer_coefficient() {
        // (1 − x)ⁿ vanishes at x = 1; ∫ t·t² / ∫ t² = (1/4)/(1/3)
        let v = dtilde(&Func1::e1(), 2, 1.0, &Capacity::LebesgueBorel, &Capacity::sin_lebesgue(), &disc())
            .unwrap()
            .value;
        assert!((v - 0.75).abs() < 1e-6, "{v}");
    }

    #[test]
    fn dominance_violation_rejected() {
        let err = dbar(&Func1::e1(), 2, 0.5, &Capacity::LebesgueBorel, &Capacity::sqrt_lebesgue(), &disc());
        assert!(matches!(err, Err(Error::DominanceViolated { .. })));
    }

    #[test]
    fn negative_integrand_rejected_and_shifted_operator_works() {
        let f = Func1::new("t-1/2", |t: f64| t - 0.5);
        let err = dn_possibility(&f, 3, 0.5, &disc());
        assert!(matches!(err, Err(Error::NegativeIntegrand { .. })));
        let fam = CapacityFamily::all_dirac(5, 1).unwrap();
        let x = SimplexPoint::new(vec![0.3]).unwrap();
        let v = mstar(&Target::Line(f.clone()), -0.5, 5, &x, &fam, &disc()).unwrap();
        assert!((v - classical_bernstein(&f, 5, 0.3).unwrap()).abs() < 1e-14);
        let bad = mstar(&Target::Line(f), -0.25, 5, &x, &fam, &disc());
        assert!(matches!(bad, Err(Error::LowerBoundViolated { .. })));
        let c = Target::Line(Func1::constant(-0.5));
        let v = mstar(&c, -0.5, 3, &x, &CapacityFamily::Possibility, &disc());
        // f − m ≡ 0 gives 0/den for every term
        assert!((v.unwrap() + 0.5).abs() < 1e-15);
    }

    #[test]
    fn mstar_with_zero_shift_is_mn_gamma() {
        let f = Target::Line(Func1::monomial(2));
        let x = SimplexPoint::new(vec![0.4]).unwrap();
        let fam = CapacityFamily::Constant(Capacity::sqrt_lebesgue());
        let a = mstar(&f, 0.0, 4, &x, &fam, &disc()).unwrap();
        let b = mn_gamma(&f, 4, &x, &fam, &disc()).unwrap().value;
        assert_eq!(a, b);
    }

    #[test]
    fn genuine_identity_with_dirac_start() {
        let f = Func1::monomial(2);
        let mu = Capacity::sqrt_lebesgue();
        let fam = CapacityFamily::Genuine {
            start: Capacity::dirac(0.0),
            end: mu,
            middle: vec![Capacity::LebesgueBorel],
        };
        let cont = disc().with_route(ChoquetRoute::Continuous);
        let out = genuine_u(&f, 2, 0.5, &fam, &cont).unwrap();
        let cn = out.coefficients[2];
        assert!((cn - 16.0 / 21.0).abs() < 1e-6, "{cn}");
        for x in [0.1, 0.5, 0.9] {
            let u = genuine_u(&f, 2, x, &fam, &cont).unwrap().value;
            let g = classical_genuine(&f, 2, x, 2048).unwrap();
            assert!((u - g - x * x * (cn - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_denominator_names_the_term() {
        let fam = CapacityFamily::PerIndex(vec![Capacity::dirac(1.0), Capacity::dirac(1.0)]);
        let err = line_op(&Func1::e1(), 1, 0.5, &fam, &disc()).unwrap_err();
        match err {
            Error::NotStrictlyPositive { term, .. } => assert!(term.contains("(1,0)")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn point_family_is_resolved_per_point() {
        let fam = CapacityFamily::PerPoint(PointFamily::new(|x: &SimplexPoint| {
            Ok(if x.coords()[0] < 0.5 {
                CapacityFamily::Constant(Capacity::LebesgueBorel)
            } else {
                CapacityFamily::all_dirac(3, 1)?
            })
        }));
        let f = Func1::monomial(2);
        let lo = line_op(&f, 3, 0.2, &fam, &disc()).unwrap().value;
        let hi = line_op(&f, 3, 0.8, &fam, &disc()).unwrap().value;
        assert!((lo - durrmeyer_borel(&f, 3, 0.2, &Capacity::LebesgueBorel, 2048).unwrap()).abs() < 1e-12);
        assert!((hi - classical_bernstein(&f, 3, 0.8).unwrap()).abs() < 1e-13);
        assert!(prepare(&Target::Line(f), 3, &fam, &disc()).is_err());
    }

    #[test]
    fn simplex_operator_fixes_constants() {
        let d = disc().with_simplex_resolution(16);
        let one = Target::Simplex(Func2::constant(1.0));
        let fam = CapacityFamily::Constant(Capacity::sqrt_lebesgue());
        let x = SimplexPoint::new(vec![0.2, 0.3]).unwrap();
        let v = mn_gamma(&one, 3, &x, &fam, &d).unwrap().value;
        assert!((v - 1.0).abs() < 1e-12);
        let fam = CapacityFamily::all_dirac(3, 2).unwrap();
        let f = Func2::new("x1^2", |p: [f64; 2]| p[0] * p[0]);
        let v = mn_gamma(&Target::Simplex(f.clone()), 3, &x, &fam, &d).unwrap().value;
        let b = crate::bernstein::classical_bernstein_simplex(&f, 3, &x).unwrap();
        assert!((v - b).abs() < 1e-13);
        assert!(dn_possibility(&Func1::e0(), 0, 0.5, &d).is_err());
    }
}
