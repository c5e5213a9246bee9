//! Upper bounds for K-functionals over a Bernstein smoothing ladder.

use rayon::prelude::*;

use crate::bernstein::{
    bernstein_derivative_bound, bernstein_gradient_bound_simplex, classical_bernstein_simplex,
    SimplexPoint,
};
use crate::capacity::Capacity;
use crate::choquet::{lp_choquet_functional, IntegralMethod};
use crate::error::{Error, Result};
use crate::function::{Func1, Func2, SampleMode, SampledFunction1D};
use crate::operators::Target;

/// Smoothing orders `m`; candidates are `g = B_m(f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothingLadder {
    orders: Vec<u32>,
}

impl Default for SmoothingLadder {
    /// `4, 8, …, 256`.
    fn default() -> Self {
        SmoothingLadder {
            orders: (2..=8).map(|e| 1 << e).collect(),
        }
    }
}

impl SmoothingLadder {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.is_empty() || orders.contains(&0) {
            return Err(Error::InvalidParameter("ladder orders must be positive and nonempty".into()));
        }
        Ok(SmoothingLadder { orders })
    }

    /// `4, 8, …, 64`; the simplex Bernstein sum grows quadratically in `m`.
    pub fn simplex_default() -> Self {
        SmoothingLadder {
            orders: (2..=6).map(|e| 1 << e).collect(),
        }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }
}

/// One smoothing candidate on `[0, 1]`.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub order: u32,
    /// Node values `f(k/m)`; the candidate is their Bernstein polynomial.
    nodes: Vec<f64>,
    /// `‖g′‖_C` bounded by `m·max|Δf(k/m)|`.
    pub derivative_bound: f64,
}

impl Candidate {
    pub fn new(f: &Func1, order: u32) -> Self {
        let nodes = (0..=order).map(|k| f.eval(k as f64 / order as f64)).collect();
        Candidate {
            order,
            nodes,
            derivative_bound: bernstein_derivative_bound(f, order),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let m = self.order;
        // de Casteljau
        let mut b = self.nodes.clone();
        for r in 1..=m as usize {
            for i in 0..=(m as usize - r) {
                b[i] = (1.0 - x) * b[i] + x * b[i + 1];
            }
        }
        b[0]
    }

    pub fn func(&self) -> Func1 {
        let c = self.clone();
        Func1::new(format!("B_{}(f)", self.order), move |x: f64| c.eval(x))
    }
}

pub fn candidates(f: &Func1, ladder: &SmoothingLadder) -> Vec<Candidate> {
    ladder.orders.par_iter().map(|&m| Candidate::new(f, m)).collect()
}

fn line_sup_distance(f: &Func1, g: &Candidate, nodes: usize) -> f64 {
    (0..=nodes)
        .into_par_iter()
        .map(|i| {
            let x = i as f64 / nodes as f64;
            (f.eval(x) - g.eval(x)).abs()
        })
        .reduce(|| 0.0, f64::max)
}

/// `(C)∫|f − g|^p dc` to the power `1/p`, with `|f − g|` sampled on `cells`.
pub fn lp_distance(f: &Func1, g: &Func1, c: &Capacity, p: f64, cells: usize) -> Result<f64> {
    let (f, g) = (f.clone(), g.clone());
    let diff = Func1::new("|f-g|", move |t: f64| (f.eval(t) - g.eval(t)).abs());
    let s = SampledFunction1D::from_fn(cells, SampleMode::Midpoint, &diff)?;
    lp_choquet_functional(&s, c, p, IntegralMethod::SortedLevels)
}

/// `min over the ladder of ‖f − g‖_C + t‖∇g‖_C`, sup norm over a grid with
/// `nodes` subdivisions.
pub fn k_upper(f: &Target, t: f64, ladder: &SmoothingLadder, nodes: usize) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!("t = {t} must be >= 0")));
    }
    if nodes == 0 {
        return Err(Error::InvalidParameter("sup-norm grid needs nodes".into()));
    }
    match f {
        Target::Line(f) => Ok(candidates(f, ladder)
            .iter()
            .map(|g| line_sup_distance(f, g, nodes) + t * g.derivative_bound)
            .fold(f64::INFINITY, f64::min)),
        Target::Simplex(f) => {
            let mut best = f64::INFINITY;
            for &m in &ladder.orders {
                let dist = simplex_sup_distance(f, m, nodes)?;
                best = best.min(dist + t * bernstein_gradient_bound_simplex(f, m)?);
            }
            Ok(best)
        }
    }
}

fn simplex_sup_distance(f: &Func2, m: u32, l: usize) -> Result<f64> {
    let points: Vec<[f64; 2]> = (0..=l)
        .flat_map(|i| (0..=(l - i)).map(move |j| [i as f64 / l as f64, j as f64 / l as f64]))
        .collect();
    points
        .par_iter()
        .map(|p| {
            let x = SimplexPoint::new(p.to_vec())?;
            Ok((f.eval(*p) - classical_bernstein_simplex(f, m, &x)?).abs())
        })
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
}

/// Norms of one candidate, shared by `K̄` and the two `K` bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateNorms {
    pub order: u32,
    pub mu: f64,
    pub delta: f64,
    pub derivative_bound: f64,
}

pub fn candidate_norms(
    f: &Func1,
    mu: &Capacity,
    delta: &Capacity,
    p: f64,
    ladder: &SmoothingLadder,
    cells: usize,
) -> Result<Vec<CandidateNorms>> {
    if !(p >= 1.0) {
        return Err(Error::InvalidParameter(format!("p = {p} must be >= 1")));
    }
    candidates(f, ladder)
        .par_iter()
        .map(|g| {
            let gf = g.func();
            Ok(CandidateNorms {
                order: g.order,
                mu: lp_distance(f, &gf, mu, p, cells)?,
                delta: lp_distance(f, &gf, delta, p, cells)?,
                derivative_bound: g.derivative_bound,
            })
        })
        .collect()
}

/// `K̄` upper bound from precomputed candidate norms.
pub fn kbar_of_norms(norms: &[CandidateNorms], t: f64) -> f64 {
    norms
        .iter()
        .map(|c| c.mu + c.delta + t * c.derivative_bound)
        .fold(f64::INFINITY, f64::min)
}

/// `min over the ladder of ‖f−g‖_{L^p_μ} + ‖f−g‖_{L^p_δ} + t‖g′‖_C`.
pub fn kbar_upper(
    f: &Func1,
    t: f64,
    mu: &Capacity,
    delta: &Capacity,
    p: f64,
    ladder: &SmoothingLadder,
    cells: usize,
) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!("t = {t} must be >= 0")));
    }
    Ok(kbar_of_norms(&candidate_norms(f, mu, delta, p, ladder, cells)?, t))
}

/// `2K(f; t/2)_μ ≤ K̄(f; t) ≤ 2K(f; t)_δ` evaluated on one shared candidate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SandwichRow {
    pub order: u32,
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
    pub holds: bool,
}

const SANDWICH_SLACK: f64 = 1e-12;

pub fn sandwich_rows(norms: &[CandidateNorms], t: f64) -> Vec<SandwichRow> {
    norms
        .iter()
        .map(|c| {
            let lower = 2.0 * (c.mu + 0.5 * t * c.derivative_bound);
            let middle = c.mu + c.delta + t * c.derivative_bound;
            let upper = 2.0 * (c.delta + t * c.derivative_bound);
            let slack = SANDWICH_SLACK * (1.0 + upper.abs());
            SandwichRow {
                order: c.order,
                lower,
                middle,
                upper,
                holds: lower <= middle + slack && middle <= upper + slack,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidate_matches_bernstein() {
        let f = Func1::new("exp", |t: f64| t.exp());
        let g = Candidate::new(&f, 16);
        for x in [0.0, 0.3, 0.77, 1.0] {
            assert!((g.eval(x) - crate::bernstein::classical_bernstein(&f, 16, x).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn k_upper_of_linear_function() {
        // B_m fixes e₁, so the bound is t·1 for every candidate
        let f = Target::Line(Func1::e1());
        let k = k_upper(&f, 0.2, &SmoothingLadder::default(), 512).unwrap();
        assert!((k - 0.2).abs() < 1e-12);
        assert!(k_upper(&f, 0.0, &SmoothingLadder::default(), 512).unwrap() < 1e-12);
    }

    #[test]
    fn larger_ladder_never_increases_bounds() {
        let f = Func1::new("|t-1/2|", |t: f64| (t - 0.5).abs());
        let small = SmoothingLadder::new(vec![4, 8]).unwrap();
        let big = SmoothingLadder::default();
        for t in [0.0, 0.01, 0.1] {
            let a = k_upper(&Target::Line(f.clone()), t, &small, 512).unwrap();
            let b = k_upper(&Target::Line(f.clone()), t, &big, 512).unwrap();
            assert!(b <= a);
            let mu = Capacity::sin_lebesgue();
            let delta = Capacity::LebesgueBorel;
            let a = kbar_upper(&f, t, &mu, &delta, 1.0, &small, 256).unwrap();
            let b = kbar_upper(&f, t, &mu, &delta, 1.0, &big, 256).unwrap();
            assert!(b <= a);
        }
    }

    #[test]
    fn sandwich_holds_for_dominated_pair() {
        let f = Func1::monomial(2);
        for p in [1.0, 2.0] {
            let norms = candidate_norms(
                &f,
                &Capacity::sin_lebesgue(),
                &Capacity::LebesgueBorel,
                p,
                &SmoothingLadder::default(),
                512,
            )
            .unwrap();
            for t in [0.0, 0.05, 0.5] {
                assert!(sandwich_rows(&norms, t).iter().all(|r| r.holds));
            }
        }
    }

    #[test]
    fn simplex_k_upper() {
        let f = Target::Simplex(Func2::new("x1+x2", |p: [f64; 2]| p[0] + p[1]));
        let k = k_upper(&f, 0.1, &SmoothingLadder::new(vec![4]).unwrap(), 16).unwrap();
        // linear functions are fixed; ‖∇g‖ = max of the partials = 1
        assert!((k - 0.1).abs() < 1e-12, "{k}");
        assert!(candidate_norms(&Func1::e1(), &Capacity::LebesgueBorel, &Capacity::LebesgueBorel, 0.5, &SmoothingLadder::default(), 8).is_err());
    }
}
