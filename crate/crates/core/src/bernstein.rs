//! Bernstein bases on `[0, 1]` and on the 2-simplex, and the classical
//! comparison operators.

use std::fmt;

use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::function::{Func1, Func2};
use crate::sets::SimplexGrid;

/// Above this degree binomial and multinomial factors are formed in log space.
pub const LOG_SPACE_DEGREE: u32 = 50;

/// Normalized denominators below this are reported as a strict-positivity failure.
pub const DENOMINATOR_GUARD: f64 = 1e-14;

/// `(α₀, α₁, …, α_d)` with `|α| = Σ αᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(components: Vec<u32>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::InvalidParameter(
                "a multi-index needs at least two components".into(),
            ));
        }
        Ok(MultiIndex(components))
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// `α / |α|` without the leading component, i.e. the lattice point in `S^d`.
    pub fn node(&self) -> Vec<f64> {
        let n = self.order() as f64;
        self.0[1..].iter().map(|a| *a as f64 / n).collect()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A point of `S^d = {xᵢ ≥ 0, Σ xᵢ ≤ 1}` given by `(x₁, …, x_d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint(Vec<f64>);

impl SimplexPoint {
    const SLACK: f64 = 1e-12;

    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidParameter("empty simplex point".into()));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite(format!("simplex point {coords:?}")));
        }
        let sum: f64 = coords.iter().sum();
        if coords.iter().any(|x| *x < -Self::SLACK) || sum > 1.0 + Self::SLACK {
            return Err(Error::InvalidParameter(format!(
                "{coords:?} is outside the standard simplex"
            )));
        }
        Ok(SimplexPoint(coords.iter().map(|x| x.max(0.0)).collect()))
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `(1 − Σ xᵢ, x₁, …, x_d)`.
    pub fn barycentric(&self) -> Vec<f64> {
        let x0 = (1.0 - self.0.iter().sum::<f64>()).max(0.0);
        std::iter::once(x0).chain(self.0.iter().cloned()).collect()
    }
}

/// All `α` with `|α| = n` in `d + 1` components, ordered lexicographically in
/// `(α₁, …, α_d)`.
pub fn enumerate_multi_indices(n: u32, d: usize) -> Result<Vec<MultiIndex>> {
    if n == 0 {
        return Err(Error::InvalidParameter("degree n must be at least 1".into()));
    }
    match d {
        1 => Ok((0..=n).map(|k| MultiIndex(vec![n - k, k])).collect()),
        2 => {
            let mut out = Vec::with_capacity(((n + 1) * (n + 2) / 2) as usize);
            for a1 in 0..=n {
                for a2 in 0..=n - a1 {
                    out.push(MultiIndex(vec![n - a1 - a2, a1, a2]));
                }
            }
            Ok(out)
        }
        _ => Err(Error::InvalidParameter(format!(
            "dimension {d} not supported; use 1 or 2"
        ))),
    }
}

pub fn ln_binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    (1..=k)
        .map(|i| ((n - k + i) as f64 / i as f64).ln())
        .sum()
}

pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    if n > LOG_SPACE_DEGREE {
        return ln_binomial(n, k).exp();
    }
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 1..=k {
        // stays integral at each step
        c = c * (n - k + i) as f64 / i as f64;
    }
    c
}

fn ln_multinomial(alpha: &[u32]) -> f64 {
    let mut rest: u32 = alpha.iter().sum();
    let mut acc = 0.0;
    for a in alpha {
        acc += ln_binomial(rest, *a);
        rest -= a;
    }
    acc
}

fn multinomial(alpha: &[u32]) -> f64 {
    let mut rest: u32 = alpha.iter().sum();
    let mut acc = 1.0;
    for a in alpha {
        acc *= binomial(rest, *a);
        rest -= a;
    }
    acc
}

/// `Π yᵢ^{αᵢ}` for barycentric coordinates `y`, with `0⁰ = 1`.
fn monomial(alpha: &[u32], y: &[f64]) -> f64 {
    alpha.iter().zip(y).map(|(a, v)| v.powi(*a as i32)).product()
}

fn ln_monomial(alpha: &[u32], y: &[f64]) -> f64 {
    alpha
        .iter()
        .zip(y)
        .filter(|(a, _)| **a > 0)
        .map(|(a, v)| *a as f64 * v.ln())
        .sum()
}

/// `p_{n,k}(x) = C(n,k) x^k (1−x)^{n−k}`.
pub fn bernstein_basis_1d(n: u32, k: u32, x: f64) -> Result<f64> {
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
    }
    Ok(p_nk(n, k, x))
}

#[inline]
pub(crate) fn p_nk(n: u32, k: u32, x: f64) -> f64 {
    let alpha = [n - k, k];
    let y = [1.0 - x, x];
    if n > LOG_SPACE_DEGREE {
        if (k > 0 && x <= 0.0) || (k < n && x >= 1.0) {
            return 0.0;
        }
        (ln_binomial(n, k) + ln_monomial(&alpha, &y)).exp()
    } else {
        binomial(n, k) * monomial(&alpha, &y)
    }
}

/// `(B_α(x), P_α(x))` with `P_α = Π yᵢ^{αᵢ}` and `B_α = (|α|; α) P_α`.
pub fn basis_simplex(alpha: &MultiIndex, x: &SimplexPoint) -> Result<(f64, f64)> {
    if alpha.dim() != x.dim() {
        return Err(Error::DimensionMismatch(format!(
            "multi-index {alpha} against a point of dimension {}",
            x.dim()
        )));
    }
    let y = x.barycentric();
    let a = alpha.components();
    let p = monomial(a, &y);
    let b = if alpha.order() > LOG_SPACE_DEGREE {
        if p == 0.0 {
            0.0
        } else {
            (ln_multinomial(a) + ln_monomial(a, &y)).exp()
        }
    } else {
        multinomial(a) * p
    };
    Ok((b, p))
}

/// `max_{S^d} P_α = Π (αᵢ/n)^{αᵢ}`.
pub fn weight_peak(alpha: &[u32]) -> f64 {
    let n: u32 = alpha.iter().sum();
    let nf = n as f64;
    alpha
        .iter()
        .filter(|a| **a > 0)
        .map(|a| (*a as f64 / nf).powi(*a as i32))
        .product()
}

/// `P_α(y) / max P_α`, formed in log space for high degree.
pub fn normalized_weight(alpha: &[u32], y: &[f64]) -> f64 {
    let n: u32 = alpha.iter().sum();
    if n <= LOG_SPACE_DEGREE {
        return (monomial(alpha, y) / weight_peak(alpha)).min(1.0);
    }
    let nf = n as f64;
    let mut acc = 0.0;
    for (a, v) in alpha.iter().zip(y) {
        if *a == 0 {
            continue;
        }
        if *v <= 0.0 {
            return 0.0;
        }
        acc += *a as f64 * (v * nf / *a as f64).ln();
    }
    acc.exp().min(1.0)
}

pub fn classical_bernstein(f: &Func1, n: u32, x: f64) -> Result<f64> {
    check_unit(x)?;
    if n == 0 {
        return Err(Error::InvalidParameter("degree n must be at least 1".into()));
    }
    Ok((0..=n).map(|k| p_nk(n, k, x) * f.eval(k as f64 / n as f64)).sum())
}

pub fn classical_bernstein_simplex(f: &Func2, n: u32, x: &SimplexPoint) -> Result<f64> {
    let mut acc = 0.0;
    for alpha in enumerate_multi_indices(n, 2)? {
        let node = alpha.node();
        acc += basis_simplex(&alpha, x)?.0 * f.eval([node[0], node[1]]);
    }
    Ok(acc)
}

/// `(B_n f)'(x) = n Σ_{k<n} [f((k+1)/n) − f(k/n)] p_{n−1,k}(x)`.
pub fn bernstein_derivative(f: &Func1, n: u32, x: f64) -> Result<f64> {
    check_unit(x)?;
    if n == 0 {
        return Ok(0.0);
    }
    let nf = n as f64;
    Ok(nf
        * (0..n)
            .map(|k| {
                (f.eval((k + 1) as f64 / nf) - f.eval(k as f64 / nf)) * p_nk(n - 1, k, x)
            })
            .sum::<f64>())
}

/// `n max_k |f((k+1)/n) − f(k/n)|`, an upper bound of `‖(B_n f)'‖_C` by the
/// derivative formula and the partition of unity.
pub fn bernstein_derivative_bound(f: &Func1, n: u32) -> f64 {
    let nf = n as f64;
    (0..n)
        .map(|k| (f.eval((k + 1) as f64 / nf) - f.eval(k as f64 / nf)).abs())
        .fold(0.0, f64::max)
        * nf
}

/// `max_i n max_β |f((β+eᵢ)/n) − f((β+e₀)/n)|` over `|β| = n − 1`, an upper
/// bound of `max_i ‖∂ᵢ B_n f‖_C` on the 2-simplex.
pub fn bernstein_gradient_bound_simplex(f: &Func2, n: u32) -> Result<f64> {
    if n < 2 {
        // B_1 f is affine: ∂ᵢ = f(eᵢ) − f(0)
        let f0 = f.eval([0.0, 0.0]);
        return Ok((f.eval([1.0, 0.0]) - f0).abs().max((f.eval([0.0, 1.0]) - f0).abs()));
    }
    let nf = n as f64;
    let mut best: f64 = 0.0;
    for beta in enumerate_multi_indices(n - 1, 2)? {
        let b = beta.components();
        let base = [b[1] as f64 / nf, b[2] as f64 / nf];
        let at0 = f.eval(base);
        let d1 = f.eval([base[0] + 1.0 / nf, base[1]]) - at0;
        let d2 = f.eval([base[0], base[1] + 1.0 / nf]) - at0;
        best = best.max(d1.abs()).max(d2.abs());
    }
    Ok(nf * best)
}

fn check_unit(x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!("x = {x} outside [0, 1]")));
    }
    Ok(())
}

/// Midpoint quadrature of `f·w` against an additive capacity on `cells` cells;
/// point masses evaluate `f·w` at the point.
pub(crate) fn additive_integral_1d(
    f: &Func1,
    w: impl Fn(f64) -> f64,
    c: &Capacity,
    cells: usize,
) -> Result<f64> {
    let (inner, factor) = c.unscaled();
    match inner {
        Capacity::Dirac(p) if p.len() == 1 => Ok(factor * f.eval(p[0]) * w(p[0])),
        Capacity::LebesgueBorel | Capacity::DistortedLebesgue(crate::capacity::Distortion::Identity) => {
            let m = cells as f64;
            let sum: f64 = (0..cells)
                .map(|j| {
                    let t = (j as f64 + 0.5) / m;
                    f.eval(t) * w(t)
                })
                .sum();
            Ok(factor * sum / m)
        }
        _ => Err(Error::Unsupported(format!(
            "ordinary quadrature needs an additive capacity on [0, 1], got {c}"
        ))),
    }
}

pub(crate) fn additive_integral_simplex(
    f: &Func2,
    w: impl Fn([f64; 2]) -> f64,
    c: &Capacity,
    grid: SimplexGrid,
) -> Result<f64> {
    let (inner, factor) = c.unscaled();
    match inner {
        Capacity::Dirac(p) if p.len() == 2 => {
            let q = [p[0], p[1]];
            Ok(factor * f.eval(q) * w(q))
        }
        Capacity::LebesgueBorel | Capacity::DistortedLebesgue(crate::capacity::Distortion::Identity) => {
            let sum: f64 = (0..grid.cell_count())
                .map(|id| {
                    let q = grid.centroid(id).expect("id in range");
                    f.eval(q) * w(q)
                })
                .sum();
            Ok(factor * sum * grid.cell_area())
        }
        _ => Err(Error::Unsupported(format!(
            "ordinary quadrature needs an additive capacity on the simplex, got {c}"
        ))),
    }
}

fn ratio(num: f64, den: f64, term: impl FnOnce() -> String) -> Result<f64> {
    if !(den > DENOMINATOR_GUARD) {
        return Err(Error::NotStrictlyPositive {
            term: term(),
            denominator: den,
        });
    }
    Ok(num / den)
}

/// Genuine Bernstein-Durrmeyer operator `G_n` with Lebesgue middle
/// coefficients by midpoint quadrature on `cells` cells.
pub fn classical_genuine(f: &Func1, n: u32, x: f64, cells: usize) -> Result<f64> {
    check_unit(x)?;
    Ok(combine(&classical_genuine_coefficients(f, n, cells)?, n, x))
}

/// Coefficients `f(0), c_1, …, c_{n−1}, f(1)` of [`classical_genuine`],
/// for evaluating at many points.
pub fn classical_genuine_coefficients(f: &Func1, n: u32, cells: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidParameter("genuine operator needs n >= 2".into()));
    }
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(f.eval(0.0));
    for k in 1..n {
        let alpha = [n - 1 - k, k - 1];
        let w = |t: f64| normalized_weight(&alpha, &[1.0 - t, t]);
        let num = additive_integral_1d(f, w, &Capacity::LebesgueBorel, cells)?;
        let den = additive_integral_1d(&Func1::e0(), w, &Capacity::LebesgueBorel, cells)?;
        out.push(ratio(num, den, || format!("k={k}"))?);
    }
    out.push(f.eval(1.0));
    Ok(out)
}

/// `Σ_k p_{n,k}(x) c_k`.
pub fn combine(coefficients: &[f64], n: u32, x: f64) -> f64 {
    coefficients.iter().enumerate().map(|(k, c)| p_nk(n, k as u32, x) * c).sum()
}

/// Durrmeyer operator with every coefficient an ordinary integral against `δ`.
pub fn durrmeyer_borel(f: &Func1, n: u32, x: f64, delta: &Capacity, cells: usize) -> Result<f64> {
    check_unit(x)?;
    Ok(combine(&durrmeyer_borel_coefficients(f, n, delta, cells)?, n, x))
}

pub fn durrmeyer_borel_coefficients(f: &Func1, n: u32, delta: &Capacity, cells: usize) -> Result<Vec<f64>> {
    if !delta.flags().additive {
        return Err(Error::InvalidParameter(format!("{delta} is not additive")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("degree n must be at least 1".into()));
    }
    (0..=n)
        .map(|k| {
            let alpha = [n - k, k];
            let w = |t: f64| normalized_weight(&alpha, &[1.0 - t, t]);
            let num = additive_integral_1d(f, w, delta, cells)?;
            let den = additive_integral_1d(&Func1::e0(), w, delta, cells)?;
            ratio(num, den, || format!("k={k}"))
        })
        .collect()
}

pub fn durrmeyer_borel_simplex(
    f: &Func2,
    n: u32,
    x: &SimplexPoint,
    delta: &Capacity,
    grid: SimplexGrid,
) -> Result<f64> {
    if !delta.flags().additive {
        return Err(Error::InvalidParameter(format!("{delta} is not additive")));
    }
    let one = Func2::constant(1.0);
    let mut acc = 0.0;
    for alpha in enumerate_multi_indices(n, 2)? {
        let a = alpha.components().to_vec();
        let w = |q: [f64; 2]| normalized_weight(&a, &[1.0 - q[0] - q[1], q[0], q[1]]);
        let num = additive_integral_simplex(f, w, delta, grid)?;
        let den = additive_integral_simplex(&one, w, delta, grid)?;
        acc += basis_simplex(&alpha, x)?.0 * ratio(num, den, || alpha.to_string())?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_examples() {
        let one = enumerate_multi_indices(1, 1).unwrap();
        assert_eq!(one, vec![MultiIndex(vec![1, 0]), MultiIndex(vec![0, 1])]);
        assert_eq!(enumerate_multi_indices(2, 2).unwrap().len(), 6);
        let five = enumerate_multi_indices(5, 1).unwrap();
        assert_eq!(five.len(), 6);
        for (k, a) in five.iter().enumerate() {
            assert_eq!(a.components()[1] as usize, k);
        }
        assert!(enumerate_multi_indices(3, 3).is_err());
        assert!(enumerate_multi_indices(0, 1).is_err());
        let mut all = enumerate_multi_indices(7, 2).unwrap();
        assert_eq!(all.len(), 36);
        all.dedup();
        assert_eq!(all.len(), 36);
    }

    #[test]
    fn basis_examples() {
        assert_eq!(bernstein_basis_1d(2, 1, 0.5).unwrap(), 0.5);
        assert!(bernstein_basis_1d(2, 3, 0.5).is_err());
        let s: f64 = (0..=10).map(|k| bernstein_basis_1d(10, k, 0.3).unwrap()).sum();
        assert!((s - 1.0).abs() < 1e-12);
        let alpha = MultiIndex::new(vec![1, 1, 0]).unwrap();
        let x = SimplexPoint::new(vec![0.2, 0.3]).unwrap();
        let (b, p) = basis_simplex(&alpha, &x).unwrap();
        assert!((b - 0.2).abs() < 1e-15 && (p - 0.1).abs() < 1e-15);
    }

    #[test]
    fn partition_of_unity_up_to_high_degree() {
        for n in [1u32, 7, 50, 51, 120, 256] {
            for i in 0..=100 {
                let x = i as f64 / 100.0;
                let s: f64 = (0..=n).map(|k| p_nk(n, k, x)).sum();
                assert!((s - 1.0).abs() < 1e-12, "n={n} x={x} sum={s}");
            }
        }
        for n in [3u32, 60] {
            let alphas = enumerate_multi_indices(n, 2).unwrap();
            for (i, j) in [(0, 0), (3, 5), (10, 0), (2, 2)] {
                let x = SimplexPoint::new(vec![i as f64 / 10.0, j as f64 / 10.0]).unwrap();
                let s: f64 = alphas.iter().map(|a| basis_simplex(a, &x).unwrap().0).sum();
                assert!((s - 1.0).abs() < 1e-12, "n={n} sum={s}");
            }
        }
    }

    #[test]
    fn bernstein_examples() {
        assert!((classical_bernstein(&Func1::e1(), 5, 0.3).unwrap() - 0.3).abs() < 1e-15);
        assert!((classical_bernstein(&Func1::monomial(2), 2, 0.5).unwrap() - 0.375).abs() < 1e-15);
        let c = Func1::constant(2.5);
        assert!((classical_bernstein(&c, 9, 0.71).unwrap() - 2.5).abs() < 1e-14);
        let x = SimplexPoint::new(vec![0.2, 0.5]).unwrap();
        let lin = Func2::new("x1+x2", |p: [f64; 2]| p[0] + p[1]);
        assert!((classical_bernstein_simplex(&lin, 4, &x).unwrap() - 0.7).abs() < 1e-14);
    }

    #[test]
    fn convex_functions_lie_below_bernstein() {
        let f = Func1::new("exp", |t: f64| t.exp());
        for i in 1..100 {
            let x = i as f64 / 100.0;
            assert!(classical_bernstein(&f, 12, x).unwrap() > f.eval(x));
        }
    }

    #[test]
    fn derivative_formula_and_bound() {
        let f = Func1::monomial(3);
        let n = 6;
        let h = 1e-6;
        for x in [0.1, 0.5, 0.8] {
            let fd = (classical_bernstein(&f, n, x + h).unwrap() - classical_bernstein(&f, n, x - h).unwrap()) / (2.0 * h);
            assert!((bernstein_derivative(&f, n, x).unwrap() - fd).abs() < 1e-7);
        }
        let bound = bernstein_derivative_bound(&f, n);
        for i in 0..=100 {
            assert!(bernstein_derivative(&f, n, i as f64 / 100.0).unwrap().abs() <= bound + 1e-12);
        }
        let g = Func2::new("x1^2", |p: [f64; 2]| p[0] * p[0]);
        // ∂₁ B_n(x1²) = 2x1(1 − 1/n) + 1/n ≤ 2 − 1/n
        let gb = bernstein_gradient_bound_simplex(&g, 4).unwrap();
        assert!((gb - 1.75).abs() < 1e-12, "{gb}");
    }

    #[test]
    fn classical_integral_operators() {
        let g = classical_genuine(&Func1::e0(), 4, 0.37, 256).unwrap();
        assert!((g - 1.0).abs() < 1e-12);
        // genuine operators reproduce linear functions; midpoint error is O(h²)
        let g1 = classical_genuine(&Func1::e1(), 4, 0.25, 2048).unwrap();
        assert!((g1 - 0.25).abs() < 1e-6, "{g1}");
        let d1 = durrmeyer_borel(&Func1::e1(), 2, 0.5, &Capacity::LebesgueBorel, 2048).unwrap();
        assert!((d1 - 0.5).abs() < 1e-12);
        let d0 = durrmeyer_borel(&Func1::e0(), 6, 0.2, &Capacity::LebesgueBorel, 64).unwrap();
        assert!((d0 - 1.0).abs() < 1e-12);
        assert!(durrmeyer_borel(&Func1::e0(), 2, 0.5, &Capacity::sqrt_lebesgue(), 64).is_err());
        // a point mass where p_{2,0} vanishes
        let err = durrmeyer_borel(&Func1::e0(), 2, 0.5, &Capacity::dirac(1.0), 64).unwrap_err();
        assert!(matches!(err, Error::NotStrictlyPositive { .. }));
        assert!(classical_genuine(&Func1::e0(), 1, 0.5, 64).is_err());
    }

    #[test]
    fn simplex_durrmeyer_fixes_constants() {
        let grid = SimplexGrid::new(16).unwrap();
        let x = SimplexPoint::new(vec![0.1, 0.6]).unwrap();
        let v = durrmeyer_borel_simplex(&Func2::constant(1.0), 3, &x, &Capacity::LebesgueBorel, grid).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn simplex_points_validated() {
        assert!(SimplexPoint::new(vec![0.7, 0.5]).is_err());
        assert!(SimplexPoint::new(vec![-0.1, 0.5]).is_err());
        assert_eq!(SimplexPoint::new(vec![0.25, 0.25]).unwrap().barycentric(), vec![0.5, 0.25, 0.25]);
    }
}
