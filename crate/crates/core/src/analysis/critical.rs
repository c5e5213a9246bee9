//! Closed-form maximization of `|t − x|·t^k(1−t)^{n−k}` over `[0, 1]`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedDistanceSup {
    pub t1: f64,
    pub t2: f64,
    /// The discriminant `(nx+k+1)² − 4kx(n+1)`.
    pub discriminant: f64,
    pub value: f64,
}

/// `tᵃ` with `0⁰ = 1`.
fn pow0(t: f64, a: u32) -> f64 {
    if a == 0 {
        1.0
    } else {
        t.powi(a as i32)
    }
}

fn weight(n: u32, k: u32, t: f64) -> f64 {
    pow0(t, k) * pow0(1.0 - t, n - k)
}

fn check(n: u32, k: u32, x: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n} must be >= 2")));
    }
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!("x = {x} outside [0, 1]")));
    }
    Ok(())
}

/// Critical points `t₁ ≤ x ≤ t₂` of `(t − x)t^k(1−t)^{n−k}` and the maximum
/// of its absolute value.
pub fn weighted_distance_sup(n: u32, k: u32, x: f64) -> Result<WeightedDistanceSup> {
    check(n, k, x)?;
    let (nf, kf) = (n as f64, k as f64);
    let b = nf * x + kf + 1.0;
    let disc = b * b - 4.0 * kf * x * (nf + 1.0);
    let root = disc.max(0.0).sqrt();
    let t1 = ((b - root) / (2.0 * (nf + 1.0))).clamp(0.0, x);
    let t2 = ((b + root) / (2.0 * (nf + 1.0))).clamp(x, 1.0);
    let value = ((t2 - x) * weight(n, k, t2)).max((x - t1) * weight(n, k, t1));
    Ok(WeightedDistanceSup {
        t1,
        t2,
        discriminant: disc,
        value,
    })
}

/// Maximum of `|t − x|·t^k(1−t)^{n−k}` over `points` equispaced nodes.
pub fn weighted_distance_brute(n: u32, k: u32, x: f64, points: usize) -> Result<f64> {
    check(n, k, x)?;
    if points < 2 {
        return Err(Error::InvalidParameter("need at least two grid points".into()));
    }
    let h = 1.0 / (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            let t = i as f64 * h;
            (t - x).abs() * weight(n, k, t)
        })
        .fold(0.0, f64::max))
}
