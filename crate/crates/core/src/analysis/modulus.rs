//! Grid moduli of continuity.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::function::{Func1, Func2};
use crate::operators::Target;

/// `ω₁(f; δ)` for every grid offset, with a running maximum over distance.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusTable {
    distances: Vec<f64>,
    prefix_max: Vec<f64>,
}

const DISTANCE_SLACK: f64 = 1e-12;

impl ModulusTable {
    /// Pairs of nodes `i/g` on `[0, 1]`.
    pub fn line(f: &Func1, g: usize) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidParameter("modulus grid needs at least one interval".into()));
        }
        let vals: Vec<f64> = (0..=g).map(|i| f.eval(i as f64 / g as f64)).collect();
        let per_offset: Vec<f64> = (0..=g)
            .into_par_iter()
            .map(|s| {
                vals.iter()
                    .zip(&vals[s..])
                    .map(|(a, b)| (b - a).abs())
                    .fold(0.0, f64::max)
            })
            .collect();
        let distances = (0..=g).map(|s| s as f64 / g as f64).collect();
        Ok(Self::from_offsets(distances, per_offset))
    }

    /// Pairs of lattice points `(i/l, j/l)`, `i + j ≤ l`, Euclidean distance.
    pub fn simplex(f: &Func2, l: usize) -> Result<Self> {
        if l == 0 {
            return Err(Error::InvalidParameter("modulus lattice needs positive resolution".into()));
        }
        let li = l as i64;
        let h = 1.0 / l as f64;
        let mut vals = vec![f64::NAN; (l + 1) * (l + 1)];
        for i in 0..=l {
            for j in 0..=(l - i) {
                vals[i * (l + 1) + j] = f.eval([i as f64 * h, j as f64 * h]);
            }
        }
        let at = |i: i64, j: i64| -> Option<f64> {
            if i < 0 || j < 0 || i + j > li {
                None
            } else {
                Some(vals[(i * (li + 1) + j) as usize])
            }
        };
        // half the offsets suffice: o and −o give the same pairs
        let offsets: Vec<(i64, i64)> = (0..=li)
            .flat_map(|a| (-li..=li).map(move |b| (a, b)))
            .filter(|&(a, b)| a > 0 || b >= 0)
            .filter(|&(a, b)| a + b.max(0) <= li && a.max(-b) <= li)
            .collect();
        let maxima: Vec<f64> = offsets
            .par_iter()
            .map(|&(a, b)| {
                let mut m: f64 = 0.0;
                for i in 0..=li {
                    for j in 0..=(li - i) {
                        if let (Some(p), Some(q)) = (at(i, j), at(i + a, j + b)) {
                            m = m.max((q - p).abs());
                        }
                    }
                }
                m
            })
            .collect();
        let distances = offsets
            .iter()
            .map(|&(a, b)| ((a * a + b * b) as f64).sqrt() * h)
            .collect();
        Ok(Self::from_offsets(distances, maxima))
    }

    pub fn for_target(f: &Target, resolution: usize) -> Result<Self> {
        match f {
            Target::Line(g) => Self::line(g, resolution),
            Target::Simplex(g) => Self::simplex(g, resolution),
        }
    }

    fn from_offsets(distances: Vec<f64>, maxima: Vec<f64>) -> Self {
        let mut order: Vec<usize> = (0..distances.len()).collect();
        order.sort_by(|&a, &b| distances[a].total_cmp(&distances[b]));
        let mut running: f64 = 0.0;
        let mut prefix_max = Vec::with_capacity(order.len());
        for &i in &order {
            running = running.max(maxima[i]);
            prefix_max.push(running);
        }
        ModulusTable {
            distances: order.iter().map(|&i| distances[i]).collect(),
            prefix_max,
        }
    }

    pub fn omega(&self, delta: f64) -> Result<f64> {
        if !(delta >= 0.0) {
            return Err(Error::InvalidParameter(format!("modulus argument {delta} must be >= 0")));
        }
        let count = self.distances.partition_point(|&d| d <= delta + DISTANCE_SLACK);
        Ok(if count == 0 { 0.0 } else { self.prefix_max[count - 1] })
    }
}

/// `ω₁(f; δ)` over grid pairs at the given resolution.
pub fn modulus_of_continuity(f: &Target, delta: f64, resolution: usize) -> Result<f64> {
    ModulusTable::for_target(f, resolution)?.omega(delta)
}
