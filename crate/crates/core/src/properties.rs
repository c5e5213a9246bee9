//! Randomized checks of the algebraic properties of the Choquet integral.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::capacity::{random_interval_set, Capacity};
use crate::choquet::{choquet_integral, ordinary_integral, IntegralMethod};
use crate::error::{Error, Result};
use crate::function::SampledFunction1D;
use crate::sets::IntervalSet;

pub const PROPERTY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub trials: usize,
    /// Smallest observed `rhs − lhs` (inequalities) or `−|lhs − rhs|` (identities).
    pub worst_gap: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub capacity: String,
    pub seed: u64,
    pub functions: usize,
    pub outcomes: Vec<PropertyOutcome>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

struct Tally {
    name: &'static str,
    trials: usize,
    worst: f64,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            trials: 0,
            worst: f64::INFINITY,
        }
    }

    fn inequality(&mut self, lhs: f64, rhs: f64) {
        self.trials += 1;
        self.worst = self.worst.min(rhs - lhs);
    }

    fn identity(&mut self, lhs: f64, rhs: f64) {
        self.trials += 1;
        self.worst = self.worst.min(-(lhs - rhs).abs());
    }

    fn finish(self) -> PropertyOutcome {
        let worst_gap = if self.trials == 0 { 0.0 } else { self.worst };
        PropertyOutcome {
            name: self.name,
            trials: self.trials,
            worst_gap,
            passed: worst_gap >= -PROPERTY_TOLERANCE,
        }
    }
}

/// Random cell values; a third of the draws are quantized so ties occur.
fn random_function(rng: &mut ChaCha8Rng, cells: usize, lo: f64, hi: f64) -> SampledFunction1D {
    let quantize = rng.random_bool(1.0 / 3.0);
    let vals = (0..cells)
        .map(|_| {
            let v: f64 = rng.random_range(lo..hi);
            if quantize {
                (v * 4.0).round() / 4.0
            } else {
                v
            }
        })
        .collect();
    SampledFunction1D::from_cell_values(vals).expect("finite draws")
}

/// Runs homogeneity, translation, monotonicity (in the integrand and in the
/// set), set subadditivity, subadditivity in the integrand (submodular
/// capacities only), the constant-integrand identity and, for additive
/// capacities, agreement with ordinary quadrature. Uses `SortedLevels`.
pub fn property_suite(c: &Capacity, seed: u64, functions: usize, cells: usize) -> Result<PropertyReport> {
    c.validate()?;
    let flags = c.flags();
    if !flags.monotone {
        return Err(Error::InvalidParameter(format!("{c} is not flagged monotone")));
    }
    if functions == 0 || cells == 0 {
        return Err(Error::InvalidParameter("need at least one function and one cell".into()));
    }
    let sl = IntegralMethod::SortedLevels;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut homogeneity = Tally::new("positive-homogeneity");
    let mut translation = Tally::new("translation");
    let mut monotone_f = Tally::new("monotone-in-integrand");
    let mut monotone_a = Tally::new("monotone-in-set");
    let mut subadd_a = Tally::new("set-subadditivity");
    let mut subadd_f = Tally::new("integrand-subadditivity");
    let mut constant = Tally::new("constant-integrand");
    let mut additive = Tally::new("additive-reduction");

    for _ in 0..functions {
        let f = random_function(&mut rng, cells, -1.0, 2.0);
        let g = random_function(&mut rng, cells, -1.0, 2.0);
        let a_set = random_interval_set(&mut rng);
        let b_set = random_interval_set(&mut rng);
        let integral = |h: &SampledFunction1D, s: &IntervalSet| choquet_integral(h, s, c, sl);
        let i_f = integral(&f, &a_set)?;
        let mu_a = c.measure(&a_set)?;

        let a: f64 = if rng.random_bool(0.1) { 0.0 } else { rng.random_range(0.0..5.0) };
        homogeneity.identity(integral(&f.map(|v| a * v)?, &a_set)?, a * i_f);

        let shift: f64 = rng.random_range(-2.0..2.0);
        translation.identity(integral(&f.map(|v| v + shift)?, &a_set)?, i_f + shift * mu_a);

        let bumped = f.zip_with(&g, |x, y| x + (y + 1.0).max(0.0))?;
        monotone_f.inequality(i_f, integral(&bumped, &a_set)?);

        let f_pos = f.map(|v| v + 1.0)?;
        let union = a_set.union(&b_set);
        let i_a = integral(&f_pos, &a_set)?;
        let i_b = integral(&f_pos, &b_set)?;
        monotone_a.inequality(i_a, integral(&f_pos, &union)?);

        let c0: f64 = rng.random_range(0.0..3.0);
        let const_fn = SampledFunction1D::from_cell_values(vec![c0; cells])?;
        constant.identity(integral(&const_fn, &a_set)?, c0 * mu_a);

        let i_sum = integral(&f.zip_with(&g, |x, y| x + y)?, &a_set)?;
        let i_g = integral(&g, &a_set)?;
        if flags.submodular {
            subadd_a.inequality(integral(&f_pos, &union)?, i_a + i_b);
            subadd_f.inequality(i_sum, i_f + i_g);
        }
        if flags.additive {
            additive.identity(i_f, ordinary_integral(&f, &a_set, c)?);
            additive.identity(i_sum, i_f + i_g);
        }
    }

    let mut outcomes = vec![
        homogeneity.finish(),
        translation.finish(),
        monotone_f.finish(),
        monotone_a.finish(),
        constant.finish(),
    ];
    if flags.submodular {
        outcomes.push(subadd_a.finish());
        outcomes.push(subadd_f.finish());
    }
    if flags.additive {
        outcomes.push(additive.finish());
    }
    Ok(PropertyReport {
        capacity: c.label(),
        seed,
        functions,
        outcomes,
    })
}
