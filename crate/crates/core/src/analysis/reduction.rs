//! Choquet operators with additive capacities against their classical forms.

use rayon::prelude::*;

use crate::bernstein::{classical_bernstein, classical_genuine_coefficients, combine, durrmeyer_borel_coefficients};
use crate::capacity::Capacity;
use crate::error::Result;
use crate::function::Func1;
use crate::operators::{CapacityFamily, ChoquetRoute, Discretization, EndTerms, OperatorPlan, Target};

/// Agreement with the classical operator.
pub const REDUCTION_TOLERANCE: f64 = 2e-6;
/// `D − B_n = xⁿ(c_n − f(1))` for the mixed Dirac operator.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionRow {
    pub operator: &'static str,
    pub function: String,
    pub n: u32,
    pub x: f64,
    pub value: f64,
    pub reference: f64,
    pub difference: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Copy)]
enum Reference {
    Durrmeyer,
    Bernstein,
    Genuine,
}

fn cases(n: u32) -> Result<Vec<(&'static str, CapacityFamily, Reference, f64)>> {
    let leb = Capacity::LebesgueBorel;
    let two = |ends| CapacityFamily::two_measure(leb.clone(), leb.clone(), ends);
    Ok(vec![
        ("mn-gamma", CapacityFamily::Constant(leb.clone()), Reference::Durrmeyer, 0.0),
        ("dbar", two(EndTerms::Upper)?, Reference::Durrmeyer, 0.0),
        ("dtilde", two(EndTerms::Lower)?, Reference::Durrmeyer, 0.0),
        ("dstar", two(EndTerms::Both)?, Reference::Durrmeyer, 0.0),
        // M(f − m) + m with m = −1
        ("mstar", CapacityFamily::Constant(leb.clone()), Reference::Durrmeyer, -1.0),
        (
            "genuine-u",
            CapacityFamily::Genuine {
                start: Capacity::dirac(0.0),
                end: Capacity::dirac(1.0),
                middle: vec![leb.clone()],
            },
            Reference::Genuine,
            0.0,
        ),
        ("all-dirac", CapacityFamily::all_dirac(n, 1)?, Reference::Bernstein, 0.0),
        ("mixed-dirac", CapacityFamily::MixedDiracTail(Capacity::dirac(1.0)), Reference::Bernstein, 0.0),
    ])
}

/// Every operator with additive capacities (fast path off, so the Choquet
/// route is exercised) against its classical counterpart at each `x`, plus
/// the identity `D − B_n = xⁿ(c_n − f(1))` for the mixed operator with `mu`.
pub fn reduction_suite(f: &Func1, n: u32, xs: &[f64], mu: &Capacity, cells: usize) -> Result<Vec<ReductionRow>> {
    let disc = Discretization::default()
        .with_cells(cells)
        .with_route(ChoquetRoute::SortedLevels)
        .without_fast_path();
    let mut rows = Vec::new();
    for (name, family, reference, lower) in cases(n)? {
        let target = Target::Line(f.shift(-lower));
        let op = OperatorPlan::new(n, 1, &family, &disc)?.apply(&target)?;
        let classical = match reference {
            Reference::Durrmeyer => Some(durrmeyer_borel_coefficients(f, n, &Capacity::LebesgueBorel, cells)?),
            Reference::Genuine => Some(classical_genuine_coefficients(f, n, cells)?),
            Reference::Bernstein => None,
        };
        let part: Result<Vec<ReductionRow>> = xs
            .par_iter()
            .map(|&x| {
                let value = op.evaluate_at(x)? + lower;
                let reference = match &classical {
                    Some(c) => combine(c, n, x),
                    None => classical_bernstein(f, n, x)?,
                };
                Ok(row(name, f, n, x, value, reference, REDUCTION_TOLERANCE))
            })
            .collect();
        rows.extend(part?);
    }

    let mixed = OperatorPlan::new(n, 1, &CapacityFamily::MixedDiracTail(mu.clone()), &disc.with_route(ChoquetRoute::Continuous))?
        .apply(&Target::Line(f.clone()))?;
    let end = mixed.coefficients()[n as usize] - f.eval(1.0);
    for &x in xs {
        let lhs = mixed.evaluate_at(x)? - classical_bernstein(f, n, x)?;
        rows.push(row("mixed-dirac-identity", f, n, x, lhs, x.powi(n as i32) * end, IDENTITY_TOLERANCE));
    }
    Ok(rows)
}

fn row(operator: &'static str, f: &Func1, n: u32, x: f64, value: f64, reference: f64, tolerance: f64) -> ReductionRow {
    let difference = (value - reference).abs();
    ReductionRow {
        operator,
        function: f.label().to_string(),
        n,
        x,
        value,
        reference,
        difference,
        tolerance,
        passed: difference <= tolerance,
    }
}
