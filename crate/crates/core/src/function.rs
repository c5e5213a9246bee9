//! Integrands: named closures, grid samplings on `[0, 1]` and on the simplex,
//! and a continuous representation on `[0, 1]` with exact level sets.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sets::{IntervalSet, SimplexGrid};

/// A named real function on a domain point type `P`.
pub struct Func<P> {
    label: Arc<str>,
    eval: Arc<dyn Fn(P) -> f64 + Send + Sync>,
}

pub type Func1 = Func<f64>;
pub type Func2 = Func<[f64; 2]>;

impl<P> Clone for Func<P> {
    fn clone(&self) -> Self {
        Func {
            label: self.label.clone(),
            eval: self.eval.clone(),
        }
    }
}

impl<P> fmt::Debug for Func<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Func({})", self.label)
    }
}

impl<P: Copy + 'static> Func<P> {
    pub fn new(label: impl Into<String>, f: impl Fn(P) -> f64 + Send + Sync + 'static) -> Self {
        Func {
            label: Arc::from(label.into()),
            eval: Arc::new(f),
        }
    }

    #[inline]
    pub fn eval(&self, p: P) -> f64 {
        (self.eval)(p)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn constant(c: f64) -> Self {
        Func::new(format!("{c}"), move |_| c)
    }

    pub fn scale(&self, a: f64) -> Self {
        let g = self.clone();
        Func::new(format!("{a}*({})", self.label), move |p| a * g.eval(p))
    }

    pub fn shift(&self, c: f64) -> Self {
        let g = self.clone();
        Func::new(format!("({})+{c}", self.label), move |p| g.eval(p) + c)
    }

    pub fn add(&self, other: &Func<P>) -> Self {
        let (g, h) = (self.clone(), other.clone());
        Func::new(format!("({})+({})", self.label, other.label), move |p| {
            g.eval(p) + h.eval(p)
        })
    }

    pub fn mul(&self, other: &Func<P>) -> Self {
        let (g, h) = (self.clone(), other.clone());
        Func::new(format!("({})*({})", self.label, other.label), move |p| {
            g.eval(p) * h.eval(p)
        })
    }
}

impl Func1 {
    pub fn e0() -> Self {
        Func::new("e0", |_| 1.0)
    }

    pub fn e1() -> Self {
        Func::new("e1", |t| t)
    }

    /// `t ↦ |t - x|`.
    pub fn distance_from(x: f64) -> Self {
        Func::new(format!("|t-{x}|"), move |t: f64| (t - x).abs())
    }

    pub fn monomial(k: i32) -> Self {
        Func::new(format!("t^{k}"), move |t: f64| t.powi(k))
    }
}

impl Func2 {
    /// `t ↦ ‖t - x‖₂`.
    pub fn distance_from(x: [f64; 2]) -> Self {
        Func::new(format!("|t-({},{})|", x[0], x[1]), move |t: [f64; 2]| {
            (t[0] - x[0]).hypot(t[1] - x[1])
        })
    }
}

/// How a grid cell's value is derived from a function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SampleMode {
    #[default]
    Midpoint,
    NodeAverage,
}

fn check_finite(values: &[f64]) -> Result<()> {
    if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::NonFinite(format!("value {v} in cell {i}")));
    }
    Ok(())
}

/// Piecewise-constant function on the closed cells `[j/M, (j+1)/M]` of `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction1D {
    cells: Vec<f64>,
    mode: SampleMode,
}

impl SampledFunction1D {
    pub fn from_fn(cells: usize, mode: SampleMode, f: &Func1) -> Result<Self> {
        if cells == 0 {
            return Err(Error::InvalidParameter("need at least one cell".into()));
        }
        let m = cells as f64;
        let values: Vec<f64> = match mode {
            SampleMode::Midpoint => (0..cells).map(|j| f.eval((j as f64 + 0.5) / m)).collect(),
            SampleMode::NodeAverage => {
                let nodes: Vec<f64> = (0..=cells).map(|j| f.eval(j as f64 / m)).collect();
                nodes.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
            }
        };
        check_finite(&values)?;
        Ok(SampledFunction1D {
            cells: values,
            mode,
        })
    }

    /// From `M + 1` node values; cells take the average of their two nodes.
    pub fn from_nodes(nodes: &[f64]) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidParameter("need at least two nodes".into()));
        }
        check_finite(nodes)?;
        Ok(SampledFunction1D {
            cells: nodes.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect(),
            mode: SampleMode::NodeAverage,
        })
    }

    pub fn from_cell_values(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("need at least one cell".into()));
        }
        check_finite(&values)?;
        Ok(SampledFunction1D {
            cells: values,
            mode: SampleMode::Midpoint,
        })
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.cells
    }

    pub fn mode(&self) -> SampleMode {
        self.mode
    }

    pub fn cell_bounds(&self, j: usize) -> (f64, f64) {
        let m = self.cells.len() as f64;
        (j as f64 / m, (j + 1) as f64 / m)
    }

    pub fn midpoint(&self, j: usize) -> f64 {
        (j as f64 + 0.5) / self.cells.len() as f64
    }

    pub fn is_nonneg(&self) -> bool {
        self.cells.iter().all(|v| *v >= 0.0)
    }

    pub fn map(&self, g: impl Fn(f64) -> f64) -> Result<Self> {
        let cells: Vec<f64> = self.cells.iter().map(|v| g(*v)).collect();
        check_finite(&cells)?;
        Ok(SampledFunction1D {
            cells,
            mode: self.mode,
        })
    }

    /// Pointwise combination with a function of the cell midpoint.
    pub fn map_with_position(&self, g: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let cells: Vec<f64> = (0..self.cells.len())
            .map(|j| g(self.midpoint(j), self.cells[j]))
            .collect();
        check_finite(&cells)?;
        Ok(SampledFunction1D {
            cells,
            mode: self.mode,
        })
    }

    pub fn zip_with(&self, other: &Self, g: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if self.cells.len() != other.cells.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} cells vs {} cells",
                self.cells.len(),
                other.cells.len()
            )));
        }
        let cells: Vec<f64> = self
            .cells
            .iter()
            .zip(&other.cells)
            .map(|(a, b)| g(*a, *b))
            .collect();
        check_finite(&cells)?;
        Ok(SampledFunction1D {
            cells,
            mode: self.mode,
        })
    }
}

/// One value per triangle cell of a [`SimplexGrid`], taken at the centroid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunctionSimplex {
    grid: SimplexGrid,
    cells: Vec<f64>,
}

impl SampledFunctionSimplex {
    pub fn from_fn(grid: SimplexGrid, f: &Func2) -> Result<Self> {
        let cells: Vec<f64> = (0..grid.cell_count())
            .map(|id| f.eval(grid.centroid(id).expect("id in range")))
            .collect();
        check_finite(&cells)?;
        Ok(SampledFunctionSimplex { grid, cells })
    }

    pub fn from_cell_values(grid: SimplexGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.cell_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} cells",
                values.len(),
                grid.cell_count()
            )));
        }
        check_finite(&values)?;
        Ok(SampledFunctionSimplex {
            grid,
            cells: values,
        })
    }

    pub fn grid(&self) -> SimplexGrid {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.cells
    }

    pub fn is_nonneg(&self) -> bool {
        self.cells.iter().all(|v| *v >= 0.0)
    }

    pub fn map(&self, g: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_cell_values(self.grid, self.cells.iter().map(|v| g(*v)).collect())
    }

    pub fn zip_with(&self, other: &Self, g: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::DimensionMismatch(format!(
                "simplex resolutions {} and {}",
                self.grid.resolution(),
                other.grid.resolution()
            )));
        }
        Self::from_cell_values(
            self.grid,
            self.cells
                .iter()
                .zip(&other.cells)
                .map(|(a, b)| g(*a, *b))
                .collect(),
        )
    }
}

const GOLDEN: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a local maximum of `g` on `[a, b]`.
fn golden_max(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut c = b - GOLDEN * (b - a);
    let mut d = a + GOLDEN * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..200 {
        if b - a <= 1e-15 {
            break;
        }
        if gc >= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - GOLDEN * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + GOLDEN * (b - a);
            gd = g(d);
        }
    }
    let mid = 0.5 * (a + b);
    [a, mid, b]
        .into_iter()
        .max_by(|x, y| g(*x).total_cmp(&g(*y)))
        .unwrap_or(mid)
}

/// A function on `[0, 1]` split into monotone pieces, so that level sets
/// `{f ≥ β}` can be found by bisection to machine precision.
///
/// Extrema are located on a uniform scan and refined by golden-section
/// search; oscillations finer than the scan spacing are not resolved.
#[derive(Debug, Clone)]
pub struct ContinuousFunction1D {
    f: Func1,
    knots: Vec<f64>,
    knot_values: Vec<f64>,
}

impl ContinuousFunction1D {
    pub const DEFAULT_SCAN: usize = 1024;

    pub fn new(f: Func1) -> Result<Self> {
        Self::with_scan(f, Self::DEFAULT_SCAN)
    }

    pub fn with_scan(f: Func1, scan: usize) -> Result<Self> {
        if scan < 2 {
            return Err(Error::InvalidParameter("scan resolution must be at least 2".into()));
        }
        let r = scan as f64;
        let ts: Vec<f64> = (0..=scan).map(|i| i as f64 / r).collect();
        let vs: Vec<f64> = ts.iter().map(|t| f.eval(*t)).collect();
        check_finite(&vs)?;

        let mut knots = vec![0.0];
        let mut last_sign = 0i8;
        for i in 1..=scan {
            let d = vs[i] - vs[i - 1];
            let s = if d > 0.0 {
                1
            } else if d < 0.0 {
                -1
            } else {
                0
            };
            if s != 0 {
                if last_sign != 0 && s != last_sign {
                    // extremum near ts[i-1]
                    let (a, b) = (ts[i.saturating_sub(2)], ts[i]);
                    let t = if last_sign > 0 {
                        golden_max(&|t| f.eval(t), a, b)
                    } else {
                        golden_max(&|t| -f.eval(t), a, b)
                    };
                    if t > *knots.last().unwrap() && t < 1.0 {
                        knots.push(t);
                    }
                }
                last_sign = s;
            }
        }
        knots.push(1.0);
        let knot_values = knots.iter().map(|t| f.eval(*t)).collect::<Vec<_>>();
        check_finite(&knot_values)?;
        Ok(ContinuousFunction1D {
            f,
            knots,
            knot_values,
        })
    }

    pub fn func(&self) -> &Func1 {
        &self.f
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.f.eval(t)
    }

    /// Endpoints of the monotone pieces, including 0 and 1.
    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    /// Bisects between `keep` (where `f ≥ β`) and `drop` (where `f < β`) on a
    /// monotone piece; returns the last point known to satisfy `f ≥ β`.
    fn crossing(&self, mut keep: f64, mut drop: f64, beta: f64) -> f64 {
        for _ in 0..80 {
            let mid = 0.5 * (keep + drop);
            if mid == keep || mid == drop {
                break;
            }
            if self.f.eval(mid) >= beta {
                keep = mid;
            } else {
                drop = mid;
            }
        }
        keep
    }

    /// `{t ∈ [0, 1] : f(t) ≥ β}` as a canonical interval set.
    pub fn superlevel(&self, beta: f64) -> IntervalSet {
        let mut raw = Vec::new();
        for i in 0..self.knots.len() - 1 {
            let (a, b) = (self.knots[i], self.knots[i + 1]);
            let (fa, fb) = (self.knot_values[i], self.knot_values[i + 1]);
            match (fa >= beta, fb >= beta) {
                (true, true) => raw.push((a, b)),
                (false, false) => {}
                (true, false) => raw.push((a, self.crossing(a, b, beta))),
                (false, true) => raw.push((self.crossing(b, a, beta), b)),
            }
        }
        IntervalSet::canonicalize(raw).expect("knots lie in [0, 1]")
    }

    /// Minimum and maximum over the closed set `a`.
    pub fn range_on(&self, a: &IntervalSet) -> Option<(f64, f64)> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &(l, r) in a.intervals() {
            for v in [self.f.eval(l), self.f.eval(r)] {
                lo = lo.min(v);
                hi = hi.max(v);
            }
            for (t, v) in self.knots.iter().zip(&self.knot_values) {
                if l <= *t && *t <= r {
                    lo = lo.min(*v);
                    hi = hi.max(*v);
                }
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    /// Values at which `β ↦ {f ≥ β} ∩ a` can change topology.
    pub fn critical_values_on(&self, a: &IntervalSet) -> Vec<f64> {
        let mut out = Vec::new();
        for &(l, r) in a.intervals() {
            out.push(self.f.eval(l));
            out.push(self.f.eval(r));
            for (t, v) in self.knots.iter().zip(&self.knot_values) {
                if l < *t && *t < r {
                    out.push(*v);
                }
            }
        }
        out
    }
}
