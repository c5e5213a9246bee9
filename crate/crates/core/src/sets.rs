//! Finitely representable measurable sets.
//!
//! Two families are supported: finite unions of closed intervals in `[0, 1]`
//! and unions of cells of the uniform triangulation of the standard
//! 2-simplex. Every level set of a grid-sampled function lies in one of these
//! families, so capacities can be evaluated on them exactly.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A canonical finite union of closed intervals in `[0, 1]`.
///
/// Canonical means sorted by left endpoint, pairwise disjoint, and with
/// touching intervals merged, so consecutive intervals satisfy `b_i < a_{i+1}`.
/// Degenerate intervals `[a, a]` are allowed; they matter for point masses.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IntervalSet {
    intervals: Vec<(f64, f64)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full() -> Self {
        Self {
            intervals: vec![(0.0, 1.0)],
        }
    }

    pub fn interval(a: f64, b: f64) -> Result<Self> {
        Self::canonicalize([(a, b)])
    }

    /// Sorts and merges an arbitrary collection of closed intervals.
    pub fn canonicalize<I>(raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut items: Vec<(f64, f64)> = Vec::new();
        for (a, b) in raw {
            validate_interval(a, b)?;
            items.push((a, b));
        }
        items.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
        Ok(Self {
            intervals: merge_sorted(items),
        })
    }

    /// Accepts intervals that are already canonical and rejects anything else.
    pub fn from_canonical(intervals: Vec<(f64, f64)>) -> Result<Self> {
        for &(a, b) in &intervals {
            validate_interval(a, b)?;
        }
        for w in intervals.windows(2) {
            if !(w[0].1 < w[1].0) {
                return Err(Error::NonCanonicalSet(format!(
                    "[{}, {}] and [{}, {}] overlap, touch or are unsorted",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(Self { intervals })
    }

    // Sorted, validated input from internal callers.
    pub(crate) fn from_sorted_unchecked(items: Vec<(f64, f64)>) -> Self {
        Self {
            intervals: merge_sorted(items),
        }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn length(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    pub fn contains(&self, x: f64) -> bool {
        // first interval whose right end is >= x
        let idx = self.intervals.partition_point(|&(_, b)| b < x);
        self.intervals.get(idx).is_some_and(|&(a, _)| a <= x)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut items = Vec::with_capacity(self.intervals.len() + other.intervals.len());
        let (mut i, mut j) = (0, 0);
        while i < self.intervals.len() || j < other.intervals.len() {
            let take_left = match (self.intervals.get(i), other.intervals.get(j)) {
                (Some(l), Some(r)) => l.0 <= r.0,
                (Some(_), None) => true,
                _ => false,
            };
            if take_left {
                items.push(self.intervals[i]);
                i += 1;
            } else {
                items.push(other.intervals[j]);
                j += 1;
            }
        }
        Self {
            intervals: merge_sorted(items),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut items = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.intervals.len() && j < other.intervals.len() {
            let (a1, b1) = self.intervals[i];
            let (a2, b2) = other.intervals[j];
            let lo = a1.max(a2);
            let hi = b1.min(b2);
            if lo <= hi {
                items.push((lo, hi));
            }
            if b1 < b2 {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self {
            intervals: merge_sorted(items),
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.intersection(other) == *self
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self
            .intervals
            .iter()
            .map(|(a, b)| format!("[{a}, {b}]"))
            .collect();
        write!(f, "{}", parts.join(" u "))
    }
}

fn validate_interval(a: f64, b: f64) -> Result<()> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::NonFinite(format!("interval [{a}, {b}]")));
    }
    if a > b {
        return Err(Error::ReversedInterval { a, b });
    }
    if a < 0.0 || b > 1.0 {
        return Err(Error::OutOfDomain { a, b });
    }
    Ok(())
}

fn merge_sorted(items: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(items.len());
    for (a, b) in items {
        match out.last_mut() {
            // closed intervals sharing an endpoint merge
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

/// Orientation of a triangle in the uniform triangulation of the simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Vertices `(i, j), (i+1, j), (i, j+1)` scaled by `1/N`.
    Up,
    /// Vertices `(i+1, j), (i, j+1), (i+1, j+1)` scaled by `1/N`.
    Down,
}

/// The uniform triangulation of `S² = {x₁, x₂ ≥ 0, x₁ + x₂ ≤ 1}` with `N`
/// cells per edge: `N(N+1)/2` upward and `N(N-1)/2` downward triangles, `N²`
/// cells of area `1/(2N²)` each.
///
/// Upward cells are numbered first (row `j` major, column `i` minor), then
/// downward cells in the same order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimplexGrid {
    resolution: usize,
}

impl SimplexGrid {
    pub fn new(resolution: usize) -> Result<Self> {
        if resolution == 0 {
            return Err(Error::InvalidParameter(
                "simplex resolution must be at least 1".into(),
            ));
        }
        Ok(Self { resolution })
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn cell_count(&self) -> usize {
        self.resolution * self.resolution
    }

    pub fn cell_area(&self) -> f64 {
        let n = self.resolution as f64;
        1.0 / (2.0 * n * n)
    }

    fn up_count(&self) -> usize {
        self.resolution * (self.resolution + 1) / 2
    }

    fn row_offset(&self, j: usize, width0: usize) -> usize {
        // sum_{r<j} (width0 - r)
        j * width0 - j * (j.saturating_sub(1)) / 2
    }

    pub fn id_of(&self, orientation: Orientation, i: usize, j: usize) -> Option<usize> {
        let n = self.resolution;
        match orientation {
            Orientation::Up if i + j < n => Some(self.row_offset(j, n) + i),
            Orientation::Down if n >= 2 && i + j + 2 <= n => {
                Some(self.up_count() + self.row_offset(j, n - 1) + i)
            }
            _ => None,
        }
    }

    /// Inverse of [`SimplexGrid::id_of`].
    pub fn cell(&self, id: usize) -> Option<(Orientation, usize, usize)> {
        let n = self.resolution;
        if id >= self.cell_count() {
            return None;
        }
        let (orientation, mut rest, width0) = if id < self.up_count() {
            (Orientation::Up, id, n)
        } else {
            (Orientation::Down, id - self.up_count(), n - 1)
        };
        let mut j = 0;
        loop {
            let width = width0 - j;
            if rest < width {
                return Some((orientation, rest, j));
            }
            rest -= width;
            j += 1;
        }
    }

    pub fn vertices(&self, id: usize) -> Option<[[f64; 2]; 3]> {
        let (o, i, j) = self.cell(id)?;
        let h = 1.0 / self.resolution as f64;
        let (fi, fj) = (i as f64, j as f64);
        Some(match o {
            Orientation::Up => [
                [fi * h, fj * h],
                [(fi + 1.0) * h, fj * h],
                [fi * h, (fj + 1.0) * h],
            ],
            Orientation::Down => [
                [(fi + 1.0) * h, fj * h],
                [fi * h, (fj + 1.0) * h],
                [(fi + 1.0) * h, (fj + 1.0) * h],
            ],
        })
    }

    pub fn centroid(&self, id: usize) -> Option<[f64; 2]> {
        let v = self.vertices(id)?;
        Some([
            (v[0][0] + v[1][0] + v[2][0]) / 3.0,
            (v[0][1] + v[1][1] + v[2][1]) / 3.0,
        ])
    }

    /// Ids of every closed cell containing `p`. Empty when `p` is outside S².
    pub fn locate(&self, p: [f64; 2]) -> Vec<usize> {
        const EPS: f64 = 1e-12;
        let n = self.resolution as f64;
        let (u, v) = (p[0] * n, p[1] * n);
        if !(u >= -EPS && v >= -EPS && u + v <= n + EPS) {
            return Vec::new();
        }
        let (fi, fj) = (u.floor() as i64, v.floor() as i64);
        let mut hits = Vec::new();
        for i in (fi - 1)..=(fi + 1) {
            for j in (fj - 1)..=(fj + 1) {
                if i < 0 || j < 0 {
                    continue;
                }
                let (du, dv) = (u - i as f64, v - j as f64);
                let (iu, ju) = (i as usize, j as usize);
                if du >= -EPS && dv >= -EPS && du + dv <= 1.0 + EPS {
                    if let Some(id) = self.id_of(Orientation::Up, iu, ju) {
                        hits.push(id);
                    }
                }
                if du <= 1.0 + EPS && dv <= 1.0 + EPS && du + dv >= 1.0 - EPS {
                    if let Some(id) = self.id_of(Orientation::Down, iu, ju) {
                        hits.push(id);
                    }
                }
            }
        }
        hits.sort_unstable();
        hits.dedup();
        hits
    }
}

/// A union of closed cells of a [`SimplexGrid`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexCellSet {
    grid: SimplexGrid,
    cells: BTreeSet<usize>,
}

impl SimplexCellSet {
    pub fn empty(grid: SimplexGrid) -> Self {
        Self {
            grid,
            cells: BTreeSet::new(),
        }
    }

    pub fn full(grid: SimplexGrid) -> Self {
        Self {
            grid,
            cells: (0..grid.cell_count()).collect(),
        }
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(grid: SimplexGrid, ids: I) -> Result<Self> {
        let mut cells = BTreeSet::new();
        for id in ids {
            if id >= grid.cell_count() {
                return Err(Error::InvalidParameter(format!(
                    "cell id {id} out of range for {} cells",
                    grid.cell_count()
                )));
            }
            if !cells.insert(id) {
                return Err(Error::NonCanonicalSet(format!("duplicate cell id {id}")));
            }
        }
        Ok(Self { grid, cells })
    }

    pub fn grid(&self) -> SimplexGrid {
        self.grid
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.cells.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains_cell(&self, id: usize) -> bool {
        self.cells.contains(&id)
    }

    pub fn area(&self) -> f64 {
        self.cells.len() as f64 * self.grid.cell_area()
    }

    pub fn contains_point(&self, p: [f64; 2]) -> bool {
        self.grid.locate(p).iter().any(|id| self.cells.contains(id))
    }

    fn same_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::DimensionMismatch(format!(
                "simplex resolutions {} and {}",
                self.grid.resolution(),
                other.grid.resolution()
            )));
        }
        Ok(())
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same_grid(other)?;
        Ok(Self {
            grid: self.grid,
            cells: self.cells.union(&other.cells).copied().collect(),
        })
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_grid(other)?;
        Ok(Self {
            grid: self.grid,
            cells: self.cells.intersection(&other.cells).copied().collect(),
        })
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.grid == other.grid && self.cells.is_subset(&other.cells)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(parts: &[(f64, f64)]) -> IntervalSet {
        IntervalSet::canonicalize(parts.iter().copied()).unwrap()
    }

    #[test]
    fn adjacent_intervals_merge_on_union() {
        let u = iv(&[(0.0, 0.5)]).union(&iv(&[(0.5, 1.0)]));
        assert_eq!(u.intervals(), &[(0.0, 1.0)]);
    }

    #[test]
    fn disjoint_intersection_is_empty() {
        let i = iv(&[(0.0, 0.5)]).intersection(&iv(&[(0.6, 1.0)]));
        assert!(i.is_empty());
    }

    #[test]
    fn overlapping_raw_intervals_are_merged() {
        let s = iv(&[(0.3, 0.7), (0.1, 0.4)]);
        assert_eq!(s.intervals(), &[(0.1, 0.7)]);
    }

    #[test]
    fn touching_closed_intervals_intersect_in_a_point() {
        let i = iv(&[(0.0, 0.5)]).intersection(&iv(&[(0.5, 1.0)]));
        assert_eq!(i.intervals(), &[(0.5, 0.5)]);
        assert_eq!(i.length(), 0.0);
        assert!(i.contains(0.5));
    }

    #[test]
    fn reversed_and_out_of_range_are_rejected() {
        assert_eq!(
            IntervalSet::interval(0.6, 0.2),
            Err(Error::ReversedInterval { a: 0.6, b: 0.2 })
        );
        assert!(matches!(
            IntervalSet::interval(-0.1, 0.2),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(matches!(
            IntervalSet::from_canonical(vec![(0.0, 0.5), (0.5, 0.7)]),
            Err(Error::NonCanonicalSet(_))
        ));
    }

    #[test]
    fn membership_respects_closed_endpoints() {
        let s = iv(&[(0.1, 0.2), (0.4, 0.4), (0.8, 1.0)]);
        for (x, inside) in [
            (0.0, false),
            (0.1, true),
            (0.2, true),
            (0.3, false),
            (0.4, true),
            (0.9, true),
            (1.0, true),
        ] {
            assert_eq!(s.contains(x), inside, "x = {x}");
        }
    }

    #[test]
    fn simplex_grid_ids_roundtrip_and_cover_area() {
        for n in 1..=7 {
            let g = SimplexGrid::new(n).unwrap();
            let mut seen = 0;
            for id in 0..g.cell_count() {
                let (o, i, j) = g.cell(id).unwrap();
                assert_eq!(g.id_of(o, i, j), Some(id));
                seen += 1;
            }
            assert_eq!(seen, n * n);
            let full = SimplexCellSet::full(g);
            assert!((full.area() - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn locate_finds_all_cells_sharing_a_vertex() {
        let g = SimplexGrid::new(4).unwrap();
        // interior lattice vertex is shared by six cells
        assert_eq!(g.locate([0.25, 0.25]).len(), 6);
        // corner of the simplex belongs to exactly one cell
        assert_eq!(g.locate([0.0, 0.0]), vec![0]);
        assert!(g.locate([0.8, 0.8]).is_empty());
        // centroid lies in exactly its own cell
        for id in 0..g.cell_count() {
            assert_eq!(g.locate(g.centroid(id).unwrap()), vec![id]);
        }
    }

    #[test]
    fn cell_set_rejects_duplicates_and_foreign_grids() {
        let g = SimplexGrid::new(3).unwrap();
        assert!(SimplexCellSet::from_ids(g, [1, 1]).is_err());
        assert!(SimplexCellSet::from_ids(g, [9]).is_err());
        let other = SimplexCellSet::full(SimplexGrid::new(4).unwrap());
        assert!(SimplexCellSet::full(g).union(&other).is_err());
    }
}
