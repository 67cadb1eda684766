//! Translations and commutations: moves that permute whole rows or columns.

use std::collections::BTreeMap;

use crate::grid::{GridDiagram, Side};
use crate::skeleton::{Skeleton, Stop};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    /// Acts on columns.
    H,
    /// Acts on rows.
    V,
}

/// Open intervals, endpoints at line indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntervalSet {
    pub intervals: Vec<(usize, usize)>,
}

impl IntervalSet {
    /// Segments of column `c` (Axis::H) or row `r` (Axis::V) between consecutive stops.
    pub fn of_line(g: &GridDiagram, axis: Axis, k: usize) -> IntervalSet {
        let stops: Vec<usize> = match axis {
            Axis::H => g.cells.keys().filter(|p| p.1 == k).map(|p| p.0).collect(),
            Axis::V => g.cells.keys().filter(|p| p.0 == k).map(|p| p.1).collect(),
        };
        IntervalSet { intervals: stops.windows(2).map(|w| (w[0], w[1])).collect() }
    }
}

/// Whether two open intervals overlap without one strictly containing the other.
/// Intervals sharing an endpoint interleave, even end to end.
fn clash(a: (usize, usize), b: (usize, usize)) -> bool {
    let disjoint = a.1 < b.0 || b.1 < a.0;
    let nested = (a.0 < b.0 && b.1 < a.1) || (b.0 < a.0 && a.1 < b.1);
    !(disjoint || nested)
}

pub fn interleaving(a: &IntervalSet, b: &IntervalSet) -> bool {
    a.intervals.iter().any(|&x| b.intervals.iter().any(|&y| clash(x, y)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineError {
    OutOfRange(usize),
    /// A segment across the split ends at the singular tile at this cell.
    NotAdmissible((usize, usize)),
    Interleaving(usize),
}

impl std::fmt::Display for LineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LineError::OutOfRange(k) => write!(f, "index {k} out of range"),
            LineError::NotAdmissible((r, c)) => write!(f, "segment across the split ends at singular tile ({r},{c})"),
            LineError::Interleaving(i) => write!(f, "lines {i} and {} interleave", i + 1),
        }
    }
}

/// Swap (r, c) to (c, r) so that both axes can share one implementation.
fn along(axis: Axis, p: (usize, usize)) -> (usize, usize) {
    match axis {
        Axis::H => p,
        Axis::V => (p.1, p.0),
    }
}

/// Checks that every segment crossing the gap after line `k` ends at corners.
pub fn decompose_admissible(g: &GridDiagram, axis: Axis, k: usize) -> Result<(), LineError> {
    if k < 1 || k >= g.n {
        return Err(LineError::OutOfRange(k));
    }
    // lines perpendicular to the split, as (line, position along it)
    let mut lines: BTreeMap<usize, Vec<(usize, bool)>> = BTreeMap::new();
    for (&p, cell) in &g.cells {
        let (r, c) = along(axis, p);
        lines.entry(r).or_default().push((c, cell.is_singular()));
    }
    for (r, stops) in lines {
        for w in stops.windows(2) {
            if w[0].0 <= k && k < w[1].0 {
                for s in [w[0], w[1]] {
                    if s.1 {
                        return Err(LineError::NotAdmissible(along(axis, (r, s.0))));
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn decompose_admissible_h(g: &GridDiagram, k: usize) -> Result<(), LineError> {
    decompose_admissible(g, Axis::H, k)
}

pub fn decompose_admissible_v(g: &GridDiagram, k: usize) -> Result<(), LineError> {
    decompose_admissible(g, Axis::V, k)
}

/// Rebuild `g` with every stop moved by `map`, keeping the direction of travel
/// along the sides perpendicular to `kept`.
pub(crate) fn relocate(
    g: &GridDiagram,
    n: usize,
    kept: Axis,
    map: impl Fn((usize, usize)) -> (usize, usize),
) -> Result<GridDiagram, String> {
    let mut sk = Skeleton::new(n);
    for (&p, cell) in &g.cells {
        sk.stops.insert(map(p), if cell.is_singular() { Stop::Singular } else { Stop::Corner });
    }
    let keep_side = |s: Side| match kept {
        Axis::H => !s.is_horizontal(),
        Axis::V => s.is_horizontal(),
    };
    let hints: Vec<((usize, usize), Side)> = g
        .trace_strands()
        .iter()
        .flat_map(|c| c.passages.iter().filter(|p| g.get(p.row, p.col).is_some() && keep_side(p.exit)).copied())
        .map(|p| (map((p.row, p.col)), p.exit))
        .collect();
    let out = sk.orient_with(&hints)?;
    out.validate().map_err(|e| e.join("; "))?;
    Ok(out)
}

/// Cyclic shift moving the lines up to `k` past the others.
pub fn translate(g: &GridDiagram, axis: Axis, k: usize) -> Result<GridDiagram, LineError> {
    decompose_admissible(g, axis, k)?;
    let n = g.n;
    let shift = |x: usize| if x <= k { x + n - k } else { x - k };
    let map = |(r, c): (usize, usize)| match axis {
        Axis::H => (r, shift(c)),
        Axis::V => (shift(r), c),
    };
    Ok(relocate(g, n, axis, map).expect("admissible translations give valid diagrams"))
}

/// Swap lines `i` and `i + 1`.
pub fn commute(g: &GridDiagram, axis: Axis, i: usize) -> Result<GridDiagram, LineError> {
    if i < 1 || i >= g.n {
        return Err(LineError::OutOfRange(i));
    }
    if interleaving(&IntervalSet::of_line(g, axis, i), &IntervalSet::of_line(g, axis, i + 1)) {
        return Err(LineError::Interleaving(i));
    }
    let swap = |x: usize| if x == i { i + 1 } else if x == i + 1 { i } else { x };
    let map = |(r, c): (usize, usize)| match axis {
        Axis::H => (r, swap(c)),
        Axis::V => (swap(r), c),
    };
    relocate(g, g.n, axis, map).map_err(|_| LineError::Interleaving(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    const UNKNOT: &str = "grid 2\nse+ sw-\nne- nw+\n";

    fn set(v: &[(usize, usize)]) -> IntervalSet {
        IntervalSet { intervals: v.to_vec() }
    }

    #[test]
    fn interval_examples() {
        assert!(!interleaving(&set(&[(1, 2)]), &set(&[(3, 4)])));
        assert!(interleaving(&set(&[(1, 3)]), &set(&[(2, 4)])));
        assert!(!interleaving(&set(&[(1, 4)]), &set(&[(2, 3)])));
    }

    #[test]
    fn unknot_translations() {
        let g = GridDiagram::parse(UNKNOT).unwrap();
        for axis in [Axis::H, Axis::V] {
            let t = translate(&g, axis, 1).unwrap();
            assert!(t.is_valid());
            assert_eq!(translate(&t, axis, 1).unwrap(), g);
        }
        assert!(commute(&g, Axis::H, 1).is_err());
    }
}
