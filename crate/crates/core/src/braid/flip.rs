//! Flipping a grid into a rectilinear braid diagram, and reading the word off it.
//!
//! Every right-to-left horizontal segment is rerouted rightward around the
//! back of the diagram, so it crosses the left edge once; those crossings are
//! the braid strands. Segments sharing a row are kept apart by sub-levels,
//! western segments sitting higher. Verticals pass over everything.

use std::collections::BTreeMap;

use super::word::{Letter, SingularBraidWord};
use crate::grid::{Cell, GridDiagram, Orient, Side};

/// Height of a horizontal strand: grid row, then sub-level within the row.
pub type Level = (usize, i64);

/// Sub-level of strands parked on a vertical between two tiles.
const PARK: i64 = 1 << 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SegmentKind {
    /// corner to corner
    I,
    /// corner on the left, tile on the right
    II,
    /// tile on the left, corner on the right
    III,
    /// tiles at both ends
    IV,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReversedSegment {
    pub row: usize,
    pub left: usize,
    pub right: usize,
    pub kind: SegmentKind,
    /// Which rule applies, from the orientation of the end tiles. 0 for type I.
    pub variant: u8,
}

/// What happens to two strands meeting at a double point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DotForm {
    /// They pass through each other.
    Cross,
    /// They cross classically with this sign, then back through the double point.
    Touch(i8),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RectEvent {
    /// A vertical carrying the strand at `from` to `to`, over whatever lies between.
    Vertical { col: usize, from: Level, to: Level },
    /// Double point between the strands at two adjacent levels. `from_above`
    /// is where the descending strand started, if there is one.
    Dot { col: usize, lo: Level, hi: Level, form: DotForm, from_above: Option<Level> },
}

/// A rectilinear braid diagram as a left-to-right sequence of events.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectDiagram {
    /// Levels of the strands crossing the left edge.
    pub seam: Vec<Level>,
    pub events: Vec<RectEvent>,
}

/// Tile forms indexed like `Orient::ALL`.
/// Only this choice makes the braid closure agree with the grid's own diagram.
const FORMS: [DotForm; 4] = [DotForm::Cross, DotForm::Touch(1), DotForm::Touch(-1), DotForm::Cross];

fn form_of(forms: &[DotForm; 4], o: Orient) -> DotForm {
    forms[Orient::ALL.iter().position(|&x| x == o).unwrap()]
}

/// Does the strand leave through `side`? `None` if the cell has no arm there.
fn leaves_by(cell: Cell, side: Side) -> Option<bool> {
    match cell {
        Cell::Corner(k) => k.has_arm(side).then(|| k.exit() == side),
        Cell::Singular(o) => Some(o.arcs().iter().any(|&(_, x)| x == side)),
    }
}

fn rows_of(g: &GridDiagram) -> BTreeMap<usize, Vec<usize>> {
    let mut rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(r, c) in g.cells.keys() {
        rows.entry(r).or_default().push(c);
    }
    rows
}

fn sub(j: usize) -> i64 {
    -4 * j as i64
}

/// Level of the segment leaving cell `(r, c)` through its horizontal `side`.
fn arm_level(rows: &BTreeMap<usize, Vec<usize>>, r: usize, c: usize, side: Side) -> Level {
    let k = rows[&r].iter().position(|&x| x == c).unwrap();
    (r, sub(if side == Side::East { k } else { k - 1 }))
}

fn corner_level(g: &GridDiagram, rows: &BTreeMap<usize, Vec<usize>>, r: usize, c: usize) -> Level {
    let Some(Cell::Corner(k)) = g.get(r, c) else { unreachable!("column ends are corners") };
    arm_level(rows, r, c, k.h())
}

/// All right-to-left horizontal segments with their type.
pub fn classify_reversed(g: &GridDiagram) -> Vec<ReversedSegment> {
    let mut out = Vec::new();
    for (r, cols) in rows_of(g) {
        for w in cols.windows(2) {
            let (l, rt) = (g.get(r, w[0]).unwrap(), g.get(r, w[1]).unwrap());
            if leaves_by(l, Side::East) != Some(false) {
                continue;
            }
            let (kind, variant) = match (l, rt) {
                (Cell::Corner(_), Cell::Corner(_)) => (SegmentKind::I, 0),
                (Cell::Corner(_), Cell::Singular(o)) => (SegmentKind::II, if o == Orient::N { 1 } else { 2 }),
                (Cell::Singular(o), Cell::Corner(_)) => (SegmentKind::III, if o == Orient::S { 1 } else { 2 }),
                (Cell::Singular(a), Cell::Singular(b)) => {
                    (SegmentKind::IV, 1 + 2 * (a == Orient::W) as u8 + (b == Orient::W) as u8)
                }
            };
            out.push(ReversedSegment { row: r, left: w[0], right: w[1], kind, variant });
        }
    }
    out
}

pub fn flip(g: &GridDiagram) -> RectDiagram {
    let forms = &FORMS;
    let rows = rows_of(g);
    let seam = classify_reversed(g)
        .iter()
        .map(|s| arm_level(&rows, s.row, s.left, Side::East))
        .collect::<Vec<_>>();
    let mut events = Vec::new();
    for c in 1..=g.n {
        let stops: Vec<usize> = g.cells.keys().filter(|p| p.1 == c).map(|p| p.0).collect();
        if stops.len() < 2 {
            continue;
        }
        let last = stops.len() - 1;
        let cell = |i: usize| g.get(stops[i], c).unwrap();
        // upward[k]: the piece between stops k and k+1 is climbed
        let upward: Vec<bool> = (0..last).map(|k| leaves_by(cell(k), Side::North) == Some(true)).collect();
        if last == 1 {
            let (from, to) = if upward[0] { (0, 1) } else { (1, 0) };
            events.push(RectEvent::Vertical {
                col: c,
                from: corner_level(g, &rows, stops[from], c),
                to: corner_level(g, &rows, stops[to], c),
            });
            continue;
        }
        let mut parked: Vec<Option<Level>> = vec![None; last];
        let mut done = vec![false; stops.len()];
        let mut remaining = last - 1;
        while remaining > 0 {
            let mut progressed = false;
            for s in 1..last {
                if done[s] {
                    continue;
                }
                let from_below = upward[s - 1];
                let from_above = !upward[s];
                let ready = (!from_below || s - 1 == 0 || done[s - 1]) && (!from_above || s + 1 == last || done[s + 1]);
                if !ready {
                    continue;
                }
                let Cell::Singular(o) = cell(s) else { unreachable!("inner stops are tiles") };
                let r = stops[s];
                let k = rows[&r].iter().position(|&x| x == c).unwrap();
                let west = (r, sub(k - 1));
                let east = (r, sub(k));
                let hi = (r, west.1 - 1);
                let lo = (r, east.1 + 1);
                let below = if s - 1 == 0 { Some(corner_level(g, &rows, stops[0], c)) } else { parked[s - 1] };
                let above = if s + 1 == last { Some(corner_level(g, &rows, stops[last], c)) } else { parked[s] };
                // arrivals: (source, horizontal?)
                let a_src = if o.a_forward() { (west, true) } else { (below.unwrap(), false) };
                let b_src = if o.b_forward() { (above.unwrap(), false) } else { (east, true) };
                let a_low = o != Orient::S;
                let (a_dst, b_dst) = if a_low { (lo, hi) } else { (hi, lo) };
                for horizontal in [true, false] {
                    for (src, dst) in [(a_src, a_dst), (b_src, b_dst)] {
                        if src.1 == horizontal {
                            events.push(RectEvent::Vertical { col: c, from: src.0, to: dst });
                        }
                    }
                }
                let form = form_of(forms, o);
                let a_low_after = o != Orient::N;
                assert_eq!(matches!(form, DotForm::Touch(_)), a_low == a_low_after, "form parity for {o:?}");
                events.push(RectEvent::Dot { col: c, lo, hi, form, from_above: o.b_forward().then(|| b_src.0) });
                let (a_at, b_at) = if a_low_after { (lo, hi) } else { (hi, lo) };
                // departures: (current, destination, horizontal?)
                let a_dst = if o.a_forward() {
                    if s - 1 == 0 {
                        (corner_level(g, &rows, stops[0], c), false)
                    } else {
                        parked[s - 1] = Some((r, -PARK));
                        ((r, -PARK), false)
                    }
                } else {
                    (west, true)
                };
                let b_dst = if o.b_forward() {
                    (east, true)
                } else if s + 1 == last {
                    (corner_level(g, &rows, stops[last], c), false)
                } else {
                    parked[s] = Some((r, PARK));
                    ((r, PARK), false)
                };
                for horizontal in [false, true] {
                    for (at, dst) in [(a_at, a_dst), (b_at, b_dst)] {
                        if dst.1 == horizontal {
                            events.push(RectEvent::Vertical { col: c, from: at, to: dst.0 });
                        }
                    }
                }
                done[s] = true;
                remaining -= 1;
                progressed = true;
            }
            assert!(progressed, "column {c} has a cycle of tiles");
        }
    }
    RectDiagram { seam, events }
}

/// Read the word off a rectilinear diagram by slanting its verticals.
///
/// A vertical that lifts a strand over exactly one other, followed in the next
/// column by that strand coming straight back down to touch it, reads as τ.
pub fn slant(d: &RectDiagram) -> SingularBraidWord {
    let mut active = d.seam.clone();
    active.sort();
    let pos = |active: &Vec<Level>, l: &Level| active.binary_search(l).unwrap_or_else(|_| panic!("no strand at {l:?}"));
    let mut out: Vec<Letter> = Vec::new();
    // (column, destination, word length) of the last vertical giving a single σ⁻¹
    let mut lift: Option<(usize, Level, usize)> = None;
    for e in &d.events {
        match *e {
            RectEvent::Vertical { col, from, to } => {
                let p1 = pos(&active, &from);
                active.remove(p1);
                let p2 = active.binary_search(&to).expect_err("level already taken");
                active.insert(p2, to);
                let before = out.len();
                if p2 < p1 {
                    out.extend((p2 + 1..=p1).rev().map(Letter::Sigma));
                } else {
                    out.extend((p1 + 1..=p2).map(Letter::SigmaInv));
                }
                if out.len() == before + 1 && p2 > p1 {
                    lift = Some((col, to, out.len()));
                } else if out.len() > before {
                    lift = None;
                }
            }
            RectEvent::Dot { col, lo, hi, form, from_above } => {
                let i = pos(&active, &lo);
                assert_eq!(pos(&active, &hi), i + 1, "double point between non-adjacent strands");
                let idx = i + 1;
                match form {
                    DotForm::Cross => out.push(Letter::Tau(idx)),
                    DotForm::Touch(1) => {
                        let merged = matches!(lift, Some((c0, to, len))
                            if c0 + 1 == col && Some(to) == from_above && len == out.len()
                                && out.last() == Some(&Letter::SigmaInv(idx)));
                        if merged {
                            out.pop();
                            out.push(Letter::Tau(idx));
                        } else {
                            out.push(Letter::Xi(idx));
                        }
                    }
                    DotForm::Touch(_) => {
                        out.push(Letter::SigmaInv(idx));
                        out.push(Letter::Tau(idx));
                    }
                }
                lift = None;
            }
        }
    }
    let mut end = active.clone();
    end.sort();
    let mut start = d.seam.clone();
    start.sort();
    debug_assert_eq!(end, start, "strands do not close up");
    SingularBraidWord { strands: d.seam.len(), letters: out }
}

/// The tile behind each singular letter of [`grid_to_braid`], in word order.
pub fn singular_letter_cells(g: &GridDiagram) -> Vec<(usize, usize)> {
    flip(g)
        .events
        .iter()
        .filter_map(|e| match *e {
            RectEvent::Dot { col, lo, .. } => Some((lo.0, col)),
            _ => None,
        })
        .collect()
}

/// The braid of a grid: flip, then slant.
pub fn grid_to_braid(g: &GridDiagram) -> SingularBraidWord {
    slant(&flip(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_flips_to_one_strand() {
        let g = GridDiagram::parse("grid 2\nse+ sw-\nne- nw+\n").unwrap();
        let segs = classify_reversed(&g);
        assert_eq!(segs.len(), 1);
        assert_eq!((segs[0].row, segs[0].kind), (2, SegmentKind::I));
        let w = grid_to_braid(&g);
        assert_eq!(w.strands, 1);
        assert!(w.letters.is_empty());
    }

    #[test]
    fn braid_closure_matches_grid() {
        use crate::closure::{braid_closure_pd, to_pd};
        use crate::oracle::fingerprint;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..80 {
            let n = rng.gen_range(2..=6);
            let k = rng.gen_range(0..=2);
            let g = crate::random::random_grid(&mut rng, n, k);
            let w = grid_to_braid(&g);
            assert_eq!(fingerprint(&to_pd(&g)).unwrap(), fingerprint(&braid_closure_pd(&w)).unwrap(), "{g}");
        }
    }
}
