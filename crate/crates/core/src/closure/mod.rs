//! Underlying singular link diagrams of grids, braids and fronts.

pub mod pd;
pub mod front;
pub mod transverse;

use std::collections::BTreeMap;

pub use front::front_pd;
pub use pd::{PDDiagram, PdError, Vertex};
pub use transverse::{forbidden_front_check, transverse_closure, TransverseWitness, Violation};

use crate::braid::{Letter, SingularBraidWord};
use crate::grid::{GridDiagram, Side, Tile};

/// Which vertex an arc end belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Crossing(usize, usize),
    /// The extra classical crossing inside a singular tile.
    Bigon(usize, usize),
    Dot(usize, usize),
}

/// (in arc, out arc) of one strand through a vertex, keyed by role.
#[derive(Default, Clone, Copy)]
struct Ends {
    slots: [Option<(u32, u32)>; 2],
}

fn ccw_index(s: Side) -> usize {
    match s {
        Side::East => 0,
        Side::North => 1,
        Side::West => 2,
        Side::South => 3,
    }
}

/// PD code of the underlying diagram. Verticals pass over horizontals. A
/// singular tile contributes its double point plus one classical crossing
/// where arc B passes over arc A just before the double point.
pub fn to_pd(g: &GridDiagram) -> PDDiagram {
    let tiling = g.derive_tiling();
    let circuits = g.trace_strands();
    let mut ends: BTreeMap<Key, Ends> = BTreeMap::new();
    // geometry of crossing cells: side -> arc
    let mut sides: BTreeMap<(usize, usize), [Option<(u32, bool)>; 4]> = BTreeMap::new();
    let mut next_arc = 1u32;
    let mut free_loops = 0;
    for circ in &circuits {
        // (key, role) for every event along the circuit
        let mut events: Vec<(Key, usize, Option<(Side, Side)>)> = Vec::new();
        for p in &circ.passages {
            match tiling.get(p.row, p.col) {
                Tile::Crossing => {
                    let role = if p.exit.is_horizontal() { 0 } else { 1 };
                    events.push((Key::Crossing(p.row, p.col), role, Some((p.entry, p.exit))));
                }
                Tile::Singular(o) => {
                    let arc = crate::grid::Orient::arc_of(p.entry);
                    let forward = if arc == 0 { o.a_forward() } else { o.b_forward() };
                    let pair = [(Key::Bigon(p.row, p.col), arc, None), (Key::Dot(p.row, p.col), arc, None)];
                    if forward {
                        events.extend(pair);
                    } else {
                        events.extend(pair.iter().rev().copied());
                    }
                }
                _ => {}
            }
        }
        if events.is_empty() {
            free_loops += 1;
            continue;
        }
        let k = events.len() as u32;
        let base = next_arc;
        next_arc += k;
        for (i, (key, role, geo)) in events.iter().enumerate() {
            let i = i as u32;
            let inc = base + i;
            let out = base + (i + 1) % k;
            ends.entry(*key).or_default().slots[*role] = Some((inc, out));
            if let (Key::Crossing(r, c), Some((entry, exit))) = (key, geo) {
                let s = sides.entry((*r, *c)).or_insert([None; 4]);
                s[ccw_index(*entry)] = Some((inc, true));
                s[ccw_index(*exit)] = Some((out, false));
            }
        }
    }
    let mut vertices = Vec::new();
    for (key, e) in &ends {
        let [Some((ai, ao)), Some((bi, bo))] = e.slots else { unreachable!("both strands visit every vertex") };
        match key {
            Key::Crossing(r, c) => {
                let s = sides[&(*r, *c)];
                let arcs = s.map(|x| x.unwrap().0);
                let inc = s.map(|x| x.unwrap().1);
                // under strand is the horizontal one: east or west slot
                vertices.push(Vertex::crossing_from(arcs, inc, 0));
            }
            Key::Bigon(..) => {
                // positions: ccw [B next, A next, B prev, A prev]; A is under
                let (r, c) = match key {
                    Key::Bigon(r, c) => (*r, *c),
                    _ => unreachable!(),
                };
                let Tile::Singular(o) = tiling.get(r, c) else { unreachable!() };
                let (a_prev, a_next, a_prev_in) = if o.a_forward() { (ai, ao, true) } else { (ao, ai, false) };
                let (b_prev, b_next, b_prev_in) = if o.b_forward() { (bi, bo, true) } else { (bo, bi, false) };
                let arcs = [b_next, a_next, b_prev, a_prev];
                let inc = [!b_prev_in, !a_prev_in, b_prev_in, a_prev_in];
                vertices.push(Vertex::crossing_from(arcs, inc, 1));
            }
            Key::Dot(r, c) => {
                // positions: ccw [A next, B next, A prev, B prev]
                let Tile::Singular(o) = tiling.get(*r, *c) else { unreachable!() };
                let (a_prev, a_next, a_prev_in) = if o.a_forward() { (ai, ao, true) } else { (ao, ai, false) };
                let (b_prev, b_next, b_prev_in) = if o.b_forward() { (bi, bo, true) } else { (bo, bi, false) };
                let arcs = [a_next, b_next, a_prev, b_prev];
                let inc = [!a_prev_in, !b_prev_in, a_prev_in, b_prev_in];
                vertices.push(Vertex::singular_from(arcs, inc));
            }
        }
    }
    PDDiagram { vertices, free_loops }
}

/// Index in `to_pd(g)` of the double point of the singular tile at `cell`.
pub fn singular_vertex(g: &GridDiagram, cell: (usize, usize)) -> Option<usize> {
    let sing = g.singular_cells();
    let rank = sing.iter().position(|&p| p == cell)?;
    // vertices are emitted crossings first, then one extra crossing per tile, then the dots
    Some(g.derive_tiling().crossing_count() + sing.len() + rank)
}

/// PD code of the closure of a singular braid. Strand positions count from the
/// bottom; σᵢ takes the strand at i+1 down over the strand at i.
pub fn braid_closure_pd(w: &SingularBraidWord) -> PDDiagram {
    let n = w.strands;
    let mut cur: Vec<u32> = (1..=n as u32).collect();
    let mut next_arc = n as u32 + 1;
    let mut vertices = Vec::new();
    let mut fresh = || {
        let a = next_arc;
        next_arc += 1;
        a
    };
    let mut push = |l: Letter, cur: &mut Vec<u32>, vertices: &mut Vec<Vertex>| {
        let i = l.index() - 1;
        let (lo_in, hi_in) = (cur[i], cur[i + 1]);
        let (lo_out, hi_out) = (fresh(), fresh());
        // ccw from south-west: SW, SE, NE, NW; the lower strand runs SW to NE
        match l {
            Letter::Sigma(_) => {
                // lower strand passes under
                vertices.push(Vertex::crossing_from([lo_in, hi_out, lo_out, hi_in], [true, false, false, true], 0))
            }
            Letter::SigmaInv(_) => {
                // upper strand passes under
                vertices.push(Vertex::crossing_from([lo_in, hi_out, lo_out, hi_in], [true, false, false, true], 1))
            }
            Letter::Tau(_) => vertices.push(Vertex::singular_from([lo_in, hi_out, lo_out, hi_in], [true, false, false, true])),
            Letter::Xi(_) => unreachable!(),
        }
        cur[i] = hi_out;
        cur[i + 1] = lo_out;
    };
    for &l in &w.letters {
        match l {
            Letter::Xi(i) => {
                push(Letter::Sigma(i), &mut cur, &mut vertices);
                push(Letter::Tau(i), &mut cur, &mut vertices);
            }
            _ => push(l, &mut cur, &mut vertices),
        }
    }
    // close: the last arc at each position is the first one
    let mut pd = PDDiagram { vertices, free_loops: 0 };
    let pairs: Vec<(u32, u32)> = (0..n).map(|p| (cur[p], p as u32 + 1)).filter(|(a, b)| a != b).collect();
    let idle = (0..n).filter(|&p| cur[p] == p as u32 + 1).count();
    pd.join(&pairs);
    pd.free_loops += idle;
    pd.renumbered()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{normalized_bracket, Laurent};

    const UNKNOT: &str = "grid 2\nse+ sw-\nne- nw+\n";

    #[test]
    fn unknot_pd() {
        let pd = to_pd(&GridDiagram::parse(UNKNOT).unwrap());
        assert_eq!(pd.vertices.len(), 0);
        assert_eq!(pd.component_count(), 1);
    }

    #[test]
    fn braid_closures() {
        let w = |s: &str| SingularBraidWord::parse(s).unwrap();
        let pd = braid_closure_pd(&w("braid 2\ns1\n"));
        assert!(pd.orientation_consistent());
        assert_eq!(normalized_bracket(&pd).unwrap(), Laurent::one());
        let t = braid_closure_pd(&w("braid 2\ns1 s1 s1\n"));
        assert_eq!(normalized_bracket(&t).unwrap(), Laurent::from_terms(&[(-4, 1), (-12, 1), (-16, -1)]));
        let e = braid_closure_pd(&w("braid 3\n"));
        assert_eq!(e.component_count(), 3);
        let x = braid_closure_pd(&w("braid 2\nx1\n"));
        assert!(x.orientation_consistent());
        assert_eq!(x.component_count(), 2);
    }
}
