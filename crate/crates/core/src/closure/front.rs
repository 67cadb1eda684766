//! Planar diagram of a front, read off its geometry.

use std::cmp::Ordering;

use super::pd::{PDDiagram, Vertex};
use crate::legendrian::{DotKind, FrontDiagram};

type Dir = (i64, i64);

/// One strand through a vertex under construction.
#[derive(Clone, Copy, Default)]
struct Pass {
    arcs: Option<(u32, u32)>,
    /// Directions of the incoming and outgoing half-edges, seen from the vertex.
    dirs: (Dir, Dir),
}

struct Proto {
    singular: bool,
    /// Role 0 is the under strand of a crossing.
    pass: [Pass; 2],
}

#[derive(Clone, Copy)]
struct Key {
    seg: usize,
    bucket: u8,
    num: i128,
    den: i128,
}

fn cmp_key(a: &Key, b: &Key) -> Ordering {
    (a.seg, a.bucket).cmp(&(b.seg, b.bucket)).then((a.num * b.den).cmp(&(b.num * a.den)))
}

fn neg(d: Dir) -> Dir {
    (-d.0, -d.1)
}

/// PD code of a front. Crossings come from segment intersections with the
/// front's layering. A tangent dot is read as a classical crossing just to its
/// left, where the cup passes over the cap, followed by a transverse double point.
pub fn front_pd(f: &FrontDiagram) -> PDDiagram {
    let mut protos: Vec<Proto> = Vec::new();
    let mut events: Vec<Vec<(Key, usize, usize)>> = vec![Vec::new(); f.strands.len()];
    for c in f.crossings() {
        let id = protos.len();
        protos.push(Proto {
            singular: false,
            pass: [
                Pass { arcs: None, dirs: (neg(c.under_dir), c.under_dir) },
                Pass { arcs: None, dirs: (neg(c.over_dir), c.over_dir) },
            ],
        });
        for (role, p) in [(0, c.under), (1, c.over)] {
            events[p.strand].push((Key { seg: p.seg, bucket: 1, num: p.num, den: p.den }, id, role));
        }
    }
    for d in &f.dots {
        let dot_key = |v: usize| Key { seg: v, bucket: 0, num: 0, den: 1 };
        let heading = |(s, v): (usize, usize)| {
            let st = &f.strands[s];
            let k = st.points.len();
            (st.dir((v + k - 1) % k), st.dir(v))
        };
        match d.kind {
            DotKind::Transverse => {
                let id = protos.len();
                let (ai, ao) = heading(d.a);
                let (bi, bo) = heading(d.b);
                protos.push(Proto {
                    singular: true,
                    pass: [Pass { arcs: None, dirs: (neg(ai), ao) }, Pass { arcs: None, dirs: (neg(bi), bo) }],
                });
                events[d.a.0].push((dot_key(d.a.1), id, 0));
                events[d.b.0].push((dot_key(d.b.1), id, 1));
            }
            DotKind::Tangent(_) => {
                // (left, right) half-edge directions of A and B at each vertex
                let bigon = [((-1, -1), (1, 1)), ((-1, 1), (1, -1))];
                let touch = [((-1, 1), (1, -1)), ((-1, -1), (1, 1))];
                let p1 = protos.len();
                let dot = p1 + 1;
                let mut mk = |sides: [(Dir, Dir); 2], singular: bool| {
                    let mut pass = [Pass::default(); 2];
                    for (role, end) in [d.a, d.b].into_iter().enumerate() {
                        let rightward = heading(end).1 .0 > 0;
                        let (l, r) = sides[role];
                        pass[role].dirs = if rightward { (l, r) } else { (r, l) };
                    }
                    protos.push(Proto { singular, pass });
                };
                mk(bigon, false);
                mk(touch, true);
                for (role, (s, v)) in [d.a, d.b].into_iter().enumerate() {
                    let k = f.strands[s].points.len();
                    let rightward = heading((s, v)).1 .0 > 0;
                    let p1_key = if rightward {
                        Key { seg: (v + k - 1) % k, bucket: 2, num: 0, den: 1 }
                    } else {
                        Key { seg: v, bucket: 0, num: 1, den: 1 }
                    };
                    events[s].push((p1_key, p1, role));
                    events[s].push((dot_key(v), dot, role));
                }
            }
        }
    }
    let mut next_arc = 1u32;
    let mut free_loops = 0;
    for ev in &mut events {
        ev.sort_by(|a, b| cmp_key(&a.0, &b.0));
        if ev.is_empty() {
            free_loops += 1;
            continue;
        }
        let m = ev.len() as u32;
        for (j, &(_, id, role)) in ev.iter().enumerate() {
            let j = j as u32;
            protos[id].pass[role].arcs = Some((next_arc + j, next_arc + (j + 1) % m));
        }
        next_arc += m;
    }
    let vertices = protos
        .iter()
        .map(|p| {
            let mut half: Vec<(f64, u32, bool, usize)> = Vec::with_capacity(4);
            for (role, ps) in p.pass.iter().enumerate() {
                let (ai, ao) = ps.arcs.expect("every vertex is visited twice");
                for (d, arc, inc) in [(ps.dirs.0, ai, true), (ps.dirs.1, ao, false)] {
                    half.push(((d.1 as f64).atan2(d.0 as f64), arc, inc, role));
                }
            }
            half.sort_by(|a, b| a.0.total_cmp(&b.0));
            let arcs = [half[0].1, half[1].1, half[2].1, half[3].1];
            let inc = [half[0].2, half[1].2, half[2].2, half[3].2];
            if p.singular {
                Vertex::singular_from(arcs, inc)
            } else {
                let under = half.iter().position(|h| h.3 == 0).unwrap();
                Vertex::crossing_from(arcs, inc, under)
            }
        })
        .collect();
    PDDiagram { vertices, free_loops }.renumbered()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridDiagram;
    use crate::legendrian::to_front;
    use crate::oracle::normalized_bracket;

    #[test]
    fn front_pd_of_simple_grids() {
        let g = GridDiagram::parse("grid 3\n. se- sw+\nse+ . nw-\nne- nw+ .\n").unwrap();
        let pd = front_pd(&to_front(&g));
        assert_eq!(pd.vertices.len(), 1);
        assert!(pd.orientation_consistent());
        assert_eq!(pd.writhe(), super::super::to_pd(&g).writhe());
        assert_eq!(normalized_bracket(&pd).unwrap(), crate::oracle::Laurent::one());
    }
}
