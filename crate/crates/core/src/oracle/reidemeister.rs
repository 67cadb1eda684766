//! Reidemeister rewrites on planar diagram codes.
//!
//! Each rewrite is local surgery on the cyclic slot order, so planarity is
//! kept by construction. The faces of a code are read off with
//! [`PDDiagram::faces`], which walks every face with the face on its left.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::closure::pd::{PDDiagram, Vertex};

fn fresh(pd: &PDDiagram) -> u32 {
    pd.arcs().iter().max().copied().unwrap_or(0) + 1
}

/// The other end of the arc at `(v, s)`.
fn other_end(pd: &PDDiagram, v: usize, s: usize) -> (usize, usize) {
    let a = pd.vertices[v].arcs()[s];
    for (w, x) in pd.vertices.iter().enumerate() {
        for (t, b) in x.arcs().iter().enumerate() {
            if *b == a && (w, t) != (v, s) {
                return (w, t);
            }
        }
    }
    unreachable!("every arc has two ends")
}

fn set_arc(v: &mut Vertex, s: usize, a: u32) {
    match v {
        Vertex::Crossing { arcs, .. } | Vertex::Singular { arcs } => arcs[s] = a,
    }
}

fn is_crossing(v: &Vertex) -> bool {
    matches!(v, Vertex::Crossing { .. })
}

/// Whether slot `s` of a crossing carries the over strand.
fn is_over(v: &Vertex, s: usize) -> bool {
    s % 2 == 1 && is_crossing(v)
}

/// Add a kink on `arc`. `style` (0..4) picks the side of the curl and the sign.
pub fn r1_add(pd: &PDDiagram, arc: u32, style: u8) -> Option<PDDiagram> {
    // the head of the arc keeps pointing at a_out, the kink sits before it
    let (v, s) = pd
        .vertices
        .iter()
        .enumerate()
        .flat_map(|(v, x)| (0..4).map(move |s| (v, s, x)))
        .find(|(_, s, x)| x.arcs()[*s] == arc && x.incoming()[*s])
        .map(|(v, s, _)| (v, s))?;
    let mut out = pd.clone();
    let a_out = fresh(pd);
    let l = a_out + 1;
    set_arc(&mut out.vertices[v], s, a_out);
    let a_in = arc;
    out.vertices.push(match style % 4 {
        0 => Vertex::Crossing { arcs: [a_in, a_out, l, l], sign: 1 },
        1 => Vertex::Crossing { arcs: [a_in, l, l, a_out], sign: -1 },
        2 => Vertex::Crossing { arcs: [l, l, a_out, a_in], sign: 1 },
        _ => Vertex::Crossing { arcs: [l, a_in, a_out, l], sign: -1 },
    });
    Some(out)
}

/// Crossings carrying a kink loop.
pub fn r1_sites(pd: &PDDiagram) -> Vec<usize> {
    (0..pd.vertices.len())
        .filter(|&v| {
            let a = pd.vertices[v].arcs();
            is_crossing(&pd.vertices[v]) && (0..4).any(|s| a[s] == a[(s + 1) % 4])
        })
        .collect()
}

pub fn r1_remove(pd: &PDDiagram, v: usize) -> Option<PDDiagram> {
    if !r1_sites(pd).contains(&v) {
        return None;
    }
    let a = pd.vertices[v].arcs();
    let mut out = pd.clone();
    out.vertices.remove(v);
    out.join(&[(a[0], a[2]), (a[1], a[3])]);
    Some(out)
}

/// Push the arc leaving face corner `p` across the arc leaving corner `q` of
/// the same face, making a bigon. Corners are `(vertex, slot)` pairs.
pub fn r2_add(pd: &PDDiagram, p: (usize, usize), q: (usize, usize), p_over: bool) -> Option<PDDiagram> {
    let ap = pd.vertices[p.0].arcs()[p.1];
    let aq = pd.vertices[q.0].arcs()[q.1];
    if ap == aq {
        return None;
    }
    let p_end = other_end(pd, p.0, p.1);
    let q_end = other_end(pd, q.0, q.1);
    // does each strand run the same way as the face walk?
    let fp = !pd.vertices[p.0].incoming()[p.1];
    let fq = !pd.vertices[q.0].incoming()[q.1];
    let base = fresh(pd);
    let (p1, p2, p3, q1, q2, q3) = (base, base + 1, base + 2, base + 3, base + 4, base + 5);
    let mut out = pd.clone();
    set_arc(&mut out.vertices[p.0], p.1, p1);
    set_arc(&mut out.vertices[p_end.0], p_end.1, p3);
    set_arc(&mut out.vertices[q.0], q.1, q1);
    set_arc(&mut out.vertices[q_end.0], q_end.1, q3);
    let under = if p_over { 1 } else { 0 };
    // first crossing met along p, then the second
    out.vertices.push(Vertex::crossing_from([p1, q2, p2, q3], [fp, fq, !fp, !fq], under));
    out.vertices.push(Vertex::crossing_from([p3, q1, p2, q2], [!fp, fq, fp, !fq], under));
    Some(out)
}

/// Bigon faces whose two crossings can be cancelled.
pub fn r2_sites(pd: &PDDiagram) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for f in pd.faces() {
        let [(x, s), (y, t)] = f.as_slice() else { continue };
        let (x, s, y, t) = (*x, *s, *y, *t);
        if x == y || !is_crossing(&pd.vertices[x]) || !is_crossing(&pd.vertices[y]) {
            continue;
        }
        // the edge leaving x at slot s reaches y; same strand on top at both ends?
        let (y2, s2) = other_end(pd, x, s);
        if y2 != y {
            continue;
        }
        let (x2, t2) = other_end(pd, y, t);
        if x2 != x {
            continue;
        }
        if is_over(&pd.vertices[x], s) == is_over(&pd.vertices[y], s2) && is_over(&pd.vertices[y], t) == is_over(&pd.vertices[x], t2) {
            out.push((x.min(y), x.max(y)));
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn r2_remove(pd: &PDDiagram, x: usize, y: usize) -> Option<PDDiagram> {
    if !r2_sites(pd).contains(&(x.min(y), x.max(y))) {
        return None;
    }
    let (a, b) = (pd.vertices[x].arcs(), pd.vertices[y].arcs());
    let mut out = pd.clone();
    out.vertices.remove(x.max(y));
    out.vertices.remove(x.min(y));
    out.join(&[(a[0], a[2]), (a[1], a[3]), (b[0], b[2]), (b[1], b[3])]);
    Some(out)
}

/// Triangle faces `[(A, sA), (B, sB), (C, sC)]` where the strand opposite A is
/// on top at both its crossings or at the bottom at both, listed with that A first.
pub fn r3_sites(pd: &PDDiagram) -> Vec<[(usize, usize); 3]> {
    let mut out = Vec::new();
    for f in pd.faces() {
        let [c0, c1, c2] = f.as_slice() else { continue };
        let tri = [*c0, *c1, *c2];
        let vs = [tri[0].0, tri[1].0, tri[2].0];
        if vs[0] == vs[1] || vs[1] == vs[2] || vs[0] == vs[2] || vs.iter().any(|&v| !is_crossing(&pd.vertices[v])) {
            continue;
        }
        for k in 0..3 {
            let a = tri[k];
            let b = tri[(k + 1) % 3];
            // edge from B to C leaves B at slot sB and reaches C at the slot before sC
            let (c, sc_in) = other_end(pd, b.0, b.1);
            if c != tri[(k + 2) % 3].0 {
                continue;
            }
            if is_over(&pd.vertices[b.0], b.1) == is_over(&pd.vertices[c], sc_in) {
                out.push([a, b, tri[(k + 2) % 3]]);
            }
        }
    }
    out
}

/// Slide the strand opposite A across A. Every vertex keeps its slot layout;
/// triangle edges and outer arcs trade places.
pub fn r3(pd: &PDDiagram, tri: [(usize, usize); 3]) -> Option<PDDiagram> {
    if !r3_sites(pd).contains(&tri) {
        return None;
    }
    let vs = [tri[0].0, tri[1].0, tri[2].0];
    // at each vertex: the slot of the edge to the next vertex and of the edge from the previous one
    let mut edge_out = [0usize; 3];
    let mut edge_in = [0usize; 3];
    for k in 0..3 {
        edge_out[k] = tri[k].1;
        let (_, t) = other_end(pd, vs[k], tri[k].1);
        edge_in[(k + 1) % 3] = t;
    }
    let arcs = |k: usize, s: usize| pd.vertices[vs[k]].arcs()[s];
    let base = fresh(pd);
    let mut out = pd.clone();
    for k in 0..3 {
        let next = (k + 1) % 3;
        let prev = (k + 2) % 3;
        // the strand of edge k -> next continues past next on the slot opposite its arrival
        let outer_at_next = arcs(next, (edge_in[next] + 2) % 4);
        let outer_at_prev = arcs(prev, (edge_out[prev] + 2) % 4);
        set_arc(&mut out.vertices[vs[k]], edge_out[k], outer_at_next);
        set_arc(&mut out.vertices[vs[k]], edge_in[k], outer_at_prev);
        // new inner edges: the strand through k and next gets arc base + k
        set_arc(&mut out.vertices[vs[k]], (edge_out[k] + 2) % 4, base + k as u32);
        set_arc(&mut out.vertices[vs[next]], (edge_in[next] + 2) % 4, base + k as u32);
    }
    Some(out)
}

/// A named rewrite, for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rewrite {
    R1Add { arc: u32, style: u8 },
    R1Remove { vertex: usize },
    R2Add { p: (usize, usize), q: (usize, usize), p_over: bool },
    R2Remove { x: usize, y: usize },
    R3 { tri: [(usize, usize); 3] },
}

impl Rewrite {
    pub fn apply(&self, pd: &PDDiagram) -> Option<PDDiagram> {
        match *self {
            Rewrite::R1Add { arc, style } => r1_add(pd, arc, style),
            Rewrite::R1Remove { vertex } => r1_remove(pd, vertex),
            Rewrite::R2Add { p, q, p_over } => r2_add(pd, p, q, p_over),
            Rewrite::R2Remove { x, y } => r2_remove(pd, x, y),
            Rewrite::R3 { tri } => r3(pd, tri),
        }
    }
}

/// One random applicable rewrite. Growth is damped once the code has more
/// than `soft_cap` crossings.
pub fn random_rewrite<R: Rng>(pd: &PDDiagram, rng: &mut R, soft_cap: usize) -> Option<Rewrite> {
    let mut options = Vec::new();
    let big = pd.crossing_count() > soft_cap;
    let r3s = r3_sites(pd);
    if let Some(t) = r3s.choose(rng) {
        options.push(Rewrite::R3 { tri: *t });
    }
    if let Some(&v) = r1_sites(pd).choose(rng) {
        options.push(Rewrite::R1Remove { vertex: v });
    }
    if let Some(&(x, y)) = r2_sites(pd).choose(rng) {
        options.push(Rewrite::R2Remove { x, y });
    }
    if !big || options.is_empty() {
        let arcs: Vec<u32> = pd.arcs().into_iter().collect();
        if let Some(&arc) = arcs.choose(rng) {
            options.push(Rewrite::R1Add { arc, style: rng.gen_range(0..4) });
        }
        let faces: Vec<_> = pd.faces().into_iter().filter(|f| f.len() >= 2).collect();
        if let Some(f) = faces.choose(rng) {
            let i = rng.gen_range(0..f.len());
            let j = (i + rng.gen_range(1..f.len())) % f.len();
            options.push(Rewrite::R2Add { p: f[i], q: f[j], p_over: rng.gen() });
        }
    }
    // R3 does not change size, so offer it more often
    if let Some(t) = r3s.choose(rng) {
        options.push(Rewrite::R3 { tri: *t });
    }
    options.choose(rng).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::to_pd;
    use crate::oracle::normalized_bracket;
    use crate::random::random_grid;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn each_rewrite_keeps_the_bracket() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut kinds = [0usize; 5];
        for _ in 0..20 {
            let g = random_grid(&mut rng, 5, 0);
            let mut pd = to_pd(&g);
            let want = normalized_bracket(&pd).unwrap();
            for _ in 0..30 {
                let Some(rw) = random_rewrite(&pd, &mut rng, 16) else { break };
                let next = rw.apply(&pd).expect("offered rewrites apply");
                assert!(next.orientation_consistent(), "{rw:?}");
                assert_eq!(normalized_bracket(&next).unwrap(), want, "{rw:?}");
                kinds[match rw {
                    Rewrite::R1Add { .. } => 0,
                    Rewrite::R1Remove { .. } => 1,
                    Rewrite::R2Add { .. } => 2,
                    Rewrite::R2Remove { .. } => 3,
                    Rewrite::R3 { .. } => 4,
                }] += 1;
                pd = next;
            }
        }
        assert!(kinds.iter().all(|&k| k > 0), "{kinds:?}");
    }
}
