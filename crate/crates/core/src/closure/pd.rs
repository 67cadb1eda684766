//! Planar diagram codes with classical crossings and singular vertices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::resolution::Eta;

/// A 4-valent vertex. Arcs are listed counterclockwise.
///
/// A crossing starts at the incoming under arc, so `arcs[2]` is the outgoing
/// under arc; the over strand runs from `arcs[3]` to `arcs[1]` when the sign is
/// positive and the other way when negative.
///
/// A singular vertex starts at an incoming arc whose counterclockwise
/// successor is outgoing: `arcs[0] -> arcs[2]` and `arcs[3] -> arcs[1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Crossing { arcs: [u32; 4], sign: i8 },
    Singular { arcs: [u32; 4] },
}

impl Vertex {
    pub fn arcs(&self) -> [u32; 4] {
        match self {
            Vertex::Crossing { arcs, .. } | Vertex::Singular { arcs } => *arcs,
        }
    }

    fn arcs_mut(&mut self) -> &mut [u32; 4] {
        match self {
            Vertex::Crossing { arcs, .. } | Vertex::Singular { arcs } => arcs,
        }
    }

    /// Incoming flags per slot.
    pub fn incoming(&self) -> [bool; 4] {
        match self {
            Vertex::Crossing { sign, .. } => {
                if *sign > 0 {
                    [true, false, false, true]
                } else {
                    [true, true, false, false]
                }
            }
            Vertex::Singular { .. } => [true, false, false, true],
        }
    }

    /// The two strands through the vertex as (in slot, out slot).
    pub fn strands(&self) -> [(usize, usize); 2] {
        match self {
            Vertex::Crossing { sign, .. } => {
                if *sign > 0 {
                    [(0, 2), (3, 1)]
                } else {
                    [(0, 2), (1, 3)]
                }
            }
            Vertex::Singular { .. } => [(0, 2), (3, 1)],
        }
    }

    /// Crossing from ccw arcs with in-flags, given which strand is under.
    pub fn crossing_from(arcs: [u32; 4], incoming: [bool; 4], under_slot: usize) -> Vertex {
        // under_slot is either end of the under strand; rotate so slot 0 is its incoming end
        let start = if incoming[under_slot] { under_slot } else { (under_slot + 2) % 4 };
        let rot = |k: usize| arcs[(start + k) % 4];
        let over_out_at_1 = !incoming[(start + 1) % 4];
        Vertex::Crossing { arcs: [rot(0), rot(1), rot(2), rot(3)], sign: if over_out_at_1 { 1 } else { -1 } }
    }

    /// Singular vertex from ccw arcs with in-flags.
    pub fn singular_from(arcs: [u32; 4], incoming: [bool; 4]) -> Vertex {
        let start = (0..4).find(|&s| incoming[s] && !incoming[(s + 1) % 4]).expect("two in, two out, opposite");
        let rot = |k: usize| arcs[(start + k) % 4];
        Vertex::Singular { arcs: [rot(0), rot(1), rot(2), rot(3)] }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PdError {
    #[error("malformed PD text: {0}")]
    Parse(String),
    #[error("vertex {0} is not singular")]
    NotSingular(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PDDiagram {
    pub vertices: Vec<Vertex>,
    /// Components without any vertex.
    pub free_loops: usize,
}

struct Dsu(BTreeMap<u32, u32>);

impl Dsu {
    fn find(&mut self, x: u32) -> u32 {
        let p = *self.0.entry(x).or_insert(x);
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0.insert(x, r);
        r
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0.insert(ra.max(rb), ra.min(rb));
        }
    }
}

impl PDDiagram {
    pub fn crossing_count(&self) -> usize {
        self.vertices.iter().filter(|v| matches!(v, Vertex::Crossing { .. })).count()
    }

    pub fn singular_indices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&i| matches!(self.vertices[i], Vertex::Singular { .. })).collect()
    }

    pub fn is_singular(&self) -> bool {
        !self.singular_indices().is_empty()
    }

    pub fn arcs(&self) -> BTreeSet<u32> {
        self.vertices.iter().flat_map(|v| v.arcs()).collect()
    }

    /// Component label per arc (0-based, ordered by least arc).
    pub fn arc_components(&self) -> BTreeMap<u32, usize> {
        let mut d = Dsu(BTreeMap::new());
        for v in &self.vertices {
            let a = v.arcs();
            for (i, o) in v.strands() {
                d.union(a[i], a[o]);
            }
        }
        let arcs = self.arcs();
        let mut label = BTreeMap::new();
        let mut roots: BTreeMap<u32, usize> = BTreeMap::new();
        for a in arcs {
            let r = d.find(a);
            let k = roots.len();
            let l = *roots.entry(r).or_insert(k);
            label.insert(a, l);
        }
        label
    }

    pub fn component_count(&self) -> usize {
        let labels = self.arc_components();
        labels.values().collect::<BTreeSet<_>>().len() + self.free_loops
    }

    pub fn writhe(&self) -> i64 {
        self.vertices
            .iter()
            .map(|v| match v {
                Vertex::Crossing { sign, .. } => *sign as i64,
                _ => 0,
            })
            .sum()
    }

    /// Sorted list of pairwise linking numbers.
    pub fn linking_pairs(&self) -> Vec<i64> {
        let m = self.linking_matrix();
        let mut out = Vec::new();
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                out.push(m[i][j]);
            }
        }
        out.sort();
        out
    }

    /// Linking numbers between components (vertex-carrying components first,
    /// then free loops). Singular vertices are ignored.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let labels = self.arc_components();
        let k = labels.values().collect::<BTreeSet<_>>().len();
        let total = k + self.free_loops;
        let mut twice = vec![vec![0i64; total]; total];
        for v in &self.vertices {
            if let Vertex::Crossing { arcs, sign } = v {
                let (a, b) = (labels[&arcs[0]], labels[&arcs[1]]);
                if a != b {
                    twice[a][b] += *sign as i64;
                    twice[b][a] += *sign as i64;
                }
            }
        }
        twice.iter().map(|r| r.iter().map(|x| x / 2).collect()).collect()
    }

    /// Sum of signs over crossings between distinct components.
    pub fn inter_writhe(&self) -> i64 {
        let labels = self.arc_components();
        self.vertices
            .iter()
            .map(|v| match v {
                Vertex::Crossing { arcs, sign } if labels[&arcs[0]] != labels[&arcs[1]] => *sign as i64,
                _ => 0,
            })
            .sum()
    }

    /// Every arc has one tail and one head.
    pub fn orientation_consistent(&self) -> bool {
        let mut heads: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        for v in &self.vertices {
            for (s, a) in v.arcs().iter().enumerate() {
                let e = heads.entry(*a).or_insert((0, 0));
                if v.incoming()[s] {
                    e.0 += 1;
                } else {
                    e.1 += 1;
                }
            }
        }
        heads.values().all(|&h| h == (1, 1))
    }

    /// Replace the singular vertex `idx` by its resolution.
    pub fn resolve(&self, idx: usize, eta: Eta) -> Result<PDDiagram, PdError> {
        let Vertex::Singular { arcs: [a, b, c, d] } = self.vertices[idx] else {
            return Err(PdError::NotSingular(idx));
        };
        let mut out = self.clone();
        match eta {
            Eta::Plus => out.vertices[idx] = Vertex::Crossing { arcs: [a, b, c, d], sign: 1 },
            Eta::Minus => out.vertices[idx] = Vertex::Crossing { arcs: [d, a, b, c], sign: -1 },
            Eta::Zero => {
                out.vertices.remove(idx);
                out.join(&[(a, b), (d, c)]);
            }
        }
        Ok(out)
    }

    /// Identify arcs pairwise after a vertex was removed, counting closed loops.
    pub(crate) fn join(&mut self, pairs: &[(u32, u32)]) {
        let mut d = Dsu(BTreeMap::new());
        for &(x, y) in pairs {
            d.union(x, y);
        }
        let touched: BTreeSet<u32> = pairs.iter().flat_map(|&(x, y)| [x, y]).collect();
        for v in &mut self.vertices {
            for a in v.arcs_mut().iter_mut() {
                *a = d.find(*a);
            }
        }
        let live = self.arcs();
        let roots: BTreeSet<u32> = touched.iter().map(|&t| d.find(t)).collect();
        self.free_loops += roots.iter().filter(|r| !live.contains(r)).count();
    }

    /// Renumber arcs 1.. in order of first appearance.
    pub fn renumbered(&self) -> PDDiagram {
        let mut map = BTreeMap::new();
        let mut out = self.clone();
        for v in &mut out.vertices {
            for a in v.arcs_mut().iter_mut() {
                let k = map.len() as u32 + 1;
                *a = *map.entry(*a).or_insert(k);
            }
        }
        out
    }

    /// Faces as cyclic lists of (vertex, slot) corners, using the ccw order.
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        // slot -> the other end of its arc
        let mut ends: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (vi, v) in self.vertices.iter().enumerate() {
            for (s, a) in v.arcs().iter().enumerate() {
                ends.entry(*a).or_default().push((vi, s));
            }
        }
        let other = |vi: usize, s: usize| -> (usize, usize) {
            let e = &ends[&self.vertices[vi].arcs()[s]];
            if e[0] == (vi, s) { e[1] } else { e[0] }
        };
        let mut seen = BTreeSet::new();
        let mut faces = Vec::new();
        for vi in 0..self.vertices.len() {
            for s in 0..4 {
                if seen.contains(&(vi, s)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut cv, mut cs) = (vi, s);
                while seen.insert((cv, cs)) {
                    face.push((cv, cs));
                    let (nv, ns) = other(cv, cs);
                    cv = nv;
                    cs = (ns + 3) % 4;
                }
                faces.push(face);
            }
        }
        faces
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            match v {
                Vertex::Crossing { arcs: [a, b, c, d], sign } => {
                    s.push_str(&format!("X[{a},{b},{c},{d};{}]\n", if *sign > 0 { '+' } else { '-' }))
                }
                Vertex::Singular { arcs: [a, b, c, d] } => s.push_str(&format!("V[{a},{b},{c},{d}]\n")),
            }
        }
        for _ in 0..self.free_loops {
            s.push_str("O[]\n");
        }
        s
    }

    pub fn parse(text: &str) -> Result<PDDiagram, PdError> {
        let mut pd = PDDiagram::default();
        for tok in text.split_whitespace() {
            if tok == "O[]" {
                pd.free_loops += 1;
                continue;
            }
            let bad = || PdError::Parse(tok.to_string());
            let (head, rest) = tok.split_at(1);
            let body = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
            let (nums, sign) = match body.split_once(';') {
                Some((n, s)) => (n, Some(s)),
                None => (body, None),
            };
            let a: Vec<u32> = nums.split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad())?;
            let arcs: [u32; 4] = a.try_into().map_err(|_| bad())?;
            pd.vertices.push(match (head, sign) {
                ("X", Some("+")) => Vertex::Crossing { arcs, sign: 1 },
                ("X", Some("-")) => Vertex::Crossing { arcs, sign: -1 },
                ("V", None) => Vertex::Singular { arcs },
                _ => return Err(bad()),
            });
        }
        Ok(pd)
    }
}

impl fmt::Display for PDDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> PDDiagram {
        PDDiagram::parse("X[1,4,2,5;-] X[3,6,4,1;-] X[5,2,6,3;-]").unwrap()
    }

    #[test]
    fn text_round_trip() {
        let pd = trefoil();
        assert!(pd.orientation_consistent());
        assert_eq!(PDDiagram::parse(&pd.to_text()).unwrap(), pd);
        assert_eq!(pd.component_count(), 1);
    }

    #[test]
    fn faces_satisfy_euler() {
        let pd = trefoil();
        assert_eq!(pd.faces().len(), pd.vertices.len() + 2);
    }

    #[test]
    fn hopf_linking() {
        let hopf = PDDiagram::parse("X[4,1,3,2;-] X[2,3,1,4;-]").unwrap();
        assert!(hopf.orientation_consistent());
        assert_eq!(hopf.component_count(), 2);
        assert_eq!(hopf.linking_pairs(), vec![-1]);
        assert_eq!(hopf.faces().len(), 4);
    }

    #[test]
    fn smoothing_a_lone_vertex_leaves_loops() {
        // figure-eight shaped immersed circle with one double point
        let pd = PDDiagram::parse("V[1,1,2,2]").unwrap();
        let z = pd.resolve(0, Eta::Zero).unwrap();
        assert_eq!(z.vertices.len(), 0);
        assert_eq!(z.free_loops, 2);
    }
}
