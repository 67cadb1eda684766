//! Invariants of planar diagrams, computed without reference to grids.
//!
//! The bracket is evaluated by contracting crossings one at a time while
//! keeping the pairing of dangling arc ends, so its cost grows with the width
//! of the frontier rather than with the number of crossings.

pub mod poly;
pub mod reidemeister;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

pub use poly::Laurent;

use crate::closure::pd::PDDiagram;
use crate::resolution::Eta;

pub const MAX_CROSSINGS: usize = 80;
pub const MAX_SINGULAR: usize = 6;
const MAX_STATES: usize = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("diagram too large: {0}")]
    TooLarge(String),
    #[error("diagram has singular vertices")]
    Singular,
}

type State = Vec<(u32, u32)>;

/// Join the ends `p` and `q` inside the current pairing; returns loops closed.
fn join(state: &mut HashMap<u32, u32>, p: u32, q: u32) -> usize {
    if p == q {
        return 1;
    }
    let po = state.contains_key(&p);
    let qo = state.contains_key(&q);
    if po && qo && state[&p] == q {
        state.remove(&p);
        state.remove(&q);
        return 1;
    }
    let a = if po {
        let x = state.remove(&p).unwrap();
        state.remove(&x);
        x
    } else {
        p
    };
    let b = if qo {
        let x = state.remove(&q).unwrap();
        state.remove(&x);
        x
    } else {
        q
    };
    state.insert(a, b);
    state.insert(b, a);
    0
}

fn canon(state: &HashMap<u32, u32>) -> State {
    let mut v: State = state.iter().filter(|(a, b)| a < b).map(|(a, b)| (*a, *b)).collect();
    v.sort_unstable();
    v
}

/// Crossing order that keeps the frontier narrow.
fn contraction_order(pd: &PDDiagram) -> Vec<usize> {
    let n = pd.vertices.len();
    let mut done = vec![false; n];
    let mut open: BTreeSet<u32> = BTreeSet::new();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&i| !done[i])
            .max_by_key(|&i| {
                let arcs = pd.vertices[i].arcs();
                let shared = arcs.iter().filter(|a| open.contains(a)).count() as i64;
                (shared, -(i as i64))
            })
            .unwrap();
        done[best] = true;
        order.push(best);
        for a in pd.vertices[best].arcs() {
            if !open.remove(&a) {
                open.insert(a);
            }
        }
    }
    order
}

/// Unnormalized Kauffman bracket with the value of one loop equal to 1.
pub fn kauffman_bracket(pd: &PDDiagram) -> Result<Laurent, OracleError> {
    if pd.is_singular() {
        return Err(OracleError::Singular);
    }
    if pd.vertices.len() > MAX_CROSSINGS {
        return Err(OracleError::TooLarge(format!("{} crossings", pd.vertices.len())));
    }
    let mut states: HashMap<State, Laurent> = HashMap::new();
    states.insert(Vec::new(), Laurent::one());
    let d = Laurent::delta();
    for i in contraction_order(pd) {
        let [a, b, c, e] = pd.vertices[i].arcs();
        let mut next: HashMap<State, Laurent> = HashMap::new();
        for (st, coef) in &states {
            for (w, pairs) in [(1, [(a, b), (c, e)]), (-1, [(a, e), (b, c)])] {
                let mut m: HashMap<u32, u32> = HashMap::new();
                for &(x, y) in st {
                    m.insert(x, y);
                    m.insert(y, x);
                }
                let mut loops = 0;
                for (p, q) in pairs {
                    loops += join(&mut m, p, q);
                }
                let mut term = coef.shift(w);
                for _ in 0..loops {
                    term = &term * &d;
                }
                next.entry(canon(&m)).or_insert_with(Laurent::zero).add_assign(&term);
            }
        }
        next.retain(|_, v| !v.is_zero());
        if next.len() > MAX_STATES {
            return Err(OracleError::TooLarge(format!("frontier of {} states", next.len())));
        }
        states = next;
    }
    let total = states.remove(&Vec::new()).unwrap_or_else(Laurent::zero);
    let total = &total * &Laurent::pow_delta(pd.free_loops);
    if pd.vertices.is_empty() && pd.free_loops == 0 {
        return Ok(Laurent::one());
    }
    Ok(total.div_delta().expect("every state has a loop"))
}

/// (-A^3)^(-writhe) times the bracket.
pub fn normalized_bracket(pd: &PDDiagram) -> Result<Laurent, OracleError> {
    let b = kauffman_bracket(pd)?;
    let w = pd.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    Ok(b.shift(-3 * w as i32).scale(sign))
}

pub fn linking_numbers(pd: &PDDiagram) -> Vec<Vec<i64>> {
    pd.linking_matrix()
}

/// Invariants of one fully resolved diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeEntry {
    pub bracket: Laurent,
    pub components: usize,
    pub linking: Vec<i64>,
}

/// Components plus the multiset of resolved invariants over the resolution cube.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub components: usize,
    pub singular: usize,
    pub cube: Vec<CubeEntry>,
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{{\"components\": {}, \"singular\": {}, \"cube\": [", self.components, self.singular)?;
        for (i, e) in self.cube.iter().enumerate() {
            let sep = if i + 1 < self.cube.len() { "," } else { "" };
            writeln!(
                f,
                "  {{\"bracket\": \"{}\", \"components\": {}, \"linking\": {:?}}}{sep}",
                e.bracket, e.components, e.linking
            )?;
        }
        write!(f, "]}}")
    }
}

fn cube_entry(pd: &PDDiagram) -> Result<CubeEntry, OracleError> {
    Ok(CubeEntry { bracket: normalized_bracket(pd)?, components: pd.component_count(), linking: pd.linking_pairs() })
}

/// All 3^k full resolutions of the singular vertices.
pub fn resolution_cube(pd: &PDDiagram) -> Vec<PDDiagram> {
    let mut out = vec![pd.clone()];
    loop {
        let Some(&first) = out[0].singular_indices().first() else {
            return out;
        };
        let _ = first;
        out = out
            .iter()
            .flat_map(|d| {
                let i = d.singular_indices()[0];
                Eta::ALL.iter().map(move |&e| d.resolve(i, e).unwrap())
            })
            .collect();
    }
}

pub fn fingerprint(pd: &PDDiagram) -> Result<Fingerprint, OracleError> {
    let k = pd.singular_indices().len();
    if k > MAX_SINGULAR {
        return Err(OracleError::TooLarge(format!("{k} singular vertices")));
    }
    let mut cube = resolution_cube(pd).par_iter().map(cube_entry).collect::<Result<Vec<_>, _>>()?;
    cube.sort();
    Ok(Fingerprint { components: pd.component_count(), singular: k, cube })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(s: &str) -> PDDiagram {
        PDDiagram::parse(s).unwrap()
    }

    #[test]
    fn unknot_is_one() {
        let u = PDDiagram { vertices: vec![], free_loops: 1 };
        assert_eq!(normalized_bracket(&u).unwrap(), Laurent::one());
        let kink = pd("X[1,1,2,2;+]");
        assert!(kink.orientation_consistent());
        assert_eq!(normalized_bracket(&kink).unwrap(), Laurent::one());
    }

    #[test]
    fn trefoils_are_mirrors() {
        let left = pd("X[1,4,2,5;-] X[3,6,4,1;-] X[5,2,6,3;-]");
        let right = pd("X[1,5,2,4;+] X[3,1,4,6;+] X[5,3,6,2;+]");
        assert!(left.orientation_consistent() && right.orientation_consistent());
        let l = normalized_bracket(&left).unwrap();
        let r = normalized_bracket(&right).unwrap();
        assert_eq!(r, Laurent::from_terms(&[(-4, 1), (-12, 1), (-16, -1)]));
        assert_eq!(l, Laurent::from_terms(&[(4, 1), (12, 1), (16, -1)]));
    }

    #[test]
    fn two_circles() {
        let u = PDDiagram { vertices: vec![], free_loops: 2 };
        assert_eq!(normalized_bracket(&u).unwrap(), Laurent::delta());
    }

    #[test]
    fn cube_size() {
        let f = fingerprint(&pd("V[1,1,2,2]")).unwrap();
        assert_eq!(f.cube.len(), 3);
        assert_eq!(f.components, 1);
    }
}
