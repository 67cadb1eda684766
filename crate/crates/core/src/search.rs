//! Bounded equivalence search over the move graph, one quotient per category.
//!
//! Visited diagrams are keyed by [`canonical_key`], the least serialization
//! over translations and commutations reachable within a bounded number of
//! steps. Equal keys imply equivalence; different keys say nothing.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::braid::{grid_to_braid, rewrite_equivalent, RewriteOptions, Verdict};
use crate::closure::to_pd;
use crate::grid::GridDiagram;
use crate::legendrian::thurston_bennequin;
use crate::moves::{successors_in, Family, Move, StabKind};
use crate::oracle::fingerprint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    SB,
    SL,
    ST,
    SK,
}

impl Category {
    pub const ALL: [Category; 4] = [Category::SB, Category::SL, Category::ST, Category::SK];

    /// Whether moves of family `f` generate this category's equivalence.
    pub fn allows(self, f: Family) -> bool {
        use StabKind::*;
        match f {
            Family::Translate | Family::Commute => true,
            Family::Stab(k) => match self {
                Category::SB => matches!(k, NE | SE),
                Category::SL => matches!(k, NE | SW),
                Category::ST => matches!(k, NE | SW | SE),
                Category::SK => true,
            },
            Family::Rot { starred } => starred || self != Category::SB,
            Family::Swirl => self == Category::SB,
            Family::Flype => self != Category::SL,
        }
    }

    pub fn stab_kinds(self) -> Vec<StabKind> {
        StabKind::ALL.into_iter().filter(|&k| self.allows(Family::Stab(k))).collect()
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::SB => "sb",
            Category::SL => "sl",
            Category::ST => "st",
            Category::SK => "sk",
        })
    }
}

impl FromStr for Category {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "sb" => Ok(Category::SB),
            "sl" => Ok(Category::SL),
            "st" => Ok(Category::ST),
            "sk" => Ok(Category::SK),
            _ => Err(format!("unknown category '{s}' (expected sb, sl, st or sk)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_size: usize,
    pub max_visited: usize,
    pub max_depth: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_size: 10, max_visited: 20_000, max_depth: 8 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Moves taking the first diagram to exactly the second.
    Equivalent(Vec<Move>),
    /// Names the invariant that differs.
    Distinguished(String),
    Unknown { visited: usize },
}

/// Steps of translations and commutations explored by [`canonical_key`].
pub const NORMALIZATION_DEPTH: usize = 2;
const NORMALIZATION_CAP: usize = 400;

fn line_moves(g: &GridDiagram) -> Vec<(Move, GridDiagram)> {
    successors_in(g, |f| matches!(f, Family::Translate | Family::Commute))
}

/// Least serialization over the translations and commutations within
/// `depth` steps of `g`, with a path of moves reaching it.
pub fn normalize(g: &GridDiagram, depth: usize) -> (GridDiagram, Vec<Move>) {
    let mut parent: BTreeMap<String, Option<(String, Move)>> = BTreeMap::new();
    let mut diagrams: BTreeMap<String, GridDiagram> = BTreeMap::new();
    let start = g.serialize();
    parent.insert(start.clone(), None);
    diagrams.insert(start.clone(), g.clone());
    let mut frontier = vec![start];
    for _ in 0..depth {
        let mut next = Vec::new();
        for key in &frontier {
            for (m, h) in line_moves(&diagrams[key]) {
                let k = h.serialize();
                if parent.contains_key(&k) {
                    continue;
                }
                parent.insert(k.clone(), Some((key.clone(), m)));
                diagrams.insert(k.clone(), h);
                next.push(k);
            }
            if parent.len() >= NORMALIZATION_CAP {
                break;
            }
        }
        frontier = next;
        if frontier.is_empty() || parent.len() >= NORMALIZATION_CAP {
            break;
        }
    }
    let best = diagrams.keys().next().expect("start is present").clone();
    let mut path = Vec::new();
    let mut at = best.clone();
    while let Some(Some((p, m))) = parent.get(&at) {
        path.push(*m);
        at = p.clone();
    }
    path.reverse();
    (diagrams.remove(&best).expect("present"), path)
}

/// Visited-set key: sound for deduplication (equal keys are equivalent
/// diagrams), not a complete canonical form.
pub fn canonical_key(g: &GridDiagram) -> String {
    normalize(g, NORMALIZATION_DEPTH).0.serialize()
}

/// Moves from `a` to `b` when both normalize to the same diagram.
fn bridge(a: &GridDiagram, b: &GridDiagram) -> Vec<Move> {
    let (_, mut path) = normalize(a, NORMALIZATION_DEPTH);
    path.extend(reverse_path(b, &normalize(b, NORMALIZATION_DEPTH).1));
    path
}

/// Given moves taking `g` to some `h`, the moves taking `h` back to `g`.
fn reverse_path(g: &GridDiagram, path: &[Move]) -> Vec<Move> {
    let mut cur = g.clone();
    let mut inv = Vec::new();
    for m in path {
        inv.push(m.inverse(&cur));
        cur = m.apply(&cur).expect("path replays");
    }
    inv.reverse();
    inv
}

/// Apply a path of moves.
pub fn replay(g: &GridDiagram, path: &[Move]) -> Result<GridDiagram, String> {
    let mut cur = g.clone();
    for m in path {
        cur = m.apply(&cur).map_err(|e| format!("{m}: {e}"))?;
    }
    Ok(cur)
}

/// Cheap invariants of the category's quotient that tell the two apart.
fn separate(g1: &GridDiagram, g2: &GridDiagram, cat: Category) -> Option<String> {
    if g1.singular_cells().len() != g2.singular_cells().len() {
        return Some("singular tile count".into());
    }
    if g1.component_count() != g2.component_count() {
        return Some("component count".into());
    }
    if cat == Category::SL && thurston_bennequin(g1) != thurston_bennequin(g2) {
        return Some(format!("tb ({} vs {})", thurston_bennequin(g1), thurston_bennequin(g2)));
    }
    if let (Ok(f1), Ok(f2)) = (fingerprint(&to_pd(g1)), fingerprint(&to_pd(g2))) {
        if f1 != f2 {
            return Some("fingerprint".into());
        }
    }
    if cat == Category::SB {
        let opts = RewriteOptions { budget: 1, ..Default::default() };
        if let Verdict::NotEquivalent(why) = rewrite_equivalent(&grid_to_braid(g1), &grid_to_braid(g2), &opts) {
            return Some(format!("braid word: {why}"));
        }
    }
    None
}

/// Greedy simplification with the moves taken: destabilize while possible,
/// otherwise look for translations and commutations that enable one.
pub fn simplify_path(g: &GridDiagram, cat: Category, budget: SearchBudget) -> (GridDiagram, Vec<Move>) {
    let kinds = cat.stab_kinds();
    let destab = |h: &GridDiagram| -> Option<(Move, GridDiagram)> {
        crate::moves::destabilizations(h)
            .into_iter()
            .find(|d| kinds.contains(&d.0))
            .map(|(kind, r, c, variant, out)| (Move::Destab { kind, r, c, variant }, out))
    };
    let mut cur = g.clone();
    let mut path = Vec::new();
    loop {
        if let Some((m, h)) = destab(&cur) {
            path.push(m);
            cur = h;
            continue;
        }
        // breadth-first over line moves until a destabilization shows up
        let mut seen: BTreeSet<String> = BTreeSet::from([cur.serialize()]);
        let mut queue: VecDeque<(GridDiagram, Vec<Move>)> = VecDeque::from([(cur.clone(), Vec::new())]);
        let mut found = None;
        'bfs: while let Some((h, p)) = queue.pop_front() {
            if p.len() >= budget.max_depth || seen.len() >= budget.max_visited {
                continue;
            }
            for (m, k) in line_moves(&h) {
                if !seen.insert(k.serialize()) {
                    continue;
                }
                let mut q = p.clone();
                q.push(m);
                if let Some((dm, out)) = destab(&k) {
                    q.push(dm);
                    found = Some((out, q));
                    break 'bfs;
                }
                queue.push_back((k, q));
            }
        }
        match found {
            Some((h, q)) => {
                path.extend(q);
                cur = h;
            }
            None => return (cur, path),
        }
    }
}

pub fn simplify(g: &GridDiagram, cat: Category, budget: SearchBudget) -> GridDiagram {
    simplify_path(g, cat, budget).0
}

struct Side {
    /// key -> (diagram, parent key and the move from parent to this diagram)
    nodes: BTreeMap<String, (GridDiagram, Option<(String, Move)>)>,
    frontier: Vec<String>,
    depth: usize,
}

impl Side {
    fn new(g: &GridDiagram) -> Side {
        let k = canonical_key(g);
        Side { nodes: BTreeMap::from([(k.clone(), (g.clone(), None))]), frontier: vec![k], depth: 0 }
    }

    /// Moves from the root to the node at `key`.
    fn path_to(&self, key: &str) -> Vec<Move> {
        let mut out = Vec::new();
        let mut at = key.to_string();
        while let Some((_, Some((p, m)))) = self.nodes.get(&at) {
            out.push(*m);
            at = p.clone();
        }
        out.reverse();
        out
    }

    /// Expand one level; returns the first key also known to `other`.
    fn step(&mut self, other: &Side, cat: Category, budget: &SearchBudget) -> Option<String> {
        let expanded: Vec<Vec<(Move, GridDiagram, String)>> = self
            .frontier
            .par_iter()
            .map(|key| {
                let g = &self.nodes[key].0;
                let mut succ: Vec<(Move, GridDiagram)> =
                    successors_in(g, |f| cat.allows(f)).into_iter().filter(|(_, h)| h.n <= budget.max_size).collect();
                // smaller diagrams first
                succ.sort_by_key(|(m, h)| (h.n, !matches!(m, Move::Destab { .. })));
                succ.into_iter().map(|(m, h)| {
                    let k = canonical_key(&h);
                    (m, h, k)
                }).collect()
            })
            .collect();
        let mut next = Vec::new();
        let mut hit = None;
        for (key, succ) in self.frontier.iter().zip(expanded) {
            for (m, h, k) in succ {
                if self.nodes.contains_key(&k) {
                    continue;
                }
                self.nodes.insert(k.clone(), (h, Some((key.clone(), m))));
                if hit.is_none() && other.nodes.contains_key(&k) {
                    hit = Some(k.clone());
                }
                next.push(k);
            }
        }
        next.sort_by_key(|k| self.nodes[k].0.n);
        self.frontier = next;
        self.depth += 1;
        hit
    }
}

/// Decide whether `g1` and `g2` are related by the category's moves, within budget.
pub fn equivalent(g1: &GridDiagram, g2: &GridDiagram, cat: Category, budget: SearchBudget) -> Outcome {
    if let Some(why) = separate(g1, g2, cat) {
        return Outcome::Distinguished(why);
    }
    // greedy descent first, from both ends
    let (s1, p1) = simplify_path(g1, cat, SearchBudget { max_depth: 2, ..budget });
    let (s2, p2) = simplify_path(g2, cat, SearchBudget { max_depth: 2, ..budget });
    let finish = |a_path: Vec<Move>, a: &GridDiagram, b: &GridDiagram, b_path: Vec<Move>| {
        let mut path = p1.clone();
        path.extend(a_path);
        path.extend(bridge(a, b));
        path.extend(b_path);
        path.extend(reverse_path(g2, &p2));
        Outcome::Equivalent(path)
    };
    let mut fwd = Side::new(&s1);
    let mut bwd = Side::new(&s2);
    if fwd.nodes.contains_key(&bwd.frontier[0]) {
        return finish(Vec::new(), &s1, &s2, Vec::new());
    }
    loop {
        let visited = fwd.nodes.len() + bwd.nodes.len();
        if visited >= budget.max_visited || fwd.depth + bwd.depth >= budget.max_depth {
            return Outcome::Unknown { visited };
        }
        // grow the smaller side
        let forward = fwd.frontier.len() <= bwd.frontier.len();
        let (a, b) = if forward { (&mut fwd, &bwd) } else { (&mut bwd, &fwd) };
        if a.frontier.is_empty() {
            return Outcome::Unknown { visited };
        }
        if let Some(k) = a.step(b, cat, &budget) {
            let (x, y) = (&fwd.nodes[&k].0, &bwd.nodes[&k].0);
            let to_x = fwd.path_to(&k);
            let back = reverse_path(&s2, &bwd.path_to(&k));
            return finish(to_x, x, y, back);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::stabilize;

    const UNKNOT: &str = "grid 2\nse+ sw-\nne- nw+\n";

    #[test]
    fn keys_survive_line_moves() {
        let g = GridDiagram::parse(UNKNOT).unwrap();
        let h = stabilize(&g, StabKind::NE, 1, 1, 0).unwrap();
        for (_, k) in line_moves(&h) {
            assert_eq!(canonical_key(&k), canonical_key(&h));
        }
    }

    #[test]
    fn unknot_against_its_stabilizations() {
        let g = GridDiagram::parse(UNKNOT).unwrap();
        let se = stabilize(&g, StabKind::SE, 1, 1, 0).unwrap();
        assert!(matches!(equivalent(&g, &se, Category::SL, SearchBudget::default()), Outcome::Distinguished(w) if w.starts_with("tb")));
        for cat in [Category::ST, Category::SK, Category::SB] {
            let Outcome::Equivalent(path) = equivalent(&g, &se, cat, SearchBudget { max_depth: 4, ..Default::default() }) else {
                panic!("{cat}")
            };
            assert_eq!(replay(&g, &path).unwrap(), se);
        }
        let ne = stabilize(&g, StabKind::NE, 2, 2, 0).unwrap();
        for cat in Category::ALL {
            let Outcome::Equivalent(path) = equivalent(&ne, &g, cat, SearchBudget::default()) else { panic!("{cat}") };
            assert_eq!(replay(&ne, &path).unwrap(), g);
            assert!(path.len() <= 4);
        }
    }

    #[test]
    fn simplify_reaches_the_unknot() {
        let g = GridDiagram::parse(UNKNOT).unwrap();
        let h = stabilize(&g, StabKind::NE, 1, 1, 0).unwrap();
        let s = simplify(&h, Category::SK, SearchBudget::default());
        assert_eq!(s.n, 2);
        assert_eq!(simplify(&s, Category::SK, SearchBudget::default()), s);
    }
}
