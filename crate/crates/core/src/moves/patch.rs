//! Local rewrites that open `k` rows and columns at one cell and fill the
//! resulting block with a fixed set of stops.

use crate::grid::{Cell, GridDiagram};
use crate::skeleton::{hints_of, Opening, Skeleton, Stop};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Patch {
    pub k: usize,
    pub rw: usize,
    pub re: usize,
    pub cn: usize,
    pub cs: usize,
    /// What sits at the opened cell before the rewrite; `None` for a cell without a stop.
    pub center: Option<Stop>,
    /// Offsets inside the block, row first.
    pub stops: Vec<((usize, usize), Stop)>,
}

fn stop_of(cell: Option<Cell>) -> Option<Stop> {
    cell.map(|c| if c.is_singular() { Stop::Singular } else { Stop::Corner })
}

impl Patch {
    pub fn apply(&self, g: &GridDiagram, r: usize, c: usize) -> Option<GridDiagram> {
        if r < 1 || c < 1 || r > g.n || c > g.n || stop_of(g.get(r, c)) != self.center {
            return None;
        }
        let o = Opening { r, c, k: self.k, rw: self.rw, re: self.re, cn: self.cn, cs: self.cs };
        let out = o.apply(g, &self.stops).ok()?;
        out.is_valid().then_some(out)
    }

    /// Undo [`Patch::apply`]: `(r, c)` is the block's south-west cell in `h`.
    /// Succeeds only if applying the patch to the result gives back `h`.
    pub fn collapse(&self, h: &GridDiagram, r: usize, c: usize) -> Option<GridDiagram> {
        let k = self.k;
        if r < 1 || c < 1 || h.n < k + 2 || r + k > h.n || c + k > h.n {
            return None;
        }
        let in_rows = |x: usize| (r..=r + k).contains(&x);
        let in_cols = |x: usize| (c..=c + k).contains(&x);
        let mut inside = Vec::new();
        for (&(pr, pc), &cell) in &h.cells {
            let s = if cell.is_singular() { Stop::Singular } else { Stop::Corner };
            match (in_rows(pr), in_cols(pc)) {
                (true, true) => inside.push(((pr - r, pc - c), s)),
                (true, false) if pr - r != if pc < c { self.rw } else { self.re } => return None,
                (false, true) if pc - c != if pr > r + k { self.cn } else { self.cs } => return None,
                _ => {}
            }
        }
        let mut want = self.stops.clone();
        want.sort();
        inside.sort();
        if inside != want {
            return None;
        }
        let squash = |x: usize, lo: usize| if x < lo { x } else if x <= lo + k { lo } else { x - k };
        let mut sk = Skeleton::new(h.n - k);
        for (&(pr, pc), &cell) in &h.cells {
            if !(in_rows(pr) && in_cols(pc)) {
                sk.stops.insert((squash(pr, r), squash(pc, c)), if cell.is_singular() { Stop::Singular } else { Stop::Corner });
            }
        }
        if let Some(s) = self.center {
            sk.stops.insert((r, c), s);
        }
        let hints: Vec<_> = hints_of(h)
            .into_iter()
            .filter(|&((pr, pc), _)| !(in_rows(pr) && in_cols(pc)))
            .map(|((pr, pc), side)| ((squash(pr, r), squash(pc, c)), side))
            .collect();
        let g = sk.orient_with(&hints).ok()?;
        if !g.is_valid() {
            return None;
        }
        (self.apply(&g, r, c).as_ref() == Some(h)).then_some(g)
    }
}
