//! Stabilizations: open one row and one column at a cell and reroute the strand
//! through the new 2x2 block.
//!
//! At a corner the block holds three corners and one cell without a stop, the
//! one at the old horizontal arm's row and the old vertical arm's column. On a
//! horizontal (vertical) segment the block holds a step: two corners in one new
//! column (row), with the segment continuing on different rows (columns).
//!
//! Types are named after their effect. NE and SW keep tb; NE and SE keep the
//! braid class; SW adds a positive Markov stabilization and NW a negative one.

use std::fmt;
use std::str::FromStr;

use crate::grid::{Cell, GridDiagram, Side};
use crate::grid::Tile;
use crate::skeleton::Stop;

use super::patch::Patch;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StabKind {
    NE,
    SE,
    SW,
    NW,
}

impl StabKind {
    pub const ALL: [StabKind; 4] = [StabKind::NE, StabKind::SE, StabKind::SW, StabKind::NW];
}

impl fmt::Display for StabKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabKind::NE => "NE",
            StabKind::SE => "SE",
            StabKind::SW => "SW",
            StabKind::NW => "NW",
        })
    }
}

impl FromStr for StabKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "NE" => Ok(StabKind::NE),
            "SE" => Ok(StabKind::SE),
            "SW" => Ok(StabKind::SW),
            "NW" => Ok(StabKind::NW),
            _ => Err(format!("unknown stabilization type '{s}'")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    Corner,
    /// A cell where a horizontal segment passes.
    Horizontal,
    Vertical,
}

/// One way to open the block at a cell: `x` is a row offset and `y` a column
/// offset inside the block, each 0 (south/west) or 1 (north/east).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub site: Site,
    pub r: usize,
    pub c: usize,
    pub x: usize,
    pub y: usize,
}

fn corner_patch(v: Side, h: Side, x: usize, y: usize) -> Patch {
    // the horizontal arm leaves the block on row x, the vertical one on column y
    let (rw, re) = if h == Side::West { (x, 1 - x) } else { (1 - x, x) };
    let (cn, cs) = if v == Side::North { (y, 1 - y) } else { (1 - y, y) };
    let stops = vec![((x, 1 - y), Stop::Corner), ((1 - x, 1 - y), Stop::Corner), ((1 - x, y), Stop::Corner)];
    Patch { k: 1, rw, re, cn, cs, center: Some(Stop::Corner), stops }
}

fn segment_patch(site: Site, x: usize, y: usize) -> Patch {
    match site {
        // west part on row x, east part on the other, step in column y
        Site::Horizontal => Patch {
            k: 1,
            rw: x,
            re: 1 - x,
            cn: 1 - y,
            cs: 1 - y,
            center: None,
            stops: vec![((x, y), Stop::Corner), ((1 - x, y), Stop::Corner)],
        },
        // north part on column y, south part on the other, step in row x
        _ => Patch {
            k: 1,
            rw: 1 - x,
            re: 1 - x,
            cn: y,
            cs: 1 - y,
            center: None,
            stops: vec![((x, y), Stop::Corner), ((x, 1 - y), Stop::Corner)],
        },
    }
}

/// Direction of travel through a cell crossed by a single segment.
fn travel(g: &GridDiagram, r: usize, c: usize) -> Option<Side> {
    g.trace_strands().iter().flat_map(|k| k.passages.iter()).find(|p| (p.row, p.col) == (r, c)).map(|p| p.exit)
}

impl Block {
    fn patch(&self, g: &GridDiagram) -> Option<Patch> {
        match self.site {
            Site::Corner => {
                let Some(Cell::Corner(k)) = g.get(self.r, self.c) else { return None };
                Some(corner_patch(k.v(), k.h(), self.x, self.y))
            }
            Site::Horizontal | Site::Vertical => {
                let want = if self.site == Site::Horizontal { Tile::Horizontal } else { Tile::Vertical };
                if g.derive_tiling().get(self.r, self.c) != want {
                    return None;
                }
                Some(segment_patch(self.site, self.x, self.y))
            }
        }
    }

    pub fn apply(&self, g: &GridDiagram) -> Option<GridDiagram> {
        self.patch(g)?.apply(g, self.r, self.c)
    }

    /// All blocks that can be opened at `(r, c)`.
    pub fn at(g: &GridDiagram, r: usize, c: usize) -> Vec<Block> {
        let site = match g.get(r, c) {
            Some(Cell::Corner(_)) => Site::Corner,
            Some(Cell::Singular(_)) => return Vec::new(),
            None => match g.derive_tiling().get(r, c) {
                Tile::Horizontal => Site::Horizontal,
                Tile::Vertical => Site::Vertical,
                _ => return Vec::new(),
            },
        };
        (0..4).map(|v| Block { site, r, c, x: v / 2, y: v % 2 }).collect()
    }

    /// The type of stabilization this block performs on `g`.
    pub fn kind(&self, g: &GridDiagram) -> Option<StabKind> {
        use StabKind::*;
        let (x, y) = (self.x, self.y);
        Some(match self.site {
            Site::Corner => {
                let Some(Cell::Corner(k)) = g.get(self.r, self.c) else { return None };
                let along_h = k.entry() == k.h();
                match ((x, y), along_h) {
                    ((1, 1), true) | ((0, 0), false) => NE,
                    ((0, 0), true) | ((1, 1), false) => SW,
                    ((0, 1), true) | ((1, 0), false) => SE,
                    _ => NW,
                }
            }
            Site::Horizontal => match (travel(g, self.r, self.c)?, x) {
                (Side::East, 0) => SE,
                (Side::East, _) => NE,
                (_, 0) => NW,
                _ => SW,
            },
            Site::Vertical => match (travel(g, self.r, self.c)?, y) {
                (Side::North, 0) => SW,
                (Side::North, _) => SE,
                (_, 0) => NE,
                _ => NW,
            },
        })
    }

    /// Index among the blocks of the same type at this cell.
    fn variant(&self) -> usize {
        match self.site {
            Site::Corner => 0,
            Site::Horizontal => self.y,
            Site::Vertical => self.x,
        }
    }
}

/// Stabilization of type `kind` at cell `(r, c)`. Corners have one variant of
/// each type, segments two (which of the two new lines carries the step).
pub fn stabilize(g: &GridDiagram, kind: StabKind, r: usize, c: usize, variant: usize) -> Option<GridDiagram> {
    if r < 1 || c < 1 || r > g.n || c > g.n {
        return None;
    }
    Block::at(g, r, c)
        .into_iter()
        .find(|b| b.kind(g) == Some(kind) && b.variant() == variant)
        .and_then(|b| b.apply(g))
}

/// Every stabilization of `g`, as (kind, row, column, variant, result).
pub fn stabilizations(g: &GridDiagram) -> Vec<(StabKind, usize, usize, usize, GridDiagram)> {
    let mut out = Vec::new();
    for r in 1..=g.n {
        for c in 1..=g.n {
            for b in Block::at(g, r, c) {
                if let (Some(kind), Some(h)) = (b.kind(g), b.apply(g)) {
                    out.push((kind, r, c, b.variant(), h));
                }
            }
        }
    }
    out
}

fn collapse_candidates() -> Vec<Patch> {
    let mut out = Vec::new();
    for x in 0..2 {
        for y in 0..2 {
            for v in [Side::North, Side::South] {
                for h in [Side::West, Side::East] {
                    out.push(corner_patch(v, h, x, y));
                }
            }
            out.push(segment_patch(Site::Horizontal, x, y));
            out.push(segment_patch(Site::Vertical, x, y));
        }
    }
    out
}

/// Inverse of [`stabilize`]: `(r, c)` is the south-west cell of the block in `h`,
/// so `stabilize(destabilize(h, k, r, c, v), k, r, c, v) == h`.
pub fn destabilize(h: &GridDiagram, kind: StabKind, r: usize, c: usize, variant: usize) -> Option<GridDiagram> {
    collapse_candidates()
        .iter()
        .filter_map(|p| p.collapse(h, r, c))
        .find(|g| stabilize(g, kind, r, c, variant).as_ref() == Some(h))
}

/// Every destabilization of `h`, as (kind, row, column, variant, result).
pub fn destabilizations(h: &GridDiagram) -> Vec<(StabKind, usize, usize, usize, GridDiagram)> {
    let mut out = Vec::new();
    if h.n < 3 {
        return out;
    }
    let cands = collapse_candidates();
    for r in 1..h.n {
        for c in 1..h.n {
            let mut seen: Vec<GridDiagram> = Vec::new();
            for p in &cands {
                let Some(g) = p.collapse(h, r, c) else { continue };
                if seen.contains(&g) {
                    continue;
                }
                for b in Block::at(&g, r, c) {
                    if b.apply(&g).as_ref() == Some(h) {
                        if let Some(kind) = b.kind(&g) {
                            out.push((kind, r, c, b.variant(), g.clone()));
                        }
                    }
                }
                seen.push(g);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legendrian::thurston_bennequin;
    use crate::random::random_grid;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn every_type_at_every_site() {
        let g = GridDiagram::parse("grid 2\nse+ sw-\nne- nw+\n").unwrap();
        for (&(r, c), _) in &g.cells {
            for k in StabKind::ALL {
                assert!(stabilize(&g, k, r, c, 0).is_some(), "{k} at {r},{c}");
            }
        }
    }

    #[test]
    fn destabilize_inverts() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let g = random_grid(&mut rng, 3, 1);
            for (kind, r, c, v, h) in stabilizations(&g) {
                assert_eq!(destabilize(&h, kind, r, c, v).as_ref(), Some(&g));
                let back = destabilizations(&h);
                assert!(back.iter().any(|d| d.4 == g && (d.0, d.1, d.2, d.3) == (kind, r, c, v)));
                let dtb = thurston_bennequin(&h) - thurston_bennequin(&g);
                let want = if matches!(kind, StabKind::NE | StabKind::SW) { 0 } else { -1 };
                assert_eq!(dtb, want, "{kind}");
            }
        }
    }
}
