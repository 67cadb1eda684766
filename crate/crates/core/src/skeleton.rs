//! Unoriented diagrams: where the corners and singular tiles sit, nothing more.
//!
//! Most rewrites are easier to state on positions alone. Orientation is then
//! recovered by tracing each component and picking one of its two directions.

use std::collections::{BTreeMap, BTreeSet};

use crate::grid::{Cell, Corner, GridDiagram, Orient, Passage, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stop {
    Corner,
    Singular,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Skeleton {
    pub n: usize,
    pub stops: BTreeMap<(usize, usize), Stop>,
}

/// The side paired with `s` inside a singular tile.
fn partner(s: Side) -> Side {
    match s {
        Side::West => Side::South,
        Side::South => Side::West,
        Side::North => Side::East,
        Side::East => Side::North,
    }
}

impl Skeleton {
    pub fn new(n: usize) -> Skeleton {
        Skeleton { n, stops: BTreeMap::new() }
    }

    pub fn of(g: &GridDiagram) -> Skeleton {
        let stops = g
            .cells
            .iter()
            .map(|(k, c)| (*k, if c.is_singular() { Stop::Singular } else { Stop::Corner }))
            .collect();
        Skeleton { n: g.n, stops }
    }

    /// Arms of every corner, from the position of the other corner in its row and column.
    fn corner_arms(&self) -> Result<BTreeMap<(usize, usize), (Side, Side)>, String> {
        let mut rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut cols: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (&(r, c), &s) in &self.stops {
            if s == Stop::Corner {
                rows.entry(r).or_default().push(c);
                cols.entry(c).or_default().push(r);
            }
        }
        let mut out = BTreeMap::new();
        for (&(r, c), &s) in &self.stops {
            if s != Stop::Corner {
                continue;
            }
            let (Some(rw), Some(cl)) = (rows.get(&r), cols.get(&c)) else { unreachable!() };
            if rw.len() != 2 {
                return Err(format!("row {r} has {} corners", rw.len()));
            }
            if cl.len() != 2 {
                return Err(format!("column {c} has {} corners", cl.len()));
            }
            let h = if c == rw[0].min(rw[1]) { Side::East } else { Side::West };
            let v = if r == cl[0].min(cl[1]) { Side::North } else { Side::South };
            out.insert((r, c), (v, h));
        }
        Ok(out)
    }

    fn ray(&self, r: usize, c: usize, side: Side) -> Option<(usize, usize)> {
        let (dr, dc) = side.delta();
        let (mut rr, mut cc) = (r as isize, c as isize);
        loop {
            rr += dr;
            cc += dc;
            if rr < 1 || cc < 1 || rr > self.n as isize || cc > self.n as isize {
                return None;
            }
            if self.stops.contains_key(&(rr as usize, cc as usize)) {
                return Some((rr as usize, cc as usize));
            }
        }
    }

    /// Trace every component in some direction (stops only, no pass-through cells).
    pub fn circuits(&self) -> Result<Vec<Vec<Passage>>, String> {
        let arms = self.corner_arms()?;
        let mut seen: BTreeSet<((usize, usize), Side)> = BTreeSet::new();
        let mut out = Vec::new();
        for (&(r, c), &stop) in &self.stops {
            let starts: Vec<Side> = match stop {
                Stop::Corner => vec![arms[&(r, c)].1],
                Stop::Singular => vec![Side::West, Side::North],
            };
            for s0 in starts {
                if seen.contains(&((r, c), s0)) {
                    continue;
                }
                let mut circ = Vec::new();
                let (mut cell, mut entry) = ((r, c), s0);
                loop {
                    let exit = match self.stops[&cell] {
                        Stop::Corner => {
                            let (v, h) = arms[&cell];
                            if entry == v {
                                h
                            } else if entry == h {
                                v
                            } else {
                                return Err(format!("open strand at ({},{}) {} side", cell.0, cell.1, entry));
                            }
                        }
                        Stop::Singular => partner(entry),
                    };
                    if !seen.insert((cell, entry)) {
                        return Err(format!("strand revisits ({},{})", cell.0, cell.1));
                    }
                    seen.insert((cell, exit));
                    circ.push(Passage { row: cell.0, col: cell.1, entry, exit });
                    let next = self
                        .ray(cell.0, cell.1, exit)
                        .ok_or_else(|| format!("open strand at ({},{}) {} side", cell.0, cell.1, exit))?;
                    cell = next;
                    entry = exit.opposite();
                    if cell == (r, c) && entry == s0 {
                        break;
                    }
                }
                out.push(circ);
            }
        }
        Ok(out)
    }

    /// Orient each traced component, reversing it when `keep` says no.
    pub fn orient(&self, mut keep: impl FnMut(&[Passage]) -> bool) -> Result<GridDiagram, String> {
        let mut g = GridDiagram::new(self.n);
        let mut routes: BTreeMap<(usize, usize), Vec<(Side, Side)>> = BTreeMap::new();
        for circ in self.circuits()? {
            let fwd = keep(&circ);
            for p in circ {
                let (e, x) = if fwd { (p.entry, p.exit) } else { (p.exit, p.entry) };
                routes.entry((p.row, p.col)).or_default().push((e, x));
            }
        }
        for ((r, c), rs) in routes {
            let cell = match self.stops[&(r, c)] {
                Stop::Corner => Cell::Corner(Corner::from_route(rs[0].0, rs[0].1)),
                Stop::Singular => {
                    let a = rs.iter().find(|(e, x)| Orient::arc_of(*e) == 0 && Orient::arc_of(*x) == 0);
                    let b = rs.iter().find(|(e, x)| Orient::arc_of(*e) == 1 && Orient::arc_of(*x) == 1);
                    let (Some(a), Some(b)) = (a, b) else { return Err(format!("bad singular tile at ({r},{c})")) };
                    Cell::Singular(Orient::from_arcs(a.0 == Side::West, b.0 == Side::North))
                }
            };
            g.set(r, c, cell);
        }
        Ok(g)
    }

    /// Orient so that each listed passage `(cell, exit side)` is traversed that
    /// way; components without a hint keep the traced direction.
    pub fn orient_with(&self, hints: &[((usize, usize), Side)]) -> Result<GridDiagram, String> {
        self.orient(|circ| {
            for &(cell, side) in hints {
                for p in circ {
                    if (p.row, p.col) == cell {
                        if p.exit == side {
                            return true;
                        }
                        if p.entry == side {
                            return false;
                        }
                    }
                }
            }
            true
        })
    }
}

/// Opening one row and one column at cell `(r, c)`: the old row's content west
/// of `c` lands in row `r + rw` and the part east of it in row `r + re`; the
/// column's content north of `r` lands in column `c + cn`, the south part in
/// `c + cs`. Offsets are 0 or 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub r: usize,
    pub c: usize,
    pub rw: usize,
    pub re: usize,
    pub cn: usize,
    pub cs: usize,
}

impl Expansion {
    fn opening(&self) -> Opening {
        Opening { r: self.r, c: self.c, k: 1, rw: self.rw, re: self.re, cn: self.cn, cs: self.cs }
    }

    /// New position of an old cell other than `(r, c)`.
    pub fn map(&self, p: (usize, usize)) -> (usize, usize) {
        self.opening().map(p)
    }

    /// Apply to an oriented diagram, dropping the cell at `(r, c)` and adding
    /// `patch` stops at offsets from `(r, c)`. Orientation of old cells is kept.
    pub fn apply(&self, g: &GridDiagram, patch: &[((usize, usize), Stop)]) -> Result<GridDiagram, String> {
        self.opening().apply(g, patch)
    }
}

/// Like [`Expansion`] but opening `k` rows and `k` columns; offsets run 0..=k.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Opening {
    pub r: usize,
    pub c: usize,
    pub k: usize,
    pub rw: usize,
    pub re: usize,
    pub cn: usize,
    pub cs: usize,
}

impl Opening {
    pub fn map(&self, (r, c): (usize, usize)) -> (usize, usize) {
        let nr = match r.cmp(&self.r) {
            std::cmp::Ordering::Less => r,
            std::cmp::Ordering::Greater => r + self.k,
            std::cmp::Ordering::Equal => self.r + if c < self.c { self.rw } else { self.re },
        };
        let nc = match c.cmp(&self.c) {
            std::cmp::Ordering::Less => c,
            std::cmp::Ordering::Greater => c + self.k,
            std::cmp::Ordering::Equal => self.c + if r > self.r { self.cn } else { self.cs },
        };
        (nr, nc)
    }

    pub fn apply(&self, g: &GridDiagram, patch: &[((usize, usize), Stop)]) -> Result<GridDiagram, String> {
        let mut sk = Skeleton::new(g.n + self.k);
        for (&p, &cell) in &g.cells {
            if p != (self.r, self.c) {
                sk.stops.insert(self.map(p), if cell.is_singular() { Stop::Singular } else { Stop::Corner });
            }
        }
        let hints: Vec<_> = hints_of(g)
            .into_iter()
            .filter(|&(p, _)| p != (self.r, self.c))
            .map(|(p, side)| (self.map(p), side))
            .collect();
        for &((dr, dc), s) in patch {
            sk.stops.insert((self.r + dr, self.c + dc), s);
        }
        sk.orient_with(&hints)
    }
}

/// One hint per component of `g`, usable after a rewrite that keeps the cell.
pub fn hints_of(g: &GridDiagram) -> Vec<((usize, usize), Side)> {
    g.trace_strands()
        .iter()
        .flat_map(|c| c.passages.iter().filter(|p| g.get(p.row, p.col).is_some()).map(|p| ((p.row, p.col), p.exit)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reorients_unknot() {
        let g = GridDiagram::parse("grid 2\nse+ sw-\nne- nw+\n").unwrap();
        let s = Skeleton::of(&g);
        let h = hints_of(&g);
        assert_eq!(s.orient_with(&h).unwrap(), g);
        let rev = s.orient_with(&[((1, 1), Side::North)]).unwrap();
        assert_ne!(rev, g);
        assert!(rev.is_valid());
    }
}
