//! A grid whose braid is a given word.
//!
//! Columns, left to right: one per strand descending from its closure row,
//! then the letters, then one per strand climbing back. σ, σ⁻¹ and ξ take one
//! column each and τ takes two (a lift, then a touch); a lift that is really
//! followed by ξ gets an idle column in between so it is not read as τ.
//! Size is 2n plus the column count of the letters.

use super::word::{Letter, SingularBraidWord};
use crate::grid::{Cell, Corner, GridDiagram, Orient, Side};

const STEP: i64 = 1 << 40;

struct Builder {
    /// row height of the strand at each position
    h: Vec<i64>,
    top: i64,
    col: usize,
    cells: Vec<(i64, usize, Cell)>,
}

fn corner(entry: Side, exit: Side) -> Cell {
    Cell::Corner(Corner::from_route(entry, exit))
}

impl Builder {
    /// A row strictly between `a` and `b` not used so far, in the widest free gap.
    fn between(&mut self, a: i64, b: i64) -> i64 {
        let mut cuts: Vec<i64> = self.cells.iter().map(|c| c.0).filter(|&h| a < h && h < b).collect();
        cuts.push(a);
        cuts.push(b);
        cuts.sort_unstable();
        cuts.dedup();
        let (lo, hi) = cuts.windows(2).map(|w| (w[0], w[1])).max_by_key(|(x, y)| y - x).unwrap();
        assert!(hi - lo >= 2, "ran out of room between rows");
        lo + (hi - lo) / 2
    }

    fn below(&self, p: usize) -> i64 {
        if p == 0 { 0 } else { self.h[p - 1] }
    }

    fn above(&self, p: usize) -> i64 {
        if p + 1 == self.h.len() { self.top } else { self.h[p + 1] }
    }

    fn put(&mut self, row: i64, cell: Cell) {
        self.cells.push((row, self.col, cell));
    }

    /// Strand at `hi` drops over the one at `lo = hi - 1`.
    fn down(&mut self, hi: usize) {
        let lo = hi - 1;
        let new = self.between(self.below(lo), self.h[lo]);
        self.put(self.h[hi], corner(Side::West, Side::South));
        self.put(new, corner(Side::North, Side::East));
        self.h[hi] = self.h[lo];
        self.h[lo] = new;
        self.col += 1;
    }

    /// Strand at `lo` climbs over the one at `lo + 1`.
    fn up(&mut self, lo: usize) {
        let hi = lo + 1;
        let new = self.between(self.h[hi], self.above(hi));
        self.put(self.h[lo], corner(Side::West, Side::North));
        self.put(new, corner(Side::South, Side::East));
        self.h[lo] = self.h[hi];
        self.h[hi] = new;
        self.col += 1;
    }

    /// Strand at `p` moves to a fresh row just above, crossing nothing.
    fn idle(&mut self, p: usize) {
        let new = self.between(self.h[p], self.above(p));
        self.put(self.h[p], corner(Side::West, Side::North));
        self.put(new, corner(Side::South, Side::East));
        self.h[p] = new;
        self.col += 1;
    }

    /// Strand at `lo + 1` comes down to touch the one at `lo`, which then drops.
    fn touch(&mut self, lo: usize) {
        let hi = lo + 1;
        let new = self.between(self.below(lo), self.h[lo]);
        self.put(self.h[hi], corner(Side::West, Side::South));
        self.put(self.h[lo], Cell::Singular(Orient::E));
        self.put(new, corner(Side::North, Side::East));
        self.h[hi] = self.h[lo];
        self.h[lo] = new;
        self.col += 1;
    }
}

pub fn rectilinear_closure(w: &SingularBraidWord) -> GridDiagram {
    let n = w.strands;
    let top = (n as i64 + 1) * STEP;
    let mut b = Builder { h: (1..=n as i64).map(|p| p * STEP).collect(), top, col: 1, cells: Vec::new() };
    let closure = |p: usize| top + 1 + p as i64;
    for p in 0..n {
        b.put(closure(p), corner(Side::East, Side::South));
        b.put(b.h[p], corner(Side::North, Side::East));
        b.col += 1;
    }
    for (k, &l) in w.letters.iter().enumerate() {
        match l {
            Letter::Sigma(i) => b.down(i),
            Letter::SigmaInv(i) => {
                b.up(i - 1);
                if w.letters.get(k + 1) == Some(&Letter::Xi(i)) {
                    b.idle(i);
                }
            }
            Letter::Xi(i) => b.touch(i - 1),
            Letter::Tau(i) => {
                b.up(i - 1);
                b.touch(i - 1);
            }
        }
    }
    for p in (0..n).rev() {
        b.put(b.h[p], corner(Side::West, Side::North));
        b.put(closure(p), corner(Side::South, Side::West));
        b.col += 1;
    }
    let mut heights: Vec<i64> = b.cells.iter().map(|c| c.0).collect();
    heights.sort_unstable();
    heights.dedup();
    let size = b.col - 1;
    assert_eq!(heights.len(), size, "closure is not square");
    let mut g = GridDiagram::new(size);
    for (h, c, cell) in b.cells {
        let r = heights.binary_search(&h).unwrap() + 1;
        g.set(r, c, cell);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::grid_to_braid;

    #[test]
    fn small_closures() {
        let e = rectilinear_closure(&SingularBraidWord::identity(1));
        assert_eq!(e.n, 2);
        assert!(e.is_valid());
        for s in ["braid 2\ns1\n", "braid 2\nx1\n", "braid 3\nt2 S1 x1 s2\n"] {
            let w = SingularBraidWord::parse(s).unwrap();
            let g = rectilinear_closure(&w);
            assert!(g.is_valid(), "{s}");
            assert_eq!(grid_to_braid(&g), w, "{s}");
        }
    }
}
