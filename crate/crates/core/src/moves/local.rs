//! Moves at a singular tile: rotations, the swirl and the flype.
//!
//! Rotations and the swirl open three rows and three columns at the tile. The
//! patches were picked by exhaustive search over all such blocks: the only
//! ones turning the tile by a quarter while keeping tb and the singular link
//! type are the two below, and they act on every orientation.

use crate::grid::{Cell, GridDiagram, Orient, Side};
use crate::skeleton::{hints_of, Skeleton, Stop};

use super::patch::Patch;

fn tile_patch(arms: (usize, usize, usize, usize), tile: (usize, usize), corners: &[(usize, usize)]) -> Patch {
    let mut stops = vec![(tile, Stop::Singular)];
    stops.extend(corners.iter().map(|&p| (p, Stop::Corner)));
    Patch { k: 3, rw: arms.0, re: arms.1, cn: arms.2, cs: arms.3, center: Some(Stop::Singular), stops }
}

/// Turns E into N, N into W, W into S and S into E.
pub fn rot_plus_patch() -> Patch {
    tile_patch((3, 2, 2, 3), (1, 1), &[(0, 1), (0, 2), (1, 0), (1, 3), (2, 0), (3, 1)])
}

/// Turns E into S, S into W, W into N and N into E.
pub fn rot_minus_patch() -> Patch {
    tile_patch((1, 0, 0, 1), (2, 2), &[(0, 2), (1, 3), (2, 0), (2, 3), (3, 1), (3, 2)])
}

/// Turns W into E, keeping the singular braid.
pub fn swirl_patch() -> Patch {
    tile_patch((3, 2, 3, 0), (1, 1), &[(0, 1), (0, 2), (1, 0), (1, 3), (2, 1), (3, 2)])
}

fn orient_at(g: &GridDiagram, r: usize, c: usize) -> Option<Orient> {
    match g.get(r, c) {
        Some(Cell::Singular(o)) => Some(o),
        _ => None,
    }
}

/// Orientation after a quarter turn.
pub fn rotated(o: Orient, plus: bool) -> Orient {
    let cycle = [Orient::E, Orient::N, Orient::W, Orient::S];
    let i = cycle.iter().position(|&x| x == o).expect("four orientations");
    cycle[if plus { (i + 1) % 4 } else { (i + 3) % 4 }]
}

/// Rotation of the tile at `(r, c)`; `plus` picks the direction.
pub fn rotate(g: &GridDiagram, r: usize, c: usize, plus: bool) -> Option<GridDiagram> {
    orient_at(g, r, c)?;
    if plus { rot_plus_patch() } else { rot_minus_patch() }.apply(g, r, c)
}

/// Undo a rotation whose block has its south-west cell at `(r, c)`.
pub fn unrotate(g: &GridDiagram, r: usize, c: usize, plus: bool) -> Option<GridDiagram> {
    if plus { rot_plus_patch() } else { rot_minus_patch() }.collapse(g, r, c)
}

/// Where the tile ends up after [`rotate`] at `(r, c)`.
pub fn rotated_tile(r: usize, c: usize, plus: bool) -> (usize, usize) {
    if plus { (r + 1, c + 1) } else { (r + 2, c + 2) }
}

pub fn swirl(g: &GridDiagram, r: usize, c: usize) -> Option<GridDiagram> {
    if orient_at(g, r, c)? != Orient::W {
        return None;
    }
    swirl_patch().apply(g, r, c)
}

pub fn unswirl(g: &GridDiagram, r: usize, c: usize) -> Option<GridDiagram> {
    swirl_patch().collapse(g, r, c)
}

fn arms_are(g: &GridDiagram, p: (usize, usize), v: Side, h: Side) -> bool {
    matches!(g.get(p.0, p.1), Some(Cell::Corner(k)) if k.v() == v && k.h() == h)
}

/// The crossing cells an E tile at `(r, c)` can trade places with: diagonal
/// neighbours whose row and column lead straight into the tile through corners
/// on both sides.
pub fn flype_partners(g: &GridDiagram, r: usize, c: usize) -> Vec<(usize, usize)> {
    if orient_at(g, r, c) != Some(Orient::E) {
        return Vec::new();
    }
    let mut out = Vec::new();
    // crossing north-west of the tile, strands entering it
    if c > 1 && r < g.n && arms_are(g, (r, c - 1), Side::North, Side::East) && arms_are(g, (r + 1, c), Side::South, Side::West) {
        out.push((r + 1, c - 1));
    }
    // crossing south-east of the tile, strands leaving it
    if r > 1 && c < g.n && arms_are(g, (r - 1, c), Side::North, Side::East) && arms_are(g, (r, c + 1), Side::South, Side::West) {
        out.push((r - 1, c + 1));
    }
    out.retain(|&(a, b)| g.get(a, b).is_none());
    out
}

/// Moves the crossing at `x` through the E tile at `(r, c)`; the tile lands on `x`.
pub fn flype(g: &GridDiagram, r: usize, c: usize, x: (usize, usize)) -> Option<GridDiagram> {
    if !flype_partners(g, r, c).contains(&x) {
        return None;
    }
    let mut sk = Skeleton::of(g);
    sk.stops.remove(&(r, c));
    sk.stops.insert(x, Stop::Singular);
    let hints: Vec<_> = hints_of(g).into_iter().filter(|(p, _)| *p != (r, c)).collect();
    let out = sk.orient_with(&hints).ok()?;
    (out.is_valid() && orient_at(&out, x.0, x.1) == Some(Orient::E)).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::to_pd;
    use crate::legendrian::thurston_bennequin;
    use crate::oracle::fingerprint;
    use crate::random::random_grid;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rotations_cycle_orientations() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut seen = 0;
        while seen < 40 {
            let g = random_grid(&mut rng, 4, 1);
            let Some(&(r, c)) = g.singular_cells().first() else { continue };
            seen += 1;
            let o = orient_at(&g, r, c).unwrap();
            for plus in [true, false] {
                let h = rotate(&g, r, c, plus).unwrap();
                let (tr, tc) = rotated_tile(r, c, plus);
                let want = rotated(o, plus);
                assert_eq!(orient_at(&h, tr, tc), Some(want));
                assert_eq!(thurston_bennequin(&h), thurston_bennequin(&g));
                assert_eq!(fingerprint(&to_pd(&h)).unwrap(), fingerprint(&to_pd(&g)).unwrap());
                assert_eq!(unrotate(&h, r, c, plus), Some(g.clone()));
            }
        }
    }
}
