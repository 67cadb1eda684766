//! Random diagrams and words for fuzzing.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::braid::{Letter, SingularBraidWord};
use crate::grid::{GridDiagram, Tile};
use crate::skeleton::{Skeleton, Stop};

/// A random valid grid of size `n` with up to `singular` singular tiles.
///
/// Corners come from two permutations that disagree everywhere; singular tiles
/// replace randomly chosen crossings; each component gets a random direction.
pub fn random_grid<R: Rng + ?Sized>(rng: &mut R, n: usize, singular: usize) -> GridDiagram {
    assert!(n >= 2);
    let mut x: Vec<usize> = (1..=n).collect();
    let mut o = x.clone();
    loop {
        x.shuffle(rng);
        o.shuffle(rng);
        if x.iter().zip(&o).all(|(a, b)| a != b) {
            break;
        }
    }
    let mut sk = Skeleton::new(n);
    for r in 1..=n {
        sk.stops.insert((r, x[r - 1]), Stop::Corner);
        sk.stops.insert((r, o[r - 1]), Stop::Corner);
    }
    let plain = sk.orient(|_| true).expect("two corners per line");
    let t = plain.derive_tiling();
    let mut crossings: Vec<(usize, usize)> =
        (1..=n).flat_map(|r| (1..=n).map(move |c| (r, c))).filter(|&(r, c)| t.get(r, c) == Tile::Crossing).collect();
    crossings.shuffle(rng);
    for &p in crossings.iter().take(singular) {
        sk.stops.insert(p, Stop::Singular);
    }
    sk.orient(|_| rng.gen()).expect("crossing cells make valid singular tiles")
}

pub fn random_letter<R: Rng + ?Sized>(rng: &mut R, strands: usize) -> Letter {
    let i = rng.gen_range(1..strands);
    match rng.gen_range(0..4) {
        0 => Letter::Sigma(i),
        1 => Letter::SigmaInv(i),
        2 => Letter::Tau(i),
        _ => Letter::Xi(i),
    }
}

/// A random word of exactly `len` letters (empty when there is one strand).
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, strands: usize, len: usize) -> SingularBraidWord {
    let letters = if strands < 2 { Vec::new() } else { (0..len).map(|_| random_letter(rng, strands)).collect() };
    SingularBraidWord { strands, letters }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_grids_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(2..=8);
            let k = rng.gen_range(0..=3);
            let g = random_grid(&mut rng, n, k);
            assert_eq!(g.validate(), Ok(()), "{}", g.serialize());
            assert!(g.singular_cells().len() <= k);
        }
    }
}
