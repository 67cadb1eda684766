use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sgrid::braid::{grid_to_braid, rectilinear_closure};
use sgrid::legendrian::thurston_bennequin;
use sgrid::moves::{stabilizations, successors, translate, Axis, Family, Move, StabKind};
use sgrid::random::{random_grid, random_word};
use sgrid::resolution::{resolve, Eta};
use sgrid::GridDiagram;

fn grid() -> impl Strategy<Value = GridDiagram> {
    (any::<u64>(), 3usize..=7, 0usize..=3).prop_map(|(seed, n, s)| random_grid(&mut ChaCha8Rng::seed_from_u64(seed), n, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn text_round_trip(g in grid()) {
        prop_assert!(g.is_valid());
        prop_assert_eq!(GridDiagram::parse(&g.serialize()).unwrap(), g);
    }

    #[test]
    fn every_move_is_undone_by_its_inverse(g in grid()) {
        for (m, h) in successors(&g) {
            prop_assert!(h.is_valid(), "{m} gave an invalid diagram");
            prop_assert_eq!(m.apply(&g).unwrap(), h.clone());
            let back = m.inverse(&g);
            prop_assert_eq!(back.apply(&h).unwrap(), g.clone(), "{} then {}", m, back);
            prop_assert_eq!(m.to_string().parse::<Move>().unwrap(), m);
        }
    }

    #[test]
    fn translations_compose_to_the_identity(g in grid(), k in 1usize..7) {
        let k = k % g.n;
        for axis in [Axis::H, Axis::V] {
            if let Ok(h) = translate(&g, axis, k) {
                prop_assert_eq!(translate(&h, axis, g.n - k).unwrap(), g.clone());
            }
        }
    }

    #[test]
    fn tb_changes_only_under_se_and_nw(g in grid()) {
        let tb = thurston_bennequin(&g);
        for (k, _, _, _, h) in stabilizations(&g) {
            let want = if matches!(k, StabKind::SE | StabKind::NW) { tb - 1 } else { tb };
            prop_assert_eq!(thurston_bennequin(&h), want, "{}", k);
        }
        for (m, h) in successors(&g) {
            if matches!(m.family(&g), Family::Translate | Family::Commute) {
                prop_assert_eq!(thurston_bennequin(&h), tb);
            }
        }
    }

    #[test]
    fn resolving_removes_one_tile(g in grid()) {
        for p in g.singular_cells() {
            for eta in [Eta::Plus, Eta::Minus, Eta::Zero] {
                let h = resolve(&g, p, eta).unwrap();
                prop_assert!(h.is_valid());
                prop_assert_eq!(h.singular_cells().len() + 1, g.singular_cells().len());
            }
        }
    }

    #[test]
    fn closure_then_flip_returns_the_word(seed: u64, strands in 1usize..=5, len in 0usize..12) {
        let w = random_word(&mut ChaCha8Rng::seed_from_u64(seed), strands, len);
        let g = rectilinear_closure(&w);
        prop_assert!(g.is_valid());
        prop_assert_eq!(grid_to_braid(&g), w);
    }
}
