//! Invariants over random words in small groups.

use std::sync::OnceLock;

use coxex::descriptor::parse_components;
use coxex::excess::ExcessEngine;
use coxex::roots::{enumerate_parabolic, EnumeratedGroup};
use coxex::{GroupElement, InversionSet, RootSystem, SignedRoot};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::predicted_product_inversions;

const GROUPS: [&str; 7] = ["A3", "B4", "D4", "H3", "F4", "I2(7)", "A2xA1"];

fn systems() -> &'static Vec<RootSystem> {
    static CELL: OnceLock<Vec<RootSystem>> = OnceLock::new();
    CELL.get_or_init(|| GROUPS.iter().map(|d| RootSystem::product(&parse_components(d).unwrap()).unwrap()).collect())
}

fn word_strategy() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..GROUPS.len()).prop_flat_map(|g| {
        let rank = systems()[g].rank();
        (Just(g), prop::collection::vec(0..rank, 0..40))
    })
}

fn negated_image_set(rs: &RootSystem, set: &InversionSet, w: &GroupElement) -> InversionSet {
    let mut out = InversionSet::empty(rs.num_positive());
    for a in set.iter() {
        let image = w.act(SignedRoot::negative(a));
        if !image.is_negative() {
            out.insert(image.index());
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn length_is_inversion_count_and_reduced_word((g, word) in word_strategy()) {
        let rs = &systems()[g];
        let w = rs.element_from_word(&word).unwrap();
        let reduced = rs.reduced_word(&w);
        prop_assert_eq!(w.length(), rs.inversion_set(&w).len());
        prop_assert_eq!(reduced.len(), w.length());
        prop_assert_eq!(rs.element_from_word(&reduced).unwrap(), w.clone());
        prop_assert!(w.length() <= word.len());
        prop_assert_eq!(w.length() % 2, word.len() % 2);
        prop_assert_eq!(w.inverse().length(), w.length());
    }

    #[test]
    fn inverse_inversions_are_negated_images((g, word) in word_strategy()) {
        let rs = &systems()[g];
        let w = rs.element_from_word(&word).unwrap();
        let n = rs.inversion_set(&w);
        prop_assert_eq!(rs.inversion_set(&w.inverse()), negated_image_set(rs, &n, &w));
        if w.is_involution() {
            prop_assert_eq!(negated_image_set(rs, &n, &w), n);
        }
    }

    #[test]
    fn reflection_length_and_fixed_space((g, word) in word_strategy()) {
        let rs = &systems()[g];
        let w = rs.element_from_word(&word).unwrap();
        let big_l = rs.reflection_length(&w);
        prop_assert_eq!(big_l + rs.fixed_space_dim(&w), rs.rank());
        prop_assert!(big_l <= w.length());
        prop_assert_eq!(big_l % 2, w.length() % 2);
    }

    #[test]
    fn product_formula((g, u) in word_strategy(), v in prop::collection::vec(0usize..3, 0..40)) {
        let rs = &systems()[g];
        let a = rs.element_from_word(&u).unwrap();
        let b = rs.element_from_word(&v.iter().map(|r| r % rs.rank()).collect::<Vec<_>>()).unwrap();
        let ab = a.compose(&b);
        prop_assert_eq!(rs.inversion_set(&ab), predicted_product_inversions(rs, &a, &b));
        let overlap = rs.inversion_set(&a.inverse()).intersection_len(&rs.inversion_set(&b));
        prop_assert_eq!(ab.length() + 2 * overlap, a.length() + b.length());
    }
}

#[test]
fn product_formula_on_seeded_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for rs in systems() {
        let g = EnumeratedGroup::new(rs, 1_000_000).unwrap();
        for _ in 0..2_000 {
            let a = g.get(rng.gen_range(0..g.len()));
            let b = g.get(rng.gen_range(0..g.len()));
            assert_eq!(rs.inversion_set(&a.compose(b)), predicted_product_inversions(rs, a, b), "{}", rs.name());
        }
    }
}

#[test]
fn parabolic_length_agrees() {
    for d in ["B4", "H3", "D4"] {
        let rs = RootSystem::product(&parse_components(d).unwrap()).unwrap();
        for gens in [vec![0, 1], vec![1, 2, 3.min(rs.rank() - 1)], vec![0, 2]] {
            let ctx = rs.parabolic_context(&gens).unwrap();
            let sub = enumerate_parabolic(&rs, &ctx, 1_000_000).unwrap();
            for i in 0..sub.len() {
                let w = sub.get(i);
                assert!(ctx.contains(w));
                // breadth-first words over J are shortest in W_J
                assert_eq!(sub.word(i).len(), w.length(), "{d} J={gens:?}");
            }
        }
    }
}

/// Excess and reflection excess add over direct factors.
#[test]
fn excess_is_additive_over_factors() {
    for (product, factors) in [("A2xA1", vec!["A2", "A1"]), ("A1xA1xA1", vec!["A1", "A1", "A1"])] {
        let rs = RootSystem::product(&parse_components(product).unwrap()).unwrap();
        let engine = ExcessEngine::new(rs.clone(), 1_000_000).unwrap();
        let factor_engines: Vec<ExcessEngine> = factors
            .iter()
            .map(|f| ExcessEngine::new(RootSystem::product(&parse_components(f).unwrap()).unwrap(), 1_000_000).unwrap())
            .collect();
        let group = EnumeratedGroup::new(&rs, 1_000_000).unwrap();
        for i in 0..group.len() {
            let word = group.word(i);
            let report = engine.report(group.get(i), &[]).unwrap();
            let (mut e, mut big_e, mut offset) = (0, 0, 0);
            for fe in &factor_engines {
                let rank = fe.root_system().rank();
                let sub: Vec<usize> =
                    word.iter().filter(|&&r| r >= offset && r < offset + rank).map(|r| r - offset).collect();
                let part = fe.report(&fe.root_system().element_from_word(&sub).unwrap(), &[]).unwrap();
                e += part.excess;
                big_e += part.reflection_excess;
                offset += rank;
            }
            assert_eq!((report.excess, report.reflection_excess), (e, big_e), "{product} element {i}");
        }
    }
}
