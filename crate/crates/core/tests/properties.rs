//! Property-based invariants over randomly generated inputs.

use diagcent::diagram_algebra::{
    compose_partitions, from_orbit_basis, to_orbit_basis, AlgebraElement, Basis, DeltaPoly,
};
use diagcent::gct::{canonicalize_string, UltLetter, UltString};
use diagcent::graphs::{canonicalize, psi, psi_inverse, LabeledMultidigraph};
use diagcent::partitions::{conjugate, Permutation, SetPartition};
use diagcent::Caps;
use num::BigInt;
use proptest::prelude::*;

/// Random set partition of `[1, 2d]` from arbitrary block labels.
fn arb_partition(d: usize) -> impl Strategy<Value = SetPartition> {
    prop::collection::vec(0..2 * d, 2 * d).prop_map(|labels| {
        let mut relabel = vec![usize::MAX; 2 * labels.len()];
        let mut next = 0usize;
        let rgs: Vec<usize> = labels
            .iter()
            .map(|&l| {
                if relabel[l] == usize::MAX {
                    relabel[l] = next;
                    next += 1;
                }
                relabel[l]
            })
            .collect();
        SetPartition::from_rgs(&rgs)
    })
}

/// Random perfect matching of `[1, 2d]`.
fn arb_matching(d: usize) -> impl Strategy<Value = SetPartition> {
    Just(()).prop_perturb(move |(), mut rng| {
        let mut elements: Vec<usize> = (1..=2 * d).collect();
        for i in (1..elements.len()).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            elements.swap(i, j);
        }
        let blocks = elements.chunks(2).map(<[usize]>::to_vec).collect();
        SetPartition::new(2 * d, blocks).unwrap()
    })
}

fn arb_permutation(d: usize) -> impl Strategy<Value = Permutation> {
    Just(()).prop_perturb(move |(), mut rng| {
        let mut images: Vec<usize> = (1..=d).collect();
        for i in (1..d).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            images.swap(i, j);
        }
        Permutation::new(images).unwrap()
    })
}

proptest! {
    #[test]
    fn graph_roundtrip_is_identity(p in arb_partition(4)) {
        prop_assert_eq!(psi_inverse(&psi(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn canonical_form_ignores_vertex_names(
        p in arb_partition(4),
        seed in any::<u64>(),
    ) {
        let caps = Caps::default();
        let g = psi(&p).unwrap();
        let canonical = canonicalize(&g, &caps).unwrap();
        // Deterministic shuffle of vertex names from the seed.
        let nv = g.num_vertices();
        let mut relabel: Vec<usize> = (0..nv).collect();
        let mut state = seed | 1;
        for i in (1..nv).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            relabel.swap(i, (state >> 33) as usize % (i + 1));
        }
        let moved: Vec<(usize, usize)> = g
            .arrows()
            .iter()
            .map(|&(s, t)| (relabel[s], relabel[t]))
            .collect();
        let shuffled = LabeledMultidigraph::new(nv, moved).unwrap();
        prop_assert_eq!(canonicalize(&shuffled, &caps).unwrap(), canonical);
    }

    #[test]
    fn two_sided_action_composes(
        p in arb_partition(3),
        a in arb_permutation(3),
        b in arb_permutation(3),
        c in arb_permutation(3),
        e in arb_permutation(3),
    ) {
        let nested = conjugate(&a, &conjugate(&b, &p, &e).unwrap(), &c).unwrap();
        let flat = conjugate(&a.compose(&b).unwrap(), &p, &e.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(nested, flat);
    }

    #[test]
    fn string_class_is_shift_and_reversal_invariant(
        letters in prop::collection::vec(0..3usize, 1..8),
        shift in any::<usize>(),
        reverse in any::<bool>(),
    ) {
        let alphabet = [UltLetter::U, UltLetter::L, UltLetter::T];
        let s = UltString::new(letters.iter().map(|&i| alphabet[i]).collect()).unwrap();
        let n = s.len();
        let mut moved: Vec<UltLetter> =
            (0..n).map(|i| s.letters()[(i + shift % n) % n]).collect();
        if reverse {
            moved.reverse();
        }
        let t = UltString::new(moved).unwrap();
        prop_assert_eq!(canonicalize_string(&s), canonicalize_string(&t));
    }

    #[test]
    fn matchings_compose_to_matchings(
        p in arb_matching(4),
        q in arb_matching(4),
    ) {
        let (product, _) = compose_partitions(&p, &q).unwrap();
        prop_assert!(product.is_brauer());
    }

    #[test]
    fn orbit_coordinates_roundtrip(
        terms in prop::collection::vec((arb_partition(3), 0..3u32, -3..=3i32), 1..5),
    ) {
        let mut a = AlgebraElement::zero(3, Basis::Diagram);
        for (p, k, c) in terms {
            a.add_term(p, DeltaPoly::delta_pow(k).scale(&BigInt::from(c)));
        }
        let back = from_orbit_basis(&to_orbit_basis(&a).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn composition_block_sizes_cover_everything(p in arb_partition(3), q in arb_partition(3)) {
        let (product, removed) = compose_partitions(&p, &q).unwrap();
        prop_assert_eq!(product.size(), 6);
        // At most d middle components can vanish.
        prop_assert!(removed <= 3);
    }
}
