use addcomb_core::bohr::{find_regular_dilate, BohrSet};
use addcomb_core::configs::{count_k_configurations, random_set, CliqueConfig};
use addcomb_core::gridnorm::{
    counting_dichotomy, deviation_test, grid_norm, homomorphism_count, BitTable, CountingInstance,
    GridNormConfig, OrientedGraph,
};
use addcomb_core::harmonic::{convolve, fourier, inverse_fourier, DenseFunction};
use addcomb_core::sumfree::{
    exact_m, greedy_sumfree, is_sumfree_wrt, ruzsa_embed, verify_freiman, EmbedConfig,
    EmbedOutcome, IntegerSet, SumfreeConfig,
};
use addcomb_core::FiniteAbelianGroup;
use num_complex::Complex64;
use proptest::prelude::*;

fn moduli(odd: bool) -> impl Strategy<Value = Vec<u64>> {
    let factor = if odd {
        prop_oneof![Just(3u64), Just(5), Just(7), Just(9), Just(11)].boxed()
    } else {
        (2u64..12).boxed()
    };
    prop::collection::vec(factor, 1..=2)
}

fn group_and_points(odd: bool) -> impl Strategy<Value = (FiniteAbelianGroup, usize, usize, usize)> {
    moduli(odd).prop_flat_map(|m| {
        let g = FiniteAbelianGroup::new(&m).unwrap();
        let n = g.order();
        (Just(g), 0..n, 0..n, 0..n)
    })
}

fn group_and_function(
) -> impl Strategy<Value = (FiniteAbelianGroup, Vec<Complex64>, Vec<Complex64>)> {
    moduli(false).prop_flat_map(|m| {
        let g = FiniteAbelianGroup::new(&m).unwrap();
        let n = g.order();
        let values = prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n).prop_map(|v| {
            v.into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect::<Vec<_>>()
        });
        (Just(g), values.clone(), values)
    })
}

proptest! {
    #[test]
    fn group_laws((g, a, b, c) in group_and_points(false)) {
        prop_assert_eq!(g.add_idx(a, b), g.add_idx(b, a));
        prop_assert_eq!(g.add_idx(g.add_idx(a, b), c), g.add_idx(a, g.add_idx(b, c)));
        prop_assert_eq!(g.add_idx(a, g.neg_idx(a)), 0);
        prop_assert_eq!(g.sub_idx(g.add_idx(a, b), b), a);
        prop_assert_eq!(g.index_of(&g.element_at(a)).unwrap(), a);
    }

    #[test]
    fn halving_inverts_doubling((g, a, b, _) in group_and_points(true)) {
        let h = g.halve_idx(a).unwrap();
        prop_assert_eq!(g.add_idx(h, h), a);
        prop_assert_eq!(g.halve_idx(g.scale_idx(2, b)).unwrap(), b);
    }

    #[test]
    fn characters_are_homomorphisms((g, a, b, gamma) in group_and_points(false)) {
        let lhs = g.eval_character_idx(gamma, g.add_idx(a, b));
        let rhs = g.eval_character_idx(gamma, a) * g.eval_character_idx(gamma, b);
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn fourier_inversion_and_convolution((g, f, h) in group_and_function()) {
        let f = DenseFunction::new(&g, f).unwrap();
        let h = DenseFunction::new(&g, h).unwrap();
        prop_assert!(inverse_fourier(&fourier(&f)).max_abs_diff(&f) < 1e-10);
        let lhs = fourier(&convolve(&f, &h).unwrap());
        let (ff, fh) = (fourier(&f), fourier(&h));
        for i in 0..g.order() {
            prop_assert!((lhs.at(i) - ff.at(i) * fh.at(i)).norm() < 1e-10);
        }
        let energy = f.values().iter().map(|v| v.norm_sqr()).sum::<f64>() / g.order() as f64;
        prop_assert!((energy - ff.l2_sum_sq()).abs() < 1e-10);
    }

    #[test]
    fn bohr_sets_are_symmetric_and_nested(
        n in 3u64..400,
        freqs in prop::collection::vec(0usize..400, 1..=3),
        width in 0.05f64..2.0,
        shrink in 0.1f64..1.0,
    ) {
        let g = FiniteAbelianGroup::cyclic(n).unwrap();
        let chars = freqs.iter().map(|&i| g.character_at(i % g.order())).collect();
        let b = BohrSet::new(&g, chars, width).unwrap();
        prop_assert!(b.contains(0));
        for x in b.members() {
            prop_assert!(b.contains(g.neg_idx(x)));
        }
        let small = b.dilate(shrink).unwrap();
        prop_assert!(small.members().iter().all(|&x| b.contains(x)));
        prop_assert!(b.size_bound_check().unwrap().pass);
    }

    #[test]
    fn regular_dilate_is_regular(
        n in 3u64..2000,
        freqs in prop::collection::vec(0usize..2000, 1..=4),
        width in 0.05f64..2.0,
    ) {
        let g = FiniteAbelianGroup::cyclic(n).unwrap();
        let chars = freqs.iter().map(|&i| g.character_at(i % g.order())).collect();
        let b = BohrSet::new(&g, chars, width).unwrap();
        let delta = find_regular_dilate(&b).unwrap();
        prop_assert!((0.5..=1.0).contains(&delta));
        prop_assert!(b.dilate(delta).unwrap().is_regular().regular);
    }

    #[test]
    fn configuration_counts_are_translation_invariant(
        mask in 0u32..(1 << 15),
        shift in 0usize..15,
        k in 2usize..=3,
    ) {
        let g = FiniteAbelianGroup::new(&[3, 5]).unwrap();
        let set: Vec<usize> = (0..15).filter(|i| mask >> i & 1 == 1).collect();
        let moved: Vec<usize> = set.iter().map(|&x| g.add_idx(x, shift)).collect();
        let cfg = CliqueConfig::default();
        let a = count_k_configurations(&g, &set, k, &cfg).unwrap();
        let b = count_k_configurations(&g, &moved, k, &cfg).unwrap();
        prop_assert_eq!(&a.count, &b.count);
        // constant tuples (x, …, x) with x ∈ A always count
        prop_assert!(a.count >= set.len().into());
        prop_assert!(a.count <= a.total);
    }

    #[test]
    fn random_sets_are_reproducible(universe in 1usize..500, density in 0.0f64..=1.0, seed: u64) {
        let a = random_set(universe, density, seed).unwrap();
        prop_assert_eq!(&a, &random_set(universe, density, seed).unwrap());
        prop_assert!(a.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(a.iter().all(|&x| x < universe));
    }

    #[test]
    fn grid_norms_are_bounded(rows in 1usize..5, cols in 1usize..5, mask: u64, p in 1u32..4, q in 1u32..4) {
        let t = BitTable::from_mask(rows, cols, mask & ((1u64 << (rows * cols)) - 1)).unwrap();
        let v = grid_norm(&t.to_matrix(), p, q, &GridNormConfig::default()).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&v));
        // U(p,q) dominates the mean for 0/1 tables
        prop_assert!(v + 1e-12 >= t.to_matrix().mean());
    }

    #[test]
    fn dichotomy_witnesses_verify(masks in prop::array::uniform3(0u64..512), eps in 0.1f64..0.9) {
        let tables: Vec<BitTable> = masks.iter().map(|&m| BitTable::from_mask(3, 3, m).unwrap()).collect();
        let inst = CountingInstance::new(OrientedGraph::complete(3), vec![3, 3, 3], tables).unwrap();
        let cfg = GridNormConfig::default();
        let count = homomorphism_count(&inst, &cfg).unwrap();
        prop_assert!(count.count <= count.total);
        if deviation_test(&inst, eps, &cfg).unwrap().fired {
            let w = counting_dichotomy(&inst, eps, &cfg).unwrap();
            prop_assert!(w.is_some());
            prop_assert!(w.unwrap().verify(&inst).unwrap());
        }
    }

    #[test]
    fn sumfree_witnesses(values in prop::collection::btree_set(1i64..60, 1..14)) {
        let a = IntegerSet::new(values.into_iter().collect());
        let (m, w) = exact_m(&a, &SumfreeConfig::default()).unwrap();
        prop_assert_eq!(w.len(), m);
        prop_assert!(w.is_subset_of(&a) && is_sumfree_wrt(&w, &a));
        let greedy = IntegerSet::new(greedy_sumfree(&a));
        prop_assert!(is_sumfree_wrt(&greedy, &a));
        prop_assert!(greedy.len() <= m);
    }

    #[test]
    fn freiman_embeddings_verify(values in prop::collection::btree_set(1i64..200, 1..9), seed: u64) {
        let a = IntegerSet::new(values.into_iter().collect());
        match ruzsa_embed(&a, 2000, seed, &EmbedConfig::default()).unwrap() {
            EmbedOutcome::Embedded(r) => {
                prop_assert!(r.subset.is_subset_of(&a));
                prop_assert!(2 * r.subset.len() >= a.len());
                prop_assert!(verify_freiman(&r.subset, &r.images, r.modulus).is_some());
            }
            EmbedOutcome::Exhausted { .. } => prop_assert!(false, "no embedding found"),
        }
    }
}
