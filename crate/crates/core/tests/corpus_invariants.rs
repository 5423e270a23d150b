use pnvd::distributions::{classify_preimages, second_moment_check};
use pnvd::suites::bent_corpus;
use pnvd::{apply_affine, is_perfect_nonlinear, preimage_map, value_distribution, AffineMap, ExtremalType};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn invertible(p: u32, n: u32, rng: &mut ChaCha8Rng) -> AffineMap {
    loop {
        let a = AffineMap::random_linear(p, n, n, rng);
        if a.is_permutation() {
            return a;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Permuting inputs affinely keeps the distribution; permuting outputs keeps it as a multiset.
    #[test]
    fn affine_equivalence_preserves_distribution(idx in 0usize..24, seed in any::<u64>()) {
        let corpus = bent_corpus();
        let (name, f) = &corpus[idx % corpus.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a1 = invertible(f.p(), f.m(), &mut rng);
        let a2 = invertible(f.p(), f.n(), &mut rng);
        let g = apply_affine(f, Some(&a1), Some(&a2), None).unwrap();
        prop_assert!(is_perfect_nonlinear(&g), "{}", name);
        prop_assert_eq!(value_distribution(&g), value_distribution(f));
        prop_assert!(second_moment_check(&g).unwrap());
    }

    /// Adding a linear map keeps perfect nonlinearity and the second moment.
    #[test]
    fn linear_shifts_keep_second_moment(idx in 0usize..24, seed in any::<u64>()) {
        let corpus = bent_corpus();
        let (_, f) = &corpus[idx % corpus.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = AffineMap::random_linear(f.p(), f.n(), f.m(), &mut rng);
        let g = f.add(&a.to_table()).unwrap();
        prop_assert!(is_perfect_nonlinear(&g));
        prop_assert!(second_moment_check(&g).unwrap());
        prop_assert!(classify_preimages(&preimage_map(&g)).unwrap().within_bounds);
    }
}

#[test]
fn corpus_is_bent_and_within_bounds() {
    for (name, f) in bent_corpus() {
        assert!(is_perfect_nonlinear(&f), "{name}");
        let v = classify_preimages(&preimage_map(&f)).unwrap();
        assert!(v.within_bounds, "{name}");
        if f.n() % 2 == 1 {
            assert_eq!(v.kind, ExtremalType::Other, "{name}");
        }
    }
}
