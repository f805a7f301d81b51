mod support;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use support::*;

fn ok(c: Check) -> Result<(), TestCaseError> {
    c.map_err(TestCaseError::fail)
}

/// `(n, d)` with small Macaulay matrices.
fn shape() -> impl Strategy<Value = (usize, u32)> {
    prop_oneof![(1usize..=1, 2u32..=4), (2usize..=2, 2u32..=3), Just((3, 2))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn split_identities_hold(seed: u64, (n, d) in shape(), delta in 0usize..=1) {
        ok(split_identities(seed, n, d, delta))?;
    }

    #[test]
    fn decomposition_holds(seed: u64, (n, d) in shape(), delta in 0usize..=1) {
        ok(decomposition(seed, n, d, delta, 3))?;
    }

    #[test]
    fn reduce_is_sound(seed: u64, (n, d) in shape(), extra in 0u32..=2, delta in 0usize..=1) {
        let ell = ((n as u32 + 1).div_ceil(d)).max(1) + extra;
        ok(reduce_soundness(seed, n, d, ell, delta))?;
    }

    #[test]
    fn reduce_is_linear(seed: u64, (n, d) in shape(), extra in 0u32..=2) {
        let ell = ((n as u32 + 1).div_ceil(d)).max(1) + extra;
        ok(reduce_linearity(seed, n, d, ell, 1))?;
    }

    #[test]
    fn derivatives_reduce_to_zero(seed: u64, (n, d) in shape(), extra in 0u32..=1, delta in 0usize..=1) {
        // smallest ℓ with (ℓ−1)d ≥ n
        let ell = 1 + (n as u32).div_ceil(d) + extra;
        ok(exactness(seed, n, d, ell, delta))?;
    }

    #[test]
    fn telescoper_degree_within_bound(seed: u64, d in 2u32..=4, ell in 1u32..=3, delta in 0usize..=2) {
        ok(telescoper_degree_bound(seed, 1, d, ell, delta))?;
    }

    #[test]
    fn rational_reconstruct_round_trip(seed: u64, nb in 0usize..=5, db in 0usize..=5) {
        ok(reconstruct_round_trip(seed, nb, db))?;
    }

    #[test]
    fn limit_at_zero_round_trip(seed: u64, dx in 0usize..=3, dy in 0usize..=2) {
        match limit_round_trip(seed, dx, dy) {
            Some(c) => ok(c)?,
            None => return Err(TestCaseError::reject("degenerate at y = 0")),
        }
    }
}

#[test]
fn plane_cubic_degree_bound() {
    for seed in 0..3 {
        telescoper_degree_bound(seed, 2, 3, 2, 1).unwrap();
    }
}

#[test]
fn dimension_formula_holds() {
    let shapes = [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)];
    for (n, d) in shapes {
        for seed in 0..10 {
            dimension_formula(seed, n, d).unwrap_or_else(|e| panic!("n={n} d={d} seed {seed}: {e}"));
        }
    }
}
