use std::collections::BTreeSet;

use cdv_core::linalg::kernel_basis;
use cdv_core::oracle::cells_brute_force;
use cdv_core::signcells::{enumerate_cells, SignPattern};
use cdv_core::{Matrix, QuadSurd, Rational, Scalar, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_subspace(rng: &mut ChaCha8Rng) -> Subspace<Rational> {
    let n = rng.gen_range(2..=8);
    let d = rng.gen_range(1..=3.min(n));
    // Small entries and occasional zero columns give degenerate arrangements.
    let dead: usize = rng.gen_range(0..n + 3);
    let vecs = (0..d)
        .map(|_| {
            (0..n)
                .map(|i| {
                    if i == dead {
                        Rational::from_i64(0)
                    } else {
                        Rational::from_i64(rng.gen_range(-2..=2))
                    }
                })
                .collect()
        })
        .collect();
    Subspace::span(n, vecs)
}

#[test]
fn enumeration_matches_brute_force_on_random_subspaces() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..150 {
        let l = random_subspace(&mut rng);
        let fan = enumerate_cells(&l, 6).unwrap();
        let fast: BTreeSet<SignPattern> = fan.cells().iter().map(|c| c.pattern).collect();
        assert_eq!(fast, cells_brute_force(&l), "subspace {:?}", l.basis());
        for c in fan.cells() {
            assert_eq!(SignPattern::of_vector(&c.witness), c.pattern);
            assert!(l.contains(&c.witness));
            let neg = fan.get(&c.pattern.negate()).expect("fan is centrally symmetric");
            assert_eq!(neg.dim, c.dim);
        }
    }
}

#[test]
fn enumeration_over_a_quadratic_field() {
    // sqrt(2) I - A(P_3) has a one-dimensional kernel spanned by (1, sqrt 2, 1).
    let s2 = QuadSurd::sqrt(2).unwrap();
    let m = Matrix::from_fn(3, 3, |i, j| {
        if i == j {
            s2.clone()
        } else if i.abs_diff(j) == 1 {
            QuadSurd::integer(-1)
        } else {
            QuadSurd::integer(0)
        }
    });
    let l = kernel_basis(&m);
    let fan = enumerate_cells(&l, 6).unwrap();
    let pats: BTreeSet<String> = fan.cells().iter().map(|c| c.pattern.to_string()).collect();
    assert_eq!(pats, ["000", "+++", "---"].iter().map(|s| s.to_string()).collect());
    assert_eq!(
        cells_brute_force(&l).len(),
        fan.len(),
    );
}
