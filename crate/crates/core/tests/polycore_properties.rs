//! Property suites for the polynomial core: parser round trips, inverse
//! substitutions, and invariance of pointwise data under coordinate changes
//! fixing the point.

use hyperstab_core::polycore::{
    hessian_rank_at, multiplicity_at, parse_polynomial, substitute_linear, ts_components,
    LinearChange, Monomial, Point, Polynomial,
};
use hyperstab_core::{rat, rat_int, Rat};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus_entries() -> Vec<(Polynomial, usize)> {
    [
        ("x0^3 + x1^3 + x2^3", 3),
        ("x0*x1*x2 + x3*x4*x5 + x6*x7*x8", 9),
        ("x0^2*x1 + (3/2)*x1^3", 2),
        ("x0^6 + x1^2 + x2^2 + x3^2", 4),
        ("x0^2 + x1^2 + x2^2 + x3^2", 4),
        ("x0*x2*x4 - x0*x3^2 - x1^2*x4 + 2*x1*x2*x3 - x2^3", 5),
        ("x0^2*x5 + x1^2*x6 + x2^2*x5 + x3^2*x6", 7),
    ]
    .iter()
    .map(|(t, n)| (parse_polynomial(t, *n).unwrap(), *n))
    .collect()
}

#[test]
fn print_parse_round_trip_on_corpus() {
    for (f, n) in corpus_entries() {
        let back = parse_polynomial(&f.to_string(), n).unwrap();
        assert_eq!(back, f, "round trip failed for {f}");
    }
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> LinearChange {
    loop {
        let m: Vec<Vec<Rat>> = (0..n)
            .map(|_| (0..n).map(|_| rat(rng.gen_range(-3i64..=3), 1)).collect())
            .collect();
        if let Ok(g) = LinearChange::new(m) {
            return g;
        }
    }
}

#[test]
fn substitution_inverse_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (f, n) in corpus_entries() {
        for _ in 0..10 {
            let g = random_invertible(&mut rng, n);
            let there = substitute_linear(&f, &g).unwrap();
            let back = substitute_linear(&there, &g.inverse()).unwrap();
            assert_eq!(back, f);
        }
    }
}

#[test]
fn ts_blocks_sum_to_the_polynomial() {
    for (f, n) in corpus_entries() {
        let d = ts_components(&f).unwrap();
        assert_eq!(d.recombined(n), f);
    }
}

#[test]
fn multiplicity_and_hessian_rank_invariant_at_origin() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (f, n) in corpus_entries() {
        let origin = Point::affine(vec![rat_int(0); n]);
        if f.evaluate(&origin.coords).unwrap() != rat_int(0) {
            continue;
        }
        let mult = multiplicity_at(&f, &origin).unwrap();
        let rank = hessian_rank_at(&f, &origin).unwrap();
        // linear changes fix the origin automatically
        for _ in 0..20 {
            let g = random_invertible(&mut rng, n);
            let h = substitute_linear(&f, &g).unwrap();
            assert_eq!(multiplicity_at(&h, &origin).unwrap(), mult);
            assert_eq!(hessian_rank_at(&h, &origin).unwrap(), rank);
        }
    }
}

/// Random sparse polynomials for the proptest round trip.
fn arb_polynomial() -> impl Strategy<Value = (Polynomial, usize)> {
    (1usize..5)
        .prop_flat_map(|n| {
            let term = (
                proptest::collection::vec(0u32..4, n),
                -20i64..20,
                1i64..6,
            );
            (
                proptest::collection::vec(term, 1..8),
                Just(n),
            )
        })
        .prop_filter_map("nonzero polynomial", |(terms, n)| {
            let mut p = Polynomial::zero(n);
            for (exps, num, den) in terms {
                p.add_term(Monomial(exps), rat(num, den));
            }
            if p.is_zero() {
                None
            } else {
                Some((p, n))
            }
        })
}

proptest! {
    #[test]
    fn round_trip_random((f, n) in arb_polynomial()) {
        let text = f.to_string();
        let back = parse_polynomial(&text, n).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn addition_commutes_with_evaluation(
        (f, n) in arb_polynomial(),
        coords in proptest::collection::vec(-5i64..5, 1..5)
    ) {
        let point: Vec<Rat> = (0..n).map(|i| rat(coords.get(i).copied().unwrap_or(1), 1)).collect();
        let double = f.add(&f);
        prop_assert_eq!(
            double.evaluate(&point).unwrap(),
            f.evaluate(&point).unwrap() * rat_int(2)
        );
    }
}
