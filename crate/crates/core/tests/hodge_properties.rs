//! Hodge-layer invariants: symmetry and Calabi–Yau shape of the middle
//! Hodge numbers across the supported grid, agreement of their sum with the
//! middle Betti number computed independently from the Euler characteristic,
//! block-calculus laws for cores, the nilpotency bound, and connectivity of
//! liminal loci with low core weight.

use hyperstab_core::hodge::{
    arrangement_cohomology, core_of_blocks, cy_level, maximal_degeneration_test, nilpotency_index,
    smooth_middle_hodge, Arrangement, BlockDescriptor,
};
use hyperstab_core::minexp::liminal_locus_structured;
use hyperstab_core::polycore::parse_polynomial;
use hyperstab_core::BigInt;
use num_traits::ToPrimitive;

/// Independent oracle: the topological Euler characteristic of a smooth
/// degree-`d` hypersurface in `P^n`, from the Chern class expansion
/// `χ = d · Σ_{j=0}^{n-1} binom(n+1, j) (-d)^{n-1-j}`, accumulated exactly.
fn euler_characteristic(n: u32, d: u32) -> BigInt {
    let mut sum = BigInt::from(0);
    for j in 0..=(n - 1) {
        let mut term = binomial(n + 1, j);
        let power = (n - 1 - j) as usize;
        for _ in 0..power {
            term *= -BigInt::from(d as i64);
        }
        sum += term;
    }
    sum * BigInt::from(d as i64)
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut out = BigInt::from(1);
    for i in 0..k {
        out = out * BigInt::from((n - i) as i64) / BigInt::from((i + 1) as i64);
    }
    out
}

/// Middle Betti number from the Euler characteristic: away from the middle
/// degree a hypersurface has the cohomology of projective space.
fn middle_betti(n: u32, d: u32) -> u64 {
    let chi = euler_characteristic(n, d);
    let m = n as i64 - 1; // dimension of the hypersurface
    let b = if m % 2 == 0 {
        chi - BigInt::from(m)
    } else {
        BigInt::from(m + 1) - chi
    };
    b.to_u64().expect("middle Betti number is a positive integer")
}

#[test]
fn middle_hodge_sum_matches_the_euler_oracle() {
    for d in 2u32..=6 {
        for n in 3u32..=12 {
            let h = smooth_middle_hodge(n, d).unwrap();
            let sum: u64 = h.entries.iter().sum();
            assert_eq!(
                sum,
                middle_betti(n, d),
                "Betti mismatch for (n, d) = ({n}, {d})"
            );
        }
    }
}

#[test]
fn hodge_symmetry_and_cy_shape_on_the_grid() {
    for d in 2u32..=6 {
        for n in 3u32..=12 {
            let h = smooth_middle_hodge(n, d).unwrap();
            let e = &h.entries;
            // Hodge symmetry
            for q in 0..e.len() {
                assert_eq!(e[q], e[e.len() - 1 - q]);
            }
            if let Some(m) = cy_level(n, d) {
                // one-dimensional outermost primitive piece at level m,
                // zeros below; for d = 2 the level-m slot is the middle one
                // and also carries the hyperplane-power class
                let expected_at_m = if d == 2 { 2 } else { 1 };
                assert_eq!(e[m as usize], expected_at_m, "(n, d) = ({n}, {d})");
                for q in 0..m as usize {
                    assert_eq!(e[q], 0, "(n, d) = ({n}, {d}), q = {q}");
                }
            }
        }
    }
}

#[test]
fn core_calculus_is_permutation_invariant_and_associative() {
    use BlockDescriptor::{NormalCrossing, SmoothCone};
    let blocks = vec![
        SmoothCone { n: 5, d: 3 },
        NormalCrossing { degree: 3 },
        SmoothCone { n: 2, d: 3 },
        NormalCrossing { degree: 3 },
    ];
    let reference = core_of_blocks(&blocks).unwrap();
    // every permutation yields the same weight and twist
    let perms: Vec<Vec<usize>> = vec![
        vec![0, 1, 2, 3],
        vec![3, 2, 1, 0],
        vec![1, 3, 0, 2],
        vec![2, 0, 3, 1],
    ];
    for p in perms {
        let shuffled: Vec<_> = p.iter().map(|&i| blocks[i].clone()).collect();
        let c = core_of_blocks(&shuffled).unwrap();
        assert_eq!((c.weight, c.twist), (reference.weight, reference.twist));
    }
    // associativity of the underlying sums: grouping blocks pairwise and
    // joining the groups adds one twist per join either way
    let left = core_of_blocks(&blocks[..2]).unwrap();
    let right = core_of_blocks(&blocks[2..]).unwrap();
    let rejoined_weight = left.weight + right.weight + 2;
    let rejoined_twist = left.twist + right.twist + 1;
    assert_eq!(rejoined_weight, reference.weight);
    assert_eq!(rejoined_twist, reference.twist);
}

#[test]
fn nilpotency_respects_the_global_bound() {
    for n in 3u32..=12 {
        for m in 0..=(n / 3) {
            for w in (2 * m)..=(n - 1) {
                let k = nilpotency_index(n, w, m).unwrap();
                assert!(k <= n - 2 * m);
                assert!(k >= 1);
            }
        }
    }
}

#[test]
fn maximal_exactly_at_tate_weight() {
    use BlockDescriptor::NormalCrossing;
    for m in 0u32..=3 {
        let blocks: Vec<_> = (0..=m)
            .map(|_| NormalCrossing { degree: 3 })
            .collect();
        let core = core_of_blocks(&blocks).unwrap();
        assert_eq!(core.twist, m);
        assert_eq!(core.weight, 2 * m);
        assert!(maximal_degeneration_test(&core, m));
    }
}

#[test]
fn low_weight_cores_have_connected_loci() {
    // structured corpus entries whose core weight is at most n - 3
    let entries = [
        ("x0*x1*x2 + x3*x4*x5 + x6*x7*x8", 9, 4u32),
        ("x0^3+x1^3+x2^3 + x3*x4*x5 + x6*x7*x8", 9, 5),
        ("x0*x1*x2*x3 + x4*x5*x6*x7", 8, 2),
    ];
    for (text, vars, weight) in entries {
        let f = parse_polynomial(text, vars).unwrap();
        let n = (vars - 1) as u32;
        assert!(weight <= n - 3);
        let locus = liminal_locus_structured(&f).unwrap();
        let row = arrangement_cohomology(&locus).unwrap();
        assert_eq!(row.values[0], 1, "locus of {text} must be connected");
    }
}

#[test]
fn arrangement_cohomology_is_additive_on_disjoint_unions() {
    let a = Arrangement::new(5, vec![[0, 1, 2, 3].into_iter().collect()]).unwrap();
    let b = Arrangement::new(5, vec![[2, 3, 4, 5].into_iter().collect()]).unwrap();
    let ab = Arrangement::new(
        5,
        vec![
            [0, 1, 2, 3].into_iter().collect(),
            [2, 3, 4, 5].into_iter().collect(),
        ],
    )
    .unwrap();
    let ra = arrangement_cohomology(&a).unwrap().values;
    let rb = arrangement_cohomology(&b).unwrap().values;
    let rab = arrangement_cohomology(&ab).unwrap().values;
    // the two lines are disjoint (their vanishing sets cover all six
    // coordinates), so cohomology adds degreewise
    for i in 0..rab.len() {
        let expect = ra.get(i).copied().unwrap_or(0) + rb.get(i).copied().unwrap_or(0);
        assert_eq!(rab[i], expect);
    }
    assert_eq!(rab[0], 2);
}
