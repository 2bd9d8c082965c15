//! Hodge-theoretic invariants of Calabi–Yau-type hypersurfaces: middle Hodge
//! numbers of smooth members, core descriptors and nilpotency indices for
//! block-sum degenerations, cohomology of coordinate-subspace arrangements,
//! and the corrected Hodge–Du Bois row.

mod nerve;

pub use nerve::arrangement_cohomology;

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameters out of range: need n >= 2 and d >= 2")]
    BadParameters,
    #[error("block is not of Calabi-Yau type: (n+1)/d must be integral")]
    NonCyBlock,
    #[error("at least one block is required")]
    NoBlocks,
    #[error("core weight {weight} out of range [{lo}, {hi}]")]
    WeightOutOfRange { weight: u32, lo: u32, hi: u32 },
    #[error("negative Hodge-Du Bois entry at i = {0}: inputs are inconsistent")]
    NegativeEntry(usize),
    #[error("cell must be a nonempty coordinate subspace of the ambient space")]
    InvalidCell,
}

pub type Result<T> = std::result::Result<T, Error>;

/// Middle Hodge numbers `h^{n-1-q,q}` of a smooth hypersurface, `q = 0..n-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeVector {
    pub n_ambient: u32,
    pub d: u32,
    pub entries: Vec<u64>,
}

/// Middle Hodge numbers of a smooth degree-`d` hypersurface in `P^n` by the
/// exact lattice-point count for the primitive part,
/// `#{a in {0..d-2}^{n+1} : Σ a_i = (q+1)d - (n+1)}`,
/// plus one for the hyperplane-power class in even middle dimension.
pub fn smooth_middle_hodge(n: u32, d: u32) -> Result<HodgeVector> {
    if n < 2 || d < 2 {
        return Err(Error::BadParameters);
    }
    // coefficients of (1 + x + ... + x^{d-2})^{n+1}
    let counts = range_power_coefficients(d as usize - 1, n as usize + 1);
    let mut entries = Vec::with_capacity(n as usize);
    for q in 0..n {
        let s = (q as i64 + 1) * d as i64 - (n as i64 + 1);
        let prim = if s < 0 {
            0
        } else {
            counts.get(s as usize).copied().unwrap_or(0)
        };
        let mut h = prim;
        if (n - 1) % 2 == 0 && q == (n - 1) / 2 {
            h += 1;
        }
        entries.push(h);
    }
    Ok(HodgeVector {
        n_ambient: n,
        d,
        entries,
    })
}

/// Coefficients of `(1 + x + ... + x^{len-1})^power` as exact integers.
fn range_power_coefficients(len: usize, power: usize) -> Vec<u64> {
    let mut acc: Vec<u128> = vec![1];
    let unit: Vec<u128> = vec![1; len];
    for _ in 0..power {
        let mut next = vec![0u128; acc.len() + len - 1];
        for (i, &a) in acc.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &u) in unit.iter().enumerate() {
                next[i + j] += a * u;
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|c| u64::try_from(c).expect("count fits in u64 for supported ranges"))
        .collect()
}

/// `m` with `(n+1)/d = m+1` when integral.
pub fn cy_level(n: u32, d: u32) -> Option<u32> {
    if n < 2 || d < 2 {
        return None;
    }
    if (n + 1) % d == 0 {
        Some((n + 1) / d - 1)
    } else {
        None
    }
}

/// Building blocks of a disjoint-variable sum whose cores are computable:
/// reduced normal-crossing monomials and cones over smooth Calabi–Yau-type
/// hypersurfaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockDescriptor {
    /// `x_1 ... x_d`, a degree-`d` normal crossing monomial.
    NormalCrossing { degree: u32 },
    /// Cone over a smooth degree-`d` hypersurface in `P^n`, `(n+1)/d` integral.
    SmoothCone { n: u32, d: u32 },
}

impl BlockDescriptor {
    /// (core weight, Tate twist level) of the block.
    fn core_data(&self) -> Result<(u32, u32)> {
        match self {
            BlockDescriptor::NormalCrossing { .. } => Ok((0, 0)),
            BlockDescriptor::SmoothCone { n, d } => {
                if *n < 2 || *d < 2 || (*n + 1) % *d != 0 {
                    return Err(Error::NonCyBlock);
                }
                Ok((*n - 1, (*n + 1) / *d - 1))
            }
        }
    }

    fn label(&self) -> Option<String> {
        match self {
            BlockDescriptor::NormalCrossing { .. } => None,
            BlockDescriptor::SmoothCone { n, d } => Some(format!(
                "Core(H^{}({} {}))",
                n - 1,
                degree_name(*d),
                dimension_name(*n - 1)
            )),
        }
    }
}

fn degree_name(d: u32) -> String {
    match d {
        2 => "quadric".into(),
        3 => "cubic".into(),
        4 => "quartic".into(),
        5 => "quintic".into(),
        6 => "sextic".into(),
        _ => format!("degree-{d}"),
    }
}

fn dimension_name(k: u32) -> String {
    match k {
        1 => "curve".into(),
        2 => "surface".into(),
        _ => format!("{k}-fold"),
    }
}

/// Weight, Tate-twist level and symbolic label of the core of a Calabi-Yau
/// type (limit) mixed Hodge structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreDescriptor {
    pub weight: u32,
    pub twist: u32,
    pub label: String,
}

impl CoreDescriptor {
    pub fn is_tate(&self) -> bool {
        self.weight == 2 * self.twist
    }
}

/// Core of the middle cohomology of a block-sum hypersurface: weights and
/// twists add across blocks, with one extra weight-2 Tate twist per join.
pub fn core_of_blocks(blocks: &[BlockDescriptor]) -> Result<CoreDescriptor> {
    if blocks.is_empty() {
        return Err(Error::NoBlocks);
    }
    let k = blocks.len() as u32;
    let mut weight = 2 * (k - 1);
    let mut twist = k - 1;
    let mut labels = Vec::new();
    for b in blocks {
        let (w, m) = b.core_data()?;
        weight += w;
        twist += m;
        if let Some(l) = b.label() {
            labels.push(l);
        }
    }
    let label = if labels.is_empty() {
        if twist == 0 {
            "Q".to_string()
        } else {
            format!("Q(-{twist})")
        }
    } else {
        let joined = labels.join(" (x) ");
        if k > 1 {
            format!("{}(-{})", joined, k - 1)
        } else {
            joined
        }
    };
    Ok(CoreDescriptor {
        weight,
        twist,
        label,
    })
}

/// Smallest `k` with `N^k = 0` on the limit mixed Hodge structure of any
/// one-parameter smoothing: `k = (n-1) - core_weight + 1`.
pub fn nilpotency_index(n: u32, core_weight: u32, m: u32) -> Result<u32> {
    if core_weight < 2 * m || core_weight > n - 1 {
        return Err(Error::WeightOutOfRange {
            weight: core_weight,
            lo: 2 * m,
            hi: n - 1,
        });
    }
    let k = n - core_weight;
    assert!(k <= n - 2 * m, "nilpotency bound");
    Ok(k)
}

/// Maximal degeneration test: the core is the Tate class `Q(-m)`.
pub fn maximal_degeneration_test(core: &CoreDescriptor, m: u32) -> bool {
    core.weight == 2 * m
}

/// A union of coordinate subspaces of a projective space, each cell given by
/// its set of vanishing coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrangement {
    /// Projective dimension of the ambient space (so `ambient_dim + 1`
    /// coordinates).
    pub ambient_dim: usize,
    pub cells: Vec<BTreeSet<usize>>,
}

impl Arrangement {
    pub fn new(ambient_dim: usize, mut cells: Vec<BTreeSet<usize>>) -> Result<Self> {
        for cell in &cells {
            if cell.len() > ambient_dim || cell.iter().any(|&i| i > ambient_dim) {
                return Err(Error::InvalidCell);
            }
        }
        cells.sort();
        cells.dedup();
        Ok(Arrangement { ambient_dim, cells })
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Arrangement {
            ambient_dim,
            cells: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell_dim(&self, cell: &BTreeSet<usize>) -> usize {
        self.ambient_dim - cell.len()
    }

    /// Dimension of the union, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| self.cell_dim(c)).max()
    }
}

/// `h^i(S, O_S)` for `i = 0..dim S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRow {
    pub values: Vec<u64>,
}

/// The corrected Hodge–Du Bois row `h^{n-1-m, i}` for `i = 0..n` of an
/// `m`-liminal hypersurface with liminal-locus structure-sheaf cohomology
/// `h0s`: the locus row shifted by `m+1`, with `-1` at `i = m+1` and `+1` at
/// `i = n-1-m`. Entries must come out non-negative.
pub fn hodge_du_bois_row(n: u32, d: u32, m: u32, h0s: &[u64]) -> Result<Vec<u64>> {
    if n < 2 || d < 2 || (n + 1) != d * (m + 1) {
        return Err(Error::BadParameters);
    }
    let mut row = Vec::with_capacity(n as usize + 1);
    for i in 0..=n as i64 {
        let shifted = i - 1 - m as i64;
        let base = if shifted >= 0 {
            h0s.get(shifted as usize).copied().unwrap_or(0) as i64
        } else {
            0
        };
        let mut v = base;
        if i == m as i64 + 1 {
            v -= 1;
        }
        if i == (n as i64 - 1) - m as i64 {
            v += 1;
        }
        if v < 0 {
            return Err(Error::NegativeEntry(i as usize));
        }
        row.push(v as u64);
    }
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_sevenfold_row() {
        let h = smooth_middle_hodge(8, 3).unwrap();
        assert_eq!(h.entries, vec![0, 0, 1, 84, 84, 1, 0, 0]);
    }

    #[test]
    fn cubic_fourfold_and_k3() {
        let h = smooth_middle_hodge(5, 3).unwrap();
        assert_eq!(h.entries, vec![0, 1, 21, 1, 0]);
        let h = smooth_middle_hodge(3, 4).unwrap();
        assert_eq!(h.entries, vec![1, 20, 1]);
    }

    #[test]
    fn cy_levels() {
        assert_eq!(cy_level(8, 3), Some(2));
        assert_eq!(cy_level(3, 4), Some(0));
        assert_eq!(cy_level(5, 4), None);
    }

    #[test]
    fn cores_of_sevenfold_cases() {
        let case2 = core_of_blocks(&[
            BlockDescriptor::SmoothCone { n: 5, d: 3 },
            BlockDescriptor::NormalCrossing { degree: 3 },
        ])
        .unwrap();
        assert_eq!((case2.weight, case2.twist), (6, 2));
        assert_eq!(case2.label, "Core(H^4(cubic 4-fold))(-1)");

        let case3 = core_of_blocks(&[
            BlockDescriptor::SmoothCone { n: 2, d: 3 },
            BlockDescriptor::NormalCrossing { degree: 3 },
            BlockDescriptor::NormalCrossing { degree: 3 },
        ])
        .unwrap();
        assert_eq!((case3.weight, case3.twist), (5, 2));
        assert_eq!(case3.label, "Core(H^1(cubic curve))(-2)");

        let case4 = core_of_blocks(&[
            BlockDescriptor::NormalCrossing { degree: 3 },
            BlockDescriptor::NormalCrossing { degree: 3 },
            BlockDescriptor::NormalCrossing { degree: 3 },
        ])
        .unwrap();
        assert_eq!((case4.weight, case4.twist), (4, 2));
        assert_eq!(case4.label, "Q(-2)");
        assert!(case4.is_tate());
    }

    #[test]
    fn nilpotency_indices() {
        assert_eq!(nilpotency_index(8, 6, 2).unwrap(), 2);
        assert_eq!(nilpotency_index(8, 5, 2).unwrap(), 3);
        assert_eq!(nilpotency_index(8, 7, 2).unwrap(), 1);
        assert!(nilpotency_index(8, 3, 2).is_err());
    }

    #[test]
    fn maximal_degeneration_cases() {
        let tate = CoreDescriptor {
            weight: 4,
            twist: 2,
            label: "Q(-2)".into(),
        };
        assert!(maximal_degeneration_test(&tate, 2));
        let case2 = CoreDescriptor {
            weight: 6,
            twist: 2,
            label: String::new(),
        };
        assert!(!maximal_degeneration_test(&case2, 2));
    }

    #[test]
    fn k3_row_formula() {
        for (s0, s1) in [(1u64, 0u64), (1, 1), (2, 0)] {
            let row = hodge_du_bois_row(3, 4, 0, &[s0, s1]).unwrap();
            assert_eq!(row, vec![0, s0 - 1, s1 + 1, 0]);
        }
    }

    #[test]
    fn row_negativity_is_an_error() {
        // h^0(O_S) = 0 would make the i = m+1 entry negative
        assert_eq!(
            hodge_du_bois_row(3, 4, 0, &[0, 0]),
            Err(Error::NegativeEntry(1))
        );
    }
}
