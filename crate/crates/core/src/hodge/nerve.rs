//! Structure-sheaf cohomology of a coordinate-subspace arrangement.
//!
//! Every cell and every nonempty intersection of cells is a projective
//! space, with one-dimensional `H^0` and no higher structure-sheaf
//! cohomology, so the Čech complex of the closed cover by cells computes
//! `h^i(S, O_S)` as the cohomology of its nerve. That nerve is homotopy
//! equivalent to the simplicial complex whose faces are the nonempty sets
//! of jointly free coordinates (each cell contributes the full simplex on
//! its free coordinates, and intersections of cells are exactly the shared
//! subfaces), so the ranks are computed there: the face complex has at most
//! `2^(n+1)` simplices however many cells the arrangement has. All linear
//! algebra is exact.

use super::{Arrangement, CohomologyRow, Error, Result};
use crate::polycore::linalg;
use crate::BigInt;
use std::collections::{BTreeMap, BTreeSet};

const MAX_FACES: usize = 1 << 22;

/// `h^i(S, O_S)` for `i = 0..dim S`.
pub fn arrangement_cohomology(s: &Arrangement) -> Result<CohomologyRow> {
    // re-validate cells against the ambient space
    let _ = Arrangement::new(s.ambient_dim, s.cells.clone())?;
    let Some(dim_s) = s.dim() else {
        return Ok(CohomologyRow { values: Vec::new() });
    };
    let faces = face_complex(s)?;
    let by_dim = group_by_dimension(&faces, dim_s);

    let count = |k: usize| by_dim.get(k).map_or(0, |v| v.len());
    let mut values = Vec::with_capacity(dim_s + 1);
    let mut prev_rank = 0usize; // rank of δ^{i-1}
    for i in 0..=dim_s {
        let r = coboundary_rank(&by_dim, i);
        let h = count(i) - r - prev_rank;
        values.push(h as u64);
        prev_rank = r;
    }
    Ok(CohomologyRow { values })
}

/// All nonempty subsets of the free-coordinate sets of the cells.
fn face_complex(s: &Arrangement) -> Result<BTreeSet<Vec<usize>>> {
    let coords = s.ambient_dim + 1;
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut budget = 0usize;
    for cell in &s.cells {
        let free: Vec<usize> = (0..coords).filter(|i| !cell.contains(i)).collect();
        budget = budget.saturating_add(1usize << free.len());
        if budget > MAX_FACES {
            return Err(Error::InvalidCell);
        }
        for mask in 1u64..(1u64 << free.len()) {
            let face: Vec<usize> = free
                .iter()
                .enumerate()
                .filter(|(b, _)| mask & (1 << b) != 0)
                .map(|(_, &v)| v)
                .collect();
            faces.insert(face);
        }
    }
    Ok(faces)
}

fn group_by_dimension(faces: &BTreeSet<Vec<usize>>, dim_s: usize) -> Vec<Vec<Vec<usize>>> {
    let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dim_s + 1];
    for f in faces {
        let d = f.len() - 1;
        debug_assert!(d <= dim_s);
        by_dim[d].push(f.clone());
    }
    by_dim
}

/// Rank of `δ^k : C^k -> C^{k+1}` over the rationals.
fn coboundary_rank(by_dim: &[Vec<Vec<usize>>], k: usize) -> usize {
    let domain = match by_dim.get(k) {
        Some(v) if !v.is_empty() => v,
        _ => return 0,
    };
    let codomain = match by_dim.get(k + 1) {
        Some(v) if !v.is_empty() => v,
        _ => return 0,
    };
    let index: BTreeMap<&[usize], usize> = domain
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(codomain.len());
    for tau in codomain {
        let mut row = vec![BigInt::from(0); domain.len()];
        for (i, _) in tau.iter().enumerate() {
            let mut facet = tau.clone();
            facet.remove(i);
            // every facet of a face is a face of the complex
            let col = index[facet.as_slice()];
            row[col] = if i % 2 == 0 {
                BigInt::from(1)
            } else {
                BigInt::from(-1)
            };
        }
        rows.push(row);
    }
    linalg::rank_int(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(ambient: usize, cells: &[&[usize]]) -> Arrangement {
        Arrangement::new(
            ambient,
            cells.iter().map(|c| c.iter().copied().collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn two_disjoint_points() {
        // points [1:0:0] and [0:1:0] in P^2: cells vanish {1,2} and {0,2}
        let s = arr(2, &[&[1, 2], &[0, 2]]);
        let row = arrangement_cohomology(&s).unwrap();
        assert_eq!(row.values, vec![2]);
    }

    #[test]
    fn three_coordinate_lines_in_p2() {
        // three lines pairwise meeting with no triple point: a cycle
        let s = arr(2, &[&[0], &[1], &[2]]);
        let row = arrangement_cohomology(&s).unwrap();
        assert_eq!(row.values, vec![1, 1]);
    }

    #[test]
    fn single_cell_is_a_point_in_cohomology() {
        let s = arr(4, &[&[0, 1]]);
        let row = arrangement_cohomology(&s).unwrap();
        assert_eq!(row.values, vec![1, 0, 0]);
        let s = arr(2, &[&[0, 1]]);
        let row = arrangement_cohomology(&s).unwrap();
        assert_eq!(row.values, vec![1]);
    }

    #[test]
    fn disjoint_union_is_additive() {
        // two disjoint lines in P^3
        let s = arr(3, &[&[0, 1], &[2, 3]]);
        let row = arrangement_cohomology(&s).unwrap();
        assert_eq!(row.values, vec![2, 0]);
    }

    #[test]
    fn tetrahedron_edge_curve() {
        // the six coordinate lines of P^3: a graph with first Betti number 3
        let cells: Vec<Vec<usize>> = (0..4usize)
            .flat_map(|a| ((a + 1)..4).map(move |b| vec![a, b]))
            .collect();
        let refs: Vec<&[usize]> = cells.iter().map(|c| c.as_slice()).collect();
        let s = arr(3, &refs);
        let row = arrangement_cohomology(&s).unwrap();
        assert_eq!(row.values, vec![1, 3]);
    }

    #[test]
    fn empty_arrangement() {
        let s = Arrangement::empty(3);
        let row = arrangement_cohomology(&s).unwrap();
        assert!(row.values.is_empty());
    }
}
