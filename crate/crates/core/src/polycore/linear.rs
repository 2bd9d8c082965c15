use super::linalg;
use super::{Error, Result};
use crate::Rat;
use num_traits::{One, Zero};

/// Invertible rational change of coordinates.
///
/// Any invertible matrix is allowed: the Hilbert–Mumford pairing is invariant
/// under scalar rescaling and weight shifts, so SL-normalization is never
/// needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearChange {
    matrix: Vec<Vec<Rat>>,
    determinant: Rat,
}

impl LinearChange {
    pub fn new(matrix: Vec<Vec<Rat>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(Error::NotSquare);
        }
        let determinant = linalg::det(&matrix);
        if determinant.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(LinearChange {
            matrix,
            determinant,
        })
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        LinearChange {
            matrix,
            determinant: Rat::one(),
        }
    }

    /// Change of coordinates sending `x_i` to `x_{perm[i]}` in the sense that
    /// `f(x_{perm[0]}, ..., x_{perm[n]})` is the composed polynomial.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut matrix = vec![vec![Rat::zero(); n]; n];
        for (i, &p) in perm.iter().enumerate() {
            matrix[i][p] = Rat::one();
        }
        LinearChange::new(matrix).expect("permutation matrices are invertible")
    }

    /// A change `g` with `g(e_j) = p`, so that analyzing `f ∘ g` at the
    /// coordinate point `e_j` analyzes `f` at `p`. Requires `p[j] != 0`.
    pub fn coordinate_point_to(p: &[Rat], j: usize) -> Result<Self> {
        let n = p.len();
        if j >= n {
            return Err(Error::IndexOutOfRange(j));
        }
        if p[j].is_zero() {
            return Err(Error::SingularMatrix);
        }
        // column j is p, other columns are standard basis vectors
        let mut matrix = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            matrix[i][j] = p[i].clone();
        }
        for c in 0..n {
            if c != j {
                matrix[c][c] = Rat::one();
            }
        }
        LinearChange::new(matrix)
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.matrix[i]
    }

    pub fn matrix(&self) -> &[Vec<Rat>] {
        &self.matrix
    }

    pub fn determinant(&self) -> &Rat {
        &self.determinant
    }

    pub fn inverse(&self) -> LinearChange {
        let inv = linalg::inverse(&self.matrix).expect("determinant is nonzero");
        let determinant = Rat::one() / self.determinant.clone();
        LinearChange {
            matrix: inv,
            determinant,
        }
    }
}

/// A rational point, affine or projective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub coords: Vec<Rat>,
    pub projective: bool,
}

impl Point {
    pub fn affine(coords: Vec<Rat>) -> Self {
        Point {
            coords,
            projective: false,
        }
    }

    pub fn projective(coords: Vec<Rat>) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroProjectivePoint);
        }
        Ok(Point {
            coords,
            projective: true,
        })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_origin(&self) -> bool {
        !self.projective && self.coords.iter().all(|c| c.is_zero())
    }

    /// Scale a projective point so its first nonzero coordinate is 1.
    pub fn normalized(&self) -> Point {
        if !self.projective {
            return self.clone();
        }
        let pivot = self
            .coords
            .iter()
            .find(|c| !c.is_zero())
            .expect("projective point is nonzero")
            .clone();
        Point {
            coords: self.coords.iter().map(|c| c / &pivot).collect(),
            projective: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;

    #[test]
    fn rejects_singular() {
        let m = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ];
        assert_eq!(LinearChange::new(m), Err(Error::SingularMatrix));
    }

    #[test]
    fn inverse_composes_to_identity() {
        let g = LinearChange::new(vec![
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(0), rat_int(1)],
        ])
        .unwrap();
        let gi = g.inverse();
        let f = crate::polycore::parse_polynomial("x0^2 + x0*x1", 2).unwrap();
        let back =
            crate::polycore::substitute_linear(&crate::polycore::substitute_linear(&f, &g).unwrap(), &gi)
                .unwrap();
        assert_eq!(back, f);
    }
}
