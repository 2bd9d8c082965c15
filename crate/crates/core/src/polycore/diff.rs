use super::linalg;
use super::monomial::Monomial;
use super::poly::Polynomial;
use super::{Error, Point, Result};
use crate::Rat;
use num_traits::Zero;

/// Exact value and gradient of `f` at an affine point.
///
/// `p` is a singular point of `{f = 0}` iff both the value and every gradient
/// entry vanish.
pub fn jacobian_at(f: &Polynomial, p: &Point) -> Result<(Rat, Vec<Rat>)> {
    if p.projective {
        return Err(Error::ProjectivePoint);
    }
    if p.dim() != f.num_vars() {
        return Err(Error::DimensionMismatch {
            expected: f.num_vars(),
            got: p.dim(),
        });
    }
    let value = f.evaluate(&p.coords)?;
    let gradient = (0..f.num_vars())
        .map(|i| f.derivative(i).evaluate(&p.coords))
        .collect::<Result<Vec<_>>>()?;
    Ok((value, gradient))
}

/// Translate so that `p` becomes the origin: returns `f(x + p)`.
pub fn translate(f: &Polynomial, p: &Point) -> Result<Polynomial> {
    if p.projective {
        return Err(Error::ProjectivePoint);
    }
    let n = f.num_vars();
    if p.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: p.dim(),
        });
    }
    if p.coords.iter().all(|c| c.is_zero()) {
        return Ok(f.clone());
    }
    // x_i + p_i as polynomials, then expand term by term
    let shifted: Vec<Polynomial> = (0..n)
        .map(|i| {
            let mut q = Polynomial::var(n, i);
            q.add_term(Monomial::constant(n), p.coords[i].clone());
            q
        })
        .collect();
    let mut out = Polynomial::zero(n);
    for (m, c) in f.terms() {
        let mut term = Polynomial::constant(n, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                term = term.mul(&shifted[i].pow(e));
            }
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Order of vanishing of `f` at `p`: the minimal total degree after moving
/// `p` to the origin. Zero iff `f(p) != 0`.
pub fn multiplicity_at(f: &Polynomial, p: &Point) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = translate(f, p)?;
    Ok(g.min_degree().expect("translate of nonzero is nonzero"))
}

/// Exact rank of the matrix of second partials at `p`, by fraction-free
/// elimination. At a vanishing point this is the rank of the quadratic part
/// of the local equation.
pub fn hessian_rank_at(f: &Polynomial, p: &Point) -> Result<usize> {
    if p.projective {
        return Err(Error::ProjectivePoint);
    }
    let n = f.num_vars();
    if p.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: p.dim(),
        });
    }
    let mut matrix = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        let fi = f.derivative(i);
        for j in i..n {
            let fij = fi.derivative(j);
            let v = fij.evaluate(&p.coords)?;
            matrix[i][j] = v.clone();
            matrix[j][i] = v;
        }
    }
    Ok(linalg::rank(&matrix))
}

/// Affine chart `x_i = 1`, remaining variables reindexed in ascending order.
///
/// Returns the chart polynomial together with the old-to-new index map
/// (`None` at the dropped variable).
pub fn dehomogenize(f: &Polynomial, i: usize) -> Result<(Polynomial, Vec<Option<usize>>)> {
    let n = f.num_vars();
    if i >= n {
        return Err(Error::IndexOutOfRange(i));
    }
    if f.homogeneous_degree().is_none() {
        return Err(Error::NotHomogeneous);
    }
    assert!(n >= 2, "chart needs at least two variables");
    let mut old_to_new = vec![None; n];
    let mut next = 0;
    for (j, slot) in old_to_new.iter_mut().enumerate() {
        if j != i {
            *slot = Some(next);
            next += 1;
        }
    }
    let mut out = Polynomial::zero(n - 1);
    for (m, c) in f.terms() {
        let mut exps = vec![0u32; n - 1];
        for (j, &e) in m.0.iter().enumerate() {
            if j == i {
                continue; // x_i = 1
            }
            if e > 0 {
                exps[old_to_new[j].expect("kept variable")] = e;
            }
        }
        out.add_term(Monomial(exps), c.clone());
    }
    Ok((out, old_to_new))
}

/// One connected component of the variable-interaction graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TsBlock {
    /// Ascending variable indices of the block.
    pub vars: Vec<usize>,
    /// The block polynomial, in the ambient variable space.
    pub poly: Polynomial,
}

/// Disjoint-variable decomposition of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TsDecomposition {
    pub blocks: Vec<TsBlock>,
    /// Variables that do not occur in the polynomial.
    pub unused_vars: Vec<usize>,
    /// The constant term, kept apart from every block.
    pub constant: Rat,
}

impl TsDecomposition {
    /// Recombine: sum of blocks plus the constant.
    pub fn recombined(&self, num_vars: usize) -> Polynomial {
        let mut acc = Polynomial::zero(num_vars);
        for b in &self.blocks {
            acc = acc.add(&b.poly);
        }
        if !self.constant.is_zero() {
            acc.add_term(Monomial::constant(num_vars), self.constant.clone());
        }
        acc
    }
}

/// Split `f` into the connected components of its variable-interaction graph
/// (vertices: variables occurring in `f`; edges: co-occurrence in a monomial).
/// `f` is the disjoint-variable sum of the blocks plus the constant term.
pub fn ts_components(f: &Polynomial) -> Result<TsDecomposition> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.num_vars();
    let mut dsu = Dsu::new(n);
    let mut occurs = vec![false; n];
    for (m, _) in f.terms() {
        let supp = m.support();
        for &v in &supp {
            occurs[v] = true;
        }
        for w in supp.windows(2) {
            dsu.union(w[0], w[1]);
        }
    }
    let mut block_of_root: std::collections::BTreeMap<usize, usize> = Default::default();
    let mut blocks: Vec<TsBlock> = Vec::new();
    for v in 0..n {
        if !occurs[v] {
            continue;
        }
        let root = dsu.find(v);
        let idx = *block_of_root.entry(root).or_insert_with(|| {
            blocks.push(TsBlock {
                vars: Vec::new(),
                poly: Polynomial::zero(n),
            });
            blocks.len() - 1
        });
        blocks[idx].vars.push(v);
    }
    let mut constant = Rat::zero();
    for (m, c) in f.terms() {
        match m.support().first() {
            None => constant = c.clone(),
            Some(&v) => {
                let root = dsu.find(v);
                let idx = block_of_root[&root];
                blocks[idx].poly.add_term(m.clone(), c.clone());
            }
        }
    }
    blocks.sort_by_key(|b| b.vars[0]);
    let unused_vars = (0..n).filter(|&v| !occurs[v]).collect();
    Ok(TsDecomposition {
        blocks,
        unused_vars,
        constant,
    })
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
