//! Two-phase primal simplex over exact rationals.
//!
//! Minimizes `c^T x` subject to `Ax = b`, `x >= 0`. Pivoting uses Bland's
//! rule throughout (smallest eligible column index enters; ties in the ratio
//! test break toward the smallest basic variable index), so the method
//! terminates and every run is deterministic. Phase one adds one artificial
//! variable per row; if the artificial objective stays positive the problem
//! is infeasible and the simplex multipliers of the final basis form a
//! Farkas certificate `y` with `y^T A <= 0` and `y^T b > 0`.

use crate::Rat;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rat>, value: Rat },
    Infeasible { farkas: Vec<Rat> },
    Unbounded,
}

/// Solve `min c^T x : Ax = b, x >= 0` exactly.
pub fn solve_min(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);

    // Flip rows to make the right-hand side nonnegative, remembering signs
    // so the Farkas vector can be mapped back to the original rows.
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    let mut flip = vec![false; m];
    for i in 0..m {
        if b[i] < Rat::zero() {
            flip[i] = true;
            rows.push(a[i].iter().map(|v| -v.clone()).collect());
            rhs.push(-b[i].clone());
        } else {
            rows.push(a[i].clone());
            rhs.push(b[i].clone());
        }
    }

    let total = n + m; // originals then artificials
    let mut t = Tableau::new(rows, rhs, n, total);

    // Phase 1: minimize the sum of artificials.
    let mut phase1_cost = vec![Rat::zero(); total];
    for j in n..total {
        phase1_cost[j] = Rat::one();
    }
    t.set_cost(&phase1_cost);
    if t.optimize(total).is_none() {
        unreachable!("phase-1 objective is bounded below by zero");
    }
    if t.objective() > Rat::zero() {
        // y_i = c_art_i - reduced_cost(art_i) = 1 - r[n + i]
        let mut y: Vec<Rat> = (0..m)
            .map(|i| Rat::one() - t.reduced_cost(n + i))
            .collect();
        for i in 0..m {
            if flip[i] {
                y[i] = -y[i].clone();
            }
        }
        return LpOutcome::Infeasible { farkas: y };
    }

    // Drive any residual basic artificials out of the basis; rows that are
    // zero on the original columns are redundant and can stay put.
    t.expel_artificials(n);

    // Phase 2 over the original columns only.
    let mut phase2_cost = vec![Rat::zero(); total];
    phase2_cost[..n].clone_from_slice(c);
    t.set_cost(&phase2_cost);
    if t.optimize(n).is_none() {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        if bv < n {
            x[bv] = t.rows[i][t.rhs_col].clone();
        }
    }
    let value = t.objective();
    LpOutcome::Optimal { x, value }
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    cost_row: Vec<Rat>,
    obj: Rat,
    rhs_col: usize,
}

impl Tableau {
    fn new(a: Vec<Vec<Rat>>, b: Vec<Rat>, n: usize, total: usize) -> Self {
        let m = a.len();
        let rhs_col = total;
        let mut rows = Vec::with_capacity(m);
        for i in 0..m {
            let mut row = vec![Rat::zero(); total + 1];
            row[..n].clone_from_slice(&a[i]);
            row[n + i] = Rat::one();
            row[rhs_col] = b[i].clone();
            rows.push(row);
        }
        let basis = (n..total).collect();
        Tableau {
            rows,
            basis,
            cost_row: vec![Rat::zero(); total],
            obj: Rat::zero(),
            rhs_col,
        }
    }

    /// Install a cost vector and recompute reduced costs for the current basis.
    fn set_cost(&mut self, c: &[Rat]) {
        let total = c.len();
        let mut reduced = c.to_vec();
        let mut obj = Rat::zero();
        for (i, &bv) in self.basis.iter().enumerate() {
            if c[bv].is_zero() {
                continue;
            }
            let cb = c[bv].clone();
            for j in 0..total {
                let adj = &cb * &self.rows[i][j];
                reduced[j] -= adj;
            }
            obj += &cb * &self.rows[i][self.rhs_col];
        }
        self.cost_row = reduced;
        self.obj = obj;
    }

    fn reduced_cost(&self, j: usize) -> Rat {
        self.cost_row[j].clone()
    }

    fn objective(&self) -> Rat {
        self.obj.clone()
    }

    /// Bland-rule simplex over columns `0..candidate_cols`.
    /// Returns `None` when unbounded.
    fn optimize(&mut self, candidate_cols: usize) -> Option<()> {
        loop {
            let entering = (0..candidate_cols).find(|&j| self.cost_row[j] < Rat::zero());
            let Some(j) = entering else {
                return Some(());
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][j] <= Rat::zero() {
                    continue;
                }
                let ratio = &self.rows[i][self.rhs_col] / &self.rows[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (i, _) = leave?;
            self.pivot(i, j);
        }
    }

    fn pivot(&mut self, i: usize, j: usize) {
        let pv = self.rows[i][j].clone();
        for v in self.rows[i].iter_mut() {
            *v /= &pv;
        }
        for r in 0..self.rows.len() {
            if r == i || self.rows[r][j].is_zero() {
                continue;
            }
            let factor = self.rows[r][j].clone();
            for cidx in 0..self.rows[r].len() {
                let adj = &factor * &self.rows[i][cidx];
                self.rows[r][cidx] -= adj;
            }
        }
        if !self.cost_row[j].is_zero() {
            let factor = self.cost_row[j].clone();
            for cidx in 0..self.cost_row.len() {
                let adj = &factor * &self.rows[i][cidx];
                self.cost_row[cidx] -= adj;
            }
            // entering variable moves by the normalized rhs; the objective
            // changes by its reduced cost times that step
            let adj = &factor * &self.rows[i][self.rhs_col];
            self.obj += adj;
        }
        self.basis[i] = j;
    }

    fn expel_artificials(&mut self, n: usize) {
        for i in 0..self.rows.len() {
            if self.basis[i] < n {
                continue;
            }
            if let Some(j) = (0..n).find(|&j| !self.rows[i][j].is_zero()) {
                self.pivot(i, j);
            }
        }
    }
}
