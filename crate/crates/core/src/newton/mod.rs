//! Newton polytope extraction and exact LP certificates for barycenter
//! membership (torus semistability) and separating weights (torus
//! destabilization).
//!
//! `Inside` certificates carry convex multipliers that recombine to the
//! target exactly; `Separated` certificates carry an integer weight vector
//! with strictly positive margin. Both are checkable without re-running the
//! solver.

pub mod simplex;

use crate::polycore::{linalg, Polynomial};
use crate::{BigInt, Rat};
use num_traits::{One, Zero};
use simplex::{solve_min, LpOutcome};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty exponent cloud")]
    EmptyCloud,
    #[error("zero polynomial has no Newton points")]
    ZeroPolynomial,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("barycenter lies inside the hull; no separating weight exists")]
    InsideInstance,
}

pub type Result<T> = std::result::Result<T, Error>;

/// The exact support of a polynomial: deduplicated exponent vectors in
/// graded-lex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentCloud {
    pub points: Vec<Vec<u32>>,
    pub ambient_dim: usize,
}

impl ExponentCloud {
    pub fn new(points: Vec<Vec<u32>>, ambient_dim: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyCloud);
        }
        if points.iter().any(|p| p.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                got: points.iter().find(|p| p.len() != ambient_dim).unwrap().len(),
            });
        }
        let mut points = points;
        points.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| a.cmp(b))
        });
        points.dedup();
        Ok(ExponentCloud {
            points,
            ambient_dim,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Support extraction.
pub fn newton_points(f: &Polynomial) -> Result<ExponentCloud> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let points = f.terms().map(|(m, _)| m.0.clone()).collect();
    ExponentCloud::new(points, f.num_vars())
}

/// Either a convex combination hitting the target or a separating weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipCertificate {
    Inside {
        /// `(point, lambda)` pairs; lambdas are >= 0, sum to 1 and recombine
        /// to the target exactly.
        lambdas: Vec<(Vec<u32>, Rat)>,
    },
    Separated {
        /// Coprime integer weight with `min_v w·v > w·target`.
        w: Vec<BigInt>,
    },
}

/// Exact phase-1 simplex on `{λ >= 0, Σλ = 1, Σλ·v = target}`.
///
/// Feasible instances return the multipliers; infeasible ones return the
/// separating weight read off the Farkas certificate of the final tableau,
/// scaled to coprime integers oriented so the margin is positive.
pub fn barycenter_membership(
    cloud: &ExponentCloud,
    target: &[Rat],
) -> Result<MembershipCertificate> {
    let dim = cloud.ambient_dim;
    if target.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: target.len(),
        });
    }
    let npts = cloud.len();
    // rows: one per coordinate, then the Σλ = 1 row
    let mut a = vec![vec![Rat::zero(); npts]; dim + 1];
    for (i, p) in cloud.points.iter().enumerate() {
        for (r, &e) in p.iter().enumerate() {
            a[r][i] = Rat::from(BigInt::from(e));
        }
        a[dim][i] = Rat::one();
    }
    let mut b: Vec<Rat> = target.to_vec();
    b.push(Rat::one());
    let c = vec![Rat::zero(); npts];

    match solve_min(&c, &a, &b) {
        LpOutcome::Optimal { x, .. } => {
            let lambdas = cloud
                .points
                .iter()
                .cloned()
                .zip(x)
                .collect();
            Ok(MembershipCertificate::Inside { lambdas })
        }
        LpOutcome::Infeasible { farkas } => {
            // farkas = (u, β) with u·v + β <= 0 on the cloud and u·t + β > 0;
            // w = -u then satisfies min w·v >= β > w·t.
            let u = &farkas[..dim];
            let w_rat: Vec<Rat> = u.iter().map(|c| -c.clone()).collect();
            let w = linalg::to_coprime_integers(&w_rat);
            debug_assert!(
                verify_separated(&w, cloud, target),
                "Farkas weight must separate"
            );
            Ok(MembershipCertificate::Separated { w })
        }
        LpOutcome::Unbounded => unreachable!("feasibility problem has zero objective"),
    }
}

/// Margin of an integer weight against a cloud: `min_v w·v - w·target`.
pub fn separation_margin(w: &[BigInt], cloud: &ExponentCloud, target: &[Rat]) -> Rat {
    let wv_min = cloud
        .points
        .iter()
        .map(|p| dot_int(w, p))
        .min()
        .expect("cloud is nonempty");
    let wt = w
        .iter()
        .zip(target)
        .fold(Rat::zero(), |acc, (wi, ti)| acc + Rat::from(wi.clone()) * ti);
    Rat::from(wv_min) - wt
}

fn dot_int(w: &[BigInt], p: &[u32]) -> BigInt {
    w.iter()
        .zip(p)
        .fold(BigInt::zero(), |acc, (wi, &e)| acc + wi * BigInt::from(e))
}

/// Re-check a certificate from scratch.
pub fn verify_membership(
    cert: &MembershipCertificate,
    cloud: &ExponentCloud,
    target: &[Rat],
) -> bool {
    match cert {
        MembershipCertificate::Inside { lambdas } => {
            let mut sum = Rat::zero();
            let mut combo = vec![Rat::zero(); cloud.ambient_dim];
            for (p, l) in lambdas {
                if l < &Rat::zero() || !cloud.points.contains(p) {
                    return false;
                }
                sum += l;
                for (r, &e) in p.iter().enumerate() {
                    combo[r] += l * Rat::from(BigInt::from(e));
                }
            }
            sum == Rat::one() && combo.as_slice() == target
        }
        MembershipCertificate::Separated { w } => verify_separated(w, cloud, target),
    }
}

fn verify_separated(w: &[BigInt], cloud: &ExponentCloud, target: &[Rat]) -> bool {
    w.len() == cloud.ambient_dim
        && !w.iter().all(|c| c.is_zero())
        && separation_margin(w, cloud, target) > Rat::zero()
}

/// Maximize `min_v w·v - w·target` over `Σ|w_i| <= ambient_dim`, exactly,
/// via the epigraph reformulation. Returns an optimal vertex cleared to
/// coprime integers (shifted to Σw = 0 when the cloud is homogeneous, which
/// leaves the margin unchanged) together with the margin of the returned
/// weight.
pub fn separating_weight_maximal(
    cloud: &ExponentCloud,
    target: &[Rat],
) -> Result<(Vec<BigInt>, Rat)> {
    let dim = cloud.ambient_dim;
    if target.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: target.len(),
        });
    }
    let npts = cloud.len();
    // variables: p_0..p_{dim-1}, q_0..q_{dim-1}, t+, t-, s_v (per point), s0
    let nvars = 2 * dim + 2 + npts + 1;
    let (tp, tm) = (2 * dim, 2 * dim + 1);
    let s_base = 2 * dim + 2;
    let s0 = s_base + npts;

    let mut a = Vec::with_capacity(npts + 1);
    let mut b = Vec::with_capacity(npts + 1);
    for (vi, p) in cloud.points.iter().enumerate() {
        // t - w·v + s_v = 0
        let mut row = vec![Rat::zero(); nvars];
        row[tp] = Rat::one();
        row[tm] = -Rat::one();
        for (r, &e) in p.iter().enumerate() {
            let ev = Rat::from(BigInt::from(e));
            row[r] = -ev.clone();
            row[dim + r] = ev;
        }
        row[s_base + vi] = Rat::one();
        a.push(row);
        b.push(Rat::zero());
    }
    // Σ(p + q) + s0 = dim
    let mut norm_row = vec![Rat::zero(); nvars];
    for r in 0..2 * dim {
        norm_row[r] = Rat::one();
    }
    norm_row[s0] = Rat::one();
    a.push(norm_row);
    b.push(Rat::from(BigInt::from(dim as i64)));

    // maximize t - w·target  ==  minimize -(t+ - t-) + (p - q)·target
    let mut c = vec![Rat::zero(); nvars];
    c[tp] = -Rat::one();
    c[tm] = Rat::one();
    for (r, t) in target.iter().enumerate() {
        c[r] = t.clone();
        c[dim + r] = -t.clone();
    }

    match solve_min(&c, &a, &b) {
        LpOutcome::Optimal { x, value } => {
            let margin = -value;
            if margin <= Rat::zero() {
                return Err(Error::InsideInstance);
            }
            let mut w_rat: Vec<Rat> = (0..dim).map(|r| &x[r] - &x[dim + r]).collect();
            if is_homogeneous_instance(cloud, target) {
                let shift = w_rat.iter().fold(Rat::zero(), |acc, v| acc + v)
                    / Rat::from(BigInt::from(dim as i64));
                for v in w_rat.iter_mut() {
                    *v -= &shift;
                }
            }
            let w = linalg::to_coprime_integers(&w_rat);
            let margin = separation_margin(&w, cloud, target);
            debug_assert!(margin > Rat::zero());
            Ok((w, margin))
        }
        LpOutcome::Infeasible { .. } | LpOutcome::Unbounded => {
            unreachable!("the epigraph program is feasible and bounded")
        }
    }
}

/// All cloud points share one coordinate sum which matches the target sum;
/// margins are then invariant under shifts `w -> w + α·1`.
fn is_homogeneous_instance(cloud: &ExponentCloud, target: &[Rat]) -> bool {
    let d: u32 = cloud.points[0].iter().sum();
    if !cloud.points.iter().all(|p| p.iter().sum::<u32>() == d) {
        return false;
    }
    let tsum = target.iter().fold(Rat::zero(), |acc, t| acc + t);
    tsum == Rat::from(BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_polynomial;
    use crate::{rat, rat_int};

    #[test]
    fn newton_points_examples() {
        let f = parse_polynomial("x0^3 + x1^3", 2).unwrap();
        let cloud = newton_points(&f).unwrap();
        assert_eq!(cloud.points, vec![vec![0, 3], vec![3, 0]]);

        let f = parse_polynomial("x0*x1*x2", 3).unwrap();
        assert_eq!(newton_points(&f).unwrap().points, vec![vec![1, 1, 1]]);

        let f = parse_polynomial("2*x0^2*x1 - x0^2*x1", 2).unwrap();
        assert_eq!(newton_points(&f).unwrap().points, vec![vec![2, 1]]);
    }

    #[test]
    fn midpoint_is_inside() {
        let cloud = ExponentCloud::new(vec![vec![3, 0], vec![0, 3]], 2).unwrap();
        let target = vec![rat(3, 2), rat(3, 2)];
        match barycenter_membership(&cloud, &target).unwrap() {
            MembershipCertificate::Inside { lambdas } => {
                for (_, l) in &lambdas {
                    assert_eq!(*l, rat(1, 2));
                }
            }
            other => panic!("expected inside, got {other:?}"),
        }
    }

    #[test]
    fn single_point_separates() {
        let cloud = ExponentCloud::new(vec![vec![2, 1]], 2).unwrap();
        let target = vec![rat(3, 2), rat(3, 2)];
        match barycenter_membership(&cloud, &target).unwrap() {
            MembershipCertificate::Separated { w } => {
                assert!(verify_separated(&w, &cloud, &target));
                assert_eq!(w, vec![BigInt::from(1), BigInt::from(-1)]);
            }
            other => panic!("expected separated, got {other:?}"),
        }
    }

    #[test]
    fn symmetric_triple_inside() {
        let f = parse_polynomial("x0*x1*x2 + x3*x4*x5 + x6*x7*x8", 9).unwrap();
        let cloud = newton_points(&f).unwrap();
        let target = vec![rat(1, 3); 9];
        match barycenter_membership(&cloud, &target).unwrap() {
            MembershipCertificate::Inside { lambdas } => {
                for (_, l) in &lambdas {
                    assert_eq!(*l, rat(1, 3));
                }
            }
            other => panic!("expected inside, got {other:?}"),
        }
    }

    #[test]
    fn maximal_weight_on_single_point() {
        let cloud = ExponentCloud::new(vec![vec![2, 1]], 2).unwrap();
        let target = vec![rat(3, 2), rat(3, 2)];
        let (w, margin) = separating_weight_maximal(&cloud, &target).unwrap();
        assert_eq!(w, vec![BigInt::from(1), BigInt::from(-1)]);
        assert_eq!(margin, rat_int(1));
    }

    #[test]
    fn maximal_weight_rejects_inside() {
        let cloud = ExponentCloud::new(vec![vec![3, 0], vec![0, 3]], 2).unwrap();
        let target = vec![rat(3, 2), rat(3, 2)];
        assert_eq!(
            separating_weight_maximal(&cloud, &target),
            Err(Error::InsideInstance)
        );
    }
}
