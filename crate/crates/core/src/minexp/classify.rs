//! Singularity classification from a certified minimal-exponent interval:
//! highest Du Bois / rational levels, liminal level, ADE and terminality
//! flags, and a minimal-log-discrepancy lower bound.

use super::{ExtRat, MinExpBound};
use crate::{rat, rat_int, BigInt, Rat};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// A possibly-absent, possibly-unbounded level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Level {
    None,
    Finite(u32),
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityClass {
    /// Largest `m` with `alpha >= m+1` certified by the lower bound.
    pub m_du_bois: Level,
    /// Largest `m` with `alpha > m+1` certified by the lower bound.
    pub m_rational: Level,
    /// `m` when the exact value is the integer `m+1`.
    pub liminal_level: Option<u32>,
    /// `alpha > e/2` with `e` the hypersurface dimension; `None` when the
    /// interval straddles the threshold.
    pub ade: Option<bool>,
    /// `alpha > 3/2`.
    pub terminal: Option<bool>,
    /// Largest `k` with `alpha > 1 + k/2`, certifying `mld >= k+1`.
    pub mld_lower: Level,
}

pub fn classify(bound: &MinExpBound, ambient_vars: usize) -> SingularityClass {
    let e = ambient_vars as i64 - 1; // hypersurface dimension of the germ
    let half_dim = rat(e, 2);
    let three_half = rat(3, 2);

    let m_du_bois = match &bound.lo {
        ExtRat::Infinity => Level::Unbounded,
        ExtRat::Finite(lo) => {
            if lo < &rat_int(1) {
                Level::None
            } else {
                Level::Finite(largest_m_with_ge(lo))
            }
        }
    };
    let m_rational = match &bound.lo {
        ExtRat::Infinity => Level::Unbounded,
        ExtRat::Finite(lo) => {
            if lo <= &rat_int(1) {
                Level::None
            } else {
                Level::Finite(largest_m_with_gt(lo))
            }
        }
    };
    let liminal_level = bound.exact_value().and_then(|v| match v {
        ExtRat::Finite(v) if v.is_integer() && v >= &rat_int(1) => {
            (v.to_integer() - BigInt::from(1)).to_u32()
        }
        _ => None,
    });
    let ade = threshold_flag(bound, &half_dim);
    let terminal = threshold_flag(bound, &three_half);
    let mld_lower = match &bound.lo {
        ExtRat::Infinity => Level::Unbounded,
        ExtRat::Finite(lo) => {
            if lo <= &rat_int(1) {
                Level::None
            } else {
                // largest k with k < 2(lo - 1)
                let t = rat_int(2) * (lo - rat_int(1));
                let k = if t.is_integer() {
                    t.to_integer() - BigInt::from(1)
                } else {
                    t.floor().to_integer()
                };
                k.to_u32().map(Level::Finite).unwrap_or(Level::None)
            }
        }
    };
    SingularityClass {
        m_du_bois,
        m_rational,
        liminal_level,
        ade,
        terminal,
        mld_lower,
    }
}

/// `Some(alpha > threshold)` when the interval decides it, `None` otherwise.
fn threshold_flag(bound: &MinExpBound, threshold: &Rat) -> Option<bool> {
    let t = ExtRat::Finite(threshold.clone());
    if let Some(v) = bound.exact_value() {
        return Some(*v > t);
    }
    if bound.lo > t {
        Some(true)
    } else if bound.hi < t {
        Some(false)
    } else {
        None
    }
}

/// Largest `m >= 0` with `lo >= m+1`; requires `lo >= 1`.
fn largest_m_with_ge(lo: &Rat) -> u32 {
    (lo - rat_int(1)).floor().to_integer().to_u32().unwrap_or(0)
}

/// Largest `m >= 0` with `lo > m+1`; requires `lo > 1`.
fn largest_m_with_gt(lo: &Rat) -> u32 {
    let t = lo - rat_int(1);
    let m = if t.is_integer() {
        t.to_integer() - BigInt::from(1)
    } else {
        t.floor().to_integer()
    };
    m.to_u32().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minexp::{DerivationTrace, RuleId};

    fn exact(v: Rat) -> MinExpBound {
        MinExpBound::from_trace(DerivationTrace::exact_leaf(
            "test",
            RuleId::MonomialPower,
            ExtRat::Finite(v),
        ))
    }

    fn interval(lo: Rat, hi: Rat) -> MinExpBound {
        MinExpBound::from_trace(DerivationTrace::leaf(
            "test",
            RuleId::SingDimLower,
            ExtRat::Finite(lo),
            ExtRat::Finite(hi),
        ))
    }

    #[test]
    fn exact_three_in_dimension_seven() {
        let c = classify(&exact(rat_int(3)), 9);
        assert_eq!(c.m_du_bois, Level::Finite(2));
        assert_eq!(c.m_rational, Level::Finite(1));
        assert_eq!(c.liminal_level, Some(2));
    }

    #[test]
    fn a5_threefold_point() {
        let c = classify(&exact(rat(5, 3)), 4);
        assert_eq!(c.ade, Some(true)); // 5/3 > 3/2
        assert_eq!(c.terminal, Some(true));
        assert_eq!(c.mld_lower, Level::Finite(1));
        assert_eq!(c.liminal_level, None);
    }

    #[test]
    fn straddling_interval_is_unknown() {
        let c = classify(&interval(rat(4, 3), rat(3, 2)), 4);
        assert_eq!(c.ade, None);
        assert_eq!(c.terminal, None);
    }

    #[test]
    fn exact_boundary_decides() {
        // alpha = 3/2 exactly in dimension 3: not ADE, not terminal
        let c = classify(&exact(rat(3, 2)), 4);
        assert_eq!(c.ade, Some(false));
        assert_eq!(c.terminal, Some(false));
    }

    #[test]
    fn smooth_is_unbounded() {
        let b = MinExpBound::smooth("smooth");
        let c = classify(&b, 5);
        assert_eq!(c.m_du_bois, Level::Unbounded);
        assert_eq!(c.ade, Some(true));
        assert_eq!(c.mld_lower, Level::Unbounded);
    }

    #[test]
    fn du_bois_cutoffs() {
        let c = classify(&exact(rat_int(1)), 3);
        assert_eq!(c.m_du_bois, Level::Finite(0));
        assert_eq!(c.m_rational, Level::None);
        assert_eq!(c.liminal_level, Some(0));
    }
}
