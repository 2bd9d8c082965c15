//! Certified interval computation of minimal exponents with derivation
//! traces, plus higher-singularity (Du Bois / rational / liminal), ADE and
//! terminality classification.
//!
//! Exact values are produced only when the derivation bottoms out in closed
//! base cases (monomial germs, quadratic forms, disjoint-variable sums, the
//! cone rule with combinatorially enumerable singular strata). Everything
//! else degrades to honest two-sided bounds.

mod classify;
mod engine;

pub use classify::{classify, Level, SingularityClass};
pub use engine::{
    hyperplane_restriction_probe, liminal_locus_structured, minexp_cone, minexp_cone_with_hints,
    minexp_global_projective, minexp_local, structural_bounds, weight_upper_bound, Hints,
    ProbeOutcome, ProbeReport, SingDimHint,
};

use crate::polycore;
use crate::Rat;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] polycore::Error),
    #[error("f does not vanish at the given point")]
    NotOnHypersurface,
    #[error("the hypersurface is smooth at the point; the weight bound requires a singular point")]
    SmoothPoint,
    #[error("weight must be nonnegative and nonzero")]
    InvalidWeight,
    #[error("weight gives no information here: wt_w vanishes")]
    UninformativeWeight,
    #[error("polynomial must be homogeneous")]
    NotHomogeneous,
    #[error("degree must be at least {0}")]
    DegreeTooSmall(u32),
    #[error("input is outside the structured class")]
    OutOfClass,
    #[error("global minimal exponent is not exact")]
    NotExact,
    #[error("candidate cell enumeration exceeded the budget")]
    TooManyCells,
    #[error("bounds are inconsistent; some input assertion must be wrong")]
    InconsistentBounds,
}

pub type Result<T> = std::result::Result<T, Error>;

/// A positive rational extended by `+inf` (the smooth-point convention).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtRat {
    Finite(Rat),
    Infinity,
}

impl ExtRat {
    pub fn finite(v: Rat) -> Self {
        ExtRat::Finite(v)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRat::Infinity)
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(v) => Some(v),
            ExtRat::Infinity => None,
        }
    }

    pub fn add(&self, other: &ExtRat) -> ExtRat {
        match (self, other) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite(a + b),
            _ => ExtRat::Infinity,
        }
    }

    pub fn min_with(&self, other: &ExtRat) -> ExtRat {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn max_with(&self, other: &ExtRat) -> ExtRat {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRat::Infinity, ExtRat::Infinity) => Ordering::Equal,
            (ExtRat::Infinity, _) => Ordering::Greater,
            (_, ExtRat::Infinity) => Ordering::Less,
            (ExtRat::Finite(a), ExtRat::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Finite(v) => write!(f, "{v}"),
            ExtRat::Infinity => write!(f, "inf"),
        }
    }
}

impl From<Rat> for ExtRat {
    fn from(v: Rat) -> Self {
        ExtRat::Finite(v)
    }
}

/// Rules a derivation step may cite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RuleId {
    Smooth,
    MonomialPower,
    NormalCrossing,
    ThomSebastiani,
    ConeFormula,
    GlobalMin,
    WeightUpper,
    MultiplicityUpper,
    MultiplicityLower,
    SingDimLower,
    HyperplaneProbe,
}

/// How the children of a trace node recombine into its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Combine {
    Leaf,
    Sum,
    Min,
    Intersect,
}

/// A replayable derivation tree: each node names the rule it cites, how its
/// children combine, and the interval it certifies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTrace {
    pub name: String,
    pub rule: RuleId,
    pub combine: Combine,
    pub lo: ExtRat,
    pub hi: ExtRat,
    pub children: Vec<DerivationTrace>,
}

impl DerivationTrace {
    pub fn leaf(name: impl Into<String>, rule: RuleId, lo: ExtRat, hi: ExtRat) -> Self {
        DerivationTrace {
            name: name.into(),
            rule,
            combine: Combine::Leaf,
            lo,
            hi,
            children: Vec::new(),
        }
    }

    pub fn exact_leaf(name: impl Into<String>, rule: RuleId, v: ExtRat) -> Self {
        Self::leaf(name, rule, v.clone(), v)
    }

    pub fn node(
        name: impl Into<String>,
        rule: RuleId,
        combine: Combine,
        children: Vec<DerivationTrace>,
    ) -> Self {
        let (lo, hi) = combine_children(combine, &children);
        DerivationTrace {
            name: name.into(),
            rule,
            combine,
            lo,
            hi,
            children,
        }
    }
}

fn combine_children(combine: Combine, children: &[DerivationTrace]) -> (ExtRat, ExtRat) {
    assert!(!children.is_empty(), "combination node needs children");
    let mut lo = children[0].lo.clone();
    let mut hi = children[0].hi.clone();
    for c in &children[1..] {
        match combine {
            Combine::Leaf => unreachable!("leaves have no children"),
            Combine::Sum => {
                lo = lo.add(&c.lo);
                hi = hi.add(&c.hi);
            }
            Combine::Min => {
                lo = lo.min_with(&c.lo);
                hi = hi.min_with(&c.hi);
            }
            Combine::Intersect => {
                lo = lo.max_with(&c.lo);
                hi = hi.min_with(&c.hi);
            }
        }
    }
    (lo, hi)
}

/// Re-execute the trace: every internal node must reproduce its interval
/// from its children.
pub fn replay(trace: &DerivationTrace) -> bool {
    if trace.combine == Combine::Leaf {
        return trace.children.is_empty() && trace.lo <= trace.hi;
    }
    if trace.children.is_empty() {
        return false;
    }
    let (lo, hi) = combine_children(trace.combine, &trace.children);
    lo == trace.lo && hi == trace.hi && trace.children.iter().all(replay)
}

/// Certified interval `[lo, hi]` for a minimal exponent, `hi` possibly
/// infinite, with the derivation that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinExpBound {
    pub lo: ExtRat,
    pub hi: ExtRat,
    pub trace: DerivationTrace,
}

impl MinExpBound {
    pub fn from_trace(trace: DerivationTrace) -> Self {
        let bound = MinExpBound {
            lo: trace.lo.clone(),
            hi: trace.hi.clone(),
            trace,
        };
        bound.assert_valid();
        bound
    }

    fn assert_valid(&self) {
        if let ExtRat::Finite(lo) = &self.lo {
            assert!(lo > &Rat::zero(), "minimal exponents are positive");
        }
        assert!(self.lo <= self.hi, "interval is ordered");
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn exact_value(&self) -> Option<&ExtRat> {
        if self.is_exact() {
            Some(&self.lo)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &ExtRat) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    /// Smooth point: exact `+inf`.
    pub fn smooth(name: impl Into<String>) -> Self {
        Self::from_trace(DerivationTrace::exact_leaf(name, RuleId::Smooth, ExtRat::Infinity))
    }
}

impl fmt::Display for MinExpBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn ext_rat_ordering_and_arithmetic() {
        let two = ExtRat::Finite(rat(2, 1));
        let half = ExtRat::Finite(rat(1, 2));
        assert!(half < two);
        assert!(two < ExtRat::Infinity);
        assert_eq!(half.add(&two), ExtRat::Finite(rat(5, 2)));
        assert_eq!(half.add(&ExtRat::Infinity), ExtRat::Infinity);
        assert_eq!(ExtRat::Infinity.min_with(&two), two);
    }

    #[test]
    fn replay_detects_tampering() {
        let a = DerivationTrace::exact_leaf("x^2", RuleId::MonomialPower, ExtRat::Finite(rat(1, 2)));
        let b = DerivationTrace::exact_leaf("x^3", RuleId::MonomialPower, ExtRat::Finite(rat(1, 3)));
        let mut sum = DerivationTrace::node("split", RuleId::ThomSebastiani, Combine::Sum, vec![a, b]);
        assert!(replay(&sum));
        sum.lo = ExtRat::Finite(rat(1, 1));
        assert!(!replay(&sum));
    }
}
