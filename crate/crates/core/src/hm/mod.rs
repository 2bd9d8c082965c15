//! Weight systems, Hilbert–Mumford pairings and margins, destabilizer
//! certificates and search, and the top-level GIT stability verdict.
//!
//! Stable/Semistable verdicts come only from certified minimal-exponent
//! bounds; Unstable/NotStable only from an exhibited `(g, w)` pair that
//! re-verifies from scratch. The quantifier over all of SL(n+1) is never
//! decided: `Unknown` is a first-class outcome.

use crate::minexp::{ExtRat, MinExpBound};
use crate::newton::{self, barycenter_membership, newton_points, MembershipCertificate};
use crate::parallel;
use crate::polycore::{
    self, hessian_rank_at, jacobian_at, linalg, substitute_linear, LinearChange, Point,
    Polynomial,
};
use crate::{BigInt, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] polycore::Error),
    #[error(transparent)]
    Newton(#[from] newton::Error),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial must be homogeneous")]
    NotHomogeneous,
    #[error("degree must be at least {0}")]
    DegreeTooSmall(u32),
    #[error("operation requires a cubic")]
    NotCubic,
}

pub type Result<T> = std::result::Result<T, Error>;

/// A rational weight vector for one-parameter-subgroup tests, stored
/// unnormalized. Nontrivial means not all entries equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    entries: Vec<Rat>,
}

impl WeightSystem {
    pub fn new(entries: Vec<Rat>) -> Self {
        WeightSystem { entries }
    }

    pub fn from_integers(w: &[BigInt]) -> Self {
        WeightSystem {
            entries: w.iter().map(|c| Rat::from(c.clone())).collect(),
        }
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_nontrivial(&self) -> bool {
        self.entries.windows(2).any(|w| w[0] != w[1])
    }

    pub fn sum(&self) -> Rat {
        self.entries.iter().fold(Rat::zero(), |acc, w| acc + w)
    }

    /// Scale to coprime integer entries, preserving direction.
    pub fn to_coprime_integers(&self) -> Vec<BigInt> {
        linalg::to_coprime_integers(&self.entries)
    }
}

/// `wt_w(f)`: minimum of `w · e` over the support of `f`.
pub fn weight_of(f: &Polynomial, w: &WeightSystem) -> Result<Rat> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if w.len() != f.num_vars() {
        return Err(polycore::Error::DimensionMismatch {
            expected: f.num_vars(),
            got: w.len(),
        }
        .into());
    }
    Ok(f.terms()
        .map(|(m, _)| {
            m.0.iter()
                .zip(w.entries())
                .fold(Rat::zero(), |acc, (&e, wi)| {
                    acc + wi * Rat::from(BigInt::from(e))
                })
        })
        .min()
        .expect("nonzero polynomial"))
}

/// `wt_w(f) - (d/(n+1)) Σ w_i` for homogeneous `f` of degree `d`.
/// Positive margin for some nontrivial weight destabilizes.
pub fn hm_margin(f: &Polynomial, w: &WeightSystem) -> Result<Rat> {
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let wt = weight_of(f, w)?;
    let n1 = f.num_vars() as i64;
    let threshold = Rat::new(BigInt::from(d as i64), BigInt::from(n1)) * w.sum();
    Ok(wt - threshold)
}

/// Strictness class of a destabilizer certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strictness {
    /// Margin strictly positive: violates semistability.
    SemistabilityViolating,
    /// Margin at least zero with a nontrivial weight: violates stability.
    StabilityViolating,
}

/// An exhibited pair `(g, w)` together with the exact margin it achieves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DestabilizerCertificate {
    pub g: LinearChange,
    pub w: WeightSystem,
    pub margin: Rat,
    pub strictness: Strictness,
}

/// Recompute `f ∘ g` and its margin from scratch; `true` iff the stored
/// margin and strictness class are reproduced exactly and `w` is nontrivial.
pub fn verify_destabilizer(f: &Polynomial, cert: &DestabilizerCertificate) -> Result<bool> {
    if !cert.w.is_nontrivial() {
        return Ok(false);
    }
    let composed = substitute_linear(f, &cert.g)?;
    let margin = hm_margin(&composed, &cert.w)?;
    if margin != cert.margin {
        return Ok(false);
    }
    Ok(match cert.strictness {
        Strictness::SemistabilityViolating => margin > Rat::zero(),
        Strictness::StabilityViolating => margin >= Rat::zero(),
    })
}

/// Torus-level verdict in the given coordinates: barycenter membership of
/// the Newton cloud against `(d/(n+1), ..., d/(n+1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorusVerdict {
    /// Convex multipliers witnessing membership: semistable for the diagonal
    /// torus in these coordinates.
    TorusSemistable { lambdas: Vec<(Vec<u32>, Rat)> },
    /// An integer weight separating the cloud from the barycenter.
    TorusUnstable { w: Vec<BigInt> },
}

pub fn torus_verdict(f: &Polynomial) -> Result<TorusVerdict> {
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let cloud = newton_points(f)?;
    let target = barycenter_target(f.num_vars(), d);
    match barycenter_membership(&cloud, &target)? {
        MembershipCertificate::Inside { lambdas } => Ok(TorusVerdict::TorusSemistable { lambdas }),
        MembershipCertificate::Separated { w } => Ok(TorusVerdict::TorusUnstable { w }),
    }
}

pub fn barycenter_target(num_vars: usize, d: u32) -> Vec<Rat> {
    vec![Rat::new(BigInt::from(d as i64), BigInt::from(num_vars as i64)); num_vars]
}

/// Search hints: claimed singular points or coordinate subspaces
/// (given by their vanishing coordinate sets) inside the hypersurface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hint {
    SingularPoint(Point),
    /// The subspace `{x_i = 0 : i in set}`.
    Subspace(Vec<usize>),
}

/// One attempted destabilization strategy, for the search log.
#[derive(Debug, Clone)]
enum Attempt {
    TorusIdentity,
    PointChart(Point),
    SubspaceTemplates(Vec<usize>),
}

/// Try, in order: the torus LP in the given coordinates; for each hinted
/// point, a coordinate change moving it to a coordinate point followed by
/// the torus LP; for each hinted subspace, alignment followed by the
/// `(-1, ..., -1, 2+eps, ..., 2+eps)` style weight templates and a torus LP.
/// Stops at the first certificate that re-verifies, or at the budget.
pub fn destabilizer_search(
    f: &Polynomial,
    hints: &[Hint],
    budget: usize,
) -> Result<(Option<DestabilizerCertificate>, Vec<String>)> {
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if f.num_vars() < 2 {
        return Ok((None, vec!["single variable: nothing to destabilize".into()]));
    }
    let mut attempts = vec![Attempt::TorusIdentity];
    for h in hints {
        match h {
            Hint::SingularPoint(p) => attempts.push(Attempt::PointChart(p.clone())),
            Hint::Subspace(set) => attempts.push(Attempt::SubspaceTemplates(set.clone())),
        }
    }
    attempts.truncate(budget.max(1));

    let log: Vec<String> = attempts
        .iter()
        .map(|a| match a {
            Attempt::TorusIdentity => "torus LP in given coordinates".to_string(),
            Attempt::PointChart(p) => format!("chart move of hinted point ({} coords)", p.dim()),
            Attempt::SubspaceTemplates(s) => {
                format!("aligned subspace templates for vanishing set {s:?}")
            }
        })
        .collect();

    let hit = parallel::first_some_by_index(attempts, |attempt| {
        run_attempt(f, d, attempt).ok().flatten()
    });
    let cert = hit.map(|(_, c)| c);
    if let Some(c) = &cert {
        debug_assert!(verify_destabilizer(f, c).unwrap_or(false));
    }
    Ok((cert, log))
}

fn run_attempt(
    f: &Polynomial,
    d: u32,
    attempt: &Attempt,
) -> Result<Option<DestabilizerCertificate>> {
    match attempt {
        Attempt::TorusIdentity => {
            torus_attempt(f, d, LinearChange::identity(f.num_vars()))
        }
        Attempt::PointChart(p) => {
            let Some(j) = p.coords.iter().rposition(|c| !c.is_zero()) else {
                return Ok(None);
            };
            let g = match LinearChange::coordinate_point_to(&p.coords, j) {
                Ok(g) => g,
                Err(_) => return Ok(None),
            };
            torus_attempt(f, d, g)
        }
        Attempt::SubspaceTemplates(set) => {
            let n1 = f.num_vars();
            if set.is_empty() || set.iter().any(|&i| i >= n1) || set.len() >= n1 {
                return Ok(None);
            }
            let g = align_subspace(n1, set);
            let composed = substitute_linear(f, &g)?;
            // s+1 variables stay free, the last `set.len()` vanish
            let s = n1 - set.len() - 1;
            for squared in [false, true] {
                if let Some(cert) = template_certificate(&composed, d, s, squared)? {
                    return Ok(Some(DestabilizerCertificate { g: g.clone(), ..cert }));
                }
            }
            // fall back to the torus LP in the aligned coordinates
            if let Some(mut cert) = torus_attempt(&composed, d, LinearChange::identity(n1))? {
                cert.g = g;
                return Ok(Some(cert));
            }
            Ok(None)
        }
    }
}

/// Torus LP after the change `g`; wraps a separating weight into a
/// certificate.
fn torus_attempt(
    f: &Polynomial,
    d: u32,
    g: LinearChange,
) -> Result<Option<DestabilizerCertificate>> {
    let composed = if g.dim() == f.num_vars() {
        substitute_linear(f, &g)?
    } else {
        return Ok(None);
    };
    let cloud = newton_points(&composed)?;
    let target = barycenter_target(composed.num_vars(), d);
    match barycenter_membership(&cloud, &target)? {
        MembershipCertificate::Inside { .. } => Ok(None),
        MembershipCertificate::Separated { w } => {
            let ws = WeightSystem::from_integers(&w);
            let margin = hm_margin(&composed, &ws)?;
            debug_assert!(margin > Rat::zero());
            Ok(Some(DestabilizerCertificate {
                g,
                w: ws,
                margin,
                strictness: Strictness::SemistabilityViolating,
            }))
        }
    }
}

/// Permutation sending the complement of `set` to the low indices and `set`
/// to the high indices.
fn align_subspace(n1: usize, set: &[usize]) -> LinearChange {
    let in_set: Vec<bool> = {
        let mut v = vec![false; n1];
        for &i in set {
            v[i] = true;
        }
        v
    };
    let mut perm = vec![0usize; n1];
    let mut low = 0;
    let mut high = n1 - set.len();
    for (i, &flag) in in_set.iter().enumerate() {
        if flag {
            perm[i] = high;
            high += 1;
        } else {
            perm[i] = low;
            low += 1;
        }
    }
    LinearChange::permutation(&perm)
}

/// The proof-template weights for a polynomial inside `(x_{s+1},...,x_n)`
/// (or its square): `w = (-1,...,-1, 2+eps,...)` resp. `(-2,...,-2, 1+eps,...)`
/// with `eps` solved from `Σ w_i = 0`. With a zero-sum weight the margin is
/// just `wt_w`, so membership in the ideal makes it positive.
fn template_certificate(
    aligned: &Polynomial,
    _d: u32,
    s: usize,
    squared: bool,
) -> Result<Option<DestabilizerCertificate>> {
    let n1 = aligned.num_vars();
    let high = n1 - s - 1;
    let set: Vec<usize> = (s + 1..n1).collect();
    let member = if squared {
        in_ideal_squared(aligned, &set)
    } else {
        in_ideal(aligned, &set)
    };
    if !member {
        return Ok(None);
    }
    let (low_w, base) = if squared {
        (Rat::from(BigInt::from(-2)), Rat::from(BigInt::from(1)))
    } else {
        (Rat::from(BigInt::from(-1)), Rat::from(BigInt::from(2)))
    };
    // eps from (s+1)*low + high*(base+eps) = 0
    let eps = -(Rat::from(BigInt::from((s + 1) as i64)) * &low_w)
        / Rat::from(BigInt::from(high as i64))
        - &base;
    if eps <= Rat::zero() {
        return Ok(None);
    }
    let mut w = vec![low_w; s + 1];
    w.extend(std::iter::repeat_n(&base + &eps, high));
    let ws = WeightSystem::new(w);
    debug_assert!(ws.sum().is_zero());
    // scale to coprime integers; the margin scales by the same positive factor
    let ws = WeightSystem::from_integers(&ws.to_coprime_integers());
    let margin = hm_margin(aligned, &ws)?;
    if margin <= Rat::zero() {
        return Ok(None);
    }
    Ok(Some(DestabilizerCertificate {
        g: LinearChange::identity(n1),
        w: ws,
        margin,
        strictness: Strictness::SemistabilityViolating,
    }))
}

fn in_ideal(f: &Polynomial, set: &[usize]) -> bool {
    f.terms()
        .all(|(m, _)| set.iter().any(|&i| m.0[i] > 0))
}

fn in_ideal_squared(f: &Polynomial, set: &[usize]) -> bool {
    f.terms()
        .all(|(m, _)| set.iter().map(|&i| m.0[i]).sum::<u32>() >= 2)
}

/// A syntactic obstruction found on a cubic, with the certificate it
/// converts to when the dimension allows the template weights.
#[derive(Debug, Clone)]
pub struct CubicDiagnostic {
    pub kind: CubicObstructionKind,
    pub certificate: Option<DestabilizerCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CubicObstructionKind {
    /// `f` lies in the ideal of two coordinates: contains a `P^{n-2}`.
    ContainsPlane { vanishing: Vec<usize> },
    /// `f` lies in the square of the ideal of four coordinates: singular
    /// along a hyperplane of a `P^{n-3}`.
    SingularAlongPlane { vanishing: Vec<usize> },
    /// Hessian rank at a hinted singular point; rank 3 in ambient dimension
    /// `n >= 6` is incompatible with semistability near minimal exponent
    /// below 7/4 but is reported as information only.
    HessianRank {
        point: Point,
        rank: usize,
        rank_three_flag: bool,
    },
}

/// Scan a homogeneous cubic for the syntactic sufficient patterns and
/// report Hessian ranks at hinted singular points. The containment
/// patterns obstruct semistability only from ambient dimension 6 on (a
/// cubic surface contains lines without being unstable), so they are
/// reported only there.
pub fn cubic_obstructions(f: &Polynomial, hints: &[Hint]) -> Result<Vec<CubicDiagnostic>> {
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if d != 3 {
        return Err(Error::NotCubic);
    }
    let n1 = f.num_vars();
    let n = n1 as i64 - 1;
    let mut out = Vec::new();

    if n >= 6 {
        // f in (x_i, x_j): contains the coordinate P^{n-2}
        for i in 0..n1 {
            for j in i + 1..n1 {
                let set = vec![i, j];
                if in_ideal(f, &set) {
                    let certificate = subspace_certificate(f, d, &set, false)?;
                    out.push(CubicDiagnostic {
                        kind: CubicObstructionKind::ContainsPlane { vanishing: set },
                        certificate,
                    });
                }
            }
        }
        // f in (four coordinates)^2: singular along a hyperplane of a P^{n-3}
        for set in four_subsets(n1) {
            if in_ideal_squared(f, &set) {
                let certificate = subspace_certificate(f, d, &set, true)?;
                out.push(CubicDiagnostic {
                    kind: CubicObstructionKind::SingularAlongPlane { vanishing: set },
                    certificate,
                });
            }
        }
    }
    // Hessian ranks at hinted singular points
    for h in hints {
        let Hint::SingularPoint(p) = h else { continue };
        if let Some((rank, singular)) = chart_hessian_rank(f, p)? {
            if singular {
                out.push(CubicDiagnostic {
                    kind: CubicObstructionKind::HessianRank {
                        point: p.clone(),
                        rank,
                        rank_three_flag: rank == 3 && n >= 6,
                    },
                    certificate: None,
                });
            }
        }
    }
    Ok(out)
}

fn subspace_certificate(
    f: &Polynomial,
    d: u32,
    set: &[usize],
    squared: bool,
) -> Result<Option<DestabilizerCertificate>> {
    let n1 = f.num_vars();
    let g = align_subspace(n1, set);
    let composed = substitute_linear(f, &g)?;
    let s = n1 - set.len() - 1;
    Ok(template_certificate(&composed, d, s, squared)?.map(|cert| DestabilizerCertificate {
        g,
        ..cert
    }))
}

fn four_subsets(n1: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 0..n1 {
        for b in a + 1..n1 {
            for c in b + 1..n1 {
                for e in c + 1..n1 {
                    out.push(vec![a, b, c, e]);
                }
            }
        }
    }
    out
}

/// Dehomogenize at the last nonzero coordinate of a projective point and
/// return the Hessian rank of the chart equation there, plus whether the
/// point is singular.
fn chart_hessian_rank(f: &Polynomial, p: &Point) -> Result<Option<(usize, bool)>> {
    let n1 = f.num_vars();
    if n1 < 2 || p.coords.len() != n1 {
        return Ok(None);
    }
    let Some(chart) = p.coords.iter().rposition(|c| !c.is_zero()) else {
        return Ok(None);
    };
    let (chart_poly, old_to_new) = polycore::dehomogenize(f, chart)?;
    let pivot = p.coords[chart].clone();
    let mut affine = vec![Rat::zero(); n1 - 1];
    for (old, slot) in old_to_new.iter().enumerate() {
        if let Some(new) = slot {
            affine[*new] = &p.coords[old] / &pivot;
        }
    }
    let apt = Point::affine(affine);
    let (value, grad) = jacobian_at(&chart_poly, &apt)?;
    let singular = value.is_zero() && grad.iter().all(|c| c.is_zero());
    let rank = hessian_rank_at(&chart_poly, &apt)?;
    Ok(Some((rank, singular)))
}

/// Informational consequence of semistability for cubics: the uniform
/// lower bound `max{4/3, (n+1)/9}` and, for `n >= 6`, `5/3` with
/// terminal singularities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicInference {
    pub alpha_lower: Rat,
    pub terminal: bool,
}

pub fn cubic_semistable_inference(n1: usize) -> CubicInference {
    let n = n1 as i64 - 1;
    if n >= 6 {
        return CubicInference {
            alpha_lower: Rat::new(BigInt::from(5), BigInt::from(3)),
            terminal: true,
        };
    }
    let four_thirds = Rat::new(BigInt::from(4), BigInt::from(3));
    let ratio = Rat::new(BigInt::from(n + 1), BigInt::from(9));
    CubicInference {
        alpha_lower: if ratio > four_thirds { ratio } else { four_thirds },
        terminal: false,
    }
}

/// The top-level verdict.
#[derive(Debug, Clone)]
pub enum StabilityVerdict {
    /// Certified by `alpha > (n+1)/d`.
    Stable { alpha_lower: ExtRat },
    /// Certified by exact `alpha = (n+1)/d`.
    Semistable { alpha_exact: Rat },
    /// A verified certificate with margin exactly zero.
    NotStable { certificate: DestabilizerCertificate },
    /// A verified certificate with positive margin.
    Unstable { certificate: DestabilizerCertificate },
    /// Neither side decided; carries the bound and the attempts made.
    Unknown {
        bound: Box<MinExpBound>,
        search_log: Vec<String>,
    },
}

impl StabilityVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            StabilityVerdict::Stable { .. } => "Stable",
            StabilityVerdict::Semistable { .. } => "Semistable",
            StabilityVerdict::NotStable { .. } => "NotStable",
            StabilityVerdict::Unstable { .. } => "Unstable",
            StabilityVerdict::Unknown { .. } => "Unknown",
        }
    }
}

/// Combine the certified minimal-exponent bound with destabilization
/// evidence: Stable when `lo > (n+1)/d`; Semistable when the bound is exact
/// at the threshold; Unstable/NotStable from a verified certificate
/// (including the cubic obstruction scan for `d = 3`); otherwise Unknown.
pub fn stability_verdict(
    f: &Polynomial,
    bound: &MinExpBound,
    hints: &[Hint],
    budget: usize,
) -> Result<StabilityVerdict> {
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if d < 3 {
        return Err(Error::DegreeTooSmall(3));
    }
    let n1 = f.num_vars() as i64;
    let threshold = ExtRat::Finite(Rat::new(BigInt::from(n1), BigInt::from(d as i64)));

    if bound.lo > threshold {
        return Ok(StabilityVerdict::Stable {
            alpha_lower: bound.lo.clone(),
        });
    }
    if bound.is_exact() && bound.lo == threshold {
        let alpha = bound
            .lo
            .as_finite()
            .expect("threshold is finite")
            .clone();
        return Ok(StabilityVerdict::Semistable { alpha_exact: alpha });
    }

    let mut log = Vec::new();
    let mut found: Option<DestabilizerCertificate> = None;
    if d == 3 {
        log.push("cubic obstruction scan".to_string());
        for diag in cubic_obstructions(f, hints)? {
            if let Some(cert) = diag.certificate {
                found = Some(cert);
                break;
            }
        }
    }
    if found.is_none() {
        let (cert, search_log) = destabilizer_search(f, hints, budget)?;
        log.extend(search_log);
        found = cert;
    }
    match found {
        Some(certificate) => {
            if certificate.margin > Rat::zero() {
                Ok(StabilityVerdict::Unstable { certificate })
            } else {
                Ok(StabilityVerdict::NotStable { certificate })
            }
        }
        None => Ok(StabilityVerdict::Unknown {
            bound: Box::new(bound.clone()),
            search_log: log,
        }),
    }
}
