//! Orchestration: parse the input, run the requested analyses in dependency
//! order (minimal exponents feed the GIT verdict; the structured liminal
//! locus feeds the Hodge side), and assemble one report. Independent
//! sections fan out over worker threads and are merged by section name.

use crate::report::*;
use hyperstab_core::hm::{
    self, cubic_obstructions, cubic_semistable_inference, stability_verdict, torus_verdict,
    verify_destabilizer, CubicObstructionKind, DestabilizerCertificate, Hint, StabilityVerdict,
    TorusVerdict,
};
use hyperstab_core::hodge::{
    arrangement_cohomology, core_of_blocks, cy_level, hodge_du_bois_row, maximal_degeneration_test,
    nilpotency_index, smooth_middle_hodge, Arrangement, BlockDescriptor, CoreDescriptor,
};
use hyperstab_core::minexp::{
    classify, hyperplane_restriction_probe, liminal_locus_structured, minexp_cone_with_hints,
    minexp_global_projective, minexp_local, replay, ExtRat, Hints as MinexpHints, MinExpBound,
    ProbeOutcome, SingDimHint,
};
use hyperstab_core::polycore::{parse_polynomial, Point, Polynomial};
use hyperstab_core::{parallel, rat_int, Rat};

#[derive(Debug, Clone, Default)]
pub struct HintInput {
    /// Projective points, each with `num_vars` rational coordinates.
    pub points: Vec<Vec<Rat>>,
    /// Coordinate subspaces, each given by its vanishing variable indices.
    pub subspaces: Vec<Vec<usize>>,
    /// Claimed dimension of the singular locus; negative means empty.
    pub sing_dim: Option<i64>,
}

#[derive(Debug, Clone)]
pub struct AnalysisRequest {
    pub polynomial: String,
    pub num_vars: usize,
    pub minexp: bool,
    pub git: bool,
    pub hodge: bool,
    pub degeneration: bool,
    pub hints: HintInput,
    pub seed: u64,
    pub budget: usize,
    pub with_trace: bool,
}

impl AnalysisRequest {
    pub fn all(polynomial: String, num_vars: usize) -> Self {
        AnalysisRequest {
            polynomial,
            num_vars,
            minexp: true,
            git: true,
            hodge: true,
            degeneration: true,
            hints: HintInput::default(),
            seed: 0,
            budget: 64,
            with_trace: false,
        }
    }
}

/// Failure modes mapped to exit codes by the frontend: `Parse` -> 2,
/// `Internal` -> 3, `Input` -> 2.
#[derive(Debug)]
pub enum RunFailure {
    Parse { pos: usize, msg: String },
    Input(String),
    Internal(String),
}

impl std::fmt::Display for RunFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunFailure::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
            RunFailure::Input(msg) => write!(f, "invalid input: {msg}"),
            RunFailure::Internal(msg) => write!(f, "internal inconsistency: {msg}"),
        }
    }
}

pub fn run(req: &AnalysisRequest) -> Result<Report, RunFailure> {
    let f = parse_input(&req.polynomial, req.num_vars)?;
    let degree = f.homogeneous_degree();
    let homogeneous = degree.is_some();

    let minexp_hints = build_minexp_hints(&req.hints, req.num_vars)?;
    let hm_hints = build_hm_hints(&req.hints, req.num_vars)?;

    // The certified bound everything else consumes. For homogeneous input
    // this is the global projective exponent; otherwise the local exponent
    // at the origin.
    let (scope, bound) = if homogeneous {
        let b = minexp_global_projective(&f, &minexp_hints)
            .map_err(|e| RunFailure::Input(e.to_string()))?;
        ("global-projective", b)
    } else {
        let origin = Point::affine(vec![rat_int(0); req.num_vars]);
        let b = minexp_local(&f, &origin).map_err(|e| match e {
            hyperstab_core::minexp::Error::NotOnHypersurface => RunFailure::Input(
                "non-homogeneous input must vanish at the origin for a local analysis".into(),
            ),
            other => RunFailure::Input(other.to_string()),
        })?;
        ("local-at-origin", b)
    };
    if !replay(&bound.trace) {
        return Err(RunFailure::Internal(
            "derivation trace failed to replay".into(),
        ));
    }

    let mut analyses = Analyses::default();
    if req.minexp {
        analyses.minexp = Some(build_minexp_section(
            &f,
            &bound,
            scope,
            &minexp_hints,
            req.seed,
            req.with_trace,
        )?);
    }

    // remaining sections are independent given the bound
    #[derive(Clone, Copy)]
    enum Task {
        Git,
        Hodge,
        Degeneration,
    }
    let mut tasks = Vec::new();
    if req.git {
        tasks.push(Task::Git);
    }
    if req.hodge {
        tasks.push(Task::Hodge);
    }
    if req.degeneration {
        tasks.push(Task::Degeneration);
    }
    let results = parallel::map_collect(tasks, |task| match task {
        Task::Git => build_git_section(&f, &bound, &hm_hints, req.budget).map(SectionOut::Git),
        Task::Hodge => build_hodge_section(&f, &bound).map(SectionOut::Hodge),
        Task::Degeneration => build_degeneration_section(&f, &bound).map(SectionOut::Degeneration),
    });
    for r in results {
        match r? {
            SectionOut::Git(s) => analyses.git = s,
            SectionOut::Hodge(s) => analyses.hodge = s,
            SectionOut::Degeneration(s) => analyses.degeneration = s,
        }
    }

    Ok(Report {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        input: InputEcho {
            polynomial: req.polynomial.clone(),
            num_vars: req.num_vars,
            homogeneous,
            degree,
            seed: req.seed,
            budget: req.budget,
        },
        analyses,
    })
}

enum SectionOut {
    Git(Option<GitSection>),
    Hodge(Option<HodgeSection>),
    Degeneration(Option<DegenerationSection>),
}

fn parse_input(text: &str, num_vars: usize) -> Result<Polynomial, RunFailure> {
    use hyperstab_core::polycore::Error as PE;
    parse_polynomial(text, num_vars).map_err(|e| match e {
        PE::Syntax { pos, msg } => RunFailure::Parse { pos, msg },
        PE::VarOutOfRange { index, num_vars, pos } => RunFailure::Parse {
            pos,
            msg: format!("variable x{index} out of range for {num_vars} variables"),
        },
        PE::ZeroPolynomial => RunFailure::Input("the polynomial is identically zero".into()),
        other => RunFailure::Input(other.to_string()),
    })
}

fn build_minexp_hints(h: &HintInput, num_vars: usize) -> Result<MinexpHints, RunFailure> {
    let mut points = Vec::new();
    for coords in &h.points {
        if coords.len() != num_vars {
            return Err(RunFailure::Input(format!(
                "hint point has {} coordinates, expected {num_vars}",
                coords.len()
            )));
        }
        let p = Point::projective(coords.clone())
            .map_err(|e| RunFailure::Input(e.to_string()))?;
        points.push(p);
    }
    let sing_dim = h.sing_dim.map(|s| {
        if s < 0 {
            SingDimHint::Empty
        } else {
            SingDimHint::Dim(s as u32)
        }
    });
    Ok(MinexpHints { points, sing_dim })
}

fn build_hm_hints(h: &HintInput, num_vars: usize) -> Result<Vec<Hint>, RunFailure> {
    let mut hints = Vec::new();
    for coords in &h.points {
        let p = Point::projective(coords.clone())
            .map_err(|e| RunFailure::Input(e.to_string()))?;
        hints.push(Hint::SingularPoint(p));
    }
    for set in &h.subspaces {
        if set.iter().any(|&i| i >= num_vars) {
            return Err(RunFailure::Input(
                "subspace hint names a variable out of range".into(),
            ));
        }
        hints.push(Hint::Subspace(set.clone()));
    }
    Ok(hints)
}

fn build_minexp_section(
    f: &Polynomial,
    bound: &MinExpBound,
    scope: &str,
    hints: &MinexpHints,
    seed: u64,
    with_trace: bool,
) -> Result<MinexpSection, RunFailure> {
    let homogeneous = f.homogeneous_degree().is_some();
    // the germ of a projective hypersurface lives on an affine chart with
    // one variable fewer; a local analysis keeps the ambient count
    let germ_vars = if homogeneous {
        f.num_vars() - 1
    } else {
        f.num_vars()
    };
    let smooth = bound.is_exact() && bound.lo.is_infinite();
    let cone_point = if homogeneous && f.homogeneous_degree().unwrap_or(0) >= 2 {
        let c = minexp_cone_with_hints(f, hints).map_err(|e| RunFailure::Input(e.to_string()))?;
        Some(BoundJson::from_bound(&c))
    } else {
        None
    };
    let restriction_probe = if homogeneous && f.num_vars() >= 2 {
        let report = hyperplane_restriction_probe(f, seed)
            .map_err(|e| RunFailure::Input(e.to_string()))?;
        if matches!(report.outcome, ProbeOutcome::Violation) {
            return Err(RunFailure::Internal(
                "hyperplane restriction probe found a violation".into(),
            ));
        }
        Some(ProbeJson {
            seed,
            outcome: match report.outcome {
                ProbeOutcome::Agree => "agree".into(),
                ProbeOutcome::Consistent => "consistent".into(),
                ProbeOutcome::Degenerate => "degenerate".into(),
                ProbeOutcome::Violation => unreachable!("handled above"),
            },
            hyperplane: report.hyperplane.iter().map(rat_string).collect(),
            restricted: report.restricted.as_ref().map(BoundJson::from_bound),
            formula: report.formula.as_ref().map(BoundJson::from_bound),
        })
    } else {
        None
    };
    Ok(MinexpSection {
        scope: scope.to_string(),
        bound: BoundJson::from_bound(bound),
        cone_point,
        classification: ClassJson::from_class(&classify(bound, germ_vars), smooth),
        restriction_probe,
        trace: if with_trace {
            Some(TraceJson::from_trace(&bound.trace))
        } else {
            None
        },
    })
}

fn certificate_json(cert: &DestabilizerCertificate) -> Result<CertificateJson, RunFailure> {
    let w = cert
        .w
        .to_coprime_integers()
        .iter()
        .map(|c| {
            i64::try_from(c.clone())
                .map_err(|_| RunFailure::Internal("certificate weight exceeds i64".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CertificateJson {
        g: matrix_strings(&cert.g),
        w,
        margin: rat_string(&cert.margin),
        strictness: match cert.strictness {
            hm::Strictness::SemistabilityViolating => "semistability-violating".into(),
            hm::Strictness::StabilityViolating => "stability-violating".into(),
        },
    })
}

fn build_git_section(
    f: &Polynomial,
    bound: &MinExpBound,
    hints: &[Hint],
    budget: usize,
) -> Result<Option<GitSection>, RunFailure> {
    let Some(d) = f.homogeneous_degree() else {
        return Ok(None);
    };
    if d < 3 {
        return Ok(None);
    }
    let torus = match torus_verdict(f).map_err(|e| RunFailure::Input(e.to_string()))? {
        TorusVerdict::TorusSemistable { lambdas } => TorusJson {
            kind: "TorusSemistable".into(),
            lambdas: Some(
                lambdas
                    .iter()
                    .map(|(p, l)| LambdaJson {
                        point: p.clone(),
                        lambda: rat_string(l),
                    })
                    .collect(),
            ),
            weight: None,
        },
        TorusVerdict::TorusUnstable { w } => TorusJson {
            kind: "TorusUnstable".into(),
            lambdas: None,
            weight: Some(w.iter().map(|c| c.to_string()).collect()),
        },
    };

    let verdict = stability_verdict(f, bound, hints, budget)
        .map_err(|e| RunFailure::Input(e.to_string()))?;
    // every embedded certificate must re-verify in isolation
    if let StabilityVerdict::Unstable { certificate } | StabilityVerdict::NotStable { certificate } =
        &verdict
    {
        let ok = verify_destabilizer(f, certificate)
            .map_err(|e| RunFailure::Internal(e.to_string()))?;
        if !ok {
            return Err(RunFailure::Internal(
                "emitted destabilizer certificate failed re-verification".into(),
            ));
        }
    }

    let verdict_json = match &verdict {
        StabilityVerdict::Stable { alpha_lower } => VerdictJson {
            kind: "Stable".into(),
            alpha_lower: Some(ext_string(alpha_lower)),
            alpha_exact: None,
            certificate: None,
            bound: None,
            search_log: None,
        },
        StabilityVerdict::Semistable { alpha_exact } => VerdictJson {
            kind: "Semistable".into(),
            alpha_lower: None,
            alpha_exact: Some(rat_string(alpha_exact)),
            certificate: None,
            bound: None,
            search_log: None,
        },
        StabilityVerdict::Unstable { certificate } => VerdictJson {
            kind: "Unstable".into(),
            alpha_lower: None,
            alpha_exact: None,
            certificate: Some(certificate_json(certificate)?),
            bound: None,
            search_log: None,
        },
        StabilityVerdict::NotStable { certificate } => VerdictJson {
            kind: "NotStable".into(),
            alpha_lower: None,
            alpha_exact: None,
            certificate: Some(certificate_json(certificate)?),
            bound: None,
            search_log: None,
        },
        StabilityVerdict::Unknown { bound, search_log } => VerdictJson {
            kind: "Unknown".into(),
            alpha_lower: None,
            alpha_exact: None,
            certificate: None,
            bound: Some(BoundJson::from_bound(bound)),
            search_log: Some(search_log.clone()),
        },
    };

    let cubic_inference = if d == 3
        && matches!(
            verdict,
            StabilityVerdict::Stable { .. } | StabilityVerdict::Semistable { .. }
        ) {
        let inf = cubic_semistable_inference(f.num_vars());
        Some(InferenceJson {
            alpha_lower: rat_string(&inf.alpha_lower),
            terminal: inf.terminal,
        })
    } else {
        None
    };

    let obstructions = if d == 3 {
        cubic_obstructions(f, hints)
            .map_err(|e| RunFailure::Input(e.to_string()))?
            .iter()
            .map(|diag| ObstructionJson {
                kind: match &diag.kind {
                    CubicObstructionKind::ContainsPlane { .. } => "contains-plane".into(),
                    CubicObstructionKind::SingularAlongPlane { .. } => {
                        "singular-along-plane".into()
                    }
                    CubicObstructionKind::HessianRank { .. } => "hessian-rank".into(),
                },
                detail: match &diag.kind {
                    CubicObstructionKind::ContainsPlane { vanishing } => {
                        format!("f lies in the ideal of {vanishing:?}")
                    }
                    CubicObstructionKind::SingularAlongPlane { vanishing } => {
                        format!("f lies in the squared ideal of {vanishing:?}")
                    }
                    CubicObstructionKind::HessianRank {
                        rank,
                        rank_three_flag,
                        ..
                    } => format!(
                        "hessian rank {rank} at hinted singular point{}",
                        if *rank_three_flag {
                            " (rank-3 flag in ambient dimension >= 6)"
                        } else {
                            ""
                        }
                    ),
                },
                has_certificate: diag.certificate.is_some(),
            })
            .collect()
    } else {
        Vec::new()
    };

    Ok(Some(GitSection {
        torus,
        verdict: verdict_json,
        cubic_semistable_inference: cubic_inference,
        obstructions,
    }))
}

/// Syntactically derive the block structure of a disjoint-variable sum:
/// pure powers pool into one Fermat cone block, squarefree degree-`d`
/// monomials become normal-crossing blocks.
fn derive_blocks(f: &Polynomial, d: u32) -> Result<Vec<BlockDescriptor>, String> {
    let decomp = hyperstab_core::polycore::ts_components(f).map_err(|e| e.to_string())?;
    if decomp.constant != rat_int(0) {
        return Err("input has a constant term".into());
    }
    let mut fermat_pool: u32 = 0;
    let mut ncs = Vec::new();
    for b in &decomp.blocks {
        if b.poly.num_terms() != 1 {
            return Err(format!(
                "block on variables {:?} is not a single monomial",
                b.vars
            ));
        }
        let (m, _) = b.poly.terms().next().expect("one term");
        let support = m.support();
        if support.len() == 1 && m.degree() == d {
            fermat_pool += 1;
        } else if support.len() == d as usize && m.0.iter().all(|&e| e <= 1) {
            ncs.push(BlockDescriptor::NormalCrossing { degree: d });
        } else {
            return Err(format!(
                "monomial block on variables {:?} is neither a pure power nor reduced normal crossing",
                b.vars
            ));
        }
    }
    let mut blocks = Vec::new();
    if fermat_pool > 0 {
        if fermat_pool % d != 0 {
            return Err(format!(
                "{fermat_pool} pure d-th powers do not form a Calabi-Yau type cone block for d = {d}"
            ));
        }
        blocks.push(BlockDescriptor::SmoothCone {
            n: fermat_pool - 1,
            d,
        });
    }
    blocks.extend(ncs);
    if blocks.is_empty() {
        return Err("no blocks recognized".into());
    }
    Ok(blocks)
}

struct DegenerationData {
    core: CoreDescriptor,
    nilpotency: u32,
    maximal: Option<bool>,
    blocks: Vec<BlockDescriptor>,
    smooth: bool,
    m: u32,
}

/// Core data for a certified input: either exactly smooth, or an in-class
/// `m`-liminal block sum at the Calabi-Yau threshold.
fn derive_degeneration(
    f: &Polynomial,
    bound: &MinExpBound,
) -> Result<Result<DegenerationData, String>, RunFailure> {
    let Some(d) = f.homogeneous_degree() else {
        return Ok(Err("input is not homogeneous".into()));
    };
    let n = (f.num_vars() - 1) as u32;
    let Some(m) = cy_level(n, d) else {
        return Ok(Err(format!(
            "(n+1)/d = {}/{} is not integral: not of Calabi-Yau type",
            n + 1,
            d
        )));
    };
    let smooth = bound.is_exact() && bound.lo.is_infinite();
    if smooth {
        let blocks = vec![BlockDescriptor::SmoothCone { n, d }];
        let core = core_of_blocks(&blocks).map_err(|e| RunFailure::Internal(e.to_string()))?;
        let nilpotency =
            nilpotency_index(n, core.weight, m).map_err(|e| RunFailure::Internal(e.to_string()))?;
        return Ok(Ok(DegenerationData {
            core,
            nilpotency,
            maximal: None,
            blocks,
            smooth: true,
            m,
        }));
    }
    let threshold = ExtRat::Finite(
        Rat::new((n as i64 + 1).into(), (d as i64).into()),
    );
    if !(bound.is_exact() && bound.lo == threshold) {
        return Ok(Err(format!(
            "the certified exponent {} is not exactly the Calabi-Yau threshold {}",
            bound,
            rat_int(n as i64 + 1) / rat_int(d as i64)
        )));
    }
    let blocks = match derive_blocks(f, d) {
        Ok(b) => b,
        Err(reason) => return Ok(Err(reason)),
    };
    let core = core_of_blocks(&blocks).map_err(|e| RunFailure::Internal(e.to_string()))?;
    if core.twist != m {
        return Err(RunFailure::Internal(format!(
            "core twist {} disagrees with the liminal level {m}",
            core.twist
        )));
    }
    let nilpotency =
        nilpotency_index(n, core.weight, m).map_err(|e| RunFailure::Internal(e.to_string()))?;
    let maximal = Some(maximal_degeneration_test(&core, m));
    Ok(Ok(DegenerationData {
        core,
        nilpotency,
        maximal,
        blocks,
        smooth: false,
        m,
    }))
}

fn core_json(core: &CoreDescriptor) -> CoreJson {
    CoreJson {
        weight: core.weight,
        twist: core.twist,
        label: core.label.clone(),
    }
}

fn build_hodge_section(
    f: &Polynomial,
    bound: &MinExpBound,
) -> Result<Option<HodgeSection>, RunFailure> {
    let Some(d) = f.homogeneous_degree() else {
        return Ok(None);
    };
    let n = (f.num_vars() - 1) as u32;
    if n < 2 || d < 2 {
        return Ok(None);
    }
    let level = cy_level(n, d);
    let smooth_row = smooth_middle_hodge(n, d)
        .map_err(|e| RunFailure::Input(e.to_string()))?
        .entries;

    let mut section = HodgeSection {
        cy_level: level,
        smooth_middle_hodge: Some(smooth_row),
        blocks: None,
        core: None,
        liminal_locus: None,
        locus_cohomology: None,
        hodge_du_bois_row: None,
        note: None,
    };

    match derive_degeneration(f, bound)? {
        Err(reason) => {
            section.note = Some(reason);
        }
        Ok(data) => {
            section.blocks = Some(
                data.blocks
                    .iter()
                    .map(|b| match b {
                        BlockDescriptor::NormalCrossing { degree } => BlockJson {
                            kind: "normal-crossing".into(),
                            n: None,
                            d: *degree,
                            middle_hodge: None,
                        },
                        BlockDescriptor::SmoothCone { n, d } => BlockJson {
                            kind: "smooth-cone".into(),
                            n: Some(*n),
                            d: *d,
                            middle_hodge: smooth_middle_hodge(*n, *d).ok().map(|h| h.entries),
                        },
                    })
                    .collect(),
            );
            section.core = Some(core_json(&data.core));
            if !data.smooth {
                let locus = liminal_locus_structured(f)
                    .map_err(|e| RunFailure::Internal(e.to_string()))?;
                let row = locus_cohomology_checked(&locus, &data)?;
                let db_row = hodge_du_bois_row(n, d, data.m, &row)
                    .map_err(|e| RunFailure::Internal(e.to_string()))?;
                section.liminal_locus = Some(LocusJson {
                    ambient_dim: locus.ambient_dim,
                    cell_count: locus.cells.len(),
                    cells: locus
                        .cells
                        .iter()
                        .map(|c| c.iter().copied().collect())
                        .collect(),
                });
                section.locus_cohomology = Some(row);
                section.hodge_du_bois_row = Some(db_row);
            }
        }
    }
    Ok(Some(section))
}

/// Liminal-locus structure-sheaf cohomology, cross-checked against the
/// connectivity consequence of a low-weight core.
fn locus_cohomology_checked(
    locus: &Arrangement,
    data: &DegenerationData,
) -> Result<Vec<u64>, RunFailure> {
    let row = arrangement_cohomology(locus)
        .map_err(|e| RunFailure::Internal(e.to_string()))?
        .values;
    let n = locus.ambient_dim as i64;
    if data.core.weight as i64 <= n - 3 {
        let h0 = row.first().copied().unwrap_or(0);
        if h0 != 1 {
            return Err(RunFailure::Internal(format!(
                "core weight {} forces a connected liminal locus, got h^0 = {h0}",
                data.core.weight
            )));
        }
    }
    Ok(row)
}

fn build_degeneration_section(
    f: &Polynomial,
    bound: &MinExpBound,
) -> Result<Option<DegenerationSection>, RunFailure> {
    if f.homogeneous_degree().is_none() {
        return Ok(None);
    }
    Ok(Some(match derive_degeneration(f, bound)? {
        Err(reason) => DegenerationSection {
            core: None,
            nilpotency_index: None,
            maximal_degeneration: None,
            note: Some(reason),
        },
        Ok(data) => DegenerationSection {
            core: Some(core_json(&data.core)),
            nilpotency_index: Some(data.nilpotency),
            maximal_degeneration: data.maximal,
            note: if data.smooth {
                Some("smooth special fiber: trivial degeneration, N = 0".into())
            } else {
                None
            },
        },
    }))
}
