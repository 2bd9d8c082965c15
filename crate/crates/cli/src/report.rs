//! Machine-readable report structures. Every rational serializes as a
//! `"p/q"` string so nothing is ever rounded; field order is fixed by the
//! struct definitions, which keeps JSON output byte-stable.

use hyperstab_core::minexp::{
    Combine, DerivationTrace, ExtRat, Level, MinExpBound, SingularityClass,
};
use hyperstab_core::polycore::LinearChange;
use hyperstab_core::Rat;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub input: InputEcho,
    pub analyses: Analyses,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputEcho {
    pub polynomial: String,
    pub num_vars: usize,
    pub homogeneous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    pub seed: u64,
    pub budget: usize,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Analyses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minexp: Option<MinexpSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub git: Option<GitSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hodge: Option<HodgeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degeneration: Option<DegenerationSection>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundJson {
    pub lo: String,
    pub hi: String,
    pub exact: bool,
}

impl BoundJson {
    pub fn from_bound(b: &MinExpBound) -> Self {
        BoundJson {
            lo: ext_string(&b.lo),
            hi: ext_string(&b.hi),
            exact: b.is_exact(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MinexpSection {
    /// "global-projective" or "local-at-origin".
    pub scope: String,
    pub bound: BoundJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cone_point: Option<BoundJson>,
    pub classification: ClassJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restriction_probe: Option<ProbeJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceJson>,
}

/// Seeded hyperplane-restriction cross-check. A violation is an engine bug
/// and aborts the run; agreement or interval-consistency is evidence.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeJson {
    pub seed: u64,
    pub outcome: String,
    pub hyperplane: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restricted: Option<BoundJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<BoundJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassJson {
    pub m_du_bois: String,
    pub m_rational: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub liminal_level: Option<u32>,
    pub ade: Option<bool>,
    pub terminal: Option<bool>,
    pub mld_lower: String,
    pub smooth: bool,
}

impl ClassJson {
    pub fn from_class(c: &SingularityClass, smooth: bool) -> Self {
        ClassJson {
            m_du_bois: level_string(&c.m_du_bois),
            m_rational: level_string(&c.m_rational),
            liminal_level: c.liminal_level,
            ade: c.ade,
            terminal: c.terminal,
            mld_lower: level_string(&c.mld_lower),
            smooth,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceJson {
    pub rule: String,
    pub combine: String,
    pub name: String,
    pub lo: String,
    pub hi: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TraceJson>,
}

impl TraceJson {
    pub fn from_trace(t: &DerivationTrace) -> Self {
        TraceJson {
            rule: format!("{:?}", t.rule),
            combine: match t.combine {
                Combine::Leaf => "leaf".into(),
                Combine::Sum => "sum".into(),
                Combine::Min => "min".into(),
                Combine::Intersect => "intersect".into(),
            },
            name: t.name.clone(),
            lo: ext_string(&t.lo),
            hi: ext_string(&t.hi),
            children: t.children.iter().map(TraceJson::from_trace).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GitSection {
    pub torus: TorusJson,
    pub verdict: VerdictJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cubic_semistable_inference: Option<InferenceJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub obstructions: Vec<ObstructionJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TorusJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<Vec<LambdaJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LambdaJson {
    pub point: Vec<u32>,
    pub lambda: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_lower: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search_log: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateJson {
    /// Row-major rational entries of the coordinate change.
    pub g: Vec<Vec<String>>,
    /// Coprime integer weight vector.
    pub w: Vec<i64>,
    pub margin: String,
    pub strictness: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct InferenceJson {
    pub alpha_lower: String,
    pub terminal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstructionJson {
    pub kind: String,
    pub detail: String,
    pub has_certificate: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HodgeSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cy_level: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub smooth_middle_hodge: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<BlockJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub core: Option<CoreJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub liminal_locus: Option<LocusJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locus_cohomology: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hodge_du_bois_row: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub d: u32,
    /// Middle Hodge numbers of the block hypersurface, for cone blocks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub middle_hodge: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoreJson {
    pub weight: u32,
    pub twist: u32,
    pub label: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LocusJson {
    pub ambient_dim: usize,
    pub cell_count: usize,
    /// Vanishing coordinate sets of the maximal cells.
    pub cells: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegenerationSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub core: Option<CoreJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nilpotency_index: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maximal_degeneration: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn rat_string(r: &Rat) -> String {
    r.to_string()
}

pub fn ext_string(v: &ExtRat) -> String {
    match v {
        ExtRat::Finite(r) => rat_string(r),
        ExtRat::Infinity => "inf".into(),
    }
}

pub fn level_string(l: &Level) -> String {
    match l {
        Level::None => "none".into(),
        Level::Finite(m) => m.to_string(),
        Level::Unbounded => "unbounded".into(),
    }
}

pub fn matrix_strings(g: &LinearChange) -> Vec<Vec<String>> {
    (0..g.dim())
        .map(|i| g.row(i).iter().map(rat_string).collect())
        .collect()
}
