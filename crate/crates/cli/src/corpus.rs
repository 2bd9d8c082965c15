//! Bundled example corpus with expected values, used both as a regression
//! harness (`hyperstab corpus run`) and as the substrate for the acceptance
//! suite.

use crate::pipeline::{run, AnalysisRequest, HintInput, RunFailure};
use crate::report::Report;
use hyperstab_core::rat;
use hyperstab_core::Rat;
use serde::Serialize;

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub polynomial: String,
    pub num_vars: usize,
    pub hints: HintInput,
    pub expected: Expected,
    /// Where the expectation comes from: classical values from the
    /// literature, or values recomputed here by an independent method.
    pub note: &'static str,
}

#[derive(Debug, Clone, Default)]
pub struct Expected {
    /// Exact value as a rational string, "inf", or None when only an
    /// interval is certified.
    pub alpha_exact: Option<&'static str>,
    /// Exact value at the cone point of the affine cone.
    pub alpha_cone: Option<&'static str>,
    /// The certified interval must contain this value.
    pub alpha_contains: Option<&'static str>,
    pub verdict: Option<&'static str>,
    pub liminal_level: Option<u32>,
    pub core_weight: Option<u32>,
    pub nilpotency: Option<u32>,
    pub maximal: Option<bool>,
    pub locus_cells: Option<usize>,
    pub locus_h0: Option<u64>,
    pub ade: Option<bool>,
    pub terminal: Option<bool>,
}

fn fermat(k: usize, d: u32) -> String {
    (0..k)
        .map(|i| format!("x{i}^{d}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn contains_plane_cubic(n1: usize) -> String {
    // cubic inside (x_{n-1}, x_n): contains the coordinate P^{n-2}
    format!(
        "x0^2*x{a} + x1^2*x{b} + x2^2*x{a} + x3^2*x{b}",
        a = n1 - 2,
        b = n1 - 1
    )
}

fn singular_plane_cubic(n1: usize) -> String {
    // cubic inside the squared ideal of the last four coordinates
    let (p, q, r, s) = (n1 - 4, n1 - 3, n1 - 2, n1 - 1);
    format!("x0*x{p}^2 + x1*x{q}^2 + x2*x{r}^2 + x3*x{s}^2 + x{p}*x{q}*x{s}")
}

pub fn corpus() -> Vec<Fixture> {
    let mut list = vec![
        Fixture {
            name: "fermat-cubic-7fold".into(),
            polynomial: fermat(9, 3),
            num_vars: 9,
            hints: HintInput::default(),
            expected: Expected {
                alpha_exact: Some("inf"),
                verdict: Some("Stable"),
                core_weight: Some(7),
                nilpotency: Some(1),
                locus_cells: Some(0),
                ..Default::default()
            },
            note: "smooth Fermat cubic sevenfold; classical",
        },
        Fixture {
            name: "cone-fermat4fold-nc-7fold".into(),
            polynomial: format!("{} + x6*x7*x8", fermat(6, 3)),
            num_vars: 9,
            hints: HintInput::default(),
            expected: Expected {
                alpha_exact: Some("3"),
                verdict: Some("Semistable"),
                liminal_level: Some(2),
                core_weight: Some(6),
                nilpotency: Some(2),
                maximal: Some(false),
                locus_cells: Some(3),
                locus_h0: Some(3),
                ..Default::default()
            },
            note: "cone over a smooth cubic fourfold plus a normal crossing block",
        },
        Fixture {
            name: "cone-elliptic-double-nc-7fold".into(),
            polynomial: format!("{} + x3*x4*x5 + x6*x7*x8", fermat(3, 3)),
            num_vars: 9,
            hints: HintInput::default(),
            expected: Expected {
                alpha_exact: Some("3"),
                verdict: Some("Semistable"),
                liminal_level: Some(2),
                core_weight: Some(5),
                nilpotency: Some(3),
                maximal: Some(false),
                locus_cells: Some(9),
                locus_h0: Some(1),
                ..Default::default()
            },
            note: "cone over a plane cubic curve plus two normal crossing blocks",
        },
        Fixture {
            name: "triple-nc-cubic-7fold".into(),
            polynomial: "x0*x1*x2 + x3*x4*x5 + x6*x7*x8".into(),
            num_vars: 9,
            hints: HintInput::default(),
            expected: Expected {
                alpha_exact: Some("3"),
                verdict: Some("Semistable"),
                liminal_level: Some(2),
                core_weight: Some(4),
                nilpotency: Some(4),
                maximal: Some(true),
                locus_cells: Some(27),
                locus_h0: Some(1),
                ..Default::default()
            },
            note: "sum of three independent normal crossing cubics",
        },
        Fixture {
            name: "three-lines-cubic-curve".into(),
            polynomial: "x0*x1*x2".into(),
            num_vars: 3,
            hints: HintInput::default(),
            expected: Expected {
                alpha_exact: Some("1"),
                verdict: Some("Semistable"),
                liminal_level: Some(0),
                core_weight: Some(0),
                nilpotency: Some(2),
                maximal: Some(true),
                locus_cells: Some(3),
                locus_h0: Some(3),
                ..Default::default()
            },
            note: "triangle of coordinate lines; maximal plane-cubic degeneration",
        },
        Fixture {
            name: "nc-quartic-k3".into(),
            polynomial: "x0*x1*x2*x3".into(),
            num_vars: 4,
            hints: HintInput::default(),
            expected: Expected {
                alpha_exact: Some("1"),
                verdict: Some("Semistable"),
                liminal_level: Some(0),
                core_weight: Some(0),
                nilpotency: Some(3),
                maximal: Some(true),
                locus_cells: Some(6),
                locus_h0: Some(1),
                ..Default::default()
            },
            note: "tetrahedral quartic surface; type III K3 degeneration",
        },
        Fixture {
            name: "sum-nc-quartic-m1".into(),
            polynomial: "x0*x1*x2*x3 + x4*x5*x6*x7".into(),
            num_vars: 8,
            hints: HintInput::default(),
            expected: Expected {
                alpha_exact: Some("2"),
                verdict: Some("Semistable"),
                liminal_level: Some(1),
                core_weight: Some(2),
                nilpotency: Some(5),
                maximal: Some(true),
                locus_cells: Some(36),
                locus_h0: Some(1),
                ..Default::default()
            },
            note: "two independent normal crossing quartics; maximal degeneration",
        },
        Fixture {
            name: "a2-boundary-cubic-surface".into(),
            polynomial: "x0*x1*x2 + x3^3".into(),
            num_vars: 4,
            hints: HintInput::default(),
            expected: Expected {
                alpha_exact: Some("4/3"),
                verdict: Some("Semistable"),
                ..Default::default()
            },
            note: "cubic surface with three A2 points at the semistable boundary",
        },
        Fixture {
            name: "d4-cubic-surface".into(),
            polynomial: "x0^3 + x1^3 + x2^2*x3".into(),
            num_vars: 4,
            hints: HintInput::default(),
            expected: Expected {
                alpha_exact: Some("7/6"),
                verdict: Some("Unstable"),
                ..Default::default()
            },
            note: "cubic surface with a D4 point, below the 4/3 boundary",
        },
        Fixture {
            name: "binary-cubic-double-point".into(),
            polynomial: "x0^2*x1".into(),
            num_vars: 2,
            hints: HintInput::default(),
            expected: Expected {
                alpha_exact: Some("1/2"),
                verdict: Some("Unstable"),
                ..Default::default()
            },
            note: "binary cubic with a double root: torus-destabilized",
        },
        Fixture {
            name: "A5-suspension".into(),
            polynomial: "x0^6 + x1^2 + x2^2 + x3^2".into(),
            num_vars: 4,
            hints: HintInput::default(),
            expected: Expected {
                alpha_exact: Some("5/3"),
                ade: Some(true),
                terminal: Some(true),
                ..Default::default()
            },
            note: "A5 threefold germ at the terminality boundary 5/3",
        },
        Fixture {
            name: "d4-suspension-3fold".into(),
            polynomial: "x0^3 + x1^3 + x2^2 + x3^2".into(),
            num_vars: 4,
            hints: HintInput::default(),
            expected: Expected {
                alpha_exact: Some("5/3"),
                ade: Some(true),
                terminal: Some(true),
                ..Default::default()
            },
            note: "D4 threefold germ, same boundary value 5/3",
        },
        Fixture {
            name: "a2-suspension-surface".into(),
            polynomial: "x0^3 + x1^2 + x2^2".into(),
            num_vars: 3,
            hints: HintInput::default(),
            expected: Expected {
                alpha_exact: Some("4/3"),
                ade: Some(true),
                ..Default::default()
            },
            note: "A2 surface germ",
        },
        Fixture {
            name: "ordinary-node-4fold".into(),
            polynomial: "x0^2 + x1^2 + x2^2 + x3^2 + x4^2".into(),
            num_vars: 5,
            hints: HintInput::default(),
            expected: Expected {
                alpha_exact: Some("inf"),
                alpha_cone: Some("5/2"),
                ..Default::default()
            },
            note: "smooth quadric whose affine cone has an ordinary double point",
        },
        Fixture {
            name: "chordal-cubic-3fold".into(),
            polynomial: "x0*x2*x4 - x0*x3^2 - x1^2*x4 + 2*x1*x2*x3 - x2^3".into(),
            num_vars: 5,
            hints: HintInput {
                points: vec![point(&[1, 0, 0, 0, 0]), point(&[0, 0, 0, 0, 1])],
                subspaces: vec![],
                sing_dim: Some(1),
            },
            expected: Expected {
                alpha_contains: Some("3/2"),
                verdict: Some("Unknown"),
                ..Default::default()
            },
            note: "secant variety of the rational normal quartic curve; exact value 3/2 from the literature is used only for interval containment",
        },
    ];
    for n1 in [7usize, 8, 9] {
        let n = n1 - 1;
        list.push(Fixture {
            name: format!("contains-plane-cubic-p{n}"),
            polynomial: contains_plane_cubic(n1),
            num_vars: n1,
            hints: HintInput::default(),
            expected: Expected {
                verdict: Some("Unstable"),
                ..Default::default()
            },
            note: "cubic containing a codimension-two coordinate plane",
        });
        list.push(Fixture {
            name: format!("sing-plane-squared-cubic-p{n}"),
            polynomial: singular_plane_cubic(n1),
            num_vars: n1,
            hints: HintInput::default(),
            expected: Expected {
                verdict: Some("Unstable"),
                ..Default::default()
            },
            note: "cubic singular along a hyperplane of a codimension-three plane",
        });
    }
    list
}

fn point(coords: &[i64]) -> Vec<Rat> {
    coords.iter().map(|&c| rat(c, 1)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub note: String,
    pub pass: bool,
    pub checks: Vec<CheckOutcome>,
    pub report: Report,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusOutcome {
    pub total: usize,
    pub passed: usize,
    pub fixtures: Vec<FixtureOutcome>,
}

pub fn run_fixture(fx: &Fixture) -> Result<FixtureOutcome, RunFailure> {
    let mut req = AnalysisRequest::all(fx.polynomial.clone(), fx.num_vars);
    req.hints = fx.hints.clone();
    let report = run(&req)?;
    let mut checks = Vec::new();
    let push = |checks: &mut Vec<CheckOutcome>, check: &str, expected: String, got: String| {
        let pass = expected == got;
        checks.push(CheckOutcome {
            check: check.into(),
            expected,
            got,
            pass,
        });
    };

    let minexp = report.analyses.minexp.as_ref();
    if let Some(expected) = fx.expected.alpha_exact {
        let got = minexp
            .map(|m| {
                if m.bound.exact {
                    m.bound.lo.clone()
                } else {
                    format!("[{}, {}]", m.bound.lo, m.bound.hi)
                }
            })
            .unwrap_or_else(|| "missing".into());
        push(&mut checks, "alpha_exact", expected.to_string(), got);
    }
    if let Some(expected) = fx.expected.alpha_cone {
        let got = minexp
            .and_then(|m| m.cone_point.as_ref())
            .map(|c| {
                if c.exact {
                    c.lo.clone()
                } else {
                    format!("[{}, {}]", c.lo, c.hi)
                }
            })
            .unwrap_or_else(|| "missing".into());
        push(&mut checks, "alpha_cone", expected.to_string(), got);
    }
    if let Some(value) = fx.expected.alpha_contains {
        let inside = minexp
            .map(|m| interval_contains(&m.bound.lo, &m.bound.hi, value))
            .unwrap_or(false);
        push(
            &mut checks,
            "alpha_contains",
            format!("interval contains {value}"),
            if inside {
                format!("interval contains {value}")
            } else {
                "interval misses the value".into()
            },
        );
    }
    if let Some(expected) = fx.expected.verdict {
        let got = report
            .analyses
            .git
            .as_ref()
            .map(|g| g.verdict.kind.clone())
            .unwrap_or_else(|| "missing".into());
        push(&mut checks, "verdict", expected.to_string(), got);
    }
    if let Some(expected) = fx.expected.liminal_level {
        let got = minexp
            .and_then(|m| m.classification.liminal_level)
            .map(|v| v.to_string())
            .unwrap_or_else(|| "none".into());
        push(&mut checks, "liminal_level", expected.to_string(), got);
    }
    if let Some(expected) = fx.expected.core_weight {
        let got = report
            .analyses
            .degeneration
            .as_ref()
            .and_then(|d| d.core.as_ref())
            .map(|c| c.weight.to_string())
            .unwrap_or_else(|| "missing".into());
        push(&mut checks, "core_weight", expected.to_string(), got);
    }
    if let Some(expected) = fx.expected.nilpotency {
        let got = report
            .analyses
            .degeneration
            .as_ref()
            .and_then(|d| d.nilpotency_index)
            .map(|v| v.to_string())
            .unwrap_or_else(|| "missing".into());
        push(&mut checks, "nilpotency_index", expected.to_string(), got);
    }
    if let Some(expected) = fx.expected.maximal {
        let got = report
            .analyses
            .degeneration
            .as_ref()
            .and_then(|d| d.maximal_degeneration)
            .map(|v| v.to_string())
            .unwrap_or_else(|| "missing".into());
        push(
            &mut checks,
            "maximal_degeneration",
            expected.to_string(),
            got,
        );
    }
    if let Some(expected) = fx.expected.locus_cells {
        let got = report
            .analyses
            .hodge
            .as_ref()
            .map(|h| {
                h.liminal_locus
                    .as_ref()
                    .map(|l| l.cell_count)
                    .unwrap_or(0)
                    .to_string()
            })
            .unwrap_or_else(|| "missing".into());
        push(&mut checks, "locus_cells", expected.to_string(), got);
    }
    if let Some(expected) = fx.expected.ade {
        let got = minexp
            .and_then(|m| m.classification.ade)
            .map(|v| v.to_string())
            .unwrap_or_else(|| "unknown".into());
        push(&mut checks, "ade", expected.to_string(), got);
    }
    if let Some(expected) = fx.expected.terminal {
        let got = minexp
            .and_then(|m| m.classification.terminal)
            .map(|v| v.to_string())
            .unwrap_or_else(|| "unknown".into());
        push(&mut checks, "terminal", expected.to_string(), got);
    }
    if let Some(expected) = fx.expected.locus_h0 {
        let got = report
            .analyses
            .hodge
            .as_ref()
            .and_then(|h| h.locus_cohomology.as_ref())
            .and_then(|row| row.first())
            .map(|v| v.to_string())
            .unwrap_or_else(|| "missing".into());
        push(&mut checks, "locus_h0", expected.to_string(), got);
    }

    let pass = checks.iter().all(|c| c.pass);
    Ok(FixtureOutcome {
        name: fx.name.clone(),
        note: fx.note.to_string(),
        pass,
        checks,
        report,
    })
}

fn interval_contains(lo: &str, hi: &str, value: &str) -> bool {
    let parse = |s: &str| -> Option<Rat> {
        if s == "inf" {
            None
        } else {
            s.parse().ok()
        }
    };
    let Some(v) = parse(value) else { return false };
    let lo_ok = match parse(lo) {
        Some(l) => l <= v,
        None => false, // lo = inf only for smooth; a finite value is outside
    };
    let hi_ok = match parse(hi) {
        Some(h) => v <= h,
        None => true,
    };
    lo_ok && hi_ok
}

/// Run every fixture; results come back in corpus order regardless of how
/// the work is scheduled.
pub fn run_corpus() -> Result<CorpusOutcome, RunFailure> {
    let fixtures = corpus();
    let outcomes = hyperstab_core::parallel::map_collect(fixtures, |fx| run_fixture(&fx));
    let mut list = Vec::new();
    for o in outcomes {
        list.push(o?);
    }
    let passed = list.iter().filter(|o| o.pass).count();
    Ok(CorpusOutcome {
        total: list.len(),
        passed,
        fixtures: list,
    })
}
