use clap::{Parser, Subcommand};
use hyperstab_cli::corpus;
use hyperstab_cli::pipeline::{self, AnalysisRequest, HintInput, RunFailure};
use hyperstab_cli::report::Report;
use serde::Deserialize;
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact-arithmetic GIT stability and Hodge-degeneration toolkit for
/// hypersurfaces over the rationals.
#[derive(Parser)]
#[command(name = "hyperstab", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Emit the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include the derivation trace in the report.
    #[arg(long, global = true)]
    trace: bool,
    /// Seed for the randomized cross-checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Budget for the destabilizer search.
    #[arg(long, global = true, default_value_t = 64)]
    budget: usize,
    /// JSON file with {"points": [...], "subspaces": [...], "sing_dim": ...}.
    #[arg(long = "hints-file", global = true)]
    hints_file: Option<PathBuf>,
    /// Projective singular point hint, e.g. 0,0,0,0,1 (repeatable).
    #[arg(long = "sing-point", global = true)]
    sing_points: Vec<String>,
    /// Subspace hint by vanishing coordinates, e.g. x5,x6 (repeatable).
    #[arg(long = "sing-subspace", global = true)]
    sing_subspaces: Vec<String>,
    /// Claimed dimension of the singular locus (negative: empty).
    #[arg(long = "sing-dim", global = true)]
    sing_dim: Option<i64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the requested analyses (default: all).
    Analyze {
        /// Number of variables x0..x{N-1}.
        #[arg(long)]
        vars: usize,
        polynomial: String,
        /// Run every analysis (the default when no selector is given).
        #[arg(long)]
        all: bool,
        #[arg(long)]
        minexp: bool,
        #[arg(long)]
        git: bool,
        #[arg(long)]
        hodge: bool,
        #[arg(long)]
        degeneration: bool,
    },
    /// Certified minimal-exponent bounds and singularity classification.
    Minexp {
        #[arg(long)]
        vars: usize,
        polynomial: String,
    },
    /// GIT stability verdict with certificates.
    GitCheck {
        #[arg(long)]
        vars: usize,
        polynomial: String,
    },
    /// Hodge numbers, liminal locus cohomology and the corrected row.
    Hodge {
        #[arg(long)]
        vars: usize,
        polynomial: String,
    },
    /// Core, nilpotency index and maximal-degeneration test.
    Degeneration {
        #[arg(long)]
        vars: usize,
        polynomial: String,
    },
    /// Bundled regression fixtures.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Run every fixture and check its expected values.
    Run,
    /// List fixture names.
    List,
}

#[derive(Deserialize, Default)]
struct HintsFile {
    #[serde(default)]
    points: Vec<Vec<String>>,
    #[serde(default)]
    subspaces: Vec<Vec<usize>>,
    #[serde(default)]
    sing_dim: Option<i64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {failure}");
            match failure {
                RunFailure::Parse { .. } | RunFailure::Input(_) => ExitCode::from(2),
                RunFailure::Internal(_) => ExitCode::from(3),
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<ExitCode, RunFailure> {
    match &cli.cmd {
        Cmd::Analyze {
            vars,
            polynomial,
            all,
            minexp,
            git,
            hodge,
            degeneration,
        } => {
            let none_selected = !(*minexp || *git || *hodge || *degeneration);
            let everything = *all || none_selected;
            let req = AnalysisRequest {
                polynomial: polynomial.clone(),
                num_vars: *vars,
                minexp: everything || *minexp,
                git: everything || *git,
                hodge: everything || *hodge,
                degeneration: everything || *degeneration,
                hints: collect_hints(cli)?,
                seed: cli.seed,
                budget: cli.budget,
                with_trace: cli.trace,
            };
            emit_report(cli, &pipeline::run(&req)?)
        }
        Cmd::Minexp { vars, polynomial } => {
            let req = single(cli, polynomial, *vars, |r| r.minexp = true)?;
            emit_report(cli, &pipeline::run(&req)?)
        }
        Cmd::GitCheck { vars, polynomial } => {
            let req = single(cli, polynomial, *vars, |r| {
                r.minexp = true;
                r.git = true;
            })?;
            emit_report(cli, &pipeline::run(&req)?)
        }
        Cmd::Hodge { vars, polynomial } => {
            let req = single(cli, polynomial, *vars, |r| {
                r.minexp = true;
                r.hodge = true;
            })?;
            emit_report(cli, &pipeline::run(&req)?)
        }
        Cmd::Degeneration { vars, polynomial } => {
            let req = single(cli, polynomial, *vars, |r| {
                r.minexp = true;
                r.degeneration = true;
            })?;
            emit_report(cli, &pipeline::run(&req)?)
        }
        Cmd::Corpus { action } => match action {
            CorpusAction::List => {
                for fx in corpus::corpus() {
                    println!("{}", fx.name);
                }
                Ok(ExitCode::SUCCESS)
            }
            CorpusAction::Run => {
                let outcome = corpus::run_corpus()?;
                if cli.json {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&outcome)
                            .map_err(|e| RunFailure::Internal(e.to_string()))?
                    );
                } else {
                    for fx in &outcome.fixtures {
                        let status = if fx.pass {
                            paint("PASS", Color::Green)
                        } else {
                            paint("FAIL", Color::Red)
                        };
                        println!("{status}  {}", fx.name);
                        for c in fx.checks.iter().filter(|c| !c.pass) {
                            println!(
                                "      {}: expected {}, got {}",
                                c.check, c.expected, c.got
                            );
                        }
                    }
                    println!("{}/{} fixtures pass", outcome.passed, outcome.total);
                }
                if outcome.passed == outcome.total {
                    Ok(ExitCode::SUCCESS)
                } else {
                    Err(RunFailure::Internal(format!(
                        "{} corpus fixtures failed",
                        outcome.total - outcome.passed
                    )))
                }
            }
        },
    }
}

fn single(
    cli: &Cli,
    polynomial: &str,
    vars: usize,
    select: impl FnOnce(&mut AnalysisRequest),
) -> Result<AnalysisRequest, RunFailure> {
    let mut req = AnalysisRequest {
        polynomial: polynomial.to_string(),
        num_vars: vars,
        minexp: false,
        git: false,
        hodge: false,
        degeneration: false,
        hints: collect_hints(cli)?,
        seed: cli.seed,
        budget: cli.budget,
        with_trace: cli.trace,
    };
    select(&mut req);
    Ok(req)
}

fn collect_hints(cli: &Cli) -> Result<HintInput, RunFailure> {
    let mut hints = HintInput {
        sing_dim: cli.sing_dim,
        ..Default::default()
    };
    if let Some(path) = &cli.hints_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RunFailure::Input(format!("cannot read hints file: {e}")))?;
        let file: HintsFile = serde_json::from_str(&text)
            .map_err(|e| RunFailure::Input(format!("malformed hints file: {e}")))?;
        for coords in file.points {
            hints.points.push(parse_point_coords(&coords.join(","))?);
        }
        hints.subspaces.extend(file.subspaces);
        if hints.sing_dim.is_none() {
            hints.sing_dim = file.sing_dim;
        }
    }
    for raw in &cli.sing_points {
        hints.points.push(parse_point_coords(raw)?);
    }
    for raw in &cli.sing_subspaces {
        hints.subspaces.push(parse_subspace(raw)?);
    }
    Ok(hints)
}

fn parse_point_coords(raw: &str) -> Result<Vec<hyperstab_core::Rat>, RunFailure> {
    raw.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<hyperstab_core::Rat>()
                .map_err(|_| RunFailure::Input(format!("bad point coordinate '{tok}'")))
        })
        .collect()
}

fn parse_subspace(raw: &str) -> Result<Vec<usize>, RunFailure> {
    raw.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let tok = tok.strip_prefix('x').unwrap_or(tok);
            tok.parse::<usize>()
                .map_err(|_| RunFailure::Input(format!("bad subspace coordinate '{tok}'")))
        })
        .collect()
}

fn emit_report(cli: &Cli, report: &Report) -> Result<ExitCode, RunFailure> {
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(report)
                .map_err(|e| RunFailure::Internal(e.to_string()))?
        );
    } else {
        print_text(report);
    }
    Ok(ExitCode::SUCCESS)
}

enum Color {
    Green,
    Red,
    Yellow,
}

fn paint(text: &str, color: Color) -> String {
    let on = std::env::var("HYPERSTAB_COLOR").map(|v| v == "1").unwrap_or(false);
    if !on {
        return text.to_string();
    }
    let code = match color {
        Color::Green => "32",
        Color::Red => "31",
        Color::Yellow => "33",
    };
    format!("\x1b[{code}m{text}\x1b[0m")
}

fn print_text(report: &Report) {
    println!(
        "input: {} in {} variables{}",
        report.input.polynomial,
        report.input.num_vars,
        match report.input.degree {
            Some(d) => format!(", homogeneous of degree {d}"),
            None => ", not homogeneous".into(),
        }
    );
    if let Some(m) = &report.analyses.minexp {
        let b = &m.bound;
        let shown = if b.exact {
            b.lo.clone()
        } else {
            format!("[{}, {}]", b.lo, b.hi)
        };
        println!("minimal exponent ({}): {}", m.scope, shown);
        if let Some(c) = &m.cone_point {
            let shown = if c.exact {
                c.lo.clone()
            } else {
                format!("[{}, {}]", c.lo, c.hi)
            };
            println!("  at the cone point: {shown}");
        }
        let cl = &m.classification;
        if cl.smooth {
            println!("  classification: smooth");
        } else {
            let mld = match cl.mld_lower.as_str() {
                "none" => String::new(),
                "unbounded" => ", mld unbounded".into(),
                k => format!(", mld >= {}", k.parse::<u64>().map(|k| k + 1).unwrap_or(0)),
            };
            println!(
                "  classification: du-bois level {}, rational level {}{}, ade {}, terminal {}{}",
                cl.m_du_bois,
                cl.m_rational,
                cl.liminal_level
                    .map(|l| format!(", {l}-liminal"))
                    .unwrap_or_default(),
                flag(cl.ade),
                flag(cl.terminal),
                mld
            );
        }
    }
    if let Some(g) = &report.analyses.git {
        println!("torus check: {}", g.torus.kind);
        let color = match g.verdict.kind.as_str() {
            "Stable" | "Semistable" => Color::Green,
            "Unstable" | "NotStable" => Color::Red,
            _ => Color::Yellow,
        };
        let mut line = format!("GIT verdict: {}", paint(&g.verdict.kind, color));
        if let Some(a) = &g.verdict.alpha_lower {
            line.push_str(&format!(" (alpha > threshold, lower bound {a})"));
        }
        if let Some(a) = &g.verdict.alpha_exact {
            line.push_str(&format!(" (alpha = {a} exactly at the threshold)"));
        }
        if let Some(c) = &g.verdict.certificate {
            line.push_str(&format!(
                " (weight {:?}, margin {}, {})",
                c.w, c.margin, c.strictness
            ));
        }
        println!("{line}");
        if let Some(inf) = &g.cubic_semistable_inference {
            println!(
                "  semistable-cubic inference: alpha >= {}{}",
                inf.alpha_lower,
                if inf.terminal {
                    ", terminal singularities"
                } else {
                    ""
                }
            );
        }
        for o in &g.obstructions {
            println!(
                "  obstruction: {} ({}){}",
                o.kind,
                o.detail,
                if o.has_certificate {
                    " -> certificate"
                } else {
                    ""
                }
            );
        }
    }
    if let Some(h) = &report.analyses.hodge {
        if let Some(level) = h.cy_level {
            println!("Calabi-Yau type of level m = {level}");
        }
        if let Some(row) = &h.smooth_middle_hodge {
            println!("smooth middle Hodge numbers: {row:?}");
        }
        if let Some(core) = &h.core {
            println!(
                "core: weight {}, twist {}, {}",
                core.weight, core.twist, core.label
            );
        }
        if let Some(l) = &h.liminal_locus {
            println!(
                "liminal locus: {} maximal coordinate cells in P^{}",
                l.cell_count, l.ambient_dim
            );
        }
        if let Some(row) = &h.locus_cohomology {
            println!("locus structure-sheaf cohomology: {row:?}");
        }
        if let Some(row) = &h.hodge_du_bois_row {
            println!("corrected Hodge-Du Bois row: {row:?}");
        }
        if let Some(note) = &h.note {
            println!("hodge: {note}");
        }
    }
    if let Some(d) = &report.analyses.degeneration {
        if let Some(core) = &d.core {
            println!(
                "degeneration core: weight {}, twist {}, {}",
                core.weight, core.twist, core.label
            );
        }
        if let Some(k) = d.nilpotency_index {
            match k {
                1 => println!("nilpotency index: N = 0"),
                2 => println!("nilpotency index: N != 0, N^2 = 0"),
                k => println!("nilpotency index: N^{} != 0, N^{k} = 0", k - 1),
            }
        }
        if let Some(m) = d.maximal_degeneration {
            println!("maximal degeneration: {m}");
        }
        if let Some(note) = &d.note {
            println!("degeneration: {note}");
        }
    }
}

fn flag(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    }
}
