//! Acceptance suite: every criterion of the build contract, exercised at
//! its stated tolerance (exact arithmetic, zero tolerance unless a runtime
//! budget is given). Each test prints one pass line; a failed assertion is
//! the fail line.

use hyperstab_cli::corpus::{corpus, run_fixture};
use hyperstab_cli::pipeline::{run, AnalysisRequest};
use hyperstab_core::hm::{verify_destabilizer, WeightSystem};
use hyperstab_core::hodge::{
    arrangement_cohomology, hodge_du_bois_row, smooth_middle_hodge,
};
use hyperstab_core::minexp::{
    classify, liminal_locus_structured, minexp_cone, minexp_local, weight_upper_bound, ExtRat,
    MinExpBound,
};
use hyperstab_core::newton::{
    barycenter_membership, verify_membership, MembershipCertificate,
};
use hyperstab_core::polycore::{multiplicity_at, parse_polynomial, Point};
use hyperstab_core::{rat, rat_int, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn origin(n: usize) -> Point {
    Point::affine(vec![rat_int(0); n])
}

fn exact_value(b: &MinExpBound) -> Rat {
    assert!(b.is_exact(), "bound must be exact, got {b}");
    b.lo.as_finite().expect("finite").clone()
}

fn pass(n: u32, what: &str) {
    println!("acceptance criterion {n} ({what}): PASS");
}

#[test]
fn criterion_01_smooth_hodge_numbers_of_the_cubic_sevenfold() {
    let start = Instant::now();
    let h = smooth_middle_hodge(8, 3).unwrap();
    assert_eq!(h.entries, vec![0, 0, 1, 84, 84, 1, 0, 0]);
    assert!(
        start.elapsed().as_secs_f64() < 1.0,
        "took {:?}",
        start.elapsed()
    );
    pass(1, "middle Hodge numbers (8,3) = 0,0,1,84,84,1,0,0 in under 1s");
}

#[test]
fn criterion_02_cubic_sevenfold_suite() {
    let start = Instant::now();
    let cases = [
        (
            "fermat-cubic-7fold",
            None,               // alpha: smooth / infinite
            "Stable",
            7u32,               // core weight
            1u32,               // nilpotency
            None,               // maximal flag: not applicable
        ),
        (
            "cone-fermat4fold-nc-7fold",
            Some(rat_int(3)),
            "Semistable",
            6,
            2,
            Some(false),
        ),
        (
            "cone-elliptic-double-nc-7fold",
            Some(rat_int(3)),
            "Semistable",
            5,
            3,
            Some(false),
        ),
        (
            "triple-nc-cubic-7fold",
            Some(rat_int(3)),
            "Semistable",
            4,
            4,
            Some(true),
        ),
    ];
    let fixtures = corpus();
    for (name, alpha, verdict, weight, nilpotency, maximal) in cases {
        let fx = fixtures
            .iter()
            .find(|f| f.name == name)
            .unwrap_or_else(|| panic!("fixture {name} missing"));
        let report = run(&AnalysisRequest::all(fx.polynomial.clone(), fx.num_vars)).unwrap();
        let minexp = report.analyses.minexp.as_ref().unwrap();
        match &alpha {
            None => {
                assert!(minexp.bound.exact && minexp.bound.lo == "inf", "{name}");
                assert!(minexp.classification.smooth, "{name}: must classify smooth");
            }
            Some(v) => {
                assert!(minexp.bound.exact, "{name}");
                assert_eq!(minexp.bound.lo, v.to_string(), "{name}");
                assert_eq!(
                    minexp.classification.liminal_level,
                    Some(2),
                    "{name}: must be 2-liminal"
                );
            }
        }
        let git = report.analyses.git.as_ref().unwrap();
        assert_eq!(git.verdict.kind, verdict, "{name}");
        let degeneration = report.analyses.degeneration.as_ref().unwrap();
        let core = degeneration.core.as_ref().unwrap();
        assert_eq!(core.weight, weight, "{name}");
        assert_eq!(degeneration.nilpotency_index, Some(nilpotency), "{name}");
        assert_eq!(degeneration.maximal_degeneration, maximal, "{name}");
        // informational inference in the verdict payload: semistable cubics
        // in this ambient dimension satisfy alpha >= 5/3 and are terminal
        let inference = git.cubic_semistable_inference.as_ref().unwrap();
        assert_eq!(inference.alpha_lower, "5/3", "{name}");
        assert!(inference.terminal, "{name}");
    }
    assert!(
        start.elapsed().as_secs_f64() < 5.0,
        "took {:?}",
        start.elapsed()
    );
    pass(
        2,
        "cubic sevenfold cases: exponents inf/3/3/3, verdicts, cores 7/6/5/4, N-indices 1/2/3/4, in under 5s",
    );
}

#[test]
fn criterion_03_cone_and_sum_paths_agree_on_fermat_forms() {
    let mut agreements = 0;
    for d in 2u32..=6 {
        for k in 2usize..=10 {
            let text = (0..k)
                .map(|i| format!("x{i}^{d}"))
                .collect::<Vec<_>>()
                .join(" + ");
            let f = parse_polynomial(&text, k).unwrap();
            let expected = rat(k as i64, d as i64);
            let via_cone = exact_value(&minexp_cone(&f).unwrap());
            let via_sum = exact_value(&minexp_local(&f, &origin(k)).unwrap());
            assert_eq!(via_cone, expected, "(d, k) = ({d}, {k})");
            assert_eq!(via_sum, expected, "(d, k) = ({d}, {k})");
            agreements += 1;
        }
    }
    assert_eq!(agreements, 45);
    pass(3, "cone rule and disjoint-sum rule agree 45/45 on k/d");
}

#[test]
fn criterion_04_ade_classifier_on_suspensions() {
    // x^{k+1} plus a full-rank quadric in dimensions e = 2..5
    for k in 1u32..=6 {
        for e in 2usize..=5 {
            let mut parts = vec![format!("x0^{}", k + 1)];
            for i in 1..=e {
                parts.push(format!("x{i}^2"));
            }
            let f = parse_polynomial(&parts.join(" + "), e + 1).unwrap();
            let b = minexp_local(&f, &origin(e + 1)).unwrap();
            let value = exact_value(&b);
            let expected = rat(1, (k + 1) as i64) + rat(e as i64, 2);
            assert_eq!(value, expected);
            let class = classify(&b, e + 1);
            let is_ade = value > rat(e as i64, 2);
            assert_eq!(class.ade, Some(is_ade), "A{k} suspension in dim {e}");
            assert!(is_ade, "suspension exponents always exceed e/2");
        }
    }
    // boundary value 5/3 for the three-dimensional A5 point
    let f = parse_polynomial("x0^6 + x1^2 + x2^2 + x3^2", 4).unwrap();
    let b = minexp_local(&f, &origin(4)).unwrap();
    assert_eq!(exact_value(&b), rat(5, 3));
    assert_eq!(classify(&b, 4).terminal, Some(true));
    // a non-ADE control at the threshold: the cone over a plane cubic has
    // exponent exactly e/2 = 1 in dimension 2
    let cone = parse_polynomial("x0^3 + x1^3 + x2^3", 3).unwrap();
    let b = minexp_local(&cone, &origin(3)).unwrap();
    assert_eq!(exact_value(&b), rat_int(1));
    assert_eq!(classify(&b, 3).ade, Some(false));
    pass(4, "ADE iff alpha > e/2 on all suspensions; A5 boundary 5/3");
}

#[test]
fn criterion_05_instability_certificates_on_the_obstruction_families() {
    let fixtures = corpus();
    let mut checked = 0;
    for fx in fixtures.iter().filter(|f| {
        f.name.starts_with("contains-plane-cubic-") || f.name.starts_with("sing-plane-squared-")
    }) {
        let outcome = run_fixture(fx).unwrap();
        assert!(outcome.pass, "{}: fixture checks failed", fx.name);
        let git = outcome.report.analyses.git.as_ref().unwrap();
        assert_eq!(git.verdict.kind, "Unstable", "{}", fx.name);
        let cert = git.verdict.certificate.as_ref().unwrap();
        // margin strictly positive and the certificate re-verifies
        let margin: Rat = cert.margin.parse().unwrap();
        assert!(margin > rat_int(0), "{}", fx.name);
        let f = parse_polynomial(&fx.polynomial, fx.num_vars).unwrap();
        let rebuilt = rebuild_certificate(cert, fx.num_vars);
        assert!(
            verify_destabilizer(&f, &rebuilt).unwrap(),
            "{}: certificate must re-verify in isolation",
            fx.name
        );
        checked += 1;
    }
    assert_eq!(checked, 6, "both families for n = 6, 7, 8");
    pass(5, "all 6 obstruction-family cubics are Unstable with verified positive margins");
}

fn rebuild_certificate(
    cert: &hyperstab_cli::report::CertificateJson,
    n: usize,
) -> hyperstab_core::hm::DestabilizerCertificate {
    use hyperstab_core::polycore::LinearChange;
    let matrix: Vec<Vec<Rat>> = cert
        .g
        .iter()
        .map(|row| row.iter().map(|s| s.parse().unwrap()).collect())
        .collect();
    assert_eq!(matrix.len(), n);
    hyperstab_core::hm::DestabilizerCertificate {
        g: LinearChange::new(matrix).unwrap(),
        w: WeightSystem::new(cert.w.iter().map(|&c| rat_int(c)).collect()),
        margin: cert.margin.parse().unwrap(),
        strictness: match cert.strictness.as_str() {
            "semistability-violating" => hyperstab_core::hm::Strictness::SemistabilityViolating,
            _ => hyperstab_core::hm::Strictness::StabilityViolating,
        },
    }
}

#[test]
fn criterion_06_lp_certificate_soundness_on_random_clouds() {
    use hyperstab_core::newton::ExponentCloud;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut failures = 0;
    for _ in 0..200 {
        let dim = rng.gen_range(1usize..=6);
        let npts = rng.gen_range(1usize..=25);
        let points: Vec<Vec<u32>> = (0..npts)
            .map(|_| (0..dim).map(|_| rng.gen_range(0u32..=8)).collect())
            .collect();
        let cloud = ExponentCloud::new(points, dim).unwrap();
        let target: Vec<Rat> = (0..dim)
            .map(|_| rat(rng.gen_range(0i64..=32), 4))
            .collect();
        let cert = barycenter_membership(&cloud, &target).unwrap();
        if !verify_membership(&cert, &cloud, &target) {
            failures += 1;
            continue;
        }
        if let MembershipCertificate::Inside { .. } = cert {
            // 100 random weight probes can never beat the barycenter
            for _ in 0..100 {
                let w: Vec<Rat> = (0..dim)
                    .map(|_| rat(rng.gen_range(-12i64..=12), rng.gen_range(1i64..=3)))
                    .collect();
                let min_wv = cloud
                    .points
                    .iter()
                    .map(|p| {
                        p.iter()
                            .zip(&w)
                            .fold(rat_int(0), |acc, (&e, wi)| acc + wi * rat_int(e as i64))
                    })
                    .min()
                    .unwrap();
                let wt = w
                    .iter()
                    .zip(&target)
                    .fold(rat_int(0), |acc, (wi, ti)| acc + wi * ti);
                if min_wv > wt {
                    failures += 1;
                }
            }
        }
    }
    assert_eq!(failures, 0);
    assert!(
        start.elapsed().as_secs_f64() < 10.0,
        "took {:?}",
        start.elapsed()
    );
    pass(6, "200 random clouds: certificates exact, 0 weight-probe violations, under 10s");
}

#[test]
fn criterion_07_bound_soundness_and_the_chordal_interval() {
    let mut rng = ChaCha8Rng::seed_from_u64(7_000);
    // engine-exact corpus entries singular at the affine origin
    let entries = [
        ("x0*x1*x2 + x3*x4*x5 + x6*x7*x8", 9),
        ("x0^3+x1^3+x2^3+x3^3+x4^3+x5^3+x6*x7*x8", 9),
        ("x0^6 + x1^2 + x2^2 + x3^2", 4),
        ("x0^3 + x1^3 + x2^2*x3", 4),
        ("x0^2*x1", 2),
        ("x0*x1*x2*x3 + x4*x5*x6*x7", 8),
    ];
    for (text, n) in entries {
        let f = parse_polynomial(text, n).unwrap();
        let b = minexp_local(&f, &origin(n)).unwrap();
        let value = exact_value(&b);
        let mult = multiplicity_at(&f, &origin(n)).unwrap();
        assert!(rat(n as i64, mult as i64) >= value, "{text}");
        for _ in 0..20 {
            let w = WeightSystem::new(
                (0..n)
                    .map(|_| rat(rng.gen_range(1i64..=9), rng.gen_range(1i64..=3)))
                    .collect(),
            );
            let bound = weight_upper_bound(&f, &w, &origin(n)).unwrap();
            assert!(bound >= value, "{text}: weight bound {bound} < {value}");
        }
    }
    // the chordal cubic interval must contain the reference value 3/2
    let fixtures = corpus();
    let chordal = fixtures
        .iter()
        .find(|f| f.name == "chordal-cubic-3fold")
        .unwrap();
    let mut req = AnalysisRequest::all(chordal.polynomial.clone(), chordal.num_vars);
    req.hints = chordal.hints.clone();
    let report = run(&req).unwrap();
    let bound = &report.analyses.minexp.as_ref().unwrap().bound;
    let lo: Rat = bound.lo.parse().unwrap();
    let hi: Rat = bound.hi.parse().unwrap();
    assert!(lo <= rat(3, 2) && rat(3, 2) <= hi, "[{lo}, {hi}]");
    assert!(lo >= rat_int(1), "dimension bound gives at least (4-1)/3");
    pass(7, "weight and multiplicity bounds contain every exact value; chordal interval contains 3/2");
}

#[test]
fn criterion_08_corrected_row_and_connectivity_on_the_triple_nc_sevenfold() {
    let f = parse_polynomial("x0*x1*x2 + x3*x4*x5 + x6*x7*x8", 9).unwrap();
    let locus = liminal_locus_structured(&f).unwrap();
    assert_eq!(locus.cells.len(), 27, "27 coordinate planes");
    assert!(locus.cells.iter().all(|c| c.len() == 6));
    let row = arrangement_cohomology(&locus).unwrap().values;
    // connectivity is forced here: the core weight 4 is at most n-3 = 5
    assert_eq!(row[0], 1, "the locus is connected");
    let db = hodge_du_bois_row(8, 3, 2, &row).unwrap();
    // corrections: -1 at i = m+1 = 3, +1 at i = n-1-m = 5
    assert_eq!(db[3], row[0] - 1);
    assert_eq!(db[5], row.get(2).copied().unwrap_or(0) + 1);
    assert_eq!(db[2], 0, "liminal inputs have h^{{n-1-m,m}} = 0");
    pass(8, "27-cell locus, h^0 = 1, corrected row non-negative with the -1/+1 at i = 3 and 5");
}

#[test]
fn criterion_09_k3_rows() {
    for (s0, s1) in [(1u64, 0u64), (1, 1), (2, 0)] {
        let row = hodge_du_bois_row(3, 4, 0, &[s0, s1]).unwrap();
        assert_eq!(row, vec![0, s0 - 1, s1 + 1, 0], "(s0, s1) = ({s0}, {s1})");
    }
    pass(9, "K3 rows (0, s0-1, s1+1, 0) for the three sample loci");
}

#[test]
fn criterion_10_corpus_json_is_byte_identical() {
    let bin = env!("CARGO_BIN_EXE_hyperstab");
    let run_once = || {
        let out = std::process::Command::new(bin)
            .args(["corpus", "run", "--json"])
            .env_remove("HYPERSTAB_COLOR")
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "corpus run must pass");
        out.stdout
    };
    let first = run_once();
    let second = run_once();
    assert!(!first.is_empty());
    assert_eq!(first, second, "corpus JSON must be byte-identical");
    pass(10, "corpus run --json twice produces byte-identical output");
}

#[test]
fn full_corpus_passes() {
    // backstop: every bundled fixture meets its expected values
    for fx in corpus() {
        let outcome = run_fixture(&fx).unwrap();
        assert!(
            outcome.pass,
            "{}: {:?}",
            fx.name,
            outcome
                .checks
                .iter()
                .filter(|c| !c.pass)
                .collect::<Vec<_>>()
        );
    }
}

#[test]
fn verdict_monotonicity_across_the_corpus() {
    // no fixture gets a Stable verdict together with a verified
    // semistability-violating certificate
    for fx in corpus() {
        let outcome = run_fixture(&fx).unwrap();
        let Some(git) = outcome.report.analyses.git.as_ref() else {
            continue;
        };
        if git.verdict.kind == "Stable" {
            assert!(git.verdict.certificate.is_none(), "{}", fx.name);
        }
        if let Some(cert) = &git.verdict.certificate {
            let f = parse_polynomial(&fx.polynomial, fx.num_vars).unwrap();
            let rebuilt = rebuild_certificate(cert, fx.num_vars);
            assert!(verify_destabilizer(&f, &rebuilt).unwrap(), "{}", fx.name);
        }
    }
}

#[test]
fn smooth_cone_exponent_is_the_threshold() {
    // for smooth Fermat inputs the cone-point exponent equals (n+1)/d
    for (k, d) in [(9usize, 3u32), (4, 4), (4, 2), (6, 3)] {
        let text = (0..k)
            .map(|i| format!("x{i}^{d}"))
            .collect::<Vec<_>>()
            .join(" + ");
        let f = parse_polynomial(&text, k).unwrap();
        let cone = minexp_cone(&f).unwrap();
        assert_eq!(exact_value(&cone), rat(k as i64, d as i64));
        let global = hyperstab_core::minexp::minexp_global_projective(
            &f,
            &hyperstab_core::minexp::Hints::default(),
        )
        .unwrap();
        assert_eq!(global.lo, ExtRat::Infinity);
    }
}
