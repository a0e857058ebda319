//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero when a criterion outside `KNOWN_RED` fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nuchern_core::atlas::{body_transition_check, verify_gluing, verify_line_cocycle};
use nuchern_core::charclass::{ber_multiplicativity_check, curvature_suite, CurvatureInstance, SyntheticCocycle};
use nuchern_core::nuclass::{
    assignments, headline_expected, kernel_check, right_inverse_check, summarize_cell, verify_global_form,
    TripleEvaluator,
};
use nuchern_core::properties::{catalogue, run_property};
use nuchern_core::{BranchWindow, ChartAtlas, Check, Detail, Dims, Point, Report, TruncationPolicy};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 42;

const ATLAS_LIMIT: Duration = Duration::from_secs(1);
const GLUING_LIMIT: Duration = Duration::from_secs(30);
const CURVATURE_LIMIT: Duration = Duration::from_secs(60);
const TOTAL_LIMIT: Duration = Duration::from_secs(120);

const COCYCLE_POINTS: usize = 100;
const COCYCLE_RESIDUAL: f64 = 1e-12;

const HEADLINE_POINTS_PER_REGION: usize = 100;
const HEADLINE_DRAWS: usize = 4000;
const SNAP_RESIDUAL: f64 = 1e-9;

const RIGHT_INVERSE_DRAWS: usize = 1000;
const RIGHT_INVERSE_ERROR: f64 = 1e-10;

const KERNEL_CASES: i64 = 49;

const CURVATURE_DIMS: (usize, usize) = (2, 1);
const CURVATURE_CHARTS: usize = 3;
const CURVATURE_TRUNCATION: u8 = 6;
const CURVATURE_POWERS: u32 = 3;
const BER_TRIALS: usize = 200;
const BER_RELATIVE_ERROR: f64 = 1e-9;

const PROPERTY_TRIALS: usize = 100;
const PROPERTY_SUITES: [&str; 5] = ["supercommutativity", "nu-involution", "d-squared", "invert", "substitute-morphism"];

/// Criteria expected to fail; they still print FAIL.
const KNOWN_RED: &[u32] = &[4];

const GOLDEN_LABELS: [&str; 4] = [
    "A₁ = (1, z₁⁽¹⁾, z₂⁽¹⁾ | e₁⁽¹⁾)",
    "A₂ = (z₁⁽²⁾, 1, z₂⁽²⁾ | e₁⁽²⁾)",
    "A₃ = (z₁⁽³⁾, z₂⁽³⁾, 1 | e₁⁽³⁾)",
    "A₄ = (z₁⁽⁴⁾, z₂⁽⁴⁾, ν(e₁⁽⁴⁾) | 1ν)",
];

struct Verdict {
    pass: bool,
    note: String,
}

impl Verdict {
    fn new(pass: bool, note: impl Into<String>) -> Self {
        Verdict { pass, note: note.into() }
    }
}

fn number(check: &Check, key: &str) -> f64 {
    match check.detail(key) {
        Some(Detail::Number(x)) => *x,
        Some(Detail::Integer(n)) => *n as f64,
        _ => f64::NAN,
    }
}

fn integer(check: &Check, key: &str) -> Option<i64> {
    match check.detail(key) {
        Some(Detail::Integer(n)) => Some(*n),
        _ => None,
    }
}

fn count(report: &Report, part: &str) -> usize {
    report.checks.iter().filter(|c| c.name.contains(part)).count()
}

fn failing(report: &Report) -> String {
    let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).take(3).collect();
    if names.is_empty() {
        String::new()
    } else {
        format!(" failing: {}", names.join(", "))
    }
}

fn atlas(m: usize, n: usize) -> ChartAtlas {
    ChartAtlas::new(m, n).expect("atlas builds")
}

fn atlas_labels() -> Verdict {
    let atlas = atlas(2, 1);
    let labels: Vec<String> = (1..=atlas.chart_count()).map(|i| atlas.pretty_label(i).unwrap_or_default()).collect();
    Verdict::new(labels == GOLDEN_LABELS, format!("labels={labels:?}"))
}

fn gluing() -> Verdict {
    let mut pass = true;
    let mut notes = Vec::new();
    for (m, n) in [(2, 1), (3, 2)] {
        let atlas = atlas(m, n);
        let c = atlas.chart_count();
        let report = verify_gluing(&atlas);
        let shape =
            count(&report, "/identity/") == c && count(&report, "/inverse/") == c * (c - 1) && count(&report, "/compose/") == c * c * c;
        pass &= shape && report.passed();
        notes.push(format!("p{m}|{n}: {} checks{}", report.checks.len(), failing(&report)));
    }
    Verdict::new(pass, notes.join("; "))
}

fn line_cocycle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pass = true;
    let mut worst: f64 = 0.0;
    let mut triples = 0;
    for (m, n) in [(2, 1), (3, 2)] {
        let atlas = atlas(m, n);
        let c = atlas.chart_count();
        let report = verify_line_cocycle(&atlas, COCYCLE_POINTS, &mut rng);
        for check in report.checks.iter().filter(|c| c.name.contains("/triple/")) {
            let residual = number(check, "max_residual");
            let exact = matches!(check.detail("exact"), Some(Detail::Bool(true)));
            pass &= exact && residual <= COCYCLE_RESIDUAL;
            worst = worst.max(residual);
            triples += 1;
        }
        pass &= count(&report, "/triple/") == c * c * c && report.passed();
    }
    Verdict::new(pass, format!("triples={triples} max_residual={worst:e}"))
}

/// Default windows `(0, 2pi)` for the value; every window assignment for
/// constancy, with at least `HEADLINE_POINTS_PER_REGION` points per region.
fn headline() -> Verdict {
    let atlas = atlas(2, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let evaluator = match TripleEvaluator::new(&atlas, 2, 4, 1) {
        Ok(e) => e,
        Err(err) => return Verdict::new(false, err.to_string()),
    };
    let points: Vec<Point> = (0..HEADLINE_DRAWS).map(|_| atlas.random_point(1, &mut rng)).collect();
    let mut constant = true;
    let mut fewest = usize::MAX;
    let mut worst: f64 = 0.0;
    for windows in assignments() {
        let summary = summarize_cell(&evaluator, &windows, &points);
        constant &= summary.constant();
        fewest = fewest.min(summary.regions.values().map(|r| r.1).min().unwrap_or(0));
        worst = worst.max(summary.worst_residual());
    }
    let default = summarize_cell(&evaluator, &[BranchWindow::ZeroTwoPi; 3], &points);
    let values: Vec<String> = default.values().iter().map(|v| format!("({}, {})", v.p(), v.q())).collect();
    let expected = headline_expected();
    let value_ok = default.constant() && default.values() == [expected];
    let pass = value_ok && constant && fewest >= HEADLINE_POINTS_PER_REGION && worst <= SNAP_RESIDUAL;
    Verdict::new(
        pass,
        format!(
            "expected=({}, {}) observed={values:?} constant={constant} min_region_points={fewest} max_residual={worst:e}",
            expected.p(),
            expected.q()
        ),
    )
}

fn right_inverse() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let check = right_inverse_check(&atlas(2, 1), RIGHT_INVERSE_DRAWS, &mut rng);
    let draws = integer(&check, "draws").unwrap_or(0);
    let error = number(&check, "max_abs_error");
    let pass = check.passed() && draws >= RIGHT_INVERSE_DRAWS as i64 && error <= RIGHT_INVERSE_ERROR && integer(&check, "errors") == Some(0);
    Verdict::new(pass, format!("draws={draws} max_abs_error={error:e}"))
}

fn kernel() -> Verdict {
    let check = kernel_check();
    let cases = integer(&check, "cases");
    let clean = matches!(check.detail("mismatches"), Some(Detail::List(v)) if v.is_empty());
    Verdict::new(check.passed() && cases == Some(KERNEL_CASES) && clean, format!("cases={cases:?}"))
}

fn global_form() -> Verdict {
    let mut atlas = atlas(2, 1);
    let c = atlas.chart_count();
    let report = verify_global_form(&mut atlas, TruncationPolicy::default());
    let shape = count(&report, "/omega/") == c * (c - 1) && count(&report, "/curvature/") == c * (c - 1) && count(&report, "/closed/") == c;
    Verdict::new(shape && report.passed(), format!("{} checks{}", report.checks.len(), failing(&report)))
}

fn curvature() -> Verdict {
    let (k, l) = CURVATURE_DIMS;
    let policy = TruncationPolicy { max_degree: CURVATURE_TRUNCATION };
    let charts: Vec<usize> = (1..=CURVATURE_CHARTS).collect();
    let report = SyntheticCocycle::new(k, l, CURVATURE_CHARTS, SEED)
        .and_then(|cocycle| CurvatureInstance::build(cocycle, policy))
        .and_then(|instance| curvature_suite(&instance, CURVATURE_POWERS, &charts));
    let report = match report {
        Ok(r) => r,
        Err(err) => return Verdict::new(false, err.to_string()),
    };
    let n = CURVATURE_CHARTS;
    let powers = CURVATURE_POWERS as usize;
    let shape = [
        ("/three-sum/", n),
        ("/bianchi/", n),
        ("/closed/", n * powers),
        ("/gauge/", n * (n - 1)),
        ("/newton/", n),
        ("/exp-str-log/", n),
    ]
    .iter()
    .all(|&(part, expected)| count(&report, part) == expected);
    let ber = ber_multiplicativity_check(Dims::new(k, l), BER_TRIALS, SEED).unwrap_or_else(|e| Check::fail("ber", e));
    let ber_error = number(&ber, "max_relative_error");
    let ber_ok = ber.passed() && integer(&ber, "trials") == Some(BER_TRIALS as i64) && ber_error <= BER_RELATIVE_ERROR;
    Verdict::new(
        shape && report.passed() && ber_ok,
        format!("{} symbolic checks{} ber_max_relative_error={ber_error:e}", report.checks.len(), failing(&report)),
    )
}

fn classical_reduction() -> Verdict {
    let body = body_transition_check(&atlas(2, 1));
    let mut pass = body.passed() && !body.checks.is_empty();
    let suites = catalogue();
    let mut notes = vec![format!("body checks={}", body.checks.len())];
    for name in PROPERTY_SUITES {
        let outcome = suites
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| "missing suite".to_string())
            .and_then(|(_, p)| run_property(name, *p, PROPERTY_TRIALS, SEED).map_err(|e| e.to_string()));
        let ok = match &outcome {
            Ok(check) => check.passed() && integer(check, "trials") == Some(PROPERTY_TRIALS as i64) && integer(check, "failures") == Some(0),
            Err(_) => false,
        };
        pass &= ok;
        notes.push(format!("{name}={}", if ok { "ok" } else { "bad" }));
    }
    Verdict::new(pass, notes.join(" "))
}

type Criterion = (u32, &'static str, Option<Duration>, fn() -> Verdict);

const CRITERIA: [Criterion; 9] = [
    (1, "atlas golden labels", Some(ATLAS_LIMIT), atlas_labels),
    (2, "gluing identities", Some(GLUING_LIMIT), gluing),
    (3, "line-bundle cocycle", None, line_cocycle),
    (4, "headline delta-eta value", None, headline),
    (5, "right-inverse law", None, right_inverse),
    (6, "kernel law", None, kernel),
    (7, "global 2-form", None, global_form),
    (8, "curvature suite", Some(CURVATURE_LIMIT), curvature),
    (9, "classical reduction and properties", None, classical_reduction),
];

fn main() -> ExitCode {
    let start = Instant::now();
    let mut unexpected = Vec::new();
    for (id, title, limit, criterion) in CRITERIA {
        let t = Instant::now();
        let verdict = criterion();
        let elapsed = t.elapsed();
        let in_time = limit.is_none_or(|l| elapsed < l);
        let pass = verdict.pass && in_time;
        let status = if pass { "PASS" } else { "FAIL" };
        let mut line = format!("{status} criterion {id}: {title} ({:.2}s", elapsed.as_secs_f64());
        if let Some(l) = limit {
            line.push_str(&format!(", limit {}s", l.as_secs()));
        }
        line.push_str(&format!(") {}", verdict.note));
        if !pass && KNOWN_RED.contains(&id) {
            line.push_str(" [known red]");
        }
        println!("{line}");
        if !pass && !KNOWN_RED.contains(&id) {
            unexpected.push(id);
        }
    }
    let total = start.elapsed();
    let total_ok = total < TOTAL_LIMIT;
    println!(
        "{} total runtime ({:.2}s, limit {}s)",
        if total_ok { "PASS" } else { "FAIL" },
        total.as_secs_f64(),
        TOTAL_LIMIT.as_secs()
    );
    if unexpected.is_empty() && total_ok {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
