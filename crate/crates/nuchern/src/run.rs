//! Command dispatch: each command runs one pipeline and returns its checks.

use std::time::Instant;

use nuchern_core::charclass::{
    ber_multiplicativity_check, curvature_suite, CurvatureInstance, SyntheticCocycle,
};
use nuchern_core::{atlas, nuclass, properties};
use nuchern_core::{BranchWindow, ChartAtlas, Check, Detail, Report, Result as CoreResult, TruncationPolicy};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::parse::parse_element;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("bad configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Algebra(#[from] nuchern_core::Error),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Command {
    Atlas,
    VerifyGluing,
    VerifyCocycle,
    NuClass,
    ExampleP21,
    Global2Form,
    Curvature,
    Properties,
    All,
}

impl Command {
    pub const PIPELINES: [Command; 8] = [
        Command::Atlas,
        Command::VerifyGluing,
        Command::VerifyCocycle,
        Command::NuClass,
        Command::ExampleP21,
        Command::Global2Form,
        Command::Curvature,
        Command::Properties,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Atlas => "atlas",
            Command::VerifyGluing => "verify-gluing",
            Command::VerifyCocycle => "verify-cocycle",
            Command::NuClass => "nu-class",
            Command::ExampleP21 => "example-p21",
            Command::Global2Form => "global-2form",
            Command::Curvature => "curvature",
            Command::Properties => "properties",
            Command::All => "all",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::PIPELINES.into_iter().chain([Command::All]).find(|c| c.name() == s)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Every knob of a run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub charts: usize,
    pub seed: u64,
    pub samples: usize,
    pub max_degree: u8,
    pub branch: BranchWindow,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: Command::All,
            m: 2,
            n: 1,
            k: 2,
            l: 1,
            charts: 3,
            seed: 42,
            samples: 100,
            max_degree: 6,
            branch: BranchWindow::ZeroTwoPi,
            format: Format::Text,
        }
    }
}

/// Largest `k` with `Str(R^k)` checked.
pub const MAX_POWER: u32 = 3;
/// Numeric Berezinian trials.
pub const BER_TRIALS: usize = 200;
/// Minimum number of right-inverse draws.
pub const RIGHT_INVERSE_DRAWS: usize = 1000;

impl RunConfig {
    pub fn validate(&self) -> Result<(), RunError> {
        let bad = |msg: &str| Err(RunError::BadConfig(msg.into()));
        if self.m == 0 || self.n == 0 {
            return bad("--m and --n must be at least 1");
        }
        if self.m + self.n > 8 {
            return bad("--m + --n must be at most 8");
        }
        if self.k == 0 {
            return bad("--k must be at least 1");
        }
        if self.charts < 2 {
            return bad("--charts must be at least 2");
        }
        if self.samples == 0 {
            return bad("--samples must be at least 1");
        }
        if self.max_degree < 2 {
            return bad("--max-degree must be at least 2");
        }
        Ok(())
    }

    pub fn policy(&self) -> TruncationPolicy {
        TruncationPolicy { max_degree: self.max_degree }
    }

    /// Largest power used by the curvature suite at this truncation.
    pub fn kmax(&self) -> u32 {
        MAX_POWER.min(u32::from(self.max_degree) / 2)
    }

    fn details(&self) -> Vec<(String, Detail)> {
        let int = |n: usize| Detail::Integer(n as i64);
        vec![
            ("m".into(), int(self.m)),
            ("n".into(), int(self.n)),
            ("k".into(), int(self.k)),
            ("l".into(), int(self.l)),
            ("charts".into(), int(self.charts)),
            ("seed".into(), Detail::Text(self.seed.to_string())),
            ("samples".into(), int(self.samples)),
            ("max_degree".into(), int(usize::from(self.max_degree))),
            ("branch".into(), Detail::Text(self.branch.label().into())),
        ]
    }

    /// Independent stream per pipeline so `all` reproduces each command.
    fn rng(&self, command: Command) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(command as u64);
        rng
    }
}

fn fail_on_error(report: &mut Report, name: String, outcome: CoreResult<Report>) {
    match outcome {
        Ok(r) => report.extend(r),
        Err(err) => report.push(Check::fail(name, err)),
    }
}

fn atlas_for(config: &RunConfig) -> Result<ChartAtlas, RunError> {
    Ok(ChartAtlas::new(config.m, config.n)?)
}

fn tag(config: &RunConfig) -> String {
    format!("p{}|{}", config.m, config.n)
}

fn run_atlas(config: &RunConfig) -> Result<Report, RunError> {
    let atlas = atlas_for(config)?;
    let mut report = Report::new("atlas");
    for i in 1..=atlas.chart_count() {
        report.push(
            Check::pass(format!("atlas/{}/label/{i}", tag(config)))
                .with("label", atlas.pretty_label(i)?)
                .with("text", atlas.write_label(i)?)
                .with("standard", atlas.is_standard(i)),
        );
    }
    Ok(report)
}

fn run_gluing(config: &RunConfig) -> Result<Report, RunError> {
    let atlas = atlas_for(config)?;
    let mut report = atlas::verify_gluing(&atlas);
    report.extend(atlas::verify_equivariance(&atlas));
    report.extend(atlas::body_transition_check(&atlas));
    Ok(report)
}

fn run_cocycle(config: &RunConfig) -> Result<Report, RunError> {
    let atlas = atlas_for(config)?;
    let mut rng = config.rng(Command::VerifyCocycle);
    Ok(atlas::verify_line_cocycle(&atlas, config.samples, &mut rng))
}

fn run_nu_class(config: &RunConfig) -> Result<Report, RunError> {
    let atlas = atlas_for(config)?;
    let mut rng = config.rng(Command::NuClass);
    let mut report = nuclass::scan_delta_eta(&atlas, config.samples, &mut rng);
    let draws = RIGHT_INVERSE_DRAWS.max(10 * config.samples);
    report.push(nuclass::right_inverse_check(&atlas, draws, &mut rng));
    report.push(nuclass::kernel_check());
    if (config.m, config.n) == (2, 1) {
        report.push(nuclass::headline_check(&atlas, config.branch, config.samples, &mut rng));
    }
    Ok(report)
}

/// Labels and transition cocycles of nu-P^{2|1} as printed in the worked
/// example, and the value of `(delta eta)_241`.
pub const EXAMPLE_LABELS: [&str; 4] = [
    "A₁ = (1, z₁⁽¹⁾, z₂⁽¹⁾ | e₁⁽¹⁾)",
    "A₂ = (z₁⁽²⁾, 1, z₂⁽²⁾ | e₁⁽²⁾)",
    "A₃ = (z₁⁽³⁾, z₂⁽³⁾, 1 | e₁⁽³⁾)",
    "A₄ = (z₁⁽⁴⁾, z₂⁽⁴⁾, ν(e₁⁽⁴⁾) | 1ν)",
];

pub const EXAMPLE_COCYCLES: [((usize, usize), &str); 4] = [
    ((2, 1), "(/ 1 (z 1 1))"),
    ((3, 2), "(/ 1 (z 2 2))"),
    ((4, 3), "(* nu0 (/ 1 (nue 1 3)))"),
    ((1, 4), "(* nu0 (/ 1 (z 1 4)))"),
];

fn run_example(config: &RunConfig) -> Result<Report, RunError> {
    let atlas = ChartAtlas::new(2, 1)?;
    let mut report = Report::new("example-p21");
    for (i, expected) in EXAMPLE_LABELS.iter().enumerate() {
        let got = atlas.pretty_label(i + 1)?;
        report.push(
            Check::from_bool(format!("example-p21/label/{}", i + 1), got == *expected)
                .with("expected", *expected)
                .with("observed", got),
        );
    }
    for ((i, j), text) in EXAMPLE_COCYCLES {
        let name = format!("example-p21/cocycle/h{i}{j}");
        let outcome = (|| -> Result<_, RunError> {
            let expected = parse_element(atlas.registry(), text).map_err(|e| RunError::BadConfig(e.to_string()))?;
            let got = atlas.line_cocycle(i, j)?;
            Ok((expected == got, nuchern_core::expr::write_element(atlas.registry(), &got)))
        })();
        report.push(match outcome {
            Ok((ok, got)) => Check::from_bool(name, ok).with("expected", text).with("observed", got),
            Err(err) => Check::fail(name, err),
        });
    }
    let mut rng = config.rng(Command::ExampleP21);
    let mut headline = nuclass::headline_check(&atlas, BranchWindow::ZeroTwoPi, config.samples, &mut rng);
    headline.name = "example-p21/delta-eta/2-4-1".into();
    report.push(headline);
    Ok(report)
}

fn run_global(config: &RunConfig) -> Result<Report, RunError> {
    let mut atlas = atlas_for(config)?;
    Ok(nuclass::verify_global_form(&mut atlas, config.policy()))
}

fn run_curvature(config: &RunConfig) -> Result<Report, RunError> {
    let mut report = Report::new("curvature");
    let cocycle = SyntheticCocycle::new(config.k, config.l, config.charts, config.seed)?;
    let dims = cocycle.dims();
    let charts: Vec<usize> = (1..=config.charts).collect();
    let suite = CurvatureInstance::build(cocycle, config.policy()).and_then(|instance| curvature_suite(&instance, config.kmax(), &charts));
    fail_on_error(&mut report, format!("curvature/{dims}x{}/suite", config.charts), suite);
    match ber_multiplicativity_check(dims, BER_TRIALS, config.seed) {
        Ok(check) => report.push(check),
        Err(err) => report.push(Check::fail(format!("curvature/ber-multiplicative/{dims}"), err)),
    }
    Ok(report)
}

fn run_properties(config: &RunConfig) -> Result<Report, RunError> {
    Ok(properties::run(config.samples, config.seed)?)
}

fn run_pipeline(command: Command, config: &RunConfig) -> Result<Report, RunError> {
    let start = Instant::now();
    let mut report = match command {
        Command::Atlas => run_atlas(config),
        Command::VerifyGluing => run_gluing(config),
        Command::VerifyCocycle => run_cocycle(config),
        Command::NuClass => run_nu_class(config),
        Command::ExampleP21 => run_example(config),
        Command::Global2Form => run_global(config),
        Command::Curvature => run_curvature(config),
        Command::Properties => run_properties(config),
        Command::All => unreachable!("expanded by run"),
    }?;
    let elapsed = start.elapsed().as_secs_f64();
    for check in &mut report.checks {
        check.timing = Some(elapsed);
    }
    Ok(report)
}

/// Runs the configured command, one thread per pipeline; checks are
/// ordered by name.
pub fn run(config: &RunConfig) -> Result<Report, RunError> {
    config.validate()?;
    let mut report = Report::new(config.command.name());
    report.config = config.details();
    let commands: Vec<Command> = match config.command {
        Command::All => Command::PIPELINES.to_vec(),
        c => vec![c],
    };
    let results: Vec<Result<Report, RunError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = commands.iter().map(|&c| scope.spawn(move || run_pipeline(c, config))).collect();
        handles.into_iter().map(|h| h.join().expect("pipeline thread panicked")).collect()
    });
    for r in results {
        report.extend(r?);
    }
    report.sort();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_names_round_trip() {
        for c in Command::PIPELINES.into_iter().chain([Command::All]) {
            assert_eq!(Command::parse(c.name()), Some(c));
        }
        assert_eq!(Command::parse("nope"), None);
    }

    #[test]
    fn validation() {
        let ok = RunConfig::default();
        assert!(ok.validate().is_ok());
        assert_eq!(ok.kmax(), 3);
        for bad in [
            RunConfig { m: 0, ..ok.clone() },
            RunConfig { charts: 1, ..ok.clone() },
            RunConfig { max_degree: 1, ..ok.clone() },
            RunConfig { samples: 0, ..ok.clone() },
        ] {
            assert!(matches!(run(&bad), Err(RunError::BadConfig(_))));
        }
    }

    #[test]
    fn example_checks_pass() {
        let config = RunConfig { command: Command::ExampleP21, samples: 10, ..RunConfig::default() };
        let report = run(&config).unwrap();
        for c in &report.checks {
            if c.name != "example-p21/delta-eta/2-4-1" {
                assert!(c.passed(), "{c:?}");
            }
        }
        assert_eq!(report.checks.len(), 9);
    }
}
