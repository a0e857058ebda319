//! The generalized exponential `E'`, its branch-resolved right inverse `L`
//! on the line-bundle cocycle, the coboundary values `(delta eta)_ijk`, and
//! the partition-of-unity connection and curvature forms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::Zero;
use rand::Rng;

use crate::atlas::{move_point, ChartAtlas, TransitionMap};
use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::forms::{Form, PartitionFamily, TruncationPolicy};
use crate::grassmann::{GrassmannElement, OddMonomial};
use crate::numeric::{BranchWindow, NumericGrassmann, Point};
use crate::report::{Check, Detail, Report};
use crate::scalar::GaussRat;
use crate::symbol::{SymbolId, SymbolKind};

/// Snap tolerance for kernel components.
pub const SNAP_TOLERANCE: f64 = 1e-9;

/// `p + q nu(1) nu0` with half-integer `p`, `q`, stored doubled.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KernelElement {
    pub twice_p: i64,
    pub twice_q: i64,
}

impl KernelElement {
    pub fn new(p: Rational64, q: Rational64) -> Option<Self> {
        let (tp, tq) = (p * 2, q * 2);
        (tp.is_integer() && tq.is_integer()).then(|| KernelElement { twice_p: tp.to_integer(), twice_q: tq.to_integer() })
    }

    pub fn p(self) -> Rational64 {
        Rational64::new(self.twice_p, 2)
    }

    pub fn q(self) -> Rational64 {
        Rational64::new(self.twice_q, 2)
    }

    /// `E'(p + q nu(1) nu0) = (-1)^(2p + 2q)`, computed exactly.
    pub fn image(self) -> i64 {
        if (self.twice_p + self.twice_q).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// Rounds numeric components to the nearest half-integers, failing when
    /// the residual exceeds [`SNAP_TOLERANCE`].
    pub fn snap(p: Complex64, q: f64) -> core::result::Result<(KernelElement, f64), f64> {
        let tp = libm::round(2.0 * p.re);
        let tq = libm::round(2.0 * q);
        let residual = libm::fabs(p.re - tp / 2.0).max(libm::fabs(p.im)).max(libm::fabs(q - tq / 2.0));
        if residual > SNAP_TOLERANCE {
            return Err(residual);
        }
        Ok((KernelElement { twice_p: tp as i64, twice_q: tq as i64 }, residual))
    }

    pub fn detail(self) -> Detail {
        Detail::List(alloc::vec![Detail::Fraction(self.p()), Detail::Fraction(self.q())])
    }
}

/// `L(h) = f + nu0 g` with `g = nu_g nu(1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogPreimage {
    pub f: NumericGrassmann,
    pub nu_g: Rational64,
}

impl LogPreimage {
    pub fn e_prime(&self) -> NumericGrassmann {
        e_prime_scalar(&self.f, self.nu_g)
    }
}

fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * PI)
}

fn rational_to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `exp(2 pi i (f + nu0 nu_g))`.
pub fn e_prime_scalar(f: &NumericGrassmann, nu_g: Rational64) -> NumericGrassmann {
    let shift = NumericGrassmann::nu0().scale(Complex64::new(rational_to_f64(nu_g), 0.0));
    (f + &shift).scale(two_pi_i()).exp().expect("even argument")
}

/// `E'(f + nu0 g)` for an odd `g` in the span of the odd unit, whose
/// `nu`-image is its coefficient.
pub fn e_prime(f: &NumericGrassmann, g: &NumericGrassmann, unit: SymbolId) -> Result<NumericGrassmann> {
    if f.parity() != Some(0) {
        return Err(Error::Inhomogeneous);
    }
    let mut nu_g = NumericGrassmann::zero();
    for (m, nu0, c) in g.terms() {
        if m.len() != 1 || m.symbols()[0] != unit {
            return Err(Error::UndefinedNu(format!("odd part with monomial of length {}", m.len())));
        }
        nu_g.add_term(OddMonomial::one(), nu0, c);
    }
    let arg = f + &(&NumericGrassmann::nu0() * &nu_g);
    arg.scale(two_pi_i()).exp()
}

/// Exact `E'(f + nu0 nu_g)` for quarter-integer `f` and `nu_g`, as the pair
/// `(a, b)` of the value `a + nu0 b`.
pub fn e_prime_exact(f: Rational64, nu_g: Rational64) -> Option<(GaussRat, GaussRat)> {
    let quarter = |r: Rational64| -> Option<i64> {
        let x = r * 4;
        x.is_integer().then(|| x.to_integer().rem_euclid(4))
    };
    let power = |k: i64| match k {
        0 => GaussRat::from_int(1),
        1 => GaussRat::i(),
        2 => GaussRat::from_int(-1),
        _ => -GaussRat::i(),
    };
    let base = power(quarter(f)?);
    let turn = power(quarter(nu_g)?);
    let cos = GaussRat::real(turn.re());
    let sin = GaussRat::real(turn.im());
    Some((&base * &cos, &(&base * &GaussRat::i()) * &sin))
}

/// The `nu g` constant of `L(h_ij)`: `(p(j) - p(i)) / 4`.
pub fn orientation(atlas: &ChartAtlas, i: usize, j: usize) -> Rational64 {
    Rational64::new(i64::from(atlas.index_parity(j)) - i64::from(atlas.index_parity(i)), 4)
}

/// Factor `c` in `log(c w_ij)`: `1`, `-i` or `+i` by orientation.
fn log_factor(atlas: &ChartAtlas, i: usize, j: usize) -> Complex64 {
    match (atlas.is_standard(i), atlas.is_standard(j)) {
        (true, false) => Complex64::new(0.0, -1.0),
        (false, true) => Complex64::new(0.0, 1.0),
        _ => Complex64::new(1.0, 0.0),
    }
}

/// The numeric logarithm argument `c (M'_i(A_j))^-1` at a chart-`j` point.
pub fn log_argument(atlas: &ChartAtlas, i: usize, j: usize, point: &Point) -> Result<NumericGrassmann> {
    let w = atlas.entry_m_prime(i, j)?.invert()?.eval_numeric(point)?;
    Ok(w.scale(log_factor(atlas, i, j)))
}

/// `L(h_ij)` at a chart-`j` point; `L(h_ii) = 0`.
pub fn branch_log(atlas: &ChartAtlas, i: usize, j: usize, window: BranchWindow, point: &Point) -> Result<LogPreimage> {
    if i == j {
        return Ok(LogPreimage { f: NumericGrassmann::zero(), nu_g: Rational64::zero() });
    }
    let arg = log_argument(atlas, i, j, point)?;
    let f = arg.ln(window)?.scale(two_pi_i().inv());
    Ok(LogPreimage { f, nu_g: orientation(atlas, i, j) })
}

/// Branch windows for the three logarithms of `(delta eta)_ijk`, in the
/// order `L(h_jk)`, `L(h_ik)`, `L(h_ij)`.
pub type BranchAssignment = [BranchWindow; 3];

pub const DEFAULT_ASSIGNMENT: BranchAssignment = [BranchWindow::ZeroTwoPi; 3];

/// All eight window assignments.
pub fn assignments() -> Vec<BranchAssignment> {
    let mut out = Vec::with_capacity(8);
    for a in BranchWindow::ALL {
        for b in BranchWindow::ALL {
            for c in BranchWindow::ALL {
                out.push([a, b, c]);
            }
        }
    }
    out
}

fn assignment_label(a: &BranchAssignment) -> String {
    format!("{},{},{}", a[0].label(), a[1].label(), a[2].label())
}

/// Numeric `L(h_jk) - L(h_ik) + L(h_ij)` before snapping.
#[derive(Clone, Debug)]
pub struct RawDelta {
    pub p: Complex64,
    pub q: Rational64,
    /// Signs of the imaginary parts of the three log arguments.
    pub region: [bool; 3],
}

/// Precomputed data for evaluating `(delta eta)_ijk` at chart-`k` points.
pub struct TripleEvaluator<'a> {
    atlas: &'a ChartAtlas,
    ijk: (usize, usize, usize),
    to_j: TransitionMap,
}

impl<'a> TripleEvaluator<'a> {
    pub fn new(atlas: &'a ChartAtlas, i: usize, j: usize, k: usize) -> Result<Self> {
        Ok(TripleEvaluator { atlas, ijk: (i, j, k), to_j: atlas.transition(j, k)? })
    }

    /// The three log arguments at a chart-`k` point.
    pub fn arguments(&self, point: &Point) -> Result<[Option<Complex64>; 3]> {
        let (i, j, k) = self.ijk;
        let moved = move_point(self.atlas, &self.to_j, point)?;
        let arg = |a: usize, b: usize, pt: &Point| -> Result<Option<Complex64>> {
            if a == b {
                Ok(None)
            } else {
                Ok(Some(log_argument(self.atlas, a, b, pt)?.body().0))
            }
        };
        Ok([arg(j, k, point)?, arg(i, k, point)?, arg(i, j, &moved)?])
    }

    pub fn raw(&self, point: &Point, windows: &BranchAssignment) -> Result<RawDelta> {
        let (i, j, k) = self.ijk;
        let moved = move_point(self.atlas, &self.to_j, point)?;
        let l1 = branch_log(self.atlas, j, k, windows[0], point)?;
        let l2 = branch_log(self.atlas, i, k, windows[1], point)?;
        let l3 = branch_log(self.atlas, i, j, windows[2], &moved)?;
        let p = &(&l1.f - &l2.f) + &l3.f;
        let args = self.arguments(point)?;
        let region = args.map(|a| a.is_some_and(|z| z.im > 0.0));
        Ok(RawDelta { p: p.body().0, q: l1.nu_g - l2.nu_g + l3.nu_g, region })
    }

    /// Snapped kernel element with its residual.
    pub fn delta_eta(&self, point: &Point, windows: &BranchAssignment) -> Result<(KernelElement, f64)> {
        let raw = self.raw(point, windows)?;
        KernelElement::snap(raw.p, rational_to_f64(raw.q)).map_err(|_| Error::BranchCut)
    }
}

/// `(delta eta)_ijk` at a chart-`k` point.
pub fn delta_eta(
    atlas: &ChartAtlas,
    (i, j, k): (usize, usize, usize),
    windows: &BranchAssignment,
    point: &Point,
) -> Result<KernelElement> {
    Ok(TripleEvaluator::new(atlas, i, j, k)?.delta_eta(point, windows)?.0)
}

fn region_label(region: &[bool; 3], args: &[Option<Complex64>; 3]) -> String {
    region
        .iter()
        .zip(args)
        .map(|(up, a)| match (a, up) {
            (None, _) => '0',
            (Some(_), true) => '+',
            (Some(_), false) => '-',
        })
        .collect()
}

/// Per-region summary of one `(triple, assignment)` cell.
#[derive(Clone, Debug, Default)]
pub struct CellSummary {
    /// Region label -> (distinct values, sample count, worst residual).
    pub regions: BTreeMap<String, (Vec<KernelElement>, usize, f64)>,
    pub failures: usize,
}

impl CellSummary {
    pub fn constant(&self) -> bool {
        self.failures == 0 && self.regions.values().all(|(v, _, _)| v.len() == 1)
    }

    pub fn values(&self) -> Vec<KernelElement> {
        let mut all: Vec<KernelElement> = self.regions.values().flat_map(|(v, _, _)| v.iter().copied()).collect();
        all.sort();
        all.dedup();
        all
    }

    pub fn worst_residual(&self) -> f64 {
        self.regions.values().map(|r| r.2).fold(0.0, f64::max)
    }

    fn detail(&self) -> Detail {
        Detail::Map(
            self.regions
                .iter()
                .map(|(label, (values, count, residual))| {
                    (
                        label.clone(),
                        Detail::Map(alloc::vec![
                            ("values".into(), Detail::List(values.iter().map(|v| v.detail()).collect())),
                            ("samples".into(), Detail::from(*count)),
                            ("residual".into(), Detail::Number(*residual)),
                        ]),
                    )
                })
                .collect(),
        )
    }
}

/// Evaluates one cell at the given chart-`k` points.
pub fn summarize_cell(evaluator: &TripleEvaluator<'_>, windows: &BranchAssignment, points: &[Point]) -> CellSummary {
    let mut summary = CellSummary::default();
    for point in points {
        let outcome = (|| -> Result<(RawDelta, [Option<Complex64>; 3])> {
            Ok((evaluator.raw(point, windows)?, evaluator.arguments(point)?))
        })();
        let Ok((raw, args)) = outcome else {
            summary.failures += 1;
            continue;
        };
        let label = region_label(&raw.region, &args);
        match KernelElement::snap(raw.p, rational_to_f64(raw.q)) {
            Ok((value, residual)) => {
                let slot = summary.regions.entry(label).or_insert_with(|| (Vec::new(), 0, 0.0));
                if !slot.0.contains(&value) {
                    slot.0.push(value);
                }
                slot.1 += 1;
                slot.2 = slot.2.max(residual);
            }
            Err(residual) => {
                summary.failures += 1;
                let slot = summary.regions.entry(label).or_insert_with(|| (Vec::new(), 0, 0.0));
                slot.1 += 1;
                slot.2 = slot.2.max(residual);
            }
        }
    }
    summary
}

fn atlas_tag(atlas: &ChartAtlas) -> String {
    format!("p{}|{}", atlas.m(), atlas.n())
}

/// Table of `(delta eta)` over every ordered triple and window assignment,
/// each cell split by the half-planes of its log arguments.
pub fn scan_delta_eta<R: Rng + ?Sized>(atlas: &ChartAtlas, samples: usize, rng: &mut R) -> Report {
    let mut report = Report::new("nu-class");
    let tag = atlas_tag(atlas);
    let charts = atlas.chart_count();
    for i in 1..=charts {
        for j in 1..=charts {
            for k in 1..=charts {
                let points: Vec<Point> = (0..samples).map(|_| atlas.random_point(k, rng)).collect();
                let evaluator = match TripleEvaluator::new(atlas, i, j, k) {
                    Ok(e) => e,
                    Err(err) => {
                        report.push(Check::fail(format!("delta-eta/{tag}/{i}-{j}-{k}"), err));
                        continue;
                    }
                };
                let all_standard = [i, j, k].iter().all(|&c| atlas.is_standard(c));
                for windows in assignments() {
                    let summary = summarize_cell(&evaluator, &windows, &points);
                    let name = format!("delta-eta/{tag}/{i}-{j}-{k}/{}", assignment_label(&windows));
                    let q_zero = summary.values().iter().all(|v| v.twice_q == 0);
                    let ok = summary.constant() && (!all_standard || q_zero);
                    report.push(
                        Check::from_bool(name, ok)
                            .with("cells", summary.detail())
                            .with("residual", summary.worst_residual())
                            .with("all_standard", all_standard),
                    );
                }
            }
        }
    }
    report
}

/// Expected headline value `(delta eta)_241 = -1/2` on nu-P^{2|1}.
pub fn headline_expected() -> KernelElement {
    KernelElement { twice_p: -1, twice_q: 0 }
}

/// Compares `(delta eta)_241` with all three logarithms in `window` against
/// the expected value in every half-plane region and checks constancy per
/// region.
pub fn headline_check<R: Rng + ?Sized>(atlas: &ChartAtlas, window: BranchWindow, samples: usize, rng: &mut R) -> Check {
    let name = format!("delta-eta/{}/headline/2-4-1", atlas_tag(atlas));
    let windows = [window; 3];
    let outcome = (|| -> Result<CellSummary> {
        let evaluator = TripleEvaluator::new(atlas, 2, 4, 1)?;
        let points: Vec<Point> = (0..samples).map(|_| atlas.random_point(1, rng)).collect();
        Ok(summarize_cell(&evaluator, &windows, &points))
    })();
    match outcome {
        Ok(summary) => {
            let values = summary.values();
            let ok = summary.constant() && values == [headline_expected()];
            Check::from_bool(name, ok)
                .with("expected", headline_expected().detail())
                .with("observed", Detail::List(values.iter().map(|v| v.detail()).collect()))
                .with("cells", summary.detail())
                .with("residual", summary.worst_residual())
        }
        Err(err) => Check::fail(name, err),
    }
}

/// `E'(L(h)) = h` at random `(pair, point, window)` draws.
pub fn right_inverse_check<R: Rng + ?Sized>(atlas: &ChartAtlas, draws: usize, rng: &mut R) -> Check {
    let name = format!("right-inverse/{}", atlas_tag(atlas));
    let charts = atlas.chart_count();
    let mut worst: f64 = 0.0;
    let mut cuts = 0usize;
    for _ in 0..draws {
        let i = rng.gen_range(1..=charts);
        let j = rng.gen_range(1..=charts);
        let window = BranchWindow::ALL[rng.gen_range(0..2)];
        let point = atlas.random_point(j, rng);
        let outcome = (|| -> Result<f64> {
            let h = atlas.line_cocycle(i, j)?.eval_numeric(&point)?;
            Ok(branch_log(atlas, i, j, window, &point)?.e_prime().distance(&h))
        })();
        match outcome {
            Ok(err) => worst = worst.max(err),
            Err(_) => cuts += 1,
        }
    }
    Check::from_bool(name, worst <= 1e-10 && cuts == 0)
        .with("draws", draws)
        .with("max_abs_error", worst)
        .with("errors", cuts)
}

/// `E'(p + q nu(1) nu0)` is exactly `+1` or `-1` for half-integers in
/// `[-3/2, 3/2]`, and the numeric exponential agrees.
pub fn kernel_check() -> Check {
    let mut cases = 0usize;
    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    for tp in -3..=3 {
        for tq in -3..=3 {
            cases += 1;
            let k = KernelElement { twice_p: tp, twice_q: tq };
            let exact = e_prime_exact(k.p(), k.q());
            let sign = k.image();
            let expected = (GaussRat::from_int(sign), GaussRat::zero());
            if exact.as_ref() != Some(&expected) || (sign != 1 && sign != -1) {
                bad.push(k.detail());
            }
            let numeric = e_prime_scalar(&NumericGrassmann::constant(Complex64::new(rational_to_f64(k.p()), 0.0)), k.q());
            worst = worst.max(numeric.distance(&NumericGrassmann::constant(Complex64::new(sign as f64, 0.0))));
        }
    }
    Check::from_bool("kernel/half-integers", bad.is_empty() && cases == 49)
        .with("cases", cases)
        .with("numeric_max_error", worst)
        .with("mismatches", Detail::List(bad))
}

/// Global symbols of the symbolic class computation.
#[derive(Clone, Debug)]
pub struct ClassSymbols {
    /// `1 / (2 pi i)`, a d-inert parameter.
    pub tau: SymbolId,
    /// Odd unit `nu(1)` of the kernel, fixed by every transition.
    pub unit: SymbolId,
    pub partition: PartitionFamily,
}

impl ClassSymbols {
    pub fn register(atlas: &mut ChartAtlas) -> Result<Self> {
        let charts = atlas.chart_count();
        let reg = atlas.registry_mut();
        let tau = reg.register("tau", SymbolKind::Parameter, None)?;
        let unit = reg.register("nu1", SymbolKind::OddUnit, None)?;
        let partition = PartitionFamily::new(reg, charts)?;
        Ok(ClassSymbols { tau, unit, partition })
    }
}

/// `d L(h_ij) = tau dlog(w_ij) + nu0 ((p(j) - p(i)) / 4) d nu(1)`, in
/// chart-`j` symbols.
pub fn d_log_cocycle(atlas: &ChartAtlas, symbols: &ClassSymbols, i: usize, j: usize, policy: TruncationPolicy) -> Result<Form> {
    if i == j {
        return Ok(Form::zero().with_policy(policy));
    }
    let reg = atlas.registry();
    let w = atlas.entry_m_prime(i, j)?.invert()?;
    let tau = GrassmannElement::from_terms(reg.tag(), [(OddMonomial::one(), false, Coefficient::var(symbols.tau))]);
    let mut out = Form::dlog(&w)?.with_policy(policy).scale_left(&tau)?;
    let nu_g = orientation(atlas, i, j);
    if !nu_g.is_zero() {
        let c = GrassmannElement::from_ratio(*nu_g.numer(), *nu_g.denom()).mul_nu0();
        out = out.try_add(&Form::differential(reg, symbols.unit).scale_left(&c)?)?;
    }
    Ok(out)
}

/// Per chart `(omega_i, R_i)` with `omega_i = sum_k rho_k d L(h_ik)` pulled
/// back to chart `i`, and `R_i = d omega_i`.
pub fn chern_connection_forms(
    atlas: &ChartAtlas,
    symbols: &ClassSymbols,
    transitions: &BTreeMap<(usize, usize), TransitionMap>,
    policy: TruncationPolicy,
) -> Result<Vec<(Form, Form)>> {
    let reg = atlas.registry();
    let mut out = Vec::with_capacity(atlas.chart_count());
    for i in 1..=atlas.chart_count() {
        let mut omega = Form::zero().with_policy(policy);
        for k in 1..=atlas.chart_count() {
            if k == i {
                continue;
            }
            let dl = d_log_cocycle(atlas, symbols, i, k, policy)?;
            let pulled = dl.pullback(reg, transitions[&(k, i)].substitution())?;
            omega = omega.try_add(&pulled.scale_left(&symbols.partition.rho(k))?)?;
        }
        let curvature = omega.d();
        out.push((omega, curvature));
    }
    Ok(out)
}

/// Checks `g_ij(omega_i) - omega_j = d L(h_ij)`, `g_ij(R_i) = R_j` and
/// `d R_i = 0`.
pub fn verify_global_form(atlas: &mut ChartAtlas, policy: TruncationPolicy) -> Report {
    let mut report = Report::new("global-2form");
    let tag = atlas_tag(atlas);
    let setup = (|| -> Result<_> {
        let symbols = ClassSymbols::register(atlas)?;
        let transitions = atlas.transitions()?;
        let forms = chern_connection_forms(atlas, &symbols, &transitions, policy)?;
        Ok((symbols, transitions, forms))
    })();
    let (symbols, transitions, forms) = match setup {
        Ok(s) => s,
        Err(err) => {
            report.push(Check::fail(format!("global/{tag}/setup"), err));
            return report;
        }
    };
    let reg = atlas.registry();
    let charts = atlas.chart_count();
    for i in 1..=charts {
        let closed = forms[i - 1].1.with_bound(policy.max_degree.saturating_add(1)).d();
        report.push(Check::from_bool(format!("global/{tag}/closed/{i}"), closed.is_zero() && !closed.overflowed()));
    }
    for i in 1..=charts {
        for j in 1..=charts {
            if i == j {
                continue;
            }
            let sigma = transitions[&(i, j)].substitution();
            let outcome = (|| -> Result<(bool, bool)> {
                let (omega_i, r_i) = &forms[i - 1];
                let (omega_j, r_j) = &forms[j - 1];
                let lhs = omega_i.pullback(reg, sigma)?.try_sub(omega_j)?;
                let rhs = d_log_cocycle(atlas, &symbols, i, j, policy)?;
                Ok((lhs == rhs, r_i.pullback(reg, sigma)? == *r_j))
            })();
            match outcome {
                Ok((omega_ok, r_ok)) => {
                    report.push(Check::from_bool(format!("global/{tag}/omega/{i}-{j}"), omega_ok));
                    report.push(Check::from_bool(format!("global/{tag}/curvature/{i}-{j}"), r_ok));
                }
                Err(err) => {
                    report.push(Check::fail(format!("global/{tag}/omega/{i}-{j}"), err.clone()));
                    report.push(Check::fail(format!("global/{tag}/curvature/{i}-{j}"), err));
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kernel_examples() {
        let half = Rational64::new(1, 2);
        assert_eq!(KernelElement::new(half, half).unwrap().image(), 1);
        assert_eq!(KernelElement::new(half, Rational64::zero()).unwrap().image(), -1);
        assert_eq!(e_prime_exact(Rational64::zero(), Rational64::zero()), Some((GaussRat::from_int(1), GaussRat::zero())));
        assert!(kernel_check().passed());

        let mut atlas = ChartAtlas::new(2, 1).unwrap();
        let unit = atlas.registry_mut().register("nu1", SymbolKind::OddUnit, None).unwrap();
        let f = NumericGrassmann::constant(c(0.5, 0.0));
        let g = NumericGrassmann::generator(unit, c(0.5, 0.0));
        assert!(e_prime(&f, &g, unit).unwrap().distance(&NumericGrassmann::one()) < 1e-15);
        let other = atlas.e(1, 1);
        assert!(matches!(e_prime(&f, &NumericGrassmann::generator(other, c(1.0, 0.0)), unit), Err(Error::UndefinedNu(_))));
    }

    #[test]
    fn nilpotent_exponent() {
        let mut atlas = ChartAtlas::new(1, 2).unwrap();
        let (e1, e2) = (atlas.e(1, 1), atlas.e(2, 1));
        let e12 = OddMonomial::from_unsorted(&[e1, e2]).unwrap().1;
        let f = NumericGrassmann::from_terms([(OddMonomial::one(), false, c(0.25, 0.0)), (e12.clone(), false, c(1.0, 0.0))]);
        let out = e_prime_scalar(&f, Rational64::zero());
        let i = c(0.0, 1.0);
        assert!((out.body().0 - i).norm() < 1e-15);
        assert!((out.coefficient(&e12, false) - i * two_pi_i()).norm() < 1e-14);
        let _ = atlas.registry_mut();
    }

    #[test]
    fn log_of_h21_matches_closed_form() {
        let atlas = ChartAtlas::new(2, 1).unwrap();
        let z1 = atlas.z(1, 1);
        let mut point = atlas.random_point(1, &mut ChaCha8Rng::seed_from_u64(1));
        point.insert(z1, c(-0.7, 1.3));
        let l = branch_log(&atlas, 2, 1, BranchWindow::ZeroTwoPi, &point).unwrap();
        let z = point[&z1];
        let arg = z.im.atan2(z.re);
        let expected = c(-z.norm().ln(), 2.0 * PI - arg) / two_pi_i();
        assert!((l.f.body().0 - expected).norm() < 1e-14);
        assert_eq!(l.nu_g, Rational64::zero());
        let id = branch_log(&atlas, 3, 3, BranchWindow::ZeroTwoPi, &point).unwrap();
        assert!(id.f.is_zero() && id.nu_g.is_zero());
    }

    #[test]
    fn orientation_constants() {
        let atlas = ChartAtlas::new(2, 1).unwrap();
        assert_eq!(orientation(&atlas, 2, 4), Rational64::new(1, 4));
        assert_eq!(orientation(&atlas, 4, 1), Rational64::new(-1, 4));
        assert_eq!(orientation(&atlas, 1, 3), Rational64::zero());
    }

    #[test]
    fn right_inverse_and_repeated_index() {
        let atlas = ChartAtlas::new(2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let check = right_inverse_check(&atlas, 200, &mut rng);
        assert!(check.passed(), "{check:?}");
        let point = atlas.random_point(1, &mut rng);
        for windows in assignments().into_iter().filter(|w| w[0] == w[1]) {
            let zero = delta_eta(&atlas, (3, 3, 1), &windows, &point).unwrap();
            assert_eq!(zero, KernelElement { twice_p: 0, twice_q: 0 });
        }
    }

    #[test]
    fn delta_241_is_integral_under_oriented_logs() {
        let atlas = ChartAtlas::new(2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let check = headline_check(&atlas, BranchWindow::ZeroTwoPi, 50, &mut rng);
        let Some(Detail::List(observed)) = check.detail("observed") else {
            panic!("missing observed values");
        };
        assert!(!observed.is_empty());
        for v in observed {
            let Detail::List(pq) = v else { panic!() };
            assert_eq!(pq[1], Detail::Fraction(Rational64::zero()));
            let Detail::Fraction(p) = pq[0] else { panic!() };
            assert!(p.is_integer());
        }
    }

    #[test]
    fn scan_cells_are_constant() {
        let atlas = ChartAtlas::new(1, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let report = scan_delta_eta(&atlas, 20, &mut rng);
        assert_eq!(report.checks.len(), 27 * 8);
        assert!(report.passed(), "{:?}", report.failures().next());
    }

    #[test]
    fn global_form_p11() {
        let mut atlas = ChartAtlas::new(1, 1).unwrap();
        let report = verify_global_form(&mut atlas, TruncationPolicy::default());
        assert!(report.passed(), "{:?}", report.failures().next());
    }
}
