//! Supermatrix-valued connection and curvature forms for `k|l` cocycles
//! generated from per-chart potentials, with the identities they satisfy.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::expr::write_form;
use crate::forms::{Form, PartitionFamily, TruncationPolicy};
use crate::grassmann::{GrassmannElement, OddMonomial};
use crate::numeric::NumericGrassmann;
use crate::report::{Check, Report};
use crate::supermatrix::{Dims, SuperMatrix};
use crate::symbol::{Registry, SymbolId, SymbolKind};

pub type MatrixForm = SuperMatrix<Form>;
type Matrix = SuperMatrix<GrassmannElement>;

/// Cocycle `h^{ab} = s_a s_b^-1` built from random invertible potentials.
#[derive(Debug)]
pub struct SyntheticCocycle {
    dims: Dims,
    seed: u64,
    registry: Registry,
    coordinates: Vec<SymbolId>,
    potentials: Vec<Matrix>,
    inverses: Vec<Matrix>,
    parities: Option<Vec<u8>>,
}

impl SyntheticCocycle {
    /// Potentials over `z1, z2 | e1, e2`. `l = 0` gives the purely even case.
    pub fn new(k: usize, l: usize, charts: usize, seed: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadDimensions(format!("k = {k}")));
        }
        if charts < 2 {
            return Err(Error::BadDimensions(format!("{charts} charts")));
        }
        let mut registry = Registry::new();
        let z1 = registry.register("z1", SymbolKind::EvenCoordinate, None)?;
        let z2 = registry.register("z2", SymbolKind::EvenCoordinate, None)?;
        let e1 = registry.register("e1", SymbolKind::OddCoordinate, None)?;
        let e2 = registry.register("e2", SymbolKind::OddCoordinate, None)?;
        let dims = Dims::new(k, l);
        let mut gen = Generator { rng: ChaCha8Rng::seed_from_u64(seed), reg: &registry, z: [z1, z2], e: [e1, e2] };
        let potentials = (0..charts).map(|_| gen.potential(dims)).collect::<Result<Vec<_>>>()?;
        let inverses = potentials.iter().map(|s| s.inverse()).collect::<Result<Vec<_>>>()?;
        Ok(SyntheticCocycle { dims, seed, registry, coordinates: alloc::vec![z1, z2, e1, e2], potentials, inverses, parities: None })
    }

    /// Attaches `nu0^(p(a)+p(b))` to `h^{ab}`.
    pub fn with_nu0_weights(mut self, parities: Vec<u8>) -> Result<Self> {
        if parities.len() != self.charts() {
            return Err(Error::DimensionMismatch(format!("{} parities for {} charts", parities.len(), self.charts())));
        }
        self.parities = Some(parities);
        Ok(self)
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn charts(&self) -> usize {
        self.potentials.len()
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn registry_mut(&mut self) -> &mut Registry {
        &mut self.registry
    }

    pub fn coordinates(&self) -> &[SymbolId] {
        &self.coordinates
    }

    /// `s_a`, 1-based.
    pub fn potential(&self, a: usize) -> Result<&Matrix> {
        self.potentials.get(a.wrapping_sub(1)).ok_or(Error::IndexOutOfRange { index: a, max: self.charts() })
    }

    /// `h^{ab}`, 1-based.
    pub fn h(&self, a: usize, b: usize) -> Result<Matrix> {
        let s = self.potential(a)?;
        let inv = self.inverses.get(b.wrapping_sub(1)).ok_or(Error::IndexOutOfRange { index: b, max: self.charts() })?;
        let h = s.try_mul(inv)?;
        match &self.parities {
            Some(p) if (p[a - 1] + p[b - 1]) % 2 == 1 => h.scale_left(&GrassmannElement::nu0()),
            _ => Ok(h),
        }
    }

    /// `h^{ab}` with form entries.
    pub fn h_form(&self, a: usize, b: usize, policy: TruncationPolicy) -> Result<MatrixForm> {
        self.h(a, b)?.try_map(|g| Ok(Form::from_element(g.clone()).with_policy(policy)))
    }
}

struct Generator<'a> {
    rng: ChaCha8Rng,
    reg: &'a Registry,
    z: [SymbolId; 2],
    e: [SymbolId; 2],
}

impl Generator<'_> {
    fn small(&mut self) -> i64 {
        self.rng.gen_range(-3..=3)
    }

    fn nonzero(&mut self) -> i64 {
        let v = self.rng.gen_range(1..=3);
        if self.rng.gen_bool(0.5) {
            -v
        } else {
            v
        }
    }

    fn z(&mut self) -> GrassmannElement {
        let v = self.z[self.rng.gen_range(0..2)];
        GrassmannElement::symbol(self.reg, v)
    }

    fn e(&mut self) -> GrassmannElement {
        let v = self.e[self.rng.gen_range(0..2)];
        GrassmannElement::symbol(self.reg, v)
    }

    /// `b z_r`.
    fn monomial(&mut self) -> Result<GrassmannElement> {
        let b = self.nonzero();
        self.z().try_mul(&self.constant(b))
    }

    fn constant(&mut self, c: i64) -> GrassmannElement {
        GrassmannElement::from_int(c).with_tag(self.reg.tag()).expect("constant")
    }

    /// `c e1 e2`.
    fn nilpotent(&mut self) -> Result<GrassmannElement> {
        let e1e2 = GrassmannElement::symbol(self.reg, self.e[0]).try_mul(&GrassmannElement::symbol(self.reg, self.e[1]))?;
        let c = self.nonzero();
        self.constant(c).try_mul(&e1e2)
    }

    /// `a e_s + b z_r e_t`.
    fn odd(&mut self) -> Result<GrassmannElement> {
        let a = self.nonzero();
        let first = self.e().try_mul(&self.constant(a))?;
        let second = self.monomial()?.try_mul(&self.e())?;
        first.try_add(&second)
    }

    /// `L U` with unit-diagonal `L` with monomial entries below it, `U` with
    /// `±1` on the diagonal and constants above it, plus `e1 e2` on the
    /// diagonal. Unimodular bodies keep every inverse integral.
    fn even_block(&mut self, n: usize) -> Result<Vec<GrassmannElement>> {
        let mut lower = Vec::with_capacity(n * n);
        let mut upper = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                lower.push(match i.cmp(&j) {
                    core::cmp::Ordering::Greater => self.monomial()?,
                    core::cmp::Ordering::Equal => self.constant(1),
                    core::cmp::Ordering::Less => self.constant(0),
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                upper.push(match i.cmp(&j) {
                    core::cmp::Ordering::Less => {
                        let c = self.small();
                        self.constant(c)
                    }
                    core::cmp::Ordering::Equal => {
                        let c = if self.rng.gen_bool(0.5) { 1 } else { -1 };
                        self.constant(c)
                    }
                    core::cmp::Ordering::Greater => self.constant(0),
                });
            }
        }
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = if i == j { self.nilpotent()? } else { self.constant(0) };
                for t in 0..n {
                    acc = acc.try_add(&lower[i * n + t].try_mul(&upper[t * n + j])?)?;
                }
                out.push(acc);
            }
        }
        Ok(out)
    }

    fn potential(&mut self, dims: Dims) -> Result<Matrix> {
        let (k, l) = (dims.even, dims.odd);
        let a = self.even_block(k)?;
        let b = (0..k * l).map(|_| self.odd()).collect::<Result<Vec<_>>>()?;
        let c = (0..l * k).map(|_| self.odd()).collect::<Result<Vec<_>>>()?;
        let d = self.even_block(l)?;
        SuperMatrix::from_blocks(dims, a, b, c, d)
    }
}

/// Every `h^{ab} h^{bc} = h^{ac}` and `h^{aa} = I`.
pub fn verify_synthetic_cocycle(cocycle: &SyntheticCocycle) -> Result<Report> {
    let n = cocycle.charts();
    let prefix = instance_prefix(cocycle);
    let mut report = Report::new("curvature");
    let id = Matrix::identity(cocycle.dims());
    let mut all_even = true;
    for a in 1..=n {
        for b in 1..=n {
            let hab = cocycle.h(a, b)?;
            all_even &= hab.parity() == Some(0);
            if a == b {
                report.push(Check::from_bool(format!("{prefix}/cocycle/identity/{a}"), hab == id));
                continue;
            }
            for c in 1..=n {
                if c == a || c == b {
                    continue;
                }
                let ok = hab.try_mul(&cocycle.h(b, c)?)? == cocycle.h(a, c)?;
                report.push(Check::from_bool(format!("{prefix}/cocycle/{a}-{b}-{c}"), ok));
            }
        }
    }
    report.push(Check::from_bool(format!("{prefix}/cocycle/even"), all_even));
    Ok(report)
}

fn instance_prefix(cocycle: &SyntheticCocycle) -> String {
    format!("curvature/{}x{}", cocycle.dims(), cocycle.charts())
}

/// Entrywise `d`.
pub fn d_matrix(m: &MatrixForm) -> Result<MatrixForm> {
    m.try_map(|f| Ok(f.d()))
}

/// Lifts every entry to a new bound.
pub fn with_bound(m: &MatrixForm, bound: u8) -> Result<MatrixForm> {
    m.try_map(|f| Ok(f.with_bound(bound)))
}

fn rho_form(partition: &PartitionFamily, b: usize, policy: TruncationPolicy) -> Form {
    Form::from_element(partition.rho(b)).with_policy(policy)
}

fn check_partition(cocycle: &SyntheticCocycle, partition: &PartitionFamily) -> Result<()> {
    if partition.count() != cocycle.charts() {
        return Err(Error::DimensionMismatch(format!(
            "partition of {} for {} charts",
            partition.count(),
            cocycle.charts()
        )));
    }
    Ok(())
}

/// `omega^a = sum_b rho_b dh^{ab} h^{ba}` for every chart.
pub fn matrix_connection(
    cocycle: &SyntheticCocycle,
    partition: &PartitionFamily,
    policy: TruncationPolicy,
) -> Result<Vec<MatrixForm>> {
    check_partition(cocycle, partition)?;
    let n = cocycle.charts();
    (1..=n)
        .map(|a| {
            let mut acc = MatrixForm::zero(cocycle.dims(), cocycle.dims());
            for b in 1..=n {
                let term = d_matrix(&cocycle.h_form(a, b, policy)?)?.try_mul(&cocycle.h_form(b, a, policy)?)?;
                acc = acc.try_add(&term.scale_left(&rho_form(partition, b, policy))?)?;
            }
            Ok(acc)
        })
        .collect()
}

/// `R = d omega - omega omega`.
pub fn matrix_curvature(omega: &MatrixForm) -> Result<MatrixForm> {
    d_matrix(omega)?.try_sub(&omega.try_mul(omega)?)
}

/// The curvature of chart `a` written out as three sums over the partition.
pub fn three_sum_curvature(
    cocycle: &SyntheticCocycle,
    partition: &PartitionFamily,
    a: usize,
    policy: TruncationPolicy,
) -> Result<MatrixForm> {
    check_partition(cocycle, partition)?;
    let n = cocycle.charts();
    let dims = cocycle.dims();
    let mut first = MatrixForm::zero(dims, dims);
    let mut second = MatrixForm::zero(dims, dims);
    let mut pieces = Vec::with_capacity(n);
    for b in 1..=n {
        let dh = d_matrix(&cocycle.h_form(a, b, policy)?)?;
        let back = cocycle.h_form(b, a, policy)?;
        let piece = dh.try_mul(&back)?;
        first = first.try_add(&piece.scale_left(&partition.d_rho(b).with_policy(policy))?)?;
        second = second.try_add(&dh.try_mul(&d_matrix(&back)?)?.scale_left(&rho_form(partition, b, policy))?)?;
        pieces.push(piece.scale_left(&rho_form(partition, b, policy))?);
    }
    let mut third = MatrixForm::zero(dims, dims);
    for p in &pieces {
        for q in &pieces {
            third = third.try_add(&p.try_mul(q)?)?;
        }
    }
    first.try_sub(&second)?.try_sub(&third)
}

/// `dR - [omega, R]`, entrywise.
pub fn bianchi_defect(omega: &MatrixForm, curvature: &MatrixForm) -> Result<MatrixForm> {
    d_matrix(curvature)?.try_sub(&omega.commutator(curvature)?)
}

pub fn verify_bianchi(omega: &[MatrixForm], curvature: &[MatrixForm]) -> Result<Report> {
    if omega.len() != curvature.len() {
        return Err(Error::DimensionMismatch(format!("{} connections, {} curvatures", omega.len(), curvature.len())));
    }
    let mut report = Report::new("curvature");
    for (a, (w, r)) in omega.iter().zip(curvature).enumerate() {
        let defect = bianchi_defect(w, r)?;
        report.push(Check::from_bool(format!("bianchi/{}", a + 1), defect.is_zero()));
    }
    Ok(report)
}

/// `s_j = Str(R^j)` for `j = 1..=kmax`, computed with the bound lifted to
/// `2 kmax + 1` so that `d s_j` is representable.
pub fn supertrace_powers(curvature: &MatrixForm, kmax: u32) -> Result<Vec<Form>> {
    let r = with_bound(curvature, bound_for(kmax))?;
    let mut power = MatrixForm::identity(r.rows());
    let mut out = Vec::with_capacity(kmax as usize);
    for j in 1..=kmax {
        out.push(power.supertrace_of_product(&r)?);
        if j < kmax {
            power = power.try_mul(&r)?;
        }
    }
    Ok(out)
}

fn bound_for(kmax: u32) -> u8 {
    u8::try_from(2 * kmax + 1).unwrap_or(u8::MAX - 1)
}

fn scalar(c: GrassmannElement, tag: u32, bound: u8) -> Result<Form> {
    Ok(Form::from_element(c.with_tag(tag)?).with_bound(bound))
}

/// Bound that keeps every `z^k` coefficient with `k <= kmax` of a 2-form
/// series exact; errors when the curvature carries less.
fn series_bound(curvature: &MatrixForm, kmax: u32) -> Result<u8> {
    let have = curvature.entries().iter().map(Form::bound).min().unwrap_or(u8::MAX);
    let need = u8::try_from(2 * kmax).map_err(|_| Error::TruncationOverflow)?;
    if need > have {
        return Err(Error::TruncationOverflow);
    }
    Ok(need)
}

/// `c_0..c_kmax`, the `z^k` coefficients of `Ber(I + z R)`.
pub fn ber_series(curvature: &MatrixForm, z: &Form, kmax: u32) -> Result<Vec<Form>> {
    let bound = series_bound(curvature, kmax)?;
    let zr = with_bound(curvature, bound)?.scale_left(z)?;
    let ber = MatrixForm::identity(curvature.rows()).try_add(&zr)?.berezinian()?;
    let var = series_variable(z)?;
    (0..=kmax).map(|k| ber.series_coefficient(var, k)).collect()
}

/// `z^k` coefficients of `exp(Str log(I + z R))`, with
/// `Str log(I + z R) = sum_n (-1)^(n+1) z^n s_n / n` built from the power sums
/// `s_n = Str(R^n)`.
pub fn exp_str_log_series(power_sums: &[Form], z: &Form, kmax: u32) -> Result<Vec<Form>> {
    if power_sums.len() < kmax as usize {
        return Err(Error::DimensionMismatch(format!("{} power sums for order {kmax}", power_sums.len())));
    }
    let bound = u8::try_from(2 * kmax).map_err(|_| Error::TruncationOverflow)?;
    let tag = z.tag();
    let z = z.with_bound(bound);
    let mut log_str = Form::zero().with_bound(bound);
    let mut z_power = scalar(GrassmannElement::one(), tag, bound)?;
    for n in 1..=kmax {
        z_power = z_power.wedge(&z)?;
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let c = scalar(GrassmannElement::from_ratio(sign, i64::from(n)), tag, bound)?;
        log_str = log_str.try_add(&c.wedge(&z_power)?.wedge(&power_sums[n as usize - 1])?)?;
    }
    let mut exp = scalar(GrassmannElement::one(), tag, bound)?;
    let mut term = exp.clone();
    for m in 1..=kmax {
        let c = scalar(GrassmannElement::from_ratio(1, i64::from(m)), tag, bound)?;
        term = c.wedge(&term.wedge(&log_str)?)?;
        exp = exp.try_add(&term)?;
    }
    let var = series_variable(&z)?;
    (0..=kmax).map(|k| exp.series_coefficient(var, k)).collect()
}

fn series_variable(z: &Form) -> Result<SymbolId> {
    let g = z.function_part();
    let mut vars = g.even_symbols().into_iter();
    match (vars.next(), vars.next(), z.max_degree()) {
        (Some(v), None, Some(0)) if g == GrassmannElement::from_coefficient(z.tag(), Coefficient::var(v)) => Ok(v),
        _ => Err(Error::DimensionMismatch(String::from("series variable must be a bare symbol"))),
    }
}

/// `(k+1) c_{k+1} - sum_j (-1)^(j+1) s_j c_{k+1-j}` for `k + 1 <= kmax`.
pub fn newton_defects(series: &[Form], power_sums: &[Form]) -> Result<Vec<Form>> {
    let kmax = series.len().saturating_sub(1).min(power_sums.len());
    (0..kmax)
        .map(|k| {
            let tag = series[k + 1].tag();
            let bound = series[k + 1].bound();
            let lhs = scalar(GrassmannElement::from_int(k as i64 + 1), tag, bound)?.wedge(&series[k + 1])?;
            let mut rhs = Form::zero().with_bound(bound);
            for j in 1..=k + 1 {
                let term = power_sums[j - 1].wedge(&series[k + 1 - j])?;
                rhs = if j % 2 == 1 { rhs.try_add(&term)? } else { rhs.try_sub(&term)? };
            }
            lhs.try_sub(&rhs)
        })
        .collect()
}

/// Connection and curvature of every chart, with the symbols they use.
#[derive(Debug)]
pub struct CurvatureInstance {
    pub cocycle: SyntheticCocycle,
    pub partition: PartitionFamily,
    pub z: SymbolId,
    pub policy: TruncationPolicy,
    pub omega: Vec<MatrixForm>,
    pub curvature: Vec<MatrixForm>,
}

impl CurvatureInstance {
    pub fn build(mut cocycle: SyntheticCocycle, policy: TruncationPolicy) -> Result<Self> {
        let charts = cocycle.charts();
        let partition = PartitionFamily::new(cocycle.registry_mut(), charts)?;
        let z = cocycle.registry_mut().register("z", SymbolKind::Parameter, None)?;
        let omega = matrix_connection(&cocycle, &partition, policy)?;
        let curvature = omega.iter().map(matrix_curvature).collect::<Result<Vec<_>>>()?;
        Ok(CurvatureInstance { cocycle, partition, z, policy, omega, curvature })
    }

    pub fn z_form(&self) -> Form {
        Form::from_element(GrassmannElement::from_coefficient(self.cocycle.registry().tag(), Coefficient::var(self.z)))
    }

    pub fn series(&self, a: usize, kmax: u32) -> Result<Vec<Form>> {
        ber_series(&self.curvature[a - 1], &self.z_form(), kmax)
    }
}

/// Berezinian series of chart `a` checked against the Newton recursion and
/// the exponential of the supertrace logarithm.
pub fn series_checks(instance: &CurvatureInstance, a: usize, power_sums: &[Form], kmax: u32) -> Result<(Vec<Form>, Vec<Check>)> {
    let prefix = instance_prefix(&instance.cocycle);
    let reg = instance.cocycle.registry();
    let z = instance.z_form();
    let c = instance.series(a, kmax)?;
    let alt = exp_str_log_series(power_sums, &z, kmax)?;
    let c0_ok = c.first().is_some_and(|c0| *c0 == Form::one());
    let closed = c.iter().all(|ck| ck.with_bound(ck.bound().saturating_add(1)).d().is_zero());
    let defects = newton_defects(&c, power_sums)?;
    let mut newton = Check::from_bool(format!("{prefix}/newton/{a}"), defects.iter().all(Form::is_zero));
    for (k, ck) in c.iter().enumerate().skip(1) {
        newton = newton.with(format!("c{k}"), write_form(reg, ck));
    }
    let checks = alloc::vec![
        Check::from_bool(format!("{prefix}/exp-str-log/{a}"), c0_ok && c == alt),
        Check::from_bool(format!("{prefix}/series-closed/{a}"), closed),
        newton,
    ];
    Ok((c, checks))
}

/// Identity suite on one instance: cocycle, three-sum expansion, Bianchi,
/// closed and gauge-invariant supertrace powers on every chart, gauge laws on
/// every ordered pair, and the Berezinian series checks on `series_charts`.
pub fn curvature_suite(instance: &CurvatureInstance, kmax: u32, series_charts: &[usize]) -> Result<Report> {
    let cocycle = &instance.cocycle;
    let prefix = instance_prefix(cocycle);
    let policy = instance.policy;
    let n = cocycle.charts();
    let mut report = verify_synthetic_cocycle(cocycle)?;
    let mut sums = Vec::with_capacity(n);
    for a in 1..=n {
        let omega = &instance.omega[a - 1];
        let r = &instance.curvature[a - 1];
        let expanded = three_sum_curvature(cocycle, &instance.partition, a, policy)?;
        report.push(Check::from_bool(format!("{prefix}/three-sum/{a}"), expanded == *r));
        report.push(Check::from_bool(format!("{prefix}/bianchi/{a}"), bianchi_defect(omega, r)?.is_zero()));
        let s = supertrace_powers(r, kmax)?;
        for (j, sj) in s.iter().enumerate() {
            report.push(Check::from_bool(format!("{prefix}/closed/{a}/{}", j + 1), sj.d().is_zero()));
        }
        sums.push(s);
    }
    let mut series: Vec<(usize, Vec<Form>)> = Vec::new();
    for &a in series_charts {
        if !(1..=n).contains(&a) {
            return Err(Error::IndexOutOfRange { index: a, max: n });
        }
        let (c, checks) = series_checks(instance, a, &sums[a - 1], kmax)?;
        checks.into_iter().for_each(|c| report.push(c));
        series.push((a, c));
    }
    for (i, (a, ca)) in series.iter().enumerate() {
        for (b, cb) in &series[i + 1..] {
            report.push(Check::from_bool(format!("{prefix}/ber-invariant/{b}-{a}"), ca == cb));
        }
    }
    for a in 1..=n {
        for b in 1..=n {
            if a == b {
                continue;
            }
            let h = cocycle.h_form(b, a, policy)?;
            let h_inv = cocycle.h_form(a, b, policy)?;
            let gauge_omega = d_matrix(&h)?.try_mul(&h_inv)?.try_add(&h.try_mul(&instance.omega[a - 1])?.try_mul(&h_inv)?)?;
            report.push(Check::from_bool(format!("{prefix}/gauge-omega/{b}-{a}"), gauge_omega == instance.omega[b - 1]));
            let gauge = h.try_mul(&instance.curvature[a - 1])?.try_mul(&h_inv)?;
            report.push(Check::from_bool(format!("{prefix}/gauge/{b}-{a}"), gauge == instance.curvature[b - 1]));
            if a < b {
                report.push(Check::from_bool(format!("{prefix}/str-invariant/{b}-{a}"), sums[a - 1] == sums[b - 1]));
            }
        }
    }
    report.sort();
    Ok(report)
}

/// Random even `k|l` supermatrix over two odd generators, with body shifted
/// away from singular.
pub fn random_numeric_supermatrix(rng: &mut impl Rng, dims: Dims, odd: [SymbolId; 2]) -> SuperMatrix<NumericGrassmann> {
    let c = |rng: &mut dyn rand::RngCore| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let pair = OddMonomial::from_unsorted(&odd).expect("distinct generators").1;
    SuperMatrix::from_fn(dims, dims, |i, j| {
        let (pi, pj) = (dims.parity_of(i), dims.parity_of(j));
        if pi == pj {
            let shift = if i == j { Complex64::new(3.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            let mut g = NumericGrassmann::constant(c(rng) + shift);
            g.add_term(OddMonomial::one(), true, c(rng).scale(0.25));
            g.add_term(pair.clone(), false, c(rng));
            g
        } else {
            &NumericGrassmann::generator(odd[0], c(rng)) + &NumericGrassmann::generator(odd[1], c(rng))
        }
    })
}

/// `Ber(XY) = Ber(X) Ber(Y)` on random numeric pairs; returns the worst
/// relative error.
pub fn ber_multiplicativity(dims: Dims, trials: usize, seed: u64) -> Result<f64> {
    let mut reg = Registry::new();
    let odd = [
        reg.register("e1", SymbolKind::OddCoordinate, None)?,
        reg.register("e2", SymbolKind::OddCoordinate, None)?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let x = random_numeric_supermatrix(&mut rng, dims, odd);
        let y = random_numeric_supermatrix(&mut rng, dims, odd);
        let lhs = x.try_mul(&y)?.berezinian()?;
        let rhs = &x.berezinian()? * &y.berezinian()?;
        worst = worst.max(lhs.distance(&rhs) / rhs.max_norm());
    }
    Ok(worst)
}

pub const BER_TOLERANCE: f64 = 1e-9;

pub fn ber_multiplicativity_check(dims: Dims, trials: usize, seed: u64) -> Result<Check> {
    let worst = ber_multiplicativity(dims, trials, seed)?;
    Ok(Check::from_bool(format!("curvature/ber-multiplicative/{dims}"), worst <= BER_TOLERANCE)
        .with("trials", trials)
        .with("max_relative_error", worst))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn instance(k: usize, l: usize, charts: usize, seed: u64) -> CurvatureInstance {
        CurvatureInstance::build(SyntheticCocycle::new(k, l, charts, seed).unwrap(), TruncationPolicy::default()).unwrap()
    }

    #[test]
    fn cocycle_is_deterministic_and_closes() {
        let a = SyntheticCocycle::new(2, 1, 3, 7).unwrap();
        let b = SyntheticCocycle::new(2, 1, 3, 7).unwrap();
        for i in 1..=3 {
            assert_eq!(a.potential(i).unwrap(), b.potential(i).unwrap());
        }
        let triple = a.h(1, 2).unwrap().try_mul(&a.h(2, 3).unwrap()).unwrap().try_mul(&a.h(3, 1).unwrap()).unwrap();
        assert_eq!(triple, Matrix::identity(Dims::new(2, 1)));
        assert!(verify_synthetic_cocycle(&a).unwrap().passed());
        assert!(a.h(1, 2).unwrap().entries().iter().all(|e| e.terms().all(|(_, _, c)| c.is_polynomial())));
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(matches!(SyntheticCocycle::new(0, 1, 3, 1), Err(Error::BadDimensions(_))));
        assert!(matches!(SyntheticCocycle::new(1, 1, 1, 1), Err(Error::BadDimensions(_))));
    }

    #[test]
    fn scalar_case_is_a_quotient_and_dlog_sum() {
        let inst = instance(1, 0, 2, 3);
        let c = &inst.cocycle;
        let s1 = c.potential(1).unwrap().get(0, 0).clone();
        let s2 = c.potential(2).unwrap().get(0, 0).clone();
        assert_eq!(*c.h(1, 2).unwrap().get(0, 0), s1.try_mul(&s2.invert().unwrap()).unwrap());
        let policy = inst.policy;
        let mut expected = Form::zero();
        for b in 1..=2 {
            let h = c.h(1, b).unwrap().get(0, 0).clone();
            let rho = Form::from_element(inst.partition.rho(b)).with_policy(policy);
            expected = expected.try_add(&rho.wedge(&Form::dlog(&h).unwrap()).unwrap()).unwrap();
        }
        assert_eq!(*inst.omega[0].get(0, 0), expected);
    }

    #[test]
    fn nu0_weights_cancel_in_curvature() {
        let plain = instance(1, 1, 2, 5);
        let weighted = CurvatureInstance::build(
            SyntheticCocycle::new(1, 1, 2, 5).unwrap().with_nu0_weights(alloc::vec![0, 1]).unwrap(),
            TruncationPolicy::default(),
        )
        .unwrap();
        assert!(verify_synthetic_cocycle(&weighted.cocycle).unwrap().passed());
        assert_eq!(plain.curvature, weighted.curvature);
    }

    #[test]
    fn flat_and_diagonal_series() {
        let inst = instance(1, 1, 2, 11);
        let z = inst.z_form();
        let flat = MatrixForm::zero(Dims::new(1, 1), Dims::new(1, 1));
        let c = ber_series(&flat, &z, 3).unwrap();
        assert_eq!(c[0], Form::one());
        assert!(c[1..].iter().all(Form::is_zero));
        assert!(matrix_curvature(&flat).unwrap().is_zero());

        let r = inst.curvature[0].get(0, 0).clone();
        let diag = MatrixForm::diagonal(Dims::new(1, 1), alloc::vec![r.clone(), Form::zero()]).unwrap();
        let c = ber_series(&diag, &z, 3).unwrap();
        assert_eq!(c[1], r);
        assert!(c[2].is_zero() && c[3].is_zero());
    }

    #[test]
    fn second_coefficient_by_hand() {
        let inst = instance(2, 1, 3, 7);
        let r = &inst.curvature[0];
        let c = inst.series(1, 2).unwrap();
        let s = supertrace_powers(r, 2).unwrap();
        assert_eq!(c[1], s[0]);
        let half = Form::from_element(GrassmannElement::from_ratio(1, 2).with_tag(c[1].tag()).unwrap());
        let rhs = half.wedge(&s[0].wedge(&c[1]).unwrap().try_sub(&s[1]).unwrap()).unwrap();
        assert_eq!(c[2], rhs);
        assert!(c.iter().all(|ck| ck.with_bound(5).d().is_zero()));
        assert_eq!(c[2].max_degree(), Some(4));
    }

    #[test]
    fn suite_passes_on_one_one_with_invariant_series() {
        let report = curvature_suite(&instance(1, 1, 2, 5), 3, &[1, 2]).unwrap();
        let failures: Vec<_> = report.failures().map(|c| c.name.clone()).collect();
        assert!(failures.is_empty(), "{failures:?}");
        assert!(report.check("curvature/1|1x2/ber-invariant/2-1").is_some());
    }

    #[test]
    fn numeric_berezinian_is_multiplicative() {
        assert!(ber_multiplicativity(Dims::new(2, 1), 200, 1).unwrap() <= BER_TOLERANCE);
    }

    #[test]
    fn exact_berezinian_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let dims = Dims::new(2, 1);
        let mut reg = Registry::new();
        let e = [
            reg.register("e1", SymbolKind::OddCoordinate, None).unwrap(),
            reg.register("e2", SymbolKind::OddCoordinate, None).unwrap(),
        ];
        let sample = |rng: &mut ChaCha8Rng| {
            Matrix::try_from_fn(dims, dims, |i, j| {
                let mut q = || GrassmannElement::from_ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3)).with_tag(reg.tag());
                if dims.parity_of(i) == dims.parity_of(j) {
                    let base = q()?.try_add(&GrassmannElement::from_int(if i == j { 5 } else { 0 }).with_tag(reg.tag())?)?;
                    let pair = GrassmannElement::symbol(&reg, e[0]).try_mul(&GrassmannElement::symbol(&reg, e[1]))?;
                    base.try_add(&q()?.try_mul(&pair)?)
                } else {
                    q()?.try_mul(&GrassmannElement::symbol(&reg, e[0]))?
                        .try_add(&q()?.try_mul(&GrassmannElement::symbol(&reg, e[1]))?)
                }
            })
            .unwrap()
        };
        for _ in 0..20 {
            let x = sample(&mut rng);
            let y = sample(&mut rng);
            let lhs = x.try_mul(&y).unwrap().berezinian().unwrap();
            let rhs = x.berezinian().unwrap().try_mul(&y.berezinian().unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
