//! Randomized algebraic property suites over the sample alphabet.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::forms::Form;
use crate::grassmann::GrassmannElement;
use crate::report::{Check, Report};
use crate::sample::Alphabet;
use crate::supermatrix::{Dims, SuperMatrix};

/// Relative tolerance for the numeric evaluation morphism.
pub const EVAL_TOLERANCE: f64 = 1e-12;

/// Truncation level compared against `D + 2` in the soundness property.
pub const SOUNDNESS_BOUND: u8 = 2;

type Property = fn(&Alphabet, &mut ChaCha8Rng) -> Result<bool>;

/// Every property name paired with its trial function.
pub fn catalogue() -> Vec<(&'static str, Property)> {
    alloc::vec![
        ("supercommutativity", supercommutativity as Property),
        ("associativity", associativity),
        ("distributivity", distributivity),
        ("nu0-central", nu0_central),
        ("invert", invert),
        ("nu-involution", nu_involution),
        ("substitute-morphism", substitute_morphism),
        ("eval-morphism", eval_morphism),
        ("d-squared", d_squared),
        ("leibniz", leibniz),
        ("double-swap", double_swap),
        ("truncation-soundness", truncation_soundness),
        ("supermatrix-inverse", supermatrix_inverse),
        ("berezinian-inverse", berezinian_inverse),
        ("berezinian-blocks", berezinian_blocks),
        ("supertrace-commutator", supertrace_commutator),
        ("supertrace-swap", supertrace_swap),
    ]
}

/// Runs one property for `trials` seeded trials.
pub fn run_property(name: &str, property: Property, trials: usize, seed: u64) -> Result<Check> {
    let alpha = Alphabet::new()?;
    let mut failures = 0usize;
    let mut first: Option<usize> = None;
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, name, t));
        if !property(&alpha, &mut rng)? {
            failures += 1;
            first.get_or_insert(t);
        }
    }
    let mut check = Check::from_bool(format!("property/{name}"), failures == 0)
        .with("trials", trials)
        .with("failures", failures);
    if let Some(t) = first {
        check = check.with("first_failure", t);
    }
    Ok(check)
}

/// All property suites, `trials` each.
pub fn run(trials: usize, seed: u64) -> Result<Report> {
    let mut report = Report::new("properties");
    for (name, property) in catalogue() {
        report.push(run_property(name, property, trials, seed)?);
    }
    Ok(report)
}

fn trial_seed(seed: u64, name: &str, trial: usize) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for b in name.bytes().chain((trial as u64).to_le_bytes()) {
        h = (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn sign(negative: bool, x: GrassmannElement) -> GrassmannElement {
    if negative {
        -x
    } else {
        x
    }
}

fn supercommutativity(a: &Alphabet, rng: &mut ChaCha8Rng) -> Result<bool> {
    let (px, py) = (rng.gen_range(0..2u8), rng.gen_range(0..2u8));
    let x = a.element(rng, px)?;
    let y = a.element(rng, py)?;
    let lhs = x.try_mul(&y)?;
    let rhs = sign(px * py == 1, y.try_mul(&x)?);
    Ok(lhs.try_sub(&rhs)?.is_zero())
}

fn associativity(a: &Alphabet, rng: &mut ChaCha8Rng) -> Result<bool> {
    let (x, y, z) = (a.any_element(rng)?, a.any_element(rng)?, a.any_element(rng)?);
    Ok(x.try_mul(&y)?.try_mul(&z)? == x.try_mul(&y.try_mul(&z)?)?)
}

fn distributivity(a: &Alphabet, rng: &mut ChaCha8Rng) -> Result<bool> {
    let (x, y, z) = (a.any_element(rng)?, a.any_element(rng)?, a.any_element(rng)?);
    let left = x.try_mul(&y.try_add(&z)?)? == x.try_mul(&y)?.try_add(&x.try_mul(&z)?)?;
    let right = y.try_add(&z)?.try_mul(&x)? == y.try_mul(&x)?.try_add(&z.try_mul(&x)?)?;
    Ok(left && right)
}

fn nu0_central(a: &Alphabet, rng: &mut ChaCha8Rng) -> Result<bool> {
    let x = a.any_element(rng)?;
    let nu0 = GrassmannElement::nu0();
    let central = nu0.try_mul(&x)? == x.try_mul(&nu0)? && x.mul_nu0() == nu0.try_mul(&x)?;
    Ok(central && nu0.try_mul(&nu0)?.is_one())
}

fn invert(a: &Alphabet, rng: &mut ChaCha8Rng) -> Result<bool> {
    let x = a.invertible(rng)?;
    let inv = x.invert()?;
    Ok(x.try_mul(&inv)?.is_one() && inv.try_mul(&x)?.is_one())
}

fn nu_involution(a: &Alphabet, rng: &mut ChaCha8Rng) -> Result<bool> {
    let x = a.nu_domain(rng)?;
    let twice = x.nu_apply(&a.reg, a.unit)?.nu_apply(&a.reg, a.unit)?;
    Ok(twice == x)
}

fn substitute_morphism(a: &Alphabet, rng: &mut ChaCha8Rng) -> Result<bool> {
    let sigma = a.substitution(rng)?;
    let (x, y) = (a.any_element(rng)?, a.any_element(rng)?);
    let product = x.try_mul(&y)?.substitute(&sigma)? == x.substitute(&sigma)?.try_mul(&y.substitute(&sigma)?)?;
    let sum = x.try_add(&y)?.substitute(&sigma)? == x.substitute(&sigma)?.try_add(&y.substitute(&sigma)?)?;
    Ok(product && sum)
}

fn eval_morphism(a: &Alphabet, rng: &mut ChaCha8Rng) -> Result<bool> {
    let (x, y) = (a.any_element(rng)?, a.any_element(rng)?);
    let point = a.point(rng);
    let (ex, ey) = (x.eval_numeric(&point)?, y.eval_numeric(&point)?);
    let expected = &ex * &ey;
    let got = x.try_mul(&y)?.eval_numeric(&point)?;
    let scale = expected.max_norm().max(1.0);
    let sum = x.try_add(&y)?.eval_numeric(&point)?.distance(&(&ex + &ey)) <= EVAL_TOLERANCE * (ex.max_norm() + ey.max_norm()).max(1.0);
    Ok(got.distance(&expected) <= EVAL_TOLERANCE * scale && sum)
}

fn d_squared(a: &Alphabet, rng: &mut ChaCha8Rng) -> Result<bool> {
    let f = a.form(rng, 3)?;
    Ok(f.d().d().is_zero())
}

fn leibniz(a: &Alphabet, rng: &mut ChaCha8Rng) -> Result<bool> {
    let (deg, pf) = (rng.gen_range(0..3u32), rng.gen_range(0..2u8));
    let (dg, pg) = (rng.gen_range(0..3u32), rng.gen_range(0..2u8));
    let f = a.homogeneous_form(rng, deg, pf)?;
    let g = a.homogeneous_form(rng, dg, pg)?;
    let second = f.wedge(&g.d())?;
    let rhs = f.d().wedge(&g)?.try_add(&if deg % 2 == 1 { second.negated() } else { second })?;
    Ok(f.wedge(&g)?.d() == rhs)
}

fn double_swap(a: &Alphabet, rng: &mut ChaCha8Rng) -> Result<bool> {
    let (df, pf) = (rng.gen_range(0..3u32), rng.gen_range(0..2u8));
    let (dg, pg) = (rng.gen_range(0..3u32), rng.gen_range(0..2u8));
    let f = a.homogeneous_form(rng, df, pf)?;
    let g = a.homogeneous_form(rng, dg, pg)?;
    let negative = (df * dg + u32::from(pf * pg)) % 2 == 1;
    let swap = |x: Form| if negative { x.negated() } else { x };
    let fg = f.wedge(&g)?;
    let gf = swap(g.wedge(&f)?);
    Ok(fg == gf && swap(swap(fg.clone())) == fg)
}

fn truncation_soundness(a: &Alphabet, rng: &mut ChaCha8Rng) -> Result<bool> {
    let low = SOUNDNESS_BOUND;
    let f = a.form(rng, 3)?;
    let g = a.form(rng, 3)?;
    let small = f.with_bound(low).wedge(&g.with_bound(low))?.d();
    let large = f.with_bound(low + 2).wedge(&g.with_bound(low + 2))?.d();
    for k in 0..=u32::from(low) {
        if small.degree_part(k) != large.degree_part(k) {
            return Ok(false);
        }
    }
    Ok(true)
}

const DIMS: Dims = Dims::new(2, 1);

fn supermatrix_inverse(a: &Alphabet, rng: &mut ChaCha8Rng) -> Result<bool> {
    let x = a.supermatrix(rng, DIMS)?;
    let y = a.supermatrix(rng, DIMS)?;
    let identity = SuperMatrix::identity(DIMS);
    let x_inv = x.inverse()?;
    let two_sided = x.try_mul(&x_inv)? == identity && x_inv.try_mul(&x)? == identity;
    Ok(two_sided && x.try_mul(&y)?.inverse()? == y.inverse()?.try_mul(&x_inv)?)
}

fn berezinian_inverse(a: &Alphabet, rng: &mut ChaCha8Rng) -> Result<bool> {
    let x = a.supermatrix(rng, DIMS)?;
    Ok(x.inverse()?.berezinian()?.try_mul(&x.berezinian()?)?.is_one())
}

fn berezinian_blocks(a: &Alphabet, rng: &mut ChaCha8Rng) -> Result<bool> {
    let x = a.supermatrix(rng, DIMS)?;
    Ok(x.berezinian()? == x.berezinian_via_a()?)
}

fn supertrace_commutator(a: &Alphabet, rng: &mut ChaCha8Rng) -> Result<bool> {
    let x = a.supermatrix(rng, DIMS)?;
    let y = a.supermatrix(rng, DIMS)?;
    Ok(x.try_mul(&y)?.try_sub(&y.try_mul(&x)?)?.supertrace()?.is_zero())
}

fn homogeneous_matrix(a: &Alphabet, rng: &mut ChaCha8Rng, parity: u8) -> Result<SuperMatrix<GrassmannElement>> {
    SuperMatrix::try_from_fn(DIMS, DIMS, |i, j| a.element(rng, (parity + DIMS.parity_of(i) + DIMS.parity_of(j)) % 2))
}

fn supertrace_swap(a: &Alphabet, rng: &mut ChaCha8Rng) -> Result<bool> {
    let (px, py) = (rng.gen_range(0..2u8), rng.gen_range(0..2u8));
    let x = homogeneous_matrix(a, rng, px)?;
    let y = homogeneous_matrix(a, rng, py)?;
    let lhs = x.try_mul(&y)?.supertrace()?;
    let rhs = sign(px * py == 1, y.try_mul(&x)?.supertrace()?);
    Ok(lhs == rhs)
}
