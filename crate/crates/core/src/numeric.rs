//! Complex floating-point shadow of the Grassmann algebra, with
//! nilpotent-aware exponential and logarithm.

use alloc::collections::BTreeMap;
use core::f64::consts::PI;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grassmann::OddMonomial;
use crate::symbol::SymbolId;

/// Values for the even symbols of an expression.
pub type Point = BTreeMap<SymbolId, Complex64>;

/// Argument window of the logarithm; the excluded ray is the window edge.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum BranchWindow {
    /// `0 < arg < 2 pi`, cut along the positive reals.
    #[default]
    ZeroTwoPi,
    /// `-pi < arg < pi`, cut along the negative reals.
    MinusPiPi,
}

impl BranchWindow {
    pub const ALL: [BranchWindow; 2] = [BranchWindow::ZeroTwoPi, BranchWindow::MinusPiPi];

    pub fn label(self) -> &'static str {
        match self {
            BranchWindow::ZeroTwoPi => "0-2pi",
            BranchWindow::MinusPiPi => "-pi-pi",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "0-2pi" => Some(BranchWindow::ZeroTwoPi),
            "-pi-pi" => Some(BranchWindow::MinusPiPi),
            _ => None,
        }
    }

    /// Argument of `w` inside the window.
    pub fn arg(self, w: Complex64) -> Result<f64> {
        if w.is_zero() {
            return Err(Error::ZeroBody);
        }
        match self {
            BranchWindow::ZeroTwoPi => {
                if w.im == 0.0 && w.re > 0.0 {
                    return Err(Error::BranchCut);
                }
                let a = libm::atan2(w.im, w.re);
                Ok(if a <= 0.0 { a + 2.0 * PI } else { a })
            }
            BranchWindow::MinusPiPi => {
                if w.im == 0.0 && w.re < 0.0 {
                    return Err(Error::BranchCut);
                }
                Ok(libm::atan2(w.im, w.re))
            }
        }
    }

    pub fn ln(self, w: Complex64) -> Result<Complex64> {
        let arg = self.arg(w)?;
        Ok(Complex64::new(libm::log(w.norm()), arg))
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct NumericGrassmann {
    terms: BTreeMap<(OddMonomial, bool), Complex64>,
}

impl NumericGrassmann {
    pub fn zero() -> Self {
        NumericGrassmann::default()
    }

    pub fn one() -> Self {
        NumericGrassmann::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        let mut x = NumericGrassmann::zero();
        x.add_term(OddMonomial::one(), false, c);
        x
    }

    pub fn nu0() -> Self {
        let mut x = NumericGrassmann::zero();
        x.add_term(OddMonomial::one(), true, Complex64::new(1.0, 0.0));
        x
    }

    pub fn generator(s: SymbolId, c: Complex64) -> Self {
        let mut x = NumericGrassmann::zero();
        x.add_term(OddMonomial::single(s), false, c);
        x
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (OddMonomial, bool, Complex64)>) -> Self {
        let mut x = NumericGrassmann::zero();
        for (m, n, c) in terms {
            x.add_term(m, n, c);
        }
        x
    }

    pub fn add_term(&mut self, m: OddMonomial, nu0: bool, c: Complex64) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((m, nu0)).or_insert_with(Complex64::zero);
        *slot += c;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OddMonomial, bool, Complex64)> {
        self.terms.iter().map(|((m, n), c)| (m, *n, *c))
    }

    pub fn coefficient(&self, m: &OddMonomial, nu0: bool) -> Complex64 {
        self.terms.get(&(m.clone(), nu0)).copied().unwrap_or_else(Complex64::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.iter().filter(|(_, c)| !c.is_zero()).map(|((m, _), _)| m.parity());
        let Some(first) = it.next() else {
            return Some(0);
        };
        it.all(|p| p == first).then_some(first)
    }

    /// `(b0, b1)` with body `b0 + nu0 b1`.
    pub fn body(&self) -> (Complex64, Complex64) {
        let empty = OddMonomial::one();
        (self.coefficient(&empty, false), self.coefficient(&empty, true))
    }

    pub fn nilpotent_part(&self) -> NumericGrassmann {
        NumericGrassmann {
            terms: self
                .terms
                .iter()
                .filter(|((m, _), _)| !m.is_empty())
                .map(|(k, c)| (k.clone(), *c))
                .collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> NumericGrassmann {
        NumericGrassmann {
            terms: self.terms.iter().map(|(k, a)| (k.clone(), a * c)).collect(),
        }
    }

    /// Largest coefficient modulus.
    pub fn max_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Splits `x = a + nu0 b` into the idempotent components `a + b` and `a - b`.
    fn split_idempotents(&self) -> (NumericGrassmann, NumericGrassmann) {
        let mut plus = NumericGrassmann::zero();
        let mut minus = NumericGrassmann::zero();
        for ((m, n), c) in &self.terms {
            plus.add_term(m.clone(), false, *c);
            minus.add_term(m.clone(), false, if *n { -c } else { *c });
        }
        (plus, minus)
    }

    fn join_idempotents(plus: &NumericGrassmann, minus: &NumericGrassmann) -> NumericGrassmann {
        let half = Complex64::new(0.5, 0.0);
        let mut out = NumericGrassmann::zero();
        for ((m, _), c) in &plus.terms {
            out.add_term(m.clone(), false, c * half);
            out.add_term(m.clone(), true, c * half);
        }
        for ((m, _), c) in &minus.terms {
            out.add_term(m.clone(), false, c * half);
            out.add_term(m.clone(), true, -c * half);
        }
        out
    }

    fn exp_free(&self) -> NumericGrassmann {
        let (b, _) = self.body();
        let n = self.nilpotent_part();
        let mut acc = NumericGrassmann::one();
        let mut term = NumericGrassmann::one();
        let mut k = 1.0;
        loop {
            term = (&term * &n).scale(Complex64::new(1.0 / k, 0.0));
            if term.is_zero() {
                break;
            }
            acc = &acc + &term;
            k += 1.0;
        }
        acc.scale(b.exp())
    }

    fn ln_free(&self, window: BranchWindow) -> Result<NumericGrassmann> {
        let (b, _) = self.body();
        let log_b = window.ln(b)?;
        let ratio = self.nilpotent_part().scale(b.inv());
        let mut acc = NumericGrassmann::constant(log_b);
        let mut power = NumericGrassmann::one();
        let mut k = 1.0;
        let mut sign = 1.0;
        loop {
            power = &power * &ratio;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power.scale(Complex64::new(sign / k, 0.0));
            k += 1.0;
            sign = -sign;
        }
        Ok(acc)
    }

    /// Exponential of an even element.
    pub fn exp(&self) -> Result<NumericGrassmann> {
        if self.parity() != Some(0) {
            return Err(Error::Inhomogeneous);
        }
        let (plus, minus) = self.split_idempotents();
        Ok(Self::join_idempotents(&plus.exp_free(), &minus.exp_free()))
    }

    /// Logarithm of an even element with both idempotent bodies inside `window`.
    pub fn ln(&self, window: BranchWindow) -> Result<NumericGrassmann> {
        if self.parity() != Some(0) {
            return Err(Error::Inhomogeneous);
        }
        let (plus, minus) = self.split_idempotents();
        Ok(Self::join_idempotents(&plus.ln_free(window)?, &minus.ln_free(window)?))
    }

    /// Inverse when both idempotent bodies are non-zero.
    pub fn invert(&self) -> Result<NumericGrassmann> {
        let (b0, b1) = self.body();
        let norm = b0 * b0 - b1 * b1;
        if norm.is_zero() {
            return Err(Error::NonInvertibleBody);
        }
        let b_inv = NumericGrassmann::from_terms([
            (OddMonomial::one(), false, b0 / norm),
            (OddMonomial::one(), true, -b1 / norm),
        ]);
        let step = -(&self.nilpotent_part() * &b_inv);
        let mut term = b_inv.clone();
        let mut acc = b_inv;
        loop {
            term = &term * &step;
            if term.is_zero() {
                break;
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Maximum coefficient distance.
    pub fn distance(&self, other: &NumericGrassmann) -> f64 {
        (self - other).max_norm()
    }
}

impl Add<&NumericGrassmann> for &NumericGrassmann {
    type Output = NumericGrassmann;
    fn add(self, rhs: &NumericGrassmann) -> NumericGrassmann {
        let mut out = self.clone();
        for ((m, n), c) in &rhs.terms {
            out.add_term(m.clone(), *n, *c);
        }
        out
    }
}

impl Sub<&NumericGrassmann> for &NumericGrassmann {
    type Output = NumericGrassmann;
    fn sub(self, rhs: &NumericGrassmann) -> NumericGrassmann {
        let mut out = self.clone();
        for ((m, n), c) in &rhs.terms {
            out.add_term(m.clone(), *n, -c);
        }
        out
    }
}

impl Mul<&NumericGrassmann> for &NumericGrassmann {
    type Output = NumericGrassmann;
    fn mul(self, rhs: &NumericGrassmann) -> NumericGrassmann {
        let mut out = NumericGrassmann::zero();
        for ((ma, na), ca) in &self.terms {
            for ((mb, nb), cb) in &rhs.terms {
                if let Some((negative, m)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, na ^ nb, if negative { -c } else { c });
                }
            }
        }
        out
    }
}

impl Neg for &NumericGrassmann {
    type Output = NumericGrassmann;
    fn neg(self) -> NumericGrassmann {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

forward_binop!(NumericGrassmann, Add, add);
forward_binop!(NumericGrassmann, Sub, sub);
forward_binop!(NumericGrassmann, Mul, mul);
forward_neg!(NumericGrassmann);
