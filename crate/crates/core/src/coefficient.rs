//! Rational functions with a canonical reduced representation.

use alloc::collections::BTreeSet;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::poly::{Monomial, Poly};
use crate::scalar::GaussRat;
use crate::symbol::SymbolId;

/// `num / den` with `gcd(num, den) = 1` and a monic denominator, so that
/// structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Coefficient {
    num: Poly,
    den: Poly,
}

impl Default for Coefficient {
    fn default() -> Self {
        Coefficient::zero()
    }
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Coefficient::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Coefficient {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Coefficient::constant(GaussRat::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Coefficient::constant(GaussRat::from_ratio(n, d))
    }

    pub fn var(v: SymbolId) -> Self {
        Coefficient::from_poly(Poly::var(v))
    }

    pub fn from_poly(num: Poly) -> Self {
        Coefficient { num, den: Poly::one() }
    }

    /// `None` when the denominator is zero.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Coefficient::zero();
        }
        if let Some(c) = den.constant_value() {
            let inv = c.inv().expect("non-zero denominator");
            return Coefficient {
                num: num.scale(&inv),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading().map(|(_, c)| c.clone()).expect("non-zero denominator");
        if lc.is_one() {
            Coefficient { num, den }
        } else {
            let inv = lc.inv().expect("non-zero leading coefficient");
            Coefficient {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<GaussRat> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn variables(&self) -> BTreeSet<SymbolId> {
        let mut vars = self.num.variables();
        vars.extend(self.den.variables());
        vars
    }

    pub fn contains_var(&self, v: SymbolId) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Coefficient::zero();
        }
        Coefficient {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        Coefficient {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn derivative(&self, v: SymbolId) -> Self {
        if !self.contains_var(v) {
            return Coefficient::zero();
        }
        if self.den.is_one() {
            return Coefficient::from_poly(self.num.derivative(v));
        }
        if !self.den.contains_var(v) {
            return Self::reduce(self.num.derivative(v), self.den.clone());
        }
        let top = &(&self.num.derivative(v) * &self.den) - &(&self.num * &self.den.derivative(v));
        Self::reduce(top, &self.den * &self.den)
    }

    /// Splits a polynomial numerator into `(coefficient, monomial)` terms
    /// sharing this denominator.
    pub fn numerator_terms(&self) -> impl Iterator<Item = (Coefficient, &Monomial)> + '_ {
        self.num.terms().map(move |(m, c)| {
            (
                Coefficient::reduce(Poly::constant(c.clone()), self.den.clone()),
                m,
            )
        })
    }
}

impl Add<&Coefficient> for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return Coefficient::from_poly(num);
            }
            return Coefficient::reduce(num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Coefficient::reduce(num, &self.den * &rhs.den)
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &Coefficient) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num += &rhs.num;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl Coefficient {
    /// `self += sign * a * b`.
    pub fn add_product(&mut self, a: &Coefficient, b: &Coefficient, negative: bool) {
        if self.den.is_one() && a.den.is_one() && b.den.is_one() {
            self.num.add_product(&a.num, &b.num, negative);
        } else {
            let p = a * b;
            *self += &(if negative { -p } else { p });
        }
    }
}

impl Sub<&Coefficient> for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        self + &(-rhs)
    }
}

impl Mul<&Coefficient> for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        if self.is_zero() || rhs.is_zero() {
            return Coefficient::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Coefficient::from_poly(&self.num * &rhs.num);
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        Coefficient::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

forward_binop!(Coefficient, Add, add);
forward_binop!(Coefficient, Sub, sub);
forward_binop!(Coefficient, Mul, mul);
forward_neg!(Coefficient);

impl From<Poly> for Coefficient {
    fn from(p: Poly) -> Self {
        Coefficient::from_poly(p)
    }
}

impl From<GaussRat> for Coefficient {
    fn from(c: GaussRat) -> Self {
        Coefficient::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{Registry, SymbolKind};

    #[test]
    fn canonical_reduction() {
        let mut reg = Registry::new();
        let x = reg.register("x", SymbolKind::EvenCoordinate, None).unwrap();
        let y = reg.register("y", SymbolKind::EvenCoordinate, None).unwrap();
        let (px, py) = (Poly::var(x), Poly::var(y));
        let a = Coefficient::new(&(&px * &px) - &(&py * &py), (&px - &py).scale(&GaussRat::from_int(2))).unwrap();
        let b = Coefficient::from_poly((&px + &py).scale(&GaussRat::from_ratio(1, 2)));
        assert_eq!(a, b);
        assert!(Coefficient::new(Poly::one(), Poly::zero()).is_none());
        let inv_x = Coefficient::var(x).inv().unwrap();
        assert!((&inv_x * &Coefficient::var(x)).is_one());
        assert_eq!(inv_x.derivative(x), -&inv_x.pow(2));
    }

    #[test]
    fn sums_over_common_denominator() {
        let mut reg = Registry::new();
        let x = reg.register("x", SymbolKind::EvenCoordinate, None).unwrap();
        let one_over_x = Coefficient::var(x).inv().unwrap();
        let s = &one_over_x + &one_over_x;
        assert_eq!(s, one_over_x.scale(&GaussRat::from_int(2)));
        let zero = &s - &s;
        assert!(zero.is_zero());
        assert_eq!(zero, Coefficient::zero());
    }
}
