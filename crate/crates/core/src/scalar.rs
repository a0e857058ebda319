//! Gaussian rationals: the exact scalar field `Q(i)`.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Values whose parts fit in machine-word fractions stay unboxed; everything
/// else is a pair of big rationals. The split is canonical so derived
/// equality and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussRat(Repr);

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    Small(Small, Small),
    Big(BigRational, BigRational),
}

/// Reduced `num/den` with `den > 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct Small {
    num: i64,
    den: i64,
}

impl Small {
    const ZERO: Small = Small { num: 0, den: 1 };

    const fn int(n: i64) -> Small {
        Small { num: n, den: 1 }
    }

    fn from_wide(num: i128, den: i128) -> Option<Small> {
        let g = num.gcd(&den);
        let (mut num, mut den) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if den < 0 {
            num = -num;
            den = -den;
        }
        Some(Small { num: i64::try_from(num).ok()?, den: i64::try_from(den).ok()? })
    }

    fn from_big(r: &BigRational) -> Option<Small> {
        Some(Small { num: r.numer().to_i64()?, den: r.denom().to_i64()? })
    }

    fn to_big(self) -> BigRational {
        BigRational::new_raw(BigInt::from(self.num), BigInt::from(self.den))
    }

    fn is_zero(self) -> bool {
        self.num == 0
    }

    fn narrow(num: i64, den: i64) -> Small {
        let g = gcd_u64(num.unsigned_abs(), den.unsigned_abs()) as i64;
        if g > 1 {
            Small { num: num / g, den: den / g }
        } else {
            Small { num, den }
        }
    }

    fn add(self, o: Small) -> Option<Small> {
        if self.den == o.den {
            if let Some(num) = self.num.checked_add(o.num) {
                return Some(if self.den == 1 { Small::int(num) } else { Small::narrow(num, self.den) });
            }
        }
        if let (Some(x), Some(y), Some(den)) =
            (self.num.checked_mul(o.den), o.num.checked_mul(self.den), self.den.checked_mul(o.den))
        {
            if let Some(num) = x.checked_add(y) {
                return Some(Small::narrow(num, den));
            }
        }
        let num = i128::from(self.num) * i128::from(o.den) + i128::from(o.num) * i128::from(self.den);
        Small::from_wide(num, i128::from(self.den) * i128::from(o.den))
    }

    fn neg(self) -> Option<Small> {
        Some(Small { num: self.num.checked_neg()?, den: self.den })
    }

    fn mul(self, o: Small) -> Option<Small> {
        if self.den == 1 && o.den == 1 {
            return self.num.checked_mul(o.num).map(Small::int);
        }
        if let (Some(num), Some(den)) = (self.num.checked_mul(o.num), self.den.checked_mul(o.den)) {
            return Some(Small::narrow(num, den));
        }
        Small::from_wide(i128::from(self.num) * i128::from(o.num), i128::from(self.den) * i128::from(o.den))
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Default for GaussRat {
    fn default() -> Self {
        GaussRat::zero()
    }
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        match (Small::from_big(&re), Small::from_big(&im)) {
            (Some(a), Some(b)) => GaussRat(Repr::Small(a, b)),
            _ => GaussRat(Repr::Big(re, im)),
        }
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat(Repr::Small(Small::int(n), Small::ZERO))
    }

    /// Reads a real literal `n` or `n/d`, as printed by `Display`.
    pub fn parse_real(s: &str) -> Option<Self> {
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let valid = |t: &str| {
            let digits = t.strip_prefix('-').unwrap_or(t);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid(num) || !valid(den) || den.starts_with('-') {
            return None;
        }
        let num: BigInt = num.parse().ok()?;
        let den: BigInt = den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Self::real(BigRational::new(num, den)))
    }

    /// `num/den`; panics when `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn i() -> Self {
        GaussRat(Repr::Small(Small::ZERO, Small::int(1)))
    }

    pub fn re(&self) -> BigRational {
        match &self.0 {
            Repr::Small(a, _) => a.to_big(),
            Repr::Big(a, _) => a.clone(),
        }
    }

    pub fn im(&self) -> BigRational {
        match &self.0 {
            Repr::Small(_, b) => b.to_big(),
            Repr::Big(_, b) => b.clone(),
        }
    }

    fn parts(&self) -> (BigRational, BigRational) {
        (self.re(), self.im())
    }

    pub fn is_real(&self) -> bool {
        match &self.0 {
            Repr::Small(_, b) => b.is_zero(),
            Repr::Big(_, b) => b.is_zero(),
        }
    }

    pub fn conj(&self) -> Self {
        let (a, b) = self.parts();
        GaussRat::new(a, -b)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (re, im) = self.parts();
        if im.is_zero() {
            return Some(Self::real(re.recip()));
        }
        let norm = &re * &re + &im * &im;
        Some(GaussRat::new(&re / &norm, -(&im / &norm)))
    }

    pub fn to_complex(&self) -> Complex64 {
        match &self.0 {
            Repr::Small(a, b) => Complex64::new(a.num as f64 / a.den as f64, b.num as f64 / b.den as f64),
            Repr::Big(a, b) => Complex64::new(a.to_f64().unwrap_or(f64::NAN), b.to_f64().unwrap_or(f64::NAN)),
        }
    }

    /// Sign used to normalise leading coefficients: true when the first
    /// non-zero component is negative.
    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(a, b) => {
                if a.is_zero() {
                    b.num < 0
                } else {
                    a.num < 0
                }
            }
            Repr::Big(a, b) => {
                if a.is_zero() {
                    b.is_negative()
                } else {
                    a.is_negative()
                }
            }
        }
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat(Repr::Small(Small::ZERO, Small::ZERO))
    }

    fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(a, b) => a.is_zero() && b.is_zero(),
            Repr::Big(a, b) => a.is_zero() && b.is_zero(),
        }
    }
}

impl One for GaussRat {
    fn one() -> Self {
        Self::from_int(1)
    }

    fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Small(a, b) if *a == Small::int(1) && b.is_zero())
    }
}

impl Add<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            if let (Some(re), Some(im)) = (a.add(*c), b.add(*d)) {
                return GaussRat(Repr::Small(re, im));
            }
        }
        let ((a, b), (c, d)) = (self.parts(), rhs.parts());
        GaussRat::new(a + c, b + d)
    }
}

impl Sub<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        self + &(-rhs)
    }
}

fn small_mul(a: Small, b: Small, c: Small, d: Small) -> Option<(Small, Small)> {
    if b.is_zero() && d.is_zero() {
        return Some((a.mul(c)?, Small::ZERO));
    }
    let re = a.mul(c)?.add(b.mul(d)?.neg()?)?;
    let im = a.mul(d)?.add(b.mul(c)?)?;
    Some((re, im))
}

impl Mul<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            if let Some((re, im)) = small_mul(*a, *b, *c, *d) {
                return GaussRat(Repr::Small(re, im));
            }
        }
        let ((a, b), (c, d)) = (self.parts(), rhs.parts());
        if b.is_zero() && d.is_zero() {
            return GaussRat::real(a * c);
        }
        GaussRat::new(&a * &c - &b * &d, &a * &d + &b * &c)
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        if let Repr::Small(a, b) = &self.0 {
            if let (Some(x), Some(y)) = (a.neg(), b.neg()) {
                return GaussRat(Repr::Small(x, y));
            }
        }
        let (a, b) = self.parts();
        GaussRat::new(-a, -b)
    }
}

forward_binop!(GaussRat, Add, add);
forward_binop!(GaussRat, Sub, sub);
forward_binop!(GaussRat, Mul, mul);
forward_neg!(GaussRat);

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        GaussRat::from_int(n)
    }
}

impl From<BigRational> for GaussRat {
    fn from(r: BigRational) -> Self {
        GaussRat::real(r)
    }
}

/// Real values print as `a` or `a/b`; others as `(c re im)`.
impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", self.re())
        } else {
            write!(f, "(c {} {})", self.re(), self.im())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_operations() {
        let a = GaussRat::new(BigRational::from_integer(1.into()), BigRational::from_integer(2.into()));
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert_eq!(&GaussRat::i() * &GaussRat::i(), GaussRat::from_int(-1));
        assert!(GaussRat::zero().inv().is_none());
        assert_eq!(GaussRat::from_ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(GaussRat::i().to_string(), "(c 0 1)");
        assert_eq!(GaussRat::parse_real("-6/4"), Some(GaussRat::from_ratio(-3, 2)));
        assert_eq!(GaussRat::parse_real("123456789012345678901234567890").unwrap().to_string(), "123456789012345678901234567890");
        for bad in ["", "1/0", "a", "1/-2", "--1", "1/"] {
            assert_eq!(GaussRat::parse_real(bad), None, "{bad}");
        }
        let half = GaussRat::from_ratio(1, 2);
        assert_eq!(&half + &half, GaussRat::one());
        let huge = GaussRat::from_int(i64::MAX);
        let sum = &huge + &huge;
        assert_eq!(&sum - &huge, huge);
        assert_eq!((&huge * &huge).to_string(), "85070591730234615847396907784232501249");
        let third = GaussRat::from_ratio(1, 3);
        assert_eq!(&(&third + &half) * &GaussRat::from_int(6), GaussRat::from_int(5));
        let tiny = GaussRat::from_ratio(1, i64::MAX);
        assert_eq!(&(&tiny * &tiny) * &GaussRat::from_int(i64::MAX), tiny);
        assert_eq!(&GaussRat::new(half.re(), half.re()) - &GaussRat::new(half.re(), half.re()), GaussRat::zero());
    }
}
