//! The nu0-extended Grassmann algebra over rational-function coefficients.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::numeric::{NumericGrassmann, Point};
use crate::poly::{Monomial, Poly};
use crate::scalar::GaussRat;
use crate::symbol::{Registry, SymbolId, SymbolKind};

/// Strictly increasing list of odd generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct OddMonomial(Vec<SymbolId>);

impl OddMonomial {
    pub fn one() -> Self {
        OddMonomial(Vec::new())
    }

    pub fn single(s: SymbolId) -> Self {
        OddMonomial(alloc::vec![s])
    }

    /// Sorts `symbols` into canonical order. Returns the sign of the
    /// permutation (`true` for odd) or `None` if a generator repeats.
    pub fn from_unsorted(symbols: &[SymbolId]) -> Option<(bool, OddMonomial)> {
        let mut v: Vec<SymbolId> = symbols.to_vec();
        let mut negative = false;
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                negative = !negative;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((negative, OddMonomial(v)))
    }

    pub fn symbols(&self) -> &[SymbolId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parity(&self) -> u8 {
        (self.0.len() % 2) as u8
    }

    /// Product with its sign, `None` when a generator repeats.
    pub fn mul(&self, other: &OddMonomial) -> Option<(bool, OddMonomial)> {
        if other.0.is_empty() {
            return Some((false, self.clone()));
        }
        if self.0.is_empty() {
            return Some((false, other.clone()));
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut swaps = 0usize;
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    swaps += a.len() - i;
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => return None,
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some((swaps % 2 == 1, OddMonomial(out)))
    }

    pub fn without(&self, index: usize) -> OddMonomial {
        let mut v = self.0.clone();
        v.remove(index);
        OddMonomial(v)
    }
}

impl Ord for OddMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for OddMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Registry tags combine like this: 0 marks a registry-free constant.
pub(crate) fn merge_tags(a: u32, b: u32) -> Result<u32> {
    match (a, b) {
        (0, t) | (t, 0) => Ok(t),
        (s, t) if s == t => Ok(s),
        _ => Err(Error::RegistryMismatch),
    }
}

/// Finite sum of `coefficient * nu0^k * odd monomial` with `k in {0, 1}`.
#[derive(Clone, Debug, Default)]
pub struct GrassmannElement {
    tag: u32,
    terms: BTreeMap<(OddMonomial, bool), Coefficient>,
}

impl PartialEq for GrassmannElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for GrassmannElement {}

impl GrassmannElement {
    pub fn zero() -> Self {
        GrassmannElement::default()
    }

    pub fn one() -> Self {
        GrassmannElement::constant(GaussRat::from_int(1))
    }

    pub fn constant(c: GaussRat) -> Self {
        GrassmannElement::from_coefficient(0, Coefficient::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        GrassmannElement::constant(GaussRat::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        GrassmannElement::constant(GaussRat::from_ratio(n, d))
    }

    /// The central involution symbol.
    pub fn nu0() -> Self {
        let mut x = GrassmannElement::zero();
        x.add_term(OddMonomial::one(), true, Coefficient::one());
        x
    }

    pub fn from_coefficient(tag: u32, c: Coefficient) -> Self {
        let mut x = GrassmannElement { tag, terms: BTreeMap::new() };
        x.add_term(OddMonomial::one(), false, c);
        x
    }

    pub fn symbol(reg: &Registry, id: SymbolId) -> Self {
        GrassmannElement::symbol_with_tag(reg.tag(), id)
    }

    pub(crate) fn symbol_with_tag(tag: u32, id: SymbolId) -> Self {
        let mut x = GrassmannElement { tag, terms: BTreeMap::new() };
        if id.is_even() {
            x.add_term(OddMonomial::one(), false, Coefficient::var(id));
        } else {
            x.add_term(OddMonomial::single(id), false, Coefficient::one());
        }
        x
    }

    pub fn from_terms(tag: u32, terms: impl IntoIterator<Item = (OddMonomial, bool, Coefficient)>) -> Self {
        let mut x = GrassmannElement { tag, terms: BTreeMap::new() };
        for (m, n, c) in terms {
            x.add_term(m, n, c);
        }
        x
    }

    pub fn tag(&self) -> u32 {
        self.tag
    }

    pub fn with_tag(mut self, tag: u32) -> Result<Self> {
        self.tag = merge_tags(self.tag, tag)?;
        Ok(self)
    }

    pub(crate) fn add_term(&mut self, m: OddMonomial, nu0: bool, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((m, nu0)) {
            alloc::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += &c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// In-place sum; panics on a registry mismatch.
    pub(crate) fn accumulate(&mut self, rhs: &GrassmannElement) {
        self.tag = merge_tags(self.tag, rhs.tag).expect("single registry");
        for ((m, n), c) in &rhs.terms {
            self.add_term(m.clone(), *n, c.clone());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OddMonomial, bool, &Coefficient)> {
        self.terms.iter().map(|((m, n), c)| (m, *n, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &OddMonomial, nu0: bool) -> Option<&Coefficient> {
        self.terms.get(&(m.clone(), nu0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|((m, n), c)| m.is_empty() && !n && c.is_one())
    }

    /// `Some(p)` when every term has parity `p`; zero counts as even.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|(m, _)| m.parity());
        let Some(first) = it.next() else {
            return Some(0);
        };
        it.all(|p| p == first).then_some(first)
    }

    pub fn odd_symbols(&self) -> BTreeSet<SymbolId> {
        self.terms.keys().flat_map(|(m, _)| m.symbols().iter().copied()).collect()
    }

    pub fn even_symbols(&self) -> BTreeSet<SymbolId> {
        let mut out = BTreeSet::new();
        for c in self.terms.values() {
            out.extend(c.variables());
        }
        out
    }

    /// Part with empty odd monomial, both nu0 components kept.
    pub fn body(&self) -> GrassmannElement {
        GrassmannElement {
            tag: self.tag,
            terms: self
                .terms
                .iter()
                .filter(|((m, _), _)| m.is_empty())
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// `(c0, c1)` with body `c0 + nu0 c1`.
    pub fn body_parts(&self) -> (Coefficient, Coefficient) {
        let empty = OddMonomial::one();
        (
            self.coefficient(&empty, false).cloned().unwrap_or_default(),
            self.coefficient(&empty, true).cloned().unwrap_or_default(),
        )
    }

    pub fn nilpotent_part(&self) -> GrassmannElement {
        GrassmannElement {
            tag: self.tag,
            terms: self
                .terms
                .iter()
                .filter(|((m, _), _)| !m.is_empty())
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops the nu0 factor of a nu0-proportional element (`nu0^2 = 1`).
    pub fn mul_nu0(&self) -> GrassmannElement {
        GrassmannElement {
            tag: self.tag,
            terms: self.terms.iter().map(|((m, n), c)| ((m.clone(), !n), c.clone())).collect(),
        }
    }

    /// Negates the odd terms: the effect of moving an odd quantity past `self`.
    pub fn parity_twist(&self) -> GrassmannElement {
        GrassmannElement {
            tag: self.tag,
            terms: self
                .terms
                .iter()
                .map(|((m, n), c)| ((m.clone(), *n), if m.parity() == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> GrassmannElement {
        if c.is_zero() {
            return GrassmannElement { tag: self.tag, terms: BTreeMap::new() };
        }
        GrassmannElement {
            tag: self.tag,
            terms: self.terms.iter().map(|(k, a)| (k.clone(), a * c)).collect(),
        }
    }

    pub fn try_add(&self, rhs: &GrassmannElement) -> Result<GrassmannElement> {
        let tag = merge_tags(self.tag, rhs.tag)?;
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        out.tag = tag;
        for (k, c) in &small.terms {
            out.add_term(k.0.clone(), k.1, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &GrassmannElement) -> Result<GrassmannElement> {
        self.try_add(&-rhs)
    }

    pub fn try_mul(&self, rhs: &GrassmannElement) -> Result<GrassmannElement> {
        let mut out = GrassmannElement { tag: merge_tags(self.tag, rhs.tag)?, terms: BTreeMap::new() };
        out.add_product(self, rhs, false, false)?;
        Ok(out)
    }

    /// `self += sign * a * b`, with `b` parity-twisted when `twist` is set.
    pub(crate) fn add_product(&mut self, a: &GrassmannElement, b: &GrassmannElement, negative: bool, twist: bool) -> Result<()> {
        self.tag = merge_tags(self.tag, merge_tags(a.tag, b.tag)?)?;
        for ((ma, na), ca) in &a.terms {
            for ((mb, nb), cb) in &b.terms {
                let Some((swap, m)) = ma.mul(mb) else {
                    continue;
                };
                let flip = negative ^ swap ^ (twist && mb.parity() == 1);
                self.terms.entry((m, na ^ nb)).or_default().add_product(ca, cb, flip);
            }
        }
        self.terms.retain(|_, c| !c.is_zero());
        Ok(())
    }

    pub fn pow(&self, e: u32) -> GrassmannElement {
        let mut acc = GrassmannElement::one();
        acc.tag = self.tag;
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of `c0 + nu0 c1` in the scalar ring `C[nu0]`.
    fn body_inverse(&self) -> Result<GrassmannElement> {
        let (c0, c1) = self.body_parts();
        if c1.is_zero() {
            let inv = c0.inv().ok_or(Error::NonInvertibleBody)?;
            return Ok(GrassmannElement::from_coefficient(self.tag, inv));
        }
        let norm = &(&c0 * &c0) - &(&c1 * &c1);
        let inv = norm.inv().ok_or(Error::NonInvertibleBody)?;
        Ok(GrassmannElement::from_terms(
            self.tag,
            [(OddMonomial::one(), false, &c0 * &inv), (OddMonomial::one(), true, -(&c1 * &inv))],
        ))
    }

    pub fn is_body_invertible(&self) -> bool {
        self.body_inverse().is_ok()
    }

    /// Two-sided inverse via the terminating geometric series on the
    /// nilpotent part.
    pub fn invert(&self) -> Result<GrassmannElement> {
        let b_inv = self.body_inverse()?;
        let n = self.nilpotent_part();
        if n.is_zero() {
            return Ok(b_inv);
        }
        let step = -(&n * &b_inv);
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

    /// Applies the formal involution `nu` term by term, factoring each term as
    /// `coefficient * generator` (see [`nu_generator`]). `unit` is the odd
    /// symbol standing for `nu(1)`.
    pub fn nu_apply(&self, reg: &Registry, unit: SymbolId) -> Result<GrassmannElement> {
        if unit.kind() != SymbolKind::OddUnit {
            return Err(Error::UndefinedNu(format!("`{}` is not an odd unit", reg.name(unit))));
        }
        let tag = merge_tags(self.tag, reg.tag())?;
        let mut out = GrassmannElement { tag, terms: BTreeMap::new() };
        for ((m, n), c) in &self.terms {
            match m.len() {
                0 => {
                    for (scalar, mono) in c.numerator_terms() {
                        let (gen, rest) = nu_generator(reg, mono)?;
                        let coeff = &scalar * &Coefficient::from_poly(Poly::term(rest, GaussRat::from_int(1)));
                        match gen {
                            None => out.add_term(OddMonomial::single(unit), *n, coeff),
                            Some(g) => {
                                let partner = partner_of(reg, g)?;
                                out.add_term(OddMonomial::single(partner), *n, coeff);
                            }
                        }
                    }
                }
                1 => {
                    let g = m.symbols()[0];
                    if g.kind() == SymbolKind::OddUnit {
                        out.add_term(OddMonomial::one(), *n, c.clone());
                    } else {
                        let partner = partner_of(reg, g)?;
                        out.add_term(OddMonomial::one(), *n, c * &Coefficient::var(partner));
                    }
                }
                _ => {
                    return Err(Error::UndefinedNu(format!(
                        "product of {} odd generators",
                        m.len()
                    )))
                }
            }
        }
        Ok(out)
    }

    /// Ring-morphism extension of `subst`; unmapped symbols are fixed.
    pub fn substitute(&self, subst: &Substitution) -> Result<GrassmannElement> {
        let mut tag = self.tag;
        for v in subst.map.values() {
            tag = merge_tags(tag, v.tag)?;
        }
        let mut cache = PowerCache::default();
        let mut out = GrassmannElement { tag, terms: BTreeMap::new() };
        for ((m, n), c) in &self.terms {
            let mut value = substitute_coefficient(c, subst, &mut cache, tag)?;
            for &s in m.symbols() {
                let image = match subst.get(s) {
                    Some(v) => v.clone(),
                    None => GrassmannElement::symbol_with_tag(tag, s),
                };
                value = value.try_mul(&image)?;
            }
            if *n {
                value = value.mul_nu0();
            }
            out = out.try_add(&value)?;
        }
        Ok(out)
    }

    pub fn eval_numeric(&self, point: &Point) -> Result<NumericGrassmann> {
        let mut out = NumericGrassmann::zero();
        for ((m, n), c) in &self.terms {
            out.add_term(m.clone(), *n, eval_coefficient(c, point)?);
        }
        Ok(out)
    }
}

/// Chooses the generator of a numerator monomial: a lone `nu(e)` factor, or
/// else a lone `z` factor, or `None` for a generator-free monomial.
pub fn nu_generator(reg: &Registry, m: &Monomial) -> Result<(Option<SymbolId>, Monomial)> {
    let mut partners = Vec::new();
    let mut coords = Vec::new();
    for &(v, e) in m.factors() {
        match v.kind() {
            SymbolKind::EvenPartner => partners.push((v, e)),
            SymbolKind::EvenCoordinate => coords.push((v, e)),
            _ => {}
        }
    }
    let pick = match (partners.as_slice(), coords.as_slice()) {
        ([], []) => return Ok((None, m.clone())),
        ([(v, 1)], _) => *v,
        ([], [(v, 1)]) => *v,
        _ => {
            let names: Vec<String> = m.factors().iter().map(|(v, _)| String::from(reg.name(*v))).collect();
            return Err(Error::UndefinedNu(format!("ambiguous product {}", names.join("*"))));
        }
    };
    let rest = m.div(&Monomial::var(pick)).expect("generator divides its monomial");
    Ok((Some(pick), rest))
}

fn partner_of(reg: &Registry, g: SymbolId) -> Result<SymbolId> {
    reg.partner(g)
        .ok_or_else(|| Error::UndefinedNu(format!("`{}` has no partner", reg.name(g))))
}

pub(crate) fn eval_coefficient(c: &Coefficient, point: &Point) -> Result<Complex64> {
    let den = eval_poly(c.denominator(), point)?;
    if den.is_zero() {
        return Err(Error::PoleAtPoint);
    }
    Ok(eval_poly(c.numerator(), point)? / den)
}

pub(crate) fn eval_poly(p: &Poly, point: &Point) -> Result<Complex64> {
    let mut acc = Complex64::zero();
    for (m, c) in p.terms() {
        let mut t = c.to_complex();
        for &(v, e) in m.factors() {
            let x = point.get(&v).ok_or_else(|| Error::MissingValue(format!("#{}", v.index())))?;
            t *= x.powu(e);
        }
        acc += t;
    }
    Ok(acc)
}

/// Parity-preserving assignment of elements to symbols.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Substitution {
    map: BTreeMap<SymbolId, GrassmannElement>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn insert(&mut self, symbol: SymbolId, value: GrassmannElement) -> Result<()> {
        if !value.is_zero() && value.parity() != Some(symbol.parity()) {
            return Err(Error::ParityMismatch(format!("#{}", symbol.index())));
        }
        self.map.insert(symbol, value);
        Ok(())
    }

    pub fn get(&self, symbol: SymbolId) -> Option<&GrassmannElement> {
        self.map.get(&symbol)
    }

    pub fn iter(&self) -> impl Iterator<Item = (SymbolId, &GrassmannElement)> {
        self.map.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn contains(&self, symbol: SymbolId) -> bool {
        self.map.contains_key(&symbol)
    }
}

#[derive(Default)]
struct PowerCache {
    powers: BTreeMap<(SymbolId, u32), GrassmannElement>,
}

impl PowerCache {
    fn power(&mut self, v: SymbolId, e: u32, base: &GrassmannElement) -> GrassmannElement {
        if let Some(p) = self.powers.get(&(v, e)) {
            return p.clone();
        }
        let p = if e == 1 { base.clone() } else { &self.power(v, e - 1, base) * base };
        self.powers.insert((v, e), p.clone());
        p
    }
}

fn substitute_poly(p: &Poly, subst: &Substitution, cache: &mut PowerCache, tag: u32) -> GrassmannElement {
    let mut out = GrassmannElement { tag, terms: BTreeMap::new() };
    for (m, c) in p.terms() {
        let mut kept = Vec::new();
        let mut value: Option<GrassmannElement> = None;
        for &(v, e) in m.factors() {
            match subst.get(v) {
                Some(image) => {
                    let pw = cache.power(v, e, image);
                    value = Some(match value {
                        None => pw,
                        Some(acc) => &acc * &pw,
                    });
                }
                None => kept.push((v, e)),
            }
        }
        let scalar = Coefficient::from_poly(Poly::term(Monomial::from_factors(kept), c.clone()));
        let term = match value {
            None => GrassmannElement::from_coefficient(tag, scalar),
            Some(v) => v.scale(&scalar),
        };
        out = &out + &term;
    }
    out
}

fn substitute_coefficient(
    c: &Coefficient,
    subst: &Substitution,
    cache: &mut PowerCache,
    tag: u32,
) -> Result<GrassmannElement> {
    if !c.variables().iter().any(|v| subst.contains(*v)) {
        return Ok(GrassmannElement::from_coefficient(tag, c.clone()));
    }
    let num = substitute_poly(c.numerator(), subst, cache, tag);
    if c.is_polynomial() {
        return Ok(num);
    }
    let den = substitute_poly(c.denominator(), subst, cache, tag);
    Ok(&num * &den.invert()?)
}

impl Add<&GrassmannElement> for &GrassmannElement {
    type Output = GrassmannElement;
    fn add(self, rhs: &GrassmannElement) -> GrassmannElement {
        self.try_add(rhs).expect("registry mismatch")
    }
}

impl Sub<&GrassmannElement> for &GrassmannElement {
    type Output = GrassmannElement;
    fn sub(self, rhs: &GrassmannElement) -> GrassmannElement {
        self.try_sub(rhs).expect("registry mismatch")
    }
}

impl Mul<&GrassmannElement> for &GrassmannElement {
    type Output = GrassmannElement;
    fn mul(self, rhs: &GrassmannElement) -> GrassmannElement {
        self.try_mul(rhs).expect("registry mismatch")
    }
}

impl Neg for &GrassmannElement {
    type Output = GrassmannElement;
    fn neg(self) -> GrassmannElement {
        GrassmannElement {
            tag: self.tag,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

forward_binop!(GrassmannElement, Add, add);
forward_binop!(GrassmannElement, Sub, sub);
forward_binop!(GrassmannElement, Mul, mul);
forward_neg!(GrassmannElement);

impl From<Coefficient> for GrassmannElement {
    fn from(c: Coefficient) -> Self {
        GrassmannElement::from_coefficient(0, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Fixture {
        reg: Registry,
        z1: SymbolId,
        nuz1: SymbolId,
        e1: SymbolId,
        nue1: SymbolId,
        e2: SymbolId,
        unit: SymbolId,
        w: SymbolId,
    }

    fn fixture() -> Fixture {
        let mut reg = Registry::new();
        let (z1, nuz1) = reg.register_pair("z1", "nuz1", SymbolKind::EvenCoordinate, Some(1)).unwrap();
        let (e1, nue1) = reg.register_pair("e1", "nue1", SymbolKind::OddCoordinate, Some(1)).unwrap();
        let (e2, _) = reg.register_pair("e2", "nue2", SymbolKind::OddCoordinate, Some(1)).unwrap();
        let unit = reg.register("nu1", SymbolKind::OddUnit, Some(1)).unwrap();
        let w = reg.register("w", SymbolKind::EvenCoordinate, None).unwrap();
        Fixture { reg, z1, nuz1, e1, nue1, e2, unit, w }
    }

    impl Fixture {
        fn s(&self, id: SymbolId) -> GrassmannElement {
            GrassmannElement::symbol(&self.reg, id)
        }
    }

    #[test]
    fn anticommuting_generators() {
        let f = fixture();
        let (e1, e2) = (f.s(f.e1), f.s(f.e2));
        assert_eq!(&e1 * &e2, -(&e2 * &e1));
        assert!((&e1 * &e1).is_zero());
        assert_eq!(GrassmannElement::nu0() * GrassmannElement::nu0(), GrassmannElement::one());
        let e12 = &e1 * &e2;
        let sum = (GrassmannElement::from_int(2) + &e12) + (GrassmannElement::from_int(3) - &e12);
        assert_eq!(sum, GrassmannElement::from_int(5));
    }

    #[test]
    fn registry_mismatch_detected() {
        let f = fixture();
        let g = fixture();
        assert_eq!(f.s(f.z1).try_mul(&g.s(g.z1)), Err(Error::RegistryMismatch));
        assert!(f.s(f.z1).try_mul(&GrassmannElement::from_int(3)).is_ok());
    }

    #[test]
    fn body_examples() {
        let f = fixture();
        let e12 = f.s(f.e1) * f.s(f.e2);
        assert_eq!((GrassmannElement::from_int(2) + &e12).body(), GrassmannElement::from_int(2));
        assert!(f.s(f.e1).body().is_zero());
        let x = f.s(f.z1) + f.s(f.w) * &e12 + GrassmannElement::nu0() * GrassmannElement::from_int(3);
        let expected = f.s(f.z1) + GrassmannElement::nu0() * GrassmannElement::from_int(3);
        assert_eq!(x.body(), expected);
    }

    #[test]
    fn invert_examples() {
        let f = fixture();
        let e12 = f.s(f.e1) * f.s(f.e2);
        let x = GrassmannElement::from_int(2) + &e12;
        let expected = GrassmannElement::from_ratio(1, 2) - GrassmannElement::from_ratio(1, 4) * &e12;
        assert_eq!(x.invert().unwrap(), expected);
        let inv_z = f.s(f.z1).invert().unwrap();
        assert_eq!(inv_z, GrassmannElement::from(Coefficient::var(f.z1).inv().unwrap()).with_tag(f.reg.tag()).unwrap());
        assert_eq!(f.s(f.e1).invert(), Err(Error::NonInvertibleBody));
        let y = GrassmannElement::nu0() * f.s(f.z1) + f.s(f.w) * &e12;
        assert_eq!(&y * &y.invert().unwrap(), GrassmannElement::one());
        assert_eq!(GrassmannElement::from_int(1) + GrassmannElement::nu0(), GrassmannElement::one() + GrassmannElement::nu0());
        assert_eq!((GrassmannElement::one() + GrassmannElement::nu0()).invert(), Err(Error::NonInvertibleBody));
    }

    #[test]
    fn nu_examples() {
        let f = fixture();
        let nu = |x: &GrassmannElement| x.nu_apply(&f.reg, f.unit);
        assert_eq!(nu(&f.s(f.e1)).unwrap(), f.s(f.nue1));
        assert_eq!(nu(&f.s(f.nue1)).unwrap(), f.s(f.e1));
        assert_eq!(nu(&GrassmannElement::one()).unwrap(), f.s(f.unit));
        assert_eq!(nu(&f.s(f.unit)).unwrap(), GrassmannElement::one());
        assert_eq!(nu(&f.s(f.z1)).unwrap(), f.s(f.nuz1));
        assert_eq!(nu(&(f.s(f.z1) * f.s(f.e1))).unwrap(), f.s(f.z1) * f.s(f.nue1));
        assert!(matches!(nu(&(f.s(f.e1) * f.s(f.e2))), Err(Error::UndefinedNu(_))));
        assert!(matches!(nu(&f.s(f.z1).pow(2)), Err(Error::UndefinedNu(_))));
        assert!(matches!(f.s(f.e1).nu_apply(&f.reg, f.e2), Err(Error::UndefinedNu(_))));
    }

    #[test]
    fn substitute_examples() {
        let f = fixture();
        let e12 = f.s(f.e1) * f.s(f.e2);
        let w = f.s(f.w);
        let mut sigma = Substitution::new();
        sigma.insert(f.z1, &w + &e12).unwrap();
        let x = f.s(f.z1).pow(2);
        let two = GrassmannElement::from_int(2);
        assert_eq!(x.substitute(&sigma).unwrap(), &w * &w + &two * &w * &e12);

        let mut sigma = Substitution::new();
        sigma.insert(f.z1, GrassmannElement::from_int(2) + &e12).unwrap();
        let inv = f.s(f.z1).invert().unwrap();
        let expected = GrassmannElement::from_ratio(1, 2) - GrassmannElement::from_ratio(1, 4) * &e12;
        assert_eq!(inv.substitute(&sigma).unwrap(), expected);

        let mut sigma = Substitution::new();
        assert!(matches!(sigma.insert(f.z1, f.s(f.e1)), Err(Error::ParityMismatch(_))));
        assert_eq!(x.substitute(&sigma).unwrap(), x);
    }

    #[test]
    fn eval_examples() {
        let f = fixture();
        let inv = f.s(f.z1).invert().unwrap();
        let mut point = Point::new();
        point.insert(f.z1, Complex64::new(0.0, 2.0));
        let v = inv.eval_numeric(&point).unwrap();
        assert!((v.body().0 - Complex64::new(0.0, -0.5)).norm() < 1e-15);
        let e = f.s(f.e1).eval_numeric(&point).unwrap();
        assert_eq!(e.coefficient(&OddMonomial::single(f.e1), false), Complex64::new(1.0, 0.0));
        point.insert(f.z1, Complex64::new(0.0, 0.0));
        assert_eq!(inv.eval_numeric(&point), Err(Error::PoleAtPoint));
        assert!(matches!(f.s(f.w).eval_numeric(&point), Err(Error::MissingValue(_))));
    }
}
