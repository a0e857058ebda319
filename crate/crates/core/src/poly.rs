//! Sparse multivariate polynomials over the Gaussian rationals.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};
use smallvec::{smallvec, SmallVec};

use crate::scalar::GaussRat;
use crate::symbol::SymbolId;

/// A power product, stored as `(variable, exponent)` pairs sorted by variable
/// with strictly positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    degree: u32,
    /// Order key: degree, then one nibble per variable index. `None` when
    /// some index or exponent does not fit.
    key: Option<u128>,
    factors: Factors,
}

type Factors = SmallVec<[(SymbolId, u32); 4]>;

const KEY_VARS: usize = 30;

impl Default for Monomial {
    fn default() -> Self {
        Monomial::raw(Factors::new())
    }
}

impl Monomial {
    fn raw(factors: Factors) -> Self {
        let degree = factors.iter().map(|(_, e)| e).sum();
        Monomial { degree, key: pack(degree, &factors), factors }
    }

    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: SymbolId) -> Self {
        Monomial::raw(smallvec![(v, 1)])
    }

    pub fn var_pow(v: SymbolId, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial::raw(smallvec![(v, e)])
        }
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (SymbolId, u32)>) -> Self {
        let mut map: BTreeMap<SymbolId, u32> = BTreeMap::new();
        for (v, e) in factors {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial::raw(map.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn factors(&self) -> &[(SymbolId, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponent(&self, v: SymbolId) -> u32 {
        match self.factors.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) => self.factors[i].1,
            Err(_) => 0,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Factors::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial::raw(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Factors::with_capacity(self.factors.len());
        let mut j = 0;
        for &(v, e) in &self.factors {
            if j < other.factors.len() && other.factors[j].0 < v {
                return None;
            }
            if j < other.factors.len() && other.factors[j].0 == v {
                let f = other.factors[j].1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push((v, e - f));
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        if j < other.factors.len() {
            return None;
        }
        Some(Monomial::raw(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::raw(
            self.factors
                .iter()
                .filter_map(|&(v, e)| {
                    let f = other.exponent(v);
                    (f > 0).then(|| (v, e.min(f)))
                })
                .collect(),
        )
    }

    /// Splits off the power of `v`.
    pub fn split(&self, v: SymbolId) -> (u32, Monomial) {
        let e = self.exponent(v);
        (e, Monomial::raw(self.factors.iter().copied().filter(|(w, _)| *w != v).collect()))
    }
}

fn pack(degree: u32, factors: &[(SymbolId, u32)]) -> Option<u128> {
    if degree > 0xff {
        return None;
    }
    let mut key = u128::from(degree) << 120;
    for &(v, e) in factors {
        if v.index() >= KEY_VARS || e > 0xf {
            return None;
        }
        key |= u128::from(e) << (116 - 4 * v.index());
    }
    Some(key)
}

fn lex_cmp(a: &[(SymbolId, u32)], b: &[(SymbolId, u32)]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
            },
        }
    }
}

/// Graded lexicographic order, variables ranked by registration order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Some(a), Some(b)) = (self.key, other.key) {
            return a.cmp(&b);
        }
        self.degree()
            .cmp(&other.degree())
            .then_with(|| lex_cmp(&self.factors, &other.factors))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with terms keyed by monomial; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: GaussRat) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: SymbolId) -> Self {
        Poly::term(Monomial::var(v), GaussRat::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, GaussRat)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get() + &c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussRat)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<GaussRat> {
        if self.terms.is_empty() {
            return Some(GaussRat::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn single_term(&self) -> Option<(&Monomial, &GaussRat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &GaussRat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: SymbolId) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<SymbolId> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| *v))
            .collect()
    }

    pub fn contains_var(&self, v: SymbolId) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: SymbolId) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            if e == 0 {
                continue;
            }
            let m2 = rest.mul(&Monomial::var_pow(v, e - 1));
            out.add_term(m2, c * &GaussRat::from_int(e as i64));
        }
        out
    }

    /// Coefficients of the powers of `v`.
    pub fn coeffs_in(&self, v: SymbolId) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    fn leading_coeff_in(&self, v: SymbolId) -> (u32, Poly) {
        let d = self.degree_in(v);
        let mut lc = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            if e == d {
                lc.add_term(rest, c.clone());
            }
        }
        (d, lc)
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("non-zero leading coefficient")),
        }
    }

    /// Gcd of all monomials in the support.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        let mut g = first.clone();
        for m in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = d.leading()?;
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inv()?));
        }
        let lc_inv = lc.inv()?;
        let lm = lm.clone();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.div(&lm)?;
            let c = rc * &lc_inv;
            for (dm, dc) in d.terms() {
                rem.add_term(dm.mul(&m), -(dc * &c));
            }
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        gcd_rec(self, other).monic()
    }
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if let Some((m, _)) = a.single_term() {
        return Poly::term(m.gcd(&b.monomial_content()), GaussRat::one());
    }
    if let Some((m, _)) = b.single_term() {
        return Poly::term(m.gcd(&a.monomial_content()), GaussRat::one());
    }
    if a == b {
        return a.clone();
    }
    let vars_a = a.variables();
    let vars_b = b.variables();
    let v = *vars_a.iter().chain(vars_b.iter()).min().expect("non-constant operands");
    if !vars_a.contains(&v) {
        return gcd_rec(a, &content_in(b, v));
    }
    if !vars_b.contains(&v) {
        return gcd_rec(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd_rec(&ca, &cb);
    let g = primitive_prs(pa, pb, v);
    &c * &g
}

fn content_in(a: &Poly, v: SymbolId) -> Poly {
    let mut g = Poly::zero();
    for (_, c) in a.coeffs_in(v) {
        g = gcd_rec(&g, &c).monic();
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

fn primitive_part(a: &Poly, v: SymbolId) -> Poly {
    let c = content_in(a, v);
    a.div_exact(&c).expect("content divides").monic()
}

fn pseudo_rem(a: &Poly, b: &Poly, v: SymbolId) -> Poly {
    let (db, lb) = b.leading_coeff_in(v);
    let mut r = a.clone();
    while !r.is_zero() {
        let (dr, lr) = r.leading_coeff_in(v);
        if dr < db {
            break;
        }
        let shift = Monomial::var_pow(v, dr - db);
        let lhs = &lb * &r;
        let rhs = &(&lr * b) * &Poly::term(shift, GaussRat::one());
        r = &lhs - &rhs;
    }
    r
}

fn primitive_prs(mut a: Poly, mut b: Poly, v: SymbolId) -> Poly {
    if a.degree_in(v) < b.degree_in(v) {
        core::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            return b;
        }
        if r.degree_in(v) == 0 {
            return Poly::one();
        }
        a = b;
        b = primitive_part(&r, v);
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Poly {
    /// `self += sign * a * b` without building the product.
    pub fn add_product(&mut self, a: &Poly, b: &Poly, negative: bool) {
        if a.terms.len() * b.terms.len() >= PACKED_PRODUCT_MIN && self.add_packed_product(a, b, negative) {
            return;
        }
        self.add_product_termwise(a, b, negative);
    }

    fn add_product_termwise(&mut self, a: &Poly, b: &Poly, negative: bool) {
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let c = ca * cb;
                self.add_term(ma.mul(mb), if negative { -c } else { c });
            }
        }
    }
}

const PACKED_PRODUCT_MIN: usize = 16;

/// Per-variable exponent ceilings of a packed polynomial, filling `ids`.
fn packed_profile(p: &Poly, ids: &mut [Option<SymbolId>; KEY_VARS]) -> Option<([u32; KEY_VARS], u32)> {
    let mut top = [0u32; KEY_VARS];
    let mut degree = 0;
    for m in p.terms.keys() {
        m.key?;
        degree = degree.max(m.degree);
        for &(v, e) in &m.factors {
            top[v.index()] = top[v.index()].max(e);
            ids[v.index()] = Some(v);
        }
    }
    Some((top, degree))
}

impl Poly {
    /// Product on packed keys, where key addition is monomial
    /// multiplication. `false` when some key could overflow.
    fn add_packed_product(&mut self, a: &Poly, b: &Poly, negative: bool) -> bool {
        let mut ids = [None; KEY_VARS];
        let (Some((ta, da)), Some((tb, db))) = (packed_profile(a, &mut ids), packed_profile(b, &mut ids)) else {
            return false;
        };
        if da + db > 0xff || ta.iter().zip(&tb).any(|(x, y)| x + y > 0xf) {
            return false;
        }
        let ca: Vec<&GaussRat> = a.terms.values().collect();
        let cb: Vec<&GaussRat> = b.terms.values().collect();
        let mut products: Vec<(u128, u32, u32)> = Vec::with_capacity(ca.len() * cb.len());
        for (i, ma) in a.terms.keys().enumerate() {
            let ka = ma.key.unwrap_or_default();
            for (j, mb) in b.terms.keys().enumerate() {
                products.push((ka + mb.key.unwrap_or_default(), i as u32, j as u32));
            }
        }
        products.sort_unstable_by_key(|p| p.0);
        for run in products.chunk_by(|x, y| x.0 == y.0) {
            let mut c = GaussRat::zero();
            for &(_, i, j) in run {
                c = &c + &(ca[i as usize] * cb[j as usize]);
            }
            self.add_term(unpack(run[0].0, &ids), if negative { -c } else { c });
        }
        true
    }
}

fn unpack(key: u128, ids: &[Option<SymbolId>; KEY_VARS]) -> Monomial {
    let mut factors = Factors::new();
    for (i, id) in ids.iter().enumerate() {
        let e = ((key >> (116 - 4 * i)) & 0xf) as u32;
        if e > 0 {
            factors.push((id.expect("variable seen in a factor"), e));
        }
    }
    Monomial { degree: (key >> 120) as u32, key: Some(key), factors }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        let mut out = Poly::zero();
        out.add_product(self, rhs, false);
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

forward_binop!(Poly, Add, add);
forward_binop!(Poly, Sub, sub);
forward_binop!(Poly, Mul, mul);
forward_neg!(Poly);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{Registry, SymbolKind};
    use alloc::format;
    use proptest::prelude::*;

    fn vars() -> (SymbolId, SymbolId, SymbolId) {
        let mut reg = Registry::new();
        let x = reg.register("x", SymbolKind::EvenCoordinate, None).unwrap();
        let y = reg.register("y", SymbolKind::EvenCoordinate, None).unwrap();
        let z = reg.register("z", SymbolKind::EvenCoordinate, None).unwrap();
        (x, y, z)
    }

    fn c(n: i64) -> Poly {
        Poly::constant(GaussRat::from_int(n))
    }

    fn wide_vars() -> Vec<SymbolId> {
        let mut reg = Registry::new();
        (0..KEY_VARS + 2)
            .map(|i| reg.register(&format!("x{i}"), SymbolKind::EvenCoordinate, None).unwrap())
            .collect()
    }

    /// Mostly packable; some indices and exponents fall outside the key.
    fn monomial_strategy() -> impl Strategy<Value = Vec<(usize, u32)>> {
        let index = prop_oneof![8 => 0..6usize, 1 => 26..KEY_VARS + 2];
        let exponent = prop_oneof![8 => 1..9u32, 1 => 9..18u32];
        proptest::collection::vec((index, exponent), 0..4)
    }

    fn build(vars: &[SymbolId], spec: &[(usize, u32)]) -> Monomial {
        Monomial::from_factors(spec.iter().map(|&(i, e)| (vars[i], e)))
    }

    proptest! {
        #[test]
        fn packed_order_agrees_with_sparse_order(a in monomial_strategy(), b in monomial_strategy()) {
            let vars = wide_vars();
            let (ma, mb) = (build(&vars, &a), build(&vars, &b));
            let sparse = ma.degree.cmp(&mb.degree).then_with(|| lex_cmp(&ma.factors, &mb.factors));
            prop_assert_eq!(ma.cmp(&mb), sparse);
        }

        #[test]
        fn packed_product_agrees_with_termwise(
            a in proptest::collection::vec((monomial_strategy(), -5..5i64), 0..8),
            b in proptest::collection::vec((monomial_strategy(), -5..5i64), 0..8),
            negative in any::<bool>(),
        ) {
            let vars = wide_vars();
            let poly = |terms: &[(Vec<(usize, u32)>, i64)]| {
                Poly::from_terms(terms.iter().map(|(m, c)| (build(&vars, m), GaussRat::from_int(*c))))
            };
            let (pa, pb) = (poly(&a), poly(&b));
            let mut fast = poly(&b);
            fast.add_product(&pa, &pb, negative);
            let mut slow = poly(&b);
            slow.add_product_termwise(&pa, &pb, negative);
            prop_assert_eq!(fast, slow);
        }
    }

    #[test]
    fn graded_lex_order() {
        let (x, y, _) = vars();
        let x2 = Monomial::var_pow(x, 2);
        let xy = Monomial::from_factors([(x, 1), (y, 1)]);
        let y2 = Monomial::var_pow(y, 2);
        let x1 = Monomial::var(x);
        assert!(x2 > xy && xy > y2 && y2 > x1 && x1 > Monomial::one());
    }

    #[test]
    fn exact_division_and_gcd() {
        let (x, y, z) = vars();
        let (px, py, pz) = (Poly::var(x), Poly::var(y), Poly::var(z));
        let f = &(&px + &py) * &(&px - &c(2));
        let g = &(&px + &py) * &(&py * &pz + &c(1));
        let gcd = f.gcd(&g);
        assert_eq!(gcd, &px + &py);
        assert_eq!(f.div_exact(&gcd).unwrap(), &px - &c(2));
        assert!(f.div_exact(&(&pz + &c(1))).is_none());
        assert_eq!(f.gcd(&c(3)), Poly::one());
        let mono = &(&px * &px) * &py;
        assert_eq!(mono.gcd(&(&(&px * &py) + &(&px * &pz))), px.clone());
    }

    #[test]
    fn gcd_with_shared_powers() {
        let (x, y, _) = vars();
        let (px, py) = (Poly::var(x), Poly::var(y));
        let common = &(&px * &py + &c(1)).pow(2) * &(&px - &py);
        let a = &common * &(&px + &c(3));
        let b = &common * &(&py.pow(2) + &c(5));
        assert_eq!(a.gcd(&b), common.monic());
    }

    #[test]
    fn derivative_and_pow() {
        let (x, y, _) = vars();
        let p = &Poly::var(x).pow(3) * &Poly::var(y);
        let dp = p.derivative(x);
        assert_eq!(dp, &(&c(3) * &Poly::var(x).pow(2)) * &Poly::var(y));
        assert_eq!(p.degree_in(x), 3);
        assert_eq!(p.total_degree(), 4);
    }
}
