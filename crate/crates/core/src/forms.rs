//! Differential forms over the Grassmann algebra with the bigraded sign
//! rule `a^b = (-1)^(deg a deg b + p(a) p(b)) b^a`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::grassmann::{merge_tags, GrassmannElement, OddMonomial, Substitution};
use crate::supermatrix::Entry;
use crate::symbol::{Registry, SymbolId, SymbolKind};

/// Bound meaning "no truncation".
pub const UNBOUNDED: u8 = u8::MAX;

/// Series in unbounded forms that have not terminated by this degree are
/// reported as overflowing.
const SERIES_LIMIT: u32 = 64;

/// Product of differential generators `dw`, sorted by symbol. Even-symbol
/// differentials anticommute and appear at most once; odd-symbol
/// differentials commute and may carry powers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DiffWord(Vec<(SymbolId, u32)>);

impl DiffWord {
    pub fn one() -> Self {
        DiffWord(Vec::new())
    }

    pub fn single(s: SymbolId) -> Self {
        DiffWord(alloc::vec![(s, 1)])
    }

    pub fn factors(&self) -> &[(SymbolId, u32)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn parity(&self) -> u8 {
        (self.0.iter().filter(|(s, _)| !s.is_even()).map(|(_, e)| e).sum::<u32>() % 2) as u8
    }

    /// Product of two words as `(negative, word)`, or `None` when a repeated
    /// even differential kills it.
    pub fn merge(&self, other: &DiffWord) -> Option<(bool, DiffWord)> {
        let mut flips = 0u32;
        for &(a, ea) in &self.0 {
            for &(b, eb) in &other.0 {
                match a.cmp(&b) {
                    Ordering::Greater => {
                        let swap = 1 + u32::from(a.parity() * b.parity());
                        flips += swap * ea * eb;
                    }
                    Ordering::Equal if a.is_even() => return None,
                    _ => {}
                }
            }
        }
        let mut out: Vec<(SymbolId, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let next = match (self.0.get(i), other.0.get(j)) {
                (Some(&a), Some(&b)) => match a.0.cmp(&b.0) {
                    Ordering::Less => {
                        i += 1;
                        a
                    }
                    Ordering::Greater => {
                        j += 1;
                        b
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (a.0, a.1 + b.1)
                    }
                },
                (Some(&a), None) => {
                    i += 1;
                    a
                }
                (None, Some(&b)) => {
                    j += 1;
                    b
                }
                (None, None) => unreachable!(),
            };
            out.push(next);
        }
        Some((flips % 2 == 1, DiffWord(out)))
    }
}

impl Ord for DiffWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for DiffWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Maximum total form degree kept by products.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncationPolicy {
    pub max_degree: u8,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { max_degree: 6 }
    }
}

/// A finite sum of terms `g w` with `g` a Grassmann coefficient written to
/// the left of a differential word `w`.
#[derive(Clone, Debug)]
pub struct Form {
    tag: u32,
    terms: BTreeMap<DiffWord, GrassmannElement>,
    bound: u8,
    overflow: bool,
}

impl Default for Form {
    fn default() -> Self {
        Form { tag: 0, terms: BTreeMap::new(), bound: UNBOUNDED, overflow: false }
    }
}

impl PartialEq for Form {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Form {}

impl From<GrassmannElement> for Form {
    fn from(g: GrassmannElement) -> Self {
        Form::from_element(g)
    }
}

impl Form {
    pub fn zero() -> Self {
        Form::default()
    }

    pub fn one() -> Self {
        Form::from_element(GrassmannElement::one())
    }

    pub fn from_element(g: GrassmannElement) -> Self {
        let mut f = Form { tag: g.tag(), ..Form::default() };
        f.add_term(DiffWord::one(), g);
        f
    }

    /// The differential `dw` of a symbol; zero for d-inert parameters.
    pub fn differential(reg: &Registry, s: SymbolId) -> Self {
        let mut f = Form { tag: reg.tag(), ..Form::default() };
        if s.kind().has_differential() {
            f.add_term(DiffWord::single(s), GrassmannElement::one());
        }
        f
    }

    pub fn from_terms(tag: u32, terms: impl IntoIterator<Item = (DiffWord, GrassmannElement)>) -> Result<Self> {
        let mut f = Form { tag, ..Form::default() };
        for (w, g) in terms {
            f.tag = merge_tags(f.tag, g.tag())?;
            f.add_term(w, g);
        }
        Ok(f)
    }

    fn add_term(&mut self, w: DiffWord, g: GrassmannElement) {
        if g.is_zero() {
            return;
        }
        if w.degree() > u32::from(self.bound) {
            self.overflow = true;
            return;
        }
        match self.terms.entry(w) {
            alloc::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(g);
            }
            alloc::collections::btree_map::Entry::Occupied(mut slot) => {
                slot.get_mut().accumulate(&g);
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn tag(&self) -> u32 {
        self.tag
    }

    pub fn bound(&self) -> u8 {
        self.bound
    }

    /// Whether some product dropped terms above the bound.
    pub fn overflowed(&self) -> bool {
        self.overflow
    }

    /// Re-bounds the form, dropping (and flagging) terms above `bound`.
    pub fn with_bound(&self, bound: u8) -> Form {
        let mut f = Form { tag: self.tag, terms: BTreeMap::new(), bound, overflow: self.overflow };
        for (w, g) in &self.terms {
            f.add_term(w.clone(), g.clone());
        }
        f
    }

    pub fn with_policy(&self, policy: TruncationPolicy) -> Form {
        self.with_bound(policy.max_degree)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiffWord, &GrassmannElement)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the empty word.
    pub fn function_part(&self) -> GrassmannElement {
        self.terms.get(&DiffWord::one()).cloned().unwrap_or_default()
    }

    pub fn degree_part(&self, k: u32) -> Form {
        Form {
            tag: self.tag,
            terms: self.terms.iter().filter(|(w, _)| w.degree() == k).map(|(w, g)| (w.clone(), g.clone())).collect(),
            bound: self.bound,
            overflow: self.overflow,
        }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(DiffWord::degree).max()
    }

    /// Form degree when homogeneous; zero counts as degree 0.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(DiffWord::degree);
        let Some(first) = it.next() else {
            return Some(0);
        };
        it.all(|d| d == first).then_some(first)
    }

    /// Z2 parity (coefficient parity plus word parity) when homogeneous.
    pub fn parity(&self) -> Option<u8> {
        let mut found = None;
        for (w, g) in &self.terms {
            let p = (g.parity()? + w.parity()) % 2;
            match found {
                None => found = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(found.unwrap_or(0))
    }

    pub fn try_add(&self, rhs: &Form) -> Result<Form> {
        let tag = merge_tags(self.tag, rhs.tag)?;
        let bound = self.bound.min(rhs.bound);
        let mut out = if bound == self.bound { self.clone() } else { self.with_bound(bound) };
        out.tag = tag;
        out.overflow |= rhs.overflow;
        for (w, g) in &rhs.terms {
            out.add_term(w.clone(), g.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &Form) -> Result<Form> {
        self.try_add(&rhs.negated())
    }

    pub fn negated(&self) -> Form {
        Form {
            tag: self.tag,
            terms: self.terms.iter().map(|(w, g)| (w.clone(), -g)).collect(),
            bound: self.bound,
            overflow: self.overflow,
        }
    }

    pub fn wedge(&self, rhs: &Form) -> Result<Form> {
        let tag = merge_tags(self.tag, rhs.tag)?;
        let bound = self.bound.min(rhs.bound);
        let mut out = Form { tag, terms: BTreeMap::new(), bound, overflow: self.overflow || rhs.overflow };
        for (w1, g1) in &self.terms {
            let odd_word = w1.parity() == 1;
            for (w2, g2) in &rhs.terms {
                if w1.degree() + w2.degree() > u32::from(bound) {
                    out.overflow = true;
                    continue;
                }
                let Some((negative, w)) = w1.merge(w2) else {
                    continue;
                };
                out.terms.entry(w).or_default().add_product(g1, g2, negative, odd_word)?;
            }
        }
        out.terms.retain(|_, g| !g.is_zero());
        Ok(out)
    }

    /// Left multiplication by a function.
    pub fn scale_left(&self, g: &GrassmannElement) -> Result<Form> {
        Form::from_element(g.clone()).wedge(self)
    }

    pub fn pow(&self, e: u32) -> Result<Form> {
        let mut acc = Form::one().with_bound(self.bound);
        for _ in 0..e {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    /// Exterior derivative: even, of degree 1, `d^2 = 0`.
    pub fn d(&self) -> Form {
        let mut out = Form { tag: self.tag, terms: BTreeMap::new(), bound: self.bound, overflow: self.overflow };
        for (w, g) in &self.terms {
            for (dw, dg) in d_function(g) {
                if let Some((negative, merged)) = dw.merge(w) {
                    out.add_term(merged, if negative { -dg } else { dg });
                }
            }
        }
        out
    }

    /// Applies `f` to every coefficient, keeping the words.
    pub fn try_map_coefficients(&self, mut f: impl FnMut(&GrassmannElement) -> Result<GrassmannElement>) -> Result<Form> {
        let mut out = Form { tag: self.tag, terms: BTreeMap::new(), bound: self.bound, overflow: self.overflow };
        for (w, g) in &self.terms {
            let image = f(g)?;
            out.tag = merge_tags(out.tag, image.tag())?;
            out.add_term(w.clone(), image);
        }
        Ok(out)
    }

    /// Pullback along a substitution: coefficients are substituted and each
    /// `dw` becomes `d(sigma(w))`.
    pub fn pullback(&self, reg: &Registry, sigma: &Substitution) -> Result<Form> {
        let mut images: BTreeMap<SymbolId, Form> = BTreeMap::new();
        let mut out = Form { tag: self.tag, terms: BTreeMap::new(), bound: self.bound, overflow: self.overflow };
        for (w, g) in &self.terms {
            let mut term = Form::from_element(g.substitute(sigma)?).with_bound(self.bound);
            for &(s, e) in w.factors() {
                let ds = images.entry(s).or_insert_with(|| match sigma.get(s) {
                    Some(v) => Form::from_element(v.clone()).with_bound(self.bound).d(),
                    None => Form::differential(reg, s).with_bound(self.bound),
                });
                for _ in 0..e {
                    term = term.wedge(ds)?;
                }
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    /// Inverse when the degree-0 part is invertible; the nilpotent series is
    /// cut at the bound.
    pub fn try_invert(&self) -> Result<Form> {
        let b_inv = Form::from_element(self.function_part().invert()?).with_bound(self.bound);
        let n = Form {
            tag: self.tag,
            terms: self.terms.iter().filter(|(w, _)| !w.is_empty()).map(|(w, g)| (w.clone(), g.clone())).collect(),
            bound: self.bound,
            overflow: false,
        };
        if n.is_zero() {
            return Ok(b_inv);
        }
        let step = b_inv.wedge(&n)?.negated();
        let mut acc = b_inv.clone();
        let mut term = b_inv;
        for _ in 0..SERIES_LIMIT {
            term = step.wedge(&term)?;
            if term.is_zero() {
                let mut out = acc;
                out.overflow |= term.overflow || self.overflow;
                return Ok(out);
            }
            acc = acc.try_add(&term)?;
        }
        Err(Error::TruncationOverflow)
    }

    /// `h^-1 dh` for an even invertible function `h`.
    pub fn dlog(h: &GrassmannElement) -> Result<Form> {
        if h.parity() != Some(0) {
            return Err(Error::Inhomogeneous);
        }
        let inv = h.invert()?;
        Form::from_element(inv).wedge(&Form::from_element(h.clone()).d())
    }

    /// Coefficient of `v^k` in every coefficient, for a variable that only
    /// appears polynomially.
    pub fn series_coefficient(&self, v: SymbolId, k: u32) -> Result<Form> {
        self.try_map_coefficients(|g| {
            let terms = g
                .terms()
                .map(|(m, n, c)| Ok((m.clone(), n, series_coefficient(c, v, k)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(GrassmannElement::from_terms(g.tag(), terms))
        })
    }
}

fn series_coefficient(c: &Coefficient, v: SymbolId, k: u32) -> Result<Coefficient> {
    if c.denominator().contains_var(v) {
        return Err(Error::DimensionMismatch(format!("variable #{} in a denominator", v.index())));
    }
    let num = c.numerator().coeffs_in(v).remove(&k).unwrap_or_default();
    Ok(Coefficient::new(num, c.denominator().clone()).expect("nonzero denominator"))
}

/// `d` of a degree-0 element, grouped by the single generator produced.
fn d_function(g: &GrassmannElement) -> BTreeMap<DiffWord, GrassmannElement> {
    let mut out: BTreeMap<DiffWord, GrassmannElement> = BTreeMap::new();
    let mut push = |s: SymbolId, m: OddMonomial, n: bool, c: Coefficient| {
        if c.is_zero() {
            return;
        }
        let term = GrassmannElement::from_terms(g.tag(), [(m, n, c)]);
        let slot = out.entry(DiffWord::single(s)).or_default();
        *slot = slot.try_add(&term).expect("single registry");
    };
    for (m, n, c) in g.terms() {
        for v in c.variables() {
            if v.kind().has_differential() {
                push(v, m.clone(), n, c.derivative(v));
            }
        }
        let k = m.len();
        for (r, &s) in m.symbols().iter().enumerate() {
            let sign = if (k - 1 - r) % 2 == 1 { -c } else { c.clone() };
            push(s, m.without(r), n, sign);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

impl Entry for Form {
    fn zero() -> Self {
        Form::zero()
    }
    fn one() -> Self {
        Form::one()
    }
    fn is_zero(&self) -> bool {
        Form::is_zero(self)
    }
    fn parity(&self) -> Option<u8> {
        Form::parity(self)
    }
    fn try_add(&self, rhs: &Self) -> Result<Self> {
        Form::try_add(self, rhs)
    }
    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        Form::try_sub(self, rhs)
    }
    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.wedge(rhs)
    }
    fn negated(&self) -> Self {
        Form::negated(self)
    }
    fn body_invertible(&self) -> bool {
        self.function_part().is_body_invertible()
    }
    fn try_invert(&self) -> Result<Self> {
        Form::try_invert(self)
    }
    fn preferred_pivot(&self) -> bool {
        self.function_part().preferred_pivot()
    }
}

impl Add<&Form> for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        self.try_add(rhs).expect("registry mismatch")
    }
}

impl Sub<&Form> for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        self.try_sub(rhs).expect("registry mismatch")
    }
}

impl Mul<&Form> for &Form {
    type Output = Form;
    fn mul(self, rhs: &Form) -> Form {
        self.wedge(rhs).expect("registry mismatch")
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.negated()
    }
}

forward_binop!(Form, Add, add);
forward_binop!(Form, Sub, sub);
forward_binop!(Form, Mul, mul);
forward_neg!(Form);

/// Formal partition of unity `rho_1..rho_N` with `rho_N = 1 - sum` eliminated.
#[derive(Clone, Debug)]
pub struct PartitionFamily {
    tag: u32,
    symbols: Vec<SymbolId>,
}

impl PartitionFamily {
    /// Registers `rho1..rho{N-1}`.
    pub fn new(reg: &mut Registry, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::BadCount(count));
        }
        let symbols = (1..count)
            .map(|i| reg.register(&format!("rho{i}"), SymbolKind::Partition, None))
            .collect::<Result<Vec<_>>>()?;
        Ok(PartitionFamily { tag: reg.tag(), symbols })
    }

    pub fn count(&self) -> usize {
        self.symbols.len() + 1
    }

    pub fn symbols(&self) -> &[SymbolId] {
        &self.symbols
    }

    /// `rho_i` for `1 <= i <= N`.
    pub fn rho(&self, i: usize) -> GrassmannElement {
        assert!((1..=self.count()).contains(&i), "partition index {i} out of range");
        if i < self.count() {
            GrassmannElement::from_terms(self.tag, [(OddMonomial::one(), false, Coefficient::var(self.symbols[i - 1]))])
        } else {
            let mut acc = GrassmannElement::one().with_tag(self.tag).expect("constant");
            for k in 1..self.count() {
                acc = &acc - &self.rho(k);
            }
            acc
        }
    }

    /// `d rho_i` for `1 <= i <= N`.
    pub fn d_rho(&self, i: usize) -> Form {
        Form::from_element(self.rho(i)).d()
    }
}
