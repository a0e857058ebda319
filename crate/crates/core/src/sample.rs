//! Seeded random elements, forms and supermatrices over a fixed alphabet,
//! shared by the property suites.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;

use crate::coefficient::Coefficient;
use crate::error::Result;
use crate::forms::Form;
use crate::grassmann::{GrassmannElement, Substitution};
use crate::numeric::Point;
use crate::poly::{Monomial, Poly};
use crate::scalar::GaussRat;
use crate::supermatrix::{Dims, SuperMatrix};
use crate::symbol::{Registry, SymbolId, SymbolKind};

/// `z1, w | e1, e2, e3` with partners `nuz1`, `nue1`, the unit `nu1` and
/// parameters `p, q`.
#[derive(Debug)]
pub struct Alphabet {
    pub reg: Registry,
    pub z1: SymbolId,
    pub nuz1: SymbolId,
    pub w: SymbolId,
    pub e1: SymbolId,
    pub nue1: SymbolId,
    pub e2: SymbolId,
    pub e3: SymbolId,
    pub unit: SymbolId,
    pub p: SymbolId,
    pub q: SymbolId,
}

impl Alphabet {
    pub fn new() -> Result<Self> {
        let mut reg = Registry::new();
        let (z1, nuz1) = reg.register_pair("z1", "nuz1", SymbolKind::EvenCoordinate, None)?;
        let w = reg.register("w", SymbolKind::EvenCoordinate, None)?;
        let (e1, nue1) = reg.register_pair("e1", "nue1", SymbolKind::OddCoordinate, None)?;
        let e2 = reg.register("e2", SymbolKind::OddCoordinate, None)?;
        let e3 = reg.register("e3", SymbolKind::OddCoordinate, None)?;
        let unit = reg.register("nu1", SymbolKind::OddUnit, None)?;
        let p = reg.register("p", SymbolKind::Parameter, None)?;
        let q = reg.register("q", SymbolKind::Parameter, None)?;
        Ok(Alphabet { reg, z1, nuz1, w, e1, nue1, e2, e3, unit, p, q })
    }

    pub fn evens(&self) -> [SymbolId; 2] {
        [self.z1, self.w]
    }

    pub fn odds(&self) -> [SymbolId; 3] {
        [self.e1, self.e2, self.e3]
    }

    fn sym(&self, s: SymbolId) -> GrassmannElement {
        GrassmannElement::symbol(&self.reg, s)
    }

    fn constant(&self, c: GaussRat) -> GrassmannElement {
        GrassmannElement::from_coefficient(self.reg.tag(), Coefficient::constant(c))
    }

    pub fn scalar(&self, rng: &mut impl Rng) -> GaussRat {
        let re = GaussRat::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        if rng.gen_bool(0.2) {
            &re + &(&GaussRat::i() * &GaussRat::from_int(rng.gen_range(-2..=2)))
        } else {
            re
        }
    }

    /// Up to `terms` monomials of degree at most 2 in `vars`.
    pub fn poly(&self, rng: &mut impl Rng, vars: &[SymbolId], terms: usize) -> Poly {
        let mut p = Poly::zero();
        for _ in 0..rng.gen_range(1..=terms) {
            let factors = (0..rng.gen_range(0..=2)).map(|_| (vars[rng.gen_range(0..vars.len())], 1));
            p.add_term(Monomial::from_factors(factors), self.scalar(rng));
        }
        p
    }

    fn odd_product(&self, rng: &mut impl Rng, parity: u8) -> Result<GrassmannElement> {
        let count = if parity == 0 { 2 * rng.gen_range(0..=1) } else { 1 + 2 * rng.gen_range(0..=1) };
        let mut picks: Vec<SymbolId> = self.odds().to_vec();
        let mut acc = self.constant(GaussRat::from_int(1));
        for _ in 0..count {
            let s = picks.remove(rng.gen_range(0..picks.len()));
            acc = acc.try_mul(&self.sym(s))?;
        }
        Ok(acc)
    }

    /// Homogeneous element of the given parity with polynomial coefficients
    /// in the even coordinates and optional `nu0` terms.
    pub fn element(&self, rng: &mut impl Rng, parity: u8) -> Result<GrassmannElement> {
        let mut acc = GrassmannElement::zero().with_tag(self.reg.tag())?;
        for _ in 0..rng.gen_range(1..=3) {
            let coeff = GrassmannElement::from_coefficient(self.reg.tag(), Coefficient::from_poly(self.poly(rng, &self.evens(), 3)));
            let mut term = coeff.try_mul(&self.odd_product(rng, parity)?)?;
            if rng.gen_bool(0.3) {
                term = term.mul_nu0();
            }
            acc = acc.try_add(&term)?;
        }
        Ok(acc)
    }

    pub fn any_element(&self, rng: &mut impl Rng) -> Result<GrassmannElement> {
        let even = self.element(rng, 0)?;
        if rng.gen_bool(0.5) {
            even.try_add(&self.element(rng, 1)?)
        } else {
            Ok(even)
        }
    }

    /// Even element with a non-zero constant body.
    pub fn invertible(&self, rng: &mut impl Rng) -> Result<GrassmannElement> {
        let mut body = self.scalar(rng);
        if body.is_zero() {
            body = GaussRat::from_int(1);
        }
        let nilpotent = self.element(rng, 0)?.nilpotent_part();
        self.constant(body).try_add(&nilpotent)
    }

    /// Sum of parameter-polynomial multiples of single generators, the
    /// domain on which `nu` is an involution.
    pub fn nu_domain(&self, rng: &mut impl Rng) -> Result<GrassmannElement> {
        let gens = [None, Some(self.z1), Some(self.nuz1), Some(self.e1), Some(self.nue1), Some(self.unit)];
        let mut acc = GrassmannElement::zero().with_tag(self.reg.tag())?;
        for _ in 0..rng.gen_range(1..=4) {
            let c = GrassmannElement::from_coefficient(self.reg.tag(), Coefficient::from_poly(self.poly(rng, &[self.p, self.q], 3)));
            let g = match gens[rng.gen_range(0..gens.len())] {
                None => self.constant(GaussRat::from_int(1)),
                Some(s) => self.sym(s),
            };
            let mut term = c.try_mul(&g)?;
            if rng.gen_bool(0.3) {
                term = term.mul_nu0();
            }
            acc = acc.try_add(&term)?;
        }
        Ok(acc)
    }

    /// Parity-preserving images for every coordinate.
    pub fn substitution(&self, rng: &mut impl Rng) -> Result<Substitution> {
        let mut sigma = Substitution::new();
        for s in self.evens() {
            sigma.insert(s, self.element(rng, 0)?)?;
        }
        for s in self.odds() {
            sigma.insert(s, self.element(rng, 1)?)?;
        }
        Ok(sigma)
    }

    pub fn point(&self, rng: &mut impl Rng) -> Point {
        let mut point = Point::new();
        for s in [self.z1, self.w, self.p, self.q] {
            point.insert(s, Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)));
        }
        point
    }

    /// Random form of degree at most `max_degree` over the differentials of
    /// the coordinates.
    pub fn form(&self, rng: &mut impl Rng, max_degree: u32) -> Result<Form> {
        let diffs = [self.z1, self.w, self.e1, self.e2];
        let mut acc = Form::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let mut term = Form::from_element(self.any_element(rng)?);
            for _ in 0..rng.gen_range(0..=max_degree) {
                term = term.wedge(&Form::differential(&self.reg, diffs[rng.gen_range(0..diffs.len())]))?;
            }
            acc = acc.try_add(&term)?;
        }
        Ok(acc)
    }

    /// Form whose terms all have the same degree and total parity.
    pub fn homogeneous_form(&self, rng: &mut impl Rng, degree: u32, parity: u8) -> Result<Form> {
        let diffs = [self.z1, self.w, self.e1, self.e2];
        let mut acc = Form::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let mut word = Form::one();
            for _ in 0..degree {
                word = word.wedge(&Form::differential(&self.reg, diffs[rng.gen_range(0..diffs.len())]))?;
            }
            let word_parity = word.parity().unwrap_or(0);
            let coeff = self.element(rng, (parity + word_parity) % 2)?;
            acc = acc.try_add(&Form::from_element(coeff).wedge(&word)?)?;
        }
        Ok(acc)
    }

    /// Even supermatrix with invertible diagonal blocks.
    pub fn supermatrix(&self, rng: &mut impl Rng, dims: Dims) -> Result<SuperMatrix<GrassmannElement>> {
        SuperMatrix::try_from_fn(dims, dims, |i, j| {
            if dims.parity_of(i) != dims.parity_of(j) {
                return self.element(rng, 1);
            }
            let shift = if i == j { 7 } else { 0 };
            let body = self.constant(&GaussRat::from_int(shift) + &GaussRat::from_int(rng.gen_range(-2..=2)));
            body.try_add(&self.element(rng, 0)?.nilpotent_part())
        })
    }
}
