//! Block supermatrices over any supercommutative entry ring.

use alloc::format;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grassmann::GrassmannElement;
use crate::numeric::NumericGrassmann;

/// Operations a supermatrix needs from its entries.
pub trait Entry: Clone + Debug + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Z2 parity, `None` when inhomogeneous. Zero is even.
    fn parity(&self) -> Option<u8>;
    fn try_add(&self, rhs: &Self) -> Result<Self>;
    fn try_sub(&self, rhs: &Self) -> Result<Self>;
    fn try_mul(&self, rhs: &Self) -> Result<Self>;
    fn negated(&self) -> Self;
    fn body_invertible(&self) -> bool;
    fn try_invert(&self) -> Result<Self>;
    /// Pivots whose inverse stays simple (e.g. constant bodies) are tried first.
    fn preferred_pivot(&self) -> bool {
        false
    }
}

impl Entry for GrassmannElement {
    fn zero() -> Self {
        GrassmannElement::zero()
    }
    fn one() -> Self {
        GrassmannElement::one()
    }
    fn is_zero(&self) -> bool {
        GrassmannElement::is_zero(self)
    }
    fn parity(&self) -> Option<u8> {
        GrassmannElement::parity(self)
    }
    fn try_add(&self, rhs: &Self) -> Result<Self> {
        GrassmannElement::try_add(self, rhs)
    }
    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        GrassmannElement::try_sub(self, rhs)
    }
    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        GrassmannElement::try_mul(self, rhs)
    }
    fn negated(&self) -> Self {
        -self
    }
    fn body_invertible(&self) -> bool {
        self.is_body_invertible()
    }
    fn try_invert(&self) -> Result<Self> {
        self.invert()
    }
    fn preferred_pivot(&self) -> bool {
        let (c0, c1) = self.body_parts();
        c0.constant_value().is_some() && c1.constant_value().is_some() && self.is_body_invertible()
    }
}

impl Entry for NumericGrassmann {
    fn zero() -> Self {
        NumericGrassmann::zero()
    }
    fn one() -> Self {
        NumericGrassmann::one()
    }
    fn is_zero(&self) -> bool {
        NumericGrassmann::is_zero(self)
    }
    fn parity(&self) -> Option<u8> {
        NumericGrassmann::parity(self)
    }
    fn try_add(&self, rhs: &Self) -> Result<Self> {
        Ok(self + rhs)
    }
    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        Ok(self - rhs)
    }
    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        Ok(self * rhs)
    }
    fn negated(&self) -> Self {
        -self
    }
    fn body_invertible(&self) -> bool {
        let (b0, b1) = self.body();
        let norm = b0 * b0 - b1 * b1;
        norm != Complex64::new(0.0, 0.0)
    }
    fn try_invert(&self) -> Result<Self> {
        self.invert()
    }
}

/// Even and odd extent of one side of a supermatrix.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dims {
    pub even: usize,
    pub odd: usize,
}

impl Dims {
    pub const fn new(even: usize, odd: usize) -> Self {
        Dims { even, odd }
    }

    pub const fn total(self) -> usize {
        self.even + self.odd
    }

    /// Parity of index `i` along this side.
    pub const fn parity_of(self, i: usize) -> u8 {
        if i < self.even {
            0
        } else {
            1
        }
    }
}

impl core::fmt::Display for Dims {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}|{}", self.even, self.odd)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuperMatrix<E> {
    rows: Dims,
    cols: Dims,
    entries: Vec<E>,
}

/// The four blocks of a supermatrix, each stored row-major.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Block {
    A,
    B,
    C,
    D,
}

impl<E: Entry> SuperMatrix<E> {
    /// Row-major entries, `rows.total() * cols.total()` of them.
    pub fn new(rows: Dims, cols: Dims, entries: Vec<E>) -> Result<Self> {
        if entries.len() != rows.total() * cols.total() {
            return Err(Error::BadDimensions(format!(
                "{} entries for a ({rows})x({cols}) matrix",
                entries.len()
            )));
        }
        Ok(SuperMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: Dims, cols: Dims, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut entries = Vec::with_capacity(rows.total() * cols.total());
        for i in 0..rows.total() {
            for j in 0..cols.total() {
                entries.push(f(i, j));
            }
        }
        SuperMatrix { rows, cols, entries }
    }

    pub fn try_from_fn(rows: Dims, cols: Dims, mut f: impl FnMut(usize, usize) -> Result<E>) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.total() * cols.total());
        for i in 0..rows.total() {
            for j in 0..cols.total() {
                entries.push(f(i, j)?);
            }
        }
        Ok(SuperMatrix { rows, cols, entries })
    }

    pub fn zero(rows: Dims, cols: Dims) -> Self {
        SuperMatrix::from_fn(rows, cols, |_, _| E::zero())
    }

    pub fn identity(dims: Dims) -> Self {
        SuperMatrix::from_fn(dims, dims, |i, j| if i == j { E::one() } else { E::zero() })
    }

    /// Block-diagonal matrix with the given diagonal.
    pub fn diagonal(dims: Dims, diag: Vec<E>) -> Result<Self> {
        if diag.len() != dims.total() {
            return Err(Error::BadDimensions(format!("{} diagonal entries for {dims}", diag.len())));
        }
        Ok(SuperMatrix::from_fn(dims, dims, |i, j| if i == j { diag[i].clone() } else { E::zero() }))
    }

    /// Assembles a square supermatrix from its blocks, each given row-major.
    pub fn from_blocks(dims: Dims, a: Vec<E>, b: Vec<E>, c: Vec<E>, d: Vec<E>) -> Result<Self> {
        let (k, l) = (dims.even, dims.odd);
        if a.len() != k * k || b.len() != k * l || c.len() != l * k || d.len() != l * l {
            return Err(Error::BadDimensions(format!("block sizes do not fit {dims}")));
        }
        Ok(SuperMatrix::from_fn(dims, dims, |i, j| match (i < k, j < k) {
            (true, true) => a[i * k + j].clone(),
            (true, false) => b[i * l + (j - k)].clone(),
            (false, true) => c[(i - k) * k + j].clone(),
            (false, false) => d[(i - k) * l + (j - k)].clone(),
        }))
    }

    pub fn rows(&self) -> Dims {
        self.rows
    }

    pub fn cols(&self) -> Dims {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.cols.total() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: E) {
        let width = self.cols.total();
        self.entries[i * width + j] = value;
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn block(&self, which: Block) -> SuperMatrix<E> {
        let (r0, rn) = match which {
            Block::A | Block::B => (0, self.rows.even),
            Block::C | Block::D => (self.rows.even, self.rows.odd),
        };
        let (c0, cn) = match which {
            Block::A | Block::C => (0, self.cols.even),
            Block::B | Block::D => (self.cols.even, self.cols.odd),
        };
        // Blocks are ordinary matrices; their row/column parity is forgotten.
        SuperMatrix::from_fn(Dims::new(rn, 0), Dims::new(cn, 0), |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Parity of a homogeneous matrix: entry parity plus block position.
    pub fn parity(&self) -> Option<u8> {
        let mut found: Option<u8> = None;
        for i in 0..self.rows.total() {
            for j in 0..self.cols.total() {
                let e = self.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let p = (e.parity()? + self.rows.parity_of(i) + self.cols.parity_of(j)) % 2;
                match found {
                    None => found = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
        }
        Some(found.unwrap_or(0))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Entry::is_zero)
    }

    pub fn try_map<F: Entry>(&self, mut f: impl FnMut(&E) -> Result<F>) -> Result<SuperMatrix<F>> {
        Ok(SuperMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(&mut f).collect::<Result<Vec<_>>>()?,
        })
    }

    fn check_same_shape(&self, rhs: &Self) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "({})x({}) vs ({})x({})",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?;
        Ok(SuperMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.try_sub(b)).collect::<Result<_>>()?;
        Ok(SuperMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn negated(&self) -> Self {
        SuperMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(Entry::negated).collect(),
        }
    }

    /// Multiplies every entry on the left by `c`.
    pub fn scale_left(&self, c: &E) -> Result<Self> {
        self.try_map(|e| c.try_mul(e))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "columns {} vs rows {}",
                self.cols, rhs.rows
            )));
        }
        let n = self.cols.total();
        SuperMatrix::try_from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = E::zero();
            for t in 0..n {
                let (a, b) = (self.get(i, t), rhs.get(t, j));
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.try_add(&a.try_mul(b)?)?;
            }
            Ok(acc)
        })
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.try_mul(rhs)?.try_sub(&rhs.try_mul(self)?)
    }

    /// `tr A - (-1)^p tr D`.
    pub fn supertrace(&self) -> Result<E> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("supertrace of ({})x({})", self.rows, self.cols)));
        }
        let parity = self.parity().ok_or(Error::Inhomogeneous)?;
        let mut acc = E::zero();
        for i in 0..self.rows.total() {
            let e = self.get(i, i);
            acc = if i < self.rows.even || parity == 1 { acc.try_add(e)? } else { acc.try_sub(e)? };
        }
        Ok(acc)
    }

    /// `Str(self * rhs)` without forming the off-diagonal entries.
    pub fn supertrace_of_product(&self, rhs: &Self) -> Result<E> {
        if self.cols != rhs.rows || self.rows != rhs.cols || self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!("supertrace of ({})x({}) times ({})x({})", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        let parity = (self.parity().ok_or(Error::Inhomogeneous)? + rhs.parity().ok_or(Error::Inhomogeneous)?) % 2;
        let n = self.rows.total();
        let mut acc = E::zero();
        for i in 0..n {
            let mut diag = E::zero();
            for j in 0..n {
                diag = diag.try_add(&self.get(i, j).try_mul(rhs.get(j, i))?)?;
            }
            acc = if i < self.rows.even || parity == 1 { acc.try_add(&diag)? } else { acc.try_sub(&diag)? };
        }
        Ok(acc)
    }

    fn require_even_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("({})x({}) is not square", self.rows, self.cols)));
        }
        if self.parity() != Some(0) {
            return Err(Error::NotEven);
        }
        Ok(())
    }

    /// Two-sided inverse via the Schur complement of the D block.
    pub fn inverse(&self) -> Result<Self> {
        self.require_even_square()?;
        let k = self.rows.even;
        let a = self.block(Block::A);
        let b = self.block(Block::B);
        let c = self.block(Block::C);
        let d = self.block(Block::D);
        let d_inv = plain_inverse(&d)?;
        let s = a.try_sub(&b.try_mul(&d_inv)?.try_mul(&c)?)?;
        let s_inv = plain_inverse(&s)?;
        let top_right = s_inv.try_mul(&b)?.try_mul(&d_inv)?.negated();
        let bottom_left = d_inv.try_mul(&c)?.try_mul(&s_inv)?.negated();
        let bottom_right = d_inv.try_add(&d_inv.try_mul(&c)?.try_mul(&s_inv)?.try_mul(&b)?.try_mul(&d_inv)?)?;
        Ok(SuperMatrix::from_fn(self.rows, self.cols, |i, j| match (i < k, j < k) {
            (true, true) => s_inv.get(i, j).clone(),
            (true, false) => top_right.get(i, j - k).clone(),
            (false, true) => bottom_left.get(i - k, j).clone(),
            (false, false) => bottom_right.get(i - k, j - k).clone(),
        }))
    }

    /// `det(A - B D^-1 C) det(D)^-1`.
    pub fn berezinian(&self) -> Result<E> {
        self.require_even_square()?;
        let a = self.block(Block::A);
        let b = self.block(Block::B);
        let c = self.block(Block::C);
        let d = self.block(Block::D);
        let d_inv = plain_inverse(&d)?;
        let s = a.try_sub(&b.try_mul(&d_inv)?.try_mul(&c)?)?;
        let det_d = plain_det(&d)?;
        if !det_d.body_invertible() {
            return Err(Error::NonInvertibleBlock);
        }
        plain_det(&s)?.try_mul(&det_d.try_invert()?)
    }

    /// `det(A) det(D - C A^-1 B)^-1`, the A-block form of the Berezinian.
    pub fn berezinian_via_a(&self) -> Result<E> {
        self.require_even_square()?;
        let a = self.block(Block::A);
        let b = self.block(Block::B);
        let c = self.block(Block::C);
        let d = self.block(Block::D);
        let a_inv = plain_inverse(&a)?;
        let s = d.try_sub(&c.try_mul(&a_inv)?.try_mul(&b)?)?;
        let det_s = plain_det(&s)?;
        if !det_s.body_invertible() {
            return Err(Error::NonInvertibleBlock);
        }
        plain_det(&a)?.try_mul(&det_s.try_invert()?)
    }
}

fn choose_pivot<'a, E: Entry + 'a>(candidates: impl Iterator<Item = (usize, &'a E)> + Clone) -> Option<usize> {
    candidates
        .clone()
        .find(|(_, e)| e.preferred_pivot())
        .or_else(|| candidates.clone().find(|(_, e)| e.body_invertible()))
        .map(|(r, _)| r)
}

/// Gauss-Jordan inverse of an ordinary square matrix with even entries.
fn plain_inverse<E: Entry>(m: &SuperMatrix<E>) -> Result<SuperMatrix<E>> {
    let n = m.rows.total();
    let mut work: Vec<Vec<E>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut inv: Vec<Vec<E>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { E::one() } else { E::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = choose_pivot((col..n).map(|r| (r, &work[r][col]))).ok_or(Error::NonInvertibleBlock)?;
        work.swap(col, pivot);
        inv.swap(col, pivot);
        let p_inv = work[col][col].try_invert()?;
        for j in 0..n {
            work[col][j] = p_inv.try_mul(&work[col][j])?;
            inv[col][j] = p_inv.try_mul(&inv[col][j])?;
        }
        for r in 0..n {
            if r == col || work[r][col].is_zero() {
                continue;
            }
            let factor = work[r][col].clone();
            for j in 0..n {
                let w = factor.try_mul(&work[col][j])?;
                work[r][j] = work[r][j].try_sub(&w)?;
                let v = factor.try_mul(&inv[col][j])?;
                inv[r][j] = inv[r][j].try_sub(&v)?;
            }
        }
    }
    Ok(SuperMatrix::from_fn(m.rows, m.cols, |i, j| inv[i][j].clone()))
}

/// Determinant of an ordinary square matrix with mutually commuting entries.
fn plain_det<E: Entry>(m: &SuperMatrix<E>) -> Result<E> {
    let n = m.rows.total();
    let rows: Vec<Vec<E>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    det_rows(rows)
}

fn det_rows<E: Entry>(mut rows: Vec<Vec<E>>) -> Result<E> {
    let n = rows.len();
    if n <= 3 {
        return laplace(&rows);
    }
    let mut acc = E::one();
    for col in 0..n {
        let Some(pivot) = choose_pivot((col..n).map(|r| (r, &rows[r][col]))) else {
            return acc.try_mul(&laplace(&rows[col..].iter().map(|r| r[col..].to_vec()).collect::<Vec<_>>())?);
        };
        if pivot != col {
            rows.swap(col, pivot);
            acc = acc.negated();
        }
        let p = rows[col][col].clone();
        let p_inv = p.try_invert()?;
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].try_mul(&p_inv)?;
            for j in col..n {
                let w = factor.try_mul(&rows[col][j])?;
                rows[r][j] = rows[r][j].try_sub(&w)?;
            }
        }
        acc = acc.try_mul(&p)?;
    }
    Ok(acc)
}

fn laplace<E: Entry>(rows: &[Vec<E>]) -> Result<E> {
    let n = rows.len();
    if n == 0 {
        return Ok(E::one());
    }
    let mut acc = E::zero();
    for j in 0..n {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<E>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = rows[0][j].try_mul(&laplace(&minor)?)?;
        acc = if j % 2 == 0 { acc.try_add(&term)? } else { acc.try_sub(&term)? };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{Registry, SymbolId, SymbolKind};

    type M = SuperMatrix<GrassmannElement>;

    fn g(n: i64) -> GrassmannElement {
        GrassmannElement::from_int(n)
    }

    struct Fixture {
        reg: Registry,
        a: SymbolId,
        d: SymbolId,
        e1: SymbolId,
        e2: SymbolId,
    }

    fn fixture() -> Fixture {
        let mut reg = Registry::new();
        let a = reg.register("a", SymbolKind::EvenCoordinate, None).unwrap();
        let d = reg.register("d", SymbolKind::EvenCoordinate, None).unwrap();
        let e1 = reg.register("e1", SymbolKind::OddCoordinate, None).unwrap();
        let e2 = reg.register("e2", SymbolKind::OddCoordinate, None).unwrap();
        Fixture { reg, a, d, e1, e2 }
    }

    impl Fixture {
        fn s(&self, id: SymbolId) -> GrassmannElement {
            GrassmannElement::symbol(&self.reg, id)
        }

        /// An even 2|1 matrix with symbolic, invertible-body blocks.
        fn sample(&self) -> M {
            let (a, d, e1, e2) = (self.s(self.a), self.s(self.d), self.s(self.e1), self.s(self.e2));
            M::from_blocks(
                Dims::new(2, 1),
                vec![a.clone(), g(1), &a * &e1 * &e2, g(3) + &d],
                vec![e1.clone(), g(2) * &e2],
                vec![e2.clone(), &e1 + &e2],
                vec![d.clone() + g(1)],
            )
            .unwrap()
        }
    }

    #[test]
    fn identity_and_diagonal() {
        let f = fixture();
        let x = f.sample();
        let id = M::identity(Dims::new(2, 1));
        assert_eq!(id.try_mul(&x).unwrap(), x);
        assert_eq!(id.berezinian().unwrap(), g(1));
        assert_eq!(id.supertrace().unwrap(), g(1));
        let diag = M::diagonal(Dims::new(1, 1), vec![f.s(f.a), f.s(f.d)]).unwrap();
        let inv = M::diagonal(Dims::new(1, 1), vec![f.s(f.a).invert().unwrap(), f.s(f.d).invert().unwrap()]).unwrap();
        assert_eq!(diag.inverse().unwrap(), inv);
        assert_eq!(diag.berezinian().unwrap(), f.s(f.a) * f.s(f.d).invert().unwrap());
        assert_eq!(diag.supertrace().unwrap(), f.s(f.a) - f.s(f.d));
    }

    #[test]
    fn label_row_shape() {
        let f = fixture();
        let row = M::new(Dims::new(1, 0), Dims::new(3, 1), vec![g(1), f.s(f.a), f.s(f.d), f.s(f.e1)]).unwrap();
        let col = M::new(Dims::new(3, 1), Dims::new(1, 0), vec![g(1), g(0), g(0), f.s(f.e2)]).unwrap();
        let out = row.try_mul(&col).unwrap();
        assert_eq!((out.rows(), out.cols()), (Dims::new(1, 0), Dims::new(1, 0)));
        assert_eq!(out.get(0, 0), &(g(1) + f.s(f.e1) * f.s(f.e2)));
        assert!(matches!(row.try_mul(&row), Err(Error::DimensionMismatch(_))));
        assert!(matches!(row.berezinian(), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn inverse_and_berezinian() {
        let f = fixture();
        let x = f.sample();
        let inv = x.inverse().unwrap();
        let id = M::identity(Dims::new(2, 1));
        assert_eq!(x.try_mul(&inv).unwrap(), id);
        assert_eq!(inv.try_mul(&x).unwrap(), id);
        let ber = x.berezinian().unwrap();
        assert_eq!(ber, x.berezinian_via_a().unwrap());
        assert_eq!(&ber * &inv.berezinian().unwrap(), g(1));
    }

    #[test]
    fn nilpotent_series_inverse() {
        let f = fixture();
        let (e1, e2) = (f.s(f.e1), f.s(f.e2));
        let n = M::from_blocks(Dims::new(1, 1), vec![&e1 * &e2], vec![e1.clone()], vec![e2.clone()], vec![g(0)]).unwrap();
        let id = M::identity(Dims::new(1, 1));
        let x = id.try_add(&n).unwrap();
        let n2 = n.try_mul(&n).unwrap();
        let series = id.try_sub(&n).unwrap().try_add(&n2).unwrap().try_sub(&n2.try_mul(&n).unwrap()).unwrap();
        assert!(n2.try_mul(&n2).unwrap().is_zero());
        assert_eq!(x.inverse().unwrap(), series);
    }

    #[test]
    fn singular_block_rejected() {
        let f = fixture();
        let x = M::from_blocks(Dims::new(1, 1), vec![f.s(f.e1) * f.s(f.e2)], vec![f.s(f.e1)], vec![g(0)], vec![g(1)]).unwrap();
        assert_eq!(x.inverse(), Err(Error::NonInvertibleBlock));
        let y = M::from_blocks(Dims::new(1, 1), vec![g(1)], vec![g(0)], vec![g(0)], vec![g(0)]).unwrap();
        assert_eq!(y.berezinian(), Err(Error::NonInvertibleBlock));
    }

    #[test]
    fn supertrace_of_one_by_one() {
        let f = fixture();
        let x = M::from_blocks(Dims::new(1, 1), vec![f.s(f.a)], vec![f.s(f.e1)], vec![f.s(f.e2)], vec![f.s(f.d)]).unwrap();
        assert_eq!(x.supertrace().unwrap(), f.s(f.a) - f.s(f.d));
        let y = f.sample();
        assert!(x.parity() == Some(0) && y.parity() == Some(0));
        assert!(y.commutator(&y.inverse().unwrap()).unwrap().supertrace().unwrap().is_zero());
    }

    #[test]
    fn odd_supertrace_sign() {
        let f = fixture();
        let (e1, e2) = (f.s(f.e1), f.s(f.e2));
        let x = M::from_blocks(Dims::new(1, 1), vec![e1.clone()], vec![f.s(f.a)], vec![g(2)], vec![e2.clone()]).unwrap();
        let y = M::from_blocks(Dims::new(1, 1), vec![e2.clone()], vec![g(1)], vec![f.s(f.d)], vec![&e1 + &e2]).unwrap();
        assert_eq!((x.parity(), y.parity()), (Some(1), Some(1)));
        let xy = x.try_mul(&y).unwrap().supertrace().unwrap();
        let yx = y.try_mul(&x).unwrap().supertrace().unwrap();
        assert_eq!(xy, -yx);
    }

    #[test]
    fn determinant_fallback_on_nilpotent_pivots() {
        let f = fixture();
        let (e1, e2) = (f.s(f.e1), f.s(f.e2));
        let m = M::new(Dims::new(2, 0), Dims::new(2, 0), vec![&e1 * &e2, g(1), g(1), &e1 * &e2]).unwrap();
        assert_eq!(plain_det(&m).unwrap(), g(-1));
    }
}
