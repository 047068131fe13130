//! The ring T_n(q) of lower triangular n x n matrices over GF(q).
//!
//! Entries on and below the diagonal are stored row-major:
//! (1,1), (2,1), (2,2), (3,1), (3,2), (3,3), ... and the integer code of a
//! matrix is the base-q number whose i-th digit is the i-th stored entry.
//! Every canonical submodule code downstream depends on this order.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::FieldTable;

pub const MAX_DIM: usize = 4;
const MAX_ENTRIES: usize = MAX_DIM * (MAX_DIM + 1) / 2;

/// Number of stored entries, n(n+1)/2.
pub const fn triangle_size(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Position of entry (i, j), 0-based with j <= i, in the stored order.
#[inline]
pub const fn slot(i: usize, j: usize) -> usize {
    i * (i + 1) / 2 + j
}

/// A lower triangular matrix with entries given as field element indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriMatrix {
    n: u8,
    entries: [u8; MAX_ENTRIES],
}

impl TriMatrix {
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&n), "dimension {n} out of range");
        Self {
            n: n as u8,
            entries: [0; MAX_ENTRIES],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from its rows; row i must hold exactly i+1 entries
    /// (the part on and below the diagonal).
    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let mut m = Self::zero(rows.len());
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), i + 1, "row {i} must have {} entries", i + 1);
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Builds a matrix from a full square layout, ignoring nothing: entries
    /// above the diagonal must be zero.
    pub fn from_square(rows: &[Vec<u8>]) -> Option<Self> {
        let n = rows.len();
        if !(1..=MAX_DIM).contains(&n) {
            return None;
        }
        let mut m = Self::zero(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return None;
            }
            for (j, &v) in row.iter().enumerate() {
                if j > i {
                    if v != 0 {
                        return None;
                    }
                } else {
                    m.set(i, j, v);
                }
            }
        }
        Some(m)
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        if j > i {
            0
        } else {
            self.entries[slot(i, j)]
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        assert!(j <= i && i < self.dim(), "({i},{j}) is not a stored entry");
        self.entries[slot(i, j)] = v;
    }

    /// The stored entries in canonical order.
    pub fn entries(&self) -> &[u8] {
        &self.entries[..triangle_size(self.dim())]
    }

    pub fn diagonal(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.dim()).map(move |i| self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|&e| e == 0)
    }

    /// Membership in the Jacobson radical: every diagonal entry is zero.
    pub fn is_radical(&self) -> bool {
        self.diagonal().all(|d| d == 0)
    }

    /// Invertibility in T_n(q): every diagonal entry is nonzero.
    pub fn is_unit(&self) -> bool {
        self.diagonal().all(|d| d != 0)
    }

    pub fn code(&self, q: u32) -> u32 {
        self.entries()
            .iter()
            .rev()
            .fold(0u32, |acc, &e| acc * q + e as u32)
    }

    pub fn decode(mut code: u32, n: usize, q: u32) -> Self {
        let mut m = Self::zero(n);
        for e in m.entries[..triangle_size(n)].iter_mut() {
            *e = (code % q) as u8;
            code /= q;
        }
        m
    }

    /// Full square layout, row by row.
    pub fn to_square(&self) -> Vec<Vec<u8>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn add(&self, other: &Self, f: &FieldTable) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.add_unchecked(other, f))
    }

    pub fn mul(&self, other: &Self, f: &FieldTable) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.mul_unchecked(other, f))
    }

    #[inline]
    pub(crate) fn add_unchecked(&self, other: &Self, f: &FieldTable) -> Self {
        let mut out = *self;
        for (o, &b) in out.entries[..triangle_size(self.dim())]
            .iter_mut()
            .zip(&other.entries)
        {
            *o = f.add(*o, b);
        }
        out
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &Self, f: &FieldTable) -> Self {
        let n = self.dim();
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..=i {
                let mut acc = 0u8;
                for k in j..=i {
                    let a = self.entries[slot(i, k)];
                    if a != 0 {
                        acc = f.add(acc, f.mul(a, other.entries[slot(k, j)]));
                    }
                }
                out.entries[slot(i, j)] = acc;
            }
        }
        out
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }
}

impl fmt::Debug for TriMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Bracket layout flattened row-wise, e.g. `[[1,0],[0,0]]`.
impl fmt::Display for TriMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        write!(f, "[")?;
        for i in 0..n {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// T_n(q) with every element decoded, plus its unit group and radical.
#[derive(Debug, Clone)]
pub struct RingContext {
    field: FieldTable,
    n: usize,
    elements: Vec<TriMatrix>,
    units: Vec<u32>,
    radical: Vec<u32>,
}

impl RingContext {
    /// Enumerates T_n(q). Pair codes of the free module must fit in 32 bits.
    pub fn new(n: usize, field: FieldTable) -> Result<Self> {
        if !(2..=MAX_DIM).contains(&n) {
            return Err(Error::DimensionUnsupported(n, "2..=4"));
        }
        let q = field.order();
        let s = triangle_size(n);
        let pair_space = (q as u128).pow(2 * s as u32);
        if pair_space > 1u128 << 32 {
            return Err(Error::EnumerationTooLarge { q, exponent: 2 * s });
        }
        let size = q.pow(s as u32);
        let elements: Vec<TriMatrix> = (0..size).map(|c| TriMatrix::decode(c, n, q)).collect();
        let units = (0..size)
            .filter(|&c| elements[c as usize].is_unit())
            .collect();
        let radical = (0..size)
            .filter(|&c| elements[c as usize].is_radical())
            .collect();
        Ok(Self {
            field,
            n,
            elements,
            units,
            radical,
        })
    }

    pub fn field(&self) -> &FieldTable {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// S_n = n(n+1)/2.
    pub fn entry_count(&self) -> usize {
        triangle_size(self.n)
    }

    /// q^{S_n}.
    pub fn size(&self) -> u32 {
        self.elements.len() as u32
    }

    pub fn elements(&self) -> &[TriMatrix] {
        &self.elements
    }

    #[inline]
    pub fn element(&self, code: u32) -> &TriMatrix {
        &self.elements[code as usize]
    }

    pub fn units(&self) -> &[u32] {
        &self.units
    }

    pub fn radical(&self) -> &[u32] {
        &self.radical
    }

    pub fn code(&self, m: &TriMatrix) -> u32 {
        m.code(self.q())
    }

    pub fn identity(&self) -> TriMatrix {
        TriMatrix::identity(self.n)
    }

    pub fn add(&self, a: &TriMatrix, b: &TriMatrix) -> Result<TriMatrix> {
        self.check(a)?;
        a.add(b, &self.field)
    }

    pub fn mul(&self, a: &TriMatrix, b: &TriMatrix) -> Result<TriMatrix> {
        self.check(a)?;
        a.mul(b, &self.field)
    }

    pub fn is_unit(&self, a: &TriMatrix) -> bool {
        a.is_unit()
    }

    fn check(&self, a: &TriMatrix) -> Result<()> {
        if a.dim() != self.n {
            return Err(Error::DimensionMismatch(a.dim(), self.n));
        }
        Ok(())
    }

    /// Whether two contexts describe the same ring.
    pub fn same_ring(&self, other: &Self) -> bool {
        self.n == other.n && self.field == other.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize, q: u32) -> RingContext {
        RingContext::new(n, FieldTable::new(q).unwrap()).unwrap()
    }

    #[test]
    fn addition_examples() {
        let c = ctx(2, 3);
        let f = c.field();
        let a = TriMatrix::from_rows(&[&[1], &[2, 1]]);
        let b = TriMatrix::from_rows(&[&[2], &[2, 2]]);
        assert_eq!(
            a.add(&b, f).unwrap(),
            TriMatrix::from_rows(&[&[0], &[1, 0]])
        );
        assert_eq!(a.add(&TriMatrix::zero(2), f).unwrap(), a);
        let c2 = ctx(2, 2);
        for m in c2.elements() {
            assert!(m.add(m, c2.field()).unwrap().is_zero());
        }
    }

    #[test]
    fn multiplication_examples() {
        let c = ctx(2, 2);
        let f = c.field();
        let m = TriMatrix::from_rows(&[&[1], &[1, 1]]);
        assert_eq!(m.mul(&m, f).unwrap(), TriMatrix::identity(2));
        for x in c.elements() {
            assert_eq!(c.identity().mul(x, f).unwrap(), *x);
        }
        let c3 = ctx(2, 3);
        for &a in c3.radical() {
            for &b in c3.radical() {
                assert!(c3
                    .element(a)
                    .mul(c3.element(b), c3.field())
                    .unwrap()
                    .is_zero());
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let f = FieldTable::new(2).unwrap();
        let a = TriMatrix::identity(2);
        let b = TriMatrix::identity(3);
        assert_eq!(a.mul(&b, &f), Err(Error::DimensionMismatch(2, 3)));
        assert_eq!(a.add(&b, &f), Err(Error::DimensionMismatch(2, 3)));
    }

    #[test]
    fn context_sizes() {
        let c = ctx(2, 2);
        assert_eq!((c.size(), c.units().len(), c.radical().len()), (8, 2, 2));
        let c = ctx(2, 3);
        assert_eq!((c.size(), c.units().len(), c.radical().len()), (27, 12, 3));
        let c = ctx(3, 2);
        assert_eq!((c.size(), c.units().len(), c.radical().len()), (64, 8, 8));
        for (n, q) in [(2, 4), (2, 5), (3, 3), (4, 2)] {
            let c = ctx(n, q);
            let s = triangle_size(n) as u32;
            assert_eq!(
                c.units().len() as u32,
                (q - 1).pow(n as u32) * q.pow(s - n as u32)
            );
            assert_eq!(c.radical().len() as u32, q.pow(s - n as u32));
        }
    }

    #[test]
    fn unsupported_dimensions() {
        let f = FieldTable::new(2).unwrap();
        assert!(matches!(
            RingContext::new(1, f.clone()),
            Err(Error::DimensionUnsupported(1, _))
        ));
        assert!(matches!(
            RingContext::new(5, f),
            Err(Error::DimensionUnsupported(5, _))
        ));
        let f16 = FieldTable::new(16).unwrap();
        assert!(matches!(
            RingContext::new(3, f16),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn code_round_trip() {
        for (n, q) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
            let c = ctx(n, q);
            for code in 0..c.size() {
                assert_eq!(c.element(code).code(q), code);
            }
        }
    }

    #[test]
    fn ring_axioms_exhaustive_small() {
        for q in [2, 3] {
            let c = ctx(2, q);
            let f = c.field();
            for a in c.elements() {
                for b in c.elements() {
                    for d in c.elements() {
                        let ab = a.mul(b, f).unwrap();
                        assert_eq!(
                            ab.mul(d, f).unwrap(),
                            a.mul(&b.mul(d, f).unwrap(), f).unwrap()
                        );
                        let lhs = a.mul(&b.add(d, f).unwrap(), f).unwrap();
                        let rhs = ab.add(&a.mul(d, f).unwrap(), f).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn units_are_exactly_the_invertible_elements() {
        for (n, q) in [(2, 2), (2, 3), (3, 2), (2, 4), (2, 5)] {
            let c = ctx(n, q);
            let f = c.field();
            let id = c.identity();
            for a in c.elements() {
                let invertible = c
                    .elements()
                    .iter()
                    .any(|b| a.mul(b, f).unwrap() == id && b.mul(a, f).unwrap() == id);
                assert_eq!(invertible, a.is_unit(), "{a}");
            }
        }
    }

    #[test]
    fn radical_is_the_nilpotent_ideal() {
        // a lies in J iff a*u is nilpotent for every unit u
        for (n, q) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
            let c = ctx(n, q);
            let f = c.field();
            let nilpotent = |m: &TriMatrix| {
                let mut p = *m;
                for _ in 1..n {
                    p = p.mul(m, f).unwrap();
                }
                p.is_zero()
            };
            for a in c.elements() {
                let by_units = c
                    .units()
                    .iter()
                    .all(|&u| nilpotent(&a.mul(c.element(u), f).unwrap()));
                assert_eq!(nilpotent(a) && by_units, a.is_radical(), "{a}");
            }
        }
    }

    #[test]
    fn display_layout() {
        let m = TriMatrix::from_rows(&[&[1], &[0, 0]]);
        assert_eq!(m.to_string(), "[[1,0],[0,0]]");
        assert_eq!(TriMatrix::from_square(&m.to_square()), Some(m));
        assert_eq!(TriMatrix::from_square(&[vec![1, 1], vec![0, 0]]), None);
    }
}
