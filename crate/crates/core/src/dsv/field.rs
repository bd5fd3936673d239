use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg::is_prime;
use crate::{Error, Result};

/// An exact field: the rationals or `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if is_prime(p as u64) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::InvalidField("modulus is not prime"))
        }
    }

    /// Canonical representative: reduced fraction, or an integer in `[0, p)`.
    pub fn normalize(&self, x: &BigRational) -> Result<BigRational> {
        match self {
            Field::Rational => Ok(x.clone()),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let den = x.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::InvalidField("denominator divisible by p"));
                }
                let inv = crate::linalg::inverse_mod(&den, &p);
                Ok(BigRational::from_integer((x.numer() * inv).mod_floor(&p)))
            }
        }
    }

    pub fn from_i64(&self, x: i64) -> BigRational {
        self.normalize(&BigRational::from_integer(BigInt::from(x)))
            .expect("integers are always representable")
    }

    fn fix(&self, x: BigRational) -> BigRational {
        match self {
            Field::Rational => x,
            Field::Prime(p) => BigRational::from_integer(x.to_integer().mod_floor(&BigInt::from(*p))),
        }
    }

    pub fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.fix(a + b)
    }

    pub fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.fix(a - b)
    }

    pub fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.fix(a * b)
    }

    pub fn neg(&self, a: &BigRational) -> BigRational {
        self.fix(-a)
    }

    pub fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            return None;
        }
        match self {
            Field::Rational => Some(a.recip()),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                Some(BigRational::from_integer(crate::linalg::inverse_mod(&a.to_integer(), &p)))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{}", p),
        }
    }
}

impl core::str::FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        match s {
            "Q" | "R" | "C" => Ok(Field::Rational),
            _ => {
                let p = s
                    .strip_prefix('F')
                    .and_then(|p| p.strip_prefix('_').or(Some(p)))
                    .and_then(|p| p.parse::<u32>().ok())
                    .ok_or(Error::Parse("field must be Q or F<p>"))?;
                Field::prime(p)
            }
        }
    }
}

/// Dense matrix over a [`Field`], row-major, entries kept normalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl FieldMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            entries: (0..rows * cols).map(|_| BigRational::zero()).collect(),
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_entries(field: Field, rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        let entries = entries.iter().map(|e| field.normalize(e)).collect::<Result<_>>()?;
        Ok(FieldMatrix { field, rows, cols, entries })
    }

    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::from_entries(
            field,
            rows,
            cols,
            entries.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.cols + j] = self.field.fix(v);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn check_field(&self, other: &FieldMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = self.field.add(out.get(i, j), &self.field.mul(a, b));
                        out.entries[i * other.cols + j] = v;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Ok(FieldMatrix { entries, ..self.clone() })
    }

    pub fn add(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        let neg = other.scale(&self.field.from_i64(-1));
        self.sub(&neg)
    }

    pub fn scale(&self, c: &BigRational) -> FieldMatrix {
        let entries = self.entries.iter().map(|a| self.field.mul(a, c)).collect();
        FieldMatrix { entries, ..self.clone() }
    }

    /// Copies `block` into position `(r, c)`.
    pub(crate) fn place(&mut self, r: usize, c: usize, block: &FieldMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.entries[(r + i) * self.cols + c + j] = block.get(i, j).clone();
            }
        }
    }

    pub(crate) fn block(&self, r: usize, c: usize, rows: usize, cols: usize) -> FieldMatrix {
        let mut out = Self::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.entries[i * cols + j] = self.get(r + i, c + j).clone();
            }
        }
        out
    }

    /// `[self | other]`
    pub(crate) fn hstack(&self, other: &FieldMatrix) -> FieldMatrix {
        let mut out = Self::zeros(self.field, self.rows, self.cols + other.cols);
        out.place(0, 0, self);
        out.place(0, self.cols, other);
        out
    }

    /// Reduced row echelon form; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else { continue };
            for j in 0..self.cols {
                self.entries.swap(pr * self.cols + j, r * self.cols + j);
            }
            let inv = f.inv(self.get(r, c)).expect("nonzero pivot");
            for j in 0..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.entries[r * self.cols + j] = v;
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in 0..self.cols {
                    let v = f.sub(self.get(i, j), &f.mul(&factor, self.get(r, j)));
                    self.entries[i * self.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the null space, as columns of the returned matrix.
    pub fn nullspace(&self) -> FieldMatrix {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(self.field, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.entries[fc * free.len() + k] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                let v = self.field.neg(m.get(r, fc));
                out.entries[pc * free.len() + k] = v;
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<FieldMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = self.hstack(&Self::identity(self.field, n));
        let pivots = aug.rref();
        if pivots.iter().take_while(|&&c| c < n).count() < n {
            return None;
        }
        Some(aug.block(0, n, n, n))
    }

    /// Some solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let mut aug = Self::zeros(self.field, self.rows, self.cols + 1);
        aug.place(0, 0, self);
        for (i, bi) in b.iter().enumerate() {
            aug.entries[i * (self.cols + 1) + self.cols] = self.field.normalize(bi)?;
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x: Vec<BigRational> = (0..self.cols).map(|_| BigRational::zero()).collect();
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }
}
