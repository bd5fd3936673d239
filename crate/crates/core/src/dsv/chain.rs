use alloc::vec::Vec;

use super::{Dsv, Field, FieldMatrix};
use crate::{Error, Result};

/// A bounded chain complex `E_lo <- ... <- E_hi` of finite-dimensional spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedChainComplex {
    field: Field,
    lowest: i64,
    dims: Vec<usize>,
    /// `boundaries[k]` is `∂: E_{lowest+k+1} -> E_{lowest+k}`.
    boundaries: Vec<FieldMatrix>,
}

impl BoundedChainComplex {
    pub fn new(field: Field, lowest: i64, dims: Vec<usize>, boundaries: Vec<FieldMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != dims.len().max(1) {
            return Err(Error::InvalidComplex("need one boundary map between consecutive degrees"));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.field() != field {
                return Err(Error::FieldMismatch);
            }
            if (b.rows(), b.cols()) != (dims[k], dims[k + 1]) {
                return Err(Error::InvalidComplex("boundary shape does not match dimensions"));
            }
        }
        for pair in boundaries.windows(2) {
            if !pair[0].mul(&pair[1])?.is_zero() {
                return Err(Error::InvalidComplex("boundary does not square to zero"));
            }
        }
        Ok(BoundedChainComplex { field, lowest, dims, boundaries })
    }

    /// A single space in degree `degree`.
    pub fn concentrated(field: Field, degree: i64, dim: usize) -> Self {
        BoundedChainComplex { field, lowest: degree, dims: alloc::vec![dim], boundaries: Vec::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn lowest_degree(&self) -> i64 {
        self.lowest
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundaries(&self) -> &[FieldMatrix] {
        &self.boundaries
    }

    /// `Σ (-1)^i dim E_i`.
    pub fn euler_char(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if (self.lowest + k as i64).rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// Homology dimensions, one per degree starting at the lowest.
    pub fn homology(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.boundaries.iter().map(FieldMatrix::rank).collect();
        (0..self.dims.len())
            .map(|k| {
                let out = if k > 0 { ranks[k - 1] } else { 0 };
                let inc = ranks.get(k).copied().unwrap_or(0);
                self.dims[k] - out - inc
            })
            .collect()
    }

    /// Folds even and odd degrees into a DSV.
    pub fn epsilon(&self) -> Dsv {
        let f = self.field;
        let parity = |k: usize| (self.lowest + k as i64).rem_euclid(2) as usize;
        let mut offset = [0usize; 2];
        let mut start = Vec::with_capacity(self.dims.len());
        for (k, &d) in self.dims.iter().enumerate() {
            start.push(offset[parity(k)]);
            offset[parity(k)] += d;
        }
        let mut d0 = FieldMatrix::zeros(f, offset[1], offset[0]);
        let mut d1 = FieldMatrix::zeros(f, offset[0], offset[1]);
        for (k, b) in self.boundaries.iter().enumerate() {
            let (lo, hi) = (k, k + 1);
            let target = if parity(hi) == 0 { &mut d0 } else { &mut d1 };
            target.place(start[lo], start[hi], b);
        }
        Dsv::new(d0, d1).expect("folding preserves d^2 = 0")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero_is_unit_like() {
        let e = BoundedChainComplex::concentrated(Field::Rational, 0, 1);
        assert_eq!(e.epsilon(), Dsv::unit(Field::Rational));
        let e = BoundedChainComplex::concentrated(Field::Rational, -3, 1);
        assert_eq!(e.epsilon(), Dsv::odd_line(Field::Rational));
    }

    #[test]
    fn identity_two_term_is_acyclic() {
        let f = Field::Rational;
        let e = BoundedChainComplex::new(f, 0, alloc::vec![1, 1], alloc::vec![FieldMatrix::identity(f, 1)]).unwrap();
        let v = e.epsilon();
        assert!(v.is_acyclic());
        assert_eq!(v.euler_char(), e.euler_char());
    }

    #[test]
    fn three_term_homology_matches() {
        let f = Field::prime(5).unwrap();
        // F --(1,1)--> F^2 --(1,-1)--> F
        let d1 = FieldMatrix::from_i64(f, 1, 2, &[1, -1]).unwrap();
        let d2 = FieldMatrix::from_i64(f, 2, 1, &[1, 1]).unwrap();
        let e = BoundedChainComplex::new(f, 0, alloc::vec![1, 2, 1], alloc::vec![d1, d2]).unwrap();
        assert_eq!(e.homology(), alloc::vec![0, 0, 0]);
        let v = e.epsilon();
        assert_eq!(v.homology(), (0, 0));
        assert_eq!(v.euler_char(), 0);
    }

    #[test]
    fn bad_complex_rejected() {
        let f = Field::Rational;
        let one = FieldMatrix::identity(f, 1);
        assert!(BoundedChainComplex::new(f, 0, alloc::vec![1, 1, 1], alloc::vec![one.clone(), one]).is_err());
    }
}
