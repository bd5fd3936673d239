//! Differential super vector spaces: `Z/2`-graded spaces `V_0 + V_1` with
//! `d_0: V_0 -> V_1`, `d_1: V_1 -> V_0` and `d_0 d_1 = d_1 d_0 = 0`.
//!
//! Tensor products use the Koszul convention
//! `d(v ⊗ w) = dv ⊗ w + (-1)^{|v|} v ⊗ dw`, and the braiding is
//! `v ⊗ w ↦ (-1)^{|v||w|} w ⊗ v`.

mod chain;
mod field;
mod map;

pub use chain::BoundedChainComplex;
pub use field::{Field, FieldMatrix};
pub use map::{swap_map, ChainHomotopy, DsvMap, HomotopyEquivalence};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dsv {
    field: Field,
    d0: FieldMatrix,
    d1: FieldMatrix,
}

impl Dsv {
    /// `d0` is `dim1 x dim0` (a map `V_0 -> V_1`), `d1` is `dim0 x dim1`.
    pub fn new(d0: FieldMatrix, d1: FieldMatrix) -> Result<Self> {
        let field = d0.field();
        if d1.field() != field {
            return Err(Error::FieldMismatch);
        }
        if d0.rows() != d1.cols() || d0.cols() != d1.rows() {
            return Err(Error::DimensionMismatch {
                expected: d0.rows() * d0.cols(),
                found: d1.cols() * d1.rows(),
            });
        }
        if !d1.mul(&d0)?.is_zero() || !d0.mul(&d1)?.is_zero() {
            return Err(Error::InvalidComplex("differentials do not square to zero"));
        }
        Ok(Dsv { field, d0, d1 })
    }

    pub fn zero_differentials(field: Field, dim0: usize, dim1: usize) -> Self {
        Dsv {
            field,
            d0: FieldMatrix::zeros(field, dim1, dim0),
            d1: FieldMatrix::zeros(field, dim0, dim1),
        }
    }

    /// The monoidal unit `(F + 0, 0, 0)`.
    pub fn unit(field: Field) -> Self {
        Self::zero_differentials(field, 1, 0)
    }

    /// The odd line `(0 + F, 0, 0)`.
    pub fn odd_line(field: Field) -> Self {
        Self::zero_differentials(field, 0, 1)
    }

    /// `(F + F, d_0 = 1, d_1 = 0)`, which is acyclic.
    pub fn contractible(field: Field) -> Self {
        Dsv {
            field,
            d0: FieldMatrix::identity(field, 1),
            d1: FieldMatrix::zeros(field, 1, 1),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim0(&self) -> usize {
        self.d0.cols()
    }

    pub fn dim1(&self) -> usize {
        self.d0.rows()
    }

    pub fn dim(&self) -> usize {
        self.dim0() + self.dim1()
    }

    pub fn d0(&self) -> &FieldMatrix {
        &self.d0
    }

    pub fn d1(&self) -> &FieldMatrix {
        &self.d1
    }

    /// Differential on `V_0 + V_1` (even basis first) as one square matrix.
    pub(crate) fn total_differential(&self) -> FieldMatrix {
        let (a, b) = (self.dim0(), self.dim1());
        let mut d = FieldMatrix::zeros(self.field, a + b, a + b);
        d.place(0, a, &self.d1);
        d.place(a, 0, &self.d0);
        d
    }

    pub(crate) fn parity(&self, i: usize) -> usize {
        usize::from(i >= self.dim0())
    }

    /// Splits a total differential back into `(d0, d1)` for the given dims.
    fn from_total(field: Field, dim0: usize, dim1: usize, d: &FieldMatrix) -> Dsv {
        Dsv {
            field,
            d0: d.block(dim0, 0, dim1, dim0),
            d1: d.block(0, dim0, dim0, dim1),
        }
    }

    pub fn homology(&self) -> (usize, usize) {
        let (r0, r1) = (self.d0.rank(), self.d1.rank());
        (self.dim0() - r0 - r1, self.dim1() - r1 - r0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology() == (0, 0)
    }

    /// Tensor-invertible up to equivalence: total homology of dimension one.
    pub fn is_invertible(&self) -> bool {
        let (h0, h1) = self.homology();
        h0 + h1 == 1
    }

    /// `dim V_0 - dim V_1`.
    pub fn unit_virtual_dim(&self) -> i64 {
        self.dim0() as i64 - self.dim1() as i64
    }

    pub fn euler_char(&self) -> i64 {
        self.unit_virtual_dim()
    }

    /// The homology as a DSV with zero differentials.
    pub fn homology_dsv(&self) -> Dsv {
        let (h0, h1) = self.homology();
        Self::zero_differentials(self.field, h0, h1)
    }

    pub fn direct_sum(&self, other: &Dsv) -> Result<Dsv> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let (a0, a1, b0, b1) = (self.dim0(), self.dim1(), other.dim0(), other.dim1());
        let mut d0 = FieldMatrix::zeros(self.field, a1 + b1, a0 + b0);
        d0.place(0, 0, &self.d0);
        d0.place(a1, a0, &other.d0);
        let mut d1 = FieldMatrix::zeros(self.field, a0 + b0, a1 + b1);
        d1.place(0, 0, &self.d1);
        d1.place(a0, a1, &other.d1);
        Ok(Dsv { field: self.field, d0, d1 })
    }

    pub fn tensor(&self, other: &Dsv) -> Result<Dsv> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let f = self.field;
        let layout = TensorLayout::new(self, other);
        let n = self.dim() * other.dim();
        let (dv, dw) = (self.total_differential(), other.total_differential());
        let mut d = FieldMatrix::zeros(f, n, n);
        for i in 0..self.dim() {
            for j in 0..other.dim() {
                let col = layout.position(i, j);
                for k in 0..self.dim() {
                    let c = dv.get(k, i);
                    if !num_traits::Zero::is_zero(c) {
                        let row = layout.position(k, j);
                        d.set(row, col, f.add(d.get(row, col), c));
                    }
                }
                let sign = if self.parity(i) == 1 { f.from_i64(-1) } else { f.from_i64(1) };
                for l in 0..other.dim() {
                    let c = dw.get(l, j);
                    if !num_traits::Zero::is_zero(c) {
                        let row = layout.position(i, l);
                        d.set(row, col, f.add(d.get(row, col), &f.mul(&sign, c)));
                    }
                }
            }
        }
        Ok(Dsv::from_total(f, layout.dim0, layout.dim1, &d))
    }
}

/// Basis order of `V ⊗ W`: degree 0 is `V_0⊗W_0` then `V_1⊗W_1`; degree 1
/// is `V_1⊗W_0` then `V_0⊗W_1`; each block ordered lexicographically.
pub(crate) struct TensorLayout {
    v: (usize, usize),
    w: (usize, usize),
    dim0: usize,
    dim1: usize,
}

impl TensorLayout {
    pub(crate) fn new(v: &Dsv, w: &Dsv) -> Self {
        let (v0, v1, w0, w1) = (v.dim0(), v.dim1(), w.dim0(), w.dim1());
        TensorLayout {
            v: (v0, v1),
            w: (w0, w1),
            dim0: v0 * w0 + v1 * w1,
            dim1: v1 * w0 + v0 * w1,
        }
    }

    /// Position of `e_i ⊗ f_j` (total indices) in the total basis of `V ⊗ W`.
    pub(crate) fn position(&self, i: usize, j: usize) -> usize {
        let (v0, v1) = self.v;
        let (w0, w1) = self.w;
        let (vi, pi) = if i < v0 { (i, 0) } else { (i - v0, 1) };
        let (wj, pj) = if j < w0 { (j, 0) } else { (j - w0, 1) };
        match (pi, pj) {
            (0, 0) => vi * w0 + wj,
            (1, 1) => v0 * w0 + vi * w1 + wj,
            (1, 0) => self.dim0 + vi * w0 + wj,
            _ => self.dim0 + v1 * w0 + vi * w1 + wj,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn invariant_checked() {
        let f = Field::Rational;
        let d0 = FieldMatrix::identity(f, 1);
        let d1 = FieldMatrix::identity(f, 1);
        assert!(Dsv::new(d0, d1).is_err());
    }

    #[test]
    fn unit_tensor_is_identity() {
        let v = Dsv::new(
            FieldMatrix::from_i64(f5(), 1, 2, &[1, 2]).unwrap(),
            FieldMatrix::zeros(f5(), 2, 1),
        )
        .unwrap();
        assert_eq!(Dsv::unit(f5()).tensor(&v).unwrap(), v);
        assert_eq!(v.tensor(&Dsv::unit(f5())).unwrap(), v);
    }

    #[test]
    fn acyclic_tensor_square() {
        let c = Dsv::contractible(Field::Rational);
        let cc = c.tensor(&c).unwrap();
        assert_eq!(cc.dim(), 4);
        assert_eq!(cc.homology(), (0, 0));
    }

    #[test]
    fn dimension_formula() {
        let v = Dsv::zero_differentials(Field::Rational, 2, 1);
        let w = Dsv::zero_differentials(Field::Rational, 1, 1);
        let t = v.tensor(&w).unwrap();
        assert_eq!((t.dim0(), t.dim1()), (3, 3));
    }

    #[test]
    fn sums_and_invertibility() {
        let f = Field::Rational;
        let u = Dsv::unit(f);
        assert_eq!(u.direct_sum(&Dsv::zero_differentials(f, 0, 0)).unwrap(), u);
        assert_eq!(u.homology(), (1, 0));
        assert!(u.is_invertible());
        assert_eq!(u.unit_virtual_dim(), 1);
        let odd = Dsv::odd_line(f);
        assert!(odd.is_invertible());
        assert_eq!(odd.unit_virtual_dim(), -1);
        let c = Dsv::contractible(f);
        assert!(!c.is_invertible());
        assert_eq!(c.unit_virtual_dim(), 0);
        assert_eq!(c.euler_char(), 0);
        assert!(u.direct_sum(&c).unwrap().is_invertible());
        assert_eq!(u.direct_sum(&Dsv::unit(f5())), Err(Error::FieldMismatch));
    }

    #[test]
    fn layout_is_bijective() {
        let v = Dsv::zero_differentials(Field::Rational, 2, 3);
        let w = Dsv::zero_differentials(Field::Rational, 3, 1);
        let l = TensorLayout::new(&v, &w);
        let mut seen = alloc::vec![false; 20];
        for i in 0..5 {
            for j in 0..4 {
                let p = l.position(i, j);
                assert!(!seen[p]);
                seen[p] = true;
                let even = (v.parity(i) + w.parity(j)) % 2 == 0;
                assert_eq!(p < l.dim0, even);
            }
        }
    }
}
