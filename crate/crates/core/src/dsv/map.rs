use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use super::{Dsv, Field, FieldMatrix, TensorLayout};
use crate::{Error, Result};

/// A degree-preserving map commuting with both differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsvMap {
    source: Dsv,
    target: Dsv,
    f0: FieldMatrix,
    f1: FieldMatrix,
}

/// An odd map `k = (k0: W_0 -> W_1, k1: W_1 -> W_0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainHomotopy {
    pub k0: FieldMatrix,
    pub k1: FieldMatrix,
}

/// Witness that `f` is a homotopy equivalence: `f∘g - id = dk + kd` on the
/// target (`on_target`) and `g∘f - id = dh + hd` on the source (`on_source`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyEquivalence {
    pub inverse: DsvMap,
    pub on_target: ChainHomotopy,
    pub on_source: ChainHomotopy,
}

impl DsvMap {
    pub fn new(source: Dsv, target: Dsv, f0: FieldMatrix, f1: FieldMatrix) -> Result<Self> {
        let field = source.field();
        if target.field() != field || f0.field() != field || f1.field() != field {
            return Err(Error::FieldMismatch);
        }
        if (f0.rows(), f0.cols()) != (target.dim0(), source.dim0())
            || (f1.rows(), f1.cols()) != (target.dim1(), source.dim1())
        {
            return Err(Error::InvalidMap("matrix shapes do not match the source and target"));
        }
        let ok0 = target.d0().mul(&f0)? == f1.mul(source.d0())?;
        let ok1 = target.d1().mul(&f1)? == f0.mul(source.d1())?;
        if !(ok0 && ok1) {
            return Err(Error::InvalidMap("map does not commute with the differentials"));
        }
        Ok(DsvMap { source, target, f0, f1 })
    }

    pub fn identity(v: &Dsv) -> Self {
        let f = v.field();
        DsvMap {
            source: v.clone(),
            target: v.clone(),
            f0: FieldMatrix::identity(f, v.dim0()),
            f1: FieldMatrix::identity(f, v.dim1()),
        }
    }

    pub fn zero(source: &Dsv, target: &Dsv) -> Result<Self> {
        let f = source.field();
        DsvMap::new(
            source.clone(),
            target.clone(),
            FieldMatrix::zeros(f, target.dim0(), source.dim0()),
            FieldMatrix::zeros(f, target.dim1(), source.dim1()),
        )
    }

    pub fn source(&self) -> &Dsv {
        &self.source
    }

    pub fn target(&self) -> &Dsv {
        &self.target
    }

    pub fn f0(&self) -> &FieldMatrix {
        &self.f0
    }

    pub fn f1(&self) -> &FieldMatrix {
        &self.f1
    }

    /// A basis of the space of chain maps `source -> target`.
    pub fn chain_map_basis(source: &Dsv, target: &Dsv) -> Result<Vec<DsvMap>> {
        let field = source.field();
        if target.field() != field {
            return Err(Error::FieldMismatch);
        }
        let (a0, a1, b0, b1) = (source.dim0(), source.dim1(), target.dim0(), target.dim1());
        let mut vars = Vars::default();
        let f0 = vars.block(b0, a0);
        let f1 = vars.block(b1, a1);
        let mut sys = System::new(field, vars.count);
        let (one, minus) = (field.from_i64(1), field.from_i64(-1));
        sys.equations(b1, a0, |e, i, j| {
            e.left(target.d0(), f0, i, j, &one);
            e.right(f1, source.d0(), i, j, &minus);
        });
        sys.equations(b0, a1, |e, i, j| {
            e.left(target.d1(), f1, i, j, &one);
            e.right(f0, source.d1(), i, j, &minus);
        });
        let kernel = sys.matrix().nullspace();
        (0..kernel.cols())
            .map(|k| {
                let read = |b: Block| {
                    let mut m = FieldMatrix::zeros(field, b.rows, b.cols);
                    for i in 0..b.rows {
                        for j in 0..b.cols {
                            m.set(i, j, kernel.get(b.var(i, j), k).clone());
                        }
                    }
                    m
                };
                DsvMap::new(source.clone(), target.clone(), read(f0), read(f1))
            })
            .collect()
    }

    /// `Σ c_k basis_k`, for combining the output of [`Self::chain_map_basis`].
    pub fn linear_combination(source: &Dsv, target: &Dsv, basis: &[DsvMap], coeffs: &[BigRational]) -> Result<DsvMap> {
        let mut out = DsvMap::zero(source, target)?;
        for (m, c) in basis.iter().zip(coeffs) {
            out.f0 = out.f0.add(&m.f0.scale(c))?;
            out.f1 = out.f1.add(&m.f1.scale(c))?;
        }
        Ok(out)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &DsvMap) -> Result<DsvMap> {
        if first.target != self.source {
            return Err(Error::InvalidMap("composition of non-composable maps"));
        }
        Ok(DsvMap {
            source: first.source.clone(),
            target: self.target.clone(),
            f0: self.f0.mul(&first.f0)?,
            f1: self.f1.mul(&first.f1)?,
        })
    }

    /// `Some(c)` if the map is `c` times the identity of its source.
    pub fn as_scalar(&self) -> Option<BigRational> {
        if self.source != self.target {
            return None;
        }
        let f = self.source.field();
        let mut c: Option<BigRational> = None;
        for m in [&self.f0, &self.f1] {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let x = m.get(i, j);
                    if i != j {
                        if !x.is_zero() {
                            return None;
                        }
                    } else if let Some(c) = &c {
                        if c != x {
                            return None;
                        }
                    } else {
                        c = Some(x.clone());
                    }
                }
            }
        }
        Some(c.unwrap_or_else(|| f.from_i64(1)))
    }

    /// True iff the induced maps `H_0(V) -> H_0(W)` and `H_1(V) -> H_1(W)`
    /// are isomorphisms.
    pub fn is_quasi_iso(&self) -> bool {
        let (hv, hw) = (self.source.homology(), self.target.homology());
        if hv != hw {
            return false;
        }
        let v = &self.source;
        let w = &self.target;
        induced_rank(&self.f0, v.d0(), w.d1()) == hv.0 && induced_rank(&self.f1, v.d1(), w.d0()) == hv.1
    }

    /// Solves for a homotopy inverse and both homotopies as one affine
    /// system; `None` iff `self` is not a homotopy equivalence.
    pub fn homotopy_inverse(&self) -> Option<HomotopyEquivalence> {
        let (v, w) = (&self.source, &self.target);
        let field = v.field();
        let (a0, a1, b0, b1) = (v.dim0(), v.dim1(), w.dim0(), w.dim1());
        let mut vars = Vars::default();
        let g0 = vars.block(a0, b0);
        let g1 = vars.block(a1, b1);
        let k0 = vars.block(b1, b0);
        let k1 = vars.block(b0, b1);
        let h0 = vars.block(a1, a0);
        let h1 = vars.block(a0, a1);
        let mut sys = System::new(field, vars.count);
        let one = field.from_i64(1);
        let minus = field.from_i64(-1);
        let (dv0, dv1, dw0, dw1) = (v.d0(), v.d1(), w.d0(), w.d1());
        // g commutes with the differentials.
        sys.equations(a1, b0, |e, i, j| {
            e.left(dv0, g0, i, j, &one);
            e.right(g1, dw0, i, j, &minus);
        });
        sys.equations(a0, b1, |e, i, j| {
            e.left(dv1, g1, i, j, &one);
            e.right(g0, dw1, i, j, &minus);
        });
        // f∘g - id_W = d k + k d.
        sys.equations_eq_identity(b0, b0, |e, i, j| {
            e.left(&self.f0, g0, i, j, &one);
            e.left(dw1, k0, i, j, &minus);
            e.right(k1, dw0, i, j, &minus);
        });
        sys.equations_eq_identity(b1, b1, |e, i, j| {
            e.left(&self.f1, g1, i, j, &one);
            e.left(dw0, k1, i, j, &minus);
            e.right(k0, dw1, i, j, &minus);
        });
        // g∘f - id_V = d h + h d.
        sys.equations_eq_identity(a0, a0, |e, i, j| {
            e.right(g0, &self.f0, i, j, &one);
            e.left(dv1, h0, i, j, &minus);
            e.right(h1, dv0, i, j, &minus);
        });
        sys.equations_eq_identity(a1, a1, |e, i, j| {
            e.right(g1, &self.f1, i, j, &one);
            e.left(dv0, h1, i, j, &minus);
            e.right(h0, dv1, i, j, &minus);
        });
        let x = sys.solve()?;
        let read = |b: Block| {
            let mut m = FieldMatrix::zeros(field, b.rows, b.cols);
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(i, j, x[b.var(i, j)].clone());
                }
            }
            m
        };
        let inverse = DsvMap::new(w.clone(), v.clone(), read(g0), read(g1)).ok()?;
        Some(HomotopyEquivalence {
            inverse,
            on_target: ChainHomotopy { k0: read(k0), k1: read(k1) },
            on_source: ChainHomotopy { k0: read(h0), k1: read(h1) },
        })
    }
}

/// Rank of the induced map on `ker(d_out) / im(d_in)` into
/// `ker(d'_out) / im(d'_in)`: `rank [f Z | B'] - rank B'`.
fn induced_rank(f: &FieldMatrix, d_out: &FieldMatrix, d_in_target: &FieldMatrix) -> usize {
    let z = d_out.nullspace();
    let image = f.mul(&z).expect("shapes checked at construction");
    let joined = image.hstack(d_in_target);
    joined.rank() - d_in_target.rank()
}

/// Koszul-signed braiding `V ⊗ W -> W ⊗ V`.
pub fn swap_map(v: &Dsv, w: &Dsv) -> Result<DsvMap> {
    let source = v.tensor(w)?;
    let target = w.tensor(v)?;
    let f = v.field();
    let from = TensorLayout::new(v, w);
    let to = TensorLayout::new(w, v);
    let n = source.dim();
    let mut p = FieldMatrix::zeros(f, n, n);
    for i in 0..v.dim() {
        for j in 0..w.dim() {
            let sign = if v.parity(i) * w.parity(j) == 1 { -1 } else { 1 };
            p.set(to.position(j, i), from.position(i, j), f.from_i64(sign));
        }
    }
    let (s0, t0) = (source.dim0(), target.dim0());
    let f0 = p.block(0, 0, t0, s0);
    let f1 = p.block(t0, s0, target.dim1(), source.dim1());
    DsvMap::new(source, target, f0, f1)
}

#[derive(Clone, Copy)]
struct Block {
    offset: usize,
    rows: usize,
    cols: usize,
}

impl Block {
    fn var(&self, i: usize, j: usize) -> usize {
        self.offset + i * self.cols + j
    }
}

#[derive(Default)]
struct Vars {
    count: usize,
}

impl Vars {
    fn block(&mut self, rows: usize, cols: usize) -> Block {
        let b = Block { offset: self.count, rows, cols };
        self.count += rows * cols;
        b
    }
}

struct System {
    field: Field,
    vars: usize,
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
}

/// One scalar equation: entry `(i, j)` of a sum of products with one
/// unknown factor each.
struct Equation<'a> {
    field: Field,
    coeffs: &'a mut Vec<BigRational>,
}

impl Equation<'_> {
    fn bump(&mut self, var: usize, c: BigRational) {
        let v = self.field.add(&self.coeffs[var], &c);
        self.coeffs[var] = v;
    }

    /// Adds `s * (A X)_{ij}` for known `A` and unknown `X`.
    fn left(&mut self, a: &FieldMatrix, x: Block, i: usize, j: usize, s: &BigRational) {
        for k in 0..a.cols() {
            let c = a.get(i, k);
            if !c.is_zero() {
                self.bump(x.var(k, j), self.field.mul(s, c));
            }
        }
    }

    /// Adds `s * (X A)_{ij}` for unknown `X` and known `A`.
    fn right(&mut self, x: Block, a: &FieldMatrix, i: usize, j: usize, s: &BigRational) {
        for k in 0..a.rows() {
            let c = a.get(k, j);
            if !c.is_zero() {
                self.bump(x.var(i, k), self.field.mul(s, c));
            }
        }
    }
}

impl System {
    fn new(field: Field, vars: usize) -> Self {
        System { field, vars, rows: Vec::new(), rhs: Vec::new() }
    }

    fn push(&mut self, rows: usize, cols: usize, identity: bool, mut fill: impl FnMut(&mut Equation<'_>, usize, usize)) {
        for i in 0..rows {
            for j in 0..cols {
                let mut coeffs: Vec<BigRational> = (0..self.vars).map(|_| BigRational::zero()).collect();
                fill(&mut Equation { field: self.field, coeffs: &mut coeffs }, i, j);
                self.rows.push(coeffs);
                self.rhs.push(self.field.from_i64(i64::from(identity && i == j)));
            }
        }
    }

    fn equations(&mut self, rows: usize, cols: usize, fill: impl FnMut(&mut Equation<'_>, usize, usize)) {
        self.push(rows, cols, false, fill);
    }

    fn equations_eq_identity(&mut self, rows: usize, cols: usize, fill: impl FnMut(&mut Equation<'_>, usize, usize)) {
        self.push(rows, cols, true, fill);
    }

    fn matrix(&self) -> FieldMatrix {
        let entries = self.rows.iter().flatten().cloned().collect();
        FieldMatrix::from_entries(self.field, self.rows.len(), self.vars, entries).expect("rectangular system")
    }

    fn solve(self) -> Option<Vec<BigRational>> {
        self.matrix().solve(&self.rhs).ok()?
    }
}
