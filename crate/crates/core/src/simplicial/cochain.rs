use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{SimplicialComplex, SimplicialMap};
use crate::linalg::{reduce, FpVec};
use crate::{Error, Result};

/// A `degree`-cochain with coefficients in `Z/modulus` (`0` for `Z`).
///
/// Values are indexed by the lexicographic order of `degree`-simplices and
/// kept reduced into `[0, modulus)` when the modulus is positive.
#[derive(Clone, Debug)]
pub struct Cochain {
    complex: Arc<SimplicialComplex>,
    degree: usize,
    modulus: u64,
    values: Vec<BigInt>,
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.same_context(other) && self.values == other.values
    }
}

impl Eq for Cochain {}

pub(crate) fn same_complex(a: &Arc<SimplicialComplex>, b: &Arc<SimplicialComplex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Cochain {
    pub fn new(
        complex: Arc<SimplicialComplex>,
        degree: usize,
        modulus: u64,
        values: Vec<BigInt>,
    ) -> Result<Self> {
        let expected = complex.count(degree);
        if values.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: values.len(),
            });
        }
        let values = values.iter().map(|v| reduce(v, modulus)).collect();
        Ok(Cochain {
            complex,
            degree,
            modulus,
            values,
        })
    }

    pub fn from_i64s(
        complex: Arc<SimplicialComplex>,
        degree: usize,
        modulus: u64,
        values: &[i64],
    ) -> Result<Self> {
        Self::new(complex, degree, modulus, values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero(complex: Arc<SimplicialComplex>, degree: usize, modulus: u64) -> Self {
        let values = (0..complex.count(degree)).map(|_| BigInt::zero()).collect();
        Cochain {
            complex,
            degree,
            modulus,
            values,
        }
    }

    /// The 0-cochain taking the value 1 on every vertex.
    pub fn unit(complex: Arc<SimplicialComplex>, modulus: u64) -> Self {
        let values = (0..complex.count(0)).map(|_| reduce(&BigInt::one(), modulus)).collect();
        Cochain {
            complex,
            degree: 0,
            modulus,
            values,
        }
    }

    /// Indicator cochain of a single simplex.
    pub fn indicator(complex: Arc<SimplicialComplex>, degree: usize, modulus: u64, index: usize) -> Self {
        let mut c = Self::zero(complex, degree, modulus);
        c.values[index] = reduce(&BigInt::one(), modulus);
        c
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn value_at(&self, simplex: &[u32]) -> Option<&BigInt> {
        self.complex.index_of(simplex).map(|i| &self.values[i])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Whether both cochains live on the same complex.
    pub fn complex_eq(&self, other: &Cochain) -> bool {
        same_complex(&self.complex, &other.complex)
    }

    pub fn same_context(&self, other: &Cochain) -> bool {
        self.degree == other.degree
            && self.modulus == other.modulus
            && same_complex(&self.complex, &other.complex)
    }

    pub(crate) fn ensure_same_context(&self, other: &Cochain) -> Result<()> {
        if self.same_context(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub(crate) fn with_values(&self, degree: usize, values: Vec<BigInt>) -> Cochain {
        debug_assert_eq!(values.len(), self.complex.count(degree));
        Cochain {
            complex: self.complex.clone(),
            degree,
            modulus: self.modulus,
            values: values.iter().map(|v| reduce(v, self.modulus)).collect(),
        }
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.ensure_same_context(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(self.with_values(self.degree, values))
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.ensure_same_context(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(self.with_values(self.degree, values))
    }

    pub fn neg(&self) -> Cochain {
        let values = self.values.iter().map(|a| -a).collect();
        self.with_values(self.degree, values)
    }

    pub fn scale(&self, k: &BigInt) -> Cochain {
        let values = self.values.iter().map(|a| a * k).collect();
        self.with_values(self.degree, values)
    }

    /// `(delta f)(s) = sum_j (-1)^j f(d_j s)`.
    pub fn coboundary(&self) -> Cochain {
        let q = self.degree + 1;
        let values = (0..self.complex.count(q))
            .map(|t| {
                let mut acc = BigInt::zero();
                for (j, &f) in self.complex.faces(q, t).iter().enumerate() {
                    if j % 2 == 0 {
                        acc += &self.values[f];
                    } else {
                        acc -= &self.values[f];
                    }
                }
                acc
            })
            .collect();
        self.with_values(q, values)
    }

    pub fn is_cocycle(&self) -> bool {
        self.coboundary().is_zero()
    }

    /// Pullback along a simplicial map into this cochain's complex.
    pub fn pullback(&self, f: &SimplicialMap) -> Result<Cochain> {
        if !same_complex(f.target(), &self.complex) {
            return Err(Error::ContextMismatch);
        }
        let src = f.source().clone();
        let values = (0..src.count(self.degree))
            .map(|i| {
                f.image(self.degree, i)
                    .map_or_else(BigInt::zero, |j| self.values[j].clone())
            })
            .collect();
        Cochain::new(src, self.degree, self.modulus, values)
    }

    pub(crate) fn to_fp(&self, p: u32) -> FpVec {
        let mut v = FpVec::zeros(p, self.values.len());
        let pb = BigInt::from(p);
        for (i, x) in self.values.iter().enumerate() {
            let r = reduce(x, p as u64) % &pb;
            let r: u32 = r.try_into().expect("reduced below p");
            if r != 0 {
                v.set(i, r);
            }
        }
        v
    }
}

/// A cochain certified to be a cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    cochain: Cochain,
}

impl CohomologyClass {
    pub fn new(cochain: Cochain) -> Result<Self> {
        if !cochain.is_cocycle() {
            return Err(Error::NotACocycle);
        }
        Ok(CohomologyClass { cochain })
    }

    pub(crate) fn new_unchecked(cochain: Cochain) -> Self {
        debug_assert!(cochain.is_cocycle());
        CohomologyClass { cochain }
    }

    pub fn zero(complex: Arc<SimplicialComplex>, degree: usize, modulus: u64) -> Self {
        CohomologyClass {
            cochain: Cochain::zero(complex, degree, modulus),
        }
    }

    pub fn cochain(&self) -> &Cochain {
        &self.cochain
    }

    pub fn into_cochain(self) -> Cochain {
        self.cochain
    }

    pub fn degree(&self) -> usize {
        self.cochain.degree
    }

    pub fn modulus(&self) -> u64 {
        self.cochain.modulus
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.cochain.complex
    }

    pub fn add(&self, other: &CohomologyClass) -> Result<CohomologyClass> {
        Ok(CohomologyClass::new_unchecked(self.cochain.add(&other.cochain)?))
    }

    pub fn pullback(&self, f: &SimplicialMap) -> Result<CohomologyClass> {
        Ok(CohomologyClass::new_unchecked(self.cochain.pullback(f)?))
    }
}

impl AsRef<Cochain> for CohomologyClass {
    fn as_ref(&self) -> &Cochain {
        &self.cochain
    }
}
