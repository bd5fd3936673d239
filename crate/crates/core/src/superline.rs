//! Superline bundles over a finite complex, modeled by their parity per
//! component and their characteristic class: `w₁ ∈ H¹(X; Z/2)` for real
//! lines, `c₁ ∈ H²(X; Z)` for complex ones.
//!
//! The automorphism group `F^×` of a line is truncated to its sign
//! subgroup `{±1}`, which carries the symmetry.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;

use crate::linalg::AbelianGroupPresentation;
use crate::simplicial::{cohomology, is_cohomologous, CohomologyClass, SimplicialComplex};
use crate::stable2type::Stable2TypeData;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Real,
    Complex,
}

impl Flavor {
    /// Degree and coefficient modulus of the characteristic class.
    pub fn class_degree(self) -> (usize, u64) {
        match self {
            Flavor::Real => (1, 2),
            Flavor::Complex => (2, 0),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Real => "real",
            Flavor::Complex => "complex",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Flavor> {
        match s {
            "real" | "R" => Ok(Flavor::Real),
            "complex" | "C" => Ok(Flavor::Complex),
            _ => Err(Error::Parse("flavor must be real or complex")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuperLine {
    flavor: Flavor,
    parity: Vec<bool>,
    line_class: CohomologyClass,
}

impl SuperLine {
    /// `parity[i]` is the parity on the `i`-th connected component.
    pub fn new(flavor: Flavor, parity: Vec<bool>, line_class: CohomologyClass) -> Result<Self> {
        let base = line_class.complex();
        if parity.len() != base.component_count() {
            return Err(Error::DimensionMismatch {
                expected: base.component_count(),
                found: parity.len(),
            });
        }
        let (deg, n) = flavor.class_degree();
        if line_class.degree() != deg {
            return Err(Error::DegreeOutOfRange {
                degree: line_class.degree(),
                dim: deg,
            });
        }
        if line_class.modulus() != n {
            return Err(Error::WrongModulus {
                expected: n,
                found: line_class.modulus(),
            });
        }
        Ok(SuperLine { flavor, parity, line_class })
    }

    pub fn trivial(flavor: Flavor, base: Arc<SimplicialComplex>) -> Self {
        let (deg, n) = flavor.class_degree();
        let parity = alloc::vec![false; base.component_count()];
        SuperLine {
            flavor,
            parity,
            line_class: CohomologyClass::zero(base, deg, n),
        }
    }

    /// The trivial line placed in odd degree on every component.
    pub fn odd(flavor: Flavor, base: Arc<SimplicialComplex>) -> Self {
        let mut l = Self::trivial(flavor, base);
        l.parity.iter_mut().for_each(|p| *p = true);
        l
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn base(&self) -> &Arc<SimplicialComplex> {
        self.line_class.complex()
    }

    pub fn parity(&self) -> &[bool] {
        &self.parity
    }

    pub fn line_class(&self) -> &CohomologyClass {
        &self.line_class
    }

    fn ensure_compatible(&self, other: &SuperLine) -> Result<()> {
        if self.flavor != other.flavor || !self.line_class.cochain().same_context(other.line_class.cochain()) {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// Parities add mod 2 and characteristic classes add.
    pub fn tensor(&self, other: &SuperLine) -> Result<SuperLine> {
        self.ensure_compatible(other)?;
        Ok(SuperLine {
            flavor: self.flavor,
            parity: self.parity.iter().zip(&other.parity).map(|(a, b)| a ^ b).collect(),
            line_class: self.line_class.add(&other.line_class)?,
        })
    }

    /// The dual line.
    pub fn inverse(&self) -> SuperLine {
        let c = self.line_class.cochain().neg();
        SuperLine {
            flavor: self.flavor,
            parity: self.parity.clone(),
            line_class: CohomologyClass::new(c).expect("negation preserves cocycles"),
        }
    }

    /// Whether the two lines are isomorphic.
    pub fn is_isomorphic(&self, other: &SuperLine) -> Result<bool> {
        self.ensure_compatible(other)?;
        Ok(self.parity == other.parity && is_cohomologous(self.line_class.cochain(), other.line_class.cochain())?)
    }

    /// The symmetry `L ⊗ L' → L' ⊗ L` on `component` is `(-1)^{n m}`.
    pub fn symmetry_sign(&self, other: &SuperLine, component: usize) -> Result<i8> {
        self.ensure_compatible(other)?;
        match (self.parity.get(component), other.parity.get(component)) {
            (Some(&n), Some(&m)) => Ok(if n && m { -1 } else { 1 }),
            _ => Err(Error::UnknownComponent(component)),
        }
    }
}

/// Iso classes of superlines: `H⁰(X; Z/2) ⊕ H¹(X; Z/2)` (real) or
/// `H⁰(X; Z/2) ⊕ H²(X; Z)` (complex).
pub fn iso_class_group(x: &Arc<SimplicialComplex>, flavor: Flavor) -> Result<AbelianGroupPresentation> {
    let (deg, n) = flavor.class_degree();
    let h0 = cohomology(x, 0, 2)?;
    let h = cohomology(x, deg, n)?;
    Ok(h0.presentation().direct_sum(h.presentation()))
}

/// The Picard groupoid of superlines over a point: `π₀ = Z/2` (parity),
/// `π₁ = {±1}`, and the odd line has symmetry `-1`.
pub fn classification_data(_flavor: Flavor) -> Stable2TypeData {
    // Both flavors agree over a point.
    let z2 = AbelianGroupPresentation::cyclic(2);
    Stable2TypeData::new(&z2, &z2, alloc::vec![alloc::vec![1]]).expect("valid constant data")
}

/// Parity cochain helper: the degree-0 mod-2 class of a parity assignment.
pub fn parity_class(base: &Arc<SimplicialComplex>, parity: &[bool]) -> Result<CohomologyClass> {
    let labels = base.component_labels();
    let values = labels
        .iter()
        .map(|&c| parity.get(c).map(|&p| BigInt::from(u8::from(p))).ok_or(Error::UnknownComponent(c)))
        .collect::<Result<Vec<_>>>()?;
    CohomologyClass::new(crate::simplicial::Cochain::new(base.clone(), 0, 2, values)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::corpus;

    fn rp2_line() -> SuperLine {
        let x = corpus::projective_plane();
        let h = cohomology(&x, 1, 2).unwrap();
        SuperLine::new(Flavor::Real, alloc::vec![true], h.generators()[0].clone()).unwrap()
    }

    #[test]
    fn tensor_with_trivial() {
        let l = rp2_line();
        let t = SuperLine::trivial(Flavor::Real, l.base().clone());
        assert!(t.tensor(&l).unwrap().is_isomorphic(&l).unwrap());
    }

    #[test]
    fn odd_squared_on_rp2() {
        let l = rp2_line();
        let sq = l.tensor(&l).unwrap();
        assert_eq!(sq.parity(), &[false]);
        assert!(sq.is_isomorphic(&SuperLine::trivial(Flavor::Real, l.base().clone())).unwrap());
    }

    #[test]
    fn signs() {
        let x = corpus::point();
        let even = SuperLine::trivial(Flavor::Real, x.clone());
        let odd = SuperLine::odd(Flavor::Real, x);
        assert_eq!(even.symmetry_sign(&even, 0).unwrap(), 1);
        assert_eq!(odd.symmetry_sign(&odd, 0).unwrap(), -1);
        assert_eq!(odd.symmetry_sign(&even, 0).unwrap(), 1);
        assert_eq!(odd.symmetry_sign(&odd, 1), Err(Error::UnknownComponent(1)));
    }

    #[test]
    fn iso_groups() {
        let pt = corpus::point();
        let s1 = corpus::circle();
        let z2 = AbelianGroupPresentation::cyclic(2);
        assert_eq!(iso_class_group(&pt, Flavor::Real).unwrap(), z2);
        assert_eq!(iso_class_group(&pt, Flavor::Complex).unwrap(), z2);
        assert_eq!(iso_class_group(&s1, Flavor::Real).unwrap(), AbelianGroupPresentation::from_orders(&[2, 2]));
    }

    #[test]
    fn classification() {
        for flavor in [Flavor::Real, Flavor::Complex] {
            let d = classification_data(flavor);
            assert!(d.k_invariant_nontrivial());
            assert_eq!(d.evaluate(&[0]).unwrap(), alloc::vec![0]);
            assert_eq!(d.evaluate(&[1]).unwrap(), alloc::vec![1]);
        }
    }

    #[test]
    fn wrong_flavor_class_rejected() {
        let l = rp2_line();
        assert!(SuperLine::new(Flavor::Complex, alloc::vec![false], l.line_class().clone()).is_err());
        assert!(SuperLine::new(Flavor::Real, alloc::vec![], l.line_class().clone()).is_err());
    }
}
