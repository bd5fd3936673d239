//! Twisted cohomology groups classifying graded Brauer-type twists.
//!
//! An element over `X` is a triple of cocycles `(a, b, c)`:
//!
//! | variant | `a`            | `b`            | `c`            |
//! |---------|----------------|----------------|----------------|
//! | `KU`    | `C⁰(X; Z/2)`   | `C¹(X; Z/2)`   | `C³(X; Z)`     |
//! | `KO`    | `C⁰(X; Z/8)`   | `C¹(X; Z/2)`   | `C²(X; Z/2)`   |
//!
//! with sums
//!
//! ```text
//! KU: (a, b, c) ⊞ (a', b', c') = (a + a', b + b', c + c' + β(b ∪ b'))
//! KO: (a, b, c) ⊞ (a', b', c') = (a + a', b + b', c + c' + b ∪ b')
//! ```
//!
//! computed at cochain level. Two elements are equal when their components
//! are cohomologous; no normal form is chosen.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::linalg::{cokernel, AbelianGroupPresentation, IntMatrix};
use crate::ops::{bockstein, cup, cup_i};
use crate::simplicial::{cohomology, is_cohomologous, Cochain, Cohomology, CohomologyClass, SimplicialComplex};
use crate::{Error, Result};

/// Default cap for [`element_order`].
pub const DEFAULT_ORDER_CAP: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    KU,
    KO,
}

impl Variant {
    pub fn a_modulus(self) -> u64 {
        match self {
            Variant::KU => 2,
            Variant::KO => 8,
        }
    }

    /// Degree and modulus of the `c` component.
    pub fn c_slot(self) -> (usize, u64) {
        match self {
            Variant::KU => (3, 0),
            Variant::KO => (2, 2),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::KU => "ku",
            Variant::KO => "ko",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "ku" | "KU" => Ok(Variant::KU),
            "ko" | "KO" => Ok(Variant::KO),
            _ => Err(Error::Parse("variant must be ku or ko")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerElement {
    variant: Variant,
    a: Cochain,
    b: Cochain,
    c: Cochain,
}

fn expect_slot(x: &Cochain, degree: usize, modulus: u64) -> Result<()> {
    if x.degree() != degree {
        return Err(Error::DegreeOutOfRange {
            degree: x.degree(),
            dim: degree,
        });
    }
    if x.modulus() != modulus {
        return Err(Error::WrongModulus {
            expected: modulus,
            found: x.modulus(),
        });
    }
    if !x.is_cocycle() {
        return Err(Error::NotACocycle);
    }
    Ok(())
}

/// The twist `β(b ∪ b')` (KU) or `b ∪ b'` (KO) added to the `c` slot.
pub fn twist_term(variant: Variant, b: &Cochain, b2: &Cochain) -> Result<Cochain> {
    let product = cup(b, b2)?;
    match variant {
        Variant::KU => Ok(bockstein(&CohomologyClass::new(product)?)?.into_cochain()),
        Variant::KO => Ok(product),
    }
}

impl BrauerElement {
    pub fn new(variant: Variant, a: Cochain, b: Cochain, c: Cochain) -> Result<Self> {
        if !a.complex_eq(&b) || !a.complex_eq(&c) {
            return Err(Error::ContextMismatch);
        }
        expect_slot(&a, 0, variant.a_modulus())?;
        expect_slot(&b, 1, 2)?;
        let (deg, n) = variant.c_slot();
        expect_slot(&c, deg, n)?;
        Ok(BrauerElement { variant, a, b, c })
    }

    pub fn identity(variant: Variant, base: Arc<SimplicialComplex>) -> Self {
        let (deg, n) = variant.c_slot();
        BrauerElement {
            variant,
            a: Cochain::zero(base.clone(), 0, variant.a_modulus()),
            b: Cochain::zero(base.clone(), 1, 2),
            c: Cochain::zero(base, deg, n),
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn base(&self) -> &Arc<SimplicialComplex> {
        self.a.complex()
    }

    pub fn a(&self) -> &Cochain {
        &self.a
    }

    pub fn b(&self) -> &Cochain {
        &self.b
    }

    pub fn c(&self) -> &Cochain {
        &self.c
    }

    fn ensure_compatible(&self, other: &Self) -> Result<()> {
        if self.variant != other.variant || !self.a.complex_eq(&other.a) {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        let twist = twist_term(self.variant, &self.b, &other.b)?;
        Ok(BrauerElement {
            variant: self.variant,
            a: self.a.add(&other.a)?,
            b: self.b.add(&other.b)?,
            c: self.c.add(&other.c)?.add(&twist)?,
        })
    }

    /// KU: `(a, b, -c - β(b ∪ b))`; KO: `(-a, b, c + b ∪ b)`.
    pub fn negate(&self) -> Self {
        let twist = twist_term(self.variant, &self.b, &self.b).expect("b is a cocycle");
        let c = match self.variant {
            Variant::KU => self.c.neg().sub(&twist),
            Variant::KO => self.c.add(&twist),
        }
        .expect("same context");
        BrauerElement {
            variant: self.variant,
            a: self.a.neg(),
            b: self.b.clone(),
            c,
        }
    }

    /// `k ⊞ ... ⊞ self` by repeated addition.
    pub fn multiple(&self, k: u64) -> Result<Self> {
        let mut acc = Self::identity(self.variant, self.base().clone());
        for _ in 0..k {
            acc = acc.add(self)?;
        }
        Ok(acc)
    }

    /// Componentwise cohomology.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.ensure_compatible(other)?;
        Ok(is_cohomologous(&self.a, &other.a)?
            && is_cohomologous(&self.b, &other.b)?
            && is_cohomologous(&self.c, &other.c)?)
    }

    pub fn is_identity(&self) -> Result<bool> {
        self.equals(&Self::identity(self.variant, self.base().clone()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
    AboveCap,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => f.write_str("infinite"),
            Order::AboveCap => f.write_str("above cap"),
        }
    }
}

/// Least `k <= cap` with `k x ~ 0`. Elements whose `c` has a nonzero free
/// coordinate in `H³(X; Z)` are reported as infinite without searching.
pub fn element_order(x: &BrauerElement, cap: u64) -> Result<Order> {
    if x.variant == Variant::KU {
        let h = cohomology(x.base(), 3, 0)?;
        let coords = h.coordinates(&x.c)?;
        if coords.iter().zip(h.orders()).any(|(v, o)| o.is_zero() && !v.is_zero()) {
            return Ok(Order::Infinite);
        }
    }
    let mut acc = x.clone();
    for k in 1..=cap {
        if acc.is_identity()? {
            return Ok(Order::Finite(k));
        }
        acc = acc.add(x)?;
    }
    Ok(Order::AboveCap)
}

/// The three cohomology groups behind the elements over one base, with
/// their generators.
#[derive(Clone, Debug)]
pub struct BrauerGroup {
    variant: Variant,
    base: Arc<SimplicialComplex>,
    h_a: Cohomology,
    h_b: Cohomology,
    h_c: Cohomology,
}

impl BrauerGroup {
    pub fn new(base: &Arc<SimplicialComplex>, variant: Variant) -> Result<Self> {
        let (deg, n) = variant.c_slot();
        Ok(BrauerGroup {
            variant,
            base: base.clone(),
            h_a: cohomology(base, 0, variant.a_modulus())?,
            h_b: cohomology(base, 1, 2)?,
            h_c: cohomology(base, deg, n)?,
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn base(&self) -> &Arc<SimplicialComplex> {
        &self.base
    }

    /// The groups `H⁰`, `H¹` and the `c` group, in that order.
    pub fn components(&self) -> [&Cohomology; 3] {
        [&self.h_a, &self.h_b, &self.h_c]
    }

    pub fn identity(&self) -> BrauerElement {
        BrauerElement::identity(self.variant, self.base.clone())
    }

    /// `(Σ a_i α_i, Σ b_i β_i, Σ c_i γ_i)` over the generators.
    pub fn element(&self, a: &[BigInt], b: &[BigInt], c: &[BigInt]) -> Result<BrauerElement> {
        BrauerElement::new(
            self.variant,
            self.h_a.combination(a)?,
            self.h_b.combination(b)?,
            self.h_c.combination(c)?,
        )
    }

    /// Relation columns over the generators `(a-gens, b-gens, c-gens)`:
    /// `n_g g - (c-part of n_g g)` for the `a`, `b` generators and the
    /// orders of the `c` generators.
    fn relations(&self, with_a: bool) -> Result<IntMatrix> {
        let na = if with_a { self.h_a.generators().len() } else { 0 };
        let nb = self.h_b.generators().len();
        let nc = self.h_c.generators().len();
        let rows = na + nb + nc;
        let mut columns: Vec<Vec<BigInt>> = Vec::new();
        let id = self.identity();
        let lifted: Vec<(BigInt, BrauerElement)> = (0..na)
            .map(|i| {
                let g = BrauerElement { a: self.h_a.generators()[i].cochain().clone(), ..id.clone() };
                (self.h_a.orders()[i].clone(), g)
            })
            .chain((0..nb).map(|i| {
                let g = BrauerElement { b: self.h_b.generators()[i].cochain().clone(), ..id.clone() };
                (self.h_b.orders()[i].clone(), g)
            }))
            .collect();
        for (k, (order, g)) in lifted.iter().enumerate() {
            let n = order.to_u64().ok_or(Error::InvalidGroup("generator order too large"))?;
            let multiple = g.multiple(n)?;
            debug_assert!(multiple.a.is_zero() && multiple.b.is_zero());
            let coords = self.h_c.coordinates(&multiple.c)?;
            let mut col: Vec<BigInt> = (0..rows).map(|_| BigInt::zero()).collect();
            col[k] = order.clone();
            for (j, v) in coords.into_iter().enumerate() {
                col[na + nb + j] = -v;
            }
            columns.push(col);
        }
        for (j, order) in self.h_c.orders().iter().enumerate() {
            if !order.is_zero() {
                let mut col: Vec<BigInt> = (0..rows).map(|_| BigInt::zero()).collect();
                col[na + nb + j] = order.clone();
                columns.push(col);
            }
        }
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, col) in columns.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(m)
    }

    /// The whole group, from generators and relations.
    pub fn abstract_group(&self) -> Result<AbelianGroupPresentation> {
        Ok(cokernel(&self.relations(true)?, 0))
    }

    /// The subgroup of elements with `a ~ 0`.
    pub fn twist_subgroup(&self) -> Result<AbelianGroupPresentation> {
        Ok(cokernel(&self.relations(false)?, 0))
    }

    /// Coordinates of `x` in the `a`, `b` groups; the remaining `c` part
    /// is not canonical and is omitted.
    pub fn quotient_coordinates(&self, x: &BrauerElement) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
        Ok((self.h_a.coordinates(&x.a)?, self.h_b.coordinates(&x.b)?))
    }
}

pub fn abstract_group(x: &Arc<SimplicialComplex>, variant: Variant) -> Result<AbelianGroupPresentation> {
    BrauerGroup::new(x, variant)?.abstract_group()
}

pub fn twist_subgroup(x: &Arc<SimplicialComplex>, variant: Variant) -> Result<AbelianGroupPresentation> {
    BrauerGroup::new(x, variant)?.twist_subgroup()
}

/// A cochain `z` with `c(x ⊞ y) - c(y ⊞ x) = δz`; the other components of
/// the two sums agree exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutativityCertificate {
    pub witness: Cochain,
}

impl CommutativityCertificate {
    pub fn verify(&self, x: &BrauerElement, y: &BrauerElement) -> Result<bool> {
        let (xy, yx) = (x.add(y)?, y.add(x)?);
        Ok(xy.a == yx.a && xy.b == yx.b && xy.c.sub(&yx.c)? == self.witness.coboundary())
    }
}

/// KO: `z = b ∪₁ b'`. KU: `z = (b ∪ b' - b' ∪ b - δ(b ∪₁ b')) / 2` with
/// all three terms lifted to integers in `[0, 2)`.
pub fn commutativity_certificate(x: &BrauerElement, y: &BrauerElement) -> Result<CommutativityCertificate> {
    x.ensure_compatible(y)?;
    let (deg, n) = x.variant.c_slot();
    if x.b == y.b {
        return Ok(CommutativityCertificate {
            witness: Cochain::zero(x.base().clone(), deg - 1, n),
        });
    }
    let one = cup_i(1, &x.b, &y.b)?;
    let witness = match x.variant {
        Variant::KO => one,
        Variant::KU => {
            let lift = |c: &Cochain| Cochain::new(c.complex().clone(), c.degree(), 0, c.values().to_vec());
            let l = lift(&cup(&x.b, &y.b)?)?
                .sub(&lift(&cup(&y.b, &x.b)?)?)?
                .sub(&lift(&one)?.coboundary())?;
            let two = BigInt::from(2);
            let halves = l
                .values()
                .iter()
                .map(|v| {
                    let (q, r) = v.div_rem(&two);
                    debug_assert!(r.is_zero());
                    q
                })
                .collect();
            Cochain::new(x.base().clone(), 2, 0, halves)?
        }
    };
    Ok(CommutativityCertificate { witness })
}
