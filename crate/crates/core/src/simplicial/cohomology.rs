use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::cochain::same_complex;
use super::{Cochain, CohomologyClass, SimplicialComplex};
use crate::linalg::{
    is_prime, reduce, smith_normal_form, solve_mod, AbelianGroupPresentation, Echelon, FpVec, IntMatrix,
};
use crate::{Error, Result};

/// Matrix of `delta_q: C^q -> C^{q+1}` with entries reduced mod `n`.
pub fn coboundary_matrix(x: &SimplicialComplex, q: usize, n: u64) -> Result<IntMatrix> {
    if q > x.dim() {
        return Err(Error::DegreeOutOfRange { degree: q, dim: x.dim() });
    }
    Ok(coboundary_matrix_unchecked(x, q, n))
}

fn coboundary_matrix_unchecked(x: &SimplicialComplex, q: usize, n: u64) -> IntMatrix {
    let mut m = IntMatrix::zeros(x.count(q + 1), x.count(q));
    for t in 0..x.count(q + 1) {
        for (j, &f) in x.faces(q + 1, t).iter().enumerate() {
            let s = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            m[(t, f)] = reduce(&s, n);
        }
    }
    m
}

/// Columns `delta(e_i)` of `delta_q` as vectors over `F_p`.
fn coboundary_columns(x: &SimplicialComplex, q: usize, p: u32) -> Vec<FpVec> {
    let width = x.count(q + 1);
    let mut cols: Vec<FpVec> = (0..x.count(q)).map(|_| FpVec::zeros(p, width)).collect();
    for t in 0..width {
        for (j, &f) in x.faces(q + 1, t).iter().enumerate() {
            let s = if j % 2 == 0 { 1 } else { p - 1 };
            cols[f].set(t, s);
        }
    }
    cols
}

fn prime_modulus(n: u64) -> Option<u32> {
    if is_prime(n) {
        u32::try_from(n).ok()
    } else {
        None
    }
}

#[derive(Clone, Debug)]
enum Coordinates {
    Field {
        p: u32,
        // spans image + chosen kernel vectors; tags index kernel vectors
        echelon: Echelon,
        // generator number of each kernel vector that became one
        generator_of: Vec<Option<usize>>,
    },
    Integral {
        v_inv: IntMatrix,
        rank: usize,
        // (row j < rank, n / gcd(d_j, n)) for the Z/gcd summands (n > 0 only)
        split: Vec<(usize, BigInt)>,
        u2: IntMatrix,
        // rows of u2 that give generator coordinates
        quotient_rows: Vec<usize>,
    },
}

/// `H^q(X; Z/n)` with cyclic generators and a coordinate map.
#[derive(Clone, Debug)]
pub struct Cohomology {
    complex: Arc<SimplicialComplex>,
    degree: usize,
    modulus: u64,
    presentation: AbelianGroupPresentation,
    generators: Vec<CohomologyClass>,
    orders: Vec<BigInt>,
    coords: Coordinates,
}

impl Cohomology {
    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn presentation(&self) -> &AbelianGroupPresentation {
        &self.presentation
    }

    /// Cocycle representatives of a cyclic decomposition of the group.
    pub fn generators(&self) -> &[CohomologyClass] {
        &self.generators
    }

    /// Order of each generator (`0` for infinite order).
    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    fn check(&self, x: &Cochain) -> Result<()> {
        if x.degree() != self.degree || x.modulus() != self.modulus || !same_complex(x.complex(), &self.complex) {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// Coordinates of the class of `x` against [`Self::generators`], reduced
    /// modulo each generator's order.
    pub fn coordinates(&self, x: &Cochain) -> Result<Vec<BigInt>> {
        self.check(x)?;
        match &self.coords {
            Coordinates::Field { p, echelon, generator_of } => {
                let (residual, coeffs) = echelon.reduce(&x.to_fp(*p));
                if !residual.is_zero() {
                    return Err(Error::NotACocycle);
                }
                let mut out: Vec<BigInt> = self.generators.iter().map(|_| BigInt::zero()).collect();
                for (k, g) in generator_of.iter().enumerate() {
                    if let Some(g) = g {
                        out[*g] = BigInt::from(coeffs.get(k));
                    }
                }
                Ok(out)
            }
            Coordinates::Integral {
                v_inv,
                rank,
                split,
                u2,
                quotient_rows,
            } => {
                if !x.is_cocycle() {
                    return Err(Error::NotACocycle);
                }
                let (reduced, _) = self.complex.reduction().project(self.degree, x.values());
                let y = v_inv.mul_vec(&reduced)?;
                let mut out = Vec::with_capacity(self.generators.len());
                for (j, scale) in split {
                    out.push(reduce(&y[*j], self.modulus) / scale);
                }
                let w = u2.mul_vec(&y[*rank..])?;
                for &i in quotient_rows {
                    out.push(w[i].clone());
                }
                Ok(out
                    .into_iter()
                    .zip(&self.orders)
                    .map(|(c, o)| if o.is_zero() { c } else { c.mod_floor(o) })
                    .collect())
            }
        }
    }

    pub fn is_zero_class(&self, x: &Cochain) -> Result<bool> {
        Ok(self.coordinates(x)?.iter().all(Zero::is_zero))
    }

    /// The cocycle `sum_i c_i g_i`.
    pub fn combination(&self, coefficients: &[BigInt]) -> Result<Cochain> {
        if coefficients.len() != self.generators.len() {
            return Err(Error::DimensionMismatch {
                expected: self.generators.len(),
                found: coefficients.len(),
            });
        }
        let mut acc = Cochain::zero(self.complex.clone(), self.degree, self.modulus);
        for (c, g) in coefficients.iter().zip(&self.generators) {
            acc = acc.add(&g.cochain().scale(c))?;
        }
        Ok(acc)
    }
}

/// Cohomology `H^q(X; Z/n)` (`n == 0` for `Z`) with explicit representatives.
///
/// Prime moduli go through elimination over `F_p`; `Z` and composite
/// moduli through Smith normal forms of the coboundary matrices.
pub fn cohomology(x: &Arc<SimplicialComplex>, q: usize, n: u64) -> Result<Cohomology> {
    match prime_modulus(n) {
        Some(p) => Ok(field_cohomology(x, q, p)),
        None => Ok(integral_cohomology(x, q, n)),
    }
}

fn field_cohomology(x: &Arc<SimplicialComplex>, q: usize, p: u32) -> Cohomology {
    let m = x.count(q);
    let mut kernel_echelon = Echelon::new(p, x.count(q + 1), m);
    let mut kernel = Vec::new();
    for (j, col) in coboundary_columns(x, q, p).iter().enumerate() {
        if let Some(dep) = kernel_echelon.insert(col, FpVec::unit(p, m, j)) {
            kernel.push(dep);
        }
    }
    let mut echelon = Echelon::new(p, m, kernel.len());
    if q > 0 {
        for col in coboundary_columns(x, q - 1, p) {
            echelon.insert_untagged(&col);
        }
    }
    let mut generator_of = Vec::with_capacity(kernel.len());
    let mut generators = Vec::new();
    for (k, z) in kernel.iter().enumerate() {
        if echelon.insert(z, FpVec::unit(p, kernel.len(), k)).is_none() {
            generator_of.push(Some(generators.len()));
            let values = z.to_vec().into_iter().map(BigInt::from).collect();
            let c = Cochain::new(x.clone(), q, p as u64, values).expect("length matches");
            generators.push(CohomologyClass::new_unchecked(c));
        } else {
            generator_of.push(None);
        }
    }
    let orders: Vec<BigInt> = generators.iter().map(|_| BigInt::from(p)).collect();
    Cohomology {
        complex: x.clone(),
        degree: q,
        modulus: p as u64,
        presentation: AbelianGroupPresentation::from_big_orders(orders.iter().cloned()),
        generators,
        orders,
        coords: Coordinates::Field {
            p,
            echelon,
            generator_of,
        },
    }
}

/// Integral route: Smith normal forms on the reduced cochain complex, with
/// generators lifted back to the original cells.
fn integral_cohomology(x: &Arc<SimplicialComplex>, q: usize, n: u64) -> Cohomology {
    let red = x.reduction();
    let m = red.survivors(q).len();
    let b = red.differential(q);
    let snf_b = smith_normal_form(&b);
    let r = snf_b.rank();
    let a = if q == 0 { IntMatrix::zeros(m, 0) } else { red.differential(q - 1) };
    let a_kernel = snf_b.v_inv.mul(&a).expect("compatible").rows_from(r);
    let nb = BigInt::from(n);
    let mut orders = Vec::new();
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    let mut split = Vec::new();
    if n > 0 {
        for j in 0..r {
            let g = snf_b.d[(j, j)].gcd(&nb);
            if g > BigInt::one() {
                let scale = &nb / &g;
                gens.push(snf_b.v.column(j).iter().map(|e| e * &scale).collect());
                orders.push(g);
                split.push((j, scale));
            }
        }
    }
    let relations = if n == 0 {
        a_kernel
    } else {
        let mut ni = IntMatrix::identity(m - r);
        for i in 0..m - r {
            ni[(i, i)] = nb.clone();
        }
        a_kernel.hstack(&ni).expect("same rows")
    };
    let snf2 = smith_normal_form(&relations);
    let kernel_basis = snf_b.v.cols_from(r);
    let mut quotient_rows = Vec::new();
    for i in 0..relations.rows() {
        let d = if i < snf2.rank() { snf2.d[(i, i)].clone() } else { BigInt::zero() };
        if d.is_one() {
            continue;
        }
        let z = snf2.u_inv.column(i);
        gens.push(kernel_basis.mul_vec(&z).expect("compatible"));
        orders.push(d);
        quotient_rows.push(i);
    }
    let generators = gens
        .into_iter()
        .map(|v| {
            let full = red.lift(q, &v, x.count(q), &[]);
            CohomologyClass::new_unchecked(Cochain::new(x.clone(), q, n, full).expect("length matches"))
        })
        .collect();
    Cohomology {
        complex: x.clone(),
        degree: q,
        modulus: n,
        presentation: AbelianGroupPresentation::from_big_orders(orders.iter().cloned()),
        generators,
        orders,
        coords: Coordinates::Integral {
            v_inv: snf_b.v_inv,
            rank: r,
            split,
            u2: snf2.u,
            quotient_rows,
        },
    }
}

/// Finds `z` with `delta z = x` over the cochain's modulus, if one exists.
pub fn solve_coboundary(x: &Cochain) -> Result<Option<Cochain>> {
    let q = x.degree();
    let complex = x.complex().clone();
    if q == 0 {
        return Ok(if x.is_zero() { Some(Cochain::zero(complex, 0, x.modulus())) } else { None });
    }
    let m = complex.count(q - 1);
    let z = match prime_modulus(x.modulus()) {
        Some(p) => {
            let mut e = Echelon::new(p, complex.count(q), m);
            for (i, col) in coboundary_columns(&complex, q - 1, p).iter().enumerate() {
                e.insert(col, FpVec::unit(p, m, i));
            }
            let (residual, coeffs) = e.reduce(&x.to_fp(p));
            if !residual.is_zero() {
                return Ok(None);
            }
            coeffs.to_vec().into_iter().map(BigInt::from).collect()
        }
        None => {
            if !x.is_cocycle() {
                return Ok(None);
            }
            let red = complex.reduction();
            let (reduced, homotopy) = red.project(q, x.values());
            match solve_mod(&red.differential(q - 1), &reduced, x.modulus())? {
                Some(y) => red.lift(q - 1, &y, m, &homotopy),
                None => return Ok(None),
            }
        }
    };
    Ok(Some(Cochain::new(complex, q - 1, x.modulus(), z)?))
}

/// Whether two cocycles differ by a coboundary.
pub fn is_cohomologous(x: &Cochain, y: &Cochain) -> Result<bool> {
    x.ensure_same_context(y)?;
    if !x.is_cocycle() || !y.is_cocycle() {
        return Err(Error::NotACocycle);
    }
    Ok(solve_coboundary(&x.sub(y)?)?.is_some())
}
