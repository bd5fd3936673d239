//! Stable 2-types (equivalently Picard groupoids) as triples `(π₀, π₁, q)`
//! with `q: π₀ ⊗ Z/2 → π₁` the symmetry map on objects.
//!
//! Groups are kept as explicit lists of cyclic generators (order `0` for a
//! copy of `Z`) so that `q` can be written on generators. Only the first
//! k-invariant is data here; the second k-invariants of the Brauer-type
//! spectra live in the group laws of [`crate::brauer`].

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::linalg::AbelianGroupPresentation;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Stable2TypeData {
    pi0: Vec<u64>,
    pi1: Vec<u64>,
    /// `q[j]` is the image of the `j`-th generator of `π₀ ⊗ Z/2`, in the
    /// coordinates of `π₁`.
    q: Vec<Vec<u64>>,
}

/// `G ⊗ Z/2`.
pub fn tensor_mod2(g: &AbelianGroupPresentation) -> AbelianGroupPresentation {
    AbelianGroupPresentation::from_orders(&vec![2; g.mod2_rank()])
}

/// `|Hom(π₀ ⊗ Z/2, π₁)| = |π₁[2]|^rank`, as a power of two exponent.
pub fn hom_count_log2(pi0: &AbelianGroupPresentation, pi1: &AbelianGroupPresentation) -> usize {
    let even = pi1.invariant_factors().iter().filter(|d| num_integer::Integer::is_even(*d)).count();
    pi0.mod2_rank() * even
}

/// Every homomorphism `π₀ ⊗ Z/2 → π₁`, in a fixed order starting with zero.
pub fn enumerate_symmetric_structures(
    pi0: &AbelianGroupPresentation,
    pi1: &AbelianGroupPresentation,
    cap: u64,
) -> Result<Vec<Stable2TypeData>> {
    let bits = hom_count_log2(pi0, pi1);
    let size = if bits >= 64 { u64::MAX } else { 1u64 << bits };
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    let zero = Stable2TypeData::trivial(pi0, pi1)?;
    let slots: Vec<usize> = two_torsion_basis(&zero.pi1);
    let m = zero.q.len();
    let mut out = Vec::with_capacity(size as usize);
    for mask in 0..size {
        let mut d = zero.clone();
        for j in 0..m {
            for (k, &i) in slots.iter().enumerate() {
                if mask >> (j * slots.len() + k) & 1 == 1 {
                    d.q[j][i] = d.pi1[i] / 2;
                }
            }
        }
        out.push(d);
    }
    Ok(out)
}

fn small_orders(g: &AbelianGroupPresentation) -> Result<Vec<u64>> {
    g.generator_orders()
        .iter()
        .map(|d| d.to_u64().ok_or(Error::InvalidGroup("group too large")))
        .collect()
}

fn mod2_basis(orders: &[u64]) -> Vec<usize> {
    (0..orders.len()).filter(|&i| orders[i] % 2 == 0).collect()
}

fn two_torsion_basis(orders: &[u64]) -> Vec<usize> {
    (0..orders.len()).filter(|&i| orders[i] != 0 && orders[i] % 2 == 0).collect()
}

fn reduce(x: i64, n: u64) -> u64 {
    if n == 0 {
        x as u64
    } else {
        x.rem_euclid(n as i64) as u64
    }
}

type F2Matrix = Vec<Vec<u8>>;

fn f2_mul(a: &F2Matrix, b: &F2Matrix, inner: usize, cols: usize) -> F2Matrix {
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).fold(0, |acc, k| acc ^ (row[k] & b[k][j]))).collect())
        .collect()
}

/// Matrix of `φ ⊗ Z/2` for `φ` given by the images (columns) of generators.
fn on_mod2(phi: &[Vec<i64>], src: &[u64], tgt: &[u64]) -> F2Matrix {
    let (s, t) = (mod2_basis(src), mod2_basis(tgt));
    t.iter().map(|&i| s.iter().map(|&j| phi[j][i].rem_euclid(2) as u8).collect()).collect()
}

/// Matrix of `φ` restricted to 2-torsion, on the basis `(n_i / 2) e_i`.
fn on_two_torsion(phi: &[Vec<i64>], src: &[u64], tgt: &[u64]) -> F2Matrix {
    let (s, t) = (two_torsion_basis(src), two_torsion_basis(tgt));
    t.iter()
        .map(|&i| {
            s.iter()
                .map(|&j| {
                    let half = (src[j] / 2) as i64;
                    u8::from(reduce(half * phi[j][i], tgt[i]) != 0)
                })
                .collect()
        })
        .collect()
}

impl Stable2TypeData {
    /// `q` lists the images of the generators of `π₀ ⊗ Z/2` (the free and
    /// even-order generators of `π₀`, in order) as `π₁` coordinates.
    pub fn from_orders(pi0: Vec<u64>, pi1: Vec<u64>, q: Vec<Vec<u64>>) -> Result<Self> {
        if q.len() != mod2_basis(&pi0).len() {
            return Err(Error::InvalidGroup("q needs one value per generator of pi0 (x) Z/2"));
        }
        let mut q = q;
        for v in &mut q {
            if v.len() != pi1.len() {
                return Err(Error::InvalidGroup("q value has the wrong number of coordinates"));
            }
            for (x, &n) in v.iter_mut().zip(&pi1) {
                if n == 0 {
                    if *x != 0 {
                        return Err(Error::InvalidGroup("q value is not 2-torsion"));
                    }
                } else {
                    *x %= n;
                    if (2 * *x) % n != 0 {
                        return Err(Error::InvalidGroup("q value is not 2-torsion"));
                    }
                }
            }
        }
        Ok(Stable2TypeData { pi0, pi1, q })
    }

    /// Data on the canonical generators of the given presentations.
    pub fn new(pi0: &AbelianGroupPresentation, pi1: &AbelianGroupPresentation, q: Vec<Vec<u64>>) -> Result<Self> {
        Self::from_orders(small_orders(pi0)?, small_orders(pi1)?, q)
    }

    pub fn trivial(pi0: &AbelianGroupPresentation, pi1: &AbelianGroupPresentation) -> Result<Self> {
        let (a, b) = (small_orders(pi0)?, small_orders(pi1)?);
        let q = vec![vec![0; b.len()]; mod2_basis(&a).len()];
        Ok(Stable2TypeData { pi0: a, pi1: b, q })
    }

    pub fn pi0(&self) -> AbelianGroupPresentation {
        AbelianGroupPresentation::from_orders(&self.pi0)
    }

    pub fn pi1(&self) -> AbelianGroupPresentation {
        AbelianGroupPresentation::from_orders(&self.pi1)
    }

    pub fn pi0_orders(&self) -> &[u64] {
        &self.pi0
    }

    pub fn pi1_orders(&self) -> &[u64] {
        &self.pi1
    }

    pub fn q(&self) -> &[Vec<u64>] {
        &self.q
    }

    /// `q(x)` for `x` in the coordinates of `π₀ ⊗ Z/2`.
    pub fn evaluate(&self, x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.q.len() {
            return Err(Error::DimensionMismatch {
                expected: self.q.len(),
                found: x.len(),
            });
        }
        let mut out = vec![0u64; self.pi1.len()];
        for (xj, v) in x.iter().zip(&self.q) {
            if xj % 2 == 1 {
                for (o, (a, &n)) in out.iter_mut().zip(v.iter().zip(&self.pi1)) {
                    *o = if n == 0 { 0 } else { (*o + a) % n };
                }
            }
        }
        Ok(out)
    }

    /// True iff the symmetry of every object is the identity.
    pub fn is_trivial(&self) -> bool {
        self.q.iter().flatten().all(|&x| x == 0)
    }

    pub fn k_invariant_nontrivial(&self) -> bool {
        !self.is_trivial()
    }

    pub fn product(&self, other: &Self) -> Self {
        let pi0 = [self.pi0.as_slice(), &other.pi0].concat();
        let pi1 = [self.pi1.as_slice(), &other.pi1].concat();
        let pad = |v: &Vec<u64>, before: usize, after: usize| {
            let mut out = vec![0; before];
            out.extend_from_slice(v);
            out.resize(before + v.len() + after, 0);
            out
        };
        let mut q: Vec<Vec<u64>> = self.q.iter().map(|v| pad(v, 0, other.pi1.len())).collect();
        q.extend(other.q.iter().map(|v| pad(v, self.pi1.len(), 0)));
        Stable2TypeData { pi0, pi1, q }
    }

    fn q_f2(&self) -> F2Matrix {
        two_torsion_basis(&self.pi1)
            .iter()
            .map(|&i| self.q.iter().map(|v| u8::from(v[i] != 0)).collect())
            .collect()
    }

    /// Whether `(φ₀, φ₁)` from `self` to `target` satisfies
    /// `φ₁ ∘ q = q' ∘ (φ₀ ⊗ Z/2)`; maps are given by generator images.
    pub fn is_compatible(&self, target: &Self, phi0: &[Vec<i64>], phi1: &[Vec<i64>]) -> Result<bool> {
        check_hom(phi0, &self.pi0, &target.pi0)?;
        check_hom(phi1, &self.pi1, &target.pi1)?;
        let a = on_mod2(phi0, &self.pi0, &target.pi0);
        let b = on_two_torsion(phi1, &self.pi1, &target.pi1);
        let (m, r) = (mod2_basis(&self.pi0).len(), two_torsion_basis(&self.pi1).len());
        let (m2, r2) = (mod2_basis(&target.pi0).len(), two_torsion_basis(&target.pi1).len());
        let lhs = f2_mul(&b, &self.q_f2(), r, m);
        let rhs = f2_mul(&target.q_f2(), &a, m2, m);
        debug_assert_eq!(lhs.len(), r2);
        Ok(lhs == rhs)
    }
}

/// Checks that generator images respect orders.
fn check_hom(phi: &[Vec<i64>], src: &[u64], tgt: &[u64]) -> Result<()> {
    if phi.len() != src.len() || phi.iter().any(|c| c.len() != tgt.len()) {
        return Err(Error::InvalidMap("homomorphism has the wrong shape"));
    }
    for (col, &n) in phi.iter().zip(src) {
        for (&x, &m) in col.iter().zip(tgt) {
            let ok = match (n, m) {
                (_, 0) if n != 0 => x == 0,
                (_, 0) => true,
                (0, _) => true,
                _ => reduce(x * n as i64, m) == 0,
            };
            if !ok {
                return Err(Error::InvalidMap("generator image has the wrong order"));
            }
        }
    }
    Ok(())
}

/// Isomorphisms `src → tgt` as generator images, found by exhausting
/// homomorphisms with free entries in `{-1, 0, 1}`.
fn isomorphisms(src: &[u64], tgt: &[u64], cap: u64) -> Result<Vec<Vec<Vec<i64>>>> {
    let free = |o: &[u64]| o.iter().filter(|&&n| n == 0).count();
    if free(src) != free(tgt) {
        return Ok(Vec::new());
    }
    if free(src) > 2 {
        return Err(Error::InvalidGroup("isomorphism search needs free rank at most 2"));
    }
    let choices: Vec<Vec<Vec<i64>>> = src.iter().map(|&n| column_choices(n, tgt)).collect();
    let size = choices.iter().try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64));
    let torsion_size = tgt.iter().filter(|&&n| n != 0).try_fold(1u64, |acc, &n| acc.checked_mul(n));
    match (size, torsion_size) {
        (Some(s), Some(t)) if s <= cap && t <= cap => {}
        (s, _) => {
            return Err(Error::CapExceeded {
                size: s.unwrap_or(u64::MAX),
                cap,
            })
        }
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; src.len()];
    loop {
        let phi: Vec<Vec<i64>> = idx.iter().zip(&choices).map(|(&k, c)| c[k].clone()).collect();
        if is_bijective(&phi, src, tgt) {
            out.push(phi);
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(out);
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// All admissible images of a generator of order `n` in a group with
/// generator orders `tgt`.
fn column_choices(n: u64, tgt: &[u64]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for &m in tgt {
        let options: Vec<i64> = match (n, m) {
            (0, 0) => vec![-1, 0, 1],
            (_, 0) => vec![0],
            (0, _) => (0..m as i64).collect(),
            _ => (0..m as i64).filter(|&x| reduce(x * n as i64, m) == 0).collect(),
        };
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |&x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Block-triangular test: unimodular free block and injective torsion block.
fn is_bijective(phi: &[Vec<i64>], src: &[u64], tgt: &[u64]) -> bool {
    let fs: Vec<usize> = (0..src.len()).filter(|&j| src[j] == 0).collect();
    let ft: Vec<usize> = (0..tgt.len()).filter(|&i| tgt[i] == 0).collect();
    let det = match fs.len() {
        0 => 1,
        1 => phi[fs[0]][ft[0]],
        _ => phi[fs[0]][ft[0]] * phi[fs[1]][ft[1]] - phi[fs[1]][ft[0]] * phi[fs[0]][ft[1]],
    };
    if det.abs() != 1 {
        return false;
    }
    let ts: Vec<usize> = (0..src.len()).filter(|&j| src[j] != 0).collect();
    let tt: Vec<usize> = (0..tgt.len()).filter(|&i| tgt[i] != 0).collect();
    let src_size: u64 = ts.iter().map(|&j| src[j]).product();
    let tgt_size: u64 = tt.iter().map(|&i| tgt[i]).product();
    if src_size != tgt_size {
        return false;
    }
    let mut x = vec![0u64; ts.len()];
    for _ in 1..src_size {
        for (k, &j) in ts.iter().enumerate() {
            x[k] += 1;
            if x[k] < src[j] {
                break;
            }
            x[k] = 0;
        }
        let zero = tt.iter().all(|&i| {
            let s: i64 = ts.iter().zip(&x).map(|(&j, &xk)| phi[j][i] * xk as i64).sum();
            reduce(s, tgt[i]) == 0
        });
        if zero {
            return false;
        }
    }
    true
}

/// Whether `d1` and `d2` are equivalent: some isomorphisms `φ₀, φ₁` satisfy
/// `φ₁ ∘ q₁ = q₂ ∘ (φ₀ ⊗ Z/2)`.
pub fn equivalent(d1: &Stable2TypeData, d2: &Stable2TypeData, cap: u64) -> Result<bool> {
    if d1.pi0() != d2.pi0() || d1.pi1() != d2.pi1() {
        return Ok(false);
    }
    let a_set: BTreeSet<F2Matrix> = isomorphisms(&d1.pi0, &d2.pi0, cap)?
        .iter()
        .map(|phi| on_mod2(phi, &d1.pi0, &d2.pi0))
        .collect();
    let b_set: BTreeSet<F2Matrix> = isomorphisms(&d1.pi1, &d2.pi1, cap)?
        .iter()
        .map(|phi| on_two_torsion(phi, &d1.pi1, &d2.pi1))
        .collect();
    let (q1, q2) = (d1.q_f2(), d2.q_f2());
    let m = d1.q.len();
    let r = two_torsion_basis(&d1.pi1).len();
    for b in &b_set {
        let lhs = f2_mul(b, &q1, r, m);
        if a_set.iter().any(|a| f2_mul(&q2, a, m, m) == lhs) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Names accepted by [`catalog_entry`] in addition to the catalog's own.
pub const ALIASES: [(&str, &str); 2] = [("cAlg_C", "KU"), ("cAlg_R", "KO")];

/// Picard groupoids of the sphere and of the `KU`, `KO` Brauer spectra.
pub fn catalog() -> Vec<(&'static str, Stable2TypeData)> {
    let entry = |pi0: u64| Stable2TypeData {
        pi0: vec![pi0],
        pi1: vec![2],
        q: vec![vec![1]],
    };
    vec![("sphere", entry(0)), ("KU", entry(2)), ("KO", entry(8))]
}

pub fn catalog_entry(name: &str) -> Option<Stable2TypeData> {
    let name = ALIASES.iter().find(|(a, _)| *a == name).map_or(name, |(_, n)| n);
    catalog().into_iter().find(|(n, _)| *n == name).map(|(_, d)| d)
}
