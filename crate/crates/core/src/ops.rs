//! Cochain-level cohomology operations.
//!
//! The cup product is Alexander–Whitney on ordered simplices. The cup-i
//! products use Steenrod's overlapping-interval formula: for cut points
//! `u_0 < ... < u_i` of an `n`-simplex, `a` is evaluated on the vertices of
//! the intervals `[0,u_0], [u_1,u_2], ...` and `b` on `[u_0,u_1], [u_2,u_3], ...`.
//! Squares are `Sq^k(x) = x ∪_{p-k} x` for `x` of degree `p`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::simplicial::{Cochain, CohomologyClass};
use crate::{Error, Result};

fn ensure_compatible(a: &Cochain, b: &Cochain) -> Result<()> {
    if a.modulus() != b.modulus() || !(alloc::sync::Arc::ptr_eq(a.complex(), b.complex()) || a.complex() == b.complex()) {
        return Err(Error::ContextMismatch);
    }
    Ok(())
}

fn ensure_mod2(a: &Cochain) -> Result<()> {
    if a.modulus() != 2 {
        return Err(Error::WrongModulus {
            expected: 2,
            found: a.modulus(),
        });
    }
    Ok(())
}

/// `(a ∪ b)(v_0..v_{p+q}) = a(v_0..v_p) b(v_p..v_{p+q})`.
pub fn cup(a: &Cochain, b: &Cochain) -> Result<Cochain> {
    ensure_compatible(a, b)?;
    let (p, q) = (a.degree(), b.degree());
    let x = a.complex();
    let values = x
        .simplices(p + q)
        .iter()
        .map(|s| {
            let front = a.value_at(&s[..=p]).expect("face of a simplex");
            if front.is_zero() {
                return BigInt::zero();
            }
            front * b.value_at(&s[p..]).expect("face of a simplex")
        })
        .collect();
    Cochain::new(x.clone(), p + q, a.modulus(), values)
}

pub fn cup_classes(a: &CohomologyClass, b: &CohomologyClass) -> Result<CohomologyClass> {
    Ok(CohomologyClass::new_unchecked(cup(a.cochain(), b.cochain())?))
}

/// Steenrod's `a ∪_i b` over `Z/2`, of degree `p + q - i`.
pub fn cup_i(i: usize, a: &Cochain, b: &Cochain) -> Result<Cochain> {
    ensure_compatible(a, b)?;
    ensure_mod2(a)?;
    let (p, q) = (a.degree(), b.degree());
    if i > p + q {
        return Err(Error::DegreeOutOfRange { degree: i, dim: p + q });
    }
    let n = p + q - i;
    let x = a.complex();
    if i > p.min(q) {
        return Ok(Cochain::zero(x.clone(), n, 2));
    }
    let mut cuts: Vec<usize> = Vec::with_capacity(i + 1);
    let values = x
        .simplices(n)
        .iter()
        .map(|s| {
            let mut acc = 0u32;
            cuts.clear();
            cuts.extend(0..=i);
            loop {
                if let Some((fa, fb)) = split_faces(s, &cuts, p, q) {
                    let va = a.value_at(&fa).expect("face of a simplex");
                    if !va.is_zero() && !b.value_at(&fb).expect("face of a simplex").is_zero() {
                        acc ^= 1;
                    }
                }
                if !next_combination(&mut cuts, n + 1) {
                    break;
                }
            }
            BigInt::from(acc)
        })
        .collect();
    Cochain::new(x.clone(), n, 2, values)
}

/// Vertices of `s` on the alternating intervals cut at `cuts`, if the two
/// faces have the requested dimensions.
fn split_faces(s: &[u32], cuts: &[usize], p: usize, q: usize) -> Option<(Vec<u32>, Vec<u32>)> {
    let last = s.len() - 1;
    let mut fa: Vec<u32> = Vec::with_capacity(p + 1);
    let mut fb: Vec<u32> = Vec::with_capacity(q + 1);
    let mut start = 0;
    for (k, &end) in cuts.iter().chain(core::iter::once(&last)).enumerate() {
        let target = if k % 2 == 0 { &mut fa } else { &mut fb };
        for &v in &s[start..=end] {
            if target.last() != Some(&v) {
                target.push(v);
            }
        }
        start = end;
    }
    (fa.len() == p + 1 && fb.len() == q + 1).then_some((fa, fb))
}

/// Advances an increasing sequence over `0..n`; false when exhausted.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut j = k;
    while j > 0 {
        j -= 1;
        if c[j] < n - k + j {
            c[j] += 1;
            for l in j + 1..k {
                c[l] = c[l - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `Sq^k` on a mod-2 class of degree `p`; zero for `k > p`.
pub fn sq(k: usize, x: &CohomologyClass) -> Result<CohomologyClass> {
    ensure_mod2(x.cochain())?;
    if !x.cochain().is_cocycle() {
        return Err(Error::NotACocycle);
    }
    let p = x.degree();
    if k > p {
        return Ok(CohomologyClass::zero(x.complex().clone(), p + k, 2));
    }
    Ok(CohomologyClass::new_unchecked(cup_i(p - k, x.cochain(), x.cochain())?))
}

/// Integral Bockstein of `0 -> Z -> Z -> Z/m -> 0`: lift to `[0, m)`,
/// apply the integral coboundary and divide by `m`.
pub fn bockstein(b: &CohomologyClass) -> Result<CohomologyClass> {
    let m = b.modulus();
    if m < 2 {
        return Err(Error::WrongModulus { expected: 2, found: m });
    }
    let lift = Cochain::new(b.complex().clone(), b.degree(), 0, b.cochain().values().to_vec())?;
    let mb = BigInt::from(m);
    let d = lift.coboundary();
    let mut values = Vec::with_capacity(d.values().len());
    for v in d.values() {
        let (quot, rem) = v.div_rem(&mb);
        if !rem.is_zero() {
            return Err(Error::NotACocycle);
        }
        values.push(quot);
    }
    let out = Cochain::new(b.complex().clone(), b.degree() + 1, 0, values)?;
    Ok(CohomologyClass::new_unchecked(out))
}

/// Entrywise reduction to `Z/n`; `n` must divide the source modulus
/// unless the source is integral.
pub fn reduce_mod(x: &Cochain, n: u64) -> Result<Cochain> {
    let m = x.modulus();
    let ok = match (m, n) {
        (_, 0) => m == 0,
        (0, _) => true,
        (m, n) => m % n == 0,
    };
    if !ok {
        return Err(Error::NonDividingModulus { divisor: n, modulus: m });
    }
    Cochain::new(x.complex().clone(), x.degree(), n, x.values().to_vec())
}

pub fn reduce_class(x: &CohomologyClass, n: u64) -> Result<CohomologyClass> {
    Ok(CohomologyClass::new_unchecked(reduce_mod(x.cochain(), n)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{cohomology, corpus, is_cohomologous};
    use alloc::vec;

    #[test]
    fn combinations_enumerate() {
        let mut c = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut c, 4) {
            count += 1;
        }
        assert_eq!(count, 6);
    }

    #[test]
    fn unit_is_identity_for_cup() {
        let t2 = corpus::torus();
        let h = cohomology(&t2, 1, 0).unwrap();
        let b = h.generators()[0].cochain();
        let one = Cochain::unit(t2.clone(), 0);
        assert_eq!(&cup(&one, b).unwrap(), b);
        assert_eq!(&cup(b, &one).unwrap(), b);
    }

    #[test]
    fn rp2_square_is_nonzero() {
        let rp2 = corpus::projective_plane();
        let w = cohomology(&rp2, 1, 2).unwrap().generators()[0].clone();
        let ww = cup(w.cochain(), w.cochain()).unwrap();
        let zero = Cochain::zero(rp2.clone(), 2, 2);
        assert!(!is_cohomologous(&ww, &zero).unwrap());
        let s1 = sq(1, &w).unwrap();
        assert_eq!(s1.cochain(), &ww);
        assert!(sq(2, &w).unwrap().cochain().is_zero());
        assert_eq!(sq(2, &w).unwrap().degree(), 3);
    }

    #[test]
    fn rp2_cup1_self_nonzero_cochain() {
        let rp2 = corpus::projective_plane();
        let w = cohomology(&rp2, 1, 2).unwrap().generators()[0].clone();
        let c = cup_i(1, w.cochain(), w.cochain()).unwrap();
        assert_eq!(c.degree(), 1);
        assert!(!c.is_zero());
        // Sq^0 = id
        assert!(is_cohomologous(&c, w.cochain()).unwrap());
    }

    #[test]
    fn cup_i_out_of_range() {
        let s1 = corpus::circle();
        let a = Cochain::indicator(s1.clone(), 1, 2, 0);
        assert!(cup_i(2, &a, &a).unwrap().is_zero());
        assert!(cup_i(3, &a, &a).is_err());
        let z = Cochain::indicator(s1, 1, 0, 0);
        assert!(matches!(cup_i(0, &z, &z), Err(Error::WrongModulus { .. })));
    }

    #[test]
    fn reduce_examples() {
        let s1 = corpus::circle();
        let even = Cochain::from_i64s(s1.clone(), 1, 0, &[2, -4, 6]).unwrap();
        assert!(reduce_mod(&even, 2).unwrap().is_zero());
        let z8 = Cochain::from_i64s(s1.clone(), 0, 8, &[5, 6, 7]).unwrap();
        let r = reduce_mod(&z8, 2).unwrap();
        assert_eq!(r, Cochain::from_i64s(s1.clone(), 0, 2, &[1, 0, 1]).unwrap());
        assert_eq!(reduce_mod(&Cochain::unit(s1.clone(), 0), 2).unwrap(), Cochain::unit(s1.clone(), 2));
        assert!(matches!(reduce_mod(&z8, 3), Err(Error::NonDividingModulus { .. })));
    }

    #[test]
    fn bockstein_of_liftable_class_vanishes() {
        let t2 = corpus::torus();
        let h = cohomology(&t2, 1, 2).unwrap();
        for g in h.generators() {
            let beta = bockstein(g).unwrap();
            assert!(is_cohomologous(beta.cochain(), &Cochain::zero(t2.clone(), 2, 0)).unwrap());
        }
        let zero = CohomologyClass::zero(t2.clone(), 1, 2);
        assert!(bockstein(&zero).unwrap().cochain().is_zero());
    }

    #[test]
    fn rp2_bockstein_reduces_to_sq1() {
        let rp2 = corpus::projective_plane();
        let w = cohomology(&rp2, 1, 2).unwrap().generators()[0].clone();
        let lhs = reduce_mod(bockstein(&w).unwrap().cochain(), 2).unwrap();
        assert!(is_cohomologous(&lhs, sq(1, &w).unwrap().cochain()).unwrap());
    }
}
