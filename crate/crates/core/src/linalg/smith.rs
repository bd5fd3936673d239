use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{gcd_big, reduce, AbelianGroupPresentation, IntMatrix};
use crate::{Error, Result};

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal, `d_i | d_{i+1}`.
///
/// The inverses of both transforms are carried along since cohomology
/// needs to move between the original and the diagonal coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    rank: usize,
}

impl SmithDecomposition {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The nonzero diagonal entries `d_1 | d_2 | ... | d_rank`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest nonzero |entry| in the lower-right block starting at `t`,
    /// ties broken by row-major position.
    fn pivot_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let e = &self.a[(i, j)];
                if e.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(b) => e.abs() < self.a[b].abs(),
                };
                if better {
                    best = Some((i, j));
                    if e.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    /// Smallest nonzero |entry| in column `t` below or row `t` right of the pivot.
    fn pivot_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let cells = (t + 1..self.a.rows())
            .map(|i| (i, t))
            .chain((t + 1..self.a.cols()).map(|j| (t, j)));
        for cell in cells {
            let e = &self.a[cell];
            if e.is_zero() {
                continue;
            }
            if best.is_none_or(|b| e.abs() < self.a[b].abs()) {
                best = Some(cell);
            }
        }
        best
    }

    fn move_to(&mut self, (i, j): (usize, usize), t: usize) {
        self.swap_rows(i, t);
        self.swap_cols(j, t);
    }

    fn run(&mut self) -> usize {
        let (m, n) = (self.a.rows(), self.a.cols());
        let mut t = 0;
        while t < m.min(n) {
            let Some(p) = self.pivot_in_block(t) else { break };
            self.move_to(p, t);
            loop {
                let pivot = self.a[(t, t)].clone();
                for i in t + 1..m {
                    if !self.a[(i, t)].is_zero() {
                        let q = &self.a[(i, t)] / &pivot;
                        self.add_row(i, t, &-q);
                    }
                }
                for j in t + 1..n {
                    if !self.a[(t, j)].is_zero() {
                        let q = &self.a[(t, j)] / &pivot;
                        self.add_col(j, t, &-q);
                    }
                }
                if let Some(cell) = self.pivot_in_cross(t) {
                    // a remainder survived and is smaller than the pivot
                    let (i, j) = cell;
                    if j == t {
                        self.swap_rows(i, t);
                    } else {
                        self.swap_cols(j, t);
                    }
                    continue;
                }
                let bad_row = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !self.a[(i, j)].is_multiple_of(&pivot))
                });
                match bad_row {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }
}

/// Smith normal form with deterministic pivoting: smallest nonzero
/// absolute value first, then lowest row-major index.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let mut r = Reducer {
        a: m.clone(),
        u: IntMatrix::identity(m.rows()),
        u_inv: IntMatrix::identity(m.rows()),
        v: IntMatrix::identity(m.cols()),
        v_inv: IntMatrix::identity(m.cols()),
    };
    let rank = r.run();
    SmithDecomposition {
        u: r.u,
        u_inv: r.u_inv,
        d: r.a,
        v: r.v,
        v_inv: r.v_inv,
        rank,
    }
}

/// Inverse of `a` modulo `n` for `gcd(a, n) = 1`.
pub(crate) fn inverse_mod(a: &BigInt, n: &BigInt) -> BigInt {
    let e = a.mod_floor(n).extended_gcd(n);
    e.x.mod_floor(n)
}

/// Finds `x` with `a x = b` over `Z` (`n == 0`) or `Z/n`, if one exists.
pub fn solve_mod(a: &IntMatrix, b: &[BigInt], n: u64) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let snf = smith_normal_form(a);
    Ok(solve_with(&snf, b, n))
}

/// Solves `a x = b` given a precomputed decomposition of `a`.
pub(crate) fn solve_with(snf: &SmithDecomposition, b: &[BigInt], n: u64) -> Option<Vec<BigInt>> {
    let c = snf.u.mul_vec(b).expect("rows checked by caller");
    let modulus = BigInt::from(n);
    let mut y: Vec<BigInt> = (0..snf.v.rows()).map(|_| BigInt::zero()).collect();
    for (i, ci) in c.iter().enumerate() {
        let d = if i < snf.rank { snf.d[(i, i)].clone() } else { BigInt::zero() };
        if n == 0 {
            if d.is_zero() {
                if !ci.is_zero() {
                    return None;
                }
            } else {
                let (q, r) = ci.div_rem(&d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
        } else {
            let ci = ci.mod_floor(&modulus);
            let g = gcd_big(&d, &modulus);
            if !ci.is_multiple_of(&g) {
                return None;
            }
            if i < y.len() && !d.is_zero() {
                let m = &modulus / &g;
                let dg = &d / &g;
                y[i] = if m.is_one() {
                    BigInt::zero()
                } else {
                    ((&ci / &g) * inverse_mod(&dg, &m)).mod_floor(&m)
                };
            }
        }
    }
    let x = snf.v.mul_vec(&y).expect("square transform");
    Some(x.iter().map(|e| reduce(e, n)).collect())
}

/// Presentation of `(Z/n)^rows / span(columns of a)`.
pub fn cokernel(a: &IntMatrix, n: u64) -> AbelianGroupPresentation {
    let rel = if n == 0 {
        a.clone()
    } else {
        let mut ni = IntMatrix::identity(a.rows());
        for i in 0..a.rows() {
            ni[(i, i)] = BigInt::from(n);
        }
        a.hstack(&ni).expect("same row count")
    };
    let snf = smith_normal_form(&rel);
    let factors = snf.diagonal().into_iter().filter(|d| !d.is_one()).collect();
    AbelianGroupPresentation::from_parts(rel.rows() - snf.rank(), factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(m.cols()));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(diag.iter().all(|d| d.is_positive()));
        s
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn zero_matrix() {
        let s = check(&IntMatrix::zeros(2, 2));
        assert_eq!(s.d, IntMatrix::zeros(2, 2));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn identity_matrix() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
    }

    #[test]
    fn diag_2_3() {
        let s = check(&IntMatrix::diagonal(&[2, 3]));
        assert_eq!(s.diagonal(), big(&[1, 6]));
    }

    #[test]
    fn empty_matrices() {
        let s = check(&IntMatrix::zeros(0, 3));
        assert_eq!(s.rank(), 0);
        let s = check(&IntMatrix::zeros(2, 0));
        assert_eq!(s.d.rows(), 2);
    }

    #[test]
    fn needs_divisibility_fix() {
        let m = IntMatrix::from_i64(3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16]).unwrap();
        let s = check(&m);
        assert_eq!(s.diagonal(), big(&[2, 6, 12]));
    }

    #[test]
    fn solve_examples() {
        let id = IntMatrix::identity(3);
        let b = big(&[4, -1, 7]);
        assert_eq!(solve_mod(&id, &b, 0).unwrap(), Some(b.clone()));
        let two = IntMatrix::from_i64(1, 1, &[2]).unwrap();
        assert_eq!(solve_mod(&two, &big(&[1]), 0).unwrap(), None);
        assert_eq!(solve_mod(&two, &big(&[1]), 3).unwrap(), Some(big(&[2])));
        assert!(solve_mod(&two, &big(&[1, 2]), 0).is_err());
    }

    #[test]
    fn solve_mod_composite() {
        // 2x = 2 mod 4 has solutions 1 and 3; 2x = 1 mod 4 has none
        let two = IntMatrix::from_i64(1, 1, &[2]).unwrap();
        let x = solve_mod(&two, &big(&[2]), 4).unwrap().unwrap();
        assert_eq!((&x[0] * BigInt::from(2)).mod_floor(&BigInt::from(4)), BigInt::from(2));
        assert_eq!(solve_mod(&two, &big(&[1]), 4).unwrap(), None);
    }

    #[test]
    fn cokernel_examples() {
        let two = IntMatrix::from_i64(1, 1, &[2]).unwrap();
        assert_eq!(cokernel(&two, 0), AbelianGroupPresentation::cyclic(2));
        assert_eq!(cokernel(&IntMatrix::zeros(1, 0), 0), AbelianGroupPresentation::free(1));
        assert_eq!(cokernel(&IntMatrix::diagonal(&[2, 3]), 0), AbelianGroupPresentation::cyclic(6));
        // (Z/4)^2 / <(2, 0)> = Z/2 + Z/4
        let a = IntMatrix::from_i64(2, 1, &[2, 0]).unwrap();
        assert_eq!(
            cokernel(&a, 4),
            AbelianGroupPresentation::from_orders(&[2, 4])
        );
        assert_eq!(cokernel(&IntMatrix::zeros(2, 0), 1), AbelianGroupPresentation::trivial());
    }
}
