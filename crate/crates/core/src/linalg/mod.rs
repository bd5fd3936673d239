//! Exact linear algebra over `Z`, `Z/n` and prime fields.
//!
//! A modulus of `0` always means "over the integers".

mod fp;
mod group;
mod matrix;
mod smith;

pub use fp::{Echelon, FpVec};
pub use group::AbelianGroupPresentation;
pub use matrix::IntMatrix;
pub use smith::{cokernel, smith_normal_form, solve_mod, SmithDecomposition};
pub(crate) use smith::inverse_mod;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

/// Reduces `x` into `[0, n)`; leaves it alone when `n == 0`.
pub fn reduce(x: &BigInt, n: u64) -> BigInt {
    if n == 0 {
        x.clone()
    } else {
        x.mod_floor(&BigInt::from(n))
    }
}

/// Deterministic primality check for the small moduli used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    let g = a.gcd(b);
    if g.is_negative() {
        -g
    } else {
        g
    }
}

