use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{smith_normal_form, IntMatrix};
use crate::{Error, Result};

/// A finitely generated abelian group `Z^r + Z/d_1 + ... + Z/d_k` with
/// `d_1 | d_2 | ... | d_k` and every `d_i >= 2`.
///
/// Element coordinates, wherever a presentation is used with explicit
/// elements, list the free generators first and then the torsion
/// generators in invariant-factor order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct AbelianGroupPresentation {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl AbelianGroupPresentation {
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self> {
        if invariant_factors.iter().any(|d| d < &BigInt::from(2)) {
            return Err(Error::InvalidGroup("invariant factors must be >= 2"));
        }
        if invariant_factors.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::InvalidGroup("invariant factors must form a divisibility chain"));
        }
        Ok(AbelianGroupPresentation {
            free_rank,
            invariant_factors,
        })
    }

    pub(crate) fn from_parts(free_rank: usize, invariant_factors: Vec<BigInt>) -> Self {
        debug_assert!(Self::new(free_rank, invariant_factors.clone()).is_ok());
        AbelianGroupPresentation {
            free_rank,
            invariant_factors,
        }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupPresentation {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z/n`; `n == 0` gives `Z` and `n == 1` the trivial group.
    pub fn cyclic(n: u64) -> Self {
        Self::from_orders(&[n])
    }

    /// Direct sum of cyclic groups `Z/n_i` (0 meaning `Z`), brought to
    /// invariant-factor form.
    pub fn from_orders(orders: &[u64]) -> Self {
        Self::from_big_orders(orders.iter().map(|&n| BigInt::from(n)))
    }

    pub fn from_big_orders<I: IntoIterator<Item = BigInt>>(orders: I) -> Self {
        let mut free = 0;
        let mut torsion = Vec::new();
        for n in orders {
            let n = n.abs();
            if n.is_zero() {
                free += 1;
            } else if !n.is_one() {
                torsion.push(n);
            }
        }
        if torsion.is_empty() {
            return Self::free(free);
        }
        let k = torsion.len();
        let mut m = IntMatrix::zeros(k, k);
        for (i, d) in torsion.into_iter().enumerate() {
            m[(i, i)] = d;
        }
        let factors = smith_normal_form(&m)
            .diagonal()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        AbelianGroupPresentation {
            free_rank: free,
            invariant_factors: factors,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    /// Orders of the generators in coordinate order (0 for free ones).
    pub fn generator_orders(&self) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = (0..self.free_rank).map(|_| BigInt::zero()).collect();
        v.extend(self.invariant_factors.iter().cloned());
        v
    }

    pub fn generator_count(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, or `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().fold(BigInt::one(), |acc, d| acc * d))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let orders = self
            .generator_orders()
            .into_iter()
            .chain(other.generator_orders());
        Self::from_big_orders(orders)
    }

    /// Number of `Z/2` summands of `G (x) Z/2`.
    pub fn mod2_rank(&self) -> usize {
        self.free_rank + self.invariant_factors.iter().filter(|d| d.is_even()).count()
    }
}

impl fmt::Display for AbelianGroupPresentation {
    /// Free summands first, then torsion in descending order; `0` for the
    /// trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                write!(f, " ⊕ ")?;
            }
            first = false;
            Ok(())
        };
        for _ in 0..self.free_rank {
            sep(f)?;
            write!(f, "Z")?;
        }
        for d in self.invariant_factors.iter().rev() {
            sep(f)?;
            write!(f, "Z/{}", d)?;
        }
        Ok(())
    }
}

impl FromStr for AbelianGroupPresentation {
    type Err = Error;

    /// Accepts sums like `Z ⊕ Z/8 ⊕ Z/4`; `+` and `x` also work as
    /// separators, and `Z^2` as shorthand.
    fn from_str(s: &str) -> Result<Self> {
        let normalized: String = s
            .replace(['⊕', '×'], "+")
            .replace(" x ", "+")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        if normalized.is_empty() {
            return Err(Error::Parse("empty group"));
        }
        let mut orders = Vec::new();
        for term in normalized.split('+') {
            if term == "0" {
                continue;
            }
            let (base, power) = match term.split_once('^') {
                Some((b, p)) => (b, p.parse::<usize>().map_err(|_| Error::Parse("bad exponent"))?),
                None => (term, 1),
            };
            let order = if base == "Z" {
                BigInt::zero()
            } else if let Some(n) = base.strip_prefix("Z/") {
                let n: BigInt = n.parse().map_err(|_| Error::Parse("bad cyclic order"))?;
                if !n.is_positive() {
                    return Err(Error::Parse("cyclic order must be positive"));
                }
                n
            } else {
                return Err(Error::Parse("expected Z or Z/n"));
            };
            for _ in 0..power {
                orders.push(order.clone());
            }
        }
        Ok(Self::from_big_orders(orders))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn canonical_form() {
        let g = AbelianGroupPresentation::from_orders(&[2, 3, 4]);
        assert_eq!(g.invariant_factors(), &[BigInt::from(2), BigInt::from(12)]);
        assert_eq!(g.order(), Some(BigInt::from(24)));
        assert_eq!(AbelianGroupPresentation::from_orders(&[1, 1]), AbelianGroupPresentation::trivial());
    }

    #[test]
    fn rejects_bad_chains() {
        assert!(AbelianGroupPresentation::new(0, alloc::vec![BigInt::from(4), BigInt::from(2)]).is_err());
        assert!(AbelianGroupPresentation::new(0, alloc::vec![BigInt::from(1)]).is_err());
    }

    #[test]
    fn display_and_parse() {
        let g = AbelianGroupPresentation::from_orders(&[8, 4]);
        assert_eq!(g.to_string(), "Z/8 ⊕ Z/4");
        assert_eq!("Z/4 + Z/8".parse::<AbelianGroupPresentation>().unwrap(), g);
        let h: AbelianGroupPresentation = "Z^2 ⊕ Z/2".parse().unwrap();
        assert_eq!(h.to_string(), "Z ⊕ Z ⊕ Z/2");
        assert_eq!(AbelianGroupPresentation::trivial().to_string(), "0");
        assert_eq!("0".parse::<AbelianGroupPresentation>().unwrap(), AbelianGroupPresentation::trivial());
        assert!("Q".parse::<AbelianGroupPresentation>().is_err());
    }

    #[test]
    fn mod2_rank_counts_even_factors() {
        let g: AbelianGroupPresentation = "Z ⊕ Z/3 ⊕ Z/8".parse().unwrap();
        assert_eq!(g.mod2_rank(), 2);
    }
}
