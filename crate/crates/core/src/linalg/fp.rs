use alloc::vec;
use alloc::vec::Vec;

/// Dense vector over `F_p`. `p = 2` is bit-packed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FpVec {
    Bits { len: usize, words: Vec<u64> },
    Elems { p: u32, data: Vec<u32> },
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // a^(p-2) mod p
    let (mut base, mut e, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

impl FpVec {
    pub fn zeros(p: u32, len: usize) -> Self {
        if p == 2 {
            FpVec::Bits {
                len,
                words: vec![0; len.div_ceil(64)],
            }
        } else {
            FpVec::Elems { p, data: vec![0; len] }
        }
    }

    pub fn unit(p: u32, len: usize, i: usize) -> Self {
        let mut v = Self::zeros(p, len);
        v.set(i, 1);
        v
    }

    /// Values are reduced mod `p` (negative inputs allowed).
    pub fn from_i64s<I: IntoIterator<Item = i64>>(p: u32, len: usize, values: I) -> Self {
        let mut v = Self::zeros(p, len);
        for (i, x) in values.into_iter().enumerate() {
            v.set(i, x.rem_euclid(p as i64) as u32);
        }
        v
    }

    pub fn modulus(&self) -> u32 {
        match self {
            FpVec::Bits { .. } => 2,
            FpVec::Elems { p, .. } => *p,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            FpVec::Bits { len, .. } => *len,
            FpVec::Elems { data, .. } => data.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> u32 {
        match self {
            FpVec::Bits { words, .. } => ((words[i / 64] >> (i % 64)) & 1) as u32,
            FpVec::Elems { data, .. } => data[i],
        }
    }

    pub fn set(&mut self, i: usize, value: u32) {
        match self {
            FpVec::Bits { words, .. } => {
                let bit = 1u64 << (i % 64);
                if value & 1 == 1 {
                    words[i / 64] |= bit;
                } else {
                    words[i / 64] &= !bit;
                }
            }
            FpVec::Elems { p, data } => data[i] = value % *p,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FpVec::Bits { words, .. } => words.iter().all(|&w| w == 0),
            FpVec::Elems { data, .. } => data.iter().all(|&x| x == 0),
        }
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        match self {
            FpVec::Bits { words, .. } => words
                .iter()
                .enumerate()
                .find(|(_, &w)| w != 0)
                .map(|(k, w)| k * 64 + w.trailing_zeros() as usize),
            FpVec::Elems { data, .. } => data.iter().position(|&x| x != 0),
        }
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: u32, other: &FpVec) {
        match (self, other) {
            (FpVec::Bits { words, .. }, FpVec::Bits { words: o, .. }) => {
                if c & 1 == 1 {
                    for (w, x) in words.iter_mut().zip(o) {
                        *w ^= x;
                    }
                }
            }
            (FpVec::Elems { p, data }, FpVec::Elems { data: o, .. }) => {
                let (p, c) = (*p as u64, c as u64 % *p as u64);
                if c == 0 {
                    return;
                }
                for (x, y) in data.iter_mut().zip(o) {
                    if *y != 0 {
                        *x = ((*x as u64 + c * *y as u64) % p) as u32;
                    }
                }
            }
            _ => panic!("mixed field vectors"),
        }
    }

    pub fn scale(&mut self, c: u32) {
        if let FpVec::Elems { p, data } = self {
            let p = *p as u64;
            for x in data.iter_mut() {
                *x = (*x as u64 * c as u64 % p) as u32;
            }
        } else if c & 1 == 0 {
            for w in self.words_mut() {
                *w = 0;
            }
        }
    }

    fn words_mut(&mut self) -> &mut [u64] {
        match self {
            FpVec::Bits { words, .. } => words,
            FpVec::Elems { .. } => &mut [],
        }
    }

    pub fn to_vec(&self) -> Vec<u32> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    pub(crate) fn neg(&self, c: u32) -> u32 {
        let p = self.modulus();
        (p - c % p) % p
    }
}

#[derive(Clone, Debug)]
struct EchelonRow {
    vec: FpVec,
    pivot: usize,
    tag: FpVec,
}

/// Incremental row echelon form over `F_p`.
///
/// Each stored row carries a tag recording it as a combination of the
/// inserted vectors' tags, which lets callers recover dependencies
/// (kernels) and coordinates.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    width: usize,
    tag_width: usize,
    rows: Vec<EchelonRow>,
}

impl Echelon {
    pub fn new(p: u32, width: usize, tag_width: usize) -> Self {
        Echelon {
            p,
            width,
            tag_width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Returns `(residual, coeffs)` with `x = residual + sum coeffs_i * tag-basis_i`
    /// restricted to the span of the stored rows.
    pub fn reduce(&self, x: &FpVec) -> (FpVec, FpVec) {
        let mut r = x.clone();
        let mut coeffs = FpVec::zeros(self.p, self.tag_width);
        for row in &self.rows {
            let c = r.get(row.pivot);
            if c != 0 {
                let nc = r.neg(c);
                r.axpy(nc, &row.vec);
                coeffs.axpy(c, &row.tag);
            }
        }
        (r, coeffs)
    }

    pub fn contains(&self, x: &FpVec) -> bool {
        self.reduce(x).0.is_zero()
    }

    /// Inserts `x` (tagged by `tag`). Returns `None` if `x` was independent,
    /// otherwise the dependency tag `t` with `sum t_i * original_i = 0`.
    pub fn insert(&mut self, x: &FpVec, tag: FpVec) -> Option<FpVec> {
        let (mut r, coeffs) = self.reduce(x);
        let mut t = tag;
        let one = coeffs.modulus() - 1;
        t.axpy(one, &coeffs);
        match r.first_nonzero() {
            None => Some(t),
            Some(pivot) => {
                let inv = inv_mod(r.get(pivot), self.p);
                r.scale(inv);
                t.scale(inv);
                self.rows.push(EchelonRow { vec: r, pivot, tag: t });
                None
            }
        }
    }

    pub fn insert_untagged(&mut self, x: &FpVec) -> bool {
        let tag = FpVec::zeros(self.p, self.tag_width);
        self.insert(x, tag).is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_kernel_via_tags() {
        // columns (1,1), (1,0), (0,1): third = first + second
        let cols = [[1, 1], [1, 0], [0, 1]];
        let mut e = Echelon::new(2, 2, 3);
        let mut deps = Vec::new();
        for (j, c) in cols.iter().enumerate() {
            let v = FpVec::from_i64s(2, 2, c.iter().copied());
            if let Some(d) = e.insert(&v, FpVec::unit(2, 3, j)) {
                deps.push(d);
            }
        }
        assert_eq!(e.rank(), 2);
        assert_eq!(deps.len(), 1);
        assert_eq!(deps[0].to_vec(), vec![1, 1, 1]);
    }

    #[test]
    fn f5_coordinates() {
        let a = FpVec::from_i64s(5, 3, [1, 2, 0]);
        let b = FpVec::from_i64s(5, 3, [0, 1, 1]);
        let mut e = Echelon::new(5, 3, 2);
        assert!(e.insert(&a, FpVec::unit(5, 2, 0)).is_none());
        assert!(e.insert(&b, FpVec::unit(5, 2, 1)).is_none());
        // 3a + 4b = (3, 10, 4) = (3, 0, 4)
        let x = FpVec::from_i64s(5, 3, [3, 0, 4]);
        let (r, c) = e.reduce(&x);
        assert!(r.is_zero());
        assert_eq!(c.to_vec(), vec![3, 4]);
        assert!(!e.contains(&FpVec::from_i64s(5, 3, [0, 0, 1])));
    }

    #[test]
    fn bit_vector_long() {
        let mut v = FpVec::zeros(2, 130);
        v.set(129, 1);
        assert_eq!(v.first_nonzero(), Some(129));
        let w = v.clone();
        v.axpy(1, &w);
        assert!(v.is_zero());
    }
}
