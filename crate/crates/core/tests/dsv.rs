use num_rational::BigRational;
use proptest::prelude::*;
use supercoh_core::dsv::{swap_map, BoundedChainComplex, Dsv, DsvMap, Field, FieldMatrix};

fn f5() -> Field {
    Field::prime(5).unwrap()
}

/// Deterministic stream of field elements.
struct Stream(u64);

impl Stream {
    fn next(&mut self, n: u64) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (self.0 >> 33) % n
    }

    fn element(&mut self, f: Field) -> BigRational {
        f.from_i64(self.next(5) as i64 - 2)
    }

    fn matrix(&mut self, f: Field, rows: usize, cols: usize) -> FieldMatrix {
        let entries = (0..rows * cols).map(|_| self.element(f)).collect();
        FieldMatrix::from_entries(f, rows, cols, entries).unwrap()
    }

    fn invertible(&mut self, f: Field, n: usize) -> (FieldMatrix, FieldMatrix) {
        loop {
            let m = self.matrix(f, n, n);
            if let Some(inv) = m.inverse() {
                return (m, inv);
            }
        }
    }
}

/// `k0` even-to-odd cancelling pairs, `k1` odd-to-even pairs, homology
/// `(h0, h1)`, in a random basis.
fn random_dsv(s: &mut Stream, f: Field, k0: usize, k1: usize, h0: usize, h1: usize) -> Dsv {
    let (n0, n1) = (k0 + k1 + h0, k0 + k1 + h1);
    let mut d0 = FieldMatrix::zeros(f, n1, n0);
    let mut d1 = FieldMatrix::zeros(f, n0, n1);
    for i in 0..k0 {
        d0.set(i, i, f.from_i64(1));
    }
    for i in 0..k1 {
        d1.set(k0 + i, k0 + i, f.from_i64(1));
    }
    let (p0, p0i) = s.invertible(f, n0);
    let (p1, p1i) = s.invertible(f, n1);
    Dsv::new(p1.mul(&d0).unwrap().mul(&p0i).unwrap(), p0.mul(&d1).unwrap().mul(&p1i).unwrap()).unwrap()
}

fn random_shape(s: &mut Stream, max: usize) -> (usize, usize, usize, usize) {
    loop {
        let t = (s.next(3) as usize, s.next(3) as usize, s.next(3) as usize, s.next(3) as usize);
        if 2 * (t.0 + t.1) + t.2 + t.3 <= max {
            return t;
        }
    }
}

fn random_map(s: &mut Stream, v: &Dsv, w: &Dsv) -> DsvMap {
    let basis = DsvMap::chain_map_basis(v, w).unwrap();
    let coeffs: Vec<BigRational> = basis.iter().map(|_| s.element(v.field())).collect();
    DsvMap::linear_combination(v, w, &basis, &coeffs).unwrap()
}

#[test]
fn quasi_isomorphisms_are_homotopy_equivalences() {
    let mut s = Stream(17);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..120 {
        let f = f5();
        let (a, b, c, d) = random_shape(&mut s, 6);
        let v = random_dsv(&mut s, f, a, b, c, d);
        let (e, g, _, _) = random_shape(&mut s, 6);
        let w = random_dsv(&mut s, f, e.min(1), g.min(1), c, d);
        let map = random_map(&mut s, &v, &w);
        let q = map.is_quasi_iso();
        let h = map.homotopy_inverse();
        assert_eq!(q, h.is_some());
        if let Some(eq) = h {
            let back = eq.inverse.compose(&map).unwrap();
            assert!(back.is_quasi_iso());
            // g∘f - id = d h + h d, checked entrywise on V_0.
            let lhs = back.f0().sub(&FieldMatrix::identity(f, v.dim0())).unwrap();
            let rhs = v.d1().mul(&eq.on_source.k0).unwrap().add(&eq.on_source.k1.mul(v.d0()).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            yes += 1;
        } else {
            no += 1;
        }
    }
    assert!(yes > 10 && no > 10, "{yes} {no}");
}

#[test]
fn homology_matches_rank_oracle() {
    let mut s = Stream(5);
    for _ in 0..40 {
        let (a, b, c, d) = random_shape(&mut s, 8);
        let v = random_dsv(&mut s, f5(), a, b, c, d);
        assert_eq!(v.homology(), (c, d));
        assert_eq!(v.euler_char(), c as i64 - d as i64);
        assert_eq!(v.is_invertible(), c + d == 1);
        assert_eq!(v.is_invertible(), v.homology_dsv().is_invertible());
    }
}

#[test]
fn tensor_distributes_over_sums_in_homology() {
    let mut s = Stream(11);
    for _ in 0..20 {
        let pick = |s: &mut Stream| {
            let (a, b, c, d) = random_shape(s, 4);
            random_dsv(s, Field::Rational, a, b, c, d)
        };
        let (u, v, w) = (pick(&mut s), pick(&mut s), pick(&mut s));
        let lhs = u.tensor(&v.direct_sum(&w).unwrap()).unwrap();
        let rhs = u.tensor(&v).unwrap().direct_sum(&u.tensor(&w).unwrap()).unwrap();
        assert_eq!(lhs.homology(), rhs.homology());
        assert_eq!(lhs.dim0(), rhs.dim0());
        let (hu, hv) = (u.homology(), v.homology());
        let uv = u.tensor(&v).unwrap().homology();
        assert_eq!(uv, (hu.0 * hv.0 + hu.1 * hv.1, hu.0 * hv.1 + hu.1 * hv.0));
        assert_eq!(u.tensor(&v).unwrap().euler_char(), u.euler_char() * v.euler_char());
        assert_eq!(u.direct_sum(&v).unwrap().euler_char(), u.euler_char() + v.euler_char());
    }
}

#[test]
fn swap_is_a_chain_involution() {
    let mut s = Stream(3);
    for _ in 0..20 {
        let (a, b, c, d) = random_shape(&mut s, 4);
        let v = random_dsv(&mut s, f5(), a, b, c, d);
        let (a, b, c, d) = random_shape(&mut s, 4);
        let w = random_dsv(&mut s, f5(), a, b, c, d);
        let there = swap_map(&v, &w).unwrap();
        let back = swap_map(&w, &v).unwrap();
        assert_eq!(back.compose(&there).unwrap(), DsvMap::identity(there.source()));
        assert!(there.is_quasi_iso());
    }
}

#[test]
fn odd_line_square_has_sign_minus_one() {
    let odd = Dsv::odd_line(Field::Rational);
    let s = swap_map(&odd, &odd).unwrap();
    assert_eq!((s.source().dim0(), s.source().dim1()), (1, 0));
    assert_eq!(s.as_scalar(), Some(Field::Rational.from_i64(-1)));
}

fn random_complex(s: &mut Stream, f: Field, lowest: i64, len: usize) -> BoundedChainComplex {
    // Cancelling pairs between consecutive degrees, plus homology.
    let pairs: Vec<usize> = (0..len.saturating_sub(1)).map(|_| s.next(3) as usize).collect();
    let homology: Vec<usize> = (0..len).map(|_| s.next(3) as usize).collect();
    let dims: Vec<usize> = (0..len)
        .map(|k| homology[k] + if k > 0 { pairs[k - 1] } else { 0 } + pairs.get(k).copied().unwrap_or(0))
        .collect();
    let bases: Vec<(FieldMatrix, FieldMatrix)> = dims.iter().map(|&n| s.invertible(f, n)).collect();
    let boundaries = (0..len.saturating_sub(1))
        .map(|k| {
            // ∂: E_{k+1} -> E_k hits the block of E_k reserved for pair k.
            let mut m = FieldMatrix::zeros(f, dims[k], dims[k + 1]);
            let row0 = homology[k] + if k > 0 { pairs[k - 1] } else { 0 };
            let col0 = homology[k + 1];
            for i in 0..pairs[k] {
                m.set(row0 + i, col0 + i, f.from_i64(1));
            }
            bases[k].0.mul(&m).unwrap().mul(&bases[k + 1].1).unwrap()
        })
        .collect();
    BoundedChainComplex::new(f, lowest, dims, boundaries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn epsilon_preserves_euler_characteristic(seed in any::<u64>(), lowest in -3i64..3, len in 1usize..5) {
        let mut s = Stream(seed);
        let e = random_complex(&mut s, f5(), lowest, len);
        let v = e.epsilon();
        prop_assert_eq!(v.euler_char(), e.euler_char());
        let h = e.homology();
        let (mut h0, mut h1) = (0, 0);
        for (k, d) in h.iter().enumerate() {
            if (lowest + k as i64).rem_euclid(2) == 0 { h0 += d } else { h1 += d }
        }
        prop_assert_eq!(v.homology(), (h0, h1));
    }
}
