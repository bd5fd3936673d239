use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use supercoh_core::brauer::{
    commutativity_certificate, element_order, twist_term, BrauerElement, BrauerGroup, Order, Variant,
};
use supercoh_core::linalg::AbelianGroupPresentation;
use supercoh_core::ops::{reduce_mod, sq, cup};
use supercoh_core::simplicial::{cohomology, corpus, is_cohomologous, Cochain, CohomologyClass, SimplicialComplex};

fn group(s: &str) -> AbelianGroupPresentation {
    s.parse().unwrap()
}

/// `b₁`, `b₂`: the degree-one generator of `RP²` pulled back along both
/// projections of the product.
fn product_classes() -> (Arc<SimplicialComplex>, Cochain, Cochain) {
    let p = corpus::product_by_name("rp2xrp2").unwrap();
    let w = cohomology(&p.left, 1, 2).unwrap().generators()[0].cochain().clone();
    let b1 = w.pullback(&p.projection_left()).unwrap();
    let b2 = w.pullback(&p.projection_right()).unwrap();
    (p.complex.clone(), b1, b2)
}

fn b_only(variant: Variant, x: &Arc<SimplicialComplex>, b: &Cochain) -> BrauerElement {
    let id = BrauerElement::identity(variant, x.clone());
    BrauerElement::new(variant, id.a().clone(), b.clone(), id.c().clone()).unwrap()
}

#[test]
fn ku_extension_is_nontrivial_on_rp2_squared() {
    let start = Instant::now();
    let (x, b1, b2) = product_classes();
    let sum = b_only(Variant::KU, &x, &b1).add(&b_only(Variant::KU, &x, &b2)).unwrap();
    let c = sum.c();
    // ρ β = Sq¹ and Sq¹(b₁ b₂) = b₁² b₂ + b₁ b₂² ≠ 0.
    let product = CohomologyClass::new(cup(&b1, &b2).unwrap()).unwrap();
    let sq1 = sq(1, &product).unwrap();
    assert!(is_cohomologous(&reduce_mod(c, 2).unwrap(), sq1.cochain()).unwrap());
    assert!(!is_cohomologous(sq1.cochain(), &Cochain::zero(x.clone(), 3, 2)).unwrap());
    // The same conclusion integrally.
    assert!(!is_cohomologous(c, &Cochain::zero(x.clone(), 3, 0)).unwrap());
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn commutativity_witness_on_rp2_squared() {
    let (x, b1, b2) = product_classes();
    for variant in [Variant::KU, Variant::KO] {
        let (p, q) = (b_only(variant, &x, &b1), b_only(variant, &x, &b2));
        let cert = commutativity_certificate(&p, &q).unwrap();
        assert!(!cert.witness.is_zero());
        assert!(cert.verify(&p, &q).unwrap());
    }
}

#[test]
fn circle_pairs_commute_on_the_nose() {
    let x = corpus::circle();
    for variant in [Variant::KU, Variant::KO] {
        let g = BrauerGroup::new(&x, variant).unwrap();
        let nc = g.components()[2].generators().len();
        let p = g.element(&[BigInt::one()], &[BigInt::one()], &vec![BigInt::zero(); nc]).unwrap();
        let q = g.element(&[BigInt::zero()], &[BigInt::one()], &vec![BigInt::zero(); nc]).unwrap();
        assert!(p.add(&q).unwrap().equals(&q.add(&p).unwrap()).unwrap());
        assert!(commutativity_certificate(&p, &q).unwrap().verify(&p, &q).unwrap());
    }
}

#[test]
fn group_orders_multiply() {
    for (name, x) in corpus::all() {
        for variant in [Variant::KU, Variant::KO] {
            let g = BrauerGroup::new(&x, variant).unwrap();
            let total = g.abstract_group().unwrap();
            let parts: Vec<_> = g.components().iter().map(|h| h.presentation().clone()).collect();
            let free: usize = parts.iter().map(|p| p.free_rank()).sum();
            assert_eq!(total.free_rank(), free, "{name} {variant}");
            let torsion = |p: &AbelianGroupPresentation| p.invariant_factors().iter().product::<BigInt>();
            let expected: BigInt = parts.iter().map(torsion).product();
            assert_eq!(torsion(&total), expected, "{name} {variant}");
        }
    }
}

#[test]
fn ku_is_untwisted_when_classes_lift() {
    for name in ["point", "s1", "s2", "t2", "s1xs1", "s1xs2"] {
        let x = corpus::by_name(name).unwrap();
        let g = BrauerGroup::new(&x, Variant::KU).unwrap();
        let [a, b, c] = g.components();
        let untwisted = a.presentation().direct_sum(b.presentation()).direct_sum(c.presentation());
        assert_eq!(g.abstract_group().unwrap(), untwisted, "{name}");
    }
}

#[test]
fn named_groups() {
    let cases = [
        ("point", Variant::KU, "Z/2", "0"),
        ("point", Variant::KO, "Z/8", "0"),
        ("rp2", Variant::KO, "Z/8 + Z/4", "Z/4"),
        ("s1", Variant::KU, "Z/2 + Z/2", "Z/2"),
        ("t2", Variant::KU, "Z/2 + Z/2 + Z/2", "Z/2 + Z/2"),
        ("klein", Variant::KO, "Z/8 + Z/4 + Z/2", "Z/4 + Z/2"),
    ];
    for (name, variant, whole, twist) in cases {
        let g = BrauerGroup::new(&corpus::by_name(name).unwrap(), variant).unwrap();
        assert_eq!(g.abstract_group().unwrap(), group(whole), "{name} {variant}");
        assert_eq!(g.twist_subgroup().unwrap(), group(twist), "{name} {variant}");
    }
}

#[test]
fn orders_on_rp2() {
    let x = corpus::projective_plane();
    let g = BrauerGroup::new(&x, Variant::KO).unwrap();
    let w = g.element(&[BigInt::zero()], &[BigInt::one()], &[BigInt::zero()]).unwrap();
    assert_eq!(element_order(&w, 64).unwrap(), Order::Finite(4));
    let mixed = g.element(&[BigInt::from(2)], &[BigInt::one()], &[BigInt::one()]).unwrap();
    assert_eq!(element_order(&mixed, 64).unwrap(), Order::Finite(4));
    let ku = BrauerGroup::new(&x, Variant::KU).unwrap();
    let w = ku.element(&[BigInt::zero()], &[BigInt::one()], &[]).unwrap();
    // H³(RP²) = 0, so the KU twist of w with itself vanishes.
    assert_eq!(element_order(&w, 64).unwrap(), Order::Finite(2));
}

fn element_from(g: &BrauerGroup, seeds: &[u64]) -> BrauerElement {
    let mut it = seeds.iter().cycle();
    let mut coords = |h: &supercoh_core::simplicial::Cohomology| -> Vec<BigInt> {
        h.orders()
            .iter()
            .map(|o| {
                let s = *it.next().unwrap() as i64;
                if o.is_zero() { BigInt::from(s % 5 - 2) } else { BigInt::from(s) % o }
            })
            .collect()
    };
    let [ha, hb, hc] = g.components();
    let (a, b, c) = (coords(ha), coords(hb), coords(hc));
    let x = g.element(&a, &b, &c).unwrap();
    // Perturb every slot by a coboundary so no normal form is assumed.
    let perturb = |z: &Cochain, k: u64| {
        if z.degree() == 0 || z.complex().count(z.degree() - 1) == 0 {
            return z.clone();
        }
        let cells = z.complex().count(z.degree() - 1);
        let y = Cochain::indicator(z.complex().clone(), z.degree() - 1, z.modulus(), k as usize % cells);
        z.add(&y.coboundary()).unwrap()
    };
    BrauerElement::new(g.variant(), x.a().clone(), perturb(x.b(), seeds[0]), perturb(x.c(), seeds[1])).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn group_axioms(which in 0usize..9, ku in any::<bool>(), s1 in prop::collection::vec(0u64..64, 2..6),
                    s2 in prop::collection::vec(0u64..64, 2..6), s3 in prop::collection::vec(0u64..64, 2..6)) {
        let variant = if ku { Variant::KU } else { Variant::KO };
        let (_, x) = &corpus::all()[which];
        let g = BrauerGroup::new(x, variant).unwrap();
        let (p, q, r) = (element_from(&g, &s1), element_from(&g, &s2), element_from(&g, &s3));
        let left = p.add(&q).unwrap().add(&r).unwrap();
        let right = p.add(&q.add(&r).unwrap()).unwrap();
        prop_assert!(left.equals(&right).unwrap());
        prop_assert!(p.add(&g.identity()).unwrap().equals(&p).unwrap());
        prop_assert!(p.add(&p.negate()).unwrap().is_identity().unwrap());
        prop_assert!(p.add(&q).unwrap().equals(&q.add(&p).unwrap()).unwrap());
        // Forgetting the twist is a homomorphism.
        let s = p.add(&q).unwrap();
        prop_assert_eq!(s.a(), &p.a().add(q.a()).unwrap());
        prop_assert_eq!(s.b(), &p.b().add(q.b()).unwrap());
        // The twist vanishes iff its class does.
        let untwisted = p.c().add(q.c()).unwrap();
        let twist = twist_term(variant, p.b(), q.b()).unwrap();
        let zero = Cochain::zero(x.clone(), twist.degree(), twist.modulus());
        prop_assert_eq!(is_cohomologous(s.c(), &untwisted).unwrap(), is_cohomologous(&twist, &zero).unwrap());
    }
}
