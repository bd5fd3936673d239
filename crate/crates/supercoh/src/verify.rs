//! Seeded invariant suites behind `supercoh verify`.
//!
//! Every suite is deterministic for a given seed. A suite counts the checks
//! it ran and keeps a short description of each failure.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use supercoh_core::brauer::{
    abstract_group, element_order, twist_subgroup, BrauerElement, BrauerGroup, Order, Variant,
};
use supercoh_core::dsv::{swap_map, BoundedChainComplex, Dsv, DsvMap, Field, FieldMatrix};
use supercoh_core::linalg::AbelianGroupPresentation;
use supercoh_core::ops::{bockstein, cup, reduce_mod, sq};
use supercoh_core::simplicial::{
    cohomology, corpus, is_cohomologous, Cochain, CohomologyClass, SimplicialComplex,
};
use supercoh_core::stable2type::{catalog, catalog_entry, enumerate_symmetric_structures, equivalent};
use supercoh_core::superline::{Flavor, SuperLine};
use supercoh_core::DEFAULT_SEARCH_CAP;

pub const SUITES: [&str; 9] = [
    "point-groups",
    "ko-extension",
    "ku-extension",
    "group-axioms",
    "dsv-oracle",
    "operations",
    "classification",
    "superline-signs",
    "euler",
];

#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    /// Overrides the per-suite sample count of the randomized suites.
    pub samples: Option<usize>,
    pub cap: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 0x5eed, samples: None, cap: DEFAULT_SEARCH_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport { name, checks: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    fn check_result(&mut self, r: supercoh_core::Result<bool>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(ok, what),
            Err(e) => {
                let msg = what();
                self.check(false, || format!("{msg}: {e}"));
            }
        }
    }
}

pub fn run_suite(name: &str, config: &Config) -> Option<SuiteReport> {
    let report = match name {
        "point-groups" => point_groups(),
        "ko-extension" => ko_extension(),
        "ku-extension" => ku_extension(),
        "group-axioms" => group_axioms(config),
        "dsv-oracle" => dsv_oracle(config),
        "operations" => operations(config),
        "classification" => classification(config),
        "superline-signs" => superline_signs(),
        "euler" => euler(config),
        _ => return None,
    };
    Some(report)
}

pub fn run_all(config: &Config) -> Vec<SuiteReport> {
    SUITES.iter().map(|s| run_suite(s, config).expect("known suite")).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn group(s: &str) -> AbelianGroupPresentation {
    s.parse().expect("literal group")
}

pub fn point_groups() -> SuiteReport {
    let mut r = SuiteReport::new("point-groups");
    let x = corpus::point();
    for (variant, expected) in [(Variant::KU, "Z/2"), (Variant::KO, "Z/8")] {
        let got = abstract_group(&x, variant);
        let ok = matches!(&got, Ok(g) if *g == group(expected));
        r.check(ok, || format!("point {variant}: expected {expected}, got {got:?}"));
    }
    r
}

pub fn ko_extension() -> SuiteReport {
    let mut r = SuiteReport::new("ko-extension");
    let x = corpus::projective_plane();
    let twist = twist_subgroup(&x, Variant::KO);
    r.check(matches!(&twist, Ok(g) if *g == group("Z/4")), || format!("twist subgroup {twist:?}"));
    match BrauerGroup::new(&x, Variant::KO) {
        Ok(g) => {
            let w = g.element(&[BigInt::zero()], &[BigInt::one()], &[BigInt::zero()]);
            let order = w.and_then(|w| element_order(&w, 64));
            r.check(order == Ok(Order::Finite(4)), || format!("order of (0,w,0): {order:?}"));
        }
        Err(e) => r.check(false, || format!("group: {e}")),
    }
    r
}

/// The classes `b₁, b₂` on `RP² × RP²` and the element `(0,b₁,0) ⊞ (0,b₂,0)`.
pub fn ku_extension_witness() -> supercoh_core::Result<(Cochain, Cochain, BrauerElement)> {
    let p = corpus::product_by_name("rp2xrp2").expect("corpus product");
    let w = cohomology(&p.left, 1, 2)?.generators()[0].cochain().clone();
    let b1 = w.pullback(&p.projection_left())?;
    let b2 = w.pullback(&p.projection_right())?;
    let id = BrauerElement::identity(Variant::KU, p.complex.clone());
    let e1 = BrauerElement::new(Variant::KU, id.a().clone(), b1.clone(), id.c().clone())?;
    let e2 = BrauerElement::new(Variant::KU, id.a().clone(), b2.clone(), id.c().clone())?;
    Ok((b1, b2, e1.add(&e2)?))
}

pub fn ku_extension() -> SuiteReport {
    let mut r = SuiteReport::new("ku-extension");
    let (b1, b2, sum) = match ku_extension_witness() {
        Ok(t) => t,
        Err(e) => {
            r.check(false, || format!("setup: {e}"));
            return r;
        }
    };
    let x = sum.base().clone();
    let certified = (|| -> supercoh_core::Result<(bool, bool)> {
        let product = CohomologyClass::new(cup(&b1, &b2)?)?;
        let sq1 = sq(1, &product)?;
        let reduced = reduce_mod(sum.c(), 2)?;
        let matches = is_cohomologous(&reduced, sq1.cochain())?;
        let nonzero = !is_cohomologous(sq1.cochain(), &Cochain::zero(x.clone(), 3, 2))?;
        Ok((matches, nonzero))
    })();
    match certified {
        Ok((matches, nonzero)) => {
            r.check(matches, || "reduction of the c slot differs from Sq¹(b₁b₂)".into());
            r.check(nonzero, || "Sq¹(b₁b₂) is zero".into());
        }
        Err(e) => r.check(false, || format!("certificate: {e}")),
    }
    let zero = Cochain::zero(x, 3, 0);
    r.check_result(is_cohomologous(sum.c(), &zero).map(|z| !z), || "c slot is cohomologous to zero".into());
    r
}

/// A random element: random generator coordinates, each slot then moved by
/// a random coboundary.
pub fn random_element<R: Rng>(rng: &mut R, g: &BrauerGroup) -> supercoh_core::Result<BrauerElement> {
    let mut coords = |h: &supercoh_core::simplicial::Cohomology| -> Vec<BigInt> {
        h.orders()
            .iter()
            .map(|o| {
                if o.is_zero() {
                    BigInt::from(rng.gen_range(-3i64..=3))
                } else {
                    let n: u64 = o.try_into().unwrap_or(u64::MAX);
                    BigInt::from(rng.gen_range(0..n))
                }
            })
            .collect()
    };
    let [ha, hb, hc] = g.components();
    let (a, b, c) = (coords(ha), coords(hb), coords(hc));
    let x = g.element(&a, &b, &c)?;
    let b = perturb(rng, x.b())?;
    let c = perturb(rng, x.c())?;
    BrauerElement::new(g.variant(), x.a().clone(), b, c)
}

fn perturb<R: Rng>(rng: &mut R, z: &Cochain) -> supercoh_core::Result<Cochain> {
    if z.degree() == 0 {
        return Ok(z.clone());
    }
    let y = random_cochain(rng, z.complex(), z.degree() - 1, z.modulus(), 0.3);
    z.add(&y.coboundary())
}

/// A cochain with each value nonzero with probability `density`.
pub fn random_cochain<R: Rng>(
    rng: &mut R,
    x: &Arc<SimplicialComplex>,
    degree: usize,
    modulus: u64,
    density: f64,
) -> Cochain {
    let values = (0..x.count(degree))
        .map(|_| {
            if !rng.gen_bool(density) {
                return BigInt::zero();
            }
            match modulus {
                0 => BigInt::from(rng.gen_range(-4i64..=4)),
                n => BigInt::from(rng.gen_range(0..n)),
            }
        })
        .collect();
    Cochain::new(x.clone(), degree, modulus, values).expect("length matches")
}

pub fn group_axioms(config: &Config) -> SuiteReport {
    let mut r = SuiteReport::new("group-axioms");
    let per = config.samples.unwrap_or(100);
    let mut rng = rng(config.seed ^ 0x4a);
    for (name, x) in corpus::all() {
        for variant in [Variant::KU, Variant::KO] {
            let g = match BrauerGroup::new(&x, variant) {
                Ok(g) => g,
                Err(e) => {
                    r.check(false, || format!("{name} {variant}: {e}"));
                    continue;
                }
            };
            for t in 0..per {
                let triple = (|| -> supercoh_core::Result<[bool; 4]> {
                    let p = random_element(&mut rng, &g)?;
                    let q = random_element(&mut rng, &g)?;
                    let s = random_element(&mut rng, &g)?;
                    let assoc = p.add(&q)?.add(&s)?.equals(&p.add(&q.add(&s)?)?)?;
                    let ident = p.add(&g.identity())?.equals(&p)? && g.identity().add(&p)?.equals(&p)?;
                    let inv = p.add(&p.negate())?.is_identity()?;
                    let comm = p.add(&q)?.equals(&q.add(&p)?)?;
                    Ok([assoc, ident, inv, comm])
                })();
                match triple {
                    Ok(flags) => {
                        for (law, ok) in ["associativity", "identity", "inverse", "commutativity"].iter().zip(flags) {
                            r.check(ok, || format!("{name} {variant} triple {t}: {law}"));
                        }
                    }
                    Err(e) => r.check(false, || format!("{name} {variant} triple {t}: {e}")),
                }
            }
        }
    }
    r
}

fn element<R: Rng>(rng: &mut R, f: Field) -> BigRational {
    match f {
        Field::Prime(p) => f.from_i64(rng.gen_range(0..p as i64)),
        Field::Rational => f.from_i64(rng.gen_range(-3..=3)),
    }
}

fn matrix<R: Rng>(rng: &mut R, f: Field, rows: usize, cols: usize) -> FieldMatrix {
    let entries = (0..rows * cols).map(|_| element(rng, f)).collect();
    FieldMatrix::from_entries(f, rows, cols, entries).expect("shape")
}

fn invertible<R: Rng>(rng: &mut R, f: Field, n: usize) -> (FieldMatrix, FieldMatrix) {
    loop {
        let m = matrix(rng, f, n, n);
        if let Some(inv) = m.inverse() {
            return (m, inv);
        }
    }
}

/// `k0` cancelling pairs from even to odd, `k1` from odd to even, and
/// homology `(h0, h1)`, written in a random basis.
pub fn random_dsv<R: Rng>(rng: &mut R, f: Field, k0: usize, k1: usize, h0: usize, h1: usize) -> Dsv {
    let (n0, n1) = (k0 + k1 + h0, k0 + k1 + h1);
    let mut d0 = FieldMatrix::zeros(f, n1, n0);
    let mut d1 = FieldMatrix::zeros(f, n0, n1);
    for i in 0..k0 {
        d0.set(i, i, f.from_i64(1));
    }
    for i in 0..k1 {
        d1.set(k0 + i, k0 + i, f.from_i64(1));
    }
    let (p0, p0i) = invertible(rng, f, n0);
    let (p1, p1i) = invertible(rng, f, n1);
    let d0 = p1.mul(&d0).and_then(|m| m.mul(&p0i)).expect("shapes");
    let d1 = p0.mul(&d1).and_then(|m| m.mul(&p1i)).expect("shapes");
    Dsv::new(d0, d1).expect("conjugated differentials square to zero")
}

/// A random DSV of total dimension at most `max`.
pub fn random_dsv_bounded<R: Rng>(rng: &mut R, f: Field, max: usize) -> Dsv {
    loop {
        let (k0, k1, h0, h1) = (rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(0..3));
        if 2 * (k0 + k1) + h0 + h1 <= max {
            return random_dsv(rng, f, k0, k1, h0, h1);
        }
    }
}

pub fn random_chain_map<R: Rng>(rng: &mut R, v: &Dsv, w: &Dsv) -> supercoh_core::Result<DsvMap> {
    let basis = DsvMap::chain_map_basis(v, w)?;
    let coeffs: Vec<BigRational> = basis.iter().map(|_| element(rng, v.field())).collect();
    DsvMap::linear_combination(v, w, &basis, &coeffs)
}

/// Source and target with equal homology half the time, so that both
/// outcomes of the oracle comparison occur.
pub fn random_map_pair<R: Rng>(rng: &mut R, f: Field, max: usize) -> supercoh_core::Result<DsvMap> {
    let v = random_dsv_bounded(rng, f, max);
    let w = if rng.gen_bool(0.5) {
        let (h0, h1) = v.homology();
        let spare = max.saturating_sub(h0 + h1) / 2;
        let k0 = rng.gen_range(0..=spare.min(1));
        let k1 = rng.gen_range(0..=(spare - k0).min(1));
        random_dsv(rng, f, k0, k1, h0, h1)
    } else {
        random_dsv_bounded(rng, f, max)
    };
    random_chain_map(rng, &v, &w)
}

pub fn dsv_oracle(config: &Config) -> SuiteReport {
    let mut r = SuiteReport::new("dsv-oracle");
    let n = config.samples.unwrap_or(200);
    let mut rng = rng(config.seed ^ 0xd5);
    let f = Field::Prime(5);
    for t in 0..n {
        let map = match random_map_pair(&mut rng, f, 6) {
            Ok(m) => m,
            Err(e) => {
                r.check(false, || format!("map {t}: {e}"));
                continue;
            }
        };
        let q = map.is_quasi_iso();
        let h = map.homotopy_inverse();
        r.check(q == h.is_some(), || format!("map {t}: quasi-iso {q}, homotopy inverse {}", h.is_some()));
        if let Some(eq) = h {
            let ok = eq.inverse.compose(&map).map(|g| g.is_quasi_iso()).unwrap_or(false)
                && map.compose(&eq.inverse).map(|g| g.is_quasi_iso()).unwrap_or(false);
            r.check(ok, || format!("map {t}: composite with inverse is not a quasi-isomorphism"));
        }
    }
    r
}

/// Classes of degree `p` mod 2: the generators and random sums of them.
fn sample_classes<R: Rng>(
    rng: &mut R,
    x: &Arc<SimplicialComplex>,
    p: usize,
    extra: usize,
) -> supercoh_core::Result<Vec<CohomologyClass>> {
    let h = cohomology(x, p, 2)?;
    let mut out: Vec<CohomologyClass> = h.generators().to_vec();
    if h.generators().is_empty() {
        return Ok(out);
    }
    for _ in 0..extra {
        let coeffs: Vec<BigInt> = h.generators().iter().map(|_| BigInt::from(rng.gen_range(0..2))).collect();
        let c = h.combination(&coeffs)?;
        let noise = if p > 0 { random_cochain(rng, x, p - 1, 2, 0.3).coboundary() } else { Cochain::zero(x.clone(), 0, 2) };
        out.push(CohomologyClass::new(c.add(&noise)?)?);
    }
    Ok(out)
}

pub fn operations(config: &Config) -> SuiteReport {
    let mut r = SuiteReport::new("operations");
    let extra = config.samples.unwrap_or(4);
    let mut rng = rng(config.seed ^ 0x0b);
    for (name, x) in corpus::all() {
        for q in 0..=x.dim() {
            for modulus in [0u64, 2, 3, 4] {
                for _ in 0..extra.max(1) {
                    let c = random_cochain(&mut rng, &x, q, modulus, 0.5);
                    r.check(c.coboundary().coboundary().is_zero(), || format!("{name}: δδ ≠ 0 in degree {q} mod {modulus}"));
                }
            }
        }
        for p in 0..=x.dim() {
            let classes = match sample_classes(&mut rng, &x, p, extra) {
                Ok(c) => c,
                Err(e) => {
                    r.check(false, || format!("{name} H^{p}: {e}"));
                    continue;
                }
            };
            for (i, c) in classes.iter().enumerate() {
                let label = || format!("{name} degree {p} class {i}");
                let checks = (|| -> supercoh_core::Result<[(&'static str, bool); 5]> {
                    let sq0 = sq(0, c)?;
                    let square = sq(p, c)?;
                    let sq1 = sq(1, c)?;
                    let rho_beta = reduce_mod(bockstein(c)?.cochain(), 2)?;
                    let sq1sq1 = sq(1, &sq1)?;
                    let zero = |d: usize| Cochain::zero(x.clone(), d, 2);
                    let lhs = sq(2, &sq(2, c)?)?;
                    let rhs = sq(3, &sq(1, c)?)?;
                    Ok([
                        ("Sq⁰ = id", sq0.cochain() == c.cochain()),
                        ("Sq^p = cup square", square.cochain() == &cup(c.cochain(), c.cochain())?),
                        ("Sq¹ = ρβ", is_cohomologous(sq1.cochain(), &rho_beta)?),
                        ("Sq¹Sq¹ ~ 0", is_cohomologous(sq1sq1.cochain(), &zero(p + 2))?),
                        ("Sq²Sq² ~ Sq³Sq¹", is_cohomologous(lhs.cochain(), rhs.cochain())?),
                    ])
                })();
                match checks {
                    Ok(list) => {
                        for (law, ok) in list {
                            r.check(ok, || format!("{}: {law}", label()));
                        }
                    }
                    Err(e) => r.check(false, || format!("{}: {e}", label())),
                }
            }
        }
    }
    r
}

pub fn classification(config: &Config) -> SuiteReport {
    let mut r = SuiteReport::new("classification");
    for (pi0, pi1) in [("Z/8", "Z/2"), ("Z/2", "Z/2"), ("Z", "Z/2")] {
        let found = enumerate_symmetric_structures(&group(pi0), &group(pi1), config.cap).map(|v| v.len());
        r.check(found == Ok(2), || format!("({pi0}, {pi1}): {found:?} structures"));
    }
    for (name, d) in catalog() {
        r.check(!d.is_trivial(), || format!("catalog {name} has q = 0"));
        let nonzero = enumerate_symmetric_structures(&d.pi0(), &d.pi1(), config.cap)
            .map(|all| all.into_iter().filter(|s| !s.is_trivial()).collect::<Vec<_>>());
        let ok = match &nonzero {
            Ok(v) => v.iter().all(|s| equivalent(s, &d, config.cap).unwrap_or(false)),
            Err(_) => false,
        };
        r.check(ok, || format!("catalog {name} is not the nonzero structure"));
    }
    let sphere = catalog_entry("sphere").expect("catalog");
    for name in ["KU", "KO"] {
        let target = catalog_entry(name).expect("catalog");
        let ok = sphere.is_compatible(&target, &[vec![1]], &[vec![1]]);
        r.check_result(ok, || format!("unit map sphere → {name}"));
    }
    r
}

pub fn superline_signs() -> SuiteReport {
    let mut r = SuiteReport::new("superline-signs");
    for name in corpus::BASE_NAMES {
        let x = corpus::by_name(name).expect("corpus");
        for flavor in [Flavor::Real, Flavor::Complex] {
            let odd = SuperLine::odd(flavor, x.clone());
            let even = SuperLine::trivial(flavor, x.clone());
            for k in 0..x.component_count() {
                let s = odd.symmetry_sign(&odd, k);
                r.check(s == Ok(-1), || format!("{name} {flavor}: odd ⊗ odd sign {s:?}"));
                let s = odd.symmetry_sign(&even, k);
                r.check(s == Ok(1), || format!("{name} {flavor}: odd ⊗ even sign {s:?}"));
            }
        }
    }
    for f in [Field::Rational, Field::Prime(5), Field::Prime(3)] {
        let odd = Dsv::odd_line(f);
        let s = swap_map(&odd, &odd).ok().and_then(|m| m.as_scalar());
        r.check(s == Some(f.from_i64(-1)), || format!("swap on odd ⊗ odd over {f:?}: {s:?}"));
        let unit = Dsv::unit(f);
        let s = swap_map(&unit, &unit).ok().and_then(|m| m.as_scalar());
        r.check(s == Some(f.from_i64(1)), || format!("swap on unit ⊗ unit over {f:?}: {s:?}"));
    }
    r
}

/// A bounded complex built from cancelling pairs between adjacent degrees
/// plus homology, written in a random basis.
pub fn random_chain_complex<R: Rng>(rng: &mut R, f: Field, lowest: i64, len: usize) -> BoundedChainComplex {
    let pairs: Vec<usize> = (0..len.saturating_sub(1)).map(|_| rng.gen_range(0..3)).collect();
    let homology: Vec<usize> = (0..len).map(|_| rng.gen_range(0..3)).collect();
    let before = |k: usize| if k > 0 { pairs[k - 1] } else { 0 };
    let dims: Vec<usize> =
        (0..len).map(|k| homology[k] + before(k) + pairs.get(k).copied().unwrap_or(0)).collect();
    let bases: Vec<(FieldMatrix, FieldMatrix)> = dims.iter().map(|&n| invertible(rng, f, n)).collect();
    let boundaries = (0..len.saturating_sub(1))
        .map(|k| {
            let mut m = FieldMatrix::zeros(f, dims[k], dims[k + 1]);
            let (row0, col0) = (homology[k] + before(k), homology[k + 1]);
            for i in 0..pairs[k] {
                m.set(row0 + i, col0 + i, f.from_i64(1));
            }
            bases[k].0.mul(&m).and_then(|m| m.mul(&bases[k + 1].1)).expect("shapes")
        })
        .collect();
    BoundedChainComplex::new(f, lowest, dims, boundaries).expect("∂∂ = 0 by construction")
}

pub fn euler(config: &Config) -> SuiteReport {
    let mut r = SuiteReport::new("euler");
    let n = config.samples.unwrap_or(100);
    let mut rng = rng(config.seed ^ 0xe1);
    for t in 0..n {
        let f = if t % 2 == 0 { Field::Prime(5) } else { Field::Rational };
        let lowest = rng.gen_range(-3..=3);
        let len = rng.gen_range(1..=5);
        let e = random_chain_complex(&mut rng, f, lowest, len);
        let alternating: i64 = e
            .dims()
            .iter()
            .enumerate()
            .map(|(k, &d)| if (lowest + k as i64).rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum();
        let v = e.epsilon();
        r.check(v.euler_char() == alternating, || format!("complex {t}: χ(ε(E)) = {} vs {alternating}", v.euler_char()));
        let homological: i64 = e
            .homology()
            .iter()
            .enumerate()
            .map(|(k, &d)| if (lowest + k as i64).rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum();
        r.check(homological == alternating, || format!("complex {t}: homology gives {homological}"));
        let (low, len) = (rng.gen_range(-2..=2), rng.gen_range(1..=3));
        let other = random_chain_complex(&mut rng, f, low, len).epsilon();
        let sum = v.direct_sum(&other).map(|s| s.euler_char());
        r.check(sum == Ok(v.euler_char() + other.euler_char()), || format!("complex {t}: χ not additive"));
        let product = v.tensor(&other).map(|s| s.euler_char());
        r.check(product == Ok(v.euler_char() * other.euler_char()), || format!("complex {t}: χ not multiplicative"));
    }
    r
}
