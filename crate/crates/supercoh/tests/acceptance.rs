//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the table is always printed; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use supercoh::verify::{self, Config};
use supercoh_core::brauer::{abstract_group, element_order, twist_subgroup, BrauerGroup, Order, Variant};
use supercoh_core::dsv::{swap_map, Dsv, Field};
use supercoh_core::linalg::AbelianGroupPresentation;
use supercoh_core::ops::{cup, reduce_mod, sq};
use supercoh_core::simplicial::{corpus, is_cohomologous, Cochain, CohomologyClass};
use supercoh_core::stable2type::{catalog, catalog_entry, enumerate_symmetric_structures};
use supercoh_core::superline::{Flavor, SuperLine};

const CAP: u64 = 1 << 16;

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok { Ok(()) } else { Err(msg()) }
}

fn group(s: &str) -> AbelianGroupPresentation {
    s.parse().unwrap()
}

fn point_groups() -> Outcome {
    let x = corpus::point();
    let ku = abstract_group(&x, Variant::KU).map_err(|e| e.to_string())?;
    let ko = abstract_group(&x, Variant::KO).map_err(|e| e.to_string())?;
    ensure(ku == group("Z/2"), || format!("KU(point) = {ku}"))?;
    ensure(ko == group("Z/8"), || format!("KO(point) = {ko}"))
}

fn ko_extension() -> Outcome {
    let x = corpus::projective_plane();
    let twist = twist_subgroup(&x, Variant::KO).map_err(|e| e.to_string())?;
    ensure(twist == group("Z/4"), || format!("twist subgroup {twist}"))?;
    let g = BrauerGroup::new(&x, Variant::KO).map_err(|e| e.to_string())?;
    let w = g.element(&[BigInt::zero()], &[BigInt::one()], &[BigInt::zero()]).map_err(|e| e.to_string())?;
    let order = element_order(&w, 64).map_err(|e| e.to_string())?;
    ensure(order == Order::Finite(4), || format!("order of (0,w,0) is {order}"))
}

fn ku_extension() -> Outcome {
    let (b1, b2, sum) = verify::ku_extension_witness().map_err(|e| e.to_string())?;
    let x = sum.base().clone();
    let run = || -> supercoh_core::Result<(bool, bool, bool)> {
        // ρ(c) = ρβ(b₁b₂) = Sq¹(b₁b₂), which is nonzero mod 2.
        let sq1 = sq(1, &CohomologyClass::new(cup(&b1, &b2)?)?)?;
        let agrees = is_cohomologous(&reduce_mod(sum.c(), 2)?, sq1.cochain())?;
        let sq1_zero = is_cohomologous(sq1.cochain(), &Cochain::zero(x.clone(), 3, 2))?;
        let c_zero = is_cohomologous(sum.c(), &Cochain::zero(x.clone(), 3, 0))?;
        Ok((agrees, sq1_zero, c_zero))
    };
    let (agrees, sq1_zero, c_zero) = run().map_err(|e| e.to_string())?;
    ensure(agrees, || "ρ(c) is not Sq¹(b₁b₂)".into())?;
    ensure(!sq1_zero, || "Sq¹(b₁b₂) ~ 0".into())?;
    ensure(!c_zero, || "c ~ 0".into())
}

fn suite(name: &str, samples: Option<usize>) -> Outcome {
    let config = Config { samples, ..Config::default() };
    let r = verify::run_suite(name, &config).expect("known suite");
    ensure(r.checks > 0, || format!("{name}: no checks ran"))?;
    ensure(r.passed(), || format!("{} of {} checks failed: {}", r.failures.len(), r.checks, r.failures.join("; ")))
}

fn group_axioms() -> Outcome {
    // 100 triples, 4 laws, 2 variants, 9 complexes.
    let config = Config { samples: Some(100), ..Config::default() };
    let r = verify::group_axioms(&config);
    ensure(r.checks == 100 * 4 * 2 * corpus::all().len(), || format!("ran {} checks", r.checks))?;
    ensure(r.passed(), || r.failures.join("; "))
}

fn dsv_oracle() -> Outcome {
    let mut rng = verify::rng(2024);
    let f = Field::Prime(5);
    let (mut yes, mut no) = (0, 0);
    for t in 0..200 {
        let map = verify::random_map_pair(&mut rng, f, 6).map_err(|e| e.to_string())?;
        ensure(map.source().dim() <= 6 && map.target().dim() <= 6, || format!("map {t} too large"))?;
        let q = map.is_quasi_iso();
        let h = map.homotopy_inverse();
        ensure(q == h.is_some(), || format!("map {t}: quasi-iso {q}, inverse {}", h.is_some()))?;
        // A quasi-isomorphism cannot change homology dimensions.
        if q {
            ensure(map.source().homology() == map.target().homology(), || format!("map {t}: homology differs"))?;
            yes += 1;
        } else {
            no += 1;
        }
    }
    ensure(yes >= 20 && no >= 20, || format!("degenerate sample: {yes} equivalences, {no} others"))
}

fn classification() -> Outcome {
    for (pi0, pi1) in [("Z/8", "Z/2"), ("Z/2", "Z/2"), ("Z", "Z/2")] {
        let n = enumerate_symmetric_structures(&group(pi0), &group(pi1), CAP).map_err(|e| e.to_string())?.len();
        ensure(n == 2, || format!("({pi0}, {pi1}) has {n} structures"))?;
    }
    for (name, d) in catalog() {
        ensure(d.q().iter().flatten().any(|&v| v != 0), || format!("{name} has q = 0"))?;
    }
    let sphere = catalog_entry("sphere").unwrap();
    for name in ["KU", "KO"] {
        let ok = sphere.is_compatible(&catalog_entry(name).unwrap(), &[vec![1]], &[vec![1]]).map_err(|e| e.to_string())?;
        ensure(ok, || format!("unit map to {name} is not compatible"))?;
    }
    Ok(())
}

fn superline_signs() -> Outcome {
    for flavor in [Flavor::Real, Flavor::Complex] {
        let odd = SuperLine::odd(flavor, corpus::point());
        let s = odd.symmetry_sign(&odd, 0).map_err(|e| e.to_string())?;
        ensure(s == -1, || format!("{flavor} odd ⊗ odd sign {s}"))?;
    }
    for f in [Field::Rational, Field::Prime(5)] {
        let odd = Dsv::odd_line(f);
        let s = swap_map(&odd, &odd).map_err(|e| e.to_string())?.as_scalar();
        ensure(s == Some(f.from_i64(-1)), || format!("swap over {f:?} is {s:?}"))?;
    }
    Ok(())
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { name: "point groups KU = Z/2, KO = Z/8", limit: Duration::from_secs(1), run: point_groups },
        Criterion { name: "KO twist on RP² = Z/4, order of w = 4", limit: Duration::from_secs(1), run: ko_extension },
        Criterion { name: "KU extension on RP²×RP² is nontrivial", limit: Duration::from_secs(60), run: ku_extension },
        Criterion { name: "group axioms on the corpus", limit: Duration::from_secs(300), run: group_axioms },
        Criterion { name: "quasi-iso ⟺ homotopy inverse over F5", limit: Duration::from_secs(60), run: dsv_oracle },
        Criterion { name: "operation identities on the corpus", limit: Duration::from_secs(120), run: || suite("operations", None) },
        Criterion { name: "classification counts and catalog", limit: Duration::from_secs(1), run: classification },
        Criterion { name: "odd superline and odd DSV signs", limit: Duration::from_secs(1), run: superline_signs },
        Criterion { name: "Euler characteristic laws", limit: Duration::from_secs(30), run: || suite("euler", Some(100)) },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed <= c.limit, || format!("took {elapsed:.2?}, limit {:?}", c.limit))
        });
        match &result {
            Ok(()) => println!("criterion {}: PASS  {:<42} {elapsed:.2?}", i + 1, c.name),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {:<42} {elapsed:.2?}  {msg}", i + 1, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
