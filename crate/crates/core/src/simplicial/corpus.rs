//! Built-in test complexes.
//!
//! | name       | complex                                          |
//! |------------|--------------------------------------------------|
//! | `point`    | a single vertex                                  |
//! | `s1`       | boundary of a triangle (3 vertices)              |
//! | `s2`       | boundary of a tetrahedron                        |
//! | `t2`       | 7-vertex torus                                   |
//! | `klein`    | 8-vertex Klein bottle                            |
//! | `rp2`      | 6-vertex real projective plane                   |
//! | `s1xs1`    | staircase product `s1 x s1`                      |
//! | `s1xs2`    | staircase product `s1 x s2`                      |
//! | `rp2xrp2`  | staircase product `rp2 x rp2`                    |

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{product, ProductComplex, SimplicialComplex};

fn build(n: usize, top: &[&[u32]]) -> Arc<SimplicialComplex> {
    let top = top.iter().map(|s| s.to_vec()).collect();
    Arc::new(SimplicialComplex::new(n, top).expect("corpus complexes are valid"))
}

pub fn point() -> Arc<SimplicialComplex> {
    build(1, &[&[0]])
}

pub fn circle() -> Arc<SimplicialComplex> {
    build(3, &[&[0, 1], &[1, 2], &[0, 2]])
}

pub fn sphere() -> Arc<SimplicialComplex> {
    build(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
}

/// Möbius' 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus() -> Arc<SimplicialComplex> {
    let mut top = Vec::new();
    for i in 0..7u32 {
        for tri in [[i, i + 1, i + 3], [i, i + 2, i + 3]] {
            let mut t: Vec<u32> = tri.iter().map(|v| v % 7).collect();
            t.sort_unstable();
            top.push(t);
        }
    }
    Arc::new(SimplicialComplex::new(7, top).expect("torus is valid"))
}

pub fn klein_bottle() -> Arc<SimplicialComplex> {
    build(
        8,
        &[
            &[0, 1, 2],
            &[0, 1, 3],
            &[0, 2, 4],
            &[0, 3, 4],
            &[1, 2, 5],
            &[1, 3, 6],
            &[1, 4, 5],
            &[1, 4, 6],
            &[2, 3, 5],
            &[2, 3, 7],
            &[2, 4, 6],
            &[2, 6, 7],
            &[3, 4, 7],
            &[3, 5, 6],
            &[4, 5, 7],
            &[5, 6, 7],
        ],
    )
}

pub fn projective_plane() -> Arc<SimplicialComplex> {
    build(
        6,
        &[
            &[0, 1, 3],
            &[0, 1, 4],
            &[0, 2, 3],
            &[0, 2, 5],
            &[0, 4, 5],
            &[1, 2, 4],
            &[1, 2, 5],
            &[1, 3, 5],
            &[2, 3, 4],
            &[3, 4, 5],
        ],
    )
}

pub fn product_of(left: &Arc<SimplicialComplex>, right: &Arc<SimplicialComplex>) -> ProductComplex {
    product(left, right).expect("corpus products fit the dimension cap")
}

pub const NAMES: [&str; 9] = ["point", "s1", "s2", "t2", "klein", "rp2", "s1xs1", "s1xs2", "rp2xrp2"];

/// The non-product complexes.
pub const BASE_NAMES: [&str; 6] = ["point", "s1", "s2", "t2", "klein", "rp2"];

pub fn by_name(name: &str) -> Option<Arc<SimplicialComplex>> {
    Some(match name {
        "point" => point(),
        "s1" => circle(),
        "s2" => sphere(),
        "t2" => torus(),
        "klein" => klein_bottle(),
        "rp2" => projective_plane(),
        _ => return product_by_name(name).map(|p| p.complex),
    })
}

/// Product complexes of the corpus, with their factors.
pub fn product_by_name(name: &str) -> Option<ProductComplex> {
    let (l, r) = match name {
        "s1xs1" => (circle(), circle()),
        "s1xs2" => (circle(), sphere()),
        "rp2xrp2" => (projective_plane(), projective_plane()),
        _ => return None,
    };
    Some(product_of(&l, &r))
}

pub fn all() -> Vec<(&'static str, Arc<SimplicialComplex>)> {
    NAMES.iter().map(|&n| (n, by_name(n).expect("known name"))).collect()
}
