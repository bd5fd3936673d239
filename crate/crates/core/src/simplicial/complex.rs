use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use core::fmt;

use once_cell::race::OnceBox;

use super::reduction::Reduction;
use crate::{Error, Result};

pub const DEFAULT_DIMENSION_CAP: usize = 6;

/// A finite simplicial complex on vertices `0..vertex_count`, given by its
/// maximal simplices and closed under faces on construction.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertex_count: usize,
    maximal: Vec<Vec<u32>>,
    simplices: Vec<Vec<Vec<u32>>>,
    index: Vec<BTreeMap<Vec<u32>, usize>>,
    // faces[q][i][j]: index of the face of the i-th q-simplex omitting vertex j
    faces: Vec<Vec<Vec<usize>>>,
    reduction: ReductionCache,
}

#[derive(Default)]
struct ReductionCache(OnceBox<Reduction>);

impl Clone for ReductionCache {
    fn clone(&self) -> Self {
        ReductionCache::default()
    }
}

impl fmt::Debug for ReductionCache {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ReductionCache")
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    pub fn new(vertex_count: usize, maximal_simplices: Vec<Vec<u32>>) -> Result<Self> {
        Self::with_dimension_cap(vertex_count, maximal_simplices, DEFAULT_DIMENSION_CAP)
    }

    pub fn with_dimension_cap(
        vertex_count: usize,
        maximal_simplices: Vec<Vec<u32>>,
        cap: usize,
    ) -> Result<Self> {
        let mut top = 0;
        for s in &maximal_simplices {
            if s.is_empty() {
                return Err(Error::InvalidSimplex("empty simplex"));
            }
            if s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidSimplex("vertices must be strictly increasing"));
            }
            if s.iter().any(|&v| v as usize >= vertex_count) {
                return Err(Error::InvalidSimplex("vertex out of range"));
            }
            if s.len() - 1 > cap {
                return Err(Error::DimensionCap { dim: s.len() - 1, cap });
            }
            top = top.max(s.len() - 1);
        }
        let mut sets: Vec<BTreeSet<Vec<u32>>> = vec![BTreeSet::new(); top + 1];
        for v in 0..vertex_count as u32 {
            sets[0].insert(vec![v]);
        }
        for s in &maximal_simplices {
            let k = s.len();
            // every nonempty subset of s
            for mask in 1u32..(1u32 << k) {
                let face: Vec<u32> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                sets[face.len() - 1].insert(face);
            }
        }
        let simplices: Vec<Vec<Vec<u32>>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let index: Vec<BTreeMap<Vec<u32>, usize>> = simplices
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let mut faces = vec![vec![Vec::new(); simplices[0].len()]];
        for q in 1..simplices.len() {
            let level = simplices[q]
                .iter()
                .map(|s| {
                    (0..s.len())
                        .map(|j| {
                            let mut f = s.clone();
                            f.remove(j);
                            index[q - 1][&f]
                        })
                        .collect()
                })
                .collect();
            faces.push(level);
        }
        Ok(SimplicialComplex {
            vertex_count,
            maximal: maximal_simplices,
            simplices,
            index,
            faces,
            reduction: ReductionCache::default(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn maximal_simplices(&self) -> &[Vec<u32>] {
        &self.maximal
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    /// Number of `q`-simplices (zero above the dimension).
    pub fn count(&self, q: usize) -> usize {
        self.simplices.get(q).map_or(0, Vec::len)
    }

    pub fn simplices(&self, q: usize) -> &[Vec<u32>] {
        self.simplices.get(q).map_or(&[], |v| v.as_slice())
    }

    /// Integral reduction of the cochain complex, computed once.
    pub(crate) fn reduction(&self) -> &Reduction {
        self.reduction.0.get_or_init(|| alloc::boxed::Box::new(Reduction::new(self)))
    }

    pub fn index_of(&self, simplex: &[u32]) -> Option<usize> {
        let q = simplex.len().checked_sub(1)?;
        self.index.get(q)?.get(simplex).copied()
    }

    pub(crate) fn faces(&self, q: usize, i: usize) -> &[usize] {
        &self.faces[q][i]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(q, s)| if q % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// Component label per vertex; components are numbered in order of
    /// their smallest vertex.
    pub fn component_labels(&self) -> Vec<usize> {
        let n = self.vertex_count;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in self.simplices(1) {
            let (a, b) = (find(&mut parent, e[0] as usize), find(&mut parent, e[1] as usize));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut labels = vec![usize::MAX; n];
        let mut next = 0;
        for v in 0..n {
            let r = find(&mut parent, v);
            if labels[r] == usize::MAX {
                labels[r] = next;
                next += 1;
            }
            labels[v] = labels[r];
        }
        labels
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().into_iter().max().map_or(0, |m| m + 1)
    }

    /// The cone on this complex with apex `vertex_count`.
    pub fn cone(&self) -> Result<Self> {
        let apex = self.vertex_count as u32;
        let mut top: Vec<Vec<u32>> = self
            .maximal
            .iter()
            .map(|s| {
                let mut c = s.clone();
                c.push(apex);
                c
            })
            .collect();
        // isolated vertices not covered by a listed simplex
        let covered: BTreeSet<u32> = self.maximal.iter().flatten().copied().collect();
        top.extend((0..apex).filter(|v| !covered.contains(v)).map(|v| vec![v, apex]));
        Self::new(self.vertex_count + 1, top)
    }
}

/// The staircase (shuffle) triangulation of a product, together with its
/// two factor complexes. Vertex `(x, y)` is labelled `x * |Y| + y`.
#[derive(Clone, Debug)]
pub struct ProductComplex {
    pub complex: Arc<SimplicialComplex>,
    pub left: Arc<SimplicialComplex>,
    pub right: Arc<SimplicialComplex>,
}

impl ProductComplex {
    pub fn projection_left(&self) -> SimplicialMap {
        let ny = self.right.vertex_count() as u32;
        let map = (0..self.complex.vertex_count() as u32).map(|v| v / ny).collect();
        SimplicialMap::new(self.complex.clone(), self.left.clone(), map).expect("projection is simplicial")
    }

    pub fn projection_right(&self) -> SimplicialMap {
        let ny = self.right.vertex_count() as u32;
        let map = (0..self.complex.vertex_count() as u32).map(|v| v % ny).collect();
        SimplicialMap::new(self.complex.clone(), self.right.clone(), map).expect("projection is simplicial")
    }
}

pub fn product(x: &Arc<SimplicialComplex>, y: &Arc<SimplicialComplex>) -> Result<ProductComplex> {
    let ny = y.vertex_count() as u32;
    let mut top = BTreeSet::new();
    let cover = |c: &SimplicialComplex| -> Vec<Vec<u32>> {
        let covered: BTreeSet<u32> = c.maximal_simplices().iter().flatten().copied().collect();
        let mut m = c.maximal_simplices().to_vec();
        m.extend((0..c.vertex_count() as u32).filter(|v| !covered.contains(v)).map(|v| vec![v]));
        m
    };
    for s in cover(x) {
        for t in cover(y) {
            let (p, q) = (s.len() - 1, t.len() - 1);
            // lattice paths from (0,0) to (p,q): choose which of the p+q steps go right
            for mask in 0u64..(1u64 << (p + q)) {
                if mask.count_ones() as usize != p {
                    continue;
                }
                let (mut i, mut j) = (0, 0);
                let mut path = vec![s[0] * ny + t[0]];
                for step in 0..p + q {
                    if mask >> step & 1 == 1 {
                        i += 1;
                    } else {
                        j += 1;
                    }
                    path.push(s[i] * ny + t[j]);
                }
                top.insert(path);
            }
        }
    }
    let complex = SimplicialComplex::new(x.vertex_count() * y.vertex_count(), top.into_iter().collect())?;
    Ok(ProductComplex {
        complex: Arc::new(complex),
        left: x.clone(),
        right: y.clone(),
    })
}

/// A vertex map carrying simplices to simplices, weakly order-preserving
/// on each simplex so ordered faces pull back without signs.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
    vertex_map: Vec<u32>,
}

impl SimplicialMap {
    pub fn new(
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
        vertex_map: Vec<u32>,
    ) -> Result<Self> {
        if vertex_map.len() != source.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: source.vertex_count(),
                found: vertex_map.len(),
            });
        }
        if vertex_map.iter().any(|&v| v as usize >= target.vertex_count()) {
            return Err(Error::InvalidMap("vertex image out of range"));
        }
        for s in source.maximal_simplices() {
            let img: Vec<u32> = s.iter().map(|&v| vertex_map[v as usize]).collect();
            if img.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidMap("map must be order-preserving on simplices"));
            }
            let mut distinct = img.clone();
            distinct.dedup();
            if target.index_of(&distinct).is_none() {
                return Err(Error::InvalidMap("image of a simplex is not a simplex"));
            }
        }
        Ok(SimplicialMap {
            source,
            target,
            vertex_map,
        })
    }

    pub fn source(&self) -> &Arc<SimplicialComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialComplex> {
        &self.target
    }

    /// Index of the image of the `i`-th `q`-simplex, if it is nondegenerate.
    pub(crate) fn image(&self, q: usize, i: usize) -> Option<usize> {
        let img: Vec<u32> = self.source.simplices(q)[i]
            .iter()
            .map(|&v| self.vertex_map[v as usize])
            .collect();
        if img.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        self.target.index_of(&img)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_triangle() {
        let c = SimplicialComplex::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!((c.count(0), c.count(1), c.count(2)), (3, 3, 1));
        assert_eq!(c.simplices(1), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(c.faces(2, 0), &[2, 1, 0]);
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SimplicialComplex::new(3, vec![vec![1, 0]]).is_err());
        assert!(SimplicialComplex::new(2, vec![vec![0, 2]]).is_err());
        assert!(SimplicialComplex::new(2, vec![vec![]]).is_err());
        let big: Vec<u32> = (0..8).collect();
        assert!(matches!(
            SimplicialComplex::new(8, vec![big]),
            Err(Error::DimensionCap { dim: 7, cap: 6 })
        ));
    }

    #[test]
    fn components() {
        let c = SimplicialComplex::new(5, vec![vec![0, 3], vec![1, 2]]).unwrap();
        assert_eq!(c.component_labels(), vec![0, 1, 1, 0, 2]);
        assert_eq!(c.component_count(), 3);
    }

    #[test]
    fn product_of_intervals_is_square() {
        let i = Arc::new(SimplicialComplex::new(2, vec![vec![0, 1]]).unwrap());
        let p = product(&i, &i).unwrap();
        assert_eq!(p.complex.maximal_simplices(), &[vec![0, 1, 3], vec![0, 2, 3]]);
        assert_eq!(p.complex.euler_characteristic(), 1);
    }

    #[test]
    fn non_simplicial_map_rejected() {
        let edge = Arc::new(SimplicialComplex::new(2, vec![vec![0, 1]]).unwrap());
        let two_points = Arc::new(SimplicialComplex::new(2, vec![]).unwrap());
        assert!(SimplicialMap::new(edge.clone(), two_points, vec![0, 1]).is_err());
        let rev = SimplicialMap::new(edge.clone(), edge, vec![1, 0]);
        assert!(matches!(rev, Err(Error::InvalidMap(_))));
    }
}
