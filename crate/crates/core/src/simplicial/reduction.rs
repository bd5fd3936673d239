//! Reduction of the integral cochain complex by cancelling pairs of cells
//! joined by a `±1` coboundary coefficient.
//!
//! Each cancellation is a chain homotopy equivalence over `Z`, hence over
//! every `Z/n`, so one reduction serves all coefficient moduli. The
//! recorded steps give the projection `f: C → C'`, the inclusion
//! `g: C' → C` and the homotopy `gf ≃ id` needed to pull solutions back.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::SimplicialComplex;
use crate::linalg::IntMatrix;

/// Cancellation of `b ∈ C^q` against `c ∈ C^{q+1}` with `δb = u c + γ`.
#[derive(Clone, Debug)]
struct Step {
    q: usize,
    b: usize,
    c: usize,
    unit: BigInt,
    /// Row of `c`: coefficients of `c` in `δa` for the other live `a ∈ C^q`.
    beta: Vec<(usize, BigInt)>,
    /// Column of `b`: `γ`, over the other live cells of `C^{q+1}`.
    gamma: Vec<(usize, BigInt)>,
}

#[derive(Clone, Debug)]
pub(crate) struct Reduction {
    survivors: Vec<Vec<usize>>,
    reduced: Vec<IntMatrix>,
    steps: Vec<Step>,
}

struct Sparse {
    rows: Vec<BTreeMap<usize, BigInt>>,
    cols: Vec<BTreeSet<usize>>,
}

impl Sparse {
    fn add(&mut self, r: usize, c: usize, v: &BigInt) {
        let e = self.rows[r].entry(c).or_insert_with(BigInt::zero);
        *e += v;
        if e.is_zero() {
            self.rows[r].remove(&c);
            self.cols[c].remove(&r);
        } else {
            self.cols[c].insert(r);
        }
    }

    fn clear_row(&mut self, r: usize) {
        for c in core::mem::take(&mut self.rows[r]).into_keys() {
            self.cols[c].remove(&r);
        }
    }

    fn clear_col(&mut self, c: usize) {
        for r in core::mem::take(&mut self.cols[c]) {
            self.rows[r].remove(&c);
        }
    }
}

impl Reduction {
    pub(crate) fn new(x: &SimplicialComplex) -> Self {
        let top = x.dim();
        let mut d: Vec<Sparse> = (0..top)
            .map(|q| {
                let mut m = Sparse {
                    rows: (0..x.count(q + 1)).map(|_| BTreeMap::new()).collect(),
                    cols: (0..x.count(q)).map(|_| BTreeSet::new()).collect(),
                };
                for t in 0..x.count(q + 1) {
                    for (j, &f) in x.faces(q + 1, t).iter().enumerate() {
                        let s = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                        m.add(t, f, &s);
                    }
                }
                m
            })
            .collect();
        let mut alive: Vec<Vec<bool>> = (0..=top).map(|q| alloc::vec![true; x.count(q)]).collect();
        let mut steps = Vec::new();
        let mut threshold = 0usize;
        loop {
            let mut progress = false;
            let mut any_unit = false;
            for q in 0..top {
                for b in 0..d[q].cols.len() {
                    let best = d[q].cols[b]
                        .iter()
                        .filter(|&&c| d[q].rows[c][&b].abs().is_one())
                        .map(|&c| ((d[q].cols[b].len() - 1) * (d[q].rows[c].len() - 1), c))
                        .min();
                    let Some((cost, c)) = best else { continue };
                    any_unit = true;
                    if cost > threshold {
                        continue;
                    }
                    steps.push(cancel(&mut d, q, b, c));
                    alive[q][b] = false;
                    alive[q + 1][c] = false;
                    progress = true;
                }
            }
            if !any_unit {
                break;
            }
            threshold = if progress { 0 } else { (threshold * 2).max(1) };
        }
        let survivors: Vec<Vec<usize>> =
            alive.iter().map(|a| (0..a.len()).filter(|&i| a[i]).collect()).collect();
        let reduced = (0..top)
            .map(|q| {
                let (rows, cols) = (&survivors[q + 1], &survivors[q]);
                let mut m = IntMatrix::zeros(rows.len(), cols.len());
                for (i, &r) in rows.iter().enumerate() {
                    for (j, &c) in cols.iter().enumerate() {
                        if let Some(v) = d[q].rows[r].get(&c) {
                            m[(i, j)] = v.clone();
                        }
                    }
                }
                m
            })
            .collect();
        Reduction { survivors, reduced, steps }
    }

    pub(crate) fn survivors(&self, q: usize) -> &[usize] {
        self.survivors.get(q).map_or(&[], Vec::as_slice)
    }

    /// Reduced `δ_q` between the surviving cells of degrees `q` and `q + 1`.
    pub(crate) fn differential(&self, q: usize) -> IntMatrix {
        match self.reduced.get(q) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(self.survivors(q + 1).len(), self.survivors(q).len()),
        }
    }

    /// `f(x)` on the surviving `q`-cells, plus the homotopy coefficients
    /// `t_k` of the steps that cancel a `q`-cell.
    pub(crate) fn project(&self, q: usize, values: &[BigInt]) -> (Vec<BigInt>, Vec<(usize, BigInt)>) {
        let mut x = values.to_vec();
        let mut homotopy = Vec::new();
        for (k, s) in self.steps.iter().enumerate() {
            if s.q + 1 != q || x[s.c].is_zero() {
                continue;
            }
            let t = &s.unit * &x[s.c];
            for (r, g) in &s.gamma {
                x[*r] -= g * &t;
            }
            homotopy.push((k, t));
        }
        let out = self.survivors(q).iter().map(|&i| x[i].clone()).collect();
        (out, homotopy)
    }

    /// `g(y) + Σ t_k b_k` for `y` on the surviving `q`-cells, as a full
    /// cochain vector of length `len`.
    pub(crate) fn lift(&self, q: usize, y: &[BigInt], len: usize, homotopy: &[(usize, BigInt)]) -> Vec<BigInt> {
        let mut x: Vec<BigInt> = (0..len).map(|_| BigInt::zero()).collect();
        for (&i, v) in self.survivors(q).iter().zip(y) {
            x[i] = v.clone();
        }
        let mut extra = homotopy.iter().rev().peekable();
        for (k, s) in self.steps.iter().enumerate().rev() {
            if s.q != q {
                continue;
            }
            let mut acc = BigInt::zero();
            for (a, beta) in &s.beta {
                acc += beta * &x[*a];
            }
            let mut v = -(&s.unit * acc);
            if let Some((_, t)) = extra.next_if(|(j, _)| *j == k) {
                v += t;
            }
            x[s.b] = v;
        }
        x
    }
}

fn cancel(d: &mut [Sparse], q: usize, b: usize, c: usize) -> Step {
    let m = &mut d[q];
    let unit = m.rows[c][&b].clone();
    let beta: Vec<(usize, BigInt)> =
        m.rows[c].iter().filter(|(a, _)| **a != b).map(|(a, v)| (*a, v.clone())).collect();
    let gamma: Vec<(usize, BigInt)> =
        m.cols[b].iter().filter(|&&r| r != c).map(|&r| (r, m.rows[r][&b].clone())).collect();
    for (r, g) in &gamma {
        let scale = -(g * &unit);
        for (a, be) in &beta {
            m.add(*r, *a, &(&scale * be));
        }
    }
    m.clear_row(c);
    m.clear_col(b);
    if q > 0 {
        d[q - 1].clear_row(b);
    }
    if let Some(next) = d.get_mut(q + 1) {
        next.clear_col(c);
    }
    Step { q, b, c, unit, beta, gamma }
}
