use super::{log_sum_exp, CandidateSet};
use crate::disk::log_pseudo_distance;

const DENSE_LIMIT: usize = 2048;

/// Cached `log|q|` at every candidate and, for moderate sets, the full matrix
/// of log pseudo-distances. Index-based search code works on this.
pub(crate) struct SetKernel<'a> {
    pub set: &'a CandidateSet,
    pub log_q: Vec<f64>,
    log_d: Option<Vec<f64>>,
}

impl<'a> SetKernel<'a> {
    pub fn new(set: &'a CandidateSet) -> Self {
        let n = set.len();
        let log_q = set.points().iter().map(|z| set.weight().log_abs(z.z())).collect();
        let log_d = (n <= DENSE_LIMIT).then(|| {
            let mut m = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..n {
                    m[i * n + j] = if i == j {
                        f64::NEG_INFINITY
                    } else {
                        log_pseudo_distance(set.points()[i].z(), set.points()[j].z())
                    };
                }
            }
            m
        });
        SetKernel { set, log_q, log_d }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.log_q.len()
    }

    #[inline]
    pub fn log_d(&self, i: usize, j: usize) -> f64 {
        match &self.log_d {
            Some(m) => m[i * self.len() + j],
            None if i == j => f64::NEG_INFINITY,
            None => log_pseudo_distance(self.set.points()[i].z(), self.set.points()[j].z()),
        }
    }

    /// `log|B_q(Z, e_i)|` for every candidate `e_i`, `Z` given by indices.
    pub fn profile(&self, idx: &[usize]) -> Vec<f64> {
        (0..self.len()).map(|i| self.log_q[i] + idx.iter().map(|&j| self.log_d(i, j)).sum::<f64>()).collect()
    }

    /// `log|B_q(Z without entry skip, e_i)|`.
    pub fn deleted_value(&self, idx: &[usize], skip: usize, i: usize) -> f64 {
        let mut s = self.log_q[i];
        for (k, &j) in idx.iter().enumerate() {
            if k != skip {
                s += self.log_d(i, j);
            }
        }
        s
    }

    pub fn log_v(&self, idx: &[usize]) -> f64 {
        let mut s = 0.0;
        for (k, &i) in idx.iter().enumerate() {
            s += self.log_q[i];
            for &j in &idx[..k] {
                s += self.log_d(j, i);
            }
        }
        s
    }

    pub fn log_mu(&self, idx: &[usize]) -> f64 {
        let terms: Vec<f64> = (0..idx.len()).map(|k| -self.deleted_value(idx, k, idx[k])).collect();
        log_sum_exp(&terms)
    }

    /// `(log M, argmax)` with the smallest index on ties.
    pub fn log_m(&self, idx: &[usize]) -> (f64, usize) {
        let prof = self.profile(idx);
        argmax(&prof)
    }
}

/// Largest entry and its first index; `(-inf, 0)` for all `-inf`.
pub(crate) fn argmax(v: &[f64]) -> (f64, usize) {
    let mut best = f64::NEG_INFINITY;
    let mut arg = 0;
    for (i, &x) in v.iter().enumerate() {
        if x > best {
            best = x;
            arg = i;
        }
    }
    (best, arg)
}
