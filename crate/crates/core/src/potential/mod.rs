//! Set functions of finite candidate sets: the weighted Vandermonde-type
//! product `V`, the reciprocal sum `μ`, the Chebyshev-type maximum `M`,
//! extremal (Fekete-type) tuple search, and the decay envelope `h` with the
//! derived map `φ(ε)`.

mod envelope;
mod fekete;
mod kernel;

use serde::Serialize;

use crate::disk::{pseudo_distance, weighted_blaschke_log_abs, DiskPoint, WeightFunction, ZeroTuple, COINCIDENCE_TOL};
use crate::error::{HardyError, Result};

pub use envelope::{envelope_h, phi_of_epsilon, DecayEnvelope, PhiMap, PhiSolution};
pub use fekete::{
    binomial, check_scan_invariants, fekete_brute, fekete_exchange, fekete_greedy, sequence_scan,
    sequence_scan_budgeted, ScanMode, ScanReport, BRUTE_LIMIT,
};
pub(crate) use kernel::SetKernel;

/// A finite set `E` of distinct disk points with its weight.
#[derive(Clone, Debug)]
pub struct CandidateSet {
    points: Vec<DiskPoint>,
    weight: WeightFunction,
    label: String,
}

impl CandidateSet {
    pub fn new(points: Vec<DiskPoint>, weight: WeightFunction, label: impl Into<String>) -> Result<Self> {
        if points.is_empty() {
            return Err(HardyError::invalid("candidate set is empty"));
        }
        if let Some((first, second, distance)) = find_coincident_pair(&points) {
            return Err(HardyError::DuplicatePoint { first, second, distance });
        }
        Ok(CandidateSet { points, weight, label: label.into() })
    }

    pub fn points(&self) -> &[DiskPoint] {
        &self.points
    }

    pub fn weight(&self) -> &WeightFunction {
        &self.weight
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of the candidate equal to `z` (pseudo-distance below the
    /// coincidence tolerance).
    pub fn index_of(&self, z: DiskPoint) -> Option<usize> {
        self.points.iter().position(|&w| pseudo_distance(w, z) < COINCIDENCE_TOL)
    }

    pub(crate) fn indices_of(&self, tuple: &ZeroTuple) -> Result<Vec<usize>> {
        tuple
            .points()
            .iter()
            .map(|&z| {
                self.index_of(z).ok_or_else(|| HardyError::invalid(format!("tuple point {z:?} is not a candidate")))
            })
            .collect()
    }

    pub(crate) fn tuple_of(&self, idx: &[usize]) -> ZeroTuple {
        idx.iter().map(|&i| self.points[i]).collect()
    }

    /// Sum of `1 - |z|` over the set.
    pub fn partial_mass(&self) -> f64 {
        self.points.iter().map(|z| 1.0 - z.modulus()).sum()
    }
}

/// First pair (in sorted sweep order) closer than the coincidence tolerance.
///
/// Pseudo-distance below `1e-12` forces Euclidean distance below `2e-12`, so a
/// sweep over the real parts only compares near neighbours.
fn find_coincident_pair(points: &[DiskPoint]) -> Option<(usize, usize, f64)> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].re().total_cmp(&points[b].re()).then(a.cmp(&b)));
    let window = 4.0 * COINCIDENCE_TOL;
    let mut found: Option<(usize, usize, f64)> = None;
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            if points[j].re() - points[i].re() > window {
                break;
            }
            let d = pseudo_distance(points[i], points[j]);
            if d < COINCIDENCE_TOL {
                let pair = (i.min(j), i.max(j), d);
                if found.map_or(true, |f| (pair.0, pair.1) < (f.0, f.1)) {
                    found = Some(pair);
                }
            }
        }
    }
    found
}

/// How a record's tuple was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Greedy,
    Exchange,
    BruteForce,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Greedy => "greedy",
            Method::Exchange => "exchange",
            Method::BruteForce => "brute_force",
        }
    }
}

/// An `n`-tuple from `E` with its `V`, `μ` and `M` values.
///
/// For brute-force records `log_v` is `log V_n(E)` and `mu`, `log_m` are the
/// minima of `μ` and `M` over all maximizers of `V`; `tuple` is the maximizer
/// attaining the smallest `M`.
#[derive(Clone, Debug, Serialize)]
pub struct FeketeRecord {
    pub n: usize,
    #[serde(rename = "points")]
    pub tuple: ZeroTuple,
    #[serde(rename = "logV")]
    pub log_v: f64,
    pub mu: f64,
    #[serde(rename = "logM")]
    pub log_m: f64,
    pub method: Method,
    #[serde(skip)]
    pub log_mu: f64,
    #[serde(skip)]
    pub(crate) indices: Vec<usize>,
}

impl FeketeRecord {
    /// Candidate indices of the tuple entries.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }
}

/// `log V(Z_n) = Σ log|q(z_j)| + Σ_{j<k} log d(z_j, z_k)`.
pub fn v_of(e: &CandidateSet, tuple: &ZeroTuple) -> f64 {
    let pts = tuple.points();
    let mut s = 0.0;
    for (j, &z) in pts.iter().enumerate() {
        s += e.weight.log_abs(z.z());
        for &w in &pts[j + 1..] {
            s += pseudo_distance(z, w).ln();
        }
    }
    s
}

/// `log μ(Z_n)` with `μ = Σ_j 1/|B_q(Z_{n,j}, z_j)|`; `+inf` when some deleted
/// product vanishes.
pub fn log_mu_of(e: &CandidateSet, tuple: &ZeroTuple) -> f64 {
    let terms: Vec<f64> = (0..tuple.len())
        .map(|j| {
            let rest = tuple.without(j);
            -weighted_blaschke_log_abs(&e.weight, &rest, tuple.points()[j]).value()
        })
        .collect();
    log_sum_exp(&terms)
}

/// `μ(Z_n)`.
pub fn mu_of(e: &CandidateSet, tuple: &ZeroTuple) -> f64 {
    log_mu_of(e, tuple).exp()
}

/// `log M(Z_n) = max_{z ∈ E} log|B_q(Z_n, z)|` and the maximizing candidate
/// (smallest index on ties).
pub fn m_of(e: &CandidateSet, tuple: &ZeroTuple) -> (f64, DiskPoint) {
    let mut best = f64::NEG_INFINITY;
    let mut arg = 0;
    for (i, &z) in e.points.iter().enumerate() {
        let v = weighted_blaschke_log_abs(&e.weight, tuple, z).value();
        if v > best {
            best = v;
            arg = i;
        }
    }
    (best, e.points[arg])
}

/// `log Σ exp(t_i)`; `+inf` if any term is `+inf`, `-inf` for an empty list.
pub(crate) fn log_sum_exp(terms: &[f64]) -> f64 {
    let m = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::INFINITY || m == f64::NEG_INFINITY {
        return m;
    }
    m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(re: f64) -> DiskPoint {
        DiskPoint::new(re, 0.0).unwrap()
    }

    fn three() -> CandidateSet {
        CandidateSet::new(vec![p(0.0), p(0.5), p(-0.5)], WeightFunction::unit(), "three").unwrap()
    }

    #[test]
    fn rejects_duplicates_with_indices() {
        let pts = vec![p(0.1), p(0.2), p(0.3), p(0.2)];
        match CandidateSet::new(pts, WeightFunction::unit(), "dup") {
            Err(HardyError::DuplicatePoint { first, second, .. }) => assert_eq!((first, second), (1, 3)),
            other => panic!("{other:?}"),
        }
        assert!(CandidateSet::new(vec![], WeightFunction::unit(), "empty").is_err());
    }

    #[test]
    fn v_examples() {
        let e = three();
        assert_close!(v_of(&e, &ZeroTuple::new(vec![p(0.0), p(0.3)])), 0.3f64.ln(), 1e-15);
        assert_eq!(v_of(&e, &ZeroTuple::empty()), 0.0);
        assert_close!(v_of(&e, &ZeroTuple::new(vec![p(0.5), p(-0.5)])), 0.8f64.ln(), 1e-15);
        assert_eq!(v_of(&e, &ZeroTuple::new(vec![p(0.5), p(0.5)])), f64::NEG_INFINITY);
    }

    #[test]
    fn mu_examples() {
        let e = three();
        assert_close!(mu_of(&e, &ZeroTuple::new(vec![p(0.5), p(-0.5)])), 2.5, 1e-14);
        assert_close!(mu_of(&e, &ZeroTuple::new(vec![p(0.0)])), 1.0, 1e-15);

        let q = WeightFunction::boundary_poly(&[0.0]).unwrap();
        let eq = CandidateSet::new(vec![p(0.5), p(-0.5)], q, "q").unwrap();
        let c = 0.5;
        let want = 1.0 / (c * 0.5 * 0.8) + 1.0 / (c * 1.5 * 0.8);
        assert_close!(mu_of(&eq, &ZeroTuple::new(vec![p(0.5), p(-0.5)])), want, 1e-10);

        assert_eq!(mu_of(&e, &ZeroTuple::new(vec![p(0.5), p(0.5)])), f64::INFINITY);
    }

    #[test]
    fn m_examples() {
        let e = three();
        let (lm, w) = m_of(&e, &ZeroTuple::new(vec![p(0.5), p(-0.5)]));
        assert_close!(lm, 0.25f64.ln(), 1e-15);
        assert_eq!(w, p(0.0));
        let (lm, _) = m_of(&e, &ZeroTuple::empty());
        assert_eq!(lm, 0.0);
        let (lm, _) = m_of(&e, &ZeroTuple::new(e.points().to_vec()));
        assert_eq!(lm, f64::NEG_INFINITY);
    }

    #[test]
    fn log_sum_exp_edges() {
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
        assert_eq!(log_sum_exp(&[1.0, f64::INFINITY]), f64::INFINITY);
        assert_close!(log_sum_exp(&[0.0, 0.0]), 2f64.ln(), 1e-15);
        assert_close!(log_sum_exp(&[-1000.0, -1000.0]), -1000.0 + 2f64.ln(), 1e-12);
    }
}
