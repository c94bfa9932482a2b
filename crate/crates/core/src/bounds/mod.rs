//! Two-sided bounds on the worst-case size of `f` on `|z| ≤ R` over the
//! `H^p` unit ball given `|f| ≤ ε` on a candidate set `E`, plus the related
//! one-point, sequence and harmonic-measure estimates.

mod eta;
mod harmonic;
mod search;

use rayon::prelude::*;
use serde::Serialize;

use crate::disk::{
    alpha_star, blaschke_log_abs, sup_on_circle, weighted_blaschke_log_abs, DiskPoint, WeightFunction, ZeroTuple,
};
use crate::error::{HardyError, Result};
use crate::interp::Exponent;
use crate::potential::{
    envelope_h, fekete_greedy, log_sum_exp, phi_of_epsilon, CandidateSet, FeketeRecord, PhiMap, SetKernel,
};
use search::{rank, Candidate, Problem, Target};

pub use eta::{eta_sequence, eta_sequence_harmonic, harmonic_radius, EtaBlock, EtaSequence};
pub use harmonic::{harmonic_omega, positive_measure_bound, ArcSet, PositiveMeasureBound};

/// Slack for re-verifying `max_E log|B_q| ≤ log ε`.
pub const FEASIBILITY_SLACK: f64 = 1e-12;
/// `method` of a one-point sandwich whose candidate set contains the origin.
pub const ORIGIN_IN_SET: &str = "origin_in_set";
/// Subsets re-evaluated exactly after the coarse heuristic ranking.
const TOP_EXACT: usize = 8;
/// Coarse-value window, in logs, for exact re-evaluation after enumeration.
const BRUTE_WINDOW: f64 = 1.0;

/// Controls the subset search behind [`g_estimate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    /// Exhaustive search runs when `2^|E|` does not exceed this.
    pub budget: u128,
    pub seed: u64,
    pub restarts: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: 100_000, seed: 0, restarts: 32 }
    }
}

/// Best tuple found for `g(E, ε, R, q)`: the largest
/// `sup_{|z| ≤ R} |B_q(Z, z)|` over tuples `Z ⊂ E` with
/// `|B_q(Z, ·)| ≤ ε` on `E`.
#[derive(Clone, Debug, Serialize)]
pub struct GEstimate {
    pub eps: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub log_g: f64,
    pub witness: ZeroTuple,
    /// The witness was re-checked against every point of `E`.
    pub certified_feasible: bool,
    /// Every minimal feasible subset was examined.
    pub exact: bool,
    pub method: &'static str,
}

/// `max_{e ∈ E} log|B_q(Z, e)| ≤ log ε + FEASIBILITY_SLACK`, with every entry
/// of `Z` a member of `E`. Evaluated point by point, independent of the search.
pub fn verify_feasible(e: &CandidateSet, tuple: &ZeroTuple, eps: f64) -> bool {
    if tuple.points().iter().any(|&z| e.index_of(z).is_none()) {
        return false;
    }
    let bound = eps.ln() + FEASIBILITY_SLACK;
    e.points().iter().all(|&z| weighted_blaschke_log_abs(e.weight(), tuple, z).value() <= bound)
}

fn exact_objective(e: &CandidateSet, tuple: &ZeroTuple, target: Target) -> Result<f64> {
    match target {
        Target::Ball(r) => Ok(sup_on_circle(e.weight(), tuple, r)?.log_sup.value()),
        Target::Origin => Ok(weighted_blaschke_log_abs(e.weight(), tuple, DiskPoint::ORIGIN).value()),
    }
}

fn search_g(e: &CandidateSet, eps: f64, target: Target, cfg: &SearchConfig, seeds: &[ZeroTuple]) -> Result<GEstimate> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(HardyError::invalid(format!("eps = {eps} must be positive")));
    }
    let r = match target {
        Target::Ball(r) => {
            if !(r > 0.0 && r < 1.0) {
                return Err(HardyError::invalid(format!("R = {r} outside (0, 1)")));
            }
            r
        }
        Target::Origin => 0.0,
    };
    let problem = Problem::new(SetKernel::new(e), eps.ln(), target);

    let (pool, exact, method) = if problem.empty_feasible() {
        (vec![problem.candidate(&[])], true, "empty")
    } else if subset_count(e.len()) <= cfg.budget {
        let all = rank(problem.enumerate_feasible());
        let best = all.first().map_or(f64::NEG_INFINITY, |c| c.coarse);
        let pool: Vec<Candidate> = all.into_iter().filter(|c| c.coarse >= best - BRUTE_WINDOW).collect();
        (pool, true, "brute_force")
    } else {
        let mut found = Vec::new();
        let order = fekete_greedy(e, e.len())?.indices().to_vec();
        found.push(problem.prefix(&order));
        for s in seeds {
            if let Ok(idx) = e.indices_of(s) {
                found.push(problem.local(&idx, None));
            }
        }
        found.extend(problem.restarts(cfg.seed, cfg.restarts.max(1)));
        let mut pool = rank(found);
        pool.truncate(TOP_EXACT);
        (pool, false, "heuristic")
    };

    let scored: Vec<(f64, &Candidate)> = pool
        .par_iter()
        .map(|c| {
            let t = e.tuple_of(&c.indices);
            exact_objective(e, &t, target).map(|v| (v, c))
        })
        .collect::<Result<_>>()?;
    let (log_g, best) = scored
        .iter()
        .fold(None::<(f64, &Candidate)>, |acc, &(v, c)| match acc {
            Some((b, _)) if b >= v => acc,
            _ => Some((v, c)),
        })
        .expect("the full set is always feasible");
    let witness = e.tuple_of(&best.indices);
    let certified_feasible = verify_feasible(e, &witness, eps);
    Ok(GEstimate { eps, r, log_g, witness, certified_feasible, exact, method })
}

fn subset_count(n: usize) -> u128 {
    if n >= 127 {
        u128::MAX
    } else {
        1u128 << n
    }
}

/// Estimate of `g(E, ε, R, q)`. Exhaustive over subsets of `E` when `2^|E|`
/// fits the budget; otherwise the best of greedy prefixes, seeded restarts
/// and local polishing, which is a certified lower estimate.
pub fn g_estimate(e: &CandidateSet, eps: f64, r: f64, cfg: &SearchConfig) -> Result<GEstimate> {
    search_g(e, eps, Target::Ball(r), cfg, &[])
}

/// [`g_estimate`] with the supremum over `|z| ≤ R` replaced by the value at
/// `z = 0`.
pub fn g_estimate_at_origin(e: &CandidateSet, eps: f64, cfg: &SearchConfig) -> Result<GEstimate> {
    search_g(e, eps, Target::Origin, cfg, &[])
}

/// Weight description carried in sandwich output.
#[derive(Clone, Debug, Serialize)]
pub struct WeightSummary {
    pub kind: &'static str,
    pub vertices: Vec<f64>,
    pub norm_const: f64,
}

impl From<&WeightFunction> for WeightSummary {
    fn from(q: &WeightFunction) -> Self {
        WeightSummary { kind: q.kind().as_str(), vertices: q.vertex_thetas(), norm_const: q.norm_const() }
    }
}

/// Lower and upper bounds (natural logs) for the worst-case size of `f` on
/// `|z| ≤ R` over `‖f‖_p ≤ 1` with `|f| ≤ ε` on `E`.
///
/// `upper_log` is `log K + α(-log|q(0)| + log g(E, φ(ε), R))` with a searched
/// `g`; `upper_certified_log` evaluates the interpolation error bound directly
/// at a Fekete tuple and holds regardless of search quality.
#[derive(Clone, Debug, Serialize)]
pub struct StabilitySandwich {
    pub p: Exponent,
    pub eps: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub alpha: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub q: WeightSummary,
    pub lower_log: f64,
    pub upper_log: f64,
    pub upper_certified_log: f64,
    pub phi_eps: f64,
    pub witness_lower: ZeroTuple,
    pub witness_upper: ZeroTuple,
    pub witness_certified: ZeroTuple,
    pub method: String,
    pub seed: u64,
    pub lower_exact: bool,
    pub lower_feasible: bool,
}

/// `K(R) = 8/(R(1 - R²))`.
pub fn sandwich_constant(r: f64) -> f64 {
    8.0 / (r * (1.0 - r * r))
}

/// `log` of `ε (4/(1-R²)) Σ_k sup_R|B(Z_{n,k})|/|B(Z_{n,k}, z_k)| + (1-R²)^{-1/p} sup_R|B(Z_n)|`,
/// an upper bound for `|f|` on `|z| ≤ R` whenever `‖f‖_p ≤ 1` and
/// `|f(z_k)| ≤ ε`.
pub fn certified_upper_at(tuple: &ZeroTuple, eps: f64, r: f64, p: Exponent) -> Result<f64> {
    let unit = WeightFunction::unit();
    let one_minus = 1.0 - r * r;
    let mut terms = Vec::with_capacity(tuple.len());
    for (k, &zk) in tuple.points().iter().enumerate() {
        let rest = tuple.without(k);
        let sup = sup_on_circle(&unit, &rest, r)?.log_sup.value();
        terms.push(sup - blaschke_log_abs(&rest, zk).value());
    }
    let sum = log_sum_exp(&terms);
    let data = eps.ln() + (4.0 / one_minus).ln() + sum;
    let tail = -p.reciprocal() * one_minus.ln() + sup_on_circle(&unit, tuple, r)?.log_sup.value();
    Ok(log_sum_exp(&[data, tail]))
}

/// The same bound at `z = 0`, where every factor is explicit:
/// `ε Σ_k (1-|z_k|²)|B(Z_{n,k}, 0)|/|B(Z_{n,k}, z_k)| + |B(Z_n, 0)|`.
pub fn certified_upper_at_origin(tuple: &ZeroTuple, eps: f64) -> f64 {
    let mut terms = Vec::with_capacity(tuple.len());
    for (k, &zk) in tuple.points().iter().enumerate() {
        let rest = tuple.without(k);
        terms.push(
            (1.0 - zk.z().norm_sqr()).ln() + blaschke_log_abs(&rest, DiskPoint::ORIGIN).value()
                - blaschke_log_abs(&rest, zk).value(),
        );
    }
    let data = eps.ln() + log_sum_exp(&terms);
    log_sum_exp(&[data, blaschke_log_abs(tuple, DiskPoint::ORIGIN).value()])
}

/// Smallest certified bound over the records whose `M_n ≤ φ(ε)`.
fn best_certified<F: Fn(&ZeroTuple) -> Result<f64> + Sync>(
    records: &[FeketeRecord],
    phi: f64,
    eval: F,
) -> Result<(f64, ZeroTuple)> {
    let log_phi = phi.ln();
    let eligible: Vec<&FeketeRecord> = records.iter().filter(|r| r.log_m <= log_phi).collect();
    if eligible.is_empty() {
        return Err(HardyError::Invariant(format!("no record has M_n <= phi(eps) = {phi}")));
    }
    let vals: Vec<f64> = eligible.par_iter().map(|r| eval(&r.tuple)).collect::<Result<_>>()?;
    let mut best = 0;
    for (i, v) in vals.iter().enumerate() {
        if *v < vals[best] {
            best = i;
        }
    }
    Ok((vals[best], eligible[best].tuple.clone()))
}

fn check_eps(map: &PhiMap, eps: f64) -> Result<f64> {
    Ok(phi_of_epsilon(map, eps)?.phi)
}

/// Assembles the two-sided bound for one `ε`. `records` must be a scan of
/// `E` covering `n = 1..N` with `M_N > 0`.
pub fn sandwich(
    e: &CandidateSet,
    records: &[FeketeRecord],
    eps: f64,
    r: f64,
    p: Exponent,
    cfg: &SearchConfig,
) -> Result<StabilitySandwich> {
    let map = PhiMap::new(envelope_h(records)?);
    let phi = check_eps(&map, eps)?;
    let alpha = alpha_star(r)?;
    let k = sandwich_constant(r);
    let lower = search_g(e, eps, Target::Ball(r), cfg, &[])?;
    // every tuple feasible at ε stays feasible at φ(ε) ≥ ε
    let upper_g = search_g(e, phi, Target::Ball(r), cfg, std::slice::from_ref(&lower.witness))?;
    let log_q0 = e.weight().log_abs(DiskPoint::ORIGIN.z());
    let upper_log = k.ln() + alpha * (-log_q0 + upper_g.log_g);
    let (upper_certified_log, witness_certified) = best_certified(records, phi, |t| certified_upper_at(t, eps, r, p))?;
    Ok(StabilitySandwich {
        p,
        eps,
        r,
        alpha,
        k,
        q: e.weight().into(),
        lower_log: lower.log_g,
        upper_log,
        upper_certified_log,
        phi_eps: phi,
        witness_lower: lower.witness,
        witness_upper: upper_g.witness,
        witness_certified,
        method: format!("lower={};upper={};certified=fekete", lower.method, upper_g.method),
        seed: cfg.seed,
        lower_exact: lower.exact,
        lower_feasible: lower.certified_feasible,
    })
}

/// The sandwich for recovering `f(0)` alone. If `0 ∈ E` the answer is exactly
/// `ε`; otherwise the ball is replaced by the origin and `α = α*(r_min)`,
/// `K = 2/r_min` with `r_min = min_E |z|`.
pub fn one_point(
    e: &CandidateSet,
    records: &[FeketeRecord],
    eps: f64,
    p: Exponent,
    cfg: &SearchConfig,
) -> Result<StabilitySandwich> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(HardyError::invalid(format!("eps = {eps} must be positive")));
    }
    if let Some(i) = e.index_of(DiskPoint::ORIGIN) {
        // the constant ε attains the bound, so no zero set witnesses it
        let node = ZeroTuple::new(vec![e.points()[i]]);
        return Ok(StabilitySandwich {
            p,
            eps,
            r: 0.0,
            alpha: 1.0,
            k: 1.0,
            q: e.weight().into(),
            lower_log: eps.ln(),
            upper_log: eps.ln(),
            upper_certified_log: eps.ln(),
            phi_eps: eps,
            witness_lower: ZeroTuple::empty(),
            witness_upper: ZeroTuple::empty(),
            witness_certified: node,
            method: ORIGIN_IN_SET.into(),
            seed: cfg.seed,
            lower_exact: true,
            lower_feasible: true,
        });
    }
    let map = PhiMap::new(envelope_h(records)?);
    let phi = check_eps(&map, eps)?;
    let r_min = e.points().iter().map(|z| z.modulus()).fold(f64::INFINITY, f64::min);
    let alpha = alpha_star(r_min)?;
    let k = 2.0 / r_min;
    let lower = search_g(e, eps, Target::Origin, cfg, &[])?;
    let upper_g = search_g(e, phi, Target::Origin, cfg, std::slice::from_ref(&lower.witness))?;
    let log_q0 = e.weight().log_abs(DiskPoint::ORIGIN.z());
    let upper_log = k.ln() + alpha * (-log_q0 + upper_g.log_g);
    let (upper_certified_log, witness_certified) =
        best_certified(records, phi, |t| Ok(certified_upper_at_origin(t, eps)))?;
    Ok(StabilitySandwich {
        p,
        eps,
        r: 0.0,
        alpha,
        k,
        q: e.weight().into(),
        lower_log: lower.log_g,
        upper_log,
        upper_certified_log,
        phi_eps: phi,
        witness_lower: lower.witness,
        witness_upper: upper_g.witness,
        witness_certified,
        method: format!("lower={};upper={};certified=fekete", lower.method, upper_g.method),
        seed: cfg.seed,
        lower_exact: lower.exact,
        lower_feasible: lower.certified_feasible,
    })
}

/// Least-squares fit of `log M_n` against `log n` over the tail half of a
/// scan, compared with an exponential model `log M_n` against `n`.
#[derive(Clone, Debug, Serialize)]
pub struct PowerFit {
    pub sigma: f64,
    /// `σ/(1 + σ)`, the exponent in `φ(ε) ≤ C ε^{σ/(1+σ)}`.
    pub exponent: f64,
    pub log_c: f64,
    pub points: usize,
    pub rss_power: f64,
    pub rss_exponential: f64,
    /// The exponential model fits better, so `σ` is only a lower bound.
    pub super_polynomial: bool,
}

fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let icept = my - slope * mx;
    let rss = xs.iter().zip(ys).map(|(x, y)| (y - icept - slope * x).powi(2)).sum();
    (slope, icept, rss)
}

/// Fits `M_n ≈ C n^{-σ}` on the second half of the records.
pub fn corollary_power_decay(records: &[FeketeRecord]) -> Result<PowerFit> {
    let tail: Vec<&FeketeRecord> = records[records.len() / 2..].iter().filter(|r| r.log_m.is_finite()).collect();
    if tail.len() < 4 {
        return Err(HardyError::invalid(format!("power fit needs at least 4 tail points, got {}", tail.len())));
    }
    let ns: Vec<f64> = tail.iter().map(|r| r.n as f64).collect();
    let logn: Vec<f64> = ns.iter().map(|n| n.ln()).collect();
    let ys: Vec<f64> = tail.iter().map(|r| r.log_m).collect();
    let (slope, icept, rss_power) = linear_fit(&logn, &ys);
    let (_, _, rss_exponential) = linear_fit(&ns, &ys);
    let sigma = -slope;
    Ok(PowerFit {
        sigma,
        exponent: sigma / (1.0 + sigma),
        log_c: icept,
        points: tail.len(),
        rss_power,
        rss_exponential,
        super_polynomial: rss_exponential < rss_power,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{sequence_scan, Method, ScanMode};

    fn p(re: f64, im: f64) -> DiskPoint {
        DiskPoint::new(re, im).unwrap()
    }

    fn set(pts: Vec<DiskPoint>) -> CandidateSet {
        CandidateSet::new(pts, WeightFunction::unit(), "t").unwrap()
    }

    #[test]
    fn g_single_origin() {
        let e = set(vec![DiskPoint::ORIGIN]);
        let g = g_estimate(&e, 0.5, 0.7, &SearchConfig::default()).unwrap();
        assert_close!(g.log_g, 0.7f64.ln(), 1e-12);
        assert!(g.certified_feasible && g.exact);
        assert_eq!(g.witness.len(), 1);
    }

    #[test]
    fn g_vacuous_constraint() {
        let e = set(vec![p(0.1, 0.0), p(0.5, 0.2)]);
        let g = g_estimate(&e, 1.5, 0.6, &SearchConfig::default()).unwrap();
        assert_eq!(g.log_g, 0.0);
        assert!(g.witness.is_empty());
        assert_eq!(g.method, "empty");
    }

    /// Every subset of a small set, evaluated directly.
    fn oracle(e: &CandidateSet, eps: f64, r: f64) -> f64 {
        let n = e.len();
        let mut best = f64::NEG_INFINITY;
        for mask in 0u32..(1 << n) {
            let t: ZeroTuple = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| e.points()[i]).collect();
            let worst = e
                .points()
                .iter()
                .map(|&z| weighted_blaschke_log_abs(e.weight(), &t, z).value())
                .fold(f64::NEG_INFINITY, f64::max);
            if worst <= eps.ln() {
                best = best.max(sup_on_circle(e.weight(), &t, r).unwrap().log_sup.value());
            }
        }
        best
    }

    #[test]
    fn g_brute_matches_subset_oracle() {
        let e = set(vec![p(0.0, 0.0), p(0.5, 0.0), p(-0.5, 0.0)]);
        let g = g_estimate(&e, 0.3, 0.6, &SearchConfig::default()).unwrap();
        assert!(g.exact);
        assert_close!(g.log_g, oracle(&e, 0.3, 0.6), 1e-12);

        let pts: Vec<DiskPoint> =
            (0..9).map(|i| DiskPoint::from_polar(0.3 + 0.05 * i as f64, 1.9 * i as f64).unwrap()).collect();
        let q = WeightFunction::boundary_poly(&[0.5]).unwrap();
        let e = CandidateSet::new(pts, q, "mix").unwrap();
        for eps in [0.05, 0.2, 0.4] {
            let g = g_estimate(&e, eps, 0.5, &SearchConfig::default()).unwrap();
            assert_close!(g.log_g, oracle(&e, eps, 0.5), 1e-12);
            assert!(g.certified_feasible);
        }
    }

    #[test]
    fn heuristic_is_feasible_and_deterministic() {
        let pts: Vec<DiskPoint> =
            (0..40).map(|i| DiskPoint::from_polar(0.2 + 0.015 * i as f64, 2.4 * i as f64).unwrap()).collect();
        let e = set(pts);
        let cfg = SearchConfig { budget: 0, seed: 7, restarts: 8 };
        let a = g_estimate(&e, 0.1, 0.5, &cfg).unwrap();
        let b = g_estimate(&e, 0.1, 0.5, &cfg).unwrap();
        assert!(a.certified_feasible && !a.exact);
        assert_eq!(a.log_g.to_bits(), b.log_g.to_bits());
        assert_eq!(a.witness, b.witness);
    }

    #[test]
    fn certified_upper_dominates_witness() {
        let pts: Vec<DiskPoint> =
            (0..12).map(|i| DiskPoint::from_polar(0.3 + 0.03 * i as f64, 0.52 * i as f64).unwrap()).collect();
        let e = set(pts);
        let recs = sequence_scan(&e, 6, ScanMode::Exact).unwrap();
        let map = PhiMap::new(envelope_h(&recs).unwrap());
        let eps = (map.eps0 * map.eps_min()).sqrt();
        for p in [Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Infinity] {
            let s = sandwich(&e, &recs, eps, 0.5, p, &SearchConfig::default()).unwrap();
            assert!(s.lower_log <= s.upper_certified_log + 1e-9);
            assert!(s.lower_log <= s.upper_log + 1e-9);
            assert!(s.lower_feasible);
            assert!(s.k >= 1.0 && s.alpha > 0.0 && s.alpha < 1.0);
        }
    }

    #[test]
    fn one_point_cases() {
        let e = set(vec![DiskPoint::ORIGIN, p(0.5, 0.0)]);
        let s = one_point(&e, &[], 0.2, Exponent::Finite(2.0), &SearchConfig::default()).unwrap();
        assert_eq!((s.lower_log, s.upper_log), (0.2f64.ln(), 0.2f64.ln()));
        assert_eq!(s.method, ORIGIN_IN_SET);
        assert!(s.witness_lower.is_empty());

        // E = {0.5}: the only nonempty tuple is {0.5}, which vanishes on E
        let e = set(vec![p(0.5, 0.0), p(-0.6, 0.1), p(0.1, 0.7)]);
        let recs = sequence_scan(&e, 2, ScanMode::Exact).unwrap();
        let map = PhiMap::new(envelope_h(&recs).unwrap());
        let eps = 0.5 * (map.eps0 + map.eps_min());
        let s = one_point(&e, &recs, eps, Exponent::Finite(2.0), &SearchConfig::default()).unwrap();
        assert!(s.lower_log <= s.upper_certified_log + 1e-12);
        let single = set(vec![p(0.5, 0.0)]);
        let g = g_estimate_at_origin(&single, 0.4, &SearchConfig::default()).unwrap();
        assert_close!(g.log_g, 0.5f64.ln(), 1e-15);
        let g = g_estimate_at_origin(&single, 1.2, &SearchConfig::default()).unwrap();
        assert_eq!(g.log_g, 0.0);
    }

    #[test]
    fn power_fit_exact_law() {
        let recs: Vec<FeketeRecord> = (1..=10)
            .map(|n| FeketeRecord {
                n,
                tuple: ZeroTuple::empty(),
                log_v: 0.0,
                mu: 1.0,
                log_m: -2.0 * (n as f64).ln(),
                method: Method::BruteForce,
                log_mu: 0.0,
                indices: vec![],
            })
            .collect();
        let fit = corollary_power_decay(&recs).unwrap();
        assert_close!(fit.sigma, 2.0, 1e-12);
        assert_close!(fit.exponent, 2.0 / 3.0, 1e-12);
        assert!(!fit.super_polynomial);
        assert!(corollary_power_decay(&recs[..6]).is_err());
    }
}
