use rayon::prelude::*;

use super::kernel::{argmax, SetKernel};
use super::{CandidateSet, FeketeRecord, Method};
use crate::error::{HardyError, Result};

/// Hard cap on the number of `n`-subsets [`fekete_brute`] will enumerate.
pub const BRUTE_LIMIT: u128 = 10_000_000;

/// Relative `log V` tolerance for treating two tuples as co-maximizers.
const TIE_TOL: f64 = 1e-10;
/// Minimal `log V` gain for an exchange step.
const EXCHANGE_GAIN: f64 = 1e-12;
const MAX_EXCHANGE_PASSES: usize = 100_000;
/// Slack for the scan invariants, in logarithms.
const SCAN_SLACK: f64 = 1e-9;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

fn check_size(e: &CandidateSet, n: usize) -> Result<()> {
    if n == 0 || n > e.len() {
        return Err(HardyError::invalid(format!("tuple size {n} must lie in 1..={}", e.len())));
    }
    Ok(())
}

fn record(k: &SetKernel<'_>, idx: Vec<usize>, log_v: f64, method: Method) -> FeketeRecord {
    let log_mu = k.log_mu(&idx);
    let (log_m, _) = k.log_m(&idx);
    FeketeRecord {
        n: idx.len(),
        tuple: k.set.tuple_of(&idx),
        log_v,
        mu: log_mu.exp(),
        log_m,
        method,
        log_mu,
        indices: idx,
    }
}

fn greedy_indices(k: &SetKernel<'_>, n: usize) -> Vec<usize> {
    let mut prof = k.log_q.clone();
    let mut idx = Vec::with_capacity(n);
    for _ in 0..n {
        let (_, next) = argmax(&prof);
        idx.push(next);
        for (i, v) in prof.iter_mut().enumerate() {
            *v += k.log_d(i, next);
        }
    }
    idx
}

/// Leja-type greedy tuple: each `z_j` maximizes `|B_q(Z_{j-1}, ·)|` over `E`,
/// ties to the smallest candidate index.
pub fn fekete_greedy(e: &CandidateSet, n: usize) -> Result<FeketeRecord> {
    check_size(e, n)?;
    let k = SetKernel::new(e);
    let idx = greedy_indices(&k, n);
    let log_v = k.log_v(&idx);
    Ok(record(&k, idx, log_v, Method::Greedy))
}

fn exchange_indices(k: &SetKernel<'_>, idx: &mut [usize]) {
    for _ in 0..MAX_EXCHANGE_PASSES {
        let mut improved = false;
        for j in 0..idx.len() {
            // V(Z with z_j := c) = V(Z_{n,j}) · |B_q(Z_{n,j}, c)|
            let current = k.deleted_value(idx, j, idx[j]);
            let mut best = current;
            let mut arg = idx[j];
            for c in 0..k.len() {
                let v = k.deleted_value(idx, j, c);
                if v > best {
                    best = v;
                    arg = c;
                }
            }
            if best > current + EXCHANGE_GAIN {
                idx[j] = arg;
                improved = true;
            }
        }
        if !improved {
            return;
        }
    }
}

/// One-swap local search on `V` from `start`: for each entry in order, the
/// candidate maximizing `V` replaces it when that gains more than `1e-12` in
/// `log V`; stops after a pass without change.
pub fn fekete_exchange(e: &CandidateSet, start: &FeketeRecord) -> Result<FeketeRecord> {
    let mut idx = e.indices_of(&start.tuple)?;
    check_size(e, idx.len())?;
    let k = SetKernel::new(e);
    exchange_indices(&k, &mut idx);
    let log_v = k.log_v(&idx);
    Ok(record(&k, idx, log_v, Method::Exchange))
}

/// Depth-first enumeration of increasing index tuples with `log V` pruning.
/// Partial `log V` never increases with depth, so branches below `floor`
/// are cut.
fn enumerate<F: FnMut(&[usize], f64)>(
    k: &SetKernel<'_>,
    n: usize,
    idx: &mut Vec<usize>,
    partial: f64,
    start: usize,
    floor: &mut dyn FnMut() -> f64,
    visit: &mut F,
) {
    if idx.len() == n {
        visit(idx, partial);
        return;
    }
    let remaining = n - idx.len();
    for i in start..=k.len() - remaining {
        let mut add = k.log_q[i];
        for &j in idx.iter() {
            add += k.log_d(j, i);
        }
        let next = partial + add;
        if next == f64::NEG_INFINITY || next < floor() {
            continue;
        }
        idx.push(i);
        enumerate(k, n, idx, next, i + 1, floor, visit);
        idx.pop();
    }
}

fn tie_floor(best: f64) -> f64 {
    best - TIE_TOL * best.abs().max(1.0)
}

/// Exact `V_n(E)`, `μ_n(E)`, `M_n(E)` by enumerating all `n`-subsets of `E`.
pub fn fekete_brute(e: &CandidateSet, n: usize) -> Result<FeketeRecord> {
    check_size(e, n)?;
    let count = binomial(e.len(), n);
    if count > BRUTE_LIMIT {
        return Err(HardyError::BudgetExceeded { requested: count, budget: BRUTE_LIMIT });
    }
    let k = SetKernel::new(e);
    let firsts: Vec<usize> = (0..=k.len() - n).collect();

    // pass 1: best log V, searched in parallel over the first index
    let best = firsts
        .par_iter()
        .map(|&i0| {
            let mut local = f64::NEG_INFINITY;
            let mut idx = vec![i0];
            let cell = std::cell::Cell::new(f64::NEG_INFINITY);
            enumerate(&k, n, &mut idx, k.log_q[i0], i0 + 1, &mut || tie_floor(cell.get()), &mut |_, v| {
                if v > local {
                    local = v;
                    cell.set(v);
                }
            });
            local
        })
        .reduce(|| f64::NEG_INFINITY, f64::max);

    // pass 2: every maximizer within the tie tolerance
    let floor = tie_floor(best);
    let ties: Vec<Vec<usize>> = firsts
        .par_iter()
        .map(|&i0| {
            let mut found = Vec::new();
            let mut idx = vec![i0];
            enumerate(&k, n, &mut idx, k.log_q[i0], i0 + 1, &mut || floor, &mut |t, v| {
                if v >= floor {
                    found.push(t.to_vec());
                }
            });
            found
        })
        .flatten()
        .collect();

    let mut chosen: Option<(f64, Vec<usize>)> = None;
    let mut min_log_mu = f64::INFINITY;
    for t in ties {
        min_log_mu = min_log_mu.min(k.log_mu(&t));
        let (lm, _) = k.log_m(&t);
        if chosen.as_ref().map_or(true, |(best_m, _)| lm < *best_m) {
            chosen = Some((lm, t));
        }
    }
    let (log_m, idx) = chosen.expect("finite candidate set has a maximizer");
    Ok(FeketeRecord {
        n,
        tuple: e.tuple_of(&idx),
        log_v: best,
        mu: min_log_mu.exp(),
        log_m,
        method: Method::BruteForce,
        log_mu: min_log_mu,
        indices: idx,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    Heuristic,
    Exact,
}

/// Records for `n = 1..=n_max` plus the sizes for which an exact scan fell
/// back to the heuristic search.
#[derive(Clone, Debug)]
pub struct ScanReport {
    pub records: Vec<FeketeRecord>,
    pub downgraded: Vec<usize>,
}

fn heuristic_record(k: &SetKernel<'_>, greedy: &[usize], n: usize) -> FeketeRecord {
    let mut idx = greedy[..n].to_vec();
    exchange_indices(k, &mut idx);
    let log_v = k.log_v(&idx);
    record(k, idx, log_v, Method::Exchange)
}

/// Scans `n = 1..=n_max`. Exact mode enumerates every size (and fails past
/// [`BRUTE_LIMIT`]); heuristic mode polishes greedy prefixes by exchange.
/// Exact scans are checked against [`check_scan_invariants`].
pub fn sequence_scan(e: &CandidateSet, n_max: usize, mode: ScanMode) -> Result<Vec<FeketeRecord>> {
    let budget = match mode {
        ScanMode::Exact => BRUTE_LIMIT,
        ScanMode::Heuristic => 0,
    };
    let report = sequence_scan_budgeted(e, n_max, mode, budget)?;
    if mode == ScanMode::Exact && !report.downgraded.is_empty() {
        let n = report.downgraded[0];
        return Err(HardyError::BudgetExceeded { requested: binomial(e.len(), n), budget: BRUTE_LIMIT });
    }
    Ok(report.records)
}

/// Like [`sequence_scan`], but exact mode enumerates only sizes with
/// `C(|E|, n) ≤ budget` and uses the heuristic for the rest.
pub fn sequence_scan_budgeted(e: &CandidateSet, n_max: usize, mode: ScanMode, budget: u128) -> Result<ScanReport> {
    check_size(e, n_max)?;
    let k = SetKernel::new(e);
    let greedy = greedy_indices(&k, n_max);
    let budget = budget.min(BRUTE_LIMIT);
    let mut records = Vec::with_capacity(n_max);
    let mut downgraded = Vec::new();
    for n in 1..=n_max {
        let exact = mode == ScanMode::Exact && binomial(e.len(), n) <= budget;
        if exact {
            records.push(fekete_brute(e, n)?);
        } else {
            if mode == ScanMode::Exact {
                downgraded.push(n);
            }
            records.push(heuristic_record(&k, &greedy, n));
        }
    }
    let violations = check_scan_invariants(&records);
    if let Some(v) = violations.first() {
        return Err(HardyError::Invariant(v.clone()));
    }
    Ok(ScanReport { records, downgraded })
}

/// Checks, on consecutive brute-force records,
/// `M_n ≤ V_n^{1/n}`, `V_{n+1} ≥ V_n M_n` and `μ_{n+1} M_n ≤ n + 1`.
/// Returns one message per violation.
pub fn check_scan_invariants(records: &[FeketeRecord]) -> Vec<String> {
    let mut out = Vec::new();
    for r in records.iter().filter(|r| r.method == Method::BruteForce) {
        if r.log_m > r.log_v / r.n as f64 + SCAN_SLACK {
            out.push(format!("n = {}: log M = {} exceeds log V / n = {}", r.n, r.log_m, r.log_v / r.n as f64));
        }
    }
    for w in records.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if a.method != Method::BruteForce || b.method != Method::BruteForce || b.n != a.n + 1 {
            continue;
        }
        if a.log_m > f64::NEG_INFINITY && b.log_v < a.log_v + a.log_m - SCAN_SLACK {
            out.push(format!("n = {}: log V_(n+1) = {} below log V_n + log M_n = {}", a.n, b.log_v, a.log_v + a.log_m));
        }
        if a.log_m > f64::NEG_INFINITY && b.log_mu < f64::INFINITY {
            let lhs = b.log_mu + a.log_m;
            let rhs = ((a.n + 1) as f64 + 1e-9).ln();
            if lhs > rhs + SCAN_SLACK {
                out.push(format!("n = {}: mu_(n+1) M_n = {} exceeds n + 1", a.n, lhs.exp()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::{DiskPoint, WeightFunction, ZeroTuple};
    use crate::potential::v_of;

    fn p(re: f64) -> DiskPoint {
        DiskPoint::new(re, 0.0).unwrap()
    }

    fn three() -> CandidateSet {
        CandidateSet::new(vec![p(0.0), p(0.5), p(-0.5)], WeightFunction::unit(), "three").unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(81, 4), 1_663_740);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(10, 0), 1);
    }

    #[test]
    fn greedy_examples() {
        let e = three();
        let r1 = fekete_greedy(&e, 1).unwrap();
        assert_eq!(r1.indices(), &[0]);
        let r2 = fekete_greedy(&e, 2).unwrap();
        assert_eq!(r2.indices(), &[0, 1]);
        assert_close!(r2.log_v, 0.5f64.ln(), 1e-15);

        let q = WeightFunction::boundary_poly(&[0.0]).unwrap();
        let eq = CandidateSet::new(vec![p(0.9), p(-0.9), p(0.0)], q, "q").unwrap();
        // |q| = |z - 1|/2: 0.05, 0.95, 0.5
        assert_eq!(fekete_greedy(&eq, 1).unwrap().indices(), &[1]);
    }

    #[test]
    fn exchange_repairs_greedy() {
        let e = three();
        let g = fekete_greedy(&e, 2).unwrap();
        let x = fekete_exchange(&e, &g).unwrap();
        assert_close!(x.log_v, 0.8f64.ln(), 1e-15);
        let mut idx = x.indices().to_vec();
        idx.sort();
        assert_eq!(idx, vec![1, 2]);
        let again = fekete_exchange(&e, &x).unwrap();
        assert_eq!(again.indices(), x.indices());
    }

    #[test]
    fn exchange_rejects_foreign_points() {
        let e = three();
        let mut g = fekete_greedy(&e, 1).unwrap();
        g.tuple = ZeroTuple::new(vec![p(0.7)]);
        assert!(fekete_exchange(&e, &g).is_err());
    }

    #[test]
    fn brute_examples() {
        let e = three();
        let r = fekete_brute(&e, 2).unwrap();
        assert_close!(r.log_v, 0.8f64.ln(), 1e-15);
        assert_close!(r.log_m, 0.25f64.ln(), 1e-15);
        assert_close!(r.mu, 2.5, 1e-14);

        let all = fekete_brute(&e, 3).unwrap();
        assert_eq!(all.indices(), &[0, 1, 2]);
        assert_eq!(all.log_m, f64::NEG_INFINITY);

        // n = 1: every point ties at V = 1; M_1 = min_z1 max_z d(z, z1)
        let r1 = fekete_brute(&e, 1).unwrap();
        assert_eq!(r1.log_v, 0.0);
        assert_close!(r1.log_m, 0.5f64.ln(), 1e-15);
        assert_eq!(r1.indices(), &[0]);
    }

    #[test]
    fn brute_enforces_limit() {
        let pts: Vec<DiskPoint> = (0..200).map(|i| DiskPoint::from_polar(0.5, i as f64 * 0.031).unwrap()).collect();
        let e = CandidateSet::new(pts, WeightFunction::unit(), "big").unwrap();
        assert!(matches!(fekete_brute(&e, 5), Err(HardyError::BudgetExceeded { .. })));
    }

    #[test]
    fn brute_matches_v_of() {
        let pts: Vec<DiskPoint> =
            (0..9).map(|i| DiskPoint::from_polar(0.2 + 0.07 * i as f64, 0.7 * i as f64).unwrap()).collect();
        let e = CandidateSet::new(pts, WeightFunction::boundary_poly(&[1.0]).unwrap(), "mix").unwrap();
        for n in 1..=5 {
            let r = fekete_brute(&e, n).unwrap();
            assert_close!(r.log_v, v_of(&e, &r.tuple), 1e-12);
        }
    }

    #[test]
    fn scan_budget_downgrades() {
        let pts: Vec<DiskPoint> = (0..12).map(|i| DiskPoint::from_polar(0.3, i as f64 * 0.5).unwrap()).collect();
        let e = CandidateSet::new(pts, WeightFunction::unit(), "ring").unwrap();
        let rep = sequence_scan_budgeted(&e, 4, ScanMode::Exact, 100).unwrap();
        assert_eq!(rep.downgraded, vec![3, 4]);
        assert_eq!(rep.records[1].method, Method::BruteForce);
        assert_eq!(rep.records[2].method, Method::Exchange);
        assert!(sequence_scan(&e, 13, ScanMode::Exact).is_err());
    }
}
