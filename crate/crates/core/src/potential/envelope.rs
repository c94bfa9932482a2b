use serde::Serialize;

use super::FeketeRecord;
use crate::error::{HardyError, Result};

const BISECTION_STEPS: usize = 400;
const SOLVE_TOL: f64 = 1e-12;

/// Nonincreasing positive envelope `h(n) = max_{k ≥ n} M_k` on the computed
/// range `1..=N`, extended piecewise-linearly between integers. Undefined
/// past `N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayEnvelope {
    knots: Vec<f64>,
}

impl DecayEnvelope {
    /// Envelope with knots `h_1, …, h_N`; must be positive and nonincreasing.
    pub fn from_knots(knots: Vec<f64>) -> Result<Self> {
        if knots.is_empty() {
            return Err(HardyError::invalid("envelope needs at least one knot"));
        }
        if knots.iter().any(|h| !(h.is_finite() && *h > 0.0)) {
            return Err(HardyError::invalid("envelope knots must be finite and positive"));
        }
        if knots.windows(2).any(|w| w[1] > w[0]) {
            return Err(HardyError::invalid("envelope knots must be nonincreasing"));
        }
        Ok(DecayEnvelope { knots })
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    /// Last computed size `N`.
    pub fn support_end(&self) -> usize {
        self.knots.len()
    }

    /// `h(x)` for `x ∈ [1, N]`.
    pub fn value_at(&self, x: f64) -> Result<f64> {
        let n = self.knots.len() as f64;
        if !(1.0..=n).contains(&x) {
            return Err(HardyError::invalid(format!("x = {x} outside the envelope range [1, {n}]")));
        }
        Ok(self.eval(x))
    }

    fn eval(&self, x: f64) -> f64 {
        let i = (x.floor() as usize).clamp(1, self.knots.len());
        if i == self.knots.len() {
            return self.knots[i - 1];
        }
        let t = x - i as f64;
        let (a, b) = (self.knots[i - 1], self.knots[i]);
        a + t * (b - a)
    }

    /// `h(x)/(x + 1)`, strictly decreasing in `x`.
    fn ratio(&self, x: f64) -> f64 {
        self.eval(x) / (x + 1.0)
    }
}

/// `h_n = max_{k ≥ n} M_k` from records covering `n = 1..=N` in order.
pub fn envelope_h(records: &[FeketeRecord]) -> Result<DecayEnvelope> {
    if records.is_empty() {
        return Err(HardyError::invalid("no records"));
    }
    for (i, r) in records.iter().enumerate() {
        if r.n != i + 1 {
            return Err(HardyError::invalid(format!(
                "records must cover n = 1..N in order; position {i} holds n = {}",
                r.n
            )));
        }
        if r.log_m == f64::NEG_INFINITY {
            return Err(HardyError::invalid(format!(
                "M_{} = 0: the tuple exhausts the candidate set; stop the scan earlier",
                r.n
            )));
        }
    }
    let mut knots = vec![0.0; records.len()];
    let mut run = f64::NEG_INFINITY;
    for (i, r) in records.iter().enumerate().rev() {
        run = run.max(r.log_m.exp());
        knots[i] = run;
    }
    DecayEnvelope::from_knots(knots)
}

/// The envelope together with `ε₀ = h(1)/2`, the largest `ε` for which `φ` is
/// defined.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhiMap {
    pub envelope: DecayEnvelope,
    pub eps0: f64,
}

impl PhiMap {
    pub fn new(envelope: DecayEnvelope) -> Self {
        let eps0 = envelope.knots[0] / 2.0;
        PhiMap { envelope, eps0 }
    }

    /// Smallest `ε` the computed range supports, `h(N)/(N + 1)`.
    pub fn eps_min(&self) -> f64 {
        let n = self.envelope.support_end();
        self.envelope.knots[n - 1] / (n as f64 + 1.0)
    }
}

/// Solution `x` of `ε = h(x)/(x + 1)` and `φ(ε) = h(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhiSolution {
    pub x: f64,
    pub phi: f64,
}

/// Solves `ε = h(x)/(x + 1)` by bisection on `[1, N]` and returns `h(x)`.
pub fn phi_of_epsilon(map: &PhiMap, eps: f64) -> Result<PhiSolution> {
    if !(eps > 0.0 && eps < map.eps0) {
        return Err(HardyError::invalid(format!("eps = {eps} must lie in (0, {})", map.eps0)));
    }
    let env = &map.envelope;
    let n = env.support_end() as f64;
    if eps < map.eps_min() {
        return Err(HardyError::EnvelopeSupport { eps, low: map.eps_min(), high: map.eps0 });
    }
    let (mut lo, mut hi) = (1.0, n);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f = env.ratio(mid);
        if (f - eps).abs() <= SOLVE_TOL * eps * 0.5 {
            lo = mid;
            hi = mid;
            break;
        }
        if f > eps {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // pick the bracket end closer to the target
    let x = if (env.ratio(lo) - eps).abs() <= (env.ratio(hi) - eps).abs() { lo } else { hi };
    Ok(PhiSolution { x, phi: env.eval(x) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::ZeroTuple;
    use crate::potential::Method;

    fn recs(ms: &[f64]) -> Vec<FeketeRecord> {
        ms.iter()
            .enumerate()
            .map(|(i, &m)| FeketeRecord {
                n: i + 1,
                tuple: ZeroTuple::empty(),
                log_v: 0.0,
                mu: 1.0,
                log_m: m.ln(),
                method: Method::BruteForce,
                log_mu: 0.0,
                indices: Vec::new(),
            })
            .collect()
    }

    #[test]
    fn suffix_max() {
        let h = envelope_h(&recs(&[0.5, 0.3, 0.4])).unwrap();
        let want = [0.5, 0.4, 0.4];
        for (a, b) in h.knots().iter().zip(want) {
            assert_close!(*a, b, 1e-15);
        }
        let m = [0.9, 0.5, 0.2];
        let h = envelope_h(&recs(&m)).unwrap();
        for (a, b) in h.knots().iter().zip(m) {
            assert_close!(*a, b, 1e-15);
        }
    }

    #[test]
    fn rejects_zero_and_gaps() {
        assert!(envelope_h(&recs(&[0.5, 0.0])).is_err());
        let mut r = recs(&[0.5, 0.4]);
        r[1].n = 3;
        assert!(envelope_h(&r).is_err());
    }

    #[test]
    fn interpolates_and_refuses_outside() {
        let h = DecayEnvelope::from_knots(vec![0.8, 0.4, 0.2]).unwrap();
        assert_close!(h.value_at(1.5).unwrap(), 0.6, 1e-15);
        assert_close!(h.value_at(3.0).unwrap(), 0.2, 1e-15);
        assert!(h.value_at(3.5).is_err());
        assert!(h.value_at(0.5).is_err());
    }

    #[test]
    fn constant_envelope() {
        let c = 0.6;
        let map = PhiMap::new(DecayEnvelope::from_knots(vec![c; 50]).unwrap());
        for eps in [0.29, 0.1, 0.02] {
            let s = phi_of_epsilon(&map, eps).unwrap();
            assert_close!(s.x, c / eps - 1.0, 1e-9);
            assert_eq!(s.phi, c);
        }
    }

    #[test]
    fn domain_errors() {
        let map = PhiMap::new(DecayEnvelope::from_knots(vec![0.6; 10]).unwrap());
        assert!(matches!(phi_of_epsilon(&map, 0.3), Err(HardyError::InvalidArgument(_))));
        assert!(matches!(phi_of_epsilon(&map, 0.0), Err(HardyError::InvalidArgument(_))));
        assert!(matches!(phi_of_epsilon(&map, 0.05), Err(HardyError::EnvelopeSupport { .. })));
    }

    #[test]
    fn power_envelope_solver_contract_and_monotone() {
        let knots: Vec<f64> = (1..=400).map(|n| 0.9 * (n as f64).powf(-1.5)).collect();
        let map = PhiMap::new(DecayEnvelope::from_knots(knots).unwrap());
        let mut last = 0.0;
        let mut eps = map.eps_min() * 1.01;
        while eps < map.eps0 {
            let s = phi_of_epsilon(&map, eps).unwrap();
            let f = map.envelope.ratio(s.x);
            assert!((f - eps).abs() <= 1e-12 * eps, "{eps}: {f}");
            assert!(s.phi >= last);
            // φ ≤ C₂ ε^{σ/(1+σ)} with C₂ = (0.9)^{1/(1+σ)} · 2^{σ/(1+σ)} slack
            assert!(s.phi <= 2.0 * eps.powf(0.6));
            last = s.phi;
            eps *= 1.3;
        }
    }
}
