use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::disk::{maximize_on_circle, DiskPoint};
use crate::error::{HardyError, Result};
use crate::interp::Exponent;

const OMEGA_GRID: usize = 4096;

/// A finite union of closed arcs of the unit circle, normalized to disjoint
/// counterclockwise arcs `[a, b]` with `a ∈ [0, 2π)` and `b > a`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArcSet {
    arcs: Vec<(f64, f64)>,
    full: bool,
}

impl ArcSet {
    /// Each input pair runs counterclockwise from the first angle to the
    /// second; overlapping or touching arcs are merged. An arc of length `2π`
    /// or more covers the circle.
    pub fn new(arcs: &[(f64, f64)]) -> Result<Self> {
        if arcs.is_empty() {
            return Err(HardyError::invalid("arc set is empty"));
        }
        let mut raw = Vec::with_capacity(arcs.len());
        for &(s, e) in arcs {
            if !(s.is_finite() && e.is_finite()) || e <= s {
                return Err(HardyError::invalid(format!("arc ({s}, {e}) must have end > start")));
            }
            if e - s >= TAU {
                return Ok(ArcSet::full_circle());
            }
            let a = s.rem_euclid(TAU);
            raw.push((a, a + (e - s)));
        }
        raw.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
        let mut merged: Vec<(f64, f64)> = Vec::new();
        for (a, b) in raw {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        // an arc running past 2π may reach the first arcs again
        while merged.len() > 1 {
            let end = merged.last().unwrap().1 - TAU;
            if merged[0].0 <= end {
                let first = merged.remove(0);
                let last = merged.last_mut().unwrap();
                last.1 = last.1.max(first.1 + TAU);
            } else {
                break;
            }
        }
        let total: f64 = merged.iter().map(|(a, b)| b - a).sum();
        if total >= TAU {
            return Ok(ArcSet::full_circle());
        }
        Ok(ArcSet { arcs: merged, full: false })
    }

    pub fn full_circle() -> Self {
        ArcSet { arcs: vec![(0.0, TAU)], full: true }
    }

    pub fn arcs(&self) -> &[(f64, f64)] {
        &self.arcs
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    /// Total arc length.
    pub fn measure(&self) -> f64 {
        if self.full {
            TAU
        } else {
            self.arcs.iter().map(|(a, b)| b - a).sum()
        }
    }
}

/// Harmonic measure of the arc `[a, b]` (length at most `π/2`) at `z`:
/// `(angle subtended at z)/π - (b - a)/(2π)`.
fn arc_piece(a: f64, b: f64, z: Complex64) -> f64 {
    let ea = Complex64::from_polar(1.0, a);
    let eb = Complex64::from_polar(1.0, b);
    let angle = ((eb - z) / (ea - z)).arg().rem_euclid(TAU);
    angle / PI - (b - a) / TAU
}

fn omega_raw(arcs: &ArcSet, z: Complex64) -> f64 {
    if arcs.full {
        return 1.0;
    }
    let mut total = 0.0;
    for &(a, b) in &arcs.arcs {
        let pieces = ((b - a) / FRAC_PI_2).ceil().max(1.0) as usize;
        let h = (b - a) / pieces as f64;
        for i in 0..pieces {
            let lo = a + i as f64 * h;
            let hi = if i + 1 == pieces { b } else { lo + h };
            total += arc_piece(lo, hi, z);
        }
    }
    total
}

/// The Poisson integral of the indicator of `arcs` at `z`.
pub fn harmonic_omega(arcs: &ArcSet, z: DiskPoint) -> f64 {
    omega_raw(arcs, z.z())
}

/// `ε ≤ C ≤ 2^{1/p} (1 - R²)^{-1/p} ε^{ω_min}`, with `ω_min` the least
/// harmonic measure of the arcs over `|z| ≤ R`.
#[derive(Clone, Debug, Serialize)]
pub struct PositiveMeasureBound {
    pub eps: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub p: Exponent,
    pub lower: f64,
    pub upper: f64,
    pub log_upper: f64,
    pub omega_min: f64,
    /// Angle on `|z| = R` where the minimum is attained.
    pub theta_min: f64,
}

pub fn positive_measure_bound(arcs: &ArcSet, eps: f64, r: f64, p: Exponent) -> Result<PositiveMeasureBound> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(HardyError::invalid(format!("eps = {eps} must lie in (0, 1)")));
    }
    if !(0.0..1.0).contains(&r) {
        return Err(HardyError::invalid(format!("R = {r} outside [0, 1)")));
    }
    // harmonic, so the minimum over the closed ball sits on its boundary
    let (omega_min, theta_min) = if r == 0.0 {
        (omega_raw(arcs, Complex64::new(0.0, 0.0)), 0.0)
    } else {
        let m = maximize_on_circle(|t| -omega_raw(arcs, Complex64::from_polar(r, t)), OMEGA_GRID);
        (-m.value, m.theta)
    };
    let inv_p = p.reciprocal();
    let log_upper = inv_p * (2f64.ln() - (1.0 - r * r).ln()) + omega_min * eps.ln();
    Ok(PositiveMeasureBound { eps, r, p, lower: eps, upper: log_upper.exp(), log_upper, omega_min, theta_min })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poisson_oracle(arcs: &ArcSet, z: Complex64, n: usize) -> f64 {
        // midpoint rule on each arc
        let mut s = 0.0;
        for &(a, b) in arcs.arcs() {
            let h = (b - a) / n as f64;
            for i in 0..n {
                let t = a + (i as f64 + 0.5) * h;
                let e = Complex64::from_polar(1.0, t);
                s += (1.0 - z.norm_sqr()) / (e - z).norm_sqr() * h;
            }
        }
        s / TAU
    }

    #[test]
    fn mean_values_at_origin() {
        let half = ArcSet::new(&[(0.0, PI)]).unwrap();
        let quarter = ArcSet::new(&[(1.0, 1.0 + FRAC_PI_2)]).unwrap();
        let full = ArcSet::new(&[(0.0, TAU)]).unwrap();
        assert_close!(harmonic_omega(&half, DiskPoint::ORIGIN), 0.5, 1e-14);
        assert_close!(harmonic_omega(&quarter, DiskPoint::ORIGIN), 0.25, 1e-14);
        assert_eq!(harmonic_omega(&full, DiskPoint::ORIGIN), 1.0);
    }

    #[test]
    fn matches_poisson_quadrature() {
        let arcs = ArcSet::new(&[(0.3, 2.9), (4.0, 5.5)]).unwrap();
        for (r, t) in [(0.2, 0.0), (0.6, 1.0), (0.8, 4.5), (0.9, 3.3)] {
            let z = Complex64::from_polar(r, t);
            let w = harmonic_omega(&arcs, DiskPoint::from_complex(z).unwrap());
            assert_close!(w, poisson_oracle(&arcs, z, 200_000), 1e-9);
            assert!(w > 0.0 && w < 1.0);
        }
    }

    #[test]
    fn merges_and_wraps() {
        let a = ArcSet::new(&[(0.0, 1.0), (0.5, 2.0), (6.0, 6.5)]).unwrap();
        assert_eq!(a.arcs().len(), 1);
        assert_close!(a.measure(), 2.0 + (TAU - 6.0), 1e-12);
        assert!(ArcSet::new(&[(0.0, 4.0), (3.0, 7.0)]).unwrap().is_full());
        assert!(ArcSet::new(&[]).is_err());
        assert!(ArcSet::new(&[(1.0, 1.0)]).is_err());
    }

    #[test]
    fn additive_over_disjoint_arcs() {
        let a = ArcSet::new(&[(0.2, 1.4)]).unwrap();
        let b = ArcSet::new(&[(2.0, 5.0)]).unwrap();
        let ab = ArcSet::new(&[(0.2, 1.4), (2.0, 5.0)]).unwrap();
        let z = DiskPoint::new(0.3, -0.5).unwrap();
        assert_close!(harmonic_omega(&a, z) + harmonic_omega(&b, z), harmonic_omega(&ab, z), 1e-12);
    }

    #[test]
    fn bound_examples() {
        let full = ArcSet::full_circle();
        let b = positive_measure_bound(&full, 0.1, 0.5, Exponent::Finite(2.0)).unwrap();
        assert_close!(b.upper, (2.0f64 / 0.75).sqrt() * 0.1, 1e-14);

        let half = ArcSet::new(&[(0.0, PI)]).unwrap();
        let b = positive_measure_bound(&half, 0.01, 0.0, Exponent::Finite(2.0)).unwrap();
        assert_close!(b.upper, 2f64.sqrt() * 0.1, 1e-13);

        // dense angular scan oracle on |z| = 0.5
        let b = positive_measure_bound(&half, 0.01, 0.5, Exponent::Finite(2.0)).unwrap();
        let scan = (0..100_000)
            .map(|i| omega_raw(&half, Complex64::from_polar(0.5, TAU * i as f64 / 1e5)))
            .fold(f64::INFINITY, f64::min);
        assert!(b.omega_min <= scan + 1e-12 && b.omega_min >= scan - 1e-8);
    }
}
