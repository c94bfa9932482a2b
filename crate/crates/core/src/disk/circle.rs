use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{jensen_lower, raw_blaschke_log_abs, DiskPoint, LogMagnitude, WeightFunction, ZeroTuple};
use crate::error::{HardyError, Result};

const REFINE_CANDIDATES: usize = 8;
const GOLDEN_STOP: f64 = 1e-12;
const MAX_GRID: usize = 1 << 16;

/// Maximum of a function of the angle, with its location.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleMax {
    pub theta: f64,
    pub value: f64,
}

/// Maximizes a smooth `2π`-periodic function: dense grid scan, then
/// golden-section refinement inside the grid cells around the best local
/// maxima. Ties go to the smallest angle.
pub fn maximize_on_circle<F: Fn(f64) -> f64>(f: F, n_grid: usize) -> CircleMax {
    let n = n_grid.max(8);
    let h = TAU / n as f64;
    let values: Vec<f64> = (0..n).map(|i| f(i as f64 * h)).collect();

    let mut best = CircleMax { theta: 0.0, value: values[0] };
    for (i, &v) in values.iter().enumerate() {
        if v > best.value {
            best = CircleMax { theta: i as f64 * h, value: v };
        }
    }

    let mut peaks: Vec<usize> = (0..n)
        .filter(|&i| {
            let v = values[i];
            v > f64::NEG_INFINITY && v >= values[(i + n - 1) % n] && v >= values[(i + 1) % n]
        })
        .collect();
    // stable: equal values keep index order
    peaks.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    peaks.truncate(REFINE_CANDIDATES);

    for i in peaks {
        let c = i as f64 * h;
        let cand = golden_max(&f, c - h, c + h);
        if cand.value > best.value {
            best = cand;
        }
    }
    best.theta = best.theta.rem_euclid(TAU);
    best
}

fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> CircleMax {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > GOLDEN_STOP {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        CircleMax { theta: x1, value: f1 }
    } else {
        CircleMax { theta: x2, value: f2 }
    }
}

/// Supremum of `|B_q(Z_n, ·)|` over the closed disk of radius `R`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleSup {
    pub log_sup: LogMagnitude,
    /// A point with `|z| = R` attaining the supremum.
    pub witness: DiskPoint,
}

/// Grid size for [`sup_on_circle`].
///
/// The angular derivative of `|B_q|` on `|z| = R` is at most
/// `R (Σ (1 - |a|²)/(1 - |a|R)² + m 2^{m-1} c_q)` for `m` weight vertices. The
/// grid is made fine enough that one cell moves `|B_q|` by less than half of the
/// Jensen lower bound for the supremum, so the cell holding the maximizer is
/// among the refined candidates.
fn grid_size(q: &WeightFunction, zeros: &ZeroTuple, r: f64) -> usize {
    let base = 1024usize.max(64 * zeros.len());
    let zero_term: f64 = zeros
        .points()
        .iter()
        .map(|a| {
            let m = a.modulus();
            (1.0 - m * m) / (1.0 - m * r).powi(2)
        })
        .sum();
    let nv = q.vertices().len() as f64;
    let weight_term = if nv > 0.0 { nv * 2f64.powf(nv - 1.0) * q.norm_const() } else { 0.0 };
    let lipschitz = r * (zero_term + weight_term);
    let floor = jensen_lower(q, zeros, r).map(|j| j.modulus()).unwrap_or(0.0);
    if floor <= 0.0 || lipschitz == 0.0 {
        return base;
    }
    let needed = (2.0 * TAU * lipschitz / floor).ceil();
    if needed.is_finite() && needed > base as f64 {
        (needed as usize).min(MAX_GRID)
    } else {
        base
    }
}

/// `sup_{|z| ≤ R} |B_q(Z_n, z)|`, attained on `|z| = R` by the maximum
/// principle.
pub fn sup_on_circle(q: &WeightFunction, zeros: &ZeroTuple, r: f64) -> Result<CircleSup> {
    if !(r > 0.0 && r < 1.0) {
        return Err(HardyError::invalid(format!("radius {r} outside (0, 1)")));
    }
    let n = grid_size(q, zeros, r);
    sup_on_circle_with_grid(q, zeros, r, n)
}

/// [`sup_on_circle`] with an explicit initial grid size.
pub fn sup_on_circle_with_grid(q: &WeightFunction, zeros: &ZeroTuple, r: f64, n_grid: usize) -> Result<CircleSup> {
    if !(r > 0.0 && r < 1.0) {
        return Err(HardyError::invalid(format!("radius {r} outside (0, 1)")));
    }
    let pts = zeros.points();
    let f = |t: f64| {
        let z = Complex64::from_polar(r, t);
        q.log_abs(z) + raw_blaschke_log_abs(pts, z)
    };
    let m = maximize_on_circle(f, n_grid);
    Ok(CircleSup { log_sup: LogMagnitude::new(m.value), witness: DiskPoint::from_polar(r, m.theta)? })
}
