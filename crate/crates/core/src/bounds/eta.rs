use std::cmp::Ordering;

use num_complex::Complex64;
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::disk::{log_pseudo_distance, DiskPoint};
use crate::error::{HardyError, Result};
use crate::exact::ExactSum;

/// Largest block the generic `O(m²)` route accepts.
pub const GENERIC_BLOCK_LIMIT: usize = 20_000;
/// Point budget for the closed-form harmonic route.
pub const HARMONIC_POINT_LIMIT: usize = 50_000_000;

/// One block of consecutive points with mass `Σ (1 - |z_j|) ≥ k`.
#[derive(Clone, Debug, Serialize)]
pub struct EtaBlock {
    pub k: usize,
    /// Index of the first point (0-based).
    pub start: usize,
    pub len: usize,
    /// Block mass, rounded; the comparison with `k` was made exactly.
    pub mass: f64,
    pub min_log_eta: f64,
    pub max_log_eta: f64,
    /// `max_j log(|f(z_j)|/η_j)` when a test function was supplied.
    pub max_log_ratio: Option<f64>,
}

/// Blocks and `log η_j` for every point they cover, where
/// `η_j = |B(Z_{(k),j}, z_j)|/m_k` with `Z_{(k)}` the block holding `z_j` and
/// `m_k` its length.
#[derive(Clone, Debug, Serialize)]
pub struct EtaSequence {
    pub blocks: Vec<EtaBlock>,
    pub log_etas: Vec<f64>,
}

/// Greedy block ends: block `k` is the shortest run from the previous end
/// whose exact mass reaches `k`. Returns `(start, len, mass)` per block.
fn block_bounds(masses: impl Iterator<Item = f64>, k_max: usize, limit: usize) -> Result<Vec<(usize, usize, f64)>> {
    let mut out = Vec::with_capacity(k_max);
    let mut acc = ExactSum::new();
    let mut start = 0;
    let mut k = 1;
    for (i, m) in masses.enumerate() {
        if k > k_max {
            break;
        }
        if i >= limit {
            break;
        }
        acc.add(m);
        if acc.cmp_to(k as f64) != Ordering::Less {
            out.push((start, i + 1 - start, acc.value()));
            start = i + 1;
            acc = ExactSum::new();
            k += 1;
        }
    }
    if out.len() < k_max {
        return Err(HardyError::InsufficientMass { achieved: out.len(), requested: k_max });
    }
    Ok(out)
}

fn summarize(k: usize, start: usize, len: usize, mass: f64, etas: &[f64], ratios: Option<Vec<f64>>) -> EtaBlock {
    let fold = |init: f64, f: fn(f64, f64) -> f64| etas.iter().copied().fold(init, f);
    EtaBlock {
        k,
        start,
        len,
        mass,
        min_log_eta: fold(f64::INFINITY, f64::min),
        max_log_eta: fold(f64::NEG_INFINITY, f64::max),
        max_log_ratio: ratios.map(|r| r.into_iter().fold(f64::NEG_INFINITY, f64::max)),
    }
}

/// Blocks and `η` for an arbitrary sequence, by direct evaluation of every
/// deleted product.
pub fn eta_sequence(seq: &[DiskPoint], k_max: usize, f: Option<fn(Complex64) -> Complex64>) -> Result<EtaSequence> {
    if k_max == 0 {
        return Err(HardyError::invalid("k_max must be at least 1"));
    }
    let bounds = block_bounds(seq.iter().map(|z| 1.0 - z.modulus()), k_max, seq.len())?;
    let mut blocks = Vec::with_capacity(k_max);
    let mut log_etas = Vec::new();
    for (b, &(start, len, mass)) in bounds.iter().enumerate() {
        if len > GENERIC_BLOCK_LIMIT {
            return Err(HardyError::BudgetExceeded { requested: len as u128, budget: GENERIC_BLOCK_LIMIT as u128 });
        }
        let pts = &seq[start..start + len];
        let log_m = (len as f64).ln();
        let etas: Vec<f64> = (0..len)
            .map(|j| {
                let zj = pts[j].z();
                let s: f64 =
                    pts.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, a)| log_pseudo_distance(zj, a.z())).sum();
                s - log_m
            })
            .collect();
        let ratios = f.map(|f| pts.iter().zip(&etas).map(|(z, e)| f(z.z()).norm().ln() - e).collect());
        blocks.push(summarize(b + 1, start, len, mass, &etas, ratios));
        log_etas.extend(etas);
    }
    Ok(EtaSequence { blocks, log_etas })
}

/// Radius `1 - 1/(j + 1)` of the `j`-th point (`j ≥ 1`) of the harmonic rule.
pub fn harmonic_radius(j: usize) -> f64 {
    1.0 - 1.0 / (j as f64 + 1.0)
}

/// [`eta_sequence`] for `z_j = (1 - 1/(j+1)) e^{iθ}`, `j = 1, 2, …`, in
/// closed form. On a common ray `d(z_i, z_j) = |i - j|/(i + j + 1)`, so for a
/// block `a..=b`
/// `log|B(Z_{(k),j}, z_j)| = log (j-a)! + log (b-j)! - Σ_{i ≠ j} log(i + j + 1)`,
/// and the last sum is a difference of log-gamma values.
pub fn eta_sequence_harmonic(angle: f64, k_max: usize, f: Option<fn(Complex64) -> Complex64>) -> Result<EtaSequence> {
    if k_max == 0 {
        return Err(HardyError::invalid("k_max must be at least 1"));
    }
    let masses = (1..).map(|j| 1.0 - harmonic_radius(j));
    let bounds = block_bounds(masses, k_max, HARMONIC_POINT_LIMIT)?;
    let dir = Complex64::from_polar(1.0, angle);
    let mut blocks = Vec::with_capacity(k_max);
    let mut log_etas = Vec::new();
    for (b, &(start, len, mass)) in bounds.iter().enumerate() {
        // global indices j = start + 1 ..= start + len
        let a = start + 1;
        let last = start + len;
        let log_m = (len as f64).ln();
        let etas: Vec<f64> = (a..=last)
            .map(|j| {
                let jf = j as f64;
                let fact = ln_gamma((j - a) as f64 + 1.0) + ln_gamma((last - j) as f64 + 1.0);
                let denom = ln_gamma((last + j) as f64 + 2.0) - ln_gamma((a + j) as f64 + 1.0) - (2.0 * jf + 1.0).ln();
                fact - denom - log_m
            })
            .collect();
        let ratios =
            f.map(|f| (a..=last).zip(&etas).map(|(j, e)| f(dir * harmonic_radius(j)).norm().ln() - e).collect());
        blocks.push(summarize(b + 1, start, len, mass, &etas, ratios));
        log_etas.extend(etas);
    }
    Ok(EtaSequence { blocks, log_etas })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_shift(z: Complex64) -> Complex64 {
        (1.0 + z) / 2.0
    }

    fn radial(count: usize) -> Vec<DiskPoint> {
        (1..=count).map(|j| DiskPoint::new(harmonic_radius(j), 0.0).unwrap()).collect()
    }

    #[test]
    fn harmonic_second_block_starts_at_four() {
        let s = eta_sequence(&radial(100), 2, None).unwrap();
        assert_eq!(s.blocks[0].start, 0);
        assert_eq!(s.blocks[0].len, 3);
        assert_eq!(s.blocks[1].start + 1, 4);
        // prefix-sum oracle: 1/2 + 1/3 + 1/4
        assert_close!(s.blocks[0].mass, 1.0 / 2.0 + 1.0 / 3.0 + 1.0 / 4.0, 1e-15);
    }

    #[test]
    fn origin_sequence_has_unit_masses() {
        let seq = vec![DiskPoint::ORIGIN; 10];
        let b = block_bounds(seq.iter().map(|z| 1.0 - z.modulus()), 4, seq.len()).unwrap();
        let lens: Vec<usize> = b.iter().map(|t| t.1).collect();
        assert_eq!(lens, vec![1, 2, 3, 4]);
    }

    #[test]
    fn insufficient_mass_names_blocks() {
        match eta_sequence(&radial(10), 3, None) {
            Err(HardyError::InsufficientMass { achieved, requested }) => assert_eq!((achieved, requested), (1, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn closed_form_matches_direct_evaluation() {
        let direct = eta_sequence(&radial(2000), 3, Some(half_shift)).unwrap();
        let fast = eta_sequence_harmonic(0.0, 3, Some(half_shift)).unwrap();
        assert_eq!(direct.blocks.len(), fast.blocks.len());
        for (a, b) in direct.blocks.iter().zip(&fast.blocks) {
            assert_eq!((a.start, a.len), (b.start, b.len));
        }
        assert_eq!(direct.log_etas.len(), fast.log_etas.len());
        for (a, b) in direct.log_etas.iter().zip(&fast.log_etas) {
            assert!((a - b).abs() <= 1e-8 * a.abs().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn ratios_grow_over_blocks() {
        let s = eta_sequence_harmonic(0.0, 4, Some(half_shift)).unwrap();
        for w in s.blocks.windows(2) {
            assert!(w[1].min_log_eta < w[0].min_log_eta);
            assert!(w[1].max_log_ratio.unwrap() >= w[0].max_log_ratio.unwrap());
        }
    }
}
