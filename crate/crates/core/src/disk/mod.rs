//! Points of the unit disk, Möbius factors and finite (weighted) Blaschke
//! products.
//!
//! Products of Möbius factors are accumulated as sums of logarithms. A
//! product of a few hundred factors of modulus `0.1` is far below the
//! smallest positive `f64`, while its logarithm is an ordinary number.
//! Exact zeros are carried as `-inf`.

mod circle;
mod weight;

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{HardyError, Result};

pub use circle::{maximize_on_circle, sup_on_circle, sup_on_circle_with_grid, CircleMax, CircleSup};
pub use weight::{WeightFunction, WeightKind};

/// Pseudo-distance below which two disk points are treated as the same point.
pub const COINCIDENCE_TOL: f64 = 1e-12;

/// A point of the open unit disk.
#[derive(Clone, Copy, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        Self::from_complex(Complex64::new(re, im))
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) || z.norm_sqr() >= 1.0 {
            return Err(HardyError::OutsideDisk { index: 0, modulus: z.norm() });
        }
        Ok(DiskPoint(z))
    }

    pub fn from_polar(radius: f64, theta: f64) -> Result<Self> {
        Self::from_complex(Complex64::from_polar(radius, theta))
    }

    pub const ORIGIN: DiskPoint = DiskPoint(Complex64 { re: 0.0, im: 0.0 });

    #[inline]
    pub fn z(self) -> Complex64 {
        self.0
    }

    #[inline]
    pub fn re(self) -> f64 {
        self.0.re
    }

    #[inline]
    pub fn im(self) -> f64 {
        self.0.im
    }

    #[inline]
    pub fn modulus(self) -> f64 {
        self.0.norm()
    }
}

impl fmt::Debug for DiskPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0.re, self.0.im)
    }
}

impl Serialize for DiskPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiskPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        DiskPoint::new(re, im).map_err(serde::de::Error::custom)
    }
}

/// A point `e^{iθ}` of the unit circle, with `θ` normalized into `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct BoundaryPoint {
    theta: f64,
}

impl BoundaryPoint {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(HardyError::invalid(format!("non-finite angle {theta}")));
        }
        let mut t = theta.rem_euclid(TAU);
        if t >= TAU {
            t = 0.0;
        }
        Ok(BoundaryPoint { theta: t })
    }

    pub fn theta(self) -> f64 {
        self.theta
    }

    pub fn z(self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }
}

/// Ordered zeros of a finite Blaschke product. Repeated entries encode
/// multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ZeroTuple(Vec<DiskPoint>);

impl ZeroTuple {
    pub fn new(points: Vec<DiskPoint>) -> Self {
        ZeroTuple(points)
    }

    pub fn empty() -> Self {
        ZeroTuple(Vec::new())
    }

    pub fn points(&self) -> &[DiskPoint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, z: DiskPoint) {
        self.0.push(z);
    }

    /// The tuple with entry `k` removed.
    pub fn without(&self, k: usize) -> ZeroTuple {
        let mut v = self.0.clone();
        v.remove(k);
        ZeroTuple(v)
    }

    /// Rejects tuples with two entries closer than [`COINCIDENCE_TOL`] in
    /// pseudo-distance. Interpolation nodes must pass this gate.
    pub fn check_distinct(&self) -> Result<()> {
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                let d = pseudo_distance(self.0[i], self.0[j]);
                if d < COINCIDENCE_TOL {
                    return Err(HardyError::DuplicatePoint { first: i, second: j, distance: d });
                }
            }
        }
        Ok(())
    }
}

impl FromIterator<DiskPoint> for ZeroTuple {
    fn from_iter<I: IntoIterator<Item = DiskPoint>>(iter: I) -> Self {
        ZeroTuple(iter.into_iter().collect())
    }
}

/// Natural logarithm of a modulus. `-inf` is an exact zero.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct LogMagnitude(f64);

impl LogMagnitude {
    pub const ONE: LogMagnitude = LogMagnitude(0.0);
    pub const VANISHING: LogMagnitude = LogMagnitude(f64::NEG_INFINITY);

    pub fn new(value: f64) -> Self {
        debug_assert!(!value.is_nan());
        LogMagnitude(value)
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn modulus(self) -> f64 {
        self.0.exp()
    }

    pub fn is_vanishing(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }
}

/// `|z - w| / |1 - w̄ z|`.
pub fn pseudo_distance(z: DiskPoint, w: DiskPoint) -> f64 {
    raw_pseudo_distance(z.0, w.0)
}

#[inline]
pub(crate) fn raw_pseudo_distance(z: Complex64, w: Complex64) -> f64 {
    (z - w).norm() / (Complex64::new(1.0, 0.0) - w.conj() * z).norm()
}

#[inline]
pub(crate) fn log_pseudo_distance(z: Complex64, w: Complex64) -> f64 {
    raw_pseudo_distance(z, w).ln()
}

/// The disk automorphism `(z - a) / (1 - ā z)`.
pub fn mobius(a: DiskPoint, z: DiskPoint) -> DiskPoint {
    let w = (z.0 - a.0) / (Complex64::new(1.0, 0.0) - a.0.conj() * z.0);
    DiskPoint(w)
}

#[inline]
pub(crate) fn raw_blaschke_log_abs(zeros: &[DiskPoint], z: Complex64) -> f64 {
    zeros.iter().map(|a| log_pseudo_distance(z, a.0)).sum()
}

/// `log |B(Z_n, z)|`; the empty product is `0`.
pub fn blaschke_log_abs(zeros: &ZeroTuple, z: DiskPoint) -> LogMagnitude {
    LogMagnitude(raw_blaschke_log_abs(&zeros.0, z.0))
}

/// `log |q(z) B(Z_n, z)|`.
pub fn weighted_blaschke_log_abs(q: &WeightFunction, zeros: &ZeroTuple, z: DiskPoint) -> LogMagnitude {
    LogMagnitude(q.log_abs(z.0) + raw_blaschke_log_abs(&zeros.0, z.0))
}

/// Upper bound `-(1 - |z|²)/4 · Σ (1 - |z_j|)` for `log |B(Z_n, z)|`.
pub fn mass_decay_bound(zeros: &ZeroTuple, z: DiskPoint) -> LogMagnitude {
    let mass: f64 = zeros.0.iter().map(|a| 1.0 - a.modulus()).sum();
    LogMagnitude(-(1.0 - z.0.norm_sqr()) / 4.0 * mass)
}

/// The same bound for a product with one zero deleted, which costs a factor 2.
pub fn deleted_mass_decay_bound(zeros: &ZeroTuple, z: DiskPoint) -> f64 {
    std::f64::consts::LN_2 + mass_decay_bound(zeros, z).value()
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(HardyError::invalid(format!("radius {r} outside (0, 1)")));
    }
    Ok(())
}

/// Largest `α` with `max{R^α, r^α} ≥ (R + r)/(1 + R r)` for every `r ∈ [0, 1]`:
/// `α*(R) = ln(2R / (1 + R²)) / ln R`.
pub fn alpha_star(r: f64) -> Result<f64> {
    check_radius(r)?;
    let alpha = (2.0 * r / (1.0 + r * r)).ln() / r.ln();
    Ok(alpha)
}

/// Jensen-type lower bound `log|q(0)| + Σ log max{R, |z_j|}` for the supremum of
/// `|B_q(Z_n, ·)|` over the closed disk of radius `R`.
pub fn jensen_lower(q: &WeightFunction, zeros: &ZeroTuple, r: f64) -> Result<LogMagnitude> {
    check_radius(r)?;
    let s: f64 = zeros.0.iter().map(|a| a.modulus().max(r).ln()).sum();
    Ok(LogMagnitude(q.log_abs(Complex64::new(0.0, 0.0)) + s))
}
