use num_complex::Complex64;
use serde::{Serialize, Serializer};

use super::{maximize_on_circle, BoundaryPoint};
use crate::error::{HardyError, Result};

const NORM_GRID: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightKind {
    Unit,
    BoundaryPoly,
}

impl WeightKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WeightKind::Unit => "unit",
            WeightKind::BoundaryPoly => "boundary_poly",
        }
    }
}

impl Serialize for WeightKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// The weight `q`: either `q ≡ 1` or `q(z) = c_q ∏ (z - a_j)` with vertices
/// `a_j` on the unit circle and `c_q` chosen so that `sup_{|z| ≤ 1} |q| = 1`.
///
/// `q` has no zeros in the open disk and tends to zero at every vertex.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightFunction {
    kind: WeightKind,
    vertices: Vec<BoundaryPoint>,
    norm_const: f64,
    #[serde(skip)]
    log_norm: f64,
}

impl WeightFunction {
    pub fn unit() -> Self {
        WeightFunction { kind: WeightKind::Unit, vertices: Vec::new(), norm_const: 1.0, log_norm: 0.0 }
    }

    /// Builds the normalized boundary polynomial with the given vertex angles.
    pub fn boundary_poly(thetas: &[f64]) -> Result<Self> {
        if thetas.is_empty() {
            return Err(HardyError::invalid("boundary polynomial needs at least one vertex"));
        }
        let vertices = thetas.iter().map(|&t| BoundaryPoint::new(t)).collect::<Result<Vec<_>>>()?;
        let raw: Vec<Complex64> = vertices.iter().map(|v| v.z()).collect();
        let log_poly = |t: f64| {
            let z = Complex64::from_polar(1.0, t);
            raw.iter().map(|a| (z - a).norm().ln()).sum::<f64>()
        };
        let grid = NORM_GRID.max(64 * vertices.len());
        let peak = maximize_on_circle(log_poly, grid);
        let log_norm = -peak.value;
        Ok(WeightFunction { kind: WeightKind::BoundaryPoly, vertices, norm_const: log_norm.exp(), log_norm })
    }

    /// `Unit` for an empty vertex list, otherwise [`WeightFunction::boundary_poly`].
    pub fn from_vertices(thetas: &[f64]) -> Result<Self> {
        if thetas.is_empty() {
            Ok(Self::unit())
        } else {
            Self::boundary_poly(thetas)
        }
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn vertices(&self) -> &[BoundaryPoint] {
        &self.vertices
    }

    pub fn vertex_thetas(&self) -> Vec<f64> {
        self.vertices.iter().map(|v| v.theta()).collect()
    }

    pub fn norm_const(&self) -> f64 {
        self.norm_const
    }

    /// `log |q(z)|`, valid on the closed disk.
    #[inline]
    pub fn log_abs(&self, z: Complex64) -> f64 {
        match self.kind {
            WeightKind::Unit => 0.0,
            WeightKind::BoundaryPoly => {
                self.log_norm + self.vertices.iter().map(|v| (z - v.z()).norm().ln()).sum::<f64>()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    fn circle_sup(q: &WeightFunction, n: usize) -> f64 {
        (0..n)
            .map(|i| q.log_abs(Complex64::from_polar(1.0, TAU * i as f64 / n as f64)))
            .fold(f64::NEG_INFINITY, f64::max)
            .exp()
    }

    #[test]
    fn unit_weight_is_one() {
        let q = WeightFunction::unit();
        assert_eq!(q.norm_const(), 1.0);
        assert_eq!(q.log_abs(Complex64::new(0.3, 0.1)), 0.0);
        assert_eq!(q.kind(), WeightKind::Unit);
    }

    #[test]
    fn single_vertex_norm() {
        let q = WeightFunction::boundary_poly(&[0.0]).unwrap();
        assert_close!(q.norm_const(), 0.5, 1e-13);
    }

    #[test]
    fn sup_norm_is_one_for_several_vertex_sets() {
        let sets: [&[f64]; 4] = [&[0.0, PI], &[0.3, 1.1, 4.0], &[0.0, 0.01], &[1.0, 2.0, 3.0, 4.0, 5.0]];
        for thetas in sets {
            let q = WeightFunction::boundary_poly(thetas).unwrap();
            let s = circle_sup(&q, 200_000);
            assert!(s <= 1.0 + 1e-9, "{thetas:?}: {s}");
            assert!(s >= 1.0 - 1e-6, "{thetas:?}: {s}");
        }
    }

    #[test]
    fn nonvanishing_inside() {
        let q = WeightFunction::boundary_poly(&[0.0, PI / 2.0]).unwrap();
        for r in [0.0, 0.5, 0.999_999] {
            for k in 0..16 {
                let v = q.log_abs(Complex64::from_polar(r, k as f64 * TAU / 16.0));
                assert!(v.is_finite());
            }
        }
    }

    #[test]
    fn empty_vertices_rejected() {
        assert!(WeightFunction::boundary_poly(&[]).is_err());
        assert_eq!(WeightFunction::from_vertices(&[]).unwrap().kind(), WeightKind::Unit);
    }
}
