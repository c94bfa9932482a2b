//! Generators for candidate sets: lattice points in a compact disk, fans of
//! points inside Stolz angles, radial sequences with divergent mass, and the
//! JSON point-set format.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::disk::{pseudo_distance, BoundaryPoint, DiskPoint, WeightFunction, COINCIDENCE_TOL};
use crate::error::{HardyError, Result};
use crate::potential::CandidateSet;

pub const MAX_GRID_POINTS: usize = 100_000;
/// Relative slack for the floating-point cone test.
const CONE_SLACK: f64 = 1e-12;

/// Radius `1 - 1/(j + 1)` of the `j`-th radial point, `j ≥ 1`.
pub fn harmonic_radius(j: usize) -> f64 {
    crate::bounds::harmonic_radius(j)
}

/// Lattice `mesh·Z²` intersected with `|z| ≤ r`, row by row (imaginary part
/// ascending, then real part ascending), with unit weight.
pub fn gen_compact_grid(r: f64, mesh: f64) -> Result<CandidateSet> {
    if !(r > 0.0 && r < 1.0) {
        return Err(HardyError::invalid(format!("r = {r} outside (0, 1)")));
    }
    if !(mesh > 0.0 && mesh < r) {
        return Err(HardyError::invalid(format!("mesh = {mesh} must lie in (0, r)")));
    }
    let ratio = r / mesh;
    let m = ratio.floor() as i64;
    let estimate = std::f64::consts::PI * ratio * ratio;
    if estimate > 2.0 * MAX_GRID_POINTS as f64 {
        return Err(HardyError::BudgetExceeded { requested: estimate as u128, budget: MAX_GRID_POINTS as u128 });
    }
    let cap = ratio * ratio * (1.0 + 1e-12);
    let mut points = Vec::new();
    for j in -m..=m {
        for i in -m..=m {
            if ((i * i + j * j) as f64) <= cap {
                points.push(DiskPoint::new(i as f64 * mesh, j as f64 * mesh)?);
            }
        }
    }
    if points.len() > MAX_GRID_POINTS {
        return Err(HardyError::BudgetExceeded { requested: points.len() as u128, budget: MAX_GRID_POINTS as u128 });
    }
    CandidateSet::new(points, WeightFunction::unit(), format!("compact(r={r},mesh={mesh})"))
}

/// Points of one Stolz angle `|1 - z̄ζ| ≤ σ(1 - |z|)` with vertex `ζ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StolzSpec {
    pub vertex: f64,
    pub sigma: f64,
    pub count: usize,
}

/// `|1 - z̄ζ| ≤ σ(1 - |z|)` up to a relative rounding slack.
pub fn in_stolz_angle(z: DiskPoint, vertex: BoundaryPoint, sigma: f64) -> bool {
    let lhs = (1.0 - z.z().conj() * vertex.z()).norm();
    let rhs = sigma * (1.0 - z.modulus());
    lhs <= rhs * (1.0 + CONE_SLACK)
}

/// Half-width of the cone cross-section at radius `ρ`: the angle `φ` with
/// `|1 - ρ e^{iφ}| = σ(1 - ρ)`.
fn fan_half_width(rho: f64, sigma: f64) -> f64 {
    let c = (1.0 + rho * rho - sigma * sigma * (1.0 - rho) * (1.0 - rho)) / (2.0 * rho);
    c.clamp(-1.0, 1.0).acos()
}

/// For each spec, radii `1 - 1/(j+1)` for `j = 1..=count` and at each radius
/// `2⌈σ⌉ + 1` angles spread evenly across the cone's cross-section. Coincident
/// points are kept once. The weight has the vertices as its zeros.
pub fn gen_stolz(specs: &[StolzSpec]) -> Result<CandidateSet> {
    if specs.is_empty() {
        return Err(HardyError::invalid("at least one Stolz angle is required"));
    }
    let mut points: Vec<DiskPoint> = Vec::new();
    let mut vertices = Vec::with_capacity(specs.len());
    for s in specs {
        if !(s.sigma >= 1.0 && s.sigma.is_finite()) {
            return Err(HardyError::invalid(format!("sigma = {} must be at least 1", s.sigma)));
        }
        if s.count == 0 {
            return Err(HardyError::invalid("Stolz count must be positive"));
        }
        let vertex = BoundaryPoint::new(s.vertex)?;
        vertices.push(vertex.theta());
        let half = s.sigma.ceil() as i64;
        for j in 1..=s.count {
            let rho = harmonic_radius(j);
            let mut width = fan_half_width(rho, s.sigma);
            for i in -half..=half {
                let frac = i as f64 / half as f64;
                let mut z = DiskPoint::from_polar(rho, vertex.theta() + frac * width)?;
                let mut tries = 0;
                while !in_stolz_angle(z, vertex, s.sigma) {
                    tries += 1;
                    if tries > 64 || frac == 0.0 {
                        return Err(HardyError::Invariant(format!(
                            "generated point {z:?} lies outside the Stolz angle at {}",
                            vertex.theta()
                        )));
                    }
                    width *= 1.0 - 1e-9;
                    z = DiskPoint::from_polar(rho, vertex.theta() + frac * width)?;
                }
                if !points.iter().any(|&w| pseudo_distance(w, z) < COINCIDENCE_TOL) {
                    points.push(z);
                }
            }
        }
    }
    let weight = WeightFunction::boundary_poly(&vertices)?;
    let label = format!(
        "stolz({})",
        specs
            .iter()
            .map(|s| format!("vertex={},sigma={},count={}", s.vertex, s.sigma, s.count))
            .collect::<Vec<_>>()
            .join(";")
    );
    CandidateSet::new(points, weight, label)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialRule {
    /// `1 - 1/(j + 1)`, `j = 1..=count`.
    Harmonic,
    Custom(Vec<f64>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightRule {
    Unit,
    /// Vertices at the boundary points the scenario accumulates at.
    AutoVertices,
}

/// `z_j = ρ_j e^{iθ}`. With [`WeightRule::AutoVertices`] the weight vanishes
/// at `e^{iθ}`.
pub fn gen_radial(rule: &RadialRule, count: usize, angle: f64, weight: WeightRule) -> Result<CandidateSet> {
    let radii: Vec<f64> = match rule {
        RadialRule::Harmonic => (1..=count).map(harmonic_radius).collect(),
        RadialRule::Custom(r) => {
            if r.len() < count {
                return Err(HardyError::invalid(format!("{} radii given for count {count}", r.len())));
            }
            r[..count].to_vec()
        }
    };
    if count == 0 {
        return Err(HardyError::invalid("radial count must be positive"));
    }
    for (i, w) in radii.windows(2).enumerate() {
        if w[1] <= w[0] {
            return Err(HardyError::invalid(format!("radii must increase strictly (index {})", i + 1)));
        }
    }
    if let Some(i) = radii.iter().position(|&r| !(0.0..1.0).contains(&r)) {
        return Err(HardyError::invalid(format!("radius {} at index {i} outside [0, 1)", radii[i])));
    }
    let points = radii.iter().map(|&r| DiskPoint::from_polar(r, angle)).collect::<Result<Vec<_>>>()?;
    let q = match weight {
        WeightRule::Unit => WeightFunction::unit(),
        WeightRule::AutoVertices => WeightFunction::boundary_poly(&[angle])?,
    };
    let name = match rule {
        RadialRule::Harmonic => "harmonic",
        RadialRule::Custom(_) => "custom",
    };
    CandidateSet::new(points, q, format!("radial({name},count={count},angle={angle})"))
}

/// A candidate-set recipe.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScenarioSpec {
    CompactGrid { r: f64, mesh: f64 },
    Stolz { angles: Vec<StolzSpec> },
    Radial { rule: RadialRule, count: usize, angle: f64, weight: WeightRule },
    FromFile { path: PathBuf },
}

impl ScenarioSpec {
    pub fn build(&self) -> Result<CandidateSet> {
        match self {
            ScenarioSpec::CompactGrid { r, mesh } => gen_compact_grid(*r, *mesh),
            ScenarioSpec::Stolz { angles } => gen_stolz(angles),
            ScenarioSpec::Radial { rule, count, angle, weight } => gen_radial(rule, *count, *angle, *weight),
            ScenarioSpec::FromFile { path } => load_points(path),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FileWeight {
    kind: String,
    vertices_theta: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct FilePoint {
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
struct PointFile {
    label: String,
    weight: FileWeight,
    points: Vec<FilePoint>,
}

/// 17 significant digits: enough for an exact round trip.
fn exact_decimal(x: f64) -> String {
    format!("{x:.16e}")
}

fn io_err(path: &Path, source: std::io::Error) -> HardyError {
    HardyError::Io { path: path.to_path_buf(), source }
}

/// Parses the point-set JSON format.
pub fn points_from_json(text: &str) -> Result<CandidateSet> {
    let file: PointFile = serde_json::from_str(text).map_err(|e| HardyError::Parse(e.to_string()))?;
    let weight = match file.weight.kind.as_str() {
        "unit" if file.weight.vertices_theta.is_empty() => WeightFunction::unit(),
        "unit" => return Err(HardyError::Parse("unit weight cannot have vertices".into())),
        "boundary_poly" => WeightFunction::boundary_poly(&file.weight.vertices_theta)?,
        other => return Err(HardyError::Parse(format!("unknown weight kind '{other}'"))),
    };
    let mut points = Vec::with_capacity(file.points.len());
    for (index, p) in file.points.iter().enumerate() {
        let parse = |s: &str, part: &str| {
            s.trim().parse::<f64>().map_err(|_| HardyError::Parse(format!("point {index}: bad {part} '{s}'")))
        };
        let (re, im) = (parse(&p.re, "re")?, parse(&p.im, "im")?);
        let z = DiskPoint::new(re, im).map_err(|_| HardyError::OutsideDisk { index, modulus: re.hypot(im) })?;
        points.push(z);
    }
    CandidateSet::new(points, weight, file.label)
}

pub fn points_to_json(e: &CandidateSet) -> String {
    let file = PointFile {
        label: e.label().to_string(),
        weight: FileWeight { kind: e.weight().kind().as_str().to_string(), vertices_theta: e.weight().vertex_thetas() },
        points: e.points().iter().map(|z| FilePoint { re: exact_decimal(z.re()), im: exact_decimal(z.im()) }).collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("point file serializes");
    s.push('\n');
    s
}

pub fn load_points(path: &Path) -> Result<CandidateSet> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    points_from_json(&text)
}

pub fn save_points(e: &CandidateSet, path: &Path) -> Result<()> {
    std::fs::write(path, points_to_json(e)).map_err(|e| io_err(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn compact_grid_counts() {
        let e = gen_compact_grid(0.25, 0.05).unwrap();
        assert_eq!(e.len(), 81);
        assert!(e.points().iter().all(|z| z.modulus() <= 0.25 + 1e-12));
        assert_eq!(gen_compact_grid(0.25, 0.1).unwrap().len(), 21);
        assert!(gen_compact_grid(0.9, 0.001).is_err());
        assert!(gen_compact_grid(0.2, 0.3).is_err());
        // row-major: first row is the lowest
        assert_eq!(e.points()[0].im(), -0.25);
    }

    #[test]
    fn stolz_single_vertex_sigma_one_is_radial() {
        let e = gen_stolz(&[StolzSpec { vertex: 0.0, sigma: 1.0, count: 6 }]).unwrap();
        assert_eq!(e.len(), 6);
        for z in e.points() {
            assert_eq!(z.im(), 0.0);
            assert_close!((1.0 - z.re()).abs(), 1.0 - z.modulus(), 1e-15);
        }
    }

    #[test]
    fn stolz_antipodal_weight() {
        let e = gen_stolz(&[
            StolzSpec { vertex: 0.0, sigma: 2.0, count: 4 },
            StolzSpec { vertex: PI, sigma: 2.0, count: 4 },
        ])
        .unwrap();
        assert_close!(e.weight().norm_const(), 0.5, 1e-12);
        assert_close!(e.weight().log_abs(DiskPoint::ORIGIN.z()).exp(), 0.5, 1e-12);
        for z in e.points() {
            let v = if z.re() > 0.0 { 0.0 } else { PI };
            assert!(in_stolz_angle(*z, BoundaryPoint::new(v).unwrap(), 2.0));
        }
    }

    #[test]
    fn stolz_mass_reaches_three() {
        let e = gen_stolz(&[StolzSpec { vertex: 0.0, sigma: 2.0, count: 11 }]).unwrap();
        assert!(e.partial_mass() >= 3.0);
        assert_eq!(e.len(), 55);
    }

    #[test]
    fn radial_rule() {
        let e = gen_radial(&RadialRule::Harmonic, 3, 0.0, WeightRule::Unit).unwrap();
        let r: Vec<f64> = e.points().iter().map(|z| z.modulus()).collect();
        assert_eq!(r, vec![0.5, 1.0 - 1.0 / 3.0, 0.75]);
        assert_close!(e.partial_mass(), 0.5 + 1.0 / 3.0 + 0.25, 1e-15);
        assert!(gen_radial(&RadialRule::Custom(vec![0.5, 0.4]), 2, 0.0, WeightRule::Unit).is_err());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let sets = [
            gen_compact_grid(0.3, 0.07).unwrap(),
            gen_stolz(&[StolzSpec { vertex: 1.3, sigma: 2.5, count: 5 }]).unwrap(),
            gen_radial(&RadialRule::Harmonic, 20, 0.7, WeightRule::AutoVertices).unwrap(),
        ];
        for e in sets {
            let back = points_from_json(&points_to_json(&e)).unwrap();
            assert_eq!(back.points(), e.points());
            assert_eq!(back.weight(), e.weight());
            assert_eq!(back.label(), e.label());
        }
    }

    #[test]
    fn json_rejects_bad_points() {
        let text = r#"{"label":"x","weight":{"kind":"unit","vertices_theta":[]},
            "points":[{"re":"0.1","im":"0"},{"re":"1","im":"0"}]}"#;
        match points_from_json(text) {
            Err(HardyError::OutsideDisk { index, .. }) => assert_eq!(index, 1),
            other => panic!("{other:?}"),
        }
        let dup = r#"{"label":"x","weight":{"kind":"unit","vertices_theta":[]},
            "points":[{"re":"0.1","im":"0"},{"re":"0.1","im":"0"}]}"#;
        assert!(matches!(points_from_json(dup), Err(HardyError::DuplicatePoint { .. })));
    }
}
