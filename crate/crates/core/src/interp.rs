//! Recovery of `H^p` functions from their values at finitely many nodes by
//! interpolation with finite Blaschke products, with the pointwise error bound
//! `|f(z) - Σ c_k f(z_k)| ≤ ‖f‖_p (1 - |z|²)^{-1/p} |B(Z_n, z)|`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::disk::{pseudo_distance, DiskPoint, ZeroTuple, COINCIDENCE_TOL};
use crate::error::{HardyError, Result};

/// Hardy-space exponent `p ∈ [1, ∞]`. Infinity is a separate variant so no
/// IEEE infinity ever reaches an exponent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn finite(p: f64) -> Result<Self> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(HardyError::invalid(format!("exponent p = {p} must lie in [1, inf]")));
        }
        Ok(Exponent::Finite(p))
    }

    /// `1/p`, zero for `p = ∞`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinity => 0.0,
        }
    }

    /// `(2 - p)/p`, with the limit `-1` at `p = ∞`.
    pub fn branch_power(self) -> f64 {
        match self {
            Exponent::Finite(p) => (2.0 - p) / p,
            Exponent::Infinity => -1.0,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = HardyError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            other => {
                let p: f64 = other.parse().map_err(|_| HardyError::Parse(format!("bad exponent '{s}'")))?;
                if p.is_infinite() && p > 0.0 {
                    return Ok(Exponent::Infinity);
                }
                Exponent::finite(p)
            }
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => s.serialize_f64(*p),
            Exponent::Infinity => s.serialize_str("inf"),
        }
    }
}

/// Distinct interpolation nodes together with the exponent `p`.
#[derive(Clone, Debug)]
pub struct InterpScheme {
    nodes: ZeroTuple,
    p: Exponent,
}

impl InterpScheme {
    pub fn new(nodes: ZeroTuple, p: Exponent) -> Result<Self> {
        if let Exponent::Finite(v) = p {
            Exponent::finite(v)?;
        }
        nodes.check_distinct()?;
        Ok(InterpScheme { nodes, p })
    }

    pub fn nodes(&self) -> &ZeroTuple {
        &self.nodes
    }

    pub fn p(&self) -> Exponent {
        self.p
    }
}

/// `log|w|` and `arg w` of a product, accumulated factor by factor.
#[derive(Clone, Copy)]
struct PolarLog {
    log_abs: f64,
    arg: f64,
}

fn deleted_product(nodes: &[DiskPoint], skip: usize, z: Complex64) -> PolarLog {
    let one = Complex64::new(1.0, 0.0);
    let mut acc = PolarLog { log_abs: 0.0, arg: 0.0 };
    for (j, a) in nodes.iter().enumerate() {
        if j == skip {
            continue;
        }
        let num = z - a.z();
        let den = one - a.z().conj() * z;
        acc.log_abs += num.norm().ln() - den.norm().ln();
        acc.arg += num.arg() - den.arg();
    }
    acc
}

/// Index of a node within pseudo-distance [`COINCIDENCE_TOL`] of `z`.
fn coincident_node(nodes: &[DiskPoint], z: DiskPoint) -> Option<usize> {
    nodes.iter().position(|&a| pseudo_distance(a, z) < COINCIDENCE_TOL)
}

/// Interpolation coefficients `c_{p,k}(Z_n, z)`:
///
/// `(1 - |z_k|²)/(1 - z̄_k z) · ((1 - z̄ z_k)/(1 - |z|²))^{(2-p)/p} · B(Z_{n,k}, z)/B(Z_{n,k}, z_k)`.
///
/// The base of the power has positive real part inside the disk, so the
/// principal branch is continuous. At a node the Kronecker vector is returned.
pub fn interp_coefficients(scheme: &InterpScheme, z: DiskPoint) -> Result<Vec<Complex64>> {
    let nodes = scheme.nodes.points();
    let n = nodes.len();
    if let Some(j) = coincident_node(nodes, z) {
        let mut c = vec![Complex64::new(0.0, 0.0); n];
        c[j] = Complex64::new(1.0, 0.0);
        return Ok(c);
    }
    let one = Complex64::new(1.0, 0.0);
    let zc = z.z();
    let e = scheme.p.branch_power();
    let mut out = Vec::with_capacity(n);
    for (k, a) in nodes.iter().enumerate() {
        let zk = a.z();
        let lead = (1.0 - zk.norm_sqr()) / (one - zk.conj() * zc);
        let base = (one - zc.conj() * zk) / (1.0 - zc.norm_sqr());
        let branch = if e == 0.0 { one } else { base.powf(e) };
        let num = deleted_product(nodes, k, zc);
        let den = deleted_product(nodes, k, zk);
        if den.log_abs == f64::NEG_INFINITY {
            return Err(HardyError::DegenerateNode(k));
        }
        let ratio = Complex64::from_polar((num.log_abs - den.log_abs).exp(), num.arg - den.arg);
        out.push(lead * branch * ratio);
    }
    Ok(out)
}

/// Estimate of `f(z)` together with the guaranteed error bound.
#[derive(Clone, Debug, Serialize)]
pub struct ReconstructionReport {
    pub point: DiskPoint,
    #[serde(serialize_with = "ser_complex")]
    pub estimate: Complex64,
    pub error_bound: f64,
    #[serde(serialize_with = "ser_complex_vec")]
    pub coefficients: Vec<Complex64>,
}

fn ser_complex<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

fn ser_complex_vec<S: Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
    pairs.serialize(s)
}

/// `log((1 - |z|²)^{-1/p} |B(Z_n, z)|)`, the error factor for unit-norm `f`.
pub fn log_error_factor(scheme: &InterpScheme, z: DiskPoint) -> f64 {
    let log_b = crate::disk::blaschke_log_abs(&scheme.nodes, z).value();
    log_b - scheme.p.reciprocal() * (1.0 - z.z().norm_sqr()).ln()
}

pub fn reconstruct(
    scheme: &InterpScheme,
    samples: &[Complex64],
    z: DiskPoint,
    norm_bound: f64,
) -> Result<ReconstructionReport> {
    if samples.len() != scheme.nodes.len() {
        return Err(HardyError::invalid(format!("{} samples for {} nodes", samples.len(), scheme.nodes.len())));
    }
    if !(norm_bound >= 0.0) {
        return Err(HardyError::invalid(format!("norm bound {norm_bound} must be nonnegative")));
    }
    let coefficients = interp_coefficients(scheme, z)?;
    let estimate = coefficients.iter().zip(samples).map(|(c, f)| c * f).sum();
    let error_bound = norm_bound * log_error_factor(scheme, z).exp();
    Ok(ReconstructionReport { point: z, estimate, error_bound, coefficients })
}

/// `max_grid (|truth - estimate| - error_bound)`. Nonpositive (up to rounding)
/// whenever `‖f‖_p ≤ norm_bound`.
pub fn residual_check(
    scheme: &InterpScheme,
    samples: &[Complex64],
    grid: &[DiskPoint],
    truth: &[Complex64],
    norm_bound: f64,
) -> Result<f64> {
    if grid.len() != truth.len() {
        return Err(HardyError::invalid("grid and truth differ in length"));
    }
    let mut worst = f64::NEG_INFINITY;
    for (&z, &t) in grid.iter().zip(truth) {
        let rep = reconstruct(scheme, samples, z, norm_bound)?;
        worst = worst.max((t - rep.estimate).norm() - rep.error_bound);
    }
    Ok(worst)
}

/// Analytic test functions with known Hardy norms.
pub mod corpus {
    use num_complex::Complex64;

    use super::Exponent;

    #[derive(Clone, Copy, Debug)]
    pub struct TestFunction {
        pub id: &'static str,
        pub eval: fn(Complex64) -> Complex64,
        /// `‖f‖_∞`, which bounds `‖f‖_p` for every `p`.
        pub sup_norm: f64,
        /// `‖f‖_2` when known in closed form; bounds `‖f‖_p` for `p ≤ 2`.
        pub h2_norm: Option<f64>,
    }

    impl TestFunction {
        pub fn norm_bound(&self, p: Exponent) -> f64 {
            match (p, self.h2_norm) {
                (Exponent::Finite(v), Some(h2)) if v <= 2.0 => h2.min(self.sup_norm),
                _ => self.sup_norm,
            }
        }
    }

    fn mobius_a() -> Complex64 {
        Complex64::new(0.3, 0.2)
    }

    fn one(_: Complex64) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn z2(z: Complex64) -> Complex64 {
        z * z
    }

    fn z3(z: Complex64) -> Complex64 {
        z * z * z
    }

    fn half_shift(z: Complex64) -> Complex64 {
        (1.0 + z) / 2.0
    }

    fn mobius(z: Complex64) -> Complex64 {
        let a = mobius_a();
        (z - a) / (1.0 - a.conj() * z)
    }

    fn blaschke2(z: Complex64) -> Complex64 {
        let a = Complex64::new(0.0, 0.5);
        let b = Complex64::new(-0.4, 0.1);
        (z - a) / (1.0 - a.conj() * z) * (z - b) / (1.0 - b.conj() * z)
    }

    fn exp_shift(z: Complex64) -> Complex64 {
        (z - 1.0).exp()
    }

    pub const ALL: [TestFunction; 7] = [
        TestFunction { id: "one", eval: one, sup_norm: 1.0, h2_norm: Some(1.0) },
        TestFunction { id: "z2", eval: z2, sup_norm: 1.0, h2_norm: Some(1.0) },
        TestFunction { id: "z3", eval: z3, sup_norm: 1.0, h2_norm: Some(1.0) },
        TestFunction {
            id: "half-shift",
            eval: half_shift,
            sup_norm: 1.0,
            h2_norm: Some(std::f64::consts::FRAC_1_SQRT_2),
        },
        TestFunction { id: "mobius", eval: mobius, sup_norm: 1.0, h2_norm: Some(1.0) },
        TestFunction { id: "blaschke2", eval: blaschke2, sup_norm: 1.0, h2_norm: Some(1.0) },
        TestFunction { id: "exp", eval: exp_shift, sup_norm: 1.0, h2_norm: None },
    ];

    pub fn by_id(id: &str) -> Option<TestFunction> {
        ALL.iter().copied().find(|f| f.id == id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::{blaschke_log_abs, DiskPoint};

    fn p(re: f64, im: f64) -> DiskPoint {
        DiskPoint::new(re, im).unwrap()
    }

    fn origin_scheme(e: Exponent) -> InterpScheme {
        InterpScheme::new(ZeroTuple::new(vec![DiskPoint::ORIGIN]), e).unwrap()
    }

    #[test]
    fn parses_exponents() {
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert_eq!("2".parse::<Exponent>().unwrap(), Exponent::Finite(2.0));
        assert!("0.5".parse::<Exponent>().is_err());
        assert!("abc".parse::<Exponent>().is_err());
    }

    #[test]
    fn single_origin_node_p_inf() {
        let c = interp_coefficients(&origin_scheme(Exponent::Infinity), p(0.5, 0.0)).unwrap();
        assert_close!(c[0].re, 0.75, 1e-15);
        assert_close!(c[0].im, 0.0, 1e-15);
    }

    #[test]
    fn single_origin_node_p2_is_partition_of_unity() {
        let s = origin_scheme(Exponent::Finite(2.0));
        for z in [DiskPoint::ORIGIN, p(0.5, 0.1), p(-0.3, 0.7), p(0.0, -0.95)] {
            let c = interp_coefficients(&s, z).unwrap();
            assert_close!(c[0].re, 1.0, 1e-14);
            assert_close!(c[0].im, 0.0, 1e-14);
        }
    }

    #[test]
    fn kronecker_at_nodes() {
        let nodes = ZeroTuple::new(vec![p(0.1, 0.2), p(-0.5, 0.3), p(0.6, -0.6)]);
        let s = InterpScheme::new(nodes.clone(), Exponent::Finite(1.5)).unwrap();
        for (k, &z) in nodes.points().iter().enumerate() {
            let c = interp_coefficients(&s, z).unwrap();
            for (j, cj) in c.iter().enumerate() {
                let want = if j == k { 1.0 } else { 0.0 };
                assert_close!(cj.re, want, 1e-15);
                assert_close!(cj.im, 0.0, 1e-15);
            }
        }
    }

    #[test]
    fn duplicate_nodes_rejected() {
        let nodes = ZeroTuple::new(vec![p(0.1, 0.2), p(0.1, 0.2)]);
        assert!(InterpScheme::new(nodes, Exponent::Infinity).is_err());
    }

    #[test]
    fn constant_reconstruction_example() {
        let s = origin_scheme(Exponent::Infinity);
        let one = [Complex64::new(1.0, 0.0)];
        let r = reconstruct(&s, &one, p(0.5, 0.0), 1.0).unwrap();
        assert_close!(r.estimate.re, 0.75, 1e-15);
        assert_close!(r.error_bound, 0.5, 1e-15);
        assert!((1.0 - r.estimate).norm() <= r.error_bound);

        let at_node = reconstruct(&s, &one, DiskPoint::ORIGIN, 1.0).unwrap();
        assert_eq!(at_node.estimate, Complex64::new(1.0, 0.0));
        assert_eq!(at_node.error_bound, 0.0);
    }

    #[test]
    fn zero_function_has_negative_violation() {
        let nodes = ZeroTuple::new(vec![p(0.1, 0.2), p(-0.5, 0.3)]);
        let s = InterpScheme::new(nodes, Exponent::Finite(2.0)).unwrap();
        let zero = [Complex64::new(0.0, 0.0); 2];
        let grid = [p(0.3, 0.3), p(-0.2, -0.1)];
        let truth = [Complex64::new(0.0, 0.0); 2];
        let v = residual_check(&s, &zero, &grid, &truth, 1.0).unwrap();
        assert!(v < 0.0);
    }

    #[test]
    fn blaschke_kernel_is_annihilated() {
        let nodes = ZeroTuple::new(vec![p(0.1, 0.2), p(-0.5, 0.3), p(0.4, -0.7)]);
        let s = InterpScheme::new(nodes.clone(), Exponent::Infinity).unwrap();
        let samples = [Complex64::new(0.0, 0.0); 3];
        for z in [p(0.0, 0.0), p(0.7, 0.1), p(-0.2, -0.9)] {
            let r = reconstruct(&s, &samples, z, 1.0).unwrap();
            assert_eq!(r.estimate, Complex64::new(0.0, 0.0));
            let f_abs = blaschke_log_abs(&nodes, z).modulus();
            assert!(f_abs <= r.error_bound * (1.0 + 1e-12));
        }
    }

    #[test]
    fn corpus_norms_are_consistent_on_circle() {
        for f in corpus::ALL {
            let mut sup: f64 = 0.0;
            for k in 0..4096 {
                let z = Complex64::from_polar(1.0, k as f64 * std::f64::consts::TAU / 4096.0);
                sup = sup.max((f.eval)(z).norm());
            }
            assert!(sup <= f.sup_norm + 1e-12, "{}: {sup}", f.id);
        }
        assert!(corpus::by_id("z3").is_some());
        assert!(corpus::by_id("nope").is_none());
    }
}
