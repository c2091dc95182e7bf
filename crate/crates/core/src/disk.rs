//! Hyperbolic geometry of the open unit disc.
//!
//! Provides the pseudo-hyperbolic metric, separation ("Carleson") constants
//! of point sequences computed in the log domain, and finite Blaschke
//! products. These are the geometric primitives every frame computation in
//! the crate leans on.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Two points closer than this in the pseudo-hyperbolic metric are treated
/// as duplicates.
pub const DUPLICATE_TOL: f64 = 1e-14;

/// Log-domain sums below this are reported as underflowed products.
pub const LOG_UNDERFLOW: f64 = -700.0;

#[derive(Debug, Error)]
pub enum DiskError {
    #[error("point with |z| = {0} is not in the open unit disc")]
    NotInDisk(f64),
    #[error("evaluation point with |z| = {0} lies outside the closed disc")]
    OutsideClosedDisc(f64),
    #[error("points {0} and {1} coincide (pseudo-hyperbolic distance < {DUPLICATE_TOL:e})")]
    DuplicatePoint(usize, usize),
    #[error("sequence is empty")]
    EmptySequence,
    #[error("expected {expected} weights, got {got}")]
    WeightCountMismatch { expected: usize, got: usize },
    #[error("weight {0} is not strictly positive")]
    NonPositiveWeight(usize),
    #[error("|c| = {0} is not unimodular")]
    NotUnimodular(f64),
    #[error("zero multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("coordinate is not finite")]
    NotFinite,
}

/// A point of the open unit disc, `|z| < 1` strictly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskPoint {
    value: Complex64,
}

impl DiskPoint {
    pub fn new(value: Complex64) -> Result<Self, DiskError> {
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(DiskError::NotFinite);
        }
        let r = value.norm();
        if r >= 1.0 {
            return Err(DiskError::NotInDisk(r));
        }
        Ok(Self { value })
    }

    /// Convenience constructor for real points.
    pub fn real(x: f64) -> Result<Self, DiskError> {
        Self::new(Complex64::new(x, 0.0))
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }
}

/// Pseudo-hyperbolic distance `|a - b| / |1 - conj(b) a|` between two points
/// of the open disc. Takes values in `[0, 1)`.
pub fn pseudo_hyperbolic(a: DiskPoint, b: DiskPoint) -> f64 {
    rho(a.value, b.value)
}

/// Unchecked pseudo-hyperbolic distance on raw complex values.
pub fn rho(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (Complex64::ONE - b.conj() * a).norm()
}

/// A finite sequence of distinct disc points, optionally weighted.
#[derive(Debug, Clone)]
pub struct DiskSequence {
    points: Vec<DiskPoint>,
    weights: Option<Vec<f64>>,
}

impl DiskSequence {
    /// Validates distinctness of the points (pairwise pseudo-hyperbolic
    /// distance at least [`DUPLICATE_TOL`]).
    pub fn new(points: Vec<DiskPoint>) -> Result<Self, DiskError> {
        if points.is_empty() {
            return Err(DiskError::EmptySequence);
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if pseudo_hyperbolic(points[i], points[j]) < DUPLICATE_TOL {
                    return Err(DiskError::DuplicatePoint(i, j));
                }
            }
        }
        Ok(Self {
            points,
            weights: None,
        })
    }

    /// Attaches strictly positive weights, one per point.
    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self, DiskError> {
        if weights.len() != self.points.len() {
            return Err(DiskError::WeightCountMismatch {
                expected: self.points.len(),
                got: weights.len(),
            });
        }
        if let Some(k) = weights.iter().position(|&w| !w.is_finite() || w <= 0.0) {
            return Err(DiskError::NonPositiveWeight(k));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn points(&self) -> &[DiskPoint] {
        &self.points
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Separation constant of a sequence together with where it is attained.
#[derive(Debug, Clone, Serialize)]
pub struct CarlesonReport {
    /// `min_n prod_{k != n} rho(z_n, z_k)`, computed as `exp` of log sums.
    pub constant: f64,
    /// Index attaining the minimum.
    pub argmin_index: usize,
    /// The minimal log sum itself (useful when the product underflows).
    pub log_sum_min: f64,
    /// True when the log sum fell below [`LOG_UNDERFLOW`]; `constant` is then
    /// reported as exactly 0.
    pub underflow: bool,
}

/// Computes the sequence separation constant in the log domain.
///
/// A single point has empty products, so the constant is 1 by convention.
pub fn carleson_constant(seq: &DiskSequence) -> CarlesonReport {
    let pts = seq.points();
    if pts.len() == 1 {
        return CarlesonReport {
            constant: 1.0,
            argmin_index: 0,
            log_sum_min: 0.0,
            underflow: false,
        };
    }
    let mut best = f64::INFINITY;
    let mut arg = 0;
    for n in 0..pts.len() {
        let mut log_sum = 0.0;
        for k in 0..pts.len() {
            if k != n {
                log_sum += pseudo_hyperbolic(pts[n], pts[k]).ln();
            }
        }
        if log_sum < best {
            best = log_sum;
            arg = n;
        }
    }
    let underflow = best < LOG_UNDERFLOW;
    CarlesonReport {
        constant: if underflow { 0.0 } else { best.exp() },
        argmin_index: arg,
        log_sum_min: best,
        underflow,
    }
}

/// Separation verdict against an explicit threshold.
#[derive(Debug, Clone, Serialize)]
pub struct InterpolatingReport {
    pub carleson: CarlesonReport,
    pub delta_min: f64,
    pub pass: bool,
}

/// Checks `carleson_constant(seq) >= delta_min`. An underflowed product
/// always fails.
pub fn is_interpolating(seq: &DiskSequence, delta_min: f64) -> InterpolatingReport {
    let carleson = carleson_constant(seq);
    let pass = !carleson.underflow && carleson.constant >= delta_min;
    InterpolatingReport {
        carleson,
        delta_min,
        pass,
    }
}

/// A finite Blaschke product `c * prod_j b_{a_j}(z)^{m_j}` with unimodular
/// constant `c`; the factor for a zero at the origin is plain `z^m`.
#[derive(Debug, Clone)]
pub struct FiniteBlaschke {
    zeros: Vec<(DiskPoint, u32)>,
    unimodular: Complex64,
}

impl FiniteBlaschke {
    pub fn new(zeros: Vec<(DiskPoint, u32)>, unimodular: Complex64) -> Result<Self, DiskError> {
        let r = unimodular.norm();
        if (r - 1.0).abs() > 1e-12 {
            return Err(DiskError::NotUnimodular(r));
        }
        if zeros.iter().any(|&(_, m)| m == 0) {
            return Err(DiskError::ZeroMultiplicity);
        }
        Ok(Self { zeros, unimodular })
    }

    /// Product of all multiplicities; degree of the rational function.
    pub fn degree(&self) -> usize {
        self.zeros.iter().map(|&(_, m)| m as usize).sum()
    }

    pub fn zeros(&self) -> &[(DiskPoint, u32)] {
        &self.zeros
    }

    /// Zeros flattened with repetition according to multiplicity.
    pub fn zeros_with_multiplicity(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.degree());
        for &(a, m) in &self.zeros {
            for _ in 0..m {
                out.push(a.value());
            }
        }
        out
    }

    pub fn unimodular_constant(&self) -> Complex64 {
        self.unimodular
    }

    /// Evaluates the product on the closed disc. Each factor is
    /// `(|a|/a)(a - z)/(1 - conj(a) z)`, or `z` for a zero at the origin.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, DiskError> {
        let r = z.norm();
        if r > 1.0 + 1e-12 {
            return Err(DiskError::OutsideClosedDisc(r));
        }
        let mut acc = self.unimodular;
        for &(a, m) in &self.zeros {
            let av = a.value();
            let factor = if av == Complex64::ZERO {
                z
            } else {
                (Complex64::new(av.norm(), 0.0) / av) * (av - z) / (Complex64::ONE - av.conj() * z)
            };
            acc *= crate::series::powu(factor, m as u64);
        }
        Ok(acc)
    }

    /// Taylor coefficients of the product up to the cutoff.
    pub fn series(&self, cutoff: usize) -> Vec<Complex64> {
        let mut acc = vec![Complex64::ZERO; cutoff + 1];
        acc[0] = self.unimodular;
        for &(a, m) in &self.zeros {
            let factor = crate::series::blaschke_factor_series(a.value(), cutoff);
            for _ in 0..m {
                acc = crate::series::trunc_mul(&acc, &factor, cutoff);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(re: f64, im: f64) -> DiskPoint {
        DiskPoint::new(Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn boundary_points_are_rejected() {
        assert!(matches!(
            DiskPoint::new(Complex64::new(1.0, 0.0)),
            Err(DiskError::NotInDisk(_))
        ));
        assert!(DiskPoint::new(Complex64::new(0.999_999, 0.0)).is_ok());
    }

    #[test]
    fn pseudo_hyperbolic_matches_hand_values() {
        assert!((pseudo_hyperbolic(pt(0.0, 0.0), pt(0.5, 0.0)) - 0.5).abs() < 1e-15);
        // rho(0.9, -0.9) = 1.8 / 1.81
        let d = pseudo_hyperbolic(pt(0.9, 0.0), pt(-0.9, 0.0));
        assert!((d - 1.8 / 1.81).abs() < 1e-15);
        assert!((d - 0.994_475_138_121_547).abs() < 1e-12);
    }

    #[test]
    fn pseudo_hyperbolic_is_symmetric_and_bounded() {
        let a = pt(0.3, -0.4);
        let b = pt(-0.7, 0.1);
        let d = pseudo_hyperbolic(a, b);
        assert!((d - pseudo_hyperbolic(b, a)).abs() < 1e-16);
        assert!(d > 0.0 && d < 1.0);
        assert_eq!(pseudo_hyperbolic(a, a), 0.0);
    }

    #[test]
    fn duplicate_points_are_detected() {
        let p = pt(0.25, 0.25);
        assert!(matches!(
            DiskSequence::new(vec![p, pt(0.5, 0.0), p]),
            Err(DiskError::DuplicatePoint(0, 2))
        ));
    }

    #[test]
    fn single_point_has_constant_one() {
        let seq = DiskSequence::new(vec![pt(0.9, 0.0)]).unwrap();
        let rep = carleson_constant(&seq);
        assert_eq!(rep.constant, 1.0);
        assert_eq!(rep.argmin_index, 0);
    }

    #[test]
    fn dyadic_sequence_separation_constant() {
        // mu_k = 1 - 2^-k, k = 0..19: value fixed by a direct-product oracle
        let pts: Vec<DiskPoint> = (0..20)
            .map(|k| DiskPoint::real(1.0 - 0.5f64.powi(k)).unwrap())
            .collect();
        let seq = DiskSequence::new(pts.clone()).unwrap();
        let rep = carleson_constant(&seq);
        // independent oracle: plain product, no logs
        let mut direct = f64::INFINITY;
        for n in 0..pts.len() {
            let mut prod = 1.0;
            for k in 0..pts.len() {
                if k != n {
                    prod *= pseudo_hyperbolic(pts[n], pts[k]);
                }
            }
            direct = direct.min(prod);
        }
        assert!((rep.constant - direct).abs() < 1e-12 * direct.max(1.0));
        assert!((rep.constant - 0.014_880_288_967_625).abs() < 1e-9);
        assert_eq!(rep.argmin_index, 11);
        assert!(is_interpolating(&seq, 1e-3).pass);
    }

    #[test]
    fn slowly_escaping_sequence_fails_the_threshold() {
        // mu_k = 1 - 1/(k+1), k = 0..29 is far from uniformly separated
        let pts: Vec<DiskPoint> = (0..30)
            .map(|k| DiskPoint::real(1.0 - 1.0 / (k as f64 + 1.0)).unwrap())
            .collect();
        let seq = DiskSequence::new(pts).unwrap();
        let rep = is_interpolating(&seq, 0.01);
        assert!(!rep.pass);
        assert!(rep.carleson.constant < 1e-18);
        assert_eq!(rep.carleson.argmin_index, 20);
    }

    #[test]
    fn deep_crowded_sequence_underflows_to_zero() {
        let pts: Vec<DiskPoint> = (0..600)
            .map(|k| DiskPoint::real(1.0 - 1.0 / (k as f64 + 2.0)).unwrap())
            .collect();
        let seq = DiskSequence::new(pts).unwrap();
        let rep = carleson_constant(&seq);
        assert!(rep.underflow);
        assert_eq!(rep.constant, 0.0);
        assert!(rep.log_sum_min < LOG_UNDERFLOW);
        assert!(!is_interpolating(&seq, 1e-6).pass);
    }

    #[test]
    fn weights_are_validated() {
        let seq = DiskSequence::new(vec![pt(0.1, 0.0), pt(0.2, 0.0)]).unwrap();
        assert!(matches!(
            seq.clone().with_weights(vec![1.0]),
            Err(DiskError::WeightCountMismatch { .. })
        ));
        assert!(matches!(
            seq.clone().with_weights(vec![1.0, 0.0]),
            Err(DiskError::NonPositiveWeight(1))
        ));
        assert!(seq.with_weights(vec![1.0, 2.0]).is_ok());
    }

    #[test]
    fn blaschke_product_at_origin() {
        // zeros {0.3, 0.6}: value at 0 is c * 0.3 * 0.6 up to the rotations
        let b = FiniteBlaschke::new(vec![(pt(0.3, 0.0), 1), (pt(0.6, 0.0), 1)], Complex64::ONE)
            .unwrap();
        let v = b.eval(Complex64::ZERO).unwrap();
        assert!((v.norm() - 0.18).abs() < 1e-15);
        assert_eq!(b.degree(), 2);
    }

    #[test]
    fn blaschke_is_inner_on_the_boundary() {
        // degree <= 32 products stay unimodular on |z| = 1 within 1e-12
        let b = FiniteBlaschke::new(
            vec![
                (pt(0.3, 0.0), 8),
                (pt(0.0, 0.0), 8),
                (pt(-0.2, 0.55), 8),
                (pt(0.1, -0.6), 8),
            ],
            Complex64::from_polar(1.0, 0.7),
        )
        .unwrap();
        assert_eq!(b.degree(), 32);
        for j in 0..64 {
            let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / 64.0);
            let v = b.eval(z).unwrap();
            assert!(
                (v.norm() - 1.0).abs() < 1e-12,
                "modulus off at angle {j}: {}",
                v.norm()
            );
        }
        // and vanishes at its zeros
        assert!(b.eval(Complex64::new(0.3, 0.0)).unwrap().norm() < 1e-14);
    }

    #[test]
    fn blaschke_rejects_points_outside_the_closed_disc() {
        let b = FiniteBlaschke::new(vec![(pt(0.3, 0.0), 1)], Complex64::ONE).unwrap();
        assert!(matches!(
            b.eval(Complex64::new(1.5, 0.0)),
            Err(DiskError::OutsideClosedDisc(_))
        ));
    }

    #[test]
    fn blaschke_series_matches_pointwise_evaluation() {
        let b = FiniteBlaschke::new(
            vec![(pt(0.3, 0.0), 1), (pt(0.5, 0.2), 2)],
            Complex64::from_polar(1.0, -0.4),
        )
        .unwrap();
        let s = b.series(120);
        let z = Complex64::new(0.35, -0.3);
        let direct = b.eval(z).unwrap();
        let via_series = crate::series::eval(&s, z);
        assert!((direct - via_series).norm() < 1e-12);
    }

    #[test]
    fn non_unimodular_constant_is_rejected() {
        assert!(matches!(
            FiniteBlaschke::new(vec![(pt(0.3, 0.0), 1)], Complex64::new(0.9, 0.0)),
            Err(DiskError::NotUnimodular(_))
        ));
    }
}
