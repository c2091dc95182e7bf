//! Frames generated by orbits of diagonal operators.
//!
//! For a diagonal operator `D = diag(μ_1, …, μ_K)`, a generator vector `b`,
//! and an exponent set Λ, the family `{D^λ b : λ ∈ Λ}` has a K×K frame
//! operator whose extremal eigenvalues are the frame bounds. Full natural
//! orbits (and their every-Nth subsamples) admit closed-form geometric
//! entries; general exponent sets are accumulated term by term with a
//! rigorous geometric bound on the dropped tail. The module also runs the
//! four-part diagnostic (spectrum inside the disc, boundary approach,
//! Carleson separation, weight band) that characterizes when such orbits
//! form frames.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::disk::{carleson_constant, CarlesonReport, DiskPoint, DiskSequence};
use crate::linalg::{hermitian_extremal_eigenvalues, LinalgError};
use crate::muntz::{ExponentSet, GeneratorTag};
use crate::series::powu;

/// Largest float exponent still treated as an exact integer power.
const MAX_INTEGER_EXPONENT: f64 = 9.007_199_254_740_992e15; // 2^53

#[derive(Debug, Error)]
pub enum OrbitError {
    #[error("operator entry {0} is not finite")]
    NotFinite(usize),
    #[error("operator has no eigenvalues")]
    EmptyOperator,
    #[error("generator length {generator} does not match operator dimension {operator}")]
    DimensionMismatch { operator: usize, generator: usize },
    #[error("eigenvalue {index} has modulus {modulus} >= 1; closed form diverges")]
    SpectrumOnBoundary { index: usize, modulus: f64 },
    #[error("closed-form frame operator requires a naturals or every-Nth exponent set")]
    ClosedFormUnavailable,
    #[error("eigenvalue {index} is not real non-negative, so exponent {exponent} is undefined")]
    NonIntegerPowerOfComplex { index: usize, exponent: f64 },
    #[error("exponent {0} is negative")]
    NegativeExponent(f64),
    #[error("subsampling requires a naturals exponent set")]
    SubsampleRequiresNaturals,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A diagonal operator given by its eigenvalue list. Moduli ≥ 1 are admitted
/// at construction so divergence can be demonstrated; closed-form sums
/// reject them.
#[derive(Debug, Clone)]
pub struct DiagonalOperator {
    eigenvalues: Vec<Complex64>,
}

impl DiagonalOperator {
    pub fn new(eigenvalues: Vec<Complex64>) -> Result<Self, OrbitError> {
        if eigenvalues.is_empty() {
            return Err(OrbitError::EmptyOperator);
        }
        for (i, v) in eigenvalues.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(OrbitError::NotFinite(i));
            }
        }
        Ok(Self { eigenvalues })
    }

    /// Real spectra, the common case for boundary-approaching families.
    pub fn from_real(eigenvalues: Vec<f64>) -> Result<Self, OrbitError> {
        Self::new(
            eigenvalues
                .into_iter()
                .map(|x| Complex64::new(x, 0.0))
                .collect(),
        )
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub fn dimension(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max_modulus(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    pub fn all_inside_disc(&self) -> bool {
        self.eigenvalues.iter().all(|v| v.norm() < 1.0)
    }
}

/// The generator vector `b` paired with the operator.
#[derive(Debug, Clone)]
pub struct GeneratorVector {
    coefficients: Vec<Complex64>,
}

impl GeneratorVector {
    pub fn new(coefficients: Vec<Complex64>) -> Result<Self, OrbitError> {
        if coefficients.is_empty() {
            return Err(OrbitError::EmptyOperator);
        }
        for (i, v) in coefficients.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(OrbitError::NotFinite(i));
            }
        }
        Ok(Self { coefficients })
    }

    pub fn from_real(coefficients: Vec<f64>) -> Result<Self, OrbitError> {
        Self::new(
            coefficients
                .into_iter()
                .map(|x| Complex64::new(x, 0.0))
                .collect(),
        )
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn norm(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|v| v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Operator + generator + exponent set: the orbit whose frame bounds are
/// being computed.
#[derive(Debug, Clone)]
pub struct OrbitFrameSystem {
    operator: DiagonalOperator,
    generator: GeneratorVector,
    exponents: ExponentSet,
}

impl OrbitFrameSystem {
    pub fn new(
        operator: DiagonalOperator,
        generator: GeneratorVector,
        exponents: ExponentSet,
    ) -> Result<Self, OrbitError> {
        if operator.dimension() != generator.coefficients().len() {
            return Err(OrbitError::DimensionMismatch {
                operator: operator.dimension(),
                generator: generator.coefficients().len(),
            });
        }
        Ok(Self {
            operator,
            generator,
            exponents,
        })
    }

    /// Convenience: the orbit over `{0, 1, …, n_max}`.
    pub fn with_naturals(
        operator: DiagonalOperator,
        generator: GeneratorVector,
        n_max: u64,
    ) -> Result<Self, OrbitError> {
        Self::new(operator, generator, ExponentSet::naturals(n_max))
    }

    pub fn operator(&self) -> &DiagonalOperator {
        &self.operator
    }

    pub fn generator(&self) -> &GeneratorVector {
        &self.generator
    }

    pub fn exponents(&self) -> &ExponentSet {
        &self.exponents
    }

    pub fn dimension(&self) -> usize {
        self.operator.dimension()
    }

    /// Component k of `D^λ b`, i.e. `μ_k^λ b_k`. Integer exponents work for
    /// arbitrary complex spectra; fractional exponents require the
    /// eigenvalues that actually contribute (b_k ≠ 0) to be real
    /// non-negative.
    pub fn orbit_vector(&self, exponent: f64) -> Result<Vec<Complex64>, OrbitError> {
        if !exponent.is_finite() || exponent < 0.0 {
            return Err(OrbitError::NegativeExponent(exponent));
        }
        let mus = self.operator.eigenvalues();
        let bs = self.generator.coefficients();
        let integer = exponent.fract() == 0.0 && exponent <= MAX_INTEGER_EXPONENT;
        let mut out = Vec::with_capacity(mus.len());
        for (k, (&mu, &b)) in mus.iter().zip(bs).enumerate() {
            if b == Complex64::ZERO {
                out.push(Complex64::ZERO);
            } else if integer {
                out.push(powu(mu, exponent as u64) * b);
            } else if mu.im == 0.0 && mu.re >= 0.0 {
                out.push(Complex64::new(mu.re.powf(exponent), 0.0) * b);
            } else {
                return Err(OrbitError::NonIntegerPowerOfComplex { index: k, exponent });
            }
        }
        Ok(out)
    }

    /// Closed-form frame operator of the *infinite* orbit. For the naturals
    /// the entries are `b_j conj(b_k) / (1 − μ_j conj(μ_k))`; for every-Nth
    /// subsamples the denominator becomes `1 − (μ_j conj(μ_k))^N`.
    pub fn frame_operator_closed(&self) -> Result<DMatrix<Complex64>, OrbitError> {
        let stride = match self.exponents.tag() {
            GeneratorTag::Naturals { .. } => 1u64,
            GeneratorTag::EveryNth { stride, .. } => *stride,
            _ => return Err(OrbitError::ClosedFormUnavailable),
        };
        let mus = self.operator.eigenvalues();
        for (i, v) in mus.iter().enumerate() {
            let m = v.norm();
            if m >= 1.0 {
                return Err(OrbitError::SpectrumOnBoundary {
                    index: i,
                    modulus: m,
                });
            }
        }
        let bs = self.generator.coefficients();
        let k = mus.len();
        Ok(DMatrix::from_fn(k, k, |j, i| {
            let w = powu(mus[j] * mus[i].conj(), stride);
            bs[j] * bs[i].conj() / (Complex64::ONE - w)
        }))
    }

    /// Frame operator summed over the finite exponent set, together with the
    /// largest entrywise bound on the mass of the dropped infinite tail
    /// (zero for explicit sets, which stand for themselves).
    pub fn frame_operator_partial(&self) -> Result<(DMatrix<Complex64>, f64), OrbitError> {
        let k = self.dimension();
        let mut s = DMatrix::<Complex64>::zeros(k, k);
        for &lam in self.exponents.values() {
            let v = self.orbit_vector(lam)?;
            for j in 0..k {
                for i in 0..k {
                    s[(j, i)] += v[j] * v[i].conj();
                }
            }
        }
        let tail = match self.exponents.tag() {
            GeneratorTag::Explicit => 0.0,
            _ => {
                let t = self.truncation_tail_matrix();
                t.iter().fold(0.0f64, |acc, &x| acc.max(x))
            }
        };
        Ok((s, tail))
    }

    /// Entrywise bound on the difference between the infinite-orbit frame
    /// operator and the partial sum: the dropped exponents all exceed
    /// `λ_max`, and for every generator in scope consecutive exponents are
    /// at least 1 apart, so entry (j,k) is bounded by the geometric tail
    /// `|b_j b_k| r^{λ_max+1} / (1 − r)` with `r = |μ_j conj(μ_k)|`.
    /// Entries with `r ≥ 1` are reported as infinite (divergent tail).
    pub fn truncation_tail_matrix(&self) -> DMatrix<f64> {
        let mus = self.operator.eigenvalues();
        let bs = self.generator.coefficients();
        let k = mus.len();
        let lam_max = self.exponents.values().last().copied().unwrap_or(0.0);
        DMatrix::from_fn(k, k, |j, i| {
            let r = (mus[j] * mus[i].conj()).norm();
            let scale = bs[j].norm() * bs[i].norm();
            if scale == 0.0 {
                0.0
            } else if r >= 1.0 {
                f64::INFINITY
            } else {
                scale * r.powf(lam_max + 1.0) / (1.0 - r)
            }
        })
    }

    /// Frame bounds of the infinite orbit via the closed-form operator.
    pub fn frame_bounds_closed(&self) -> Result<FrameBoundsReport, OrbitError> {
        let s = self.frame_operator_closed()?;
        Ok(frame_bounds(&s, 0.0, FrameBoundsMethod::ClosedForm)?)
    }

    /// Frame bounds of the finite partial orbit, carrying the tail bound.
    pub fn frame_bounds_partial(&self) -> Result<FrameBoundsReport, OrbitError> {
        let (s, tail) = self.frame_operator_partial()?;
        Ok(frame_bounds(&s, tail, FrameBoundsMethod::PartialSum)?)
    }

    /// Runs the four-part frame diagnostic; see [`CarlesonFrameReport`].
    pub fn check_carleson_frame(&self, config: &CarlesonFrameConfig) -> CarlesonFrameReport {
        let mus = self.operator.eigenvalues();
        let bs = self.generator.coefficients();
        let max_modulus = self.operator.max_modulus();

        let spectrum_inside = SpectrumInsideCheck {
            pass: self.operator.all_inside_disc(),
            max_modulus,
        };

        let threshold = 1.0 - config.epsilon_boundary;
        let boundary_approach = BoundaryApproachCheck {
            pass: spectrum_inside.pass && max_modulus >= threshold,
            max_modulus,
            threshold,
            finite_scale_proxy: true,
        };

        let carleson = mus
            .iter()
            .map(|&m| DiskPoint::new(m))
            .collect::<Result<Vec<_>, _>>()
            .ok()
            .and_then(|pts| DiskSequence::new(pts).ok())
            .map(|seq| carleson_constant(&seq));
        let separation = SeparationCheck {
            pass: carleson
                .as_ref()
                .map(|c| !c.underflow && c.constant >= config.delta_min)
                .unwrap_or(false),
            delta_min: config.delta_min,
            carleson,
        };

        let mut c1 = f64::INFINITY;
        let mut c2: f64 = 0.0;
        let mut ratios_defined = spectrum_inside.pass;
        if ratios_defined {
            for (&mu, &b) in mus.iter().zip(bs) {
                let denom = (1.0 - mu.norm_sqr()).sqrt();
                if denom == 0.0 {
                    ratios_defined = false;
                    break;
                }
                let r = b.norm() / denom;
                c1 = c1.min(r);
                c2 = c2.max(r);
            }
        }
        let weight_band = if ratios_defined {
            WeightBandCheck {
                pass: c1 > 0.0 && c2.is_finite() && c1 / c2 >= config.band_ratio_min,
                c1,
                c2,
                band_ratio_min: config.band_ratio_min,
            }
        } else {
            WeightBandCheck {
                pass: false,
                c1: f64::NAN,
                c2: f64::NAN,
                band_ratio_min: config.band_ratio_min,
            }
        };

        let all_pass =
            spectrum_inside.pass && boundary_approach.pass && separation.pass && weight_band.pass;
        CarlesonFrameReport {
            spectrum_inside,
            boundary_approach,
            separation,
            weight_band,
            all_pass,
        }
    }

    /// Keeps every `stride`-th exponent of a naturals orbit: `{0, N, 2N, …}`.
    pub fn subsample_orbit(&self, stride: u64) -> Result<OrbitFrameSystem, OrbitError> {
        let n_max = match self.exponents.tag() {
            GeneratorTag::Naturals { n_max } => *n_max,
            _ => return Err(OrbitError::SubsampleRequiresNaturals),
        };
        let exponents = ExponentSet::every_nth(stride.max(1), n_max)
            .expect("stride is at least 1 by construction");
        OrbitFrameSystem::new(self.operator.clone(), self.generator.clone(), exponents)
    }
}

/// How a frame-bounds report was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FrameBoundsMethod {
    ClosedForm,
    PartialSum,
}

/// Extremal eigenvalues of a frame operator plus the truncation context.
#[derive(Debug, Clone, Serialize)]
pub struct FrameBoundsReport {
    pub lower: f64,
    pub upper: f64,
    pub truncation_tail: f64,
    pub method: FrameBoundsMethod,
}

/// Frame bounds of a Hermitian frame operator: its smallest and largest
/// eigenvalues.
pub fn frame_bounds(
    s: &DMatrix<Complex64>,
    truncation_tail: f64,
    method: FrameBoundsMethod,
) -> Result<FrameBoundsReport, LinalgError> {
    let (lower, upper) = hermitian_extremal_eigenvalues(s)?;
    Ok(FrameBoundsReport {
        lower,
        upper,
        truncation_tail,
        method,
    })
}

/// Tunable gates for [`OrbitFrameSystem::check_carleson_frame`].
#[derive(Debug, Clone, Serialize)]
pub struct CarlesonFrameConfig {
    /// Minimal admissible Carleson separation constant.
    pub delta_min: f64,
    /// "Approaches the boundary" proxy: max modulus must reach
    /// `1 − epsilon_boundary`.
    pub epsilon_boundary: f64,
    /// Minimal admissible ratio `C₁/C₂` of the weight band.
    pub band_ratio_min: f64,
}

impl Default for CarlesonFrameConfig {
    fn default() -> Self {
        Self {
            delta_min: 1e-3,
            epsilon_boundary: 0.05,
            band_ratio_min: 0.05,
        }
    }
}

/// Condition: every eigenvalue strictly inside the unit disc.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumInsideCheck {
    pub pass: bool,
    pub max_modulus: f64,
}

/// Condition: the spectrum reaches into the boundary layer. This is a
/// finite-scale proxy for an asymptotic statement and is never a proof,
/// hence the explicit marker field.
#[derive(Debug, Clone, Serialize)]
pub struct BoundaryApproachCheck {
    pub pass: bool,
    pub max_modulus: f64,
    pub threshold: f64,
    pub finite_scale_proxy: bool,
}

/// Condition: the eigenvalue sequence is Carleson-separated. `carleson` is
/// absent when the points leave the disc or coincide (the constant is then
/// undefined or zero).
#[derive(Debug, Clone, Serialize)]
pub struct SeparationCheck {
    pub pass: bool,
    pub delta_min: f64,
    pub carleson: Option<CarlesonReport>,
}

/// Condition: the ratios `|b_k| / √(1−|μ_k|²)` stay in a healthy band
/// `[C₁, C₂]`; the observed band is reported.
#[derive(Debug, Clone, Serialize)]
pub struct WeightBandCheck {
    pub pass: bool,
    pub c1: f64,
    pub c2: f64,
    pub band_ratio_min: f64,
}

/// Combined four-part diagnostic for orbit frames of diagonal operators.
#[derive(Debug, Clone, Serialize)]
pub struct CarlesonFrameReport {
    pub spectrum_inside: SpectrumInsideCheck,
    pub boundary_approach: BoundaryApproachCheck,
    pub separation: SeparationCheck,
    pub weight_band: WeightBandCheck,
    pub all_pass: bool,
}

/// Row-major (re, im) export of a complex matrix for serialization.
pub fn matrix_rows(m: &DMatrix<Complex64>) -> Vec<Vec<(f64, f64)>> {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| (m[(i, j)].re, m[(i, j)].im))
                .collect()
        })
        .collect()
}
