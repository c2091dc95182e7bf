//! Exponent sets, atomic measures on (0,1), and the weighted-monomial frame
//! machinery.
//!
//! The central objects are finite exponent sets Λ (naturals, every-Nth,
//! ⌈n ln n⌉, primes) and atomic measures ν = Σ (1−μ_k²) δ_{μ_k}. The module
//! evaluates the harmonic-type sum Σ 1/λ, the pointwise quantity
//! (1−μ²) Σ_λ μ^{2λ}, the slowly-decaying sum S(x) = Σ_{n≥2} e^{−x n ln n}
//! with a rigorous tail bound, and the frame bounds of the weighted monomial
//! family {(√w_k μ_k^λ)_k : λ ∈ Λ} in ℓ².

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::LinalgError;
use crate::orbit::FrameBoundsReport;

/// Iteration guard for [`s_of_x`]; reached only for extremely small `x`.
const S_OF_X_MAX_TERMS: u64 = 100_000_000;

#[derive(Debug, Error)]
pub enum MuntzError {
    #[error("exponent values must be strictly increasing (violated at index {0})")]
    NotStrictlyIncreasing(usize),
    #[error("exponent values must be finite and non-negative (index {0})")]
    InvalidExponent(usize),
    #[error("generator requires n_max >= {min}, got {got}")]
    NMaxTooSmall { min: u64, got: u64 },
    #[error("stride must be at least 1")]
    ZeroStride,
    #[error("atom location {0} is not strictly inside (0, 1)")]
    LocationOutOfRange(f64),
    #[error("atom locations {0} and {1} coincide")]
    DuplicateLocation(usize, usize),
    #[error("measure has no atoms")]
    EmptyMeasure,
    #[error("expected length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("x = {0} must be strictly positive")]
    NonPositiveX(f64),
    #[error("tolerance {0} must be strictly positive")]
    NonPositiveTolerance(f64),
    #[error("tail bound did not reach tolerance within {0} terms")]
    TailBoundNotReached(u64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// How an exponent set was produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum GeneratorTag {
    Explicit,
    Naturals { n_max: u64 },
    EveryNth { stride: u64, n_max: u64 },
    CeilNLogN { n_max: u64 },
    Primes { n_max: u64 },
}

/// A finite, strictly increasing set of non-negative real exponents with a
/// record of its generator.
#[derive(Debug, Clone, Serialize)]
pub struct ExponentSet {
    values: Vec<f64>,
    tag: GeneratorTag,
}

impl ExponentSet {
    fn validated(values: Vec<f64>, tag: GeneratorTag) -> Result<Self, MuntzError> {
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(MuntzError::InvalidExponent(i));
            }
            if i > 0 && v <= values[i - 1] {
                return Err(MuntzError::NotStrictlyIncreasing(i));
            }
        }
        Ok(Self { values, tag })
    }

    /// Arbitrary user-supplied exponents.
    pub fn explicit(values: Vec<f64>) -> Result<Self, MuntzError> {
        Self::validated(values, GeneratorTag::Explicit)
    }

    /// `{0, 1, …, n_max}`.
    pub fn naturals(n_max: u64) -> Self {
        let values = (0..=n_max).map(|n| n as f64).collect();
        Self {
            values,
            tag: GeneratorTag::Naturals { n_max },
        }
    }

    /// Multiples of `stride` up to `n_max`: `{0, s, 2s, …}`.
    pub fn every_nth(stride: u64, n_max: u64) -> Result<Self, MuntzError> {
        if stride == 0 {
            return Err(MuntzError::ZeroStride);
        }
        let values = (0..)
            .map(|k| k * stride)
            .take_while(|&v| v <= n_max)
            .map(|v| v as f64)
            .collect();
        Ok(Self {
            values,
            tag: GeneratorTag::EveryNth { stride, n_max },
        })
    }

    /// `λ_n = ⌈n ln n⌉` for `n = 2..=n_max` (natural logarithm).
    pub fn ceil_n_log_n(n_max: u64) -> Result<Self, MuntzError> {
        if n_max < 2 {
            return Err(MuntzError::NMaxTooSmall { min: 2, got: n_max });
        }
        let values = (2..=n_max)
            .map(|n| (n as f64 * (n as f64).ln()).ceil())
            .collect();
        Self::validated(values, GeneratorTag::CeilNLogN { n_max })
    }

    /// `λ_n = p_n` (the n-th prime) for `n = 2..=n_max`, so the set starts at
    /// `p_2 = 3`; with this indexing every value satisfies `p_n ≥ n ln n`.
    pub fn primes(n_max: u64) -> Result<Self, MuntzError> {
        if n_max < 2 {
            return Err(MuntzError::NMaxTooSmall { min: 2, got: n_max });
        }
        let primes = sieve_first_primes(n_max as usize);
        let values = primes[1..].iter().map(|&p| p as f64).collect();
        Self::validated(values, GeneratorTag::Primes { n_max })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tag(&self) -> &GeneratorTag {
        &self.tag
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// First `count` primes (2, 3, 5, …) by Eratosthenes sieve; the sieve limit
/// comes from the standard upper bound p_n < n(ln n + ln ln n) for n ≥ 6.
fn sieve_first_primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    let n = count as f64;
    let limit = if count < 6 {
        15
    } else {
        (n * (n.ln() + n.ln().ln())).ceil() as usize + 16
    };
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::with_capacity(count);
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            if out.len() == count {
                break;
            }
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    debug_assert_eq!(out.len(), count);
    out
}

/// Partial sum Σ 1/λ over the strictly positive exponents of the set.
/// Divergence of the full series is an asymptotic statement; this value is
/// only the finite truncation.
pub fn muntz_szasz_sum(lambda: &ExponentSet) -> f64 {
    lambda
        .values()
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| 1.0 / v)
        .sum()
}

/// Finitely many atoms μ_k ∈ (0,1) carrying the weights w_k = 1−μ_k².
#[derive(Debug, Clone, Serialize)]
pub struct AtomicMeasure {
    locations: Vec<f64>,
    weights: Vec<f64>,
}

impl AtomicMeasure {
    pub fn from_locations(locations: Vec<f64>) -> Result<Self, MuntzError> {
        if locations.is_empty() {
            return Err(MuntzError::EmptyMeasure);
        }
        for &mu in &locations {
            if !mu.is_finite() || mu <= 0.0 || mu >= 1.0 {
                return Err(MuntzError::LocationOutOfRange(mu));
            }
        }
        for i in 0..locations.len() {
            for j in (i + 1)..locations.len() {
                if (locations[i] - locations[j]).abs() < 1e-15 {
                    return Err(MuntzError::DuplicateLocation(i, j));
                }
            }
        }
        let weights = locations.iter().map(|&mu| 1.0 - mu * mu).collect();
        Ok(Self { locations, weights })
    }

    pub fn locations(&self) -> &[f64] {
        &self.locations
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.locations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locations.is_empty()
    }
}

/// `(1−μ²) Σ_{λ∈Λ} μ^{2λ}` for μ ∈ (0,1).
pub fn pointwise_condition(mu: f64, lambda: &ExponentSet) -> Result<f64, MuntzError> {
    if !mu.is_finite() || mu <= 0.0 || mu >= 1.0 {
        return Err(MuntzError::LocationOutOfRange(mu));
    }
    let x = 1.0 - mu * mu;
    let log_mu_sq = (-x).ln_1p();
    let sum: f64 = lambda
        .values()
        .iter()
        .map(|&lam| (lam * log_mu_sq).exp())
        .sum();
    Ok(x * sum)
}

/// Closed form of [`pointwise_condition`] for the full naturals `{0,1,2,…}`:
/// the geometric series collapses to exactly 1 for every μ ∈ (0,1).
pub fn pointwise_closed_naturals(_mu: f64) -> f64 {
    1.0
}

/// Closed form of [`pointwise_condition`] for the infinite every-Nth set
/// `{0, N, 2N, …}`: `(1−μ²)/(1−μ^{2N})`, which lies in `(1/N, 1]`.
pub fn pointwise_closed_every_nth(mu: f64, stride: u64) -> Result<f64, MuntzError> {
    if !mu.is_finite() || mu <= 0.0 || mu >= 1.0 {
        return Err(MuntzError::LocationOutOfRange(mu));
    }
    if stride == 0 {
        return Err(MuntzError::ZeroStride);
    }
    Ok((1.0 - mu * mu) / (1.0 - mu.powi(2 * stride as i32)))
}

/// Extremes of the pointwise quantity over the atoms of a measure.
#[derive(Debug, Clone, Serialize)]
pub struct PointwiseExtremes {
    pub infimum: f64,
    pub supremum: f64,
    pub argmin: usize,
    pub argmax: usize,
}

pub fn pointwise_extremes(
    atoms: &AtomicMeasure,
    lambda: &ExponentSet,
) -> Result<PointwiseExtremes, MuntzError> {
    let mut inf = f64::INFINITY;
    let mut sup = f64::NEG_INFINITY;
    let mut argmin = 0;
    let mut argmax = 0;
    for (k, &mu) in atoms.locations().iter().enumerate() {
        let v = pointwise_condition(mu, lambda)?;
        if v < inf {
            inf = v;
            argmin = k;
        }
        if v > sup {
            sup = v;
            argmax = k;
        }
    }
    Ok(PointwiseExtremes {
        infimum: inf,
        supremum: sup,
        argmin,
        argmax,
    })
}

/// Result of summing `S(x) = Σ_{n≥2} exp(−x n ln n)` to a tail tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct SOfXReport {
    pub value: f64,
    /// Last index included in the partial sum.
    pub n_used: u64,
    /// Rigorous bound on the neglected tail Σ_{n > n_used}.
    pub tail_bound: f64,
}

/// Sums `S(x)` until the integral tail bound
/// `Σ_{n>N} exp(−x n ln n) ≤ exp(−x N ln N)/(x ln N)` drops below the
/// absolute tolerance.
pub fn s_of_x(x: f64, tolerance: f64) -> Result<SOfXReport, MuntzError> {
    if !x.is_finite() || x <= 0.0 {
        return Err(MuntzError::NonPositiveX(x));
    }
    if !tolerance.is_finite() || tolerance <= 0.0 {
        return Err(MuntzError::NonPositiveTolerance(tolerance));
    }
    let mut sum = 0.0;
    let mut n: u64 = 2;
    loop {
        let ln_n = (n as f64).ln();
        let term = (-x * n as f64 * ln_n).exp();
        sum += term;
        let tail = term / (x * ln_n);
        if tail < tolerance {
            return Ok(SOfXReport {
                value: sum,
                n_used: n,
                tail_bound: tail,
            });
        }
        if n >= S_OF_X_MAX_TERMS {
            return Err(MuntzError::TailBoundNotReached(n));
        }
        n += 1;
    }
}

/// The map from ℓ² coordinates to function values on the atoms:
/// `(Jx)(μ_k) = x_k conj(b_k) / (1−μ_k²)`.
pub fn spectral_model_j(
    x: &[Complex64],
    atoms: &AtomicMeasure,
    b: &[Complex64],
) -> Result<Vec<Complex64>, MuntzError> {
    if x.len() != atoms.len() {
        return Err(MuntzError::LengthMismatch {
            expected: atoms.len(),
            got: x.len(),
        });
    }
    if b.len() != atoms.len() {
        return Err(MuntzError::LengthMismatch {
            expected: atoms.len(),
            got: b.len(),
        });
    }
    Ok(atoms
        .weights()
        .iter()
        .zip(x.iter().zip(b))
        .map(|(&w, (&xk, &bk))| xk * bk.conj() / w)
        .collect())
}

/// Weighted inner product `⟨f, g⟩_{L²(ν)} = Σ w_k f(μ_k) conj(g(μ_k))`.
pub fn l2nu_inner(
    f: &[Complex64],
    g: &[Complex64],
    atoms: &AtomicMeasure,
) -> Result<Complex64, MuntzError> {
    if f.len() != atoms.len() || g.len() != atoms.len() {
        return Err(MuntzError::LengthMismatch {
            expected: atoms.len(),
            got: f.len().max(g.len()),
        });
    }
    Ok(atoms
        .weights()
        .iter()
        .zip(f.iter().zip(g))
        .map(|(&w, (&fv, &gv))| w * fv * gv.conj())
        .sum())
}

pub fn l2nu_norm(f: &[Complex64], atoms: &AtomicMeasure) -> Result<f64, MuntzError> {
    Ok(l2nu_inner(f, f, atoms)?.re.max(0.0).sqrt())
}

/// The coordinate isometry `(Uf)_k = √w_k f(μ_k)` from L²(ν) onto ℓ².
pub fn model_unitary_u(
    f: &[Complex64],
    atoms: &AtomicMeasure,
) -> Result<Vec<Complex64>, MuntzError> {
    if f.len() != atoms.len() {
        return Err(MuntzError::LengthMismatch {
            expected: atoms.len(),
            got: f.len(),
        });
    }
    Ok(atoms
        .weights()
        .iter()
        .zip(f)
        .map(|(&w, &fv)| w.sqrt() * fv)
        .collect())
}

/// ℓ² image of the monomial t^λ under the coordinate isometry:
/// `b_λ = (√w_k μ_k^λ)_k`.
pub fn monomial_vector(atoms: &AtomicMeasure, lam: f64) -> Vec<Complex64> {
    atoms
        .locations()
        .iter()
        .zip(atoms.weights())
        .map(|(&mu, &w)| Complex64::new(w.sqrt() * mu.powf(lam), 0.0))
        .collect()
}

/// Frame bounds of the weighted monomial family `{b_λ : λ ∈ Λ}` in ℓ²:
/// extremal eigenvalues of the K×K frame operator `Σ_λ b_λ b_λ*`.
pub fn frame_test_monomials(
    atoms: &AtomicMeasure,
    lambda: &ExponentSet,
) -> Result<FrameBoundsReport, MuntzError> {
    let k = atoms.len();
    // b_λ is real, so accumulate in real arithmetic and lift afterwards.
    let mut s = vec![0.0f64; k * k];
    let mut v = vec![0.0f64; k];
    for &lam in lambda.values() {
        for (i, (&mu, &w)) in atoms.locations().iter().zip(atoms.weights()).enumerate() {
            v[i] = w.sqrt() * mu.powf(lam);
        }
        for j in 0..k {
            for i in 0..k {
                s[j * k + i] += v[i] * v[j];
            }
        }
    }
    let sc = nalgebra::DMatrix::from_fn(k, k, |i, j| Complex64::new(s[j * k + i], 0.0));
    let (lower, upper) = crate::linalg::hermitian_extremal_eigenvalues(&sc)?;
    Ok(FrameBoundsReport {
        lower,
        upper,
        truncation_tail: 0.0,
        method: crate::orbit::FrameBoundsMethod::PartialSum,
    })
}
