//! Model spaces K_θ for finite Blaschke products θ: Takenaka–Malmquist
//! orthonormal bases inside the degree cutoff, the compressed shift and
//! its spectrum/Jordan structure, the kernel-at-zero orbit identities,
//! and the interleave/deinterleave unitary that splits the m-fold shift
//! into a vector shift.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::disk::{DiskError, FiniteBlaschke};
use crate::linalg::{eigenvalues_general, numerical_rank, operator_norm, LinalgError};
use crate::series::{blaschke_factor_series, geometric, inner, shift_up, trunc_mul};

/// Largest supported zero multiplicity; generalized eigenvector chains
/// beyond this are numerically unreliable.
pub const MAX_MULTIPLICITY: u32 = 4;
/// Largest supported model dimension.
pub const MAX_MODEL_DEGREE: usize = 24;
/// Gram tolerance for accepting the computed basis as orthonormal.
pub const ORTHONORMALITY_TOL: f64 = 1e-10;
/// Relative singular-value threshold for rank decisions in the Jordan
/// structure.
pub const JORDAN_RANK_TOL: f64 = 1e-7;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("cutoff {got} is below the required minimum {required} (4x the degree)")]
    CutoffTooSmall { required: usize, got: usize },
    #[error("zero multiplicity {got} exceeds the supported maximum {max}")]
    MultiplicityTooLarge { got: u32, max: u32 },
    #[error("model degree {got} exceeds the supported maximum {max}")]
    DegreeTooLarge { got: usize, max: usize },
    #[error("computed basis fails orthonormality: Gram defect {0:.3e}")]
    BasisNotOrthonormal(f64),
    #[error("coefficient window of length {len} does not fit cutoff divisible by {m}")]
    IndivisibleCutoff { len: usize, m: usize },
    #[error("expected {expected} coordinates, got {got}")]
    CoordinateMismatch { expected: usize, got: usize },
    #[error("component count must be at least 1")]
    NoComponents,
    #[error("matrix I - conj(a) S is singular for zero {0}")]
    SingularResolvent(Complex64),
    #[error(transparent)]
    Disk(#[from] DiskError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// K_θ realized inside the degree-cutoff section: an orthonormal basis
/// in monomial coordinates and the compressed shift in that basis.
#[derive(Debug, Clone)]
pub struct FiniteBlaschkeModel {
    theta: FiniteBlaschke,
    cutoff: usize,
    basis: Vec<Vec<Complex64>>,
    shift: DMatrix<Complex64>,
    gram_defect: f64,
}

impl FiniteBlaschkeModel {
    /// Builds the Takenaka–Malmquist basis for the zero sequence (with
    /// multiplicities by repetition) and compresses multiplication by z
    /// onto it.
    pub fn new(theta: FiniteBlaschke, cutoff: usize) -> Result<Self, ModelError> {
        let d = theta.degree();
        if let Some(&(_, m)) = theta.zeros().iter().find(|&&(_, m)| m > MAX_MULTIPLICITY) {
            return Err(ModelError::MultiplicityTooLarge {
                got: m,
                max: MAX_MULTIPLICITY,
            });
        }
        if d > MAX_MODEL_DEGREE {
            return Err(ModelError::DegreeTooLarge {
                got: d,
                max: MAX_MODEL_DEGREE,
            });
        }
        if cutoff < 4 * d {
            return Err(ModelError::CutoffTooSmall {
                required: 4 * d,
                got: cutoff,
            });
        }
        let zeros = theta.zeros_with_multiplicity();
        let mut basis = Vec::with_capacity(d);
        let mut carrier = vec![Complex64::ZERO; cutoff + 1];
        carrier[0] = Complex64::ONE;
        for &a in &zeros {
            let scale = (1.0 - a.norm_sqr()).sqrt();
            let kernel: Vec<Complex64> = geometric(a.conj(), cutoff)
                .into_iter()
                .map(|v| scale * v)
                .collect();
            basis.push(trunc_mul(&carrier, &kernel, cutoff));
            carrier = trunc_mul(&carrier, &blaschke_factor_series(a, cutoff), cutoff);
        }
        let mut gram_defect: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let expected = if i == j {
                    Complex64::ONE
                } else {
                    Complex64::ZERO
                };
                gram_defect = gram_defect.max((inner(&basis[i], &basis[j]) - expected).norm());
            }
        }
        if gram_defect > ORTHONORMALITY_TOL {
            return Err(ModelError::BasisNotOrthonormal(gram_defect));
        }
        let shift = DMatrix::from_fn(d, d, |i, j| inner(&shift_up(&basis[j], 1), &basis[i]));
        Ok(Self {
            theta,
            cutoff,
            basis,
            shift,
            gram_defect,
        })
    }

    pub fn theta(&self) -> &FiniteBlaschke {
        &self.theta
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Orthonormal basis vectors in monomial coordinates.
    pub fn basis(&self) -> &[Vec<Complex64>] {
        &self.basis
    }

    /// The compressed shift in the model basis.
    pub fn shift(&self) -> &DMatrix<Complex64> {
        &self.shift
    }

    /// Max entrywise deviation of the basis Gram matrix from identity.
    pub fn gram_defect(&self) -> f64 {
        self.gram_defect
    }

    /// Monomial coefficients of the function with the given basis
    /// coordinates.
    pub fn expand(&self, coords: &[Complex64]) -> Result<Vec<Complex64>, ModelError> {
        if coords.len() != self.dimension() {
            return Err(ModelError::CoordinateMismatch {
                expected: self.dimension(),
                got: coords.len(),
            });
        }
        let mut out = vec![Complex64::ZERO; self.cutoff + 1];
        for (c, e) in coords.iter().zip(&self.basis) {
            for (dst, &src) in out.iter_mut().zip(e) {
                *dst += c * src;
            }
        }
        Ok(out)
    }

    /// Max over n ≤ cutoff − d of `|⟨e_i, θ·zⁿ⟩|`: certifies the basis
    /// lies in the orthogonal complement of θ·H² at the cutoff.
    pub fn subspace_membership_defect(&self) -> f64 {
        let theta_series = self.theta.series(self.cutoff);
        let mut defect: f64 = 0.0;
        for n in 0..=(self.cutoff - self.dimension()) {
            let shifted = shift_up(&theta_series, n);
            for e in &self.basis {
                defect = defect.max(inner(e, &shifted).norm());
            }
        }
        defect
    }

    /// Operator norm of `Π_k B_{a_k}(S)` for the given zeros, evaluated
    /// exactly as matrix Möbius factors `(|a|/a)(aI−S)(I−āS)⁻¹`.
    pub fn blaschke_of_shift(&self, zeros: &[Complex64]) -> Result<f64, ModelError> {
        let d = self.dimension();
        let eye = DMatrix::<Complex64>::identity(d, d);
        let mut acc = eye.clone();
        for &a in zeros {
            let factor = if a == Complex64::ZERO {
                self.shift.clone()
            } else {
                let resolvent = (&eye - self.shift.map(|v| v * a.conj()))
                    .try_inverse()
                    .ok_or(ModelError::SingularResolvent(a))?;
                let numerator = eye.map(|v| v * a) - &self.shift;
                let phase = a.conj() / a.norm();
                (numerator * resolvent).map(|v| v * phase)
            };
            acc *= factor;
        }
        Ok(operator_norm(&acc))
    }

    /// ‖θ(S)‖: the minimal-function identity, expected ≈ 0.
    pub fn theta_of_shift(&self) -> Result<f64, ModelError> {
        self.blaschke_of_shift(&self.theta.zeros_with_multiplicity())
    }

    /// ‖θ'(S)‖ for every divisor θ' obtained by dropping one zero
    /// occurrence; all must be far from 0 for θ to be minimal.
    pub fn divisor_defects(&self) -> Result<Vec<(Complex64, f64)>, ModelError> {
        let zeros = self.theta.zeros_with_multiplicity();
        let mut out = Vec::with_capacity(zeros.len());
        for k in 0..zeros.len() {
            let mut reduced = zeros.clone();
            let dropped = reduced.remove(k);
            out.push((dropped, self.blaschke_of_shift(&reduced)?));
        }
        Ok(out)
    }
}

/// Coefficients of `k₀^θ = 1 − conj(θ(0))·θ`, the reproducing kernel of
/// K_θ at the origin.
pub fn k0_theta(model: &FiniteBlaschkeModel) -> Vec<Complex64> {
    let theta_series = model.theta().series(model.cutoff());
    let t0 = theta_series[0];
    let mut k0: Vec<Complex64> = theta_series.iter().map(|&v| -t0.conj() * v).collect();
    k0[0] += Complex64::ONE;
    k0
}

/// Coordinates γ_i = ⟨k₀, e_i⟩ of the kernel in the model basis.
pub fn k0_coordinates(model: &FiniteBlaschkeModel) -> Vec<Complex64> {
    let k0 = k0_theta(model);
    model.basis().iter().map(|e| inner(&k0, e)).collect()
}

/// Max over n < 4d of `|⟨f, S_θⁿ k₀⟩ − f̂(n)|` for f given in model
/// coordinates: the Taylor coefficients of f are recovered by pairing
/// against the shift orbit of the kernel.
pub fn parseval_orbit_check(
    model: &FiniteBlaschkeModel,
    coords: &[Complex64],
) -> Result<f64, ModelError> {
    let d = model.dimension();
    if coords.len() != d {
        return Err(ModelError::CoordinateMismatch {
            expected: d,
            got: coords.len(),
        });
    }
    let expansion = model.expand(coords)?;
    let gamma = k0_coordinates(model);
    let mut v = DVector::from_iterator(d, gamma.iter().copied());
    let mut defect: f64 = 0.0;
    for expected in expansion.iter().take(4 * d) {
        let pairing: Complex64 = coords
            .iter()
            .zip(v.iter())
            .map(|(&f, &g)| f * g.conj())
            .sum();
        defect = defect.max((pairing - expected).norm());
        v = model.shift() * v;
    }
    Ok(defect)
}

/// ‖Σ_{n ≤ n_max} (Sⁿγ)(Sⁿγ)* − I‖ on the model space: the partial
/// frame operator of the kernel orbit against its Parseval limit.
pub fn orbit_frame_defect(model: &FiniteBlaschkeModel, n_max: usize) -> f64 {
    let d = model.dimension();
    let gamma = k0_coordinates(model);
    let mut v = DVector::from_iterator(d, gamma.iter().copied());
    let mut acc = DMatrix::<Complex64>::zeros(d, d);
    for _ in 0..=n_max {
        for i in 0..d {
            for j in 0..d {
                acc[(i, j)] += v[i] * v[j].conj();
            }
        }
        v = model.shift() * v;
    }
    operator_norm(&(acc - DMatrix::<Complex64>::identity(d, d)))
}

/// One distinct zero of θ with the eigenvalues assigned to it.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroCluster {
    pub zero: Complex64,
    pub multiplicity: usize,
    pub eigenvalues: Vec<Complex64>,
    pub centroid: Complex64,
    /// |centroid − zero|: stable even when a multiple eigenvalue splits
    /// into a numerical cluster.
    pub centroid_deviation: f64,
}

/// Spectrum of the compressed shift matched against the zero multiset.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<Complex64>,
    pub clusters: Vec<ZeroCluster>,
    /// True when each cluster received exactly its multiplicity.
    pub counts_match: bool,
    pub max_centroid_deviation: f64,
    /// Max distance from an eigenvalue to its assigned zero; inflated by
    /// cluster splitting for multiple zeros.
    pub max_raw_deviation: f64,
}

pub fn spectrum_check(model: &FiniteBlaschkeModel) -> Result<SpectrumReport, ModelError> {
    let mut eigenvalues = eigenvalues_general(model.shift())?;
    eigenvalues.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    let distinct: Vec<(Complex64, usize)> = model
        .theta()
        .zeros()
        .iter()
        .map(|&(p, m)| (p.value(), m as usize))
        .collect();
    let mut assigned: Vec<Vec<Complex64>> = vec![Vec::new(); distinct.len()];
    let mut max_raw: f64 = 0.0;
    for &ev in &eigenvalues {
        let (best, dist) = distinct
            .iter()
            .enumerate()
            .map(|(idx, &(z, _))| (idx, (ev - z).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .expect("theta has at least one zero");
        assigned[best].push(ev);
        max_raw = max_raw.max(dist);
    }
    let mut clusters = Vec::with_capacity(distinct.len());
    let mut counts_match = true;
    let mut max_centroid: f64 = 0.0;
    for (idx, &(zero, multiplicity)) in distinct.iter().enumerate() {
        let members = assigned[idx].clone();
        counts_match &= members.len() == multiplicity;
        let centroid = if members.is_empty() {
            Complex64::new(f64::NAN, f64::NAN)
        } else {
            members.iter().sum::<Complex64>() / members.len() as f64
        };
        let centroid_deviation = if members.is_empty() {
            f64::INFINITY
        } else {
            (centroid - zero).norm()
        };
        max_centroid = max_centroid.max(centroid_deviation);
        clusters.push(ZeroCluster {
            zero,
            multiplicity,
            eigenvalues: members,
            centroid,
            centroid_deviation,
        });
    }
    Ok(SpectrumReport {
        eigenvalues,
        clusters,
        counts_match,
        max_centroid_deviation: max_centroid,
        max_raw_deviation: max_raw,
    })
}

/// Jordan data for one distinct zero, derived from the rank sequence of
/// `(S−λI)^j`.
#[derive(Debug, Clone, Serialize)]
pub struct JordanBlockReport {
    pub eigenvalue: Complex64,
    pub multiplicity: usize,
    /// ranks of (S−λI)^j for j = 1..=multiplicity.
    pub ranks: Vec<usize>,
    /// Sizes of the Jordan blocks at this eigenvalue, descending.
    pub block_sizes: Vec<usize>,
    pub eigenspace_dimension: usize,
}

pub fn jordan_structure(model: &FiniteBlaschkeModel) -> Vec<JordanBlockReport> {
    let d = model.dimension();
    let eye = DMatrix::<Complex64>::identity(d, d);
    let mut out = Vec::new();
    for &(p, m) in model.theta().zeros() {
        let lambda = p.value();
        let m = m as usize;
        let shifted = model.shift() - &eye * lambda;
        let mut ranks = Vec::with_capacity(m + 1);
        let mut power = eye.clone();
        for _ in 1..=(m + 1) {
            power = &power * &shifted;
            ranks.push(numerical_rank(&power, JORDAN_RANK_TOL));
        }
        // blocks of size >= j at λ number rank((S−λ)^{j−1}) − rank((S−λ)^j)
        let rank_at = |j: usize| -> usize {
            if j == 0 {
                d
            } else {
                ranks[j - 1]
            }
        };
        let mut block_sizes = Vec::new();
        for j in 1..=m {
            let at_least_j = rank_at(j - 1) - rank_at(j);
            let at_least_next = rank_at(j) - rank_at(j + 1);
            let exactly_j = at_least_j.saturating_sub(at_least_next);
            for _ in 0..exactly_j {
                block_sizes.push(j);
            }
        }
        block_sizes.sort_unstable_by(|a, b| b.cmp(a));
        let eigenspace_dimension = d - rank_at(1);
        out.push(JordanBlockReport {
            eigenvalue: lambda,
            multiplicity: m,
            ranks: ranks[..m].to_vec(),
            block_sizes,
            eigenspace_dimension,
        });
    }
    out
}

/// A function into ℂᵐ given by m coefficient components.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorHardyFunction {
    components: Vec<Vec<Complex64>>,
}

impl VectorHardyFunction {
    pub fn new(components: Vec<Vec<Complex64>>) -> Result<Self, ModelError> {
        if components.is_empty() {
            return Err(ModelError::NoComponents);
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[Vec<Complex64>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn norm_sq(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.iter().map(|v| v.norm_sqr()).sum::<f64>())
            .sum()
    }
}

/// The interleaving unitary: component j (1-based) of the image collects
/// the coefficients a_{j−1}, a_{j−1+m}, a_{j−1+2m}, …. Requires the
/// window cutoff (length − 1) to be divisible by m.
pub fn split_interleaved(
    coeffs: &[Complex64],
    m: usize,
) -> Result<VectorHardyFunction, ModelError> {
    if m == 0 || coeffs.is_empty() || !(coeffs.len() - 1).is_multiple_of(m) {
        return Err(ModelError::IndivisibleCutoff {
            len: coeffs.len(),
            m,
        });
    }
    let mut components = vec![Vec::new(); m];
    for (idx, &v) in coeffs.iter().enumerate() {
        components[idx % m].push(v);
    }
    VectorHardyFunction::new(components)
}

/// Inverse of [`split_interleaved`]: re-interleaves the components.
pub fn join_interleaved(f: &VectorHardyFunction) -> Vec<Complex64> {
    let m = f.component_count();
    let total: usize = f.components().iter().map(Vec::len).sum();
    let mut out = vec![Complex64::ZERO; total];
    for (j, comp) in f.components().iter().enumerate() {
        for (k, &v) in comp.iter().enumerate() {
            out[j + k * m] = v;
        }
    }
    out
}

/// Pairings ⟨F, Sⁿe_j⟩ of a vector function against the shift orbits of
/// the constant generators: row j lists the Taylor coefficients of
/// component j.
pub fn generator_pairings(f: &VectorHardyFunction) -> Vec<Vec<Complex64>> {
    f.components().to_vec()
}

/// |Σ_{j,n} |⟨F, Sⁿe_j⟩|² − ‖F‖²|: the multi-generator Parseval defect,
/// exactly zero up to floating-point regrouping.
pub fn multi_generator_parseval(f: &VectorHardyFunction) -> f64 {
    let pairing_sum: f64 = generator_pairings(f)
        .iter()
        .map(|row| row.iter().map(|v| v.norm_sqr()).sum::<f64>())
        .sum();
    (pairing_sum - f.norm_sq()).abs()
}
