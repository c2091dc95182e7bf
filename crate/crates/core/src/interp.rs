//! Weighted interpolation on the truncated Hardy space.
//!
//! Feasibility ("McPhail band") checks, minimum-norm interpolants for
//! scalar and multi-generator data, Gram-based Riesz-basic-sequence tests
//! for normalized kernel families, and a greedy Carleson-partition
//! heuristic.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::disk::{
    carleson_constant, is_interpolating, CarlesonReport, DiskError, DiskPoint, DiskSequence,
};
use crate::linalg::{hermitian_extremal_eigenvalues, least_norm_solve, LinalgError};

#[derive(Debug, Error)]
pub enum InterpError {
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("problem must have at least one node")]
    EmptyProblem,
    #[error("weight vectors must share one length >= 1")]
    RaggedWeights,
    #[error("scalar operation called on a problem with {0} generators")]
    ScalarProblemRequired(usize),
    #[error("node {0} has zero weight but a nonzero target; its constraint row is rank-deficient")]
    ZeroWeightWithTarget(usize),
    #[error("{nodes} nodes exceed the {capacity} degrees of freedom at this degree")]
    TooManyNodes { nodes: usize, capacity: usize },
    #[error("kernel family member {0} has a zero weight vector")]
    DegenerateFamily(usize),
    #[error("weight {0} is not strictly positive")]
    NonPositiveWeight(usize),
    #[error(transparent)]
    Disk(#[from] DiskError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Nodes z_k, per-node weight vectors g_k ∈ ℂ^N, and targets c_k for the
/// constraints Σ_i f_i(z_k) g_{k,i} = c_k.
#[derive(Debug, Clone)]
pub struct InterpolationProblem {
    nodes: DiskSequence,
    weight_vectors: Vec<Vec<Complex64>>,
    targets: Vec<Complex64>,
    generator_count: usize,
}

impl InterpolationProblem {
    pub fn new(
        nodes: Vec<Complex64>,
        weight_vectors: Vec<Vec<Complex64>>,
        targets: Vec<Complex64>,
    ) -> Result<Self, InterpError> {
        if nodes.is_empty() {
            return Err(InterpError::EmptyProblem);
        }
        if weight_vectors.len() != nodes.len() {
            return Err(InterpError::LengthMismatch {
                expected: nodes.len(),
                got: weight_vectors.len(),
            });
        }
        if targets.len() != nodes.len() {
            return Err(InterpError::LengthMismatch {
                expected: nodes.len(),
                got: targets.len(),
            });
        }
        let generator_count = weight_vectors[0].len();
        if generator_count == 0 || weight_vectors.iter().any(|g| g.len() != generator_count) {
            return Err(InterpError::RaggedWeights);
        }
        let points = nodes
            .into_iter()
            .map(DiskPoint::new)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            nodes: DiskSequence::new(points)?,
            weight_vectors,
            targets,
            generator_count,
        })
    }

    /// Scalar (single-generator) problem: `u_k f(z_k) = c_k`.
    pub fn scalar(
        nodes: Vec<Complex64>,
        weights: Vec<Complex64>,
        targets: Vec<Complex64>,
    ) -> Result<Self, InterpError> {
        let weight_vectors = weights.into_iter().map(|u| vec![u]).collect();
        Self::new(nodes, weight_vectors, targets)
    }

    pub fn nodes(&self) -> &DiskSequence {
        &self.nodes
    }

    pub fn weight_vectors(&self) -> &[Vec<Complex64>] {
        &self.weight_vectors
    }

    pub fn targets(&self) -> &[Complex64] {
        &self.targets
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }
}

/// Serde shape for problems arriving as JSON:
/// `{nodes: [[re,im],…], weights: [[[re,im],…],…], targets: [[re,im],…], N, degree}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpolationProblemInput {
    pub nodes: Vec<[f64; 2]>,
    pub weights: Vec<Vec<[f64; 2]>>,
    pub targets: Vec<[f64; 2]>,
    #[serde(rename = "N")]
    pub generator_count: usize,
    pub degree: usize,
}

impl InterpolationProblemInput {
    pub fn build(&self) -> Result<(InterpolationProblem, usize), InterpError> {
        let to_c = |p: &[f64; 2]| Complex64::new(p[0], p[1]);
        let problem = InterpolationProblem::new(
            self.nodes.iter().map(to_c).collect(),
            self.weights
                .iter()
                .map(|g| g.iter().map(to_c).collect())
                .collect(),
            self.targets.iter().map(to_c).collect(),
        )?;
        if problem.generator_count() != self.generator_count {
            return Err(InterpError::RaggedWeights);
        }
        Ok((problem, self.degree))
    }
}

/// Separation + weight-band feasibility verdict in the style of the
/// ℓ²-interpolation characterization.
#[derive(Debug, Clone, Serialize)]
pub struct McPhailReport {
    pub carleson: CarlesonReport,
    pub carleson_pass: bool,
    /// Observed band of the ratios `w_k / √(1−|z_k|)`.
    pub ratio_low: f64,
    pub ratio_high: f64,
    pub pass: bool,
}

/// Gates for [`mcphail_check`]: minimal separation constant and minimal
/// band ratio `low/high`.
#[derive(Debug, Clone, Serialize)]
pub struct McPhailConfig {
    pub delta_min: f64,
    pub band_ratio_min: f64,
}

impl Default for McPhailConfig {
    fn default() -> Self {
        Self {
            delta_min: 1e-3,
            band_ratio_min: 0.05,
        }
    }
}

/// Checks that the nodes are Carleson-separated and the positive weights
/// scale like `√(1−|z_k|)` within a healthy band.
pub fn mcphail_check(
    nodes: &DiskSequence,
    weights: &[f64],
    config: &McPhailConfig,
) -> Result<McPhailReport, InterpError> {
    if weights.len() != nodes.len() {
        return Err(InterpError::LengthMismatch {
            expected: nodes.len(),
            got: weights.len(),
        });
    }
    if let Some(k) = weights.iter().position(|&w| !w.is_finite() || w <= 0.0) {
        return Err(InterpError::NonPositiveWeight(k));
    }
    let carleson = carleson_constant(nodes);
    let carleson_pass = !carleson.underflow && carleson.constant >= config.delta_min;
    let mut low = f64::INFINITY;
    let mut high: f64 = 0.0;
    for (&w, p) in weights.iter().zip(nodes.points()) {
        let r = w / (1.0 - p.value().norm()).sqrt();
        low = low.min(r);
        high = high.max(r);
    }
    let band_pass = low > 0.0 && high.is_finite() && low / high >= config.band_ratio_min;
    Ok(McPhailReport {
        carleson,
        carleson_pass,
        ratio_low: low,
        ratio_high: high,
        pass: carleson_pass && band_pass,
    })
}

/// A minimum-norm interpolant with its numerical certificates.
#[derive(Debug, Clone, Serialize)]
pub struct MinNormSolution {
    /// Coefficients (a_0, …, a_D).
    pub coefficients: Vec<Complex64>,
    /// Relative constraint residual.
    pub residual: f64,
    /// Condition estimate of the constraint system.
    pub condition_estimate: f64,
}

/// Builds the constraint matrix rows `u_k (1, z_k, …, z_k^D)` after
/// removing vacuous rows (zero weight, zero target).
fn scalar_constraint_system(
    problem: &InterpolationProblem,
    degree: usize,
) -> Result<(DMatrix<Complex64>, DVector<Complex64>), InterpError> {
    if problem.generator_count() != 1 {
        return Err(InterpError::ScalarProblemRequired(
            problem.generator_count(),
        ));
    }
    let mut rows: Vec<(Complex64, Complex64, Complex64)> = Vec::new();
    for (k, (p, c)) in problem
        .nodes()
        .points()
        .iter()
        .zip(problem.targets())
        .enumerate()
    {
        let u = problem.weight_vectors()[k][0];
        if u == Complex64::ZERO {
            if *c != Complex64::ZERO {
                return Err(InterpError::ZeroWeightWithTarget(k));
            }
            continue; // vacuous constraint 0 = 0
        }
        rows.push((u, p.value(), *c));
    }
    if rows.len() > degree + 1 {
        return Err(InterpError::TooManyNodes {
            nodes: rows.len(),
            capacity: degree + 1,
        });
    }
    let m = rows.len();
    let mut a = DMatrix::<Complex64>::zeros(m, degree + 1);
    let mut b = DVector::<Complex64>::zeros(m);
    for (row, &(u, z, c)) in rows.iter().enumerate() {
        let mut p = Complex64::ONE;
        for col in 0..=degree {
            a[(row, col)] = u * p;
            p *= z;
        }
        b[row] = c;
    }
    Ok((a, b))
}

/// Minimum-ℓ²-norm polynomial of degree ≤ D satisfying `u_k f(z_k) = c_k`.
pub fn min_norm_interpolant(
    problem: &InterpolationProblem,
    degree: usize,
) -> Result<MinNormSolution, InterpError> {
    let (a, b) = scalar_constraint_system(problem, degree)?;
    if a.nrows() == 0 {
        return Ok(MinNormSolution {
            coefficients: vec![Complex64::ZERO; degree + 1],
            residual: 0.0,
            condition_estimate: 1.0,
        });
    }
    let sol = least_norm_solve(&a, &b)?;
    Ok(MinNormSolution {
        coefficients: sol.x.iter().copied().collect(),
        residual: sol.residual,
        condition_estimate: sol.condition_estimate,
    })
}

/// Minimum-norm tuple (f_1, …, f_N) with `Σ_i f_i(z_k) g_{k,i} = c_k`;
/// unknowns are the stacked coefficient blocks.
pub fn multi_weight_interpolant(
    problem: &InterpolationProblem,
    degree: usize,
) -> Result<(Vec<Vec<Complex64>>, MinNormSolution), InterpError> {
    let n = problem.generator_count();
    let cols_per = degree + 1;
    let mut kept: Vec<usize> = Vec::new();
    for (k, c) in problem.targets().iter().enumerate() {
        let g = &problem.weight_vectors()[k];
        if g.iter().all(|&v| v == Complex64::ZERO) {
            if *c != Complex64::ZERO {
                return Err(InterpError::ZeroWeightWithTarget(k));
            }
            continue;
        }
        kept.push(k);
    }
    if kept.len() > n * cols_per {
        return Err(InterpError::TooManyNodes {
            nodes: kept.len(),
            capacity: n * cols_per,
        });
    }
    let m = kept.len();
    let mut a = DMatrix::<Complex64>::zeros(m, n * cols_per);
    let mut b = DVector::<Complex64>::zeros(m);
    for (row, &k) in kept.iter().enumerate() {
        let z = problem.nodes().points()[k].value();
        let g = &problem.weight_vectors()[k];
        for (i, &gi) in g.iter().enumerate() {
            let mut p = Complex64::ONE;
            for col in 0..cols_per {
                a[(row, i * cols_per + col)] = gi * p;
                p *= z;
            }
        }
        b[row] = problem.targets()[k];
    }
    if m == 0 {
        let zero = vec![vec![Complex64::ZERO; cols_per]; n];
        return Ok((
            zero,
            MinNormSolution {
                coefficients: vec![Complex64::ZERO; n * cols_per],
                residual: 0.0,
                condition_estimate: 1.0,
            },
        ));
    }
    let sol = least_norm_solve(&a, &b)?;
    let stacked: Vec<Complex64> = sol.x.iter().copied().collect();
    let components = (0..n)
        .map(|i| stacked[i * cols_per..(i + 1) * cols_per].to_vec())
        .collect();
    Ok((
        components,
        MinNormSolution {
            coefficients: stacked,
            residual: sol.residual,
            condition_estimate: sol.condition_estimate,
        },
    ))
}

/// The family `{g_k ⊗ (1+z)/(1−z_k z)}` truncated at a degree cutoff,
/// materialized as stacked coefficient vectors.
#[derive(Debug, Clone)]
pub struct KernelFamily {
    degree: usize,
    generator_count: usize,
    /// members[k] is the concatenation of the N component coefficient
    /// vectors, each of length degree+1.
    members: Vec<Vec<Complex64>>,
    vectors: Vec<Vec<Complex64>>,
    nodes: Vec<Complex64>,
}

impl KernelFamily {
    pub fn new(
        nodes: &DiskSequence,
        vectors: Vec<Vec<Complex64>>,
        degree: usize,
    ) -> Result<Self, InterpError> {
        if vectors.len() != nodes.len() {
            return Err(InterpError::LengthMismatch {
                expected: nodes.len(),
                got: vectors.len(),
            });
        }
        let n = vectors.first().map(|g| g.len()).unwrap_or(0);
        if n == 0 || vectors.iter().any(|g| g.len() != n) {
            return Err(InterpError::RaggedWeights);
        }
        if let Some(k) = vectors
            .iter()
            .position(|g| g.iter().all(|&v| v == Complex64::ZERO))
        {
            return Err(InterpError::DegenerateFamily(k));
        }
        let mut members = Vec::with_capacity(nodes.len());
        for (p, g) in nodes.points().iter().zip(&vectors) {
            let z = p.value();
            // (1+z_var)/(1−z_k z_var): coefficient m is z_k^(m−1) (1 + z_k),
            // with coefficient 0 equal to 1
            let mut kernel = vec![Complex64::ZERO; degree + 1];
            kernel[0] = Complex64::ONE;
            let mut pw = Complex64::ONE;
            for c in kernel.iter_mut().skip(1) {
                *c = pw * (Complex64::ONE + z);
                pw *= z;
            }
            let mut member = Vec::with_capacity(n * (degree + 1));
            for &gi in g {
                member.extend(kernel.iter().map(|&c| gi * c));
            }
            members.push(member);
        }
        Ok(Self {
            degree,
            generator_count: n,
            members,
            vectors,
            nodes: nodes.points().iter().map(|p| p.value()).collect(),
        })
    }

    /// Scalar family over plain kernels (g_k = 1).
    pub fn scalar(nodes: &DiskSequence, degree: usize) -> Result<Self, InterpError> {
        let vectors = vec![vec![Complex64::ONE]; nodes.len()];
        Self::new(nodes, vectors, degree)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn members(&self) -> &[Vec<Complex64>] {
        &self.members
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }
}

/// Extremal eigenvalues of the normalized Gram matrix and the resulting
/// finite-scale Riesz-basic verdict.
#[derive(Debug, Clone, Serialize)]
pub struct RieszReport {
    pub min_eig: f64,
    pub max_eig: f64,
    /// `max_eig / min_eig`; infinite when the Gram is numerically singular.
    pub condition: f64,
    pub condition_gate: f64,
    /// True when the family is numerically dependent at this degree.
    pub degenerate: bool,
    /// Finite-scale proxy verdict: condition below the gate.
    pub pass: bool,
}

/// Gram spectrum of the family members, each normalized to unit norm.
pub fn riesz_basic_test(
    family: &KernelFamily,
    condition_gate: f64,
) -> Result<RieszReport, InterpError> {
    let k = family.members().len();
    let normalized: Vec<Vec<Complex64>> = family
        .members()
        .iter()
        .map(|m| {
            let norm = m.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            m.iter().map(|&v| v / norm).collect()
        })
        .collect();
    let gram = DMatrix::from_fn(k, k, |i, j| {
        normalized[i]
            .iter()
            .zip(&normalized[j])
            .map(|(&a, &b)| a * b.conj())
            .sum::<Complex64>()
    });
    let (min_eig, max_eig) = hermitian_extremal_eigenvalues(&gram)?;
    let degenerate = min_eig <= 1e-14 * max_eig.max(1.0);
    let condition = if min_eig > 0.0 {
        max_eig / min_eig
    } else {
        f64::INFINITY
    };
    Ok(RieszReport {
        min_eig,
        max_eig,
        condition,
        condition_gate,
        degenerate,
        pass: !degenerate && condition <= condition_gate,
    })
}

/// Min and max over k of `‖g_k‖² (1−|z_k|²)`.
pub fn weight_norm_condition(family: &KernelFamily) -> (f64, f64) {
    let mut low = f64::INFINITY;
    let mut high: f64 = 0.0;
    for (z, g) in family.nodes().iter().zip(family.vectors()) {
        let v = g.iter().map(|x| x.norm_sqr()).sum::<f64>() * (1.0 - z.norm_sqr());
        low = low.min(v);
        high = high.max(v);
    }
    (low, high)
}

/// Greedy partition of the nodes into subsets that each pass the
/// separation threshold. The partition is a heuristic upper bound on the
/// minimal number of Carleson subsequences, not a certificate.
#[derive(Debug, Clone, Serialize)]
pub struct PartitionReport {
    pub parts: Vec<Vec<usize>>,
    pub delta_min: f64,
    pub heuristic: bool,
}

pub fn carleson_partition(nodes: &DiskSequence, delta_min: f64) -> PartitionReport {
    let mut remaining: Vec<usize> = (0..nodes.len()).collect();
    let mut parts = Vec::new();
    while !remaining.is_empty() {
        let mut part: Vec<usize> = Vec::new();
        let mut rest = Vec::new();
        for &idx in &remaining {
            let mut candidate: Vec<DiskPoint> = part.iter().map(|&i| nodes.points()[i]).collect();
            candidate.push(nodes.points()[idx]);
            let ok = DiskSequence::new(candidate)
                .map(|seq| is_interpolating(&seq, delta_min).pass)
                .unwrap_or(false);
            if ok {
                part.push(idx);
            } else {
                rest.push(idx);
            }
        }
        if part.is_empty() {
            // an irreducible residue (e.g. coincident points); every
            // leftover node becomes its own singleton part
            for idx in rest {
                parts.push(vec![idx]);
            }
            break;
        }
        parts.push(part);
        remaining = rest;
    }
    PartitionReport {
        parts,
        delta_min,
        heuristic: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn real_nodes(xs: &[f64]) -> Vec<Complex64> {
        xs.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    fn dyadic(count: usize) -> Vec<f64> {
        (0..count).map(|k| 1.0 - 0.5f64.powi(k as i32)).collect()
    }

    fn eval_poly(coeffs: &[Complex64], z: Complex64) -> Complex64 {
        coeffs
            .iter()
            .rev()
            .fold(Complex64::ZERO, |acc, &c| acc * z + c)
    }

    #[test]
    fn constant_interpolant_at_origin() {
        let problem = InterpolationProblem::scalar(
            real_nodes(&[0.0]),
            vec![Complex64::ONE],
            vec![Complex64::ONE],
        )
        .unwrap();
        let sol = min_norm_interpolant(&problem, 4).unwrap();
        assert!((sol.coefficients[0] - Complex64::ONE).norm() < 1e-14);
        assert!(sol.coefficients[1..].iter().all(|c| c.norm() < 1e-14));
    }

    #[test]
    fn zero_data_gives_zero_function() {
        let problem = InterpolationProblem::scalar(
            real_nodes(&[0.0, 0.5]),
            vec![Complex64::ONE; 2],
            vec![Complex64::ZERO; 2],
        )
        .unwrap();
        let sol = min_norm_interpolant(&problem, 8).unwrap();
        assert!(sol.coefficients.iter().all(|c| c.norm() < 1e-14));
        assert_eq!(sol.residual, 0.0);
    }

    #[test]
    fn two_node_minimum_norm_values() {
        let problem = InterpolationProblem::scalar(
            real_nodes(&[0.0, 0.5]),
            vec![Complex64::ONE, Complex64::new(2.0, 0.0)],
            vec![Complex64::ONE, Complex64::ONE],
        )
        .unwrap();
        // over quadratics the minimum squared norm is exactly 1.8
        let sol2 = min_norm_interpolant(&problem, 2).unwrap();
        let n2: f64 = sol2.coefficients.iter().map(|c| c.norm_sqr()).sum();
        assert!((n2 - 1.8).abs() < 1e-12, "got {n2}");
        // a longer tail lowers the norm slightly; frozen reference value
        let sol8 = min_norm_interpolant(&problem, 8).unwrap();
        let n8: f64 = sol8.coefficients.iter().map(|c| c.norm_sqr()).sum();
        assert!((n8 - 1.750_011_444_266_422_5).abs() < 1e-12, "got {n8}");
        assert!(sol8.residual < 1e-12);
        // constraints hold pointwise
        let f0 = eval_poly(&sol8.coefficients, Complex64::ZERO);
        let f5 = eval_poly(&sol8.coefficients, Complex64::new(0.5, 0.0));
        assert!((f0 - Complex64::ONE).norm() < 1e-12);
        assert!((2.0 * f5 - Complex64::ONE).norm() < 1e-12);
    }

    #[test]
    fn residual_shrinks_as_degree_grows() {
        let z = dyadic(10);
        let u: Vec<Complex64> = z
            .iter()
            .map(|&x| Complex64::new((1.0 - x).sqrt(), 0.0))
            .collect();
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let c: Vec<Complex64> = (0..10)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let problem = InterpolationProblem::scalar(real_nodes(&z), u, c).unwrap();
        let mut prev = f64::INFINITY;
        for degree in [32usize, 64, 128] {
            let sol = min_norm_interpolant(&problem, degree).unwrap();
            assert!(
                sol.residual <= prev * (1.0 + 1e-9) || sol.residual < 1e-10,
                "residual grew: {} -> {} at D={degree}",
                prev,
                sol.residual
            );
            assert!(sol.condition_estimate < 1e12);
            prev = sol.residual;
        }
        let sol = min_norm_interpolant(&problem, 64).unwrap();
        assert!(sol.residual < 1e-8, "residual {}", sol.residual);
    }

    #[test]
    fn zero_weight_handling() {
        let problem = InterpolationProblem::scalar(
            real_nodes(&[0.0, 0.5]),
            vec![Complex64::ZERO, Complex64::ONE],
            vec![Complex64::ONE, Complex64::ONE],
        )
        .unwrap();
        assert!(matches!(
            min_norm_interpolant(&problem, 8),
            Err(InterpError::ZeroWeightWithTarget(0))
        ));
        // a zero weight with zero target is vacuous and simply dropped
        let problem2 = InterpolationProblem::scalar(
            real_nodes(&[0.0, 0.5]),
            vec![Complex64::ZERO, Complex64::ONE],
            vec![Complex64::ZERO, Complex64::ONE],
        )
        .unwrap();
        let sol = min_norm_interpolant(&problem2, 8).unwrap();
        let f5 = eval_poly(&sol.coefficients, Complex64::new(0.5, 0.0));
        assert!((f5 - Complex64::ONE).norm() < 1e-12);
    }

    #[test]
    fn too_many_nodes_is_reported() {
        let problem = InterpolationProblem::scalar(
            real_nodes(&[0.0, 0.3, 0.6]),
            vec![Complex64::ONE; 3],
            vec![Complex64::ONE; 3],
        )
        .unwrap();
        assert!(matches!(
            min_norm_interpolant(&problem, 1),
            Err(InterpError::TooManyNodes {
                nodes: 3,
                capacity: 2
            })
        ));
    }

    #[test]
    fn multi_generator_reduces_to_scalar() {
        let z = dyadic(6);
        let u: Vec<Complex64> = z
            .iter()
            .map(|&x| Complex64::new((1.0 - x).sqrt(), 0.0))
            .collect();
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        let c: Vec<Complex64> = (0..6)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let scalar = InterpolationProblem::scalar(real_nodes(&z), u.clone(), c.clone()).unwrap();
        let scalar_sol = min_norm_interpolant(&scalar, 24).unwrap();

        let vectors: Vec<Vec<Complex64>> = u.iter().map(|&ui| vec![ui, Complex64::ZERO]).collect();
        let multi = InterpolationProblem::new(real_nodes(&z), vectors, c).unwrap();
        let (components, sol) = multi_weight_interpolant(&multi, 24).unwrap();
        assert!(sol.residual < 1e-10);
        for (a, b) in components[0].iter().zip(&scalar_sol.coefficients) {
            assert!((a - b).norm() < 1e-10);
        }
        assert!(components[1].iter().all(|v| v.norm() < 1e-10));
    }

    #[test]
    fn multi_generator_single_node() {
        let multi = InterpolationProblem::new(
            real_nodes(&[0.0]),
            vec![vec![Complex64::ONE, Complex64::ZERO]],
            vec![Complex64::ONE],
        )
        .unwrap();
        let (components, sol) = multi_weight_interpolant(&multi, 4).unwrap();
        assert!((components[0][0] - Complex64::ONE).norm() < 1e-14);
        assert!(components[0][1..].iter().all(|v| v.norm() < 1e-14));
        assert!(components[1].iter().all(|v| v.norm() < 1e-14));
        assert!(sol.residual < 1e-14);
    }

    #[test]
    fn multi_generator_random_family_interpolates() {
        let z = dyadic(6);
        let mut rng = ChaCha12Rng::seed_from_u64(29);
        let vectors: Vec<Vec<Complex64>> = (0..6)
            .map(|_| {
                let g = [
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                ];
                let norm = (g[0].norm_sqr() + g[1].norm_sqr()).sqrt();
                vec![g[0] / norm, g[1] / norm]
            })
            .collect();
        let c: Vec<Complex64> = (0..6)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let problem =
            InterpolationProblem::new(real_nodes(&z), vectors.clone(), c.clone()).unwrap();
        let (components, sol) = multi_weight_interpolant(&problem, 40).unwrap();
        assert!(sol.residual < 1e-8, "residual {}", sol.residual);
        for (k, &zk) in z.iter().enumerate() {
            let zc = Complex64::new(zk, 0.0);
            let value = eval_poly(&components[0], zc) * vectors[k][0]
                + eval_poly(&components[1], zc) * vectors[k][1];
            assert!((value - c[k]).norm() < 1e-7, "node {k}");
        }
    }

    #[test]
    fn mcphail_bands() {
        let z = dyadic(20);
        let nodes =
            DiskSequence::new(z.iter().map(|&x| DiskPoint::real(x).unwrap()).collect()).unwrap();
        let good: Vec<f64> = z.iter().map(|&x| (1.0 - x).sqrt()).collect();
        let rep = mcphail_check(&nodes, &good, &McPhailConfig::default()).unwrap();
        assert!(rep.pass && rep.carleson_pass);
        assert!((rep.ratio_low - 1.0).abs() < 1e-12 && (rep.ratio_high - 1.0).abs() < 1e-12);

        let wrong: Vec<f64> = z.iter().map(|&x| (1.0 - x).max(1e-300)).collect();
        let rep = mcphail_check(&nodes, &wrong, &McPhailConfig::default()).unwrap();
        assert!(rep.carleson_pass && !rep.pass);
        assert!(rep.ratio_low / rep.ratio_high < 0.05);

        let slow: Vec<f64> = (0..30).map(|k| 1.0 - 1.0 / (k as f64 + 1.0)).collect();
        let slow_nodes =
            DiskSequence::new(slow.iter().map(|&x| DiskPoint::real(x).unwrap()).collect()).unwrap();
        let w: Vec<f64> = slow.iter().map(|&x| (1.0 - x).sqrt()).collect();
        let rep = mcphail_check(&slow_nodes, &w, &McPhailConfig::default()).unwrap();
        assert!(!rep.carleson_pass && !rep.pass);
    }

    #[test]
    fn riesz_single_member_is_trivial() {
        let nodes = DiskSequence::new(vec![DiskPoint::real(0.5).unwrap()]).unwrap();
        let family = KernelFamily::scalar(&nodes, 32).unwrap();
        let rep = riesz_basic_test(&family, 1e4).unwrap();
        assert!((rep.min_eig - 1.0).abs() < 1e-12);
        assert!((rep.max_eig - 1.0).abs() < 1e-12);
        assert!(rep.pass);
    }

    #[test]
    fn riesz_gram_condition_frozen_values() {
        // well-separated geometric nodes: healthy condition number
        let pow3: Vec<DiskPoint> = (0..7)
            .map(|k| DiskPoint::real(1.0 - 3.0f64.powi(-k)).unwrap())
            .collect();
        let family = KernelFamily::scalar(&DiskSequence::new(pow3).unwrap(), 4096).unwrap();
        let rep = riesz_basic_test(&family, 1e4).unwrap();
        assert!(
            (rep.min_eig - 8.099_16e-3).abs() < 1e-7,
            "min {}",
            rep.min_eig
        );
        assert!(
            (rep.condition - 4.934_8e2).abs() < 0.5,
            "cond {}",
            rep.condition
        );
        assert!(rep.pass);

        // crowded nodes: numerically singular Gram
        let slow: Vec<DiskPoint> = (1..=30)
            .map(|k| DiskPoint::real(1.0 - 1.0 / (k as f64 + 1.0)).unwrap())
            .collect();
        let family = KernelFamily::scalar(&DiskSequence::new(slow).unwrap(), 1024).unwrap();
        let rep = riesz_basic_test(&family, 1e4).unwrap();
        assert!(rep.degenerate || rep.condition > 1e6);
        assert!(!rep.pass);
    }

    #[test]
    fn riesz_condition_stable_under_degree_refinement() {
        let expect = [586.53, 584.62, 584.62];
        for (i, degree) in [32usize, 64, 128].into_iter().enumerate() {
            let pts: Vec<DiskPoint> = (0..4)
                .map(|k| DiskPoint::real(1.0 - 0.5f64.powi(k)).unwrap())
                .collect();
            let family = KernelFamily::scalar(&DiskSequence::new(pts).unwrap(), degree).unwrap();
            let rep = riesz_basic_test(&family, 1e4).unwrap();
            assert!(rep.pass);
            assert!(
                (rep.condition - expect[i]).abs() < 0.5,
                "D={degree}: cond {}",
                rep.condition
            );
        }
    }

    #[test]
    fn riesz_eigs_invariant_under_unimodular_scaling() {
        let pts: Vec<DiskPoint> = (0..5)
            .map(|k| DiskPoint::real(1.0 - 0.5f64.powi(k)).unwrap())
            .collect();
        let nodes = DiskSequence::new(pts).unwrap();
        let base = KernelFamily::scalar(&nodes, 64).unwrap();
        let twisted_vectors: Vec<Vec<Complex64>> = (0..5)
            .map(|k| vec![Complex64::from_polar(1.0, 1.1 * k as f64)])
            .collect();
        let twisted = KernelFamily::new(&nodes, twisted_vectors, 64).unwrap();
        let a = riesz_basic_test(&base, 1e4).unwrap();
        let b = riesz_basic_test(&twisted, 1e4).unwrap();
        assert!((a.min_eig - b.min_eig).abs() < 1e-12);
        assert!((a.max_eig - b.max_eig).abs() < 1e-12);
    }

    #[test]
    fn weight_norm_band_values() {
        let pts: Vec<DiskPoint> = [0.0, 0.5, 0.9, 0.99]
            .iter()
            .map(|&x| DiskPoint::real(x).unwrap())
            .collect();
        let nodes = DiskSequence::new(pts.clone()).unwrap();
        // normalized so that ‖g_k‖²(1−|z_k|²) = 1
        let vectors: Vec<Vec<Complex64>> = pts
            .iter()
            .map(|p| {
                let s = (1.0 - p.value().norm_sqr()).sqrt();
                vec![Complex64::new(1.0 / s, 0.0)]
            })
            .collect();
        let family = KernelFamily::new(&nodes, vectors, 16).unwrap();
        let (low, high) = weight_norm_condition(&family);
        assert!((low - 1.0).abs() < 1e-12 && (high - 1.0).abs() < 1e-12);

        // unit vectors: the band collapses toward 0 as nodes approach the circle
        let family = KernelFamily::scalar(&nodes, 16).unwrap();
        let (low, high) = weight_norm_condition(&family);
        assert!((high - 1.0).abs() < 1e-12);
        assert!((low - (1.0 - 0.99f64 * 0.99)).abs() < 1e-12);
    }

    #[test]
    fn degenerate_family_is_rejected() {
        let nodes = DiskSequence::new(vec![
            DiskPoint::real(0.1).unwrap(),
            DiskPoint::real(0.2).unwrap(),
        ])
        .unwrap();
        let vectors = vec![vec![Complex64::ONE], vec![Complex64::ZERO]];
        assert!(matches!(
            KernelFamily::new(&nodes, vectors, 8),
            Err(InterpError::DegenerateFamily(1))
        ));
    }

    #[test]
    fn greedy_partition_splits_interleaved_families() {
        // two copies of a dyadic family, pairwise nearly coincident: no
        // single Carleson sequence contains both
        let mut pts = Vec::new();
        for k in 0..8 {
            let base = 1.0 - 0.5f64.powi(k);
            pts.push(DiskPoint::real(base).unwrap());
            pts.push(DiskPoint::real(base + 0.5f64.powi(k) * 1e-4).unwrap());
        }
        let nodes = DiskSequence::new(pts).unwrap();
        let report = carleson_partition(&nodes, 0.01);
        assert_eq!(report.parts.len(), 2, "parts: {:?}", report.parts);
        assert!(report.heuristic);
        // a single dyadic family needs one part
        let single = DiskSequence::new(
            (0..8)
                .map(|k| DiskPoint::real(1.0 - 0.5f64.powi(k)).unwrap())
                .collect(),
        )
        .unwrap();
        assert_eq!(carleson_partition(&single, 0.01).parts.len(), 1);
    }

    #[test]
    fn problem_input_round_trip() {
        let input = InterpolationProblemInput {
            nodes: vec![[0.0, 0.0], [0.5, 0.0]],
            weights: vec![vec![[1.0, 0.0]], vec![[2.0, 0.0]]],
            targets: vec![[1.0, 0.0], [1.0, 0.0]],
            generator_count: 1,
            degree: 8,
        };
        let (problem, degree) = input.build().unwrap();
        assert_eq!(degree, 8);
        assert_eq!(problem.len(), 2);
        let sol = min_norm_interpolant(&problem, degree).unwrap();
        let n: f64 = sol.coefficients.iter().map(|c| c.norm_sqr()).sum();
        assert!((n - 1.750_011_444_266_422_5).abs() < 1e-12);
    }
}
