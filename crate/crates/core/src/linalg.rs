//! Dense linear algebra used by the frame computations.
//!
//! Thin wrappers around nalgebra that pin down the conventions the rest of
//! the crate relies on: eigenvalues of Hermitian matrices come back sorted
//! ascending, rank decisions are made against an explicit tolerance, and
//! least-norm solves go through a column-pivoted QR factorization so the
//! result is deterministic (pivot ties break toward the lowest column index).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

/// Largest Hermitian eigenproblem accepted; everything here is desk-scale.
pub const MAX_EIGEN_DIM: usize = 4096;

/// Entrywise tolerance for accepting a matrix as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Condition-estimate threshold beyond which least-norm solves are refused.
pub const ILL_CONDITION_LIMIT: f64 = 1e12;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("dimension {0} exceeds the supported maximum {MAX_EIGEN_DIM}")]
    DimensionTooLarge(usize),
    #[error("matrix is not Hermitian: max |S - S^*| entry = {0:.3e}")]
    NotHermitian(f64),
    #[error("system is rank deficient: numerical rank {rank} < {rows} constraints")]
    RankDeficient { rank: usize, rows: usize },
    #[error("system too ill-conditioned: estimate {0:.3e} exceeds {ILL_CONDITION_LIMIT:.0e}")]
    IllConditioned(f64),
    #[error("more constraints ({rows}) than unknowns ({cols}) in a least-norm solve")]
    Overdetermined { rows: usize, cols: usize },
    #[error("eigenvalue iteration failed to converge")]
    NoConvergence,
}

/// Eigenvalues (ascending) and matching eigenvectors of a Hermitian matrix.
///
/// The input is checked against [`HERMITIAN_TOL`] and then explicitly
/// symmetrized, so tiny accumulation noise cannot leak into the result.
pub fn hermitian_eigen_ascending(
    s: &DMatrix<Complex64>,
) -> Result<(Vec<f64>, DMatrix<Complex64>), LinalgError> {
    if s.nrows() != s.ncols() {
        return Err(LinalgError::NotSquare(s.nrows(), s.ncols()));
    }
    let n = s.nrows();
    if n > MAX_EIGEN_DIM {
        return Err(LinalgError::DimensionTooLarge(n));
    }
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            dev = dev.max((s[(i, j)] - s[(j, i)].conj()).norm());
        }
    }
    let scale = s.iter().map(|e| e.norm()).fold(0.0f64, f64::max).max(1.0);
    if dev > HERMITIAN_TOL * scale {
        return Err(LinalgError::NotHermitian(dev));
    }
    let sym = (s + s.adjoint()) * Complex64::new(0.5, 0.0);
    let decomp = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| decomp.eigenvalues[i].total_cmp(&decomp.eigenvalues[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| decomp.eigenvalues[i]).collect();
    let mut vectors = DMatrix::<Complex64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &decomp.eigenvectors.column(src));
    }
    Ok((eigenvalues, vectors))
}

/// Extremal eigenvalues `(min, max)` of a Hermitian matrix.
pub fn hermitian_extremal_eigenvalues(s: &DMatrix<Complex64>) -> Result<(f64, f64), LinalgError> {
    let (vals, _) = hermitian_eigen_ascending(s)?;
    Ok((vals[0], *vals.last().expect("non-empty spectrum")))
}

/// Spectral norm (largest singular value).
pub fn operator_norm(a: &DMatrix<Complex64>) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    let svd = a.clone().svd(false, false);
    svd.singular_values
        .iter()
        .fold(0.0f64, |acc, &s| acc.max(s))
}

/// Numerical rank: singular values above `rel_tol * sigma_max`.
pub fn numerical_rank(a: &DMatrix<Complex64>, rel_tol: f64) -> usize {
    if a.is_empty() {
        return 0;
    }
    let svd = a.clone().svd(false, false);
    let smax = svd
        .singular_values
        .iter()
        .fold(0.0f64, |acc, &s| acc.max(s));
    if smax == 0.0 {
        return 0;
    }
    svd.singular_values
        .iter()
        .filter(|&&s| s > rel_tol * smax)
        .count()
}

/// Eigenvalues of a general (small) complex matrix via Schur iteration.
pub fn eigenvalues_general(a: &DMatrix<Complex64>) -> Result<Vec<Complex64>, LinalgError> {
    if a.nrows() != a.ncols() {
        return Err(LinalgError::NotSquare(a.nrows(), a.ncols()));
    }
    let schur = nalgebra::linalg::Schur::try_new(a.clone(), 1.0e-14, 100_000)
        .ok_or(LinalgError::NoConvergence)?;
    let (_, t) = schur.unpack();
    Ok((0..a.nrows()).map(|i| t[(i, i)]).collect())
}

/// Solution report for an underdetermined least-norm solve.
#[derive(Debug, Clone)]
pub struct LeastNormSolution {
    /// Minimum-norm solution of `A x = b`.
    pub x: DVector<Complex64>,
    /// Relative residual `|A x - b| / max(|b|, 1)`.
    pub residual: f64,
    /// Ratio of extreme `R` diagonal magnitudes from the pivoted QR.
    pub condition_estimate: f64,
}

/// Minimum-norm solution of the underdetermined system `A x = b`.
///
/// Factors `A^* P = Q R` with column pivoting (so the constraints are
/// reordered by magnitude, ties toward the lowest index), solves the
/// triangular system and maps back through `Q`. One step of iterative
/// refinement recovers the accuracy lost on poorly scaled rows.
pub fn least_norm_solve(
    a: &DMatrix<Complex64>,
    b: &DVector<Complex64>,
) -> Result<LeastNormSolution, LinalgError> {
    let (m, n) = (a.nrows(), a.ncols());
    if m > n {
        return Err(LinalgError::Overdetermined { rows: m, cols: n });
    }
    let qr = a.adjoint().col_piv_qr();
    let q = qr.q();
    let r = qr.r();
    let p = qr.p();

    let rdiag: Vec<f64> = (0..m).map(|i| r[(i, i)].norm()).collect();
    let rmax = rdiag.iter().fold(0.0f64, |acc, &v| acc.max(v));
    let rank = rdiag
        .iter()
        .filter(|&&v| v > 1e-14 * rmax.max(1e-300))
        .count();
    if rank < m {
        return Err(LinalgError::RankDeficient { rank, rows: m });
    }
    let rmin = rdiag.iter().fold(f64::INFINITY, |acc, &v| acc.min(v));
    let condition_estimate = rmax / rmin;
    if condition_estimate > ILL_CONDITION_LIMIT {
        return Err(LinalgError::IllConditioned(condition_estimate));
    }

    let solve_once = |rhs: &DVector<Complex64>| -> DVector<Complex64> {
        // permute the constraints the same way the pivoting permuted columns
        let mut pb = rhs.clone();
        p.permute_rows(&mut pb);
        // forward-substitute R^* y = P^T b (R^* is lower triangular)
        let mut y = DVector::<Complex64>::zeros(m);
        for i in 0..m {
            let mut acc = pb[i];
            for j in 0..i {
                acc -= r[(j, i)].conj() * y[j];
            }
            y[i] = acc / r[(i, i)].conj();
        }
        &q * y
    };

    let mut x = solve_once(b);
    // one refinement pass against the original system
    let resid = b - a * &x;
    x += solve_once(&resid);

    let residual = (b - a * &x).norm() / b.norm().max(1.0);
    Ok(LeastNormSolution {
        x,
        residual,
        condition_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigenvalues_are_sorted_and_accurate() {
        // diag(3, 1, 2) conjugated by nothing: eigenvalues ascend as 1, 2, 3
        let s = DMatrix::from_diagonal(&DVector::from_vec(vec![
            c(3.0, 0.0),
            c(1.0, 0.0),
            c(2.0, 0.0),
        ]));
        let (vals, vecs) = hermitian_eigen_ascending(&s).unwrap();
        assert_eq!(vals.len(), 3);
        assert!(vals[0] <= vals[1] && vals[1] <= vals[2]);
        assert!((vals[0] - 1.0).abs() < 1e-14);
        assert!((vals[2] - 3.0).abs() < 1e-14);
        // residual check against the original matrix
        for (k, &lam) in vals.iter().enumerate() {
            let v = vecs.column(k).into_owned();
            let r = &s * &v - &v * c(lam, 0.0);
            assert!(r.norm() < 1e-12, "eigenpair {k} residual {}", r.norm());
        }
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let s =
            DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            hermitian_eigen_ascending(&s),
            Err(LinalgError::NotHermitian(_))
        ));
    }

    #[test]
    fn hermitian_off_diagonals_are_accepted() {
        let s =
            DMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.3, 0.4), c(0.3, -0.4), c(1.0, 0.0)]);
        let (vals, _) = hermitian_eigen_ascending(&s).unwrap();
        // trace and determinant pin the two eigenvalues
        assert!((vals[0] + vals[1] - 3.0).abs() < 1e-12);
        assert!((vals[0] * vals[1] - (2.0 - 0.25)).abs() < 1e-12);
    }

    #[test]
    fn least_norm_matches_the_normal_equation_route() {
        // A: 2x4 full row rank; min-norm solution is A^*(AA^*)^{-1} b
        let a = DMatrix::from_row_slice(
            2,
            4,
            &[
                c(1.0, 0.0),
                c(0.0, 1.0),
                c(0.5, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
                c(0.0, -0.5),
                c(2.0, 0.0),
            ],
        );
        let b = DVector::from_vec(vec![c(1.0, 1.0), c(-1.0, 0.0)]);
        let sol = least_norm_solve(&a, &b).unwrap();
        assert!(sol.residual < 1e-14);
        let gram = &a * a.adjoint();
        let y = gram.lu().solve(&b).unwrap();
        let x_ref = a.adjoint() * y;
        assert!((&sol.x - &x_ref).norm() < 1e-12);
    }

    #[test]
    fn duplicated_constraints_are_rank_deficient() {
        let a = DMatrix::from_row_slice(
            2,
            3,
            &[
                c(1.0, 0.0),
                c(2.0, 0.0),
                c(3.0, 0.0),
                c(1.0, 0.0),
                c(2.0, 0.0),
                c(3.0, 0.0),
            ],
        );
        let b = DVector::from_vec(vec![c(1.0, 0.0), c(2.0, 0.0)]);
        assert!(matches!(
            least_norm_solve(&a, &b),
            Err(LinalgError::RankDeficient { rank: 1, rows: 2 })
        ));
    }

    #[test]
    fn general_eigenvalues_handle_defective_matrices() {
        // Jordan block at 0.5 plus a separate eigenvalue
        let a = DMatrix::from_row_slice(
            3,
            3,
            &[
                c(0.5, 0.0),
                c(1.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.5, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.3, 0.2),
            ],
        );
        let mut ev = eigenvalues_general(&a).unwrap();
        ev.sort_by(|x, y| x.re.total_cmp(&y.re));
        assert!((ev[0] - c(0.3, 0.2)).norm() < 1e-10);
        // the defective pair may split by ~sqrt(eps); its centroid is stable
        let centroid = (ev[1] + ev[2]) / 2.0;
        assert!((centroid - c(0.5, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn numerical_rank_sees_through_tiny_singular_values() {
        let mut a = DMatrix::<Complex64>::zeros(3, 3);
        a[(0, 0)] = c(1.0, 0.0);
        a[(1, 1)] = c(1e-20, 0.0);
        assert_eq!(numerical_rank(&a, 1e-12), 1);
    }
}
