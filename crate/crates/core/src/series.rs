//! Truncated power series on the unit disc.
//!
//! Analytic functions are represented by their Taylor coefficients up to a
//! degree cutoff. Coefficient vectors of length `cutoff + 1` stand for the
//! section `a_0 + a_1 z + ... + a_cutoff z^cutoff`. Truncated multiplication
//! returns the *exact* leading coefficients of the product: coefficients of
//! degree <= cutoff never depend on the discarded tail.

use num_complex::Complex64;

/// A Hardy-space function truncated at a degree cutoff.
///
/// The inner product is the Hardy pairing `<f, g> = sum_k f_k conj(g_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedHardyFunction {
    coeffs: Vec<Complex64>,
}

impl TruncatedHardyFunction {
    /// Wraps a coefficient vector `a_0, a_1, ...` (must be non-empty).
    pub fn new(coeffs: Vec<Complex64>) -> Option<Self> {
        if coeffs.is_empty()
            || coeffs
                .iter()
                .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return None;
        }
        Some(Self { coeffs })
    }

    /// The constant function 1 on a section of the given cutoff.
    pub fn one(cutoff: usize) -> Self {
        let mut coeffs = vec![Complex64::ZERO; cutoff + 1];
        coeffs[0] = Complex64::ONE;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn norm(&self) -> f64 {
        norm(&self.coeffs)
    }

    /// Evaluates the section at a point by Horner's rule.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        eval(&self.coeffs, z)
    }
}

/// First `cutoff + 1` coefficients of the product of two coefficient vectors.
pub fn trunc_mul(a: &[Complex64], b: &[Complex64], cutoff: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; cutoff + 1];
    for (i, &ai) in a.iter().enumerate().take(cutoff + 1) {
        if ai == Complex64::ZERO {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(cutoff + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Geometric series `1, r, r^2, ..., r^cutoff`.
pub fn geometric(r: Complex64, cutoff: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(cutoff + 1);
    let mut cur = Complex64::ONE;
    for _ in 0..=cutoff {
        out.push(cur);
        cur *= r;
    }
    out
}

/// Hardy inner product `sum_k a_k conj(b_k)` over the common length.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum()
}

pub fn norm_sq(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum()
}

pub fn norm(a: &[Complex64]) -> f64 {
    norm_sq(a).sqrt()
}

/// Coefficients of `z^n * f` on the same section (top coefficients drop off).
pub fn shift_up(a: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; a.len()];
    if n < a.len() {
        out[n..].copy_from_slice(&a[..a.len() - n]);
    }
    out
}

/// Horner evaluation of a coefficient vector at `z`.
pub fn eval(a: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::ZERO;
    for &c in a.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Integer power of a complex number by binary exponentiation.
pub fn powu(base: Complex64, mut exp: u64) -> Complex64 {
    let mut acc = Complex64::ONE;
    let mut cur = base;
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= cur;
        }
        cur *= cur;
        exp >>= 1;
    }
    acc
}

/// Taylor coefficients of the Moebius factor `(|a|/a)(a - z)/(1 - conj(a) z)`
/// to the cutoff; the factor for `a = 0` is `z` itself.
pub fn blaschke_factor_series(a: Complex64, cutoff: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; cutoff + 1];
    if a == Complex64::ZERO {
        if cutoff >= 1 {
            out[1] = Complex64::ONE;
        }
        return out;
    }
    let g = geometric(a.conj(), cutoff);
    let rot = Complex64::new(a.norm(), 0.0) / a;
    for k in 0..=cutoff {
        let mut v = a * g[k];
        if k >= 1 {
            v -= g[k - 1];
        }
        out[k] = rot * v;
    }
    out
}
