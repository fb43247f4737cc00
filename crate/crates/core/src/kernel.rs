//! Normalized Gaussian Gram matrices and the matrix-based Renyi alpha-order
//! entropy functional evaluated on their spectra.
//!
//! For a channel with samples `x_1..x_n` the Gram matrix is
//!
//! ```text
//! K_ij = exp(-(x_i - x_j)^2 / (2 sigma^2))
//! A_ij = K_ij / (n * sqrt(K_ii K_jj))      (= K_ij / n for the Gaussian kernel)
//! ```
//!
//! `A` is symmetric positive semidefinite with unit trace, so its eigenvalues
//! form a probability-like spectrum, and the entropy of order `alpha` is
//!
//! ```text
//! S_alpha(A) = log2(sum_i lambda_i^alpha) / (1 - alpha)
//! ```
//!
//! Joint entropies use the Hadamard product of the marginal Grams, rescaled
//! back to unit trace.

use nalgebra::DMatrix;

use crate::error::{HoiError, Result};

/// Kernel width and Renyi order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    sigma: f64,
    alpha: f64,
}

impl KernelParams {
    pub const DEFAULT_SIGMA: f64 = 5.0;
    pub const DEFAULT_ALPHA: f64 = 1.01;

    pub fn new(sigma: f64, alpha: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(HoiError::InvalidParams(format!(
                "sigma must be positive and finite, got {sigma}"
            )));
        }
        validate_alpha(alpha)?;
        Ok(KernelParams { sigma, alpha })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl Default for KernelParams {
    fn default() -> Self {
        KernelParams {
            sigma: Self::DEFAULT_SIGMA,
            alpha: Self::DEFAULT_ALPHA,
        }
    }
}

fn validate_alpha(alpha: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha > 0.0 && (alpha - 1.0).abs() > 1e-6) {
        return Err(HoiError::InvalidParams(format!(
            "alpha must be positive and away from 1, got {alpha}"
        )));
    }
    Ok(())
}

/// Entropy in bits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct EntropyValue(f64);

impl EntropyValue {
    /// Clamps to `[0, log2 n]`; a zero result is always `+0.0`.
    fn clamped(bits: f64, n: usize) -> Self {
        let max = (n as f64).log2();
        EntropyValue(if bits > 0.0 { bits.min(max) } else { 0.0 })
    }

    pub fn bits(self) -> f64 {
        self.0
    }
}

impl From<EntropyValue> for f64 {
    fn from(v: EntropyValue) -> f64 {
        v.0
    }
}

/// A symmetric, unit-trace, positive semidefinite `n x n` kernel matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedGram {
    matrix: DMatrix<f64>,
}

impl NormalizedGram {
    /// Wraps an arbitrary square matrix after checking symmetry and trace.
    /// Positive semidefiniteness is not checked here; see [`spectrum`].
    pub fn from_matrix(matrix: DMatrix<f64>) -> Result<Self> {
        let n = matrix.nrows();
        if n != matrix.ncols() || n < 2 {
            return Err(HoiError::Shape(format!(
                "Gram matrix must be square with n >= 2, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(HoiError::Numerical("non-finite Gram entry".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if matrix[(i, j)] != matrix[(j, i)] {
                    return Err(HoiError::Shape(format!("Gram matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        if (matrix.trace() - 1.0).abs() > 1e-9 {
            return Err(HoiError::Shape(format!(
                "Gram matrix trace is {}, expected 1",
                matrix.trace()
            )));
        }
        Ok(NormalizedGram { matrix })
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }

    /// Applies the same permutation to rows and columns.
    pub fn permute_samples(&self, order: &[usize]) -> Result<Self> {
        let n = self.n();
        if order.len() != n || order.iter().any(|&i| i >= n) {
            return Err(HoiError::Index(format!("{order:?} is not a permutation of {n}")));
        }
        let matrix = DMatrix::from_fn(n, n, |i, j| self.matrix[(order[i], order[j])]);
        Ok(NormalizedGram { matrix })
    }
}

/// Gaussian Gram matrix of one channel, normalized to unit trace.
pub fn gram(samples: &[f64], sigma: f64) -> Result<NormalizedGram> {
    let n = samples.len();
    if n < 2 {
        return Err(HoiError::TooFewSamples(n));
    }
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(HoiError::InvalidParams(format!("sigma must be positive, got {sigma}")));
    }
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(HoiError::Numerical("non-finite sample".into()));
    }
    let inv_n = 1.0 / n as f64;
    let mut matrix = DMatrix::zeros(n, n);
    for i in 0..n {
        // K_ii = 1, so the cosine normalization leaves only the 1/n factor.
        matrix[(i, i)] = inv_n;
        for j in 0..i {
            let u = (samples[i] - samples[j]) / sigma;
            let v = (-0.5 * u * u).exp() * inv_n;
            matrix[(i, j)] = v;
            matrix[(j, i)] = v;
        }
    }
    Ok(NormalizedGram { matrix })
}

/// Hadamard product of two or three Grams, rescaled to unit trace.
///
/// Three-way products multiply each cell's factors in ascending order, so the
/// result does not depend on the order in which the Grams are passed.
pub fn joint_gram(grams: &[&NormalizedGram]) -> Result<NormalizedGram> {
    let n = match grams.first() {
        Some(g) => g.n(),
        None => return Err(HoiError::Shape("joint_gram needs 2 or 3 Grams, got 0".into())),
    };
    if let Some(bad) = grams.iter().find(|g| g.n() != n) {
        return Err(HoiError::Shape(format!(
            "cannot join Grams of size {n} and {}",
            bad.n()
        )));
    }
    let mut product = match grams {
        [a, b] => a.matrix.component_mul(&b.matrix),
        [a, b, c] => {
            let (a, b, c) = (a.matrix.as_slice(), b.matrix.as_slice(), c.matrix.as_slice());
            let data = a
                .iter()
                .zip(b)
                .zip(c)
                .map(|((&x, &y), &z)| {
                    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
                    let (lo, mid, hi) = if z <= lo {
                        (z, lo, hi)
                    } else if z <= hi {
                        (lo, z, hi)
                    } else {
                        (lo, hi, z)
                    };
                    lo * mid * hi
                })
                .collect();
            DMatrix::from_vec(n, n, data)
        }
        _ => {
            return Err(HoiError::Shape(format!(
                "joint_gram needs 2 or 3 Grams, got {}",
                grams.len()
            )))
        }
    };
    let trace = product.trace();
    if !(trace > 0.0 && trace.is_finite()) {
        return Err(HoiError::Numerical(format!("joint Gram trace is {trace}")));
    }
    product.unscale_mut(trace);
    Ok(NormalizedGram { matrix: product })
}

/// Eigenvalues of a Gram matrix in ascending order.
pub fn spectrum(gram: &NormalizedGram) -> Result<Vec<f64>> {
    spectrum_owned(gram.clone())
}

fn spectrum_owned(gram: NormalizedGram) -> Result<Vec<f64>> {
    let eig = gram.matrix.symmetric_eigenvalues();
    if eig.iter().any(|v| !v.is_finite()) {
        return Err(HoiError::Numerical("symmetric eigensolver produced non-finite values".into()));
    }
    let mut values: Vec<f64> = eig.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Renyi entropy of order `alpha` from an already-computed spectrum of an
/// `n x n` Gram.
pub fn entropy_from_spectrum(eigenvalues: &[f64], alpha: f64) -> Result<EntropyValue> {
    validate_alpha(alpha)?;
    let n = eigenvalues.len();
    let power_sum: f64 = eigenvalues
        .iter()
        .map(|&l| l.clamp(0.0, 1.0).powf(alpha))
        .sum();
    if !(power_sum > 0.0) {
        return Err(HoiError::Numerical("spectrum has no positive mass".into()));
    }
    let bits = power_sum.log2() / (1.0 - alpha);
    Ok(EntropyValue::clamped(bits, n))
}

/// Matrix-based Renyi entropy `S_alpha(A)` in bits.
pub fn entropy(gram: &NormalizedGram, alpha: f64) -> Result<EntropyValue> {
    entropy_owned(gram.clone(), alpha)
}

/// As [`entropy`], consuming the Gram to avoid a copy before the eigensolver.
pub fn entropy_owned(gram: NormalizedGram, alpha: f64) -> Result<EntropyValue> {
    validate_alpha(alpha)?;
    let eigenvalues = spectrum_owned(gram)?;
    entropy_from_spectrum(&eigenvalues, alpha)
}

/// Order-2 entropy through `tr(A^2) = sum_ij A_ij^2`; needs no eigensolver.
pub fn entropy_order2(gram: &NormalizedGram) -> EntropyValue {
    let frob = gram.matrix.iter().map(|v| v * v).sum::<f64>();
    EntropyValue::clamped(-frob.log2(), gram.n())
}

pub fn joint_entropy(grams: &[&NormalizedGram], alpha: f64) -> Result<EntropyValue> {
    entropy_owned(joint_gram(grams)?, alpha)
}
