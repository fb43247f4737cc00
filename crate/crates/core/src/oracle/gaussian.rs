//! Closed-form Shannon quantities for 2- and 3-dimensional Gaussian systems,
//! and a seeded sampler for them.
//!
//! Sampling uses ChaCha8 seeded through `seed_from_u64`, standard normals from
//! `rand_distr::StandardNormal`, drawn timepoint by timepoint with the
//! dimension index innermost, then colored by the lower Cholesky factor.

use nalgebra::{Cholesky, DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{HoiError, Result};
use crate::signal::Recording;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSystem {
    covariance: DMatrix<f64>,
}

impl GaussianSystem {
    pub fn new(covariance: DMatrix<f64>) -> Result<Self> {
        let dim = covariance.nrows();
        if !(2..=3).contains(&dim) || covariance.ncols() != dim {
            return Err(HoiError::Shape(format!(
                "Gaussian system must be 2x2 or 3x3, got {}x{}",
                covariance.nrows(),
                covariance.ncols()
            )));
        }
        for i in 0..dim {
            for j in 0..i {
                if (covariance[(i, j)] - covariance[(j, i)]).abs() > 1e-12 {
                    return Err(HoiError::Shape("covariance is not symmetric".into()));
                }
            }
        }
        if Cholesky::new(covariance.clone()).is_none() {
            return Err(HoiError::SingularCovariance);
        }
        Ok(GaussianSystem { covariance })
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(HoiError::Shape("covariance rows must form a square".into()));
        }
        Self::new(DMatrix::from_fn(dim, dim, |i, j| rows[i][j]))
    }

    /// Unit-variance system with the given pairwise correlations
    /// `(r01, r02, r12)`.
    pub fn correlated_triple(r01: f64, r02: f64, r12: f64) -> Result<Self> {
        Self::from_rows(&[&[1.0, r01, r02], &[r01, 1.0, r12], &[r02, r12, 1.0]])
    }

    pub fn dim(&self) -> usize {
        self.covariance.nrows()
    }

    pub fn covariance(&self) -> &DMatrix<f64> {
        &self.covariance
    }

    fn sub_covariance(&self, subset: &[usize]) -> Result<DMatrix<f64>> {
        if subset.is_empty() {
            return Err(HoiError::Index("empty variable subset".into()));
        }
        let dim = self.dim();
        for (n, &i) in subset.iter().enumerate() {
            if i >= dim || subset[..n].contains(&i) {
                return Err(HoiError::Index(format!("invalid subset {subset:?} for dim {dim}")));
            }
        }
        let k = subset.len();
        Ok(DMatrix::from_fn(k, k, |a, b| self.covariance[(subset[a], subset[b])]))
    }

    /// `log2 det` of the covariance restricted to `subset`.
    fn log2_det(&self, subset: &[usize]) -> Result<f64> {
        let sub = self.sub_covariance(subset)?;
        let chol = Cholesky::new(sub).ok_or(HoiError::SingularCovariance)?;
        Ok(2.0 * chol.l_dirty().diagonal().iter().map(|d| d.log2()).sum::<f64>())
    }
}

/// Differential entropy `(1/2) log2((2 pi e)^|s| det Sigma_s)` in bits.
pub fn gaussian_entropy(sys: &GaussianSystem, subset: &[usize]) -> Result<f64> {
    let log_det = sys.log2_det(subset)?;
    let k = subset.len() as f64;
    Ok(0.5 * (k * (2.0 * std::f64::consts::PI * std::f64::consts::E).log2() + log_det))
}

/// Shannon O-information of a 3-dimensional system, in bits.
///
/// Evaluated in co-information form on log-determinants only; the
/// `(2 pi e)` constants cancel (3 - 6 + 3 = 0) and are left out.
pub fn gaussian_oinfo(sys: &GaussianSystem) -> Result<f64> {
    if sys.dim() != 3 {
        return Err(HoiError::Shape(format!(
            "O-information needs a 3-dimensional system, got {}",
            sys.dim()
        )));
    }
    let singles = sys.log2_det(&[0])? + sys.log2_det(&[1])? + sys.log2_det(&[2])?;
    let pairs = sys.log2_det(&[0, 1])? + sys.log2_det(&[0, 2])? + sys.log2_det(&[1, 2])?;
    let triple = sys.log2_det(&[0, 1, 2])?;
    Ok(0.5 * (singles - pairs + triple))
}

/// `timepoints` i.i.d. draws from `N(0, Sigma)` as a `dim x timepoints` recording.
pub fn sample_gaussian(sys: &GaussianSystem, timepoints: usize, seed: u64) -> Result<Recording> {
    if timepoints < 2 {
        return Err(HoiError::TooFewSamples(timepoints));
    }
    let dim = sys.dim();
    let chol = Cholesky::new(sys.covariance.clone()).ok_or(HoiError::SingularCovariance)?;
    let l = chol.l();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = vec![0.0; dim * timepoints];
    let mut z = DVector::zeros(dim);
    for t in 0..timepoints {
        for d in 0..dim {
            z[d] = StandardNormal.sample(&mut rng);
        }
        let x = &l * &z;
        for d in 0..dim {
            data[d * timepoints + t] = x[d];
        }
    }
    Recording::new(format!("gaussian-{seed}"), dim, timepoints, data)
}
