//! Cache-free recomputation of the interaction views.
//!
//! Every entropy is rebuilt from raw samples, and dual total correlation is
//! assembled from three explicit conditional entropies
//! `H(X | Y, Z) = H(X, Y, Z) - H(Y, Z)` instead of the pair-sum shortcut.

use crate::error::Result;
use crate::kernel::{entropy, gram, joint_entropy, KernelParams};
use crate::signal::Recording;

fn h1(rec: &Recording, p: KernelParams, i: usize) -> Result<f64> {
    Ok(entropy(&gram(rec.channel(i), p.sigma())?, p.alpha())?.bits())
}

fn h2(rec: &Recording, p: KernelParams, i: usize, j: usize) -> Result<f64> {
    let a = gram(rec.channel(i), p.sigma())?;
    let b = gram(rec.channel(j), p.sigma())?;
    Ok(joint_entropy(&[&a, &b], p.alpha())?.bits())
}

fn h3(rec: &Recording, p: KernelParams, i: usize, j: usize, k: usize) -> Result<f64> {
    let a = gram(rec.channel(i), p.sigma())?;
    let b = gram(rec.channel(j), p.sigma())?;
    let c = gram(rec.channel(k), p.sigma())?;
    Ok(joint_entropy(&[&a, &b, &c], p.alpha())?.bits())
}

pub fn mutual_information(rec: &Recording, p: KernelParams, i: usize, j: usize) -> Result<f64> {
    Ok(h1(rec, p, i)? + h1(rec, p, j)? - h2(rec, p, i, j)?)
}

/// Row-major `C x C` mutual-information matrix with `H(X_i)` on the diagonal.
pub fn pairwise_matrix(rec: &Recording, p: KernelParams) -> Result<Vec<f64>> {
    let c = rec.channels();
    let mut out = vec![0.0; c * c];
    for i in 0..c {
        for j in 0..c {
            out[i * c + j] = if i == j {
                h1(rec, p, i)?
            } else {
                mutual_information(rec, p, i, j)?
            };
        }
    }
    Ok(out)
}

/// `(tc, dtc, o)` for one triplet.
pub fn triplet(rec: &Recording, p: KernelParams, i: usize, j: usize, k: usize) -> Result<(f64, f64, f64)> {
    let joint = h3(rec, p, i, j, k)?;
    let tc = h1(rec, p, i)? + h1(rec, p, j)? + h1(rec, p, k)? - joint;
    let cond_i = joint - h2(rec, p, j, k)?;
    let cond_j = joint - h2(rec, p, i, k)?;
    let cond_k = joint - h2(rec, p, i, j)?;
    let dtc = joint - cond_i - cond_j - cond_k;
    Ok((tc, dtc, tc - dtc))
}
