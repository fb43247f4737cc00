#![allow(dead_code)]

use hoi_core::{standardize, Recording};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normals(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

pub fn standardized(rows: &[Vec<f64>]) -> Recording {
    standardize(&Recording::from_channels("synthetic", rows).unwrap()).unwrap()
}

/// `c` independent standard-normal channels.
pub fn random_recording(c: usize, t: usize, seed: u64) -> Recording {
    let mut r = rng(seed);
    let rows: Vec<Vec<f64>> = (0..c).map(|_| normals(&mut r, t)).collect();
    standardized(&rows)
}

/// Channels built from a few shared sources so that the views carry structure.
pub fn structured_recording(c: usize, t: usize, seed: u64) -> Recording {
    let mut r = rng(seed);
    let sources: Vec<Vec<f64>> = (0..3).map(|_| normals(&mut r, t)).collect();
    let rows: Vec<Vec<f64>> = (0..c)
        .map(|ch| {
            let w: f64 = r.random_range(0.0..0.9);
            let noise = normals(&mut r, t);
            let src = &sources[ch % 3];
            src.iter()
                .zip(&noise)
                .map(|(s, e)| w.sqrt() * s + (1.0 - w).sqrt() * e + 0.2 * (s * e).tanh())
                .collect()
        })
        .collect();
    standardized(&rows)
}

/// Three jittered copies of one Gaussian source.
pub fn redundant_triplet(t: usize, seed: u64) -> Recording {
    let mut r = rng(seed);
    let x = normals(&mut r, t);
    let rows: Vec<Vec<f64>> = (0..3)
        .map(|_| {
            let jitter = normals(&mut r, t);
            x.iter().zip(&jitter).map(|(a, e)| a + 1e-6 * e).collect()
        })
        .collect();
    standardized(&rows)
}

/// `(B1, B2, B1 XOR B2)` with `B` uniform on {-1, +1}; XOR is the product.
pub fn xor_triplet(t: usize, seed: u64) -> Recording {
    let mut r = rng(seed);
    let sign = |r: &mut ChaCha8Rng| if r.random::<bool>() { 1.0 } else { -1.0 };
    let b1: Vec<f64> = (0..t).map(|_| sign(&mut r)).collect();
    let b2: Vec<f64> = (0..t).map(|_| sign(&mut r)).collect();
    let b3: Vec<f64> = b1.iter().zip(&b2).map(|(a, b)| a * b).collect();
    standardized(&[b1, b2, b3])
}

pub fn independent_triplet(t: usize, seed: u64) -> Recording {
    random_recording(3, t, seed)
}

/// Fisher-Yates permutation of `0..n`.
pub fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut r = rng(seed);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, r.random_range(0..=i));
    }
    order
}
