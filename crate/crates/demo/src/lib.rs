//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each exported function builds a small synthetic recording from a seed,
//! runs the estimator on it and hands flat `Float64Array`s back to the page.

use hoi_core::{
    build_cache, entropy, gram, oinfo_tensor, pairwise_view, pearson_view, standardize,
    triplet_o_information, KernelParams, Recording,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use wasm_bindgen::prelude::*;

pub const MAX_CHANNELS: usize = 24;
pub const MAX_TIMEPOINTS: usize = 600;

fn js(err: hoi_core::HoiError) -> JsError {
    JsError::new(&err.to_string())
}

fn check_size(channels: usize, timepoints: usize) -> hoi_core::Result<()> {
    if channels > MAX_CHANNELS || timepoints > MAX_TIMEPOINTS {
        return Err(hoi_core::HoiError::Shape(format!(
            "demo is limited to {MAX_CHANNELS} channels and {MAX_TIMEPOINTS} timepoints"
        )));
    }
    Ok(())
}

fn normals(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

fn signs(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }).collect()
}

/// Entropy of one standardized Gaussian channel for `steps` kernel widths
/// spaced logarithmically between `sigma_min` and `sigma_max`.
/// Returns `[sigma_0, H_0, sigma_1, H_1, ...]`.
pub fn entropy_curve_values(
    timepoints: usize,
    sigma_min: f64,
    sigma_max: f64,
    steps: usize,
    alpha: f64,
    seed: u64,
) -> hoi_core::Result<Vec<f64>> {
    check_size(1, timepoints)?;
    KernelParams::new(sigma_min, alpha)?;
    KernelParams::new(sigma_max, alpha)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = Recording::new("curve", 1, timepoints, normals(&mut rng, timepoints))?;
    let rec = standardize(&raw)?;
    let steps = steps.max(2);
    let (lo, hi) = (sigma_min.ln(), sigma_max.ln());
    let mut out = Vec::with_capacity(2 * steps);
    for s in 0..steps {
        let sigma = (lo + (hi - lo) * s as f64 / (steps - 1) as f64).exp();
        let h = entropy(&gram(rec.channel(0), sigma)?, alpha)?;
        out.extend([sigma, h.bits()]);
    }
    Ok(out)
}

/// Three channels mixing a shared Gaussian source (weight `coupling`) with an
/// XOR pattern of two binary drivers (weight `synergy` on the third channel).
/// Returns `[tc, dtc, o, h_ijk]`.
pub fn triplet_values(
    coupling: f64,
    synergy: f64,
    timepoints: usize,
    sigma: f64,
    alpha: f64,
    seed: u64,
) -> hoi_core::Result<Vec<f64>> {
    check_size(3, timepoints)?;
    let params = KernelParams::new(sigma, alpha)?;
    let c = coupling.clamp(0.0, 1.0);
    let w = synergy.clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let source = normals(&mut rng, timepoints);
    let b1 = signs(&mut rng, timepoints);
    let b2 = signs(&mut rng, timepoints);
    let noise = normals(&mut rng, timepoints);
    let mix = |own: &[f64]| -> Vec<f64> {
        source
            .iter()
            .zip(own)
            .map(|(s, o)| c.sqrt() * s + (1.0 - c).sqrt() * o)
            .collect()
    };
    let third: Vec<f64> = b1
        .iter()
        .zip(&b2)
        .zip(&noise)
        .map(|((x, y), e)| w * x * y + (1.0 - w * w).sqrt() * e)
        .collect();
    let raw = Recording::from_channels("triplet", &[mix(&b1), mix(&b2), mix(&third)])?;
    let cache = build_cache(&standardize(&raw)?, params)?;
    let b = triplet_o_information(&cache, 0, 1, 2)?;
    Ok(vec![b.tc, b.dtc, b.o, b.triple_joint.bits()])
}

/// Views of a synthetic recording made of 3-channel modules. Even modules
/// share one source (redundant), odd modules follow `(B1, B2, B1 XOR B2)`
/// (synergistic). `coupling` sets the structured share of each channel.
pub fn synthetic_modules(
    channels: usize,
    timepoints: usize,
    coupling: f64,
    seed: u64,
) -> hoi_core::Result<Recording> {
    check_size(channels, timepoints)?;
    let c = coupling.clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(channels);
    for module in 0..channels.div_ceil(3) {
        let members = (channels - 3 * module).min(3);
        let signal: Vec<Vec<f64>> = if module % 2 == 0 {
            let s = normals(&mut rng, timepoints);
            vec![s.clone(), s.clone(), s]
        } else {
            let b1 = signs(&mut rng, timepoints);
            let b2 = signs(&mut rng, timepoints);
            let b3 = b1.iter().zip(&b2).map(|(x, y)| x * y).collect();
            vec![b1, b2, b3]
        };
        for s in signal.into_iter().take(members) {
            let e = normals(&mut rng, timepoints);
            rows.push(
                s.iter()
                    .zip(&e)
                    .map(|(s, e)| c.sqrt() * s + (1.0 - c).sqrt() * e)
                    .collect(),
            );
        }
    }
    standardize(&Recording::from_channels("modules", &rows)?)
}

/// All three views of a synthetic recording, flattened row-major.
#[wasm_bindgen]
pub struct Views {
    channels: usize,
    mi: Vec<f64>,
    pearson: Vec<f64>,
    oinfo: Vec<f64>,
}

#[wasm_bindgen]
impl Views {
    #[wasm_bindgen(getter)]
    pub fn channels(&self) -> usize {
        self.channels
    }

    /// `C x C` mutual information; the diagonal holds single-channel entropies.
    #[wasm_bindgen(getter)]
    pub fn mi(&self) -> Vec<f64> {
        self.mi.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn pearson(&self) -> Vec<f64> {
        self.pearson.clone()
    }

    /// `C x C x C` O-information tensor.
    #[wasm_bindgen(getter)]
    pub fn oinfo(&self) -> Vec<f64> {
        self.oinfo.clone()
    }
}

pub fn compute_views(
    channels: usize,
    timepoints: usize,
    coupling: f64,
    sigma: f64,
    alpha: f64,
    seed: u64,
) -> hoi_core::Result<Views> {
    let params = KernelParams::new(sigma, alpha)?;
    let rec = synthetic_modules(channels, timepoints, coupling, seed)?;
    let cache = build_cache(&rec, params)?;
    let tensor = oinfo_tensor(&cache, None)?;
    Ok(Views {
        channels,
        mi: pairwise_view(&cache).entries().to_vec(),
        pearson: pearson_view(&rec)?.entries().to_vec(),
        oinfo: tensor.entries().to_vec(),
    })
}

#[wasm_bindgen]
pub fn entropy_curve(
    timepoints: usize,
    sigma_min: f64,
    sigma_max: f64,
    steps: usize,
    alpha: f64,
    seed: u32,
) -> Result<Vec<f64>, JsError> {
    entropy_curve_values(timepoints, sigma_min, sigma_max, steps, alpha, seed.into()).map_err(js)
}

#[wasm_bindgen]
pub fn triplet_explorer(
    coupling: f64,
    synergy: f64,
    timepoints: usize,
    sigma: f64,
    alpha: f64,
    seed: u32,
) -> Result<Vec<f64>, JsError> {
    triplet_values(coupling, synergy, timepoints, sigma, alpha, seed.into()).map_err(js)
}

#[wasm_bindgen]
pub fn connectivity_views(
    channels: usize,
    timepoints: usize,
    coupling: f64,
    sigma: f64,
    alpha: f64,
    seed: u32,
) -> Result<Views, JsError> {
    compute_views(channels, timepoints, coupling, sigma, alpha, seed.into()).map_err(js)
}
