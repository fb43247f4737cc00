//! Pairwise and three-way interaction views of a recording.
//!
//! Every entropy term an O-information triplet needs, apart from the joint
//! entropy of the triplet itself, is a single-channel or pairwise entropy.
//! [`EntropyCache`] computes those `C + C(C-1)/2` terms once, after which each
//! triplet costs exactly one symmetric eigendecomposition:
//!
//! ```text
//! TC  = H_i + H_j + H_k - H_ijk
//! DTC = H_ij + H_ik + H_jk - 2 H_ijk
//! O   = TC - DTC
//! ```
//!
//! `O > 0` marks a redundancy-dominated triplet, `O < 0` a synergy-dominated one.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{HoiError, Result};
use crate::kernel::{self, EntropyValue, KernelParams, NormalizedGram};
use crate::par;
use crate::signal::Recording;

/// Entropies shared across all triplets of one recording.
#[derive(Debug)]
pub struct EntropyCache {
    params: KernelParams,
    channel_grams: Vec<NormalizedGram>,
    singles: Vec<EntropyValue>,
    /// Row-major `C x C`, diagonal unused (zero).
    pairs: Vec<EntropyValue>,
    eigendecompositions: AtomicU64,
}

impl EntropyCache {
    pub fn params(&self) -> KernelParams {
        self.params
    }

    pub fn channels(&self) -> usize {
        self.singles.len()
    }

    pub fn timepoints(&self) -> usize {
        self.channel_grams[0].n()
    }

    pub fn single(&self, i: usize) -> EntropyValue {
        self.singles[i]
    }

    pub fn singles(&self) -> &[EntropyValue] {
        &self.singles
    }

    /// Joint entropy `H(X_i, X_j)`. The diagonal is not defined and reads as zero.
    pub fn pair(&self, i: usize, j: usize) -> EntropyValue {
        self.pairs[i * self.channels() + j]
    }

    pub fn channel_gram(&self, i: usize) -> &NormalizedGram {
        &self.channel_grams[i]
    }

    /// Number of symmetric eigendecompositions performed through this cache,
    /// including those of later triplet evaluations.
    pub fn eigendecompositions(&self) -> u64 {
        self.eigendecompositions.load(Ordering::Relaxed)
    }

    fn counted_entropy(&self, gram: NormalizedGram) -> Result<EntropyValue> {
        self.eigendecompositions.fetch_add(1, Ordering::Relaxed);
        kernel::entropy_owned(gram, self.params.alpha())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.channels() {
            return Err(HoiError::Index(format!(
                "channel {i} out of range for {} channels",
                self.channels()
            )));
        }
        Ok(())
    }
}

/// Computes every channel Gram, single entropy and pairwise joint entropy.
pub fn build_cache(rec: &Recording, params: KernelParams) -> Result<EntropyCache> {
    let c = rec.channels();
    if c < 2 {
        return Err(HoiError::TooFewChannels {
            required: 2,
            found: c,
        });
    }
    let counter = AtomicU64::new(0);
    let channels: Vec<usize> = (0..c).collect();
    let singles: Vec<(NormalizedGram, EntropyValue)> = par::try_map(&channels, |&i| {
        let g = kernel::gram(rec.channel(i), params.sigma())?;
        counter.fetch_add(1, Ordering::Relaxed);
        let h = kernel::entropy(&g, params.alpha())?;
        Ok((g, h))
    })?;
    let (channel_grams, singles): (Vec<_>, Vec<_>) = singles.into_iter().unzip();

    let pair_list: Vec<(usize, usize)> = (0..c)
        .flat_map(|i| (i + 1..c).map(move |j| (i, j)))
        .collect();
    let pair_values = par::try_map(&pair_list, |&(i, j)| {
        counter.fetch_add(1, Ordering::Relaxed);
        kernel::joint_entropy(&[&channel_grams[i], &channel_grams[j]], params.alpha())
    })?;
    let mut pairs = vec![EntropyValue::default(); c * c];
    for (&(i, j), h) in pair_list.iter().zip(pair_values) {
        pairs[i * c + j] = h;
        pairs[j * c + i] = h;
    }

    Ok(EntropyCache {
        params,
        channel_grams,
        singles,
        pairs,
        eigendecompositions: counter,
    })
}

/// A `C x C` symmetric connectivity matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseView {
    size: usize,
    entries: Vec<f64>,
}

impl PairwiseView {
    /// Row-major entries; must be `size * size` long.
    pub fn from_entries(size: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(HoiError::Shape(format!(
                "{} entries cannot fill a {size}x{size} view",
                entries.len()
            )));
        }
        Ok(PairwiseView { size, entries })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, f64> {
        self.entries.chunks_exact(self.size.max(1))
    }
}

/// Matrix-based mutual information `I(X_i; X_j)` in bits.
pub fn mutual_information(cache: &EntropyCache, i: usize, j: usize) -> Result<f64> {
    cache.check_index(i)?;
    cache.check_index(j)?;
    if i == j {
        return Err(HoiError::Index(format!(
            "mutual information needs distinct channels, got ({i}, {i}); use the single entropy"
        )));
    }
    Ok(cache.singles[i].bits() + cache.singles[j].bits() - cache.pair(i, j).bits())
}

/// Mutual-information matrix. The diagonal holds the single-channel entropy
/// `H(X_i)`.
pub fn pairwise_view(cache: &EntropyCache) -> PairwiseView {
    let c = cache.channels();
    let mut entries = vec![0.0; c * c];
    for i in 0..c {
        entries[i * c + i] = cache.singles[i].bits();
        for j in i + 1..c {
            let mi = cache.singles[i].bits() + cache.singles[j].bits() - cache.pair(i, j).bits();
            entries[i * c + j] = mi;
            entries[j * c + i] = mi;
        }
    }
    PairwiseView { size: c, entries }
}

/// Pearson correlation matrix with unit diagonal.
pub fn pearson_view(rec: &Recording) -> Result<PairwiseView> {
    let c = rec.channels();
    let n = rec.timepoints() as f64;
    let mut centered = Vec::with_capacity(c);
    for (idx, ch) in rec.iter_channels().enumerate() {
        let mean = ch.iter().sum::<f64>() / n;
        let dev: Vec<f64> = ch.iter().map(|x| x - mean).collect();
        let ss = dev.iter().map(|d| d * d).sum::<f64>();
        let scale = ch.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if !(ss.sqrt() > 8.0 * f64::EPSILON * scale * n.sqrt()) {
            return Err(HoiError::DegenerateChannel(idx));
        }
        centered.push((dev, ss));
    }
    let mut entries = vec![0.0; c * c];
    for i in 0..c {
        entries[i * c + i] = 1.0;
        for j in i + 1..c {
            let (xi, si) = &centered[i];
            let (xj, sj) = &centered[j];
            let sxy: f64 = xi.iter().zip(xj).map(|(a, b)| a * b).sum();
            let r = (sxy / (si * sj).sqrt()).clamp(-1.0, 1.0);
            entries[i * c + j] = r;
            entries[j * c + i] = r;
        }
    }
    Ok(PairwiseView { size: c, entries })
}

/// Total correlation, dual total correlation and their difference for one triplet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TcDtcBreakdown {
    pub tc: f64,
    pub dtc: f64,
    /// `tc - dtc`
    pub o: f64,
    pub triple_joint: EntropyValue,
}

fn sum3(a: f64, b: f64, c: f64) -> f64 {
    let mut v = [a, b, c];
    v.sort_by(f64::total_cmp);
    v[0] + v[1] + v[2]
}

/// O-information of channels `i, j, k` using the cached single and pair
/// entropies and the kernel parameters the cache was built with.
pub fn triplet_o_information(
    cache: &EntropyCache,
    i: usize,
    j: usize,
    k: usize,
) -> Result<TcDtcBreakdown> {
    for idx in [i, j, k] {
        cache.check_index(idx)?;
    }
    if i == j || i == k || j == k {
        return Err(HoiError::Index(format!(
            "O-information needs three distinct channels, got ({i}, {j}, {k})"
        )));
    }
    let joint = kernel::joint_gram(&[
        &cache.channel_grams[i],
        &cache.channel_grams[j],
        &cache.channel_grams[k],
    ])?;
    let h_ijk = cache.counted_entropy(joint)?;
    let h = h_ijk.bits();
    let singles = sum3(
        cache.singles[i].bits(),
        cache.singles[j].bits(),
        cache.singles[k].bits(),
    );
    let pairs = sum3(
        cache.pair(i, j).bits(),
        cache.pair(i, k).bits(),
        cache.pair(j, k).bits(),
    );
    let tc = singles - h;
    let dtc = pairs - 2.0 * h;
    Ok(TcDtcBreakdown {
        tc,
        dtc,
        o: tc - dtc,
        triple_joint: h_ijk,
    })
}

/// The co-information form `sum H_single - sum H_pair + H_ijk`, evaluated from
/// the cache and an already-known triple joint entropy.
pub fn co_information(cache: &EntropyCache, i: usize, j: usize, k: usize, h_ijk: f64) -> f64 {
    let s = cache.single(i).bits() + cache.single(j).bits() + cache.single(k).bits();
    let p = cache.pair(i, j).bits() + cache.pair(i, k).bits() + cache.pair(j, k).bits();
    s - p + h_ijk
}

/// A `C x C x C` permutation-symmetric tensor of O-information values.
/// Cells with a repeated index hold 0.
#[derive(Debug, Clone, PartialEq)]
pub struct OInfoTensor {
    size: usize,
    entries: Vec<f64>,
}

impl OInfoTensor {
    /// Row-major (`i` outermost, `k` innermost) entries, `size^3` long.
    pub fn from_entries(size: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != size * size * size {
            return Err(HoiError::Shape(format!(
                "{} entries cannot fill a {size}^3 tensor",
                entries.len()
            )));
        }
        Ok(OInfoTensor { size, entries })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        let c = self.size;
        self.entries[(i * c + j) * c + k]
    }

    /// Whether all six orderings of every cell agree within `tol`.
    pub fn is_permutation_symmetric(&self, tol: f64) -> bool {
        let c = self.size;
        (0..c).all(|i| {
            (0..c).all(|j| {
                (0..c).all(|k| {
                    let v = self.get(i, j, k);
                    [
                        self.get(i, k, j),
                        self.get(j, i, k),
                        self.get(j, k, i),
                        self.get(k, i, j),
                        self.get(k, j, i),
                    ]
                    .iter()
                    .all(|w| (v - w).abs() <= tol)
                })
            })
        })
    }

    fn set_mirrored(&mut self, i: usize, j: usize, k: usize, v: f64) {
        let c = self.size;
        for (a, b, d) in [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
            self.entries[(a * c + b) * c + d] = v;
        }
    }
}

/// Number of unordered triplets of `c` channels.
pub fn triplet_count(c: usize) -> usize {
    if c < 3 {
        0
    } else {
        c * (c - 1) * (c - 2) / 6
    }
}

/// Progress report for one finished triplet. Reports may arrive out of order
/// and from several threads.
#[derive(Debug, Clone, Copy)]
pub struct TripletProgress {
    /// Lexicographic rank of `(i, j, k)` among all `i < j < k`.
    pub index: usize,
    pub total: usize,
    pub triplet: (usize, usize, usize),
}

/// Evaluates every triplet `i < j < k` and mirrors each value to its six
/// orderings. The result is bit-identical for any thread count.
pub fn oinfo_tensor(
    cache: &EntropyCache,
    progress: Option<&(dyn Fn(TripletProgress) + Sync)>,
) -> Result<OInfoTensor> {
    let c = cache.channels();
    if c < 3 {
        return Err(HoiError::TooFewChannels {
            required: 3,
            found: c,
        });
    }
    let total = triplet_count(c);
    // One task per (i, j) prefix, holding the lexicographic rank of its first triplet.
    let mut tasks = Vec::with_capacity(c * (c - 1) / 2);
    let mut offset = 0;
    for i in 0..c {
        for j in i + 1..c - 1 {
            tasks.push((i, j, offset));
            offset += c - 1 - j;
        }
    }
    debug_assert_eq!(offset, total);

    let rows = par::try_map(&tasks, |&(i, j, first)| {
        (j + 1..c)
            .map(|k| {
                let o = triplet_o_information(cache, i, j, k)?.o;
                if let Some(report) = progress {
                    report(TripletProgress {
                        index: first + (k - j - 1),
                        total,
                        triplet: (i, j, k),
                    });
                }
                Ok(o)
            })
            .collect::<Result<Vec<f64>>>()
    })?;

    let mut tensor = OInfoTensor {
        size: c,
        entries: vec![0.0; c * c * c],
    };
    for (&(i, j, _), row) in tasks.iter().zip(rows) {
        for (k, o) in (j + 1..c).zip(row) {
            tensor.set_mirrored(i, j, k, o);
        }
    }
    Ok(tensor)
}

/// Eigendecompositions needed for a full run over `c` channels: singles,
/// pairs and triplets.
pub fn eigendecomposition_budget(c: usize) -> u64 {
    (c + c * c.saturating_sub(1) / 2 + triplet_count(c)) as u64
}
