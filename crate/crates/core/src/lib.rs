//! Connectivity views of multichannel recordings built on the matrix-based
//! Renyi alpha-order entropy functional.
//!
//! From a `C x T` recording the crate produces
//!
//! * a pairwise mutual-information matrix (`C x C`),
//! * a three-way O-information tensor (`C x C x C`),
//! * a Pearson correlation matrix as a linear baseline.
//!
//! ```no_run
//! use hoi_core::{build_cache, load_csv, oinfo_tensor, pairwise_view, standardize};
//! use hoi_core::{KernelParams, Orientation};
//!
//! # fn main() -> hoi_core::Result<()> {
//! let rec = standardize(&load_csv("subject01.csv", Orientation::RowsAreTimepoints)?)?;
//! let cache = build_cache(&rec, KernelParams::default())?;
//! let mi = pairwise_view(&cache);
//! let tensor = oinfo_tensor(&cache, None)?;
//! # let _ = (mi, tensor);
//! # Ok(())
//! # }
//! ```

pub mod error;
pub mod format;
pub mod interaction;
pub mod kernel;
pub mod oracle;
mod par;
pub mod signal;

pub use error::{HoiError, Result};
pub use interaction::{
    build_cache, co_information, eigendecomposition_budget, mutual_information, oinfo_tensor,
    pairwise_view, pearson_view, triplet_count, triplet_o_information, EntropyCache, OInfoTensor,
    PairwiseView, TcDtcBreakdown, TripletProgress,
};
pub use kernel::{
    entropy, entropy_order2, gram, joint_entropy, joint_gram, EntropyValue, KernelParams,
    NormalizedGram,
};
#[cfg(feature = "parallel")]
pub use par::with_threads;
pub use signal::{load_csv, read_csv, standardize, DatasetManifest, ManifestEntry, Orientation, Recording};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
