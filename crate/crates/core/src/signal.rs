//! Multichannel recordings: CSV ingestion, validation and z-scoring.
//!
//! A [`Recording`] is always held in channel-major layout: `C` rows of `T`
//! samples each. Input files may be laid out either way; [`Orientation`]
//! tells the loader which axis the rows of the file run along.

use std::collections::BTreeSet;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{HoiError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    /// Each row of the file is one channel.
    #[default]
    RowsAreChannels,
    /// Each row of the file is one timepoint across all channels.
    RowsAreTimepoints,
}

impl FromStr for Orientation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "rows-are-channels" | "channels" => Ok(Orientation::RowsAreChannels),
            "rows-are-timepoints" | "timepoints" => Ok(Orientation::RowsAreTimepoints),
            other => Err(format!(
                "unknown orientation {other:?} (expected rows-are-channels or rows-are-timepoints)"
            )),
        }
    }
}

/// A `C x T` block of finite samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Recording {
    subject_id: String,
    channels: usize,
    timepoints: usize,
    data: Vec<f64>,
}

impl Recording {
    /// Builds a recording from channel-major data (`data[c * T + t]`).
    pub fn new(
        subject_id: impl Into<String>,
        channels: usize,
        timepoints: usize,
        data: Vec<f64>,
    ) -> Result<Self> {
        if channels == 0 || timepoints == 0 {
            return Err(HoiError::EmptyInput);
        }
        if data.len() != channels * timepoints {
            return Err(HoiError::Shape(format!(
                "{} values cannot fill a {channels}x{timepoints} recording",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(HoiError::Numerical(format!(
                "non-finite sample at channel {}, timepoint {}",
                pos / timepoints,
                pos % timepoints
            )));
        }
        Ok(Recording {
            subject_id: subject_id.into(),
            channels,
            timepoints,
            data,
        })
    }

    pub fn from_channels(subject_id: impl Into<String>, rows: &[Vec<f64>]) -> Result<Self> {
        let timepoints = rows.first().map_or(0, Vec::len);
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != timepoints) {
            return Err(HoiError::RaggedRow {
                row,
                expected: timepoints,
                found: r.len(),
            });
        }
        Recording::new(subject_id, rows.len(), timepoints, rows.concat())
    }

    pub fn subject_id(&self) -> &str {
        &self.subject_id
    }

    pub fn with_subject_id(mut self, subject_id: impl Into<String>) -> Self {
        self.subject_id = subject_id.into();
        self
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn timepoints(&self) -> usize {
        self.timepoints
    }

    pub fn channel(&self, index: usize) -> &[f64] {
        let start = index * self.timepoints;
        &self.data[start..start + self.timepoints]
    }

    pub fn iter_channels(&self) -> std::slice::ChunksExact<'_, f64> {
        self.data.chunks_exact(self.timepoints)
    }

    /// Channel-major samples.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Reorders channels so that new channel `c` is old channel `order[c]`.
    pub fn permute_channels(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.channels];
        if order.len() != self.channels
            || !order
                .iter()
                .all(|&c| c < self.channels && !std::mem::replace(&mut seen[c], true))
        {
            return Err(HoiError::Index(format!(
                "{order:?} is not a permutation of {} channels",
                self.channels
            )));
        }
        let data = order.iter().flat_map(|&c| self.channel(c)).copied().collect();
        Ok(Recording {
            subject_id: self.subject_id.clone(),
            channels: self.channels,
            timepoints: self.timepoints,
            data,
        })
    }
}

/// Z-scores every channel independently using the population standard
/// deviation (divide by `T`, not `T - 1`).
pub fn standardize(rec: &Recording) -> Result<Recording> {
    let mut data = Vec::with_capacity(rec.data.len());
    for (c, channel) in rec.iter_channels().enumerate() {
        let n = channel.len() as f64;
        let mean = channel.iter().sum::<f64>() / n;
        let var = channel.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
        let sd = var.sqrt();
        let scale = channel.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        // Spread at the rounding-noise level of the channel's magnitude is
        // treated as constant.
        if !(sd > 8.0 * f64::EPSILON * scale) {
            return Err(HoiError::DegenerateChannel(c));
        }
        data.extend(channel.iter().map(|x| (x - mean) / sd));
    }
    Ok(Recording {
        subject_id: rec.subject_id.clone(),
        channels: rec.channels,
        timepoints: rec.timepoints,
        data,
    })
}

/// Reads a recording from a CSV file. The subject id defaults to the file stem.
pub fn load_csv(path: impl AsRef<Path>, orientation: Orientation) -> Result<Recording> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| HoiError::file(path, e))?;
    let subject = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    read_csv(file, orientation).map(|r| r.with_subject_id(subject))
}

/// Parses CSV text into a recording. An optional single header row is
/// detected as a first row in which no cell parses as a number.
pub fn read_csv(reader: impl Read, orientation: Orientation) -> Result<Recording> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width = None;
    for (row, record) in csv.records().enumerate() {
        let record = record.map_err(|e| HoiError::Format(format!("row {row}: {e}")))?;
        if row == 0 && record.iter().all(|cell| parse_cell(cell).is_none()) {
            continue;
        }
        let expected = *width.get_or_insert(record.len());
        if record.len() != expected {
            return Err(HoiError::RaggedRow {
                row,
                expected,
                found: record.len(),
            });
        }
        let values = record
            .iter()
            .enumerate()
            .map(|(col, cell)| {
                parse_cell(cell).ok_or_else(|| HoiError::Parse {
                    row,
                    col,
                    cell: cell.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(values);
    }

    let (n_rows, n_cols) = match (rows.len(), width) {
        (0, _) | (_, None | Some(0)) => return Err(HoiError::EmptyInput),
        (r, Some(c)) => (r, c),
    };
    match orientation {
        Orientation::RowsAreChannels => Recording::new("", n_rows, n_cols, rows.concat()),
        Orientation::RowsAreTimepoints => {
            let mut data = vec![0.0; n_rows * n_cols];
            for (t, row) in rows.iter().enumerate() {
                for (c, &v) in row.iter().enumerate() {
                    data[c * n_rows + t] = v;
                }
            }
            Recording::new("", n_cols, n_rows, data)
        }
    }
}

fn parse_cell(cell: &str) -> Option<f64> {
    cell.parse::<f64>().ok().filter(|v| v.is_finite())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub path: PathBuf,
    pub subject_id: String,
    pub label: u32,
}

/// A list of recordings with class labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub schema_version: String,
    pub entries: Vec<ManifestEntry>,
}

impl DatasetManifest {
    pub const SCHEMA_VERSION: &'static str = "1";

    pub fn from_json(text: &str) -> Result<Self> {
        let manifest: DatasetManifest =
            serde_json::from_str(text).map_err(|e| HoiError::Manifest(e.to_string()))?;
        manifest.validate()?;
        Ok(manifest)
    }

    /// Loads a manifest and resolves relative entry paths against the
    /// manifest's own directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| HoiError::file(path, e))?;
        let mut manifest = Self::from_json(&text)?;
        let base = path.parent().unwrap_or(Path::new(""));
        for entry in &mut manifest.entries {
            if entry.path.is_relative() {
                entry.path = base.join(&entry.path);
            }
        }
        Ok(manifest)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != Self::SCHEMA_VERSION {
            return Err(HoiError::Manifest(format!(
                "unsupported schema_version {:?}",
                self.schema_version
            )));
        }
        let mut ids = BTreeSet::new();
        for entry in &self.entries {
            if !ids.insert(entry.subject_id.as_str()) {
                return Err(HoiError::Manifest(format!(
                    "duplicate subject_id {:?}",
                    entry.subject_id
                )));
            }
        }
        let labels: BTreeSet<u32> = self.entries.iter().map(|e| e.label).collect();
        if let Some(&max) = labels.last() {
            if labels.len() != max as usize + 1 {
                return Err(HoiError::Manifest(format!(
                    "labels {labels:?} are not the contiguous range 0..={max}"
                )));
            }
        }
        Ok(())
    }

    pub fn num_classes(&self) -> usize {
        self.entries
            .iter()
            .map(|e| e.label as usize + 1)
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(rows: &[&[f64]]) -> Recording {
        let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        Recording::from_channels("t", &rows).unwrap()
    }

    #[test]
    fn csv_rows_are_channels() {
        let text = "1,2,3,4,5\n6,7,8,9,10\n11,12,13,14,15\n";
        let r = read_csv(text.as_bytes(), Orientation::RowsAreChannels).unwrap();
        assert_eq!((r.channels(), r.timepoints()), (3, 5));
        assert_eq!(r.channel(1), &[6.0, 7.0, 8.0, 9.0, 10.0]);
    }

    #[test]
    fn csv_rows_are_timepoints() {
        let text = "1,6,11\n2,7,12\n3,8,13\n4,9,14\n5,10,15\n";
        let r = read_csv(text.as_bytes(), Orientation::RowsAreTimepoints).unwrap();
        assert_eq!((r.channels(), r.timepoints()), (3, 5));
        assert_eq!(r.channel(2), &[11.0, 12.0, 13.0, 14.0, 15.0]);
        let same = read_csv(
            "1,2,3,4,5\n6,7,8,9,10\n11,12,13,14,15\n".as_bytes(),
            Orientation::RowsAreChannels,
        )
        .unwrap();
        assert_eq!(r, same);
    }

    #[test]
    fn csv_header_is_skipped() {
        let text = "roi_a, roi_b\n0.5,1.5\n2.5,-3e-2\n";
        let r = read_csv(text.as_bytes(), Orientation::RowsAreTimepoints).unwrap();
        assert_eq!((r.channels(), r.timepoints()), (2, 2));
        assert_eq!(r.channel(1), &[1.5, -0.03]);
    }

    #[test]
    fn csv_non_numeric_cell() {
        let text = "1,2,3,4,5\n1,2,3,4,5\n1,2,3,4,abc\n";
        match read_csv(text.as_bytes(), Orientation::RowsAreChannels) {
            Err(HoiError::Parse { row: 2, col: 4, cell }) => assert_eq!(cell, "abc"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn csv_nan_is_rejected() {
        let text = "1,2\nNaN,3\n";
        assert!(matches!(
            read_csv(text.as_bytes(), Orientation::RowsAreChannels),
            Err(HoiError::Parse { row: 1, col: 0, .. })
        ));
    }

    #[test]
    fn csv_ragged() {
        let text = "1,2,3\n4,5\n";
        assert!(matches!(
            read_csv(text.as_bytes(), Orientation::RowsAreChannels),
            Err(HoiError::RaggedRow {
                row: 1,
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn csv_empty() {
        for text in ["", "a,b,c\n"] {
            assert!(matches!(
                read_csv(text.as_bytes(), Orientation::RowsAreChannels),
                Err(HoiError::EmptyInput)
            ));
        }
    }

    #[test]
    fn standardize_population_sd() {
        let z = standardize(&rec(&[&[1.0, 2.0, 3.0]])).unwrap();
        let expected = [-(1.5f64.sqrt()), 0.0, 1.5f64.sqrt()];
        for (a, b) in z.channel(0).iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((z.channel(0)[2] - 1.2247).abs() < 1e-4);
    }

    #[test]
    fn standardize_constant_channel() {
        let r = rec(&[&[1.0, 2.0, 3.0], &[5.0, 5.0, 5.0]]);
        assert!(matches!(standardize(&r), Err(HoiError::DegenerateChannel(1))));
        let r = rec(&[&[0.1, 0.1, 0.1]]);
        assert!(matches!(standardize(&r), Err(HoiError::DegenerateChannel(0))));
    }

    #[test]
    fn permute_rejects_non_permutation() {
        let r = rec(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert!(r.permute_channels(&[0, 0]).is_err());
        assert!(r.permute_channels(&[1]).is_err());
        assert_eq!(r.permute_channels(&[1, 0]).unwrap().channel(0), &[3.0, 4.0]);
    }

    #[test]
    fn manifest_validation() {
        let ok = r#"{"schema_version":"1","entries":[
            {"path":"a.csv","subject_id":"a","label":0},
            {"path":"b.csv","subject_id":"b","label":1}]}"#;
        let m = DatasetManifest::from_json(ok).unwrap();
        assert_eq!(m.num_classes(), 2);

        let dup = ok.replace("\"b\"", "\"a\"");
        assert!(DatasetManifest::from_json(&dup).is_err());
        let gap = ok.replace("\"label\":1", "\"label\":2");
        assert!(DatasetManifest::from_json(&gap).is_err());
        let version = ok.replace("\"1\"", "\"2\"");
        assert!(DatasetManifest::from_json(&version).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn recording() -> impl Strategy<Value = Recording> {
            (1usize..6, 2usize..30).prop_flat_map(|(c, t)| {
                prop::collection::vec(-1e3f64..1e3, c * t)
                    .prop_map(move |data| Recording::new("p", c, t, data).unwrap())
            })
        }

        proptest! {
            #[test]
            fn standardized_moments(r in recording()) {
                if let Ok(z) = standardize(&r) {
                    for ch in z.iter_channels() {
                        let n = ch.len() as f64;
                        let mean = ch.iter().sum::<f64>() / n;
                        let sd = (ch.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n).sqrt();
                        prop_assert!(mean.abs() < 1e-9);
                        prop_assert!((sd - 1.0).abs() < 1e-9);
                    }
                }
            }

            #[test]
            fn standardize_idempotent(r in recording()) {
                if let Ok(z) = standardize(&r) {
                    let zz = standardize(&z).unwrap();
                    for (a, b) in z.data().iter().zip(zz.data()) {
                        prop_assert!((a - b).abs() < 1e-12);
                    }
                }
            }

            #[test]
            fn standardize_commutes_with_permutation(r in recording(), seed in any::<u64>()) {
                let mut order: Vec<usize> = (0..r.channels()).collect();
                let n = order.len();
                for i in (1..n).rev() {
                    order.swap(i, (seed.rotate_left(i as u32) as usize) % (i + 1));
                }
                if let Ok(z) = standardize(&r) {
                    let a = z.permute_channels(&order).unwrap();
                    let b = standardize(&r.permute_channels(&order).unwrap()).unwrap();
                    prop_assert_eq!(a, b);
                }
            }

            #[test]
            fn orientation_transpose_is_exact(r in recording()) {
                let as_rows: String = r
                    .iter_channels()
                    .map(|ch| ch.iter().map(|v| format!("{v:e}")).collect::<Vec<_>>().join(","))
                    .collect::<Vec<_>>()
                    .join("\n");
                let as_cols: String = (0..r.timepoints())
                    .map(|t| {
                        (0..r.channels())
                            .map(|c| format!("{:e}", r.channel(c)[t]))
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect::<Vec<_>>()
                    .join("\n");
                let a = read_csv(as_rows.as_bytes(), Orientation::RowsAreChannels).unwrap();
                let b = read_csv(as_cols.as_bytes(), Orientation::RowsAreTimepoints).unwrap();
                prop_assert_eq!(&a, &b);
                prop_assert_eq!(a.data(), r.data());
            }
        }
    }
}
