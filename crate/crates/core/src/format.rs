//! On-disk formats for the two views.
//!
//! Matrix views are headerless CSV, `C` rows of `C` values, each written with
//! 17 significant digits. Tensors use the `HOI1` binary layout, all
//! little-endian:
//!
//! ```text
//! offset  size      field
//! 0       4         magic "HOI1" (0x48 0x4F 0x49 0x31)
//! 4       4         u32 format version (1)
//! 8       12        u32 dims C, C, C
//! 20      8 * C^3   f64 payload, row-major (i outermost, k innermost)
//! ```
//!
//! Each view file may be accompanied by a JSON sidecar ([`Sidecar`]).

use std::fs;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{HoiError, Result};
use crate::interaction::{OInfoTensor, PairwiseView};

pub const HOI1_MAGIC: [u8; 4] = *b"HOI1";
pub const HOI1_VERSION: u32 = 1;
pub const HOI1_HEADER_LEN: usize = 20;

pub fn write_tensor(mut w: impl Write, tensor: &OInfoTensor) -> Result<()> {
    let c = u32::try_from(tensor.size())
        .map_err(|_| HoiError::Format(format!("tensor size {} exceeds u32", tensor.size())))?;
    w.write_all(&HOI1_MAGIC)?;
    w.write_all(&HOI1_VERSION.to_le_bytes())?;
    for _ in 0..3 {
        w.write_all(&c.to_le_bytes())?;
    }
    let mut buf = Vec::with_capacity(tensor.entries().len() * 8);
    for v in tensor.entries() {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

pub fn read_tensor(mut r: impl Read) -> Result<OInfoTensor> {
    let mut header = [0u8; HOI1_HEADER_LEN];
    r.read_exact(&mut header)
        .map_err(|_| HoiError::Format("truncated HOI1 header".into()))?;
    if header[..4] != HOI1_MAGIC {
        return Err(HoiError::Format(format!("bad magic bytes {:02x?}", &header[..4])));
    }
    let word = |at: usize| u32::from_le_bytes(header[at..at + 4].try_into().unwrap());
    let version = word(4);
    if version != HOI1_VERSION {
        return Err(HoiError::Format(format!("unsupported HOI1 version {version}")));
    }
    let dims = [word(8), word(12), word(16)];
    if dims[0] != dims[1] || dims[1] != dims[2] {
        return Err(HoiError::Format(format!("tensor dims {dims:?} are not cubic")));
    }
    let c = dims[0] as usize;
    let count = c
        .checked_mul(c)
        .and_then(|v| v.checked_mul(c))
        .ok_or_else(|| HoiError::Format(format!("tensor dim {c} overflows")))?;
    let mut payload = Vec::new();
    r.read_to_end(&mut payload)?;
    if payload.len() != count * 8 {
        return Err(HoiError::Format(format!(
            "payload holds {} bytes, expected {} for C = {c}",
            payload.len(),
            count * 8
        )));
    }
    let entries = payload
        .chunks_exact(8)
        .map(|b| f64::from_le_bytes(b.try_into().unwrap()))
        .collect();
    OInfoTensor::from_entries(c, entries)
}

pub fn save_tensor(path: impl AsRef<Path>, tensor: &OInfoTensor) -> Result<()> {
    let path = path.as_ref();
    let file = fs::File::create(path).map_err(|e| HoiError::file(path, e))?;
    let mut w = BufWriter::new(file);
    write_tensor(&mut w, tensor)?;
    w.flush().map_err(|e| HoiError::file(path, e))?;
    Ok(())
}

pub fn load_tensor(path: impl AsRef<Path>) -> Result<OInfoTensor> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| HoiError::file(path, e))?;
    read_tensor(std::io::BufReader::new(file))
}

/// Formats a float with 17 significant digits.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_matrix_csv(mut w: impl Write, view: &PairwiseView) -> Result<()> {
    for row in view.rows() {
        let line: Vec<String> = row.iter().map(|&v| format_f64(v)).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn read_matrix_csv(r: impl Read) -> Result<PairwiseView> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(r);
    let mut entries = Vec::new();
    let mut rows = 0;
    let mut width = None;
    for (row, record) in csv.records().enumerate() {
        let record = record.map_err(|e| HoiError::Format(format!("row {row}: {e}")))?;
        let expected = *width.get_or_insert(record.len());
        if record.len() != expected {
            return Err(HoiError::RaggedRow {
                row,
                expected,
                found: record.len(),
            });
        }
        for (col, cell) in record.iter().enumerate() {
            let v = cell.parse::<f64>().map_err(|_| HoiError::Parse {
                row,
                col,
                cell: cell.to_string(),
            })?;
            entries.push(v);
        }
        rows += 1;
    }
    if entries.len() != rows * rows {
        return Err(HoiError::Format(format!(
            "{rows} rows with {} values do not form a square matrix",
            entries.len()
        )));
    }
    PairwiseView::from_entries(rows, entries)
}

pub fn save_matrix_csv(path: impl AsRef<Path>, view: &PairwiseView) -> Result<()> {
    let path = path.as_ref();
    let file = fs::File::create(path).map_err(|e| HoiError::file(path, e))?;
    let mut w = BufWriter::new(file);
    write_matrix_csv(&mut w, view)?;
    w.flush().map_err(|e| HoiError::file(path, e))?;
    Ok(())
}

pub fn load_matrix_csv(path: impl AsRef<Path>) -> Result<PairwiseView> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| HoiError::file(path, e))?;
    read_matrix_csv(file)
}

/// Which view a file holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ViewKind {
    Pearson,
    Mi,
    Oinfo,
}

impl ViewKind {
    pub fn name(self) -> &'static str {
        match self {
            ViewKind::Pearson => "pearson",
            ViewKind::Mi => "mi",
            ViewKind::Oinfo => "oinfo",
        }
    }

    pub fn file_extension(self) -> &'static str {
        match self {
            ViewKind::Pearson | ViewKind::Mi => "csv",
            ViewKind::Oinfo => "hoi",
        }
    }
}

impl std::str::FromStr for ViewKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "pearson" => Ok(ViewKind::Pearson),
            "mi" => Ok(ViewKind::Mi),
            "oinfo" => Ok(ViewKind::Oinfo),
            other => Err(format!("unknown view {other:?} (expected pearson, mi or oinfo)")),
        }
    }
}

/// Metadata written next to each view file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub subject_id: String,
    pub view: ViewKind,
    pub sigma: f64,
    pub alpha: f64,
    pub channels: usize,
    pub timepoints: usize,
    pub tool_version: String,
}

impl Sidecar {
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let text = serde_json::to_string_pretty(self)
            .map_err(|e| HoiError::Format(e.to_string()))?;
        fs::write(path, text + "\n").map_err(|e| HoiError::file(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| HoiError::file(path, e))?;
        serde_json::from_str(&text).map_err(|e| HoiError::Format(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tensor(c: usize) -> OInfoTensor {
        let entries = (0..c * c * c).map(|v| (v as f64).sin() * 1e-3).collect();
        OInfoTensor::from_entries(c, entries).unwrap()
    }

    #[test]
    fn header_layout() {
        let mut buf = Vec::new();
        write_tensor(&mut buf, &tensor(2)).unwrap();
        assert_eq!(&buf[..4], &[0x48, 0x4F, 0x49, 0x31]);
        assert_eq!(&buf[4..8], &[1, 0, 0, 0]);
        assert_eq!(&buf[8..20], &[2, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0]);
        assert_eq!(buf.len(), 20 + 8 * 8);
        assert_eq!(&buf[28..36], &(1f64.sin() * 1e-3).to_le_bytes());
    }

    #[test]
    fn tensor_round_trip() {
        let t = tensor(5);
        let mut buf = Vec::new();
        write_tensor(&mut buf, &t).unwrap();
        let back = read_tensor(buf.as_slice()).unwrap();
        assert_eq!(back.size(), 5);
        assert!(back
            .entries()
            .iter()
            .zip(t.entries())
            .all(|(a, b)| a.to_bits() == b.to_bits()));
    }

    #[test]
    fn tensor_rejects_bad_input() {
        let mut good = Vec::new();
        write_tensor(&mut good, &tensor(3)).unwrap();

        let mut bad = good.clone();
        bad[0] = b'X';
        assert!(matches!(read_tensor(bad.as_slice()), Err(HoiError::Format(_))));

        let mut bad = good.clone();
        bad[4] = 2;
        assert!(matches!(read_tensor(bad.as_slice()), Err(HoiError::Format(_))));

        let mut bad = good.clone();
        bad[16] = 4;
        assert!(matches!(read_tensor(bad.as_slice()), Err(HoiError::Format(_))));

        let bad = &good[..good.len() - 1];
        assert!(matches!(read_tensor(bad), Err(HoiError::Format(_))));

        let mut bad = good.clone();
        bad.push(0);
        assert!(matches!(read_tensor(bad.as_slice()), Err(HoiError::Format(_))));

        assert!(matches!(read_tensor(&good[..10]), Err(HoiError::Format(_))));
    }

    #[test]
    fn matrix_csv_round_trip() {
        let entries = vec![0.1, 1.0 / 3.0, -2.5e-300, 7.0, f64::MIN_POSITIVE, -0.0, 1e300, 2.0, 3.0];
        let view = PairwiseView::from_entries(3, entries).unwrap();
        let mut buf = Vec::new();
        write_matrix_csv(&mut buf, &view).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.starts_with("1.0000000000000001e-1,3.3333333333333331e-1,"));
        let back = read_matrix_csv(buf.as_slice()).unwrap();
        assert_eq!(back, view);
    }

    #[test]
    fn matrix_csv_rejects_non_square() {
        assert!(read_matrix_csv("1,2\n3,4\n5,6\n".as_bytes()).is_err());
        assert!(read_matrix_csv("1,2\n3\n".as_bytes()).is_err());
        assert!(read_matrix_csv("1,x\n3,4\n".as_bytes()).is_err());
    }

    #[test]
    fn view_kind_parsing() {
        assert_eq!("mi".parse::<ViewKind>().unwrap(), ViewKind::Mi);
        assert_eq!(" oinfo".parse::<ViewKind>().unwrap(), ViewKind::Oinfo);
        assert!("rho".parse::<ViewKind>().is_err());
        assert_eq!(serde_json::to_string(&ViewKind::Pearson).unwrap(), "\"pearson\"");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn csv_is_bit_exact(values in prop::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), 16)) {
                let view = PairwiseView::from_entries(4, values).unwrap();
                let mut buf = Vec::new();
                write_matrix_csv(&mut buf, &view).unwrap();
                let back = read_matrix_csv(buf.as_slice()).unwrap();
                for (a, b) in back.entries().iter().zip(view.entries()) {
                    prop_assert_eq!(a.to_bits(), b.to_bits());
                }
            }

            #[test]
            fn tensor_is_bit_exact(c in 0usize..5, seed in any::<u64>()) {
                let entries = (0..c * c * c)
                    .map(|i| f64::from_bits(seed.wrapping_mul(i as u64 + 1) & !(0x7ffu64 << 52) | (0x3ffu64 << 52)))
                    .collect();
                let t = OInfoTensor::from_entries(c, entries).unwrap();
                let mut buf = Vec::new();
                write_tensor(&mut buf, &t).unwrap();
                prop_assert_eq!(read_tensor(buf.as_slice()).unwrap(), t);
            }
        }
    }
}
