//! Minimal reader/writer for the NumPy `.npy` binary format, version 1.0.
//!
//! Only what the dataset ingestion path needs: C-order arrays of `uint8`,
//! `float32` or `float64`. NPZ archives are intentionally not handled; users
//! extract the contained `.npy` first.

use crate::error::{NpyError, Result};
use std::io::{Read, Write};
use std::path::Path;

const MAGIC: &[u8; 6] = b"\x93NUMPY";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NpyDtype {
    U8,
    F32,
    F64,
}

impl NpyDtype {
    fn descr(&self) -> &'static str {
        match self {
            NpyDtype::U8 => "|u1",
            NpyDtype::F32 => "<f4",
            NpyDtype::F64 => "<f8",
        }
    }

    fn item_size(&self) -> usize {
        match self {
            NpyDtype::U8 => 1,
            NpyDtype::F32 => 4,
            NpyDtype::F64 => 8,
        }
    }
}

#[derive(Debug, Clone)]
pub enum NpyData {
    U8(Vec<u8>),
    F32(Vec<f32>),
    F64(Vec<f64>),
}

impl NpyData {
    pub fn dtype(&self) -> NpyDtype {
        match self {
            NpyData::U8(_) => NpyDtype::U8,
            NpyData::F32(_) => NpyDtype::F32,
            NpyData::F64(_) => NpyDtype::F64,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            NpyData::U8(v) => v.len(),
            NpyData::F32(v) => v.len(),
            NpyData::F64(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone)]
pub struct NpyArray {
    pub shape: Vec<usize>,
    pub data: NpyData,
}

/// Reads a version-1.0 `.npy` file.
pub fn load_npy(path: &Path) -> Result<NpyArray> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut bytes)?;
    parse_npy(&bytes)
}

/// Parses `.npy` bytes. Fails without partial data on any malformation.
pub fn parse_npy(bytes: &[u8]) -> Result<NpyArray> {
    if bytes.len() < 10 {
        return Err(NpyError::BadMagic.into());
    }
    if &bytes[..6] != MAGIC {
        return Err(NpyError::BadMagic.into());
    }
    let (major, minor) = (bytes[6], bytes[7]);
    if (major, minor) != (1, 0) {
        return Err(NpyError::UnsupportedVersion(major, minor).into());
    }
    let header_len = u16::from_le_bytes([bytes[8], bytes[9]]) as usize;
    let header_end = 10 + header_len;
    if bytes.len() < header_end {
        return Err(NpyError::Header("header extends past end of file".into()).into());
    }
    let header = std::str::from_utf8(&bytes[10..header_end])
        .map_err(|_| NpyError::Header("header is not utf-8".into()))?;

    let descr = dict_str_value(header, "descr")?;
    let dtype = match descr.as_str() {
        "|u1" | "<u1" | "u1" => NpyDtype::U8,
        "<f4" => NpyDtype::F32,
        "<f8" => NpyDtype::F64,
        other => return Err(NpyError::UnsupportedDtype(other.to_string()).into()),
    };
    match dict_raw_value(header, "fortran_order")?.as_str() {
        "False" => {}
        "True" => return Err(NpyError::FortranOrder.into()),
        other => return Err(NpyError::Header(format!("bad fortran_order {other:?}")).into()),
    }
    let shape = parse_shape(&dict_raw_value(header, "shape")?)?;

    let count: usize = shape.iter().product();
    let expected = count * dtype.item_size();
    let payload = &bytes[header_end..];
    if payload.len() < expected {
        return Err(NpyError::Truncated {
            expected,
            got: payload.len(),
        }
        .into());
    }
    let payload = &payload[..expected];
    let data = match dtype {
        NpyDtype::U8 => NpyData::U8(payload.to_vec()),
        NpyDtype::F32 => NpyData::F32(
            payload
                .chunks_exact(4)
                .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
                .collect(),
        ),
        NpyDtype::F64 => NpyData::F64(
            payload
                .chunks_exact(8)
                .map(|c| f64::from_le_bytes([c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7]]))
                .collect(),
        ),
    };
    Ok(NpyArray { shape, data })
}

/// Writes a version-1.0 `.npy` file.
pub fn write_npy(path: &Path, array: &NpyArray) -> Result<()> {
    let count: usize = array.shape.iter().product();
    assert_eq!(count, array.data.len(), "shape does not match data length");
    let shape_str = match array.shape.len() {
        1 => format!("({},)", array.shape[0]),
        _ => format!(
            "({})",
            array.shape.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
        ),
    };
    let mut header = format!(
        "{{'descr': '{}', 'fortran_order': False, 'shape': {}, }}",
        array.data.dtype().descr(),
        shape_str
    );
    // Pad so that magic + version + len + header is a multiple of 64,
    // ending in newline.
    let unpadded = 10 + header.len() + 1;
    let padding = (64 - unpadded % 64) % 64;
    header.push_str(&" ".repeat(padding));
    header.push('\n');

    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    f.write_all(MAGIC)?;
    f.write_all(&[1, 0])?;
    f.write_all(&(header.len() as u16).to_le_bytes())?;
    f.write_all(header.as_bytes())?;
    match &array.data {
        NpyData::U8(v) => f.write_all(v)?,
        NpyData::F32(v) => {
            for x in v {
                f.write_all(&x.to_le_bytes())?;
            }
        }
        NpyData::F64(v) => {
            for x in v {
                f.write_all(&x.to_le_bytes())?;
            }
        }
    }
    Ok(())
}

/// Extracts the raw (unquoted) value of `key` from a python dict literal.
fn dict_raw_value(header: &str, key: &str) -> std::result::Result<String, NpyError> {
    let pat = format!("'{key}':");
    let start = header
        .find(&pat)
        .ok_or_else(|| NpyError::Header(format!("missing key {key:?}")))?
        + pat.len();
    let rest = header[start..].trim_start();
    let end = if rest.starts_with('(') {
        rest.find(')').map(|i| i + 1)
    } else {
        rest.find([',', '}'])
    }
    .ok_or_else(|| NpyError::Header(format!("unterminated value for {key:?}")))?;
    Ok(rest[..end].trim().to_string())
}

fn dict_str_value(header: &str, key: &str) -> std::result::Result<String, NpyError> {
    let raw = dict_raw_value(header, key)?;
    let trimmed = raw.trim_matches(|c| c == '\'' || c == '"');
    Ok(trimmed.to_string())
}

fn parse_shape(raw: &str) -> std::result::Result<Vec<usize>, NpyError> {
    let inner = raw
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| NpyError::Header(format!("bad shape {raw:?}")))?;
    let mut shape = Vec::new();
    for part in inner.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        shape.push(
            part.parse::<usize>()
                .map_err(|_| NpyError::Header(format!("bad shape component {part:?}")))?,
        );
    }
    if shape.is_empty() {
        return Err(NpyError::Header("scalar arrays are not supported".into()));
    }
    Ok(shape)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn roundtrip(array: &NpyArray) -> NpyArray {
        let dir = std::env::temp_dir().join(format!("npy-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(format!("rt-{:p}.npy", array));
        write_npy(&path, array).unwrap();
        let back = load_npy(&path).unwrap();
        std::fs::remove_file(&path).unwrap();
        back
    }

    #[test]
    fn u8_binary_values_roundtrip() {
        let array = NpyArray {
            shape: vec![2, 2],
            data: NpyData::U8(vec![0, 255, 255, 0]),
        };
        let back = roundtrip(&array);
        assert_eq!(back.shape, vec![2, 2]);
        match back.data {
            NpyData::U8(v) => assert_eq!(v, vec![0, 255, 255, 0]),
            _ => panic!("dtype changed"),
        }
    }

    #[test]
    fn f64_roundtrip_bits() {
        let vals = vec![0.0, -1.5, std::f64::consts::PI, 1e-300];
        let array = NpyArray {
            shape: vec![4],
            data: NpyData::F64(vals.clone()),
        };
        let back = roundtrip(&array);
        match back.data {
            NpyData::F64(v) => {
                for (a, b) in v.iter().zip(&vals) {
                    assert_eq!(a.to_bits(), b.to_bits());
                }
            }
            _ => panic!("dtype changed"),
        }
    }

    #[test]
    fn bad_magic_is_structured_error() {
        let err = parse_npy(b"not an npy file at all").unwrap_err();
        assert!(matches!(err, Error::Npy(NpyError::BadMagic)));
    }

    #[test]
    fn unsupported_version() {
        let mut bytes = b"\x93NUMPY".to_vec();
        bytes.extend_from_slice(&[2, 0, 10, 0]);
        bytes.extend_from_slice(&[b' '; 10]);
        let err = parse_npy(&bytes).unwrap_err();
        assert!(matches!(err, Error::Npy(NpyError::UnsupportedVersion(2, 0))));
    }

    #[test]
    fn fortran_order_rejected() {
        let header = "{'descr': '|u1', 'fortran_order': True, 'shape': (2,), }";
        let mut bytes = b"\x93NUMPY".to_vec();
        bytes.extend_from_slice(&[1, 0]);
        bytes.extend_from_slice(&(header.len() as u16).to_le_bytes());
        bytes.extend_from_slice(header.as_bytes());
        bytes.extend_from_slice(&[0, 1]);
        let err = parse_npy(&bytes).unwrap_err();
        assert!(matches!(err, Error::Npy(NpyError::FortranOrder)));
    }

    #[test]
    fn truncated_payload() {
        let array = NpyArray {
            shape: vec![4],
            data: NpyData::F32(vec![1.0, 2.0, 3.0, 4.0]),
        };
        let dir = std::env::temp_dir();
        let path = dir.join(format!("npy-trunc-{}.npy", std::process::id()));
        write_npy(&path, &array).unwrap();
        let mut bytes = std::fs::read(&path).unwrap();
        std::fs::remove_file(&path).unwrap();
        bytes.truncate(bytes.len() - 5);
        let err = parse_npy(&bytes).unwrap_err();
        assert!(matches!(err, Error::Npy(NpyError::Truncated { .. })));
    }

    #[test]
    fn unsupported_dtype() {
        let header = "{'descr': '<i4', 'fortran_order': False, 'shape': (1,), }";
        let mut bytes = b"\x93NUMPY".to_vec();
        bytes.extend_from_slice(&[1, 0]);
        bytes.extend_from_slice(&(header.len() as u16).to_le_bytes());
        bytes.extend_from_slice(header.as_bytes());
        bytes.extend_from_slice(&[0; 4]);
        let err = parse_npy(&bytes).unwrap_err();
        assert!(matches!(err, Error::Npy(NpyError::UnsupportedDtype(_))));
    }
}
