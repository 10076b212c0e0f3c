//! Plain-text frame file format (`FRM1`).
//!
//! A frame file is line-oriented ASCII:
//!
//! ```text
//! FRM1 <dim> <count> <R|C>
//! <re_1> <im_1> <re_2> <im_2> ... <re_dim> <im_dim>     (count lines, one per vector)
//! ```
//!
//! The header names the ambient dimension, the number of vectors, and the
//! scalar field tag.  Each following line holds one frame vector as `2*dim`
//! whitespace-separated decimal floats, real and imaginary part
//! interleaved.  Writers emit 17 significant digits so values round-trip
//! exactly through the decimal representation.
//!
//! Loading is forgiving about norms: columns that are not unit length within
//! [`crate::frame::UNIT_NORM_TOLERANCE`] are normalized, and the returned
//! [`LoadedFrame::normalized`] flag reports that this happened so callers
//! can warn.  Everything else — a malformed header, wrong entry counts,
//! non-finite values, nonzero imaginary parts under an `R` tag, zero
//! columns — is a hard error.
//!
//! # Example
//!
//! ```
//! use framekit_core::frame::{Field, Frame};
//! use framekit_core::frm;
//! use num_complex::Complex64;
//!
//! let e0 = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
//! let e1 = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
//! let frame = Frame::new(2, Field::Real, vec![e0, e1]).unwrap();
//!
//! let mut text = Vec::new();
//! frm::write_frame(&frame, &mut text).unwrap();
//! let loaded = frm::read_frame(text.as_slice()).unwrap();
//! assert_eq!(loaded.frame.dim(), 2);
//! assert!(!loaded.normalized);
//! ```

use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frame::{Field, Frame, UNIT_NORM_TOLERANCE};
use crate::linalg::vector_norm;

/// Magic token opening every frame file.
const MAGIC: &str = "FRM1";

/// Result of reading a frame file.
#[derive(Clone, Debug)]
pub struct LoadedFrame {
    /// The parsed frame.
    pub frame: Frame,
    /// Whether any column had to be rescaled to unit norm while loading.
    pub normalized: bool,
}

/// Write `frame` in `FRM1` format.
pub fn write_frame<W: Write>(frame: &Frame, mut writer: W) -> Result<()> {
    writeln!(writer, "{MAGIC} {} {} {}", frame.dim(), frame.count(), frame.field())?;
    let mut line = String::new();
    for col in frame.columns() {
        line.clear();
        for (i, z) in col.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            // 17 significant digits: enough for f64 round trips.
            line.push_str(&format!("{:.16e} {:.16e}", z.re, z.im));
        }
        writeln!(writer, "{line}")?;
    }
    Ok(())
}

/// Read a frame in `FRM1` format.
pub fn read_frame<R: Read>(reader: R) -> Result<LoadedFrame> {
    let mut lines = BufReader::new(reader).lines();
    let header = match lines.next() {
        Some(line) => line?,
        None => return Err(Error::Parse { line: 1, message: "empty file".into() }),
    };
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 4 || tokens[0] != MAGIC {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header '{MAGIC} <dim> <count> <R|C>', got '{header}'"),
        });
    }
    let dim: usize = tokens[1]
        .parse()
        .map_err(|_| Error::Parse { line: 1, message: format!("bad dimension '{}'", tokens[1]) })?;
    let count: usize = tokens[2]
        .parse()
        .map_err(|_| Error::Parse { line: 1, message: format!("bad vector count '{}'", tokens[2]) })?;
    let field = Field::from_tag(tokens[3])
        .ok_or_else(|| Error::Parse { line: 1, message: format!("bad field tag '{}'", tokens[3]) })?;

    let mut columns = Vec::with_capacity(count);
    let mut normalized = false;
    for k in 0..count {
        let line_no = k + 2;
        let line = match lines.next() {
            Some(line) => line?,
            None => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected {count} vector lines, file ends after {k}"),
                })
            }
        };
        let values: std::result::Result<Vec<f64>, _> = line.split_whitespace().map(str::parse::<f64>).collect();
        let values = values.map_err(|e| Error::Parse { line: line_no, message: format!("bad float: {e}") })?;
        if values.len() != 2 * dim {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {} floats, got {}", 2 * dim, values.len()),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parse { line: line_no, message: "non-finite value".into() });
        }
        let mut col: Vec<Complex64> =
            values.chunks_exact(2).map(|pair| Complex64::new(pair[0], pair[1])).collect();
        let norm = vector_norm(&col);
        if norm == 0.0 {
            return Err(Error::Parse { line: line_no, message: "zero vector cannot be normalized".into() });
        }
        if (norm - 1.0).abs() > UNIT_NORM_TOLERANCE {
            col.iter_mut().for_each(|z| *z /= norm);
            normalized = true;
        }
        columns.push(col);
    }
    if let Some(extra) = lines.next() {
        let extra = extra?;
        if !extra.trim().is_empty() {
            return Err(Error::Parse {
                line: count + 2,
                message: format!("unexpected trailing content '{}'", extra.trim()),
            });
        }
    }
    let frame = Frame::new(dim, field, columns)?;
    Ok(LoadedFrame { frame, normalized })
}

/// Write a frame to `path`.
pub fn save(frame: &Frame, path: impl AsRef<Path>) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_frame(frame, std::io::BufWriter::new(file))
}

/// Read a frame from `path`.
pub fn load(path: impl AsRef<Path>) -> Result<LoadedFrame> {
    let file = std::fs::File::open(path)?;
    read_frame(file)
}
