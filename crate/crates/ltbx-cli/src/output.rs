//! Artifact writing: atomic file output, CSV/JSON emitters with the config
//! hash stamped into every header, and the LTBX dense binary matrix format.
//!
//! Atomicity: content goes to a `.tmp~` sibling first and is renamed into
//! place, so an interrupted run never leaves a partial file at a declared
//! path. Floats print with 17 significant digits, which round-trips f64
//! exactly and keeps artifacts byte-identical across runs.

use ltbx_fock::CMatrix;
use std::io::Write;
use std::path::{Path, PathBuf};

pub fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

pub fn atomic_write(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    let mut tmp: PathBuf = path.to_path_buf();
    let mut name = tmp
        .file_name()
        .map(|s| s.to_os_string())
        .unwrap_or_default();
    name.push(".tmp~");
    tmp.set_file_name(name);
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

/// CSV with a `# ltbx ...` header carrying the config hash. Extra `#`
/// comment lines stay in the header block, before the column row (which is
/// emitted lazily at the first data row).
pub struct CsvWriter {
    buf: String,
    columns: String,
    columns_written: bool,
}

impl CsvWriter {
    pub fn new(command: &str, config_hash: &str, columns: &[&str]) -> Self {
        CsvWriter {
            buf: format!("# ltbx {} config_hash={}\n", command, config_hash),
            columns: columns.join(","),
            columns_written: false,
        }
    }

    pub fn comment(&mut self, text: &str) {
        assert!(!self.columns_written, "comments belong in the header block");
        self.buf.push_str(&format!("# {}\n", text));
    }

    pub fn row(&mut self, cells: &[String]) {
        if !self.columns_written {
            self.buf.push_str(&self.columns);
            self.buf.push('\n');
            self.columns_written = true;
        }
        self.buf.push_str(&cells.join(","));
        self.buf.push('\n');
    }

    pub fn finish(self, path: &Path) -> std::io::Result<()> {
        atomic_write(path, self.into_string().as_bytes())
    }

    pub fn into_string(mut self) -> String {
        if !self.columns_written {
            self.buf.push_str(&self.columns);
            self.buf.push('\n');
        }
        self.buf
    }
}

pub fn write_json(path: &Path, value: &serde_json::Value) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("json serializes");
    atomic_write(path, format!("{}\n", text).as_bytes())
}

/// LTBX dense binary: 16-byte header = magic `LTBX`, u32 N, u32 kind,
/// u32 reserved (zero), then row-major little-endian f64s. kind 0: real
/// (N² doubles), kind 1: complex interleaved re,im (2N² doubles).
pub mod ltbx_binary {
    use super::*;
    use num_complex::Complex64;

    pub const KIND_REAL: u32 = 0;
    pub const KIND_COMPLEX: u32 = 1;

    pub fn write_matrix(path: &Path, m: &CMatrix) -> std::io::Result<()> {
        let complex = (0..m.n).any(|i| (0..m.n).any(|j| m.get(i, j).im != 0.0));
        let kind = if complex { KIND_COMPLEX } else { KIND_REAL };
        let mut bytes = Vec::with_capacity(16 + 8 * m.n * m.n * (kind as usize + 1));
        bytes.extend_from_slice(b"LTBX");
        bytes.extend_from_slice(&(m.n as u32).to_le_bytes());
        bytes.extend_from_slice(&kind.to_le_bytes());
        bytes.extend_from_slice(&0u32.to_le_bytes());
        for i in 0..m.n {
            for j in 0..m.n {
                let v = m.get(i, j);
                bytes.extend_from_slice(&v.re.to_le_bytes());
                if kind == KIND_COMPLEX {
                    bytes.extend_from_slice(&v.im.to_le_bytes());
                }
            }
        }
        atomic_write(path, &bytes)
    }

    pub fn read_matrix(path: &Path) -> std::io::Result<CMatrix> {
        let bytes = std::fs::read(path)?;
        let fail = |msg: &str| std::io::Error::new(std::io::ErrorKind::InvalidData, msg);
        if bytes.len() < 16 || &bytes[0..4] != b"LTBX" {
            return Err(fail("not an LTBX file"));
        }
        let n = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
        let kind = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
        let per_entry = match kind {
            KIND_REAL => 8,
            KIND_COMPLEX => 16,
            _ => return Err(fail("unknown LTBX kind")),
        };
        if bytes.len() != 16 + n * n * per_entry {
            return Err(fail("LTBX payload size mismatch"));
        }
        let mut m = CMatrix::zeros(n);
        let mut off = 16;
        for i in 0..n {
            for j in 0..n {
                let re = f64::from_le_bytes(bytes[off..off + 8].try_into().unwrap());
                off += 8;
                let im = if kind == KIND_COMPLEX {
                    let v = f64::from_le_bytes(bytes[off..off + 8].try_into().unwrap());
                    off += 8;
                    v
                } else {
                    0.0
                };
                m.set(i, j, Complex64::new(re, im));
            }
        }
        Ok(m)
    }
}

/// Matrix as CSV rows `(row, col, re, im)`.
pub fn matrix_csv(command: &str, config_hash: &str, m: &CMatrix) -> String {
    let mut w = CsvWriter::new(command, config_hash, &["row", "col", "re", "im"]);
    for i in 0..m.n {
        for j in 0..m.n {
            let v = m.get(i, j);
            w.row(&[i.to_string(), j.to_string(), fmt_f64(v.re), fmt_f64(v.im)]);
        }
    }
    w.into_string()
}
