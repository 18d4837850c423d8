//! Binary sample-vector format and the JSON descriptor that names a corpus
//! entry.
//!
//! Layout of the binary format (all little-endian):
//!
//! ```text
//! "FSX1"  magic, 4 bytes
//! u8      dim (1 or 2)
//! i8      K  (domain half-width exponent)
//! u32     N  (samples per axis, power of two)
//! f64 x 2 x N^dim   interleaved (re, im) samples, row-major
//! ```

use std::io::{Read as _, Write as _};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::lattice::{Grid, SampledFunction};
use crate::{CoreError, Result};

const MAGIC: &[u8; 4] = b"FSX1";

/// Grid header as serialized in descriptors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub dim: u8,
    #[serde(rename = "K")]
    pub k: i8,
    #[serde(rename = "N")]
    pub n: u32,
}

impl GridSpec {
    pub fn of(grid: &Grid) -> Self {
        GridSpec {
            dim: grid.dim() as u8,
            k: grid.halfwidth_log2() as i8,
            n: grid.samples_per_dim() as u32,
        }
    }

    pub fn to_grid(self) -> Result<Grid> {
        Grid::new(self.dim as usize, self.k as i32, self.n as usize)
    }
}

/// JSON sidecar identifying what a sample file holds.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Descriptor {
    pub corpus: String,
    pub params: serde_json::Value,
    pub grid: GridSpec,
}

pub fn write_samples<W: std::io::Write>(f: &SampledFunction, mut w: W) -> Result<()> {
    let grid = f.grid();
    w.write_all(MAGIC)?;
    w.write_all(&[grid.dim() as u8])?;
    w.write_all(&(grid.halfwidth_log2() as i8).to_le_bytes())?;
    w.write_all(&(grid.samples_per_dim() as u32).to_le_bytes())?;
    for v in f.values() {
        w.write_all(&v.re.to_le_bytes())?;
        w.write_all(&v.im.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_samples<R: std::io::Read>(mut r: R) -> Result<SampledFunction> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(CoreError::Format(format!(
            "bad magic {:?}, expected {:?}",
            magic, MAGIC
        )));
    }
    let mut head = [0u8; 6];
    r.read_exact(&mut head)?;
    let dim = head[0];
    let k = head[1] as i8;
    let n = u32::from_le_bytes([head[2], head[3], head[4], head[5]]);
    let grid = Grid::new(dim as usize, k as i32, n as usize)?;
    let mut buf = vec![0u8; grid.len() * 16];
    r.read_exact(&mut buf)?;
    let values = buf
        .chunks_exact(16)
        .map(|c| {
            Complex64::new(
                f64::from_le_bytes(c[0..8].try_into().unwrap()),
                f64::from_le_bytes(c[8..16].try_into().unwrap()),
            )
        })
        .collect();
    SampledFunction::new(grid, values)
}

pub fn save(f: &SampledFunction, path: &Path) -> Result<()> {
    write_samples(f, std::io::BufWriter::new(std::fs::File::create(path)?))
}

pub fn load(path: &Path) -> Result<SampledFunction> {
    read_samples(std::io::BufReader::new(std::fs::File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bitwise() {
        let grid = Grid::new(2, 2, 16).unwrap();
        let f = SampledFunction::from_fn(grid, |x| Complex64::new(x[0] * 1.7, x[1] - 0.3));
        let mut buf = Vec::new();
        write_samples(&f, &mut buf).unwrap();
        assert_eq!(buf.len(), 4 + 6 + 16 * grid.len());
        let back = read_samples(buf.as_slice()).unwrap();
        assert_eq!(f, back);
    }

    #[test]
    fn rejects_foreign_data() {
        assert!(matches!(
            read_samples(&b"NOPE"[..]),
            Err(CoreError::Format(_) | CoreError::Io(_))
        ));
    }

    #[test]
    fn descriptor_round_trip() {
        let d = Descriptor {
            corpus: "gaussian".into(),
            params: serde_json::json!({"a": 1.0}),
            grid: GridSpec { dim: 1, k: 4, n: 4096 },
        };
        let js = serde_json::to_string(&d).unwrap();
        assert!(js.contains("\"K\":4") && js.contains("\"N\":4096"));
        let back: Descriptor = serde_json::from_str(&js).unwrap();
        assert_eq!(back.grid, d.grid);
        assert_eq!(back.grid.to_grid().unwrap(), Grid::new(1, 4, 4096).unwrap());
    }
}
