//! File formats: raw little-endian float64 payloads with JSON sidecars,
//! a 16-bit PGM rendering for quick inspection, and CSV reports.
//!
//! An image or sinogram is persisted as a triplet/pair sharing one stem:
//! `<stem>.f64` (payload), `<stem>.json` (header), and for images also
//! `<stem>.pgm`.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{AcquisitionCurve, CurveKind};
use crate::phantom::RasterImage;
use crate::scalar::Scalar;
use crate::sinogram::{uniform_grid, Sinogram};

#[derive(Debug, Serialize, Deserialize)]
pub struct ImageHeader {
    pub n: usize,
    pub extent: f64,
    pub vmin: f64,
    pub vmax: f64,
    pub description: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveHeader {
    UnitCircle,
    Ellipse { a_axis: f64, b_axis: f64 },
    Polar,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SinogramHeader {
    pub n_a: usize,
    pub n_r: usize,
    pub s_start: f64,
    pub s_end: f64,
    pub r_max: f64,
    pub curve: CurveHeader,
}

fn with_ext(stem: &Path, ext: &str) -> PathBuf {
    let mut p = stem.as_os_str().to_os_string();
    p.push(ext);
    PathBuf::from(p)
}

fn fmt_err(path: &Path, why: impl Into<String>) -> Error {
    Error::Format {
        path: path.display().to_string(),
        why: why.into(),
    }
}

fn write_payload<T: Scalar>(path: &Path, values: &[T]) -> Result<()> {
    let mut bytes = Vec::with_capacity(values.len() * 8);
    for v in values {
        bytes.extend_from_slice(&v.as_f64().to_le_bytes());
    }
    fs::write(path, bytes)?;
    Ok(())
}

fn read_payload<T: Scalar>(path: &Path, expected: usize) -> Result<Vec<T>> {
    let bytes = fs::read(path)?;
    if bytes.len() != expected * 8 {
        return Err(fmt_err(
            path,
            format!("payload is {} bytes, expected {}", bytes.len(), expected * 8),
        ));
    }
    Ok(bytes
        .chunks_exact(8)
        .map(|c| T::of(f64::from_le_bytes(c.try_into().unwrap())))
        .collect())
}

/// Write `<stem>.f64` + `<stem>.json` + `<stem>.pgm`. The raw payload is
/// never clamped; only the PGM rendering maps [vmin, vmax] to [0, 65535].
pub fn write_image<T: Scalar>(
    image: &RasterImage<T>,
    stem: &Path,
    render_range: Option<(T, T)>,
    description: &str,
) -> Result<()> {
    let (vmin, vmax) = match render_range {
        Some((a, b)) => (a.as_f64(), b.as_f64()),
        None => image.values.iter().fold(
            (f64::INFINITY, f64::NEG_INFINITY),
            |(lo, hi), &v| (lo.min(v.as_f64()), hi.max(v.as_f64())),
        ),
    };
    let header = ImageHeader {
        n: image.n,
        extent: image.extent.as_f64(),
        vmin,
        vmax,
        description: description.to_string(),
    };
    fs::write(
        with_ext(stem, ".json"),
        serde_json::to_string_pretty(&header).expect("header serializes"),
    )?;
    write_payload(&with_ext(stem, ".f64"), &image.values)?;

    let mut pgm = Vec::with_capacity(image.values.len() * 2 + 32);
    pgm.extend_from_slice(format!("P5\n{} {}\n65535\n", image.n, image.n).as_bytes());
    let span = vmax - vmin;
    for &v in &image.values {
        let level = if span <= 0.0 {
            32768u16
        } else {
            let t = ((v.as_f64() - vmin) / span).clamp(0.0, 1.0);
            (t * 65535.0 + 0.5).floor() as u16
        };
        pgm.extend_from_slice(&level.to_be_bytes());
    }
    fs::write(with_ext(stem, ".pgm"), pgm)?;
    Ok(())
}

/// Read an image written by `write_image` back from `<stem>.f64/.json`.
pub fn read_image<T: Scalar>(stem: &Path) -> Result<RasterImage<T>> {
    let json_path = with_ext(stem, ".json");
    let text = fs::read_to_string(&json_path)?;
    let header: ImageHeader =
        serde_json::from_str(&text).map_err(|e| fmt_err(&json_path, e.to_string()))?;
    let values = read_payload(&with_ext(stem, ".f64"), header.n * header.n)?;
    Ok(RasterImage {
        n: header.n,
        extent: T::of(header.extent),
        values,
    })
}

fn curve_header<T: Scalar>(curve: &AcquisitionCurve<T>, stem: &Path) -> Result<CurveHeader> {
    Ok(match curve.kind() {
        CurveKind::UnitCircle => CurveHeader::UnitCircle,
        CurveKind::Ellipse { a_axis, b_axis } => CurveHeader::Ellipse {
            a_axis: a_axis.as_f64(),
            b_axis: b_axis.as_f64(),
        },
        CurveKind::Polar => CurveHeader::Polar,
        CurveKind::TabulatedConvex(_) => {
            return Err(fmt_err(stem, "tabulated curves have no file representation"))
        }
    })
}

fn curve_from_header<T: Scalar>(h: &CurveHeader) -> Result<AcquisitionCurve<T>> {
    Ok(match h {
        CurveHeader::UnitCircle => AcquisitionCurve::unit_circle(),
        CurveHeader::Ellipse { a_axis, b_axis } => {
            AcquisitionCurve::ellipse(T::of(*a_axis), T::of(*b_axis))?
        }
        CurveHeader::Polar => AcquisitionCurve::polar(),
    })
}

/// Write `<stem>.f64` + `<stem>.json` for a sinogram.
pub fn write_sinogram<T: Scalar>(sino: &Sinogram<T>, stem: &Path) -> Result<()> {
    let header = SinogramHeader {
        n_a: sino.n_a(),
        n_r: sino.n_r(),
        s_start: sino.s_grid[0].as_f64(),
        s_end: sino.s_grid[sino.n_a() - 1].as_f64(),
        r_max: sino.r_max().as_f64(),
        curve: curve_header(&sino.curve, stem)?,
    };
    fs::write(
        with_ext(stem, ".json"),
        serde_json::to_string_pretty(&header).expect("header serializes"),
    )?;
    write_payload(&with_ext(stem, ".f64"), &sino.values)
}

/// Read a sinogram pair; the grids are rebuilt from the header endpoints.
pub fn read_sinogram<T: Scalar>(stem: &Path) -> Result<Sinogram<T>> {
    let json_path = with_ext(stem, ".json");
    let text = fs::read_to_string(&json_path)?;
    let header: SinogramHeader =
        serde_json::from_str(&text).map_err(|e| fmt_err(&json_path, e.to_string()))?;
    if header.n_a < 2 || header.n_r < 2 {
        return Err(fmt_err(&json_path, "need n_a >= 2 and n_r >= 2"));
    }
    if header.s_end <= header.s_start || header.r_max <= 0.0 {
        return Err(fmt_err(&json_path, "degenerate grid extents"));
    }
    let values = read_payload(&with_ext(stem, ".f64"), header.n_a * header.n_r)?;
    let s_grid = uniform_grid(T::of(header.s_start), T::of(header.s_end), header.n_a);
    let r_grid = uniform_grid(T::zero(), T::of(header.r_max), header.n_r);
    Sinogram::new(values, s_grid, r_grid, curve_from_header(&header.curve)?)
}

/// CSV with a header row, comma separators, and LF line endings.
pub fn write_csv(path: &Path, columns: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut f = fs::File::create(path)?;
    writeln!(f, "{}", columns.join(","))?;
    for row in rows {
        writeln!(f, "{}", row.join(","))?;
    }
    Ok(())
}
