use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use clap::ValueEnum;
use fsr::pnm::{read_pbm, read_pgm, write_pbm, write_pgm};
use fsr::spectral::mask_grid;
use fsr::{FsrParams, GrayImage, Grid, SampleMask};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Method {
    /// Full frequency selective reconstruction
    Fsr,
    /// Frequency prior off, line-scan order
    Fse,
    Nearest,
    Linear,
    Bandlimited,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Fsr => "fsr",
            Method::Fse => "fse",
            Method::Nearest => "nearest",
            Method::Linear => "linear",
            Method::Bandlimited => "bandlimited",
        }
    }
}

pub fn load_image(path: &Path) -> Result<GrayImage, CliError> {
    read_pgm(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

pub fn load_mask(path: &Path) -> Result<SampleMask, CliError> {
    read_pbm(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

pub fn save_image(path: &Path, image: &GrayImage) -> Result<(), CliError> {
    write_pgm(path, image).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

pub fn save_mask(path: &Path, mask: &SampleMask) -> Result<(), CliError> {
    write_pbm(path, mask).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

pub fn check_size(image: &GrayImage, mask: &SampleMask) -> Result<(), CliError> {
    if image.width() != mask.width() || image.height() != mask.height() {
        return Err(CliError::Data(format!(
            "image is {}x{} but mask is {}x{}",
            image.width(),
            image.height(),
            mask.width(),
            mask.height()
        )));
    }
    Ok(())
}

/// Runs one reconstruction method. `model` is used by `fsr` only, with the
/// ablation switches forced for `fse`.
pub fn run_method(
    method: Method,
    s_nr: &GrayImage,
    mask: &SampleMask,
    model: &FsrParams,
    bl_iterations: usize,
) -> fsr::Result<GrayImage> {
    match method {
        Method::Fsr => fsr::reconstruct_image(s_nr, mask, model),
        Method::Fse => {
            let p = FsrParams { frequency_weighting: false, order: fsr::OrderMode::LineScan, ..model.clone() };
            fsr::reconstruct_image(s_nr, mask, &p)
        }
        Method::Nearest => fsr::nearest_fill(s_nr, mask),
        Method::Linear => fsr::linear_interpolate(s_nr, mask).map(|(image, _)| image),
        Method::Bandlimited => fsr::band_limited_reconstruct(s_nr, mask, bl_iterations),
    }
}

/// Centered `log(1 + |Q|)` of the mask spectrum, scaled to `[0, 255]`.
pub fn spectrum_image(mask: &SampleMask) -> GrayImage {
    let q = fsr::mask_spectrum::<f64>(&mask_grid(mask));
    let (rows, cols) = (q.rows(), q.cols());
    let shifted = Grid::from_fn(rows, cols, |m, n| q[((m + rows / 2) % rows, (n + cols / 2) % cols)].norm().ln_1p());
    let peak = shifted.as_slice().iter().fold(0.0f64, |a, &v| a.max(v));
    let scale = if peak > 0.0 { 255.0 / peak } else { 0.0 };
    GrayImage::new(cols, rows, shifted.as_slice().iter().map(|v| v * scale).collect()).expect("finite spectrum")
}

pub fn format_db(value: f64) -> String {
    if value.is_infinite() {
        "inf".to_string()
    } else {
        format!("{value:.4}")
    }
}

pub struct SweepRow {
    pub density: f64,
    pub method: Method,
    pub psnr: f64,
    pub ssim: f64,
    pub seconds: f64,
}

pub fn sweep_csv(rows: &mut [SweepRow]) -> String {
    rows.sort_by(|a, b| a.density.total_cmp(&b.density).then(a.method.name().cmp(b.method.name())));
    let mut out = String::from("density,method,psnr_db,ssim,seconds\n");
    for r in rows.iter() {
        let _ = writeln!(out, "{},{},{},{:.6},{:.3}", r.density, r.method.name(), format_db(r.psnr), r.ssim, r.seconds);
    }
    out
}

pub fn timed<R>(f: impl FnOnce() -> R) -> (R, f64) {
    let start = Instant::now();
    let r = f();
    (r, start.elapsed().as_secs_f64())
}
