//! `fsr`: resample images from non-regular sample positions.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fsr::{FsrError, FsrParams};

use commands::*;
use config::ModelArgs;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl From<FsrError> for CliError {
    fn from(e: FsrError) -> Self {
        match e {
            FsrError::InvalidParameter { .. } => CliError::Usage(e.to_string()),
            other => CliError::Data(other.to_string()),
        }
    }
}

/// Image resampling from non-regular samples by frequency selective
/// reconstruction. Images are 8-bit PGM (P5); masks are PBM (P1/P4) where
/// bit 1 marks an available sample.
#[derive(Parser, Debug)]
#[command(name = "fsr", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw a seeded random mask and keep only the masked pixels
    Sample {
        #[arg(long = "in")]
        input: PathBuf,
        /// Fraction of pixels kept
        #[arg(long)]
        density: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out_img: PathBuf,
        #[arg(long)]
        out_mask: PathBuf,
    },
    /// Reconstruct the full image from a subsampled one and its mask
    Reconstruct {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        mask: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Reconstruct with a reference method
    Baseline {
        #[arg(long, value_enum)]
        method: BaselineMethod,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        mask: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Iterations of the band-limited method
        #[arg(long, default_value_t = 100)]
        iters: usize,
    },
    /// Print PSNR and SSIM of a test image against a reference
    Metrics {
        #[arg(long = "ref")]
        reference: PathBuf,
        #[arg(long)]
        test: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        out: Format,
    },
    /// Write the zoneplate test image
    Zoneplate {
        #[arg(long, default_value_t = 256)]
        size: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the centered log-magnitude spectrum of a mask
    Spectrum {
        #[arg(long)]
        mask: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare methods over several densities and write a CSV report
    Sweep {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.25,0.5,0.75,0.9")]
        densities: Vec<f64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "fsr,linear,bandlimited")]
        methods: Vec<Method>,
        /// Iterations of the band-limited method
        #[arg(long, default_value_t = 100)]
        bl_iters: usize,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        model: ModelArgs,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BaselineMethod {
    Nearest,
    Linear,
    Bandlimited,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Sample { input, density, seed, out_img, out_mask } => {
            let image = load_image(&input)?;
            let mask = fsr::random_mask(image.width(), image.height(), density, seed)?;
            save_image(&out_img, &fsr::subsample(&image, &mask)?)?;
            save_mask(&out_mask, &mask)?;
            println!("kept {} of {} pixels", mask.count(), image.width() * image.height());
        }
        Command::Reconstruct { input, mask, out, model } => {
            let params = model.resolve()?;
            let (s_nr, mask) = (load_image(&input)?, load_mask(&mask)?);
            check_size(&s_nr, &mask)?;
            println!("{params}");
            save_image(&out, &fsr::reconstruct_image(&s_nr, &mask, &params)?)?;
        }
        Command::Baseline { method, input, mask, out, iters } => {
            let (s_nr, mask) = (load_image(&input)?, load_mask(&mask)?);
            check_size(&s_nr, &mask)?;
            let method = match method {
                BaselineMethod::Nearest => Method::Nearest,
                BaselineMethod::Linear => Method::Linear,
                BaselineMethod::Bandlimited => Method::Bandlimited,
            };
            save_image(&out, &run_method(method, &s_nr, &mask, &FsrParams::default(), iters)?)?;
        }
        Command::Metrics { reference, test, out: Format::Csv } => {
            let (a, b) = (load_image(&reference)?, load_image(&test)?);
            println!("psnr_db,ssim");
            println!("{},{:.6}", format_db(fsr::psnr(&a, &b)?), fsr::ssim(&a, &b)?);
        }
        Command::Zoneplate { size, out } => save_image(&out, &fsr::zoneplate(size)?)?,
        Command::Spectrum { mask, out } => save_image(&out, &spectrum_image(&load_mask(&mask)?))?,
        Command::Sweep { input, densities, seed, methods, bl_iters, out, model } => {
            let params = model.resolve()?;
            let image = load_image(&input)?;
            let mut rows = Vec::new();
            for &density in &densities {
                let mask = fsr::random_mask(image.width(), image.height(), density, seed)?;
                let s_nr = fsr::subsample(&image, &mask)?;
                for &method in &methods {
                    let (result, seconds) = timed(|| run_method(method, &s_nr, &mask, &params, bl_iters));
                    let result = result?;
                    let (psnr, ssim) = (fsr::psnr(&image, &result)?, fsr::ssim(&image, &result)?);
                    eprintln!("{density} {} {} dB", method.name(), format_db(psnr));
                    rows.push(SweepRow { density, method, psnr, ssim, seconds });
                }
            }
            std::fs::write(&out, sweep_csv(&mut rows)).map_err(|e| CliError::Data(format!("{}: {e}", out.display())))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
