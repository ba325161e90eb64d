//! Model parameter resolution: command-line flags over an optional
//! `key = value` file over the built-in defaults.

use std::path::Path;

use clap::Args;
use fsr::{FsrParams, OrderMode};

use crate::CliError;

#[derive(Args, Debug, Default, Clone)]
pub struct ModelArgs {
    /// key=value file with model parameters; flags take precedence
    #[arg(long, value_name = "FILE")]
    pub config: Option<std::path::PathBuf>,
    /// Block size in pixels
    #[arg(long)]
    pub block: Option<usize>,
    /// Border width in pixels
    #[arg(long)]
    pub border: Option<usize>,
    /// Transform size, `N` or `RxC`
    #[arg(long, value_parser = parse_fft)]
    pub fft: Option<(usize, usize)>,
    /// Iterations per block
    #[arg(long)]
    pub iters: Option<usize>,
    /// Spatial weight decay
    #[arg(long)]
    pub rho: Option<f64>,
    /// Orthogonality deficiency compensation
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Weight of previously reconstructed pixels
    #[arg(long)]
    pub delta: Option<f64>,
    /// Disable the frequency prior
    #[arg(long)]
    pub no_freq_weight: bool,
    /// Block order
    #[arg(long, value_parser = parse_order)]
    pub order: Option<OrderMode>,
}

fn parse_fft(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid transform size '{s}'"));
    match s.split_once(['x', 'X']) {
        Some((r, c)) => Ok((num(r)?, num(c)?)),
        None => num(s).map(|n| (n, n)),
    }
}

fn parse_order(s: &str) -> Result<OrderMode, String> {
    s.parse()
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s {
        "true" | "on" | "yes" | "1" => Ok(true),
        "false" | "off" | "no" | "0" => Ok(false),
        _ => Err(format!("invalid boolean '{s}'")),
    }
}

/// Applies `key = value` lines to `params`. Blank lines and `#` comments
/// are ignored.
pub fn apply_config(params: &mut FsrParams, text: &str) -> Result<(), String> {
    for (number, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |e: String| format!("line {}: {e}", number + 1);
        let (key, value) = line.split_once('=').ok_or_else(|| at(format!("expected key = value, got '{line}'")))?;
        let (key, value) = (key.trim(), value.trim());
        let int = || value.parse::<usize>().map_err(|_| at(format!("invalid integer '{value}' for {key}")));
        let real = || value.parse::<f64>().map_err(|_| at(format!("invalid number '{value}' for {key}")));
        match key {
            "block" => params.block_size = int()?,
            "border" => params.border_width = int()?,
            "fft" => (params.transform_rows, params.transform_cols) = parse_fft(value).map_err(at)?,
            "iters" => params.iterations = int()?,
            "rho" => params.decay = real()?,
            "gamma" => params.gamma = real()?,
            "delta" => params.reuse = real()?,
            "freq-weight" => params.frequency_weighting = parse_bool(value).map_err(at)?,
            "order" => params.order = parse_order(value).map_err(at)?,
            other => return Err(at(format!("unknown key '{other}'"))),
        }
    }
    Ok(())
}

impl ModelArgs {
    pub fn resolve(&self) -> Result<FsrParams, CliError> {
        let mut p = FsrParams::default();
        if let Some(path) = &self.config {
            let text = read_text(path)?;
            apply_config(&mut p, &text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        }
        if let Some(v) = self.block {
            p.block_size = v;
        }
        if let Some(v) = self.border {
            p.border_width = v;
        }
        if let Some((r, c)) = self.fft {
            (p.transform_rows, p.transform_cols) = (r, c);
        }
        if let Some(v) = self.iters {
            p.iterations = v;
        }
        if let Some(v) = self.rho {
            p.decay = v;
        }
        if let Some(v) = self.gamma {
            p.gamma = v;
        }
        if let Some(v) = self.delta {
            p.reuse = v;
        }
        if self.no_freq_weight {
            p.frequency_weighting = false;
        }
        if let Some(v) = self.order {
            p.order = v;
        }
        p.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(p)
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_lines() {
        let mut p = FsrParams::default();
        apply_config(&mut p, "# table\n\nblock = 2\nfft=16x24  # note\ngamma = 1.25\nfreq-weight = off\norder = line-scan\n")
            .unwrap();
        assert_eq!((p.block_size, p.transform_rows, p.transform_cols), (2, 16, 24));
        assert_eq!(p.gamma, 1.25);
        assert!(!p.frequency_weighting);
        assert_eq!(p.order, OrderMode::LineScan);
        assert_eq!(p.border_width, 14);
    }

    #[test]
    fn config_errors_name_the_line() {
        let mut p = FsrParams::default();
        assert_eq!(apply_config(&mut p, "block = 4\nwidth = 3").unwrap_err(), "line 2: unknown key 'width'");
        assert!(apply_config(&mut p, "iters = many").unwrap_err().starts_with("line 1: invalid integer"));
        assert!(apply_config(&mut p, "rho").is_err());
    }

    #[test]
    fn flags_override_config() {
        let dir = std::env::temp_dir().join(format!("fsr-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("model.cfg");
        std::fs::write(&path, "iters = 20\nrho = 0.6\n").unwrap();
        let args = ModelArgs { config: Some(path), iters: Some(7), ..Default::default() };
        let p = args.resolve().unwrap();
        assert_eq!((p.iterations, p.decay, p.gamma), (7, 0.6, 0.5));
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn fft_sizes() {
        assert_eq!(parse_fft("32").unwrap(), (32, 32));
        assert_eq!(parse_fft("16x8").unwrap(), (16, 8));
        assert!(parse_fft("x").is_err());
    }
}
