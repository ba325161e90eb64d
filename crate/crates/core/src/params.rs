//! Model generation parameters.

use std::fmt;

use crate::error::{invalid, Result};
use crate::scalar::Scalar;
use crate::weighting::{check_decay, check_reuse};

/// Order in which image blocks are visited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum OrderMode {
    /// Decreasing local sample density.
    #[default]
    Density,
    /// Row-major block order.
    LineScan,
}

impl fmt::Display for OrderMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderMode::Density => "density",
            OrderMode::LineScan => "line-scan",
        })
    }
}

impl std::str::FromStr for OrderMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "density" => Ok(OrderMode::Density),
            "line-scan" | "linescan" => Ok(OrderMode::LineScan),
            other => Err(format!("unknown order mode '{other}' (expected density or line-scan)")),
        }
    }
}

/// Knobs of the block-wise sparse model generation.
#[derive(Clone, Debug, PartialEq)]
pub struct Params<T> {
    /// Edge length of the square blocks the image is split into.
    pub block_size: usize,
    /// Width of the neighborhood stripe around each block.
    pub border_width: usize,
    /// Transform rows `M` of the reconstruction area.
    pub transform_rows: usize,
    /// Transform columns `N` of the reconstruction area.
    pub transform_cols: usize,
    /// Number of basis functions added per block.
    pub iterations: usize,
    /// Spatial weight decay, in `(0, 1)`.
    pub decay: T,
    /// Orthogonality deficiency compensation (step fraction), in `(0, 2)`.
    pub gamma: T,
    /// Weight factor of previously reconstructed pixels, in `[0, 1]`.
    pub reuse: T,
    /// Apply the low-pass frequency prior during basis selection.
    pub frequency_weighting: bool,
    pub order: OrderMode,
}

impl<T: Scalar> Default for Params<T> {
    fn default() -> Self {
        Self {
            block_size: 4,
            border_width: 14,
            transform_rows: 32,
            transform_cols: 32,
            iterations: 100,
            decay: T::lit(0.7),
            gamma: T::lit(0.5),
            reuse: T::lit(0.5),
            frequency_weighting: true,
            order: OrderMode::Density,
        }
    }
}

impl<T: Scalar> Params<T> {
    /// Ablation matching the earlier extrapolation scheme: spatial weighting
    /// and step compensation, but no frequency prior and line-scan order.
    pub fn optimized_fse() -> Self {
        Self { frequency_weighting: false, order: OrderMode::LineScan, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.block_size == 0 {
            return Err(invalid("block", "block size must be at least 1"));
        }
        if self.transform_rows == 0 || self.transform_cols == 0 {
            return Err(invalid("fft", "transform size must be at least 1x1"));
        }
        let span = self.block_size + 2 * self.border_width;
        let limit = self.transform_rows.min(self.transform_cols);
        if span > limit {
            return Err(invalid(
                "border",
                format!(
                    "block size {} + 2 x border width {} = {span} exceeds transform size {limit}",
                    self.block_size, self.border_width
                ),
            ));
        }
        check_decay(self.decay)?;
        check_reuse(self.reuse)?;
        if !(self.gamma > T::zero() && self.gamma < T::lit(2.0)) {
            return Err(invalid("gamma", format!("{} outside the valid range (0, 2)", self.gamma)));
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Display for Params<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "block size        {0}x{0}", self.block_size)?;
        writeln!(f, "border width      {}", self.border_width)?;
        writeln!(f, "transform size    {}x{}", self.transform_rows, self.transform_cols)?;
        writeln!(f, "iterations        {}", self.iterations)?;
        writeln!(f, "rho (decay)       {}", self.decay)?;
        writeln!(f, "gamma             {}", self.gamma)?;
        writeln!(f, "delta (reuse)     {}", self.reuse)?;
        writeln!(f, "freq. weighting   {}", if self.frequency_weighting { "on" } else { "off" })?;
        write!(f, "order             {}", self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let p = Params::<f64>::default();
        p.validate().unwrap();
        assert_eq!((p.block_size, p.border_width, p.transform_rows, p.iterations), (4, 14, 32, 100));
        assert_eq!((p.decay, p.gamma, p.reuse), (0.7, 0.5, 0.5));
    }

    #[test]
    fn rejects_invalid_combinations() {
        let bad = |f: fn(&mut Params<f64>)| {
            let mut p = Params::default();
            f(&mut p);
            p.validate().is_err()
        };
        assert!(bad(|p| p.border_width = 15));
        assert!(bad(|p| p.gamma = 2.5));
        assert!(bad(|p| p.gamma = 0.0));
        assert!(bad(|p| p.decay = 1.0));
        assert!(bad(|p| p.reuse = 1.2));
        assert!(bad(|p| p.block_size = 0));
        let err = {
            let mut p = Params::<f64>::default();
            p.gamma = 2.5;
            p.validate().unwrap_err().to_string()
        };
        assert!(err.contains("(0, 2)"), "{err}");
    }
}
