//! Spatial confidence weights over a reconstruction area and the
//! low-pass frequency prior used during basis selection.

use crate::error::{invalid, Result};
use crate::grid::Grid;
use crate::scalar::Scalar;

/// Role of a pixel inside a reconstruction area.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AreaCategory {
    /// Originally available sample.
    Available,
    /// Unknown sample already filled in by an earlier block.
    Reconstructed,
    /// Unknown, or padding outside the image.
    Unknown,
}

/// Per-pixel weights together with the parameters that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightField<T> {
    weights: Grid<T>,
    decay: T,
    reuse: T,
}

impl<T: Scalar> WeightField<T> {
    #[inline]
    pub fn grid(&self) -> &Grid<T> {
        &self.weights
    }

    #[inline]
    pub fn decay(&self) -> T {
        self.decay
    }

    #[inline]
    pub fn reuse(&self) -> T {
        self.reuse
    }

    pub fn total(&self) -> T {
        self.weights.as_slice().iter().fold(T::zero(), |a, &w| a + w)
    }

    /// Wraps an arbitrary nonnegative weight grid. Used by tests and oracles
    /// that need weights not produced by [`spatial_weights`].
    pub fn from_grid(weights: Grid<T>) -> Result<Self> {
        if weights.as_slice().iter().any(|w| !(*w >= T::zero()) || !w.is_finite()) {
            return Err(invalid("weights", "must be finite and nonnegative"));
        }
        Ok(Self { weights, decay: T::zero(), reuse: T::zero() })
    }
}

pub(crate) fn check_decay<T: Scalar>(decay: T) -> Result<()> {
    if !(decay > T::zero() && decay < T::one()) {
        return Err(invalid("rho", format!("decay {decay} outside the open interval (0, 1)")));
    }
    Ok(())
}

pub(crate) fn check_reuse<T: Scalar>(reuse: T) -> Result<()> {
    if !(reuse >= T::zero() && reuse <= T::one()) {
        return Err(invalid("delta", format!("reuse factor {reuse} outside [0, 1]")));
    }
    Ok(())
}

/// Radial decay window `decay^d` over an area, `d` measured from the center
/// `((M-1)/2, (N-1)/2)`. Identical for every block of a given size, so it is
/// computed once and reused.
#[derive(Clone, Debug, PartialEq)]
pub struct DecayWindow<T> {
    base: Grid<T>,
    decay: T,
    reuse: T,
}

impl<T: Scalar> DecayWindow<T> {
    pub fn new(rows: usize, cols: usize, decay: T, reuse: T) -> Result<Self> {
        check_decay(decay)?;
        check_reuse(reuse)?;
        let half = T::lit(0.5);
        let cm = T::from_count(rows - 1) * half;
        let cn = T::from_count(cols - 1) * half;
        let base = Grid::from_fn(rows, cols, |m, n| {
            let dm = T::from_count(m) - cm;
            let dn = T::from_count(n) - cn;
            decay.powf((dm * dm + dn * dn).sqrt())
        });
        Ok(Self { base, decay, reuse })
    }

    /// Weights for a categorized area: the window for available pixels,
    /// `reuse` times the window for reconstructed ones, zero elsewhere.
    pub fn apply(&self, categories: &Grid<AreaCategory>) -> WeightField<T> {
        assert!(
            categories.rows() == self.base.rows() && categories.cols() == self.base.cols(),
            "category grid size"
        );
        let weights = Grid::from_vec(
            categories.rows(),
            categories.cols(),
            categories
                .as_slice()
                .iter()
                .zip(self.base.as_slice())
                .map(|(c, &b)| match c {
                    AreaCategory::Available => b,
                    AreaCategory::Reconstructed => self.reuse * b,
                    AreaCategory::Unknown => T::zero(),
                })
                .collect(),
        );
        WeightField { weights, decay: self.decay, reuse: self.reuse }
    }
}

/// Isotropic decay `decay^d` where `d` is the distance from the area center
/// `((M-1)/2, (N-1)/2)`, scaled by `reuse` for reconstructed pixels and zero
/// for unknown ones.
pub fn spatial_weights<T: Scalar>(categories: &Grid<AreaCategory>, decay: T, reuse: T) -> Result<WeightField<T>> {
    Ok(DecayWindow::new(categories.rows(), categories.cols(), decay, reuse)?.apply(categories))
}

/// Distance of index `k` from the nearest DC alias on a length-`size` axis:
/// `size/2 - |k - size/2|`.
#[inline]
pub fn folded_index<T: Scalar>(k: usize, size: usize) -> T {
    let half = T::from_count(size) * T::lit(0.5);
    half - (T::from_count(k) - half).abs()
}

/// Normalized radial frequency `sqrt(k~^2/M^2 + l~^2/N^2)`, in `[0, 1/sqrt(2)]`.
#[inline]
pub fn radial_index<T: Scalar>(rows: usize, cols: usize, k: usize, l: usize) -> T {
    let a = folded_index::<T>(k, rows) / T::from_count(rows);
    let b = folded_index::<T>(l, cols) / T::from_count(cols);
    (a * a + b * b).sqrt()
}

/// Frequency prior `(1 - sqrt(2) * radial)^2`: one at DC, zero at the
/// highest representable frequency.
pub fn frequency_weights<T: Scalar>(rows: usize, cols: usize) -> Grid<T> {
    Grid::from_fn(rows, cols, |k, l| {
        let root = T::one() - T::SQRT_2() * radial_index::<T>(rows, cols, k, l);
        root.max(T::zero()).powi(2)
    })
}
