//! Two-dimensional DFT conventions and the Fourier basis.
//!
//! The basis function for bin `(k, l)` on an `M x N` grid is
//! `phi[m, n] = exp(2*pi*j*(k*m/M + l*n/N))`. The forward transform projects
//! onto the conjugate basis without normalization; the inverse carries the
//! `1/(MN)` factor, so adding `MN * c` to bin `(u, v)` of a spectrum adds
//! `c * phi_(u,v)` to its spatial signal.

use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::grid::Grid;
use crate::image::SampleMask;
use crate::scalar::Scalar;

/// Complex `M x N` spectrum indexed by `(k, l)`.
pub type Spectrum<T> = Grid<Complex<T>>;

/// Reusable forward/inverse plans for one transform size.
pub struct Dft2d<T: Scalar> {
    rows: usize,
    cols: usize,
    row_fwd: Arc<dyn Fft<T>>,
    row_inv: Arc<dyn Fft<T>>,
    col_fwd: Arc<dyn Fft<T>>,
    col_inv: Arc<dyn Fft<T>>,
}

impl<T: Scalar> Dft2d<T> {
    pub fn new(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "transform size must be at least 1x1");
        let mut planner = FftPlanner::new();
        Self {
            rows,
            cols,
            row_fwd: planner.plan_fft_forward(cols),
            row_inv: planner.plan_fft_inverse(cols),
            col_fwd: planner.plan_fft_forward(rows),
            col_inv: planner.plan_fft_inverse(rows),
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    fn run(&self, data: &mut [Complex<T>], row: &Arc<dyn Fft<T>>, col: &Arc<dyn Fft<T>>) {
        let (rows, cols) = (self.rows, self.cols);
        debug_assert_eq!(data.len(), rows * cols);
        row.process(data);
        if rows == 1 {
            return;
        }
        let mut columns = vec![Complex::new(T::zero(), T::zero()); rows * cols];
        for m in 0..rows {
            for n in 0..cols {
                columns[n * rows + m] = data[m * cols + n];
            }
        }
        col.process(&mut columns);
        for n in 0..cols {
            for m in 0..rows {
                data[m * cols + n] = columns[n * rows + m];
            }
        }
    }

    /// Unnormalized forward transform, in place.
    pub fn forward_in_place(&self, grid: &mut Spectrum<T>) {
        self.check(grid.rows(), grid.cols());
        self.run(grid.as_mut_slice(), &self.row_fwd, &self.col_fwd);
    }

    /// Inverse transform including the `1/(MN)` factor, in place.
    pub fn inverse_in_place(&self, grid: &mut Spectrum<T>) {
        self.check(grid.rows(), grid.cols());
        self.run(grid.as_mut_slice(), &self.row_inv, &self.col_inv);
        let scale = T::one() / T::from_count(self.rows * self.cols);
        for v in grid.as_mut_slice() {
            *v *= scale;
        }
    }

    pub fn forward_real(&self, block: &Grid<T>) -> Spectrum<T> {
        let mut spectrum = block.map(|&v| Complex::new(v, T::zero()));
        self.forward_in_place(&mut spectrum);
        spectrum
    }

    pub fn inverse(&self, spectrum: &Spectrum<T>) -> Grid<Complex<T>> {
        let mut out = spectrum.clone();
        self.inverse_in_place(&mut out);
        out
    }

    fn check(&self, rows: usize, cols: usize) {
        assert!(
            rows == self.rows && cols == self.cols,
            "grid is {rows}x{cols} but the plan is {}x{}",
            self.rows,
            self.cols
        );
    }
}

/// Unnormalized forward DFT of a real block.
pub fn forward_dft<T: Scalar>(block: &Grid<T>) -> Spectrum<T> {
    Dft2d::new(block.rows(), block.cols()).forward_real(block)
}

/// Inverse DFT (with `1/(MN)`), returning the complex spatial grid.
pub fn inverse_dft<T: Scalar>(spectrum: &Spectrum<T>) -> Grid<Complex<T>> {
    Dft2d::new(spectrum.rows(), spectrum.cols()).inverse(spectrum)
}

/// Spectrum of a 0/1 availability indicator. Bin `(0, 0)` equals the number
/// of available samples.
pub fn mask_spectrum<T: Scalar>(mask: &Grid<bool>) -> Spectrum<T> {
    forward_dft(&mask.map(|&b| if b { T::one() } else { T::zero() }))
}

/// Views a whole image mask as a grid with rows along `y`.
pub fn mask_grid(mask: &SampleMask) -> Grid<bool> {
    Grid::from_vec(mask.height(), mask.width(), mask.bits().to_vec())
}

/// Fourier basis function `phi_(k,l)` on an `rows x cols` grid.
pub fn basis<T: Scalar>(rows: usize, cols: usize, k: usize, l: usize) -> Grid<Complex<T>> {
    Grid::from_fn(rows, cols, |m, n| basis_value(rows, cols, k, l, m, n))
}

/// A single sample `phi_(k,l)[m, n]`. Phases are reduced modulo the period
/// before the trigonometric evaluation.
#[inline]
pub fn basis_value<T: Scalar>(rows: usize, cols: usize, k: usize, l: usize, m: usize, n: usize) -> Complex<T> {
    let pm = T::from_count((k * m) % rows) / T::from_count(rows);
    let pn = T::from_count((l * n) % cols) / T::from_count(cols);
    Complex::from_polar(T::one(), T::TAU() * (pm + pn))
}
