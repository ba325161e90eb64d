//! Iterative sparse Fourier model generation for a single reconstruction
//! area, carried out entirely in the frequency domain.
//!
//! Each iteration picks the bin maximizing `w_f[k,l] * |R_w[k,l]|^2`,
//! estimates its coefficient as `gamma * R_w[u,v] / W[0,0]`, adds `MN * c` to
//! the model spectrum and subtracts `c * W` circularly shifted to `(u, v)`
//! from the weighted residual spectrum.

use num_complex::Complex;

use crate::error::{FsrError, Result};
use crate::grid::Grid;
use crate::params::Params;
use crate::scalar::Scalar;
use crate::spectral::{Dft2d, Spectrum};
use crate::weighting::{frequency_weights, radial_index, spatial_weights, AreaCategory, WeightField};

/// Frequency-domain state of one model generation run.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelState<T> {
    model: Spectrum<T>,
    residual: Spectrum<T>,
    weight_spectrum: Spectrum<T>,
    iteration: usize,
}

impl<T: Scalar> ModelState<T> {
    /// Model spectrum `G`.
    #[inline]
    pub fn model(&self) -> &Spectrum<T> {
        &self.model
    }

    /// Weighted residual spectrum `R_w`.
    #[inline]
    pub fn residual(&self) -> &Spectrum<T> {
        &self.residual
    }

    /// Spectrum `W` of the spatial weights.
    #[inline]
    pub fn weight_spectrum(&self) -> &Spectrum<T> {
        &self.weight_spectrum
    }

    /// `W[0,0]`, the total spatial weight.
    #[inline]
    pub fn weight_total(&self) -> T {
        self.weight_spectrum.as_slice()[0].re
    }

    #[inline]
    pub fn iteration(&self) -> usize {
        self.iteration
    }

    /// Weighted projection coefficient of the residual onto basis `(k, l)`.
    #[inline]
    pub fn projection(&self, k: usize, l: usize) -> Complex<T> {
        self.residual[(k, l)] / self.weight_total()
    }

    /// Number of nonzero model bins.
    pub fn support(&self) -> usize {
        self.model.as_slice().iter().filter(|c| c.re != T::zero() || c.im != T::zero()).count()
    }
}

/// Cached transform plan and frequency prior for one transform size.
pub struct ModelGenerator<T: Scalar> {
    dft: Dft2d<T>,
    freq_weights: Option<Grid<T>>,
}

impl<T: Scalar> ModelGenerator<T> {
    pub fn new(rows: usize, cols: usize, frequency_weighting: bool) -> Self {
        Self {
            dft: Dft2d::new(rows, cols),
            freq_weights: frequency_weighting.then(|| frequency_weights(rows, cols)),
        }
    }

    pub fn for_params(params: &Params<T>) -> Self {
        Self::new(params.transform_rows, params.transform_cols, params.frequency_weighting)
    }

    #[inline]
    pub fn frequency_weights(&self) -> Option<&Grid<T>> {
        self.freq_weights.as_ref()
    }

    pub fn init_state(&self, amplitudes: &Grid<T>, weights: &WeightField<T>) -> Result<ModelState<T>> {
        let w = weights.grid();
        assert!(
            amplitudes.rows() == w.rows() && amplitudes.cols() == w.cols(),
            "amplitude and weight grids differ in size"
        );
        if !w.as_slice().iter().any(|&v| v > T::zero()) {
            return Err(FsrError::NoUsableSamples);
        }
        let weighted = Grid::from_vec(
            w.rows(),
            w.cols(),
            amplitudes.as_slice().iter().zip(w.as_slice()).map(|(&f, &wv)| f * wv).collect(),
        );
        let residual = self.dft.forward_real(&weighted);
        let weight_spectrum = self.dft.forward_real(w);
        let zero = Complex::new(T::zero(), T::zero());
        Ok(ModelState {
            model: Grid::filled(w.rows(), w.cols(), zero),
            residual,
            weight_spectrum,
            iteration: 0,
        })
    }

    pub fn select_basis(&self, state: &ModelState<T>) -> (usize, usize) {
        select_basis(state, self.freq_weights.as_ref())
    }

    /// Runs `params.iterations` rounds and returns the final state.
    pub fn run(&self, amplitudes: &Grid<T>, weights: &WeightField<T>, params: &Params<T>) -> Result<ModelState<T>> {
        let mut state = self.init_state(amplitudes, weights)?;
        for _ in 0..params.iterations {
            let (u, v) = self.select_basis(&state);
            let c = estimate_coefficient(&state, u, v, params.gamma);
            update_state(&mut state, u, v, c);
        }
        Ok(state)
    }

    /// Real part of the model's spatial samples.
    pub fn spatial_model(&self, state: &ModelState<T>) -> Grid<T> {
        self.dft.inverse(&state.model).map(|c| c.re)
    }

    /// Builds the weights from `categories`, runs the model and returns its
    /// real-valued spatial samples.
    pub fn generate(&self, amplitudes: &Grid<T>, categories: &Grid<AreaCategory>, params: &Params<T>) -> Result<Grid<T>> {
        let weights = spatial_weights(categories, params.decay, params.reuse)?;
        let state = self.run(amplitudes, &weights, params)?;
        Ok(self.spatial_model(&state))
    }
}

/// Initializes a model: zero model spectrum, transformed weighted amplitudes
/// as residual.
pub fn init_state<T: Scalar>(amplitudes: &Grid<T>, weights: &WeightField<T>) -> Result<ModelState<T>> {
    ModelGenerator::new(amplitudes.rows(), amplitudes.cols(), false).init_state(amplitudes, weights)
}

/// Index of the bin with the largest prior-weighted residual magnitude.
///
/// `freq_weights = None` treats the prior as identically one. Equal scores
/// go to the lower radial frequency, then smaller `k`, then smaller `l`.
pub fn select_basis<T: Scalar>(state: &ModelState<T>, freq_weights: Option<&Grid<T>>) -> (usize, usize) {
    let (rows, cols) = (state.residual.rows(), state.residual.cols());
    let residual = state.residual.as_slice();
    let mut best = 0usize;
    let mut best_score = T::neg_infinity();
    let mut consider = |i: usize, score: T| {
        if score > best_score {
            best = i;
            best_score = score;
        } else if score == best_score {
            // Row-major scan: `i` already loses the (k, l) tie-break.
            let r_new = radial_index::<T>(rows, cols, i / cols, i % cols);
            let r_best = radial_index::<T>(rows, cols, best / cols, best % cols);
            if r_new < r_best {
                best = i;
            }
        }
    };
    match freq_weights {
        Some(wf) => {
            assert!(wf.rows() == rows && wf.cols() == cols, "frequency weight size");
            for (i, (r, &w)) in residual.iter().zip(wf.as_slice()).enumerate() {
                consider(i, w * r.norm_sqr());
            }
        }
        None => {
            for (i, r) in residual.iter().enumerate() {
                consider(i, r.norm_sqr());
            }
        }
    }
    (best / cols, best % cols)
}

/// Damped coefficient `gamma * R_w[u,v] / W[0,0]`.
#[inline]
pub fn estimate_coefficient<T: Scalar>(state: &ModelState<T>, u: usize, v: usize, gamma: T) -> Complex<T> {
    state.projection(u, v) * gamma
}

/// Adds `c * phi_(u,v)` to the model and removes its weighted contribution
/// from the residual spectrum.
pub fn update_state<T: Scalar>(state: &mut ModelState<T>, u: usize, v: usize, c: Complex<T>) {
    let (rows, cols) = (state.model.rows(), state.model.cols());
    state.model[(u, v)] += c * T::from_count(rows * cols);
    let w = state.weight_spectrum.as_slice();
    let r = state.residual.as_mut_slice();
    for k in 0..rows {
        let wk = (k + rows - u) % rows;
        let w_row = &w[wk * cols..(wk + 1) * cols];
        let r_row = &mut r[k * cols..(k + 1) * cols];
        // r_row[l] -= c * w_row[(l - v) mod cols]
        let (r_lo, r_hi) = r_row.split_at_mut(v);
        for (rv, wv) in r_hi.iter_mut().zip(&w_row[..cols - v]) {
            *rv -= c * wv;
        }
        for (rv, wv) in r_lo.iter_mut().zip(&w_row[cols - v..]) {
            *rv -= c * wv;
        }
    }
    state.iteration += 1;
}

/// Models one reconstruction area and returns the real part of the model.
pub fn generate_model<T: Scalar>(
    amplitudes: &Grid<T>,
    categories: &Grid<AreaCategory>,
    params: &Params<T>,
) -> Result<Grid<T>> {
    params.validate()?;
    ModelGenerator::new(amplitudes.rows(), amplitudes.cols(), params.frequency_weighting)
        .generate(amplitudes, categories, params)
}

/// Weighted projection of `residual` onto `phi_(k,l)` by direct summation:
/// `sum r * conj(phi) * w / sum |phi|^2 * w`.
///
/// Independent of the transform path; used to cross-check it.
pub fn project_spatial_oracle<T: Scalar>(
    residual: &Grid<Complex<T>>,
    weights: &WeightField<T>,
    k: usize,
    l: usize,
) -> Result<Complex<T>> {
    let w = weights.grid();
    let (rows, cols) = (w.rows(), w.cols());
    let mut num = Complex::new(T::zero(), T::zero());
    let mut den = T::zero();
    for (m, n, &wv) in w.indexed() {
        let phi = crate::spectral::basis_value::<T>(rows, cols, k, l, m, n);
        num += residual[(m, n)] * phi.conj() * wv;
        den += phi.norm_sqr() * wv;
    }
    if !(den > T::zero()) {
        return Err(FsrError::NoUsableSamples);
    }
    Ok(num / den)
}
