//! Resampling of grayscale images from a non-regular subset of known pixel
//! positions onto the full regular grid.
//!
//! The main entry point is [`reconstruct_image`], which models the image
//! block by block as a sparse superposition of Fourier basis functions
//! fitted to the available samples. Baseline reconstructors, quality
//! metrics and deterministic test-signal generators are included for
//! evaluation.
//!
//! All numeric code is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix it to `f64`.

pub mod baselines;
pub mod engine;
pub mod error;
pub mod grid;
pub mod image;
pub mod metrics;
pub mod params;
pub mod pnm;
pub mod reconstructor;
pub mod scalar;
pub mod scheduler;
pub mod spectral;
pub mod synth;
pub mod weighting;

pub use baselines::{band_limited_reconstruct, linear_interpolate, nearest_fill, InterpolationStatus};
pub use engine::{
    estimate_coefficient, generate_model, init_state, project_spatial_oracle, select_basis, update_state,
    ModelGenerator,
};
pub use error::{FsrError, Result};
pub use grid::Grid;
pub use image::{density, subsample, Image, SampleMask};
pub use metrics::{psnr, ssim};
pub use params::OrderMode;
pub use reconstructor::{extract_area, reconstruct_image, ReconstructionArea};
pub use scalar::Scalar;
pub use scheduler::{block_order, density_map, BlockGrid, ProcessingOrder};
pub use spectral::{forward_dft, inverse_dft, mask_spectrum, Dft2d};
pub use synth::{random_mask, regular_mask, sparse_cosine_image, zoneplate, CosineTerm};
pub use weighting::{frequency_weights, spatial_weights, AreaCategory};

/// Double-precision grayscale image.
pub type GrayImage = image::Image<f64>;
/// Single-precision grayscale image.
pub type GrayImageF32 = image::Image<f32>;
/// Double-precision complex spectrum.
pub type Spectrum2D = spectral::Spectrum<f64>;
/// Model generation parameters in double precision.
pub type FsrParams = params::Params<f64>;
/// Frequency-domain model state in double precision.
pub type ModelState = engine::ModelState<f64>;
/// Spatial weights in double precision.
pub type WeightField = weighting::WeightField<f64>;
