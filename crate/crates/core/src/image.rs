//! Grayscale image and sampling mask value types, plus the subsampling model
//! that turns a full image into its sparsely sampled counterpart.

use crate::error::{FsrError, Result};
use crate::scalar::Scalar;

fn check_dims(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(FsrError::InvalidDimensions { width, height, min: 1 });
    }
    Ok(())
}

/// Real-valued grayscale image, row-major, nominal amplitude range `[0, 255]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Image<T> {
    width: usize,
    height: usize,
    samples: Vec<T>,
}

impl<T: Scalar> Image<T> {
    pub fn new(width: usize, height: usize, samples: Vec<T>) -> Result<Self> {
        check_dims(width, height)?;
        if samples.len() != width * height {
            return Err(FsrError::BufferLength { expected: width * height, got: samples.len() });
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(FsrError::NonFinite(i));
        }
        Ok(Self { width, height, samples })
    }

    pub fn filled(width: usize, height: usize, value: T) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    /// Builds an image by evaluating `f(x, y)` at every pixel.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        let mut samples = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                samples.push(f(x, y));
            }
        }
        Self::new(width, height, samples)
    }

    pub fn from_u8(width: usize, height: usize, bytes: &[u8]) -> Result<Self> {
        Self::new(width, height, bytes.iter().map(|&b| T::from_count(b as usize)).collect())
    }

    /// Quantizes to 8 bits: round half away from zero, then clamp to `[0, 255]`.
    pub fn to_u8(&self) -> Vec<u8> {
        self.samples
            .iter()
            .map(|v| v.as_f64().round().clamp(0.0, 255.0) as u8)
            .collect()
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> T {
        self.samples[y * self.width + x]
    }

    /// Sets a pixel. Panics on a non-finite value.
    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: T) {
        assert!(value.is_finite(), "non-finite amplitude");
        self.samples[y * self.width + x] = value;
    }

    #[inline]
    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<T> {
        self.samples
    }

    pub fn same_size<U>(&self, other: &Image<U>) -> bool {
        self.width == other.width && self.height == other.height
    }

    pub(crate) fn ensure_matches(&self, width: usize, height: usize) -> Result<()> {
        if self.width != width || self.height != height {
            return Err(FsrError::DimensionMismatch {
                expected_width: self.width,
                expected_height: self.height,
                width,
                height,
            });
        }
        Ok(())
    }

    /// Converts the amplitudes to another scalar type.
    pub fn cast<U: Scalar>(&self) -> Image<U> {
        Image {
            width: self.width,
            height: self.height,
            samples: self.samples.iter().map(|v| U::lit(v.as_f64())).collect(),
        }
    }
}

/// Boolean availability mask: `true` marks a pixel whose amplitude is known.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SampleMask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl SampleMask {
    pub fn new(width: usize, height: usize, bits: Vec<bool>) -> Result<Self> {
        check_dims(width, height)?;
        if bits.len() != width * height {
            return Err(FsrError::BufferLength { expected: width * height, got: bits.len() });
        }
        Ok(Self { width, height, bits })
    }

    pub fn filled(width: usize, height: usize, value: bool) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut bits = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                bits.push(f(x, y));
            }
        }
        Self::new(width, height, bits)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        self.bits[y * self.width + x] = value;
    }

    #[inline]
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Fraction of available pixels, in `[0, 1]`.
    pub fn density(&self) -> f64 {
        self.count() as f64 / self.bits.len() as f64
    }
}

/// Applies the sampling model: keeps amplitudes where the mask is set and
/// zeroes everything else.
pub fn subsample<T: Scalar>(image: &Image<T>, mask: &SampleMask) -> Result<Image<T>> {
    image.ensure_matches(mask.width, mask.height)?;
    let samples = image
        .samples
        .iter()
        .zip(&mask.bits)
        .map(|(&v, &known)| if known { v } else { T::zero() })
        .collect();
    Ok(Image { width: image.width, height: image.height, samples })
}

/// Fraction of available samples in `mask`.
pub fn density(mask: &SampleMask) -> f64 {
    mask.density()
}
