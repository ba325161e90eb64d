//! Deterministic masks and test images.

use crate::error::{invalid, Result};
use crate::image::{Image, SampleMask};
use crate::scalar::Scalar;

/// SplitMix64 generator. Platform independent, so masks generated from a
/// seed are identical everywhere.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform integer in `0..bound` by rejection sampling (no modulo bias).
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }
}

/// Mask with exactly `round(density * width * height)` available pixels,
/// chosen by a partial Fisher-Yates shuffle of the pixel indices.
pub fn random_mask(width: usize, height: usize, density: f64, seed: u64) -> Result<SampleMask> {
    if !(density > 0.0 && density <= 1.0) {
        return Err(invalid("density", format!("{density} outside (0, 1]")));
    }
    let total = width * height;
    let wanted = ((density * total as f64).round() as usize).min(total);
    let mut indices: Vec<usize> = (0..total).collect();
    let mut rng = SplitMix64::new(seed);
    for i in 0..wanted {
        let j = i + rng.below((total - i) as u64) as usize;
        indices.swap(i, j);
    }
    let mut bits = vec![false; total];
    for &i in &indices[..wanted] {
        bits[i] = true;
    }
    SampleMask::new(width, height, bits)
}

/// Regular lattice: available where both coordinates are multiples of `step`.
pub fn regular_mask(width: usize, height: usize, step: usize) -> Result<SampleMask> {
    if step == 0 {
        return Err(invalid("step", "must be at least 1"));
    }
    SampleMask::from_fn(width, height, |x, y| x % step == 0 && y % step == 0)
}

/// Rotation-symmetric chirp `127.5 * (1 + cos(pi * r^2 / (2R)))` with
/// `R = size/2` and `r` measured from pixel `(size/2, size/2)`. The local
/// radial frequency `pi * r / R` reaches Nyquist at `r = R`.
pub fn zoneplate<T: Scalar>(size: usize) -> Result<Image<T>> {
    if size < 2 {
        return Err(invalid("size", "zoneplate needs at least 2x2 pixels"));
    }
    let center = (size / 2) as i64;
    let radius = size as f64 / 2.0;
    Image::from_fn(size, size, |x, y| {
        let (dx, dy) = (x as i64 - center, y as i64 - center);
        let r2 = (dx * dx + dy * dy) as f64;
        T::lit(127.5 * (1.0 + (std::f64::consts::PI * r2 / (2.0 * radius)).cos()))
    })
}

/// One cosine term of [`sparse_cosine_image`]: `amplitude *
/// cos(2*pi*(k*x + l*y)/size + phase)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CosineTerm {
    pub k: i64,
    pub l: i64,
    pub amplitude: f64,
    pub phase: f64,
}

impl CosineTerm {
    pub fn new(k: i64, l: i64, amplitude: f64, phase: f64) -> Self {
        Self { k, l, amplitude, phase }
    }
}

/// Mid-gray plus a sum of periodic cosines; exactly sparse in the
/// full-image DFT.
pub fn sparse_cosine_image<T: Scalar>(size: usize, terms: &[CosineTerm]) -> Result<Image<T>> {
    if terms.is_empty() {
        return Err(invalid("terms", "at least one cosine term is required"));
    }
    let nyquist = (size / 2) as i64;
    if let Some(t) = terms.iter().find(|t| t.k.abs() > nyquist || t.l.abs() > nyquist) {
        return Err(invalid("terms", format!("frequency ({}, {}) beyond Nyquist {nyquist}", t.k, t.l)));
    }
    let n = size as i64;
    Image::from_fn(size, size, |x, y| {
        let v: f64 = terms
            .iter()
            .map(|t| {
                // Reduce the phase index exactly before scaling.
                let cycles = (t.k * x as i64 + t.l * y as i64).rem_euclid(n) as f64 / size as f64;
                t.amplitude * (std::f64::consts::TAU * cycles + t.phase).cos()
            })
            .sum();
        T::lit(127.5 + v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::spectral::forward_dft;

    #[test]
    fn splitmix_reference_sequence() {
        // First outputs for seed 1234567, from the reference C implementation.
        let mut rng = SplitMix64::new(1234567);
        let expected = [6457827717110365317u64, 3203168211198807973, 9817491932198370423, 4593380528125082431, 16408922859458223821];
        for e in expected {
            assert_eq!(rng.next_u64(), e);
        }
    }

    #[test]
    fn random_mask_counts_and_determinism() {
        assert!(random_mask(16, 8, 1.0, 3).unwrap().bits().iter().all(|&b| b));
        let m = random_mask(32, 32, 0.25, 99).unwrap();
        assert_eq!(m.count(), 256);
        assert_eq!(m, random_mask(32, 32, 0.25, 99).unwrap());
        assert_ne!(m, random_mask(32, 32, 0.25, 100).unwrap());
        assert!(random_mask(4, 4, 0.0, 1).is_err());
        assert!(random_mask(4, 4, 1.5, 1).is_err());
        assert_eq!(random_mask(7, 3, 0.1, 5).unwrap().count(), 2);
    }

    #[test]
    fn regular_mask_counts() {
        assert!(regular_mask(5, 5, 1).unwrap().bits().iter().all(|&b| b));
        assert_eq!(regular_mask(32, 32, 2).unwrap().density(), 0.25);
        assert_eq!(regular_mask(8, 8, 4).unwrap().count(), 4);
        assert!(regular_mask(8, 8, 0).is_err());
    }

    #[test]
    fn zoneplate_properties() {
        let z = zoneplate::<f64>(65).unwrap();
        assert_eq!(z.get(32, 32), 255.0);
        assert!(z.samples().iter().all(|&v| (0.0..=255.0).contains(&v)));
        for y in 0..65 {
            for x in 0..65 {
                assert_eq!(z.get(x, y), z.get(y, 64 - x));
            }
        }
        let even = zoneplate::<f64>(256).unwrap();
        assert_eq!(even.get(128, 128), 255.0);
        assert!(zoneplate::<f64>(1).is_err());
    }

    #[test]
    fn zoneplate_phase_step_at_half_radius() {
        // Phase pi*r^2/(2R); its discrete difference across r = R/2.
        let size = 256.0;
        let radius = size / 2.0;
        let phase = |r: f64| std::f64::consts::PI * r * r / (2.0 * radius);
        let r = radius / 2.0;
        let step = phase(r + 0.5) - phase(r - 0.5);
        assert!((step - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    fn nonzero_bins(img: &Image<f64>, size: usize) -> usize {
        let s = forward_dft(&Grid::from_vec(size, size, img.samples().to_vec()));
        let scale = s.as_slice().iter().map(|c| c.norm()).fold(0.0, f64::max);
        s.as_slice().iter().filter(|c| c.norm() > 1e-9 * scale).count()
    }

    #[test]
    fn sparse_cosines_are_sparse() {
        let flat = sparse_cosine_image::<f64>(16, &[CosineTerm::new(3, 1, 0.0, 0.0)]).unwrap();
        assert!(flat.samples().iter().all(|&v| v == 127.5));
        let one = sparse_cosine_image::<f64>(32, &[CosineTerm::new(1, 0, 50.0, 0.0)]).unwrap();
        assert_eq!(nonzero_bins(&one, 32), 3);
        let two = sparse_cosine_image::<f64>(32, &[CosineTerm::new(1, 0, 50.0, 0.0), CosineTerm::new(-2, 3, 20.0, 1.0)]).unwrap();
        assert!(nonzero_bins(&two, 32) <= 5);
        assert!(sparse_cosine_image::<f64>(16, &[]).is_err());
        assert!(sparse_cosine_image::<f64>(16, &[CosineTerm::new(9, 0, 1.0, 0.0)]).is_err());
    }
}
