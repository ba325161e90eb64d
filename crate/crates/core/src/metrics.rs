//! Objective quality measures on the 8-bit amplitude scale.

use crate::error::{FsrError, Result};
use crate::grid::Grid;
use crate::image::Image;
use crate::scalar::Scalar;

const PEAK: f64 = 255.0;

/// Returned by [`psnr`] for identical images.
pub const PSNR_IDENTICAL: f64 = f64::INFINITY;

fn check_same<T: Scalar>(a: &Image<T>, b: &Image<T>) -> Result<()> {
    a.ensure_matches(b.width(), b.height())
}

/// Mean squared error.
pub fn mse<T: Scalar>(a: &Image<T>, b: &Image<T>) -> Result<f64> {
    check_same(a, b)?;
    let sum: f64 = a
        .samples()
        .iter()
        .zip(b.samples())
        .map(|(&x, &y)| (x.as_f64() - y.as_f64()).powi(2))
        .sum();
    Ok(sum / a.samples().len() as f64)
}

/// Peak signal-to-noise ratio in dB with peak 255; [`PSNR_IDENTICAL`] for
/// identical inputs.
pub fn psnr<T: Scalar>(a: &Image<T>, b: &Image<T>) -> Result<f64> {
    let e = mse(a, b)?;
    if e == 0.0 {
        return Ok(PSNR_IDENTICAL);
    }
    Ok(10.0 * (PEAK * PEAK / e).log10())
}

const SSIM_WINDOW: usize = 11;
const SSIM_SIGMA: f64 = 1.5;
const K1: f64 = 0.01;
const K2: f64 = 0.03;

fn ssim_kernel() -> Vec<f64> {
    let r = (SSIM_WINDOW / 2) as f64;
    let taps: Vec<f64> = (0..SSIM_WINDOW)
        .map(|i| {
            let d = i as f64 - r;
            (-(d * d) / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp()
        })
        .collect();
    let s: f64 = taps.iter().sum();
    taps.into_iter().map(|t| t / s).collect()
}

/// Separable "valid" filtering: output is `(h - 10) x (w - 10)`.
fn filter_valid(src: &Grid<f64>, taps: &[f64]) -> Grid<f64> {
    let k = taps.len();
    let (h, w) = (src.rows(), src.cols());
    let horiz = Grid::from_fn(h, w - k + 1, |y, x| taps.iter().enumerate().map(|(i, t)| t * src[(y, x + i)]).sum::<f64>());
    Grid::from_fn(h - k + 1, w - k + 1, |y, x| taps.iter().enumerate().map(|(i, t)| t * horiz[(y + i, x)]).sum::<f64>())
}

/// Mean structural similarity with an 11x11 Gaussian window (sigma 1.5),
/// `K1 = 0.01`, `K2 = 0.03` and dynamic range 255, averaged over the
/// positions where the window fits entirely.
pub fn ssim<T: Scalar>(a: &Image<T>, b: &Image<T>) -> Result<f64> {
    check_same(a, b)?;
    if a.width() < SSIM_WINDOW || a.height() < SSIM_WINDOW {
        return Err(FsrError::InvalidDimensions { width: a.width(), height: a.height(), min: SSIM_WINDOW });
    }
    let (h, w) = (a.height(), a.width());
    let ga = Grid::from_vec(h, w, a.samples().iter().map(|v| v.as_f64()).collect());
    let gb = Grid::from_vec(h, w, b.samples().iter().map(|v| v.as_f64()).collect());
    let product = |p: &Grid<f64>, q: &Grid<f64>| {
        Grid::from_vec(h, w, p.as_slice().iter().zip(q.as_slice()).map(|(x, y)| x * y).collect())
    };
    let taps = ssim_kernel();
    let mu_a = filter_valid(&ga, &taps);
    let mu_b = filter_valid(&gb, &taps);
    let e_aa = filter_valid(&product(&ga, &ga), &taps);
    let e_bb = filter_valid(&product(&gb, &gb), &taps);
    let e_ab = filter_valid(&product(&ga, &gb), &taps);
    let c1 = (K1 * PEAK).powi(2);
    let c2 = (K2 * PEAK).powi(2);
    let n = mu_a.len();
    let mut total = 0.0;
    for i in 0..n {
        let (ma, mb) = (mu_a.as_slice()[i], mu_b.as_slice()[i]);
        let var_a = e_aa.as_slice()[i] - ma * ma;
        let var_b = e_bb.as_slice()[i] - mb * mb;
        let cov = e_ab.as_slice()[i] - ma * mb;
        let num = (2.0 * (ma * mb) + c1) * (2.0 * cov + c2);
        let den = (ma * ma + mb * mb + c1) * (var_a + var_b + c2);
        total += num / den;
    }
    Ok(total / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn img(w: usize, h: usize, f: impl Fn(usize, usize) -> f64) -> Image<f64> {
        Image::from_fn(w, h, f).unwrap()
    }

    fn texture(x: usize, y: usize) -> f64 {
        ((x * 37 + y * 91 + x * y) % 256) as f64
    }

    #[test]
    fn psnr_reference_values() {
        let a = img(16, 16, texture);
        assert_eq!(psnr(&a, &a).unwrap(), PSNR_IDENTICAL);
        let b = img(16, 16, |x, y| texture(x, y) + 1.0);
        assert!((psnr(&a, &b).unwrap() - 48.1308036086791).abs() < 1e-9);
        let black = img(8, 8, |_, _| 0.0);
        let white = img(8, 8, |_, _| 255.0);
        assert!(psnr(&black, &white).unwrap().abs() < 1e-12);
        assert!(psnr(&black, &img(4, 8, |_, _| 0.0)).is_err());
    }

    #[test]
    fn psnr_is_symmetric_and_monotone() {
        let a = img(12, 12, texture);
        let mut b = img(12, 12, |x, y| texture(x, y) + ((x + y) % 3) as f64);
        assert_eq!(psnr(&a, &b).unwrap(), psnr(&b, &a).unwrap());
        let mut last = psnr(&a, &b).unwrap();
        for step in 1..5 {
            b.set(5, 5, a.get(5, 5) + 10.0 * step as f64);
            let now = psnr(&a, &b).unwrap();
            assert!(now < last);
            last = now;
        }
    }

    #[test]
    fn ssim_identity_and_negative() {
        let a = img(32, 24, texture);
        assert_eq!(ssim(&a, &a).unwrap(), 1.0);
        let neg = img(32, 24, |x, y| 255.0 - texture(x, y));
        assert!(ssim(&a, &neg).unwrap() < 1.0);
        let b = img(32, 24, |x, y| texture(x, y) * 0.8 + 9.0);
        let (ab, ba) = (ssim(&a, &b).unwrap(), ssim(&b, &a).unwrap());
        assert!((ab - ba).abs() < 1e-12);
    }

    #[test]
    fn ssim_of_shifted_constants_is_luminance_term() {
        // Zero variance: only (2*mu1*mu2 + C1) / (mu1^2 + mu2^2 + C1) remains.
        let a = img(20, 20, |_, _| 100.0);
        let b = img(20, 20, |_, _| 110.0);
        assert!((ssim(&a, &b).unwrap() - 0.9954764440915066).abs() < 1e-9);
    }

    #[test]
    fn ssim_rejects_small_images() {
        let a = img(10, 30, texture);
        assert!(matches!(ssim(&a, &a), Err(FsrError::InvalidDimensions { .. })));
    }
}
