//! Reference reconstructors: nearest neighbor, Delaunay linear
//! interpolation and iterative band-limited (Papoulis-Gerchberg) recovery.

use num_complex::Complex;
use spade::{DelaunayTriangulation, FloatTriangulation, HasPosition, Point2, Triangulation};

use crate::error::{FsrError, Result};
use crate::grid::Grid;
use crate::image::{Image, SampleMask};
use crate::scalar::Scalar;
use crate::spectral::Dft2d;
use crate::weighting::folded_index;

fn known_positions(mask: &SampleMask) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(mask.count());
    for y in 0..mask.height() {
        for x in 0..mask.width() {
            if mask.get(x, y) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Nearest-sample lookup over the known pixels of a mask. Distances are
/// Euclidean; ties go to the smaller `y`, then the smaller `x`.
struct NearestIndex {
    /// Known `x` positions per row, ascending.
    rows: Vec<Vec<usize>>,
}

impl NearestIndex {
    fn new(mask: &SampleMask) -> Self {
        let mut rows = vec![Vec::new(); mask.height()];
        for (x, y) in known_positions(mask) {
            rows[y].push(x);
        }
        Self { rows }
    }

    fn nearest(&self, x: usize, y: usize) -> Option<(usize, usize)> {
        let height = self.rows.len();
        let mut best: Option<(usize, usize, usize)> = None; // (d2, y, x)
        for dy in 0..height {
            if let Some((d2, _, _)) = best {
                if dy * dy > d2 {
                    break;
                }
            }
            let candidates_rows = [y.checked_sub(dy), if dy > 0 { Some(y + dy) } else { None }];
            for ry in candidates_rows.into_iter().flatten() {
                let Some(row) = self.rows.get(ry) else { continue };
                let split = row.partition_point(|&kx| kx < x);
                let left = split.checked_sub(1).map(|i| row[i]);
                let right = row.get(split).copied();
                for kx in [left, right].into_iter().flatten() {
                    let d2 = kx.abs_diff(x).pow(2) + dy * dy;
                    let cand = (d2, ry, kx);
                    if best.is_none_or(|b| cand < b) {
                        best = Some(cand);
                    }
                }
            }
        }
        best.map(|(_, by, bx)| (bx, by))
    }
}

/// Fills each unknown pixel with the amplitude of the nearest known pixel.
pub fn nearest_fill<T: Scalar>(s_nr: &Image<T>, mask: &SampleMask) -> Result<Image<T>> {
    s_nr.ensure_matches(mask.width(), mask.height())?;
    if mask.count() == 0 {
        return Err(FsrError::EmptyMask);
    }
    let index = NearestIndex::new(mask);
    Image::from_fn(s_nr.width(), s_nr.height(), |x, y| {
        if mask.get(x, y) {
            s_nr.get(x, y)
        } else {
            let (nx, ny) = index.nearest(x, y).expect("mask has samples");
            s_nr.get(nx, ny)
        }
    })
}

/// How [`linear_interpolate`] produced its result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InterpolationStatus {
    /// Triangulated; pixels outside the hull were filled by nearest neighbor.
    Triangulated,
    /// Fewer than three samples, or all collinear: nearest-neighbor fill only.
    NearestFallback,
}

struct Sample {
    position: Point2<f64>,
    value: f64,
}

impl HasPosition for Sample {
    type Scalar = f64;

    fn position(&self) -> Point2<f64> {
        self.position
    }
}

/// Piecewise-linear interpolation over the Delaunay triangulation of the
/// known pixels. Known pixels are returned unchanged.
pub fn linear_interpolate<T: Scalar>(s_nr: &Image<T>, mask: &SampleMask) -> Result<(Image<T>, InterpolationStatus)> {
    let nearest = nearest_fill(s_nr, mask)?;
    let known = known_positions(mask);
    if known.len() < 3 {
        return Ok((nearest, InterpolationStatus::NearestFallback));
    }
    let mut triangulation: DelaunayTriangulation<Sample> = DelaunayTriangulation::new();
    for &(x, y) in &known {
        let sample = Sample { position: Point2::new(x as f64, y as f64), value: s_nr.get(x, y).as_f64() };
        triangulation
            .insert(sample)
            .map_err(|e| FsrError::Format(format!("triangulation failed: {e:?}")))?;
    }
    if triangulation.all_vertices_on_line() {
        return Ok((nearest, InterpolationStatus::NearestFallback));
    }
    let barycentric = triangulation.barycentric();
    let out = Image::from_fn(s_nr.width(), s_nr.height(), |x, y| {
        if mask.get(x, y) {
            return s_nr.get(x, y);
        }
        match barycentric.interpolate(|v| v.data().value, Point2::new(x as f64, y as f64)) {
            Some(v) => T::lit(v),
            None => nearest.get(x, y),
        }
    })?;
    Ok((out, InterpolationStatus::Triangulated))
}

/// Per-axis pass band used by [`band_limited_reconstruct`]: bins with
/// `k~/M <= sqrt(density)/2` and `l~/N <= sqrt(density)/2`.
pub fn band_mask(rows: usize, cols: usize, density: f64) -> Grid<bool> {
    let cutoff = density.sqrt() / 2.0;
    let row_ok: Vec<bool> = (0..rows).map(|k| folded_index::<f64>(k, rows) / rows as f64 <= cutoff).collect();
    let col_ok: Vec<bool> = (0..cols).map(|l| folded_index::<f64>(l, cols) / cols as f64 <= cutoff).collect();
    Grid::from_fn(rows, cols, |k, l| row_ok[k] && col_ok[l])
}

/// Alternating projection between the sample constraint and a band limit
/// derived from the sampling density:
/// `x <- lowpass(x + mask * (s_nr - x))`, starting from zero.
///
/// Known pixels are not restored afterwards; the result lies in the band.
pub fn band_limited_reconstruct<T: Scalar>(s_nr: &Image<T>, mask: &SampleMask, iterations: usize) -> Result<Image<T>> {
    s_nr.ensure_matches(mask.width(), mask.height())?;
    let density = mask.density();
    if density == 0.0 {
        return Err(FsrError::EmptyMask);
    }
    let (rows, cols) = (s_nr.height(), s_nr.width());
    let band = band_mask(rows, cols, density);
    let dft = Dft2d::<T>::new(rows, cols);
    let zero = Complex::new(T::zero(), T::zero());
    let mut x = vec![T::zero(); rows * cols];
    let mut buffer = Grid::filled(rows, cols, zero);
    for _ in 0..iterations {
        for (i, b) in buffer.as_mut_slice().iter_mut().enumerate() {
            let v = if mask.bits()[i] { s_nr.samples()[i] } else { x[i] };
            *b = Complex::new(v, T::zero());
        }
        dft.forward_in_place(&mut buffer);
        for (b, &keep) in buffer.as_mut_slice().iter_mut().zip(band.as_slice()) {
            if !keep {
                *b = zero;
            }
        }
        dft.inverse_in_place(&mut buffer);
        for (xi, b) in x.iter_mut().zip(buffer.as_slice()) {
            *xi = b.re;
        }
    }
    Image::new(cols, rows, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::forward_dft;

    fn img(w: usize, h: usize, f: impl Fn(usize, usize) -> f64) -> Image<f64> {
        Image::from_fn(w, h, f).unwrap()
    }

    /// Exhaustive nearest search, the oracle for the row index.
    fn brute_nearest(mask: &SampleMask, x: usize, y: usize) -> (usize, usize) {
        known_positions(mask)
            .into_iter()
            .min_by_key(|&(kx, ky)| (kx.abs_diff(x).pow(2) + ky.abs_diff(y).pow(2), ky, kx))
            .unwrap()
    }

    #[test]
    fn nearest_matches_exhaustive_search() {
        let mask = SampleMask::from_fn(37, 23, |x, y| (x * 13 + y * 7) % 17 == 0).unwrap();
        let index = NearestIndex::new(&mask);
        for y in 0..23 {
            for x in 0..37 {
                assert_eq!(index.nearest(x, y), Some(brute_nearest(&mask, x, y)));
            }
        }
    }

    #[test]
    fn nearest_tie_prefers_smaller_y_then_x() {
        let mask = SampleMask::from_fn(5, 5, |x, y| (x, y) == (2, 0) || (x, y) == (0, 2) || (x, y) == (4, 2)).unwrap();
        // (2,2) is at distance 2 from all three: (2,0) has the smallest y.
        assert_eq!(NearestIndex::new(&mask).nearest(2, 2), Some((2, 0)));
        let mask = SampleMask::from_fn(5, 1, |x, _| x == 0 || x == 4).unwrap();
        assert_eq!(NearestIndex::new(&mask).nearest(2, 0), Some((0, 0)));
    }

    #[test]
    fn nearest_fill_cases() {
        let full = SampleMask::filled(6, 4, true).unwrap();
        let i = img(6, 4, |x, y| (x * y) as f64);
        assert_eq!(nearest_fill(&i, &full).unwrap(), i);

        let one = SampleMask::from_fn(6, 4, |x, y| x == 3 && y == 1).unwrap();
        assert!(nearest_fill(&i, &one).unwrap().samples().iter().all(|&v| v == 3.0));

        let row = img(10, 1, |x, _| if x == 0 { 10.0 } else if x == 9 { 90.0 } else { 0.0 });
        let ends = SampleMask::from_fn(10, 1, |x, _| x == 0 || x == 9).unwrap();
        let out = nearest_fill(&row, &ends).unwrap();
        assert_eq!(out.samples(), &[10.0, 10.0, 10.0, 10.0, 10.0, 90.0, 90.0, 90.0, 90.0, 90.0]);

        let none = SampleMask::filled(6, 4, false).unwrap();
        assert!(matches!(nearest_fill(&i, &none), Err(FsrError::EmptyMask)));
    }

    #[test]
    fn linear_reproduces_planes_inside_hull() {
        let plane = |x: usize, y: usize| 12.5 + 0.75 * x as f64 - 1.25 * y as f64;
        let i = img(40, 30, plane);
        let mask = SampleMask::from_fn(40, 30, |x, y| (x * 7 + y * 11) % 5 == 0 || x == 0 || y == 0 || x == 39 || y == 29).unwrap();
        let (out, status) = linear_interpolate(&i, &mask).unwrap();
        assert_eq!(status, InterpolationStatus::Triangulated);
        for y in 0..30 {
            for x in 0..40 {
                assert!((out.get(x, y) - plane(x, y)).abs() < 1e-9, "({x},{y})");
            }
        }
    }

    #[test]
    fn linear_centroid_and_identity() {
        let i = img(7, 7, |x, y| if (x, y) == (6, 6) { 3.0 } else { 0.0 });
        let mask = SampleMask::from_fn(7, 7, |x, y| [(0, 0), (6, 0), (6, 6)].contains(&(x, y))).unwrap();
        let (out, _) = linear_interpolate(&i, &mask).unwrap();
        // Centroid of (0,0), (6,0), (6,6) is (4,2).
        assert!((out.get(4, 2) - 1.0).abs() < 1e-12);

        let full = SampleMask::filled(7, 7, true).unwrap();
        let j = img(7, 7, |x, y| (x * 3 + y) as f64);
        assert_eq!(linear_interpolate(&j, &full).unwrap().0, j);
    }

    #[test]
    fn linear_falls_back_when_degenerate() {
        let i = img(8, 8, |x, _| x as f64);
        let two = SampleMask::from_fn(8, 8, |x, y| y == 0 && (x == 0 || x == 7)).unwrap();
        assert_eq!(linear_interpolate(&i, &two).unwrap().1, InterpolationStatus::NearestFallback);
        let line = SampleMask::from_fn(8, 8, |x, y| x == y).unwrap();
        let (out, status) = linear_interpolate(&i, &line).unwrap();
        assert_eq!(status, InterpolationStatus::NearestFallback);
        assert_eq!(out, nearest_fill(&i, &line).unwrap());
    }

    #[test]
    fn band_limited_fixed_point_and_dc() {
        // In-band content: a low-frequency cosine with a full mask.
        let (w, h) = (32, 24);
        let i = img(w, h, |x, y| {
            100.0 + 20.0 * (std::f64::consts::TAU * (2.0 * x as f64 / w as f64 + 1.0 * y as f64 / h as f64)).cos()
        });
        let full = SampleMask::filled(w, h, true).unwrap();
        let out = band_limited_reconstruct(&i, &full, 50).unwrap();
        for (a, b) in out.samples().iter().zip(i.samples()) {
            assert!((a - b).abs() <= 1e-6 * b.abs());
        }

        // With two samples on 8x8 the band holds only DC, which is then
        // recovered at the geometric rate 1 - 2/64.
        let dc = img(8, 8, |_, _| 77.0);
        let two = SampleMask::from_fn(8, 8, |x, y| (x, y) == (1, 2) || (x, y) == (6, 5)).unwrap();
        assert_eq!(band_mask(8, 8, two.density()).as_slice().iter().filter(|&&b| b).count(), 1);
        let out = band_limited_reconstruct(&dc, &two, 1500).unwrap();
        assert!(out.samples().iter().all(|v| (v - 77.0).abs() < 1e-6));
    }

    #[test]
    fn band_limited_error_never_grows() {
        // Each round composes two projections, so the distance to any
        // consistent band-limited signal cannot increase.
        let (w, h) = (32, 24);
        let dc = img(w, h, |_, _| 77.0);
        let mask = crate::synth::random_mask(w, h, 0.25, 7).unwrap();
        let dist = |it| {
            let out = band_limited_reconstruct(&dc, &mask, it).unwrap();
            out.samples().iter().map(|v| (v - 77.0) * (v - 77.0)).sum::<f64>().sqrt()
        };
        let d: Vec<f64> = [0, 1, 5, 20, 80].into_iter().map(dist).collect();
        assert!(d.windows(2).all(|p| p[1] <= p[0] * (1.0 + 1e-12)), "{d:?}");
    }

    #[test]
    fn band_limited_output_is_in_band() {
        let i = img(30, 20, |x, y| ((x * 37 + y * 11) % 200) as f64);
        let mask = SampleMask::from_fn(30, 20, |x, y| (x * 5 + y * 3) % 7 < 2).unwrap();
        let out = band_limited_reconstruct(&i, &mask, 10).unwrap();
        let spectrum = forward_dft(&Grid::from_vec(20, 30, out.samples().to_vec()));
        let band = band_mask(20, 30, mask.density());
        let total: f64 = spectrum.as_slice().iter().map(|c| c.norm_sqr()).sum();
        let outside: f64 = spectrum
            .as_slice()
            .iter()
            .zip(band.as_slice())
            .filter(|(_, &keep)| !keep)
            .map(|(c, _)| c.norm_sqr())
            .sum();
        assert!(outside <= 1e-10 * total, "{outside} vs {total}");
    }
}
