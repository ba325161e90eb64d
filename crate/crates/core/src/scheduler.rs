//! Block partitioning and the density-driven processing order.

use crate::grid::Grid;
use crate::image::SampleMask;
use crate::params::OrderMode;
use crate::scalar::Scalar;

/// Partition of an image into `block_size` squares; edge blocks may be partial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockGrid {
    pub width: usize,
    pub height: usize,
    pub block_size: usize,
    pub across: usize,
    pub down: usize,
}

/// Pixel rectangle of one block, clipped to the image.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockRect {
    pub x: usize,
    pub y: usize,
    pub width: usize,
    pub height: usize,
}

impl BlockGrid {
    pub fn new(width: usize, height: usize, block_size: usize) -> Self {
        assert!(block_size >= 1, "block size must be at least 1");
        Self {
            width,
            height,
            block_size,
            across: width.div_ceil(block_size),
            down: height.div_ceil(block_size),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.across * self.down
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rectangle of block `index` (row-major block numbering).
    pub fn rect(&self, index: usize) -> BlockRect {
        assert!(index < self.len(), "block index {index} out of range");
        let (bx, by) = (index % self.across, index / self.across);
        let (x, y) = (bx * self.block_size, by * self.block_size);
        BlockRect {
            x,
            y,
            width: self.block_size.min(self.width - x),
            height: self.block_size.min(self.height - y),
        }
    }

    /// Block containing pixel `(x, y)`.
    pub fn block_of(&self, x: usize, y: usize) -> usize {
        (y / self.block_size) * self.across + x / self.block_size
    }
}

/// Visiting order of the blocks with the score that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct ProcessingOrder<T> {
    /// Block indices in processing order.
    pub order: Vec<usize>,
    /// Score of each block, indexed by block.
    pub scores: Vec<T>,
}

impl<T: Scalar> ProcessingOrder<T> {
    pub fn scores_in_order(&self) -> impl Iterator<Item = T> + '_ {
        self.order.iter().map(|&b| self.scores[b])
    }
}

/// Normalized 1-D Gaussian taps whose full width at half maximum equals
/// `block_size`, truncated at three standard deviations.
pub fn gaussian_taps<T: Scalar>(block_size: usize) -> Vec<T> {
    let sigma = T::from_count(block_size) / (T::lit(2.0) * (T::lit(2.0) * T::LN_2()).sqrt());
    let radius = (T::lit(3.0) * sigma).ceil().to_usize().unwrap_or(0);
    let taps: Vec<T> = (0..=2 * radius)
        .map(|i| {
            let d = T::from_count(i) - T::from_count(radius);
            (-(d * d) / (T::lit(2.0) * sigma * sigma)).exp()
        })
        .collect();
    let total = taps.iter().fold(T::zero(), |a, &t| a + t);
    taps.into_iter().map(|t| t / total).collect()
}

/// Local sample density: the mask convolved with a 2-D Gaussian (unit sum),
/// zero outside the image. Rows follow `y`.
pub fn density_map<T: Scalar>(mask: &SampleMask, block_size: usize) -> Grid<T> {
    assert!(block_size >= 1, "block size must be at least 1");
    let taps = gaussian_taps::<T>(block_size);
    let radius = taps.len() / 2;
    let (w, h) = (mask.width(), mask.height());
    let one = |b: bool| if b { T::one() } else { T::zero() };

    let mut horizontal = Grid::filled(h, w, T::zero());
    for y in 0..h {
        for x in 0..w {
            let mut acc = T::zero();
            for (i, &t) in taps.iter().enumerate() {
                let sx = x + i;
                if sx >= radius && sx - radius < w {
                    acc += t * one(mask.get(sx - radius, y));
                }
            }
            horizontal[(y, x)] = acc;
        }
    }
    Grid::from_fn(h, w, |y, x| {
        let mut acc = T::zero();
        for (i, &t) in taps.iter().enumerate() {
            let sy = y + i;
            if sy >= radius && sy - radius < h {
                acc += t * horizontal[(sy - radius, x)];
            }
        }
        acc
    })
}

/// Orders blocks by decreasing summed density (ties by block index), or
/// row-major in line-scan mode.
pub fn block_order<T: Scalar>(density: &Grid<T>, grid: &BlockGrid, mode: OrderMode) -> ProcessingOrder<T> {
    assert!(density.rows() == grid.height && density.cols() == grid.width, "density map size");
    let scores: Vec<T> = (0..grid.len())
        .map(|b| {
            let r = grid.rect(b);
            let mut acc = T::zero();
            for y in r.y..r.y + r.height {
                for &v in &density.row(y)[r.x..r.x + r.width] {
                    acc += v;
                }
            }
            acc
        })
        .collect();
    let mut order: Vec<usize> = (0..grid.len()).collect();
    if mode == OrderMode::Density {
        order.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).expect("finite scores").then(a.cmp(&b)));
    }
    ProcessingOrder { order, scores }
}
