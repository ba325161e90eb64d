//! Whole-image reconstruction: blocks are visited in scheduled order, each
//! modeled over its surrounding reconstruction area, and the unknown pixels
//! of the block replaced by the model. Finished blocks feed later ones as
//! reconstructed (`R`) samples.

use std::collections::VecDeque;

use crate::engine::ModelGenerator;
use crate::error::{FsrError, Result};
use crate::grid::Grid;
use crate::image::{subsample, Image, SampleMask};
use crate::params::Params;
use crate::scalar::Scalar;
use crate::scheduler::{block_order, density_map, BlockGrid, BlockRect};
use crate::weighting::{AreaCategory, DecayWindow};

/// One block together with its neighborhood, laid out on the transform grid.
#[derive(Clone, Debug, PartialEq)]
pub struct ReconstructionArea<T> {
    pub amplitudes: Grid<T>,
    pub categories: Grid<AreaCategory>,
    /// Image coordinates of area cell `(0, 0)`; may be negative.
    pub origin: (isize, isize),
    /// Block pixels inside the area: `(row, col, height, width)`.
    pub block: (usize, usize, usize, usize),
}

impl<T> ReconstructionArea<T> {
    pub fn count(&self, category: AreaCategory) -> usize {
        self.categories.as_slice().iter().filter(|&&c| c == category).count()
    }
}

/// Extracts the reconstruction area of `block`.
///
/// The nominal block sits centered in the `M x N` area with `border_width`
/// cells of neighborhood on each side. Cells outside that neighborhood or
/// outside the image are padding (`Unknown`, amplitude zero). Inside, mask
/// pixels are `Available`, pixels flagged in `reconstructed` are
/// `Reconstructed`, anything else `Unknown`.
pub fn extract_area<T: Scalar>(
    work: &Image<T>,
    mask: &SampleMask,
    reconstructed: &[bool],
    grid: &BlockGrid,
    block: usize,
    params: &Params<T>,
) -> ReconstructionArea<T> {
    let (rows, cols) = (params.transform_rows, params.transform_cols);
    let bs = params.block_size;
    let border = params.border_width;
    let span = bs + 2 * border;
    let off_m = (rows - span) / 2 + border;
    let off_n = (cols - span) / 2 + border;
    let rect: BlockRect = grid.rect(block);
    let y0 = rect.y as isize - off_m as isize;
    let x0 = rect.x as isize - off_n as isize;
    let (w, h) = (work.width() as isize, work.height() as isize);

    let mut amplitudes = Grid::filled(rows, cols, T::zero());
    let mut categories = Grid::filled(rows, cols, AreaCategory::Unknown);
    let m_range = off_m - border..off_m + bs + border;
    let n_range = off_n - border..off_n + bs + border;
    for m in m_range {
        let y = y0 + m as isize;
        if y < 0 || y >= h {
            continue;
        }
        for n in n_range.clone() {
            let x = x0 + n as isize;
            if x < 0 || x >= w {
                continue;
            }
            let (x, y) = (x as usize, y as usize);
            let category = if mask.get(x, y) {
                AreaCategory::Available
            } else if reconstructed[y * work.width() + x] {
                AreaCategory::Reconstructed
            } else {
                continue;
            };
            categories[(m, n)] = category;
            amplitudes[(m, n)] = work.get(x, y);
        }
    }
    ReconstructionArea {
        amplitudes,
        categories,
        origin: (x0, y0),
        block: (off_m, off_n, rect.height, rect.width),
    }
}

/// Stateful block-by-block reconstruction of one image.
struct Pass<'a, T: Scalar> {
    mask: &'a SampleMask,
    params: &'a Params<T>,
    grid: BlockGrid,
    generator: ModelGenerator<T>,
    window: DecayWindow<T>,
    work: Image<T>,
    reconstructed: Vec<bool>,
}

impl<'a, T: Scalar> Pass<'a, T> {
    fn new(s_nr: &Image<T>, mask: &'a SampleMask, params: &'a Params<T>) -> Result<Self> {
        params.validate()?;
        let work = subsample(s_nr, mask)?;
        if mask.count() == 0 {
            return Err(FsrError::EmptyMask);
        }
        Ok(Self {
            mask,
            params,
            grid: BlockGrid::new(mask.width(), mask.height(), params.block_size),
            generator: ModelGenerator::for_params(params),
            window: DecayWindow::new(params.transform_rows, params.transform_cols, params.decay, params.reuse)?,
            work,
            reconstructed: vec![false; mask.width() * mask.height()],
        })
    }

    fn block_complete(&self, rect: &BlockRect) -> bool {
        (rect.y..rect.y + rect.height).all(|y| (rect.x..rect.x + rect.width).all(|x| self.mask.get(x, y)))
    }

    fn mark(&mut self, rect: &BlockRect) {
        let width = self.mask.width();
        for y in rect.y..rect.y + rect.height {
            self.reconstructed[y * width + rect.x..y * width + rect.x + rect.width].fill(true);
        }
    }

    /// Processes one block. Returns `false` when the area holds no usable
    /// samples yet.
    fn process(&mut self, block: usize) -> Result<bool> {
        let rect = self.grid.rect(block);
        if self.block_complete(&rect) {
            self.mark(&rect);
            return Ok(true);
        }
        let area = extract_area(&self.work, self.mask, &self.reconstructed, &self.grid, block, self.params);
        let usable = area.count(AreaCategory::Available) > 0
            || (self.params.reuse > T::zero() && area.count(AreaCategory::Reconstructed) > 0);
        if !usable {
            return Ok(false);
        }
        let weights = self.window.apply(&area.categories);
        let state = self.generator.run(&area.amplitudes, &weights, self.params)?;
        let model = self.generator.spatial_model(&state);
        let (bm, bn, _, _) = area.block;
        for dy in 0..rect.height {
            for dx in 0..rect.width {
                let (x, y) = (rect.x + dx, rect.y + dy);
                if !self.mask.get(x, y) {
                    self.work.set(x, y, model[(bm + dy, bn + dx)]);
                }
            }
        }
        self.mark(&rect);
        Ok(true)
    }

    fn run(mut self) -> Result<(Image<T>, Vec<bool>)> {
        let density = density_map::<T>(self.mask, self.params.block_size);
        let order = block_order(&density, &self.grid, self.params.order);
        // Blocks without usable samples go to the back of the queue and are
        // retried once their neighbors are done; a full cycle without
        // progress is an error.
        let mut queue: VecDeque<usize> = order.order.into();
        let mut since_progress = 0;
        while let Some(block) = queue.pop_front() {
            if self.process(block)? {
                since_progress = 0;
            } else {
                since_progress += 1;
                if since_progress > queue.len() {
                    return Err(FsrError::NoUsableSamples);
                }
                queue.push_back(block);
            }
        }
        Ok((self.work, self.reconstructed))
    }
}

/// Reconstructs every unknown pixel of `s_nr`. Pixels where `mask` is set
/// are returned unchanged.
pub fn reconstruct_image<T: Scalar>(s_nr: &Image<T>, mask: &SampleMask, params: &Params<T>) -> Result<Image<T>> {
    let (mut out, _) = Pass::new(s_nr, mask, params)?.run()?;
    // Known samples are copied back from the input untouched.
    for y in 0..mask.height() {
        for x in 0..mask.width() {
            if mask.get(x, y) {
                out.set(x, y, s_nr.get(x, y));
            }
        }
    }
    Ok(out)
}
