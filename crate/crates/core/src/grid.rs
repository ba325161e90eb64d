//! Dense row-major two-dimensional storage used for spectra, weights and
//! reconstruction areas.

use std::ops::{Index, IndexMut};

/// A `rows x cols` array stored row-major. Row index `m`, column index `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid<V> {
    rows: usize,
    cols: usize,
    data: Vec<V>,
}

impl<V: Clone> Grid<V> {
    pub fn filled(rows: usize, cols: usize, value: V) -> Self {
        Self { rows, cols, data: vec![value; rows * cols] }
    }
}

impl<V> Grid<V> {
    /// Wraps a row-major buffer. Panics if the length does not match.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<V>) -> Self {
        assert_eq!(data.len(), rows * cols, "grid buffer length");
        Self { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> V) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for m in 0..rows {
            for n in 0..cols {
                data.push(f(m, n));
            }
        }
        Self { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[V] {
        &self.data
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [V] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<V> {
        self.data
    }

    pub fn row(&self, m: usize) -> &[V] {
        &self.data[m * self.cols..(m + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl FnMut(&V) -> U) -> Grid<U> {
        Grid { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Iterates `(m, n, value)` in row-major order.
    pub fn indexed(&self) -> impl Iterator<Item = (usize, usize, &V)> {
        let cols = self.cols;
        self.data.iter().enumerate().map(move |(i, v)| (i / cols, i % cols, v))
    }
}

impl<V> Index<(usize, usize)> for Grid<V> {
    type Output = V;

    #[inline]
    fn index(&self, (m, n): (usize, usize)) -> &V {
        debug_assert!(m < self.rows && n < self.cols);
        &self.data[m * self.cols + n]
    }
}

impl<V> IndexMut<(usize, usize)> for Grid<V> {
    #[inline]
    fn index_mut(&mut self, (m, n): (usize, usize)) -> &mut V {
        debug_assert!(m < self.rows && n < self.cols);
        &mut self.data[m * self.cols + n]
    }
}
