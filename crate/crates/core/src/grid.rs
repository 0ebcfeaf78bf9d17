//! Dense row-major `f64` raster used for depth images, height rasters,
//! tactile frames and crop windows.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl Grid {
    pub fn new(width: usize, height: usize) -> Self {
        Self { width, height, data: vec![0.0; width * height] }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self { width, height, data }
    }

    pub fn from_vec(width: usize, height: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), width * height, "grid data length mismatch");
        Self { width, height, data }
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
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: f64) {
        self.data[y * self.width + x] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn fill(&mut self, v: f64) {
        self.data.fill(v);
    }

    pub fn mean(&self) -> f64 {
        if self.data.is_empty() {
            return 0.0;
        }
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }

    pub fn max(&self) -> f64 {
        self.data.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Bilinear sample at fractional pixel coordinates; out-of-range taps
    /// read as `pad`.
    pub fn sample_bilinear(&self, fx: f64, fy: f64, pad: f64) -> f64 {
        let x0 = fx.floor();
        let y0 = fy.floor();
        let tx = fx - x0;
        let ty = fy - y0;
        let tap = |xi: i64, yi: i64| -> f64 {
            if xi < 0 || yi < 0 || xi >= self.width as i64 || yi >= self.height as i64 {
                pad
            } else {
                self.get(xi as usize, yi as usize)
            }
        };
        let (x0, y0) = (x0 as i64, y0 as i64);
        let v00 = tap(x0, y0);
        let v10 = tap(x0 + 1, y0);
        let v01 = tap(x0, y0 + 1);
        let v11 = tap(x0 + 1, y0 + 1);
        v00 * (1.0 - tx) * (1.0 - ty)
            + v10 * tx * (1.0 - ty)
            + v01 * (1.0 - tx) * ty
            + v11 * tx * ty
    }

    /// Median of all values (copies the data; rasters here are small).
    pub fn median(&self) -> f64 {
        if self.data.is_empty() {
            return 0.0;
        }
        let mut v = self.data.clone();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = v.len();
        if n % 2 == 1 {
            v[n / 2]
        } else {
            0.5 * (v[n / 2 - 1] + v[n / 2])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bilinear_interpolates_and_pads() {
        let g = Grid::from_fn(4, 4, |x, y| (x + 10 * y) as f64);
        assert_eq!(g.sample_bilinear(1.0, 2.0, 0.0), 21.0);
        assert!((g.sample_bilinear(1.5, 2.0, 0.0) - 21.5).abs() < 1e-12);
        assert_eq!(g.sample_bilinear(-5.0, 0.0, -1.0), -1.0);
    }

    #[test]
    fn median_handles_even_and_odd() {
        let g = Grid::from_vec(3, 1, vec![3.0, 1.0, 2.0]);
        assert_eq!(g.median(), 2.0);
        let g = Grid::from_vec(4, 1, vec![4.0, 1.0, 2.0, 3.0]);
        assert_eq!(g.median(), 2.5);
    }
}
