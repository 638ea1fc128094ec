//! Minimal dense tensors: a 2-D `Grid` for volumes and masks (f32 storage)
//! and a `ChannelMap` for model outputs and training targets (f64 compute).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row-major H×W array of f32.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub h: usize,
    pub w: usize,
    pub data: Vec<f32>,
}

impl Grid {
    pub fn zeros(h: usize, w: usize) -> Self {
        Self { h, w, data: vec![0.0; h * w] }
    }

    pub fn from_fn(h: usize, w: usize, mut f: impl FnMut(usize, usize) -> f32) -> Self {
        let mut data = Vec::with_capacity(h * w);
        for i in 0..h {
            for j in 0..w {
                data.push(f(i, j));
            }
        }
        Self { h, w, data }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f32 {
        self.data[i * self.w + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut f32 {
        &mut self.data[i * self.w + j]
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Raw little-endian f32 bytes, row-major.
    pub fn to_le_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.data.len() * 4);
        for v in &self.data {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn from_le_bytes(h: usize, w: usize, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != h * w * 4 {
            return Err(Error::ShapeMismatch(format!(
                "expected {} bytes for {h}x{w} grid, got {}",
                h * w * 4,
                bytes.len()
            )));
        }
        let data = bytes
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect();
        Ok(Self { h, w, data })
    }
}

/// C×H×W map of f64 values, row-major within each channel.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelMap {
    pub channels: usize,
    pub h: usize,
    pub w: usize,
    pub data: Vec<f64>,
}

impl ChannelMap {
    pub fn zeros(channels: usize, h: usize, w: usize) -> Self {
        Self { channels, h, w, data: vec![0.0; channels * h * w] }
    }

    pub fn from_flat(channels: usize, h: usize, w: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != channels * h * w {
            return Err(Error::ShapeMismatch(format!(
                "flat data length {} does not match {channels}x{h}x{w}",
                data.len()
            )));
        }
        Ok(Self { channels, h, w, data })
    }

    #[inline]
    pub fn at(&self, c: usize, i: usize, j: usize) -> f64 {
        self.data[(c * self.h + i) * self.w + j]
    }

    #[inline]
    pub fn at_mut(&mut self, c: usize, i: usize, j: usize) -> &mut f64 {
        &mut self.data[(c * self.h + i) * self.w + j]
    }

    /// Borrow one channel as a flat H×W slice.
    pub fn channel(&self, c: usize) -> &[f64] {
        let n = self.h * self.w;
        &self.data[c * n..(c + 1) * n]
    }

    pub fn same_shape(&self, other: &ChannelMap) -> bool {
        self.channels == other.channels && self.h == other.h && self.w == other.w
    }

    /// 2× average pooling over each channel. Requires even H and W.
    pub fn avg_pool_2x(&self) -> Result<ChannelMap> {
        if self.h % 2 != 0 || self.w % 2 != 0 {
            return Err(Error::ShapeMismatch(format!(
                "cannot 2x-pool odd shape {}x{}",
                self.h, self.w
            )));
        }
        let (oh, ow) = (self.h / 2, self.w / 2);
        let mut out = ChannelMap::zeros(self.channels, oh, ow);
        for c in 0..self.channels {
            for i in 0..oh {
                for j in 0..ow {
                    let s = self.at(c, 2 * i, 2 * j)
                        + self.at(c, 2 * i, 2 * j + 1)
                        + self.at(c, 2 * i + 1, 2 * j)
                        + self.at(c, 2 * i + 1, 2 * j + 1);
                    *out.at_mut(c, i, j) = s / 4.0;
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_byte_round_trip_is_exact() {
        let g = Grid::from_fn(3, 4, |i, j| (i as f32) * 0.1 - (j as f32) * 7.25);
        let back = Grid::from_le_bytes(3, 4, &g.to_le_bytes()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn avg_pool_halves_and_averages() {
        let mut m = ChannelMap::zeros(1, 2, 2);
        m.data.copy_from_slice(&[1.0, 2.0, 3.0, 6.0]);
        let p = m.avg_pool_2x().unwrap();
        assert_eq!((p.h, p.w), (1, 1));
        assert_eq!(p.data[0], 3.0);
        assert!(ChannelMap::zeros(1, 3, 4).avg_pool_2x().is_err());
    }
}
