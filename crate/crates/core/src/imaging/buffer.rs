//! Raster buffers and bounding boxes.
//!
//! Intensities are unit-interval `f64` internally; 8-bit values from files
//! are divided by 255 on load and rounded on save.

use crate::error::{Error, Result};

/// H×W×C raster of unit-interval intensities, row-major, channel-interleaved.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageBuffer {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<f64>,
}

impl ImageBuffer {
    /// All-zero image. `channels` must be 1 or 3.
    pub fn new(width: usize, height: usize, channels: usize) -> Self {
        assert!(channels == 1 || channels == 3, "channels must be 1 or 3");
        ImageBuffer {
            width,
            height,
            channels,
            data: vec![0.0; width * height * channels],
        }
    }

    /// Image filled with a constant intensity on every channel.
    pub fn filled(width: usize, height: usize, channels: usize, value: f64) -> Self {
        let mut img = Self::new(width, height, channels);
        img.data.fill(value);
        img
    }

    pub fn from_data(width: usize, height: usize, channels: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != width * height * channels {
            return Err(Error::Shape(format!(
                "data length {} does not equal {}x{}x{}",
                data.len(),
                width,
                height,
                channels
            )));
        }
        Ok(ImageBuffer {
            width,
            height,
            channels,
            data,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, ch: usize) -> f64 {
        self.data[(y * self.width + x) * self.channels + ch]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, ch: usize, value: f64) {
        self.data[(y * self.width + x) * self.channels + ch] = value;
    }

    /// True when the spatial dimensions match `other`'s.
    pub fn same_size(&self, other: &ImageBuffer) -> bool {
        self.width == other.width && self.height == other.height
    }

    /// Mean intensity over all pixels and channels.
    pub fn mean(&self) -> f64 {
        if self.data.is_empty() {
            return 0.0;
        }
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }

    /// Copy of the pixels inside `bbox`.
    pub fn crop(&self, bbox: &BoundingBox) -> Result<ImageBuffer> {
        bbox.check_within(self.width, self.height)?;
        let (w, h) = (bbox.width(), bbox.height());
        let mut out = ImageBuffer::new(w, h, self.channels);
        for y in 0..h {
            for x in 0..w {
                for ch in 0..self.channels {
                    out.set(x, y, ch, self.get(bbox.x0 + x, bbox.y0 + y, ch));
                }
            }
        }
        Ok(out)
    }

    /// Write `src` into `self` with its top-left corner at `(x, y)`.
    pub fn paste(&mut self, src: &ImageBuffer, x: usize, y: usize) -> Result<()> {
        if src.channels != self.channels {
            return Err(Error::Shape(format!(
                "paste channel mismatch: {} vs {}",
                src.channels, self.channels
            )));
        }
        if x + src.width > self.width || y + src.height > self.height {
            return Err(Error::Shape(format!(
                "paste of {}x{} at ({}, {}) exceeds {}x{}",
                src.width, src.height, x, y, self.width, self.height
            )));
        }
        for sy in 0..src.height {
            for sx in 0..src.width {
                for ch in 0..self.channels {
                    self.set(x + sx, y + sy, ch, src.get(sx, sy, ch));
                }
            }
        }
        Ok(())
    }

    /// Per-pixel luminance (mean over channels) as a mask-shaped map.
    pub fn luminance(&self) -> Mask {
        let mut out = Mask::new(self.width, self.height);
        for y in 0..self.height {
            for x in 0..self.width {
                let mut sum = 0.0;
                for ch in 0..self.channels {
                    sum += self.get(x, y, ch);
                }
                out.set(x, y, sum / self.channels as f64);
            }
        }
        out
    }

    /// Expand a single-channel image to `channels` by replication.
    pub fn broadcast(&self, channels: usize) -> ImageBuffer {
        assert_eq!(self.channels, 1, "broadcast expects a single-channel image");
        let mut out = ImageBuffer::new(self.width, self.height, channels);
        for y in 0..self.height {
            for x in 0..self.width {
                let v = self.get(x, y, 0);
                for ch in 0..channels {
                    out.set(x, y, ch, v);
                }
            }
        }
        out
    }
}

/// H×W map of unit-interval values; binarized masks contain only {0,1}.
#[derive(Debug, Clone, PartialEq)]
pub struct Mask {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl Mask {
    pub fn new(width: usize, height: usize) -> Self {
        Mask {
            width,
            height,
            data: vec![0.0; width * height],
        }
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Self {
        Mask {
            width,
            height,
            data: vec![value; width * height],
        }
    }

    pub fn from_data(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != width * height {
            return Err(Error::Shape(format!(
                "data length {} does not equal {}x{}",
                data.len(),
                width,
                height
            )));
        }
        Ok(Mask {
            width,
            height,
            data,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: f64) {
        self.data[y * self.width + x] = value;
    }

    pub fn same_size(&self, other: &Mask) -> bool {
        self.width == other.width && self.height == other.height
    }

    /// Threshold into a strict {0,1} mask: values ≥ `threshold` become 1.
    pub fn binarize(&self, threshold: f64) -> Mask {
        let data = self
            .data
            .iter()
            .map(|&v| if v >= threshold { 1.0 } else { 0.0 })
            .collect();
        Mask {
            width: self.width,
            height: self.height,
            data,
        }
    }

    /// True when every value is exactly 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.data.iter().all(|&v| v == 0.0 || v == 1.0)
    }

    /// Number of nonzero entries.
    pub fn count_nonzero(&self) -> usize {
        self.data.iter().filter(|&&v| v != 0.0).count()
    }

    pub fn crop(&self, bbox: &BoundingBox) -> Result<Mask> {
        bbox.check_within(self.width, self.height)?;
        let (w, h) = (bbox.width(), bbox.height());
        let mut out = Mask::new(w, h);
        for y in 0..h {
            for x in 0..w {
                out.set(x, y, self.get(bbox.x0 + x, bbox.y0 + y));
            }
        }
        Ok(out)
    }

    pub fn paste(&mut self, src: &Mask, x: usize, y: usize) -> Result<()> {
        if x + src.width > self.width || y + src.height > self.height {
            return Err(Error::Shape(format!(
                "paste of {}x{} at ({}, {}) exceeds {}x{}",
                src.width, src.height, x, y, self.width, self.height
            )));
        }
        for sy in 0..src.height {
            for sx in 0..src.width {
                self.set(x + sx, y + sy, src.get(sx, sy));
            }
        }
        Ok(())
    }

    /// View the mask as a single-channel image.
    pub fn to_image(&self) -> ImageBuffer {
        ImageBuffer {
            width: self.width,
            height: self.height,
            channels: 1,
            data: self.data.clone(),
        }
    }

    pub fn from_image(img: &ImageBuffer) -> Result<Mask> {
        if img.channels() != 1 {
            return Err(Error::Shape(format!(
                "mask conversion expects 1 channel, got {}",
                img.channels()
            )));
        }
        Ok(Mask {
            width: img.width(),
            height: img.height(),
            data: img.data().to_vec(),
        })
    }
}

/// Axis-aligned pixel rectangle: inclusive top-left, exclusive bottom-right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BoundingBox {
    pub x0: usize,
    pub y0: usize,
    pub x1: usize,
    pub y1: usize,
}

impl BoundingBox {
    pub fn new(x0: usize, y0: usize, x1: usize, y1: usize) -> Result<Self> {
        if x0 >= x1 || y0 >= y1 {
            return Err(Error::Parameter(format!(
                "degenerate bounding box [{x0}, {y0}, {x1}, {y1}]"
            )));
        }
        Ok(BoundingBox { x0, y0, x1, y1 })
    }

    pub fn width(&self) -> usize {
        self.x1 - self.x0
    }

    pub fn height(&self) -> usize {
        self.y1 - self.y0
    }

    /// Box area in pixels².
    pub fn area(&self) -> usize {
        self.width() * self.height()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x >= self.x0 && x < self.x1 && y >= self.y0 && y < self.y1
    }

    /// Positive-area interior intersection; shared edges do not count.
    pub fn intersection_area(&self, other: &BoundingBox) -> usize {
        let x0 = self.x0.max(other.x0);
        let y0 = self.y0.max(other.y0);
        let x1 = self.x1.min(other.x1);
        let y1 = self.y1.min(other.y1);
        if x0 < x1 && y0 < y1 {
            (x1 - x0) * (y1 - y0)
        } else {
            0
        }
    }

    pub fn check_within(&self, width: usize, height: usize) -> Result<()> {
        if self.x1 > width || self.y1 > height {
            return Err(Error::Shape(format!(
                "box [{}, {}, {}, {}] exceeds {}x{} canvas",
                self.x0, self.y0, self.x1, self.y1, width, height
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crop_then_paste_round_trips() {
        let mut img = ImageBuffer::new(8, 8, 3);
        for (i, v) in img.data_mut().iter_mut().enumerate() {
            *v = (i % 97) as f64 / 96.0;
        }
        let bbox = BoundingBox::new(2, 3, 6, 7).unwrap();
        let crop = img.crop(&bbox).unwrap();
        let mut dst = ImageBuffer::new(8, 8, 3);
        dst.paste(&crop, 2, 3).unwrap();
        for y in 3..7 {
            for x in 2..6 {
                for ch in 0..3 {
                    assert_eq!(dst.get(x, y, ch), img.get(x, y, ch));
                }
            }
        }
    }

    #[test]
    fn degenerate_box_rejected() {
        assert!(BoundingBox::new(5, 5, 5, 9).is_err());
        assert!(BoundingBox::new(5, 5, 9, 5).is_err());
    }

    #[test]
    fn intersection_area_matches_hand_count() {
        let a = BoundingBox::new(0, 0, 10, 10).unwrap();
        let b = BoundingBox::new(5, 5, 15, 15).unwrap();
        assert_eq!(a.intersection_area(&b), 25);
        // Shared edge only: no positive-area intersection.
        let c = BoundingBox::new(10, 0, 20, 10).unwrap();
        assert_eq!(a.intersection_area(&c), 0);
    }

    #[test]
    fn binarize_is_strict() {
        let m = Mask::from_data(2, 2, vec![0.0, 0.49, 0.5, 1.0]).unwrap();
        let b = m.binarize(0.5);
        assert_eq!(b.data(), &[0.0, 0.0, 1.0, 1.0]);
        assert!(b.is_binary());
    }
}
