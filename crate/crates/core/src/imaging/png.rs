//! PNG load/save for images and masks.
//!
//! Files are 8-bit grayscale or RGB; intensities are divided by 255 on load
//! and rounded back on save. Masks are written as single-channel PNGs.

use std::path::Path;

use crate::error::{Error, Result};
use crate::imaging::{ImageBuffer, Mask};

fn open(path: &Path) -> Result<image::DynamicImage> {
    image::open(path).map_err(|source| Error::Image {
        path: path.to_path_buf(),
        source,
    })
}

impl ImageBuffer {
    /// Load an 8-bit PNG. Grayscale files become single-channel buffers,
    /// everything else is converted to RGB.
    pub fn load_png(path: &Path) -> Result<ImageBuffer> {
        let dynamic = open(path)?;
        match dynamic {
            image::DynamicImage::ImageLuma8(gray) => {
                let (w, h) = gray.dimensions();
                let data = gray.as_raw().iter().map(|&v| v as f64 / 255.0).collect();
                ImageBuffer::from_data(w as usize, h as usize, 1, data)
            }
            other => {
                let rgb = other.to_rgb8();
                let (w, h) = rgb.dimensions();
                let data = rgb.as_raw().iter().map(|&v| v as f64 / 255.0).collect();
                ImageBuffer::from_data(w as usize, h as usize, 3, data)
            }
        }
    }

    /// Save as an 8-bit PNG, grayscale for single-channel buffers.
    pub fn save_png(&self, path: &Path) -> Result<()> {
        let bytes: Vec<u8> = self
            .data()
            .iter()
            .map(|&v| (v.clamp(0.0, 1.0) * 255.0).round() as u8)
            .collect();
        let (w, h) = (self.width() as u32, self.height() as u32);
        let result = match self.channels() {
            1 => image::GrayImage::from_raw(w, h, bytes)
                .expect("buffer length checked by construction")
                .save(path),
            _ => image::RgbImage::from_raw(w, h, bytes)
                .expect("buffer length checked by construction")
                .save(path),
        };
        result.map_err(|source| Error::Image {
            path: path.to_path_buf(),
            source,
        })
    }
}

impl Mask {
    pub fn load_png(path: &Path) -> Result<Mask> {
        let gray = open(path)?.to_luma8();
        let (w, h) = gray.dimensions();
        let data = gray.as_raw().iter().map(|&v| v as f64 / 255.0).collect();
        Mask::from_data(w as usize, h as usize, data)
    }

    pub fn save_png(&self, path: &Path) -> Result<()> {
        self.to_image().save_png(path)
    }
}
