//! Separable Gaussian convolution.

use crate::error::{Error, Result};
use crate::imaging::{ImageBuffer, Mask};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Padding {
    Replicate,
    Periodic,
}

/// Normalized 1-D Gaussian taps for radius `ceil(3σ)`.
fn gaussian_kernel(sigma: f64) -> Vec<f64> {
    let radius = (3.0 * sigma).ceil() as i64;
    let mut taps: Vec<f64> = (-radius..=radius)
        .map(|k| (-((k * k) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let sum: f64 = taps.iter().sum();
    for t in &mut taps {
        *t /= sum;
    }
    taps
}

#[inline]
fn resolve(index: i64, len: usize, padding: Padding) -> usize {
    let n = len as i64;
    match padding {
        Padding::Replicate => index.clamp(0, n - 1) as usize,
        Padding::Periodic => index.rem_euclid(n) as usize,
    }
}

fn convolve_separable(
    width: usize,
    height: usize,
    channels: usize,
    data: &[f64],
    taps: &[f64],
    padding: Padding,
) -> Vec<f64> {
    let radius = (taps.len() / 2) as i64;
    let mut horizontal = vec![0.0; data.len()];
    for y in 0..height {
        for x in 0..width {
            for ch in 0..channels {
                let mut acc = 0.0;
                for (i, &w) in taps.iter().enumerate() {
                    let sx = resolve(x as i64 + i as i64 - radius, width, padding);
                    acc += w * data[(y * width + sx) * channels + ch];
                }
                horizontal[(y * width + x) * channels + ch] = acc;
            }
        }
    }
    let mut out = vec![0.0; data.len()];
    for y in 0..height {
        for x in 0..width {
            for ch in 0..channels {
                let mut acc = 0.0;
                for (i, &w) in taps.iter().enumerate() {
                    let sy = resolve(y as i64 + i as i64 - radius, height, padding);
                    acc += w * horizontal[(sy * width + x) * channels + ch];
                }
                out[(y * width + x) * channels + ch] = acc;
            }
        }
    }
    out
}

pub(crate) fn gaussian_blur_padded(
    img: &ImageBuffer,
    sigma: f64,
    padding: Padding,
) -> Result<ImageBuffer> {
    if !(sigma > 0.0) {
        return Err(Error::Parameter(format!("sigma must be positive, got {sigma}")));
    }
    let taps = gaussian_kernel(sigma);
    let data = convolve_separable(
        img.width(),
        img.height(),
        img.channels(),
        img.data(),
        &taps,
        padding,
    );
    ImageBuffer::from_data(img.width(), img.height(), img.channels(), data)
}

/// Separable Gaussian blur with kernel radius `ceil(3σ)` and edge-replicate
/// padding. Output dimensions equal the input's.
pub fn gaussian_blur(img: &ImageBuffer, sigma: f64) -> Result<ImageBuffer> {
    gaussian_blur_padded(img, sigma, Padding::Replicate)
}

/// Gaussian blur of a single-channel mask, same conventions as [`gaussian_blur`].
pub fn gaussian_blur_mask(mask: &Mask, sigma: f64) -> Result<Mask> {
    let blurred = gaussian_blur(&mask.to_image(), sigma)?;
    Mask::from_image(&blurred)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use rand::Rng;

    /// Dense 2-D convolution with an outer-product Gaussian kernel and
    /// replicate padding. Independent of the separable path above.
    fn dense_blur_oracle(img: &ImageBuffer, sigma: f64) -> ImageBuffer {
        let taps = gaussian_kernel(sigma);
        let radius = (taps.len() / 2) as i64;
        let (w, h, c) = (img.width(), img.height(), img.channels());
        let mut out = ImageBuffer::new(w, h, c);
        for y in 0..h {
            for x in 0..w {
                for ch in 0..c {
                    let mut acc = 0.0;
                    for (i, &wy) in taps.iter().enumerate() {
                        for (j, &wx) in taps.iter().enumerate() {
                            let sy = (y as i64 + i as i64 - radius).clamp(0, h as i64 - 1) as usize;
                            let sx = (x as i64 + j as i64 - radius).clamp(0, w as i64 - 1) as usize;
                            acc += wy * wx * img.get(sx, sy, ch);
                        }
                    }
                    out.set(x, y, ch, acc);
                }
            }
        }
        out
    }

    #[test]
    fn constant_image_is_preserved() {
        let img = ImageBuffer::filled(16, 12, 3, 0.5);
        let blurred = gaussian_blur(&img, 2.5).unwrap();
        for &v in blurred.data() {
            assert!((v - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn impulse_matches_dense_convolution_oracle() {
        let mut img = ImageBuffer::new(15, 15, 1);
        img.set(7, 7, 0, 1.0);
        let blurred = gaussian_blur(&img, 1.0).unwrap();
        let expected = dense_blur_oracle(&img, 1.0);
        for (a, b) in blurred.data().iter().zip(expected.data()) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn random_image_matches_dense_convolution_oracle() {
        let mut rng = stream(11, "blur-oracle");
        let mut img = ImageBuffer::new(13, 9, 3);
        for v in img.data_mut() {
            *v = rng.gen::<f64>();
        }
        let blurred = gaussian_blur(&img, 1.7).unwrap();
        let expected = dense_blur_oracle(&img, 1.7);
        for (a, b) in blurred.data().iter().zip(expected.data()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn non_positive_sigma_is_a_parameter_error() {
        let img = ImageBuffer::new(4, 4, 1);
        assert!(matches!(
            gaussian_blur(&img, 0.0),
            Err(crate::error::Error::Parameter(_))
        ));
        assert!(gaussian_blur(&img, -1.0).is_err());
    }

    #[test]
    fn periodic_padding_preserves_mean_exactly() {
        // Unit-sum kernel on a periodic domain leaves the mean untouched.
        let mut rng = stream(12, "blur-mean");
        let mut img = ImageBuffer::new(17, 11, 1);
        for v in img.data_mut() {
            *v = rng.gen::<f64>();
        }
        let blurred = gaussian_blur_padded(&img, 2.0, Padding::Periodic).unwrap();
        assert!((blurred.mean() - img.mean()).abs() < 1e-6);
    }

    #[test]
    fn output_dimensions_equal_input() {
        let img = ImageBuffer::new(9, 5, 3);
        let blurred = gaussian_blur(&img, 3.0).unwrap();
        assert_eq!(blurred.width(), 9);
        assert_eq!(blurred.height(), 5);
        assert_eq!(blurred.channels(), 3);
    }
}
