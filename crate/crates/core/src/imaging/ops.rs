//! Mask algebra and pixel arithmetic shared by the conditioning pipeline.

use crate::error::{Error, Result};
use crate::imaging::{BoundingBox, ImageBuffer, Mask};

/// Element-wise product of a mask and an image, mask broadcast across
/// channels.
pub fn mask_apply(mask: &Mask, img: &ImageBuffer) -> Result<ImageBuffer> {
    if mask.width() != img.width() || mask.height() != img.height() {
        return Err(Error::Shape(format!(
            "mask {}x{} does not match image {}x{}",
            mask.width(),
            mask.height(),
            img.width(),
            img.height()
        )));
    }
    let mut out = img.clone();
    for y in 0..img.height() {
        for x in 0..img.width() {
            let m = mask.get(x, y);
            for ch in 0..img.channels() {
                out.set(x, y, ch, m * img.get(x, y, ch));
            }
        }
    }
    Ok(out)
}

/// Element-wise sum clamped to [0,1].
pub fn add_clamped(a: &ImageBuffer, b: &ImageBuffer) -> Result<ImageBuffer> {
    if !a.same_size(b) || a.channels() != b.channels() {
        return Err(Error::Shape(format!(
            "cannot add {}x{}x{} and {}x{}x{}",
            a.width(),
            a.height(),
            a.channels(),
            b.width(),
            b.height(),
            b.channels()
        )));
    }
    let data = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(&x, &y)| (x + y).clamp(0.0, 1.0))
        .collect();
    ImageBuffer::from_data(a.width(), a.height(), a.channels(), data)
}

/// Binary mask that is 1 on pixels inside `bbox` within `width` pixels of the
/// box border (inward band), 0 elsewhere on the canvas.
pub fn boundary_band(
    bbox: &BoundingBox,
    width: usize,
    canvas_width: usize,
    canvas_height: usize,
) -> Result<Mask> {
    if width == 0 {
        return Err(Error::Parameter("band width must be at least 1".into()));
    }
    bbox.check_within(canvas_width, canvas_height)?;
    let shorter = bbox.width().min(bbox.height());
    if 2 * width >= shorter {
        return Err(Error::DegenerateBand(format!(
            "band width {} covers the whole {}x{} box",
            width,
            bbox.width(),
            bbox.height()
        )));
    }
    let mut out = Mask::new(canvas_width, canvas_height);
    for y in bbox.y0..bbox.y1 {
        for x in bbox.x0..bbox.x1 {
            let from_border = (x - bbox.x0)
                .min(bbox.x1 - 1 - x)
                .min(y - bbox.y0)
                .min(bbox.y1 - 1 - y);
            if from_border < width {
                out.set(x, y, 1.0);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use rand::Rng;

    fn random_image(w: usize, h: usize, c: usize, label: &str) -> ImageBuffer {
        let mut rng = stream(21, label);
        let mut img = ImageBuffer::new(w, h, c);
        for v in img.data_mut() {
            *v = rng.gen::<f64>();
        }
        img
    }

    #[test]
    fn ones_mask_is_identity() {
        let img = random_image(7, 5, 3, "ones-mask");
        let mask = Mask::filled(7, 5, 1.0);
        assert_eq!(mask_apply(&mask, &img).unwrap(), img);
    }

    #[test]
    fn zeros_mask_annihilates() {
        let img = random_image(7, 5, 3, "zeros-mask");
        let mask = Mask::new(7, 5);
        let out = mask_apply(&mask, &img).unwrap();
        assert!(out.data().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn checkerboard_mask_selects_pixels() {
        let img = ImageBuffer::filled(4, 4, 3, 0.8);
        let mut mask = Mask::new(4, 4);
        for y in 0..4 {
            for x in 0..4 {
                if (x + y) % 2 == 0 {
                    mask.set(x, y, 1.0);
                }
            }
        }
        let out = mask_apply(&mask, &img).unwrap();
        for y in 0..4 {
            for x in 0..4 {
                let want = if (x + y) % 2 == 0 { 0.8 } else { 0.0 };
                for ch in 0..3 {
                    assert_eq!(out.get(x, y, ch), want);
                }
            }
        }
    }

    #[test]
    fn mask_apply_rejects_dimension_mismatch() {
        let img = ImageBuffer::new(4, 4, 3);
        let mask = Mask::new(5, 4);
        assert!(matches!(
            mask_apply(&mask, &img),
            Err(crate::error::Error::Shape(_))
        ));
    }

    #[test]
    fn mask_apply_is_idempotent_for_binary_masks() {
        let img = random_image(9, 6, 3, "idempotent");
        let mut mask = Mask::new(9, 6);
        let mut rng = stream(22, "idempotent-mask");
        for v in mask.data_mut() {
            *v = if rng.gen::<f64>() > 0.5 { 1.0 } else { 0.0 };
        }
        let once = mask_apply(&mask, &img).unwrap();
        let twice = mask_apply(&mask, &once).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn add_zero_is_identity() {
        let img = random_image(6, 6, 3, "add-zero");
        let zero = ImageBuffer::new(6, 6, 3);
        assert_eq!(add_clamped(&zero, &img).unwrap(), img);
    }

    #[test]
    fn add_clamps_at_one() {
        let a = ImageBuffer::filled(4, 4, 1, 0.7);
        let out = add_clamped(&a, &a).unwrap();
        assert!(out.data().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn add_matches_scalar_loop_and_commutes() {
        let a = random_image(8, 5, 3, "add-a");
        let b = random_image(8, 5, 3, "add-b");
        let ab = add_clamped(&a, &b).unwrap();
        let ba = add_clamped(&b, &a).unwrap();
        assert_eq!(ab, ba);
        for i in 0..a.data().len() {
            let want = (a.data()[i] + b.data()[i]).min(1.0);
            assert!((ab.data()[i] - want).abs() < 1e-15);
            assert!(ab.data()[i] >= 0.0 && ab.data()[i] <= 1.0);
        }
    }

    #[test]
    fn band_width_one_is_the_perimeter_ring() {
        let bbox = BoundingBox::new(3, 4, 13, 14).unwrap();
        let band = boundary_band(&bbox, 1, 20, 20).unwrap();
        assert_eq!(band.count_nonzero(), 36);
    }

    #[test]
    fn band_pixel_count_matches_predicate_oracle() {
        let bbox = BoundingBox::new(3, 4, 13, 14).unwrap();
        let band = boundary_band(&bbox, 4, 20, 20).unwrap();
        // Oracle: count pixels whose L-infinity distance from the box border
        // is below the band width.
        let mut want = 0;
        for y in 4..14usize {
            for x in 3..13usize {
                let d = (x - 3).min(12 - x).min(y - 4).min(13 - y);
                if d < 4 {
                    want += 1;
                }
            }
        }
        assert_eq!(want, 96);
        assert_eq!(band.count_nonzero(), want);
        for y in 0..20 {
            for x in 0..20 {
                let inside = (3..13).contains(&x) && (4..14).contains(&y);
                if !inside {
                    assert_eq!(band.get(x, y), 0.0);
                }
            }
        }
    }

    #[test]
    fn oversized_band_is_degenerate() {
        let bbox = BoundingBox::new(0, 0, 10, 10).unwrap();
        assert!(matches!(
            boundary_band(&bbox, 5, 16, 16),
            Err(crate::error::Error::DegenerateBand(_))
        ));
        assert!(boundary_band(&bbox, 4, 16, 16).is_ok());
    }
}
