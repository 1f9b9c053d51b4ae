//! Adaptive glyph condition construction.
//!
//! Each annotated text region is classified by the average area a single
//! character occupies. Large regions keep the segmentation detail: edges of
//! the segmentation mask plus the mask-gated image. Small regions, where
//! segmentation quality collapses, fall back to the raw image crop with a
//! Gaussian blur over an inward boundary band to smooth the transition. The
//! glyph-region mask used by the training loss follows the same split:
//! segmentation ink for large regions, the filled position box for small
//! ones.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::imaging::{
    add_clamped, boundary_band, canny, gaussian_blur, mask_apply, BoundingBox, ImageBuffer, Mask,
};

/// One annotated text region: bounding box, text, and character count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlyphRegion {
    pub bbox: BoundingBox,
    pub text: String,
    char_count: usize,
}

impl GlyphRegion {
    /// Region whose character count is derived from `text`.
    pub fn new(bbox: BoundingBox, text: impl Into<String>) -> Result<Self> {
        let text = text.into();
        let char_count = text.chars().count();
        if char_count == 0 {
            return Err(Error::Annotation("region text is empty".into()));
        }
        Ok(GlyphRegion {
            bbox,
            text,
            char_count,
        })
    }

    /// Region from manifest data carrying an explicit count. The count must
    /// equal the number of renderable characters in `text`.
    pub fn with_char_count(bbox: BoundingBox, text: impl Into<String>, char_count: usize) -> Result<Self> {
        let region = Self::new(bbox, text)?;
        if region.char_count != char_count {
            return Err(Error::Annotation(format!(
                "char_count {} does not match text {:?} ({} characters)",
                char_count, region.text, region.char_count
            )));
        }
        Ok(region)
    }

    pub fn char_count(&self) -> usize {
        self.char_count
    }

    /// Box area in pixels².
    pub fn area(&self) -> usize {
        self.bbox.area()
    }

    /// Average area occupied by a single character: box area over character
    /// count.
    pub fn avg_char_area(&self) -> f64 {
        self.area() as f64 / self.char_count as f64
    }

    pub fn branch(&self, cfg: &AgcConfig) -> Branch {
        if self.avg_char_area() > cfg.threshold {
            Branch::Large
        } else {
            Branch::Small
        }
    }
}

/// Average area occupied by a single character in the region.
pub fn avg_char_area(region: &GlyphRegion) -> f64 {
    region.avg_char_area()
}

/// Which side of the area threshold a region falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// `A_avg > T`: segmentation is trusted; condition keeps edges plus the
    /// mask-gated image.
    Large,
    /// `A_avg <= T`: segmentation is not trusted; condition is the raw crop
    /// with a blurred boundary band.
    Small,
}

/// Configuration of the adaptive condition builder.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AgcConfig {
    /// Area threshold in pixels² separating the two branches.
    pub threshold: f64,
    /// Gaussian sigma for the small-branch boundary blur.
    pub blur_sigma: f64,
    /// Inward band width, in pixels, that receives the blur.
    pub band_width: usize,
    /// Canny parameters for the large branch.
    pub canny_sigma: f64,
    pub canny_lo: f64,
    pub canny_hi: f64,
    /// Soft segmentation masks are binarized at this level before edge
    /// detection and gating.
    pub binarize_threshold: f64,
}

impl Default for AgcConfig {
    fn default() -> Self {
        AgcConfig {
            threshold: 4900.0,
            blur_sigma: 2.0,
            band_width: 3,
            canny_sigma: 1.4,
            canny_lo: 0.1,
            canny_hi: 0.3,
            binarize_threshold: 0.5,
        }
    }
}

/// Condition image for one region, placed on an otherwise zero canvas.
#[derive(Debug, Clone)]
pub struct RegionCondition {
    pub region_index: usize,
    pub branch: Branch,
    pub image: ImageBuffer,
}

/// The composed condition input: one image, plus the branch taken per region.
#[derive(Debug, Clone)]
pub struct ConditionMap {
    pub image: ImageBuffer,
    pub branches: Vec<(usize, Branch)>,
}

/// Per-image report of the condition build.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionReport {
    pub threshold: f64,
    pub blur_sigma: f64,
    pub band_width: usize,
    pub canny_sigma: f64,
    pub canny_lo: f64,
    pub canny_hi: f64,
    pub regions: Vec<RegionReport>,
    /// Pairs of region indices whose boxes overlap with positive area. The
    /// composition resolves these by pixel-wise max.
    pub overlap_warnings: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegionReport {
    pub index: usize,
    pub text: String,
    pub avg_char_area: f64,
    pub branch: Branch,
}

/// Build the condition image for a single region. Pixels outside the region
/// box are zero.
pub fn build_region_condition(
    img: &ImageBuffer,
    seg: &Mask,
    region: &GlyphRegion,
    cfg: &AgcConfig,
) -> Result<ImageBuffer> {
    if seg.width() != img.width() || seg.height() != img.height() {
        return Err(Error::Shape(format!(
            "segmentation {}x{} does not match image {}x{}",
            seg.width(),
            seg.height(),
            img.width(),
            img.height()
        )));
    }
    region.bbox.check_within(img.width(), img.height())?;

    let bbox = &region.bbox;
    let img_crop = img.crop(bbox)?;
    let part = match region.branch(cfg) {
        Branch::Large => {
            let seg_crop = seg.crop(bbox)?.binarize(cfg.binarize_threshold);
            let edges = canny(&seg_crop, cfg.canny_sigma, cfg.canny_lo, cfg.canny_hi)?;
            let gated = mask_apply(&seg_crop, &img_crop)?;
            add_clamped(&edges.to_image().broadcast(img.channels()), &gated)?
        }
        Branch::Small => {
            // Blur only the boundary band; interior pixels are copied
            // verbatim. Boxes too small for the configured band get the
            // widest band that still leaves an interior.
            let shorter = bbox.width().min(bbox.height());
            let effective = cfg.band_width.min(shorter.saturating_sub(1) / 2);
            if effective == 0 {
                img_crop
            } else {
                let blurred = gaussian_blur(&img_crop, cfg.blur_sigma)?;
                let local = BoundingBox::new(0, 0, bbox.width(), bbox.height())?;
                let band = boundary_band(&local, effective, bbox.width(), bbox.height())?;
                let mut out = img_crop.clone();
                for y in 0..bbox.height() {
                    for x in 0..bbox.width() {
                        if band.get(x, y) == 1.0 {
                            for ch in 0..out.channels() {
                                out.set(x, y, ch, blurred.get(x, y, ch));
                            }
                        }
                    }
                }
                out
            }
        }
    };

    let mut canvas = ImageBuffer::new(img.width(), img.height(), img.channels());
    canvas.paste(&part, bbox.x0, bbox.y0)?;
    Ok(canvas)
}

/// Combine per-region conditions by pixel-wise maximum. Regions are disjoint
/// in valid inputs, so the max equals a paste; overlaps are permitted and
/// resolved by the max.
pub fn compose_condition(parts: &[RegionCondition]) -> Result<ConditionMap> {
    let first = parts
        .first()
        .ok_or_else(|| Error::Parameter("compose_condition needs at least one part".into()))?;
    let (w, h, c) = (first.image.width(), first.image.height(), first.image.channels());
    let mut image = ImageBuffer::new(w, h, c);
    let mut branches = Vec::with_capacity(parts.len());
    for part in parts {
        if part.image.width() != w || part.image.height() != h || part.image.channels() != c {
            return Err(Error::Shape(
                "condition parts do not share canvas dimensions".into(),
            ));
        }
        for (dst, &src) in image.data_mut().iter_mut().zip(part.image.data()) {
            if src > *dst {
                *dst = src;
            }
        }
        branches.push((part.region_index, part.branch));
    }
    Ok(ConditionMap { image, branches })
}

/// Build the full condition map and report for an annotated image.
pub fn build_condition(
    img: &ImageBuffer,
    seg: &Mask,
    regions: &[GlyphRegion],
    cfg: &AgcConfig,
) -> Result<(ConditionMap, ConditionReport)> {
    let mut parts = Vec::with_capacity(regions.len());
    let mut reports = Vec::with_capacity(regions.len());
    for (index, region) in regions.iter().enumerate() {
        let image = build_region_condition(img, seg, region, cfg)?;
        let branch = region.branch(cfg);
        parts.push(RegionCondition {
            region_index: index,
            branch,
            image,
        });
        reports.push(RegionReport {
            index,
            text: region.text.clone(),
            avg_char_area: region.avg_char_area(),
            branch,
        });
    }
    let map = if parts.is_empty() {
        ConditionMap {
            image: ImageBuffer::new(img.width(), img.height(), img.channels()),
            branches: Vec::new(),
        }
    } else {
        compose_condition(&parts)?
    };
    let mut overlap_warnings = Vec::new();
    for i in 0..regions.len() {
        for j in i + 1..regions.len() {
            if regions[i].bbox.intersection_area(&regions[j].bbox) > 0 {
                overlap_warnings.push((i, j));
            }
        }
    }
    let report = ConditionReport {
        threshold: cfg.threshold,
        blur_sigma: cfg.blur_sigma,
        band_width: cfg.band_width,
        canny_sigma: cfg.canny_sigma,
        canny_lo: cfg.canny_lo,
        canny_hi: cfg.canny_hi,
        regions: reports,
        overlap_warnings,
    };
    Ok((map, report))
}

/// Glyph-region mask for the training loss: segmentation ink inside large
/// regions, the filled box for small ones, zero outside all regions. Output
/// is binary.
pub fn build_gr_mask(seg: &Mask, regions: &[GlyphRegion], cfg: &AgcConfig) -> Result<Mask> {
    let mut out = Mask::new(seg.width(), seg.height());
    for region in regions {
        region.bbox.check_within(seg.width(), seg.height())?;
        let bbox = &region.bbox;
        match region.branch(cfg) {
            Branch::Large => {
                let seg_bin = seg.crop(bbox)?.binarize(cfg.binarize_threshold);
                for y in 0..bbox.height() {
                    for x in 0..bbox.width() {
                        if seg_bin.get(x, y) == 1.0 {
                            out.set(bbox.x0 + x, bbox.y0 + y, 1.0);
                        }
                    }
                }
            }
            Branch::Small => {
                for y in bbox.y0..bbox.y1 {
                    for x in bbox.x0..bbox.x1 {
                        out.set(x, y, 1.0);
                    }
                }
            }
        }
    }
    Ok(out)
}
