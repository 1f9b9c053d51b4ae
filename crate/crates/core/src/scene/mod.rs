//! Synthetic glyph scenes with ground-truth segmentation masks.
//!
//! The renderer places strings from the built-in bitmap alphabet onto flat,
//! gradient, or noise backgrounds. The emitted mask is 1 exactly on glyph-ink
//! pixels, so it doubles as the segmentation oracle, and every region carries
//! its true character count.

pub mod atlas;

use rand::Rng;

use crate::condition::GlyphRegion;
use crate::error::{Error, Result};
use crate::imaging::{BoundingBox, ImageBuffer, Mask};
use crate::rng::stream_indexed;

pub use atlas::{GlyphAtlas, ADVANCE, CELL_H, CELL_W};

/// Background fill of a scene.
#[derive(Debug, Clone, PartialEq)]
pub enum BackgroundStyle {
    /// Uniform gray level.
    Flat(f64),
    /// Horizontal linear blend between two colors.
    Gradient { from: [f64; 3], to: [f64; 3] },
    /// Flat base with seeded uniform noise of the given amplitude.
    Noise { base: f64, amplitude: f64 },
}

/// One string to render.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacedText {
    pub text: String,
    /// Top-left pixel of the glyph grid.
    pub x: usize,
    pub y: usize,
    /// Integer cell scale: every atlas cell becomes `scale`×`scale` pixels.
    pub scale: usize,
    pub color: [f64; 3],
}

impl PlacedText {
    /// Bounding box of the rendered glyph grid.
    pub fn bbox(&self) -> Result<BoundingBox> {
        let n = self.text.chars().count();
        if n == 0 {
            return Err(Error::Annotation("placed text is empty".into()));
        }
        if self.scale == 0 {
            return Err(Error::Parameter("glyph scale must be at least 1".into()));
        }
        let width = (ADVANCE * n - 1) * self.scale;
        let height = CELL_H * self.scale;
        BoundingBox::new(self.x, self.y, self.x + width, self.y + height)
    }
}

/// Full description of one synthetic scene.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneSpec {
    pub width: usize,
    pub height: usize,
    pub background: BackgroundStyle,
    pub texts: Vec<PlacedText>,
    pub seed: u64,
}

/// Deterministically render a scene: image, ink mask, and annotated regions.
pub fn render_scene(
    spec: &SceneSpec,
    atlas: &GlyphAtlas,
) -> Result<(ImageBuffer, Mask, Vec<GlyphRegion>)> {
    let mut img = ImageBuffer::new(spec.width, spec.height, 3);
    match &spec.background {
        BackgroundStyle::Flat(level) => {
            img.data_mut().fill(level.clamp(0.0, 1.0));
        }
        BackgroundStyle::Gradient { from, to } => {
            for y in 0..spec.height {
                for x in 0..spec.width {
                    let t = if spec.width > 1 {
                        x as f64 / (spec.width - 1) as f64
                    } else {
                        0.0
                    };
                    for ch in 0..3 {
                        img.set(x, y, ch, from[ch] * (1.0 - t) + to[ch] * t);
                    }
                }
            }
        }
        BackgroundStyle::Noise { base, amplitude } => {
            let mut rng = stream_indexed(spec.seed, "background-noise", 0);
            for v in img.data_mut() {
                *v = (base + amplitude * (rng.gen::<f64>() * 2.0 - 1.0)).clamp(0.0, 1.0);
            }
        }
    }

    let mut mask = Mask::new(spec.width, spec.height);
    let mut regions: Vec<GlyphRegion> = Vec::with_capacity(spec.texts.len());
    for placed in &spec.texts {
        let bbox = placed.bbox()?;
        bbox.check_within(spec.width, spec.height).map_err(|_| {
            Error::Placement(format!(
                "text {:?} at ({}, {}) scale {} overflows the {}x{} canvas",
                placed.text, placed.x, placed.y, placed.scale, spec.width, spec.height
            ))
        })?;
        for region in &regions {
            if region.bbox.intersection_area(&bbox) > 0 {
                return Err(Error::Placement(format!(
                    "text {:?} overlaps region {:?}",
                    placed.text, region.text
                )));
            }
        }
        let s = placed.scale;
        for (i, ch) in placed.text.chars().enumerate() {
            let glyph = atlas.get(ch).ok_or_else(|| {
                Error::Annotation(format!("character {ch:?} is not in the atlas"))
            })?;
            let origin_x = placed.x + i * ADVANCE * s;
            for row in 0..CELL_H {
                for col in 0..CELL_W {
                    if !glyph.ink(col, row) {
                        continue;
                    }
                    for dy in 0..s {
                        for dx in 0..s {
                            let px = origin_x + col * s + dx;
                            let py = placed.y + row * s + dy;
                            for c in 0..3 {
                                img.set(px, py, c, placed.color[c]);
                            }
                            mask.set(px, py, 1.0);
                        }
                    }
                }
            }
        }
        regions.push(GlyphRegion::new(bbox, placed.text.clone())?);
    }
    Ok((img, mask, regions))
}

/// Size regime of generated scenes, phrased against the default area
/// threshold of 4900 px².
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeProfile {
    /// Every region has `A_avg <= 4900` (scales 2–4).
    Mini,
    /// Every region has `A_avg > 4900` (scales 12–13).
    Large,
    /// Scenes alternate between the two regimes, one region per scene.
    Mixed,
}

impl SizeProfile {
    pub fn parse(s: &str) -> Result<SizeProfile> {
        match s {
            "mini" => Ok(SizeProfile::Mini),
            "large" => Ok(SizeProfile::Large),
            "mixed" => Ok(SizeProfile::Mixed),
            other => Err(Error::Parameter(format!(
                "unknown size profile {other:?} (expected mini, large, or mixed)"
            ))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SizeProfile::Mini => "mini",
            SizeProfile::Large => "large",
            SizeProfile::Mixed => "mixed",
        }
    }
}

/// Options for [`generate_scene`] and dataset generation.
#[derive(Debug, Clone)]
pub struct SceneGenOptions {
    pub canvas: usize,
    pub profile: SizeProfile,
    /// Every `k`-th scene renders black glyphs on a black background to
    /// exercise the edge term of the large branch. Off by default.
    pub adversarial_every: Option<usize>,
    /// Strings per scene in mini/large profiles (mixed always places one).
    pub max_texts: usize,
}

impl Default for SceneGenOptions {
    fn default() -> Self {
        SceneGenOptions {
            canvas: 128,
            profile: SizeProfile::Mixed,
            adversarial_every: None,
            max_texts: 2,
        }
    }
}

const COLORS: &[[f64; 3]] = &[
    [1.0, 1.0, 1.0],
    [0.0, 0.0, 0.0],
    [0.9, 0.12, 0.1],
    [0.1, 0.3, 0.9],
    [0.95, 0.85, 0.1],
    [0.1, 0.75, 0.3],
];

fn luminance(c: &[f64; 3]) -> f64 {
    (c[0] + c[1] + c[2]) / 3.0
}

fn background_luminance(style: &BackgroundStyle) -> f64 {
    match style {
        BackgroundStyle::Flat(l) => *l,
        BackgroundStyle::Gradient { from, to } => (luminance(from) + luminance(to)) / 2.0,
        BackgroundStyle::Noise { base, .. } => *base,
    }
}

fn random_text(rng: &mut impl Rng, atlas: &GlyphAtlas, len: usize) -> String {
    // Half the scenes draw from the dense ideograph set.
    let pool = if rng.gen::<bool>() {
        atlas.latin_chars()
    } else {
        atlas.ideograph_chars()
    };
    (0..len).map(|_| pool[rng.gen_range(0..pool.len())]).collect()
}

/// Derive the `index`-th scene for a dataset seed. Deterministic in
/// `(seed, index)`.
pub fn generate_scene(seed: u64, index: usize, opts: &SceneGenOptions) -> Result<SceneSpec> {
    let atlas = GlyphAtlas::builtin();
    let mut rng = stream_indexed(seed, "scene", index as u64);
    let canvas = opts.canvas;
    let adversarial = opts
        .adversarial_every
        .map(|k| k > 0 && index % k == k - 1)
        .unwrap_or(false);

    let background = if adversarial {
        BackgroundStyle::Flat(0.0)
    } else {
        match rng.gen_range(0..3) {
            0 => BackgroundStyle::Flat(rng.gen_range(0.15..0.9)),
            1 => {
                let from = [rng.gen_range(0.1..0.9), rng.gen_range(0.1..0.9), rng.gen_range(0.1..0.9)];
                let to = [rng.gen_range(0.1..0.9), rng.gen_range(0.1..0.9), rng.gen_range(0.1..0.9)];
                BackgroundStyle::Gradient { from, to }
            }
            _ => BackgroundStyle::Noise {
                base: rng.gen_range(0.25..0.75),
                amplitude: 0.08,
            },
        }
    };
    let bg_lum = background_luminance(&background);

    let large_scene = match opts.profile {
        SizeProfile::Mini => false,
        SizeProfile::Large => true,
        SizeProfile::Mixed => index % 2 == 0,
    };
    let n_texts = if opts.profile == SizeProfile::Mixed {
        1
    } else {
        rng.gen_range(1..=opts.max_texts.max(1))
    };

    let mut texts: Vec<PlacedText> = Vec::new();
    let mut boxes: Vec<BoundingBox> = Vec::new();
    for _ in 0..n_texts {
        let mut placed = None;
        for _attempt in 0..200 {
            let (scale, len) = if large_scene {
                // A_avg between 35s² and 42s²; s >= 12 keeps it above 4900.
                let scale = rng.gen_range(12..=13);
                let max_len = ((canvas / scale) + 1) / ADVANCE;
                if max_len == 0 {
                    continue;
                }
                (scale, rng.gen_range(1..=max_len.min(2)))
            } else {
                // s <= 10 keeps A_avg at or below 4900 for any length.
                let scale = rng.gen_range(2..=4);
                let max_len = ((canvas / scale) + 1) / ADVANCE;
                if max_len == 0 {
                    continue;
                }
                (scale, rng.gen_range(2..=max_len.min(6).max(2)))
            };
            let width = (ADVANCE * len - 1) * scale;
            let height = CELL_H * scale;
            if width >= canvas || height >= canvas {
                continue;
            }
            let x = rng.gen_range(0..=canvas - width);
            let y = rng.gen_range(0..=canvas - height);
            let bbox = BoundingBox::new(x, y, x + width, y + height)?;
            if boxes.iter().any(|b| b.intersection_area(&bbox) > 0) {
                continue;
            }
            let color = if adversarial {
                [0.0, 0.0, 0.0]
            } else {
                // Keep ink visible against the background.
                loop {
                    let c = COLORS[rng.gen_range(0..COLORS.len())];
                    if (luminance(&c) - bg_lum).abs() >= 0.25 {
                        break c;
                    }
                }
            };
            let text = random_text(&mut rng, atlas, len);
            boxes.push(bbox);
            placed = Some(PlacedText {
                text,
                x,
                y,
                scale,
                color,
            });
            break;
        }
        match placed {
            Some(p) => texts.push(p),
            None if texts.is_empty() => {
                return Err(Error::Placement(format!(
                    "could not place any text on a {canvas}x{canvas} canvas"
                )))
            }
            None => break,
        }
    }

    Ok(SceneSpec {
        width: canvas,
        height: canvas,
        background,
        texts,
        seed: seed ^ index as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condition::AgcConfig;
    use crate::imaging::mask_apply;

    #[test]
    fn empty_scene_is_background_only() {
        let spec = SceneSpec {
            width: 32,
            height: 24,
            background: BackgroundStyle::Flat(0.5),
            texts: vec![],
            seed: 0,
        };
        let (img, mask, regions) = render_scene(&spec, GlyphAtlas::builtin()).unwrap();
        assert!(img.data().iter().all(|&v| v == 0.5));
        assert_eq!(mask.count_nonzero(), 0);
        assert!(regions.is_empty());
    }

    #[test]
    fn mask_pixel_count_is_scale_squared_times_ink_cells() {
        let atlas = GlyphAtlas::builtin();
        for &(ch, scale) in &[('A', 1usize), ('L', 3), ('田', 2), ('8', 4)] {
            let spec = SceneSpec {
                width: 64,
                height: 64,
                background: BackgroundStyle::Flat(0.8),
                texts: vec![PlacedText {
                    text: ch.to_string(),
                    x: 4,
                    y: 4,
                    scale,
                    color: [0.0, 0.0, 0.0],
                }],
                seed: 0,
            };
            let (_, mask, _) = render_scene(&spec, atlas).unwrap();
            let ink = atlas.get(ch).unwrap().ink_count();
            assert_eq!(mask.count_nonzero(), scale * scale * ink, "glyph {ch:?}");
        }
    }

    #[test]
    fn same_seed_renders_bit_identical_scenes() {
        let opts = SceneGenOptions::default();
        let a = generate_scene(9, 3, &opts).unwrap();
        let b = generate_scene(9, 3, &opts).unwrap();
        assert_eq!(a, b);
        let (img_a, mask_a, _) = render_scene(&a, GlyphAtlas::builtin()).unwrap();
        let (img_b, mask_b, _) = render_scene(&b, GlyphAtlas::builtin()).unwrap();
        assert_eq!(img_a.data(), img_b.data());
        assert_eq!(mask_a.data(), mask_b.data());
    }

    #[test]
    fn masked_image_equals_rendered_ink_exactly() {
        let spec = generate_scene(14, 0, &SceneGenOptions::default()).unwrap();
        let (img, mask, regions) = render_scene(&spec, GlyphAtlas::builtin()).unwrap();
        let gated = mask_apply(&mask, &img).unwrap();
        // Inside any region, gated pixels equal ink color exactly where the
        // mask is 1 and zero elsewhere.
        let placed = &spec.texts[0];
        let region = &regions[0];
        for y in region.bbox.y0..region.bbox.y1 {
            for x in region.bbox.x0..region.bbox.x1 {
                for ch in 0..3 {
                    let want = if mask.get(x, y) == 1.0 {
                        placed.color[ch]
                    } else {
                        0.0
                    };
                    assert_eq!(gated.get(x, y, ch), want);
                }
            }
        }
    }

    #[test]
    fn placement_overflow_is_an_error() {
        let spec = SceneSpec {
            width: 16,
            height: 16,
            background: BackgroundStyle::Flat(0.5),
            texts: vec![PlacedText {
                text: "ABC".into(),
                x: 0,
                y: 0,
                scale: 2,
                color: [0.0; 3],
            }],
            seed: 0,
        };
        assert!(matches!(
            render_scene(&spec, GlyphAtlas::builtin()),
            Err(Error::Placement(_))
        ));
    }

    #[test]
    fn profiles_respect_the_area_threshold() {
        let cfg = AgcConfig::default();
        for index in 0..6 {
            let mini = generate_scene(
                5,
                index,
                &SceneGenOptions {
                    canvas: 96,
                    profile: SizeProfile::Mini,
                    ..Default::default()
                },
            )
            .unwrap();
            let (_, _, regions) = render_scene(&mini, GlyphAtlas::builtin()).unwrap();
            for r in &regions {
                assert!(r.avg_char_area() <= cfg.threshold, "mini region too big");
            }
            let large = generate_scene(
                5,
                index,
                &SceneGenOptions {
                    canvas: 192,
                    profile: SizeProfile::Large,
                    ..Default::default()
                },
            )
            .unwrap();
            let (_, _, regions) = render_scene(&large, GlyphAtlas::builtin()).unwrap();
            for r in &regions {
                assert!(r.avg_char_area() > cfg.threshold, "large region too small");
            }
        }
    }

    #[test]
    fn adversarial_scene_is_black_on_black() {
        let opts = SceneGenOptions {
            canvas: 192,
            profile: SizeProfile::Large,
            adversarial_every: Some(1),
            ..Default::default()
        };
        let spec = generate_scene(2, 0, &opts).unwrap();
        assert_eq!(spec.background, BackgroundStyle::Flat(0.0));
        let (img, mask, _) = render_scene(&spec, GlyphAtlas::builtin()).unwrap();
        assert!(img.data().iter().all(|&v| v == 0.0));
        assert!(mask.count_nonzero() > 0);
    }
}
