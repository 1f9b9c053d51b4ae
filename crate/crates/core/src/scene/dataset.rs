//! Dataset generation: render scenes to disk and emit a manifest.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::manifest::{DatasetManifest, ManifestRecord, RegionRecord};
use crate::scene::{generate_scene, render_scene, GlyphAtlas, SceneGenOptions};

/// Render `n` scenes under `out_dir` (`images/`, `masks/`, `manifest`) and
/// return the written manifest.
pub fn make_dataset(
    n: usize,
    opts: &SceneGenOptions,
    seed: u64,
    out_dir: &Path,
) -> Result<DatasetManifest> {
    if n == 0 {
        return Err(Error::Parameter("dataset size must be at least 1".into()));
    }
    let images_dir = out_dir.join("images");
    let masks_dir = out_dir.join("masks");
    fs::create_dir_all(&images_dir).map_err(|e| Error::io(&images_dir, e))?;
    fs::create_dir_all(&masks_dir).map_err(|e| Error::io(&masks_dir, e))?;

    let atlas = GlyphAtlas::builtin();
    let mut records = Vec::with_capacity(n);
    for index in 0..n {
        let spec = generate_scene(seed, index, opts)?;
        let (img, mask, regions) = render_scene(&spec, atlas)?;
        let stem = format!("scene_{index:04}");
        let image_rel = Path::new("images").join(format!("{stem}.png"));
        let mask_rel = Path::new("masks").join(format!("{stem}.png"));
        img.save_png(&out_dir.join(&image_rel))?;
        mask.save_png(&out_dir.join(&mask_rel))?;
        records.push(ManifestRecord {
            image: image_rel,
            mask: mask_rel,
            regions: regions.iter().map(RegionRecord::from_region).collect(),
        });
    }
    let manifest = DatasetManifest::new(records, out_dir);
    manifest.save(&out_dir.join("manifest"))?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condition::AgcConfig;
    use crate::scene::SizeProfile;

    #[test]
    fn mini_and_large_modes_classify_as_built() {
        let cfg = AgcConfig::default();
        let dir = tempfile::tempdir().unwrap();

        let mini = make_dataset(
            5,
            &SceneGenOptions {
                canvas: 96,
                profile: SizeProfile::Mini,
                ..Default::default()
            },
            0,
            &dir.path().join("mini"),
        )
        .unwrap();
        for record in &mini.records {
            for region in mini.regions(record).unwrap() {
                assert!(region.avg_char_area() <= cfg.threshold);
            }
        }

        let large = make_dataset(
            5,
            &SceneGenOptions {
                canvas: 192,
                profile: SizeProfile::Large,
                ..Default::default()
            },
            0,
            &dir.path().join("large"),
        )
        .unwrap();
        for record in &large.records {
            for region in large.regions(record).unwrap() {
                assert!(region.avg_char_area() > cfg.threshold);
            }
        }
    }

    #[test]
    fn mixed_mode_splits_branches_evenly() {
        let cfg = AgcConfig::default();
        let dir = tempfile::tempdir().unwrap();
        let manifest = make_dataset(
            6,
            &SceneGenOptions {
                canvas: 128,
                profile: SizeProfile::Mixed,
                ..Default::default()
            },
            3,
            dir.path(),
        )
        .unwrap();
        let mut large = 0;
        let mut small = 0;
        for record in &manifest.records {
            for region in manifest.regions(record).unwrap() {
                if region.avg_char_area() > cfg.threshold {
                    large += 1;
                } else {
                    small += 1;
                }
            }
        }
        assert_eq!(large, 3);
        assert_eq!(small, 3);
    }

    #[test]
    fn manifest_files_resolve_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = make_dataset(3, &SceneGenOptions::default(), 1, dir.path()).unwrap();
        for record in &manifest.records {
            assert!(manifest.image_path(record).exists());
            assert!(manifest.mask_path(record).exists());
        }
        let loaded = DatasetManifest::load(&dir.path().join("manifest")).unwrap();
        assert_eq!(loaded.records, manifest.records);
    }
}
