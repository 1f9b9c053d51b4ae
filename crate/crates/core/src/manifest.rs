//! Dataset manifests: line-delimited records tying images, segmentation
//! masks, and region annotations together.
//!
//! Paths inside a manifest are stored relative to the manifest file so a run
//! directory can be moved or compared byte-for-byte across locations.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::condition::GlyphRegion;
use crate::error::{Error, Result};
use crate::imaging::BoundingBox;

/// One region annotation as stored on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionRecord {
    /// `[x0, y0, x1, y1]`, exclusive bottom-right.
    pub bbox: [usize; 4],
    pub text: String,
    pub char_count: usize,
}

impl RegionRecord {
    pub fn from_region(region: &GlyphRegion) -> Self {
        RegionRecord {
            bbox: [
                region.bbox.x0,
                region.bbox.y0,
                region.bbox.x1,
                region.bbox.y1,
            ],
            text: region.text.clone(),
            char_count: region.char_count(),
        }
    }

    pub fn to_region(&self) -> Result<GlyphRegion> {
        let bbox = BoundingBox::new(self.bbox[0], self.bbox[1], self.bbox[2], self.bbox[3])?;
        GlyphRegion::with_char_count(bbox, self.text.clone(), self.char_count)
    }
}

/// One manifest line: an image, its segmentation mask, and its regions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestRecord {
    /// Image path relative to the manifest file.
    pub image: PathBuf,
    /// Segmentation mask path relative to the manifest file.
    pub mask: PathBuf,
    pub regions: Vec<RegionRecord>,
}

/// A full dataset manifest plus the directory its paths are relative to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetManifest {
    pub records: Vec<ManifestRecord>,
    root: PathBuf,
}

impl DatasetManifest {
    pub fn new(records: Vec<ManifestRecord>, root: impl Into<PathBuf>) -> Self {
        DatasetManifest {
            records,
            root: root.into(),
        }
    }

    /// Directory that relative paths resolve against.
    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn resolve(&self, relative: &Path) -> PathBuf {
        self.root.join(relative)
    }

    pub fn image_path(&self, record: &ManifestRecord) -> PathBuf {
        self.resolve(&record.image)
    }

    pub fn mask_path(&self, record: &ManifestRecord) -> PathBuf {
        self.resolve(&record.mask)
    }

    pub fn load(path: &Path) -> Result<DatasetManifest> {
        let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
        let root = path.parent().unwrap_or_else(|| Path::new(".")).to_path_buf();
        let mut records = Vec::new();
        for (idx, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| Error::io(path, e))?;
            if line.trim().is_empty() {
                continue;
            }
            let record: ManifestRecord = serde_json::from_str(&line).map_err(|e| {
                Error::Annotation(format!("manifest {path:?} line {}: {e}", idx + 1))
            })?;
            records.push(record);
        }
        Ok(DatasetManifest { records, root })
    }

    /// Write the manifest. Every referenced file must already exist.
    pub fn save(&self, path: &Path) -> Result<()> {
        let root = path.parent().unwrap_or_else(|| Path::new(".")).to_path_buf();
        let missing: Vec<PathBuf> = self
            .records
            .iter()
            .flat_map(|r| [root.join(&r.image), root.join(&r.mask)])
            .filter(|p| !p.exists())
            .collect();
        if !missing.is_empty() {
            return Err(Error::MissingFiles(missing));
        }
        let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
        for record in &self.records {
            let line = serde_json::to_string(record)
                .map_err(|e| Error::Annotation(format!("manifest serialization: {e}")))?;
            writeln!(file, "{line}").map_err(|e| Error::io(path, e))?;
        }
        Ok(())
    }

    /// All regions of one record as domain types.
    pub fn regions(&self, record: &ManifestRecord) -> Result<Vec<GlyphRegion>> {
        record.regions.iter().map(|r| r.to_region()).collect()
    }
}
