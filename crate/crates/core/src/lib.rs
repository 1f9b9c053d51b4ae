//! Segmentation-guided visual-text generation at desk scale: adaptive glyph
//! conditioning, toy flow-matching training with a glyph-region loss, the
//! structured layout contract, and a text-accuracy evaluation harness driven
//! by synthetic glyph scenes with ground-truth masks.

pub mod error;
pub mod imaging;
pub mod rng;

pub use error::{Error, Result};
pub use imaging::{BoundingBox, ImageBuffer, Mask};
