//! Pixel-level primitives: buffers, Gaussian convolution, Canny edges, mask
//! algebra, crop/paste, and boundary-band extraction.
//!
//! All operations are pure functions on immutable inputs and safe to call
//! concurrently.

mod buffer;
pub(crate) mod blur;
mod canny;
mod ops;
mod png;

pub use blur::{gaussian_blur, gaussian_blur_mask};
pub use buffer::{BoundingBox, ImageBuffer, Mask};
pub use canny::canny;
pub use ops::{add_clamped, boundary_band, mask_apply};
