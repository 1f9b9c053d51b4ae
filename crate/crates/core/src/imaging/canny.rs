//! Canny edge detection on masks.
//!
//! Classic four stages: Gaussian smoothing, Sobel gradients, non-maximum
//! suppression, hysteresis by double threshold with 8-connectivity. Gradient
//! magnitudes are normalized by their maximum so `lo`/`hi` are fractions of
//! the strongest edge in the input.

use crate::error::{Error, Result};
use crate::imaging::blur::gaussian_blur_mask;
use crate::imaging::Mask;

/// Tolerance for magnitude ties during non-maximum suppression. Symmetric
/// step edges produce exactly tied neighbor pairs up to rounding; the rule
/// below keeps the positive-direction pixel of a tied pair so edges stay one
/// pixel wide.
const NMS_TIE_TOL: f64 = 1e-9;

pub(crate) struct GradientField {
    pub width: usize,
    pub height: usize,
    /// Magnitudes normalized to [0,1]; zero on the one-pixel border.
    pub magnitude: Vec<f64>,
    pub gx: Vec<f64>,
    pub gy: Vec<f64>,
}

/// Sobel gradients of a smoothed mask. Border pixels carry zero gradient.
pub(crate) fn sobel_gradients(mask: &Mask) -> GradientField {
    let (w, h) = (mask.width(), mask.height());
    let mut gx = vec![0.0; w * h];
    let mut gy = vec![0.0; w * h];
    let mut magnitude = vec![0.0; w * h];
    if w >= 3 && h >= 3 {
        for y in 1..h - 1 {
            for x in 1..w - 1 {
                let p = |dx: i64, dy: i64| {
                    mask.get((x as i64 + dx) as usize, (y as i64 + dy) as usize)
                };
                let dx = (p(1, -1) + 2.0 * p(1, 0) + p(1, 1))
                    - (p(-1, -1) + 2.0 * p(-1, 0) + p(-1, 1));
                let dy = (p(-1, 1) + 2.0 * p(0, 1) + p(1, 1))
                    - (p(-1, -1) + 2.0 * p(0, -1) + p(1, -1));
                gx[y * w + x] = dx;
                gy[y * w + x] = dy;
                magnitude[y * w + x] = dx.hypot(dy);
            }
        }
    }
    let max = magnitude.iter().cloned().fold(0.0, f64::max);
    if max > 0.0 {
        for m in &mut magnitude {
            *m /= max;
        }
    }
    GradientField {
        width: w,
        height: h,
        magnitude,
        gx,
        gy,
    }
}

/// Neighbor offsets along the quantized gradient direction, as
/// (negative side, positive side).
fn direction_neighbors(gx: f64, gy: f64) -> ((i64, i64), (i64, i64)) {
    let mut angle = gy.atan2(gx).to_degrees();
    if angle < 0.0 {
        angle += 180.0;
    }
    if !(22.5..157.5).contains(&angle) {
        ((-1, 0), (1, 0))
    } else if angle < 67.5 {
        ((-1, -1), (1, 1))
    } else if angle < 112.5 {
        ((0, -1), (0, 1))
    } else {
        ((1, -1), (-1, 1))
    }
}

/// Thin the gradient field to local maxima along the gradient direction.
/// A pixel survives when it is at least as strong as the negative-side
/// neighbor and strictly stronger than the positive-side neighbor, with ties
/// resolved within [`NMS_TIE_TOL`].
pub(crate) fn non_maximum_suppression(field: &GradientField) -> Vec<f64> {
    let (w, h) = (field.width, field.height);
    let mut out = vec![0.0; w * h];
    if w < 3 || h < 3 {
        return out;
    }
    for y in 1..h - 1 {
        for x in 1..w - 1 {
            let idx = y * w + x;
            let m = field.magnitude[idx];
            if m == 0.0 {
                continue;
            }
            let ((nx, ny), (px, py)) = direction_neighbors(field.gx[idx], field.gy[idx]);
            let at = |dx: i64, dy: i64| {
                field.magnitude[((y as i64 + dy) as usize) * w + (x as i64 + dx) as usize]
            };
            let neg = at(nx, ny);
            let pos = at(px, py);
            if m >= neg - NMS_TIE_TOL && m > pos + NMS_TIE_TOL {
                out[idx] = m;
            }
        }
    }
    out
}

/// Hysteresis thresholding: seeds at `thinned >= hi`, grown through pixels
/// `>= lo` over 8-connected neighbors.
pub(crate) fn hysteresis(thinned: &[f64], width: usize, height: usize, lo: f64, hi: f64) -> Mask {
    let mut out = Mask::new(width, height);
    let mut stack = Vec::new();
    for y in 0..height {
        for x in 0..width {
            if thinned[y * width + x] >= hi && out.get(x, y) == 0.0 {
                out.set(x, y, 1.0);
                stack.push((x, y));
                while let Some((cx, cy)) = stack.pop() {
                    for dy in -1i64..=1 {
                        for dx in -1i64..=1 {
                            if dx == 0 && dy == 0 {
                                continue;
                            }
                            let nx = cx as i64 + dx;
                            let ny = cy as i64 + dy;
                            if nx < 0 || ny < 0 || nx >= width as i64 || ny >= height as i64 {
                                continue;
                            }
                            let (nx, ny) = (nx as usize, ny as usize);
                            if thinned[ny * width + nx] >= lo && out.get(nx, ny) == 0.0 {
                                out.set(nx, ny, 1.0);
                                stack.push((nx, ny));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Classic 4-stage Canny on a mask. Output is binary {0,1}.
///
/// `lo` and `hi` are hysteresis thresholds on max-normalized gradient
/// magnitude and must satisfy `0 <= lo < hi <= 1`.
pub fn canny(mask: &Mask, sigma: f64, lo: f64, hi: f64) -> Result<Mask> {
    if !(sigma > 0.0) {
        return Err(Error::Parameter(format!("sigma must be positive, got {sigma}")));
    }
    if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo >= hi {
        return Err(Error::Parameter(format!(
            "thresholds must satisfy 0 <= lo < hi <= 1, got lo={lo}, hi={hi}"
        )));
    }
    let smoothed = gaussian_blur_mask(mask, sigma)?;
    let field = sobel_gradients(&smoothed);
    let thinned = non_maximum_suppression(&field);
    Ok(hysteresis(&thinned, mask.width(), mask.height(), lo, hi))
}
