use crate::error::{Error, Result};
use crate::point::{Point2, Polyline};

/// Reference stroke width and the image width it applies to.
pub const CULANE_STROKE_WIDTH: f64 = 30.0;
pub const CULANE_WIDTH: u32 = 1640;

/// Stroke width scaled from the reference resolution to an image of the
/// given width.
pub fn scaled_stroke_width(image_width: u32) -> f64 {
    CULANE_STROKE_WIDTH * image_width as f64 / CULANE_WIDTH as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Canvas {
    pub width: u32,
    pub height: u32,
}

/// Boolean pixel mask, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask {
    canvas: Canvas,
    bits: Vec<bool>,
}

impl Mask {
    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn get(&self, x: u32, y: u32) -> bool {
        self.bits[(y as usize) * self.canvas.width as usize + x as usize]
    }
}

fn round_half_up(v: f64) -> f64 {
    (v + 0.5).floor()
}

fn dist_sq_to_segment(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_squared();
    let t = if len_sq > 0.0 {
        ((p - a).dot(ab) / len_sq).clamp(0.0, 1.0)
    } else {
        0.0
    };
    p.distance_squared(a + ab * t)
}

/// Rasterizes `poly` as a stroke of the given width: vertices are rounded
/// half-up to integer pixels, and pixel `(i, j)` is set when its center
/// `(i + 0.5, j + 0.5)` lies within `width / 2` of the rounded polyline.
/// Pixels outside the canvas are dropped.
pub fn rasterize(poly: &Polyline, width: f64, canvas: Canvas) -> Result<Mask> {
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "stroke width must be positive, got {width}"
        )));
    }
    let (w, h) = (canvas.width as usize, canvas.height as usize);
    let mut bits = vec![false; w * h];
    let half = width / 2.0;
    let half_sq = half * half;
    let pts: Vec<Point2> = poly
        .points()
        .iter()
        .map(|p| Point2::new(round_half_up(p.x), round_half_up(p.y)))
        .collect();
    for s in pts.windows(2) {
        let (a, b) = (s[0], s[1]);
        let clamp_x = |v: f64| v.clamp(0.0, w as f64) as usize;
        let clamp_y = |v: f64| v.clamp(0.0, h as f64) as usize;
        let x0 = clamp_x((a.x.min(b.x) - half - 1.0).floor());
        let x1 = clamp_x((a.x.max(b.x) + half + 1.0).ceil());
        let y0 = clamp_y((a.y.min(b.y) - half - 1.0).floor());
        let y1 = clamp_y((a.y.max(b.y) + half + 1.0).ceil());
        for j in y0..y1 {
            for i in x0..x1 {
                let c = Point2::new(i as f64 + 0.5, j as f64 + 0.5);
                if dist_sq_to_segment(c, a, b) <= half_sq {
                    bits[j * w + i] = true;
                }
            }
        }
    }
    Ok(Mask { canvas, bits })
}

/// Intersection over union of the two stroke masks; 0 when both are empty.
pub fn lane_iou(pred: &Polyline, gt: &Polyline, width: f64, canvas: Canvas) -> Result<f64> {
    let a = rasterize(pred, width, canvas)?;
    let b = rasterize(gt, width, canvas)?;
    let (mut inter, mut union) = (0usize, 0usize);
    for (&x, &y) in a.bits.iter().zip(&b.bits) {
        inter += (x && y) as usize;
        union += (x || y) as usize;
    }
    Ok(if union == 0 {
        0.0
    } else {
        inter as f64 / union as f64
    })
}
