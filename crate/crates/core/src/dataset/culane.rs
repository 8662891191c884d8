use std::fmt::Write as _;

use super::{Frame, ImageSize, LaneAnnotation};
use crate::error::{Error, Result};
use crate::point::{Point2, Polyline};

pub const CULANE_SIZE: ImageSize = ImageSize {
    width: 1640,
    height: 590,
};

/// Parses a `.lines.txt` annotation: one lane per non-empty line, as
/// whitespace-separated `x y` pairs.
pub fn parse_culane_lines(txt: &str) -> Result<Vec<Polyline>> {
    txt.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let vals = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<f64>()
                        .map_err(|_| Error::Parse(format!("line {}: non-numeric token {t:?}", i + 1)))
                })
                .collect::<Result<Vec<f64>>>()?;
            if vals.len() % 2 != 0 {
                return Err(Error::Parse(format!(
                    "line {}: odd number of coordinates ({})",
                    i + 1,
                    vals.len()
                )));
            }
            let pts = vals.chunks(2).map(|c| Point2::new(c[0], c[1])).collect();
            Polyline::new(pts).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))
        })
        .collect()
}

pub fn parse_culane_frame(txt: &str, source_file: &str) -> Result<Frame> {
    Ok(Frame {
        image_size: CULANE_SIZE,
        lanes: parse_culane_lines(txt)?
            .into_iter()
            .map(|p| LaneAnnotation::new(p, source_file))
            .collect(),
        scenario_tag: None,
    })
}

/// Inverse of [`parse_culane_lines`]. Numbers use the shortest form that
/// parses back to the same value.
pub fn write_culane_lines(lanes: &[Polyline]) -> String {
    let mut out = String::new();
    for lane in lanes {
        let mut first = true;
        for p in lane.points() {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{} {}", p.x, p.y);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_single() {
        assert!(parse_culane_lines("").unwrap().is_empty());
        assert!(parse_culane_lines("\n  \n").unwrap().is_empty());
        let l = parse_culane_lines("10.0 590 20.0 580").unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(
            l[0].points(),
            &[Point2::new(10.0, 590.0), Point2::new(20.0, 580.0)]
        );
    }

    #[test]
    fn malformed() {
        assert!(parse_culane_lines("1 2 3").is_err());
        assert!(parse_culane_lines("1 2 x 4").is_err());
        assert!(parse_culane_lines("1 2").is_err());
    }

    #[test]
    fn round_trip() {
        let txt = "532.281 590 563.633 570 594.985 550 \n-0.5 1e-3 0.1 0.30000000000000004\n";
        let lanes = parse_culane_lines(txt).unwrap();
        let again = parse_culane_lines(&write_culane_lines(&lanes)).unwrap();
        assert_eq!(lanes, again);
    }
}
