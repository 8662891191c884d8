//! Flat `key = value` configuration shared by the command-line tool.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::Parameterization;
use crate::{DEGREE, EXTENDED_RADIUS, N_CONTROL, N_DIS, N_PROPOSALS};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub n_p: usize,
    pub radius: f64,
    pub n_control: usize,
    pub degree: usize,
    pub n_dis: usize,
    pub lambda_reg: f64,
    pub lambda_length: f64,
    pub lambda_start: f64,
    pub lambda_cls: f64,
    pub focal_alpha: f64,
    pub focal_gamma: f64,
    pub parameterization: Parameterization,
    pub k: usize,
    pub conf_threshold: f64,
    pub nms_threshold: f64,
    pub iou_threshold: f64,
    pub x_tolerance: f64,
    pub match_threshold: f64,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            n_p: N_PROPOSALS,
            radius: EXTENDED_RADIUS,
            n_control: N_CONTROL,
            degree: DEGREE,
            n_dis: N_DIS,
            lambda_reg: 1.0,
            lambda_length: 1.0,
            lambda_start: 1.0,
            lambda_cls: 1.0,
            focal_alpha: 0.25,
            focal_gamma: 2.0,
            parameterization: Parameterization::ChordLength,
            k: 3,
            conf_threshold: 0.4,
            nms_threshold: 15.0,
            iou_threshold: 0.5,
            x_tolerance: 20.0,
            match_threshold: 0.85,
            seed: 0,
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Parse(format!("invalid value {v:?} for {key}")))
}

fn parameterization_name(p: Parameterization) -> &'static str {
    match p {
        Parameterization::ChordLength => "chord_length",
        Parameterization::Uniform => "uniform",
    }
}

impl Config {
    /// Sets one key from its text form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key.trim() {
            "n_p" => self.n_p = parse_num(key, v)?,
            "radius" => self.radius = parse_num(key, v)?,
            "n_control" => self.n_control = parse_num(key, v)?,
            "degree" => self.degree = parse_num(key, v)?,
            "n_dis" => self.n_dis = parse_num(key, v)?,
            "lambda_reg" => self.lambda_reg = parse_num(key, v)?,
            "lambda_length" => self.lambda_length = parse_num(key, v)?,
            "lambda_start" => self.lambda_start = parse_num(key, v)?,
            "lambda_cls" => self.lambda_cls = parse_num(key, v)?,
            "focal_alpha" => self.focal_alpha = parse_num(key, v)?,
            "focal_gamma" => self.focal_gamma = parse_num(key, v)?,
            "parameterization" => {
                self.parameterization = match v {
                    "chord_length" => Parameterization::ChordLength,
                    "uniform" => Parameterization::Uniform,
                    _ => return Err(Error::Parse(format!("unknown parameterization {v:?}"))),
                }
            }
            "k" => self.k = parse_num(key, v)?,
            "conf_threshold" => self.conf_threshold = parse_num(key, v)?,
            "nms_threshold" => self.nms_threshold = parse_num(key, v)?,
            "iou_threshold" => self.iou_threshold = parse_num(key, v)?,
            "x_tolerance" => self.x_tolerance = parse_num(key, v)?,
            "match_threshold" => self.match_threshold = parse_num(key, v)?,
            "seed" => self.seed = parse_num(key, v)?,
            other => return Err(Error::Parse(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines on top of `self`. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", i + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut c = Config::default();
        c.apply_text(text)?;
        Ok(c)
    }

    /// All keys in file format; `from_text(to_text())` gives back `self`.
    pub fn to_text(&self) -> String {
        let rows: [(&str, String); 19] = [
            ("n_p", self.n_p.to_string()),
            ("radius", self.radius.to_string()),
            ("n_control", self.n_control.to_string()),
            ("degree", self.degree.to_string()),
            ("n_dis", self.n_dis.to_string()),
            ("lambda_reg", self.lambda_reg.to_string()),
            ("lambda_length", self.lambda_length.to_string()),
            ("lambda_start", self.lambda_start.to_string()),
            ("lambda_cls", self.lambda_cls.to_string()),
            ("focal_alpha", self.focal_alpha.to_string()),
            ("focal_gamma", self.focal_gamma.to_string()),
            (
                "parameterization",
                parameterization_name(self.parameterization).to_string(),
            ),
            ("k", self.k.to_string()),
            ("conf_threshold", self.conf_threshold.to_string()),
            ("nms_threshold", self.nms_threshold.to_string()),
            ("iou_threshold", self.iou_threshold.to_string()),
            ("x_tolerance", self.x_tolerance.to_string()),
            ("match_threshold", self.match_threshold.to_string()),
            ("seed", self.seed.to_string()),
        ];
        rows.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = Config::default();
        assert_eq!(
            (c.n_p, c.radius, c.n_control, c.degree, c.n_dis),
            (60, 9.0, 8, 3, 300)
        );
        assert_eq!(
            (c.lambda_reg, c.lambda_length, c.lambda_start, c.lambda_cls),
            (1.0, 1.0, 1.0, 1.0)
        );
    }

    #[test]
    fn text_round_trip() {
        let c = Config {
            radius: 7.25,
            parameterization: Parameterization::Uniform,
            seed: 42,
            ..Default::default()
        };
        assert_eq!(Config::from_text(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn parse_errors() {
        assert!(Config::from_text("# comment\n\nn_dis = 100\n").is_ok());
        assert!(Config::from_text("bogus = 1").is_err());
        assert!(Config::from_text("n_dis = many").is_err());
        assert!(Config::from_text("n_dis 100").is_err());
    }
}
