//! Run configuration: defaults, flat `key = value` files and overrides.

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::report::Format;
use crate::verify::{Precision, SuiteOptions, DEFAULT_U, DEFAULT_V};

pub const ALLOWED_BITS: [u32; 4] = [53, 113, 128, 256];

/// Every setting of a CLI run. Complex values are `(re, im)` pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub tau: (f64, f64),
    pub u: (f64, f64),
    pub v: (f64, f64),
    pub m: (f64, f64),
    pub n: i64,
    pub k: (f64, f64),
    /// Argument of `theta` and `r` evaluations.
    pub z: (f64, f64),
    /// Order of `mu-general` evaluations.
    pub alpha: (f64, f64),
    pub tol: Option<f64>,
    pub precision: Precision,
    pub seed: u64,
    pub grid: usize,
    pub suite: String,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tau: (0.0, 1.0),
            u: DEFAULT_U,
            v: DEFAULT_V,
            m: (2.0, 0.0),
            n: 1,
            k: (0.0, 0.0),
            z: (0.1, 0.05),
            alpha: (1.0, 0.0),
            tol: None,
            precision: Precision::Auto,
            seed: 0,
            grid: 10,
            suite: "all".to_string(),
            output: None,
            format: Format::Json,
        }
    }
}

/// Parses `"re,im"`; a bare real is accepted with zero imaginary part.
pub fn parse_complex(s: &str) -> Result<(f64, f64)> {
    let bad = || Error::Config(format!("expected a complex number as `re,im`, got `{s}`"));
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
    let (re, im) = match s.split_once(',') {
        Some((re, im)) => (num(re)?, num(im)?),
        None => (num(s)?, 0.0),
    };
    if re.is_finite() && im.is_finite() {
        Ok((re, im))
    } else {
        Err(bad())
    }
}

fn fmt_complex((re, im): (f64, f64)) -> String {
    format!("{re},{im}")
}

pub fn parse_precision(s: &str) -> Result<Precision> {
    if s == "auto" {
        return Ok(Precision::Auto);
    }
    match s.parse::<u32>() {
        Ok(b) if ALLOWED_BITS.contains(&b) => Ok(Precision::Bits(b)),
        _ => Err(Error::Config(format!(
            "precision must be auto or one of {ALLOWED_BITS:?}, got `{s}`"
        ))),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::Config(format!("invalid value `{s}` for `{key}`")))
}

impl RunConfig {
    /// Sets one field from its textual form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key {
            "tau" => self.tau = parse_complex(value)?,
            "u" => self.u = parse_complex(value)?,
            "v" => self.v = parse_complex(value)?,
            "m" => self.m = parse_complex(value)?,
            "n" => self.n = parse_num(key, value)?,
            "k" => self.k = parse_complex(value)?,
            "z" => self.z = parse_complex(value)?,
            "alpha" => self.alpha = parse_complex(value)?,
            "tol" => {
                self.tol = if value == "none" {
                    None
                } else {
                    Some(parse_num(key, value)?)
                }
            }
            "precision" | "precision_bits" => self.precision = parse_precision(value)?,
            "seed" => self.seed = parse_num(key, value)?,
            "grid" => self.grid = parse_num(key, value)?,
            "suite" => self.suite = value.to_string(),
            "output" => {
                self.output = (!value.is_empty() && value != "-").then(|| PathBuf::from(value))
            }
            "format" => self.format = value.parse()?,
            _ => return Err(Error::Config(format!("unknown config key `{key}`"))),
        }
        Ok(())
    }

    /// Applies a flat `key = value` file; `#` starts a comment line.
    pub fn apply_file_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", i + 1)))?;
            self.set(k.trim(), v)
                .map_err(|e| Error::Config(format!("line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.tau.1 <= 0.0 {
            return Err(Error::Config(format!(
                "Im tau must be positive, got {}",
                self.tau.1
            )));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Config(format!("tol must be positive, got {t}")));
            }
        }
        if self.grid == 0 {
            return Err(Error::Config("grid must be at least 1".into()));
        }
        Ok(())
    }

    /// The effective configuration in field order.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        let precision = match self.precision {
            Precision::Auto => "auto".to_string(),
            Precision::Bits(b) => b.to_string(),
        };
        let output = self
            .output
            .as_ref()
            .map_or("-".to_string(), |p| p.display().to_string());
        [
            ("tau", fmt_complex(self.tau)),
            ("u", fmt_complex(self.u)),
            ("v", fmt_complex(self.v)),
            ("m", fmt_complex(self.m)),
            ("n", self.n.to_string()),
            ("k", fmt_complex(self.k)),
            ("z", fmt_complex(self.z)),
            ("alpha", fmt_complex(self.alpha)),
            (
                "tol",
                self.tol.map_or("none".to_string(), |t| t.to_string()),
            ),
            ("precision", precision),
            ("seed", self.seed.to_string()),
            ("grid", self.grid.to_string()),
            ("suite", self.suite.clone()),
            ("output", output),
            ("format", self.format.name().to_string()),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
    }

    /// Report header: every field that affects the records, so the output
    /// path is left out and reports of identical runs compare byte for byte.
    pub fn header_pairs(&self) -> Vec<(String, String)> {
        self.to_pairs()
            .into_iter()
            .filter(|(k, _)| k != "output")
            .collect()
    }

    pub fn suite_options(&self) -> SuiteOptions {
        SuiteOptions {
            seed: self.seed,
            samples: self.grid,
            precision: self.precision,
            tol: self.tol,
            u: self.u,
            v: self.v,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_pairs() {
        assert_eq!(parse_complex("0.25,-1").unwrap(), (0.25, -1.0));
        assert_eq!(parse_complex(" 3 ").unwrap(), (3.0, 0.0));
        assert!(parse_complex("1;2").is_err());
        assert!(parse_complex("nan,0").is_err());
    }

    #[test]
    fn precision_values() {
        assert_eq!(parse_precision("auto").unwrap(), Precision::Auto);
        assert_eq!(parse_precision("113").unwrap(), Precision::Bits(113));
        assert!(parse_precision("64").is_err());
    }

    #[test]
    fn header_pairs_rebuild_the_config() {
        let mut c = RunConfig::default();
        c.set("tau", "0.333,1.2").unwrap();
        c.set("tol", "1e-9").unwrap();
        c.set("precision", "256").unwrap();
        c.set("output", "r.json").unwrap();
        let text: String = c
            .to_pairs()
            .iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect();
        let mut back = RunConfig::default();
        back.apply_file_text(&text).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn file_errors_name_the_line() {
        let mut c = RunConfig::default();
        let e = c
            .apply_file_text("# comment\nseed = 3\nbogus = 1\n")
            .unwrap_err();
        assert!(e.to_string().contains("line 3"), "{e}");
        assert_eq!(c.seed, 3);
        assert!(c.apply_file_text("seed 4").is_err());
    }

    #[test]
    fn validation() {
        let mut c = RunConfig::default();
        assert!(c.validate().is_ok());
        c.tau = (0.0, -1.0);
        assert!(c.validate().is_err());
        c.tau = (0.0, 1.0);
        c.tol = Some(0.0);
        assert!(c.validate().is_err());
    }
}
