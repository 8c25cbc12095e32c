use std::path::PathBuf;

use hecke_core::hpseries::hp_series;
use hecke_core::heckealg::default_cap;
use hecke_core::scalar::parse_rational;
use hecke_core::HeckeSymmetry;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Failures that are not mathematical: usage, I/O and parsing. They map to exit code 2.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot parse {what}: {msg}")]
    Parse { what: String, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymmetrySpec {
    Standard(usize),
    SuperFlip(usize, usize),
    File(PathBuf),
}

#[derive(Debug, Clone)]
pub struct Config {
    pub symmetry: SymmetrySpec,
    /// Largest tensor power used by dimension checks.
    pub max_k: usize,
    /// Largest carrier dimension built by representation checks.
    pub max_dim: usize,
    pub sample_points: Vec<BigRational>,
}

impl Config {
    pub fn new(symmetry: SymmetrySpec) -> Self {
        Config { symmetry, max_k: 4, max_dim: 64, sample_points: hecke_core::linalg::default_sample_points() }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.max_k == 0 || self.max_dim == 0 {
            return Err(ConfigError::Usage("caps must be positive".into()));
        }
        let pts = &self.sample_points;
        if pts.len() < 2 {
            return Err(ConfigError::Usage("need at least two sample points".into()));
        }
        let one = BigRational::one();
        if let Some(p) = pts.iter().find(|p| p.is_zero() || **p == one || **p == -one.clone()) {
            return Err(ConfigError::Usage(format!("sample point {p} is not generic")));
        }
        if pts.iter().enumerate().any(|(i, p)| pts[..i].contains(p)) {
            return Err(ConfigError::Usage("sample points must be distinct".into()));
        }
        match self.symmetry {
            SymmetrySpec::Standard(0) => Err(ConfigError::Usage("--standard needs m >= 1".into())),
            SymmetrySpec::SuperFlip(0, 0) => Err(ConfigError::Usage("--superflip needs m + n >= 1".into())),
            _ => Ok(()),
        }
    }
}

/// "3/2,5/3" → rationals.
pub fn parse_points(s: &str) -> Result<Vec<BigRational>, ConfigError> {
    s.split(',')
        .map(|t| parse_rational(t.trim()).map_err(|e| ConfigError::Parse { what: format!("sample point {t:?}"), msg: e.to_string() }))
        .collect()
}

/// "q=3/2" → 3/2.
pub fn parse_eval(s: &str) -> Result<BigRational, ConfigError> {
    let v = s.trim().strip_prefix("q=").ok_or_else(|| ConfigError::Parse { what: "--eval".into(), msg: "expected q=<rational>".into() })?;
    parse_rational(v).map_err(|e| ConfigError::Parse { what: "--eval".into(), msg: e.to_string() })
}

/// Reads the symmetry. Returns the parse error for unreadable input and the
/// certification failure separately, since the latter is mathematical.
pub fn load_symmetry(spec: &SymmetrySpec) -> Result<Result<HeckeSymmetry, hecke_core::HeckeError>, ConfigError> {
    Ok(match spec {
        SymmetrySpec::Standard(m) => Ok(HeckeSymmetry::standard(*m)),
        SymmetrySpec::SuperFlip(m, n) => Ok(HeckeSymmetry::super_flip(*m, *n)),
        SymmetrySpec::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.clone(), source })?;
            let v: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| ConfigError::Parse { what: path.display().to_string(), msg: e.to_string() })?;
            let m = hecke_core::QMatrix::from_json(&v)
                .map_err(|e| ConfigError::Parse { what: path.display().to_string(), msg: e.to_string() })?;
            HeckeSymmetry::load(m)
        }
    })
}

/// Attaches the bi-rank read off the fitted HP series; unchanged if the fit fails.
pub fn with_fitted_birank(h: HeckeSymmetry, points: &[BigRational]) -> HeckeSymmetry {
    let cap = default_cap(&h).max(6);
    match hp_series(&h, 6, cap, points) {
        Ok(s) => h.with_birank(s.birank),
        Err(_) => h,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hecke_core::scalar::rat;

    fn cfg(points: Vec<BigRational>) -> Config {
        Config { sample_points: points, ..Config::new(SymmetrySpec::Standard(2)) }
    }

    #[test]
    fn default_config_is_valid() {
        Config::new(SymmetrySpec::SuperFlip(1, 1)).validate().unwrap();
    }

    #[test]
    fn degenerate_points_are_rejected() {
        for bad in [vec![rat(3, 2)], vec![rat(3, 2), rat(3, 2)], vec![rat(3, 2), rat(-1, 1)], vec![rat(0, 1), rat(5, 3)]] {
            assert!(matches!(cfg(bad).validate(), Err(ConfigError::Usage(_))));
        }
    }

    #[test]
    fn zero_caps_are_rejected() {
        let c = Config { max_k: 0, ..Config::new(SymmetrySpec::Standard(2)) };
        assert!(c.validate().is_err());
        assert!(Config::new(SymmetrySpec::Standard(0)).validate().is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_points("3/2, 5/3").unwrap(), vec![rat(3, 2), rat(5, 3)]);
        assert!(parse_points("3/2,x").is_err());
        assert_eq!(parse_eval("q=-2/7").unwrap(), rat(-2, 7));
        assert!(parse_eval("3/2").is_err());
    }

    #[test]
    fn missing_file_is_io() {
        let r = load_symmetry(&SymmetrySpec::File("/nonexistent/r.json".into()));
        assert!(matches!(r, Err(ConfigError::Io { .. })));
    }
}
