//! Settings resolution: flags, then `MZV_*` environment variables, then a
//! `key=value` config file, then defaults.

use std::path::{Path, PathBuf};

use mzv_core::series::TruncationOptions;
use mzv_core::{MzvError, Precision, Result};

/// Values a config file may set.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FileConfig {
    pub prec: Option<u32>,
    pub cutoff: Option<u64>,
    pub cache: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub tolerance_scale: Option<f64>,
    pub accel_terms: Option<u32>,
    pub fit_orders: Option<u32>,
    pub richardson_levels: Option<u32>,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
    value
        .parse()
        .map_err(|_| MzvError::Syntax(format!("config line {line}: bad value `{value}` for `{key}`")))
}

impl FileConfig {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = FileConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| MzvError::Syntax(format!("config line {line}: expected key=value")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "prec" => c.prec = Some(parse_value(key, value, line)?),
                "cutoff" => c.cutoff = Some(parse_value(key, value, line)?),
                "cache" => c.cache = Some(PathBuf::from(value)),
                "jobs" => c.jobs = Some(parse_value(key, value, line)?),
                "tolerance_scale" => c.tolerance_scale = Some(parse_value(key, value, line)?),
                "accel_terms" => c.accel_terms = Some(parse_value(key, value, line)?),
                "fit_orders" => c.fit_orders = Some(parse_value(key, value, line)?),
                "richardson_levels" => c.richardson_levels = Some(parse_value(key, value, line)?),
                other => return Err(MzvError::Syntax(format!("config line {line}: unknown key `{other}`"))),
            }
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| MzvError::Resource(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// Values given on the command line or through the environment.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub prec: Option<u32>,
    pub cutoff: Option<u64>,
    pub cache: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub tolerance_scale: Option<f64>,
}

/// Fully resolved settings.
#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub prec: Precision,
    pub opts: TruncationOptions,
    pub cache: Option<PathBuf>,
    pub jobs: usize,
    pub tolerance_scale: f64,
}

pub fn resolve(over: &Overrides, file: &FileConfig) -> Result<Settings> {
    let bits = over.prec.or(file.prec).unwrap_or(Precision::DEFAULT.bits());
    let prec = Precision::new(bits)?;
    let mut opts = TruncationOptions::default();
    if let Some(n) = over.cutoff.or(file.cutoff) {
        if n < 16 {
            return Err(MzvError::Domain(format!("cutoff must be at least 16, got {n}")));
        }
        opts.cutoff = n;
    }
    if let Some(v) = file.accel_terms {
        opts.accel_terms = v;
    }
    if let Some(v) = file.fit_orders {
        opts.fit_orders = v;
    }
    if let Some(v) = file.richardson_levels {
        opts.richardson_levels = v;
    }
    let tolerance_scale = over.tolerance_scale.or(file.tolerance_scale).unwrap_or(1.0);
    if !(tolerance_scale.is_finite() && tolerance_scale > 0.0) {
        return Err(MzvError::Domain(format!("tolerance scale must be positive, got {tolerance_scale}")));
    }
    Ok(Settings {
        prec,
        opts,
        cache: over.cache.clone().or_else(|| file.cache.clone()),
        jobs: over.jobs.or(file.jobs).unwrap_or(0),
        tolerance_scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let c = FileConfig::parse("# comment\nprec = 256\ncutoff=2000  # inline\n\njobs=2\n").unwrap();
        assert_eq!(c.prec, Some(256));
        assert_eq!(c.cutoff, Some(2000));
        assert_eq!(c.jobs, Some(2));
        assert!(FileConfig::parse("prec = abc").is_err());
        assert!(FileConfig::parse("colour = red").is_err());
        assert!(FileConfig::parse("just text").is_err());
    }

    #[test]
    fn flags_outrank_file() {
        let file = FileConfig { prec: Some(256), cutoff: Some(5000), ..Default::default() };
        let over = Overrides { prec: Some(128), ..Default::default() };
        let s = resolve(&over, &file).unwrap();
        assert_eq!(s.prec.bits(), 128);
        assert_eq!(s.opts.cutoff, 5000);
        let d = resolve(&Overrides::default(), &FileConfig::default()).unwrap();
        assert_eq!(d.prec, Precision::DEFAULT);
        assert!(resolve(&Overrides { prec: Some(8), ..Default::default() }, &file).is_err());
    }
}
