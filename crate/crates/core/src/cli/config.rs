use std::path::Path;

use serde::Deserialize;

use crate::decay_lab::{DatumKind, DatumSpec};
use crate::multiplier_theory::{LebesguePair, Rational};

/// Configuration problem, reported with exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub type ConfigResult<T> = std::result::Result<T, ConfigError>;

fn err<T>(msg: impl Into<String>) -> ConfigResult<T> {
    Err(ConfigError(msg.into()))
}

/// Whole config file; one optional section per subcommand.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(rename = "theory-table")]
    pub theory_table: Option<TheoryTableSection>,
    #[serde(rename = "linear-decay")]
    pub linear_decay: Option<LinearDecaySection>,
    pub optimality: Option<OptimalitySection>,
    pub semilinear: Option<SemilinearSection>,
    pub nonexistence: Option<NonexistenceSection>,
    #[serde(rename = "radial-crosscheck")]
    pub radial_crosscheck: Option<CrosscheckSection>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> ConfigResult<Self> {
        let text = std::fs::read_to_string(path)
            .or_else(|e| err(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> ConfigResult<Self> {
        toml::from_str(text).or_else(|e| err(format!("config: {}", e.to_string().trim())))
    }
}

pub fn require<T>(section: Option<T>, name: &str) -> ConfigResult<T> {
    section.map_or_else(|| err(format!("missing section [{name}]")), Ok)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoryTableSection {
    pub n: Option<u32>,
    pub grid: Option<f64>,
}

/// Datum keys shared by sections that build a [`DatumSpec`].
#[derive(Debug, Clone, Default)]
pub struct DatumKeys {
    pub kind: String,
    pub width: Option<f64>,
    pub radius: Option<f64>,
    pub k: Option<f64>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub scale: Option<f64>,
    pub cutoff: Option<f64>,
    pub amplitude: Option<f64>,
    pub seed: Option<u64>,
}

impl DatumKeys {
    /// `section` names the table in error messages.
    pub fn to_spec(&self, section: &str, seed: Option<u64>) -> ConfigResult<DatumSpec<f64>> {
        let need = |v: Option<f64>, key: &str| v.map_or_else(|| err(format!("[{section}] missing key `{key}`")), Ok);
        let kind = match self.kind.as_str() {
            "gaussian" => DatumKind::Gaussian { width: need(self.width, "width")? },
            "smooth_bump" => DatumKind::SmoothBump { radius: need(self.radius, "radius")? },
            "singular_power" => DatumKind::SingularPower { k: need(self.k, "k")? },
            "band_limited_radial" => DatumKind::BandLimitedRadial { lo: need(self.lo, "lo")?, hi: need(self.hi, "hi")? },
            "spectral_power_tail" => {
                DatumKind::SpectralPowerTail { k: need(self.k, "k")?, scale: self.scale.unwrap_or(1.0) }
            }
            "random_band_limited" => DatumKind::RandomBandLimited { cutoff: need(self.cutoff, "cutoff")? },
            other => return err(format!("[{section}] key `datum`: unknown datum kind `{other}`")),
        };
        let mut spec = DatumSpec::new(kind).with_amplitude(self.amplitude.unwrap_or(1.0));
        if let Some(s) = seed.or(self.seed) {
            spec = spec.with_seed(s);
        }
        Ok(spec)
    }
}

macro_rules! datum_keys {
    ($s:expr) => {
        DatumKeys {
            kind: $s.datum.clone(),
            width: $s.width,
            radius: $s.radius,
            k: $s.k,
            lo: $s.lo,
            hi: $s.hi,
            scale: $s.scale,
            cutoff: $s.cutoff,
            amplitude: $s.amplitude,
            seed: $s.seed,
        }
    };
}

/// Exponent written as `"4/3"`, `"2"`, `"1.5"` or `"inf"`; `None` is infinity.
pub fn parse_exponent(text: &str, key: &str) -> ConfigResult<Option<Rational>> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("inf") || t == "∞" {
        return Ok(None);
    }
    if let Ok(r) = t.parse::<Rational>() {
        return Ok(Some(r));
    }
    if let Ok(v) = t.parse::<f64>() {
        if let Some(r) = Rational::approximate_float(v) {
            if ((*r.numer() as f64 / *r.denom() as f64) - v).abs() < 1e-12 {
                return Ok(Some(r));
            }
        }
    }
    err(format!("{key}: cannot read exponent `{text}`"))
}

pub fn parse_pair(text: &str, key: &str) -> ConfigResult<LebesguePair> {
    let Some((p, q)) = text.split_once(',') else {
        return err(format!("{key}: pair `{text}` must look like \"p,q\""));
    };
    let pair = LebesguePair::from_exponents(parse_exponent(p, key)?, parse_exponent(q, key)?);
    pair.or_else(|e| err(format!("{key}: {e}")))
}

pub fn parse_rational(text: &str, key: &str) -> ConfigResult<Rational> {
    parse_exponent(text, key)?.map_or_else(|| err(format!("{key}: `{text}` must be finite")), Ok)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearDecaySection {
    pub n: usize,
    pub points: usize,
    pub half_width: f64,
    pub datum: String,
    pub width: Option<f64>,
    pub radius: Option<f64>,
    pub k: Option<f64>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub scale: Option<f64>,
    pub cutoff: Option<f64>,
    pub amplitude: Option<f64>,
    pub seed: Option<u64>,
    pub pairs: Vec<String>,
    pub t_min: f64,
    pub t_max: f64,
    pub samples: usize,
    pub regime: String,
    pub tolerance: Option<f64>,
}

impl LinearDecaySection {
    pub fn datum_keys(&self) -> DatumKeys {
        datum_keys!(self)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimalitySection {
    pub n: usize,
    pub a: f64,
    pub profile_lo: f64,
    pub profile_hi: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub per_decade: usize,
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemilinearSection {
    pub n: usize,
    pub points: usize,
    pub half_width: f64,
    pub alpha: f64,
    /// Required unless a threshold search is configured.
    pub epsilon: Option<f64>,
    pub dt: f64,
    pub horizon: f64,
    pub quadrature: Option<String>,
    pub blowup_threshold: Option<f64>,
    pub t_min: f64,
    pub samples: usize,
    pub sampling: Option<String>,
    pub q: Vec<String>,
    /// Profile of `u₁`.
    pub datum: String,
    pub width: Option<f64>,
    pub radius: Option<f64>,
    pub k: Option<f64>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub scale: Option<f64>,
    pub cutoff: Option<f64>,
    pub amplitude: Option<f64>,
    pub seed: Option<u64>,
    /// `u₀` is the same profile times this factor; absent means `u₀ = 0`.
    pub u0_factor: Option<f64>,
    pub coupling: Option<f64>,
    pub fit_start: Option<f64>,
    pub fit_end: Option<f64>,
    pub tolerance: Option<f64>,
    pub search_lo: Option<f64>,
    pub search_hi: Option<f64>,
    pub search_factor: Option<f64>,
    pub search_per_round: Option<usize>,
    pub search_rounds: Option<usize>,
    /// Fraction of the threshold used for the reported run.
    pub search_fraction: Option<f64>,
}

impl SemilinearSection {
    pub fn datum_keys(&self) -> DatumKeys {
        datum_keys!(self)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonexistenceSection {
    pub dims: Vec<u32>,
    pub m: Vec<String>,
    pub alpha: Vec<String>,
    /// `[n, k]` pairs for the datum pairing sweep.
    pub scaling: Vec<(u32, f64)>,
    pub tau_min: f64,
    pub tau_max: f64,
    pub taus: usize,
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrosscheckSection {
    pub n: usize,
    pub points: usize,
    pub half_width: f64,
    pub profile_lo: f64,
    pub profile_hi: f64,
    pub times: Vec<f64>,
    pub per_time: usize,
    /// Samples are taken where `|u| >= level·‖u‖∞`.
    pub level: Option<f64>,
    pub tolerance: Option<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiplier_theory::rat;

    #[test]
    fn exponents() {
        assert_eq!(parse_exponent("4/3", "k").unwrap(), Some(rat(4, 3)));
        assert_eq!(parse_exponent("inf", "k").unwrap(), None);
        assert_eq!(parse_exponent("1.5", "k").unwrap(), Some(rat(3, 2)));
        assert!(parse_exponent("x", "k").is_err());
        let p = parse_pair("1,4", "pairs").unwrap();
        assert_eq!((p.p_inv(), p.q_inv()), (rat(1, 1), rat(1, 4)));
    }

    #[test]
    fn unknown_keys_are_named() {
        let e = ConfigFile::parse("[theory-table]\nn = 3\nbogus = 1\n").unwrap_err();
        assert!(e.0.contains("bogus"), "{e}");
        let e = ConfigFile::parse("[linear-decay]\nn = 1\n").unwrap_err();
        assert!(e.0.contains("points"), "{e}");
        assert!(ConfigFile::parse("").unwrap().semilinear.is_none());
    }
}
