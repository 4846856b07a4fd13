use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filters::FilterSpec;
use crate::graph::Gso;
use crate::random_models::PpmParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Synthetic,
    Real,
    Consistency,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Synthetic => "synthetic",
            Mode::Real => "real",
            Mode::Consistency => "consistency",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "synthetic" => Ok(Mode::Synthetic),
            "real" => Ok(Mode::Real),
            "consistency" => Ok(Mode::Consistency),
            other => Err(Error::Parameter(format!("unknown mode '{other}'"))),
        }
    }
}

/// Coefficients of the sparse planted partition `PPM(n, 2, α log n/n, β log n/n)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PpmScale {
    pub alpha: f64,
    pub beta: f64,
}

impl Default for PpmScale {
    fn default() -> Self {
        PpmScale {
            alpha: 13.0,
            beta: 2.0,
        }
    }
}

/// One operator or a list of them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GsoSelection {
    One(Gso),
    Many(Vec<Gso>),
}

impl Default for GsoSelection {
    fn default() -> Self {
        GsoSelection::One(Gso::Unnormalized)
    }
}

impl GsoSelection {
    pub fn to_vec(&self) -> Vec<Gso> {
        let all = match self {
            GsoSelection::One(g) => vec![*g],
            GsoSelection::Many(gs) => gs.clone(),
        };
        let mut out = Vec::with_capacity(all.len());
        for g in all {
            if !out.contains(&g) {
                out.push(g);
            }
        }
        out
    }
}

pub const DEFAULT_TRIALS: usize = 100;
pub const QUICK_TRIALS: usize = 20;
pub const QUICK_MAX_N: usize = 1000;

const fn default_trials() -> usize {
    DEFAULT_TRIALS
}

const fn default_k() -> usize {
    2
}

/// A Monte Carlo experiment. Fields left unset take mode-dependent
/// defaults, see [`ExperimentConfig::n_grid`], [`ExperimentConfig::p_re_grid`]
/// and [`ExperimentConfig::filters_for`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub mode: Mode,
    #[serde(default)]
    pub gso: GsoSelection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filters: Option<Vec<FilterSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_grid: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_re_grid: Option<Vec<f64>>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default)]
    pub ppm: PpmScale,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub communities: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(mode: Mode) -> Self {
        ExperimentConfig {
            mode,
            gso: GsoSelection::default(),
            filters: None,
            n_grid: None,
            p_re_grid: None,
            trials: DEFAULT_TRIALS,
            master_seed: 0,
            k: default_k(),
            ppm: PpmScale::default(),
            edges: None,
            communities: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config is always serializable")
    }

    pub fn gsos(&self) -> Vec<Gso> {
        self.gso.to_vec()
    }

    pub fn n_grid(&self) -> Vec<usize> {
        match (&self.n_grid, self.mode) {
            (Some(g), _) => g.clone(),
            (None, Mode::Consistency) => vec![200, 500, 1000, 2000],
            (None, _) => vec![200, 400, 700, 1000, 1400, 2000],
        }
    }

    pub fn p_re_grid(&self) -> Vec<f64> {
        match (&self.p_re_grid, self.mode) {
            (Some(g), _) => g.clone(),
            (None, Mode::Synthetic) => vec![0.1, 0.5, 0.9],
            (None, Mode::Real) => vec![0.01, 0.05, 0.1, 0.15, 0.2],
            (None, Mode::Consistency) => vec![1.0],
        }
    }

    /// Filters evaluated on `gso`: the configured list, or the low-pass and
    /// high-pass exponential pair matched to the operator.
    pub fn filters_for(&self, gso: Gso) -> Vec<FilterSpec> {
        if let Some(f) = &self.filters {
            return f.clone();
        }
        match (self.mode, gso) {
            (_, Gso::Normalized) => vec![
                FilterSpec::low_pass_exp(1.0, false),
                FilterSpec::high_pass_exp(1.0, false),
            ],
            (Mode::Real, Gso::Unnormalized) => vec![
                FilterSpec::low_pass_exp(1.0, true),
                FilterSpec::high_pass_exp(1.0, true),
                FilterSpec::low_pass_exp(0.1, true),
                FilterSpec::high_pass_exp(0.1, true),
            ],
            (_, Gso::Unnormalized) => vec![
                FilterSpec::low_pass_exp(1.0, true),
                FilterSpec::high_pass_exp(1.0, true),
            ],
        }
    }

    /// The planted partition sampled at size `n`, one block per spectral
    /// component of interest.
    pub fn ppm_params(&self, n: usize) -> Result<PpmParams> {
        PpmParams::log_scaled(n, self.k, self.ppm.alpha, self.ppm.beta)
    }

    /// Desk-scale profile: 20 trials, no graph above 1000 nodes.
    pub fn quick(mut self) -> Self {
        self.trials = QUICK_TRIALS;
        self.n_grid = Some(
            self.n_grid()
                .into_iter()
                .filter(|&n| n <= QUICK_MAX_N)
                .collect(),
        );
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.trials == 0 {
            return bad("trials must be >= 1".into());
        }
        if self.k == 0 {
            return bad("k must be >= 1".into());
        }
        if self.gsos().is_empty() {
            return bad("at least one gso is required".into());
        }
        let p_re = self.p_re_grid();
        if p_re.is_empty() {
            return bad("p_re_grid is empty".into());
        }
        if let Some(p) = p_re.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return bad(format!("p_re {p} is outside [0, 1]"));
        }
        if let Some(fs) = &self.filters {
            if fs.is_empty() && self.mode != Mode::Consistency {
                return bad("filters list is empty".into());
            }
            for f in fs {
                f.validate().map_err(|e| Error::Config(e.to_string()))?;
            }
        }
        if self.mode != Mode::Real {
            let ns = self.n_grid();
            if ns.is_empty() {
                return bad("n_grid is empty".into());
            }
            if !(self.ppm.alpha > 0.0 && self.ppm.beta > 0.0) {
                return bad("ppm alpha and beta must be > 0".into());
            }
            for &n in &ns {
                if n < 4 || n % self.k != 0 || n <= self.k {
                    return bad(format!(
                        "n_grid value {n} must be >= 4 and split into {} equal blocks",
                        self.k
                    ));
                }
                self.ppm_params(n)
                    .map_err(|e| Error::Config(format!("n = {n}: {e}")))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_the_protocol() {
        let cfg = ExperimentConfig::from_json(r#"{"mode":"synthetic"}"#).unwrap();
        assert_eq!(
            cfg.ppm,
            PpmScale {
                alpha: 13.0,
                beta: 2.0
            }
        );
        assert_eq!(cfg.n_grid(), vec![200, 400, 700, 1000, 1400, 2000]);
        assert_eq!(cfg.p_re_grid(), vec![0.1, 0.5, 0.9]);
        assert_eq!(cfg.trials, 100);
        assert_eq!(cfg.k, 2);
        assert_eq!(cfg.gsos(), vec![Gso::Unnormalized]);
        let real = ExperimentConfig::new(Mode::Real);
        assert_eq!(real.p_re_grid(), vec![0.01, 0.05, 0.1, 0.15, 0.2]);
        assert_eq!(real.filters_for(Gso::Unnormalized).len(), 4);
    }

    #[test]
    fn quick_caps_grid_and_trials() {
        let cfg = ExperimentConfig::new(Mode::Synthetic).quick();
        assert_eq!(cfg.trials, 20);
        assert_eq!(cfg.n_grid(), vec![200, 400, 700, 1000]);
    }

    #[test]
    fn gso_accepts_one_or_many() {
        let one =
            ExperimentConfig::from_json(r#"{"mode":"synthetic","gso":"normalized"}"#).unwrap();
        assert_eq!(one.gsos(), vec![Gso::Normalized]);
        let many = ExperimentConfig::from_json(
            r#"{"mode":"synthetic","gso":["unnormalized","normalized"]}"#,
        )
        .unwrap();
        assert_eq!(many.gsos(), vec![Gso::Unnormalized, Gso::Normalized]);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        for bad in [
            r#"{"mode":"synthetic","extra":1}"#,
            r#"{"mode":"synthetic","trials":0}"#,
            r#"{"mode":"synthetic","p_re_grid":[1.5]}"#,
            r#"{"mode":"synthetic","n_grid":[201]}"#,
            r#"{"mode":"synthetic","ppm":{"alpha":13,"gamma":1}}"#,
            r#"{"mode":"other"}"#,
            r#"{"mode":"synthetic","filters":[{"kind":"resolvent","alpha":-1}]}"#,
        ] {
            let err = ExperimentConfig::from_json(bad).unwrap_err();
            assert_eq!(err.exit_code(), 1, "{bad}");
        }
    }

    #[test]
    fn json_round_trip() {
        let mut cfg = ExperimentConfig::new(Mode::Synthetic);
        cfg.filters = Some(vec![FilterSpec::Resolvent { alpha: 0.5 }]);
        cfg.master_seed = 42;
        assert_eq!(ExperimentConfig::from_json(&cfg.to_json()).unwrap(), cfg);
    }
}
