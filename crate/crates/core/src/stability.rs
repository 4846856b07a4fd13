//! The filter distance `‖H(S) − H(Ŝ)‖₂`, its community-structure bound and
//! the perturbation-norm bound for polynomial filters.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filters::{self, FilterSpec};
use crate::graph::{check_dim, SymMatrix};
use crate::spectral::{
    self, spectral_gap_interval, structural_terms_with, EigenPair, SignAlignment,
};

/// Slack on `‖L‖₂ ≤ 2` accepted by [`polynomial_baseline_bound`].
pub const NORMALIZED_NORM_SLACK: f64 = 1e-8;

/// `‖h1 − h2‖₂`
pub fn filter_distance(h1: &SymMatrix, h2: &SymMatrix) -> Result<f64> {
    check_dim(h1.dim(), h2.dim())?;
    spectral::spectral_norm(&h1.sub(h2)?)
}

/// Which low-pass ratio enters the leakage term.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EtaMode {
    /// Extrema over `[0, λ̄]` and `[λ̄, λ_max]`.
    Interval,
    /// Extrema over the realized head and tail frequencies.
    #[default]
    Empirical,
}

impl EtaMode {
    pub fn name(self) -> &'static str {
        match self {
            EtaMode::Interval => "interval",
            EtaMode::Empirical => "empirical",
        }
    }
}

impl fmt::Display for EtaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EtaMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "interval" => Ok(EtaMode::Interval),
            "empirical" => Ok(EtaMode::Empirical),
            other => Err(Error::Parameter(format!("unknown eta mode '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundBreakdown {
    /// `2 · H_max · η`
    pub leakage: f64,
    /// `L_H · max_{i≤k} |λ_i − λ̂_i|`
    pub eig_term: f64,
    /// `2 · H_max · ‖V_k − V̂_k‖₂`
    pub vec_term: f64,
    pub total: f64,
    /// Measured `‖H(S) − H(Ŝ)‖₂`.
    pub distance: f64,
    pub cutoff: f64,
    pub k: usize,
    /// The ratio that entered `leakage`.
    pub eta: f64,
    pub eta_used: EtaMode,
    pub gap_ok: bool,
    pub h_max: f64,
    pub lipschitz: f64,
    pub eig_drift: f64,
    pub vec_drift: f64,
    pub proj_drift: f64,
}

/// Bound with sign-aligned eigenvectors.
pub fn theorem1_bound(
    f: &FilterSpec,
    e: &EigenPair,
    ehat: &EigenPair,
    k: usize,
    eta_mode: EtaMode,
    n: usize,
) -> Result<BoundBreakdown> {
    theorem1_bound_with(f, e, ehat, k, eta_mode, SignAlignment::Aligned, n)
}

/// Evaluates `2 H_max η + L_H ‖Λ_k − Λ̂_k‖₂ + 2 H_max ‖V_k − V̂_k‖₂` at the
/// midpoint of the common spectral gap and measures the actual distance.
///
/// When no common gap exists the breakdown is still produced at
/// `(λ_k + λ_{k+1}) / 2` of `e`, with `gap_ok = false`.
pub fn theorem1_bound_with(
    f: &FilterSpec,
    e: &EigenPair,
    ehat: &EigenPair,
    k: usize,
    eta_mode: EtaMode,
    alignment: SignAlignment,
    n: usize,
) -> Result<BoundBreakdown> {
    let dim = e.dim();
    check_dim(dim, ehat.dim())?;
    if k == 0 || k >= dim {
        return Err(Error::Parameter(format!(
            "order k = {k} is outside [1, {}]",
            dim.saturating_sub(1)
        )));
    }
    let (lam, lam_hat) = (e.values().view(), ehat.values().view());
    let (cutoff, gap_ok) = match spectral_gap_interval(lam, lam_hat, k) {
        Ok(gap) => (gap.midpoint(), true),
        Err(Error::GapViolation { .. }) => (0.5 * (lam[k - 1] + lam[k]), false),
        Err(other) => return Err(other),
    };

    let eta = match eta_mode {
        EtaMode::Interval => {
            let top = e.largest().max(ehat.largest()).max(cutoff);
            filters::low_pass_ratio(f, cutoff, top, n)?
        }
        EtaMode::Empirical => filters::empirical_ratio(f, lam, lam_hat, k, n)?,
    };
    let h_max = filters::h_max(f, cutoff, n)?;
    let lipschitz = filters::lipschitz(f, cutoff, n)?;
    let drift = structural_terms_with(e, ehat, k, alignment)?;

    let leakage = 2.0 * h_max * eta;
    let eig_term = lipschitz * drift.eig_drift;
    let vec_term = 2.0 * h_max * drift.vec_drift;
    let total = leakage + eig_term + vec_term;

    let distance = filter_distance(
        &filters::apply_filter(f, e, n)?,
        &filters::apply_filter(f, ehat, n)?,
    )?;

    Ok(BoundBreakdown {
        leakage,
        eig_term,
        vec_term,
        total,
        distance,
        cutoff,
        k,
        eta,
        eta_used: eta_mode,
        gap_ok,
        h_max,
        lipschitz,
        eig_drift: drift.eig_drift,
        vec_drift: drift.vec_drift,
        proj_drift: drift.proj_drift,
    })
}

/// `‖H(S)‖₂ + ‖H(Ŝ)‖₂ ≤ 2 max_i max(|h(λ_i)|, |h(λ̂_i)|)`
pub fn spectral_bound(f: &FilterSpec, e: &EigenPair, ehat: &EigenPair, n: usize) -> Result<f64> {
    let h = f.response(n)?;
    let top = e
        .values()
        .iter()
        .chain(ehat.values().iter())
        .fold(0.0f64, |m, &l| m.max(h.eval(l).abs()));
    Ok(2.0 * top)
}

/// `Σ_t t 2^{t−1} |h_t| ‖L − L̂‖₂` for normalized Laplacians `l`, `lhat`.
pub fn polynomial_baseline_bound(coeffs: &[f64], l: &SymMatrix, lhat: &SymMatrix) -> Result<f64> {
    if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Parameter(
            "coefficients must be finite and nonempty".into(),
        ));
    }
    check_dim(l.dim(), lhat.dim())?;
    for m in [l, lhat] {
        let norm = spectral::spectral_norm(m)?;
        if norm > 2.0 + NORMALIZED_NORM_SLACK {
            return Err(Error::Validation(format!(
                "operator has spectral norm {norm} > 2; not a normalized Laplacian"
            )));
        }
    }
    let weight: f64 = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(t, h)| t as f64 * 2f64.powi(t as i32 - 1) * h.abs())
        .sum();
    if weight == 0.0 {
        return Ok(0.0);
    }
    Ok(weight * spectral::spectral_norm(&l.sub(lhat)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{normalized_laplacian, permute, unnormalized_laplacian, Graph};
    use crate::random_models::{rewire_sbm, sample_ppm, PpmParams};
    use crate::rng::stream;
    use crate::spectral::eigh;
    use ndarray::{Array1, Array2};
    use rand::seq::SliceRandom;
    use rand::Rng;
    use rand_distr::StandardNormal;

    fn normal(rng: &mut impl Rng) -> f64 {
        rng.sample(StandardNormal)
    }

    fn ppm_pair(n: usize, p_re: f64, seed: u64) -> (Graph, Graph) {
        let ppm = PpmParams::log_scaled(n, 2, 13.0, 2.0).unwrap();
        let g = sample_ppm(&ppm, seed).unwrap();
        let ghat = rewire_sbm(&g, &ppm.to_sbm().unwrap(), p_re, seed ^ 0xa5a5).unwrap();
        (g, ghat)
    }

    fn random_sym(n: usize, seed: u64) -> SymMatrix {
        let mut rng = stream(seed, 99);
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, normal(&mut rng));
            }
        }
        m
    }

    #[test]
    fn distance_examples() {
        let i = SymMatrix::identity(5);
        assert_eq!(filter_distance(&i, &i).unwrap(), 0.0);
        assert!((filter_distance(&i, &SymMatrix::zeros(5)).unwrap() - 1.0).abs() < 1e-12);
        assert!(filter_distance(&i, &SymMatrix::zeros(4)).is_err());
    }

    #[test]
    fn distance_is_symmetric_and_definite() {
        let a = random_sym(30, 1);
        let b = random_sym(30, 2);
        let ab = filter_distance(&a, &b).unwrap();
        assert_eq!(ab, filter_distance(&b, &a).unwrap());
        assert!(ab > 0.0);
        assert!(filter_distance(&a, &a).unwrap() < 1e-10);
    }

    #[test]
    fn distance_dominates_random_directions() {
        let a = random_sym(25, 3);
        let b = random_sym(25, 4);
        let d = filter_distance(&a, &b).unwrap();
        let diff = a.sub(&b).unwrap();
        let mut rng = stream(5, 99);
        let mut best = 0.0f64;
        for _ in 0..1000 {
            let x = Array1::from_iter((0..25).map(|_| normal(&mut rng)));
            let x = &x / x.dot(&x).sqrt();
            let y = diff.matvec(x.as_slice().unwrap()).unwrap();
            best = best.max(y.dot(&y).sqrt());
        }
        assert!(best <= d * (1.0 + 1e-12));
        let e = eigh(&diff).unwrap();
        let top = (0..25)
            .max_by(|&i, &j| e.values()[i].abs().total_cmp(&e.values()[j].abs()))
            .unwrap();
        let v = e.vector(top).to_owned();
        let y = diff.matvec(v.as_slice().unwrap()).unwrap();
        assert!((y.dot(&y).sqrt() - d).abs() < 1e-8);
    }

    #[test]
    fn distance_is_permutation_invariant() {
        let (g, ghat) = ppm_pair(80, 0.5, 11);
        let f = FilterSpec::low_pass_exp(1.0, true);
        let dist = |a: &Graph, b: &Graph| {
            let e = eigh(&unnormalized_laplacian(a)).unwrap();
            let ehat = eigh(&unnormalized_laplacian(b)).unwrap();
            filter_distance(
                &filters::apply_filter(&f, &e, 80).unwrap(),
                &filters::apply_filter(&f, &ehat, 80).unwrap(),
            )
            .unwrap()
        };
        let mut perm: Vec<usize> = (0..80).collect();
        perm.shuffle(&mut stream(12, 99));
        let before = dist(&g, &ghat);
        let after = dist(
            &permute(&g, &perm).unwrap(),
            &permute(&ghat, &perm).unwrap(),
        );
        assert!((before - after).abs() < 1e-8, "{before} vs {after}");
    }

    #[test]
    fn identical_graphs_leave_only_leakage() {
        let (g, _) = ppm_pair(80, 0.1, 2);
        let e = eigh(&unnormalized_laplacian(&g)).unwrap();
        let f = FilterSpec::low_pass_exp(1.0, true);
        let b = theorem1_bound(&f, &e, &e, 2, EtaMode::Empirical, 80).unwrap();
        assert_eq!(b.eig_term, 0.0);
        assert_eq!(b.vec_term, 0.0);
        assert_eq!(b.total, b.leakage);
        assert_eq!(b.leakage, 2.0 * b.h_max * b.eta);
        assert!(b.gap_ok);
        assert!(b.distance < 1e-12);
    }

    #[test]
    fn interval_mode_of_monotone_filter_has_unit_eta() {
        let (g, ghat) = ppm_pair(80, 0.3, 5);
        let e = eigh(&unnormalized_laplacian(&g)).unwrap();
        let ehat = eigh(&unnormalized_laplacian(&ghat)).unwrap();
        let f = FilterSpec::low_pass_exp(1.0, true);
        let b = theorem1_bound(&f, &e, &ehat, 2, EtaMode::Interval, 80).unwrap();
        assert_eq!(b.eta, 1.0);
        assert_eq!(b.eta_used, EtaMode::Interval);
        assert_eq!(b.total, b.leakage + b.eig_term + b.vec_term);
        let emp = theorem1_bound(&f, &e, &ehat, 2, EtaMode::Empirical, 80).unwrap();
        if emp.gap_ok {
            assert!(emp.eta <= b.eta);
        }
    }

    #[test]
    fn bound_holds_on_small_ppm_pairs() {
        let f = FilterSpec::low_pass_exp(1.0, true);
        let mut checked = 0;
        for seed in 0..15 {
            let (g, ghat) = ppm_pair(100, 0.5, seed);
            let e = eigh(&unnormalized_laplacian(&g)).unwrap();
            let ehat = eigh(&unnormalized_laplacian(&ghat)).unwrap();
            let b = theorem1_bound(&f, &e, &ehat, 2, EtaMode::Empirical, 100).unwrap();
            assert!(b.distance <= spectral_bound(&f, &e, &ehat, 100).unwrap());
            if b.gap_ok {
                checked += 1;
                assert!(b.distance <= b.total, "seed {seed}: {b:?}");
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn failed_gap_falls_back_to_first_graph() {
        let e = EigenPair::new(Array1::from(vec![0.0, 1.0, 2.0]), Array2::eye(3)).unwrap();
        let ehat = EigenPair::new(Array1::from(vec![0.0, 3.0, 4.0]), Array2::eye(3)).unwrap();
        let f = FilterSpec::low_pass_exp(1.0, false);
        let b = theorem1_bound(&f, &e, &ehat, 2, EtaMode::Empirical, 3).unwrap();
        assert!(!b.gap_ok);
        assert_eq!(b.cutoff, 1.5);
        let ok = theorem1_bound(&f, &e, &ehat, 1, EtaMode::Empirical, 3).unwrap();
        assert!(ok.gap_ok);
        assert_eq!(ok.cutoff, 0.5);
    }

    #[test]
    fn baseline_examples() {
        let (g, ghat) = ppm_pair(80, 0.5, 9);
        let l = normalized_laplacian(&g).unwrap();
        let lhat = normalized_laplacian(&ghat).unwrap();
        let delta = spectral::spectral_norm(&l.sub(&lhat).unwrap()).unwrap();
        assert_eq!(polynomial_baseline_bound(&[3.0], &l, &lhat).unwrap(), 0.0);
        let b = polynomial_baseline_bound(&[1.0, 1.0], &l, &lhat).unwrap();
        assert!((b - delta).abs() < 1e-12);
        let b = polynomial_baseline_bound(&[0.0, 0.0, 1.0], &l, &lhat).unwrap();
        assert!((b - 4.0 * delta).abs() < 1e-12);
        let squares = SymMatrix::from_upper(l.as_array().dot(l.as_array())).unwrap();
        let squares_hat = SymMatrix::from_upper(lhat.as_array().dot(lhat.as_array())).unwrap();
        assert!(filter_distance(&squares, &squares_hat).unwrap() <= b);
    }

    #[test]
    fn baseline_rejects_unnormalized_operator() {
        let (g, ghat) = ppm_pair(80, 0.5, 9);
        let l = unnormalized_laplacian(&g);
        let lhat = unnormalized_laplacian(&ghat);
        assert!(matches!(
            polynomial_baseline_bound(&[0.0, 1.0], &l, &lhat),
            Err(Error::Validation(_))
        ));
    }
}
