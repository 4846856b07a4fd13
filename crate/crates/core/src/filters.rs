//! Frequency responses, spectral application of graph filters, and the
//! constants entering the stability bound: the low-pass ratio, the sup of
//! the response below the cutoff and its Lipschitz constant.

use std::fmt;

use ndarray::{ArrayView1, Axis};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SymMatrix;
use crate::spectral::EigenPair;

/// Sample count per interval when a polynomial response is searched for
/// extrema.
pub const GRID_POINTS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Negative => -1.0,
            Sign::Positive => 1.0,
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            -1 => Ok(Sign::Negative),
            1 => Ok(Sign::Positive),
            other => Err(format!("sign must be -1 or 1, got {other}")),
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        match s {
            Sign::Negative => -1,
            Sign::Positive => 1,
        }
    }
}

/// A graph filter described by its frequency response `h(λ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FilterSpec {
    /// `h(λ) = Σ_t h_t λ^t`
    Polynomial { coefficients: Vec<f64> },
    /// `h(λ) = exp(s · σ′ · λ)` with `σ′ = σ / ln n` when `log_normalize`.
    Exponential {
        sign: Sign,
        sigma: f64,
        #[serde(default)]
        log_normalize: bool,
    },
    /// `h(λ) = 1 / (1 + αλ)`
    Resolvent { alpha: f64 },
}

/// A [`FilterSpec`] bound to a graph size, ready for evaluation.
#[derive(Clone, Debug, PartialEq)]
pub enum Response {
    Polynomial(Vec<f64>),
    /// `exp(rate · λ)`
    Exponential {
        rate: f64,
    },
    Resolvent {
        alpha: f64,
    },
}

impl FilterSpec {
    pub fn polynomial(coefficients: impl Into<Vec<f64>>) -> Self {
        FilterSpec::Polynomial {
            coefficients: coefficients.into(),
        }
    }

    /// `exp(−σλ)`, or `exp(−σλ / ln n)` when `log_normalize`.
    pub fn low_pass_exp(sigma: f64, log_normalize: bool) -> Self {
        FilterSpec::Exponential {
            sign: Sign::Negative,
            sigma,
            log_normalize,
        }
    }

    /// `exp(σλ)`, or `exp(σλ / ln n)` when `log_normalize`.
    pub fn high_pass_exp(sigma: f64, log_normalize: bool) -> Self {
        FilterSpec::Exponential {
            sign: Sign::Positive,
            sigma,
            log_normalize,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FilterSpec::Polynomial { coefficients } => {
                if coefficients.is_empty() {
                    return Err(Error::Parameter("polynomial filter needs T >= 1".into()));
                }
                if coefficients.iter().any(|c| !c.is_finite()) {
                    return Err(Error::Parameter("non-finite filter coefficient".into()));
                }
            }
            FilterSpec::Exponential { sigma, .. } => {
                if !(*sigma > 0.0 && sigma.is_finite()) {
                    return Err(Error::Parameter(format!("sigma must be > 0, got {sigma}")));
                }
            }
            FilterSpec::Resolvent { alpha } => {
                if !(*alpha > 0.0 && alpha.is_finite()) {
                    return Err(Error::Parameter(format!("alpha must be > 0, got {alpha}")));
                }
            }
        }
        Ok(())
    }

    /// Binds the filter to a graph on `n` nodes.
    pub fn response(&self, n: usize) -> Result<Response> {
        self.validate()?;
        Ok(match self {
            FilterSpec::Polynomial { coefficients } => Response::Polynomial(coefficients.clone()),
            FilterSpec::Exponential {
                sign,
                sigma,
                log_normalize,
            } => {
                let scale = if *log_normalize {
                    if n <= 1 {
                        return Err(Error::Parameter(format!(
                            "log-normalized filter needs n > 1, got {n}"
                        )));
                    }
                    sigma / (n as f64).ln()
                } else {
                    *sigma
                };
                Response::Exponential {
                    rate: sign.value() * scale,
                }
            }
            FilterSpec::Resolvent { alpha } => Response::Resolvent { alpha: *alpha },
        })
    }

    /// Short human-readable identifier, e.g. `exp(-1*S/ln n)`.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for FilterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilterSpec::Polynomial { coefficients } => {
                let cs: Vec<String> = coefficients.iter().map(|c| c.to_string()).collect();
                write!(f, "poly({})", cs.join(";"))
            }
            FilterSpec::Exponential {
                sign,
                sigma,
                log_normalize,
            } => {
                let s = if *sign == Sign::Negative { "-" } else { "" };
                let norm = if *log_normalize { "/ln n" } else { "" };
                write!(f, "exp({s}{sigma}*S{norm})")
            }
            FilterSpec::Resolvent { alpha } => write!(f, "inv(I+{alpha}*S)"),
        }
    }
}

impl Response {
    #[inline]
    pub fn eval(&self, lambda: f64) -> f64 {
        match self {
            Response::Polynomial(c) => c.iter().rev().fold(0.0, |acc, &h| acc * lambda + h),
            Response::Exponential { rate } => (rate * lambda).exp(),
            Response::Resolvent { alpha } => 1.0 / (1.0 + alpha * lambda),
        }
    }

    pub fn derivative(&self, lambda: f64) -> f64 {
        match self {
            Response::Polynomial(c) => c
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (t, &h)| acc * lambda + t as f64 * h),
            Response::Exponential { rate } => rate * (rate * lambda).exp(),
            Response::Resolvent { alpha } => -alpha / (1.0 + alpha * lambda).powi(2),
        }
    }

    /// `sup_{[0, cutoff]} |h|`
    pub fn sup_below(&self, cutoff: f64) -> f64 {
        match self {
            Response::Exponential { rate } if *rate > 0.0 => (rate * cutoff).exp(),
            Response::Exponential { .. } | Response::Resolvent { .. } => 1.0,
            Response::Polynomial(_) => grid_abs_extrema(|x| self.eval(x), 0.0, cutoff).1,
        }
    }

    /// `sup_{[0, cutoff]} |h′|`
    pub fn lipschitz_below(&self, cutoff: f64) -> f64 {
        match self {
            Response::Exponential { rate } if *rate > 0.0 => rate * (rate * cutoff).exp(),
            Response::Exponential { rate } => -rate,
            Response::Resolvent { alpha } => *alpha,
            Response::Polynomial(_) => grid_abs_extrema(|x| self.derivative(x), 0.0, cutoff).1,
        }
    }
}

/// `(min |f|, max |f|)` over an evenly spaced grid on `[a, b]`, endpoints
/// included.
pub(crate) fn grid_abs_extrema(f: impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    grid_abs_extrema_with(f, a, b, GRID_POINTS)
}

pub(crate) fn grid_abs_extrema_with(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    points: usize,
) -> (f64, f64) {
    let last = (points - 1) as f64;
    (0..points)
        .map(|j| {
            if j + 1 == points {
                b
            } else {
                a + (b - a) * (j as f64 / last)
            }
        })
        .map(|x| f(x).abs())
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        })
}

/// `h(λ)` for a graph on `n` nodes.
pub fn response_eval(f: &FilterSpec, lambda: f64, n: usize) -> Result<f64> {
    Ok(f.response(n)?.eval(lambda))
}

/// `H(S) = V h(Λ) Vᵀ`
pub fn apply_filter(f: &FilterSpec, e: &EigenPair, n: usize) -> Result<SymMatrix> {
    let h = f.response(n)?;
    let gains = e.values().mapv(|l| h.eval(l));
    apply_gains(e, gains.view())
}

/// `V diag(gains) Vᵀ`
pub fn apply_gains(e: &EigenPair, gains: ArrayView1<'_, f64>) -> Result<SymMatrix> {
    let v = e.vectors();
    let mut scaled = v.clone();
    for (mut col, &g) in scaled.axis_iter_mut(Axis(1)).zip(gains.iter()) {
        col.mapv_inplace(|x| x * g);
    }
    SymMatrix::from_upper(scaled.dot(&v.t()))
}

/// Literal low-pass ratio over intervals:
/// `max_{[cutoff, lambda_max]} |h| / min_{[0, cutoff]} |h|`.
///
/// For responses decaying on `[0, ∞)` the sup over `[cutoff, ∞)` is taken
/// analytically at the cutoff and `lambda_max` is unused. A ratio above one
/// is returned as is.
pub fn low_pass_ratio(f: &FilterSpec, cutoff: f64, lambda_max: f64, n: usize) -> Result<f64> {
    if !(cutoff > 0.0 && cutoff.is_finite()) {
        return Err(Error::Parameter(format!(
            "cutoff must be > 0, got {cutoff}"
        )));
    }
    if !(lambda_max >= cutoff) {
        return Err(Error::Parameter(format!(
            "lambda_max {lambda_max} is below the cutoff {cutoff}"
        )));
    }
    let h = f.response(n)?;
    let (low_min, high_max) = match &h {
        Response::Exponential { rate } if *rate > 0.0 => (1.0, (rate * lambda_max).exp()),
        Response::Exponential { .. } | Response::Resolvent { .. } => {
            let at = h.eval(cutoff);
            (at, at)
        }
        Response::Polynomial(_) => (
            grid_abs_extrema(|x| h.eval(x), 0.0, cutoff).0,
            grid_abs_extrema(|x| h.eval(x), cutoff, lambda_max).1,
        ),
    };
    if low_min == 0.0 {
        return Err(Error::Degenerate(
            "response vanishes below the cutoff; low-pass ratio undefined".into(),
        ));
    }
    Ok(high_max / low_min)
}

/// Spectrum-evaluated low-pass ratio: the largest `|h|` over the tail
/// frequencies `i > k` of both spectra divided by the smallest `|h|` over
/// the head frequencies `i <= k` of both spectra.
pub fn empirical_ratio(
    f: &FilterSpec,
    lambdas: ArrayView1<'_, f64>,
    lambdas_hat: ArrayView1<'_, f64>,
    k: usize,
    n: usize,
) -> Result<f64> {
    let len = lambdas.len();
    if lambdas_hat.len() != len {
        return Err(Error::DimensionMismatch {
            expected: len,
            found: lambdas_hat.len(),
        });
    }
    if k == 0 || k >= len {
        return Err(Error::Parameter(format!(
            "order k = {k} is outside [1, {}]",
            len.saturating_sub(1)
        )));
    }
    let h = f.response(n)?;
    let abs = |x: &f64| h.eval(*x).abs();
    let head = lambdas
        .iter()
        .take(k)
        .chain(lambdas_hat.iter().take(k))
        .map(abs)
        .fold(f64::INFINITY, f64::min);
    let tail = lambdas
        .iter()
        .skip(k)
        .chain(lambdas_hat.iter().skip(k))
        .map(abs)
        .fold(0.0, f64::max);
    if head == 0.0 {
        return Err(Error::Degenerate(
            "response vanishes on a head frequency; empirical ratio undefined".into(),
        ));
    }
    Ok(tail / head)
}

/// `sup_{λ ∈ [0, cutoff]} |h(λ)|`
pub fn h_max(f: &FilterSpec, cutoff: f64, n: usize) -> Result<f64> {
    check_cutoff(cutoff)?;
    Ok(f.response(n)?.sup_below(cutoff))
}

/// `sup_{λ ∈ [0, cutoff]} |h′(λ)|`, the Lipschitz constant on `[0, cutoff]`.
pub fn lipschitz(f: &FilterSpec, cutoff: f64, n: usize) -> Result<f64> {
    check_cutoff(cutoff)?;
    Ok(f.response(n)?.lipschitz_below(cutoff))
}

fn check_cutoff(cutoff: f64) -> Result<()> {
    if cutoff >= 0.0 && cutoff.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "cutoff must be >= 0, got {cutoff}"
        )))
    }
}

/// All filter constants needed by the bound at one cutoff.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FilterConstants {
    pub cutoff: f64,
    /// Interval ratio; `None` when degenerate.
    pub eta: Option<f64>,
    pub eta_empirical: Option<f64>,
    pub h_max: f64,
    pub lipschitz: f64,
}

impl FilterConstants {
    pub fn compute(
        f: &FilterSpec,
        cutoff: f64,
        lambdas: ArrayView1<'_, f64>,
        lambdas_hat: ArrayView1<'_, f64>,
        k: usize,
        n: usize,
    ) -> Result<Self> {
        let top = lambdas
            .iter()
            .chain(lambdas_hat.iter())
            .fold(cutoff, |m, &x| m.max(x));
        Ok(FilterConstants {
            cutoff,
            eta: low_pass_ratio(f, cutoff, top, n).ok(),
            eta_empirical: empirical_ratio(f, lambdas, lambdas_hat, k, n).ok(),
            h_max: h_max(f, cutoff, n)?,
            lipschitz: lipschitz(f, cutoff, n)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gft, unnormalized_laplacian};
    use crate::random_models::{sample_sbm, SbmParams};
    use crate::spectral::eigh;
    use approx::assert_abs_diff_eq;
    use ndarray::{array, Array1, Array2};

    fn random_graph_eig(n: usize, seed: u64) -> (SymMatrix, EigenPair) {
        let p = SbmParams::new(array![[0.3]], vec![0; n]).unwrap();
        let l = unnormalized_laplacian(&sample_sbm(&p, seed));
        let e = eigh(&l).unwrap();
        (l, e)
    }

    #[test]
    fn response_examples() {
        let f = FilterSpec::low_pass_exp(1.0, false);
        assert_eq!(response_eval(&f, 0.0, 10).unwrap(), 1.0);
        assert_eq!(
            response_eval(&FilterSpec::polynomial([1.0, 1.0]), 2.0, 10).unwrap(),
            3.0
        );
        let r = FilterSpec::Resolvent { alpha: 1.0 };
        assert_eq!(response_eval(&r, 1.0, 10).unwrap(), 0.5);
        let norm = FilterSpec::low_pass_exp(2.0, true);
        let want = (-2.0 * 3.0 / (100f64).ln()).exp();
        assert_abs_diff_eq!(
            response_eval(&norm, 3.0, 100).unwrap(),
            want,
            epsilon = 1e-15
        );
        assert!(response_eval(&norm, 1.0, 1).is_err());
    }

    #[test]
    fn validation() {
        assert!(FilterSpec::polynomial(Vec::<f64>::new())
            .validate()
            .is_err());
        assert!(FilterSpec::low_pass_exp(0.0, false).validate().is_err());
        assert!(FilterSpec::Resolvent { alpha: -1.0 }.validate().is_err());
    }

    #[test]
    fn serde_round_trip_and_unknown_fields() {
        let json = r#"{"kind":"exponential","sign":-1,"sigma":0.1,"log_normalize":true}"#;
        let f: FilterSpec = serde_json::from_str(json).unwrap();
        assert_eq!(f, FilterSpec::low_pass_exp(0.1, true));
        let back: FilterSpec = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
        let poly: FilterSpec =
            serde_json::from_str(r#"{"kind":"polynomial","coefficients":[1,0.5]}"#).unwrap();
        assert_eq!(poly, FilterSpec::polynomial([1.0, 0.5]));
        assert!(
            serde_json::from_str::<FilterSpec>(r#"{"kind":"resolvent","alpha":1,"x":2}"#).is_err()
        );
        assert!(
            serde_json::from_str::<FilterSpec>(r#"{"kind":"exponential","sign":0,"sigma":1}"#)
                .is_err()
        );
    }

    #[test]
    fn apply_constant_and_identity_responses() {
        let (l, e) = random_graph_eig(12, 3);
        let id = apply_filter(&FilterSpec::polynomial([1.0]), &e, 12).unwrap();
        let err = (id.as_array() - &Array2::<f64>::eye(12))
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        assert!(err < 1e-8);
        let s = apply_filter(&FilterSpec::polynomial([0.0, 1.0]), &e, 12).unwrap();
        let err = (s.as_array() - l.as_array())
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        assert!(err < 1e-8);
    }

    #[test]
    fn apply_matches_power_sum() {
        let (l, e) = random_graph_eig(20, 8);
        let h = apply_filter(&FilterSpec::polynomial([1.0, 0.5, 0.25]), &e, 20).unwrap();
        let s = l.as_array();
        let direct = Array2::<f64>::eye(20) + s * 0.5 + s.dot(s) * 0.25;
        let err = (h.as_array() - &direct)
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        assert!(err < 1e-8, "{err}");
    }

    #[test]
    fn composition_is_pointwise_product() {
        let (_, e) = random_graph_eig(15, 4);
        let h = FilterSpec::polynomial([1.0, -0.5]);
        let g = FilterSpec::polynomial([0.5, 0.0, 0.1]);
        let product = FilterSpec::polynomial([0.5, -0.25, 0.1, -0.05]);
        let hg = apply_filter(&g, &e, 15)
            .unwrap()
            .as_array()
            .dot(apply_filter(&h, &e, 15).unwrap().as_array());
        let direct = apply_filter(&product, &e, 15).unwrap();
        let err = (&hg - direct.as_array())
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        assert!(err < 1e-8, "{err}");
    }

    #[test]
    fn gft_of_output_is_scaled_input() {
        let (_, e) = random_graph_eig(10, 6);
        let f = FilterSpec::low_pass_exp(0.3, false);
        let h = apply_filter(&f, &e, 10).unwrap();
        let x = Array1::from_iter((0..10).map(|i| (i as f64).sin()));
        let y = h.matvec(x.as_slice().unwrap()).unwrap();
        let yhat = gft(&e, y.as_slice().unwrap()).unwrap();
        let xhat = gft(&e, x.as_slice().unwrap()).unwrap();
        let resp = f.response(10).unwrap();
        for i in 0..10 {
            assert!((yhat[i] - resp.eval(e.values()[i]) * xhat[i]).abs() < 1e-8);
        }
    }

    #[test]
    fn low_pass_ratio_boundary_cases() {
        let f = FilterSpec::low_pass_exp(1.0, false);
        assert_eq!(low_pass_ratio(&f, 2.0, 10.0, 5).unwrap(), 1.0);
        let r = FilterSpec::Resolvent { alpha: 1.0 };
        assert_eq!(low_pass_ratio(&r, 1.0, 10.0, 5).unwrap(), 1.0);
        let c = FilterSpec::polynomial([3.0]);
        assert_eq!(low_pass_ratio(&c, 1.0, 4.0, 5).unwrap(), 1.0);
        let hp = FilterSpec::high_pass_exp(1.0, false);
        assert_abs_diff_eq!(
            low_pass_ratio(&hp, 1.0, 2.0, 5).unwrap(),
            2f64.exp(),
            epsilon = 1e-12
        );
        let vanishing = FilterSpec::polynomial([0.0, 1.0]);
        assert!(matches!(
            low_pass_ratio(&vanishing, 1.0, 2.0, 5),
            Err(Error::Degenerate(_))
        ));
        assert!(low_pass_ratio(&f, 2.0, 1.0, 5).is_err());
    }

    #[test]
    fn empirical_ratio_examples() {
        let spec = array![0.0, 0.5, 3.0, 3.2];
        let f = FilterSpec::low_pass_exp(1.0, false);
        let eta = empirical_ratio(&f, spec.view(), spec.view(), 2, 4).unwrap();
        assert_abs_diff_eq!(eta, (-2.5f64).exp(), epsilon = 1e-15);
        assert_abs_diff_eq!(eta, 0.082_084_998_623_898_8, epsilon = 1e-12);
        let c = FilterSpec::polynomial([2.0]);
        assert_eq!(
            empirical_ratio(&c, spec.view(), spec.view(), 2, 4).unwrap(),
            1.0
        );
        let hp = FilterSpec::high_pass_exp(1.0, false);
        let eta = empirical_ratio(&hp, spec.view(), spec.view(), 2, 4).unwrap();
        assert_abs_diff_eq!(eta, 3.2f64.exp(), epsilon = 1e-12);
        assert!(empirical_ratio(&f, spec.view(), spec.view(), 4, 4).is_err());
    }

    #[test]
    fn h_max_examples() {
        for sigma in [0.1, 1.0, 7.0] {
            assert_eq!(
                h_max(&FilterSpec::low_pass_exp(sigma, false), 3.0, 5).unwrap(),
                1.0
            );
        }
        assert_eq!(
            h_max(&FilterSpec::Resolvent { alpha: 2.0 }, 3.0, 5).unwrap(),
            1.0
        );
        // |1 − λ| on [0, 2]: interior zero at λ = 1, maxima at both ends
        assert_abs_diff_eq!(
            h_max(&FilterSpec::polynomial([1.0, -1.0]), 2.0, 5).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        let hp = FilterSpec::high_pass_exp(0.5, false);
        assert_abs_diff_eq!(h_max(&hp, 2.0, 5).unwrap(), 1f64.exp(), epsilon = 1e-12);
    }

    #[test]
    fn lipschitz_examples() {
        assert_eq!(
            lipschitz(&FilterSpec::low_pass_exp(2.0, false), 5.0, 5).unwrap(),
            2.0
        );
        assert_eq!(
            lipschitz(&FilterSpec::Resolvent { alpha: 3.0 }, 5.0, 5).unwrap(),
            3.0
        );
        for cutoff in [0.5, 2.0, 9.0] {
            let l = lipschitz(&FilterSpec::polynomial([0.0, 1.0]), cutoff, 5).unwrap();
            assert_abs_diff_eq!(l, 1.0, epsilon = 1e-15);
        }
        let hp = FilterSpec::high_pass_exp(1.0, false);
        assert_abs_diff_eq!(lipschitz(&hp, 1.0, 5).unwrap(), 1f64.exp(), epsilon = 1e-12);
    }

    #[test]
    fn grid_refinement_is_stable() {
        let polys = [
            vec![1.0, -3.0, 2.0, -0.4],
            vec![0.2, 1.0, -1.5, 0.3, 0.01],
            vec![2.0, -0.7],
        ];
        for c in polys {
            let h = Response::Polynomial(c);
            for cutoff in [0.7, 2.0, 5.0] {
                let coarse = grid_abs_extrema(|x| h.eval(x), 0.0, cutoff).1;
                let fine = grid_abs_extrema_with(|x| h.eval(x), 0.0, cutoff, 10 * GRID_POINTS).1;
                assert!((coarse - fine).abs() <= 1e-3 * fine);
                let coarse = grid_abs_extrema(|x| h.derivative(x), 0.0, cutoff).1;
                let fine =
                    grid_abs_extrema_with(|x| h.derivative(x), 0.0, cutoff, 10 * GRID_POINTS).1;
                assert!((coarse - fine).abs() <= 1e-3 * fine);
            }
        }
    }

    #[test]
    fn polynomial_derivative_matches_finite_difference() {
        let h = Response::Polynomial(vec![0.3, -1.0, 0.5, 0.2]);
        for x in [0.0, 0.4, 1.7] {
            let fd = (h.eval(x + 1e-6) - h.eval(x - 1e-6)) / 2e-6;
            assert!((h.derivative(x) - fd).abs() < 1e-6);
        }
    }
}
