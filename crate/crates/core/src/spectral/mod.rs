//! Symmetric eigendecomposition and the spectral comparison quantities
//! used by the stability bound.

mod tridiagonal;

use ndarray::{s, Array1, Array2, ArrayView1, ArrayView2, Axis};

use crate::error::{Error, Result};
use crate::graph::SymMatrix;

/// Ascending eigenvalues and the matching orthonormal eigenvectors (as
/// columns) of a symmetric matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair {
    values: Array1<f64>,
    vectors: Array2<f64>,
}

impl EigenPair {
    pub fn new(values: Array1<f64>, vectors: Array2<f64>) -> Result<Self> {
        let n = values.len();
        if vectors.dim() != (n, n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: vectors.ncols(),
            });
        }
        if values.windows(2).into_iter().any(|w| w[0] > w[1]) {
            return Err(Error::Validation("eigenvalues must be ascending".into()));
        }
        Ok(EigenPair { values, vectors })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &Array1<f64> {
        &self.values
    }

    pub fn vectors(&self) -> &Array2<f64> {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> ArrayView1<'_, f64> {
        self.vectors.column(i)
    }

    /// The `k` smallest eigenvalues and their eigenvectors.
    pub fn head(&self, k: usize) -> (ArrayView1<'_, f64>, ArrayView2<'_, f64>) {
        (self.values.slice(s![..k]), self.vectors.slice(s![.., ..k]))
    }

    pub fn largest(&self) -> f64 {
        self.values[self.dim() - 1]
    }
}

fn sort_ascending(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    order
}

/// Full eigendecomposition of a symmetric matrix.
///
/// Householder tridiagonalization followed by implicit-shift QL, with
/// eigenvectors accumulated in the tridiagonal basis and mapped back by a
/// blocked application of the reflectors. Deterministic for a fixed input.
pub fn eigh(s: &SymMatrix) -> Result<EigenPair> {
    let n = s.dim();
    let mut a: Vec<f64> = s.as_array().iter().copied().collect();
    let mut tri = tridiagonal::tridiagonalize(&mut a, n, true);
    drop(a);

    let mut zt = tridiagonal::Panels::identity(n);
    tridiagonal::tridiagonal_ql(&mut tri.diag, &mut tri.off, Some(&mut zt))?;

    let order = sort_ascending(&tri.diag);
    let values = Array1::from_iter(order.iter().map(|&i| tri.diag[i]));
    // Column c of Z is row order[c] of zt.
    let mut z = Array2::<f64>::zeros((n, n));
    for (c, &r) in order.iter().enumerate() {
        for i in 0..n {
            z[[i, c]] = zt.at(r, i);
        }
    }
    drop(zt);
    tridiagonal::apply_reflectors(&tri.reflectors, &mut z);
    Ok(EigenPair { values, vectors: z })
}

/// Eigenvalues only, ascending.
pub fn eigvalsh(s: &SymMatrix) -> Result<Array1<f64>> {
    let n = s.dim();
    let mut a: Vec<f64> = s.as_array().iter().copied().collect();
    let mut tri = tridiagonal::tridiagonalize(&mut a, n, false);
    tridiagonal::tridiagonal_ql(&mut tri.diag, &mut tri.off, None)?;
    let order = sort_ascending(&tri.diag);
    Ok(Array1::from_iter(order.iter().map(|&i| tri.diag[i])))
}

/// Flips each eigenvector so its largest-magnitude entry is positive.
/// Entries within `1e-12` of the maximum magnitude count as tied and the
/// smallest index wins.
pub fn canonical_signs(e: &EigenPair) -> EigenPair {
    let mut vectors = e.vectors.clone();
    for mut col in vectors.axis_iter_mut(Axis(1)) {
        let max = col.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if let Some(&lead) = col.iter().find(|x| x.abs() >= max - 1e-12) {
            if lead < 0.0 {
                col.mapv_inplace(|x| -x);
            }
        }
    }
    EigenPair {
        values: e.values.clone(),
        vectors,
    }
}

/// Returns `vhat` with column `i` multiplied by `sign(v_iᵀ vhat_i)` (`+1`
/// on a zero dot product), the diagonal sign choice closest to `v` in
/// Frobenius norm.
pub fn align_signs(v: ArrayView2<'_, f64>, vhat: ArrayView2<'_, f64>) -> Result<Array2<f64>> {
    if v.dim() != vhat.dim() {
        return Err(Error::DimensionMismatch {
            expected: v.ncols(),
            found: vhat.ncols(),
        });
    }
    let mut out = vhat.to_owned();
    for (a, mut b) in v.axis_iter(Axis(1)).zip(out.axis_iter_mut(Axis(1))) {
        if a.dot(&b) < 0.0 {
            b.mapv_inplace(|x| -x);
        }
    }
    Ok(out)
}

/// Spectral norm of a symmetric matrix: its largest absolute eigenvalue.
pub fn spectral_norm(m: &SymMatrix) -> Result<f64> {
    if m.dim() == 0 {
        return Ok(0.0);
    }
    let ev = eigvalsh(m)?;
    Ok(ev[0].abs().max(ev[ev.len() - 1].abs()))
}

/// Largest singular value of a general matrix, via the smaller Gram
/// matrix.
pub fn operator_norm(m: ArrayView2<'_, f64>) -> Result<f64> {
    let (r, c) = m.dim();
    if r == 0 || c == 0 {
        return Ok(0.0);
    }
    let gram = if c <= r { m.t().dot(&m) } else { m.dot(&m.t()) };
    let gram = SymMatrix::from_upper(gram)?;
    let top = eigvalsh(&gram)?;
    Ok(top[top.len() - 1].max(0.0).sqrt())
}

/// How eigenvector signs are reconciled before comparing bases.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SignAlignment {
    /// Greedy per-column alignment.
    #[default]
    Aligned,
    /// Compare the eigensolver's representatives as returned.
    Raw,
}

/// Drift of the bottom-`k` spectral components between two operators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StructuralTerms {
    pub k: usize,
    /// `max_{i<k} |λ_i − λ̂_i|`
    pub eig_drift: f64,
    /// `‖V_k − V̂_k‖₂`
    pub vec_drift: f64,
    /// `‖V_k V_kᵀ − V̂_k V̂_kᵀ‖₂`, independent of the basis chosen.
    pub proj_drift: f64,
}

pub fn structural_terms(e: &EigenPair, ehat: &EigenPair, k: usize) -> Result<StructuralTerms> {
    structural_terms_with(e, ehat, k, SignAlignment::Aligned)
}

pub fn structural_terms_with(
    e: &EigenPair,
    ehat: &EigenPair,
    k: usize,
    alignment: SignAlignment,
) -> Result<StructuralTerms> {
    let n = e.dim();
    if ehat.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: ehat.dim(),
        });
    }
    if k == 0 || k > n {
        return Err(Error::Parameter(format!(
            "order k = {k} is outside [1, {n}]"
        )));
    }
    let (lam, v) = e.head(k);
    let (lam_hat, v_hat) = ehat.head(k);
    let eig_drift = lam
        .iter()
        .zip(lam_hat.iter())
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));

    let v_hat = match alignment {
        SignAlignment::Aligned => align_signs(v, v_hat)?,
        SignAlignment::Raw => v_hat.to_owned(),
    };
    let vec_drift = operator_norm((&v - &v_hat).view())?;

    // ‖(I − V Vᵀ) V̂‖₂ = sin of the largest principal angle = ‖P − P̂‖₂.
    let overlap = v.t().dot(&v_hat);
    let residual = &v_hat - &v.dot(&overlap);
    let proj_drift = operator_norm(residual.view())?;

    Ok(StructuralTerms {
        k,
        eig_drift,
        vec_drift,
        proj_drift,
    })
}

/// Admissible common cutoffs `λ̄` with `λ_k ≤ λ̄ ≤ λ_{k+1}` for both spectra.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapInterval {
    pub lower: f64,
    pub upper: f64,
}

impl GapInterval {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// `[max(λ_k, λ̂_k), min(λ_{k+1}, λ̂_{k+1})]` with `k` counted from one.
pub fn spectral_gap_interval(
    lambdas: ArrayView1<'_, f64>,
    lambdas_hat: ArrayView1<'_, f64>,
    k: usize,
) -> Result<GapInterval> {
    let n = lambdas.len();
    if lambdas_hat.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: lambdas_hat.len(),
        });
    }
    if k == 0 || k >= n {
        return Err(Error::Parameter(format!(
            "order k = {k} is outside [1, {}]",
            n.saturating_sub(1)
        )));
    }
    let lower = lambdas[k - 1].max(lambdas_hat[k - 1]);
    let upper = lambdas[k].min(lambdas_hat[k]);
    if lower > upper {
        return Err(Error::GapViolation { k, lower, upper });
    }
    Ok(GapInterval { lower, upper })
}

#[cfg(test)]
mod tests;
