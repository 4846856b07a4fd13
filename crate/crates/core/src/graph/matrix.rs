use ndarray::{Array1, Array2, ArrayView2};

use crate::error::{Error, Result};

/// Dense real symmetric matrix.
///
/// Every constructor produces an exactly symmetric array: entries are
/// either written in mirrored pairs or copied from the upper triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix(Array2<f64>);

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix(Array2::zeros((n, n)))
    }

    pub fn identity(n: usize) -> Self {
        SymMatrix(Array2::eye(n))
    }

    /// Builds a matrix by evaluating `f(i, j)` for `i <= j` and mirroring.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut a = Array2::zeros((n, n));
        for i in 0..n {
            for j in i..n {
                let x = f(i, j);
                a[[i, j]] = x;
                a[[j, i]] = x;
            }
        }
        SymMatrix(a)
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut a = Array2::zeros((diag.len(), diag.len()));
        for (i, &d) in diag.iter().enumerate() {
            a[[i, i]] = d;
        }
        SymMatrix(a)
    }

    /// Accepts a square array only if it is exactly symmetric.
    pub fn try_from_array(a: Array2<f64>) -> Result<Self> {
        let (r, c) = a.dim();
        if r != c {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: c,
            });
        }
        for i in 0..r {
            for j in (i + 1)..r {
                if a[[i, j]] != a[[j, i]] {
                    return Err(Error::Validation(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(SymMatrix(a))
    }

    /// Keeps the upper triangle of a square array and mirrors it below the
    /// diagonal. Used for products that are symmetric only up to rounding.
    pub fn from_upper(mut a: Array2<f64>) -> Result<Self> {
        let (r, c) = a.dim();
        if r != c {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: c,
            });
        }
        for i in 0..r {
            for j in (i + 1)..r {
                a[[j, i]] = a[[i, j]];
            }
        }
        Ok(SymMatrix(a))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[[i, j]]
    }

    /// Writes `x` at `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.0[[i, j]] = x;
        self.0[[j, i]] = x;
    }

    pub fn view(&self) -> ArrayView2<'_, f64> {
        self.0.view()
    }

    pub fn as_array(&self) -> &Array2<f64> {
        &self.0
    }

    pub fn into_array(self) -> Array2<f64> {
        self.0
    }

    pub fn diagonal(&self) -> Array1<f64> {
        self.0.diag().to_owned()
    }

    pub fn sub(&self, other: &SymMatrix) -> Result<SymMatrix> {
        check_dim(self.dim(), other.dim())?;
        Ok(SymMatrix(&self.0 - &other.0))
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Array1<f64>> {
        check_dim(self.dim(), x.len())?;
        Ok(self.0.dot(&ndarray::ArrayView1::from(x)))
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// Conjugation `P M Pᵀ` by the permutation matrix sending node `i` to
    /// `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<SymMatrix> {
        check_dim(self.dim(), perm.len())?;
        let n = self.dim();
        let mut a = Array2::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                a[[perm[i], perm[j]]] = self.0[[i, j]];
            }
        }
        Ok(SymMatrix(a))
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
