//! Dense symmetric eigensolver kernels: Householder reduction to
//! tridiagonal form, implicit-shift QL iteration, and a blocked
//! back-transformation of the eigenvectors.
//!
//! Matrices are row-major `n × n` slices. All reductions use a fixed
//! accumulation order so results do not depend on the target's vector
//! width.

use ndarray::{s, Array2};

use crate::error::{Error, Result};

/// Column strip width used when replaying plane rotations.
const ROTATION_STRIP: usize = 64;
/// Number of Householder reflectors grouped into one compact-WY block.
const REFLECTOR_BLOCK: usize = 64;

pub(super) struct Reflector {
    /// First row the reflector acts on.
    start: usize,
    v: Vec<f64>,
    beta: f64,
}

pub(super) struct Tridiagonal {
    pub diag: Vec<f64>,
    /// `off[i] = T[i][i + 1]`; `off[n - 1] = 0`.
    pub off: Vec<f64>,
    pub reflectors: Vec<Reflector>,
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = [0.0f64; 4];
    let ca = a.chunks_exact(4);
    let cb = b.chunks_exact(4);
    let (ra, rb) = (ca.remainder(), cb.remainder());
    for (x, y) in ca.zip(cb) {
        acc[0] += x[0] * y[0];
        acc[1] += x[1] * y[1];
        acc[2] += x[2] * y[2];
        acc[3] += x[3] * y[3];
    }
    let mut tail = 0.0;
    for (x, y) in ra.iter().zip(rb) {
        tail += x * y;
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

fn norm2(x: &[f64]) -> f64 {
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let ss: f64 = x.iter().map(|v| (v / scale) * (v / scale)).sum();
    scale * ss.sqrt()
}

/// `row -= vi * w + wi * v`
#[inline(always)]
fn rank2_row(row: &mut [f64], v: &[f64], w: &[f64], vi: f64, wi: f64) {
    for ((r, &vj), &wj) in row.iter_mut().zip(v).zip(w) {
        *r -= vi * wj + wi * vj;
    }
}

/// Reduces the symmetric matrix in `a` to tridiagonal form `Qᵀ A Q`.
/// `a` is overwritten. With `keep_reflectors` the Householder vectors
/// defining `Q` are returned for the back-transformation.
pub(super) fn tridiagonalize(a: &mut [f64], n: usize, keep_reflectors: bool) -> Tridiagonal {
    assert_eq!(a.len(), n * n);
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    let mut reflectors = Vec::new();
    // Rank-2 update from the previous step, indexed relative to row `k`.
    let mut pending: Option<(Vec<f64>, Vec<f64>)> = None;

    for k in 0..n {
        if let Some((v, w)) = &pending {
            let row = &mut a[k * n + k..(k + 1) * n];
            rank2_row(row, v, w, v[0], w[0]);
        }
        diag[k] = a[k * n + k];
        if k + 1 == n {
            break;
        }
        let x = a[k * n + k + 1..(k + 1) * n].to_vec();
        let tail_zero = x[1..].iter().all(|&t| t == 0.0);

        let reflector = if tail_zero {
            off[k] = x[0];
            None
        } else {
            let norm = norm2(&x);
            let alpha = if x[0] >= 0.0 { -norm } else { norm };
            let mut v = x;
            v[0] -= alpha;
            let beta = 2.0 / dot(&v, &v);
            off[k] = alpha;
            Some((v, beta))
        };

        let m = n - k - 1;
        let mut p = vec![0.0; m];
        for (li, i) in ((k + 1)..n).enumerate() {
            let row = &mut a[i * n + k + 1..(i + 1) * n];
            if let Some((pv, pw)) = &pending {
                let o = li + 1;
                rank2_row(row, &pv[1..], &pw[1..], pv[o], pw[o]);
            }
            if let Some((v, beta)) = &reflector {
                p[li] = beta * dot(row, v);
            }
        }

        pending = reflector.map(|(v, beta)| {
            let kk = 0.5 * beta * dot(&p, &v);
            let w: Vec<f64> = p.iter().zip(&v).map(|(pi, vi)| pi - kk * vi).collect();
            if keep_reflectors {
                reflectors.push(Reflector {
                    start: k + 1,
                    v: v.clone(),
                    beta,
                });
            }
            (v, w)
        });
    }
    Tridiagonal {
        diag,
        off,
        reflectors,
    }
}

#[inline(always)]
fn rotate_pair(x: &mut [f64], y: &mut [f64], c: f64, s: f64) {
    for (xi, yi) in x.iter_mut().zip(y.iter_mut()) {
        let h = *yi;
        *yi = s * *xi + c * h;
        *xi = c * *xi - s * h;
    }
}

/// Row-major `n × n` matrix stored as vertical panels of
/// [`ROTATION_STRIP`] columns, each panel contiguous, so a sequence of
/// adjacent-row rotations walks memory linearly.
pub(super) struct Panels {
    n: usize,
    data: Vec<f64>,
}

impl Panels {
    pub fn identity(n: usize) -> Self {
        let mut p = Panels {
            n,
            data: vec![0.0; n * n],
        };
        for i in 0..n {
            *p.at_mut(i, i) = 1.0;
        }
        p
    }

    #[inline]
    fn locate(&self, row: usize, col: usize) -> usize {
        let panel = col / ROTATION_STRIP;
        let c0 = panel * ROTATION_STRIP;
        let width = ROTATION_STRIP.min(self.n - c0);
        c0 * self.n + row * width + (col - c0)
    }

    #[inline]
    pub fn at(&self, row: usize, col: usize) -> f64 {
        self.data[self.locate(row, col)]
    }

    #[inline]
    fn at_mut(&mut self, row: usize, col: usize) -> &mut f64 {
        let idx = self.locate(row, col);
        &mut self.data[idx]
    }
}

/// Replays rotations `rots[j]` acting on rows `(top - j, top - j + 1)`.
#[inline(always)]
fn replay_rotations_generic(z: &mut Panels, top: usize, rots: &[(f64, f64)]) {
    let n = z.n;
    let mut c0 = 0;
    while c0 < n {
        let width = ROTATION_STRIP.min(n - c0);
        let panel = &mut z.data[c0 * n..(c0 + width) * n];
        for (j, &(c, s)) in rots.iter().enumerate() {
            let i = top - j;
            let (upper, lower) = panel.split_at_mut((i + 1) * width);
            rotate_pair(&mut upper[i * width..], &mut lower[..width], c, s);
        }
        c0 += width;
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn replay_rotations_avx2(z: &mut Panels, top: usize, rots: &[(f64, f64)]) {
    replay_rotations_generic(z, top, rots)
}

fn replay_rotations(z: &mut Panels, top: usize, rots: &[(f64, f64)]) {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("avx2") {
            // SAFETY: the CPU supports AVX2. No FMA is enabled, so the
            // rounding of every lane matches the scalar path.
            unsafe { replay_rotations_avx2(z, top, rots) };
            return;
        }
    }
    replay_rotations_generic(z, top, rots)
}

/// Implicit-shift QL iteration on the tridiagonal `(d, e)`. On return `d`
/// holds the eigenvalues (unsorted). When `zt` is given, its rows are
/// rotated along, so starting from the identity row `i` ends up as the
/// eigenvector of `d[i]` in the tridiagonal basis.
pub(super) fn tridiagonal_ql(
    d: &mut [f64],
    e: &mut [f64],
    mut zt: Option<&mut Panels>,
) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    let eps = f64::EPSILON;
    let cap = 30 * n;
    let mut iterations = 0;
    let mut f = 0.0;
    let mut tst1 = 0.0f64;
    let mut rots: Vec<(f64, f64)> = Vec::with_capacity(n);

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            loop {
                iterations += 1;
                if iterations > cap {
                    return Err(Error::NoConvergence {
                        iterations,
                        residual: e[l].abs(),
                    });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in &mut d[l + 2..] {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let (mut c, mut c2, mut c3) = (1.0, 1.0, 1.0);
                let el1 = e[l + 1];
                let (mut s, mut s2) = (0.0, 0.0);
                rots.clear();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    rots.push((c, s));
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if let Some(z) = zt.as_deref_mut() {
                    replay_rotations(z, m - 1, &rots);
                }
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Overwrites `z` (rows indexed like the original matrix) with `Q z`,
/// where `Q = H_0 H_1 ⋯` is the product of the reduction's reflectors.
pub(super) fn apply_reflectors(reflectors: &[Reflector], z: &mut Array2<f64>) {
    let n = z.nrows();
    let groups: Vec<&[Reflector]> = reflectors.chunks(REFLECTOR_BLOCK).collect();
    for group in groups.into_iter().rev() {
        let s0 = group[0].start;
        let m = n - s0;
        let b = group.len();
        let mut y = Array2::<f64>::zeros((m, b));
        for (c, r) in group.iter().enumerate() {
            let off = r.start - s0;
            for (i, &vi) in r.v.iter().enumerate() {
                y[[off + i, c]] = vi;
            }
        }
        // Forward compact-WY factor: H_0 ⋯ H_{b-1} = I − Y T Yᵀ.
        let mut t = Array2::<f64>::zeros((b, b));
        for c in 0..b {
            let beta = group[c].beta;
            t[[c, c]] = beta;
            if c > 0 {
                let yc = y.column(c);
                let zc = y.slice(s![.., ..c]).t().dot(&yc);
                let tc = t.slice(s![..c, ..c]).dot(&zc);
                for i in 0..c {
                    t[[i, c]] = -beta * tc[i];
                }
            }
        }
        let mut sub = z.slice_mut(s![s0.., ..]);
        let w = y.t().dot(&sub);
        let w = t.dot(&w);
        ndarray::linalg::general_mat_mul(-1.0, &y, &w, 1.0, &mut sub);
    }
}
