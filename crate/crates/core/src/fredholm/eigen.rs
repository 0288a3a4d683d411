//! Dense symmetric eigenvalues: Householder reduction to tridiagonal form
//! followed by implicit-shift QL. Also Sturm-sequence counting on
//! tridiagonal matrices and an LU log-determinant.

use crate::error::{Result, SineGapError};

const MAX_QL_SWEEPS: usize = 60;

/// Dense row-major square matrix; symmetric by contract.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let v = f(i, j);
                m.data[i * n + j] = v;
                m.data[j * n + i] = v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

/// All eigenvalues of a symmetric matrix, in no particular order.
pub fn symmetric_eigenvalues(m: &SymMatrix) -> Result<Vec<f64>> {
    let (diag, off) = tridiagonalize(m);
    tridiagonal_eigenvalues(&diag, &off)
}

/// Householder reduction. Returns the diagonal and the `n − 1`
/// off-diagonal entries of a similar tridiagonal matrix.
pub fn tridiagonalize(m: &SymMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = m.n;
    let mut a = m.data.clone();
    let mut off = vec![0.0; n.saturating_sub(1)];
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let norm = ((k + 1)..n)
            .map(|i| a[i * n + k] * a[i * n + k])
            .sum::<f64>()
            .sqrt();
        if norm == 0.0 {
            off[k] = 0.0;
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        let alpha = if x0 > 0.0 { -norm } else { norm };
        // v = x − αe₁, normalized
        for i in (k + 1)..n {
            v[i] = a[i * n + k];
        }
        v[k + 1] -= alpha;
        let vnorm = ((k + 1)..n).map(|i| v[i] * v[i]).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            off[k] = x0;
            continue;
        }
        for vi in v.iter_mut().take(n).skip(k + 1) {
            *vi /= vnorm;
        }
        // p = A₂₂v, q = p − (vᵀp)v, A₂₂ ← A₂₂ − 2(vqᵀ + qvᵀ)
        for i in (k + 1)..n {
            let row = &a[i * n..(i + 1) * n];
            p[i] = ((k + 1)..n).map(|j| row[j] * v[j]).sum();
        }
        let vp: f64 = ((k + 1)..n).map(|i| v[i] * p[i]).sum();
        for i in (k + 1)..n {
            p[i] -= vp * v[i];
        }
        for i in (k + 1)..n {
            for j in (k + 1)..=i {
                let upd = a[i * n + j] - 2.0 * (v[i] * p[j] + p[i] * v[j]);
                a[i * n + j] = upd;
                a[j * n + i] = upd;
            }
        }
        off[k] = alpha;
    }
    if n >= 2 {
        off[n - 2] = a[(n - 1) * n + (n - 2)];
    }
    let diag = (0..n).map(|i| a[i * n + i]).collect();
    (diag, off)
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (`off.len() == diag.len() − 1`), by implicit QL with
/// Wilkinson-type shifts.
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n.saturating_sub(1)].copy_from_slice(&off[..n.saturating_sub(1)]);
    // absolute deflation floor; clusters of near-zero eigenvalues never
    // satisfy the relative test
    let norm = (0..n)
        .map(|i| d[i].abs() + e[i].abs() + if i > 0 { e[i - 1].abs() } else { 0.0 })
        .fold(0.0, f64::max);
    let floor = f64::EPSILON * norm;
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_QL_SWEEPS {
                return Err(SineGapError::Convergence {
                    func: "tridiagonal_eigenvalues",
                    msg: format!("QL iteration did not converge for eigenvalue {l}"),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(d)
}

/// Number of eigenvalues strictly below `x` (Sturm sequence).
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let e2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = diag[i] - x - if i == 0 { 0.0 } else { e2 / q };
        if q == 0.0 {
            q = f64::EPSILON * (diag[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Eigenvalues of a symmetric tridiagonal matrix lying in `[lo, hi)`,
/// ascending, each located by bisection on the Sturm count.
pub fn tridiagonal_eigenvalues_in(diag: &[f64], off: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let below_lo = sturm_count(diag, off, lo);
    let below_hi = sturm_count(diag, off, hi);
    (below_lo..below_hi)
        .map(|idx| {
            // idx-th eigenvalue (0-based, ascending) lies in [a, b)
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if sturm_count(diag, off, mid) > idx {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// `ln |det M|` and the sign of `det M` by LU with partial pivoting.
pub fn lu_log_det(rows: usize, mut a: Vec<f64>) -> (f64, f64) {
    let n = rows;
    let mut ln_abs = 0.0;
    let mut sign = 1.0;
    for k in 0..n {
        let (piv, max) = (k..n)
            .map(|i| (i, a[i * n + k].abs()))
            .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if max == 0.0 {
            return (f64::NEG_INFINITY, 0.0);
        }
        if piv != k {
            for j in 0..n {
                a.swap(k * n + j, piv * n + j);
            }
            sign = -sign;
        }
        let pivot = a[k * n + k];
        if pivot < 0.0 {
            sign = -sign;
        }
        ln_abs += pivot.abs().ln();
        for i in (k + 1)..n {
            let factor = a[i * n + k] / pivot;
            if factor != 0.0 {
                for j in (k + 1)..n {
                    a[i * n + j] -= factor * a[k * n + j];
                }
            }
        }
    }
    (ln_abs, sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn scaled_identity() {
        let m = SymMatrix::from_fn(7, |i, j| if i == j { 2.5 } else { 0.0 });
        for l in symmetric_eigenvalues(&m).unwrap() {
            assert!((l - 2.5).abs() < 1e-15);
        }
    }

    #[test]
    fn swap_matrix() {
        let m = SymMatrix::from_fn(2, |i, j| if i == j { 0.0 } else { 1.0 });
        let ev = sorted(symmetric_eigenvalues(&m).unwrap());
        assert!((ev[0] + 1.0).abs() < 1e-15 && (ev[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn discrete_laplacian() {
        // tridiag(−1, 2, −1): λ_k = 2 − 2cos(kπ/(n+1))
        let n = 50;
        let ev = sorted(tridiagonal_eigenvalues(&vec![2.0; n], &vec![-1.0; n - 1]).unwrap());
        for (k, l) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((l - exact).abs() < 1e-13);
        }
        assert_eq!(sturm_count(&vec![2.0; n], &vec![-1.0; n - 1], 2.0), n / 2);
        let inside = tridiagonal_eigenvalues_in(&vec![2.0; n], &vec![-1.0; n - 1], 1.05, 1.3);
        let expected: Vec<f64> = ev
            .iter()
            .copied()
            .filter(|&l| (1.05..1.3).contains(&l))
            .collect();
        assert_eq!(inside.len(), expected.len());
        for (a, b) in inside.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn lu_matches_eigenvalue_product() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let n = 30;
        let raw: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let m = SymMatrix::from_fn(n, |i, j| {
            0.1 * (raw[i * n + j] + raw[j * n + i]) + if i == j { 3.0 } else { 0.0 }
        });
        let ev = symmetric_eigenvalues(&m).unwrap();
        let ln_eig: f64 = ev.iter().map(|l| l.abs().ln()).sum();
        let (ln_lu, sign) = lu_log_det(n, m.data.clone());
        assert_eq!(sign, 1.0);
        assert!((ln_eig - ln_lu).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn random_symmetric_trace_and_frobenius(seed in 0u64..1000, n in 2usize..40) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let raw: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let m = SymMatrix::from_fn(n, |i, j| raw[i * n + j]);
            let ev = symmetric_eigenvalues(&m).unwrap();
            let fro: f64 = m.data.iter().map(|x| x * x).sum();
            let sum_sq: f64 = ev.iter().map(|x| x * x).sum();
            prop_assert!((ev.iter().sum::<f64>() - m.trace()).abs() < 1e-12 * n as f64);
            prop_assert!((fro - sum_sq).abs() < 1e-12 * fro.max(1.0));
        }
    }
}
