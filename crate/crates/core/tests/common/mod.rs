//! Reference computations written directly from index formulas on plain
//! nested vectors. They share no code with the library beyond reading
//! matrix entries.

#![allow(dead_code)]

use cpkit::{CMor, KrausMor};
use num_complex::Complex64;

pub type Mat = Vec<Vec<Complex64>>;

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![Complex64::new(0.0, 0.0); c]; r]
}

pub fn mat_of(m: &CMor) -> Mat {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect()).collect()
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    let mut out = zeros(n, m);
    for i in 0..n {
        for j in 0..m {
            for l in 0..k {
                out[i][j] += a[i][l] * b[l][j];
            }
        }
    }
    out
}

pub fn adjoint(a: &Mat) -> Mat {
    let (r, c) = (a.len(), a.first().map_or(0, |x| x.len()));
    let mut out = zeros(c, r);
    for i in 0..r {
        for j in 0..c {
            out[j][i] = a[i][j].conj();
        }
    }
    out
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ar, ac) = (a.len(), a[0].len());
    let (br, bc) = (b.len(), b[0].len());
    let mut out = zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn max_diff(a: &Mat, b: &Mat) -> f64 {
    assert_eq!((a.len(), a[0].len()), (b.len(), b[0].len()), "shape");
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// The operators `K_c : in -> out` of a Kraus morphism, read off entry by
/// entry: `K_c[b][a] = f[(b, c), a]`.
pub fn kraus_ops(k: &KrausMor<Complex64>) -> Vec<Mat> {
    let (na, nb, nc) = (k.input().total(), k.output().total(), k.ancilla().total());
    (0..nc)
        .map(|c| (0..nb).map(|b| (0..na).map(|a| k.kraus().get(b * nc + c, a)).collect()).collect())
        .collect()
}

pub fn apply_channel(ops: &[Mat], x: &Mat) -> Mat {
    let mut out = zeros(ops[0].len(), ops[0].len());
    for k in ops {
        let y = matmul(&matmul(k, x), &adjoint(k));
        for (r, row) in y.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                out[r][c] += v;
            }
        }
    }
    out
}

/// `C[(i, b), (j, b')] = Phi(E_ij)[b][b']` for any linear map `phi`.
pub fn choi_of_map(ni: usize, no: usize, phi: impl Fn(&Mat) -> Mat) -> Mat {
    let mut c = zeros(ni * no, ni * no);
    for i in 0..ni {
        for j in 0..ni {
            let mut e = zeros(ni, ni);
            e[i][j] = Complex64::new(1.0, 0.0);
            let y = phi(&e);
            for b in 0..no {
                for b2 in 0..no {
                    c[i * no + b][j * no + b2] = y[b][b2];
                }
            }
        }
    }
    c
}

pub fn choi_oracle(k: &KrausMor<Complex64>) -> Mat {
    let ops = kraus_ops(k);
    choi_of_map(k.input().total(), k.output().total(), |x| apply_channel(&ops, x))
}

/// `[(a', b'), (a, b)] = sum_c conj(f[(b, c), a']) f[(b', c), a]`.
pub fn cpform_oracle(k: &KrausMor<Complex64>) -> Mat {
    let ops = kraus_ops(k);
    let (na, nb) = (k.input().total(), k.output().total());
    let mut m = zeros(na * nb, na * nb);
    for a2 in 0..na {
        for b2 in 0..nb {
            for a in 0..na {
                for b in 0..nb {
                    m[a2 * nb + b2][a * nb + b] = ops.iter().map(|kc| kc[b][a2].conj() * kc[b2][a]).sum();
                }
            }
        }
    }
    m
}

/// `[(b', b), (a', a)] = sum_c conj(f[(b', c), a']) f[(b, c), a]`.
pub fn cpmform_oracle(k: &KrausMor<Complex64>) -> Mat {
    let ops = kraus_ops(k);
    let (na, nb) = (k.input().total(), k.output().total());
    let mut m = zeros(nb * nb, na * na);
    for b2 in 0..nb {
        for b in 0..nb {
            for a2 in 0..na {
                for a in 0..na {
                    m[b2 * nb + b][a2 * na + a] = ops.iter().map(|kc| kc[b2][a2].conj() * kc[b][a]).sum();
                }
            }
        }
    }
    m
}

/// Whether a Hermitian matrix is positive definite, by attempting a
/// Cholesky factorization.
pub fn cholesky_ok(h: &Mat) -> bool {
    let n = h.len();
    let mut l = zeros(n, n);
    for j in 0..n {
        let d = h[j][j].re - l[j][..j].iter().map(|z| z.norm_sqr()).sum::<f64>();
        if d <= 0.0 || !d.is_finite() {
            return false;
        }
        let d = d.sqrt();
        l[j][j] = Complex64::new(d, 0.0);
        for i in j + 1..n {
            let s: Complex64 = l[i][..j].iter().zip(&l[j][..j]).map(|(x, y)| x * y.conj()).sum();
            l[i][j] = (h[i][j] - s) / d;
        }
    }
    true
}

/// Smallest eigenvalue of a Hermitian matrix by bisection on the shift `t`
/// for which `h - t id` stops being positive definite.
pub fn min_eig_bisect(h: &Mat) -> f64 {
    let n = h.len();
    let bound: f64 = h.iter().map(|r| r.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max) + 1.0;
    let shifted = |t: f64| {
        let mut m = h.clone();
        for (i, row) in m.iter_mut().enumerate().take(n) {
            row[i] -= Complex64::new(t, 0.0);
        }
        cholesky_ok(&m)
    };
    let (mut lo, mut hi) = (-bound, bound);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if shifted(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
