//! Cyclic Jacobi eigensolver for small dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a[p][q]` with a
//! diagonal unitary and then applies an ordinary real Jacobi rotation, so the
//! accumulated transformation stays unitary.

use num_complex::Complex64;

use crate::error::{CatError, CatResult};
use crate::mor::CMor;

const MAX_SWEEPS: usize = 100;

#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<Complex64>>,
}

impl HermitianEigen {
    pub fn min_value(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// Max over pairs of `|| M v - lambda v ||_2`.
    pub fn max_residual(&self, m: &CMor) -> f64 {
        let n = m.rows();
        self.values
            .iter()
            .zip(&self.vectors)
            .map(|(&lam, v)| {
                (0..n)
                    .map(|i| {
                        let mv: Complex64 = (0..n).map(|j| m.get(i, j) * v[j]).sum();
                        (mv - v[i] * lam).norm_sqr()
                    })
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }
}

/// Max entrywise deviation of `m` from its conjugate transpose.
pub fn hermiticity_defect(m: &CMor) -> f64 {
    if m.rows() != m.cols() {
        return f64::INFINITY;
    }
    m.max_dist(&m.dagger()).unwrap_or(f64::INFINITY)
}

/// Eigendecomposition of a Hermitian matrix. Inputs further than `herm_tol`
/// from Hermitian are rejected; the Hermitian part is used otherwise.
pub fn eigh(m: &CMor, herm_tol: f64) -> CatResult<HermitianEigen> {
    let defect = hermiticity_defect(m);
    if defect > herm_tol {
        return Err(CatError::NotHermitian(defect));
    }
    let n = m.rows();
    let mut a: Vec<Vec<Complex64>> =
        (0..n).map(|i| (0..n).map(|j| (m.get(i, j) + m.get(j, i).conj()) * 0.5).collect()).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }).collect())
        .collect();

    let scale = a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].re.total_cmp(&a[j][j].re));
    let values = order.iter().map(|&k| a[k][k].re).collect();
    let vectors = order.iter().map(|&k| (0..n).map(|i| v[i][k]).collect()).collect();
    Ok(HermitianEigen { values, vectors })
}

#[allow(clippy::needless_range_loop)]
fn rotate(a: &mut [Vec<Complex64>], v: &mut [Vec<Complex64>], p: usize, q: usize) {
    let apq = a[p][q];
    let mag = apq.norm();
    if mag < 1e-300 {
        return;
    }
    // U = [[c, s], [-s d, c d]] on (p, q) with d = conj(apq) / |apq|
    let d = apq.conj() / mag;
    let theta = (a[q][q].re - a[p][p].re) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let (u_pp, u_pq, u_qp, u_qq) = (Complex64::new(c, 0.0), Complex64::new(s, 0.0), d * (-s), d * c);
    let n = a.len();

    // A <- A U (columns p, q)
    for row in a.iter_mut() {
        let (x, y) = (row[p], row[q]);
        row[p] = x * u_pp + y * u_qp;
        row[q] = x * u_pq + y * u_qq;
    }
    // A <- U^dagger A (rows p, q)
    for j in 0..n {
        let (x, y) = (a[p][j], a[q][j]);
        a[p][j] = u_pp.conj() * x + u_qp.conj() * y;
        a[q][j] = u_pq.conj() * x + u_qq.conj() * y;
    }
    a[p][q] = Complex64::new(0.0, 0.0);
    a[q][p] = Complex64::new(0.0, 0.0);
    a[p][p].im = 0.0;
    a[q][q].im = 0.0;
    for row in v.iter_mut() {
        let (x, y) = (row[p], row[q]);
        row[p] = x * u_pp + y * u_qp;
        row[q] = x * u_pq + y * u_qq;
    }
}
