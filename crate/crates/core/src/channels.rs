//! Finite-dimensional quantum operations: superoperators, Choi matrices,
//! complete-positivity certification and Kraus extraction.
//!
//! Operators are vectorized column-major, `vec(X)[j * n + i] = X[i][j]`, so
//! the Schrodinger action of Kraus operators `K_c` has superoperator matrix
//! `sum_c conj(K_c) (x) K_c`. The Choi matrix of `Phi` has block `(i, j)`
//! equal to `Phi(E_ij)`, i.e. `choi[(i, b), (j, b')] = Phi(E_ij)[b, b']`.

use num_complex::Complex64;

use crate::cp::KrausMor;
use crate::eigen::{eigh, hermiticity_defect};
use crate::error::{CatError, CatResult};
use crate::mor::{CMor, Mor};
use crate::object::Object;
use crate::scalar::Scalar;

/// Inputs further than this from Hermitian are rejected.
pub const HERMITIAN_TOL: f64 = 1e-9;
/// Eigenvalue cutoff used when extracting Kraus operators.
pub const KRAUS_CUTOFF: f64 = 1e-10;

/// A linear map `M_in -> M_out` acting on column-major vectorized operators.
#[derive(Clone, Debug, PartialEq)]
pub struct Superoperator {
    pub in_dim: usize,
    pub out_dim: usize,
    /// `out_dim^2 x in_dim^2`.
    pub matrix: CMor,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChoiMatrix {
    pub in_dim: usize,
    pub out_dim: usize,
    /// `(in_dim * out_dim)^2`, blocks indexed by the input matrix unit.
    pub matrix: CMor,
}

/// A Kraus form `x -> g^dagger (x (x) id) g` recovered from a Choi matrix.
#[derive(Clone, Debug)]
pub struct DilationResult {
    pub ancilla_dim: usize,
    /// `in -> out (x) ancilla`.
    pub g: CMor,
    /// Slices of `g` along the ancilla basis, each `in -> out`.
    pub kraus_ops: Vec<CMor>,
    /// Max entrywise distance between the rebuilt Choi matrix and the input.
    pub reconstruction_error: f64,
}

impl DilationResult {
    pub fn to_kraus(&self) -> KrausMor<Complex64> {
        KrausMor::new(self.g.clone(), Object::dim(self.g.cod().total() / self.ancilla_dim), Object::dim(self.ancilla_dim))
            .expect("dilation splits as out (x) ancilla")
    }
}

fn unit_matrix(n: usize, i: usize, j: usize) -> CMor {
    Mor::from_fn(Object::dim(n), Object::dim(n), |r, c| {
        if r == i && c == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

fn vec_col_major(x: &CMor) -> Vec<Complex64> {
    let (rows, cols) = (x.rows(), x.cols());
    let mut out = Vec::with_capacity(rows * cols);
    for j in 0..cols {
        for i in 0..rows {
            out.push(x.get(i, j));
        }
    }
    out
}

/// Partial trace over the trailing `ancilla` factor of an operator on
/// `keep (x) ancilla`.
pub fn partial_trace_last(m: &CMor, keep: usize, ancilla: usize) -> CMor {
    Mor::from_fn(Object::dim(keep), Object::dim(keep), |b, b2| {
        (0..ancilla).map(|c| m.get(b * ancilla + c, b2 * ancilla + c)).sum()
    })
}

/// `Tr(x y)`.
pub fn trace_pairing(x: &CMor, y: &CMor) -> Complex64 {
    let n = x.rows();
    let m = x.cols();
    (0..n).flat_map(|i| (0..m).map(move |k| (i, k))).map(|(i, k)| x.get(i, k) * y.get(k, i)).sum()
}

impl Superoperator {
    /// Tabulates a linear map by applying it to every matrix unit.
    pub fn from_map(in_dim: usize, out_dim: usize, map: impl Fn(&CMor) -> CMor) -> Self {
        let mut columns = Vec::with_capacity(in_dim * in_dim);
        for j in 0..in_dim {
            for i in 0..in_dim {
                let y = map(&unit_matrix(in_dim, i, j));
                assert_eq!((y.rows(), y.cols()), (out_dim, out_dim), "map output shape");
                columns.push(vec_col_major(&y));
            }
        }
        let matrix = Mor::from_fn(Object::dim(in_dim * in_dim), Object::dim(out_dim * out_dim), |r, c| columns[c][r]);
        Self { in_dim, out_dim, matrix }
    }

    pub fn apply(&self, x: &CMor) -> CatResult<CMor> {
        if x.rows() != self.in_dim || x.cols() != self.in_dim {
            return Err(CatError::DimensionMismatch(format!(
                "superoperator on {}x{} operators applied to {}x{}",
                self.in_dim,
                self.in_dim,
                x.rows(),
                x.cols()
            )));
        }
        let v = vec_col_major(x);
        let n = self.out_dim;
        Ok(Mor::from_fn(Object::dim(n), Object::dim(n), |i, j| {
            let row = j * n + i;
            (0..v.len()).map(|k| self.matrix.get(row, k) * v[k]).sum()
        }))
    }

    /// `self o inner`.
    pub fn compose(&self, inner: &Superoperator) -> CatResult<Superoperator> {
        Ok(Superoperator {
            in_dim: inner.in_dim,
            out_dim: self.out_dim,
            matrix: self.matrix.compose(&inner.matrix)?,
        })
    }

    pub fn to_choi(&self) -> ChoiMatrix {
        let (ni, no) = (self.in_dim, self.out_dim);
        let obj = Object::dim(ni * no);
        let matrix = Mor::from_fn(obj.clone(), obj, |r, c| {
            let (i, b) = (r / no, r % no);
            let (j, b2) = (c / no, c % no);
            self.matrix.get(b2 * no + b, j * ni + i)
        });
        ChoiMatrix { in_dim: ni, out_dim: no, matrix }
    }
}

impl ChoiMatrix {
    pub fn new(matrix: CMor, in_dim: usize, out_dim: usize) -> CatResult<Self> {
        let n = in_dim * out_dim;
        if matrix.rows() != n || matrix.cols() != n {
            return Err(CatError::ShapeMismatch(format!(
                "Choi matrix for {in_dim} -> {out_dim} must be {n}x{n}, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self { in_dim, out_dim, matrix })
    }

    pub fn to_superoperator(&self) -> Superoperator {
        let (ni, no) = (self.in_dim, self.out_dim);
        let matrix = Mor::from_fn(Object::dim(ni * ni), Object::dim(no * no), |r, c| {
            let (b2, b) = (r / no, r % no);
            let (j, i) = (c / ni, c % ni);
            self.matrix.get(i * no + b, j * no + b2)
        });
        Superoperator { in_dim: ni, out_dim: no, matrix }
    }
}

/// Choi matrix of the Schrodinger map `rho -> Tr_C(f rho f^dagger)`, summed
/// explicitly over the ancilla index.
pub fn choi_of_kraus(k: &KrausMor<Complex64>) -> ChoiMatrix {
    let (ni, no, nc) = (k.input().total(), k.output().total(), k.ancilla().total());
    let obj = Object::dim(ni * no);
    let matrix = Mor::from_fn(obj.clone(), obj, |r, c| {
        let (i, b) = (r / no, r % no);
        let (j, b2) = (c / no, c % no);
        (0..nc).map(|x| k.entry(b, x, i) * k.entry(b2, x, j).conj()).sum()
    });
    ChoiMatrix { in_dim: ni, out_dim: no, matrix }
}

/// Choi matrix of a tensor product of maps from the factors' Choi matrices.
pub fn choi_tensor(c1: &ChoiMatrix, c2: &ChoiMatrix) -> ChoiMatrix {
    let (i1, o1, i2, o2) = (c1.in_dim, c1.out_dim, c2.in_dim, c2.out_dim);
    let (ni, no) = (i1 * i2, o1 * o2);
    let obj = Object::dim(ni * no);
    let matrix = Mor::from_fn(obj.clone(), obj, |r, c| {
        let (i, b) = (r / no, r % no);
        let (j, b2) = (c / no, c % no);
        let (ia, ib, ba, bb) = (i / i2, i % i2, b / o2, b % o2);
        let (ja, jb, b2a, b2b) = (j / i2, j % i2, b2 / o2, b2 % o2);
        c1.matrix.get(ia * o1 + ba, ja * o1 + b2a) * c2.matrix.get(ib * o2 + bb, jb * o2 + b2b)
    });
    ChoiMatrix { in_dim: ni, out_dim: no, matrix }
}

/// Certifies complete positivity. Returns whether the smallest eigenvalue is
/// at least `-tol`, together with that eigenvalue.
pub fn check_cp(c: &ChoiMatrix, tol: f64) -> CatResult<(bool, f64)> {
    let e = eigh(&c.matrix, HERMITIAN_TOL)?;
    let min = e.min_value();
    Ok((min >= -tol, min))
}

/// Kraus form of a completely positive map from its Choi matrix. Eigenpairs
/// with eigenvalue above `tol` each contribute one Kraus operator
/// `K[b, i] = sqrt(lambda) v[(i, b)]`.
pub fn kraus_from_choi(c: &ChoiMatrix, tol: f64) -> CatResult<DilationResult> {
    if hermiticity_defect(&c.matrix) > HERMITIAN_TOL {
        return Err(CatError::NotHermitian(hermiticity_defect(&c.matrix)));
    }
    let e = eigh(&c.matrix, HERMITIAN_TOL)?;
    if e.min_value() < -tol {
        return Err(CatError::NotCompletelyPositive(e.min_value()));
    }
    let (ni, no) = (c.in_dim, c.out_dim);
    let mut kraus_ops: Vec<CMor> = e
        .values
        .iter()
        .zip(&e.vectors)
        .filter(|(&lam, _)| lam > tol)
        .map(|(&lam, v)| {
            let s = lam.sqrt();
            Mor::from_fn(Object::dim(ni), Object::dim(no), |b, i| v[i * no + b] * s)
        })
        .collect();
    if kraus_ops.is_empty() {
        // the zero map still needs a one-dimensional ancilla
        kraus_ops.push(Mor::zero(Object::dim(ni), Object::dim(no)));
    }
    let ancilla_dim = kraus_ops.len();
    let g = Mor::from_fn(Object::dim(ni), Object::new(vec![no, ancilla_dim]), |row, i| {
        kraus_ops[row % ancilla_dim].get(row / ancilla_dim, i)
    });
    let mut result = DilationResult { ancilla_dim, g, kraus_ops, reconstruction_error: 0.0 };
    let rebuilt = choi_of_kraus(&result.to_kraus());
    result.reconstruction_error = rebuilt.matrix.max_dist(&c.matrix)?;
    Ok(result)
}

/// Schrodinger picture `rho -> Tr_C(f rho f^dagger)`.
pub fn schrodinger_of(k: &KrausMor<Complex64>) -> Superoperator {
    let (ni, no, nc) = (k.input().total(), k.output().total(), k.ancilla().total());
    let f = k.kraus();
    Superoperator::from_map(ni, no, |rho| {
        let rho = rho.retype(f.dom().clone(), f.dom().clone()).expect("input shape");
        let full = f.compose(&rho).and_then(|m| m.compose(&f.dagger())).expect("shapes");
        partial_trace_last(&full, no, nc)
    })
}

/// Heisenberg picture `x -> f^dagger (x (x) id_C) f`.
pub fn heisenberg_of(k: &KrausMor<Complex64>) -> Superoperator {
    let (ni, no) = (k.input().total(), k.output().total());
    let f = k.kraus();
    let id_c = CMor::identity(k.ancilla());
    Superoperator::from_map(no, ni, |x| {
        let x = x.retype(k.output().clone(), k.output().clone()).expect("output shape");
        f.dagger().compose(&x.tensor(&id_c)).and_then(|m| m.compose(f)).expect("shapes")
    })
}

/// The transpose map on `n x n` matrices; its Choi matrix is the swap.
pub fn transpose_choi(n: usize) -> ChoiMatrix {
    let obj = Object::dim(n);
    ChoiMatrix { in_dim: n, out_dim: n, matrix: CMor::swap(&obj, &obj).retype(Object::dim(n * n), Object::dim(n * n)).expect("square") }
}

/// Choi matrix of `rho -> Tr(rho) id / n`.
pub fn depolarizing_choi(n: usize) -> ChoiMatrix {
    let obj = Object::dim(n * n);
    let w = Complex64::new(1.0 / n as f64, 0.0);
    ChoiMatrix { in_dim: n, out_dim: n, matrix: CMor::identity(&obj).scale(w) }
}

impl<S: Scalar> Mor<S> {
    /// Splits the rows of `f : A -> B (x) C` into the `C`-indexed slices
    /// `A -> B`.
    pub fn ancilla_slices(&self, out: usize, ancilla: usize) -> Vec<Mor<S>> {
        (0..ancilla)
            .map(|c| Mor::from_fn(self.dom().clone(), Object::dim(out), |b, a| self.get(b * ancilla + c, a)))
            .collect()
    }
}
