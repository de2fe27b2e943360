//! Dense matrix morphisms of a strict dagger symmetric monoidal category.
//!
//! A `Mor<S>` from `dom` to `cod` stores a row-major `total(cod) x total(dom)`
//! matrix. Tensor words are indexed big-endian: for factors `(d1, .., dk)`
//! the basis vector `e_{i1} (x) .. (x) e_{ik}` has flat index
//! `((i1 * d2 + i2) * d3 + ..) + ik`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{CatError, CatResult};
use crate::object::Object;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Mor<S: Scalar> {
    dom: Object,
    cod: Object,
    entries: Vec<S>,
}

pub type CMor = Mor<Complex64>;
pub type RelMor = Mor<bool>;

impl<S: Scalar> Mor<S> {
    pub fn new(dom: Object, cod: Object, entries: Vec<S>) -> CatResult<Self> {
        let expected = dom.total() * cod.total();
        if entries.len() != expected {
            return Err(CatError::ShapeMismatch(format!(
                "{} entries supplied for a {}x{} matrix",
                entries.len(),
                cod.total(),
                dom.total()
            )));
        }
        Ok(Self { dom, cod, entries })
    }

    /// Builds a morphism entry by entry from `(row, col)`.
    pub fn from_fn(dom: Object, cod: Object, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let (rows, cols) = (cod.total(), dom.total());
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self { dom, cod, entries }
    }

    pub fn zero(dom: Object, cod: Object) -> Self {
        let n = dom.total() * cod.total();
        Self { dom, cod, entries: vec![S::zero(); n] }
    }

    pub fn identity(obj: &Object) -> Self {
        Self::from_fn(obj.clone(), obj.clone(), |r, c| if r == c { S::one() } else { S::zero() })
    }

    /// A 1x1 morphism `I -> I`.
    pub fn scalar(s: S) -> Self {
        Self { dom: Object::unit(), cod: Object::unit(), entries: vec![s] }
    }

    pub fn dom(&self) -> &Object {
        &self.dom
    }

    pub fn cod(&self) -> &Object {
        &self.cod
    }

    pub fn rows(&self) -> usize {
        self.cod.total()
    }

    pub fn cols(&self) -> usize {
        self.dom.total()
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> S {
        self.entries[row * self.cols() + col]
    }

    /// Replaces the factor metadata of both boundaries. Totals must agree.
    pub fn retype(&self, dom: Object, cod: Object) -> CatResult<Self> {
        if !dom.matches(&self.dom) || !cod.matches(&self.cod) {
            return Err(CatError::DimensionMismatch(format!(
                "cannot retype {} -> {} as {} -> {}",
                self.dom, self.cod, dom, cod
            )));
        }
        Ok(Self { dom, cod, entries: self.entries.clone() })
    }

    /// `self ; other` in diagrammatic order is `other.after(self)`; this is
    /// the ordinary `g o f` with `g = self`.
    pub fn compose(&self, f: &Mor<S>) -> CatResult<Self> {
        if !self.dom.matches(&f.cod) {
            return Err(CatError::DimensionMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.dom, self.cod, f.dom, f.cod
            )));
        }
        let (n, m, k) = (self.rows(), f.cols(), self.cols());
        let mut entries = vec![S::zero(); n * m];
        for i in 0..n {
            for l in 0..k {
                let a = self.entries[i * k + l];
                if a.is_zero() {
                    continue;
                }
                let frow = &f.entries[l * m..(l + 1) * m];
                let out = &mut entries[i * m..(i + 1) * m];
                for (o, &b) in out.iter_mut().zip(frow) {
                    *o = o.add(a.mul(b));
                }
            }
        }
        Ok(Self { dom: f.dom.clone(), cod: self.cod.clone(), entries })
    }

    /// Kronecker product, big-endian.
    pub fn tensor(&self, g: &Mor<S>) -> Self {
        let (r1, c1, r2, c2) = (self.rows(), self.cols(), g.rows(), g.cols());
        let cols = c1 * c2;
        let mut entries = vec![S::zero(); r1 * r2 * cols];
        for i1 in 0..r1 {
            for j1 in 0..c1 {
                let a = self.entries[i1 * c1 + j1];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..r2 {
                    let row = i1 * r2 + i2;
                    for j2 in 0..c2 {
                        entries[row * cols + j1 * c2 + j2] = a.mul(g.entries[i2 * c2 + j2]);
                    }
                }
            }
        }
        Self { dom: self.dom.tensor(&g.dom), cod: self.cod.tensor(&g.cod), entries }
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cod.clone(), self.dom.clone(), |r, c| self.get(c, r).conj())
    }

    /// Entrywise conjugation.
    pub fn conj(&self) -> Self {
        Self {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            entries: self.entries.iter().map(|s| s.conj()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cod.clone(), self.dom.clone(), |r, c| self.get(c, r))
    }

    pub fn scale(&self, s: S) -> Self {
        Self {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            entries: self.entries.iter().map(|&e| s.mul(e)).collect(),
        }
    }

    pub fn add(&self, other: &Mor<S>) -> CatResult<Self> {
        self.check_parallel(other)?;
        Ok(Self {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| a.add(b)).collect(),
        })
    }

    /// The symmetry `a (x) b -> b (x) a`.
    pub fn swap(a: &Object, b: &Object) -> Self {
        let mut factors = a.factors().to_vec();
        factors.extend_from_slice(b.factors());
        let na = a.factors().len();
        let nb = b.factors().len();
        let perm: Vec<usize> = (na..na + nb).chain(0..na).collect();
        Self::permute_wires(&factors, &perm)
    }

    /// Wire permutation: output wire `k` carries input wire `perm[k]`.
    ///
    /// Panics if `perm` is not a permutation of `0..factors.len()`.
    pub fn permute_wires(factors: &[usize], perm: &[usize]) -> Self {
        assert_eq!(factors.len(), perm.len(), "permutation length");
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            assert!(p < perm.len() && !seen[p], "not a permutation: {perm:?}");
            seen[p] = true;
        }
        let dom = Object::new(factors.to_vec());
        let cod = Object::new(perm.iter().map(|&p| factors[p]).collect());
        let n = dom.total();
        let mut entries = vec![S::zero(); n * n];
        let mut digits = vec![0usize; factors.len()];
        for col in 0..n {
            let mut rest = col;
            for k in (0..factors.len()).rev() {
                digits[k] = rest % factors[k];
                rest /= factors[k];
            }
            let row = perm.iter().fold(0usize, |acc, &p| acc * factors[p] + digits[p]);
            entries[row * n + col] = S::one();
        }
        Self { dom, cod, entries }
    }

    fn check_parallel(&self, other: &Mor<S>) -> CatResult<()> {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return Err(CatError::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        Ok(())
    }

    /// Max entrywise distance between parallel morphisms.
    pub fn max_dist(&self, other: &Mor<S>) -> CatResult<f64> {
        self.check_parallel(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| a.dist(b))
            .fold(0.0, f64::max))
    }

    /// Parallel and within `tol` entrywise. Shape mismatches compare unequal.
    pub fn approx_eq(&self, other: &Mor<S>, tol: f64) -> bool {
        matches!(self.max_dist(other), Ok(d) if d <= tol)
    }
}

impl CMor {
    pub fn from_real(dom: Object, cod: Object, entries: &[f64]) -> CatResult<Self> {
        Self::new(dom, cod, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn trace(&self) -> Complex64 {
        let n = self.rows().min(self.cols());
        (0..n).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl<S: Scalar> fmt::Debug for Mor<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mor<{}> {} -> {}", S::NAME, self.dom, self.cod)?;
        for r in 0..self.rows() {
            let row: Vec<String> = (0..self.cols()).map(|c| format!("{:?}", self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_cmor(rng: &mut impl Rng, rows: usize, cols: usize) -> CMor {
        Mor::from_fn(Object::dim(cols), Object::dim(rows), |_, _| {
            c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    #[test]
    fn identity_law_and_bit_flip() {
        let flip = CMor::from_real(2.into(), 2.into(), &[0.0, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!(flip.compose(&flip).unwrap(), CMor::identity(&2.into()));
        let id = CMor::identity(&2.into());
        assert_eq!(id.compose(&flip).unwrap(), flip);
    }

    #[test]
    fn compose_matches_triple_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = rand_cmor(&mut rng, 3, 4);
        let f = rand_cmor(&mut rng, 4, 2);
        let gf = g.compose(&f).unwrap();
        for i in 0..3 {
            for j in 0..2 {
                let mut acc = c64(0.0, 0.0);
                for k in 0..4 {
                    acc += g.get(i, k) * f.get(k, j);
                }
                assert!((gf.get(i, j) - acc).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn compose_rejects_mismatch() {
        let a = CMor::identity(&2.into());
        let b = CMor::identity(&3.into());
        assert!(matches!(a.compose(&b), Err(CatError::DimensionMismatch(_))));
    }

    #[test]
    fn tensor_units_and_identities() {
        let id6 = CMor::identity(&Object::new(vec![2, 3]));
        let t = CMor::identity(&2.into()).tensor(&CMor::identity(&3.into()));
        assert_eq!(t, id6);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = rand_cmor(&mut rng, 2, 3);
        assert!(f.tensor(&CMor::identity(&1.into())).approx_eq(&f, 0.0));
    }

    #[test]
    fn tensor_matches_four_index_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = rand_cmor(&mut rng, 2, 2);
        let g = rand_cmor(&mut rng, 2, 2);
        let fg = f.tensor(&g);
        for i1 in 0..2 {
            for i2 in 0..2 {
                for j1 in 0..2 {
                    for j2 in 0..2 {
                        let want = f.get(i1, j1) * g.get(i2, j2);
                        assert!((fg.get(2 * i1 + i2, 2 * j1 + j2) - want).norm() <= 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn dagger_cases() {
        let i = CMor::new(Object::unit(), Object::unit(), vec![c64(0.0, 1.0)]).unwrap();
        assert_eq!(i.dagger().get(0, 0), c64(0.0, -1.0));
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = rand_cmor(&mut rng, 3, 2);
        let d = f.dagger();
        assert_eq!(d.rows(), 2);
        for r in 0..3 {
            for c in 0..2 {
                assert_eq!(d.get(c, r), f.get(r, c).conj());
            }
        }
        assert_eq!(d.dagger(), f);
    }

    #[test]
    fn swap_enumerated() {
        let s = CMor::swap(&2.into(), &2.into());
        // e0e0->e0e0, e0e1->e1e0, e1e0->e0e1, e1e1->e1e1
        let want = [0usize, 2, 1, 3];
        for (col, &row) in want.iter().enumerate() {
            for r in 0..4 {
                let v = if r == row { 1.0 } else { 0.0 };
                assert_eq!(s.get(r, col), c64(v, 0.0));
            }
        }
        let a = Object::new(vec![2, 3]);
        let b = Object::dim(2);
        let back = CMor::swap(&b, &a).compose(&CMor::swap(&a, &b)).unwrap();
        assert_eq!(back, CMor::identity(&a.tensor(&b)));
        assert_eq!(CMor::swap(&Object::unit(), &a), CMor::identity(&a));
    }

    #[test]
    fn boolean_composition() {
        let r = RelMor::new(2.into(), 2.into(), vec![true, true, false, false]).unwrap();
        let s = RelMor::new(2.into(), 2.into(), vec![false, false, true, false]).unwrap();
        let rs = r.compose(&s).unwrap();
        assert_eq!(rs.entries(), &[true, false, false, false]);
    }
}
