//! Seeded random morphisms for the law suites and axiom checkers.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::cp::KrausMor;
use crate::mor::{CMor, Mor, RelMor};
use crate::object::Object;
use crate::scalar::Scalar;

/// Draws random objects and morphisms of one instance.
pub trait Sampler<S: Scalar> {
    /// An object with one factor and a dimension in `1..=max_dim`.
    fn object<R: Rng + ?Sized>(&self, rng: &mut R) -> Object;
    fn mor<R: Rng + ?Sized>(&self, rng: &mut R, dom: &Object, cod: &Object) -> Mor<S>;
    /// An invertible morphism with a dagger inverse: a unitary in FdHilb, a
    /// permutation in Rel.
    fn unitary<R: Rng + ?Sized>(&self, rng: &mut R, obj: &Object) -> Mor<S>;
    /// `e^{i theta} f` where the semiring has phases; `f` itself otherwise.
    fn rephase(&self, f: &Mor<S>, theta: f64) -> Mor<S>;
}

/// Complex matrices with real and imaginary parts uniform in [-1, 1].
#[derive(Clone, Copy, Debug)]
pub struct HilbSampler {
    pub max_dim: usize,
}

/// Boolean matrices with independent fair-coin entries.
#[derive(Clone, Copy, Debug)]
pub struct RelSampler {
    pub max_size: usize,
}

impl Sampler<Complex64> for HilbSampler {
    fn object<R: Rng + ?Sized>(&self, rng: &mut R) -> Object {
        Object::dim(rng.gen_range(1..=self.max_dim))
    }

    fn mor<R: Rng + ?Sized>(&self, rng: &mut R, dom: &Object, cod: &Object) -> CMor {
        random_cmor(rng, dom, cod)
    }

    fn unitary<R: Rng + ?Sized>(&self, rng: &mut R, obj: &Object) -> CMor {
        random_unitary(rng, obj)
    }

    fn rephase(&self, f: &CMor, theta: f64) -> CMor {
        f.scale(Complex64::from_polar(1.0, theta))
    }
}

impl Sampler<bool> for RelSampler {
    fn object<R: Rng + ?Sized>(&self, rng: &mut R) -> Object {
        Object::dim(rng.gen_range(1..=self.max_size))
    }

    fn mor<R: Rng + ?Sized>(&self, rng: &mut R, dom: &Object, cod: &Object) -> RelMor {
        Mor::from_fn(dom.clone(), cod.clone(), |_, _| rng.gen_bool(0.5))
    }

    fn unitary<R: Rng + ?Sized>(&self, rng: &mut R, obj: &Object) -> RelMor {
        let mut perm: Vec<usize> = (0..obj.total()).collect();
        perm.shuffle(rng);
        Mor::from_fn(obj.clone(), obj.clone(), |r, c| perm[c] == r)
    }

    fn rephase(&self, f: &RelMor, _theta: f64) -> RelMor {
        f.clone()
    }
}

/// A random Kraus representative `input -> output (x) ancilla` with all
/// three objects drawn from the sampler.
pub fn random_kraus<S: Scalar, Sm: Sampler<S>, R: Rng + ?Sized>(sampler: &Sm, rng: &mut R) -> KrausMor<S> {
    let (a, b, c) = (sampler.object(rng), sampler.object(rng), sampler.object(rng));
    random_kraus_between(sampler, rng, &a, &b, &c)
}

pub fn random_kraus_between<S: Scalar, Sm: Sampler<S>, R: Rng + ?Sized>(
    sampler: &Sm,
    rng: &mut R,
    input: &Object,
    output: &Object,
    ancilla: &Object,
) -> KrausMor<S> {
    let f = sampler.mor(rng, input, &output.tensor(ancilla));
    KrausMor::new(f, output.clone(), ancilla.clone()).expect("sampled Kraus splits")
}

pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
}

pub fn random_cmor<R: Rng + ?Sized>(rng: &mut R, dom: &Object, cod: &Object) -> CMor {
    Mor::from_fn(dom.clone(), cod.clone(), |_, _| random_complex(rng))
}

/// Orthonormalizes the columns of a random `rows x cols` matrix
/// (`cols <= rows`) by modified Gram-Schmidt. The result `v` satisfies
/// `v^dagger v = id`.
pub fn random_isometry<R: Rng + ?Sized>(rng: &mut R, dom: &Object, cod: &Object) -> CMor {
    let (rows, cols) = (cod.total(), dom.total());
    assert!(cols <= rows, "an isometry needs dom <= cod");
    loop {
        let mut columns: Vec<Vec<Complex64>> =
            (0..cols).map(|_| (0..rows).map(|_| random_complex(rng)).collect()).collect();
        if gram_schmidt(&mut columns) {
            return Mor::from_fn(dom.clone(), cod.clone(), |r, c| columns[c][r]);
        }
    }
}

pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, obj: &Object) -> CMor {
    random_isometry(rng, obj, obj)
}

/// Returns false if a column became numerically dependent.
fn gram_schmidt(columns: &mut [Vec<Complex64>]) -> bool {
    for j in 0..columns.len() {
        let (done, rest) = columns.split_at_mut(j);
        let v = &mut rest[0];
        // two passes keep the result orthogonal to machine precision
        for _ in 0..2 {
            for u in done.iter() {
                let proj: Complex64 = u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
                for (x, a) in v.iter_mut().zip(u) {
                    *x -= proj * a;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return false;
        }
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn isometries_are_isometric() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (d, c) in [(1, 1), (2, 3), (3, 3), (2, 6)] {
            let v = random_isometry(&mut rng, &Object::dim(d), &Object::dim(c));
            let vv = v.dagger().compose(&v).unwrap();
            assert!(vv.approx_eq(&CMor::identity(&Object::dim(d)), 1e-12));
        }
    }

    #[test]
    fn rel_unitaries_are_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let s = RelSampler { max_size: 5 };
        let p = s.unitary(&mut rng, &Object::dim(5));
        let pp = p.dagger().compose(&p).unwrap();
        assert_eq!(pp, RelMor::identity(&Object::dim(5)));
    }
}
