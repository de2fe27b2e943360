//! Dagger compact structure shared by FdHilb and Rel.
//!
//! Every object is self-dual through the standard basis, so the cup on `A`
//! is the unnormalized vector `sum_i e_i (x) e_i : I -> A (x) A` and the cap
//! is its dagger.

use crate::error::{CatError, CatResult};
use crate::mor::{Mor, RelMor};
use crate::object::Object;
use crate::scalar::Scalar;

pub fn cup<S: Scalar>(a: &Object) -> Mor<S> {
    let n = a.total();
    Mor::from_fn(Object::unit(), a.tensor(a), |r, _| if r / n == r % n { S::one() } else { S::zero() })
}

pub fn cap<S: Scalar>(a: &Object) -> Mor<S> {
    cup::<S>(a).dagger()
}

/// Lower-star of `f : A -> C (x) B`: conjugate entrywise, then swap the two
/// codomain blocks, giving `A -> B (x) C`.
pub fn conj_star<S: Scalar>(f: &Mor<S>, c: &Object, b: &Object) -> CatResult<Mor<S>> {
    if c.total() * b.total() != f.cod().total() {
        return Err(CatError::MissingFactorSplit(format!(
            "codomain {} does not split as {} (x) {}",
            f.cod(),
            c,
            b
        )));
    }
    let typed = f.retype(f.dom().clone(), c.tensor(b))?;
    Mor::swap(c, b).compose(&typed.conj())
}

/// Transpose as a categorical operation: `conj(dagger(f))`.
pub fn transpose<S: Scalar>(f: &Mor<S>) -> Mor<S> {
    f.dagger().conj()
}

/// A relation from a `dom_size`-set to a `cod_size`-set holding exactly at
/// the listed `(cod, dom)` pairs.
pub fn rel_mor(dom_size: usize, cod_size: usize, pairs: &[(usize, usize)]) -> CatResult<RelMor> {
    let mut entries = vec![false; dom_size * cod_size];
    for &(r, c) in pairs {
        if r >= cod_size || c >= dom_size {
            return Err(CatError::IndexOutOfRange(format!(
                "pair ({r}, {c}) outside {cod_size}x{dom_size}"
            )));
        }
        entries[r * dom_size + c] = true;
    }
    Mor::new(Object::dim(dom_size), Object::dim(cod_size), entries)
}

/// `(cap (x) id) o (id (x) cup)` and `(id (x) cap) o (cup (x) id)`, each of
/// which should be the identity on `a`.
pub fn snakes<S: Scalar>(a: &Object) -> CatResult<(Mor<S>, Mor<S>)> {
    let id = Mor::<S>::identity(a);
    let left = cap::<S>(a).tensor(&id).compose(&id.tensor(&cup::<S>(a)))?;
    let right = id.tensor(&cap::<S>(a)).compose(&cup::<S>(a).tensor(&id))?;
    Ok((left.retype(a.clone(), a.clone())?, right.retype(a.clone(), a.clone())?))
}

/// Both sides of the sliding identity for `f : a -> b`:
/// `(id_b (x) f) o cup_a` and `(transpose(f) (x) id_a) o cup_b`.
pub fn sliding<S: Scalar>(f: &Mor<S>) -> CatResult<(Mor<S>, Mor<S>)> {
    let (a, b) = (f.dom(), f.cod());
    let lhs = Mor::identity(a).tensor(f).compose(&cup::<S>(a))?;
    let rhs = transpose(f).tensor(&Mor::identity(b)).compose(&cup::<S>(b))?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mor::CMor;
    use crate::sample::random_cmor;
    use crate::scalar::c64;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cup_examples() {
        let c1 = cup::<Complex64>(&Object::dim(1));
        assert_eq!(c1.entries(), &[c64(1.0, 0.0)]);
        let c2 = cup::<Complex64>(&Object::dim(2));
        let want: Vec<_> = [1.0, 0.0, 0.0, 1.0].iter().map(|&x| c64(x, 0.0)).collect();
        assert_eq!(c2.entries(), &want[..]);
        let three = cap::<Complex64>(&Object::dim(3)).compose(&cup(&Object::dim(3))).unwrap();
        assert_eq!(three.entries(), &[c64(3.0, 0.0)]);
    }

    #[test]
    fn snake_identities() {
        for d in 1..=4 {
            let a = Object::dim(d);
            let (l, r) = snakes::<Complex64>(&a).unwrap();
            assert!(l.approx_eq(&CMor::identity(&a), 1e-12));
            assert!(r.approx_eq(&CMor::identity(&a), 1e-12));
            let (l, r) = snakes::<bool>(&a).unwrap();
            assert_eq!(l, RelMor::identity(&a));
            assert_eq!(r, RelMor::identity(&a));
        }
    }

    #[test]
    fn conj_star_scalar_and_real_cases() {
        let f = CMor::new(Object::unit(), Object::dim(1), vec![c64(0.0, 1.0)]).unwrap();
        let s = conj_star(&f, &Object::unit(), &Object::dim(1)).unwrap();
        assert_eq!(s.entries(), &[c64(0.0, -1.0)]);

        let real = CMor::from_real(Object::dim(2), Object::dim(3), &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let s = conj_star(&real, &Object::unit(), &Object::dim(3)).unwrap();
        assert_eq!(s.entries(), real.entries());
    }

    #[test]
    fn conj_star_matches_permutation_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = random_cmor(&mut rng, &Object::dim(2), &Object::new(vec![2, 2]));
        let (c, b) = (Object::dim(2), Object::dim(2));
        let s = conj_star(&f, &c, &b).unwrap();
        for a in 0..2 {
            for ci in 0..2 {
                for bi in 0..2 {
                    // f row (c, b) lands at row (b, c), conjugated
                    assert_eq!(s.get(bi * 2 + ci, a), f.get(ci * 2 + bi, a).conj());
                }
            }
        }
        let back = conj_star(&s, &b, &c).unwrap();
        assert_eq!(back.entries(), f.entries());
    }

    #[test]
    fn conj_star_rejects_bad_split() {
        let f = CMor::identity(&Object::dim(6));
        let r = conj_star(&f, &Object::dim(4), &Object::dim(2));
        assert!(matches!(r, Err(CatError::MissingFactorSplit(_))));
    }

    #[test]
    fn rel_mor_cases() {
        assert_eq!(rel_mor(3, 2, &[]).unwrap(), RelMor::zero(3.into(), 2.into()));
        let diag = rel_mor(3, 3, &[(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(diag, RelMor::identity(&3.into()));
        assert!(matches!(rel_mor(2, 2, &[(2, 0)]), Err(CatError::IndexOutOfRange(_))));
    }

    #[test]
    fn relation_composition_matches_exists_oracle() {
        use crate::sample::{RelSampler, Sampler};
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let s = RelSampler { max_size: 5 };
        for _ in 0..50 {
            let (a, b, c) = (s.object(&mut rng), s.object(&mut rng), s.object(&mut rng));
            let r = s.mor(&mut rng, &a, &b);
            let q = s.mor(&mut rng, &b, &c);
            let qr = q.compose(&r).unwrap();
            for z in 0..c.total() {
                for x in 0..a.total() {
                    let exists = (0..b.total()).any(|y| r.get(y, x) && q.get(z, y));
                    assert_eq!(qr.get(z, x), exists);
                }
            }
        }
    }

    #[test]
    fn sliding_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for da in 1..=3 {
            for db in 1..=3 {
                let f = random_cmor(&mut rng, &Object::dim(da), &Object::dim(db));
                let (l, r) = sliding(&f).unwrap();
                assert!(l.approx_eq(&r, 1e-9));
            }
        }
    }
}
