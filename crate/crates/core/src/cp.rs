//! The CP construction over a dagger symmetric monoidal instance.
//!
//! A morphism `A -> B` of CP is represented by a Kraus morphism
//! `f : A -> B (x) C` together with its ancilla `C`. Two representatives
//! denote the same morphism exactly when their doubled forms
//! `(f^dagger (x) id_B) o swap13 o (f (x) id_B) : A (x) B -> A (x) B`
//! agree in the base category.

use crate::error::{CatError, CatResult};
use crate::mor::Mor;
use crate::object::Object;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct KrausMor<S: Scalar> {
    kraus: Mor<S>,
    input: Object,
    output: Object,
    ancilla: Object,
}

impl<S: Scalar> KrausMor<S> {
    /// Wraps `f : input -> output (x) ancilla`. The factor metadata of `f` is
    /// replaced by the designated objects.
    pub fn new(f: Mor<S>, output: Object, ancilla: Object) -> CatResult<Self> {
        let input = f.dom().clone();
        let cod = output.tensor(&ancilla);
        if f.cod().total() != cod.total() {
            return Err(CatError::DimensionMismatch(format!(
                "Kraus codomain {} does not split as {} (x) {}",
                f.cod(),
                output,
                ancilla
            )));
        }
        let kraus = f.retype(input.clone(), cod)?;
        Ok(Self { kraus, input, output, ancilla })
    }

    pub fn kraus(&self) -> &Mor<S> {
        &self.kraus
    }

    pub fn input(&self) -> &Object {
        &self.input
    }

    pub fn output(&self) -> &Object {
        &self.output
    }

    pub fn ancilla(&self) -> &Object {
        &self.ancilla
    }

    /// Entry `f[(b, c), a]` of the Kraus matrix.
    #[inline]
    pub fn entry(&self, b: usize, c: usize, a: usize) -> S {
        self.kraus.get(b * self.ancilla.total() + c, a)
    }
}

/// The doubled form of `k`, computed by composing base-category morphisms.
pub fn cpform<S: Scalar>(k: &KrausMor<S>) -> Mor<S> {
    let (b, c) = (k.output(), k.ancilla());
    let id_b = Mor::<S>::identity(b);
    // B (x) C (x) B with the outer B wires exchanged
    let nb = b.factors().len();
    let nc = c.factors().len();
    let mut factors = b.factors().to_vec();
    factors.extend_from_slice(c.factors());
    factors.extend_from_slice(b.factors());
    let perm: Vec<usize> = (nb + nc..2 * nb + nc).chain(nb..nb + nc).chain(0..nb).collect();
    let swap13 = Mor::<S>::permute_wires(&factors, &perm);

    let up = k.kraus().tensor(&id_b);
    let down = k.kraus().dagger().tensor(&id_b);
    down.compose(&swap13)
        .and_then(|m| m.compose(&up))
        .expect("doubled form is well typed by construction")
}

/// The doubled form of `k` from its index formula
/// `cpform[(a', b'), (a, b)] = sum_c conj(f[(b, c), a']) f[(b', c), a]`.
pub fn cpform_by_index<S: Scalar>(k: &KrausMor<S>) -> Mor<S> {
    let obj = k.input().tensor(k.output());
    let nb = k.output().total();
    let nc = k.ancilla().total();
    Mor::from_fn(obj.clone(), obj, |row, col| {
        let (a2, b2) = (row / nb, row % nb);
        let (a, b) = (col / nb, col % nb);
        (0..nc).fold(S::zero(), |acc, c| acc.add(k.entry(b, c, a2).conj().mul(k.entry(b2, c, a))))
    })
}

/// Identity on `a`: Kraus `id_a` with trivial ancilla.
pub fn cp_identity<S: Scalar>(a: &Object) -> KrausMor<S> {
    KrausMor::new(Mor::identity(a), a.clone(), Object::unit()).expect("identity splits")
}

/// Canonical embedding of the base category: Kraus `f` with trivial ancilla.
pub fn pure<S: Scalar>(f: &Mor<S>) -> KrausMor<S> {
    KrausMor::new(f.clone(), f.cod().clone(), Object::unit()).expect("trivial ancilla splits")
}

/// The discarding map `a -> I`, Kraus `id_a` with ancilla `a`.
pub fn discard<S: Scalar>(a: &Object) -> KrausMor<S> {
    KrausMor::new(Mor::identity(a), Object::unit(), a.clone()).expect("discard splits")
}

/// `g o f`. The composite Kraus is `(g (x) id_C) o f` with ancilla `C' (x) C`.
pub fn cp_compose<S: Scalar>(g: &KrausMor<S>, f: &KrausMor<S>) -> CatResult<KrausMor<S>> {
    if !g.input().matches(f.output()) {
        return Err(CatError::DimensionMismatch(format!(
            "CP composite: output {} of inner vs input {} of outer",
            f.output(),
            g.input()
        )));
    }
    let f_typed = f.kraus().retype(f.input().clone(), g.input().tensor(f.ancilla()))?;
    let h = g.kraus().tensor(&Mor::identity(f.ancilla())).compose(&f_typed)?;
    KrausMor::new(h, g.output().clone(), g.ancilla().tensor(f.ancilla()))
}

/// `k1 (x) k2` with Kraus `(id_B1 (x) swap(C1, B2) (x) id_C2) o (f1 (x) f2)`.
pub fn cp_tensor<S: Scalar>(k1: &KrausMor<S>, k2: &KrausMor<S>) -> KrausMor<S> {
    let middle = Mor::<S>::identity(k1.output())
        .tensor(&Mor::swap(k1.ancilla(), k2.output()))
        .tensor(&Mor::identity(k2.ancilla()));
    let h = middle.compose(&k1.kraus().tensor(k2.kraus())).expect("tensor shapes agree");
    KrausMor::new(h, k1.output().tensor(k2.output()), k1.ancilla().tensor(k2.ancilla()))
        .expect("tensor splits")
}

/// Semantic equality: the doubled forms agree within `tol`.
pub fn cp_equal<S: Scalar>(k1: &KrausMor<S>, k2: &KrausMor<S>, tol: f64) -> CatResult<bool> {
    Ok(cp_distance(k1, k2)? <= tol)
}

/// Max entrywise distance between doubled forms.
pub fn cp_distance<S: Scalar>(k1: &KrausMor<S>, k2: &KrausMor<S>) -> CatResult<f64> {
    if !k1.input().matches(k2.input()) || !k1.output().matches(k2.output()) {
        return Err(CatError::ShapeMismatch(format!(
            "{} -> {} vs {} -> {}",
            k1.input(),
            k1.output(),
            k2.input(),
            k2.output()
        )));
    }
    cpform(k1).max_dist(&cpform(k2))
}
