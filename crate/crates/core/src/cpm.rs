//! The CPM construction over the compact instances.
//!
//! A CPM morphism `A -> B` is realized as a matrix `A (x) A -> B (x) B`
//! whose left wire carries the conjugated copy:
//! `cpmform[(b', b), (a', a)] = sum_c conj(f[(b', c), a']) f[(b, c), a]`.
//! Representatives are the same `KrausMor`s used by the CP construction.
//! Both instances here are compact, which is encoded by the trait bound.

use crate::compact::{conj_star, cup};
use crate::cp::{cp_compose, cp_tensor, KrausMor};
use crate::error::CatResult;
use crate::mor::Mor;
use crate::object::Object;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct CpmMor<S: Scalar> {
    kraus: KrausMor<S>,
    realized: Mor<S>,
}

impl<S: Scalar> CpmMor<S> {
    pub fn new(kraus: KrausMor<S>) -> Self {
        let realized = cpmform(&kraus);
        Self { kraus, realized }
    }

    pub fn identity(a: &Object) -> Self {
        Self::new(crate::cp::cp_identity(a))
    }

    pub fn kraus(&self) -> &KrausMor<S> {
        &self.kraus
    }

    pub fn realized(&self) -> &Mor<S> {
        &self.realized
    }

    pub fn approx_eq(&self, other: &CpmMor<S>, tol: f64) -> bool {
        self.realized.approx_eq(&other.realized, tol)
    }
}

/// `(id_B (x) cap_C (x) id_B) o (f_* (x) f)` where `f` is first re-split as
/// `A -> C (x) B` so that its lower star lands in `B (x) C`.
pub fn cpmform<S: Scalar>(k: &KrausMor<S>) -> Mor<S> {
    let (b, c) = (k.output(), k.ancilla());
    let ancilla_first = Mor::swap(b, c).compose(k.kraus()).expect("Kraus codomain is B (x) C");
    let star = conj_star(&ancilla_first, c, b).expect("split supplied");
    let id_b = Mor::<S>::identity(b);
    let contract = id_b.tensor(&cup::<S>(c).dagger()).tensor(&id_b);
    contract
        .compose(&star.tensor(&ancilla_first))
        .expect("doubled wires line up")
}

pub fn cpm_compose<S: Scalar>(g: &CpmMor<S>, f: &CpmMor<S>) -> CatResult<CpmMor<S>> {
    let kraus = cp_compose(&g.kraus, &f.kraus)?;
    let realized = g.realized.compose(&f.realized)?;
    Ok(CpmMor { kraus, realized })
}

/// Tensor of doubled morphisms. The realized matrix is the Kronecker product
/// with the wires reordered from `(A1, A1, A2, A2)` to `(A1, A2, A1, A2)`.
pub fn cpm_tensor<S: Scalar>(f: &CpmMor<S>, g: &CpmMor<S>) -> CpmMor<S> {
    let kraus = cp_tensor(&f.kraus, &g.kraus);
    let realized = interleave(&f.realized.tensor(&g.realized), f.kraus(), g.kraus());
    CpmMor { kraus, realized }
}

fn interleave<S: Scalar>(m: &Mor<S>, k1: &KrausMor<S>, k2: &KrausMor<S>) -> Mor<S> {
    let order = [0usize, 2, 1, 3];
    let ins = [k1.input().total(), k1.input().total(), k2.input().total(), k2.input().total()];
    let outs = [k1.output().total(), k1.output().total(), k2.output().total(), k2.output().total()];
    let p_in = Mor::<S>::permute_wires(&ins, &order);
    let p_out = Mor::<S>::permute_wires(&outs, &order);
    p_out
        .compose(m)
        .and_then(|x| x.compose(&p_in.dagger()))
        .expect("interleaving permutations fit")
}

/// Dagger on representatives: `(f^dagger (x) id_C) o (id_B (x) cup_C)`.
pub fn cpm_dagger<S: Scalar>(k: &KrausMor<S>) -> KrausMor<S> {
    let (b, c) = (k.output(), k.ancilla());
    let bent = Mor::<S>::identity(b).tensor(&cup::<S>(c));
    let g = k
        .kraus()
        .dagger()
        .tensor(&Mor::identity(c))
        .compose(&bent)
        .expect("B (x) C (x) C matches");
    KrausMor::new(g, k.input().clone(), c.clone()).expect("A (x) C splits")
}

/// The isomorphism CPM -> CP acts as the identity on representatives.
pub fn cpm_to_cp<S: Scalar>(k: &KrausMor<S>) -> KrausMor<S> {
    k.clone()
}

pub fn cp_to_cpm<S: Scalar>(k: &KrausMor<S>) -> KrausMor<S> {
    k.clone()
}

/// Rebuilds the CP doubled form from the CPM realized matrix of the same
/// representative: `cpform[(a', b'), (a, b)] = cpmform[(b, b'), (a', a)]`.
pub fn cpform_from_cpmform<S: Scalar>(cpm: &Mor<S>, input: &Object, output: &Object) -> Mor<S> {
    let (na, nb) = (input.total(), output.total());
    let obj = input.tensor(output);
    Mor::from_fn(obj.clone(), obj, |row, col| {
        let (a2, b2) = (row / nb, row % nb);
        let (a, b) = (col / nb, col % nb);
        cpm.get(b * nb + b2, a2 * na + a)
    })
}

/// Inverse re-indexing of [`cpform_from_cpmform`].
pub fn cpmform_from_cpform<S: Scalar>(cp: &Mor<S>, input: &Object, output: &Object) -> Mor<S> {
    let (na, nb) = (input.total(), output.total());
    Mor::from_fn(input.tensor(input), output.tensor(output), |row, col| {
        let (b, b2) = (row / nb, row % nb);
        let (a2, a) = (col / na, col % na);
        cp.get(a2 * nb + b2, a * nb + b)
    })
}
