//! Randomized law suite for a dagger symmetric monoidal instance.

use std::fmt;

use rand::Rng;

use crate::error::{CatError, CatResult};
use crate::mor::Mor;
use crate::object::Object;
use crate::sample::Sampler;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Law {
    Associativity,
    LeftUnit,
    RightUnit,
    TensorAssociativity,
    TensorUnit,
    Bifunctoriality,
    DaggerInvolution,
    DaggerAntiHomomorphism,
    DaggerTensor,
    SwapInvolution,
    SwapNaturality,
}

impl Law {
    pub const ALL: [Law; 11] = [
        Law::Associativity,
        Law::LeftUnit,
        Law::RightUnit,
        Law::TensorAssociativity,
        Law::TensorUnit,
        Law::Bifunctoriality,
        Law::DaggerInvolution,
        Law::DaggerAntiHomomorphism,
        Law::DaggerTensor,
        Law::SwapInvolution,
        Law::SwapNaturality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::Associativity => "associativity",
            Law::LeftUnit => "left_unit",
            Law::RightUnit => "right_unit",
            Law::TensorAssociativity => "tensor_associativity",
            Law::TensorUnit => "tensor_unit",
            Law::Bifunctoriality => "bifunctoriality",
            Law::DaggerInvolution => "dagger_involution",
            Law::DaggerAntiHomomorphism => "dagger_anti_homomorphism",
            Law::DaggerTensor => "dagger_tensor",
            Law::SwapInvolution => "swap_involution",
            Law::SwapNaturality => "swap_naturality",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LawReport {
    pub trials: usize,
    pub tol: f64,
    /// Max violation per law, in `Law::ALL` order.
    pub max_violation: Vec<(Law, f64)>,
}

impl LawReport {
    pub fn worst(&self) -> f64 {
        self.max_violation.iter().map(|&(_, v)| v).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.worst() <= self.tol
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (law, v) in &self.max_violation {
            writeln!(f, "{}={:.16e}", law.name(), v)?;
        }
        Ok(())
    }
}

/// Runs every law `trials` times on freshly sampled morphisms and records the
/// worst entrywise deviation of each. Failures are reported, not raised.
pub fn check_laws<S, Sm, R>(sampler: &Sm, rng: &mut R, trials: usize, tol: f64) -> CatResult<LawReport>
where
    S: Scalar,
    Sm: Sampler<S>,
    R: Rng + ?Sized,
{
    if trials == 0 {
        return Err(CatError::InvalidArgument("trials must be at least 1".into()));
    }
    let mut worst = [0.0f64; Law::ALL.len()];
    let mut record = |law: Law, lhs: &Mor<S>, rhs: &Mor<S>| {
        let d = lhs.max_dist(rhs).unwrap_or(f64::INFINITY);
        let slot = &mut worst[law as usize];
        *slot = slot.max(d);
    };

    for _ in 0..trials {
        let objs: Vec<Object> = (0..4).map(|_| sampler.object(rng)).collect();
        let (a, b, c, d) = (&objs[0], &objs[1], &objs[2], &objs[3]);
        let f = sampler.mor(rng, a, b);
        let g = sampler.mor(rng, b, c);
        let h = sampler.mor(rng, c, d);

        let hg_f = h.compose(&g)?.compose(&f)?;
        let h_gf = h.compose(&g.compose(&f)?)?;
        record(Law::Associativity, &hg_f, &h_gf);
        record(Law::LeftUnit, &Mor::identity(b).compose(&f)?, &f);
        record(Law::RightUnit, &f.compose(&Mor::identity(a))?, &f);
        record(
            Law::TensorAssociativity,
            &f.tensor(&g).tensor(&h),
            &f.tensor(&g.tensor(&h)),
        );
        record(Law::TensorUnit, &f.tensor(&Mor::identity(&Object::unit())), &f);
        record(Law::TensorUnit, &Mor::identity(&Object::unit()).tensor(&f), &f);

        // (g (x) h) o (f (x) g') = (g o f) (x) (h o g'), with g' : b -> c
        let g2 = sampler.mor(rng, b, c);
        let lhs = g.tensor(&h).compose(&f.tensor(&g2))?;
        let rhs = g.compose(&f)?.tensor(&h.compose(&g2)?);
        record(Law::Bifunctoriality, &lhs, &rhs);

        record(Law::DaggerInvolution, &f.dagger().dagger(), &f);
        record(
            Law::DaggerAntiHomomorphism,
            &g.compose(&f)?.dagger(),
            &f.dagger().compose(&g.dagger())?,
        );
        record(Law::DaggerTensor, &f.tensor(&g).dagger(), &f.dagger().tensor(&g.dagger()));

        let ab = a.tensor(b);
        record(
            Law::SwapInvolution,
            &Mor::swap(b, a).compose(&Mor::swap(a, b))?,
            &Mor::identity(&ab),
        );
        // swap(b, d) o (f (x) k) = (k (x) f) o swap(a, c), with k : c -> d
        let lhs = Mor::swap(b, d).compose(&f.tensor(&h))?;
        let rhs = h.tensor(&f).compose(&Mor::swap(a, c))?;
        record(Law::SwapNaturality, &lhs, &rhs);
    }

    Ok(LawReport {
        trials,
        tol,
        max_violation: Law::ALL.iter().map(|&l| (l, worst[l as usize])).collect(),
    })
}
