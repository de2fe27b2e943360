//! Checkers for environment structures, the doubling axiom and
//! preparation-state agreement, plus numerical replays of the rewrite steps
//! relating them.
//!
//! Universally quantified statements are checked on concrete inputs or on
//! seeded samples. A report that holds means "holds on N samples", nothing
//! stronger.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;

use crate::channels::{choi_of_kraus, kraus_from_choi, ChoiMatrix, KRAUS_CUTOFF};
use crate::compact::cup;
use crate::cp::{cp_compose, cp_distance, cp_identity, cp_tensor, cpform, pure, KrausMor};
use crate::cpm::{cpm_compose, cpm_dagger, CpmMor};
use crate::error::{CatError, CatResult};
use crate::mor::Mor;
use crate::object::Object;
use crate::sample::{random_kraus, random_kraus_between, Sampler};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    /// A supplied input violates the axiom.
    Fails,
    /// A sampling run found a violating input.
    Counterexample,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Counterexample => "counterexample",
        }
    }
}

/// Two matrices that should have been equal (or unequal) together with
/// their recorded distance.
#[derive(Clone, Debug)]
pub struct Witness<S: Scalar> {
    pub label: String,
    pub lhs: Mor<S>,
    pub rhs: Mor<S>,
    pub deviation: f64,
}

impl<S: Scalar> Witness<S> {
    fn new(label: impl Into<String>, lhs: Mor<S>, rhs: Mor<S>) -> Self {
        let deviation = lhs.max_dist(&rhs).unwrap_or(f64::INFINITY);
        Self { label: label.into(), lhs, rhs, deviation }
    }

    /// Recomputes the distance from the stored matrices.
    pub fn reverify(&self) -> bool {
        self.lhs.max_dist(&self.rhs).map(|d| d == self.deviation).unwrap_or(false)
    }
}

#[derive(Clone, Debug)]
pub struct AxiomReport<S: Scalar> {
    pub axiom: String,
    pub status: Status,
    pub samples: usize,
    /// Largest deviation among comparisons that were expected to be equalities.
    pub max_deviation: f64,
    pub witness: Option<Witness<S>>,
}

impl<S: Scalar> AxiomReport<S> {
    fn start(axiom: &str) -> Self {
        Self { axiom: axiom.to_string(), status: Status::Holds, samples: 0, max_deviation: 0.0, witness: None }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    fn fail(&mut self, status: Status, witness: Witness<S>) {
        if self.status == Status::Holds {
            self.status = status;
            self.witness = Some(witness);
        }
    }

    fn observe(&mut self, d: f64) {
        self.max_deviation = self.max_deviation.max(d);
    }

    /// Folds another report on the same axiom into this one.
    fn absorb(&mut self, other: AxiomReport<S>, status: Status) {
        self.samples += other.samples;
        self.observe(other.max_deviation);
        if other.status != Status::Holds {
            if let Some(w) = other.witness {
                self.fail(status, w);
            }
        }
    }

    pub fn summary(&self) -> String {
        match self.status {
            Status::Holds => format!("holds on {} samples", self.samples),
            s => format!("{} after {} samples", s.as_str(), self.samples),
        }
    }
}

impl<S: Scalar> fmt::Display for AxiomReport<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "axiom={}", self.axiom)?;
        writeln!(f, "status={}", self.status.as_str())?;
        writeln!(f, "samples={}", self.samples)?;
        writeln!(f, "max_deviation={:.16e}", self.max_deviation)?;
        if let Some(w) = &self.witness {
            writeln!(f, "witness={}", w.label)?;
            writeln!(f, "witness_deviation={:.16e}", w.deviation)?;
        }
        write!(f, "summary={}", self.summary())
    }
}

/// An environment structure on CP of an instance: `discard(A)` is the CP
/// morphism `A -> I` with Kraus `scale * id_A` and ancilla `A`. The
/// canonical structure has scale one.
#[derive(Clone, Copy, Debug)]
pub struct EnvStructure<S: Scalar> {
    pub scale: S,
}

impl<S: Scalar> Default for EnvStructure<S> {
    fn default() -> Self {
        Self { scale: S::one() }
    }
}

impl<S: Scalar> EnvStructure<S> {
    pub fn canonical() -> Self {
        Self::default()
    }

    /// A deliberately wrong structure for exercising failure paths.
    pub fn corrupted(scale: S) -> Self {
        Self { scale }
    }

    pub fn discard(&self, a: &Object) -> KrausMor<S> {
        KrausMor::new(Mor::identity(a).scale(self.scale), Object::unit(), a.clone()).expect("discard splits")
    }

    /// `xi(k) = (id_B (x) discard_C) o pure(f)` for `k` with Kraus `f`.
    pub fn xi(&self, k: &KrausMor<S>) -> KrausMor<S> {
        let drop_ancilla = cp_tensor(&cp_identity(k.output()), &self.discard(k.ancilla()));
        cp_compose(&drop_ancilla, &pure(k.kraus())).expect("Kraus codomain is B (x) C")
    }
}

/// Axiom (a): `discard(I) = id_I` and `discard(A) (x) discard(B) = discard(A (x) B)`.
pub fn check_env_a<S: Scalar>(env: &EnvStructure<S>, objects: &[Object], tol: f64) -> AxiomReport<S> {
    let mut report = AxiomReport::start("env-a");
    let unit = Object::unit();
    let lhs = cpform(&env.discard(&unit));
    let rhs = cpform(&cp_identity::<S>(&unit));
    let w = Witness::new("discard(I) vs id(I)", lhs, rhs);
    report.samples += 1;
    report.observe(w.deviation);
    if w.deviation > tol {
        report.fail(Status::Fails, w);
    }
    for a in objects {
        for b in objects {
            let lhs = cpform(&cp_tensor(&env.discard(a), &env.discard(b)));
            let rhs = cpform(&env.discard(&a.tensor(b)));
            let w = Witness::new(format!("discard({a}) (x) discard({b}) vs discard({a}*{b})"), lhs, rhs);
            report.samples += 1;
            report.observe(w.deviation);
            if w.deviation > tol {
                report.fail(Status::Fails, w);
            }
        }
    }
    report
}

/// Axiom (b) on one pair `f, g : A -> C (x) B`: the doubled forms agree in
/// the base category iff the discarded lifts agree in CP.
pub fn check_env_b_pair<S: Scalar>(
    env: &EnvStructure<S>,
    f: &Mor<S>,
    g: &Mor<S>,
    ancilla: &Object,
    output: &Object,
    tol: f64,
) -> CatResult<AxiomReport<S>> {
    let cod = ancilla.tensor(output);
    if !f.dom().matches(g.dom()) || !f.cod().matches(&cod) || !g.cod().matches(&cod) {
        return Err(CatError::DimensionMismatch(format!(
            "axiom (b) needs f, g : A -> {cod}, got {} -> {} and {} -> {}",
            f.dom(),
            f.cod(),
            g.dom(),
            g.cod()
        )));
    }
    let f = f.retype(f.dom().clone(), cod.clone())?;
    let g = g.retype(f.dom().clone(), cod.clone())?;

    // base category: doubled forms with C as ancilla, output first
    let to_kraus = |h: &Mor<S>| -> CatResult<KrausMor<S>> {
        KrausMor::new(Mor::swap(ancilla, output).compose(h)?, output.clone(), ancilla.clone())
    };
    let doubled = Witness::new("doubled forms of f and g", cpform(&to_kraus(&f)?), cpform(&to_kraus(&g)?));

    // CP: (discard_C (x) id_B) o pure(h)
    let lift = |h: &Mor<S>| -> CatResult<KrausMor<S>> {
        let drop = cp_tensor(&env.discard(ancilla), &cp_identity(output));
        cp_compose(&drop, &pure(h))
    };
    let (lf, lg) = (lift(&f)?, lift(&g)?);
    let discarded = Witness::new("discarded lifts of f and g", cpform(&lf), cpform(&lg));

    let mut report = AxiomReport::start("env-b");
    report.samples = 1;
    let left = doubled.deviation <= tol;
    let right = discarded.deviation <= tol;
    if left {
        report.observe(doubled.deviation);
    }
    if right {
        report.observe(discarded.deviation);
    }
    if left != right {
        report.fail(Status::Fails, if left { discarded } else { doubled });
    }
    Ok(report)
}

/// Axiom (c) for one CP morphism: a Kraus witness is extracted from the Choi
/// matrix of `k` and its discarded lift is compared with `k`.
pub fn check_env_c(env: &EnvStructure<Complex64>, k: &KrausMor<Complex64>, tol: f64) -> CatResult<AxiomReport<Complex64>> {
    let witness = env_c_witness(&choi_of_kraus(k), k.output())?;
    let lifted = env.xi(&witness);
    let mut report = AxiomReport::start("env-c");
    report.samples = 1;
    let w = Witness::new("extracted witness vs input", cpform(&lifted), cpform(k));
    report.observe(w.deviation);
    if w.deviation > tol {
        report.fail(Status::Fails, w);
    }
    Ok(report)
}

/// The Kraus witness for a Choi matrix; fails on maps that are not
/// completely positive.
pub fn env_c_witness(choi: &ChoiMatrix, output: &Object) -> CatResult<KrausMor<Complex64>> {
    let d = kraus_from_choi(choi, KRAUS_CUTOFF)?;
    let g = d.g.retype(Object::dim(choi.in_dim), output.tensor(&Object::dim(d.ancilla_dim)))?;
    KrausMor::new(g, output.clone(), Object::dim(d.ancilla_dim))
}

/// Doubling in CP on one pair: `f (x) f = g (x) g` iff `f = g`.
pub fn check_doubling_pair<S: Scalar>(f: &KrausMor<S>, g: &KrausMor<S>, tol: f64) -> CatResult<AxiomReport<S>> {
    cp_distance(f, g)?;
    let single = Witness::new("f vs g", cpform(f), cpform(g));
    let squares = Witness::new("f (x) f vs g (x) g", cpform(&cp_tensor(f, f)), cpform(&cp_tensor(g, g)));
    Ok(biconditional("doubling", squares, single, tol))
}

/// Doubling in the base category itself, where it can fail.
pub fn check_doubling_base<S: Scalar>(f: &Mor<S>, g: &Mor<S>, tol: f64) -> CatResult<AxiomReport<S>> {
    f.max_dist(g)?;
    let single = Witness::new("f vs g", f.clone(), g.clone());
    let squares = Witness::new("f (x) f vs g (x) g", f.tensor(f), g.tensor(g));
    Ok(biconditional("doubling-base", squares, single, tol))
}

fn biconditional<S: Scalar>(axiom: &str, lhs: Witness<S>, rhs: Witness<S>, tol: f64) -> AxiomReport<S> {
    let mut report = AxiomReport::start(axiom);
    report.samples = 1;
    let (l, r) = (lhs.deviation <= tol, rhs.deviation <= tol);
    if l {
        report.observe(lhs.deviation);
    }
    if r {
        report.observe(rhs.deviation);
    }
    if l != r {
        report.fail(Status::Fails, if l { rhs } else { lhs });
    }
    report
}

fn implication<S: Scalar>(axiom: &str, antecedent: Witness<S>, consequent: Witness<S>, tol: f64) -> AxiomReport<S> {
    let mut report = AxiomReport::start(axiom);
    report.samples = 1;
    if antecedent.deviation <= tol {
        report.observe(antecedent.deviation);
        if consequent.deviation > tol {
            report.fail(Status::Fails, consequent);
        } else {
            report.observe(consequent.deviation);
        }
    }
    report
}

/// Preparation-state agreement in CPM on one pair of states:
/// `phi o phi^dagger = psi o psi^dagger` implies `phi = psi`.
pub fn check_prep_state_pair<S: Scalar>(phi: &CpmMor<S>, psi: &CpmMor<S>, tol: f64) -> CatResult<AxiomReport<S>> {
    for m in [phi, psi] {
        if !m.kraus().input().is_unit() {
            return Err(CatError::DomainNotUnit(m.kraus().input().to_string()));
        }
    }
    let (p, q) = (phi.realized(), psi.realized());
    let ant = Witness::new("phi phi^dagger vs psi psi^dagger", p.compose(&p.dagger())?, q.compose(&q.dagger())?);
    let cons = Witness::new("phi vs psi", p.clone(), q.clone());
    Ok(implication("prep-state", ant, cons, tol))
}

/// Preparation-state agreement in the base category, where it can fail.
pub fn check_prep_state_base<S: Scalar>(f: &Mor<S>, g: &Mor<S>, tol: f64) -> CatResult<AxiomReport<S>> {
    for m in [f, g] {
        if !m.dom().is_unit() {
            return Err(CatError::DomainNotUnit(m.dom().to_string()));
        }
    }
    let ant = Witness::new("f f^dagger vs g g^dagger", f.compose(&f.dagger())?, g.compose(&g.dagger())?);
    let cons = Witness::new("f vs g", f.clone(), g.clone());
    Ok(implication("prep-state-base", ant, cons, tol))
}

/// The CPM state `(h_* (x) h) o cup_A` of `h : A -> X`, i.e. Kraus
/// `(h (x) id_A) o cup_A : I -> X (x) A`.
pub fn bent_state<S: Scalar>(h: &Mor<S>) -> CpmMor<S> {
    let a = h.dom();
    let k = h.tensor(&Mor::identity(a)).compose(&cup::<S>(a)).expect("cup fits");
    CpmMor::new(KrausMor::new(k, h.cod().clone(), a.clone()).expect("X (x) A splits"))
}

/// Rewrites `M[(x1', x1), (x2', x2)]` into `P[(x1, x2'), (x1', x2)]`.
fn unbend<S: Scalar>(m: &Mor<S>, x: &Object) -> Mor<S> {
    let n = x.total();
    let xx = x.tensor(x);
    Mor::from_fn(xx.clone(), xx, |row, col| {
        let (x1, x2p) = (row / n, row % n);
        let (x1p, x2) = (col / n, col % n);
        m.get(x1p * n + x1, x2p * n + x2)
    })
}

/// Replays the graphical steps showing that doubling in a compact category
/// gives preparation-state agreement in its CPM category. For each of `f`
/// and `g` (common domain `A`, common codomain `X`) two identities are
/// checked:
///
/// * `bent-double`: the CPM composite `rho o rho^dagger` of the state
///   `rho = (h_* (x) h) o cup_A`, with wires re-bent, equals
///   `(h h^dagger) (x) (h h^dagger)`;
/// * `cup-bending`: `rho = (id_X (x) h h^dagger) o cup_X`.
///
/// The two equivalences these identities induce on the pair are checked as
/// well.
pub fn replay_proposition_steps<S: Scalar>(f: &Mor<S>, g: &Mor<S>, tol: f64) -> CatResult<AxiomReport<S>> {
    if !f.dom().matches(g.dom()) || !f.cod().matches(g.cod()) {
        return Err(CatError::DimensionMismatch(format!(
            "replay needs parallel morphisms, got {} -> {} and {} -> {}",
            f.dom(),
            f.cod(),
            g.dom(),
            g.cod()
        )));
    }
    let mut report = AxiomReport::start("proposition-replay");
    let x = f.cod().clone();
    let mut sides = Vec::new();
    for (name, h) in [("f", f), ("g", g)] {
        let rho = bent_state(h);
        let rho_rho = cpm_compose(&rho, &CpmMor::new(cpm_dagger(rho.kraus())))?;
        let hh = h.compose(&h.dagger())?;
        let four = hh.tensor(&hh);
        let step1 = Witness::new(format!("bent-double({name})"), unbend(rho_rho.realized(), &x), four.clone());
        let bent = Mor::identity(&x).tensor(&hh).compose(&cup::<S>(&x))?;
        let step2 = Witness::new(format!("cup-bending({name})"), rho.realized().clone(), bent);
        for step in [step1, step2] {
            report.samples += 1;
            report.observe(step.deviation);
            if step.deviation > tol {
                report.fail(Status::Fails, step);
            }
        }
        sides.push((rho_rho.realized().clone(), four, hh, rho.realized().clone()));
    }
    let (f_side, g_side) = (&sides[0], &sides[1]);
    let pairs = [
        ("rho rho^dagger", &f_side.0, &g_side.0, "four-fold doubles", &f_side.1, &g_side.1),
        ("h h^dagger", &f_side.2, &g_side.2, "CPM states", &f_side.3, &g_side.3),
    ];
    for (ln, lf, lg, rn, rf, rg) in pairs {
        let lhs = Witness::new(format!("{ln} of f vs g"), lf.clone(), lg.clone());
        let rhs = Witness::new(format!("{rn} of f vs g"), rf.clone(), rg.clone());
        if (lhs.deviation <= tol) != (rhs.deviation <= tol) {
            report.fail(Status::Fails, if lhs.deviation <= tol { rhs } else { lhs });
        }
    }
    Ok(report)
}

/// Functor laws for `xi : CP -> CP` built from the environment structure:
/// `xi(k) = k`, `xi(id) = id`, `xi(g o f) = xi(g) o xi(f)` and
/// `xi(f (x) h) = xi(f) (x) xi(h)`, each up to CP equality.
pub fn check_xi_laws<S: Scalar>(
    env: &EnvStructure<S>,
    f: &KrausMor<S>,
    g: &KrausMor<S>,
    h: &KrausMor<S>,
    tol: f64,
) -> CatResult<AxiomReport<S>> {
    let mut report = AxiomReport::start("xi");
    let checks = [
        Witness::new("xi(f) vs f", cpform(&env.xi(f)), cpform(f)),
        Witness::new(
            "xi(id) vs id",
            cpform(&env.xi(&cp_identity(f.input()))),
            cpform(&cp_identity::<S>(f.input())),
        ),
        Witness::new(
            "xi(g o f) vs xi(g) o xi(f)",
            cpform(&env.xi(&cp_compose(g, f)?)),
            cpform(&cp_compose(&env.xi(g), &env.xi(f))?),
        ),
        Witness::new(
            "xi(f (x) h) vs xi(f) (x) xi(h)",
            cpform(&env.xi(&cp_tensor(f, h))),
            cpform(&cp_tensor(&env.xi(f), &env.xi(h))),
        ),
    ];
    for w in checks {
        report.samples += 1;
        report.observe(w.deviation);
        if w.deviation > tol {
            report.fail(Status::Fails, w);
        }
    }
    Ok(report)
}

// Sampled scans used by the CLI and the acceptance suite.

/// Axiom (a) over all pairs drawn from `objects`.
pub fn scan_env_a<S: Scalar>(env: &EnvStructure<S>, max_dim: usize, tol: f64) -> AxiomReport<S> {
    let objects: Vec<Object> = (1..=max_dim).map(Object::dim).collect();
    check_env_a(env, &objects, tol)
}

/// Axiom (b): `samples` random pairs, cycling through the ancilla-unitary
/// family `g = (u (x) id) o f`, the trivial pair `g = f`, and independent
/// pairs.
pub fn scan_env_b<S, Sm, R>(env: &EnvStructure<S>, sampler: &Sm, rng: &mut R, samples: usize, tol: f64) -> CatResult<AxiomReport<S>>
where
    S: Scalar,
    Sm: Sampler<S>,
    R: Rng + ?Sized,
{
    let mut report = AxiomReport::start("env-b");
    for i in 0..samples {
        let (a, b, c) = (sampler.object(rng), sampler.object(rng), sampler.object(rng));
        let f = sampler.mor(rng, &a, &c.tensor(&b));
        let g = match i % 3 {
            0 => sampler.unitary(rng, &c).tensor(&Mor::identity(&b)).compose(&f)?,
            1 => f.clone(),
            _ => sampler.mor(rng, &a, &c.tensor(&b)),
        };
        report.absorb(check_env_b_pair(env, &f, &g, &c, &b, tol)?, Status::Counterexample);
    }
    Ok(report)
}

pub fn scan_env_c<Sm, R>(env: &EnvStructure<Complex64>, sampler: &Sm, rng: &mut R, samples: usize, tol: f64) -> CatResult<AxiomReport<Complex64>>
where
    Sm: Sampler<Complex64>,
    R: Rng + ?Sized,
{
    let mut report = AxiomReport::start("env-c");
    for _ in 0..samples {
        let k = random_kraus(sampler, rng);
        report.absorb(check_env_c(env, &k, tol)?, Status::Counterexample);
    }
    Ok(report)
}

/// Doubling on pairs from the pure image: the first `phase_pairs` pairs are
/// `pure(f), pure(e^{i 2 pi j / phase_pairs} f)`, the rest independent.
pub fn scan_doubling<S, Sm, R>(sampler: &Sm, rng: &mut R, samples: usize, phase_pairs: usize, tol: f64) -> CatResult<AxiomReport<S>>
where
    S: Scalar,
    Sm: Sampler<S>,
    R: Rng + ?Sized,
{
    let mut report = AxiomReport::start("doubling");
    for i in 0..samples {
        let (a, b) = (sampler.object(rng), sampler.object(rng));
        let f = sampler.mor(rng, &a, &b);
        let g = if i < phase_pairs {
            let theta = std::f64::consts::TAU * i as f64 / phase_pairs as f64;
            sampler.rephase(&f, theta)
        } else {
            sampler.mor(rng, &a, &b)
        };
        report.absorb(check_doubling_pair(&pure(&f), &pure(&g), tol)?, Status::Counterexample);
    }
    Ok(report)
}

/// Preparation-state agreement on CPM states built from random Kraus
/// `I -> X (x) C`: a phase family over `phase_grid` angles, then independent
/// pairs up to `samples`.
pub fn scan_prep_state<S, Sm, R>(sampler: &Sm, rng: &mut R, samples: usize, phase_grid: usize, tol: f64) -> CatResult<AxiomReport<S>>
where
    S: Scalar,
    Sm: Sampler<S>,
    R: Rng + ?Sized,
{
    let mut report = AxiomReport::start("prep-state");
    let unit = Object::unit();
    for i in 0..samples.max(phase_grid) {
        let (x, c) = (sampler.object(rng), sampler.object(rng));
        let k = random_kraus_between(sampler, rng, &unit, &x, &c);
        let other = if i < phase_grid {
            let theta = std::f64::consts::TAU * i as f64 / phase_grid as f64;
            KrausMor::new(sampler.rephase(k.kraus(), theta), x.clone(), c.clone())?
        } else {
            random_kraus_between(sampler, rng, &unit, &x, &c)
        };
        report.absorb(check_prep_state_pair(&CpmMor::new(k), &CpmMor::new(other), tol)?, Status::Counterexample);
    }
    Ok(report)
}

pub fn scan_proposition<S, Sm, R>(sampler: &Sm, rng: &mut R, samples: usize, tol: f64) -> CatResult<AxiomReport<S>>
where
    S: Scalar,
    Sm: Sampler<S>,
    R: Rng + ?Sized,
{
    let mut report = AxiomReport::start("proposition-replay");
    for _ in 0..samples {
        let (a, x) = (sampler.object(rng), sampler.object(rng));
        let f = sampler.mor(rng, &a, &x);
        let g = sampler.mor(rng, &a, &x);
        report.absorb(replay_proposition_steps(&f, &g, tol)?, Status::Counterexample);
    }
    Ok(report)
}

/// Functor laws of `xi` on `samples` random composable triples, followed by
/// the doubling scan on the pure image.
pub fn scan_xi<S, Sm, R>(env: &EnvStructure<S>, sampler: &Sm, rng: &mut R, samples: usize, tol: f64) -> CatResult<AxiomReport<S>>
where
    S: Scalar,
    Sm: Sampler<S>,
    R: Rng + ?Sized,
{
    let mut report = AxiomReport::start("xi");
    for _ in 0..samples {
        let f = random_kraus(sampler, rng);
        let (b2, c2) = (sampler.object(rng), sampler.object(rng));
        let g = random_kraus_between(sampler, rng, f.output(), &b2, &c2);
        let h = random_kraus(sampler, rng);
        report.absorb(check_xi_laws(env, &f, &g, &h, tol)?, Status::Counterexample);
    }
    let doubling = scan_doubling(sampler, rng, samples, samples.min(12), tol)?;
    report.absorb(doubling, Status::Counterexample);
    Ok(report)
}
