use std::collections::HashMap;
use std::fmt::Write as _;

use super::parser::{Item, Script, Term};
use super::{fmt_f64, render_mor, DslError, LitScalar};
use crate::compact::{cap, conj_star, cup};
use crate::cp::discard;
use crate::cpm::cpmform;
use crate::mor::Mor;
use crate::object::Object;

pub type Env<S> = HashMap<String, Mor<S>>;

fn type_err(t: &Term, msg: impl ToString) -> DslError {
    DslError::Type { subterm: t.to_string(), msg: msg.to_string() }
}

fn obj_of(n: usize) -> Object {
    if n == 1 {
        Object::unit()
    } else {
        Object::dim(n)
    }
}

/// Evaluates a term by structural recursion. `a ; b` is `b o a`; `star f`
/// treats the first codomain factor as the ancilla (the tensor unit when the
/// codomain has at most one factor); `discard n` is the doubled discarding
/// map `n*n -> I`.
pub fn eval<S: LitScalar>(t: &Term, env: &Env<S>) -> Result<Mor<S>, DslError> {
    Ok(match t {
        Term::Id(n) => Mor::identity(&Object::dim(*n)),
        Term::Swap(a, b) => Mor::swap(&Object::dim(*a), &Object::dim(*b)),
        Term::Cup(n) => cup(&Object::dim(*n)),
        Term::Cap(n) => cap(&Object::dim(*n)),
        Term::Discard(n) => cpmform(&discard::<S>(&Object::dim(*n))),
        Term::Name(name) => env.get(name).cloned().ok_or_else(|| DslError::Unbound(name.clone()))?,
        Term::Matrix(rows) => {
            let cols = rows[0].len();
            if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
                return Err(type_err(t, format!("ragged rows: {} vs {} entries", bad.len(), cols)));
            }
            let entries = rows.iter().flatten().map(|&l| S::from_lit(l)).collect::<Result<Vec<S>, _>>()?;
            Mor::new(obj_of(cols), obj_of(rows.len()), entries)?
        }
        Term::Dagger(a) => eval(a, env)?.dagger(),
        Term::Conj(a) => eval(a, env)?.conj(),
        Term::Star(a) => {
            let f = eval(a, env)?;
            let factors = f.cod().factors();
            let (c, b) = if factors.len() >= 2 {
                (Object::dim(factors[0]), Object::new(factors[1..].to_vec()))
            } else {
                (Object::unit(), f.cod().clone())
            };
            conj_star(&f, &c, &b).map_err(|e| type_err(t, e))?
        }
        Term::Seq(a, b) => {
            let (first, second) = (eval(a, env)?, eval(b, env)?);
            second.compose(&first).map_err(|e| type_err(t, e))?
        }
        Term::Tensor(a, b) => eval(a, env)?.tensor(&eval(b, env)?),
    })
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScriptReport {
    pub output: String,
    pub asserts: usize,
    pub failed_asserts: usize,
}

/// Runs a script, extending `env` with its bindings. `assert a == b` passes
/// when the shapes agree and every entry is within `tol`.
pub fn run_script<S: LitScalar>(script: &Script, env: &mut Env<S>, tol: f64) -> Result<ScriptReport, DslError> {
    let mut rep = ScriptReport::default();
    for item in &script.items {
        match item {
            Item::Bind { name, dom, cod, expr } => {
                let (dom, cod) = (Object::new(dom.clone()), Object::new(cod.clone()));
                let m = eval(expr, env)?;
                let typed = m.retype(dom.clone(), cod.clone()).map_err(|_| {
                    type_err(expr, format!("declared {dom} -> {cod} but the value is {} -> {}", m.dom(), m.cod()))
                })?;
                writeln!(rep.output, "bind={name} : {dom} -> {cod}").unwrap();
                env.insert(name.clone(), typed);
            }
            Item::Show(t) => {
                writeln!(rep.output, "show={t}").unwrap();
                rep.output.push_str(&render_mor(&eval(t, env)?));
            }
            Item::Assert(lhs, rhs) => {
                let (l, r) = (eval(lhs, env)?, eval(rhs, env)?);
                rep.asserts += 1;
                writeln!(rep.output, "assert={lhs} == {rhs}").unwrap();
                match l.max_dist(&r) {
                    Ok(d) => {
                        let ok = d <= tol;
                        if !ok {
                            rep.failed_asserts += 1;
                        }
                        writeln!(rep.output, "result={}", if ok { "ok" } else { "failed" }).unwrap();
                        writeln!(rep.output, "deviation={}", fmt_f64(d)).unwrap();
                    }
                    Err(_) => {
                        rep.failed_asserts += 1;
                        writeln!(rep.output, "result=failed").unwrap();
                        writeln!(rep.output, "reason=shapes {}x{} and {}x{} differ", l.rows(), l.cols(), r.rows(), r.cols())
                            .unwrap();
                    }
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parser::{parse_expr, parse_script};
    use crate::mor::{CMor, RelMor};
    use crate::sample::random_isometry;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ev(src: &str, env: &Env<Complex64>) -> Result<CMor, DslError> {
        eval(&parse_expr(src).unwrap(), env)
    }

    #[test]
    fn swap_matches_core() {
        let m = ev("swap 2 2", &Env::new()).unwrap();
        assert_eq!(m, Mor::swap(&Object::dim(2), &Object::dim(2)));
    }

    #[test]
    fn isometry_dagger_composite() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v = random_isometry(&mut rng, &Object::dim(2), &Object::dim(4));
        let env = Env::from([("f".to_string(), v)]);
        let m = ev("f ; dagger f", &env).unwrap();
        assert!(m.approx_eq(&CMor::identity(&Object::dim(2)), 1e-10));
        let m = ev("f ox id 1", &env).unwrap();
        assert!(m.approx_eq(&env["f"], 0.0));
    }

    #[test]
    fn mismatch_names_subterm() {
        let e = ev("id 2 ; id 3", &Env::new()).unwrap_err();
        assert!(matches!(e, DslError::Type { ref subterm, .. } if subterm == "id 2 ; id 3"), "{e}");
    }

    #[test]
    fn bool_literals_and_asserts() {
        let s = parse_script("mor r : 2 -> 2 = [0, 1; 1, 1];\nassert r ; r == [1, 1; 1, 1];\nassert r == id 2;").unwrap();
        let mut env = Env::<bool>::new();
        let rep = run_script(&s, &mut env, 0.0).unwrap();
        assert_eq!((rep.asserts, rep.failed_asserts), (2, 1));
        let bad = parse_expr("[2]").unwrap();
        assert!(matches!(eval::<bool>(&bad, &Env::new()), Err(DslError::Literal(_))));
        let _: RelMor = env["r"].clone();
    }
}
