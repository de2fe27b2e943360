use std::path::Path;
use std::process::Command;

use cpkit::axioms::scan_doubling;
use cpkit::channels::{choi_of_kraus, kraus_from_choi, transpose_choi, ChoiMatrix, KRAUS_CUTOFF};
use cpkit::cli::run;
use cpkit::cp::{cp_compose, cp_equal, KrausMor};
use cpkit::dsl::{fmt_f64, render_mor, MorFile};
use cpkit::laws::check_laws;
use cpkit::sample::{random_cmor, HilbSampler, RelSampler};
use cpkit::{CMor, Object, RelMor};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn cpkit(args: &[&str]) -> (i32, String) {
    run(std::iter::once("cpkit").chain(args.iter().copied()))
}

fn field<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key}= in\n{out}"))
}

fn write_mor(dir: &TempDir, name: &str, file: &MorFile) -> String {
    let path = dir.path().join(name);
    file.write(&path).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn eq_identity_and_its_dagger() {
    let (code, out) = cpkit(&["eq", "id 2", "dagger (id 2)", "--tol", "1e-9"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(field(&out, "equal"), "true");
    let (code, out) = cpkit(&["eq", "id 2", "swap 1 2"]);
    assert_eq!((code, field(&out, "equal")), (0, "true"));
    let (code, out) = cpkit(&["eq", "id 4", "swap 2 2"]);
    assert_eq!((code, field(&out, "equal")), (1, "false"));
    let (code, out) = cpkit(&["eq", "id 2", "id 3"]);
    assert_eq!(code, 1);
    assert!(out.contains("reason=shapes"));
}

#[test]
fn check_cp_on_transpose_reports_minus_one() {
    let dir = TempDir::new().unwrap();
    let path = write_mor(&dir, "transpose.mor", &MorFile::from_mor(&transpose_choi(2).matrix));
    let (code, out) = cpkit(&["check-cp", &path]);
    assert_eq!(code, 1, "{out}");
    assert_eq!(field(&out, "cp"), "false");
    let min: f64 = field(&out, "min_eigenvalue").parse().unwrap();
    assert!((min + 1.0).abs() <= 1e-9);
    // dilate refuses it too
    assert_eq!(cpkit(&["dilate", &path]).0, 1);
}

#[test]
fn check_axioms_doubling_matches_library() {
    let (code, out) = cpkit(&["check-axioms", "--axiom", "doubling", "--seed", "7", "--samples", "100"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("summary=holds on 100 samples"));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let direct = scan_doubling(&HilbSampler { max_dim: 3 }, &mut rng, 100, 12, 1e-9).unwrap();
    assert_eq!(out, format!("semiring=complex\n{direct}\n"));
}

#[test]
fn every_axiom_runs_on_both_semirings() {
    for axiom in ["env-a", "env-b", "env-c", "doubling", "prep-state", "xi"] {
        let (code, out) = cpkit(&["check-axioms", "--axiom", axiom, "--seed", "3", "--samples", "20"]);
        assert_eq!(code, 0, "{axiom}: {out}");
        assert_eq!(field(&out, "status"), "holds");
        let (code, out) = cpkit(&["--semiring", "bool", "check-axioms", "--axiom", axiom, "--samples", "20"]);
        if axiom == "env-c" {
            assert_eq!(code, 2, "{out}");
        } else {
            assert_eq!(code, 0, "{axiom}: {out}");
        }
    }
}

#[test]
fn corrupted_environment_fails_with_witness() {
    let (code, out) = cpkit(&["check-axioms", "--axiom", "env-a", "--corrupt"]);
    assert_eq!(code, 1);
    assert_eq!(field(&out, "status"), "fails");
    assert_eq!(field(&out, "witness_deviation"), fmt_f64(3.0));
}

#[test]
fn laws_output_is_the_library_report() {
    let (code, out) = cpkit(&["laws", "--seed", "5", "--trials", "30"]);
    assert_eq!(code, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let direct = check_laws(&HilbSampler { max_dim: 4 }, &mut rng, 30, 1e-9).unwrap();
    assert_eq!(out, format!("semiring=complex\ntrials=30\n{direct}passed=true\n"));
    let (code, out) = cpkit(&["--semiring", "bool", "laws", "--seed", "5", "--trials", "30", "--tol", "0"]);
    assert_eq!(code, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let direct = check_laws(&RelSampler { max_size: 4 }, &mut rng, 30, 0.0).unwrap();
    assert!(out.contains(&direct.to_string()));
    assert_eq!(cpkit(&["laws", "--trials", "0"]).0, 2);
}

#[test]
fn choi_and_dilate_round_trip() {
    let dir = TempDir::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let f = random_cmor(&mut rng, &Object::dim(2), &Object::new(vec![3, 2]));
    let fpath = write_mor(&dir, "f.mor", &MorFile::from_mor(&f));
    let bind = format!("f={fpath}");

    let (code, out) = cpkit(&["--bind", &bind, "choi", "f", "--out-dim", "3"]);
    assert_eq!(code, 0, "{out}");
    let k = KrausMor::new(f.clone(), Object::dim(3), Object::dim(2)).unwrap();
    let choi = choi_of_kraus(&k);
    assert_eq!(out, format!("in_dim=2\nout_dim=3\n{}", render_mor(&choi.matrix)));

    let cpath = write_mor(&dir, "choi.mor", &MorFile::from_mor(&choi.matrix));
    let gpath = dir.path().join("g.mor");
    let (code, out) = cpkit(&["dilate", &cpath, "--in-dim", "2", "--out", gpath.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let direct = kraus_from_choi(&ChoiMatrix::new(choi.matrix.clone(), 2, 3).unwrap(), KRAUS_CUTOFF).unwrap();
    assert_eq!(field(&out, "ancilla_dim"), direct.ancilla_dim.to_string());
    assert_eq!(field(&out, "reconstruction_error"), fmt_f64(direct.reconstruction_error));
    let g: CMor = MorFile::read(&gpath).unwrap().to_mor().unwrap();
    let kg = KrausMor::new(g.retype(Object::dim(2), Object::new(vec![3, direct.ancilla_dim])).unwrap(), Object::dim(3), Object::dim(direct.ancilla_dim)).unwrap();
    assert!(cp_equal(&k, &kg, 1e-9).unwrap());

    // a single-factor square Choi file needs its split inferred or given
    let c6 = write_mor(&dir, "c6.mor", &MorFile::from_mor(&choi.matrix.retype(Object::dim(6), Object::dim(6)).unwrap()));
    assert_eq!(cpkit(&["check-cp", &c6]).0, 2);
    assert_eq!(cpkit(&["check-cp", &c6, "--in-dim", "2"]).0, 0);
}

#[test]
fn cp_compose_matches_library() {
    let (code, out) = cpkit(&["cp-compose", "[1, 0; 0, 1; 0, 0; 0, 0]", "cup 2", "--g-out", "2", "--f-out", "2"]);
    assert_eq!(code, 0, "{out}");
    let g = KrausMor::new(
        CMor::from_real(Object::dim(2), Object::new(vec![2, 2]), &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]).unwrap(),
        Object::dim(2),
        Object::dim(2),
    )
    .unwrap();
    let f = KrausMor::new(cpkit::compact::cup(&Object::dim(2)), Object::dim(2), Object::dim(2)).unwrap();
    let h = cp_compose(&g, &f).unwrap();
    assert_eq!(field(&out, "ancilla"), h.ancilla().to_string());
    assert!(out.ends_with(&render_mor(h.kraus())));
    assert_eq!(cpkit(&["cp-compose", "id 2", "id 3", "--g-out", "2", "--f-out", "3"]).0, 2);
    assert_eq!(cpkit(&["cp-compose", "id 2", "id 2", "--g-out", "3", "--f-out", "2"]).0, 2);
}

#[test]
fn bool_bindings_and_scripts() {
    let dir = TempDir::new().unwrap();
    let r = RelMor::new(Object::dim(2), Object::dim(2), vec![true, true, false, true]).unwrap();
    let rpath = write_mor(&dir, "r.mor", &MorFile::from_mor(&r));
    let script = dir.path().join("s.cpk");
    std::fs::write(&script, "mor q : 2 -> 2 = r ; r;\nassert q == r;\n").unwrap();
    let (code, out) = cpkit(&["--semiring", "bool", "--bind", &format!("r={rpath}"), "--script", script.to_str().unwrap(), "eval", "q ox r"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("expr=q ox r\ndom=2*2\n"));
    // the file is boolean, the command complex
    assert_eq!(cpkit(&["--bind", &format!("r={rpath}"), "eval", "r"]).0, 2);
    assert_eq!(cpkit(&["--semiring", "bool", "--bind", "r", "eval", "id 1"]).0, 2);
    assert_eq!(cpkit(&["--semiring", "bool", "--bind", &format!("id={rpath}"), "eval", "id 1"]).0, 2);
}

#[test]
fn usage_and_input_errors_exit_2() {
    for args in [
        vec!["frobnicate"],
        vec!["--semiring", "quaternion", "eval", "id 1"],
        vec!["eval"],
        vec!["eval", "dagger ("],
        vec!["eval", "id 2 ; id 3"],
        vec!["eval", "nope"],
        vec!["eq", "id 2"],
        vec!["check-cp", "/nonexistent/file.mor"],
        vec!["check-axioms", "--axiom", "env-d"],
        vec!["--tol", "-1", "eq", "id 1", "id 1"],
        vec!["--semiring", "bool", "eval", "[0.5]"],
        vec!["--semiring", "bool", "check-cp", "x.mor"],
    ] {
        let (code, out) = cpkit(&args);
        assert_eq!(code, 2, "{args:?}: {out}");
    }
    let (_, out) = cpkit(&["eval", "dagger ("]);
    assert!(out.contains("line 1, col 9"), "{out}");
    let (code, out) = cpkit(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("check-axioms"));
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cpkit"))
}

#[test]
fn binary_exit_codes_and_tolerance_variable() {
    let st = binary().args(["eq", "[1]", "[1.000001]"]).env_remove("CPKIT_TOL").output().unwrap();
    assert_eq!(st.status.code(), Some(1));
    let st = binary().args(["eq", "[1]", "[1.000001]"]).env("CPKIT_TOL", "1e-3").output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    let out = String::from_utf8(st.stdout).unwrap();
    assert_eq!(field(&out, "tol"), fmt_f64(1e-3));
    // the flag wins over the variable
    let st = binary().args(["eq", "[1]", "[1.000001]", "--tol", "1e-9"]).env("CPKIT_TOL", "1e-3").output().unwrap();
    assert_eq!(st.status.code(), Some(1));
    let st = binary().args(["eq", "[1]", "[1]"]).env("CPKIT_TOL", "abc").output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    let st = binary().args(["eval", "id 2 )"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    assert!(String::from_utf8(st.stderr).unwrap().contains("line 1, col 6"));
}

#[test]
fn eval_output_is_bit_stable() {
    let script = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/11_hadamard.cpk");
    let a = cpkit(&["--script", script.to_str().unwrap(), "eval", "h ox [1+2i]"]);
    let b = cpkit(&["--script", script.to_str().unwrap(), "eval", "h ox [1+2i]"]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
}
