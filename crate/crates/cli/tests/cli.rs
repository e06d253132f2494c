use std::process::Command as Process;

use tiltkit::builder::build_block_extension;
use tiltkit::field::Rationals;
use tiltkit_cli::corpus::{corpus, example3_quiver, find};
use tiltkit_cli::format::parse;
use tiltkit_cli::load::load;
use tiltkit_cli::quiver::build_path_algebra;
use tiltkit_cli::run::{run, BuildTarget, Command, Overrides, Status};

const CHAIN_VIOLATION: &str = "\
format_version 1
name chain-violation
field Q
algebra
  dim 2
  unit [1 0]
  mult 0 0 0 1
  mult 0 1 1 1
  mult 1 0 1 1
end
subspace I = ideal [0 1]
subspace A = full
lambda
  n 3
  ideal 2 I
  ideal 3 A
end
";

#[test]
fn corpus_has_the_required_entries() {
    let names: Vec<String> = corpus().into_iter().map(|s| s.name).collect();
    assert!(names.len() >= 8);
    for required in ["example1-display", "example2-m2", "example2-m3", "example2-m4", "example3", "matrix-m2k-n2", "lower-triangular-n2"] {
        assert!(names.iter().any(|n| n == required), "{required} missing");
    }
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn every_entry_round_trips() {
    for s in corpus() {
        let text = s.to_text();
        let back = parse(&text).unwrap_or_else(|e| panic!("{}: {e}", s.name));
        assert_eq!(back.to_text(), text, "{}", s.name);
        assert_eq!(back, s, "{}", s.name);
    }
}

#[test]
fn every_entry_validates() {
    for s in corpus() {
        let r = run(&Command::Validate, &s, &Overrides::default());
        assert_eq!(r.exit_code, 0, "{}: {:?}", s.name, r.error);
    }
}

#[test]
fn reports_are_deterministic() {
    for name in ["dual-n2", "qf-block-dual", "tiled-full-control"] {
        let s = find(name).unwrap();
        let a = run(&Command::ReportAll, &s, &Overrides::default());
        let b = run(&Command::ReportAll, &s, &Overrides::default());
        assert_eq!(a.stable_json(), b.stable_json(), "{name}");
        assert_eq!(a.exit_code, 0, "{name}");
    }
}

#[test]
fn chain_violation_exits_with_input_error() {
    let s = parse(CHAIN_VIOLATION).unwrap();
    let r = run(&Command::Validate, &s, &Overrides::default());
    assert_eq!(r.exit_code, 1);
    let msg = r.error.clone().unwrap();
    assert!(msg.contains("chain: I_3 ⊆ I_2"), "{msg}");
    assert_eq!(r.check("validate.lambda").unwrap().status, Status::Fail);
}

#[test]
fn dual_numbers_end_t_matches_sigma() {
    let r = run(&Command::VerifyThm1, &find("dual-n2").unwrap(), &Overrides::default());
    assert_eq!(r.exit_code, 0);
    let v = &r.check("thm1.dimensions").unwrap().values;
    assert_eq!(v["dim_end_t"], 4);
    assert_eq!(v["dim_sigma"], 4);
    assert_eq!(v["dim_lambda"], 7);
}

#[test]
fn example3_block_bound() {
    let s = find("example3").unwrap();
    let r = run(&Command::VerifyBounds(vec!["cor_4_10".into()]), &s, &Overrides::default());
    assert_eq!(r.exit_code, 0, "{:?}", r.error);
    let c = r.check("cor_4_10").unwrap();
    assert_eq!(c.values["rhs"], "3");
    assert_eq!(c.values["inputs"]["A self-injective"], "true");
}

#[test]
fn example2_m3_builds() {
    let s = find("example2-m3").unwrap();
    for t in [BuildTarget::Lambda, BuildTarget::Sigma, BuildTarget::Tiled] {
        let r = run(&Command::Build(t), &s, &Overrides::default());
        assert_eq!(r.exit_code, 0, "{t:?}: {:?}", r.error);
    }
}

#[test]
fn example3_quiver_algebra() {
    let p = build_path_algebra(&example3_quiver(), Rationals, 64).unwrap();
    assert_eq!(p.algebra.dim(), 8);
    let a = &p.algebra;
    let (e1, e2) = (&p.vertex_idems[0], &p.vertex_idems[1]);
    assert_eq!(a.corner_unchecked(e1, e1).dim(), 4);
    assert_eq!(a.corner_unchecked(e1, e2).dim(), 1);
    assert_eq!(a.corner_unchecked(e2, e1).dim(), 1);
    assert_eq!(a.corner_unchecked(e2, e2).dim(), 2);
}

#[test]
fn example3_block_shape_matches_display() {
    let displayed = [
        [4, 4, 4, 1, 1],
        [3, 4, 4, 1, 1],
        [3, 3, 4, 1, 1],
        [1, 1, 1, 2, 2],
        [1, 1, 1, 1, 2],
    ];
    let l = load(&find("example3").unwrap(), Rationals, 512).unwrap();
    let ring = build_block_extension(l.block.as_ref().unwrap()).unwrap();
    let dims = ring.entry_dims();
    // the builder puts the full corner in the first column of each block; the display
    // lists the same ring with the positions inside each block in reverse order
    let flip = |k: usize| if k < 3 { 2 - k } else { 7 - k };
    for i in 0..5 {
        for j in 0..5 {
            assert_eq!(dims[flip(i)][flip(j)], displayed[i][j], "entry ({}, {})", i + 1, j + 1);
        }
    }
    let total: usize = displayed.iter().flatten().sum();
    assert_eq!(ring.algebra.dim(), total);
    assert_eq!(total, 52);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_tiltkit");
    let ok = Process::new(bin).args(["validate", "corpus:dual-n2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(json["format_version"], 1);

    let dir = std::env::temp_dir().join(format!("tiltkit-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.spec");
    std::fs::write(&bad, CHAIN_VIOLATION).unwrap();
    let out = Process::new(bin).args(["validate", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("chain"));

    let garbled = dir.join("garbled.spec");
    std::fs::write(&garbled, "format_version 1\nname x\nfield Q\nalgebra\n  dim two\nend\n").unwrap();
    let out = Process::new(bin).args(["validate", garbled.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 5"));

    let unknown = Process::new(bin).args(["verify-bounds", "corpus:dual-n2", "no_such_bound"]).output().unwrap();
    assert_eq!(unknown.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn field_override_runs_over_a_prime_field() {
    let s = find("lower-triangular-n2").unwrap();
    let o = Overrides { field: Some("Fp:101".parse().unwrap()), ..Overrides::default() };
    let r = run(&Command::VerifyThm1, &s, &o);
    assert_eq!(r.exit_code, 0, "{:?}", r.error);
    assert_eq!(r.options.field, "Fp:101");
}
