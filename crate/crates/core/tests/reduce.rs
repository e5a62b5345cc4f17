mod common;

use common::*;
use pvgkit::reduce::{compile, parse_system, parse_witness, read_output, verify_output, write_output, ReduceParams, ReductionOutput, OUTPUT_FILES};
use pvgkit::visibility::PointSet;
use pvgkit::{ProjPoint, Scalar};

const MIXED: &str = "VARS 6\nADD 1 2 3\nMUL 2 2 4\nMUL 2 3 5\nADD 3 5 6\n";
const MIXED_WITNESS: &str = "x1 = 1\nx2 = 2\nx3 = 3\nx4 = 4\nx5 = 6\nx6 = 9\n";

fn build(system: &str, witness: &str, seed: u64) -> ReductionOutput {
    let sys = parse_system(system).unwrap();
    let w = parse_witness(witness, sys.n).unwrap();
    compile(&sys, &w, &ReduceParams::scaled(2, 2, seed)).unwrap()
}

fn nudged(out: &ReductionOutput, label: &str) -> ReductionOutput {
    let mut bad = out.clone();
    let ps = &bad.construction.points;
    let i = ps.index_of(label).unwrap();
    let (x, y) = ps.point(i).xy().unwrap();
    let moved = ProjPoint::affine(x.clone(), y + &Scalar::from_ratio(1, 1 << 20));
    let mut pts = ps.points().to_vec();
    pts[i] = moved;
    bad.construction.points = PointSet::new(ps.labels().to_vec(), pts).unwrap();
    bad
}

#[test]
fn closed_loop() {
    for (system, witness) in [
        ("VARS 3\nMUL 2 2 3\n", "x1 = 1\nx2 = 2\nx3 = 4\n"),
        ("VARS 2\nADD 1 1 2\n", "x1 = 1\nx2 = 2\n"),
        (MIXED, MIXED_WITNESS),
    ] {
        let out = build(system, witness, 5);
        let report = verify_output(&out);
        assert!(report.passed(), "{report}");
        if out.certificate.gadgets.len() == 1 {
            assert!(out.construction.graph.same_labeled(&naive_graph(&out.construction.points)));
        }
    }
}

#[test]
fn witness_must_satisfy_the_system() {
    let sys = parse_system("VARS 3\nMUL 2 2 3\n").unwrap();
    let w = parse_witness("x1 = 1\nx2 = 2\nx3 = 5\n", 3).unwrap();
    assert!(compile(&sys, &w, &ReduceParams::scaled(2, 2, 0)).is_err());
}

#[test]
fn corrupted_witness_values_are_named() {
    let out = build(MIXED, MIXED_WITNESS, 1);
    for i in 1..out.witness.values.len() {
        let mut bad = out.clone();
        bad.witness.values[i] = &bad.witness.values[i] + &Scalar::from_ratio(1, 3);
        let report = verify_output(&bad);
        let msg = report.failure.expect("mutant must fail");
        assert!(msg.contains(&format!("x{}", i + 1)), "{msg}");
    }
}

#[test]
fn nudged_gadget_points_are_named() {
    let out = build(MIXED, MIXED_WITNESS, 2);
    for g in &out.certificate.gadgets {
        for role in ["c", "d", "e"] {
            let Some(label) = g.roles.get(role) else { continue };
            let report = verify_output(&nudged(&out, label));
            let msg = report.failure.expect("mutant must fail");
            assert!(msg.contains(label.as_str()), "{role} of gadget {}: {msg}", g.position);
        }
    }
}

#[test]
fn files_round_trip_and_are_deterministic() {
    let out = build(MIXED, MIXED_WITNESS, 7);
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    write_output(&out, a.path()).unwrap();
    write_output(&build(MIXED, MIXED_WITNESS, 7), b.path()).unwrap();
    for f in OUTPUT_FILES {
        assert_eq!(std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap(), "{f}");
    }
    let back = read_output(a.path()).unwrap();
    assert!(verify_output(&back).passed());
    std::fs::remove_file(a.path().join("witness.txt")).unwrap();
    assert!(read_output(a.path()).is_err());
}
