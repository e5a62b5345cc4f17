mod common;

use common::*;
use pvgkit::construction::ConstructionOutput;
use pvgkit::fan::{build_arrangement_fan, build_fan, build_grid, build_perles_fan, perles_configuration, perles_lines};
use pvgkit::genfan::{build_generalized_fan, s0_failure, GenFanSpec, GenSegment};
use pvgkit::projgeom::join;
use pvgkit::{ProjPoint, Scalar};

fn same(a: &ConstructionOutput, b: &ConstructionOutput) -> bool {
    a.points.labels() == b.points.labels() && a.points.points() == b.points.points() && a.graph.same_labeled(&b.graph)
}

#[test]
fn fans() {
    for pairs in [&[(4, 4)][..], &[(4, 8), (8, 4)], &[(3, 9), (6, 6), (9, 3)], &[(2, 10), (5, 9), (8, 3), (11, 1)]] {
        let out = build_fan(&axis_fan(pairs)).unwrap();
        assert_sound(&out);
        assert_eq!(out.provenance.kind, "fan");
    }
}

#[test]
fn fans_are_seed_deterministic() {
    let mut spec = axis_fan(&[(4, 8), (8, 4)]);
    spec.seed = 9;
    assert!(same(&build_fan(&spec).unwrap(), &build_fan(&spec).unwrap()));
    spec.seed = 10;
    assert_sound(&build_fan(&spec).unwrap());
}

#[test]
fn grids() {
    for (r, c) in [(1, 3), (2, 2), (3, 4), (5, 5)] {
        let out = build_grid(r, c).unwrap();
        assert_eq!(out.points.len(), r * c);
        assert_sound(&out);
    }
}

#[test]
fn arrangement() {
    let line = |a: (i64, i64), b: (i64, i64)| join(&ProjPoint::int(a.0, a.1), &ProjPoint::int(b.0, b.1)).unwrap();
    let lines = vec![line((0, 0), (1, 1)), line((0, 3), (3, 0)), line((0, 1), (5, 2)), line((1, 0), (2, 5))];
    let names: Vec<String> = (0..lines.len()).map(|i| format!("L{i}")).collect();
    let out = build_arrangement_fan(&lines, &names, 3).unwrap();
    assert_sound(&out);
    assert!(same(&out, &build_arrangement_fan(&lines, &names, 3).unwrap()));
}

#[test]
fn perles() {
    let pts = perles_configuration();
    assert_eq!(pts.len(), 9);
    assert!(pts.iter().any(|(_, p)| !p.x().is_rational() || !p.y().is_rational()));
    for (members, l) in perles_lines().unwrap() {
        for m in members {
            let p = &pts.iter().find(|(n, _)| *n == m).unwrap().1;
            assert!(l.contains(p));
        }
    }
    let out = build_perles_fan(0).unwrap();
    assert_sound(&out);
}

#[test]
fn generalized_fans() {
    let seg = |n: &str, b: i64, t: i64| GenSegment { name: n.into(), bottom: Scalar::from_int(b), top: Scalar::from_int(t) };
    let mut spec = GenFanSpec::new(vec![seg("A", 0, 4), seg("B", 4, 0), seg("C", 1, 6)], 2, 2, Scalar::from_ratio(1, 64));
    spec.bundles = vec![Scalar::from_ratio(1, 8)];
    spec.rays = vec![("r".into(), Scalar::from_ratio(3, 4))];
    spec.marks = vec![("m".into(), Scalar::from_int(3))];
    let out = build_generalized_fan(&spec).unwrap();
    assert_sound(&out.output);
    assert!(s0_failure(&out.output).is_none());
    let again = build_generalized_fan(&spec).unwrap();
    assert!(same(&out.output, &again.output));
}

#[test]
fn directory_round_trip() {
    let out = build_fan(&axis_fan(&[(4, 8), (8, 4)])).unwrap();
    let dir = tempfile::tempdir().unwrap();
    out.write_dir(dir.path()).unwrap();
    let back = ConstructionOutput::read_dir(dir.path()).unwrap();
    assert!(back.graph.same_labeled(&out.graph));
    assert_eq!(back.provenance.groups.len(), out.provenance.groups.len());
    assert!(ConstructionOutput::read_dir(&dir.path().join("missing")).is_err());
}
