#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pvgkit::projgeom::join;
use pvgkit::visibility::{PointSet, VisibilityGraph};
use pvgkit::{ProjMap, ProjPoint, Rational, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rand_rational(r: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    q(r.gen_range(-num..=num), r.gen_range(1..=den))
}

pub fn rand_scalar(r: &mut ChaCha8Rng) -> Scalar {
    Scalar::from_rational(rand_rational(r, 40, 9))
}

fn coords(p: &ProjPoint) -> (Rational, Rational) {
    let (x, y) = p.xy().expect("affine");
    (
        x.as_rational().expect("rational").clone(),
        y.as_rational().expect("rational").clone(),
    )
}

/// Brute force: `u` sees `v` iff no third point is on the closed segment
/// strictly between them. Uses plain rationals, nothing from the crate.
pub fn naive_graph(ps: &PointSet) -> VisibilityGraph {
    let n = ps.len();
    let c: Vec<_> = ps.points().iter().map(coords).collect();
    let mut g = VisibilityGraph::empty(ps.labels().to_vec());
    for u in 0..n {
        for v in u + 1..n {
            let (ax, ay) = &c[u];
            let (bx, by) = &c[v];
            let blocked = (0..n).filter(|&w| w != u && w != v).any(|w| {
                let (px, py) = &c[w];
                let cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
                if !cross.is_zero() {
                    return false;
                }
                // strictly between: parameter t in (0, 1) along the segment
                let dot = (px - ax) * (bx - ax) + (py - ay) * (by - ay);
                let len2 = (bx - ax) * (bx - ax) + (by - ay) * (by - ay);
                dot.is_positive() && dot < len2
            });
            if !blocked {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Random rational point set; with `collinear`, some points are placed on
/// lines through earlier pairs.
pub fn random_point_set(r: &mut ChaCha8Rng, n: usize, collinear: bool) -> PointSet {
    let mut pts: Vec<ProjPoint> = Vec::new();
    while pts.len() < n {
        let p = if collinear && pts.len() >= 2 && r.gen_bool(0.4) {
            let i = r.gen_range(0..pts.len());
            let mut j = r.gen_range(0..pts.len());
            while j == i {
                j = r.gen_range(0..pts.len());
            }
            let t = Scalar::from_rational(q(r.gen_range(-6..=12), r.gen_range(1..=6)));
            let (a, b) = (&pts[i], &pts[j]);
            ProjPoint::affine(a.x() + &(&t * &(b.x() - a.x())), a.y() + &(&t * &(b.y() - a.y())))
        } else if r.gen_bool(0.5) {
            ProjPoint::int(r.gen_range(0..8), r.gen_range(0..8))
        } else {
            ProjPoint::affine(rand_scalar(r), rand_scalar(r))
        };
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    PointSet::from_points(pts).expect("distinct points")
}

/// Whether some three points are collinear.
pub fn has_collinear_triple(ps: &PointSet) -> bool {
    let n = ps.len();
    (0..n).any(|a| {
        (a + 1..n).any(|b| {
            let l = join(ps.point(a), ps.point(b)).expect("distinct");
            (b + 1..n).any(|c| l.contains(ps.point(c)))
        })
    })
}

/// Random invertible map with small integer entries.
pub fn random_map(r: &mut ChaCha8Rng) -> ProjMap {
    loop {
        let mut m = [[0i64; 3]; 3];
        for row in m.iter_mut() {
            for v in row.iter_mut() {
                *v = r.gen_range(-5..=5);
            }
        }
        if let Ok(map) = ProjMap::from_ints(m) {
            return map;
        }
    }
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> VisibilityGraph {
    let mut g = VisibilityGraph::empty((0..n).map(|i| format!("u{i}")).collect());
    for &(a, b) in edges {
        g.add_edge(a, b);
    }
    g
}

pub fn complete(n: usize) -> VisibilityGraph {
    let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    graph(n, &edges)
}

pub fn path(n: usize) -> VisibilityGraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    graph(n, &edges)
}

pub fn claw() -> VisibilityGraph {
    graph(4, &[(0, 1), (0, 2), (0, 3)])
}

use pvgkit::vonstaudt::{build_gadget, GadgetInstance, GadgetKind, LineCoordinateFrame};

/// Anchors on a random horizontal line; `None` for a degenerate draw.
pub fn random_gadget(r: &mut ChaCha8Rng, kind: GadgetKind, x: &Scalar, y: &Scalar) -> Option<GadgetInstance> {
    let frame = LineCoordinateFrame::canonical();
    let mut h = rand_rational(r, 30, 7);
    if h.is_zero() {
        h = q(1, 1);
    }
    let ax = rand_rational(r, 50, 7);
    let bx = rand_rational(r, 50, 7);
    let a = ProjPoint::affine(ax.into(), h.clone().into());
    let b = ProjPoint::affine(bx.into(), h.into());
    build_gadget(kind, &frame, &frame.locate(x), &frame.locate(y), &a, &b).ok()
}

/// Value of the gadget's output point, read in the frame carried by `m`.
pub fn mapped_output(g: &GadgetInstance, m: &ProjMap) -> Scalar {
    let frame = LineCoordinateFrame::canonical().transformed(m);
    let img = g.transformed(m);
    let rebuilt = build_gadget(g.kind, &frame, &img.x, &img.y, &img.a, &img.b).expect("image of a valid gadget");
    assert_eq!(rebuilt.z, img.z, "construction commutes with the map");
    frame.value(&img.z).expect("output on the frame line")
}

use pvgkit::construction::ConstructionOutput;
use pvgkit::visibility::Analysis;

/// Declared groups collinear, structural checks pass, and for rational
/// coordinates the stored graph agrees with the brute-force one.
pub fn assert_sound(out: &ConstructionOutput) {
    assert!(out.audit().is_empty(), "{:?}", out.audit());
    for rep in Analysis::new(&out.points).check_all() {
        assert!(rep.passed(), "{rep}");
    }
    let rational = out.points.points().iter().all(|p| p.x().is_rational() && p.y().is_rational());
    if rational {
        assert_eq!(out.graph.first_difference(&naive_graph(&out.points)).unwrap(), None);
    }
}

/// Fan between the two axes with segments from `(a, 0)` to `(0, b)`.
pub fn axis_fan(pairs: &[(i64, i64)]) -> pvgkit::fan::FanSpec {
    let l = join(&ProjPoint::int(0, 0), &ProjPoint::int(1, 0)).unwrap();
    let lp = join(&ProjPoint::int(0, 0), &ProjPoint::int(0, 1)).unwrap();
    let segs = pairs
        .iter()
        .map(|&(a, b)| pvgkit::Segment::new(ProjPoint::int(a, 0), ProjPoint::int(0, b)).unwrap())
        .collect();
    pvgkit::fan::FanSpec::new(l, lp, segs)
}

/// Integer cells of a grid realization, in the order of `labels`.
pub fn cells(ps: &PointSet, labels: &[String]) -> Vec<(i64, i64)> {
    labels
        .iter()
        .map(|l| {
            let (x, y) = coords(ps.point(ps.index_of(l).unwrap()));
            assert!(x.is_integer() && y.is_integer(), "{l} off the grid");
            (x.to_integer().try_into().unwrap(), y.to_integer().try_into().unwrap())
        })
        .collect()
}

use std::path::{Path, PathBuf};
use std::process::Command;

pub const PVG: &str = env!("CARGO_BIN_EXE_pvg");

/// Runs the binary; returns exit code and stdout.
pub fn pvg(args: &[&str]) -> (i32, String) {
    let out = Command::new(PVG).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

/// Input files for every subcommand.
pub fn write_inputs(dir: &Path) {
    let files = [
        ("points.txt", "a 0 0\nb 1 0\nc 2 0\nd 1 1\ne 1/2 3/2\n"),
        ("fan.txt", "LINES\nl 0 0 1 0\nl' 0 0 0 1\nSEGMENTS\nA 4 0 0 8\nB 8 0 0 4\nPARAMS SEED 2\n"),
        ("genfan.txt", "SEGMENTS\nA 0 4\nB 4 0\nRAYS\nr 3/4\nPARAMS B 2 E 1 EPS 1/64\n"),
        ("arr.txt", "LINES\nL0 0 0 1 1\nL1 0 3 3 0\nL2 0 1 5 2\n"),
        ("sys.txt", "VARS 3\nMUL 2 2 3\n"),
        ("wit.txt", "x1 = 1\nx2 = 2\nx3 = 4\n"),
        ("k4.txt", "4 6\na b\na c\na d\nb c\nb d\nc d\n"),
    ];
    for (name, text) in files {
        std::fs::write(dir.join(name), text).unwrap();
    }
}

/// Runs every subcommand with a fixed seed, reading inputs from `inp` and
/// writing into `out`; returns the produced files.
pub fn run_every_subcommand(inp: &Path, out: &Path) -> Vec<PathBuf> {
    let i = |f: &str| inp.join(f).display().to_string();
    let o = |f: &str| out.join(f).display().to_string();
    let runs: Vec<Vec<String>> = vec![
        vec!["compute".into(), i("points.txt"), "-o".into(), o("compute.txt")],
        vec!["fan".into(), i("fan.txt"), "-o".into(), o("fan")],
        vec!["genfan".into(), i("genfan.txt"), "-o".into(), o("genfan")],
        vec!["grid".into(), "--rows".into(), "3".into(), "--cols".into(), "4".into(), "-o".into(), o("grid")],
        vec!["perles".into(), "-o".into(), o("perles")],
        vec!["arrangement".into(), i("arr.txt"), "-o".into(), o("arr")],
        vec!["gadget".into(), "--kind".into(), "mul".into(), "--x".into(), "3/2".into(), "--y".into(), "2".into(), "-o".into(), o("gadget")],
        vec!["reduce".into(), i("sys.txt"), "--witness".into(), i("wit.txt"), "-o".into(), o("reduce")],
        vec!["verify".into(), o("reduce")],
        vec!["verify".into(), o("genfan")],
        vec!["recognize".into(), i("k4.txt"), "--grid".into(), "4".into(), "-o".into(), o("k4.txt"), "--stats".into(), o("k4.jsonl")],
        vec!["render".into(), o("fan"), "-o".into(), o("fan.svg")],
    ];
    for args in runs {
        let mut full: Vec<&str> = vec!["--seed", "7"];
        full.extend(args.iter().map(String::as_str));
        let (code, stdout) = pvg(&full);
        assert_eq!(code, 0, "{full:?}: {stdout}");
    }
    let mut files = Vec::new();
    let mut stack = vec![out.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                files.push(p.strip_prefix(out).unwrap().to_path_buf());
            }
        }
    }
    files.sort();
    files
}

/// Every automorphism of `g` as a vertex permutation, by plain backtracking.
pub fn automorphisms(g: &VisibilityGraph) -> Vec<Vec<usize>> {
    fn extend(g: &VisibilityGraph, map: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let v = map.len();
        if v == g.len() {
            out.push(map.clone());
            return;
        }
        for w in 0..g.len() {
            if used[w] || g.degree(v) != g.degree(w) {
                continue;
            }
            if (0..v).all(|u| g.has_edge(u, v) == g.has_edge(map[u], w)) {
                used[w] = true;
                map.push(w);
                extend(g, map, used, out);
                map.pop();
                used[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(g, &mut Vec::new(), &mut vec![false; g.len()], &mut out);
    out
}
