//! Compiler from ordered `x_i + x_j = x_k` / `x_i * x_j = x_k` systems with a
//! witness to a generalized-fan point set whose visibility graph encodes the
//! system, together with a certificate for the vertical order of all gadget
//! points and segment crossings.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::construction::{non_collinear_member, ConstructionOutput};
use crate::error::{Error, Result};
use crate::exactnum::{rat, Scalar};
use crate::formats::content_lines;
use crate::genfan::{build_generalized_fan, crossings, faithful_params, GenFanOutput, GenFanSpec, GenSegment, Mode};
use crate::projgeom::{ProjMap, ProjPoint};
use crate::seed::{rational_between, rng_for};
use crate::visibility::visibility_graph;
use crate::vonstaudt::{build_gadget, place_anchors, GadgetInstance, GadgetKind, LineCoordinateFrame};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub kind: GadgetKind,
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.kind, self.i, self.j, self.k)
    }
}

/// Variables `x_1 .. x_n` with `x_1 = 1`, and constraints in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShorSystem {
    pub n: usize,
    pub constraints: Vec<Constraint>,
}

impl fmt::Display for ShorSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "VARS {}", self.n)?;
        for c in &self.constraints {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

pub fn parse_system(text: &str) -> Result<ShorSystem> {
    let mut n = None;
    let mut constraints = Vec::new();
    for (line, content) in content_lines(text) {
        let err = |msg: String| Error::ParseLine { line, msg };
        let f: Vec<&str> = content.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| err(format!("bad index {s:?}")));
        match f[0] {
            "VARS" => {
                if n.is_some() || f.len() != 2 {
                    return Err(err("expected a single `VARS n` line".into()));
                }
                let v = num(f[1])?;
                if v == 0 {
                    return Err(err("need at least one variable".into()));
                }
                n = Some(v);
            }
            "ADD" | "MUL" => {
                let n = n.ok_or_else(|| err("constraint before `VARS`".into()))?;
                if f.len() != 4 {
                    return Err(err(format!("expected `{} i j k`", f[0])));
                }
                let (i, j, k) = (num(f[1])?, num(f[2])?, num(f[3])?);
                if i == 0 || k > n {
                    return Err(err(format!("index out of range 1..={n}")));
                }
                if i > j {
                    return Err(err(format!("need i <= j, got {i} > {j}")));
                }
                if j >= k {
                    return Err(err(format!("need j < k, got {j} >= {k}")));
                }
                let kind = if f[0] == "ADD" { GadgetKind::Add } else { GadgetKind::Mul };
                constraints.push(Constraint { kind, i, j, k });
            }
            other => return Err(err(format!("unknown keyword {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| Error::Parse("missing `VARS n`".into()))?;
    Ok(ShorSystem { n, constraints })
}

/// Values of `x_1 .. x_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub values: Vec<Scalar>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            writeln!(f, "x_{} = {v}", i + 1)?;
        }
        Ok(())
    }
}

/// Parses `x_i = value` lines; every variable `1..=n` must appear once.
pub fn parse_witness(text: &str, n: usize) -> Result<Witness> {
    let mut values: Vec<Option<Scalar>> = vec![None; n];
    for (line, content) in content_lines(text) {
        let err = |msg: String| Error::ParseLine { line, msg };
        let (lhs, rhs) = content
            .split_once('=')
            .ok_or_else(|| err("expected `x_i = value`".into()))?;
        let idx = lhs.trim().trim_start_matches('x').trim_start_matches('_');
        let i: usize = idx.parse().map_err(|_| err(format!("bad variable {:?}", lhs.trim())))?;
        if i == 0 || i > n {
            return Err(err(format!("variable x_{i} out of range 1..={n}")));
        }
        let v: Scalar = rhs.trim().parse().map_err(|e: Error| err(e.to_string()))?;
        if values[i - 1].replace(v).is_some() {
            return Err(err(format!("x_{i} given twice")));
        }
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::Parse(format!("x_{} missing", i + 1))))
        .collect::<Result<_>>()?;
    Ok(Witness { values })
}

fn apply(kind: GadgetKind, x: &Scalar, y: &Scalar) -> Scalar {
    match kind {
        GadgetKind::Add => x + y,
        GadgetKind::Mul => x * y,
    }
}

impl Witness {
    /// First violated requirement: `x_1 = 1`, strict increase, constraints.
    pub fn check(&self, sys: &ShorSystem) -> Result<()> {
        if self.values.len() != sys.n {
            return Err(Error::Witness(format!("{} values for {} variables", self.values.len(), sys.n)));
        }
        if self.values[0] != Scalar::one() {
            return Err(Error::Witness(format!("x_1 = {} but must be 1", self.values[0])));
        }
        if let Some(i) = (1..sys.n).find(|&i| self.values[i] <= self.values[i - 1]) {
            return Err(Error::Witness(format!("x_{} <= x_{}", i + 1, i)));
        }
        for (ci, c) in sys.constraints.iter().enumerate() {
            let got = apply(c.kind, &self.values[c.i - 1], &self.values[c.j - 1]);
            if got != self.values[c.k - 1] {
                return Err(Error::Witness(format!(
                    "constraint {} ({c}): {} {} {} = {got}, but x_{} = {}",
                    ci + 1,
                    self.values[c.i - 1],
                    if c.kind == GadgetKind::Add { "+" } else { "*" },
                    self.values[c.j - 1],
                    c.k,
                    self.values[c.k - 1]
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ReduceParams {
    pub mode: Mode,
    pub bundle_size: usize,
    pub extension_count: usize,
    pub seed: u64,
}

impl ReduceParams {
    pub fn scaled(bundle_size: usize, extension_count: usize, seed: u64) -> Self {
        ReduceParams { mode: Mode::Scaled, bundle_size, extension_count, seed }
    }

    /// Bundle parameters for `segments` fan segments.
    pub fn faithful(segments: usize, seed: u64) -> Self {
        let (b, e) = faithful_params(segments);
        ReduceParams { mode: Mode::Faithful, bundle_size: b, extension_count: e, seed }
    }
}

/// One gadget in placement order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetRecord {
    /// 1-based placement position (additions first).
    pub position: usize,
    /// 1-based index of the constraint in the input system.
    pub constraint: usize,
    pub kind: GadgetKind,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// Role name (`a, b, f, c, d, e, x, y, z`) to point label.
    pub roles: BTreeMap<String, String>,
}

/// Height order of the construction in the parallel drawing, from the top:
/// anchors on `l_inf`, gadget interior points (latest gadget highest),
/// cross-gadget crossing groups, and finally the points of `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingCertificate {
    pub height: String,
    /// Rows of the map from the parallel drawing to the output coordinates.
    pub transform: Vec<Vec<String>>,
    pub gadgets: Vec<GadgetRecord>,
    /// Labels that must lie on `l_inf`.
    pub l_inf: Vec<String>,
    /// Gadget positions from the last placed to the first.
    pub chain: Vec<usize>,
    /// Crossing groups `(position, labels)`: crossings of gadget `position`'s
    /// segments with earlier ones, from `position = 2` upwards.
    pub intersections: Vec<(usize, Vec<String>)>,
    /// Labels that must lie on `l`.
    pub ell: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub construction: ConstructionOutput,
    pub certificate: OrderingCertificate,
    pub system: ShorSystem,
    pub witness: Witness,
}

fn role_point<'a>(g: &'a GadgetInstance, role: &str) -> Option<&'a ProjPoint> {
    Some(match role {
        "a" => &g.a,
        "b" => &g.b,
        "f" => g.f.as_ref()?,
        "c" => &g.c,
        "d" => &g.d,
        "e" => &g.e,
        "x" => &g.x,
        "y" => &g.y,
        "z" => &g.z,
        _ => return None,
    })
}

const ROLES: [&str; 9] = ["a", "b", "f", "c", "d", "e", "x", "y", "z"];

/// Compiles the system with the witness. Gadgets are placed additions
/// first, each anchored further right than all earlier ones.
pub fn compile(sys: &ShorSystem, w: &Witness, params: &ReduceParams) -> Result<ReductionOutput> {
    w.check(sys)?;
    if sys.constraints.is_empty() {
        return Err(Error::InvalidSpec("the system has no constraints".into()));
    }
    let mut order: Vec<usize> = (0..sys.constraints.len())
        .filter(|&i| sys.constraints[i].kind == GadgetKind::Add)
        .collect();
    order.extend((0..sys.constraints.len()).filter(|&i| sys.constraints[i].kind == GadgetKind::Mul));

    let frame = LineCoordinateFrame::canonical();
    let mut rng = rng_for(sys.to_string().as_bytes(), params.seed);
    let mut gadgets: Vec<GadgetInstance> = Vec::new();
    for &ci in &order {
        let c = &sys.constraints[ci];
        let x = frame.locate(&w.values[c.i - 1]);
        let y = frame.locate(&w.values[c.j - 1]);
        let (a, b) = place_anchors(&gadgets, &frame, c.kind, &x, &y, &mut rng)
            .map_err(|e| Error::Degenerate(format!("constraint {} ({c}): {e}", ci + 1)))?;
        let g = build_gadget(c.kind, &frame, &x, &y, &a, &b)?;
        if frame.value(&g.z)? != w.values[c.k - 1] {
            return Err(Error::Witness(format!("gadget for constraint {} does not reproduce x_{}", ci + 1, c.k)));
        }
        gadgets.push(g);
    }

    let mut segments = Vec::new();
    let mut owner = Vec::new();
    for (pos, g) in gadgets.iter().enumerate() {
        for (name, foot, anchor) in g.segments() {
            segments.push(GenSegment {
                name: format!("g{}:{name}", pos + 1),
                bottom: foot.x().clone(),
                top: anchor.x().clone(),
            });
            owner.push(pos);
        }
    }
    let mut spec = GenFanSpec::new(segments, params.bundle_size, params.extension_count, Scalar::one());
    spec.mode = params.mode;
    spec.seed = params.seed;
    let cross = crossings(&spec);

    // interior points and cross-gadget groups, bottom to top
    let mut groups: Vec<Vec<Scalar>> = vec![Vec::new(); gadgets.len()];
    let mut interior = Vec::new();
    let mut heights = vec![Scalar::zero(), Scalar::one()];
    for c in &cross {
        let owners: Vec<usize> = c.segments.iter().map(|&s| owner[s]).collect();
        let top = *owners.iter().max().expect("two segments");
        if owners.iter().all(|&o| o == top) {
            interior.push(c.y.clone());
        } else {
            groups[top].push(c.y.clone());
        }
        heights.push(c.y.clone());
    }
    heights.sort();
    heights.dedup();
    let gap = heights
        .windows(2)
        .map(|p| &p[1] - &p[0])
        .min()
        .expect("at least two heights");
    let slots = Scalar::from_int(4 * (params.bundle_size + params.extension_count + 1) as i64);
    let jitter = Scalar::from_rational(rational_between(&mut rng, &rat(1, 2), &rat(1, 1)));
    let eps = (&(&gap / &slots) * &jitter).pow2_floor();
    spec.epsilon = eps.clone();

    let mut stack: Vec<&Vec<Scalar>> = groups.iter().skip(1).rev().filter(|g| !g.is_empty()).collect();
    stack.push(&interior);
    let half_band = &(&Scalar::from_int(params.bundle_size as i64 - 1) * &eps) / &Scalar::from_int(2);
    for pair in stack.windows(2) {
        let below = pair[0].iter().max().expect("non-empty group");
        let above = pair[1].iter().min().expect("non-empty group");
        let mid = &(below + above) / &Scalar::from_int(2);
        spec.bundles.push(&(&(&mid - &half_band) / &eps).ceil_int() * &eps);
    }
    for (pos, g) in gadgets.iter().enumerate() {
        let mut seen: Vec<&Scalar> = Vec::new();
        for (role, p) in [("c", &g.c), ("d", &g.d), ("e", &g.e)] {
            if seen.contains(&p.y()) {
                let last = spec.rays.last_mut().expect("ray of equal height");
                last.0.push_str(role);
                continue;
            }
            seen.push(p.y());
            spec.rays.push((format!("g{}-{role}", pos + 1), p.y().clone()));
        }
    }
    spec.marks.push(("zero".into(), Scalar::zero()));
    for (i, v) in w.values.iter().enumerate() {
        spec.marks.push((format!("x{}", i + 1), v.clone()));
    }

    let fan = build_generalized_fan(&spec)?;
    let GenFanOutput { output: mut construction, transform } = fan;
    let index: HashMap<&ProjPoint, usize> =
        construction.points.points().iter().enumerate().map(|(i, p)| (p, i)).collect();
    let label_of = |p: &ProjPoint| -> Result<String> {
        let q = transform.apply(p);
        index
            .get(&q)
            .map(|&i| construction.points.label(i).to_string())
            .ok_or_else(|| Error::Degenerate(format!("gadget point {p} is missing from the construction")))
    };
    let mut records = Vec::new();
    let mut extra_roles: Vec<(String, String)> = Vec::new();
    for (pos, (g, &ci)) in gadgets.iter().zip(&order).enumerate() {
        let c = &sys.constraints[ci];
        let mut roles = BTreeMap::new();
        for r in ROLES {
            if let Some(p) = role_point(g, r) {
                let label = label_of(p)?;
                extra_roles.push((label.clone(), format!("g{}:{r}", pos + 1)));
                roles.insert(r.to_string(), label);
            }
        }
        records.push(GadgetRecord {
            position: pos + 1,
            constraint: ci + 1,
            kind: c.kind,
            i: c.i,
            j: c.j,
            k: c.k,
            roles,
        });
    }
    let mut intersections = Vec::new();
    for (pos, _) in gadgets.iter().enumerate().skip(1) {
        let mut labels = Vec::new();
        for c in &cross {
            let owners: Vec<usize> = c.segments.iter().map(|&s| owner[s]).collect();
            if owners.iter().max() == Some(&pos) && owners.iter().any(|&o| o != pos) {
                labels.push(label_of(&ProjPoint::affine(c.x.clone(), c.y.clone()))?);
            }
        }
        intersections.push((pos + 1, labels));
    }
    for (label, role) in extra_roles {
        construction.provenance.roles.entry(label).or_default().push(role);
    }
    construction.provenance.kind = "reduction".into();
    construction.provenance.notes.insert("gadgets".into(), gadgets.len().to_string());
    construction.provenance.notes.insert("points".into(), construction.points.len().to_string());

    let l_inf = records
        .iter()
        .flat_map(|r| ["a", "b", "f"].into_iter().filter_map(|k| r.roles.get(k).cloned()))
        .collect();
    let mut ell = vec!["zero".to_string()];
    ell.extend((1..=sys.n).map(|i| format!("x{i}")));
    let certificate = OrderingCertificate {
        height: spec.height.to_string(),
        transform: transform.rows().iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
        gadgets: records,
        l_inf,
        chain: (1..=gadgets.len()).rev().collect(),
        intersections,
        ell,
    };
    Ok(ReductionOutput {
        construction,
        certificate,
        system: sys.clone(),
        witness: w.clone(),
    })
}

/// Outcome of `verify_output`: each check in order, and the first failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<(String, bool)>,
    pub failure: Option<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, ok) in &self.checks {
            writeln!(f, "{} {name}", if *ok { "PASS" } else { "FAIL" })?;
        }
        match &self.failure {
            None => writeln!(f, "verdict: pass"),
            Some(m) => writeln!(f, "verdict: fail: {m}"),
        }
    }
}

fn parse_transform(cert: &OrderingCertificate) -> Result<ProjMap> {
    if cert.transform.len() != 3 || cert.transform.iter().any(|r| r.len() != 3) {
        return Err(Error::Parse("certificate transform must be 3x3".into()));
    }
    let cell = |i: usize, j: usize| cert.transform[i][j].parse::<Scalar>();
    let row = |i: usize| -> Result<[Scalar; 3]> { Ok([cell(i, 0)?, cell(i, 1)?, cell(i, 2)?]) };
    ProjMap::new([row(0)?, row(1)?, row(2)?])
}

fn check_groups(out: &ReductionOutput) -> std::result::Result<(), String> {
    let c = &out.construction;
    for g in &c.provenance.groups {
        if let Some(bad) = non_collinear_member(&c.points, &g.members) {
            return Err(format!("{bad} is off the declared line {}", g.name));
        }
    }
    Ok(())
}

fn check_graph(out: &ReductionOutput) -> std::result::Result<(), String> {
    let c = &out.construction;
    let g = visibility_graph(&c.points);
    match g.first_difference(&c.graph).map_err(|e| e.to_string())? {
        None => Ok(()),
        Some((u, v, true)) => Err(format!("{u} and {v} see each other but the graph has no edge")),
        Some((u, v, false)) => Err(format!("the graph has edge {u}-{v} but the sightline is blocked")),
    }
}

fn check_readback(out: &ReductionOutput) -> std::result::Result<(), String> {
    let ps = &out.construction.points;
    let pt = |l: &str| ps.index_of(l).map(|i| ps.point(i).clone()).map_err(|e| e.to_string());
    let frame = LineCoordinateFrame::new(pt("zero")?, pt("x1")?, pt("p")?).map_err(|e| e.to_string())?;
    let sys = &out.system;
    if out.witness.values.len() != sys.n {
        return Err(format!("witness has {} values for {} variables", out.witness.values.len(), sys.n));
    }
    let mut read = Vec::with_capacity(sys.n);
    for i in 1..=sys.n {
        let v = frame.value(&pt(&format!("x{i}"))?).map_err(|e| format!("x{i}: {e}"))?;
        if v != out.witness.values[i - 1] {
            return Err(format!("x{i} reads back as {v} but the witness says {}", out.witness.values[i - 1]));
        }
        read.push(v);
    }
    for (ci, c) in sys.constraints.iter().enumerate() {
        let got = apply(c.kind, &read[c.i - 1], &read[c.j - 1]);
        if got != read[c.k - 1] {
            return Err(format!("constraint {} ({c}) fails on read-back values: {got} != {}", ci + 1, read[c.k - 1]));
        }
    }
    Ok(())
}

fn check_certificate(out: &ReductionOutput) -> std::result::Result<(), String> {
    let cert = &out.certificate;
    let ps = &out.construction.points;
    let inv = parse_transform(cert).map_err(|e| e.to_string())?.inverse();
    let h: Scalar = cert.height.parse().map_err(|e: Error| e.to_string())?;
    let y = |l: &str| -> std::result::Result<Scalar, String> {
        let i = ps.index_of(l).map_err(|e| e.to_string())?;
        let q = inv.apply(ps.point(i));
        q.xy().map(|(_, y)| y.clone()).map_err(|_| format!("{l} is at infinity in the parallel drawing"))
    };
    for l in &cert.l_inf {
        if y(l)? != h {
            return Err(format!("(1) {l} is not on l_inf"));
        }
    }
    let by_pos: HashMap<usize, &GadgetRecord> = cert.gadgets.iter().map(|g| (g.position, g)).collect();
    let role = |g: &GadgetRecord, r: &str| -> std::result::Result<Scalar, String> {
        let l = g.roles.get(r).ok_or_else(|| format!("gadget {} has no role {r}", g.position))?;
        y(l)
    };
    let mut floor: Option<(Scalar, String)> = None;
    for &pos in &cert.chain {
        let g = by_pos.get(&pos).ok_or_else(|| format!("chain names unknown gadget {pos}"))?;
        let (e, d, c) = (role(g, "e")?, role(g, "d")?, role(g, "c")?);
        let top = e.clone();
        match g.kind {
            GadgetKind::Mul => {
                if !(e > d && d > c) {
                    return Err(format!("(2) gadget {pos}: heights of e > d > c violated"));
                }
            }
            GadgetKind::Add => {
                if !(e > c && c == d) {
                    return Err(format!("(3) gadget {pos}: heights of e > c = d violated"));
                }
            }
        }
        if let Some((f, prev)) = &floor {
            if top >= *f {
                return Err(format!("(2) gadget {pos} reaches gadget {prev}"));
            }
        }
        if top >= h {
            return Err(format!("(2) gadget {pos} is not below l_inf"));
        }
        floor = Some((c.min(d), pos.to_string()));
    }
    let mut ceiling = floor.map(|(f, _)| f).unwrap_or_else(|| h.clone());
    for (pos, labels) in &cert.intersections {
        if labels.is_empty() {
            continue;
        }
        let ys = labels.iter().map(|l| y(l)).collect::<std::result::Result<Vec<_>, _>>()?;
        let hi = ys.iter().max().expect("non-empty").clone();
        let lo = ys.iter().min().expect("non-empty").clone();
        if hi >= ceiling {
            return Err(format!("(4) crossing group I{pos} is not below the groups above it"));
        }
        if lo.signum() <= 0 {
            return Err(format!("(4) crossing group I{pos} reaches l"));
        }
        ceiling = lo;
    }
    for l in &cert.ell {
        if !y(l)?.is_zero() {
            return Err(format!("(5) {l} is not on l"));
        }
    }
    Ok(())
}

/// Re-derives everything from the coordinates: declared lines, the graph,
/// witness read-back and constraint checks, and the height certificate.
pub fn verify_output(out: &ReductionOutput) -> VerifyReport {
    type Check = fn(&ReductionOutput) -> std::result::Result<(), String>;
    let checks: [(&str, Check); 4] = [
        ("declared collinear groups", check_groups),
        ("visibility graph", check_graph),
        ("witness read-back", check_readback),
        ("ordering certificate", check_certificate),
    ];
    let mut report = VerifyReport { checks: Vec::new(), failure: None };
    for (name, f) in checks {
        let r = f(out);
        report.checks.push((name.to_string(), r.is_ok()));
        if let Err(m) = r {
            if report.failure.is_none() {
                report.failure = Some(format!("{name}: {m}"));
            }
        }
    }
    report
}

pub const OUTPUT_FILES: [&str; 6] = [
    "points.txt",
    "graph.txt",
    "provenance.json",
    "certificate.json",
    "system.txt",
    "witness.txt",
];

pub fn write_output(out: &ReductionOutput, dir: &Path) -> Result<()> {
    out.construction.write_dir(dir)?;
    let mut cert = serde_json::to_string_pretty(&out.certificate)?;
    cert.push('\n');
    fs::write(dir.join("certificate.json"), cert)?;
    fs::write(dir.join("system.txt"), out.system.to_string())?;
    fs::write(dir.join("witness.txt"), out.witness.to_string())?;
    Ok(())
}

pub fn read_output(dir: &Path) -> Result<ReductionOutput> {
    let read = |f: &str| fs::read_to_string(dir.join(f));
    let construction = ConstructionOutput::read_dir(dir)?;
    let certificate: OrderingCertificate = serde_json::from_str(&read("certificate.json")?)?;
    let system = parse_system(&read("system.txt")?)?;
    let witness = parse_witness(&read("witness.txt")?, system.n)?;
    Ok(ReductionOutput {
        construction,
        certificate,
        system,
        witness,
    })
}
