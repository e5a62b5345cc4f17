//! Fans, grids, arrangement fans and the Perles fan.
//!
//! A fan is given by two lines `l`, `l'` meeting in an affine apex `p` and
//! segments running from `l` to `l'` inside one wedge. Every pairwise crossing
//! spans a ray from `p`; the point set is `p` together with all intersections
//! of rays (including `l` and `l'`) with segments, plus two helper segments
//! `s1`, `s2` close to the apex.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::construction::{ConstructionOutput, GroupKind, PointBuilder};
use crate::error::{Error, Result};
use crate::exactnum::{rat, Rational, Scalar};
use crate::projgeom::{join, meet, on_open_segment, segment_intersection, ProjLine, ProjPoint, Segment, SegmentIntersection};
use crate::seed::{rational_between, rng_for};
use crate::visibility::{maximal_collinear_sets, PointSet};

pub const MAX_ATTEMPTS: usize = 64;

#[derive(Clone, Debug)]
pub struct FanSpec {
    pub l: ProjLine,
    pub l_prime: ProjLine,
    pub segments: Vec<Segment>,
    /// Group names for the segments; `S0, S1, ...` when empty.
    pub names: Vec<String>,
    pub allow_concurrent: bool,
    /// Endpoint positions of `s1` and `s2` as fractions of the apex distance
    /// `h`: `[s1 on l, s1 on l', s2 on l, s2 on l']`. Random when `None`.
    pub helper_fractions: Option<[Rational; 4]>,
    pub seed: u64,
}

impl FanSpec {
    pub fn new(l: ProjLine, l_prime: ProjLine, segments: Vec<Segment>) -> Self {
        FanSpec {
            l,
            l_prime,
            segments,
            names: Vec::new(),
            allow_concurrent: false,
            helper_fractions: None,
            seed: 0,
        }
    }

    fn name(&self, i: usize) -> String {
        self.names.get(i).cloned().unwrap_or_else(|| format!("S{i}"))
    }

    fn tag(&self) -> Vec<u8> {
        let mut t = format!("fan {} {}", fmt_line(&self.l), fmt_line(&self.l_prime));
        for s in &self.segments {
            t.push_str(&format!(" {}:{}", s.p, s.q));
        }
        t.into_bytes()
    }
}

fn fmt_line(l: &ProjLine) -> String {
    let [a, b, c] = l.coeffs();
    format!("[{a},{b},{c}]")
}

type V2 = (Scalar, Scalar);

fn v2(p: &ProjPoint) -> V2 {
    (p.x().clone(), p.y().clone())
}

fn sub2(a: &V2, b: &V2) -> V2 {
    (&a.0 - &b.0, &a.1 - &b.1)
}

fn cross2(a: &V2, b: &V2) -> Scalar {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn dot2(a: &V2, b: &V2) -> Scalar {
    &a.0 * &b.0 + &a.1 * &b.1
}

/// Coordinates `X = apex + s*u + t*v`.
struct Wedge {
    apex: V2,
    u: V2,
    v: V2,
}

impl Wedge {
    fn coords(&self, p: &ProjPoint) -> (Scalar, Scalar) {
        let w = sub2(&v2(p), &self.apex);
        let det = cross2(&self.u, &self.v);
        (&cross2(&w, &self.v) / &det, &cross2(&self.u, &w) / &det)
    }

    fn point(&self, s: &Scalar, t: &Scalar) -> ProjPoint {
        ProjPoint::affine(
            &(&self.apex.0 + &(s * &self.u.0)) + &(t * &self.v.0),
            &(&self.apex.1 + &(s * &self.u.1)) + &(t * &self.v.1),
        )
    }
}

struct Validated {
    apex: ProjPoint,
    wedge: Wedge,
    /// Segments oriented from `l` to `l'`.
    ends: Vec<(ProjPoint, ProjPoint)>,
    crossings: Vec<(ProjPoint, BTreeSet<usize>)>,
}

fn validate(spec: &FanSpec) -> Result<Validated> {
    let apex = meet(&spec.l, &spec.l_prime)?;
    if !apex.is_affine() {
        return Err(Error::InvalidSpec("l and l' must meet in an affine point".into()));
    }
    if spec.segments.is_empty() {
        return Err(Error::InvalidSpec("a fan needs at least one segment".into()));
    }
    let mut ends = Vec::new();
    for (i, s) in spec.segments.iter().enumerate() {
        let (a, b) = if spec.l.contains(&s.p) && spec.l_prime.contains(&s.q) {
            (s.p.clone(), s.q.clone())
        } else if spec.l.contains(&s.q) && spec.l_prime.contains(&s.p) {
            (s.q.clone(), s.p.clone())
        } else {
            return Err(Error::InvalidSpec(format!("segment {} does not run from l to l'", spec.name(i))));
        };
        if a == apex || b == apex {
            return Err(Error::InvalidSpec(format!("segment {} touches the apex", spec.name(i))));
        }
        ends.push((a, b));
    }
    let a0 = v2(&apex);
    let u = sub2(&v2(&ends[0].0), &a0);
    let v = sub2(&v2(&ends[0].1), &a0);
    let mut seen = BTreeSet::new();
    for (i, (a, b)) in ends.iter().enumerate() {
        if dot2(&sub2(&v2(a), &a0), &u).signum() <= 0 || dot2(&sub2(&v2(b), &a0), &v).signum() <= 0 {
            return Err(Error::InvalidSpec(format!(
                "segment {} leaves the wedge of the first segment",
                spec.name(i)
            )));
        }
        for e in [a, b] {
            if !seen.insert(e.to_string()) {
                return Err(Error::InvalidSpec(format!("segments share the endpoint {e}")));
            }
        }
    }
    let mut map: HashMap<ProjPoint, BTreeSet<usize>> = HashMap::new();
    let mut order = Vec::new();
    for i in 0..spec.segments.len() {
        for j in i + 1..spec.segments.len() {
            match segment_intersection(&spec.segments[i], &spec.segments[j]) {
                SegmentIntersection::None => {}
                SegmentIntersection::Overlap => {
                    return Err(Error::InvalidSpec(format!(
                        "segments {} and {} overlap",
                        spec.name(i),
                        spec.name(j)
                    )))
                }
                SegmentIntersection::Point(x) => {
                    let set = map.entry(x.clone()).or_insert_with(|| {
                        order.push(x);
                        BTreeSet::new()
                    });
                    set.insert(i);
                    set.insert(j);
                }
            }
        }
    }
    let crossings: Vec<_> = order
        .into_iter()
        .map(|x| {
            let s = map.remove(&x).expect("recorded crossing");
            (x, s)
        })
        .collect();
    if !spec.allow_concurrent {
        if let Some((x, s)) = crossings.iter().find(|(_, s)| s.len() > 2) {
            return Err(Error::InvalidSpec(format!("{} segments are concurrent at {x}", s.len())));
        }
    }
    Ok(Validated {
        apex,
        wedge: Wedge { apex: a0, u, v },
        ends,
        crossings,
    })
}

fn on_closed(a: &ProjPoint, b: &ProjPoint, x: &ProjPoint) -> bool {
    x == a || x == b || on_open_segment(a, b, x)
}

/// Builds the fan, retrying the helper segments until no collinearity beyond
/// the declared ones touches them.
pub fn build_fan(spec: &FanSpec) -> Result<ConstructionOutput> {
    let val = validate(spec)?;
    let w = &val.wedge;
    let sum = |p: &ProjPoint| {
        let (s, t) = w.coords(p);
        s + t
    };
    let h = val
        .ends
        .iter()
        .flat_map(|(a, b)| [sum(a), sum(b)])
        .chain(val.crossings.iter().map(|(x, _)| sum(x)))
        .min()
        .expect("at least one segment");

    let mut rays: Vec<(Scalar, ProjLine)> = Vec::new();
    let mut seen = BTreeSet::new();
    for (x, _) in &val.crossings {
        let line = join(&val.apex, x)?;
        if seen.insert(fmt_line(&line)) {
            let (s, t) = w.coords(x);
            let frac = &t / &(&s + &t);
            rays.push((frac, line));
        }
    }
    rays.sort_by(|a, b| a.0.cmp(&b.0));
    let mut ray_lines = vec![("l".to_string(), spec.l.clone())];
    ray_lines.extend(rays.into_iter().enumerate().map(|(i, (_, l))| (format!("r{}", i + 1), l)));
    ray_lines.push(("l'".to_string(), spec.l_prime.clone()));

    let mut rng = rng_for(&spec.tag(), spec.seed);
    let attempts = if spec.helper_fractions.is_some() { 1 } else { MAX_ATTEMPTS };
    let mut last = String::new();
    for attempt in 1..=attempts {
        let f = match &spec.helper_fractions {
            Some(f) => f.clone(),
            None => {
                let (a, b) = (rat(1, 5), rat(2, 5));
                let (c, d) = (rat(1, 2), rat(9, 10));
                [
                    rational_between(&mut rng, &a, &b),
                    rational_between(&mut rng, &a, &b),
                    rational_between(&mut rng, &c, &d),
                    rational_between(&mut rng, &c, &d),
                ]
            }
        };
        let z = Scalar::zero();
        let at = |r: &Rational| &h * &Scalar::from_rational(r.clone());
        let mut segs = vec![
            ("s1".to_string(), w.point(&at(&f[0]), &z), w.point(&z, &at(&f[1]))),
            ("s2".to_string(), w.point(&at(&f[2]), &z), w.point(&z, &at(&f[3]))),
        ];
        segs.extend(val.ends.iter().enumerate().map(|(i, (a, b))| (spec.name(i), a.clone(), b.clone())));

        let mut pb = PointBuilder::new();
        let apex = pb.add(val.apex.clone(), "apex");
        pb.set_label(apex, "p");
        for (rname, rline) in &ray_lines {
            pb.join_group(apex, rname, GroupKind::Ray);
            for (sname, a, b) in &segs {
                let x = meet(rline, &join(a, b)?)?;
                if !x.is_affine() || !on_closed(a, b, &x) {
                    return Err(Error::Degenerate(format!("ray {rname} misses segment {sname}")));
                }
                let i = pb.add(x, &format!("segment:{sname}"));
                pb.tag(i, &format!("ray:{rname}"));
                pb.join_group(i, sname, GroupKind::Segment);
                pb.join_group(i, rname, GroupKind::Ray);
            }
        }
        let mut notes = BTreeMap::new();
        notes.insert("apex_included".into(), "true".into());
        notes.insert("h".into(), h.to_string());
        notes.insert("attempts".into(), attempt.to_string());
        notes.insert("crossings".into(), val.crossings.len().to_string());
        notes.insert("interior_rays".into(), (ray_lines.len() - 2).to_string());
        notes.insert(
            "helper_fractions".into(),
            f.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" "),
        );
        let out = pb.finish("fan", notes)?;
        let helpers: BTreeSet<&str> = out
            .labels_with_role("segment:s1")
            .into_iter()
            .chain(out.labels_with_role("segment:s2"))
            .collect();
        match out
            .provenance
            .extra_collinear
            .iter()
            .find(|set| set.iter().any(|l| helpers.contains(l.as_str())))
        {
            None => return Ok(out),
            Some(set) => last = format!("helper point on extra collinear set {set:?}"),
        }
    }
    Err(Error::PlacementFailed { attempts, msg: last })
}

/// The `rows x cols` integer grid with every maximal lattice line declared.
pub fn build_grid(rows: usize, cols: usize) -> Result<ConstructionOutput> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidSpec("grid dimensions must be positive".into()));
    }
    let mut pb = PointBuilder::new();
    let mut pts = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            let p = ProjPoint::int(j as i64, i as i64);
            let k = pb.add(p.clone(), &format!("row:{i}"));
            pb.tag(k, &format!("col:{j}"));
            pts.push(p);
        }
    }
    let ps = PointSet::from_points(pts)?;
    let mut other = 0;
    for line in maximal_collinear_sets(&ps) {
        let (a, b) = (ps.point(line[0]), ps.point(line[1]));
        let name = if a.y() == b.y() {
            format!("row{}", a.y())
        } else if a.x() == b.x() {
            format!("col{}", a.x())
        } else {
            other += 1;
            format!("line{other}")
        };
        for i in line {
            pb.join_group(i, &name, GroupKind::Line);
        }
    }
    let mut notes = BTreeMap::new();
    notes.insert("rows".into(), rows.to_string());
    notes.insert("cols".into(), cols.to_string());
    pb.finish("grid", notes)
}

/// Distinct crossing points of the lines, each with the lines through it.
fn line_crossings(lines: &[ProjLine]) -> Result<Vec<(ProjPoint, BTreeSet<usize>)>> {
    let mut map: HashMap<ProjPoint, BTreeSet<usize>> = HashMap::new();
    let mut order = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if lines[i] == lines[j] {
                return Err(Error::InvalidSpec(format!("lines {i} and {j} coincide")));
            }
            let x = meet(&lines[i], &lines[j])?;
            if !x.is_affine() {
                continue;
            }
            let set = map.entry(x.clone()).or_insert_with(|| {
                order.push(x);
                BTreeSet::new()
            });
            set.insert(i);
            set.insert(j);
        }
    }
    Ok(order
        .into_iter()
        .map(|x| {
            let s = map.remove(&x).expect("recorded crossing");
            (x, s)
        })
        .collect())
}

fn try_wedge(lines: &[ProjLine], crossings: &[ProjPoint], apex: &ProjPoint, d: &V2) -> Option<(ProjLine, ProjLine)> {
    let pa = v2(apex);
    if lines.iter().any(|l| l.contains(apex)) {
        return None;
    }
    let ws: Vec<V2> = crossings.iter().map(|x| sub2(&v2(x), &pa)).collect();
    if ws.iter().any(|w| dot2(w, d).signum() <= 0) {
        return None;
    }
    for i in 0..ws.len() {
        for j in i + 1..ws.len() {
            if cross2(&ws[i], &ws[j]).is_zero() {
                return None;
            }
        }
    }
    let mut sorted = ws.clone();
    sorted.sort_by(|a, b| 0.cmp(&cross2(a, b).signum()));
    let (wmin, wmax) = (sorted[0].clone(), sorted[sorted.len() - 1].clone());
    let spread = if ws.len() == 1 {
        (-&wmin.1, wmin.0.clone())
    } else {
        sub2(&wmax, &wmin)
    };
    let mut eta = Scalar::from_ratio(1, 4);
    for _ in 0..200 {
        let u = (&wmin.0 - &(&eta * &spread.0), &wmin.1 - &(&eta * &spread.1));
        let v = (&wmax.0 + &(&eta * &spread.0), &wmax.1 + &(&eta * &spread.1));
        let inside = ws.iter().all(|w| cross2(&u, w).signum() > 0 && cross2(w, &v).signum() > 0);
        if inside && cross2(&u, &v).signum() > 0 {
            let pu = ProjPoint::affine(&pa.0 + &u.0, &pa.1 + &u.1);
            let pv = ProjPoint::affine(&pa.0 + &v.0, &pa.1 + &v.1);
            let (l, lp) = (join(apex, &pu).ok()?, join(apex, &pv).ok()?);
            let forward = |bound: &ProjLine, dir: &V2| {
                lines.iter().all(|m| match meet(m, bound) {
                    Ok(x) if x.is_affine() => dot2(&sub2(&v2(&x), &pa), dir).signum() > 0,
                    _ => false,
                })
            };
            return (forward(&l, &u) && forward(&lp, &v)).then_some((l, lp));
        }
        eta = &eta / &Scalar::from_int(2);
    }
    None
}

/// Fan whose segments are the parts of `lines` inside a wedge around all
/// crossings, from an apex placed far away in a generic direction.
pub fn build_arrangement_fan(lines: &[ProjLine], names: &[String], seed: u64) -> Result<ConstructionOutput> {
    if lines.len() < 2 {
        return Err(Error::InvalidSpec("an arrangement needs at least two lines".into()));
    }
    let crossings = line_crossings(lines)?;
    if crossings.is_empty() {
        return Err(Error::InvalidSpec("the lines have no affine crossing".into()));
    }
    let pts: Vec<ProjPoint> = crossings.iter().map(|(x, _)| x.clone()).collect();
    let c = v2(&pts[0]);
    let mut extent = Scalar::one();
    for p in &pts {
        extent = extent + p.x().abs() + p.y().abs();
    }
    for k in 0..16i64 {
        let d: V2 = (Scalar::one(), Scalar::from_ratio(2 * k + 3, 5 * k + 11));
        let mut r = &extent * &Scalar::from_int(4);
        for _ in 0..40 {
            let apex = ProjPoint::affine(&c.0 - &(&r * &d.0), &c.1 - &(&r * &d.1));
            if let Some((l, lp)) = try_wedge(lines, &pts, &apex, &d) {
                let segments = lines
                    .iter()
                    .map(|m| Segment::new(meet(m, &l)?, meet(m, &lp)?))
                    .collect::<Result<Vec<_>>>()?;
                let mut spec = FanSpec::new(l, lp, segments);
                spec.names = names.to_vec();
                spec.allow_concurrent = true;
                spec.seed = seed;
                let mut out = build_fan(&spec)?;
                out.provenance.kind = "arrangement_fan".into();
                out.provenance.notes.insert("lines".into(), lines.len().to_string());
                out.provenance.notes.insert("points".into(), out.points.len().to_string());
                return Ok(out);
            }
            r = &r * &Scalar::from_int(2);
        }
    }
    Err(Error::PlacementFailed {
        attempts: 16 * 40,
        msg: "no apex direction gave a valid wedge".into(),
    })
}

/// The nine-point Perles configuration with exact coordinates in Q(sqrt 5):
/// four vertices of an affine regular pentagon, four of the inner pentagram
/// points, and the center. Returns names and points.
pub fn perles_configuration() -> Vec<(String, ProjPoint)> {
    let s5 = Scalar::sqrt(5).expect("5 is square-free");
    let q = |a: i64, b: i64, den: i64| -> Scalar {
        &Scalar::from_ratio(a, den) + &(&Scalar::from_ratio(b, den) * &s5)
    };
    let (c1, c2, r) = (q(-1, 1, 4), q(-1, -1, 4), q(-1, 1, 2));
    let v = [
        ProjPoint::affine(Scalar::one(), Scalar::zero()),
        ProjPoint::affine(c1.clone(), Scalar::one()),
        ProjPoint::affine(c2.clone(), r.clone()),
        ProjPoint::affine(c2, -r),
        ProjPoint::affine(c1, Scalar::from_int(-1)),
    ];
    let diag = |i: usize| join(&v[i % 5], &v[(i + 2) % 5]).expect("distinct vertices");
    let mut out: Vec<(String, ProjPoint)> = (0..4).map(|i| (format!("V{i}"), v[i].clone())).collect();
    for i in 1..5 {
        let x = meet(&diag(i), &diag(i + 1)).expect("diagonals meet");
        out.push((format!("Q{i}"), x));
    }
    out.push(("O".into(), ProjPoint::int(0, 0)));
    out
}

/// The lines of the Perles configuration (maximal collinear sets of size >= 3).
pub fn perles_lines() -> Result<Vec<(Vec<String>, ProjLine)>> {
    let conf = perles_configuration();
    let (names, pts): (Vec<String>, Vec<ProjPoint>) = conf.into_iter().unzip();
    let ps = PointSet::new(names.clone(), pts)?;
    maximal_collinear_sets(&ps)
        .into_iter()
        .map(|set| {
            let line = join(ps.point(set[0]), ps.point(set[1]))?;
            Ok((set.into_iter().map(|i| names[i].clone()).collect(), line))
        })
        .collect()
}

/// Arrangement fan of the Perles lines, with every configuration point tagged.
pub fn build_perles_fan(seed: u64) -> Result<ConstructionOutput> {
    let lines = perles_lines()?;
    let names: Vec<String> = (0..lines.len()).map(|i| format!("perles-L{i}")).collect();
    let just_lines: Vec<ProjLine> = lines.iter().map(|(_, l)| l.clone()).collect();
    let mut out = build_arrangement_fan(&just_lines, &names, seed)?;
    for (name, p) in perles_configuration() {
        let idx = out
            .points
            .points()
            .iter()
            .position(|q| *q == p)
            .ok_or_else(|| Error::Degenerate(format!("configuration point {name} is not a fan point")))?;
        let label = out.points.label(idx).to_string();
        out.provenance.roles.entry(label).or_default().push(format!("perles:{name}"));
    }
    out.provenance.kind = "perles_fan".into();
    for (i, (members, _)) in lines.iter().enumerate() {
        out.provenance
            .notes
            .insert(format!("perles-L{i}"), members.join(" "));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fan_xy(pairs: &[(i64, i64)]) -> FanSpec {
        let l = join(&ProjPoint::int(0, 0), &ProjPoint::int(1, 0)).unwrap();
        let lp = join(&ProjPoint::int(0, 0), &ProjPoint::int(0, 1)).unwrap();
        let segs = pairs
            .iter()
            .map(|&(a, b)| Segment::new(ProjPoint::int(a, 0), ProjPoint::int(0, b)).unwrap())
            .collect();
        FanSpec::new(l, lp, segs)
    }

    #[test]
    fn two_crossing_segments() {
        let out = build_fan(&fan_xy(&[(4, 8), (8, 4)])).unwrap();
        assert_eq!(out.points.len(), 12);
        assert!(out.audit().is_empty());
    }

    #[test]
    fn disjoint_segments() {
        let out = build_fan(&fan_xy(&[(4, 4), (8, 8)])).unwrap();
        assert_eq!(out.points.len(), 9);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(build_fan(&fan_xy(&[(4, 8), (4, 2)])).is_err());
        let mut spec = fan_xy(&[(2, 6), (3, 3), (6, 2)]);
        assert!(build_fan(&spec).is_err());
        spec.allow_concurrent = true;
        assert!(build_fan(&spec).is_ok());
    }

    #[test]
    fn perles_lines_and_fan() {
        let lines = perles_lines().unwrap();
        assert_eq!(lines.len(), 9);
        let sizes: Vec<usize> = lines.iter().map(|(m, _)| m.len()).collect();
        assert_eq!(sizes.iter().filter(|&&s| s == 3).count(), 8);
        assert_eq!(sizes.iter().filter(|&&s| s == 4).count(), 1);
        let out = build_perles_fan(1).unwrap();
        assert_eq!(out.labels_with_role("perles:O").len(), 1);
    }

    #[test]
    fn grid_lines() {
        let out = build_grid(3, 3).unwrap();
        assert_eq!(out.points.len(), 9);
        assert_eq!(out.provenance.groups.len(), 8);
        assert!(out.provenance.extra_collinear.is_empty());
    }
}
