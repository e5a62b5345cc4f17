//! Generalized fans: a fan whose apex starts at infinity, with bundles of
//! equidistant parallel rays and extension segments that pin the vertical
//! order of segment crossings.
//!
//! The construction is drawn with `l` as `y = 0`, `l'` as `y = H` and the
//! apex at the horizontal point at infinity, so every ray is a horizontal
//! row. A projective map fixing `l` then brings the apex to an affine point
//! left of everything.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::construction::{ConstructionOutput, GroupKind, PointBuilder};
use crate::error::{Error, Result};
use crate::exactnum::{rat, Scalar};
use crate::projgeom::{ProjMap, ProjPoint};
use crate::seed::{rational_between, rng_for};

pub const MAX_ATTEMPTS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Faithful,
    Scaled,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "faithful" => Ok(Mode::Faithful),
            "scaled" => Ok(Mode::Scaled),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

/// Bundle size `5n` and extension count `(5n)^4` for `n` segments.
pub fn faithful_params(n: usize) -> (usize, usize) {
    let b = 5 * n;
    (b, b.pow(4))
}

/// Segment from `(bottom, 0)` on `l` to `(top, H)` on `l'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSegment {
    pub name: String,
    pub bottom: Scalar,
    pub top: Scalar,
}

#[derive(Clone, Debug)]
pub struct GenFanSpec {
    pub height: Scalar,
    pub segments: Vec<GenSegment>,
    /// Lowest ray height of each middle bundle.
    pub bundles: Vec<Scalar>,
    /// Single rays `(name, height)`.
    pub rays: Vec<(String, Scalar)>,
    /// Extra labeled points on `l`, `(label, x)`.
    pub marks: Vec<(String, Scalar)>,
    pub bundle_size: usize,
    pub extension_count: usize,
    pub epsilon: Scalar,
    pub mode: Mode,
    pub seed: u64,
}

impl GenFanSpec {
    pub fn new(segments: Vec<GenSegment>, bundle_size: usize, extension_count: usize, epsilon: Scalar) -> Self {
        GenFanSpec {
            height: Scalar::one(),
            segments,
            bundles: Vec::new(),
            rays: Vec::new(),
            marks: Vec::new(),
            bundle_size,
            extension_count,
            epsilon,
            mode: Mode::Scaled,
            seed: 0,
        }
    }

    fn x_at(&self, s: &GenSegment, y: &Scalar) -> Scalar {
        &s.bottom + &(&(&s.top - &s.bottom) * &(y / &self.height))
    }

    fn tag(&self) -> Vec<u8> {
        let mut t = format!(
            "genfan H={} B={} E={} eps={}",
            self.height, self.bundle_size, self.extension_count, self.epsilon
        );
        for s in &self.segments {
            t.push_str(&format!(" {}:{}:{}", s.name, s.bottom, s.top));
        }
        for b in &self.bundles {
            t.push_str(&format!(" b{b}"));
        }
        for (n, h) in &self.rays {
            t.push_str(&format!(" r{n}:{h}"));
        }
        t.into_bytes()
    }
}

/// Crossing of two segments of the spec in the parallel drawing.
#[derive(Clone, Debug)]
pub struct Crossing {
    pub x: Scalar,
    pub y: Scalar,
    pub segments: Vec<usize>,
}

/// Pairwise crossings of the open segments, merged when concurrent.
pub fn crossings(spec: &GenFanSpec) -> Vec<Crossing> {
    let mut map: HashMap<(Scalar, Scalar), Vec<usize>> = HashMap::new();
    let mut order = Vec::new();
    let segs = &spec.segments;
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let dd = &segs[i].bottom - &segs[j].bottom;
            let dt = &segs[i].top - &segs[j].top;
            if dd.signum() * dt.signum() >= 0 {
                continue;
            }
            let y = &spec.height * &(&dd / &(&dd - &dt));
            let x = spec.x_at(&segs[i], &y);
            let e = map.entry((x.clone(), y.clone())).or_insert_with(|| {
                order.push((x, y));
                Vec::new()
            });
            for k in [i, j] {
                if !e.contains(&k) {
                    e.push(k);
                }
            }
        }
    }
    order
        .into_iter()
        .map(|key| {
            let mut segments = map.remove(&key).expect("recorded crossing");
            segments.sort_unstable();
            Crossing { x: key.0, y: key.1, segments }
        })
        .collect()
}

#[derive(Clone, Debug)]
struct Row {
    name: String,
    kind: GroupKind,
    y: Scalar,
    /// Extension rows only reach the auxiliary segments.
    full: bool,
}

fn rows(spec: &GenFanSpec) -> Vec<Row> {
    let (b, e, eps, h) = (spec.bundle_size, spec.extension_count, &spec.epsilon, &spec.height);
    let k = |i: usize| Scalar::from_int(i as i64);
    let mut out = vec![
        Row { name: "ell".into(), kind: GroupKind::Ray, y: Scalar::zero(), full: true },
        Row { name: "ell'".into(), kind: GroupKind::Ray, y: h.clone(), full: true },
    ];
    for i in 1..=b {
        out.push(Row { name: format!("bundle-low-{i}"), kind: GroupKind::BundleRay, y: &k(i) * eps, full: true });
        out.push(Row { name: format!("bundle-high-{i}"), kind: GroupKind::BundleRay, y: h - &(&k(i) * eps), full: true });
    }
    for (m, base) in spec.bundles.iter().enumerate() {
        for i in 0..b {
            out.push(Row {
                name: format!("bundle{}-{}", m + 1, i + 1),
                kind: GroupKind::BundleRay,
                y: base + &(&k(i) * eps),
                full: true,
            });
        }
    }
    for (name, y) in &spec.rays {
        out.push(Row { name: format!("ray-{name}"), kind: GroupKind::Ray, y: y.clone(), full: true });
    }
    for i in 1..=e {
        out.push(Row { name: format!("ext-low-{i}"), kind: GroupKind::Extension, y: &k(b + i) * eps, full: false });
        out.push(Row { name: format!("ext-high-{i}"), kind: GroupKind::Extension, y: h - &(&k(b + i) * eps), full: false });
    }
    out
}

fn validate(spec: &GenFanSpec, cross: &[Crossing]) -> Result<()> {
    let bad = |m: String| Err(Error::InvalidSpec(m));
    if spec.height.signum() <= 0 || spec.epsilon.signum() <= 0 {
        return bad("height and epsilon must be positive".into());
    }
    if spec.bundle_size == 0 || spec.extension_count == 0 {
        return bad("bundle size and extension count must be positive".into());
    }
    if spec.segments.is_empty() {
        return bad("a generalized fan needs at least one segment".into());
    }
    if spec.mode == Mode::Faithful {
        let (b, e) = faithful_params(spec.segments.len());
        if (spec.bundle_size, spec.extension_count) != (b, e) {
            return bad(format!("faithful mode needs B = {b}, E = {e}"));
        }
    }
    let mut names = std::collections::HashSet::new();
    for (i, s) in spec.segments.iter().enumerate() {
        if !names.insert(&s.name) {
            return bad(format!("duplicate segment name {}", s.name));
        }
        for t in &spec.segments[..i] {
            if t.bottom == s.bottom && t.top == s.top {
                return bad(format!("segments {} and {} coincide", t.name, s.name));
            }
        }
    }
    let reach = &Scalar::from_int((spec.bundle_size + spec.extension_count) as i64) * &spec.epsilon;
    let top = &spec.height - &reach;
    if reach.clone() + reach.clone() >= spec.height {
        return bad("the bottom and top bundles with extensions overlap".into());
    }
    for c in cross {
        if c.y <= reach || c.y >= top {
            return bad(format!(
                "crossing at height {} is within (B+E)*epsilon = {reach} of l or l'",
                c.y
            ));
        }
    }
    let span = &Scalar::from_int(spec.bundle_size as i64 - 1) * &spec.epsilon;
    let mut bands: Vec<(Scalar, Scalar)> = Vec::new();
    for base in &spec.bundles {
        let hi = base + &span;
        if *base <= reach || hi >= top {
            return bad(format!("bundle at {base} reaches into the boundary bundles"));
        }
        if let Some(c) = cross.iter().find(|c| c.y >= *base && c.y <= hi) {
            return bad(format!("bundle at {base} contains the crossing at height {}", c.y));
        }
        if let Some(o) = bands.iter().find(|(lo, h2)| !(hi < *lo || *base > *h2)) {
            return bad(format!("bundles at {base} and {} overlap", o.0));
        }
        bands.push((base.clone(), hi));
    }
    for (name, y) in &spec.rays {
        if y.signum() <= 0 || *y >= spec.height {
            return bad(format!("ray {name} is not strictly between l and l'"));
        }
        if bands.iter().any(|(lo, hi)| y >= lo && y <= hi) {
            return bad(format!("ray {name} lies inside a bundle"));
        }
    }
    let all = rows(spec);
    let mut ys: Vec<&Scalar> = all.iter().map(|r| &r.y).collect();
    ys.sort();
    if ys.windows(2).any(|w| w[0] == w[1]) {
        return bad("two rays share a height".into());
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct GenFanOutput {
    pub output: ConstructionOutput,
    /// Map from the parallel drawing to the output coordinates.
    pub transform: ProjMap,
}

impl GenFanOutput {
    /// Coordinates of a labeled point in the parallel drawing.
    pub fn parallel_point(&self, label: &str) -> Result<ProjPoint> {
        let i = self.output.points.index_of(label)?;
        Ok(self.transform.inverse().apply(self.output.points.point(i)))
    }
}

/// Builds the generalized fan and checks that every point of `s0` sees all
/// points off its own ray and off `s0`, moving `s0` further out on failure.
pub fn build_generalized_fan(spec: &GenFanSpec) -> Result<GenFanOutput> {
    let cross = crossings(spec);
    validate(spec, &cross)?;
    let all_rows = rows(spec);
    let one = Scalar::one();
    let mut x0 = spec.segments[0].bottom.clone();
    for s in &spec.segments {
        x0 = std::cmp::min(x0, std::cmp::min(s.bottom.clone(), s.top.clone()));
    }
    let mut rng = rng_for(&spec.tag(), spec.seed);
    let mut gap = Scalar::one();
    let mut last = String::new();
    for attempt in 1..=MAX_ATTEMPTS {
        let jitter = Scalar::from_rational(rational_between(&mut rng, &rat(0, 1), &rat(1, 1)));
        let slant = Scalar::from_rational(rational_between(&mut rng, &rat(0, 1), &rat(1, 2)));
        let s0_bottom = &(&x0 - &Scalar::from_int(4)) - &(&gap + &jitter);
        let mut aux = vec![GenSegment { name: "s0".into(), bottom: s0_bottom.clone(), top: &s0_bottom + &slant }];
        for (i, off) in [(1, 3), (2, 2), (3, 1)] {
            let x = &x0 - &Scalar::from_int(off);
            aux.push(GenSegment { name: format!("s{i}"), bottom: x.clone(), top: x });
        }

        let mut pts: Vec<(ProjPoint, Vec<String>, Vec<(String, GroupKind)>, Option<String>)> = Vec::new();
        for row in &all_rows {
            let segs = aux.iter().chain(spec.segments.iter().filter(|_| row.full));
            for s in segs {
                let x = spec.x_at(s, &row.y);
                pts.push((
                    ProjPoint::affine(x, row.y.clone()),
                    vec![format!("segment:{}", s.name), format!("row:{}", row.name)],
                    vec![(s.name.clone(), GroupKind::Segment), (row.name.clone(), row.kind)],
                    None,
                ));
            }
        }
        for c in &cross {
            let names: Vec<&str> = c.segments.iter().map(|&i| spec.segments[i].name.as_str()).collect();
            let mut roles = vec!["crossing".to_string()];
            roles.extend(names.iter().map(|n| format!("segment:{n}")));
            pts.push((
                ProjPoint::affine(c.x.clone(), c.y.clone()),
                roles,
                names.iter().map(|n| (n.to_string(), GroupKind::Segment)).collect(),
                None,
            ));
        }
        for (label, x) in &spec.marks {
            pts.push((
                ProjPoint::affine(x.clone(), Scalar::zero()),
                vec![format!("mark:{label}")],
                vec![("ell".to_string(), GroupKind::Ray)],
                Some(label.clone()),
            ));
        }

        let mut xmax = Scalar::zero();
        for (p, ..) in &pts {
            xmax = std::cmp::max(xmax, p.x().abs());
        }
        let kappa = (&(&xmax + &one) * &Scalar::from_int(2)).checked_inv()?.pow2_floor();
        let z = Scalar::zero();
        let map = ProjMap::new([
            [one.clone(), z.clone(), z.clone()],
            [z.clone(), one.clone(), z.clone()],
            [-&kappa, z.clone(), one.clone()],
        ])?;

        let mut pb = PointBuilder::new();
        let apex = pb.add(map.apply(&ProjPoint::at_infinity(one.clone(), z.clone())?), "apex");
        pb.set_label(apex, "p");
        for row in &all_rows {
            pb.join_group(apex, &row.name, row.kind);
        }
        for (p, roles, groups, label) in pts {
            let i = pb.add(map.apply(&p), "");
            for r in roles {
                pb.tag(i, &r);
            }
            for (g, k) in groups {
                pb.join_group(i, &g, k);
            }
            if let Some(l) = label {
                pb.set_label(i, &l);
            }
        }
        let mut notes = BTreeMap::new();
        notes.insert("apex_included".into(), "true".into());
        notes.insert("mode".into(), format!("{:?}", spec.mode).to_lowercase());
        notes.insert("bundle_size".into(), spec.bundle_size.to_string());
        notes.insert("extension_count".into(), spec.extension_count.to_string());
        notes.insert("epsilon".into(), spec.epsilon.to_string());
        notes.insert("height".into(), spec.height.to_string());
        notes.insert("kappa".into(), kappa.to_string());
        notes.insert("attempts".into(), attempt.to_string());
        notes.insert("s0".into(), format!("{} {}", aux[0].bottom, aux[0].top));
        notes.insert("crossings".into(), cross.len().to_string());
        let out = pb.finish("generalized_fan", notes)?;
        match s0_failure(&out) {
            None => return Ok(GenFanOutput { output: out, transform: map }),
            Some(msg) => last = msg,
        }
        gap = &gap * &Scalar::from_int(2);
    }
    Err(Error::PlacementFailed { attempts: MAX_ATTEMPTS, msg: last })
}

/// First point of `s0` that misses a point off its ray and off `s0`.
pub fn s0_failure(out: &ConstructionOutput) -> Option<String> {
    let s0 = out.group_indices("s0")?;
    let on_s0: std::collections::HashSet<usize> = s0.iter().copied().collect();
    let roles = &out.provenance.roles;
    for &u in &s0 {
        let label = out.points.label(u);
        let row = roles[label].iter().find_map(|r| r.strip_prefix("row:"))?;
        let on_row: std::collections::HashSet<usize> = out.group_indices(row)?.into_iter().collect();
        for v in 0..out.points.len() {
            if v != u && !on_s0.contains(&v) && !on_row.contains(&v) && !out.graph.has_edge(u, v) {
                return Some(format!("{label} on s0 does not see {}", out.points.label(v)));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single() -> GenFanSpec {
        let seg = GenSegment { name: "S".into(), bottom: Scalar::from_int(0), top: Scalar::from_int(1) };
        GenFanSpec::new(vec![seg], 2, 2, Scalar::from_ratio(1, 16))
    }

    #[test]
    fn one_segment_scaled() {
        let out = build_generalized_fan(&single()).unwrap();
        let o = &out.output;
        assert!(o.audit().is_empty());
        assert!(s0_failure(o).is_none());
        // rows: l, l', 2+2 bundle, 2+2 extension; 5 full segments, 4 auxiliary
        assert_eq!(o.points.len(), 1 + 6 * 5 + 4 * 4);
        let p = out.parallel_point("p").unwrap();
        assert!(!p.is_affine());
    }

    #[test]
    fn crossing_and_bundles() {
        let segs = vec![
            GenSegment { name: "A".into(), bottom: Scalar::from_int(0), top: Scalar::from_int(4) },
            GenSegment { name: "B".into(), bottom: Scalar::from_int(4), top: Scalar::from_int(0) },
        ];
        let mut spec = GenFanSpec::new(segs, 2, 2, Scalar::from_ratio(1, 32));
        let c = crossings(&spec);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].y, Scalar::from_ratio(1, 2));
        spec.bundles = vec![Scalar::from_ratio(1, 4), Scalar::from_ratio(3, 4)];
        let out = build_generalized_fan(&spec).unwrap();
        assert!(out.output.audit().is_empty());
        spec.bundles = vec![Scalar::from_ratio(31, 64)];
        assert!(build_generalized_fan(&spec).is_err());
        spec.bundles.clear();
        spec.epsilon = Scalar::from_ratio(1, 4);
        assert!(build_generalized_fan(&spec).is_err());
    }

    #[test]
    fn faithful_parameters() {
        assert_eq!(faithful_params(1), (5, 625));
        let mut spec = single();
        spec.mode = Mode::Faithful;
        assert!(build_generalized_fan(&spec).is_err());
    }
}
