//! Cross-ratio coordinates on a line and the addition and multiplication
//! gadgets that realize `x + y` and `x * y` with points and segments.
//!
//! Gadgets live between the carrier line `l` and a second line `l_inf`
//! through the frame's infinity point. In the canonical drawing `l` is the
//! x-axis, `l_inf` is `y = 1`, and both meet at the horizontal point at
//! infinity, so a point's value is simply its x-coordinate.

use std::collections::BTreeMap;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Rational, Scalar};
use crate::construction::{ConstructionOutput, GroupKind, PointBuilder};
use crate::seed::{rational_between, rng_for};
use crate::projgeom::{cross3, cross_ratio, join, meet, on_open_segment, ProjLine, ProjMap, ProjPoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineCoordinateFrame {
    pub line: ProjLine,
    pub zero: ProjPoint,
    pub one: ProjPoint,
    pub inf: ProjPoint,
}

impl LineCoordinateFrame {
    pub fn new(zero: ProjPoint, one: ProjPoint, inf: ProjPoint) -> Result<Self> {
        if zero == one || zero == inf || one == inf {
            return Err(Error::Degenerate("frame points must be distinct".into()));
        }
        let line = join(&zero, &one)?;
        if !line.contains(&inf) {
            return Err(Error::NotCollinear(format!("{inf} is not on the frame line")));
        }
        Ok(LineCoordinateFrame { line, zero, one, inf })
    }

    /// The x-axis with `0 = (0,0)`, `1 = (1,0)` and the horizontal direction
    /// as infinity.
    pub fn canonical() -> Self {
        let inf = ProjPoint::at_infinity(Scalar::one(), Scalar::zero()).expect("nonzero direction");
        Self::new(ProjPoint::int(0, 0), ProjPoint::int(1, 0), inf).expect("canonical frame")
    }

    pub fn is_canonical(&self) -> bool {
        *self == Self::canonical()
    }

    /// `(p, 1; 0, inf)`.
    pub fn value(&self, p: &ProjPoint) -> Result<Scalar> {
        if !self.line.contains(p) {
            return Err(Error::NotCollinear(format!("{p} is not on the frame line")));
        }
        if *p == self.inf {
            return Err(Error::Degenerate("the infinity point has no value".into()));
        }
        cross_ratio(p, &self.one, &self.zero, &self.inf)
    }

    /// The point of the frame line with the given value.
    pub fn locate(&self, v: &Scalar) -> ProjPoint {
        // write one = alpha*zero + beta*inf; then value(alpha*zero + v*beta*inf) = v
        let (z, o, i) = (self.zero.coords(), self.one.coords(), self.inf.coords());
        let zi = cross3(z, i);
        let k = zi.iter().position(|s| !s.is_zero()).expect("distinct points");
        let alpha = &cross3(o, i)[k] / &zi[k];
        let beta = &cross3(z, o)[k] / &zi[k];
        let vb = v * &beta;
        let coords = [0, 1, 2].map(|j| &(&alpha * &z[j]) + &(&vb * &i[j]));
        ProjPoint::from_vec(coords).expect("combination of independent points")
    }

    pub fn transformed(&self, m: &ProjMap) -> Self {
        Self::new(m.apply(&self.zero), m.apply(&self.one), m.apply(&self.inf)).expect("maps preserve frames")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GadgetKind {
    Add,
    Mul,
}

impl std::fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GadgetKind::Add => "ADD",
            GadgetKind::Mul => "MUL",
        })
    }
}

/// A built gadget. Segments run from a point of `l` to an anchor on `l_inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetInstance {
    pub kind: GadgetKind,
    pub zero: ProjPoint,
    pub one: ProjPoint,
    pub inf: ProjPoint,
    pub x: ProjPoint,
    pub y: ProjPoint,
    pub z: ProjPoint,
    pub a: ProjPoint,
    pub b: ProjPoint,
    /// Third anchor, multiplication only.
    pub f: Option<ProjPoint>,
    pub c: ProjPoint,
    pub d: ProjPoint,
    pub e: ProjPoint,
}

impl GadgetInstance {
    /// Named segments `(name, foot on l, anchor)`.
    pub fn segments(&self) -> Vec<(String, ProjPoint, ProjPoint)> {
        let s = |n: &str, p: &ProjPoint, q: &ProjPoint| (n.to_string(), p.clone(), q.clone());
        match self.kind {
            GadgetKind::Mul => vec![
                s("x-a", &self.x, &self.a),
                s("z-a", &self.z, &self.a),
                s("1-b", &self.one, &self.b),
                s("y-b", &self.y, &self.b),
                s("0-f", &self.zero, self.f.as_ref().expect("multiplication has f")),
            ],
            GadgetKind::Add => vec![
                s("0-a", &self.zero, &self.a),
                s("y-a", &self.y, &self.a),
                s("x-b", &self.x, &self.b),
                s("z-b", &self.z, &self.b),
            ],
        }
    }

    /// Declared collinear groups, by role name.
    pub fn groups(&self) -> Vec<(String, Vec<ProjPoint>)> {
        let g = |n: &str, ps: &[&ProjPoint]| (n.to_string(), ps.iter().map(|p| (*p).clone()).collect());
        let (x, y, z, a, b) = (&self.x, &self.y, &self.z, &self.a, &self.b);
        let (c, d, e, o, one) = (&self.c, &self.d, &self.e, &self.zero, &self.one);
        match self.kind {
            GadgetKind::Mul => {
                let f = self.f.as_ref().expect("multiplication has f");
                vec![
                    g("x-a", &[x, c, a]),
                    g("z-a", &[z, d, e, a]),
                    g("1-b", &[one, c, e, b]),
                    g("y-b", &[y, d, b]),
                    g("0-f", &[o, c, d, f]),
                ]
            }
            GadgetKind::Add => vec![
                g("0-a", &[o, c, e, a]),
                g("y-a", &[y, d, a]),
                g("x-b", &[x, c, b]),
                g("z-b", &[z, d, e, b]),
                g("c-d", &[c, d, &self.inf]),
            ],
        }
    }

    pub fn interior(&self) -> [&ProjPoint; 3] {
        [&self.c, &self.d, &self.e]
    }

    pub fn anchors(&self) -> Vec<&ProjPoint> {
        let mut v = vec![&self.a, &self.b];
        v.extend(self.f.as_ref());
        v
    }

    /// Incidence problems: groups that are not collinear.
    pub fn audit(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, pts) in self.groups() {
            let mut distinct: Vec<&ProjPoint> = Vec::new();
            for p in &pts {
                if !distinct.contains(&p) {
                    distinct.push(p);
                }
            }
            if distinct.len() < 3 {
                continue;
            }
            let line = join(distinct[0], distinct[1]).expect("distinct points");
            if let Some(p) = distinct[2..].iter().find(|p| !line.contains(p)) {
                out.push(format!("{} gadget group {name}: {p} off the line", self.kind));
            }
        }
        out
    }

    pub fn transformed(&self, m: &ProjMap) -> Self {
        let t = |p: &ProjPoint| m.apply(p);
        GadgetInstance {
            kind: self.kind,
            zero: t(&self.zero),
            one: t(&self.one),
            inf: t(&self.inf),
            x: t(&self.x),
            y: t(&self.y),
            z: t(&self.z),
            a: t(&self.a),
            b: t(&self.b),
            f: self.f.as_ref().map(t),
            c: t(&self.c),
            d: t(&self.d),
            e: t(&self.e),
        }
    }
}

fn anchor_line(frame: &LineCoordinateFrame, a: &ProjPoint, b: &ProjPoint) -> Result<ProjLine> {
    if a == b {
        return Err(Error::Degenerate("anchors coincide".into()));
    }
    let l_inf = join(a, b)?;
    if !l_inf.contains(&frame.inf) || l_inf == frame.line {
        return Err(Error::Degenerate(
            "anchors must span a line through the frame's infinity point other than the frame line".into(),
        ));
    }
    Ok(l_inf)
}

fn check_on_line(frame: &LineCoordinateFrame, p: &ProjPoint, what: &str) -> Result<()> {
    if !frame.line.contains(p) || *p == frame.inf {
        return Err(Error::Degenerate(format!("{what} must be a finite point of the frame line")));
    }
    Ok(())
}

fn meet_of(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint, s: &ProjPoint, what: &str) -> Result<ProjPoint> {
    let l1 = join(p, q).map_err(|_| Error::Degenerate(format!("{what}: coincident points")))?;
    let l2 = join(r, s).map_err(|_| Error::Degenerate(format!("{what}: coincident points")))?;
    meet(&l1, &l2).map_err(|_| Error::Degenerate(format!("{what}: lines coincide")))
}

/// Multiplication: `c = (a x) ∧ (b 1)`, `d = (b y) ∧ (0 c)`, `z = l ∧ (d a)`,
/// plus `f = (0 c) ∧ l_inf` and `e = (a z) ∧ (b 1)`.
pub fn mul_gadget(
    frame: &LineCoordinateFrame,
    x: &ProjPoint,
    y: &ProjPoint,
    a: &ProjPoint,
    b: &ProjPoint,
) -> Result<GadgetInstance> {
    let l_inf = anchor_line(frame, a, b)?;
    check_on_line(frame, x, "x")?;
    check_on_line(frame, y, "y")?;
    let (zero, one) = (&frame.zero, &frame.one);
    let c = meet_of(a, x, b, one, "c")?;
    let d = meet_of(b, y, zero, &c, "d")?;
    let z = meet(&frame.line, &join(&d, a).map_err(|_| Error::Degenerate("d = a".into()))?)?;
    let f = meet(&join(zero, &c).map_err(|_| Error::Degenerate("c = 0".into()))?, &l_inf)?;
    let e = meet_of(a, &z, b, one, "e")?;
    Ok(GadgetInstance {
        kind: GadgetKind::Mul,
        zero: zero.clone(),
        one: one.clone(),
        inf: frame.inf.clone(),
        x: x.clone(),
        y: y.clone(),
        z,
        a: a.clone(),
        b: b.clone(),
        f: Some(f),
        c,
        d,
        e,
    })
}

/// Addition: `c = (0 a) ∧ (x b)`, `d = (c inf) ∧ (y a)`, `z = l ∧ (d b)`,
/// `e = (a 0) ∧ (b z)`; `c` and `d` share a line through `inf`.
pub fn add_gadget(
    frame: &LineCoordinateFrame,
    x: &ProjPoint,
    y: &ProjPoint,
    a: &ProjPoint,
    b: &ProjPoint,
) -> Result<GadgetInstance> {
    anchor_line(frame, a, b)?;
    check_on_line(frame, x, "x")?;
    check_on_line(frame, y, "y")?;
    let zero = &frame.zero;
    let c = meet_of(zero, a, x, b, "c")?;
    let d = meet_of(&c, &frame.inf, y, a, "d")?;
    let z = meet(&frame.line, &join(&d, b).map_err(|_| Error::Degenerate("d = b".into()))?)?;
    let e = meet_of(a, zero, b, &z, "e")?;
    Ok(GadgetInstance {
        kind: GadgetKind::Add,
        zero: zero.clone(),
        one: frame.one.clone(),
        inf: frame.inf.clone(),
        x: x.clone(),
        y: y.clone(),
        z,
        a: a.clone(),
        b: b.clone(),
        f: None,
        c,
        d,
        e,
    })
}

pub fn build_gadget(
    kind: GadgetKind,
    frame: &LineCoordinateFrame,
    x: &ProjPoint,
    y: &ProjPoint,
    a: &ProjPoint,
    b: &ProjPoint,
) -> Result<GadgetInstance> {
    match kind {
        GadgetKind::Add => add_gadget(frame, x, y, a, b),
        GadgetKind::Mul => mul_gadget(frame, x, y, a, b),
    }
}

/// Height of a point in the canonical drawing.
fn height(p: &ProjPoint) -> Scalar {
    p.y().clone()
}

/// Crossings of the open gadget segments of different earlier gadgets and
/// of one gadget with itself (the points `c, d, e` among them).
pub(crate) fn segment_crossings(segs: &[(ProjPoint, ProjPoint)]) -> Vec<ProjPoint> {
    let mut out = Vec::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (p, q) = (&segs[i], &segs[j]);
            if let Ok(x) = meet_of(&p.0, &p.1, &q.0, &q.1, "crossing") {
                if x.is_affine() && on_open_segment(&p.0, &p.1, &x) && on_open_segment(&q.0, &q.1, &x) {
                    out.push(x);
                }
            }
        }
    }
    out
}

/// Anchor placement for the next gadget in the canonical drawing.
///
/// `eps` is half the smallest distance of an earlier interior point to `l`
/// or `l_inf`. The anchors go right of every earlier anchor and far enough
/// right that the new segments cross earlier ones below height `eps`; their
/// gap is halved until the new interior points lie above `1 - eps`.
pub fn place_anchors(
    previous: &[GadgetInstance],
    frame: &LineCoordinateFrame,
    kind: GadgetKind,
    x: &ProjPoint,
    y: &ProjPoint,
    rng: &mut ChaCha8Rng,
) -> Result<(ProjPoint, ProjPoint)> {
    if !frame.is_canonical() {
        return Err(Error::NotAffine("anchor placement works in the canonical frame".into()));
    }
    let (xv, yv) = (frame.value(x)?, frame.value(y)?);
    let zv = match kind {
        GadgetKind::Add => &xv + &yv,
        GadgetKind::Mul => &xv * &yv,
    };
    let old_segs: Vec<(ProjPoint, ProjPoint)> = previous
        .iter()
        .flat_map(|g| g.segments().into_iter().map(|(_, p, q)| (p, q)))
        .collect();
    let half = Scalar::from_ratio(1, 2);
    let mut eps = half.clone();
    for p in segment_crossings(&old_segs) {
        let h = height(&p);
        let m = std::cmp::min(h.clone(), &Scalar::one() - &h);
        eps = std::cmp::min(eps, &m * &half);
    }
    let mut xr = std::cmp::max(xv.clone(), std::cmp::max(yv.clone(), zv.clone()));
    for g in previous {
        for p in [&g.x, &g.y, &g.z] {
            xr = std::cmp::max(xr, p.x().clone());
        }
    }
    for (p, q) in &old_segs {
        let at_eps = p.x() + &(&eps * &(q.x() - p.x()));
        xr = std::cmp::max(xr, std::cmp::max(p.x().clone(), at_eps));
    }
    let eps = eps.pow2_floor();
    xr = (xr + Scalar::one()).ceil_int();
    let mut base = &(&xr / &eps) + &xr;
    for g in previous {
        for p in g.anchors() {
            base = std::cmp::max(base, p.x() + &Scalar::one());
        }
    }
    base = base.ceil_int();
    let jitter = rational_between(rng, &Rational::from_integer(0.into()), &Rational::from_integer(1.into()));
    base = &base + &Scalar::one() + Scalar::from_rational(jitter);
    let one_minus = &Scalar::one() - &eps;
    let mut delta = Scalar::one();
    for _ in 0..256 {
        let (ax, bx) = match kind {
            GadgetKind::Mul => (base.clone(), &base + &delta),
            GadgetKind::Add => (&base + &delta, base.clone()),
        };
        let a = ProjPoint::affine(ax, Scalar::one());
        let b = ProjPoint::affine(bx, Scalar::one());
        if let Ok(g) = build_gadget(kind, frame, x, y, &a, &b) {
            if g.interior().iter().all(|p| p.is_affine() && height(p) > one_minus && height(p) < Scalar::one()) {
                return Ok((a, b));
            }
        }
        delta = &delta * &half;
    }
    Err(Error::PlacementFailed {
        attempts: 256,
        msg: format!("{kind} gadget interior points never reached the strip below l_inf"),
    })
}

/// A single gadget in the canonical frame with anchors from
/// `place_anchors`, as a construction. Points at infinity are left out.
pub fn gadget_construction(kind: GadgetKind, x: &Scalar, y: &Scalar, seed: u64) -> Result<(GadgetInstance, ConstructionOutput)> {
    let frame = LineCoordinateFrame::canonical();
    let (px, py) = (frame.locate(x), frame.locate(y));
    let mut rng = rng_for(format!("gadget {kind} {x} {y}").as_bytes(), seed);
    let (a, b) = place_anchors(&[], &frame, kind, &px, &py, &mut rng)?;
    let g = build_gadget(kind, &frame, &px, &py, &a, &b)?;
    let mut pb = PointBuilder::new();
    let mut named: Vec<(&str, &ProjPoint)> = vec![("zero", &g.zero), ("one", &g.one), ("x", &g.x), ("y", &g.y), ("z", &g.z)];
    named.extend([("a", &g.a), ("b", &g.b)]);
    if let Some(f) = &g.f {
        named.push(("f", f));
    }
    named.extend([("c", &g.c), ("d", &g.d), ("e", &g.e)]);
    for (role, p) in named {
        let fresh = pb.len();
        let i = pb.add(p.clone(), role);
        if i == fresh {
            pb.set_label(i, role);
        }
    }
    for (name, pts) in g.groups() {
        for p in pts.iter().filter(|p| p.is_affine()) {
            let i = pb.add(p.clone(), "");
            pb.join_group(i, &name, GroupKind::Segment);
        }
    }
    let ell = [&g.zero, &g.one, &g.x, &g.y, &g.z];
    for p in ell {
        let i = pb.add(p.clone(), "");
        pb.join_group(i, "l", GroupKind::Line);
    }
    for p in g.anchors() {
        let i = pb.add(p.clone(), "");
        pb.join_group(i, "l_inf", GroupKind::Line);
    }
    let mut notes = BTreeMap::new();
    notes.insert("kind".into(), kind.to_string());
    notes.insert("value".into(), frame.value(&g.z)?.to_string());
    let out = pb.finish("gadget", notes)?;
    Ok((g, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_for;

    fn pt(v: i64) -> ProjPoint {
        ProjPoint::int(v, 0)
    }

    fn anchor(x: i64) -> ProjPoint {
        ProjPoint::int(x, 1)
    }

    #[test]
    fn frame_values() {
        let f = LineCoordinateFrame::canonical();
        assert_eq!(f.value(&pt(0)).unwrap(), Scalar::zero());
        assert_eq!(f.value(&pt(1)).unwrap(), Scalar::one());
        assert_eq!(f.value(&pt(7)).unwrap(), Scalar::from_int(7));
        assert!(f.value(&ProjPoint::int(7, 1)).is_err());
        let v = Scalar::from_ratio(-13, 7);
        assert_eq!(f.value(&f.locate(&v)).unwrap(), v);
        let g = LineCoordinateFrame::new(ProjPoint::int(1, 1), ProjPoint::int(3, 2), ProjPoint::int(7, 4)).unwrap();
        assert_eq!(g.locate(&Scalar::zero()), g.zero);
        assert_eq!(g.locate(&Scalar::one()), g.one);
        assert_eq!(g.value(&g.locate(&v)).unwrap(), v);
    }

    #[test]
    fn multiplication() {
        let f = LineCoordinateFrame::canonical();
        let g = mul_gadget(&f, &pt(2), &pt(3), &anchor(50), &anchor(60)).unwrap();
        assert_eq!(f.value(&g.z).unwrap(), Scalar::from_int(6));
        assert!(g.audit().is_empty());
        let ys = [g.c.y().clone(), g.d.y().clone(), g.e.y().clone()];
        assert!(ys[2] > ys[1] && ys[1] > ys[0]);
        let id = mul_gadget(&f, &pt(1), &pt(5), &anchor(50), &anchor(60)).unwrap();
        assert_eq!(id.z, pt(5));
    }

    #[test]
    fn addition() {
        let f = LineCoordinateFrame::canonical();
        let g = add_gadget(&f, &pt(2), &pt(3), &anchor(60), &anchor(50)).unwrap();
        assert_eq!(f.value(&g.z).unwrap(), Scalar::from_int(5));
        assert!(g.audit().is_empty());
        assert_eq!(g.c.y(), g.d.y());
        assert!(g.e.y() > g.c.y());
        let id = add_gadget(&f, &pt(0), &pt(4), &anchor(60), &anchor(50)).unwrap();
        assert_eq!(id.z, pt(4));
    }

    #[test]
    fn anchors_put_gadgets_in_the_top_strip() {
        let f = LineCoordinateFrame::canonical();
        let mut rng = rng_for(b"t", 1);
        let (a, b) = place_anchors(&[], &f, GadgetKind::Add, &pt(1), &pt(1), &mut rng).unwrap();
        let g1 = add_gadget(&f, &pt(1), &pt(1), &a, &b).unwrap();
        let (a2, b2) = place_anchors(std::slice::from_ref(&g1), &f, GadgetKind::Mul, &pt(2), &pt(2), &mut rng).unwrap();
        let g2 = mul_gadget(&f, &pt(2), &pt(2), &a2, &b2).unwrap();
        assert_eq!(f.value(&g2.z).unwrap(), Scalar::from_int(4));
        assert!(a2.x() > g1.a.x());
        for p in g2.interior() {
            assert!(g1.interior().iter().all(|q| p.y() > q.y()));
        }
    }
}
