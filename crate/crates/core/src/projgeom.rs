//! Projective plane over exact scalars.
//!
//! Points and lines are homogeneous triples kept in a canonical
//! representative so that `==` and `Hash` mean projective equality:
//! affine points are scaled to `z = 1`, points at infinity to a leading
//! coordinate of `1`, and lines to a leading nonzero coefficient of `1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::Scalar;

pub type Vec3 = [Scalar; 3];

pub fn cross3(u: &Vec3, v: &Vec3) -> Vec3 {
    [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

pub fn dot3(u: &Vec3, v: &Vec3) -> Scalar {
    &u[0] * &v[0] + &u[1] * &v[1] + &u[2] * &v[2]
}

pub fn det3(u: &Vec3, v: &Vec3, w: &Vec3) -> Scalar {
    dot3(u, &cross3(v, w))
}

fn is_null(v: &Vec3) -> bool {
    v.iter().all(Scalar::is_zero)
}

fn scale_by_inverse(v: &Vec3, pivot: &Scalar) -> Vec3 {
    let inv = pivot.checked_inv().expect("pivot is nonzero");
    [&v[0] * &inv, &v[1] * &inv, &v[2] * &inv]
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    c: Vec3,
}

impl ProjPoint {
    pub fn new(x: Scalar, y: Scalar, z: Scalar) -> Result<Self> {
        Self::from_vec([x, y, z])
    }

    pub fn from_vec(v: Vec3) -> Result<Self> {
        if is_null(&v) {
            return Err(Error::Degenerate("zero homogeneous vector".into()));
        }
        let pivot = if !v[2].is_zero() {
            v[2].clone()
        } else if !v[0].is_zero() {
            v[0].clone()
        } else {
            v[1].clone()
        };
        Ok(ProjPoint {
            c: scale_by_inverse(&v, &pivot),
        })
    }

    pub fn affine(x: Scalar, y: Scalar) -> Self {
        ProjPoint {
            c: [x, y, Scalar::one()],
        }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Self::affine(Scalar::from_int(x), Scalar::from_int(y))
    }

    /// Point at infinity in direction `(dx, dy)`.
    pub fn at_infinity(dx: Scalar, dy: Scalar) -> Result<Self> {
        Self::new(dx, dy, Scalar::zero())
    }

    pub fn coords(&self) -> &Vec3 {
        &self.c
    }

    pub fn is_affine(&self) -> bool {
        !self.c[2].is_zero()
    }

    /// Affine coordinates, failing for points at infinity.
    pub fn xy(&self) -> Result<(&Scalar, &Scalar)> {
        if self.is_affine() {
            Ok((&self.c[0], &self.c[1]))
        } else {
            Err(Error::NotAffine(self.to_string()))
        }
    }

    /// Affine x; panics at infinity. Use only on points known to be affine.
    pub fn x(&self) -> &Scalar {
        self.xy().expect("affine point").0
    }

    /// Affine y; panics at infinity.
    pub fn y(&self) -> &Scalar {
        self.xy().expect("affine point").1
    }

    /// Largest discriminant among the coordinates (0 when all rational).
    pub fn discriminant(&self) -> u32 {
        self.c.iter().map(Scalar::discriminant).max().unwrap_or(0)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_affine() {
            write!(f, "({}, {})", self.c[0], self.c[1])
        } else {
            write!(f, "[{} : {} : 0]", self.c[0], self.c[1])
        }
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Line `a x + b y + c z = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjLine {
    c: Vec3,
}

impl ProjLine {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Result<Self> {
        Self::from_vec([a, b, c])
    }

    pub fn from_vec(v: Vec3) -> Result<Self> {
        if is_null(&v) {
            return Err(Error::Degenerate("zero line coefficients".into()));
        }
        let pivot = v.iter().find(|s| !s.is_zero()).unwrap().clone();
        Ok(ProjLine {
            c: scale_by_inverse(&v, &pivot),
        })
    }

    /// The line at infinity `z = 0`.
    pub fn at_infinity() -> Self {
        ProjLine {
            c: [Scalar::zero(), Scalar::zero(), Scalar::one()],
        }
    }

    pub fn coeffs(&self) -> &Vec3 {
        &self.c
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        dot3(&self.c, p.coords()).is_zero()
    }

    /// Which side of the line an affine point is on (sign of `a x + b y + c`).
    pub fn side(&self, p: &ProjPoint) -> i32 {
        dot3(&self.c, p.coords()).signum()
    }

    /// The point at infinity of this line (its direction).
    pub fn direction(&self) -> Result<ProjPoint> {
        meet(self, &ProjLine::at_infinity())
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} : {} : {}>", self.c[0], self.c[1], self.c[2])
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Line through two distinct points.
pub fn join(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
    let v = cross3(p.coords(), q.coords());
    if is_null(&v) {
        return Err(Error::Degenerate(format!("join of equal points {p}")));
    }
    ProjLine::from_vec(v)
}

/// Intersection of two distinct lines (possibly at infinity).
pub fn meet(l: &ProjLine, m: &ProjLine) -> Result<ProjPoint> {
    let v = cross3(l.coeffs(), m.coeffs());
    if is_null(&v) {
        return Err(Error::Degenerate(format!("meet of equal lines {l}")));
    }
    ProjPoint::from_vec(v)
}

/// Projective collinearity; accepts points at infinity.
pub fn collinear(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> bool {
    det3(p.coords(), q.coords(), r.coords()).is_zero()
}

/// Orientation of three affine points: `+1` counterclockwise, `-1`
/// clockwise, `0` collinear.
pub fn orient(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> Result<i32> {
    for x in [p, q, r] {
        x.xy()?;
    }
    Ok(det3(p.coords(), q.coords(), r.coords()).signum())
}

/// Orientation without the affine check, for callers that already know.
pub(crate) fn orient_affine(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> i32 {
    let (px, py) = (p.x(), p.y());
    let ux = q.x() - px;
    let uy = q.y() - py;
    let vx = r.x() - px;
    let vy = r.y() - py;
    (&ux * &vy - &uy * &vx).signum()
}

/// Cross-ratio `(a,b;c,d) = |a,c| |b,d| / (|a,d| |b,c|)` of four collinear
/// points, where `|x,y|` is the 2x2 determinant of the points' coordinates
/// in any basis of the common line.
///
/// The bracket is taken as one component of the 3D cross product: for points
/// on a line `L`, `x × y` is a multiple of `L`'s coefficient vector and that
/// multiple is the 2x2 determinant up to a factor that cancels in the ratio.
pub fn cross_ratio(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, d: &ProjPoint) -> Result<Scalar> {
    let pts = [a, b, c, d];
    let mut line = None;
    'outer: for i in 0..4 {
        for j in i + 1..4 {
            if pts[i] != pts[j] {
                line = Some(join(pts[i], pts[j])?);
                break 'outer;
            }
        }
    }
    let line = line.ok_or_else(|| Error::Degenerate("cross-ratio of one repeated point".into()))?;
    if let Some(off) = pts.iter().find(|p| !line.contains(p)) {
        return Err(Error::NotCollinear(format!("{off} is off {line}")));
    }
    let k = line.coeffs().iter().position(|s| !s.is_zero()).unwrap();
    let bracket = |x: &ProjPoint, y: &ProjPoint| cross3(x.coords(), y.coords())[k].clone();
    let num = bracket(a, c) * bracket(b, d);
    let den = bracket(a, d) * bracket(b, c);
    if den.is_zero() {
        return Err(Error::Degenerate(
            "cross-ratio denominator vanishes (coincident points)".into(),
        ));
    }
    num.checked_div(&den)
}

/// Segment between two distinct affine points.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Segment {
    pub p: ProjPoint,
    pub q: ProjPoint,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SegmentIntersection {
    /// The open segments do not meet.
    None,
    /// The open segments cross in exactly this point.
    Point(ProjPoint),
    /// Collinear segments sharing a subsegment of positive length.
    Overlap,
}

impl Segment {
    pub fn new(p: ProjPoint, q: ProjPoint) -> Result<Self> {
        p.xy()?;
        q.xy()?;
        if p == q {
            return Err(Error::Degenerate(format!("zero-length segment at {p}")));
        }
        Ok(Segment { p, q })
    }

    pub fn line(&self) -> ProjLine {
        join(&self.p, &self.q).expect("distinct endpoints")
    }

    /// Whether `r` lies on the open segment (endpoints excluded).
    pub fn contains_open(&self, r: &ProjPoint) -> bool {
        r.is_affine() && on_open_segment(&self.p, &self.q, r)
    }

    pub fn intersect(&self, other: &Segment) -> SegmentIntersection {
        segment_intersection(self, other)
    }
}

/// `r` strictly between affine `p` and `q`.
pub(crate) fn on_open_segment(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> bool {
    if orient_affine(p, q, r) != 0 {
        return false;
    }
    let d1x = r.x() - p.x();
    let d1y = r.y() - p.y();
    let d2x = q.x() - r.x();
    let d2y = q.y() - r.y();
    // r - p and q - r point the same way and neither vanishes
    let dot = &d1x * &d2x + &d1y * &d2y;
    dot.signum() > 0
}

pub fn segment_intersection(s1: &Segment, s2: &Segment) -> SegmentIntersection {
    let (a, b, c, d) = (&s1.p, &s1.q, &s2.p, &s2.q);
    let o1 = orient_affine(a, b, c);
    let o2 = orient_affine(a, b, d);
    if o1 == 0 && o2 == 0 {
        // project onto the dominant axis of s1 and compare open intervals
        let use_x = a.x() != b.x();
        let key = |p: &ProjPoint| if use_x { p.x().clone() } else { p.y().clone() };
        let (lo1, hi1) = minmax(key(a), key(b));
        let (lo2, hi2) = minmax(key(c), key(d));
        let lo = lo1.max(lo2);
        let hi = hi1.min(hi2);
        return if lo < hi {
            SegmentIntersection::Overlap
        } else {
            SegmentIntersection::None
        };
    }
    let o3 = orient_affine(c, d, a);
    let o4 = orient_affine(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        let p = meet(&s1.line(), &s2.line()).expect("crossing lines are distinct");
        SegmentIntersection::Point(p)
    } else {
        SegmentIntersection::None
    }
}

fn minmax(a: Scalar, b: Scalar) -> (Scalar, Scalar) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Nonsingular 3x3 map acting on homogeneous column vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjMap {
    m: [Vec3; 3],
}

impl ProjMap {
    pub fn new(m: [Vec3; 3]) -> Result<Self> {
        let map = ProjMap { m };
        if map.det().is_zero() {
            return Err(Error::Degenerate("singular projective map".into()));
        }
        Ok(map)
    }

    pub fn from_ints(m: [[i64; 3]; 3]) -> Result<Self> {
        Self::new(m.map(|row| row.map(Scalar::from_int)))
    }

    pub fn identity() -> Self {
        Self::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap()
    }

    pub fn translation(dx: Scalar, dy: Scalar) -> Self {
        let (o, z) = (Scalar::one(), Scalar::zero());
        ProjMap {
            m: [
                [o.clone(), z.clone(), dx],
                [z.clone(), o.clone(), dy],
                [z.clone(), z, o],
            ],
        }
    }

    pub fn rows(&self) -> &[Vec3; 3] {
        &self.m
    }

    pub fn det(&self) -> Scalar {
        det3(&self.m[0], &self.m[1], &self.m[2])
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let v = p.coords();
        ProjPoint::from_vec(self.m.clone().map(|row| dot3(&row, v))).expect("nonsingular map")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ProjMap) -> ProjMap {
        let col = |j: usize| -> Vec3 { [other.m[0][j].clone(), other.m[1][j].clone(), other.m[2][j].clone()] };
        let cols = [col(0), col(1), col(2)];
        let m = self.m.clone().map(|row| cols.clone().map(|c| dot3(&row, &c)));
        ProjMap { m }
    }

    pub fn inverse(&self) -> ProjMap {
        // rows of the inverse are, up to 1/det, the cross products of columns
        let c = |j: usize| -> Vec3 { [self.m[0][j].clone(), self.m[1][j].clone(), self.m[2][j].clone()] };
        let (c0, c1, c2) = (c(0), c(1), c(2));
        let det = self.det();
        let rows = [cross3(&c1, &c2), cross3(&c2, &c0), cross3(&c0, &c1)];
        let m = rows.map(|r| r.map(|s| &s / &det));
        ProjMap { m }
    }

    /// Image of a line: `l ↦ l · M⁻¹`.
    pub fn apply_line(&self, l: &ProjLine) -> ProjLine {
        let inv = self.inverse();
        let v = l.coeffs();
        let out = [0, 1, 2].map(|j| &(&v[0] * &inv.m[0][j] + &v[1] * &inv.m[1][j]) + &(&v[2] * &inv.m[2][j]));
        ProjLine::from_vec(out).expect("nonsingular map")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn orientation_examples() {
        let (o, x, y) = (ProjPoint::int(0, 0), ProjPoint::int(1, 0), ProjPoint::int(0, 1));
        assert_eq!(orient(&o, &x, &y).unwrap(), 1);
        assert_eq!(orient(&o, &y, &x).unwrap(), -1);
        assert_eq!(orient(&o, &ProjPoint::int(1, 1), &ProjPoint::int(2, 2)).unwrap(), 0);
        let inf = ProjPoint::at_infinity(s(1), s(0)).unwrap();
        assert!(matches!(orient(&o, &x, &inf), Err(Error::NotAffine(_))));
    }

    #[test]
    fn canonical_equality() {
        let p = ProjPoint::new(s(2), s(4), s(2)).unwrap();
        assert_eq!(p, ProjPoint::int(1, 2));
        let q = ProjPoint::new(s(-3), s(6), s(0)).unwrap();
        assert_eq!(q, ProjPoint::at_infinity(s(1), s(-2)).unwrap());
        assert!(ProjPoint::new(s(0), s(0), s(0)).is_err());
    }

    #[test]
    fn cross_ratio_examples() {
        let inf = ProjPoint::at_infinity(s(1), s(0)).unwrap();
        let (a, b, c) = (ProjPoint::int(5, 0), ProjPoint::int(1, 0), ProjPoint::int(0, 0));
        assert_eq!(cross_ratio(&a, &b, &c, &inf).unwrap(), s(5));
        let z = ProjPoint::int(0, 0);
        assert_eq!(cross_ratio(&z, &b, &z, &inf).unwrap(), s(0));
        assert!(cross_ratio(&a, &b, &c, &ProjPoint::int(0, 1)).is_err());
        // denominator |a,d| vanishes when a = d
        assert!(cross_ratio(&a, &b, &c, &a).is_err());
    }

    #[test]
    fn meet_and_join() {
        let xaxis = ProjLine::new(s(0), s(1), s(0)).unwrap();
        let yaxis = ProjLine::new(s(1), s(0), s(0)).unwrap();
        assert_eq!(meet(&xaxis, &yaxis).unwrap(), ProjPoint::int(0, 0));
        let y1 = ProjLine::new(s(0), s(1), s(-1)).unwrap();
        assert!(!meet(&xaxis, &y1).unwrap().is_affine());
        let l = join(&ProjPoint::int(0, 0), &ProjPoint::int(1, 1)).unwrap();
        assert_eq!(l, ProjLine::new(s(1), s(-1), s(0)).unwrap());
        assert!(join(&ProjPoint::int(1, 1), &ProjPoint::int(1, 1)).is_err());
        assert!(meet(&l, &l).is_err());
    }

    #[test]
    fn segment_cases() {
        let seg = |a: (i64, i64), b: (i64, i64)| Segment::new(ProjPoint::int(a.0, a.1), ProjPoint::int(b.0, b.1)).unwrap();
        assert_eq!(
            seg((0, 0), (2, 2)).intersect(&seg((0, 2), (2, 0))),
            SegmentIntersection::Point(ProjPoint::int(1, 1))
        );
        assert_eq!(seg((0, 0), (1, 0)).intersect(&seg((2, 0), (3, 0))), SegmentIntersection::None);
        assert_eq!(seg((0, 0), (1, 1)).intersect(&seg((1, 1), (2, 0))), SegmentIntersection::None);
        assert_eq!(seg((0, 0), (2, 0)).intersect(&seg((1, 0), (3, 0))), SegmentIntersection::Overlap);
        assert_eq!(seg((0, 0), (1, 0)).intersect(&seg((1, 0), (3, 0))), SegmentIntersection::None);
        // T-junction: endpoint of one lies inside the other, open segments are disjoint
        assert_eq!(seg((0, 0), (2, 0)).intersect(&seg((1, 0), (1, 5))), SegmentIntersection::None);
        assert_eq!(seg((0, 0), (0, 4)).intersect(&seg((0, 1), (0, 2))), SegmentIntersection::Overlap);
    }

    #[test]
    fn maps() {
        let p = ProjPoint::int(1, 2);
        assert_eq!(ProjMap::identity().apply(&p), p);
        assert_eq!(ProjMap::translation(s(3), s(4)).apply(&p), ProjPoint::int(4, 6));
        // swap y and z: the line y = 0 goes to z = 0
        let m = ProjMap::from_ints([[1, 0, 0], [0, 0, 1], [0, 1, 0]]).unwrap();
        assert!(!m.apply(&ProjPoint::int(7, 0)).is_affine());
        assert!(ProjMap::from_ints([[1, 2, 3], [2, 4, 6], [0, 0, 1]]).is_err());
        let t = ProjMap::from_ints([[2, 1, 0], [0, 1, 3], [1, 0, 1]]).unwrap();
        assert_eq!(t.inverse().apply(&t.apply(&p)), p);
        assert_eq!(t.compose(&t.inverse()), ProjMap::identity());
        let l = join(&p, &ProjPoint::int(5, -1)).unwrap();
        let tl = t.apply_line(&l);
        assert!(tl.contains(&t.apply(&p)));
        assert!(tl.contains(&t.apply(&ProjPoint::int(5, -1))));
    }
}
