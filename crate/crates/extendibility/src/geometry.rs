//! Convex geometry in the (f, b) plane: hulls in floating point and exact rationals,
//! membership, Hausdorff distance and half-plane clipping.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

/// Default geometric tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

/// A point of the (f, b) plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub f: f64,
    pub b: f64,
}

impl Point {
    pub const fn new(f: f64, b: f64) -> Self {
        Point { f, b }
    }

    pub fn dist(self, o: Point) -> f64 {
        (self.f - o.f).hypot(self.b - o.b)
    }

    fn sub(self, o: Point) -> Point {
        Point::new(self.f - o.f, self.b - o.b)
    }
}

/// Exact rational point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactPoint {
    pub f: BigRational,
    pub b: BigRational,
}

impl ExactPoint {
    pub fn new(f: BigRational, b: BigRational) -> Self {
        ExactPoint { f, b }
    }

    pub fn to_f64(&self) -> Point {
        Point::new(self.f.to_f64().unwrap_or(f64::NAN), self.b.to_f64().unwrap_or(f64::NAN))
    }
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.f - o.f) * (b.b - o.b) - (a.b - o.b) * (b.f - o.f)
}

fn cross_exact(o: &ExactPoint, a: &ExactPoint, b: &ExactPoint) -> BigRational {
    (&a.f - &o.f) * (&b.b - &o.b) - (&a.b - &o.b) * (&b.f - &o.f)
}

/// Andrew's monotone chain over any coordinate type. `left` must return true only for
/// strict counter-clockwise turns; the result starts at the lexicographic minimum.
fn monotone_chain<T: Clone>(
    mut pts: Vec<T>,
    cmp: impl Fn(&T, &T) -> Ordering,
    left: impl Fn(&T, &T, &T) -> bool,
) -> Vec<T> {
    pts.sort_by(&cmp);
    pts.dedup_by(|a, b| cmp(a, b) == Ordering::Equal);
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<T> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !left(&lower[lower.len() - 2], &lower[lower.len() - 1], p) {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<T> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !left(&upper[upper.len() - 2], &upper[upper.len() - 1], p) {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Which degenerate case a region falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionShape {
    Point,
    Segment,
    Polygon,
}

/// A nonempty convex region given by its vertices in counter-clockwise order.
#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    vertices: Vec<Point>,
    provenance: Vec<Option<String>>,
    meta: Map<String, Value>,
    gap: Option<f64>,
}

/// Half-plane `nx·f + ny·b ≤ c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlane {
    pub nx: f64,
    pub ny: f64,
    pub c: f64,
}

impl HalfPlane {
    pub fn new(nx: f64, ny: f64, c: f64) -> Self {
        assert!(nx != 0.0 || ny != 0.0, "half-plane normal must be nonzero");
        HalfPlane { nx, ny, c }
    }

    fn value(&self, p: Point) -> f64 {
        self.nx * p.f + self.ny * p.b - self.c
    }
}

/// Result of [`clip`].
#[derive(Clone, Debug, PartialEq)]
pub enum Clipped {
    Region(Region),
    Empty,
}

impl Clipped {
    pub fn region(self) -> Option<Region> {
        match self {
            Clipped::Region(r) => Some(r),
            Clipped::Empty => None,
        }
    }
}

/// Convex hull of untagged points. Panics on an empty input.
pub fn convex_hull(points: &[Point], tol: f64) -> Region {
    let tagged: Vec<(Point, Option<String>)> = points.iter().map(|&p| (p, None)).collect();
    convex_hull_tagged(&tagged, tol)
}

/// Convex hull keeping a provenance tag for each surviving vertex. Panics on an empty input.
pub fn convex_hull_tagged(points: &[(Point, Option<String>)], tol: f64) -> Region {
    assert!(!points.is_empty(), "convex hull of an empty point set");
    let pts: Vec<(Point, Option<String>)> = points.iter().filter(|(p, _)| p.f.is_finite() && p.b.is_finite()).cloned().collect();
    assert!(!pts.is_empty(), "convex hull input has no finite points");
    let cmp = |a: &(Point, Option<String>), b: &(Point, Option<String>)| {
        a.0.f.total_cmp(&b.0.f).then(a.0.b.total_cmp(&b.0.b))
    };
    // A strict predicate keeps the chain consistent under rounding noise; tolerance is
    // applied afterwards by dropping vertices that barely deviate from their neighbours.
    let left = |o: &(Point, Option<String>), a: &(Point, Option<String>), b: &(Point, Option<String>)| {
        cross(o.0, a.0, b.0) > 0.0
    };
    let mut cleaned = monotone_chain(pts, cmp, left);
    loop {
        let n = cleaned.len();
        if n < 2 {
            break;
        }
        let redundant = (0..n).find(|&i| {
            let (prev, cur, next) = (cleaned[(i + n - 1) % n].0, cleaned[i].0, cleaned[(i + 1) % n].0);
            cur.dist(next) <= tol || (n > 2 && segment_distance(cur, prev, next) <= tol)
        });
        match redundant {
            Some(i) => {
                cleaned.remove(i);
            }
            None => break,
        }
    }
    if let Some(start) = (0..cleaned.len()).min_by(|&i, &j| cmp(&cleaned[i], &cleaned[j])) {
        cleaned.rotate_left(start);
    }
    let (vertices, provenance) = cleaned.into_iter().unzip();
    Region { vertices, provenance, meta: Map::new(), gap: None }
}

/// Exact convex hull; counter-clockwise from the lexicographic minimum, collinear points removed.
pub fn convex_hull_exact(points: &[ExactPoint]) -> Vec<ExactPoint> {
    let cmp = |a: &ExactPoint, b: &ExactPoint| a.f.cmp(&b.f).then(a.b.cmp(&b.b));
    let left = |o: &ExactPoint, a: &ExactPoint, b: &ExactPoint| cross_exact(o, a, b).is_positive();
    monotone_chain(points.to_vec(), cmp, left)
}

/// Exact membership test in the hull given by [`convex_hull_exact`].
pub fn contains_exact(hull: &[ExactPoint], p: &ExactPoint) -> bool {
    match hull.len() {
        0 => false,
        1 => hull[0] == *p,
        2 => {
            cross_exact(&hull[0], &hull[1], p).is_zero()
                && within(&hull[0].f, &hull[1].f, &p.f)
                && within(&hull[0].b, &hull[1].b, &p.b)
        }
        n => (0..n).all(|i| !cross_exact(&hull[i], &hull[(i + 1) % n], p).is_negative()),
    }
}

fn within(a: &BigRational, b: &BigRational, x: &BigRational) -> bool {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    lo <= x && x <= hi
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b.sub(a);
    let len2 = ab.f * ab.f + ab.b * ab.b;
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = (((p.f - a.f) * ab.f + (p.b - a.b) * ab.b) / len2).clamp(0.0, 1.0);
    p.dist(Point::new(a.f + t * ab.f, a.b + t * ab.b))
}

impl Region {
    /// Builds a region from vertices that are already convex and counter-clockwise.
    pub fn from_vertices(vertices: Vec<Point>) -> Result<Region> {
        if vertices.is_empty() {
            return Err(Error::InvalidArgument("region needs at least one vertex".into()));
        }
        let hull = convex_hull(&vertices, DEFAULT_TOL);
        if hull.vertices.len() != vertices.len() {
            return Err(Error::InvalidArgument("vertices are not in strictly convex position".into()));
        }
        Ok(hull)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn provenance(&self) -> &[Option<String>] {
        &self.provenance
    }

    pub fn meta(&self) -> &Map<String, Value> {
        &self.meta
    }

    pub fn set_meta(&mut self, key: &str, value: impl Into<Value>) {
        self.meta.insert(key.to_string(), value.into());
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.set_meta(key, value);
        self
    }

    pub fn gap(&self) -> Option<f64> {
        self.gap
    }

    pub fn set_gap(&mut self, gap: f64) {
        self.gap = Some(gap);
    }

    pub fn shape(&self) -> RegionShape {
        match self.vertices.len() {
            1 => RegionShape::Point,
            2 => RegionShape::Segment,
            _ => RegionShape::Polygon,
        }
    }

    fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        let count = if n <= 2 { n.saturating_sub(1).max(1) } else { n };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Distance from `p` to the boundary curve.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        self.edges().map(|(a, b)| segment_distance(p, a, b)).fold(f64::INFINITY, f64::min)
    }

    /// Distance from `p` to the filled region (zero inside).
    pub fn distance(&self, p: Point) -> f64 {
        if self.shape() == RegionShape::Polygon && self.edges().all(|(a, b)| cross(a, b, p) >= 0.0) {
            return 0.0;
        }
        self.boundary_distance(p)
    }

    /// True iff `p` is inside or within `tol` of the region.
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.distance(p) <= tol
    }

    /// Largest value of `nx·f + ny·b` over the region.
    pub fn support(&self, nx: f64, ny: f64) -> f64 {
        self.vertices.iter().map(|v| nx * v.f + ny * v.b).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        if n < 3 {
            return 0.0;
        }
        0.5 * (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                a.f * b.b - a.b * b.f
            })
            .sum::<f64>()
    }

    /// The b-interval cut out by the vertical line at `f`, if it meets the region.
    pub fn vertical_extent(&self, f: f64) -> Option<(f64, f64)> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (a, b) in self.edges() {
            let (l, r) = if a.f <= b.f { (a, b) } else { (b, a) };
            if f < l.f || f > r.f {
                continue;
            }
            let y = if r.f == l.f {
                lo = lo.min(l.b.min(r.b));
                hi = hi.max(l.b.max(r.b));
                continue;
            } else {
                l.b + (r.b - l.b) * (f - l.f) / (r.f - l.f)
            };
            lo = lo.min(y);
            hi = hi.max(y);
        }
        if self.vertices.len() == 1 && self.vertices[0].f == f {
            return Some((self.vertices[0].b, self.vertices[0].b));
        }
        (lo <= hi).then_some((lo, hi))
    }

    /// Canonical JSON: `{"kind":"region","meta":{…},"vertices":[[f,b],…],"gap":…}`.
    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("kind".into(), json!("region"));
        obj.insert("meta".into(), Value::Object(self.meta.clone()));
        obj.insert("vertices".into(), Value::Array(self.vertices.iter().map(|v| json!([v.f, v.b])).collect()));
        if self.provenance.iter().any(Option::is_some) {
            obj.insert("provenance".into(), Value::Array(self.provenance.iter().map(|t| json!(t)).collect()));
        }
        if let Some(g) = self.gap {
            obj.insert("gap".into(), json!(g));
        }
        Value::Object(obj)
    }

    pub fn from_json(v: &Value) -> Result<Region> {
        let bad = |reason: &str| Error::Parse { input: "region JSON".into(), reason: reason.into() };
        if v.get("kind").and_then(Value::as_str) != Some("region") {
            return Err(bad("missing \"kind\":\"region\""));
        }
        let verts = v.get("vertices").and_then(Value::as_array).ok_or_else(|| bad("missing vertices"))?;
        let mut tagged = Vec::with_capacity(verts.len());
        let tags = v.get("provenance").and_then(Value::as_array);
        for (i, pv) in verts.iter().enumerate() {
            let pair = pv.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("vertex must be [f,b]"))?;
            let f = pair[0].as_f64().ok_or_else(|| bad("non-numeric f"))?;
            let b = pair[1].as_f64().ok_or_else(|| bad("non-numeric b"))?;
            let tag = tags.and_then(|t| t.get(i)).and_then(Value::as_str).map(String::from);
            tagged.push((Point::new(f, b), tag));
        }
        if tagged.is_empty() {
            return Err(bad("no vertices"));
        }
        let mut r = convex_hull_tagged(&tagged, DEFAULT_TOL);
        if let Some(Value::Object(m)) = v.get("meta") {
            r.meta = m.clone();
        }
        r.gap = v.get("gap").and_then(Value::as_f64);
        Ok(r)
    }

    /// CSV projection: header `f,b`, one vertex per row.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("f,b\n");
        for v in &self.vertices {
            let _ = writeln!(s, "{},{}", v.f, v.b);
        }
        s
    }

    /// SVG projection (800×600) over the reference triangle, plus the separable rectangle and
    /// the Werner and isotropic lines when `d` is given.
    pub fn to_svg(&self, d: Option<usize>) -> String {
        let x = |f: f64| (f + 1.1) / 2.2 * 800.0;
        let y = |b: f64| 600.0 - (b + 0.1) / 1.2 * 600.0;
        let pts = |vs: &[Point]| vs.iter().map(|p| format!("{:.3},{:.3}", x(p.f), y(p.b))).collect::<Vec<_>>().join(" ");
        let mut s = String::new();
        let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="600" viewBox="0 0 800 600">"#);
        let _ = writeln!(s, r##"<rect width="800" height="600" fill="#ffffff"/>"##);
        let tri = [Point::new(-1.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0)];
        let _ = writeln!(s, r##"<polygon points="{}" fill="#e6e6e6" stroke="#808080" stroke-width="1"/>"##, pts(&tri));
        if let Some(d) = d {
            let df = d as f64;
            let rect = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0 / df), Point::new(0.0, 1.0 / df)];
            let _ = writeln!(s, r##"<polygon points="{}" fill="none" stroke="#2060c0" stroke-width="1"/>"##, pts(&rect));
            let werner = [Point::new(-1.0, 0.0), Point::new(1.0, 2.0 / (df * (df + 1.0)))];
            let _ = writeln!(s, r##"<polyline points="{}" fill="none" stroke="#000000" stroke-dasharray="6,4"/>"##, pts(&werner));
            let iso = [Point::new(1.0 / (df + 1.0), 0.0), Point::new(1.0, 1.0)];
            let _ = writeln!(s, r##"<polyline points="{}" fill="none" stroke="#000000" stroke-dasharray="2,3"/>"##, pts(&iso));
        }
        match self.shape() {
            RegionShape::Point => {
                let p = self.vertices[0];
                let _ = writeln!(s, r##"<circle cx="{:.3}" cy="{:.3}" r="3" fill="#c03030"/>"##, x(p.f), y(p.b));
            }
            RegionShape::Segment => {
                let _ = writeln!(s, r##"<polyline points="{}" fill="none" stroke="#c03030" stroke-width="2"/>"##, pts(&self.vertices));
            }
            RegionShape::Polygon => {
                let _ = writeln!(
                    s,
                    r##"<polygon points="{}" fill="#c03030" fill-opacity="0.45" stroke="#c03030" stroke-width="1.5"/>"##,
                    pts(&self.vertices)
                );
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

/// Symmetric Hausdorff distance between two convex regions.
pub fn hausdorff(a: &Region, b: &Region) -> f64 {
    let ab = a.vertices.iter().map(|&p| b.distance(p)).fold(0.0, f64::max);
    let ba = b.vertices.iter().map(|&p| a.distance(p)).fold(0.0, f64::max);
    ab.max(ba)
}

/// Largest distance from a vertex of `inner` to `outer`; zero when `inner ⊆ outer`.
pub fn excess(inner: &Region, outer: &Region) -> f64 {
    inner.vertices.iter().map(|&p| outer.distance(p)).fold(0.0, f64::max)
}

/// Intersects a region with half-planes, one at a time (Sutherland–Hodgman).
pub fn clip(region: &Region, hs: &[HalfPlane]) -> Clipped {
    let eps = DEFAULT_TOL;
    let mut poly: Vec<(Point, Option<String>)> =
        region.vertices.iter().cloned().zip(region.provenance.iter().cloned()).collect();
    for h in hs {
        if poly.is_empty() {
            break;
        }
        let n = poly.len();
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..n {
            let (s, ref st) = poly[i];
            let (e, _) = poly[(i + 1) % n];
            let vs = h.value(s);
            let ve = h.value(e);
            if vs <= eps {
                out.push((s, st.clone()));
            }
            if (vs < -eps && ve > eps) || (vs > eps && ve < -eps) {
                let t = vs / (vs - ve);
                out.push((Point::new(s.f + t * (e.f - s.f), s.b + t * (e.b - s.b)), Some("clip".to_string())));
            }
        }
        poly = out;
    }
    if poly.is_empty() {
        return Clipped::Empty;
    }
    let mut r = convex_hull_tagged(&poly, DEFAULT_TOL);
    r.meta = region.meta.clone();
    r.gap = region.gap;
    Clipped::Region(r)
}

/// Intersection of half-planes, bounded by the box `[-bound, bound]²`.
pub fn intersect_half_planes(hs: &[HalfPlane], bound: f64) -> Clipped {
    let square = convex_hull(
        &[Point::new(-bound, -bound), Point::new(bound, -bound), Point::new(bound, bound), Point::new(-bound, bound)],
        DEFAULT_TOL,
    );
    clip(&square, hs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(f: f64, b: f64) -> Point {
        Point::new(f, b)
    }

    fn triangle() -> Region {
        convex_hull(&[p(-1.0, 0.0), p(1.0, 0.0), p(1.0, 1.0)], DEFAULT_TOL)
    }

    #[test]
    fn hull_examples() {
        let r = convex_hull(&[p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0), p(0.2, 0.2)], DEFAULT_TOL);
        assert_eq!(r.vertices(), &[p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)]);
        let single = convex_hull(&[p(0.3, 0.1), p(0.3, 0.1)], DEFAULT_TOL);
        assert_eq!(single.shape(), RegionShape::Point);
        let seg = convex_hull(&[p(0.0, 0.0), p(0.5, 0.5), p(1.0, 1.0)], DEFAULT_TOL);
        assert_eq!(seg.vertices(), &[p(0.0, 0.0), p(1.0, 1.0)]);
    }

    #[test]
    fn exact_hull_drops_interior_candidate() {
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let pts = vec![
            ExactPoint::new(q(1, 1), q(0, 1)),
            ExactPoint::new(q(1, 1), q(5, 9)),
            ExactPoint::new(q(0, 1), q(0, 1)),
            ExactPoint::new(q(0, 1), q(2, 9)),
            ExactPoint::new(q(-1, 1), q(0, 1)),
        ];
        let hull = convex_hull_exact(&pts);
        assert_eq!(
            hull,
            vec![
                ExactPoint::new(q(-1, 1), q(0, 1)),
                ExactPoint::new(q(1, 1), q(0, 1)),
                ExactPoint::new(q(1, 1), q(5, 9))
            ]
        );
        assert!(contains_exact(&hull, &ExactPoint::new(q(0, 1), q(2, 9))));
        assert!(!contains_exact(&hull, &ExactPoint::new(q(0, 1), q(5, 17))));
        assert!(contains_exact(&hull, &ExactPoint::new(q(0, 1), q(5, 18))));
    }

    #[test]
    fn membership() {
        let t = triangle();
        assert!(t.contains(p(1.0 / 3.0, 1.0 / 9.0), 1e-12));
        assert!(!t.contains(p(0.0, 0.6), 1e-12));
        assert!(t.contains(p(-1.0, 0.0), 1e-12));
        for &v in t.vertices() {
            assert!(t.contains(v, 0.0));
        }
    }

    #[test]
    fn hausdorff_examples() {
        let t = triangle();
        assert_eq!(hausdorff(&t, &t), 0.0);
        let sq = convex_hull(&[p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)], DEFAULT_TOL);
        let eps = 1e-3;
        let shifted = convex_hull(&[p(eps, 0.0), p(1.0 + eps, 0.0), p(1.0 + eps, 1.0), p(eps, 1.0)], DEFAULT_TOL);
        assert!((hausdorff(&sq, &shifted) - eps).abs() < 1e-12);
        let pert = convex_hull(&[p(-1.0, 1e-6), p(1.0, 0.0), p(1.0, 1.0 - 1e-6)], DEFAULT_TOL);
        assert!(hausdorff(&t, &pert) <= 2e-6);
    }

    #[test]
    fn clipping() {
        let t = triangle();
        let same = clip(&t, &[HalfPlane::new(0.0, -1.0, 0.0)]).region().unwrap();
        assert!(hausdorff(&t, &same) < 1e-15);
        let sq = convex_hull(&[p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)], DEFAULT_TOL);
        let half = clip(&sq, &[HalfPlane::new(1.0, 0.0, 0.5)]).region().unwrap();
        assert!((half.area() - 0.5).abs() < 1e-15);
        assert_eq!(half.vertices().len(), 4);
        assert_eq!(clip(&sq, &[HalfPlane::new(1.0, 0.0, -1.0)]), Clipped::Empty);
    }

    #[test]
    fn half_plane_intersection() {
        let hs = [HalfPlane::new(-1.0, 0.0, 0.0), HalfPlane::new(0.0, -1.0, 0.0), HalfPlane::new(1.0, 1.0, 1.0)];
        let r = intersect_half_planes(&hs, 10.0).region().unwrap();
        assert!((r.area() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let r = triangle().with_meta("d", 3);
        let back = Region::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_csv().starts_with("f,b\n-1,0\n"));
        assert!(r.to_svg(Some(3)).contains("<polygon"));
    }

    #[test]
    fn vertical_extent_of_triangle() {
        let (lo, hi) = triangle().vertical_extent(0.0).unwrap();
        assert!(lo.abs() < 1e-15 && (hi - 0.5).abs() < 1e-15);
        assert!(triangle().vertical_extent(1.5).is_none());
    }
}
