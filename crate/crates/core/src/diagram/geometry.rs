//! Plane geometry on polylines: crossing tests, signed area, turning.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }

    fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }
}

impl From<[f64; 2]> for Point {
    fn from(p: [f64; 2]) -> Self {
        Point::new(p[0], p[1])
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    b.sub(a).cross(c.sub(a))
}

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// Whether `p` lies on the closed segment `[a, b]`.
pub fn on_segment(a: Point, b: Point, p: Point) -> bool {
    orient(a, b, p) == 0.0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SegmentContact {
    Disjoint,
    /// The segments meet in exactly one point.
    Touch(Point),
    /// Collinear with an overlap of positive length.
    Overlap,
}

pub fn segment_contact(p1: Point, p2: Point, p3: Point, p4: Point) -> SegmentContact {
    let d1 = sign(orient(p3, p4, p1));
    let d2 = sign(orient(p3, p4, p2));
    let d3 = sign(orient(p1, p2, p3));
    let d4 = sign(orient(p1, p2, p4));

    if d1 == 0 && d2 == 0 {
        // collinear: project on the dominant axis
        let key = |p: Point| {
            if (p2.x - p1.x).abs() >= (p2.y - p1.y).abs() {
                p.x
            } else {
                p.y
            }
        };
        let (a0, a1) = minmax(key(p1), key(p2));
        let (b0, b1) = minmax(key(p3), key(p4));
        let lo = a0.max(b0);
        let hi = a1.min(b1);
        if lo > hi {
            return SegmentContact::Disjoint;
        }
        if lo < hi {
            return SegmentContact::Overlap;
        }
        let pt = [p1, p2, p3, p4]
            .into_iter()
            .find(|p| key(*p) == lo)
            .expect("touch point is an endpoint");
        return SegmentContact::Touch(pt);
    }

    if d1 * d2 < 0 && d3 * d4 < 0 {
        let r = p2.sub(p1);
        let s = p4.sub(p3);
        let t = p3.sub(p1).cross(s) / r.cross(s);
        return SegmentContact::Touch(Point::new(p1.x + t * r.x, p1.y + t * r.y));
    }
    for (p, a, b) in [(p1, p3, p4), (p2, p3, p4), (p3, p1, p2), (p4, p1, p2)] {
        if on_segment(a, b, p) {
            return SegmentContact::Touch(p);
        }
    }
    SegmentContact::Disjoint
}

fn minmax(a: f64, b: f64) -> (f64, f64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Twice the signed area of a closed polygon (positive when counter-clockwise).
pub fn doubled_signed_area(points: &[Point]) -> f64 {
    let n = points.len();
    (0..n).map(|i| points[i].cross(points[(i + 1) % n])).sum()
}

/// Signed angle (radians, in `(-pi, pi]`) turning from direction `a` to `b`.
pub fn turning_angle(a: Point, b: Point) -> f64 {
    a.cross(b).atan2(a.dot(b))
}

/// Direction of the first segment of a polyline.
pub fn start_direction(points: &[Point]) -> Point {
    points[1].sub(points[0])
}

/// Direction of the last segment of a polyline.
pub fn end_direction(points: &[Point]) -> Point {
    let n = points.len();
    points[n - 1].sub(points[n - 2])
}

/// Total turning at the interior corners of an open polyline.
pub fn interior_turning(points: &[Point]) -> f64 {
    points
        .windows(3)
        .map(|w| turning_angle(w[1].sub(w[0]), w[2].sub(w[1])))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn proper_crossing() {
        match segment_contact(p(0., 0.), p(2., 2.), p(0., 2.), p(2., 0.)) {
            SegmentContact::Touch(q) => assert_eq!(q, p(1., 1.)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn shared_endpoint_and_disjoint() {
        assert_eq!(
            segment_contact(p(0., 0.), p(1., 0.), p(1., 0.), p(1., 1.)),
            SegmentContact::Touch(p(1., 0.))
        );
        assert_eq!(
            segment_contact(p(0., 0.), p(1., 0.), p(0., 1.), p(1., 1.)),
            SegmentContact::Disjoint
        );
    }

    #[test]
    fn collinear_cases() {
        assert_eq!(
            segment_contact(p(0., 0.), p(2., 0.), p(1., 0.), p(3., 0.)),
            SegmentContact::Overlap
        );
        assert_eq!(
            segment_contact(p(0., 0.), p(1., 0.), p(1., 0.), p(3., 0.)),
            SegmentContact::Touch(p(1., 0.))
        );
        assert_eq!(
            segment_contact(p(0., 0.), p(1., 0.), p(2., 0.), p(3., 0.)),
            SegmentContact::Disjoint
        );
    }

    #[test]
    fn t_junction_touch() {
        assert_eq!(
            segment_contact(p(0., 0.), p(2., 0.), p(1., 0.), p(1., 1.)),
            SegmentContact::Touch(p(1., 0.))
        );
    }

    #[test]
    fn area_and_turning_agree_on_orientation() {
        let square = [p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)];
        assert_eq!(doubled_signed_area(&square), 2.0);
        let mut closed = square.to_vec();
        closed.push(square[0]);
        closed.push(square[1]);
        let total = interior_turning(&closed);
        assert!((total - 2.0 * std::f64::consts::PI).abs() < 1e-12);
    }
}
