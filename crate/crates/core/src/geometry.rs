//! Exact planar predicates on the junior plane `x + y + z = 1`.

use num_traits::{Signed, Zero};

use crate::rational::Q;

pub(crate) type Point = (Q, Q);

/// Radial projection of a non-zero vector of the closed orthant onto the
/// junior plane, in the affine chart `(x, y)`.
pub(crate) fn project(v: &[Q]) -> Option<Point> {
    let s: Q = v.iter().sum();
    if s.is_zero() || v.len() != 3 {
        return None;
    }
    Some((v[0] / s, v[1] / s))
}

pub(crate) fn orient(a: &Point, b: &Point, c: &Point) -> Q {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// Twice the unsigned area.
pub(crate) fn doubled_area(t: &[Point; 3]) -> Q {
    orient(&t[0], &t[1], &t[2]).abs()
}

/// True if the open interiors of two non-degenerate triangles meet.
pub(crate) fn interiors_overlap(a: &[Point; 3], b: &[Point; 3]) -> bool {
    !(separated_by_edge_of(a, b) || separated_by_edge_of(b, a))
}

fn separated_by_edge_of(p: &[Point; 3], other: &[Point; 3]) -> bool {
    (0..3).any(|k| {
        let (s, e, third) = (&p[k], &p[(k + 1) % 3], &p[(k + 2) % 3]);
        let side = orient(s, e, third).signum();
        other.iter().all(|x| orient(s, e, x) * side <= Q::zero())
    })
}

/// True if `x` lies strictly between `a` and `b` on the segment `ab`.
pub(crate) fn in_open_segment(x: &Point, a: &Point, b: &Point) -> bool {
    if !orient(a, b, x).is_zero() || x == a || x == b {
        return false;
    }
    let within = |p: Q, q: Q, r: Q| (p <= r && r <= q) || (q <= r && r <= p);
    within(a.0, b.0, x.0) && within(a.1, b.1, x.1)
}

/// True if the open segment `ab` passes through the open interior of the triangle.
pub(crate) fn segment_crosses_triangle(a: &Point, b: &Point, t: &[Point; 3]) -> bool {
    // A segment is a degenerate convex set: test separating axes of the triangle
    // and the segment's own line.
    for k in 0..3 {
        let (s, e, third) = (&t[k], &t[(k + 1) % 3], &t[(k + 2) % 3]);
        let side = orient(s, e, third).signum();
        if orient(s, e, a) * side <= Q::zero() && orient(s, e, b) * side <= Q::zero() {
            return false;
        }
    }
    let signs: Vec<Q> = t.iter().map(|p| orient(a, b, p).signum()).collect();
    let pos = signs.iter().any(|s| s.is_positive());
    let neg = signs.iter().any(|s| s.is_negative());
    pos && neg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        (Q::from_integer(x), Q::from_integer(y))
    }

    #[test]
    fn overlap_predicates() {
        let a = [p(0, 0), p(2, 0), p(0, 2)];
        let b = [p(2, 0), p(0, 2), p(2, 2)];
        let c = [p(1, 0), p(3, 0), p(1, 2)];
        assert!(!interiors_overlap(&a, &b));
        assert!(interiors_overlap(&a, &c));
        assert!(interiors_overlap(&a, &a));
        assert!(in_open_segment(&p(1, 1), &p(0, 0), &p(2, 2)));
        assert!(!in_open_segment(&p(2, 2), &p(0, 0), &p(2, 2)));
        assert!(segment_crosses_triangle(
            &p(-1, 1),
            &p(3, 1),
            &[p(0, 0), p(2, 0), p(0, 2)]
        ));
        assert!(!segment_crosses_triangle(&p(2, 0), &p(0, 2), &a));
        assert_eq!(doubled_area(&a), Q::from_integer(4));
    }
}
