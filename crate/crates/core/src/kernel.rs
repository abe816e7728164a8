//! Exact planar primitives.
//!
//! Every coordinate is a [`Rational`]; no predicate in this crate ever rounds.
//! Floating point only appears when exporting for display (see [`to_f64`]).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational scalar in canonical form (`gcd(|num|, den) = 1`, `den > 0`).
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("polygon needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("point is not on the line")]
    NotOnLine,
    #[error("line direction is the zero vector")]
    ZeroDirection,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// `n / d` as an exact rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn half() -> Rational {
    rat(1, 2)
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-0.25"` or `"1e-3"`,
/// always exactly.
pub fn parse_rational(s: &str) -> Result<Rational, KernelError> {
    let err = || KernelError::Parse(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(k) => {
            let e: i64 = t[k + 1..].parse().map_err(|_| err())?;
            (&t[..k], e)
        }
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    let all = format!("{int_part}{frac_part}");
    let num: BigInt = all.parse().map_err(|_| err())?;
    let scale = exp - frac_part.len() as i64;
    if scale.unsigned_abs() > 10_000 {
        return Err(err());
    }
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(num);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -value } else { value })
}

/// Display-only conversion.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: shift both down before dividing.
        let n = r.numer().bits() as i64;
        let d = r.denom().bits() as i64;
        let shift = (n.max(d) - 1000).max(0) as u64;
        let nn = (r.numer() >> shift).to_f64().unwrap_or(0.0);
        let dd = (r.denom() >> shift).to_f64().unwrap_or(1.0);
        nn / dd
    })
}

/// Axis box `[xmin, xmax, ymin, ymax]` of a segment in floating point, padded so
/// that disjoint boxes imply disjoint exact segments.
pub fn padded_box(a: &Point, b: &Point) -> [f64; 4] {
    let (ax, ay) = a.to_f64();
    let (bx, by) = b.to_f64();
    let pad = 1e-9 * (1.0 + ax.abs().max(ay.abs()).max(bx.abs()).max(by.abs()));
    [
        ax.min(bx) - pad,
        ax.max(bx) + pad,
        ay.min(by) - pad,
        ay.max(by) + pad,
    ]
}

pub fn boxes_overlap(a: &[f64; 4], b: &[f64; 4]) -> bool {
    !(a[1] < b[0] || b[1] < a[0] || a[3] < b[2] || b[3] < a[2])
}

/// The rational with the smallest denominator strictly between `lo` and `hi`
/// (`hi = None` is unbounded).
pub fn simplest_between(lo: &Rational, hi: Option<&Rational>) -> Rational {
    let f = lo.floor();
    let next = &f + Rational::one();
    match hi {
        None => next,
        Some(h) if next < *h => next,
        Some(h) => {
            // no integer inside: lo and hi share the integer part f (or hi = f + 1)
            let inv_hi = Rational::one() / (h - &f);
            let frac = lo - &f;
            let y = if frac.is_zero() {
                simplest_between(&inv_hi, None)
            } else {
                simplest_between(&inv_hi, Some(&(Rational::one() / frac)))
            };
            f + Rational::one() / y
        }
    }
}

fn normalized(num: BigInt, den: BigInt) -> Rational {
    if den.is_one() {
        Rational::from_integer(num)
    } else {
        Rational::new(num, den)
    }
}

/// `a + s b` for `s = ±1` with at most one normalisation.
fn combine(a: &Rational, b: &Rational, negate: bool) -> Rational {
    let (an, ad, bn, bd) = (a.numer(), a.denom(), b.numer(), b.denom());
    let (x, y, den) = if ad == bd {
        (an.clone(), bn.clone(), ad.clone())
    } else {
        (an * bd, bn * ad, ad * bd)
    };
    normalized(if negate { x - y } else { x + y }, den)
}

pub(crate) fn radd(a: &Rational, b: &Rational) -> Rational {
    combine(a, b, false)
}

pub(crate) fn rsub(a: &Rational, b: &Rational) -> Rational {
    combine(a, b, true)
}

pub(crate) fn rmul(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

/// Sign as -1, 0 or 1.
pub fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    pub fn origin() -> Self {
        Point::new(Rational::zero(), Rational::zero())
    }

    pub fn midpoint(a: &Point, b: &Point) -> Point {
        let halve = |s: Rational| normalized(s.numer().clone(), s.denom() * 2);
        Point::new(halve(radd(&a.x, &b.x)), halve(radd(&a.y, &b.y)))
    }

    /// `a + t (b - a)`.
    pub fn lerp(a: &Point, b: &Point, t: &Rational) -> Point {
        a + &((b - a) * t)
    }

    /// Point reflection through `center`.
    pub fn reflect(&self, center: &Point) -> Point {
        let two = Rational::from_integer(2.into());
        Point::new(
            rsub(&rmul(&two, &center.x), &self.x),
            rsub(&rmul(&two, &center.y), &self.y),
        )
    }

    pub fn to_vector(&self) -> Vector {
        Vector::new(self.x.clone(), self.y.clone())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }
}

impl Vector {
    pub fn new(x: Rational, y: Rational) -> Self {
        Vector { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Vector::new(int(x), int(y))
    }

    pub fn zero() -> Self {
        Vector::new(Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn cross(&self, other: &Vector) -> Rational {
        cross(self, other)
    }

    pub fn dot(&self, other: &Vector) -> Rational {
        radd(&rmul(&self.x, &other.x), &rmul(&self.y, &other.y))
    }

    /// Counterclockwise quarter turn.
    pub fn perp(&self) -> Vector {
        Vector::new(-&self.y, self.x.clone())
    }

    pub fn is_parallel(&self, other: &Vector) -> bool {
        cross(self, other).is_zero()
    }

    /// The scalar `k` with `self = k * along`, when `self` is parallel to the nonzero `along`.
    pub fn ratio_to(&self, along: &Vector) -> Option<Rational> {
        if along.is_zero() || !self.is_parallel(along) {
            return None;
        }
        Some(self.dot(along) / along.dot(along))
    }
}

/// The determinant bracket `[u, v] = u.x v.y - u.y v.x`.
pub fn cross(u: &Vector, v: &Vector) -> Rational {
    let (n1, d1) = (u.x.numer() * v.y.numer(), u.x.denom() * v.y.denom());
    let (n2, d2) = (u.y.numer() * v.x.numer(), u.y.denom() * v.x.denom());
    let (num, den) = if d1 == d2 {
        (n1 - n2, d1)
    } else {
        (n1 * &d2 - n2 * &d1, d1 * d2)
    };
    if den.is_one() {
        Rational::from_integer(num)
    } else {
        Rational::new(num, den)
    }
}

/// Orientation of `c` relative to the directed line `a -> b`.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Rational {
    cross(&(b - a), &(c - a))
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.x, self.y)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $lhs:ty, $rhs:ty, $out:ty) => {
        impl $tr<$rhs> for $lhs {
            type Output = $out;
            fn $m(self, rhs: $rhs) -> $out {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$rhs> for $lhs {
            type Output = $out;
            fn $m(self, rhs: &$rhs) -> $out {
                (&self).$m(rhs)
            }
        }
        impl $tr<$rhs> for &$lhs {
            type Output = $out;
            fn $m(self, rhs: $rhs) -> $out {
                self.$m(&rhs)
            }
        }
    };
}

impl Sub<&Point> for &Point {
    type Output = Vector;
    fn sub(self, rhs: &Point) -> Vector {
        Vector::new(rsub(&self.x, &rhs.x), rsub(&self.y, &rhs.y))
    }
}
forward_owned!(Sub, sub, Point, Point, Vector);

impl Add<&Vector> for &Point {
    type Output = Point;
    fn add(self, rhs: &Vector) -> Point {
        Point::new(radd(&self.x, &rhs.x), radd(&self.y, &rhs.y))
    }
}
forward_owned!(Add, add, Point, Vector, Point);

impl Sub<&Vector> for &Point {
    type Output = Point;
    fn sub(self, rhs: &Vector) -> Point {
        Point::new(rsub(&self.x, &rhs.x), rsub(&self.y, &rhs.y))
    }
}
forward_owned!(Sub, sub, Point, Vector, Point);

impl Add<&Vector> for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector::new(radd(&self.x, &rhs.x), radd(&self.y, &rhs.y))
    }
}
forward_owned!(Add, add, Vector, Vector, Vector);

impl Sub<&Vector> for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        Vector::new(rsub(&self.x, &rhs.x), rsub(&self.y, &rhs.y))
    }
}
forward_owned!(Sub, sub, Vector, Vector, Vector);

impl Mul<&Rational> for &Vector {
    type Output = Vector;
    fn mul(self, k: &Rational) -> Vector {
        Vector::new(rmul(&self.x, k), rmul(&self.y, k))
    }
}
forward_owned!(Mul, mul, Vector, Rational, Vector);

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector::new(-&self.x, -&self.y)
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        -&self
    }
}

/// An infinite line `base + t dir`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub base: Point,
    pub dir: Vector,
}

impl Line {
    pub fn new(base: Point, dir: Vector) -> Result<Self, KernelError> {
        if dir.is_zero() {
            return Err(KernelError::ZeroDirection);
        }
        Ok(Line { base, dir })
    }

    /// The line through `a` and `b`; `a != b` is required.
    pub fn through(a: &Point, b: &Point) -> Result<Self, KernelError> {
        Line::new(a.clone(), b - a)
    }

    pub fn contains(&self, p: &Point) -> bool {
        cross(&self.dir, &(p - &self.base)).is_zero()
    }

    pub fn at(&self, t: &Rational) -> Point {
        &self.base + &(&self.dir * t)
    }

    /// Signed side of `p`: positive when `p` is to the left of `dir`.
    pub fn side(&self, p: &Point) -> Rational {
        cross(&self.dir, &(p - &self.base))
    }
}

/// Intersection of two lines, `None` when they are parallel (coincident or disjoint).
pub fn line_intersect(l1: &Line, l2: &Line) -> Option<Point> {
    let den = cross(&l1.dir, &l2.dir);
    if den.is_zero() {
        return None;
    }
    let t = cross(&(&l2.base - &l1.base), &l2.dir) / den;
    Some(l1.at(&t))
}

/// Parameter `t` with `p = base + t dir`.
pub fn segment_param(l: &Line, p: &Point) -> Result<Rational, KernelError> {
    if !l.contains(p) {
        return Err(KernelError::NotOnLine);
    }
    let d = &l.dir;
    Ok((p - &l.base).dot(d) / d.dot(d))
}

/// Signed shoelace area, positive for counterclockwise order.
pub fn polygon_area(pts: &[Point]) -> Result<Rational, KernelError> {
    if pts.len() < 3 {
        return Err(KernelError::TooFewPoints(pts.len()));
    }
    Ok(shoelace(pts))
}

/// Shoelace without the size gate; degenerate inputs give zero.
pub(crate) fn shoelace(pts: &[Point]) -> Rational {
    let mut twice = Rational::zero();
    for (k, a) in pts.iter().enumerate() {
        let b = &pts[(k + 1) % pts.len()];
        twice += &a.x * &b.y - &a.y * &b.x;
    }
    twice * half()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentHit {
    Point(Point),
    Overlap(Segment),
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn direction(&self) -> Vector {
        &self.b - &self.a
    }

    pub fn midpoint(&self) -> Point {
        Point::midpoint(&self.a, &self.b)
    }

    /// Closed containment, exact.
    pub fn contains(&self, p: &Point) -> bool {
        if self.is_degenerate() {
            return *p == self.a;
        }
        let d = self.direction();
        let w = p - &self.a;
        if !cross(&d, &w).is_zero() {
            return false;
        }
        let t = w.dot(&d);
        !t.is_negative() && t <= d.dot(&d)
    }

    /// Containment excluding the two endpoints.
    pub fn contains_interior(&self, p: &Point) -> bool {
        self.contains(p) && *p != self.a && *p != self.b
    }

    /// Parameter of a point on the segment's line (0 at `a`, 1 at `b`).
    pub fn param(&self, p: &Point) -> Option<Rational> {
        if self.is_degenerate() {
            return None;
        }
        let d = self.direction();
        Some((p - &self.a).dot(&d) / d.dot(&d))
    }

    pub fn intersect(&self, other: &Segment) -> Option<SegmentHit> {
        if self.is_degenerate() {
            return other
                .contains(&self.a)
                .then(|| SegmentHit::Point(self.a.clone()));
        }
        if other.is_degenerate() {
            return self
                .contains(&other.a)
                .then(|| SegmentHit::Point(other.a.clone()));
        }
        let d1 = self.direction();
        let d2 = other.direction();
        let den = cross(&d1, &d2);
        let w = &other.a - &self.a;
        if den.is_zero() {
            if !cross(&d1, &w).is_zero() {
                return None;
            }
            let len = d1.dot(&d1);
            let t0 = w.dot(&d1) / &len;
            let t1 = (&other.b - &self.a).dot(&d1) / &len;
            let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
            let lo = lo.max(Rational::zero());
            let hi = hi.min(Rational::one());
            if lo > hi {
                return None;
            }
            let pa = &self.a + &(&d1 * &lo);
            if lo == hi {
                return Some(SegmentHit::Point(pa));
            }
            let pb = &self.a + &(&d1 * &hi);
            return Some(SegmentHit::Overlap(Segment::new(pa, pb)));
        }
        let t = cross(&w, &d2) / &den;
        let s = cross(&w, &d1) / &den;
        let unit = |r: &Rational| !r.is_negative() && *r <= Rational::one();
        (unit(&t) && unit(&s)).then(|| SegmentHit::Point(&self.a + &(&d1 * &t)))
    }
}

/// Containment in a positively oriented convex polygon. `strict` excludes the boundary.
pub fn convex_contains(poly: &[Point], p: &Point, strict: bool) -> bool {
    let m = poly.len();
    (0..m).all(|k| {
        let o = orient(&poly[k], &poly[(k + 1) % m], p);
        if strict {
            o.is_positive()
        } else {
            !o.is_negative()
        }
    })
}

/// Winding number of a closed polyline around `p` (which must not lie on it).
pub fn winding_number(poly: &[Point], p: &Point) -> i64 {
    let m = poly.len();
    let mut w = 0;
    for k in 0..m {
        let a = &poly[k];
        let b = &poly[(k + 1) % m];
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p).is_positive() {
                w += 1;
            }
        } else if b.y <= p.y && orient(a, b, p).is_negative() {
            w -= 1;
        }
    }
    w
}

/// Least common denominator helper used by generators to keep numbers readable.
pub(crate) fn lcm_denominator(values: &[Rational]) -> BigInt {
    values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(x: Rational, y: Rational) -> Vector {
        Vector::new(x, y)
    }

    #[test]
    fn simplest_rationals() {
        let s = |a: (i64, i64), b: Option<(i64, i64)>| {
            simplest_between(&rat(a.0, a.1), b.map(|b| rat(b.0, b.1)).as_ref())
        };
        assert_eq!(s((-1, 1), Some((0, 1))), rat(-1, 2));
        assert_eq!(s((1, 3), Some((1, 2))), rat(2, 5));
        assert_eq!(s((5, 2), None), int(3));
        assert_eq!(s((2, 1), Some((3, 1))), rat(5, 2));
        assert_eq!(s((-7, 3), Some((-9, 4))), rat(-16, 7));
    }

    #[test]
    fn cross_examples() {
        assert_eq!(
            cross(&Vector::from_ints(1, 0), &Vector::from_ints(0, 1)),
            int(1)
        );
        assert_eq!(
            cross(&Vector::from_ints(1, 0), &Vector::from_ints(2, 0)),
            int(0)
        );
        // [v(3/2), u_1] on the equal-area hexagon
        assert_eq!(
            cross(&v(rat(-1, 2), int(0)), &v(int(0), rat(-3, 2))),
            rat(3, 4)
        );
    }

    #[test]
    fn line_intersect_examples() {
        let xaxis = Line::new(Point::origin(), Vector::from_ints(1, 0)).unwrap();
        let yaxis = Line::new(Point::origin(), Vector::from_ints(0, 1)).unwrap();
        assert_eq!(line_intersect(&xaxis, &yaxis), Some(Point::origin()));

        let d1 = Line::new(Point::origin(), Vector::from_ints(0, 1)).unwrap();
        let d2 = Line::new(Point::from_ints(1, 0), Vector::from_ints(-3, 3)).unwrap();
        assert_eq!(line_intersect(&d1, &d2), Some(Point::from_ints(0, 1)));

        let h = Line::new(Point::from_ints(0, 5), Vector::from_ints(1, 0)).unwrap();
        assert_eq!(line_intersect(&xaxis, &h), None);
    }

    #[test]
    fn area_examples() {
        let square = [(0, 0), (1, 0), (1, 1), (0, 1)].map(|(x, y)| Point::from_ints(x, y));
        assert_eq!(polygon_area(&square).unwrap(), int(1));
        let mut hex: Vec<Point> = [(0, 0), (1, 0), (1, 2), (0, 3), (-2, 3), (-2, 2)]
            .iter()
            .map(|&(x, y)| Point::from_ints(x, y))
            .collect();
        assert_eq!(polygon_area(&hex).unwrap(), rat(13, 2));
        hex.reverse();
        assert_eq!(polygon_area(&hex).unwrap(), rat(-13, 2));
        assert_eq!(
            polygon_area(&square[..2]),
            Err(KernelError::TooFewPoints(2))
        );
    }

    #[test]
    fn segment_param_examples() {
        let l = Line::new(Point::origin(), Vector::from_ints(0, 3)).unwrap();
        assert_eq!(
            segment_param(&l, &Point::from_ints(0, 1)).unwrap(),
            rat(1, 3)
        );
        assert_eq!(segment_param(&l, &Point::origin()).unwrap(), int(0));
        assert_eq!(segment_param(&l, &Point::from_ints(0, 3)).unwrap(), int(1));
        assert_eq!(
            segment_param(&l, &Point::from_ints(1, 1)),
            Err(KernelError::NotOnLine)
        );
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("1.5e2").unwrap(), int(150));
        assert_eq!(parse_rational("-.5").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn segment_intersections() {
        let s = Segment::new(Point::from_ints(0, 0), Point::from_ints(2, 0));
        let t = Segment::new(Point::from_ints(1, -1), Point::from_ints(1, 1));
        assert_eq!(
            s.intersect(&t),
            Some(SegmentHit::Point(Point::from_ints(1, 0)))
        );
        let u = Segment::new(Point::from_ints(1, 0), Point::from_ints(3, 0));
        assert_eq!(
            s.intersect(&u),
            Some(SegmentHit::Overlap(Segment::new(
                Point::from_ints(1, 0),
                Point::from_ints(2, 0)
            )))
        );
        let far = Segment::new(Point::from_ints(5, 5), Point::from_ints(6, 5));
        assert_eq!(s.intersect(&far), None);
        let dot = Segment::new(Point::from_ints(7, 7), Point::from_ints(7, 7));
        assert!(!dot.contains(&Point::from_ints(0, 0)));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..12).prop_map(|(n, d)| rat(n, d))
    }

    fn small_vector() -> impl Strategy<Value = Vector> {
        (small_rational(), small_rational()).prop_map(|(x, y)| Vector::new(x, y))
    }

    fn small_point() -> impl Strategy<Value = Point> {
        (small_rational(), small_rational()).prop_map(|(x, y)| Point::new(x, y))
    }

    proptest! {
        #[test]
        fn cross_is_antisymmetric_and_bilinear(
            u in small_vector(), v in small_vector(), w in small_vector(), k in small_rational()
        ) {
            prop_assert_eq!(cross(&u, &v), -cross(&v, &u));
            prop_assert_eq!(cross(&(&u + &w), &v), cross(&u, &v) + cross(&w, &v));
            prop_assert_eq!(cross(&(&u * &k), &v), &k * cross(&u, &v));
        }

        #[test]
        fn intersection_lies_on_both_lines(
            a in small_point(), d1 in small_vector(), b in small_point(), d2 in small_vector()
        ) {
            prop_assume!(!d1.is_zero() && !d2.is_zero());
            let l1 = Line::new(a, d1).unwrap();
            let l2 = Line::new(b, d2).unwrap();
            match line_intersect(&l1, &l2) {
                Some(p) => {
                    prop_assert!(l1.contains(&p));
                    prop_assert!(l2.contains(&p));
                }
                None => prop_assert!(l1.dir.is_parallel(&l2.dir)),
            }
        }

        #[test]
        fn triangle_area_is_half_cross(a in small_point(), b in small_point(), c in small_point()) {
            let area = polygon_area(&[a.clone(), b.clone(), c.clone()]).unwrap();
            prop_assert_eq!(area, cross(&(&b - &a), &(&c - &a)) * half());
        }
    }
}
