//! Convex polygons with parallel opposite sides.
//!
//! Vertices are addressed 1-based and cyclically modulo `2n`, so `vertex(0)` is
//! `P_{2n}` and `vertex(2n + 1)` is `P_1`. Edge `i` is `e(i+½) = P_{i+1} - P_i`.

use std::f64::consts::PI;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::kernel::{cross, lcm_denominator, rat, shoelace, Point, Rational, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("vertex count {0} is odd")]
    OddCount(usize),
    #[error("vertex count {0} is below 6")]
    TooSmall(usize),
    #[error("edge {0} is not parallel to its opposite edge")]
    NotParallelOpposite(usize),
    #[error("polygon is not positively oriented")]
    WrongOrientation,
    #[error("polygon is not strictly convex at edge {0}")]
    NotConvex(usize),
    #[error("equal-area construction needs an odd n >= 3, got {0}")]
    EvenOrSmallN(usize),
    #[error("direction vectors must turn clockwise: [w_{0}, w_{next}] >= 0", next = .0 % .1 + 1)]
    DirectionsNotClockwise(usize, usize),
    #[error("direction vectors do not sum to zero")]
    DirectionsDoNotClose,
    #[error("alpha must be positive")]
    NonPositiveAlpha,
    #[error("n must be at least 3, got {0}")]
    InvalidN(usize),
    #[error("no valid polygon after {attempts} attempts (n = {n}, seed = {seed})")]
    GeneratorExhausted {
        n: usize,
        seed: u64,
        attempts: usize,
    },
}

impl PolygonError {
    pub fn kind(&self) -> &'static str {
        match self {
            PolygonError::OddCount(_) => "OddCount",
            PolygonError::TooSmall(_) => "TooSmall",
            PolygonError::NotParallelOpposite(_) => "NotParallelOpposite",
            PolygonError::WrongOrientation => "WrongOrientation",
            PolygonError::NotConvex(_) => "NotConvex",
            PolygonError::EvenOrSmallN(_) => "EvenOrSmallN",
            PolygonError::DirectionsNotClockwise(..) => "DirectionsNotClockwise",
            PolygonError::DirectionsDoNotClose => "DirectionsDoNotClose",
            PolygonError::NonPositiveAlpha => "NonPositiveAlpha",
            PolygonError::InvalidN(_) => "InvalidN",
            PolygonError::GeneratorExhausted { .. } => "GeneratorExhausted",
        }
    }

    pub fn index(&self) -> Option<usize> {
        match self {
            PolygonError::NotParallelOpposite(i) | PolygonError::NotConvex(i) => Some(*i),
            PolygonError::DirectionsNotClockwise(i, _) => Some(*i),
            _ => None,
        }
    }
}

/// Half-integer edge label `i + ½`, stored as `i` in `1..=2n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeIndex(usize);

impl EdgeIndex {
    /// Reduces any integer label into `1..=two_n`.
    pub fn new(i: i64, two_n: usize) -> Self {
        EdgeIndex(wrap(i, two_n))
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn shift(self, by: i64, two_n: usize) -> Self {
        EdgeIndex::new(self.0 as i64 + by, two_n)
    }

    pub fn opposite(self, two_n: usize) -> Self {
        self.shift((two_n / 2) as i64, two_n)
    }
}

impl fmt::Display for EdgeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+1/2", self.0)
    }
}

/// Maps an arbitrary integer to the 1-based cyclic range `1..=m`.
pub fn wrap(i: i64, m: usize) -> usize {
    let m = m as i64;
    ((i - 1).rem_euclid(m) + 1) as usize
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CposPolygon {
    vertices: Vec<Point>,
}

impl CposPolygon {
    /// Number of opposite-side pairs.
    pub fn n(&self) -> usize {
        self.vertices.len() / 2
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// `P_i`, cyclic.
    pub fn vertex(&self, i: i64) -> &Point {
        &self.vertices[wrap(i, self.len()) - 1]
    }

    /// `e(i+½) = P_{i+1} - P_i`.
    pub fn edge(&self, i: i64) -> Vector {
        self.vertex(i + 1) - self.vertex(i)
    }

    /// `M_i`, midpoint of the great diagonal `P_i P_{i+n}`.
    pub fn diagonal_midpoint(&self, i: i64) -> Point {
        Point::midpoint(self.vertex(i), self.vertex(i + self.n() as i64))
    }

    /// `P_{i+n} - P_i`.
    pub fn diagonal(&self, i: i64) -> Vector {
        self.vertex(i + self.n() as i64) - self.vertex(i)
    }

    pub fn area(&self) -> Rational {
        shoelace(&self.vertices)
    }

    pub fn translate(&self, by: &Vector) -> CposPolygon {
        CposPolygon {
            vertices: self.vertices.iter().map(|p| p + by).collect(),
        }
    }

    /// Vertices `P_from, P_{from+1}, ..., P_to` walking forward.
    pub fn boundary_walk(&self, from: i64, to: i64) -> Vec<Point> {
        let steps = (to - from).rem_euclid(self.len() as i64);
        (0..=steps).map(|k| self.vertex(from + k).clone()).collect()
    }
}

/// Checks all CPOS invariants and returns the first violation.
pub fn validate(points: &[Point]) -> Result<CposPolygon, PolygonError> {
    let m = points.len();
    if m % 2 == 1 {
        return Err(PolygonError::OddCount(m));
    }
    if m < 6 {
        return Err(PolygonError::TooSmall(m));
    }
    let n = m / 2;
    let e = |i: usize| &points[i % m] - &points[(i + m - 1) % m];
    let edges: Vec<Vector> = (1..=m).map(e).collect();
    for i in 0..n {
        if !cross(&edges[i], &edges[i + n]).is_zero() {
            return Err(PolygonError::NotParallelOpposite(i + 1));
        }
    }
    if !shoelace(points).is_positive() {
        return Err(PolygonError::WrongOrientation);
    }
    for i in 0..m {
        if !cross(&edges[i], &edges[(i + 1) % m]).is_positive() {
            return Err(PolygonError::NotConvex(i + 1));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if !cross(&edges[i], &edges[j]).is_positive() {
                return Err(PolygonError::NotConvex(i + 1));
            }
        }
    }
    Ok(CposPolygon {
        vertices: points.to_vec(),
    })
}

/// Lenient predicate form of [`validate`].
pub fn is_cpos(points: &[Point]) -> bool {
    validate(points).is_ok()
}

/// The symmetry center, if every `P_i + P_{i+n}` agrees.
pub fn is_symmetric(p: &CposPolygon) -> Option<Point> {
    let n = p.n() as i64;
    let center = p.diagonal_midpoint(1);
    (2..=n)
        .all(|i| p.diagonal_midpoint(i) == center)
        .then_some(center)
}

/// The brackets `[P_i - P_{i-1}, P_{i+1} - P_i]` for i = 1..2n.
pub fn area_brackets(p: &CposPolygon) -> Vec<Rational> {
    (1..=p.len() as i64)
        .map(|i| cross(&p.edge(i - 1), &p.edge(i)))
        .collect()
}

pub fn is_equal_area(p: &CposPolygon) -> bool {
    let b = area_brackets(p);
    b.iter().all(|x| *x == b[0])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualAreaClass {
    pub n: usize,
    /// `e(n+1+½) = -alpha * e(1+½)`; the ratios then alternate `alpha`, `1/alpha`.
    pub alpha: Rational,
    pub symmetric: bool,
}

/// Recovers the construction parameters of an equal-area polygon.
pub fn classify_equal_area(p: &CposPolygon) -> Option<EqualAreaClass> {
    if !is_equal_area(p) {
        return None;
    }
    let ratio = |i: i64| p.edge(i + p.n() as i64).ratio_to(&p.edge(i)).map(|r| -r);
    let alpha = ratio(1)?;
    Some(EqualAreaClass {
        n: p.n(),
        symmetric: alpha.is_one(),
        alpha,
    })
}

/// Builds the non-symmetric equal-area `2n`-gon from `n` (odd) directions.
pub fn make_equal_area_nonsymmetric(
    w: &[Vector],
    alpha: &Rational,
    base: &Point,
) -> Result<CposPolygon, PolygonError> {
    let n = w.len();
    if n < 3 || n.is_multiple_of(2) {
        return Err(PolygonError::EvenOrSmallN(n));
    }
    if !alpha.is_positive() {
        return Err(PolygonError::NonPositiveAlpha);
    }
    for i in 0..n {
        if !cross(&w[i], &w[(i + 1) % n]).is_negative() {
            return Err(PolygonError::DirectionsNotClockwise(i + 1, n));
        }
    }
    if !w.iter().fold(Vector::zero(), |acc, v| acc + v).is_zero() {
        return Err(PolygonError::DirectionsDoNotClose);
    }
    let scaled = |v: &Vector| -(v * alpha);
    let mut sides = Vec::with_capacity(2 * n);
    for (k, v) in w.iter().enumerate() {
        // k is 0-based, so odd labels are even k
        sides.push(if k % 2 == 0 { v.clone() } else { scaled(v) });
    }
    for (k, v) in w.iter().enumerate() {
        sides.push(if k % 2 == 0 { scaled(v) } else { v.clone() });
    }
    let mut pts = Vec::with_capacity(2 * n);
    let mut cur = base.clone();
    for s in &sides {
        pts.push(cur.clone());
        cur = &cur + s;
    }
    validate(&pts)
}

const DIRECTION_SCALE: f64 = 1000.0;
const MAX_ATTEMPTS: usize = 1000;

/// A deterministic pseudo-random CPOS `2n`-gon with integer vertices.
///
/// Directions `w_k` are integer vectors with increasing angle in `(0, π)`. Edge
/// `k` is `t_k w_k` and edge `k+n` is `-s_k w_k` with `t_k` uniform in `[1/2, 3/2]`
/// and `s_k = t_k + d_k`; the offsets `d_k` are small and nonzero for `k ≥ 2`
/// (`d_k = 0` would make `M_k = M_{k+1}`) and `d_0, d_1` are solved exactly from
/// closure `Σ d_k w_k = 0`. Polygons with two coinciding consecutive diagonal
/// midpoints are rejected. The result is scaled to integer coordinates.
pub fn random_cpos(n: usize, seed: u64) -> Result<CposPolygon, PolygonError> {
    if n < 3 {
        return Err(PolygonError::InvalidN(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..PI)).collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let w: Vec<Vector> = angles
            .iter()
            .map(|a| {
                Vector::from_ints(
                    (a.cos() * DIRECTION_SCALE).round() as i64,
                    (a.sin() * DIRECTION_SCALE).round() as i64,
                )
            })
            .collect();
        let turning = (0..n - 1).all(|k| cross(&w[k], &w[k + 1]).is_positive())
            && cross(&w[n - 1], &-&w[0]).is_positive();
        if !turning {
            continue;
        }
        let t: Vec<Rational> = (0..n)
            .map(|_| rat(rng.gen_range(5000..=15000), 10000))
            .collect();
        let mut d: Vec<Rational> = (0..n)
            .map(|_| {
                let mag = rng.gen_range(1..=2500);
                rat(if rng.gen_bool(0.5) { mag } else { -mag }, 10000)
            })
            .collect();
        let Some((d0, d1)) = close_offsets(&w, &d) else {
            continue;
        };
        d[0] = d0;
        d[1] = d1;
        let s: Vec<Rational> = (0..n).map(|k| &t[k] + &d[k]).collect();
        if s.iter().any(|l| !l.is_positive()) {
            continue;
        }
        let mut sides: Vec<Vector> = (0..n).map(|k| &w[k] * &t[k]).collect();
        sides.extend((0..n).map(|k| -(&w[k] * &s[k])));
        let mut pts = Vec::with_capacity(2 * n);
        let mut cur = Point::origin();
        for side in &sides {
            pts.push(cur.clone());
            cur = &cur + side;
        }
        if let Ok(p) = validate(&pts) {
            let m = p.len() as i64;
            if (1..=m).all(|i| p.diagonal_midpoint(i) != p.diagonal_midpoint(i + 1)) {
                return Ok(clear_denominators(&p));
            }
        }
    }
    Err(PolygonError::GeneratorExhausted {
        n,
        seed,
        attempts: MAX_ATTEMPTS,
    })
}

/// `(d_0, d_1)` with `d_0 w_0 + d_1 w_1 = -Σ_{k≥2} d_k w_k`.
fn close_offsets(w: &[Vector], d: &[Rational]) -> Option<(Rational, Rational)> {
    let rest = (2..w.len()).fold(Vector::zero(), |acc, k| acc - &w[k] * &d[k]);
    let det = cross(&w[0], &w[1]);
    if det.is_zero() {
        return None;
    }
    Some((cross(&rest, &w[1]) / &det, cross(&w[0], &rest) / &det))
}

/// Scales a polygon so every coordinate becomes an integer; handy for fixtures.
pub fn clear_denominators(p: &CposPolygon) -> CposPolygon {
    let coords: Vec<Rational> = p
        .vertices
        .iter()
        .flat_map(|v| [v.x.clone(), v.y.clone()])
        .collect();
    let k = BigRational::from_integer(lcm_denominator(&coords));
    CposPolygon {
        vertices: p
            .vertices
            .iter()
            .map(|v| Point::new(&v.x * &k, &v.y * &k))
            .collect(),
    }
}

/// Convenience constructor from integer pairs.
pub fn polygon_from_ints(pts: &[(i64, i64)]) -> Result<CposPolygon, PolygonError> {
    let pts: Vec<Point> = pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect();
    validate(&pts)
}

/// The fixture `[(2,0),(1,2),(-1,2),(-2,0),(-1,-2),(1,-2)]`.
pub fn hex_sym() -> CposPolygon {
    polygon_from_ints(&[(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)]).unwrap()
}

/// The equal-area fixture `[(0,0),(1,0),(1,2),(0,3),(-2,3),(-2,2)]` (alpha = 2).
pub fn hex_ea2() -> CposPolygon {
    polygon_from_ints(&[(0, 0), (1, 0), (1, 2), (0, 3), (-2, 3), (-2, 2)]).unwrap()
}
