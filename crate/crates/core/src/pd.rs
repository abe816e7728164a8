//! The parallel-diagonal transform and half-area chord midpoints.
//!
//! `Q` has its vertex `Q(i+½) = M_i + μ(i+½) v(i+½)` on the mid-parallel
//! `m(i+½)` and its side `q_i = Q(i+½) - Q(i-½)` parallel to `u_i = P_i - M_i`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::kernel::{
    convex_contains, cross, half, int, line_intersect, shoelace, Line, Point, Rational, Segment,
    Vector,
};
use crate::polygon::{is_symmetric, validate, wrap, CposPolygon, PolygonError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PdError {
    #[error("polygon is symmetric, its area evolute is a point")]
    SymmetricInput,
    #[error("[v(i+1/2), u_i] vanishes at i = {0}")]
    ZeroPivot(usize),
    #[error("recurrence did not close: mu(2n+1/2) - mu(1/2) = {0}")]
    ClosureFailed(Rational),
    #[error("no convex transform found after {0} doublings")]
    NotFound(usize),
}

impl PdError {
    pub fn kind(&self) -> &'static str {
        match self {
            PdError::SymmetricInput => "SymmetricInput",
            PdError::ZeroPivot(_) => "ZeroPivot",
            PdError::ClosureFailed(_) => "ClosureFailed",
            PdError::NotFound(_) => "NotFound",
        }
    }

    pub fn index(&self) -> Option<usize> {
        match self {
            PdError::ZeroPivot(i) => Some(*i),
            _ => None,
        }
    }
}

/// `v(i+½) = M_{i+1} - M_i`.
pub fn v(p: &CposPolygon, i: i64) -> Vector {
    p.diagonal_midpoint(i + 1) - p.diagonal_midpoint(i)
}

/// `u_i = P_i - M_i`.
pub fn u(p: &CposPolygon, i: i64) -> Vector {
    p.vertex(i) - &p.diagonal_midpoint(i)
}

/// Ratios `r_i = [v(i-½), u_i] / [v(i+½), u_i]`, i = 1..2n, so that `μ(i+½) = -(1 - μ(i-½)) r_i`.
fn pivots(p: &CposPolygon) -> Result<Vec<Rational>, PdError> {
    if is_symmetric(p).is_some() {
        return Err(PdError::SymmetricInput);
    }
    (1..=p.len() as i64)
        .map(|i| {
            let ui = u(p, i);
            let den = cross(&v(p, i), &ui);
            if den.is_zero() {
                return Err(PdError::ZeroPivot(i as usize));
            }
            Ok(cross(&v(p, i - 1), &ui) / den)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdConstructionTrace {
    pub mu: Rational,
    /// `μ(i+½)` for i = 1..2n.
    pub mu_seq: Vec<Rational>,
    /// `v(i+½)` for i = 1..2n.
    pub v: Vec<Vector>,
    /// `u_i` for i = 1..2n.
    pub u: Vec<Vector>,
    /// `β(i+½) = μ(i+½) - μ(i+n+½)`.
    pub beta: Vec<Rational>,
    /// `γ(i+½) = μ(i+½) + μ(i+n+½)`.
    pub gamma: Vec<Rational>,
    /// `Q(i+½)` for i = 1..2n.
    pub q: Vec<Point>,
}

impl PdConstructionTrace {
    /// `Q` as a validated polygon, when it happens to be convex.
    pub fn polygon(&self) -> Result<CposPolygon, PolygonError> {
        validate(&self.q)
    }

    fn at<T>(seq: &[T], i: i64) -> &T {
        &seq[wrap(i, seq.len()) - 1]
    }

    pub fn mu_at(&self, i: i64) -> &Rational {
        Self::at(&self.mu_seq, i)
    }
}

pub fn pd_transform(p: &CposPolygon, mu: &Rational) -> Result<PdConstructionTrace, PdError> {
    let r = pivots(p)?;
    let m = p.len();
    let n = p.n();
    let mut mu_seq = Vec::with_capacity(m);
    let mut prev = mu.clone();
    for ri in &r {
        let next = -(int(1) - &prev) * ri;
        mu_seq.push(next.clone());
        prev = next;
    }
    if mu_seq[m - 1] != *mu {
        return Err(PdError::ClosureFailed(&mu_seq[m - 1] - mu));
    }
    let vs: Vec<Vector> = (1..=m as i64).map(|i| v(p, i)).collect();
    let us: Vec<Vector> = (1..=m as i64).map(|i| u(p, i)).collect();
    let beta = (0..m).map(|k| &mu_seq[k] - &mu_seq[(k + n) % m]).collect();
    let gamma = (0..m).map(|k| &mu_seq[k] + &mu_seq[(k + n) % m]).collect();
    let q = (0..m)
        .map(|k| &p.diagonal_midpoint(k as i64 + 1) + &(&vs[k] * &mu_seq[k]))
        .collect();
    Ok(PdConstructionTrace {
        mu: mu.clone(),
        mu_seq,
        v: vs,
        u: us,
        beta,
        gamma,
        q,
    })
}

/// `Q(i+½)` as `base + μ·slope`, i = 1..2n.
pub fn pd_affine(p: &CposPolygon) -> Result<Vec<(Point, Vector)>, PdError> {
    let r = pivots(p)?;
    let m = p.len();
    // μ(i+½) = c0 + c1 μ
    let mut coeffs = Vec::with_capacity(m);
    let (mut c0, mut c1) = (Rational::zero(), Rational::one());
    for ri in &r {
        let n0 = -(int(1) - &c0) * ri;
        let n1 = &c1 * ri;
        coeffs.push((n0.clone(), n1.clone()));
        c0 = n0;
        c1 = n1;
    }
    if !(c0.is_zero() && c1.is_one()) {
        return Err(PdError::ClosureFailed(c0));
    }
    Ok(coeffs
        .into_iter()
        .enumerate()
        .map(|(k, (c0, c1))| {
            let vk = v(p, k as i64 + 1);
            (&p.diagonal_midpoint(k as i64 + 1) + &(&vk * &c0), &vk * &c1)
        })
        .collect())
}

pub fn eval_affine(q: &[(Point, Vector)], mu: &Rational) -> Vec<Point> {
    q.iter().map(|(b, s)| b + &(s * mu)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AreaSplit {
    pub index: usize,
    /// Region cut off by `d_i` containing `P_{i+1}, ..., P_{i+n-1}`.
    pub area_first: Rational,
    pub area_second: Rational,
    pub diff: Rational,
}

pub fn area_split(p: &CposPolygon, i: i64) -> AreaSplit {
    let first = shoelace(&p.boundary_walk(i, i + p.n() as i64));
    let second = p.area() - &first;
    AreaSplit {
        index: wrap(i, p.len()),
        diff: &second - &first,
        area_first: first,
        area_second: second,
    }
}

/// `N(i+½)` for i = 1..n: the midpoint on `m(i+½)` of the chords between
/// `e(i+½)` and `e(i+n+½)` that bisect the area.
///
/// All chords through a point of `m(i+½)` cut the same area, so the chord from
/// `P_i + 2σ e(i+½)` to `P_{i+n}` stands for its family; that area is affine in `σ`.
pub fn half_area_midpoints(p: &CposPolygon) -> Vec<Point> {
    let n = p.n() as i64;
    let target = p.area() * half();
    (1..=n)
        .map(|i| {
            let mut walk = p.boundary_walk(i, i + n);
            let a0 = shoelace(&walk);
            walk[0] = p.vertex(i) + &p.edge(i);
            let slope = (shoelace(&walk) - &a0) * int(2);
            let sigma = (&target - a0) / slope;
            &p.diagonal_midpoint(i) + &(&p.edge(i) * &sigma)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AeOfQReport {
    pub ae_q: Vec<Point>,
    pub n_points: Vec<Point>,
    pub equal: bool,
    pub telescoping: bool,
    pub beta_antisymmetric: bool,
}

impl AeOfQReport {
    pub fn pass(&self) -> bool {
        self.equal && self.telescoping && self.beta_antisymmetric
    }
}

/// Compares `½(Q(i+½) + Q(i+n+½))` with `N(i+½)` and checks
/// `γ(i+½)[v(i+½),u_i] = γ(i-½)[v(i-½),u_i] - 2[v(i-½),u_i]`, which follows from
/// adding the recurrence at `i` and at `i+n`.
pub fn verify_ae_of_q(p: &CposPolygon, mu: &Rational) -> Result<AeOfQReport, PdError> {
    let tr = pd_transform(p, mu)?;
    let n = p.n();
    let m = p.len() as i64;
    let ae_q: Vec<Point> = (0..n)
        .map(|k| Point::midpoint(&tr.q[k], &tr.q[k + n]))
        .collect();
    let n_points = half_area_midpoints(p);
    let at = |seq: &[Rational], i: i64| seq[wrap(i, seq.len()) - 1].clone();
    let telescoping = (1..=m).all(|i| {
        let ui = u(p, i);
        let (vp, vn) = (v(p, i - 1), v(p, i));
        at(&tr.gamma, i) * cross(&vn, &ui)
            == at(&tr.gamma, i - 1) * cross(&vp, &ui) - int(2) * cross(&vp, &ui)
    });
    let beta_antisymmetric = (1..=m).all(|i| at(&tr.beta, i) == -at(&tr.beta, i + n as i64));
    Ok(AeOfQReport {
        equal: ae_q == n_points,
        ae_q,
        n_points,
        telescoping,
        beta_antisymmetric,
    })
}

/// A `μ` making `Q` a convex CPOS polygon that contains the area evolute of `P`.
///
/// Tries `μ = 1, -1, 2, -2, 4, -4, ...`.
pub fn choose_convex_mu(p: &CposPolygon) -> Result<Rational, PdError> {
    let affine = pd_affine(p)?;
    let ae: Vec<Point> = (1..=p.n() as i64).map(|i| p.diagonal_midpoint(i)).collect();
    let mut mag = Rational::one();
    const DOUBLINGS: usize = 64;
    for _ in 0..DOUBLINGS {
        for mu in [mag.clone(), -mag.clone()] {
            let q = eval_affine(&affine, &mu);
            if validate(&q).is_ok() && ae.iter().all(|z| convex_contains(&q, z, true)) {
                return Ok(mu);
            }
        }
        mag *= int(2);
    }
    Err(PdError::NotFound(DOUBLINGS))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryCheck {
    pub index: usize,
    pub chord: Segment,
    pub midpoint_is_n: bool,
    pub halves: (Rational, Rational),
}

/// Wherever the line `P_i N(i+½)` meets the segment `P_{i+n} P_{i+n+1}`, returns the
/// chord, whether its midpoint is `N(i+½)`, and the two areas it cuts. i = 1..2n.
pub fn half_area_corollary(p: &CposPolygon) -> Vec<CorollaryCheck> {
    let n = p.n() as i64;
    let npts = half_area_midpoints(p);
    let mut out = Vec::new();
    for i in 1..=2 * n {
        let np = &npts[(wrap(i, n as usize)) - 1];
        let pi = p.vertex(i);
        if np == pi {
            continue;
        }
        let through = Line {
            base: pi.clone(),
            dir: np - pi,
        };
        let target = Line {
            base: p.vertex(i + n).clone(),
            dir: p.edge(i + n),
        };
        let Some(hit) = line_intersect(&through, &target) else {
            continue;
        };
        let side = Segment::new(p.vertex(i + n).clone(), p.vertex(i + n + 1).clone());
        if !side.contains(&hit) {
            continue;
        }
        let mut region = vec![pi.clone()];
        region.extend(p.boundary_walk(i + 1, i + n));
        region.push(hit.clone());
        let a = shoelace(&region);
        out.push(CorollaryCheck {
            index: i as usize,
            midpoint_is_n: Point::midpoint(pi, &hit) == *np,
            halves: (a.clone(), p.area() - a),
            chord: Segment::new(pi.clone(), hit),
        });
    }
    out
}

/// The bracket relation `[N(i+½) - M_i, P_{i+n} - P_i] = -½ (A²_i - A¹_i)` with `A¹_i`
/// the region containing `P_{i+1}, ..., P_{i+n-1}`.
pub fn bracket_relation_holds(p: &CposPolygon) -> bool {
    let npts = half_area_midpoints(p);
    (1..=p.n() as i64).all(|i| {
        let lhs = cross(
            &(&npts[i as usize - 1] - &p.diagonal_midpoint(i)),
            &p.diagonal(i),
        );
        lhs == -(area_split(p, i).diff * half())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolute::area_evolute;
    use crate::kernel::rat;
    use crate::polygon::{hex_ea2, hex_sym, random_cpos};
    use proptest::prelude::*;

    #[test]
    fn hex_ea2_vectors() {
        let p = hex_ea2();
        assert_eq!(v(&p, 1), Vector::new(rat(-1, 2), int(0)));
        assert_eq!(u(&p, 1), Vector::new(int(0), rat(-3, 2)));
        assert_eq!(cross(&v(&p, 1), &u(&p, 1)), rat(3, 4));
        let s: Rational = (1..=3).map(|j| cross(&v(&p, j), &u(&p, j))).sum();
        assert_eq!(s, rat(3, 4));
        let split = area_split(&p, 1);
        assert_eq!((split.area_first, split.area_second), (rat(5, 2), int(4)));
        assert_eq!(split.diff, int(2) * s);
    }

    #[test]
    fn hex_ea2_n_points() {
        let n = half_area_midpoints(&hex_ea2());
        assert_eq!(
            n,
            vec![
                Point::new(rat(-1, 4), rat(3, 2)),
                Point::new(rat(-1, 2), rat(7, 4)),
                Point::new(rat(-1, 4), rat(7, 4)),
            ]
        );
        assert_eq!(half_area_midpoints(&hex_sym()), vec![Point::origin(); 3]);
        assert!(bracket_relation_holds(&hex_ea2()));
    }

    #[test]
    fn transform_closes_and_matches_n() {
        let p = hex_ea2();
        for mu in [int(2), int(3), int(10)] {
            let r = verify_ae_of_q(&p, &mu).unwrap();
            assert!(r.pass(), "mu = {mu}: {r:?}");
            assert_eq!(r.ae_q, r.n_points);
        }
        let tr = pd_transform(&p, &int(3)).unwrap();
        for i in 1..=6i64 {
            let side = &tr.q[wrap(i, 6) - 1] - &tr.q[wrap(i - 1, 6) - 1];
            assert!(cross(&side, &u(&p, i)).is_zero());
            let mid = crate::evolute::mid_parallel(&p, i);
            assert!(mid.contains(&tr.q[wrap(i, 6) - 1]));
        }
        assert_eq!(
            pd_transform(&hex_sym(), &int(1)),
            Err(PdError::SymmetricInput)
        );
    }

    #[test]
    fn convex_mu_for_fixture() {
        let p = hex_ea2();
        let mu = choose_convex_mu(&p).unwrap();
        let q = pd_transform(&p, &mu).unwrap().polygon().unwrap();
        let ae = area_evolute(&p).unwrap();
        assert!(ae
            .points
            .iter()
            .all(|z| convex_contains(q.vertices(), z, true)));
        let moved = p.translate(&Vector::from_ints(5, -3));
        assert_eq!(choose_convex_mu(&moved).unwrap(), mu);
    }

    #[test]
    fn corollary_on_fixture() {
        let p = hex_ea2();
        let checks = half_area_corollary(&p);
        let indices: Vec<usize> = checks.iter().map(|c| c.index).collect();
        assert!(indices.contains(&1) && indices.contains(&3), "{indices:?}");
        let c1 = checks.iter().find(|c| c.index == 1).unwrap();
        assert_eq!(c1.chord.b, Point::new(rat(-1, 2), int(3)));
        for c in &checks {
            assert!(c.midpoint_is_n);
            assert_eq!(c.halves, (rat(13, 4), rat(13, 4)));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn recurrence_closes_for_any_mu(seed in 0u64..5000, a in -50i64..50, b in 1i64..20) {
            let p = random_cpos(3 + (seed % 6) as usize, seed).unwrap();
            let mu = rat(a, b);
            let r = verify_ae_of_q(&p, &mu).unwrap();
            prop_assert!(r.pass());
            prop_assert!(bracket_relation_holds(&p));
            let s: Rational = (1..=p.n() as i64).map(|j| cross(&v(&p, j), &u(&p, j))).sum();
            prop_assert_eq!(area_split(&p, 1).diff, int(2) * s);
            let vsum = (1..=p.n() as i64).fold(Vector::zero(), |acc, j| acc + v(&p, j));
            prop_assert!(vsum.is_zero());
            for j in 1..=p.len() as i64 {
                prop_assert!(cross(&v(&p, j), &(u(&p, j) - u(&p, j + 1))).is_zero());
            }
        }

        #[test]
        fn affine_form_agrees(seed in 0u64..5000, a in -50i64..50) {
            let p = random_cpos(3 + (seed % 6) as usize, seed).unwrap();
            let mu = rat(a, 3);
            prop_assert_eq!(eval_affine(&pd_affine(&p).unwrap(), &mu), pd_transform(&p, &mu).unwrap().q);
        }
    }
}
