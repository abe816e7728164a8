//! Great diagonals, the area evolute and the central symmetry set.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::kernel::{
    cross, half, int, line_intersect, segment_param, Line, Point, Rational, Segment,
};
use crate::polygon::{classify_equal_area, is_symmetric, CposPolygon};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvoluteError {
    #[error("diagonals {0} and {next} are parallel", next = .0 + 1)]
    AdjacentDiagonalsParallel(usize),
    #[error("central symmetry set is degenerate at index {0}: D(i-1/2) = D(i+1/2)")]
    DegenerateCss(usize),
    #[error("lambda sequence has a plateau at index {0}")]
    PlateauLambda(usize),
    #[error("centered lambda vanishes at index {0}")]
    LambdaHatZero(usize),
    #[error("polygon is symmetric")]
    SymmetricInput,
    #[error("polygon is not equal-area")]
    NotEqualArea,
}

impl EvoluteError {
    pub fn kind(&self) -> &'static str {
        match self {
            EvoluteError::AdjacentDiagonalsParallel(_) => "AdjacentDiagonalsParallel",
            EvoluteError::DegenerateCss(_) => "DegenerateCss",
            EvoluteError::PlateauLambda(_) => "PlateauLambda",
            EvoluteError::LambdaHatZero(_) => "LambdaHatZero",
            EvoluteError::SymmetricInput => "SymmetricInput",
            EvoluteError::NotEqualArea => "NotEqualArea",
        }
    }

    pub fn index(&self) -> Option<usize> {
        match self {
            EvoluteError::AdjacentDiagonalsParallel(i)
            | EvoluteError::DegenerateCss(i)
            | EvoluteError::PlateauLambda(i)
            | EvoluteError::LambdaHatZero(i) => Some(*i),
            _ => None,
        }
    }
}

/// Great diagonal `d_i` through `P_i` and `P_{i+n}`, parametrized from `P_i`.
pub fn great_diagonal(p: &CposPolygon, i: i64) -> Line {
    Line {
        base: p.vertex(i).clone(),
        dir: p.diagonal(i),
    }
}

/// `(λ(i+½), D(i+½))` where `D(i+½) = d_i ∩ d_{i+1}`.
pub fn css_vertex(p: &CposPolygon, i: i64) -> Result<(Rational, Point), EvoluteError> {
    let di = great_diagonal(p, i);
    let dj = great_diagonal(p, i + 1);
    let d = line_intersect(&di, &dj).ok_or(EvoluteError::AdjacentDiagonalsParallel(
        crate::polygon::wrap(i, p.len()),
    ))?;
    let lambda = segment_param(&di, &d).expect("intersection lies on the diagonal");
    Ok((lambda, d))
}

/// `λ(i+½)` for i = 1..2n.
pub fn lambda_sequence(p: &CposPolygon) -> Result<Vec<Rational>, EvoluteError> {
    let n = p.n() as i64;
    let first: Vec<Rational> = (1..=n)
        .map(|i| css_vertex(p, i).map(|(l, _)| l))
        .collect::<Result<_, _>>()?;
    let mut all = first.clone();
    all.extend(first.iter().map(|l| int(1) - l));
    Ok(all)
}

/// `λ(i+½)` for any integer `i`, read cyclically from a 2n sequence.
pub fn lambda_at(seq: &[Rational], i: i64) -> &Rational {
    &seq[crate::polygon::wrap(i, seq.len()) - 1]
}

pub fn lambda_hat(lambda: &Rational) -> Rational {
    lambda - half()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalFrame {
    pub index: usize,
    pub diagonal: Line,
    pub midpoint: Point,
    pub css_prev: Point,
    pub css_next: Point,
    pub lambda_next: Rational,
    pub lambda_hat_next: Rational,
}

pub fn diagonal_frames(p: &CposPolygon) -> Result<Vec<DiagonalFrame>, EvoluteError> {
    let n = p.n() as i64;
    (1..=n)
        .map(|i| {
            let (_, prev) = css_vertex(p, i - 1)?;
            let (lambda, next) = css_vertex(p, i)?;
            Ok(DiagonalFrame {
                index: i as usize,
                diagonal: great_diagonal(p, i),
                midpoint: p.diagonal_midpoint(i),
                css_prev: prev,
                css_next: next,
                lambda_hat_next: lambda_hat(&lambda),
                lambda_next: lambda,
            })
        })
        .collect()
}

/// Reason a chain's cusp flags are absent or trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    /// The chain collapsed to a single point (symmetric input).
    Point,
    DegenerateCss(usize),
    PlateauLambda(usize),
    LambdaHatZero(usize),
}

impl Degeneracy {
    pub fn kind(&self) -> &'static str {
        match self {
            Degeneracy::Point => "point",
            Degeneracy::DegenerateCss(_) => "DegenerateCss",
            Degeneracy::PlateauLambda(_) => "PlateauLambda",
            Degeneracy::LambdaHatZero(_) => "LambdaHatZero",
        }
    }

    pub fn index(&self) -> Option<usize> {
        match self {
            Degeneracy::Point => None,
            Degeneracy::DegenerateCss(i)
            | Degeneracy::PlateauLambda(i)
            | Degeneracy::LambdaHatZero(i) => Some(*i),
        }
    }
}

/// Ordered chain of points with per-vertex cusp flags.
///
/// Closed chains carry one flag per point, open chains one per interior point.
/// When `degenerate` is set the flags are empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyChain {
    pub points: Vec<Point>,
    pub closed: bool,
    pub cusp_flags: Vec<bool>,
    pub degenerate: Option<Degeneracy>,
}

impl PolyChain {
    pub fn cusp_count(&self) -> usize {
        self.cusp_flags.iter().filter(|c| **c).count()
    }

    pub fn cusp_points(&self) -> Vec<Point> {
        let offset = if self.closed { 0 } else { 1 };
        self.cusp_flags
            .iter()
            .enumerate()
            .filter(|(_, c)| **c)
            .map(|(k, _)| self.points[k + offset].clone())
            .collect()
    }

    pub fn segments(&self) -> Vec<Segment> {
        let m = self.points.len();
        if m < 2 {
            return Vec::new();
        }
        let count = if self.closed { m } else { m - 1 };
        (0..count)
            .map(|k| Segment::new(self.points[k].clone(), self.points[(k + 1) % m].clone()))
            .collect()
    }

    /// Closed point-on-chain test.
    pub fn contains(&self, x: &Point) -> bool {
        if self.points.len() == 1 {
            return self.points[0] == *x;
        }
        self.segments().iter().any(|s| s.contains(x))
    }
}

fn first_degenerate_css(p: &CposPolygon) -> Result<Option<usize>, EvoluteError> {
    for i in 1..=p.n() as i64 {
        if css_vertex(p, i - 1)?.1 == css_vertex(p, i)?.1 {
            return Ok(Some(i as usize));
        }
    }
    Ok(None)
}

/// Indices `i` in `1..=n` whose `M_i` is an AE cusp, or the degeneracy preventing classification.
pub fn ae_cusp_flags(p: &CposPolygon) -> Result<Result<Vec<bool>, Degeneracy>, EvoluteError> {
    if is_symmetric(p).is_some() {
        return Ok(Err(Degeneracy::Point));
    }
    if let Some(i) = first_degenerate_css(p)? {
        return Ok(Err(Degeneracy::DegenerateCss(i)));
    }
    let seq = lambda_sequence(p)?;
    let hats: Vec<Rational> = seq.iter().map(lambda_hat).collect();
    if let Some(k) = hats.iter().position(|h| h.is_zero()) {
        return Ok(Err(Degeneracy::LambdaHatZero(k + 1)));
    }
    let n = p.n() as i64;
    Ok(Ok((1..=n)
        .map(|i| (lambda_at(&hats, i - 1) * lambda_at(&hats, i)).is_negative())
        .collect()))
}

/// Flags for `D(i+½)`, i = 0..n-1: strict local extremum of the cyclic λ sequence.
pub fn css_cusp_flags(p: &CposPolygon) -> Result<Result<Vec<bool>, Degeneracy>, EvoluteError> {
    if is_symmetric(p).is_some() {
        return Ok(Err(Degeneracy::Point));
    }
    if let Some(i) = first_degenerate_css(p)? {
        return Ok(Err(Degeneracy::DegenerateCss(i)));
    }
    let seq = lambda_sequence(p)?;
    for i in 1..=seq.len() as i64 {
        if lambda_at(&seq, i - 1) == lambda_at(&seq, i) {
            return Ok(Err(Degeneracy::PlateauLambda(i as usize)));
        }
    }
    let n = p.n() as i64;
    Ok(Ok((0..n)
        .map(|i| {
            let (a, b, c) = (
                lambda_at(&seq, i - 1),
                lambda_at(&seq, i),
                lambda_at(&seq, i + 1),
            );
            (b > a && b > c) || (b < a && b < c)
        })
        .collect()))
}

fn chain_from(points: Vec<Point>, flags: Result<Vec<bool>, Degeneracy>) -> PolyChain {
    match flags {
        Ok(cusp_flags) => PolyChain {
            points,
            closed: true,
            cusp_flags,
            degenerate: None,
        },
        Err(Degeneracy::Point) => PolyChain {
            points: vec![points[0].clone()],
            closed: true,
            cusp_flags: Vec::new(),
            degenerate: Some(Degeneracy::Point),
        },
        Err(d) => PolyChain {
            points,
            closed: true,
            cusp_flags: Vec::new(),
            degenerate: Some(d),
        },
    }
}

/// The closed chain `M_1, ..., M_n`.
pub fn area_evolute(p: &CposPolygon) -> Result<PolyChain, EvoluteError> {
    let points = (1..=p.n() as i64).map(|i| p.diagonal_midpoint(i)).collect();
    Ok(chain_from(points, ae_cusp_flags(p)?))
}

/// The closed chain `D(½), ..., D(n-½)`.
pub fn central_symmetry_set(p: &CposPolygon) -> Result<PolyChain, EvoluteError> {
    let points = (0..p.n() as i64)
        .map(|i| css_vertex(p, i).map(|(_, d)| d))
        .collect::<Result<_, _>>()?;
    Ok(chain_from(points, css_cusp_flags(p)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MidpointReport {
    pub holds: bool,
    pub alpha: Rational,
    pub lambda_tilde: Rational,
}

/// For an equal-area non-symmetric polygon, checks `2 M_i = D(i-½) + D(i+½)` and
/// `|λ̂(i+½)| = |α - 1| / (2 (1 + α))` for every index.
pub fn nonsymmetric_equal_area_midpoint_check(
    p: &CposPolygon,
) -> Result<MidpointReport, EvoluteError> {
    let class = classify_equal_area(p).ok_or(EvoluteError::NotEqualArea)?;
    if class.symmetric || is_symmetric(p).is_some() {
        return Err(EvoluteError::SymmetricInput);
    }
    let alpha = class.alpha;
    let lambda_tilde = ((&alpha - int(1)) / (int(2) * (int(1) + &alpha))).abs();
    let seq = lambda_sequence(p)?;
    let midpoints_ok = (1..=p.n() as i64).map(|i| -> Result<bool, EvoluteError> {
        let (_, prev) = css_vertex(p, i - 1)?;
        let (_, next) = css_vertex(p, i)?;
        Ok(Point::midpoint(&prev, &next) == p.diagonal_midpoint(i))
    });
    let mut holds = true;
    for ok in midpoints_ok {
        holds &= ok?;
    }
    holds &= seq.iter().all(|l| lambda_hat(l).abs() == lambda_tilde);
    Ok(MidpointReport {
        holds,
        alpha,
        lambda_tilde,
    })
}

/// Mid-parallel `m(i+½)`: through `M_i` with direction `e(i+½)`.
pub fn mid_parallel(p: &CposPolygon, i: i64) -> Line {
    Line {
        base: p.diagonal_midpoint(i),
        dir: p.edge(i),
    }
}

/// AE edge `M_i M_{i+1}` is parallel to `e(i+½)`.
pub fn ae_edge_parallel(p: &CposPolygon, i: i64) -> bool {
    let v = p.diagonal_midpoint(i + 1) - p.diagonal_midpoint(i);
    cross(&v, &p.edge(i)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;
    use crate::kernel::Vector;
    use crate::polygon::{hex_ea2, hex_sym, make_equal_area_nonsymmetric, random_cpos};
    use proptest::prelude::*;

    fn pt(x: Rational, y: Rational) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn hex_ea2_frames() {
        let f = diagonal_frames(&hex_ea2()).unwrap();
        let m: Vec<Point> = f.iter().map(|fr| fr.midpoint.clone()).collect();
        assert_eq!(
            m,
            vec![
                pt(int(0), rat(3, 2)),
                pt(rat(-1, 2), rat(3, 2)),
                pt(rat(-1, 2), int(2))
            ]
        );
        assert_eq!(f[0].css_prev, Point::from_ints(0, 2));
        assert_eq!(f[0].css_next, Point::from_ints(0, 1));
        assert_eq!(f[1].css_next, Point::from_ints(-1, 2));
        let lambdas: Vec<Rational> = f.iter().map(|fr| fr.lambda_next.clone()).collect();
        assert_eq!(lambdas, vec![rat(1, 3), rat(2, 3), rat(1, 3)]);
        assert_eq!(css_vertex(&hex_ea2(), 0).unwrap().0, rat(2, 3));
        assert_eq!(
            lambda_sequence(&hex_ea2()).unwrap(),
            vec![
                rat(1, 3),
                rat(2, 3),
                rat(1, 3),
                rat(2, 3),
                rat(1, 3),
                rat(2, 3)
            ]
        );
    }

    #[test]
    fn hex_sym_frames_collapse() {
        for fr in diagonal_frames(&hex_sym()).unwrap() {
            assert_eq!(fr.midpoint, Point::origin());
            assert_eq!(fr.css_next, Point::origin());
            assert_eq!(fr.lambda_next, half());
        }
        let ae = area_evolute(&hex_sym()).unwrap();
        assert_eq!(ae.points, vec![Point::origin()]);
        assert_eq!(ae.degenerate, Some(Degeneracy::Point));
        let css = central_symmetry_set(&hex_sym()).unwrap();
        assert_eq!(css.points, vec![Point::origin()]);
    }

    #[test]
    fn hex_ea2_chains_all_cusps() {
        let ae = area_evolute(&hex_ea2()).unwrap();
        assert_eq!(ae.cusp_flags, vec![true; 3]);
        let css = central_symmetry_set(&hex_ea2()).unwrap();
        assert_eq!(
            css.points,
            vec![
                Point::from_ints(0, 2),
                Point::from_ints(0, 1),
                Point::from_ints(-1, 2)
            ]
        );
        assert_eq!(css.cusp_flags, vec![true; 3]);
    }

    #[test]
    fn midpoint_property() {
        let r = nonsymmetric_equal_area_midpoint_check(&hex_ea2()).unwrap();
        assert!(r.holds);
        assert_eq!(r.lambda_tilde, rat(1, 6));
        let w = [
            Vector::from_ints(1, 0),
            Vector::from_ints(0, -1),
            Vector::from_ints(-1, 1),
        ];
        let p3 = make_equal_area_nonsymmetric(&w, &int(3), &Point::origin()).unwrap();
        let r3 = nonsymmetric_equal_area_midpoint_check(&p3).unwrap();
        assert!(r3.holds);
        assert_eq!(r3.lambda_tilde, rat(1, 4));
        assert_eq!(
            nonsymmetric_equal_area_midpoint_check(&hex_sym()).unwrap_err(),
            EvoluteError::SymmetricInput
        );
    }

    fn concurrent_octagon() -> CposPolygon {
        crate::polygon::validate(&[
            Point::from_ints(3, 0),
            Point::from_ints(3, 3),
            Point::from_ints(0, 3),
            Point::from_ints(-3, 2),
            Point::from_ints(-4, 0),
            Point::from_ints(-4, -4),
            Point::from_ints(0, -4),
            pt(rat(6, 5), rat(-18, 5)),
        ])
        .unwrap()
    }

    #[test]
    fn concurrent_diagonals_withhold_cusps() {
        // d_1, d_2, d_3 meet at the origin, so D(3/2) = D(5/2)
        let p = concurrent_octagon();
        assert!(is_symmetric(&p).is_none());
        let ae = area_evolute(&p).unwrap();
        assert_eq!(ae.degenerate, Some(Degeneracy::DegenerateCss(2)));
        assert!(ae.cusp_flags.is_empty());
        assert_eq!(ae.points.len(), 4);
        let css = central_symmetry_set(&p).unwrap();
        assert_eq!(css.degenerate, Some(Degeneracy::DegenerateCss(2)));
    }

    proptest! {
        #[test]
        fn frame_invariants(n in 3usize..8, seed in 0u64..2000) {
            let p = random_cpos(n, seed).unwrap();
            let seq = lambda_sequence(&p).unwrap();
            for i in 1..=n as i64 {
                let (l, d) = css_vertex(&p, i).unwrap();
                prop_assert!(great_diagonal(&p, i).contains(&d));
                prop_assert!(great_diagonal(&p, i + 1).contains(&d));
                prop_assert_eq!(&d, &great_diagonal(&p, i).at(&l));
                prop_assert_eq!(lambda_at(&seq, i + n as i64), &(int(1) - &l));
                prop_assert!(l > int(0) && l < int(1));
                prop_assert!(ae_edge_parallel(&p, i));
            }
        }

        #[test]
        fn sign_changes_are_twice_ae_cusps(n in 3usize..8, seed in 0u64..2000) {
            let p = random_cpos(n, seed).unwrap();
            let ae = area_evolute(&p).unwrap();
            prop_assume!(ae.degenerate.is_none());
            let hats: Vec<Rational> = lambda_sequence(&p).unwrap().iter().map(lambda_hat).collect();
            let changes = (1..=hats.len() as i64)
                .filter(|&i| (lambda_at(&hats, i - 1) * lambda_at(&hats, i)).is_negative())
                .count();
            prop_assert_eq!(changes, 2 * ae.cusp_count());
        }
    }
}
