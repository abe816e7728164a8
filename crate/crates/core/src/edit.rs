//! Dragging a vertex while staying in the CPOS class.
//!
//! Edge directions are kept; the unknowns are the edge scale factors `s_l`
//! (edge `l` becomes `s_l e(l+½)`) and the position `τ` of `P_1`. The dragged
//! vertex is pinned to the target, closure `Σ s_l e(l+½) = 0` is imposed, and
//! the remaining vertices move as little as possible in least squares.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::kernel::{rat, Point, Rational, Vector};
use crate::polygon::{validate, wrap, CposPolygon, PolygonError};

/// Smallest fraction of its original length an edge may shrink to.
pub fn min_length_fraction() -> Rational {
    rat(1, 16)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EditError {
    #[error("vertex index {0} is out of range")]
    VertexIndex(usize),
    #[error("projection system is singular")]
    Singular,
    #[error(transparent)]
    Polygon(#[from] PolygonError),
}

impl EditError {
    pub fn kind(&self) -> &'static str {
        match self {
            EditError::VertexIndex(_) => "VertexIndex",
            EditError::Singular => "Singular",
            EditError::Polygon(e) => e.kind(),
        }
    }

    pub fn index(&self) -> Option<usize> {
        match self {
            EditError::VertexIndex(k) => Some(*k),
            EditError::Singular => None,
            EditError::Polygon(e) => e.index(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub polygon: CposPolygon,
    pub scales: Vec<Rational>,
    /// Set when the unconstrained optimum would collapse an edge and the result
    /// stops short of the target.
    pub clamped: bool,
}

/// Gaussian elimination over the rationals; `None` for singular systems.
pub fn solve_linear(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let size = b.len();
    for col in 0..size {
        let pivot = (col..size).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = Rational::one() / &a[col][col];
        let pivot_row = a[col].clone();
        for r in 0..size {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for (x, y) in a[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &f * y;
            }
            let delta = &f * &b[col];
            b[r] -= delta;
        }
    }
    Some((0..size).map(|i| &b[i] / &a[i][i]).collect())
}

fn build(p: &CposPolygon, scales: &[Rational], start: &Point) -> Vec<Point> {
    let mut out = vec![start.clone()];
    for l in 1..p.len() {
        let next = out[l - 1].clone() + p.edge(l as i64) * &scales[l - 1];
        out.push(next);
    }
    out
}

/// Moves vertex `k` (1-based) toward `target`.
pub fn project_vertex(p: &CposPolygon, k: usize, target: &Point) -> Result<Projection, EditError> {
    let m = p.len();
    if k == 0 || k > m {
        return Err(EditError::VertexIndex(k));
    }
    let edges: Vec<Vector> = (1..=m as i64).map(|l| p.edge(l)).collect();
    // unknowns: s_1..s_m, τx, τy ; P_j = τ + Σ_{l<j} s_l e_l
    let nv = m + 2;
    let row_of = |j: usize, axis: usize| -> Vec<Rational> {
        let mut r = vec![Rational::zero(); nv];
        for l in 1..j {
            r[l - 1] = if axis == 0 {
                edges[l - 1].x.clone()
            } else {
                edges[l - 1].y.clone()
            };
        }
        r[m + axis] = Rational::one();
        r
    };
    let mut g: Vec<Vec<Rational>> = Vec::new();
    let mut h: Vec<Rational> = Vec::new();
    for j in (1..=m).filter(|&j| j != k) {
        for axis in 0..2 {
            g.push(row_of(j, axis));
            let v = p.vertex(j as i64);
            h.push(if axis == 0 { v.x.clone() } else { v.y.clone() });
        }
    }
    let mut cons: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for axis in 0..2 {
        let mut r = vec![Rational::zero(); nv];
        for l in 0..m {
            r[l] = if axis == 0 {
                edges[l].x.clone()
            } else {
                edges[l].y.clone()
            };
        }
        cons.push(r);
        rhs.push(Rational::zero());
    }
    for axis in 0..2 {
        cons.push(row_of(k, axis));
        rhs.push(if axis == 0 {
            target.x.clone()
        } else {
            target.y.clone()
        });
    }
    let nc = cons.len();
    let size = nv + nc;
    let mut kkt = vec![vec![Rational::zero(); size]; size];
    let mut b = vec![Rational::zero(); size];
    for (row, hv) in g.iter().zip(&h) {
        for a in 0..nv {
            if row[a].is_zero() {
                continue;
            }
            for c in 0..nv {
                kkt[a][c] += &row[a] * &row[c];
            }
            b[a] += &row[a] * hv;
        }
    }
    for (ci, row) in cons.iter().enumerate() {
        for a in 0..nv {
            kkt[nv + ci][a] = row[a].clone();
            kkt[a][nv + ci] = row[a].clone();
        }
        b[nv + ci] = rhs[ci].clone();
    }
    let sol = solve_linear(kkt, b).ok_or(EditError::Singular)?;
    let best: Vec<Rational> = sol[..m].to_vec();
    let tau = Point::new(sol[m].clone(), sol[m + 1].clone());

    let floor = min_length_fraction();
    let mut theta = Rational::one();
    for s in &best {
        if *s < floor {
            // s(θ) = 1 + θ (s - 1) reaches the floor at θ = (1 - floor) / (1 - s)
            let limit = (Rational::one() - &floor) / (Rational::one() - s);
            if limit < theta {
                theta = limit;
            }
        }
    }
    let clamped = theta < Rational::one();
    let (scales, start) = if clamped {
        let scales: Vec<Rational> = best
            .iter()
            .map(|s| Rational::one() + &theta * (s - Rational::one()))
            .collect();
        let p1 = p.vertex(1);
        let start = p1 + &((&tau - p1) * &theta);
        (scales, start)
    } else {
        (best, tau)
    };
    debug_assert!(scales.iter().all(|s| s.is_positive()));
    let polygon = validate(&build(p, &scales, &start))?;
    Ok(Projection {
        polygon,
        scales,
        clamped,
    })
}

/// Index of the vertex opposite `k`, 1-based.
pub fn opposite_vertex(p: &CposPolygon, k: usize) -> usize {
    wrap(k as i64 + p.n() as i64, p.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::int;
    use crate::polygon::{hex_ea2, hex_sym, is_symmetric, random_cpos};
    use proptest::prelude::*;

    #[test]
    fn solver() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        assert_eq!(
            solve_linear(a, vec![int(3), int(5)]),
            Some(vec![rat(4, 5), rat(7, 5)])
        );
        assert_eq!(
            solve_linear(
                vec![vec![int(1), int(2)], vec![int(2), int(4)]],
                vec![int(1), int(2)]
            ),
            None
        );
    }

    #[test]
    fn identity_drag() {
        let p = hex_ea2();
        let r = project_vertex(&p, 3, p.vertex(3)).unwrap();
        assert_eq!(r.polygon, p);
        assert!(!r.clamped);
    }

    #[test]
    fn drag_along_diagonal() {
        let p = hex_sym();
        let k = 2;
        let away = p.vertex(k as i64)
            + &(p.vertex(k as i64) - p.vertex(opposite_vertex(&p, k) as i64)) * &rat(1, 10);
        let r = project_vertex(&p, k, &away).unwrap();
        assert!(!r.clamped);
        assert_eq!(r.polygon.vertex(k as i64), &away);
        assert!(is_symmetric(&r.polygon).is_none());
        let back = project_vertex(&r.polygon, k, p.vertex(k as i64)).unwrap();
        assert!(back
            .polygon
            .vertices()
            .iter()
            .zip(p.vertices())
            .all(|(a, b)| a == b));
    }

    #[test]
    fn far_drag_is_clamped() {
        let p = hex_ea2();
        let r = project_vertex(&p, 2, &Point::from_ints(-40, 1)).unwrap();
        assert!(r.clamped);
        assert!(r.scales.iter().all(|s| *s >= min_length_fraction()));
        assert_eq!(
            project_vertex(&p, 7, &Point::origin()),
            Err(EditError::VertexIndex(7))
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn drags_stay_cpos(seed in 0u64..2000, k in 1usize..7, dx in -20i64..20, dy in -20i64..20) {
            let p = random_cpos(3, seed).unwrap();
            let target = p.vertex(k as i64) + &Vector::new(rat(dx, 7), rat(dy, 7));
            let r = project_vertex(&p, k, &target).unwrap();
            if !r.clamped {
                prop_assert_eq!(r.polygon.vertex(k as i64), &target);
            }
            for l in 1..=p.len() as i64 {
                prop_assert!(crate::kernel::cross(&r.polygon.edge(l), &p.edge(l)).is_zero());
            }
        }
    }
}
