//! The theorem suite: every module invariant evaluated exactly on one polygon.

use num_traits::Signed;
use serde_json::{json, Value};

use crate::chords::{nchords_faces, verify_jump_law};
use crate::equidistant::polyline_self_intersections;
use crate::equidistant::{
    cusp_function, cusp_locus, equidistant_self_intersections, ess_trace, sweep_levels,
    sweep_misses, EndpointKind,
};
use crate::evolute::{
    ae_edge_parallel, area_evolute, central_symmetry_set, lambda_at, lambda_hat, lambda_sequence,
    nonsymmetric_equal_area_midpoint_check, Degeneracy,
};
use crate::io::Refusal;
use crate::kernel::{cross, int, rat, winding_number, Point, Rational, Segment};
use crate::parallels::{
    almost_symmetry, chains_touch, classify_l_segment, q_is_rectified_parallel, rass, rass_from,
    rectified_parallels, sample_levels, RectifiedParallel,
};
use crate::pd::{
    area_split, bracket_relation_holds, half_area_corollary, pd_transform, u, v, verify_ae_of_q,
};
use crate::polygon::{classify_equal_area, is_equal_area, is_symmetric, validate, CposPolygon};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn pass(&self) -> bool {
        self.items.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&CheckItem> {
        self.items
            .iter()
            .filter(|c| c.status == Status::Fail)
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.pass(),
            "checks": self.items.iter().map(|c| json!({
                "name": c.name,
                "status": c.status.as_str(),
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }

    fn push(&mut self, name: &'static str, outcome: Result<Option<String>, Refusal>, ok: bool) {
        let (status, detail) = match outcome {
            Ok(Some(skip)) => (Status::Skipped, skip),
            Ok(None) => (if ok { Status::Pass } else { Status::Fail }, String::new()),
            Err(r) => (Status::Fail, r.to_string()),
        };
        self.items.push(CheckItem {
            name,
            status,
            detail,
        });
    }

    fn record(&mut self, name: &'static str, f: impl FnOnce() -> Result<Verdict, Refusal>) {
        match f() {
            Ok(Verdict::Holds) => self.push(name, Ok(None), true),
            Ok(Verdict::Fails(why)) => {
                self.items.push(CheckItem {
                    name,
                    status: Status::Fail,
                    detail: why,
                });
            }
            Ok(Verdict::Skip(why)) => self.push(name, Ok(Some(why)), true),
            Err(r) => self.push(name, Err(r), false),
        }
    }
}

enum Verdict {
    Holds,
    Fails(String),
    Skip(String),
}

fn verdict(ok: bool, why: impl FnOnce() -> String) -> Verdict {
    if ok {
        Verdict::Holds
    } else {
        Verdict::Fails(why())
    }
}

/// Options trading coverage for time.
#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub jump_samples_per_edge: usize,
    pub sweep_levels: usize,
    pub parallel_levels: usize,
    pub rass_levels: usize,
    /// Build the full face map for `chord_count_positive`; the costliest check.
    pub face_map: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            jump_samples_per_edge: 3,
            sweep_levels: 200,
            parallel_levels: 20,
            rass_levels: 20,
            face_map: true,
        }
    }
}

fn unordered(s: &Segment) -> (Point, Point) {
    if s.a <= s.b {
        (s.a.clone(), s.b.clone())
    } else {
        (s.b.clone(), s.a.clone())
    }
}

/// Runs the full suite with default options.
pub fn run_checks(p: &CposPolygon) -> CheckReport {
    run_checks_with(p, &CheckOptions::default())
}

pub fn run_checks_with(p: &CposPolygon, opts: &CheckOptions) -> CheckReport {
    let mut r = CheckReport::default();
    let n = p.n() as i64;
    let m = p.len() as i64;
    let symmetric = is_symmetric(p).is_some();

    r.record("polygon_is_cpos", || {
        Ok(verdict(validate(p.vertices()).as_ref() == Ok(p), || {
            "revalidation differs".into()
        }))
    });

    r.record("ae_edges_on_mid_parallels", || {
        Ok(verdict((1..=m).all(|i| ae_edge_parallel(p, i)), || {
            "an AE edge is not parallel to its side".into()
        }))
    });

    r.record("point_collapse_iff_symmetric", || {
        let ae_point = area_evolute(p)?.degenerate == Some(Degeneracy::Point);
        let css_point = central_symmetry_set(p)?.degenerate == Some(Degeneracy::Point);
        let ae_set_point = (1..=n).all(|i| p.diagonal_midpoint(i) == p.diagonal_midpoint(1));
        Ok(verdict(
            ae_point == symmetric && css_point == symmetric && ae_set_point == symmetric,
            || format!("ae point {ae_point}, css point {css_point}, symmetric {symmetric}"),
        ))
    });

    r.record("cusp_counts", || {
        let ae = area_evolute(p)?;
        let css = central_symmetry_set(p)?;
        if let Some(d) = ae.degenerate.as_ref().or(css.degenerate.as_ref()) {
            return Ok(Verdict::Skip(format!("degenerate: {}", d.kind())));
        }
        let (a, c) = (ae.cusp_count(), css.cusp_count());
        Ok(verdict(
            a % 2 == 1 && a >= 3 && c % 2 == 1 && c >= a,
            || format!("AE cusps {a}, CSS cusps {c}"),
        ))
    });

    r.record("lambda_sign_changes", || {
        let ae = area_evolute(p)?;
        if ae.degenerate.is_some() {
            return Ok(Verdict::Skip("degenerate evolute".into()));
        }
        let hats: Vec<Rational> = lambda_sequence(p)?.iter().map(lambda_hat).collect();
        let changes = (1..=m)
            .filter(|&i| (lambda_at(&hats, i - 1) * lambda_at(&hats, i)).is_negative())
            .count();
        let anti = (1..=n).all(|i| lambda_at(&hats, i + n) == &-lambda_at(&hats, i));
        Ok(verdict(anti && changes == 2 * ae.cusp_count(), || {
            format!("{changes} sign changes")
        }))
    });

    r.record("equal_area_midpoint_property", || {
        if !is_equal_area(p) {
            return Ok(Verdict::Skip("not equal-area".into()));
        }
        let class = classify_equal_area(p);
        if symmetric {
            return Ok(verdict(class.is_some(), || {
                "symmetric polygon not classified".into()
            }));
        }
        let Some(class) = class else {
            return Ok(Verdict::Fails("classification failed".into()));
        };
        let report = nonsymmetric_equal_area_midpoint_check(p)?;
        Ok(verdict(
            class.n % 2 == 1 && report.holds && report.alpha == class.alpha,
            || format!("{report:?}"),
        ))
    });

    r.record("jump_law", || {
        if symmetric {
            return Ok(Verdict::Skip("evolute is a point".into()));
        }
        let rep = verify_jump_law(p, opts.jump_samples_per_edge)?;
        Ok(verdict(rep.pass(), || {
            let bad: Vec<usize> = rep
                .edges
                .iter()
                .filter(|e| !e.pass)
                .map(|e| e.index)
                .collect();
            format!("edges {bad:?}")
        }))
    });

    r.record("chord_count_positive", || {
        if !opts.face_map {
            return Ok(Verdict::Skip("face map disabled".into()));
        }
        let faces = nchords_faces(p);
        let ok = faces.iter().all(|(_, k)| *k >= 1);
        if symmetric {
            let c = is_symmetric(p).unwrap();
            let centre = crate::chords::count_midpoint_chords(p, &c)?;
            return Ok(verdict(ok && centre == n as usize, || {
                format!("N(centre) = {centre}")
            }));
        }
        Ok(verdict(ok, || "a face has no chord".into()))
    });

    r.record("cusp_locus_is_css", || {
        if symmetric {
            return Ok(Verdict::Skip("CSS is a point".into()));
        }
        let css = central_symmetry_set(p)?;
        let mut want: Vec<(Point, Point)> = css.segments().iter().map(unordered).collect();
        let mut got: Vec<(Point, Point)> = cusp_locus(p)?
            .iter()
            .filter(|c| c.interval.is_some())
            .map(|c| unordered(&c.sweep))
            .collect();
        want.sort();
        want.dedup();
        got.sort();
        got.dedup();
        Ok(verdict(want == got, || {
            format!(
                "{} locus segments vs {} CSS segments",
                got.len(),
                want.len()
            )
        }))
    });

    r.record("cusp_function_sign", || {
        let seq = lambda_sequence(p)?;
        let ok = (1..=m).all(|i| {
            let (a, b) = (lambda_at(&seq, i - 1), lambda_at(&seq, i));
            (1..40).all(|k| {
                let t = rat(k, 40);
                let between = (a < &t && &t < b) || (b < &t && &t < a);
                cusp_function(p, i, &t).is_negative() == between
            })
        });
        Ok(verdict(ok, || {
            "sign disagrees with the lambda interval".into()
        }))
    });

    r.record("equidistant_edge_directions", || {
        let ok = [rat(-3, 2), rat(1, 3), rat(7, 5)].iter().all(|t| {
            let e = crate::equidistant::equidistant(p, t);
            (0..p.len()).all(|k| {
                let side = &e.points[(k + 1) % p.len()] - &e.points[k];
                cross(&side, &p.edge(k as i64 + 1)) == int(0)
            })
        });
        Ok(verdict(ok, || "an equidistant side turned".into()))
    });

    r.record("ess_endpoints_and_junctions", || {
        let branches = ess_trace(p)?;
        if symmetric {
            let simple = [rat(1, 5), rat(2, 5), rat(3, 5), rat(4, 5)]
                .iter()
                .all(|t| equidistant_self_intersections(p, t).is_empty());
            return Ok(verdict(branches.is_empty() && simple, || {
                "symmetric ESS not empty".into()
            }));
        }
        let css = central_symmetry_set(p)?;
        let ae_cusps = area_evolute(p)?.cusp_points();
        let css_cusps = css.cusp_points();
        for b in &branches {
            if let (Some(kinds), Some(ends)) = (b.endpoint_kinds, b.endpoints()) {
                for (kind, x) in kinds.iter().zip(&ends) {
                    let ok = match kind {
                        EndpointKind::CssCusp => css_cusps.contains(x),
                        EndpointKind::AeCusp => ae_cusps.contains(x),
                    };
                    if !ok {
                        return Ok(Verdict::Fails(format!(
                            "endpoint {x:?} is not a {}",
                            kind.as_str()
                        )));
                    }
                }
            }
            for (x, flag) in b.junctions.iter().zip(&b.cusp_vertices) {
                if *flag != css.contains(x) {
                    return Ok(Verdict::Fails(format!("junction {x:?} flag {flag}")));
                }
            }
        }
        Ok(Verdict::Holds)
    });

    r.record("ess_sweep_oracle", || {
        let branches = ess_trace(p)?;
        let misses = sweep_misses(p, &branches, &sweep_levels(opts.sweep_levels));
        Ok(verdict(misses.is_empty(), || {
            format!("{} sweep points off the branches", misses.len())
        }))
    });

    r.record("transform_closure", || {
        if symmetric {
            return Ok(Verdict::Skip("polygon is symmetric".into()));
        }
        for mu in [int(2), int(3), int(10), rat(-1, 2), rat(7, 3)] {
            let rep = verify_ae_of_q(p, &mu)?;
            if !rep.pass() {
                return Ok(Verdict::Fails(format!("mu = {mu}")));
            }
            let q = pd_transform(p, &mu)?;
            let moves = (1..=m)
                .all(|i| crate::evolute::mid_parallel(p, i).contains(&q.q[(i - 1) as usize]));
            if !moves {
                return Ok(Verdict::Fails(format!(
                    "mu = {mu}: vertex off its mid-parallel"
                )));
            }
        }
        Ok(Verdict::Holds)
    });

    r.record("transform_lemma_and_brackets", || {
        if symmetric {
            return Ok(Verdict::Skip("polygon is symmetric".into()));
        }
        let s: Rational = (1..=n).map(|j| cross(&v(p, j), &u(p, j))).sum();
        Ok(verdict(
            area_split(p, 1).diff == int(2) * s && bracket_relation_holds(p),
            || "area difference disagrees".into(),
        ))
    });

    r.record("half_area_corollary", || {
        let checks = half_area_corollary(p);
        let half = p.area() / int(2);
        Ok(verdict(
            checks
                .iter()
                .all(|c| c.midpoint_is_n && c.halves.0 == half && c.halves.1 == half),
            || "a corollary chord misses N or the half area".into(),
        ))
    });

    let levels = sample_levels(p, opts.parallel_levels);
    let parallels: Result<Vec<RectifiedParallel>, Refusal> =
        rectified_parallels(p, &levels).map_err(Refusal::from);

    r.record("parallel_cusps_on_evolute", || {
        let ae = area_evolute(p)?;
        for rp in parallels.clone()? {
            for c in &rp.chains {
                for (x, flag) in c.points.iter().zip(&c.cusp_flags) {
                    if *flag != ae.contains(x) {
                        return Ok(Verdict::Fails(format!("level {}: vertex {x:?}", rp.level)));
                    }
                }
            }
        }
        Ok(Verdict::Holds)
    });

    r.record("parallel_lemma_regimes", || {
        for rp in parallels.clone()? {
            for l in &rp.segments {
                if !classify_l_segment(p, l).1 {
                    return Ok(Verdict::Fails(format!(
                        "level {} cell {:?}",
                        rp.level, l.cell
                    )));
                }
            }
        }
        Ok(Verdict::Holds)
    });

    r.record("parallel_levels_disjoint", || {
        let ps = parallels.clone()?;
        let simple: Vec<bool> = ps
            .iter()
            .map(|rp| {
                rp.chains
                    .iter()
                    .all(|c| polyline_self_intersections(&c.points).is_empty())
            })
            .collect();
        for a in 0..ps.len() {
            for b in a + 1..ps.len() {
                let cross_cell = simple[a] && simple[b];
                for ca in &ps[a].chains {
                    for cb in &ps[b].chains {
                        if cross_cell && chains_touch(ca, cb) {
                            return Ok(Verdict::Fails(format!(
                                "levels {} and {}",
                                ps[a].level, ps[b].level
                            )));
                        }
                    }
                }
                for la in &ps[a].segments {
                    for lb in ps[b].segments.iter().filter(|l| l.cell == la.cell) {
                        if la.segment().intersect(&lb.segment()).is_some() {
                            return Ok(Verdict::Fails(format!("cell {:?}", la.cell)));
                        }
                    }
                }
            }
        }
        Ok(Verdict::Holds)
    });

    r.record("parallel_around_evolute_is_simple", || {
        let ae = area_evolute(p)?;
        for rp in parallels.clone()? {
            for c in &rp.chains {
                let encloses = ae
                    .points
                    .iter()
                    .all(|z| winding_number(&c.points, z) != 0 && !c.contains(z));
                if encloses && !polyline_self_intersections(&c.points).is_empty() {
                    return Ok(Verdict::Fails(format!("level {}", rp.level)));
                }
            }
        }
        Ok(Verdict::Holds)
    });

    let certificate = if symmetric {
        Ok(None)
    } else {
        almost_symmetry(p).map_err(Refusal::from)
    };

    r.record("almost_symmetry_parallels", || {
        if symmetric {
            return Ok(Verdict::Skip("polygon is symmetric".into()));
        }
        let Some(cert) = certificate.clone()? else {
            return Ok(Verdict::Skip("no certificate".into()));
        };
        let ok = q_is_rectified_parallel(p, &cert.q)?;
        Ok(verdict(ok && cert.valid(), || {
            format!("mu0 = {}", cert.mu0)
        }))
    });

    r.record("rass_is_ess_of_q", || {
        if symmetric {
            return Ok(Verdict::Skip("polygon is symmetric".into()));
        }
        let Some(cert) = certificate.clone()? else {
            return Ok(Verdict::Skip("no certificate".into()));
        };
        let res = match &parallels {
            Ok(ps) if opts.rass_levels == opts.parallel_levels => rass_from(cert, ps)?,
            _ => rass(p, opts.rass_levels)?,
        };
        Ok(verdict(res.all_on_branches(), || {
            format!(
                "{} crossings off the branches",
                res.crossings.iter().filter(|c| !c.2).count()
            )
        }))
    });

    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{hex_ea2, hex_sym, random_cpos};

    #[test]
    fn fixtures_pass() {
        for p in [hex_ea2(), hex_sym()] {
            let rep = run_checks(&p);
            assert!(rep.pass(), "{:?}", rep.failures());
        }
        let rep = run_checks(&hex_ea2());
        assert!(
            rep.items
                .iter()
                .filter(|c| c.status == Status::Pass)
                .count()
                >= 20
        );
    }

    #[test]
    fn random_polygons_pass() {
        let opts = CheckOptions {
            jump_samples_per_edge: 2,
            sweep_levels: 60,
            parallel_levels: 8,
            rass_levels: 8,
            face_map: true,
        };
        for seed in 0..6 {
            let p = random_cpos(3 + seed as usize % 3, seed).unwrap();
            let rep = run_checks_with(&p, &opts);
            assert!(rep.pass(), "seed {seed}: {:?}", rep.failures());
        }
    }
}
