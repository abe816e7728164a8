//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the libtest
//! harness so the lines always reach stdout.

use std::process::ExitCode;
use std::time::Instant;

use cpos_core::check::{run_checks_with, CheckOptions, CheckReport, Status};
use cpos_core::chords::count_midpoint_chords;
use cpos_core::equidistant::{equidistant_self_intersections, ess_trace};
use cpos_core::evolute::{
    area_evolute, central_symmetry_set, lambda_sequence, nonsymmetric_equal_area_midpoint_check,
};
use cpos_core::kernel::{int, rat, Point, Rational};
use cpos_core::parallels::almost_symmetry;
use cpos_core::pd::{half_area_corollary, half_area_midpoints, pd_transform, verify_ae_of_q};
use cpos_core::polygon::{
    classify_equal_area, hex_ea2, hex_sym, is_equal_area, is_symmetric, random_cpos, CposPolygon,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const ENSEMBLE: u64 = 500;
const RANDOM_MU: usize = 10;

type Outcome = Result<String, String>;

fn pts(v: &[(i64, i64, i64, i64)]) -> Vec<Point> {
    v.iter()
        .map(|&(a, b, c, d)| Point::new(rat(a, b), rat(c, d)))
        .collect()
}

fn sorted(mut v: Vec<Point>) -> Vec<Point> {
    v.sort();
    v.dedup();
    v
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn hex_ea2_evolutes() -> Outcome {
    let p = hex_ea2();
    let ae = area_evolute(&p).map_err(|e| e.to_string())?;
    let css = central_symmetry_set(&p).map_err(|e| e.to_string())?;
    let want_ae = pts(&[(0, 1, 3, 2), (-1, 2, 3, 2), (-1, 2, 2, 1)]);
    let want_css = pts(&[(0, 1, 2, 1), (0, 1, 1, 1), (-1, 1, 2, 1)]);
    ensure(sorted(ae.points.clone()) == sorted(want_ae), || {
        format!("AE {:?}", ae.points)
    })?;
    ensure(sorted(css.points.clone()) == sorted(want_css), || {
        format!("CSS {:?}", css.points)
    })?;
    let lambda = lambda_sequence(&p).map_err(|e| e.to_string())?;
    let want: Vec<Rational> = (0..6)
        .map(|k| if k % 2 == 0 { rat(1, 3) } else { rat(2, 3) })
        .collect();
    ensure(lambda == want, || format!("lambda {lambda:?}"))?;
    ensure(ae.cusp_count() == 3 && css.cusp_count() == 3, || {
        format!("cusps {} / {}", ae.cusp_count(), css.cusp_count())
    })?;
    Ok("AE, CSS, lambda and 3 + 3 cusps exact".into())
}

fn hex_ea2_equal_area() -> Outcome {
    let p = hex_ea2();
    ensure(is_equal_area(&p), || "not equal-area".into())?;
    let class = classify_equal_area(&p).ok_or("classification failed")?;
    ensure(
        class.n == 3 && class.n % 2 == 1 && class.alpha == int(2),
        || format!("{class:?}"),
    )?;
    let rep = nonsymmetric_equal_area_midpoint_check(&p).map_err(|e| e.to_string())?;
    ensure(rep.holds && rep.lambda_tilde == rat(1, 6), || {
        format!("{rep:?}")
    })?;
    Ok("n = 3, alpha = 2, midpoint property with lambda~ = 1/6".into())
}

fn hex_ea2_n_points() -> Outcome {
    let p = hex_ea2();
    let want = sorted(pts(&[(-1, 4, 3, 2), (-1, 2, 7, 4), (-1, 4, 7, 4)]));
    let n = half_area_midpoints(&p);
    ensure(sorted(n.clone()) == want, || format!("N {n:?}"))?;
    for mu in [2, 3, 10] {
        let rep = verify_ae_of_q(&p, &int(mu)).map_err(|e| e.to_string())?;
        ensure(rep.equal && sorted(rep.ae_q.clone()) == want, || {
            format!("mu = {mu}: {:?}", rep.ae_q)
        })?;
    }
    Ok("N exact; AE(Q) = N for mu in {2, 3, 10}".into())
}

fn hex_ea2_corollary() -> Outcome {
    let p = hex_ea2();
    let checks = half_area_corollary(&p);
    ensure(!checks.is_empty(), || "hypothesis never holds".into())?;
    let q = rat(13, 4);
    for c in &checks {
        ensure(
            c.midpoint_is_n && c.halves == (q.clone(), q.clone()),
            || format!("index {}: {c:?}", c.index),
        )?;
    }
    Ok(format!(
        "{} indices, each split 13/4 + 13/4 at N",
        checks.len()
    ))
}

fn hex_sym_collapse() -> Outcome {
    let p = hex_sym();
    let o = Point::origin();
    ensure(is_symmetric(&p) == Some(o.clone()), || {
        "not symmetric about the origin".into()
    })?;
    for (name, chain) in [("AE", area_evolute(&p)), ("CSS", central_symmetry_set(&p))] {
        let chain = chain.map_err(|e| e.to_string())?;
        ensure(
            chain.degenerate.is_some() && sorted(chain.points.clone()) == vec![o.clone()],
            || format!("{name} {:?}", chain.points),
        )?;
    }
    let centre = count_midpoint_chords(&p, &o).map_err(|e| e.to_string())?;
    ensure(centre == 3, || format!("N(centre) = {centre}"))?;
    let levels: Vec<Rational> = (-40..=80)
        .filter(|&k| k != 20)
        .map(|k| rat(k, 40))
        .collect();
    for t in &levels {
        let hits = equidistant_self_intersections(&p, t);
        ensure(hits.is_empty(), || format!("t = {t}: {hits:?}"))?;
    }
    let ess = ess_trace(&p).map_err(|e| e.to_string())?;
    ensure(ess.is_empty(), || format!("{} ESS branches", ess.len()))?;
    Ok(format!(
        "AE = CSS = {{(0,0)}}, N(centre) = 3, {} equidistants simple, ESS empty",
        levels.len()
    ))
}

struct Sample {
    seed: u64,
    n: usize,
    report: CheckReport,
    mu_failures: Vec<String>,
    certificate: bool,
}

fn random_mu(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-60..=60), rng.gen_range(1..=12))
}

fn mu_checks(p: &CposPolygon, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut bad = Vec::new();
    for _ in 0..RANDOM_MU {
        let mu = random_mu(&mut rng);
        let closed = pd_transform(p, &mu).map(|tr| tr.mu_seq.last() == Some(&mu));
        let ae = verify_ae_of_q(p, &mu).map(|r| r.pass());
        if closed != Ok(true) || ae != Ok(true) {
            bad.push(format!("mu = {mu}: closure {closed:?}, AE(Q) = N {ae:?}"));
        }
    }
    bad
}

fn run_ensemble() -> Vec<Sample> {
    let opts = CheckOptions {
        face_map: false,
        ..CheckOptions::default()
    };
    (0..ENSEMBLE)
        .into_par_iter()
        .map(|seed| {
            let n = 3 + (seed % 6) as usize;
            let p = random_cpos(n, seed).expect("random polygon");
            let symmetric = is_symmetric(&p).is_some();
            Sample {
                seed,
                n,
                report: run_checks_with(&p, &opts),
                mu_failures: if symmetric {
                    Vec::new()
                } else {
                    mu_checks(&p, seed)
                },
                certificate: !symmetric && matches!(almost_symmetry(&p), Ok(Some(_))),
            }
        })
        .collect()
}

fn ensemble_checks(samples: &[Sample], names: &[&str]) -> Result<(usize, usize), String> {
    let mut passed = 0;
    let mut skipped = 0;
    let mut failures = Vec::new();
    for s in samples {
        for item in s.report.items.iter().filter(|c| names.contains(&c.name)) {
            match item.status {
                Status::Pass => passed += 1,
                Status::Skipped => skipped += 1,
                Status::Fail => failures.push(format!(
                    "seed {} (n = {}) {}: {}",
                    s.seed, s.n, item.name, item.detail
                )),
            }
        }
    }
    let seen = passed + skipped + failures.len();
    ensure(seen == samples.len() * names.len(), || {
        format!("only {seen} check results")
    })?;
    if failures.is_empty() {
        Ok((passed, skipped))
    } else {
        Err(format!(
            "{} failures, first: {}",
            failures.len(),
            failures[0]
        ))
    }
}

fn summary(samples: &[Sample], names: &[&str], what: &str) -> Outcome {
    let (passed, skipped) = ensemble_checks(samples, names)?;
    Ok(format!(
        "{what} ({} polygons, {passed} checks passed, {skipped} not applicable)",
        samples.len()
    ))
}

fn main() -> ExitCode {
    let mut all = true;
    let mut line = |id: &str, title: &str, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        match &out {
            Ok(detail) => println!("PASS {id} {title}: {detail} [{secs:.2}s]"),
            Err(detail) => println!("FAIL {id} {title}: {detail} [{secs:.2}s]"),
        }
        all &= out.is_ok();
    };

    line("1", "HEX_EA2 evolutes", &hex_ea2_evolutes);
    line("2", "HEX_EA2 equal-area class", &hex_ea2_equal_area);
    line("3", "HEX_EA2 N points and AE(Q)", &hex_ea2_n_points);
    line("4", "HEX_EA2 half-area corollary", &hex_ea2_corollary);
    line("S", "HEX_SYM collapse", &hex_sym_collapse);

    let start = Instant::now();
    let samples = run_ensemble();
    println!(
        "ensemble: {} random polygons, n in 3..=8, seeds 0..{ENSEMBLE}, computed in {:.1}s",
        samples.len(),
        start.elapsed().as_secs_f64()
    );

    line("5", "validity and cusp counts", &|| {
        summary(
            &samples,
            &["polygon_is_cpos", "cusp_counts"],
            "odd cusp counts, AE >= 3, CSS >= AE",
        )
    });
    line("6", "jump law", &|| {
        summary(&samples, &["jump_law"], "N jumps by 2 across every AE edge")
    });
    line("7", "equidistant cusp locus", &|| {
        summary(
            &samples,
            &["cusp_locus_is_css", "cusp_function_sign"],
            "locus = CSS, f_i < 0 inside the lambda interval",
        )
    });
    line("8", "transform closure", &|| {
        let bad: Vec<String> = samples
            .iter()
            .flat_map(|s| {
                s.mu_failures
                    .iter()
                    .map(move |m| format!("seed {}: {m}", s.seed))
            })
            .collect();
        ensure(bad.is_empty(), || {
            format!("{} failures, first: {}", bad.len(), bad[0])
        })?;
        summary(
            &samples,
            &["transform_closure"],
            &format!("residue 0 and AE(Q) = N for {RANDOM_MU} random mu each"),
        )
    });
    line("9", "ESS endpoints, junctions and sweep", &|| {
        summary(
            &samples,
            &["ess_endpoints_and_junctions", "ess_sweep_oracle"],
            "branch ends and junction flags exact, 200-level sweep on branches",
        )
    });
    line("10", "rectified parallels", &|| {
        summary(
            &samples,
            &["parallel_cusps_on_evolute", "parallel_levels_disjoint"],
            "cusp flag iff on AE at 20 levels; levels disjoint between simple chains and within every cell",
        )
    });
    line("11", "almost symmetry and RASS", &|| {
        let certified = samples.iter().filter(|s| s.certificate).count();
        ensure(certified > 0, || "no polygon has a certificate".into())?;
        summary(
            &samples,
            &["almost_symmetry_parallels", "rass_is_ess_of_q"],
            &format!("{certified} certified, RASS = ESS(Q) with sampled crossings on it"),
        )
    });

    if all {
        println!("acceptance: all criteria PASS");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAIL");
        ExitCode::FAILURE
    }
}
