use cpos_core::check::{run_checks, run_checks_with, CheckOptions, Status};
use cpos_core::chords::count_midpoint_chords;
use cpos_core::evolute::{area_evolute, central_symmetry_set};
use cpos_core::io;
use cpos_core::kernel::{int, rat, Point};
use cpos_core::parallels::{almost_symmetry, rectified_parallel};
use cpos_core::pd::{half_area_midpoints, pd_transform, verify_ae_of_q};
use cpos_core::polygon::{hex_ea2, hex_sym, is_symmetric, random_cpos, validate};
use proptest::prelude::*;

fn light() -> CheckOptions {
    CheckOptions {
        jump_samples_per_edge: 1,
        sweep_levels: 12,
        parallel_levels: 4,
        rass_levels: 4,
        face_map: false,
    }
}

#[test]
fn fixture_reports_pass() {
    for p in [hex_ea2(), hex_sym()] {
        let r = run_checks(&p);
        assert!(r.pass(), "{:?}", r.failures());
    }
}

#[test]
fn json_round_trip_keeps_polygon() {
    let p = random_cpos(5, 11).unwrap();
    let text = io::to_string(&io::polygon(&p));
    let back = validate(&io::parse_vertices(&text).unwrap()).unwrap();
    assert_eq!(back, p);
}

#[test]
fn transform_of_fixture_carries_n_points() {
    let p = hex_ea2();
    let q = pd_transform(&p, &int(2)).unwrap().polygon().unwrap();
    let mut ae_q = area_evolute(&q).unwrap().points;
    let mut n = half_area_midpoints(&p);
    ae_q.sort();
    n.sort();
    assert_eq!(ae_q, n);
}

#[test]
fn chord_count_near_css_cusp() {
    let p = hex_ea2();
    let inside = Point::new(rat(-1, 4), rat(13, 8));
    let outside = Point::new(rat(3, 4), rat(1, 2));
    assert_eq!(count_midpoint_chords(&p, &inside).unwrap() % 2, 1);
    assert_eq!(count_midpoint_chords(&p, &outside).unwrap(), 1);
}

#[test]
fn fixture_has_certificate_and_parallel() {
    let p = hex_ea2();
    let cert = almost_symmetry(&p).unwrap().expect("certificate");
    assert!(cert.valid());
    let rp = rectified_parallel(&p, &rat(13, 8)).unwrap();
    assert!(!rp.chains.is_empty());
}

#[test]
fn symmetric_polygon_collapses() {
    let p = hex_sym();
    let c = is_symmetric(&p).unwrap();
    assert_eq!(area_evolute(&p).unwrap().points, vec![c.clone()]);
    assert_eq!(central_symmetry_set(&p).unwrap().points, vec![c]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_polygons_pass_light_suite(seed in 1000u64..2000, n in 3usize..=5) {
        let p = random_cpos(n, seed).unwrap();
        let r = run_checks_with(&p, &light());
        prop_assert!(r.pass(), "{:?}", r.failures());
        prop_assert!(r.items.iter().any(|c| c.status == Status::Pass));
    }

    #[test]
    fn random_mu_gives_ae_of_q(seed in 0u64..1000, a in -30i64..=30, b in 1i64..=7) {
        let p = random_cpos(4, seed).unwrap();
        prop_assert!(verify_ae_of_q(&p, &rat(a, b)).unwrap().pass());
    }
}
