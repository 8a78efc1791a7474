mod common;

use common::{nonzero_vector, q, real_roots, rng};
use rand::Rng;
use rct_core::divisors::{in_div_double_prime, scale_divisor, Divisor, Verdict};
use rct_core::magic_fan::{
    default_demo, default_ts, limit_check, log_log_slope, matching_residual, projective_distance, psi_demo,
    FanError, FloatPoint, ZeroCycle,
};
use rct_core::rational::int;
use rct_core::{parse_poly, Rational};

#[test]
fn default_divisor_is_in_div_double_prime() {
    let (_, d) = default_demo();
    let rep = in_div_double_prime(&d, Some(500), false).unwrap();
    assert_eq!((rep.verdict, rep.failed_samples), (Verdict::EvidenceOnly, 0));
}

#[test]
fn degree_is_conserved_and_fibers_are_exact() {
    let (_, d) = default_demo();
    let mut r = rng(61);
    for _ in 0..30 {
        let k = r.gen_range(1..=3);
        let pts: Vec<(Vec<Rational>, u32)> = (0..k).map(|_| (nonzero_vector(&mut r, 3, 5), r.gen_range(1..=3))).collect();
        let z = ZeroCycle::new(pts).unwrap();
        let t = q(r.gen_range(1..=10), 10);
        let out = psi_demo(&z, &d, &t).unwrap();
        assert_eq!(out.degree, d.degree() * z.degree());
        let ft = scale_divisor(&d, &t).unwrap();
        for (p, cert) in z.points.iter().zip(&out.fibers) {
            assert_eq!(cert.sturm_count, d.degree() as usize);
            assert_eq!(real_roots(&ft.restrict(&p.coords)), d.degree() as usize);
        }
        assert!(out.output.iter().all(|p| p.coords.iter().all(|c| c.is_finite())));
    }
}

#[test]
fn limit_residuals_decrease_linearly() {
    let (z, d) = default_demo();
    let ts = default_ts();
    let res = limit_check(&z, &d, &ts).unwrap();
    assert!(res.windows(2).all(|w| w[1] < w[0]));
    assert!(res[2] < 1e-2);
    let slope = log_log_slope(&ts, &res);
    assert!((slope - 1.0).abs() < 0.3, "slope {slope}");
    for t in &ts {
        assert_eq!(psi_demo(&z, &d, t).unwrap().degree, 2 * z.degree());
    }
}

#[test]
fn input_errors() {
    let (z, d) = default_demo();
    assert_eq!(psi_demo(&z, &d, &int(0)), Err(FanError::BadT));
    assert_eq!(psi_demo(&z, &d, &int(2)), Err(FanError::BadT));
    let bad = Divisor::new(3, parse_poly("x0^2 - x1^2 - x2^2 - x3^2").unwrap()).unwrap();
    assert_eq!(psi_demo(&z, &bad, &int(1)), Err(FanError::MarkedPoint));
    assert!(ZeroCycle::new(vec![(vec![int(0), int(0), int(0)], 1)]).is_err());
}

#[test]
fn residual_metric() {
    let a = [FloatPoint { coords: vec![1.0, 2.0], mult: 2 }];
    let b = [FloatPoint { coords: vec![-2.0, -4.0], mult: 1 }, FloatPoint { coords: vec![1.0, 2.0], mult: 1 }];
    assert!(matching_residual(&a, &b) < 1e-15);
    assert!(projective_distance(&[1.0, 0.0], &[0.0, 1.0]) > 1.0);
    assert!(matching_residual(&a, &b[..1]).is_infinite());
}
