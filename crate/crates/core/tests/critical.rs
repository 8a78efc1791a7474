mod common;

use std::collections::HashMap;

use common::{coefficient_sample, cubic_discriminant, monic, q, real_roots, rng, weight};
use num_traits::{Signed, Zero};
use rct_core::critical::{
    critical_polynomials, direct_count, has_d_distinct_real_roots, in_s_n, symbolic_sturm, RootVerdict,
};
use rct_core::rational::{int, pow};
use rct_core::sturm::sturm_sequence;
use rct_core::{parse_poly, Rational, SparsePoly};

fn p(s: &str) -> SparsePoly {
    parse_poly(s).unwrap()
}

fn env(vars: &[String], a: &[Rational]) -> HashMap<String, Rational> {
    vars.iter().cloned().zip(a.iter().cloned()).collect()
}

#[test]
fn quadratic_critical_polynomial() {
    let set = critical_polynomials(2).unwrap();
    let c = set.get(2).expand().scalar_multiple_of(&p("a1^2 - 4*a2")).unwrap();
    assert!(c.is_positive());
    // f2 = (a1^2 - 4 a2) / 4 as a function of the coefficients.
    let seq = symbolic_sturm(2).unwrap();
    for a in [[int(1), int(-3)], [q(2, 3), int(5)], [int(0), int(-1)]] {
        let f2 = &seq.specialize(&a).unwrap()[2];
        assert_eq!(f2.coeffs(), &[(&a[0] * &a[0] - int(4) * &a[1]) / int(4)]);
    }
}

#[test]
fn cubic_sequence_has_four_members() {
    let seq = symbolic_sturm(3).unwrap();
    assert_eq!(seq.reduced.len(), 4);
    for i in 0..3 {
        seq.pair(i);
    }
}

#[test]
fn critical_polynomials_are_substitutable_homogeneous() {
    for d in 2..=6 {
        for f in &critical_polynomials(d).unwrap().polys {
            f.shd().unwrap();
            assert!(f.scale.is_positive());
        }
    }
}

#[test]
fn verdict_examples() {
    assert_eq!(has_d_distinct_real_roots(&[int(0), int(-1)]).unwrap(), RootVerdict::AllDistinctReal);
    assert_eq!(has_d_distinct_real_roots(&[int(0), int(1)]).unwrap(), RootVerdict::NotAllDistinctReal);
    assert_eq!(has_d_distinct_real_roots(&[int(2), int(1)]).unwrap(), RootVerdict::Degenerate);
    assert_eq!(direct_count(&[int(2), int(1)]), 1);
    assert!(in_s_n(&[int(0), int(-1)]));
    assert!(!in_s_n(&[int(0), int(0)]));
    assert!(!in_s_n(&[int(2), int(1)]));
}

#[test]
fn cubic_predicate_matches_discriminant() {
    let mut r = rng(31);
    for _ in 0..1000 {
        let a = coefficient_sample(&mut r, 3);
        let disc = cubic_discriminant(&a[0], &a[1], &a[2]);
        assert_eq!(in_s_n(&a), disc.is_positive(), "{a:?}");
        match has_d_distinct_real_roots(&a).unwrap() {
            RootVerdict::Degenerate => {}
            v => assert_eq!(v == RootVerdict::AllDistinctReal, disc.is_positive()),
        }
    }
}

#[test]
fn in_s_3_matches_oracle() {
    let mut r = rng(32);
    for _ in 0..100 {
        let a = coefficient_sample(&mut r, 3);
        assert_eq!(in_s_n(&a), real_roots(&monic(&a)) == 3);
    }
}

#[test]
fn predicate_matches_descartes_oracle() {
    let mut r = rng(33);
    for d in 2..=6 {
        let mut checked = 0;
        while checked < 300 {
            let a = coefficient_sample(&mut r, d);
            let v = has_d_distinct_real_roots(&a).unwrap();
            if v == RootVerdict::Degenerate {
                continue;
            }
            assert_eq!(v == RootVerdict::AllDistinctReal, real_roots(&monic(&a)) == d, "d = {d}, {a:?}");
            checked += 1;
        }
    }
}

/// Weight of every term of `p`, which must agree.
fn uniform_weight(p: &SparsePoly) -> Option<i64> {
    let mut w = None;
    for (m, _) in p.terms() {
        let k = weight(p.vars(), &m.0) as i64;
        assert!(w.is_none_or(|x| x == k), "not substitutable-homogeneous");
        w = Some(k);
    }
    w
}

#[test]
fn consecutive_members_form_substitutable_pairs() {
    for d in 2..=6 {
        let seq = symbolic_sturm(d).unwrap();
        // Weight of the multiplier of f_i: ± twice the weights of earlier leads.
        let lead_w: Vec<i64> = seq.leads.iter().map(|l| uniform_weight(l).unwrap()).collect();
        let mult_w = |i: usize| -> i64 {
            (2..i).map(|k| if k % 2 == i % 2 { 2 * lead_w[k] } else { -2 * lead_w[k] }).sum()
        };
        let shd = |i: usize, k: usize| uniform_weight(&seq.reduced[i][k]).map(|w| w + mult_w(i));
        for i in 0..d {
            let p0 = shd(i, 0).unwrap();
            let c = shd(i + 1, 0).unwrap() - p0;
            for k in 0..seq.reduced[i].len() {
                if let Some(w) = shd(i, k) {
                    assert_eq!(w, k as i64 + p0, "d = {d}, p_{k} of f_{i}");
                }
            }
            for k in 0..seq.reduced[i + 1].len() {
                if let Some(w) = shd(i + 1, k) {
                    assert_eq!(w - (k as i64 + p0), c, "d = {d}, q_{k} of f_{}", i + 1);
                }
            }
            assert_eq!(seq.pair(i).c, c);
        }
    }
}

#[test]
fn specialization_matches_numeric_sturm_sequence() {
    let mut r = rng(34);
    for d in 2..=5 {
        let seq = symbolic_sturm(d).unwrap();
        let mut checked = 0;
        while checked < 50 {
            let a = coefficient_sample(&mut r, d);
            let e = env(&seq.vars, &a);
            if seq.leads.iter().any(|l| l.eval(&e).unwrap().is_zero()) {
                continue;
            }
            let symbolic = seq.specialize(&a).unwrap();
            assert_eq!(symbolic, sturm_sequence(&monic(&a)).unwrap().polys);
            checked += 1;
        }
    }
}

#[test]
fn scaling_covariance() {
    let mut r = rng(35);
    for d in 2..=5 {
        let set = critical_polynomials(d).unwrap();
        for _ in 0..20 {
            let a = coefficient_sample(&mut r, d);
            let t = q(r_int(&mut r), 3);
            let scaled: Vec<Rational> = a.iter().enumerate().map(|(i, x)| x * pow(&t, i as u32 + 1)).collect();
            for f in &set.polys {
                let k = f.shd().unwrap() as u32;
                let (e1, e2) = (env(&set.vars, &a), env(&set.vars, &scaled));
                let poly = f.expand();
                assert_eq!(poly.eval(&e2).unwrap(), pow(&t, k) * poly.eval(&e1).unwrap());
            }
            assert_eq!(has_d_distinct_real_roots(&a).unwrap(), has_d_distinct_real_roots(&scaled).unwrap());
        }
    }
}

fn r_int<R: rand::Rng>(r: &mut R) -> i64 {
    r.gen_range(1..=9)
}
