mod common;

use common::{q, rng, small_rational};
use num_traits::One;
use proptest::prelude::*;
use rand::Rng;
use rct_core::shd::{is_substitutable_homogeneous, shd_of_exponents, substitute_graded, ShdValue};
use rct_core::univariate::poly_divmod;
use rct_core::{parse_poly, Rational, SparsePoly, UniPoly};

fn p(s: &str) -> SparsePoly {
    parse_poly(s).unwrap()
}

const VARS: [&str; 3] = ["x", "y", "z"];

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| q(n, d))
}

fn arb_poly() -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((arb_rational(), prop::collection::vec(0u32..=3, 3)), 0..6).prop_map(|terms| {
        terms.into_iter().fold(SparsePoly::zero(), |acc, (c, e)| {
            let powers: Vec<(&str, u32)> = VARS.iter().copied().zip(e).collect();
            &acc + &SparsePoly::monomial(c, &powers)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f + &SparsePoly::zero(), f.clone());
        prop_assert_eq!(&f * &SparsePoly::one(), f.clone());
        prop_assert!((&f + &(-&f)).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn display_parses_back(f in arb_poly()) {
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f.clone());
        let json = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<SparsePoly>(&json).unwrap(), f);
    }
}

#[test]
fn product_examples() {
    assert_eq!(&p("x - 1") * &p("x + 1"), p("x^2 - 1"));
    assert_eq!(&p("x0^2 - 3/2*x1*x2") + &SparsePoly::zero(), p("x0^2 - 3/2*x1*x2"));
}

#[test]
fn divmod_round_trip_on_random_pairs() {
    let mut r = rng(11);
    for _ in 0..1000 {
        let f = common::random_unipoly(&mut r, 8);
        let g = loop {
            let g = common::random_unipoly(&mut r, 8);
            if !g.is_zero() {
                break g;
            }
        };
        let (quot, rem) = f.divmod(&g).unwrap();
        assert_eq!(quot.mul(&g).add(&rem), f);
        assert!(rem.is_zero() || rem.degree() < g.degree());
        let (qs, rs) = poly_divmod(&f.to_sparse("x"), &g.to_sparse("x"), "x").unwrap();
        assert_eq!((qs, rs), (quot.to_sparse("x"), rem.to_sparse("x")));
    }
}

#[test]
fn divmod_examples() {
    let (qt, rm) = poly_divmod(&p("x^2 - 1"), &p("x - 1"), "x").unwrap();
    assert_eq!((qt, rm), (p("x + 1"), SparsePoly::zero()));
    let (qt, rm) = poly_divmod(&p("x^3"), &p("x"), "x").unwrap();
    assert_eq!((qt, rm), (p("x^2"), SparsePoly::zero()));
    let (qt, rm) = poly_divmod(&p("x^2 + a1*x + a2"), &p("2*x + a1"), "x").unwrap();
    assert_eq!(qt, p("1/2*x + 1/4*a1"));
    assert_eq!(rm, p("a2 - 1/4*a1^2"));
    assert!(UniPoly::new(vec![Rational::one()]).divmod(&UniPoly::zero()).is_err());
}

#[test]
fn shd_examples() {
    assert_eq!(shd_of_exponents(&[2]), 2);
    assert_eq!(shd_of_exponents(&[1, 0, 1]), 4);
    assert_eq!(is_substitutable_homogeneous(&p("a1^2 - 4*a2")).unwrap(), ShdValue::Homogeneous(2));
    assert_eq!(is_substitutable_homogeneous(&p("a1 + a2")).unwrap(), ShdValue::NotHomogeneous);
    assert_eq!(is_substitutable_homogeneous(&SparsePoly::zero()).unwrap(), ShdValue::Any);
}

#[test]
fn graded_substitution_examples() {
    let out = substitute_graded(&p("a1^2 - 4*a2"), &[p("x1 + x2"), p("x1*x2")]).unwrap();
    assert_eq!(out, p("(x1 - x2)^2"));
    assert!(substitute_graded(&p("a2"), &[p("x1"), SparsePoly::zero()]).unwrap().is_zero());
    assert!(substitute_graded(&p("a2"), &[p("x1"), p("x1")]).is_err());
    assert!(substitute_graded(&p("a1 + a2"), &[p("x1"), p("x1^2")]).is_err());
}

/// A random form of degree `deg` in `x1..xn`.
fn random_form<R: Rng>(r: &mut R, n: usize, deg: u32) -> SparsePoly {
    let mut out = SparsePoly::zero();
    for _ in 0..3 {
        let mut left = deg;
        let mut powers = Vec::new();
        for i in 1..=n {
            let e = if i == n { left } else { r.gen_range(0..=left) };
            left -= e;
            powers.push((format!("x{i}"), e));
        }
        let named: Vec<(&str, u32)> = powers.iter().map(|(v, e)| (v.as_str(), *e)).collect();
        out = &out + &SparsePoly::monomial(small_rational(r, 5), &named);
    }
    out
}

#[test]
fn graded_substitution_is_homogeneous_of_degree_shd() {
    let mut r = rng(12);
    let mut checked = 0;
    while checked < 200 {
        let vars = r.gen_range(1..=4usize);
        let n = r.gen_range(1..=3usize);
        let target = r.gen_range(1..=6u64);
        // Monomials in a1..a_vars of weight `target`.
        let mut f = SparsePoly::zero();
        for _ in 0..3 {
            let mut left = target;
            let mut powers = Vec::new();
            for j in (1..=vars as u64).rev() {
                let e = if j == 1 { left } else { r.gen_range(0..=left / j) };
                left -= e * j;
                powers.push((format!("a{j}"), e as u32));
            }
            let named: Vec<(&str, u32)> = powers.iter().map(|(v, e)| (v.as_str(), *e)).collect();
            f = &f + &SparsePoly::monomial(small_rational(&mut r, 5), &named);
        }
        if f.is_zero() {
            continue;
        }
        let g: Vec<SparsePoly> = (1..=vars as u32).map(|j| random_form(&mut r, n, j)).collect();
        let out = substitute_graded(&f, &g).unwrap();
        assert!(out.is_zero() || out.homogeneous_degree() == Some(target as u32));
        checked += 1;
    }
}
