mod common;

use common::{non_suspension_line, nonzero_vector, q, rng, suspension_line};
use num_traits::Zero;
use rand::Rng;
use rct_core::chow::{
    act, chow_of_linear, chow_of_points, det, det_action_check, eigenform_degree, incidence_check, is_real_form,
    is_suspension, mul_cycles, t_expand, taffy, MHForm,
};
use rct_core::rational::int;
use rct_core::Rational;

/// A product of one or two random lines of `P^n` meeting the base properly.
fn admissible_form<R: Rng>(r: &mut R, n: usize) -> MHForm {
    let (f, _) = non_suspension_line(r, n);
    if r.gen_bool(0.5) {
        let g = if r.gen_bool(0.5) { non_suspension_line(r, n).0 } else { suspension_line(r, n) };
        mul_cycles(&f, &g).unwrap()
    } else {
        f
    }
}

fn random_t<R: Rng>(r: &mut R) -> Rational {
    loop {
        let t = q(r.gen_range(-7..=7), r.gen_range(1..=4));
        if !t.is_zero() {
            return t;
        }
    }
}

#[test]
fn scaling_is_a_monoid_action() {
    let mut r = rng(41);
    for _ in 0..30 {
        let n = 2 + r.gen_range(0..2);
        let f = admissible_form(&mut r, n);
        let (t, s) = (random_t(&mut r), random_t(&mut r));
        assert_eq!(f.apply_t(&t).apply_t(&s), f.apply_t(&(&t * &s)));
        assert_eq!(&t_expand(&f).unwrap().recombine(&t), f.apply_t(&t).form());
    }
}

#[test]
fn scaling_is_multiplicative_and_eigen_degrees_add() {
    let mut r = rng(42);
    for _ in 0..30 {
        let n = 2 + r.gen_range(0..2);
        let (f, g) = (admissible_form(&mut r, n), admissible_form(&mut r, n));
        let t = random_t(&mut r);
        let fg = mul_cycles(&f, &g).unwrap();
        assert_eq!(fg.degree(), f.degree() + g.degree());
        assert_eq!(fg.apply_t(&t).form(), &(f.apply_t(&t).form() * g.apply_t(&t).form()));
        let (a, b) = (suspension_line(&mut r, n), suspension_line(&mut r, n));
        let ab = mul_cycles(&a, &b).unwrap();
        assert_eq!(eigenform_degree(&ab), Some(eigenform_degree(&a).unwrap() + eigenform_degree(&b).unwrap()));
    }
}

#[test]
fn points_multiply_into_zero_cycles() {
    let a = (vec![int(1), int(2)], 1);
    let b = (vec![int(3), int(-1)], 1);
    let prod = mul_cycles(&chow_of_points(&[a.clone()]).unwrap(), &chow_of_points(&[b.clone()]).unwrap()).unwrap();
    assert_eq!(prod, chow_of_points(&[a, b]).unwrap());
}

#[test]
fn constructed_forms_obey_the_degree_bound() {
    let mut r = rng(43);
    for _ in 0..50 {
        let n = 2 + r.gen_range(0..3);
        let f = admissible_form(&mut r, n);
        for m in 0..=n {
            let g = f.with_split(m).unwrap();
            assert!(t_expand(&g).unwrap().t_degree() <= (m as u32 + 1) * g.degree());
        }
        let pts: Vec<(Vec<Rational>, u32)> =
            (0..3).map(|_| (nonzero_vector(&mut r, n + 1, 5), r.gen_range(1..=2))).collect();
        let z = chow_of_points(&pts).unwrap();
        assert!(t_expand(&z).unwrap().t_degree() <= z.degree());
    }
}

#[test]
fn taffy_endpoints_and_idempotence() {
    let mut r = rng(44);
    for _ in 0..40 {
        let n = 2 + r.gen_range(0..2);
        let f = admissible_form(&mut r, n);
        let h = taffy(&f).unwrap();
        assert_eq!(h.at(&int(1)), f);
        let end = h.at(&int(0));
        let rep = is_suspension(&end, true);
        assert!(rep.is_suspension && rep.eigen_degree == Some(f.degree()));
        let again = taffy(&end).unwrap();
        assert!(again.is_constant());
        assert_eq!(again.at(&random_t(&mut r)), end);
        assert!(is_real_form(&h.at(&random_t(&mut r))));
    }
}

#[test]
fn suspension_examples() {
    let susp = chow_of_linear(&[vec![int(1), int(0), int(0)], vec![int(0), int(2), int(3)]]).unwrap();
    let other = chow_of_linear(&[vec![int(1), int(1), int(0)], vec![int(0), int(0), int(1)]]).unwrap();
    assert!(is_suspension(&susp, true).is_suspension);
    assert!(!is_suspension(&other, true).is_suspension);
    let mixed = mul_cycles(&susp, &other).unwrap();
    assert!(!is_suspension(&mixed, true).is_suspension);
    assert!(t_expand(&mixed).unwrap().nonzero_powers().len() >= 2);
}

#[test]
fn incidence_of_constructed_forms() {
    let mut r = rng(45);
    for n in [2, 3] {
        let (f, span) = non_suspension_line(&mut r, n);
        assert_eq!(incidence_check(&f, &span, 500, &mut r), (500, 500));
    }
    let span = vec![vec![int(1), int(2), int(0), int(1)]];
    let f = chow_of_points(&[(span[0].clone(), 1)]).unwrap();
    assert_eq!(incidence_check(&f, &span, 500, &mut r), (500, 500));
}

#[test]
fn det_action_on_random_pairs() {
    let mut r = rng(46);
    let mut checked = 0;
    while checked < 60 {
        let n = 2 + r.gen_range(0..2);
        let f = if r.gen_bool(0.5) { admissible_form(&mut r, n) } else { suspension_line(&mut r, n) };
        let a: Vec<Vec<Rational>> = (0..2).map(|_| (0..2).map(|_| common::small_rational(&mut r, 5)).collect()).collect();
        if det(&a).is_zero() {
            continue;
        }
        assert!(det_action_check(&f, &a).unwrap());
        let moved = act(&f, &a).unwrap();
        assert!(moved.projectively_eq(&f));
        checked += 1;
    }
}
