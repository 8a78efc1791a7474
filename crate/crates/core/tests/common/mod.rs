//! Independent oracles shared by the integration tests. Nothing here calls
//! into the Sturm machinery of the crate.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rct_core::{Rational, UniPoly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn small_rational<R: Rng>(rng: &mut R, range: i64) -> Rational {
    q(rng.gen_range(-range..=range), rng.gen_range(1..=6))
}

/// A random polynomial of degree at most `max_deg`. Half are built from
/// rational roots (with repeats) times a random quadratic, so that root
/// counts are spread out and multiple roots occur.
pub fn random_unipoly<R: Rng>(rng: &mut R, max_deg: usize) -> UniPoly {
    let deg = rng.gen_range(0..=max_deg);
    if rng.gen_bool(0.5) || deg < 2 {
        loop {
            let c: Vec<Rational> = (0..=deg).map(|_| small_rational(rng, 12)).collect();
            let f = UniPoly::new(c);
            if !f.is_zero() {
                return f;
            }
        }
    }
    let mut f = UniPoly::constant(small_rational(rng, 5).abs() + Rational::one());
    let with_quadratic = rng.gen_bool(0.5);
    let linear = if with_quadratic { deg - 2 } else { deg };
    let mut roots: Vec<Rational> = Vec::new();
    for _ in 0..linear {
        let r = if !roots.is_empty() && rng.gen_bool(0.3) {
            roots[rng.gen_range(0..roots.len())].clone()
        } else {
            small_rational(rng, 8)
        };
        roots.push(r.clone());
        f = f.mul(&UniPoly::linear_root(r));
    }
    if with_quadratic {
        let quad = UniPoly::new(vec![small_rational(rng, 6), small_rational(rng, 6), Rational::one()]);
        f = f.mul(&quad);
    }
    f
}

// Dense ascending polynomials over ℚ, kept separate from the crate.

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn derivative(p: &[Rational]) -> Vec<Rational> {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect())
}

fn divmod(f: &[Rational], g: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = f.to_vec();
    if r.len() < g.len() {
        return (Vec::new(), trim(r));
    }
    let lc = g.last().expect("nonzero divisor").clone();
    let mut quot = vec![Rational::zero(); r.len() - g.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = &r[k + g.len() - 1] / &lc;
        for (j, gj) in g.iter().enumerate() {
            r[k + j] -= &c * gj;
        }
        quot[k] = c;
    }
    r.truncate(g.len() - 1);
    (trim(quot), trim(r))
}

fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = divmod(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn squarefree(p: &[Rational]) -> Vec<Rational> {
    let g = gcd(p, &derivative(p));
    divmod(p, &g).0
}

/// `p(a + (b - a) x)`.
fn affine(p: &[Rational], a: &Rational, w: &Rational) -> Vec<Rational> {
    // Horner in the polynomial ring: acc = acc * (a + w x) + c.
    let mut acc: Vec<Rational> = Vec::new();
    for c in p.iter().rev() {
        let mut next = vec![Rational::zero(); acc.len() + 1];
        for (i, ai) in acc.iter().enumerate() {
            next[i] += ai * a;
            next[i + 1] += ai * w;
        }
        next[0] += c;
        acc = next;
    }
    trim(acc)
}

/// Integer polynomial with the same roots as a rational one.
fn clear_denominators(p: &[Rational]) -> Vec<BigInt> {
    let l = p.iter().fold(BigInt::one(), |l, c| num_integer::Integer::lcm(&l, c.denom()));
    p.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect()
}

/// `p(x + 1)` by repeated synthetic division.
fn taylor_shift(p: &[BigInt]) -> Vec<BigInt> {
    let mut c = p.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = c[j + 1].clone();
            c[j] += t;
        }
    }
    c
}

/// Sign variations of `(x + 1)^n p(1 / (x + 1))`, an upper bound for the
/// roots of `p` in `(0, 1)` with the same parity.
fn descartes_01(p: &[BigInt]) -> usize {
    let rev: Vec<BigInt> = p.iter().rev().cloned().collect();
    let t = taylor_shift(&rev);
    let signs: Vec<bool> = t.iter().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Roots of a squarefree `p` in the open interval `(0, 1)`.
fn roots_01(p: &[BigInt]) -> usize {
    match descartes_01(p) {
        0 => 0,
        1 => 1,
        _ => {
            // 2^n p(x / 2) and 2^n p((x + 1) / 2).
            let n = p.len() - 1;
            let left: Vec<BigInt> = p.iter().enumerate().map(|(i, c)| c << (n - i)).collect();
            let right = taylor_shift(&left);
            let mid = usize::from(right[0].is_zero());
            roots_01(&left) + roots_01(&right) + mid
        }
    }
}

/// Number of distinct real roots of `f` in the open interval `(a, b)`, by
/// Descartes bisection on the squarefree part.
pub fn roots_in(f: &UniPoly, a: &Rational, b: &Rational) -> usize {
    let p = squarefree(&trim(f.coeffs().to_vec()));
    if p.len() <= 1 {
        return 0;
    }
    roots_01(&clear_denominators(&affine(&p, a, &(b - a))))
}

/// Number of distinct real roots of `f` on the whole line.
pub fn real_roots(f: &UniPoly) -> usize {
    let p = trim(f.coeffs().to_vec());
    if p.len() <= 1 {
        return 0;
    }
    let lc = p.last().unwrap().abs();
    let bound = p.iter().map(|c| c.abs() / &lc).sum::<Rational>() + Rational::one();
    roots_in(f, &-bound.clone(), &bound)
}

/// `x^d + a1 x^(d-1) + … + ad`.
pub fn monic(a: &[Rational]) -> UniPoly {
    let mut desc = vec![Rational::one()];
    desc.extend(a.iter().cloned());
    UniPoly::from_descending(desc)
}

/// Coefficients of `∏ (x - r_i)` after the leading 1.
pub fn coeffs_from_roots(roots: &[Rational]) -> Vec<Rational> {
    let mut p = vec![Rational::one()];
    for r in roots {
        let mut next = vec![Rational::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c * r;
        }
        p = next;
    }
    p.split_off(1)
}

/// Weight `Σ j·e_j` of a monomial in `a1..ad`, with variable names parsed
/// directly.
pub fn weight(vars: &[String], exps: &[u32]) -> u64 {
    vars.iter()
        .zip(exps)
        .map(|(v, &e)| v.trim_start_matches('a').parse::<u64>().expect("coefficient variable") * u64::from(e))
        .sum()
}

/// Discriminant of `x^3 + a x^2 + b x + c`.
pub fn cubic_discriminant(a: &Rational, b: &Rational, c: &Rational) -> Rational {
    let n = |k: i64| Rational::from_integer(BigInt::from(k));
    a * a * b * b - n(4) * b * b * b - n(4) * a * a * a * c - n(27) * c * c + n(18) * a * b * c
}

/// A coefficient vector `(a1, …, ad)`: half come from `d` distinct rational
/// roots (all real), the rest are uniform small rationals.
pub fn coefficient_sample<R: Rng>(rng: &mut R, d: usize) -> Vec<Rational> {
    if rng.gen_bool(0.5) {
        let mut roots: Vec<Rational> = Vec::new();
        while roots.len() < d {
            let r = small_rational(rng, 6);
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        coeffs_from_roots(&roots)
    } else {
        (0..d).map(|_| small_rational(rng, 10)).collect()
    }
}

/// A nonzero integer vector with entries in `[-range, range]`.
pub fn nonzero_vector<R: Rng>(rng: &mut R, len: usize, range: i64) -> Vec<Rational> {
    loop {
        let v: Vec<Rational> = (0..len).map(|_| q(rng.gen_range(-range..=range), 1)).collect();
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

/// The line joining `(1:0:…:0)` to a random base point `(0:b)` of `P^(n-1)`.
pub fn suspension_line<R: Rng>(rng: &mut R, n: usize) -> rct_core::chow::MHForm {
    let mut apex = vec![Rational::zero(); n + 1];
    apex[0] = Rational::one();
    let mut base = vec![Rational::zero()];
    base.extend(nonzero_vector(rng, n, 6));
    rct_core::chow::chow_of_linear(&[apex, base]).expect("independent points")
}

/// A random line of `P^n` whose form has a nonzero top coefficient and at
/// least one lower one, i.e. one that meets the base properly and is not a
/// suspension.
pub fn non_suspension_line<R: Rng>(rng: &mut R, n: usize) -> (rct_core::chow::MHForm, Vec<Vec<Rational>>) {
    use rct_core::chow::{chow_of_linear, eigenform_degree, t_split};
    loop {
        let span = vec![nonzero_vector(rng, n + 1, 6), nonzero_vector(rng, n + 1, 6)];
        let Ok(f) = chow_of_linear(&span) else { continue };
        let e = t_split(&f);
        if e.coeffs.len() == 2 && !e.coeffs[1].is_zero() && eigenform_degree(&f).is_none() {
            return (f, span);
        }
    }
}
