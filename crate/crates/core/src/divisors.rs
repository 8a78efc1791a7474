//! Real divisors of degree `d` in `P^n` with coordinates `x0, …, xn`, and the
//! membership tests for the subsets that avoid `(1:0:…:0)`, cut every line
//! through it in `d` distinct real points, and keep `(1:1:0:…:0)` off the
//! scaled family `f_t`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::critical::{critical_polynomials, CriticalSet, Factor, D_MAX};
use crate::poly::SparsePoly;
use crate::rational::{int, pow, to_f64, Rational};
use crate::sturm::{count_distinct_roots_in, count_distinct_roots_total, isolate_roots_bisection};
use crate::univariate::UniPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DivisorError {
    #[error("the zero polynomial does not define a divisor")]
    Zero,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("variable `{0}` is not one of x0..x{1}")]
    BadVariable(String, usize),
    #[error("divisor is not normalized (coefficient of x0^d must be 1)")]
    NotNormalized,
    #[error("divisor contains (1:0:…:0)")]
    NotInDivPrime,
    #[error("delta must be positive")]
    NonPositiveDelta,
    #[error("n and k must be at least 1")]
    BadFamily,
    #[error("critical-polynomial and Sturm routes disagree at {0}")]
    RouteDisagreement(String),
    #[error("{0}")]
    Other(String),
}

pub fn coord(i: usize) -> String {
    format!("x{i}")
}

fn coords(range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(coord).collect()
}

fn index_of(v: &str) -> Option<usize> {
    v.strip_prefix('x')?.parse().ok()
}

/// A homogeneous polynomial of degree `d` in `x0, …, xn`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDivisor", into = "RawDivisor")]
pub struct Divisor {
    n: usize,
    d: u32,
    f: SparsePoly,
}

#[derive(Serialize, Deserialize)]
struct RawDivisor {
    n: usize,
    d: u32,
    f: SparsePoly,
    #[serde(default, skip_deserializing)]
    normalized: bool,
}

impl TryFrom<RawDivisor> for Divisor {
    type Error = DivisorError;
    fn try_from(r: RawDivisor) -> Result<Self, DivisorError> {
        let div = Divisor::new(r.n, r.f)?;
        if div.d != r.d {
            return Err(DivisorError::Other(format!("declared degree {} but the form has degree {}", r.d, div.d)));
        }
        Ok(div)
    }
}

impl From<Divisor> for RawDivisor {
    fn from(div: Divisor) -> Self {
        let normalized = div.is_normalized();
        RawDivisor { n: div.n, d: div.d, f: div.f, normalized }
    }
}

impl Divisor {
    pub fn new(n: usize, f: SparsePoly) -> Result<Self, DivisorError> {
        if f.is_zero() {
            return Err(DivisorError::Zero);
        }
        for v in f.vars() {
            if !index_of(v).is_some_and(|i| i <= n) {
                return Err(DivisorError::BadVariable(v.clone(), n));
            }
        }
        let d = f.homogeneous_degree().ok_or(DivisorError::NotHomogeneous)?;
        Ok(Self { n, d, f })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn form(&self) -> &SparsePoly {
        &self.f
    }

    /// Coefficient of `x0^d`.
    pub fn leading(&self) -> Rational {
        self.coefficients_in_x0().pop().and_then(|c| c.as_constant()).unwrap_or_else(Rational::zero)
    }

    pub fn is_normalized(&self) -> bool {
        self.leading().is_one()
    }

    /// Coefficients of `x0^0, …, x0^d`, as forms in `x1, …, xn`.
    fn coefficients_in_x0(&self) -> Vec<SparsePoly> {
        let mut c = self.f.coefficients_in("x0");
        c.resize(self.d as usize + 1, SparsePoly::zero());
        c
    }

    /// `p_i`, the coefficient of `x0^(d-i)`, for `i = 1..=d`.
    pub fn graded_coefficients(&self) -> Vec<SparsePoly> {
        let mut c = self.coefficients_in_x0();
        c.pop();
        c.reverse();
        c
    }

    /// The polynomial in `x0` obtained by fixing `x1..xn` to `x`.
    pub fn restrict(&self, x: &[Rational]) -> UniPoly {
        let desc: Vec<Rational> = std::iter::once(self.leading())
            .chain(self.graded_coefficients().iter().map(|p| eval_at(p, x)))
            .collect();
        UniPoly::from_descending(desc)
    }
}

fn eval_at(p: &SparsePoly, x: &[Rational]) -> Rational {
    p.eval_with(|v| index_of(v).and_then(|i| i.checked_sub(1)).and_then(|i| x.get(i).cloned()))
        .expect("x covers x1..xn")
}

/// Whether `D` avoids `(1:0:…:0)`, with the form rescaled so that the
/// coefficient of `x0^d` is 1.
pub fn in_div_prime(div: &Divisor) -> (bool, Option<Divisor>) {
    let lead = div.leading();
    if lead.is_zero() {
        return (false, None);
    }
    let f = div.f.scale(&(Rational::one() / lead));
    (true, Some(Divisor { f, ..div.clone() }))
}

fn require_normalized(div: &Divisor) -> Result<(), DivisorError> {
    if div.is_normalized() {
        Ok(())
    } else {
        Err(DivisorError::NotNormalized)
    }
}

/// `f_t = t^d f(x0/t, x1, …, xn)`; `t = 0` gives `x0^d`.
pub fn scale_divisor(div: &Divisor, t: &Rational) -> Result<Divisor, DivisorError> {
    require_normalized(div)?;
    let d = div.d;
    let f = div.f.map_coefficients(|m, c| {
        let i0 = div.f.exponent_of(m, "x0");
        c * pow(t, d - i0)
    });
    Ok(Divisor { f, ..div.clone() })
}

/// `Π_{i=1..k} (x0^2 - i·S)` with `S = x1^2 + … + xn^2`, and the same times `x0`.
pub fn product_family(n: usize, k: usize) -> Result<(Divisor, Divisor), DivisorError> {
    if n == 0 || k == 0 {
        return Err(DivisorError::BadFamily);
    }
    let x0 = SparsePoly::var("x0");
    let s = (1..=n).fold(SparsePoly::zero(), |acc, i| &acc + &SparsePoly::var(&coord(i)).pow(2));
    let g = (1..=k).fold(SparsePoly::one(), |acc, i| &acc * &(&x0.pow(2) - &s.scale(&int(i as i64))));
    let h = &x0 * &g;
    Ok((Divisor::new(n, g)?, Divisor::new(n, h)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MembershipSet {
    DivPrime,
    E,
    DivDoublePrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Member,
    NonMember,
    EvidenceOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Sampled,
}

/// A direction `x = (x1, …, xn)` with the exact number of distinct real
/// roots of `f(·, x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleCertificate {
    #[serde(with = "crate::rational::serde_str_vec")]
    pub x: Vec<Rational>,
    pub sturm_count: usize,
    /// Signs of `F_2(p(x)), …, F_d(p(x))`; empty when `d` exceeds the
    /// supported range.
    pub critical_signs: Vec<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub set: MembershipSet,
    pub verdict: Verdict,
    pub mode: Mode,
    pub witness: Option<SampleCertificate>,
    pub samples: usize,
    pub failed_samples: usize,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub certificates: Vec<SampleCertificate>,
    /// Extra exact data: `F_j(p)` for `n = 1`, or `g(t)` for the last test.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub details: Vec<String>,
}

/// Deterministic directions in `R^n \ {0}` spread over the unit sphere,
/// rounded to integer vectors (positivity of forms and root counts are
/// invariant under positive scaling).
pub fn sphere_grid(n: usize, count: usize) -> Vec<Vec<Rational>> {
    let unit = sphere_grid_f64(n, count);
    let scale = f64::from(1u32 << 20);
    unit.into_iter()
        .map(|u| {
            let v: Vec<i64> = u.iter().map(|c| (c * scale).round() as i64).collect();
            let g = v.iter().fold(0, |g, &x| num_integer::gcd(g, x)).max(1);
            v.iter().map(|&x| Rational::from_integer(BigInt::from(x / g))).collect()
        })
        .collect()
}

/// Unit vectors behind [`sphere_grid`]: `±1` for `n = 1`; for `n >= 2` the
/// signed coordinate axes followed by `count - 2n` points, equally spaced angles
/// for `n = 2`, a Fibonacci lattice for `n = 3` and normalized Halton
/// points beyond.
pub fn sphere_grid_f64(n: usize, count: usize) -> Vec<Vec<f64>> {
    if n < 2 {
        return spread(n, count);
    }
    let axes = (0..n).flat_map(|i| {
        [1.0, -1.0].map(|s| {
            let mut v = vec![0.0; n];
            v[i] = s;
            v
        })
    });
    axes.chain(spread(n, count.saturating_sub(2 * n))).take(count).collect()
}

fn spread(n: usize, count: usize) -> Vec<Vec<f64>> {
    match n {
        0 => Vec::new(),
        1 => vec![vec![1.0], vec![-1.0]],
        2 => (0..count)
            .map(|k| {
                let a = 2.0 * PI * (k as f64 + 0.5) / count as f64;
                vec![a.cos(), a.sin()]
            })
            .collect(),
        3 => {
            let golden = PI * (3.0 - 5f64.sqrt());
            (0..count)
                .map(|k| {
                    let z = 1.0 - (2.0 * k as f64 + 1.0) / count as f64;
                    let r = (1.0 - z * z).sqrt();
                    let phi = golden * k as f64;
                    vec![r * phi.cos(), r * phi.sin(), z]
                })
                .collect()
        }
        _ => {
            let primes = first_primes(n);
            (1..)
                .map(|k| primes.iter().map(|&p| 2.0 * halton(k, p) - 1.0).collect::<Vec<f64>>())
                .filter_map(|v| {
                    let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                    (norm > 0.1 && norm <= 1.0).then(|| v.iter().map(|c| c / norm).collect())
                })
                .take(count)
                .collect()
        }
    }
}

fn halton(mut k: usize, base: usize) -> f64 {
    let (mut f, mut r) = (1.0, 0.0);
    while k > 0 {
        f /= base as f64;
        r += f * (k % base) as f64;
        k /= base;
    }
    r
}

fn first_primes(n: usize) -> Vec<usize> {
    (2..).filter(|&p| (2..p).take_while(|q| q * q <= p).all(|q| p % q != 0)).take(n).collect()
}

/// Default grid density: 2000 samples for `n = 2`, 20000 for `n >= 3`.
pub fn default_grid(n: usize) -> usize {
    match n {
        0 | 1 => 2,
        2 => 2000,
        _ => 20000,
    }
}

/// `F_j(p_1, …, p_d)` for `j = 2..=d`, each as its list of substituted
/// factors (forms in `x1..xn`). Empty when `d < 2` or `d` is out of range.
pub fn substituted_critical(div: &Divisor) -> Result<Vec<Vec<Factor>>, DivisorError> {
    let d = div.d as usize;
    if !(2..=D_MAX).contains(&d) {
        return Ok(Vec::new());
    }
    let set = critical_polynomials(d).map_err(|e| DivisorError::Other(e.to_string()))?;
    let p = div.graded_coefficients();
    set.polys
        .iter()
        .map(|fj| fj.substitute_graded(&p).map_err(|e| DivisorError::Other(e.to_string())))
        .collect()
}

/// The expanded form `F_j(p)`.
pub fn expand_factors(factors: &[Factor]) -> SparsePoly {
    factors.iter().fold(SparsePoly::one(), |acc, f| &acc * &f.poly.pow(f.exp))
}

/// Both certificates for one direction of a normalized divisor. Since
/// `F_j(p)(x) = F_j(p(x))`, the critical signs are taken at the restricted
/// coefficients.
fn certify(coeffs: &[SparsePoly], set: Option<&CriticalSet>, x: &[Rational]) -> SampleCertificate {
    let a: Vec<Rational> = coeffs.iter().map(|p| eval_at(p, x)).collect();
    let g = UniPoly::from_descending(std::iter::once(Rational::one()).chain(a.iter().cloned()).collect());
    let sturm_count = count_distinct_roots_total(&g).unwrap_or(0);
    let critical_signs = set.map(|s| s.signs_at(&a)).unwrap_or_default();
    SampleCertificate { x: x.to_vec(), sturm_count, critical_signs }
}

fn passes(c: &SampleCertificate, d: usize) -> Result<bool, DivisorError> {
    let by_sturm = c.sturm_count == d;
    if c.critical_signs.is_empty() {
        return Ok(by_sturm);
    }
    let by_critical = c.critical_signs.iter().all(|&s| s > 0);
    if by_sturm != by_critical {
        let x: Vec<String> = c.x.iter().map(ToString::to_string).collect();
        return Err(DivisorError::RouteDisagreement(format!("x = ({})", x.join(", "))));
    }
    Ok(by_sturm)
}

/// Membership in `E`: every real line through `(1:0:…:0)` meets `D` in `d`
/// distinct real points.
///
/// For `n = 1` the answer is exact: each `F_j(p)` is `c·x1^k` and is
/// positive iff it is positive at `x1 = ±1`, which is cross-checked against
/// the Sturm counts of `f(·, ±1)`. For `n >= 2` every grid direction is
/// certified exactly by both routes; success is only evidence, failure
/// comes with an exact witness.
pub fn in_e(div: &Divisor, grid: Option<usize>, verbose: bool) -> Result<MembershipReport, DivisorError> {
    require_normalized(div)?;
    let d = div.d as usize;
    let n = div.n;
    let set = if (2..=D_MAX).contains(&d) {
        Some(critical_polynomials(d).map_err(|e| DivisorError::Other(e.to_string()))?)
    } else {
        None
    };
    let coeffs = div.graded_coefficients();
    let count = grid.unwrap_or_else(|| default_grid(n));
    let points = sphere_grid(n, count);
    let certs: Vec<SampleCertificate> = points.par_iter().map(|x| certify(&coeffs, set, x)).collect();
    let mut failed = 0;
    let mut witness = None;
    for c in &certs {
        if !passes(c, d)? {
            failed += 1;
            if witness.is_none() {
                witness = Some(c.clone());
            }
        }
    }
    let exact = n == 1;
    let mut details = Vec::new();
    if exact {
        let subst = substituted_critical(div)?;
        let mut all_positive = true;
        for (j, f) in subst.iter().enumerate() {
            let h = expand_factors(f);
            all_positive &= form_positive_1d(&h);
            details.push(format!("F{}(p) = {}", j + 2, h));
        }
        if !subst.is_empty() && all_positive != (failed == 0) {
            return Err(DivisorError::RouteDisagreement("critical forms vs lines x1 = ±1".into()));
        }
    }
    let verdict = match (failed, exact) {
        (0, true) => Verdict::Member,
        (0, false) => Verdict::EvidenceOnly,
        _ => Verdict::NonMember,
    };
    Ok(MembershipReport {
        set: MembershipSet::E,
        verdict,
        mode: if exact { Mode::Exact } else { Mode::Sampled },
        witness,
        samples: certs.len(),
        failed_samples: failed,
        certificates: if verbose { certs } else { Vec::new() },
        details,
    })
}

/// Positivity of a form in the single variable `x1` on `R \ {0}`: its
/// dehomogenization is a constant, so it is positive iff its values at
/// `x1 = 1` and `x1 = -1` are.
pub fn form_positive_1d(h: &SparsePoly) -> bool {
    [int(1), int(-1)].iter().all(|x| eval_at(h, std::slice::from_ref(x)).is_positive())
}

/// `ε = δ / (2M)` with `M = C(n+k-1, k)` for a form `H` of degree `k` in
/// `n` variables.
pub fn positivity_margin(h: &SparsePoly, n: usize, delta: &Rational) -> Result<Rational, DivisorError> {
    if !delta.is_positive() {
        return Err(DivisorError::NonPositiveDelta);
    }
    let k = h.homogeneous_degree().ok_or(DivisorError::NotHomogeneous)?;
    let m = binomial(n + k as usize - 1, k as usize);
    Ok(delta / Rational::from_integer(m * 2))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Smallest value of `H` over the unit vectors of the grid (floats).
pub fn sphere_minimum(h: &SparsePoly, n: usize, grid: usize) -> f64 {
    sphere_grid_f64(n, grid)
        .iter()
        .map(|u| h.eval_f64(|v| index_of(v).and_then(|i| i.checked_sub(1)).and_then(|i| u.get(i).copied())).unwrap_or(f64::NAN))
        .fold(f64::INFINITY, f64::min)
}

/// All monomials of degree `k` in `x1..xn`.
pub fn monomials(n: usize, k: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![k]];
    }
    (0..=k)
        .rev()
        .flat_map(|e| monomials(n - 1, k - e).into_iter().map(move |mut rest| {
            rest.insert(0, e);
            rest
        }))
        .collect()
}

/// `H` with every one of its `M` coefficients (zeros included) moved by a
/// random rational of absolute value below `eps`.
pub fn perturb<R: Rng>(h: &SparsePoly, n: usize, eps: &Rational, rng: &mut R) -> SparsePoly {
    let k = h.homogeneous_degree().unwrap_or(0);
    let res = 1_000_000i64;
    let delta = SparsePoly::from_terms(
        coords(1..=n),
        monomials(n, k).into_iter().map(|m| {
            let r = Rational::new(rng.gen_range(-(res - 1)..res).into(), res.into());
            (m, eps * r)
        }),
    )
    .expect("distinct variables");
    h + &delta
}

/// Whether `H > 0` at every grid direction (exact).
pub fn positive_on_grid(h: &SparsePoly, points: &[Vec<Rational>]) -> bool {
    points.par_iter().all(|x| eval_at(h, x).is_positive())
}

/// Membership in `Div″`: in `E` and `f_t(1,1,0,…,0) = Σ c_{i0,i1} t^i1 ≠ 0`
/// on `(0, 1]`. The second condition is decided exactly.
pub fn in_div_double_prime(div: &Divisor, grid: Option<usize>, verbose: bool) -> Result<MembershipReport, DivisorError> {
    require_normalized(div)?;
    let mut report = in_e(div, grid, verbose)?;
    report.set = MembershipSet::DivDoublePrime;
    let g = marked_point_curve(div);
    let (avoids, note) = avoids_marked_point(&g);
    report.details.push(format!("g(t) = {}", g.to_sparse("t")));
    report.details.push(note);
    if !avoids {
        report.verdict = Verdict::NonMember;
        report.mode = Mode::Exact;
    }
    Ok(report)
}

/// `g(t) = f_t(1, 1, 0, …, 0)`.
pub fn marked_point_curve(div: &Divisor) -> UniPoly {
    let d = div.d;
    let mut coeffs = vec![Rational::zero(); d as usize + 1];
    for (m, c) in div.f.terms() {
        let i0 = div.f.exponent_of(m, "x0");
        let i1 = div.f.exponent_of(m, "x1");
        if i0 + i1 == d {
            coeffs[i1 as usize] += c;
        }
    }
    UniPoly::new(coeffs)
}

/// Whether `g` has no root in `(0, 1]`, with a short explanation.
pub fn avoids_marked_point(g: &UniPoly) -> (bool, String) {
    let one = Rational::one();
    if g.eval(&one).is_zero() {
        return (false, "g(1) = 0".into());
    }
    if g.eval(&Rational::zero()).is_zero() {
        // Not reachable for normalized forms (g(0) = 1); handled for safety.
        let roots = isolate_roots_bisection(g, &Rational::new(1.into(), 1024.into())).unwrap_or_default();
        let inside = roots.iter().filter(|r| r.hi > Rational::zero() && r.lo < one).count();
        return (inside == 0, format!("g(0) = 0, roots near (0,1): {inside}"));
    }
    match count_distinct_roots_in(g, &Rational::zero(), &one) {
        Ok(0) => (true, "no roots in (0,1], g(1) != 0".into()),
        Ok(k) => (false, format!("{k} roots in (0,1)")),
        Err(e) => (false, format!("sturm failure: {e}")),
    }
}

/// Float value of a rational vector, for reporting.
pub fn to_f64_vec(x: &[Rational]) -> Vec<f64> {
    x.iter().map(to_f64).collect()
}

/// A dyadic rational just below the sampled minimum of `H` on the unit
/// sphere; used to pick `δ` for [`positivity_margin`].
pub fn delta_from_grid(h: &SparsePoly, n: usize, grid: usize) -> Option<Rational> {
    let min = sphere_minimum(h, n, grid);
    if !(min > 0.0) {
        return None;
    }
    // Round down to a dyadic rational a little below the sampled minimum.
    let scaled = (min * 0.999 * f64::from(1u32 << 30)).floor();
    let k = scaled.to_i64()?;
    (k > 0).then(|| Rational::new(k.into(), BigInt::one() << 30))
}
