//! Critical polynomials of the generic monic polynomial.
//!
//! For `f = x^d + a1 x^(d-1) + … + ad` with symbolic coefficients the Sturm
//! sequence lives over `ℚ(a1, …, ad)`. It is computed through the reduced
//! remainder sequence
//!
//! ```text
//! N0 = f,  N1 = f',  N(i+1) = -prem(N(i-1), N(i)) / L(i-1)^2,
//! ```
//!
//! where `L(k) = lc(N(k))` and `L0 = 1`. Every division is exact, and the true
//! Sturm polynomials are `f(i) = c(i) · N(i)` with
//! `c(i+1) = c(i-1) · L(i-1)^2 / L(i)^2`. The leading coefficient of `f(j)`
//! is therefore `scale · F(j) / w(j)^2` with
//!
//! ```text
//! F(j) = P(j) · ∏ P(k)^2   over 2 <= k <= j-2, k ≡ j (mod 2)
//! w(j) = ∏ P(k)            over 2 <= k <= j-1, k ≢ j (mod 2)
//! ```
//!
//! where `P(k)` is the primitive part of `L(k)` and `scale > 0`. The factors
//! are kept separate: for `d = 8` the expanded products are far larger than
//! anything the predicates need.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::packed::IntPoly;
use crate::poly::SparsePoly;
use crate::rational::{int, pow, sign, Rational};
use crate::shd::{is_substitutable_homogeneous, substitute_graded, ShdError, ShdValue};
use crate::sturm::count_distinct_roots_total;
use crate::univariate::UniPoly;

/// Largest degree for which the symbolic sequence is generated.
pub const D_MAX: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriticalError {
    #[error("degree {0} is outside the supported range 2..={D_MAX}")]
    DegreeOutOfRange(usize),
    #[error("symbolic remainder N{0} vanished identically")]
    DegenerateRemainder(usize),
    #[error("pseudo-remainder for N{0} is not divisible by the squared leading coefficient")]
    InexactReduction(usize),
    #[error("closed-form remainder disagrees with pseudo-division for N{0}")]
    ClosedFormMismatch(usize),
    #[error("Sturm sequence has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("(f{0}, f{1}) is not a substitutable pair: {2}")]
    NotSubstitutablePair(usize, usize, String),
    #[error(transparent)]
    Shd(#[from] ShdError),
}

/// `a1, …, ad`.
pub fn coefficient_vars(d: usize) -> Vec<String> {
    (1..=d).map(|k| format!("a{k}")).collect()
}

/// A polynomial raised to a power, as one entry of a factored product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub poly: SparsePoly,
    pub exp: u32,
}

fn expand(scale: &Rational, factors: &[Factor]) -> SparsePoly {
    factors
        .iter()
        .fold(SparsePoly::constant(scale.clone()), |acc, f| &acc * &f.poly.pow(f.exp))
}

/// Weight of a substitutable rational function, or of a difference of
/// weights. Zero is compatible with every weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RationalShd {
    Any,
    Value(i64),
    NotHomogeneous,
}

fn factors_shd(factors: &[Factor]) -> Result<RationalShd, ShdError> {
    let mut total = 0i64;
    for f in factors {
        match is_substitutable_homogeneous(&f.poly)? {
            ShdValue::Any => return Ok(RationalShd::Any),
            ShdValue::NotHomogeneous => return Ok(RationalShd::NotHomogeneous),
            ShdValue::Homogeneous(k) => total += k as i64 * i64::from(f.exp),
        }
    }
    Ok(RationalShd::Value(total))
}

/// `scale · ∏ num / ∏ den` with every factor substitutable-homogeneous.
/// The weight `shd(num) - shd(den)` does not depend on how the fraction is
/// written, since `p1/q1 = p2/q2` forces `shd p1 + shd q2 = shd p2 + shd q1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstRationalFn {
    pub scale: Rational,
    pub num: Vec<Factor>,
    pub den: Vec<Factor>,
}

impl SubstRationalFn {
    pub fn new(num: SparsePoly, den: SparsePoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self {
            scale: Rational::one(),
            num: vec![Factor { poly: num, exp: 1 }],
            den: vec![Factor { poly: den, exp: 1 }],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero() || self.num.iter().any(|f| f.poly.is_zero())
    }

    pub fn shd_value(&self) -> Result<RationalShd, ShdError> {
        if self.is_zero() {
            return Ok(RationalShd::Any);
        }
        Ok(match (factors_shd(&self.num)?, factors_shd(&self.den)?) {
            (RationalShd::Value(n), RationalShd::Value(d)) => RationalShd::Value(n - d),
            _ => RationalShd::NotHomogeneous,
        })
    }

    pub fn numerator(&self) -> SparsePoly {
        expand(&self.scale, &self.num)
    }

    pub fn denominator(&self) -> SparsePoly {
        expand(&Rational::one(), &self.den)
    }

    /// Value at a point; `None` when the denominator vanishes there.
    pub fn eval(&self, point: &HashMap<String, Rational>) -> Option<Rational> {
        let prod = |fs: &[Factor]| -> Rational {
            fs.iter()
                .map(|f| pow(&f.poly.eval(point).expect("point covers the variables"), f.exp))
                .product()
        };
        let den = prod(&self.den);
        if den.is_zero() {
            return None;
        }
        Some(&self.scale * prod(&self.num) / den)
    }
}

/// Checks both pair conditions for `A = Σ p_i x^(d-i)` and
/// `B = Σ q_i x^(d-1-i)` (coefficients highest first) and returns the
/// constant `c = shd q_i - shd p_i`.
pub fn is_substitutable_pair(a: &[SubstRationalFn], b: &[SubstRationalFn]) -> Result<i64, String> {
    if b.len() + 1 != a.len() {
        return Err(format!("degrees {} and {} do not differ by one", a.len() - 1, b.len() as i64 - 1));
    }
    let shds = |cs: &[SubstRationalFn]| -> Result<Vec<RationalShd>, String> {
        cs.iter().map(|c| c.shd_value().map_err(|e| e.to_string())).collect()
    };
    let (sa, sb) = (shds(a)?, shds(b)?);
    let head = |s: &[RationalShd], name: &str| match s[0] {
        RationalShd::Value(v) => Ok(v),
        RationalShd::Any => Err(format!("leading coefficient of {name} is zero")),
        RationalShd::NotHomogeneous => Err(format!("leading coefficient of {name} is not substitutable")),
    };
    let (p0, q0) = (head(&sa, "A")?, head(&sb, "B")?);
    let c = q0 - p0;
    for (i, s) in sa.iter().enumerate() {
        match *s {
            RationalShd::NotHomogeneous => return Err(format!("p{i} is not substitutable")),
            RationalShd::Value(v) if v != i as i64 + p0 => {
                return Err(format!("shd p{i} = {v}, expected {}", i as i64 + p0))
            }
            _ => {}
        }
    }
    for (i, s) in sb.iter().enumerate() {
        match *s {
            RationalShd::NotHomogeneous => return Err(format!("q{i} is not substitutable")),
            RationalShd::Value(v) if v - (i as i64 + p0) != c => {
                return Err(format!("shd q{i} - shd p{i} = {}, expected {c}", v - (i as i64 + p0)))
            }
            _ => {}
        }
    }
    Ok(c)
}

/// Two consecutive members of the symbolic Sturm sequence.
#[derive(Clone, Debug)]
pub struct SubstitutablePair {
    pub index: usize,
    pub a: Vec<SubstRationalFn>,
    pub b: Vec<SubstRationalFn>,
    pub c: i64,
}

/// The Sturm sequence of the generic monic polynomial of degree `d`.
#[derive(Clone, Debug)]
pub struct SymbolicSturm {
    pub d: usize,
    pub vars: Vec<String>,
    /// Coefficients of `N0, …, Nd`, highest degree first.
    pub reduced: Vec<Vec<SparsePoly>>,
    /// `L0, …, Ld`.
    pub leads: Vec<SparsePoly>,
    /// Pair constants `c` of `(f_i, f_{i+1})`, as verified during construction.
    pub pair_constants: Vec<i64>,
}

fn prem(p: &[IntPoly], q: &[IntPoly]) -> Vec<IntPoly> {
    let steps = p.len() - q.len() + 1;
    let mut rem = p.to_vec();
    for k in 0..steps {
        let lead = rem[k].clone();
        for r in rem.iter_mut().skip(k) {
            *r = r.mul(&q[0]);
        }
        for (j, qj) in q.iter().enumerate() {
            rem[k + j] = rem[k + j].sub(&lead.mul(qj));
        }
    }
    rem.split_off(steps)
}

/// Numerators `q0^2 · r_(i-2)` of the remainder of `A` by `B` when
/// `deg A = deg B + 1`, written out coefficient by coefficient.
fn closed_form_remainder(p: &[IntPoly], q: &[IntPoly]) -> Vec<IntPoly> {
    let n = p.len() - 1;
    let zero = IntPoly::zero();
    let qi = |i: usize| q.get(i).unwrap_or(&zero);
    let q0sq = q[0].mul(&q[0]);
    (2..=n)
        .into_par_iter()
        .map(|i| {
            let t1 = p[i].mul(&q0sq);
            let t2 = p[0].mul(&q[0]).mul(qi(i));
            let t3 = p[1].mul(&q[0]).sub(&p[0].mul(qi(1))).mul(qi(i - 1));
            t1.sub(&t2).sub(&t3)
        })
        .collect()
}

impl SymbolicSturm {
    fn build(d: usize) -> Result<Self, CriticalError> {
        let vars = coefficient_vars(d);
        let coeff = |k: usize, c: i64| {
            if k == 0 {
                IntPoly::constant(c.into())
            } else {
                IntPoly::var(k - 1, c.into())
            }
        };
        let n0: Vec<IntPoly> = (0..=d).map(|k| coeff(k, 1)).collect();
        let n1: Vec<IntPoly> = (0..d).map(|k| coeff(k, (d - k) as i64)).collect();
        let mut reduced = vec![n0, n1];
        for i in 1..d {
            let (p, q) = (&reduced[i - 1], &reduced[i]);
            let general = prem(p, q);
            let closed = closed_form_remainder(p, q);
            if general != closed {
                return Err(CriticalError::ClosedFormMismatch(i + 1));
            }
            let lsq = p[0].mul(&p[0]);
            let next: Vec<IntPoly> = closed
                .par_iter()
                .map(|r| r.exact_div(&lsq).map(|x| x.neg()))
                .collect::<Option<_>>()
                .ok_or(CriticalError::InexactReduction(i + 1))?;
            if next[0].is_zero() {
                return Err(CriticalError::DegenerateRemainder(i + 1));
            }
            reduced.push(next);
        }
        if reduced.len() != d + 1 {
            return Err(CriticalError::WrongLength { expected: d + 1, got: reduced.len() });
        }
        let reduced: Vec<Vec<SparsePoly>> = reduced
            .iter()
            .map(|n| n.iter().map(|c| c.to_sparse(&vars)).collect())
            .collect();
        let leads = reduced.iter().map(|n| n[0].clone()).collect();
        let mut seq = SymbolicSturm { d, vars, reduced, leads, pair_constants: Vec::new() };
        for i in 0..d {
            let c = is_substitutable_pair(&seq.coefficients(i), &seq.coefficients(i + 1))
                .map_err(|msg| CriticalError::NotSubstitutablePair(i, i + 1, msg))?;
            seq.pair_constants.push(c);
        }
        Ok(seq)
    }

    /// `c_i` with `f_i = c_i · N_i`.
    pub fn multiplier(&self, i: usize) -> SubstRationalFn {
        let d2 = int(self.d as i64 * self.d as i64);
        let scale = match i {
            0 | 1 => Rational::one(),
            _ if i % 2 == 1 => d2,
            _ => d2.recip(),
        };
        let sq = |k: usize| Factor { poly: self.leads[k].clone(), exp: 2 };
        SubstRationalFn {
            scale,
            num: (2..i).filter(|k| k % 2 == i % 2).map(sq).collect(),
            den: (2..i).filter(|k| k % 2 != i % 2).map(sq).collect(),
        }
    }

    /// Coefficients of `f_i` over `ℚ(a1, …, ad)`, highest degree first.
    pub fn coefficients(&self, i: usize) -> Vec<SubstRationalFn> {
        let m = self.multiplier(i);
        self.reduced[i]
            .iter()
            .map(|c| {
                let mut r = m.clone();
                r.num.insert(0, Factor { poly: c.clone(), exp: 1 });
                r
            })
            .collect()
    }

    pub fn pair(&self, i: usize) -> SubstitutablePair {
        SubstitutablePair {
            index: i,
            a: self.coefficients(i),
            b: self.coefficients(i + 1),
            c: self.pair_constants[i],
        }
    }

    /// The symbolic sequence evaluated at `a = point`, or `None` if some
    /// multiplier has a vanishing denominator there.
    pub fn specialize(&self, point: &[Rational]) -> Option<Vec<UniPoly>> {
        let env = point_env(&self.vars, point);
        (0..=self.d)
            .map(|i| {
                let c = self.multiplier(i).eval(&env)?;
                let coeffs = self.reduced[i]
                    .iter()
                    .map(|n| &c * n.eval(&env).expect("point covers the variables"))
                    .collect();
                Some(UniPoly::from_descending(coeffs))
            })
            .collect()
    }
}

fn point_env(vars: &[String], point: &[Rational]) -> HashMap<String, Rational> {
    vars.iter().cloned().zip(point.iter().cloned()).collect()
}

fn check_degree(d: usize) -> Result<(), CriticalError> {
    if (2..=D_MAX).contains(&d) {
        Ok(())
    } else {
        Err(CriticalError::DegreeOutOfRange(d))
    }
}

static SYMBOLIC: [OnceLock<Result<SymbolicSturm, CriticalError>>; D_MAX + 1] = [const { OnceLock::new() }; D_MAX + 1];
static CRITICAL: [OnceLock<Result<CriticalSet, CriticalError>>; D_MAX + 1] = [const { OnceLock::new() }; D_MAX + 1];

/// The symbolic Sturm sequence for degree `d`, computed once per process.
pub fn symbolic_sturm(d: usize) -> Result<&'static SymbolicSturm, CriticalError> {
    check_degree(d)?;
    SYMBOLIC[d].get_or_init(|| SymbolicSturm::build(d)).as_ref().map_err(Clone::clone)
}

/// One critical polynomial `F_j` in factored form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalPoly {
    pub j: usize,
    /// Positive constant with `lc(f_j) = scale · F_j / w_j^2`.
    #[serde(with = "crate::rational::serde_str")]
    pub scale: Rational,
    pub factors: Vec<Factor>,
    pub w_factors: Vec<Factor>,
}

impl CriticalPoly {
    pub fn expand(&self) -> SparsePoly {
        expand(&Rational::one(), &self.factors)
    }

    pub fn w(&self) -> SparsePoly {
        expand(&Rational::one(), &self.w_factors)
    }

    pub fn shd(&self) -> Result<u64, ShdError> {
        match factors_shd(&self.factors)? {
            RationalShd::Value(v) => Ok(v as u64),
            _ => Err(ShdError::NotSubstitutableHomogeneous),
        }
    }

    /// Sign of `F_j` at a point, from the signs of its factors.
    pub fn sign_at(&self, point: &[Rational], vars: &[String]) -> i8 {
        let env = point_env(vars, point);
        self.factors
            .iter()
            .map(|f| {
                let s = sign(&f.poly.eval(&env).expect("point covers the variables"));
                if f.exp % 2 == 0 {
                    s * s
                } else {
                    s
                }
            })
            .product()
    }

    /// `F_j(g_1, …, g_d)` with each factor substituted separately.
    pub fn substitute_graded(&self, g: &[SparsePoly]) -> Result<Vec<Factor>, ShdError> {
        self.factors
            .iter()
            .map(|f| Ok(Factor { poly: substitute_graded(&f.poly, g)?, exp: f.exp }))
            .collect()
    }
}

/// The critical polynomials `F_2, …, F_d` of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalSet {
    pub d: usize,
    pub vars: Vec<String>,
    pub polys: Vec<CriticalPoly>,
}

impl CriticalSet {
    fn build(d: usize) -> Result<Self, CriticalError> {
        let seq = symbolic_sturm(d)?;
        // L_k = content_k · P_k with content_k > 0.
        let (contents, prims): (Vec<Rational>, Vec<SparsePoly>) =
            seq.leads.iter().map(SparsePoly::primitive).unzip();
        let d2 = int(d as i64 * d as i64);
        let polys = (2..=d)
            .map(|j| {
                let same: Vec<usize> = (2..j.saturating_sub(1)).filter(|k| k % 2 == j % 2).collect();
                let other: Vec<usize> = (2..j).filter(|k| k % 2 != j % 2).collect();
                let mut scale = contents[j].clone();
                for &k in &same {
                    scale *= pow(&contents[k], 2);
                }
                for &k in &other {
                    scale /= pow(&contents[k], 2);
                }
                scale = if j % 2 == 1 { scale * &d2 } else { scale / &d2 };
                let mut factors = vec![Factor { poly: prims[j].clone(), exp: 1 }];
                factors.extend(same.iter().map(|&k| Factor { poly: prims[k].clone(), exp: 2 }));
                let w_factors = other.iter().map(|&k| Factor { poly: prims[k].clone(), exp: 1 }).collect();
                CriticalPoly { j, scale, factors, w_factors }
            })
            .collect();
        Ok(CriticalSet { d, vars: seq.vars.clone(), polys })
    }

    /// `F_j` for `2 <= j <= d`.
    pub fn get(&self, j: usize) -> &CriticalPoly {
        &self.polys[j - 2]
    }

    /// Signs of `F_2, …, F_d` at `a = point`.
    pub fn signs_at(&self, point: &[Rational]) -> Vec<i8> {
        let env = point_env(&self.vars, point);
        let mut cache: HashMap<&SparsePoly, i8> = HashMap::new();
        self.polys
            .iter()
            .map(|p| {
                p.factors
                    .iter()
                    .map(|f| {
                        let s = *cache
                            .entry(&f.poly)
                            .or_insert_with(|| sign(&f.poly.eval(&env).expect("point covers the variables")));
                        if f.exp % 2 == 0 {
                            s * s
                        } else {
                            s
                        }
                    })
                    .product()
            })
            .collect()
    }
}

/// The critical polynomials for degree `d`, computed once per process.
pub fn critical_polynomials(d: usize) -> Result<&'static CriticalSet, CriticalError> {
    check_degree(d)?;
    CRITICAL[d].get_or_init(|| CriticalSet::build(d)).as_ref().map_err(Clone::clone)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootVerdict {
    AllDistinctReal,
    NotAllDistinctReal,
    /// Some `F_j` vanishes; the criterion does not apply.
    Degenerate,
}

/// Decides whether `x^d + a1 x^(d-1) + … + ad` has `d` distinct real roots
/// from the signs of the critical polynomials.
pub fn has_d_distinct_real_roots(coeffs: &[Rational]) -> Result<RootVerdict, CriticalError> {
    let d = coeffs.len();
    if d < 2 {
        return Ok(RootVerdict::AllDistinctReal);
    }
    let signs = critical_polynomials(d)?.signs_at(coeffs);
    Ok(if signs.contains(&0) {
        RootVerdict::Degenerate
    } else if signs.iter().all(|&s| s > 0) {
        RootVerdict::AllDistinctReal
    } else {
        RootVerdict::NotAllDistinctReal
    })
}

/// `x^n + a1 x^(n-1) + … + an`.
pub fn monic_from_coeffs(coeffs: &[Rational]) -> UniPoly {
    let mut desc = vec![Rational::one()];
    desc.extend(coeffs.iter().cloned());
    UniPoly::from_descending(desc)
}

/// Whether the monic polynomial with coefficients `point` has `n` distinct
/// real roots, falling back to a direct Sturm count when the critical
/// polynomials are degenerate or `n` exceeds [`D_MAX`].
pub fn in_s_n(point: &[Rational]) -> bool {
    match has_d_distinct_real_roots(point) {
        Ok(RootVerdict::AllDistinctReal) => true,
        Ok(RootVerdict::NotAllDistinctReal) => false,
        _ => direct_count(point) == point.len(),
    }
}

/// Distinct real roots of the monic polynomial, by Sturm.
pub fn direct_count(point: &[Rational]) -> usize {
    let f = monic_from_coeffs(point);
    count_distinct_roots_total(&f).expect("monic polynomial is nonzero")
}

/// A random rational vector with small numerators and denominators.
#[doc(hidden)]
pub fn sample_coefficients<R: rand::Rng>(rng: &mut R, d: usize, range: i64) -> Vec<Rational> {
    (0..d)
        .map(|_| Rational::new(BigInt::from(rng.gen_range(-range..=range)), BigInt::from(rng.gen_range(1..=4))))
        .collect()
}
