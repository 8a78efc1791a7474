//! Sturm sequences and distinct real root counting.
//!
//! The sequence is built with strict Euclidean division over ℚ: no
//! pseudo-remainders and no content removal, so `f_{i-1} = q_i f_i - f_{i+1}`
//! holds literally.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::SparsePoly;
use crate::rational::{sign, Rational};
use crate::univariate::{DivisionError, UniPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SturmError {
    #[error("a Sturm sequence needs a polynomial of degree at least 1")]
    Constant,
    #[error("the zero polynomial has no Sturm sequence")]
    Zero,
    #[error("interval endpoint {0} is a root; nudge the endpoints first")]
    EndpointRoot(Rational),
    #[error("empty interval: need a < b")]
    EmptyInterval,
    #[error(transparent)]
    Division(#[from] DivisionError),
}

/// Signs `-1, 0, +1` of a sequence of values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSeq(pub Vec<i8>);

impl SignSeq {
    pub fn sign_changes(&self) -> usize {
        sign_changes(&self.0)
    }
}

/// Number of sign changes once zeros are deleted.
pub fn sign_changes(signs: &[i8]) -> usize {
    let nz: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmSeq {
    pub polys: Vec<UniPoly>,
}

impl SturmSeq {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn signs_at(&self, x: &Rational) -> SignSeq {
        SignSeq(self.polys.iter().map(|p| sign(&p.eval(x))).collect())
    }

    /// Signs at `+∞` (`positive = true`) or `-∞`, read off leading
    /// coefficients and degrees.
    pub fn signs_at_infinity(&self, positive: bool) -> SignSeq {
        SignSeq(
            self.polys
                .iter()
                .map(|p| {
                    let s = sign(p.leading_coeff().expect("sequence members are nonzero"));
                    let odd = p.degree().unwrap_or(0) % 2 == 1;
                    if !positive && odd {
                        -s
                    } else {
                        s
                    }
                })
                .collect(),
        )
    }

    /// Distinct roots in the open interval `(a, b)`; endpoints must not be roots.
    pub fn count_in(&self, a: &Rational, b: &Rational) -> Result<usize, SturmError> {
        if a >= b {
            return Err(SturmError::EmptyInterval);
        }
        let f = &self.polys[0];
        for e in [a, b] {
            if f.eval(e).is_zero() {
                return Err(SturmError::EndpointRoot(e.clone()));
            }
        }
        let va = self.signs_at(a).sign_changes();
        let vb = self.signs_at(b).sign_changes();
        Ok(va - vb)
    }

    pub fn count_total(&self) -> usize {
        self.signs_at_infinity(false).sign_changes() - self.signs_at_infinity(true).sign_changes()
    }
}

pub fn sturm_sequence(f: &UniPoly) -> Result<SturmSeq, SturmError> {
    match f.degree() {
        None => return Err(SturmError::Zero),
        Some(0) => return Err(SturmError::Constant),
        _ => {}
    }
    let mut polys = vec![f.clone(), f.derivative()];
    loop {
        let n = polys.len();
        let r = polys[n - 2].rem(&polys[n - 1])?;
        if r.is_zero() {
            break;
        }
        polys.push(r.neg());
    }
    Ok(SturmSeq { polys })
}

fn univariate(f: &SparsePoly) -> Result<UniPoly, SturmError> {
    Ok(UniPoly::from_sparse_any(f)?.0)
}

pub fn sturm_sequence_of(f: &SparsePoly) -> Result<SturmSeq, SturmError> {
    sturm_sequence(&univariate(f)?)
}

/// Distinct real roots of `f` in `(a, b)`. A constant nonzero `f` has none.
pub fn count_distinct_roots_in(f: &UniPoly, a: &Rational, b: &Rational) -> Result<usize, SturmError> {
    match f.degree() {
        None => Err(SturmError::Zero),
        Some(0) if a < b => Ok(0),
        Some(0) => Err(SturmError::EmptyInterval),
        _ => sturm_sequence(f)?.count_in(a, b),
    }
}

/// Distinct real roots of `f` on the whole line.
pub fn count_distinct_roots_total(f: &UniPoly) -> Result<usize, SturmError> {
    match f.degree() {
        None => Err(SturmError::Zero),
        Some(0) => Ok(0),
        _ => Ok(sturm_sequence(f)?.count_total()),
    }
}

/// Half the distance from a root `e` of `f` to the nearest other root is at
/// least `1 / (2B)`, where `B` bounds the reciprocals of the nonzero roots of
/// `f(e + y)`.
fn separation_step(f: &UniPoly, e: &Rational) -> Rational {
    let shifted = f.shift(e);
    let low = shifted.coeffs().iter().take_while(|c| c.is_zero()).count();
    let mut rev: Vec<Rational> = shifted.coeffs()[low..].to_vec();
    rev.reverse();
    let bound = UniPoly::new(rev).cauchy_bound();
    (Rational::one() / bound) / Rational::from_integer(2.into())
}

/// Moves each endpoint that is a root of `f` outward by less than the gap to
/// the next root, so that the open interval `(a', b')` has exactly the roots
/// of the closed interval `[a, b]`. Endpoints that are not roots are kept.
pub fn nudge_endpoints(f: &UniPoly, a: &Rational, b: &Rational) -> (Rational, Rational) {
    let mut a2 = a.clone();
    let mut b2 = b.clone();
    if !f.is_zero() && f.eval(a).is_zero() {
        a2 = a - separation_step(f, a);
    }
    if !f.is_zero() && f.eval(b).is_zero() {
        b2 = b + separation_step(f, b);
    }
    (a2, b2)
}

/// An open interval `(lo, hi)` holding exactly one distinct root of `f`;
/// neither endpoint is a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// Isolates every distinct real root of `f` in an interval of width at most
/// `precision`, by Sturm-count bisection starting from the Cauchy bound.
/// Intervals are returned in increasing order.
pub fn isolate_roots_bisection(f: &UniPoly, precision: &Rational) -> Result<Vec<RootInterval>, SturmError> {
    assert!(precision.is_positive(), "precision must be positive");
    let seq = match f.degree() {
        None => return Err(SturmError::Zero),
        Some(0) => return Ok(Vec::new()),
        _ => sturm_sequence(f)?,
    };
    let fast = IntSeq::new(&seq);
    let b = dyadic_above(&f.cauchy_bound());
    let a = -b.clone();
    let total = fast.changes_at(&a) - fast.changes_at(&b);
    let mut out = Vec::with_capacity(total);
    let mut stack = vec![(a, b, total)];
    while let Some((lo, hi, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 && &hi - &lo <= *precision {
            out.push(RootInterval { lo, hi });
            continue;
        }
        let mid = split_point(&fast, &lo, &hi);
        let left = fast.changes_at(&lo) - fast.changes_at(&mid);
        // Push right first so that roots come out in increasing order.
        stack.push((mid.clone(), hi, n - left));
        stack.push((lo, mid, left));
    }
    Ok(out)
}

/// Smallest power of two that is at least `x > 0`.
fn dyadic_above(x: &Rational) -> Rational {
    let mut p = Rational::one();
    while &p < x {
        p *= Rational::from_integer(2.into());
    }
    p
}

/// The sequence with every member scaled by a positive constant to integer
/// coefficients; signs are read off `q^deg · p(a/q)` in integer arithmetic.
struct IntSeq {
    polys: Vec<Vec<BigInt>>,
}

impl IntSeq {
    fn new(seq: &SturmSeq) -> Self {
        let polys = seq
            .polys
            .iter()
            .map(|p| {
                let l = p.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
                p.coeffs().iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect()
            })
            .collect();
        Self { polys }
    }

    fn sign_of(p: &[BigInt], x: &Rational) -> i8 {
        let (num, den) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dk = BigInt::one();
        for c in p.iter().rev() {
            acc = acc * num + c * &dk;
            dk *= den;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    fn is_root(&self, x: &Rational) -> bool {
        Self::sign_of(&self.polys[0], x) == 0
    }

    fn changes_at(&self, x: &Rational) -> usize {
        let signs: Vec<i8> = self.polys.iter().map(|p| Self::sign_of(p, x)).collect();
        sign_changes(&signs)
    }
}

/// Midpoint of `(lo, hi)`, or a nearby non-root if the midpoint is a root.
fn split_point(seq: &IntSeq, lo: &Rational, hi: &Rational) -> Rational {
    let two = Rational::from_integer(2.into());
    let mid = (lo + hi) / &two;
    if !seq.is_root(&mid) {
        return mid;
    }
    let w = hi - lo;
    (1..)
        .map(|k: i64| &mid + &w * Rational::new(k.into(), (16 * (k + 1)).into()))
        .find(|m| !seq.is_root(m))
        .expect("finitely many roots")
}

/// Refines an isolating interval by bisection until its width is at most
/// `precision`.
pub fn refine(seq: &SturmSeq, iv: &RootInterval, precision: &Rational) -> RootInterval {
    let fast = IntSeq::new(seq);
    let f = &fast.polys[0];
    let mut iv = iv.clone();
    let s_lo = IntSeq::sign_of(f, &iv.lo);
    while iv.width() > *precision {
        let mid = split_point(&fast, &iv.lo, &iv.hi);
        let s_mid = IntSeq::sign_of(f, &mid);
        // Simple roots change sign; multiple roots need the count.
        let left = if s_mid != s_lo { 1 } else { fast.changes_at(&iv.lo) - fast.changes_at(&mid) };
        if left == 1 {
            iv.hi = mid;
        } else {
            iv.lo = mid;
        }
    }
    iv
}
