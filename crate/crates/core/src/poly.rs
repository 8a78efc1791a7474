//! Sparse multivariate polynomials over [`Rational`].
//!
//! A [`SparsePoly`] is kept canonical at all times:
//!
//! - the variable list holds exactly the variables that occur, sorted in
//!   natural order (`a2 < a10`, `u0_9 < u0_10`);
//! - no zero coefficient is stored;
//! - terms are ordered graded-lexicographically, so iteration, `Display`
//!   and JSON output are bit-stable.
//!
//! Binary operations align operands on the union of their variables, so
//! polynomials over different variable sets mix freely.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::{parse_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("exponent vector of length {got} does not match {expected} variables")]
    ExponentLength { expected: usize, got: usize },
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("no value supplied for variable `{0}`")]
    Unassigned(String),
    #[error("invalid coefficient: {0}")]
    Coefficient(String),
}

/// Compares identifiers so that embedded integers sort numerically.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let mut ai = a.chars().peekable();
    let mut bi = b.chars().peekable();
    loop {
        match (ai.peek().copied(), bi.peek().copied()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x.is_ascii_digit() && y.is_ascii_digit() => {
                let mut na = String::new();
                while let Some(c) = ai.peek().copied().filter(char::is_ascii_digit) {
                    na.push(c);
                    ai.next();
                }
                let mut nb = String::new();
                while let Some(c) = bi.peek().copied().filter(char::is_ascii_digit) {
                    nb.push(c);
                    bi.next();
                }
                let ta = na.trim_start_matches('0');
                let tb = nb.trim_start_matches('0');
                let ord = ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb)).then_with(|| na.len().cmp(&nb.len()));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            (Some(x), Some(y)) => {
                if x != y {
                    return x.cmp(&y);
                }
                ai.next();
                bi.next();
            }
        }
    }
}

/// Exponent vector, aligned with the owning polynomial's variable list.
///
/// Ordered graded-lexicographically: total degree first, then the first
/// variable is the most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparsePoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

fn merge_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match natural_cmp(&a[i], &b[j]) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl SparsePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        Self { vars: Vec::new(), terms }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), Rational::one());
        Self { vars: vec![name.to_string()], terms }
    }

    /// `c * Π name^e`.
    pub fn monomial(c: Rational, powers: &[(&str, u32)]) -> Self {
        let mut p = Self::constant(c);
        for (name, e) in powers {
            p = &p * &Self::var(name).pow(*e);
        }
        p
    }

    /// Builds a polynomial from raw `(exponents, coefficient)` pairs in an
    /// arbitrary variable order. Repeated exponents are summed.
    pub fn from_terms<I>(vars: Vec<String>, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut sorted: Vec<usize> = (0..vars.len()).collect();
        sorted.sort_by(|&i, &j| natural_cmp(&vars[i], &vars[j]));
        for w in sorted.windows(2) {
            if vars[w[0]] == vars[w[1]] {
                return Err(PolyError::DuplicateVariable(vars[w[0]].clone()));
            }
        }
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (exp, c) in terms {
            if exp.len() != vars.len() {
                return Err(PolyError::ExponentLength { expected: vars.len(), got: exp.len() });
            }
            let e: Vec<u32> = sorted.iter().map(|&i| exp[i]).collect();
            *map.entry(Monomial(e)).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        let vars = sorted.iter().map(|&i| vars[i].clone()).collect();
        Ok(Self::compact(vars, map))
    }

    /// Drops variables that no longer occur.
    fn compact(vars: Vec<String>, terms: BTreeMap<Monomial, Rational>) -> Self {
        let mut used = vec![false; vars.len()];
        for m in terms.keys() {
            for (u, e) in used.iter_mut().zip(&m.0) {
                *u |= *e > 0;
            }
        }
        if used.iter().all(|u| *u) {
            return Self { vars, terms };
        }
        let keep: Vec<usize> = (0..vars.len()).filter(|&i| used[i]).collect();
        let vars = keep.iter().map(|&i| vars[i].clone()).collect();
        let terms = terms
            .into_iter()
            .map(|(m, c)| (Monomial(keep.iter().map(|&i| m.0[i]).collect()), c))
            .collect();
        Self { vars, terms }
    }

    /// Re-expresses the terms over `target`, which must contain every
    /// variable of `self` and be naturally sorted.
    fn aligned(&self, target: &[String]) -> BTreeMap<Monomial, Rational> {
        if self.vars.as_slice() == target {
            return self.terms.clone();
        }
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v).expect("target covers vars"))
            .collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; target.len()];
                for (k, &p) in pos.iter().enumerate() {
                    e[p] = m.0[k];
                }
                (Monomial(e), c.clone())
            })
            .collect()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    /// Value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(k)` when every term has total degree `k`; `None` for the zero
    /// polynomial or an inhomogeneous one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Homogeneity restricted to a subset of variables (e.g. one group of a
    /// multihomogeneous form).
    pub fn homogeneous_degree_in(&self, group: &[String]) -> Option<u32> {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(_, v)| group.contains(v))
            .map(|(i, _)| i)
            .collect();
        let mut it = self.terms.keys().map(|m| idx.iter().map(|&i| m.0[i]).sum::<u32>());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: &str) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        Some(match self.var_index(var) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        })
    }

    /// Coefficients with respect to `var`; entry `k` multiplies `var^k`.
    pub fn coefficients_in(&self, var: &str) -> Vec<SparsePoly> {
        let Some(deg) = self.degree_in(var) else {
            return Vec::new();
        };
        let Some(i) = self.var_index(var) else {
            return vec![self.clone()];
        };
        let mut buckets: Vec<BTreeMap<Monomial, Rational>> = vec![BTreeMap::new(); deg as usize + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e.remove(i);
            buckets[k as usize].insert(Monomial(e), c.clone());
        }
        let mut rest = self.vars.clone();
        rest.remove(i);
        buckets
            .into_iter()
            .map(|b| Self::compact(rest.clone(), b))
            .collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(var: &str, coeffs: &[SparsePoly]) -> SparsePoly {
        let x = SparsePoly::var(var);
        let mut acc = SparsePoly::zero();
        let mut xp = SparsePoly::one();
        for c in coeffs {
            if !c.is_zero() {
                acc = &acc + &(c * &xp);
            }
            xp = &xp * &x;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero();
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        let mut result = SparsePoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Evaluates with a value lookup; every occurring variable must resolve.
    pub fn eval_with<F>(&self, mut value: F) -> Result<Rational, PolyError>
    where
        F: FnMut(&str) -> Option<Rational>,
    {
        let vals: Vec<Rational> = self
            .vars
            .iter()
            .map(|v| value(v).ok_or_else(|| PolyError::Unassigned(v.clone())))
            .collect::<Result<_, _>>()?;
        let mut powers: Vec<Vec<Rational>> = vals.iter().map(|v| vec![Rational::one(), v.clone()]).collect();
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pk = &mut powers[k];
                while pk.len() <= e as usize {
                    let next = pk.last().unwrap() * &vals[k];
                    pk.push(next);
                }
                t *= &pk[e as usize];
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval(&self, point: &HashMap<String, Rational>) -> Result<Rational, PolyError> {
        self.eval_with(|v| point.get(v).cloned())
    }

    /// Floating-point evaluation for numerical diagnostics.
    pub fn eval_f64<F>(&self, mut value: F) -> Result<f64, PolyError>
    where
        F: FnMut(&str) -> Option<f64>,
    {
        let vals: Vec<f64> = self
            .vars
            .iter()
            .map(|v| value(v).ok_or_else(|| PolyError::Unassigned(v.clone())))
            .collect::<Result<_, _>>()?;
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(&vals)
                    .fold(crate::rational::to_f64(c), |acc, (&e, x)| acc * x.powi(e as i32))
            })
            .sum())
    }

    /// Replaces variables by polynomials; unmapped variables are kept.
    pub fn substitute(&self, map: &HashMap<String, SparsePoly>) -> SparsePoly {
        let images: Vec<SparsePoly> = self
            .vars
            .iter()
            .map(|v| map.get(v).cloned().unwrap_or_else(|| SparsePoly::var(v)))
            .collect();
        let target = images.iter().fold(Vec::new(), |acc, p| merge_vars(&acc, &p.vars));
        let mut powers: Vec<Vec<SparsePoly>> = images.iter().map(|p| vec![SparsePoly::one(), p.clone()]).collect();
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = SparsePoly::constant(c.clone());
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pk = &mut powers[k];
                while pk.len() <= e as usize {
                    let next = pk.last().unwrap() * &images[k];
                    pk.push(next);
                }
                t = &t * &pk[e as usize];
            }
            for (mm, cc) in t.aligned(&target) {
                *acc.entry(mm).or_insert_with(Rational::zero) += cc;
            }
        }
        Self::from_hash(target, acc)
    }

    fn from_hash(vars: Vec<String>, acc: HashMap<Monomial, Rational>) -> SparsePoly {
        let terms: BTreeMap<Monomial, Rational> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self::compact(vars, terms)
    }

    /// Renames variables; the mapping must be injective on `vars()`.
    pub fn rename<F: Fn(&str) -> String>(&self, f: F) -> SparsePoly {
        let vars: Vec<String> = self.vars.iter().map(|v| f(v)).collect();
        let terms = self.terms.iter().map(|(m, c)| (m.0.clone(), c.clone()));
        Self::from_terms(vars, terms).expect("rename must be injective")
    }

    /// Keeps only terms whose monomial satisfies `pred` (exponents are given
    /// as `(variable, exponent)` pairs).
    pub fn filter_terms<F>(&self, mut pred: F) -> SparsePoly
    where
        F: FnMut(&[String], &Monomial) -> bool,
    {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| pred(&self.vars, m))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Self::compact(self.vars.clone(), terms)
    }

    /// Applies `f` to every coefficient (zero results are dropped).
    pub fn map_coefficients<F: FnMut(&Monomial, &Rational) -> Rational>(&self, mut f: F) -> SparsePoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(m, c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self::compact(self.vars.clone(), terms)
    }

    /// Exponent of `var` in `m`, where `m` belongs to this polynomial.
    pub fn exponent_of(&self, m: &Monomial, var: &str) -> u32 {
        self.var_index(var).map_or(0, |i| m.0[i])
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &SparsePoly) -> Option<SparsePoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(SparsePoly::zero());
        }
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let vars = merge_vars(&self.vars, &divisor.vars);
        let mut rem = self.aligned(&vars);
        let div = divisor.aligned(&vars);
        let (lm, lc) = div.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))?;
        let lc_inv = lc.recip();
        let mut quot: BTreeMap<Monomial, Rational> = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&lm)?;
            let qc = &c * &lc_inv;
            for (dm, dc) in &div {
                let key = dm.mul(&qm);
                let delta = dc * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quot.insert(qm, qc);
        }
        Some(Self::compact(vars, quot))
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Zero for the zero polynomial.
    pub fn content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            Rational::zero()
        } else {
            Rational::new(num, den)
        }
    }

    /// `(content, primitive part)`; the primitive part keeps the sign of
    /// every coefficient.
    pub fn primitive(&self) -> (Rational, SparsePoly) {
        let c = self.content();
        if c.is_zero() {
            return (c, SparsePoly::zero());
        }
        let p = self.scale(&c.recip());
        (c, p)
    }

    /// `Some(c)` with `self == c * other`, when such a nonzero rational exists.
    pub fn scalar_multiple_of(&self, other: &SparsePoly) -> Option<Rational> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        if self.vars != other.vars || self.terms.len() != other.terms.len() {
            return None;
        }
        let (m0, c0) = self.leading_term()?;
        let (o0, d0) = other.leading_term()?;
        if m0 != o0 {
            return None;
        }
        let ratio = c0 / d0;
        for ((m, c), (o, d)) in self.terms.iter().zip(other.terms.iter()) {
            if m != o || c != &(d * &ratio) {
                return None;
            }
        }
        Some(ratio)
    }

    /// Equality up to a nonzero rational factor.
    pub fn projectively_eq(&self, other: &SparsePoly) -> bool {
        self.scalar_multiple_of(other).is_some()
    }

    fn binary_add(&self, other: &SparsePoly, negate: bool) -> SparsePoly {
        if other.is_zero() {
            return self.clone();
        }
        let vars = merge_vars(&self.vars, &other.vars);
        let mut acc = self.aligned(&vars);
        for (m, c) in other.aligned(&vars) {
            let c = if negate { -c } else { c };
            match acc.entry(m) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        Self::compact(vars, acc)
    }

    fn binary_mul(&self, other: &SparsePoly) -> SparsePoly {
        if self.is_zero() || other.is_zero() {
            return SparsePoly::zero();
        }
        let vars = merge_vars(&self.vars, &other.vars);
        let a = self.aligned(&vars);
        let b = other.aligned(&vars);
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(a.len() * b.len());
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Self::from_hash(vars, acc)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&SparsePoly> for &SparsePoly {
            type Output = SparsePoly;
            fn $method(self, rhs: &SparsePoly) -> SparsePoly {
                let f: fn(&SparsePoly, &SparsePoly) -> SparsePoly = $body;
                f(self, rhs)
            }
        }
        impl $tr<SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $method(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $method(self, rhs: &SparsePoly) -> SparsePoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.binary_add(b, false));
forward_binop!(Sub, sub, |a, b| a.binary_add(b, true));
forward_binop!(Mul, mul, |a, b| a.binary_mul(b));

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

impl From<Rational> for SparsePoly {
    fn from(c: Rational) -> Self {
        SparsePoly::constant(c)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            let is_const = m.degree() == 0;
            if is_const || !a.is_one() {
                factors.push(a.to_string());
            }
            for (v, &e) in self.vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    exp: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

impl Serialize for SparsePoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            vars: self.vars.clone(),
            terms: self
                .terms()
                .map(|(m, c)| TermJson { coeff: c.to_string(), exp: m.0.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparsePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let terms = raw
            .terms
            .into_iter()
            .map(|t| {
                parse_rational(&t.coeff)
                    .map(|c| (t.exp, c))
                    .map_err(|e| PolyError::Coefficient(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        SparsePoly::from_terms(raw.vars, terms).map_err(serde::de::Error::custom)
    }
}
