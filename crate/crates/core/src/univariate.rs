//! Dense univariate polynomials over [`Rational`] and exact division.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::SparsePoly;
use crate::rational::{to_f64, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DivisionError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not univariate in `{var}` (found variables {found:?})")]
    NotUnivariate { var: String, found: Vec<String> },
    #[error("leading coefficient of the divisor in `{0}` is not a nonzero constant")]
    NonConstantLeadingCoefficient(String),
}

/// Coefficients stored lowest degree first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Coefficients given highest degree first.
    pub fn from_descending(coeffs: Vec<Rational>) -> Self {
        let mut c = coeffs;
        c.reverse();
        Self::new(c)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: Rational) -> Self {
        Self::new(vec![-r, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` is the degree of the zero polynomial (−∞).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
                    match other.coeffs.get(k) {
                        Some(b) => a + b,
                        None => a,
                    }
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division over the field: `self = q * g + r`, `deg r < deg g`.
    pub fn divmod(&self, g: &Self) -> Result<(Self, Self), DivisionError> {
        let dg = g.degree().ok_or(DivisionError::DivisionByZero)?;
        let lc_inv = g.coeffs[dg].recip();
        let mut rem = self.coeffs.clone();
        let Some(df) = self.degree().filter(|&d| d >= dg) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut q = vec![Rational::zero(); df - dg + 1];
        for k in (0..=df - dg).rev() {
            let c = &rem[k + dg] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, gc) in g.coeffs.iter().enumerate() {
                rem[k + j] -= &c * gc;
            }
            q[k] = c;
        }
        rem.truncate(dg);
        Ok((Self::new(q), Self::new(rem)))
    }

    pub fn rem(&self, g: &Self) -> Result<Self, DivisionError> {
        self.divmod(g).map(|(_, r)| r)
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p(x + shift)`.
    pub fn shift(&self, shift: &Rational) -> Self {
        // Horner in polynomial arithmetic.
        let lin = Self::new(vec![shift.clone(), Rational::one()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Cauchy bound: every complex root has modulus `< 1 + max|c_i|/|c_lead|`.
    pub fn cauchy_bound(&self) -> Rational {
        let Some(lc) = self.leading_coeff() else {
            return Rational::one();
        };
        let lc = lc.abs();
        let n = self.coeffs.len() - 1;
        let m = self.coeffs[..n]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero);
        Rational::one() + m / lc
    }

    pub fn from_sparse(p: &SparsePoly, var: &str) -> Result<Self, DivisionError> {
        if p.vars().iter().any(|v| v != var) {
            return Err(DivisionError::NotUnivariate { var: var.to_string(), found: p.vars().to_vec() });
        }
        Ok(Self::new(
            p.coefficients_in(var)
                .iter()
                .map(|c| c.as_constant().expect("univariate coefficient is constant"))
                .collect(),
        ))
    }

    /// Univariate in its only variable; constants are accepted with `x`.
    pub fn from_sparse_any(p: &SparsePoly) -> Result<(Self, String), DivisionError> {
        let var = match p.vars() {
            [] => "x".to_string(),
            [v] => v.clone(),
            other => {
                return Err(DivisionError::NotUnivariate { var: "?".into(), found: other.to_vec() })
            }
        };
        Ok((Self::from_sparse(p, &var)?, var))
    }

    pub fn to_sparse(&self, var: &str) -> SparsePoly {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (vec![k as u32], c.clone()));
        SparsePoly::from_terms(vec![var.to_string()], terms).expect("single variable")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sparse("x"))
    }
}

/// Division of polynomials univariate in `var` whose coefficients may involve
/// other variables. The divisor's leading coefficient in `var` must be a
/// nonzero rational constant, so the division stays inside `ℚ[params][var]`.
pub fn poly_divmod(f: &SparsePoly, g: &SparsePoly, var: &str) -> Result<(SparsePoly, SparsePoly), DivisionError> {
    let gc = g.coefficients_in(var);
    let lead = gc.last().ok_or(DivisionError::DivisionByZero)?;
    let lc = lead
        .as_constant()
        .ok_or_else(|| DivisionError::NonConstantLeadingCoefficient(var.to_string()))?;
    let lc_inv = lc.recip();
    let dg = gc.len() - 1;
    let mut rem = f.coefficients_in(var);
    if rem.len() <= dg {
        return Ok((SparsePoly::zero(), f.clone()));
    }
    let mut q = vec![SparsePoly::zero(); rem.len() - dg];
    for k in (0..q.len()).rev() {
        let c = rem[k + dg].scale(&lc_inv);
        if c.is_zero() {
            continue;
        }
        for (j, gj) in gc.iter().enumerate() {
            rem[k + j] = &rem[k + j] - &(&c * gj);
        }
        q[k] = c;
    }
    rem.truncate(dg);
    Ok((
        SparsePoly::from_coefficients_in(var, &q),
        SparsePoly::from_coefficients_in(var, &rem),
    ))
}

/// Pseudo-division in `ℚ[params][var]`:
/// `lc(g)^(deg f − deg g + 1) · f = q·g + r` with `deg r < deg g`.
/// Coefficients are given highest degree first.
pub fn pseudo_divmod(f: &[SparsePoly], g: &[SparsePoly]) -> Result<(Vec<SparsePoly>, Vec<SparsePoly>), DivisionError> {
    let lg = g.first().filter(|c| !c.is_zero()).ok_or(DivisionError::DivisionByZero)?;
    if f.len() < g.len() {
        return Ok((Vec::new(), f.to_vec()));
    }
    let steps = f.len() - g.len() + 1;
    let mut rem: Vec<SparsePoly> = f.to_vec();
    let mut q: Vec<SparsePoly> = Vec::with_capacity(steps);
    for k in 0..steps {
        // rem = lg*rem - rem[k] * x^? * g
        let lead = rem[k].clone();
        for c in q.iter_mut() {
            *c = &*c * lg;
        }
        q.push(lead.clone());
        for r in rem.iter_mut().skip(k) {
            *r = &*r * lg;
        }
        for (j, gj) in g.iter().enumerate() {
            rem[k + j] = &rem[k + j] - &(&lead * gj);
        }
        debug_assert!(rem[k].is_zero());
    }
    let r = rem.split_off(steps);
    Ok((q, r))
}
