//! Substituted homogeneous degree.
//!
//! Coefficient variables `a1, a2, …` carry weights `1, 2, …`; the weight of
//! a monomial `a1^i1 ⋯ an^in` is `Σ j·ij`. A polynomial is
//! *substitutable-homogeneous* when all of its terms share one weight. The
//! weight is what survives when `aj` is replaced by a form of degree `j`:
//! the result is a form of degree equal to the weight.

use std::collections::HashMap;

use thiserror::Error;

use crate::poly::{Monomial, SparsePoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShdError {
    #[error("variable `{0}` carries no index, cannot assign an shd weight")]
    UnindexedVariable(String),
    #[error("polynomial is not substitutable-homogeneous")]
    NotSubstitutableHomogeneous,
    #[error("g{index} must be homogeneous of degree {index} (or zero)")]
    WrongDegree { index: usize },
    #[error("no substitute supplied for `{0}`")]
    MissingSubstitute(String),
    #[error("substituted result is not homogeneous of degree {0}")]
    ResultNotHomogeneous(u64),
}

/// Result of the homogeneity test under shd weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShdValue {
    /// The zero polynomial: compatible with every weight.
    Any,
    Homogeneous(u64),
    NotHomogeneous,
}

impl ShdValue {
    pub fn value(self) -> Option<u64> {
        match self {
            ShdValue::Homogeneous(k) => Some(k),
            _ => None,
        }
    }
}

/// Weight of a coefficient variable: the trailing integer of its name
/// (`a3` and `a_3` both weigh 3).
pub fn shd_weight(var: &str) -> Result<u64, ShdError> {
    let digits: String = var
        .chars()
        .rev()
        .take_while(char::is_ascii_digit)
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .collect();
    digits
        .parse()
        .map_err(|_| ShdError::UnindexedVariable(var.to_string()))
}

/// shd of a single monomial of `p`.
pub fn shd_monomial(vars: &[String], m: &Monomial) -> Result<u64, ShdError> {
    vars.iter()
        .zip(&m.0)
        .filter(|(_, e)| **e > 0)
        .map(|(v, &e)| shd_weight(v).map(|w| w * e as u64))
        .sum()
}

/// shd of `a1^i1 ⋯ an^in` from the exponent list `[i1, …, in]`.
pub fn shd_of_exponents(exps: &[u32]) -> u64 {
    exps.iter()
        .enumerate()
        .map(|(j, &e)| (j as u64 + 1) * e as u64)
        .sum()
}

pub fn is_substitutable_homogeneous(p: &SparsePoly) -> Result<ShdValue, ShdError> {
    let mut weight = None;
    for (m, _) in p.terms() {
        let w = shd_monomial(p.vars(), m)?;
        match weight {
            None => weight = Some(w),
            Some(prev) if prev != w => return Ok(ShdValue::NotHomogeneous),
            _ => {}
        }
    }
    Ok(weight.map_or(ShdValue::Any, ShdValue::Homogeneous))
}

/// Replaces `aj` by `g[j-1]` where each `g[j-1]` is a form of degree `j`
/// (or zero). The result is checked to be a form of degree `shd(f)`.
pub fn substitute_graded(f: &SparsePoly, g: &[SparsePoly]) -> Result<SparsePoly, ShdError> {
    for (i, gi) in g.iter().enumerate() {
        if !gi.is_zero() && gi.homogeneous_degree() != Some(i as u32 + 1) {
            return Err(ShdError::WrongDegree { index: i + 1 });
        }
    }
    let k = match is_substitutable_homogeneous(f)? {
        ShdValue::Any => return Ok(SparsePoly::zero()),
        ShdValue::NotHomogeneous => return Err(ShdError::NotSubstitutableHomogeneous),
        ShdValue::Homogeneous(k) => k,
    };
    let mut map = HashMap::new();
    for v in f.vars() {
        let j = shd_weight(v)? as usize;
        let gj = j
            .checked_sub(1)
            .and_then(|i| g.get(i))
            .ok_or_else(|| ShdError::MissingSubstitute(v.clone()))?;
        map.insert(v.clone(), gj.clone());
    }
    let out = f.substitute(&map);
    if !out.is_zero() && out.homogeneous_degree().map(u64::from) != Some(k) {
        return Err(ShdError::ResultNotHomogeneous(k));
    }
    Ok(out)
}
