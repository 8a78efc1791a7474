//! Integer polynomials in at most eight variables with exponents packed into
//! a `u64`, one byte per variable, first variable most significant.
//!
//! Used for the symbolic Sturm computation, where the intermediate
//! pseudo-remainders for degree 8 reach millions of term products.
//! Packed keys compare lexicographically, which is a monomial order, so
//! exact division by leading terms works on them directly.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, BinaryHeap};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use crate::poly::SparsePoly;
use crate::rational::Rational;

pub(crate) const MAX_VARS: usize = 8;

fn shift(i: usize) -> u32 {
    8 * (MAX_VARS - 1 - i) as u32
}

pub(crate) fn pack(exps: &[u32]) -> u64 {
    exps.iter().enumerate().fold(0u64, |acc, (i, &e)| {
        assert!(e < 256, "exponent {e} does not fit the packed layout");
        acc | (u64::from(e) << shift(i))
    })
}

pub(crate) fn unpack(key: u64, n: usize) -> Vec<u32> {
    (0..n).map(|i| ((key >> shift(i)) & 0xff) as u32).collect()
}

fn fits(a: u64, b: u64) -> bool {
    (0..MAX_VARS).all(|i| ((a >> shift(i)) & 0xff) + ((b >> shift(i)) & 0xff) < 256)
}

fn divides(d: u64, m: u64) -> bool {
    (0..MAX_VARS).all(|i| (d >> shift(i)) & 0xff <= (m >> shift(i)) & 0xff)
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct IntPoly {
    pub terms: BTreeMap<u64, BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        Self { terms }
    }

    #[cfg(test)]
    pub fn one() -> Self {
        Self::constant(BigInt::from(1))
    }

    /// The `i`-th variable times `c`.
    pub fn var(i: usize, c: BigInt) -> Self {
        let mut e = vec![0; MAX_VARS];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(pack(&e), c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let e = terms.entry(*k).or_insert_with(BigInt::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(k);
            }
        }
        Self { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if let (Some(a), Some(b)) = (self.small(), other.small()) {
            if let Some(p) = mul_small(&a, &b) {
                return Self::from_small(p);
            }
        }
        let mut acc: FxHashMap<u64, BigInt> = FxHashMap::default();
        acc.reserve((self.len() * other.len()).min(4 * (self.len() + other.len())));
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                debug_assert!(fits(*ka, *kb));
                *acc.entry(ka + kb).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        Self { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Coefficients as `i128`, when they all fit with room for products.
    fn small(&self) -> Option<Vec<(u64, i128)>> {
        self.terms.iter().map(|(k, c)| c.to_i128().map(|c| (*k, c))).collect()
    }

    fn from_small(terms: impl IntoIterator<Item = (u64, i128)>) -> Self {
        Self { terms: terms.into_iter().filter(|(_, c)| *c != 0).map(|(k, c)| (k, BigInt::from(c))).collect() }
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if let (Some(a), Some(b)) = (self.small(), d.small()) {
            if let Some(q) = div_small(a, &b) {
                return q.map(Self::from_small);
            }
        }
        let (&lk, lc) = d.terms.iter().next_back()?;
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((&k, c)) = rem.iter().next_back() {
            if !divides(lk, k) {
                return None;
            }
            let (q, r) = num_integer::Integer::div_rem(c, lc);
            if !r.is_zero() {
                return None;
            }
            let qk = k - lk;
            for (dk, dc) in &d.terms {
                let key = dk + qk;
                let e = rem.entry(key).or_insert_with(BigInt::zero);
                *e -= dc * &q;
                if e.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.insert(qk, q);
        }
        Some(Self { terms: quot })
    }

    pub fn to_sparse(&self, vars: &[String]) -> SparsePoly {
        let n = vars.len();
        SparsePoly::from_terms(
            vars.to_vec(),
            self.terms.iter().map(|(k, c)| (unpack(*k, n), Rational::from_integer(c.clone()))),
        )
        .expect("distinct variables")
    }
}

/// Product with checked `i128` arithmetic; `None` on overflow.
///
/// Output terms are produced in slices sharing the exponents of the two
/// leading variables, which keeps the accumulator small.
fn mul_small(a: &[(u64, i128)], b: &[(u64, i128)]) -> Option<Vec<(u64, i128)>> {
    let buckets = |p: &[(u64, i128)]| {
        let mut m: BTreeMap<u64, Vec<(u64, i128)>> = BTreeMap::new();
        for &(k, c) in p {
            m.entry(k >> 40).or_default().push((k, c));
        }
        m
    };
    let (ba, bb) = (buckets(a), buckets(b));
    let mut slices: BTreeMap<u64, Vec<(&[(u64, i128)], &[(u64, i128)])>> = BTreeMap::new();
    for (ha, ta) in &ba {
        for (hb, tb) in &bb {
            slices.entry(ha + hb).or_default().push((ta, tb));
        }
    }
    let mut out = Vec::new();
    let mut acc: FxHashMap<u64, i128> = FxHashMap::default();
    for pairs in slices.values() {
        for (ta, tb) in pairs {
            for (ka, ca) in *ta {
                for (kb, cb) in *tb {
                    debug_assert!(fits(*ka, *kb));
                    let e = acc.entry(ka + kb).or_insert(0);
                    *e = e.checked_add(ca.checked_mul(*cb)?)?;
                }
            }
        }
        out.extend(acc.drain().filter(|(_, c)| *c != 0));
    }
    Some(out)
}

/// Exact division with checked `i128` arithmetic. The outer `None` means
/// overflow; the inner one means `b` does not divide `a`.
#[allow(clippy::option_option)]
fn div_small(a: Vec<(u64, i128)>, b: &[(u64, i128)]) -> Option<Option<Vec<(u64, i128)>>> {
    let Some(&(lk, lc)) = b.last() else {
        return Some(None);
    };
    let mut heap: BinaryHeap<u64> = a.iter().map(|(k, _)| *k).collect();
    let mut rem: FxHashMap<u64, i128> = a.into_iter().collect();
    let mut quot = Vec::new();
    while let Some(k) = heap.pop() {
        let Some(c) = rem.remove(&k) else {
            continue;
        };
        if !divides(lk, k) || c % lc != 0 {
            return Some(None);
        }
        let q = c / lc;
        let qk = k - lk;
        for &(dk, dc) in &b[..b.len() - 1] {
            let key = dk + qk;
            match rem.entry(key) {
                Entry::Occupied(mut e) => {
                    let v = e.get().checked_sub(dc.checked_mul(q)?)?;
                    if v == 0 {
                        e.remove();
                    } else {
                        *e.get_mut() = v;
                    }
                }
                Entry::Vacant(e) => {
                    e.insert(dc.checked_mul(q)?.checked_neg()?);
                    heap.push(key);
                }
            }
        }
        quot.push((qk, q));
    }
    Some(Some(quot))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pack_roundtrip_and_order() {
        let k = pack(&[1, 0, 3]);
        assert_eq!(unpack(k, 3), vec![1, 0, 3]);
        assert!(pack(&[1, 0, 0]) > pack(&[0, 9, 9]));
    }

    #[test]
    fn product_then_quotient() {
        let x = IntPoly::var(0, 1.into());
        let y = IntPoly::var(1, 3.into());
        let p = x.add(&y).add(&IntPoly::one());
        let q = x.sub(&y);
        let pq = p.mul(&q);
        assert_eq!(pq.exact_div(&q), Some(p.clone()));
        assert_eq!(pq.add(&IntPoly::one()).exact_div(&q), None);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = IntPoly::var(0, BigInt::from(i128::MAX / 3));
        let y = IntPoly::var(1, 5.into());
        let p = big.add(&y);
        let sq = p.mul(&p);
        let expected = BigInt::from(i128::MAX / 3) * BigInt::from(i128::MAX / 3);
        assert_eq!(sq.terms.get(&pack(&[2, 0])), Some(&expected));
        assert_eq!(sq.exact_div(&p), Some(p));
    }
}
