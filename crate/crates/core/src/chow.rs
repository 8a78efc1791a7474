//! Chow forms of cycles and the coordinate scaling action on them.
//!
//! A form for an `r`-cycle in `P^N` lives in `r + 1` groups of `N + 1`
//! variables `u<i>_<j>` (group `i`, coordinate `j`) and has degree `d` in
//! each group. Forms are only meaningful up to a nonzero scalar.
//!
//! The scaling `^t` multiplies the first `m + 1` coordinates of every group
//! by `t`. Splitting a form by the total exponent of those coordinates gives
//! `^tF = Σ g_k t^k`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::SparsePoly;
use crate::rational::{pow, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChowError {
    #[error("point {0} is the zero vector")]
    ZeroPoint(usize),
    #[error("points have {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("spanning points are linearly dependent")]
    DependentSpan,
    #[error("empty cycle")]
    Empty,
    #[error("form is not homogeneous of degree {d} in group {group}")]
    NotMultihomogeneous { group: usize, d: u32 },
    #[error("variable `{0}` is not of the form u<group>_<coordinate> within the ambient shape")]
    BadVariable(String),
    #[error("the zero polynomial is not a Chow form")]
    ZeroForm,
    #[error("invalid shape: {0}")]
    BadShape(String),
    #[error("forms have different shapes (N, r, m)")]
    ShapeMismatch,
    #[error("t-degree {found} exceeds the bound (m+1)·d = {bound}")]
    DegreeBound { found: u32, bound: u32 },
    #[error("top coefficient g_{0} vanishes: the cycle does not meet the base properly")]
    ImproperIntersection(u32),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix must be {0}x{0}")]
    MatrixShape(usize),
}

/// Name of coordinate `j` of group `i`.
pub fn var_name(i: usize, j: usize) -> String {
    format!("u{i}_{j}")
}

/// Inverse of [`var_name`].
pub fn parse_var(name: &str) -> Option<(usize, usize)> {
    let (i, j) = name.strip_prefix('u')?.split_once('_')?;
    Some((i.parse().ok()?, j.parse().ok()?))
}

fn group_vars(i: usize, n: usize) -> Vec<String> {
    (0..=n).map(|j| var_name(i, j)).collect()
}

/// A multihomogeneous form of degree `d` in `r + 1` groups of `N + 1`
/// variables, with split index `m` for the scaling action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawForm", into = "RawForm")]
pub struct MHForm {
    n: usize,
    r: usize,
    d: u32,
    m: usize,
    form: SparsePoly,
}

#[derive(Serialize, Deserialize)]
struct RawForm {
    #[serde(rename = "N")]
    n: usize,
    r: usize,
    d: u32,
    m: usize,
    form: SparsePoly,
}

impl TryFrom<RawForm> for MHForm {
    type Error = ChowError;
    fn try_from(raw: RawForm) -> Result<Self, ChowError> {
        MHForm::new(raw.n, raw.r, raw.d, raw.m, raw.form)
    }
}

impl From<MHForm> for RawForm {
    fn from(f: MHForm) -> Self {
        RawForm { n: f.n, r: f.r, d: f.d, m: f.m, form: f.form }
    }
}

impl MHForm {
    pub fn new(n: usize, r: usize, d: u32, m: usize, form: SparsePoly) -> Result<Self, ChowError> {
        if d == 0 {
            return Err(ChowError::BadShape("d must be at least 1".into()));
        }
        if m > n {
            return Err(ChowError::BadShape(format!("split index m = {m} exceeds N = {n}")));
        }
        if form.is_zero() {
            return Err(ChowError::ZeroForm);
        }
        for v in form.vars() {
            match parse_var(v) {
                Some((i, j)) if i <= r && j <= n => {}
                _ => return Err(ChowError::BadVariable(v.clone())),
            }
        }
        for i in 0..=r {
            if form.homogeneous_degree_in(&group_vars(i, n)) != Some(d) {
                return Err(ChowError::NotMultihomogeneous { group: i, d });
            }
        }
        Ok(Self { n, r, d, m, form })
    }

    /// Ambient dimension `N`.
    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Cycle dimension `r`.
    pub fn dim(&self) -> usize {
        self.r
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn split(&self) -> usize {
        self.m
    }

    pub fn form(&self) -> &SparsePoly {
        &self.form
    }

    /// Same form with another split index.
    pub fn with_split(&self, m: usize) -> Result<Self, ChowError> {
        Self::new(self.n, self.r, self.d, m, self.form.clone())
    }

    pub fn projectively_eq(&self, other: &MHForm) -> bool {
        self.n == other.n && self.r == other.r && self.d == other.d && self.form.projectively_eq(&other.form)
    }

    /// Value at hyperplanes `xi[i]` (one coefficient vector per group).
    pub fn eval(&self, xi: &[Vec<Rational>]) -> Rational {
        self.form
            .eval_with(|v| parse_var(v).map(|(i, j)| xi[i][j].clone()))
            .expect("every variable is u<i>_<j> within the shape")
    }

    /// `^tF` for a fixed rational `t`.
    pub fn apply_t(&self, t: &Rational) -> MHForm {
        let m = self.m;
        let form = self.form.map_coefficients(|mono, c| {
            let k: u32 = self
                .form
                .vars()
                .iter()
                .zip(&mono.0)
                .filter(|(v, _)| parse_var(v).is_some_and(|(_, j)| j <= m))
                .map(|(_, e)| e)
                .sum();
            c * pow(t, k)
        });
        MHForm { form, ..self.clone() }
    }
}

/// `^tF = Σ g_k t^k`; entry `k` of `coeffs` is `g_k` (possibly zero).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TExpansion {
    pub coeffs: Vec<SparsePoly>,
}

impl TExpansion {
    /// Highest power of `t` with a nonzero coefficient.
    pub fn t_degree(&self) -> u32 {
        self.coeffs.iter().rposition(|g| !g.is_zero()).unwrap_or(0) as u32
    }

    pub fn nonzero_powers(&self) -> Vec<u32> {
        (0..self.coeffs.len() as u32).filter(|&k| !self.coeffs[k as usize].is_zero()).collect()
    }

    /// `Σ g_k t^k` at a rational `t`.
    pub fn recombine(&self, t: &Rational) -> SparsePoly {
        self.coeffs
            .iter()
            .enumerate()
            .fold(SparsePoly::zero(), |acc, (k, g)| &acc + &g.scale(&pow(t, k as u32)))
    }
}

/// Splits `F` by powers of `t` without checking the degree bound.
pub fn t_split(f: &MHForm) -> TExpansion {
    let scaled: Vec<bool> = f
        .form
        .vars()
        .iter()
        .map(|v| parse_var(v).is_some_and(|(_, j)| j <= f.m))
        .collect();
    let power = |mono: &crate::poly::Monomial| -> u32 {
        scaled.iter().zip(&mono.0).filter(|(s, _)| **s).map(|(_, e)| e).sum()
    };
    let top = f.form.terms().map(|(mono, _)| power(mono)).max().unwrap_or(0);
    let coeffs = (0..=top)
        .map(|k| f.form.filter_terms(|_, mono| power(mono) == k))
        .collect();
    TExpansion { coeffs }
}

/// `^tF` split by powers of `t`, with the bound `t-degree <= (m+1)·d`.
pub fn t_expand(f: &MHForm) -> Result<TExpansion, ChowError> {
    let e = t_split(f);
    let bound = (f.m as u32 + 1) * f.d;
    let found = e.t_degree();
    if found > bound {
        return Err(ChowError::DegreeBound { found, bound });
    }
    Ok(e)
}

/// `s` with `^tF = t^s F`, if `F` is an eigenform of the scaling.
pub fn eigenform_degree(f: &MHForm) -> Option<u32> {
    match t_split(f).nonzero_powers().as_slice() {
        [s] => Some(*s),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuspensionReport {
    pub is_suspension: bool,
    pub eigen_degree: Option<u32>,
    pub expected: u32,
    /// An eigenform of degree below `(m+1)·d` cannot come from a cycle that
    /// meets the base properly.
    pub inconsistent: bool,
}

/// Suspension test: `^tF = t^((m+1)d) F`. With `proper` set, an eigenform
/// of smaller degree is flagged as inconsistent input.
pub fn is_suspension(f: &MHForm, proper: bool) -> SuspensionReport {
    let expected = (f.m as u32 + 1) * f.d;
    let eigen = eigenform_degree(f);
    SuspensionReport {
        is_suspension: eigen == Some(expected),
        eigen_degree: eigen,
        expected,
        inconsistent: proper && eigen.is_some_and(|s| s < expected),
    }
}

fn check_point(k: usize, p: &[Rational], n1: usize) -> Result<(), ChowError> {
    if p.len() != n1 {
        return Err(ChowError::DimensionMismatch { expected: n1, got: p.len() });
    }
    if p.iter().all(Zero::is_zero) {
        return Err(ChowError::ZeroPoint(k));
    }
    Ok(())
}

fn linear_form(i: usize, p: &[Rational]) -> SparsePoly {
    p.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(SparsePoly::zero(), |acc, (j, c)| &acc + &SparsePoly::monomial(c.clone(), &[(&var_name(i, j), 1)]))
}

/// Chow form of a 0-cycle: `∏ (Σ_j u0_j a_j)^mult`, split index 0.
pub fn chow_of_points(points: &[(Vec<Rational>, u32)]) -> Result<MHForm, ChowError> {
    let (first, _) = points.first().ok_or(ChowError::Empty)?;
    let n1 = first.len();
    if n1 < 2 {
        return Err(ChowError::BadShape("points need at least two homogeneous coordinates".into()));
    }
    let mut form = SparsePoly::one();
    let mut d = 0;
    for (k, (p, mult)) in points.iter().enumerate() {
        check_point(k, p, n1)?;
        form = &form * &linear_form(0, p).pow(*mult);
        d += mult;
    }
    MHForm::new(n1 - 1, 0, d, 0, form)
}

/// Rank of a rational matrix by Gaussian elimination.
fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            let f = &a[i][c] / &a[r][c];
            for j in c..cols {
                let t = &f * &a[r][j];
                a[i][j] -= t;
            }
        }
        r += 1;
    }
    r
}

/// Determinant of a square matrix of polynomials by cofactor expansion
/// (only used for small sizes).
fn poly_det(m: &[Vec<SparsePoly>]) -> SparsePoly {
    match m.len() {
        0 => SparsePoly::one(),
        1 => m[0][0].clone(),
        n => (0..n).fold(SparsePoly::zero(), |acc, c| {
            if m[0][c].is_zero() {
                return acc;
            }
            let minor: Vec<Vec<SparsePoly>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][c] * &poly_det(&minor);
            if c % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            }
        }),
    }
}

/// Chow form of the linear `r`-cycle spanned by `r + 1` points:
/// `det[u^i · p_j]`. Split index 0.
pub fn chow_of_linear(span: &[Vec<Rational>]) -> Result<MHForm, ChowError> {
    let first = span.first().ok_or(ChowError::Empty)?;
    let n1 = first.len();
    for (k, p) in span.iter().enumerate() {
        check_point(k, p, n1)?;
    }
    if span.len() > n1 || rank(span) < span.len() {
        return Err(ChowError::DependentSpan);
    }
    let r = span.len() - 1;
    let m: Vec<Vec<SparsePoly>> = (0..=r).map(|i| span.iter().map(|p| linear_form(i, p)).collect()).collect();
    MHForm::new(n1 - 1, r, 1, 0, poly_det(&m))
}

/// Chow form of a cycle sum: the product of the forms.
pub fn mul_cycles(f: &MHForm, g: &MHForm) -> Result<MHForm, ChowError> {
    if (f.n, f.r, f.m) != (g.n, g.r, g.m) {
        return Err(ChowError::ShapeMismatch);
    }
    Ok(MHForm { d: f.d + g.d, form: &f.form * &g.form, ..f.clone() })
}

/// The taffy deformation `H(t) = Σ_k g_k t^(top-k)`, `top = (m+1)d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Taffy {
    base: MHForm,
    top: u32,
    g: Vec<SparsePoly>,
}

impl Taffy {
    pub fn top(&self) -> u32 {
        self.top
    }

    /// `H(t)` at a rational `t`.
    pub fn at(&self, t: &Rational) -> MHForm {
        let form = self.g.iter().enumerate().fold(SparsePoly::zero(), |acc, (k, gk)| {
            &acc + &gk.scale(&pow(t, self.top - k as u32))
        });
        MHForm { form, ..self.base.clone() }
    }

    /// `H` as a polynomial in the extra variable `t`.
    pub fn as_polynomial(&self) -> SparsePoly {
        let t = SparsePoly::var("t");
        self.g.iter().enumerate().fold(SparsePoly::zero(), |acc, (k, gk)| &acc + &(gk * &t.pow(self.top - k as u32)))
    }

    /// Whether `H(t)` does not depend on `t`.
    pub fn is_constant(&self) -> bool {
        self.g.iter().filter(|g| !g.is_zero()).count() <= 1 && !self.g[self.top as usize].is_zero()
    }
}

/// Builds the taffy deformation of `F`; requires `g_top != 0`.
pub fn taffy(f: &MHForm) -> Result<Taffy, ChowError> {
    let top = (f.m as u32 + 1) * f.d;
    let mut g = t_expand(f)?.coeffs;
    g.resize(top as usize + 1, SparsePoly::zero());
    if g[top as usize].is_zero() {
        return Err(ChowError::ImproperIntersection(top));
    }
    Ok(Taffy { base: f.clone(), top, g })
}

/// Determinant of a rational matrix by Gaussian elimination.
pub fn det(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut a = a.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for i in c + 1..n {
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

/// `F(Au)` where group `i` of `Au` is `Σ_j a_ij u^j`.
pub fn act(f: &MHForm, a: &[Vec<Rational>]) -> Result<MHForm, ChowError> {
    let groups = f.r + 1;
    if a.len() != groups || a.iter().any(|row| row.len() != groups) {
        return Err(ChowError::MatrixShape(groups));
    }
    let mut map = HashMap::new();
    for (i, row) in a.iter().enumerate() {
        for k in 0..=f.n {
            let image = row.iter().enumerate().fold(SparsePoly::zero(), |acc, (j, c)| {
                &acc + &SparsePoly::monomial(c.clone(), &[(&var_name(j, k), 1)])
            });
            map.insert(var_name(i, k), image);
        }
    }
    Ok(MHForm { form: f.form.substitute(&map), ..f.clone() })
}

/// Checks `F(Au) = det(A)^d F(u)` exactly.
pub fn det_action_check(f: &MHForm, a: &[Vec<Rational>]) -> Result<bool, ChowError> {
    let moved = act(f, a)?;
    let dt = det(a);
    if dt.is_zero() {
        return Err(ChowError::SingularMatrix);
    }
    Ok(moved.form == f.form.scale(&pow(&dt, f.d)))
}

/// Every form here has rational, hence real, coefficients; the scaling
/// action at rational `t`, products and the taffy all stay inside ℚ.
pub fn is_real_form(_f: &MHForm) -> bool {
    true
}

/// Random hyperplanes through `point`: each is a random vector projected
/// onto the orthogonal complement of `point`.
pub fn random_hyperplane_through<R: Rng>(rng: &mut R, point: &[Rational]) -> Vec<Rational> {
    let v = random_vector(rng, point.len());
    let dot = |a: &[Rational], b: &[Rational]| a.iter().zip(b).map(|(x, y)| x * y).sum::<Rational>();
    let k = dot(&v, point) / dot(point, point);
    v.iter().zip(point).map(|(x, p)| x - &k * p).collect()
}

/// Entries are drawn from a large range so that a fixed proper subvariety
/// is hit with negligible probability.
pub fn random_vector<R: Rng>(rng: &mut R, len: usize) -> Vec<Rational> {
    (0..len)
        .map(|_| Rational::new(rng.gen_range(-1_000_000i64..=1_000_000).into(), rng.gen_range(1i64..=9).into()))
        .collect()
}

/// Incidence sampling for a linear cycle spanned by `span`: `trials` tuples
/// of hyperplanes through a common random point of the cycle must give 0,
/// and `trials` random tuples must give nonzero values. Returns the counts
/// of `(vanishing on incident tuples, nonvanishing on generic tuples)`.
pub fn incidence_check<R: Rng>(f: &MHForm, span: &[Vec<Rational>], trials: usize, rng: &mut R) -> (usize, usize) {
    let n1 = f.n + 1;
    let mut incident = 0;
    let mut generic = 0;
    for _ in 0..trials {
        let weights = random_vector(rng, span.len());
        let point: Vec<Rational> = (0..n1)
            .map(|j| span.iter().zip(&weights).map(|(p, w)| &p[j] * w).sum())
            .collect();
        if point.iter().all(Zero::is_zero) {
            incident += 1;
            continue;
        }
        let xi: Vec<Vec<Rational>> = (0..=f.r).map(|_| random_hyperplane_through(rng, &point)).collect();
        if f.eval(&xi).is_zero() {
            incident += 1;
        }
        let xi: Vec<Vec<Rational>> = (0..=f.r).map(|_| random_vector(rng, n1)).collect();
        if !f.eval(&xi).is_zero() {
            generic += 1;
        }
    }
    (incident, generic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::rational::{int, ratio};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> SparsePoly {
        parse_poly(s).unwrap()
    }

    fn pt(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    /// `(ξ⁰ × ξ¹)_k` for hyperplanes in P².
    fn cross(k: usize) -> SparsePoly {
        let (a, b) = ((k + 1) % 3, (k + 2) % 3);
        p(&format!("u0_{a}*u1_{b} - u0_{b}*u1_{a}"))
    }

    #[test]
    fn point_forms() {
        let f = chow_of_points(&[(pt(&[1, 2]), 1)]).unwrap();
        assert_eq!(f.form(), &p("u0_0 + 2*u0_1"));
        let f = chow_of_points(&[(pt(&[1, 0]), 1), (pt(&[0, 1]), 1)]).unwrap();
        assert_eq!(f.degree(), 2);
        assert!(f.form().projectively_eq(&p("u0_0*u0_1")));
        let f = chow_of_points(&[(pt(&[1, 1]), 2)]).unwrap();
        assert_eq!(f.form(), &p("(u0_0 + u0_1)^2"));
        assert_eq!(chow_of_points(&[(pt(&[0, 0]), 1)]), Err(ChowError::ZeroPoint(0)));
    }

    #[test]
    fn lines_match_cross_product_oracle() {
        let (p0, p1) = (int(3), int(-5));
        let f = chow_of_linear(&[pt(&[1, 0, 0]), vec![int(0), p0.clone(), p1.clone()]]).unwrap();
        let oracle = &cross(1).scale(&p1) - &cross(2).scale(&p0);
        assert!(f.form().projectively_eq(&oracle));
        let g = chow_of_linear(&[pt(&[1, 1, 0]), pt(&[0, 0, 1])]).unwrap();
        assert!(g.form().projectively_eq(&(&cross(0) - &cross(1))));
        assert_eq!(chow_of_linear(&[pt(&[1, 1, 0]), pt(&[2, 2, 0])]), Err(ChowError::DependentSpan));
    }

    #[test]
    fn hyperplane_as_linear_cycle() {
        let f = chow_of_linear(&[pt(&[1, 0, 0, 0]), pt(&[0, 1, 0, 0]), pt(&[0, 0, 1, 0])]).unwrap();
        assert_eq!((f.dim(), f.degree()), (2, 1));
        // Three hyperplanes meet {x3 = 0} iff their restrictions are dependent.
        assert!(f.eval(&[pt(&[1, 0, 0, 5]), pt(&[0, 1, 0, 7]), pt(&[1, 1, 0, 1])]).is_zero());
        assert!(!f.eval(&[pt(&[1, 0, 0, 5]), pt(&[0, 1, 0, 7]), pt(&[0, 0, 1, 1])]).is_zero());
    }

    #[test]
    fn t_expansion_by_hand() {
        let f = chow_of_points(&[(pt(&[1, 2]), 1)]).unwrap();
        let e = t_expand(&f).unwrap();
        assert_eq!(e.coeffs, vec![p("2*u0_1"), p("u0_0")]);
        let susp = chow_of_linear(&[pt(&[1, 0, 0]), pt(&[0, 2, 3])]).unwrap();
        assert_eq!(t_expand(&susp).unwrap().nonzero_powers(), vec![1]);
        let l = chow_of_linear(&[pt(&[1, 1, 0]), pt(&[0, 0, 1])]).unwrap();
        let e = t_expand(&l).unwrap();
        assert!(e.coeffs[0].projectively_eq(&cross(0)));
        assert_eq!(e.coeffs[0].scalar_multiple_of(&cross(0)), e.coeffs[1].scalar_multiple_of(&-cross(1)));
    }

    #[test]
    fn eigenforms() {
        let susp = chow_of_linear(&[pt(&[1, 0, 0]), pt(&[0, 2, 3])]).unwrap();
        let other = chow_of_linear(&[pt(&[1, 1, 0]), pt(&[0, 0, 1])]).unwrap();
        assert_eq!(eigenform_degree(&susp), Some(1));
        assert_eq!(eigenform_degree(&other), None);
        assert_eq!(eigenform_degree(&mul_cycles(&susp, &susp).unwrap()), Some(2));
        assert!(is_suspension(&susp, true).is_suspension);
        assert!(!is_suspension(&other, true).is_suspension);
        assert!(!is_suspension(&mul_cycles(&susp, &other).unwrap(), true).is_suspension);
    }

    #[test]
    fn low_eigen_degree_is_inconsistent_when_proper() {
        // u0_1 u1_2 - u0_2 u1_1 has no scaled coordinates: eigen degree 0.
        let f = MHForm::new(2, 1, 1, 0, cross(0)).unwrap();
        let rep = is_suspension(&f, true);
        assert_eq!(rep.eigen_degree, Some(0));
        assert!(rep.inconsistent && !rep.is_suspension);
        assert!(!is_suspension(&f, false).inconsistent);
    }

    #[test]
    fn degree_bound_violation_is_an_error() {
        let f = MHForm::new(2, 1, 1, 0, p("u0_0*u1_0")).unwrap();
        assert_eq!(t_expand(&f), Err(ChowError::DegreeBound { found: 2, bound: 1 }));
    }

    #[test]
    fn taffy_of_worked_line() {
        let l = chow_of_linear(&[pt(&[1, 1, 0]), pt(&[0, 0, 1])]).unwrap();
        let h = taffy(&l).unwrap();
        assert_eq!(h.at(&int(1)), l);
        let end = h.at(&int(0));
        assert!(is_suspension(&end, true).is_suspension);
        let expected = chow_of_linear(&[pt(&[1, 0, 0]), pt(&[0, 0, 1])]).unwrap();
        assert!(end.projectively_eq(&expected));
        assert!(!h.is_constant());
        let susp = chow_of_linear(&[pt(&[1, 0, 0]), pt(&[0, 2, 3])]).unwrap();
        let hs = taffy(&susp).unwrap();
        assert!(hs.is_constant());
        assert_eq!(hs.at(&ratio(7, 3)), susp);
    }

    #[test]
    fn taffy_rejects_improper_forms() {
        let inside = chow_of_linear(&[pt(&[0, 1, 0]), pt(&[0, 0, 1])]).unwrap();
        assert_eq!(taffy(&inside), Err(ChowError::ImproperIntersection(1)));
    }

    #[test]
    fn det_action() {
        let f = chow_of_linear(&[pt(&[1, 2, 0]), pt(&[0, 1, 3])]).unwrap();
        let id = vec![pt(&[1, 0]), pt(&[0, 1])];
        assert!(det_action_check(&f, &id).unwrap());
        let a = vec![vec![ratio(2, 3), int(5)], vec![int(-1), ratio(1, 2)]];
        assert!(det_action_check(&f, &a).unwrap());
        let g = chow_of_points(&[(pt(&[1, 2]), 2), (pt(&[3, -1]), 1)]).unwrap();
        assert!(det_action_check(&g, &[vec![ratio(-4, 7)]]).unwrap());
        assert_eq!(det_action_check(&f, &[pt(&[1, 1]), pt(&[2, 2])]), Err(ChowError::SingularMatrix));
        // A product of forms in separate groups violates the law.
        let bad = MHForm::new(1, 1, 1, 0, p("u0_0*u1_1")).unwrap();
        assert!(!det_action_check(&bad, &a).unwrap());
    }

    #[test]
    fn scaling_is_a_monoid_action() {
        let f = mul_cycles(
            &chow_of_linear(&[pt(&[1, 2, 0]), pt(&[3, 1, 3])]).unwrap(),
            &chow_of_linear(&[pt(&[2, 1, 1]), pt(&[0, 1, 5])]).unwrap(),
        )
        .unwrap();
        let (t, s) = (ratio(3, 2), ratio(-2, 5));
        assert_eq!(f.apply_t(&t).apply_t(&s), f.apply_t(&(&t * &s)));
        assert_eq!(t_expand(&f).unwrap().recombine(&t), *f.apply_t(&t).form());
    }

    #[test]
    fn incidence_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let span = vec![pt(&[1, 2, 0, 1]), pt(&[0, 1, 3, 1])];
        let f = chow_of_linear(&span).unwrap();
        assert_eq!(incidence_check(&f, &span, 50, &mut rng), (50, 50));
    }

    #[test]
    fn json_shape() {
        let f = chow_of_points(&[(pt(&[1, 2]), 1)]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.starts_with(r#"{"N":1,"r":0,"d":1,"m":0,"form":"#));
        let back: MHForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let bad = s.replace(r#""d":1"#, r#""d":2"#);
        assert!(serde_json::from_str::<MHForm>(&bad).is_err());
    }
}
