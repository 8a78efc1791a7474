//! Numerical run of the fan map on 0-cycles.
//!
//! A point `q` of `P^(n+1)` sits in the hyperplane `{x0 = 0}` of `P^(n+2)`.
//! The line joining it to `(1:0:…:0)` is `(s : q)`; it meets the scaled
//! divisor `f_t` where the monic polynomial `f_t(s, q)` vanishes. Each of the
//! `d` intersection points is sent to `P^(n+1)` by the projection from
//! `(1:1:0:…:0)`, `(x0 : … : x_{n+2}) ↦ (x1 - x0 : x2 : … : x_{n+2})`.
//! As `t → 0` the roots shrink to `0` and the image tends to `d` copies of `q`.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::divisors::{avoids_marked_point, marked_point_curve, scale_divisor, Divisor, DivisorError};
use crate::parse::parse_poly;
use crate::rational::{int, ratio, to_f64, Rational};
use crate::sturm::{count_distinct_roots_total, isolate_roots_bisection};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("point {0} is the zero vector")]
    ZeroPoint(usize),
    #[error("point {index} has {got} coordinates, the divisor needs {expected}")]
    DimensionMismatch { index: usize, expected: usize, got: usize },
    #[error("multiplicities must be positive")]
    ZeroMultiplicity,
    #[error("t must lie in (0, 1]")]
    BadT,
    #[error("line through point {index} meets the divisor in {count} distinct real points, expected {d}")]
    FiberCount { index: usize, count: usize, d: u32 },
    #[error("f_t(1, 1, 0, …, 0) vanishes for some t in (0, 1]")]
    MarkedPoint,
    #[error("a fiber point is the projection center")]
    CenterHit,
    #[error(transparent)]
    Divisor(#[from] DivisorError),
}

/// A 0-cycle with rational points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroCycle {
    pub points: Vec<CyclePoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclePoint {
    #[serde(with = "crate::rational::serde_str_vec")]
    pub coords: Vec<Rational>,
    pub mult: u32,
}

impl ZeroCycle {
    pub fn new(points: Vec<(Vec<Rational>, u32)>) -> Result<Self, FanError> {
        let n = points.first().map_or(0, |(p, _)| p.len());
        for (i, (p, m)) in points.iter().enumerate() {
            if p.len() != n {
                return Err(FanError::DimensionMismatch { index: i, expected: n, got: p.len() });
            }
            if p.iter().all(Zero::is_zero) {
                return Err(FanError::ZeroPoint(i));
            }
            if *m == 0 {
                return Err(FanError::ZeroMultiplicity);
            }
        }
        Ok(Self { points: points.into_iter().map(|(coords, mult)| CyclePoint { coords, mult }).collect() })
    }

    pub fn degree(&self) -> u32 {
        self.points.iter().map(|p| p.mult).sum()
    }
}

/// A float point with multiplicity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FloatPoint {
    pub coords: Vec<f64>,
    pub mult: u32,
}

/// The exact part of one line: its Sturm count and the isolated roots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberCertificate {
    pub sturm_count: usize,
    /// `(lo, hi)` of each root interval, as rational strings.
    pub roots: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FanResult {
    pub t: String,
    pub output: Vec<FloatPoint>,
    pub degree: u32,
    pub residual: f64,
    pub fibers: Vec<FiberCertificate>,
}

fn root_width() -> Rational {
    Rational::new(1.into(), 1_000_000_000_000i64.into())
}

/// Unit vector with first nonzero coordinate positive.
pub fn normalize(p: &[f64]) -> Vec<f64> {
    let norm = p.iter().map(|c| c * c).sum::<f64>().sqrt();
    let sgn = p.iter().find(|c| **c != 0.0).map_or(1.0, |c| c.signum());
    p.iter().map(|c| sgn * c / norm).collect()
}

/// Distance between projective points after [`normalize`].
pub fn projective_distance(a: &[f64], b: &[f64]) -> f64 {
    let (a, b) = (normalize(a), normalize(b));
    let plus: f64 = a.iter().zip(&b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let minus: f64 = a.iter().zip(&b).map(|(x, y)| (x + y).powi(2)).sum::<f64>().sqrt();
    plus.min(minus)
}

/// Largest distance in a greedy minimal-distance matching of two point
/// lists with multiplicity; infinite if the degrees differ.
pub fn matching_residual(a: &[FloatPoint], b: &[FloatPoint]) -> f64 {
    let expand = |ps: &[FloatPoint]| -> Vec<Vec<f64>> {
        ps.iter().flat_map(|p| std::iter::repeat(p.coords.clone()).take(p.mult as usize)).collect()
    };
    let (a, b) = (expand(a), expand(b));
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, p) in a.iter().enumerate() {
        for (j, q) in b.iter().enumerate() {
            pairs.push((projective_distance(p, q), i, j));
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let (mut used_a, mut used_b) = (vec![false; a.len()], vec![false; b.len()]);
    let mut worst: f64 = 0.0;
    for (dist, i, j) in pairs {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            worst = worst.max(dist);
        }
    }
    worst
}

fn float_cycle(z: &ZeroCycle, times: u32) -> Vec<FloatPoint> {
    z.points
        .iter()
        .map(|p| FloatPoint { coords: p.coords.iter().map(to_f64).collect(), mult: p.mult * times })
        .collect()
}

/// `Ψ_{tD}(Z)`: intersect every line `(s : q)` with `f_t`, certify `d`
/// distinct real roots by Sturm, then project the roots from `(1:1:0:…:0)`.
pub fn psi_demo(z: &ZeroCycle, div: &Divisor, t: &Rational) -> Result<FanResult, FanError> {
    if !(t > &Rational::zero() && t <= &Rational::one()) {
        return Err(FanError::BadT);
    }
    if !avoids_marked_point(&marked_point_curve(div)).0 {
        return Err(FanError::MarkedPoint);
    }
    let ft = scale_divisor(div, t)?;
    let d = div.degree();
    for (i, p) in z.points.iter().enumerate() {
        if p.coords.len() != div.n() {
            return Err(FanError::DimensionMismatch { index: i, expected: div.n(), got: p.coords.len() });
        }
    }
    let fibers: Vec<Result<(Vec<FloatPoint>, FiberCertificate), FanError>> = z
        .points
        .par_iter()
        .enumerate()
        .map(|(index, p)| fiber(&ft, index, p, d))
        .collect();
    let mut output = Vec::new();
    let mut certs = Vec::new();
    for f in fibers {
        let (pts, cert) = f?;
        output.extend(pts);
        certs.push(cert);
    }
    let degree = output.iter().map(|p| p.mult).sum();
    let residual = matching_residual(&output, &float_cycle(z, d));
    Ok(FanResult { t: t.to_string(), output, degree, residual, fibers: certs })
}

fn fiber(ft: &Divisor, index: usize, p: &CyclePoint, d: u32) -> Result<(Vec<FloatPoint>, FiberCertificate), FanError> {
    let g = ft.restrict(&p.coords);
    let count = count_distinct_roots_total(&g).unwrap_or(0);
    if count != d as usize {
        return Err(FanError::FiberCount { index, count, d });
    }
    let roots = isolate_roots_bisection(&g, &root_width()).map_err(|e| FanError::Divisor(DivisorError::Other(e.to_string())))?;
    let q: Vec<f64> = p.coords.iter().map(to_f64).collect();
    // (s : q) is the projection center iff q = (q0 : 0 : … : 0) and s = q0.
    if p.coords[1..].iter().all(Zero::is_zero) && g.eval(&p.coords[0]).is_zero() {
        return Err(FanError::CenterHit);
    }
    let mut pts = Vec::new();
    for r in &roots {
        let s = to_f64(&r.midpoint());
        let mut image = q.clone();
        image[0] -= s;
        pts.push(FloatPoint { coords: image, mult: p.mult });
    }
    let cert = FiberCertificate {
        sturm_count: count,
        roots: roots.iter().map(|r| (r.lo.to_string(), r.hi.to_string())).collect(),
    };
    Ok((pts, cert))
}

/// Residuals of [`psi_demo`] against `d·Z` along a sequence of `t`.
pub fn limit_check(z: &ZeroCycle, div: &Divisor, ts: &[Rational]) -> Result<Vec<f64>, FanError> {
    ts.iter().map(|t| psi_demo(z, div, t).map(|r| r.residual)).collect()
}

/// Least-squares slope of `log residual` against `log t`.
pub fn log_log_slope(ts: &[Rational], residuals: &[f64]) -> f64 {
    let xs: Vec<f64> = ts.iter().map(|t| to_f64(t).ln()).collect();
    let ys: Vec<f64> = residuals.iter().map(|r| r.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

/// The default configuration: `D = x0^2 - (x1^2 + x2^2 + x3^2)/9` in `P^3`
/// and `Z = (1:2:1) + (2:-1:3)` in `P^2`.
pub fn default_demo() -> (ZeroCycle, Divisor) {
    let f = parse_poly("x0^2 - 1/9*x1^2 - 1/9*x2^2 - 1/9*x3^2").expect("valid literal");
    let div = Divisor::new(3, f).expect("homogeneous");
    let z = ZeroCycle::new(vec![(vec![int(1), int(2), int(1)], 1), (vec![int(2), int(-1), int(3)], 1)])
        .expect("nonzero points");
    (z, div)
}

/// `t = 1/10, 1/100, 1/1000`.
pub fn default_ts() -> Vec<Rational> {
    vec![ratio(1, 10), ratio(1, 100), ratio(1, 1000)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisors::{in_div_double_prime, product_family, Verdict};

    #[test]
    fn single_point_gives_symmetric_pair() {
        let (_, div) = default_demo();
        let z = ZeroCycle::new(vec![(vec![int(0), int(0), int(1)], 1)]).unwrap();
        let r = psi_demo(&z, &div, &int(1)).unwrap();
        assert_eq!(r.degree, 2);
        // f(s, 0, 0, 1) = s^2 - 1/9: roots ±1/3, images (∓1/3 : 0 : 1).
        let mut firsts: Vec<f64> = r.output.iter().map(|p| p.coords[0]).collect();
        firsts.sort_by(f64::total_cmp);
        assert!((firsts[0] + 1.0 / 3.0).abs() < 1e-11 && (firsts[1] - 1.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn default_demo_converges() {
        let (z, div) = default_demo();
        assert_eq!(in_div_double_prime(&div, Some(500), false).unwrap().verdict, Verdict::EvidenceOnly);
        let ts = default_ts();
        let res = limit_check(&z, &div, &ts).unwrap();
        assert!(res.windows(2).all(|w| w[1] < w[0]));
        assert!(res[2] < 1e-2);
        let slope = log_log_slope(&ts, &res);
        assert!((slope - 1.0).abs() < 0.3, "slope {slope}");
    }

    #[test]
    fn degree_is_conserved() {
        let (z, div) = default_demo();
        for t in [ratio(1, 2), int(1), ratio(1, 7)] {
            assert_eq!(psi_demo(&z, &div, &t).unwrap().degree, 2 * z.degree());
        }
    }

    #[test]
    fn rejections() {
        let (z, _) = default_demo();
        let (g, _) = product_family(3, 1).unwrap();
        assert_eq!(psi_demo(&z, &g, &int(1)), Err(FanError::MarkedPoint));
        let bad = Divisor::new(3, parse_poly("x0^2 + x1^2 + x2^2 + x3^2").unwrap()).unwrap();
        assert!(matches!(psi_demo(&z, &bad, &int(1)), Err(FanError::FiberCount { count: 0, .. })));
        let (_, div) = default_demo();
        assert_eq!(psi_demo(&z, &div, &int(0)), Err(FanError::BadT));
    }

    #[test]
    fn distance_is_projective() {
        assert!(projective_distance(&[1.0, 2.0], &[-2.0, -4.0]) < 1e-15);
        assert!(projective_distance(&[1.0, 0.0], &[0.0, 1.0]) > 1.0);
    }
}
