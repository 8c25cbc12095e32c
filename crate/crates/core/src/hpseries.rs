//! Hilbert–Poincaré series of the R-exterior and R-symmetric algebras, bi-rank
//! detection by rational fitting, and super Schur functions computed from
//! the integer coefficients of N(t) and D(t) alone.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::hecke::HeckeSymmetry;
use crate::heckealg::{rank_specializations, standard_tableaux, AlgError, IdempotentBuilder, Partition};
use crate::report::{Check, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("recurrence not stabilized within {0} terms; increase K")]
    NotStabilized(usize),
    #[error("not a skew-invertible Hecke HP series: {0}")]
    Invalid(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// P₋(t) = N(t)/D(t) with the data it was fitted from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HPSeries {
    pub dims_minus: Vec<usize>,
    /// Empty when only dims_minus was supplied.
    pub dims_plus: Vec<usize>,
    /// Coefficients of N(t), constant term first.
    pub numerator: Vec<i64>,
    /// Coefficients of D(t) = 1 − b₁t + b₂t² − …, constant term first.
    pub denominator: Vec<i64>,
    pub birank: (usize, usize),
}

impl HPSeries {
    /// a_k, zero beyond deg N.
    pub fn a(&self, k: usize) -> i64 {
        self.numerator.get(k).copied().unwrap_or(0)
    }

    /// b_k = (−1)^k [t^k] D(t), zero beyond deg D.
    pub fn b(&self, k: usize) -> i64 {
        let c = self.denominator.get(k).copied().unwrap_or(0);
        if k % 2 == 0 {
            c
        } else {
            -c
        }
    }

    /// {"numerator", "denominator", "birank"}.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "numerator": self.numerator,
            "denominator": self.denominator,
            "birank": [self.birank.0, self.birank.1],
        })
    }

    /// P₊(t)·P₋(−t) = 1 through the common order, as a report.
    pub fn check_plus_minus(&self) -> Check {
        let k = self.dims_plus.len().min(self.dims_minus.len());
        if k == 0 {
            return Check::skip("P+(t) P-(-t) = 1", "no dims_plus");
        }
        let mut bad = None;
        for s in 0..k {
            let v: i64 = (0..=s)
                .map(|i| {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    self.dims_plus[s - i] as i64 * sign * self.dims_minus[i] as i64
                })
                .sum();
            if v != i64::from(s == 0) {
                bad = Some(format!("order {s}: coefficient {v}"));
                break;
            }
        }
        Check::from_bool(format!("P+(t) P-(-t) = 1 through order {}", k - 1), bad.is_none(), || bad.unwrap())
    }
}

/// dim Λ^k₋ = rank E^{(1^k)} and dim Λ^k₊ = rank E^{(k)} for k = 0..K.
pub fn exterior_dims(h: &HeckeSymmetry, k_max: usize, cap: usize, points: &[BigRational]) -> Result<(Vec<usize>, Vec<usize>), AlgError> {
    if k_max > cap {
        return Err(AlgError::Cap { k: k_max, cap });
    }
    let specs = rank_specializations(h, points)?;
    let rank_of = |shape: Partition| -> Result<usize, AlgError> {
        let t = &standard_tableaux(&shape)[0];
        let ranks = specs
            .iter()
            .map(|hs| Ok(IdempotentBuilder::new(hs).idempotent(t)?.rank_generic(&[])?))
            .collect::<Result<Vec<_>, AlgError>>()?;
        if ranks.iter().any(|&r| r != ranks[0]) {
            return Err(AlgError::Linalg(crate::linalg::LinalgError::Genericity(format!("rank of E^{shape}: {ranks:?}"))));
        }
        Ok(ranks[0])
    };
    let dims: Vec<(usize, usize)> = (0..=k_max)
        .into_par_iter()
        .map(|k| {
            if k == 0 {
                return Ok((1, 1));
            }
            let col = Partition::new(vec![1; k])?;
            let row = Partition::new(vec![k])?;
            Ok((rank_of(col)?, rank_of(row)?))
        })
        .collect::<Result<_, AlgError>>()?;
    Ok(dims.into_iter().unzip())
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Unique solution of A x = b, or None when inconsistent or underdetermined.
fn solve_unique(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>, unknowns: usize) -> Option<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..unknowns {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        b.swap(row, p);
        let inv = a[row][col].recip();
        for c in col..unknowns {
            a[row][c] = &a[row][c] * &inv;
        }
        b[row] = &b[row] * &inv;
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..unknowns {
                    let d = &f * &a[row][c];
                    a[r][c] -= d;
                }
                let d = &f * &b[row];
                b[r] -= d;
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() < unknowns || b[row..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    Some(b[..unknowns].to_vec())
}

fn poly_gcd_degree(p: &[i64], q: &[i64]) -> usize {
    fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }
    let mut a = trim(p.iter().map(|&c| rat(c)).collect());
    let mut b = trim(q.iter().map(|&c| rat(c)).collect());
    while !b.is_empty() {
        while a.len() >= b.len() {
            let f = a.last().unwrap() / b.last().unwrap();
            let off = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[off + i] -= &f * c;
            }
            a = trim(a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

fn is_palindrome(v: &[i64]) -> bool {
    v.iter().eq(v.iter().rev())
}

/// Minimal N(t)/D(t) reproducing `dims_minus`, with at least two surplus
/// terms confirming the recurrence.
pub fn fit_series(dims_minus: &[usize]) -> Result<HPSeries, SeriesError> {
    let a: Vec<BigRational> = dims_minus.iter().map(|&d| rat(d as i64)).collect();
    let len = a.len();
    for s in 0..len {
        for nd in 0..=s {
            let nn = s - nd;
            // equations k = nn+1 .. len−1: Σ_{i=0}^{nd} d_i a_{k−i} = 0, d_0 = 1
            let eqs: Vec<usize> = (nn + 1..len).collect();
            if eqs.len() < nd + 2 {
                continue;
            }
            let at = |k: usize, i: usize| if i <= k { a[k - i].clone() } else { BigRational::zero() };
            let mat: Vec<Vec<BigRational>> = eqs.iter().map(|&k| (1..=nd).map(|i| at(k, i)).collect()).collect();
            let rhs: Vec<BigRational> = eqs.iter().map(|&k| -at(k, 0)).collect();
            let Some(sol) = solve_unique(mat, rhs, nd) else { continue };
            let mut d = vec![BigRational::one()];
            d.extend(sol);
            let n: Vec<BigRational> =
                (0..=nn).map(|k| (0..=nd.min(k)).map(|i| &d[i] * &a[k - i]).fold(BigRational::zero(), |x, y| x + y)).collect();
            if n.last().is_some_and(|c| c.is_zero()) || d.last().is_some_and(|c| c.is_zero()) {
                continue;
            }
            return finish(dims_minus, &n, &d);
        }
    }
    Err(SeriesError::NotStabilized(len))
}

fn finish(dims_minus: &[usize], n: &[BigRational], d: &[BigRational]) -> Result<HPSeries, SeriesError> {
    let to_int = |v: &[BigRational], what: &str| -> Result<Vec<i64>, SeriesError> {
        v.iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer().to_i64().ok_or_else(|| SeriesError::Invalid(format!("{what} coefficient too large")))
                } else {
                    Err(SeriesError::Invalid(format!("non-integer {what} coefficient {c}")))
                }
            })
            .collect()
    };
    let numerator = to_int(n, "numerator")?;
    let denominator = to_int(d, "denominator")?;
    let series = HPSeries {
        dims_minus: dims_minus.to_vec(),
        dims_plus: Vec::new(),
        birank: (numerator.len() - 1, denominator.len() - 1),
        numerator,
        denominator,
    };
    if let Some(k) = (0..=series.birank.0).find(|&k| series.a(k) <= 0) {
        return Err(SeriesError::Invalid(format!("a_{k} = {} is not positive", series.a(k))));
    }
    if let Some(k) = (0..=series.birank.1).find(|&k| series.b(k) <= 0) {
        return Err(SeriesError::Invalid(format!("b_{k} = {} is not positive", series.b(k))));
    }
    if !is_palindrome(&series.numerator) {
        return Err(SeriesError::Invalid("N(t) is not reciprocal".into()));
    }
    let bs: Vec<i64> = (0..=series.birank.1).map(|k| series.b(k)).collect();
    if !is_palindrome(&bs) {
        return Err(SeriesError::Invalid("D(-t) is not reciprocal".into()));
    }
    if poly_gcd_degree(&series.numerator, &series.denominator) != 0 {
        return Err(SeriesError::Invalid("N and D have a common factor".into()));
    }
    Ok(series)
}

/// Computes dims through K = `k_start`, extending one order at a time up to
/// `cap` until the fit succeeds; then attaches dims_plus and the bi-rank.
pub fn hp_series(h: &HeckeSymmetry, k_start: usize, cap: usize, points: &[BigRational]) -> Result<HPSeries, SeriesError> {
    let (mut minus, mut plus) = exterior_dims(h, k_start.min(cap), cap, points)?;
    loop {
        match fit_series(&minus) {
            Ok(mut s) => {
                s.dims_plus = plus;
                return Ok(s);
            }
            Err(SeriesError::NotStabilized(_)) if minus.len() <= cap => {
                let k = minus.len();
                let (m, p) = exterior_dims(h, k, cap, points)?;
                minus.push(m[k]);
                plus.push(p[k]);
            }
            Err(e) => return Err(e),
        }
    }
}

/// s_λ(x|y) from the coefficients of N and D via the Jacobi–Trudi determinant.
pub fn super_schur(lambda: &Partition, numerator: &[i64], denominator: &[i64]) -> i64 {
    let series = HPSeries {
        dims_minus: Vec::new(),
        dims_plus: Vec::new(),
        numerator: numerator.to_vec(),
        denominator: denominator.to_vec(),
        birank: (numerator.len().saturating_sub(1), denominator.len().saturating_sub(1)),
    };
    let top = lambda.part(0) + lambda.len();
    let ex: Vec<BigInt> = (0..=top).map(|k| BigInt::from(series.a(k))).collect();
    let ey: Vec<BigInt> = (0..=top).map(|k| BigInt::from(series.b(k))).collect();
    let mut hx = vec![BigInt::one()];
    for k in 1..=top {
        let mut v = BigInt::zero();
        for i in 1..=k {
            let t = &ex[i] * &hx[k - i];
            if i % 2 == 1 {
                v += t;
            } else {
                v -= t;
            }
        }
        hx.push(v);
    }
    let row = |k: i64| -> BigRational {
        if k < 0 {
            return BigRational::zero();
        }
        let k = k as usize;
        BigRational::from_integer((0..=k).map(|i| &hx[i] * &ey[k - i]).sum())
    };
    let l = lambda.len();
    let mut m: Vec<Vec<BigRational>> =
        (0..l).map(|i| (0..l).map(|j| row(lambda.part(i) as i64 - i as i64 + j as i64)).collect()).collect();
    let mut det = BigRational::one();
    for c in 0..l {
        let Some(p) = (c..l).find(|&r| !m[r][c].is_zero()) else { return 0 };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for r in c + 1..l {
            let f = &m[r][c] / &m[c][c];
            for j in c..l {
                let d = &f * &m[c][j];
                m[r][j] -= d;
            }
        }
    }
    let det = det.to_integer();
    debug_assert!(det.abs() < BigInt::from(i64::MAX));
    det.to_i64().expect("determinant fits in i64")
}

/// λ ∈ H(m,n): λ_{m+1} ≤ n.
pub fn hook_test(lambda: &Partition, m: usize, n: usize) -> bool {
    lambda.part(m) <= n
}

/// rank E^λ_a on every tableau against s_λ(x|y) of the fitted series.
pub fn dimension_crosscheck(
    h: &HeckeSymmetry,
    lambda: &Partition,
    series: &HPSeries,
    points: &[BigRational],
) -> Result<Check, AlgError> {
    let expect = super_schur(lambda, &series.numerator, &series.denominator);
    let mut ranks = Vec::new();
    for hs in rank_specializations(h, points)? {
        let mut b = IdempotentBuilder::new(&hs);
        for t in standard_tableaux(lambda) {
            ranks.push(b.idempotent(&t)?.rank_generic(&[])?);
        }
    }
    let ok = ranks.iter().all(|&r| r as i64 == expect);
    Ok(Check::from_bool(format!("rank E^{lambda} = s_{lambda}(x|y)"), ok, || {
        format!("ranks {ranks:?} vs super Schur {expect}")
    }))
}

/// Crosscheck for every λ with 1 ≤ |λ| ≤ k_max.
pub fn dimension_report(h: &HeckeSymmetry, series: &HPSeries, k_max: usize, points: &[BigRational]) -> Result<Report, AlgError> {
    let mut rep = Report::new();
    for k in 1..=k_max {
        for lambda in Partition::all(k) {
            rep.push(dimension_crosscheck(h, &lambda, series, points)?);
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::default_sample_points;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn exterior_dims_examples() {
        let pts = default_sample_points();
        let (minus, plus) = exterior_dims(&HeckeSymmetry::standard(2), 3, 5, &pts).unwrap();
        assert_eq!(minus, vec![1, 2, 1, 0]);
        assert_eq!(plus, vec![1, 2, 3, 4]);
        let (minus, _) = exterior_dims(&HeckeSymmetry::super_flip(1, 1), 3, 5, &pts).unwrap();
        assert_eq!(minus, vec![1, 2, 2, 2]);
        assert!(matches!(exterior_dims(&HeckeSymmetry::super_flip(1, 1), 6, 5, &pts), Err(AlgError::Cap { .. })));
    }

    #[test]
    fn fit_examples() {
        let s = fit_series(&[1, 2, 1, 0, 0, 0]).unwrap();
        assert_eq!((s.numerator.clone(), s.denominator.clone(), s.birank), (vec![1, 2, 1], vec![1], (2, 0)));
        assert_eq!(s.to_json().to_string(), r#"{"birank":[2,0],"denominator":[1],"numerator":[1,2,1]}"#);
        let s = fit_series(&[1, 2, 2, 2, 2, 2]).unwrap();
        assert_eq!((s.numerator, s.denominator, s.birank), (vec![1, 1], vec![1, -1], (1, 1)));
        let s = fit_series(&[1, 3, 4, 4, 4, 4, 4]).unwrap();
        assert_eq!((s.numerator, s.denominator, s.birank), (vec![1, 2, 1], vec![1, -1], (2, 1)));
        let s = fit_series(&[1, 0, 0, 0]).unwrap();
        assert_eq!(s.birank, (0, 0));
    }

    #[test]
    fn fit_rejections() {
        assert!(matches!(fit_series(&[1, 2, 1]), Err(SeriesError::NotStabilized(_))));
        // 1 + 3t + 2t²: not reciprocal
        assert!(matches!(fit_series(&[1, 3, 2, 0, 0]), Err(SeriesError::Invalid(_))));
        // 1/(1 − t − t²) has b₂ = −1
        assert!(matches!(fit_series(&[1, 1, 2, 3, 5, 8, 13]), Err(SeriesError::Invalid(_))));
        assert!(fit_series(&[1, 1, 1, 1, 1]).is_ok());
    }

    #[test]
    fn super_schur_examples() {
        assert_eq!(super_schur(&part("1"), &[1, 2, 1], &[1]), 2);
        assert_eq!(super_schur(&part("2,2"), &[1, 1], &[1, -1]), 0);
        assert_eq!(super_schur(&part("2"), &[1, 1], &[1, -1]), 2);
        assert_eq!(super_schur(&part("2,1"), &[1, 3, 3, 1], &[1]), 8);
        assert_eq!(super_schur(&part("1,1,1"), &[1, 2, 1], &[1]), 0);
    }

    #[test]
    fn hook_examples() {
        assert!(hook_test(&part("3,3"), 2, 0));
        assert!(!hook_test(&part("1,1,1"), 2, 0));
        assert!(!hook_test(&part("5,2,1,1"), 1, 1));
        assert!(hook_test(&part("5,1,1,1"), 1, 1));
    }

    fn classical(m: usize, n: usize) -> (Vec<i64>, Vec<i64>) {
        let binom = |a: usize, k: usize| -> i64 { (0..k).fold(1i64, |acc, i| acc * (a - i) as i64 / (i as i64 + 1)) };
        let num = (0..=m).map(|k| binom(m, k)).collect();
        let den = (0..=n).map(|k| if k % 2 == 0 { binom(n, k) } else { -binom(n, k) }).collect();
        (num, den)
    }

    #[test]
    fn super_schur_vanishes_off_hook() {
        for (m, n) in [(1, 1), (2, 0), (2, 1), (0, 2)] {
            let (num, den) = classical(m, n);
            for k in 1..=6 {
                for lambda in Partition::all(k) {
                    let s = super_schur(&lambda, &num, &den);
                    assert_eq!(s == 0, !hook_test(&lambda, m, n), "{lambda} on ({m}|{n}): {s}");
                    assert!(s >= 0);
                }
            }
        }
    }

    #[test]
    fn super_schur_conjugate_duality() {
        for (m, n) in [(1, 1), (2, 0), (2, 1), (0, 2), (3, 1)] {
            let (num, den) = classical(m, n);
            let (num2, den2) = classical(n, m);
            for k in 1..=4 {
                for lambda in Partition::all(k) {
                    assert_eq!(super_schur(&lambda, &num, &den), super_schur(&lambda.conjugate(), &num2, &den2));
                }
            }
        }
    }

    #[test]
    fn crosscheck_examples() {
        let pts = default_sample_points();
        let s2 = fit_series(&[1, 2, 1, 0, 0, 0]).unwrap();
        assert!(dimension_crosscheck(&HeckeSymmetry::standard(2), &part("2,1"), &s2, &pts).unwrap().passed());
        let s11 = fit_series(&[1, 2, 2, 2, 2, 2]).unwrap();
        assert!(dimension_crosscheck(&HeckeSymmetry::super_flip(1, 1), &part("2,2"), &s11, &pts).unwrap().passed());
        let s3 = fit_series(&[1, 3, 3, 1, 0, 0, 0]).unwrap();
        assert_eq!(super_schur(&part("2,1"), &s3.numerator, &s3.denominator), 8);
        assert!(dimension_crosscheck(&HeckeSymmetry::standard(3), &part("2,1"), &s3, &pts).unwrap().passed());
    }

    #[test]
    fn hp_series_standard_two() {
        let s = hp_series(&HeckeSymmetry::standard(2), 6, 7, &default_sample_points()).unwrap();
        assert_eq!(s.birank, (2, 0));
        assert_eq!(s.dims_plus, vec![1, 2, 3, 4, 5, 6, 7]);
        assert!(s.check_plus_minus().passed());
    }
}
