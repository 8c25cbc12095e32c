//! Young combinatorics, Jucys–Murphy elements and the primitive idempotents
//! E^λ_a of H_k(q) realized on V^{⊗k}.
//!
//! E^λ_a is built by spectral projection: the prefix idempotent (boxes
//! 1..k−1) tensored with I, times Π (J_k − c)/(j_k − c) over the contents c
//! of the other addable boxes of the prefix shape. For an involutive symmetry
//! (q = 1) the multiplicative contents collapse to 1, so the additive
//! Jucys–Murphy elements X_{p+1} = R_p X_p R_p + R_p with integer contents
//! c − r are used instead.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::hecke::{trace_b_formula, HeckeError, HeckeSymmetry};
use crate::linalg::{LinalgError, QMatrix};
use crate::report::{Check, Report};
use crate::scalar::{qint, QScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("invalid tableau: {0}")]
    Tableau(String),
    #[error("non-generic q: contents {0} and {1} coincide")]
    NonGeneric(String, String),
    #[error("tensor power {k} exceeds the cap {cap}")]
    Cap { k: usize, cap: usize },
    #[error("rank of E^{shape} depends on the tableau: {ranks:?}")]
    RankDependsOnTableau { shape: String, ranks: Vec<usize> },
    #[error("Σ d_λ dim V_λ = {got} differs from N^k = {want}")]
    DecompositionSum { got: usize, want: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
}

/// Weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, AlgError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(AlgError::Partition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// λ_i with 0-based i, zero beyond the last part.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// All partitions of k in decreasing lexicographic order.
    pub fn all(k: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(k, k, &mut Vec::new(), &mut out);
        out
    }

    pub fn conjugate(&self) -> Partition {
        Partition((0..self.part(0)).map(|c| self.0.iter().filter(|&&p| p > c).count()).collect())
    }

    /// μ ⊆ self, box-wise.
    pub fn contains(&self, mu: &Partition) -> bool {
        (0..mu.len()).all(|i| mu.part(i) <= self.part(i))
    }

    /// Cells (row, col), 0-based, whose addition keeps a partition.
    pub fn addable_cells(&self) -> Vec<(usize, usize)> {
        (0..=self.len()).filter(|&r| r == 0 || self.part(r) < self.part(r - 1)).map(|r| (r, self.part(r))).collect()
    }

    pub fn removable_cells(&self) -> Vec<(usize, usize)> {
        (0..self.len()).filter(|&r| self.part(r) > self.part(r + 1)).map(|r| (r, self.part(r) - 1)).collect()
    }

    /// Number of standard tableaux, by the hook length formula.
    pub fn num_standard_tableaux(&self) -> usize {
        let conj = self.conjugate();
        let mut num: u128 = (1..=self.weight() as u128).product();
        let mut den: u128 = 1;
        for (r, &len) in self.0.iter().enumerate() {
            for c in 0..len {
                den *= (len - c + conj.part(c) - r - 1) as u128;
            }
        }
        num /= den;
        num as usize
    }

    /// ((n+1)^{m+1}).
    pub fn lambda_mn(m: usize, n: usize) -> Partition {
        Partition(vec![n + 1; m + 1])
    }

    /// ((n+1)^m, n).
    pub fn lambda_minus_mn(m: usize, n: usize) -> Partition {
        let mut v = vec![n + 1; m];
        if n > 0 {
            v.push(n);
        }
        Partition(v)
    }

    pub fn rectangle(rows: usize, cols: usize) -> Partition {
        if cols == 0 {
            return Partition::empty();
        }
        Partition(vec![cols; rows])
    }

    fn without_cell(&self, row: usize) -> Partition {
        let mut v = self.0.clone();
        v[row] -= 1;
        Partition::new(v).expect("removable cell")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Partition {
    type Err = AlgError;
    fn from_str(s: &str) -> Result<Self, AlgError> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| AlgError::Partition(format!("bad part {x:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// Standard Young tableau stored as rows of entries 1..k.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self, AlgError> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        let k = shape.weight();
        let mut seen = vec![false; k + 1];
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v == 0 || v > k || seen[v] {
                    return Err(AlgError::Tableau(format!("entries must be a permutation of 1..{k}")));
                }
                seen[v] = true;
                if (c > 0 && row[c - 1] >= v) || (r > 0 && rows[r - 1][c] >= v) {
                    return Err(AlgError::Tableau(format!("entry {v} breaks monotonicity")));
                }
            }
        }
        Ok(StandardTableau { rows })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(Vec::len).collect())
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// 0-based (row, col) of entry p.
    pub fn position(&self, p: usize) -> (usize, usize) {
        for (r, row) in self.rows.iter().enumerate() {
            if let Some(c) = row.iter().position(|&v| v == p) {
                return (r, c);
            }
        }
        panic!("entry {p} not in tableau")
    }

    /// The tableau of entries 1..k−1.
    pub fn prefix(&self) -> StandardTableau {
        let k = self.size();
        let mut rows = self.rows.clone();
        for row in rows.iter_mut() {
            row.retain(|&v| v != k);
        }
        rows.retain(|r| !r.is_empty());
        StandardTableau { rows }
    }

    /// Content exponents c_p − r_p for p = 1..k.
    pub fn content_exponents(&self) -> Vec<i64> {
        (1..=self.size())
            .map(|p| {
                let (r, c) = self.position(p);
                c as i64 - r as i64
            })
            .collect()
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows.iter().map(|r| format!("({})", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))).collect();
        write!(f, "{}", rows.join(""))
    }
}

/// All standard tableaux of shape λ, sorted lexicographically by rows.
pub fn standard_tableaux(lambda: &Partition) -> Vec<StandardTableau> {
    fn rec(shape: &Partition) -> Vec<Vec<Vec<usize>>> {
        let k = shape.weight();
        if k == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for (r, _) in shape.removable_cells() {
            for mut t in rec(&shape.without_cell(r)) {
                if r == t.len() {
                    t.push(Vec::new());
                }
                t[r].push(k);
                out.push(t);
            }
        }
        out
    }
    let mut v: Vec<StandardTableau> = rec(lambda).into_iter().map(|rows| StandardTableau { rows }).collect();
    v.sort();
    v
}

/// (j₁,…,j_k) with j_p = q^{2(c_p − r_p)}.
pub fn content_vector(t: &StandardTableau) -> Vec<QScalar> {
    t.content_exponents().into_iter().map(|d| QScalar::q_pow(2 * d as i32)).collect()
}

/// J₁ = I, J_{p+1} = R_p J_p R_p on V^{⊗k}.
pub fn jm_images(h: &HeckeSymmetry, k: usize) -> Vec<QMatrix> {
    let n = h.dim();
    let mut out = vec![QMatrix::identity_legs(n, k)];
    for p in 1..k {
        let rp = h.r_at(p, k);
        let next = rp.mul(&out[p - 1]).mul(&rp);
        out.push(next);
    }
    out
}

/// Cached construction of idempotents for one symmetry.
pub struct IdempotentBuilder<'a> {
    h: &'a HeckeSymmetry,
    /// top[p−1]: the spectral Jucys–Murphy element J_p (or X_p) on V^{⊗p}
    top: Vec<QMatrix>,
    cache: HashMap<StandardTableau, QMatrix>,
}

impl<'a> IdempotentBuilder<'a> {
    pub fn new(h: &'a HeckeSymmetry) -> Self {
        IdempotentBuilder { h, top: Vec::new(), cache: HashMap::new() }
    }

    /// Eigenvalue of the spectral element for content exponent d.
    pub fn eigenvalue(&self, d: i64) -> QScalar {
        if self.h.is_involutive() {
            QScalar::from_int(d)
        } else {
            self.h.q_pow(2 * d as i32)
        }
    }

    fn top_jm(&mut self, p: usize) -> QMatrix {
        let n = self.h.dim();
        while self.top.len() < p {
            let k = self.top.len() + 1;
            let next = if k == 1 {
                if self.h.is_involutive() {
                    QMatrix::zeros(n, n).with_square_legs(vec![n])
                } else {
                    QMatrix::identity_legs(n, 1)
                }
            } else {
                let prev = self.top[k - 2].kron(&QMatrix::identity(n)).with_square_legs(vec![n; k]);
                let r = self.h.r_at(k - 1, k);
                let conj = r.mul(&prev).mul(&r);
                if self.h.is_involutive() {
                    conj.add(&r)
                } else {
                    conj
                }
            };
            self.top.push(next);
        }
        self.top[p - 1].clone()
    }

    pub fn idempotent(&mut self, t: &StandardTableau) -> Result<QMatrix, AlgError> {
        if let Some(e) = self.cache.get(t) {
            return Ok(e.clone());
        }
        let n = self.h.dim();
        let k = t.size();
        let e = if k == 0 {
            QMatrix::identity(1)
        } else if k == 1 {
            QMatrix::identity_legs(n, 1)
        } else {
            let pre = t.prefix();
            let mut e = self.idempotent(&pre)?.kron(&QMatrix::identity(n)).with_square_legs(vec![n; k]);
            let (tr, tc) = t.position(k);
            let target = self.eigenvalue(tc as i64 - tr as i64);
            let jk = self.top_jm(k);
            for (r, c) in pre.shape().addable_cells() {
                if (r, c) == (tr, tc) {
                    continue;
                }
                let other = self.eigenvalue(c as i64 - r as i64);
                let gap = &target - &other;
                if gap.is_zero() {
                    return Err(AlgError::NonGeneric(target.to_string(), other.to_string()));
                }
                let factor = jk.add_scalar(&-&other).scale(&gap.recip().expect("nonzero"));
                e = e.mul(&factor);
            }
            e
        };
        self.cache.insert(t.clone(), e.clone());
        Ok(e)
    }
}

/// E^λ_a together with its labels.
#[derive(Debug, Clone)]
pub struct IdempotentImage {
    pub shape: Partition,
    pub index: usize,
    pub k: usize,
    pub matrix: QMatrix,
}

/// E for tableau `t`; `index` is its 1-based position among the tableaux of its shape.
pub fn idempotent_image(h: &HeckeSymmetry, t: &StandardTableau) -> Result<IdempotentImage, AlgError> {
    let shape = t.shape();
    let index = standard_tableaux(&shape).iter().position(|s| s == t).expect("standard") + 1;
    let matrix = IdempotentBuilder::new(h).idempotent(t)?;
    Ok(IdempotentImage { shape, index, k: t.size(), matrix })
}

/// Copies of `h` at which generic ranks are computed: the symmetry itself
/// when q is fixed, otherwise one specialization per sample point.
pub fn rank_specializations(h: &HeckeSymmetry, points: &[BigRational]) -> Result<Vec<HeckeSymmetry>, AlgError> {
    if h.q().is_constant() {
        return Ok(vec![h.clone()]);
    }
    points.iter().map(|p| h.specialize(p).map_err(AlgError::from)).collect()
}

/// Rank of E^λ_a for every tableau of every shape of weight k, agreeing
/// across the sample points.
pub fn idempotent_ranks(
    h: &HeckeSymmetry,
    k: usize,
    points: &[BigRational],
) -> Result<BTreeMap<Partition, Vec<usize>>, AlgError> {
    let mut results: Vec<BTreeMap<Partition, Vec<usize>>> = Vec::new();
    for hs in rank_specializations(h, points)? {
        let per_shape: Vec<(Partition, Vec<usize>)> = Partition::all(k)
            .into_par_iter()
            .map(|lambda| {
                let mut b = IdempotentBuilder::new(&hs);
                let ranks = standard_tableaux(&lambda)
                    .iter()
                    .map(|t| Ok(b.idempotent(t)?.rank_generic(&[])?))
                    .collect::<Result<Vec<_>, AlgError>>()?;
                Ok((lambda, ranks))
            })
            .collect::<Result<_, AlgError>>()?;
        results.push(per_shape.into_iter().collect());
    }
    let first = results[0].clone();
    if results.iter().any(|r| r != &first) {
        return Err(AlgError::Linalg(LinalgError::Genericity(format!("idempotent ranks at k = {k}"))));
    }
    Ok(first)
}

/// Largest tensor power built by default: (m+1)(n+1)+1 when the bi-rank is
/// known, else 5.
pub fn default_cap(h: &HeckeSymmetry) -> usize {
    h.birank().map_or(5, |(m, n)| (m + 1) * (n + 1) + 1)
}

/// λ ↦ (d_λ, dim V_λ) for all λ ⊢ k.
pub fn young_decomposition(
    h: &HeckeSymmetry,
    k: usize,
    points: &[BigRational],
) -> Result<BTreeMap<Partition, (usize, usize)>, AlgError> {
    let cap = default_cap(h);
    if k > cap {
        return Err(AlgError::Cap { k, cap });
    }
    let ranks = idempotent_ranks(h, k, points)?;
    let mut out = BTreeMap::new();
    let mut total = 0;
    for (lambda, rs) in ranks {
        if rs.iter().any(|&r| r != rs[0]) {
            return Err(AlgError::RankDependsOnTableau { shape: lambda.to_string(), ranks: rs });
        }
        total += rs.len() * rs[0];
        out.insert(lambda, (rs.len(), rs[0]));
    }
    let want = h.dim().pow(k as u32);
    if total != want {
        return Err(AlgError::DecompositionSum { got: total, want });
    }
    Ok(out)
}

/// Completeness, orthogonality and Jucys–Murphy eigen-relations for all
/// idempotents on V^{⊗k}, as exact matrix identities.
pub fn verify_completeness(h: &HeckeSymmetry, k: usize) -> Result<Report, AlgError> {
    let mut rep = Report::new();
    let mut b = IdempotentBuilder::new(h);
    let mut all = Vec::new();
    for lambda in Partition::all(k) {
        for t in standard_tableaux(&lambda) {
            let e = b.idempotent(&t)?;
            all.push((t, e));
        }
    }
    let n = h.dim();
    let mut sum = QMatrix::zeros(n.pow(k as u32), n.pow(k as u32));
    for (_, e) in &all {
        sum = sum.add(e);
    }
    rep.push(Check::matrices(format!("k={k}: sum of E = I"), &sum, &QMatrix::identity(sum.rows())));
    let mut bad = Vec::new();
    for (i, (ti, ei)) in all.iter().enumerate() {
        for (j, (tj, ej)) in all.iter().enumerate() {
            let prod = ei.mul(ej);
            let ok = if i == j { &prod == ei } else { prod.is_zero() };
            if !ok {
                bad.push(format!("{ti}*{tj}"));
            }
        }
    }
    rep.push(Check::from_bool(format!("k={k}: E_a E_b = delta E_a"), bad.is_empty(), || bad.join(", ")));
    let jms = jm_images(h, k);
    let mut bad = Vec::new();
    for (t, e) in &all {
        let js = content_vector(t);
        for (p, j) in jms.iter().enumerate() {
            let lhs = j.mul(e);
            if lhs != e.scale(&h.at_q(&js[p])) || lhs != e.mul(j) {
                bad.push(format!("{t} at J_{}", p + 1));
            }
        }
    }
    rep.push(Check::from_bool(format!("k={k}: J_p E = j_p E = E J_p"), bad.is_empty(), || bad.join(", ")));
    Ok(rep)
}

/// Kernel properties: E ≠ 0 below (m+1)(n+1), and for larger k
/// E^ν_a = 0 exactly when λ_{m,n} ⊆ ν.
pub fn kernel_property_check(
    h: &HeckeSymmetry,
    birank: (usize, usize),
    k_max: usize,
    points: &[BigRational],
) -> Result<Report, AlgError> {
    let (m, n) = birank;
    let rect = Partition::lambda_mn(m, n);
    let mut rep = Report::new();
    for k in 1..=k_max {
        let ranks = idempotent_ranks(h, k, points)?;
        let mut bad = Vec::new();
        for (nu, rs) in &ranks {
            let expect_zero = nu.contains(&rect);
            for (a, &r) in rs.iter().enumerate() {
                if (r == 0) != expect_zero {
                    bad.push(format!("{nu} tableau {} rank {r}", a + 1));
                }
            }
        }
        rep.push(Check::from_bool(format!("k={k}: E^nu = 0 iff lambda_mn in nu"), bad.is_empty(), || bad.join(", ")));
    }
    Ok(rep)
}

/// Σ_k j_k for λ⁻_{m,n} from the closed form q^{n−m}(n+1)_q(m+1)_q − q^{2(n−m)}.
pub fn content_sum_formula(m: usize, n: usize) -> QScalar {
    let d = n as i32 - m as i32;
    QScalar::q_pow(d) * qint(n as i64 + 1) * qint(m as i64 + 1) - QScalar::q_pow(2 * d)
}

/// α and β of the linear equation α·Tr C + β = 0, from the contents.
pub fn alpha_beta(js: &[QScalar], m: usize, n: usize) -> (QScalar, QScalar) {
    let w = QScalar::omega();
    let w2 = &w * &w;
    let w3 = &w2 * &w;
    let s1 = js.iter().fold(QScalar::zero(), |a, j| a + j);
    let s2 = js.iter().fold(QScalar::zero(), |a, j| a + j * j);
    let a_top = QScalar::q_pow(2 * (n as i32 + 1));
    let a_bot = QScalar::q_pow(-2 * (m as i32 + 1));
    let alpha = QScalar::one() + QScalar::q_pow(2 * (n as i32 - m as i32)) - &a_top - &a_bot + &w2 * &s1;
    let half = QScalar::from_rational(crate::scalar::rat(1, 2));
    let beta = &w * &(QScalar::from_int(2) + &w2 * &half) * &s2 + &w3 * &half * &s1 * &s1 - &w * &(a_top + a_bot) * &s1;
    (alpha, beta)
}

/// Weighted-trace recursion for the tableau `t` of size p−1.
/// When `birank` is given and t has shape λ⁻_{m,n}, also re-derives Tr C.
pub fn trace_recursion_check(
    h: &HeckeSymmetry,
    t: &StandardTableau,
    birank: Option<(usize, usize)>,
) -> Result<Report, AlgError> {
    let n = h.dim();
    let p = t.size() + 1;
    let mut rep = Report::new();
    let e = IdempotentBuilder::new(h).idempotent(t)?;
    let jp = jm_images(h, p).pop().expect("p >= 1");
    let c_last = QMatrix::identity_legs(n, p - 1).kron(h.c()).with_square_legs(vec![n; p]);
    let wtr = |x: &QMatrix| c_last.mul(x).partial_trace(&[p - 1]);
    let tr_c = h.c().trace();
    let w = h.omega();
    let js: Vec<QScalar> = content_vector(t).iter().map(|j| h.at_q(j)).collect();
    let s1 = js.iter().fold(QScalar::zero(), |a, j| a + j);
    let s2 = js.iter().fold(QScalar::zero(), |a, j| a + j * j);
    let mut nested = QScalar::zero();
    let mut run = QScalar::zero();
    for j in &js {
        run = &run + j;
        nested = &nested + &(j * &run);
    }
    let lhs1 = e.mul(&wtr(&jp)?);
    let rhs1 = e.scale(&(&w * &s1 + &tr_c));
    rep.push(Check::matrices("E tr(J_p) = E (omega sum j + Tr C)", &lhs1, &rhs1));
    let lhs2 = e.mul(&wtr(&jp.mul(&jp))?);
    let w2 = &w * &w;
    let coeff = QScalar::from_int(2) * &w * &s2 + &w2 * &w * &nested + (QScalar::one() + &w2 * &s1) * &tr_c;
    rep.push(Check::matrices("E tr(J_p^2) = E (2 omega sum j^2 + ...)", &lhs2, &e.scale(&coeff)));

    if let Some((m, nn)) = birank {
        if t.shape() == Partition::lambda_minus_mn(m, nn) && p == (m + 1) * (nn + 1) {
            let sym = content_vector(t);
            let sum: QScalar = sym.iter().fold(QScalar::zero(), |a, j| a + j);
            rep.push(Check::scalars("content sum", &sum, &content_sum_formula(m, nn)));
            let (alpha, beta) = alpha_beta(&sym, m, nn);
            let om = QScalar::omega();
            let d = nn as i32 - m as i32;
            rep.push(Check::scalars("alpha = -omega^2 q^(2(n-m))", &alpha, &-(&om * &om * QScalar::q_pow(2 * d))));
            let beta_closed = &om * &om * QScalar::q_pow(3 * d) * qint(m as i64 - nn as i64);
            rep.push(Check::scalars("beta = omega^2 q^(3(n-m)) (m-n)_q", &beta, &beta_closed));
            let recovered = h.at_q(&(-&beta / &alpha));
            rep.push(Check::scalars("Tr C = -beta/alpha", &tr_c, &recovered));
            rep.push(Check::scalars("Tr C = q^(n-m)(m-n)_q", &tr_c, &h.at_q(&trace_b_formula(m, nn))));
            let a_top = h.at_q(&QScalar::q_pow(2 * (nn as i32 + 1)));
            let a_bot = h.at_q(&QScalar::q_pow(-2 * (m as i32 + 1)));
            let ext = e.kron(&QMatrix::identity(n));
            let kernel = ext.mul(&jp.add_scalar(&-a_top)).mul(&jp.add_scalar(&-a_bot));
            rep.push(Check::from_bool("E (J_p - q^(2(n+1)))(J_p - q^(-2(m+1))) = 0", kernel.is_zero(), || {
                format!("{} nonzero entries", kernel.nnz())
            }));
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
    fn partitions_and_tableaux() {
        assert_eq!(Partition::all(4).len(), 5);
        assert_eq!(standard_tableaux(&part("4")).len(), 1);
        assert_eq!(standard_tableaux(&part("2,1")).len(), 2);
        let t321 = standard_tableaux(&part("3,2,1"));
        assert_eq!(t321.len(), 16);
        assert_eq!(part("3,2,1").num_standard_tableaux(), 16);
        let sample = StandardTableau::from_rows(vec![vec![1, 3, 4], vec![2, 6], vec![5]]).unwrap();
        assert!(t321.contains(&sample));
        assert!(t321.windows(2).all(|w| w[0] < w[1]));
        assert!(StandardTableau::from_rows(vec![vec![2, 1]]).is_err());
        assert_eq!(part("3,1").conjugate(), part("2,1,1"));
        assert!(part("3,3").contains(&part("2,2")));
        assert!(!part("3,1").contains(&part("2,2")));
    }

    #[test]
    fn contents() {
        let sample = StandardTableau::from_rows(vec![vec![1, 3, 4], vec![2, 6], vec![5]]).unwrap();
        let want: Vec<QScalar> = [0, -2, 2, 4, -4, 0].iter().map(|&e| QScalar::q_pow(e)).collect();
        assert_eq!(content_vector(&sample), want);
        let row = &standard_tableaux(&part("4"))[0];
        assert_eq!(content_vector(row), (0..4).map(|k| QScalar::q_pow(2 * k)).collect::<Vec<_>>());
        let t = &standard_tableaux(&Partition::lambda_minus_mn(1, 1))[0];
        let s: QScalar = content_vector(t).iter().fold(QScalar::zero(), |a, j| a + j);
        let two = qint(2);
        assert_eq!(s, &two * &two - QScalar::one());
        assert_eq!(s, content_sum_formula(1, 1));
    }

    #[test]
    fn jm_elements_commute_and_j2_spectrum() {
        let h = HeckeSymmetry::standard(2);
        let js = jm_images(&h, 3);
        assert_eq!(js[0], QMatrix::identity(8));
        assert_eq!(js[1].mul(&js[2]), js[2].mul(&js[1]));
        let j2 = &jm_images(&h, 2)[1];
        assert_eq!(j2, &h.r().mul(h.r()));
        let q2 = QScalar::q_pow(2);
        let qm2 = QScalar::q_pow(-2);
        assert!(j2.add_scalar(&-q2).mul(&j2.add_scalar(&-qm2)).is_zero());
    }

    #[test]
    fn idempotent_examples_standard_two() {
        let h = HeckeSymmetry::standard(2);
        let pts = default_sample_points();
        let e2 = idempotent_image(&h, &standard_tableaux(&part("2"))[0]).unwrap();
        let p_plus = h.r().add_scalar(&QScalar::q_pow(-1)).scale(&qint(2).recip().unwrap());
        assert_eq!(e2.matrix, p_plus);
        assert_eq!(e2.matrix.rank_generic(&pts).unwrap(), 3);
        assert!(idempotent_image(&h, &standard_tableaux(&part("1,1,1"))[0]).unwrap().matrix.is_zero());
        let e21: Vec<QMatrix> =
            standard_tableaux(&part("2,1")).iter().map(|t| idempotent_image(&h, t).unwrap().matrix).collect();
        assert!(e21[0].mul(&e21[1]).is_zero());
        for e in &e21 {
            assert_eq!(e.rank_generic(&pts).unwrap(), 2);
            assert_eq!(&e.mul(e), e);
        }
    }

    fn decomposition(h: &HeckeSymmetry, k: usize) -> Vec<(String, (usize, usize))> {
        young_decomposition(h, k, &default_sample_points()).unwrap().into_iter().map(|(l, v)| (l.to_string(), v)).collect()
    }

    #[test]
    fn young_decompositions() {
        let h = HeckeSymmetry::standard(2);
        assert_eq!(decomposition(&h, 2), vec![("(1,1)".into(), (1, 1)), ("(2)".into(), (1, 3))]);
        assert_eq!(
            decomposition(&h, 3),
            vec![("(1,1,1)".into(), (1, 0)), ("(2,1)".into(), (2, 2)), ("(3)".into(), (1, 4))]
        );
        let sf = HeckeSymmetry::super_flip(1, 1);
        assert_eq!(decomposition(&sf, 2), vec![("(1,1)".into(), (1, 2)), ("(2)".into(), (1, 2))]);
    }

    #[test]
    fn completeness_small() {
        for h in [HeckeSymmetry::standard(2), HeckeSymmetry::super_flip(1, 1), HeckeSymmetry::super_flip(2, 1)] {
            for k in 1..=3 {
                let rep = verify_completeness(&h, k).unwrap();
                assert!(rep.all_passed(), "{} k={k}: {:?}", h.label(), rep.failures().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn kernel_property() {
        let pts = default_sample_points();
        let rep = kernel_property_check(&HeckeSymmetry::super_flip(1, 1), (1, 1), 5, &pts).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        let rep = kernel_property_check(&HeckeSymmetry::standard(2), (2, 0), 4, &pts).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn trace_recursion_examples() {
        let h = HeckeSymmetry::standard(2);
        let t = &standard_tableaux(&part("1,1"))[0];
        let rep = trace_recursion_check(&h, t, Some((2, 0))).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert!(rep.get("Tr C = -beta/alpha").is_some());

        let sf = HeckeSymmetry::super_flip(1, 1);
        for t in standard_tableaux(&part("2,1")) {
            let rep = trace_recursion_check(&sf, &t, Some((1, 1))).unwrap();
            assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
            assert!(sf.c().trace().is_zero());
        }

        // the two weighted-trace identities hold for any prefix tableau
        for t in standard_tableaux(&part("2,1")) {
            let rep = trace_recursion_check(&h, &t, None).unwrap();
            assert!(rep.all_passed());
        }
    }

    #[test]
    fn alpha_for_two_zero() {
        let t = &standard_tableaux(&Partition::lambda_minus_mn(2, 0))[0];
        let (alpha, _) = alpha_beta(&content_vector(t), 2, 0);
        let w = QScalar::omega();
        assert_eq!(alpha, -(&w * &w * QScalar::q_pow(-4)));
    }
}
