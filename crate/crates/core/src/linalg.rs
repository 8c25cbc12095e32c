//! Sparse exact matrices over Q(q) with tensor-leg metadata.
//!
//! Tensor indices are packed row-major over legs: for legs (d₁,…,d_L) the
//! multi-index (i₁,…,i_L) maps to ((i₁·d₂ + i₂)·d₃ + …). Upper tensor indices
//! label rows, so R(x_i⊗x_j) = Σ x_k⊗x_l R^{kl}_{ij} is the entry at row (k,l)
//! and column (i,j).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{rat, QScalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("leg error: {0}")]
    Legs(String),
    #[error("matrix is singular")]
    Singular,
    #[error("rank differs between sample points ({0}); retry with a third point or symbolic mode")]
    Genericity(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("json: {0}")]
    Json(String),
}

/// Default generic sample points for rank computations.
pub fn default_sample_points() -> Vec<BigRational> {
    vec![rat(3, 2), rat(5, 3)]
}

type Row = Vec<(usize, QScalar)>;

#[derive(Clone)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    row_legs: Vec<usize>,
    col_legs: Vec<usize>,
    data: Vec<Row>,
}

impl PartialEq for QMatrix {
    fn eq(&self, o: &Self) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.data == o.data
    }
}
impl Eq for QMatrix {}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} legs {:?}x{:?}", self.rows, self.cols, self.row_legs, self.col_legs)?;
        for (r, c, v) in self.entries() {
            writeln!(f, "  ({r},{c}) = {v}")?;
        }
        Ok(())
    }
}

fn legs_product(l: &[usize]) -> usize {
    l.iter().product()
}

fn split_index(mut idx: usize, legs: &[usize]) -> Vec<usize> {
    let mut out = vec![0; legs.len()];
    for (k, d) in legs.iter().enumerate().rev() {
        out[k] = idx % d;
        idx /= d;
    }
    out
}

fn join_index(multi: &[usize], legs: &[usize]) -> usize {
    multi.iter().zip(legs).fold(0, |acc, (i, d)| acc * d + i)
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, row_legs: vec![rows], col_legs: vec![cols], data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &QScalar::one())
    }

    /// s·I.
    pub fn scalar(n: usize, s: &QScalar) -> Self {
        let mut m = Self::zeros(n, n);
        if !s.is_zero() {
            for (i, row) in m.data.iter_mut().enumerate() {
                row.push((i, s.clone()));
            }
        }
        m
    }

    pub fn diag(d: &[QScalar]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            if !v.is_zero() {
                m.data[i].push((i, v.clone()));
            }
        }
        m
    }

    /// Builds from (row, col, value) triples; repeated positions are summed.
    pub fn from_entries<I: IntoIterator<Item = (usize, usize, QScalar)>>(rows: usize, cols: usize, it: I) -> Self {
        let mut acc: Vec<BTreeMap<usize, QScalar>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in it {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            if v.is_zero() {
                continue;
            }
            let slot = acc[r].entry(c).or_insert_with(QScalar::zero);
            *slot = &*slot + &v;
        }
        let data = acc.into_iter().map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
        QMatrix { rows, cols, row_legs: vec![rows], col_legs: vec![cols], data }
    }

    /// Builds from a function evaluated at every position.
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> QScalar) -> Self {
        let data = (0..rows)
            .map(|r| (0..cols).filter_map(|c| Some((c, f(r, c))).filter(|(_, v)| !v.is_zero())).collect())
            .collect();
        QMatrix { rows, cols, row_legs: vec![rows], col_legs: vec![cols], data }
    }

    pub fn with_legs(mut self, row_legs: Vec<usize>, col_legs: Vec<usize>) -> Self {
        assert_eq!(legs_product(&row_legs), self.rows, "row legs {row_legs:?} vs {}", self.rows);
        assert_eq!(legs_product(&col_legs), self.cols, "col legs {col_legs:?} vs {}", self.cols);
        self.row_legs = row_legs;
        self.col_legs = col_legs;
        self
    }

    /// Sets square leg structure `legs` on both sides.
    pub fn with_square_legs(self, legs: Vec<usize>) -> Self {
        self.with_legs(legs.clone(), legs)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn row_legs(&self) -> &[usize] {
        &self.row_legs
    }
    pub fn col_legs(&self) -> &[usize] {
        &self.col_legs
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(usize, QScalar)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> QScalar {
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => QScalar::zero(),
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &QScalar)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn map(&self, f: impl Fn(&QScalar) -> QScalar + Sync) -> Self {
        let data = self
            .data
            .iter()
            .map(|row| row.iter().map(|(c, v)| (*c, f(v))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        QMatrix { data, ..self.clone_shape() }
    }

    fn clone_shape(&self) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            row_legs: self.row_legs.clone(),
            col_legs: self.col_legs.clone(),
            data: Vec::new(),
        }
    }

    pub fn scale(&self, s: &QScalar) -> Self {
        if s.is_zero() {
            return QMatrix { data: vec![Vec::new(); self.rows], ..self.clone_shape() };
        }
        self.map(|v| v * s)
    }

    pub fn neg(&self) -> Self {
        self.map(|v| -v)
    }

    fn combine(&self, o: &Self, sign: bool) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "add: shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    let ca = a.get(i).map_or(usize::MAX, |e| e.0);
                    let cb = b.get(j).map_or(usize::MAX, |e| e.0);
                    if ca < cb {
                        out.push(a[i].clone());
                        i += 1;
                    } else if cb < ca {
                        out.push((cb, if sign { b[j].1.clone() } else { -&b[j].1 }));
                        j += 1;
                    } else {
                        let v = if sign { &a[i].1 + &b[j].1 } else { &a[i].1 - &b[j].1 };
                        if !v.is_zero() {
                            out.push((ca, v));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                out
            })
            .collect();
        QMatrix { data, ..self.clone_shape() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, true)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, false)
    }

    /// self + s·I.
    pub fn add_scalar(&self, s: &QScalar) -> Self {
        assert!(self.is_square());
        self.add(&QMatrix::scalar(self.rows, s).with_legs(self.row_legs.clone(), self.col_legs.clone()))
    }

    /// Matrix product. Leg metadata: rows from self, cols from o.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "mul: {}x{} times {}x{}", self.rows, self.cols, o.rows, o.cols);
        let work = |row: &Row| -> Row {
            if row.is_empty() {
                return Vec::new();
            }
            if row.len() == 1 && o.data[row[0].0].len() == 1 {
                let (k, a) = &row[0];
                let (c, b) = &o.data[*k][0];
                let v = a * b;
                return if v.is_zero() { Vec::new() } else { vec![(*c, v)] };
            }
            let mut acc: BTreeMap<usize, QScalar> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &o.data[*k] {
                    let p = a * b;
                    match acc.get_mut(c) {
                        Some(slot) => *slot = &*slot + &p,
                        None => {
                            acc.insert(*c, p);
                        }
                    }
                }
            }
            acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
        };
        let data: Vec<Row> = if self.rows >= 16 && self.nnz() > 64 {
            self.data.par_iter().map(work).collect()
        } else {
            self.data.iter().map(work).collect()
        };
        QMatrix { rows: self.rows, cols: o.cols, row_legs: self.row_legs.clone(), col_legs: o.col_legs.clone(), data }
    }

    /// Product of a list of matrices, left to right.
    pub fn product<'a>(ms: impl IntoIterator<Item = &'a QMatrix>) -> Option<QMatrix> {
        ms.into_iter().fold(None, |acc: Option<QMatrix>, m| Some(match acc {
            None => m.clone(),
            Some(a) => a.mul(m),
        }))
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<Row> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.entries() {
            data[c].push((r, v.clone()));
        }
        QMatrix { rows: self.cols, cols: self.rows, row_legs: self.col_legs.clone(), col_legs: self.row_legs.clone(), data }
    }

    pub fn trace(&self) -> QScalar {
        assert!(self.is_square());
        let mut t = QScalar::zero();
        for (r, row) in self.data.iter().enumerate() {
            if let Ok(k) = row.binary_search_by_key(&r, |e| e.0) {
                t += &row[k].1;
            }
        }
        t
    }

    /// Kronecker product, composite index (i−1)·rows_B + j.
    pub fn kron(&self, b: &Self) -> Self {
        let rows = self.rows * b.rows;
        let cols = self.cols * b.cols;
        let mut data: Vec<Row> = Vec::with_capacity(rows);
        for arow in &self.data {
            for brow in &b.data {
                let mut out = Vec::with_capacity(arow.len() * brow.len());
                for (ja, va) in arow {
                    for (jb, vb) in brow {
                        out.push((ja * b.cols + jb, va * vb));
                    }
                }
                data.push(out);
            }
        }
        let mut row_legs = self.row_legs.clone();
        row_legs.extend(&b.row_legs);
        let mut col_legs = self.col_legs.clone();
        col_legs.extend(&b.col_legs);
        QMatrix { rows, cols, row_legs, col_legs, data }
    }

    /// I_{n}^{⊗k} with legs (n,…,n).
    pub fn identity_legs(n: usize, k: usize) -> Self {
        QMatrix::identity(n.pow(k as u32)).with_square_legs(vec![n; k])
    }

    /// id^{⊗(i−1)} ⊗ M ⊗ id^{⊗(p−i−1)} for M acting on V⊗V, 1 ≤ i ≤ p−1.
    pub fn amplify(m: &QMatrix, i: usize, p: usize, n: usize) -> Result<QMatrix, LinalgError> {
        if i < 1 || i + 1 > p {
            return Err(LinalgError::Legs(format!("amplify position {i} outside 1..{}", p.saturating_sub(1))));
        }
        if m.rows != n * n || m.cols != n * n {
            return Err(LinalgError::Dimension(format!("amplify expects {}x{}", n * n, n * n)));
        }
        let m2 = m.clone().with_square_legs(vec![n, n]);
        let out = QMatrix::identity_legs(n, i - 1).kron(&m2).kron(&QMatrix::identity_legs(n, p - i - 1));
        Ok(out.with_square_legs(vec![n; p]))
    }

    /// Places an operator acting on `local` legs (given in the order of its
    /// own legs) inside a square tensor space with legs `legs`.
    pub fn embed(m: &QMatrix, local: &[usize], legs: &[usize]) -> Result<QMatrix, LinalgError> {
        let ldims: Vec<usize> = local.iter().map(|&l| legs[l]).collect();
        if m.rows != legs_product(&ldims) || m.cols != m.rows {
            return Err(LinalgError::Dimension("embed: operator size does not match legs".into()));
        }
        let rest: Vec<usize> = (0..legs.len()).filter(|l| !local.contains(l)).collect();
        let total = legs_product(legs);
        let mut entries = Vec::new();
        for (r, c, v) in m.entries() {
            let mr = split_index(r, &ldims);
            let mc = split_index(c, &ldims);
            let rest_dims: Vec<usize> = rest.iter().map(|&l| legs[l]).collect();
            for k in 0..legs_product(&rest_dims) {
                let mk = split_index(k, &rest_dims);
                let mut full_r = vec![0; legs.len()];
                let mut full_c = vec![0; legs.len()];
                for (p, &l) in local.iter().enumerate() {
                    full_r[l] = mr[p];
                    full_c[l] = mc[p];
                }
                for (p, &l) in rest.iter().enumerate() {
                    full_r[l] = mk[p];
                    full_c[l] = mk[p];
                }
                entries.push((join_index(&full_r, legs), join_index(&full_c, legs), v.clone()));
            }
        }
        Ok(QMatrix::from_entries(total, total, entries).with_square_legs(legs.to_vec()))
    }

    /// Trace over the given legs (0-based). Requires equal row and column legs.
    pub fn partial_trace(&self, legs: &[usize]) -> Result<QMatrix, LinalgError> {
        if self.row_legs != self.col_legs {
            return Err(LinalgError::Legs(format!("row legs {:?} differ from col legs {:?}", self.row_legs, self.col_legs)));
        }
        if let Some(&l) = legs.iter().find(|&&l| l >= self.row_legs.len()) {
            return Err(LinalgError::Legs(format!("leg {l} outside {:?}", self.row_legs)));
        }
        let traced: BTreeSet<usize> = legs.iter().copied().collect();
        let kept: Vec<usize> = (0..self.row_legs.len()).filter(|l| !traced.contains(l)).collect();
        let kept_dims: Vec<usize> = kept.iter().map(|&l| self.row_legs[l]).collect();
        let n = legs_product(&kept_dims);
        let mut entries = Vec::new();
        for (r, c, v) in self.entries() {
            let mr = split_index(r, &self.row_legs);
            let mc = split_index(c, &self.col_legs);
            if traced.iter().all(|&l| mr[l] == mc[l]) {
                let rr: Vec<usize> = kept.iter().map(|&l| mr[l]).collect();
                let cc: Vec<usize> = kept.iter().map(|&l| mc[l]).collect();
                entries.push((join_index(&rr, &kept_dims), join_index(&cc, &kept_dims), v.clone()));
            }
        }
        let legs = if kept_dims.is_empty() { vec![1] } else { kept_dims };
        Ok(QMatrix::from_entries(n, n, entries).with_square_legs(legs))
    }

    /// Relabels tensor legs: leg k of the result is leg perm[k] of self.
    pub fn permute_legs(&self, perm: &[usize]) -> Result<QMatrix, LinalgError> {
        if self.row_legs != self.col_legs || perm.len() != self.row_legs.len() {
            return Err(LinalgError::Legs("permute_legs needs matching legs".into()));
        }
        let new_legs: Vec<usize> = perm.iter().map(|&p| self.row_legs[p]).collect();
        let map = |i: usize| {
            let m = split_index(i, &self.row_legs);
            let nm: Vec<usize> = perm.iter().map(|&p| m[p]).collect();
            join_index(&nm, &new_legs)
        };
        let entries: Vec<_> = self.entries().map(|(r, c, v)| (map(r), map(c), v.clone())).collect();
        Ok(QMatrix::from_entries(self.rows, self.cols, entries).with_square_legs(new_legs))
    }

    pub fn eval_at(&self, q0: &BigRational) -> Result<QMatrix, LinalgError> {
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut out = Vec::with_capacity(row.len());
            for (c, v) in row {
                let x = v.specialize(q0)?;
                if !x.is_zero() {
                    out.push((*c, x));
                }
            }
            data.push(out);
        }
        Ok(QMatrix { data, ..self.clone_shape() })
    }

    /// True when every entry is independent of q.
    pub fn is_constant(&self) -> bool {
        self.entries().all(|(_, _, v)| v.is_constant())
    }

    /// If self = s·I, returns s.
    pub fn as_scalar(&self) -> Option<QScalar> {
        if !self.is_square() {
            return None;
        }
        let s = self.get(0, 0);
        for (r, row) in self.data.iter().enumerate() {
            if s.is_zero() {
                if !row.is_empty() {
                    return None;
                }
            } else if row.len() != 1 || row[0].0 != r || row[0].1 != s {
                return None;
            }
        }
        Some(s)
    }

    /// Rank over Q(q) from exact elimination at each sample point; the
    /// values must agree.
    pub fn rank_generic(&self, points: &[BigRational]) -> Result<usize, LinalgError> {
        if self.is_constant() {
            return Ok(rank_rows(self.to_rational_rows(None)?));
        }
        let mut ranks = Vec::new();
        for p in points {
            ranks.push(rank_rows(self.to_rational_rows(Some(p))?));
        }
        match ranks.first() {
            None => Err(LinalgError::Genericity("no sample points".into())),
            Some(&r) if ranks.iter().all(|&x| x == r) => Ok(r),
            _ => Err(LinalgError::Genericity(
                points.iter().zip(&ranks).map(|(p, r)| format!("rank {r} at q={p}")).collect::<Vec<_>>().join(", "),
            )),
        }
    }

    /// Rank by elimination over Q(q) itself.
    pub fn rank_symbolic(&self) -> usize {
        rank_rows(self.data.clone())
    }

    fn to_rational_rows(&self, at: Option<&BigRational>) -> Result<Vec<Vec<(usize, BigRational)>>, LinalgError> {
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(c, v)| {
                        let x = match at {
                            Some(p) => v.eval_at(p)?,
                            None => v.as_constant().expect("constant entry"),
                        };
                        Ok((*c, x))
                    })
                    .filter(|r| !matches!(r, Ok((_, x)) if x.is_zero()))
                    .collect()
            })
            .collect()
    }

    /// Inverse by Gauss–Jordan elimination over Q(q).
    pub fn inverse(&self) -> Result<QMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<BTreeMap<usize, QScalar>> = self.data.iter().map(|r| r.iter().cloned().collect()).collect();
        let mut inv: Vec<BTreeMap<usize, QScalar>> =
            (0..n).map(|i| std::iter::once((i, QScalar::one())).collect()).collect();
        for col in 0..n {
            let p = (col..n)
                .filter(|&r| a[r].contains_key(&col))
                .min_by_key(|&r| a[r].len())
                .ok_or(LinalgError::Singular)?;
            a.swap(col, p);
            inv.swap(col, p);
            let pinv = a[col][&col].recip()?;
            scale_row(&mut a[col], &pinv);
            scale_row(&mut inv[col], &pinv);
            let (prow, pinvrow) = (a[col].clone(), inv[col].clone());
            for r in 0..n {
                if r == col {
                    continue;
                }
                if let Some(f) = a[r].get(&col).cloned() {
                    axpy_row(&mut a[r], &f, &prow);
                    axpy_row(&mut inv[r], &f, &pinvrow);
                }
            }
        }
        let entries = inv.into_iter().enumerate().flat_map(|(r, row)| row.into_iter().map(move |(c, v)| (r, c, v)));
        Ok(QMatrix::from_entries(n, n, entries).with_legs(self.col_legs.clone(), self.row_legs.clone()))
    }

    /// Indices of a maximal set of linearly independent columns, chosen
    /// greedily from the left, decided at the given point.
    pub fn pivot_columns_at(&self, q0: &BigRational) -> Result<Vec<usize>, LinalgError> {
        let t = self.transpose().to_rational_rows(Some(q0))?;
        Ok(independent_rows(t))
    }

    pub fn column(&self, c: usize) -> Vec<QScalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> QMatrix {
        let pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let entries: Vec<_> = self
            .entries()
            .filter_map(|(r, c, v)| pos.get(&c).map(|&k| (r, k, v.clone())))
            .collect();
        QMatrix::from_entries(self.rows, cols.len(), entries)
    }

    pub fn select_rows(&self, rows: &[usize]) -> QMatrix {
        let entries: Vec<_> = rows
            .iter()
            .enumerate()
            .flat_map(|(k, &r)| self.data[r].iter().map(move |(c, v)| (k, *c, v.clone())))
            .collect();
        QMatrix::from_entries(rows.len(), self.cols, entries)
    }

    /// First differing position with both values, for failure witnesses.
    pub fn first_difference(&self, o: &Self) -> Option<(usize, usize, QScalar, QScalar)> {
        let d = self.sub(o);
        let first = d.entries().next().map(|(r, c, _)| (r, c));
        first.map(|(r, c)| (r, c, self.get(r, c), o.get(r, c)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MatrixJson::from(self)).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<QMatrix, LinalgError> {
        let j: MatrixJson = serde_json::from_value(v.clone()).map_err(|e| LinalgError::Json(e.to_string()))?;
        j.try_into()
    }

    pub fn from_json_str(s: &str) -> Result<QMatrix, LinalgError> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| LinalgError::Json(e.to_string()))?;
        Self::from_json(&v)
    }
}

fn scale_row(row: &mut BTreeMap<usize, QScalar>, s: &QScalar) {
    for v in row.values_mut() {
        *v = &*v * s;
    }
}

/// row ← row − f·p
fn axpy_row(row: &mut BTreeMap<usize, QScalar>, f: &QScalar, p: &BTreeMap<usize, QScalar>) {
    for (c, v) in p {
        let d = f * v;
        let slot = row.entry(*c).or_insert_with(QScalar::zero);
        *slot = &*slot - &d;
        if slot.is_zero() {
            row.remove(c);
        }
    }
}

/// Minimal field interface for sparse elimination.
pub trait FieldElem: Clone + Send + Sync {
    fn is_zero_elem(&self) -> bool;
    fn mul_elem(&self, o: &Self) -> Self;
    fn sub_elem(&self, o: &Self) -> Self;
    fn inv_elem(&self) -> Self;
    fn neg_elem(&self) -> Self;
}

impl FieldElem for BigRational {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn inv_elem(&self) -> Self {
        self.recip()
    }
    fn neg_elem(&self) -> Self {
        -self
    }
}

impl FieldElem for QScalar {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn inv_elem(&self) -> Self {
        self.recip().expect("nonzero pivot")
    }
    fn neg_elem(&self) -> Self {
        -self
    }
}

/// Rank by sparse elimination; the pivot row is the shortest remaining row,
/// the pivot column the one of that row touching fewest other rows.
pub fn rank_rows<F: FieldElem>(rows: Vec<Vec<(usize, F)>>) -> usize {
    let mut rows: Vec<BTreeMap<usize, F>> =
        rows.into_iter().map(|r| r.into_iter().filter(|(_, v)| !v.is_zero_elem()).collect()).collect();
    let mut col_rows: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        for c in r.keys() {
            col_rows.entry(*c).or_default().insert(i);
        }
    }
    let mut active: BTreeSet<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    let mut rank = 0;
    while let Some(&p) = active.iter().min_by_key(|&&i| (rows[i].len(), i)) {
        active.remove(&p);
        if rows[p].is_empty() {
            continue;
        }
        let prow = std::mem::take(&mut rows[p]);
        for c in prow.keys() {
            if let Some(s) = col_rows.get_mut(c) {
                s.remove(&p);
            }
        }
        let pc = *prow.keys().min_by_key(|c| (col_rows.get(*c).map_or(0, |s| s.len()), **c)).unwrap();
        let pinv = prow[&pc].inv_elem();
        rank += 1;
        let targets: Vec<usize> = col_rows.get(&pc).map(|s| s.iter().copied().collect()).unwrap_or_default();
        for r in targets {
            let f = rows[r][&pc].mul_elem(&pinv);
            for (c, v) in &prow {
                let d = f.mul_elem(v);
                let newv = match rows[r].get(c) {
                    Some(old) => old.sub_elem(&d),
                    None => d.neg_elem(),
                };
                if newv.is_zero_elem() {
                    rows[r].remove(c);
                    if let Some(s) = col_rows.get_mut(c) {
                        s.remove(&r);
                    }
                } else {
                    rows[r].insert(*c, newv);
                    col_rows.entry(*c).or_default().insert(r);
                }
            }
            if rows[r].is_empty() {
                active.remove(&r);
            }
        }
    }
    rank
}

/// Greedy left-to-right choice of linearly independent rows.
pub fn independent_rows(rows: Vec<Vec<(usize, BigRational)>>) -> Vec<usize> {
    // basis: pivot column -> reduced row with leading entry 1 at that column
    let mut basis: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
    let mut chosen = Vec::new();
    for (i, r) in rows.into_iter().enumerate() {
        let mut v: BTreeMap<usize, BigRational> = r.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        loop {
            let Some((&c, x)) = v.iter().find(|(c, _)| basis.contains_key(c)) else { break };
            let x = x.clone();
            for (bc, bv) in &basis[&c] {
                let d = &x * bv;
                let slot = v.entry(*bc).or_insert_with(BigRational::zero);
                *slot -= d;
                if slot.is_zero() {
                    v.remove(bc);
                }
            }
        }
        if let Some((&c, x)) = v.iter().next() {
            let inv = x.recip();
            let v: BTreeMap<usize, BigRational> = v.into_iter().map(|(k, y)| (k, y * &inv)).collect();
            // keep basis fully reduced in column c
            for row in basis.values_mut() {
                if let Some(f) = row.get(&c).cloned() {
                    for (k, y) in &v {
                        let slot = row.entry(*k).or_insert_with(BigRational::zero);
                        *slot -= &f * y;
                        if slot.is_zero() {
                            row.remove(k);
                        }
                    }
                }
            }
            basis.insert(c, v);
            chosen.push(i);
        }
    }
    chosen
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    r: usize,
    c: usize,
    v: QScalar,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim_row: usize,
    dim_col: usize,
    row_legs: Vec<usize>,
    col_legs: Vec<usize>,
    entries: Vec<EntryJson>,
}

impl From<&QMatrix> for MatrixJson {
    fn from(m: &QMatrix) -> Self {
        MatrixJson {
            dim_row: m.rows,
            dim_col: m.cols,
            row_legs: m.row_legs.clone(),
            col_legs: m.col_legs.clone(),
            entries: m.entries().map(|(r, c, v)| EntryJson { r: r + 1, c: c + 1, v: v.clone() }).collect(),
        }
    }
}

impl TryFrom<MatrixJson> for QMatrix {
    type Error = LinalgError;
    fn try_from(j: MatrixJson) -> Result<Self, LinalgError> {
        if j.dim_row == 0 || j.dim_col == 0 {
            return Err(LinalgError::Json("dimensions must be positive".into()));
        }
        for e in &j.entries {
            if e.r == 0 || e.c == 0 || e.r > j.dim_row || e.c > j.dim_col {
                return Err(LinalgError::Json(format!("entry ({}, {}) out of range", e.r, e.c)));
            }
        }
        let row_legs = if j.row_legs.is_empty() { vec![j.dim_row] } else { j.row_legs };
        let col_legs = if j.col_legs.is_empty() { vec![j.dim_col] } else { j.col_legs };
        if legs_product(&row_legs) != j.dim_row || legs_product(&col_legs) != j.dim_col {
            return Err(LinalgError::Json("leg products do not match dimensions".into()));
        }
        Ok(QMatrix::from_entries(j.dim_row, j.dim_col, j.entries.into_iter().map(|e| (e.r - 1, e.c - 1, e.v)))
            .with_legs(row_legs, col_legs))
    }
}

/// Converts a rational to a constant scalar; convenience for tests and callers.
pub fn constant(v: i64) -> QScalar {
    QScalar::from_int(v)
}

/// The flip P on V⊗V.
pub fn flip(n: usize) -> QMatrix {
    QMatrix::from_entries(n * n, n * n, (0..n).flat_map(|i| (0..n).map(move |j| (j * n + i, i * n + j, QScalar::one()))))
        .with_square_legs(vec![n, n])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> QScalar {
        QScalar::q()
    }

    #[test]
    fn kron_examples() {
        assert_eq!(QMatrix::identity(2).kron(&QMatrix::identity(3)), QMatrix::identity(6));
        let a = QMatrix::diag(&[q(), constant(2)]);
        assert_eq!(a.kron(&QMatrix::identity(1)), a);
        let k = QMatrix::diag(&[q(), constant(1)]).kron(&QMatrix::diag(&[constant(1), q()]));
        assert_eq!(k, QMatrix::diag(&[q(), &q() * &q(), constant(1), q()]));
    }

    #[test]
    fn amplify_flip_acts_on_first_pair() {
        let p = flip(2);
        assert_eq!(QMatrix::amplify(&p, 1, 2, 2).unwrap(), p);
        let p12 = QMatrix::amplify(&p, 1, 3, 2).unwrap();
        // e1⊗e2⊗e1 is index (0,1,0) = 2; image e2⊗e1⊗e1 is (1,0,0) = 4
        assert!(p12.get(4, 2).is_one());
        assert_eq!(p12.row(4).len(), 1);
        assert!(QMatrix::amplify(&p, 3, 3, 2).is_err());
    }

    #[test]
    fn partial_trace_examples() {
        let i4 = QMatrix::identity(4).with_square_legs(vec![2, 2]);
        assert_eq!(i4.partial_trace(&[1]).unwrap(), QMatrix::scalar(2, &constant(2)));
        assert_eq!(flip(2).partial_trace(&[1]).unwrap(), QMatrix::identity(2));
        assert_eq!(flip(3).partial_trace(&[0, 1]).unwrap().get(0, 0), constant(3));
        assert!(QMatrix::identity(4).partial_trace(&[1]).is_err());
    }

    #[test]
    fn permute_legs_conjugates_by_flip() {
        let a = QMatrix::from_fn(2, 2, |r, c| QScalar::q_pow((r * 2 + c) as i32));
        let b = QMatrix::from_fn(2, 2, |r, c| constant((r + 3 * c) as i64 + 1));
        let ab = a.kron(&b);
        let ba = b.kron(&a);
        assert_eq!(ab.permute_legs(&[1, 0]).unwrap(), ba);
        let p = flip(2);
        assert_eq!(p.mul(&ab).mul(&p), ba);
    }

    #[test]
    fn embed_matches_amplify() {
        let p = flip(2);
        let legs = [2, 2, 2];
        assert_eq!(QMatrix::embed(&p, &[1, 2], &legs).unwrap(), QMatrix::amplify(&p, 2, 3, 2).unwrap());
        // P_{13} moves leg 0 content to leg 2
        let p13 = QMatrix::embed(&p, &[0, 2], &legs).unwrap();
        assert!(p13.get(1, 4).is_one());
    }

    #[test]
    fn ranks() {
        assert_eq!(QMatrix::identity(5).rank_generic(&default_sample_points()).unwrap(), 5);
        assert_eq!(QMatrix::zeros(3, 3).rank_generic(&default_sample_points()).unwrap(), 0);
        let m = QMatrix::from_fn(3, 3, |r, c| QScalar::q_pow((r + c) as i32));
        assert_eq!(m.rank_generic(&default_sample_points()).unwrap(), 1);
        assert_eq!(m.rank_symbolic(), 1);
        // rank drops only at q = 1
        let d = QMatrix::diag(&[QScalar::omega(), constant(1)]);
        assert_eq!(d.rank_generic(&default_sample_points()).unwrap(), 2);
        assert!(d.rank_generic(&[rat(1, 1), rat(2, 1)]).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let m = QMatrix::from_fn(3, 3, |r, c| if r == c { q() } else { constant((r + c) as i64) });
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(3));
        assert!(QMatrix::zeros(2, 2).inverse().is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = QMatrix::from_fn(4, 4, |r, c| if (r + c) % 3 == 0 { QScalar::q_pow(r as i32 - 1) } else { QScalar::zero() })
            .with_square_legs(vec![2, 2]);
        let s = serde_json::to_string(&m.to_json()).unwrap();
        let back = QMatrix::from_json_str(&s).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.row_legs(), &[2, 2]);
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), s);
    }

    #[test]
    fn pivot_columns() {
        let m = QMatrix::from_fn(3, 4, |r, c| constant(((r + 1) * (c % 2 + 1)) as i64));
        assert_eq!(m.pivot_columns_at(&rat(3, 2)).unwrap(), vec![0]);
        assert_eq!(QMatrix::identity(3).pivot_columns_at(&rat(3, 2)).unwrap(), vec![0, 1, 2]);
    }

    fn small_matrix(r: usize, c: usize) -> impl Strategy<Value = QMatrix> {
        prop::collection::vec((-2i32..=2, -3i64..=3), r * c).prop_map(move |v| {
            QMatrix::from_fn(r, c, |i, j| {
                let (e, k) = v[i * c + j];
                QScalar::monomial(rat(k, 1), e)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn kron_associative_bilinear(a in small_matrix(2, 2), b in small_matrix(2, 1), c in small_matrix(1, 2), d in small_matrix(2, 1)) {
            prop_assert_eq!(a.kron(&b).kron(&c), a.kron(&b.kron(&c)));
            prop_assert_eq!(a.kron(&b.add(&d)), a.kron(&b).add(&a.kron(&d)));
        }

        #[test]
        fn partial_trace_of_kron(a in small_matrix(2, 2), b in small_matrix(3, 3)) {
            let ab = a.kron(&b);
            prop_assert_eq!(ab.partial_trace(&[1]).unwrap(), a.scale(&b.trace()));
            prop_assert_eq!(ab.partial_trace(&[0, 1]).unwrap().get(0, 0), ab.trace());
        }

        #[test]
        fn amplify_locality(a in small_matrix(4, 4), b in small_matrix(4, 4)) {
            let a1 = QMatrix::amplify(&a, 1, 4, 2).unwrap();
            let b3 = QMatrix::amplify(&b, 3, 4, 2).unwrap();
            prop_assert_eq!(a1.mul(&b3), b3.mul(&a1));
        }

        #[test]
        fn generic_rank_matches_symbolic(m in small_matrix(4, 5)) {
            let g = m.rank_generic(&default_sample_points());
            if let Ok(g) = g {
                prop_assert_eq!(g, m.rank_symbolic());
            }
        }
    }
}
