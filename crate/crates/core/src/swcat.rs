//! Braidings, pairings and R-traces on tensor words in V and V*.
//!
//! V⊕V* is ordered as x_1..x_N then x^1..x^N (right basis of V*). A tensor
//! word is stored in reading order; every letter has dimension N, so all
//! operators on words of length k live on N^k with legs (N,…,N).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::hecke::HeckeSymmetry;
use crate::heckealg::{standard_tableaux, AlgError, IdempotentBuilder, Partition};
use crate::linalg::QMatrix;
use crate::report::{Check, Report};
use crate::scalar::QScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("bad tensor word {0:?}")]
    Word(String),
    #[error("ν = {0} is not a power of q; the balanced factor q^(m-n) is undefined")]
    NotMonomial(String),
    #[error("R-dimension of {shape} depends on the tableau: {values:?}")]
    TableauDependent { shape: String, values: Vec<String> },
    #[error(transparent)]
    Alg(#[from] AlgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Letter {
    V,
    Dual,
}

/// A tensor word such as V⊗V*⊗V.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct MixedWord(pub Vec<Letter>);

impl MixedWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        MixedWord(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &MixedWord) -> MixedWord {
        MixedWord(self.0.iter().chain(&other.0).copied().collect())
    }

    /// All words of length k.
    pub fn all(k: usize) -> Vec<MixedWord> {
        (0..1usize << k)
            .map(|bits| MixedWord((0..k).map(|i| if bits >> (k - 1 - i) & 1 == 1 { Letter::Dual } else { Letter::V }).collect()))
            .collect()
    }
}

impl fmt::Display for MixedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "K");
        }
        for l in &self.0 {
            write!(f, "{}", if *l == Letter::V { "V" } else { "V*" })?;
        }
        Ok(())
    }
}

impl FromStr for MixedWord {
    type Err = CategoryError;
    /// "VV*V" or "V,V*,V"; "K" or "" is the empty word.
    fn from_str(s: &str) -> Result<Self, CategoryError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace() && *c != ',').collect();
        if s == "K" {
            return Ok(MixedWord::default());
        }
        let mut out = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            if c != 'V' {
                return Err(CategoryError::Word(s.clone()));
            }
            if chars.peek() == Some(&'*') {
                chars.next();
                out.push(Letter::Dual);
            } else {
                out.push(Letter::V);
            }
        }
        Ok(MixedWord(out))
    }
}

/// The four N²×N² blocks of the extension of R to V⊕V*.
#[derive(Debug, Clone)]
pub struct ExtendedBraiding {
    n: usize,
    vv: QMatrix,
    vd: QMatrix,
    dv: QMatrix,
    dd: QMatrix,
}

impl ExtendedBraiding {
    /// R(x_i⊗x^j) = x^k⊗x_l (R⁻¹)^{lj}_{ki}, R(x^j⊗x_i) = x_k⊗x^l Ψ^{kj}_{li},
    /// R(x^i⊗x^j) = x^k⊗x^l R^{ji}_{lk}.
    pub fn new(h: &HeckeSymmetry) -> Self {
        let n = h.dim();
        let at = |a: usize, b: usize| a * n + b;
        let reindex = |src: &QMatrix, f: &dyn Fn(usize, usize, usize, usize) -> (usize, usize)| {
            QMatrix::from_entries(
                n * n,
                n * n,
                src.entries().map(|(r, c, v)| {
                    let (row, col) = f(r / n, r % n, c / n, c % n);
                    (row, col, v.clone())
                }),
            )
            .with_square_legs(vec![n, n])
        };
        // (R⁻¹)[(l,j),(k,i)] lands at row (k,l), col (i,j)
        let vd = reindex(h.r_inv(), &|l, j, k, i| (at(k, l), at(i, j)));
        // Ψ[(k,j),(l,i)] lands at row (k,l), col (j,i)
        let dv = reindex(h.psi(), &|k, j, l, i| (at(k, l), at(j, i)));
        // R[(j,i),(l,k)] lands at row (k,l), col (i,j)
        let dd = reindex(h.r(), &|j, i, l, k| (at(k, l), at(i, j)));
        ExtendedBraiding { n, vv: h.r().clone(), vd, dv, dd }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// The block carrying a⊗b to b⊗a.
    pub fn block(&self, a: Letter, b: Letter) -> &QMatrix {
        match (a, b) {
            (Letter::V, Letter::V) => &self.vv,
            (Letter::V, Letter::Dual) => &self.vd,
            (Letter::Dual, Letter::V) => &self.dv,
            (Letter::Dual, Letter::Dual) => &self.dd,
        }
    }

    /// The full operator on (V⊕V*)^{⊗2}, index α·2N + β.
    pub fn total(&self) -> QMatrix {
        let n = self.n;
        let d = 2 * n;
        let off = |l: Letter| if l == Letter::V { 0 } else { n };
        let mut e = Vec::new();
        for a in [Letter::V, Letter::Dual] {
            for b in [Letter::V, Letter::Dual] {
                for (r, c, v) in self.block(a, b).entries() {
                    let row = (off(b) + r / n) * d + off(a) + r % n;
                    let col = (off(a) + c / n) * d + off(b) + c % n;
                    e.push((row, col, v.clone()));
                }
            }
        }
        QMatrix::from_entries(d * d, d * d, e).with_square_legs(vec![d, d])
    }

    /// Swaps letters p, p+1 of `w` (0-based); returns the operator and the new word.
    pub fn elementary(&self, w: &MixedWord, p: usize) -> (QMatrix, MixedWord) {
        let k = w.len();
        let m = QMatrix::amplify(self.block(w.0[p], w.0[p + 1]), p + 1, k, self.n)
            .expect("position inside word")
            .with_square_legs(vec![self.n; k]);
        let mut next = w.clone();
        next.0.swap(p, p + 1);
        (m, next)
    }

    /// Braid-word product carrying w1⊗w2 to w2⊗w1: the letters of w1 move
    /// right one at a time, last letter first.
    pub fn mixed_braiding(&self, w1: &MixedWord, w2: &MixedWord) -> QMatrix {
        let mut word = w1.concat(w2);
        let dim = self.n.pow(word.len() as u32);
        let mut acc = QMatrix::identity(dim).with_square_legs(vec![self.n; word.len()]);
        if w1.is_empty() || w2.is_empty() {
            return acc;
        }
        for i in (0..w1.len()).rev() {
            for p in i..i + w2.len() {
                let (m, next) = self.elementary(&word, p);
                acc = m.mul(&acc);
                word = next;
            }
        }
        acc
    }

    /// R12R23R12 = R23R12R23 on each of the eight words of length 3.
    pub fn verify_ybe(&self) -> Report {
        let mut rep = Report::new();
        for w in MixedWord::all(3) {
            let (a1, w1) = self.elementary(&w, 0);
            let (a2, w2) = self.elementary(&w1, 1);
            let (a3, _) = self.elementary(&w2, 0);
            let (b1, v1) = self.elementary(&w, 1);
            let (b2, v2) = self.elementary(&v1, 0);
            let (b3, _) = self.elementary(&v2, 1);
            rep.push(Check::matrices(format!("YBE on {w}"), &a3.mul(&a2).mul(&a1), &b3.mul(&b2).mul(&b1)));
        }
        rep
    }
}

/// The invariant forms of the category and the left basis.
#[derive(Debug, Clone)]
pub struct Pairings {
    /// ⟨x_i, x^j⟩_r = δ^j_i on V⊗V*, a 1×N² row.
    pub right: QMatrix,
    /// ⟨x^i, x_j⟩_l = B^i_j on V*⊗V.
    pub left: QMatrix,
    /// 1 ↦ Σ x^i⊗x_i in V*⊗V, an N²×1 column.
    pub pi_right: QMatrix,
    /// 1 ↦ Σ x_i⊗x̃^i in V⊗V*.
    pub pi_left: QMatrix,
    /// x̃^i = T^i_j x^j with T = ν⁻¹C.
    pub left_basis: QMatrix,
}

impl Pairings {
    pub fn new(h: &HeckeSymmetry) -> Self {
        let n = h.dim();
        let at = |a: usize, b: usize| a * n + b;
        let right = QMatrix::from_entries(1, n * n, (0..n).map(|i| (0, at(i, i), QScalar::one())));
        let left = QMatrix::from_entries(1, n * n, h.b().entries().map(|(i, j, v)| (0, at(i, j), v.clone())));
        let pi_right = QMatrix::from_entries(n * n, 1, (0..n).map(|i| (at(i, i), 0, QScalar::one())));
        let nu_inv = h.nu().recip().expect("strictly skew-invertible");
        let left_basis = h.c().scale(&nu_inv);
        let pi_left = QMatrix::from_entries(n * n, 1, left_basis.entries().map(|(i, j, v)| (at(i, j), 0, v.clone())));
        Pairings { right, left, pi_right, pi_left, left_basis }
    }

    /// ⟨x̃^i, x_j⟩_l = δ^i_j.
    pub fn check_left_basis(&self) -> Check {
        let lb = self.left_basis.clone();
        let n = lb.rows();
        let bmat = QMatrix::from_fn(n, n, |i, j| self.left.get(0, i * n + j));
        Check::matrices("left basis is dual to x_i under the left form", &lb.mul(&bmat), &QMatrix::identity(n))
    }
}

/// Both naturality squares of `f: src → dst` against W = V and W = V*.
pub fn check_invariance(e: &ExtendedBraiding, f: &QMatrix, src: &MixedWord, dst: &MixedWord) -> Report {
    let n = e.dim();
    let id = QMatrix::identity(n);
    let mut rep = Report::new();
    for w in [Letter::V, Letter::Dual] {
        let ww = MixedWord(vec![w]);
        let lhs = id.kron(f).mul(&e.mixed_braiding(src, &ww));
        let rhs = e.mixed_braiding(dst, &ww).mul(&f.kron(&id));
        rep.push(Check::matrices(format!("(id_W x f) R_(U,W) = R_(U',W) (f x id_W), W = {ww}"), &lhs, &rhs));
        let lhs = f.kron(&id).mul(&e.mixed_braiding(&ww, src));
        let rhs = e.mixed_braiding(&ww, dst).mul(&id.kron(f));
        rep.push(Check::matrices(format!("(f x id_W) R_(W,U) = R_(W,U') (id_W x f), W = {ww}"), &lhs, &rhs));
    }
    rep
}

/// x_i⊗x^j ↦ x^k⊗x_l R^{lj}_{ki}.
pub fn transposition_map(h: &HeckeSymmetry) -> QMatrix {
    let n = h.dim();
    QMatrix::from_entries(
        n * n,
        n * n,
        h.r().entries().map(|(r, c, v)| {
            let (l, j) = (r / n, r % n);
            let (k, i) = (c / n, c % n);
            (k * n + l, i * n + j, v.clone())
        }),
    )
}

/// (l-form) commutes: ⟨,⟩_l = ⟨,⟩_r ∘ R_{V*,V}; (l-form2): ⟨,⟩_r = ⟨,⟩_l ∘ R_{V,V*}.
pub fn l_form_checks(e: &ExtendedBraiding, p: &Pairings) -> (Check, Check) {
    let l1 = p.right.mul(e.block(Letter::Dual, Letter::V));
    let l2 = p.left.mul(e.block(Letter::V, Letter::Dual));
    (Check::matrices("l-form commutes", &l1, &p.left), Check::matrices("l-form2 commutes", &l2, &p.right))
}

/// The four blocks rewritten in the left basis of V* against the primed formulas.
pub fn ext_prime_check(h: &HeckeSymmetry, e: &ExtendedBraiding, p: &Pairings) -> Report {
    let n = h.dim();
    let id = QMatrix::identity(n);
    // left coordinates c ↦ right coordinates Tᵀc
    let to_right = p.left_basis.transpose();
    let to_left = to_right.inverse().expect("T invertible");
    let at = |a: usize, b: usize| a * n + b;
    let reindex = |src: &QMatrix, f: &dyn Fn(usize, usize, usize, usize) -> (usize, usize)| {
        QMatrix::from_entries(
            n * n,
            n * n,
            src.entries().map(|(r, c, v)| {
                let (row, col) = f(r / n, r % n, c / n, c % n);
                (row, col, v.clone())
            }),
        )
    };
    let mut rep = Report::new();
    // R(x_i⊗x̃^j) = x̃^k⊗x_l Ψ^{jl}_{ik}
    let vd = to_left.kron(&id).mul(e.block(Letter::V, Letter::Dual)).mul(&id.kron(&to_right));
    let vd_want = reindex(h.psi(), &|j, l, i, k| (at(k, l), at(i, j)));
    rep.push(Check::matrices("ext': V x V* block", &vd, &vd_want));
    // R(x̃^j⊗x_i) = x_k⊗x̃^l (R⁻¹)^{jk}_{il}
    let dv = id.kron(&to_left).mul(e.block(Letter::Dual, Letter::V)).mul(&to_right.kron(&id));
    let dv_want = reindex(h.r_inv(), &|j, k, i, l| (at(k, l), at(j, i)));
    rep.push(Check::matrices("ext': V* x V block", &dv, &dv_want));
    let dd = to_left.kron(&to_left).mul(e.block(Letter::Dual, Letter::Dual)).mul(&to_right.kron(&to_right));
    rep.push(Check::matrices("ext': V* x V* block", &dd, e.block(Letter::Dual, Letter::Dual)));
    rep
}

/// Invariance of the four structure maps, naive-pairing failure witness,
/// (trans), (l-form)/(l-form2), (ext′) and YBE, as one report.
pub fn category_report(h: &HeckeSymmetry) -> Report {
    let e = ExtendedBraiding::new(h);
    let p = Pairings::new(h);
    let w = |s: &str| -> MixedWord { s.parse().expect("literal word") };
    let mut rep = Report::new();
    rep.extend("", e.verify_ybe());
    rep.push(p.check_left_basis());
    rep.extend("A1 right pairing: ", check_invariance(&e, &p.right, &w("VV*"), &w("K")));
    rep.extend("A2 left pairing: ", check_invariance(&e, &p.left, &w("V*V"), &w("K")));
    rep.extend("B1 right copairing: ", check_invariance(&e, &p.pi_right, &w("K"), &w("V*V")));
    rep.extend("B2 left copairing: ", check_invariance(&e, &p.pi_left, &w("K"), &w("VV*")));
    rep.extend("trans: ", check_invariance(&e, &transposition_map(h), &w("VV*"), &w("V*V")));
    let (l1, l2) = l_form_checks(&e, &p);
    rep.push(l1);
    if h.is_involutive() {
        rep.push(l2);
    } else {
        // must fail: R is not involutive
        let ok = !l2.passed();
        rep.push(Check::from_bool("l-form2 fails (non-involutive witness)", ok, || "l-form2 commutes".into()));
    }
    rep.extend("", ext_prime_check(h, &e, &p));
    rep
}

/// Tr_R(F) = ν⁻¹ Tr(F·C).
pub fn r_trace(h: &HeckeSymmetry, f: &QMatrix) -> QScalar {
    f.mul(h.c()).trace() * h.nu().recip().expect("ν ≠ 0")
}

/// q^{m−n} with m − n read from ν.
fn balanced_factor(h: &HeckeSymmetry) -> Result<QScalar, CategoryError> {
    let d = h.superdimension_shift().ok_or_else(|| CategoryError::NotMonomial(h.nu().to_string()))?;
    Ok(h.q_pow(d))
}

/// q^{m−n} Tr(F·C): the normalization under which dim_R V_λ is a
/// principally specialized Schur function.
pub fn r_trace_balanced(h: &HeckeSymmetry, f: &QMatrix) -> Result<QScalar, CategoryError> {
    Ok(f.mul(h.c()).trace() * balanced_factor(h)?)
}

/// q^{k(m−n)} Tr(C₁…C_k E^λ_a), checked equal over all tableaux.
pub fn r_dimension(h: &HeckeSymmetry, lambda: &Partition) -> Result<QScalar, CategoryError> {
    let k = lambda.weight();
    if k == 0 {
        return Ok(QScalar::one());
    }
    let factor = balanced_factor(h)?.pow(k as i32);
    let mut ck = h.c().clone();
    for _ in 1..k {
        ck = ck.kron(h.c());
    }
    let mut b = IdempotentBuilder::new(h);
    let mut values = Vec::new();
    for t in standard_tableaux(lambda) {
        let e = b.idempotent(&t)?;
        values.push(ck.mul(&e).trace() * &factor);
    }
    if values.iter().any(|v| v != &values[0]) {
        return Err(CategoryError::TableauDependent {
            shape: lambda.to_string(),
            values: values.iter().map(|v| v.to_string()).collect(),
        });
    }
    Ok(values.swap_remove(0))
}
