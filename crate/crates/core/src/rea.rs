//! The reflection equation algebra at the level of its low homogeneous
//! components: the operator Q on 𝔏₂, the projectors built from it, the
//! q-symmetrizer S⁽³⁾ on 𝔏₃, and dimension counts.
//!
//! 𝔏_k is coordinatized by the matrix elements of L̄₁L̄₂…L̄_k. A map acting by
//! L̄₁…L̄_k ↦ A·(L̄₁…L̄_k)·B is written A∘B; its coordinate matrix is Aᵀ⊗B and
//! (A₁∘B₁)(A₂∘B₂) = (A₂A₁)∘(B₁B₂).

use num_rational::BigRational;
use thiserror::Error;

use crate::hecke::HeckeSymmetry;
use crate::linalg::{rank_rows, LinalgError, QMatrix};
use crate::report::{Check, Report};
use crate::scalar::{qint, QScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReaError {
    #[error("identity fails: {0}")]
    Identity(String),
    #[error("order {0} is not supported; only 2 and 3")]
    Order(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Σ_t A_t∘B_t with A_t, B_t acting on N^k.
#[derive(Debug, Clone)]
pub struct ConjOp {
    dim: usize,
    terms: Vec<(QMatrix, QMatrix)>,
}

type SparseVec = Vec<(usize, QScalar)>;

fn flatten(m: &QMatrix) -> SparseVec {
    let c = m.cols();
    let mut v: SparseVec = m.entries().map(|(r, col, v)| (r * c + col, v.clone())).collect();
    v.sort_by_key(|e| e.0);
    v
}

fn axpy(y: &SparseVec, a: &QScalar, x: &SparseVec) -> SparseVec {
    // y − a·x, both sorted
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        if j == x.len() || (i < y.len() && y[i].0 < x[j].0) {
            out.push(y[i].clone());
            i += 1;
        } else if i == y.len() || x[j].0 < y[i].0 {
            out.push((x[j].0, -(a * &x[j].1)));
            j += 1;
        } else {
            let v = &y[i].1 - &(a * &x[j].1);
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl ConjOp {
    pub fn zero(dim: usize) -> Self {
        ConjOp { dim, terms: Vec::new() }
    }

    pub fn identity(dim: usize) -> Self {
        Self::pair(QMatrix::identity(dim), QMatrix::identity(dim))
    }

    pub fn pair(a: QMatrix, b: QMatrix) -> Self {
        ConjOp { dim: a.rows(), terms: vec![(a, b)] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, s: &QScalar) -> Self {
        ConjOp { dim: self.dim, terms: self.terms.iter().map(|(a, b)| (a.clone(), b.scale(s))).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        ConjOp { dim: self.dim, terms }.compress()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-QScalar::one()))
    }

    /// self ∘ other: other acts first.
    pub fn then_after(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a1, b1) in &self.terms {
            for (a2, b2) in &other.terms {
                terms.push((a2.mul(a1), b1.mul(b2)));
            }
        }
        ConjOp { dim: self.dim, terms }.compress()
    }

    /// Rewrites the sum over linearly independent left factors.
    pub fn compress(&self) -> Self {
        let n = self.dim;
        // row i has pivot 1 and vanishes at the pivots of rows 0..i
        let mut basis: Vec<(usize, SparseVec)> = Vec::new();
        let mut rights: Vec<QMatrix> = Vec::new();
        for (a, b) in &self.terms {
            let mut v = flatten(a);
            for (i, (p, row)) in basis.iter().enumerate() {
                if let Ok(k) = v.binary_search_by_key(p, |e| e.0) {
                    let c = v[k].1.clone();
                    v = axpy(&v, &c, row);
                    rights[i] = rights[i].add(&b.scale(&c));
                }
            }
            if let Some((p, lead)) = v.first().cloned() {
                let inv = lead.recip().expect("nonzero pivot");
                basis.push((p, v.into_iter().map(|(j, x)| (j, &x * &inv)).collect()));
                rights.push(b.scale(&lead));
            }
        }
        let terms = basis
            .into_iter()
            .zip(rights)
            .filter(|(_, b)| !b.is_zero())
            .map(|((_, row), b)| (QMatrix::from_entries(n, n, row.into_iter().map(|(j, v)| (j / n, j % n, v))), b))
            .collect();
        ConjOp { dim: n, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.compress().terms.is_empty()
    }

    pub fn eq_op(&self, o: &Self) -> bool {
        self.sub(o).terms.is_empty()
    }

    /// Σ Aᵀ⊗B.
    pub fn to_matrix(&self) -> QMatrix {
        let d = self.dim * self.dim;
        let mut acc = QMatrix::zeros(d, d);
        for (a, b) in &self.terms {
            acc = acc.add(&a.transpose().kron(b));
        }
        acc
    }

    pub fn eval_at(&self, q0: &BigRational) -> Result<Self, LinalgError> {
        let terms =
            self.terms.iter().map(|(a, b)| Ok((a.eval_at(q0)?, b.eval_at(q0)?))).collect::<Result<Vec<_>, LinalgError>>()?;
        Ok(ConjOp { dim: self.dim, terms })
    }

    fn is_constant(&self) -> bool {
        self.terms.iter().all(|(a, b)| a.is_constant() && b.is_constant())
    }

    /// Generic rank, materializing only rational matrices.
    pub fn rank_generic(&self, points: &[BigRational]) -> Result<usize, LinalgError> {
        if self.is_constant() {
            return self.to_matrix().rank_generic(&[]);
        }
        let ranks =
            points.iter().map(|p| self.eval_at(p)?.to_matrix().rank_generic(&[])).collect::<Result<Vec<_>, LinalgError>>()?;
        match ranks.first() {
            Some(&r) if ranks.iter().all(|&x| x == r) => Ok(r),
            Some(_) => Err(LinalgError::Genericity(format!("ranks {ranks:?} at the sample points"))),
            None => Err(LinalgError::Genericity("no sample points".into())),
        }
    }
}

/// Projectors and operators of the REA on 𝔏₂ and 𝔏₃.
#[derive(Debug, Clone)]
pub struct ReaStructure {
    h: HeckeSymmetry,
    rbar: QMatrix,
    rbar_inv: QMatrix,
    /// P₊(R) = (q⁻¹I + R̄)/2_q and P₋(R) = (qI − R̄)/2_q on V⊗V.
    p_plus: QMatrix,
    p_minus: QMatrix,
    q_op: QMatrix,
    p_mq2: QMatrix,
    p_one: QMatrix,
    p_mqm2: QMatrix,
    s: QMatrix,
    a: QMatrix,
    s1: ConjOp,
    s2: ConjOp,
    s3: ConjOp,
    s3_alt: ConjOp,
}

/// xyxyx − a·xyx + b·x.
fn quintic(x: &ConjOp, y: &ConjOp, a: &QScalar, b: &QScalar) -> ConjOp {
    let xyx = x.then_after(y).then_after(x);
    xyx.then_after(y).then_after(x).sub(&xyx.scale(a)).add(&x.scale(b))
}

fn conj2(a: &QMatrix, b: &QMatrix) -> QMatrix {
    a.transpose().kron(b)
}

impl ReaStructure {
    pub fn new(h: &HeckeSymmetry) -> Self {
        let n = h.dim();
        let rbar = h.r().transpose().with_square_legs(vec![n, n]);
        let rbar_inv = h.r_inv().transpose().with_square_legs(vec![n, n]);
        let two_q = h.at_q(&qint(2));
        let inv2 = two_q.recip().expect("2_q ≠ 0");
        let q = h.q().clone();
        let qi = q.recip().expect("q ≠ 0");
        let p_plus = rbar.add_scalar(&qi).scale(&inv2);
        let p_minus = rbar.neg().add_scalar(&q).scale(&inv2);
        let q_op = conj2(&rbar, &rbar_inv);
        let p_mq2 = conj2(&p_plus, &p_minus);
        let p_mqm2 = conj2(&p_minus, &p_plus);
        let p_one = conj2(&p_plus, &p_plus).add(&conj2(&p_minus, &p_minus));
        let s = p_one.clone();
        let a = p_mq2.add(&p_mqm2);

        let amp = |m: &QMatrix, i: usize| QMatrix::amplify(m, i, 3, n).expect("position").with_square_legs(vec![n; 3]);
        let sym = |i: usize| {
            let (pp, pm) = (amp(&p_plus, i), amp(&p_minus, i));
            ConjOp::pair(pp.clone(), pp).add(&ConjOp::pair(pm.clone(), pm))
        };
        let s1 = sym(1);
        let s2 = sym(2);
        let (alpha, beta) = Self::five_rel_constants(h);
        let norm = h.at_q(&(qint(2).pow(6) * (QScalar::from_int(4) * qint(3).pow(2)).recip().expect("nonzero")));
        let s3 = quintic(&s1, &s2, &alpha, &beta).scale(&norm);
        let s3_alt = quintic(&s2, &s1, &alpha, &beta).scale(&norm);
        ReaStructure {
            h: h.clone(),
            rbar,
            rbar_inv,
            p_plus,
            p_minus,
            q_op,
            p_mq2,
            p_one,
            p_mqm2,
            s,
            a,
            s1,
            s2,
            s3,
            s3_alt,
        }
    }

    /// a = (q⁴+q²+4+q⁻²+q⁻⁴)/2_q⁴ and b = (4_q)²/2_q⁸, in the regime of `h`.
    pub fn five_rel_constants(h: &HeckeSymmetry) -> (QScalar, QScalar) {
        let (a, b) = five_rel_constants_symbolic();
        (h.at_q(&a), h.at_q(&b))
    }

    pub fn symmetry(&self) -> &HeckeSymmetry {
        &self.h
    }
    pub fn rbar(&self) -> &QMatrix {
        &self.rbar
    }
    pub fn p_plus(&self) -> &QMatrix {
        &self.p_plus
    }
    pub fn p_minus(&self) -> &QMatrix {
        &self.p_minus
    }
    pub fn q_operator(&self) -> &QMatrix {
        &self.q_op
    }
    pub fn s(&self) -> &QMatrix {
        &self.s
    }
    pub fn a(&self) -> &QMatrix {
        &self.a
    }
    pub fn s3(&self) -> &ConjOp {
        &self.s3
    }
    pub fn s1(&self) -> &ConjOp {
        &self.s1
    }
    pub fn s2(&self) -> &ConjOp {
        &self.s2
    }

    /// S₁S₂S₁S₂S₁ − aS₁S₂S₁ + bS₁ minus the same with 1 and 2 exchanged.
    pub fn five_rel_residual(&self, a: &QScalar, b: &QScalar) -> ConjOp {
        quintic(&self.s1, &self.s2, a, b).sub(&quintic(&self.s2, &self.s1, a, b))
    }

    /// (−q², P^{(−q²)}), (1, P^{(1)}), (−q⁻², P^{(−q⁻²)}).
    pub fn eigenprojectors(&self) -> [(QScalar, &QMatrix); 3] {
        let q2 = self.h.q_pow(2);
        let qm2 = self.h.q_pow(-2);
        [(-q2, &self.p_mq2), (QScalar::one(), &self.p_one), (-qm2, &self.p_mqm2)]
    }

    /// Every invariant of the 𝔏₂ and 𝔏₃ calculus as one report.
    pub fn verify(&self) -> Report {
        let n = self.h.dim();
        let d2 = n.pow(4);
        let id = QMatrix::identity(d2);
        let q = &self.q_op;
        let mut rep = Report::new();

        let q2 = self.h.q_pow(2);
        let qm2 = self.h.q_pow(-2);
        let cubic = q.add_scalar(&q2).mul(&q.add_scalar(&qm2)).mul(&q.add_scalar(&-QScalar::one()));
        rep.push(Check::from_bool("Q-ch: (Q+q^2)(Q+q^-2)(Q-1) = 0", cubic.is_zero(), || format!("{} nonzero entries", cubic.nnz())));
        let c = &(&q2 - &QScalar::one()) + &qm2;
        let q_inv = q.mul(q).add(&q.scale(&c)).add_scalar(&-c.clone());
        rep.push(Check::matrices("Q^-1 = Q^2 + (q^2-1+q^-2)(Q - I)", &q.mul(&q_inv), &id));

        let amp = |m: &QMatrix, i: usize| QMatrix::amplify(m, i, 3, n).expect("position").with_square_legs(vec![n; 3]);
        let q1 = ConjOp::pair(amp(&self.rbar, 1), amp(&self.rbar_inv, 1));
        let q2op = ConjOp::pair(amp(&self.rbar, 2), amp(&self.rbar_inv, 2));
        let lhs = q1.then_after(&q2op).then_after(&q1);
        let rhs = q2op.then_after(&q1).then_after(&q2op);
        rep.push(Check::from_bool("Q-yb: Q1 Q2 Q1 = Q2 Q1 Q2", lhs.eq_op(&rhs), || "operators differ".into()));

        let projs = self.eigenprojectors();
        let mut sum = QMatrix::zeros(d2, d2);
        for (i, (ev, p)) in projs.iter().enumerate() {
            sum = sum.add(p);
            rep.push(Check::matrices(format!("Q P^({ev}) = {ev} P^({ev})"), &q.mul(p), &p.scale(ev)));
            rep.push(Check::matrices(format!("P^({ev}) Q = {ev} P^({ev})"), &p.mul(q), &p.scale(ev)));
            for (j, (ev2, p2)) in projs.iter().enumerate() {
                let prod = p.mul(p2);
                let want = if i == j { (*p).clone() } else { QMatrix::zeros(d2, d2) };
                rep.push(Check::matrices(format!("P^({ev}) P^({ev2})"), &prod, &want));
            }
        }
        rep.push(Check::matrices("sum of P^(a) = I", &sum, &id));
        rep.push(Check::matrices("S + A = I", &self.s.add(&self.a), &id));
        rep.push(Check::from_bool("S A = A S = 0", self.s.mul(&self.a).is_zero() && self.a.mul(&self.s).is_zero(), || {
            "nonzero product".into()
        }));
        let two_q = self.h.at_q(&qint(2));
        let inv = (&two_q * &two_q).recip().expect("nonzero");
        let s_from_q = id.scale(&(&q2 + &qm2)).add(q).add(&q_inv).scale(&inv);
        let a_from_q = id.scale(&QScalar::from_int(2)).sub(q).sub(&q_inv).scale(&inv);
        rep.push(Check::matrices("s-Q: S from Q", &self.s, &s_from_q));
        rep.push(Check::matrices("s-Q: A from Q", &self.a, &a_from_q));
        let (alpha, beta) = Self::five_rel_constants(&self.h);
        let five = self.five_rel_residual(&alpha, &beta);
        rep.push(Check::from_bool("5-rel", five.is_zero(), || format!("{} independent residual terms", five.num_terms())));
        rep.push(Check::from_bool("3-symtr = 3-symtr2", self.s3.eq_op(&self.s3_alt), || "the two forms differ".into()));
        rep.push(Check::from_bool("S3^2 = S3", self.s3.then_after(&self.s3).eq_op(&self.s3), || "not idempotent".into()));
        rep.push(Check::from_bool("S1 S3 = S3 = S2 S3", self.s1.then_after(&self.s3).eq_op(&self.s3) && self.s2.then_after(&self.s3).eq_op(&self.s3), || {
            "S3 image not inside Im S1 and Im S2".into()
        }));
        rep
    }
}

/// The constants a and b of the fifth-order relation, at symbolic q.
pub fn five_rel_constants_symbolic() -> (QScalar, QScalar) {
    let two4 = qint(2).pow(4);
    let a = (QScalar::q_pow(4) + QScalar::q_pow(2) + QScalar::from_int(4) + QScalar::q_pow(-2) + QScalar::q_pow(-4))
        * two4.recip().expect("nonzero");
    let b = qint(4).pow(2) * qint(2).pow(8).recip().expect("nonzero");
    (a, b)
}

/// Builds the structure and fails on the first broken invariant.
pub fn build_rea(h: &HeckeSymmetry) -> Result<ReaStructure, ReaError> {
    let rea = ReaStructure::new(h);
    let rep = rea.verify();
    if let Some(c) = rep.failures().next() {
        return Err(ReaError::Identity(format!("{}: {}", c.name, c.detail.clone().unwrap_or_default())));
    }
    Ok(rea)
}

/// dim of the degree-k part of the super-symmetric algebra on `even|odd` generators.
pub fn super_symmetric_power_dim(even: usize, odd: usize, k: usize) -> usize {
    let binom = |a: usize, b: usize| -> usize {
        if b > a {
            return 0;
        }
        (0..b).fold(1usize, |acc, i| acc * (a - i) / (i + 1))
    };
    (0..=k.min(odd)).map(|j| if even == 0 { usize::from(k == j) * binom(odd, j) } else { binom(even + k - j - 1, k - j) * binom(odd, j) }).sum()
}

/// Dimensions of the k-th component and of its classical counterpart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentDims {
    pub generic: usize,
    pub classical: usize,
}

/// rank S (k = 2) or rank S⁽³⁾ (k = 3) at generic q, against the same
/// construction at q = 1 (generic regime) or the super-symmetric count of
/// End(V) (involutive regime with known bi-rank).
pub fn component_dims(h: &HeckeSymmetry, k: usize, points: &[BigRational]) -> Result<ComponentDims, ReaError> {
    let rank_of = |rea: &ReaStructure, pts: &[BigRational]| -> Result<usize, ReaError> {
        match k {
            2 => Ok(rea.s.rank_generic(pts)?),
            3 => Ok(rea.s3.rank_generic(pts)?),
            _ => Err(ReaError::Order(k)),
        }
    };
    let rea = ReaStructure::new(h);
    let generic = rank_of(&rea, points)?;
    let classical = if h.is_involutive() {
        match h.birank() {
            Some((m, n)) => super_symmetric_power_dim(m * m + n * n, 2 * m * n, k),
            None => generic,
        }
    } else {
        let limit = h.r().eval_at(&BigRational::from_integer(1.into()))?;
        let h1 = HeckeSymmetry::load(limit).map_err(|e| ReaError::Identity(format!("q = 1 limit: {e}")))?;
        rank_of(&ReaStructure::new(&h1), &[])?
    };
    Ok(ComponentDims { generic, classical })
}

/// Matrix-valued linear forms: an N²×N² matrix whose entries are vectors of
/// length `width`, stored with row A·N² + B.
/// L̄₁ = L⊗I with L_i^j = l_i^j at generator index i·N + j.
pub fn lbar1_forms(n: usize) -> QMatrix {
    let d = n * n;
    QMatrix::from_entries(
        d * d,
        d,
        (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |a| ((i * n + a) * d + j * n + a, i * n + j, QScalar::one())))),
    )
}

/// X·F·Y for a matrix of forms F.
pub fn conjugate_forms(x: &QMatrix, forms: &QMatrix, y: &QMatrix) -> QMatrix {
    let d = x.rows();
    let xt = x.transpose();
    let mut e = Vec::new();
    for s in 0..d {
        for t in 0..d {
            let row = forms.row(s * d + t);
            if row.is_empty() {
                continue;
            }
            for (r, xv) in xt.row(s) {
                for (c, yv) in y.row(t) {
                    let f = xv * yv;
                    for (gi, v) in row {
                        e.push((r * d + c, *gi, &f * v));
                    }
                }
            }
        }
    }
    QMatrix::from_entries(d * d, forms.cols(), e)
}

/// T: row A·N² + B holds (L̄₁L̄₂)[A,B] in naive monomial coordinates
/// l_g l_h at g·N² + h.
pub fn lbar_basis(rea: &ReaStructure) -> QMatrix {
    let d = rea.h.dim().pow(2);
    let lbar1 = lbar1_forms(rea.h.dim());
    let lbar2 = conjugate_forms(&rea.rbar, &lbar1, &rea.rbar_inv);
    let mut e = Vec::new();
    for a in 0..d {
        for c in 0..d {
            let f1 = lbar1.row(a * d + c);
            if f1.is_empty() {
                continue;
            }
            for b in 0..d {
                for (g1, v1) in f1 {
                    for (g2, v2) in lbar2.row(c * d + b) {
                        e.push((a * d + b, g1 * d + g2, v1 * v2));
                    }
                }
            }
        }
    }
    QMatrix::from_entries(d * d, d * d, e)
}

fn lbar_products(rea: &ReaStructure) -> (QMatrix, QMatrix) {
    let t = lbar_basis(rea);
    let conjugated = conjugate_forms(&rea.rbar, &t, &rea.rbar_inv);
    (t, conjugated)
}

/// Span(ℐ₋) = Im 𝒜 inside 𝔏₂, compared in naive monomial coordinates.
pub fn ideal_span_check(rea: &ReaStructure, points: &[BigRational]) -> Result<Report, ReaError> {
    let (t, conjugated) = lbar_products(rea);
    let d2 = t.rows();
    let mut rep = Report::new();
    let t_rank = t.rank_generic(points)?;
    rep.push(Check::from_bool("L-bar basis change is invertible", t_rank == d2, || format!("rank {t_rank} of {d2}")));
    let ideal = t.sub(&conjugated);
    // column v of A is the element Σ v_r e_r, i.e. row v·T
    let im_a = rea.a.transpose().mul(&t);
    let r_ideal = ideal.rank_generic(points)?;
    let r_a = im_a.rank_generic(points)?;
    let stacked = QMatrix::from_entries(
        2 * d2,
        t.cols(),
        ideal.entries().map(|(r, c, v)| (r, c, v.clone())).chain(im_a.entries().map(|(r, c, v)| (r + d2, c, v.clone()))),
    );
    let r_both = stacked.rank_generic(points)?;
    rep.push(Check::from_bool("Span(I-) = Im A", r_ideal == r_a && r_a == r_both, || {
        format!("rank I- = {r_ideal}, rank A = {r_a}, rank of both = {r_both}")
    }));
    Ok(rep)
}

/// rank S⁽³⁾ = dim(Im S₁ ∩ Im S₂), by generic ranks.
pub fn sandwich_rank_check(rea: &ReaStructure, points: &[BigRational]) -> Result<Check, ReaError> {
    let specs: Vec<Option<BigRational>> =
        if rea.h.q().is_constant() { vec![None] } else { points.iter().cloned().map(Some).collect() };
    let mut bad = Vec::new();
    for p in specs {
        let at = |op: &ConjOp| -> Result<QMatrix, LinalgError> {
            match &p {
                Some(q0) => Ok(op.eval_at(q0)?.to_matrix()),
                None => Ok(op.to_matrix()),
            }
        };
        let (m1, m2, m3) = (at(&rea.s1)?, at(&rea.s2)?, at(&rea.s3)?);
        let rows = |m: &QMatrix| -> Vec<Vec<(usize, BigRational)>> {
            m.transpose()
                .entries()
                .fold(vec![Vec::new(); m.cols()], |mut acc, (r, c, v)| {
                    acc[r].push((c, v.as_constant().expect("rational")));
                    acc
                })
        };
        let r1 = rank_rows(rows(&m1));
        let r2 = rank_rows(rows(&m2));
        let mut both = rows(&m1);
        both.extend(rows(&m2));
        let r12 = rank_rows(both);
        let r3 = rank_rows(rows(&m3));
        if r3 != r1 + r2 - r12 {
            bad.push(format!("rank S3 = {r3}, dim(Im S1 ∩ Im S2) = {}", r1 + r2 - r12));
        }
    }
    Ok(Check::from_bool("rank S3 = dim(Im S1 ∩ Im S2)", bad.is_empty(), || bad.join("; ")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::default_sample_points;
    use crate::scalar::rat;

    #[test]
    fn constants_at_one() {
        let (a, b) = five_rel_constants_symbolic();
        assert_eq!(a.eval_at(&rat(1, 1)).unwrap(), rat(1, 2));
        assert_eq!(b.eval_at(&rat(1, 1)).unwrap(), rat(1, 16));
    }

    #[test]
    fn conj_op_compression() {
        let h = HeckeSymmetry::standard(2);
        let r = h.r().clone();
        let i = QMatrix::identity(4);
        let op = ConjOp::pair(r.clone(), i.clone()).add(&ConjOp::pair(r.scale(&QScalar::from_int(2)), i.clone()));
        assert_eq!(op.num_terms(), 1);
        let zero = ConjOp::pair(r.clone(), i.clone()).sub(&ConjOp::pair(r.clone(), i.clone()));
        assert!(zero.is_zero());
        // (R∘I)(I∘R) = R∘R
        let prod = ConjOp::pair(r.clone(), i.clone()).then_after(&ConjOp::pair(i.clone(), r.clone()));
        assert!(prod.eq_op(&ConjOp::pair(r.clone(), r.clone())));
        assert_eq!(prod.to_matrix(), conj2(&r, &r));
        // composition matches matrix product of coordinates
        let x = ConjOp::pair(r.clone(), h.r_inv().clone());
        let y = ConjOp::pair(h.r_inv().clone(), r.mul(&r));
        assert_eq!(x.then_after(&y).to_matrix(), x.to_matrix().mul(&y.to_matrix()));
        // three dependent left factors R, R⁻¹, I collapse to two
        let dep = ConjOp::pair(r.clone(), i.clone())
            .add(&ConjOp::pair(h.r_inv().clone(), r.clone()))
            .add(&ConjOp::pair(i.clone(), r.clone()));
        assert!(dep.num_terms() <= 2);
        assert_eq!(
            dep.to_matrix(),
            conj2(&r, &i).add(&conj2(h.r_inv(), &r)).add(&conj2(&i, &r))
        );
    }

    #[test]
    fn standard_two_structure() {
        let h = HeckeSymmetry::standard(2);
        let rea = build_rea(&h).unwrap();
        let pts = default_sample_points();
        for (_, p) in rea.eigenprojectors() {
            assert!(p.rank_generic(&pts).unwrap() > 0);
        }
        assert!(rea.s().mul(rea.a()).is_zero());
        assert!(sandwich_rank_check(&rea, &pts).unwrap().passed());
        let rep = ideal_span_check(&rea, &pts).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn involutive_structures() {
        for h in [HeckeSymmetry::load(crate::linalg::flip(2)).unwrap(), HeckeSymmetry::super_flip(1, 1)] {
            let rea = build_rea(&h).unwrap();
            let rep = ideal_span_check(&rea, &[]).unwrap();
            assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn dimension_counts() {
        let pts = default_sample_points();
        let h = HeckeSymmetry::standard(2);
        assert_eq!(component_dims(&h, 2, &pts).unwrap(), ComponentDims { generic: 10, classical: 10 });
        assert_eq!(component_dims(&h, 3, &pts).unwrap(), ComponentDims { generic: 20, classical: 20 });
        let sf = HeckeSymmetry::super_flip(1, 1).with_birank((1, 1));
        let d = component_dims(&sf, 2, &pts).unwrap();
        assert_eq!(d.generic, d.classical);
        assert_eq!(d.classical, 8);
        assert!(matches!(component_dims(&h, 4, &pts), Err(ReaError::Order(4))));
    }

    #[test]
    fn super_symmetric_counts() {
        assert_eq!(super_symmetric_power_dim(4, 0, 2), 10);
        assert_eq!(super_symmetric_power_dim(4, 0, 3), 20);
        assert_eq!(super_symmetric_power_dim(2, 2, 2), 8);
        assert_eq!(super_symmetric_power_dim(2, 2, 3), 12);
        assert_eq!(super_symmetric_power_dim(0, 2, 2), 1);
    }
}
