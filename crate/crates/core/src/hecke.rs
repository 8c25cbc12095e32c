//! Hecke symmetries: construction, certification, the skew-inverse Ψ and
//! the operators B = Tr₁Ψ, C = Tr₂Ψ.

use num_rational::BigRational;
use thiserror::Error;

use crate::linalg::{flip, LinalgError, QMatrix};
use crate::report::{Check, Report};
use crate::scalar::{qint, QScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error("expected an N²×N² matrix, got {0}x{1}")]
    Shape(usize, usize),
    #[error("Yang-Baxter equation fails: {0}")]
    YangBaxter(String),
    #[error("Hecke condition fails: {0}")]
    HeckeCondition(String),
    #[error("not skew-invertible: the partial transpose of R is singular")]
    NotSkewInvertible,
    #[error("skew-inverse identity fails: {0}")]
    SkewIdentity(String),
    #[error("not strictly skew-invertible: {0}")]
    NotStrictlySkewInvertible(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Whether q is the free parameter or fixed to a number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Symbolic q, or a specialization at a generic rational point.
    Generic,
    /// R² = I, certified at q = 1.
    Involutive,
}

/// A certified Hecke symmetry R: V⊗V → V⊗V.
#[derive(Debug, Clone)]
pub struct HeckeSymmetry {
    n: usize,
    r: QMatrix,
    r_inv: QMatrix,
    psi: QMatrix,
    b: QMatrix,
    c: QMatrix,
    nu: QScalar,
    q: QScalar,
    regime: Regime,
    birank: Option<(usize, usize)>,
    label: String,
}

impl HeckeSymmetry {
    /// Certifies `r` against all invariants with Hecke parameter `q`.
    pub fn certify(r: QMatrix, q: QScalar, regime: Regime, label: impl Into<String>) -> Result<Self, HeckeError> {
        let n = (r.rows() as f64).sqrt().round() as usize;
        if n * n != r.rows() || !r.is_square() || n == 0 {
            return Err(HeckeError::Shape(r.rows(), r.cols()));
        }
        let r = r.with_square_legs(vec![n, n]);
        let r12 = QMatrix::amplify(&r, 1, 3, n)?;
        let r23 = QMatrix::amplify(&r, 2, 3, n)?;
        let lhs = r12.mul(&r23).mul(&r12);
        let rhs = r23.mul(&r12).mul(&r23);
        if let Some((i, j, a, b)) = lhs.first_difference(&rhs) {
            return Err(HeckeError::YangBaxter(format!("R12R23R12 vs R23R12R23 at ({}, {}): {a} vs {b}", i + 1, j + 1)));
        }
        let qinv = q.recip().map_err(LinalgError::from)?;
        let hecke = r.add_scalar(&-&q).mul(&r.add_scalar(&qinv));
        if let Some((i, j, v)) = hecke.entries().next() {
            return Err(HeckeError::HeckeCondition(format!("(R-q)(R+1/q) has entry {v} at ({}, {})", i + 1, j + 1)));
        }
        let psi = skew_inverse(&r, n)?;
        let p = flip(n);
        let psi23 = QMatrix::amplify(&psi, 2, 3, n)?;
        let psi12 = QMatrix::amplify(&psi, 1, 3, n)?;
        let t1 = r12.mul(&psi23).partial_trace(&[1])?;
        let t2 = psi12.mul(&r23).partial_trace(&[1])?;
        for (name, t) in [("Tr2 R12 Psi23", &t1), ("Tr2 Psi12 R23", &t2)] {
            if let Some((i, j, a, b)) = t.first_difference(&p) {
                return Err(HeckeError::SkewIdentity(format!("{name} vs P13 at ({}, {}): {a} vs {b}", i + 1, j + 1)));
            }
        }
        let b = psi.partial_trace(&[0])?;
        let c = psi.partial_trace(&[1])?;
        let bc = b.mul(&c);
        let nu = bc.as_scalar().ok_or_else(|| HeckeError::NotStrictlySkewInvertible("BC is not scalar".into()))?;
        if nu.is_zero() {
            return Err(HeckeError::NotStrictlySkewInvertible("BC = 0".into()));
        }
        if c.mul(&b) != bc {
            return Err(HeckeError::NotStrictlySkewInvertible("BC differs from CB".into()));
        }
        let r_inv = r.add_scalar(&-(&q - &qinv));
        Ok(HeckeSymmetry { n, r, r_inv, psi, b, c, nu, q, regime, birank: None, label: label.into() })
    }

    /// Drinfeld–Jimbo R_q = Σ q^{δij} h_i^j⊗h_j^i + (q−q⁻¹) Σ_{i<j} h_i^i⊗h_j^j.
    pub fn standard(m: usize) -> Self {
        assert!(m >= 1, "standard_R needs m >= 1");
        Self::certify(standard_r_matrix(m), QScalar::q(), Regime::Generic, format!("standard({m})"))
            .expect("standard R is a Hecke symmetry")
    }

    /// Signed flip on the Z₂-graded space with m even and n odd basis vectors.
    pub fn super_flip(m: usize, n: usize) -> Self {
        assert!(m + n >= 1, "super_flip needs m + n >= 1");
        Self::certify(super_flip_matrix(m, n), QScalar::one(), Regime::Involutive, format!("superflip({m},{n})"))
            .expect("super flip is an involutive Hecke symmetry")
    }

    /// Certifies a user matrix: constant matrices are treated as involutive
    /// (q = 1), all others at symbolic q.
    pub fn load(r: QMatrix) -> Result<Self, HeckeError> {
        if r.is_constant() {
            Self::certify(r, QScalar::one(), Regime::Involutive, "file")
        } else {
            Self::certify(r, QScalar::q(), Regime::Generic, "file")
        }
    }

    pub fn load_json(v: &serde_json::Value) -> Result<Self, HeckeError> {
        Self::load(QMatrix::from_json(v)?)
    }

    /// All data evaluated at q = q0 (generic regime only).
    pub fn specialize(&self, q0: &BigRational) -> Result<Self, HeckeError> {
        if self.regime == Regime::Involutive || self.q.is_constant() {
            return Ok(self.clone());
        }
        Ok(HeckeSymmetry {
            n: self.n,
            r: self.r.eval_at(q0)?,
            r_inv: self.r_inv.eval_at(q0)?,
            psi: self.psi.eval_at(q0)?,
            b: self.b.eval_at(q0)?,
            c: self.c.eval_at(q0)?,
            nu: self.nu.specialize(q0).map_err(LinalgError::from)?,
            q: QScalar::from_rational(q0.clone()),
            regime: Regime::Generic,
            birank: self.birank,
            label: format!("{}@q={q0}", self.label),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }
    pub fn r(&self) -> &QMatrix {
        &self.r
    }
    pub fn r_inv(&self) -> &QMatrix {
        &self.r_inv
    }
    pub fn psi(&self) -> &QMatrix {
        &self.psi
    }
    pub fn b(&self) -> &QMatrix {
        &self.b
    }
    pub fn c(&self) -> &QMatrix {
        &self.c
    }
    pub fn nu(&self) -> &QScalar {
        &self.nu
    }
    /// The Hecke parameter: q itself, or its fixed value.
    pub fn q(&self) -> &QScalar {
        &self.q
    }
    pub fn omega(&self) -> QScalar {
        &self.q - &self.q.recip().expect("q nonzero")
    }
    pub fn regime(&self) -> Regime {
        self.regime
    }
    pub fn is_involutive(&self) -> bool {
        self.regime == Regime::Involutive
    }
    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn birank(&self) -> Option<(usize, usize)> {
        self.birank
    }
    pub fn set_birank(&mut self, birank: (usize, usize)) {
        self.birank = Some(birank);
    }
    pub fn with_birank(mut self, birank: (usize, usize)) -> Self {
        self.birank = Some(birank);
        self
    }

    /// Reads a q-formula in this symmetry's regime.
    pub fn at_q(&self, s: &QScalar) -> QScalar {
        match self.q.as_constant() {
            Some(q0) => s.specialize(&q0).expect("formula regular at the fixed q"),
            None => s.clone(),
        }
    }

    /// q^e in this regime.
    pub fn q_pow(&self, e: i32) -> QScalar {
        self.q.pow(e)
    }

    /// m − n read off ν = q^{2(n−m)}; zero in the involutive regime.
    pub fn superdimension_shift(&self) -> Option<i32> {
        if self.is_involutive() {
            return Some(0);
        }
        let (c, e) = self.nu.as_monomial()?;
        (c == BigRational::from_integer(1.into()) && e % 2 == 0).then_some(-e / 2)
    }

    /// R_i = id^{⊗(i−1)} ⊗ R ⊗ id on V^{⊗k}.
    pub fn r_at(&self, i: usize, k: usize) -> QMatrix {
        QMatrix::amplify(&self.r, i, k, self.n).expect("valid position").with_square_legs(vec![self.n; k])
    }

    pub fn r_inv_at(&self, i: usize, k: usize) -> QMatrix {
        QMatrix::amplify(&self.r_inv, i, k, self.n).expect("valid position").with_square_legs(vec![self.n; k])
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.r.to_json()
    }

    /// R₂₁ = P R₁₂ P.
    pub fn r21(&self) -> QMatrix {
        self.r.permute_legs(&[1, 0]).expect("square legs")
    }
}

pub fn standard_r_matrix(m: usize) -> QMatrix {
    let q = QScalar::q();
    let mut e = Vec::new();
    for i in 0..m {
        for j in 0..m {
            e.push((i * m + j, j * m + i, if i == j { q.clone() } else { QScalar::one() }));
            if i < j {
                e.push((i * m + j, i * m + j, QScalar::omega()));
            }
        }
    }
    QMatrix::from_entries(m * m, m * m, e).with_square_legs(vec![m, m])
}

pub fn super_flip_matrix(m: usize, n: usize) -> QMatrix {
    let d = m + n;
    let odd = |i: usize| i >= m;
    let e = (0..d).flat_map(|i| {
        (0..d).map(move |j| (j * d + i, i * d + j, QScalar::from_int(if odd(i) && odd(j) { -1 } else { 1 })))
    });
    QMatrix::from_entries(d * d, d * d, e).with_square_legs(vec![d, d])
}

/// Ψ with R^{ia}_{jb} Ψ^{bl}_{ak} = δ^i_k δ^l_j, from the inverse of the
/// reshuffled matrix M[(i,j),(a,b)] = R^{ia}_{jb}.
pub fn skew_inverse(r: &QMatrix, n: usize) -> Result<QMatrix, HeckeError> {
    let idx = |a: usize, b: usize| a * n + b;
    let m = QMatrix::from_entries(
        n * n,
        n * n,
        r.entries().map(|(row, col, v)| {
            let (i, a) = (row / n, row % n);
            let (j, b) = (col / n, col % n);
            (idx(i, j), idx(a, b), v.clone())
        }),
    );
    let y = m.inverse().map_err(|e| match e {
        LinalgError::Singular => HeckeError::NotSkewInvertible,
        other => HeckeError::Linalg(other),
    })?;
    // Ψ^{bl}_{ak} = Y[(a,b),(k,l)]
    Ok(QMatrix::from_entries(
        n * n,
        n * n,
        y.entries().map(|(row, col, v)| {
            let (a, b) = (row / n, row % n);
            let (k, l) = (col / n, col % n);
            (idx(b, l), idx(a, k), v.clone())
        }),
    )
    .with_square_legs(vec![n, n]))
}

/// q^{n−m}(m−n)_q.
pub fn trace_b_formula(m: usize, n: usize) -> QScalar {
    let d = m as i64 - n as i64;
    QScalar::q_pow(-d as i32) * qint(d)
}

/// Checks every skew-inverse identity; witnesses name the first differing entry.
pub fn verify_skew_identities(h: &HeckeSymmetry) -> Report {
    let n = h.n;
    let mut rep = Report::new();
    let id_n = QMatrix::identity(n);
    let b1 = h.b.kron(&id_n);
    let b2 = id_n.kron(&h.b);
    let c1 = h.c.kron(&id_n);
    let c2 = id_n.kron(&h.c);
    let r = &h.r;
    let r_inv = &h.r_inv;
    let r21 = h.r21();
    let r21_inv = r_inv.permute_legs(&[1, 0]).expect("legs");

    let tr_b = h.b.trace();
    let tr_c = h.c.trace();
    rep.push(Check::scalars("partial trace: Tr B = Tr C", &tr_b, &tr_c));
    rep.push(Check::matrices("partial trace: Tr2 B2 R21 = I", &b2.mul(&r21).with_square_legs(vec![n, n]).partial_trace(&[1]).unwrap(), &id_n));
    rep.push(Check::matrices("partial trace: Tr2 C2 R12 = I", &c2.mul(r).with_square_legs(vec![n, n]).partial_trace(&[1]).unwrap(), &id_n));
    let nu_i = QMatrix::scalar(n, &h.nu);
    rep.push(Check::matrices("BC = nu I", &h.b.mul(&h.c), &nu_i));
    rep.push(Check::matrices("CB = nu I", &h.c.mul(&h.b), &nu_i));
    let bb = h.b.kron(&h.b);
    let cc = h.c.kron(&h.c);
    rep.push(Check::matrices("RTT: R B1 B2 = B1 B2 R", &r.mul(&bb), &bb.mul(r)));
    rep.push(Check::matrices("RTT: R C1 C2 = C1 C2 R", &r.mul(&cc), &cc.mul(r)));
    rep.push(Check::matrices("B, C vs Psi: B1 Psi12 = R21^-1 B2", &b1.mul(&h.psi), &r21_inv.mul(&b2)));
    rep.push(Check::matrices("B, C vs Psi: Psi12 B1 = B2 R21^-1", &h.psi.mul(&b1), &b2.mul(&r21_inv)));
    rep.push(Check::matrices("B, C vs Psi: C2 Psi12 = R21^-1 C1", &c2.mul(&h.psi), &r21_inv.mul(&c1)));
    rep.push(Check::matrices("B, C vs Psi: Psi12 C2 = C1 R21^-1", &h.psi.mul(&c2), &c1.mul(&r21_inv)));
    rep.push(Check::matrices("Hecke inversion: R^-1 = R - omega I", &r.mul(r_inv), &QMatrix::identity(n * n)));

    let mut trrc = Vec::new();
    for a in 0..n {
        for bcol in 0..n {
            let x = QMatrix::from_entries(n, n, [(a, bcol, QScalar::one())]);
            let x1 = x.kron(&id_n);
            let x2 = id_n.kron(&x);
            let tbx = QMatrix::scalar(n, &h.b.mul(&x).trace());
            let tcx = QMatrix::scalar(n, &h.c.mul(&x).trace());
            let legs = |m: QMatrix| m.with_square_legs(vec![n, n]);
            let t1 = legs(b1.mul(r).mul(&x2).mul(r_inv)).partial_trace(&[0]).unwrap();
            let t2 = legs(b1.mul(r_inv).mul(&x2).mul(r)).partial_trace(&[0]).unwrap();
            let t3 = legs(c2.mul(r).mul(&x1).mul(r_inv)).partial_trace(&[1]).unwrap();
            let t4 = legs(c2.mul(r_inv).mul(&x1).mul(r)).partial_trace(&[1]).unwrap();
            for (k, (t, want)) in [(t1, &tbx), (t2, &tbx), (t3, &tcx), (t4, &tcx)].into_iter().enumerate() {
                if &t != want {
                    trrc.push(format!("identity {} fails for X = E({},{})", k + 1, a + 1, bcol + 1));
                }
            }
        }
    }
    rep.push(Check::from_bool("R-trace of R C on all matrix units", trrc.is_empty(), || trrc.join("; ")));

    match h.birank {
        Some((m, nn)) => {
            rep.push(Check::scalars("Tr B = q^(n-m)(m-n)_q", &tr_b, &h.at_q(&trace_b_formula(m, nn))));
            let nu_formula = QScalar::q_pow(2 * (nn as i32 - m as i32));
            rep.push(Check::scalars("nu = q^(2(n-m))", &h.nu, &h.at_q(&nu_formula)));
        }
        None => {
            rep.push(Check::skip("Tr B = q^(n-m)(m-n)_q", "bi-rank unknown"));
            rep.push(Check::skip("nu = q^(2(n-m))", "bi-rank unknown"));
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn s(x: &str) -> QScalar {
        x.parse().unwrap()
    }

    #[test]
    fn standard_small_cases() {
        let h1 = HeckeSymmetry::standard(1);
        assert_eq!(h1.r().get(0, 0), QScalar::q());
        let h2 = HeckeSymmetry::standard(2);
        assert_eq!(h2.b().trace(), s("q^-1 + q^-3"));
        assert_eq!(h2.nu(), &QScalar::q_pow(-4));
        assert_eq!(h2.r().eval_at(&rat(1, 1)).unwrap(), flip(2));
    }

    #[test]
    fn standard_eigenvalue_multiplicities() {
        let h = HeckeSymmetry::standard(2);
        let q = QScalar::q();
        let qi = q.recip().unwrap();
        let pts = crate::linalg::default_sample_points();
        // rank of (R + q⁻¹) is the multiplicity of eigenvalue q
        assert_eq!(h.r().add_scalar(&qi).rank_generic(&pts).unwrap(), 3);
        assert_eq!(h.r().add_scalar(&-&q).rank_generic(&pts).unwrap(), 1);
    }

    #[test]
    fn super_flip_cases() {
        let h = HeckeSymmetry::super_flip(1, 0);
        assert_eq!(h.r(), &QMatrix::identity(1));
        let h = HeckeSymmetry::super_flip(1, 1);
        let parity = QMatrix::diag(&[QScalar::one(), QScalar::from_int(-1)]);
        assert_eq!(h.b(), &parity);
        assert_eq!(h.c(), &parity);
        assert!(h.b().trace().is_zero());
        assert_eq!(h.psi(), h.r());
        let h = HeckeSymmetry::super_flip(2, 1);
        assert!(h.b().trace().is_one());
        assert!(h.nu().is_one());
    }

    #[test]
    fn flip_is_own_skew_inverse() {
        assert_eq!(skew_inverse(&flip(2), 2).unwrap(), flip(2));
    }

    #[test]
    fn trace_formula_for_standard_three() {
        let h = HeckeSymmetry::standard(3);
        assert_eq!(h.b().trace(), QScalar::q_pow(-3) * qint(3));
        assert_eq!(trace_b_formula(2, 0), s("q^-1 + q^-3"));
    }

    #[test]
    fn identity_suite_on_builtins() {
        let cases = [
            (HeckeSymmetry::standard(2), (2, 0)),
            (HeckeSymmetry::standard(3), (3, 0)),
            (HeckeSymmetry::super_flip(1, 1), (1, 1)),
            (HeckeSymmetry::super_flip(2, 1), (2, 1)),
            (HeckeSymmetry::super_flip(0, 2), (0, 2)),
        ];
        for (h, br) in cases {
            let rep = verify_skew_identities(&h.clone().with_birank(br));
            assert!(rep.all_passed(), "{}: {:?}", h.label(), rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn load_round_trip_and_rejections() {
        let h = HeckeSymmetry::standard(2);
        let back = HeckeSymmetry::load_json(&h.to_json()).unwrap();
        assert_eq!(back.r(), h.r());
        assert_eq!(back.psi(), h.psi());
        assert_eq!(back.regime(), Regime::Generic);

        let p = HeckeSymmetry::load(flip(2)).unwrap();
        assert!(p.is_involutive());

        // diagonal matrix with distinct entries: not Yang-Baxter, or not Hecke
        let bad = QMatrix::from_fn(4, 4, |r, c| if r == c { QScalar::from_int(r as i64 + 2) } else if r + c == 3 { QScalar::one() } else { QScalar::zero() });
        assert!(matches!(HeckeSymmetry::load(bad), Err(HeckeError::YangBaxter(_) | HeckeError::HeckeCondition(_))));

        // 2 P satisfies YBE but not (R-1)(R+1)=0
        let two_p = flip(2).scale(&QScalar::from_int(2));
        assert!(matches!(HeckeSymmetry::load(two_p), Err(HeckeError::HeckeCondition(_))));

        // the identity on V⊗V is involutive but its partial transpose is rank one
        assert!(matches!(HeckeSymmetry::load(QMatrix::identity(4)), Err(HeckeError::NotSkewInvertible)));
    }

    #[test]
    fn non_ybe_witness() {
        let m = QMatrix::from_fn(4, 4, |r, c| QScalar::from_int(((r * 3 + c * 5) % 4) as i64));
        match HeckeSymmetry::load(m) {
            Err(HeckeError::YangBaxter(w)) => assert!(w.contains("at (")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn specialization_keeps_identities() {
        let h = HeckeSymmetry::standard(2).specialize(&rat(3, 2)).unwrap();
        assert_eq!(h.b().trace(), trace_b_formula(2, 0).specialize(&rat(3, 2)).unwrap());
        assert!(verify_skew_identities(&h).all_passed());
    }
}
