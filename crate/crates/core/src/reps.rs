//! Equivariant matrix representations of the modified reflection equation
//! algebra at ħ = 1: basic and dual modules, braided tensor products,
//! restrictions to V_λ, the adjoint module and the sl-reduction.
//!
//! Generators l_i^j are indexed by g = i·N + j and identified with
//! x_i⊗x^j ∈ V⊗V*. A representation stores ρ(l_g) for every g.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::hecke::{HeckeError, HeckeSymmetry};
use crate::heckealg::{standard_tableaux, AlgError, IdempotentBuilder, Partition};
use crate::linalg::{default_sample_points, LinalgError, QMatrix};
use crate::report::{Check, Report};
use crate::scalar::{qint, QScalar};
use crate::swcat::{check_invariance, ExtendedBraiding, Letter, MixedWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("relation fails: {0}")]
    Relation(String),
    #[error("{0} lies outside the hook: the idempotent has rank 0")]
    OutsideHook(String),
    #[error("carrier must be a word in a single letter, got {0}")]
    MixedCarrier(String),
    #[error("tableau index {index} out of range for {shape}")]
    TableauIndex { shape: String, index: usize },
    #[error("sl-reduction unavailable: Tr C = 0")]
    TraceCZero,
    #[error("sl-reduction needs a scalar image of Tr_R L: {0}")]
    NonScalarCasimir(String),
    #[error("sl-reduction degenerates: xi = 0")]
    XiZero,
    #[error("the z-automorphism needs q - 1/q invertible")]
    Involutive,
    #[error("sl2 presentation needs the standard symmetry with N = 2")]
    NotSl2,
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A quadratic or linear monomial in the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mono {
    Quad(usize, usize),
    Lin(usize),
}

/// One defining relation: its index tuple (i, j, q, r) and coefficients.
#[derive(Debug, Clone)]
pub struct Relation {
    pub indices: [usize; 4],
    pub terms: Vec<(Mono, QScalar)>,
}

/// The relations R^{kl}_{ij} l_k^m R^{pq}_{ml} l_p^r − l_i^a R^{bc}_{aj} l_b^d R^{rq}_{dc}
/// − ħ(R^{aq}_{ij} l_a^r − l_i^b R^{rq}_{bj}) = 0, with zero rows dropped.
pub fn relation_table(h: &HeckeSymmetry, hbar: &QScalar) -> Vec<Relation> {
    let n = h.dim();
    let ent: Vec<(usize, usize, usize, usize, QScalar)> =
        h.r().entries().map(|(row, col, v)| (row / n, row % n, col / n, col % n, v.clone())).collect();
    let id = |i: usize, j: usize, q: usize, r: usize| ((i * n + j) * n + q) * n + r;
    let mut acc: Vec<BTreeMap<Mono, QScalar>> = vec![BTreeMap::new(); n.pow(4)];
    let mut add = |rel: usize, m: Mono, v: QScalar| {
        *acc[rel].entry(m).or_insert_with(QScalar::zero) += &v;
    };
    for (k, l, i, j, v1) in &ent {
        for (p, q, m, l2, v2) in &ent {
            if l2 == l {
                let c = v1 * v2;
                for r in 0..n {
                    add(id(*i, *j, *q, r), Mono::Quad(k * n + m, p * n + r), c.clone());
                }
            }
        }
    }
    for (b, c, a, j, v1) in &ent {
        for (r, q, d, c2, v2) in &ent {
            if c2 == c {
                let coeff = -(v1 * v2);
                for i in 0..n {
                    add(id(i, *j, *q, *r), Mono::Quad(i * n + a, b * n + d), coeff.clone());
                }
            }
        }
    }
    for (a, q, i, j, v) in &ent {
        let c = -(hbar * v);
        for r in 0..n {
            add(id(*i, *j, *q, r), Mono::Lin(a * n + r), c.clone());
        }
    }
    for (r, q, b, j, v) in &ent {
        let c = hbar * v;
        for i in 0..n {
            add(id(i, *j, *q, *r), Mono::Lin(i * n + b), c.clone());
        }
    }
    acc.into_iter()
        .enumerate()
        .filter_map(|(rel, terms)| {
            let terms: Vec<_> = terms.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            (!terms.is_empty()).then(|| Relation { indices: [rel / n.pow(3), rel / (n * n) % n, rel / n % n, rel % n], terms })
        })
        .collect()
}

/// First relation not satisfied by the images, with its residual.
pub fn first_relation_failure(rels: &[Relation], images: &[QMatrix]) -> Option<String> {
    let pairs: BTreeSet<(usize, usize)> = rels
        .iter()
        .flat_map(|r| r.terms.iter())
        .filter_map(|(m, _)| match m {
            Mono::Quad(a, b) => Some((*a, *b)),
            Mono::Lin(_) => None,
        })
        .collect();
    let products: HashMap<(usize, usize), QMatrix> =
        pairs.into_par_iter().map(|(a, b)| ((a, b), images[a].mul(&images[b]))).collect();
    let d = images.first().map_or(0, QMatrix::rows);
    rels.par_iter().find_map_first(|rel| {
        let mut sum = QMatrix::zeros(d, d);
        for (m, c) in &rel.terms {
            let x = match m {
                Mono::Quad(a, b) => &products[&(*a, *b)],
                Mono::Lin(g) => &images[*g],
            };
            sum = sum.add(&x.scale(c));
        }
        (!sum.is_zero()).then(|| {
            let [i, j, q, r] = rel.indices.map(|x| x + 1);
            format!("relation (i,j,q,r) = ({i},{j},{q},{r}) leaves {} nonzero entries", sum.nnz())
        })
    })
}

/// Subspace data for a carrier that is the image of a projector on a word:
/// `basis` (D×d) spans it, `coords` (d×D) reads coordinates, coords·basis = I.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub basis: QMatrix,
    pub coords: QMatrix,
}

#[derive(Debug, Clone)]
pub struct Representation {
    h: HeckeSymmetry,
    word: MixedWord,
    shape: Option<(Partition, usize)>,
    embedding: Option<Embedding>,
    images: Vec<QMatrix>,
}

impl Representation {
    /// Images on a plain word carrier.
    pub fn from_images(h: &HeckeSymmetry, word: MixedWord, images: Vec<QMatrix>) -> Self {
        Representation { h: h.clone(), word, shape: None, embedding: None, images }
    }

    pub fn symmetry(&self) -> &HeckeSymmetry {
        &self.h
    }
    pub fn word(&self) -> &MixedWord {
        &self.word
    }
    pub fn shape(&self) -> Option<&(Partition, usize)> {
        self.shape.as_ref()
    }
    pub fn dim(&self) -> usize {
        self.images.first().map_or(0, QMatrix::rows)
    }
    pub fn images(&self) -> &[QMatrix] {
        &self.images
    }
    /// ρ(l_i^j), 0-based.
    pub fn image(&self, i: usize, j: usize) -> &QMatrix {
        &self.images[i * self.h.dim() + j]
    }

    fn ambient_dim(&self) -> usize {
        self.h.dim().pow(self.word.len() as u32)
    }

    fn ambient_basis(&self) -> QMatrix {
        self.embedding.as_ref().map_or_else(|| QMatrix::identity(self.ambient_dim()), |e| e.basis.clone())
    }

    fn ambient_coords(&self) -> QMatrix {
        self.embedding.as_ref().map_or_else(|| QMatrix::identity(self.ambient_dim()), |e| e.coords.clone())
    }

    /// The action V⊗V*⊗U → U: entry (u', g·d + u) = ρ(l_g)[u', u].
    pub fn action_map(&self) -> QMatrix {
        let d = self.dim();
        let entries = self
            .images
            .iter()
            .enumerate()
            .flat_map(|(g, m)| m.entries().map(move |(r, c, v)| (r, g * d + c, v.clone())).collect::<Vec<_>>());
        QMatrix::from_entries(d, self.images.len() * d, entries)
    }

    /// The braiding V⊗V*⊗U → U⊗V⊗V* in carrier coordinates.
    pub fn braid_generators_past(&self, e: &ExtendedBraiding) -> QMatrix {
        let vd: MixedWord = "VV*".parse().expect("literal word");
        let full = e.mixed_braiding(&vd, &self.word);
        match &self.embedding {
            None => full,
            Some(emb) => {
                let nn = QMatrix::identity(self.h.dim().pow(2));
                emb.coords.kron(&nn).mul(&full).mul(&nn.kron(&emb.basis))
            }
        }
    }

    pub fn check_relations(&self) -> Check {
        let rels = relation_table(&self.h, &QScalar::one());
        match first_relation_failure(&rels, &self.images) {
            None => Check::pass("mREA relations at hbar = 1"),
            Some(w) => Check::fail("mREA relations at hbar = 1", w),
        }
    }

    /// The action map, lifted to the ambient word, is a categorical morphism.
    pub fn check_equivariance(&self, e: &ExtendedBraiding) -> Report {
        let vd: MixedWord = "VV*".parse().expect("literal word");
        let nn = QMatrix::identity(self.h.dim().pow(2));
        let f = self.ambient_basis().mul(&self.action_map()).mul(&nn.kron(&self.ambient_coords()));
        check_invariance(e, &f, &vd.concat(&self.word), &self.word)
    }

    pub fn verify(&self) -> Report {
        let e = ExtendedBraiding::new(&self.h);
        let mut rep = Report::new();
        rep.push(self.check_relations());
        rep.extend("equivariance: ", self.check_equivariance(&e));
        rep.push(self.check_casimir_central());
        rep
    }

    /// ρ(ℓ) for ℓ = Tr_R L.
    pub fn casimir(&self) -> QMatrix {
        combine(&self.images, &casimir_vector(&self.h))
    }

    pub fn check_casimir_central(&self) -> Check {
        let l = self.casimir();
        let bad = self.images.iter().position(|x| l.mul(x) != x.mul(&l));
        Check::from_bool("Tr_R L is central", bad.is_none(), || {
            let g = bad.unwrap_or_default();
            let n = self.h.dim();
            format!("fails against l_{}^{}", g / n + 1, g % n + 1)
        })
    }

    /// Sum of the traces of ρ(l_i^j), per generator: equal for equivalent modules.
    pub fn character(&self) -> Vec<QScalar> {
        self.images.iter().map(QMatrix::trace).collect()
    }

    /// ρ^z(l_i^j) = zρ(l_i^j) + δ_i^j(1 − z)/(q − q⁻¹).
    pub fn z_twist(&self, z: &QScalar) -> Result<Representation, RepError> {
        let omega = self.h.omega();
        let shift = (&QScalar::one() - z) * omega.recip().map_err(|_| RepError::Involutive)?;
        let n = self.h.dim();
        let images = self
            .images
            .iter()
            .enumerate()
            .map(|(g, m)| {
                let s = m.scale(z);
                if g / n == g % n {
                    s.add_scalar(&shift)
                } else {
                    s
                }
            })
            .collect();
        Ok(Representation { images, ..self.clone() })
    }
}

/// ℓ = Tr_R L = Σ C^a_b l_a^b as a vector over generators. The index placement
/// differs from the matrix product C·L because C has its upper index as row.
pub fn casimir_vector(h: &HeckeSymmetry) -> Vec<QScalar> {
    let n = h.dim();
    let mut v = vec![QScalar::zero(); n * n];
    for (a, b, c) in h.c().entries() {
        v[a * n + b] = c.clone();
    }
    v
}

/// Σ_g v_g·ops[g].
pub fn combine(ops: &[QMatrix], v: &[QScalar]) -> QMatrix {
    let d = ops.first().map_or(0, QMatrix::rows);
    ops.iter().zip(v).filter(|(_, c)| !c.is_zero()).fold(QMatrix::zeros(d, d), |acc, (m, c)| acc.add(&m.scale(c)))
}

/// ρ₁(l_i^j)x_k = B^j_k x_i.
pub fn rho_basic(h: &HeckeSymmetry) -> Representation {
    let n = h.dim();
    let images = (0..n * n)
        .map(|g| {
            let (i, j) = (g / n, g % n);
            QMatrix::from_entries(n, n, h.b().row(j).iter().map(|(k, v)| (i, *k, v.clone())))
        })
        .collect();
    Representation::from_images(h, MixedWord(vec![Letter::V]), images)
}

/// ρ₁*(l_i^j)x^k = −R^{kj}_{ri} x^r.
pub fn rho_dual(h: &HeckeSymmetry) -> Representation {
    let n = h.dim();
    let mut per: Vec<Vec<(usize, usize, QScalar)>> = vec![Vec::new(); n * n];
    for (row, col, v) in h.r().entries() {
        let (k, j, r, i) = (row / n, row % n, col / n, col % n);
        per[i * n + j].push((r, k, -v.clone()));
    }
    let images = per.into_iter().map(|e| QMatrix::from_entries(n, n, e)).collect();
    Representation::from_images(h, MixedWord(vec![Letter::Dual]), images)
}

/// ρ(l_i^j) = c·δ_i^j on a one-dimensional carrier.
pub fn character_rep(h: &HeckeSymmetry, c: &QScalar) -> Vec<QMatrix> {
    let n = h.dim();
    (0..n * n).map(|g| if g / n == g % n { QMatrix::scalar(1, c) } else { QMatrix::zeros(1, 1) }).collect()
}

/// A factor of a tensor term: the unit e or a generator l_g.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    Unit,
    Gen(usize),
}

/// A formal element of the braided tensor square, Σ c·(a⊗b).
pub type TensorSum = BTreeMap<(Factor, Factor), QScalar>;

fn add_term(s: &mut TensorSum, a: Factor, b: Factor, c: QScalar) {
    let slot = s.entry((a, b)).or_insert_with(QScalar::zero);
    *slot += &c;
    if slot.is_zero() {
        s.remove(&(a, b));
    }
}

/// Δ(l_i^j) = l_i^j⊗e + e⊗l_i^j − (q − q⁻¹)Σ_k l_i^k⊗l_k^j.
pub fn coproduct(h: &HeckeSymmetry, i: usize, j: usize) -> TensorSum {
    let n = h.dim();
    let mut s = TensorSum::new();
    add_term(&mut s, Factor::Gen(i * n + j), Factor::Unit, QScalar::one());
    add_term(&mut s, Factor::Unit, Factor::Gen(i * n + j), QScalar::one());
    let w = -h.omega();
    for k in 0..n {
        add_term(&mut s, Factor::Gen(i * n + k), Factor::Gen(k * n + j), w.clone());
    }
    s
}

/// ε(e) = 1, ε(l) = 0.
pub fn counit(f: Factor) -> QScalar {
    match f {
        Factor::Unit => QScalar::one(),
        Factor::Gen(_) => QScalar::zero(),
    }
}

/// Counit laws on every generator and the multiplicative form
/// Δ(m_i^j) = Σ_s m_i^s⊗m_s^j for M = I·e − (q − q⁻¹)L.
pub fn coproduct_checks(h: &HeckeSymmetry) -> Report {
    let n = h.dim();
    let w = h.omega();
    let mut rep = Report::new();
    let mut left_ok = true;
    let mut right_ok = true;
    let mut mform_ok = true;
    // m_i^j as a formal combination of e and l_i^j
    let m = |i: usize, j: usize| -> Vec<(Factor, QScalar)> {
        let mut v = vec![(Factor::Gen(i * n + j), -w.clone())];
        if i == j {
            v.push((Factor::Unit, QScalar::one()));
        }
        v
    };
    for i in 0..n {
        for j in 0..n {
            let d = coproduct(h, i, j);
            let mut left: BTreeMap<Factor, QScalar> = BTreeMap::new();
            let mut right: BTreeMap<Factor, QScalar> = BTreeMap::new();
            for ((a, b), c) in &d {
                *left.entry(*a).or_insert_with(QScalar::zero) += &(c * &counit(*b));
                *right.entry(*b).or_insert_with(QScalar::zero) += &(c * &counit(*a));
            }
            left.retain(|_, v| !v.is_zero());
            right.retain(|_, v| !v.is_zero());
            let want: BTreeMap<Factor, QScalar> = [(Factor::Gen(i * n + j), QScalar::one())].into();
            left_ok &= left == want;
            right_ok &= right == want;
            // Δ(m) by linearity against Σ_s m⊗m
            let mut lhs = TensorSum::new();
            for (f, c) in m(i, j) {
                match f {
                    Factor::Unit => add_term(&mut lhs, Factor::Unit, Factor::Unit, c),
                    Factor::Gen(_) => {
                        for ((a, b), v) in &d {
                            add_term(&mut lhs, *a, *b, &c * v);
                        }
                    }
                }
            }
            let mut rhs = TensorSum::new();
            for s in 0..n {
                for (a, ca) in m(i, s) {
                    for (b, cb) in m(s, j) {
                        add_term(&mut rhs, a, b, &ca * &cb);
                    }
                }
            }
            mform_ok &= lhs == rhs;
        }
    }
    rep.push(Check::from_bool("(id x eps) Delta = id", left_ok, || "counit law fails".into()));
    rep.push(Check::from_bool("(eps x id) Delta = id", right_ok, || "counit law fails".into()));
    rep.push(Check::from_bool("Delta(M) = M x M", mform_ok, || "co-mm fails".into()));
    rep
}

/// The braided tensor product: l ↦ ρ_{U⊗W}(Δ(l)) where b⊗u is braided to u′⊗b′
/// before ρ_U and ρ_W act.
pub fn rho_tensor(u: &Representation, w: &Representation) -> Representation {
    let h = &u.h;
    let n = h.dim();
    let (du, dw) = (u.dim(), w.dim());
    let e = ExtendedBraiding::new(h);
    let braid = u.braid_generators_past(&e);
    let act_w = QMatrix::identity(du).kron(&w.action_map());
    let iw = QMatrix::identity(dw);
    // M_g = (I_U ⊗ act_W)(braid ⊗ I_W)(x_g ⊗ ·): the action of e⊗l_g
    let cross: Vec<QMatrix> = (0..n * n)
        .into_par_iter()
        .map(|g| {
            let cols: Vec<usize> = (g * du..(g + 1) * du).collect();
            act_w.mul(&braid.select_columns(&cols).kron(&iw))
        })
        .collect();
    let omega = h.omega();
    let images = (0..n * n)
        .into_par_iter()
        .map(|g| {
            let (i, j) = (g / n, g % n);
            let mut acc = u.images[g].kron(&iw).add(&cross[g]);
            if !omega.is_zero() {
                for k in 0..n {
                    let t = u.images[i * n + k].kron(&iw).mul(&cross[k * n + j]);
                    acc = acc.sub(&t.scale(&omega));
                }
            }
            acc
        })
        .collect();
    let embedding = match (&u.embedding, &w.embedding) {
        (None, None) => None,
        _ => Some(Embedding {
            basis: u.ambient_basis().kron(&w.ambient_basis()),
            coords: u.ambient_coords().kron(&w.ambient_coords()),
        }),
    };
    Representation { h: h.clone(), word: u.word.concat(&w.word), shape: None, embedding, images }
}

/// ρ₂(l) = ρ₁(l)⊗I + R⁻¹(ρ₁(l)⊗I)R⁻¹ on V⊗V.
pub fn rho_two_formula(h: &HeckeSymmetry) -> Vec<QMatrix> {
    let n = h.dim();
    let id = QMatrix::identity(n);
    rho_basic(h)
        .images
        .iter()
        .map(|m| {
            let a = m.kron(&id);
            a.add(&h.r_inv().mul(&a).mul(h.r_inv()))
        })
        .collect()
}

/// The Hecke symmetry carried by V*⊗V*: the V*V* block of the extended braiding.
pub fn dual_symmetry(h: &HeckeSymmetry) -> Result<HeckeSymmetry, RepError> {
    let e = ExtendedBraiding::new(h);
    let dd = e.block(Letter::Dual, Letter::Dual).clone();
    Ok(HeckeSymmetry::certify(dd, h.q().clone(), h.regime(), format!("{}*", h.label()))?)
}

/// Basis and coordinate maps of Im E, decided at a sample point.
fn image_embedding(e: &QMatrix, point: &BigRational) -> Result<Embedding, RepError> {
    let cols = e.pivot_columns_at(point)?;
    if cols.is_empty() {
        return Err(RepError::OutsideHook("zero projector".into()));
    }
    let basis = e.select_columns(&cols);
    let rows = basis.transpose().pivot_columns_at(point)?;
    let square = basis.select_rows(&rows);
    let coords = square.inverse()?.mul(&e.select_rows(&rows));
    Ok(Embedding { basis, coords })
}

/// ρ compressed to Im E for a projector E on the carrier commuting with ρ.
pub fn restrict_to_image(rho: &Representation, e: &QMatrix) -> Result<Representation, RepError> {
    let point = default_sample_points().remove(0);
    let emb = image_embedding(e, &point)?;
    let images = rho.images.par_iter().map(|m| emb.coords.mul(m).mul(&emb.basis)).collect();
    let embedding = match &rho.embedding {
        None => emb,
        Some(outer) => Embedding { basis: outer.basis.mul(&emb.basis), coords: emb.coords.mul(&outer.coords) },
    };
    Ok(Representation { h: rho.h.clone(), word: rho.word.clone(), shape: None, embedding: Some(embedding), images })
}

/// ρ_{λ,a} = E^λ_a ρ_p E^λ_a, compressed to a basis of Im E^λ_a.
pub fn restrict(rho: &Representation, lambda: &Partition, a: usize) -> Result<Representation, RepError> {
    let h = &rho.h;
    let letters: BTreeSet<Letter> = rho.word.0.iter().copied().collect();
    if letters.len() != 1 || rho.embedding.is_some() || rho.word.len() != lambda.weight() {
        return Err(RepError::MixedCarrier(rho.word.to_string()));
    }
    let sym = if letters.contains(&Letter::V) { h.clone() } else { dual_symmetry(h)? };
    let tabs = standard_tableaux(lambda);
    let t = tabs.get(a).ok_or_else(|| RepError::TableauIndex { shape: lambda.to_string(), index: a })?;
    let e = IdempotentBuilder::new(&sym).idempotent(t)?;
    if e.rank_generic(&default_sample_points())? == 0 {
        return Err(RepError::OutsideHook(lambda.to_string()));
    }
    let mut out = restrict_to_image(rho, &e)?;
    out.shape = Some((lambda.clone(), a));
    Ok(out)
}

/// All tableau restrictions of a shape share one character.
pub fn restriction_characters_check(rho: &Representation, lambda: &Partition) -> Result<Check, RepError> {
    let chars = (0..lambda.num_standard_tableaux())
        .map(|a| restrict(rho, lambda, a).map(|r| r.character()))
        .collect::<Result<Vec<_>, _>>()?;
    let same = chars.windows(2).all(|w| w[0] == w[1]);
    Ok(Check::from_bool(format!("characters of V_{lambda} agree over tableaux"), same, || "traces differ".into()))
}

/// ρ_p on V^{⊗p} or V*^{⊗p} as an iterated braided tensor power.
pub fn tensor_power(h: &HeckeSymmetry, letter: Letter, p: usize) -> Representation {
    let base = match letter {
        Letter::V => rho_basic(h),
        Letter::Dual => rho_dual(h),
    };
    let mut acc = base.clone();
    for _ in 1..p {
        acc = rho_tensor(&acc, &base);
    }
    acc
}

/// The adjoint module: ρ₁ ⊗ ρ₁* on V⊗V* ≅ Span(l_i^j).
pub fn adjoint_rep(h: &HeckeSymmetry) -> Representation {
    rho_tensor(&rho_basic(h), &rho_dual(h))
}

/// The adjoint table of gl(m|n) in the basis l_i^j = (−1)^{|j|}e_i^j, where
/// [e_i^j, e_k^s} = δ_k^j e_i^s − (−1)^{|e_i^j||e_k^s|} δ_i^s e_k^j and `par` holds
/// the parities of the basis vectors. Images act on Span(l_k^s) at index k·N + s.
pub fn graded_adjoint_oracle(par: &[bool]) -> Vec<QMatrix> {
    let n = par.len();
    let deg = |i: usize, j: usize| par[i] ^ par[j];
    let sign = |g: usize| if par[g % n] { -1 } else { 1 };
    (0..n * n)
        .map(|g| {
            let (i, j) = (g / n, g % n);
            let mut e = Vec::new();
            for k in 0..n {
                for s in 0..n {
                    let b = k * n + s;
                    if k == j {
                        let c = i * n + s;
                        e.push((c, b, QScalar::from_int(sign(g) * sign(b) * sign(c))));
                    }
                    if i == s {
                        let c = k * n + j;
                        let graded = if deg(i, j) && deg(k, s) { 1 } else { -1 };
                        e.push((c, b, QScalar::from_int(graded * sign(g) * sign(b) * sign(c))));
                    }
                }
            }
            QMatrix::from_entries(n * n, n * n, e)
        })
        .collect()
}

/// Parities read from B at q = 1 when it is a diagonal sign matrix.
pub fn parities_at_one(h: &HeckeSymmetry) -> Option<Vec<bool>> {
    let one = BigRational::from_integer(1.into());
    let b = h.b().eval_at(&one).ok()?;
    let n = h.dim();
    if b.nnz() != n {
        return None;
    }
    (0..n)
        .map(|i| {
            let v = b.get(i, i).as_constant()?;
            if v == one {
                Some(false)
            } else if v == -one.clone() {
                Some(true)
            } else {
                None
            }
        })
        .collect()
}

/// Representation of the sl-quotient obtained from a module with scalar Tr_R L.
#[derive(Debug, Clone)]
pub struct SlRepresentation {
    pub chi: QScalar,
    pub xi: QScalar,
    pub images: Vec<QMatrix>,
}

/// F̃ = ξ⁻¹(ρ(l_i^j) − (Tr C)⁻¹χδ_i^j), ξ = 1 − (q − q⁻¹)(Tr C)⁻¹χ.
pub fn sl_reduce(rho: &Representation) -> Result<SlRepresentation, RepError> {
    let h = &rho.h;
    let n = h.dim();
    let tr_c = h.c().trace();
    let tr_c_inv = tr_c.recip().map_err(|_| RepError::TraceCZero)?;
    let cas = rho.casimir();
    let check = rho.check_casimir_central();
    if !check.passed() {
        return Err(RepError::NonScalarCasimir(check.detail.unwrap_or_default()));
    }
    let chi = cas.get(0, 0);
    if cas != QMatrix::scalar(rho.dim(), &chi) {
        return Err(RepError::NonScalarCasimir("image is not a multiple of the identity".into()));
    }
    let xi = &QScalar::one() - &(&h.omega() * &(&tr_c_inv * &chi));
    let xi_inv = xi.recip().map_err(|_| RepError::XiZero)?;
    let shift = &tr_c_inv * &chi;
    let images = rho
        .images
        .iter()
        .enumerate()
        .map(|(g, m)| {
            let m = if g / n == g % n { m.add_scalar(&-shift.clone()) } else { m.clone() };
            m.scale(&xi_inv)
        })
        .collect();
    Ok(SlRepresentation { chi, xi, images })
}

/// The reduced relations and Tr(C·F̃) = 0.
pub fn check_sl_rep(h: &HeckeSymmetry, sl: &SlRepresentation) -> Report {
    let mut rep = Report::new();
    let rels = relation_table(h, &QScalar::one());
    rep.push(match first_relation_failure(&rels, &sl.images) {
        None => Check::pass("sl-rea relations"),
        Some(w) => Check::fail("sl-rea relations", w),
    });
    let tr = combine(&sl.images, &casimir_vector(h));
    rep.push(Check::from_bool("Tr_R F = 0", tr.is_zero(), || format!("{} nonzero entries", tr.nnz())));
    rep
}

/// F̃ from ρ^z agrees with F̃ from ρ for each z.
pub fn z_family_check(rho: &Representation, zs: &[QScalar]) -> Result<Check, RepError> {
    let base = sl_reduce(rho)?;
    let mut bad = Vec::new();
    for z in zs {
        let twisted = sl_reduce(&rho.z_twist(z)?)?;
        if twisted.images != base.images {
            bad.push(z.to_string());
        }
    }
    Ok(Check::from_bool("z-family gives one sl representation", bad.is_empty(), || format!("differs at z = {}", bad.join(", "))))
}

/// Relation data of 𝔏₂ ⊕ 𝔏₁ in naive coordinates (monomial l_a l_b at a·N² + b,
/// then l_g at N⁴ + g), one row per defining relation.
pub fn relation_span(h: &HeckeSymmetry, hbar: &QScalar) -> QMatrix {
    let n2 = h.dim().pow(2);
    let rels = relation_table(h, hbar);
    let entries: Vec<_> = rels
        .iter()
        .enumerate()
        .flat_map(|(r, rel)| {
            rel.terms.iter().map(move |(m, v)| {
                let c = match m {
                    Mono::Quad(a, b) => a * n2 + b,
                    Mono::Lin(g) => n2 * n2 + g,
                };
                (r, c, v.clone())
            })
        })
        .collect();
    QMatrix::from_entries(rels.len(), n2 * n2 + n2, entries)
}

/// The relation space is carried into itself when braided past V and past V*.
pub fn relation_braiding_check(h: &HeckeSymmetry, points: &[BigRational]) -> Result<Report, RepError> {
    let e = ExtendedBraiding::new(h);
    let n = h.dim();
    let n2 = n * n;
    let span = relation_span(h, &QScalar::one());
    let quad: MixedWord = "VV*VV*".parse().expect("literal word");
    let lin: MixedWord = "VV*".parse().expect("literal word");
    let mut rep = Report::new();
    for w in [Letter::V, Letter::Dual] {
        let ww = MixedWord(vec![w]);
        // block-diagonal braiding (𝔏₂ ⊕ 𝔏₁)⊗W → W⊗(𝔏₂ ⊕ 𝔏₁)
        let bq = e.mixed_braiding(&quad, &ww);
        let bl = e.mixed_braiding(&lin, &ww);
        let width = n2 * n2 + n2;
        // coordinates: source index (x, w) with x in 𝔏₂ ⊕ 𝔏₁; target index (w, x)
        let src_rows: Vec<(usize, usize, QScalar)> = span
            .entries()
            .flat_map(|(r, c, v)| (0..n).map(move |wi| (r * n + wi, c * n + wi, v.clone())))
            .collect();
        let src = QMatrix::from_entries(span.rows() * n, width * n, src_rows);
        let braid = QMatrix::from_entries(
            width * n,
            width * n,
            bq.entries()
                .map(|(r, c, x)| {
                    let (wo, xo) = (r / (n2 * n2), r % (n2 * n2));
                    (wo * width + xo, c, x.clone())
                })
                .chain(bl.entries().map(|(r, c, x)| {
                    let (wo, xo) = (r / n2, r % n2);
                    let (xi, wi) = (c / n, c % n);
                    (wo * width + n2 * n2 + xo, (n2 * n2 + xi) * n + wi, x.clone())
                }))
                .collect::<Vec<_>>(),
        );
        // row vectors: image = src · braidᵀ
        let moved = src.mul(&braid.transpose());
        let target_rows: Vec<(usize, usize, QScalar)> = span
            .entries()
            .flat_map(|(r, c, v)| (0..n).map(move |wi| (r * n + wi, wi * width + c, v.clone())))
            .collect();
        let target = QMatrix::from_entries(span.rows() * n, width * n, target_rows);
        let stacked = QMatrix::from_entries(
            target.rows() + moved.rows(),
            width * n,
            target
                .entries()
                .map(|(r, c, v)| (r, c, v.clone()))
                .chain(moved.entries().map(|(r, c, v)| (r + target.rows(), c, v.clone())))
                .collect::<Vec<_>>(),
        );
        let rt = target.rank_generic(points)?;
        let rs = stacked.rank_generic(points)?;
        rep.push(Check::from_bool(format!("relations stable under braiding with {ww}"), rt == rs, || {
            format!("rank {rt} grows to {rs}")
        }));
    }
    Ok(rep)
}

/// 2_q as read in the regime of `h`.
pub fn two_q(h: &HeckeSymmetry) -> QScalar {
    h.at_q(&qint(2))
}

/// ρ(M₁)⊳M₂ for matrices of forms on Span(l): entry [A,B] = Σ_C ρ(M₁[A,C]) M₂[C,B].
pub fn act_on_forms(ops: &[QMatrix], m1: &QMatrix, m2: &QMatrix) -> QMatrix {
    let d = (m1.rows() as f64).sqrt().round() as usize;
    let width = m2.cols();
    let entries: Vec<(usize, usize, QScalar)> = (0..d * d)
        .into_par_iter()
        .flat_map_iter(|ac| {
            let (a, c) = (ac / d, ac % d);
            let coeffs = m1.row(ac);
            let mut out = Vec::new();
            if coeffs.is_empty() {
                return out;
            }
            let op = coeffs.iter().fold(QMatrix::zeros(width, width), |acc, (g, v)| acc.add(&ops[*g].scale(v)));
            for b in 0..d {
                let v = QMatrix::from_entries(width, 1, m2.row(c * d + b).iter().map(|(k, x)| (*k, 0, x.clone())));
                for (k, _, x) in op.mul(&v).entries() {
                    out.push((a * d + b, k, x.clone()));
                }
            }
            out
        })
        .collect();
    QMatrix::from_entries(d * d, width, entries)
}

/// ρ_ad(L̄₁)⊳L̄₂ = L₁R̄ − R̄L₁ with L̄₂ = R̄L₁R̄⁻¹.
pub fn adjoint_formula_check(h: &HeckeSymmetry, ad: &Representation) -> Check {
    let n = h.dim();
    let id = QMatrix::identity(n * n);
    let rbar = h.r().transpose();
    let rbar_inv = h.r_inv().transpose();
    let l1 = crate::rea::lbar1_forms(n);
    let l2 = crate::rea::conjugate_forms(&rbar, &l1, &rbar_inv);
    let lhs = act_on_forms(ad.images(), &l1, &l2);
    let rhs = crate::rea::conjugate_forms(&id, &l1, &rbar).sub(&crate::rea::conjugate_forms(&rbar, &l1, &id));
    Check::matrices("adjoint action equals L1 Rbar - Rbar L1", &lhs, &rhs)
}

/// The adjoint table of the sl-quotient in the generators F = L − (Tr C)⁻¹ℓ·I.
pub fn sl_adjoint_checks(h: &HeckeSymmetry, ad: &Representation) -> Result<Report, RepError> {
    let n = h.dim();
    let d = n * n;
    let tr_c_inv = h.c().trace().recip().map_err(|_| RepError::TraceCZero)?;
    let ell = casimir_vector(h);
    let omega = h.omega();
    // F_i^j as vectors over generators
    let f_vec = |i: usize, j: usize| -> Vec<QScalar> {
        (0..d)
            .map(|g| {
                let base = if g == i * n + j { QScalar::one() } else { QScalar::zero() };
                if i == j {
                    &base - &(&tr_c_inv * &ell[g])
                } else {
                    base
                }
            })
            .collect()
    };
    let as_col = |v: &[QScalar]| QMatrix::from_entries(d, 1, v.iter().enumerate().map(|(g, x)| (g, 0, x.clone())));
    let rho_ell = combine(ad.images(), &ell);
    let ell_col = as_col(&ell);
    let mut rep = Report::new();
    rep.push(Check::from_bool("ad(l) l = 0", rho_ell.mul(&ell_col).is_zero(), || "nonzero".into()));
    let mut f_ell = true;
    let mut ell_f = true;
    let shift = -(&omega * &h.c().trace());
    let mut f_ops = Vec::with_capacity(d);
    for i in 0..n {
        for j in 0..n {
            let fv = f_vec(i, j);
            let op = combine(ad.images(), &fv);
            f_ell &= op.mul(&ell_col).is_zero();
            let col = as_col(&fv);
            ell_f &= rho_ell.mul(&col) == col.scale(&shift);
            f_ops.push(op);
        }
    }
    rep.push(Check::from_bool("ad(F) l = 0", f_ell, || "nonzero".into()));
    rep.push(Check::from_bool("ad(l) F = -omega Tr C F", ell_f, || "eigenvalue differs".into()));
    // F₁ = F⊗I as forms; ops are indexed by F-entries, so F̄₁ uses unit coordinates
    let f1 = QMatrix::from_entries(
        d * d,
        d,
        (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |a| (i, j, a)))).flat_map(|(i, j, a)| {
            f_vec(i, j).into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(move |(g, x)| ((i * n + a) * d + j * n + a, g, x))
        }),
    );
    let unit1 = crate::rea::lbar1_forms(n);
    let rbar = h.r().transpose();
    let rbar_inv = h.r_inv().transpose();
    let id = QMatrix::identity(d);
    let f2 = crate::rea::conjugate_forms(&rbar, &f1, &rbar_inv);
    let lhs = act_on_forms(&f_ops, &unit1, &f2);
    let rhs = crate::rea::conjugate_forms(&id, &f1, &rbar)
        .sub(&crate::rea::conjugate_forms(&rbar, &f1, &id))
        .add(&crate::rea::conjugate_forms(&rbar, &f1, &rbar_inv).scale(&omega));
    rep.push(Check::matrices("ad(F1) F2 = F1 Rbar - Rbar F1 + omega Rbar F1 Rbar^-1", &lhs, &rhs));
    Ok(rep)
}

/// The projector l_i^j ↦ f_i^j = l_i^j − (Tr C)⁻¹δ_i^j ℓ on Span(l) ≅ V⊗V*.
pub fn traceless_projector(h: &HeckeSymmetry) -> Result<QMatrix, RepError> {
    let n = h.dim();
    let tr_c_inv = h.c().trace().recip().map_err(|_| RepError::TraceCZero)?;
    let ell = casimir_vector(h);
    let d = n * n;
    let mut e: Vec<(usize, usize, QScalar)> = (0..d).map(|g| (g, g, QScalar::one())).collect();
    for i in 0..n {
        for (g, c) in ell.iter().enumerate() {
            if !c.is_zero() {
                e.push((g, i * n + i, -(&tr_c_inv * c)));
            }
        }
    }
    Ok(QMatrix::from_entries(d, d, e))
}

/// M = I − (q − q⁻¹)L satisfies R̄M₁R̄M₁ = M₁R̄M₁R̄ in the representation.
pub fn m_form_check(rho: &Representation) -> Check {
    let h = &rho.h;
    let n = h.dim();
    let omega = h.omega();
    let ms: Vec<QMatrix> = rho
        .images
        .iter()
        .enumerate()
        .map(|(g, m)| {
            let s = m.scale(&-omega.clone());
            if g / n == g % n {
                s.add_scalar(&QScalar::one())
            } else {
                s
            }
        })
        .collect();
    match first_relation_failure(&relation_table(h, &QScalar::zero()), &ms) {
        None => Check::pass("M-form relations"),
        Some(w) => Check::fail("M-form relations", w),
    }
}

/// Ĥ, Ê, F̂ for the standard N = 2 symmetry: Ê = f_1^2, F̂ = f_2^1, Ĥ = f_1^1 − f_2^2
/// in a representation of the sl-quotient, scaled by ħ.
pub fn sl2_generators(sl: &SlRepresentation, hbar: &QScalar) -> [QMatrix; 3] {
    let f = &sl.images;
    [f[0].sub(&f[3]).scale(hbar), f[1].scale(hbar), f[2].scale(hbar)]
}

/// q²ĤÊ − ÊĤ = 2_qħÊ, ĤF̂ − q²F̂Ĥ = −2_qħF̂, q(ÊF̂ − F̂Ê) = Ĥ(ħ − (q² − 1)/2_q Ĥ),
/// and centrality of C_q = Ĥ²/2_q + q⁻¹ÊF̂ + qF̂Ê.
pub fn sl2_relations(h: &HeckeSymmetry, gens: &[QMatrix; 3], hbar: &QScalar) -> Report {
    let [hh, e, f] = gens;
    let q = h.q().clone();
    let q2 = h.q_pow(2);
    let qi = h.q_pow(-1);
    let tq = two_q(h);
    let tq_inv = tq.recip().expect("2_q nonzero");
    let mut rep = Report::new();
    rep.push(Check::matrices("q^2 HE - EH = 2_q hbar E", &hh.mul(e).scale(&q2).sub(&e.mul(hh)), &e.scale(&(&tq * hbar))));
    rep.push(Check::matrices("HF - q^2 FH = -2_q hbar F", &hh.mul(f).sub(&f.mul(hh).scale(&q2)), &f.scale(&-(&tq * hbar))));
    let coeff = &(&q2 - &QScalar::one()) * &tq_inv;
    let rhs = hh.mul(&QMatrix::scalar(hh.rows(), hbar).sub(&hh.scale(&coeff)));
    rep.push(Check::matrices("q(EF - FE) = H(hbar - (q^2-1)/2_q H)", &e.mul(f).sub(&f.mul(e)).scale(&q), &rhs));
    let cq = hh.mul(hh).scale(&tq_inv).add(&e.mul(f).scale(&qi)).add(&f.mul(e).scale(&q));
    let central = [hh, e, f].iter().all(|x| cq.mul(x) == x.mul(&cq));
    rep.push(Check::from_bool("braided Casimir is central", central, || "C_q fails to commute".into()));
    rep
}

/// The sl2 presentation inside ρ₁ and the traceless adjoint module, at ħ ∈ {1, 2},
/// plus the M-form relations of both modules. Requires the standard R of dimension 2.
pub fn sl2_presentation(h: &HeckeSymmetry) -> Result<Report, RepError> {
    if h.dim() != 2 || h.r() != HeckeSymmetry::standard(2).r() {
        return Err(RepError::NotSl2);
    }
    let basic = rho_basic(h);
    let ad = adjoint_rep(h);
    let traceless = restrict_to_image(&ad, &traceless_projector(h)?)?;
    let mut rep = Report::new();
    for (name, rho) in [("rho1", &basic), ("adjoint", &traceless)] {
        let sl = sl_reduce(rho)?;
        for hbar in [QScalar::one(), QScalar::from_int(2)] {
            let gens = sl2_generators(&sl, &hbar);
            rep.extend(&format!("{name}, hbar = {hbar}: "), sl2_relations(h, &gens, &hbar));
        }
    }
    rep.push(m_form_check(&basic).renamed("rho1: M-form relations"));
    rep.push(m_form_check(&ad).renamed("adjoint: M-form relations"));
    Ok(rep)
}

/// [x, y] = ρ_ad(x)⊳y as a map Span(l)⊗Span(l) → Span(l).
pub fn bracket_matrix(ad: &Representation) -> QMatrix {
    let d = ad.images.len();
    QMatrix::from_entries(
        d,
        d * d,
        ad.images
            .iter()
            .enumerate()
            .flat_map(|(a, m)| m.entries().map(move |(c, b, v)| (c, a * d + b, v.clone())).collect::<Vec<_>>()),
    )
}

/// [,]∘𝒮 = 0 and [,][,]₁₂ = [,][,]₂₃(I − σ₁₂) with σ: L̄₁L̄₂ ↦ R̄⁻¹L̄₁L̄₂R̄.
pub fn braided_lie_checks(h: &HeckeSymmetry) -> Result<Report, RepError> {
    let rea = crate::rea::ReaStructure::new(h);
    let ad = adjoint_rep(h);
    let br = bracket_matrix(&ad);
    let d = h.dim().pow(2);
    let id = QMatrix::identity(d);
    // naive coordinates of the L̄-basis element e_AB form column A·N² + B of Tᵀ
    let tt = crate::rea::lbar_basis(&rea).transpose();
    let mut rep = Report::new();
    let bs = br.mul(&tt).mul(rea.s());
    rep.push(Check::from_bool("[,] S = 0", bs.is_zero(), || format!("{} nonzero entries", bs.nnz())));
    let rbar = h.r().transpose();
    let rbar_inv = h.r_inv().transpose();
    let sigma = tt.mul(&rbar_inv.transpose().kron(&rbar)).mul(&tt.inverse()?);
    let lhs = br.mul(&br.kron(&id));
    let rhs = br.mul(&id.kron(&br)).mul(&QMatrix::identity(d.pow(3)).sub(&sigma.kron(&id)));
    rep.push(Check::matrices("genLie: [,][,]12 = [,][,]23 (I - sigma12)", &lhs, &rhs));
    Ok(rep)
}

/// Words in V, V* of length 2..=max_len, represented as left-bracketed braided tensor products.
pub fn word_representation(h: &HeckeSymmetry, w: &MixedWord) -> Option<Representation> {
    let basic = |l: &Letter| match l {
        Letter::V => rho_basic(h),
        Letter::Dual => rho_dual(h),
    };
    let mut it = w.0.iter();
    let first = basic(it.next()?);
    Some(it.fold(first, |acc, l| rho_tensor(&acc, &basic(l))))
}

/// (U⊗W)⊗X = U⊗(W⊗X) as module structures on VVV and VV*V.
pub fn associativity_checks(h: &HeckeSymmetry) -> Report {
    let mut rep = Report::new();
    for w in ["VVV", "VV*V"] {
        let w: MixedWord = w.parse().expect("literal word");
        let parts: Vec<Representation> =
            w.0.iter().map(|l| word_representation(h, &MixedWord(vec![*l])).expect("letter")).collect();
        let left = rho_tensor(&rho_tensor(&parts[0], &parts[1]), &parts[2]);
        let right = rho_tensor(&parts[0], &rho_tensor(&parts[1], &parts[2]));
        rep.push(Check::from_bool(format!("associativity on {w}"), left.images == right.images, || "bracketings differ".into()));
    }
    rep
}

/// Relations, equivariance and structural identities of the module family up to
/// tensor words of length `max_len`.
pub fn representation_report(h: &HeckeSymmetry, max_len: usize) -> Result<Report, RepError> {
    let mut rep = Report::new();
    let basic = rho_basic(h);
    let dual = rho_dual(h);
    let ad = adjoint_rep(h);
    rep.extend("rho1: ", basic.verify());
    rep.extend("rho1*: ", dual.verify());
    rep.extend("adjoint: ", ad.verify());
    rep.push(adjoint_formula_check(h, &ad));
    let two = rho_tensor(&basic, &basic);
    rep.push(Check::from_bool("rho2 formula", two.images == rho_two_formula(h), || "images differ".into()));
    rep.push(m_form_check(&basic).renamed("rho1: M-form relations"));
    rep.push(m_form_check(&ad).renamed("adjoint: M-form relations"));
    for k in 2..=max_len {
        for w in MixedWord::all(k) {
            let r = word_representation(h, &w).expect("nonempty word");
            rep.extend(&format!("{w}: "), r.verify());
        }
    }
    if max_len >= 3 {
        rep.extend("", associativity_checks(h));
    }
    for k in 1..=max_len.min(3) {
        for lambda in Partition::all(k) {
            for letter in [Letter::V, Letter::Dual] {
                let p = tensor_power(h, letter, k);
                match restrict(&p, &lambda, 0) {
                    Ok(r) => {
                        rep.extend(&format!("V_{lambda} ({letter:?}): "), r.verify());
                        rep.push(restriction_characters_check(&p, &lambda)?);
                    }
                    Err(RepError::OutsideHook(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    match parities_at_one(h) {
        Some(par) => {
            let one = BigRational::from_integer(1.into());
            let at_one = ad.images.iter().map(|m| m.eval_at(&one)).collect::<Result<Vec<_>, _>>()?;
            let ok = at_one == graded_adjoint_oracle(&par);
            rep.push(Check::from_bool("adjoint at q = 1 matches the gl(m|n) table", ok, || "structure constants differ".into()));
        }
        None => rep.push(Check::skip("adjoint at q = 1 matches the gl(m|n) table", "B at q = 1 is not a sign matrix")),
    }
    rep.extend("", braided_lie_checks(h)?);
    rep.extend("", coproduct_checks(h));
    rep.extend("", relation_braiding_check(h, &default_sample_points())?);
    Ok(rep)
}

/// ℓ-centrality, the sl-reduction of ρ₁ and the adjoint table of the quotient.
/// Returns a skip when Tr C = 0.
pub fn sl_report(h: &HeckeSymmetry) -> Result<Report, RepError> {
    let mut rep = Report::new();
    if h.c().trace().is_zero() {
        rep.push(Check::skip("sl-reduction", "m=n: Tr C = 0"));
        return Ok(rep);
    }
    let basic = rho_basic(h);
    let ad = adjoint_rep(h);
    rep.push(ad.check_casimir_central().renamed("adjoint: Tr_R L is central"));
    let sl = sl_reduce(&basic)?;
    rep.push(Check::from_bool("xi != 0", !sl.xi.is_zero(), || "xi = 0".into()));
    rep.extend("rho1 reduced: ", check_sl_rep(h, &sl));
    let traceless = restrict_to_image(&ad, &traceless_projector(h)?)?;
    rep.extend("adjoint reduced: ", check_sl_rep(h, &sl_reduce(&traceless)?));
    rep.extend("", sl_adjoint_checks(h, &ad)?);
    if !h.is_involutive() {
        let zs = [QScalar::one(), h.q().clone(), QScalar::from_int(2)];
        rep.push(z_family_check(&basic, &zs)?);
        rep.push(z_family_check(&traceless, &zs)?.renamed("z-family on the traceless adjoint"));
    }
    if h.dim() == 2 && h.r() == HeckeSymmetry::standard(2).r() {
        rep.extend("sl2: ", sl2_presentation(h)?);
    }
    Ok(rep)
}

/// Summary for one carrier: relations, equivariance, dimension and R-dimension.
#[derive(Debug, Clone, serde::Serialize)]
pub struct RepSummary {
    pub relations_ok: bool,
    pub equivariant: bool,
    pub dim: usize,
    pub rdim: Option<QScalar>,
}

/// Builds the module on `word` (restricted to V_λ for the first tableau when a
/// shape is given) and summarizes it.
pub fn rep_verify(h: &HeckeSymmetry, word: &MixedWord, shape: Option<&Partition>) -> Result<RepSummary, RepError> {
    let full = word_representation(h, word).ok_or_else(|| RepError::MixedCarrier("empty word".into()))?;
    let rho = match shape {
        Some(l) => restrict(&full, l, 0)?,
        None => full,
    };
    let e = ExtendedBraiding::new(h);
    let relations_ok = rho.check_relations().passed();
    let equivariant = rho.check_equivariance(&e).all_passed();
    let all_v = word.0.iter().all(|l| *l == Letter::V);
    let rdim = match shape {
        Some(l) if all_v => crate::swcat::r_dimension(h, l).ok(),
        None if all_v => crate::swcat::r_trace_balanced(h, &QMatrix::identity(h.dim())).ok().map(|d| d.pow(word.len() as i32)),
        _ => None,
    };
    Ok(RepSummary { relations_ok, equivariant, dim: rho.dim(), rdim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::flip;
    use proptest::prelude::*;

    // Matrix form of the relations on V₁⊗V₂⊗U: R̄L₁R̄L₁ − L₁R̄L₁R̄ = ħ(R̄L₁ − L₁R̄).
    fn compact_holds(h: &HeckeSymmetry, images: &[QMatrix], hbar: &QScalar) -> bool {
        let n = h.dim();
        let d = images[0].rows();
        let mut e = Vec::new();
        for g in 0..n * n {
            for (u, v, c) in images[g].entries() {
                e.push(((g / n) * d + u, (g % n) * d + v, c.clone()));
            }
        }
        let big = QMatrix::from_entries(n * d, n * d, e);
        let sw = flip(n).kron(&QMatrix::identity(d));
        let l1 = sw.mul(&QMatrix::identity(n).kron(&big)).mul(&sw);
        let r = h.r().transpose().kron(&QMatrix::identity(d));
        let lhs = r.mul(&l1).mul(&r).mul(&l1).sub(&l1.mul(&r).mul(&l1).mul(&r));
        lhs.sub(&r.mul(&l1).sub(&l1.mul(&r)).scale(hbar)).is_zero()
    }

    #[test]
    fn relation_table_matches_matrix_form() {
        for h in [HeckeSymmetry::standard(2), HeckeSymmetry::super_flip(1, 1)] {
            let rels = relation_table(&h, &QScalar::one());
            for rho in [rho_basic(&h), rho_dual(&h), adjoint_rep(&h)] {
                assert!(compact_holds(&h, rho.images(), &QScalar::one()));
                assert!(first_relation_failure(&rels, rho.images()).is_none());
            }
        }
    }

    #[test]
    fn unsigned_dual_fails() {
        let h = HeckeSymmetry::standard(2);
        let wrong: Vec<QMatrix> = rho_dual(&h).images().iter().map(|m| m.scale(&-QScalar::one())).collect();
        assert!(!compact_holds(&h, &wrong, &QScalar::one()));
        assert!(first_relation_failure(&relation_table(&h, &QScalar::one()), &wrong).is_some());
    }

    #[test]
    fn casimir_is_trace_of_c_on_characters() {
        let h = HeckeSymmetry::standard(2);
        let c = QScalar::from_int(3);
        let rho = Representation::from_images(&h, MixedWord(vec![]), character_rep(&h, &c));
        assert_eq!(rho.casimir().get(0, 0), &c * &h.c().trace());
    }

    #[test]
    fn gl2_oracle_is_the_commutator() {
        let ad = graded_adjoint_oracle(&[false, false]);
        let e = |g: usize| QMatrix::from_entries(2, 2, [(g / 2, g % 2, QScalar::one())]);
        for a in 0..4 {
            for b in 0..4 {
                let bracket = e(a).mul(&e(b)).sub(&e(b).mul(&e(a)));
                let col: Vec<QScalar> = (0..4).map(|c| ad[a].get(c, b).clone()).collect();
                assert_eq!(combine(&(0..4).map(e).collect::<Vec<_>>(), &col), bracket);
            }
        }
    }

    #[test]
    fn parities_of_builtins() {
        assert_eq!(parities_at_one(&HeckeSymmetry::super_flip(1, 2)), Some(vec![false, true, true]));
        assert_eq!(parities_at_one(&HeckeSymmetry::standard(2)), Some(vec![false, false]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn characters_satisfy_relations(c in -6i64..=6, e in -2i32..=2) {
            let h = HeckeSymmetry::standard(2);
            let hbar = QScalar::one();
            let images = character_rep(&h, &(QScalar::from_int(c) * h.q_pow(e)));
            prop_assert!(first_relation_failure(&relation_table(&h, &hbar), &images).is_none());
            prop_assert!(compact_holds(&h, &images, &hbar));
        }
    }
}
