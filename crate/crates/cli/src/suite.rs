//! The verification suite: one section per acceptance criterion, run on the built-in
//! symmetries or on a configured one.

use std::error::Error;

use hecke_core::heckealg::{
    kernel_property_check, standard_tableaux, trace_recursion_check, verify_completeness, Partition,
};
use hecke_core::hpseries::{dimension_report, hook_test, hp_series, HPSeries};
use hecke_core::linalg::{flip, QMatrix};
use hecke_core::poisson::{default_pencil_samples, poisson_report};
use hecke_core::rea::{build_rea, component_dims, ideal_span_check, sandwich_rank_check};
use hecke_core::reps::{associativity_checks, coproduct_checks, representation_report, sl_report};
use hecke_core::swcat::{category_report, r_dimension};
use hecke_core::{qbinom, Check, HeckeSymmetry, QScalar, Report};
use num_rational::BigRational;
use rayon::prelude::*;

type Outcome = Result<Report, Box<dyn Error + Send + Sync>>;

/// Turns an error inside a section into a failing check.
fn guard(name: &str, f: impl FnOnce() -> Outcome) -> Report {
    match f() {
        Ok(r) => r,
        Err(e) => {
            let mut r = Report::new();
            r.push(Check::fail(name, e.to_string()));
            r
        }
    }
}

fn prefixed(h: &HeckeSymmetry, rep: Report) -> Report {
    let mut out = Report::new();
    out.extend(&format!("{}: ", h.label()), rep);
    out
}

pub const CRITERIA: [&str; 15] = [
    "Hecke certification",
    "Tr B = Tr C = q^(n-m)(m-n)_q",
    "BC = CB = q^(2(n-m)) I",
    "skew-inverse identity suite",
    "HP series fit",
    "idempotent ranks and kernel properties",
    "content sums and trace recursion",
    "extended braiding and pairings",
    "R-dimensions",
    "projector calculus",
    "REA component dimensions",
    "representation suite",
    "braided bialgebra",
    "sl-reduction",
    "Poisson suite",
];

/// Built-in symmetries at desk scale, with bi-ranks attached.
pub fn builtins() -> Vec<HeckeSymmetry> {
    vec![
        HeckeSymmetry::standard(2).with_birank((2, 0)),
        HeckeSymmetry::standard(3).with_birank((3, 0)),
        HeckeSymmetry::super_flip(1, 1).with_birank((1, 1)),
        HeckeSymmetry::super_flip(2, 1).with_birank((2, 1)),
        HeckeSymmetry::super_flip(2, 0).with_birank((2, 0)),
        HeckeSymmetry::super_flip(0, 2).with_birank((0, 2)),
    ]
}

fn builtin(label: &str) -> HeckeSymmetry {
    builtins().into_iter().find(|h| h.label() == label).expect("known built-in")
}

/// Yang-Baxter, the Hecke condition and the skew-inverse identity, recomputed from R and Ψ.
pub fn certification(h: &HeckeSymmetry) -> Report {
    let n = h.dim();
    let r12 = QMatrix::amplify(h.r(), 1, 3, n).expect("legs");
    let r23 = QMatrix::amplify(h.r(), 2, 3, n).expect("legs");
    let mut rep = Report::new();
    rep.push(Check::matrices("Yang-Baxter: R12 R23 R12 = R23 R12 R23", &r12.mul(&r23).mul(&r12), &r23.mul(&r12).mul(&r23)));
    let q = h.q().clone();
    let qi = q.recip().expect("q invertible");
    let hec = h.r().add_scalar(&-&q).mul(&h.r().add_scalar(&qi));
    rep.push(Check::from_bool("Hecke: (R - q)(R + 1/q) = 0", hec.is_zero(), || format!("{} nonzero entries", hec.nnz())));
    let psi23 = QMatrix::amplify(h.psi(), 2, 3, n).expect("legs");
    let t = r12.mul(&psi23).partial_trace(&[1]).expect("legs");
    rep.push(Check::matrices("skew inverse: Tr2 R12 Psi23 = P13", &t, &flip(n)));
    rep
}

fn skew_identities(h: &HeckeSymmetry, keep: impl Fn(&str) -> bool) -> Report {
    let mut rep = Report::new();
    for c in hecke_core::hecke::verify_skew_identities(h).checks {
        if keep(&c.name) {
            rep.push(c);
        }
    }
    rep
}

fn is_trace_check(name: &str) -> bool {
    name == "partial trace: Tr B = Tr C" || name.starts_with("Tr B = q^")
}

fn is_bc_check(name: &str) -> bool {
    name.starts_with("BC = ") || name.starts_with("CB = ") || name.starts_with("nu = ")
}

/// Tr B = Tr C against the closed form, plus the literal values for three built-ins.
pub fn trace_values(h: &HeckeSymmetry) -> Report {
    let mut rep = skew_identities(h, is_trace_check);
    let lit = |s: &str| -> QScalar { s.parse().expect("literal") };
    let expected = match h.label() {
        "standard(2)" => Some(lit("q^-1 + q^-3")),
        "superflip(1,1)" => Some(QScalar::zero()),
        "superflip(2,1)" => Some(QScalar::one()),
        _ => None,
    };
    if let Some(v) = expected {
        rep.push(Check::scalars(format!("Tr B = {v}"), &h.b().trace(), &v));
    }
    rep
}

pub fn bc_identities(h: &HeckeSymmetry) -> Report {
    skew_identities(h, is_bc_check)
}

pub fn section_two_identities(h: &HeckeSymmetry) -> Report {
    skew_identities(h, |n| !is_trace_check(n) && !is_bc_check(n))
}

/// Fits P₋ through order 6 (or the cap if larger) and checks the bi-rank if known.
pub fn hp_fit(h: &HeckeSymmetry, points: &[BigRational]) -> Result<(HPSeries, Report), Box<dyn Error + Send + Sync>> {
    let cap = hecke_core::heckealg::default_cap(h).max(6);
    let s = hp_series(h, 6, cap, points)?;
    let mut rep = Report::new();
    rep.push(Check::pass(format!("fit N = {:?}, D = {:?} (positive, coprime, reciprocal)", s.numerator, s.denominator)));
    let pm = s.check_plus_minus();
    let deep = s.dims_plus.len().min(s.dims_minus.len()) >= 7;
    rep.push(Check::from_bool(format!("{} (order >= 6)", pm.name), pm.passed() && deep, || {
        pm.detail.clone().unwrap_or_else(|| "fewer than 7 terms".into())
    }));
    if let Some(b) = h.birank() {
        rep.push(Check::from_bool(format!("bi-rank {:?}", b), s.birank == b, || format!("fitted {:?}", s.birank)));
    }
    Ok((s, rep))
}

/// rank E^λ = s_λ(x|y) for |λ| ≤ k_max, and rank 0 exactly off the hook.
pub fn idempotent_dims(h: &HeckeSymmetry, series: &HPSeries, k_max: usize, points: &[BigRational]) -> Outcome {
    let mut rep = dimension_report(h, series, k_max, points)?;
    let (m, n) = series.birank;
    for k in 1..=k_max {
        for lambda in Partition::all(k) {
            let s = hecke_core::hpseries::super_schur(&lambda, &series.numerator, &series.denominator);
            let on_hook = hook_test(&lambda, m, n);
            rep.push(Check::from_bool(format!("{lambda}: s = 0 iff off the hook"), (s == 0) != on_hook, || format!("s = {s}")));
        }
    }
    Ok(rep)
}

/// Kernel properties of the idempotents through k = (m+1)(n+1), and completeness through k = 3.
pub fn kernel_properties(h: &HeckeSymmetry, points: &[BigRational]) -> Outcome {
    let (m, n) = h.birank().ok_or("bi-rank unknown")?;
    let mut rep = kernel_property_check(h, (m, n), (m + 1) * (n + 1), points)?;
    for k in 1..=3 {
        rep.extend("", verify_completeness(h, k)?);
    }
    if (m, n) == (2, 0) {
        let e = hecke_core::heckealg::IdempotentBuilder::new(h).idempotent(&standard_tableaux(&"1,1,1".parse()?)[0])?;
        rep.push(Check::from_bool("E^(1,1,1) = 0", e.is_zero(), || format!("{} nonzero entries", e.nnz())));
    }
    Ok(rep)
}

/// Both recursion identities on λ⁻_{m,n} and on every other tableau of its size.
pub fn trace_recursion(h: &HeckeSymmetry) -> Outcome {
    let (m, n) = h.birank().ok_or("bi-rank unknown")?;
    let lambda = Partition::lambda_minus_mn(m, n);
    let mut rep = Report::new();
    for t in standard_tableaux(&lambda).iter().take(2) {
        rep.extend(&format!("{t}: "), trace_recursion_check(h, t, Some((m, n)))?);
    }
    Ok(rep)
}

/// dim_R V_λ for 0 < |λ| ≤ 3: zero at m = n, q-binomials on columns for (m|0).
pub fn r_dimensions(h: &HeckeSymmetry) -> Outcome {
    let (m, n) = h.birank().ok_or("bi-rank unknown")?;
    let mut rep = Report::new();
    for k in 1..=3 {
        for lambda in Partition::all(k) {
            let d = r_dimension(h, &lambda)?;
            rep.push(Check::pass(format!("dim_R V_{lambda} = {d} for every tableau")));
            if m == n {
                rep.push(Check::scalars(format!("dim_R V_{lambda} = 0"), &d, &QScalar::zero()));
            }
            if n == 0 && lambda.parts().iter().all(|&p| p == 1) {
                let want = if k <= m { h.at_q(&qbinom(m as i64, k as i64)?) } else { QScalar::zero() };
                rep.push(Check::scalars(format!("dim_R V_{lambda} = qbinom({m},{k})"), &d, &want));
            }
        }
    }
    Ok(rep)
}

pub fn projector_calculus(h: &HeckeSymmetry, points: &[BigRational]) -> Outcome {
    let rea = build_rea(h)?;
    let mut rep = rea.verify();
    rep.extend("", ideal_span_check(&rea, points)?);
    rep.push(sandwich_rank_check(&rea, points)?);
    Ok(rep)
}

/// rank Im S and rank Im S⁽³⁾ at generic q against the classical counts.
pub fn component_ranks(h: &HeckeSymmetry, points: &[BigRational], expected: Option<(usize, usize)>) -> Outcome {
    let mut rep = Report::new();
    for (k, want) in [(2, expected.map(|e| e.0)), (3, expected.map(|e| e.1))] {
        let d = component_dims(h, k, points)?;
        rep.push(Check::from_bool(format!("k={k}: generic rank {} = classical {}", d.generic, d.classical), d.generic == d.classical, || {
            "ranks differ".into()
        }));
        if let Some(w) = want {
            rep.push(Check::from_bool(format!("k={k}: rank {w}"), d.generic == w, || format!("got {}", d.generic)));
        }
    }
    Ok(rep)
}

pub fn bialgebra(h: &HeckeSymmetry) -> Report {
    let mut rep = coproduct_checks(h);
    rep.extend("", associativity_checks(h));
    rep
}

fn run_on(hs: &[HeckeSymmetry], name: &str, f: impl Fn(&HeckeSymmetry) -> Report + Sync) -> Report {
    let parts: Vec<Report> = hs.par_iter().map(|h| prefixed(h, guard(name, || Ok(f(h))))).collect();
    let mut rep = Report::new();
    for p in parts {
        rep.extend("", p);
    }
    rep
}

fn pick(labels: &[&str]) -> Vec<HeckeSymmetry> {
    labels.iter().map(|l| builtin(l)).collect()
}

/// Acceptance criterion `id` (1-based) on its desk-scale set of symmetries.
pub fn criterion(id: usize, points: &[BigRational]) -> Report {
    let all = builtins();
    let name = CRITERIA[id - 1];
    match id {
        1 => run_on(&all, name, certification),
        2 => run_on(&all, name, trace_values),
        3 => run_on(&all, name, bc_identities),
        4 => run_on(&all, name, section_two_identities),
        5 => run_on(&all, name, |h| guard(name, || Ok(hp_fit(h, points)?.1))),
        6 => {
            let mut rep = run_on(&all, name, |h| {
                guard(name, || {
                    let (s, _) = hp_fit(h, points)?;
                    idempotent_dims(h, &s, 4, points)
                })
            });
            let small = pick(&["superflip(1,1)", "superflip(2,0)", "standard(2)"]);
            rep.extend("", run_on(&small, name, |h| guard(name, || kernel_properties(h, points))));
            rep
        }
        7 => {
            let hs = pick(&["standard(2)", "standard(3)", "superflip(1,1)", "superflip(2,0)", "superflip(0,2)"]);
            run_on(&hs, name, |h| guard(name, || trace_recursion(h)))
        }
        8 => run_on(&pick(&["standard(2)", "standard(3)", "superflip(1,1)", "superflip(2,1)"]), name, category_report),
        9 => run_on(&pick(&["superflip(1,1)", "standard(2)", "standard(3)", "superflip(2,0)"]), name, |h| guard(name, || r_dimensions(h))),
        10 => run_on(&pick(&["standard(2)", "standard(3)", "superflip(2,1)"]), name, |h| guard(name, || projector_calculus(h, points))),
        11 => run_on(&pick(&["standard(2)"]), name, |h| guard(name, || component_ranks(h, points, Some((10, 20))))),
        12 => run_on(&pick(&["standard(2)", "superflip(1,1)"]), name, |h| guard(name, || Ok(representation_report(h, 3)?))),
        13 => run_on(&pick(&["standard(2)", "superflip(1,1)", "standard(3)"]), name, bialgebra),
        14 => run_on(&pick(&["standard(2)", "standard(3)", "superflip(1,1)"]), name, |h| guard(name, || Ok(sl_report(h)?))),
        15 => {
            let mut rep = Report::new();
            for m in [2, 3] {
                rep.extend(&format!("m={m}: "), poisson_report(m, &default_pencil_samples()));
            }
            rep
        }
        _ => panic!("criterion {id} does not exist"),
    }
}

/// Every check applicable to one symmetry. `max_k` bounds dimension checks and
/// `max_dim` the carriers built by representation checks. Poisson checks run
/// for standard m ∈ {2, 3}.
pub fn run_suite(h: &HeckeSymmetry, points: &[BigRational], max_k: usize, max_dim: usize) -> Report {
    let n = h.dim();
    let sections: Vec<(&str, Box<dyn Fn() -> Report + Sync + Send + '_>)> = vec![
        ("certification", Box::new(|| certification(h))),
        ("identities", Box::new(|| hecke_core::hecke::verify_skew_identities(h))),
        ("hp", Box::new(|| guard("hp", || {
            let (s, mut rep) = hp_fit(h, points)?;
            rep.extend("", idempotent_dims(h, &s, max_k.min(4), points)?);
            Ok(rep)
        }))),
        ("kernel", Box::new(|| match h.birank() {
            Some((m, nn)) if n.pow(((m + 1) * (nn + 1)) as u32) <= 4096 => {
                let mut rep = guard("kernel properties", || kernel_properties(h, points));
                rep.extend("", guard("recursion", || trace_recursion(h)));
                rep
            }
            _ => skip_report("kernel properties", "bi-rank unknown or tensor power above the cap"),
        })),
        ("category", Box::new(|| category_report(h))),
        ("rdims", Box::new(|| guard("r-dimensions", || r_dimensions(h)))),
        ("rea", Box::new(|| {
            if n > 3 {
                return skip_report("projector calculus", "N > 3");
            }
            let mut rep = guard("projector calculus", || projector_calculus(h, points));
            rep.extend("", guard("component ranks", || component_ranks(h, points, None)));
            rep
        })),
        ("reps", Box::new(|| {
            let len = (1..=3).rev().find(|&k| (2 * n).pow(k as u32) <= max_dim).unwrap_or(1);
            let mut rep = guard("representations", || Ok(representation_report(h, len)?));
            rep.extend("", bialgebra(h));
            rep.extend("", guard("sl-reduction", || Ok(sl_report(h)?)));
            rep
        })),
        ("poisson", Box::new(|| match standard_rank(h) {
            Some(m) if m == 2 || m == 3 => poisson_report(m, &default_pencil_samples()),
            _ => skip_report("poisson", "only for standard m in {2, 3}"),
        })),
    ];
    let parts: Vec<Report> = sections.par_iter().map(|(name, f)| {
        let mut r = Report::new();
        r.extend(&format!("{name}: "), f());
        r
    }).collect();
    let mut rep = Report::new();
    for p in parts {
        rep.extend("", p);
    }
    rep
}

fn skip_report(name: &str, reason: &str) -> Report {
    let mut r = Report::new();
    r.push(Check::skip(name, reason));
    r
}

fn standard_rank(h: &HeckeSymmetry) -> Option<usize> {
    let m = h.dim();
    (h.r() == HeckeSymmetry::standard(m).r()).then_some(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hecke_core::Status;

    #[test]
    fn errors_become_failing_checks() {
        let rep = guard("section", || Err("boom".into()));
        assert_eq!(rep.checks.len(), 1);
        assert_eq!(rep.checks[0].status, Status::Fail);
        assert_eq!(rep.checks[0].detail.as_deref(), Some("boom"));
    }

    #[test]
    fn literal_trace_values() {
        for h in [builtin("standard(2)"), builtin("superflip(1,1)"), builtin("superflip(2,1)")] {
            let rep = trace_values(&h);
            assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
            assert!(rep.checks.iter().any(|c| c.name.starts_with("Tr B = ")));
        }
    }

    #[test]
    fn identity_split_is_a_partition() {
        let h = builtin("standard(2)");
        let total = hecke_core::hecke::verify_skew_identities(&h).checks.len();
        let parts = skew_identities(&h, is_trace_check).checks.len()
            + bc_identities(&h).checks.len()
            + section_two_identities(&h).checks.len();
        assert_eq!(parts, total);
        assert!(bc_identities(&h).checks.len() >= 2);
    }

    #[test]
    fn wrong_birank_fails_the_fit_check() {
        let h = HeckeSymmetry::standard(2).with_birank((1, 1));
        let (_, rep) = hp_fit(&h, &hecke_core::linalg::default_sample_points()).unwrap();
        assert!(!rep.all_passed());
    }

    #[test]
    fn builtins_have_distinct_labels() {
        let mut labels: Vec<String> = builtins().iter().map(|h| h.label().to_string()).collect();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), 6);
    }
}
