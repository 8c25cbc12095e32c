use hecke_core::poisson::*;
use hecke_core::{Report, Status};
use num_rational::BigRational;

fn assert_passes(label: &str, rep: &Report) {
    let failures: Vec<String> = rep.failures().map(|c| format!("{}: {:?}", c.name, c.detail)).collect();
    assert!(failures.is_empty(), "{label}: {failures:?}");
}

#[test]
fn semiclassical_suite_rank_two_and_three() {
    for m in [2, 3] {
        let rep = poisson_report(m, &default_pencil_samples());
        assert_passes(&format!("m = {m}"), &rep);
        assert!(rep.checks.iter().all(|c| c.status != Status::Skip), "m = {m} has skipped checks");
    }
}

#[test]
fn sl2_tables_verbatim() {
    let rep = sl2_report();
    assert_passes("sl2", &rep);
    assert!(rep.get("r: {h,e} = (-2)*e*h").is_some());
    assert!(rep.get("su(2) r: {x,y} = z*z").is_some());
}

#[test]
fn pencil_components_separately() {
    let r = bracket_r(3);
    let pl = bracket_pl(3);
    assert!(r.jacobi_failure().is_none());
    assert!(pl.jacobi_failure().is_none());
    assert!(pl.schouten_failure(&r).is_none());
    let int = |n: i64| BigRational::from_integer(n.into());
    assert!(pencil_jacobi(2, &int(-5), &int(7)).is_ok());
}

#[test]
fn split_brackets_are_not_poisson_at_rank_three() {
    let (plus, minus) = components_not_poisson(3);
    assert!(plus.is_some() && minus.is_some());
}

#[test]
fn a_wrong_r_breaks_the_pencil() {
    // Doubling the diagonal part of r keeps antisymmetry but spoils compatibility.
    let r = r_matrix(2);
    let mut e: Vec<_> = r.entries().map(|(i, j, v)| (i, j, v.clone())).collect();
    for t in e.iter_mut() {
        if t.0 == t.1 {
            t.2 = &t.2 * &hecke_core::QScalar::from_int(2);
        }
    }
    let bad = bracket_from_r(2, &hecke_core::QMatrix::from_entries(4, 4, e));
    assert_ne!(bad, bracket_r(2));
    assert!(bad.jacobi_failure().is_some() || bracket_pl(2).schouten_failure(&bad).is_some());
}

#[test]
fn cocycle_rank_three() {
    assert_passes("cocycle m = 3", &cocycle_check(3));
}
