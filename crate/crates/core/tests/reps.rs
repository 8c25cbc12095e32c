use hecke_core::heckealg::Partition;
use hecke_core::linalg::flip;
use hecke_core::reps::*;
use hecke_core::swcat::{Letter, MixedWord};
use hecke_core::{HeckeSymmetry, QMatrix, QScalar, Report};

// Standard R conjugated by a non-orthogonal A⊗A, so that R̄ ≠ R.
fn skewed() -> HeckeSymmetry {
    let a = QMatrix::from_entries(2, 2, [(0, 0, QScalar::one()), (0, 1, QScalar::one()), (1, 1, QScalar::one())]);
    let ai = a.inverse().unwrap();
    let r = a.kron(&a).mul(HeckeSymmetry::standard(2).r()).mul(&ai.kron(&ai));
    HeckeSymmetry::load(r).unwrap()
}

fn assert_passes(label: &str, rep: &Report) {
    let failures: Vec<String> = rep.failures().map(|c| format!("{}: {:?}", c.name, c.detail)).collect();
    assert!(failures.is_empty(), "{label}: {failures:?}");
}

#[test]
fn module_family_standard_two() {
    let h = HeckeSymmetry::standard(2);
    assert_passes("std2", &representation_report(&h, 3).unwrap());
    assert_passes("std2 sl", &sl_report(&h).unwrap());
}

#[test]
fn module_family_super_one_one() {
    let h = HeckeSymmetry::super_flip(1, 1);
    assert_passes("sf(1,1)", &representation_report(&h, 3).unwrap());
    let sl = sl_report(&h).unwrap();
    assert!(sl.checks.iter().all(|c| c.status == hecke_core::Status::Skip));
}

#[test]
fn module_family_skewed() {
    let h = skewed();
    assert_ne!(h.r().transpose(), *h.r());
    assert_passes("skewed", &representation_report(&h, 2).unwrap());
    assert_passes("skewed sl", &sl_report(&h).unwrap());
}

#[test]
fn module_family_standard_three() {
    let h = HeckeSymmetry::standard(3);
    assert_passes("std3", &representation_report(&h, 2).unwrap());
    assert_passes("std3 sl", &sl_report(&h).unwrap());
}

#[test]
fn adjoint_is_basic_times_dual() {
    for h in [HeckeSymmetry::standard(2), skewed(), HeckeSymmetry::super_flip(2, 1)] {
        let prod = rho_tensor(&rho_basic(&h), &rho_dual(&h));
        assert_eq!(prod.images(), adjoint_rep(&h).images());
    }
}

#[test]
fn adjoint_at_one_is_gl() {
    let one = num_rational::BigRational::from_integer(1.into());
    let ad = adjoint_rep(&HeckeSymmetry::standard(2));
    let at_one: Vec<QMatrix> = ad.images().iter().map(|m| m.eval_at(&one).unwrap()).collect();
    assert_eq!(at_one, graded_adjoint_oracle(&[false, false]));
    let flip_ad = adjoint_rep(&HeckeSymmetry::load(flip(2)).unwrap());
    assert_eq!(flip_ad.images(), at_one.as_slice());
    let sf = adjoint_rep(&HeckeSymmetry::super_flip(1, 1));
    assert_eq!(sf.images(), graded_adjoint_oracle(&[false, true]).as_slice());
    assert_ne!(sf.images(), graded_adjoint_oracle(&[false, false]).as_slice());
}

#[test]
fn restriction_outside_hook_is_rejected() {
    let h = HeckeSymmetry::super_flip(1, 1);
    let rho = tensor_power(&h, Letter::V, 4);
    let lambda = Partition::new(vec![2, 2]).unwrap();
    assert!(matches!(restrict(&rho, &lambda, 0), Err(RepError::OutsideHook(_))));
}

#[test]
fn restricted_dimensions_standard_two() {
    let h = HeckeSymmetry::standard(2);
    for (shape, dim) in [(vec![2], 3), (vec![1, 1], 1), (vec![2, 1], 2)] {
        let lambda = Partition::new(shape).unwrap();
        let k = lambda.weight();
        for letter in [Letter::V, Letter::Dual] {
            let r = restrict(&tensor_power(&h, letter, k), &lambda, 0).unwrap();
            assert_eq!(r.dim(), dim);
            assert!(r.check_relations().passed());
        }
    }
}

#[test]
fn rep_verify_summaries() {
    let h = HeckeSymmetry::standard(2);
    let w: MixedWord = "VV".parse().unwrap();
    let s = rep_verify(&h, &w, Some(&Partition::new(vec![2]).unwrap())).unwrap();
    assert!(s.relations_ok && s.equivariant);
    assert_eq!(s.dim, 3);
    assert_eq!(s.rdim, Some(hecke_core::swcat::r_dimension(&h, &Partition::new(vec![2]).unwrap()).unwrap()));
    let mixed = rep_verify(&h, &"VV*".parse().unwrap(), None).unwrap();
    assert_eq!((mixed.dim, mixed.rdim), (4, None));
}

#[test]
fn sl2_at_two_hbar_values() {
    let h = HeckeSymmetry::standard(2);
    let sl = sl_reduce(&rho_basic(&h)).unwrap();
    for hbar in [QScalar::one(), QScalar::from_int(2)] {
        let gens = sl2_generators(&sl, &hbar);
        assert_passes("sl2", &sl2_relations(&h, &gens, &hbar));
    }
    let wrong = sl2_generators(&sl, &QScalar::one());
    assert!(!sl2_relations(&h, &wrong, &QScalar::from_int(2)).all_passed());
}
