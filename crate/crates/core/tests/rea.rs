use hecke_core::linalg::{default_sample_points, flip};
use hecke_core::rea::{build_rea, component_dims, ideal_span_check, sandwich_rank_check, ReaStructure};
use hecke_core::{HeckeSymmetry, QScalar};

fn assert_report(name: &str, rep: &hecke_core::Report) {
    let bad: Vec<_> = rep.failures().map(|c| format!("{}: {:?}", c.name, c.detail)).collect();
    assert!(bad.is_empty(), "{name}: {bad:?}");
}

#[test]
fn projector_calculus_up_to_three() {
    let pts = default_sample_points();
    let cases = [
        HeckeSymmetry::standard(3),
        HeckeSymmetry::super_flip(2, 1),
        HeckeSymmetry::super_flip(0, 2),
        HeckeSymmetry::load(flip(3)).unwrap(),
    ];
    for h in cases {
        let rea = ReaStructure::new(&h);
        assert_report(h.label(), &rea.verify());
        assert_report(h.label(), &ideal_span_check(&rea, &pts).unwrap());
        assert!(sandwich_rank_check(&rea, &pts).unwrap().passed(), "{}", h.label());
    }
}

#[test]
fn q_eigenvalues_standard_two() {
    let h = HeckeSymmetry::standard(2);
    let rea = build_rea(&h).unwrap();
    let pts = default_sample_points();
    let ranks: Vec<usize> = rea.eigenprojectors().iter().map(|(_, p)| p.rank_generic(&pts).unwrap()).collect();
    // Sym² and Λ² of gl(2) split as 6 + 10 with the 10 = P^(1) part
    assert_eq!(ranks.iter().sum::<usize>(), 16);
    assert_eq!(ranks[1], 10);
    assert!(ranks.iter().all(|&r| r > 0));
    // the spectrum is exactly {−q², 1, −q⁻²}
    let evs: Vec<QScalar> = rea.eigenprojectors().iter().map(|(e, _)| e.clone()).collect();
    assert_eq!(evs, vec![-QScalar::q_pow(2), QScalar::one(), -QScalar::q_pow(-2)]);
}

#[test]
fn five_rel_rejects_wrong_constants() {
    let rea = build_rea(&HeckeSymmetry::standard(2)).unwrap();
    let (a, b) = ReaStructure::five_rel_constants(rea.symmetry());
    assert!(rea.five_rel_residual(&a, &b).is_zero());
    assert!(!rea.five_rel_residual(&a, &(&b * &QScalar::from_int(2))).is_zero());
    assert!(!rea.five_rel_residual(&(&a + &QScalar::one()), &b).is_zero());
}

#[test]
fn deformation_dimensions() {
    let pts = default_sample_points();
    let std3 = HeckeSymmetry::standard(3);
    for (k, want) in [(2, 45), (3, 165)] {
        let d = component_dims(&std3, k, &pts).unwrap();
        assert_eq!((d.generic, d.classical), (want, want));
    }
    for ((m, n), k, want) in [((1, 1), 2, 8), ((1, 1), 3, 12), ((2, 1), 2, 41)] {
        let h = HeckeSymmetry::super_flip(m, n).with_birank((m, n));
        let d = component_dims(&h, k, &pts).unwrap();
        assert_eq!((d.generic, d.classical), (want, want), "({m}|{n}) k={k}");
    }
}
