use std::collections::BTreeMap;

use hecke_core::heckealg::{
    kernel_property_check, standard_tableaux, verify_completeness, young_decomposition, Partition,
};
use hecke_core::linalg::default_sample_points;
use hecke_core::HeckeSymmetry;

fn builtins() -> Vec<HeckeSymmetry> {
    vec![
        HeckeSymmetry::standard(2),
        HeckeSymmetry::standard(3),
        HeckeSymmetry::super_flip(1, 1),
        HeckeSymmetry::super_flip(2, 1),
        HeckeSymmetry::super_flip(2, 0),
        HeckeSymmetry::super_flip(0, 2),
    ]
}

#[test]
fn completeness_up_to_four() {
    for h in builtins() {
        for k in 1..=4 {
            let rep = verify_completeness(&h, k).unwrap();
            assert!(rep.all_passed(), "{} k={k}: {:?}", h.label(), rep.failures().collect::<Vec<_>>());
        }
    }
}

#[test]
fn kernel_criterion_through_cap() {
    let pts = default_sample_points();
    let rep = kernel_property_check(&HeckeSymmetry::super_flip(1, 1), (1, 1), 5, &pts).unwrap();
    assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    let rep = kernel_property_check(&HeckeSymmetry::super_flip(2, 0), (2, 0), 4, &pts).unwrap();
    assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
}

/// c^ν_{λμ}: fillings of ν/λ with content μ, rows weakly increasing, columns
/// strictly increasing, reverse reading word a lattice word.
fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> usize {
    if !nu.contains(lambda) || nu.weight() != lambda.weight() + mu.weight() {
        return 0;
    }
    let cells: Vec<(usize, usize)> =
        (0..nu.len()).flat_map(|r| (lambda.part(r)..nu.part(r)).map(move |c| (r, c))).collect();
    let mut fill: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    fn rec(
        i: usize,
        cells: &[(usize, usize)],
        fill: &mut BTreeMap<(usize, usize), usize>,
        mu: &Partition,
        count: &mut usize,
    ) {
        if i == cells.len() {
            // reading order: rows top to bottom, each right to left
            let mut seen = vec![0usize; mu.len() + 1];
            let mut rows: Vec<Vec<((usize, usize), usize)>> = Vec::new();
            for (&(r, c), &v) in fill.iter() {
                if rows.len() <= r {
                    rows.resize(r + 1, Vec::new());
                }
                rows[r].push(((r, c), v));
            }
            for row in rows {
                for (_, v) in row.into_iter().rev() {
                    seen[v] += 1;
                    if v > 0 && seen[v] > seen[v - 1] {
                        return;
                    }
                    if seen[v] > mu.part(v) {
                        return;
                    }
                }
            }
            if (0..mu.len()).all(|v| seen[v] == mu.part(v)) {
                *count += 1;
            }
            return;
        }
        let (r, c) = cells[i];
        for v in 0..mu.len() {
            if c > 0 {
                if let Some(&left) = fill.get(&(r, c - 1)) {
                    if left > v {
                        continue;
                    }
                }
            }
            if r > 0 {
                if let Some(&up) = fill.get(&(r - 1, c)) {
                    if up >= v {
                        continue;
                    }
                }
            }
            fill.insert((r, c), v);
            rec(i + 1, cells, fill, mu, count);
            fill.remove(&(r, c));
        }
    }
    let mut count = 0;
    rec(0, &cells, &mut fill, mu, &mut count);
    count
}

#[test]
fn lr_oracle_sanity() {
    let p = |s: &str| -> Partition { s.parse().unwrap() };
    assert_eq!(lr_coefficient(&p("2,1"), &p("2,1"), &p("3,2,1")), 2);
    assert_eq!(lr_coefficient(&p("1"), &p("1"), &p("2")), 1);
    assert_eq!(lr_coefficient(&p("1"), &p("1"), &p("1,1")), 1);
    assert_eq!(lr_coefficient(&p("2"), &p("2"), &p("2,2")), 1);
    assert_eq!(lr_coefficient(&p("2"), &p("1,1"), &p("2,2")), 0);
    // Σ_ν c^ν_{λμ} d_ν = C(|λ|+|μ|, |λ|) d_λ d_μ
    let lam = p("2,1");
    let mu = p("1,1");
    let total: usize = Partition::all(5).iter().map(|nu| lr_coefficient(&lam, &mu, nu) * nu.num_standard_tableaux()).sum();
    assert_eq!(total, 10 * 2);
}

#[test]
fn littlewood_richardson_consistency() {
    let pts = default_sample_points();
    for h in builtins() {
        let dims: Vec<BTreeMap<Partition, (usize, usize)>> =
            (0..=4).map(|k| if k == 0 { BTreeMap::new() } else { young_decomposition(&h, k, &pts).unwrap() }).collect();
        let dim = |l: &Partition| -> usize { if l.is_empty() { 1 } else { dims[l.weight()][l].1 } };
        for a in 1..=3 {
            for b in 1..=(4 - a) {
                for lam in Partition::all(a) {
                    for mu in Partition::all(b) {
                        let rhs: usize = Partition::all(a + b).iter().map(|nu| lr_coefficient(&lam, &mu, nu) * dim(nu)).sum();
                        assert_eq!(dim(&lam) * dim(&mu), rhs, "{} {lam} x {mu}", h.label());
                    }
                }
            }
        }
    }
}

#[test]
fn ranks_do_not_depend_on_tableau() {
    let pts = default_sample_points();
    for h in builtins() {
        let dec = young_decomposition(&h, 4, &pts).unwrap();
        for (lambda, (d, _)) in dec {
            assert_eq!(d, standard_tableaux(&lambda).len());
        }
    }
}
