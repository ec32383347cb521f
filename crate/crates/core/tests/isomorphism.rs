use hom_magma::enumerate::{count_classes, enumerate_tables};
use hom_magma::iso::{
    are_isomorphic, automorphisms, burnside_class_count, canonical_form, is_isomorphism_wpm,
    Permutation,
};
use hom_magma::predicates::alpha_set;
use hom_magma::{Limits, PartialMagma, PartialMap, PredicateKind};
use hom_magma_conformance as oracle;

fn tables(n: usize) -> Vec<PartialMagma> {
    enumerate_tables(n, false, &Limits::default())
        .unwrap()
        .collect()
}

fn digits(m: &PartialMagma) -> Vec<u8> {
    let n = m.order();
    m.cells()
        .iter()
        .map(|c| c.map_or(n, |e| e.index()) as u8)
        .collect()
}

/// The swap relabelling written out cell by cell: `(a,b,c,d)` goes to
/// `(t d, t c, t b, t a)`.
fn swapped(m: &PartialMagma) -> String {
    let t = |c: char| match c {
        '1' => '2',
        '2' => '1',
        other => other,
    };
    m.code().as_str().chars().rev().map(t).collect()
}

#[test]
fn isomorphism_matches_canonical_forms_and_swap_criterion() {
    let all = tables(2);
    let canon: Vec<PartialMagma> = all.iter().map(|m| canonical_form(m).unwrap()).collect();
    for (i, m) in all.iter().enumerate() {
        for (j, m2) in all.iter().enumerate() {
            let iso = are_isomorphic(m, m2).unwrap().is_some();
            assert_eq!(iso, canon[i] == canon[j], "{} {}", m.code(), m2.code());
            let criterion = m == m2 || swapped(m) == m2.code().as_str();
            assert_eq!(iso, criterion, "{} {}", m.code(), m2.code());
            assert_eq!(iso, oracle::isomorphic(&digits(m), &digits(m2)));
        }
    }
}

#[test]
fn canonical_form_agrees_with_brute_force_at_order_three() {
    // every 997th table keeps the run short
    for m in tables(3).iter().step_by(997) {
        assert_eq!(
            digits(&canonical_form(m).unwrap()),
            oracle::canonical(&digits(m))
        );
    }
}

#[test]
fn singletons_are_exactly_the_swap_invariant_tables() {
    for m in tables(2) {
        let auts = automorphisms(&m).unwrap();
        assert_eq!(auts.len() == 2, swapped(&m) == m.code().as_str());
    }
}

#[test]
fn alpha_sets_are_closed_under_automorphisms() {
    let limits = Limits::default();
    for m in tables(2) {
        for phi in automorphisms(&m).unwrap() {
            for kind in PredicateKind::ALL {
                let set = alpha_set(&m, kind, &limits).unwrap();
                for a in &set {
                    assert!(
                        set.contains(&phi.conjugate(a)),
                        "{kind} {} {}",
                        m.code(),
                        a.code()
                    );
                }
            }
        }
    }
}

#[test]
fn conjugation_matches_brute_force() {
    for phi in Permutation::all(3).unwrap() {
        let p: Vec<u8> = (1..=3)
            .map(|l| {
                phi.apply(hom_magma::Element::from_label(l, 3).unwrap())
                    .index() as u8
            })
            .collect();
        for a in PartialMap::all(3).unwrap() {
            let d: Vec<u8> = a
                .images()
                .iter()
                .map(|c| c.map_or(3, |e| e.index()) as u8)
                .collect();
            let got: Vec<u8> = phi
                .conjugate(&a)
                .images()
                .iter()
                .map(|c| c.map_or(3, |e| e.index()) as u8)
                .collect();
            assert_eq!(got, oracle::conjugate(&d, &p));
        }
    }
}

#[test]
fn weak_isomorphisms_include_the_strong_ones() {
    let all = tables(2);
    for m in &all {
        for m2 in &all {
            if let Some(phi) = are_isomorphic(m, m2).unwrap() {
                assert!(is_isomorphism_wpm(m, m2, &phi.as_partial_map()).unwrap());
            }
        }
    }
    // a non-injective map is never a weak isomorphism
    let m: PartialMagma = "1111".parse().unwrap();
    assert!(!is_isomorphism_wpm(&m, &m, &"11".parse().unwrap()).unwrap());
}

#[test]
fn orbit_formula_matches_fixed_point_count() {
    for n in 1..=3 {
        for totals_only in [false, true] {
            assert_eq!(
                burnside_class_count(n, totals_only).unwrap(),
                oracle::burnside_by_fixed_tables(n, totals_only) as u128,
                "n = {n}, totals only = {totals_only}"
            );
        }
    }
    assert_eq!(burnside_class_count(2, false).unwrap(), 45);
    assert_eq!(burnside_class_count(2, true).unwrap(), 10);
}

#[test]
fn enumeration_counts_match_orbit_formula() {
    let limits = Limits::default();
    for n in 1..=2 {
        for totals_only in [false, true] {
            assert_eq!(
                count_classes(n, totals_only, &limits).unwrap() as u128,
                burnside_class_count(n, totals_only).unwrap()
            );
        }
    }
    assert_eq!(
        count_classes(3, false, &limits).unwrap() as u128,
        burnside_class_count(3, false).unwrap()
    );
    assert_eq!(
        count_classes(3, true, &limits).unwrap(),
        oracle::orbit_count(3, true)
    );
}
