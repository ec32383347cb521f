//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use hom_magma::algebra::{cross_check_grid, randomized_bilinear_check, HomAlgebra};
use hom_magma::enumerate::{classify, count_classes, ClassificationReport, ClassifyOptions};
use hom_magma::fixture::PaperFixture;
use hom_magma::iso::{are_isomorphic, burnside_class_count, canonical_form};
use hom_magma::partial::partially_equal;
use hom_magma::predicates::{alpha_set, check};
use hom_magma::verify::{verify_against_paper, Status};
use hom_magma::{Limits, PartialMagma, PartialMap, PredicateKind};
use hom_magma_conformance as oracle;

struct Verdict {
    pass: bool,
    summary: String,
    failures: Vec<String>,
}

impl Verdict {
    fn new(pass: bool, summary: String) -> Self {
        Verdict {
            pass,
            summary,
            failures: Vec::new(),
        }
    }
}

fn digits(m: &PartialMagma) -> oracle::Digits {
    let n = m.order();
    m.cells()
        .iter()
        .map(|c| c.map_or(n, |e| e.index()) as u8)
        .collect()
}

fn map_digits(a: &PartialMap) -> oracle::Digits {
    let n = a.order();
    a.images()
        .iter()
        .map(|c| c.map_or(n, |e| e.index()) as u8)
        .collect()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("thread pool")
        .install(f)
}

fn order_two() -> ClassificationReport {
    classify(2, &ClassifyOptions::default()).expect("order 2 classifies")
}

/// Class pairings of the 81 order-2 tables, under one second.
fn class_pairings(fixture: &PaperFixture) -> Verdict {
    let (report, took) = timed(order_two);
    let computed: BTreeSet<BTreeSet<String>> = report
        .classes
        .iter()
        .map(|c| c.members.iter().map(|m| m.code().to_string()).collect())
        .collect();
    let mut failures = Vec::new();
    let mut matched = 0;
    for fc in &fixture.classes {
        let set: BTreeSet<String> = fc.members.iter().map(|m| m.code().to_string()).collect();
        if computed.contains(&set) {
            matched += 1;
        } else {
            failures.push(format!("item {} not reproduced: {:?}", fc.item, set));
        }
    }
    let pairs = report
        .classes
        .iter()
        .filter(|c| c.members.len() == 2)
        .count();
    let singles = report
        .classes
        .iter()
        .filter(|c| c.members.len() == 1)
        .count();
    let pass = report.classes.len() == 45
        && matched == 45
        && fixture.classes.len() == 45
        && (pairs, singles) == (36, 9)
        && took < Duration::from_secs(1);
    let mut v = Verdict::new(
        pass,
        format!(
            "class pairings: {} classes, {matched}/45 items reproduced, {pairs} pairs + {singles} singletons, {took:.2?} (limit 1 s)",
            report.classes.len()
        ),
    );
    v.failures = failures;
    v
}

/// The four α-sets of each first-listed table against the reference data,
/// 180 comparisons under one second.
fn alpha_sets(fixture: &PaperFixture) -> Verdict {
    let limits = Limits::default();
    let ((equal, oracle_agrees, failures), took) = timed(|| {
        let mut equal = 0;
        let mut oracle_agrees = 0;
        let mut failures = Vec::new();
        for fc in &fixture.classes {
            let t = digits(fc.first());
            for kind in PredicateKind::TABULATED {
                let computed = alpha_set(fc.first(), kind, &limits).expect("order 2");
                let expected = &fc.alpha_sets[&kind];
                if &computed == expected {
                    equal += 1;
                } else {
                    let codes = |s: &[PartialMap]| s.iter().map(|a| a.code()).collect::<Vec<_>>();
                    failures.push(format!(
                        "item {} ({}) {kind}: expected {:?}, computed {:?}",
                        fc.item,
                        fc.first().code(),
                        codes(expected),
                        codes(&computed)
                    ));
                }
                let pred: fn(&[u8], &[u8]) -> bool = match kind {
                    PredicateKind::WeakPartialEndo => oracle::weak_partial_endo,
                    PredicateKind::PartialEndo => oracle::partial_endo,
                    PredicateKind::PartialHomAssoc => oracle::partial_hom_assoc,
                    _ => oracle::hom_assoc,
                };
                let mut by_oracle = oracle::alpha_codes(&t, pred);
                let mut by_lib: Vec<String> = computed.iter().map(|a| a.code()).collect();
                by_oracle.sort();
                by_lib.sort();
                if by_oracle == by_lib {
                    oracle_agrees += 1;
                }
            }
        }
        (equal, oracle_agrees, failures)
    });
    let total = fixture.classes.len() * 4;
    let mut v = Verdict::new(
        equal == 180 && total == 180 && took < Duration::from_secs(1),
        format!(
            "alpha-set tables: {equal}/{total} sets equal the reference data (brute-force oracle agrees on {oracle_agrees}/{total}), {took:.2?} (limit 1 s)"
        ),
    );
    v.failures = failures;
    v
}

/// Associativity lists: computed beside the claims, count disagreement
/// flagged, lists consistent and stable.
fn associativity_lists(fixture: &PaperFixture) -> Verdict {
    let report = order_two();
    let outcome = verify_against_paper(&report, fixture).expect("order 2");
    let find = |subject: &str| {
        outcome
            .section("associativity")
            .find(|c| c.subject == subject)
            .unwrap_or_else(|| panic!("no check {subject:?}"))
    };
    let mut failures = Vec::new();
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, claim) in [
        ("partially associative", &fixture.partially_associative),
        ("associative", &fixture.associative),
    ] {
        let items = find(&format!("{name} items"));
        let count = find(&format!("{name} count"));
        lines.push(format!(
            "{name}: claimed {} cases listing {} items, computed {} items",
            claim.stated_count,
            claim.items.len(),
            items.computed.split_whitespace().count()
        ));
        let flagged = count.status == Status::Mismatch
            && count
                .detail
                .as_deref()
                .is_some_and(|d| d.contains("stated count is wrong"));
        let count_differs = claim.stated_count != claim.items.len();
        if count_differs && !flagged {
            ok = false;
            failures.push(format!("{name}: stated count disagreement not flagged"));
        }
        if items.status != Status::Match {
            failures.push(format!(
                "{name}: listed {} / computed {}",
                items.expected, items.computed
            ));
        }
    }

    // computed lists from the brute-force oracle
    let oracle_list = |pred: fn(&[u8]) -> bool| -> Vec<usize> {
        fixture
            .classes
            .iter()
            .filter(|c| pred(&digits(c.first())))
            .map(|c| c.item)
            .collect()
    };
    let partial = oracle_list(oracle::partially_assoc);
    let total = oracle_list(oracle::assoc);
    let lib_list = |subject: &str| -> Vec<usize> {
        find(subject)
            .computed
            .split_whitespace()
            .map(|s| s.parse().expect("item number"))
            .collect()
    };
    if lib_list("partially associative items") != partial || lib_list("associative items") != total
    {
        ok = false;
        failures.push("computed lists disagree with the brute-force oracle".into());
    }
    if !total.iter().all(|i| partial.contains(i)) {
        ok = false;
        failures.push("an associative class is not partially associative".into());
    }
    let again = single_threaded(order_two);
    let outcome_again = verify_against_paper(&again, fixture).expect("order 2");
    if again != report || outcome_again != outcome {
        ok = false;
        failures.push("results differ between runs".into());
    }
    let mut v = Verdict::new(
        ok,
        format!(
            "associativity lists: {}; associative within partially associative; identical across runs",
            lines.join("; ")
        ),
    );
    v.failures = failures;
    v
}

/// Algebra-level vs magma-level equivalences on all 729 pairs, under five
/// seconds.
fn equivalence_grid() -> Verdict {
    let (grid, took) = timed(|| cross_check_grid(2, &Limits::default()).expect("order 2"));
    let mut v = Verdict::new(
        grid.pairs == 729 && grid.all_agree() && took < Duration::from_secs(5),
        format!(
            "algebra equivalences: {}/{} pairs agree on every equivalence, {took:.2?} (limit 5 s)",
            grid.agreeing_pairs, grid.pairs
        ),
    );
    v.failures = grid.outcome.mismatches().map(|c| c.to_string()).collect();
    v
}

/// Every bullet of the worked algebra examples.
fn worked_examples(fixture: &PaperFixture) -> Verdict {
    let outcome = verify_against_paper(&order_two(), fixture).expect("order 2");
    let checks: Vec<_> = outcome.section("examples").collect();
    let ok = checks.iter().filter(|c| c.status == Status::Match).count();
    let mut v = Verdict::new(
        ok == 30 && checks.len() == 30,
        format!("worked examples: {ok}/{} bullets verified", checks.len()),
    );
    v.failures = checks
        .iter()
        .filter(|c| c.status == Status::Mismatch)
        .map(|c| c.to_string())
        .collect();
    v
}

/// Class counts by enumeration against orbit counting, and the order-3
/// enumeration time on one thread.
fn orbit_counts() -> Verdict {
    let limits = Limits::default();
    let by_enum2 = count_classes(2, false, &limits).expect("order 2");
    let burnside2 = burnside_class_count(2, false).expect("order 2");
    let oracle3 = oracle::burnside_by_fixed_tables(3, false);
    let (by_enum3, took) = single_threaded(|| timed(|| count_classes(3, false, &limits)));
    let by_enum3 = by_enum3.expect("order 3 within budget");
    let burnside3 = burnside_class_count(3, false).expect("order 3");
    let pass = by_enum2 == 45
        && burnside2 == 45
        && by_enum3 as u128 == burnside3
        && burnside3 == oracle3 as u128
        && took < Duration::from_secs(60);
    Verdict::new(
        pass,
        format!(
            "orbit counts: order 2 enumeration {by_enum2}, formula {burnside2}; order 3 enumeration {by_enum3}, formula {burnside3}, fixed-table count {oracle3}; order 3 enumeration {took:.2?} on one thread (limit 60 s)"
        ),
    )
}

/// The five property suites.
fn property_suites() -> Verdict {
    let tables: Vec<PartialMagma> =
        hom_magma::enumerate::enumerate_tables(2, false, &Limits::default())
            .expect("order 2")
            .collect();
    let maps = PartialMap::all(2).expect("order 2");
    let mut failures = Vec::new();

    // (i) implications over the grid
    let mut pairs = 0;
    for m in &tables {
        for a in &maps {
            pairs += 1;
            let holds = |k| check(m, a, k).expect("orders agree").holds();
            if holds(PredicateKind::PartialEndo) && !holds(PredicateKind::WeakPartialEndo) {
                failures.push(format!(
                    "(i) {} {}: partial-endo without weak",
                    m.code(),
                    a.code()
                ));
            }
            if holds(PredicateKind::HomAssoc) && !holds(PredicateKind::PartialHomAssoc) {
                failures.push(format!(
                    "(i) {} {}: hom-assoc without partial",
                    m.code(),
                    a.code()
                ));
            }
        }
    }

    // (ii) partial equality of partial maps
    let peq = |f: &PartialMap, g: &PartialMap| partially_equal(f, g).expect("same shape");
    for f in &maps {
        if !peq(f, f) {
            failures.push(format!("(ii) {} not related to itself", f.code()));
        }
        for g in &maps {
            if peq(f, g) != peq(g, f) {
                failures.push(format!("(ii) {} {} asymmetric", f.code(), g.code()));
            }
        }
    }
    let [f, g, h]: [PartialMap; 3] = ["13", "33", "23"].map(|c| c.parse().expect("map code"));
    let witness = peq(&f, &g) && peq(&g, &h) && !peq(&f, &h);
    if !witness {
        failures.push("(ii) 13, 33, 23 is not a non-transitivity witness".into());
    }

    // (iii) canonical forms
    for m in &tables {
        let c = canonical_form(m).expect("order 2");
        if canonical_form(&c).expect("order 2") != c {
            failures.push(format!("(iii) canonical form of {} is not fixed", m.code()));
        }
        if digits(&c) != oracle::canonical(&digits(m)) {
            failures.push(format!(
                "(iii) canonical form of {} differs from the oracle",
                m.code()
            ));
        }
        for other in &tables {
            if oracle::isomorphic(&digits(m), &digits(other))
                && canonical_form(other).expect("order 2") != c
            {
                failures.push(format!("(iii) {} and {} differ", m.code(), other.code()));
            }
        }
    }

    // (iv) conjugation equivariance across paired classes
    let report = order_two();
    let mut paired = 0;
    for class in report.classes.iter().filter(|c| c.members.len() == 2) {
        paired += 1;
        let (m, m2) = (&class.members[0], &class.members[1]);
        let phi = are_isomorphic(m, m2)
            .expect("order 2")
            .expect("members are isomorphic");
        for kind in PredicateKind::ALL {
            let mut moved: Vec<PartialMap> = alpha_set(m, kind, &Limits::default())
                .expect("order 2")
                .iter()
                .map(|a| phi.conjugate(a))
                .collect();
            moved.sort();
            if moved != alpha_set(m2, kind, &Limits::default()).expect("order 2") {
                failures.push(format!(
                    "(iv) {kind} sets of {} and {} not conjugate",
                    m.code(),
                    m2.code()
                ));
            }
        }
    }

    // (v) randomized exact checks on every Hom-associative pair
    let mut instances = 0;
    for (i, m) in tables.iter().enumerate() {
        for (j, a) in maps.iter().enumerate() {
            let alg = HomAlgebra::new(m.clone(), a.clone()).expect("orders agree");
            if !alg.is_hom_associative() {
                continue;
            }
            instances += 1;
            let seed = (i * maps.len() + j) as u64;
            if !randomized_bilinear_check(&alg, 100, seed) {
                failures.push(format!("(v) {} {} seed {seed}", m.code(), a.code()));
            }
            if !oracle::hom_assoc(&digits(m), &map_digits(a)) {
                failures.push(format!(
                    "(v) {} {} not Hom-associative by oracle",
                    m.code(),
                    a.code()
                ));
            }
        }
    }

    let mut v = Verdict::new(
        failures.is_empty() && pairs == 729 && witness && paired == 36 && instances > 0,
        format!(
            "property suites: implications on {pairs} pairs, partial equality with non-transitivity witness, canonical forms on {} tables, equivariance on {paired} paired classes, 100 random trials on each of {instances} Hom-associative pairs",
            tables.len()
        ),
    );
    v.failures = failures;
    v
}

fn main() {
    let fixture = PaperFixture::embedded();
    let criteria: Vec<(u32, Box<dyn Fn() -> Verdict>)> = vec![
        (1, Box::new(|| class_pairings(&fixture))),
        (2, Box::new(|| alpha_sets(&fixture))),
        (3, Box::new(|| associativity_lists(&fixture))),
        (4, Box::new(equivalence_grid)),
        (5, Box::new(|| worked_examples(&fixture))),
        (6, Box::new(orbit_counts)),
        (7, Box::new(property_suites)),
    ];
    let mut failed = Vec::new();
    for (id, run) in &criteria {
        let v = run();
        println!(
            "{} criterion {id}: {}",
            if v.pass { "PASS" } else { "FAIL" },
            v.summary
        );
        for f in &v.failures {
            println!("      {}", f.replace('\n', "\n      "));
        }
        if !v.pass {
            failed.push(*id);
        }
    }
    println!(
        "\n{} of {} criteria passed",
        criteria.len() - failed.len(),
        criteria.len()
    );
    if !failed.is_empty() {
        println!("failed: {failed:?}");
        std::process::exit(1);
    }
}
