//! Comparison of computed order-2 results with the published reference
//! data. Disagreements are recorded as data, never raised as errors.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::algebra::{cross_check_grid, AlgebraPredicate, HomAlgebra};
use crate::enumerate::{classify, ClassificationReport, ClassifyOptions, MagmaClass};
use crate::error::{Error, Result};
use crate::fixture::{AssociativityClaim, ExampleInstance, FixtureClass, PaperFixture};
use crate::partial::{PartialMagma, PartialMap};
use crate::predicates::{alpha_set, check, PredicateKind};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Match,
    Mismatch,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Match => "MATCH",
            Status::Mismatch => "MISMATCH",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub section: String,
    pub subject: String,
    pub status: Status,
    pub expected: String,
    pub computed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn compare(
        section: &str,
        subject: String,
        expected: String,
        computed: String,
        detail: Option<String>,
    ) -> Check {
        let status = if expected == computed {
            Status::Match
        } else {
            Status::Mismatch
        };
        Check {
            section: section.into(),
            subject,
            status,
            expected,
            computed,
            detail,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<8} [{}] {}", self.status, self.section, self.subject)?;
        if self.status == Status::Mismatch {
            write!(
                f,
                "\n    expected: {}\n    computed: {}",
                self.expected, self.computed
            )?;
            if let Some(d) = &self.detail {
                write!(f, "\n    {d}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationOutcome {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl VerificationOutcome {
    pub fn all_match(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Match)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Mismatch)
    }

    pub fn section<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Check> {
        self.checks.iter().filter(move |c| c.section == name)
    }

    pub fn extend(&mut self, other: VerificationOutcome) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }
}

/// `{33, 12}` in canonical map order; `{}` when empty.
pub fn format_set(set: &[PartialMap]) -> String {
    let codes: Vec<String> = set.iter().map(PartialMap::code).collect();
    format!("{{{}}}", codes.join(", "))
}

fn format_items(items: &[usize]) -> String {
    let items: Vec<String> = items.iter().map(usize::to_string).collect();
    items.join(" ")
}

fn set_difference(
    expected: &[PartialMap],
    computed: &[PartialMap],
) -> (Vec<PartialMap>, Vec<PartialMap>) {
    let e: BTreeSet<&PartialMap> = expected.iter().collect();
    let c: BTreeSet<&PartialMap> = computed.iter().collect();
    (
        e.difference(&c).map(|&a| a.clone()).collect(),
        c.difference(&e).map(|&a| a.clone()).collect(),
    )
}

/// Names the maps in one set but not the other, with a reason for each.
fn diff_detail(
    expected: &[PartialMap],
    computed: &[PartialMap],
    why: impl Fn(&PartialMap) -> Result<String>,
) -> Result<Option<String>> {
    let (missing, extra) = set_difference(expected, computed);
    if missing.is_empty() && extra.is_empty() {
        return Ok(None);
    }
    let mut parts = Vec::new();
    for a in &missing {
        parts.push(format!("{} listed but fails {}", a.code(), why(a)?));
    }
    for a in &extra {
        parts.push(format!("{} holds but is not listed", a.code()));
    }
    Ok(Some(parts.join("; ")))
}

fn class_section(
    report: &ClassificationReport,
    fixture: &PaperFixture,
    out: &mut VerificationOutcome,
) -> Result<()> {
    out.checks.push(Check::compare(
        "classes",
        "number of classes".into(),
        fixture.classes.len().to_string(),
        report.classes.len().to_string(),
        None,
    ));
    let sizes = |sizes: Vec<usize>| {
        let pairs = sizes.iter().filter(|&&s| s == 2).count();
        let singles = sizes.iter().filter(|&&s| s == 1).count();
        format!(
            "{pairs} pairs, {singles} singletons, {} other",
            sizes.len() - pairs - singles
        )
    };
    out.checks.push(Check::compare(
        "classes",
        "orbit sizes".into(),
        sizes(fixture.classes.iter().map(|c| c.members.len()).collect()),
        sizes(report.classes.iter().map(|c| c.members.len()).collect()),
        None,
    ));
    for fc in &fixture.classes {
        let class = report.class_of(fc.first());
        let mut expected: Vec<String> = fc.members.iter().map(|m| m.code().to_string()).collect();
        expected.sort();
        let computed = class
            .map(|c| {
                c.members
                    .iter()
                    .map(|m| m.code().to_string())
                    .collect::<Vec<_>>()
            })
            .unwrap_or_default();
        out.checks.push(Check::compare(
            "classes",
            format!("item {} ({})", fc.item, fc.first().code()),
            expected.join(" "),
            computed.join(" "),
            None,
        ));
        if let Some(c) = class {
            if &c.representative != fc.first() {
                out.notes.push(format!(
                    "item {}: the first listed table {} is not the least table of its class ({})",
                    fc.item,
                    fc.first().code(),
                    c.representative.code()
                ));
            }
        }
    }
    Ok(())
}

fn alpha_set_section(
    report: &ClassificationReport,
    fixture: &PaperFixture,
    limits: &Limits,
    out: &mut VerificationOutcome,
) -> Result<()> {
    for fc in &fixture.classes {
        let first = fc.first();
        let class = report
            .class_of(first)
            .filter(|c| &c.representative == first);
        for kind in PredicateKind::TABULATED {
            let computed = match class.and_then(|c| c.alpha_sets.get(kind)) {
                Some(set) => set.to_vec(),
                None => alpha_set(first, kind, limits)?,
            };
            let expected = &fc.alpha_sets[&kind];
            let detail = diff_detail(expected, &computed, |a| {
                let v = check(first, a, kind)?;
                Ok(v.witness().map(|w| w.to_string()).unwrap_or_default())
            })?;
            out.checks.push(Check::compare(
                "alpha-sets",
                format!("item {} ({}) {}", fc.item, first.code(), kind),
                format_set(expected),
                format_set(&computed),
                detail,
            ));
        }
    }
    Ok(())
}

fn class_for<'a>(report: &'a ClassificationReport, fc: &FixtureClass) -> Result<&'a MagmaClass> {
    report.class_of(fc.first()).ok_or_else(|| {
        Error::Unsupported(format!("table {} is not in the report", fc.first().code()))
    })
}

fn associativity_section(
    report: &ClassificationReport,
    fixture: &PaperFixture,
    out: &mut VerificationOutcome,
) -> Result<()> {
    let mut computed_lists = Vec::new();
    for (name, claim, flag) in [
        (
            "partially associative",
            &fixture.partially_associative,
            (|c: &MagmaClass| c.partially_associative) as fn(&MagmaClass) -> bool,
        ),
        ("associative", &fixture.associative, |c: &MagmaClass| {
            c.associative
        }),
    ] {
        let mut computed = Vec::new();
        for fc in &fixture.classes {
            if flag(class_for(report, fc)?) {
                computed.push(fc.item);
            }
        }
        push_claim_checks(name, claim, &computed, out);
        computed_lists.push(computed);
    }
    let [partial, total] = [&computed_lists[0], &computed_lists[1]];
    let outside: Vec<usize> = total
        .iter()
        .filter(|i| !partial.contains(i))
        .copied()
        .collect();
    out.checks.push(Check::compare(
        "associativity",
        "associative items are partially associative".into(),
        String::new(),
        format_items(&outside),
        Some("associative items missing from the partially associative list".into()),
    ));
    Ok(())
}

fn push_claim_checks(
    name: &str,
    claim: &AssociativityClaim,
    computed: &[usize],
    out: &mut VerificationOutcome,
) {
    let lists_agree = claim.items == computed;
    out.checks.push(Check::compare(
        "associativity",
        format!("{name} items"),
        format_items(&claim.items),
        format_items(computed),
        None,
    ));
    let detail = format!(
        "the claim states {} cases but lists {} items; the computed list has {} items{}",
        claim.stated_count,
        claim.items.len(),
        computed.len(),
        if lists_agree {
            " and equals the listed items, so the stated count is wrong"
        } else {
            ""
        }
    );
    out.checks.push(Check::compare(
        "associativity",
        format!("{name} count"),
        claim.stated_count.to_string(),
        computed.len().to_string(),
        Some(detail),
    ));
}

fn example_section(fixture: &PaperFixture, out: &mut VerificationOutcome) -> Result<()> {
    let maps = PartialMap::all(2)?;
    for ex in &fixture.examples {
        example_checks(ex, &maps, fixture, out)?;
    }
    Ok(())
}

fn example_checks(
    ex: &ExampleInstance,
    maps: &[PartialMap],
    fixture: &PaperFixture,
    out: &mut VerificationOutcome,
) -> Result<()> {
    let algebras = maps
        .iter()
        .map(|a| HomAlgebra::new(ex.table.clone(), a.clone()))
        .collect::<Result<Vec<_>>>()?;
    let select = |preds: &[AlgebraPredicate]| -> Vec<PartialMap> {
        algebras
            .iter()
            .filter(|h| preds.iter().all(|&p| h.holds(p)))
            .map(|h| h.alpha().clone())
            .collect()
    };
    let find = |a: &PartialMap| {
        algebras
            .iter()
            .find(|h| h.alpha() == a)
            .expect("all maps present")
    };
    let bullets: [(&str, &[AlgebraPredicate], &Vec<PartialMap>); 5] = [
        (
            "partially multiplicative",
            &[AlgebraPredicate::PartiallyMultiplicative],
            &ex.partially_multiplicative,
        ),
        (
            "multiplicative",
            &[AlgebraPredicate::Multiplicative],
            &ex.multiplicative,
        ),
        (
            "partially hom-associative",
            &[AlgebraPredicate::PartiallyHomAssociative],
            &ex.partially_hom_associative,
        ),
        (
            "hom-associative",
            &[AlgebraPredicate::HomAssociative],
            &ex.hom_associative,
        ),
        (
            "multiplicative and hom-associative",
            &[
                AlgebraPredicate::Multiplicative,
                AlgebraPredicate::HomAssociative,
            ],
            &ex.multiplicative_and_hom_associative,
        ),
    ];
    for (label, preds, expected) in bullets {
        let computed = select(preds);
        let detail = diff_detail(expected, &computed, |a| {
            let h = find(a);
            let reasons: Vec<String> = preds
                .iter()
                .filter_map(|&p| h.first_violation(p).map(|v| format!("{p} {v}")))
                .collect();
            Ok(reasons.join(", "))
        })?;
        out.checks.push(Check::compare(
            "examples",
            format!("example {} ({}) {}", ex.label, ex.table.code(), label),
            format_set(expected),
            format_set(&computed),
            detail,
        ));
    }
    let id = HomAlgebra::new(ex.table.clone(), PartialMap::identity(2)?)?;
    let flags = |p: bool, a: bool| format!("partially associative {p}, associative {a}");
    out.checks.push(Check::compare(
        "examples",
        format!("example {} ({}) associativity", ex.label, ex.table.code()),
        flags(ex.partially_associative, ex.associative),
        flags(id.is_partially_b_associative(), id.is_associative()),
        None,
    ));
    if let Some(fc) = fixture.class(ex.item) {
        if !fc.members.contains(&ex.table) {
            out.notes.push(format!(
                "example {}: table {} is not listed under item {}",
                ex.label,
                ex.table.code(),
                ex.item
            ));
        }
    }
    let twins: Vec<&str> = fixture
        .examples
        .iter()
        .filter(|o| o.label != ex.label && o.table != ex.table && same_bullets(o, ex))
        .map(|o| o.label.as_str())
        .collect();
    if !twins.is_empty() && ex.label.as_str() > twins[0] {
        out.notes.push(format!(
            "example {}: the listed sets are identical to those of example {}",
            ex.label,
            twins.join(", ")
        ));
    }
    Ok(())
}

fn same_bullets(a: &ExampleInstance, b: &ExampleInstance) -> bool {
    a.partially_multiplicative == b.partially_multiplicative
        && a.multiplicative == b.multiplicative
        && a.partially_hom_associative == b.partially_hom_associative
        && a.hom_associative == b.hom_associative
        && a.multiplicative_and_hom_associative == b.multiplicative_and_hom_associative
}

/// Compares an order-2 classification with the reference data: class
/// pairings, the four α-sets of each first-listed table, the associativity
/// lists and their stated counts, and the worked algebra examples.
pub fn verify_against_paper(
    report: &ClassificationReport,
    fixture: &PaperFixture,
) -> Result<VerificationOutcome> {
    if report.order != 2 || report.totals_only {
        return Err(Error::Unsupported(
            "reference data covers all partial tables of order 2".into(),
        ));
    }
    let limits = Limits::default();
    let mut out = VerificationOutcome::default();
    class_section(report, fixture, &mut out)?;
    alpha_set_section(report, fixture, &limits, &mut out)?;
    associativity_section(report, fixture, &mut out)?;
    example_section(fixture, &mut out)?;
    Ok(out)
}

/// Classifies order 2, verifies it against `fixture`, and appends the
/// algebra/magma equivalence grid as one summary check plus any
/// disagreeing cases.
pub fn verify_all(fixture: &PaperFixture, limits: &Limits) -> Result<VerificationOutcome> {
    let options = ClassifyOptions {
        totals_only: false,
        limits: *limits,
    };
    let report = classify(2, &options)?;
    let mut out = verify_against_paper(&report, fixture)?;
    let grid = cross_check_grid(2, limits)?;
    let mut summary = Check::compare(
        "algebra-equivalence",
        "table and alpha pairs agreeing on every equivalence".into(),
        format!("{0}/{0}", grid.pairs),
        format!("{}/{}", grid.agreeing_pairs, grid.pairs),
        None,
    );
    summary.detail = Some(format!(
        "{}/{} equivalences hold",
        grid.agreeing_pairs, grid.pairs
    ));
    out.checks.push(summary);
    out.extend(grid.outcome);
    Ok(out)
}

/// Items whose first listed table satisfies `pred`, in item order.
pub fn items_where(fixture: &PaperFixture, pred: impl Fn(&PartialMagma) -> bool) -> Vec<usize> {
    fixture
        .classes
        .iter()
        .filter(|c| pred(c.first()))
        .map(|c| c.item)
        .collect()
}
