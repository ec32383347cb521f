//! Homomorphism and Hom-associativity predicates of a partial magma with a
//! partial twisting map, and the sets of maps satisfying them.
//!
//! Both sides of every identity are evaluated pointwise; an undefined
//! factor anywhere makes that side undefined at the point.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partial::{
    elements, first_disagreement, first_partial_disagreement, Disagreement, Element,
    PartialFunction, PartialMagma, PartialMap, Point, Points, Pointwise,
};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PredicateKind {
    WeakPartialEndo,
    PartialEndo,
    Endo,
    PartialHomAssoc,
    HomAssoc,
    PartialAssoc,
    Assoc,
}

impl PredicateKind {
    pub const ALL: [PredicateKind; 7] = [
        PredicateKind::WeakPartialEndo,
        PredicateKind::PartialEndo,
        PredicateKind::Endo,
        PredicateKind::PartialHomAssoc,
        PredicateKind::HomAssoc,
        PredicateKind::PartialAssoc,
        PredicateKind::Assoc,
    ];

    /// The four kinds tabulated per class.
    pub const TABULATED: [PredicateKind; 4] = [
        PredicateKind::WeakPartialEndo,
        PredicateKind::PartialEndo,
        PredicateKind::PartialHomAssoc,
        PredicateKind::HomAssoc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PredicateKind::WeakPartialEndo => "weak-partial-endo",
            PredicateKind::PartialEndo => "partial-endo",
            PredicateKind::Endo => "endo",
            PredicateKind::PartialHomAssoc => "partial-hom-assoc",
            PredicateKind::HomAssoc => "hom-assoc",
            PredicateKind::PartialAssoc => "partial-assoc",
            PredicateKind::Assoc => "assoc",
        }
    }

    /// Whether the predicate depends on the twisting map at all.
    pub fn uses_alpha(self) -> bool {
        !matches!(self, PredicateKind::PartialAssoc | PredicateKind::Assoc)
    }
}

impl fmt::Display for PredicateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PredicateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PredicateKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::invalid_code(s, "unknown predicate kind"))
    }
}

/// Why a predicate failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The two sides of the identity differ at `point`.
    Mismatch(Disagreement<Element>),
    /// A full endomorphism needs a total table.
    UndefinedProduct(Point),
    /// A full endomorphism needs a total map.
    UndefinedImage(Element),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Mismatch(d) => write!(f, "{d}"),
            Witness::UndefinedProduct(p) => write!(f, "product at {p} is undefined"),
            Witness::UndefinedImage(x) => write!(f, "alpha({x}) is undefined"),
        }
    }
}

/// Outcome of a predicate, with the first point of failure when it fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    witness: Option<Witness>,
}

impl Verdict {
    pub const HOLDS: Verdict = Verdict { witness: None };

    fn from_disagreement(d: Option<Disagreement<Element>>) -> Self {
        Verdict {
            witness: d.map(Witness::Mismatch),
        }
    }

    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }
}

/// `α ∘ ∇` and `∇ ∘ (α × α)` as pointwise partial functions on pairs.
#[allow(clippy::type_complexity)]
fn endo_sides<'a>(
    m: &'a PartialMagma,
    alpha: &'a PartialMap,
) -> (
    Pointwise<impl Fn(&Point) -> Option<Element> + 'a, Element>,
    Pointwise<impl Fn(&Point) -> Option<Element> + 'a, Element>,
) {
    let n = m.order();
    let left = Pointwise::new(n, 2, move |p: &Point| {
        alpha.apply_opt(m.product(p[0], p[1]))
    });
    let right = Pointwise::new(n, 2, move |p: &Point| {
        m.product_opt(alpha.apply(p[0]), alpha.apply(p[1]))
    });
    (left, right)
}

/// `∇ ∘ (α × ∇)` and `∇ ∘ (∇ × α)` on triples.
#[allow(clippy::type_complexity)]
fn hom_assoc_sides<'a>(
    m: &'a PartialMagma,
    alpha: &'a PartialMap,
) -> (
    Pointwise<impl Fn(&Point) -> Option<Element> + 'a, Element>,
    Pointwise<impl Fn(&Point) -> Option<Element> + 'a, Element>,
) {
    let n = m.order();
    let left = Pointwise::new(n, 3, move |p: &Point| {
        m.product_opt(alpha.apply(p[0]), m.product(p[1], p[2]))
    });
    let right = Pointwise::new(n, 3, move |p: &Point| {
        m.product_opt(m.product(p[0], p[1]), alpha.apply(p[2]))
    });
    (left, right)
}

/// Evaluates `kind` for the magma `m` twisted by `alpha`. The associativity
/// kinds ignore `alpha` and use the total identity, though its order is still
/// checked.
pub fn check(m: &PartialMagma, alpha: &PartialMap, kind: PredicateKind) -> Result<Verdict> {
    Error::check_orders(m.order(), alpha.order())?;
    let identity;
    let alpha = if kind.uses_alpha() {
        alpha
    } else {
        identity = PartialMap::identity(m.order())?;
        &identity
    };
    Ok(match kind {
        PredicateKind::WeakPartialEndo => {
            let (l, r) = endo_sides(m, alpha);
            Verdict::from_disagreement(first_partial_disagreement(&l, &r)?)
        }
        PredicateKind::PartialEndo => {
            let (l, r) = endo_sides(m, alpha);
            Verdict::from_disagreement(first_disagreement(&l, &r)?)
        }
        PredicateKind::Endo => {
            if let Some(p) = Points::new(m.shape()).find(|p| m.product(p[0], p[1]).is_none()) {
                return Ok(Verdict {
                    witness: Some(Witness::UndefinedProduct(p)),
                });
            }
            if let Some(x) = elements(m.order()).find(|&x| alpha.apply(x).is_none()) {
                return Ok(Verdict {
                    witness: Some(Witness::UndefinedImage(x)),
                });
            }
            let (l, r) = endo_sides(m, alpha);
            Verdict::from_disagreement(first_disagreement(&l, &r)?)
        }
        PredicateKind::PartialHomAssoc | PredicateKind::PartialAssoc => {
            let (l, r) = hom_assoc_sides(m, alpha);
            Verdict::from_disagreement(first_partial_disagreement(&l, &r)?)
        }
        PredicateKind::HomAssoc | PredicateKind::Assoc => {
            let (l, r) = hom_assoc_sides(m, alpha);
            Verdict::from_disagreement(first_disagreement(&l, &r)?)
        }
    })
}

pub fn is_weak_partial_endomorphism(m: &PartialMagma, alpha: &PartialMap) -> Result<bool> {
    Ok(check(m, alpha, PredicateKind::WeakPartialEndo)?.holds())
}

pub fn is_partial_endomorphism(m: &PartialMagma, alpha: &PartialMap) -> Result<bool> {
    Ok(check(m, alpha, PredicateKind::PartialEndo)?.holds())
}

/// A homomorphism of magmas: both the table and `alpha` total.
pub fn is_endomorphism(m: &PartialMagma, alpha: &PartialMap) -> Result<bool> {
    Ok(check(m, alpha, PredicateKind::Endo)?.holds())
}

pub fn is_partially_hom_associative(m: &PartialMagma, alpha: &PartialMap) -> Result<bool> {
    Ok(check(m, alpha, PredicateKind::PartialHomAssoc)?.holds())
}

pub fn is_hom_associative(m: &PartialMagma, alpha: &PartialMap) -> Result<bool> {
    Ok(check(m, alpha, PredicateKind::HomAssoc)?.holds())
}

pub fn is_partially_associative(m: &PartialMagma) -> bool {
    let id = PartialMap::identity(m.order()).expect("magma order is valid");
    check(m, &id, PredicateKind::PartialAssoc)
        .expect("orders agree")
        .holds()
}

pub fn is_associative(m: &PartialMagma) -> bool {
    let id = PartialMap::identity(m.order()).expect("magma order is valid");
    check(m, &id, PredicateKind::Assoc)
        .expect("orders agree")
        .holds()
}

/// Every partial self-map satisfying `kind`, in canonical map order.
pub fn alpha_set(
    m: &PartialMagma,
    kind: PredicateKind,
    limits: &Limits,
) -> Result<Vec<PartialMap>> {
    let required = PartialMap::count(m.order()).unwrap_or(u128::MAX);
    if required > limits.max_maps {
        return Err(Error::LimitExceeded {
            what: "number of partial maps",
            required,
            limit: limits.max_maps,
        });
    }
    let mut out = Vec::new();
    for alpha in PartialMap::all(m.order())? {
        if check(m, &alpha, kind)?.holds() {
            out.push(alpha);
        }
    }
    Ok(out)
}

/// The four tabulated α-sets of one table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaSets {
    pub wpe: Vec<PartialMap>,
    pub pe: Vec<PartialMap>,
    pub pha: Vec<PartialMap>,
    pub ha: Vec<PartialMap>,
}

impl AlphaSets {
    pub fn compute(m: &PartialMagma, limits: &Limits) -> Result<Self> {
        Ok(AlphaSets {
            wpe: alpha_set(m, PredicateKind::WeakPartialEndo, limits)?,
            pe: alpha_set(m, PredicateKind::PartialEndo, limits)?,
            pha: alpha_set(m, PredicateKind::PartialHomAssoc, limits)?,
            ha: alpha_set(m, PredicateKind::HomAssoc, limits)?,
        })
    }

    pub fn get(&self, kind: PredicateKind) -> Option<&[PartialMap]> {
        match kind {
            PredicateKind::WeakPartialEndo => Some(&self.wpe),
            PredicateKind::PartialEndo => Some(&self.pe),
            PredicateKind::PartialHomAssoc => Some(&self.pha),
            PredicateKind::HomAssoc => Some(&self.ha),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(code: &str) -> PartialMagma {
        code.parse().unwrap()
    }

    fn a(code: &str) -> PartialMap {
        code.parse().unwrap()
    }

    fn codes(maps: &[PartialMap]) -> Vec<String> {
        maps.iter().map(PartialMap::code).collect()
    }

    #[test]
    fn weak_partial_endomorphism_examples() {
        assert!(!is_weak_partial_endomorphism(&m("1221"), &a("21")).unwrap());
        for alpha in PartialMap::all(2).unwrap() {
            assert!(is_weak_partial_endomorphism(&m("3333"), &alpha).unwrap());
        }
        assert!(is_weak_partial_endomorphism(&m("2232"), &a("22")).unwrap());
    }

    #[test]
    fn partial_endomorphism_examples() {
        assert!(is_partial_endomorphism(&m("1221"), &a("11")).unwrap());
        assert!(!is_partial_endomorphism(&m("1221"), &a("21")).unwrap());
        for code in ["1111", "1221", "2121", "2211", "1122"] {
            assert!(is_partial_endomorphism(&m(code), &a("12")).unwrap());
        }
    }

    #[test]
    fn hom_associativity_examples() {
        assert!(is_hom_associative(&m("1221"), &a("21")).unwrap());
        assert!(!is_hom_associative(&m("2121"), &a("12")).unwrap());
        assert!(is_hom_associative(&m("3333"), &a("33")).unwrap());

        assert!(is_partially_hom_associative(&m("2121"), &a("23")).unwrap());
        assert!(!is_partially_hom_associative(&m("2121"), &a("12")).unwrap());
        assert!(is_partially_hom_associative(&m("1233"), &a("22")).unwrap());
    }

    #[test]
    fn associativity_examples() {
        assert!(is_associative(&m("1221")));
        assert!(!is_partially_associative(&m("2121")));
        assert!(is_associative(&m("3333")));
        assert!(is_partially_associative(&m("3333")));
    }

    #[test]
    fn alpha_set_examples() {
        let limits = Limits::default();
        let ha = |t| codes(&alpha_set(&m(t), PredicateKind::HomAssoc, &limits).unwrap());
        assert_eq!(ha("1221"), ["33", "12", "21"]);
        assert_eq!(ha("1111"), ["33", "11", "12", "21", "22"]);
        for kind in PredicateKind::ALL {
            let set = alpha_set(&m("3333"), kind, &limits).unwrap();
            // The totality requirement of `endo` fails on an empty table.
            let expected = if kind == PredicateKind::Endo { 0 } else { 9 };
            assert_eq!(set.len(), expected, "{kind}");
        }
    }

    #[test]
    fn alpha_set_respects_limit() {
        let limits = Limits {
            max_maps: 8,
            ..Limits::default()
        };
        assert!(matches!(
            alpha_set(&m("1221"), PredicateKind::HomAssoc, &limits),
            Err(Error::LimitExceeded { required: 9, .. })
        ));
    }

    #[test]
    fn witnesses_point_at_the_failure() {
        let v = check(&m("1221"), &a("21"), PredicateKind::PartialEndo).unwrap();
        assert_eq!(
            v.witness().unwrap().to_string(),
            "at (1,1): left 2, right 1"
        );

        let v = check(&m("1233"), &a("12"), PredicateKind::Endo).unwrap();
        assert_eq!(
            v.witness().unwrap().to_string(),
            "product at (2,1) is undefined"
        );

        let v = check(&m("1221"), &a("13"), PredicateKind::Endo).unwrap();
        assert_eq!(v.witness().unwrap().to_string(), "alpha(2) is undefined");
    }

    #[test]
    fn order_mismatch_is_rejected() {
        let alpha: PartialMap = "1,2,3".parse().unwrap();
        assert_eq!(
            check(&m("1221"), &alpha, PredicateKind::HomAssoc),
            Err(Error::OrderMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in PredicateKind::ALL {
            assert_eq!(kind.name().parse::<PredicateKind>().unwrap(), kind);
        }
        assert!("hom".parse::<PredicateKind>().is_err());
    }
}
