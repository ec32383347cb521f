//! Isomorphisms of partial magmas, canonical forms under relabelling, and
//! orbit counting.
//!
//! Searches run over the whole symmetric group, so every entry point here is
//! capped at [`MAX_ISO_ORDER`].

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::partial::{elements, slot_key, Element, PartialMagma, PartialMap};

/// Largest order for which `n!` searches are attempted.
pub const MAX_ISO_ORDER: usize = 8;

fn check_iso_order(order: usize) -> Result<()> {
    if order > MAX_ISO_ORDER {
        Err(Error::LimitExceeded {
            what: "order for symmetric-group search",
            required: order as u128,
            limit: MAX_ISO_ORDER as u128,
        })
    } else {
        Ok(())
    }
}

/// A bijection of `{1, ..., n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<Element>,
}

impl Permutation {
    pub fn new(images: Vec<Element>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for e in &images {
            if e.index() >= n || std::mem::replace(&mut seen[e.index()], true) {
                return Err(Error::NotPermutation(n));
            }
        }
        if n == 0 {
            return Err(Error::InvalidOrder(0));
        }
        Ok(Permutation { images })
    }

    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let n = labels.len();
        let images = labels
            .iter()
            .map(|&l| Element::from_label(l, n))
            .collect::<Result<_>>()
            .map_err(|_| Error::NotPermutation(n))?;
        Permutation::new(images)
    }

    pub fn identity(order: usize) -> Self {
        Permutation {
            images: elements(order).collect(),
        }
    }

    /// All `n!` permutations in lexicographic order, identity first.
    pub fn all(order: usize) -> Result<impl Iterator<Item = Permutation>> {
        check_iso_order(order)?;
        Ok((0..order).permutations(order).map(|p| Permutation {
            images: p.into_iter().map(Element::from_index).collect(),
        }))
    }

    pub fn order(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: Element) -> Element {
        self.images[x.index()]
    }

    /// Extension to undefined values, which it fixes.
    pub fn apply_opt(&self, x: Option<Element>) -> Option<Element> {
        x.map(|x| self.apply(x))
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = self.images.clone();
        for (i, e) in self.images.iter().enumerate() {
            images[e.index()] = Element::from_index(i);
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, e)| e.index() == i)
    }

    pub fn as_partial_map(&self) -> PartialMap {
        PartialMap::new(self.images.iter().copied().map(Some).collect())
            .expect("a permutation is a valid total map")
    }

    /// The transported table `m'` with `m'(φx, φy) = φ(m(x, y))`, so that
    /// `self` is a PM-isomorphism `m → m'`.
    pub fn relabel(&self, m: &PartialMagma) -> PartialMagma {
        let n = m.order();
        assert_eq!(n, self.order(), "permutation and table orders differ");
        let mut cells = vec![None; n * n];
        for x in elements(n) {
            for y in elements(n) {
                let (px, py) = (self.apply(x), self.apply(y));
                cells[px.index() * n + py.index()] = self.apply_opt(m.product(x, y));
            }
        }
        PartialMagma::new(n, cells).expect("relabelling preserves validity")
    }

    /// `φ ∘ α ∘ φ⁻¹`.
    pub fn conjugate(&self, alpha: &PartialMap) -> PartialMap {
        let n = alpha.order();
        assert_eq!(n, self.order(), "permutation and map orders differ");
        let mut images = vec![None; n];
        for x in elements(n) {
            images[self.apply(x).index()] = self.apply_opt(alpha.apply(x));
        }
        PartialMap::new(images).expect("conjugation preserves validity")
    }

    /// Cycle decomposition, each cycle starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<Element>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for start in elements(self.order()) {
            if seen[start.index()] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start.index()] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x.index()] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_partial_map().code())
    }
}

/// The transfer condition shared by all three categories: for every pair,
/// `φ(∇(x,y))` is defined iff `∇'(φx,φy)` is, with equal values.
fn transfers(m: &PartialMagma, m2: &PartialMagma, phi: &PartialMap) -> bool {
    elements(m.order()).all(|x| {
        elements(m.order())
            .all(|y| phi.apply_opt(m.product(x, y)) == m2.product_opt(phi.apply(x), phi.apply(y)))
    })
}

/// Isomorphism in PM: `φ` bijective and transfer of definedness and values.
pub fn is_isomorphism_pm(m: &PartialMagma, m2: &PartialMagma, phi: &Permutation) -> Result<bool> {
    Error::check_orders(m.order(), m2.order())?;
    Error::check_orders(m.order(), phi.order())?;
    Ok(transfers(m, m2, &phi.as_partial_map()))
}

/// Isomorphism in M; both tables must be total.
pub fn is_isomorphism_m(m: &PartialMagma, m2: &PartialMagma, phi: &Permutation) -> Result<bool> {
    if !m.is_total() || !m2.is_total() {
        return Err(Error::NotTotal);
    }
    is_isomorphism_pm(m, m2, phi)
}

/// Isomorphism in WPM: `φ` injective on its domain, plus the transfer
/// condition.
pub fn is_isomorphism_wpm(m: &PartialMagma, m2: &PartialMagma, phi: &PartialMap) -> Result<bool> {
    Error::check_orders(m.order(), m2.order())?;
    Error::check_orders(m.order(), phi.order())?;
    Ok(phi.is_injective_on_domain() && transfers(m, m2, phi))
}

/// Some PM-isomorphism `m → m2`, searching `S_n` in lexicographic order.
pub fn are_isomorphic(m: &PartialMagma, m2: &PartialMagma) -> Result<Option<Permutation>> {
    Error::check_orders(m.order(), m2.order())?;
    let phi = Permutation::all(m.order())?.find(|phi| phi.relabel(m) == *m2);
    Ok(phi)
}

/// Automorphisms of `m`, identity first.
pub fn automorphisms(m: &PartialMagma) -> Result<Vec<Permutation>> {
    Ok(Permutation::all(m.order())?
        .filter(|phi| phi.relabel(m) == *m)
        .collect())
}

/// The least table in the orbit of `m`, with a permutation carrying `m` to
/// it.
pub fn canonical_form_with_witness(m: &PartialMagma) -> Result<(PartialMagma, Permutation)> {
    let n = m.order();
    let mut best: Option<(Vec<usize>, Permutation)> = None;
    for phi in Permutation::all(n)? {
        let key: Vec<usize> = phi
            .relabel(m)
            .cells()
            .iter()
            .map(|&c| slot_key(c, n))
            .collect();
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, phi));
        }
    }
    let (_, phi) = best.expect("the symmetric group is non-empty");
    Ok((phi.relabel(m), phi))
}

/// The lexicographically least table isomorphic to `m`: row-major cells,
/// with undefined ordered after every element.
pub fn canonical_form(m: &PartialMagma) -> Result<PartialMagma> {
    Ok(canonical_form_with_witness(m)?.0)
}

/// Number of isomorphism classes of order-`order` tables (total tables only
/// when `totals_only`), by Burnside's lemma over `S_n`.
///
/// A table is fixed by `π` iff it is constant along each cycle of the
/// induced action on cells, with the value on a cell cycle of length `L`
/// lying in a cycle of `π` (extended to fix undefined) whose length divides
/// `L`. The fixed count is the product of those choices over cell cycles.
pub fn burnside_class_count(order: usize, totals_only: bool) -> Result<u128> {
    if order == 0 {
        return Err(Error::InvalidOrder(0));
    }
    check_iso_order(order)?;
    let overflow = || Error::LimitExceeded {
        what: "Burnside sum",
        required: u128::MAX,
        limit: u128::MAX,
    };
    let n = order;
    let mut sum: u128 = 0;
    let mut group_order: u128 = 0;
    for pi in Permutation::all(n)? {
        group_order += 1;
        let mut value_cycle_lengths: Vec<usize> = pi.cycles().iter().map(Vec::len).collect();
        if !totals_only {
            value_cycle_lengths.push(1);
        }
        let mut seen = vec![false; n * n];
        let mut fixed: u128 = 1;
        for start in 0..n * n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cell = start;
            loop {
                seen[cell] = true;
                len += 1;
                let (x, y) = (Element::from_index(cell / n), Element::from_index(cell % n));
                cell = pi.apply(x).index() * n + pi.apply(y).index();
                if cell == start {
                    break;
                }
            }
            let choices: usize = value_cycle_lengths.iter().filter(|&&c| len % c == 0).sum();
            fixed = fixed.checked_mul(choices as u128).ok_or_else(overflow)?;
        }
        sum = sum.checked_add(fixed).ok_or_else(overflow)?;
    }
    debug_assert_eq!(sum % group_order, 0);
    Ok(sum / group_order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(code: &str) -> PartialMagma {
        code.parse().unwrap()
    }

    fn t() -> Permutation {
        Permutation::from_labels(&[2, 1]).unwrap()
    }

    #[test]
    fn pm_isomorphism_examples() {
        assert!(is_isomorphism_pm(&m("1333"), &m("3332"), &t()).unwrap());
        let id = Permutation::identity(2);
        assert!(is_isomorphism_pm(&m("2131"), &m("2131"), &id).unwrap());
        for phi in Permutation::all(2).unwrap() {
            assert!(!is_isomorphism_pm(&m("1332"), &m("2331"), &phi).unwrap());
        }
    }

    #[test]
    fn m_isomorphism_examples() {
        // t swaps the identity element of the two-element group, so it maps
        // 1221 onto 2112 rather than onto itself.
        assert!(!is_isomorphism_m(&m("1221"), &m("1221"), &t()).unwrap());
        assert!(is_isomorphism_m(&m("1221"), &m("2112"), &t()).unwrap());
        assert!(is_isomorphism_m(&m("1111"), &m("2222"), &t()).unwrap());
        // 1122 is the left projection; its class is a singleton precisely
        // because t fixes it.
        assert!(is_isomorphism_m(&m("1122"), &m("1122"), &t()).unwrap());
        assert!(!is_isomorphism_m(&m("1112"), &m("1112"), &t()).unwrap());
        assert_eq!(
            is_isomorphism_m(&m("1333"), &m("3332"), &t()),
            Err(Error::NotTotal)
        );
    }

    #[test]
    fn wpm_isomorphism_examples() {
        let phi = t().as_partial_map();
        assert!(is_isomorphism_wpm(&m("1333"), &m("3332"), &phi).unwrap());
        let partial: PartialMap = "13".parse().unwrap();
        assert!(is_isomorphism_wpm(&m("3333"), &m("3333"), &partial).unwrap());
        let collapsing: PartialMap = "11".parse().unwrap();
        assert!(!is_isomorphism_wpm(&m("3333"), &m("3333"), &collapsing).unwrap());
    }

    #[test]
    fn search_examples() {
        assert_eq!(are_isomorphic(&m("1333"), &m("3332")).unwrap(), Some(t()));
        assert_eq!(
            are_isomorphic(&m("2131"), &m("2131")).unwrap(),
            Some(Permutation::identity(2))
        );
        assert_eq!(are_isomorphic(&m("1332"), &m("2331")).unwrap(), None);
    }

    #[test]
    fn canonical_form_examples() {
        assert_eq!(canonical_form(&m("3332")).unwrap(), m("1333"));
        assert_eq!(canonical_form(&m("1221")).unwrap(), m("1221"));
        assert_eq!(canonical_form(&m("2112")).unwrap(), m("1221"));
    }

    #[test]
    fn burnside_examples() {
        assert_eq!(burnside_class_count(2, false).unwrap(), 45);
        assert_eq!(burnside_class_count(2, true).unwrap(), 10);
        assert_eq!(burnside_class_count(1, false).unwrap(), 2);
        assert!(burnside_class_count(MAX_ISO_ORDER + 1, false).is_err());
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::from_labels(&[1, 1]).is_err());
        assert!(Permutation::from_labels(&[1, 3]).is_err());
        let p = Permutation::from_labels(&[2, 3, 1]).unwrap();
        assert_eq!(p.inverse().to_string(), "3,1,2");
        assert!(Permutation::identity(3).is_identity());
        assert_eq!(p.cycles().len(), 1);
    }

    #[test]
    fn conjugation_by_transposition() {
        let alpha: PartialMap = "13".parse().unwrap();
        assert_eq!(t().conjugate(&alpha).code(), "32");
        let alpha: PartialMap = "11".parse().unwrap();
        assert_eq!(t().conjugate(&alpha).code(), "22");
    }
}
