//! Exhaustive enumeration of partial multiplication tables and their
//! classification up to isomorphism.
//!
//! Table `k` of order `n` is the base-`(n+1)` expansion of `k` over the `n²`
//! cells, most significant digit at cell `(1,1)`, digit `n` meaning
//! undefined. Index order therefore coincides with the table order of
//! [`PartialMagma`]'s `Ord`. Totals-only spaces use base `n`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::iso::canonical_form;
use crate::partial::{Element, PartialMagma, TableCode};
use crate::predicates::{is_associative, is_partially_associative, AlphaSets};
use crate::Limits;

/// The set of all order-`n` tables, addressed by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableSpace {
    order: usize,
    totals_only: bool,
    len: u64,
}

impl TableSpace {
    pub fn new(order: usize, totals_only: bool, limits: &Limits) -> Result<Self> {
        if order == 0 || order > crate::partial::MAX_ORDER {
            return Err(Error::InvalidOrder(order));
        }
        let base = if totals_only { order } else { order + 1 } as u128;
        let required = u32::try_from(order * order)
            .ok()
            .and_then(|cells| base.checked_pow(cells))
            .unwrap_or(u128::MAX);
        if required > limits.max_tables || required > u64::MAX as u128 {
            return Err(Error::LimitExceeded {
                what: "number of tables",
                required,
                limit: limits.max_tables,
            });
        }
        Ok(TableSpace {
            order,
            totals_only,
            len: required as u64,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn totals_only(&self) -> bool {
        self.totals_only
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn base(&self) -> u64 {
        if self.totals_only {
            self.order as u64
        } else {
            self.order as u64 + 1
        }
    }

    /// The table with the given index. Panics when out of range.
    pub fn table(&self, index: u64) -> PartialMagma {
        assert!(index < self.len, "table index {index} out of range");
        let n = self.order;
        let base = self.base();
        let mut cells = vec![None; n * n];
        let mut rest = index;
        for cell in cells.iter_mut().rev() {
            let digit = (rest % base) as usize;
            rest /= base;
            *cell = (digit < n).then(|| Element::from_index(digit));
        }
        PartialMagma::new(n, cells).expect("digits stay in range")
    }

    /// Index of `m`, or `None` if it does not belong to this space.
    pub fn index_of(&self, m: &PartialMagma) -> Option<u64> {
        if m.order() != self.order || (self.totals_only && !m.is_total()) {
            return None;
        }
        let base = self.base();
        Some(m.cells().iter().fold(0u64, |acc, c| {
            acc * base + c.map_or(self.order as u64, |e| e.index() as u64)
        }))
    }

    pub fn iter(&self) -> impl Iterator<Item = PartialMagma> + '_ {
        (0..self.len).map(move |i| self.table(i))
    }
}

/// Every order-`n` table exactly once, in table order.
pub fn enumerate_tables(
    order: usize,
    totals_only: bool,
    limits: &Limits,
) -> Result<impl Iterator<Item = PartialMagma>> {
    let space = TableSpace::new(order, totals_only, limits)?;
    Ok((0..space.len()).map(move |i| space.table(i)))
}

/// Orbits of the table space: canonical index → member indices.
///
/// The index range is folded in parallel chunks and merged; members are
/// sorted afterwards so the result does not depend on scheduling.
fn orbits(space: &TableSpace) -> Result<BTreeMap<u64, Vec<u64>>> {
    let merged = (0..space.len())
        .into_par_iter()
        .try_fold(BTreeMap::<u64, Vec<u64>>::new, |mut acc, i| {
            let canon = canonical_form(&space.table(i))?;
            let key = space
                .index_of(&canon)
                .expect("relabelling stays in the space");
            acc.entry(key).or_default().push(i);
            Ok::<_, Error>(acc)
        })
        .try_reduce(BTreeMap::new, |mut a, b| {
            for (k, mut v) in b {
                a.entry(k).or_default().append(&mut v);
            }
            Ok(a)
        })?;
    Ok(merged
        .into_iter()
        .map(|(k, mut v)| {
            v.sort_unstable();
            (k, v)
        })
        .collect())
}

/// Number of isomorphism classes found by exhaustive enumeration.
pub fn count_classes(order: usize, totals_only: bool, limits: &Limits) -> Result<usize> {
    let space = TableSpace::new(order, totals_only, limits)?;
    Ok(orbits(&space)?.len())
}

/// One isomorphism class. `alpha_sets` and the associativity flags refer to
/// `representative`, the canonical (least) table of the class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagmaClass {
    pub representative: PartialMagma,
    pub members: Vec<PartialMagma>,
    pub alpha_sets: AlphaSets,
    pub partially_associative: bool,
    pub associative: bool,
}

/// All isomorphism classes of one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub order: usize,
    pub totals_only: bool,
    pub classes: Vec<MagmaClass>,
}

/// Flat per-class record; the field names are the serialized column names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    pub rep: String,
    pub members: Vec<String>,
    pub wpe: Vec<String>,
    pub pe: Vec<String>,
    pub pha: Vec<String>,
    pub ha: Vec<String>,
    pub passoc: bool,
    pub assoc: bool,
}

impl ClassificationReport {
    /// The class containing `m`, located through its canonical form.
    pub fn class_of(&self, m: &PartialMagma) -> Option<&MagmaClass> {
        let canon = canonical_form(m).ok()?;
        self.classes.iter().find(|c| c.representative == canon)
    }

    pub fn total_members(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }

    pub fn rows(&self) -> Vec<ClassRow> {
        let codes = |v: &[crate::PartialMap]| v.iter().map(|a| a.code()).collect();
        self.classes
            .iter()
            .map(|c| ClassRow {
                rep: c.representative.code().to_string(),
                members: c.members.iter().map(|m| m.code().to_string()).collect(),
                wpe: codes(&c.alpha_sets.wpe),
                pe: codes(&c.alpha_sets.pe),
                pha: codes(&c.alpha_sets.pha),
                ha: codes(&c.alpha_sets.ha),
                passoc: c.partially_associative,
                assoc: c.associative,
            })
            .collect()
    }

    pub fn member_codes(&self) -> Vec<Vec<TableCode>> {
        self.classes
            .iter()
            .map(|c| c.members.iter().map(PartialMagma::code).collect())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub totals_only: bool,
    pub limits: Limits,
}

/// Enumerates, classifies and annotates every order-`n` table.
///
/// Classes are listed by number of defined cells, then by representative.
pub fn classify(order: usize, options: &ClassifyOptions) -> Result<ClassificationReport> {
    let space = TableSpace::new(order, options.totals_only, &options.limits)?;
    let orbits: Vec<(u64, Vec<u64>)> = orbits(&space)?.into_iter().collect();
    let mut classes = orbits
        .into_par_iter()
        .map(|(rep, members)| {
            let representative = space.table(rep);
            Ok(MagmaClass {
                alpha_sets: AlphaSets::compute(&representative, &options.limits)?,
                partially_associative: is_partially_associative(&representative),
                associative: is_associative(&representative),
                members: members.into_iter().map(|i| space.table(i)).collect(),
                representative,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    classes.sort_by_key(|c| (c.representative.defined_cells(), c.representative.clone()));
    Ok(ClassificationReport {
        order,
        totals_only: options.totals_only,
        classes,
    })
}
