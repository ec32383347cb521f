//! Published order-2 reference data, shipped as `data/order2_fixture.txt`.
//!
//! The file is line oriented. `[section]` headers open a section; item
//! lines look like `(7) 1233 3312`; key lines like `table 2232`. `#` starts
//! a comment line. `Pfun` stands for all nine partial maps.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::partial::{PartialMagma, PartialMap};
use crate::predicates::PredicateKind;

const EMBEDDED: &str = include_str!("../data/order2_fixture.txt");

/// One item of the published class list with its tabulated α-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureClass {
    pub item: usize,
    /// Members in the published order; the first is the representative the
    /// α-sets refer to.
    pub members: Vec<PartialMagma>,
    pub alpha_sets: BTreeMap<PredicateKind, Vec<PartialMap>>,
}

impl FixtureClass {
    pub fn first(&self) -> &PartialMagma {
        &self.members[0]
    }
}

/// A closing sentence of the form "In the N cases (i)-(j), ... the magma is
/// (partially) associative".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativityClaim {
    pub stated_count: usize,
    pub items: Vec<usize>,
}

/// The six bullets of one worked magma-algebra instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleInstance {
    pub label: String,
    pub table: PartialMagma,
    pub item: usize,
    pub partially_multiplicative: Vec<PartialMap>,
    pub multiplicative: Vec<PartialMap>,
    pub partially_hom_associative: Vec<PartialMap>,
    pub hom_associative: Vec<PartialMap>,
    pub multiplicative_and_hom_associative: Vec<PartialMap>,
    pub partially_associative: bool,
    pub associative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaperFixture {
    pub version: u32,
    pub classes: Vec<FixtureClass>,
    pub partially_associative: AssociativityClaim,
    pub associative: AssociativityClaim,
    pub examples: Vec<ExampleInstance>,
}

fn section_kind(name: &str) -> Option<PredicateKind> {
    match name {
        "wpe" => Some(PredicateKind::WeakPartialEndo),
        "pe" => Some(PredicateKind::PartialEndo),
        "pha" => Some(PredicateKind::PartialHomAssoc),
        "ha" => Some(PredicateKind::HomAssoc),
        _ => None,
    }
}

fn parse_set(words: &[&str], line: usize) -> Result<Vec<PartialMap>> {
    let err = |reason: String| Error::Fixture { line, reason };
    if words == ["Pfun"] {
        return PartialMap::all(2);
    }
    let mut set = words
        .iter()
        .map(|w| w.parse::<PartialMap>().map_err(|e| err(e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    if set.iter().any(|a| a.order() != 2) {
        return Err(err("alpha codes must have order 2".into()));
    }
    let len = set.len();
    set.sort();
    set.dedup();
    if set.len() != len {
        return Err(err("repeated alpha code".into()));
    }
    Ok(set)
}

fn parse_bool(word: &str, line: usize) -> Result<bool> {
    word.parse().map_err(|_| Error::Fixture {
        line,
        reason: format!("expected true or false, got {word:?}"),
    })
}

fn parse_items(words: &[&str], line: usize) -> Result<Vec<usize>> {
    let err = |reason: String| Error::Fixture { line, reason };
    let mut items = Vec::new();
    for w in words {
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| err(format!("bad item {w:?}")))
        };
        match w.split_once('-') {
            Some((a, b)) => items.extend(num(a)?..=num(b)?),
            None => items.push(num(w)?),
        }
    }
    Ok(items)
}

#[derive(Default)]
struct ExampleBuilder {
    fields: BTreeMap<String, (usize, Vec<String>)>,
}

impl ExampleBuilder {
    fn take(&mut self, key: &str, header_line: usize) -> Result<(usize, Vec<String>)> {
        self.fields.remove(key).ok_or_else(|| Error::Fixture {
            line: header_line,
            reason: format!("example is missing {key:?}"),
        })
    }

    fn build(mut self, label: String, header_line: usize) -> Result<ExampleInstance> {
        let mut set = |key: &str| -> Result<Vec<PartialMap>> {
            let (line, words) = self.take(key, header_line)?;
            let words: Vec<&str> = words.iter().map(String::as_str).collect();
            parse_set(&words, line)
        };
        let partially_multiplicative = set("partially-multiplicative")?;
        let multiplicative = set("multiplicative")?;
        let partially_hom_associative = set("partially-hom-associative")?;
        let hom_associative = set("hom-associative")?;
        let multiplicative_and_hom_associative = set("multiplicative-and-hom-associative")?;

        let mut single = |key: &str| -> Result<(usize, String)> {
            let (line, words) = self.take(key, header_line)?;
            match words.as_slice() {
                [w] => Ok((line, w.clone())),
                _ => Err(Error::Fixture {
                    line,
                    reason: format!("{key} takes one value"),
                }),
            }
        };
        let (line, table) = single("table")?;
        let table = table.parse::<PartialMagma>().map_err(|e| Error::Fixture {
            line,
            reason: e.to_string(),
        })?;
        let (line, item) = single("item")?;
        let item = parse_items(&[item.as_str()], line)?[0];
        let (line, passoc) = single("partially-associative")?;
        let partially_associative = parse_bool(&passoc, line)?;
        let (line, assoc) = single("associative")?;
        let associative = parse_bool(&assoc, line)?;

        if let Some((key, (line, _))) = self.fields.into_iter().next() {
            return Err(Error::Fixture {
                line,
                reason: format!("unknown example field {key:?}"),
            });
        }
        Ok(ExampleInstance {
            label,
            table,
            item,
            partially_multiplicative,
            multiplicative,
            partially_hom_associative,
            hom_associative,
            multiplicative_and_hom_associative,
            partially_associative,
            associative,
        })
    }
}

impl PaperFixture {
    /// The fixture compiled into the crate.
    pub fn embedded() -> Self {
        PaperFixture::parse(EMBEDDED).expect("embedded fixture is well formed")
    }

    pub fn embedded_text() -> &'static str {
        EMBEDDED
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut version = None;
        let mut section = String::new();
        let mut section_line = 0;
        let mut classes: BTreeMap<usize, Vec<PartialMagma>> = BTreeMap::new();
        let mut sets: BTreeMap<(PredicateKind, usize), Vec<PartialMap>> = BTreeMap::new();
        let mut claims: BTreeMap<String, (Option<usize>, Option<Vec<usize>>)> = BTreeMap::new();
        let mut examples = Vec::new();
        let mut example: Option<(String, usize, ExampleBuilder)> = None;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |reason: String| Error::Fixture { line, reason };
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                if let Some((label, header, builder)) = example.take() {
                    examples.push(builder.build(label, header)?);
                }
                section = name.trim().to_owned();
                section_line = line;
                if let Some(label) = section.strip_prefix("example ") {
                    example = Some((label.trim().to_owned(), line, ExampleBuilder::default()));
                }
                continue;
            }
            let words: Vec<&str> = content.split_whitespace().collect();
            if section.is_empty() {
                match words.as_slice() {
                    ["version", v] => {
                        version = Some(v.parse().map_err(|_| err(format!("bad version {v:?}")))?)
                    }
                    _ => return Err(err("unexpected line before the first section".into())),
                }
                continue;
            }
            if let Some((_, _, builder)) = example.as_mut() {
                let (key, rest) = words.split_first().expect("line is not empty");
                let rest = rest.iter().map(|s| s.to_string()).collect();
                if builder
                    .fields
                    .insert(key.to_string(), (line, rest))
                    .is_some()
                {
                    return Err(err(format!("duplicate field {key:?}")));
                }
                continue;
            }
            if section.ends_with("-claim") {
                let entry = claims.entry(section.clone()).or_default();
                match words.as_slice() {
                    ["count", c] => {
                        entry.0 = Some(c.parse().map_err(|_| err(format!("bad count {c:?}")))?)
                    }
                    ["items", rest @ ..] => entry.1 = Some(parse_items(rest, line)?),
                    _ => return Err(err("expected `count N` or `items ...`".into())),
                }
                continue;
            }
            let (head, rest) = words.split_first().expect("line is not empty");
            let item = head
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| err(format!("expected an item number like (7), got {head:?}")))?;
            if section == "classes" {
                let members = rest
                    .iter()
                    .map(|w| w.parse::<PartialMagma>().map_err(|e| err(e.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                if members.is_empty() || members.iter().any(|m| m.order() != 2) {
                    return Err(err("a class lists one or more order-2 tables".into()));
                }
                if classes.insert(item, members).is_some() {
                    return Err(err(format!("duplicate item ({item})")));
                }
            } else if let Some(kind) = section_kind(&section) {
                if sets.insert((kind, item), parse_set(rest, line)?).is_some() {
                    return Err(err(format!("duplicate item ({item})")));
                }
            } else {
                return Err(Error::Fixture {
                    line: section_line,
                    reason: format!("unknown section {section:?}"),
                });
            }
        }
        if let Some((label, header, builder)) = example.take() {
            examples.push(builder.build(label, header)?);
        }

        let version = version.ok_or(Error::Fixture {
            line: 1,
            reason: "missing version line".into(),
        })?;
        let classes = classes
            .into_iter()
            .map(|(item, members)| {
                let alpha_sets = PredicateKind::TABULATED
                    .into_iter()
                    .map(|kind| {
                        sets.remove(&(kind, item))
                            .map(|s| (kind, s))
                            .ok_or_else(|| Error::Fixture {
                                line: 0,
                                reason: format!("item ({item}) has no {kind} set"),
                            })
                    })
                    .collect::<Result<_>>()?;
                Ok(FixtureClass {
                    item,
                    members,
                    alpha_sets,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(((kind, item), _)) = sets.into_iter().next() {
            return Err(Error::Fixture {
                line: 0,
                reason: format!("{kind} set for unknown item ({item})"),
            });
        }
        let mut claim = |name: &str| -> Result<AssociativityClaim> {
            match claims.remove(name) {
                Some((Some(stated_count), Some(items))) => Ok(AssociativityClaim {
                    stated_count,
                    items,
                }),
                _ => Err(Error::Fixture {
                    line: 0,
                    reason: format!("section [{name}] needs a count and items"),
                }),
            }
        };
        Ok(PaperFixture {
            version,
            partially_associative: claim("partially-associative-claim")?,
            associative: claim("associative-claim")?,
            classes,
            examples,
        })
    }

    pub fn class(&self, item: usize) -> Option<&FixtureClass> {
        self.classes.iter().find(|c| c.item == item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_fixture_shape() {
        let f = PaperFixture::embedded();
        assert_eq!(f.version, 1);
        assert_eq!(f.classes.len(), 45);
        assert_eq!(f.classes.iter().map(|c| c.members.len()).sum::<usize>(), 81);
        assert_eq!(f.partially_associative.stated_count, 37);
        assert_eq!(f.partially_associative.items.len(), 36);
        assert_eq!(f.associative.stated_count, 13);
        assert_eq!(f.associative.items.len(), 12);
        let labels: Vec<&str> = f.examples.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, ["a", "b", "c", "d", "e"]);
        let ha = |item| -> Vec<String> {
            f.class(item).unwrap().alpha_sets[&PredicateKind::HomAssoc]
                .iter()
                .map(PartialMap::code)
                .collect()
        };
        assert_eq!(ha(43), ["33", "12", "21"]);
        assert_eq!(ha(1).len(), 9);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(PaperFixture::parse("[classes]\n(1) 3333\n").is_err());
        let bad_code = "version 1\n[classes]\n(1) 3343\n";
        assert!(matches!(
            PaperFixture::parse(bad_code),
            Err(Error::Fixture { line: 3, .. })
        ));
        let bad_item = "version 1\n[wpe]\n1 33\n";
        assert!(matches!(
            PaperFixture::parse(bad_item),
            Err(Error::Fixture { line: 3, .. })
        ));
    }

    #[test]
    fn item_ranges_expand() {
        assert_eq!(
            parse_items(&["1-3", "7", "41-43"], 1).unwrap(),
            [1, 2, 3, 7, 41, 42, 43]
        );
    }
}
