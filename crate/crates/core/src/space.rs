//! The enumerated rule space: an option table per active surroundings type
//! and the mixed-radix rule ids over it.

use std::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::color::{Color, MoveWord};
use crate::graph::SurroundingsType;
use crate::rule::{parse_action, Action, RewriteOp, Rule, RuleParseError};

pub const TYPE0_OPTIONS: usize = 12;
pub const TYPER_OPTIONS: usize = 18;
pub const TYPEB_OPTIONS: usize = 18;
pub const SPACE_SIZE: u32 = (TYPE0_OPTIONS * TYPER_OPTIONS * TYPEB_OPTIONS) as u32;

/// Index into the rule space, `0..3888`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub struct RuleId(pub u32);

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("bad option table: {0}")]
    BadTable(String),
    #[error("line {line}: {source}")]
    Parse { line: usize, source: RuleParseError },
}

/// The ordered action lists for unlinked, red-linked and blue-linked
/// surroundings. Green-linked surroundings always map to `none`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptionTable {
    pub type0: Vec<Action>,
    pub type_r: Vec<Action>,
    pub type_b: Vec<Action>,
}

impl Default for OptionTable {
    fn default() -> Self {
        OptionTable::standard()
    }
}

impl OptionTable {
    /// The default table.
    ///
    /// Moves are walks of at most two edges, and two options count as
    /// different exactly when they lead to a different rewrite or a
    /// different landing vertex given the surroundings type:
    ///
    /// * unlinked (always expand): the twelve words of length 1 or 2; `cc`
    ///   returns to the expanded vertex and lands on its `c`-outside corner,
    ///   so the three doubled words are distinct;
    /// * red-linked: `p[b][r] = p[g]` and `p[g][r] = p[b]`, so `br` and `gr`
    ///   duplicate `g` and `b`. Keeping leaves `none` plus seven walks;
    ///   expanding leaves ten;
    /// * blue-linked: symmetric, with `rb` and `gb` the duplicates.
    ///
    /// Each list is ordered keep before replace, then shortlex on the word.
    pub fn standard() -> Self {
        let words12: Vec<MoveWord> =
            MoveWord::all_of_len(1).into_iter().chain(MoveWord::all_of_len(2)).collect();
        let type0 = words12
            .iter()
            .map(|w| Action::new(RewriteOp::Expand, w.clone()))
            .collect();
        OptionTable {
            type0,
            type_r: Self::linked_options(Color::Red, &words12),
            type_b: Self::linked_options(Color::Blue, &words12),
        }
    }

    fn linked_options(link: Color, words12: &[MoveWord]) -> Vec<Action> {
        // for a link of color `link`, walking `x link` with x != link lands
        // where the third color does
        let redundant = |w: &MoveWord| {
            let cs = w.colors();
            cs.len() == 2 && cs[0] != link && cs[1] == link
        };
        let doubled = |w: &MoveWord| {
            let cs = w.colors();
            cs.len() == 2 && cs[0] == cs[1]
        };
        let mut out = vec![Action::none()];
        out.extend(
            words12
                .iter()
                .filter(|w| !redundant(w) && !doubled(w))
                .map(|w| Action::new(RewriteOp::Keep, w.clone())),
        );
        out.extend(
            words12
                .iter()
                .filter(|w| !redundant(w))
                .map(|w| Action::new(RewriteOp::Expand, w.clone())),
        );
        out
    }

    /// Checks list lengths and that entries within a list are distinct.
    pub fn validate(&self) -> Result<(), TableError> {
        for (name, list, want) in [
            ("type0", &self.type0, TYPE0_OPTIONS),
            ("typeR", &self.type_r, TYPER_OPTIONS),
            ("typeB", &self.type_b, TYPEB_OPTIONS),
        ] {
            if list.len() != want {
                return Err(TableError::BadTable(format!(
                    "[{name}] has {} entries, expected {want}",
                    list.len()
                )));
            }
            let mut sorted = list.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != list.len() {
                return Err(TableError::BadTable(format!("[{name}] has duplicate entries")));
            }
        }
        Ok(())
    }

    /// Parses the table file format: `[type0]`, `[typeR]` and `[typeB]`
    /// headers each followed by one action per line. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut lists: [Vec<Action>; 3] = Default::default();
        let mut current: Option<usize> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match line {
                "[type0]" => current = Some(0),
                "[typeR]" => current = Some(1),
                "[typeB]" => current = Some(2),
                _ => {
                    let Some(k) = current else {
                        return Err(TableError::BadTable(format!(
                            "line {}: action before any section header",
                            i + 1
                        )));
                    };
                    let a = parse_action(line).map_err(|source| TableError::Parse { line: i + 1, source })?;
                    lists[k].push(a);
                }
            }
        }
        let [type0, type_r, type_b] = lists;
        let table = OptionTable { type0, type_r, type_b };
        table.validate()?;
        Ok(table)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, list) in [("type0", &self.type0), ("typeR", &self.type_r), ("typeB", &self.type_b)] {
            out.push_str(&format!("[{name}]\n"));
            for a in list {
                out.push_str(&format!("{a}\n"));
            }
        }
        out
    }

    /// Hex SHA-256 of [`OptionTable::to_text`], recorded in sweep manifests.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_text().as_bytes()))
    }

    pub fn len(&self) -> u32 {
        (self.type0.len() * self.type_r.len() * self.type_b.len()) as u32
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Splits an id into `(type0, typeR, typeB)` option indices.
    pub fn digits(&self, id: RuleId) -> (usize, usize, usize) {
        let nr = self.type_r.len();
        let nb = self.type_b.len();
        let i = id.0 as usize;
        (i / (nr * nb), (i / nb) % nr, i % nb)
    }

    pub fn decode(&self, id: RuleId) -> Rule {
        let (i0, ir, ib) = self.digits(id);
        Rule::default()
            .with(SurroundingsType::Zero, self.type0[i0].clone())
            .with(SurroundingsType::Red, self.type_r[ir].clone())
            .with(SurroundingsType::Blue, self.type_b[ib].clone())
    }

    pub fn encode(&self, rule: &Rule) -> Option<RuleId> {
        if !rule.action(SurroundingsType::Green).is_none() {
            return None;
        }
        let find = |list: &[Action], t| list.iter().position(|a| a == rule.action(t));
        let i0 = find(&self.type0, SurroundingsType::Zero)?;
        let ir = find(&self.type_r, SurroundingsType::Red)?;
        let ib = find(&self.type_b, SurroundingsType::Blue)?;
        let nr = self.type_r.len();
        let nb = self.type_b.len();
        Some(RuleId((i0 * nr * nb + ir * nb + ib) as u32))
    }

    /// True when swapping red and blue maps the table onto itself.
    pub fn closed_under_conjugation(&self) -> bool {
        let conj = |l: &[Action]| {
            let mut v: Vec<Action> = l.iter().map(Action::conjugate).collect();
            v.sort();
            v
        };
        let sorted = |l: &[Action]| {
            let mut v = l.to_vec();
            v.sort();
            v
        };
        conj(&self.type0) == sorted(&self.type0) && conj(&self.type_r) == sorted(&self.type_b)
    }
}

/// Every rule of the table in id order.
pub fn enumerate_space(table: &OptionTable) -> Result<impl Iterator<Item = (RuleId, Rule)> + '_, TableError> {
    table.validate()?;
    Ok((0..table.len()).map(move |i| (RuleId(i), table.decode(RuleId(i)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule::{format_rule, parse_rule};

    #[test]
    fn standard_table_has_published_shape() {
        let t = OptionTable::standard();
        t.validate().unwrap();
        assert_eq!(t.len(), 3888);
        assert!(t.closed_under_conjugation());
        let keep_r: Vec<String> = t.type_r.iter().filter(|a| a.rewrite == RewriteOp::Keep).map(|a| a.to_string()).collect();
        assert_eq!(
            keep_r,
            ["none", "keep move r", "keep move b", "keep move g", "keep move rb", "keep move rg", "keep move bg", "keep move gb"]
        );
    }

    #[test]
    fn ids_are_a_bijection() {
        let t = OptionTable::standard();
        let rules: Vec<(RuleId, Rule)> = enumerate_space(&t).unwrap().collect();
        assert_eq!(rules.len(), 3888);
        let mut distinct: Vec<&Rule> = rules.iter().map(|r| &r.1).collect();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), 3888);
        for (id, r) in &rules {
            assert_eq!(t.encode(r), Some(*id));
            assert!(r.is_canonical_shape());
            assert_eq!(&parse_rule(&format_rule(r)).unwrap(), r);
        }
        let r0 = &rules[0].1;
        assert_eq!(r0.action(SurroundingsType::Zero), &t.type0[0]);
        assert_eq!(r0.action(SurroundingsType::Red), &t.type_r[0]);
        assert_eq!(r0.action(SurroundingsType::Blue), &t.type_b[0]);
    }

    #[test]
    fn conjugation_stays_in_space() {
        let t = OptionTable::standard();
        for (_, r) in enumerate_space(&t).unwrap() {
            assert!(t.encode(&r.conjugate()).is_some());
        }
    }

    #[test]
    fn table_text_round_trip() {
        let t = OptionTable::standard();
        let back = OptionTable::parse(&t.to_text()).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.digest(), t.digest());
    }

    #[test]
    fn bad_tables_are_rejected() {
        let mut t = OptionTable::standard();
        t.type_r.pop();
        assert!(matches!(t.validate(), Err(TableError::BadTable(_))));
        let mut t = OptionTable::standard();
        t.type_b[1] = t.type_b[0].clone();
        assert!(matches!(t.validate(), Err(TableError::BadTable(_))));
        assert!(OptionTable::parse("none\n").is_err());
        assert!(matches!(OptionTable::parse("[type0]\nmove rbg\n"), Err(TableError::Parse { line: 2, .. })));
    }
}
