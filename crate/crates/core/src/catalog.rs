//! Named rules referenced by the checks and the workbench.
//!
//! Each entry records how its rule text was obtained: read off the prose
//! description of the rule, or found by searching the rule space for the
//! unique rule (up to red/blue conjugation and unused entries) whose
//! simulated behavior reproduces the published numbers.

use serde::Serialize;

use crate::rule::{parse_rule, Rule};
use crate::space::RuleId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    /// The rule text follows from the written description.
    Described,
    /// Picked out by simulating the whole space and matching the published
    /// behavior; the drawing of the rule itself was not available.
    Behavioral,
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedRule {
    pub name: &'static str,
    pub id: RuleId,
    pub text: &'static str,
    pub provenance: Provenance,
    pub note: &'static str,
}

impl NamedRule {
    pub fn rule(&self) -> Rule {
        parse_rule(self.text).expect("catalog rule text parses")
    }
}

pub const CATALOG: &[NamedRule] = &[
    NamedRule {
        name: "halting-example",
        id: RuleId(325),
        text: "0 -> replace move b; r -> none; b -> keep move r; g -> none",
        provenance: Provenance::Described,
        note: "the introductory example; the writer halts and the graph is static after 3 updates",
    },
    NamedRule {
        name: "simple-cyclic",
        id: RuleId(1306),
        text: "0 -> replace move rb; r -> none; b -> replace move g; g -> none",
        provenance: Provenance::Described,
        note: "writer moves red then blue and expands every vertex it leaves; 8+2t vertices",
    },
    NamedRule {
        name: "golden",
        id: RuleId(1363),
        text: "0 -> replace move rb; r -> keep move g; b -> replace move br; g -> none",
        provenance: Provenance::Behavioral,
        note: "vertex count follows the golden-ratio closed form; conjugate is rule 2163",
    },
    NamedRule {
        name: "golden-conjugate",
        id: RuleId(2163),
        text: "0 -> replace move br; r -> replace move rb; b -> keep move g; g -> none",
        provenance: Provenance::Behavioral,
        note: "red/blue mirror image of rule 1363",
    },
    NamedRule {
        name: "ladder",
        id: RuleId(2282),
        text: "0 -> replace move bb; r -> none; b -> replace move bb; g -> none",
        provenance: Provenance::Behavioral,
        note: "period-1 repetitive growth, 8+2t vertices, writer always blue-linked; the red entry is never read, so ids 2282..2299 behave identically",
    },
    NamedRule {
        name: "fixed-point-56",
        id: RuleId(249),
        text: "0 -> replace move r; r -> replace move rg; b -> replace move bg; g -> none",
        provenance: Provenance::Behavioral,
        note: "reaches a 56-vertex fixed point; 573 and 3037/3460 also end at 56 vertices",
    },
    NamedRule {
        name: "fixed-point-slow",
        id: RuleId(3274),
        text: "0 -> replace move gb; r -> keep move r; b -> replace move gr; g -> none",
        provenance: Provenance::Behavioral,
        note: "fixed point reached after 34 updates",
    },
    NamedRule {
        name: "long-transient-454",
        id: RuleId(3382),
        text: "0 -> replace move gb; r -> keep move gb; b -> replace move gr; g -> none",
        provenance: Provenance::Behavioral,
        note: "repetitive growth with period 454 after a long transient; conjugate is 3211",
    },
    NamedRule {
        name: "long-transient-1355",
        id: RuleId(3215),
        text: "0 -> replace move gr; r -> replace move gb; b -> replace move rr; g -> none",
        provenance: Provenance::Behavioral,
        note: "repetitive growth with period 1355 after a long transient; conjugate is 3508",
    },
    NamedRule {
        name: "bouncing",
        id: RuleId(2950),
        text: "0 -> replace move gr; r -> keep move r; b -> replace move gr; g -> none",
        provenance: Provenance::Behavioral,
        note: "bouncing writer confined to red and green edges; 2986, 3076, 3112 are the other candidates",
    },
];

pub fn by_name(name: &str) -> Option<&'static NamedRule> {
    CATALOG.iter().find(|r| r.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::OptionTable;

    #[test]
    fn ids_match_texts() {
        let t = OptionTable::standard();
        for e in CATALOG {
            assert_eq!(t.encode(&e.rule()), Some(e.id), "{}", e.name);
        }
        assert!(by_name("golden").is_some());
        assert!(by_name("nope").is_none());
    }
}
