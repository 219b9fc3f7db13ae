//! Rules: what the writer does for each surroundings type, and the rule text format.
//!
//! Grammar (whitespace is ignored everywhere):
//!
//! ```text
//! rule    := clause (";" clause)*
//! clause  := type "->" action
//! type    := "0" | "r" | "b" | "g"
//! action  := "none" | rewrite ["move" word] | "move" word
//! rewrite := "keep" | "replace" | "shrink" | "exchange(" sel "," sel ")"
//! sel     := word? "." color
//! word    := color{1,2}
//! ```
//!
//! Omitted types default to `none`; an omitted rewrite keyword means `keep`.
//! `shrink` and `exchange` go beyond the enumerated rule space.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::color::{Color, MoveWord};
use crate::graph::SurroundingsType;

/// Picks an edge relative to the writer: the `color` edge at the vertex
/// reached by `path`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Selector {
    pub path: MoveWord,
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RewriteOp {
    Keep,
    /// Replace the writer's previous vertex with a triangle.
    Expand,
    /// Replace the triangle through the writer's previous vertex with a vertex.
    Shrink,
    /// Same-color edge swap between two selected edges.
    Exchange(Selector, Selector),
}

impl RewriteOp {
    fn map_colors(&self, f: impl Fn(Color) -> Color + Copy) -> RewriteOp {
        match self {
            RewriteOp::Exchange(a, b) => RewriteOp::Exchange(
                Selector { path: a.path.map_colors(f), color: f(a.color) },
                Selector { path: b.path.map_colors(f), color: f(b.color) },
            ),
            other => other.clone(),
        }
    }
}

/// One rule entry: an optional rewrite at the writer's current vertex plus
/// the walk the writer takes.
///
/// Semantics: remember `p` = writer, walk the word on the graph *before*
/// rewriting, then rewrite at `p`. A writer that ends on an expanded `p`
/// lands on the triangle vertex reached through the last edge it walked
/// (the red-outside vertex if the word is empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Action {
    pub rewrite: RewriteOp,
    pub word: MoveWord,
}

impl Action {
    pub fn none() -> Self {
        Action { rewrite: RewriteOp::Keep, word: MoveWord::empty() }
    }

    pub fn new(rewrite: RewriteOp, word: MoveWord) -> Self {
        Action { rewrite, word }
    }

    pub fn is_none(&self) -> bool {
        self.rewrite == RewriteOp::Keep && self.word.is_empty()
    }

    pub fn conjugate(&self) -> Action {
        Action {
            rewrite: self.rewrite.map_colors(Color::swap_red_blue),
            word: self.word.map_colors(Color::swap_red_blue),
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_none() {
            return write!(f, "none");
        }
        match &self.rewrite {
            RewriteOp::Keep => write!(f, "keep")?,
            RewriteOp::Expand => write!(f, "replace")?,
            RewriteOp::Shrink => write!(f, "shrink")?,
            RewriteOp::Exchange(a, b) => {
                write!(f, "exchange({}.{},{}.{})", a.path, a.color, b.path, b.color)?
            }
        }
        if !self.word.is_empty() {
            write!(f, " move {}", self.word)?;
        }
        Ok(())
    }
}

/// Maps each surroundings type to an action.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    actions: [Action; 4],
}

impl Default for Rule {
    fn default() -> Self {
        Rule { actions: std::array::from_fn(|_| Action::none()) }
    }
}

impl Rule {
    pub fn new(actions: [Action; 4]) -> Self {
        Rule { actions }
    }

    pub fn action(&self, t: SurroundingsType) -> &Action {
        &self.actions[t.index()]
    }

    pub fn set(&mut self, t: SurroundingsType, a: Action) {
        self.actions[t.index()] = a;
    }

    pub fn with(mut self, t: SurroundingsType, a: Action) -> Self {
        self.set(t, a);
        self
    }

    pub fn actions(&self) -> &[Action; 4] {
        &self.actions
    }

    /// Swaps the roles of red and blue throughout.
    pub fn conjugate(&self) -> Rule {
        let mut out = Rule::default();
        for t in SurroundingsType::ALL {
            out.set(t.swap_red_blue(), self.action(t).conjugate());
        }
        out
    }

    /// Shape of the enumerated rule space: green surroundings do nothing,
    /// unlinked surroundings always expand, only keep/expand rewrites and
    /// words of at most two letters.
    pub fn is_canonical_shape(&self) -> bool {
        self.action(SurroundingsType::Green).is_none()
            && self.action(SurroundingsType::Zero).rewrite == RewriteOp::Expand
            && self.actions.iter().all(|a| {
                matches!(a.rewrite, RewriteOp::Keep | RewriteOp::Expand)
                    && a.word.len() <= MoveWord::DEFAULT_MAX_LEN
            })
    }

    /// Every color that appears in an active move word.
    pub fn move_colors(&self) -> Vec<Color> {
        let mut cs: Vec<Color> = self
            .actions
            .iter()
            .flat_map(|a| a.word.colors().iter().copied())
            .collect();
        cs.sort();
        cs.dedup();
        cs
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in SurroundingsType::ALL.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{} -> {}", t.letter(), self.action(*t))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleParseError {
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("semantic error at column {pos}: {msg}")]
    Semantic { pos: usize, msg: String },
}

impl RuleParseError {
    pub fn position(&self) -> usize {
        match self {
            RuleParseError::Syntax { pos, .. } | RuleParseError::Semantic { pos, .. } => *pos,
        }
    }
}

/// Parses rule text with the default two-letter word cap.
pub fn parse_rule(text: &str) -> Result<Rule, RuleParseError> {
    parse_rule_with_cap(text, MoveWord::DEFAULT_MAX_LEN)
}

pub fn parse_rule_with_cap(text: &str, max_word: usize) -> Result<Rule, RuleParseError> {
    let mut p = Parser::new(text, max_word);
    let mut rule = Rule::default();
    let mut seen = [false; 4];
    loop {
        let pos = p.pos();
        let t = p.surroundings()?;
        if seen[t.index()] {
            return Err(RuleParseError::Semantic {
                pos,
                msg: format!("duplicate clause for type `{t}`"),
            });
        }
        seen[t.index()] = true;
        p.expect("->")?;
        let a = p.action()?;
        rule.set(t, a);
        if p.at_end() {
            break;
        }
        p.expect(";")?;
        if p.at_end() {
            break;
        }
    }
    Ok(rule)
}

/// Parses a single action (the right-hand side of a clause).
pub fn parse_action(text: &str) -> Result<Action, RuleParseError> {
    parse_action_with_cap(text, MoveWord::DEFAULT_MAX_LEN)
}

pub fn parse_action_with_cap(text: &str, max_word: usize) -> Result<Action, RuleParseError> {
    let mut p = Parser::new(text, max_word);
    let a = p.action()?;
    if !p.at_end() {
        return Err(p.syntax("trailing input after action"));
    }
    Ok(a)
}

impl FromStr for Rule {
    type Err = RuleParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rule(s)
    }
}

/// Formats a rule in the text grammar; `parse_rule(&format_rule(r)) == r`.
pub fn format_rule(rule: &Rule) -> String {
    rule.to_string()
}

struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
    end_col: usize,
    max_word: usize,
}

impl Parser {
    fn new(text: &str, max_word: usize) -> Self {
        let chars: Vec<(usize, char)> = text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + 1, c))
            .collect();
        Parser { chars, at: 0, end_col: text.chars().count() + 1, max_word }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.end_col, |c| c.0)
    }

    fn at_end(&self) -> bool {
        self.at >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|c| c.1)
    }

    fn syntax(&self, msg: impl Into<String>) -> RuleParseError {
        RuleParseError::Syntax { pos: self.pos(), msg: msg.into() }
    }

    fn eat(&mut self, kw: &str) -> bool {
        let n = kw.chars().count();
        if self.at + n > self.chars.len() {
            return false;
        }
        let ok = self.chars[self.at..self.at + n].iter().map(|c| c.1).eq(kw.chars());
        if ok {
            self.at += n;
        }
        ok
    }

    fn expect(&mut self, kw: &str) -> Result<(), RuleParseError> {
        if self.eat(kw) {
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{kw}`")))
        }
    }

    fn surroundings(&mut self) -> Result<SurroundingsType, RuleParseError> {
        let t = self.peek().and_then(SurroundingsType::from_letter);
        match t {
            Some(t) => {
                self.at += 1;
                Ok(t)
            }
            None => Err(self.syntax("expected surroundings type `0`, `r`, `b` or `g`")),
        }
    }

    fn color(&mut self) -> Result<Color, RuleParseError> {
        match self.peek().and_then(Color::from_letter) {
            Some(c) => {
                self.at += 1;
                Ok(c)
            }
            None => Err(self.syntax("expected color `r`, `b` or `g`")),
        }
    }

    /// Greedy run of color letters (possibly empty).
    fn colors(&mut self) -> Vec<Color> {
        let mut out = Vec::new();
        while let Some(c) = self.peek().and_then(Color::from_letter) {
            out.push(c);
            self.at += 1;
        }
        out
    }

    fn word(&mut self) -> Result<MoveWord, RuleParseError> {
        let start = self.at;
        let cs = self.colors();
        if cs.is_empty() {
            return Err(self.syntax("expected a move word"));
        }
        if cs.len() > self.max_word {
            self.at = start + self.max_word;
            return Err(self.syntax(format!(
                "move word longer than {} letters",
                self.max_word
            )));
        }
        Ok(MoveWord::new(cs))
    }

    fn selector(&mut self) -> Result<Selector, RuleParseError> {
        let start = self.at;
        let path = self.colors();
        if path.len() > self.max_word {
            self.at = start + self.max_word;
            return Err(self.syntax("selector path too long"));
        }
        self.expect(".")?;
        let color = self.color()?;
        Ok(Selector { path: MoveWord::new(path), color })
    }

    fn action(&mut self) -> Result<Action, RuleParseError> {
        if self.eat("none") {
            return Ok(Action::none());
        }
        let rewrite = if self.eat("keep") {
            Some(RewriteOp::Keep)
        } else if self.eat("replace") {
            Some(RewriteOp::Expand)
        } else if self.eat("shrink") {
            Some(RewriteOp::Shrink)
        } else if self.eat("exchange") {
            self.expect("(")?;
            let a = self.selector()?;
            self.expect(",")?;
            let b = self.selector()?;
            self.expect(")")?;
            Some(RewriteOp::Exchange(a, b))
        } else {
            None
        };
        if self.eat("move") {
            let word = self.word()?;
            Ok(Action { rewrite: rewrite.unwrap_or(RewriteOp::Keep), word })
        } else {
            match rewrite {
                Some(RewriteOp::Keep) | None => {
                    Err(self.syntax("expected `none`, a rewrite keyword or `move`"))
                }
                Some(rw) => Ok(Action { rewrite: rw, word: MoveWord::empty() }),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SurroundingsType as S;

    fn w(s: &str) -> MoveWord {
        s.parse().unwrap()
    }

    #[test]
    fn parses_cyclic_rule() {
        let r = parse_rule("0 -> replace move rb; b -> replace move rb; r -> none; g -> none").unwrap();
        assert_eq!(r.action(S::Zero), &Action::new(RewriteOp::Expand, w("rb")));
        assert_eq!(r.action(S::Blue), &Action::new(RewriteOp::Expand, w("rb")));
        assert!(r.action(S::Red).is_none());
        assert!(r.action(S::Green).is_none());
        assert!(r.is_canonical_shape());
        assert_eq!(parse_rule(&format_rule(&r)).unwrap(), r);
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_rule("0->replacemoverb;b->keepmover").unwrap();
        let b = parse_rule(" 0 -> replace move r b ; b -> keep move r ").unwrap();
        assert_eq!(a, b);
        assert_eq!(b.action(S::Blue), &Action::new(RewriteOp::Keep, w("r")));
    }

    #[test]
    fn default_rewrite_is_keep_and_default_action_is_none() {
        let r = parse_rule("0 -> move g").unwrap();
        assert_eq!(r.action(S::Zero), &Action::new(RewriteOp::Keep, w("g")));
        assert!(r.action(S::Blue).is_none());
    }

    #[test]
    fn green_action_parses_but_is_not_canonical() {
        let r = parse_rule("g -> replace move r").unwrap();
        assert_eq!(r.action(S::Green), &Action::new(RewriteOp::Expand, w("r")));
        assert!(!r.is_canonical_shape());
    }

    #[test]
    fn rejects_long_words_and_duplicates() {
        let e = parse_rule("0 -> move rbg").unwrap_err();
        assert!(matches!(e, RuleParseError::Syntax { pos: 13, .. }), "{e:?}");
        let e = parse_rule("0 -> none; 0 -> move r").unwrap_err();
        assert!(matches!(e, RuleParseError::Semantic { pos: 12, .. }), "{e:?}");
        assert!(parse_rule_with_cap("0 -> move rbg", 3).is_ok());
        let e = parse_rule("x -> none").unwrap_err();
        assert_eq!(e.position(), 1);
    }

    #[test]
    fn extended_actions_round_trip() {
        let r = parse_rule("0 -> replace move rr; r -> shrink; b -> exchange(.r, bg.r) move g").unwrap();
        assert_eq!(r.action(S::Red), &Action::new(RewriteOp::Shrink, MoveWord::empty()));
        assert_eq!(parse_rule(&format_rule(&r)).unwrap(), r);
    }

    #[test]
    fn conjugation() {
        let r = parse_rule("0 -> replace move rb; b -> replace move rb").unwrap();
        let c = r.conjugate();
        assert_eq!(c.action(S::Zero), &Action::new(RewriteOp::Expand, w("br")));
        assert_eq!(c.action(S::Red), &Action::new(RewriteOp::Expand, w("br")));
        assert!(c.action(S::Blue).is_none());
        assert_eq!(c.conjugate(), r);
    }
}
