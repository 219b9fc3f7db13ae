//! System states and the single-step update.

use std::fmt;

use crate::graph::{make_cube, make_k33, MultiLinked, SurroundingsType, Trinet, Vertex};
use crate::iso::canonical_form;
use crate::ops::{EdgeEnd, Expansion, RewriteError, Shrink};
use crate::rule::{Action, RewriteOp, Rule};

/// A graph, the writer's vertex and the number of updates applied so far.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SystemState {
    pub graph: Trinet,
    pub writer: Vertex,
    pub time: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("writer {writer} is not a vertex of a {vertices}-vertex graph")]
pub struct BadWriter {
    pub writer: Vertex,
    pub vertices: usize,
}

impl SystemState {
    pub fn new(graph: Trinet, writer: Vertex) -> Result<Self, BadWriter> {
        if !graph.contains(writer) {
            return Err(BadWriter { writer, vertices: graph.vertex_count() });
        }
        Ok(SystemState { graph, writer, time: 0 })
    }

    /// The axis-colored cube with the writer on vertex 0.
    pub fn cube() -> Self {
        SystemState { graph: make_cube(), writer: 0, time: 0 }
    }

    /// K3,3 with the writer on vertex 0.
    pub fn k33() -> Self {
        SystemState { graph: make_k33(), writer: 0, time: 0 }
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Surroundings type at the writer.
    pub fn writer_type(&self) -> Result<SurroundingsType, MultiLinked> {
        self.graph.surroundings_type(self.writer)
    }

    /// Encoding of graph plus writer, ignoring time and vertex ids.
    pub fn canonical_form(&self) -> Vec<u8> {
        canonical_form(&self.graph, self.writer)
    }

    /// Swaps red and blue on every edge.
    pub fn conjugate(&self) -> SystemState {
        SystemState {
            graph: self.graph.recolored(|c| c.swap_red_blue()),
            writer: self.writer,
            time: self.time,
        }
    }

    /// Applies one update in place.
    pub fn step(&mut self, rule: &Rule) -> StepReport {
        let p = self.writer;
        let time = self.time;
        self.time += 1;
        let before = self.graph.vertex_count();
        let observed = self.graph.surroundings_type(p);
        let Ok(ty) = observed else {
            return StepReport { time, from: p, to: p, observed, applied: Applied::Nothing, vertex_delta: 0 };
        };
        let action = rule.action(ty);
        if action.is_none() {
            return StepReport { time, from: p, to: p, observed, applied: Applied::Nothing, vertex_delta: 0 };
        }
        let dest = self.graph.walk(p, &action.word);
        let (applied, to) = apply(&mut self.graph, p, dest, action);
        self.writer = to;
        let vertex_delta = self.graph.vertex_count() as i64 - before as i64;
        StepReport { time, from: p, to, observed, applied, vertex_delta }
    }

    /// Applies `n` updates, discarding the reports.
    pub fn run(&mut self, rule: &Rule, n: u64) {
        for _ in 0..n {
            self.step(rule);
        }
    }
}

impl fmt::Display for SystemState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t={} writer={} vertices={}", self.time, self.writer, self.graph.vertex_count())
    }
}

fn apply(g: &mut Trinet, p: Vertex, dest: Vertex, action: &Action) -> (Applied, Vertex) {
    match &action.rewrite {
        RewriteOp::Keep => (Applied::Nothing, dest),
        RewriteOp::Expand => {
            let e = g.expand(p);
            let to = if dest == p {
                action.word.last().map_or(e.red, |c| e.by_color(c))
            } else {
                dest
            };
            (Applied::Expanded(e), to)
        }
        RewriteOp::Shrink => match g.shrink(p) {
            Ok(s) => (Applied::Shrunk(s), s.map(dest)),
            Err(err) => (Applied::Failed(err), dest),
        },
        RewriteOp::Exchange(s1, s2) => {
            let e1 = EdgeEnd { vertex: g.walk(p, &s1.path), color: s1.color };
            let e2 = EdgeEnd { vertex: g.walk(p, &s2.path), color: s2.color };
            match g.exchange(e1, e2) {
                Ok(()) => (Applied::Exchanged, dest),
                Err(err) => (Applied::Failed(err), dest),
            }
        }
    }
}

/// Functional form of [`SystemState::step`].
pub fn step(state: &SystemState, rule: &Rule) -> (SystemState, StepReport) {
    let mut next = state.clone();
    let report = next.step(rule);
    (next, report)
}

/// What the rewrite part of an action did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Applied {
    Nothing,
    Expanded(Expansion),
    Shrunk(Shrink),
    Exchanged,
    /// An extended rewrite whose precondition failed; the writer still moved.
    Failed(RewriteError),
}

/// Record of one update.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepReport {
    /// Time before the update.
    pub time: u64,
    pub from: Vertex,
    /// Writer after the update, in post-update ids.
    pub to: Vertex,
    pub observed: Result<SurroundingsType, MultiLinked>,
    pub applied: Applied,
    pub vertex_delta: i64,
}

impl StepReport {
    /// The rule entry that drove this update, if the surroundings were typed.
    pub fn action<'r>(&self, rule: &'r Rule) -> Option<&'r Action> {
        self.observed.ok().map(|t| rule.action(t))
    }

    pub fn graph_changed(&self) -> bool {
        matches!(self.applied, Applied::Expanded(_) | Applied::Shrunk(_) | Applied::Exchanged)
    }

    /// Nothing at all changed apart from the clock.
    pub fn is_idle(&self) -> bool {
        !self.graph_changed() && self.from == self.to
    }

    pub fn multilinked(&self) -> bool {
        self.observed.is_err()
    }

    pub fn anomaly(&self) -> Option<String> {
        match (&self.observed, &self.applied) {
            (Err(m), _) => Some(format!("t={}: {m}", self.time)),
            (_, Applied::Failed(e)) => Some(format!("t={}: {e}", self.time)),
            _ => None,
        }
    }
}

/// A named starting state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitialCondition {
    Cube,
    K33,
    Custom { name: String, state: SystemState },
}

impl InitialCondition {
    pub fn state(&self) -> SystemState {
        match self {
            InitialCondition::Cube => SystemState::cube(),
            InitialCondition::K33 => SystemState::k33(),
            InitialCondition::Custom { state, .. } => state.clone(),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            InitialCondition::Cube => "cube",
            InitialCondition::K33 => "k33",
            InitialCondition::Custom { name, .. } => name,
        }
    }
}

impl fmt::Display for InitialCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule::parse_rule;

    #[test]
    fn idle_rule_only_advances_time() {
        let rule = Rule::default();
        let mut s = SystemState::cube();
        let before = s.clone();
        let r = s.step(&rule);
        assert!(r.is_idle());
        assert_eq!(s.time, 1);
        assert_eq!((s.graph, s.writer), (before.graph, before.writer));
    }

    #[test]
    fn cyclic_rule_grows_every_step() {
        let rule = parse_rule("0 -> replace move rb; b -> replace move rb").unwrap();
        let mut s = SystemState::cube();
        for t in 1..=200u64 {
            let r = s.step(&rule);
            assert_eq!(r.vertex_delta, 2);
            assert_eq!(s.vertex_count() as u64, 8 + 2 * t);
            s.graph.validate().unwrap();
        }
    }

    #[test]
    fn returning_word_lands_on_triangle_corner() {
        let rule = parse_rule("0 -> replace move gg").unwrap();
        let mut s = SystemState::cube();
        s.step(&rule);
        assert_eq!(s.writer, 8);
        assert_eq!(s.writer_type(), Ok(SurroundingsType::Green));
        let rule = parse_rule("0 -> replace move rr").unwrap();
        let mut s = SystemState::cube();
        s.step(&rule);
        assert_eq!(s.writer, 0);
        assert_eq!(s.writer_type(), Ok(SurroundingsType::Red));
    }

    #[test]
    fn shrink_remaps_writer() {
        let rule = parse_rule("0 -> replace move rr; r -> shrink").unwrap();
        let mut s = SystemState::cube();
        let start = s.canonical_form();
        s.step(&rule);
        assert_eq!(s.vertex_count(), 10);
        let r = s.step(&rule);
        assert_eq!(r.vertex_delta, -2);
        assert_eq!(s.canonical_form(), start);
    }

    #[test]
    fn failed_extended_rewrite_is_reported() {
        let rule = parse_rule("0 -> shrink move r").unwrap();
        let mut s = SystemState::cube();
        let r = s.step(&rule);
        assert!(matches!(r.applied, Applied::Failed(RewriteError::NotATriangle(0))));
        assert!(r.anomaly().is_some());
        assert_eq!(s.writer, 1);
    }
}
