//! Colored trinet automata: a writer walking an edge-3-colored cubic graph
//! and rewriting it locally, plus tools to classify and analyze the results.

pub mod analysis;
pub mod catalog;
pub mod color;
pub mod graph;
pub mod io;
pub mod iso;
pub mod ops;
pub mod classify;
pub mod rule;
pub mod sim;
pub mod space;
pub mod worddyn;

pub use color::{Color, MoveWord};
pub use graph::{make_cube, make_k33, GraphError, MultiLinked, SurroundingsType, Trinet, Vertex};
pub use ops::{edge_exchange, triangle_expand, triangle_shrink, EdgeEnd, Expansion, RewriteError, Shrink};
pub use rule::{format_rule, parse_rule, Action, RewriteOp, Rule, RuleParseError, Selector};
pub use sim::{step, Applied, InitialCondition, StepReport, SystemState};
pub use space::{enumerate_space, OptionTable, RuleId, TableError};
