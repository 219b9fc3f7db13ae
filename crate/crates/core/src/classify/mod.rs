//! Behavior classification of a rule from an initial state.

pub mod certify;
pub mod sweep;

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::color::{Color, MoveWord};
use crate::graph::{SurroundingsType, Trinet, Vertex};
use crate::ops::Expansion;
use crate::rule::{RewriteOp, Rule};
use crate::sim::{Applied, StepReport, SystemState};

pub use certify::{certify, replay_check, Certificate};

/// Resource limits for one classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_steps: u64,
    pub max_vertices: usize,
    pub max_period: u64,
    pub max_radius: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_steps: 200_000, max_vertices: 500_000, max_period: 4_000, max_radius: 512 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WriterMotion {
    Halted,
    Periodic(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Movement {
    Cyclic,
    Bouncing,
    Unknown,
}

impl fmt::Display for Movement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Movement::Cyclic => "cyclic",
            Movement::Bouncing => "bouncing",
            Movement::Unknown => "unknown",
        })
    }
}

/// Outcome of [`classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassLabel {
    /// The network stops changing after `settled` updates.
    Fixed { writer: WriterMotion, settled: u64 },
    /// The whole state (graph and writer, up to isomorphism) cycles.
    Oscillating { period: u64, transient: u64 },
    Repetitive { period: u64, transient: u64, radius: usize },
    Elaborate { movement: Movement },
    Unresolved { budget_used: u64 },
}

impl ClassLabel {
    pub fn name(&self) -> &'static str {
        match self {
            ClassLabel::Fixed { .. } => "fixed",
            ClassLabel::Oscillating { .. } => "oscillating",
            ClassLabel::Repetitive { .. } => "repetitive",
            ClassLabel::Elaborate { .. } => "elaborate",
            ClassLabel::Unresolved { .. } => "unresolved",
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Fixed { writer: WriterMotion::Halted, settled } => {
                write!(f, "fixed (writer halted, static after {settled})")
            }
            ClassLabel::Fixed { writer: WriterMotion::Periodic(p), settled } => {
                write!(f, "fixed (writer period {p}, static after {settled})")
            }
            ClassLabel::Oscillating { period, transient } => {
                write!(f, "oscillating (period {period}, transient {transient})")
            }
            ClassLabel::Repetitive { period, transient, radius } => {
                write!(f, "repetitive (period {period}, transient {transient}, radius {radius})")
            }
            ClassLabel::Elaborate { movement } => write!(f, "elaborate ({movement})"),
            ClassLabel::Unresolved { budget_used } => write!(f, "unresolved after {budget_used} steps"),
        }
    }
}

/// Why a label was given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Evidence {
    /// The writer stood still on an unchanged graph at `time`.
    Halt { time: u64, observed: Option<SurroundingsType> },
    /// The state at `time` recurs after `period` steps; replaying two
    /// periods reproduced the exact canonical state.
    Recurrence { time: u64, period: u64, replay_ok: bool },
    Certificate(Certificate),
    /// Trailing-window trail statistics of a growing run without a
    /// certificate.
    Trail(TrailStats),
    Budget { reason: String },
}

/// Summary of the writer's movement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrailStats {
    /// Length of the trailing window the degree and growth refer to.
    pub window: u64,
    /// Colors hopped along during the window, as letters.
    pub colors: String,
    /// Vertices added during the window.
    pub growth: i64,
    /// The writer's footprint over the last complete window, drawn on the
    /// network as it was when that window began.
    pub footprint: Footprint,
    /// Edge re-traversals over the whole run, and how many went backwards.
    pub retraces: u64,
    pub reversed_retraces: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub label: ClassLabel,
    pub evidence: Evidence,
    pub final_vertices: usize,
    pub steps_used: u64,
    /// Halted because the writer saw a green link.
    pub green_halt: bool,
    pub anomalies: Vec<String>,
}

const MAX_ANOMALIES: usize = 16;
const TRAIL_WINDOW: u64 = 10_000;
const SPUR_PRUNE: usize = 1;

fn uses_only_keep_expand(rule: &Rule) -> bool {
    rule.actions().iter().all(|a| matches!(a.rewrite, RewriteOp::Keep | RewriteOp::Expand))
}

/// Packs the writer's type and its neighbors' types into one value that
/// isomorphisms preserve.
fn signature(s: &SystemState) -> u16 {
    let code = |v| match s.graph.surroundings_type(v) {
        Ok(t) => t.index() as u16,
        Err(_) => 4,
    };
    let [r, b, g] = s.graph.neighbors(s.writer);
    code(s.writer) | code(r) << 3 | code(b) << 6 | code(g) << 9
}

/// Smallest periods of suffixes of `seq`: for each suffix of length `m`
/// whose smallest period `q` satisfies `3q <= m`, `q` is a candidate.
/// Returned ascending, deduplicated, each with the longest such suffix.
pub fn suffix_periods(seq: &[u16], max_period: u64) -> Vec<(u64, usize)> {
    let rev: Vec<u16> = seq.iter().rev().copied().collect();
    let n = rev.len();
    let mut pi = vec![0usize; n];
    for i in 1..n {
        let mut k = pi[i - 1];
        while k > 0 && rev[i] != rev[k] {
            k = pi[k - 1];
        }
        if rev[i] == rev[k] {
            k += 1;
        }
        pi[i] = k;
    }
    let mut best: HashMap<u64, usize> = HashMap::new();
    for m in 1..=n {
        let q = (m - pi[m - 1]) as u64;
        if q <= max_period && 3 * q <= m as u64 {
            let e = best.entry(q).or_insert(0);
            *e = (*e).max(m);
        }
    }
    let mut out: Vec<(u64, usize)> = best.into_iter().collect();
    out.sort_unstable();
    out
}

/// Traversal history of every edge the writer has walked along, keyed by
/// (smaller endpoint, color). Keys and endpoints are carried through
/// expansions so that an edge keeps its identity when one of its endpoints
/// is replaced.
///
/// Every time an edge is walked again more than [`RETRACE_GAP`] steps after
/// its previous traversal, the retrace is counted, and counted as reversed
/// when it goes the opposite way. A writer circling a loop retraces edges in
/// the same direction; a writer bouncing along a line retraces them
/// backwards.
#[derive(Debug, Default)]
struct EdgeTrail {
    last: HashMap<(Vertex, Color), (u64, Vertex)>,
    retraces: u64,
    reversed: u64,
}

const RETRACE_GAP: u64 = 8;

impl EdgeTrail {
    fn key(g: &Trinet, v: Vertex, c: Color) -> (Vertex, Color) {
        (v.min(g.neighbor(v, c)), c)
    }

    fn record(&mut self, g: &Trinet, from: Vertex, word: &MoveWord, time: u64) {
        let mut at = from;
        for &c in word.colors() {
            if let Some((t, tail)) = self.last.insert(Self::key(g, at, c), (time, at)) {
                if time > t + RETRACE_GAP {
                    self.retraces += 1;
                    self.reversed += u64::from(tail != at);
                }
            }
            at = g.neighbor(at, c);
        }
    }

    /// `outside` holds the pre-expansion neighbors of the expanded vertex.
    fn expanded(&mut self, g: &Trinet, e: &Expansion, outside: [Vertex; 3]) {
        for c in [Color::Blue, Color::Green] {
            let x = outside[c.index()];
            if let Some((t, tail)) = self.last.remove(&(e.red.min(x), c)) {
                let corner = e.by_color(c);
                let tail = if tail == e.red { corner } else { tail };
                self.last.insert(Self::key(g, corner, c), (t, tail));
            }
        }
    }
}

/// The writer's footprint over one window, drawn on the network as it was
/// when the window began. Every vertex created during the window is
/// identified with the vertex whose expansion produced it, so each walked
/// edge is either internal to such a class (and ignored) or an edge of the
/// starting network.
#[derive(Debug, Default)]
struct Track {
    base: usize,
    origin: Vec<Vertex>,
    edges: HashSet<(Vertex, Vertex)>,
}

impl Track {
    fn new(g: &Trinet) -> Self {
        Track { base: g.vertex_count(), origin: Vec::new(), edges: HashSet::new() }
    }

    fn class(&self, v: Vertex) -> Vertex {
        if v < self.base {
            v
        } else {
            self.origin[v - self.base]
        }
    }

    fn walk(&mut self, g: &Trinet, from: Vertex, word: &MoveWord) {
        let mut at = from;
        for &c in word.colors() {
            let next = g.neighbor(at, c);
            let (a, b) = (self.class(at), self.class(next));
            if a != b {
                self.edges.insert((a.min(b), a.max(b)));
            }
            at = next;
        }
    }

    fn expanded(&mut self, e: &Expansion) {
        let o = self.class(e.red);
        let mut fresh = [e.green, e.blue];
        fresh.sort_unstable();
        for v in fresh {
            debug_assert_eq!(v, self.base + self.origin.len());
            self.origin.push(o);
        }
    }

    /// Size and largest vertex degree of the footprint after `prune`
    /// rounds of deleting dead-end edges. A single round discounts one-edge
    /// excursions that the writer walks straight back along.
    fn shape(&self, prune: usize) -> Footprint {
        let mut inc: HashMap<Vertex, Vec<(Vertex, Vertex)>> = HashMap::new();
        for &(a, b) in &self.edges {
            inc.entry(a).or_default().push((a, b));
            inc.entry(b).or_default().push((a, b));
        }
        for _ in 0..prune {
            let leaves: Vec<(Vertex, Vertex)> =
                inc.values().filter(|es| es.len() == 1).map(|es| es[0]).collect();
            if leaves.is_empty() {
                break;
            }
            for (a, b) in leaves {
                for v in [a, b] {
                    if let Some(es) = inc.get_mut(&v) {
                        es.retain(|&e| e != (a, b));
                    }
                }
            }
            inc.retain(|_, es| !es.is_empty());
        }
        let degree_sum: usize = inc.values().map(Vec::len).sum();
        Footprint {
            vertices: inc.len(),
            edges: degree_sum / 2,
            max_degree: inc.values().map(Vec::len).max().unwrap_or(0),
        }
    }
}

/// Size of the writer's footprint over a window.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Footprint {
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: usize,
}

impl Footprint {
    /// Effectively one-dimensional: at most one edge in five beyond a
    /// spanning path or cycle. A writer roaming a two-dimensional patch of
    /// a cubic network leaves close to three edges per two vertices.
    pub fn is_track(&self) -> bool {
        self.vertices > 0 && 5 * self.edges <= 6 * self.vertices
    }
}

/// Steps a state while keeping the trail bookkeeping used for elaborate
/// runs.
#[derive(Debug, Default)]
struct Tracker {
    trail: EdgeTrail,
    track: Track,
    block_start: u64,
    finished: Option<Footprint>,
    counts: Vec<usize>,
    last_hop: [Option<u64>; 3],
}

impl Tracker {
    fn step(&mut self, s: &mut SystemState, rule: &Rule, record_edges: bool) -> StepReport {
        if self.counts.is_empty() {
            self.track = Track::new(&s.graph);
            self.block_start = s.time;
        } else if s.time - self.block_start >= TRAIL_WINDOW {
            self.finished = Some(self.track.shape(SPUR_PRUNE));
            self.track = Track::new(&s.graph);
            self.block_start = s.time;
        }
        let from = s.writer;
        let outside = s.graph.neighbors(from);
        if record_edges {
            if let Ok(ty) = s.writer_type() {
                let word = &rule.action(ty).word;
                self.trail.record(&s.graph, from, word, s.time);
                self.track.walk(&s.graph, from, word);
            }
        }
        let report = s.step(rule);
        let word = report.action(rule).map(|a| a.word.colors()).unwrap_or(&[]);
        if let Applied::Expanded(e) = &report.applied {
            self.trail.expanded(&s.graph, e, outside);
            self.track.expanded(e);
        }
        for &c in word {
            self.last_hop[c.index()] = Some(report.time);
        }

        self.counts.push(s.vertex_count());
        report
    }

    /// Growth and colors refer to the trailing window; the footprint degree
    /// to the last complete window (or the partial one if none completed).
    fn stats(&self, s: &SystemState) -> TrailStats {
        let n = self.counts.len();
        let window = (TRAIL_WINDOW as usize).min(n);
        let footprint = match self.finished {
            Some(f) if s.time - self.block_start < TRAIL_WINDOW => f,
            _ => self.track.shape(SPUR_PRUNE),
        };
        let growth = if window > 0 { self.counts[n - 1] as i64 - self.counts[n - window] as i64 } else { 0 };
        let cutoff = s.time.saturating_sub(window as u64);
        let colors = Color::ALL
            .iter()
            .filter(|c| self.last_hop[c.index()].is_some_and(|t| t >= cutoff))
            .map(|c| c.letter())
            .collect();
        TrailStats {
            window: window as u64,
            colors,
            growth,
            footprint,
            retraces: self.trail.retraces,
            reversed_retraces: self.trail.reversed,
        }
    }
}

/// On a line every second crossing of an edge goes back the way the first
/// came, so a bouncing writer retraces (almost) only backwards, while going
/// around a loop produces forward retraces. Bouncing when at least nine in
/// ten retraces were reversed, cyclic otherwise.
fn movement_of(stats: &TrailStats) -> Movement {
    if stats.retraces == 0 {
        Movement::Unknown
    } else if stats.reversed_retraces * 10 >= stats.retraces * 9 {
        Movement::Bouncing
    } else {
        Movement::Cyclic
    }
}

struct Outcome {
    label: ClassLabel,
    evidence: Evidence,
    green_halt: bool,
}

/// Classifies `rule` started from `init`.
///
/// Tries, in order while simulating: a halted writer, a writer cycling on
/// an unchanged graph, an exact state recurrence (only for rules whose
/// rewrites can shrink or rewire), and a repetitive-growth certificate.
/// A run that keeps growing without any of these until the step budget is
/// labeled elaborate if the writer's footprint over the last window is a
/// track (see [`Footprint::is_track`]), and unresolved otherwise.
pub fn classify(rule: &Rule, init: &SystemState, budget: &Budget) -> Classification {
    let mut s = init.clone();
    let start_time = s.time;
    let mut anomalies = Vec::new();
    let canonical_ops = uses_only_keep_expand(rule);

    let mut last_change = s.time;
    let mut visits: HashMap<usize, u64> = HashMap::new();
    let mut seen_states: HashMap<Vec<u8>, u64> = HashMap::new();

    let mut sigs: Vec<u16> = Vec::new();
    let mut tracker = Tracker::default();
    let mut failed_at: HashMap<u64, u64> = HashMap::new();
    let mut next_check = 8u64;

    let outcome = 'run: loop {
        let steps = s.time - start_time;
        if steps >= budget.max_steps || s.vertex_count() > budget.max_vertices {
            break 'run None;
        }
        if canonical_ops && steps >= next_check {
            next_check = if steps < 1024 { steps * 2 } else { steps + 256 };
            let window = sigs.len().min(3 * budget.max_period as usize + 64);
            let cands = suffix_periods(&sigs[sigs.len() - window..], budget.max_period);
            let mut periods: Vec<u64> = cands
                .into_iter()
                .take(4)
                .flat_map(|(q, _)| (1..=4).map(move |k| k * q))
                .filter(|&p| p <= budget.max_period)
                .collect();
            periods.sort_unstable();
            periods.dedup();
            for p in periods {
                if failed_at.get(&p).is_some_and(|&t| s.time < t + p.max(256)) {
                    continue;
                }
                if let Some(cert) = certify(&mut s, rule, p, budget.max_radius) {
                    break 'run Some(repetitive_outcome(rule, init, &s, cert, &sigs, budget));
                }
                failed_at.insert(p, s.time);
            }
        }
        if !canonical_ops {
            let key = s.canonical_form();
            if let Some(&t0) = seen_states.get(&key) {
                let period = s.time - t0;
                let mut replay = s.clone();
                replay.run(rule, 2 * period);
                let replay_ok = replay.canonical_form() == key;
                break 'run Some(Outcome {
                    label: ClassLabel::Oscillating { period, transient: t0 - start_time },
                    evidence: Evidence::Recurrence { time: t0, period, replay_ok },
                    green_halt: false,
                });
            }
            seen_states.insert(key, s.time);
        }
        sigs.push(signature(&s));
        let report = tracker.step(&mut s, rule, canonical_ops);
        if let Some(a) = report.anomaly() {
            if anomalies.len() < MAX_ANOMALIES {
                anomalies.push(a);
            }
        }
        if report.is_idle() {
            let observed = report.observed.ok();
            break 'run Some(Outcome {
                label: ClassLabel::Fixed { writer: WriterMotion::Halted, settled: last_change - start_time },
                evidence: Evidence::Halt { time: report.time, observed },
                green_halt: observed == Some(SurroundingsType::Green),
            });
        }
        if report.graph_changed() {
            last_change = s.time;
            visits.clear();
        } else {
            if let Some(&t0) = visits.get(&report.from) {
                let period = report.time - t0;
                let mut replay = s.clone();
                let key = replay.canonical_form();
                replay.run(rule, 2 * period);
                let replay_ok = replay.canonical_form() == key;
                break 'run Some(Outcome {
                    label: ClassLabel::Fixed { writer: WriterMotion::Periodic(period), settled: last_change - start_time },
                    evidence: Evidence::Recurrence { time: t0, period, replay_ok },
                    green_halt: false,
                });
            }
            visits.insert(report.from, report.time);
        }
    };

    let steps_used = s.time - start_time;
    let outcome = outcome.unwrap_or_else(|| {
        let stats = tracker.stats(&s);
        if canonical_ops && stats.growth > 0 && stats.footprint.is_track() && steps_used >= budget.max_steps {
            Outcome {
                label: ClassLabel::Elaborate { movement: movement_of(&stats) },
                evidence: Evidence::Trail(stats),
                green_halt: false,
            }
        } else {
            let reason = if s.vertex_count() > budget.max_vertices { "vertex budget" } else { "step budget" };
            Outcome {
                label: ClassLabel::Unresolved { budget_used: steps_used },
                evidence: Evidence::Budget { reason: reason.into() },
                green_halt: false,
            }
        }
    });
    Classification {
        label: outcome.label,
        evidence: outcome.evidence,
        final_vertices: s.vertex_count(),
        steps_used,
        green_halt: outcome.green_halt,
        anomalies,
    }
}

/// Given a certificate found at the current time, locates the earliest
/// certifiable time by re-simulating from the start of the periodic run of
/// signatures. If a proper divisor of the period certifies within one
/// period after that, the divisor is the eventual period and its earliest
/// certificate is used instead. The result is confirmed by replay.
fn repetitive_outcome(
    rule: &Rule,
    init: &SystemState,
    at: &SystemState,
    cert: Certificate,
    sigs: &[u16],
    budget: &Budget,
) -> Outcome {
    let p = cert.period as usize;
    let n = sigs.len();
    let mut k = n;
    while k > p && sigs[k - 1 - p] == sigs[k - 1] {
        k -= 1;
    }
    // signatures agree with period p from index k - p on
    let suffix_start = (k.saturating_sub(p)) as u64 + init.time;
    let mut s = init.clone();
    s.run(rule, suffix_start - init.time);
    let mut first = cert;
    while s.time < at.time {
        if let Some(c) = certify(&mut s, rule, cert.period, budget.max_radius) {
            first = c;
            break;
        }
        s.step(rule);
    }
    let tail = &sigs[((first.time - init.time) as usize).min(n)..];
    let sig_period = |d: usize| tail.iter().zip(&tail[d.min(tail.len())..]).all(|(a, b)| a == b);
    let divisors = (1..cert.period).filter(|&d| cert.period % d == 0 && sig_period(d as usize));
    'divisors: for d in divisors {
        let mut probe = s.clone();
        for _ in 0..cert.period {
            if let Some(c) = certify(&mut probe, rule, d, budget.max_radius) {
                first = c;
                s = probe;
                break 'divisors;
            }
            probe.step(rule);
        }
    }
    first.replay_ok = replay_check(&s, rule, &first);
    let label = if first.replay_ok {
        ClassLabel::Repetitive { period: first.period, transient: first.time - init.time, radius: first.radius }
    } else {
        ClassLabel::Unresolved { budget_used: at.time - init.time }
    };
    Outcome { label, evidence: Evidence::Certificate(first), green_halt: false }
}

/// Fixed-point detection alone.
pub fn detect_fixed(rule: &Rule, init: &SystemState, budget: &Budget) -> Option<(WriterMotion, u64)> {
    match classify(rule, init, budget).label {
        ClassLabel::Fixed { writer, settled } => Some((writer, settled)),
        _ => None,
    }
}

/// Exact recurrence of the full state up to isomorphism, returning the
/// cycle length.
pub fn detect_periodic_state(rule: &Rule, init: &SystemState, budget: &Budget) -> Option<u64> {
    let mut s = init.clone();
    let mut seen: HashMap<Vec<u8>, u64> = HashMap::new();
    for _ in 0..budget.max_steps {
        let key = s.canonical_form();
        if let Some(&t0) = seen.get(&key) {
            return Some(s.time - t0);
        }
        seen.insert(key, s.time);
        s.step(rule);
        if s.vertex_count() > budget.max_vertices {
            return None;
        }
    }
    None
}

/// Repetitive-growth certification alone.
pub fn detect_repetitive(rule: &Rule, init: &SystemState, budget: &Budget) -> Option<Certificate> {
    match classify(rule, init, budget) {
        Classification { label: ClassLabel::Repetitive { .. }, evidence: Evidence::Certificate(c), .. } => Some(c),
        _ => None,
    }
}

/// Static one-dimensionality: if every active move uses colors from a
/// single pair and rewrites are keep/expand, the writer never leaves the
/// alternating cycle of that pair through its starting vertex. Returns the
/// pair.
pub fn detect_onedim(rule: &Rule) -> Option<(Color, Color)> {
    if !uses_only_keep_expand(rule) {
        return None;
    }
    let used = rule.move_colors();
    let pairs = [(Color::Red, Color::Blue), (Color::Red, Color::Green), (Color::Blue, Color::Green)];
    pairs.into_iter().find(|&(a, b)| used.iter().all(|&c| c == a || c == b))
}

/// Cyclic versus bouncing movement, decided from the edge retraces of a
/// run of `steps` updates.
pub fn movement(rule: &Rule, init: &SystemState, steps: u64) -> Movement {
    let mut s = init.clone();
    let mut tracker = Tracker::default();
    for _ in 0..steps {
        tracker.step(&mut s, rule, true);
    }
    movement_of(&tracker.stats(&s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule::parse_rule;

    #[test]
    fn suffix_periods_finds_tail_period() {
        let mut seq: Vec<u16> = vec![9, 8, 7, 9, 9, 1];
        for _ in 0..5 {
            seq.extend([1, 2, 3]);
        }
        let c = suffix_periods(&seq, 100);
        assert!(c.iter().any(|&(p, m)| p == 3 && m >= 15));
        assert!(c.iter().all(|&(p, m)| 3 * p as usize <= m));
    }

    #[test]
    fn halting_example_halts() {
        let rule = parse_rule("0 -> replace move b; r -> none; b -> keep move r; g -> none").unwrap();
        let c = classify(&rule, &SystemState::cube(), &Budget::default());
        assert_eq!(c.label, ClassLabel::Fixed { writer: WriterMotion::Halted, settled: 2 });
        assert_eq!(c.evidence, Evidence::Halt { time: 3, observed: Some(SurroundingsType::Green) });
        assert!(c.green_halt);
    }

    #[test]
    fn cyclic_rule_is_elaborate() {
        let rule = parse_rule("0 -> replace move rb; b -> replace move rb").unwrap();
        let budget = Budget { max_steps: 20_000, ..Budget::default() };
        let c = classify(&rule, &SystemState::cube(), &budget);
        assert_eq!(c.label, ClassLabel::Elaborate { movement: Movement::Cyclic });
        assert_eq!(detect_onedim(&rule), Some((Color::Red, Color::Blue)));
    }

    #[test]
    fn shrink_rule_oscillates() {
        let rule = parse_rule("0 -> replace move rr; r -> shrink").unwrap();
        assert_eq!(detect_periodic_state(&rule, &SystemState::cube(), &Budget::default()), Some(2));
        let c = classify(&rule, &SystemState::cube(), &Budget::default());
        assert_eq!(c.label, ClassLabel::Oscillating { period: 2, transient: 0 });
    }
}
