//! Certificates for repetitive growth.
//!
//! A certificate `(t, p, R)` asserts that the evolution from time `t` repeats
//! with period `p` forever. It is accepted when all of the following hold:
//!
//! 1. every vertex that already existed at `t` (and was not rewritten since)
//!    whose adjacency is read during `[t, t+p)` lies within distance `R-1`
//!    of the time-`t` writer; reads are the writer's vertex and its
//!    neighbors (for typing), every vertex a move passes through, and the
//!    rewritten vertex;
//! 2. in the time-`t+p` graph, every such surviving old vertex within
//!    distance `R-1` of the new writer was within `R-1` of the old writer,
//!    and those at distance exactly `R` were within `R`;
//! 3. the radius-`R` balls around the writer at `t` and `t+p` are
//!    color-isomorphic (including which edges leave the ball);
//! 4. the vertex count grew over the period.
//!
//! Conditions 1 and 2 make the ball at `t+p` a function of the ball at `t`,
//! so condition 3 propagates by induction and the writer's surroundings
//! repeat forever while the graph keeps growing.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::graph::{Trinet, Vertex};
use crate::iso::ball_form;
use crate::rule::{RewriteOp, Rule};
use crate::sim::SystemState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub time: u64,
    pub period: u64,
    pub radius: usize,
    /// Vertices added per period.
    pub growth: i64,
    /// Largest time-`t` distance of an old vertex the writer stood on
    /// during the window.
    pub wander: usize,
    /// Whether the ball at `t + 2p` was confirmed to match as well.
    pub replay_ok: bool,
}

/// Vertices within `radius` of `root`, with their distances.
pub fn bounded_bfs(g: &Trinet, root: Vertex, radius: usize) -> HashMap<Vertex, usize> {
    let mut dist = HashMap::new();
    dist.insert(root, 0);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        if d == radius {
            continue;
        }
        for u in g.neighbors(v) {
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(u) {
                e.insert(d + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

struct Undo {
    p: Vertex,
    row: [Vertex; 3],
}

/// What one window of keep/expand steps touched.
struct Window<T> {
    reads: Vec<Vertex>,
    writer_old: Vec<Vertex>,
    growth: i64,
    at_end: T,
}

/// Runs `p` steps on `state` with keep/expand semantics, recording the old
/// vertices whose adjacency is read, evaluates `at_end` on the resulting
/// state and then undoes every change. Returns `None` if an undefined
/// surroundings type or an action other than keep/expand comes up.
fn run_window<T>(
    state: &mut SystemState,
    rule: &Rule,
    p: u64,
    at_end: impl FnOnce(&SystemState, &HashSet<Vertex>) -> T,
) -> Option<Window<T>> {
    let l0 = state.graph.vertex_count();
    let start_writer = state.writer;
    let mut journal: Vec<Undo> = Vec::new();
    let mut reads = Vec::new();
    let mut writer_old = Vec::new();
    let mut rewritten = HashSet::new();
    let is_old = |v: Vertex, rewritten: &HashSet<Vertex>| v < l0 && !rewritten.contains(&v);
    let mut ok = true;
    for _ in 0..p {
        let g = &mut state.graph;
        let v = state.writer;
        if is_old(v, &rewritten) {
            reads.push(v);
            writer_old.push(v);
        }
        for u in g.neighbors(v) {
            if is_old(u, &rewritten) {
                reads.push(u);
            }
        }
        let Ok(ty) = g.surroundings_type(v) else {
            ok = false;
            break;
        };
        let action = rule.action(ty);
        let mut at = v;
        for &c in action.word.colors() {
            if is_old(at, &rewritten) {
                reads.push(at);
            }
            at = g.neighbor(at, c);
        }
        match action.rewrite {
            RewriteOp::Keep => state.writer = at,
            RewriteOp::Expand => {
                journal.push(Undo { p: v, row: g.neighbors(v) });
                let e = g.expand(v);
                if v < l0 {
                    rewritten.insert(v);
                }
                state.writer = if at == v {
                    action.word.last().map_or(e.red, |c| e.by_color(c))
                } else {
                    at
                };
            }
            _ => {
                ok = false;
                break;
            }
        }
    }
    let growth = state.graph.vertex_count() as i64 - l0 as i64;
    let at_end = ok.then(|| at_end(state, &rewritten));
    for u in journal.into_iter().rev() {
        let g = &mut state.graph;
        g.adj.truncate(g.adj.len() - 2);
        g.adj[u.p] = u.row;
        for (i, &x) in u.row.iter().enumerate() {
            g.adj[x][i] = u.p;
        }
    }
    state.writer = start_writer;
    Some(Window { reads, writer_old, growth, at_end: at_end? })
}

/// Distances from `root` out to `radius`, stopping early once every vertex
/// of `targets` has been reached and `extra` further levels are done.
/// Returns the distance map and the largest target distance, or `None` if
/// some target lies beyond `radius`.
fn bfs_until(
    g: &Trinet,
    root: Vertex,
    targets: &HashSet<Vertex>,
    radius: usize,
    extra: usize,
) -> Option<(HashMap<Vertex, usize>, usize)> {
    let mut dist = HashMap::new();
    dist.insert(root, 0);
    let mut frontier = vec![root];
    let mut found = usize::from(targets.contains(&root));
    let mut max_target = 0;
    let mut level = 0;
    let mut stop_at = if found == targets.len() { Some(extra) } else { None };
    while !frontier.is_empty() && stop_at.map_or(level < radius + extra, |s| level < s) {
        let mut next = Vec::new();
        for v in frontier {
            for u in g.neighbors(v) {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(u) {
                    e.insert(level + 1);
                    next.push(u);
                    if targets.contains(&u) {
                        found += 1;
                        max_target = level + 1;
                    }
                }
            }
        }
        frontier = next;
        level += 1;
        if stop_at.is_none() && found == targets.len() {
            stop_at = Some(level + extra);
        }
    }
    (found == targets.len() && max_target < radius).then_some((dist, max_target))
}

/// Tries to certify period-`p` repetitive growth starting at the current
/// time of `state`, with radius below `max_radius`. `state` is left as it
/// was.
pub fn certify(state: &mut SystemState, rule: &Rule, p: u64, max_radius: usize) -> Option<Certificate> {
    if p == 0 {
        return None;
    }
    let w = run_window(state, rule, p, |_, _| ())?;
    if w.growth <= 0 {
        return None;
    }
    let x = state.writer;
    let l0 = state.graph.vertex_count();
    let targets: HashSet<Vertex> = w.reads.iter().copied().collect();
    const SLACK: usize = 2;
    let (dist, max_read) = bfs_until(&state.graph, x, &targets, max_radius, SLACK + 1)?;
    let wander = w.writer_old.iter().map(|v| dist[v]).max().unwrap_or(0);
    let r0 = max_read + 1;
    let radii: Vec<usize> = (r0..=r0 + SLACK).collect();
    let old_forms: Vec<Vec<u32>> = radii.iter().map(|&r| ball_form(&state.graph, x, r)).collect();
    let found = run_window(state, rule, p, |end, rewritten| {
        radii.iter().zip(&old_forms).find_map(|(&r, old_form)| {
            let near = bounded_bfs(&end.graph, end.writer, r);
            let consistent = near.iter().all(|(&u, &d)| {
                if u >= l0 || rewritten.contains(&u) {
                    return true;
                }
                match dist.get(&u) {
                    Some(&d0) => {
                        if d < r {
                            d0 < r
                        } else {
                            d0 <= r
                        }
                    }
                    None => false,
                }
            });
            (consistent && ball_form(&end.graph, end.writer, r) == *old_form).then_some(r)
        })
    })?
    .at_end?;
    Some(Certificate { time: state.time, period: p, radius: found, growth: w.growth, wander, replay_ok: false })
}

/// Independent re-check of a certificate found at `state`: simulate one
/// period, then one more, and confirm the radius-`R` ball at `t + 2p`
/// matches the one at `t + p` with the same per-period growth.
pub fn replay_check(state: &SystemState, rule: &Rule, cert: &Certificate) -> bool {
    let mut s = state.clone();
    s.run(rule, cert.period);
    let n1 = s.vertex_count();
    let b1 = ball_form(&s.graph, s.writer, cert.radius);
    s.run(rule, cert.period);
    let n2 = s.vertex_count();
    n2 as i64 - n1 as i64 == cert.growth && ball_form(&s.graph, s.writer, cert.radius) == b1
}
