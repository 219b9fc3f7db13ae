//! Observables of evolving networks: growth series and their deviation
//! from a linear fit, distances, ball growth, Gromov hyperbolicity and
//! writer trails.

use std::collections::VecDeque;
use std::io::Write;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::color::Color;
use crate::graph::{Trinet, Vertex};
use crate::rule::Rule;
use crate::sim::{StepReport, SystemState};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("graph has {vertices} vertices, more than the limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("diameter {0} is too small for a dimension estimate (need at least 4)")]
    TooSmall(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("series needs at least two points")]
    ShortSeries,
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A named sequence of `(t, value)` points with strictly increasing `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Series {
    pub name: String,
    pub points: Vec<(u64, f64)>,
}

impl Series {
    pub fn new(name: impl Into<String>) -> Self {
        Series { name: name.into(), points: Vec::new() }
    }

    /// Appends a point; panics if `t` does not increase.
    pub fn push(&mut self, t: u64, value: f64) {
        if let Some(&(last, _)) = self.points.last() {
            assert!(t > last, "series times must increase");
        }
        self.points.push((t, value));
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.1)
    }

    /// Writes `t,value` rows with a header.
    pub fn write_csv(&self, out: impl Write) -> Result<(), AnalysisError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "value"])?;
        for (t, v) in &self.points {
            w.write_record([t.to_string(), v.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Runs `steps` updates, calling `observe` on the state before the first
/// update and after each one.
fn observe_run(rule: &Rule, init: &SystemState, steps: u64, mut observe: impl FnMut(&SystemState)) {
    let mut s = init.clone();
    observe(&s);
    for _ in 0..steps {
        s.step(rule);
        observe(&s);
    }
}

/// Number of vertices at every time `0..=steps`.
pub fn vertex_count_series(rule: &Rule, init: &SystemState, steps: u64) -> Series {
    let mut out = Series::new("vertices");
    observe_run(rule, init, steps, |s| out.push(s.time, s.vertex_count() as f64));
    out
}

/// The writer's vertex id at every time `0..=steps`. Ids are dense and
/// expansions append two new ids, so the series shows where in the
/// network's history the writer is working.
pub fn writer_index_series(rule: &Rule, init: &SystemState, steps: u64) -> Series {
    let mut out = Series::new("writer");
    observe_run(rule, init, steps, |s| out.push(s.time, s.writer as f64));
    out
}

/// First time from which the series advances by the same amount every
/// `period` steps: the smallest `t0` with `v(t+2p) − 2v(t+p) + v(t) = 0` for
/// every observed `t ≥ t0`. Points are taken as consecutive time steps.
/// `None` when the series is shorter than `2p + 1` or still unsettled at
/// its end.
pub fn index_settling_time(s: &Series, period: u64) -> Option<u64> {
    let p = period as usize;
    let v: Vec<f64> = s.values().collect();
    if p == 0 || v.len() < 2 * p + 1 {
        return None;
    }
    let last = v.len() - 2 * p - 1;
    let unsettled = |i: usize| v[i + 2 * p] - 2.0 * v[i + p] + v[i] != 0.0;
    if unsettled(last) {
        return None;
    }
    let i0 = (0..last).rev().find(|&i| unsettled(i)).map_or(0, |i| i + 1);
    Some(s.points[i0].0)
}

/// Residuals of the least-squares line through the series.
pub fn linear_fit_deviation(s: &Series) -> Result<Series, AnalysisError> {
    let (slope, intercept) = least_squares(&s.points.iter().map(|&(t, v)| (t as f64, v)).collect::<Vec<_>>())?;
    let mut out = Series::new(format!("{} deviation", s.name));
    for &(t, v) in &s.points {
        out.push(t, v - (slope * t as f64 + intercept));
    }
    Ok(out)
}

fn least_squares(points: &[(f64, f64)]) -> Result<(f64, f64), AnalysisError> {
    if points.len() < 2 {
        return Err(AnalysisError::ShortSeries);
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(AnalysisError::ShortSeries);
    }
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

/// Undirected adjacency lists; the form the distance functions work on.
pub type AdjacencyList = Vec<Vec<Vertex>>;

/// Neighbors in red, blue, green order.
pub fn adjacency(g: &Trinet) -> AdjacencyList {
    (0..g.vertex_count()).map(|v| Color::ALL.iter().map(|&c| g.neighbor(v, c)).collect()).collect()
}

/// Breadth-first distances from `root`; `usize::MAX` marks unreachable
/// vertices.
pub fn bfs_distances(g: &AdjacencyList, root: Vertex) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.len()];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &u in &g[v] {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

fn all_distances(g: &AdjacencyList) -> Result<Vec<Vec<usize>>, AnalysisError> {
    let d: Vec<Vec<usize>> = (0..g.len()).map(|v| bfs_distances(g, v)).collect();
    if d.iter().any(|row| row.contains(&usize::MAX)) {
        return Err(AnalysisError::Disconnected);
    }
    Ok(d)
}

pub fn diameter(g: &AdjacencyList) -> Result<usize, AnalysisError> {
    let mut best = 0;
    for v in 0..g.len() {
        let d = bfs_distances(g, v);
        if d.contains(&usize::MAX) {
            return Err(AnalysisError::Disconnected);
        }
        best = best.max(d.into_iter().max().unwrap_or(0));
    }
    Ok(best)
}

/// Number of vertices at distance exactly `k` from `root`, for
/// `k = 0..=eccentricity`.
pub fn shell_sizes(g: &AdjacencyList, root: Vertex) -> Vec<usize> {
    let mut shells = Vec::new();
    for d in bfs_distances(g, root).into_iter().filter(|&d| d != usize::MAX) {
        if shells.len() <= d {
            shells.resize(d + 1, 0);
        }
        shells[d] += 1;
    }
    shells
}

/// Growth exponent of balls around `root`: the slope of the least-squares
/// fit of `ln |B(root, k)|` against `ln k` over `2 ≤ k ≤ ⌊diameter / 2⌋`.
/// About 1 for rings and ladders, 2 for planar grids.
pub fn shell_dimension(g: &AdjacencyList, root: Vertex) -> Result<f64, AnalysisError> {
    let dia = diameter(g)?;
    if dia < 4 {
        return Err(AnalysisError::TooSmall(dia));
    }
    let shells = shell_sizes(g, root);
    let mut ball = 0usize;
    let mut points = Vec::new();
    for (k, &n) in shells.iter().enumerate() {
        ball += n;
        if (2..=dia / 2).contains(&k) {
            points.push(((k as f64).ln(), (ball as f64).ln()));
        }
    }
    Ok(least_squares(&points)?.0)
}

/// How `[i, j]` in the four-point condition is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GeodesicSets {
    /// Every vertex on some shortest `i`–`j` path.
    AllGeodesics,
    /// The vertices of one shortest path, found by breadth-first search
    /// from `j` with neighbors taken in stored order and followed back
    /// from `i`.
    SinglePath,
}

pub const DEFAULT_DELTA_LIMIT: usize = 2000;

/// `max over a, b, c of min{d(x,y) + d(y,z) + d(z,x) : x ∈ [b,c], y ∈ [a,c],
/// z ∈ [a,b]}`.
pub fn gromov_delta(g: &AdjacencyList, sets: GeodesicSets, limit: usize) -> Result<usize, AnalysisError> {
    let n = g.len();
    if n > limit {
        return Err(AnalysisError::TooLarge { vertices: n, limit });
    }
    let d = all_distances(g)?;
    let interval = |i: Vertex, j: Vertex| -> Vec<Vertex> {
        match sets {
            GeodesicSets::AllGeodesics => (0..n).filter(|&x| d[i][x] + d[x][j] == d[i][j]).collect(),
            GeodesicSets::SinglePath => single_path(g, &d, i, j),
        }
    };
    let mut intervals = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            intervals[i * n + j] = interval(i, j);
        }
    }
    let mut delta = 0;
    for a in 0..n {
        for b in a + 1..n {
            let zs = &intervals[a * n + b];
            for c in b + 1..n {
                let xs = &intervals[b * n + c];
                let ys = &intervals[a * n + c];
                let mut best = usize::MAX;
                'x: for &x in xs {
                    for &y in ys {
                        let dxy = d[x][y];
                        if dxy >= best {
                            continue;
                        }
                        for &z in zs {
                            let p = dxy + d[y][z] + d[z][x];
                            if p < best {
                                best = p;
                                if best <= delta {
                                    break 'x;
                                }
                            }
                        }
                    }
                }
                delta = delta.max(best);
            }
        }
    }
    Ok(delta)
}

fn single_path(g: &AdjacencyList, d: &[Vec<usize>], i: Vertex, j: Vertex) -> Vec<Vertex> {
    let mut path = vec![i];
    let mut v = i;
    while v != j {
        v = *g[v].iter().find(|&&u| d[u][j] + 1 == d[v][j]).expect("connected");
        path.push(v);
    }
    path
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperbolicityReport {
    pub delta: usize,
    pub diameter: usize,
    pub ratio: (u64, u64),
    pub is_scaled_hyperbolic: bool,
    pub sets: GeodesicSets,
}

/// `δ(G) / dia(G)`, hyperbolic when below `3/2`.
pub fn scaled_hyperbolic(g: &AdjacencyList, sets: GeodesicSets, limit: usize) -> Result<HyperbolicityReport, AnalysisError> {
    let delta = gromov_delta(g, sets, limit)?;
    let dia = diameter(g)?;
    let ratio = if dia == 0 { Ratio::from_integer(0) } else { Ratio::new(delta as u64, dia as u64) };
    Ok(HyperbolicityReport {
        delta,
        diameter: dia,
        ratio: (*ratio.numer(), *ratio.denom()),
        is_scaled_hyperbolic: ratio < Ratio::new(3, 2),
        sets,
    })
}

/// One writer move, in the ids of the state after the move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrailArrow {
    pub time: u64,
    pub from: Vertex,
    pub to: Vertex,
}

/// The last `k` moves of a trajectory.
pub fn writer_trail(trajectory: &[StepReport], k: usize) -> Vec<TrailArrow> {
    let start = trajectory.len().saturating_sub(k);
    trajectory[start..].iter().map(|r| TrailArrow { time: r.time, from: r.from, to: r.to }).collect()
}

/// Runs `steps` updates and returns the reports.
pub fn trajectory(rule: &Rule, init: &SystemState, steps: u64) -> (SystemState, Vec<StepReport>) {
    let mut s = init.clone();
    let reports = (0..steps).map(|_| s.step(rule)).collect();
    (s, reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graph::{make_cube, make_k33};

    #[test]
    fn settling_time_of_a_sawtooth() {
        let mut s = Series::new("w");
        for t in 0..100u64 {
            let v = if t < 37 { (t * t) as f64 } else { (3 * t + t % 5) as f64 };
            s.push(t, v);
        }
        assert_eq!(index_settling_time(&s, 5), Some(37));
        assert_eq!(index_settling_time(&s, 60), None);
        let mut noisy = s.clone();
        noisy.push(100, -1.0);
        assert_eq!(index_settling_time(&noisy, 5), None);
    }

    fn path_graph(n: usize) -> AdjacencyList {
        (0..n)
            .map(|i| {
                let mut v = Vec::new();
                if i > 0 {
                    v.push(i - 1);
                }
                if i + 1 < n {
                    v.push(i + 1);
                }
                v
            })
            .collect()
    }

    fn grid(w: usize) -> AdjacencyList {
        let id = |x: usize, y: usize| y * w + x;
        let mut g = vec![Vec::new(); w * w];
        for y in 0..w {
            for x in 0..w {
                if x + 1 < w {
                    g[id(x, y)].push(id(x + 1, y));
                    g[id(x + 1, y)].push(id(x, y));
                }
                if y + 1 < w {
                    g[id(x, y)].push(id(x, y + 1));
                    g[id(x, y + 1)].push(id(x, y));
                }
            }
        }
        g
    }

    #[test]
    fn growth_series() {
        let rule = catalog::by_name("ladder").unwrap().rule();
        let s = vertex_count_series(&rule, &SystemState::cube(), 300);
        assert!(s.points.iter().all(|&(t, v)| v == (8 + 2 * t) as f64));
        let dev = linear_fit_deviation(&s).unwrap();
        assert!(dev.values().all(|r| r.abs() < 1e-9));
        let fixed = catalog::by_name("halting-example").unwrap().rule();
        let s = vertex_count_series(&fixed, &SystemState::cube(), 50);
        assert!(s.points[5..].iter().all(|p| p.1 == s.points[5].1));
        let w = writer_index_series(&fixed, &SystemState::cube(), 5);
        assert_eq!(w.len(), 6);
        assert!(linear_fit_deviation(&Series::new("x")).is_err());
    }

    #[test]
    fn csv_export() {
        let mut s = Series::new("x");
        s.push(0, 1.0);
        s.push(2, 3.5);
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "t,value\n0,1\n2,3.5\n");
    }

    #[test]
    fn distances() {
        let cube = adjacency(&make_cube());
        assert_eq!(shell_sizes(&cube, 0), [1, 3, 3, 1]);
        assert_eq!(diameter(&cube).unwrap(), 3);
        let k33 = adjacency(&make_k33());
        assert_eq!(shell_sizes(&k33, 0), [1, 3, 2]);
        assert_eq!(diameter(&k33).unwrap(), 2);
    }

    #[test]
    fn dimension_estimates() {
        let g = grid(41);
        let d = shell_dimension(&g, 20 * 41 + 20).unwrap();
        assert!((d - 2.0).abs() < 0.3, "{d}");
        let rule = catalog::by_name("ladder").unwrap().rule();
        let mut s = SystemState::cube();
        s.run(&rule, 2000);
        let d = shell_dimension(&adjacency(&s.graph), s.writer).unwrap();
        assert!((d - 1.0).abs() < 0.3, "{d}");
        assert!(matches!(shell_dimension(&adjacency(&make_cube()), 0), Err(AnalysisError::TooSmall(3))));
    }

    #[test]
    fn trees_have_zero_delta() {
        let star: AdjacencyList = vec![vec![1, 2, 3], vec![0], vec![0], vec![0]];
        for g in [path_graph(9), star] {
            for sets in [GeodesicSets::AllGeodesics, GeodesicSets::SinglePath] {
                assert_eq!(gromov_delta(&g, sets, 100).unwrap(), 0);
                let r = scaled_hyperbolic(&g, sets, 100).unwrap();
                assert_eq!(r.ratio.0, 0);
                assert!(r.is_scaled_hyperbolic);
            }
        }
        assert!(matches!(
            gromov_delta(&path_graph(5), GeodesicSets::AllGeodesics, 4),
            Err(AnalysisError::TooLarge { vertices: 5, limit: 4 })
        ));
    }

    #[test]
    fn trail_of_simple_rule_alternates_colors() {
        let rule = catalog::by_name("simple-cyclic").unwrap().rule();
        let (end, reports) = trajectory(&rule, &SystemState::cube(), 40);
        let trail = writer_trail(&reports, 10);
        assert_eq!(trail.len(), 10);
        assert_eq!(trail.last().unwrap().to, end.writer);
        let fixed = catalog::by_name("halting-example").unwrap().rule();
        let (_, reports) = trajectory(&fixed, &SystemState::cube(), 20);
        assert!(writer_trail(&reports, 5).iter().all(|a| a.from == a.to));
    }
}
