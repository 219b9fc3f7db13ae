//! Edge-3-colored cubic graphs ("trinets") stored as one neighbor per color.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::color::{Color, MoveWord};

/// Dense vertex id.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} is out of range")]
    NoSuchVertex(Vertex),
    #[error("vertex {vertex} has no {color} edge")]
    MissingEdge { vertex: Vertex, color: Color },
    #[error("vertex {vertex} has two {color} edges")]
    DuplicateEdge { vertex: Vertex, color: Color },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("{color} edges are not an involution at vertex {vertex}")]
    NotInvolution { vertex: Vertex, color: Color },
}

/// Local shape seen from a vertex: which color (if any) links a pair of its
/// neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SurroundingsType {
    /// No two neighbors are adjacent.
    Zero,
    Red,
    Blue,
    Green,
}

impl SurroundingsType {
    pub const ALL: [SurroundingsType; 4] = [
        SurroundingsType::Zero,
        SurroundingsType::Red,
        SurroundingsType::Blue,
        SurroundingsType::Green,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_color(c: Color) -> Self {
        match c {
            Color::Red => SurroundingsType::Red,
            Color::Blue => SurroundingsType::Blue,
            Color::Green => SurroundingsType::Green,
        }
    }

    pub fn color(self) -> Option<Color> {
        match self {
            SurroundingsType::Zero => None,
            SurroundingsType::Red => Some(Color::Red),
            SurroundingsType::Blue => Some(Color::Blue),
            SurroundingsType::Green => Some(Color::Green),
        }
    }

    pub fn letter(self) -> char {
        self.color().map_or('0', Color::letter)
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            '0' => Some(SurroundingsType::Zero),
            other => Color::from_letter(other).map(SurroundingsType::from_color),
        }
    }

    pub fn swap_red_blue(self) -> Self {
        match self.color() {
            None => self,
            Some(c) => SurroundingsType::from_color(c.swap_red_blue()),
        }
    }
}

impl fmt::Display for SurroundingsType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Two or more pairs of a vertex's neighbors are interlinked, so the
/// surroundings type is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("vertex {vertex} has {links} interlinked neighbor pairs")]
pub struct MultiLinked {
    pub vertex: Vertex,
    pub links: u8,
}

/// An edge-3-colored cubic graph.
///
/// `adj[v][c]` is the neighbor of `v` along its edge of color `c`. Because
/// every vertex stores exactly one neighbor per color, 3-regularity and the
/// absence of same-colored parallel edges hold by construction; the
/// per-color involution and loop-freeness are checked by
/// [`Trinet::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Trinet {
    pub(crate) adj: Vec<[Vertex; 3]>,
}

impl Trinet {
    /// Builds a graph from a raw adjacency table, validating it.
    pub fn from_adjacency(adj: Vec<[Vertex; 3]>) -> Result<Self, GraphError> {
        let g = Trinet { adj };
        g.validate()?;
        Ok(g)
    }

    /// Builds a graph from a colored edge list on `n` vertices.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex, Color)>,
    ) -> Result<Self, GraphError> {
        let mut adj: Vec<[Option<Vertex>; 3]> = vec![[None; 3]; n];
        for (u, v, c) in edges {
            if u >= n {
                return Err(GraphError::NoSuchVertex(u));
            }
            if v >= n {
                return Err(GraphError::NoSuchVertex(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for (a, b) in [(u, v), (v, u)] {
                let slot = &mut adj[a][c.index()];
                if slot.is_some() {
                    return Err(GraphError::DuplicateEdge { vertex: a, color: c });
                }
                *slot = Some(b);
            }
        }
        let adj = adj
            .into_iter()
            .enumerate()
            .map(|(v, slots)| {
                let mut out = [0; 3];
                for c in Color::ALL {
                    out[c.index()] =
                        slots[c.index()].ok_or(GraphError::MissingEdge { vertex: v, color: c })?;
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Trinet::from_adjacency(adj)
    }

    /// Checks the per-color involution and loop-freeness.
    pub fn validate(&self) -> Result<(), GraphError> {
        let n = self.adj.len();
        for (v, row) in self.adj.iter().enumerate() {
            for c in Color::ALL {
                let u = row[c.index()];
                if u >= n {
                    return Err(GraphError::NoSuchVertex(u));
                }
                if u == v {
                    return Err(GraphError::SelfLoop(v));
                }
                if self.adj[u][c.index()] != v {
                    return Err(GraphError::NotInvolution { vertex: v, color: c });
                }
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.len() * 3 / 2
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.adj.len()
    }

    #[inline]
    pub fn neighbor(&self, v: Vertex, c: Color) -> Vertex {
        self.adj[v][c.index()]
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> [Vertex; 3] {
        self.adj[v]
    }

    /// Every edge once, as `(u, v, color)` with `u < v`, ordered by `u` then color.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, Color)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, row)| {
            Color::ALL
                .into_iter()
                .filter_map(move |c| (u < row[c.index()]).then(|| (u, row[c.index()], c)))
        })
    }

    /// The vertex reached from `v` by following the colors of `word` in order.
    pub fn walk(&self, v: Vertex, word: &MoveWord) -> Vertex {
        word.colors().iter().fold(v, |at, &c| self.neighbor(at, c))
    }

    /// The surroundings type of `v`.
    ///
    /// A pair of `v`'s neighbors can only be linked by the color not used to
    /// reach either of them, so there are exactly three candidate links.
    pub fn surroundings_type(&self, v: Vertex) -> Result<SurroundingsType, MultiLinked> {
        let [r, b, g] = self.adj[v];
        let mut links = 0u8;
        let mut found = SurroundingsType::Zero;
        if self.neighbor(b, Color::Red) == g {
            links += 1;
            found = SurroundingsType::Red;
        }
        if self.neighbor(r, Color::Blue) == g {
            links += 1;
            found = SurroundingsType::Blue;
        }
        if self.neighbor(r, Color::Green) == b {
            links += 1;
            found = SurroundingsType::Green;
        }
        if links > 1 {
            Err(MultiLinked { vertex: v, links })
        } else {
            Ok(found)
        }
    }

    /// Connectivity check by BFS from vertex 0.
    pub fn is_connected(&self) -> bool {
        if self.adj.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for u in self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.adj.len()
    }

    /// Relabels vertices by `perm` (old id -> new id). `perm` must be a permutation.
    pub fn relabeled(&self, perm: &[Vertex]) -> Trinet {
        let mut adj = vec![[0; 3]; self.adj.len()];
        for (v, row) in self.adj.iter().enumerate() {
            adj[perm[v]] = row.map(|u| perm[u]);
        }
        Trinet { adj }
    }

    /// Applies a color permutation to every edge.
    pub fn recolored(&self, map: impl Fn(Color) -> Color) -> Trinet {
        let adj = self
            .adj
            .iter()
            .map(|row| {
                let mut out = [0; 3];
                for c in Color::ALL {
                    out[map(c).index()] = row[c.index()];
                }
                out
            })
            .collect();
        Trinet { adj }
    }
}

/// The cube with axis coloring: vertex `i` has coordinates given by its bits
/// (bit 0 = x, bit 1 = y, bit 2 = z); x-edges are red, y-edges blue, z-edges green.
pub fn make_cube() -> Trinet {
    let adj = (0..8).map(|v| [v ^ 1, v ^ 2, v ^ 4]).collect();
    Trinet { adj }
}

/// K3,3 with parts `a_i = i` and `b_j = 3 + j`; edge `(a_i, b_j)` gets color `(i + j) mod 3`.
pub fn make_k33() -> Trinet {
    let mut adj = vec![[0; 3]; 6];
    for i in 0..3 {
        for j in 0..3 {
            let c = (i + j) % 3;
            adj[i][c] = 3 + j;
            adj[3 + j][c] = i;
        }
    }
    Trinet { adj }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_structure() {
        let g = make_cube();
        g.validate().unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edges().count(), 12);
        for c in Color::ALL {
            assert_eq!(g.edges().filter(|e| e.2 == c).count(), 4);
        }
        for v in 0..8 {
            assert_eq!(g.surroundings_type(v), Ok(SurroundingsType::Zero));
        }
    }

    #[test]
    fn k33_structure() {
        let g = make_k33();
        g.validate().unwrap();
        assert_eq!(g.edges().count(), 9);
        for c in Color::ALL {
            assert_eq!(g.edges().filter(|e| e.2 == c).count(), 3);
        }
        for v in 0..6 {
            assert_eq!(g.surroundings_type(v), Ok(SurroundingsType::Zero));
            // bipartite
            for u in g.neighbors(v) {
                assert_ne!(u < 3, v < 3);
            }
        }
    }

    #[test]
    fn walk_laws() {
        let g = make_cube();
        let rb: MoveWord = "rb".parse().unwrap();
        for v in 0..8 {
            assert_eq!(g.walk(v, &MoveWord::empty()), v);
            for c in Color::ALL {
                assert_eq!(g.walk(v, &MoveWord::new(vec![c, c])), v);
            }
            // alternating red/blue cycle on the axis cube has 4 vertices
            let mut at = v;
            let mut len = 0;
            loop {
                at = g.walk(at, &rb);
                len += 2;
                if at == v {
                    break;
                }
            }
            assert_eq!(len, 4);
        }
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(
            Trinet::from_edges(2, [(0, 0, Color::Red)]),
            Err(GraphError::SelfLoop(0))
        );
        assert!(matches!(
            Trinet::from_edges(2, [(0, 1, Color::Red)]),
            Err(GraphError::MissingEdge { .. })
        ));
        let cube = make_cube();
        assert_eq!(Trinet::from_edges(8, cube.edges()).unwrap(), cube);
    }
}
