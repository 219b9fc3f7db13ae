//! Local rewrite operations on trinets.

use thiserror::Error;

use crate::color::Color;
use crate::graph::{Trinet, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("vertex {0} does not lie on a triangle")]
    NotATriangle(Vertex),
    #[error("vertex {0} lies on more than one triangle")]
    AmbiguousTriangle(Vertex),
    #[error("triangle at vertex {0} does not have three distinct outside neighbors")]
    DegenerateExternal(Vertex),
    #[error("exchanged edges have different colors ({0} vs {1})")]
    ColorMismatch(Color, Color),
    #[error("exchange would create a self-loop")]
    WouldSelfLoop,
    #[error("both selectors pick the same edge")]
    SameEdge,
}

/// Ids of the triangle created by [`Trinet::expand`], keyed by the color of
/// each vertex's outside edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Expansion {
    pub red: Vertex,
    pub blue: Vertex,
    pub green: Vertex,
}

impl Expansion {
    pub fn by_color(&self, c: Color) -> Vertex {
        match c {
            Color::Red => self.red,
            Color::Blue => self.blue,
            Color::Green => self.green,
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v == self.red || v == self.blue || v == self.green
    }
}

/// Outcome of [`Trinet::shrink`]: the surviving vertex and the two ids that
/// were deleted (in ascending order). Ids above a deleted slot shift down.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shrink {
    pub merged: Vertex,
    pub triangle: [Vertex; 3],
    pub removed: [Vertex; 2],
}

impl Shrink {
    /// New id of a vertex that existed before the shrink.
    pub fn map(&self, v: Vertex) -> Vertex {
        if self.triangle.contains(&v) {
            return self.merged;
        }
        v - self.removed.iter().filter(|&&r| r < v).count()
    }
}

/// Edge selector for the exchange operation: the `color` edge at `vertex`,
/// oriented away from `vertex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeEnd {
    pub vertex: Vertex,
    pub color: Color,
}

impl Trinet {
    /// Replaces `p` by a triangle.
    ///
    /// The vertex keeping the red outside edge inherits `p`'s id; in an
    /// `L`-vertex graph the green- and blue-outside vertices get ids `L` and
    /// `L + 1`. Internal edges: green–red is blue, blue–red is green,
    /// blue–green is red.
    pub fn expand(&mut self, p: Vertex) -> Expansion {
        let l = self.adj.len();
        let [ar, ab, ag] = self.adj[p];
        let (tr, tg, tb) = (p, l, l + 1);
        self.adj.push([0; 3]);
        self.adj.push([0; 3]);
        self.adj[tr] = [ar, tg, tb];
        self.adj[tg] = [tb, tr, ag];
        self.adj[tb] = [tg, ab, tr];
        self.adj[ar][Color::Red.index()] = tr;
        self.adj[ab][Color::Blue.index()] = tb;
        self.adj[ag][Color::Green.index()] = tg;
        Expansion { red: tr, blue: tb, green: tg }
    }

    /// The unique triangle through `p`, as `(p's outside color, [p, u, w])`
    /// where `u = p[a]`, `w = p[b]` for the two other colors `a < b`.
    pub fn triangle_at(&self, p: Vertex) -> Result<(Color, [Vertex; 3]), RewriteError> {
        let mut found = None;
        for link in Color::ALL {
            let (a, b) = other_two(link);
            let u = self.neighbor(p, a);
            let w = self.neighbor(p, b);
            if u != w && self.neighbor(u, link) == w {
                if found.is_some() {
                    return Err(RewriteError::AmbiguousTriangle(p));
                }
                found = Some((link, [p, u, w]));
            }
        }
        found.ok_or(RewriteError::NotATriangle(p))
    }

    /// Contracts the triangle through `p` to a single vertex carrying the
    /// three outside edges with their colors. The merged vertex takes the
    /// smallest of the three ids; the other two slots are removed and later
    /// ids shift down densely.
    pub fn shrink(&mut self, p: Vertex) -> Result<Shrink, RewriteError> {
        let (link, tri) = self.triangle_at(p)?;
        let (a, b) = other_two(link);
        let [_, u, w] = tri;
        // outside colors: p -> link, u -> b, w -> a
        let outs = [
            (link, self.neighbor(p, link)),
            (b, self.neighbor(u, b)),
            (a, self.neighbor(w, a)),
        ];
        let ext: Vec<Vertex> = outs.iter().map(|o| o.1).collect();
        if ext.iter().any(|x| tri.contains(x))
            || ext[0] == ext[1]
            || ext[0] == ext[2]
            || ext[1] == ext[2]
        {
            return Err(RewriteError::DegenerateExternal(p));
        }
        let mut sorted = tri;
        sorted.sort_unstable();
        let merged = sorted[0];
        let removed = [sorted[1], sorted[2]];
        for (c, x) in outs {
            self.adj[merged][c.index()] = x;
            self.adj[x][c.index()] = merged;
        }
        let shrink = Shrink { merged, triangle: tri, removed };
        let mut adj = Vec::with_capacity(self.adj.len() - 2);
        for (v, row) in self.adj.iter().enumerate() {
            if v == removed[0] || v == removed[1] {
                continue;
            }
            adj.push(row.map(|x| shrink.map(x)));
        }
        self.adj = adj;
        Ok(shrink)
    }

    /// Swaps the far endpoints of two same-colored edges: `{a, a[c]}` and
    /// `{x, x[c]}` become `{a, x[c]}` and `{x, a[c]}`. Applying it twice with
    /// the same selectors restores the graph.
    pub fn exchange(&mut self, e1: EdgeEnd, e2: EdgeEnd) -> Result<(), RewriteError> {
        if e1.color != e2.color {
            return Err(RewriteError::ColorMismatch(e1.color, e2.color));
        }
        let c = e1.color;
        let (a, x) = (e1.vertex, e2.vertex);
        let b = self.neighbor(a, c);
        let y = self.neighbor(x, c);
        if x == a || x == b {
            return Err(RewriteError::SameEdge);
        }
        if a == y || x == b {
            return Err(RewriteError::WouldSelfLoop);
        }
        let ci = c.index();
        self.adj[a][ci] = y;
        self.adj[y][ci] = a;
        self.adj[x][ci] = b;
        self.adj[b][ci] = x;
        Ok(())
    }
}

fn other_two(c: Color) -> (Color, Color) {
    match c {
        Color::Red => (Color::Blue, Color::Green),
        Color::Blue => (Color::Red, Color::Green),
        Color::Green => (Color::Red, Color::Blue),
    }
}

/// Functional form of [`Trinet::expand`].
pub fn triangle_expand(g: &Trinet, p: Vertex) -> (Trinet, Expansion) {
    let mut out = g.clone();
    let e = out.expand(p);
    (out, e)
}

/// Functional form of [`Trinet::shrink`].
pub fn triangle_shrink(g: &Trinet, p: Vertex) -> Result<(Trinet, Shrink), RewriteError> {
    let mut out = g.clone();
    let s = out.shrink(p)?;
    Ok((out, s))
}

/// Functional form of [`Trinet::exchange`].
pub fn edge_exchange(g: &Trinet, e1: EdgeEnd, e2: EdgeEnd) -> Result<Trinet, RewriteError> {
    let mut out = g.clone();
    out.exchange(e1, e2)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_cube, SurroundingsType};
    use crate::iso::rooted_iso;

    #[test]
    fn expand_cube_vertex() {
        let cube = make_cube();
        for p in 0..8 {
            let (g, e) = triangle_expand(&cube, p);
            g.validate().unwrap();
            assert_eq!(g.vertex_count(), 10);
            assert_eq!((e.red, e.green, e.blue), (p, 8, 9));
            // each triangle vertex sees the color of the triangle edge
            // opposite its outside edge
            assert_eq!(g.surroundings_type(e.red), Ok(SurroundingsType::Red));
            assert_eq!(g.surroundings_type(e.green), Ok(SurroundingsType::Green));
            assert_eq!(g.surroundings_type(e.blue), Ok(SurroundingsType::Blue));
        }
    }

    #[test]
    fn outside_neighbor_of_fresh_triangle() {
        // the red outside neighbor of the new triangle sees its two other
        // neighbors unlinked, and the triangle contributes no link
        let (g, e) = triangle_expand(&make_cube(), 0);
        let out = g.neighbor(e.red, Color::Red);
        assert_eq!(g.surroundings_type(out), Ok(SurroundingsType::Zero));
    }

    #[test]
    fn shrink_undoes_expand() {
        let cube = make_cube();
        for p in 0..8 {
            let (g, e) = triangle_expand(&cube, p);
            for t in [e.red, e.green, e.blue] {
                let (h, s) = triangle_shrink(&g, t).unwrap();
                h.validate().unwrap();
                assert_eq!(h.vertex_count(), 8);
                assert_eq!(s.merged, p.min(8));
                assert!(rooted_iso(&h, s.merged, &cube, p));
            }
        }
    }

    #[test]
    fn shrink_needs_triangle() {
        let cube = make_cube();
        assert_eq!(triangle_shrink(&cube, 3).unwrap_err(), RewriteError::NotATriangle(3));
    }

    #[test]
    fn exchange_is_an_involution() {
        let cube = make_cube();
        // two parallel red edges of the red/blue face through 0
        let e1 = EdgeEnd { vertex: 0, color: Color::Red };
        let e2 = EdgeEnd { vertex: 2, color: Color::Red };
        let once = edge_exchange(&cube, e1, e2).unwrap();
        once.validate().unwrap();
        assert_ne!(once, cube);
        assert_eq!(edge_exchange(&once, e1, e2).unwrap(), cube);
        assert_eq!(
            edge_exchange(&cube, e1, EdgeEnd { vertex: 1, color: Color::Red }),
            Err(RewriteError::SameEdge)
        );
        assert_eq!(
            edge_exchange(&cube, e1, EdgeEnd { vertex: 2, color: Color::Blue }),
            Err(RewriteError::ColorMismatch(Color::Red, Color::Blue))
        );
    }
}
