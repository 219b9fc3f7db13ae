//! Color-preserving isomorphism tests and canonical encodings.
//!
//! In a properly edge-3-colored cubic graph a color-preserving map is forced
//! once the image of one vertex is fixed, so rooted isomorphism is a single
//! lockstep traversal.

use std::collections::VecDeque;

use crate::color::Color;
use crate::graph::{Trinet, Vertex};

const UNSET: usize = usize::MAX;

/// True iff a color-preserving isomorphism maps `g1` onto `g2` sending `w1` to `w2`.
///
/// Both graphs are assumed connected.
pub fn rooted_iso(g1: &Trinet, w1: Vertex, g2: &Trinet, w2: Vertex) -> bool {
    if g1.vertex_count() != g2.vertex_count() || !g1.contains(w1) || !g2.contains(w2) {
        return false;
    }
    let n = g1.vertex_count();
    let mut fwd = vec![UNSET; n];
    let mut bwd = vec![UNSET; n];
    fwd[w1] = w2;
    bwd[w2] = w1;
    let mut queue = VecDeque::from([w1]);
    let mut mapped = 1;
    while let Some(v1) = queue.pop_front() {
        let v2 = fwd[v1];
        for c in Color::ALL {
            let u1 = g1.neighbor(v1, c);
            let u2 = g2.neighbor(v2, c);
            match (fwd[u1], bwd[u2]) {
                (UNSET, UNSET) => {
                    fwd[u1] = u2;
                    bwd[u2] = u1;
                    mapped += 1;
                    queue.push_back(u1);
                }
                (x, y) if x == u2 && y == u1 => {}
                _ => return false,
            }
        }
    }
    mapped == n
}

/// True iff some color-preserving isomorphism maps `g1` onto `g2`.
pub fn unrooted_iso(g1: &Trinet, g2: &Trinet) -> bool {
    if g1.vertex_count() != g2.vertex_count() {
        return false;
    }
    if g1.vertex_count() == 0 {
        return true;
    }
    let t1 = g1.surroundings_type(0).ok();
    (0..g2.vertex_count())
        .filter(|&w2| g2.surroundings_type(w2).ok() == t1)
        .any(|w2| rooted_iso(g1, 0, g2, w2))
}

/// Every proper edge-3-coloring of the graph underlying `g`, combined with
/// every choice of root, one representative per rooted color-preserving
/// isomorphism class. The search is exhaustive, so graphs with more than
/// `max_edges` edges are refused.
pub fn rooted_recolorings(g: &Trinet, max_edges: usize) -> Option<Vec<(Trinet, Vertex)>> {
    let edges: Vec<(Vertex, Vertex)> = g.edges().map(|(u, v, _)| (u, v)).collect();
    if edges.len() > max_edges {
        return None;
    }
    let n = g.vertex_count();
    let mut used = vec![[false; 3]; n];
    let mut colors = vec![0usize; edges.len()];
    let mut seen = std::collections::BTreeMap::new();
    fn go(
        i: usize,
        edges: &[(Vertex, Vertex)],
        used: &mut [[bool; 3]],
        colors: &mut [usize],
        n: usize,
        seen: &mut std::collections::BTreeMap<Vec<u8>, (Trinet, Vertex)>,
    ) {
        if i == edges.len() {
            let h = Trinet::from_edges(n, edges.iter().zip(colors.iter()).map(|(&(u, v), &c)| (u, v, Color::from_index(c))))
                .expect("complete proper coloring");
            for root in 0..n {
                seen.entry(canonical_form(&h, root)).or_insert_with(|| (h.clone(), root));
            }
            return;
        }
        let (u, v) = edges[i];
        for c in 0..3 {
            if !used[u][c] && !used[v][c] {
                used[u][c] = true;
                used[v][c] = true;
                colors[i] = c;
                go(i + 1, edges, used, colors, n, seen);
                used[u][c] = false;
                used[v][c] = false;
            }
        }
    }
    go(0, &edges, &mut used, &mut colors, n, &mut seen);
    Some(seen.into_values().collect())
}

/// Breadth-first encoding from `root`, visiting neighbors in color order.
///
/// Vertices are labeled in discovery order and the output lists, per label,
/// the labels of the red, blue and green neighbors as little-endian `u32`s,
/// preceded by the vertex count. Two connected graphs have equal encodings
/// iff they are rooted-isomorphic.
pub fn canonical_form(g: &Trinet, root: Vertex) -> Vec<u8> {
    let n = g.vertex_count();
    let mut label = vec![UNSET; n];
    let mut order = Vec::with_capacity(n);
    label[root] = 0;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for u in g.neighbors(v) {
            if label[u] == UNSET {
                label[u] = order.len();
                order.push(u);
            }
        }
    }
    let mut out = Vec::with_capacity(4 + 12 * order.len());
    out.extend_from_slice(&(order.len() as u32).to_le_bytes());
    for &v in &order {
        for u in g.neighbors(v) {
            out.extend_from_slice(&(label[u] as u32).to_le_bytes());
        }
    }
    out
}

/// A rooted ball (induced subgraph on vertices within `radius` of the
/// root) encoded like [`canonical_form`], with `u32::MAX` marking edges that
/// leave the ball.
pub fn ball_form(g: &Trinet, root: Vertex, radius: usize) -> Vec<u32> {
    let mut label: std::collections::HashMap<Vertex, (u32, usize)> = Default::default();
    let mut order = vec![root];
    label.insert(root, (0, 0));
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        let d = label[&v].1;
        if d == radius {
            continue;
        }
        for u in g.neighbors(v) {
            if !label.contains_key(&u) {
                label.insert(u, (order.len() as u32, d + 1));
                order.push(u);
            }
        }
    }
    let mut out = Vec::with_capacity(1 + 3 * order.len());
    out.push(order.len() as u32);
    for &v in &order {
        for u in g.neighbors(v) {
            out.push(label.get(&u).map_or(u32::MAX, |l| l.0));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_cube, make_k33};
    use crate::ops::triangle_expand;

    #[test]
    fn cube_has_four_rooted_colorings_and_k33_one() {
        let cube = rooted_recolorings(&make_cube(), 12).unwrap();
        assert_eq!(cube.len(), 4);
        assert!(cube.iter().any(|(g, r)| rooted_iso(g, *r, &make_cube(), 0)));
        assert_eq!(rooted_recolorings(&make_k33(), 9).unwrap().len(), 1);
        assert!(rooted_recolorings(&make_cube(), 11).is_none());
    }

    #[test]
    fn identity_and_order_mismatch() {
        let cube = make_cube();
        assert!(rooted_iso(&cube, 3, &cube, 3));
        assert!(!rooted_iso(&cube, 0, &make_k33(), 0));
        assert!(!unrooted_iso(&cube, &make_k33()));
    }

    #[test]
    fn axis_cube_is_color_vertex_transitive() {
        let cube = make_cube();
        let base = canonical_form(&cube, 0);
        for v in 0..8 {
            assert!(rooted_iso(&cube, v, &cube, cube.neighbor(v, Color::Red)));
            assert_eq!(canonical_form(&cube, v), base);
        }
    }

    #[test]
    fn expansions_of_cube_are_isomorphic() {
        let cube = make_cube();
        let (g0, _) = triangle_expand(&cube, 0);
        for p in 1..8 {
            let (gp, _) = triangle_expand(&cube, p);
            assert!(unrooted_iso(&g0, &gp));
        }
    }

    #[test]
    fn k33_roots_differ_by_color_pattern() {
        // K3,3 with the Latin-square coloring is also color-vertex-transitive
        let g = make_k33();
        for v in 0..6 {
            assert!(rooted_iso(&g, 0, &g, v));
        }
    }

    #[test]
    fn relabeling_preserves_form() {
        let (g, _) = triangle_expand(&make_cube(), 5);
        let n = g.vertex_count();
        let perm: Vec<usize> = (0..n).map(|v| (v * 7 + 3) % n).collect();
        let h = g.relabeled(&perm);
        assert!(rooted_iso(&g, 5, &h, perm[5]));
        assert_eq!(canonical_form(&g, 5), canonical_form(&h, perm[5]));
        assert_eq!(canonical_form(&g, 5).len(), 4 + 12 * n);
    }
}
