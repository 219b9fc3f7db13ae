use std::collections::BTreeSet;

use proptest::prelude::*;
use trinet::analysis::{adjacency, gromov_delta, linear_fit_deviation, AdjacencyList, GeodesicSets, Series};
use trinet::io::{parse_trinet, write_state};
use trinet::iso::{canonical_form, rooted_iso};
use trinet::worddyn::{golden_count, toggle_check};
use trinet::*;

fn table() -> OptionTable {
    OptionTable::standard()
}

/// Floyd–Warshall distances.
fn oracle_distances(g: &AdjacencyList) -> Vec<Vec<usize>> {
    let n = g.len();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for v in 0..n {
        d[v][v] = 0;
        for &u in &g[v] {
            d[v][u] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Every vertex lying on some explicitly enumerated shortest path from `i`
/// to `j`.
fn oracle_geodesic_vertices(g: &AdjacencyList, d: &[Vec<usize>], i: usize, j: usize) -> BTreeSet<usize> {
    fn extend(g: &AdjacencyList, d: &[Vec<usize>], path: &mut Vec<usize>, j: usize, out: &mut BTreeSet<usize>) {
        let v = *path.last().unwrap();
        if v == j {
            out.extend(path.iter().copied());
            return;
        }
        for &u in &g[v] {
            if d[u][j] + 1 == d[v][j] && !path.contains(&u) {
                path.push(u);
                extend(g, d, path, j, out);
                path.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    extend(g, d, &mut vec![i], j, &mut out);
    out
}

fn oracle_delta(g: &AdjacencyList) -> usize {
    let n = g.len();
    let d = oracle_distances(g);
    let mut delta = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let xs = oracle_geodesic_vertices(g, &d, b, c);
                let ys = oracle_geodesic_vertices(g, &d, a, c);
                let zs = oracle_geodesic_vertices(g, &d, a, b);
                let mut best = usize::MAX;
                for &x in &xs {
                    for &y in &ys {
                        for &z in &zs {
                            best = best.min(d[x][y] + d[y][z] + d[z][x]);
                        }
                    }
                }
                delta = delta.max(best);
            }
        }
    }
    delta
}

/// Small connected trinets: the cube or K3,3, a few expansions and a few
/// attempted edge exchanges.
fn small_trinet() -> impl Strategy<Value = Trinet> {
    (
        any::<bool>(),
        prop::collection::vec(0usize..64, 0..3),
        prop::collection::vec((0usize..64, 0usize..64, 0usize..3), 0..4),
    )
        .prop_map(|(cube, expansions, exchanges)| {
            let mut g = if cube { make_cube() } else { make_k33() };
            for p in expansions {
                if g.vertex_count() + 2 <= 12 {
                    let v = p % g.vertex_count();
                    g.expand(v);
                }
            }
            for (a, x, c) in exchanges {
                let n = g.vertex_count();
                let color = Color::from_index(c);
                let e1 = EdgeEnd { vertex: a % n, color };
                let e2 = EdgeEnd { vertex: x % n, color };
                if let Ok(h) = edge_exchange(&g, e1, e2) {
                    if h.is_connected() {
                        g = h;
                    }
                }
            }
            g
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn delta_matches_brute_force(g in small_trinet()) {
        let adj = adjacency(&g);
        prop_assert_eq!(gromov_delta(&adj, GeodesicSets::AllGeodesics, 100).unwrap(), oracle_delta(&adj));
    }

    #[test]
    fn delta_is_isomorphism_invariant(g in small_trinet(), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let h = g.relabeled(&perm);
        let (a, b) = (adjacency(&g), adjacency(&h));
        prop_assert_eq!(
            gromov_delta(&a, GeodesicSets::AllGeodesics, 100).unwrap(),
            gromov_delta(&b, GeodesicSets::AllGeodesics, 100).unwrap()
        );
    }

    #[test]
    fn single_path_delta_is_at_least_the_geodesic_delta(g in small_trinet()) {
        let adj = adjacency(&g);
        let all = gromov_delta(&adj, GeodesicSets::AllGeodesics, 100).unwrap();
        let one = gromov_delta(&adj, GeodesicSets::SinglePath, 100).unwrap();
        prop_assert!(one >= all);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn canonical_rules_keep_graphs_valid(id in 0u32..3888, steps in 1u64..1500) {
        let rule = table().decode(RuleId(id));
        let mut s = SystemState::cube();
        let mut expansions = 0usize;
        for _ in 0..steps {
            let r = s.step(&rule);
            prop_assert!(!r.multilinked() || r.is_idle());
            if matches!(r.applied, Applied::Expanded(_)) {
                expansions += 1;
            }
            prop_assert!(s.graph.contains(s.writer));
        }
        s.graph.validate().unwrap();
        prop_assert!(s.graph.is_connected());
        prop_assert_eq!(s.vertex_count(), 8 + 2 * expansions);
    }

    #[test]
    fn conjugation_commutes_with_updates(id in 0u32..3888, steps in 1u64..400, k33 in any::<bool>()) {
        let rule = table().decode(RuleId(id));
        let init = if k33 { SystemState::k33() } else { SystemState::cube() };
        let mut a = init.clone();
        a.run(&rule, steps);
        let mut b = init.conjugate();
        b.run(&rule.conjugate(), steps);
        prop_assert!(rooted_iso(&a.conjugate().graph, a.conjugate().writer, &b.graph, b.writer));
    }

    #[test]
    fn updates_are_deterministic(id in 0u32..3888, steps in 1u64..300) {
        let rule = table().decode(RuleId(id));
        let mut a = SystemState::cube();
        let mut b = SystemState::cube();
        a.run(&rule, steps);
        b.run(&rule, steps);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(canonical_form(&a.graph, a.writer), canonical_form(&b.graph, b.writer));
    }

    #[test]
    fn trinet_files_round_trip(id in 0u32..3888, steps in 0u64..300) {
        let rule = table().decode(RuleId(id));
        let mut s = SystemState::cube();
        s.run(&rule, steps);
        let back = parse_trinet(&write_state(&s)).unwrap().into_state().unwrap();
        prop_assert!(rooted_iso(&s.graph, s.writer, &back.graph, back.writer));
    }

    #[test]
    fn rule_text_round_trips(id in 0u32..3888) {
        let rule = table().decode(RuleId(id));
        prop_assert_eq!(parse_rule(&format_rule(&rule)).unwrap(), rule.clone());
        prop_assert_eq!(table().encode(&rule), Some(RuleId(id)));
    }
}

proptest! {
    #[test]
    fn affine_series_has_zero_deviation(a in -50i64..50, b in -1000i64..1000, n in 2u64..200) {
        let mut s = Series::new("affine");
        for t in 0..n {
            s.push(t, (a * t as i64 + b) as f64);
        }
        let dev = linear_fit_deviation(&s).unwrap();
        prop_assert!(dev.values().all(|r| r.abs() < 1e-6));
    }

    #[test]
    fn golden_count_steps_by_zero_or_two(t in 1u64..1_000_000) {
        let d = golden_count(t) - golden_count(t - 1);
        prop_assert!(d == 0 || d == 2);
    }

    #[test]
    fn toggle_identity_on_random_blocks(seqs in prop::collection::vec(prop::collection::vec(any::<bool>(), 1..30), 1..20)) {
        prop_assert!(toggle_check(&seqs).passed);
    }
}
