//! Runs a few named rules from every differently colored cube (and every
//! choice of starting vertex, up to symmetry) and prints how each run ends.
//!
//! cargo run --release --example colorings [rule-name ...]

use trinet::analysis::{index_settling_time, writer_index_series};
use trinet::catalog;
use trinet::classify::{classify, Budget, ClassLabel};
use trinet::iso::{rooted_iso, rooted_recolorings};
use trinet::{make_cube, SystemState};

fn main() {
    let mut names: Vec<String> = std::env::args().skip(1).collect();
    if names.is_empty() {
        names = ["fixed-point-56", "fixed-point-slow", "long-transient-454", "long-transient-1355"]
            .map(String::from)
            .to_vec();
    }
    let cubes = rooted_recolorings(&make_cube(), 12).expect("the cube has 12 edges");
    for (k, (g, root)) in cubes.into_iter().enumerate() {
        let axis = rooted_iso(&g, root, &make_cube(), 0);
        println!("cube coloring {k}{}", if axis { " (the built-in cube)" } else { "" });
        let start = SystemState::new(g, root).expect("root is a vertex");
        for name in &names {
            let Some(entry) = catalog::by_name(name) else {
                eprintln!("unknown rule {name}");
                continue;
            };
            let rule = entry.rule();
            let c = classify(&rule, &start, &Budget::default());
            let settle = match c.label {
                ClassLabel::Repetitive { period, transient, .. } => {
                    let w = writer_index_series(&rule, &start, 2 * transient + 20 * period);
                    index_settling_time(&w, period).map(|t| format!(", writer index settles at {t}"))
                }
                _ => None,
            };
            println!("  {name:<20} {}{}", c.label, settle.unwrap_or_default());
        }
    }
}
