//! Walk the cube of resolutions of the figure-eight knot.

use exkh::corpus::bundled_entry;
use exkh::resolution::{circle_count_all_states, resolve, State};

fn main() {
    let d = bundled_entry("figure_eight").unwrap().diagram().unwrap();
    let zero = resolve(&d, &State::zero(d.n()));
    println!("D(0) has {} circles", zero.circle_count());
    for (k, [p, q]) in zero.chord_endpoints.as_ref().unwrap().iter().enumerate() {
        let kind = if p.circle == q.circle { "self-chord" } else { "bridge" };
        println!("  chord {k}: circle {} -> circle {} ({kind})", p.circle, q.circle);
    }

    let counts = circle_count_all_states(&d, 20).unwrap();
    let mut by_weight = vec![Vec::new(); d.n() + 1];
    for (v, c) in counts.iter() {
        by_weight[v.weight()].push(format!("{v}:{c}"));
    }
    for (w, states) in by_weight.iter().enumerate() {
        println!("|v| = {w}  {}", states.join(" "));
    }
}
