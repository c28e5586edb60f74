//! # A softmax game without pure equilibrium
//!
//! Prints the payoff table of the three-party softmax fixture, shows the
//! improving deviation out of every profile and a deviation cycle, and
//! writes the deviation graph in DOT format to stdout when `--dot` is given.
//!
//! ```bash
//! cargo run -p election-game --example table2_softmax_no_psne
//! cargo run -p election-game --example table2_softmax_no_psne -- --dot | dot -Tsvg > cycle.svg
//! ```

use election_game::{
    deviation_graph, enumerate_psne, evaluate, fixtures, improving_deviation, SearchLimits, Softmax,
};

fn main() {
    let g = fixtures::table2();
    let graph = deviation_graph(&g, &Softmax, 0.0, false, SearchLimits::default()).unwrap();
    if std::env::args().any(|a| a == "--dot") {
        print!("{}", graph.to_dot());
        return;
    }

    for s in g.profiles() {
        let e = evaluate(&g, &Softmax, &s);
        let r: Vec<String> = e.payoffs.iter().map(|x| format!("{x:6.2}")).collect();
        let dev = improving_deviation(&g, &Softmax, &s, 0.0).unwrap();
        println!("{s}  r = [{}]  ->  {dev}", r.join(", "));
    }

    let eq = enumerate_psne(&g, &Softmax, 0.0, SearchLimits::default()).unwrap();
    println!("\nequilibria: {}", eq.len());
    let cycle = graph.find_cycle().unwrap();
    let shown: Vec<String> = cycle
        .iter()
        .map(|&k| graph.profiles[k].to_string())
        .collect();
    println!("cycle: {} -> {}", shown.join(" -> "), shown[0]);
}
