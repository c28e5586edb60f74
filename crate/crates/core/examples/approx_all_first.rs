//! # How far is "everyone fields their favourite" from equilibrium?
//!
//! Under softmax in egoistic games, no party can multiply its payoff by more
//! than `1 + e` by deviating from the all-first profile. This measures the
//! actual worst factor over a seeded ensemble.
//!
//! ```bash
//! cargo run -p election-game --example approx_all_first
//! ```

use election_game::{approx_ratio_all_first, fixtures, EgoismMode, EnsembleSpec, Softmax};

fn main() {
    let r = approx_ratio_all_first(&fixtures::table2(), &Softmax).unwrap();
    println!("fixture table2: alpha = {:.6}", r.alpha);
    if let Some(w) = &r.witness {
        println!("  worst deviation: {w}");
    }

    let spec = EnsembleSpec {
        count: 500,
        min_parties: 2,
        max_parties: 5,
        max_candidates: 4,
        beta: 100.0,
        mode: EgoismMode::Egoistic,
        seed: 7,
    };
    let mut worst = (1.0, 0);
    let mut exact = 0;
    for inst in spec.instances() {
        let (seed, g) = inst.unwrap();
        let r = approx_ratio_all_first(&g, &Softmax).unwrap();
        if r.alpha == 1.0 {
            exact += 1;
        }
        if r.alpha > worst.0 {
            worst = (r.alpha, seed);
        }
    }
    println!(
        "ensemble of {}: worst alpha {:.6} (seed {}), bound 1 + e = {:.6}, all-first exact in {} instances",
        spec.count,
        worst.0,
        worst.1,
        1.0 + std::f64::consts::E,
        exact
    );
}
