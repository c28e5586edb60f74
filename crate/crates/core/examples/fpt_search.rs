//! # Parameterized equilibrium search
//!
//! Draws egoistic instances, prints each party's depth and retained
//! candidates, and compares the reduced search with brute-force enumeration
//! on work done and answer.
//!
//! ```bash
//! cargo run -p election-game --example fpt_search
//! ```

use election_game::{
    enumerate_psne, fpt_psne, generate, EgoismMode, FptOptions, GeneratorConfig, Hardmax,
    SearchLimits, Softmax, WinProb,
};

fn main() {
    let rules: [&dyn WinProb; 2] = [&Hardmax, &Softmax];
    for seed in 0..4u64 {
        let cfg = GeneratorConfig::uniform(4, 4, 100.0, EgoismMode::Egoistic, seed);
        let g = generate(&cfg).unwrap();
        for wp in rules {
            let out = fpt_psne(&g, wp, FptOptions::default()).unwrap();
            let brute = enumerate_psne(&g, wp, 0.0, SearchLimits::default()).unwrap();
            let kept: Vec<String> = out
                .reduced
                .reduced_sets
                .iter()
                .map(|set| format!("{:?}", set.iter().map(|c| c + 1).collect::<Vec<_>>()))
                .collect();
            println!(
                "seed {seed} {:<7} depths {:?} k={} kept {}",
                wp.name(),
                out.reduced.depths,
                out.reduced.k,
                kept.join(" ")
            );
            println!(
                "    reduced search: {} after {} profiles / {} deviation checks; brute force: {} equilibria over {} profiles",
                out.profile.map_or("none".to_string(), |p| p.to_string()),
                out.stats.profiles_evaluated,
                out.stats.deviation_checks,
                brute.len(),
                g.profile_count()
            );
        }
    }
}
