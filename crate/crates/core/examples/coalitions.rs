//! # Coalitions in a strongly egoistic game
//!
//! Merges parties 1 and 2, prints the coalition game's candidates (member
//! tuples), checks that the coalition game is still egoistic, and measures
//! whether a member would gain by leaving under each fixed choice of
//! candidates.
//!
//! ```bash
//! cargo run -p election-game --example coalitions
//! ```

use election_game::coalition::DEFAULT_COALITION_CAP;
use election_game::{
    coalition_incentive_delta, generate, secce_transform, CoalitionStructure, EgoismMode,
    GeneratorConfig, Softmax,
};

fn main() {
    let g = generate(&GeneratorConfig::uniform(
        3,
        2,
        100.0,
        EgoismMode::StronglyEgoistic,
        11,
    ))
    .unwrap();
    let cs = CoalitionStructure::parse("1,2|3", 3).unwrap();
    let cg = secce_transform(&g, &cs, DEFAULT_COALITION_CAP).unwrap();

    println!(
        "coalitions {cs}, beta {:.2} (raised: {})",
        cg.instance.beta(),
        cg.beta_scaled
    );
    for (c, party) in cg.instance.parties().iter().enumerate() {
        println!("{}:", cg.instance.party_name(c));
        for (k, cand) in party.candidates.iter().enumerate() {
            let members: Vec<usize> = cg.tuples[c][k].iter().map(|s| s + 1).collect();
            let u: Vec<String> = cand.utilities.iter().map(|x| format!("{x:.2}")).collect();
            println!(
                "    members' candidates {members:?}  utilities [{}]",
                u.join(", ")
            );
        }
    }
    println!("coalition game egoistic: {}", cg.instance.is_egoistic());

    let mut worst = f64::NEG_INFINITY;
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                let choices = vec![vec![a, b], vec![c]];
                for member in [0, 1] {
                    let d = coalition_incentive_delta(&g, &cs, &Softmax, member, &choices).unwrap();
                    worst = worst.max(d.delta);
                    println!(
                        "choices {:?}, party {} leaves: {:.4} -> {:.4} (delta {:+.4})",
                        choices,
                        member + 1,
                        d.inside,
                        d.alone,
                        d.delta
                    );
                }
            }
        }
    }
    println!("largest gain from leaving: {worst:+.6}");
}
