//! # Seeded instances and instance files
//!
//! Generates instances in each egoism mode, writes one to a JSON instance
//! file and reads it back, then counts how often a softmax game has no pure
//! equilibrium.
//!
//! ```bash
//! cargo run -p election-game --example random_ensemble
//! ```

use election_game::io::{parse_instance, render_instance, Metadata};
use election_game::{
    enumerate_psne, generate, EgoismMode, EnsembleSpec, GeneratorConfig, SearchLimits, Softmax,
};

fn main() {
    for mode in [
        EgoismMode::None,
        EgoismMode::Egoistic,
        EgoismMode::StronglyEgoistic,
    ] {
        let g = generate(&GeneratorConfig::uniform(3, 2, 100.0, mode, 42)).unwrap();
        println!(
            "{mode:?}: egoistic {}, strongly egoistic {}",
            g.is_egoistic(),
            g.is_strongly_egoistic()
        );
    }

    let cfg = GeneratorConfig::uniform(3, 2, 100.0, EgoismMode::Egoistic, 42);
    let g = generate(&cfg).unwrap();
    let meta = Metadata {
        source: Some("generate".into()),
        seed: Some(cfg.seed),
        note: None,
    };
    let text = render_instance(&g, &meta);
    println!("\n{text}");
    let (back, _) = parse_instance(&text, false).unwrap();
    println!("round trip identical: {}", back == g);

    let spec = EnsembleSpec {
        count: 1000,
        min_parties: 3,
        max_parties: 3,
        max_candidates: 2,
        beta: 100.0,
        mode: EgoismMode::Egoistic,
        seed: 3,
    };
    let mut empty = Vec::new();
    for inst in spec.instances() {
        let (seed, g) = inst.unwrap();
        if enumerate_psne(&g, &Softmax, 0.0, SearchLimits::default())
            .unwrap()
            .is_empty()
        {
            empty.push(seed);
        }
    }
    println!(
        "{} of {} egoistic 3-party softmax games have no pure equilibrium (first seeds: {:?})",
        empty.len(),
        spec.count,
        &empty[..empty.len().min(3)]
    );
}
