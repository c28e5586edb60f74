//! Writes a generated instance to disk, reads it back and shows that the
//! round trip is exact and that malformed documents are located.
//!
//! Run with `cargo run --example instance_files`.

use election_game::io::{load, parse_instance, render_instance, store, Metadata};
use election_game::{generate, EgoismMode, GeneratorConfig};

fn main() -> election_game::Result<()> {
    let cfg = GeneratorConfig::uniform(3, 2, 100.0, EgoismMode::Egoistic, 42);
    let g = generate(&cfg)?;
    let meta = Metadata {
        source: Some("instance_files example".into()),
        seed: Some(cfg.seed),
        note: None,
    };

    let path = std::env::temp_dir().join("election-game-example.json");
    store(&path, &g, &meta)?;
    let (back, back_meta) = load(&path, false)?;
    println!("stored and reloaded {}", path.display());
    println!("  identical instance: {}", back == g);
    println!("  identical metadata: {}", back_meta == meta);
    println!(
        "  identical bytes:    {}",
        std::fs::read_to_string(&path)? == render_instance(&back, &back_meta)
    );
    std::fs::remove_file(&path)?;

    let broken = "{\n  \"version\": 1,\n  \"beta\": 100.0,\n  \"parties\": [\n    {\"candidates\": [{\"utilities\": [5.0, 1.0]}]},\n    {\"candidates\": [{\"utilities\": [1.0, -2.0]}]}\n  ]\n}\n";
    match parse_instance(broken, false) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    let typo = "{\n  \"version\": 1,\n  \"beta\": 100.0,\n  \"partys\": []\n}\n";
    match parse_instance(typo, false) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
