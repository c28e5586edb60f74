//! # Four equilibria at half the optimum
//!
//! The three-party hardmax fixture: every pure equilibrium has welfare 50
//! while the optimum reaches 100, so the price of anarchy is exactly 2.
//!
//! ```bash
//! cargo run -p election-game --example table1_hardmax
//! ```

use election_game::equilibria::check_dominance;
use election_game::{
    enumerate_psne, evaluate, fixtures, fpt_psne, price_of_anarchy, FptOptions, Hardmax,
    SearchLimits,
};

fn main() {
    let g = fixtures::table1();
    let limits = SearchLimits::default();

    println!("profile     social utilities      payoffs             SW");
    for s in g.profiles() {
        let e = evaluate(&g, &Hardmax, &s);
        println!(
            "{:<11} {:<21} {:<19} {}",
            s.to_string(),
            format!("{:?}", g.social_vector(&s)),
            format!("{:?}", e.payoffs),
            e.social_welfare
        );
    }

    let eq = enumerate_psne(&g, &Hardmax, 0.0, limits).unwrap();
    let shown: Vec<String> = eq.iter().map(|s| s.to_string()).collect();
    println!("\nequilibria: {}", shown.join(" "));

    let report = price_of_anarchy(&g, &Hardmax, 0.0, limits).unwrap();
    println!(
        "optimum {} at {}, PoA {:.6}, PoS {:.6}",
        report.optimal_sw,
        report.optimal_profile,
        report.poa.unwrap(),
        report.pos.unwrap()
    );

    println!("dominance: {:?}", check_dominance(&g, &Hardmax).unwrap());

    let out = fpt_psne(&g, &Hardmax, FptOptions::default()).unwrap();
    println!(
        "parameterized search: {} (depths {:?}, k = {}, {} profiles evaluated)",
        out.profile.unwrap(),
        out.reduced.depths,
        out.reduced.k,
        out.stats.profiles_evaluated
    );
}
