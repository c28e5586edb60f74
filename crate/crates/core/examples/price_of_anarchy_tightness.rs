//! # The price of anarchy approaches the number of parties
//!
//! The parametric fixture family has a hardmax equilibrium in which every
//! party fields its favourite and welfare is `beta/m + 3 eps`, while the
//! first party's consensus candidate would give `beta`.
//!
//! ```bash
//! cargo run -p election-game --example price_of_anarchy_tightness
//! ```

use election_game::efficiency::table3_family;
use election_game::{is_psne, price_of_anarchy, Hardmax, SearchLimits};

fn main() {
    println!(" m   epsilon     PoA         m - PoA     all-first is equilibrium");
    for m in 2..=6 {
        for eps in [1e-2, 1e-4, 1e-6] {
            let g = table3_family(m, 100.0, eps).unwrap();
            let r = price_of_anarchy(&g, &Hardmax, 0.0, SearchLimits::default()).unwrap();
            let poa = r.poa.unwrap();
            println!(
                "{m:2}   {eps:<9.0e}   {poa:<10.6}  {:<10.2e}  {}",
                m as f64 - poa,
                is_psne(&g, &Hardmax, &g.all_first(), 0.0)
            );
        }
    }
}
