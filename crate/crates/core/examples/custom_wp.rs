//! # Plugging in a winning-probability rule
//!
//! Any type implementing `WinProb` works with every analysis. This one
//! gives each party a share proportional to its candidate's social utility.
//! The monotonicity probe accepts it and rejects a rule that rewards lower
//! social utility.
//!
//! ```bash
//! cargo run -p election-game --example custom_wp
//! ```

use election_game::{
    check_monotone, enumerate_psne, fixtures, price_of_anarchy, Profile, SearchLimits, WinProb,
};

struct Proportional;

impl WinProb for Proportional {
    fn name(&self) -> &str {
        "proportional"
    }

    fn probabilities(&self, social: &[f64], _beta: f64, _profile: &Profile) -> Vec<f64> {
        let total: f64 = social.iter().sum();
        if total == 0.0 {
            return vec![1.0 / social.len() as f64; social.len()];
        }
        social.iter().map(|u| u / total).collect()
    }
}

struct Contrarian;

impl WinProb for Contrarian {
    fn name(&self) -> &str {
        "contrarian"
    }

    fn probabilities(&self, social: &[f64], beta: f64, _profile: &Profile) -> Vec<f64> {
        let w: Vec<f64> = social.iter().map(|u| beta - u + 1.0).collect();
        let total: f64 = w.iter().sum();
        w.iter().map(|x| x / total).collect()
    }
}

fn main() {
    let rules: [&dyn WinProb; 2] = [&Proportional, &Contrarian];
    for g in [fixtures::table1(), fixtures::table2()] {
        for wp in rules {
            match check_monotone(&g, wp, 1000) {
                Some(v) => println!("{}: not monotone, {v}", wp.name()),
                None => {
                    let eq = enumerate_psne(&g, wp, 0.0, SearchLimits::default()).unwrap();
                    let r = price_of_anarchy(&g, wp, 0.0, SearchLimits::default()).unwrap();
                    let shown: Vec<String> = eq.iter().map(|s| s.to_string()).collect();
                    println!(
                        "{}: monotone; equilibria [{}], PoA {:?}",
                        wp.name(),
                        shown.join(" "),
                        r.poa
                    );
                }
            }
        }
    }
}
