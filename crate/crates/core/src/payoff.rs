//! Expected payoffs and social welfare.

use crate::model::{GameInstance, Profile};
use crate::wp::{win_probs, WinProb};

/// Winning probabilities, payoffs and social welfare of one profile.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub probs: Vec<f64>,
    pub payoffs: Vec<f64>,
    pub social_welfare: f64,
}

/// `r_i(s) = sum_j p_{j,s} u_i(x_{j,s_j})` for every party `i`, given the
/// winning probabilities.
pub fn payoffs_from_probs(g: &GameInstance, profile: &Profile, probs: &[f64]) -> Vec<f64> {
    let m = g.num_parties();
    (0..m)
        .map(|i| {
            profile
                .choices()
                .iter()
                .enumerate()
                .map(|(j, &s)| probs[j] * g.u(i, j, s))
                .sum()
        })
        .collect()
}

pub fn evaluate(g: &GameInstance, wp: &dyn WinProb, profile: &Profile) -> Evaluation {
    let probs = win_probs(g, wp, profile);
    let payoffs = payoffs_from_probs(g, profile, &probs);
    let social_welfare = payoffs.iter().sum();
    Evaluation {
        probs,
        payoffs,
        social_welfare,
    }
}

/// Expected utility of party `party`'s supporters under `profile`.
pub fn payoff(g: &GameInstance, wp: &dyn WinProb, profile: &Profile, party: usize) -> f64 {
    let probs = win_probs(g, wp, profile);
    profile
        .choices()
        .iter()
        .enumerate()
        .map(|(j, &s)| probs[j] * g.u(party, j, s))
        .sum()
}

/// `SW(s)`, expected social utility of the winner.
pub fn social_welfare(g: &GameInstance, wp: &dyn WinProb, profile: &Profile) -> f64 {
    evaluate(g, wp, profile).social_welfare
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::wp::{Hardmax, Softmax};

    struct Uniform;

    impl WinProb for Uniform {
        fn name(&self) -> &str {
            "uniform"
        }

        fn probabilities(&self, social: &[f64], _beta: f64, _profile: &Profile) -> Vec<f64> {
            vec![1.0 / social.len() as f64; social.len()]
        }
    }

    #[test]
    fn table2_party1_payoff() {
        let g = fixtures::table2();
        let r = payoff(&g, &Softmax, &g.all_first(), 0);
        assert!((r - 18.81).abs() <= 0.01, "{r}");
    }

    #[test]
    fn table1_hardmax_payoffs() {
        let g = fixtures::table1();
        let s = Profile::from_one_based(&[2, 2, 2]).unwrap();
        let e = evaluate(&g, &Hardmax, &s);
        assert_eq!(e.payoffs, vec![49.0, 29.0, 22.0]);
        assert_eq!(e.social_welfare, 100.0);
        assert_eq!(evaluate(&g, &Hardmax, &g.all_first()).social_welfare, 50.0);
    }

    #[test]
    fn hardmax_payoff_is_winner_utility() {
        let g = fixtures::table2();
        for s in g.profiles() {
            let e = evaluate(&g, &Hardmax, &s);
            let w = e.probs.iter().position(|&p| p == 1.0).unwrap();
            for i in 0..3 {
                assert_eq!(e.payoffs[i], g.utility(i, w, s.get(w)).unwrap());
            }
        }
    }

    #[test]
    fn uniform_rule_gives_mean_social_utility() {
        let g = fixtures::table2();
        for s in g.profiles() {
            let mean = g.social_vector(&s).iter().sum::<f64>() / 3.0;
            assert!((social_welfare(&g, &Uniform, &s) - mean).abs() < 1e-9);
        }
    }

    #[test]
    fn evaluation_invariants_hold_on_table2() {
        let g = fixtures::table2();
        for s in g.profiles() {
            let e = evaluate(&g, &Softmax, &s);
            let via_probs: f64 = e
                .probs
                .iter()
                .zip(g.social_vector(&s))
                .map(|(p, u)| p * u)
                .sum();
            assert!((e.social_welfare - via_probs).abs() < 1e-9);
            assert!((e.social_welfare - e.payoffs.iter().sum::<f64>()).abs() < 1e-9);
        }
    }
}
