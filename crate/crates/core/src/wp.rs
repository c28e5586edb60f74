//! Winning-probability (WP) rules.
//!
//! A rule maps the social utilities of the fielded candidates to one winning
//! probability per party. [`Hardmax`] and [`Softmax`] ship here, the
//! reduction rule lives in [`crate::sat::GadgetWp`], and callers can plug in
//! their own by implementing [`WinProb`].

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{GameInstance, Profile};

/// A winning-probability rule.
pub trait WinProb: Send + Sync {
    fn name(&self) -> &str;

    /// Winning probabilities for the candidates fielded in `profile`, whose
    /// social utilities are `social`. Rules that only look at social
    /// utilities may ignore `profile`.
    fn probabilities(&self, social: &[f64], beta: f64, profile: &Profile) -> Vec<f64>;
}

/// All mass to the lowest-index party among those with maximal social utility.
#[derive(Debug, Clone, Copy, Default)]
pub struct Hardmax;

impl WinProb for Hardmax {
    fn name(&self) -> &str {
        "hardmax"
    }

    fn probabilities(&self, social: &[f64], _beta: f64, _profile: &Profile) -> Vec<f64> {
        let mut winner = 0;
        for (k, &u) in social.iter().enumerate().skip(1) {
            if u > social[winner] {
                winner = k;
            }
        }
        let mut p = vec![0.0; social.len()];
        if !p.is_empty() {
            p[winner] = 1.0;
        }
        p
    }
}

/// `p_i = exp(u_i / beta) / sum_j exp(u_j / beta)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Softmax;

impl WinProb for Softmax {
    fn name(&self) -> &str {
        "softmax"
    }

    fn probabilities(&self, social: &[f64], beta: f64, _profile: &Profile) -> Vec<f64> {
        stable_softmax(social.iter().map(|u| u / beta))
    }
}

/// Max-subtracted softmax over arbitrary logits.
pub fn stable_softmax(logits: impl Iterator<Item = f64> + Clone) -> Vec<f64> {
    let max = logits.clone().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.map(|z| (z - max).exp()).collect();
    let total: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / total).collect()
}

/// Looks a shipped rule up by its command-line name. The reduction rule
/// needs a formula and is constructed separately.
pub fn by_name(name: &str) -> Option<Box<dyn WinProb>> {
    match name {
        "hardmax" => Some(Box::new(Hardmax)),
        "softmax" => Some(Box::new(Softmax)),
        _ => None,
    }
}

/// Winning probabilities of every party under `profile`.
pub fn win_probs(g: &GameInstance, wp: &dyn WinProb, profile: &Profile) -> Vec<f64> {
    wp.probabilities(&g.social_vector(profile), g.beta(), profile)
}

/// A unilateral switch that raised a party's social utility but lowered its
/// winning probability.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneViolation {
    pub profile: Profile,
    pub party: usize,
    pub from: usize,
    pub to: usize,
    pub p_from: f64,
    pub p_to: f64,
}

impl fmt::Display for MonotoneViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "party {} switching candidate {} -> {} at {} raises social utility but p drops {} -> {}",
            self.party + 1,
            self.from + 1,
            self.to + 1,
            self.profile,
            self.p_from,
            self.p_to
        )
    }
}

/// Floating slack when comparing probabilities of two candidates.
const MONOTONE_SLACK: f64 = 1e-12;

/// Profile spaces up to this size are checked exhaustively.
const EXHAUSTIVE_PROFILES: u128 = 100_000;

/// Checks that no party lowers its winning probability by switching to a
/// candidate with at least the same social utility.
///
/// Small games are checked over every context; larger ones over `trials`
/// random (context, party) draws from a fixed-seed generator.
pub fn check_monotone(
    g: &GameInstance,
    wp: &dyn WinProb,
    trials: usize,
) -> Option<MonotoneViolation> {
    let m = g.num_parties();
    if g.profile_count() <= EXHAUSTIVE_PROFILES {
        for ctx in g.profiles() {
            for party in 0..m {
                // each context of `party` once
                if ctx.get(party) != 0 {
                    continue;
                }
                if let Some(v) = check_context(g, wp, &ctx, party) {
                    return Some(v);
                }
            }
        }
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let counts = g.candidate_counts();
    for _ in 0..trials {
        let ctx = Profile::new(counts.iter().map(|&n| rng.gen_range(0..n)).collect());
        let party = rng.gen_range(0..m);
        if let Some(v) = check_context(g, wp, &ctx, party) {
            return Some(v);
        }
    }
    None
}

fn check_context(
    g: &GameInstance,
    wp: &dyn WinProb,
    ctx: &Profile,
    party: usize,
) -> Option<MonotoneViolation> {
    let n = g.num_candidates(party);
    let probs: Vec<f64> = (0..n)
        .map(|s| win_probs(g, wp, &ctx.with(party, s))[party])
        .collect();
    for a in 0..n {
        for b in 0..n {
            if a != b && g.su(party, b) >= g.su(party, a) && probs[b] < probs[a] - MONOTONE_SLACK {
                return Some(MonotoneViolation {
                    profile: ctx.with(party, a),
                    party,
                    from: a,
                    to: b,
                    p_from: probs[a],
                    p_to: probs[b],
                });
            }
        }
    }
    None
}
