//! Optimal welfare, price of anarchy and price of stability.

use crate::equilibria::enumerate_psne;
use crate::error::Result;
use crate::model::{GameInstance, Profile, SearchLimits};
use crate::payoff::social_welfare;
use crate::wp::WinProb;

/// Absolute slack on the `PoA <= m` bound.
pub const POA_BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct EfficiencyReport {
    pub optimal_profile: Profile,
    pub optimal_sw: f64,
    /// Lowest-welfare equilibrium and its welfare.
    pub worst_psne: Option<(Profile, f64)>,
    /// Highest-welfare equilibrium and its welfare.
    pub best_psne: Option<(Profile, f64)>,
    /// Optimal over worst equilibrium welfare; `None` without equilibria.
    pub poa: Option<f64>,
    /// Optimal over best equilibrium welfare; `None` without equilibria.
    pub pos: Option<f64>,
    pub num_psne: usize,
}

/// Welfare-maximising profile; the lexicographically first on ties.
pub fn optimal_profile(
    g: &GameInstance,
    wp: &dyn WinProb,
    limits: SearchLimits,
) -> Result<(Profile, f64)> {
    g.check_profile_space(limits)?;
    let mut best: Option<(Profile, f64)> = None;
    for s in g.profiles() {
        let sw = social_welfare(g, wp, &s);
        if best.as_ref().map_or(true, |(_, b)| sw > *b) {
            best = Some((s, sw));
        }
    }
    Ok(best.expect("profile space is never empty"))
}

fn ratio(optimal: f64, sw: f64) -> f64 {
    if sw > 0.0 {
        optimal / sw
    } else if optimal > 0.0 {
        f64::INFINITY
    } else {
        1.0
    }
}

/// Efficiency of the `tau`-equilibria relative to the optimum.
pub fn price_of_anarchy(
    g: &GameInstance,
    wp: &dyn WinProb,
    tau: f64,
    limits: SearchLimits,
) -> Result<EfficiencyReport> {
    let (optimal_profile, optimal_sw) = optimal_profile(g, wp, limits)?;
    let equilibria = enumerate_psne(g, wp, tau, limits)?;
    let mut worst: Option<(Profile, f64)> = None;
    let mut best: Option<(Profile, f64)> = None;
    for s in &equilibria {
        let sw = social_welfare(g, wp, s);
        if worst.as_ref().map_or(true, |(_, w)| sw < *w) {
            worst = Some((s.clone(), sw));
        }
        if best.as_ref().map_or(true, |(_, b)| sw > *b) {
            best = Some((s.clone(), sw));
        }
    }
    Ok(EfficiencyReport {
        poa: worst.as_ref().map(|(_, w)| ratio(optimal_sw, *w)),
        pos: best.as_ref().map(|(_, b)| ratio(optimal_sw, *b)),
        optimal_profile,
        optimal_sw,
        worst_psne: worst,
        best_psne: best,
        num_psne: equilibria.len(),
    })
}

/// The `m`-party family whose hardmax price of anarchy tends to `m` as
/// `epsilon` shrinks.
pub fn table3_family(m: usize, beta: f64, epsilon: f64) -> Result<GameInstance> {
    crate::fixtures::table3(m, beta, epsilon)
}

/// Checks that every `tau`-equilibrium fields candidates whose social
/// utilities sum to at least the largest social utility in the optimal
/// profile. Returns the first violating equilibrium.
pub fn check_proposition1(
    g: &GameInstance,
    wp: &dyn WinProb,
    tau: f64,
    limits: SearchLimits,
) -> Result<Option<Profile>> {
    g.require_egoistic()?;
    let (opt, _) = optimal_profile(g, wp, limits)?;
    let target = g
        .social_vector(&opt)
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    let total = |s: &Profile| g.social_vector(s).iter().sum::<f64>();
    Ok(enumerate_psne(g, wp, tau, limits)?
        .into_iter()
        .find(|s| total(s) < target - POA_BOUND_SLACK))
}

/// True when the price of anarchy is at most the number of parties, or no
/// equilibrium exists.
pub fn check_poa_bound(
    g: &GameInstance,
    wp: &dyn WinProb,
    tau: f64,
    limits: SearchLimits,
) -> Result<bool> {
    g.require_egoistic()?;
    let report = price_of_anarchy(g, wp, tau, limits)?;
    Ok(report
        .poa
        .map_or(true, |poa| poa <= g.num_parties() as f64 + POA_BOUND_SLACK))
}
