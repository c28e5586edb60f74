//! Parameterized equilibrium search.
//!
//! Each party's candidate list is cut down to the candidates that are not
//! dominated inside the party. Parties left with a single candidate
//! (resolute parties) are pinned to it, and only the product of the
//! remaining parties' reduced lists is scanned. The cost is exponential in
//! the number of irresolute parties `k` and polynomial otherwise.

use crate::error::{Error, Result};
use crate::model::{GameInstance, Profile, ProfileSpace};
use crate::payoff::{evaluate, payoff};
use crate::wp::{check_monotone, WinProb};

/// Per-party depths and the candidate lists the search keeps.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedGame {
    /// One-based depth of each party: the number of leading candidates
    /// worth considering.
    pub depths: Vec<usize>,
    /// Parties with depth 1.
    pub resolute: Vec<usize>,
    /// Zero-based candidate indices retained per party, ascending.
    pub reduced_sets: Vec<Vec<usize>>,
    /// Largest depth over all parties.
    pub depth: usize,
    /// Largest reduced-set size over all parties.
    pub refined_depth: usize,
    /// Number of irresolute parties.
    pub k: usize,
}

impl ReducedGame {
    pub fn is_resolute(&self, party: usize) -> bool {
        self.depths[party] == 1
    }

    /// Size of the reduced profile space.
    pub fn search_size(&self) -> u128 {
        self.reduced_sets.iter().map(|s| s.len() as u128).product()
    }
}

/// Within `0..end`, the last candidate among the social-utility maximisers
/// that also maximises the party's own utility.
fn deepest_dominant(g: &GameInstance, party: usize, end: usize) -> usize {
    let best_social = (0..end)
        .map(|s| g.su(party, s))
        .fold(f64::NEG_INFINITY, f64::max);
    let top: Vec<usize> = (0..end)
        .filter(|&s| g.su(party, s) == best_social)
        .collect();
    let best_own = top
        .iter()
        .map(|&s| g.u(party, party, s))
        .fold(f64::NEG_INFINITY, f64::max);
    top.into_iter()
        .filter(|&s| g.u(party, party, s) == best_own)
        .max()
        .expect("non-empty prefix")
}

/// Depths and resolute parties, with every party keeping its whole prefix
/// up to its depth.
pub fn compute_depths(g: &GameInstance) -> Result<ReducedGame> {
    g.require_egoistic()?;
    let m = g.num_parties();
    let depths: Vec<usize> = (0..m)
        .map(|i| deepest_dominant(g, i, g.num_candidates(i)) + 1)
        .collect();
    let reduced_sets: Vec<Vec<usize>> = depths.iter().map(|&d| (0..d).collect()).collect();
    Ok(summarize(depths, reduced_sets))
}

fn summarize(depths: Vec<usize>, reduced_sets: Vec<Vec<usize>>) -> ReducedGame {
    let resolute = (0..depths.len()).filter(|&i| depths[i] == 1).collect();
    let depth = depths.iter().copied().max().unwrap_or(1);
    let refined_depth = reduced_sets.iter().map(Vec::len).max().unwrap_or(1);
    let k = depths.iter().filter(|&&d| d > 1).count();
    ReducedGame {
        depths,
        resolute,
        reduced_sets,
        depth,
        refined_depth,
        k,
    }
}

/// Replaces each prefix by the chain of successively dominant candidates:
/// start from the depth candidate, then repeat the depth rule on the
/// candidates before it until the first candidate is reached.
pub fn refine_strategy_sets(g: &GameInstance, reduced: &ReducedGame) -> ReducedGame {
    let sets = reduced
        .depths
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let mut chain = vec![d - 1];
            let mut z = d - 1;
            while z > 0 {
                z = deepest_dominant(g, i, z);
                chain.push(z);
            }
            chain.reverse();
            chain
        })
        .collect();
    summarize(reduced.depths.clone(), sets)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FptOptions {
    /// Use the refined candidate chains instead of whole prefixes.
    pub refine: bool,
    /// Run the monotonicity probe with this many trials before searching.
    pub verify_monotone: Option<usize>,
}

impl Default for FptOptions {
    fn default() -> Self {
        Self {
            refine: true,
            verify_monotone: None,
        }
    }
}

/// Work counters of one search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FptStats {
    /// Reduced profiles whose payoffs were evaluated.
    pub profiles_evaluated: u64,
    /// Alternative candidates tried in deviation checks.
    pub deviation_checks: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FptOutcome {
    /// The lexicographically first equilibrium of the reduced space, if any.
    pub profile: Option<Profile>,
    pub reduced: ReducedGame,
    pub stats: FptStats,
}

/// Searches the reduced profile space for an exact equilibrium.
///
/// Resolute parties stay on their first candidate; every other party ranges
/// over its reduced set, and deviations are only tried within reduced sets.
pub fn fpt_psne(g: &GameInstance, wp: &dyn WinProb, options: FptOptions) -> Result<FptOutcome> {
    let base = compute_depths(g)?;
    if let Some(trials) = options.verify_monotone {
        if let Some(v) = check_monotone(g, wp, trials) {
            return Err(Error::NonMonotoneWp(v));
        }
    }
    let reduced = if options.refine {
        refine_strategy_sets(g, &base)
    } else {
        base
    };
    let mut stats = FptStats::default();
    if reduced.k == 0 {
        return Ok(FptOutcome {
            profile: Some(g.all_first()),
            reduced,
            stats,
        });
    }
    let mut found = None;
    for s in ProfileSpace::from_sets(reduced.reduced_sets.clone()) {
        stats.profiles_evaluated += 1;
        if is_reduced_equilibrium(g, wp, &reduced, &s, &mut stats) {
            found = Some(s);
            break;
        }
    }
    Ok(FptOutcome {
        profile: found,
        reduced,
        stats,
    })
}

fn is_reduced_equilibrium(
    g: &GameInstance,
    wp: &dyn WinProb,
    reduced: &ReducedGame,
    s: &Profile,
    stats: &mut FptStats,
) -> bool {
    let current = evaluate(g, wp, s);
    for (i, set) in reduced.reduced_sets.iter().enumerate() {
        for &c in set.iter().filter(|&&c| c != s.get(i)) {
            stats.deviation_checks += 1;
            if payoff(g, wp, &s.with(i, c), i) > current.payoffs[i] {
                return false;
            }
        }
    }
    true
}
