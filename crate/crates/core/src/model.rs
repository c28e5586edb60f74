//! Game instances, profiles and the structural predicates on them.
//!
//! Parties and candidates are addressed with zero-based indices throughout
//! the library. Human-facing output (profile `Display`, file formats, the
//! command line) is one-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wp::{win_probs, WinProb};

/// Relative slack allowed when checking `u(x) <= beta`, so that utilities
/// such as `beta / m` summed `m` times are not rejected over a rounding bit.
const BETA_SLACK: f64 = 1e-12;

/// A single candidate: entry `j` of `utilities` is the utility the supporters
/// of party `j` obtain when this candidate is elected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Candidate {
    pub utilities: Vec<f64>,
}

impl Candidate {
    pub fn new(utilities: impl Into<Vec<f64>>) -> Self {
        Candidate {
            utilities: utilities.into(),
        }
    }

    pub fn social_utility(&self) -> f64 {
        self.utilities.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Party {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub candidates: Vec<Candidate>,
}

impl Party {
    pub fn new(candidates: Vec<Candidate>) -> Self {
        Party {
            name: None,
            candidates,
        }
    }

    pub fn named(name: impl Into<String>, candidates: Vec<Candidate>) -> Self {
        Party {
            name: Some(name.into()),
            candidates,
        }
    }
}

/// Unchecked instance data, the input to [`GameInstance::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceData {
    pub beta: f64,
    pub parties: Vec<Party>,
}

impl InstanceData {
    /// Builds instance data from per-party utility rows, `rows[i][s][j] = u_j(x_{i,s})`.
    pub fn from_rows(beta: f64, rows: &[Vec<Vec<f64>>]) -> Self {
        InstanceData {
            beta,
            parties: rows
                .iter()
                .map(|cands| Party::new(cands.iter().cloned().map(Candidate::new).collect()))
                .collect(),
        }
    }
}

/// A validated election game instance.
///
/// Invariants: at least two parties, every party has at least one candidate,
/// every utility is finite and non-negative, every social utility lies in
/// `[0, beta]`, and candidates within a party are ordered by own-party
/// utility, non-increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct GameInstance {
    beta: f64,
    parties: Vec<Party>,
    social: Vec<Vec<f64>>,
}

impl GameInstance {
    /// Checks `data` against the instance invariants.
    ///
    /// With `normalize`, candidates are first stably sorted per party by
    /// own-party utility, descending. Without it, unsorted input is rejected.
    pub fn validate(data: InstanceData, normalize: bool) -> Result<Self> {
        let InstanceData { beta, mut parties } = data;
        if !beta.is_finite() || beta < 1.0 {
            return Err(Error::InvalidBeta(beta));
        }
        let m = parties.len();
        if m < 2 {
            return Err(Error::TooFewParties(m));
        }
        for (i, party) in parties.iter().enumerate() {
            if party.candidates.is_empty() {
                return Err(Error::EmptyParty { party: i });
            }
            for (s, cand) in party.candidates.iter().enumerate() {
                if cand.utilities.len() != m {
                    return Err(Error::UtilityArity {
                        party: i,
                        candidate: s,
                        found: cand.utilities.len(),
                        expected: m,
                    });
                }
                for (j, &value) in cand.utilities.iter().enumerate() {
                    if !value.is_finite() || value < 0.0 {
                        return Err(Error::NegativeUtility {
                            party: i,
                            candidate: s,
                            supporter: j,
                            value,
                        });
                    }
                }
                let social = cand.social_utility();
                if social > beta * (1.0 + BETA_SLACK) {
                    return Err(Error::SocialUtilityExceedsBeta {
                        party: i,
                        candidate: s,
                        social,
                        beta,
                    });
                }
            }
        }
        if normalize {
            for (i, party) in parties.iter_mut().enumerate() {
                // stable: ties keep their input order
                party
                    .candidates
                    .sort_by(|a, b| b.utilities[i].total_cmp(&a.utilities[i]));
            }
        } else {
            for (i, party) in parties.iter().enumerate() {
                for s in 1..party.candidates.len() {
                    if party.candidates[s].utilities[i] > party.candidates[s - 1].utilities[i] {
                        return Err(Error::UnsortedCandidates {
                            party: i,
                            candidate: s,
                        });
                    }
                }
            }
        }
        Ok(Self::assemble(beta, parties))
    }

    /// Builds an instance that is already known to satisfy every invariant
    /// except possibly the party count (coalition games may collapse to one
    /// player).
    pub(crate) fn assemble(beta: f64, parties: Vec<Party>) -> Self {
        let social = parties
            .iter()
            .map(|p| p.candidates.iter().map(Candidate::social_utility).collect())
            .collect();
        GameInstance {
            beta,
            parties,
            social,
        }
    }

    /// Unchecked view of this instance, e.g. for re-validation.
    pub fn to_data(&self) -> InstanceData {
        InstanceData {
            beta: self.beta,
            parties: self.parties.clone(),
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn parties(&self) -> &[Party] {
        &self.parties
    }

    pub fn num_parties(&self) -> usize {
        self.parties.len()
    }

    pub fn num_candidates(&self, party: usize) -> usize {
        self.parties[party].candidates.len()
    }

    /// Candidate counts `n_i`, one per party.
    pub fn candidate_counts(&self) -> Vec<usize> {
        self.parties.iter().map(|p| p.candidates.len()).collect()
    }

    /// Display name of a party, falling back to `P<i>` (one-based).
    pub fn party_name(&self, party: usize) -> String {
        self.parties[party]
            .name
            .clone()
            .unwrap_or_else(|| format!("P{}", party + 1))
    }

    fn check_index(&self, party: usize, candidate: usize) -> Result<()> {
        if party >= self.parties.len() {
            return Err(Error::IndexOutOfRange(format!(
                "party {} of {}",
                party + 1,
                self.parties.len()
            )));
        }
        if candidate >= self.parties[party].candidates.len() {
            return Err(Error::IndexOutOfRange(format!(
                "candidate {} of party {} (which has {})",
                candidate + 1,
                party + 1,
                self.parties[party].candidates.len()
            )));
        }
        Ok(())
    }

    /// `u(x_{i,s})`, the sum over all supporters.
    pub fn social_utility(&self, party: usize, candidate: usize) -> Result<f64> {
        self.check_index(party, candidate)?;
        Ok(self.social[party][candidate])
    }

    /// `u_j(x_{i,s})` for supporter group `j`.
    pub fn utility(&self, supporter: usize, party: usize, candidate: usize) -> Result<f64> {
        self.check_index(party, candidate)?;
        self.parties[party].candidates[candidate]
            .utilities
            .get(supporter)
            .copied()
            .ok_or_else(|| Error::IndexOutOfRange(format!("supporter group {}", supporter + 1)))
    }

    #[inline]
    pub(crate) fn su(&self, party: usize, candidate: usize) -> f64 {
        self.social[party][candidate]
    }

    #[inline]
    pub(crate) fn u(&self, supporter: usize, party: usize, candidate: usize) -> f64 {
        self.parties[party].candidates[candidate].utilities[supporter]
    }

    /// Social utilities of the candidates fielded in `profile`.
    pub fn social_vector(&self, profile: &Profile) -> Vec<f64> {
        profile
            .choices()
            .iter()
            .enumerate()
            .map(|(i, &s)| self.social[i][s])
            .collect()
    }

    /// Number of pure profiles, `prod n_i`.
    pub fn profile_count(&self) -> u128 {
        self.parties
            .iter()
            .map(|p| p.candidates.len() as u128)
            .product()
    }

    /// Every party nominating its first candidate.
    pub fn all_first(&self) -> Profile {
        Profile::new(vec![0; self.parties.len()])
    }

    /// Every profile, in lexicographic order.
    pub fn profiles(&self) -> ProfileSpace {
        ProfileSpace::full(&self.candidate_counts())
    }

    /// Fails when an exhaustive scan would exceed `limits`.
    pub fn check_profile_space(&self, limits: SearchLimits) -> Result<()> {
        let size = self.profile_count();
        if size > limits.max_profiles as u128 {
            return Err(Error::ProfileSpaceTooLarge {
                size,
                cap: limits.max_profiles,
            });
        }
        Ok(())
    }

    pub fn check_profile(&self, profile: &Profile) -> Result<()> {
        if profile.len() != self.parties.len() {
            return Err(Error::IndexOutOfRange(format!(
                "profile {profile} has {} entries for {} parties",
                profile.len(),
                self.parties.len()
            )));
        }
        for (i, &s) in profile.choices().iter().enumerate() {
            self.check_index(i, s)?;
        }
        Ok(())
    }

    /// Returns the first violation of strict egoism, if any: a supporter
    /// group `i` that values some rival candidate at least as much as one of
    /// its own party's candidates.
    pub fn egoism_violation(&self) -> Option<EgoismViolation> {
        let m = self.num_parties();
        for i in 0..m {
            let (own_cand, own) = argmin(self.parties[i].candidates.iter().map(|c| c.utilities[i]));
            let mut worst: Option<(usize, usize, f64)> = None;
            for j in (0..m).filter(|&j| j != i) {
                for (s, c) in self.parties[j].candidates.iter().enumerate() {
                    let v = c.utilities[i];
                    if worst.map_or(true, |(_, _, w)| v > w) {
                        worst = Some((j, s, v));
                    }
                }
            }
            if let Some((j, s, cross)) = worst {
                if !(own > cross) {
                    return Some(EgoismViolation {
                        party: i,
                        candidate: own_cand,
                        rival_party: j,
                        rival_candidate: s,
                        own,
                        cross,
                    });
                }
            }
        }
        None
    }

    pub fn is_egoistic(&self) -> bool {
        self.egoism_violation().is_none()
    }

    /// Returns the first violation of strong egoism, if any: a candidate
    /// whose own-party utility does not exceed the sum, over rival parties,
    /// of the best rival utility for the same supporters.
    pub fn strong_egoism_violation(&self) -> Option<StrongEgoismViolation> {
        let m = self.num_parties();
        for i in 0..m {
            let cross_sum: f64 = (0..m)
                .filter(|&j| j != i)
                .map(|j| {
                    self.parties[j]
                        .candidates
                        .iter()
                        .map(|c| c.utilities[i])
                        .fold(f64::NEG_INFINITY, f64::max)
                })
                .sum();
            for (s, c) in self.parties[i].candidates.iter().enumerate() {
                let own = c.utilities[i];
                if !(own > cross_sum) {
                    return Some(StrongEgoismViolation {
                        party: i,
                        candidate: s,
                        own,
                        cross_sum,
                    });
                }
            }
        }
        None
    }

    pub fn is_strongly_egoistic(&self) -> bool {
        self.strong_egoism_violation().is_none()
    }

    pub(crate) fn require_egoistic(&self) -> Result<()> {
        match self.egoism_violation() {
            Some(v) => Err(Error::NotEgoistic(v)),
            None => Ok(()),
        }
    }

    pub(crate) fn require_strongly_egoistic(&self) -> Result<()> {
        match self.strong_egoism_violation() {
            Some(v) => Err(Error::NotStronglyEgoistic(v)),
            None => Ok(()),
        }
    }

    /// Intra-party dominance of candidate `s` over `s_prime` for `party`,
    /// with winning probabilities evaluated against `context`.
    ///
    /// `s` weakly surpasses `s_prime` when it comes earlier in the party's
    /// order and brings at least as much social utility. It surpasses
    /// `s_prime` when, in addition, it wins strictly more often against the
    /// context or is strictly better for the party's own supporters.
    pub fn surpass(
        &self,
        wp: &dyn WinProb,
        party: usize,
        s: usize,
        s_prime: usize,
        context: &Profile,
    ) -> Result<Surpass> {
        self.check_index(party, s)?;
        self.check_index(party, s_prime)?;
        self.check_profile(context)?;
        if !(s < s_prime && self.su(party, s) >= self.su(party, s_prime)) {
            return Ok(Surpass::Neither);
        }
        if self.u(party, party, s) > self.u(party, party, s_prime) {
            return Ok(Surpass::Surpasses);
        }
        let p = win_probs(self, wp, &context.with(party, s))[party];
        let p_prime = win_probs(self, wp, &context.with(party, s_prime))[party];
        Ok(if p > p_prime {
            Surpass::Surpasses
        } else {
            Surpass::WeaklySurpasses
        })
    }

    /// The context-free part of [`surpass`](Self::surpass): the probability
    /// clause is replaced by a strict social-utility comparison, which
    /// implies it under a strictly monotone rule.
    pub fn surpass_context_free(&self, party: usize, s: usize, s_prime: usize) -> Surpass {
        if !(s < s_prime && self.su(party, s) >= self.su(party, s_prime)) {
            return Surpass::Neither;
        }
        if self.su(party, s) > self.su(party, s_prime)
            || self.u(party, party, s) > self.u(party, party, s_prime)
        {
            Surpass::Surpasses
        } else {
            Surpass::WeaklySurpasses
        }
    }
}

fn argmin(values: impl Iterator<Item = f64>) -> (usize, f64) {
    values.enumerate().fold(
        (0, f64::INFINITY),
        |(bi, bv), (i, v)| if v < bv { (i, v) } else { (bi, bv) },
    )
}

/// A rival candidate that some supporter group values at least as much as
/// one of its own candidates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EgoismViolation {
    pub party: usize,
    pub candidate: usize,
    pub rival_party: usize,
    pub rival_candidate: usize,
    pub own: f64,
    pub cross: f64,
}

impl fmt::Display for EgoismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "u_{p}(x_{p},{c}) = {} <= u_{p}(x_{rp},{rc}) = {}",
            self.own,
            self.cross,
            p = self.party + 1,
            c = self.candidate + 1,
            rp = self.rival_party + 1,
            rc = self.rival_candidate + 1,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrongEgoismViolation {
    pub party: usize,
    pub candidate: usize,
    pub own: f64,
    pub cross_sum: f64,
}

impl fmt::Display for StrongEgoismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "u_{p}(x_{p},{c}) = {} <= {} (sum of best rival utilities)",
            self.own,
            self.cross_sum,
            p = self.party + 1,
            c = self.candidate + 1,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Surpass {
    Surpasses,
    WeaklySurpasses,
    Neither,
}

/// One nominated candidate per party (zero-based candidate indices).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile(Vec<usize>);

impl Profile {
    pub fn new(choices: Vec<usize>) -> Self {
        Profile(choices)
    }

    /// Builds a profile from one-based candidate numbers, as written in
    /// tables and on the command line.
    pub fn from_one_based(choices: &[usize]) -> Result<Self> {
        choices
            .iter()
            .map(|&c| {
                c.checked_sub(1)
                    .ok_or_else(|| Error::IndexOutOfRange("candidate numbers start at 1".into()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Profile)
    }

    pub fn choices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, party: usize) -> usize {
        self.0[party]
    }

    /// This profile with `party` switched to `candidate`.
    pub fn with(&self, party: usize, candidate: usize) -> Profile {
        let mut next = self.0.clone();
        next[party] = candidate;
        Profile(next)
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|c| c + 1).collect()
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c + 1)?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for Profile {
    type Err = Error;

    /// Parses `(1,2,1)` or `1,2,1` (one-based).
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let numbers = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::InvalidParameter(format!("bad profile {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Profile::from_one_based(&numbers)
    }
}

/// Upper bound on how many profiles brute-force scans may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_profiles: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_profiles: 10_000_000,
        }
    }
}

/// Lexicographic iterator over the product of per-party candidate sets.
#[derive(Debug, Clone)]
pub struct ProfileSpace {
    sets: Vec<Vec<usize>>,
    cursor: Option<Vec<usize>>,
}

impl ProfileSpace {
    /// All profiles of a game with the given candidate counts.
    pub fn full(counts: &[usize]) -> Self {
        Self::from_sets(counts.iter().map(|&n| (0..n).collect()).collect())
    }

    /// Profiles drawn from explicit per-party candidate sets, each ascending.
    pub fn from_sets(sets: Vec<Vec<usize>>) -> Self {
        let cursor = if sets.iter().any(Vec::is_empty) {
            None
        } else {
            Some(vec![0; sets.len()])
        };
        ProfileSpace { sets, cursor }
    }

    pub fn size(&self) -> u128 {
        self.sets.iter().map(|s| s.len() as u128).product()
    }
}

impl Iterator for ProfileSpace {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        let cursor = self.cursor.as_mut()?;
        let profile = Profile(
            cursor
                .iter()
                .zip(&self.sets)
                .map(|(&k, set)| set[k])
                .collect(),
        );
        let mut advanced = false;
        for pos in (0..cursor.len()).rev() {
            cursor[pos] += 1;
            if cursor[pos] < self.sets[pos].len() {
                advanced = true;
                break;
            }
            cursor[pos] = 0;
        }
        if !advanced {
            self.cursor = None;
        }
        Some(profile)
    }
}
