//! Cooperative games: parties pool into coalitions that field one candidate
//! per member, and a coalition's utilities are the member sums.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{Candidate, GameInstance, Party, Profile, ProfileSpace};
use crate::wp::WinProb;

/// Default cap on coalition candidates (member tuples) per coalition.
pub const DEFAULT_COALITION_CAP: u64 = 1_000_000;

/// Disjoint coalitions of zero-based party indices. Parties left out of
/// every listed block stand alone, as trailing singleton blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalitionStructure {
    blocks: Vec<Vec<usize>>,
}

impl CoalitionStructure {
    /// Checks disjointness and ranges, then appends the uncovered parties
    /// as singletons in index order.
    pub fn new(mut blocks: Vec<Vec<usize>>, num_parties: usize) -> Result<Self> {
        let mut seen = vec![false; num_parties];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidCoalitions(format!(
                    "coalition {} is empty",
                    b + 1
                )));
            }
            for &i in block {
                if i >= num_parties {
                    return Err(Error::InvalidCoalitions(format!(
                        "party {} does not exist (the game has {num_parties})",
                        i + 1
                    )));
                }
                if seen[i] {
                    return Err(Error::InvalidCoalitions(format!(
                        "party {} appears in more than one coalition",
                        i + 1
                    )));
                }
                seen[i] = true;
            }
        }
        blocks.extend((0..num_parties).filter(|&i| !seen[i]).map(|i| vec![i]));
        Ok(Self { blocks })
    }

    /// Parses one-based party lists such as `"1,2|3"`.
    pub fn parse(spec: &str, num_parties: usize) -> Result<Self> {
        let blocks = spec
            .split('|')
            .map(|block| {
                block
                    .split(',')
                    .map(|tok| {
                        let tok = tok.trim();
                        match tok.parse::<usize>() {
                            Ok(i) if i >= 1 => Ok(i - 1),
                            _ => Err(Error::InvalidCoalitions(format!(
                                "bad party index {tok:?} in {spec:?}"
                            ))),
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(blocks, num_parties)
    }

    /// Every party on its own.
    pub fn singletons(num_parties: usize) -> Self {
        Self {
            blocks: (0..num_parties).map(|i| vec![i]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Coalition index and position within it of `party`.
    pub fn locate(&self, party: usize) -> Option<(usize, usize)> {
        self.blocks
            .iter()
            .enumerate()
            .find_map(|(b, block)| block.iter().position(|&i| i == party).map(|pos| (b, pos)))
    }
}

impl fmt::Display for CoalitionStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|i| (i + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        f.write_str(&parts.join("|"))
    }
}

/// The coalition game together with the member tuple behind every
/// coalition candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct CoalitionGame {
    pub instance: GameInstance,
    pub structure: CoalitionStructure,
    /// `tuples[c][k]` lists, in block order, the member candidates that
    /// make up candidate `k` of coalition `c`.
    pub tuples: Vec<Vec<Vec<usize>>>,
    /// Whether beta was raised above the original game's beta.
    pub beta_scaled: bool,
}

impl CoalitionGame {
    /// Expands a coalition-game profile into the member parties' choices.
    pub fn expand(&self, profile: &Profile) -> Profile {
        let m = self.structure.blocks().iter().map(Vec::len).sum();
        let mut choices = vec![0; m];
        for (c, block) in self.structure.blocks().iter().enumerate() {
            for (&party, &cand) in block.iter().zip(&self.tuples[c][profile.get(c)]) {
                choices[party] = cand;
            }
        }
        Profile::new(choices)
    }
}

/// Total utility that coalition `target`'s members draw from the member
/// candidates `tuple` of coalition `block`.
fn block_utility(g: &GameInstance, target: &[usize], block: &[usize], tuple: &[usize]) -> f64 {
    target
        .iter()
        .map(|&l| {
            block
                .iter()
                .zip(tuple)
                .map(|(&party, &cand)| g.u(l, party, cand))
                .sum::<f64>()
        })
        .sum()
}

/// Largest social utility any coalition candidate can reach.
fn max_coalition_social(g: &GameInstance, cs: &CoalitionStructure) -> f64 {
    cs.blocks()
        .iter()
        .map(|block| {
            block
                .iter()
                .map(|&i| {
                    (0..g.num_candidates(i))
                        .map(|s| g.su(i, s))
                        .fold(0.0, f64::max)
                })
                .sum::<f64>()
        })
        .fold(0.0, f64::max)
}

/// Builds the coalition game of a strongly egoistic instance.
///
/// Coalition candidates are all member tuples, sorted stably by the
/// coalition's own utility. Beta becomes the larger of the original beta and
/// the largest coalition social utility.
pub fn secce_transform(
    g: &GameInstance,
    cs: &CoalitionStructure,
    cap: u64,
) -> Result<CoalitionGame> {
    g.require_strongly_egoistic()?;
    check_structure(g, cs)?;
    let counts = g.candidate_counts();
    for (c, block) in cs.blocks().iter().enumerate() {
        let size: u128 = block.iter().map(|&i| counts[i] as u128).product();
        if size > cap as u128 {
            return Err(Error::CoalitionSpaceTooLarge {
                coalition: c,
                size,
                cap,
            });
        }
    }
    let max_social = max_coalition_social(g, cs);
    let beta = g.beta().max(max_social);
    let mut parties = Vec::with_capacity(cs.len());
    let mut all_tuples = Vec::with_capacity(cs.len());
    for (c, block) in cs.blocks().iter().enumerate() {
        let sets = block.iter().map(|&i| (0..counts[i]).collect()).collect();
        let mut cands: Vec<(Vec<usize>, Vec<f64>)> = ProfileSpace::from_sets(sets)
            .map(|tuple| {
                let tuple = tuple.choices().to_vec();
                let utils = cs
                    .blocks()
                    .iter()
                    .map(|target| block_utility(g, target, block, &tuple))
                    .collect();
                (tuple, utils)
            })
            .collect();
        cands.sort_by(|a, b| b.1[c].total_cmp(&a.1[c]));
        let name = block
            .iter()
            .map(|&i| g.party_name(i))
            .collect::<Vec<_>>()
            .join("+");
        let (tuples, utils): (Vec<_>, Vec<_>) = cands.into_iter().unzip();
        parties.push(Party::named(
            name,
            utils.into_iter().map(Candidate::new).collect(),
        ));
        all_tuples.push(tuples);
    }
    let instance = GameInstance::assemble(beta, parties);
    Ok(CoalitionGame {
        instance,
        structure: cs.clone(),
        tuples: all_tuples,
        beta_scaled: beta > g.beta(),
    })
}

fn check_structure(g: &GameInstance, cs: &CoalitionStructure) -> Result<()> {
    let covered: usize = cs.blocks().iter().map(Vec::len).sum();
    if covered != g.num_parties() || cs.blocks().iter().flatten().any(|&i| i >= g.num_parties()) {
        return Err(Error::InvalidCoalitions(format!(
            "structure {cs} does not partition the game's {} parties",
            g.num_parties()
        )));
    }
    Ok(())
}

/// A member's payoff inside its coalition and after leaving it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncentiveDelta {
    pub inside: f64,
    pub alone: f64,
    /// `alone - inside`; positive means leaving pays.
    pub delta: f64,
}

/// Payoff change for `member` when it leaves its coalition and runs alone,
/// with every coalition's member candidates fixed by `choices` (one tuple
/// per coalition, in block order, zero-based).
///
/// The leaver is appended as the last party; the remaining members keep
/// their candidates, and both configurations share the coalition game's
/// beta.
pub fn coalition_incentive_delta(
    g: &GameInstance,
    cs: &CoalitionStructure,
    wp: &dyn WinProb,
    member: usize,
    choices: &[Vec<usize>],
) -> Result<IncentiveDelta> {
    g.require_strongly_egoistic()?;
    check_structure(g, cs)?;
    let (home, pos) = cs
        .locate(member)
        .ok_or(Error::MemberIsSingleton { party: member })?;
    if cs.blocks()[home].len() < 2 {
        return Err(Error::MemberIsSingleton { party: member });
    }
    check_choices(g, cs, choices)?;
    let beta = g.beta().max(max_coalition_social(g, cs));
    let blocks = cs.blocks();

    let social: Vec<f64> = blocks
        .iter()
        .zip(choices)
        .map(|(b, t)| b.iter().zip(t).map(|(&i, &s)| g.su(i, s)).sum())
        .collect();
    let gains: Vec<f64> = blocks
        .iter()
        .zip(choices)
        .map(|(b, t)| block_utility(g, &[member], b, t))
        .collect();
    let own_cand = choices[home][pos];
    let own_gain = g.u(member, member, own_cand);

    let p = wp.probabilities(&social, beta, &Profile::new(vec![0; social.len()]));
    let inside: f64 = p.iter().zip(&gains).map(|(p, a)| p * a).sum();

    let mut social_alone = social.clone();
    social_alone[home] -= g.su(member, own_cand);
    social_alone.push(g.su(member, own_cand));
    let mut gains_alone = gains;
    gains_alone[home] -= own_gain;
    gains_alone.push(own_gain);
    let q = wp.probabilities(
        &social_alone,
        beta,
        &Profile::new(vec![0; social_alone.len()]),
    );
    let alone: f64 = q.iter().zip(&gains_alone).map(|(p, a)| p * a).sum();

    Ok(IncentiveDelta {
        inside,
        alone,
        delta: alone - inside,
    })
}

fn check_choices(g: &GameInstance, cs: &CoalitionStructure, choices: &[Vec<usize>]) -> Result<()> {
    if choices.len() != cs.len() {
        return Err(Error::InvalidCoalitions(format!(
            "{} candidate tuples given for {} coalitions",
            choices.len(),
            cs.len()
        )));
    }
    for (c, (block, tuple)) in cs.blocks().iter().zip(choices).enumerate() {
        if block.len() != tuple.len() {
            return Err(Error::InvalidCoalitions(format!(
                "coalition {} has {} members but {} candidates were given",
                c + 1,
                block.len(),
                tuple.len()
            )));
        }
        for (&party, &cand) in block.iter().zip(tuple) {
            if cand >= g.num_candidates(party) {
                return Err(Error::IndexOutOfRange(format!(
                    "candidate {} of party {} (it has {})",
                    cand + 1,
                    party + 1,
                    g.num_candidates(party)
                )));
            }
        }
    }
    Ok(())
}
