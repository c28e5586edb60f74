//! Pure-strategy Nash equilibria: deciding, enumerating, best responses,
//! the dominance-based existence conditions, the all-first approximation
//! ratio and the improving-deviation graph.

use std::fmt::{self, Write as _};

use crate::error::Result;
use crate::model::{GameInstance, Profile, SearchLimits, Surpass};
use crate::payoff::{evaluate, payoff};
use crate::wp::WinProb;

/// A unilateral switch of `party` from its candidate in `from` to `to`.
#[derive(Debug, Clone, PartialEq)]
pub struct Deviation {
    pub from: Profile,
    pub party: usize,
    pub to: usize,
    pub payoff_before: f64,
    pub payoff_after: f64,
}

impl Deviation {
    pub fn gain(&self) -> f64 {
        self.payoff_after - self.payoff_before
    }

    pub fn target(&self) -> Profile {
        self.from.with(self.party, self.to)
    }
}

impl fmt::Display for Deviation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "party {} deviates {} -> {}: payoff {:.4} -> {:.4}",
            self.party + 1,
            self.from,
            self.target(),
            self.payoff_before,
            self.payoff_after
        )
    }
}

/// First deviation (by party, then candidate) that raises the deviator's
/// payoff by more than `tau`.
pub fn improving_deviation(
    g: &GameInstance,
    wp: &dyn WinProb,
    profile: &Profile,
    tau: f64,
) -> Option<Deviation> {
    let current = evaluate(g, wp, profile);
    for party in 0..g.num_parties() {
        let here = current.payoffs[party];
        for cand in (0..g.num_candidates(party)).filter(|&c| c != profile.get(party)) {
            let there = payoff(g, wp, &profile.with(party, cand), party);
            if there > here + tau {
                return Some(Deviation {
                    from: profile.clone(),
                    party,
                    to: cand,
                    payoff_before: here,
                    payoff_after: there,
                });
            }
        }
    }
    None
}

/// Whether no party can gain more than `tau` by a unilateral switch.
pub fn is_psne(g: &GameInstance, wp: &dyn WinProb, profile: &Profile, tau: f64) -> bool {
    improving_deviation(g, wp, profile, tau).is_none()
}

/// Every `tau`-equilibrium, in lexicographic order.
pub fn enumerate_psne(
    g: &GameInstance,
    wp: &dyn WinProb,
    tau: f64,
    limits: SearchLimits,
) -> Result<Vec<Profile>> {
    g.check_profile_space(limits)?;
    Ok(g.profiles().filter(|s| is_psne(g, wp, s, tau)).collect())
}

/// Payoff-maximising candidate of `party` against the rest of `profile`;
/// ties go to the lowest index.
pub fn best_response(g: &GameInstance, wp: &dyn WinProb, profile: &Profile, party: usize) -> usize {
    let mut best = 0;
    let mut best_payoff = f64::NEG_INFINITY;
    for cand in 0..g.num_candidates(party) {
        let r = payoff(g, wp, &profile.with(party, cand), party);
        if r > best_payoff {
            best = cand;
            best_payoff = r;
        }
    }
    best
}

/// Which dominance-based existence condition an egoistic game satisfies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DominanceCase {
    /// Every party's first candidate weakly surpasses the rest of its list,
    /// so the all-first profile is an equilibrium.
    AllFirst(Profile),
    /// As `AllFirst`, with every first candidate surpassing the rest
    /// (strictly better for the party against the all-first context).
    AllFirstUnique(Profile),
    /// All but `free_party` have a weakly surpassing first candidate; the
    /// free party's best response completes the equilibrium.
    AllButOne {
        free_party: usize,
        profile: Profile,
    },
    NotApplicable,
}

fn first_weakly_surpasses_rest(g: &GameInstance, party: usize) -> bool {
    (1..g.num_candidates(party)).all(|t| g.surpass_context_free(party, 0, t) != Surpass::Neither)
}

/// Detects whether the dominance conditions apply and, if so, returns the
/// equilibrium they guarantee.
pub fn check_dominance(g: &GameInstance, wp: &dyn WinProb) -> Result<DominanceCase> {
    g.require_egoistic()?;
    let m = g.num_parties();
    let lacking: Vec<usize> = (0..m)
        .filter(|&i| !first_weakly_surpasses_rest(g, i))
        .collect();
    let all_first = g.all_first();
    match lacking.as_slice() {
        [] => {
            let strict = (0..m).all(|i| {
                (1..g.num_candidates(i)).all(|t| {
                    g.surpass(wp, i, 0, t, &all_first)
                        .map_or(false, |s| s == Surpass::Surpasses)
                })
            });
            Ok(if strict {
                DominanceCase::AllFirstUnique(all_first)
            } else {
                DominanceCase::AllFirst(all_first)
            })
        }
        [free] => {
            let free = *free;
            let profile = all_first.with(free, best_response(g, wp, &all_first, free));
            Ok(DominanceCase::AllButOne {
                free_party: free,
                profile,
            })
        }
        _ => Ok(DominanceCase::NotApplicable),
    }
}

/// Worst multiplicative gain available to a unilateral deviator from the
/// all-first profile.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxReport {
    pub profile: Profile,
    /// `max(1, max_{i, s'} r_i(s', s_-i) / r_i(s))`; infinite when some
    /// party with zero payoff can reach a positive one.
    pub alpha: f64,
    /// The deviation attaining `alpha`, absent when nobody gains.
    pub witness: Option<Deviation>,
}

impl ApproxReport {
    /// True when a zero-payoff party can gain, so no finite factor bounds it.
    pub fn is_unbounded(&self) -> bool {
        self.alpha.is_infinite()
    }
}

/// Ratio `after / before` with the zero-payoff convention: `0/0 = 1` and
/// `x/0 = inf` for `x > 0`.
pub fn deviation_ratio(before: f64, after: f64) -> f64 {
    if before == 0.0 {
        if after == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        after / before
    }
}

/// Approximation factor of the all-first profile.
pub fn approx_ratio_all_first(g: &GameInstance, wp: &dyn WinProb) -> Result<ApproxReport> {
    g.require_egoistic()?;
    let profile = g.all_first();
    let base = evaluate(g, wp, &profile);
    let mut alpha = 1.0;
    let mut witness = None;
    for party in 0..g.num_parties() {
        for cand in 1..g.num_candidates(party) {
            let after = payoff(g, wp, &profile.with(party, cand), party);
            let ratio = deviation_ratio(base.payoffs[party], after);
            if ratio > alpha {
                alpha = ratio;
                witness = Some(Deviation {
                    from: profile.clone(),
                    party,
                    to: cand,
                    payoff_before: base.payoffs[party],
                    payoff_after: after,
                });
            }
        }
    }
    Ok(ApproxReport {
        profile,
        alpha,
        witness,
    })
}

/// An improving unilateral deviation between two profiles of the graph.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationEdge {
    pub from: usize,
    pub to: usize,
    pub party: usize,
    pub gain: f64,
}

/// Directed graph over all profiles with an edge for every unilateral
/// switch that improves the deviator's payoff by more than `tau`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationGraph {
    pub profiles: Vec<Profile>,
    pub edges: Vec<DeviationEdge>,
    pub tau: f64,
}

impl DeviationGraph {
    pub fn out_degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|e| e.from == node).count()
    }

    /// Profiles without outgoing edges, i.e. the `tau`-equilibria.
    pub fn sinks(&self) -> Vec<Profile> {
        let mut has_out = vec![false; self.profiles.len()];
        for e in &self.edges {
            has_out[e.from] = true;
        }
        self.profiles
            .iter()
            .zip(has_out)
            .filter(|(_, out)| !out)
            .map(|(p, _)| p.clone())
            .collect()
    }

    /// Some directed cycle as a list of node indices, if one exists.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let n = self.profiles.len();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.from].push(e.to);
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            if state[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            state[root] = 1;
            while let Some(&mut (node, ref mut next)) = stack.last_mut() {
                if *next < adj[node].len() {
                    let succ = adj[node][*next];
                    *next += 1;
                    match state[succ] {
                        0 => {
                            state[succ] = 1;
                            parent[succ] = node;
                            stack.push((succ, 0));
                        }
                        1 => {
                            let mut cycle = vec![succ];
                            let mut cur = node;
                            while cur != succ {
                                cycle.push(cur);
                                cur = parent[cur];
                            }
                            cycle[1..].reverse();
                            return Some(cycle);
                        }
                        _ => {}
                    }
                } else {
                    state[node] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    /// Graphviz rendering: nodes labelled with one-based profile tuples,
    /// edges with `(party, gain)`. Sinks are drawn with a double border.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph deviations {\n    node [shape=box];\n");
        let mut has_out = vec![false; self.profiles.len()];
        for e in &self.edges {
            has_out[e.from] = true;
        }
        for (k, p) in self.profiles.iter().enumerate() {
            let extra = if has_out[k] { "" } else { ", peripheries=2" };
            let _ = writeln!(out, "    n{k} [label=\"{p}\"{extra}];");
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "    n{} -> n{} [label=\"({}, {:.4})\"];",
                e.from,
                e.to,
                e.party + 1,
                e.gain
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the deviation graph. With `best_response_only`, each party keeps
/// only its edge to the first best improving candidate.
pub fn deviation_graph(
    g: &GameInstance,
    wp: &dyn WinProb,
    tau: f64,
    best_response_only: bool,
    limits: SearchLimits,
) -> Result<DeviationGraph> {
    g.check_profile_space(limits)?;
    let profiles: Vec<Profile> = g.profiles().collect();
    let counts = g.candidate_counts();
    // lexicographic rank of a profile
    let index_of = |p: &Profile| {
        p.choices()
            .iter()
            .zip(&counts)
            .fold(0usize, |acc, (&c, &n)| acc * n + c)
    };
    let payoffs: Vec<Vec<f64>> = profiles
        .iter()
        .map(|p| evaluate(g, wp, p).payoffs)
        .collect();
    let mut edges = Vec::new();
    for (k, p) in profiles.iter().enumerate() {
        for party in 0..g.num_parties() {
            let here = payoffs[k][party];
            let mut party_edges: Vec<DeviationEdge> = (0..counts[party])
                .filter(|&c| c != p.get(party))
                .filter_map(|c| {
                    let to = index_of(&p.with(party, c));
                    let gain = payoffs[to][party] - here;
                    (payoffs[to][party] > here + tau).then_some(DeviationEdge {
                        from: k,
                        to,
                        party,
                        gain,
                    })
                })
                .collect();
            if best_response_only && party_edges.len() > 1 {
                let best = party_edges.iter().enumerate().fold(0, |b, (i, e)| {
                    if e.gain > party_edges[b].gain {
                        i
                    } else {
                        b
                    }
                });
                party_edges = vec![party_edges.swap_remove(best)];
            }
            edges.extend(party_edges);
        }
    }
    Ok(DeviationGraph {
        profiles,
        edges,
        tau,
    })
}
