//! Reference implementations used to check the library.
//!
//! Everything here works on plain nested vectors copied out of an instance
//! and recomputes probabilities, payoffs, equilibria and ratios from the
//! definitions, without calling the library's evaluation code.

#![allow(dead_code)]

use election_game::GameInstance;

/// `u[i][s][j]`: utility of party `j`'s supporters for candidate `s` of party `i`.
#[derive(Debug, Clone)]
pub struct Raw {
    pub beta: f64,
    pub u: Vec<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Hardmax,
    Softmax,
}

impl Raw {
    pub fn of(g: &GameInstance) -> Raw {
        Raw {
            beta: g.beta(),
            u: g.parties()
                .iter()
                .map(|p| p.candidates.iter().map(|c| c.utilities.clone()).collect())
                .collect(),
        }
    }

    pub fn m(&self) -> usize {
        self.u.len()
    }

    pub fn social(&self, i: usize, s: usize) -> f64 {
        self.u[i][s].iter().sum()
    }

    /// All profiles, last party varying fastest.
    pub fn profiles(&self) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for party in &self.u {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..party.len()).map(move |s| {
                        let mut q = p.clone();
                        q.push(s);
                        q
                    })
                })
                .collect();
        }
        out
    }

    pub fn probs(&self, rule: Rule, s: &[usize]) -> Vec<f64> {
        let soc: Vec<f64> = (0..self.m()).map(|i| self.social(i, s[i])).collect();
        match rule {
            Rule::Hardmax => {
                let best = soc.iter().cloned().fold(f64::MIN, f64::max);
                let w = soc.iter().position(|&x| x == best).unwrap();
                (0..self.m())
                    .map(|i| if i == w { 1.0 } else { 0.0 })
                    .collect()
            }
            Rule::Softmax => {
                let e: Vec<f64> = soc.iter().map(|x| (x / self.beta).exp()).collect();
                let z: f64 = e.iter().sum();
                e.iter().map(|x| x / z).collect()
            }
        }
    }

    pub fn payoffs(&self, rule: Rule, s: &[usize]) -> Vec<f64> {
        let p = self.probs(rule, s);
        (0..self.m())
            .map(|i| (0..self.m()).map(|j| p[j] * self.u[j][s[j]][i]).sum())
            .collect()
    }

    pub fn sw(&self, rule: Rule, s: &[usize]) -> f64 {
        let p = self.probs(rule, s);
        (0..self.m()).map(|j| p[j] * self.social(j, s[j])).sum()
    }

    pub fn is_psne(&self, rule: Rule, s: &[usize]) -> bool {
        let r = self.payoffs(rule, s);
        (0..self.m()).all(|i| {
            (0..self.u[i].len()).all(|c| {
                let mut t = s.to_vec();
                t[i] = c;
                self.payoffs(rule, &t)[i] <= r[i]
            })
        })
    }

    pub fn psne(&self, rule: Rule) -> Vec<Vec<usize>> {
        self.profiles()
            .into_iter()
            .filter(|s| self.is_psne(rule, s))
            .collect()
    }

    /// (optimal SW, PoA) with PoA `None` when there is no equilibrium.
    pub fn poa(&self, rule: Rule) -> (f64, Option<f64>) {
        let opt = self
            .profiles()
            .iter()
            .map(|s| self.sw(rule, s))
            .fold(f64::MIN, f64::max);
        let worst = self
            .psne(rule)
            .iter()
            .map(|s| self.sw(rule, s))
            .fold(None, |acc: Option<f64>, x| {
                Some(acc.map_or(x, |a| a.min(x)))
            });
        (opt, worst.map(|w| opt / w))
    }

    /// Worst multiplicative deviation gain from the all-first profile.
    pub fn alpha_all_first(&self, rule: Rule) -> f64 {
        let s = vec![0; self.m()];
        let r = self.payoffs(rule, &s);
        let mut alpha: f64 = 1.0;
        for i in 0..self.m() {
            for c in 1..self.u[i].len() {
                let mut t = s.clone();
                t[i] = c;
                let after = self.payoffs(rule, &t)[i];
                let ratio = if r[i] == 0.0 {
                    if after == 0.0 {
                        1.0
                    } else {
                        f64::INFINITY
                    }
                } else {
                    after / r[i]
                };
                alpha = alpha.max(ratio);
            }
        }
        alpha
    }

    pub fn is_egoistic(&self) -> bool {
        (0..self.m()).all(|i| {
            self.u[i].iter().all(|own| {
                (0..self.m())
                    .filter(|&j| j != i)
                    .all(|j| self.u[j].iter().all(|rival| own[i] > rival[i]))
            })
        })
    }

    pub fn is_strongly_egoistic(&self) -> bool {
        (0..self.m()).all(|i| {
            let cross: f64 = (0..self.m())
                .filter(|&j| j != i)
                .map(|j| self.u[j].iter().map(|c| c[i]).fold(0.0, f64::max))
                .sum();
            self.u[i].iter().all(|own| own[i] > cross)
        })
    }

    /// `better` precedes `worse` in party `i`'s list and dominates it without
    /// looking at probabilities.
    pub fn surpasses(&self, i: usize, better: usize, worse: usize) -> bool {
        let (sb, sw) = (self.social(i, better), self.social(i, worse));
        let (ob, ow) = (self.u[i][better][i], self.u[i][worse][i]);
        better < worse && sb >= sw && (sb > sw || ob > ow)
    }
}

/// Payoff change of `member` leaving its coalition, recomputed from the
/// definition with explicit loops. `blocks` must partition the parties and
/// `choices[c]` lists member candidates in block order.
pub fn incentive_delta(
    raw: &Raw,
    blocks: &[Vec<usize>],
    rule: Rule,
    member: usize,
    choices: &[Vec<usize>],
) -> f64 {
    let beta = blocks
        .iter()
        .map(|b| {
            b.iter()
                .map(|&i| {
                    (0..raw.u[i].len())
                        .map(|s| raw.social(i, s))
                        .fold(0.0, f64::max)
                })
                .sum::<f64>()
        })
        .fold(raw.beta, f64::max);
    // (social utility, member's utility) per competitor
    let mut inside = Vec::new();
    let mut alone = Vec::new();
    let mut leaver = None;
    for (b, block) in blocks.iter().enumerate() {
        let mut soc = 0.0;
        let mut mine = 0.0;
        let mut soc_wo = 0.0;
        let mut mine_wo = 0.0;
        for (k, &party) in block.iter().enumerate() {
            let s = choices[b][k];
            soc += raw.social(party, s);
            mine += raw.u[party][s][member];
            if party == member {
                leaver = Some((raw.social(party, s), raw.u[party][s][member]));
            } else {
                soc_wo += raw.social(party, s);
                mine_wo += raw.u[party][s][member];
            }
        }
        inside.push((soc, mine));
        alone.push((soc_wo, mine_wo));
    }
    alone.push(leaver.unwrap());
    let value = |cs: &[(f64, f64)]| {
        let p: Vec<f64> = match rule {
            Rule::Softmax => {
                let e: Vec<f64> = cs.iter().map(|(s, _)| (s / beta).exp()).collect();
                let z: f64 = e.iter().sum();
                e.iter().map(|x| x / z).collect()
            }
            Rule::Hardmax => {
                let best = cs.iter().map(|c| c.0).fold(f64::MIN, f64::max);
                let w = cs.iter().position(|c| c.0 == best).unwrap();
                (0..cs.len())
                    .map(|k| if k == w { 1.0 } else { 0.0 })
                    .collect()
            }
        };
        cs.iter().zip(p).map(|((_, a), p)| p * a).sum::<f64>()
    };
    value(&alone) - value(&inside)
}

/// Brute-force satisfiability over `vars` variables.
pub fn satisfiable(vars: usize, clauses: &[Vec<i32>]) -> bool {
    (0..1u32 << vars).any(|bits| {
        clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let v = l.unsigned_abs() as usize - 1;
                let val = bits >> v & 1 == 1;
                val == (l > 0)
            })
        })
    })
}
