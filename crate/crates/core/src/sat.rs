//! CNF formulas and the hardness gadget.
//!
//! [`build_gadget`] turns a formula over `m` variables into an `m`-party
//! egoistic game with two candidates per party. Candidate 1 of party `i`
//! sets variable `i` to true, candidate 2 to false. The matching
//! [`GadgetWp`] rule flattens its power law when the encoded assignment
//! satisfies the formula, which is meant to make equilibria exist exactly
//! for satisfiable formulas. [`compare_with_sat`] checks that claim against
//! a brute-force SAT oracle instead of assuming it.

use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::equilibria::{improving_deviation, is_psne, Deviation};
use crate::error::{Error, Result};
use crate::model::{Candidate, GameInstance, InstanceData, Party, Profile, SearchLimits};
use crate::payoff::evaluate;
use crate::wp::WinProb;

/// A CNF formula; literal `v` is variable `v` (one-based), `-v` its negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for (c, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "clause {} is empty",
                    c + 1
                )));
            }
            if let Some(&lit) = clause
                .iter()
                .find(|&&l| l == 0 || l.unsigned_abs() as usize > num_vars)
            {
                return Err(Error::InvalidParameter(format!(
                    "literal {lit} in clause {} is outside 1..={num_vars}",
                    c + 1
                )));
            }
        }
        Ok(Self { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Parses DIMACS CNF: `c` comment lines, one `p cnf VARS CLAUSES`
    /// header, then zero-terminated clauses that may span lines.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        let mut last_line = 0;
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            last_line = line_no;
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                if header.is_some() {
                    return Err(dimacs(line_no, "duplicate problem line"));
                }
                let parts: Vec<&str> = line.split_whitespace().collect();
                let parse = |s: &str| s.parse::<usize>().ok();
                match parts.as_slice() {
                    ["p", "cnf", v, c] => match (parse(v), parse(c)) {
                        (Some(v), Some(c)) => header = Some((v, c, line_no)),
                        _ => {
                            return Err(dimacs(
                                line_no,
                                "counts in the problem line must be non-negative integers",
                            ))
                        }
                    },
                    _ => return Err(dimacs(line_no, "expected `p cnf VARS CLAUSES`")),
                }
                continue;
            }
            let Some((num_vars, _, _)) = header else {
                return Err(dimacs(line_no, "clause before the problem line"));
            };
            for tok in line.split_whitespace() {
                let lit: i32 = tok
                    .parse()
                    .map_err(|_| dimacs(line_no, &format!("bad literal {tok:?}")))?;
                if lit == 0 {
                    if current.is_empty() {
                        return Err(dimacs(line_no, "empty clause"));
                    }
                    clauses.push(std::mem::take(&mut current));
                } else if lit.unsigned_abs() as usize > num_vars {
                    return Err(dimacs(
                        line_no,
                        &format!("literal {lit} exceeds the declared {num_vars} variables"),
                    ));
                } else {
                    current.push(lit);
                }
            }
        }
        let Some((num_vars, num_clauses, header_line)) = header else {
            return Err(dimacs(last_line.max(1), "missing `p cnf` problem line"));
        };
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != num_clauses {
            return Err(dimacs(
                header_line,
                &format!(
                    "header declares {num_clauses} clauses, found {}",
                    clauses.len()
                ),
            ));
        }
        Self::new(num_vars, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                out.push_str(&lit.to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|&lit| assignment[lit.unsigned_abs() as usize - 1] == (lit > 0))
        })
    }

    /// First satisfying assignment in the order all-true, ..., all-false
    /// (the last variable flips fastest).
    pub fn solve(&self) -> Option<Vec<bool>> {
        assert!(
            self.num_vars < 32,
            "brute-force SAT is limited to 31 variables"
        );
        (0..1u64 << self.num_vars)
            .map(|bits| {
                (0..self.num_vars)
                    .map(|v| bits >> (self.num_vars - 1 - v) & 1 == 0)
                    .collect::<Vec<bool>>()
            })
            .find(|a| self.evaluate(a))
    }

    pub fn is_satisfiable(&self) -> bool {
        self.solve().is_some()
    }

    /// Random formula with clauses of `min(3, num_vars)` distinct variables
    /// and uniform signs.
    pub fn random_3cnf(num_vars: usize, num_clauses: usize, seed: u64) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::InvalidParameter(
                "a formula needs at least one variable".into(),
            ));
        }
        let width = num_vars.min(3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let clauses = (0..num_clauses)
            .map(|_| {
                sample(&mut rng, num_vars, width)
                    .into_iter()
                    .map(|v| {
                        let lit = v as i32 + 1;
                        if rng.gen_bool(0.5) {
                            lit
                        } else {
                            -lit
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(num_vars, clauses)
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return f.write_str("TRUE");
        }
        let lit = |l: &i32| {
            if *l > 0 {
                format!("v{l}")
            } else {
                format!("!v{}", -l)
            }
        };
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| format!("({})", c.iter().map(lit).collect::<Vec<_>>().join(" | ")))
            .collect();
        f.write_str(&parts.join(" & "))
    }
}

fn dimacs(line: usize, message: &str) -> Error {
    Error::Dimacs {
        line,
        message: message.to_string(),
    }
}

/// Truth assignment encoded by a profile: candidate 1 is true.
pub fn assignment_of(profile: &Profile) -> Vec<bool> {
    profile.choices().iter().map(|&c| c == 0).collect()
}

/// Profile encoding a truth assignment.
pub fn profile_of(assignment: &[bool]) -> Profile {
    Profile::new(assignment.iter().map(|&b| if b { 0 } else { 1 }).collect())
}

pub const GADGET_BETA: f64 = 200.0;
pub const DEFAULT_GADGET_EPSILON: f64 = 0.5;

/// Only parties whose candidate has social utility above this share the
/// winning mass.
const GADGET_THRESHOLD: f64 = 1.0;

/// Profile-dependent rule of the gadget: `(u_i / beta)^(1 - f/10)`,
/// normalised over parties with social utility above 1, where `f` is 1 when
/// the profile's assignment satisfies the formula.
#[derive(Debug, Clone)]
pub struct GadgetWp {
    pub formula: CnfFormula,
}

impl WinProb for GadgetWp {
    fn name(&self) -> &str {
        "gadget"
    }

    fn probabilities(&self, social: &[f64], beta: f64, profile: &Profile) -> Vec<f64> {
        let f = if self.formula.evaluate(&assignment_of(profile)) {
            1.0
        } else {
            0.0
        };
        let exponent = 1.0 - f / 10.0;
        let weights: Vec<f64> = social
            .iter()
            .map(|&u| {
                if u > GADGET_THRESHOLD {
                    (u / beta).powf(exponent)
                } else {
                    0.0
                }
            })
            .collect();
        let total: f64 = weights.iter().sum();
        if total > 0.0 {
            weights.into_iter().map(|w| w / total).collect()
        } else {
            vec![1.0 / social.len() as f64; social.len()]
        }
    }
}

/// A reduction instance: the game and the rule tied to its formula.
#[derive(Debug, Clone)]
pub struct GadgetGame {
    pub instance: GameInstance,
    pub wp: GadgetWp,
    pub epsilon: f64,
}

impl GadgetGame {
    pub fn formula(&self) -> &CnfFormula {
        &self.wp.formula
    }
}

/// Builds the gadget: parties `1..m-2` are fillers worth `epsilon` to their
/// own supporters only; the last two parties carry the fixed 2x2 block.
pub fn build_gadget(formula: &CnfFormula, epsilon: f64) -> Result<GadgetGame> {
    let m = formula.num_vars();
    if m < 2 {
        return Err(Error::TooFewVariables(m));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "gadget epsilon must lie in (0,1), got {epsilon}"
        )));
    }
    let cand = |entries: &[(usize, f64)]| {
        let mut u = vec![0.0; m];
        for &(i, v) in entries {
            u[i] = v;
        }
        Candidate::new(u)
    };
    let mut parties: Vec<Party> = (0..m - 2)
        .map(|i| {
            Party::named(
                format!("v{}", i + 1),
                vec![cand(&[(i, epsilon)]), cand(&[(i, epsilon)])],
            )
        })
        .collect();
    let (a, b) = (m - 2, m - 1);
    parties.push(Party::named(
        format!("v{}", a + 1),
        vec![cand(&[(a, 83.0), (b, 1.0)]), cand(&[(a, 80.0), (b, 19.0)])],
    ));
    parties.push(Party::named(
        format!("v{}", b + 1),
        vec![cand(&[(a, 3.0), (b, 24.0)]), cand(&[(a, 9.0), (b, 22.0)])],
    ));
    let instance = GameInstance::validate(
        InstanceData {
            beta: GADGET_BETA,
            parties,
        },
        false,
    )?;
    Ok(GadgetGame {
        instance,
        wp: GadgetWp {
            formula: formula.clone(),
        },
        epsilon,
    })
}

pub fn gadget_probabilities(gg: &GadgetGame, profile: &Profile) -> Vec<f64> {
    crate::wp::win_probs(&gg.instance, &gg.wp, profile)
}

pub fn gadget_payoffs(gg: &GadgetGame, profile: &Profile) -> Vec<f64> {
    evaluate(&gg.instance, &gg.wp, profile).payoffs
}

/// First exact equilibrium of the gadget game in lexicographic order.
pub fn gadget_first_psne(gg: &GadgetGame, limits: SearchLimits) -> Result<Option<Profile>> {
    gg.instance.check_profile_space(limits)?;
    Ok(gg
        .instance
        .profiles()
        .find(|s| is_psne(&gg.instance, &gg.wp, s, 0.0)))
}

pub fn gadget_psne_exists(gg: &GadgetGame, limits: SearchLimits) -> Result<bool> {
    Ok(gadget_first_psne(gg, limits)?.is_some())
}

/// Equilibrium existence against satisfiability for one formula.
#[derive(Debug, Clone, PartialEq)]
pub struct SatComparison {
    pub label: String,
    pub formula: CnfFormula,
    pub satisfiable: bool,
    pub psne_exists: bool,
    /// An equilibrium, when one exists.
    pub psne: Option<Profile>,
    /// A satisfying assignment, as a profile, when one exists.
    pub model: Option<Profile>,
    /// For a satisfiable formula without equilibrium: the deviation that
    /// breaks the first satisfying profile.
    pub broken_by: Option<Deviation>,
}

impl SatComparison {
    pub fn agrees(&self) -> bool {
        self.satisfiable == self.psne_exists
    }
}

impl fmt::Display for SatComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Option<Profile>| p.as_ref().map_or("-".to_string(), Profile::to_string);
        write!(
            f,
            "{}: vars={} clauses={} sat={} psne={} agree={} psne_profile={} model={}",
            self.label,
            self.formula.num_vars(),
            self.formula.clauses().len(),
            self.satisfiable,
            self.psne_exists,
            self.agrees(),
            show(&self.psne),
            show(&self.model)
        )?;
        if let Some(d) = &self.broken_by {
            write!(f, " broken_by=[{d}]")?;
        }
        Ok(())
    }
}

pub fn compare_with_sat(
    label: impl Into<String>,
    formula: &CnfFormula,
    epsilon: f64,
    limits: SearchLimits,
) -> Result<SatComparison> {
    let gg = build_gadget(formula, epsilon)?;
    let psne = gadget_first_psne(&gg, limits)?;
    let model = formula.solve().map(|a| profile_of(&a));
    let broken_by = match (&psne, &model) {
        (None, Some(s)) => improving_deviation(&gg.instance, &gg.wp, s, 0.0),
        _ => None,
    };
    Ok(SatComparison {
        label: label.into(),
        formula: formula.clone(),
        satisfiable: model.is_some(),
        psne_exists: psne.is_some(),
        psne,
        model,
        broken_by,
    })
}

/// Aggregate of a batch of comparisons; disagreements are findings about
/// the reduction, reported rather than hidden.
#[derive(Debug, Clone, PartialEq)]
pub struct SatReport {
    pub rows: Vec<SatComparison>,
}

impl SatReport {
    pub fn agreements(&self) -> usize {
        self.rows.iter().filter(|r| r.agrees()).count()
    }

    pub fn findings(&self) -> impl Iterator<Item = &SatComparison> {
        self.rows.iter().filter(|r| !r.agrees())
    }

    /// Satisfiable formulas whose gadget has no equilibrium.
    pub fn sat_without_psne(&self) -> usize {
        self.findings().filter(|r| r.satisfiable).count()
    }

    /// Unsatisfiable formulas whose gadget has an equilibrium.
    pub fn psne_without_sat(&self) -> usize {
        self.findings().filter(|r| !r.satisfiable).count()
    }
}

impl fmt::Display for SatReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "formulas={} agree={} sat_without_psne={} psne_without_sat={}",
            self.rows.len(),
            self.agreements(),
            self.sat_without_psne(),
            self.psne_without_sat()
        )?;
        for r in &self.rows {
            let tag = if r.agrees() { "ok     " } else { "FINDING" };
            writeln!(f, "{tag} {r}")?;
        }
        Ok(())
    }
}

pub fn compare_batch(
    formulas: &[(String, CnfFormula)],
    epsilon: f64,
    limits: SearchLimits,
) -> Result<SatReport> {
    let rows = formulas
        .iter()
        .map(|(label, f)| compare_with_sat(label.clone(), f, epsilon, limits))
        .collect::<Result<_>>()?;
    Ok(SatReport { rows })
}
