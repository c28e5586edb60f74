//! Seeded random instances.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, so a seed
//! reproduces the same instance on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Candidate, GameInstance, InstanceData, Party};

/// Upper end of the raw utility scale before scaling to beta.
const RAW_SCALE: f64 = 100.0;

/// Redraws allowed before a configuration is declared infeasible.
const MAX_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EgoismMode {
    /// Utilities drawn independently; no structural guarantee.
    None,
    /// Every candidate beats every rival candidate for its own supporters.
    #[default]
    Egoistic,
    /// Every candidate beats the sum of the best rival candidates.
    StronglyEgoistic,
}

impl std::str::FromStr for EgoismMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(EgoismMode::None),
            "egoistic" => Ok(EgoismMode::Egoistic),
            "strongly-egoistic" | "strong" => Ok(EgoismMode::StronglyEgoistic),
            _ => Err(Error::InvalidParameter(format!(
                "unknown egoism mode {s:?} (none, egoistic, strongly-egoistic)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    /// Candidate count of each party; its length is the number of parties.
    pub candidates: Vec<usize>,
    pub beta: f64,
    pub mode: EgoismMode,
    pub seed: u64,
}

impl GeneratorConfig {
    /// `parties` parties with `candidates` candidates each.
    pub fn uniform(
        parties: usize,
        candidates: usize,
        beta: f64,
        mode: EgoismMode,
        seed: u64,
    ) -> Self {
        GeneratorConfig {
            candidates: vec![candidates; parties],
            beta,
            mode,
            seed,
        }
    }
}

/// Draws an instance.
///
/// In egoistic mode each party gets a threshold `c`; what its supporters get
/// from rival candidates is drawn from `[0, c)` and from its own candidates
/// from `(c, c + 10%]`. Own candidates then differ little for their own
/// supporters while social utilities spread, the regime where equilibria
/// can fail to exist. In strongly egoistic mode own utilities are drawn above
/// the sum of the best rival draws. The instance is then scaled down so that
/// no social utility exceeds beta, and the predicate is re-checked.
pub fn generate(cfg: &GeneratorConfig) -> Result<GameInstance> {
    let m = cfg.candidates.len();
    if m < 2 {
        return Err(Error::TooFewParties(m));
    }
    if let Some(i) = cfg.candidates.iter().position(|&n| n == 0) {
        return Err(Error::EmptyParty { party: i });
    }
    if !(cfg.beta.is_finite() && cfg.beta >= 1.0) {
        return Err(Error::InvalidBeta(cfg.beta));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..MAX_ATTEMPTS {
        let raw = draw(&mut rng, &cfg.candidates, cfg.mode);
        let g = GameInstance::validate(scale(raw, cfg.beta), true)?;
        let ok = match cfg.mode {
            EgoismMode::None => true,
            EgoismMode::Egoistic => g.is_egoistic(),
            EgoismMode::StronglyEgoistic => g.is_strongly_egoistic(),
        };
        if ok {
            return Ok(g);
        }
    }
    Err(Error::InfeasibleConfig(format!(
        "no draw satisfied {:?} after {MAX_ATTEMPTS} attempts (beta = {})",
        cfg.mode, cfg.beta
    )))
}

/// Uniform draw from `(lo, hi]`.
fn open_closed(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    hi - (hi - lo) * rng.gen::<f64>()
}

/// `rows[i][s][j]`: utility of party `j`'s supporters for candidate `s` of party `i`.
fn draw(rng: &mut ChaCha8Rng, counts: &[usize], mode: EgoismMode) -> Vec<Vec<Vec<f64>>> {
    let m = counts.len();
    let mut rows: Vec<Vec<Vec<f64>>> = counts.iter().map(|&n| vec![vec![0.0; m]; n]).collect();
    match mode {
        EgoismMode::None => {
            for row in rows.iter_mut().flatten() {
                for u in row.iter_mut() {
                    *u = rng.gen_range(0.0..RAW_SCALE);
                }
            }
        }
        EgoismMode::Egoistic => {
            for j in 0..m {
                let c = rng.gen_range(0.1 * RAW_SCALE..0.5 * RAW_SCALE);
                let top = c * rng.gen_range(1.01..1.1);
                for (i, party) in rows.iter_mut().enumerate() {
                    for cand in party.iter_mut() {
                        cand[j] = if i == j {
                            open_closed(rng, c, top)
                        } else {
                            rng.gen_range(0.0..c)
                        };
                    }
                }
            }
        }
        EgoismMode::StronglyEgoistic => {
            for j in 0..m {
                let c = rng.gen_range(0.01 * RAW_SCALE..0.2 * RAW_SCALE);
                let mut rival_best = 0.0;
                for (i, party) in rows.iter_mut().enumerate() {
                    if i == j {
                        continue;
                    }
                    let mut best: f64 = 0.0;
                    for cand in party.iter_mut() {
                        cand[j] = rng.gen_range(0.0..c);
                        best = best.max(cand[j]);
                    }
                    rival_best += best;
                }
                for cand in rows[j].iter_mut() {
                    cand[j] = open_closed(rng, rival_best, rival_best + RAW_SCALE);
                }
            }
        }
    }
    rows
}

fn scale(rows: Vec<Vec<Vec<f64>>>, beta: f64) -> InstanceData {
    let max_social = rows
        .iter()
        .flatten()
        .map(|c| c.iter().sum::<f64>())
        .fold(0.0, f64::max);
    let factor = if max_social > beta {
        beta / max_social
    } else {
        1.0
    };
    InstanceData {
        beta,
        parties: rows
            .into_iter()
            .map(|cands| {
                Party::new(
                    cands
                        .into_iter()
                        .map(|u| {
                            Candidate::new(u.into_iter().map(|x| x * factor).collect::<Vec<_>>())
                        })
                        .collect(),
                )
            })
            .collect(),
    }
}

/// A family of instances with varying shapes, for property sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec {
    pub count: usize,
    pub min_parties: usize,
    pub max_parties: usize,
    pub max_candidates: usize,
    pub beta: f64,
    pub mode: EgoismMode,
    pub seed: u64,
}

impl EnsembleSpec {
    /// Instance `k` with its own seed; party and candidate counts are drawn
    /// uniformly from the ensemble's ranges.
    pub fn instance(&self, k: usize) -> Result<(u64, GameInstance)> {
        let seed = self
            .seed
            .wrapping_mul(0x9e37_79b9_7f4a_7c15)
            .wrapping_add(k as u64);
        let mut shape = ChaCha8Rng::seed_from_u64(seed ^ 0x5a5a_5a5a);
        let m = shape.gen_range(self.min_parties..=self.max_parties);
        let candidates = (0..m)
            .map(|_| shape.gen_range(1..=self.max_candidates))
            .collect();
        let cfg = GeneratorConfig {
            candidates,
            beta: self.beta,
            mode: self.mode,
            seed,
        };
        Ok((seed, generate(&cfg)?))
    }

    pub fn instances(&self) -> impl Iterator<Item = Result<(u64, GameInstance)>> + '_ {
        (0..self.count).map(move |k| self.instance(k))
    }
}
