//! Pure-strategy analysis of election games between parties.
//!
//! Each party fields one of its candidates; a winning-probability rule turns
//! the fielded candidates' social utilities into a lottery, and each party's
//! supporters receive the expected utility of the winner. The crate decides
//! and enumerates pure Nash equilibria, searches for them in time
//! exponential only in the number of undecided parties, measures price of
//! anarchy and stability, analyses coalitions and builds the SAT gadget used
//! to show the existence problem is hard.
//!
//! ```
//! use election_game::{enumerate_psne, fixtures, Hardmax, SearchLimits};
//!
//! let g = fixtures::table1();
//! let eq = enumerate_psne(&g, &Hardmax, 0.0, SearchLimits::default()).unwrap();
//! assert_eq!(eq.len(), 4);
//! assert_eq!(eq[0].to_string(), "(1,1,1)");
//! ```

pub mod coalition;
pub mod efficiency;
pub mod equilibria;
pub mod error;
pub mod fixtures;
pub mod fpt;
pub mod generate;
pub mod io;
pub mod model;
pub mod payoff;
pub mod sat;
pub mod wp;

pub use coalition::{
    coalition_incentive_delta, secce_transform, CoalitionGame, CoalitionStructure, IncentiveDelta,
};
pub use efficiency::{optimal_profile, price_of_anarchy, EfficiencyReport};
pub use equilibria::{
    approx_ratio_all_first, best_response, check_dominance, deviation_graph, enumerate_psne,
    improving_deviation, is_psne, ApproxReport, Deviation, DeviationGraph, DominanceCase,
};
pub use error::{Error, Result};
pub use fpt::{fpt_psne, FptOptions, FptOutcome, ReducedGame};
pub use generate::{generate, EgoismMode, EnsembleSpec, GeneratorConfig};
pub use model::{Candidate, GameInstance, InstanceData, Party, Profile, SearchLimits, Surpass};
pub use payoff::{evaluate, payoff, social_welfare, Evaluation};
pub use sat::{build_gadget, CnfFormula, GadgetGame, GadgetWp};
pub use wp::{check_monotone, Hardmax, Softmax, WinProb};
