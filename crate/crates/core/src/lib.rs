//! Safety-level strategies versus Nash equilibria.
//!
//! Exact rational analysis of bimatrix games (maximin strategies, mixed and
//! pure equilibria, symmetric set-theoretic games), plus float models of
//! parallel-link load balancing and first-price auctions, and brute-force
//! oracles used to check all of it.

pub mod auction;
pub mod equilibria;
pub mod error;
pub mod game;
pub mod load_balancing;
pub mod oracles;
pub mod rational;
pub mod safety;
pub mod set_theoretic;
pub mod simplex;

pub use equilibria::{
    compare_safety_vs_nash, pure_equilibria, pure_equilibrium_cells, strictly_mixed_equilibrium,
    ComparisonReport, Equilibrium2x2, EquilibriumKind, NashBasis, NoMixedEquilibrium,
};
pub use error::{Error, Result};
pub use game::{
    make_aumann_game, make_leader_election, make_load_balancing_2x2, make_pure_safety_game,
    BimatrixGame, MixedStrategy, Player, StrategyProfile,
};
pub use load_balancing::{LoadBalancingFamily, RatioReport};
pub use rational::Rational;
pub use safety::{safety_level, safety_level_2x2, safety_level_lp, value_of, SafetyKind, SafetyReport};
pub use set_theoretic::{
    make_set_theoretic, make_three_candidate_vote, strictly_mixed_equilibrium_support_enum,
    transplant_safety_value, FullSupportEquilibrium, NoFullSupport, SetTheoreticGame,
};
