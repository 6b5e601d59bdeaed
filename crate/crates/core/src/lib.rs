//! Evaluating cricketers by treating every delivery as a coin toss.
//!
//! A batsman (or bowler) is reduced to two numbers: `r`, the runs a scoring
//! ball is worth, and `q`, the chance a ball takes a wicket. Imagining a team
//! of eleven identical copies of that player, [`analytical`] gives the exact
//! moments of the runs the team makes in a limited-overs innings,
//! [`metrics`] turns mean and spread into a reward-to-risk ratio, and
//! [`simulate`] checks the same numbers by Monte Carlo.
//!
//! ```
//! use bernoulli_cricket::{evaluate_player, InningsSpec, PlayerRecord, ReplacementConstants};
//!
//! let richards = PlayerRecord::batsman("Viv Richards", 47.00, 90.20)?;
//! let eval = evaluate_player(&richards, &InningsSpec::ODI, &ReplacementConstants::default())?;
//! assert!((eval.summary.mean - 262.8434).abs() < 1e-3);
//! assert!((eval.summary.sd - 13.75331).abs() < 1e-4);
//! # Ok::<(), bernoulli_cricket::Error>(())
//! ```
//!
//! The `examples/` directory has one runnable program per capability; see
//! the README for the list.

pub mod analytical;
pub mod cli;
pub mod error;
pub mod ingest;
pub mod metrics;
pub mod model;
pub mod simulate;
pub mod sum;

pub use analytical::{
    all_out_term, moment_summary, not_all_out_term, outcome_probability, raw_moment,
    terminal_states, MomentSummary, TerminalState,
};
pub use error::{Error, Result};
pub use ingest::{parse_players, read_players, write_players, PlayerFile};
pub use metrics::{
    evaluate_player, poisson_wickets, rank_players, reward_risk_ratio, Evaluation, Ranking,
    ReplacementConstants,
};
pub use model::{
    balls_per_wicket, dismissal_probability, runs_per_ball, BernoulliParams, InningsSpec,
    PlayerRecord, Role,
};
pub use simulate::{
    run_ensemble, run_ensemble_with_workers, simulate_bernoulli_innings, simulate_die_innings,
    DieOutcome, DiePmf, Model, SimulationResult,
};
