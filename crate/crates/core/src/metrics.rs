//! Player evaluation: Bernoulli runs, the reward-to-risk ratio against a
//! replacement-level team, and the Poisson wickets rate.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::analytical::{moment_summary, MomentSummary};
use crate::error::{Error, Result};
use crate::model::{BernoulliParams, InningsSpec, PlayerRecord, Role};

/// Baselines for the reward-to-risk ratio.
///
/// A team of replacement batsmen scores `(1 - scale) * dl_average`; a team of
/// replacement bowlers concedes `(1 + scale) * dl_average`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReplacementConstants {
    pub dl_average: f64,
    pub batsman_constant: f64,
    pub bowler_constant: f64,
    pub scale: f64,
}

impl ReplacementConstants {
    pub const DL_AVERAGE: f64 = 235.0;
    pub const SCALE: f64 = 0.2;

    pub fn from_dl_average(dl_average: f64, scale: f64) -> Self {
        ReplacementConstants {
            dl_average,
            batsman_constant: (1.0 - scale) * dl_average,
            bowler_constant: (1.0 + scale) * dl_average,
            scale,
        }
    }

    pub fn constant_for(&self, role: Role) -> f64 {
        match role {
            Role::Batsman => self.batsman_constant,
            Role::Bowler => self.bowler_constant,
        }
    }
}

impl Default for ReplacementConstants {
    fn default() -> Self {
        Self::from_dl_average(Self::DL_AVERAGE, Self::SCALE)
    }
}

/// Everything computed for one player.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub player: PlayerRecord,
    pub params: BernoulliParams,
    pub summary: MomentSummary,
    pub rrr: f64,
    /// Poisson rate of wickets over the full ball quota.
    pub expected_wickets: f64,
}

/// Sharpe-style ratio of excess runs over a replacement team to risk.
///
/// Batsmen are rewarded for scoring above `batsman_constant`, bowlers for
/// conceding below `bowler_constant`.
pub fn reward_risk_ratio(
    summary: &MomentSummary,
    role: Role,
    constants: &ReplacementConstants,
) -> Result<f64> {
    if summary.sd.is_nan() || summary.sd <= 0.0 {
        return Err(Error::DegenerateRisk { mean: summary.mean });
    }
    let excess = match role {
        Role::Batsman => summary.mean - constants.batsman_constant,
        Role::Bowler => constants.bowler_constant - summary.mean,
    };
    Ok(excess / summary.sd)
}

/// `λ = B q`, the mean number of dismissals in `B` balls when wickets are
/// treated as rare independent events. Not capped at `W`.
pub fn poisson_wickets(params: &BernoulliParams, spec: &InningsSpec) -> f64 {
    f64::from(spec.max_balls()) * params.q()
}

pub fn evaluate_player(
    record: &PlayerRecord,
    spec: &InningsSpec,
    constants: &ReplacementConstants,
) -> Result<Evaluation> {
    let params = record.bernoulli_params()?;
    let summary = moment_summary(&params, spec)?;
    let rrr = reward_risk_ratio(&summary, record.role(), constants)?;
    Ok(Evaluation {
        player: record.clone(),
        params,
        summary,
        rrr,
        expected_wickets: poisson_wickets(&params, spec),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkippedPlayer {
    pub name: String,
    pub error: Error,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Ranking {
    pub evaluations: Vec<Evaluation>,
    pub skipped: Vec<SkippedPlayer>,
}

/// Best first: RRR descending, then mean descending, then name ascending.
pub fn rank_order(a: &Evaluation, b: &Evaluation) -> Ordering {
    b.rrr
        .total_cmp(&a.rrr)
        .then_with(|| b.summary.mean.total_cmp(&a.summary.mean))
        .then_with(|| a.player.name().cmp(b.player.name()))
}

/// Evaluates and orders players. Records that fail evaluation are listed in
/// `skipped` instead of aborting the ranking.
pub fn rank_players(
    records: &[PlayerRecord],
    spec: &InningsSpec,
    constants: &ReplacementConstants,
) -> Result<Ranking> {
    if records.is_empty() {
        return Err(Error::NoPlayers);
    }
    let mut ranking = Ranking::default();
    for record in records {
        match evaluate_player(record, spec, constants) {
            Ok(eval) => ranking.evaluations.push(eval),
            Err(error) => ranking.skipped.push(SkippedPlayer {
                name: record.name().to_string(),
                error,
            }),
        }
    }
    ranking.evaluations.sort_by(rank_order);
    Ok(ranking)
}

/// Rounds to `places` decimals, ties to even, as printed tables do.
pub fn round_half_even(x: f64, places: i32) -> f64 {
    let scale = 10f64.powi(places);
    (x * scale).round_ties_even() / scale
}
