//! Career statistics and the two-parameter per-ball model derived from them.
//!
//! Every delivery is a coin toss: heads is a scoring shot worth `r` runs,
//! tails is a dismissal with probability `q`. Batsmen and bowlers are both
//! mapped into the same `(r, q)` space here so nothing downstream needs to
//! know which role a player had.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    /// `rate` is the strike rate: runs per 100 balls.
    Batsman,
    /// `rate` is the economy rate: runs conceded per 6 balls.
    Bowler,
}

impl Role {
    /// Balls over which `rate` is quoted for this role.
    pub fn rate_basis(self) -> f64 {
        match self {
            Role::Batsman => 100.0,
            Role::Bowler => 6.0,
        }
    }

    /// Converts a published rate into expected runs per ball.
    pub fn runs_per_ball(self, rate: f64) -> f64 {
        rate / self.rate_basis()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Role::Batsman => "batsman",
            Role::Bowler => "bowler",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "batsman" => Ok(Role::Batsman),
            "bowler" => Ok(Role::Bowler),
            other => Err(Error::Usage(format!(
                "unknown role `{other}` (expected batsman or bowler)"
            ))),
        }
    }
}

/// A player's published career figures for one role.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlayerRecord {
    name: String,
    role: Role,
    avg: f64,
    rate: f64,
}

impl PlayerRecord {
    pub fn new(name: impl Into<String>, role: Role, avg: f64, rate: f64) -> Result<Self> {
        if !(avg.is_finite() && avg > 0.0) {
            return Err(Error::InvalidStats("avg must be positive".into()));
        }
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::InvalidStats("rate must be positive".into()));
        }
        Ok(PlayerRecord {
            name: name.into(),
            role,
            avg,
            rate,
        })
    }

    pub fn batsman(name: impl Into<String>, avg: f64, strike_rate: f64) -> Result<Self> {
        Self::new(name, Role::Batsman, avg, strike_rate)
    }

    pub fn bowler(name: impl Into<String>, avg: f64, economy: f64) -> Result<Self> {
        Self::new(name, Role::Bowler, avg, economy)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn role(&self) -> Role {
        self.role
    }

    /// Runs scored (or conceded) per dismissal.
    pub fn avg(&self) -> f64 {
        self.avg
    }

    /// Strike rate for a batsman, economy rate for a bowler.
    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn runs_per_ball(&self) -> f64 {
        runs_per_ball(self)
    }

    pub fn dismissal_probability(&self) -> Result<f64> {
        dismissal_probability(self)
    }

    pub fn balls_per_wicket(&self) -> f64 {
        balls_per_wicket(self)
    }

    pub fn bernoulli_params(&self) -> Result<BernoulliParams> {
        BernoulliParams::from_record(self)
    }
}

/// Expected runs per ball: `sr / 100` for batsmen, `econ / 6` for bowlers.
pub fn runs_per_ball(record: &PlayerRecord) -> f64 {
    record.role.runs_per_ball(record.rate)
}

/// Per-ball dismissal probability `q = r / avg`.
///
/// Figures that would need `q > 1` are rejected rather than clamped.
pub fn dismissal_probability(record: &PlayerRecord) -> Result<f64> {
    let q = runs_per_ball(record) / record.avg;
    if q > 1.0 {
        return Err(Error::InvalidStats(format!(
            "{}: runs per ball {} exceeds average {} (dismissal probability {q} > 1)",
            record.name,
            runs_per_ball(record),
            record.avg
        )));
    }
    Ok(q)
}

/// Mean deliveries between dismissals, the reciprocal of `q`.
pub fn balls_per_wicket(record: &PlayerRecord) -> f64 {
    record.role.rate_basis() * record.avg / record.rate
}

/// The per-ball coin: a scoring shot worth `r` runs with probability `p`,
/// a dismissal with probability `q = 1 - p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BernoulliParams {
    r: f64,
    q: f64,
}

impl BernoulliParams {
    pub fn new(runs_per_scoring_ball: f64, dismissal_probability: f64) -> Result<Self> {
        let (r, q) = (runs_per_scoring_ball, dismissal_probability);
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::InvalidStats(format!(
                "runs per scoring ball must be finite and nonnegative, got {r}"
            )));
        }
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::InvalidStats(format!(
                "dismissal probability must lie in [0, 1], got {q}"
            )));
        }
        Ok(BernoulliParams { r, q })
    }

    pub fn from_record(record: &PlayerRecord) -> Result<Self> {
        Self::new(runs_per_ball(record), dismissal_probability(record)?)
    }

    /// Runs credited to each scoring ball.
    pub fn r(&self) -> f64 {
        self.r
    }

    /// Dismissal probability per ball.
    pub fn q(&self) -> f64 {
        self.q
    }

    /// Scoring-shot probability per ball.
    pub fn p(&self) -> f64 {
        1.0 - self.q
    }

    /// Same dismissal probability, different run value.
    pub fn with_runs(&self, r: f64) -> Result<Self> {
        Self::new(r, self.q)
    }
}

/// Format limits for one innings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InningsSpec {
    max_balls: u32,
    max_wickets: u32,
}

impl InningsSpec {
    /// One-day international: 50 overs, 10 wickets.
    pub const ODI: InningsSpec = InningsSpec {
        max_balls: 300,
        max_wickets: 10,
    };

    /// Twenty20: 20 overs, 10 wickets.
    pub const T20: InningsSpec = InningsSpec {
        max_balls: 120,
        max_wickets: 10,
    };

    pub fn new(max_balls: u32, max_wickets: u32) -> Result<Self> {
        if max_balls == 0 || max_wickets == 0 {
            return Err(Error::InvalidSpec(format!(
                "balls ({max_balls}) and wickets ({max_wickets}) must be positive"
            )));
        }
        if max_wickets > max_balls {
            return Err(Error::InvalidSpec(format!(
                "{max_wickets} wickets cannot all fall within {max_balls} balls"
            )));
        }
        Ok(InningsSpec {
            max_balls,
            max_wickets,
        })
    }

    pub fn max_balls(&self) -> u32 {
        self.max_balls
    }

    pub fn max_wickets(&self) -> u32 {
        self.max_wickets
    }
}

impl Default for InningsSpec {
    fn default() -> Self {
        InningsSpec::ODI
    }
}
