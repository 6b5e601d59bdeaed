//! Exact moments of an innings total under the per-ball coin model.
//!
//! An innings ends in exactly one of two ways:
//!
//! * **all out**: the last wicket falls on ball `b` (`W <= b <= B`). The
//!   other `W - 1` wickets are spread over the first `b - 1` balls, leaving
//!   `b - W` scoring shots, with probability `C(b-1, W-1) p^(b-W) q^W`.
//! * **not all out**: all `B` balls are bowled and `w < W` wickets fall,
//!   leaving `B - w` scoring shots, with probability `C(B, w) p^(B-w) q^w`.
//!
//! The innings total is `r` times the number of scoring shots, so
//! `E(Y^k) = r^k E(N^k)` where `N` counts scoring shots. Each state
//! probability is evaluated in log space (binomial coefficients through
//! log-factorials) and the terms are accumulated with compensated summation,
//! so the sums stay accurate for any `B` and `W`, not just 300 and 10.

use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_factorial;

use crate::error::{Error, Result};
use crate::model::{BernoulliParams, InningsSpec};
use crate::sum::CompensatedSum;

/// Mean, standard deviation and raw moments of the innings total.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentSummary {
    pub mean: f64,
    pub sd: f64,
    /// `raw_moments[k]` is `E(Y^k)`; index 0 holds the total probability, 1.
    pub raw_moments: Vec<f64>,
}

impl MomentSummary {
    /// Builds a summary from published mean and standard deviation.
    pub fn from_mean_sd(mean: f64, sd: f64) -> Self {
        MomentSummary {
            mean,
            sd,
            raw_moments: vec![1.0, mean, sd * sd + mean * mean],
        }
    }

    pub fn variance(&self) -> f64 {
        self.sd * self.sd
    }

    /// `E(Y^k)`, if it was computed.
    pub fn raw_moment(&self, k: usize) -> Option<f64> {
        self.raw_moments.get(k).copied()
    }
}

/// One way an innings can finish.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerminalState {
    pub wickets: u32,
    pub balls: u32,
    pub probability: f64,
}

impl TerminalState {
    pub fn all_out(&self, spec: &InningsSpec) -> bool {
        self.wickets == spec.max_wickets()
    }

    /// Number of scoring shots in this state.
    pub fn scoring_balls(&self) -> u32 {
        self.balls - self.wickets
    }
}

#[derive(Debug, Clone, Copy)]
struct LogCoin {
    ln_p: f64,
    ln_q: f64,
}

impl LogCoin {
    fn new(params: &BernoulliParams) -> Self {
        LogCoin {
            ln_p: (-params.q()).ln_1p(),
            ln_q: params.q().ln(),
        }
    }

    /// ln(p^heads q^tails) with 0^0 = 1.
    fn ln_sequence(&self, heads: u32, tails: u32) -> f64 {
        ln_pow(self.ln_p, heads) + ln_pow(self.ln_q, tails)
    }
}

fn ln_pow(ln_base: f64, exp: u32) -> f64 {
    if exp == 0 {
        0.0
    } else {
        f64::from(exp) * ln_base
    }
}

fn ln_binomial(n: u32, k: u32) -> f64 {
    debug_assert!(k <= n);
    ln_factorial(u64::from(n)) - ln_factorial(u64::from(k)) - ln_factorial(u64::from(n - k))
}

fn all_out_ln_probability(coin: &LogCoin, spec: &InningsSpec, ball: u32) -> f64 {
    let w = spec.max_wickets();
    ln_binomial(ball - 1, w - 1) + coin.ln_sequence(ball - w, w)
}

fn not_all_out_ln_probability(coin: &LogCoin, spec: &InningsSpec, wickets: u32) -> f64 {
    let b = spec.max_balls();
    ln_binomial(b, wickets) + coin.ln_sequence(b - wickets, wickets)
}

fn weighted(count: u32, k: u32, ln_probability: f64) -> f64 {
    if count == 0 && k > 0 {
        return 0.0;
    }
    let k = i32::try_from(k).expect("moment order fits in i32");
    f64::from(count).powi(k) * ln_probability.exp()
}

/// `E(N^k; all out)` for the scoring-shot count `N`.
fn all_out_count_term(params: &BernoulliParams, spec: &InningsSpec, k: u32) -> f64 {
    let coin = LogCoin::new(params);
    let w = spec.max_wickets();
    (w..=spec.max_balls())
        .map(|ball| weighted(ball - w, k, all_out_ln_probability(&coin, spec, ball)))
        .sum::<CompensatedSum>()
        .total()
}

/// `E(N^k; not all out)` for the scoring-shot count `N`.
fn not_all_out_count_term(params: &BernoulliParams, spec: &InningsSpec, k: u32) -> f64 {
    let coin = LogCoin::new(params);
    let b = spec.max_balls();
    (0..spec.max_wickets())
        .map(|w| weighted(b - w, k, not_all_out_ln_probability(&coin, spec, w)))
        .sum::<CompensatedSum>()
        .total()
}

fn count_moment(params: &BernoulliParams, spec: &InningsSpec, k: u32) -> f64 {
    let mut acc = CompensatedSum::new();
    acc += all_out_count_term(params, spec, k);
    acc += not_all_out_count_term(params, spec, k);
    acc.total()
}

fn run_scale(params: &BernoulliParams, k: u32) -> f64 {
    params
        .r()
        .powi(i32::try_from(k).expect("moment order fits in i32"))
}

/// Contribution of the all-out innings to `E(Y^k)`:
/// `r^k * sum_{b=W}^{B} (b-W)^k C(b-1, W-1) p^(b-W) q^W`.
pub fn all_out_term(params: &BernoulliParams, spec: &InningsSpec, k: u32) -> f64 {
    run_scale(params, k) * all_out_count_term(params, spec, k)
}

/// Contribution of innings that use every ball to `E(Y^k)`:
/// `r^k * sum_{w=0}^{W-1} (B-w)^k C(B, w) p^(B-w) q^w`.
pub fn not_all_out_term(params: &BernoulliParams, spec: &InningsSpec, k: u32) -> f64 {
    run_scale(params, k) * not_all_out_count_term(params, spec, k)
}

/// `E(Y^k)` for the innings total `Y`. `k = 0` gives the total probability.
pub fn raw_moment(params: &BernoulliParams, spec: &InningsSpec, k: u32) -> f64 {
    run_scale(params, k) * count_moment(params, spec, k)
}

/// Mean and standard deviation of the innings total.
///
/// A variance below `-1e-6 * mean^2` means the two moments cancelled
/// catastrophically and is reported as an error; smaller negative values
/// are rounding noise and give `sd = 0`.
pub fn moment_summary(params: &BernoulliParams, spec: &InningsSpec) -> Result<MomentSummary> {
    let c1 = count_moment(params, spec, 1);
    let c2 = count_moment(params, spec, 2);
    let variance = c2 - c1 * c1;
    let tolerance = 1e-6 * c1 * c1;
    if variance < -tolerance {
        let scale = run_scale(params, 2);
        return Err(Error::NumericalInstability {
            variance: scale * variance,
            tolerance: scale * tolerance,
        });
    }
    let r = params.r();
    Ok(MomentSummary {
        mean: r * c1,
        sd: r * variance.max(0.0).sqrt(),
        raw_moments: vec![count_moment(params, spec, 0), r * c1, r * r * c2],
    })
}

/// Probability that the innings ends with `wickets` down after `balls_used`
/// deliveries.
///
/// Legal states are all out (`wickets = W`, `W <= balls_used <= B`) or the
/// full quota bowled (`wickets < W`, `balls_used = B`).
pub fn outcome_probability(
    params: &BernoulliParams,
    spec: &InningsSpec,
    wickets: u32,
    balls_used: u32,
) -> Result<f64> {
    let coin = LogCoin::new(params);
    let (w, b) = (spec.max_wickets(), spec.max_balls());
    let ln_probability = if wickets == w && (w..=b).contains(&balls_used) {
        all_out_ln_probability(&coin, spec, balls_used)
    } else if wickets < w && balls_used == b {
        not_all_out_ln_probability(&coin, spec, wickets)
    } else {
        return Err(Error::InvalidState {
            wickets,
            balls: balls_used,
        });
    };
    Ok(ln_probability.exp())
}

/// Every terminal state with its probability: all-out states by ball, then
/// full-quota states by wickets lost.
pub fn terminal_states(
    params: &BernoulliParams,
    spec: &InningsSpec,
) -> impl Iterator<Item = TerminalState> {
    let coin = LogCoin::new(params);
    let spec = *spec;
    let (w, b) = (spec.max_wickets(), spec.max_balls());
    let all_out = (w..=b).map(move |ball| TerminalState {
        wickets: w,
        balls: ball,
        probability: all_out_ln_probability(&coin, &spec, ball).exp(),
    });
    let survived = (0..w).map(move |wickets| TerminalState {
        wickets,
        balls: b,
        probability: not_all_out_ln_probability(&coin, &spec, wickets).exp(),
    });
    all_out.chain(survived)
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    fn params(r: f64, q: f64) -> BernoulliParams {
        BernoulliParams::new(r, q).unwrap()
    }

    fn tiny() -> InningsSpec {
        InningsSpec::new(3, 1).unwrap()
    }

    fn richards() -> BernoulliParams {
        params(0.9020, 0.9020 / 47.0)
    }

    fn ambrose() -> BernoulliParams {
        params(3.48 / 6.0, 3.48 / 6.0 / 24.12)
    }

    // Frozen from enumerating the eight toss sequences of length 3:
    // T (p=.5, 0 runs), HT (.25, 1), HHT (.125, 2), HHH (.125, 3).
    #[test]
    fn three_ball_one_wicket_terms() {
        let coin = params(1.0, 0.5);
        assert_relative_eq!(all_out_term(&coin, &tiny(), 1), 0.5, max_relative = 1e-15);
        assert_relative_eq!(
            not_all_out_term(&coin, &tiny(), 1),
            0.375,
            max_relative = 1e-15
        );
        assert_relative_eq!(raw_moment(&coin, &tiny(), 1), 0.875, max_relative = 1e-15);
        // E(Y^2) = .25 * 1 + .125 * 4 + .125 * 9
        assert_relative_eq!(raw_moment(&coin, &tiny(), 2), 1.875, max_relative = 1e-15);
    }

    #[test]
    fn all_out_term_degenerate_coins() {
        let odi = InningsSpec::ODI;
        assert_eq!(all_out_term(&params(0.9, 1.0), &odi, 1), 0.0);
        assert_eq!(all_out_term(&params(0.9, 1.0), &odi, 3), 0.0);
        assert_eq!(all_out_term(&params(0.9, 0.0), &odi, 1), 0.0);
    }

    #[test]
    fn not_all_out_term_degenerate_coins() {
        let odi = InningsSpec::ODI;
        assert_relative_eq!(
            not_all_out_term(&params(0.9, 0.0), &odi, 1),
            270.0,
            max_relative = 1e-15
        );
        assert_eq!(not_all_out_term(&params(0.9, 1.0), &odi, 1), 0.0);
    }

    #[test]
    fn richards_mean() {
        let mean = raw_moment(&richards(), &InningsSpec::ODI, 1);
        assert!((mean - 262.8434).abs() < 5e-4, "{mean}");
    }

    #[test]
    fn ambrose_mean() {
        let mean = raw_moment(&ambrose(), &InningsSpec::ODI, 1);
        assert!((mean - 164.3869).abs() < 5e-4, "{mean}");
    }

    #[test]
    fn summaries_match_published_output() {
        let s = moment_summary(&richards(), &InningsSpec::ODI).unwrap();
        assert!((s.mean - 262.8434).abs() < 5e-4);
        assert!((s.sd - 13.75331).abs() < 5e-5, "{}", s.sd);
        let s = moment_summary(&ambrose(), &InningsSpec::ODI).unwrap();
        assert!((s.mean - 164.3869).abs() < 5e-4);
        assert!((s.sd - 15.84270).abs() < 5e-5, "{}", s.sd);
    }

    #[test]
    fn deterministic_innings_has_zero_sd() {
        let s = moment_summary(&params(0.75, 0.0), &InningsSpec::ODI).unwrap();
        assert_eq!(s.mean, 225.0);
        assert_eq!(s.sd, 0.0);
        let s = moment_summary(&params(0.75, 1.0), &InningsSpec::ODI).unwrap();
        assert_eq!(s.mean, 0.0);
        assert_eq!(s.sd, 0.0);
    }

    #[test]
    fn summary_moments_are_consistent() {
        let s = moment_summary(&richards(), &InningsSpec::ODI).unwrap();
        assert_relative_eq!(s.raw_moments[0], 1.0, max_relative = 1e-12);
        let var = s.raw_moments[2] - s.raw_moments[1] * s.raw_moments[1];
        assert_relative_eq!(s.variance(), var, max_relative = 1e-9);
        assert_eq!(s.raw_moment(1), Some(s.mean));
        assert_eq!(s.raw_moment(3), None);
    }

    #[test]
    fn outcome_probability_examples() {
        let odi = InningsSpec::ODI;
        assert_eq!(
            outcome_probability(&params(1.0, 1.0), &odi, 10, 10).unwrap(),
            1.0
        );
        assert_eq!(
            outcome_probability(&params(1.0, 1.0), &odi, 10, 11).unwrap(),
            0.0
        );
        assert_relative_eq!(
            outcome_probability(&params(1.0, 0.5), &tiny(), 1, 2).unwrap(),
            0.25,
            max_relative = 1e-15
        );
    }

    #[test]
    fn outcome_probability_rejects_illegal_states() {
        let coin = params(1.0, 0.2);
        let odi = InningsSpec::ODI;
        for (w, b) in [(10, 9), (10, 301), (11, 300), (9, 299), (0, 0), (3, 150)] {
            assert_eq!(
                outcome_probability(&coin, &odi, w, b),
                Err(Error::InvalidState {
                    wickets: w,
                    balls: b
                })
            );
        }
    }

    #[test]
    fn terminal_states_cover_the_partition() {
        let coin = params(1.0, 0.1);
        let spec = InningsSpec::new(20, 4).unwrap();
        let states: Vec<_> = terminal_states(&coin, &spec).collect();
        assert_eq!(states.len(), (20 - 4 + 1) + 4);
        let total: CompensatedSum = states.iter().map(|s| s.probability).sum();
        assert!((total.total() - 1.0).abs() < 1e-14);
        for s in &states {
            let direct = outcome_probability(&coin, &spec, s.wickets, s.balls).unwrap();
            assert_eq!(direct, s.probability);
        }
        assert!(states[0].all_out(&spec));
        assert_eq!(states[0].scoring_balls(), 0);
    }

    #[test]
    fn higher_moments_are_available() {
        // Three balls, one wicket: E(Y^3) = .25 + .125 * 8 + .125 * 27
        assert_relative_eq!(
            raw_moment(&params(1.0, 0.5), &tiny(), 3),
            4.625,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            raw_moment(&params(2.0, 0.5), &tiny(), 3),
            8.0 * 4.625,
            max_relative = 1e-15
        );
    }

    #[test]
    fn survives_large_formats() {
        // Binomial coefficients here overflow f64 if formed directly.
        let spec = InningsSpec::new(5000, 400).unwrap();
        let coin = params(1.0, 0.05);
        let total = raw_moment(&coin, &spec, 0);
        assert!((total - 1.0).abs() < 1e-10, "{total}");
        let s = moment_summary(&coin, &spec).unwrap();
        assert!(s.mean.is_finite() && s.mean > 0.0 && s.mean <= 5000.0);
        assert!(s.sd.is_finite() && s.sd > 0.0);
    }
}
