//! Monte Carlo innings under the binary coin model and under categorical
//! per-ball dice (book cricket, the seven-outcome die).
//!
//! Ensembles are reproducible: innings `i` of an ensemble seeded with `s`
//! draws from `ChaCha8Rng::seed_from_u64(s)` switched to stream `i`, and the
//! per-innings results are aggregated in index order. The result therefore
//! does not depend on how many worker threads played the innings.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{BernoulliParams, InningsSpec};
use crate::sum::CompensatedSum;

/// Tolerance on the probability total accepted from callers. Accepted pmfs
/// are renormalized so the stored total is 1 to rounding.
pub const PMF_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DieOutcome {
    Out,
    Run0,
    Run1,
    Run2,
    Run3,
    Run4,
    Run6,
}

impl DieOutcome {
    pub const ALL: [DieOutcome; 7] = [
        DieOutcome::Out,
        DieOutcome::Run0,
        DieOutcome::Run1,
        DieOutcome::Run2,
        DieOutcome::Run3,
        DieOutcome::Run4,
        DieOutcome::Run6,
    ];

    pub fn runs(self) -> u32 {
        match self {
            DieOutcome::Out | DieOutcome::Run0 => 0,
            DieOutcome::Run1 => 1,
            DieOutcome::Run2 => 2,
            DieOutcome::Run3 => 3,
            DieOutcome::Run4 => 4,
            DieOutcome::Run6 => 6,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DieOutcome::Out => "out",
            DieOutcome::Run0 => "0",
            DieOutcome::Run1 => "1",
            DieOutcome::Run2 => "2",
            DieOutcome::Run3 => "3",
            DieOutcome::Run4 => "4",
            DieOutcome::Run6 => "6",
        }
    }

    /// The scoring face worth exactly `runs`, if the die has one.
    pub fn scoring(runs: u32) -> Option<Self> {
        match runs {
            0 => Some(DieOutcome::Run0),
            1 => Some(DieOutcome::Run1),
            2 => Some(DieOutcome::Run2),
            3 => Some(DieOutcome::Run3),
            4 => Some(DieOutcome::Run4),
            6 => Some(DieOutcome::Run6),
            _ => None,
        }
    }
}

impl fmt::Display for DieOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for DieOutcome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        DieOutcome::ALL
            .into_iter()
            .find(|o| o.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::InvalidPmf(format!(
                    "unknown outcome `{s}` (expected one of out,0,1,2,3,4,6)"
                ))
            })
    }
}

/// A categorical distribution over per-ball outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct DiePmf {
    outcomes: Vec<(DieOutcome, f64)>,
    cumulative: Vec<f64>,
    last_live: usize,
}

impl DiePmf {
    pub fn new(outcomes: Vec<(DieOutcome, f64)>) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(Error::InvalidPmf("no outcomes".into()));
        }
        for (i, (label, prob)) in outcomes.iter().enumerate() {
            if !(prob.is_finite() && (0.0..=1.0).contains(prob)) {
                return Err(Error::InvalidPmf(format!(
                    "probability of `{label}` must lie in [0, 1], got {prob}"
                )));
            }
            if outcomes[..i].iter().any(|(other, _)| other == label) {
                return Err(Error::InvalidPmf(format!("outcome `{label}` repeated")));
            }
        }
        let total = outcomes
            .iter()
            .map(|(_, p)| p)
            .sum::<CompensatedSum>()
            .total();
        if (total - 1.0).abs() > PMF_SUM_TOLERANCE {
            return Err(Error::InvalidPmf(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        let outcomes: Vec<_> = outcomes.into_iter().map(|(o, p)| (o, p / total)).collect();
        let mut running = CompensatedSum::new();
        let cumulative = outcomes
            .iter()
            .map(|(_, p)| {
                running += *p;
                running.total()
            })
            .collect();
        let last_live = outcomes.iter().rposition(|(_, p)| *p > 0.0).unwrap_or(0);
        Ok(DiePmf {
            outcomes,
            cumulative,
            last_live,
        })
    }

    /// Classic book cricket: out, 1, 2, 4 and 6 each with probability 1/5.
    pub fn book_cricket() -> Self {
        let fifth = 0.2;
        DiePmf::new(vec![
            (DieOutcome::Out, fifth),
            (DieOutcome::Run1, fifth),
            (DieOutcome::Run2, fifth),
            (DieOutcome::Run4, fifth),
            (DieOutcome::Run6, fifth),
        ])
        .expect("book cricket pmf is valid")
    }

    /// The binary coin as a two-faced die, when `r` is a face value.
    pub fn from_bernoulli(params: &BernoulliParams) -> Option<Self> {
        if params.r().fract() != 0.0 {
            return None;
        }
        let face = DieOutcome::scoring(params.r() as u32)?;
        DiePmf::new(vec![(DieOutcome::Out, params.q()), (face, params.p())]).ok()
    }

    /// Parses the inline form `label:prob,label:prob,...`.
    pub fn parse_inline(text: &str) -> Result<Self> {
        let pairs = text
            .split(',')
            .filter(|item| !item.trim().is_empty())
            .map(|item| parse_pair(item, ':'))
            .collect::<Result<Vec<_>>>()?;
        DiePmf::new(pairs)
    }

    /// Parses a `label = prob` block, one outcome per line. Blank lines and
    /// lines starting with `#` are ignored.
    pub fn parse_block(text: &str) -> Result<Self> {
        let pairs = text
            .lines()
            .map(str::trim)
            .filter(|line| !line.is_empty() && !line.starts_with('#'))
            .map(|line| parse_pair(line, '='))
            .collect::<Result<Vec<_>>>()?;
        DiePmf::new(pairs)
    }

    pub fn outcomes(&self) -> &[(DieOutcome, f64)] {
        &self.outcomes
    }

    pub fn probability(&self, outcome: DieOutcome) -> f64 {
        self.outcomes
            .iter()
            .find(|(o, _)| *o == outcome)
            .map_or(0.0, |(_, p)| *p)
    }

    pub fn max_runs(&self) -> u32 {
        self.outcomes
            .iter()
            .filter(|(_, p)| *p > 0.0)
            .map(|(o, _)| o.runs())
            .max()
            .unwrap_or(0)
    }

    /// Maps a uniform draw in `[0, 1)` to an outcome by inverse CDF.
    pub fn sample(&self, u: f64) -> DieOutcome {
        let idx = self.cumulative.partition_point(|&c| c <= u);
        // Rounding can leave the last cumulative value a hair below 1.
        let idx = idx.min(self.last_live);
        self.outcomes[idx].0
    }
}

fn parse_pair(item: &str, sep: char) -> Result<(DieOutcome, f64)> {
    let (label, prob) = item
        .split_once(sep)
        .ok_or_else(|| Error::InvalidPmf(format!("expected `label{sep}prob`, got `{item}`")))?;
    let prob: f64 = prob
        .trim()
        .parse()
        .map_err(|_| Error::InvalidPmf(format!("`{}` is not a probability", prob.trim())))?;
    Ok((label.parse()?, prob))
}

impl FromStr for DiePmf {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DiePmf::parse_inline(s)
    }
}

impl fmt::Display for DiePmf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (label, prob)) in self.outcomes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{label}:{prob}")?;
        }
        Ok(())
    }
}

/// How a simulated innings finished.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InningsOutcome {
    pub runs: f64,
    pub wickets: u32,
    pub balls: u32,
}

/// A die-model innings; die faces score whole runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DieInnings {
    pub runs: u32,
    pub wickets: u32,
    pub balls: u32,
}

impl From<DieInnings> for InningsOutcome {
    fn from(d: DieInnings) -> Self {
        InningsOutcome {
            runs: f64::from(d.runs),
            wickets: d.wickets,
            balls: d.balls,
        }
    }
}

/// Plays one innings of coin tosses. Each surviving ball scores exactly `r`,
/// so the total is `r` times the number of scoring shots and may be
/// fractional.
pub fn simulate_bernoulli_innings<R: Rng + ?Sized>(
    params: &BernoulliParams,
    spec: &InningsSpec,
    rng: &mut R,
) -> InningsOutcome {
    let q = params.q();
    let mut wickets = 0;
    let mut scoring = 0u32;
    let mut balls = 0;
    while balls < spec.max_balls() && wickets < spec.max_wickets() {
        balls += 1;
        if rng.gen::<f64>() < q {
            wickets += 1;
        } else {
            scoring += 1;
        }
    }
    InningsOutcome {
        runs: params.r() * f64::from(scoring),
        wickets,
        balls,
    }
}

/// Plays one innings rolling `pmf` once per ball.
pub fn simulate_die_innings<R: Rng + ?Sized>(
    pmf: &DiePmf,
    spec: &InningsSpec,
    rng: &mut R,
) -> DieInnings {
    let mut innings = DieInnings {
        runs: 0,
        wickets: 0,
        balls: 0,
    };
    while innings.balls < spec.max_balls() && innings.wickets < spec.max_wickets() {
        innings.balls += 1;
        match pmf.sample(rng.gen::<f64>()) {
            DieOutcome::Out => innings.wickets += 1,
            face => innings.runs += face.runs(),
        }
    }
    innings
}

/// Per-ball model for an ensemble.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Bernoulli(BernoulliParams),
    Die(DiePmf),
}

impl Model {
    pub fn play<R: Rng + ?Sized>(&self, spec: &InningsSpec, rng: &mut R) -> InningsOutcome {
        match self {
            Model::Bernoulli(params) => simulate_bernoulli_innings(params, spec, rng),
            Model::Die(pmf) => simulate_die_innings(pmf, spec, rng).into(),
        }
    }

    /// Largest total one innings can reach.
    pub fn max_runs(&self, spec: &InningsSpec) -> f64 {
        let per_ball = match self {
            Model::Bernoulli(params) => params.r(),
            Model::Die(pmf) => f64::from(pmf.max_runs()),
        };
        per_ball * f64::from(spec.max_balls())
    }
}

impl From<BernoulliParams> for Model {
    fn from(params: BernoulliParams) -> Self {
        Model::Bernoulli(params)
    }
}

impl From<DiePmf> for Model {
    fn from(pmf: DiePmf) -> Self {
        Model::Die(pmf)
    }
}

/// The generator for innings `index` of an ensemble seeded with `seed`.
pub fn innings_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Summary of an ensemble of simulated innings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationResult {
    pub n_innings: u64,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator); 0 for a single innings.
    pub sd: f64,
    pub min: f64,
    pub max: f64,
    pub wickets_mean: f64,
    pub seed: u64,
}

impl SimulationResult {
    /// Standard error of `mean`.
    pub fn standard_error(&self) -> f64 {
        self.sd / (self.n_innings as f64).sqrt()
    }

    fn from_outcomes(outcomes: &[InningsOutcome], seed: u64) -> Self {
        let n = outcomes.len() as f64;
        let mean = outcomes
            .iter()
            .map(|o| o.runs)
            .sum::<CompensatedSum>()
            .total()
            / n;
        let ss = outcomes
            .iter()
            .map(|o| (o.runs - mean).powi(2))
            .sum::<CompensatedSum>()
            .total();
        let sd = if outcomes.len() > 1 {
            (ss / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        let (min, max) = outcomes
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), o| {
                (lo.min(o.runs), hi.max(o.runs))
            });
        let wickets_mean = outcomes
            .iter()
            .map(|o| f64::from(o.wickets))
            .sum::<CompensatedSum>()
            .total()
            / n;
        SimulationResult {
            n_innings: outcomes.len() as u64,
            // Keep min <= mean <= max when every innings is identical.
            mean: mean.clamp(min, max),
            sd,
            min,
            max,
            wickets_mean,
            seed,
        }
    }
}

/// Plays innings `0..n` of the ensemble without summarizing them.
///
/// `workers` is the thread count; 0 uses the global rayon pool and 1 runs
/// on the calling thread. The returned order is always by innings index.
pub fn simulate_ensemble(
    model: &Model,
    spec: &InningsSpec,
    n: u64,
    seed: u64,
    workers: usize,
) -> Result<Vec<InningsOutcome>> {
    if n == 0 {
        return Err(Error::Usage("ensemble size must be positive".into()));
    }
    let play = |i: u64| model.play(spec, &mut innings_rng(seed, i));
    let outcomes = match workers {
        1 => (0..n).map(play).collect(),
        0 => (0..n).into_par_iter().map(play).collect(),
        _ => rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Usage(format!("cannot start {workers} workers: {e}")))?
            .install(|| (0..n).into_par_iter().map(play).collect()),
    };
    Ok(outcomes)
}

/// Simulates `n` independent innings and summarizes them.
pub fn run_ensemble(
    model: &Model,
    spec: &InningsSpec,
    n: u64,
    seed: u64,
) -> Result<SimulationResult> {
    run_ensemble_with_workers(model, spec, n, seed, 0)
}

/// [`run_ensemble`] on an explicit number of worker threads. The result is
/// bit-identical for every `workers` value.
pub fn run_ensemble_with_workers(
    model: &Model,
    spec: &InningsSpec,
    n: u64,
    seed: u64,
    workers: usize,
) -> Result<SimulationResult> {
    let outcomes = simulate_ensemble(model, spec, n, seed, workers)?;
    Ok(SimulationResult::from_outcomes(&outcomes, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coin(r: f64, q: f64) -> BernoulliParams {
        BernoulliParams::new(r, q).unwrap()
    }

    fn richards() -> BernoulliParams {
        coin(0.9020, 0.9020 / 47.0)
    }

    #[test]
    fn certain_survival_bats_out_the_quota() {
        let mut rng = innings_rng(1, 0);
        for _ in 0..20 {
            let o = simulate_bernoulli_innings(&coin(0.9, 0.0), &InningsSpec::ODI, &mut rng);
            assert_eq!(o.wickets, 0);
            assert_eq!(o.balls, 300);
            assert_eq!(o.runs, 0.9 * 300.0);
        }
    }

    #[test]
    fn certain_dismissal_collapses() {
        let mut rng = innings_rng(1, 0);
        for _ in 0..20 {
            let o = simulate_bernoulli_innings(&coin(0.9, 1.0), &InningsSpec::ODI, &mut rng);
            assert_eq!((o.runs, o.wickets, o.balls), (0.0, 10, 10));
        }
    }

    #[test]
    fn seeded_bernoulli_innings_is_golden() {
        // Captured from the first run of this generator and frozen.
        let o = simulate_bernoulli_innings(&richards(), &InningsSpec::ODI, &mut innings_rng(7, 0));
        let again =
            simulate_bernoulli_innings(&richards(), &InningsSpec::ODI, &mut innings_rng(7, 0));
        assert_eq!(o, again);
        assert_eq!(
            (o.wickets, o.balls, o.runs.to_bits()),
            GOLDEN_RICHARDS_SEED7_INNINGS0
        );
    }

    // 5 wickets, all 300 balls, 295 scoring shots worth 0.902 each.
    const GOLDEN_RICHARDS_SEED7_INNINGS0: (u32, u32, u64) = (5, 300, 4643388720976169534);

    #[test]
    fn certain_out_die() {
        let pmf = DiePmf::parse_inline("out:1.0").unwrap();
        let d = simulate_die_innings(&pmf, &InningsSpec::ODI, &mut innings_rng(3, 9));
        assert_eq!(
            d,
            DieInnings {
                runs: 0,
                wickets: 10,
                balls: 10
            }
        );
    }

    #[test]
    fn all_sixes_die() {
        let pmf = DiePmf::parse_inline("6:1.0").unwrap();
        let d = simulate_die_innings(&pmf, &InningsSpec::ODI, &mut innings_rng(3, 9));
        assert_eq!(
            d,
            DieInnings {
                runs: 1800,
                wickets: 0,
                balls: 300
            }
        );
    }

    #[test]
    fn pmf_parsing() {
        let pmf = DiePmf::parse_inline("out:0.2, 1:0.2,2:0.2,4:0.2,6:0.2").unwrap();
        assert_eq!(pmf, DiePmf::book_cricket());
        assert_eq!(pmf.max_runs(), 6);
        let block =
            DiePmf::parse_block("# book cricket\nout = 0.2\n1=0.2\n\n2 = 0.2\n4=0.2\n6=0.2\n")
                .unwrap();
        assert_eq!(block, pmf);
        assert_eq!(pmf.to_string().parse::<DiePmf>().unwrap(), pmf);
        assert_eq!(pmf.probability(DieOutcome::Run3), 0.0);
    }

    #[test]
    fn pmf_rejections() {
        for bad in [
            "",
            "out:0.5",
            "out:0.5,out:0.5",
            "out:0.5,5:0.5",
            "out:1.5,1:-0.5",
            "out0.5,1:0.5",
            "out:abc",
            "out:NaN,1:1",
        ] {
            assert!(
                matches!(DiePmf::parse_inline(bad), Err(Error::InvalidPmf(_))),
                "{bad}"
            );
        }
        // Within 1e-9 is accepted and renormalized.
        let pmf = DiePmf::parse_inline("out:0.333333333,1:0.333333333,2:0.333333333").unwrap();
        let total: f64 = pmf.outcomes().iter().map(|(_, p)| p).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(DiePmf::parse_inline("out:0.3333,1:0.3333,2:0.3333").is_err());
    }

    #[test]
    fn sampling_is_inverse_cdf() {
        let pmf = DiePmf::book_cricket();
        assert_eq!(pmf.sample(0.0), DieOutcome::Out);
        assert_eq!(pmf.sample(0.19), DieOutcome::Out);
        assert_eq!(pmf.sample(0.21), DieOutcome::Run1);
        assert_eq!(pmf.sample(0.99999), DieOutcome::Run6);
        assert_eq!(pmf.sample(1.0 - f64::EPSILON / 2.0), DieOutcome::Run6);
        let skewed = DiePmf::parse_inline("out:0,4:1").unwrap();
        assert_eq!(skewed.sample(0.0), DieOutcome::Run4);
        let dead_tail = DiePmf::parse_inline("out:0.5,4:0.5,6:0").unwrap();
        assert_eq!(dead_tail.sample(1.0), DieOutcome::Run4);
    }

    #[test]
    fn bernoulli_as_die() {
        assert!(DiePmf::from_bernoulli(&coin(0.9, 0.1)).is_none());
        assert!(DiePmf::from_bernoulli(&coin(5.0, 0.1)).is_none());
        let pmf = DiePmf::from_bernoulli(&coin(4.0, 0.1)).unwrap();
        assert_eq!(pmf.probability(DieOutcome::Run4), 0.9);
    }

    #[test]
    fn single_innings_ensemble() {
        let res = run_ensemble(&richards().into(), &InningsSpec::ODI, 1, 11).unwrap();
        assert_eq!(res.n_innings, 1);
        assert_eq!(res.min, res.max);
        assert_eq!(res.mean, res.min);
        assert_eq!(res.sd, 0.0);
        assert_eq!(res.seed, 11);
    }

    #[test]
    fn empty_ensemble_is_rejected() {
        assert!(run_ensemble(&richards().into(), &InningsSpec::ODI, 0, 1).is_err());
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let model = Model::from(richards());
        let base = run_ensemble_with_workers(&model, &InningsSpec::ODI, 5000, 42, 1).unwrap();
        for workers in [0, 2, 3, 8] {
            let other =
                run_ensemble_with_workers(&model, &InningsSpec::ODI, 5000, 42, workers).unwrap();
            assert_eq!(base, other, "workers={workers}");
        }
    }

    #[test]
    fn innings_respect_limits() {
        let spec = InningsSpec::new(60, 3).unwrap();
        let pmf = DiePmf::parse_inline("out:0.05,0:0.3,1:0.3,2:0.1,3:0.05,4:0.1,6:0.1").unwrap();
        let model = Model::Die(pmf);
        let outcomes = simulate_ensemble(&model, &spec, 2000, 5, 0).unwrap();
        for o in outcomes {
            assert!(o.runs >= 0.0 && o.runs <= model.max_runs(&spec));
            assert!(o.wickets <= 3 && o.balls <= 60);
            assert!(o.wickets == 3 || o.balls == 60);
        }
    }
}
