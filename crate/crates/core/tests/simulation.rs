mod common;

use bernoulli_cricket::simulate::{innings_rng, simulate_ensemble};
use bernoulli_cricket::{
    moment_summary, run_ensemble, run_ensemble_with_workers, simulate_bernoulli_innings,
    BernoulliParams, DiePmf, InningsSpec, Model,
};

fn richards() -> BernoulliParams {
    BernoulliParams::new(0.902, 0.902 / 47.0).unwrap()
}

fn ambrose() -> BernoulliParams {
    BernoulliParams::new(0.58, 0.58 / 24.12).unwrap()
}

#[test]
fn richards_ensemble_tracks_exact_mean() {
    let exact = moment_summary(&richards(), &InningsSpec::ODI).unwrap();
    let sim = run_ensemble(&richards().into(), &InningsSpec::ODI, 200_000, 7).unwrap();
    assert!((sim.mean - 262.8434).abs() <= 0.092, "{}", sim.mean);
    assert!(((sim.sd - exact.sd) / exact.sd).abs() <= 0.05);
    assert!(sim.min <= sim.mean && sim.mean <= sim.max);
}

#[test]
fn ambrose_ensemble_tracks_exact_moments() {
    let sim = run_ensemble(&ambrose().into(), &InningsSpec::ODI, 200_000, 7).unwrap();
    assert!((sim.mean - 164.3869).abs() <= 0.107, "{}", sim.mean);
    assert!(((sim.sd - 15.8427) / 15.8427).abs() <= 0.05, "{}", sim.sd);
}

#[test]
fn clt_agreement_over_a_seed_family() {
    // 100 ensembles of 2000 innings each; a 4-sigma miss has probability
    // ~6e-5 per ensemble, so more than one would indicate a biased sampler.
    let params = BernoulliParams::new(1.0, 0.03).unwrap();
    let exact = moment_summary(&params, &InningsSpec::ODI).unwrap();
    let n = 2000;
    let se = exact.sd / (n as f64).sqrt();
    let misses = (0..100u64)
        .filter(|seed| {
            let sim = run_ensemble(&params.into(), &InningsSpec::ODI, n, 1000 + seed).unwrap();
            (sim.mean - exact.mean).abs() > 4.0 * se
        })
        .count();
    assert!(
        misses <= 1,
        "{misses} of 100 ensembles missed by more than 4 sigma"
    );
}

#[test]
fn book_cricket_scores_thirteen_per_wicket() {
    // Scoring shots before a wicket are geometric with mean 4, each worth
    // (1 + 2 + 4 + 6) / 4 on average: 13 runs per wicket.
    let spec = InningsSpec::new(1_000_000, 10).unwrap();
    let n = 100_000;
    let sim = run_ensemble(&DiePmf::book_cricket().into(), &spec, n, 3).unwrap();
    assert_eq!(sim.wickets_mean, 10.0);
    let per_wicket = sim.mean / sim.wickets_mean;
    let se = sim.standard_error() / sim.wickets_mean;
    assert!((per_wicket - 13.0).abs() <= 3.0 * se, "{per_wicket} ± {se}");
}

#[test]
fn degenerate_die_matches_the_coin() {
    let coin = BernoulliParams::new(1.0, 0.04).unwrap();
    let die = DiePmf::from_bernoulli(&coin).unwrap();
    let n = 50_000;
    let a = run_ensemble(&coin.into(), &InningsSpec::ODI, n, 17).unwrap();
    let b = run_ensemble(&die.into(), &InningsSpec::ODI, n, 18).unwrap();
    let combined = (a.standard_error().powi(2) + b.standard_error().powi(2)).sqrt();
    assert!((a.mean - b.mean).abs() < 4.0 * combined);
    assert!((a.wickets_mean - b.wickets_mean).abs() < 0.1);
}

#[test]
fn results_are_reproducible_and_parallelism_free() {
    let pmf = DiePmf::parse_inline("out:0.03,0:0.45,1:0.3,2:0.1,3:0.02,4:0.07,6:0.03").unwrap();
    let model = Model::Die(pmf);
    let base = run_ensemble_with_workers(&model, &InningsSpec::ODI, 20_000, 99, 1).unwrap();
    for workers in [0, 2, 8] {
        assert_eq!(
            base,
            run_ensemble_with_workers(&model, &InningsSpec::ODI, 20_000, 99, workers).unwrap()
        );
    }
    let other_seed = run_ensemble_with_workers(&model, &InningsSpec::ODI, 20_000, 100, 1).unwrap();
    assert_ne!(base.mean, other_seed.mean);
}

#[test]
fn ensemble_is_a_sequence_of_indexed_innings() {
    let model = Model::from(richards());
    let outcomes = simulate_ensemble(&model, &InningsSpec::ODI, 10, 5, 4).unwrap();
    for (i, o) in outcomes.iter().enumerate() {
        let alone = simulate_bernoulli_innings(
            &richards(),
            &InningsSpec::ODI,
            &mut innings_rng(5, i as u64),
        );
        assert_eq!(*o, alone);
    }
}

#[test]
fn per_innings_bounds() {
    let spec = InningsSpec::new(120, 10).unwrap();
    for model in [
        Model::from(richards()),
        Model::from(DiePmf::book_cricket()),
        Model::from(DiePmf::parse_inline("6:1").unwrap()),
    ] {
        for o in simulate_ensemble(&model, &spec, 5000, 8, 0).unwrap() {
            assert!(o.runs >= 0.0 && o.runs <= model.max_runs(&spec));
            assert!(o.wickets <= 10 && o.balls <= 120);
            assert!(o.wickets == 10 || o.balls == 120);
        }
    }
}
