//! From career figures to the per-ball coin and the innings it implies.
//!
//!     cargo run --example bernoulli_runs

use bernoulli_cricket::{
    moment_summary, poisson_wickets, BernoulliParams, InningsSpec, PlayerRecord, Result,
};

fn describe(record: &PlayerRecord) -> Result<()> {
    let params = BernoulliParams::from_record(record)?;
    let summary = moment_summary(&params, &InningsSpec::ODI)?;
    println!("{} ({})", record.name(), record.role());
    println!("  avg {:.2}, rate {:.2}", record.avg(), record.rate());
    println!("  runs per ball r      = {:.4}", params.r());
    println!("  dismissal chance q   = {:.6}", params.q());
    println!("  balls per wicket     = {:.3}", record.balls_per_wicket());
    println!("  Bernoulli runs (ODI) = {:.4}", summary.mean);
    println!("  standard deviation   = {:.5}", summary.sd);
    println!(
        "  Poisson wickets in 300 balls = {:.3}",
        poisson_wickets(&params, &InningsSpec::ODI)
    );
    Ok(())
}

fn main() -> Result<()> {
    describe(&PlayerRecord::batsman("Viv Richards", 47.00, 90.20)?)?;
    describe(&PlayerRecord::bowler("Curtly Ambrose", 24.12, 3.48)?)?;
    Ok(())
}
