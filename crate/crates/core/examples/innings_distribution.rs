//! How an innings ends, and what the formula gives beyond mean and sd.
//!
//!     cargo run --example innings_distribution

use bernoulli_cricket::{
    moment_summary, raw_moment, terminal_states, InningsSpec, PlayerRecord, Result,
};

fn main() -> Result<()> {
    let sehwag = PlayerRecord::batsman("Virender Sehwag", 34.64, 103.27)?;
    let params = sehwag.bernoulli_params()?;

    for (label, spec) in [("ODI", InningsSpec::ODI), ("T20", InningsSpec::T20)] {
        let states: Vec<_> = terminal_states(&params, &spec).collect();
        let all_out: f64 = states
            .iter()
            .filter(|s| s.all_out(&spec))
            .map(|s| s.probability)
            .sum();
        let likeliest = states
            .iter()
            .max_by(|a, b| a.probability.total_cmp(&b.probability))
            .expect("at least one terminal state");

        let summary = moment_summary(&params, &spec)?;
        let third_central = raw_moment(&params, &spec, 3)
            - 3.0 * summary.mean * summary.variance()
            - summary.mean.powi(3);
        println!(
            "{} in a {label} innings ({} balls)",
            sehwag.name(),
            spec.max_balls()
        );
        println!("  P(all out)         = {all_out:.4}");
        println!(
            "  likeliest ending   = {} wickets after {} balls (p = {:.4})",
            likeliest.wickets, likeliest.balls, likeliest.probability
        );
        println!(
            "  mean, sd           = {:.2}, {:.2}",
            summary.mean, summary.sd
        );
        println!(
            "  skewness           = {:.3}",
            third_central / summary.sd.powi(3)
        );
    }
    Ok(())
}
