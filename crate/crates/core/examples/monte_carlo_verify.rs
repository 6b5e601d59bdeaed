//! Check the exact innings moments against a seeded Monte Carlo ensemble.
//!
//!     cargo run --release --example monte_carlo_verify

use bernoulli_cricket::{moment_summary, run_ensemble, InningsSpec, PlayerRecord, Result};

fn main() -> Result<()> {
    let n = 200_000;
    for record in [
        PlayerRecord::batsman("Viv Richards", 47.00, 90.20)?,
        PlayerRecord::bowler("Curtly Ambrose", 24.12, 3.48)?,
    ] {
        let params = record.bernoulli_params()?;
        let exact = moment_summary(&params, &InningsSpec::ODI)?;
        println!("{}", record.name());
        println!(
            "  exact      mean {:>9.4}  sd {:>8.4}",
            exact.mean, exact.sd
        );
        for seed in [7, 11, 2024] {
            let sim = run_ensemble(&params.into(), &InningsSpec::ODI, n, seed)?;
            let sigmas = (sim.mean - exact.mean) / (exact.sd / (n as f64).sqrt());
            println!(
                "  seed {seed:<5} mean {:>9.4}  sd {:>8.4}  ({sigmas:+.2} standard errors)",
                sim.mean, sim.sd
            );
        }
    }
    Ok(())
}
