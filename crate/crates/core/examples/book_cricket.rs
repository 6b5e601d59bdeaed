//! Dice instead of coins: classic book cricket, a weaker batsman's book, and
//! a seven-outcome die for a batsman who rarely hits sixes.
//!
//!     cargo run --release --example book_cricket

use bernoulli_cricket::{run_ensemble, DiePmf, InningsSpec, Result};

fn main() -> Result<()> {
    // No overs limit: the innings only ends when ten wickets fall.
    let unlimited = InningsSpec::new(1_000_000, 10)?;
    let odi = InningsSpec::ODI;

    let classic = DiePmf::book_cricket();
    // Turning the page ending in 8 into a wicket doubles the chance of getting out.
    let bunny = DiePmf::parse_inline("out:0.4,2:0.2,4:0.2,6:0.2")?;
    let seven_sided = DiePmf::parse_block(
        "out = 0.0279\n\
         0 = 0.5000\n\
         1 = 0.3400\n\
         2 = 0.0600\n\
         3 = 0.0050\n\
         4 = 0.0659\n\
         6 = 0.0012\n",
    )?;

    for (name, pmf, spec) in [
        ("book cricket", &classic, unlimited),
        ("book cricket, 8 is out", &bunny, unlimited),
        ("seven-sided die, ODI", &seven_sided, odi),
    ] {
        let sim = run_ensemble(&pmf.clone().into(), &spec, 100_000, 1)?;
        println!("{name}: {pmf}");
        println!(
            "  mean {:.2} ± {:.2}, sd {:.2}, range [{}, {}], {:.2} wickets, {:.2} runs per wicket",
            sim.mean,
            sim.standard_error(),
            sim.sd,
            sim.min,
            sim.max,
            sim.wickets_mean,
            sim.mean / sim.wickets_mean
        );
    }
    Ok(())
}
