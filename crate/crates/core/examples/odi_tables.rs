//! Evaluate and rank the bundled batsmen and bowlers.
//!
//!     cargo run --example odi_tables

use std::path::Path;

use bernoulli_cricket::{
    evaluate_player, rank_players, read_players, InningsSpec, ReplacementConstants, Result,
};

fn main() -> Result<()> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let constants = ReplacementConstants::default();
    println!(
        "replacement batsmen score {}, replacement bowlers concede {}\n",
        constants.batsman_constant, constants.bowler_constant
    );

    for file in ["table1.csv", "table2.csv"] {
        let players = read_players(fixtures.join(file))?;
        println!("{file}");
        println!(
            "{:<22} {:>7} {:>7} {:>8} {:>7} {:>6}",
            "name", "avg", "rate", "mean", "sd", "rrr"
        );
        for record in &players.records {
            let e = evaluate_player(record, &InningsSpec::ODI, &constants)?;
            println!(
                "{:<22} {:>7.2} {:>7.2} {:>8.2} {:>7.2} {:>6.2}",
                record.name(),
                record.avg(),
                record.rate(),
                e.summary.mean,
                e.summary.sd,
                e.rrr
            );
        }

        let ranking = rank_players(&players.records, &InningsSpec::ODI, &constants)?;
        let order: Vec<_> = ranking
            .evaluations
            .iter()
            .map(|e| e.player.name())
            .collect();
        println!("ranked: {}\n", order.join(" > "));
    }
    Ok(())
}
