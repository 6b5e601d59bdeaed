//! Reading player files: bad lines become warnings, good ones records.
//!
//!     cargo run --example player_files

use bernoulli_cricket::{parse_players, write_players, Result};

const SOURCE: &str = "\
name,role,avg,rate
Sachin Tendulkar,batsman,45.12,86.26
\"Singh, Harbhajan\",Bowler,32.84,4.30
Nobody,batsman,-1,90
Somebody,wicketkeeper,30,80
";

fn main() -> Result<()> {
    let file = parse_players(SOURCE.as_bytes())?;
    for record in &file.records {
        println!(
            "ok      {} ({}), avg {}, rate {}",
            record.name(),
            record.role(),
            record.avg(),
            record.rate()
        );
    }
    for w in &file.warnings {
        println!("line {}  {}", w.line, w.message);
    }

    let mut canonical = Vec::new();
    write_players(&file.records, &mut canonical).expect("writing to memory");
    println!("\n{}", String::from_utf8_lossy(&canonical));
    Ok(())
}
