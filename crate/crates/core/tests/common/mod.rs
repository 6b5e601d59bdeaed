#![allow(dead_code)]

use std::path::PathBuf;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

/// `E(Y^k)` for `k = 0..=max_k` by playing out every one of the `2^balls`
/// toss sequences. Bit `i` of a sequence set means ball `i` is a wicket;
/// tosses after the innings ends are still weighted so each sequence carries
/// its full probability.
pub fn enumerate_moments(p: f64, r: f64, balls: u32, wickets: u32, max_k: u32) -> Vec<f64> {
    assert!(balls <= 20, "enumeration is exponential");
    let q = 1.0 - p;
    let mut moments = vec![0.0; max_k as usize + 1];
    for seq in 0u32..(1 << balls) {
        let tails = seq.count_ones();
        let prob = p.powi((balls - tails) as i32) * q.powi(tails as i32);
        let mut lost = 0;
        let mut heads = 0u32;
        for ball in 0..balls {
            if seq >> ball & 1 == 1 {
                lost += 1;
                if lost == wickets {
                    break;
                }
            } else {
                heads += 1;
            }
        }
        let runs = r * f64::from(heads);
        for (k, m) in moments.iter_mut().enumerate() {
            *m += prob * runs.powi(k as i32);
        }
    }
    moments
}

/// Pass/fail line in the acceptance log format.
pub fn report(id: &str, pass: bool, detail: impl AsRef<str>) {
    println!(
        "[{}] {id}: {}",
        if pass { "PASS" } else { "FAIL" },
        detail.as_ref()
    );
}
