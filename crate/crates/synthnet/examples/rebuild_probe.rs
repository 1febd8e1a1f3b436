//! Times snapshot rebuilds in isolation: `rebuild_probe <n> <reps>`.
//! The refresh pass dominates generation at scale, so its unit cost is
//! worth tracking on its own.

use std::time::Instant;
use synthnet::{exponent_for_mean, powerlaw_sequence, ResidualDist};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().expect("usage: rebuild_probe <n> <reps>").parse().unwrap();
    let reps: u32 = args.next().expect("usage: rebuild_probe <n> <reps>").parse().unwrap();

    let gamma = exponent_for_mean(6.0, 1, 10_000).unwrap();
    let degrees = powerlaw_sequence(n, gamma, 1, 10_000, 99).unwrap();
    let mut dist = ResidualDist::new(&degrees, 1).unwrap();
    dist.set_unit_floor(true);

    let start = Instant::now();
    for _ in 0..reps {
        dist.snapshot().unwrap();
    }
    let elapsed = start.elapsed();
    println!(
        "n={n} reps={reps} total={:?} per-rebuild={:.3}ms per-node={:.2}ns",
        elapsed,
        elapsed.as_secs_f64() * 1e3 / reps as f64,
        elapsed.as_secs_f64() * 1e9 / (reps as f64 * n as f64),
    );
}
