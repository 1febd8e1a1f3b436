use std::time::Instant;
use synthnet::{exponent_for_mean, generate, powerlaw_sequence, Algorithm, GenParams};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let step: u64 = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let only: Option<String> = std::env::args().nth(3);
    let exponent = exponent_for_mean(6.0, 1, 10_000).unwrap();
    let degrees = powerlaw_sequence(n, exponent, 1, 10_000, 8).unwrap();
    let m = synthnet::edge_budget(&degrees);
    let t = synthnet::triangle_target(&degrees, 0.05);
    println!("n={n} M={m} T={t} step={step}");
    for algo in Algorithm::ALL {
        if only.as_deref().is_some_and(|o| o != algo.name()) {
            continue;
        }
        let params = GenParams {
            degrees: degrees.clone(),
            cc_target: 0.05,
            step,
            eb_count: Some(m / 6),
        };
        let t0 = Instant::now();
        let out = generate(algo, &params, 8).unwrap();
        let dt = t0.elapsed();
        let s = &out.stats;
        println!(
            "{algo}: {:?} edges={} closures={} tri_end={:?} tri_edges={} single={} single_end={:?} rejected={}",
            dt,
            out.graph.edge_count(),
            s.triangles_closed,
            s.phase_log.triangle_end,
            s.phase_log.triangle_edges,
            s.phase_log.single_edges,
            s.phase_log.single_end,
            s.phase_log.rejected_samples,
        );
    }
}
