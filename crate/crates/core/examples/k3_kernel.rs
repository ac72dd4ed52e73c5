use std::time::Instant;

use dtseries::formulas::hilb_kernel;
use dtseries::HodgeDiamond;

fn main() {
    let q_max: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(50);
    let start = Instant::now();
    let kernel = hilb_kernel(&HodgeDiamond::k3(), q_max).unwrap();
    let top = &kernel.coeffs()[q_max];
    println!(
        "q_max={q_max} terms_at_top={} chi={} elapsed={:?}",
        top.len(),
        top.eval_one(),
        start.elapsed()
    );
}
