//! A small T x p_s sensitivity grid on DTLZ2.
//!
//!     cargo run --release --example sweep

use manyopt::harness::{sensitivity_sweep, ExperimentConfig, Metric};
use manyopt::problems::ProblemId;

fn main() -> manyopt::Result<()> {
    let mut base = ExperimentConfig::defaults(ProblemId::Dtlz2, 3)?;
    base.runs = 5;
    let t_values = [5, 20, 40];
    let ps_values = [0.0, 0.5, 0.9, 1.0];
    let grid = sensitivity_sweep(&base, &t_values, &ps_values)?;

    print!("{:>6}", "T\\p_s");
    for p in ps_values {
        print!("{p:>12}");
    }
    println!();
    for t in t_values {
        print!("{t:>6}");
        for p in ps_values {
            let median = grid.cell(t, p).and_then(|c| c.stats.metric(Metric::Igd)).map(|r| r.median);
            print!("{:>12.3e}", median.unwrap_or(f64::NAN));
        }
        println!();
    }
    Ok(())
}
