//! A small grid sweep written as CSV, then summarised from the file.

use std::path::Path;

use agnostic_al::harness::report::report_from_runs;
use agnostic_al::harness::{run_sweep, SweepConfig};

fn main() -> agnostic_al::Result<()> {
    let config = SweepConfig::from_toml(
        r#"
        random_target = true
        baselines = ["passive_erm", "uniform_disagreement"]
        seeds = { start = 0, count = 10 }

        [instance]
        source = "thresholds"
        n = 40

        [oracle]
        kind = "iid_flip"
        target = 0
        rho = 0.0

        [params]
        eta = 0.0
        epsilon = 0.05
        delta = 0.1
        c1 = 27000.0
        c4 = 3.0
        c5 = 0.25
        practical = true
        stop = { mode = "adaptive" }

        [grid]
        eta = [0.0, 0.005]
        n = [40, 80]
        "#,
    )?;
    let table = run_sweep(&config, Path::new("."))?;
    let dir = std::env::temp_dir().join("agal-sweep-example");
    table.write(&dir)?;
    let (_, text) = report_from_runs(&dir.join("runs.csv"))?;
    println!("wrote {}", dir.display());
    print!("{text}");
    Ok(())
}
