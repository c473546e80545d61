//! Seeded Monte Carlo batch: outcome counts against the uniform 1/4^N law.

use crossbell::bellkit::CrossBellIndex;
use crossbell::protocol::{run_batch, ChannelSpec};
use crossbell::{fixtures, Result};

fn main() -> Result<()> {
    let channel = ChannelSpec::new(CrossBellIndex::from_values(&[1, 3])?)?;
    let input = fixtures::w(2)?;
    let batch = run_batch(&channel, &input, 16_000, 42, 0)?;
    let s = &batch.summary;
    for c in &s.counts {
        println!("{} {:>5}", c.outcome, c.count);
    }
    println!(
        "{} trials, expected 1000 each, max |z| {:.2}, min fidelity {:.12}",
        s.trials, s.max_abs_z, s.min_fidelity
    );
    Ok(())
}
