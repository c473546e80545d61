//! Teleport a 3-qubit GHZ state through the (ψ⁻, ψ⁻, ψ⁻) channel, all 64 outcomes.

use crossbell::bellkit::CrossBellIndex;
use crossbell::protocol::{run_teleportation_forced, ChannelSpec};
use crossbell::{fixtures, Result};

fn main() -> Result<()> {
    let channel = ChannelSpec::new(CrossBellIndex::from_values(&[4, 4, 4])?)?;
    let input = fixtures::ghz(3)?;
    let mut min_fidelity = f64::INFINITY;
    for outcome in CrossBellIndex::all(3) {
        let report = run_teleportation_forced(&channel, &input, &outcome)?;
        min_fidelity = min_fidelity.min(report.fidelity);
        if outcome.ordinal() % 21 == 0 {
            println!(
                "outcome {} message 0x{} p={:.6} fidelity {:.12}",
                report.outcome,
                report.message.to_hex(),
                report.probability,
                report.fidelity
            );
        }
    }
    println!("64 outcomes, min fidelity {min_fidelity:.12}");
    Ok(())
}
