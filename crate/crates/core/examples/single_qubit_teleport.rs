//! Teleport one qubit through a ψ⁻ pair and show all four branches.

use crossbell::bellkit::{correction_unitary, BellLabel, CrossBellIndex};
use crossbell::measurement::{branch_amplitudes, MeasurementPlan};
use crossbell::protocol::{prepare_total_state, run_teleportation_forced, ChannelSpec};
use crossbell::{fixtures, Result};

fn main() -> Result<()> {
    let input = fixtures::haar_random(1, 11)?;
    let channel = ChannelSpec::new(CrossBellIndex::from_values(&[4])?)?;
    let total = prepare_total_state(&channel, &input)?;
    let plan = MeasurementPlan::teleportation(1);

    println!(
        "input  α={:.4} β={:.4}",
        input.amplitude(0),
        input.amplitude(1)
    );
    for s in BellLabel::ALL {
        let outcome = CrossBellIndex::new(vec![s])?;
        let branch = branch_amplitudes(&total, &plan, &outcome)?;
        let u = correction_unitary(s).matrix().map(|row| row.map(|z| z.re));
        let report = run_teleportation_forced(&channel, &input, &outcome)?;
        println!(
            "{:>4}: branch ({:.4}, {:.4})  U = {:?}  p = {:.4}  fidelity after correction {:.12}",
            s.name(),
            branch.amplitude(0),
            branch.amplitude(1),
            u,
            report.probability,
            report.fidelity
        );
    }
    Ok(())
}
