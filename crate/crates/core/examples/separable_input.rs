//! A product input teleports like independent single-qubit runs.

use crossbell::bellkit::CrossBellIndex;
use crossbell::protocol::{run_teleportation_forced, ChannelSpec};
use crossbell::{fixtures, Result, StateVector};

fn main() -> Result<()> {
    let qubits: Vec<StateVector> = (0..3)
        .map(|k| fixtures::haar_random(1, k))
        .collect::<Result<_>>()?;
    let input = qubits[0].tensor(&qubits[1])?.tensor(&qubits[2])?;
    let channel = CrossBellIndex::from_values(&[2, 4, 1])?;
    let outcome = CrossBellIndex::from_values(&[3, 1, 4])?;

    let joint = run_teleportation_forced(&ChannelSpec::new(channel.clone())?, &input, &outcome)?;
    let mut product = StateVector::new(0, vec![1.0.into()])?;
    for (k, qubit) in qubits.iter().enumerate() {
        let ch = ChannelSpec::new(CrossBellIndex::new(vec![channel.labels()[k]])?)?;
        let out = CrossBellIndex::new(vec![outcome.labels()[k]])?;
        let single = run_teleportation_forced(&ch, qubit, &out)?;
        println!("qubit {}: fidelity {:.12}", k + 1, single.fidelity);
        product = product.tensor(&single.received)?;
    }
    println!(
        "joint run fidelity {:.12}, overlap with product of single runs {:.12}",
        joint.fidelity,
        joint.received.fidelity(&product)?
    );
    Ok(())
}
