//! Round-trip a state through the JSON file format and encode a classical message.

use crossbell::bellkit::CrossBellIndex;
use crossbell::protocol::{decode_message, encode_message};
use crossbell::{fixtures, Result, StateVector};

fn main() -> Result<()> {
    let dir = std::env::temp_dir().join("crossbell-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("w3.json");
    let state = fixtures::w(3)?;
    state.write_file(&path)?;
    let loaded = StateVector::read_file(&path)?;
    println!(
        "{} -> {} qubits, deviation {:.1e}",
        path.display(),
        loaded.n_qubits(),
        loaded.max_deviation(&state)?
    );

    for labels in [&[4i64, 4, 4][..], &[2, 3, 4, 1, 4]] {
        let outcome = CrossBellIndex::from_values(labels)?;
        let message = encode_message(&outcome);
        println!(
            "{outcome} -> 0x{} -> {}",
            message.to_hex(),
            decode_message(&message)?
        );
    }
    Ok(())
}
