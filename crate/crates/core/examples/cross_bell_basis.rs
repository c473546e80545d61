//! Build the N=2 cross Bell basis, check it is orthonormal and expand a state in it.

use crossbell::bellkit::{
    cross_bell_basis, expand_in_cross_bell, reconstruct_from_cross_bell, CrossBellIndex,
};
use crossbell::{fixtures, Result};

fn main() -> Result<()> {
    let n = 2;
    let basis = cross_bell_basis(n)?;
    let mut worst: f64 = 0.0;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((a.inner_product(b)? - want).norm());
        }
    }
    println!(
        "{} basis states on {} qubits, Gram deviation {worst:.1e}",
        basis.len(),
        2 * n
    );

    let state = fixtures::ghz(2 * n)?;
    let coefficients = expand_in_cross_bell(&state)?;
    for (idx, c) in CrossBellIndex::all(n).zip(&coefficients) {
        if c.norm() > 1e-12 {
            println!("  {idx}: {c:.4}");
        }
    }
    let back = reconstruct_from_cross_bell(n, &coefficients)?;
    println!("reconstruction error {:.1e}", back.max_deviation(&state)?);
    Ok(())
}
