//! Derive the 4×4 correction table by projection and print it.

use crossbell::bellkit::{derive_correction_table, CORRECTION_TABLE};
use crossbell::Result;

fn main() -> Result<()> {
    let table = derive_correction_table()?;
    println!(
        "derived vs shipped: {:.1e}",
        table.max_deviation(&CORRECTION_TABLE)
    );
    for (r, s, t) in table.iter() {
        let m = t.matrix();
        println!(
            "T[{r}][{s}] = [[{:>5.2}, {:>5.2}], [{:>5.2}, {:>5.2}]]",
            m[0][0].re, m[0][1].re, m[1][0].re, m[1][1].re
        );
    }
    Ok(())
}
