//! Run the brute-force oracle for N=1..2 and print each check.

use crossbell::oracle::run_suite;
use crossbell::Result;

fn main() -> Result<()> {
    for result in run_suite(1..=2)? {
        println!("{result}");
    }
    Ok(())
}
