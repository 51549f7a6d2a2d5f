//! Minimal end-to-end run: build a chain, certify perfect transfer and the
//! revival schedule, print the terminal amplitudes.

use cradle_core::{chain, dynamics, ChainParams, Result};

fn main() -> Result<()> {
    let params = ChainParams::free_free(10, 1, 4, 1.0, 1.0)?; // N = 9, c = 1/4
    let chain = chain::build(&params)?;
    let prep = dynamics::prepare(&chain)?;

    let transfer = dynamics::verify_perfect_transfer(&prep, 1e-8)?;
    assert!(transfer.achieved);
    println!(
        "perfect transfer at t* = {:.6}: p_N/p_bar = {:+.12}",
        transfer.t_star, transfer.last_amplitude
    );

    let revival = dynamics::verify_fractional_revival(&prep, 1e-8)?;
    assert!(revival.achieved);
    for s in &revival.samples {
        println!(
            "tau_{}: (p_0, p_N)/p_bar = ({:+.6}, {:+.6})",
            s.ell, s.measured.0, s.measured.1
        );
    }
    Ok(())
}
