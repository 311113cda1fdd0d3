//! Visibility of the forward point of the diffraction pattern as the flux
//! varies: maximal at half-integer flux quanta, vanishing at the closed-form
//! zeros.
//!
//!     cargo run --example fringe_visibility

use vortexab::observables::{flux_zeros, visibility_scattering};

fn main() {
    println!("{:>10} {:>12}", "flux", "visibility");
    for i in 0..=40 {
        let flux = i as f64 / 40.0;
        println!("{:>10.3} {:>12.6}", flux, visibility_scattering(flux).v);
    }
    println!();
    let (plus, minus) = flux_zeros(1);
    println!("visibility zeros nearest one flux quantum: {minus:.9} and {plus:.9}");
    println!("V({minus:.6}) = {:.3e}", visibility_scattering(minus).v);
}
