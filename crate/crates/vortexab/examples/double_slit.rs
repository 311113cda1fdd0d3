//! The double-slit interference reference: fringes shifted by the enclosed
//! flux, with the central intensity gated by cos^2(pi flux).
//!
//!     cargo run --example double_slit

use vortexab::observables::DoubleSlitSetup;

fn main() -> vortexab::Result<()> {
    // 0.1 nm electrons, 10 um slit separation, 10 cm to the screen
    for flux in [0.0, 0.25, 0.5] {
        let setup = DoubleSlitSetup::new(0.1, 1e-5, 1e-10, flux)?;
        println!(
            "flux = {flux}: fringe period = {:.3e} m, angular period = {:.3e} rad, visibility = {:.4}",
            setup.period(),
            setup.angular_period(),
            setup.visibility()
        );
        let period = setup.period();
        print!("  I(y)/I_max over one period:");
        for i in 0..=8 {
            let y = period * i as f64 / 8.0;
            print!(" {:.3}", setup.intensity(y) / 4.0);
        }
        println!();
    }
    Ok(())
}
