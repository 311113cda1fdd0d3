//! Areas under the normalized central diffraction pattern for the three
//! reference flux values, across a range of diameter-to-wavelength ratios.
//!
//!     cargo run --release --example forward_peak_areas

use vortexab::observables::{central_area_window, central_areas, flux_zeros};

fn main() -> vortexab::Result<()> {
    let (_, first_zero) = flux_zeros(1);
    let fluxes = [(1.0, "full quantum"), (first_zero, "visibility zero"), (0.5, "half quantum")];
    println!("area under delta*(dsigma/dphi)/sigma_tot over phi/delta in [-1, 1]");
    println!();
    print!("{:>22}", "d/lambda");
    for (f, _) in &fluxes {
        print!("  flux={f:<10.6}");
    }
    println!();
    for d_over_lambda in [1e2, 1e3, 1e4] {
        print!("{:>22.0}", d_over_lambda);
        for (flux, _) in &fluxes {
            print!("  {:<16.7}", central_areas(*flux, d_over_lambda)?);
        }
        println!();
    }
    println!();
    let single = central_area_window(1.0, 1e3, 0.5)?;
    println!("single central peak (|phi/delta| <= 1/2) at full flux: {single:.7}");
    println!("more than 90% of the diffraction half belongs to the gated peak: {:.1}%",
             100.0 * single / 0.5);
    Ok(())
}
