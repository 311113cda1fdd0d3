//! A vortex with a uniform interior field: the amplitude decomposition into
//! the universal forward peak, the classical part, and the residual tail.
//!
//!     cargo run --release --example penetrable_vortex

use vortexab::observables::sigma_classical;
use vortexab::partial_wave::fc_decomposition;
use vortexab::vortex_model::VortexSpec;

fn main() -> vortexab::Result<()> {
    let spec = VortexSpec::penetrable_uniform(1.0, 0.5)?;
    let k = 60.0;
    let grid: Vec<f64> = (0..9).map(|i| -2.0 + 4.0 * i as f64 / 8.0).collect();
    let prof = fc_decomposition(k, &grid, &spec, 1e-8)?;
    let parts = prof.parts.as_ref().unwrap();

    println!("uniform-field vortex, k r_c = {}, flux = {}", k, spec.mu);
    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>12}",
        "phi", "|f|", "|peak|", "|classical|", "|residual|"
    );
    for (i, &phi) in grid.iter().enumerate() {
        println!(
            "{:>8.3} {:>12.5e} {:>12.5e} {:>12.5e} {:>12.5e}",
            phi,
            prof.f[i].norm(),
            parts.peak[i].norm(),
            parts.classical[i].norm(),
            parts.residual[i].norm()
        );
    }
    let sigma = sigma_classical(&spec, k)?;
    println!();
    println!("integrated classical cross section = {sigma:.5}  (geometric value 2 r_c = {})", 2.0 * spec.r_c);
    Ok(())
}
