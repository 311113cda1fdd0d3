//! The exact scattering state: plane-wave reduction without flux, hard-wall
//! zero on a Dirichlet boundary, and continuity across a penetrable edge.
//!
//!     cargo run --release --example scattering_wavefunction

use num_complex::Complex64;
use vortexab::partial_wave::exact_wavefunction;
use vortexab::vortex_model::VortexSpec;

fn main() -> vortexab::Result<()> {
    let k = 5.0;

    let free = VortexSpec::penetrable_uniform(1.0, 0.0)?;
    let psi = exact_wavefunction(3.0, 0.8, k, &free)?;
    let plane = Complex64::from_polar(1.0, k * 3.0 * (0.8f64).cos());
    println!("no flux, free core:  psi = {psi:.12}");
    println!("plane wave           e^(i k r cos phi) = {plane:.12}");
    println!();

    let hard = VortexSpec::dirichlet(1.0, 0.5)?;
    let on_wall = exact_wavefunction(1.0, 1.1, k, &hard)?;
    println!("hard wall, half flux: |psi(r_c)| = {:.2e} (boundary condition)", on_wall.norm());

    let soft = VortexSpec::penetrable_uniform(1.0, 0.5)?;
    let inside = exact_wavefunction(0.999_999, 1.1, k, &soft)?;
    let outside = exact_wavefunction(1.000_001, 1.1, k, &soft)?;
    println!(
        "penetrable, half flux: psi just inside {:.8}, just outside {:.8}",
        inside, outside
    );
    Ok(())
}
