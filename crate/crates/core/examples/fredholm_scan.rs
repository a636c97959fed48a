//! det(1 - g K(E)) across the first few poles, the trace-norm law of the
//! kernel, and the determinant roots in each parity sector.

use gaussian_oscillator::prelude::*;

fn main() -> gaussian_oscillator::Result<()> {
    let table = MatrixElementTable::with_default_rule(80)?;
    let c = Coupling::attractive(0.6)?;

    println!("E        det(full)       det(even)       det(odd)");
    for k in 0..=16 {
        let e = -0.5 + 0.25 * k as f64;
        let cell = |s: Sector| match fredholm_det_sector(e, c, &table, s) {
            Ok(d) => format!("{d:<+16.8e}"),
            Err(_) => format!("{:<16}", "pole"),
        };
        println!("{e:<9.2}{}{}{}", cell(Sector::Full), cell(Sector::Even), cell(Sector::Odd));
    }

    println!("\nkernel trace vs lambda sqrt(pi/2) Gamma(1/2-E)/Gamma(1-E) at N = 80:");
    for e in [-1.0, 0.0, 0.4] {
        let k = BsKernel::build(e, &table, &[])?;
        println!("  E = {e:>4}: trace {:.8}, with tail {:.8}, exact {:.8}", k.trace(), k.tail_corrected_trace(), trace_norm_exact(e, 1.0)?);
    }

    for level in [Level::Ground, Level::FirstExcited] {
        let r = det_energy(c, &table, level)?;
        println!("\n{level:?}: E = {:.14} (bracket {:.1e})", r.energy, r.bracket_width);
    }
    Ok(())
}
