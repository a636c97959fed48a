//! The energy-versus-coupling curves of both levels for both signs, with
//! every method side by side, written as CSV to stdout.

use gaussian_oscillator::birman_schwinger::{Level, Method, Sign};
use gaussian_oscillator::commands::{cmd_curve, cmd_potential, OutputFormat, RunConfig};
use gaussian_oscillator::birman_schwinger::Coupling;

fn main() -> gaussian_oscillator::Result<()> {
    let cfg = RunConfig::new(80, None, 1e-10, OutputFormat::Csv)?;
    let methods = [Method::FredholmDet, Method::RankOneFixedPoint, Method::SecondOrder, Method::Oracle];
    for sign in [Sign::Attractive, Sign::Repulsive] {
        for level in [Level::Ground, Level::FirstExcited] {
            println!("# level {} {sign}", level.index());
            print!("{}", cmd_curve(&cfg, level, sign, 1.5, 10, &methods)?.to_csv_string());
        }
    }
    println!("# funnel and double-well potentials");
    print!("{}", cmd_potential(Coupling::attractive(1.0)?, 3.0, 7)?.to_csv_string());
    print!("{}", cmd_potential(Coupling::repulsive(1.0)?, 3.0, 7)?.to_csv_string());
    Ok(())
}
