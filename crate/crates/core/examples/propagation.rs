// Filling a block of the ξ lattice from six initial values with the
// bilinear relations, compared with the determinants.

use mu_tau::special::QContext;
use mu_tau::xi::{lattice_propagate, Block, SolutionParams};
use mu_tau::Result;

pub fn run_example() -> Result<()> {
    let ctx = QContext::<f64>::from_f64(0.0, 1.0, 53)?;
    let c = |re: f64| ctx.c(re, 0.0);
    let sp = SolutionParams::new(
        ctx.clone(),
        ctx.c(0.23, 0.11),
        ctx.c(0.41, 0.07),
        c(2.0),
        0,
        c(0.0),
    )?;

    let block = Block::cube(2);
    let lattice = lattice_propagate(&sp, block)?;
    println!(
        "{} values after {} sweeps",
        lattice.values.len(),
        lattice.sweeps
    );
    for site in block.sites() {
        let (dm, n, dk) = site;
        let got = &lattice.values[&site];
        let want = sp.xi_at(dm, n, dk)?;
        let rel = (got.clone() - &want).abs_f64() / want.abs_f64();
        println!("(dm={dm:>2}, n={n}, dk={dk}) rel. error {rel:.1e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("propagation example");
}
