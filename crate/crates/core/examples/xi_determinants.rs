// Hankel determinants ξ of the generalized μ-function.

use mu_tau::scalar::Mp;
use mu_tau::special::QContext;
use mu_tau::xi::{SolutionParams, TildeIndex, XiIndex};
use mu_tau::Result;

pub fn run_example() -> Result<()> {
    let ctx = QContext::<Mp>::from_f64(0.0, 1.0, 128)?;
    let c = |re: f64| ctx.c(re, 0.0);
    let sp = SolutionParams::new(
        ctx.clone(),
        ctx.c(0.23, 0.11),
        ctx.c(0.41, 0.07),
        c(2.0),
        2,
        c(0.0),
    )?;

    for n in -1..=3 {
        let xi = sp.xi(&XiIndex {
            m: c(2.0),
            n,
            k: c(0.0),
        })?;
        println!("xi(m=2, n={n:>2}, k=0) = {:?}", xi.to_c64());
    }
    println!("mu values evaluated: {}", sp.memo_len());

    // Off-lattice indices are evaluated directly.
    let off = sp.xi(&XiIndex {
        m: c(2.5),
        n: 1,
        k: c(0.4),
    })?;
    println!("xi(m=2.5, n=1, k=0.4) = {:?}", off.to_c64());

    let t = sp.xi_tilde(TildeIndex::new(1, 1, 0))?;
    println!("xi~(1,1,0) = xi(1, 1, 0) = {:?}", t.to_c64());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("xi determinants example");
}
