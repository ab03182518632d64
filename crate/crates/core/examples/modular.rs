// Modular transformation laws of μ and the non-holomorphic completion.

use mu_tau::special::{
    completion_residual, modular_s_residual, modular_t_residual, mu_tilde, QContext, SLaw,
};
use mu_tau::Result;

pub fn run_example() -> Result<()> {
    let ctx = QContext::<f64>::from_f64(0.2, 1.1, 53)?;
    let (u, v) = (ctx.c(0.23, 0.11), ctx.c(0.41, 0.07));

    println!(
        "tau -> tau+1 residual      {:e}",
        modular_t_residual(&ctx, &u, &v)?
    );
    println!(
        "tau -> -1/tau residual     {:e}",
        modular_s_residual(&ctx, &u, &v, SLaw::Canonical)?
    );
    println!(
        "printed S-law residual     {:e}",
        modular_s_residual(&ctx, &u, &v, SLaw::Printed)?
    );
    println!("completed mu(u,v)          {}", mu_tilde(&ctx, &u, &v)?);
    for n in 1..=3 {
        println!(
            "completion at order {n}     {:e}",
            completion_residual(&ctx, n, &u, &v)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("modular example");
}
