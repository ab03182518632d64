// Theta, μ and the generalized μ-function with truncation certificates.

use mu_tau::special::{
    mu_alpha, mu_eval, mu_general_eval, mu_integer_expansion, theta_eval, MuArgs, QContext,
};
use mu_tau::Result;

pub fn run_example() -> Result<()> {
    let ctx = QContext::<f64>::from_f64(0.0, 1.0, 53)?;
    let (u, v) = (ctx.c(0.23, 0.11), ctx.c(0.41, 0.07));

    let th = theta_eval(&ctx, &ctx.c(0.1, 0.05))?;
    println!(
        "theta(0.1+0.05i) = {}  ({} terms, tail <= {:e})",
        th.value, th.cert.terms, th.cert.tail_bound
    );

    let m = mu_eval(&ctx, &u, &v)?;
    let g = mu_general_eval(
        &ctx,
        &MuArgs {
            u: u.clone(),
            v: v.clone(),
            alpha: ctx.c(1.0, 0.0),
        },
    )?;
    println!("mu(u,v)          = {}", m.value);
    println!("mu(u,v;1)        = {}", g.value);
    assert!((m.value.clone() - &g.value).abs_f64() < 1e-12);

    // Integer orders reduce to a finite combination of μ and theta quotients.
    for n in 0..=2 {
        let lhs = mu_integer_expansion(&ctx, n, &u, &v)?;
        let rhs = mu_alpha(&ctx, &u, &v, &ctx.c((n + 1) as f64, 0.0))?;
        println!(
            "mu(u,v;{}) via expansion = {}  direct = {}",
            n + 1,
            lhs,
            rhs
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("special functions example");
}
