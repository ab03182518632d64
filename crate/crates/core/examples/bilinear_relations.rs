// Bilinear relations among the ξ: the base catalog and its tilde form,
// including the printed and derived coefficients of relation 18.

use mu_tau::bilinear::{equation, thm2_catalog, Thm3Form};
use mu_tau::scalar::Mp;
use mu_tau::special::QContext;
use mu_tau::verify::{check_thm2, check_thm3, thm3_proportionality};
use mu_tau::xi::{SolutionParams, TildeIndex};
use mu_tau::Result;

pub fn run_example() -> Result<()> {
    let ctx = QContext::<Mp>::from_f64(1.0 / 3.0, 1.0, 128)?;
    let c = |re: f64| ctx.c(re, 0.0);
    let sp = SolutionParams::new(
        ctx.clone(),
        ctx.c(0.23, 0.11),
        ctx.c(0.41, 0.07),
        c(1.3),
        2,
        c(0.4),
    )?;

    for eq in thm2_catalog() {
        let r = check_thm2(&sp, &eq);
        println!(
            "relation {:>2}: residual {:.2e}  {}",
            eq.id,
            r.residual,
            r.reason.as_deref().unwrap_or("")
        );
    }

    let t = TildeIndex::new(0, 1, 0);
    for form in [Thm3Form::Canonical, Thm3Form::Printed] {
        let r = check_thm3(&sp, &equation("18", form).expect("catalog entry"), t, form);
        println!(
            "relation 18 ({form:?}) at (0,1,0): residual {:.2e}",
            r.residual
        );
    }

    // Each tilde relation is a rescaled base relation at shifted indices.
    let dev = thm3_proportionality(
        &sp,
        &equation("1", Thm3Form::Canonical).expect("catalog entry"),
        &equation("11", Thm3Form::Canonical).expect("catalog entry"),
        TildeIndex::new(0, 0, 0),
    )?;
    println!("relation 11 vs 1 term-ratio spread: {dev:.2e}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("bilinear relations example");
}
