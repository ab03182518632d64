//! Squaring the series truncation tolerance must shrink every residual that
//! sits near or above its tolerance, or leave it passing.

use mu_tau::bilinear::thm2_catalog;
use mu_tau::special::{contiguous_residual, Contiguous, QContext};
use mu_tau::verify::check_thm2;
use mu_tau::xi::SolutionParams;

fn thm2_residuals(trunc_tol: f64) -> Vec<(String, f64)> {
    let ctx = QContext::<f64>::from_f64(1.0 / 3.0, 1.0, 53)
        .unwrap()
        .with_trunc_tol(trunc_tol)
        .unwrap();
    let sp = SolutionParams::new(
        ctx.clone(),
        ctx.c(0.23, 0.11),
        ctx.c(0.41, 0.07),
        ctx.c(1.3, 0.0),
        1,
        ctx.c(0.4, 0.0),
    )
    .unwrap();
    thm2_catalog()
        .iter()
        .map(|eq| check_thm2(&sp, eq))
        .filter(|r| !r.skipped)
        .map(|r| (r.equation, r.residual))
        .collect()
}

const TOL: f64 = 1e-8;

fn assert_monotone(coarse: &[(String, f64)], fine: &[(String, f64)]) {
    assert_eq!(coarse.len(), fine.len());
    for ((id, a), (_, b)) in coarse.iter().zip(fine) {
        if *a >= TOL / 10.0 {
            assert!(b < a || *b < TOL, "{id}: {a:e} -> {b:e}");
        }
    }
}

#[test]
fn relations_improve_with_tighter_truncation() {
    let coarse = thm2_residuals(1e-3);
    let fine = thm2_residuals(1e-6);
    assert!(
        coarse.iter().any(|(_, r)| *r >= TOL),
        "coarse truncation should leave a visible residual"
    );
    assert_monotone(&coarse, &fine);
    assert_monotone(&fine, &thm2_residuals(1e-12));
    assert!(thm2_residuals(1e-12).iter().all(|(_, r)| *r < TOL));
}

#[test]
fn contiguous_relations_improve_with_tighter_truncation() {
    let run = |tt: f64| -> Vec<(String, f64)> {
        let ctx = QContext::<f64>::from_f64(0.0, 1.0, 53)
            .unwrap()
            .with_trunc_tol(tt)
            .unwrap();
        let (u, v) = (ctx.c(0.23, 0.11), ctx.c(0.41, 0.07));
        [0.7, 2.3]
            .iter()
            .flat_map(|&a| {
                let alpha = ctx.c(a, 0.0);
                [Contiguous::Up, Contiguous::Down].map(|w| {
                    (
                        format!("{w:?} {a}"),
                        contiguous_residual(&ctx, w, &u, &v, &alpha).unwrap(),
                    )
                })
            })
            .collect()
    };
    assert_monotone(&run(1e-4), &run(1e-8));
    assert_monotone(&run(1e-8), &run(1e-16));
}
