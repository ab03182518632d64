use mu_tau::bilinear::{equation, thm3_catalog, Thm3Form};
use mu_tau::scalar::{det, ComplexScalar, Mp};
use mu_tau::special::{contiguous_residual, relative_residual, theta, Contiguous, QContext};
use mu_tau::verify::{thm3_proportionality, thm3_terms, Precision};
use mu_tau::weyl::{apply_generator, apply_word, FieldPoint, Generator, WeylWord};
use mu_tau::xi::{bordered_xi_residual, shifted_xi_residual, SolutionParams, TildeIndex};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn solution(bits: u32, uv: (f64, f64, f64, f64), m: f64, n: i64, k: f64) -> SolutionParams<Mp> {
    let ctx = QContext::<Mp>::from_f64(1.0 / 3.0, 1.0, bits).unwrap();
    SolutionParams::new(
        ctx.clone(),
        ctx.c(uv.0, uv.1),
        ctx.c(uv.2, uv.3),
        ctx.c(m, 0.0),
        n,
        ctx.c(k, 0.0),
    )
    .unwrap()
}

fn uv() -> impl Strategy<Value = (f64, f64, f64, f64)> {
    (0.1f64..0.45, -0.25f64..0.25, 0.1f64..0.45, -0.25f64..0.25)
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn contiguous_relations(u in (-0.45f64..0.45, -0.3f64..0.3), v in (-0.45f64..0.45, -0.3f64..0.3), alpha in 0.2f64..4.5) {
        let ctx = QContext::<f64>::from_f64(0.0, 1.0, 53).unwrap();
        let (u, v, a) = (ctx.c(u.0, u.1), ctx.c(v.0, v.1), ctx.c(alpha, 0.0));
        for which in [Contiguous::Up, Contiguous::Down] {
            let r = contiguous_residual(&ctx, which, &u, &v, &a).unwrap();
            prop_assert!(r < 1e-10, "{which:?}: {r:e}");
        }
    }

    #[test]
    fn theta_symmetries(z in (-0.5f64..0.5, -0.4f64..0.4), tau in (-0.5f64..0.5, 0.8f64..1.5)) {
        let ctx = QContext::<f64>::from_f64(tau.0, tau.1, 53).unwrap();
        let z = ctx.c(z.0, z.1);
        let th = theta(&ctx, &z).unwrap();
        let scale = th.abs_f64().max(1e-300);
        let odd = theta(&ctx, &-z.clone()).unwrap() + &th;
        prop_assert!(odd.abs_f64() / scale < 1e-12);
        let shifted = theta(&ctx, &(z.clone() + ctx.c(1.0, 0.0))).unwrap() + &th;
        prop_assert!(shifted.abs_f64() / scale < 1e-12);
        // θ(z+τ) = -q^{-1} e^{-2πiz} θ(z)
        let lhs = theta(&ctx, &(z.clone() + ctx.tau())).unwrap();
        let factor = -(ctx.epow_f64(-1.0) * ctx.e_2pi_i(&-z.clone()));
        let rhs = factor * &th;
        prop_assert!((lhs.clone() - &rhs).abs_f64() / lhs.abs_f64().max(rhs.abs_f64()) < 1e-12);
    }

    #[test]
    fn translations_commute_and_keep_the_constraint(seed in any::<u64>()) {
        let p = FieldPoint::<f64>::random_constrained(&mut ChaCha8Rng::seed_from_u64(seed), 53);
        let words = [WeylWord::t(), WeylWord::t1(), WeylWord::t2()];
        for (i, a) in words.iter().enumerate() {
            for b in &words[i + 1..] {
                let ab = apply_word(&a.clone().then(b), &p).unwrap();
                let ba = apply_word(&b.clone().then(a), &p).unwrap();
                prop_assert!(ab.deviation(&ba) < 1e-12);
            }
            prop_assert!(apply_word(a, &p).unwrap().constraint_residual() < 1e-12);
        }
        // pi, r0 and r1 as printed break the constraint; the weyl suite reports that.
        for g in [Generator::S0, Generator::S1, Generator::S2, Generator::Iota] {
            prop_assert!(apply_generator(g, &p).unwrap().constraint_residual() < 1e-12, "{}", g.name());
        }
    }
}

proptest! {
    #![proptest_config(config(8))]

    #[test]
    fn hankel_matrices_depend_on_the_antidiagonal(uv in uv(), m in 1.1f64..3.9, k in -1.0f64..1.0) {
        let sp = solution(128, uv, m, 3, k);
        let mat = sp.xi_matrix(0, 3, 0).unwrap();
        for j in 0..4 {
            for jj in 0..4 {
                let s = j + jj;
                let (a, b) = (s.min(3), s - s.min(3));
                prop_assert_eq!(mat.get(j, jj), mat.get(a, b));
            }
        }
        prop_assert_eq!(&mat.transpose(), &mat);
        prop_assert_eq!(det(&mat.transpose()).unwrap(), det(&mat).unwrap());
    }

    #[test]
    fn tilde_relations_are_proportional_to_base_relations(
        uv in uv(), m in 1.1f64..3.9, k in -1.0f64..1.0, n in 1i64..=2, abc in (0i64..=1, 0i64..=1, 0i64..=1),
    ) {
        let sp = solution(128, uv, m, n, k);
        let t = TildeIndex::new(abc.0, abc.1, abc.2);
        for id in 1..=8 {
            let base = equation(&id.to_string(), Thm3Form::Canonical).unwrap();
            let tilde = equation(&(10 + id).to_string(), Thm3Form::Canonical).unwrap();
            match thm3_proportionality(&sp, &base, &tilde, t) {
                Ok(dev) => prop_assert!(dev < 1e-10, "{id} at {abc:?}: {dev:e}"),
                Err(mu_tau::Error::IndexDomain(_)) => {}
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }

    #[test]
    fn residuals_are_gauge_invariant(
        uv in uv(), m in 1.1f64..3.9, k in -1.0f64..1.0,
        g in prop::array::uniform3((0.3f64..2.0, -1.0f64..1.0)),
    ) {
        let sp = solution(128, uv, m, 2, k);
        let g = g.map(|(re, im)| ComplexScalar::<Mp>::from_f64(re, im, 128));
        for eq in thm3_catalog(Thm3Form::Canonical) {
            for (a, b, c) in [(0, 0, 0), (1, 0, 1), (0, 1, 1), (1, 1, 0)] {
                let t = TildeIndex::new(a, b, c);
                let (Ok(plain), Ok(with)) = (thm3_terms(&sp, &eq, t, None), thm3_terms(&sp, &eq, t, Some(&g))) else {
                    continue;
                };
                let d = (relative_residual(&plain) - relative_residual(&with)).abs();
                prop_assert!(d < 1e-12, "{} at {:?}: {d:e}", eq.id, (a, b, c));
            }
        }
    }

    #[test]
    fn proof_identities(uv in uv(), m in 1.1f64..3.9, k in -1.0f64..1.0, n in 1i64..=3) {
        let sp = solution(Precision::Auto.bits_for(n), uv, m, n, k);
        prop_assert!(bordered_xi_residual(&sp).unwrap() < 1e-10);
        for sign in [1, -1] {
            prop_assert!(shifted_xi_residual(&sp, sign).unwrap() < 1e-10);
        }
    }
}
