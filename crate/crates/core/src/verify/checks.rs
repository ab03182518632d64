//! Residual checks of single identities at one parameter point.

use crate::bilinear::{EquationSpec, Family, Offset, Specialisation, Thm3Form};
use crate::error::{Error, Result};
use crate::record::{Params, ResidualRecord};
use crate::scalar::{ComplexScalar, Real};
use crate::special::relative_residual;
use crate::weyl::{
    apply_generator, apply_word, evolution_sides, EvolutionForm, EvolutionId, Generator, Images,
    WeylWord,
};
use crate::xi::{solution_family_a, solution_family_b, SolutionParams, TildeIndex};

type C<R> = ComplexScalar<R>;

pub const THM_TOLERANCE: f64 = 1e-8;
pub const PROPORTIONALITY_TOLERANCE: f64 = 1e-10;
pub const FAMILY_B_TOLERANCE: f64 = 1e-10;
pub const IDENTITY_TOLERANCE: f64 = 1e-10;
pub const GAUGE_TOLERANCE: f64 = 1e-12;
pub const PROPAGATION_TOLERANCE: f64 = 1e-6;

/// Record parameters of a solution base point.
pub fn params_of<R: Real>(sp: &SolutionParams<R>) -> Params {
    let (tau_re, tau_im) = sp.ctx.tau().to_c64();
    let (u_re, u_im) = sp.u.to_c64();
    let (v_re, v_im) = sp.v.to_c64();
    let (m_re, m_im) = sp.m.to_c64();
    let (k_re, k_im) = sp.k.to_c64();
    Params {
        tau_re,
        tau_im,
        u_re,
        u_im,
        v_re,
        v_im,
        m_re,
        m_im,
        n: sp.n,
        k_re,
        k_im,
        ..Params::default()
    }
}

/// Skip reason for an evaluation error; truncation failures are tagged so
/// callers can tell them apart from domain problems.
pub fn error_reason(e: &Error) -> String {
    if e.is_truncation() {
        format!("truncation: {e}")
    } else {
        e.to_string()
    }
}

pub fn from_result(
    suite: &str,
    equation: impl Into<String>,
    params: Params,
    tolerance: f64,
    res: Result<f64>,
) -> ResidualRecord {
    match res {
        Ok(r) => ResidualRecord::evaluated(suite, equation, params, r, tolerance),
        Err(e) => ResidualRecord::skipped(suite, equation, params, tolerance, error_reason(&e)),
    }
}

fn below_domain(n: i64) -> Error {
    Error::IndexDomain(format!("relation touches xi with n = {n} < -1"))
}

fn at(base: (i64, i64, i64), o: Offset) -> (i64, i64, i64) {
    (base.0 + o.0, base.1 + o.1, base.2 + o.2)
}

/// Terms of an untilded relation with base `ξ` offset `(Δm, n, Δk)`.
pub fn thm2_terms<R: Real>(
    sp: &SolutionParams<R>,
    eq: &EquationSpec,
    base: (i64, i64, i64),
) -> Result<Vec<C<R>>> {
    debug_assert_eq!(eq.family, Family::Thm2);
    let ctx = &sp.ctx;
    let m = sp.m.clone() + ctx.c(base.0 as f64, 0.0);
    let k = sp.k.clone() + ctx.c(base.2 as f64, 0.0);
    for t in &eq.terms {
        for s in [at(base, t.left), at(base, t.right)] {
            if s.1 < -1 {
                return Err(below_domain(s.1));
            }
        }
    }
    eq.terms
        .iter()
        .map(|t| {
            let (l, r) = (at(base, t.left), at(base, t.right));
            let c = t.coeff.eval_thm2(ctx, &sp.x, &m, base.1, &k);
            Ok(c * sp.xi_at(l.0, l.1, l.2)? * sp.xi_at(r.0, r.1, r.2)?)
        })
        .collect()
}

pub fn check_thm2<R: Real>(sp: &SolutionParams<R>, eq: &EquationSpec) -> ResidualRecord {
    let res = thm2_terms(sp, eq, (0, sp.n, 0)).map(|t| relative_residual(&t));
    from_result("thm2", &eq.id, params_of(sp), THM_TOLERANCE, res)
}

/// Terms of a tilded relation at `(a, b, c)`, with an optional gauge
/// `ξ̃_{a,b,c} ↦ g₁^a g₂^b g₃^c ξ̃_{a,b,c}`.
pub fn thm3_terms<R: Real>(
    sp: &SolutionParams<R>,
    eq: &EquationSpec,
    t: TildeIndex,
    gauge: Option<&[C<R>; 3]>,
) -> Result<Vec<C<R>>> {
    debug_assert_eq!(eq.family, Family::Thm3);
    let spec = Specialisation::new(&sp.ctx, &sp.x, &sp.m, sp.n, &sp.k);
    let shifted = |o: Offset| TildeIndex::new(t.a + o.0, t.b + o.1, t.c + o.2);
    for term in &eq.terms {
        for s in [shifted(term.left), shifted(term.right)] {
            if sp.n - s.b < -1 {
                return Err(below_domain(sp.n - s.b));
            }
        }
    }
    let value = |s: TildeIndex| -> Result<C<R>> {
        let v = sp.xi_tilde(s)?;
        Ok(match gauge {
            Some(g) => v * g[0].powi(s.a)? * g[1].powi(s.b)? * g[2].powi(s.c)?,
            None => v,
        })
    };
    eq.terms
        .iter()
        .map(|term| {
            let c = term.coeff.eval_thm3(&sp.ctx, &spec, (t.a, t.b, t.c));
            Ok(c * value(shifted(term.left))? * value(shifted(term.right))?)
        })
        .collect()
}

fn tilde_params<R: Real>(sp: &SolutionParams<R>, t: TildeIndex) -> Params {
    params_of(sp).with_abc(t.a, t.b, t.c)
}

/// One tilded relation at `(a, b, c)`. Under [`Thm3Form::Printed`], relation
/// (18) is reported as a warning carrying the measured residual.
pub fn check_thm3<R: Real>(
    sp: &SolutionParams<R>,
    eq: &EquationSpec,
    t: TildeIndex,
    form: Thm3Form,
) -> ResidualRecord {
    let res = thm3_terms(sp, eq, t, None).map(|v| relative_residual(&v));
    let params = tilde_params(sp, t);
    match (form, res) {
        (Thm3Form::Printed, Ok(r)) if eq.id == "18" => ResidualRecord::warn(
            "thm3",
            format!("{}.printed", eq.id),
            params,
            r,
            THM_TOLERANCE,
            "printed coefficient x q^(2a+2b+c)/a1 in the third term",
        ),
        (_, res) => from_result("thm3", &eq.id, params, THM_TOLERANCE, res),
    }
}

/// Largest deviation between the term ratios of relation `1x` at `(a, b, c)`
/// and relation `x` at `(m-a, n-b, k+c)`, after matching terms by their
/// pair of `ξ` indices.
pub fn thm3_proportionality<R: Real>(
    sp: &SolutionParams<R>,
    eq2: &EquationSpec,
    eq3: &EquationSpec,
    t: TildeIndex,
) -> Result<f64> {
    let base = (-t.a, sp.n - t.b, t.c);
    let t2 = thm2_terms(sp, eq2, base)?;
    let t3 = thm3_terms(sp, eq3, t, None)?;
    let key2 = |o: Offset| at(base, o);
    let key3 = |o: Offset| (-t.a - o.0, sp.n - t.b - o.1, t.c + o.2);
    let sorted = |a: (i64, i64, i64), b: (i64, i64, i64)| if a <= b { (a, b) } else { (b, a) };
    let mut ratios = Vec::with_capacity(3);
    for (term3, v3) in eq3.terms.iter().zip(&t3) {
        let k3 = sorted(key3(term3.left), key3(term3.right));
        let j = eq2
            .terms
            .iter()
            .position(|term2| sorted(key2(term2.left), key2(term2.right)) == k3)
            .ok_or_else(|| {
                Error::Domain(format!("relation {} has no term matching {k3:?}", eq2.id))
            })?;
        ratios.push(v3.try_div(&t2[j], "term ratio")?);
    }
    let r0 = &ratios[0];
    Ok(ratios[1..]
        .iter()
        .map(|r| (r.clone() - r0).abs_f64() / r0.abs_f64())
        .fold(0.0, f64::max))
}

/// Images of family A under the translations, built by index shifts:
/// `T: k+1`, `T₁: m+1`, `T₂: n-1` and their inverses.
pub fn family_a_images<R: Real>(sp: &SolutionParams<R>) -> Result<Images<R>> {
    let fam = |dm, dn, dk| solution_family_a(sp, dm, dn, dk);
    Ok(Images {
        base: fam(0, 0, 0)?,
        t: Some(fam(0, 0, 1)?),
        t1: Some(fam(1, 0, 0)?),
        t1_inv: Some(fam(-1, 0, 0)?),
        t2: if sp.n >= 1 {
            Some(fam(0, -1, 0)?)
        } else {
            None
        },
        t2_inv: Some(fam(0, 1, 0)?),
    })
}

fn sides_residual<R: Real>(l: &C<R>, r: &C<R>) -> f64 {
    (l.clone() - r).abs_f64() / l.abs_f64().max(r.abs_f64()).max(1.0)
}

/// Evolution identities on the family A solution, with the translated
/// points taken from index shifts rather than from the group action.
pub fn check_theorem1<R: Real>(sp: &SolutionParams<R>) -> Vec<ResidualRecord> {
    const SUITE: &str = "painleve-e2e";
    let params = params_of(sp);
    let images = match family_a_images(sp) {
        Ok(i) => i,
        Err(e) => {
            return vec![ResidualRecord::skipped(
                SUITE,
                "family-a",
                params,
                THM_TOLERANCE,
                error_reason(&e),
            )]
        }
    };
    let mut out = Vec::new();
    for id in EvolutionId::ALL {
        match evolution_sides(id, &images, EvolutionForm::Canonical) {
            Ok(Some((l, r))) => out.push(ResidualRecord::evaluated(
                SUITE,
                id.as_str(),
                params.clone(),
                sides_residual(&l, &r),
                THM_TOLERANCE,
            )),
            Ok(None) => out.push(ResidualRecord::skipped(
                SUITE,
                id.as_str(),
                params.clone(),
                THM_TOLERANCE,
                "needs the T2 image, which lies at n - 1 < 0",
            )),
            Err(e) => out.push(ResidualRecord::skipped(
                SUITE,
                id.as_str(),
                params.clone(),
                THM_TOLERANCE,
                error_reason(&e),
            )),
        }
    }
    if let Ok(Some((l, r))) = evolution_sides(EvolutionId::T1Fwd, &images, EvolutionForm::Printed) {
        out.push(ResidualRecord::warn(
            SUITE,
            "t1.fwd.printed",
            params.clone(),
            sides_residual(&l, &r),
            THM_TOLERANCE,
            "printed denominator has a1 f1 where the action gives a1 f2",
        ));
    }
    // The shifted solutions agree with the group action on the base point.
    let words = [
        ("image.T", WeylWord::t(), Some(&images.t)),
        ("image.T1", WeylWord::t1(), Some(&images.t1)),
        (
            "image.T1inv",
            WeylWord::t1().inverse(),
            Some(&images.t1_inv),
        ),
        ("image.T2", WeylWord::t2(), Some(&images.t2)),
        (
            "image.T2inv",
            WeylWord::t2().inverse(),
            Some(&images.t2_inv),
        ),
    ];
    for (name, word, img) in words {
        let Some(Some(img)) = img else { continue };
        let res = apply_word(&word, &images.base).map(|w| w.deviation(img));
        out.push(from_result(SUITE, name, params.clone(), THM_TOLERANCE, res));
    }
    out
}

/// Family B at `(m-1, n-1, k)` against `s₂` applied to family A at `(m, n, k)`.
pub fn check_family_b<R: Real>(sp: &SolutionParams<R>) -> ResidualRecord {
    let res = (|| {
        let a = solution_family_a(sp, 0, 0, 0)?;
        let b = solution_family_b(sp, -1, -1, 0)?;
        Ok(apply_generator(Generator::S2, &a)?.deviation(&b))
    })();
    from_result(
        "painleve-e2e",
        "family-b.s2",
        params_of(sp),
        FAMILY_B_TOLERANCE,
        res,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilinear::{thm2_catalog, thm3_catalog};
    use crate::scalar::Mp;
    use crate::special::QContext;

    fn sp(m: f64, n: i64, k: f64) -> SolutionParams<f64> {
        solution(m, n, k, 53)
    }

    fn sp_mp(m: f64, n: i64, k: f64) -> SolutionParams<Mp> {
        solution(m, n, k, 128)
    }

    fn solution<R: Real>(m: f64, n: i64, k: f64, bits: u32) -> SolutionParams<R> {
        let ctx = QContext::from_f64(0.0, 1.0, bits).unwrap();
        SolutionParams::new(
            ctx.clone(),
            ctx.c(0.23, 0.11),
            ctx.c(0.41, 0.07),
            ctx.c(m, 0.0),
            n,
            ctx.c(k, 0.0),
        )
        .unwrap()
    }

    #[test]
    fn thm2_examples() {
        let cat = thm2_catalog();
        let r = check_thm2(&sp(2.0, 1, 0.0), &cat[0]);
        assert!(r.pass, "{r:?}");
        let r = check_thm2(&sp(2.0, 1, 0.0), &cat[2]);
        assert!(r.pass, "{r:?}");
        let r = check_thm2(&sp(1.7, 1, 0.4), &cat[0]);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn thm2_skips_below_empty_determinant() {
        // Relation (3) at n = 0 needs ξ with n = -2.
        let r = check_thm2(&sp(2.0, 0, 0.0), &thm2_catalog()[2]);
        assert!(r.skipped && !r.is_failure());
        assert!(r.reason.unwrap().contains("< -1"));
    }

    #[test]
    fn thm3_examples() {
        let s = sp_mp(2.0, 1, 0.0);
        let cat = thm3_catalog(Thm3Form::Canonical);
        assert!(check_thm3(&s, &cat[0], TildeIndex::new(0, 0, 0), Thm3Form::Canonical).pass);
        let r = check_thm3(
            &sp_mp(2.0, 2, 0.0),
            &cat[6],
            TildeIndex::new(1, 1, 0),
            Thm3Form::Canonical,
        );
        assert!(r.pass, "{r:?}");
        let s2 = sp_mp(2.0, 2, 0.0);
        let t = TildeIndex::new(0, 1, 0);
        assert!(check_thm3(&s2, &cat[7], t, Thm3Form::Canonical).pass);
        let printed = &thm3_catalog(Thm3Form::Printed)[7];
        let w = check_thm3(&s2, printed, t, Thm3Form::Printed);
        assert!(w.skipped && w.residual > 1e-3, "{w:?}");
    }

    #[test]
    fn relation_eleven_is_a_multiple_of_relation_one() {
        let s = sp_mp(2.0, 1, 0.0);
        let e1 = &thm2_catalog()[0];
        let e11 = &thm3_catalog(Thm3Form::Canonical)[0];
        let t = TildeIndex::new(0, 0, 0);
        assert!(thm3_proportionality(&s, e1, e11, t).unwrap() < 1e-10);
        // Relation (1) is -q^{m-a+c} times relation (11).
        let t1 = thm2_terms(&s, e1, (0, 1, 0)).unwrap();
        let t11 = thm3_terms(&s, e11, t, None).unwrap();
        let f = -s.ctx.epow(&s.m);
        for v1 in &t1 {
            assert!(t11
                .iter()
                .any(|v| (v.clone() * &f - v1).abs_f64() < 1e-12 * v1.abs_f64().max(1.0)));
        }
    }

    #[test]
    fn theorem1_on_small_solutions() {
        for n in 0..=1 {
            let recs = check_theorem1(&sp(2.0, n, 0.0));
            for r in &recs {
                if r.equation == "t1.fwd.printed" {
                    assert!(r.skipped && r.residual > 1e-3);
                } else if n == 0 && r.skipped {
                    assert!(r.reason.as_deref().unwrap().contains("T2"), "{r:?}");
                } else {
                    assert!(r.pass, "{r:?}");
                }
            }
        }
        assert!(check_family_b(&sp(2.0, 1, 0.0)).pass);
    }
}
