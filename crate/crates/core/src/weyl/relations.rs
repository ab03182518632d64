use super::{apply_generator, apply_word, FieldPoint, Generator, WeylWord};
use crate::error::{Error, Result};
use crate::record::{Params, ResidualRecord};
use crate::scalar::Real;

pub const WEYL_TOLERANCE: f64 = 1e-12;
const SUITE: &str = "weyl";

/// A defining relation `lhs = rhs` of the group presentation.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub lhs: WeylWord,
    pub rhs: WeylWord,
}

fn w(letters: &[Generator]) -> WeylWord {
    WeylWord::new(letters.to_vec())
}

/// The sixteen defining relations followed by the pairwise commutation of
/// `T`, `T₁`, `T₂`.
pub fn relations() -> Vec<Relation> {
    use Generator::*;
    let id = WeylWord::identity();
    let s = [S0, S1, S2];
    let mut out = Vec::new();
    for (j, &g) in s.iter().enumerate() {
        out.push(Relation {
            name: format!("s{j}^2"),
            lhs: WeylWord::power(g, 2),
            rhs: id.clone(),
        });
    }
    for j in 0..3 {
        let (a, b) = (s[j], s[(j + 1) % 3]);
        out.push(Relation {
            name: format!("(s{j} s{})^3", (j + 1) % 3),
            lhs: w(&[a, b]).repeat(3),
            rhs: id.clone(),
        });
    }
    for (k, g) in [R0, R1].into_iter().enumerate() {
        out.push(Relation {
            name: format!("r{k}^2"),
            lhs: WeylWord::power(g, 2),
            rhs: id.clone(),
        });
    }
    out.push(Relation {
        name: "iota^2".into(),
        lhs: WeylWord::power(Iota, 2),
        rhs: id.clone(),
    });
    out.push(Relation {
        name: "pi^6".into(),
        lhs: WeylWord::power(Pi, 6),
        rhs: id.clone(),
    });
    for j in 0..3 {
        out.push(Relation {
            name: format!("pi s{j} = s{} pi", (j + 1) % 3),
            lhs: w(&[Pi, s[j]]),
            rhs: w(&[s[(j + 1) % 3], Pi]),
        });
    }
    out.push(Relation {
        name: "r0 pi = pi r1".into(),
        lhs: w(&[R0, Pi]),
        rhs: w(&[Pi, R1]),
    });
    out.push(Relation {
        name: "r1 pi = pi r0".into(),
        lhs: w(&[R1, Pi]),
        rhs: w(&[Pi, R0]),
    });
    out.push(Relation {
        name: "r0 iota = iota r1".into(),
        lhs: w(&[R0, Iota]),
        rhs: w(&[Iota, R1]),
    });
    let ts = [
        ("T", WeylWord::t()),
        ("T1", WeylWord::t1()),
        ("T2", WeylWord::t2()),
    ];
    for i in 0..3 {
        for j in i + 1..3 {
            let (ni, wi) = &ts[i];
            let (nj, wj) = &ts[j];
            out.push(Relation {
                name: format!("{ni} {nj} = {nj} {ni}"),
                lhs: wi.clone().then(wj),
                rhs: wj.clone().then(wi),
            });
        }
    }
    out
}

fn record_or_skip(name: String, res: Result<f64>) -> ResidualRecord {
    match res {
        Ok(r) => ResidualRecord::evaluated(SUITE, name, Params::default(), r, WEYL_TOLERANCE),
        Err(e) => ResidualRecord::skipped(
            SUITE,
            name,
            Params::default(),
            WEYL_TOLERANCE,
            e.to_string(),
        ),
    }
}

/// One record per relation: coordinatewise deviation of the two images.
pub fn check_group_relations<R: Real>(p: &FieldPoint<R>) -> Vec<ResidualRecord> {
    relations()
        .into_iter()
        .map(|rel| {
            let res = apply_word(&rel.lhs, p)
                .and_then(|l| apply_word(&rel.rhs, p).map(|r| l.deviation(&r)));
            record_or_skip(rel.name, res)
        })
        .collect()
}

/// `T(x,a₁,a₂) = (xq,a₁,a₂)`, `T₁: a₁ ↦ a₁q`, `T₂: a₂ ↦ a₂q` on a
/// constrained point, with `q` itself fixed.
pub fn check_shifts<R: Real>(p: &FieldPoint<R>) -> Vec<ResidualRecord> {
    let rel = |u: &crate::scalar::ComplexScalar<R>, v: &crate::scalar::ComplexScalar<R>| {
        (u.clone() - v).abs_f64() / u.abs_f64().max(v.abs_f64()).max(1.0)
    };
    let q = &p.q;
    let cases: [(&str, WeylWord, [usize; 3]); 3] = [
        ("shift.T", WeylWord::t(), [1, 0, 0]),
        ("shift.T1", WeylWord::t1(), [0, 1, 0]),
        ("shift.T2", WeylWord::t2(), [0, 0, 1]),
    ];
    cases
        .into_iter()
        .map(|(name, word, e)| {
            let res = apply_word(&word, p).map(|img| {
                let target = |v: &crate::scalar::ComplexScalar<R>, k: usize| {
                    if k == 1 {
                        v.clone() * q
                    } else {
                        v.clone()
                    }
                };
                [
                    rel(&img.q, q),
                    rel(&img.x, &target(&p.x, e[0])),
                    rel(&img.a[1], &target(&p.a[1], e[1])),
                    rel(&img.a[2], &target(&p.a[2], e[2])),
                ]
                .into_iter()
                .fold(0.0, f64::max)
            });
            record_or_skip(name.into(), res)
        })
        .collect()
}

/// Constraint defect after each generator and after `T`, `T₁`, `T₂`.
///
/// With the action table as given, `π`, `r₀` and `r₁` do not preserve
/// `f₀f₁f₂ = x²q` (they move it to another level set), so their records are
/// reported as warnings with the measured defect.
pub fn check_constraint_preservation<R: Real>(p: &FieldPoint<R>) -> Vec<ResidualRecord> {
    let mut out = Vec::new();
    for g in Generator::ALL {
        let name = format!("constraint.{g}");
        let res = apply_generator(g, p).map(|img| img.constraint_residual());
        let rec = match (g, res) {
            (Generator::Pi | Generator::R0 | Generator::R1, Ok(r)) => ResidualRecord::warn(
                SUITE,
                name,
                Params::default(),
                r,
                WEYL_TOLERANCE,
                "printed action table does not preserve f0 f1 f2 = x^2 q under this generator",
            ),
            (_, res) => record_or_skip(name, res),
        };
        out.push(rec);
    }
    for (n, word) in [
        ("T", WeylWord::t()),
        ("T1", WeylWord::t1()),
        ("T2", WeylWord::t2()),
    ] {
        let res = apply_word(&word, p).map(|img| img.constraint_residual());
        out.push(record_or_skip(format!("constraint.{n}"), res));
    }
    out
}

/// Fails unless `T = π³r₀` sends `x` to `xq` on the given constrained point,
/// i.e. unless words compose in the order the rest of the crate assumes.
pub fn calibrate<R: Real>(p: &FieldPoint<R>) -> Result<()> {
    let img = apply_word(&WeylWord::t(), p)?;
    let target = p.x.clone() * &p.q;
    let dev = (img.x.clone() - &target).abs_f64() / target.abs_f64().max(1.0);
    if dev > WEYL_TOLERANCE {
        return Err(Error::Domain(format!(
            "composition calibration failed: T(x) deviates from xq by {dev:e}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn relation_catalog_shape() {
        let rels = relations();
        assert_eq!(rels.len(), 19);
        assert_eq!(rels[3].lhs.to_string(), "s0 s1 s0 s1 s0 s1");
        assert!(rels.iter().any(|r| r.name == "r0 iota = iota r1"));
    }

    #[test]
    fn relations_at_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let p = FieldPoint::<f64>::random_constrained(&mut rng, 53);
            for r in check_group_relations(&p) {
                if r.equation == "r0 iota = iota r1" {
                    // The printed table gives x -> q^3/x on one side and 1/(xq) on the other.
                    assert!(r.residual > 1e-3);
                } else {
                    assert!(r.pass, "{} {:e}", r.equation, r.residual);
                }
            }
            assert!(check_shifts(&p).iter().all(|r| r.pass));
        }
    }

    #[test]
    fn constraint_preserved_by_translations() {
        let p = FieldPoint::<f64>::random_constrained(&mut ChaCha8Rng::seed_from_u64(12), 53);
        let recs = check_constraint_preservation(&p);
        for r in &recs {
            let warned =
                ["constraint.pi", "constraint.r0", "constraint.r1"].contains(&r.equation.as_str());
            assert_eq!(r.skipped, warned, "{}", r.equation);
            if !warned {
                assert!(r.pass, "{} {:e}", r.equation, r.residual);
            }
        }
    }

    #[test]
    fn calibration_accepts_the_composition_order() {
        let p = FieldPoint::<f64>::random_constrained(&mut ChaCha8Rng::seed_from_u64(13), 53);
        calibrate(&p).unwrap();
        // Composing the other way round sends x to x/q instead.
        let mut rev = WeylWord::t();
        rev.letters.reverse();
        let img = apply_word(&rev, &p).unwrap();
        let xq = p.x.clone() * &p.q;
        assert!((img.x - xq).abs_f64() > 1e-3);
    }
}
