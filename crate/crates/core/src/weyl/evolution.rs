//! Closed-form evolution equations of the translations `T`, `T₁`, `T₂`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{apply_word, FieldPoint, WeylWord};
use crate::error::{Error, Result};
use crate::scalar::{ComplexScalar, Real};

type C<R> = ComplexScalar<R>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EvolutionId {
    TxJ0,
    TxJ1,
    TxJ2,
    T1Fwd,
    T1Inv,
    T2Fwd,
    T2Inv,
    Tf1,
    Tf2,
    T1f1,
    T1f2,
    T2f1,
    T2f2,
}

impl EvolutionId {
    pub const ALL: [EvolutionId; 13] = [
        EvolutionId::TxJ0,
        EvolutionId::TxJ1,
        EvolutionId::TxJ2,
        EvolutionId::T1Fwd,
        EvolutionId::T1Inv,
        EvolutionId::T2Fwd,
        EvolutionId::T2Inv,
        EvolutionId::Tf1,
        EvolutionId::Tf2,
        EvolutionId::T1f1,
        EvolutionId::T1f2,
        EvolutionId::T2f1,
        EvolutionId::T2f2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EvolutionId::TxJ0 => "tx.j0",
            EvolutionId::TxJ1 => "tx.j1",
            EvolutionId::TxJ2 => "tx.j2",
            EvolutionId::T1Fwd => "t1.fwd",
            EvolutionId::T1Inv => "t1.inv",
            EvolutionId::T2Fwd => "t2.fwd",
            EvolutionId::T2Inv => "t2.inv",
            EvolutionId::Tf1 => "Tf1",
            EvolutionId::Tf2 => "Tf2",
            EvolutionId::T1f1 => "t1f1",
            EvolutionId::T1f2 => "t1f2",
            EvolutionId::T2f1 => "t2f1",
            EvolutionId::T2f2 => "t2f2",
        }
    }
}

impl fmt::Display for EvolutionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EvolutionId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        EvolutionId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown evolution id `{s}`")))
    }
}

/// Which version of the forward `T₁` identity to use. The printed one has
/// `a₁f₁` where the word computation gives `a₁f₂` in the denominator; every
/// other identity is the same in both forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EvolutionForm {
    Canonical,
    Printed,
}

/// A base point together with whichever translated images are available.
#[derive(Clone, Debug)]
pub struct Images<R: Real> {
    pub base: FieldPoint<R>,
    pub t: Option<FieldPoint<R>>,
    pub t1: Option<FieldPoint<R>>,
    pub t1_inv: Option<FieldPoint<R>>,
    pub t2: Option<FieldPoint<R>>,
    pub t2_inv: Option<FieldPoint<R>>,
}

impl<R: Real> Images<R> {
    /// All five images computed by applying the translation words.
    pub fn from_words(p: &FieldPoint<R>) -> Result<Self> {
        Ok(Images {
            base: p.clone(),
            t: Some(apply_word(&WeylWord::t(), p)?),
            t1: Some(apply_word(&WeylWord::t1(), p)?),
            t1_inv: Some(apply_word(&WeylWord::t1().inverse(), p)?),
            t2: Some(apply_word(&WeylWord::t2(), p)?),
            t2_inv: Some(apply_word(&WeylWord::t2().inverse(), p)?),
        })
    }
}

fn sum<R: Real>(terms: Vec<C<R>>) -> C<R> {
    let mut it = terms.into_iter();
    let first = it.next().expect("nonempty sum");
    it.fold(first, |acc, t| acc + t)
}

fn prod<R: Real>(factors: &[&C<R>]) -> C<R> {
    factors[1..]
        .iter()
        .fold(factors[0].clone(), |acc, f| acc * *f)
}

fn ratio<R: Real>(num: C<R>, den: C<R>, id: EvolutionId) -> Result<C<R>> {
    num.try_div(&den, "evolution identity")
        .map_err(|_| Error::Degenerate(format!("denominator of {id}")))
}

/// Left- and right-hand sides of an evolution identity, or `None` when the
/// image it needs is missing.
pub fn evolution_sides<R: Real>(
    id: EvolutionId,
    img: &Images<R>,
    form: EvolutionForm,
) -> Result<Option<(C<R>, C<R>)>> {
    let p = &img.base;
    let (q, x) = (&p.q, &p.x);
    let (a1, a2) = (&p.a[1], &p.a[2]);
    let (f1, f2) = (&p.f[1], &p.f[2]);
    let one = q.like(1.0, 0.0);
    let q2 = q.square();
    let x2 = x.square();
    let x2q2 = x2.clone() * &q2;
    let a1a2 = a1.clone() * a2;
    let f1f2 = f1.clone() * f2;
    let a1a2f1f2 = a1a2.clone() * &f1f2;
    let need = |o: &Option<FieldPoint<R>>| o.clone();
    let sides = match id {
        EvolutionId::TxJ0 | EvolutionId::TxJ1 | EvolutionId::TxJ2 => {
            let Some(t) = need(&img.t) else {
                return Ok(None);
            };
            let j = match id {
                EvolutionId::TxJ0 => 0,
                EvolutionId::TxJ1 => 1,
                _ => 2,
            };
            let (j1, j2) = ((j + 1) % 3, (j + 2) % 3);
            let (a, f) = (&p.a, &p.f);
            let num = sum(vec![
                one.clone(),
                a[j2].clone() * &f[j2],
                prod(&[&a[j2], &a[j], &f[j2], &f[j]]),
            ]);
            let den = sum(vec![
                one.clone(),
                a[j].clone() * &f[j],
                prod(&[&a[j], &a[j1], &f[j], &f[j1]]),
            ]);
            let rhs = prod(&[&a[j], &a[j1], &f[j1]]) * ratio(num, den, id)?;
            (t.f[j].clone(), rhs)
        }
        EvolutionId::T1Fwd => {
            let Some(t1) = need(&img.t1) else {
                return Ok(None);
            };
            let a1sq_a2 = a1.square() * a2;
            let num = sum(vec![
                one.clone(),
                a1.clone() * f1,
                a1sq_a2.clone() * f2,
                a1a2.clone() * &f1f2,
            ]);
            let second = match form {
                EvolutionForm::Canonical => a1.clone() * f2,
                EvolutionForm::Printed => a1.clone() * f1,
            };
            let den = sum(vec![a1a2.clone(), second, a1sq_a2 * f1, f1f2.clone()]);
            (
                ratio(t1.f[2].clone(), f1.clone(), id)?,
                ratio(num, den, id)?,
            )
        }
        EvolutionId::T1Inv | EvolutionId::T1f1 => {
            let Some(t1i) = need(&img.t1_inv) else {
                return Ok(None);
            };
            let lhs = ratio(t1i.f[1].clone() * q, f2.clone(), id)?;
            let num = x2q2.clone() + &a1a2f1f2;
            let den = x2.clone() * &a1a2 + &f1f2;
            (lhs, ratio(num, den, id)?)
        }
        EvolutionId::T2Fwd => {
            let Some(t2) = need(&img.t2) else {
                return Ok(None);
            };
            let a1a2sq = a1a2.clone() * a2;
            let num = sum(vec![
                a1a2sq.clone(),
                f1.clone(),
                a1a2.clone() * f2,
                a2.clone() * &f1f2,
            ]);
            let den = sum(vec![
                a2.clone(),
                a1a2.clone() * f1,
                f2.clone(),
                a1a2sq * &f1f2,
            ]);
            (
                ratio(t2.f[1].clone(), f2.clone(), id)?,
                ratio(num, den, id)?,
            )
        }
        EvolutionId::T2Inv | EvolutionId::T2f2 => {
            let Some(t2i) = need(&img.t2_inv) else {
                return Ok(None);
            };
            let lhs = ratio(t2i.f[2].clone(), f1.clone() * q, id)?;
            let num = a1a2.clone() * &x2 + &f1f2;
            let den = x2q2.clone() + &a1a2f1f2;
            (lhs, ratio(num, den, id)?)
        }
        EvolutionId::Tf1 => {
            let Some(t) = need(&img.t) else {
                return Ok(None);
            };
            let lhs = f1.clone() * &t.f[1];
            let num = sum(vec![a1a2f1f2.clone(), prod(&[a1, &x2q2, f1]), x2q2.clone()]);
            let den = sum(vec![a1a2f1f2.clone(), a1.clone() * f1, one.clone()]);
            (lhs, ratio(num, den, id)?)
        }
        EvolutionId::Tf2 => {
            let Some(t) = need(&img.t) else {
                return Ok(None);
            };
            let lhs = ratio(f2.clone() * &t.f[2], x2q2.clone(), id)?;
            let num = sum(vec![a1a2f1f2.clone(), a1.clone() * f1, one.clone()]);
            let den = sum(vec![a1a2f1f2.clone(), a1.clone() * f1, x2q2.clone()]);
            (lhs, ratio(num, den, id)?)
        }
        EvolutionId::T1f2 => {
            let Some(t1i) = need(&img.t1_inv) else {
                return Ok(None);
            };
            let lhs = ratio(f1f2.clone() * &t1i.f[2], x2.clone(), id)?;
            let a1sq_a2 = a1.square() * a2;
            let num = sum(vec![
                a1sq_a2.clone() * f1 * &f2.square(),
                q2.clone() * &f1f2,
                prod(&[a1, &x2q2, f2]),
                a1a2.clone() * &x2q2,
            ]);
            let den = sum(vec![
                a1a2.clone() * f1 * &f2.square(),
                a1.clone() * &f1f2,
                x2q2.clone() * f2,
                a1sq_a2 * &x2,
            ]);
            (lhs, ratio(num, den, id)?)
        }
        EvolutionId::T2f1 => {
            let Some(t2i) = need(&img.t2_inv) else {
                return Ok(None);
            };
            let lhs = ratio(f1f2.clone() * &t2i.f[1], x2.clone(), id)?;
            let a1a2sq = a1a2.clone() * a2;
            let num = sum(vec![
                q2.clone() * &f1.square() * f2,
                a1a2sq.clone() * &f1f2,
                prod(&[&a1a2, &x2q2, f1]),
                a2.clone() * &x2q2,
            ]);
            let den = sum(vec![
                a2.clone() * &f1.square() * f2,
                a1a2.clone() * &f1f2,
                a1a2sq * &x2 * f1,
                x2q2.clone(),
            ]);
            (lhs, ratio(num, den, id)?)
        }
    };
    Ok(Some(sides))
}

/// `|LHS - RHS| / max(|LHS|, |RHS|, 1)` with the images computed from words.
pub fn evolution_residual<R: Real>(
    id: EvolutionId,
    p: &FieldPoint<R>,
    form: EvolutionForm,
) -> Result<f64> {
    let img = Images::from_words(p)?;
    let (l, r) = evolution_sides(id, &img, form)?.expect("word images are complete");
    Ok((l.clone() - &r).abs_f64() / l.abs_f64().max(r.abs_f64()).max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn all_identities_hold_on_word_images() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..5 {
            let p = FieldPoint::<f64>::random_constrained(&mut rng, 53);
            for id in EvolutionId::ALL {
                let r = evolution_residual(id, &p, EvolutionForm::Canonical).unwrap();
                assert!(r < 1e-12, "{id}: {r:e}");
            }
        }
    }

    #[test]
    fn printed_forward_t1_is_off() {
        let p = FieldPoint::<f64>::random_constrained(&mut ChaCha8Rng::seed_from_u64(22), 53);
        let r = evolution_residual(EvolutionId::T1Fwd, &p, EvolutionForm::Printed).unwrap();
        assert!(r > 1e-4, "{r:e}");
    }

    #[test]
    fn ids_round_trip() {
        for id in EvolutionId::ALL {
            assert_eq!(id.as_str().parse::<EvolutionId>().unwrap(), id);
        }
        assert!("t3.fwd".parse::<EvolutionId>().is_err());
    }
}
