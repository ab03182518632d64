//! Birational action of the extended affine Weyl group on the field
//! coordinates `(q, x, a₀, a₁, a₂, f₀, f₁, f₂)`.
//!
//! Words act as field automorphisms: `(wv)(F) = w(v(F))`. Evaluated on a
//! numeric point this means the leftmost letter's substitution is applied to
//! the point first, which is the order in which `T = π³r₀` sends `x` to `xq`.

mod evolution;
mod relations;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{ComplexScalar, Real};

pub use evolution::{evolution_residual, evolution_sides, EvolutionForm, EvolutionId, Images};
pub use relations::{
    calibrate, check_constraint_preservation, check_group_relations, check_shifts, relations,
    Relation, WEYL_TOLERANCE,
};

type C<R> = ComplexScalar<R>;

/// A point of the field `K = C(q, x, a₀, a₁, a₂, f₀, f₁, f₂)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldPoint<R: Real> {
    pub q: C<R>,
    pub x: C<R>,
    pub a: [C<R>; 3],
    pub f: [C<R>; 3],
}

impl<R: Real> FieldPoint<R> {
    /// Completes `a₀ = q/(a₁a₂)` and `f₀ = x²q/(f₁f₂)`.
    pub fn constrained(q: C<R>, x: C<R>, a1: C<R>, a2: C<R>, f1: C<R>, f2: C<R>) -> Result<Self> {
        let a0 = q.try_div(&(a1.clone() * &a2), "a0 = q/(a1 a2)")?;
        let f0 = (x.square() * &q).try_div(&(f1.clone() * &f2), "f0 = x^2 q/(f1 f2)")?;
        Ok(FieldPoint {
            q,
            x,
            a: [a0, a1, a2],
            f: [f0, f1, f2],
        })
    }

    /// Random constrained point with `q = 0.5·z` and the free coordinates `z`
    /// drawn from `[0.5, 1.5] + i[-0.5, 0.5]`.
    pub fn random_constrained(rng: &mut impl Rng, bits: u32) -> Self {
        let mut draw = || C::from_f64(rng.gen_range(0.5..1.5), rng.gen_range(-0.5..0.5), bits);
        let q = draw().scale_f64(0.5);
        let x = draw();
        let (a1, a2, f1, f2) = (draw(), draw(), draw(), draw());
        FieldPoint::constrained(q, x, a1, a2, f1, f2).expect("coordinates bounded away from zero")
    }

    /// Coordinates in the order `q, x, a₀, a₁, a₂, f₀, f₁, f₂`.
    pub fn coords(&self) -> [&C<R>; 8] {
        [
            &self.q, &self.x, &self.a[0], &self.a[1], &self.a[2], &self.f[0], &self.f[1],
            &self.f[2],
        ]
    }

    /// Largest coordinatewise `|u - v| / max(|u|, |v|, 1)`.
    pub fn deviation(&self, other: &Self) -> f64 {
        self.coords()
            .iter()
            .zip(other.coords())
            .map(|(u, v)| {
                let d = ((*u).clone() - v).abs_f64();
                d / u.abs_f64().max(v.abs_f64()).max(1.0)
            })
            .fold(0.0, f64::max)
    }

    /// Relative defects of `a₀a₁a₂ = q` and `f₀f₁f₂ = x²q`, the larger one.
    pub fn constraint_residual(&self) -> f64 {
        let prod_a = self.a[0].clone() * &self.a[1] * &self.a[2];
        let prod_f = self.f[0].clone() * &self.f[1] * &self.f[2];
        let target_f = self.x.square() * &self.q;
        let ra = (prod_a.clone() - &self.q).abs_f64() / prod_a.abs_f64().max(self.q.abs_f64());
        let rf = (prod_f.clone() - &target_f).abs_f64() / prod_f.abs_f64().max(target_f.abs_f64());
        ra.max(rf)
    }

    pub fn bits(&self) -> u32 {
        self.q.bits()
    }
}

/// Generators of the extended affine Weyl group, plus `π⁻¹ = π⁵`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Generator {
    S0,
    S1,
    S2,
    R0,
    R1,
    Iota,
    Pi,
    PiInv,
}

impl Generator {
    pub fn name(self) -> &'static str {
        match self {
            Generator::S0 => "s0",
            Generator::S1 => "s1",
            Generator::S2 => "s2",
            Generator::R0 => "r0",
            Generator::R1 => "r1",
            Generator::Iota => "iota",
            Generator::Pi => "pi",
            Generator::PiInv => "pi^-1",
        }
    }

    pub fn inverse(self) -> Generator {
        match self {
            Generator::Pi => Generator::PiInv,
            Generator::PiInv => Generator::Pi,
            g => g,
        }
    }

    pub const ALL: [Generator; 7] = [
        Generator::S0,
        Generator::S1,
        Generator::S2,
        Generator::R0,
        Generator::R1,
        Generator::Iota,
        Generator::Pi,
    ];
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "s0" => Generator::S0,
            "s1" => Generator::S1,
            "s2" => Generator::S2,
            "r0" => Generator::R0,
            "r1" => Generator::R1,
            "iota" => Generator::Iota,
            "pi" => Generator::Pi,
            "pi^-1" | "pi_inv" => Generator::PiInv,
            _ => return Err(Error::Parse(format!("unknown generator `{s}`"))),
        })
    }
}

/// A word in the generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeylWord {
    pub letters: Vec<Generator>,
}

impl WeylWord {
    pub fn new(letters: Vec<Generator>) -> Self {
        WeylWord { letters }
    }

    pub fn identity() -> Self {
        WeylWord::default()
    }

    pub fn power(g: Generator, k: usize) -> Self {
        WeylWord::new(vec![g; k])
    }

    pub fn then(mut self, other: &WeylWord) -> Self {
        self.letters.extend_from_slice(&other.letters);
        self
    }

    pub fn repeat(&self, k: usize) -> Self {
        WeylWord::new(self.letters.repeat(k))
    }

    pub fn inverse(&self) -> Self {
        WeylWord::new(self.letters.iter().rev().map(|g| g.inverse()).collect())
    }

    /// `T = π³r₀`, translating `x` by `q`.
    pub fn t() -> Self {
        use Generator::*;
        WeylWord::new(vec![Pi, Pi, Pi, R0])
    }

    /// `T₁ = π²s₂s₀`, translating `a₁` by `q`.
    pub fn t1() -> Self {
        use Generator::*;
        WeylWord::new(vec![Pi, Pi, S2, S0])
    }

    /// `T₂ = π⁴s₁s₀`, translating `a₂` by `q`.
    pub fn t2() -> Self {
        use Generator::*;
        WeylWord::new(vec![Pi, Pi, Pi, Pi, S1, S0])
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<&str> = self.letters.iter().map(|g| g.name()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for WeylWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "" | "1" => Ok(WeylWord::identity()),
            "T" => Ok(WeylWord::t()),
            "T1" => Ok(WeylWord::t1()),
            "T2" => Ok(WeylWord::t2()),
            t => t
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<Vec<_>>>()
                .map(WeylWord::new),
        }
    }
}

fn guard<R: Real>(
    den: &C<R>,
    monomials: &[&C<R>],
    generator: Generator,
    polynomial: &str,
) -> Result<()> {
    let scale: f64 = monomials.iter().map(|m| m.abs_f64()).sum();
    let rel = 2f64.powi(8 - den.bits() as i32);
    if !(den.abs_f64() > rel * scale) {
        return Err(Error::SingularAction {
            generator: generator.name(),
            polynomial: polynomial.to_string(),
        });
    }
    Ok(())
}

fn div<R: Real>(a: C<R>, b: &C<R>) -> Result<C<R>> {
    a.try_div(b, "weyl action")
}

fn apply_s<R: Real>(j: usize, g: Generator, p: &FieldPoint<R>) -> Result<FieldPoint<R>> {
    let (j1, j2) = ((j + 1) % 3, (j + 2) % 3);
    let (a, f) = (&p.a, &p.f);
    let one = a[j].like(1.0, 0.0);
    let af = a[j].clone() * &f[j];
    let plus = one.clone() + &af;
    let sum = a[j].clone() + &f[j];
    guard(&a[j], &[&a[j]], g, "a_j")?;
    guard(&plus, &[&one, &af], g, "1 + a_j f_j")?;
    guard(&sum, &[&a[j], &f[j]], g, "a_j + f_j")?;
    let mut out = p.clone();
    out.a[j] = a[j].recip()?;
    out.a[j1] = a[j].clone() * &a[j1];
    out.a[j2] = a[j].clone() * &a[j2];
    out.f[j1] = div(f[j1].clone() * &sum, &plus)?;
    out.f[j2] = div(f[j2].clone() * &plus, &sum)?;
    Ok(out)
}

fn apply_r0<R: Real>(p: &FieldPoint<R>) -> Result<FieldPoint<R>> {
    let g = Generator::R0;
    let (a, f) = (&p.a, &p.f);
    guard(&p.x, &[&p.x], g, "x")?;
    let mut out = p.clone();
    out.x = div(p.q.square(), &p.x)?;
    for j in 0..3 {
        let (j1, j2) = ((j + 1) % 3, (j + 2) % 3);
        let n = [
            a[j].clone() * &a[j2],
            a[j2].clone() * &f[j],
            f[j].clone() * &f[j2],
        ];
        let d = [
            a[j].clone() * &a[j1],
            a[j].clone() * &f[j1],
            f[j].clone() * &f[j1],
        ];
        let num = n[0].clone() + &n[1] + &n[2];
        let den = d[0].clone() + &d[1] + &d[2];
        guard(&f[j2], &[&f[j2]], g, "f_{j+2}")?;
        guard(
            &den,
            &[&d[0], &d[1], &d[2]],
            g,
            "a_j a_{j+1} + a_j f_{j+1} + f_j f_{j+1}",
        )?;
        let pre = div(a[j].clone() * &a[j1], &f[j2])?;
        out.f[j] = div(pre * num, &den)?;
    }
    Ok(out)
}

fn apply_r1<R: Real>(p: &FieldPoint<R>) -> Result<FieldPoint<R>> {
    let g = Generator::R1;
    let (a, f) = (&p.a, &p.f);
    guard(&p.x, &[&p.x], g, "x")?;
    let mut out = p.clone();
    out.x = p.x.recip()?;
    for j in 0..3 {
        let (j1, j2) = ((j + 1) % 3, (j + 2) % 3);
        let one = a[j].like(1.0, 0.0);
        let n = [a[j].clone() * &f[j], a[j].clone() * &a[j1] * &f[j] * &f[j1]];
        let d = [
            a[j2].clone() * &f[j2],
            a[j].clone() * &a[j2] * &f[j] * &f[j2],
        ];
        let num = one.clone() + &n[0] + &n[1];
        let den = one.clone() + &d[0] + &d[1];
        let pre = a[j].clone() * &a[j1] * &f[j1];
        guard(&pre, &[&pre], g, "a_j a_{j+1} f_{j+1}")?;
        guard(
            &den,
            &[&one, &d[0], &d[1]],
            g,
            "1 + a_{j+2} f_{j+2} + a_j a_{j+2} f_j f_{j+2}",
        )?;
        out.f[j] = div(num, &(pre * den))?;
    }
    Ok(out)
}

fn apply_iota<R: Real>(p: &FieldPoint<R>) -> Result<FieldPoint<R>> {
    let g = Generator::Iota;
    guard(&p.q, &[&p.q], g, "q")?;
    let mut out = p.clone();
    out.q = p.q.recip()?;
    out.x = p.x.clone() * &p.q;
    for j in 0..3 {
        let k = (2 * j) % 3;
        guard(&p.a[k], &[&p.a[k]], g, "a_{2j}")?;
        out.a[j] = p.a[k].recip()?;
        out.f[j] = p.f[k].clone();
    }
    Ok(out)
}

fn apply_pi<R: Real>(p: &FieldPoint<R>) -> Result<FieldPoint<R>> {
    let g = Generator::Pi;
    guard(&p.x, &[&p.x], g, "x")?;
    let mut out = p.clone();
    out.x = div(p.q.clone(), &p.x)?;
    for j in 0..3 {
        let k = (j + 1) % 3;
        guard(&p.f[k], &[&p.f[k]], g, "f_{j+1}")?;
        out.a[j] = p.a[k].clone();
        out.f[j] = p.f[k].recip()?;
    }
    Ok(out)
}

/// Image of a point under one generator, exactly as in the action table;
/// coordinates the table does not mention are left unchanged.
pub fn apply_generator<R: Real>(g: Generator, p: &FieldPoint<R>) -> Result<FieldPoint<R>> {
    match g {
        Generator::S0 => apply_s(0, g, p),
        Generator::S1 => apply_s(1, g, p),
        Generator::S2 => apply_s(2, g, p),
        Generator::R0 => apply_r0(p),
        Generator::R1 => apply_r1(p),
        Generator::Iota => apply_iota(p),
        Generator::Pi => apply_pi(p),
        Generator::PiInv => {
            let mut out = p.clone();
            for _ in 0..5 {
                out = apply_pi(&out)?;
            }
            Ok(out)
        }
    }
}

/// Image of a point under a word; the leftmost letter is substituted first.
pub fn apply_word<R: Real>(w: &WeylWord, p: &FieldPoint<R>) -> Result<FieldPoint<R>> {
    let mut out = p.clone();
    for (step, &g) in w.letters.iter().enumerate() {
        out = apply_generator(g, &out).map_err(|e| Error::WordStep {
            step,
            source: Box::new(e),
        })?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn point(seed: u64) -> FieldPoint<f64> {
        FieldPoint::random_constrained(&mut ChaCha8Rng::seed_from_u64(seed), 53)
    }

    #[test]
    fn s0_and_pi_orders() {
        let p = point(1);
        let s = apply_word(&WeylWord::power(Generator::S0, 2), &p).unwrap();
        assert!(s.deviation(&p) < 1e-12);
        let r = apply_word(&WeylWord::power(Generator::Pi, 6), &p).unwrap();
        assert!(r.deviation(&p) < 1e-12);
        let inv = apply_word(&WeylWord::new(vec![Generator::Pi, Generator::PiInv]), &p).unwrap();
        assert!(inv.deviation(&p) < 1e-12);
    }

    #[test]
    fn iota_swaps_f1_and_f2() {
        let p = point(2);
        let i = apply_generator(Generator::Iota, &p).unwrap();
        assert_eq!(i.f[1], p.f[2]);
        assert_eq!(i.f[2], p.f[1]);
        assert_eq!(i.f[0], p.f[0]);
    }

    #[test]
    fn translations_shift_parameters() {
        let p = point(3);
        let t = apply_word(&WeylWord::t(), &p).unwrap();
        assert!((t.x.clone() - p.x.clone() * &p.q).abs_f64() < 1e-13);
        let t1 = apply_word(&WeylWord::t1(), &p).unwrap();
        assert!((t1.a[1].clone() - p.a[1].clone() * &p.q).abs_f64() < 1e-13);
        assert!((t1.a[2].clone() - &p.a[2]).abs_f64() < 1e-13);
        let t2 = apply_word(&WeylWord::t2(), &p).unwrap();
        assert!((t2.a[2].clone() - p.a[2].clone() * &p.q).abs_f64() < 1e-13);
    }

    #[test]
    fn empty_word_is_identity() {
        let p = point(4);
        assert_eq!(apply_word(&WeylWord::identity(), &p).unwrap(), p);
    }

    #[test]
    fn singular_action_names_the_polynomial() {
        let mut p = point(5);
        // 1 + a0 f0 = 0.
        p.f[0] = p.a[0].recip().unwrap().scale_f64(-1.0);
        let err = apply_generator(Generator::S0, &p).unwrap_err();
        assert_eq!(
            err,
            Error::SingularAction {
                generator: "s0",
                polynomial: "1 + a_j f_j".into()
            }
        );
        let w = WeylWord::new(vec![Generator::S1, Generator::S1, Generator::S0]);
        let err = apply_word(&w, &p).unwrap_err();
        assert!(matches!(err, Error::WordStep { step: 2, .. }));
    }

    #[test]
    fn word_parsing_round_trips() {
        let w: WeylWord = "pi pi s2 s0".parse().unwrap();
        assert_eq!(w, WeylWord::t1());
        assert_eq!(w.to_string(), "pi pi s2 s0");
        assert_eq!(WeylWord::t1().inverse().to_string(), "s0 s2 pi^-1 pi^-1");
        assert!("pi q".parse::<WeylWord>().is_err());
    }

    #[test]
    fn inverse_words_undo() {
        let p = point(6);
        for w in [WeylWord::t(), WeylWord::t1(), WeylWord::t2()] {
            let there = apply_word(&w, &p).unwrap();
            let back = apply_word(&w.inverse(), &there).unwrap();
            assert!(back.deviation(&p) < 1e-12, "{w}");
        }
    }
}
