//! Outward summation of bilateral series with a truncation certificate.

use serde::Serialize;

use super::QContext;
use crate::error::{Error, Result};
use crate::scalar::{ComplexScalar, Real};

type C<R> = ComplexScalar<R>;

/// How much of a series was summed and a bound on what was left out.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Certificate {
    pub terms: usize,
    /// Absolute bound on the neglected tail of the returned value.
    pub tail_bound: f64,
}

impl Certificate {
    pub fn merge(self, other: Certificate) -> Certificate {
        Certificate {
            terms: self.terms + other.terms,
            tail_bound: self.tail_bound + other.tail_bound,
        }
    }

    /// Scale the tail bound by a prefactor magnitude.
    pub fn scaled(self, factor: f64) -> Certificate {
        Certificate {
            terms: self.terms,
            tail_bound: self.tail_bound * factor,
        }
    }
}

/// A value with its truncation certificate.
#[derive(Clone, Debug)]
pub struct Evaluated<R: Real> {
    pub value: C<R>,
    pub cert: Certificate,
}

const QUIET_RUN: usize = 3;

/// Sum `term(0) + term(1) + ...` until three consecutive terms are below
/// `trunc_tol` relative to the largest term seen and the ratio tail bound
/// `|t_N| r / (1 - r)` confirms the remainder is below the same threshold.
///
/// The ratio bound is valid once the term magnitudes are log-concave, which
/// holds for every Gaussian-damped series summed here.
pub(crate) fn sum_direction<R: Real>(
    ctx: &QContext<R>,
    what: &'static str,
    mut term: impl FnMut(usize) -> Result<C<R>>,
) -> Result<Evaluated<R>> {
    let tol = ctx.trunc_tol();
    let mut acc = C::zero(ctx.bits());
    let mut scale = 0.0f64;
    let mut quiet = 0usize;
    let mut prev_mag = f64::NAN;
    let mut last_mag = 0.0f64;
    for i in 0..ctx.max_index() {
        let t = term(i)?;
        if !t.is_finite() {
            return Err(Error::Truncation {
                what,
                max_index: i,
                last_term: f64::INFINITY,
            });
        }
        let mag = t.abs_f64();
        acc = acc + t;
        scale = scale.max(mag);
        last_mag = mag;
        if mag <= tol * scale {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if quiet >= QUIET_RUN {
            let r = if prev_mag > 0.0 {
                mag / prev_mag
            } else if mag == 0.0 {
                0.0
            } else {
                f64::INFINITY
            };
            if r < 1.0 {
                let tail = mag * r / (1.0 - r);
                if tail <= tol * scale {
                    return Ok(Evaluated {
                        value: acc,
                        cert: Certificate {
                            terms: i + 1,
                            tail_bound: tail,
                        },
                    });
                }
            }
        }
        prev_mag = mag;
    }
    Err(Error::Truncation {
        what,
        max_index: ctx.max_index(),
        last_term: last_mag,
    })
}

/// Bilateral sum: indices `0, 1, 2, ...` and `-1, -2, ...`, each direction
/// stopped independently.
pub(crate) fn sum_bilateral<R: Real>(
    ctx: &QContext<R>,
    what: &'static str,
    mut term: impl FnMut(i64) -> Result<C<R>>,
) -> Result<Evaluated<R>> {
    let up = sum_direction(ctx, what, |i| term(i as i64))?;
    let down = sum_direction(ctx, what, |i| term(-(i as i64) - 1))?;
    Ok(Evaluated {
        value: up.value + down.value,
        cert: up.cert.merge(down.cert),
    })
}

/// `∏_{j≥0} (1 - y g^j)` for `|g| < 1`, stopped when the correction
/// `|y g^j|` and its geometric tail fall below the threshold.
pub(crate) fn q_product<R: Real>(
    ctx: &QContext<R>,
    what: &'static str,
    y: &C<R>,
    g: &C<R>,
) -> Result<Evaluated<R>> {
    let tol = ctx.trunc_tol();
    let one = ctx.c(1.0, 0.0);
    let g_abs = g.abs_f64();
    let mut acc = one.clone();
    let mut power = y.clone();
    for j in 0..ctx.max_index() {
        let mag = power.abs_f64();
        if mag < tol && g_abs < 1.0 {
            let tail = mag / (1.0 - g_abs);
            if tail < tol {
                return Ok(Evaluated {
                    value: acc.clone(),
                    cert: Certificate {
                        terms: j,
                        tail_bound: tail * acc.abs_f64(),
                    },
                });
            }
        }
        acc = acc * (one.clone() - &power);
        power = power * g;
    }
    Err(Error::Truncation {
        what,
        max_index: ctx.max_index(),
        last_term: power.abs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let ctx = QContext::<f64>::from_f64(0.0, 1.0, 53).unwrap();
        let r = ctx.c(0.5, 0.0);
        let mut p = ctx.c(1.0, 0.0);
        let s = sum_direction(&ctx, "geo", |_| {
            let t = p.clone();
            p = p.clone() * &r;
            Ok(t)
        })
        .unwrap();
        assert!((s.value.re - 2.0).abs() < 1e-15);
        assert!(s.cert.tail_bound <= 1e-24 * 1.0);
    }

    #[test]
    fn divergent_series_is_a_truncation_error() {
        let ctx = QContext::<f64>::from_f64(0.0, 1.0, 53)
            .unwrap()
            .with_max_index(50)
            .unwrap();
        let err = sum_direction(&ctx, "div", |i| Ok(ctx.c(1.0 + i as f64, 0.0))).unwrap_err();
        match err {
            Error::Truncation {
                max_index,
                last_term,
                ..
            } => {
                assert_eq!(max_index, 50);
                assert_eq!(last_term, 50.0);
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn growing_then_decaying_terms_are_not_cut_early() {
        // Terms 1e-30 * exp(-(i - 20)^2 / 4): tiny at first, peak at i = 20.
        let ctx = QContext::<f64>::from_f64(0.0, 1.0, 53).unwrap();
        let s = sum_direction(&ctx, "bump", |i| {
            let x = i as f64 - 20.0;
            Ok(ctx.c((-x * x / 4.0).exp(), 0.0))
        })
        .unwrap();
        let exact: f64 = (0..200)
            .map(|i| (-(i as f64 - 20.0).powi(2) / 4.0).exp())
            .sum();
        assert!((s.value.re - exact).abs() < 1e-14);
    }

    #[test]
    fn euler_function_product() {
        // (q; q)_inf at q = e^{-π}: compare with the pentagonal-number series.
        let ctx = QContext::<f64>::from_f64(0.0, 1.0, 53).unwrap();
        let q = ctx.q().clone();
        let prod = q_product(&ctx, "euler", &q, &q).unwrap().value;
        let qr = q.re;
        let mut series = 0.0;
        for k in -10i32..=10 {
            let e = k * (3 * k - 1) / 2;
            series += if k % 2 == 0 { 1.0 } else { -1.0 } * qr.powi(e);
        }
        assert!((prod.re - series).abs() < 1e-15);
    }
}
