use serde::Serialize;

use super::series::{q_product, sum_bilateral, sum_direction, Certificate, Evaluated};
use super::QContext;
use crate::error::{Error, Result};
use crate::scalar::{gauss_e_gap, ComplexScalar, Real};

type C<R> = ComplexScalar<R>;

/// Arguments of the generalized μ-function.
#[derive(Clone, Debug)]
pub struct MuArgs<R: Real> {
    pub u: C<R>,
    pub v: C<R>,
    pub alpha: C<R>,
}

/// `value = num / den` with tails propagated to first order.
fn quotient(num: Evaluated<impl Real>, den: Evaluated<impl Real>) -> Certificate {
    let d = den.value.abs_f64();
    let v = num.value.abs_f64() / d;
    Certificate {
        terms: num.cert.terms + den.cert.terms,
        tail_bound: num.cert.tail_bound / d + v * den.cert.tail_bound / d,
    }
}

fn finish<R: Real>(
    prefactor: C<R>,
    series: Evaluated<R>,
    theta_v: Evaluated<R>,
    what: &'static str,
) -> Result<Evaluated<R>> {
    let value = (prefactor.clone() * &series.value).try_div(&theta_v.value, what)?;
    let p = prefactor.abs_f64();
    let num = Evaluated {
        value: series.value.scale_f64(p),
        cert: series.cert.scaled(p),
    };
    Ok(Evaluated {
        value,
        cert: quotient(num, theta_v),
    })
}

/// `(base)_n = ∏_{l=1}^n (1 - base^l)`.
pub fn q_factorial<R: Real>(ctx: &QContext<R>, n: usize, base: &C<R>) -> C<R> {
    let one = ctx.c(1.0, 0.0);
    let mut acc = one.clone();
    let mut p = one.clone();
    for _ in 0..n {
        p = p * base;
        acc = acc * (one.clone() - &p);
    }
    acc
}

pub fn theta_eval<R: Real>(ctx: &QContext<R>, z: &C<R>) -> Result<Evaluated<R>> {
    if !z.is_finite() {
        return Err(Error::Domain("theta argument is not finite".into()));
    }
    let pi = ctx.pi();
    let zh = z.clone() + ctx.c(0.5, 0.0);
    let two_pi_i_zh = zh.mul_i().scale(&(pi.clone() + &pi));
    let pi_i_tau = ctx.tau().mul_i().scale(&pi);
    sum_bilateral(ctx, "theta", |k| {
        let nu = k as f64 + 0.5;
        Ok((two_pi_i_zh.scale_f64(nu) + pi_i_tau.scale_f64(nu * nu)).exp())
    })
}

/// `θ(z) = Σ_{ν∈Z+1/2} exp(2πiν(z+1/2) + πiν²τ)`.
pub fn theta<R: Real>(ctx: &QContext<R>, z: &C<R>) -> Result<C<R>> {
    theta_eval(ctx, z).map(|e| e.value)
}

pub fn mu_eval<R: Real>(ctx: &QContext<R>, u: &C<R>, v: &C<R>) -> Result<Evaluated<R>> {
    ctx.check_off_lattice(v, "v")?;
    ctx.check_off_lattice(u, "u")?;
    let pi = ctx.pi();
    let two_pi_i = ctx.c(0.0, 2.0).scale(&pi);
    let two_pi_i_v = two_pi_i.clone() * v;
    let two_pi_i_u = two_pi_i.clone() * u;
    let pi_i_tau = ctx.tau().mul_i().scale(&pi);
    let one = ctx.c(1.0, 0.0);
    let eps = ctx.lattice_eps();
    let series = sum_bilateral(ctx, "mu", |n| {
        let nf = n as f64;
        let num = (two_pi_i_v.scale_f64(nf) + pi_i_tau.scale_f64(nf * (nf + 1.0))).exp();
        let den = one.clone() - (two_pi_i_u.clone() + pi_i_tau.scale_f64(2.0 * nf)).exp();
        if den.abs_f64() < eps {
            return Err(Error::Pole(format!("mu denominator vanishes at n = {n}")));
        }
        let t = num.try_div(&den, "mu term")?;
        Ok(if n.rem_euclid(2) == 1 { -t } else { t })
    })?;
    let th = theta_eval(ctx, v)?;
    finish(ctx.e_pi_i(u), series, th, "mu: theta(v)")
}

/// Appell-Lerch type sum
/// `μ(u,v) = e^{πiu}/θ(v) Σ_n (-1)^n e^{2πinv+πin(n+1)τ} / (1 - e^{2πiu+2πinτ})`.
pub fn mu<R: Real>(ctx: &QContext<R>, u: &C<R>, v: &C<R>) -> Result<C<R>> {
    mu_eval(ctx, u, v).map(|e| e.value)
}

pub fn mu_general_eval<R: Real>(ctx: &QContext<R>, args: &MuArgs<R>) -> Result<Evaluated<R>> {
    ctx.check_off_lattice(&args.v, "v")?;
    let th = theta_eval(ctx, &args.v)?;
    mu_general_with_theta(ctx, args, th)
}

/// [`mu_general_eval`] with `θ(v)` supplied by the caller, for batches that share `v`.
pub(crate) fn mu_general_with_theta<R: Real>(
    ctx: &QContext<R>,
    args: &MuArgs<R>,
    th: Evaluated<R>,
) -> Result<Evaluated<R>> {
    let MuArgs { u, v, alpha } = args;
    ctx.check_off_lattice(v, "v")?;
    ctx.check_off_lattice(u, "u")?;
    let shifted = u.clone() - ctx.tau().clone() * alpha;
    ctx.check_off_lattice(&shifted, "u - alpha*tau")?;

    // P(n) = N(n)/D(n), N(n) = (X g^{n+1}; g)_∞, D(n) = (Y g^{n+1}; g)_∞,
    // X = e^{2πiu}, Y = X q^{-2α}, g = q².
    let g = ctx.epow_f64(2.0);
    let g_inv = ctx.epow_f64(-2.0);
    let x = ctx.e_2pi_i(u);
    let y = ctx.e_2pi_i(&shifted);
    let n0 = q_product(ctx, "mu_general product", &(x.clone() * &g), &g)?;
    let d0 = q_product(ctx, "mu_general product", &(y.clone() * &g), &g)?;
    let product_cert = n0.cert.merge(d0.cert);

    // Gaussian factor (-1)^n e^{2πi(n+1/2)v} q^{n(n+1)}, advanced by ratios:
    // term n+1 = term n × (-E g^{n+1}) and term -n-1 = term -n × (-E⁻¹ g^n),
    // with E = e^{2πiv}.
    let one = ctx.c(1.0, 0.0);
    let e = ctx.e_2pi_i(v);
    let e_inv = e.recip()?;
    let half = ctx.e_pi_i(v);

    // Upward: P(n+1) = P(n)(1 - Y g^{n+1})/(1 - X g^{n+1}), P = N/D.
    let mut ratio = n0.value.try_div(&d0.value, "mu_general ratio")?;
    let mut gauss = half.clone();
    let mut gpow = one.clone();
    let (mut xg, mut yg) = (x.clone(), y.clone());
    let up = sum_direction(ctx, "mu_general", |i| {
        if i > 0 {
            xg = xg.clone() * &g;
            yg = yg.clone() * &g;
            gpow = gpow.clone() * &g;
            gauss = -(gauss.clone() * &e * &gpow);
            ratio = ratio.clone() * (one.clone() - &yg);
            ratio = ratio.try_div(&(one.clone() - &xg), "mu_general numerator")?;
        }
        Ok(gauss.clone() * &ratio)
    })?;

    // Downward: P(n-1) = P(n)(1 - X g^n)/(1 - Y g^n), starting from n = 0.
    let mut ratio = n0.value.try_div(&d0.value, "mu_general ratio")?;
    let mut gauss = -half.recip()?;
    let mut gpow = one.clone();
    let (mut xg, mut yg) = (x.clone() * &g, y.clone() * &g);
    let down = sum_direction(ctx, "mu_general", |i| {
        xg = xg.clone() * &g_inv;
        yg = yg.clone() * &g_inv;
        ratio = ratio.clone() * (one.clone() - &xg);
        ratio = ratio.try_div(&(one.clone() - &yg), "mu_general denominator")?;
        if i > 0 {
            gpow = gpow.clone() * &g;
            gauss = -(gauss.clone() * &e_inv * &gpow);
        }
        Ok(gauss.clone() * &ratio)
    })?;

    let series = Evaluated {
        value: up.value + down.value,
        cert: up.cert.merge(down.cert).merge(Certificate {
            terms: product_cert.terms,
            tail_bound: 0.0,
        }),
    };
    let pre = ctx.e_pi_i(&(alpha.clone() * &(u.clone() - v)));
    let mut out = finish(pre, series, th, "mu_general: theta(v)")?;
    // Relative product truncation carries straight into the value.
    out.cert.tail_bound += out.value.abs_f64() * product_cert.tail_bound;
    Ok(out)
}

/// Generalized μ-function
/// `μ(u,v;α) = e^{πiα(u-v)}/θ(v) Σ_n (-1)^n e^{2πi(n+1/2)v} q^{n(n+1)}
/// (X q^{2n+2}; q²)_∞ / (X q^{2(n-α+1)}; q²)_∞` with `X = e^{2πiu}`.
pub fn mu_general<R: Real>(ctx: &QContext<R>, args: &MuArgs<R>) -> Result<C<R>> {
    mu_general_eval(ctx, args).map(|e| e.value)
}

/// Convenience form of [`mu_general`].
pub fn mu_alpha<R: Real>(ctx: &QContext<R>, u: &C<R>, v: &C<R>, alpha: &C<R>) -> Result<C<R>> {
    mu_general(
        ctx,
        &MuArgs {
            u: u.clone(),
            v: v.clone(),
            alpha: alpha.clone(),
        },
    )
}

/// `H_n(u|b) = Σ_l (b)_n / ((b)_l (b)_{n-l}) e^{πi(n-2l)u}`.
pub fn hermite_h<R: Real>(ctx: &QContext<R>, n: usize, u: &C<R>, base: &C<R>) -> Result<C<R>> {
    let fact: Vec<C<R>> = (0..=n).map(|l| q_factorial(ctx, l, base)).collect();
    let mut acc = ctx.c(0.0, 0.0);
    for l in 0..=n {
        let coeff = fact[n].try_div(&(fact[l].clone() * &fact[n - l]), "hermite_h")?;
        let phase = ctx.e_pi_i(&u.scale_f64(n as f64 - 2.0 * l as f64));
        acc = acc + coeff * phase;
    }
    Ok(acc)
}

/// `F_n(u|b)`, indexed so that `F_{N+1} = (-1)^N b^{N(N+1)/2}
/// Σ_l b^{l(l-N)} / ((b)_{N-l} (b)_l) e^{πi(N-2l)u}`.
pub fn poly_f<R: Real>(ctx: &QContext<R>, n: usize, u: &C<R>, base: &C<R>) -> Result<C<R>> {
    if n == 0 {
        return Err(Error::Domain("poly_f needs n >= 1".into()));
    }
    let big_n = n - 1;
    let fact: Vec<C<R>> = (0..=big_n).map(|l| q_factorial(ctx, l, base)).collect();
    let mut acc = ctx.c(0.0, 0.0);
    for l in 0..=big_n {
        let e = (l as i64) * (l as i64 - big_n as i64);
        let coeff = base
            .powi(e)?
            .try_div(&(fact[big_n - l].clone() * &fact[l]), "poly_f")?;
        let phase = ctx.e_pi_i(&u.scale_f64(big_n as f64 - 2.0 * l as f64));
        acc = acc + coeff * phase;
    }
    let pre = base.powi((big_n * (big_n + 1) / 2) as i64)?;
    let acc = acc * &pre;
    Ok(if big_n % 2 == 1 { -acc } else { acc })
}

/// Smallest `max_index` for which the R-series is allowed to run.
pub fn r_function_index_bound<R: Real>(ctx: &QContext<R>, u: &C<R>) -> f64 {
    let t = ctx.t().to_f64();
    let a = u.im.to_f64() / t;
    let decay = (-ctx.trunc_tol().ln()).max(0.0) / (std::f64::consts::PI * t);
    a.abs() + decay.sqrt() + 4.0
}

pub fn r_function_eval<R: Real>(ctx: &QContext<R>, u: &C<R>) -> Result<Evaluated<R>> {
    let need = r_function_index_bound(ctx, u);
    if (ctx.max_index() as f64) < need {
        return Err(Error::Domain(format!(
            "R(u) with Im u = {} needs max_index >= {need:.1}, have {}",
            u.im.to_f64(),
            ctx.max_index()
        )));
    }
    let pi = ctx.pi();
    let a = u.im.clone() / ctx.t();
    let root = (ctx.t().clone() * ctx.real(2.0)).sqrt();
    let two_pi_i_u = u.mul_i().scale(&(pi.clone() + &pi));
    let pi_i_tau = ctx.tau().mul_i().scale(&pi);
    sum_bilateral(ctx, "r_function", |k| {
        let nu = k as f64 + 0.5;
        let sign: i8 = if nu > 0.0 { 1 } else { -1 };
        let y = (a.like(nu) + &a) * &root;
        let gap = gauss_e_gap(sign, &y);
        let phase = (two_pi_i_u.scale_f64(-nu) - pi_i_tau.scale_f64(nu * nu)).exp();
        let t = phase.scale(&gap);
        Ok(if k.rem_euclid(2) == 1 { -t } else { t })
    })
}

/// `R(u|τ) = Σ_{ν∈Z+1/2} (sgn ν - E((ν+a)√(2t))) (-1)^{ν-1/2} e^{-2πiνu} q^{-ν²}`
/// with `t = Im τ`, `a = Im u / t`.
pub fn r_function<R: Real>(ctx: &QContext<R>, u: &C<R>) -> Result<C<R>> {
    r_function_eval(ctx, u).map(|e| e.value)
}

pub fn mu_tilde_eval<R: Real>(ctx: &QContext<R>, u: &C<R>, v: &C<R>) -> Result<Evaluated<R>> {
    let m = mu_eval(ctx, u, v)?;
    let r = r_function_eval(ctx, &(u.clone() - v))?;
    Ok(Evaluated {
        value: m.value + r.value.mul_i().scale_f64(0.5),
        cert: m.cert.merge(r.cert.scaled(0.5)),
    })
}

/// Completed μ-function `μ̃(u,v) = μ(u,v) + (i/2) R(u-v)`.
pub fn mu_tilde<R: Real>(ctx: &QContext<R>, u: &C<R>, v: &C<R>) -> Result<C<R>> {
    mu_tilde_eval(ctx, u, v).map(|e| e.value)
}

/// `Σ_{l=1}^{L} q^{2l}/(q²)_l F_{L-l+1}(w|q²) H_{l-1}(w|q²)`.
fn correction_sum<R: Real>(ctx: &QContext<R>, big_l: usize, w: &C<R>) -> Result<C<R>> {
    let q2 = ctx.epow_f64(2.0);
    let mut acc = ctx.c(0.0, 0.0);
    for l in 1..=big_l {
        let coeff = ctx
            .epow_f64(2.0 * l as f64)
            .try_div(&q_factorial(ctx, l, &q2), "correction sum")?;
        let f = poly_f(ctx, big_l - l + 1, w, &q2)?;
        let h = hermite_h(ctx, l - 1, w, &q2)?;
        acc = acc + coeff * f * h;
    }
    Ok(acc)
}

/// `R_n(w) = F_n(w|q²) R(w) + 2 q^{-1/4} Σ_{l=1}^{n-1} q^{2l}/(q²)_l F_{n-l}(w|q²) H_{l-1}(w|q²)`,
/// so that `μ(u,v;n) + (i/2) R_n(u-v) = F_n(u-v|q²) μ̃(u,v)`.
pub fn r_n_completion<R: Real>(ctx: &QContext<R>, n: usize, w: &C<R>) -> Result<C<R>> {
    if n == 0 {
        return Err(Error::Domain("r_n_completion needs n >= 1".into()));
    }
    let q2 = ctx.epow_f64(2.0);
    let main = poly_f(ctx, n, w, &q2)? * r_function(ctx, w)?;
    let corr = correction_sum(ctx, n - 1, w)? * ctx.epow_f64(-0.25).scale_f64(2.0);
    Ok(main + corr)
}

/// Relative defect of `μ(u,v;n) + (i/2) R_n(u-v) = F_n(u-v|q²) μ̃(u,v)`.
pub fn completion_residual<R: Real>(
    ctx: &QContext<R>,
    n: usize,
    u: &C<R>,
    v: &C<R>,
) -> Result<f64> {
    let w = u.clone() - v;
    let q2 = ctx.epow_f64(2.0);
    let alpha = ctx.c(n as f64, 0.0);
    let lhs = mu_alpha(ctx, u, v, &alpha)? + r_n_completion(ctx, n, &w)?.mul_i().scale_f64(0.5);
    let rhs = poly_f(ctx, n, &w, &q2)? * mu_tilde(ctx, u, v)?;
    Ok(pair_residual(&lhs, &rhs))
}

/// `μ(u,v;n+1)` through its finite expansion in `μ(u,v)`:
/// `F_{n+1}(w|q²) μ(u,v) - i q^{-1/4} Σ_{l=1}^n q^{2l}/(q²)_l F_{n-l+1}(w|q²) H_{l-1}(w|q²)`.
pub fn mu_integer_expansion<R: Real>(
    ctx: &QContext<R>,
    n: usize,
    u: &C<R>,
    v: &C<R>,
) -> Result<C<R>> {
    let w = u.clone() - v;
    let q2 = ctx.epow_f64(2.0);
    let main = poly_f(ctx, n + 1, &w, &q2)? * mu(ctx, u, v)?;
    let corr = correction_sum(ctx, n, &w)? * ctx.epow_f64(-0.25).mul_i();
    Ok(main - corr)
}

/// The two contiguous relations in the first argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Contiguous {
    /// `q^{-α} μ(u+v+τ,v;α) + x² μ(u+v,v;α) - x μ(u+v,v;α-1) = 0`
    Up,
    /// `μ(u+v,v;α) + x² q^{-α} μ(u+v-τ,v;α) - x μ(u+v,v;α-1) = 0`
    Down,
}

/// `|Σ terms| / max |term|` for a relation given as a list of terms.
pub fn relative_residual<R: Real>(terms: &[C<R>]) -> f64 {
    let scale = terms.iter().map(|t| t.abs_f64()).fold(0.0, f64::max);
    let sum = terms
        .iter()
        .skip(1)
        .fold(terms[0].clone(), |acc, t| acc + t);
    if scale == 0.0 {
        0.0
    } else {
        sum.abs_f64() / scale
    }
}

/// Residual of a contiguous relation with `x = e^{πiu}`.
pub fn contiguous_residual<R: Real>(
    ctx: &QContext<R>,
    which: Contiguous,
    u: &C<R>,
    v: &C<R>,
    alpha: &C<R>,
) -> Result<f64> {
    let x = ctx.e_pi_i(u);
    let x2 = x.square();
    let uv = u.clone() + v;
    let q_neg_alpha = ctx.epow(&(-alpha.clone()));
    let alpha_m1 = alpha.clone() - ctx.c(1.0, 0.0);
    let base = mu_alpha(ctx, &uv, v, alpha)?;
    let lower = mu_alpha(ctx, &uv, v, &alpha_m1)?;
    let terms = match which {
        Contiguous::Up => {
            let shifted = mu_alpha(ctx, &(uv.clone() + ctx.tau()), v, alpha)?;
            [q_neg_alpha * shifted, x2 * base, -(x * lower)]
        }
        Contiguous::Down => {
            let shifted = mu_alpha(ctx, &(uv.clone() - ctx.tau()), v, alpha)?;
            [base, x2 * q_neg_alpha * shifted, -(x * lower)]
        }
    };
    Ok(relative_residual(&terms))
}

/// Which right-hand side of the `τ -> -1/τ` law to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SLaw {
    /// `-(1/√(-iτ)) e^{πi(u-v)²/τ} μ̃(u/τ, v/τ | -1/τ)`
    Canonical,
    /// `(i/√(-iτ)) e^{-πi(u-v)²/τ} μ̃(u/τ, v/τ | -1/τ)`
    Printed,
}

fn pair_residual<R: Real>(lhs: &C<R>, rhs: &C<R>) -> f64 {
    let scale = lhs.abs_f64().max(rhs.abs_f64());
    if scale == 0.0 {
        0.0
    } else {
        (lhs.clone() - rhs).abs_f64() / scale
    }
}

/// `|μ̃(u,v|τ) - e^{πi/4} μ̃(u,v|τ+1)|`, relative.
pub fn modular_t_residual<R: Real>(ctx: &QContext<R>, u: &C<R>, v: &C<R>) -> Result<f64> {
    let lhs = mu_tilde(ctx, u, v)?;
    let shifted = ctx.with_tau(ctx.tau().clone() + ctx.c(1.0, 0.0))?;
    let rhs = mu_tilde(&shifted, u, v)? * ctx.e_pi_i(&ctx.c(0.25, 0.0));
    Ok(pair_residual(&lhs, &rhs))
}

/// Relative residual of the `τ -> -1/τ` law in the requested form.
pub fn modular_s_residual<R: Real>(
    ctx: &QContext<R>,
    u: &C<R>,
    v: &C<R>,
    law: SLaw,
) -> Result<f64> {
    let tau = ctx.tau().clone();
    let lhs = mu_tilde(ctx, u, v)?;
    let inv_tau = tau.recip()?;
    let dual = ctx.with_tau(-inv_tau.clone())?;
    let mt = mu_tilde(&dual, &(u.clone() * &inv_tau), &(v.clone() * &inv_tau))?;
    let root = (-tau.mul_i()).sqrt();
    let w = u.clone() - v;
    let gauss_arg = (w.square() * &inv_tau).mul_i().scale(&ctx.pi());
    let rhs = match law {
        SLaw::Canonical => -(gauss_arg.exp() * mt).try_div(&root, "modular S law")?,
        SLaw::Printed => {
            (ctx.c(0.0, 1.0) * (-gauss_arg).exp() * mt).try_div(&root, "modular S law")?
        }
    };
    Ok(pair_residual(&lhs, &rhs))
}
