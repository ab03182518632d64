//! Named verification suites over a deterministic parameter grid.

pub mod checks;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bilinear::{thm2_catalog, thm3_catalog, Thm3Form};
use crate::error::{Error, Result};
use crate::record::{Params, ResidualRecord};
use crate::scalar::{ComplexScalar, Mp, Real};
use crate::special::{
    completion_residual, contiguous_residual, modular_s_residual, modular_t_residual, mu, mu_alpha,
    mu_integer_expansion, relative_residual, Contiguous, QContext, SLaw,
};
use crate::weyl::{
    calibrate, check_constraint_preservation, check_group_relations, check_shifts,
    evolution_residual, EvolutionForm, EvolutionId, FieldPoint, WEYL_TOLERANCE,
};
use crate::xi::{lattice_propagate, Block, SolutionParams, TildeIndex};

use checks::*;
pub use checks::{
    check_family_b, check_theorem1, check_thm2, check_thm3, thm2_terms, thm3_proportionality,
    thm3_terms,
};

/// Suites in canonical order.
pub const SUITES: [&str; 9] = [
    "special-functions",
    "modular",
    "weyl",
    "thm2",
    "thm3",
    "painleve-e2e",
    "propagation",
    "gauge",
    "proof-identities",
];

pub const DEFAULT_U: (f64, f64) = (0.23, 0.11);
pub const DEFAULT_V: (f64, f64) = (0.41, 0.07);
pub const GRID_TAUS: [(f64, f64); 2] = [(0.0, 1.0), (1.0 / 3.0, 1.0)];
pub const GRID_M: [f64; 3] = [1.3, 2.0, 3.7];
pub const GRID_K: [f64; 4] = [-1.0, 0.0, 1.0, 0.4];
pub const GRID_N_MAX: i64 = 3;
/// Size of the random perturbations of the base `(u, v)`.
const PERTURBATION: f64 = 0.05;

/// Working precision: a fixed bit count, or per-check selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Precision {
    /// Bits chosen from the determinant size: the Hankel matrices cancel
    /// more digits as `n` grows, so `n = 0` runs in double precision,
    /// `n = 1, 2` in 128 bits and larger sizes in 256 bits.
    Auto,
    Bits(u32),
}

impl Precision {
    pub fn bits_for(self, n: i64) -> u32 {
        match self {
            Precision::Auto if n >= 3 => 256,
            Precision::Auto if n >= 1 => 128,
            Precision::Auto => 53,
            Precision::Bits(b) => b,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Number of seeded random samples (perturbations, points) per suite.
    pub samples: usize,
    pub precision: Precision,
    /// Replaces every suite's own tolerance when set.
    pub tol: Option<f64>,
    pub u: (f64, f64),
    pub v: (f64, f64),
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            samples: 10,
            precision: Precision::Auto,
            tol: None,
            u: DEFAULT_U,
            v: DEFAULT_V,
        }
    }
}

/// Base point of the solution grid; `n` varies per check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasePoint {
    pub tau: (f64, f64),
    pub u: (f64, f64),
    pub v: (f64, f64),
    pub m: f64,
    pub k: f64,
}

impl BasePoint {
    pub fn solution<R: Real>(&self, n: i64, bits: u32) -> Result<SolutionParams<R>> {
        let ctx = QContext::<R>::from_f64(self.tau.0, self.tau.1, bits)?;
        SolutionParams::new(
            ctx.clone(),
            ctx.c(self.u.0, self.u.1),
            ctx.c(self.v.0, self.v.1),
            ctx.c(self.m, 0.0),
            n,
            ctx.c(self.k, 0.0),
        )
    }

    fn params(&self, n: i64) -> Params {
        Params {
            tau_re: self.tau.0,
            tau_im: self.tau.1,
            u_re: self.u.0,
            u_im: self.u.1,
            v_re: self.v.0,
            v_im: self.v.1,
            m_re: self.m,
            n,
            k_re: self.k,
            ..Params::default()
        }
    }
}

/// The base `(u, v)` followed by `samples` seeded perturbations of it.
pub fn uv_points(opts: &SuiteOptions) -> Vec<((f64, f64), (f64, f64))> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut d = || rng.gen_range(-PERTURBATION..PERTURBATION);
    let mut out = vec![(opts.u, opts.v)];
    for _ in 0..opts.samples {
        let u = (opts.u.0 + d(), opts.u.1 + d());
        let v = (opts.v.0 + d(), opts.v.1 + d());
        out.push((u, v));
    }
    out
}

/// `τ × (u, v) × m × k`, in that nesting order.
pub fn default_grid(opts: &SuiteOptions) -> Vec<BasePoint> {
    let uv = uv_points(opts);
    let mut out = Vec::new();
    for &tau in &GRID_TAUS {
        for &(u, v) in &uv {
            for &m in &GRID_M {
                for &k in &GRID_K {
                    out.push(BasePoint { tau, u, v, m, k });
                }
            }
        }
    }
    out
}

/// Runs `f` at the requested precision with `f64` or MPFR reals.
macro_rules! at_bits {
    ($bits:expr, $f:ident($($arg:expr),*)) => {{
        let bits: u32 = $bits;
        if bits <= 53 {
            $f::<f64>($($arg,)* bits)
        } else {
            $f::<Mp>($($arg,)* bits)
        }
    }};
}

/// Groups `ns` by the precision each one needs, keeping order.
fn precision_groups(p: Precision, ns: impl IntoIterator<Item = i64>) -> Vec<(u32, Vec<i64>)> {
    let mut out: Vec<(u32, Vec<i64>)> = Vec::new();
    for n in ns {
        let bits = p.bits_for(n);
        match out.iter_mut().find(|(b, _)| *b == bits) {
            Some((_, v)) => v.push(n),
            None => out.push((bits, vec![n])),
        }
    }
    out
}

fn setup_failure(suite: &str, params: Params, e: &Error) -> ResidualRecord {
    ResidualRecord::skipped(suite, "setup", params, 0.0, error_reason(e))
}

/// Per-base work over the grid in parallel, merged in grid order.
fn over_grid(
    suite: &'static str,
    opts: &SuiteOptions,
    ns: std::ops::RangeInclusive<i64>,
    work: fn(&BasePoint, &[i64], u32) -> Result<Vec<ResidualRecord>>,
) -> Vec<ResidualRecord> {
    let grid = default_grid(opts);
    let groups = precision_groups(opts.precision, ns);
    grid.par_iter()
        .map(|bp| {
            let mut out = Vec::new();
            for (bits, ns) in &groups {
                match work(bp, ns, *bits) {
                    Ok(r) => out.extend(r),
                    Err(e) => out.push(setup_failure(suite, bp.params(ns[0]), &e)),
                }
            }
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn thm2_base<R: Real>(bp: &BasePoint, ns: &[i64], bits: u32) -> Result<Vec<ResidualRecord>> {
    let sp = bp.solution::<R>(ns[0], bits)?;
    let cat = thm2_catalog();
    let mut out = Vec::new();
    for &n in ns {
        let sp = sp.with_n(n)?;
        out.extend(cat.iter().map(|eq| check_thm2(&sp, eq)));
    }
    Ok(out)
}

fn abc_cube() -> impl Iterator<Item = TildeIndex> {
    (0..8).map(|i| TildeIndex::new(i >> 2 & 1, i >> 1 & 1, i & 1))
}

fn thm3_base<R: Real>(bp: &BasePoint, ns: &[i64], bits: u32) -> Result<Vec<ResidualRecord>> {
    let sp = bp.solution::<R>(ns[0], bits)?;
    let two = thm2_catalog();
    let canonical = thm3_catalog(Thm3Form::Canonical);
    let printed_18 = thm3_catalog(Thm3Form::Printed).pop().expect("relation 18");
    let mut out = Vec::new();
    for &n in ns {
        let sp = sp.with_n(n)?;
        for t in abc_cube() {
            for (eq2, eq3) in two.iter().zip(&canonical) {
                out.push(check_thm3(&sp, eq3, t, Thm3Form::Canonical));
                let prop = thm3_proportionality(&sp, eq2, eq3, t);
                out.push(from_result(
                    "thm3",
                    format!("{}.proportional", eq3.id),
                    params_of(&sp).with_abc(t.a, t.b, t.c),
                    PROPORTIONALITY_TOLERANCE,
                    prop,
                ));
            }
            out.push(check_thm3(&sp, &printed_18, t, Thm3Form::Printed));
        }
    }
    Ok(out)
}

fn e2e_base<R: Real>(bp: &BasePoint, ns: &[i64], bits: u32) -> Result<Vec<ResidualRecord>> {
    let sp = bp.solution::<R>(ns[0], bits)?;
    let mut out = Vec::new();
    for &n in ns {
        let sp = sp.with_n(n)?;
        out.extend(check_theorem1(&sp));
        if n >= 1 {
            out.push(check_family_b(&sp));
        }
    }
    Ok(out)
}

fn identities_base<R: Real>(bp: &BasePoint, ns: &[i64], bits: u32) -> Result<Vec<ResidualRecord>> {
    let sp = bp.solution::<R>(ns[0], bits)?;
    let mut out = Vec::new();
    for &n in ns {
        let sp = sp.with_n(n)?;
        let p = params_of(&sp);
        out.push(from_result(
            "proof-identities",
            "bordered",
            p.clone(),
            IDENTITY_TOLERANCE,
            crate::xi::bordered_xi_residual(&sp),
        ));
        for (name, sign) in [("shifted.plus", 1), ("shifted.minus", -1)] {
            out.push(from_result(
                "proof-identities",
                name,
                p.clone(),
                IDENTITY_TOLERANCE,
                crate::xi::shifted_xi_residual(&sp, sign),
            ));
        }
    }
    Ok(out)
}

fn propagation_base<R: Real>(
    bp: &BasePoint,
    _ns: &[i64],
    bits: u32,
) -> Result<Vec<ResidualRecord>> {
    let sp = bp.solution::<R>(0, bits)?;
    let block = Block::cube(2);
    let res = lattice_propagate(&sp, block).and_then(|lat| {
        let mut worst = 0.0f64;
        for s in block.sites() {
            let d = sp.xi_at(s.0, s.1, s.2)?;
            let rel = (lat.values[&s].clone() - &d).abs_f64() / d.abs_f64();
            worst = worst.max(rel);
        }
        Ok(worst)
    });
    Ok(vec![from_result(
        "propagation",
        "block.2x2x2",
        params_of(&sp),
        PROPAGATION_TOLERANCE,
        res,
    )])
}

/// Gauge constants drawn from the grid point itself, so the suite is
/// independent of the order in which points are processed.
fn gauge_constants<R: Real>(bp: &BasePoint, n: i64, bits: u32) -> [ComplexScalar<R>; 3] {
    let key = [
        bp.tau.0, bp.tau.1, bp.u.0, bp.u.1, bp.v.0, bp.v.1, bp.m, bp.k,
    ]
    .iter()
    .fold(n as u64, |h, x| h.rotate_left(7) ^ x.to_bits());
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    std::array::from_fn(|_| {
        let r = rng.gen_range(0.5..2.0f64);
        let phi = rng.gen_range(0.0..std::f64::consts::TAU);
        ComplexScalar::from_f64(r * phi.cos(), r * phi.sin(), bits)
    })
}

fn gauge_base<R: Real>(bp: &BasePoint, ns: &[i64], bits: u32) -> Result<Vec<ResidualRecord>> {
    let sp = bp.solution::<R>(ns[0], bits)?;
    let canonical = thm3_catalog(Thm3Form::Canonical);
    let mut out = Vec::new();
    for &n in ns {
        let sp = sp.with_n(n)?;
        let g = gauge_constants::<R>(bp, n, bits);
        let p = params_of(&sp);
        let gauged = |t: TildeIndex| -> Result<ComplexScalar<R>> {
            Ok(sp.xi_tilde(t)? * g[0].powi(t.a)? * g[1].powi(t.b)? * g[2].powi(t.c)?)
        };
        let tt = TildeIndex::new;
        let f_ratios =
            |xi: &dyn Fn(TildeIndex) -> Result<ComplexScalar<R>>| -> Result<[ComplexScalar<R>; 2]> {
                let f1 = (xi(tt(0, 0, 1))? * xi(tt(0, 1, 0))?)
                    .try_div(&(xi(tt(0, 0, 0))? * xi(tt(0, 1, 1))?), "gauge f1")?;
                let f2 = -(xi(tt(0, 1, 1))? * xi(tt(1, 1, 0))?)
                    .try_div(&(xi(tt(0, 1, 0))? * xi(tt(1, 1, 1))?), "gauge f2")?;
                Ok([f1, f2])
            };
        let res = f_ratios(&|t| sp.xi_tilde(t)).and_then(|plain| Ok((plain, f_ratios(&gauged)?)));
        for (j, name) in ["gauge.f1", "gauge.f2"].into_iter().enumerate() {
            let r = res
                .clone()
                .map(|(a, b)| (a[j].clone() - &b[j]).abs_f64() / a[j].abs_f64());
            out.push(from_result("gauge", name, p.clone(), GAUGE_TOLERANCE, r));
        }
        for eq in &canonical {
            let mut worst: Result<f64> = Ok(0.0);
            for t in abc_cube() {
                let plain = thm3_terms(&sp, eq, t, None);
                let with = thm3_terms(&sp, eq, t, Some(&g));
                worst = match (worst, plain, with) {
                    (Ok(w), Ok(a), Ok(b)) => {
                        Ok(w.max((relative_residual(&a) - relative_residual(&b)).abs()))
                    }
                    // Instances outside the index domain are not part of the check.
                    (Ok(w), Err(Error::IndexDomain(_)), _) => Ok(w),
                    (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => Err(e),
                };
            }
            out.push(from_result(
                "gauge",
                format!("gauge.{}", eq.id),
                p.clone(),
                GAUGE_TOLERANCE,
                worst,
            ));
        }
    }
    Ok(out)
}

fn sample_points(rng: &mut ChaCha8Rng) -> ((f64, f64), (f64, f64)) {
    let mut c = |re: f64, im: f64| (rng.gen_range(-re..re), rng.gen_range(-im..im));
    (c(0.45, 0.3), c(0.45, 0.3))
}

fn special_point<R: Real>(
    tau: (f64, f64),
    u: (f64, f64),
    v: (f64, f64),
    bits: u32,
) -> Vec<ResidualRecord> {
    const SUITE: &str = "special-functions";
    let params = Params {
        tau_re: tau.0,
        tau_im: tau.1,
        u_re: u.0,
        u_im: u.1,
        v_re: v.0,
        v_im: v.1,
        ..Params::default()
    };
    let ctx = match QContext::<R>::from_f64(tau.0, tau.1, bits) {
        Ok(c) => c,
        Err(e) => return vec![setup_failure(SUITE, params, &e)],
    };
    let (u, v) = (ctx.c(u.0, u.1), ctx.c(v.0, v.1));
    let mut out = Vec::new();
    let rel = |a: ComplexScalar<R>, b: ComplexScalar<R>| relative_residual(&[a, -b]);
    let one = ctx.c(1.0, 0.0);
    let res = mu(&ctx, &u, &v).and_then(|a| Ok(rel(mu_alpha(&ctx, &u, &v, &one)?, a)));
    out.push(from_result(SUITE, "mu.alpha1", params.clone(), 1e-10, res));
    for alpha in [0.7, 1.0, 2.3, 4.0] {
        let a = ctx.c(alpha, 0.0);
        for (name, which) in [("up", Contiguous::Up), ("down", Contiguous::Down)] {
            let res = contiguous_residual(&ctx, which, &u, &v, &a);
            out.push(from_result(
                SUITE,
                format!("contiguous.{name}.a{alpha}"),
                params.clone(),
                1e-10,
                res,
            ));
        }
    }
    out
}

/// The expansion cancels about `n` orders of `|mu|` per step, so each `n` gets its own precision.
fn expansion_point<R: Real>(
    tau: (f64, f64),
    u: (f64, f64),
    v: (f64, f64),
    ns: &[i64],
    bits: u32,
) -> Vec<ResidualRecord> {
    const SUITE: &str = "special-functions";
    let params = Params {
        tau_re: tau.0,
        tau_im: tau.1,
        u_re: u.0,
        u_im: u.1,
        v_re: v.0,
        v_im: v.1,
        ..Params::default()
    };
    let ctx = match QContext::<R>::from_f64(tau.0, tau.1, bits) {
        Ok(c) => c,
        Err(e) => return vec![setup_failure(SUITE, params, &e)],
    };
    let (u, v) = (ctx.c(u.0, u.1), ctx.c(v.0, v.1));
    let rel = |a: ComplexScalar<R>, b: ComplexScalar<R>| relative_residual(&[a, -b]);
    ns.iter()
        .map(|&n| {
            let alpha = ctx.c((n + 1) as f64, 0.0);
            let res = mu_integer_expansion(&ctx, n as usize, &u, &v)
                .and_then(|a| Ok(rel(a, mu_alpha(&ctx, &u, &v, &alpha)?)));
            from_result(SUITE, format!("expansion.n{n}"), params.clone(), 1e-9, res)
        })
        .collect()
}

fn modular_point<R: Real>(
    tau: (f64, f64),
    u: (f64, f64),
    v: (f64, f64),
    bits: u32,
) -> Vec<ResidualRecord> {
    const SUITE: &str = "modular";
    let params = Params {
        tau_re: tau.0,
        tau_im: tau.1,
        u_re: u.0,
        u_im: u.1,
        v_re: v.0,
        v_im: v.1,
        ..Params::default()
    };
    let ctx = match QContext::<R>::from_f64(tau.0, tau.1, bits) {
        Ok(c) => c,
        Err(e) => return vec![setup_failure(SUITE, params, &e)],
    };
    let (u, v) = (ctx.c(u.0, u.1), ctx.c(v.0, v.1));
    let mut out = vec![
        from_result(
            SUITE,
            "modular.T",
            params.clone(),
            1e-8,
            modular_t_residual(&ctx, &u, &v),
        ),
        from_result(
            SUITE,
            "modular.S",
            params.clone(),
            1e-8,
            modular_s_residual(&ctx, &u, &v, SLaw::Canonical),
        ),
    ];
    match modular_s_residual(&ctx, &u, &v, SLaw::Printed) {
        Ok(r) => out.push(ResidualRecord::warn(
            SUITE,
            "modular.S.printed",
            params.clone(),
            r,
            1e-8,
            "printed prefactor i/sqrt(-i tau) exp(-pi i (u-v)^2/tau)",
        )),
        Err(e) => out.push(ResidualRecord::skipped(
            SUITE,
            "modular.S.printed",
            params.clone(),
            1e-8,
            error_reason(&e),
        )),
    }
    for n in 1..=3usize {
        let res = completion_residual(&ctx, n, &u, &v);
        out.push(from_result(
            SUITE,
            format!("completion.n{n}"),
            params.clone(),
            1e-9,
            res,
        ));
    }
    out
}

fn special_functions(opts: &SuiteOptions) -> Vec<ResidualRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let bits = opts.precision.bits_for(0);
    let mut points = Vec::new();
    for &tau in &GRID_TAUS {
        for _ in 0..opts.samples {
            let (u, v) = sample_points(&mut rng);
            points.push((tau, u, v));
        }
    }
    points
        .par_iter()
        .map(|&(tau, u, v)| {
            let mut recs = at_bits!(bits, special_point(tau, u, v));
            let mut exp = Vec::new();
            for (b, ns) in precision_groups(opts.precision, 0..=4) {
                exp.extend(at_bits!(b, expansion_point(tau, u, v, &ns)));
            }
            recs.splice(1..1, exp);
            recs
        })
        .collect::<Vec<_>>()
        .concat()
}

fn modular(opts: &SuiteOptions) -> Vec<ResidualRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let bits = opts.precision.bits_for(0);
    let points: Vec<_> = (0..opts.samples)
        .map(|_| {
            let tau = (rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.6));
            let (u, v) = sample_points(&mut rng);
            (tau, u, v)
        })
        .collect();
    points
        .par_iter()
        .map(|&(tau, u, v)| at_bits!(bits, modular_point(tau, u, v)))
        .collect::<Vec<_>>()
        .concat()
}

fn weyl_point<R: Real>(seed: u64, index: usize, bits: u32) -> Vec<ResidualRecord> {
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let p = FieldPoint::<R>::random_constrained(&mut rng, bits);
    let mut out = check_group_relations(&p);
    out.extend(check_shifts(&p));
    out.extend(check_constraint_preservation(&p));
    for id in EvolutionId::ALL {
        out.push(from_result(
            "weyl",
            format!("evolution.{id}"),
            Params::default(),
            WEYL_TOLERANCE,
            evolution_residual(id, &p, EvolutionForm::Canonical),
        ));
    }
    if let Ok(r) = evolution_residual(EvolutionId::T1Fwd, &p, EvolutionForm::Printed) {
        out.push(ResidualRecord::warn(
            "weyl",
            "evolution.t1.fwd.printed",
            Params::default(),
            r,
            WEYL_TOLERANCE,
            "printed denominator has a1 f1 where the action gives a1 f2",
        ));
    }
    for r in &mut out {
        r.params.n = index as i64;
    }
    out
}

fn weyl_calibration<R: Real>(seed: u64, bits: u32) -> Result<()> {
    let p = FieldPoint::<R>::random_constrained(&mut ChaCha8Rng::seed_from_u64(seed), bits);
    calibrate(&p)
}

fn weyl(opts: &SuiteOptions) -> Result<Vec<ResidualRecord>> {
    let bits = opts.precision.bits_for(0);
    at_bits!(bits, weyl_calibration(opts.seed))?;
    Ok((0..opts.samples)
        .into_par_iter()
        .map(|i| at_bits!(bits, weyl_point(opts.seed, i)))
        .collect::<Vec<_>>()
        .concat())
}

fn thm2_dispatch(bp: &BasePoint, ns: &[i64], bits: u32) -> Result<Vec<ResidualRecord>> {
    at_bits!(bits, thm2_base(bp, ns))
}

fn thm3_dispatch(bp: &BasePoint, ns: &[i64], bits: u32) -> Result<Vec<ResidualRecord>> {
    at_bits!(bits, thm3_base(bp, ns))
}

fn e2e_dispatch(bp: &BasePoint, ns: &[i64], bits: u32) -> Result<Vec<ResidualRecord>> {
    at_bits!(bits, e2e_base(bp, ns))
}

fn identities_dispatch(bp: &BasePoint, ns: &[i64], bits: u32) -> Result<Vec<ResidualRecord>> {
    at_bits!(bits, identities_base(bp, ns))
}

fn propagation_dispatch(bp: &BasePoint, ns: &[i64], bits: u32) -> Result<Vec<ResidualRecord>> {
    at_bits!(bits, propagation_base(bp, ns))
}

fn gauge_dispatch(bp: &BasePoint, ns: &[i64], bits: u32) -> Result<Vec<ResidualRecord>> {
    at_bits!(bits, gauge_base(bp, ns))
}

/// Stable regrouping by equation, in order of first appearance, so records
/// come out as (equation, grid index).
fn canonical_order(records: Vec<ResidualRecord>) -> Vec<ResidualRecord> {
    let mut rank: HashMap<String, usize> = HashMap::new();
    for r in &records {
        let next = rank.len();
        rank.entry(r.equation.clone()).or_insert(next);
    }
    let mut records = records;
    records.sort_by_key(|r| rank[&r.equation]);
    records
}

fn apply_tolerance(records: &mut [ResidualRecord], tol: f64) {
    for r in records {
        r.tolerance = tol;
        if !r.skipped {
            r.pass = r.residual < tol;
        }
    }
}

/// Runs one named suite, or every suite for `"all"`.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<Vec<ResidualRecord>> {
    if name == "all" {
        let mut out = Vec::new();
        for s in SUITES {
            out.extend(run_suite(s, opts)?);
        }
        return Ok(out);
    }
    let records = match name {
        "special-functions" => special_functions(opts),
        "modular" => modular(opts),
        "weyl" => weyl(opts)?,
        "thm2" => over_grid("thm2", opts, 0..=GRID_N_MAX, thm2_dispatch),
        "thm3" => over_grid("thm3", opts, 0..=GRID_N_MAX, thm3_dispatch),
        "painleve-e2e" => over_grid("painleve-e2e", opts, 0..=2, e2e_dispatch),
        "propagation" => over_grid("propagation", opts, 0..=0, propagation_dispatch),
        "gauge" => over_grid("gauge", opts, 1..=2, gauge_dispatch),
        "proof-identities" => over_grid(
            "proof-identities",
            opts,
            1..=GRID_N_MAX,
            identities_dispatch,
        ),
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    let mut records = canonical_order(records);
    if let Some(tol) = opts.tol {
        apply_tolerance(&mut records, tol);
    }
    Ok(records)
}

/// Pass, fail and skip counts with the largest evaluated residual.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub max_residual: f64,
    pub truncations: usize,
}

impl Summary {
    pub fn of(records: &[ResidualRecord]) -> Self {
        let mut s = Summary::default();
        for r in records {
            if r.skipped {
                s.skip += 1;
                if r.reason
                    .as_deref()
                    .is_some_and(|x| x.starts_with("truncation:"))
                {
                    s.truncations += 1;
                }
            } else {
                if r.pass {
                    s.pass += 1;
                } else {
                    s.fail += 1;
                }
                s.max_residual = s.max_residual.max(r.residual);
            }
        }
        s
    }
}
