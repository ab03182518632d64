//! Determinant tau-functions `ξ_{m,n,k} = det[μ(u+v+kτ, v; m-j-j′)]`, the
//! two solution families they produce, and identities used to validate them.

mod propagate;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

pub use propagate::{lattice_propagate, Block, Lattice};

use crate::error::{Error, Result};
use crate::scalar::{det, ComplexScalar, Matrix, Real};
use crate::special::{mu_alpha, mu_general_with_theta, theta_eval, Evaluated, MuArgs, QContext};
use crate::weyl::FieldPoint;

type C<R> = ComplexScalar<R>;

/// Index of `ξ_{m,n,k}`; `n = -1` is the empty determinant.
#[derive(Clone, Debug, PartialEq)]
pub struct XiIndex<R: Real> {
    pub m: C<R>,
    pub n: i64,
    pub k: C<R>,
}

/// Index of `ξ̃_{a,b,c} = ξ_{m-a, n-b, k+c}` relative to a base point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TildeIndex {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl TildeIndex {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        TildeIndex { a, b, c }
    }
}

/// μ values keyed by `(Δk, Δα)` relative to the base `(k, m)`.
type MuMemo<R> = Arc<Mutex<HashMap<(i64, i64), C<R>>>>;
/// ξ values keyed by `(Δm, n, Δk)`.
type XiMemo<R> = Arc<Mutex<HashMap<(i64, i64, i64), C<R>>>>;

/// Base point `(τ, u, v, m, n, k)` of a solution, with a shared μ memo.
///
/// Every ξ at integer offsets from `(m, k)` reuses the same μ entries, so
/// copies made with [`SolutionParams::with_n`] share the memo.
#[derive(Clone, Debug)]
pub struct SolutionParams<R: Real> {
    pub ctx: QContext<R>,
    pub u: C<R>,
    pub v: C<R>,
    pub m: C<R>,
    pub n: i64,
    pub k: C<R>,
    pub x: C<R>,
    memo: MuMemo<R>,
    xi_memo: XiMemo<R>,
    theta_v: Arc<Mutex<Option<Evaluated<R>>>>,
}

impl<R: Real> SolutionParams<R> {
    pub fn new(ctx: QContext<R>, u: C<R>, v: C<R>, m: C<R>, n: i64, k: C<R>) -> Result<Self> {
        if n < 0 {
            return Err(Error::IndexDomain(format!(
                "solution size n = {n} must be >= 0"
            )));
        }
        let x = ctx.e_pi_i(&u);
        Ok(SolutionParams {
            ctx,
            u,
            v,
            m,
            n,
            k,
            x,
            memo: Arc::default(),
            xi_memo: Arc::default(),
            theta_v: Arc::default(),
        })
    }

    /// Same base point with another `n`; the μ memo is shared.
    pub fn with_n(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return Err(Error::IndexDomain(format!(
                "solution size n = {n} must be >= 0"
            )));
        }
        let mut out = self.clone();
        out.n = n;
        Ok(out)
    }

    pub fn bits(&self) -> u32 {
        self.ctx.bits()
    }

    /// `x q^k` at the base `k`.
    pub fn x_hat(&self) -> C<R> {
        self.x.clone() * self.ctx.epow(&self.k)
    }

    /// Number of μ values evaluated so far.
    pub fn memo_len(&self) -> usize {
        self.memo.lock().expect("memo lock").len()
    }

    /// `θ(v)`, shared by every μ entry.
    fn theta_v(&self) -> Result<Evaluated<R>> {
        if let Some(th) = self.theta_v.lock().expect("theta lock").as_ref() {
            return Ok(th.clone());
        }
        let th = theta_eval(&self.ctx, &self.v)?;
        Ok(self
            .theta_v
            .lock()
            .expect("theta lock")
            .get_or_insert(th)
            .clone())
    }

    /// `μ(u+v+(k+Δk)τ, v; m+Δα)`, memoized.
    pub fn mu_entry(&self, dk: i64, dalpha: i64) -> Result<C<R>> {
        if let Some(v) = self.memo.lock().expect("memo lock").get(&(dk, dalpha)) {
            return Ok(v.clone());
        }
        let arg = self.u.clone()
            + &self.v
            + (self.k.clone() + self.ctx.c(dk as f64, 0.0)) * self.ctx.tau();
        let alpha = self.m.clone() + self.ctx.c(dalpha as f64, 0.0);
        let args = MuArgs {
            u: arg,
            v: self.v.clone(),
            alpha,
        };
        let val = mu_general_with_theta(&self.ctx, &args, self.theta_v()?)?.value;
        // Concurrent fills compute the same value, so the first write wins.
        let mut memo = self.memo.lock().expect("memo lock");
        Ok(memo.entry((dk, dalpha)).or_insert(val).clone())
    }

    /// The `(n+1)×(n+1)` matrix of `ξ_{m+Δm, n, k+Δk}`.
    pub fn xi_matrix(&self, dm: i64, n: i64, dk: i64) -> Result<Matrix<R>> {
        if n < 0 {
            return Ok(Matrix::empty(self.bits()));
        }
        let size = (n + 1) as usize;
        Matrix::try_from_fn(size, size, |j, jj| {
            self.mu_entry(dk, dm - (j + jj) as i64)
                .map_err(|e| at_entry(e, j, jj))
        })
    }

    /// `ξ_{m+Δm, n, k+Δk}`; `n = -1` gives 1, `n < -1` is out of domain.
    pub fn xi_at(&self, dm: i64, n: i64, dk: i64) -> Result<C<R>> {
        if n < -1 {
            return Err(Error::IndexDomain(format!("xi with n = {n} < -1")));
        }
        if let Some(v) = self.xi_memo.lock().expect("memo lock").get(&(dm, n, dk)) {
            return Ok(v.clone());
        }
        let val = det(&self.xi_matrix(dm, n, dk)?)?;
        let mut memo = self.xi_memo.lock().expect("memo lock");
        Ok(memo.entry((dm, n, dk)).or_insert(val).clone())
    }

    /// `ξ` at an arbitrary index. Integer offsets from the base `(m, k)` go
    /// through the memo; anything else is evaluated directly.
    pub fn xi(&self, idx: &XiIndex<R>) -> Result<C<R>> {
        if idx.n < -1 {
            return Err(Error::IndexDomain(format!("xi with n = {} < -1", idx.n)));
        }
        let dm = integer_offset(&idx.m, &self.m);
        let dk = integer_offset(&idx.k, &self.k);
        if let (Some(dm), Some(dk)) = (dm, dk) {
            return self.xi_at(dm, idx.n, dk);
        }
        let size = (idx.n + 1) as usize;
        let arg = self.u.clone() + &self.v + idx.k.clone() * self.ctx.tau();
        let mat = Matrix::try_from_fn(size, size, |j, jj| {
            let alpha = idx.m.clone() - self.ctx.c((j + jj) as f64, 0.0);
            mu_alpha(&self.ctx, &arg, &self.v, &alpha).map_err(|e| at_entry(e, j, jj))
        })?;
        det(&mat)
    }

    /// `ξ̃_{a,b,c} = ξ_{m-a, n-b, k+c}`.
    pub fn xi_tilde(&self, t: TildeIndex) -> Result<C<R>> {
        let n = self.n - t.b;
        if n < -1 {
            return Err(Error::IndexDomain(format!(
                "tilde index ({}, {}, {}) maps to n = {n} < -1",
                t.a, t.b, t.c
            )));
        }
        self.xi_at(-t.a, n, t.c)
    }
}

fn integer_offset<R: Real>(a: &C<R>, base: &C<R>) -> Option<i64> {
    let (re, im) = (a.clone() - base).to_c64();
    let r = re.round();
    (im.abs() < 1e-9 && (re - r).abs() < 1e-9 && r.abs() < 1e6).then_some(r as i64)
}

fn at_entry(e: Error, j: usize, jj: usize) -> Error {
    match e {
        Error::Pole(s) => Error::Pole(format!("{s} at matrix entry ({j}, {jj})")),
        Error::Domain(s) => Error::Domain(format!("{s} at matrix entry ({j}, {jj})")),
        Error::DivisionByZero(what) => Error::Pole(format!(
            "division by zero in {what} at matrix entry ({j}, {jj})"
        )),
        e => e,
    }
}

fn ratio<R: Real>(
    sp: &SolutionParams<R>,
    num: [(i64, i64, i64); 2],
    den: [(i64, i64, i64); 2],
) -> Result<C<R>> {
    let get = |(dm, n, dk): (i64, i64, i64)| sp.xi_at(dm, n, dk);
    let mut d = C::one(sp.bits());
    for (dm, n, dk) in den {
        let v = get((dm, n, dk))?;
        if v.is_zero() {
            return Err(Error::Degenerate(format!(
                "xi at offset (m{dm:+}, n = {n}, k{dk:+})"
            )));
        }
        d = d * v;
    }
    (get(num[0])? * get(num[1])?)
        .try_div(&d, "xi ratio")
        .map_err(|_| Error::Degenerate("xi ratio denominator".into()))
}

/// `(x q^k, -q^m, q^{-n}; f₁, f₂)` at `(m+Δm, n+Δn, k+Δk)`, completed by the
/// constraints `a₀a₁a₂ = q`, `f₀f₁f₂ = x²q`.
pub fn solution_family_a<R: Real>(
    sp: &SolutionParams<R>,
    dm: i64,
    dn: i64,
    dk: i64,
) -> Result<FieldPoint<R>> {
    let n = sp.n + dn;
    if n < 0 {
        return Err(Error::IndexDomain(format!(
            "family A needs n >= 0, got {n}"
        )));
    }
    let ctx = &sp.ctx;
    let m = sp.m.clone() + ctx.c(dm as f64, 0.0);
    let k = sp.k.clone() + ctx.c(dk as f64, 0.0);
    let f1 = ratio(
        sp,
        [(dm, n, dk + 1), (dm, n - 1, dk)],
        [(dm, n, dk), (dm, n - 1, dk + 1)],
    )?;
    let f2 = -ratio(
        sp,
        [(dm, n - 1, dk + 1), (dm - 1, n - 1, dk)],
        [(dm, n - 1, dk), (dm - 1, n - 1, dk + 1)],
    )?;
    FieldPoint::constrained(
        ctx.q().clone(),
        sp.x.clone() * ctx.epow(&k),
        -ctx.epow(&m),
        ctx.epow_f64(-(n as f64)),
        f1,
        f2,
    )
}

/// `(x q^k, a₀ = -q^{-m}, a₂ = q^{n+1}; f₀, f₂)` at `(m+Δm, n+Δn, k+Δk)`,
/// with `a₁`, `f₁` completed by the constraints.
pub fn solution_family_b<R: Real>(
    sp: &SolutionParams<R>,
    dm: i64,
    dn: i64,
    dk: i64,
) -> Result<FieldPoint<R>> {
    let n = sp.n + dn;
    if n < 0 {
        return Err(Error::IndexDomain(format!(
            "family B needs n >= 0, got {n}"
        )));
    }
    let ctx = &sp.ctx;
    let q = ctx.q().clone();
    let m = sp.m.clone() + ctx.c(dm as f64, 0.0);
    let k = sp.k.clone() + ctx.c(dk as f64, 0.0);
    let x = sp.x.clone() * ctx.epow(&k);
    let f0 = ratio(
        sp,
        [(dm, n, dk + 1), (dm, n - 1, dk)],
        [(dm, n, dk), (dm, n - 1, dk + 1)],
    )?;
    let f2 = -ratio(
        sp,
        [(dm + 1, n, dk + 1), (dm, n, dk)],
        [(dm + 1, n, dk), (dm, n, dk + 1)],
    )?;
    let a0 = -ctx.epow(&-m);
    let a2 = ctx.epow_f64((n + 1) as f64);
    let a1 = q.try_div(&(a0.clone() * &a2), "a1 = q/(a0 a2)")?;
    let f1 = (x.square() * &q).try_div(&(f0.clone() * &f2), "f1 = x^2 q/(f0 f2)")?;
    Ok(FieldPoint {
        q,
        x,
        a: [a0, a1, a2],
        f: [f0, f1, f2],
    })
}

fn rel_diff<R: Real>(l: &C<R>, r: &C<R>) -> f64 {
    let scale = l.abs_f64().max(r.abs_f64());
    if scale == 0.0 {
        return 0.0;
    }
    (l.clone() - r).abs_f64() / scale
}

/// Both sides of `ξ_{m-1,n-1,k±1} = X^{±n} q^{n(m-n)} det[(X^{±j}); ν_{i+j}]`
/// with `X = x q^k` and `ν_j = μ(u+v+kτ, v; m-j)`.
pub fn shifted_xi_sides<R: Real>(sp: &SolutionParams<R>, sign: i8) -> Result<(C<R>, C<R>)> {
    let n = sp.n;
    if n < 1 {
        return Err(Error::IndexDomain("shifted identity needs n >= 1".into()));
    }
    let s = if sign < 0 { -1 } else { 1 };
    let ctx = &sp.ctx;
    let xs = sp.x_hat().powi(s)?;
    let size = (n + 1) as usize;
    let mat = Matrix::try_from_fn(size, size, |i, j| {
        if i == 0 {
            xs.powi(j as i64)
        } else {
            sp.mu_entry(0, -((i + j) as i64))
        }
    })?;
    let nm = (sp.m.clone() - ctx.c(n as f64, 0.0)).scale_f64(n as f64);
    let rhs = xs.powi(n)? * ctx.epow(&nm) * det(&mat)?;
    let lhs = sp.xi_at(-1, n - 1, s)?;
    Ok((lhs, rhs))
}

pub fn shifted_xi_residual<R: Real>(sp: &SolutionParams<R>, sign: i8) -> Result<f64> {
    let (l, r) = shifted_xi_sides(sp, sign)?;
    Ok(rel_diff(&l, &r))
}

/// Both sides of `(X⁻¹ - X) ξ_{m-1,n-1,k} = q^{2n(m-n-1)} det[(X^j); (X^{-j}); ν_{i+j}]`.
/// With `flipped` the roles of `X` and `X⁻¹` are exchanged on both sides.
pub fn bordered_xi_sides<R: Real>(sp: &SolutionParams<R>, flipped: bool) -> Result<(C<R>, C<R>)> {
    let n = sp.n;
    if n < 1 {
        return Err(Error::IndexDomain("bordered identity needs n >= 1".into()));
    }
    let ctx = &sp.ctx;
    let mut x = sp.x_hat();
    let mut xi = x.recip()?;
    if flipped {
        std::mem::swap(&mut x, &mut xi);
    }
    let size = (n + 2) as usize;
    let mat = Matrix::try_from_fn(size, size, |i, j| match i {
        0 => x.powi(j as i64),
        1 => xi.powi(j as i64),
        _ => sp.mu_entry(0, -((i - 1 + j) as i64)),
    })?;
    let e = (sp.m.clone() - ctx.c((n + 1) as f64, 0.0)).scale_f64((2 * n) as f64);
    let rhs = ctx.epow(&e) * det(&mat)?;
    let lhs = (xi - &x) * sp.xi_at(-1, n - 1, 0)?;
    Ok((lhs, rhs))
}

pub fn bordered_xi_residual<R: Real>(sp: &SolutionParams<R>) -> Result<f64> {
    let (l, r) = bordered_xi_sides(sp, false)?;
    Ok(rel_diff(&l, &r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Mp;
    use crate::special::mu;
    use crate::weyl::{apply_generator, Generator};

    fn sp(m: f64, n: i64, k: f64) -> SolutionParams<f64> {
        let ctx = QContext::from_f64(0.0, 1.0, 53).unwrap();
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

    fn sp_mp(m: f64, n: i64, k: f64) -> SolutionParams<Mp> {
        let ctx = QContext::from_f64(0.0, 1.0, 128).unwrap();
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

    fn close(a: &C<f64>, b: &C<f64>, tol: f64) -> bool {
        rel_diff(a, b) < tol
    }

    #[test]
    fn small_sizes() {
        let s = sp(2.0, 1, 0.0);
        assert_eq!(s.xi_at(0, -1, 0).unwrap().to_c64(), (1.0, 0.0));
        assert!(s.xi_at(0, -2, 0).is_err());
        let direct = mu_alpha(&s.ctx, &(s.u.clone() + &s.v), &s.v, &s.m).unwrap();
        assert!(close(&s.xi_at(0, 0, 0).unwrap(), &direct, 1e-15));
    }

    #[test]
    fn alpha_one_entry_is_plain_mu() {
        let s = sp(1.0, 0, 0.0);
        let plain = mu(&s.ctx, &(s.u.clone() + &s.v), &s.v).unwrap();
        assert!(close(&s.xi_at(0, 0, 0).unwrap(), &plain, 1e-10));
    }

    #[test]
    fn n_two_matches_cofactor_expansion() {
        let s = sp(2.0, 2, 0.0);
        let e = |j: i64| s.mu_entry(0, -j).unwrap();
        let a = |i: i64, j: i64| e(i + j);
        let lap = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
            - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
            + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
        assert!(close(&s.xi_at(0, 2, 0).unwrap(), &lap, 1e-12));
        // 2n+1 distinct entries for an (n+1)² matrix.
        assert_eq!(s.memo_len(), 5);
    }

    #[test]
    fn hankel_structure() {
        let s = sp(3.7, 3, 0.0);
        let m = s.xi_matrix(0, 3, 0).unwrap();
        for i in 0..4 {
            for j in 1..4 {
                if i + 1 < 4 {
                    assert_eq!(m.get(i, j), m.get(i + 1, j - 1));
                }
            }
        }
        assert_eq!(m, m.transpose());
        let d = s.xi_at(0, 3, 0).unwrap();
        assert_eq!(det(&m.transpose()).unwrap(), d);
    }

    #[test]
    fn general_index_uses_direct_path_off_lattice() {
        let s = sp(2.0, 1, 0.0);
        let on = XiIndex {
            m: s.m.clone() - s.ctx.c(1.0, 0.0),
            n: 1,
            k: s.ctx.c(1.0, 0.0),
        };
        assert!(close(
            &s.xi(&on).unwrap(),
            &s.xi_at(-1, 1, 1).unwrap(),
            1e-15
        ));
        let shifted = sp(1.7, 1, 0.4);
        let off = XiIndex {
            m: s.ctx.c(1.7, 0.0),
            n: 1,
            k: s.ctx.c(0.4, 0.0),
        };
        assert!(close(
            &s.xi(&off).unwrap(),
            &shifted.xi_at(0, 1, 0).unwrap(),
            1e-13
        ));
    }

    #[test]
    fn tilde_index_map() {
        let s = sp(2.0, 2, 0.0);
        let t = |a, b, c| s.xi_tilde(TildeIndex::new(a, b, c)).unwrap();
        assert_eq!(t(0, 0, 0), s.xi_at(0, 2, 0).unwrap());
        for (a, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(t(a, 3, c).to_c64(), (1.0, 0.0));
        }
        assert_eq!(t(0, 2, 0), s.mu_entry(0, 0).unwrap());
        assert!(matches!(
            s.xi_tilde(TildeIndex::new(0, 4, 0)),
            Err(Error::IndexDomain(_))
        ));
    }

    #[test]
    fn family_a_reduces_at_n_zero() {
        let s = sp(2.0, 0, 0.0);
        let p = solution_family_a(&s, 0, 0, 0).unwrap();
        let want = s
            .mu_entry(1, 0)
            .unwrap()
            .try_div(&s.mu_entry(0, 0).unwrap(), "t")
            .unwrap();
        assert!(close(&p.f[1], &want, 1e-14));
        assert!(p.constraint_residual() < 1e-14);
    }

    #[test]
    fn family_b_is_s2_image_of_family_a() {
        for n in 1..=2 {
            let s = sp(2.0, n, 0.0);
            let a = solution_family_a(&s, 0, 0, 0).unwrap();
            let b = solution_family_b(&s, -1, -1, 0).unwrap();
            let img = apply_generator(Generator::S2, &a).unwrap();
            assert!(b.deviation(&img) < 1e-10, "n={n}: {:e}", b.deviation(&img));
            assert!(b.constraint_residual() < 1e-13);
        }
    }

    #[test]
    fn proof_identities_in_double_precision() {
        let s = sp(2.0, 1, 0.4);
        assert!(bordered_xi_residual(&s).unwrap() < 1e-10);
        assert!(shifted_xi_residual(&s, 1).unwrap() < 1e-10);
        assert!(shifted_xi_residual(&s, -1).unwrap() < 1e-10);
    }

    #[test]
    fn proof_identities() {
        for n in 1..=3 {
            for k in [0.0, 0.4] {
                let s = sp_mp(2.0, n, k);
                assert!(bordered_xi_residual(&s).unwrap() < 1e-10);
                for sign in [1, -1] {
                    assert!(
                        shifted_xi_residual(&s, sign).unwrap() < 1e-10,
                        "n={n} k={k} sign={sign}"
                    );
                }
            }
        }
    }

    #[test]
    fn bordered_identity_flips_sign() {
        let s = sp(1.3, 1, 0.0);
        let (l, r) = bordered_xi_sides(&s, false).unwrap();
        let (fl, fr) = bordered_xi_sides(&s, true).unwrap();
        assert!(close(&fl, &-l, 1e-13));
        assert!(close(&fr, &-r, 1e-12));
        assert!(close(&fl, &fr, 1e-10));
    }

    #[test]
    fn identities_need_positive_n() {
        let s = sp(2.0, 0, 0.0);
        assert!(bordered_xi_residual(&s).is_err());
        assert!(shifted_xi_residual(&s, 1).is_err());
    }
}
