use crate::error::{Error, Result};
use crate::scalar::{ComplexScalar, Real};

type C<R> = ComplexScalar<R>;

/// Modular parameter, nome and truncation policy shared by every evaluation.
///
/// The nome follows the half-period convention `q = exp(πiτ)`.
#[derive(Clone, Debug)]
pub struct QContext<R: Real> {
    tau: C<R>,
    q: C<R>,
    t: R,
    pi_i_tau: C<R>,
    trunc_tol: f64,
    max_index: usize,
    lattice_eps: f64,
    bits: u32,
}

pub const DEFAULT_MAX_INDEX: usize = 400;
pub const DEFAULT_LATTICE_EPS: f64 = 1e-6;

/// Default series threshold: 1e-24 in double mode, 2^-(bits+16) otherwise.
pub fn default_trunc_tol(bits: u32) -> f64 {
    if bits <= 53 {
        1e-24
    } else {
        2f64.powi(-(bits as i32 + 16))
    }
}

impl<R: Real> QContext<R> {
    pub fn new(tau: C<R>) -> Result<Self> {
        let bits = tau.bits();
        let zero = tau.im.like(0.0);
        if !(tau.im > zero) || !tau.is_finite() {
            return Err(Error::Domain(format!(
                "Im(tau) must be positive, got tau = {},{}",
                tau.re.to_f64(),
                tau.im.to_f64()
            )));
        }
        let pi = R::pi(bits);
        let pi_i_tau = tau.mul_i().scale(&pi);
        let q = pi_i_tau.exp();
        Ok(QContext {
            t: tau.im.clone(),
            tau,
            q,
            pi_i_tau,
            trunc_tol: default_trunc_tol(bits),
            max_index: DEFAULT_MAX_INDEX,
            lattice_eps: DEFAULT_LATTICE_EPS,
            bits,
        })
    }

    pub fn from_f64(tau_re: f64, tau_im: f64, bits: u32) -> Result<Self> {
        Self::new(C::from_f64(tau_re, tau_im, bits))
    }

    pub fn with_trunc_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(Error::Domain(format!(
                "trunc_tol must be positive, got {tol}"
            )));
        }
        self.trunc_tol = tol;
        Ok(self)
    }

    pub fn with_max_index(mut self, max_index: usize) -> Result<Self> {
        if max_index < 8 {
            return Err(Error::Domain(format!(
                "max_index must be at least 8, got {max_index}"
            )));
        }
        self.max_index = max_index;
        Ok(self)
    }

    pub fn with_lattice_eps(mut self, eps: f64) -> Result<Self> {
        if !(eps >= 0.0) {
            return Err(Error::Domain(format!(
                "lattice guard must be non-negative, got {eps}"
            )));
        }
        self.lattice_eps = eps;
        Ok(self)
    }

    /// Same truncation policy at another modular parameter.
    pub fn with_tau(&self, tau: C<R>) -> Result<Self> {
        let mut ctx = QContext::new(tau)?;
        ctx.trunc_tol = self.trunc_tol;
        ctx.max_index = self.max_index;
        ctx.lattice_eps = self.lattice_eps;
        Ok(ctx)
    }

    pub fn tau(&self) -> &C<R> {
        &self.tau
    }

    pub fn q(&self) -> &C<R> {
        &self.q
    }

    /// `Im τ`.
    pub fn t(&self) -> &R {
        &self.t
    }

    pub fn trunc_tol(&self) -> f64 {
        self.trunc_tol
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    pub fn lattice_eps(&self) -> f64 {
        self.lattice_eps
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn real(&self, x: f64) -> R {
        R::from_f64(x, self.bits)
    }

    pub fn c(&self, re: f64, im: f64) -> C<R> {
        C::from_f64(re, im, self.bits)
    }

    pub fn pi(&self) -> R {
        R::pi(self.bits)
    }

    /// `q^w = exp(πiτw)`, taken straight from the exponential so that it is
    /// single valued for every complex `w`.
    pub fn epow(&self, w: &C<R>) -> C<R> {
        (self.pi_i_tau.clone() * w).exp()
    }

    pub fn epow_f64(&self, w: f64) -> C<R> {
        self.pi_i_tau.scale_f64(w).exp()
    }

    /// `exp(πi z)`.
    pub fn e_pi_i(&self, z: &C<R>) -> C<R> {
        z.mul_i().scale(&self.pi()).exp()
    }

    /// `exp(2πi z)`.
    pub fn e_2pi_i(&self, z: &C<R>) -> C<R> {
        z.mul_i().scale(&(self.pi() * self.real(2.0))).exp()
    }

    /// Distance of `z` from the lattice `Zτ + Z` in the `|exp(2πi w) - 1|`
    /// metric, minimised over the nearest rows of the lattice.
    pub fn lattice_distance(&self, z: &C<R>) -> f64 {
        let row = (z.im.to_f64() / self.t.to_f64()).round();
        let mut best = f64::INFINITY;
        for dr in [-1.0, 0.0, 1.0] {
            let w = z.clone() - self.tau.scale_f64(row + dr);
            let d = (self.e_2pi_i(&w) - self.c(1.0, 0.0)).abs_f64();
            best = best.min(d);
        }
        best
    }

    /// Errors with a pole message when `z` is within the lattice guard.
    pub fn check_off_lattice(&self, z: &C<R>, what: &str) -> Result<()> {
        let d = self.lattice_distance(z);
        if d < self.lattice_eps {
            return Err(Error::Pole(format!(
                "{what} = {},{} lies on the lattice Zτ+Z (distance {d:e})",
                z.re.to_f64(),
                z.im.to_f64()
            )));
        }
        Ok(())
    }
}
