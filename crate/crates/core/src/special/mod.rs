//! q-special functions: theta, the Appell-Lerch μ-function and its
//! generalisation, the q-Hermite type polynomials, and the non-holomorphic
//! completion.

mod context;
mod series;

pub use context::{default_trunc_tol, QContext, DEFAULT_LATTICE_EPS, DEFAULT_MAX_INDEX};
pub(crate) use functions::mu_general_with_theta;
pub use series::{Certificate, Evaluated};
mod functions;

pub use functions::{
    completion_residual, contiguous_residual, hermite_h, modular_s_residual, modular_t_residual,
    mu, mu_alpha, mu_eval, mu_general, mu_general_eval, mu_integer_expansion, mu_tilde,
    mu_tilde_eval, poly_f, q_factorial, r_function, r_function_eval, r_function_index_bound,
    r_n_completion, relative_residual, theta, theta_eval, Contiguous, MuArgs, SLaw,
};
