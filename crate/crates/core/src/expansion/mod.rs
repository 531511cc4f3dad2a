//! The series ξ(x) = Σ_m Σ_n Σ_l τ_mn [g_m(j_{|m−1|−H,n}‖x‖) − δ_m0] S^l_m(x/‖x‖) ξ^l_mn
//! on the unit ball, truncated to a finite set of (m, n) pairs.

mod coefficients;
mod covariance;
mod field;
mod params;
mod reductions;
mod truncation;

pub use coefficients::{c_hn_squared, tau, tau_from_zero, tau_prefactor, Coefficient, CoefficientTable};
pub use covariance::{covariance_closed, covariance_partial};
pub use field::{sample_field, Expansion, FieldSample};
pub use params::ModelParams;
pub use reductions::{n1_coefficient, n1_summand, n2_coefficient, n2_summand, N1Branch};
pub use truncation::{level, resolve_truncation, Truncation, TruncationKind};
