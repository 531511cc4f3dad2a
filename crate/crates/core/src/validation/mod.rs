//! Statistical and numerical checks of the expansion.

mod montecarlo;
mod regression;
mod tails;

pub use montecarlo::{
    empirical_covariance, empirical_increment_variance, mean_with_error, realisations, sample_kurtosis, MeanEstimate,
    MIN_REPLICATIONS,
};
pub use regression::{least_squares_slope, rate_regression, term_count_exponent, RateReport, MIN_DECADES, MIN_POINTS};
pub use tails::{tail_sup_norm, tail_sup_norms, TailEstimate};
