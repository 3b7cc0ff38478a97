//! Stochastic engine: correlated channel sampling, SER estimation by
//! simulation, empirical CDF/MGF and finite-SNR diversity.
//!
//! Trials are split into fixed-size chunks, each driven by its own ChaCha8
//! substream. Chunks run in parallel and are merged in chunk order, so an
//! estimate depends only on the seed, the trial count and the chunk size.

mod diversity;
mod sampling;
mod simulate;

pub use diversity::{estimate_diversity, estimate_diversity_from, DiversityProfile};
pub use sampling::{fill_realization, sample_realization, RngStream};
pub use simulate::{
    empirical_cdf, empirical_mgf, sample_selected_min_bound, sample_selected_snr, simulate_ser,
    simulate_ser_grid, Estimator, Scheme, SerEstimate, SimulationOptions, DEFAULT_CHUNK_SIZE,
};
