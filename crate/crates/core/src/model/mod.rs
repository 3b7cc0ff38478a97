//! System model: link SNRs, bounds and relay-selection rules.
//!
//! Everything here is a pure function of its arguments. Relay indices are
//! zero-based throughout the crate.

mod config;
mod selection;
mod snr;

pub(crate) use config::db_to_linear;
pub use config::{jakes_correlation, Modulation, NetworkConfig, Source, MAX_RELAYS};
pub use selection::{
    select_and_combine, select_multiple, select_single, ChannelRealization, SelectionResult,
    SquaredGain,
};
pub use snr::{
    combined_snr, exact_snr_from_gains, min_snr_bound, snr_exact, snr_upper, upper_snr_from_gains,
    SnrPolicy,
};
