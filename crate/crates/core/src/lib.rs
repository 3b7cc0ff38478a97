//! Relay selection for bidirectional amplify-and-forward (AF) relay networks
//! with outdated channel state information.
//!
//! Two sources exchange symbols through one of `N` AF relays (or the best `K`
//! of them, combined by MRC at the sources). The relay is chosen from channel
//! estimates `ĥ` that are correlated with, but not equal to, the channels `h`
//! in force during transmission. The crate offers two independent routes to
//! the resulting symbol error rate:
//!
//! * [`montecarlo`] draws correlated Rayleigh channels, applies the selection
//!   rule and estimates the SER by simulation;
//! * [`analytic`] evaluates the closed-form distribution of the end-to-end
//!   SNR, the exact and asymptotic average SER and the diversity behaviour.
//!
//! [`model`] holds the shared system model (SNR formulas and selection rules)
//! and [`harness`] turns both engines into reproducible parameter sweeps and
//! figure datasets.

pub mod analytic;
pub mod error;
pub mod harness;
pub mod model;
pub mod montecarlo;

pub use error::{Error, Result};
pub use model::{
    jakes_correlation, ChannelRealization, Modulation, NetworkConfig, SelectionResult, SnrPolicy,
    Source,
};
