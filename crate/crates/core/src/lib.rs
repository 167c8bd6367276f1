//! Covariance-matrix toolkit for two-mode Gaussian states: phase-insensitive
//! channels, entanglement of formation, channel simulation by teleportation,
//! NLA-based error correction of loss, a truncated Fock-space oracle, and
//! Gaussian fidelities.
//!
//! Units: quadratures `x = a + a†`, `p = i(a† - a)`, so the vacuum has unit
//! variance. Two-mode states are kept in standard form `(a, b, c1, c2)`.

pub mod channel;
pub mod entanglement;
pub mod error;
pub mod fidelity;
pub mod fock;
pub mod gaussian;
pub mod nla;
pub mod optimize;
pub mod teleport;

pub use channel::{Channel, ChannelClass};
pub use entanglement::{eof_choi, eof_from_ro, eof_state, ro_choi, ro_tmsv_through_channel, EofResult};
pub use error::{Error, Result};
pub use gaussian::{Squeezing, SymplecticSpectrum, TwoModeCovariance};
pub use nla::{EffectiveParams, GainBounds, NlaGain};
pub use teleport::{ResourcePair, TeleportGain};
