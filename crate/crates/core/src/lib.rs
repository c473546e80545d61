//! Teleportation of arbitrary multipartite qubit states through cross Bell
//! basis channels, simulated exactly on dense state vectors.
//!
//! * [`statevec`]: state vectors, the return operator, single-qubit gates.
//! * [`bellkit`]: Bell states, the cross product `∇`, cross Bell bases and the
//!   correction table.
//! * [`measurement`]: joint Bell measurements with exact, seeded and forced
//!   outcomes.
//! * [`protocol`]: Alice, Bob and the classical message between them.
//! * [`oracle`]: brute-force checks of every algebraic relation the protocol
//!   relies on.
//! * [`cli`]: the `crossbell` command line.

pub mod bellkit;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod measurement;
pub mod oracle;
pub mod protocol;
pub mod statevec;

pub use bellkit::{BellLabel, CorrectionTable, CrossBellIndex};
pub use error::{Error, Result};
pub use measurement::{MeasurementPlan, OutcomeRecord};
pub use protocol::{ChannelSpec, ClassicalMessage, TeleportationReport};
pub use statevec::{QubitPermutation, SingleQubitUnitary, StateVector};
