//! Resonant Jaynes-Cummings dynamics and nonclassicality bookkeeping.
//!
//! The crate is split into a small dense linear-algebra kernel over
//! labelled composite Hilbert spaces ([`hilbert`]), the interaction-picture
//! atom-field engine ([`jc`]), beam-splitter based single-mode
//! nonclassicality measures and their cascades ([`nonclassicality`]),
//! closed-form reference expressions ([`oracle`]) and a configuration
//! driven scenario runner ([`runner`]).

pub mod error;
pub mod hilbert;
pub mod jc;
pub mod nonclassicality;
pub mod oracle;
pub mod runner;

pub use error::{Error, Result};
pub use hilbert::{CMatrix, CVector, DensityOperator, ModeLayout, Spectrum, StateVector, C64};
