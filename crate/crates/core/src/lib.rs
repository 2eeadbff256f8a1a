//! Composition and analysis of hierarchical multirate synchronous ensembles.
//!
//! The crate has three layers:
//!
//! * [`ensemble`]: typed machines, wiring diagrams, input adaptors and the
//!   executable semantics of one synchronous step.
//! * [`analysis`]: simulation, breadth-first bounded search and
//!   time-bounded LTL model checking over that step relation.
//! * [`airplane`]: a two-level airplane turning control system built on the
//!   framework, with its flight dynamics, control laws and propositions.
//!
//! ```
//! use mrpals::airplane::{self, AirplaneParams, LawVersion, Scenario};
//! use mrpals::analysis::{simulate, Policy};
//!
//! let system = airplane::build_system(
//!     &AirplaneParams::default(),
//!     &Scenario::sudden_reversal(),
//!     LawVersion::V2,
//!     None,
//! )
//! .unwrap();
//! let trace = simulate(&system, &Policy::deterministic(), 6000).unwrap();
//! assert_eq!(trace.len(), 10);
//! let last = airplane::status_records(trace.last_state()).last().copied().unwrap();
//! assert!((last.goal - last.dir).abs() < 0.5);
//! ```

pub mod airplane;
pub mod analysis;
pub mod ensemble;
pub mod value;

pub use value::{StatusRecord, Value};
