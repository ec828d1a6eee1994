//! Interaction events, recognition thresholds and the session state machine.

mod candidates;
mod event;
mod hysteresis;
mod session;
mod thresholds;

pub use candidates::{candidates, CandidateIntent};
pub use event::{EventKind, Hand, InteractionEvent, Target};
pub use hysteresis::{hysteresis_gate, pair_key, PairKey};
pub use session::{Command, Grip, InvalidEvent, Session, SessionSnapshot};
pub use thresholds::Thresholds;
