//! Deterministic composition engine for immersive visualization views.
//!
//! Views are panels posed in a shared 3D workspace. A stream of grab, move,
//! release and tick events manipulates them; the engine measures the induced
//! geometric relations between views, ranks the composition intents those
//! relations imply, and commits a [`compose::CompositeSpec`] when a grab is
//! released. Which composite types may form between two views is bounded by
//! the relationship between their underlying tables.
//!
//! Module map:
//!
//! * [`data`]: tables, relationship kinds, inference and the admissibility matrix.
//! * [`scene`]: poses, oriented boxes, chart layouts and induced relations.
//! * [`compose`]: the composition operators and their inverses.
//! * [`intent`]: the event-sourced session state machine.
//! * [`io`]: manifest, trace and composite formats.

pub mod compose;
pub mod data;
pub mod intent;
pub mod io;
pub mod scene;

pub use compose::{CompositeSpec, Payload};
pub use data::{CompositeType, DataSet, DataTable, Relationship, RelationshipKind};
pub use intent::{Command, InteractionEvent, Session, Thresholds};
pub use io::{load_manifest, load_trace, save_composite, LoadError, Manifest};
pub use scene::{Part, Pose, ViewSpec};
