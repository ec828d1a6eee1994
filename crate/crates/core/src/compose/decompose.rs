use serde::{Deserialize, Serialize};

use crate::data::CompositeType;
use crate::scene::ViewSpec;

use super::{ComposeError, CompositeSpec, LayoutMode, Payload};

/// What the user did to pull a composite apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecomposeTrigger {
    /// A constituent was moved out of link or juxtaposition range.
    Separated,
    /// A superimposed glyph was lifted off its anchor.
    Lifted,
    /// The spread pcp axes were brought back together.
    AxesClosed,
    /// A nested chart was dragged out of its element.
    DraggedOut,
    /// The partition handle was pushed back to a single bin.
    PartitionCollapsed,
}

fn expected_trigger(c: &CompositeSpec) -> DecomposeTrigger {
    match (c.ty, &c.payload) {
        (CompositeType::Integrated, _) => DecomposeTrigger::Separated,
        (CompositeType::Superimposed, _) => DecomposeTrigger::Lifted,
        (CompositeType::Overloaded, _) => DecomposeTrigger::AxesClosed,
        (CompositeType::Nested, _) => DecomposeTrigger::DraggedOut,
        (CompositeType::Juxtaposed, Payload::Layout(l)) if l.mode == LayoutMode::Arrangement => {
            DecomposeTrigger::Separated
        }
        (CompositeType::Juxtaposed, _) => DecomposeTrigger::PartitionCollapsed,
    }
}

/// Hands back the constituent views.
///
/// Views with a recorded transform (clients of superimposed, overloaded and
/// nested composites) return to their start pose. All others keep their
/// pose from `current` when present there.
pub fn decompose(
    composite: &CompositeSpec,
    trigger: DecomposeTrigger,
    current: &[ViewSpec],
) -> Result<Vec<ViewSpec>, ComposeError> {
    if trigger != expected_trigger(composite) {
        return Err(ComposeError::WrongTrigger {
            ty: composite.ty,
            trigger,
        });
    }
    Ok(composite
        .constituents
        .iter()
        .map(|v| {
            let mut out = v.clone();
            if let Some(t) = composite.transform(&v.id) {
                out.pose = t.start;
            } else if let Some(c) = current.iter().find(|c| c.id == v.id) {
                out.pose = c.pose;
            }
            out
        })
        .collect())
}
