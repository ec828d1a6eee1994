//! Composition operators, their inverses, and the auxiliary gestures that
//! prepare composites (axis partition and expansion, pcp axis spreading,
//! element extraction, arc layout).

mod decompose;
mod integrated;
mod juxtapose;
mod nested;
mod overloaded;
mod spec;
mod superimposed;

use thiserror::Error;

use crate::data::{
    is_admissible, CompositeType, CorrespondenceError, DataSet, DataTable, Relationship,
    RelationshipKind,
};
use crate::scene::{Axis, SceneError};

pub use decompose::{decompose, DecomposeTrigger};
pub use integrated::{compose_integrated, compose_integrated_group, integrated_links, remove_from_group};
pub use juxtapose::{
    bend_layout, compose_juxtaposed, expand_axis, partition_axis, partition_bins, partition_grid,
    PANEL_GAP,
};
pub use nested::{compose_nested, extract_element, MINI_FRACTION, NEST_FILL};
pub use overloaded::{compose_overloaded, default_axis_gap, region_obb, spread_pcp_axes, SpreadRegion};
pub use spec::{
    Anchor, AnchorMap, CompositeSpec, JuxtaposeLayout, LayoutMode, Link, Nest, NestPlacementSet,
    OverloadPlacement, Panel, Payload, Rect, ScatterPoint, Transform,
};
pub use superimposed::compose_superimposed;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComposeError {
    #[error("{ty} composites are not admissible for {kind} relationships")]
    NotAdmissible {
        ty: CompositeType,
        kind: RelationshipKind,
    },
    #[error("unknown table {0}")]
    UnknownTable(String),
    #[error("client items without a host counterpart: {}", .0.join(", "))]
    UnmatchedItems(Vec<String>),
    #[error("view {0} is not a parallel coordinates plot")]
    NotPcp(String),
    #[error("axis index {index} has no right neighbour among {count} axes")]
    BadAxisIndex { index: usize, count: usize },
    #[error("spread region {index} of {pcp} is not active")]
    RegionNotActive { pcp: String, index: usize },
    #[error("seed element {0} has no correspondence")]
    SeedUnmatched(String),
    #[error("view {view} has no quantitative {axis:?} axis")]
    NoSuchAxis { view: String, axis: Axis },
    #[error("elements can only be extracted from bar charts, not view {0}")]
    NotExtractable(String),
    #[error("{trigger:?} does not decompose a {ty} composite")]
    WrongTrigger {
        ty: CompositeType,
        trigger: DecomposeTrigger,
    },
    #[error("view {0} is not part of the composite")]
    NotAConstituent(String),
    #[error(transparent)]
    Scene(#[from] SceneError),
    #[error(transparent)]
    Correspondence(#[from] CorrespondenceError),
}

fn require_admissible(ty: CompositeType, rel: &Relationship) -> Result<(), ComposeError> {
    if is_admissible(rel.kind, ty) {
        Ok(())
    } else {
        Err(ComposeError::NotAdmissible { ty, kind: rel.kind })
    }
}

fn table<'a>(data: &'a DataSet, name: &str) -> Result<&'a DataTable, ComposeError> {
    data.table(name)
        .ok_or_else(|| ComposeError::UnknownTable(name.into()))
}

#[cfg(test)]
pub(crate) mod test_fixtures;
