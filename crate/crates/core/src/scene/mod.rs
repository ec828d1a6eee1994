//! World model: poses, views, their parts, boxes and pairwise relations.

mod layout;
mod obb;
mod pose;
mod relations;
mod view;

use thiserror::Error;

pub use layout::{
    anchor_position, axis_extent, body_obb, chart_layout, has_part, normalize, obb_of, part_box,
    pcp_axis_x, polygon_centroid, polyline_midpoint, view_rows, ChartLayout, Mark,
    HANDLE_FRACTION, MARKER_FRACTION, NODE_FRACTION,
};
pub use obb::{collide, Obb};
pub use pose::Pose;
pub use relations::{
    embedding, gap_distance, induced_relations, orientation_angle, scale_ratio, vertical_offset,
    Embedding, InducedRelations, PairRelation, PositionSnapshot,
};
pub use view::{Axis, ChartKind, Domain, Encodings, Interval, Node, Part, Region, ViewSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SceneError {
    #[error("view {view} has no part {part}")]
    UnknownPart { view: String, part: String },
    #[error("view {view} has no item {item}")]
    UnknownItem { view: String, item: String },
    #[error("view {view} is not bound to table {table}")]
    TableMismatch { view: String, table: String },
    #[error("view {view} lacks the {channel} encoding")]
    MissingEncoding { view: String, channel: String },
    #[error("view {view}: row {item} of {table} has no numeric value for an encoded column")]
    MissingValue {
        view: String,
        table: String,
        item: String,
    },
}
