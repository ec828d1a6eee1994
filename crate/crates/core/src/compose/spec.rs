use serde::{Deserialize, Serialize};

use crate::data::CompositeType;
use crate::scene::{Pose, ViewSpec};

/// A committed composite visualization.
///
/// Constituents are the primitive views as they were before composition, so
/// decomposition can hand them back unchanged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawComposite", into = "RawComposite")]
pub struct CompositeSpec {
    pub id: String,
    pub ty: CompositeType,
    pub constituents: Vec<ViewSpec>,
    pub payload: Payload,
    pub transforms: Vec<Transform>,
}

impl CompositeSpec {
    pub fn constituent_ids(&self) -> Vec<&str> {
        self.constituents.iter().map(|v| v.id.as_str()).collect()
    }

    pub fn has_constituent(&self, id: &str) -> bool {
        self.constituents.iter().any(|v| v.id == id)
    }

    pub fn transform(&self, element: &str) -> Option<&Transform> {
        self.transforms.iter().find(|t| t.element == element)
    }

    /// Sets the start pose recorded for `element`, adding an entry if needed.
    pub fn record_origin(&mut self, element: &str, start: Pose) {
        match self.transforms.iter_mut().find(|t| t.element == element) {
            Some(t) => t.start = start,
            None => self.transforms.push(Transform {
                element: element.into(),
                start,
                target: start,
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Links(Vec<Link>),
    Anchors(AnchorMap),
    Nests(NestPlacementSet),
    Overload(OverloadPlacement),
    Layout(JuxtaposeLayout),
}

impl Payload {
    pub fn key(&self) -> &'static str {
        match self {
            Payload::Links(_) => "links",
            Payload::Anchors(_) => "anchors",
            Payload::Nests(_) => "nests",
            Payload::Overload(_) => "overload",
            Payload::Layout(_) => "layout",
        }
    }

    pub fn key_for(ty: CompositeType) -> &'static str {
        match ty {
            CompositeType::Integrated => "links",
            CompositeType::Superimposed => "anchors",
            CompositeType::Nested => "nests",
            CompositeType::Overloaded => "overload",
            CompositeType::Juxtaposed => "layout",
        }
    }
}

/// Start and target pose of one animated element. `element` is a view id or
/// `<view>:<item>`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Transform {
    pub element: String,
    pub start: Pose,
    pub target: Pose,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct Link {
    pub a_view: String,
    pub b_view: String,
    pub a_item: String,
    pub b_item: String,
    pub endpoints: [[f64; 3]; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnchorMap {
    pub host: String,
    pub client: String,
    pub entries: Vec<Anchor>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Anchor {
    /// Client item placed on the host.
    pub item: String,
    /// Host region or element key.
    pub region: String,
    pub target: Pose,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NestPlacementSet {
    pub host: String,
    pub client: String,
    pub entries: Vec<Nest>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct Nest {
    pub element: String,
    pub row: String,
    pub target: Pose,
    pub scale_factor: f64,
}

/// Axis-aligned rectangle in a view's local plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rect {
    pub min: [f64; 2],
    pub max: [f64; 2],
}

impl Rect {
    pub fn center(&self) -> [f64; 2] {
        [(self.min[0] + self.max[0]) / 2.0, (self.min[1] + self.max[1]) / 2.0]
    }

    pub fn half(&self) -> [f64; 2] {
        [(self.max[0] - self.min[0]) / 2.0, (self.max[1] - self.min[1]) / 2.0]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScatterPoint {
    pub row: String,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct OverloadPlacement {
    pub pcp: String,
    pub scatter: String,
    pub axis_pair: [usize; 2],
    pub region: Rect,
    pub scatter_points: Vec<ScatterPoint>,
    /// Axis pair whose polyline segments are hidden behind the scatter.
    pub hidden_polyline_segments: [usize; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LayoutMode {
    Partition,
    Expansion,
    Arrangement,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Panel {
    pub view: ViewSpec,
    /// Grid cell `[column, row]`.
    pub cell: [usize; 2],
    /// Row keys routed to this panel.
    pub rows: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JuxtaposeLayout {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub mode: LayoutMode,
    /// Panel counts along x and y.
    pub bins: [usize; 2],
    pub panels: Vec<Panel>,
    pub gap: f64,
    /// Total arc angle in radians; 0 is a flat layout.
    pub curvature: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComposite {
    id: String,
    #[serde(rename = "type")]
    ty: CompositeType,
    constituents: Vec<ViewSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    links: Option<Vec<Link>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    anchors: Option<AnchorMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nests: Option<NestPlacementSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    overload: Option<OverloadPlacement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    layout: Option<JuxtaposeLayout>,
    transforms: Vec<Transform>,
}

impl TryFrom<RawComposite> for CompositeSpec {
    type Error = String;

    fn try_from(raw: RawComposite) -> Result<Self, Self::Error> {
        let mut payloads: Vec<Payload> = Vec::new();
        payloads.extend(raw.links.map(Payload::Links));
        payloads.extend(raw.anchors.map(Payload::Anchors));
        payloads.extend(raw.nests.map(Payload::Nests));
        payloads.extend(raw.overload.map(Payload::Overload));
        payloads.extend(raw.layout.map(Payload::Layout));
        if payloads.len() != 1 {
            return Err(format!(
                "composite {} must carry exactly one payload, found {}",
                raw.id,
                payloads.len()
            ));
        }
        let payload = payloads.pop().expect("one payload");
        let expected = Payload::key_for(raw.ty);
        if payload.key() != expected {
            return Err(format!(
                "{} composite needs a \"{expected}\" payload, found \"{}\"",
                raw.ty.as_str(),
                payload.key()
            ));
        }
        Ok(CompositeSpec {
            id: raw.id,
            ty: raw.ty,
            constituents: raw.constituents,
            payload,
            transforms: raw.transforms,
        })
    }
}

impl From<CompositeSpec> for RawComposite {
    fn from(c: CompositeSpec) -> Self {
        let mut raw = RawComposite {
            id: c.id,
            ty: c.ty,
            constituents: c.constituents,
            links: None,
            anchors: None,
            nests: None,
            overload: None,
            layout: None,
            transforms: c.transforms,
        };
        match c.payload {
            Payload::Links(l) => raw.links = Some(l),
            Payload::Anchors(a) => raw.anchors = Some(a),
            Payload::Nests(n) => raw.nests = Some(n),
            Payload::Overload(o) => raw.overload = Some(o),
            Payload::Layout(l) => raw.layout = Some(l),
        }
        raw
    }
}
