use std::collections::BTreeMap;

use nalgebra::Vector3;
use serde::Serialize;

use super::{body_obb, chart_layout, collide, Obb, ViewSpec};
use crate::data::DataSet;

/// Bounding-sphere gap; negative when the spheres overlap.
pub fn gap_distance(a: &ViewSpec, b: &ViewSpec) -> f64 {
    let d = (a.pose.position - b.pose.position).norm();
    d - (a.world_half().norm() + b.world_half().norm())
}

/// Angle between panel normals in degrees, folded into `[0, 90]`.
pub fn orientation_angle(a: &ViewSpec, b: &ViewSpec) -> f64 {
    let (na, nb) = (a.pose.normal(), b.pose.normal());
    let c = na.dot(&nb).abs();
    // atan2 stays accurate near parallel normals where acos does not.
    na.cross(&nb).norm().atan2(c).to_degrees()
}

/// Larger diagonal over smaller diagonal, always ≥ 1.
pub fn scale_ratio(a: &ViewSpec, b: &ViewSpec) -> f64 {
    let (da, db) = (a.diagonal(), b.diagonal());
    da.max(db) / da.min(db)
}

/// Height of `b` above `a`.
pub fn vertical_offset(a: &ViewSpec, b: &ViewSpec) -> f64 {
    b.pose.position.y - a.pose.position.y
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Embedding {
    pub client: String,
    pub host: String,
    pub element: String,
}

/// `client`'s center sits inside one of `host`'s element boxes and `client` is
/// the smaller view. Returns the first such element in key order.
pub fn embedding(client: &ViewSpec, host: &ViewSpec, data: &DataSet) -> Option<Embedding> {
    if client.diagonal() >= host.diagonal() {
        return None;
    }
    let table = data.table(&host.table)?;
    let layout = chart_layout(host, table).ok()?;
    let p = client.pose.position;
    layout
        .marks
        .iter()
        .find(|(_, m)| Obb::from_local(&host.pose, m.center, m.half).contains(&p, 1e-9))
        .map(|(k, _)| Embedding {
            client: client.id.clone(),
            host: host.id.clone(),
            element: k.clone(),
        })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PairRelation {
    pub a: String,
    pub b: String,
    pub gap: f64,
    pub orientation_angle: f64,
    pub scale_ratio: f64,
    pub vertical_offset: f64,
    pub colliding: bool,
    pub embedded_in: Vec<Embedding>,
}

impl PairRelation {
    pub fn between(a: &ViewSpec, b: &ViewSpec, data: &DataSet) -> Self {
        let embedded_in = [embedding(a, b, data), embedding(b, a, data)]
            .into_iter()
            .flatten()
            .collect();
        Self {
            a: a.id.clone(),
            b: b.id.clone(),
            gap: gap_distance(a, b),
            orientation_angle: orientation_angle(a, b),
            scale_ratio: scale_ratio(a, b),
            vertical_offset: vertical_offset(a, b),
            colliding: collide(&body_obb(a), &body_obb(b)),
            embedded_in,
        }
    }
}

/// View positions at one instant, the history input for velocities.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PositionSnapshot {
    pub t: f64,
    pub positions: BTreeMap<String, Vector3<f64>>,
}

impl PositionSnapshot {
    pub fn of(t: f64, views: &[ViewSpec]) -> Self {
        Self {
            t,
            positions: views
                .iter()
                .map(|v| (v.id.clone(), v.pose.position))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct InducedRelations {
    /// One entry per unordered pair, `a < b` by id.
    pub pairs: Vec<PairRelation>,
    pub velocity: BTreeMap<String, [f64; 3]>,
}

impl InducedRelations {
    pub fn pair(&self, a: &str, b: &str) -> Option<&PairRelation> {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        self.pairs.iter().find(|p| p.a == a && p.b == b)
    }
}

/// All pairwise relations plus per-view velocity from a one-step backward
/// difference against `previous`.
pub fn induced_relations(
    views: &[ViewSpec],
    data: &DataSet,
    previous: Option<&PositionSnapshot>,
    t: f64,
) -> InducedRelations {
    let mut sorted: Vec<&ViewSpec> = views.iter().collect();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    let mut pairs = Vec::new();
    for (i, a) in sorted.iter().enumerate() {
        for b in &sorted[i + 1..] {
            pairs.push(PairRelation::between(a, b, data));
        }
    }
    let velocity = sorted
        .iter()
        .map(|v| {
            let vel = previous
                .filter(|p| t > p.t)
                .and_then(|p| p.positions.get(&v.id).map(|x| (v.pose.position - x) / (t - p.t)))
                .unwrap_or_else(Vector3::zeros);
            (v.id.clone(), [vel.x, vel.y, vel.z])
        })
        .collect();
    InducedRelations { pairs, velocity }
}
