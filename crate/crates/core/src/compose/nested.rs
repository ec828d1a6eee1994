use std::collections::BTreeMap;

use crate::data::{CompositeType, DataSet, DataTable, Relationship};
use crate::scene::{chart_layout, Pose, SceneError, ViewSpec};

use super::{
    require_admissible, table, ComposeError, CompositeSpec, Nest, NestPlacementSet, Payload,
    Transform,
};

/// Extracted mini-charts are this fraction of the source panel.
pub const MINI_FRACTION: f64 = 0.25;
/// Nested charts fill this fraction of their element.
pub const NEST_FILL: f64 = 0.8;

/// Pulls one glyph out of a bar chart as a single-item mini-chart, posed
/// where the glyph sits. The source view is left alone.
pub fn extract_element(
    view: &ViewSpec,
    table: &DataTable,
    item: &str,
) -> Result<ViewSpec, ComposeError> {
    if !view.chart.is_bar() {
        return Err(ComposeError::NotExtractable(view.id.clone()));
    }
    let layout = chart_layout(view, table)?;
    let mark = layout.marks.get(item).ok_or_else(|| SceneError::UnknownItem {
        view: view.id.clone(),
        item: item.into(),
    })?;
    let [hx, hy, hz] = view.half_extents;
    Ok(ViewSpec {
        id: format!("{}.{}", view.id, item),
        items: Some(vec![item.to_owned()]),
        half_extents: [MINI_FRACTION * hx, MINI_FRACTION * hy, hz],
        pose: Pose {
            position: view.pose.transform_point(&mark.center),
            ..view.pose
        },
        ..view.clone()
    })
}

/// Places a copy of the client chart inside every host element that has a
/// counterpart row, the seed element first.
///
/// Each copy is scaled so its diagonal is [`NEST_FILL`] of the element's.
pub fn compose_nested(
    id: &str,
    host: &ViewSpec,
    client: &ViewSpec,
    rel: &Relationship,
    data: &DataSet,
    seed: &str,
) -> Result<CompositeSpec, ComposeError> {
    require_admissible(CompositeType::Nested, rel)?;
    let (th, tc) = (table(data, &host.table)?, table(data, &client.table)?);
    let layout = chart_layout(host, th)?;

    let mut row_of: BTreeMap<String, String> = BTreeMap::new();
    for (hi, ci) in rel.pairs_between(th, tc)? {
        if layout.marks.contains_key(&hi) {
            row_of.entry(hi).or_insert(ci);
        }
    }
    if !row_of.contains_key(seed) {
        return Err(ComposeError::SeedUnmatched(seed.into()));
    }

    let chart_diag = client.diagonal();
    let mut order: Vec<&String> = vec![row_of.keys().find(|k| *k == seed).expect("seed")];
    order.extend(row_of.keys().filter(|k| *k != seed));
    let mut entries = Vec::with_capacity(order.len());
    let mut transforms = Vec::with_capacity(order.len() + 1);
    for element in order {
        let mark = &layout.marks[element];
        let elem_diag = 2.0 * (mark.half * host.pose.scale).norm();
        let scale_factor = NEST_FILL * elem_diag / chart_diag;
        let target = Pose {
            position: host.pose.transform_point(&mark.center),
            rotation: host.pose.rotation,
            scale: client.pose.scale * scale_factor,
        };
        let row = row_of[element].clone();
        transforms.push(Transform {
            element: format!("{}:{}", client.id, row),
            start: client.pose,
            target,
        });
        entries.push(Nest {
            element: element.clone(),
            row,
            target,
            scale_factor,
        });
    }
    transforms.insert(
        0,
        Transform {
            element: client.id.clone(),
            start: client.pose,
            target: entries[0].target,
        },
    );

    Ok(CompositeSpec {
        id: id.into(),
        ty: CompositeType::Nested,
        constituents: vec![host.clone(), client.clone()],
        payload: Payload::Nests(NestPlacementSet {
            host: host.id.clone(),
            client: client.id.clone(),
            entries,
        }),
        transforms,
    })
}
