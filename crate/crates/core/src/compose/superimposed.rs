use std::collections::BTreeMap;

use nalgebra::{UnitQuaternion, Vector3};

use crate::data::{CompositeType, DataSet, Relationship};
use crate::scene::{chart_layout, view_rows, Pose, ViewSpec};

use super::{
    require_admissible, table, Anchor, AnchorMap, ComposeError, CompositeSpec, Payload, Transform,
};

/// Spreads the client's glyphs onto the host's matching regions.
///
/// Each client item stands upright on the anchor of its host counterpart.
/// When an item maps to several host regions it goes to the first in key
/// order.
pub fn compose_superimposed(
    id: &str,
    host: &ViewSpec,
    client: &ViewSpec,
    rel: &Relationship,
    data: &DataSet,
) -> Result<CompositeSpec, ComposeError> {
    require_admissible(CompositeType::Superimposed, rel)?;
    let (th, tc) = (table(data, &host.table)?, table(data, &client.table)?);
    let host_layout = chart_layout(host, th)?;
    let client_layout = chart_layout(client, tc)?;

    let mut target_of: BTreeMap<String, String> = BTreeMap::new();
    for (ci, hi) in rel.pairs_between(tc, th)? {
        if host_layout.marks.contains_key(&hi) {
            target_of.entry(ci).or_insert(hi);
        }
    }

    let items = view_rows(client, tc);
    let unmatched: Vec<String> = items
        .iter()
        .filter(|i| !target_of.contains_key(*i))
        .cloned()
        .collect();
    if !unmatched.is_empty() {
        return Err(ComposeError::UnmatchedItems(unmatched));
    }

    // Client local +y along the host normal.
    let upright = host.pose.rotation
        * UnitQuaternion::from_axis_angle(&Vector3::x_axis(), std::f64::consts::FRAC_PI_2);
    let hy = client.half_extents[1];
    let mut entries = Vec::with_capacity(items.len());
    let mut transforms = vec![Transform {
        element: client.id.clone(),
        start: client.pose,
        target: client.pose,
    }];
    for item in items {
        let region = &target_of[&item];
        let anchor = host.pose.transform_point(&host_layout.marks[region].anchor);
        let target = Pose {
            position: anchor,
            rotation: upright,
            scale: client.pose.scale,
        };
        let mark = &client_layout.marks[&item];
        let start = Pose {
            position: client
                .pose
                .transform_point(&Vector3::new(mark.center.x, -hy, 0.0)),
            ..client.pose
        };
        transforms.push(Transform {
            element: format!("{}:{}", client.id, item),
            start,
            target,
        });
        entries.push(Anchor {
            item,
            region: region.clone(),
            target,
        });
    }

    Ok(CompositeSpec {
        id: id.into(),
        ty: CompositeType::Superimposed,
        constituents: vec![host.clone(), client.clone()],
        payload: Payload::Anchors(AnchorMap {
            host: host.id.clone(),
            client: client.id.clone(),
            entries,
        }),
        transforms,
    })
}
