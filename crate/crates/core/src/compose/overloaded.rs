use nalgebra::Vector3;
use serde::Serialize;

use crate::data::{CompositeType, DataSet, Relationship};
use crate::scene::{
    normalize, pcp_axis_x, view_rows, ChartKind, Encodings, Obb, Pose, ViewSpec,
};

use super::{
    require_admissible, table, ComposeError, CompositeSpec, OverloadPlacement, Payload, Rect,
    ScatterPoint, Transform,
};

/// Clearance between a pcp and the scatterplot spawned below it, meters.
const SPAWN_MARGIN: f64 = 0.05;

/// An activated inter-axis region of a pcp, between axes `index` and `index + 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpreadRegion {
    pub pcp: String,
    pub index: usize,
    /// Region in pcp-local coordinates.
    pub rect: Rect,
}

/// Local distance between neighbouring axes before any spreading.
pub fn default_axis_gap(pcp: &ViewSpec) -> f64 {
    let n = pcp.encodings.axes.len().max(2);
    2.0 * pcp.half_extents[0] / (n - 1) as f64
}

fn check_pair(pcp: &ViewSpec, i: usize) -> Result<(), ComposeError> {
    if pcp.chart != ChartKind::Pcp {
        return Err(ComposeError::NotPcp(pcp.id.clone()));
    }
    let count = pcp.encodings.axes.len();
    if i + 1 >= count {
        return Err(ComposeError::BadAxisIndex { index: i, count });
    }
    Ok(())
}

/// Opens the gap between axes `i` and `i + 1` to `new_gap` (local units).
///
/// Past `spread_factor` times the default gap the region activates and a
/// scatterplot of the two columns is spawned below the pcp. Returns `None`
/// below the threshold.
pub fn spread_pcp_axes(
    pcp: &ViewSpec,
    i: usize,
    new_gap: f64,
    spread_factor: f64,
) -> Result<Option<(SpreadRegion, ViewSpec)>, ComposeError> {
    check_pair(pcp, i)?;
    let g = default_axis_gap(pcp);
    if new_gap <= spread_factor * g {
        return Ok(None);
    }
    let [_, hy, hz] = pcp.half_extents;
    let mid = (pcp_axis_x(pcp, i) + pcp_axis_x(pcp, i + 1)) / 2.0;
    let rect = Rect {
        min: [mid - new_gap / 2.0, -hy],
        max: [mid + new_gap / 2.0, hy],
    };
    let side = g / 2.0;
    let below = -(hy + side + SPAWN_MARGIN / pcp.pose.scale);
    let scatter = ViewSpec {
        id: format!("{}.sppc{}", pcp.id, i),
        chart: ChartKind::Scatterplot,
        table: pcp.table.clone(),
        encodings: Encodings {
            x: Some(pcp.encodings.axes[i + 1].clone()),
            y: Some(pcp.encodings.axes[i].clone()),
            ..Default::default()
        },
        half_extents: [side, side, hz],
        pose: Pose {
            position: pcp.pose.transform_point(&Vector3::new(mid, below, 0.0)),
            ..pcp.pose
        },
        domain: Default::default(),
        items: pcp.items.clone(),
    };
    Ok(Some((
        SpreadRegion {
            pcp: pcp.id.clone(),
            index: i,
            rect,
        },
        scatter,
    )))
}

/// World box of an active region.
pub fn region_obb(pcp: &ViewSpec, region: &SpreadRegion) -> Obb {
    let [cx, cy] = region.rect.center();
    let [hx, hy] = region.rect.half();
    Obb::from_local(
        &pcp.pose,
        Vector3::new(cx, cy, 0.0),
        Vector3::new(hx, hy, pcp.half_extents[2]),
    )
}

/// Embeds the scatterplot in the active region. Points use the pcp's rows:
/// x from axis `i + 1`, y from axis `i`, each min-max normalized.
pub fn compose_overloaded(
    id: &str,
    pcp: &ViewSpec,
    scatter: &ViewSpec,
    region: Option<&SpreadRegion>,
    rel: &Relationship,
    data: &DataSet,
) -> Result<CompositeSpec, ComposeError> {
    if pcp.chart != ChartKind::Pcp {
        return Err(ComposeError::NotPcp(pcp.id.clone()));
    }
    let region = match region {
        Some(r) if r.pcp == pcp.id => r,
        _ => {
            return Err(ComposeError::RegionNotActive {
                pcp: pcp.id.clone(),
                index: region.map(|r| r.index).unwrap_or(0),
            })
        }
    };
    let i = region.index;
    check_pair(pcp, i)?;
    require_admissible(CompositeType::Overloaded, rel)?;
    let t = table(data, &pcp.table)?;
    let rows = view_rows(pcp, t);
    let (cy, cx) = (&pcp.encodings.axes[i], &pcp.encodings.axes[i + 1]);
    let values = |col: &str| -> Result<Vec<f64>, ComposeError> {
        rows.iter()
            .map(|k| {
                t.number(k, col).ok_or_else(|| {
                    crate::scene::SceneError::MissingValue {
                        view: pcp.id.clone(),
                        table: t.name.clone(),
                        item: k.clone(),
                    }
                    .into()
                })
            })
            .collect()
    };
    let (xs, ys) = (values(cx)?, values(cy)?);
    let ext = |v: &[f64]| {
        v.iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(*x), hi.max(*x)))
    };
    let ((x0, x1), (y0, y1)) = (ext(&xs), ext(&ys));
    let scatter_points = rows
        .iter()
        .zip(xs.iter().zip(&ys))
        .map(|(k, (x, y))| ScatterPoint {
            row: k.clone(),
            x: normalize(*x, x0, x1),
            y: normalize(*y, y0, y1),
        })
        .collect();

    let [cx_local, cy_local] = region.rect.center();
    let [rhx, _] = region.rect.half();
    let target = Pose {
        position: pcp.pose.transform_point(&Vector3::new(cx_local, cy_local, 0.0)),
        rotation: pcp.pose.rotation,
        scale: pcp.pose.scale * rhx / scatter.half_extents[0],
    };
    Ok(CompositeSpec {
        id: id.into(),
        ty: CompositeType::Overloaded,
        constituents: vec![pcp.clone(), scatter.clone()],
        payload: Payload::Overload(OverloadPlacement {
            pcp: pcp.id.clone(),
            scatter: scatter.id.clone(),
            axis_pair: [i, i + 1],
            region: region.rect,
            scatter_points,
            hidden_polyline_segments: [i, i + 1],
        }),
        transforms: vec![Transform {
            element: scatter.id.clone(),
            start: scatter.pose,
            target,
        }],
    })
}
