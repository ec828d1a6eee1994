use std::collections::BTreeMap;

use nalgebra::{Unit, UnitQuaternion, Vector3};

use crate::data::{CompositeType, DataSet, DataTable, Relationship};
use crate::scene::{axis_extent, gap_distance, view_rows, Axis, Interval, Pose, ViewSpec};

use super::{
    require_admissible, table, ComposeError, CompositeSpec, JuxtaposeLayout, LayoutMode, Panel,
    Payload, Transform,
};

/// Space between neighbouring small multiples, meters.
pub const PANEL_GAP: f64 = 0.05;

/// `n` equal-width bins covering `domain`.
pub fn partition_bins(domain: Interval, n: usize) -> Vec<Interval> {
    let n = n.max(1);
    let w = domain.width() / n as f64;
    (0..n)
        .map(|j| {
            let hi = if j + 1 == n {
                domain.hi
            } else {
                domain.lo + (j + 1) as f64 * w
            };
            Interval::new(domain.lo + j as f64 * w, hi)
        })
        .collect()
}

/// Bin of `v`: half-open bins, the last one closed.
fn bin_of(v: f64, bins: &[Interval]) -> Option<usize> {
    let last = bins.len() - 1;
    bins.iter().enumerate().position(|(j, b)| {
        v >= b.lo && (v < b.hi || (j == last && v <= b.hi))
    })
}

/// Bin of `v` in an expansion: the first panel is closed, later panels are
/// open below so the source maximum stays in the original panel.
fn expansion_bin_of(v: f64, bins: &[Interval]) -> Option<usize> {
    if bins[0].lo <= v && v <= bins[0].hi {
        return Some(0);
    }
    bins.iter().skip(1).position(|b| v > b.lo && v <= b.hi).map(|j| j + 1)
}

fn axis_bins(
    view: &ViewSpec,
    t: &DataTable,
    axis: Axis,
    n: usize,
) -> Result<Option<Vec<Interval>>, ComposeError> {
    if n <= 1 {
        return Ok(None);
    }
    let missing = || ComposeError::NoSuchAxis {
        view: view.id.clone(),
        axis,
    };
    view.axis_column(axis).ok_or_else(missing)?;
    let domain = axis_extent(view, t, axis).ok_or_else(missing)?;
    Ok(Some(partition_bins(domain, n)))
}

struct Grid {
    x: Option<Vec<Interval>>,
    y: Option<Vec<Interval>>,
}

fn grid_layout(
    id: &str,
    view: &ViewSpec,
    t: &DataTable,
    grid: Grid,
    mode: LayoutMode,
    gap: f64,
    curvature: f64,
) -> CompositeSpec {
    let nx = grid.x.as_ref().map_or(1, Vec::len);
    let ny = grid.y.as_ref().map_or(1, Vec::len);
    let route = |v: f64, bins: &[Interval]| match mode {
        LayoutMode::Expansion => expansion_bin_of(v, bins),
        _ => bin_of(v, bins),
    };

    let mut cells: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for row in view_rows(view, t) {
        let coord = |axis: Axis, bins: &Option<Vec<Interval>>| -> Option<usize> {
            match bins {
                None => Some(0),
                Some(b) => route(t.number(&row, view.axis_column(axis)?)?, b),
            }
        };
        if let (Some(p), Some(q)) = (coord(Axis::X, &grid.x), coord(Axis::Y, &grid.y)) {
            cells.entry((p, q)).or_default().push(row.clone());
        }
    }

    let [hx, hy, _] = view.half_extents;
    let step_gap = gap / view.pose.scale;
    let mut panels = Vec::with_capacity(nx * ny);
    let mut transforms = Vec::with_capacity(nx * ny);
    for q in 0..ny {
        for p in 0..nx {
            let mut domain = view.domain;
            if let Some(b) = &grid.x {
                domain.set(Axis::X, b[p]);
            }
            if let Some(b) = &grid.y {
                domain.set(Axis::Y, b[q]);
            }
            let rows = cells.remove(&(p, q)).unwrap_or_default();
            let offset = Vector3::new(
                p as f64 * (2.0 * hx + step_gap),
                q as f64 * (2.0 * hy + step_gap),
                0.0,
            );
            let pose = Pose {
                position: view.pose.transform_point(&offset),
                ..view.pose
            };
            let panel_view = ViewSpec {
                id: format!("{}.x{}y{}", view.id, p, q),
                domain,
                items: Some(rows.clone()),
                pose,
                ..view.clone()
            };
            transforms.push(Transform {
                element: panel_view.id.clone(),
                start: view.pose,
                target: pose,
            });
            panels.push(Panel {
                view: panel_view,
                cell: [p, q],
                rows,
            });
        }
    }
    let layout = JuxtaposeLayout {
        source: Some(view.id.clone()),
        mode,
        bins: [nx, ny],
        panels,
        gap,
        curvature: 0.0,
    };
    let layout = bend_layout(&layout, curvature);
    for (t, p) in transforms.iter_mut().zip(&layout.panels) {
        t.target = p.view.pose;
    }
    CompositeSpec {
        id: id.into(),
        ty: CompositeType::Juxtaposed,
        constituents: vec![view.clone()],
        payload: Payload::Layout(layout),
        transforms,
    }
}

/// Splits a view into `bins[0] × bins[1]` small multiples over equal-width
/// value bins. `[1, 1]` yields no composite.
pub fn partition_grid(
    id: &str,
    view: &ViewSpec,
    data: &DataSet,
    bins: [usize; 2],
    gap: f64,
    curvature: f64,
) -> Result<Option<CompositeSpec>, ComposeError> {
    let t = table(data, &view.table)?;
    let grid = Grid {
        x: axis_bins(view, t, Axis::X, bins[0])?,
        y: axis_bins(view, t, Axis::Y, bins[1])?,
    };
    if grid.x.is_none() && grid.y.is_none() {
        return Ok(None);
    }
    Ok(Some(grid_layout(
        id,
        view,
        t,
        grid,
        LayoutMode::Partition,
        gap,
        curvature,
    )))
}

/// Partition by a unimanual handle drag: `1 + floor(drag / bin_step)` bins.
pub fn partition_axis(
    id: &str,
    view: &ViewSpec,
    data: &DataSet,
    axis: Axis,
    drag: f64,
    bin_step: f64,
) -> Result<Option<CompositeSpec>, ComposeError> {
    if view.axis_column(axis).is_none() {
        return Err(ComposeError::NoSuchAxis {
            view: view.id.clone(),
            axis,
        });
    }
    let n = 1 + (drag.max(0.0) / bin_step).floor() as usize;
    let mut bins = [1, 1];
    bins[axis.index()] = n;
    partition_grid(id, view, data, bins, PANEL_GAP, 0.0)
}

/// Expansion by dragging axis handles outward: each axis gains
/// `floor(drag / axis length)` panels continuing its domain.
pub fn expand_axis(
    id: &str,
    view: &ViewSpec,
    data: &DataSet,
    drags: [Option<f64>; 2],
) -> Result<Option<CompositeSpec>, ComposeError> {
    let t = table(data, &view.table)?;
    let mut bins: [Option<Vec<Interval>>; 2] = [None, None];
    for axis in [Axis::X, Axis::Y] {
        let Some(drag) = drags[axis.index()] else { continue };
        let missing = || ComposeError::NoSuchAxis {
            view: view.id.clone(),
            axis,
        };
        view.axis_column(axis).ok_or_else(missing)?;
        let domain = axis_extent(view, t, axis).ok_or_else(missing)?;
        let length = view.axis_length(axis) * view.pose.scale;
        let k = (drag.max(0.0) / length).floor() as usize;
        if k > 0 {
            let w = domain.width();
            bins[axis.index()] = Some(
                (0..=k)
                    .map(|p| Interval::new(domain.lo + p as f64 * w, domain.lo + (p + 1) as f64 * w))
                    .collect(),
            );
        }
    }
    let [x, y] = bins;
    if x.is_none() && y.is_none() {
        return Ok(None);
    }
    Ok(Some(grid_layout(
        id,
        view,
        t,
        Grid { x, y },
        LayoutMode::Expansion,
        PANEL_GAP,
        0.0,
    )))
}

/// Two unrelated views placed side by side.
pub fn compose_juxtaposed(
    id: &str,
    a: &ViewSpec,
    b: &ViewSpec,
    rel: &Relationship,
    data: &DataSet,
) -> Result<CompositeSpec, ComposeError> {
    require_admissible(CompositeType::Juxtaposed, rel)?;
    let (a, b) = if a.id <= b.id { (a, b) } else { (b, a) };
    let panels = [a, b]
        .iter()
        .enumerate()
        .map(|(i, v)| {
            Ok(Panel {
                view: (*v).clone(),
                cell: [i, 0],
                rows: view_rows(v, table(data, &v.table)?),
            })
        })
        .collect::<Result<Vec<_>, ComposeError>>()?;
    Ok(CompositeSpec {
        id: id.into(),
        ty: CompositeType::Juxtaposed,
        constituents: vec![a.clone(), b.clone()],
        payload: Payload::Layout(JuxtaposeLayout {
            source: None,
            mode: LayoutMode::Arrangement,
            bins: [2, 1],
            panels,
            gap: gap_distance(a, b).max(0.0),
            curvature: 0.0,
        }),
        transforms: vec![],
    })
}

/// Re-poses each row of a flat layout on a circular arc of total angle
/// `curvature`, panels turned to face the arc center. Neighbour spacing
/// along the arc equals the flat spacing.
pub fn bend_layout(layout: &JuxtaposeLayout, curvature: f64) -> JuxtaposeLayout {
    let mut out = layout.clone();
    out.curvature = curvature;
    if curvature == 0.0 {
        return out;
    }
    let mut rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, p) in layout.panels.iter().enumerate() {
        rows.entry(p.cell[1]).or_default().push(i);
    }
    for idx in rows.values_mut() {
        idx.sort_by_key(|&i| layout.panels[i].cell[0]);
        let n = idx.len();
        if n < 2 {
            continue;
        }
        let first = layout.panels[idx[0]].view.pose;
        let last = layout.panels[idx[n - 1]].view.pose;
        let span = last.position - first.position;
        let s = span.norm() / (n - 1) as f64;
        let u = span / span.norm();
        let normal = first.normal();
        let step = curvature / (n - 1) as f64;
        let radius = s / step;
        let mid = (first.position + last.position) / 2.0;
        let center = mid + normal * radius;
        let axis = Unit::new_normalize(normal.cross(&u));
        for (k, &i) in idx.iter().enumerate() {
            let phi = (k as f64 - (n - 1) as f64 / 2.0) * step;
            let turn = UnitQuaternion::from_axis_angle(&axis, -phi);
            let facing = turn * normal;
            let pose = &mut out.panels[i].view.pose;
            pose.position = center - facing * radius;
            pose.rotation = turn * pose.rotation;
        }
    }
    out
}
