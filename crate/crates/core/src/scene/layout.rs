//! Local chart layouts: where each item's mark sits on the panel.
//!
//! Every chart occupies the local rectangle `x ∈ [-hx, hx]`, `y ∈ [-hy, hy]`
//! at `z = 0`. Items are laid out in row-key order.

use std::collections::BTreeMap;

use nalgebra::Vector3;

use super::{Axis, ChartKind, Interval, Obb, Part, SceneError, ViewSpec};
use crate::data::DataTable;

/// Marker cube half size for point marks, as a fraction of the smaller half extent.
pub const MARKER_FRACTION: f64 = 0.05;
/// Graph node cube half size, as a fraction of the smaller half extent.
pub const NODE_FRACTION: f64 = 0.1;
/// Axis handle cube size as a fraction of the axis length.
pub const HANDLE_FRACTION: f64 = 0.05;
/// Axis and pcp-axis bar thickness as a fraction of the perpendicular half extent.
const AXIS_THICKNESS: f64 = 0.02;
/// Bars fill this fraction of their slot width.
const BAR_FILL: f64 = 0.8;

/// Min-max normalization into `[0, 1]`; a degenerate range maps to 0.5.
pub fn normalize(v: f64, lo: f64, hi: f64) -> f64 {
    if hi - lo > 0.0 {
        ((v - lo) / (hi - lo)).clamp(0.0, 1.0)
    } else {
        0.5
    }
}

/// A mark in panel-local coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mark {
    /// Link and placement anchor.
    pub anchor: Vector3<f64>,
    /// Element box center.
    pub center: Vector3<f64>,
    /// Element box half extents.
    pub half: Vector3<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ChartLayout {
    pub marks: BTreeMap<String, Mark>,
}

/// Row keys shown by a view, sorted.
pub fn view_rows(view: &ViewSpec, table: &DataTable) -> Vec<String> {
    let keys = table.keys();
    match &view.items {
        Some(items) => keys.into_iter().filter(|k| items.contains(k)).collect(),
        None => keys,
    }
}

fn column_extent(table: &DataTable, rows: &[String], column: &str) -> Option<Interval> {
    rows.iter()
        .filter_map(|k| table.number(k, column))
        .fold(None, |acc: Option<Interval>, v| match acc {
            None => Some(Interval::new(v, v)),
            Some(iv) => Some(Interval::new(iv.lo.min(v), iv.hi.max(v))),
        })
}

/// Value interval along a quantitative axis: the explicit domain if set,
/// otherwise the extent of the view's rows.
pub fn axis_extent(view: &ViewSpec, table: &DataTable, axis: Axis) -> Option<Interval> {
    if let Some(iv) = view.domain.get(axis) {
        return Some(iv);
    }
    let col = view.axis_column(axis)?;
    column_extent(table, &view_rows(view, table), col)
}

/// Local x of pcp axis `i`.
pub fn pcp_axis_x(view: &ViewSpec, i: usize) -> f64 {
    let n = view.encodings.axes.len().max(2);
    let hx = view.half_extents[0];
    -hx + i as f64 * (2.0 * hx / (n - 1) as f64)
}

fn require<'a>(view: &ViewSpec, channel: &str, v: Option<&'a String>) -> Result<&'a str, SceneError> {
    v.map(String::as_str).ok_or_else(|| SceneError::MissingEncoding {
        view: view.id.clone(),
        channel: channel.into(),
    })
}

fn numbers(
    view: &ViewSpec,
    table: &DataTable,
    rows: &[String],
    value: impl Fn(&str) -> Option<f64>,
) -> Result<Vec<f64>, SceneError> {
    rows.iter()
        .map(|k| {
            value(k).ok_or_else(|| SceneError::MissingValue {
                view: view.id.clone(),
                table: table.name.clone(),
                item: k.clone(),
            })
        })
        .collect()
}

fn extent_of(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(*v), hi.max(*v)))
}

/// Computes the local mark of every item the view shows.
pub fn chart_layout(view: &ViewSpec, table: &DataTable) -> Result<ChartLayout, SceneError> {
    if view.table != table.name {
        return Err(SceneError::TableMismatch {
            view: view.id.clone(),
            table: table.name.clone(),
        });
    }
    let [hx, hy, hz] = view.half_extents;
    let rows = view_rows(view, table);
    let marker = MARKER_FRACTION * hx.min(hy);
    let mut marks = BTreeMap::new();

    match view.chart {
        ChartKind::Scatterplot => {
            let cx = require(view, "x", view.encodings.x.as_ref())?;
            let cy = require(view, "y", view.encodings.y.as_ref())?;
            let xs = numbers(view, table, &rows, |k| table.number(k, cx))?;
            let ys = numbers(view, table, &rows, |k| table.number(k, cy))?;
            let dx = axis_extent(view, table, Axis::X).unwrap_or(Interval::new(0.0, 0.0));
            let dy = axis_extent(view, table, Axis::Y).unwrap_or(Interval::new(0.0, 0.0));
            for (k, (x, y)) in rows.iter().zip(xs.iter().zip(&ys)) {
                let p = Vector3::new(
                    -hx + 2.0 * hx * normalize(*x, dx.lo, dx.hi),
                    -hy + 2.0 * hy * normalize(*y, dy.lo, dy.hi),
                    0.0,
                );
                marks.insert(
                    k.clone(),
                    Mark {
                        anchor: p,
                        center: p,
                        half: Vector3::new(marker, marker, hz),
                    },
                );
            }
        }
        ChartKind::Barchart | ChartKind::Linechart | ChartKind::Stackedbar => {
            let values = if view.chart == ChartKind::Stackedbar {
                if view.encodings.stack.is_empty() {
                    return Err(SceneError::MissingEncoding {
                        view: view.id.clone(),
                        channel: "stack".into(),
                    });
                }
                numbers(view, table, &rows, |k| {
                    view.encodings
                        .stack
                        .iter()
                        .map(|c| table.number(k, c))
                        .sum::<Option<f64>>()
                })?
            } else {
                let cy = require(view, "y", view.encodings.y.as_ref())?;
                numbers(view, table, &rows, |k| table.number(k, cy))?
            };
            let (lo, hi) = match view.domain.y {
                Some(iv) if view.chart != ChartKind::Stackedbar => (iv.lo, iv.hi),
                _ => extent_of(&values),
            };
            let n = rows.len().max(1) as f64;
            let slot = 2.0 * hx / n;
            for (i, (k, v)) in rows.iter().zip(&values).enumerate() {
                let x = -hx + (i as f64 + 0.5) * slot;
                let top = hy * (2.0 * normalize(*v, lo, hi) - 1.0);
                let anchor = Vector3::new(x, top, 0.0);
                let mark = if view.chart == ChartKind::Linechart {
                    Mark {
                        anchor,
                        center: anchor,
                        half: Vector3::new(marker, marker, hz),
                    }
                } else {
                    let half_h = ((top + hy) / 2.0).max(AXIS_THICKNESS * hy);
                    Mark {
                        anchor,
                        center: Vector3::new(x, -hy + half_h, 0.0),
                        half: Vector3::new(BAR_FILL * slot / 2.0, half_h, hz),
                    }
                };
                marks.insert(k.clone(), mark);
            }
        }
        ChartKind::Map => {
            for region in &view.encodings.regions {
                if !rows.contains(&region.key) {
                    continue;
                }
                let pts: Vec<(f64, f64)> =
                    region.polygon.iter().map(|p| (p[0] * hx, p[1] * hy)).collect();
                let (cx, cy) = polygon_centroid(&pts);
                let (mut x0, mut y0, mut x1, mut y1) =
                    (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
                for (x, y) in &pts {
                    x0 = x0.min(*x);
                    y0 = y0.min(*y);
                    x1 = x1.max(*x);
                    y1 = y1.max(*y);
                }
                marks.insert(
                    region.key.clone(),
                    Mark {
                        anchor: Vector3::new(cx, cy, 0.0),
                        center: Vector3::new((x0 + x1) / 2.0, (y0 + y1) / 2.0, 0.0),
                        half: Vector3::new((x1 - x0) / 2.0, (y1 - y0) / 2.0, hz),
                    },
                );
            }
        }
        ChartKind::Graph => {
            let r = NODE_FRACTION * hx.min(hy);
            for node in &view.encodings.nodes {
                if !rows.contains(&node.key) {
                    continue;
                }
                let p = Vector3::new(node.pos[0] * hx, node.pos[1] * hy, 0.0);
                marks.insert(
                    node.key.clone(),
                    Mark {
                        anchor: p,
                        center: p,
                        half: Vector3::new(r, r, r),
                    },
                );
            }
        }
        ChartKind::Pcp => {
            let axes = &view.encodings.axes;
            if axes.len() < 2 {
                return Err(SceneError::MissingEncoding {
                    view: view.id.clone(),
                    channel: "axes".into(),
                });
            }
            let mut columns = Vec::with_capacity(axes.len());
            for col in axes {
                let vals = numbers(view, table, &rows, |k| table.number(k, col))?;
                let (lo, hi) = extent_of(&vals);
                columns.push(
                    vals.into_iter()
                        .map(|v| -hy + 2.0 * hy * normalize(v, lo, hi))
                        .collect::<Vec<_>>(),
                );
            }
            for (r, k) in rows.iter().enumerate() {
                let pts: Vec<Vector3<f64>> = (0..axes.len())
                    .map(|i| Vector3::new(pcp_axis_x(view, i), columns[i][r], 0.0))
                    .collect();
                let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
                for p in &pts {
                    y0 = y0.min(p.y);
                    y1 = y1.max(p.y);
                }
                marks.insert(
                    k.clone(),
                    Mark {
                        anchor: polyline_midpoint(&pts),
                        center: Vector3::new(0.0, (y0 + y1) / 2.0, 0.0),
                        half: Vector3::new(hx, ((y1 - y0) / 2.0).max(AXIS_THICKNESS * hy), hz),
                    },
                );
            }
        }
    }
    Ok(ChartLayout { marks })
}

/// Area centroid of a simple polygon; falls back to the vertex mean when the
/// area vanishes.
pub fn polygon_centroid(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mut area2 = 0.0;
    let (mut cx, mut cy) = (0.0, 0.0);
    for i in 0..n {
        let (x0, y0) = pts[i];
        let (x1, y1) = pts[(i + 1) % n];
        let cross = x0 * y1 - x1 * y0;
        area2 += cross;
        cx += (x0 + x1) * cross;
        cy += (y0 + y1) * cross;
    }
    if area2.abs() < 1e-15 {
        let (sx, sy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
        return (sx / n as f64, sy / n as f64);
    }
    (cx / (3.0 * area2), cy / (3.0 * area2))
}

/// Point halfway along a polyline by arc length.
pub fn polyline_midpoint(pts: &[Vector3<f64>]) -> Vector3<f64> {
    let total: f64 = pts.windows(2).map(|w| (w[1] - w[0]).norm()).sum();
    if total == 0.0 {
        return pts.first().copied().unwrap_or_else(Vector3::zeros);
    }
    let mut remaining = total / 2.0;
    for w in pts.windows(2) {
        let len = (w[1] - w[0]).norm();
        if remaining <= len {
            return w[0] + (w[1] - w[0]) * (remaining / len);
        }
        remaining -= len;
    }
    *pts.last().expect("non-empty")
}

/// Whether `part` exists on `view`.
pub fn has_part(view: &ViewSpec, table: &DataTable, part: &Part) -> bool {
    match part {
        Part::Body => true,
        Part::AxisX | Part::AxisHandleX => view.axis_column(Axis::X).is_some(),
        Part::AxisY | Part::AxisHandleY => view.axis_column(Axis::Y).is_some(),
        Part::PcpAxis(i) => view.chart == ChartKind::Pcp && *i < view.encodings.axes.len(),
        Part::Element(item) => chart_layout(view, table)
            .map(|l| l.marks.contains_key(item))
            .unwrap_or(false),
    }
}

/// Local box `(center, half)` of a part.
pub fn part_box(
    view: &ViewSpec,
    table: &DataTable,
    part: &Part,
) -> Result<(Vector3<f64>, Vector3<f64>), SceneError> {
    let [hx, hy, hz] = view.half_extents;
    let unknown = || SceneError::UnknownPart {
        view: view.id.clone(),
        part: part.to_string(),
    };
    if !matches!(part, Part::Element(_)) && !has_part(view, table, part) {
        return Err(unknown());
    }
    Ok(match part {
        Part::Body => (Vector3::zeros(), view.half()),
        Part::AxisX => (
            Vector3::new(0.0, -hy, 0.0),
            Vector3::new(hx, AXIS_THICKNESS * hy, hz),
        ),
        Part::AxisY => (
            Vector3::new(-hx, 0.0, 0.0),
            Vector3::new(AXIS_THICKNESS * hx, hy, hz),
        ),
        Part::AxisHandleX => {
            let s = HANDLE_FRACTION * hx;
            (Vector3::new(hx, -hy, 0.0), Vector3::new(s, s, s))
        }
        Part::AxisHandleY => {
            let s = HANDLE_FRACTION * hy;
            (Vector3::new(-hx, hy, 0.0), Vector3::new(s, s, s))
        }
        Part::PcpAxis(i) => (
            Vector3::new(pcp_axis_x(view, *i), 0.0, 0.0),
            Vector3::new(AXIS_THICKNESS * hx, hy, hz),
        ),
        Part::Element(item) => {
            let layout = chart_layout(view, table)?;
            let mark = layout.marks.get(item).ok_or_else(unknown)?;
            (mark.center, mark.half)
        }
    })
}

/// World-space box of a part.
pub fn obb_of(view: &ViewSpec, table: &DataTable, part: &Part) -> Result<Obb, SceneError> {
    let (c, h) = part_box(view, table, part)?;
    Ok(Obb::from_local(&view.pose, c, h))
}

pub fn body_obb(view: &ViewSpec) -> Obb {
    Obb::from_local(&view.pose, Vector3::zeros(), view.half())
}

/// World position of an item's mark.
pub fn anchor_position(
    view: &ViewSpec,
    table: &DataTable,
    item: &str,
) -> Result<Vector3<f64>, SceneError> {
    let layout = chart_layout(view, table)?;
    let mark = layout.marks.get(item).ok_or_else(|| SceneError::UnknownItem {
        view: view.id.clone(),
        item: item.into(),
    })?;
    Ok(view.pose.transform_point(&mark.anchor))
}
