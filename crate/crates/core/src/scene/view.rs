use std::fmt;
use std::str::FromStr;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use super::Pose;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChartKind {
    Scatterplot,
    Barchart,
    Linechart,
    Stackedbar,
    Map,
    Pcp,
    Graph,
}

impl ChartKind {
    pub fn is_bar(self) -> bool {
        matches!(self, ChartKind::Barchart | ChartKind::Stackedbar)
    }
}

/// Map region polygon, vertices in panel-normalized coordinates `[-1, 1]²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Region {
    pub key: String,
    pub polygon: Vec<[f64; 2]>,
}

/// Graph node position in panel-normalized coordinates `[-1, 1]²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Node {
    pub key: String,
    pub pos: [f64; 2],
}

/// Channel to column bindings plus the geometry some charts carry.
///
/// * scatterplot: `x`, `y`
/// * barchart, linechart: `y`
/// * stackedbar: `stack`
/// * pcp: `axes`
/// * map: `regions`, optional `value`
/// * graph: `nodes`, `edges`, optional `value`
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Encodings {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stack: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub axes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub regions: Vec<Region>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub nodes: Vec<Node>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<(String, String)>,
}

impl Encodings {
    /// Every column the encodings refer to.
    pub fn columns(&self) -> Vec<&str> {
        let mut out: Vec<&str> = [&self.x, &self.y, &self.value]
            .into_iter()
            .flatten()
            .map(String::as_str)
            .collect();
        out.extend(self.stack.iter().map(String::as_str));
        out.extend(self.axes.iter().map(String::as_str));
        out
    }
}

/// Value interval shown along a quantitative axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Explicit axis domains; unset axes use the data extent.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Domain {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Interval>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Interval>,
}

impl Domain {
    pub fn is_empty(&self) -> bool {
        self.x.is_none() && self.y.is_none()
    }

    pub fn get(&self, axis: Axis) -> Option<Interval> {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
        }
    }

    pub fn set(&mut self, axis: Axis, iv: Interval) {
        match axis {
            Axis::X => self.x = Some(iv),
            Axis::Y => self.y = Some(iv),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
        }
    }
}

/// A primitive visualization panel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViewSpec {
    pub id: String,
    pub chart: ChartKind,
    pub table: String,
    pub encodings: Encodings,
    /// Local half sizes in meters; z is thin for planar charts.
    #[serde(rename = "halfExtents")]
    pub half_extents: [f64; 3],
    pub pose: Pose,
    #[serde(default, skip_serializing_if = "Domain::is_empty")]
    pub domain: Domain,
    /// Restricts the view to these row keys.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub items: Option<Vec<String>>,
}

impl ViewSpec {
    pub fn half(&self) -> Vector3<f64> {
        Vector3::from(self.half_extents)
    }

    /// World-space half extents.
    pub fn world_half(&self) -> Vector3<f64> {
        self.half() * self.pose.scale
    }

    /// Full world-space diagonal length.
    pub fn diagonal(&self) -> f64 {
        2.0 * self.world_half().norm()
    }

    /// Column bound to a quantitative axis, if the chart has one.
    pub fn axis_column(&self, axis: Axis) -> Option<&str> {
        match (self.chart, axis) {
            (ChartKind::Scatterplot, Axis::X) => self.encodings.x.as_deref(),
            (
                ChartKind::Scatterplot | ChartKind::Barchart | ChartKind::Linechart,
                Axis::Y,
            ) => self.encodings.y.as_deref(),
            _ => None,
        }
    }

    /// Local axis length (unscaled).
    pub fn axis_length(&self, axis: Axis) -> f64 {
        2.0 * self.half_extents[axis.index()]
    }
}

/// A grabbable piece of a view.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    Body,
    AxisX,
    AxisY,
    AxisHandleX,
    AxisHandleY,
    PcpAxis(usize),
    Element(String),
}

impl Part {
    pub fn handle(axis: Axis) -> Part {
        match axis {
            Axis::X => Part::AxisHandleX,
            Axis::Y => Part::AxisHandleY,
        }
    }

    pub fn handle_axis(&self) -> Option<Axis> {
        match self {
            Part::AxisHandleX => Some(Axis::X),
            Part::AxisHandleY => Some(Axis::Y),
            _ => None,
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Part::Body => f.write_str("body"),
            Part::AxisX => f.write_str("axis-x"),
            Part::AxisY => f.write_str("axis-y"),
            Part::AxisHandleX => f.write_str("axis-x-handle"),
            Part::AxisHandleY => f.write_str("axis-y-handle"),
            Part::PcpAxis(i) => write!(f, "pcp-axis:{i}"),
            Part::Element(id) => write!(f, "element:{id}"),
        }
    }
}

impl FromStr for Part {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "body" => Part::Body,
            "axis-x" => Part::AxisX,
            "axis-y" => Part::AxisY,
            "axis-x-handle" => Part::AxisHandleX,
            "axis-y-handle" => Part::AxisHandleY,
            _ => {
                if let Some(i) = s.strip_prefix("pcp-axis:") {
                    Part::PcpAxis(i.parse().map_err(|_| format!("bad pcp axis index in \"{s}\""))?)
                } else if let Some(id) = s.strip_prefix("element:") {
                    if id.is_empty() {
                        return Err("empty element id".into());
                    }
                    Part::Element(id.to_owned())
                } else {
                    return Err(format!("unknown part \"{s}\""));
                }
            }
        })
    }
}

impl Serialize for Part {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Part {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn part_names_round_trip() {
        for p in [
            Part::Body,
            Part::AxisX,
            Part::AxisY,
            Part::AxisHandleX,
            Part::AxisHandleY,
            Part::PcpAxis(2),
            Part::Element("p3".into()),
            Part::Element("a:b".into()),
        ] {
            assert_eq!(p.to_string().parse::<Part>().unwrap(), p);
        }
        assert!("pcp-axis:x".parse::<Part>().is_err());
        assert!("wing".parse::<Part>().is_err());
        assert!("element:".parse::<Part>().is_err());
    }

    #[test]
    fn encodings_reject_unknown_channels() {
        assert!(serde_json::from_str::<Encodings>(r#"{"x":"a","colour":"b"}"#).is_err());
        let e: Encodings = serde_json::from_str(
            r#"{"nodes":[{"key":"p1","pos":[0,0]}],"edges":[["p1","p2"]]}"#,
        )
        .unwrap();
        assert_eq!(e.edges, vec![("p1".to_string(), "p2".to_string())]);
    }
}
