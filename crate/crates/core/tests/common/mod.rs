#![allow(dead_code)]

use embcomp_core::intent::{Command, Hand, InteractionEvent};
use embcomp_core::io::load_manifest;
use embcomp_core::scene::Pose;
use embcomp_core::{Manifest, Part, Session};
use nalgebra::{UnitQuaternion, Vector3};
use serde_json::{json, Value};

pub fn col(name: &str, kind: &str) -> Value {
    json!({"name": name, "kind": kind})
}

pub fn pose(x: f64, y: f64, z: f64) -> Value {
    json!({"pos": [x, y, z], "rot": [0, 0, 0, 1], "scale": 1})
}

pub fn table(name: &str, key: &str, measures: &[&str], keys: &[&str]) -> Value {
    let mut columns = vec![col(key, "categorical")];
    columns.extend(measures.iter().map(|m| col(m, "quantitative")));
    let rows: Vec<Value> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| {
            let mut row = serde_json::Map::new();
            row.insert(key.into(), json!(k));
            for (j, m) in measures.iter().enumerate() {
                row.insert((*m).into(), json!(((i * 7 + j * 3) % 11) as f64 + 1.0));
            }
            Value::Object(row)
        })
        .collect();
    json!({"name": name, "key": key, "columns": columns, "rows": rows})
}

pub fn manifest(v: Value) -> Manifest {
    load_manifest(&v.to_string()).expect("test manifest is valid")
}

pub const KEYS: [&str; 5] = ["a", "b", "c", "d", "e"];

/// Three single-measure tables over the same keys, one bar chart each.
pub fn three_bars() -> Manifest {
    manifest(json!({
        "tables": [
            table("t1", "k", &["m1"], &KEYS),
            table("t2", "k", &["m2"], &KEYS),
            table("t3", "k", &["m3"], &KEYS),
        ],
        "views": [
            {"id": "v1", "chart": "barchart", "table": "t1", "encodings": {"y": "m1"},
             "halfExtents": [0.3, 0.2, 0.01], "pose": pose(0.0, 1.0, 0.0)},
            {"id": "v2", "chart": "barchart", "table": "t2", "encodings": {"y": "m2"},
             "halfExtents": [0.3, 0.2, 0.01], "pose": pose(2.0, 1.0, 0.0)},
            {"id": "v3", "chart": "barchart", "table": "t3", "encodings": {"y": "m3"},
             "halfExtents": [0.3, 0.2, 0.01], "pose": pose(4.0, 1.0, 0.0)},
        ]
    }))
}

/// Two tables sharing no values.
pub fn unrelated() -> Manifest {
    manifest(json!({
        "tables": [
            table("left", "k", &["m"], &KEYS),
            table("right", "k", &["m"], &["p", "q", "r"]),
        ],
        "views": [
            {"id": "l", "chart": "barchart", "table": "left", "encodings": {"y": "m"},
             "halfExtents": [0.3, 0.2, 0.01], "pose": pose(0.0, 1.0, 0.0)},
            {"id": "r", "chart": "barchart", "table": "right", "encodings": {"y": "m"},
             "halfExtents": [0.3, 0.2, 0.01], "pose": pose(3.0, 1.0, 0.0)},
        ]
    }))
}

pub fn map_and_bars() -> Manifest {
    let regions: Vec<Value> = KEYS
        .iter()
        .enumerate()
        .map(|(i, k)| {
            let x0 = -1.0 + 0.4 * i as f64;
            json!({"key": k, "polygon": [[x0, -1.0], [x0 + 0.4, -1.0], [x0 + 0.4, 1.0], [x0, 1.0]]})
        })
        .collect();
    let q = UnitQuaternion::from_axis_angle(&Vector3::x_axis(), -std::f64::consts::FRAC_PI_2);
    let q = q.quaternion();
    manifest(json!({
        "tables": [
            {"name": "places", "key": "k", "columns": [col("k", "categorical")],
             "rows": KEYS.iter().map(|k| json!({"k": k})).collect::<Vec<_>>()},
            table("counts", "k", &["n"], &KEYS),
        ],
        "views": [
            {"id": "map", "chart": "map", "table": "places", "encodings": {"regions": regions},
             "halfExtents": [0.5, 0.4, 0.01],
             "pose": {"pos": [0.0, 0.8, 0.0], "rot": [q.i, q.j, q.k, q.w], "scale": 1}},
            {"id": "bars", "chart": "barchart", "table": "counts", "encodings": {"y": "n"},
             "halfExtents": [0.3, 0.2, 0.01], "pose": pose(1.5, 1.3, 0.0)},
        ]
    }))
}

pub fn graph_and_stats() -> Manifest {
    let nodes: Vec<Value> = KEYS
        .iter()
        .enumerate()
        .map(|(i, k)| json!({"key": k, "pos": [-0.8 + 0.4 * i as f64, 0.0]}))
        .collect();
    manifest(json!({
        "tables": [
            {"name": "people", "key": "k", "columns": [col("k", "categorical")],
             "rows": KEYS.iter().map(|k| json!({"k": k})).collect::<Vec<_>>()},
            table("stats", "k", &["s1", "s2", "s3"], &KEYS),
        ],
        "views": [
            {"id": "graph", "chart": "graph", "table": "people", "encodings": {"nodes": nodes},
             "halfExtents": [0.5, 0.4, 0.01], "pose": pose(0.0, 1.0, 0.0)},
            {"id": "stack", "chart": "stackedbar", "table": "stats",
             "encodings": {"stack": ["s1", "s2", "s3"]},
             "halfExtents": [0.3, 0.2, 0.01], "pose": pose(1.5, 1.0, 0.0)},
        ]
    }))
}

pub fn pcp_only() -> Manifest {
    manifest(json!({
        "tables": [table("rows", "k", &["m1", "m2", "m3"], &KEYS)],
        "views": [
            {"id": "pcp", "chart": "pcp", "table": "rows", "encodings": {"axes": ["m1", "m2", "m3"]},
             "halfExtents": [0.6, 0.3, 0.01], "pose": pose(0.0, 1.2, 0.0)},
        ]
    }))
}

pub fn scatter_only() -> Manifest {
    manifest(json!({
        "tables": [table("rows", "k", &["m1", "m2"], &KEYS)],
        "views": [
            {"id": "sc", "chart": "scatterplot", "table": "rows", "encodings": {"x": "m1", "y": "m2"},
             "halfExtents": [0.4, 0.3, 0.01], "pose": pose(0.0, 1.2, 0.0)},
        ]
    }))
}

/// Applies events to a session, keeping time and the fired commands.
pub struct Driver {
    pub session: Session,
    pub commands: Vec<Command>,
    pub t: f64,
}

impl Driver {
    pub fn new(m: &Manifest) -> Self {
        Self {
            session: m.session(),
            commands: Vec::new(),
            t: 0.0,
        }
    }

    pub fn apply(&mut self, e: InteractionEvent) -> Option<Command> {
        let cmd = self.session.apply(&e).unwrap_or_else(|err| panic!("{e:?}: {err}"));
        self.t += 0.05;
        if let Some(c) = &cmd {
            self.commands.push(c.clone());
        }
        cmd
    }

    pub fn grab(&mut self, hand: Hand, view: &str, part: Part) {
        self.apply(InteractionEvent::grab(self.t, hand, view, part));
    }

    pub fn hand(&self, hand: Hand) -> Pose {
        self.session.grip(hand).expect("holding").hand
    }

    pub fn move_by(&mut self, hand: Hand, d: Vector3<f64>) {
        let mut p = self.hand(hand);
        p.position += d;
        self.apply(InteractionEvent::moved(self.t, hand, p));
        self.apply(InteractionEvent::tick(self.t));
    }

    pub fn release(&mut self, hand: Hand) -> Option<Command> {
        self.apply(InteractionEvent::release(self.t, hand))
    }

    /// Grab a body, move it by `d`, release.
    pub fn drag_body(&mut self, view: &str, d: Vector3<f64>) -> Option<Command> {
        self.grab(Hand::Right, view, Part::Body);
        self.move_by(Hand::Right, d);
        self.release(Hand::Right)
    }

    pub fn position(&self, view: &str) -> Vector3<f64> {
        self.session.view(view).expect("view").pose.position
    }

    /// Moves `view` so its bounding-sphere gap to `other` is `gap`, along x.
    pub fn place_beside(&mut self, view: &str, other: &str, gap: f64) -> Option<Command> {
        let v = self.session.view(view).unwrap();
        let o = self.session.view(other).unwrap();
        let r = v.world_half().norm() + o.world_half().norm();
        let target = o.pose.position + Vector3::new(r + gap, 0.0, 0.0);
        let d = target - v.pose.position;
        self.drag_body(view, d)
    }
}
