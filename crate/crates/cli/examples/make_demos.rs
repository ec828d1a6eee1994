//! Regenerates the bundled demo manifests and traces.
//!
//! Traces are recorded by driving a live session, so hand positions are
//! absolute poses computed from where each grab actually landed.
//!
//! ```text
//! cargo run -p embcomp-cli --example make_demos -- crates/cli/demos
//! ```

use std::path::{Path, PathBuf};

use embcomp_core::intent::{Hand, InteractionEvent};
use embcomp_core::io::{load_manifest, save_manifest, save_trace, to_canonical_line};
use embcomp_core::scene::Pose;
use embcomp_core::{Manifest, Part, Session};
use nalgebra::{UnitQuaternion, Vector3};
use serde_json::{json, Value};

const CEREALS: [(&str, f64, f64, f64, f64, f64); 10] = [
    // name, calories, protein, fat, fiber, sugars
    ("Apple Jacks", 110.0, 2.0, 0.0, 1.0, 14.0),
    ("Bran Flakes", 90.0, 3.0, 0.0, 5.0, 5.0),
    ("Cheerios", 110.0, 6.0, 2.0, 2.0, 1.0),
    ("Corn Flakes", 100.0, 2.0, 0.0, 1.0, 2.0),
    ("Froot Loops", 110.0, 2.0, 1.0, 1.0, 13.0),
    ("Golden Grahams", 110.0, 1.0, 1.0, 0.0, 9.0),
    ("Raisin Bran", 120.0, 3.0, 1.0, 5.0, 12.0),
    ("Rice Krispies", 110.0, 2.0, 0.0, 0.0, 3.0),
    ("Shredded Wheat", 80.0, 2.0, 0.0, 3.0, 0.0),
    ("Wheaties", 100.0, 3.0, 1.0, 3.0, 3.0),
];

fn col(name: &str, kind: &str) -> Value {
    json!({"name": name, "kind": kind})
}

fn pose(x: f64, y: f64, z: f64) -> Value {
    json!({"pos": [x, y, z], "rot": [0, 0, 0, 1], "scale": 1})
}

fn cereal_table(name: &str, measures: &[&str]) -> Value {
    let mut columns = vec![col("name", "categorical")];
    columns.extend(measures.iter().map(|m| col(m, "quantitative")));
    let rows: Vec<Value> = CEREALS
        .iter()
        .map(|(n, cal, pro, fat, fib, sug)| {
            let mut row = serde_json::Map::new();
            row.insert("name".into(), json!(n));
            for m in measures {
                let v = match *m {
                    "calories" => cal,
                    "protein" => pro,
                    "fat" => fat,
                    "fiber" => fib,
                    "sugars" => sug,
                    _ => unreachable!(),
                };
                row.insert((*m).into(), json!(v));
            }
            Value::Object(row)
        })
        .collect();
    json!({"name": name, "key": "name", "columns": columns, "rows": rows})
}

/// Records events while applying them to a session.
struct Recorder {
    session: Session,
    events: Vec<InteractionEvent>,
    t: f64,
}

impl Recorder {
    fn new(manifest: &mut Manifest) -> Self {
        // Work from exactly what the bundled file will contain.
        *manifest = load_manifest(&save_manifest(manifest)).expect("manifest round-trips");
        Self {
            session: manifest.session(),
            events: Vec::new(),
            t: 0.0,
        }
    }

    fn push(&mut self, e: InteractionEvent) {
        let e: InteractionEvent =
            serde_json::from_str(&to_canonical_line(&e)).expect("event round-trips");
        self.session
            .apply(&e)
            .unwrap_or_else(|err| panic!("event {e:?} rejected: {err}"));
        self.events.push(e);
        self.t += 0.1;
    }

    fn grab(&mut self, hand: Hand, view: &str, part: Part) {
        self.push(InteractionEvent::grab(self.t, hand, view, part));
    }

    fn hand(&self, hand: Hand) -> Pose {
        self.session.grip(hand).expect("hand holds something").hand
    }

    /// Moves a hand by `delta` in `steps` increments, ticking after each.
    fn drag(&mut self, hand: Hand, delta: Vector3<f64>, steps: usize) {
        let start = self.hand(hand);
        for i in 1..=steps {
            let mut p = start;
            p.position += delta * (i as f64 / steps as f64);
            self.push(InteractionEvent::moved(self.t, hand, p));
            self.push(InteractionEvent::tick(self.t));
        }
    }

    fn release(&mut self, hand: Hand) {
        self.push(InteractionEvent::release(self.t, hand));
    }
}

fn juxtaposed() -> (Manifest, Recorder) {
    let mut m: Manifest = serde_json::from_value(json!({
        "tables": [cereal_table("cereals", &["calories", "sugars"])],
        "views": [{
            "id": "scatter", "chart": "scatterplot", "table": "cereals",
            "encodings": {"x": "sugars", "y": "calories"},
            "halfExtents": [0.4, 0.3, 0.01], "pose": pose(0.0, 1.2, -0.6)
        }]
    }))
    .expect("manifest");
    let mut r = Recorder::new(&mut m);
    // Axis length 0.8 m, bin step 0.4 m: a 0.5 m drag makes two columns.
    r.grab(Hand::Right, "scatter", Part::AxisHandleX);
    r.drag(Hand::Right, Vector3::new(0.5, 0.0, 0.0), 5);
    r.release(Hand::Right);
    (m, r)
}

fn integrated() -> (Manifest, Recorder) {
    let mut m: Manifest = serde_json::from_value(json!({
        "tables": [
            cereal_table("sugar", &["sugars"]),
            cereal_table("energy", &["calories"]),
        ],
        "views": [
            {"id": "sugar_bars", "chart": "barchart", "table": "sugar",
             "encodings": {"x": "name", "y": "sugars"},
             "halfExtents": [0.4, 0.25, 0.01], "pose": pose(-0.5, 1.2, -0.6)},
            {"id": "calorie_line", "chart": "linechart", "table": "energy",
             "encodings": {"x": "name", "y": "calories"},
             "halfExtents": [0.4, 0.25, 0.01], "pose": pose(1.0, 1.2, -0.6)}
        ]
    }))
    .expect("manifest");
    let mut r = Recorder::new(&mut m);
    // Bring the line chart under the bars, leaving a 0.1 m gap between the
    // bounding spheres.
    let radius = (0.4f64).hypot(0.25).hypot(0.01);
    let target_x = -0.5;
    let target_y = 1.2 - (2.0 * radius + 0.1);
    r.grab(Hand::Right, "calorie_line", Part::Body);
    r.drag(Hand::Right, Vector3::new(target_x - 1.0, target_y - 1.2, 0.0), 8);
    r.release(Hand::Right);
    (m, r)
}

fn superimposed() -> (Manifest, Recorder) {
    let states = ["CA", "ID", "NV", "OR", "UT", "WA"];
    let boxes = [5.1, 6.3, 4.2, 5.8, 7.4, 6.0];
    // A 3 × 2 grid of state outlines on the map panel.
    let cells = [
        ("WA", 0, 1), ("ID", 1, 1), ("UT", 2, 1),
        ("OR", 0, 0), ("NV", 1, 0), ("CA", 2, 0),
    ];
    let regions: Vec<Value> = cells
        .iter()
        .map(|(k, c, r)| {
            let x0 = -1.0 + 2.0 * *c as f64 / 3.0;
            let x1 = x0 + 2.0 / 3.0;
            let y0 = -1.0 + *r as f64;
            let y1 = y0 + 1.0;
            json!({"key": k, "polygon": [[x0, y0], [x1, y0], [x1, y1], [x0, y1]]})
        })
        .collect();
    let map_rot = UnitQuaternion::from_axis_angle(&Vector3::x_axis(), -std::f64::consts::FRAC_PI_2);
    let q = map_rot.quaternion();
    let mut m: Manifest = serde_json::from_value(json!({
        "tables": [
            {"name": "states", "key": "state",
             "columns": [col("state", "categorical"), col("name", "categorical")],
             "rows": states.iter().zip(["California", "Idaho", "Nevada", "Oregon", "Utah", "Washington"])
                .map(|(s, n)| json!({"state": s, "name": n})).collect::<Vec<_>>()},
            {"name": "consumption", "key": "state",
             "columns": [col("state", "categorical"), col("boxes", "quantitative")],
             "rows": states.iter().zip(boxes)
                .map(|(s, b)| json!({"state": s, "boxes": b})).collect::<Vec<_>>()}
        ],
        "views": [
            {"id": "map", "chart": "map", "table": "states",
             "encodings": {"regions": regions},
             "halfExtents": [0.5, 0.4, 0.01],
             "pose": {"pos": [0.0, 0.8, -0.6], "rot": [q.i, q.j, q.k, q.w], "scale": 1}},
            {"id": "bars", "chart": "barchart", "table": "consumption",
             "encodings": {"x": "state", "y": "boxes"},
             "halfExtents": [0.3, 0.2, 0.01], "pose": pose(1.2, 1.3, -0.6)}
        ]
    }))
    .expect("manifest");
    let mut r = Recorder::new(&mut m);
    // Lower the upright bar chart onto the map until its base dips through
    // the map plane.
    r.grab(Hand::Left, "bars", Part::Body);
    r.drag(Hand::Left, Vector3::new(-1.2, -0.35, 0.0), 8);
    r.release(Hand::Left);
    (m, r)
}

fn overloaded() -> (Manifest, Recorder) {
    let mut m: Manifest = serde_json::from_value(json!({
        "tables": [cereal_table("cereals", &["calories", "sugars", "protein", "fiber"])],
        "views": [{
            "id": "pcp", "chart": "pcp", "table": "cereals",
            "encodings": {"axes": ["calories", "sugars", "protein", "fiber"]},
            "halfExtents": [0.6, 0.3, 0.01], "pose": pose(0.0, 1.3, -0.6)
        }]
    }))
    .expect("manifest");
    let mut r = Recorder::new(&mut m);
    // Default axis gap is 0.4 m; pulling the sugars and protein axes apart
    // by 0.15 m each leaves a 0.7 m gap, past the 0.6 m activation gap.
    r.grab(Hand::Left, "pcp", Part::PcpAxis(1));
    r.grab(Hand::Right, "pcp", Part::PcpAxis(2));
    for _ in 0..5 {
        let mut l = r.hand(Hand::Left);
        l.position.x -= 0.03;
        r.push(InteractionEvent::moved(r.t, Hand::Left, l));
        let mut rt = r.hand(Hand::Right);
        rt.position.x += 0.03;
        r.push(InteractionEvent::moved(r.t, Hand::Right, rt));
        r.push(InteractionEvent::tick(r.t));
    }
    r.release(Hand::Left);
    r.release(Hand::Right);
    // The spread spawned a scatterplot of the pair below the pcp; drop it
    // into the highlighted region.
    let region = r.session.regions_of("pcp").next().expect("region active").clone();
    let pcp = r.session.view("pcp").expect("pcp").clone();
    let c = region.rect.center();
    let target = pcp.pose.transform_point(&Vector3::new(c[0], c[1], 0.0));
    let scatter_id = format!("pcp.sppc{}", region.index);
    let start = r.session.view(&scatter_id).expect("spawned").pose.position;
    r.grab(Hand::Right, &scatter_id, Part::Body);
    r.drag(Hand::Right, target - start, 6);
    r.release(Hand::Right);
    (m, r)
}

fn nested() -> (Manifest, Recorder) {
    let players = [
        ("p1", "Seo", "red"),
        ("p2", "Kim", "red"),
        ("p3", "Lee", "blue"),
        ("p4", "Park", "blue"),
        ("p5", "Choi", "red"),
    ];
    let stats = [
        ("p1", 12.0, 7.0, 9.0, 1.0),
        ("p2", 8.0, 10.0, 6.0, 2.0),
        ("p3", 15.0, 5.0, 11.0, 0.0),
        ("p4", 10.0, 9.0, 7.0, 3.0),
        ("p5", 6.0, 12.0, 5.0, 1.0),
    ];
    let nodes = [
        ("p1", [-0.6, 0.5]),
        ("p2", [0.6, 0.5]),
        ("p3", [0.0, 0.0]),
        ("p4", [-0.6, -0.5]),
        ("p5", [0.6, -0.5]),
    ];
    let mut m: Manifest = serde_json::from_value(json!({
        "tables": [
            {"name": "players", "key": "id",
             "columns": [col("id", "categorical"), col("name", "categorical"), col("team", "categorical")],
             "rows": players.iter().map(|(i, n, t)| json!({"id": i, "name": n, "team": t})).collect::<Vec<_>>()},
            {"name": "stats", "key": "id",
             "columns": [col("id", "categorical"), col("kicks", "quantitative"), col("punches", "quantitative"),
                         col("points", "quantitative"), col("penalties", "quantitative")],
             "rows": stats.iter().map(|(i, k, p, s, f)| json!({"id": i, "kicks": k, "punches": p, "points": s, "penalties": f})).collect::<Vec<_>>()}
        ],
        "views": [
            {"id": "network", "chart": "graph", "table": "players",
             "encodings": {
                 "nodes": nodes.iter().map(|(k, p)| json!({"key": k, "pos": p})).collect::<Vec<_>>(),
                 "edges": [["p1", "p3"], ["p2", "p3"], ["p3", "p4"], ["p3", "p5"], ["p4", "p5"]]
             },
             "halfExtents": [0.5, 0.4, 0.01], "pose": pose(-0.4, 1.3, -0.6)},
            {"id": "stats_bars", "chart": "stackedbar", "table": "stats",
             "encodings": {"x": "id", "stack": ["kicks", "punches", "points", "penalties"]},
             "halfExtents": [0.3, 0.2, 0.01], "pose": pose(0.8, 1.2, -0.4)}
        ]
    }))
    .expect("manifest");
    let mut r = Recorder::new(&mut m);
    // Pull player p3's bar out of the stacked chart and drop it on p3's node.
    let graph = r.session.view("network").expect("graph").clone();
    let node = graph.pose.transform_point(&Vector3::new(0.0, 0.0, 0.0));
    r.grab(Hand::Right, "stats_bars", Part::Element("p3".into()));
    let start = r.hand(Hand::Right).position;
    r.drag(Hand::Right, node - start, 8);
    r.release(Hand::Right);
    (m, r)
}

fn write(dir: &Path, case: &str, m: &Manifest, r: &Recorder) {
    let base: PathBuf = dir.join(format!("demo_{case}"));
    std::fs::write(base.with_extension("manifest.json"), save_manifest(m)).expect("write manifest");
    std::fs::write(base.with_extension("trace.jsonl"), save_trace(&r.events)).expect("write trace");
    println!(
        "{case}: {} events, {} composites",
        r.events.len(),
        r.session.composites().len()
    );
}

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("crates/cli/demos"));
    std::fs::create_dir_all(&dir).expect("demo dir");
    let cases: [(&str, fn() -> (Manifest, Recorder)); 5] = [
        ("juxtaposed", juxtaposed),
        ("integrated", integrated),
        ("superimposed", superimposed),
        ("overloaded", overloaded),
        ("nested", nested),
    ];
    for (case, build) in cases {
        let (m, r) = build();
        write(&dir, case, &m, &r);
    }
}
