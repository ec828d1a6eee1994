use crate::data::fixtures::{n, t, table};
use crate::data::ColumnKind::{Categorical as C, Quantitative as Q};
use crate::data::DataSet;
use crate::scene::{ChartKind, Encodings, Node, Pose, Region, ViewSpec};

fn view(id: &str, chart: ChartKind, table: &str, enc: Encodings, half: [f64; 3], pose: Pose) -> ViewSpec {
    ViewSpec {
        id: id.into(),
        chart,
        table: table.into(),
        encodings: enc,
        half_extents: half,
        pose,
        domain: Default::default(),
        items: None,
    }
}

pub fn cereal_data() -> DataSet {
    let sugar = table(
        "sugar",
        "name",
        &[("name", C), ("sugar", Q)],
        &[&[t("corn"), n(3.0)], &[t("oat"), n(1.0)], &[t("bran"), n(5.0)]],
    );
    let calories = table(
        "calories",
        "name",
        &[("name", C), ("calories", Q)],
        &[&[t("corn"), n(100.0)], &[t("oat"), n(120.0)], &[t("bran"), n(90.0)]],
    );
    DataSet::new(vec![sugar, calories], vec![])
}

pub fn bar(id: &str, table: &str, col: &str, x: f64) -> ViewSpec {
    let enc = Encodings {
        y: Some(col.into()),
        ..Default::default()
    };
    view(id, ChartKind::Barchart, table, enc, [0.3, 0.2, 0.01], Pose::at(x, 0.0, 0.0))
}

pub fn line(id: &str, table: &str, col: &str, x: f64) -> ViewSpec {
    let enc = Encodings {
        y: Some(col.into()),
        ..Default::default()
    };
    view(id, ChartKind::Linechart, table, enc, [0.3, 0.2, 0.01], Pose::at(x, 0.0, 0.0))
}

pub fn states_data() -> DataSet {
    let states = table(
        "states",
        "name",
        &[("name", C), ("density", Q)],
        &[&[t("A"), n(10.0)], &[t("B"), n(40.0)], &[t("C"), n(25.0)]],
    );
    DataSet::new(vec![states], vec![])
}

pub fn map(id: &str, keys: &[&str]) -> ViewSpec {
    let regions = keys
        .iter()
        .enumerate()
        .map(|(i, k)| {
            let x0 = -0.9 + 0.6 * i as f64;
            Region {
                key: (*k).into(),
                polygon: vec![[x0, -0.5], [x0 + 0.5, -0.5], [x0 + 0.5, 0.5], [x0, 0.5]],
            }
        })
        .collect();
    let enc = Encodings {
        regions,
        ..Default::default()
    };
    view(id, ChartKind::Map, "states", enc, [0.5, 0.4, 0.01], Pose::identity())
}

pub fn scatter_data() -> DataSet {
    let rows: Vec<Vec<crate::data::Value>> = [
        ("a", 1.0, 0.0),
        ("b", 2.0, 2.0),
        ("c", 3.0, 3.0),
        ("d", 4.0, 5.0),
        ("e", 2.0, 6.0),
        ("f", 1.0, 9.0),
    ]
    .iter()
    .map(|(k, p, s)| vec![t(k), n(*p), n(*s)])
    .collect();
    let refs: Vec<&[crate::data::Value]> = rows.iter().map(Vec::as_slice).collect();
    let cereals = table("cereals", "name", &[("name", C), ("protein", Q), ("sugar", Q)], &refs);
    DataSet::new(vec![cereals], vec![])
}

pub fn scatter_view(id: &str, table: &str, x: &str, y: &str) -> ViewSpec {
    let enc = Encodings {
        x: Some(x.into()),
        y: Some(y.into()),
        ..Default::default()
    };
    view(id, ChartKind::Scatterplot, table, enc, [0.3, 0.3, 0.01], Pose::identity())
}

pub fn pcp_data() -> DataSet {
    let cereals = table(
        "cereals",
        "name",
        &[("name", C), ("sugar", Q), ("protein", Q), ("calories", Q)],
        &[
            &[t("a"), n(1.0), n(2.0), n(100.0)],
            &[t("b"), n(9.0), n(1.0), n(120.0)],
            &[t("c"), n(4.0), n(4.0), n(70.0)],
            &[t("d"), n(6.0), n(3.0), n(110.0)],
        ],
    );
    DataSet::new(vec![cereals], vec![])
}

pub fn pcp_view(id: &str) -> ViewSpec {
    let enc = Encodings {
        axes: vec!["sugar".into(), "protein".into(), "calories".into()],
        ..Default::default()
    };
    view(id, ChartKind::Pcp, "cereals", enc, [0.6, 0.4, 0.01], Pose::identity())
}

pub fn players_data() -> DataSet {
    let players = table(
        "players",
        "id",
        &[("id", C), ("team", C)],
        &[
            &[t("p1"), t("red")],
            &[t("p2"), t("red")],
            &[t("p3"), t("blue")],
            &[t("p4"), t("blue")],
            &[t("p5"), t("red")],
        ],
    );
    let stats = table(
        "stats",
        "id",
        &[
            ("id", C),
            ("strength", Q),
            ("agility", Q),
            ("endurance", Q),
            ("intelligence", Q),
        ],
        &[
            &[t("p1"), n(5.0), n(3.0), n(4.0), n(2.0)],
            &[t("p2"), n(2.0), n(4.0), n(3.0), n(5.0)],
            &[t("p3"), n(4.0), n(4.0), n(5.0), n(3.0)],
            &[t("p4"), n(3.0), n(5.0), n(2.0), n(4.0)],
            &[t("p5"), n(1.0), n(2.0), n(4.0), n(3.0)],
        ],
    );
    DataSet::new(vec![players, stats], vec![])
}

pub fn graph(id: &str, keys: &[&str]) -> ViewSpec {
    let nodes = keys
        .iter()
        .enumerate()
        .map(|(i, k)| Node {
            key: (*k).into(),
            pos: [-0.8 + 0.4 * i as f64, 0.0],
        })
        .collect();
    let enc = Encodings {
        nodes,
        ..Default::default()
    };
    view(id, ChartKind::Graph, "players", enc, [0.5, 0.4, 0.01], Pose::identity())
}

pub fn stacked(id: &str) -> ViewSpec {
    let enc = Encodings {
        stack: ["strength", "agility", "endurance", "intelligence"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        ..Default::default()
    };
    view(id, ChartKind::Stackedbar, "stats", enc, [0.3, 0.2, 0.01], Pose::at(1.5, 0.0, 0.0))
}
