mod common;
mod oracles;

use embcomp_core::compose::{
    decompose, CompositeSpec, DecomposeTrigger, LayoutMode, Payload,
    compose_integrated, compose_juxtaposed, compose_nested, compose_overloaded,
    compose_superimposed, ComposeError, Rect, SpreadRegion,
};
use embcomp_core::data::{infer_relationship, validate_table, DataSet, Relationship, RelationshipKind};
use embcomp_core::scene::{collide, induced_relations, Pose, PositionSnapshot, ViewSpec};
use embcomp_core::io::{load_composite, save_composite};
use embcomp_core::CompositeType;
use nalgebra::{UnitQuaternion, Vector3};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn inference_matches_row_matching_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = oracles::random_table_pair(&mut rng);
        prop_assert!(validate_table(&a).is_empty() && validate_table(&b).is_empty());
        let got = infer_relationship(&a, &b);
        let (kind, sides, keys) = oracles::classify(&a, &b);
        prop_assert_eq!(got.kind, kind);
        prop_assert_eq!((got.table_a, got.table_b), sides);
        prop_assert_eq!(got.a_key.zip(got.b_key), keys);
    }

    #[test]
    fn sat_agrees_with_vertex_enumeration(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (oracles::random_obb(&mut rng), oracles::random_obb(&mut rng));
        if let Some(expected) = oracles::boxes_overlap(&a, &b, 1e-6) {
            prop_assert_eq!(collide(&a, &b), expected);
            prop_assert_eq!(collide(&b, &a), expected);
        }
    }

    #[test]
    fn induced_relations_are_rigid_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = common::graph_and_stats();
        let data = m.dataset();
        let mut views = m.views.clone();
        views.push(ViewSpec { id: "stack2".into(), ..m.views[1].clone() });
        for v in views.iter_mut() {
            v.pose = Pose {
                position: Vector3::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.0..2.0), rng.gen_range(-1.0..1.0)),
                rotation: oracles::random_rotation(&mut rng),
                scale: rng.gen_range(0.3..2.0),
            };
        }
        // Put one client into a graph node now and then so embedding is exercised.
        if rng.gen_bool(0.5) {
            let node = views[0].pose.transform_point(&Vector3::new(-0.4, 0.0, 0.0));
            views[1].pose.position = node;
            views[1].pose.scale = 0.2;
        }
        let before = PositionSnapshot::of(0.0, &views);
        let mut later = views.clone();
        for v in later.iter_mut() {
            v.pose.position += Vector3::new(rng.gen_range(-0.1..0.1), 0.0, rng.gen_range(-0.1..0.1));
        }
        let base = induced_relations(&later, &data, Some(&before), 0.5);

        let yaw_only = rng.gen_bool(0.5);
        let rot = if yaw_only {
            UnitQuaternion::from_axis_angle(&Vector3::y_axis(), rng.gen_range(-3.0..3.0))
        } else {
            oracles::random_rotation(&mut rng)
        };
        let shift = Vector3::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let moved = |vs: &[ViewSpec]| -> Vec<ViewSpec> {
            vs.iter().map(|v| {
                let mut v = v.clone();
                v.pose.position = rot * v.pose.position + shift;
                v.pose.rotation = rot * v.pose.rotation;
                v
            }).collect()
        };
        let before_t = PositionSnapshot::of(0.0, &moved(&views));
        let after = induced_relations(&moved(&later), &data, Some(&before_t), 0.5);

        prop_assert_eq!(base.pairs.len(), after.pairs.len());
        for (p, q) in base.pairs.iter().zip(&after.pairs) {
            prop_assert_eq!((&p.a, &p.b), (&q.a, &q.b));
            prop_assert!((p.gap - q.gap).abs() < 1e-6);
            prop_assert!((p.orientation_angle - q.orientation_angle).abs() < 1e-6);
            prop_assert!((p.scale_ratio - q.scale_ratio).abs() < 1e-6);
            prop_assert_eq!(p.colliding, q.colliding);
            prop_assert_eq!(&p.embedded_in, &q.embedded_in);
            if yaw_only {
                prop_assert!((p.vertical_offset - q.vertical_offset).abs() < 1e-6);
            }
        }
        for (id, v) in &base.velocity {
            let w = after.velocity[id];
            let expected = rot * Vector3::from(*v);
            prop_assert!((Vector3::from(w) - expected).norm() < 1e-6);
        }
    }
}

fn jitter(rng: &mut ChaCha8Rng, v: &mut ViewSpec) {
    v.pose.position += Vector3::new(
        rng.gen_range(-0.5..0.5),
        rng.gen_range(-0.5..0.5),
        rng.gen_range(-0.5..0.5),
    );
    v.pose.rotation = oracles::random_rotation(rng) * v.pose.rotation;
    v.pose.scale *= rng.gen_range(0.5..1.5);
}

/// One composite of every type built from jittered fixture views.
fn one_of_each(rng: &mut ChaCha8Rng) -> Vec<CompositeSpec> {
    let mut out = Vec::new();

    let m = common::unrelated();
    let data = m.dataset();
    let (mut l, mut r) = (m.views[0].clone(), m.views[1].clone());
    jitter(rng, &mut l);
    jitter(rng, &mut r);
    let rel = data.relationship("left", "right").expect("pair");
    out.push(compose_juxtaposed("jx", &l, &r, &rel, &data).expect("juxtaposed"));

    let m = common::three_bars();
    let data = m.dataset();
    let (mut a, mut b) = (m.views[0].clone(), m.views[1].clone());
    jitter(rng, &mut a);
    jitter(rng, &mut b);
    let rel = data.relationship("t1", "t2").expect("pair");
    out.push(compose_integrated("in", &a, &b, &rel, &data).expect("integrated"));

    let m = common::map_and_bars();
    let data = m.dataset();
    let (mut host, mut client) = (m.views[0].clone(), m.views[1].clone());
    jitter(rng, &mut host);
    jitter(rng, &mut client);
    let rel = data.relationship("places", "counts").expect("pair");
    out.push(compose_superimposed("su", &host, &client, &rel, &data).expect("superimposed"));

    let pm = common::pcp_only();
    let data = DataSet::new(pm.tables.clone(), vec![]);
    let (mut pcp, mut sc) = (pm.views[0].clone(), common::scatter_only().views[0].clone());
    jitter(rng, &mut pcp);
    jitter(rng, &mut sc);
    let index = rng.gen_range(0..2);
    let region = SpreadRegion {
        pcp: "pcp".into(),
        index,
        rect: Rect { min: [-0.6 + 0.6 * index as f64, -0.3], max: [0.6 * index as f64, 0.3] },
    };
    let rel = Relationship::declared(RelationshipKind::ItemItem, "rows", "rows", Some("k"), Some("k"));
    out.push(compose_overloaded("ov", &pcp, &sc, Some(&region), &rel, &data).expect("overloaded"));

    let m = common::graph_and_stats();
    let data = m.dataset();
    let (mut host, mut client) = (m.views[0].clone(), m.views[1].clone());
    jitter(rng, &mut host);
    jitter(rng, &mut client);
    let rel = data.relationship("people", "stats").expect("pair");
    let seed = common::KEYS[rng.gen_range(0..5)];
    out.push(compose_nested("ne", &host, &client, &rel, &data, seed).expect("nested"));
    out
}

fn trigger_for(c: &CompositeSpec) -> DecomposeTrigger {
    match (c.ty, &c.payload) {
        (CompositeType::Superimposed, _) => DecomposeTrigger::Lifted,
        (CompositeType::Overloaded, _) => DecomposeTrigger::AxesClosed,
        (CompositeType::Nested, _) => DecomposeTrigger::DraggedOut,
        (CompositeType::Juxtaposed, Payload::Layout(l)) if l.mode != LayoutMode::Arrangement => {
            DecomposeTrigger::PartitionCollapsed
        }
        _ => DecomposeTrigger::Separated,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composites_round_trip_canonically(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for spec in one_of_each(&mut rng) {
            let text = save_composite(&spec);
            let back = load_composite(&text).expect("reloads");
            prop_assert_eq!(&back.id, &spec.id);
            prop_assert_eq!(back.ty, spec.ty);
            prop_assert_eq!(back.payload.key(), spec.payload.key());
            prop_assert_eq!(save_composite(&back), text);
        }
    }

    #[test]
    fn decompose_restores_constituents(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for spec in one_of_each(&mut rng) {
            let views = decompose(&spec, trigger_for(&spec), &[]).expect("decomposes");
            prop_assert_eq!(views.len(), spec.constituents.len());
            for (v, c) in views.iter().zip(&spec.constituents) {
                prop_assert_eq!(&v.id, &c.id);
                prop_assert_eq!(&v.table, &c.table);
                prop_assert_eq!(&v.encodings, &c.encodings);
                prop_assert_eq!(v.chart, c.chart);
            }
        }
    }
}

/// Every operator refuses exactly the pairs the matrix rules out.
#[test]
fn operators_respect_the_matrix_for_every_kind() {
    let m = common::graph_and_stats();
    let host = m.views[0].clone();
    let client = m.views[1].clone();
    let tables = m.tables.clone();
    let pm = common::pcp_only();
    let pcp = pm.views[0].clone();
    let scatter = common::scatter_only().views[0].clone();
    let region = SpreadRegion {
        pcp: "pcp".into(),
        index: 0,
        rect: Rect { min: [-0.6, -0.3], max: [0.0, 0.3] },
    };
    for kind in RelationshipKind::ALL {
        let rel = Relationship::declared(kind, "people", "stats", Some("k"), Some("k"));
        let data = DataSet::new(tables.clone(), vec![rel.clone()]);
        for ty in CompositeType::ALL {
            let result = match ty {
                CompositeType::Juxtaposed => compose_juxtaposed("c", &host, &client, &rel, &data),
                CompositeType::Integrated => compose_integrated("c", &host, &client, &rel, &data),
                CompositeType::Superimposed => compose_superimposed("c", &host, &client, &rel, &data),
                CompositeType::Overloaded => {
                    let rel = Relationship::declared(kind, "rows", "rows", Some("k"), Some("k"));
                    let data = DataSet::new(pm.tables.clone(), vec![]);
                    compose_overloaded("c", &pcp, &scatter, Some(&region), &rel, &data)
                }
                CompositeType::Nested => compose_nested("c", &host, &client, &rel, &data, "a"),
            };
            let refused = matches!(result, Err(ComposeError::NotAdmissible { .. }));
            assert_eq!(refused, !oracles::matrix_cell(kind, ty), "{kind:?} {ty:?}: {result:?}");
            if let Ok(spec) = result {
                assert_eq!(spec.ty, ty);
            }
        }
    }
}

#[test]
fn matrix_matches_cell_table() {
    for kind in RelationshipKind::ALL {
        for ty in CompositeType::ALL {
            assert_eq!(
                embcomp_core::data::is_admissible(kind, ty),
                oracles::matrix_cell(kind, ty),
                "{kind:?} {ty:?}"
            );
        }
    }
}
