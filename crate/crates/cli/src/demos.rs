use std::collections::BTreeSet;

use embcomp_core::compose::Payload;
use embcomp_core::data::{item_correspondences, RelationshipKind};
use embcomp_core::scene::view_rows;
use embcomp_core::{CompositeSpec, CompositeType, Manifest};

/// Bundled demo cases, one per composite type.
pub const CASES: [&str; 5] = ["juxtaposed", "integrated", "superimposed", "overloaded", "nested"];

pub struct Demo {
    pub case: &'static str,
    pub manifest: &'static str,
    pub trace: &'static str,
    pub expected: CompositeType,
}

macro_rules! demo {
    ($case:literal, $ty:expr) => {
        Demo {
            case: $case,
            manifest: include_str!(concat!("../demos/demo_", $case, ".manifest.json")),
            trace: include_str!(concat!("../demos/demo_", $case, ".trace.jsonl")),
            expected: $ty,
        }
    };
}

pub fn demo(case: &str) -> Option<Demo> {
    Some(match case {
        "juxtaposed" => demo!("juxtaposed", CompositeType::Juxtaposed),
        "integrated" => demo!("integrated", CompositeType::Integrated),
        "superimposed" => demo!("superimposed", CompositeType::Superimposed),
        "overloaded" => demo!("overloaded", CompositeType::Overloaded),
        "nested" => demo!("nested", CompositeType::Nested),
        _ => return None,
    })
}

/// Checks a committed composite's structure against the data it was built
/// from. Returns a one-line description on success.
pub fn check_structure(spec: &CompositeSpec, manifest: &Manifest) -> Result<String, String> {
    let data = manifest.dataset();
    let view = |id: &str| {
        spec.constituents
            .iter()
            .find(|v| v.id == id)
            .ok_or_else(|| format!("{id} is not a constituent of {}", spec.id))
    };
    let table = |name: &str| data.table(name).ok_or_else(|| format!("unknown table {name}"));

    match &spec.payload {
        Payload::Links(links) => {
            let mut expected = 0;
            for (i, a) in spec.constituents.iter().enumerate() {
                for b in &spec.constituents[i + 1..] {
                    let rel = data
                        .relationship(&a.table, &b.table)
                        .ok_or("missing relationship")?;
                    if rel.kind == RelationshipKind::None {
                        continue;
                    }
                    let (ta, tb) = (table(&a.table)?, table(&b.table)?);
                    let (ra, rb): (BTreeSet<String>, BTreeSet<String>) = (
                        view_rows(a, ta).into_iter().collect(),
                        view_rows(b, tb).into_iter().collect(),
                    );
                    expected += rel
                        .pairs_between(ta, tb)
                        .map_err(|e| e.to_string())?
                        .into_iter()
                        .filter(|(x, y)| ra.contains(x) && rb.contains(y))
                        .count();
                }
            }
            if links.len() != expected {
                return Err(format!("{} links for {expected} correspondences", links.len()));
            }
            Ok(format!("{} links = {expected} correspondences", links.len()))
        }
        Payload::Anchors(a) => {
            let (host, client) = (view(&a.host)?, view(&a.client)?);
            let (th, tc) = (table(&host.table)?, table(&client.table)?);
            let rel = data.relationship(&th.name, &tc.name).ok_or("missing relationship")?;
            let host_rows: BTreeSet<String> = view_rows(host, th).into_iter().collect();
            let mapped: BTreeSet<String> = rel
                .pairs_between(tc, th)
                .map_err(|e| e.to_string())?
                .into_iter()
                .filter(|(_, h)| host_rows.contains(h))
                .map(|(c, _)| c)
                .filter(|c| view_rows(client, tc).contains(c))
                .collect();
            let items: BTreeSet<&str> = a.entries.iter().map(|e| e.item.as_str()).collect();
            let regions: BTreeSet<&str> = a.entries.iter().map(|e| e.region.as_str()).collect();
            let bijective = items.len() == a.entries.len() && regions.len() == a.entries.len();
            let covers = items == mapped.iter().map(String::as_str).collect();
            if !(bijective && covers) {
                return Err(format!(
                    "{} anchors are not a bijection over {} mapped keys",
                    a.entries.len(),
                    mapped.len()
                ));
            }
            Ok(format!("{} anchors, one per mapped key", a.entries.len()))
        }
        Payload::Overload(o) => {
            let pcp = view(&o.pcp)?;
            let rows = view_rows(pcp, table(&pcp.table)?).len();
            if o.scatter_points.len() != rows {
                return Err(format!("{} points for {rows} rows", o.scatter_points.len()));
            }
            let inside = o
                .scatter_points
                .iter()
                .all(|p| (0.0..=1.0).contains(&p.x) && (0.0..=1.0).contains(&p.y));
            if !inside {
                return Err("scatter coordinates leave [0, 1]".into());
            }
            Ok(format!("{rows} points in [0, 1]², axes {:?}", o.axis_pair))
        }
        Payload::Nests(n) => {
            let (host, client) = (view(&n.host)?, view(&n.client)?);
            let (th, tc) = (table(&host.table)?, table(&client.table)?);
            let rel = data.relationship(&th.name, &tc.name).ok_or("missing relationship")?;
            let host_rows: BTreeSet<String> = view_rows(host, th).into_iter().collect();
            let (a, b) = if rel.table_a == th.name { (th, tc) } else { (tc, th) };
            let corresponded: BTreeSet<String> = item_correspondences(rel, a, b)
                .map_err(|e| e.to_string())?
                .into_iter()
                .flat_map(|c| {
                    if a.name == th.name {
                        vec![c.item]
                    } else {
                        c.targets
                    }
                })
                .filter(|k| host_rows.contains(k))
                .collect();
            let placed: BTreeSet<&str> = n.entries.iter().map(|e| e.element.as_str()).collect();
            if placed.len() != n.entries.len()
                || placed != corresponded.iter().map(String::as_str).collect()
            {
                return Err(format!(
                    "{} placements for {} corresponded elements",
                    n.entries.len(),
                    corresponded.len()
                ));
            }
            Ok(format!("{} placements, one per corresponded element", n.entries.len()))
        }
        Payload::Layout(l) => {
            let Some(src) = &l.source else {
                return Ok(format!("{} panels", l.panels.len()));
            };
            let source = manifest
                .views
                .iter()
                .find(|v| &v.id == src)
                .ok_or_else(|| format!("unknown source view {src}"))?;
            let mut expected = view_rows(source, table(&source.table)?);
            let mut got: Vec<String> = l.panels.iter().flat_map(|p| p.rows.clone()).collect();
            expected.sort();
            got.sort();
            if got != expected {
                return Err(format!(
                    "panels hold {} rows, source has {}",
                    got.len(),
                    expected.len()
                ));
            }
            Ok(format!("{} panels conserve {} rows", l.panels.len(), got.len()))
        }
    }
}
