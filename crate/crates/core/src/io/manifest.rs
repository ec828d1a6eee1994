use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::data::{validate_table, DataSet, DataTable, Relationship, RelationshipKind};
use crate::intent::{Session, Thresholds};
use crate::scene::{chart_layout, ViewSpec};

use super::{to_canonical_string, LoadError};

/// A relationship stated in a manifest rather than inferred.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct DeclaredRelationship {
    pub a: String,
    pub b: String,
    pub kind: RelationshipKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_key: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_key: Option<String>,
}

impl DeclaredRelationship {
    pub fn to_relationship(&self) -> Relationship {
        Relationship::declared(
            self.kind,
            &self.a,
            &self.b,
            self.a_key.as_deref(),
            self.b_key.as_deref(),
        )
    }
}

/// Initial scene: tables, optional declared relationships, views and
/// threshold overrides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub tables: Vec<DataTable>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relationships: Vec<DeclaredRelationship>,
    pub views: Vec<ViewSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<Thresholds>,
}

impl Manifest {
    pub fn dataset(&self) -> DataSet {
        DataSet::new(
            self.tables.clone(),
            self.relationships
                .iter()
                .map(DeclaredRelationship::to_relationship)
                .collect(),
        )
    }

    pub fn session(&self) -> Session {
        self.session_with(self.thresholds.unwrap_or_default())
    }

    pub fn session_with(&self, thresholds: Thresholds) -> Session {
        Session::new(self.dataset(), self.views.clone(), thresholds)
    }

    /// First problem found, walking the manifest in document order.
    pub fn validate(&self) -> Result<(), LoadError> {
        let mut names = BTreeSet::new();
        for (i, t) in self.tables.iter().enumerate() {
            if !names.insert(t.name.as_str()) {
                return Err(LoadError::invalid(
                    format!("tables[{i}].name"),
                    format!("duplicate table name \"{}\"", t.name),
                ));
            }
            if let Some(v) = validate_table(t).first() {
                return Err(LoadError::invalid(format!("tables[{i}]"), v.to_string()));
            }
        }

        let table = |name: &str| self.tables.iter().find(|t| t.name == name);
        for (i, r) in self.relationships.iter().enumerate() {
            for (side, name, key, key_field) in [
                ("a", &r.a, &r.a_key, "aKey"),
                ("b", &r.b, &r.b_key, "bKey"),
            ] {
                let Some(t) = table(name) else {
                    return Err(LoadError::invalid(
                        format!("relationships[{i}].{side}"),
                        format!("unknown table \"{name}\""),
                    ));
                };
                if let Some(k) = key {
                    if !t.has_column(k) {
                        return Err(LoadError::invalid(
                            format!("relationships[{i}].{key_field}"),
                            format!("table \"{name}\" has no column \"{k}\""),
                        ));
                    }
                }
            }
            let dup = self.relationships[..i].iter().any(|o| {
                (o.a == r.a && o.b == r.b) || (o.a == r.b && o.b == r.a)
            });
            if dup {
                return Err(LoadError::invalid(
                    format!("relationships[{i}]"),
                    format!("tables \"{}\" and \"{}\" are already related", r.a, r.b),
                ));
            }
        }

        let mut ids = BTreeSet::new();
        for (i, v) in self.views.iter().enumerate() {
            if !ids.insert(v.id.as_str()) {
                return Err(LoadError::invalid(
                    format!("views[{i}].id"),
                    format!("duplicate view id \"{}\"", v.id),
                ));
            }
            let Some(t) = table(&v.table) else {
                return Err(LoadError::invalid(
                    format!("views[{i}].table"),
                    format!("unknown table \"{}\"", v.table),
                ));
            };
            for c in v.encodings.columns() {
                if !t.has_column(c) {
                    return Err(LoadError::invalid(
                        format!("views[{i}].encodings"),
                        format!("table \"{}\" has no column \"{c}\"", t.name),
                    ));
                }
            }
            for item in v.items.iter().flatten() {
                if t.row(item).is_none() {
                    return Err(LoadError::invalid(
                        format!("views[{i}].items"),
                        format!("table \"{}\" has no row \"{item}\"", t.name),
                    ));
                }
            }
            if v.half_extents.iter().any(|h| !(*h > 0.0 && h.is_finite())) {
                return Err(LoadError::invalid(
                    format!("views[{i}].halfExtents"),
                    "half extents must be positive",
                ));
            }
            if let Err(e) = chart_layout(v, t) {
                return Err(LoadError::invalid(format!("views[{i}]"), e.to_string()));
            }
        }

        if let Some(th) = &self.thresholds {
            if let Some(msg) = th.validate().into_iter().next() {
                return Err(LoadError::invalid("thresholds", msg));
            }
        }
        Ok(())
    }
}

/// Parses and validates a manifest.
pub fn load_manifest(text: &str) -> Result<Manifest, LoadError> {
    let m: Manifest = serde_json::from_str(text).map_err(|e| LoadError::from_json(&e, 0))?;
    m.validate()?;
    Ok(m)
}

pub fn save_manifest(m: &Manifest) -> String {
    to_canonical_string(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
  "tables": [
    {"name": "sugar", "key": "name",
     "columns": [{"name": "name", "kind": "categorical"}, {"name": "sugar", "kind": "quantitative"}],
     "rows": [{"name": "corn", "sugar": 3}, {"name": "oat", "sugar": 1}]},
    {"name": "calories", "key": "name",
     "columns": [{"name": "name", "kind": "categorical"}, {"name": "calories", "kind": "quantitative"}],
     "rows": [{"name": "corn", "calories": 100}, {"name": "oat", "calories": 120}]}
  ],
  "views": [
    {"id": "a", "chart": "barchart", "table": "sugar", "encodings": {"x": "name", "y": "sugar"},
     "halfExtents": [0.3, 0.2, 0.01], "pose": {"pos": [0, 1, 0], "rot": [0, 0, 0, 1], "scale": 1}},
    {"id": "b", "chart": "linechart", "table": "calories", "encodings": {"x": "name", "y": "calories"},
     "halfExtents": [0.3, 0.2, 0.01], "pose": {"pos": [1, 1, 0], "rot": [0, 0, 0, 1], "scale": 1}}
  ]
}"#;

    #[test]
    fn loads_and_infers() {
        let m = load_manifest(SMALL).unwrap();
        assert_eq!((m.tables.len(), m.views.len()), (2, 2));
        let data = m.dataset();
        let rel = data.relationship("sugar", "calories").unwrap();
        assert_eq!(rel.kind, RelationshipKind::ItemItem);
    }

    #[test]
    fn dangling_table_is_a_validation_error() {
        let text = SMALL.replacen(r#""table": "sugar""#, r#""table": "ghost""#, 1);
        match load_manifest(&text) {
            Err(LoadError::Validation { path, .. }) => assert_eq!(path, "views[0].table"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_and_unknown_fields_are_parse_errors() {
        assert!(matches!(load_manifest(""), Err(LoadError::Parse { .. })));
        let extra = SMALL.replacen(r#""tables""#, r#""colour": 1, "tables""#, 1);
        match load_manifest(&extra) {
            Err(LoadError::Parse { line, message, .. }) => {
                assert_eq!(line, 2);
                assert!(message.contains("colour"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn declared_relationship_checks_columns() {
        let mut m = load_manifest(SMALL).unwrap();
        m.relationships.push(DeclaredRelationship {
            a: "sugar".into(),
            b: "calories".into(),
            kind: RelationshipKind::ItemItem,
            a_key: Some("nope".into()),
            b_key: None,
        });
        match m.validate() {
            Err(LoadError::Validation { path, .. }) => assert_eq!(path, "relationships[0].aKey"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn canonical_round_trip() {
        let m = load_manifest(SMALL).unwrap();
        let text = save_manifest(&m);
        let again = load_manifest(&text).unwrap();
        assert_eq!(again, m);
        assert_eq!(save_manifest(&again), text);
    }
}
