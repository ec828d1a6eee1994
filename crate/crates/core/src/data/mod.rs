//! Tabular data behind the views, and the relationships between tables.

mod matrix;
mod relationship;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use matrix::{allowed_composites, is_admissible, CompositeType, ConstraintMatrix};
pub use relationship::{
    infer_relationship, item_correspondences, Correspondence, CorrespondenceError, RelationSource,
    Relationship, RelationshipKind,
};

/// A cell value. Only text and finite numbers are representable.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Number(f64),
    Text(String),
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Number(n) => Some(*n),
            Value::Text(_) => None,
        }
    }

    /// String form used as an item identifier.
    pub fn to_key(&self) -> String {
        match self {
            Value::Text(s) => s.clone(),
            Value::Number(n) => format!("{n}"),
        }
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Value {}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Number(a), Value::Number(b)) => a.total_cmp(b),
            (Value::Number(_), Value::Text(_)) => Ordering::Less,
            (Value::Text(_), Value::Number(_)) => Ordering::Greater,
            (Value::Text(a), Value::Text(b)) => a.cmp(b),
        }
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Number(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_owned())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColumnKind {
    Categorical,
    Quantitative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Column {
    pub name: String,
    pub kind: ColumnKind,
}

impl Column {
    pub fn new(name: impl Into<String>, kind: ColumnKind) -> Self {
        Self {
            name: name.into(),
            kind,
        }
    }
}

pub type Row = BTreeMap<String, Value>;

/// A named table with a unique key column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataTable {
    pub name: String,
    pub key: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Row>,
}

impl DataTable {
    pub fn column(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|c| c.name == name)
    }

    pub fn has_column(&self, name: &str) -> bool {
        self.column(name).is_some()
    }

    pub fn row_key(&self, row: &Row) -> Option<String> {
        row.get(&self.key).map(Value::to_key)
    }

    pub fn row(&self, key: &str) -> Option<&Row> {
        self.rows
            .iter()
            .find(|r| self.row_key(r).as_deref() == Some(key))
    }

    /// Row keys in sorted order.
    pub fn keys(&self) -> Vec<String> {
        let mut keys: Vec<String> = self.rows.iter().filter_map(|r| self.row_key(r)).collect();
        keys.sort();
        keys
    }

    pub fn number(&self, key: &str, column: &str) -> Option<f64> {
        self.row(key)?.get(column)?.as_f64()
    }

    /// Quantitative columns other than the key.
    pub fn measure_columns(&self) -> impl Iterator<Item = &Column> {
        self.columns
            .iter()
            .filter(|c| c.kind == ColumnKind::Quantitative && c.name != self.key)
    }

    /// Minimum and maximum of a numeric column over all rows.
    pub fn extent(&self, column: &str) -> Option<(f64, f64)> {
        self.rows
            .iter()
            .filter_map(|r| r.get(column).and_then(Value::as_f64))
            .fold(None, |acc, v| match acc {
                None => Some((v, v)),
                Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableViolation {
    DuplicateColumn { column: String },
    MissingKeyColumn { key: String },
    DuplicateKey { key: String },
    MissingCell { row: usize, column: String },
    UnknownCell { row: usize, column: String },
    KindMismatch { row: usize, column: String },
    NonFinite { row: usize, column: String },
}

impl fmt::Display for TableViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableViolation::DuplicateColumn { column } => {
                write!(f, "duplicate column \"{column}\"")
            }
            TableViolation::MissingKeyColumn { key } => {
                write!(f, "key column \"{key}\" is not declared")
            }
            TableViolation::DuplicateKey { key } => write!(f, "duplicate key \"{key}\""),
            TableViolation::MissingCell { row, column } => {
                write!(f, "missing cell \"{column}\" in row {row}")
            }
            TableViolation::UnknownCell { row, column } => {
                write!(f, "undeclared column \"{column}\" in row {row}")
            }
            TableViolation::KindMismatch { row, column } => {
                write!(f, "non-numeric value in quantitative column \"{column}\" (row {row})")
            }
            TableViolation::NonFinite { row, column } => {
                write!(f, "non-finite number in column \"{column}\" (row {row})")
            }
        }
    }
}

/// Collects every invariant violation of `table`. An empty list means the
/// table is well formed.
pub fn validate_table(table: &DataTable) -> Vec<TableViolation> {
    let mut out = Vec::new();

    let mut seen = BTreeSet::new();
    for c in &table.columns {
        if !seen.insert(c.name.as_str()) {
            out.push(TableViolation::DuplicateColumn {
                column: c.name.clone(),
            });
        }
    }
    if !table.has_column(&table.key) {
        out.push(TableViolation::MissingKeyColumn {
            key: table.key.clone(),
        });
    }

    let mut keys = BTreeSet::new();
    for (i, row) in table.rows.iter().enumerate() {
        for c in &table.columns {
            match row.get(&c.name) {
                None => out.push(TableViolation::MissingCell {
                    row: i,
                    column: c.name.clone(),
                }),
                Some(Value::Number(n)) if !n.is_finite() => {
                    out.push(TableViolation::NonFinite {
                        row: i,
                        column: c.name.clone(),
                    })
                }
                Some(Value::Text(_)) if c.kind == ColumnKind::Quantitative => {
                    out.push(TableViolation::KindMismatch {
                        row: i,
                        column: c.name.clone(),
                    })
                }
                Some(_) => {}
            }
        }
        for name in row.keys() {
            if !table.has_column(name) {
                out.push(TableViolation::UnknownCell {
                    row: i,
                    column: name.clone(),
                });
            }
        }
        if let Some(v) = row.get(&table.key) {
            if !keys.insert(v.clone()) {
                out.push(TableViolation::DuplicateKey { key: v.to_key() });
            }
        }
    }
    out
}

/// All tables of a scene plus the resolved relationship for every table pair.
///
/// Declared relationships take precedence over inferred ones. A table paired
/// with itself is always item-item on its key.
#[derive(Debug, Clone, PartialEq)]
pub struct DataSet {
    tables: BTreeMap<String, DataTable>,
    relationships: BTreeMap<(String, String), Relationship>,
}

impl DataSet {
    pub fn new(tables: Vec<DataTable>, declared: Vec<Relationship>) -> Self {
        let tables: BTreeMap<String, DataTable> =
            tables.into_iter().map(|t| (t.name.clone(), t)).collect();
        let mut relationships = BTreeMap::new();
        for a in tables.values() {
            for b in tables.values() {
                if a.name > b.name {
                    continue;
                }
                let rel = declared
                    .iter()
                    .find(|r| {
                        (r.table_a == a.name && r.table_b == b.name)
                            || (r.table_a == b.name && r.table_b == a.name)
                    })
                    .cloned()
                    .unwrap_or_else(|| {
                        if a.name == b.name {
                            Relationship::same_table(a)
                        } else {
                            infer_relationship(a, b)
                        }
                    });
                relationships.insert((a.name.clone(), b.name.clone()), rel);
            }
        }
        Self {
            tables,
            relationships,
        }
    }

    pub fn table(&self, name: &str) -> Option<&DataTable> {
        self.tables.get(name)
    }

    pub fn tables(&self) -> impl Iterator<Item = &DataTable> {
        self.tables.values()
    }

    /// The relationship between two tables, in either argument order.
    pub fn relationship(&self, a: &str, b: &str) -> Option<&Relationship> {
        let key = if a <= b {
            (a.to_owned(), b.to_owned())
        } else {
            (b.to_owned(), a.to_owned())
        };
        self.relationships.get(&key)
    }

    /// Relationships between distinct tables.
    pub fn pairs(&self) -> impl Iterator<Item = &Relationship> {
        self.relationships
            .iter()
            .filter(|((a, b), _)| a != b)
            .map(|(_, r)| r)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn table(name: &str, key: &str, cols: &[(&str, ColumnKind)], rows: &[&[Value]]) -> DataTable {
        DataTable {
            name: name.into(),
            key: key.into(),
            columns: cols.iter().map(|(n, k)| Column::new(*n, *k)).collect(),
            rows: rows
                .iter()
                .map(|vals| {
                    cols.iter()
                        .zip(vals.iter())
                        .map(|((n, _), v)| (n.to_string(), v.clone()))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn t(s: &str) -> Value {
        Value::Text(s.into())
    }

    pub fn n(x: f64) -> Value {
        Value::Number(x)
    }
}
