use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::RelationshipKind;

/// The five spatial arrangements a composite can take.
///
/// Declaration order doubles as the display order (J, I, S, O, N).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CompositeType {
    Juxtaposed,
    Integrated,
    Superimposed,
    Overloaded,
    Nested,
}

impl CompositeType {
    pub const ALL: [CompositeType; 5] = [
        CompositeType::Juxtaposed,
        CompositeType::Integrated,
        CompositeType::Superimposed,
        CompositeType::Overloaded,
        CompositeType::Nested,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CompositeType::Juxtaposed => "juxtaposed",
            CompositeType::Integrated => "integrated",
            CompositeType::Superimposed => "superimposed",
            CompositeType::Overloaded => "overloaded",
            CompositeType::Nested => "nested",
        }
    }

    /// Recognition precedence; lower wins.
    pub fn precedence(self) -> usize {
        match self {
            CompositeType::Nested => 0,
            CompositeType::Overloaded => 1,
            CompositeType::Superimposed => 2,
            CompositeType::Integrated => 3,
            CompositeType::Juxtaposed => 4,
        }
    }
}

impl fmt::Display for CompositeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CompositeType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CompositeType::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown composite type \"{s}\""))
    }
}

/// Admissible composite types per relationship kind.
pub struct ConstraintMatrix;

impl ConstraintMatrix {
    const CELLS: [[bool; 5]; 4] = [
        // J      I      S      O      N
        [true, false, false, false, false], // none
        [true, true, true, true, true],     // item-item
        [true, true, true, false, true],    // item-group
        [true, true, true, true, false],    // item-dimension
    ];

    pub fn cell(kind: RelationshipKind, ty: CompositeType) -> bool {
        let row = RelationshipKind::ALL
            .iter()
            .position(|k| *k == kind)
            .expect("kind listed in ALL");
        let col = CompositeType::ALL
            .iter()
            .position(|t| *t == ty)
            .expect("type listed in ALL");
        Self::CELLS[row][col]
    }
}

pub fn allowed_composites(kind: RelationshipKind) -> BTreeSet<CompositeType> {
    CompositeType::ALL
        .into_iter()
        .filter(|t| ConstraintMatrix::cell(kind, *t))
        .collect()
}

pub fn is_admissible(kind: RelationshipKind, ty: CompositeType) -> bool {
    ConstraintMatrix::cell(kind, ty)
}
