//! Documents on disk: the JSON interchange format, the line-oriented DSL
//! that lowers to it, and DOT export.

mod dot;
mod dsl;
mod json;

use crate::algebra::{GroupAction, PermGroup};
use crate::category::{CatValuedAction, FinCat, SetValuedAction};
use crate::error::{Error, Result};
use crate::geometry::{GroupoidGeometry, KleinPair};
use crate::hierarchy::HierarchySpec;

pub use dot::{emit_dot, emit_square_dot};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dsl,
}

impl Format {
    /// JSON if the first non-blank character opens an object.
    pub fn sniff(input: &str) -> Format {
        if input.trim_start().starts_with('{') {
            Format::Json
        } else {
            Format::Dsl
        }
    }
}

/// A validated model of one of the supported kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Category(FinCat),
    Group(PermGroup),
    Action(GroupAction),
    SetValuedAction(SetValuedAction),
    CatValuedAction(CatValuedAction),
    Hierarchy(HierarchySpec),
    Klein(KleinPair),
    GroupoidGeometry(GroupoidGeometry),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Category(_) => "category",
            Document::Group(_) => "group",
            Document::Action(_) => "action",
            Document::SetValuedAction(_) => "set_valued_action",
            Document::CatValuedAction(_) => "cat_valued_action",
            Document::Hierarchy(_) => "hierarchy",
            Document::Klein(_) => "klein",
            Document::GroupoidGeometry(_) => "groupoid_geometry",
        }
    }
}

pub fn parse(input: &str, format: Format) -> Result<Document> {
    let value = match format {
        Format::Json => serde_json::from_str(input).map_err(|e| Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?,
        Format::Dsl => dsl::lower(input)?,
    };
    json::parse_value(value)
}

/// The canonical JSON value of a document.
pub fn to_value(doc: &Document) -> serde_json::Value {
    json::raise(doc)
}

/// Pretty JSON with keys in declaration order, newline-terminated.
pub fn to_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(&to_value(doc)).expect("values serialize");
    s.push('\n');
    s
}
