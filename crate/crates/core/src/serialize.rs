//! Versioned JSON form of a triangulation.

use serde::{Deserialize, Serialize};

use crate::error::{invariant, GexError, Result};
use crate::triangulation::{edge_classes, EdgeClass, Tetrahedron, Triangulation, VertexClass};

pub const TRIANGULATION_SCHEMA: &str = "gex.triangulation";
pub const TRIANGULATION_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangulationDocument {
    pub schema: String,
    pub version: u32,
    pub g: usize,
    /// Slot vertices and, per face, the partner tetrahedron and slot permutation.
    pub tets: Vec<Tetrahedron>,
    pub orientation: Vec<i8>,
    pub edge_classes: Vec<EdgeClass>,
    pub vertex_classes: Vec<VertexClass>,
}

pub fn to_document(t: &Triangulation) -> Result<TriangulationDocument> {
    Ok(TriangulationDocument {
        schema: TRIANGULATION_SCHEMA.into(),
        version: TRIANGULATION_VERSION,
        g: t.g(),
        tets: t.tets().to_vec(),
        orientation: t.orientation().to_vec(),
        edge_classes: edge_classes(t)?,
        vertex_classes: t.vertex_classes().to_vec(),
    })
}

/// Rebuilds the triangulation from its gluings and checks the recorded
/// classes against the recomputed ones.
pub fn from_document(doc: &TriangulationDocument) -> Result<Triangulation> {
    if doc.schema != TRIANGULATION_SCHEMA || doc.version != TRIANGULATION_VERSION {
        return Err(GexError::Domain(format!(
            "unsupported document {} v{}",
            doc.schema, doc.version
        )));
    }
    let t = Triangulation::from_tetrahedra(doc.g, doc.tets.clone())?;
    invariant(t.orientation() == doc.orientation.as_slice(), || {
        "recorded orientation differs from the recomputed one".into()
    })?;
    invariant(edge_classes(&t)? == doc.edge_classes, || {
        "recorded edge classes differ from the recomputed ones".into()
    })?;
    invariant(t.vertex_classes() == doc.vertex_classes.as_slice(), || {
        "recorded vertex classes differ from the recomputed ones".into()
    })?;
    Ok(t)
}

pub fn to_json(t: &Triangulation) -> Result<String> {
    serde_json::to_string_pretty(&to_document(t)?)
        .map_err(|e| GexError::InvariantViolation(format!("serialization failed: {e}")))
}

pub fn from_json(s: &str) -> Result<Triangulation> {
    let doc: TriangulationDocument = serde_json::from_str(s)
        .map_err(|e| GexError::Domain(format!("malformed document: {e}")))?;
    from_document(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::build_triangulation;

    #[test]
    fn round_trip() {
        let t = build_triangulation(3).unwrap();
        let back = from_json(&to_json(&t).unwrap()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn tampered_document_is_rejected() {
        let t = build_triangulation(2).unwrap();
        let mut doc = to_document(&t).unwrap();
        doc.edge_classes[0].incidence = 7;
        assert!(from_document(&doc).is_err());
        let mut doc = to_document(&t).unwrap();
        doc.version = 99;
        assert!(matches!(from_document(&doc), Err(GexError::Domain(_))));
    }
}
