//! Edge-list serializations: DOT, CSV and JSON.
//!
//! Vertices are identified by their index in the spec's ordering and
//! labelled with their one-line permutation string.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::graph::{build_edges, degree, FlagGraphSpec};
use crate::perm::Permutation;
use crate::SCHEMA_VERSION;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeListExport {
    pub schema_version: u32,
    pub n: usize,
    pub k: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub degree: u64,
    pub vertices: Vec<Permutation>,
    pub edges: Vec<(usize, usize)>,
}

impl EdgeListExport {
    pub fn build(spec: &FlagGraphSpec) -> Result<Self> {
        let edges = build_edges(spec)?;
        let vertices = spec.ordering()?.perms().to_vec();
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            n: spec.n(),
            k: spec.k(),
            vertex_count: vertices.len(),
            edge_count: edges.len(),
            degree: degree(spec.n(), spec.k())?,
            vertices,
            edges,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("graph FJ_{}_{} {{\n", self.n, self.k);
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  {i} [label=\"{v}\"];");
        }
        for (u, v) in &self.edges {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    /// Header `u,v` followed by one row per edge.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,v\n");
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{u},{v}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("edge list serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn export(n: usize, k: usize) -> EdgeListExport {
        EdgeListExport::build(&FlagGraphSpec::new(n, k).unwrap()).unwrap()
    }

    #[test]
    fn dot_single_edge() {
        let dot = export(2, 1).to_dot();
        assert_eq!(
            dot,
            "graph FJ_2_1 {\n  0 [label=\"12\"];\n  1 [label=\"21\"];\n  0 -- 1;\n}\n"
        );
    }

    #[test]
    fn permutahedron_dot_counts() {
        let dot = export(4, 1).to_dot();
        assert_eq!(dot.matches("[label=").count(), 24);
        assert_eq!(dot.matches(" -- ").count(), 36);
    }

    #[test]
    fn csv_rows() {
        let csv = export(3, 2).to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("u,v"));
        assert_eq!(lines.count(), 9);
    }

    #[test]
    fn json_header() {
        let v: serde_json::Value = serde_json::from_str(&export(3, 1).to_json()).unwrap();
        assert_eq!(v["n"], 3);
        assert_eq!(v["edge_count"], 6);
        assert_eq!(v["degree"], 2);
        assert_eq!(v["vertices"][0], "123");
        assert_eq!(v["edges"].as_array().unwrap().len(), 6);
    }
}
