//! Schreier graphs of the action on the levels of the tree.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::group::{apply_letter, Letter, TreeVertex};
use crate::{Error, Result};

pub const MAX_SCHREIER_LEVEL: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub label: Letter,
}

/// Labelled Schreier graph on the `2^level` vertices of one level.
///
/// Vertices are indexed lexicographically. Each `(vertex, generator)` slot is
/// either an edge, or a loop that was dropped because loops are suppressed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierGraph {
    level: usize,
    keep_loops: bool,
    edges: Vec<Edge>,
    suppressed_loops: Vec<(usize, Letter)>,
}

impl SchreierGraph {
    pub fn build(level: usize, keep_loops: bool) -> Result<Self> {
        if level > MAX_SCHREIER_LEVEL {
            return Err(Error::input(format!("level {level} exceeds {MAX_SCHREIER_LEVEL}")));
        }
        let mut edges = Vec::with_capacity(3 << level);
        let mut suppressed_loops = Vec::new();
        for v in TreeVertex::level_vertices(level) {
            let source = v.index();
            for l in Letter::ALL {
                let mut bits = v.bits().to_vec();
                apply_letter(l, &mut bits);
                let target = TreeVertex::from_bits(bits).expect("bits").index();
                if target == source && !keep_loops {
                    suppressed_loops.push((source, l));
                } else {
                    edges.push(Edge { source, target, label: l });
                }
            }
        }
        Ok(SchreierGraph { level, keep_loops, edges, suppressed_loops })
    }

    /// A graph from explicit edges, for analysing arbitrary edge sets.
    pub fn from_edges(level: usize, edges: Vec<Edge>) -> Result<Self> {
        let n = 1usize << level;
        if let Some(e) = edges.iter().find(|e| e.source >= n || e.target >= n) {
            return Err(Error::input(format!("edge {e:?} leaves the {n} vertices")));
        }
        Ok(SchreierGraph { level, keep_loops: true, edges, suppressed_loops: Vec::new() })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn vertex_count(&self) -> usize {
        1 << self.level
    }

    pub fn keeps_loops(&self) -> bool {
        self.keep_loops
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn suppressed_loops(&self) -> &[(usize, Letter)] {
        &self.suppressed_loops
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.source == v).count()
    }

    pub fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.source].push(e.target);
            adj[e.target].push(e.source);
        }
        let mut seen = vec![false; n];
        let mut components = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Entry `(u, v)` counts generator edges `u → v`, loops included.
    pub fn adjacency_matrix(&self) -> Result<DMatrix<f64>> {
        if !self.keep_loops {
            return Err(Error::input("adjacency matrix needs loops kept"));
        }
        let n = self.vertex_count();
        let mut m = DMatrix::zeros(n, n);
        for e in &self.edges {
            m[(e.source, e.target)] += 1.0;
        }
        Ok(m)
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Csv => self.to_csv(),
            ExportFormat::Dot => self.to_dot(),
        }
    }

    fn name(&self, v: usize) -> String {
        TreeVertex::from_index(v, self.level).to_string()
    }

    fn to_csv(&self) -> String {
        let mut out = String::from("source,target,label\n");
        for e in &self.edges {
            let _ = writeln!(out, "{},{},{}", self.name(e.source), self.name(e.target), e.label);
        }
        out
    }

    fn to_dot(&self) -> String {
        let mut out = format!("graph schreier_level_{} {{\n", self.level);
        for v in 0..self.vertex_count() {
            let _ = writeln!(out, "  v{v} [label=\"{}\"];", self.name(v));
        }
        // Generators are involutions: u → v pairs with v → u, keep one.
        for e in self.edges.iter().filter(|e| e.source <= e.target) {
            let _ = writeln!(out, "  v{} -- v{} [label=\"{}\"];", e.source, e.target, e.label);
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Csv,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "csv" => Ok(ExportFormat::Csv),
            other => Err(Error::input(format!("unknown export format {other:?}"))),
        }
    }
}

pub fn build(level: usize, keep_loops: bool) -> Result<SchreierGraph> {
    SchreierGraph::build(level, keep_loops)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one() {
        let g = build(1, true).unwrap();
        assert_eq!(g.vertex_count(), 2);
        let a_edges: Vec<_> = g.edges().iter().filter(|e| e.label == Letter::A).collect();
        assert!(a_edges.iter().all(|e| e.source != e.target));
        assert!(g.edges().iter().filter(|e| e.label != Letter::A).all(|e| e.source == e.target));
        let m = g.adjacency_matrix().unwrap();
        assert_eq!(m, DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]));
        assert_eq!(g.export(ExportFormat::Csv).lines().count(), 7);
    }

    #[test]
    fn level_zero() {
        let g = build(0, true).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edges().len(), 3);
        assert!(g.is_connected());
        let dot = g.export(ExportFormat::Dot);
        assert_eq!(dot.matches("[label=").count() - dot.matches(" -- ").count(), 1);
        let g = build(0, false).unwrap();
        assert_eq!(g.suppressed_loops().len(), 3);
        assert!(g.adjacency_matrix().is_err());
    }

    #[test]
    fn level_eight_is_connected_with_degree_three() {
        let g = build(8, true).unwrap();
        assert_eq!(g.vertex_count(), 256);
        assert!(g.is_connected());
        assert!((0..256).all(|v| g.degree(v) == 3));
        let stripped = build(8, false).unwrap();
        assert_eq!(stripped.edges().len() + stripped.suppressed_loops().len(), 3 * 256);
        assert!(stripped.is_connected());
    }

    #[test]
    fn disconnected_edge_set() {
        let g = SchreierGraph::from_edges(1, vec![]).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.component_count(), 2);
        assert!(SchreierGraph::from_edges(1, vec![Edge { source: 0, target: 2, label: Letter::A }]).is_err());
    }

    #[test]
    fn export_is_deterministic_and_validated() {
        let g = build(4, true).unwrap();
        assert_eq!(g.export(ExportFormat::Dot), build(4, true).unwrap().export(ExportFormat::Dot));
        assert!("svg".parse::<ExportFormat>().is_err());
        assert!(build(17, true).is_err());
    }
}
