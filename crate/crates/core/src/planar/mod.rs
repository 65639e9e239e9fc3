//! Rotation systems, face tracing and planarity testing.

mod dmp;
mod forest;
mod pattern;

pub use dmp::test_planarity;
pub use forest::{linear_forest_cover, CoverError, ForestClass, LinearForestCover};
pub use pattern::{
    classify_pattern, is_bipolar_embedding, sign_pattern, PatternClass, Sign, SignPattern,
};

use thiserror::Error;

use crate::graph::{Dart, DiGraph, Graph, Kind, Vertex};

/// The input has no plane embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("graph is not planar")]
pub struct NonPlanar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("rotation covers {found} vertex slots, graph has {expected}")]
    WrongVertexCount { expected: usize, found: usize },
    #[error("rotation at vertex {vertex} has {found} entries, degree is {expected}")]
    WrongLength {
        vertex: Vertex,
        expected: usize,
        found: usize,
    },
    #[error("edge-end {edge}{end} listed at vertex {vertex} is not incident to it")]
    ForeignDart {
        vertex: Vertex,
        edge: usize,
        end: char,
    },
    #[error("edge-end {edge}{end} appears more than once")]
    DuplicateDart { edge: usize, end: char },
    #[error("Euler check failed: V - E + F = {lhs}, expected {rhs}")]
    Euler { lhs: i64, rhs: i64 },
    #[error("vertex {0} is out of range or deleted")]
    BadVertex(Vertex),
}

/// Summary of a validated embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceReport {
    pub vertices: usize,
    pub edges: usize,
    /// Faces of the whole plane drawing (one shared outer face).
    pub faces: usize,
    pub components: usize,
}

/// Cyclic order of incident edge-ends at every vertex slot.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Embedding {
    pub rotation: Vec<Vec<Dart>>,
}

pub(crate) fn end_char(d: Dart) -> char {
    match d.end {
        crate::graph::End::A => 'a',
        crate::graph::End::B => 'b',
    }
}

impl Embedding {
    pub fn new(rotation: Vec<Vec<Dart>>) -> Self {
        Embedding { rotation }
    }

    /// The rotation at `v`, or an empty slice for unknown vertices.
    pub fn at(&self, v: Vertex) -> &[Dart] {
        self.rotation.get(v).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Successor of `d` in the rotation at its vertex.
    fn successor<K: Kind>(&self, g: &Graph<K>, d: Dart) -> Dart {
        let rot = &self.rotation[g.endpoint(d)];
        let i = rot
            .iter()
            .position(|&x| x == d)
            .expect("dart missing from rotation");
        rot[(i + 1) % rot.len()]
    }

    /// Traces faces: from dart `d`, move to the twin and take its rotational successor.
    /// Each face is the list of darts leaving the successive corners.
    pub fn faces<K: Kind>(&self, g: &Graph<K>) -> Vec<Vec<Dart>> {
        let mut seen = std::collections::HashSet::new();
        let mut faces = Vec::new();
        for v in g.vertices() {
            for &start in self.at(v) {
                if seen.contains(&start) {
                    continue;
                }
                let mut face = Vec::new();
                let mut d = start;
                while seen.insert(d) {
                    face.push(d);
                    d = self.successor(g, d.twin());
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Checks the edge-end partition, rotation lengths and Euler's formula
    /// `V - E + F = 1 + C` on every component.
    pub fn validate<K: Kind>(&self, g: &Graph<K>) -> Result<FaceReport, EmbeddingError> {
        if self.rotation.len() != g.vertex_count() {
            return Err(EmbeddingError::WrongVertexCount {
                expected: g.vertex_count(),
                found: self.rotation.len(),
            });
        }
        let mut seen = std::collections::HashSet::new();
        for v in 0..g.vertex_count() {
            let expected = g.darts(v);
            let rot = &self.rotation[v];
            if rot.len() != expected.len() {
                return Err(EmbeddingError::WrongLength {
                    vertex: v,
                    expected: expected.len(),
                    found: rot.len(),
                });
            }
            for &d in rot {
                if !seen.insert(d) {
                    return Err(EmbeddingError::DuplicateDart {
                        edge: d.edge,
                        end: end_char(d),
                    });
                }
                if expected.binary_search(&d).is_err() {
                    return Err(EmbeddingError::ForeignDart {
                        vertex: v,
                        edge: d.edge,
                        end: end_char(d),
                    });
                }
            }
        }
        let faces = self.faces(g);
        let comps = g.components();
        let mut comp_of = vec![usize::MAX; g.vertex_count()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let mut orbits = vec![0i64; comps.len()];
        for f in &faces {
            orbits[comp_of[g.endpoint(f[0])]] += 1;
        }
        let mut edges_in = vec![0i64; comps.len()];
        for (_, u, _) in g.edges() {
            edges_in[comp_of[u]] += 1;
        }
        for (i, c) in comps.iter().enumerate() {
            if edges_in[i] == 0 {
                continue;
            }
            let lhs = c.len() as i64 - edges_in[i] + orbits[i];
            if lhs != 2 {
                return Err(EmbeddingError::Euler { lhs, rhs: 2 });
            }
        }
        let with_edges = edges_in.iter().filter(|&&e| e > 0).count();
        let total_faces = faces.len() + 1 - with_edges;
        let report = FaceReport {
            vertices: g.order(),
            edges: g.edge_count(),
            faces: total_faces,
            components: comps.len(),
        };
        let lhs = report.vertices as i64 - report.edges as i64 + report.faces as i64;
        let rhs = 1 + report.components as i64;
        if lhs != rhs {
            return Err(EmbeddingError::Euler { lhs, rhs });
        }
        Ok(report)
    }

    pub fn is_valid_for<K: Kind>(&self, g: &Graph<K>) -> bool {
        self.validate(g).is_ok()
    }
}

/// Planarity test on the underlying multigraph of a digraph; darts keep arc
/// orientation (`A` = tail), so sign patterns can be read off the result.
pub fn digraph_embedding(d: &DiGraph) -> Result<Embedding, NonPlanar> {
    test_planarity(&d.underlying())
}

pub fn is_planar<K: Kind>(g: &Graph<K>) -> bool {
    test_planarity(&g.retype()).is_ok()
}
