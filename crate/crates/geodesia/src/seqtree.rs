//! The sequence tree Ψ: a trie over shortest-path edge sequences starting at
//! a fixed polyhedron edge. Every node stores one crossed edge; the path
//! from the root to a node spells the edge sequence. Each node also carries
//! the unfolding motion of its entered face, derived from its parent's in
//! constant work.

use crate::geom::Motion2;
use crate::mesh::{MeshError, SurfaceMesh};
use serde::Serialize;

#[derive(Debug, Clone)]
pub struct PsiNode {
    /// Crossed polyhedron edge (the root stores the swept edge itself).
    pub edge: usize,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Face entered after crossing `edge`; `None` at the root, where the
    /// side is not yet determined.
    pub face: Option<usize>,
    /// Motion from `face`'s frame into the frame of the subtree's base face
    /// (the common face of the root edge and the depth-1 edge).
    pub motion: Motion2,
}

/// Trie of edge sequences rooted at one polyhedron edge.
#[derive(Debug, Clone)]
pub struct SequenceTree {
    pub nodes: Vec<PsiNode>,
}

impl SequenceTree {
    /// A tree holding only the root, which stores the swept edge.
    pub fn new(root_edge: usize) -> SequenceTree {
        SequenceTree {
            nodes: vec![PsiNode {
                edge: root_edge,
                parent: None,
                children: Vec::new(),
                face: None,
                motion: Motion2::IDENTITY,
            }],
        }
    }

    pub fn root_edge(&self) -> usize {
        self.nodes[0].edge
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn child_with_edge(&self, node: usize, edge: usize) -> Option<usize> {
        self.nodes[node].children.iter().copied().find(|&c| self.nodes[c].edge == edge)
    }

    /// Inserts a sequence (starting with the root edge); creates any missing
    /// nodes and returns the id of the final node. Insertion never removes
    /// or reorders existing nodes.
    pub fn insert(&mut self, mesh: &SurfaceMesh, seq: &[usize]) -> Result<usize, MeshError> {
        assert_eq!(seq[0], self.root_edge(), "sequence must start at the swept edge");
        let mut cur = 0usize;
        for (k, &e) in seq.iter().enumerate().skip(1) {
            if let Some(c) = self.child_with_edge(cur, e) {
                cur = c;
                continue;
            }
            // face the path travels through before crossing e
            let prev_face = match self.nodes[cur].face {
                Some(f) => f,
                None => {
                    // depth 1: the unique face shared by the root edge and e
                    let root_e = self.root_edge();
                    let fe = &mesh.edges[root_e].faces;
                    let f = fe.iter().copied().find(|&f| mesh.face_has_edge(f, e));
                    f.ok_or(MeshError::EdgeNotIncident(e, fe[0]))?
                }
            };
            if !mesh.face_has_edge(prev_face, e) {
                return Err(MeshError::EdgeNotIncident(e, prev_face));
            }
            if seq[..k].contains(&e) {
                return Err(MeshError::Degenerate(format!("edge {e} repeats in sequence")));
            }
            let entered = mesh.other_face(e, prev_face);
            let motion = self.nodes[cur].motion.compose(mesh.unfold_across(prev_face, e)?);
            let id = self.nodes.len();
            self.nodes.push(PsiNode {
                edge: e,
                parent: Some(cur),
                children: Vec::new(),
                face: Some(entered),
                motion,
            });
            self.nodes[cur].children.push(id);
            cur = id;
        }
        Ok(cur)
    }

    /// The edge sequence spelled by the root path of `node`.
    pub fn node_sequence(&self, node: usize) -> Vec<usize> {
        let mut seq = Vec::new();
        let mut cur = Some(node);
        while let Some(c) = cur {
            seq.push(self.nodes[c].edge);
            cur = self.nodes[c].parent;
        }
        seq.reverse();
        seq
    }

    /// All stored sequences (one per node, each a root path). The result is
    /// prefix-closed by construction.
    pub fn sequences(&self) -> Vec<Vec<usize>> {
        (0..self.nodes.len()).map(|i| self.node_sequence(i)).collect()
    }

    /// Whether the exact sequence is present as a root path.
    pub fn contains(&self, seq: &[usize]) -> bool {
        if seq.is_empty() || seq[0] != self.root_edge() {
            return false;
        }
        let mut cur = 0usize;
        for &e in &seq[1..] {
            match self.child_with_edge(cur, e) {
                Some(c) => cur = c,
                None => return false,
            }
        }
        true
    }

    /// Largest child count over all nodes.
    pub fn max_child_count(&self) -> usize {
        self.nodes.iter().map(|n| n.children.len()).max().unwrap_or(0)
    }

    /// Compact serializable form: parent array (-1 at the root) plus the
    /// stored edge per node.
    pub fn to_arrays(&self) -> PsiArrays {
        PsiArrays {
            parents: self.nodes.iter().map(|n| n.parent.map_or(-1, |p| p as i64)).collect(),
            edges: self.nodes.iter().map(|n| n.edge).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PsiArrays {
    pub parents: Vec<i64>,
    pub edges: Vec<usize>,
}
