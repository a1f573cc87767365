//! Rotation systems on the sphere and face tracing.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, End, Graph, VertexId};

/// Counterclockwise cyclic order of edge-ends around every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    order: BTreeMap<VertexId, Vec<End>>,
}

impl RotationSystem {
    /// Stores each cyclic order rotated to start at its least end.
    pub fn new(order: BTreeMap<VertexId, Vec<End>>) -> Self {
        let order = order
            .into_iter()
            .map(|(v, ends)| (v, canonical_cycle(ends)))
            .collect();
        RotationSystem { order }
    }

    /// Rotation taking the ends at each vertex in id order.
    pub fn by_id(g: &Graph) -> Self {
        Self::new(g.vertices().map(|v| (v, g.ends_at(v))).collect())
    }

    pub fn at(&self, v: VertexId) -> &[End] {
        self.order.get(&v).map_or(&[], |x| x.as_slice())
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &[End])> {
        self.order.iter().map(|(&v, x)| (v, x.as_slice()))
    }

    pub fn reversed(&self) -> Self {
        Self::new(
            self.order
                .iter()
                .map(|(&v, ends)| (v, ends.iter().rev().copied().collect()))
                .collect(),
        )
    }

    /// Reverse the order only at the listed vertices.
    pub fn reversed_at(&self, vs: &BTreeSet<VertexId>) -> Self {
        Self::new(
            self.order
                .iter()
                .map(|(&v, ends)| {
                    let ends = if vs.contains(&v) {
                        ends.iter().rev().copied().collect()
                    } else {
                        ends.clone()
                    };
                    (v, ends)
                })
                .collect(),
        )
    }

    pub fn check(&self, g: &Graph) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (&v, ends) in &self.order {
            if !g.has_vertex(v) {
                return Err(Error::UnknownVertex(v));
            }
            for &d in ends {
                if !g.has_edge(d.edge) {
                    return Err(Error::UnknownEdge(d.edge));
                }
                if g.tail(d) != v {
                    return Err(Error::Rotation(format!(
                        "{d} listed at {v} but sits at {}",
                        g.tail(d)
                    )));
                }
                if !seen.insert(d) {
                    return Err(Error::Rotation(format!("{d} listed twice")));
                }
            }
        }
        for e in g.edge_ids() {
            for end in 0..2 {
                let d = End::new(e, end);
                if !seen.contains(&d) {
                    return Err(Error::Rotation(format!("{d} missing")));
                }
            }
        }
        Ok(())
    }

    fn position(&self, v: VertexId, d: End) -> usize {
        self.order[&v]
            .iter()
            .position(|&x| x == d)
            .expect("end listed at its vertex")
    }

    /// Face successor: the face stays on the left of every dart.
    pub fn next_dart(&self, g: &Graph, d: End) -> End {
        let t = d.twin();
        let w = g.tail(t);
        let ends = &self.order[&w];
        let i = self.position(w, t);
        ends[(i + ends.len() - 1) % ends.len()]
    }

    /// Ends immediately before and after `d` in the cyclic order at its vertex.
    pub fn neighbors(&self, g: &Graph, d: End) -> (End, End) {
        let v = g.tail(d);
        let ends = &self.order[&v];
        let i = self.position(v, d);
        (
            ends[(i + ends.len() - 1) % ends.len()],
            ends[(i + 1) % ends.len()],
        )
    }
}

fn canonical_cycle<T: Ord + Copy>(mut xs: Vec<T>) -> Vec<T> {
    if let Some(i) = xs
        .iter()
        .enumerate()
        .min_by_key(|(_, x)| **x)
        .map(|(i, _)| i)
    {
        xs.rotate_left(i);
    }
    xs
}

/// A face as its boundary walk; the face lies on the left of each dart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<End>,
}

/// Graph, rotation and traced faces of a sphere embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub graph: Graph,
    pub rotation: RotationSystem,
    pub faces: Vec<Face>,
    face_of: BTreeMap<End, (usize, usize)>,
}

/// Trace the faces of a rotation system and enforce V - E + F = 2.
pub fn trace_faces(g: &Graph, rot: &RotationSystem) -> Result<Vec<Face>> {
    rot.check(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut faces = Vec::new();
    let mut seen = BTreeSet::new();
    for e in g.edge_ids() {
        for end in 0..2 {
            let start = End::new(e, end);
            if seen.contains(&start) {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = start;
            while seen.insert(d) {
                darts.push(d);
                d = rot.next_dart(g, d);
            }
            faces.push(Face { darts });
        }
    }
    let euler = g.vertex_count() as i64 - g.edge_count() as i64 + faces.len() as i64;
    if g.edge_count() == 0 {
        return Ok(Vec::new());
    }
    if euler != 2 {
        return Err(Error::NotSphere(euler));
    }
    Ok(faces)
}

impl Embedding {
    pub fn new(graph: Graph, rotation: RotationSystem) -> Result<Self> {
        let faces = trace_faces(&graph, &rotation)?;
        let mut face_of = BTreeMap::new();
        for (i, f) in faces.iter().enumerate() {
            for (j, &d) in f.darts.iter().enumerate() {
                face_of.insert(d, (i, j));
            }
        }
        Ok(Embedding {
            graph,
            rotation,
            faces,
            face_of,
        })
    }

    /// Face on the left of a dart.
    pub fn face_of(&self, d: End) -> usize {
        self.face_of[&d].0
    }

    /// Index of a dart inside its face walk.
    pub fn slot_of(&self, d: End) -> (usize, usize) {
        self.face_of[&d]
    }

    pub fn left(&self, e: EdgeId) -> usize {
        self.face_of(End::new(e, 0))
    }

    pub fn right(&self, e: EdgeId) -> usize {
        self.face_of(End::new(e, 1))
    }

    /// Faces on one side of an oriented closed walk: the faces left of its
    /// darts, grown across every edge the walk does not use.
    pub fn left_region(&self, darts: &[End]) -> BTreeSet<usize> {
        let used: BTreeSet<EdgeId> = darts.iter().map(|d| d.edge).collect();
        let mut region: BTreeSet<usize> = darts.iter().map(|&d| self.face_of(d)).collect();
        let mut stack: Vec<usize> = region.iter().copied().collect();
        while let Some(f) = stack.pop() {
            for &d in &self.faces[f].darts {
                if used.contains(&d.edge) {
                    continue;
                }
                let g = self.face_of(d.twin());
                if region.insert(g) {
                    stack.push(g);
                }
            }
        }
        region
    }

    /// Groups of at least two edges that separate the same pair of faces.
    pub fn cut_pairs(&self) -> Vec<Vec<EdgeId>> {
        let mut by_faces: BTreeMap<(usize, usize), Vec<EdgeId>> = BTreeMap::new();
        for e in self.graph.edge_ids() {
            let (a, b) = (self.left(e), self.right(e));
            if a != b {
                by_faces.entry((a.min(b), a.max(b))).or_default().push(e);
            }
        }
        by_faces.into_values().filter(|es| es.len() >= 2).collect()
    }

    /// Edges with the same face on both sides.
    pub fn cut_edges(&self) -> Vec<EdgeId> {
        self.graph
            .edge_ids()
            .filter(|&e| self.left(e) == self.right(e))
            .collect()
    }
}

#[cfg(test)]
pub(crate) mod samples {
    use super::*;
    use crate::graph::samples::*;

    pub fn rot(g: &Graph, spec: &[(u32, &[(u32, u8)])]) -> RotationSystem {
        let r = RotationSystem::new(
            spec.iter()
                .map(|(vv, ends)| {
                    (
                        v(*vv),
                        ends.iter().map(|&(ee, end)| End::new(e(ee), end)).collect(),
                    )
                })
                .collect(),
        );
        r.check(g).unwrap();
        r
    }

    /// Theta with edge 0, 1, 2 counterclockwise at vertex 0.
    pub fn theta_rot() -> RotationSystem {
        rot(
            &theta(),
            &[
                (0, &[(0, 0), (1, 0), (2, 0)]),
                (1, &[(0, 1), (2, 1), (1, 1)]),
            ],
        )
    }

    /// Planar K4: vertex 3 in the middle of triangle 0, 1, 2.
    pub fn k4_rot() -> RotationSystem {
        rot(
            &k4(),
            &[
                (0, &[(0, 0), (2, 0), (1, 0)]),
                (1, &[(3, 0), (4, 0), (0, 1)]),
                (2, &[(1, 1), (5, 0), (3, 1)]),
                (3, &[(2, 1), (4, 1), (5, 1)]),
            ],
        )
    }

    pub fn delta2_rot() -> RotationSystem {
        rot(
            &delta2(),
            &[
                (0, &[(0, 0), (1, 0), (5, 0), (4, 0)]),
                (1, &[(2, 0), (3, 0), (1, 1), (0, 1)]),
                (2, &[(4, 1), (5, 1), (3, 1), (2, 1)]),
            ],
        )
    }
}
