//! Sphere presentations: rotation system, vertex signs and edge twists.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::embedding::{Embedding, RotationSystem};
use crate::error::{Error, Result};
use crate::graph::{Cycle, EdgeId, End, Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(x: i64) -> Sign {
        if x >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Twisting number in half-twist units: `Twist(-3)` is tw = -3/2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Twist(pub i64);

impl Twist {
    pub fn whole(n: i64) -> Twist {
        Twist(2 * n)
    }

    pub fn halves(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Number of dividing-set crossings on an edge with this twist.
    pub fn crossings(self) -> usize {
        assert!(self.0 <= 0, "positive twist has no crossing count");
        (-self.0) as usize
    }

    /// Smallest integer at least tw.
    pub fn ceil(self) -> i64 {
        self.0.div_euclid(2) + self.0.rem_euclid(2)
    }
}

impl Add for Twist {
    type Output = Twist;
    fn add(self, o: Twist) -> Twist {
        Twist(self.0 + o.0)
    }
}

impl Sub for Twist {
    type Output = Twist;
    fn sub(self, o: Twist) -> Twist {
        Twist(self.0 - o.0)
    }
}

impl std::iter::Sum for Twist {
    fn sum<I: Iterator<Item = Twist>>(it: I) -> Twist {
        Twist(it.map(|t| t.0).sum())
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    Disconnected,
    Rotation(String),
    NotSphere(i64),
    MissingSign(VertexId),
    MissingTwist(EdgeId),
    Parity {
        edge: EdgeId,
        twist: Twist,
        equal_signs: bool,
    },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Disconnected => write!(f, "graph is not connected"),
            Diagnostic::Rotation(s) => write!(f, "rotation system: {s}"),
            Diagnostic::NotSphere(x) => write!(f, "not a sphere embedding: V - E + F = {x}"),
            Diagnostic::MissingSign(v) => write!(f, "vertex {v} has no sign"),
            Diagnostic::MissingTwist(e) => write!(f, "edge {e} has no twist"),
            Diagnostic::Parity {
                edge,
                twist,
                equal_signs,
            } => {
                let want = if *equal_signs {
                    "whole"
                } else {
                    "half-integer"
                };
                write!(f, "parity: edge {edge} needs a {want} twist, found {twist}")
            }
        }
    }
}

/// Unchecked presentation data, as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawPresentation {
    pub graph: Graph,
    pub rotation: RotationSystem,
    pub signs: BTreeMap<VertexId, Sign>,
    pub twists: BTreeMap<EdgeId, Twist>,
}

impl RawPresentation {
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if !self.graph.is_connected() {
            out.push(Diagnostic::Disconnected);
        }
        match Embedding::new(self.graph.clone(), self.rotation.clone()) {
            Err(Error::NotSphere(x)) => out.push(Diagnostic::NotSphere(x)),
            Err(Error::Disconnected) | Ok(_) => {}
            Err(e) => out.push(Diagnostic::Rotation(e.to_string())),
        }
        for v in self.graph.vertices() {
            if !self.signs.contains_key(&v) {
                out.push(Diagnostic::MissingSign(v));
            }
        }
        for (e, [a, b]) in self.graph.edges() {
            let Some(&t) = self.twists.get(&e) else {
                out.push(Diagnostic::MissingTwist(e));
                continue;
            };
            if let (Some(sa), Some(sb)) = (self.signs.get(&a), self.signs.get(&b)) {
                let equal = sa == sb;
                if equal != t.is_integer() {
                    out.push(Diagnostic::Parity {
                        edge: e,
                        twist: t,
                        equal_signs: equal,
                    });
                }
            }
        }
        out
    }

    pub fn into_presentation(self) -> Result<Presentation> {
        let diags = self.validate();
        if !diags.is_empty() {
            let msg: Vec<String> = diags.iter().map(|d| d.to_string()).collect();
            return Err(Error::InvalidPresentation(msg.join("; ")));
        }
        let embedding = Embedding::new(self.graph, self.rotation)?;
        Ok(Presentation {
            embedding,
            signs: self.signs,
            twists: self.twists,
        })
    }
}

/// A validated presentation on the oriented sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    embedding: Embedding,
    signs: BTreeMap<VertexId, Sign>,
    twists: BTreeMap<EdgeId, Twist>,
}

impl Presentation {
    pub fn new(
        graph: Graph,
        rotation: RotationSystem,
        signs: BTreeMap<VertexId, Sign>,
        twists: BTreeMap<EdgeId, Twist>,
    ) -> Result<Self> {
        RawPresentation {
            graph,
            rotation,
            signs,
            twists,
        }
        .into_presentation()
    }

    pub fn raw(&self) -> RawPresentation {
        RawPresentation {
            graph: self.graph().clone(),
            rotation: self.rotation().clone(),
            signs: self.signs.clone(),
            twists: self.twists.clone(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.embedding.graph
    }

    pub fn rotation(&self) -> &RotationSystem {
        &self.embedding.rotation
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn sign(&self, v: VertexId) -> Sign {
        self.signs[&v]
    }

    pub fn twist(&self, e: EdgeId) -> Twist {
        self.twists[&e]
    }

    pub fn signs(&self) -> &BTreeMap<VertexId, Sign> {
        &self.signs
    }

    pub fn twists(&self) -> &BTreeMap<EdgeId, Twist> {
        &self.twists
    }

    pub fn with_twists(&self, twists: BTreeMap<EdgeId, Twist>) -> Result<Self> {
        RawPresentation {
            twists,
            ..self.raw()
        }
        .into_presentation()
    }

    /// Sign of the piece of `e` between its crossings `j - 1` and `j`,
    /// counted from end 0.
    pub fn segment_sign(&self, e: EdgeId, j: usize) -> Sign {
        let s = self.sign(self.graph().endpoints(e)[0]);
        if j.is_multiple_of(2) {
            s
        } else {
            -s
        }
    }

    /// All twists are non-positive, so the graph sits on a convex sphere.
    pub fn in_p0(&self) -> bool {
        self.twists.values().all(|t| t.0 <= 0)
    }

    pub fn require_p0(&self) -> Result<()> {
        match self.twists.iter().find(|(_, t)| t.0 > 0) {
            Some((&e, _)) => Err(Error::PositiveTwist(e)),
            None => Ok(()),
        }
    }

    pub fn positive_edges(&self) -> PositiveEdgeSet {
        let edges: Vec<(EdgeId, i64)> = self
            .twists
            .iter()
            .filter(|(_, t)| t.0 > 0)
            .map(|(&e, t)| (e, t.ceil()))
            .collect();
        PositiveEdgeSet {
            count: edges.len(),
            edges,
        }
    }

    pub fn cycles(&self) -> Vec<Cycle> {
        self.graph().cycles()
    }

    pub fn tb(&self, c: &Cycle) -> i64 {
        let t: Twist = c.darts.iter().map(|d| self.twist(d.edge)).sum();
        debug_assert!(t.is_integer());
        t.0 / 2
    }

    pub fn tb_vector(&self) -> Vec<i64> {
        self.cycles().iter().map(|c| self.tb(c)).collect()
    }

    /// Cut edges take the smallest twist their parity allows; the twist of
    /// every cut pair moves onto its least edge.
    pub fn normalize_twists(&self) -> Presentation {
        let emb = &self.embedding;
        let mut twists = self.twists.clone();
        let minimal = |e: EdgeId| {
            let [a, b] = self.graph().endpoints(e);
            if self.sign(a) == self.sign(b) {
                Twist(0)
            } else {
                Twist(-1)
            }
        };
        for e in emb.cut_edges() {
            twists.insert(e, minimal(e));
        }
        for group in emb.cut_pairs() {
            let total: Twist = group.iter().map(|e| twists[e]).sum();
            let mut rest = Twist(0);
            for &e in &group[1..] {
                let m = minimal(e);
                twists.insert(e, m);
                rest = rest + m;
            }
            twists.insert(group[0], total - rest);
        }
        Presentation {
            twists,
            ..self.clone()
        }
    }

    /// Same Legendrian graph described with the opposite coorientation of
    /// the sphere.
    pub fn reoriented(&self) -> Presentation {
        Presentation {
            embedding: Embedding::new(self.graph().clone(), self.rotation().reversed())
                .expect("mirror is spherical"),
            signs: self.signs.iter().map(|(&v, &s)| (v, -s)).collect(),
            twists: self.twists.clone(),
        }
    }

    /// Presentation whose ribbon is the orientation reverse of this one.
    pub fn flipped(&self) -> Presentation {
        Presentation {
            signs: self.signs.iter().map(|(&v, &s)| (v, -s)).collect(),
            ..self.clone()
        }
    }

    pub fn from_ribbon(graph: &Graph, r: &RibbonInvariant) -> Result<Presentation> {
        let neg: BTreeSet<VertexId> = r
            .signs
            .iter()
            .filter(|(_, s)| **s == Sign::Minus)
            .map(|(&v, _)| v)
            .collect();
        let rotation = RotationSystem::new(r.orders.clone()).reversed_at(&neg);
        Presentation::new(graph.clone(), rotation, r.signs.clone(), r.twists.clone())
    }

    /// Merge every 2-valent vertex into a single edge; twists add up.
    pub fn smoothed(&self) -> Presentation {
        let mut raw = self.raw();
        loop {
            let g = &raw.graph;
            let Some(v) = g.vertices().find(|&v| {
                let ends = g.ends_at(v);
                ends.len() == 2 && ends[0].edge != ends[1].edge && g.vertex_count() > 2
            }) else {
                break;
            };
            let ends = g.ends_at(v);
            let (d0, d1) = (ends[0], ends[1]);
            let (a_end, b_end) = (d0.twin(), d1.twin());
            let (a, b) = (g.tail(a_end), g.tail(b_end));
            let keep = d0.edge.min(d1.edge);
            let drop = d0.edge.max(d1.edge);
            let merged_twist = raw.twists[&d0.edge] + raw.twists[&d1.edge];
            let edges: Vec<(EdgeId, VertexId, VertexId)> = g
                .edges()
                .filter(|&(e, _)| e != drop && e != keep)
                .map(|(e, [x, y])| (e, x, y))
                .chain(std::iter::once((keep, a, b)))
                .collect();
            let graph =
                Graph::new(g.vertices().filter(|&w| w != v), edges).expect("smoothing keeps ids");
            let order = raw
                .rotation
                .iter()
                .filter(|&(w, _)| w != v)
                .map(|(w, list)| {
                    let list = list
                        .iter()
                        .map(|&d| {
                            if d == a_end {
                                End::new(keep, 0)
                            } else if d == b_end {
                                End::new(keep, 1)
                            } else {
                                d
                            }
                        })
                        .collect();
                    (w, list)
                })
                .collect();
            raw.twists.remove(&drop);
            raw.twists.insert(keep, merged_twist);
            raw.signs.remove(&v);
            raw.rotation = RotationSystem::new(order);
            raw.graph = graph;
        }
        raw.into_presentation()
            .expect("smoothing preserves validity")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveEdgeSet {
    /// Positive edges with their winding k_e = ceil(tw).
    pub edges: Vec<(EdgeId, i64)>,
    pub count: usize,
}

/// Legendrian ribbon data on the labeled graph: cyclic orders of the edges
/// in the contact plane at each vertex, vertex signs and twists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonInvariant {
    pub orders: BTreeMap<VertexId, Vec<End>>,
    pub signs: BTreeMap<VertexId, Sign>,
    pub twists: BTreeMap<EdgeId, Twist>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RibbonMode {
    Oriented,
    Unoriented,
}

pub fn ribbon_invariant(p: &Presentation) -> RibbonInvariant {
    let p = p.normalize_twists();
    let neg: BTreeSet<VertexId> = p
        .signs
        .iter()
        .filter(|(_, s)| **s == Sign::Minus)
        .map(|(&v, _)| v)
        .collect();
    let contact = p.rotation().reversed_at(&neg);
    RibbonInvariant {
        orders: contact.iter().map(|(v, ends)| (v, ends.to_vec())).collect(),
        signs: p.signs.clone(),
        twists: p.twists.clone(),
    }
}

pub fn flip_ribbon_orientation(r: &RibbonInvariant) -> RibbonInvariant {
    let reversed = RotationSystem::new(r.orders.clone()).reversed();
    RibbonInvariant {
        orders: reversed
            .iter()
            .map(|(v, ends)| (v, ends.to_vec()))
            .collect(),
        signs: r.signs.iter().map(|(&v, &s)| (v, -s)).collect(),
        twists: r.twists.clone(),
    }
}

/// Oriented mode compares contact orders and twists; the vertex signs only
/// matter up to the choice of coorientation of the sphere.
pub fn ribbon_equal(r1: &RibbonInvariant, r2: &RibbonInvariant, mode: RibbonMode) -> Result<bool> {
    let same_graph = r1.signs.keys().eq(r2.signs.keys()) && r1.twists.keys().eq(r2.twists.keys());
    if !same_graph {
        return Err(Error::GraphMismatch);
    }
    let oriented = |a: &RibbonInvariant, b: &RibbonInvariant| {
        let same = a.signs == b.signs;
        let opposite = a.signs.iter().all(|(v, s)| b.signs[v] == -*s);
        a.orders == b.orders && a.twists == b.twists && (same || opposite)
    };
    Ok(match mode {
        RibbonMode::Oriented => oriented(r1, r2),
        RibbonMode::Unoriented => oriented(r1, r2) || oriented(r1, &flip_ribbon_orientation(r2)),
    })
}

/// The 3-connected augmentation: companions on both sides of cut edges and
/// of one edge per cut pair, then every vertex blown up into a wheel whose
/// rim follows the rotation.
pub fn augment_to_3_connected(p: &Presentation) -> Result<Embedding> {
    let emb = p.embedding();
    let g = p.graph();
    let mut doubled: Vec<EdgeId> = emb.cut_edges();
    doubled.extend(emb.cut_pairs().iter().map(|grp| grp[0]));
    doubled.sort();

    let mut edges: BTreeMap<EdgeId, [VertexId; 2]> = g.edges().collect();
    let mut order: BTreeMap<VertexId, Vec<End>> =
        p.rotation().iter().map(|(v, x)| (v, x.to_vec())).collect();
    let mut next_e = g.next_edge_id().0;
    for &e in &doubled {
        let [a, b] = edges[&e];
        let (left, right) = (EdgeId(next_e), EdgeId(next_e + 1));
        next_e += 2;
        edges.insert(left, [a, b]);
        edges.insert(right, [a, b]);
        let at_a = order.get_mut(&a).unwrap();
        let i = at_a.iter().position(|&d| d == End::new(e, 0)).unwrap();
        at_a.insert(i + 1, End::new(left, 0));
        at_a.insert(i, End::new(right, 0));
        let at_b = order.get_mut(&b).unwrap();
        let j = at_b.iter().position(|&d| d == End::new(e, 1)).unwrap();
        at_b.insert(j + 1, End::new(right, 1));
        at_b.insert(j, End::new(left, 1));
    }

    let mut next_v = g.next_vertex_id().0;
    let mut rim_of: BTreeMap<End, VertexId> = BTreeMap::new();
    let mut new_edges: BTreeMap<EdgeId, [VertexId; 2]> = BTreeMap::new();
    let mut new_order: BTreeMap<VertexId, Vec<End>> = BTreeMap::new();
    for (&v, ends) in &order {
        let rims: Vec<VertexId> = (0..ends.len())
            .map(|i| VertexId(next_v + i as u32))
            .collect();
        next_v += ends.len() as u32;
        let spokes: Vec<EdgeId> = (0..ends.len()).map(|i| EdgeId(next_e + i as u32)).collect();
        next_e += ends.len() as u32;
        let ring: Vec<EdgeId> = (0..ends.len()).map(|i| EdgeId(next_e + i as u32)).collect();
        next_e += ends.len() as u32;
        let k = ends.len();
        for i in 0..k {
            rim_of.insert(ends[i], rims[i]);
            new_edges.insert(spokes[i], [v, rims[i]]);
            new_edges.insert(ring[i], [rims[i], rims[(i + 1) % k]]);
            new_order.insert(
                rims[i],
                vec![
                    ends[i],
                    End::new(ring[i], 0),
                    End::new(spokes[i], 1),
                    End::new(ring[(i + k - 1) % k], 1),
                ],
            );
        }
        new_order.insert(v, spokes.iter().map(|&s| End::new(s, 0)).collect());
    }
    for &e in edges.keys() {
        new_edges.insert(e, [rim_of[&End::new(e, 0)], rim_of[&End::new(e, 1)]]);
    }
    let vertices: Vec<VertexId> = new_order.keys().copied().collect();
    let graph = Graph::new(vertices, new_edges.iter().map(|(&e, &[a, b])| (e, a, b)))?;
    Embedding::new(graph, RotationSystem::new(new_order))
}

#[cfg(test)]
pub(crate) mod samples {
    use super::*;
    use crate::embedding::samples::*;
    use crate::graph::samples::*;

    pub fn signs(xs: &[i64]) -> BTreeMap<VertexId, Sign> {
        xs.iter()
            .enumerate()
            .map(|(i, &s)| (v(i as u32), Sign::from_value(s)))
            .collect()
    }

    pub fn twists(halves: &[i64]) -> BTreeMap<EdgeId, Twist> {
        halves
            .iter()
            .enumerate()
            .map(|(i, &h)| (e(i as u32), Twist(h)))
            .collect()
    }

    pub fn theta_p(sg: &[i64], tw: &[i64]) -> Presentation {
        Presentation::new(theta(), theta_rot(), signs(sg), twists(tw)).unwrap()
    }

    pub fn k4_p(sg: &[i64], tw: &[i64]) -> Presentation {
        Presentation::new(k4(), k4_rot(), signs(sg), twists(tw)).unwrap()
    }

    pub fn delta2_p(sg: &[i64], tw: &[i64]) -> Presentation {
        Presentation::new(delta2(), delta2_rot(), signs(sg), twists(tw)).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;
    use crate::embedding::samples::*;
    use crate::graph::samples::*;

    fn raw(sg: &[i64], tw: &[i64]) -> RawPresentation {
        RawPresentation {
            graph: theta(),
            rotation: theta_rot(),
            signs: signs(sg),
            twists: twists(tw),
        }
    }

    #[test]
    fn parity_rule() {
        assert!(raw(&[1, 1], &[-2, -2, -2]).validate().is_empty());
        let d = raw(&[1, -1], &[-2, -1, -3]).validate();
        assert_eq!(
            d,
            vec![Diagnostic::Parity {
                edge: e(0),
                twist: Twist(-2),
                equal_signs: false
            }]
        );
        assert!(raw(&[1, -1], &[-1, -1, -3]).validate().is_empty());
    }

    #[test]
    fn twist_helpers() {
        assert_eq!(Twist(3).ceil(), 2);
        assert_eq!(Twist(2).ceil(), 1);
        assert_eq!(Twist(1).ceil(), 1);
        assert_eq!(Twist(-3).ceil(), -1);
        assert_eq!(Twist(-3).to_string(), "-3/2");
    }

    fn dumbbell(tw: &[i64]) -> Presentation {
        // loops at 0 and 1 joined by the cut edge 2
        let g = graph(2, &[(0, 0), (1, 1), (0, 1)]);
        let r = rot(
            &g,
            &[
                (0, &[(0, 0), (0, 1), (2, 0)]),
                (1, &[(1, 0), (1, 1), (2, 1)]),
            ],
        );
        Presentation::new(g, r, signs(&[1, 1]), twists(tw)).unwrap()
    }

    #[test]
    fn cut_edge_normalized() {
        let p = dumbbell(&[-2, -4, -4]);
        let n = p.normalize_twists();
        assert_eq!(n.twist(e(2)), Twist(0));
        assert_eq!(n.twist(e(0)), Twist(-2));
        assert_eq!(n.twist(e(1)), Twist(-4));
        assert_eq!(n.normalize_twists(), n);
    }

    fn necklace(tw: &[i64]) -> Presentation {
        // two loops joined by a cut pair
        let g = graph(2, &[(0, 1), (0, 1), (0, 0), (1, 1)]);
        let r = rot(
            &g,
            &[
                (0, &[(0, 0), (2, 0), (2, 1), (1, 0)]),
                (1, &[(0, 1), (1, 1), (3, 0), (3, 1)]),
            ],
        );
        Presentation::new(g, r, signs(&[1, 1]), twists(tw)).unwrap()
    }

    #[test]
    fn cut_pair_normalized() {
        let p = necklace(&[-2, -2, -2, -2]);
        let n = p.normalize_twists();
        assert_eq!(n.twist(e(0)), Twist(-4));
        assert_eq!(n.twist(e(1)), Twist(0));
        assert_eq!(n.tb_vector(), p.tb_vector());
        assert_eq!(n.normalize_twists(), n);
    }

    #[test]
    fn flip_and_compare() {
        let p = theta_p(&[1, 1], &[-2, -2, -2]);
        let r = ribbon_invariant(&p);
        let f = flip_ribbon_orientation(&r);
        assert_eq!(flip_ribbon_orientation(&f), r);
        assert!(f.signs.values().all(|&s| s == Sign::Minus));
        for (v, ends) in &r.orders {
            let mut rev = ends.clone();
            rev.reverse();
            assert_eq!(
                RotationSystem::new(BTreeMap::from([(*v, rev)])).at(*v),
                f.orders[v].as_slice()
            );
        }
        assert_eq!(ribbon_equal(&r, &r, RibbonMode::Oriented), Ok(true));
        assert_eq!(ribbon_equal(&r, &f, RibbonMode::Oriented), Ok(false));
        assert_eq!(ribbon_equal(&r, &f, RibbonMode::Unoriented), Ok(true));
        assert_eq!(
            ribbon_invariant(&p.flipped()),
            f.clone().with_signs_of(&p.flipped())
        );
    }

    impl RibbonInvariant {
        fn with_signs_of(mut self, p: &Presentation) -> Self {
            self.signs = p.signs().clone();
            self
        }
    }

    #[test]
    fn reorienting_keeps_the_ribbon() {
        let p = theta_p(&[1, -1], &[-1, -1, -3]);
        let a = ribbon_invariant(&p);
        let b = ribbon_invariant(&p.reoriented());
        assert_eq!(ribbon_equal(&a, &b, RibbonMode::Oriented), Ok(true));
        assert_eq!(
            ribbon_equal(&a, &ribbon_invariant(&p.flipped()), RibbonMode::Oriented),
            Ok(false)
        );
    }

    #[test]
    fn different_order_at_one_vertex() {
        let p = theta_p(&[1, 1], &[-2, -2, -2]);
        let q = theta_p(&[-1, 1], &[-1, -1, -1]);
        let (a, b) = (ribbon_invariant(&p), ribbon_invariant(&q));
        assert_eq!(ribbon_equal(&a, &b, RibbonMode::Oriented), Ok(false));
        assert_eq!(ribbon_equal(&a, &b, RibbonMode::Unoriented), Ok(false));
    }

    #[test]
    fn cut_pair_redistribution_gives_equal_ribbons() {
        let a = ribbon_invariant(&necklace(&[-2, -2, -2, -2]));
        let b = ribbon_invariant(&necklace(&[0, -4, -2, -2]));
        assert_eq!(a, b);
    }

    #[test]
    fn augmentation_is_3_connected() {
        let k = augment_to_3_connected(&k4_p(&[1, 1, 1, 1], &[-2; 6])).unwrap();
        assert!(k.graph.vertex_connectivity() >= 3);
        let t = augment_to_3_connected(&theta_p(&[1, 1], &[-2; 3])).unwrap();
        assert!(t.graph.vertex_connectivity() >= 3);
        assert_eq!(t.graph.vertex_count(), 8);
        let d = dumbbell(&[-2, -2, 0]);
        let h = augment_to_3_connected(&d).unwrap();
        assert_eq!(h.graph.edge_count(), 5 + 2 * 5 * 2);
        assert!(h.graph.vertex_connectivity() >= 3);
    }

    #[test]
    fn smoothing_merges_twists() {
        let g = graph(3, &[(0, 1), (1, 2), (0, 2), (0, 2)]);
        let r = rot(
            &g,
            &[
                (0, &[(0, 0), (2, 0), (3, 0)]),
                (1, &[(0, 1), (1, 0)]),
                (2, &[(1, 1), (3, 1), (2, 1)]),
            ],
        );
        let p = Presentation::new(g, r, signs(&[1, -1, 1]), twists(&[-1, -1, -2, -2])).unwrap();
        let s = p.smoothed();
        assert_eq!(s.graph().vertex_count(), 2);
        assert_eq!(s.twist(e(0)), Twist(-2));
        assert_eq!(s.tb_vector(), p.tb_vector());
    }
}
