//! Reduction of presentations with positive-twist edges to sphere
//! presentations by splicing a gadget graph into every positive edge.

use std::collections::{BTreeMap, BTreeSet};

use crate::dividing::{ConfigView, DividingConfig, Occ};
use crate::embedding::{Embedding, RotationSystem};
use crate::error::{Error, Result};
use crate::graph::{Cycle, EdgeId, End, Graph, VertexId};
use crate::invariants::{self, InvariantVectors};
use crate::presentation::{Presentation, RawPresentation, Sign, Twist};

/// Named vertices of a gadget. `V1` and `V2` are the endpoints of the
/// replaced edge; the rest are new.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    V1,
    V2,
    X1,
    Y1,
    Y2,
    X2,
    /// Meridian base points, present when the first endpoint is negative.
    R1,
    R2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    T1,
    A1,
    B1,
    C2,
    A2,
    B2,
    T2,
    R1,
    R2,
    M1,
    M2,
    /// Parallel companion `i` (0 or 1) of a base part.
    Companion(BasePart, u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasePart {
    T1,
    C2,
    T2,
    R1,
    R2,
}

/// Which of the two meridian arcs a path through the gadget uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arc {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GadgetPart {
    pub part: Part,
    pub from: Node,
    pub to: Node,
    pub points: usize,
}

/// The gadget replacing one positive edge, determined by the endpoint signs
/// and the winding `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetSpec {
    pub sigma1: Sign,
    pub sigma2: Sign,
    pub k: i64,
}

/// Crossings of the handle curves with the dividing set that the gadget is
/// built to respect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HandleCounts {
    pub d: usize,
    pub meridian: usize,
    pub a: usize,
    pub b: usize,
    pub c1: usize,
    pub c2: usize,
}

pub fn build_gadget(sigma1: Sign, sigma2: Sign, k: i64) -> Result<GadgetSpec> {
    if k < 1 {
        return Err(Error::InvalidWinding);
    }
    Ok(GadgetSpec { sigma1, sigma2, k })
}

impl GadgetSpec {
    /// Gadget for a positive edge of `p`, oriented from its lower endpoint.
    pub fn for_edge(p: &Presentation, e: EdgeId) -> Result<GadgetSpec> {
        let [v1, v2] = oriented_endpoints(p.graph(), e);
        if v1 == v2 {
            return Err(Error::Unrealizable(format!("loop {e} has positive twist")));
        }
        build_gadget(p.sign(v1), p.sign(v2), p.twist(e).ceil())
    }

    pub fn has_meridians(&self) -> bool {
        self.sigma1 == Sign::Minus
    }

    fn mixed(&self) -> bool {
        self.sigma1 != self.sigma2
    }

    /// Twist of the edge this gadget replaces.
    pub fn edge_twist(&self) -> Twist {
        Twist(2 * self.k - i64::from(self.mixed()))
    }

    pub fn counts(&self) -> HandleCounts {
        let k = self.k as usize;
        HandleCounts {
            d: 0,
            meridian: 2,
            a: 2,
            b: 0,
            c1: 2 * k,
            c2: 2 * k - 2,
        }
    }

    pub fn nodes(&self) -> Vec<Node> {
        let mut out = vec![Node::V1, Node::V2, Node::X1, Node::Y1, Node::Y2, Node::X2];
        if self.has_meridians() {
            out.extend([Node::R1, Node::R2]);
        }
        out
    }

    pub fn node_sign(&self, n: Node) -> Sign {
        match n {
            Node::V2 => self.sigma2,
            Node::R1 | Node::R2 => Sign::Plus,
            _ => self.sigma1,
        }
    }

    pub fn parts(&self) -> Vec<GadgetPart> {
        let c = self.counts();
        let tail = usize::from(self.mixed());
        let part = |part, from, to, points| GadgetPart {
            part,
            from,
            to,
            points,
        };
        let mut out = vec![
            part(Part::T1, Node::V1, Node::X1, 2),
            part(Part::A1, Node::X1, Node::Y1, c.a),
            part(Part::B1, Node::X1, Node::Y1, c.b),
            part(Part::C2, Node::Y1, Node::Y2, c.c2),
            part(Part::A2, Node::Y2, Node::X2, c.a),
            part(Part::B2, Node::Y2, Node::X2, c.b),
            part(Part::T2, Node::X2, Node::V2, tail),
        ];
        let c2_companion = if c.c2 > 0 { c.c2 } else { 2 };
        for i in 0..2 {
            out.push(part(
                Part::Companion(BasePart::C2, i),
                Node::Y1,
                Node::Y2,
                c2_companion,
            ));
            if self.mixed() {
                out.push(part(
                    Part::Companion(BasePart::T2, i),
                    Node::X2,
                    Node::V2,
                    1,
                ));
            } else {
                out.push(part(
                    Part::Companion(BasePart::T1, i),
                    Node::V1,
                    Node::X1,
                    2,
                ));
            }
        }
        if self.has_meridians() {
            out.push(part(Part::R1, Node::X1, Node::R1, 1));
            out.push(part(Part::R2, Node::X2, Node::R2, 1));
            out.push(part(Part::M1, Node::R1, Node::R1, c.meridian));
            out.push(part(Part::M2, Node::R2, Node::R2, c.meridian));
            for i in 0..2 {
                out.push(part(
                    Part::Companion(BasePart::R1, i),
                    Node::X1,
                    Node::R1,
                    1,
                ));
                out.push(part(
                    Part::Companion(BasePart::R2, i),
                    Node::X2,
                    Node::R2,
                    1,
                ));
            }
        }
        out
    }

    /// Order in which the parts off the base path are added when a dividing
    /// set is carried over from the stabilized edge.
    fn additions(&self) -> Vec<(Part, Addition)> {
        let mut out = Vec::new();
        let pushoffs = |out: &mut Vec<_>, b: BasePart, base: Part| {
            out.push((
                Part::Companion(b, 0),
                Addition::Pushoff { base, right: true },
            ));
            out.push((
                Part::Companion(b, 1),
                Addition::Pushoff { base, right: false },
            ));
        };
        if self.mixed() {
            pushoffs(&mut out, BasePart::T2, Part::T2);
        } else {
            pushoffs(&mut out, BasePart::T1, Part::T1);
        }
        out.push((Part::A1, Addition::Finger));
        out.push((Part::A2, Addition::Finger));
        if self.counts().c2 > 0 {
            pushoffs(&mut out, BasePart::C2, Part::C2);
        } else {
            out.push((Part::Companion(BasePart::C2, 0), Addition::Finger));
            out.push((Part::Companion(BasePart::C2, 1), Addition::Finger));
        }
        if self.has_meridians() {
            for (r, b, m) in [
                (Part::R1, BasePart::R1, Part::M1),
                (Part::R2, BasePart::R2, Part::M2),
            ] {
                out.push((r, Addition::Pendant));
                pushoffs(&mut out, b, r);
                out.push((m, Addition::Finger));
            }
        }
        out
    }

    /// Parts along the path from `V1` to `V2` using the given meridian arcs.
    pub fn path(&self, f1: Arc, f2: Arc) -> [Part; 5] {
        let f1 = if f1 == Arc::A { Part::A1 } else { Part::B1 };
        let f2 = if f2 == Arc::A { Part::A2 } else { Part::B2 };
        [Part::T1, f1, Part::C2, f2, Part::T2]
    }

    /// Stabilizations separating the path from the replaced edge, as
    /// (positive, negative) counts when traversed from `V1` to `V2`.
    pub fn path_ledger(&self, f1: Arc, f2: Arc) -> (i64, i64) {
        let subs = i64::from(f1 == Arc::A) + i64::from(f2 == Arc::A);
        let (mut pos, mut neg) = (self.k, self.k);
        match -self.sigma1 {
            Sign::Plus => pos += subs,
            Sign::Minus => neg += subs,
        }
        (pos, neg)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Addition {
    /// Parallel copy crossing the same arcs of the dividing set.
    Pushoff { base: Part, right: bool },
    /// Two crossings made by pushing a nearby arc across the new edge.
    Finger,
    /// Edge ending at a new vertex, crossed once by a pushed arc.
    Pendant,
}

/// Classical invariants of the unknot formed by an arc `d_k` through the
/// handle, the meridian arcs `f1`, `f2` and the far longitude arc `c1`,
/// read from the crossing counts and the surface framing.
pub fn gadget_unknot_invariants(
    spec: &GadgetSpec,
    k: i64,
    f1: Arc,
    f2: Arc,
) -> Result<(i64, Option<i64>)> {
    if k < 0 {
        return Err(Error::InvalidWinding);
    }
    let c = spec.counts();
    let arc = |f| if f == Arc::A { c.a } else { c.b };
    let crossings = 2 * k as usize + arc(f1) + c.c1 + arc(f2);
    let framing = k + spec.k - 1 + i64::from(f1 == Arc::A) + i64::from(f2 == Arc::A);
    let tb = framing - (crossings / 2) as i64;
    Ok((tb, forced_rot(tb)))
}

/// The rotation number when the Bennequin bound leaves a single value.
fn forced_rot(tb: i64) -> Option<i64> {
    (tb == -1).then_some(0)
}

fn oriented_endpoints(g: &Graph, e: EdgeId) -> [VertexId; 2] {
    let [a, b] = g.endpoints(e);
    [a.min(b), a.max(b)]
}

/// A gadget placed in the reduced presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacedGadget {
    pub edge: EdgeId,
    pub spec: GadgetSpec,
    pub vertices: BTreeMap<Node, VertexId>,
    pub edges: BTreeMap<Part, EdgeId>,
    /// Edge of the second graph running through the handle.
    pub core: EdgeId,
}

impl PlacedGadget {
    fn path_darts(&self, f1: Arc, f2: Arc, forward: bool) -> Vec<End> {
        let darts: Vec<End> = self
            .spec
            .path(f1, f2)
            .iter()
            .map(|p| End::new(self.edges[p], 0))
            .collect();
        if forward {
            darts
        } else {
            darts.into_iter().rev().map(End::twin).collect()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub edge: EdgeId,
    pub positive: i64,
    pub negative: i64,
}

/// A cycle of the original graph and the cycle standing in for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleImage {
    pub source: Cycle,
    pub image: Cycle,
    pub ledger: Vec<LedgerEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult {
    pub source: Presentation,
    /// Whether the source was replaced by its reoriented description before
    /// building, so that vertex signs are read from a fixed representative.
    pub reoriented: bool,
    pub q: Graph,
    pub j: Presentation,
    pub gadgets: Vec<PlacedGadget>,
    pub cycles: Vec<CycleImage>,
}

impl ReductionResult {
    fn gadget(&self, e: EdgeId) -> Option<&PlacedGadget> {
        self.gadgets.iter().find(|g| g.edge == e)
    }

    /// Image of a cycle of the source graph, choosing the meridian arcs in
    /// every gadget it passes.
    pub fn lift(&self, c: &Cycle, choose: impl Fn(EdgeId) -> (Arc, Arc)) -> CycleImage {
        let g = self.source.graph();
        let mut darts = Vec::new();
        let mut ledger = Vec::new();
        for &d in &c.darts {
            match self.gadget(d.edge) {
                None => darts.push(d),
                Some(pg) => {
                    let forward = g.tail(d) == pg.vertices[&Node::V1];
                    let (f1, f2) = choose(d.edge);
                    darts.extend(pg.path_darts(f1, f2, forward));
                    let (pos, neg) = pg.spec.path_ledger(f1, f2);
                    let (positive, negative) = if forward { (pos, neg) } else { (neg, pos) };
                    ledger.push(LedgerEntry {
                        edge: d.edge,
                        positive,
                        negative,
                    });
                }
            }
        }
        CycleImage {
            source: c.clone(),
            image: Cycle { darts },
            ledger,
        }
    }
}

impl ReductionResult {
    /// The source with every positive edge lowered by two twists per unit
    /// of winding, i.e. `k` positive and `k` negative stabilizations.
    pub fn stabilized_source(&self) -> Presentation {
        let mut tw = self.source.twists().clone();
        for g in &self.gadgets {
            tw.insert(g.edge, g.spec.edge_twist() - Twist::whole(2 * g.spec.k));
        }
        self.source
            .with_twists(tw)
            .expect("stabilizing keeps parity")
    }

    /// Dividing set on `j` obtained from one on the stabilized source: the
    /// stabilized edge's crossings are spread along the base path and every
    /// other gadget edge is added by an isotopy of the curves.
    pub fn lift_config(&self, d: &DividingConfig) -> Result<DividingConfig> {
        let jg = self.j.graph();
        let mut counts: BTreeMap<EdgeId, usize> = BTreeMap::new();
        let mut remap: BTreeMap<Occ, Occ> = BTreeMap::new();
        let mut present: BTreeSet<EdgeId> = jg.edge_ids().collect();
        for g in &self.gadgets {
            let parts = g.spec.parts();
            let points = |p: Part| parts.iter().find(|x| x.part == p).map_or(0, |x| x.points);
            let path = g.spec.path(Arc::B, Arc::B);
            let along: Vec<(EdgeId, usize)> = path
                .iter()
                .flat_map(|&p| (0..points(p)).map(move |i| (g.edges[&p], i)))
                .collect();
            let c = d.count(g.edge);
            if c != along.len() {
                return Err(Error::InvalidConfig(format!(
                    "edge {} carries {c} points, expected {}",
                    g.edge,
                    along.len()
                )));
            }
            let v1_first = self.source.graph().endpoints(g.edge)[0] == g.vertices[&Node::V1];
            for (j, &(pe, i)) in along.iter().enumerate() {
                let idx = if v1_first { j } else { c - 1 - j };
                for side in 0..2u8 {
                    let s = if v1_first { side } else { 1 - side };
                    remap.insert(Occ::new(g.edge, idx, side), Occ::new(pe, i, s));
                }
            }
            for gp in &parts {
                if path.contains(&gp.part) {
                    counts.insert(g.edges[&gp.part], gp.points);
                } else {
                    present.remove(&g.edges[&gp.part]);
                }
            }
        }
        for (&e, &c) in d.counts() {
            if self.gadget(e).is_none() {
                counts.insert(e, c);
            }
        }
        let mut chords: BTreeMap<Occ, Occ> = BTreeMap::new();
        for (a, b) in d.chords() {
            let (a, b) = (
                remap.get(&a).copied().unwrap_or(a),
                remap.get(&b).copied().unwrap_or(b),
            );
            chords.insert(a, b);
            chords.insert(b, a);
        }
        for g in &self.gadgets {
            let parts = g.spec.parts();
            for (part, how) in g.spec.additions() {
                let x = g.edges[&part];
                let points = parts
                    .iter()
                    .find(|p| p.part == part)
                    .map_or(0, |p| p.points);
                present.insert(x);
                counts.insert(x, points);
                match how {
                    Addition::Pushoff { base, right } => {
                        pushoff(&mut chords, g.edges[&base], x, points, right)
                    }
                    Addition::Finger | Addition::Pendant => {
                        let emb = self.sub_embedding(&present)?;
                        splice(&emb, &counts, &mut chords, x, how == Addition::Finger)?;
                    }
                }
            }
        }
        let pairs: Vec<(Occ, Occ)> = chords
            .iter()
            .filter(|(a, b)| a < b)
            .map(|(&a, &b)| (a, b))
            .collect();
        DividingConfig::new(counts, pairs)
    }

    fn sub_embedding(&self, present: &BTreeSet<EdgeId>) -> Result<Embedding> {
        let jg = self.j.graph();
        let vertices: BTreeSet<VertexId> = present.iter().flat_map(|&e| jg.endpoints(e)).collect();
        let graph = Graph::new(
            vertices.iter().copied(),
            present
                .iter()
                .map(|&e| (e, jg.endpoints(e)[0], jg.endpoints(e)[1])),
        )?;
        let rotation = RotationSystem::new(
            vertices
                .iter()
                .map(|&v| {
                    (
                        v,
                        self.j
                            .rotation()
                            .at(v)
                            .iter()
                            .copied()
                            .filter(|d| present.contains(&d.edge))
                            .collect(),
                    )
                })
                .collect(),
        );
        Embedding::new(graph, rotation)
    }
}

/// Add `x` parallel to `base` on one side, crossing the same arcs.
fn pushoff(chords: &mut BTreeMap<Occ, Occ>, base: EdgeId, x: EdgeId, points: usize, right: bool) {
    let (s, inner, outer) = if right { (1, 0, 1) } else { (0, 1, 0) };
    let moved = |o: Occ| {
        if o.edge == base && o.side == s {
            Occ::new(x, o.idx, outer)
        } else {
            o
        }
    };
    let mut next: BTreeMap<Occ, Occ> = chords.iter().map(|(&a, &b)| (moved(a), moved(b))).collect();
    for i in 0..points {
        let (a, b) = (Occ::new(base, i, s), Occ::new(x, i, inner));
        next.insert(a, b);
        next.insert(b, a);
    }
    *chords = next;
}

/// Points on the boundary of every face, in walking order.
fn face_points(emb: &Embedding, counts: &BTreeMap<EdgeId, usize>) -> Vec<Vec<Occ>> {
    emb.faces
        .iter()
        .map(|f| {
            f.darts
                .iter()
                .flat_map(|d| {
                    let c = counts.get(&d.edge).copied().unwrap_or(0);
                    let idx: Vec<usize> = if d.end == 0 {
                        (0..c).collect()
                    } else {
                        (0..c).rev().collect()
                    };
                    idx.into_iter().map(move |i| Occ::new(d.edge, i, d.end))
                })
                .collect()
        })
        .collect()
}

/// Route the arc following the new crossings of `x` through them. With
/// `inner` set, `x` has two crossings and one of its sides faces an empty
/// disk, where they are joined.
fn splice(
    emb: &Embedding,
    counts: &BTreeMap<EdgeId, usize>,
    chords: &mut BTreeMap<Occ, Occ>,
    x: EdgeId,
    inner: bool,
) -> Result<()> {
    let faces = face_points(emb, counts);
    let fresh = |o: &Occ| o.edge == x;
    let (outer_face, q) = if inner {
        let side = (0..2u8)
            .find(|&s| faces[emb.face_of(End::new(x, s))].iter().all(fresh))
            .ok_or_else(|| Error::InvalidConfig(format!("edge {x} bounds no empty disk")))?;
        let (a, b) = (Occ::new(x, 0, side), Occ::new(x, 1, side));
        chords.insert(a, b);
        chords.insert(b, a);
        let out = 1 - side;
        (
            emb.face_of(End::new(x, out)),
            [Occ::new(x, 0, out), Occ::new(x, 1, out)],
        )
    } else {
        (
            emb.face_of(End::new(x, 0)),
            [Occ::new(x, 0, 0), Occ::new(x, 0, 1)],
        )
    };
    let list = &faces[outer_face];
    let n = list.len();
    let pos = |o: Occ| {
        list.iter()
            .position(|&y| y == o)
            .expect("crossing on its face")
    };
    let (first, second) = if list[(pos(q[0]) + 1) % n] == q[1] {
        (q[0], q[1])
    } else {
        (q[1], q[0])
    };
    let b = list[(pos(second) + 1) % n];
    if fresh(&b) {
        return Err(Error::InvalidConfig(format!(
            "face around edge {x} has no arc to push"
        )));
    }
    let a = chords[&b];
    chords.insert(a, first);
    chords.insert(first, a);
    chords.insert(second, b);
    chords.insert(b, second);
    Ok(())
}

pub fn reduce_to_p0(p: &Presentation) -> Result<ReductionResult> {
    let positive: Vec<EdgeId> = p.positive_edges().edges.iter().map(|&(e, _)| e).collect();
    if positive.is_empty() {
        let cycles = p
            .cycles()
            .into_iter()
            .map(|c| CycleImage {
                source: c.clone(),
                image: c,
                ledger: Vec::new(),
            })
            .collect();
        return Ok(ReductionResult {
            source: p.clone(),
            reoriented: false,
            q: p.graph().clone(),
            j: p.clone(),
            gadgets: Vec::new(),
            cycles,
        });
    }
    let least = p
        .graph()
        .vertices()
        .next()
        .ok_or_else(|| Error::InvalidPresentation("empty graph".into()))?;
    let reoriented = p.sign(least) == Sign::Minus;
    let base = if reoriented {
        p.reoriented()
    } else {
        p.clone()
    };

    let raw = base.raw();
    let mut vertices: Vec<VertexId> = raw.graph.vertices().collect();
    let mut edges: BTreeMap<EdgeId, [VertexId; 2]> = raw.graph.edges().collect();
    let mut order: BTreeMap<VertexId, Vec<End>> =
        raw.rotation.iter().map(|(v, x)| (v, x.to_vec())).collect();
    let mut signs = raw.signs.clone();
    let mut twists = raw.twists.clone();
    let mut next_v = raw.graph.next_vertex_id().0;
    let mut next_e = raw.graph.next_edge_id().0;
    let mut gadgets = Vec::new();
    let mut q_edges = Vec::new();

    for &e in &positive {
        let spec = GadgetSpec::for_edge(&base, e)?;
        let [v1, v2] = oriented_endpoints(&raw.graph, e);
        let mut vmap = BTreeMap::from([(Node::V1, v1), (Node::V2, v2)]);
        for n in spec.nodes().into_iter().skip(2) {
            let v = VertexId(next_v);
            next_v += 1;
            vmap.insert(n, v);
            vertices.push(v);
            signs.insert(v, spec.node_sign(n));
            order.insert(v, Vec::new());
        }
        let mut emap = BTreeMap::new();
        for gp in spec.parts() {
            let id = EdgeId(next_e);
            next_e += 1;
            emap.insert(gp.part, id);
            edges.insert(id, [vmap[&gp.from], vmap[&gp.to]]);
            twists.insert(id, Twist(-(gp.points as i64)));
        }
        edges.remove(&e);
        twists.remove(&e);
        let core = EdgeId(next_e);
        next_e += 1;
        let (ca, cb) = if spec.has_meridians() {
            (Node::R1, Node::R2)
        } else {
            (Node::X1, Node::X2)
        };
        q_edges.push((core, vmap[&ca], vmap[&cb]));

        let placed = PlacedGadget {
            edge: e,
            spec,
            vertices: vmap,
            edges: emap,
            core,
        };
        for (v, ends) in gadget_rotation(&placed) {
            match v {
                Node::V1 | Node::V2 => {
                    let vid = placed.vertices[&v];
                    let at = order.get_mut(&vid).expect("endpoint listed");
                    let end = End::new(e, u8::from(raw.graph.endpoints(e)[0] != vid));
                    let i = at
                        .iter()
                        .position(|&x| x == end)
                        .expect("edge end at its vertex");
                    at.splice(i..=i, ends);
                }
                _ => {
                    order.insert(placed.vertices[&v], ends);
                }
            }
        }
        gadgets.push(placed);
    }

    let graph = Graph::new(
        vertices.iter().copied(),
        edges.iter().map(|(&e, &[a, b])| (e, a, b)),
    )?;
    let q = Graph::new(
        vertices.iter().copied(),
        edges
            .iter()
            .map(|(&e, &[a, b])| (e, a, b))
            .chain(q_edges.iter().copied()),
    )?;
    let j = RawPresentation {
        graph,
        rotation: RotationSystem::new(order),
        signs,
        twists,
    }
    .into_presentation()?;
    let mut result = ReductionResult {
        source: base,
        reoriented,
        q,
        j,
        gadgets,
        cycles: Vec::new(),
    };
    result.cycles = result
        .source
        .cycles()
        .iter()
        .map(|c| result.lift(c, |_| (Arc::B, Arc::B)))
        .collect();
    Ok(result)
}

/// Whether the arc `A` lies on the left of the path from `V1` to `V2`.
const A_ON_LEFT: bool = false;

/// Counterclockwise end lists for the gadget's vertices. For `V1` and `V2`
/// the list replaces the end of the removed edge.
fn gadget_rotation(pg: &PlacedGadget) -> Vec<(Node, Vec<End>)> {
    let s = &pg.spec;
    let e = |p: Part| pg.edges[&p];
    let tail = |base: Part, b: BasePart, present: bool| -> Vec<EdgeId> {
        // listed right to left across the direction of travel
        if present {
            vec![e(Part::Companion(b, 0)), e(base), e(Part::Companion(b, 1))]
        } else {
            vec![e(base)]
        }
    };
    let t1 = tail(Part::T1, BasePart::T1, !s.mixed());
    let t2 = tail(Part::T2, BasePart::T2, s.mixed());
    let c2 = tail(Part::C2, BasePart::C2, true);
    let meridian = |a: Part, b: Part| {
        if A_ON_LEFT {
            vec![e(b), e(a)]
        } else {
            vec![e(a), e(b)]
        }
    };
    let ab1 = meridian(Part::A1, Part::B1);
    let ab2 = meridian(Part::A2, Part::B2);
    let leaving = |xs: &[EdgeId]| xs.iter().map(|&x| End::new(x, 0)).collect::<Vec<_>>();
    let arriving = |xs: &[EdgeId]| xs.iter().rev().map(|&x| End::new(x, 1)).collect::<Vec<_>>();

    let mut x1 = leaving(&ab1);
    let mut x2 = leaving(&t2);
    let mut out = Vec::new();
    if s.has_meridians() {
        let r1 = tail(Part::R1, BasePart::R1, true);
        let r2 = tail(Part::R2, BasePart::R2, true);
        x1.extend(leaving(&r1));
        x2.extend(leaving(&r2));
        let mut top1 = vec![End::new(e(Part::M1), 0), End::new(e(Part::M1), 1)];
        top1.extend(arriving(&r1));
        let mut top2 = vec![End::new(e(Part::M2), 0), End::new(e(Part::M2), 1)];
        top2.extend(arriving(&r2));
        out.push((Node::R1, top1));
        out.push((Node::R2, top2));
    }
    x1.extend(arriving(&t1));
    x2.extend(arriving(&ab2));
    let mut y1 = leaving(&c2);
    y1.extend(arriving(&ab1));
    let mut y2 = leaving(&ab2);
    y2.extend(arriving(&c2));
    out.push((Node::V1, leaving(&t1)));
    out.push((Node::V2, arriving(&t2)));
    out.push((Node::X1, x1));
    out.push((Node::Y1, y1));
    out.push((Node::Y2, y2));
    out.push((Node::X2, x2));
    out
}

/// Invariants of the source graph's cycles recovered from those of the
/// reduced presentation by undoing each ledger.
pub fn transport_invariants(
    r: &ReductionResult,
    inv_j: &InvariantVectors,
) -> Result<InvariantVectors> {
    let mut index: BTreeMap<Vec<EdgeId>, usize> = BTreeMap::new();
    for (i, c) in inv_j.cycles.iter().enumerate() {
        index.insert(c.edge_key(), i);
    }
    let mut tb = Vec::with_capacity(r.cycles.len());
    let mut rot = Vec::with_capacity(r.cycles.len());
    for img in &r.cycles {
        let &i = index
            .get(&img.image.edge_key())
            .ok_or(Error::LedgerMismatch)?;
        let enumerated = &inv_j.cycles[i];
        let first = *img.image.darts.first().ok_or(Error::LedgerMismatch)?;
        let same = enumerated.darts.contains(&first);
        if !same && !enumerated.darts.contains(&first.twin()) {
            return Err(Error::LedgerMismatch);
        }
        let rj = if same { inv_j.rot[i] } else { -inv_j.rot[i] };
        let pos: i64 = img.ledger.iter().map(|l| l.positive).sum();
        let neg: i64 = img.ledger.iter().map(|l| l.negative).sum();
        tb.push(inv_j.tb[i] + pos + neg);
        rot.push(rj - (pos - neg));
    }
    Ok(InvariantVectors {
        cycles: r.cycles.iter().map(|c| c.source.clone()).collect(),
        tb,
        rot,
    })
}

/// tb and rot on `j` of just the image cycles of a reduction.
pub fn image_invariants(r: &ReductionResult, d: &DividingConfig) -> Result<InvariantVectors> {
    let view = ConfigView::new(&r.j, d)?;
    let cycles: Vec<Cycle> = r.cycles.iter().map(|c| c.image.clone()).collect();
    Ok(InvariantVectors {
        tb: cycles.iter().map(|c| r.j.tb(c)).collect(),
        rot: cycles
            .iter()
            .map(|c| invariants::rot(&view, &c.darts))
            .collect(),
        cycles,
    })
}
