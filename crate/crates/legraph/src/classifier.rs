//! Decision procedures built on the invariants: simplicity of a graph,
//! isotopy of two presentations, counting classes over an unoriented
//! framing, and recovering twists from tb.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::dividing::{bypass_rewrite, canonical_config, legal_moves, DividingConfig};
use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::graph::{Cycle, EdgeId, Graph, VertexId};
use crate::handle::{image_invariants, reduce_to_p0, transport_invariants};
use crate::invariants::{find_theta_triple, rot_vector, total_rotation, CycleSet, ThetaTriple};
use crate::matcher::{match_spheres, SphereMatch};
use crate::minor::{minor_model, Pattern};
use crate::presentation::{
    flip_ribbon_orientation, ribbon_equal, ribbon_invariant, Presentation, RibbonInvariant,
    RibbonMode, Twist,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplicityVerdict {
    /// Unoriented ribbon and rotation numbers classify.
    ByRibbonAndRot,
    /// tb and rot of the cycles classify.
    ByTbAndRot,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    pub minor_clause: bool,
    pub connectivity_clause: bool,
    pub connectivity: usize,
    pub verdict: SimplicityVerdict,
    /// Branch sets of a K4 or doubled-triangle minor.
    pub minor: Option<(Pattern, Vec<BTreeSet<VertexId>>)>,
    /// A smallest separating set when the graph is not 3-connected and its
    /// underlying simple graph is not complete.
    pub separator: Option<Vec<VertexId>>,
}

/// The embedding only certifies planarity; the verdict depends on the
/// abstract graph.
pub fn is_simple(emb: &Embedding) -> SimplicityReport {
    let g = &emb.graph;
    let minor = [Pattern::K4, Pattern::Delta2]
        .into_iter()
        .find_map(|p| minor_model(g, p).map(|m| (p, m)));
    let connectivity = g.vertex_connectivity();
    let connectivity_clause = connectivity >= 3;
    let verdict = if connectivity_clause {
        SimplicityVerdict::ByTbAndRot
    } else if minor.is_some() {
        SimplicityVerdict::ByRibbonAndRot
    } else {
        SimplicityVerdict::Undetermined
    };
    SimplicityReport {
        minor_clause: minor.is_some(),
        connectivity_clause,
        connectivity,
        verdict,
        minor,
        separator: if connectivity_clause {
            None
        } else {
            g.min_separator()
        },
    }
}

/// Rotation vector of any presentation. For one with positive twists, `d`
/// lives on the presentation with every positive edge lowered by twice its
/// winding, and the numbers are carried back through the reduction.
pub fn rotation_vector(p: &Presentation, d: &DividingConfig) -> Result<Vec<i64>> {
    if p.in_p0() {
        return rot_vector(p, d);
    }
    let r = reduce_to_p0(p)?;
    let d = if r.reoriented {
        d.reoriented()
    } else {
        d.clone()
    };
    let dj = r.lift_config(&d)?;
    Ok(transport_invariants(&r, &image_invariants(&r, &dj)?)?.rot)
}

/// A dividing set that `rotation_vector` accepts for `p`: the canonical one,
/// taken on the stabilized presentation when some edge has positive twist.
pub fn default_config(p: &Presentation) -> Result<DividingConfig> {
    if p.in_p0() {
        return canonical_config(p);
    }
    let r = reduce_to_p0(p)?;
    let s = r.stabilized_source();
    canonical_config(&if r.reoriented { s.reoriented() } else { s })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Difference {
    Ribbon,
    Rot {
        cycle: Cycle,
        first: i64,
        second: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotopyVerdict {
    /// Equal invariants. The witness is a bypass sequence when both sides
    /// are sphere presentations that agree after reorientation.
    Isotopic {
        witness: Option<SphereMatch>,
    },
    Distinct(Difference),
}

pub fn decide_isotopy(
    p1: &Presentation,
    d1: &DividingConfig,
    p2: &Presentation,
    d2: &DividingConfig,
) -> Result<IsotopyVerdict> {
    if p1.graph() != p2.graph() {
        return Err(Error::GraphMismatch);
    }
    let (n1, n2) = (p1.normalize_twists(), p2.normalize_twists());
    if !ribbon_equal(
        &ribbon_invariant(&n1),
        &ribbon_invariant(&n2),
        RibbonMode::Oriented,
    )? {
        return Ok(IsotopyVerdict::Distinct(Difference::Ribbon));
    }
    let (r1, r2) = (rotation_vector(p1, d1)?, rotation_vector(p2, d2)?);
    if let Some(i) = (0..r1.len()).find(|&i| r1[i] != r2[i]) {
        let cycle = p1.cycles().swap_remove(i);
        return Ok(IsotopyVerdict::Distinct(Difference::Rot {
            cycle,
            first: r1[i],
            second: r2[i],
        }));
    }
    let comparable = p1.in_p0() && (p1 == p2 || *p1 == p2.reoriented());
    let witness = if comparable {
        Some(match_spheres(p1, p2, d1, d2)?)
    } else {
        None
    };
    Ok(IsotopyVerdict::Isotopic { witness })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub presentation: Presentation,
    /// A dividing set realizing the rotation numbers, if the search found one.
    pub config: Option<DividingConfig>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCount {
    pub count: usize,
    pub candidates: Vec<Candidate>,
    /// The fundamental triple behind the count, when one exists.
    pub triple: Option<ThetaTriple>,
}

/// Oriented ribbons over an unoriented framing that are consistent with the
/// given rotation numbers. Consistency means the Bennequin bound and parity
/// on every cycle, and agreement with the total rotation forced on a
/// fundamental triple. Each candidate is also searched for a realizing
/// dividing set among the first `budget` configurations reachable by
/// bypasses.
pub fn count_classes(
    graph: &Graph,
    framing: &RibbonInvariant,
    rot: &[i64],
    budget: usize,
) -> Result<ClassCount> {
    let base = Presentation::from_ribbon(graph, framing)?;
    let cycles = base.cycles();
    if rot.len() != cycles.len() {
        return Err(Error::InvalidPresentation(format!(
            "{} rotation numbers for {} cycles",
            rot.len(),
            cycles.len()
        )));
    }
    for c in &cycles {
        if base.tb(c) >= 0 {
            return Err(Error::Unrealizable(format!(
                "cycle {c} has tb {}",
                base.tb(c)
            )));
        }
    }
    let mut ribbons = vec![framing.clone()];
    let flipped = flip_ribbon_orientation(framing);
    if !ribbon_equal(framing, &flipped, RibbonMode::Oriented)? {
        ribbons.push(flipped);
    }
    let triple = find_theta_triple(&base).ok();
    let mut candidates = Vec::new();
    for r in ribbons {
        let p = Presentation::from_ribbon(graph, &r)?;
        let bounded = cycles.iter().zip(rot).all(|(c, &x)| {
            let tb = p.tb(c);
            tb + x.abs() <= -1 && (tb + 1 - x).rem_euclid(2) == 0
        });
        let forced = match &triple {
            Some(t) => {
                let set = CycleSet::new(
                    t.cycles()
                        .iter()
                        .map(|d| Cycle { darts: d.clone() })
                        .collect(),
                );
                total_rotation(&cycles, rot, &set)? == t.combinatorial_value(&p)
            }
            None => true,
        };
        if bounded && forced {
            let config = if p.in_p0() {
                search_rot(&p, rot, budget)
            } else {
                None
            };
            candidates.push(Candidate {
                presentation: p,
                config,
            });
        }
    }
    Ok(ClassCount {
        count: candidates.len(),
        candidates,
        triple,
    })
}

/// Breadth-first walk over dividing sets by legal bypasses.
fn search_rot(p: &Presentation, rot: &[i64], budget: usize) -> Option<DividingConfig> {
    let start = canonical_config(p).ok()?;
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(d) = queue.pop_front() {
        if rot_vector(p, &d).ok()? == rot {
            return Some(d);
        }
        for (arc, side) in legal_moves(p, &d).ok()? {
            if seen.len() >= budget {
                break;
            }
            if let Ok(next) = bypass_rewrite(p, &d, arc, side) {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    None
}

/// Twists of a 3-connected graph from the tb of its cycles, listed in the
/// order of [`Graph::cycles`]. For an edge e and two paths p1, p2 joining
/// its ends without it, 2 tw(e) = tb(e + p1) + tb(e + p2) - tb(p1 + p2).
/// Every such pair of paths is tried and must agree.
pub fn tw_from_tb(g: &Graph, tb: &[i64]) -> Result<BTreeMap<EdgeId, Twist>> {
    if g.vertex_connectivity() < 3 {
        return Err(Error::NotThreeConnected);
    }
    let cycles = g.cycles();
    if tb.len() != cycles.len() {
        return Err(Error::InvalidPresentation(format!(
            "{} tb values for {} cycles",
            tb.len(),
            cycles.len()
        )));
    }
    let index: BTreeMap<Vec<EdgeId>, i64> = cycles
        .iter()
        .map(|c| c.edge_key())
        .zip(tb.iter().copied())
        .collect();
    let mut out = BTreeMap::new();
    for e in g.edge_ids() {
        let through: Vec<(&Cycle, i64)> = cycles
            .iter()
            .zip(tb)
            .filter(|(c, _)| c.contains_edge(e))
            .map(|(c, &t)| (c, t))
            .collect();
        let mut value = None;
        for (i, (c1, t1)) in through.iter().enumerate() {
            for (c2, t2) in &through[i + 1..] {
                let v1: BTreeSet<VertexId> = c1.vertices(g).into_iter().collect();
                let v2: BTreeSet<VertexId> = c2.vertices(g).into_iter().collect();
                if v1.intersection(&v2).count() != 2 {
                    continue;
                }
                let mut key: Vec<EdgeId> = c1
                    .edge_key()
                    .into_iter()
                    .chain(c2.edge_key())
                    .filter(|&x| x != e)
                    .collect();
                key.sort();
                let Some(&t3) = index.get(&key) else { continue };
                let twice = t1 + t2 - t3;
                match value {
                    None => value = Some(twice),
                    Some(v) if v != twice => return Err(Error::InconsistentTb(e)),
                    _ => {}
                }
            }
        }
        out.insert(e, Twist(value.ok_or(Error::NotThreeConnected)?));
    }
    for (c, &t) in cycles.iter().zip(tb) {
        let sum: Twist = c.darts.iter().map(|d| out[&d.edge]).sum();
        if sum != Twist::whole(t) {
            return Err(Error::InconsistentTb(c.darts[0].edge));
        }
    }
    Ok(out)
}
