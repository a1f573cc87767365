//! Thurston-Bennequin and rotation numbers of cycles, stabilization and
//! related bookkeeping.

use std::collections::{BTreeMap, BTreeSet};

use crate::dividing::{ConfigView, DividingConfig, Occ};
use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::graph::{Cycle, EdgeId, End, Path, VertexId};
use crate::presentation::{Presentation, Sign, Twist};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantVectors {
    pub cycles: Vec<Cycle>,
    pub tb: Vec<i64>,
    pub rot: Vec<i64>,
}

pub fn tb_vector(p: &Presentation) -> Vec<i64> {
    p.tb_vector()
}

/// tb of a cycle read off the dividing set: minus half its crossings.
pub fn tb_from_gamma(d: &DividingConfig, c: &Cycle) -> i64 {
    let n: usize = c.darts.iter().map(|x| d.count(x.edge)).sum();
    -(n as i64) / 2
}

/// chi of the positive part minus chi of the negative part over the closed
/// union of the given faces.
fn chi_difference(view: &ConfigView, faces: &BTreeSet<usize>) -> i64 {
    let p = view.p;
    let emb = p.embedding();
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeSet::new();
    let mut regions = 0;
    for &f in faces {
        for d in &emb.faces[f].darts {
            vertices.insert(p.graph().tail(*d));
            edges.insert(d.edge);
        }
        let layout = &view.layouts[f];
        let m = view.face_matching(f);
        let mut seen = BTreeSet::new();
        for (i, r) in m.interval_regions().into_iter().enumerate() {
            if seen.insert(r) {
                regions += layout.interval_sign(i).value();
            }
        }
    }
    let v: i64 = vertices.iter().map(|&x| p.sign(x).value()).sum();
    let e: i64 = edges
        .iter()
        .map(|&x| {
            (0..=view.d.count(x))
                .map(|s| p.segment_sign(x, s).value())
                .sum::<i64>()
        })
        .sum();
    v - e + regions
}

/// Rotation number of an oriented cycle, using the disk on its left.
pub fn rot_of_cycle(view: &ConfigView, darts: &[End]) -> i64 {
    chi_difference(view, &view.p.embedding().left_region(darts))
}

/// The same number computed on the disk to the right, whose orientation
/// as a Seifert surface is opposite to the sphere.
pub fn rot_of_cycle_right(view: &ConfigView, darts: &[End]) -> i64 {
    let left = view.p.embedding().left_region(darts);
    let right: BTreeSet<usize> = (0..view.face_count())
        .filter(|f| !left.contains(f))
        .collect();
    -chi_difference(view, &right)
}

/// Uses whichever disk has fewer faces, ties to the one holding the least
/// face index.
pub fn rot(view: &ConfigView, darts: &[End]) -> i64 {
    let left = view.p.embedding().left_region(darts);
    let n = view.face_count();
    let right_len = n - left.len();
    let use_left = left.len() < right_len || (left.len() == right_len && left.contains(&0));
    if use_left {
        chi_difference(view, &left)
    } else {
        rot_of_cycle_right(view, darts)
    }
}

pub fn rot_of_face_boundary(view: &ConfigView, f: usize) -> i64 {
    view.face_rot(f)
}

pub fn rot_vector(p: &Presentation, d: &DividingConfig) -> Result<Vec<i64>> {
    let view = ConfigView::new(p, d)?;
    Ok(p.cycles().iter().map(|c| rot(&view, &c.darts)).collect())
}

pub fn invariant_vectors(p: &Presentation, d: &DividingConfig) -> Result<InvariantVectors> {
    let cycles = p.cycles();
    let view = ConfigView::new(p, d)?;
    let rot = cycles.iter().map(|c| rot(&view, &c.darts)).collect();
    Ok(InvariantVectors {
        tb: cycles.iter().map(|c| p.tb(c)).collect(),
        rot,
        cycles,
    })
}

fn shifted(o: Occ, e: EdgeId, from: usize, by: isize) -> Occ {
    if o.edge == e && o.idx >= from {
        Occ {
            idx: (o.idx as isize + by) as usize,
            ..o
        }
    } else {
        o
    }
}

/// Add a stabilization of the given sign on `e`. Cycles crossing `e` from
/// end 0 to end 1 gain `sign` in rot; reversed cycles lose it.
pub fn stabilize(
    p: &Presentation,
    d: &DividingConfig,
    e: EdgeId,
    sign: Sign,
) -> Result<(Presentation, DividingConfig)> {
    ConfigView::new(p, d)?;
    let c = d.count(e);
    let s = c / 2;
    let bigon_side: u8 = if p.segment_sign(e, s) == sign { 1 } else { 0 };
    let other = 1 - bigon_side;

    let mut twists = p.twists().clone();
    *twists.get_mut(&e).unwrap() = twists[&e] - Twist(2);
    let q = p.with_twists(twists)?;

    let mut counts = d.counts().clone();
    counts.insert(e, c + 2);
    let mut chords: BTreeMap<Occ, Occ> = d
        .chords()
        .into_iter()
        .map(|(a, b)| (shifted(a, e, s, 2), shifted(b, e, s, 2)))
        .collect();
    let near = Occ::new(e, s, bigon_side);
    let far = Occ::new(e, s + 1, bigon_side);
    chords.insert(near, far);

    // push a finger of the neighbouring chord into the opposite face
    let layouts = crate::dividing::face_layouts(&q, &counts);
    let (a, b) = (Occ::new(e, s, other), Occ::new(e, s + 1, other));
    let layout = layouts
        .iter()
        .find(|l| l.occs.contains(&a))
        .expect("occurrence lies in a face");
    let len = layout.occs.len();
    let ia = layout.occs.iter().position(|&o| o == a).unwrap();
    let ib = layout.occs.iter().position(|&o| o == b).unwrap();
    let (first, second) = if (ia + 1) % len == ib {
        (ia, ib)
    } else {
        (ib, ia)
    };
    let fresh = |o: Occ| o.edge == e && (o.idx == s || o.idx == s + 1);
    let before = layout.occs[(first + len - 1) % len];
    let (r, r_next, r_far) = if !fresh(before) {
        (before, layout.occs[first], layout.occs[second])
    } else {
        (
            layout.occs[(second + 1) % len],
            layout.occs[second],
            layout.occs[first],
        )
    };
    let mut partner: BTreeMap<Occ, Occ> = BTreeMap::new();
    for (&x, &y) in &chords {
        partner.insert(x, y);
        partner.insert(y, x);
    }
    let y = partner[&r];
    partner.remove(&y);
    partner.insert(r, r_next);
    partner.insert(r_next, r);
    partner.insert(r_far, y);
    partner.insert(y, r_far);
    let pairs: Vec<(Occ, Occ)> = partner
        .iter()
        .filter(|(x, y)| x < y)
        .map(|(&x, &y)| (x, y))
        .collect();
    let nd = DividingConfig::new(counts, pairs)?;
    debug_assert!(crate::dividing::validate_config(&q, &nd).is_empty());
    Ok((q, nd))
}

/// Remove a trivial bigon of the given sign from `e`, nearest the middle.
pub fn destabilize(
    p: &Presentation,
    d: &DividingConfig,
    e: EdgeId,
    sign: Sign,
) -> Result<(Presentation, DividingConfig)> {
    ConfigView::new(p, d)?;
    let c = d.count(e);
    if c < 2 {
        return Err(Error::NoBigon(e));
    }
    let mid = (c - 2) / 2;
    let mut candidates: Vec<usize> = (0..c - 1).collect();
    candidates.sort_by_key(|&j| (j.abs_diff(mid), j));
    let found = candidates.into_iter().find_map(|j| {
        let u = p.segment_sign(e, j + 1);
        (0..2u8).find_map(|side| {
            let is_bigon = d.partner(Occ::new(e, j, side)) == Some(Occ::new(e, j + 1, side));
            let right_sign = (side == 1 && u == -sign) || (side == 0 && u == sign);
            (is_bigon && right_sign).then_some((j, side))
        })
    });
    let Some((j, side)) = found else {
        return Err(Error::NoBigon(e));
    };
    let other = 1 - side;
    let a = d.partner(Occ::new(e, j, other)).unwrap();
    let b = d.partner(Occ::new(e, j + 1, other)).unwrap();
    if a == Occ::new(e, j + 1, other) {
        return Err(Error::Isolating(e));
    }
    let gone = |o: Occ| o.edge == e && (o.idx == j || o.idx == j + 1);
    let mut pairs: Vec<(Occ, Occ)> = d
        .chords()
        .into_iter()
        .filter(|&(x, y)| !gone(x) && !gone(y))
        .map(|(x, y)| (shifted(x, e, j + 2, -2), shifted(y, e, j + 2, -2)))
        .collect();
    pairs.push((shifted(a, e, j + 2, -2), shifted(b, e, j + 2, -2)));
    let mut counts = d.counts().clone();
    counts.insert(e, c - 2);
    let mut twists = p.twists().clone();
    *twists.get_mut(&e).unwrap() = twists[&e] + Twist(2);
    let q = p.with_twists(twists).map_err(|_| Error::Isolating(e))?;
    let nd = DividingConfig::new(counts, pairs)?;
    if !crate::dividing::validate_config(&q, &nd).is_empty() {
        return Err(Error::Isolating(e));
    }
    Ok((q, nd))
}

pub fn connect_sum_invariants(
    tb1: i64,
    rot1: i64,
    tb2: i64,
    rot2: i64,
    sigma_v: Sign,
) -> (i64, i64) {
    (tb1 + tb2, rot1 + rot2 - sigma_v.value())
}

/// Oriented cycles; `fundamental` records that every edge is traversed
/// equally often in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSet {
    pub cycles: Vec<Cycle>,
    pub fundamental: bool,
}

impl CycleSet {
    pub fn new(cycles: Vec<Cycle>) -> Self {
        let fundamental = balance(&cycles).values().all(|&x| x == 0);
        CycleSet {
            cycles,
            fundamental,
        }
    }

    /// How many members contain each edge. Informational only.
    pub fn edge_multiplicities(&self) -> BTreeMap<EdgeId, usize> {
        let mut out = BTreeMap::new();
        for c in &self.cycles {
            for e in c.edge_key() {
                *out.entry(e).or_insert(0) += 1;
            }
        }
        out
    }
}

fn balance(cycles: &[Cycle]) -> BTreeMap<EdgeId, i64> {
    let mut out = BTreeMap::new();
    for c in cycles {
        for d in &c.darts {
            *out.entry(d.edge).or_insert(0) += if d.end == 0 { 1 } else { -1 };
        }
    }
    out
}

/// Signed sum of the stored rotations, against the canonical orientations.
pub fn total_rotation(enumeration: &[Cycle], rots: &[i64], set: &CycleSet) -> Result<i64> {
    let mut total = 0;
    for c in &set.cycles {
        let k = enumeration
            .iter()
            .position(|x| x.edge_key() == c.edge_key())
            .ok_or(Error::UnknownCycle)?;
        let canon = &enumeration[k];
        let e = canon.darts[0].edge;
        total += rots[k] * canon.direction_on(e) * c.direction_on(e);
    }
    Ok(total)
}

/// A pair of equal-sign vertices joined by three independent paths, in
/// positive contact order at `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaTriple {
    pub x: VertexId,
    pub y: VertexId,
    pub paths: [Path; 3],
}

impl ThetaTriple {
    /// `p_i` followed by `p_{i+1}` reversed.
    pub fn cycles(&self) -> [Vec<End>; 3] {
        std::array::from_fn(|i| {
            let mut darts = self.paths[i].darts.clone();
            darts.extend(self.paths[(i + 1) % 3].reversed().darts);
            darts
        })
    }

    pub fn total_rotation(&self, view: &ConfigView) -> i64 {
        self.cycles().iter().map(|c| rot(view, c)).sum()
    }

    /// 1 when the paths wind the opposite way around `y` in the contact
    /// plane, 0 when the same way.
    pub fn combinatorial_value(&self, p: &Presentation) -> i64 {
        let at_y: [End; 3] = std::array::from_fn(|i| self.paths[i].darts.last().unwrap().twin());
        if contact_positive(p, self.y, at_y) {
            0
        } else {
            1
        }
    }
}

/// Whether three ends at `v` appear in this cyclic order in the contact
/// plane.
fn contact_positive(p: &Presentation, v: VertexId, ends: [End; 3]) -> bool {
    let order = p.rotation().at(v);
    let pos = ends.map(|d| order.iter().position(|&x| x == d).expect("end at vertex"));
    let planar_ccw =
        (pos[0] < pos[1]) as u8 + (pos[1] < pos[2]) as u8 + (pos[2] < pos[0]) as u8 == 2;
    planar_ccw == (p.sign(v) == Sign::Plus)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub triple: ThetaTriple,
    pub value: i64,
}

pub fn find_theta_triple(p: &Presentation) -> Result<ThetaTriple> {
    let g = p.graph();
    let vs: Vec<VertexId> = g.vertices().collect();
    for (i, &x) in vs.iter().enumerate() {
        for &y in &vs[i + 1..] {
            if p.sign(x) != p.sign(y) {
                continue;
            }
            let Ok(paths) = g.menger_paths(x, y, 3) else {
                continue;
            };
            let [a, b, c]: [Path; 3] = paths.try_into().map_err(|_| Error::NotApplicable)?;
            let firsts = [a.darts[0], b.darts[0], c.darts[0]];
            let paths = if contact_positive(p, x, firsts) {
                [a, b, c]
            } else {
                [a, c, b]
            };
            return Ok(ThetaTriple { x, y, paths });
        }
    }
    Err(Error::NotApplicable)
}

pub fn orientation_obstruction(p: &Presentation, d: &DividingConfig) -> Result<Obstruction> {
    let triple = find_theta_triple(p)?;
    let view = ConfigView::new(p, d)?;
    let value = triple.total_rotation(&view);
    Ok(Obstruction { triple, value })
}

/// Faces of an embedding on the left of every dart of the walk.
pub fn left_faces(emb: &Embedding, darts: &[End]) -> BTreeSet<usize> {
    emb.left_region(darts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chord::Matching;
    use crate::dividing::samples::occ;
    use crate::dividing::{canonical_config, legal_moves, validate_config};
    use crate::embedding::samples::rot as rotation;
    use crate::graph::samples::*;
    use crate::presentation::samples::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn unknot(sign: i64, halves: i64) -> Presentation {
        let g = graph(1, &[(0, 0)]);
        let r = rotation(&g, &[(0, &[(0, 0), (0, 1)])]);
        Presentation::new(g, r, signs(&[sign]), twists(&[halves])).unwrap()
    }

    #[test]
    fn theta_tb_examples() {
        assert_eq!(
            tb_vector(&theta_p(&[1, 1], &[-2, -2, -2])),
            vec![-2, -2, -2]
        );
        assert_eq!(
            tb_vector(&theta_p(&[1, -1], &[-1, -1, -3])),
            vec![-1, -2, -2]
        );
    }

    #[test]
    fn unknot_invariants() {
        let p = unknot(1, -2);
        let d = canonical_config(&p).unwrap();
        assert_eq!(rot_vector(&p, &d).unwrap(), vec![0]);
        let (q, e) = stabilize(&p, &d, EdgeId(0), Sign::Plus).unwrap();
        assert_eq!(tb_vector(&q), vec![-2]);
        let c = &q.cycles()[0];
        assert_eq!(rot_vector(&q, &e).unwrap(), vec![c.direction_on(EdgeId(0))]);
        let (q2, e2) = stabilize(&q, &e, EdgeId(0), Sign::Minus).unwrap();
        assert_eq!(rot_vector(&q2, &e2).unwrap(), vec![0]);
        assert_eq!(tb_vector(&q2), vec![-3]);
    }

    #[test]
    fn stabilize_then_destabilize() {
        let p = theta_p(&[1, -1], &[-1, -3, -1]);
        let d = canonical_config(&p).unwrap();
        for e in p.graph().edge_ids() {
            for s in [Sign::Plus, Sign::Minus] {
                let (q, x) = stabilize(&p, &d, e, s).unwrap();
                assert_eq!(destabilize(&q, &x, e, s).unwrap(), (p.clone(), d.clone()));
            }
        }
        assert_eq!(
            destabilize(&p, &d, EdgeId(0), Sign::Plus),
            Err(Error::NoBigon(EdgeId(0)))
        );
    }

    #[test]
    fn isolating_destabilization() {
        // the face between e1 and e2 sees only the two points of e1
        let p = theta_p(&[1, 1], &[-2, -2, 0]);
        let d = canonical_config(&p).unwrap();
        let r: Vec<_> = [Sign::Plus, Sign::Minus]
            .map(|s| destabilize(&p, &d, EdgeId(1), s))
            .into();
        assert!(r.contains(&Err(Error::Isolating(EdgeId(1)))), "{r:?}");
        assert!(r.iter().all(|x| x.is_err()));
    }

    #[test]
    fn both_disks_agree() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..40 {
            let tw: Vec<i64> = (0..6).map(|_| -2 * rng.gen_range(1..3)).collect();
            let p = k4_p(
                &[1, -1, 1, 1],
                &tw.iter()
                    .enumerate()
                    .map(|(i, &t)| if [0, 3, 4].contains(&i) { t + 1 } else { t })
                    .collect::<Vec<_>>(),
            );
            let mut d = canonical_config(&p).unwrap();
            for _ in 0..5 {
                let moves = legal_moves(&p, &d).unwrap();
                if moves.is_empty() {
                    break;
                }
                let (a, s) = moves[rng.gen_range(0..moves.len())];
                d = crate::dividing::bypass_rewrite(&p, &d, a, s).unwrap();
            }
            let view = ConfigView::new(&p, &d).unwrap();
            for c in p.cycles() {
                let l = rot_of_cycle(&view, &c.darts);
                assert_eq!(l, rot_of_cycle_right(&view, &c.darts));
                assert_eq!(l, -rot_of_cycle(&view, &c.reversed().darts));
                let tb = p.tb(&c);
                assert_eq!(tb, tb_from_gamma(&d, &c));
                assert!(tb + l.abs() <= -1, "bennequin {tb} {l}");
                assert_eq!((l - tb - 1).rem_euclid(2), 0);
            }
        }
    }

    #[test]
    fn face_boundary_agrees_with_chord_regions() {
        let p = theta_p(&[1, 1], &[-4, -2, -2]);
        let d = canonical_config(&p).unwrap();
        let view = ConfigView::new(&p, &d).unwrap();
        for (f, face) in p.embedding().faces.iter().enumerate() {
            assert_eq!(
                rot_of_cycle(&view, &face.darts),
                rot_of_face_boundary(&view, f)
            );
        }
    }

    #[test]
    fn connect_sum_examples() {
        assert_eq!(connect_sum_invariants(-1, 0, -1, 0, Sign::Plus), (-2, -1));
        assert_eq!(connect_sum_invariants(-1, 0, -1, 0, Sign::Minus), (-2, 1));
        assert_eq!(connect_sum_invariants(-2, 1, -1, 0, Sign::Plus), (-3, 0));
    }

    #[test]
    fn theta_dichotomy() {
        let same = theta_p(&[1, 1], &[-2, -2, -2]);
        let d = canonical_config(&same).unwrap();
        let ob = orientation_obstruction(&same, &d).unwrap();
        assert_eq!(ob.value, 1);
        assert_eq!(ob.triple.combinatorial_value(&same), 1);
        let flipped = same.flipped();
        let view = ConfigView::new(&flipped, &d).unwrap();
        assert_eq!(ob.triple.total_rotation(&view), -1);

        let mixed = theta_p(&[1, -1], &[-1, -1, -1]);
        assert_eq!(find_theta_triple(&mixed), Err(Error::NotApplicable));
        let paths = mixed
            .graph()
            .menger_paths(VertexId(0), VertexId(1), 3)
            .unwrap();
        let [a, b, c]: [Path; 3] = paths.try_into().unwrap();
        let firsts = [a.darts[0], b.darts[0], c.darts[0]];
        let paths = if contact_positive(&mixed, VertexId(0), firsts) {
            [a, b, c]
        } else {
            [a, c, b]
        };
        let t = ThetaTriple {
            x: VertexId(0),
            y: VertexId(1),
            paths,
        };
        let d = canonical_config(&mixed).unwrap();
        let view = ConfigView::new(&mixed, &d).unwrap();
        assert_eq!(t.total_rotation(&view), 0);
        assert_eq!(t.combinatorial_value(&mixed), 0);
    }

    #[test]
    fn total_rotation_of_sets() {
        let p = theta_p(&[1, 1], &[-2, -2, -2]);
        let d = canonical_config(&p).unwrap();
        let cycles = p.cycles();
        let rots = rot_vector(&p, &d).unwrap();
        assert_eq!(
            total_rotation(&cycles, &rots, &CycleSet::new(vec![])),
            Ok(0)
        );
        let t = find_theta_triple(&p).unwrap();
        let set = CycleSet::new(
            t.cycles()
                .iter()
                .map(|c| Cycle { darts: c.clone() })
                .collect(),
        );
        assert!(set.fundamental);
        assert_eq!(
            set.edge_multiplicities()
                .values()
                .copied()
                .collect::<Vec<_>>(),
            vec![2, 2, 2]
        );
        assert_eq!(total_rotation(&cycles, &rots, &set), Ok(1));
        let shifted = ThetaTriple {
            paths: [t.paths[1].clone(), t.paths[2].clone(), t.paths[0].clone()],
            ..t.clone()
        };
        let set2 = CycleSet::new(
            shifted
                .cycles()
                .iter()
                .map(|c| Cycle { darts: c.clone() })
                .collect(),
        );
        assert_eq!(total_rotation(&cycles, &rots, &set2), Ok(1));
        let alien = CycleSet::new(vec![Cycle {
            darts: vec![End::new(EdgeId(9), 0)],
        }]);
        assert_eq!(
            total_rotation(&cycles, &rots, &alien),
            Err(Error::UnknownCycle)
        );
    }

    /// Two faces sharing an edge without dividing points; the outer cycle
    /// is their connected sum at a vertex.
    fn wedge(n1: usize, n2: usize, sign: i64) -> Presentation {
        theta_p(&[sign, sign], &[-2 * n1 as i64, 0, -2 * n2 as i64])
    }

    #[test]
    fn connect_sum_is_exhaustively_consistent() {
        let mut checked = 0;
        for n1 in 1..=3 {
            for n2 in 1..=3 {
                for sign in [1, -1] {
                    let p = wedge(n1, n2, sign);
                    let base = canonical_config(&p).unwrap();
                    let view = ConfigView::new(&p, &base).unwrap();
                    let emb = p.embedding();
                    let f1 = emb.face_of(End::new(EdgeId(0), 0));
                    let f2 = emb.face_of(End::new(EdgeId(1), 0));
                    let outer = (0..3).find(|f| *f != f1 && *f != f2).unwrap();
                    let sizes = [
                        view.layouts[f1].len(),
                        view.layouts[f2].len(),
                        view.layouts[outer].len(),
                    ];
                    for m1 in Matching::all(sizes[0] / 2) {
                        for m2 in Matching::all(sizes[1] / 2) {
                            for m3 in Matching::all(sizes[2] / 2) {
                                let d1 = view.with_face_matching(f1, &m1);
                                let v1 = ConfigView::new(&p, &d1);
                                let Ok(v1) = v1.map(|v| v.with_face_matching(f2, &m2)) else {
                                    continue;
                                };
                                let Ok(v2) = ConfigView::new(&p, &v1)
                                    .map(|v| v.with_face_matching(outer, &m3))
                                else {
                                    continue;
                                };
                                if !validate_config(&p, &v2).is_empty() {
                                    continue;
                                }
                                let view = ConfigView::new(&p, &v2).unwrap();
                                let c1 = emb.faces[f1].darts.clone();
                                let c2 = emb.faces[f2].darts.clone();
                                let mut both = BTreeSet::from([f1, f2]);
                                let outer_cycle: Vec<End> = emb.faces[outer]
                                    .darts
                                    .iter()
                                    .map(|d| d.twin())
                                    .rev()
                                    .collect();
                                assert_eq!(
                                    emb.left_region(&outer_cycle),
                                    std::mem::take(&mut both).into_iter().collect()
                                );
                                let (tb1, r1) =
                                    (p.tb(&Cycle { darts: c1.clone() }), rot_of_cycle(&view, &c1));
                                let (tb2, r2) =
                                    (p.tb(&Cycle { darts: c2.clone() }), rot_of_cycle(&view, &c2));
                                let direct = (
                                    p.tb(&Cycle {
                                        darts: outer_cycle.clone(),
                                    }),
                                    rot_of_cycle(&view, &outer_cycle),
                                );
                                assert_eq!(
                                    connect_sum_invariants(
                                        tb1,
                                        r1,
                                        tb2,
                                        r2,
                                        Sign::from_value(sign)
                                    ),
                                    direct
                                );
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 100, "{checked}");
    }

    fn random_p0(rng: &mut StdRng) -> Presentation {
        let samples = [
            (
                theta_p as fn(&[i64], &[i64]) -> Presentation,
                2usize,
                3usize,
            ),
            (k4_p, 4, 6),
            (delta2_p, 3, 6),
        ];
        loop {
            let (make, nv, ne) = samples[rng.gen_range(0..samples.len())];
            let sg: Vec<i64> = (0..nv)
                .map(|_| if rng.gen_bool(0.5) { 1 } else { -1 })
                .collect();
            let ends: Vec<[usize; 2]> = match nv {
                2 => vec![[0, 1]; 3],
                4 => vec![[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]],
                _ => vec![[0, 1], [0, 1], [1, 2], [1, 2], [0, 2], [0, 2]],
            };
            let tw: Vec<i64> = (0..ne)
                .map(|i| {
                    let odd = sg[ends[i][0]] != sg[ends[i][1]];
                    let whole = -2 * rng.gen_range(0..=3);
                    if odd {
                        whole - 1
                    } else {
                        whole
                    }
                })
                .collect();
            let p = make(&sg, &tw);
            if canonical_config(&p).is_ok() {
                return p;
            }
        }
    }

    #[test]
    fn rot_survives_reorientation() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..40 {
            let p = random_p0(&mut rng);
            let d = canonical_config(&p).unwrap();
            assert_eq!(
                rot_vector(&p.reoriented(), &d.reoriented()).unwrap(),
                rot_vector(&p, &d).unwrap()
            );
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn stabilization_bookkeeping(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let p = random_p0(&mut rng);
            let d = canonical_config(&p).unwrap();
            let cycles = p.cycles();
            let mut tb = tb_vector(&p);
            let mut rots = rot_vector(&p, &d).unwrap();
            let (mut q, mut x) = (p.clone(), d.clone());
            for _ in 0..rng.gen_range(0..=20) {
                let e = EdgeId(rng.gen_range(0..p.graph().edge_count() as u32));
                let s = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
                (q, x) = stabilize(&q, &x, e, s).unwrap();
                for (k, c) in cycles.iter().enumerate() {
                    if c.contains_edge(e) {
                        tb[k] -= 1;
                        rots[k] += s.value() * c.direction_on(e);
                    }
                }
            }
            prop_assert_eq!(tb_vector(&q), tb);
            prop_assert_eq!(rot_vector(&q, &x).unwrap(), rots);
        }
    }

    #[test]
    fn finger_keeps_occurrence_helpers_consistent() {
        assert_eq!(occ(1, 2, 0).other_side(), occ(1, 2, 1));
    }
}
