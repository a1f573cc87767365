//! Dividing curves on the sphere rel the graph, as chord diagrams glued
//! across edges.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::chord::{Matching, Side};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, End};
use crate::presentation::{Presentation, Sign, Twist};

/// One side of a dividing point. Point `idx` on `edge` is counted from
/// end 0; `side` 0 is the face left of the dart leaving end 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occ {
    pub edge: EdgeId,
    pub idx: usize,
    pub side: u8,
}

impl Occ {
    pub fn new(edge: EdgeId, idx: usize, side: u8) -> Self {
        Occ { edge, idx, side }
    }

    pub fn other_side(self) -> Occ {
        Occ {
            side: 1 - self.side,
            ..self
        }
    }
}

impl fmt::Display for Occ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}.{}.{}",
            self.edge,
            self.idx,
            if self.side == 0 { 'l' } else { 'r' }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DividingConfig {
    counts: BTreeMap<EdgeId, usize>,
    partner: BTreeMap<Occ, Occ>,
}

impl DividingConfig {
    pub fn new(
        counts: BTreeMap<EdgeId, usize>,
        chords: impl IntoIterator<Item = (Occ, Occ)>,
    ) -> Result<Self> {
        let mut partner = BTreeMap::new();
        for (a, b) in chords {
            for o in [a, b] {
                if counts.get(&o.edge).is_none_or(|&c| o.idx >= c) || o.side > 1 {
                    return Err(Error::InvalidConfig(format!("no point {o}")));
                }
            }
            if a == b || partner.contains_key(&a) || partner.contains_key(&b) {
                return Err(Error::InvalidConfig(format!(
                    "chord {a} {b} reuses an endpoint"
                )));
            }
            partner.insert(a, b);
            partner.insert(b, a);
        }
        Ok(DividingConfig { counts, partner })
    }

    pub fn count(&self, e: EdgeId) -> usize {
        self.counts.get(&e).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<EdgeId, usize> {
        &self.counts
    }

    pub fn partner(&self, o: Occ) -> Option<Occ> {
        self.partner.get(&o).copied()
    }

    pub fn chords(&self) -> Vec<(Occ, Occ)> {
        self.partner
            .iter()
            .filter(|(a, b)| a < b)
            .map(|(&a, &b)| (a, b))
            .collect()
    }

    pub fn total_points(&self) -> usize {
        self.counts.values().sum()
    }

    /// The same curves described with the opposite coorientation.
    pub fn reoriented(&self) -> DividingConfig {
        DividingConfig {
            counts: self.counts.clone(),
            partner: self
                .partner
                .iter()
                .map(|(a, b)| (a.other_side(), b.other_side()))
                .collect(),
        }
    }

    /// Number of closed curves, assuming every occurrence is matched.
    pub fn circle_count(&self) -> usize {
        let mut seen: BTreeSet<(EdgeId, usize)> = BTreeSet::new();
        let mut circles = 0;
        for (&e, &c) in &self.counts {
            for idx in 0..c {
                if seen.contains(&(e, idx)) {
                    continue;
                }
                circles += 1;
                let start = Occ::new(e, idx, 0);
                let mut o = start;
                loop {
                    seen.insert((o.edge, o.idx));
                    let Some(q) = self.partner(o) else { break };
                    o = q.other_side();
                    if o == start {
                        break;
                    }
                }
            }
        }
        circles
    }
}

pub fn twist_from_gamma(d: &DividingConfig) -> BTreeMap<EdgeId, Twist> {
    d.counts
        .iter()
        .map(|(&e, &c)| (e, Twist(-(c as i64))))
        .collect()
}

pub fn counts_of(p: &Presentation) -> Result<BTreeMap<EdgeId, usize>> {
    p.require_p0()?;
    Ok(p.twists()
        .iter()
        .map(|(&e, t)| (e, t.crossings()))
        .collect())
}

/// Points along a face walk and the sign of the boundary piece that follows
/// the first of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLayout {
    pub occs: Vec<Occ>,
    pub first_sign: Sign,
}

impl FaceLayout {
    pub fn len(&self) -> usize {
        self.occs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occs.is_empty()
    }

    /// Sign of boundary interval `i`, running from point `i` to `i + 1`.
    pub fn interval_sign(&self, i: usize) -> Sign {
        if i.is_multiple_of(2) {
            self.first_sign
        } else {
            -self.first_sign
        }
    }
}

fn dart_occs(d: End, count: usize) -> Vec<Occ> {
    if d.end == 0 {
        (0..count).map(|i| Occ::new(d.edge, i, 0)).collect()
    } else {
        (0..count).rev().map(|i| Occ::new(d.edge, i, 1)).collect()
    }
}

pub fn face_layouts(p: &Presentation, counts: &BTreeMap<EdgeId, usize>) -> Vec<FaceLayout> {
    p.embedding()
        .faces
        .iter()
        .map(|f| {
            let mut occs = Vec::new();
            let mut first_sign = None;
            for &d in &f.darts {
                let c = counts.get(&d.edge).copied().unwrap_or(0);
                if first_sign.is_none() && c > 0 {
                    // piece after the first point met along this dart
                    let seg = if d.end == 0 { 1 } else { c - 1 };
                    first_sign = Some(p.segment_sign(d.edge, seg));
                }
                occs.extend(dart_occs(d, c));
            }
            FaceLayout {
                occs,
                first_sign: first_sign.unwrap_or(Sign::Plus),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfigDiagnostic {
    CountMismatch {
        edge: EdgeId,
        expected: usize,
        found: usize,
    },
    Unmatched(Occ),
    AcrossFaces(Occ, Occ),
    Crossing {
        face: usize,
    },
    Disconnected {
        circles: usize,
    },
    SparseFace {
        face: usize,
        points: usize,
    },
}

impl fmt::Display for ConfigDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigDiagnostic::CountMismatch {
                edge,
                expected,
                found,
            } => {
                write!(
                    f,
                    "edge {edge} needs {expected} dividing points, found {found}"
                )
            }
            ConfigDiagnostic::Unmatched(o) => write!(f, "point {o} has no chord"),
            ConfigDiagnostic::AcrossFaces(a, b) => write!(f, "chord {a} {b} joins different faces"),
            ConfigDiagnostic::Crossing { face } => write!(f, "crossing chords in face {face}"),
            ConfigDiagnostic::Disconnected { circles } => {
                write!(f, "disconnected dividing set: {circles} circles")
            }
            ConfigDiagnostic::SparseFace { face, points } => {
                write!(f, "face {face} meets the dividing set in {points} points")
            }
        }
    }
}

pub fn validate_config(p: &Presentation, d: &DividingConfig) -> Vec<ConfigDiagnostic> {
    let mut out = Vec::new();
    for (&e, t) in p.twists() {
        let expected = if t.0 <= 0 { t.crossings() } else { usize::MAX };
        let found = d.count(e);
        if expected != found {
            out.push(ConfigDiagnostic::CountMismatch {
                edge: e,
                expected,
                found,
            });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let layouts = face_layouts(p, &d.counts);
    let mut face_of: BTreeMap<Occ, (usize, usize)> = BTreeMap::new();
    for (f, l) in layouts.iter().enumerate() {
        for (i, &o) in l.occs.iter().enumerate() {
            face_of.insert(o, (f, i));
        }
    }
    let mut complete = true;
    for &o in face_of.keys() {
        if d.partner(o).is_none() {
            out.push(ConfigDiagnostic::Unmatched(o));
            complete = false;
        }
    }
    for (a, b) in d.chords() {
        if face_of[&a].0 != face_of[&b].0 {
            out.push(ConfigDiagnostic::AcrossFaces(a, b));
            complete = false;
        }
    }
    if complete {
        for (f, l) in layouts.iter().enumerate() {
            let partner: Vec<usize> = l.occs.iter().map(|o| face_of[&d.partner[o]].1).collect();
            if Matching::new(partner).is_err() {
                out.push(ConfigDiagnostic::Crossing { face: f });
            }
        }
        let circles = d.circle_count();
        if circles != 1 && d.total_points() > 0 {
            out.push(ConfigDiagnostic::Disconnected { circles });
        }
    }
    for (f, l) in layouts.iter().enumerate() {
        if l.len() < 2 {
            out.push(ConfigDiagnostic::SparseFace {
                face: f,
                points: l.len(),
            });
        }
    }
    out
}

/// A configuration read against its presentation: face layouts and the
/// position of every occurrence.
#[derive(Clone, Debug)]
pub struct ConfigView<'a> {
    pub p: &'a Presentation,
    pub d: &'a DividingConfig,
    pub layouts: Vec<FaceLayout>,
    pos: BTreeMap<Occ, (usize, usize)>,
}

impl<'a> ConfigView<'a> {
    pub fn new(p: &'a Presentation, d: &'a DividingConfig) -> Result<Self> {
        let diags = validate_config(p, d);
        if let Some(x) = diags.first() {
            return Err(Error::InvalidConfig(x.to_string()));
        }
        let layouts = face_layouts(p, &d.counts);
        let mut pos = BTreeMap::new();
        for (f, l) in layouts.iter().enumerate() {
            for (i, &o) in l.occs.iter().enumerate() {
                pos.insert(o, (f, i));
            }
        }
        Ok(ConfigView { p, d, layouts, pos })
    }

    pub fn position(&self, o: Occ) -> (usize, usize) {
        self.pos[&o]
    }

    pub fn face_count(&self) -> usize {
        self.layouts.len()
    }

    pub fn face_matching(&self, f: usize) -> Matching {
        let partner = self.layouts[f]
            .occs
            .iter()
            .map(|o| self.pos[&self.d.partner[o]].1)
            .collect();
        Matching::new(partner).expect("validated configuration")
    }

    /// How the points of face `f` are paired by the dividing set outside it.
    pub fn outer_matching(&self, f: usize) -> Vec<usize> {
        self.layouts[f]
            .occs
            .iter()
            .map(|&o| {
                let mut q = o.other_side();
                while self.pos[&q].0 != f {
                    q = self.d.partner[&q].other_side();
                }
                self.pos[&q].1
            })
            .collect()
    }

    pub fn face_rot(&self, f: usize) -> i64 {
        self.face_matching(f).rot(self.layouts[f].first_sign)
    }

    /// Replace the chords of face `f`.
    pub fn with_face_matching(&self, f: usize, m: &Matching) -> DividingConfig {
        let occs = &self.layouts[f].occs;
        let mut partner = self.d.partner.clone();
        for (i, &o) in occs.iter().enumerate() {
            partner.insert(o, occs[m.partner(i)]);
        }
        DividingConfig {
            counts: self.d.counts.clone(),
            partner,
        }
    }
}

/// Arc of attachment inside a face, from the chord at `points[0]` across
/// the chord at `points[1]` to the chord at `points[2]` (face positions).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BypassArc {
    pub face: usize,
    pub points: [usize; 3],
}

impl BypassArc {
    pub fn consecutive(face: usize, at: usize, len: usize) -> Self {
        BypassArc {
            face,
            points: [at % len, (at + 1) % len, (at + 2) % len],
        }
    }
}

impl fmt::Display for BypassArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [s, m, t] = self.points;
        write!(f, "face {} points {s} {m} {t}", self.face)
    }
}

/// A face rewrite is legal on the sphere when no loop pinches off and the
/// glued curve stays a single circle. Without an outer matching only the
/// first condition applies.
pub fn legal_face_rewrite(
    m: &Matching,
    outer: Option<&[usize]>,
    x: [usize; 3],
    side: Side,
) -> Result<Option<Matching>> {
    let Some(r) = m.rewrite_arc(x, side)? else {
        return Ok(None);
    };
    Ok(outer.is_none_or(|o| r.circles_with(o) == 1).then_some(r))
}

pub fn bypass_rewrite(
    p: &Presentation,
    d: &DividingConfig,
    arc: BypassArc,
    side: Side,
) -> Result<DividingConfig> {
    let view = ConfigView::new(p, d)?;
    let n = view
        .layouts
        .get(arc.face)
        .map(|l| l.len())
        .ok_or_else(|| Error::MalformedArc(format!("no face {}", arc.face)))?;
    if n < 4 {
        return Err(Error::MalformedArc(format!(
            "{arc} in a face with {n} points"
        )));
    }
    let m = view.face_matching(arc.face);
    let outer = view.outer_matching(arc.face);
    let r = legal_face_rewrite(&m, Some(&outer), arc.points, side)?.ok_or(Error::IllegalBypass)?;
    Ok(view.with_face_matching(arc.face, &r))
}

pub fn legal_moves(p: &Presentation, d: &DividingConfig) -> Result<Vec<(BypassArc, Side)>> {
    let view = ConfigView::new(p, d)?;
    let mut out = Vec::new();
    for f in 0..view.face_count() {
        let n = view.layouts[f].len();
        if n < 4 {
            continue;
        }
        let m = view.face_matching(f);
        let outer = view.outer_matching(f);
        for at in 0..n {
            let arc = BypassArc::consecutive(f, at, n);
            for side in [Side::Front, Side::Behind] {
                if legal_face_rewrite(&m, Some(&outer), arc.points, side)?.is_some() {
                    out.push((arc, side));
                }
            }
        }
    }
    Ok(out)
}

pub const DEFAULT_SEARCH_BUDGET: usize = 2_000_000;

pub fn canonical_config(p: &Presentation) -> Result<DividingConfig> {
    canonical_config_with_budget(p, DEFAULT_SEARCH_BUDGET)
}

/// Deterministic configuration: faces in order, the least open point of a
/// face paired with the farthest admissible partner first, backtracking
/// whenever a chord would close the curve early.
pub fn canonical_config_with_budget(p: &Presentation, budget: usize) -> Result<DividingConfig> {
    let counts = counts_of(p)?;
    check_no_free_cycle(p, &counts)?;
    let layouts = face_layouts(p, &counts);
    for (f, l) in layouts.iter().enumerate() {
        if l.len() < 2 {
            return Err(Error::Unrealizable(format!(
                "face {f} meets the dividing set in {} points",
                l.len()
            )));
        }
    }
    let mut offset = BTreeMap::new();
    let mut total = 0;
    for (&e, &c) in &counts {
        offset.insert(e, total);
        total += c;
    }
    let mut search = Search {
        layouts: &layouts,
        point: |o: Occ| offset[&o.edge] + o.idx,
        uf: UndoUnionFind::new(total),
        chords: Vec::new(),
        steps: 0,
        budget,
        total,
    };
    let mut tasks: Vec<(usize, usize, usize)> = (0..layouts.len())
        .rev()
        .map(|f| (f, 0, layouts[f].len()))
        .collect();
    if !search.run(&mut tasks)? {
        return Err(Error::Unrealizable(
            "no connected dividing set exists".into(),
        ));
    }
    let chords: Vec<(Occ, Occ)> = search.chords.clone();
    DividingConfig::new(counts, chords)
}

/// A cycle of edges without dividing points would have tb = 0.
fn check_no_free_cycle(p: &Presentation, counts: &BTreeMap<EdgeId, usize>) -> Result<()> {
    let vs: Vec<_> = p.graph().vertices().collect();
    let index: BTreeMap<_, _> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = UndoUnionFind::new(vs.len());
    for (e, [a, b]) in p.graph().edges() {
        if counts[&e] == 0 && !uf.union(index[&a], index[&b]) {
            return Err(Error::Unrealizable(format!(
                "a cycle through {e} misses the dividing set"
            )));
        }
    }
    Ok(())
}

struct Search<'l, F: Fn(Occ) -> usize> {
    layouts: &'l [FaceLayout],
    point: F,
    uf: UndoUnionFind,
    chords: Vec<(Occ, Occ)>,
    steps: usize,
    budget: usize,
    total: usize,
}

impl<F: Fn(Occ) -> usize> Search<'_, F> {
    fn run(&mut self, tasks: &mut Vec<(usize, usize, usize)>) -> Result<bool> {
        let Some((f, lo, hi)) = tasks.pop() else {
            return Ok(true);
        };
        if lo >= hi {
            let ok = self.run(tasks)?;
            if !ok {
                tasks.push((f, lo, hi));
            }
            return Ok(ok);
        }
        let layouts = self.layouts;
        let occs = &layouts[f].occs;
        let mut q = hi - 1;
        loop {
            self.steps += 1;
            if self.steps > self.budget {
                return Err(Error::NoConfiguration(self.budget));
            }
            let (a, b) = (occs[lo], occs[q]);
            let (pa, pb) = ((self.point)(a), (self.point)(b));
            let last = self.chords.len() + 1 == self.total;
            let mark = self.uf.mark();
            if self.uf.union(pa, pb) || last {
                self.chords.push((a, b));
                tasks.push((f, q + 1, hi));
                tasks.push((f, lo + 1, q));
                if self.run(tasks)? {
                    return Ok(true);
                }
                tasks.pop();
                tasks.pop();
                self.chords.pop();
            }
            self.uf.undo(mark);
            if q < lo + 3 {
                break;
            }
            q -= 2;
        }
        tasks.push((f, lo, hi));
        Ok(false)
    }
}

struct UndoUnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    log: Vec<(usize, usize)>,
}

impl UndoUnionFind {
    fn new(n: usize) -> Self {
        UndoUnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            log: Vec::new(),
        }
    }

    fn find(&self, mut a: usize) -> usize {
        while self.parent[a] != a {
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.log.push((ra, rb));
        true
    }

    fn mark(&self) -> usize {
        self.log.len()
    }

    fn undo(&mut self, mark: usize) {
        while self.log.len() > mark {
            let (ra, rb) = self.log.pop().unwrap();
            self.parent[rb] = rb;
            self.size[ra] -= self.size[rb];
        }
    }
}


#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;
    use crate::graph::samples::*;
    use crate::presentation::samples::*;

    #[test]
    fn theta_minimal_is_forced() {
        let p = theta_p(&[1, -1], &[-1, -1, -1]);
        let d = canonical_config(&p).unwrap();
        assert!(validate_config(&p, &d).is_empty());
        assert_eq!(d.chords().len(), 3);
        assert_eq!(d.circle_count(), 1);
        assert_eq!(twist_from_gamma(&d), p.twists().clone());
    }

    #[test]
    fn crossing_and_disconnected_are_reported() {
        // one loop with four points: faces inside and outside
        let g = graph(1, &[(0, 0)]);
        let r = crate::embedding::samples::rot(&g, &[(0, &[(0, 0), (0, 1)])]);
        let p = Presentation::new(g, r, signs(&[1]), twists(&[-4])).unwrap();
        let d = canonical_config(&p).unwrap();
        assert!(validate_config(&p, &d).is_empty());
        let counts = d.counts().clone();
        let crossing = DividingConfig::new(
            counts.clone(),
            [
                (occ(0, 0, 0), occ(0, 2, 0)),
                (occ(0, 1, 0), occ(0, 3, 0)),
                (occ(0, 0, 1), occ(0, 1, 1)),
                (occ(0, 2, 1), occ(0, 3, 1)),
            ],
        )
        .unwrap();
        assert!(
            validate_config(&p, &crossing).contains(&ConfigDiagnostic::Crossing { face: 0 })
                || validate_config(&p, &crossing).contains(&ConfigDiagnostic::Crossing { face: 1 })
        );
        let split = DividingConfig::new(
            counts,
            [
                (occ(0, 0, 0), occ(0, 1, 0)),
                (occ(0, 2, 0), occ(0, 3, 0)),
                (occ(0, 0, 1), occ(0, 1, 1)),
                (occ(0, 2, 1), occ(0, 3, 1)),
            ],
        )
        .unwrap();
        assert_eq!(
            validate_config(&p, &split),
            vec![ConfigDiagnostic::Disconnected { circles: 2 }]
        );
    }

    #[test]
    fn canonical_is_deterministic_and_valid() {
        for tw in [[-1, -1, -1], [-3, -1, -1], [-3, -3, -1], [-1, -5, -3]] {
            let p = theta_p(&[1, -1], &tw);
            let a = canonical_config(&p).unwrap();
            assert_eq!(canonical_config(&p).unwrap(), a);
            assert!(validate_config(&p, &a).is_empty(), "{tw:?}");
        }
        for tw in [[-2, -2, -2, -2, -2, -2], [-4, -2, -2, -2, -2, -4]] {
            let p = k4_p(&[1, 1, 1, 1], &tw);
            let a = canonical_config(&p).unwrap();
            assert!(validate_config(&p, &a).is_empty(), "{tw:?}");
        }
    }

    #[test]
    fn free_cycle_is_unrealizable() {
        let p = theta_p(&[1, 1], &[0, 0, -2]);
        assert!(matches!(canonical_config(&p), Err(Error::Unrealizable(_))));
    }

    #[test]
    fn moves_keep_configs_valid() {
        let p = theta_p(&[1, -1], &[-3, -3, -1]);
        let d = canonical_config(&p).unwrap();
        let moves = legal_moves(&p, &d).unwrap();
        assert!(!moves.is_empty());
        for (arc, side) in moves {
            let r = bypass_rewrite(&p, &d, arc, side).unwrap();
            assert!(validate_config(&p, &r).is_empty());
            assert_eq!(r.counts(), d.counts());
        }
    }

    #[test]
    fn legal_sides_match_brute_force() {
        let p = theta_p(&[1, -1], &[-3, -3, -1]);
        let d = canonical_config(&p).unwrap();
        let view = ConfigView::new(&p, &d).unwrap();
        let listed: BTreeSet<(BypassArc, Side)> =
            legal_moves(&p, &d).unwrap().into_iter().collect();
        for f in 0..view.face_count() {
            let n = view.layouts[f].len();
            if n < 4 {
                continue;
            }
            let m = view.face_matching(f);
            for at in 0..n {
                for side in [Side::Front, Side::Behind] {
                    let arc = BypassArc::consecutive(f, at, n);
                    let ok = m.rewrite(at, side).is_some_and(|r| {
                        validate_config(&p, &view.with_face_matching(f, &r)).is_empty()
                    });
                    assert_eq!(ok, listed.contains(&(arc, side)));
                }
            }
        }
    }
}
