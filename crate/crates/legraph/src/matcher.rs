//! Equating two dividing configurations by bypass moves, face by face.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::chord::{Matching, Side};
use crate::dividing::{bypass_rewrite, legal_face_rewrite, BypassArc, ConfigView, DividingConfig};
use crate::error::{Error, Result};
use crate::invariants::rot_vector;
use crate::presentation::{ribbon_equal, ribbon_invariant, Presentation, RibbonMode, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Which {
    First,
    Second,
}

impl Which {
    fn index(self) -> usize {
        match self {
            Which::First => 0,
            Which::Second => 1,
        }
    }

    fn of(i: usize) -> Which {
        if i == 0 {
            Which::First
        } else {
            Which::Second
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    pub which: Which,
    pub arc: BypassArc,
    pub side: Side,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = match self.which {
            Which::First => "first",
            Which::Second => "second",
        };
        write!(f, "{w} {} {}", self.arc, self.side)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoveSequence {
    pub moves: Vec<Move>,
}

impl MoveSequence {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Apply the moves to two face matchings, checking each for legality.
    pub fn replay_face(
        &self,
        m: [&Matching; 2],
        outer: [Option<&[usize]>; 2],
    ) -> Result<[Matching; 2]> {
        let mut cur = [m[0].clone(), m[1].clone()];
        for mv in &self.moves {
            let w = mv.which.index();
            cur[w] = legal_face_rewrite(&cur[w], outer[w], mv.arc.points, mv.side)?
                .ok_or(Error::IllegalBypass)?;
        }
        Ok(cur)
    }

    /// Apply the moves to two configurations of the same presentation.
    pub fn replay(
        &self,
        p: &Presentation,
        d1: &DividingConfig,
        d2: &DividingConfig,
    ) -> Result<(DividingConfig, DividingConfig)> {
        let mut cur = [d1.clone(), d2.clone()];
        for mv in &self.moves {
            let w = mv.which.index();
            cur[w] = bypass_rewrite(p, &cur[w], mv.arc, mv.side)?;
        }
        let [a, b] = cur;
        Ok((a, b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strategy {
    /// The inductive schedule: matched pairs, adjacent pairs, alternating
    /// attachments.
    Schedule,
    /// Breadth-first search over the face's matchings.
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceMatch {
    pub moves: MoveSequence,
    pub strategy: Strategy,
    /// Longest run of paired attachments in the alternating phase.
    pub longest_run: usize,
    /// Points in the face when that run happened.
    pub run_points: usize,
}

const SEARCH_CAP: usize = 200_000;

struct Schedule<'a> {
    m: [Matching; 2],
    outer: [Option<&'a [usize]>; 2],
    face: usize,
    moves: Vec<Move>,
    budget: usize,
    longest_run: usize,
    run_points: usize,
}

impl Schedule<'_> {
    fn legal(&self, w: usize, x: [usize; 3], side: Side) -> Option<Matching> {
        legal_face_rewrite(&self.m[w], self.outer[w], x, side)
            .ok()
            .flatten()
    }

    fn apply(&mut self, w: usize, x: [usize; 3], side: Side) {
        let r = self.legal(w, x, side).expect("move checked legal");
        self.m[w] = r;
        self.moves.push(Move {
            which: Which::of(w),
            arc: BypassArc {
                face: self.face,
                points: x,
            },
            side,
        });
    }

    fn pairs(&self, w: usize, a: usize, b: usize) -> bool {
        self.m[w].partner(a) == b
    }

    fn equal_on(&self, active: &[usize]) -> bool {
        active
            .iter()
            .all(|&a| self.m[0].partner(a) == self.m[1].partner(a))
    }

    fn solve(&mut self, active: &[usize]) -> bool {
        loop {
            if self.moves.len() > self.budget {
                return false;
            }
            if self.equal_on(active) {
                return true;
            }
            let k = active.len();
            if k <= 2 {
                return false;
            }
            let at = |i: usize| active[i % k];
            if let Some(i) =
                (0..k).find(|&i| self.pairs(0, at(i), at(i + 1)) && self.pairs(1, at(i), at(i + 1)))
            {
                let reduced: Vec<usize> = active
                    .iter()
                    .copied()
                    .filter(|&a| a != at(i) && a != at(i + 1))
                    .collect();
                return self.solve(&reduced);
            }
            if k >= 4 && self.adjacent(active) {
                continue;
            }
            if k >= 4 && self.alternate(active) {
                continue;
            }
            return false;
        }
    }

    /// Adjacent bypasses: x_{i+2} x_{i+3} on one side, y_i y_{i+1} on the
    /// other. Turns them into a matched pair.
    fn adjacent(&mut self, active: &[usize]) -> bool {
        let k = active.len();
        let at = |i: usize| active[i % k];
        for i in 0..k {
            for (r, s) in [(0, 1), (1, 0)] {
                if !(self.pairs(r, at(i + 2), at(i + 3)) && self.pairs(s, at(i), at(i + 1))) {
                    continue;
                }
                let a = [at(i), at(i + 1), at(i + 2)];
                let b = [at(i + 1), at(i + 2), at(i + 3)];
                if self.legal(r, a, Side::Front).is_some() {
                    self.apply(r, a, Side::Front);
                    return true;
                }
                if self.legal(s, b, Side::Behind).is_some() {
                    self.apply(s, b, Side::Behind);
                    return true;
                }
                if self.legal(r, a, Side::Behind).is_some()
                    && self.legal(s, b, Side::Front).is_some()
                {
                    self.apply(r, a, Side::Behind);
                    self.apply(s, b, Side::Front);
                    return true;
                }
            }
        }
        false
    }

    fn has_matched_or_adjacent(&self, active: &[usize]) -> bool {
        let k = active.len();
        let at = |i: usize| active[i % k];
        (0..k).any(|i| {
            (self.pairs(0, at(i), at(i + 1)) && self.pairs(1, at(i), at(i + 1)))
                || (k >= 4
                    && ((self.pairs(0, at(i + 2), at(i + 3)) && self.pairs(1, at(i), at(i + 1)))
                        || (self.pairs(1, at(i + 2), at(i + 3))
                            && self.pairs(0, at(i), at(i + 1)))))
        })
    }

    /// Alternating attachments along x_{2j-1} x_{2j+1} on one side and
    /// y_{2j} y_{2j+2} on the other, until matched or adjacent bypasses
    /// appear.
    fn alternate(&mut self, active: &[usize]) -> bool {
        let k = active.len();
        for base in 0..k {
            // x_t for t >= 1, counted from the base
            let x = |t: usize| active[(base + t - 1) % k];
            let first = [x(1), x(2), x(3)];
            for side in [Side::Front, Side::Behind] {
                if self.legal(0, first, side).is_some() && self.legal(1, first, side).is_some() {
                    self.apply(0, first, side);
                    self.apply(1, first, side);
                    self.note_run(1, k);
                    return true;
                }
            }
            for (r, s) in [(0, 1), (1, 0)] {
                if self.legal(r, first, Side::Behind).is_none()
                    || self.legal(s, first, Side::Front).is_none()
                {
                    continue;
                }
                let snapshot = (self.m.clone(), self.moves.len());
                self.apply(r, first, Side::Behind);
                self.apply(s, first, Side::Front);
                let mut run = 1;
                let mut j = 2;
                let found = loop {
                    if self.has_matched_or_adjacent(active) {
                        break true;
                    }
                    if 2 * j + 2 > k + 1 {
                        break false;
                    }
                    let a = [x(2 * j - 1), x(2 * j), x(2 * j + 1)];
                    let b = [x(2 * j), x(2 * j + 1), x(2 * j + 2)];
                    run += 1;
                    if self.legal(r, a, Side::Front).is_some() {
                        self.apply(r, a, Side::Front);
                    } else if self.legal(r, a, Side::Behind).is_some()
                        && self.legal(s, b, Side::Front).is_some()
                    {
                        self.apply(r, a, Side::Behind);
                        self.apply(s, b, Side::Front);
                    } else if self.legal(r, a, Side::Behind).is_some()
                        && self.legal(s, b, Side::Behind).is_some()
                    {
                        self.apply(r, a, Side::Behind);
                        self.apply(s, b, Side::Behind);
                    } else {
                        break false;
                    }
                    j += 1;
                };
                if found {
                    self.note_run(run, k);
                    return true;
                }
                self.m = snapshot.0;
                self.moves.truncate(snapshot.1);
            }
        }
        false
    }

    fn note_run(&mut self, run: usize, points: usize) {
        if run > self.longest_run {
            self.longest_run = run;
            self.run_points = points;
        }
    }
}

/// Breadth-first search from both matchings for a common one.
fn search(m: [&Matching; 2], outer: [Option<&[usize]>; 2], face: usize) -> Option<Vec<Move>> {
    let n = m[0].len();
    let explore = |w: usize| -> Option<BTreeMap<Matching, Option<(Matching, [usize; 3], Side)>>> {
        let mut parent = BTreeMap::new();
        parent.insert(m[w].clone(), None);
        let mut queue = VecDeque::from([m[w].clone()]);
        while let Some(cur) = queue.pop_front() {
            if n < 4 {
                break;
            }
            for at in 0..n {
                let x = [at, (at + 1) % n, (at + 2) % n];
                for side in [Side::Front, Side::Behind] {
                    if let Ok(Some(r)) = legal_face_rewrite(&cur, outer[w], x, side) {
                        if !parent.contains_key(&r) {
                            if parent.len() >= SEARCH_CAP {
                                return None;
                            }
                            parent.insert(r.clone(), Some((cur.clone(), x, side)));
                            queue.push_back(r);
                        }
                    }
                }
            }
        }
        Some(parent)
    };
    let reach = [explore(0)?, explore(1)?];
    let target = reach[0].keys().find(|k| reach[1].contains_key(*k))?.clone();
    let mut moves = Vec::new();
    for (w, tree) in reach.iter().enumerate() {
        let mut path = Vec::new();
        let mut cur = target.clone();
        while let Some(Some((prev, x, side))) = tree.get(&cur) {
            path.push(Move {
                which: Which::of(w),
                arc: BypassArc { face, points: *x },
                side: *side,
            });
            cur = prev.clone();
        }
        path.reverse();
        moves.extend(path);
    }
    Some(moves)
}

/// Equate two chord diagrams of the same face. `outer` gives, per side,
/// how the rest of the sphere pairs the face's points; `None` for a
/// standalone disk. `first` is the sign of the first boundary interval.
pub fn match_face_matchings(
    m1: &Matching,
    m2: &Matching,
    outer: [Option<&[usize]>; 2],
    first: Sign,
    face: usize,
) -> Result<FaceMatch> {
    if m1.len() != m2.len() {
        return Err(Error::NoMatch(format!(
            "face {face} has different point counts"
        )));
    }
    let (r1, r2) = (m1.rot(first), m2.rot(first));
    if r1 != r2 {
        return Err(Error::NoMatch(format!(
            "face {face} rotation numbers differ: {r1} vs {r2}"
        )));
    }
    let n = m1.len() / 2;
    let mut sched = Schedule {
        m: [m1.clone(), m2.clone()],
        outer,
        face,
        moves: Vec::new(),
        budget: 10 * n * n + 10,
        longest_run: 0,
        run_points: 0,
    };
    let active: Vec<usize> = (0..m1.len()).collect();
    if sched.solve(&active) {
        return Ok(FaceMatch {
            moves: MoveSequence { moves: sched.moves },
            strategy: Strategy::Schedule,
            longest_run: sched.longest_run,
            run_points: sched.run_points,
        });
    }
    match search([m1, m2], outer, face) {
        Some(moves) => Ok(FaceMatch {
            moves: MoveSequence { moves },
            strategy: Strategy::Search,
            longest_run: 0,
            run_points: 0,
        }),
        None => Err(Error::NoMatch(format!(
            "face {face}: no common configuration reachable"
        ))),
    }
}

/// Match face `f` of two configurations on one presentation.
pub fn match_faces(
    p: &Presentation,
    d1: &DividingConfig,
    d2: &DividingConfig,
    f: usize,
) -> Result<FaceMatch> {
    let v1 = ConfigView::new(p, d1)?;
    let v2 = ConfigView::new(p, d2)?;
    if f >= v1.face_count() {
        return Err(Error::NoMatch(format!("no face {f}")));
    }
    let (o1, o2) = (v1.outer_matching(f), v2.outer_matching(f));
    match_face_matchings(
        &v1.face_matching(f),
        &v2.face_matching(f),
        [Some(&o1), Some(&o2)],
        v1.layouts[f].first_sign,
        f,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereMatch {
    pub moves: MoveSequence,
    /// Strategy used per face, in face order.
    pub strategies: Vec<Strategy>,
    /// The second presentation was read with the opposite coorientation.
    pub reoriented: bool,
    pub result: DividingConfig,
}

/// Equate the dividing sets of two presentations of one labeled graph.
pub fn match_spheres(
    p1: &Presentation,
    p2: &Presentation,
    d1: &DividingConfig,
    d2: &DividingConfig,
) -> Result<SphereMatch> {
    let (r1, r2) = (ribbon_invariant(p1), ribbon_invariant(p2));
    if !ribbon_equal(&r1, &r2, RibbonMode::Oriented)? {
        return Err(Error::NoMatch("oriented ribbons differ".into()));
    }
    let reoriented = p1.sign(p1.graph().vertices().next().expect("nonempty graph"))
        != p2.sign(p1.graph().vertices().next().unwrap());
    let (q2, e2) = if reoriented {
        (p2.reoriented(), d2.reoriented())
    } else {
        (p2.clone(), d2.clone())
    };
    if q2.twists() != p1.twists() {
        return Err(Error::NoMatch(
            "edge twists differ; normalize both presentations first".into(),
        ));
    }
    if q2 != *p1 {
        return Err(Error::NoMatch("presentations differ".into()));
    }
    let (rot1, rot2) = (rot_vector(p1, d1)?, rot_vector(p1, &e2)?);
    if rot1 != rot2 {
        let k = rot1.iter().zip(&rot2).position(|(a, b)| a != b).unwrap();
        return Err(Error::NoMatch(format!(
            "rotation vectors differ at cycle {}",
            p1.cycles()[k]
        )));
    }
    let mut cur = [d1.clone(), e2];
    let mut moves = Vec::new();
    let mut strategies = Vec::new();
    for f in 0..p1.embedding().faces.len() {
        let fm = match_faces(p1, &cur[0], &cur[1], f)?;
        let (a, b) = fm.moves.replay(p1, &cur[0], &cur[1])?;
        cur = [a, b];
        moves.extend(fm.moves.moves);
        strategies.push(fm.strategy);
    }
    let [a, b] = cur;
    if a != b {
        return Err(Error::NoMatch(
            "faces matched but configurations differ".into(),
        ));
    }
    Ok(SphereMatch {
        moves: MoveSequence { moves },
        strategies,
        reoriented,
        result: a,
    })
}
