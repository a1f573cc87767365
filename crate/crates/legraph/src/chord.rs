//! Non-crossing perfect matchings of 2n points on a circle and the local
//! bypass rewrite on three consecutive points.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::presentation::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Front,
    Behind,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Front => Side::Behind,
            Side::Behind => Side::Front,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Front => "front",
            Side::Behind => "behind",
        })
    }
}

/// Chords on points `0..2n` in cyclic order; `partner[i]` is the other end
/// of the chord at `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    partner: Vec<usize>,
}

impl Matching {
    pub fn new(partner: Vec<usize>) -> Result<Self> {
        let n = partner.len();
        for (i, &j) in partner.iter().enumerate() {
            if j >= n || j == i || partner[j] != i {
                return Err(Error::InvalidConfig(format!(
                    "point {i} is not properly paired"
                )));
            }
        }
        let m = Matching { partner };
        if let Some((a, b)) = m.crossing() {
            return Err(Error::InvalidConfig(format!(
                "crossing chords at points {a} and {b}"
            )));
        }
        Ok(m)
    }

    pub fn from_pairs(points: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut partner = vec![usize::MAX; points];
        for &(a, b) in pairs {
            if a >= points || b >= points || partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(Error::InvalidConfig(format!("bad chord {a}-{b}")));
            }
            partner[a] = b;
            partner[b] = a;
        }
        Matching::new(partner)
    }

    /// Two chords cross, as a pair of their smaller endpoints.
    fn crossing(&self) -> Option<(usize, usize)> {
        let mut stack: Vec<usize> = Vec::new();
        for i in 0..self.len() {
            let j = self.partner[i];
            if j > i {
                stack.push(i);
            } else {
                let top = stack.pop()?;
                if top != j {
                    return Some((j.min(top), j.max(top)));
                }
            }
        }
        None
    }

    pub fn len(&self) -> usize {
        self.partner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    pub fn partner(&self, i: usize) -> usize {
        self.partner[i]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter(|&i| i < self.partner[i])
            .map(|i| (i, self.partner[i]))
            .collect()
    }

    /// All Catalan(n) matchings of 2n points.
    pub fn all(n: usize) -> Vec<Matching> {
        fn go(
            lo: usize,
            hi: usize,
            memo: &mut BTreeMap<(usize, usize), Vec<Vec<(usize, usize)>>>,
        ) -> Vec<Vec<(usize, usize)>> {
            if lo >= hi {
                return vec![Vec::new()];
            }
            if let Some(r) = memo.get(&(lo, hi)) {
                return r.clone();
            }
            let mut out = Vec::new();
            for k in (lo + 1..hi).step_by(2) {
                for l in go(lo + 1, k, memo) {
                    for r in go(k + 1, hi, memo) {
                        let mut m = vec![(lo, k)];
                        m.extend(l.iter().copied());
                        m.extend(r.iter().copied());
                        out.push(m);
                    }
                }
            }
            memo.insert((lo, hi), out.clone());
            out
        }
        let mut memo = BTreeMap::new();
        go(0, 2 * n, &mut memo)
            .into_iter()
            .map(|ps| Matching::from_pairs(2 * n, &ps).expect("catalan matching"))
            .collect()
    }

    /// Region index of every boundary interval; interval `i` runs from
    /// point `i` to point `i + 1`.
    pub fn interval_regions(&self) -> Vec<usize> {
        let n = self.len();
        let mut uf = UnionFind::new(n);
        for (a, b) in self.pairs() {
            uf.union((a + n - 1) % n, b);
            uf.union(a, b - 1);
        }
        (0..n).map(|i| uf.find(i)).collect()
    }

    /// Positive minus negative regions when interval `i` has sign
    /// `first * (-1)^i`.
    pub fn rot(&self, first: Sign) -> i64 {
        if self.is_empty() {
            return 0;
        }
        let regions = self.interval_regions();
        let roots: BTreeSet<usize> = regions.iter().copied().collect();
        let s: i64 = roots.iter().map(|&r| if r % 2 == 0 { 1 } else { -1 }).sum();
        s * first.value()
    }

    /// Rewrite along the arc over points `i, i+1, i+2`. `None` when the
    /// rewrite closes off a loop.
    pub fn rewrite(&self, i: usize, side: Side) -> Option<Matching> {
        let n = self.len();
        assert!(n >= 4, "a bypass arc needs three distinct points");
        self.rewrite_arc([i % n, (i + 1) % n, (i + 2) % n], side)
            .expect("consecutive points form an arc")
    }

    /// Whether an arc from the chord at `x[0]` across the chord at `x[1]` to
    /// the chord at `x[2]` can run along the boundary: the points it passes
    /// over are matched among themselves within each gap.
    pub fn arc_is_well_formed(&self, x: [usize; 3]) -> bool {
        let n = self.len();
        if x.iter().any(|&p| p >= n) || x[0] == x[1] || x[1] == x[2] || x[0] == x[2] {
            return false;
        }
        let gap = |a: usize, b: usize| -> Vec<usize> {
            (1..(b + n - a) % n).map(|k| (a + k) % n).collect()
        };
        let (g1, g2) = (gap(x[0], x[1]), gap(x[1], x[2]));
        if g1.len() + g2.len() + 2 > n - 1 {
            return false;
        }
        g1.iter().all(|&p| g1.contains(&self.partner[p]))
            && g2.iter().all(|&p| g2.contains(&self.partner[p]))
    }

    /// General form of [`Matching::rewrite`] for arcs that pass over
    /// nested chords.
    pub fn rewrite_arc(&self, x: [usize; 3], side: Side) -> Result<Option<Matching>> {
        if !self.arc_is_well_formed(x) {
            return Err(Error::MalformedArc(format!(
                "{x:?} on {} points",
                self.len()
            )));
        }
        let y = x.map(|p| self.partner[p]);
        // nodes 0..3 are the points x_k, nodes 3..6 the strands toward y_k
        let mut adj: [Vec<usize>; 6] = Default::default();
        let mut link = |a: usize, b: usize| {
            adj[a].push(b);
            adj[b].push(a);
        };
        for k in 0..3 {
            if let Some(j) = x.iter().position(|&p| p == y[k]) {
                if k < j {
                    link(3 + k, 3 + j);
                }
            }
        }
        match side {
            Side::Front => {
                link(0, 1);
                link(2, 3);
                link(4, 5);
            }
            Side::Behind => {
                link(1, 2);
                link(0, 5);
                link(3, 4);
            }
        }
        let point = |node: usize| if node < 3 { x[node] } else { y[node - 3] };
        let mut partner = self.partner.clone();
        let mut seen = [false; 6];
        for start in 0..6 {
            if seen[start] || adj[start].len() != 1 {
                continue;
            }
            let (mut prev, mut cur) = (usize::MAX, start);
            seen[cur] = true;
            loop {
                let next = adj[cur].iter().copied().find(|&v| v != prev);
                match next {
                    Some(v) if !seen[v] => {
                        prev = cur;
                        cur = v;
                        seen[cur] = true;
                    }
                    _ => break,
                }
            }
            let (a, b) = (point(start), point(cur));
            partner[a] = b;
            partner[b] = a;
        }
        if seen
            .iter()
            .enumerate()
            .any(|(k, &s)| !s && !adj[k].is_empty())
        {
            return Ok(None);
        }
        Ok(Some(
            Matching::new(partner).expect("bypass rewrite keeps chords disjoint"),
        ))
    }

    /// Number of circles formed together with a second matching of the
    /// same points, as when the face is glued to the rest of the sphere.
    pub fn circles_with(&self, outer: &[usize]) -> usize {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut cur = s;
            loop {
                seen[cur] = true;
                let p = self.partner[cur];
                seen[p] = true;
                cur = outer[p];
                if cur == s {
                    break;
                }
            }
        }
        count
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs()
            .iter()
            .map(|(a, b)| format!("{a}-{b}"))
            .collect();
        write!(f, "{{{}}}", parts.join(" "))
    }
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// Keeps the smaller root; false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleClass {
    pub members: Vec<Matching>,
    pub rots: Vec<i64>,
}

pub const ORACLE_BOUND: usize = 6;

/// Partition all matchings of 2n points into classes connected by
/// rewrites that do not close a loop.
pub fn reachability_oracle(n: usize, first: Sign, bound: usize) -> Result<Vec<OracleClass>> {
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    let all = Matching::all(n);
    let index: BTreeMap<&Matching, usize> = all.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut uf = UnionFind::new(all.len());
    for (k, d) in all.iter().enumerate() {
        if d.len() < 4 {
            continue;
        }
        for i in 0..d.len() {
            for side in [Side::Front, Side::Behind] {
                if let Some(r) = d.rewrite(i, side) {
                    uf.union(k, index[&r]);
                }
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 0..all.len() {
        classes.entry(uf.find(k)).or_default().push(k);
    }
    Ok(classes
        .into_values()
        .map(|ms| OracleClass {
            rots: ms.iter().map(|&k| all[k].rot(first)).collect(),
            members: ms.into_iter().map(|k| all[k].clone()).collect(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(points: usize, pairs: &[(usize, usize)]) -> Matching {
        Matching::from_pairs(points, pairs).unwrap()
    }

    #[test]
    fn arcs_over_nested_chords() {
        let d = m(10, &[(0, 9), (1, 2), (3, 8), (4, 5), (6, 7)]);
        assert!(d.arc_is_well_formed([0, 3, 6]));
        assert!(!d.arc_is_well_formed([0, 3, 5]));
        assert!(matches!(
            d.rewrite_arc([0, 3, 5], Side::Front),
            Err(Error::MalformedArc(_))
        ));
        let r = d.rewrite_arc([0, 3, 6], Side::Front).unwrap().unwrap();
        assert_eq!(r, m(10, &[(0, 3), (1, 2), (4, 5), (6, 9), (7, 8)]));
    }

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (0..7).map(|n| Matching::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn crossing_rejected() {
        assert!(Matching::from_pairs(4, &[(0, 2), (1, 3)]).is_err());
    }

    #[test]
    fn small_rots() {
        assert_eq!(m(4, &[(0, 1), (2, 3)]).rot(Sign::Plus), 1);
        assert_eq!(m(4, &[(0, 3), (1, 2)]).rot(Sign::Plus), -1);
        let mut r: Vec<i64> = Matching::all(3).iter().map(|x| x.rot(Sign::Plus)).collect();
        r.sort();
        assert_eq!(r, vec![-2, 0, 0, 0, 2]);
    }

    #[test]
    fn arc_over_a_cap() {
        // the arc meets the chord 1-2 twice: one side pinches off a circle,
        // the other side changes nothing
        let d = m(6, &[(0, 3), (1, 2), (4, 5)]);
        assert_eq!(d.rewrite(0, Side::Front), None);
        assert_eq!(d.rewrite(0, Side::Behind), Some(d.clone()));
        let e = m(6, &[(0, 5), (1, 4), (2, 3)]);
        assert_eq!(
            e.rewrite(0, Side::Front),
            Some(m(6, &[(0, 1), (2, 5), (3, 4)]))
        );
    }

    #[test]
    fn rewrite_is_undone_by_an_opposite_rewrite() {
        for n in 2..=4 {
            for d in Matching::all(n) {
                for i in 0..2 * n {
                    for side in [Side::Front, Side::Behind] {
                        let Some(r) = d.rewrite(i, side) else {
                            continue;
                        };
                        if r == d {
                            continue;
                        }
                        let undone =
                            (0..2 * n).any(|j| r.rewrite(j, side.opposite()).as_ref() == Some(&d));
                        assert!(undone, "{d} at {i} {side}");
                    }
                }
            }
        }
        let d = m(6, &[(0, 1), (2, 5), (3, 4)]);
        let r = d.rewrite(1, Side::Front).unwrap();
        assert_eq!(r, m(6, &[(0, 3), (1, 2), (4, 5)]));
        assert_eq!(r.rewrite(2, Side::Behind), Some(d));
    }

    #[test]
    fn oracle_small_cases() {
        let one = reachability_oracle(1, Sign::Plus, ORACLE_BOUND).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].rots, vec![0]);
        let three = reachability_oracle(3, Sign::Plus, ORACLE_BOUND).unwrap();
        let mut fibers: Vec<Vec<i64>> = three.iter().map(|c| c.rots.clone()).collect();
        fibers.sort();
        assert_eq!(fibers, vec![vec![-2], vec![0, 0, 0], vec![2]]);
        assert_eq!(
            reachability_oracle(7, Sign::Plus, 6),
            Err(Error::BoundExceeded { n: 7, bound: 6 })
        );
    }

    #[test]
    fn oracle_classes_are_rot_fibers() {
        for n in 1..=6 {
            let classes = reachability_oracle(n, Sign::Minus, ORACLE_BOUND).unwrap();
            let total: usize = classes.iter().map(|c| c.members.len()).sum();
            assert_eq!(total, Matching::all(n).len());
            let mut seen = BTreeSet::new();
            for c in &classes {
                assert!(c.rots.iter().all(|&r| r == c.rots[0]));
                assert!(seen.insert(c.rots[0]), "two classes share rot at n={n}");
            }
        }
    }

    fn matching_strategy() -> impl Strategy<Value = Matching> {
        (1usize..=6).prop_flat_map(|n| {
            let all = Matching::all(n);
            (0..all.len()).prop_map(move |k| all[k].clone())
        })
    }

    proptest! {
        #[test]
        fn regions_count_matches_chords(d in matching_strategy()) {
            let regions: BTreeSet<usize> = d.interval_regions().into_iter().collect();
            prop_assert_eq!(regions.len(), d.len() / 2 + 1);
        }

        #[test]
        fn rot_is_odd_under_sign_change(d in matching_strategy()) {
            prop_assert_eq!(d.rot(Sign::Plus), -d.rot(Sign::Minus));
            prop_assert_eq!((d.rot(Sign::Plus) + d.len() as i64 / 2 + 1) % 2, 0);
        }
    }
}
