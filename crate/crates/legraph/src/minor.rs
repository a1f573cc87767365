//! Minor containment for the two fixed patterns K4 and the doubled
//! triangle.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pattern {
    K4,
    /// Three vertices, two parallel edges between each pair.
    Delta2,
}

impl Pattern {
    /// Recognize a pattern graph up to isomorphism.
    pub fn of(h: &Graph) -> Result<Pattern> {
        let vs: Vec<VertexId> = h.vertices().collect();
        let mut mult: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
        for (_, [a, b]) in h.edges() {
            if a == b {
                return Err(Error::UnsupportedPattern);
            }
            *mult.entry((a.min(b), a.max(b))).or_default() += 1;
        }
        let pairs = vs.len() * vs.len().saturating_sub(1) / 2;
        if vs.len() == 4 && mult.len() == pairs && mult.values().all(|&m| m == 1) {
            Ok(Pattern::K4)
        } else if vs.len() == 3 && mult.len() == pairs && mult.values().all(|&m| m == 2) {
            Ok(Pattern::Delta2)
        } else {
            Err(Error::UnsupportedPattern)
        }
    }

    fn size(self) -> usize {
        match self {
            Pattern::K4 => 4,
            Pattern::Delta2 => 3,
        }
    }

    fn multiplicity(self) -> usize {
        match self {
            Pattern::K4 => 1,
            Pattern::Delta2 => 2,
        }
    }
}

pub fn has_minor(g: &Graph, h: &Graph) -> Result<bool> {
    Ok(contains(g, Pattern::of(h)?))
}

pub fn contains(g: &Graph, p: Pattern) -> bool {
    match p {
        Pattern::K4 => !Reduced::new(g, 1).vertices.is_empty(),
        Pattern::Delta2 => minor_model(g, p).is_some(),
    }
}

/// Branch sets of a minor model, one per pattern vertex.
pub fn minor_model(g: &Graph, p: Pattern) -> Option<Vec<BTreeSet<VertexId>>> {
    let red = Reduced::new(g, p.multiplicity());
    if red.vertices.len() < p.size() {
        return None;
    }
    let sets = red.search(p)?;
    Some(red.expand(sets))
}

/// Multigraph after deleting loops and low-degree vertices and suppressing
/// degree-two vertices. Edge multiplicities are capped at `cap`.
struct Reduced {
    vertices: BTreeSet<VertexId>,
    /// (u, w) with u < w, one entry per parallel edge, each carrying the
    /// suppressed interior vertices of the original path.
    edges: Vec<(VertexId, VertexId, Vec<VertexId>)>,
}

impl Reduced {
    fn new(g: &Graph, cap: usize) -> Self {
        let mut vertices: BTreeSet<VertexId> = g.vertices().collect();
        let mut edges: Vec<(VertexId, VertexId, Vec<VertexId>)> = g
            .edges()
            .filter(|(_, [a, b])| a != b)
            .map(|(_, [a, b])| (a.min(b), a.max(b), Vec::new()))
            .collect();
        loop {
            let mut changed = false;
            edges.sort_by_key(|x| (x.0, x.1, x.2.len()));
            let mut kept: Vec<(VertexId, VertexId, Vec<VertexId>)> = Vec::new();
            for e in edges.drain(..) {
                let dup = kept.iter().filter(|k| k.0 == e.0 && k.1 == e.1).count();
                if dup < cap {
                    kept.push(e);
                } else {
                    changed = true;
                }
            }
            edges = kept;
            let mut deg: BTreeMap<VertexId, Vec<usize>> =
                vertices.iter().map(|&v| (v, Vec::new())).collect();
            for (i, e) in edges.iter().enumerate() {
                deg.get_mut(&e.0).unwrap().push(i);
                deg.get_mut(&e.1).unwrap().push(i);
            }
            for (&v, inc) in &deg {
                if inc.len() <= 1 {
                    vertices.remove(&v);
                    if let Some(&i) = inc.first() {
                        edges.remove(i);
                    }
                    changed = true;
                    break;
                }
                if inc.len() == 2 {
                    let (i, j) = (inc[0], inc[1]);
                    let a = if edges[i].0 == v {
                        edges[i].1
                    } else {
                        edges[i].0
                    };
                    let b = if edges[j].0 == v {
                        edges[j].1
                    } else {
                        edges[j].0
                    };
                    vertices.remove(&v);
                    let mut path = edges[i].2.clone();
                    path.push(v);
                    path.extend(edges[j].2.iter().copied());
                    edges.remove(i.max(j));
                    edges.remove(i.min(j));
                    if a != b {
                        edges.push((a.min(b), a.max(b), path));
                    }
                    changed = true;
                    break;
                }
            }
            if !changed {
                break;
            }
        }
        Reduced { vertices, edges }
    }

    fn search(&self, p: Pattern) -> Option<Vec<BTreeSet<VertexId>>> {
        let vs: Vec<VertexId> = self.vertices.iter().copied().collect();
        let mut label = vec![None; vs.len()];
        let idx: BTreeMap<VertexId, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<(usize, usize)> =
            self.edges.iter().map(|e| (idx[&e.0], idx[&e.1])).collect();
        let mut found = None;
        assign(0, 0, p, &edges, &mut label, &mut found);
        found.map(|labels: Vec<Option<usize>>| {
            (0..p.size())
                .map(|k| {
                    (0..vs.len())
                        .filter(|&i| labels[i] == Some(k))
                        .map(|i| vs[i])
                        .collect()
                })
                .collect()
        })
    }

    fn expand(&self, mut sets: Vec<BTreeSet<VertexId>>) -> Vec<BTreeSet<VertexId>> {
        for s in sets.iter_mut() {
            let inner: Vec<VertexId> = self
                .edges
                .iter()
                .filter(|e| s.contains(&e.0) && s.contains(&e.1))
                .flat_map(|e| e.2.iter().copied())
                .collect();
            s.extend(inner);
        }
        sets
    }
}

fn assign(
    i: usize,
    used: usize,
    p: Pattern,
    edges: &[(usize, usize)],
    label: &mut Vec<Option<usize>>,
    found: &mut Option<Vec<Option<usize>>>,
) {
    if found.is_some() {
        return;
    }
    let n = label.len();
    if used + (n - i) < p.size() {
        return;
    }
    if i == n {
        if used == p.size() && valid_model(p, edges, label) {
            *found = Some(label.clone());
        }
        return;
    }
    for k in 0..=used.min(p.size() - 1) {
        label[i] = Some(k);
        assign(i + 1, used.max(k + 1), p, edges, label, found);
    }
    label[i] = None;
    assign(i + 1, used, p, edges, label, found);
}

fn valid_model(p: Pattern, edges: &[(usize, usize)], label: &[Option<usize>]) -> bool {
    let h = p.size();
    let mut between = vec![vec![0usize; h]; h];
    let mut parent: Vec<usize> = (0..label.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in edges {
        match (label[a], label[b]) {
            (Some(x), Some(y)) if x == y => {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
            (Some(x), Some(y)) => {
                between[x][y] += 1;
                between[y][x] += 1;
            }
            _ => {}
        }
    }
    for k in 0..h {
        let members: Vec<usize> = (0..label.len()).filter(|&i| label[i] == Some(k)).collect();
        let root = find(&mut parent, members[0]);
        if members.iter().any(|&m| find(&mut parent, m) != root) {
            return false;
        }
    }
    (0..h).all(|x| (0..h).all(|y| x == y || between[x][y] >= p.multiplicity()))
}

#[cfg(test)]
pub(crate) mod oracle {
    use super::*;
    use std::collections::HashSet;

    type State = Vec<(u32, u32)>;

    /// Exhaustive deletion/contraction search over labeled minors.
    pub fn brute_has_minor(g: &Graph, p: Pattern) -> bool {
        let start: State = g
            .edges()
            .filter(|(_, [a, b])| a != b)
            .map(|(_, [a, b])| norm(a.0, b.0))
            .collect();
        let mut seen = HashSet::new();
        explore(sorted(start), p, &mut seen)
    }

    fn norm(a: u32, b: u32) -> (u32, u32) {
        (a.min(b), a.max(b))
    }

    fn sorted(mut s: State) -> State {
        s.sort();
        s
    }

    fn matches(s: &State, p: Pattern) -> bool {
        let vs: BTreeSet<u32> = s.iter().flat_map(|&(a, b)| [a, b]).collect();
        if vs.len() != p.size() || s.len() != p.size() * (p.size() - 1) / 2 * p.multiplicity() {
            return false;
        }
        let mut mult: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        for &e in s {
            *mult.entry(e).or_default() += 1;
        }
        mult.len() == p.size() * (p.size() - 1) / 2 && mult.values().all(|&m| m == p.multiplicity())
    }

    fn explore(s: State, p: Pattern, seen: &mut HashSet<State>) -> bool {
        if !seen.insert(s.clone()) {
            return false;
        }
        if matches(&s, p) {
            return true;
        }
        if s.len() < p.size() * (p.size() - 1) / 2 * p.multiplicity() {
            return false;
        }
        for i in 0..s.len() {
            let mut del = s.clone();
            del.remove(i);
            if explore(del, p, seen) {
                return true;
            }
            let (a, b) = s[i];
            let con: State = s
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &(x, y))| norm(if x == b { a } else { x }, if y == b { a } else { y }))
                .filter(|&(x, y)| x != y)
                .collect();
            if explore(sorted(con), p, seen) {
                return true;
            }
        }
        false
    }
}
