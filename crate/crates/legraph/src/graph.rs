//! Finite multigraphs with loops, simple cycle enumeration, vertex
//! connectivity and Menger paths.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// One end of an edge. Read as a dart it leaves the vertex sitting at
/// `end` and runs to the opposite end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct End {
    pub edge: EdgeId,
    pub end: u8,
}

impl End {
    pub fn new(edge: EdgeId, end: u8) -> Self {
        debug_assert!(end < 2);
        End { edge, end }
    }

    pub fn twin(self) -> End {
        End {
            edge: self.edge,
            end: 1 - self.end,
        }
    }

    /// True when the dart runs from end 0 to end 1.
    pub fn forward(self) -> bool {
        self.end == 0
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.edge, self.end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, [VertexId; 2]>,
}

impl Graph {
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (EdgeId, VertexId, VertexId)>,
    ) -> Result<Self> {
        let mut vs = BTreeSet::new();
        for v in vertices {
            if !vs.insert(v) {
                return Err(Error::DuplicateVertex(v));
            }
        }
        let mut es = BTreeMap::new();
        for (e, a, b) in edges {
            for v in [a, b] {
                if !vs.contains(&v) {
                    return Err(Error::UnknownVertex(v));
                }
            }
            if es.insert(e, [a, b]).is_some() {
                return Err(Error::DuplicateEdge(e));
            }
        }
        Ok(Graph {
            vertices: vs,
            edges: es,
        })
    }

    /// Like [`Graph::new`] but also rejects disconnected input.
    pub fn connected(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (EdgeId, VertexId, VertexId)>,
    ) -> Result<Self> {
        let g = Self::new(vertices, edges)?;
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, [VertexId; 2])> + '_ {
        self.edges.iter().map(|(&e, &ends)| (e, ends))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn endpoints(&self, e: EdgeId) -> [VertexId; 2] {
        self.edges[&e]
    }

    pub fn try_endpoints(&self, e: EdgeId) -> Result<[VertexId; 2]> {
        self.edges.get(&e).copied().ok_or(Error::UnknownEdge(e))
    }

    /// Vertex at the tail of a dart.
    pub fn tail(&self, d: End) -> VertexId {
        self.edges[&d.edge][d.end as usize]
    }

    pub fn head(&self, d: End) -> VertexId {
        self.edges[&d.edge][1 - d.end as usize]
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let [a, b] = self.edges[&e];
        a == b
    }

    /// Edge-ends sitting at `v`, ordered by edge id then end index.
    pub fn ends_at(&self, v: VertexId) -> Vec<End> {
        let mut out = Vec::new();
        for (&e, &[a, b]) in &self.edges {
            if a == v {
                out.push(End::new(e, 0));
            }
            if b == v {
                out.push(End::new(e, 1));
            }
        }
        out
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.ends_at(v).len()
    }

    pub fn next_vertex_id(&self) -> VertexId {
        VertexId(self.vertices.iter().next_back().map_or(0, |v| v.0 + 1))
    }

    pub fn next_edge_id(&self) -> EdgeId {
        EdgeId(self.edges.keys().next_back().map_or(0, |e| e.0 + 1))
    }

    fn adjacency(&self) -> BTreeMap<VertexId, BTreeSet<VertexId>> {
        let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> = self
            .vertices
            .iter()
            .map(|&v| (v, BTreeSet::new()))
            .collect();
        for &[a, b] in self.edges.values() {
            if a != b {
                adj.get_mut(&a).unwrap().insert(b);
                adj.get_mut(&b).unwrap().insert(a);
            }
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        self.connected_without(&BTreeSet::new())
    }

    fn connected_without(&self, removed: &BTreeSet<VertexId>) -> bool {
        let adj = self.adjacency();
        let mut left = self.vertices.iter().filter(|v| !removed.contains(v));
        let Some(&start) = left.next() else {
            return true;
        };
        let total = self.vertices.len() - removed.len();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &adj[&v] {
                if !removed.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == total
    }

    /// Edges whose removal disconnects the graph.
    pub fn bridges(&self) -> BTreeSet<EdgeId> {
        let mut out = BTreeSet::new();
        for &e in self.edges.keys() {
            if self.is_loop(e) {
                continue;
            }
            let rest = Graph {
                vertices: self.vertices.clone(),
                edges: self
                    .edges
                    .iter()
                    .filter(|(&f, _)| f != e)
                    .map(|(&f, &x)| (f, x))
                    .collect(),
            };
            if !rest.is_connected() {
                out.insert(e);
            }
        }
        out
    }

    pub fn subgraph(&self, keep: &BTreeSet<EdgeId>) -> Graph {
        let edges: BTreeMap<_, _> = self
            .edges
            .iter()
            .filter(|(e, _)| keep.contains(e))
            .map(|(&e, &x)| (e, x))
            .collect();
        let vertices = edges
            .values()
            .flat_map(|x: &[VertexId; 2]| x.iter().copied())
            .collect();
        Graph { vertices, edges }
    }

    pub fn relabeled(&self, vmap: &BTreeMap<VertexId, VertexId>) -> Graph {
        Graph {
            vertices: self.vertices.iter().map(|v| vmap[v]).collect(),
            edges: self
                .edges
                .iter()
                .map(|(&e, &[a, b])| (e, [vmap[&a], vmap[&b]]))
                .collect(),
        }
    }

    /// All simple cycles, canonically oriented and sorted by
    /// (length, sorted edge ids).
    pub fn cycles(&self) -> Vec<Cycle> {
        let mut found: BTreeSet<Vec<EdgeId>> = BTreeSet::new();
        for (&e, &[a, b]) in &self.edges {
            if a == b {
                found.insert(vec![e]);
            }
        }
        let darts_from: BTreeMap<VertexId, Vec<End>> = self
            .vertices
            .iter()
            .map(|&v| {
                (
                    v,
                    self.ends_at(v)
                        .into_iter()
                        .filter(|d| !self.is_loop(d.edge))
                        .collect(),
                )
            })
            .collect();
        for &s in &self.vertices {
            let mut used = BTreeSet::new();
            let mut on_path = BTreeSet::from([s]);
            let mut path = Vec::new();
            self.cycle_dfs(
                s,
                s,
                &darts_from,
                &mut used,
                &mut on_path,
                &mut path,
                &mut found,
            );
        }
        let mut cycles: Vec<Cycle> = found.into_iter().map(|es| self.orient_cycle(&es)).collect();
        cycles.sort_by_key(|a| a.sort_key());
        cycles
    }

    #[allow(clippy::too_many_arguments)]
    fn cycle_dfs(
        &self,
        s: VertexId,
        u: VertexId,
        darts_from: &BTreeMap<VertexId, Vec<End>>,
        used: &mut BTreeSet<EdgeId>,
        on_path: &mut BTreeSet<VertexId>,
        path: &mut Vec<EdgeId>,
        found: &mut BTreeSet<Vec<EdgeId>>,
    ) {
        for &d in &darts_from[&u] {
            if used.contains(&d.edge) {
                continue;
            }
            let w = self.head(d);
            if w == s {
                let mut key = path.clone();
                key.push(d.edge);
                key.sort();
                found.insert(key);
            } else if w > s && !on_path.contains(&w) {
                used.insert(d.edge);
                on_path.insert(w);
                path.push(d.edge);
                self.cycle_dfs(s, w, darts_from, used, on_path, path, found);
                path.pop();
                on_path.remove(&w);
                used.remove(&d.edge);
            }
        }
    }

    /// Orient an edge set forming a simple cycle: start at its least vertex
    /// and leave along the least incident cycle edge.
    pub fn orient_cycle(&self, edges: &[EdgeId]) -> Cycle {
        let set: BTreeSet<EdgeId> = edges.iter().copied().collect();
        let start = set
            .iter()
            .flat_map(|&e| self.edges[&e])
            .min()
            .expect("empty cycle");
        let mut darts = Vec::with_capacity(set.len());
        let first = self
            .ends_at(start)
            .into_iter()
            .find(|d| set.contains(&d.edge))
            .expect("start vertex on cycle");
        darts.push(first);
        let mut at = self.head(first);
        let mut last = first.edge;
        while darts.len() < set.len() {
            let d = self
                .ends_at(at)
                .into_iter()
                .find(|d| {
                    set.contains(&d.edge)
                        && d.edge != last
                        && !darts.iter().any(|x| x.edge == d.edge)
                })
                .expect("edge set is a cycle");
            darts.push(d);
            at = self.head(d);
            last = d.edge;
        }
        Cycle { darts }
    }

    /// Vertex connectivity of the underlying simple graph. Complete graphs
    /// (no separating set) get |V| - 1.
    pub fn vertex_connectivity(&self) -> usize {
        let n = self.vertices.len();
        if n <= 1 || !self.is_connected() {
            return 0;
        }
        match self.min_separator() {
            Some(s) => s.len(),
            None => n - 1,
        }
    }

    /// A smallest vertex set whose removal disconnects the graph, or `None`
    /// when the underlying simple graph is complete.
    pub fn min_separator(&self) -> Option<Vec<VertexId>> {
        let n = self.vertices.len();
        if n <= 2 || !self.is_connected() {
            return if self.is_connected() {
                None
            } else {
                Some(Vec::new())
            };
        }
        let adj = self.adjacency();
        if adj.values().all(|nb| nb.len() == n - 1) {
            return None;
        }
        let vs: Vec<VertexId> = self.vertices.iter().copied().collect();
        for k in 1..n - 1 {
            let mut found = None;
            for_each_subset(&vs, k, &mut |sub| {
                if found.is_none() {
                    let removed: BTreeSet<VertexId> = sub.iter().copied().collect();
                    if !self.connected_without(&removed) {
                        found = Some(sub.to_vec());
                    }
                }
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// `k` internally vertex-disjoint paths from `x` to `y`, or the
    /// separating set found by the maximum flow.
    pub fn menger_paths(
        &self,
        x: VertexId,
        y: VertexId,
        k: usize,
    ) -> Result<Vec<Path>, Separation> {
        assert!(x != y, "menger_paths needs distinct endpoints");
        let idx: BTreeMap<VertexId, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let n = idx.len();
        let mut net = FlowNet::new(2 * n);
        for (&v, &i) in &idx {
            let cap = if v == x || v == y { k as i64 } else { 1 };
            net.add(2 * i, 2 * i + 1, cap, None);
        }
        for (&e, &[a, b]) in &self.edges {
            if a == b {
                continue;
            }
            let direct = (a == x && b == y) || (a == y && b == x);
            let cap = if direct { 1 } else { k as i64 };
            net.add(2 * idx[&a] + 1, 2 * idx[&b], cap, Some(End::new(e, 0)));
            net.add(2 * idx[&b] + 1, 2 * idx[&a], cap, Some(End::new(e, 1)));
        }
        let source = 2 * idx[&x];
        let sink = 2 * idx[&y] + 1;
        let mut flow = 0;
        while flow < k && net.augment(source, sink) {
            flow += 1;
        }
        if flow < k {
            let reach = net.reachable(source);
            let vertices = self
                .vertices
                .iter()
                .filter(|v| reach[2 * idx[v]] && !reach[2 * idx[v] + 1])
                .copied()
                .collect();
            let edges = net
                .arcs
                .iter()
                .filter(|a| a.dart.is_some() && reach[a.from] && !reach[a.to])
                .map(|a| a.dart.unwrap().edge)
                .collect();
            return Err(Separation { vertices, edges });
        }
        let mut out_darts: BTreeMap<VertexId, Vec<End>> = BTreeMap::new();
        for a in &net.arcs {
            if let Some(d) = a.dart {
                if a.flow > 0 {
                    let back = net
                        .arcs
                        .iter()
                        .any(|b| b.dart == Some(d.twin()) && b.flow > 0);
                    if !back {
                        out_darts.entry(self.tail(d)).or_default().push(d);
                    }
                }
            }
        }
        for ds in out_darts.values_mut() {
            ds.sort();
        }
        let mut paths = Vec::new();
        let mut taken = BTreeSet::new();
        for _ in 0..k {
            let mut darts = Vec::new();
            let mut at = x;
            while at != y {
                let d = *out_darts[&at]
                    .iter()
                    .find(|d| !taken.contains(*d))
                    .expect("flow decomposes");
                taken.insert(d);
                darts.push(d);
                at = self.head(d);
            }
            paths.push(Path { darts });
        }
        paths.sort_by_key(|p| p.darts.iter().map(|d| d.edge).collect::<Vec<_>>());
        Ok(paths)
    }
}

/// Minimal separating data when fewer than `k` independent paths exist:
/// interior vertices plus any direct edges between the endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
}

impl Separation {
    pub fn size(&self) -> usize {
        self.vertices.len() + self.edges.len()
    }
}

struct Arc {
    from: usize,
    to: usize,
    cap: i64,
    flow: i64,
    dart: Option<End>,
}

struct FlowNet {
    arcs: Vec<Arc>,
    out: Vec<Vec<(usize, bool)>>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        FlowNet {
            arcs: Vec::new(),
            out: vec![Vec::new(); n],
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: i64, dart: Option<End>) {
        let i = self.arcs.len();
        self.arcs.push(Arc {
            from,
            to,
            cap,
            flow: 0,
            dart,
        });
        self.out[from].push((i, true));
        self.out[to].push((i, false));
    }

    fn residual(&self, i: usize, fwd: bool) -> (usize, i64) {
        let a = &self.arcs[i];
        if fwd {
            (a.to, a.cap - a.flow)
        } else {
            (a.from, a.flow)
        }
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut prev: Vec<Option<(usize, bool)>> = vec![None; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(i, fwd) in &self.out[u] {
                let (w, r) = self.residual(i, fwd);
                if r > 0 && !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((i, fwd));
                    queue.push_back(w);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut at = t;
        while at != s {
            let (i, fwd) = prev[at].unwrap();
            if fwd {
                self.arcs[i].flow += 1;
                at = self.arcs[i].from;
            } else {
                self.arcs[i].flow -= 1;
                at = self.arcs[i].to;
            }
        }
        true
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &(i, fwd) in &self.out[u] {
                let (w, r) = self.residual(i, fwd);
                if r > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

pub(crate) fn for_each_subset<T: Copy>(items: &[T], k: usize, f: &mut dyn FnMut(&[T])) {
    fn rec<T: Copy>(
        items: &[T],
        k: usize,
        start: usize,
        cur: &mut Vec<T>,
        f: &mut dyn FnMut(&[T]),
    ) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut Vec::new(), f);
}

/// A simple cycle as a closed sequence of darts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    pub darts: Vec<End>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn edge_key(&self) -> Vec<EdgeId> {
        let mut es: Vec<EdgeId> = self.darts.iter().map(|d| d.edge).collect();
        es.sort();
        es
    }

    pub fn sort_key(&self) -> (usize, Vec<EdgeId>) {
        (self.len(), self.edge_key())
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.darts.iter().any(|d| d.edge == e)
    }

    /// +1 if the cycle runs along `e` from end 0 to end 1, -1 if against,
    /// 0 if it misses `e`.
    pub fn direction_on(&self, e: EdgeId) -> i64 {
        match self.darts.iter().find(|d| d.edge == e) {
            Some(d) if d.forward() => 1,
            Some(_) => -1,
            None => 0,
        }
    }

    pub fn reversed(&self) -> Cycle {
        Cycle {
            darts: self.darts.iter().rev().map(|d| d.twin()).collect(),
        }
    }

    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        self.darts.iter().map(|&d| g.tail(d)).collect()
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .darts
            .iter()
            .map(|d| format!("{}{}", if d.forward() { "+" } else { "-" }, d.edge))
            .collect();
        write!(f, "({})", parts.join(" "))
    }
}

/// An oriented path given by its darts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub darts: Vec<End>,
}

impl Path {
    pub fn edges(&self) -> Vec<EdgeId> {
        self.darts.iter().map(|d| d.edge).collect()
    }

    pub fn reversed(&self) -> Path {
        Path {
            darts: self.darts.iter().rev().map(|d| d.twin()).collect(),
        }
    }

    pub fn interior(&self, g: &Graph) -> Vec<VertexId> {
        self.darts.iter().skip(1).map(|&d| g.tail(d)).collect()
    }
}


#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;

    fn brute_cycles(g: &Graph) -> usize {
        let es: Vec<EdgeId> = g.edge_ids().collect();
        let mut count = 0;
        for mask in 1u32..(1 << es.len()) {
            let sub: BTreeSet<EdgeId> = (0..es.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| es[i])
                .collect();
            let h = g.subgraph(&sub);
            if h.is_connected() && h.vertices().all(|v| h.degree(v) == 2) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn cycle_counts() {
        assert!(graph(4, &[(0, 1), (1, 2), (1, 3)]).cycles().is_empty());
        assert_eq!(theta().cycles().len(), 3);
        let c = k4().cycles();
        assert_eq!(c.len(), 7);
        assert_eq!(c.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(brute_cycles(&k4()), 7);
        assert_eq!(delta2().cycles().len(), brute_cycles(&delta2()));
    }

    #[test]
    fn cycles_are_closed_and_canonical() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 3), (0, 3), (0, 1)]);
        for c in g.cycles() {
            let mut at = g.tail(c.darts[0]);
            assert_eq!(at, c.vertices(&g).into_iter().min().unwrap());
            for d in &c.darts {
                assert_eq!(g.tail(*d), at);
                at = g.head(*d);
            }
            assert_eq!(at, g.tail(c.darts[0]));
        }
        assert_eq!(g.cycles().len(), brute_cycles(&g));
    }

    #[test]
    fn connectivity() {
        assert_eq!(graph(3, &[(0, 1), (1, 2)]).vertex_connectivity(), 1);
        assert_eq!(theta().vertex_connectivity(), 1);
        assert_eq!(k4().vertex_connectivity(), 3);
        assert_eq!(delta2().vertex_connectivity(), 2);
    }

    #[test]
    fn menger() {
        let t = theta();
        let ps = t.menger_paths(v(0), v(1), 3).unwrap();
        assert_eq!(
            ps.iter().map(|p| p.edges()).collect::<Vec<_>>(),
            vec![vec![e(0)], vec![e(1)], vec![e(2)]]
        );

        let k = k4();
        let ps = k.menger_paths(v(0), v(3), 3).unwrap();
        let mut lens: Vec<usize> = ps.iter().map(|p| p.darts.len()).collect();
        lens.sort();
        assert_eq!(lens, vec![1, 2, 2]);

        let p = graph(3, &[(0, 1), (1, 2)]);
        let err = p.menger_paths(v(0), v(2), 2).unwrap_err();
        assert_eq!(err.vertices, BTreeSet::from([v(1)]));
        assert!(err.edges.is_empty());
    }

    #[test]
    fn bridges_found() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        assert_eq!(g.bridges(), BTreeSet::from([e(3)]));
    }
}
