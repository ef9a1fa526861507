//! Planarity testing on simple graphs with integer vertices.
//!
//! Each biconnected block is embedded by path addition: start from a cycle,
//! then repeatedly route a path of some fragment through a face that contains
//! all of its attachment vertices, preferring fragments with a single
//! admissible face. Block rotations are concatenated at cut vertices.
//! Non-planar graphs are reduced to a Kuratowski subdivision by deleting
//! every edge whose removal keeps the graph non-planar.

use std::collections::{BTreeSet, HashMap, VecDeque};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<BTreeSet<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        Self {
            adj: vec![BTreeSet::new(); n],
        }
    }

    /// Panics on self-loops or out-of-range endpoints; duplicates collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "self-loop at {u}");
        assert!(u < self.adj.len() && v < self.adj.len(), "edge ({u}, {v}) out of range");
        self.adj[v].insert(u);
        self.adj[u].insert(v)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        self.adj[v].remove(&u);
        self.adj[u].remove(&v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|a| a.contains(&v))
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, a) in self.adj.iter().enumerate() {
            out.extend(a.range(u + 1..).map(|&v| (u, v)));
        }
        out
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Cyclic neighbour order at each vertex.
pub type Rotation = Vec<Vec<usize>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KuratowskiKind {
    K5,
    K33,
}

impl std::fmt::Display for KuratowskiKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            KuratowskiKind::K5 => "K5",
            KuratowskiKind::K33 => "K3,3",
        })
    }
}

/// A subdivision of K5 or K3,3 contained in a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kuratowski {
    pub kind: KuratowskiKind,
    /// Vertices of degree 4 (K5) or 3 (K3,3) in the subdivision, sorted.
    pub branch_vertices: Vec<usize>,
    /// Edges of the subdivision, `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
}

/// Vertex, edge and face counts of one connected component of an embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EulerCount {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl EulerCount {
    pub fn characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }
}

/// Quick necessary condition: a simple planar graph with `V >= 3` has `E <= 3V - 6`.
pub fn exceeds_edge_bound(vertices: usize, edges: usize) -> bool {
    vertices >= 3 && edges + 6 > 3 * vertices
}

pub fn is_planar(g: &SimpleGraph) -> bool {
    planar_embedding(g).is_some()
}

/// A planar rotation system, or `None` if the graph is not planar.
pub fn planar_embedding(g: &SimpleGraph) -> Option<Rotation> {
    if exceeds_edge_bound(g.vertex_count(), g.edge_count()) {
        return None;
    }
    let mut rotation: Rotation = vec![Vec::new(); g.vertex_count()];
    for block in blocks(g) {
        let mut verts: Vec<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        let local = |x: usize| verts.binary_search(&x).unwrap();
        let edges: Vec<(usize, usize)> = block.iter().map(|&(u, v)| (local(u), local(v))).collect();
        let block_rotation = embed_block(verts.len(), &edges)?;
        for (i, rot) in block_rotation.into_iter().enumerate() {
            rotation[verts[i]].extend(rot.into_iter().map(|w| verts[w]));
        }
    }
    Some(rotation)
}

/// Traces the faces of a rotation system. A face is the vertex sequence of
/// its boundary walk, following `(u, v) -> (v, succ_v(u))`.
pub fn trace_faces(rotation: &Rotation) -> Vec<Vec<usize>> {
    let mut position: HashMap<(usize, usize), usize> = HashMap::new();
    for (v, rot) in rotation.iter().enumerate() {
        for (i, &w) in rot.iter().enumerate() {
            position.insert((v, w), i);
        }
    }
    let mut darts: Vec<(usize, usize)> = Vec::new();
    for (v, rot) in rotation.iter().enumerate() {
        darts.extend(rot.iter().map(|&w| (v, w)));
    }
    let mut used: HashMap<(usize, usize), bool> = darts.iter().map(|&d| (d, false)).collect();
    let mut faces = Vec::new();
    for &start in &darts {
        if used[&start] {
            continue;
        }
        let mut face = Vec::new();
        let mut dart = start;
        loop {
            used.insert(dart, true);
            face.push(dart.0);
            let (u, v) = dart;
            let rot = &rotation[v];
            let i = position[&(v, u)];
            dart = (v, rot[(i + 1) % rot.len()]);
            if dart == start {
                break;
            }
        }
        faces.push(face);
    }
    faces
}

/// Euler counts per connected component of the graph underlying `rotation`.
/// An isolated vertex counts as one face.
pub fn euler_counts(rotation: &Rotation) -> Vec<EulerCount> {
    let n = rotation.len();
    let mut g = SimpleGraph::new(n);
    for (v, rot) in rotation.iter().enumerate() {
        for &w in rot {
            g.add_edge(v, w);
        }
    }
    let comps = g.components();
    let mut comp_of = vec![0; n];
    for (c, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = c;
        }
    }
    let mut counts: Vec<EulerCount> = comps
        .iter()
        .map(|comp| EulerCount {
            vertices: comp.len(),
            edges: comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2,
            faces: 0,
        })
        .collect();
    for face in trace_faces(rotation) {
        counts[comp_of[face[0]]].faces += 1;
    }
    for c in &mut counts {
        if c.edges == 0 {
            c.faces = 1;
        }
    }
    counts
}

/// Biconnected blocks as edge lists (Tarjan, iterative).
fn blocks(g: &SimpleGraph) -> Vec<Vec<(usize, usize)>> {
    const UNSEEN: usize = usize::MAX;
    let n = g.vertex_count();
    let nbrs: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != UNSEEN || nbrs[root].is_empty() {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, UNSEEN, 0)];
        while let Some(frame) = frames.last_mut() {
            let (v, parent) = (frame.0, frame.1);
            if frame.2 < nbrs[v].len() {
                let w = nbrs[v][frame.2];
                frame.2 += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == UNSEEN {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(u, _, _)) = frames.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == (u, v) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Attachments of a fragment, and either a chord or the bridge component.
struct Fragment {
    attachments: Vec<usize>,
    chord: Option<(usize, usize)>,
    component: Vec<usize>,
}

/// Embeds a biconnected block on local vertices `0..n`.
fn embed_block(n: usize, edges: &[(usize, usize)]) -> Option<Rotation> {
    if edges.len() == 1 {
        let (u, v) = edges[0];
        let mut rot = vec![Vec::new(); n];
        rot[u].push(v);
        rot[v].push(u);
        return Some(rot);
    }
    if exceeds_edge_bound(n, edges.len()) {
        return None;
    }
    let g = SimpleGraph::from_edges(n, edges);

    // Initial cycle: a shortest path from u to v avoiding the edge (u, v).
    let (u0, v0) = g.edges()[0];
    let mut prev = vec![usize::MAX; n];
    prev[u0] = u0;
    let mut queue = VecDeque::from([u0]);
    while let Some(x) = queue.pop_front() {
        for y in g.neighbors(x) {
            if prev[y] == usize::MAX && !(x == u0 && y == v0) {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut cycle = vec![v0];
    while *cycle.last().unwrap() != u0 {
        cycle.push(prev[*cycle.last().unwrap()]);
    }

    let mut in_h = vec![false; n];
    let mut embedded: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, &x) in cycle.iter().enumerate() {
        in_h[x] = true;
        embedded.insert(key(x, cycle[(i + 1) % cycle.len()]));
    }
    let mut faces = vec![cycle.clone(), cycle.iter().rev().copied().collect::<Vec<_>>()];

    while embedded.len() < edges.len() {
        let fragments = fragments(&g, &in_h, &embedded);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, face)| frag.attachments.iter().all(|a| face.contains(a)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("unembedded edges leave a fragment");
        let path = fragment_path(&g, &in_h, &fragments[fi]);
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            embedded.insert(key(w[0], w[1]));
        }
        for &x in &path {
            in_h[x] = true;
        }
    }
    rotation_from_faces(n, &faces)
}

fn fragments(g: &SimpleGraph, in_h: &[bool], embedded: &BTreeSet<(usize, usize)>) -> Vec<Fragment> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        if in_h[u] && in_h[v] && !embedded.contains(&(u, v)) {
            out.push(Fragment {
                attachments: vec![u, v],
                chord: Some((u, v)),
                component: Vec::new(),
            });
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if in_h[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut component = vec![s];
        let mut attachments = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for y in g.neighbors(x) {
                if in_h[y] {
                    attachments.insert(y);
                } else if !seen[y] {
                    seen[y] = true;
                    component.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.push(Fragment {
            attachments: attachments.into_iter().collect(),
            chord: None,
            component,
        });
    }
    out
}

/// A path through the fragment between two distinct attachments.
fn fragment_path(g: &SimpleGraph, in_h: &[bool], frag: &Fragment) -> Vec<usize> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let a = frag.attachments[0];
    let n = g.vertex_count();
    let mut member = vec![false; n];
    for &x in &frag.component {
        member[x] = true;
    }
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for y in g.neighbors(a) {
        if member[y] {
            prev[y] = a;
            queue.push_back(y);
        }
    }
    while let Some(x) = queue.pop_front() {
        for y in g.neighbors(x) {
            if in_h[y] && y != a {
                let mut path = vec![y, x];
                let mut cur = x;
                while prev[cur] != a {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.push(a);
                path.reverse();
                return path;
            }
            if member[y] && prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    unreachable!("fragment of a biconnected block has two attachments")
}

/// Splits an oriented face along a path between two of its vertices.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = face.len();
    let (a, b) = (path[0], path[path.len() - 1]);
    let i = face.iter().position(|&x| x == a).unwrap();
    let j = face.iter().position(|&x| x == b).unwrap();
    let interior = &path[1..path.len() - 1];

    let mut f1 = Vec::new();
    let mut p = i;
    loop {
        f1.push(face[p]);
        if p == j {
            break;
        }
        p = (p + 1) % k;
    }
    f1.extend(interior.iter().rev());

    let mut f2 = Vec::new();
    let mut p = j;
    loop {
        f2.push(face[p]);
        if p == i {
            break;
        }
        p = (p + 1) % k;
    }
    f2.extend(interior.iter());
    (f1, f2)
}

fn rotation_from_faces(n: usize, faces: &[Vec<usize>]) -> Option<Rotation> {
    let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
    for face in faces {
        let k = face.len();
        for i in 0..k {
            let (u, v, w) = (face[(i + k - 1) % k], face[i], face[(i + 1) % k]);
            if succ[v].insert(u, w).is_some() {
                return None;
            }
        }
    }
    let mut rotation = vec![Vec::new(); n];
    for v in 0..n {
        let Some(&start) = succ[v].keys().min() else {
            continue;
        };
        let mut cur = start;
        loop {
            rotation[v].push(cur);
            cur = *succ[v].get(&cur)?;
            if cur == start {
                break;
            }
        }
        if rotation[v].len() != succ[v].len() {
            return None;
        }
    }
    Some(rotation)
}

/// A Kuratowski subdivision inside `g`, or `None` if `g` is planar.
pub fn kuratowski_subgraph(g: &SimpleGraph) -> Option<Kuratowski> {
    if is_planar(g) {
        return None;
    }
    let mut h = g.clone();
    for (u, v) in g.edges() {
        h.remove_edge(u, v);
        if is_planar(&h) {
            h.add_edge(u, v);
        }
    }
    Some(classify_subdivision(&h).expect("edge-minimal non-planar graph is a Kuratowski subdivision"))
}

/// Recognises a subdivision of K5 or K3,3 (isolated vertices ignored).
pub fn classify_subdivision(h: &SimpleGraph) -> Option<Kuratowski> {
    let n = h.vertex_count();
    let branch: Vec<usize> = (0..n).filter(|&v| h.degree(v) >= 3).collect();
    if (0..n).any(|v| h.degree(v) == 1) {
        return None;
    }
    let kind = match (branch.len(), branch.iter().all(|&v| h.degree(v) == 4), branch.iter().all(|&v| h.degree(v) == 3)) {
        (5, true, _) => KuratowskiKind::K5,
        (6, _, true) => KuratowskiKind::K33,
        _ => return None,
    };
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut visited_inner = vec![false; n];
    for &b in &branch {
        for first in h.neighbors(b) {
            let (mut prev, mut cur) = (b, first);
            while h.degree(cur) == 2 {
                visited_inner[cur] = true;
                let next = h.neighbors(cur).find(|&w| w != prev)?;
                prev = cur;
                cur = next;
            }
            if cur == b {
                return None;
            }
            pairs.insert(key(b, cur));
        }
    }
    // Every degree-2 vertex must lie on a branch path.
    if (0..n).any(|v| h.degree(v) == 2 && !visited_inner[v]) {
        return None;
    }
    let expected = match kind {
        KuratowskiKind::K5 => 10,
        KuratowskiKind::K33 => 9,
    };
    // Parallel branch paths would collapse in `pairs`.
    let path_count: usize = branch.iter().map(|&b| h.degree(b)).sum::<usize>() / 2;
    if pairs.len() != expected || path_count != expected {
        return None;
    }
    if kind == KuratowskiKind::K33 {
        let side: Vec<usize> = branch.iter().copied().filter(|&x| x == branch[0] || !pairs.contains(&key(branch[0], x))).collect();
        if side.len() != 3 {
            return None;
        }
        for (i, &x) in side.iter().enumerate() {
            if side[i + 1..].iter().any(|&y| pairs.contains(&key(x, y))) {
                return None;
            }
        }
    }
    Some(Kuratowski {
        kind,
        branch_vertices: branch,
        edges: h.edges(),
    })
}
