//! Brute-force reference implementations used by the integration and
//! acceptance tests. Nothing here calls into the library's algorithms.
#![allow(dead_code, clippy::needless_range_loop, clippy::collapsible_if)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;

// ---------------------------------------------------------------- graphs

/// Adjacency bitmasks on at most 16 vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallGraph {
    pub n: usize,
    pub adj: Vec<u16>,
}

impl SmallGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        assert!(n <= 16);
        let mut adj = vec![0u16; n];
        for &(u, v) in edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Self { n, adj }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Every graph on `n` labelled vertices.
    pub fn census(n: usize) -> impl Iterator<Item = SmallGraph> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        (0u64..1 << pairs.len()).map(move |mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            SmallGraph::new(n, &edges)
        })
    }

    pub fn random<R: Rng>(rng: &mut R, n: usize, p: f64) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Self::new(n, &edges)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|&i| mask >> i & 1 == 1).collect());
        }
    }
    out
}

/// Internally disjoint paths realising every pair, avoiding `blocked`.
fn route_all(g: &SmallGraph, pairs: &[(usize, usize)], blocked: u16) -> bool {
    let Some((&(a, b), rest)) = pairs.split_first() else {
        return true;
    };
    // simple paths a -> b whose interior avoids `blocked`
    fn walk(g: &SmallGraph, cur: usize, target: usize, blocked: u16, interior: u16, rest: &[(usize, usize)]) -> bool {
        if g.has_edge(cur, target) && route_all(g, rest, blocked | interior) {
            return true;
        }
        for w in 0..g.n {
            let bit = 1u16 << w;
            if g.has_edge(cur, w) && blocked & bit == 0 && interior & bit == 0 && w != target {
                if walk(g, w, target, blocked, interior | bit, rest) {
                    return true;
                }
            }
        }
        false
    }
    walk(g, a, b, blocked, 0, rest)
}

/// Whether `g` contains a subdivision of K5 or K3,3.
pub fn has_kuratowski_subdivision(g: &SmallGraph) -> bool {
    let n = g.n;
    for branch in subsets(n, 5) {
        let mask = branch.iter().fold(0u16, |m, &v| m | 1 << v);
        let pairs: Vec<_> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).map(|(i, j)| (branch[i], branch[j])).collect();
        if route_all(g, &pairs, mask) {
            return true;
        }
    }
    for six in subsets(n, 6) {
        let mask = six.iter().fold(0u16, |m, &v| m | 1 << v);
        for rest in subsets(5, 2) {
            let side_a = [six[0], six[1 + rest[0]], six[1 + rest[1]]];
            let side_b: Vec<usize> = six.iter().copied().filter(|v| !side_a.contains(v)).collect();
            let pairs: Vec<_> = side_a.iter().flat_map(|&a| side_b.iter().map(move |&b| (a, b))).collect();
            if route_all(g, &pairs, mask) {
                return true;
            }
        }
    }
    false
}

/// Whether the vertices can be placed on a line so that every edge joins
/// neighbours in the placement.
pub fn embeds_on_line(g: &SmallGraph) -> bool {
    let mut order: Vec<usize> = (0..g.n).collect();
    permute(&mut order, 0, &mut |p| {
        let mut pos = vec![0; g.n];
        for (i, &v) in p.iter().enumerate() {
            pos[v] = i as i64;
        }
        g.edges().iter().all(|&(u, v)| (pos[u] - pos[v]).abs() == 1)
    })
}

fn permute(v: &mut Vec<usize>, k: usize, accept: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == v.len() {
        return accept(v);
    }
    for i in k..v.len() {
        v.swap(k, i);
        if permute(v, k + 1, accept) {
            v.swap(k, i);
            return true;
        }
        v.swap(k, i);
    }
    false
}

// ---------------------------------------------------------------- sheaves

/// Raw model data, independent of the library's model type.
#[derive(Debug, Clone)]
pub struct RawModel {
    pub ids: Vec<String>,
    pub carriers: Vec<Vec<String>>,
    /// Declared `(super, sub)` index pairs.
    pub order: Vec<(usize, usize)>,
    /// Restriction for every comparable pair of the closure.
    pub maps: HashMap<(usize, usize), BTreeMap<String, String>>,
    /// Unordered pair -> meet.
    pub meets: Vec<((usize, usize), usize)>,
    pub top: usize,
}

impl RawModel {
    pub fn below(&self) -> Vec<Vec<bool>> {
        let n = self.ids.len();
        let mut c = vec![vec![false; n]; n];
        for &(a, b) in &self.order {
            c[a][b] = true;
        }
        // closure by repeated squaring until stable
        loop {
            let mut changed = false;
            for a in 0..n {
                for b in 0..n {
                    if c[a][b] {
                        for d in 0..n {
                            if c[b][d] && !c[a][d] {
                                c[a][d] = true;
                                changed = true;
                            }
                        }
                    }
                }
            }
            if !changed {
                return c;
            }
        }
    }

    fn rho(&self, a: usize, b: usize, x: &str) -> String {
        if a == b {
            x.to_owned()
        } else {
            self.maps[&(a, b)][x].clone()
        }
    }

    pub fn composition_ok(&self) -> bool {
        let c = self.below();
        let n = self.ids.len();
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    if c[a][b] && c[b][d] {
                        for x in &self.carriers[a] {
                            if self.rho(a, d, x) != self.rho(b, d, &self.rho(a, b, x)) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    pub fn separated_ok(&self) -> bool {
        let c = self.below();
        let t = self.top;
        let cover: Vec<usize> = (0..self.ids.len()).filter(|&j| c[t][j]).collect();
        let carrier = &self.carriers[t];
        for (i, g) in carrier.iter().enumerate() {
            for h in &carrier[i + 1..] {
                if cover.iter().all(|&j| self.rho(t, j, g) == self.rho(t, j, h)) {
                    return false;
                }
            }
        }
        true
    }

    fn meet(&self, c: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
        for &((x, y), m) in &self.meets {
            if (x, y) == (a, b) || (x, y) == (b, a) {
                return Some(m);
            }
        }
        if a == b || c[a][b] {
            Some(b)
        } else if c[b][a] {
            Some(a)
        } else {
            None
        }
    }

    /// All families over the cover below the top, compatible or not.
    pub fn families(&self) -> Vec<Vec<(usize, String)>> {
        let c = self.below();
        let cover: Vec<usize> = (0..self.ids.len()).filter(|&j| c[self.top][j]).collect();
        let mut out: Vec<Vec<(usize, String)>> = vec![vec![]];
        for &j in &cover {
            let mut next = Vec::new();
            for fam in &out {
                for x in &self.carriers[j] {
                    let mut f = fam.clone();
                    f.push((j, x.clone()));
                    next.push(f);
                }
            }
            out = next;
        }
        out
    }

    pub fn compatible(&self, fam: &[(usize, String)]) -> bool {
        let c = self.below();
        for (i, (a, fa)) in fam.iter().enumerate() {
            for (b, fb) in &fam[i + 1..] {
                if let Some(m) = self.meet(&c, *a, *b) {
                    if self.rho(*a, m, fa) != self.rho(*b, m, fb) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn amalgams(&self, fam: &[(usize, String)]) -> Vec<String> {
        self.carriers[self.top]
            .iter()
            .filter(|f| fam.iter().all(|(j, x)| &self.rho(self.top, *j, f) == x))
            .cloned()
            .collect()
    }

    pub fn gluing_ok(&self) -> bool {
        let separated = self.separated_ok();
        let top_size = self.carriers[self.top].len();
        self.families().iter().filter(|f| self.compatible(f)).all(|f| {
            if f.is_empty() && top_size > 1 {
                return true;
            }
            let k = self.amalgams(f).len();
            k >= 1 && (!separated || k == 1)
        })
    }

    pub fn family_space(&self) -> usize {
        let c = self.below();
        (0..self.ids.len())
            .filter(|&j| c[self.top][j])
            .map(|j| self.carriers[j].len())
            .product()
    }
}

/// Random model with at most 6 sub-cosmoses and carriers of at most 8
/// elements. Index 0 is the unique top.
///
/// Half the models are projections of a product `{0,1}^k` onto coordinate
/// subsets (composition and gluing hold by construction, modulo missing
/// intersections); some of those get one corrupted map entry. The rest use
/// random carriers and random maps.
pub fn random_model<R: Rng>(rng: &mut R) -> RawModel {
    if rng.gen_bool(0.5) {
        product_model(rng)
    } else {
        random_maps_model(rng)
    }
}

fn product_model<R: Rng>(rng: &mut R) -> RawModel {
    let k = rng.gen_range(1..=3usize);
    let full: Vec<usize> = (0..k).collect();
    let count = rng.gen_range(2..=6usize);
    let mut coord_sets = vec![full.clone()];
    for _ in 1..count {
        let s: Vec<usize> = full.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if s.len() == k {
            coord_sets.push(s[..k - 1].to_vec());
        } else {
            coord_sets.push(s);
        }
    }
    if k > 1 && rng.gen_bool(0.5) {
        // cover every coordinate so that separatedness can hold
        for c in 0..k {
            if coord_sets.len() < 6 && !coord_sets[1..].iter().any(|s| s.contains(&c)) {
                coord_sets.push(vec![c]);
            }
        }
    }
    let tuple = |mask: usize, coords: &[usize]| -> String {
        if coords.is_empty() {
            "*".to_owned()
        } else {
            coords.iter().map(|&c| if mask >> c & 1 == 1 { '1' } else { '0' }).collect()
        }
    };
    let carriers: Vec<Vec<String>> = coord_sets
        .iter()
        .map(|cs| {
            let mut v: Vec<String> = (0..1usize << k).map(|m| tuple(m, cs)).collect::<BTreeSet<_>>().into_iter().collect();
            v.sort();
            v
        })
        .collect();
    let subset = |a: &[usize], b: &[usize]| b.iter().all(|x| a.contains(x)) && b.len() < a.len();
    let n = coord_sets.len();
    let mut order = Vec::new();
    let mut maps = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            if subset(&coord_sets[a], &coord_sets[b]) {
                order.push((a, b));
                let mut map = BTreeMap::new();
                for m in 0..1usize << k {
                    map.insert(tuple(m, &coord_sets[a]), tuple(m, &coord_sets[b]));
                }
                maps.insert((a, b), map);
            }
        }
    }
    let mut meets = Vec::new();
    for a in 1..n {
        for b in a + 1..n {
            let inter: Vec<usize> = coord_sets[a].iter().copied().filter(|x| coord_sets[b].contains(x)).collect();
            if let Some(m) = (0..n).find(|&m| coord_sets[m] == inter && subset(&coord_sets[a], &coord_sets[m]) && subset(&coord_sets[b], &coord_sets[m])) {
                if !subset(&coord_sets[a], &coord_sets[b]) && !subset(&coord_sets[b], &coord_sets[a]) && rng.gen_bool(0.7) {
                    meets.push(((a, b), m));
                }
            }
        }
    }
    if rng.gen_bool(0.3) && !maps.is_empty() {
        let mut keys: Vec<_> = maps.keys().copied().collect();
        keys.sort();
        let key = *keys.choose(rng).unwrap();
        let dst = &carriers[key.1];
        let map = maps.get_mut(&key).unwrap();
        let x = map.keys().cloned().collect::<Vec<_>>().choose(rng).unwrap().clone();
        map.insert(x, dst.choose(rng).unwrap().clone());
    }
    RawModel {
        ids: (0..n).map(|i| format!("C{i}")).collect(),
        carriers,
        order,
        maps,
        meets,
        top: 0,
    }
}

fn random_maps_model<R: Rng>(rng: &mut R) -> RawModel {
    let n = rng.gen_range(2..=5usize);
    let carriers: Vec<Vec<String>> = (0..n)
        .map(|i| (0..rng.gen_range(1..=4usize)).map(|k| format!("e{i}_{k}")).collect())
        .collect();
    let mut order = Vec::new();
    for b in 1..n {
        order.push((0, b));
        for a in 1..b {
            if rng.gen_bool(0.3) {
                order.push((a, b));
            }
        }
    }
    let mut raw = RawModel {
        ids: (0..n).map(|i| format!("C{i}")).collect(),
        carriers,
        order,
        maps: HashMap::new(),
        meets: Vec::new(),
        top: 0,
    };
    let c = raw.below();
    for a in 0..n {
        for b in 0..n {
            if c[a][b] {
                let map = raw.carriers[a]
                    .iter()
                    .map(|x| (x.clone(), raw.carriers[b].choose(rng).unwrap().clone()))
                    .collect();
                raw.maps.insert((a, b), map);
            }
        }
    }
    for a in 1..n {
        for b in a + 1..n {
            if !c[a][b] && !c[b][a] {
                if let Some(m) = (1..n).find(|&m| c[a][m] && c[b][m]) {
                    if rng.gen_bool(0.5) {
                        raw.meets.push(((a, b), m));
                    }
                }
            }
        }
    }
    raw
}

// ---------------------------------------------------------------- quadrature

/// Composite Simpson with a fixed number of (even) steps.
pub fn fixed_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, steps: usize) -> f64 {
    assert!(steps.is_multiple_of(2));
    let h = (b - a) / steps as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..steps {
        let x = f(a + h * i as f64);
        if i % 2 == 1 {
            odd += x;
        } else {
            even += x;
        }
    }
    h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even)
}

/// Builds the library model from raw data (declared order pairs plus every
/// restriction of the closure).
pub fn to_library(raw: &RawModel) -> multispace::multicosmos::MultiCosmosModel {
    use multispace::multicosmos::{Intersection, MultiCosmosModel, Restriction, SubCosmos};
    let subs = raw
        .ids
        .iter()
        .zip(&raw.carriers)
        .map(|(id, c)| SubCosmos::new(id.clone(), c.clone(), 0))
        .collect();
    let order: Vec<(String, String)> = raw.order.iter().map(|&(a, b)| (raw.ids[a].clone(), raw.ids[b].clone())).collect();
    let mut keys: Vec<_> = raw.maps.keys().copied().collect();
    keys.sort();
    let restrictions = keys
        .iter()
        .map(|&(a, b)| Restriction::new(raw.ids[a].clone(), raw.ids[b].clone(), raw.maps[&(a, b)].clone()))
        .collect();
    let intersections = raw
        .meets
        .iter()
        .map(|&((a, b), m)| Intersection::new(raw.ids[a].clone(), raw.ids[b].clone(), raw.ids[m].clone()))
        .collect();
    MultiCosmosModel::new(subs, &order, restrictions, intersections).expect("generated model is well formed")
}
