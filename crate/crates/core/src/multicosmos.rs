//! Finite multi-cosmos models: sub-cosmoses ordered by containment, with
//! restriction maps `ρ_{A→B}` for every comparable pair `A ⊃ B`.
//!
//! The checks are the finite presheaf and sheaf conditions:
//!
//! * composition: `ρ_{A→C} = ρ_{B→C} ∘ ρ_{A→B}` for every chain `A ⊃ B ⊃ C`;
//! * separatedness: distinct elements of a maximal sub-cosmos are told apart
//!   by some restriction below it;
//! * gluing: compatible local sections come from an element of the top.
//!
//! Carriers are plain finite sets. Intersections are declared explicitly; a
//! comparable pair `A ⊃ B` is compared on `B` itself. Operation tables can be
//! attached to carriers, in which case restrictions are also checked to
//! preserve them.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultiCosmosError {
    #[error("duplicate sub-cosmos id {0:?}")]
    DuplicateId(String),
    #[error("sub-cosmos {0:?} has an empty carrier")]
    EmptyCarrier(String),
    #[error("element {element:?} listed twice in {id:?}")]
    DuplicateElement { id: String, element: String },
    #[error("unknown sub-cosmos {0:?}")]
    UnknownSubCosmos(String),
    #[error("element {element:?} is not in the carrier of {id:?}")]
    UnknownElement { id: String, element: String },
    #[error("containment order has a cycle through {0:?}")]
    OrderCycle(String),
    #[error("missing restriction {src:?} -> {dst:?}")]
    MissingRestriction { src: String, dst: String },
    #[error("restriction {src:?} -> {dst:?} given for a pair that is not src ⊃ dst")]
    UnexpectedRestriction { src: String, dst: String },
    #[error("restriction {src:?} -> {dst:?} given twice")]
    DuplicateRestriction { src: String, dst: String },
    #[error("restriction {src:?} -> {dst:?} is undefined on {element:?}")]
    MapNotTotal { src: String, dst: String, element: String },
    #[error("restriction {src:?} -> {dst:?} sends {element:?} to {image:?}, outside the target carrier")]
    MapOutsideCarrier {
        src: String,
        dst: String,
        element: String,
        image: String,
    },
    #[error("intersection {meet:?} of {a:?} and {b:?} is not below both")]
    IntersectionNotBelow { a: String, b: String, meet: String },
    #[error("intersection of {0:?} and {1:?} declared twice")]
    DuplicateIntersection(String, String),
    #[error("operation table of {id:?} is undefined on ({x:?}, {y:?})")]
    OperationNotTotal { id: String, x: String, y: String },
    #[error("{0:?} is not a maximal sub-cosmos")]
    NotMaximal(String),
    #[error("{id:?} is not contained in {top:?}")]
    NotBelow { top: String, id: String },
    #[error("sections on {a:?} and {b:?} disagree on {meet:?}")]
    IncompatibleFamily { a: String, b: String, meet: String },
    #[error("no element of {0:?} restricts to the given family")]
    NoAmalgam(String),
    #[error("empty family over {0:?} with more than one element is underdetermined")]
    Underdetermined(String),
}

pub type Result<T> = std::result::Result<T, MultiCosmosError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubCosmos {
    pub id: String,
    pub carrier: Vec<String>,
    pub time_tag: i64,
}

impl SubCosmos {
    pub fn new<S: Into<String>>(id: impl Into<String>, carrier: impl IntoIterator<Item = S>, time_tag: i64) -> Self {
        Self {
            id: id.into(),
            carrier: carrier.into_iter().map(Into::into).collect(),
            time_tag,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub src: String,
    pub dst: String,
    pub map: BTreeMap<String, String>,
}

impl Restriction {
    pub fn new<K: Into<String>, V: Into<String>>(
        src: impl Into<String>,
        dst: impl Into<String>,
        map: impl IntoIterator<Item = (K, V)>,
    ) -> Self {
        Self {
            src: src.into(),
            dst: dst.into(),
            map: map.into_iter().map(|(k, v)| (k.into(), v.into())).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intersection {
    pub a: String,
    pub b: String,
    pub meet: String,
}

impl Intersection {
    pub fn new(a: impl Into<String>, b: impl Into<String>, meet: impl Into<String>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            meet: meet.into(),
        }
    }
}

/// Assignment of one element `f_i` to each named sub-cosmos.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct SectionFamily {
    pub assignments: BTreeMap<String, String>,
}

impl SectionFamily {
    pub fn new<K: Into<String>, V: Into<String>>(pairs: impl IntoIterator<Item = (K, V)>) -> Self {
        Self {
            assignments: pairs.into_iter().map(|(k, v)| (k.into(), v.into())).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MultiCosmosModel {
    subs: Vec<SubCosmos>,
    index: HashMap<String, usize>,
    elements: Vec<HashMap<String, usize>>,
    /// `contains[a][b]` iff `a ⊃ b` (strict, transitively closed).
    contains: Vec<Vec<bool>>,
    maps: HashMap<(usize, usize), Vec<usize>>,
    meets: HashMap<(usize, usize), usize>,
    operations: Vec<Option<Vec<Vec<usize>>>>,
}

fn unordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl MultiCosmosModel {
    /// `order` lists pairs `(super, sub)`; its transitive closure is used, so
    /// restrictions are required for every pair of the closure.
    pub fn new(
        subcosmoses: Vec<SubCosmos>,
        order: &[(String, String)],
        restrictions: Vec<Restriction>,
        intersections: Vec<Intersection>,
    ) -> Result<Self> {
        let mut index = HashMap::new();
        let mut elements = Vec::new();
        for (i, s) in subcosmoses.iter().enumerate() {
            if index.insert(s.id.clone(), i).is_some() {
                return Err(MultiCosmosError::DuplicateId(s.id.clone()));
            }
            if s.carrier.is_empty() {
                return Err(MultiCosmosError::EmptyCarrier(s.id.clone()));
            }
            let mut e = HashMap::new();
            for (k, x) in s.carrier.iter().enumerate() {
                if e.insert(x.clone(), k).is_some() {
                    return Err(MultiCosmosError::DuplicateElement {
                        id: s.id.clone(),
                        element: x.clone(),
                    });
                }
            }
            elements.push(e);
        }
        let n = subcosmoses.len();
        let lookup = |id: &str| index.get(id).copied().ok_or_else(|| MultiCosmosError::UnknownSubCosmos(id.to_owned()));

        let mut contains = vec![vec![false; n]; n];
        for (a, b) in order {
            contains[lookup(a)?][lookup(b)?] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if contains[i][k] {
                    let row = contains[k].clone();
                    for (cell, below) in contains[i].iter_mut().zip(row) {
                        *cell |= below;
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| contains[i][i]) {
            return Err(MultiCosmosError::OrderCycle(subcosmoses[i].id.clone()));
        }

        let mut maps = HashMap::new();
        for r in &restrictions {
            let (s, d) = (lookup(&r.src)?, lookup(&r.dst)?);
            if !contains[s][d] {
                return Err(MultiCosmosError::UnexpectedRestriction {
                    src: r.src.clone(),
                    dst: r.dst.clone(),
                });
            }
            if let Some(x) = r.map.keys().find(|x| !elements[s].contains_key(*x)) {
                return Err(MultiCosmosError::UnknownElement {
                    id: r.src.clone(),
                    element: x.clone(),
                });
            }
            let mut table = Vec::with_capacity(subcosmoses[s].carrier.len());
            for x in &subcosmoses[s].carrier {
                let image = r.map.get(x).ok_or_else(|| MultiCosmosError::MapNotTotal {
                    src: r.src.clone(),
                    dst: r.dst.clone(),
                    element: x.clone(),
                })?;
                let k = elements[d].get(image).ok_or_else(|| MultiCosmosError::MapOutsideCarrier {
                    src: r.src.clone(),
                    dst: r.dst.clone(),
                    element: x.clone(),
                    image: image.clone(),
                })?;
                table.push(*k);
            }
            if maps.insert((s, d), table).is_some() {
                return Err(MultiCosmosError::DuplicateRestriction {
                    src: r.src.clone(),
                    dst: r.dst.clone(),
                });
            }
        }
        for s in 0..n {
            for d in 0..n {
                if contains[s][d] && !maps.contains_key(&(s, d)) {
                    return Err(MultiCosmosError::MissingRestriction {
                        src: subcosmoses[s].id.clone(),
                        dst: subcosmoses[d].id.clone(),
                    });
                }
            }
        }

        let mut meets = HashMap::new();
        for x in &intersections {
            let (a, b, m) = (lookup(&x.a)?, lookup(&x.b)?, lookup(&x.meet)?);
            let below = |p: usize| p == m || contains[p][m];
            if !(below(a) && below(b)) {
                return Err(MultiCosmosError::IntersectionNotBelow {
                    a: x.a.clone(),
                    b: x.b.clone(),
                    meet: x.meet.clone(),
                });
            }
            if meets.insert(unordered(a, b), m).is_some() {
                return Err(MultiCosmosError::DuplicateIntersection(x.a.clone(), x.b.clone()));
            }
        }

        Ok(Self {
            operations: vec![None; n],
            subs: subcosmoses,
            index,
            elements,
            contains,
            maps,
            meets,
        })
    }

    /// Attaches a binary operation table `(x, y) ↦ x·y` to a carrier.
    pub fn with_operation(mut self, id: &str, table: &BTreeMap<(String, String), String>) -> Result<Self> {
        let i = self.idx(id)?;
        let carrier = &self.subs[i].carrier;
        let mut out = vec![vec![0; carrier.len()]; carrier.len()];
        for (a, x) in carrier.iter().enumerate() {
            for (b, y) in carrier.iter().enumerate() {
                let z = table.get(&(x.clone(), y.clone())).ok_or_else(|| MultiCosmosError::OperationNotTotal {
                    id: id.to_owned(),
                    x: x.clone(),
                    y: y.clone(),
                })?;
                out[a][b] = self.elem(i, z)?;
            }
        }
        self.operations[i] = Some(out);
        Ok(self)
    }

    fn idx(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| MultiCosmosError::UnknownSubCosmos(id.to_owned()))
    }

    fn elem(&self, i: usize, x: &str) -> Result<usize> {
        self.elements[i].get(x).copied().ok_or_else(|| MultiCosmosError::UnknownElement {
            id: self.subs[i].id.clone(),
            element: x.to_owned(),
        })
    }

    pub fn subcosmoses(&self) -> &[SubCosmos] {
        &self.subs
    }

    pub fn subcosmos(&self, id: &str) -> Option<&SubCosmos> {
        self.index.get(id).map(|&i| &self.subs[i])
    }

    /// Whether `a ⊃ b` strictly.
    pub fn contains(&self, a: &str, b: &str) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&a), Some(&b)) => self.contains[a][b],
            _ => false,
        }
    }

    /// Ids strictly below `top`, in declaration order.
    pub fn below(&self, top: &str) -> Result<Vec<&str>> {
        let t = self.idx(top)?;
        Ok((0..self.subs.len())
            .filter(|&j| self.contains[t][j])
            .map(|j| self.subs[j].id.as_str())
            .collect())
    }

    pub fn is_maximal(&self, id: &str) -> Result<bool> {
        let i = self.idx(id)?;
        Ok((0..self.subs.len()).all(|j| !self.contains[j][i]))
    }

    pub fn maximal_ids(&self) -> Vec<&str> {
        (0..self.subs.len())
            .filter(|&i| (0..self.subs.len()).all(|j| !self.contains[j][i]))
            .map(|i| self.subs[i].id.as_str())
            .collect()
    }

    /// `ρ_{src→dst}(x)`; the identity when `src == dst`.
    pub fn restrict(&self, src: &str, dst: &str, x: &str) -> Result<&str> {
        let (s, d) = (self.idx(src)?, self.idx(dst)?);
        let k = self.elem(s, x)?;
        let image = self.restrict_idx(s, d, k).ok_or_else(|| MultiCosmosError::NotBelow {
            top: src.to_owned(),
            id: dst.to_owned(),
        })?;
        Ok(&self.subs[d].carrier[image])
    }

    fn restrict_idx(&self, s: usize, d: usize, k: usize) -> Option<usize> {
        if s == d {
            Some(k)
        } else {
            self.maps.get(&(s, d)).map(|m| m[k])
        }
    }

    /// Where two sections on `a` and `b` are compared, if anywhere.
    fn meet_idx(&self, a: usize, b: usize) -> Option<usize> {
        if let Some(&m) = self.meets.get(&unordered(a, b)) {
            return Some(m);
        }
        if a == b || self.contains[a][b] {
            Some(b)
        } else if self.contains[b][a] {
            Some(a)
        } else {
            None
        }
    }

    fn family_indices(&self, family: &SectionFamily) -> Result<Vec<(usize, usize)>> {
        family
            .assignments
            .iter()
            .map(|(id, x)| {
                let i = self.idx(id)?;
                Ok((i, self.elem(i, x)?))
            })
            .collect()
    }

    fn first_incompatibility(&self, family: &[(usize, usize)]) -> Option<(usize, usize, usize)> {
        for (p, &(a, fa)) in family.iter().enumerate() {
            for &(b, fb) in &family[p + 1..] {
                if let Some(m) = self.meet_idx(a, b) {
                    if self.restrict_idx(a, m, fa) != self.restrict_idx(b, m, fb) {
                        return Some((a, b, m));
                    }
                }
            }
        }
        None
    }

    /// Elements of `top` restricting to every assigned section, in carrier order.
    fn amalgams(&self, top: usize, family: &[(usize, usize)]) -> Vec<usize> {
        (0..self.subs[top].carrier.len())
            .filter(|&f| family.iter().all(|&(i, fi)| self.restrict_idx(top, i, f) == Some(fi)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionViolation {
    /// `[A, B, C]` with `A ⊃ B ⊃ C`.
    pub chain: [String; 3],
    pub element: String,
    /// `ρ_{A→C}(x)`.
    pub direct: String,
    /// `ρ_{B→C}(ρ_{A→B}(x))`.
    pub composite: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionReport {
    pub passed: bool,
    pub chains_checked: usize,
    pub violations: Vec<CompositionViolation>,
}

/// Checks `ρ_{A→C} = ρ_{B→C} ∘ ρ_{A→B}` on every chain, reporting the first
/// failing element of each chain.
pub fn validate_composition(m: &MultiCosmosModel) -> CompositionReport {
    let n = m.subs.len();
    let mut chains_checked = 0;
    let mut violations = Vec::new();
    for a in 0..n {
        for b in (0..n).filter(|&b| m.contains[a][b]) {
            for c in (0..n).filter(|&c| m.contains[b][c]) {
                chains_checked += 1;
                let (ab, bc, ac) = (&m.maps[&(a, b)], &m.maps[&(b, c)], &m.maps[&(a, c)]);
                if let Some(x) = (0..ab.len()).find(|&x| ac[x] != bc[ab[x]]) {
                    violations.push(CompositionViolation {
                        chain: [m.subs[a].id.clone(), m.subs[b].id.clone(), m.subs[c].id.clone()],
                        element: m.subs[a].carrier[x].clone(),
                        direct: m.subs[c].carrier[ac[x]].clone(),
                        composite: m.subs[c].carrier[bc[ab[x]]].clone(),
                    });
                }
            }
        }
    }
    CompositionReport {
        passed: violations.is_empty(),
        chains_checked,
        violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatedReport {
    pub top: String,
    pub passed: bool,
    pub pairs_checked: usize,
    /// Pairs `(g, h)` that no restriction below `top` tells apart.
    pub violations: Vec<(String, String)>,
}

pub fn validate_separated(m: &MultiCosmosModel, top: &str) -> Result<SeparatedReport> {
    if !m.is_maximal(top)? {
        return Err(MultiCosmosError::NotMaximal(top.to_owned()));
    }
    let t = m.idx(top)?;
    let below: Vec<&Vec<usize>> = (0..m.subs.len())
        .filter(|&j| m.contains[t][j])
        .map(|j| &m.maps[&(t, j)])
        .collect();
    let carrier = &m.subs[t].carrier;
    let mut violations = Vec::new();
    let mut pairs_checked = 0;
    for g in 0..carrier.len() {
        for h in g + 1..carrier.len() {
            pairs_checked += 1;
            if below.iter().all(|map| map[g] == map[h]) {
                violations.push((carrier[g].clone(), carrier[h].clone()));
            }
        }
    }
    Ok(SeparatedReport {
        top: top.to_owned(),
        passed: violations.is_empty(),
        pairs_checked,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Amalgam {
    pub element: String,
    /// Number of elements of the top carrier that restrict to the family.
    pub candidates: usize,
}

impl Amalgam {
    pub fn is_unique(&self) -> bool {
        self.candidates == 1
    }
}

/// Finds `f` in `top` with `ρ_{top→i}(f) = f_i` for every assigned `i`.
///
/// Sections are first checked pairwise on declared intersections (and on the
/// smaller member of comparable pairs). The whole carrier is searched, so
/// [`Amalgam::candidates`] counts every solution.
pub fn glue(m: &MultiCosmosModel, top: &str, family: &SectionFamily) -> Result<Amalgam> {
    let t = m.idx(top)?;
    let fam = m.family_indices(family)?;
    for &(i, _) in &fam {
        if i != t && !m.contains[t][i] {
            return Err(MultiCosmosError::NotBelow {
                top: top.to_owned(),
                id: m.subs[i].id.clone(),
            });
        }
    }
    if let Some((a, b, meet)) = m.first_incompatibility(&fam) {
        return Err(MultiCosmosError::IncompatibleFamily {
            a: m.subs[a].id.clone(),
            b: m.subs[b].id.clone(),
            meet: m.subs[meet].id.clone(),
        });
    }
    if fam.is_empty() && m.subs[t].carrier.len() > 1 {
        return Err(MultiCosmosError::Underdetermined(top.to_owned()));
    }
    let found = m.amalgams(t, &fam);
    match found.first() {
        Some(&f) => Ok(Amalgam {
            element: m.subs[t].carrier[f].clone(),
            candidates: found.len(),
        }),
        None => Err(MultiCosmosError::NoAmalgam(top.to_owned())),
    }
}

/// The family `{i ↦ ρ_{top→i}(f)}` over every sub-cosmos below `top`.
pub fn restrict_family(m: &MultiCosmosModel, top: &str, f: &str) -> Result<SectionFamily> {
    let mut family = SectionFamily::default();
    for id in m.below(top)? {
        family
            .assignments
            .insert(id.to_owned(), m.restrict(top, id, f)?.to_owned());
    }
    Ok(family)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GluingFailureKind {
    NoAmalgam,
    /// Several amalgams although the top is separated.
    Ambiguous(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingFailure {
    pub family: SectionFamily,
    pub kind: GluingFailureKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GluingReport {
    Skipped,
    Checked {
        /// Compatible families tested.
        families: usize,
        /// Whether every family over the cover was enumerated.
        exhaustive: bool,
        failures: Vec<GluingFailure>,
    },
}

impl GluingReport {
    /// `None` when skipped.
    pub fn passed(&self) -> Option<bool> {
        match self {
            GluingReport::Skipped => None,
            GluingReport::Checked { failures, .. } => Some(failures.is_empty()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperationViolation {
    pub src: String,
    pub dst: String,
    pub x: String,
    pub y: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperationReport {
    pub passed: bool,
    pub restrictions_checked: usize,
    pub violations: Vec<OperationViolation>,
}

/// Checks `ρ(x·y) = ρ(x)·ρ(y)` on restrictions whose two ends both carry an
/// operation table. `None` if no tables are attached.
pub fn validate_operations(m: &MultiCosmosModel) -> Option<OperationReport> {
    if m.operations.iter().all(Option::is_none) {
        return None;
    }
    let mut keys: Vec<&(usize, usize)> = m.maps.keys().collect();
    keys.sort_unstable();
    let mut checked = 0;
    let mut violations = Vec::new();
    for &(s, d) in keys {
        let (Some(os), Some(od)) = (&m.operations[s], &m.operations[d]) else {
            continue;
        };
        checked += 1;
        let map = &m.maps[&(s, d)];
        'pairs: for x in 0..map.len() {
            for y in 0..map.len() {
                if map[os[x][y]] != od[map[x]][map[y]] {
                    violations.push(OperationViolation {
                        src: m.subs[s].id.clone(),
                        dst: m.subs[d].id.clone(),
                        x: m.subs[s].carrier[x].clone(),
                        y: m.subs[s].carrier[y].clone(),
                    });
                    break 'pairs;
                }
            }
        }
    }
    Some(OperationReport {
        passed: violations.is_empty(),
        restrictions_checked: checked,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheafReport {
    pub composition: CompositionReport,
    pub separated: SeparatedReport,
    pub gluing: GluingReport,
    pub operations: Option<OperationReport>,
}

impl SheafReport {
    /// All checks that ran passed.
    pub fn passed(&self) -> bool {
        self.composition.passed
            && self.separated.passed
            && self.gluing.passed().unwrap_or(true)
            && self.operations.as_ref().is_none_or(|o| o.passed)
    }
}

/// Attempts at drawing a uniformly random compatible family before falling
/// back to restricting a random top element.
const UNIFORM_ATTEMPTS: usize = 64;

/// Runs composition and separatedness, then gluing on `trials` compatible
/// families over the sub-cosmoses below `top`.
///
/// When there are at most `trials` families in total they are all enumerated;
/// otherwise families are drawn from `seed`, alternating between restrictions
/// of a random top element and uniformly random compatible assignments.
pub fn validate_sheaf_conditions(m: &MultiCosmosModel, top: &str, trials: usize, seed: u64) -> Result<SheafReport> {
    let composition = validate_composition(m);
    let separated = validate_separated(m, top)?;
    let operations = validate_operations(m);
    let gluing = if trials == 0 {
        GluingReport::Skipped
    } else {
        check_gluing(m, top, trials, seed, separated.passed)?
    };
    Ok(SheafReport {
        composition,
        separated,
        gluing,
        operations,
    })
}

fn check_gluing(m: &MultiCosmosModel, top: &str, trials: usize, seed: u64, separated: bool) -> Result<GluingReport> {
    let t = m.idx(top)?;
    let cover: Vec<usize> = (0..m.subs.len()).filter(|&j| m.contains[t][j]).collect();
    let sizes: Vec<usize> = cover.iter().map(|&j| m.subs[j].carrier.len()).collect();
    let space = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s));

    let mut families: Vec<Vec<(usize, usize)>> = Vec::new();
    let exhaustive = space.is_some_and(|s| s <= trials);
    if exhaustive {
        let mut digits = vec![0usize; cover.len()];
        loop {
            let fam: Vec<(usize, usize)> = cover.iter().copied().zip(digits.iter().copied()).collect();
            if m.first_incompatibility(&fam).is_none() {
                families.push(fam);
            }
            let Some(p) = (0..digits.len()).find(|&p| digits[p] + 1 < sizes[p]) else {
                break;
            };
            digits[p] += 1;
            digits[..p].iter_mut().for_each(|d| *d = 0);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let top_size = m.subs[t].carrier.len();
        let restricted = |f: usize| -> Vec<(usize, usize)> {
            cover.iter().map(|&j| (j, m.maps[&(t, j)][f])).collect()
        };
        for trial in 0..trials {
            let mut fam = None;
            if trial % 2 == 1 {
                for _ in 0..UNIFORM_ATTEMPTS {
                    let cand: Vec<(usize, usize)> = cover.iter().zip(&sizes).map(|(&j, &s)| (j, rng.gen_range(0..s))).collect();
                    if m.first_incompatibility(&cand).is_none() {
                        fam = Some(cand);
                        break;
                    }
                }
            }
            let fam = match fam {
                Some(f) => f,
                None => restricted(rng.gen_range(0..top_size)),
            };
            if m.first_incompatibility(&fam).is_none() {
                families.push(fam);
            }
        }
    }

    let mut failures = Vec::new();
    for fam in &families {
        if fam.is_empty() && m.subs[t].carrier.len() > 1 {
            continue;
        }
        let found = m.amalgams(t, fam);
        let kind = match found.len() {
            0 => Some(GluingFailureKind::NoAmalgam),
            k if k > 1 && separated => Some(GluingFailureKind::Ambiguous(k)),
            _ => None,
        };
        if let Some(kind) = kind {
            failures.push(GluingFailure {
                family: SectionFamily {
                    assignments: fam
                        .iter()
                        .map(|&(j, x)| (m.subs[j].id.clone(), m.subs[j].carrier[x].clone()))
                        .collect(),
                },
                kind,
            });
        }
    }
    Ok(GluingReport::Checked {
        families: families.len(),
        exhaustive,
        failures,
    })
}
