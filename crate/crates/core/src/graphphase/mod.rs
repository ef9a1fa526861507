//! Graph phases: branes as labelled vertices, interactions as labelled edges.
//!
//! A phase is transformable into another in `R^n` when its graph embeds in
//! `R^n` and the labels are carried over by maps `τ`. Embeddability is
//! decided per dimension:
//!
//! * `n >= 3`: every finite graph embeds.
//! * `n = 2`: planarity, with a rotation-system witness or a Kuratowski
//!   obstruction.
//! * `n = 1`: the graph must be a disjoint union of paths.
//!
//! Continuity of `τ` is the caller's responsibility.

pub mod planarity;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use thiserror::Error;

pub use planarity::{EulerCount, KuratowskiKind};
use planarity::SimpleGraph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphPhaseError {
    #[error("duplicate brane id {0:?}")]
    DuplicateBrane(String),
    #[error("interaction ({a:?}, {b:?}) names undeclared brane {missing:?}")]
    DanglingEndpoint { a: String, b: String, missing: String },
    #[error("duplicate interaction between {0:?} and {1:?}")]
    DuplicateEdge(String, String),
    #[error("self-interaction on brane {0:?}")]
    SelfInteraction(String),
    #[error("{what} label of {owner} has length {found}, expected {expected}")]
    LabelDimension {
        what: &'static str,
        owner: String,
        expected: usize,
        found: usize,
    },
    #[error("{what} label of {owner} is not finite")]
    NonFiniteLabel { what: &'static str, owner: String },
    #[error("target dimension must be at least 1, got {0}")]
    InvalidDimension(usize),
    #[error("graph does not embed in R^{dimension}{}", match .obstruction {
        Some(o) => format!(": contains a subdivided {}", o.kind),
        None => String::new(),
    })]
    NotEmbeddable {
        dimension: usize,
        obstruction: Option<Obstruction>,
    },
}

pub type Result<T> = std::result::Result<T, GraphPhaseError>;

#[derive(Debug, Clone, PartialEq)]
pub struct Brane {
    pub id: String,
    pub omega: Vec<f64>,
}

impl Brane {
    pub fn new(id: impl Into<String>, omega: Vec<f64>) -> Self {
        Self { id: id.into(), omega }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Interaction {
    pub a: String,
    pub b: String,
    pub lambda: Vec<f64>,
}

impl Interaction {
    pub fn new(a: impl Into<String>, b: impl Into<String>, lambda: Vec<f64>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            lambda,
        }
    }
}

/// A simple undirected graph with vector labels on vertices (`ω`) and edges
/// (`Λ`). Declaration order is preserved.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphPhase {
    branes: Vec<Brane>,
    interactions: Vec<Interaction>,
    p_dim: usize,
    q_dim: usize,
}

fn edge_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_owned(), b.to_owned())
    } else {
        (b.to_owned(), a.to_owned())
    }
}

fn check_labels<'a>(
    what: &'static str,
    labels: impl Iterator<Item = (String, &'a [f64])>,
) -> Result<usize> {
    let mut dim = None;
    for (owner, v) in labels {
        if v.iter().any(|x| !x.is_finite()) {
            return Err(GraphPhaseError::NonFiniteLabel { what, owner });
        }
        match dim {
            None => dim = Some(v.len()),
            Some(d) if d != v.len() => {
                return Err(GraphPhaseError::LabelDimension {
                    what,
                    owner,
                    expected: d,
                    found: v.len(),
                })
            }
            _ => {}
        }
    }
    Ok(dim.unwrap_or(0))
}

pub fn build_graph_phase(branes: Vec<Brane>, interactions: Vec<Interaction>) -> Result<GraphPhase> {
    let mut ids = HashMap::new();
    for b in &branes {
        if ids.insert(b.id.as_str(), ()).is_some() {
            return Err(GraphPhaseError::DuplicateBrane(b.id.clone()));
        }
    }
    let mut seen = HashMap::new();
    for e in &interactions {
        for end in [&e.a, &e.b] {
            if !ids.contains_key(end.as_str()) {
                return Err(GraphPhaseError::DanglingEndpoint {
                    a: e.a.clone(),
                    b: e.b.clone(),
                    missing: end.clone(),
                });
            }
        }
        if e.a == e.b {
            return Err(GraphPhaseError::SelfInteraction(e.a.clone()));
        }
        let k = edge_key(&e.a, &e.b);
        if seen.insert(k.clone(), ()).is_some() {
            return Err(GraphPhaseError::DuplicateEdge(k.0, k.1));
        }
    }
    let p_dim = check_labels("omega", branes.iter().map(|b| (format!("brane {:?}", b.id), b.omega.as_slice())))?;
    let q_dim = check_labels(
        "lambda",
        interactions
            .iter()
            .map(|e| (format!("interaction ({:?}, {:?})", e.a, e.b), e.lambda.as_slice())),
    )?;
    Ok(GraphPhase {
        branes,
        interactions,
        p_dim,
        q_dim,
    })
}

impl GraphPhase {
    pub fn branes(&self) -> &[Brane] {
        &self.branes
    }

    pub fn interactions(&self) -> &[Interaction] {
        &self.interactions
    }

    pub fn vertex_count(&self) -> usize {
        self.branes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.interactions.len()
    }

    pub fn p_dim(&self) -> usize {
        self.p_dim
    }

    pub fn q_dim(&self) -> usize {
        self.q_dim
    }

    pub fn omega(&self, id: &str) -> Option<&[f64]> {
        self.branes.iter().find(|b| b.id == id).map(|b| b.omega.as_slice())
    }

    pub fn lambda(&self, a: &str, b: &str) -> Option<&[f64]> {
        self.interactions
            .iter()
            .find(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a))
            .map(|e| e.lambda.as_slice())
    }

    /// Vertex ids in lexicographic order and the graph on their indices.
    pub fn underlying_graph(&self) -> (Vec<String>, SimpleGraph) {
        let mut ids: Vec<String> = self.branes.iter().map(|b| b.id.clone()).collect();
        ids.sort();
        let index = |id: &str| ids.binary_search_by(|x| x.as_str().cmp(id)).unwrap();
        let mut g = SimpleGraph::new(ids.len());
        for e in &self.interactions {
            g.add_edge(index(&e.a), index(&e.b));
        }
        (ids, g)
    }

    /// Unordered edge set, each pair sorted.
    pub fn edge_set(&self) -> std::collections::BTreeSet<(String, String)> {
        self.interactions.iter().map(|e| edge_key(&e.a, &e.b)).collect()
    }
}

/// Cyclic order of neighbours around each vertex of a planar drawing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    ids: Vec<String>,
    rotation: planarity::Rotation,
}

impl RotationSystem {
    pub fn rotation(&self) -> BTreeMap<&str, Vec<&str>> {
        self.ids
            .iter()
            .zip(&self.rotation)
            .map(|(id, rot)| (id.as_str(), rot.iter().map(|&w| self.ids[w].as_str()).collect()))
            .collect()
    }

    /// Boundary walks of the faces.
    pub fn faces(&self) -> Vec<Vec<&str>> {
        planarity::trace_faces(&self.rotation)
            .into_iter()
            .map(|f| f.into_iter().map(|v| self.ids[v].as_str()).collect())
            .collect()
    }

    pub fn euler_counts(&self) -> Vec<EulerCount> {
        planarity::euler_counts(&self.rotation)
    }

    /// `V - E + F = 2` on every connected component.
    pub fn satisfies_euler(&self) -> bool {
        self.euler_counts().iter().all(|c| c.characteristic() == 2)
    }
}

/// A subdivided K5 or K3,3 inside a phase graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingVerdict {
    pub dimension: usize,
    pub embeddable: bool,
    pub witness: Option<RotationSystem>,
    pub obstruction: Option<Obstruction>,
}

pub fn is_embeddable(g: &GraphPhase, n: usize) -> Result<EmbeddingVerdict> {
    let verdict = |embeddable| EmbeddingVerdict {
        dimension: n,
        embeddable,
        witness: None,
        obstruction: None,
    };
    match n {
        0 => Err(GraphPhaseError::InvalidDimension(0)),
        1 => {
            let (_, sg) = g.underlying_graph();
            let components = sg.components().len();
            let linear = (0..sg.vertex_count()).all(|v| sg.degree(v) <= 2)
                && sg.edge_count() + components == sg.vertex_count();
            Ok(verdict(linear))
        }
        2 => {
            let (ids, sg) = g.underlying_graph();
            if let Some(rotation) = planarity::planar_embedding(&sg) {
                return Ok(EmbeddingVerdict {
                    witness: Some(RotationSystem { ids, rotation }),
                    ..verdict(true)
                });
            }
            let k = planarity::kuratowski_subgraph(&sg).expect("non-planar graph has an obstruction");
            let name = |v: usize| ids[v].clone();
            Ok(EmbeddingVerdict {
                obstruction: Some(Obstruction {
                    kind: k.kind,
                    branch_vertices: k.branch_vertices.into_iter().map(name).collect(),
                    edges: k.edges.into_iter().map(|(u, v)| (name(u), name(v))).collect(),
                }),
                ..verdict(false)
            })
        }
        _ => Ok(verdict(true)),
    }
}

pub type LabelMap = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// Label maps `τ_ω` for vertices and `τ_Λ` for edges.
#[derive(Clone)]
pub struct LabelTransform {
    tau_omega: LabelMap,
    tau_lambda: LabelMap,
}

impl std::fmt::Debug for LabelTransform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("LabelTransform { .. }")
    }
}

impl LabelTransform {
    pub fn new<F, G>(tau_omega: F, tau_lambda: G) -> Self
    where
        F: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
        G: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        Self {
            tau_omega: Arc::new(tau_omega),
            tau_lambda: Arc::new(tau_lambda),
        }
    }

    pub fn identity() -> Self {
        Self::new(<[f64]>::to_vec, <[f64]>::to_vec)
    }

    /// Componentwise `x ↦ k·x` on both label kinds.
    pub fn scale(k: f64) -> Self {
        Self::affine(k, 0.0, k, 0.0)
    }

    /// Componentwise `x ↦ a·x + b`, separately for `ω` and `Λ`.
    pub fn affine(omega_scale: f64, omega_shift: f64, lambda_scale: f64, lambda_shift: f64) -> Self {
        Self::new(
            move |x| x.iter().map(|v| omega_scale * v + omega_shift).collect(),
            move |x| x.iter().map(|v| lambda_scale * v + lambda_shift).collect(),
        )
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &LabelTransform) -> Self {
        let (a, b) = (self.tau_omega.clone(), next.tau_omega.clone());
        let (c, d) = (self.tau_lambda.clone(), next.tau_lambda.clone());
        Self::new(move |x| b(&a(x)), move |x| d(&c(x)))
    }

    pub fn apply_omega(&self, x: &[f64]) -> Vec<f64> {
        (self.tau_omega)(x)
    }

    pub fn apply_lambda(&self, x: &[f64]) -> Vec<f64> {
        (self.tau_lambda)(x)
    }
}

/// Relabels `g` through `tau`, provided its graph embeds in `R^n`.
pub fn transform_phase(g: &GraphPhase, tau: &LabelTransform, n: usize) -> Result<GraphPhase> {
    let verdict = is_embeddable(g, n)?;
    if !verdict.embeddable {
        return Err(GraphPhaseError::NotEmbeddable {
            dimension: n,
            obstruction: verdict.obstruction,
        });
    }
    let branes = g
        .branes
        .iter()
        .map(|b| Brane::new(b.id.clone(), tau.apply_omega(&b.omega)))
        .collect();
    let interactions = g
        .interactions
        .iter()
        .map(|e| Interaction::new(e.a.clone(), e.b.clone(), tau.apply_lambda(&e.lambda)))
        .collect();
    build_graph_phase(branes, interactions)
}

/// Whether `tau_inverse` undoes `tau` on every label within `1e-9`.
pub fn round_trip_check(
    g: &GraphPhase,
    tau: &LabelTransform,
    tau_inverse: &LabelTransform,
    n: usize,
) -> Result<bool> {
    const TOL: f64 = 1e-9;
    let back = transform_phase(&transform_phase(g, tau, n)?, tau_inverse, n)?;
    let close = |x: &[f64], y: &[f64]| x.len() == y.len() && x.iter().zip(y).all(|(a, b)| (a - b).abs() <= TOL);
    Ok(g.branes.iter().zip(&back.branes).all(|(a, b)| close(&a.omega, &b.omega))
        && g
            .interactions
            .iter()
            .zip(&back.interactions)
            .all(|(a, b)| close(&a.lambda, &b.lambda)))
}
