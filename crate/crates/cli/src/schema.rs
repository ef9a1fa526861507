//! JSON input formats for graph phases and multi-cosmos models.

use std::collections::BTreeMap;

use multispace::graphphase::{Brane, Interaction};
use multispace::multicosmos::{Intersection, Restriction, SubCosmos};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraneRecord {
    pub id: String,
    pub omega: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InteractionRecord {
    pub a: String,
    pub b: String,
    pub lambda: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub branes: Vec<BraneRecord>,
    #[serde(default)]
    pub interactions: Vec<InteractionRecord>,
}

impl GraphDocument {
    pub fn into_parts(self) -> (Vec<Brane>, Vec<Interaction>) {
        let branes = self.branes.into_iter().map(|b| Brane::new(b.id, b.omega)).collect();
        let interactions = self
            .interactions
            .into_iter()
            .map(|e| Interaction::new(e.a, e.b, e.lambda))
            .collect();
        (branes, interactions)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubCosmosRecord {
    pub id: String,
    pub carrier: Vec<String>,
    #[serde(default)]
    pub time_tag: i64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionRecord {
    pub src: String,
    pub dst: String,
    pub map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectionRecord {
    pub pair: [String; 2],
    pub meet: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosmosDocument {
    pub subcosmoses: Vec<SubCosmosRecord>,
    #[serde(default)]
    pub order: Vec<[String; 2]>,
    #[serde(default)]
    pub restrictions: Vec<RestrictionRecord>,
    #[serde(default)]
    pub intersections: Vec<IntersectionRecord>,
    /// Optional binary operation per sub-cosmos, as `[x, y, x∘y]` rows.
    #[serde(default)]
    pub operations: BTreeMap<String, Vec<[String; 3]>>,
}

pub struct CosmosParts {
    pub subcosmoses: Vec<SubCosmos>,
    pub order: Vec<(String, String)>,
    pub restrictions: Vec<Restriction>,
    pub intersections: Vec<Intersection>,
    pub operations: Vec<(String, OperationTable)>,
}

pub type OperationTable = BTreeMap<(String, String), String>;

impl CosmosDocument {
    pub fn into_parts(self) -> CosmosParts {
        CosmosParts {
            subcosmoses: self
                .subcosmoses
                .into_iter()
                .map(|s| SubCosmos::new(s.id, s.carrier, s.time_tag))
                .collect(),
            order: self.order.into_iter().map(|[a, b]| (a, b)).collect(),
            restrictions: self
                .restrictions
                .into_iter()
                .map(|r| Restriction::new(r.src, r.dst, r.map))
                .collect(),
            intersections: self
                .intersections
                .into_iter()
                .map(|x| {
                    let [a, b] = x.pair;
                    Intersection::new(a, b, x.meet)
                })
                .collect(),
            operations: self
                .operations
                .into_iter()
                .map(|(id, rows)| (id, rows.into_iter().map(|[x, y, z]| ((x, y), z)).collect()))
                .collect(),
        }
    }
}
