//! The on-disk instance format and the campaign record format.
//!
//! Instances are JSON documents with a `kind` discriminator and a `payload`
//! whose layout depends on the kind. Boxes are plain integer arrays, floor
//! plans are parallel `points`/`heights` (or `p`/`q`/`heights`) arrays, and
//! three-dimensional diagrams are stored as their two-dimensional height
//! maps: ragged arrays of rows, bottom row first. Serialization goes through
//! the library types, so a document that parses has also validated, and the
//! emitted field order is canonical.

use std::fmt::Display;

use gerst_core::gluing::{GluedComponent, GluingDatum};
use gerst_core::lattice::{
    diagram_from_heights, heights_from_diagram, AbstractSkewShape, BoxSet, HeightMap, Point,
    YoungDiagram,
};
use gerst_core::tower::{
    CompatibleColumn, CompatibleFloorPlan, CompatibleTower, FloorPlan, Tower, TowerColumn,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Why a document was rejected: either it is not well-formed JSON (the
/// message carries serde's line and column) or a field violates one of the
/// library's constraints (the message names the field and the constraint).
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("syntax: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("field {field}: {constraint}")]
    Constraint { field: String, constraint: String },
}

fn constraint(field: impl Into<String>, err: impl Display) -> FormatError {
    FormatError::Constraint { field: field.into(), constraint: err.to_string() }
}

/// A parsed instance of any kind the tools understand. The payload has been
/// rebuilt through the library constructors, so structural invariants
/// (dimensions, positive heights, distinct points, downward closure) have
/// already been enforced; combinatorial validity is still the caller's
/// business via the respective `validate` calls.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Instance {
    Gluing(GluingDatum),
    Tower(Tower),
    CompatibleTower(CompatibleTower),
    FloorPlan(FloorPlan),
    CompatibleFloorPlan(CompatibleFloorPlan),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Gluing(_) => "gluing",
            Instance::Tower(_) => "tower",
            Instance::CompatibleTower(_) => "compatible-tower",
            Instance::FloorPlan(_) => "floor-plan",
            Instance::CompatibleFloorPlan(_) => "compatible-floor-plan",
        }
    }

    pub fn from_json(text: &str) -> Result<Instance, FormatError> {
        let doc: InstanceDoc = serde_json::from_str(text)?;
        doc.into_instance()
    }

    /// Pretty-printed document, the format fixtures are stored in. Arrays
    /// of numbers (points, rows, heights) stay on one line so a coordinate
    /// reads as a coordinate.
    pub fn to_json_pretty(&self) -> String {
        let doc = InstanceDoc::from_instance(self);
        let value = serde_json::to_value(&doc).expect("documents are plain data");
        let mut out = String::new();
        write_value(&mut out, &value, 0);
        out.push('\n');
        out
    }

    /// Single-line document, the format campaign logs use.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&InstanceDoc::from_instance(self)).expect("documents are plain data")
    }
}

/// Two-space pretty printer that keeps all-number arrays inline.
fn write_value(out: &mut String, value: &serde_json::Value, indent: usize) {
    use serde_json::Value;
    match value {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(Value::is_number) => {
            let inline: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&inline.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&"  ".repeat(indent + 1));
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (key, item)) in map.iter().enumerate() {
                out.push_str(&"  ".repeat(indent + 1));
                out.push_str(&serde_json::to_string(key).expect("keys are strings"));
                out.push_str(": ");
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        leaf => out.push_str(&leaf.to_string()),
    }
}

#[derive(Clone, Serialize, Deserialize, Debug)]
#[serde(tag = "kind", content = "payload", rename_all = "kebab-case")]
pub enum InstanceDoc {
    Gluing(GluingDoc),
    Tower(TowerDoc),
    CompatibleTower(CompatibleTowerDoc),
    FloorPlan(FloorPlanDoc),
    CompatibleFloorPlan(CompatiblePlanDoc),
}

#[derive(Clone, Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct GluingDoc {
    pub n: usize,
    pub lambda: Vec<Vec<i64>>,
    pub mu: Vec<Vec<i64>>,
    pub components: Vec<ComponentDoc>,
}

#[derive(Clone, Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    pub shape: Vec<Vec<i64>>,
    pub lambda_offset: Vec<i64>,
    pub mu_offset: Vec<i64>,
}

#[derive(Clone, Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct TowerDoc {
    /// Height map of the three-dimensional diagram: rows bottom-first.
    pub lambda_rows: Vec<Vec<u64>>,
    pub columns: Vec<ColumnDoc>,
}

#[derive(Clone, Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct ColumnDoc {
    pub base: Vec<i64>,
    pub height: u64,
}

#[derive(Clone, Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct CompatibleTowerDoc {
    pub lambda_rows: Vec<Vec<u64>>,
    pub mu_rows: Vec<Vec<u64>>,
    pub columns: Vec<CompatibleColumnDoc>,
}

#[derive(Clone, Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct CompatibleColumnDoc {
    pub height: u64,
    pub lambda_base: Vec<i64>,
    pub mu_base: Vec<i64>,
}

#[derive(Clone, Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct FloorPlanDoc {
    pub points: Vec<Vec<i64>>,
    pub heights: Vec<u64>,
}

#[derive(Clone, Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct CompatiblePlanDoc {
    pub p: Vec<Vec<i64>>,
    pub q: Vec<Vec<i64>>,
    pub heights: Vec<u64>,
}

fn boxes_from(field: &str, dim: usize, rows: &[Vec<i64>]) -> Result<BoxSet, FormatError> {
    for (i, coords) in rows.iter().enumerate() {
        if coords.len() != dim {
            return Err(constraint(
                format!("{field}[{i}]"),
                format!("boxes must have {dim} coordinates, found {}", coords.len()),
            ));
        }
    }
    BoxSet::new(dim, rows.iter().map(|coords| Point::new(coords.clone())))
        .map_err(|e| constraint(field, e))
}

fn boxes_to(set: &BoxSet) -> Vec<Vec<i64>> {
    set.iter().map(|p| p.coords().to_vec()).collect()
}

fn point_from(field: &str, dim: usize, coords: &[i64]) -> Result<Point, FormatError> {
    if coords.len() != dim {
        return Err(constraint(
            field,
            format!("points must have {dim} coordinates, found {}", coords.len()),
        ));
    }
    Ok(Point::new(coords.to_vec()))
}

fn points_from(field: &str, dim: usize, rows: &[Vec<i64>]) -> Result<Vec<Point>, FormatError> {
    rows.iter()
        .enumerate()
        .map(|(i, coords)| point_from(&format!("{field}[{i}]"), dim, coords))
        .collect()
}

fn diagram_from_rows(field: &str, rows: &[Vec<u64>]) -> Result<YoungDiagram, FormatError> {
    let map = HeightMap::from_rows(rows).map_err(|e| constraint(field, e))?;
    diagram_from_heights(&map).map_err(|e| constraint(field, e))
}

fn diagram_to_rows(diagram: &YoungDiagram) -> Vec<Vec<u64>> {
    heights_from_diagram(diagram).expect("tower diagrams are three-dimensional").to_rows()
}

impl InstanceDoc {
    pub fn into_instance(self) -> Result<Instance, FormatError> {
        match self {
            InstanceDoc::Gluing(doc) => doc.into_core().map(Instance::Gluing),
            InstanceDoc::Tower(doc) => doc.into_core().map(Instance::Tower),
            InstanceDoc::CompatibleTower(doc) => doc.into_core().map(Instance::CompatibleTower),
            InstanceDoc::FloorPlan(doc) => doc.into_core().map(Instance::FloorPlan),
            InstanceDoc::CompatibleFloorPlan(doc) => {
                doc.into_core().map(Instance::CompatibleFloorPlan)
            }
        }
    }

    pub fn from_instance(instance: &Instance) -> InstanceDoc {
        match instance {
            Instance::Gluing(datum) => InstanceDoc::Gluing(GluingDoc::from_core(datum)),
            Instance::Tower(tower) => InstanceDoc::Tower(TowerDoc::from_core(tower)),
            Instance::CompatibleTower(ct) => {
                InstanceDoc::CompatibleTower(CompatibleTowerDoc::from_core(ct))
            }
            Instance::FloorPlan(plan) => InstanceDoc::FloorPlan(FloorPlanDoc::from_core(plan)),
            Instance::CompatibleFloorPlan(cp) => {
                InstanceDoc::CompatibleFloorPlan(CompatiblePlanDoc::from_core(cp))
            }
        }
    }
}

impl GluingDoc {
    pub fn into_core(self) -> Result<GluingDatum, FormatError> {
        if self.n == 0 {
            return Err(constraint("n", "the ambient dimension must be positive"));
        }
        let lambda = YoungDiagram::from_boxes(boxes_from("lambda", self.n, &self.lambda)?)
            .map_err(|e| constraint("lambda", e))?;
        let mu = YoungDiagram::from_boxes(boxes_from("mu", self.n, &self.mu)?)
            .map_err(|e| constraint("mu", e))?;
        let mut components = Vec::with_capacity(self.components.len());
        for (i, doc) in self.components.iter().enumerate() {
            let field = format!("components[{i}]");
            let shape =
                AbstractSkewShape::from_boxes(boxes_from(&format!("{field}.shape"), self.n, &doc.shape)?)
                    .map_err(|e| constraint(format!("{field}.shape"), e))?;
            let lambda_offset =
                point_from(&format!("{field}.lambda_offset"), self.n, &doc.lambda_offset)?;
            let mu_offset = point_from(&format!("{field}.mu_offset"), self.n, &doc.mu_offset)?;
            components.push(
                GluedComponent::new(shape, lambda_offset, mu_offset)
                    .map_err(|e| constraint(&field, e))?,
            );
        }
        GluingDatum::new(lambda, mu, components).map_err(|e| constraint("payload", e))
    }

    pub fn from_core(datum: &GluingDatum) -> GluingDoc {
        GluingDoc {
            n: datum.dim(),
            lambda: boxes_to(datum.lambda().boxes()),
            mu: boxes_to(datum.mu().boxes()),
            components: datum
                .components()
                .iter()
                .map(|c| ComponentDoc {
                    shape: boxes_to(c.shape().boxes()),
                    lambda_offset: c.lambda_offset().coords().to_vec(),
                    mu_offset: c.mu_offset().coords().to_vec(),
                })
                .collect(),
        }
    }
}

impl TowerDoc {
    pub fn into_core(self) -> Result<Tower, FormatError> {
        let lambda = diagram_from_rows("lambda_rows", &self.lambda_rows)?;
        let mut columns = Vec::with_capacity(self.columns.len());
        for (i, doc) in self.columns.iter().enumerate() {
            let field = format!("columns[{i}]");
            let base = point_from(&format!("{field}.base"), 3, &doc.base)?;
            columns
                .push(TowerColumn::new(base, doc.height).map_err(|e| constraint(&field, e))?);
        }
        Tower::new(lambda, columns).map_err(|e| constraint("columns", e))
    }

    pub fn from_core(tower: &Tower) -> TowerDoc {
        TowerDoc {
            lambda_rows: diagram_to_rows(tower.lambda()),
            columns: tower
                .columns()
                .iter()
                .map(|c| ColumnDoc { base: c.base().coords().to_vec(), height: c.height() })
                .collect(),
        }
    }
}

impl CompatibleTowerDoc {
    pub fn into_core(self) -> Result<CompatibleTower, FormatError> {
        let lambda = diagram_from_rows("lambda_rows", &self.lambda_rows)?;
        let mu = diagram_from_rows("mu_rows", &self.mu_rows)?;
        let mut columns = Vec::with_capacity(self.columns.len());
        for (i, doc) in self.columns.iter().enumerate() {
            let field = format!("columns[{i}]");
            let lambda_base = point_from(&format!("{field}.lambda_base"), 3, &doc.lambda_base)?;
            let mu_base = point_from(&format!("{field}.mu_base"), 3, &doc.mu_base)?;
            columns.push(
                CompatibleColumn::new(doc.height, lambda_base, mu_base)
                    .map_err(|e| constraint(&field, e))?,
            );
        }
        CompatibleTower::new(lambda, mu, columns).map_err(|e| constraint("columns", e))
    }

    pub fn from_core(ct: &CompatibleTower) -> CompatibleTowerDoc {
        CompatibleTowerDoc {
            lambda_rows: diagram_to_rows(ct.lambda()),
            mu_rows: diagram_to_rows(ct.mu()),
            columns: ct
                .columns()
                .iter()
                .map(|c| CompatibleColumnDoc {
                    height: c.height(),
                    lambda_base: c.lambda_base().coords().to_vec(),
                    mu_base: c.mu_base().coords().to_vec(),
                })
                .collect(),
        }
    }
}

impl FloorPlanDoc {
    pub fn into_core(self) -> Result<FloorPlan, FormatError> {
        let points = points_from("points", 2, &self.points)?;
        FloorPlan::new(points, self.heights).map_err(|e| constraint("payload", e))
    }

    pub fn from_core(plan: &FloorPlan) -> FloorPlanDoc {
        FloorPlanDoc {
            points: plan.points().iter().map(|p| p.coords().to_vec()).collect(),
            heights: plan.heights().to_vec(),
        }
    }
}

impl CompatiblePlanDoc {
    pub fn into_core(self) -> Result<CompatibleFloorPlan, FormatError> {
        let p = points_from("p", 2, &self.p)?;
        let q = points_from("q", 2, &self.q)?;
        CompatibleFloorPlan::new(p, q, self.heights).map_err(|e| constraint("payload", e))
    }

    pub fn from_core(cp: &CompatibleFloorPlan) -> CompatiblePlanDoc {
        CompatiblePlanDoc {
            p: cp.p().iter().map(|p| p.coords().to_vec()).collect(),
            q: cp.q().iter().map(|p| p.coords().to_vec()).collect(),
            heights: cp.heights().to_vec(),
        }
    }
}

/// One line of a campaign log: the instance, where it came from, and what
/// was measured. Results are only attached to instances that validate, so a
/// log never claims numbers for broken data.
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct InstanceRecord {
    pub instance: InstanceDoc,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub results: Option<Results>,
}

/// How an instance was produced: the generating mode, the campaign seed, and
/// the cursor (the instance's index in the campaign's deterministic
/// sequence). A campaign can resume from any cursor because instance i
/// depends only on (seed, i).
#[derive(Clone, Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub generator: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cursor: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub params: Option<String>,
}

/// Measured results. `deficiency` is always present; the dimensions and the
/// verdict only appear when the full matrix check ran; `certified_steps`
/// and `trace` only for descent certification; `note` explains an anomaly.
#[derive(Clone, Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct Results {
    pub deficiency: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub module_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub algebra_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub consistent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certified_steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace: Option<Vec<String>>,
}

impl InstanceRecord {
    pub fn new(instance: &Instance, provenance: Provenance) -> InstanceRecord {
        InstanceRecord {
            instance: InstanceDoc::from_instance(instance),
            provenance,
            results: None,
        }
    }

    /// Attach measured results, first re-validating the payload. Records
    /// with results always describe instances the library accepts.
    pub fn attach_results(&mut self, results: Results) -> Result<(), FormatError> {
        let instance = self.instance.clone().into_instance()?;
        let valid = match &instance {
            Instance::Gluing(datum) => datum.validate().is_valid(),
            Instance::Tower(tower) => tower.validate().is_valid(),
            Instance::CompatibleTower(ct) => ct.is_valid(),
            // Plans enforce their invariants at construction time.
            Instance::FloorPlan(_) | Instance::CompatibleFloorPlan(_) => true,
        };
        if !valid {
            return Err(constraint(
                "instance",
                "results may only be attached to instances that validate",
            ));
        }
        self.results = Some(results);
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<InstanceRecord, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records are plain data")
    }

    pub fn to_json_pretty(&self) -> String {
        let value = serde_json::to_value(self).expect("records are plain data");
        let mut out = String::new();
        write_value(&mut out, &value, 0);
        out.push('\n');
        out
    }
}
