//! The versioned JSON document shared by `enumerate`, `planes` and `export`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modspace::{ModPair, SubmoduleId};
use crate::planes::{
    check_affine_axioms, check_projective_axioms, describe, figure1_label, projective_closure,
    role, subsets, AffinePlane, AxiomReport, IncidenceStructure, Line, Reading, COMPOSITE_BIT,
};
use crate::projline::{class_signature, formulas, LineCensus, PointLabel};

pub const SCHEMA_VERSION: u32 = 1;

/// Label key whose value picks an entity's DOT colour.
pub const COLOR_KEY: &str = "color_key";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub x: Vec<Vec<u8>>,
    pub y: Vec<Vec<u8>>,
}

impl From<&ModPair> for Generator {
    fn from(g: &ModPair) -> Self {
        Generator {
            x: g.x.to_square(),
            y: g.y.to_square(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entity {
    pub id: u32,
    pub role: String,
    pub canonical_generator: Generator,
    pub labels: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub formula: Option<u64>,
    pub enumerated: Option<u64>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

impl CountRow {
    fn new(formula: Option<u64>, enumerated: Option<u64>) -> Self {
        let matches = formula.zip(enumerated).map(|(f, e)| f == e);
        CountRow {
            formula,
            enumerated,
            matches,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDoc {
    pub id: String,
    pub kind: String,
    pub points: Vec<u32>,
    pub lines: Vec<Line>,
    pub labels: BTreeMap<u32, String>,
    pub axiom_report: AxiomReport,
}

impl StructureDoc {
    fn new(id: String, kind: &str, s: &IncidenceStructure, axiom_report: AxiomReport) -> Self {
        StructureDoc {
            id,
            kind: kind.to_string(),
            points: s.points.clone(),
            lines: s.lines.clone(),
            labels: s.labels.clone(),
            axiom_report,
        }
    }

    pub fn incidence(&self) -> IncidenceStructure {
        IncidenceStructure {
            points: self.points.clone(),
            lines: self.lines.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Whether the attached report says the axioms of its kind hold.
    pub fn axioms_hold(&self) -> bool {
        match self.kind.as_str() {
            "closure" => self.axiom_report.projective_ok(),
            _ => self.axiom_report.affine_ok(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub schema_version: u32,
    pub n: usize,
    pub q: u32,
    pub kind: String,
    pub entities: Vec<Entity>,
    pub structures: Vec<StructureDoc>,
    pub counts: BTreeMap<String, CountRow>,
}

impl Document {
    fn empty(census: &LineCensus, kind: &str) -> Self {
        Document {
            schema_version: SCHEMA_VERSION,
            n: census.n(),
            q: census.q(),
            kind: kind.to_string(),
            entities: Vec::new(),
            structures: Vec::new(),
            counts: BTreeMap::new(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text)?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::Format(format!(
                "schema version {} (expected {SCHEMA_VERSION})",
                doc.schema_version
            )));
        }
        Ok(doc)
    }

    pub fn entity(&self, id: u32) -> Option<&Entity> {
        self.entities
            .binary_search_by_key(&id, |e| e.id)
            .ok()
            .map(|i| &self.entities[i])
    }

    /// Count rows whose formula and enumeration disagree.
    pub fn count_mismatches(&self) -> Vec<&str> {
        self.counts
            .iter()
            .filter(|(_, r)| r.matches == Some(false))
            .map(|(k, _)| k.as_str())
            .collect()
    }
}

/// Closed form against enumeration for every quantity the census knows.
/// `planes` and `two_affine` are the numbers of structures actually built.
pub fn count_table(
    census: &LineCensus,
    planes: Option<u64>,
    two_affine: Option<u64>,
) -> BTreeMap<String, CountRow> {
    let (n, q) = (census.n(), census.q() as u64);
    let len = |v: &[SubmoduleId]| Some(v.len() as u64);
    let mut t = BTreeMap::new();
    t.insert(
        "points".into(),
        CountRow::new(formulas::points(n, q), len(census.points())),
    );
    t.insert(
        "nonuni_fcs".into(),
        CountRow::new(formulas::nonuni_fcs(n, q), len(census.nonuni_fcs())),
    );
    t.insert(
        "shielded".into(),
        CountRow::new(formulas::shielded(n, q), len(census.shielded())),
    );
    t.insert(
        "outlier_generators".into(),
        CountRow::new(
            formulas::outlier_generators(n, q),
            Some(census.outlier_generator_count()),
        ),
    );
    t.insert("nonfree".into(), CountRow::new(None, len(census.nonfree())));
    if n == 2 || n == 3 {
        t.insert(
            "affine_planes".into(),
            CountRow::new(formulas::affine_planes(n, q), planes),
        );
    }
    if n == 3 {
        t.insert(
            "two_affine_planes".into(),
            CountRow::new(formulas::two_affine_planes(n, q), two_affine),
        );
    }
    t
}

fn submodule_entity(census: &LineCensus, id: SubmoduleId) -> Entity {
    let s = census.get(id);
    let mut labels = BTreeMap::new();
    labels.insert("description".to_string(), describe(census, id));
    if let Ok(Some(PointLabel { set, subset })) = census.label(id) {
        labels.insert("set".into(), set.to_string());
        if let Some(sub) = subset {
            labels.insert("subset".into(), sub.to_string());
        }
    }
    if census.n() == 2 && census.q() == 2 {
        if let Some((a, b)) = figure1_label(s.canonical_generator()) {
            labels.insert("figure1".into(), format!("({a},{b})"));
        }
    }
    Entity {
        id: id.0,
        role: role(census, id).to_string(),
        canonical_generator: s.canonical_generator().into(),
        labels,
    }
}

/// One entity per member of the chosen census list.
pub fn enumerate_document(census: &LineCensus, kind: &str, ids: &[SubmoduleId]) -> Document {
    let mut doc = Document::empty(census, kind);
    doc.entities = ids.iter().map(|&id| submodule_entity(census, id)).collect();
    doc.entities.sort_by_key(|e| e.id);
    doc.counts = count_table(census, None, None);
    doc
}

/// Affine planes and their closures.
pub fn planes_document(
    census: &LineCensus,
    planes: &[AffinePlane],
    total: u64,
) -> Result<Document> {
    let mut doc = Document::empty(census, "planes");
    let mut colors: BTreeMap<u32, String> = BTreeMap::new();
    let mut ids: BTreeSet<u32> = BTreeSet::new();
    for p in planes {
        let affine = &p.structure;
        let closure = projective_closure(affine, census)?;
        for &pt in &affine.points {
            colors.insert(pt, format!("plane {}", p.key));
        }
        for l in &affine.lines {
            let sig = class_signature(census.normal_form(SubmoduleId(l.id)));
            colors.insert(l.id, format!("class {sig}"));
        }
        for &pt in &closure.points_at_infinity {
            colors.insert(pt, "at infinity".into());
        }
        colors.insert(closure.line_at_infinity, "at infinity".into());
        ids.extend(closure.structure.points.iter().copied());
        ids.extend(closure.structure.lines.iter().map(|l| l.id));
        doc.structures.push(StructureDoc::new(
            format!("affine {}", p.key),
            "affine",
            affine,
            check_affine_axioms(affine),
        ));
        doc.structures.push(StructureDoc::new(
            format!("closure {}", p.key),
            "closure",
            &closure.structure,
            check_projective_axioms(&closure.structure),
        ));
    }
    doc.entities = ids
        .iter()
        .map(|&id| {
            let mut e = submodule_entity(census, SubmoduleId(id));
            if let Some(c) = colors.get(&id) {
                e.labels.insert(COLOR_KEY.into(), c.clone());
            }
            if colors.get(&id).is_some_and(|c| c == "at infinity") {
                e.labels.insert("at_infinity".into(), "true".into());
            }
            e
        })
        .collect();
    let two = (census.n() == 3)
        .then(|| subsets(census).map(|s| s.len() as u64))
        .transpose()?;
    doc.counts = count_table(census, Some(total), two);
    Ok(doc)
}

/// 2-affine planes of the given subsets under `reading`.
pub fn two_affine_document(
    census: &LineCensus,
    chosen: &[PointLabel],
    reading: Reading,
    total_planes: u64,
) -> Result<Document> {
    let mut doc = Document::empty(census, "2affine");
    let mut entities: BTreeMap<u32, Entity> = BTreeMap::new();
    for &sub in chosen {
        let t = crate::planes::build_2affine_plane(census, sub, reading)?;
        let s = &t.structure;
        let members: Vec<(u32, Vec<u32>, &str)> = composite_members(census, s, sub)?;
        for (id, mem, role) in members {
            let min = SubmoduleId(id & !COMPOSITE_BIT);
            let mut labels = BTreeMap::new();
            labels.insert("description".to_string(), s.labels[&id].clone());
            labels.insert(
                "members".into(),
                mem.iter().map(u32::to_string).collect::<Vec<_>>().join(" "),
            );
            labels.insert("subset".into(), sub.to_string());
            labels.insert(COLOR_KEY.into(), format!("{role} {sub}"));
            entities.insert(
                id,
                Entity {
                    id,
                    role: role.to_string(),
                    canonical_generator: census.get(min).canonical_generator().into(),
                    labels,
                },
            );
        }
        doc.structures.push(StructureDoc::new(
            format!("2affine {sub}"),
            "2affine",
            s,
            check_affine_axioms(s),
        ));
    }
    doc.entities = entities.into_values().collect();
    let two = subsets(census)?.len() as u64;
    doc.counts = count_table(census, Some(total_planes), Some(two));
    Ok(doc)
}

/// Member submodules of every composite entity of a 2-affine plane.
fn composite_members(
    census: &LineCensus,
    s: &IncidenceStructure,
    sub: PointLabel,
) -> Result<Vec<(u32, Vec<u32>, &'static str)>> {
    let planes = crate::planes::select_affine_planes(census, Some(sub.set), sub.subset)?;
    let mut out = Vec::new();
    for p in &planes {
        let pts = &p.structure.points;
        let id = COMPOSITE_BIT | pts[0];
        if s.points.binary_search(&id).is_ok() {
            out.push((id, pts.clone(), "plane_points"));
        }
        for class in check_affine_axioms(&p.structure).parallel_classes {
            let id = COMPOSITE_BIT | class[0];
            if s.line(id).is_some() && !out.iter().any(|(i, _, _)| *i == id) {
                out.push((id, class, "parallel_class"));
            }
        }
    }
    Ok(out)
}
