//! Affine planes carried by the shielded submodules, their projective
//! closures, and the 2-affine planes built from them.
//!
//! Incidence is always submodule containment in the census registry. The
//! closed-form containment criteria live in [`corollaries`] and are checked
//! against these structures, not used to build them.

mod axioms;
pub mod corollaries;
mod figure;
mod iso;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modspace::{submodule_contains, ModPair, SubmoduleId};
use crate::projline::{class_signature, LineCensus, PointLabel, SetLabel, SubsetLabel};
use crate::trimat::TriMatrix;

pub use axioms::{
    check_affine_axioms, check_projective_axioms, parallel_classes, AxiomCheck, AxiomReport,
    ProjectiveChecks,
};
pub use corollaries::{check_corollaries, containment_criterion, CorollaryCheck, CorollaryReport};
pub use figure::{figure1_label, figure1_pair};
pub use iso::{isomorphism_to_classical, Classical, IsoOutcome};

/// Entity IDs of structures built from more than one submodule (the points
/// and lines of 2-affine planes) carry this bit.
pub const COMPOSITE_BIT: u32 = 1 << 31;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Line {
    pub id: u32,
    pub point_ids: Vec<u32>,
}

/// Points, lines and incidence. Lines list their points sorted; lines are
/// sorted by ID.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceStructure {
    pub points: Vec<u32>,
    pub lines: Vec<Line>,
    #[serde(default)]
    pub labels: BTreeMap<u32, String>,
}

impl IncidenceStructure {
    pub fn new(mut points: Vec<u32>, mut lines: Vec<Line>) -> Self {
        points.sort_unstable();
        for l in &mut lines {
            l.point_ids.sort_unstable();
        }
        lines.sort_by_key(|l| l.id);
        IncidenceStructure {
            points,
            lines,
            labels: BTreeMap::new(),
        }
    }

    pub fn line(&self, id: u32) -> Option<&Line> {
        self.lines
            .binary_search_by_key(&id, |l| l.id)
            .ok()
            .map(|i| &self.lines[i])
    }

    pub fn incident(&self, line: &Line, point: u32) -> bool {
        line.point_ids.binary_search(&point).is_ok()
    }

    /// Number of lines through `point`.
    pub fn degree(&self, point: u32) -> usize {
        self.lines
            .iter()
            .filter(|l| self.incident(l, point))
            .count()
    }

    /// Problems with the basic shape: unknown or repeated points on a line,
    /// duplicate IDs, lines with identical point sets, points on no line.
    pub fn defects(&self) -> Vec<String> {
        let mut out = Vec::new();
        let known: BTreeSet<u32> = self.points.iter().copied().collect();
        if known.len() != self.points.len() {
            out.push("repeated point ID".to_string());
        }
        let mut seen_sets: BTreeMap<&[u32], u32> = BTreeMap::new();
        let mut ids = BTreeSet::new();
        for l in &self.lines {
            if !ids.insert(l.id) {
                out.push(format!("repeated line ID {}", l.id));
            }
            if l.point_ids.windows(2).any(|w| w[0] == w[1]) {
                out.push(format!("line {} repeats a point", l.id));
            }
            if let Some(p) = l.point_ids.iter().find(|p| !known.contains(p)) {
                out.push(format!("line {} has unknown point {p}", l.id));
            }
            if let Some(other) = seen_sets.insert(&l.point_ids, l.id) {
                out.push(format!("lines {other} and {} have the same points", l.id));
            }
        }
        for &p in &self.points {
            if self.degree(p) == 0 {
                out.push(format!("point {p} is on no line"));
            }
        }
        out
    }

    /// Same structure with the incidence of (`line`, `point`) toggled.
    pub fn with_flipped_incidence(&self, line: u32, point: u32) -> Self {
        let mut s = self.clone();
        if let Some(l) = s.lines.iter_mut().find(|l| l.id == line) {
            match l.point_ids.binary_search(&point) {
                Ok(i) => {
                    l.point_ids.remove(i);
                }
                Err(i) => l.point_ids.insert(i, point),
            }
        }
        s
    }
}

/// Which affine plane: n = 2 needs only the set; n = 3 needs the set, the
/// subset and the fixed (2,1) slots (p21, r21) of the shielded generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlaneKey {
    pub set: SetLabel,
    pub subset: Option<SubsetLabel>,
    pub offset: Option<(u8, u8)>,
}

impl PlaneKey {
    fn of_shielded(nf: &ModPair) -> Option<Self> {
        let label = PointLabel::of(nf)?;
        let offset = (nf.dim() == 3).then(|| (nf.x.get(1, 0), nf.y.get(1, 0)));
        Some(PlaneKey {
            set: label.set,
            subset: label.subset,
            offset,
        })
    }

    pub fn point_label(&self) -> PointLabel {
        PointLabel {
            set: self.set,
            subset: self.subset,
        }
    }
}

impl fmt::Display for PlaneKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.set)?;
        if let Some(s) = self.subset {
            write!(f, " {s}")?;
        }
        if let Some((p, r)) = self.offset {
            write!(f, " p21={p} r21={r}")?;
        }
        Ok(())
    }
}

/// An affine plane together with where it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffinePlane {
    pub key: PlaneKey,
    pub structure: IncidenceStructure,
}

/// Human-readable description of a registered submodule.
pub fn describe(census: &LineCensus, id: SubmoduleId) -> String {
    let nf = census.normal_form(id);
    let role = role(census, id);
    match census.label(id).ok().flatten() {
        Some(label) if role == "point" || role == "shielded" => format!("{role} {nf} {label}"),
        _ => format!("{role} {nf}"),
    }
}

/// "point", "nonuni_fcs", "shielded" or "nonfree".
pub fn role(census: &LineCensus, id: SubmoduleId) -> &'static str {
    let s = census.get(id);
    if s.is_unimodular_generated() {
        "point"
    } else if s.is_free() {
        "nonuni_fcs"
    } else if census.shielded().binary_search(&id).is_ok() {
        "shielded"
    } else {
        "nonfree"
    }
}

fn require_planar(census: &LineCensus) -> Result<()> {
    match census.n() {
        2 | 3 => Ok(()),
        n => Err(Error::DimensionUnsupported(n, "2 or 3")),
    }
}

/// Shielded submodules grouped into the point sets of affine planes.
pub fn plane_point_sets(census: &LineCensus) -> Result<BTreeMap<PlaneKey, Vec<SubmoduleId>>> {
    require_planar(census)?;
    let mut out: BTreeMap<PlaneKey, Vec<SubmoduleId>> = BTreeMap::new();
    for &id in census.shielded() {
        let key = PlaneKey::of_shielded(census.normal_form(id))
            .ok_or_else(|| Error::Format(format!("shielded submodule {id} has no set label")))?;
        out.entry(key).or_default().push(id);
    }
    Ok(out)
}

fn contains(census: &LineCensus, big: SubmoduleId, small: SubmoduleId) -> bool {
    submodule_contains(census.get(big), census.get(small)).expect("same census")
}

/// Lines on `points` drawn from `candidates`, with incidence by containment.
fn lines_through(
    census: &LineCensus,
    candidates: &[SubmoduleId],
    points: &[SubmoduleId],
) -> Vec<Line> {
    candidates
        .iter()
        .map(|&l| Line {
            id: l.0,
            point_ids: points
                .iter()
                .filter(|&&p| contains(census, l, p))
                .map(|p| p.0)
                .collect(),
        })
        .collect()
}

fn label_entities(census: &LineCensus, s: &mut IncidenceStructure) {
    let ids: Vec<u32> = s
        .points
        .iter()
        .copied()
        .chain(s.lines.iter().map(|l| l.id))
        .collect();
    for id in ids {
        s.labels.insert(id, describe(census, SubmoduleId(id)));
    }
}

/// The affine plane selected by `key`: its points are the shielded
/// submodules of that key, its lines every point of the projective line
/// containing at least one of them.
pub fn build_affine_plane(census: &LineCensus, key: &PlaneKey) -> Result<AffinePlane> {
    let sets = plane_point_sets(census)?;
    let points = sets
        .get(key)
        .ok_or_else(|| Error::SelectorInvalid(format!("no affine plane for {key}")))?;
    Ok(affine_plane_from(census, *key, points))
}

fn affine_plane_from(census: &LineCensus, key: PlaneKey, points: &[SubmoduleId]) -> AffinePlane {
    let candidates: BTreeSet<SubmoduleId> = points
        .iter()
        .flat_map(|&p| census.points_containing(p))
        .collect();
    let candidates: Vec<SubmoduleId> = candidates.into_iter().collect();
    let lines = lines_through(census, &candidates, points);
    let mut structure = IncidenceStructure::new(points.iter().map(|p| p.0).collect(), lines);
    label_entities(census, &mut structure);
    AffinePlane { key, structure }
}

/// Every affine plane, in key order.
pub fn all_affine_planes(census: &LineCensus) -> Result<Vec<AffinePlane>> {
    Ok(plane_point_sets(census)?
        .iter()
        .map(|(k, pts)| affine_plane_from(census, *k, pts))
        .collect())
}

/// Affine planes whose set (and, given, subset) match.
pub fn select_affine_planes(
    census: &LineCensus,
    set: Option<SetLabel>,
    subset: Option<SubsetLabel>,
) -> Result<Vec<AffinePlane>> {
    if subset.is_some() && census.n() != 3 {
        return Err(Error::SubsetInvalid("subsets exist only for n = 3".into()));
    }
    let planes: Vec<AffinePlane> = plane_point_sets(census)?
        .iter()
        .filter(|(k, _)| set.is_none_or(|s| k.set == s))
        .filter(|(k, _)| subset.is_none() || k.subset == subset)
        .map(|(k, pts)| affine_plane_from(census, *k, pts))
        .collect();
    if planes.is_empty() {
        let what = match (set, subset) {
            (Some(s), Some(t)) => format!("{s} {t}"),
            (Some(s), None) => s.to_string(),
            (None, Some(t)) => t.to_string(),
            (None, None) => "any selector".to_string(),
        };
        return Err(if subset.is_some() {
            Error::SubsetInvalid(format!("no affine plane for {what}"))
        } else {
            Error::SelectorInvalid(format!("no affine plane for {what}"))
        });
    }
    Ok(planes)
}

/// New point for a parallel class whose lines have (1,1) slots (x11, y11).
fn infinity_generator(n: usize, x11: u8, y11: u8) -> ModPair {
    let mut g = ModPair::zero(n);
    g.x.set(n - 1, 0, x11);
    g.y.set(n - 1, 0, y11);
    g
}

/// New line for an affine plane whose lines have (2,2) slots (x22, y22).
pub fn closure_line_generator(n: usize, x22: u8, y22: u8) -> Option<ModPair> {
    let delta = u8::from(y22 == 0);
    match n {
        2 => Some(ModPair::new(
            TriMatrix::from_rows(&[&[x22], &[y22, 0]]),
            TriMatrix::from_rows(&[&[y22], &[delta, 0]]),
        )),
        3 => Some(ModPair::new(
            TriMatrix::from_rows(&[&[x22], &[y22, 0], &[0, delta, 0]]),
            TriMatrix::from_rows(&[&[y22], &[delta, 0], &[0, y22, 0]]),
        )),
        _ => None,
    }
}

/// Outcome of checks made while building a closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureChecks {
    /// Each new point lies on every line of its parallel class.
    pub new_point_on_class: bool,
    pub new_points_distinct: bool,
    pub new_line_is_nonuni_fcs: bool,
    pub new_line_contains_new_points: bool,
    /// The new line contains no point of the affine plane.
    pub new_line_avoids_plane: bool,
}

impl ClosureChecks {
    pub fn all_hold(&self) -> bool {
        self.new_point_on_class
            && self.new_points_distinct
            && self.new_line_is_nonuni_fcs
            && self.new_line_contains_new_points
            && self.new_line_avoids_plane
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Closure {
    pub structure: IncidenceStructure,
    pub points_at_infinity: Vec<u32>,
    pub line_at_infinity: u32,
    pub checks: ClosureChecks,
}

fn not_affine(msg: impl Into<String>) -> Error {
    Error::NotAnAffinePlane(msg.into())
}

/// Adds one registered submodule per parallel class as a point at infinity
/// and a non-unimodular free cyclic submodule as the line at infinity, then
/// recomputes all incidence by containment.
pub fn projective_closure(plane: &IncidenceStructure, census: &LineCensus) -> Result<Closure> {
    require_planar(census)?;
    let n = census.n();
    let report = check_affine_axioms(plane);
    if !report.affine_ok() {
        return Err(not_affine("input fails the affine axioms"));
    }
    let nf = |id: u32| census.normal_form(SubmoduleId(id));
    let in_registry = |id: u32| (id as usize) < census.registry().len();
    if !plane
        .points
        .iter()
        .chain(plane.lines.iter().map(|l| &l.id))
        .all(|&id| in_registry(id))
    {
        return Err(not_affine("entities are not registered submodules"));
    }

    let diag: BTreeSet<(u8, u8)> = plane
        .lines
        .iter()
        .map(|l| (nf(l.id).x.get(1, 1), nf(l.id).y.get(1, 1)))
        .collect();
    let &[(x22, y22)] = diag.iter().copied().collect::<Vec<_>>().as_slice() else {
        return Err(not_affine("lines do not share their (2,2) slots"));
    };

    let mut new_point_on_class = true;
    let mut new_points = Vec::new();
    for class in &report.parallel_classes {
        let first = nf(class[0]);
        let g = infinity_generator(n, first.x.get(0, 0), first.y.get(0, 0));
        let p = census.lookup_generated(&g)?;
        new_point_on_class &= class.iter().all(|&l| contains(census, SubmoduleId(l), p));
        new_points.push(p);
    }
    let distinct: BTreeSet<SubmoduleId> = new_points.iter().copied().collect();
    let new_points_distinct = distinct.len() == new_points.len();

    let line_gen = closure_line_generator(n, x22, y22).expect("n is 2 or 3");
    let line = census.lookup_generated(&line_gen)?;
    let affine_points: Vec<SubmoduleId> = plane.points.iter().map(|&p| SubmoduleId(p)).collect();
    let all_points: Vec<SubmoduleId> = affine_points.iter().chain(&distinct).copied().collect();
    let old_lines: Vec<SubmoduleId> = plane.lines.iter().map(|l| SubmoduleId(l.id)).collect();
    let mut lines = lines_through(census, &old_lines, &all_points);
    lines.extend(lines_through(census, &[line], &all_points));

    let checks = ClosureChecks {
        new_point_on_class,
        new_points_distinct,
        new_line_is_nonuni_fcs: census.nonuni_fcs().binary_search(&line).is_ok(),
        new_line_contains_new_points: distinct.iter().all(|&p| contains(census, line, p)),
        new_line_avoids_plane: !affine_points.iter().any(|&p| contains(census, line, p)),
    };
    let mut structure = IncidenceStructure::new(all_points.iter().map(|p| p.0).collect(), lines);
    label_entities(census, &mut structure);
    for p in &distinct {
        if let Some(l) = structure.labels.get_mut(&p.0) {
            l.push_str(" at infinity");
        }
    }
    if let Some(l) = structure.labels.get_mut(&line.0) {
        l.push_str(" at infinity");
    }
    Ok(Closure {
        structure,
        points_at_infinity: distinct.iter().map(|p| p.0).collect(),
        line_at_infinity: line.0,
        checks,
    })
}

/// What the closure-line formula produces for one choice of (x22, y22).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureLineCase {
    pub x22: u8,
    pub y22: u8,
    pub generator: String,
    pub free: bool,
    pub unimodular: bool,
    pub contains_points_at_infinity: bool,
}

impl ClosureLineCase {
    pub fn valid(&self) -> bool {
        self.free && !self.unimodular && self.contains_points_at_infinity
    }
}

/// Evaluates the closure-line formula on every nonzero (x22, y22), not just
/// the normalized ones that label sets.
pub fn closure_line_cases(census: &LineCensus) -> Result<Vec<ClosureLineCase>> {
    require_planar(census)?;
    let n = census.n();
    let q = census.q() as u8;
    let mut at_infinity = BTreeSet::new();
    for x11 in 0..q {
        for y11 in 0..q {
            if (x11, y11) != (0, 0) {
                at_infinity.insert(census.lookup_generated(&infinity_generator(n, x11, y11))?);
            }
        }
    }
    let mut out = Vec::new();
    for x22 in 0..q {
        for y22 in 0..q {
            if (x22, y22) == (0, 0) {
                continue;
            }
            let g = closure_line_generator(n, x22, y22).expect("n is 2 or 3");
            let id = census.lookup_generated(&g)?;
            let s = census.get(id);
            out.push(ClosureLineCase {
                x22,
                y22,
                generator: g.to_string(),
                free: s.is_free(),
                unimodular: g.is_unimodular(),
                contains_points_at_infinity: at_infinity.iter().all(|&p| contains(census, id, p)),
            });
        }
    }
    Ok(out)
}

/// How a point-set of a 2-affine plane meets a parallel class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reading {
    /// Every member of the point-set lies in some member of the class.
    Every,
    /// Some member of the point-set lies in some member of the class.
    Some,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoAffinePlane {
    pub subset: PointLabel,
    pub reading: Reading,
    pub structure: IncidenceStructure,
}

fn composite_id(members: &[u32]) -> u32 {
    COMPOSITE_BIT | members.iter().min().copied().unwrap_or(0)
}

/// Parallel classes of `plane`, each as sorted line IDs.
fn classes_of(plane: &AffinePlane) -> Vec<Vec<u32>> {
    check_affine_axioms(&plane.structure).parallel_classes
}

/// The 2-affine plane of an n = 3 subset: points are the point-sets of its
/// q² affine planes, lines the distinct parallel classes among them.
pub fn build_2affine_plane(
    census: &LineCensus,
    subset: PointLabel,
    reading: Reading,
) -> Result<TwoAffinePlane> {
    if census.n() != 3 {
        return Err(Error::DimensionUnsupported(census.n(), "3"));
    }
    if subset.subset.is_none() {
        return Err(Error::SubsetInvalid(format!("{subset} names no subset")));
    }
    let planes = select_affine_planes(census, Some(subset.set), subset.subset)?;
    let classes: BTreeSet<Vec<u32>> = planes.iter().flat_map(classes_of).collect();

    let point_sets: Vec<&Vec<u32>> = planes.iter().map(|p| &p.structure.points).collect();
    let lines = classes
        .iter()
        .map(|class| Line {
            id: composite_id(class),
            point_ids: point_sets
                .iter()
                .filter(|pts| {
                    let inside = |&p: &u32| {
                        class
                            .iter()
                            .any(|&l| contains(census, SubmoduleId(l), SubmoduleId(p)))
                    };
                    match reading {
                        Reading::Every => pts.iter().all(inside),
                        Reading::Some => pts.iter().any(inside),
                    }
                })
                .map(|pts| composite_id(pts))
                .collect(),
        })
        .collect();
    let mut structure =
        IncidenceStructure::new(point_sets.iter().map(|p| composite_id(p)).collect(), lines);
    for (plane, pts) in planes.iter().zip(&point_sets) {
        structure
            .labels
            .insert(composite_id(pts), format!("affine plane {}", plane.key));
    }
    for class in &classes {
        let sig = class_signature(census.normal_form(SubmoduleId(class[0])));
        structure
            .labels
            .insert(composite_id(class), format!("parallel class {sig}"));
    }
    Ok(TwoAffinePlane {
        subset,
        reading,
        structure,
    })
}

/// All n = 3 subsets, in label order.
pub fn subsets(census: &LineCensus) -> Result<Vec<PointLabel>> {
    if census.n() != 3 {
        return Err(Error::DimensionUnsupported(census.n(), "3"));
    }
    let keys: BTreeSet<PointLabel> = plane_point_sets(census)?
        .keys()
        .map(|k| k.point_label())
        .collect();
    Ok(keys.into_iter().collect())
}
