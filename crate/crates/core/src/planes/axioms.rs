//! Exhaustive axiom checks on small incidence structures.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::IncidenceStructure;

/// Maximum number of counterexamples kept per axiom.
const MAX_WITNESSES: usize = 16;

/// Whether an axiom holds, with counterexamples when it fails (or, for the
/// existence axioms, the witness found).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub holds: bool,
    pub witnesses: Vec<Vec<u32>>,
}

impl AxiomCheck {
    fn universal(counterexamples: Vec<Vec<u32>>) -> Self {
        AxiomCheck {
            holds: counterexamples.is_empty(),
            witnesses: counterexamples,
        }
    }

    fn existential(witness: Option<Vec<u32>>) -> Self {
        AxiomCheck {
            holds: witness.is_some(),
            witnesses: witness.into_iter().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveChecks {
    pub two_points_one_line: AxiomCheck,
    pub two_lines_one_point: AxiomCheck,
    pub quadrilateral: AxiomCheck,
    pub uniform_line_size: bool,
}

/// Result of [`check_affine_axioms`] or [`check_projective_axioms`]. The
/// affine fields are `None` in a projective report and vice versa.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub a1: Option<AxiomCheck>,
    pub a2: Option<AxiomCheck>,
    pub a3: Option<AxiomCheck>,
    pub parallel_classes: Vec<Vec<u32>>,
    pub parallelism_is_equivalence: Option<bool>,
    pub projective: Option<ProjectiveChecks>,
    pub order: Option<u32>,
    /// Point and line counts agree with `order`.
    pub counts_consistent: bool,
}

impl AxiomReport {
    pub fn affine_ok(&self) -> bool {
        let ok = |c: &Option<AxiomCheck>| c.as_ref().is_some_and(|c| c.holds);
        ok(&self.a1)
            && ok(&self.a2)
            && ok(&self.a3)
            && self.parallelism_is_equivalence == Some(true)
            && self.counts_consistent
    }

    pub fn projective_ok(&self) -> bool {
        self.projective.as_ref().is_some_and(|p| {
            p.two_points_one_line.holds
                && p.two_lines_one_point.holds
                && p.quadrilateral.holds
                && p.uniform_line_size
        }) && self.counts_consistent
    }
}

/// Dense incidence matrix over point indices.
struct Grid<'a> {
    s: &'a IncidenceStructure,
    on: Vec<Vec<bool>>,
}

impl<'a> Grid<'a> {
    fn new(s: &'a IncidenceStructure) -> Self {
        let on = s
            .lines
            .iter()
            .map(|l| s.points.iter().map(|&p| s.incident(l, p)).collect())
            .collect();
        Grid { s, on }
    }

    fn np(&self) -> usize {
        self.s.points.len()
    }

    fn lines_through(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.on.len())
            .filter(|&l| self.on[l][a] && self.on[l][b])
            .collect()
    }

    fn meet(&self, l: usize, m: usize) -> Vec<usize> {
        (0..self.np())
            .filter(|&p| self.on[l][p] && self.on[m][p])
            .collect()
    }

    fn collinear(&self, pts: &[usize]) -> bool {
        self.on.iter().any(|row| pts.iter().all(|&p| row[p]))
    }

    fn pid(&self, i: usize) -> u32 {
        self.s.points[i]
    }

    fn lid(&self, i: usize) -> u32 {
        self.s.lines[i].id
    }

    /// Point pairs not on exactly one line.
    fn two_points_one_line(&self) -> AxiomCheck {
        let mut bad = Vec::new();
        for a in 0..self.np() {
            for b in a + 1..self.np() {
                if self.lines_through(a, b).len() != 1 && bad.len() < MAX_WITNESSES {
                    bad.push(vec![self.pid(a), self.pid(b)]);
                }
            }
        }
        AxiomCheck::universal(bad)
    }

    fn uniform_size(&self) -> Option<usize> {
        let sizes: BTreeSet<usize> = self.s.lines.iter().map(|l| l.point_ids.len()).collect();
        match sizes.into_iter().collect::<Vec<_>>().as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }
}

/// Classes of the relation "equal or no common point", or `None` when that
/// relation is not transitive.
pub fn parallel_classes(s: &IncidenceStructure) -> Option<Vec<Vec<u32>>> {
    let g = Grid::new(s);
    let nl = s.lines.len();
    let parallel = |l: usize, m: usize| l == m || g.meet(l, m).is_empty();
    let mut classes: BTreeSet<Vec<u32>> = BTreeSet::new();
    for l in 0..nl {
        let class: Vec<usize> = (0..nl).filter(|&m| parallel(l, m)).collect();
        for &a in &class {
            for &b in &class {
                if !parallel(a, b) {
                    return None;
                }
            }
        }
        classes.insert(class.iter().map(|&m| g.lid(m)).collect());
    }
    Some(classes.into_iter().collect())
}

/// A1 (two points, one line), A2 (unique parallel through an off point),
/// A3 (three non-collinear points), order and parallel classes.
pub fn check_affine_axioms(s: &IncidenceStructure) -> AxiomReport {
    let g = Grid::new(s);
    let nl = s.lines.len();

    let mut a2_bad = Vec::new();
    for l in 0..nl {
        for p in (0..g.np()).filter(|&p| !g.on[l][p]) {
            let through: usize = (0..nl)
                .filter(|&m| g.on[m][p] && g.meet(l, m).is_empty())
                .count();
            if through != 1 && a2_bad.len() < MAX_WITNESSES {
                a2_bad.push(vec![g.lid(l), g.pid(p)]);
            }
        }
    }

    let triple = (0..g.np())
        .flat_map(|a| (a + 1..g.np()).map(move |b| (a, b)))
        .find_map(|(a, b)| {
            (b + 1..g.np())
                .find(|&c| !g.collinear(&[a, b, c]))
                .map(|c| vec![g.pid(a), g.pid(b), g.pid(c)])
        });

    let classes = parallel_classes(s);
    let order = g.uniform_size().map(|m| m as u32);
    let counts_consistent = order.is_some_and(|m| {
        let m = m as usize;
        s.points.len() == m * m && nl == m * m + m
    });
    AxiomReport {
        a1: Some(g.two_points_one_line()),
        a2: Some(AxiomCheck::universal(a2_bad)),
        a3: Some(AxiomCheck::existential(triple)),
        parallelism_is_equivalence: Some(classes.is_some()),
        parallel_classes: classes.unwrap_or_default(),
        projective: None,
        order,
        counts_consistent,
    }
}

/// Two points on exactly one line, two lines meeting in exactly one point,
/// a quadrilateral, and uniform line size m + 1 with m² + m + 1 points and
/// lines.
pub fn check_projective_axioms(s: &IncidenceStructure) -> AxiomReport {
    let g = Grid::new(s);
    let nl = s.lines.len();

    let mut meet_bad = Vec::new();
    for l in 0..nl {
        for m in l + 1..nl {
            if g.meet(l, m).len() != 1 && meet_bad.len() < MAX_WITNESSES {
                meet_bad.push(vec![g.lid(l), g.lid(m)]);
            }
        }
    }

    let np = g.np();
    let mut quad = None;
    'search: for a in 0..np {
        for b in a + 1..np {
            for c in (b + 1..np).filter(|&c| !g.collinear(&[a, b, c])) {
                for d in c + 1..np {
                    if [[a, b, d], [a, c, d], [b, c, d]]
                        .iter()
                        .all(|t| !g.collinear(t))
                    {
                        quad = Some(vec![g.pid(a), g.pid(b), g.pid(c), g.pid(d)]);
                        break 'search;
                    }
                }
            }
        }
    }

    let size = g.uniform_size();
    let order = size.filter(|&k| k >= 1).map(|k| (k - 1) as u32);
    let counts_consistent = order.is_some_and(|m| {
        let total = (m * m + m + 1) as usize;
        np == total && nl == total
    });
    AxiomReport {
        a1: None,
        a2: None,
        a3: None,
        parallel_classes: Vec::new(),
        parallelism_is_equivalence: None,
        projective: Some(ProjectiveChecks {
            two_points_one_line: g.two_points_one_line(),
            two_lines_one_point: AxiomCheck::universal(meet_bad),
            quadrilateral: AxiomCheck::existential(quad),
            uniform_line_size: size.is_some(),
        }),
        order,
        counts_consistent,
    }
}

#[cfg(test)]
mod tests {
    use super::super::Line;
    use super::*;

    fn structure(points: &[u32], lines: &[&[u32]]) -> IncidenceStructure {
        IncidenceStructure::new(
            points.to_vec(),
            lines
                .iter()
                .enumerate()
                .map(|(i, l)| Line {
                    id: 100 + i as u32,
                    point_ids: l.to_vec(),
                })
                .collect(),
        )
    }

    fn ag2() -> IncidenceStructure {
        structure(
            &[0, 1, 2, 3],
            &[&[0, 1], &[2, 3], &[0, 2], &[1, 3], &[0, 3], &[1, 2]],
        )
    }

    fn fano() -> IncidenceStructure {
        structure(
            &[0, 1, 2, 3, 4, 5, 6],
            &[
                &[0, 1, 2],
                &[0, 3, 4],
                &[0, 5, 6],
                &[1, 3, 5],
                &[1, 4, 6],
                &[2, 3, 6],
                &[2, 4, 5],
            ],
        )
    }

    #[test]
    fn order_two_affine_plane() {
        let r = check_affine_axioms(&ag2());
        assert!(r.affine_ok());
        assert_eq!(r.order, Some(2));
        assert_eq!(r.parallel_classes.len(), 3);
        assert!(r.parallel_classes.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn repeated_line_breaks_a1() {
        let r = check_affine_axioms(&structure(
            &[0, 1, 2, 3],
            &[
                &[0, 1],
                &[0, 1],
                &[2, 3],
                &[0, 2],
                &[1, 3],
                &[0, 3],
                &[1, 2],
            ],
        ));
        let a1 = r.a1.unwrap();
        assert!(!a1.holds);
        assert_eq!(a1.witnesses, vec![vec![0, 1]]);
    }

    #[test]
    fn collinear_points_break_a3() {
        let r = check_affine_axioms(&structure(&[0, 1, 2], &[&[0, 1, 2]]));
        assert!(r.a1.unwrap().holds);
        assert!(!r.a3.unwrap().holds);
    }

    #[test]
    fn fano_is_projective() {
        let r = check_projective_axioms(&fano());
        assert!(r.projective_ok());
        assert_eq!(r.order, Some(2));
    }

    #[test]
    fn affine_plane_is_not_projective() {
        let r = check_projective_axioms(&ag2());
        let p = r.projective.unwrap();
        assert!(!p.two_lines_one_point.holds);
        assert!(p.two_lines_one_point.witnesses.iter().all(|w| w.len() == 2));
    }

    #[test]
    fn fano_fails_affine_a2() {
        assert!(!check_affine_axioms(&fano()).a2.unwrap().holds);
    }
}
