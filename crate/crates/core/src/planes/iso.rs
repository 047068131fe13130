//! Explicit isomorphisms to the coordinate planes AG(2,q) and PG(2,q).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FieldTable;

use super::IncidenceStructure;

/// Largest order the backtracking search accepts.
pub const MAX_SEARCH_ORDER: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classical {
    /// AG(2,q), points (x, y).
    Affine,
    /// PG(2,q), points as normalized homogeneous triples.
    Projective,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum IsoOutcome {
    Found {
        target: Classical,
        /// Structure point ID to coordinates.
        point_map: BTreeMap<u32, Vec<u8>>,
    },
    /// The search space was exhausted, or a cheap invariant already differs.
    Absent { reason: String, nodes: u64 },
}

impl IsoOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, IsoOutcome::Found { .. })
    }
}

struct Plane {
    coords: Vec<Vec<u8>>,
    lines: Vec<Vec<usize>>,
}

impl Plane {
    fn affine(f: &FieldTable) -> Self {
        let q = f.order() as u8;
        let coords: Vec<Vec<u8>> = (0..q)
            .flat_map(|x| (0..q).map(move |y| vec![x, y]))
            .collect();
        let at = |x: u8, y: u8| x as usize * q as usize + y as usize;
        let mut lines = Vec::new();
        for m in 0..q {
            for b in 0..q {
                lines.push((0..q).map(|x| at(x, f.add(f.mul(m, x), b))).collect());
            }
        }
        for c in 0..q {
            lines.push((0..q).map(|y| at(c, y)).collect());
        }
        Plane { coords, lines }
    }

    fn projective(f: &FieldTable) -> Self {
        let q = f.order() as u8;
        let mut coords = Vec::new();
        for a in 0..q {
            for b in 0..q {
                coords.push(vec![1, a, b]);
            }
        }
        for c in 0..q {
            coords.push(vec![0, 1, c]);
        }
        coords.push(vec![0, 0, 1]);
        let dot = |u: &[u8], v: &[u8]| {
            u.iter()
                .zip(v)
                .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
        };
        let lines = coords
            .iter()
            .map(|u| {
                (0..coords.len())
                    .filter(|&i| dot(u, &coords[i]) == 0)
                    .collect()
            })
            .collect();
        Plane { coords, lines }
    }
}

/// Incidence data indexed by position.
struct Indexed {
    n_points: usize,
    lines: Vec<Vec<usize>>,
    /// Unique line through two points, if there is exactly one.
    join: Vec<Vec<Option<usize>>>,
}

impl Indexed {
    fn new(n_points: usize, lines: Vec<Vec<usize>>) -> Self {
        let mut count = vec![vec![0usize; n_points]; n_points];
        let mut join = vec![vec![None; n_points]; n_points];
        for (li, l) in lines.iter().enumerate() {
            for &a in l {
                for &b in l {
                    count[a][b] += 1;
                    join[a][b] = Some(li);
                }
            }
        }
        for a in 0..n_points {
            for b in 0..n_points {
                if count[a][b] != 1 {
                    join[a][b] = None;
                }
            }
        }
        Indexed {
            n_points,
            lines,
            join,
        }
    }

    fn profile(&self) -> (Vec<usize>, Vec<usize>) {
        let mut sizes: Vec<usize> = self.lines.iter().map(Vec::len).collect();
        let mut degrees = vec![0usize; self.n_points];
        for l in &self.lines {
            for &p in l {
                degrees[p] += 1;
            }
        }
        sizes.sort_unstable();
        degrees.sort_unstable();
        (sizes, degrees)
    }
}

struct Search<'a> {
    s: &'a Indexed,
    c: &'a Indexed,
    map: Vec<usize>,
    used: Vec<bool>,
    line_map: Vec<Option<usize>>,
    line_rev: Vec<Option<usize>>,
    nodes: u64,
}

impl Search<'_> {
    fn run(&mut self, i: usize) -> bool {
        if i == self.s.n_points {
            return self.verify();
        }
        for target in 0..self.c.n_points {
            if self.used[target] {
                continue;
            }
            self.nodes += 1;
            let mut bound = Vec::new();
            if self.bind(i, target, &mut bound) {
                self.map[i] = target;
                self.used[target] = true;
                if self.run(i + 1) {
                    return true;
                }
                self.used[target] = false;
            }
            for l in bound {
                let cl = self.line_map[l].take().expect("bound line");
                self.line_rev[cl] = None;
            }
        }
        false
    }

    /// Extends the line map for point `i` sent to `target`; lines bound here
    /// are recorded in `bound` so the caller can undo them.
    fn bind(&mut self, i: usize, target: usize, bound: &mut Vec<usize>) -> bool {
        for j in 0..i {
            let Some(l) = self.s.join[i][j] else { continue };
            let Some(cl) = self.c.join[target][self.map[j]] else {
                return false;
            };
            match (self.line_map[l], self.line_rev[cl]) {
                (Some(x), _) if x != cl => return false,
                (Some(_), _) => {}
                (None, Some(_)) => return false,
                (None, None) => {
                    self.line_map[l] = Some(cl);
                    self.line_rev[cl] = Some(l);
                    bound.push(l);
                }
            }
        }
        true
    }

    fn verify(&self) -> bool {
        let mut images: Vec<Vec<usize>> = self
            .s
            .lines
            .iter()
            .map(|l| {
                let mut v: Vec<usize> = l.iter().map(|&p| self.map[p]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        let mut targets: Vec<Vec<usize>> = self
            .c
            .lines
            .iter()
            .map(|l| {
                let mut v = l.clone();
                v.sort_unstable();
                v
            })
            .collect();
        images.sort();
        targets.sort();
        images == targets
    }
}

/// Backtracking search for a point bijection onto AG(2,q) or PG(2,q) that
/// maps lines onto lines. The target is chosen by point count.
pub fn isomorphism_to_classical(s: &IncidenceStructure, q: u32) -> Result<IsoOutcome> {
    if q > MAX_SEARCH_ORDER {
        return Err(Error::OrderTooLargeForSearch(q));
    }
    let f = FieldTable::new(q)?;
    let qq = q as usize;
    let (target, plane) = if s.points.len() == qq * qq {
        (Classical::Affine, Plane::affine(&f))
    } else if s.points.len() == qq * qq + qq + 1 {
        (Classical::Projective, Plane::projective(&f))
    } else {
        return Ok(IsoOutcome::Absent {
            reason: format!("{} points fit neither plane of order {q}", s.points.len()),
            nodes: 0,
        });
    };

    let index: BTreeMap<u32, usize> = s.points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut lines = Vec::with_capacity(s.lines.len());
    for l in &s.lines {
        let mut pts = Vec::with_capacity(l.point_ids.len());
        for p in &l.point_ids {
            let Some(&i) = index.get(p) else {
                return Ok(IsoOutcome::Absent {
                    reason: format!("line {} has unknown point {p}", l.id),
                    nodes: 0,
                });
            };
            pts.push(i);
        }
        lines.push(pts);
    }
    let si = Indexed::new(s.points.len(), lines);
    let ci = Indexed::new(plane.coords.len(), plane.lines);
    if si.profile() != ci.profile() {
        return Ok(IsoOutcome::Absent {
            reason: "line sizes or point degrees differ".into(),
            nodes: 0,
        });
    }

    let mut search = Search {
        s: &si,
        c: &ci,
        map: vec![0; si.n_points],
        used: vec![false; ci.n_points],
        line_map: vec![None; si.lines.len()],
        line_rev: vec![None; ci.lines.len()],
        nodes: 0,
    };
    if search.run(0) {
        let point_map = s
            .points
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, plane.coords[search.map[i]].clone()))
            .collect();
        Ok(IsoOutcome::Found { target, point_map })
    } else {
        Ok(IsoOutcome::Absent {
            reason: "search exhausted".into(),
            nodes: search.nodes,
        })
    }
}
