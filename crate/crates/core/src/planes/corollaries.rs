//! Closed-form descriptions of planes, parallel classes and containment,
//! checked against the structures built by containment.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FieldTable;
use crate::modspace::{ModPair, SubmoduleId};
use crate::projline::{class_signature, LineCensus, PointLabel};

use super::{check_affine_axioms, AffinePlane, PlaneKey};

const MAX_EXAMPLES: usize = 8;

/// One biconditional, tested on every case it speaks about.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryCheck {
    pub name: String,
    pub cases: u64,
    pub mismatches: u64,
    /// A few mismatching ID pairs.
    pub examples: Vec<[u32; 2]>,
}

impl CorollaryCheck {
    fn new(name: &str) -> Self {
        CorollaryCheck {
            name: name.to_string(),
            cases: 0,
            mismatches: 0,
            examples: Vec::new(),
        }
    }

    fn record(&mut self, a: u32, b: u32, truth: bool, claim: bool) {
        self.cases += 1;
        if truth != claim {
            self.mismatches += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push([a, b]);
            }
        }
    }

    pub fn holds(&self) -> bool {
        self.mismatches == 0 && self.cases > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub n: usize,
    pub q: u32,
    pub checks: Vec<CorollaryCheck>,
}

impl CorollaryReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(CorollaryCheck::holds)
    }
}

/// Does the point of the projective line with normal form `point` contain
/// the shielded submodule with normal form `shielded`? Read off the
/// generators: rows 2 and 3 of the diagonal block must agree, and the first
/// column must satisfy x_k1 = p_k1 - r_k1 x11 (when y11 = 1 and the rest
/// of Y's first column is 0) or y_k1 = r_k1 - p_k1 y11 (when x11 = 1 and
/// the rest of X's first column is 0). `None` when `point` has neither shape.
pub fn containment_criterion(f: &FieldTable, point: &ModPair, shielded: &ModPair) -> Option<bool> {
    let n = point.dim();
    let (x, y) = (&point.x, &point.y);
    let (p, r) = (&shielded.x, &shielded.y);
    let block =
        (1..n).all(|i| (1..=i).all(|j| x.get(i, j) == p.get(i, j) && y.get(i, j) == r.get(i, j)));
    let y_form = y.get(0, 0) == 1 && (1..n).all(|k| y.get(k, 0) == 0);
    let x_form = x.get(0, 0) == 1 && (1..n).all(|k| x.get(k, 0) == 0);
    if !y_form && !x_form {
        return None;
    }
    let (x11, y11) = (x.get(0, 0), y.get(0, 0));
    let y_rule = (1..n).all(|k| x.get(k, 0) == f.sub(p.get(k, 0), f.mul(r.get(k, 0), x11)));
    let x_rule = (1..n).all(|k| y.get(k, 0) == f.sub(r.get(k, 0), f.mul(p.get(k, 0), y11)));
    Some(block && (!y_form || y_rule) && (!x_form || x_rule))
}

/// Ground truth gathered from the built planes.
struct Truth {
    /// Plane indices each line belongs to.
    planes_of: BTreeMap<u32, BTreeSet<usize>>,
    /// Parallel classes of each plane, as class index per line.
    class_of: Vec<BTreeMap<u32, usize>>,
}

impl Truth {
    fn new(planes: &[AffinePlane]) -> Self {
        let mut planes_of: BTreeMap<u32, BTreeSet<usize>> = BTreeMap::new();
        let mut class_of = Vec::with_capacity(planes.len());
        for (i, p) in planes.iter().enumerate() {
            for l in &p.structure.lines {
                planes_of.entry(l.id).or_default().insert(i);
            }
            let classes = check_affine_axioms(&p.structure).parallel_classes;
            class_of.push(
                classes
                    .iter()
                    .enumerate()
                    .flat_map(|(c, ls)| ls.iter().map(move |&l| (l, c)))
                    .collect(),
            );
        }
        Truth {
            planes_of,
            class_of,
        }
    }

    fn planes(&self, line: u32) -> BTreeSet<usize> {
        self.planes_of.get(&line).cloned().unwrap_or_default()
    }
}

fn diag_block(nf: &ModPair) -> Vec<u8> {
    let n = nf.dim();
    let mut out = Vec::new();
    for i in 1..n {
        for j in 1..=i {
            out.push(nf.x.get(i, j));
            out.push(nf.y.get(i, j));
        }
    }
    out
}

fn last_first_column(nf: &ModPair) -> (u8, u8) {
    let n = nf.dim();
    (nf.x.get(n - 1, 0), nf.y.get(n - 1, 0))
}

/// Checks every closed-form description against `planes`, which must be
/// all affine planes of `census`.
pub fn check_corollaries(census: &LineCensus, planes: &[AffinePlane]) -> Result<CorollaryReport> {
    let n = census.n();
    if n != 2 && n != 3 {
        return Err(Error::DimensionUnsupported(n, "2 or 3"));
    }
    let f = census.ctx().field();
    let truth = Truth::new(planes);
    let nf = |id: u32| census.normal_form(SubmoduleId(id));
    let lines: Vec<u32> = census.points().iter().map(|p| p.0).collect();
    let mut checks = Vec::new();

    // Same plane (n = 2) or same subset (n = 3) against the diagonal block.
    let subset_of = |i: usize| planes[i].key.point_label();
    let groups: Vec<BTreeSet<PointLabel>> = lines
        .iter()
        .map(|&l| truth.planes(l).into_iter().map(subset_of).collect())
        .collect();
    let blocks: Vec<Vec<u8>> = lines.iter().map(|&l| diag_block(nf(l))).collect();
    let mut c = CorollaryCheck::new(if n == 2 {
        "same affine plane iff equal (2,2) slots"
    } else {
        "same subset iff equal (2,2), (3,2), (3,3) slots"
    });
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let truth = if n == 2 {
                !truth.planes(lines[i]).is_disjoint(&truth.planes(lines[j]))
            } else {
                !groups[i].is_disjoint(&groups[j])
            };
            c.record(lines[i], lines[j], truth, blocks[i] == blocks[j]);
        }
    }
    checks.push(c);

    if n == 3 {
        // Containment of shielded submodules, and planes recovered from it.
        let mut contain = CorollaryCheck::new("shielded containment criterion");
        let key_of: BTreeMap<u32, PlaneKey> = planes
            .iter()
            .flat_map(|p| p.structure.points.iter().map(move |&s| (s, p.key)))
            .collect();
        let mut keys: Vec<BTreeSet<PlaneKey>> = vec![BTreeSet::new(); lines.len()];
        for (i, &l) in lines.iter().enumerate() {
            let point = census.get(SubmoduleId(l));
            for &s in census.shielded() {
                let gen = census.get(s).canonical_generator().code(census.q());
                let truth = point.contains_pair(gen);
                let claim = containment_criterion(f, nf(l), nf(s.0));
                contain.record(l, s.0, truth, claim == Some(true));
                if claim == Some(true) {
                    if let Some(&k) = key_of.get(&s.0) {
                        keys[i].insert(k);
                    }
                }
            }
        }
        checks.push(contain);

        let mut same = CorollaryCheck::new("same affine plane iff criterion shares a plane");
        let plane_keys: Vec<BTreeSet<PlaneKey>> = lines
            .iter()
            .map(|&l| truth.planes(l).into_iter().map(|i| planes[i].key).collect())
            .collect();
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                if blocks[i] != blocks[j] {
                    continue;
                }
                same.record(
                    lines[i],
                    lines[j],
                    !plane_keys[i].is_disjoint(&plane_keys[j]),
                    !keys[i].is_disjoint(&keys[j]),
                );
            }
        }
        checks.push(same);
    }

    let mut parallel = CorollaryCheck::new(if n == 2 {
        "parallel iff equal (1,1) slots"
    } else {
        "parallel iff equal outside the (3,1) slots"
    });
    let mut distinct = CorollaryCheck::new(if n == 2 {
        "distinct parallel lines iff (2,1) slots differ"
    } else {
        "distinct parallel lines iff (3,1) slots differ"
    });
    for (p, classes) in planes.iter().zip(&truth.class_of) {
        let ls = &p.structure.lines;
        for a in 0..ls.len() {
            for b in a + 1..ls.len() {
                let (la, lb) = (ls[a].id, ls[b].id);
                let same_class = classes[&la] == classes[&lb];
                let sig_eq = class_signature(nf(la)) == class_signature(nf(lb));
                parallel.record(la, lb, same_class, sig_eq);
                if same_class {
                    distinct.record(
                        la,
                        lb,
                        la != lb,
                        last_first_column(nf(la)) != last_first_column(nf(lb)),
                    );
                }
            }
        }
    }
    checks.push(parallel);
    checks.push(distinct);

    Ok(CorollaryReport {
        n,
        q: census.q(),
        checks,
    })
}
