//! Explicit generator families for n = 2 and n = 3, following the known
//! classification. They are checked against the census, never
//! used to build it.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::modspace::{ModPair, SubmoduleId};
use crate::trimat::{RingContext, TriMatrix};

use super::{LineCensus, SetLabel};

fn m(rows: &[&[u8]]) -> TriMatrix {
    TriMatrix::from_rows(rows)
}

fn pair(x: &[&[u8]], y: &[&[u8]]) -> ModPair {
    ModPair::new(m(x), m(y))
}

/// All tuples of `k` field elements.
fn tuples(q: u32, k: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..q as u8).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

fn unsupported(ctx: &RingContext) -> Error {
    Error::DimensionUnsupported(ctx.dim(), "2 or 3")
}

/// Generators of every non-unimodular free cyclic submodule, as listed for
/// the first set and the k-sets.
pub fn theorem_nonuni_generators(ctx: &RingContext) -> Result<Vec<ModPair>> {
    let q = ctx.q();
    let mut out = Vec::new();
    match ctx.dim() {
        2 => {
            out.push(pair(&[&[1], &[0, 0]], &[&[0], &[1, 0]]));
            for k in 0..q as u8 {
                out.push(pair(&[&[k], &[1, 0]], &[&[1], &[0, 0]]));
            }
        }
        3 => {
            for t in tuples(q, 3) {
                let (a, b, c) = (t[0], t[1], t[2]);
                out.push(pair(
                    &[&[1], &[0, 0], &[0, a, 1]],
                    &[&[0], &[1, 0], &[0, b, c]],
                ));
                out.push(pair(
                    &[&[1], &[0, 1], &[0, 0, 0]],
                    &[&[0], &[a, b], &[c, 1, 0]],
                ));
            }
            for t in tuples(q, 2) {
                let (a, b) = (t[0], t[1]);
                out.push(pair(
                    &[&[1], &[0, 0], &[0, a, 0]],
                    &[&[0], &[1, 0], &[0, b, 1]],
                ));
                out.push(pair(
                    &[&[1], &[0, 1], &[0, 0, 0]],
                    &[&[0], &[a, b], &[1, 0, 0]],
                ));
                out.push(pair(
                    &[&[1], &[0, 0], &[0, 1, 0]],
                    &[&[0], &[a, 1], &[b, 0, 0]],
                ));
            }
            for a in 0..q as u8 {
                out.push(pair(
                    &[&[1], &[0, 0], &[0, a, 0]],
                    &[&[0], &[1, 0], &[0, 1, 0]],
                ));
                out.push(pair(
                    &[&[1], &[0, 0], &[0, 0, 0]],
                    &[&[0], &[a, 1], &[1, 0, 0]],
                ));
            }
            out.push(pair(
                &[&[1], &[0, 0], &[0, 1, 0]],
                &[&[0], &[1, 0], &[0, 0, 0]],
            ));

            for k in 0..q as u8 {
                for t in tuples(q, 3) {
                    let (a, b, c) = (t[0], t[1], t[2]);
                    out.push(pair(
                        &[&[k], &[1, 0], &[0, a, b]],
                        &[&[1], &[0, 0], &[0, c, 1]],
                    ));
                    out.push(pair(
                        &[&[k], &[a, b], &[c, 1, 0]],
                        &[&[1], &[0, 1], &[0, 0, 0]],
                    ));
                }
                for t in tuples(q, 2) {
                    let (a, b) = (t[0], t[1]);
                    out.push(pair(
                        &[&[k], &[1, 0], &[0, a, 1]],
                        &[&[1], &[0, 0], &[0, b, 0]],
                    ));
                    out.push(pair(
                        &[&[k], &[a, b], &[1, 0, 0]],
                        &[&[1], &[0, 1], &[0, 0, 0]],
                    ));
                    out.push(pair(
                        &[&[k], &[a, 1], &[b, 0, 0]],
                        &[&[1], &[0, 0], &[0, 1, 0]],
                    ));
                }
                for a in 0..q as u8 {
                    out.push(pair(
                        &[&[k], &[1, 0], &[0, 1, 0]],
                        &[&[1], &[0, 0], &[0, a, 0]],
                    ));
                    out.push(pair(
                        &[&[k], &[a, 1], &[1, 0, 0]],
                        &[&[1], &[0, 0], &[0, 0, 0]],
                    ));
                }
                out.push(pair(
                    &[&[k], &[1, 0], &[0, 0, 0]],
                    &[&[1], &[0, 0], &[0, 1, 0]],
                ));
            }
        }
        _ => return Err(unsupported(ctx)),
    }
    Ok(out)
}

/// Generators of the points of the projective line in the
/// first-set / k-set presentation.
pub fn theorem_point_generators(ctx: &RingContext) -> Result<Vec<ModPair>> {
    let q = ctx.q();
    let mut out = Vec::new();
    match ctx.dim() {
        2 => {
            for t in tuples(q, 2) {
                let (a, b) = (t[0], t[1]);
                out.push(pair(&[&[1], &[0, 1]], &[&[a], &[b, 0]]));
            }
            for a in 0..q as u8 {
                out.push(pair(&[&[0], &[a, 1]], &[&[1], &[0, 0]]));
            }
            for k in 0..q as u8 {
                for t in tuples(q, 2) {
                    let (a, b) = (t[0], t[1]);
                    out.push(pair(&[&[a], &[b, k]], &[&[1], &[0, 1]]));
                }
                for a in 0..q as u8 {
                    out.push(pair(&[&[1], &[0, k]], &[&[0], &[a, 1]]));
                }
            }
        }
        3 => {
            // first set, subsets (y32, y33) then (y32, 1) with x33 = 0
            for s in tuples(q, 2) {
                let (y32, y33) = (s[0], s[1]);
                for t in tuples(q, 3) {
                    out.push(pair(
                        &[&[1], &[0, 1], &[0, 0, 1]],
                        &[&[t[0]], &[t[1], 0], &[t[2], y32, y33]],
                    ));
                }
                for t in tuples(q, 2) {
                    out.push(pair(
                        &[&[0], &[t[0], 1], &[t[1], 0, 1]],
                        &[&[1], &[0, 0], &[0, y32, y33]],
                    ));
                }
            }
            for y32 in 0..q as u8 {
                for t in tuples(q, 3) {
                    out.push(pair(
                        &[&[1], &[0, 1], &[0, 0, 0]],
                        &[&[t[0]], &[t[1], 0], &[t[2], y32, 1]],
                    ));
                }
                for t in tuples(q, 2) {
                    out.push(pair(
                        &[&[0], &[t[0], 1], &[t[1], 0, 0]],
                        &[&[1], &[0, 0], &[0, y32, 1]],
                    ));
                }
            }
            for k in 0..q as u8 {
                for s in tuples(q, 2) {
                    let (x32, x33) = (s[0], s[1]);
                    for t in tuples(q, 3) {
                        out.push(pair(
                            &[&[t[0]], &[t[1], k], &[t[2], x32, x33]],
                            &[&[1], &[0, 1], &[0, 0, 1]],
                        ));
                    }
                    for t in tuples(q, 2) {
                        out.push(pair(
                            &[&[1], &[0, k], &[0, x32, x33]],
                            &[&[0], &[t[0], 1], &[t[1], 0, 1]],
                        ));
                    }
                }
                for x32 in 0..q as u8 {
                    for t in tuples(q, 3) {
                        out.push(pair(
                            &[&[t[0]], &[t[1], k], &[t[2], x32, 1]],
                            &[&[1], &[0, 1], &[0, 0, 0]],
                        ));
                    }
                    for t in tuples(q, 2) {
                        out.push(pair(
                            &[&[1], &[0, k], &[0, x32, 1]],
                            &[&[0], &[t[0], 1], &[t[1], 0, 0]],
                        ));
                    }
                }
            }
        }
        _ => return Err(unsupported(ctx)),
    }
    Ok(out)
}

/// Generators of the shielded submodules (type (b) of order q for n = 2).
pub fn theorem_shielded_generators(ctx: &RingContext) -> Result<Vec<ModPair>> {
    let q = ctx.q();
    let mut out = Vec::new();
    match ctx.dim() {
        2 => {
            for t in tuples(q, 2) {
                let (p, r) = (t[0], t[1]);
                out.push(pair(&[&[0], &[p, 1]], &[&[0], &[r, 0]]));
                for k in 0..q as u8 {
                    out.push(pair(&[&[0], &[p, k]], &[&[0], &[r, 1]]));
                }
            }
        }
        3 => {
            for t in tuples(q, 4) {
                let (p21, p31, r21, r31) = (t[0], t[1], t[2], t[3]);
                for s in tuples(q, 2) {
                    out.push(pair(
                        &[&[0], &[p21, 1], &[p31, 0, 1]],
                        &[&[0], &[r21, 0], &[r31, s[0], s[1]]],
                    ));
                }
                for a in 0..q as u8 {
                    out.push(pair(
                        &[&[0], &[p21, 1], &[p31, 0, 0]],
                        &[&[0], &[r21, 0], &[r31, a, 1]],
                    ));
                }
                for k in 0..q as u8 {
                    for s in tuples(q, 2) {
                        out.push(pair(
                            &[&[0], &[p21, k], &[p31, s[0], s[1]]],
                            &[&[0], &[r21, 1], &[r31, 0, 1]],
                        ));
                    }
                    for a in 0..q as u8 {
                        out.push(pair(
                            &[&[0], &[p21, k], &[p31, a, 1]],
                            &[&[0], &[r21, 1], &[r31, 0, 0]],
                        ));
                    }
                }
            }
        }
        _ => return Err(unsupported(ctx)),
    }
    Ok(out)
}

/// The order-q cyclic submodules of ²T(q), split into type (a) (both
/// generator entries radical) and type (b) grouped by set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderQTypes {
    pub type_a: Vec<SubmoduleId>,
    pub type_b: BTreeMap<SetLabel, Vec<SubmoduleId>>,
}

pub fn order_q_types_n2(census: &LineCensus) -> Result<OrderQTypes> {
    if census.n() != 2 {
        return Err(Error::DimensionUnsupported(census.n(), "2"));
    }
    let q = census.q() as usize;
    let mut type_a = Vec::new();
    let mut type_b: BTreeMap<SetLabel, Vec<SubmoduleId>> = BTreeMap::new();
    for &id in census.nonfree() {
        if census.get(id).order() != q {
            continue;
        }
        let g = census.get(id).canonical_generator();
        if g.in_radical() {
            type_a.push(id);
        } else {
            let set = SetLabel::of(census.normal_form(id))
                .ok_or_else(|| Error::Format(format!("order-q submodule {id} has no set")))?;
            type_b.entry(set).or_default().push(id);
        }
    }
    Ok(OrderQTypes { type_a, type_b })
}

/// Type (a) generators: (E21, 0) and (k E21, E21).
pub fn type_a_generators_n2(q: u32) -> Vec<ModPair> {
    let mut out = vec![pair(&[&[0], &[1, 0]], &[&[0], &[0, 0]])];
    for k in 0..q as u8 {
        out.push(pair(&[&[0], &[k, 0]], &[&[0], &[1, 0]]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldTable;

    #[test]
    fn family_sizes() {
        for q in [2u32, 3] {
            let ctx = RingContext::new(3, FieldTable::new(q).unwrap()).unwrap();
            let qq = q as usize;
            assert_eq!(
                theorem_nonuni_generators(&ctx).unwrap().len(),
                (qq + 1) * (2 * qq.pow(3) + 3 * qq * qq + 2 * qq + 1)
            );
            assert_eq!(
                theorem_point_generators(&ctx).unwrap().len(),
                (qq + 1).pow(3) * qq.pow(3)
            );
            assert_eq!(
                theorem_shielded_generators(&ctx).unwrap().len(),
                (qq + 1).pow(2) * qq.pow(5)
            );
        }
        let ctx4 = RingContext::new(4, FieldTable::new(2).unwrap()).unwrap();
        assert!(theorem_nonuni_generators(&ctx4).is_err());
    }

    #[test]
    fn order_q_types_over_gf2() {
        let ctx = RingContext::new(2, FieldTable::new(2).unwrap()).unwrap();
        let census = LineCensus::enumerate(ctx, 1).unwrap();
        let t = order_q_types_n2(&census).unwrap();
        assert_eq!(t.type_a.len(), 3);
        assert_eq!(t.type_b.len(), 3);
        assert!(t.type_b.values().all(|v| v.len() == 4));
        let mut listed: Vec<SubmoduleId> = type_a_generators_n2(2)
            .iter()
            .map(|g| census.lookup_generated(g).unwrap())
            .collect();
        listed.sort();
        let mut found = t.type_a.clone();
        found.sort();
        assert_eq!(listed, found);
    }
}
