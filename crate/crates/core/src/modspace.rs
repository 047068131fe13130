//! Pairs and cyclic submodules of the free left module ²T_n(q).
//!
//! A [`Submodule`] is stored as the sorted list of its element codes, so
//! equality is list equality and containment is a merge scan. The
//! [`SubmoduleRegistry`] hands out dense IDs that higher layers use instead
//! of element lists.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trimat::{triangle_size, RingContext, TriMatrix};

/// An element (X, Y) of ²T_n(q).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModPair {
    pub x: TriMatrix,
    pub y: TriMatrix,
}

impl ModPair {
    pub fn new(x: TriMatrix, y: TriMatrix) -> Self {
        assert_eq!(x.dim(), y.dim(), "pair components must share a dimension");
        Self { x, y }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(TriMatrix::zero(n), TriMatrix::zero(n))
    }

    pub fn dim(&self) -> usize {
        self.x.dim()
    }

    /// code(x) * q^{S_n} + code(y).
    pub fn code(&self, q: u32) -> u32 {
        let base = q.pow(triangle_size(self.dim()) as u32);
        self.x.code(q) * base + self.y.code(q)
    }

    pub fn decode(code: u32, n: usize, q: u32) -> Self {
        let base = q.pow(triangle_size(n) as u32);
        Self::new(
            TriMatrix::decode(code / base, n, q),
            TriMatrix::decode(code % base, n, q),
        )
    }

    /// x_ii != 0 or y_ii != 0 for every i.
    pub fn is_unimodular(&self) -> bool {
        (0..self.dim()).all(|i| self.x.get(i, i) != 0 || self.y.get(i, i) != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Both components lie in the Jacobson radical.
    pub fn in_radical(&self) -> bool {
        self.x.is_radical() && self.y.is_radical()
    }
}

impl fmt::Debug for ModPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ModPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Left action A(X, Y) = (AX, AY).
#[inline]
pub fn left_mul(ctx: &RingContext, a: &TriMatrix, g: &ModPair) -> ModPair {
    let f = ctx.field();
    ModPair {
        x: a.mul_unchecked(&g.x, f),
        y: a.mul_unchecked(&g.y, f),
    }
}

/// The set T_n(q)(X, Y) together with its classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    n: usize,
    q: u32,
    elements: Vec<u32>,
    canonical_generator: ModPair,
    is_free: bool,
    is_unimodular_generated: bool,
}

impl Submodule {
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// The generating pair with the smallest code.
    pub fn canonical_generator(&self) -> &ModPair {
        &self.canonical_generator
    }

    pub fn is_free(&self) -> bool {
        self.is_free
    }

    /// Free and generated by a unimodular pair: a point of the projective line.
    pub fn is_unimodular_generated(&self) -> bool {
        self.is_unimodular_generated
    }

    pub fn is_nonunimodular_free(&self) -> bool {
        self.is_free && !self.is_unimodular_generated
    }

    pub fn contains_pair(&self, code: u32) -> bool {
        self.elements.binary_search(&code).is_ok()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }
}

fn orbit_elements(ctx: &RingContext, g: &ModPair, over: &[u32]) -> Vec<u32> {
    let q = ctx.q();
    let mut out: Vec<u32> = over
        .iter()
        .map(|&a| left_mul(ctx, ctx.element(a), g).code(q))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn check_pair(ctx: &RingContext, g: &ModPair) -> Result<()> {
    if g.dim() != ctx.dim() {
        return Err(Error::ContextMismatch);
    }
    Ok(())
}

/// Builds a submodule from its already computed element list and a known
/// minimal generator. Used by the census, which finds minimal generators
/// by scanning pair codes in ascending order.
pub(crate) fn submodule_from_parts(
    ctx: &RingContext,
    elements: Vec<u32>,
    canonical_generator: ModPair,
) -> Submodule {
    let is_free = elements.len() == ctx.size() as usize;
    Submodule {
        n: ctx.dim(),
        q: ctx.q(),
        is_unimodular_generated: is_free && canonical_generator.is_unimodular(),
        is_free,
        elements,
        canonical_generator,
    }
}

/// Sorted codes of all left multiples of `g`, without classification.
pub fn generated_elements(ctx: &RingContext, g: &ModPair) -> Result<Vec<u32>> {
    check_pair(ctx, g)?;
    let all: Vec<u32> = (0..ctx.size()).collect();
    Ok(orbit_elements(ctx, g, &all))
}

/// All left multiples of `g`, deduplicated and sorted, with flags.
pub fn cyclic_submodule(ctx: &RingContext, g: &ModPair) -> Result<Submodule> {
    check_pair(ctx, g)?;
    let all: Vec<u32> = (0..ctx.size()).collect();
    let elements = orbit_elements(ctx, g, &all);
    let q = ctx.q();
    let canonical = if elements.len() == ctx.size() as usize {
        // generators of a free submodule form one unit orbit
        ctx.units()
            .iter()
            .map(|&u| left_mul(ctx, ctx.element(u), g))
            .min_by_key(|p| p.code(q))
            .unwrap()
    } else {
        // smallest element whose own submodule is everything
        let n = ctx.dim();
        elements
            .iter()
            .map(|&c| ModPair::decode(c, n, q))
            .find(|e| orbit_elements(ctx, e, &all).len() == elements.len())
            .expect("the generator itself generates")
    };
    Ok(submodule_from_parts(ctx, elements, canonical))
}

/// Whether the annihilator of `g` is trivial.
pub fn is_free(ctx: &RingContext, g: &ModPair) -> bool {
    // A(X, Y) = 0 row by row, so some nonzero A annihilates iff a matrix
    // with a single nonzero row does.
    let f = ctx.field();
    let (n, q) = (ctx.dim(), ctx.q());
    (0..n).all(|i| {
        (1..q.pow(i as u32 + 1)).all(|mut code| {
            let mut a = TriMatrix::zero(n);
            for j in 0..=i {
                a.set(i, j, (code % q) as u8);
                code /= q;
            }
            !(a.mul_unchecked(&g.x, f).is_zero() && a.mul_unchecked(&g.y, f).is_zero())
        })
    })
}

pub fn is_unimodular(g: &ModPair) -> bool {
    g.is_unimodular()
}

/// Whether every element of `b` lies in `a`.
pub fn submodule_contains(a: &Submodule, b: &Submodule) -> Result<bool> {
    if a.n != b.n || a.q != b.q {
        return Err(Error::ContextMismatch);
    }
    Ok(sorted_subset(&b.elements, &a.elements))
}

/// Merge scan: is every entry of `small` present in `big`? Both sorted.
pub fn sorted_subset(small: &[u32], big: &[u32]) -> bool {
    if small.len() > big.len() {
        return false;
    }
    let mut it = big.iter();
    'outer: for s in small {
        for b in it.by_ref() {
            match b.cmp(s) {
                Ordering::Less => continue,
                Ordering::Equal => continue 'outer,
                Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

/// The unit orbit {U g}. For free submodules this is exactly the set of
/// generators; `free` records whether that guarantee applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorOrbit {
    pub members: Vec<ModPair>,
    pub free: bool,
}

impl GeneratorOrbit {
    pub fn require_free(self) -> Result<Vec<ModPair>> {
        if self.free {
            Ok(self.members)
        } else {
            Err(Error::NotFree)
        }
    }
}

pub fn generator_orbit(ctx: &RingContext, g: &ModPair) -> Result<GeneratorOrbit> {
    check_pair(ctx, g)?;
    let q = ctx.q();
    let n = ctx.dim();
    let members = orbit_elements(ctx, g, ctx.units())
        .into_iter()
        .map(|c| ModPair::decode(c, n, q))
        .collect();
    Ok(GeneratorOrbit {
        members,
        free: is_free(ctx, g),
    })
}

/// A pair contained in no point of the projective line.
pub fn is_outlier(ctx: &RingContext, line: &[&Submodule], g: &ModPair) -> bool {
    let code = g.code(ctx.q());
    !line.iter().any(|p| p.contains_pair(code))
}

/// Dense identifier of a registered submodule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubmoduleId(pub u32);

impl fmt::Display for SubmoduleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Global submodule table keyed by element list.
///
/// Each batch insertion assigns IDs to its previously unseen submodules in
/// ascending order of their element lists, so IDs never depend on the order
/// in which a parallel enumeration produced them.
#[derive(Debug, Clone, Default)]
pub struct SubmoduleRegistry {
    subs: Vec<Submodule>,
    sorted: Vec<u32>,
}

impl SubmoduleRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn get(&self, id: SubmoduleId) -> &Submodule {
        &self.subs[id.0 as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (SubmoduleId, &Submodule)> {
        self.subs
            .iter()
            .enumerate()
            .map(|(i, s)| (SubmoduleId(i as u32), s))
    }

    pub fn lookup(&self, elements: &[u32]) -> Option<SubmoduleId> {
        self.sorted
            .binary_search_by(|&id| self.subs[id as usize].elements.as_slice().cmp(elements))
            .ok()
            .map(|i| SubmoduleId(self.sorted[i]))
    }

    /// Inserts a batch and returns the ID of each input, in input order.
    /// When two inputs coincide, the one with the smaller canonical
    /// generator code wins.
    pub fn insert_batch(&mut self, batch: Vec<Submodule>) -> Vec<SubmoduleId> {
        let mut order: Vec<usize> = (0..batch.len()).collect();
        order.sort_by(|&a, &b| {
            batch[a].elements.cmp(&batch[b].elements).then_with(|| {
                let q = batch[a].q;
                batch[a]
                    .canonical_generator
                    .code(q)
                    .cmp(&batch[b].canonical_generator.code(q))
            })
        });
        let mut ids = vec![SubmoduleId(0); batch.len()];
        let mut fresh: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let lead = order[i];
            let mut same = vec![lead];
            let mut j = i + 1;
            while j < order.len() && batch[order[j]].elements == batch[lead].elements {
                same.push(order[j]);
                j += 1;
            }
            match self.lookup(&batch[lead].elements) {
                Some(id) => same.iter().for_each(|&k| ids[k] = id),
                None => fresh.push((lead, same)),
            }
            i = j;
        }
        let mut slots: Vec<Option<Submodule>> = batch.into_iter().map(Some).collect();
        for (lead, same) in fresh {
            let id = SubmoduleId(self.subs.len() as u32);
            self.subs.push(slots[lead].take().unwrap());
            same.iter().for_each(|&k| ids[k] = id);
        }
        self.sorted = (0..self.subs.len() as u32).collect();
        let subs = &self.subs;
        self.sorted
            .sort_by(|&a, &b| subs[a as usize].elements.cmp(&subs[b as usize].elements));
        ids
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldTable;

    fn ctx(n: usize, q: u32) -> RingContext {
        RingContext::new(n, FieldTable::new(q).unwrap()).unwrap()
    }

    fn m2(a: u8, b: u8, c: u8) -> TriMatrix {
        TriMatrix::from_rows(&[&[a], &[b, c]])
    }

    #[test]
    fn zero_pair_generates_the_trivial_submodule() {
        let c = ctx(2, 2);
        let s = cyclic_submodule(&c, &ModPair::zero(2)).unwrap();
        assert_eq!(s.order(), 1);
        assert!(!s.is_free());
        assert!(!is_free(&c, &ModPair::zero(2)));
    }

    #[test]
    fn identity_pair_is_free() {
        let c = ctx(2, 2);
        let g = ModPair::new(TriMatrix::identity(2), TriMatrix::zero(2));
        let s = cyclic_submodule(&c, &g).unwrap();
        assert_eq!(s.order(), 8);
        assert!(s.is_free() && s.is_unimodular_generated());
        assert!(is_free(&c, &g));
    }

    #[test]
    fn radical_generator_has_order_q() {
        let c = ctx(2, 2);
        let g = ModPair::new(m2(0, 1, 0), TriMatrix::zero(2));
        let s = cyclic_submodule(&c, &g).unwrap();
        assert_eq!(s.order(), 2);
        assert!(!s.is_free());
        assert_eq!(*s.canonical_generator(), g);
    }

    #[test]
    fn outlier_generator_is_free_but_not_unimodular() {
        for q in [2, 3, 4] {
            let c = ctx(2, q);
            let g = ModPair::new(m2(1, 0, 0), m2(0, 1, 0));
            assert!(is_free(&c, &g));
            assert!(!is_unimodular(&g));
            let s = cyclic_submodule(&c, &g).unwrap();
            assert!(s.is_nonunimodular_free());
        }
    }

    #[test]
    fn annihilator_test_matches_submodule_order() {
        for (n, q) in [(2, 2), (2, 3), (3, 2)] {
            let c = ctx(n, q);
            for code in 0..c.size().pow(2) {
                let g = ModPair::decode(code, n, q);
                let order = generated_elements(&c, &g).unwrap().len();
                assert_eq!(is_free(&c, &g), order == c.size() as usize, "{g}");
            }
        }
    }

    #[test]
    fn unimodularity_examples() {
        let c = ctx(2, 3);
        for y in c.elements() {
            assert!(ModPair::new(TriMatrix::identity(2), *y).is_unimodular());
        }
        for &a in c.radical() {
            for &b in c.radical() {
                assert!(!ModPair::new(*c.element(a), *c.element(b)).is_unimodular());
            }
        }
    }

    #[test]
    fn containment_examples() {
        let c = ctx(2, 2);
        let zero = cyclic_submodule(&c, &ModPair::zero(2)).unwrap();
        let type_a = cyclic_submodule(&c, &ModPair::new(m2(0, 1, 0), TriMatrix::zero(2))).unwrap();
        let outl = cyclic_submodule(&c, &ModPair::new(m2(1, 0, 0), m2(0, 1, 0))).unwrap();
        assert!(submodule_contains(&outl, &type_a).unwrap());
        assert!(submodule_contains(&type_a, &zero).unwrap());
        assert!(submodule_contains(&outl, &outl).unwrap());
        assert!(!submodule_contains(&type_a, &outl).unwrap());
        let other = ctx(2, 3);
        let z3 = cyclic_submodule(&other, &ModPair::zero(2)).unwrap();
        assert_eq!(submodule_contains(&z3, &zero), Err(Error::ContextMismatch));
        assert_eq!(
            cyclic_submodule(&c, &ModPair::zero(3)),
            Err(Error::ContextMismatch)
        );
    }

    #[test]
    fn orbits() {
        let c = ctx(2, 2);
        let g = ModPair::new(TriMatrix::identity(2), TriMatrix::zero(2));
        let orbit = generator_orbit(&c, &g).unwrap();
        assert!(orbit.free);
        assert_eq!(orbit.members.len(), 2);
        assert!(orbit.members.contains(&g));

        let c3 = ctx(2, 3);
        let g = ModPair::new(m2(1, 2, 0), m2(0, 1, 0));
        let orbit = generator_orbit(&c3, &g).unwrap().require_free().unwrap();
        assert_eq!(orbit.len(), 12);
        let s = cyclic_submodule(&c3, &g).unwrap();
        for h in &orbit {
            assert_eq!(cyclic_submodule(&c3, h).unwrap(), s);
        }

        let nf = generator_orbit(&c3, &ModPair::zero(2)).unwrap();
        assert!(!nf.free);
        assert_eq!(nf.require_free(), Err(Error::NotFree));
    }

    #[test]
    fn outlier_examples() {
        let c = ctx(2, 2);
        let mut points = Vec::new();
        for code in 0..c.size().pow(2) {
            let g = ModPair::decode(code, 2, 2);
            if g.is_unimodular() {
                points.push(cyclic_submodule(&c, &g).unwrap());
            }
        }
        let refs: Vec<&Submodule> = points.iter().collect();
        let g = ModPair::new(m2(1, 0, 0), m2(0, 1, 0));
        assert!(is_outlier(&c, &refs, &g));
        assert!(!is_outlier(&c, &refs, &ModPair::zero(2)));
        assert!(!is_outlier(
            &c,
            &refs,
            &ModPair::new(TriMatrix::identity(2), m2(1, 1, 0))
        ));
    }

    #[test]
    fn sorted_subset_scan() {
        assert!(sorted_subset(&[], &[1, 2]));
        assert!(sorted_subset(&[1, 5], &[0, 1, 3, 5]));
        assert!(!sorted_subset(&[1, 4], &[0, 1, 3, 5]));
        assert!(!sorted_subset(&[6], &[0, 1, 3, 5]));
        assert!(!sorted_subset(&[0, 1], &[0]));
    }

    #[test]
    fn registry_ids_do_not_depend_on_batch_order() {
        let c = ctx(2, 2);
        let subs: Vec<Submodule> = (0..64)
            .map(|code| cyclic_submodule(&c, &ModPair::decode(code, 2, 2)).unwrap())
            .collect();
        let mut a = SubmoduleRegistry::new();
        let ids_a = a.insert_batch(subs.clone());
        let mut rev = subs.clone();
        rev.reverse();
        let mut b = SubmoduleRegistry::new();
        let mut ids_b = b.insert_batch(rev);
        ids_b.reverse();
        assert_eq!(ids_a, ids_b);
        assert_eq!(a.len(), b.len());
        for (id, s) in a.iter() {
            assert_eq!(b.get(id), s);
            assert_eq!(a.lookup(s.elements()), Some(id));
        }
        // re-inserting changes nothing
        let again = a.insert_batch(subs);
        assert_eq!(again, ids_a);
    }

    #[test]
    fn pair_code_round_trip() {
        let c = ctx(2, 3);
        for code in 0..c.size().pow(2) {
            assert_eq!(ModPair::decode(code, 2, 3).code(3), code);
        }
    }
}
