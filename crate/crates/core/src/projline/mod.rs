//! The projective line P(T_n(q)) and the submodules around it.
//!
//! [`LineCensus::enumerate`] walks the whole pair space once, in ascending
//! code order, visiting one representative per unit orbit. Orbits are
//! classified as points (unimodular), non-unimodular free cyclic submodules,
//! or non-free submodules; the shielded ones are the non-free submodules that
//! no non-unimodular free cyclic submodule contains.

mod families;
mod fastpath;
mod normal;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::modspace::{
    left_mul, submodule_from_parts, ModPair, Submodule, SubmoduleId, SubmoduleRegistry,
};
use crate::trimat::RingContext;

pub use families::{
    order_q_types_n2, theorem_nonuni_generators, theorem_point_generators,
    theorem_shielded_generators, type_a_generators_n2, OrderQTypes,
};
pub use fastpath::{
    fast_free_nonuni_n2, fast_free_nonuni_n3, fast_path_report, n3_clauses, n3_fast_path_report,
    rank_free, FastPathDiff, FastPathReport, N3Reading,
};
pub use normal::{class_signature, normal_form, PointLabel, SetLabel, SubsetLabel};

/// Closed-form counts for n = 2 and n = 3.
pub mod formulas {
    pub fn points(n: usize, q: u64) -> Option<u64> {
        match n {
            2 => Some(q * (q + 1).pow(2)),
            3 => Some((q + 1).pow(3) * q.pow(3)),
            _ => None,
        }
    }

    pub fn nonuni_fcs(n: usize, q: u64) -> Option<u64> {
        match n {
            2 => Some(q + 1),
            3 => Some((q + 1).pow(2) * (2 * q * q + q + 1)),
            _ => None,
        }
    }

    pub fn shielded(n: usize, q: u64) -> Option<u64> {
        match n {
            2 => Some(q * q * (q + 1)),
            3 => Some((q + 1).pow(2) * q.pow(5)),
            _ => None,
        }
    }

    /// Pairs generating non-unimodular free cyclic submodules.
    pub fn outlier_generators(n: usize, q: u64) -> Option<u64> {
        match n {
            2 => Some((q - 1).pow(2) * (q + 1) * q),
            3 => Some((q - 1).pow(3) * q.pow(3) * (q + 1).pow(2) * (2 * q * q + q + 1)),
            _ => None,
        }
    }

    /// (q+1)^{n-1} q^{3(n-1)(n-2)/2}.
    pub fn affine_planes(n: usize, q: u64) -> Option<u64> {
        matches!(n, 2 | 3)
            .then(|| (q + 1).pow(n as u32 - 1) * q.pow((3 * (n - 1) * (n - 2) / 2) as u32))
    }

    pub fn two_affine_planes(n: usize, q: u64) -> Option<u64> {
        (n == 3).then(|| q * (q + 1).pow(2))
    }
}

/// Everything the enumeration learns about ²T_n(q).
#[derive(Debug)]
pub struct LineCensus {
    ctx: RingContext,
    registry: SubmoduleRegistry,
    points: Vec<SubmoduleId>,
    nonuni_fcs: Vec<SubmoduleId>,
    nonfree: Vec<SubmoduleId>,
    shielded: Vec<SubmoduleId>,
    normal_forms: BTreeMap<SubmoduleId, ModPair>,
    outlier_generators: u64,
    unimodular_pairs: u64,
    point_index: OnceLock<Vec<(u32, SubmoduleId)>>,
}

struct Orbit {
    rep: u32,
    size: u32,
}

fn run<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 1 {
        return Ok(job());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    Ok(pool.install(job))
}

fn map_ordered<I: Sync, O: Send>(
    workers: usize,
    items: &[I],
    f: impl Fn(&I) -> O + Sync + Send,
) -> Vec<O> {
    if workers == 1 {
        items.iter().map(f).collect()
    } else {
        items.par_iter().map(f).collect()
    }
}

impl LineCensus {
    /// Enumerates every cyclic submodule of ²T_n(q). `workers` = 0 uses all
    /// available cores, 1 runs the sequential reference path.
    pub fn enumerate(ctx: RingContext, workers: usize) -> Result<Self> {
        let workers = if workers == 0 {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        } else {
            workers
        };
        let q = ctx.q();
        let n = ctx.dim();
        let total = (ctx.size() as u64).pow(2);

        // Orbit representatives in ascending code order; the first code met
        // in each orbit is its minimum.
        let mut visited = vec![0u64; (total as usize).div_ceil(64)];
        let mut orbits = Vec::new();
        for code in 0..total {
            let c = code as usize;
            if visited[c / 64] >> (c % 64) & 1 == 1 {
                continue;
            }
            let g = ModPair::decode(code as u32, n, q);
            let mut size = 0;
            for &u in ctx.units() {
                let h = left_mul(&ctx, ctx.element(u), &g).code(q) as usize;
                if visited[h / 64] >> (h % 64) & 1 == 0 {
                    visited[h / 64] |= 1 << (h % 64);
                    size += 1;
                }
            }
            orbits.push(Orbit {
                rep: code as u32,
                size,
            });
        }
        drop(visited);

        let all: Vec<u32> = (0..ctx.size()).collect();
        let subs: Vec<Submodule> = run(workers, || {
            map_ordered(workers, &orbits, |o| {
                let g = ModPair::decode(o.rep, n, q);
                let mut els: Vec<u32> = all
                    .iter()
                    .map(|&a| left_mul(&ctx, ctx.element(a), &g).code(q))
                    .collect();
                els.sort_unstable();
                els.dedup();
                submodule_from_parts(&ctx, els, g)
            })
        })?;

        let mut unimodular_pairs = 0u64;
        let mut outlier_generators = 0u64;
        let (mut pts, mut nonuni, mut nonfree) = (Vec::new(), Vec::new(), Vec::new());
        for (o, s) in orbits.iter().zip(subs) {
            if s.is_unimodular_generated() {
                unimodular_pairs += o.size as u64;
                pts.push(s);
            } else if s.is_free() {
                outlier_generators += o.size as u64;
                nonuni.push(s);
            } else {
                nonfree.push(s);
            }
        }

        let mut registry = SubmoduleRegistry::new();
        let sorted_ids = |ids: Vec<SubmoduleId>| {
            let mut ids = ids;
            ids.sort_unstable();
            ids.dedup();
            ids
        };
        let points = sorted_ids(registry.insert_batch(pts));
        let nonuni_fcs = sorted_ids(registry.insert_batch(nonuni));
        let nonfree = sorted_ids(registry.insert_batch(nonfree));

        let shielded: Vec<SubmoduleId> = run(workers, || {
            map_ordered(workers, &nonfree, |&id| {
                let g = registry.get(id).canonical_generator().code(q);
                let covered = nonuni_fcs.iter().any(|&f| registry.get(f).contains_pair(g));
                (!covered).then_some(id)
            })
        })?
        .into_iter()
        .flatten()
        .collect();

        let normal_forms = points
            .iter()
            .chain(&nonuni_fcs)
            .chain(&nonfree)
            .map(|&id| {
                (
                    id,
                    normal_form(ctx.field(), registry.get(id).canonical_generator()),
                )
            })
            .collect();

        Ok(Self {
            ctx,
            registry,
            points,
            nonuni_fcs,
            nonfree,
            shielded,
            normal_forms,
            outlier_generators,
            unimodular_pairs,
            point_index: OnceLock::new(),
        })
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.dim()
    }

    pub fn q(&self) -> u32 {
        self.ctx.q()
    }

    pub fn registry(&self) -> &SubmoduleRegistry {
        &self.registry
    }

    pub fn get(&self, id: SubmoduleId) -> &Submodule {
        self.registry.get(id)
    }

    /// Points of the projective line, by ID.
    pub fn points(&self) -> &[SubmoduleId] {
        &self.points
    }

    pub fn nonuni_fcs(&self) -> &[SubmoduleId] {
        &self.nonuni_fcs
    }

    /// Every non-free cyclic submodule, including the zero submodule.
    pub fn nonfree(&self) -> &[SubmoduleId] {
        &self.nonfree
    }

    pub fn shielded(&self) -> &[SubmoduleId] {
        &self.shielded
    }

    pub fn outlier_generator_count(&self) -> u64 {
        self.outlier_generators
    }

    pub fn unimodular_pair_count(&self) -> u64 {
        self.unimodular_pairs
    }

    /// Normal form of the canonical generator.
    pub fn normal_form(&self, id: SubmoduleId) -> &ModPair {
        &self.normal_forms[&id]
    }

    fn require_labelled(&self) -> Result<()> {
        match self.n() {
            2 | 3 => Ok(()),
            n => Err(Error::DimensionUnsupported(n, "2 or 3")),
        }
    }

    /// Set (and for n = 3 subset) of a point or shielded submodule.
    pub fn label(&self, id: SubmoduleId) -> Result<Option<PointLabel>> {
        self.require_labelled()?;
        Ok(PointLabel::of(self.normal_form(id)))
    }

    /// Points grouped by set and subset.
    pub fn point_partition(&self) -> Result<BTreeMap<PointLabel, Vec<SubmoduleId>>> {
        self.require_labelled()?;
        let mut out: BTreeMap<PointLabel, Vec<SubmoduleId>> = BTreeMap::new();
        for &id in &self.points {
            let label = PointLabel::of(self.normal_form(id))
                .ok_or_else(|| Error::Format(format!("point {id} has no set label")))?;
            out.entry(label).or_default().push(id);
        }
        Ok(out)
    }

    /// Shielded submodules grouped by set and subset.
    pub fn shielded_partition(&self) -> Result<BTreeMap<PointLabel, Vec<SubmoduleId>>> {
        self.require_labelled()?;
        let mut out: BTreeMap<PointLabel, Vec<SubmoduleId>> = BTreeMap::new();
        for &id in &self.shielded {
            let label = PointLabel::of(self.normal_form(id)).ok_or_else(|| {
                Error::Format(format!("shielded submodule {id} has no set label"))
            })?;
            out.entry(label).or_default().push(id);
        }
        Ok(out)
    }

    fn point_index(&self) -> &[(u32, SubmoduleId)] {
        self.point_index.get_or_init(|| {
            let mut idx: Vec<(u32, SubmoduleId)> = self
                .points
                .iter()
                .flat_map(|&id| self.get(id).elements().iter().map(move |&c| (c, id)))
                .collect();
            idx.sort_unstable();
            idx
        })
    }

    /// Points of the projective line containing the pair with this code.
    pub fn points_containing_pair(&self, code: u32) -> Vec<SubmoduleId> {
        let idx = self.point_index();
        let start = idx.partition_point(|&(c, _)| c < code);
        idx[start..]
            .iter()
            .take_while(|&&(c, _)| c == code)
            .map(|&(_, id)| id)
            .collect()
    }

    /// Points of the projective line containing a registered submodule.
    pub fn points_containing(&self, id: SubmoduleId) -> Vec<SubmoduleId> {
        self.points_containing_pair(self.get(id).canonical_generator().code(self.q()))
    }

    /// ID of T_n(q)g, if `g` has the census dimension.
    pub fn lookup_generated(&self, g: &ModPair) -> Result<SubmoduleId> {
        let elements = crate::modspace::generated_elements(&self.ctx, g)?;
        self.registry
            .lookup(&elements)
            .ok_or_else(|| Error::Format(format!("{g} generates an unregistered submodule")))
    }
}
