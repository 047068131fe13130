//! Every cross-check the library offers, run for one (n, q).

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modspace::{submodule_contains, ModPair, SubmoduleId};
use crate::planes::{
    all_affine_planes, build_2affine_plane, check_affine_axioms, check_corollaries,
    check_projective_axioms, closure_line_cases, isomorphism_to_classical, projective_closure,
    subsets, ClosureLineCase, CorollaryReport, Reading,
};
use crate::projline::{
    fast_free_nonuni_n2, fast_path_report, formulas, n3_fast_path_report, order_q_types_n2,
    rank_free, theorem_nonuni_generators, theorem_point_generators, theorem_shielded_generators,
    FastPathReport, LineCensus, N3Reading,
};

use super::document::count_table;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Suite {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: usize,
    pub q: u32,
    pub suites: Vec<Suite>,
    /// Findings that do not fail the run.
    pub warnings: Vec<String>,
    pub corollaries: CorollaryReport,
    pub closure_line_cases: Vec<ClosureLineCase>,
    pub fast_path: Vec<FastPathReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("verify n = {}, q = {}\n", self.n, self.q);
        for s in &self.suites {
            let tag = if s.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{tag}  {}: {}", s.name, s.detail);
        }
        for w in &self.warnings {
            let _ = writeln!(out, "WARN  {w}");
        }
        let verdict = if self.passed() {
            "all suites pass"
        } else {
            "MISMATCH"
        };
        let _ = writeln!(out, "{verdict}");
        out
    }
}

struct Suites(Vec<Suite>);

impl Suites {
    fn add(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.0.push(Suite {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }
}

fn family(census: &LineCensus, gens: &[ModPair], want: &[SubmoduleId]) -> Result<(bool, String)> {
    let got: BTreeSet<SubmoduleId> = gens
        .iter()
        .map(|g| census.lookup_generated(g))
        .collect::<Result<_>>()?;
    let want: BTreeSet<SubmoduleId> = want.iter().copied().collect();
    Ok((
        got == want,
        format!("{} from the family, {} enumerated", got.len(), want.len()),
    ))
}

fn fast_path_line(r: &FastPathReport) -> String {
    format!(
        "{} agrees on {}/{} non-unimodular pairs",
        r.criterion, r.agreements, r.pairs_checked
    )
}

/// Runs every suite for `census`. Only n = 2 and n = 3 are supported.
pub fn verify(census: &LineCensus) -> Result<VerifyReport> {
    let (n, q) = (census.n(), census.q());
    if n != 2 && n != 3 {
        return Err(Error::DimensionUnsupported(n, "2 or 3"));
    }
    let ctx = census.ctx();
    let mut suites = Suites(Vec::new());
    let mut warnings = Vec::new();

    let planes = all_affine_planes(census)?;
    let subs = if n == 3 { subsets(census)? } else { Vec::new() };
    let counts = count_table(
        census,
        Some(planes.len() as u64),
        (n == 3).then_some(subs.len() as u64),
    );
    let bad: Vec<&String> = counts
        .iter()
        .filter(|(_, r)| r.matches == Some(false))
        .map(|(k, _)| k)
        .collect();
    suites.add(
        "counts",
        bad.is_empty(),
        if bad.is_empty() {
            format!(
                "{} closed forms reproduced",
                counts.values().filter(|r| r.matches.is_some()).count()
            )
        } else {
            format!("mismatch in {bad:?}")
        },
    );

    for (name, gens, want) in [
        (
            "nonuni_fcs family",
            theorem_nonuni_generators(ctx)?,
            census.nonuni_fcs(),
        ),
        (
            "point family",
            theorem_point_generators(ctx)?,
            census.points(),
        ),
        (
            "shielded family",
            theorem_shielded_generators(ctx)?,
            census.shielded(),
        ),
    ] {
        let (ok, detail) = family(census, &gens, want)?;
        suites.add(name, ok, detail);
    }

    let q_u = q;
    let affine_bad = planes
        .iter()
        .filter(|p| {
            let r = check_affine_axioms(&p.structure);
            !(r.affine_ok() && r.order == Some(q_u))
        })
        .count();
    suites.add(
        "affine axioms",
        affine_bad == 0,
        format!(
            "{}/{} planes satisfy A1-A3 with order {q}",
            planes.len() - affine_bad,
            planes.len()
        ),
    );

    let mut closures = Vec::with_capacity(planes.len());
    for p in &planes {
        closures.push(projective_closure(&p.structure, census)?);
    }
    let proj_bad = closures
        .iter()
        .filter(|c| {
            let r = check_projective_axioms(&c.structure);
            !(r.projective_ok() && r.order == Some(q_u) && c.checks.all_hold())
        })
        .count();
    let size = q * q + q + 1;
    suites.add(
        "projective closures",
        proj_bad == 0,
        format!(
            "{}/{} closures are projective planes with {size} points and lines",
            closures.len() - proj_bad,
            closures.len()
        ),
    );

    let inf_sets: BTreeSet<&Vec<u32>> = closures.iter().map(|c| &c.points_at_infinity).collect();
    suites.add(
        "shared points at infinity",
        inf_sets.len() == 1,
        format!("{} distinct sets of points at infinity", inf_sets.len()),
    );
    if n == 2 {
        let types = order_q_types_n2(census)?;
        let type_a: BTreeSet<u32> = types.type_a.iter().map(|s| s.0).collect();
        let union: BTreeSet<u32> = closures
            .iter()
            .flat_map(|c| {
                c.structure
                    .line(c.line_at_infinity)
                    .map(|l| l.point_ids.clone())
                    .unwrap_or_default()
            })
            .collect();
        let at_inf_is_type_a = inf_sets
            .iter()
            .all(|s| s.iter().copied().collect::<BTreeSet<_>>() == type_a);
        let contains = |a: SubmoduleId, b: SubmoduleId| {
            submodule_contains(census.get(a), census.get(b)).unwrap_or(false)
        };
        let nonuni_ok = census.nonuni_fcs().iter().all(|&l| {
            types.type_a.iter().all(|&a| contains(l, a))
                && !census.shielded().iter().any(|&s| contains(l, s))
        });
        suites.add(
            "unique closure",
            at_inf_is_type_a && union == type_a && nonuni_ok,
            format!(
                "points at infinity are the {} type (a) submodules: {at_inf_is_type_a}; closure lines cover exactly them: {}; every nonuni_fcs holds all of them and no shielded submodule: {nonuni_ok}",
                type_a.len(),
                union == type_a
            ),
        );
    }

    let cases = closure_line_cases(census)?;
    let bad_cases: Vec<(u8, u8)> = cases
        .iter()
        .filter(|c| !c.valid())
        .map(|c| (c.x22, c.y22))
        .collect();
    suites.add(
        "closure line formula",
        bad_cases.is_empty(),
        if bad_cases.is_empty() {
            format!("all {} choices of (x22, y22) give a non-unimodular free line through every point at infinity", cases.len())
        } else {
            format!("fails for (x22, y22) in {bad_cases:?}")
        },
    );

    if n == 3 {
        let mut every_ok = 0;
        let mut some_ok = 0;
        let mut identical = 0;
        for &s in &subs {
            let every = build_2affine_plane(census, s, Reading::Every)?;
            let some = build_2affine_plane(census, s, Reading::Some)?;
            let good = |t: &crate::planes::TwoAffinePlane| {
                let r = check_affine_axioms(&t.structure);
                r.affine_ok() && r.order == Some(q_u)
            };
            every_ok += usize::from(good(&every));
            some_ok += usize::from(good(&some));
            identical += usize::from(every.structure == some.structure);
        }
        let expected = formulas::two_affine_planes(n, q as u64).unwrap_or(0) as usize;
        suites.add(
            "2-affine planes",
            every_ok == subs.len() && subs.len() == expected,
            format!(
                "{every_ok}/{} satisfy A1-A3 with order {q} (formula {expected})",
                subs.len()
            ),
        );
        warnings.push(format!(
            "2-affine existential reading: {some_ok}/{} satisfy A1-A3; {identical} identical to the universal reading",
            subs.len()
        ));
    }

    let corollaries = check_corollaries(census, &planes)?;
    for c in &corollaries.checks {
        suites.add(
            &format!("corollary: {}", c.name),
            c.holds(),
            format!("{} cases, {} mismatches", c.cases, c.mismatches),
        );
    }

    if q <= 4 {
        let affine_found = planes
            .iter()
            .map(|p| isomorphism_to_classical(&p.structure, q))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .filter(|o| o.is_found())
            .count();
        let closure_found = closures
            .iter()
            .map(|c| isomorphism_to_classical(&c.structure, q))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .filter(|o| o.is_found())
            .count();
        suites.add(
            "explicit isomorphisms",
            affine_found == planes.len() && closure_found == closures.len(),
            format!(
                "AG(2,{q}): {affine_found}/{}, PG(2,{q}): {closure_found}/{}",
                planes.len(),
                closures.len()
            ),
        );
    } else {
        warnings.push(format!("isomorphism search skipped for q = {q} > 4"));
    }

    let mut fast_path = vec![fast_path_report(ctx, "row rank", rank_free)];
    if n == 2 {
        fast_path.push(fast_path_report(
            ctx,
            "four-condition criterion",
            fast_free_nonuni_n2,
        ));
    }
    for r in &fast_path {
        suites.add("fast path", r.all_agree(), fast_path_line(r));
    }
    if n == 3 {
        for reading in [N3Reading::Literal, N3Reading::Amended] {
            let r = n3_fast_path_report(ctx, reading);
            warnings.push(format!(
                "{}; disagreements by clause {:?}",
                fast_path_line(&r),
                r.by_clause
            ));
            fast_path.push(r);
        }
    }

    Ok(VerifyReport {
        n,
        q,
        suites: suites.0,
        warnings,
        corollaries,
        closure_line_cases: cases,
        fast_path,
    })
}
