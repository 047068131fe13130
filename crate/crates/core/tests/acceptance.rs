//! Acceptance criteria 1-9. Each test prints exactly one line,
//! `criterion N: PASS|FAIL <detail>`, and then asserts.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::Write;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use trimat_geom::cli::document::Document;
use trimat_geom::cli::run;
use trimat_geom::modspace::{cyclic_submodule, is_free, left_mul};
use trimat_geom::planes::{
    all_affine_planes, build_2affine_plane, check_affine_axioms, check_projective_axioms,
    figure1_pair, isomorphism_to_classical, projective_closure, subsets, AffinePlane, Closure,
    Reading,
};
use trimat_geom::projline::{
    fast_free_nonuni_n2, fast_path_report, formulas, n3_fast_path_report, rank_free,
    theorem_nonuni_generators, FastPathReport, N3Reading,
};
use trimat_geom::{FieldTable, LineCensus, ModPair, RingContext, SubmoduleId};

struct Built {
    census: LineCensus,
    elapsed: Duration,
    planes: Vec<AffinePlane>,
    closures: Vec<Closure>,
}

type Cache = Mutex<HashMap<(usize, u32), Arc<OnceLock<Arc<Built>>>>>;

/// One census per (n, q), shared by every criterion.
fn built(n: usize, q: u32) -> Arc<Built> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let slot = {
        let mut map = CACHE.get_or_init(Default::default).lock().unwrap();
        map.entry((n, q)).or_default().clone()
    };
    slot.get_or_init(|| {
        let ctx = RingContext::new(n, FieldTable::new(q).unwrap()).unwrap();
        let start = Instant::now();
        let census = LineCensus::enumerate(ctx, 0).unwrap();
        let elapsed = start.elapsed();
        let planes = all_affine_planes(&census).unwrap();
        let closures = planes
            .iter()
            .map(|p| projective_closure(&p.structure, &census).unwrap())
            .collect();
        Arc::new(Built {
            census,
            elapsed,
            planes,
            closures,
        })
    })
    .clone()
}

const ALL: [(usize, u32); 6] = [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3)];

fn report(criterion: u32, failures: &[String], detail: String) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    // straight to the process stdout so the line survives test capture
    let _ = writeln!(
        std::io::stdout().lock(),
        "criterion {criterion}: {verdict} {detail}"
    );
    assert!(failures.is_empty(), "criterion {criterion}: {failures:#?}");
}

fn expect(failures: &mut Vec<String>, what: String, got: u64, want: u64) {
    if got != want {
        failures.push(format!("{what}: got {got}, want {want}"));
    }
}

/// Known counts for n = 2, q = 2 and 3, with the closed forms for the
/// remaining fields.
#[test]
fn criterion_1_counts_n2() {
    let mut failures = Vec::new();
    let mut timings = Vec::new();
    for q in 2..=5u32 {
        let b = built(2, q);
        let c = &b.census;
        let qq = q as u64;
        let want = match q {
            2 => [18, 3, 12, 3],
            3 => [48, 4, 36, 4],
            _ => [qq * (qq + 1) * (qq + 1), qq + 1, qq * qq * (qq + 1), qq + 1],
        };
        let got = [
            c.points().len(),
            c.nonuni_fcs().len(),
            c.shielded().len(),
            b.planes.len(),
        ];
        for (name, (g, w)) in ["points", "nonuni_fcs", "shielded", "planes"]
            .iter()
            .zip(got.iter().zip(want))
        {
            expect(&mut failures, format!("q={q} {name}"), *g as u64, w);
        }
        if b.elapsed > Duration::from_secs(5) {
            failures.push(format!("q={q} took {:?}", b.elapsed));
        }
        timings.push(format!("q={q} {:.2}s", b.elapsed.as_secs_f64()));
    }
    report(
        1,
        &failures,
        format!("n=2 q=2..5 exact ({})", timings.join(", ")),
    );
}

#[test]
fn criterion_2_counts_n3() {
    let mut failures = Vec::new();
    let mut timings = Vec::new();
    for (q, want, limit) in [
        (2, [216, 99, 288, 72, 18], 30),
        (3, [1728, 352, 3888, 432, 48], 600),
    ] {
        let b = built(3, q);
        let c = &b.census;
        let two_affine = subsets(c).unwrap();
        let built_ok = two_affine
            .iter()
            .filter(|&&s| {
                let t = build_2affine_plane(c, s, Reading::Every).unwrap();
                t.structure.points.len() == (q * q) as usize
            })
            .count();
        let got = [
            c.points().len(),
            c.nonuni_fcs().len(),
            c.shielded().len(),
            b.planes.len(),
            built_ok,
        ];
        for (name, (g, w)) in [
            "points",
            "nonuni_fcs",
            "shielded",
            "planes",
            "2-affine planes",
        ]
        .iter()
        .zip(got.iter().zip(want))
        {
            expect(&mut failures, format!("q={q} {name}"), *g as u64, w);
        }
        if b.elapsed > Duration::from_secs(limit) {
            failures.push(format!("q={q} took {:?}", b.elapsed));
        }
        timings.push(format!("q={q} {:.2}s", b.elapsed.as_secs_f64()));
    }
    report(
        2,
        &failures,
        format!("n=3 q=2,3 exact ({})", timings.join(", ")),
    );
}

#[test]
fn criterion_3_affine_plane_formula() {
    let mut failures = Vec::new();
    for (n, q) in ALL {
        let (m, qq) = (n as u32 - 1, q as u64);
        let closed = (qq + 1).pow(m) * qq.pow(3 * m * (m - 1) / 2);
        expect(
            &mut failures,
            format!("n={n} q={q}"),
            built(n, q).planes.len() as u64,
            closed,
        );
        if formulas::affine_planes(n, qq) != Some(closed) {
            failures.push(format!("n={n} q={q}: library formula disagrees"));
        }
    }
    report(3, &failures, format!("{} cases", ALL.len()));
}

#[test]
fn criterion_4_theorem_families() {
    let mut failures = Vec::new();
    let cases = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)];
    for (n, q) in cases {
        let b = built(n, q);
        let c = &b.census;
        let gens = theorem_nonuni_generators(c.ctx()).unwrap();
        let from_family: BTreeSet<SubmoduleId> = gens
            .iter()
            .map(|g| c.lookup_generated(g).unwrap())
            .collect();
        let brute: BTreeSet<SubmoduleId> = c.nonuni_fcs().iter().copied().collect();
        if from_family != brute {
            failures.push(format!(
                "n={n} q={q}: family {} vs brute force {}, {} shared",
                from_family.len(),
                brute.len(),
                from_family.intersection(&brute).count()
            ));
        }
    }
    report(
        4,
        &failures,
        format!("set equality in {} cases", cases.len()),
    );
}

#[test]
fn criterion_5_axiom_suites() {
    let mut failures = Vec::new();
    let mut checked = [0usize; 3];
    for (n, q) in ALL {
        let b = built(n, q);
        for p in &b.planes {
            let r = check_affine_axioms(&p.structure);
            if !(r.affine_ok() && r.order == Some(q)) {
                failures.push(format!("n={n} q={q} affine {}", p.key));
            }
        }
        let size = (q * q + q + 1) as usize;
        for c in &b.closures {
            let r = check_projective_axioms(&c.structure);
            let s = &c.structure;
            if !(r.projective_ok() && s.points.len() == size && s.lines.len() == size) {
                failures.push(format!("n={n} q={q} closure {}", c.line_at_infinity));
            }
        }
        checked[0] += b.planes.len();
        checked[1] += b.closures.len();
        if n == 3 {
            for s in subsets(&b.census).unwrap() {
                let t = build_2affine_plane(&b.census, s, Reading::Every).unwrap();
                let r = check_affine_axioms(&t.structure);
                if !(r.affine_ok() && r.order == Some(q)) {
                    failures.push(format!("n=3 q={q} 2-affine {s}"));
                }
                checked[2] += 1;
            }
        }
    }
    report(
        5,
        &failures,
        format!(
            "{} affine planes, {} closures, {} 2-affine planes",
            checked[0], checked[1], checked[2]
        ),
    );
}

#[test]
fn criterion_6_closure_uniqueness() {
    let mut failures = Vec::new();
    for q in 2..=5u32 {
        let b = built(2, q);
        let c = &b.census;
        // order-q cyclic submodules lying entirely in the radical
        let type_a: BTreeSet<u32> = c
            .nonfree()
            .iter()
            .filter(|&&id| {
                let s = c.get(id);
                s.order() == q as usize
                    && s.elements()
                        .iter()
                        .all(|&e| ModPair::decode(e, 2, q).in_radical())
            })
            .map(|id| id.0)
            .collect();
        let at_inf: BTreeSet<Vec<u32>> = b
            .closures
            .iter()
            .map(|cl| cl.points_at_infinity.clone())
            .collect();
        if at_inf.len() != 1 {
            failures.push(format!("q={q}: {} distinct sets at infinity", at_inf.len()));
        }
        for set in &at_inf {
            if set.len() != q as usize + 1 || set.iter().copied().collect::<BTreeSet<_>>() != type_a
            {
                failures.push(format!(
                    "q={q}: points at infinity {set:?} vs type (a) {type_a:?}"
                ));
            }
        }
        let mut union = BTreeSet::new();
        for cl in &b.closures {
            if !c.nonuni_fcs().contains(&SubmoduleId(cl.line_at_infinity)) {
                failures.push(format!(
                    "q={q}: closure line {} is not in nonuni_fcs",
                    cl.line_at_infinity
                ));
            }
            union.extend(
                cl.structure
                    .line(cl.line_at_infinity)
                    .unwrap()
                    .point_ids
                    .iter()
                    .copied(),
            );
        }
        if union != type_a {
            failures.push(format!("q={q}: closure lines cover {union:?}"));
        }
        if b.closures.len() != q as usize + 1 {
            failures.push(format!("q={q}: {} closures", b.closures.len()));
        }
    }
    report(6, &failures, "n=2 q=2..5".into());
}

#[test]
fn criterion_7_figure1() {
    let b = built(2, 2);
    let c = &b.census;
    let id = |l: (u8, u8)| c.lookup_generated(&figure1_pair(l).unwrap()).unwrap().0;
    let product = |a: [u8; 2], b: [u8; 2]| -> BTreeSet<u32> {
        a.iter()
            .flat_map(|&x| b.iter().map(move |&y| (x, y)))
            .map(id)
            .collect()
    };
    let expected: BTreeSet<BTreeSet<u32>> = [
        product([3, 5], [0, 6]),
        product([3, 5], [3, 5]),
        product([6, 0], [3, 5]),
    ]
    .into_iter()
    .collect();
    let planes: BTreeSet<BTreeSet<u32>> = b
        .planes
        .iter()
        .map(|p| p.structure.points.iter().copied().collect())
        .collect();
    let closure_line: BTreeSet<u32> = [(6, 0), (6, 6), (0, 6)].into_iter().map(id).collect();
    let mut failures = Vec::new();
    if planes != expected {
        failures.push(format!(
            "plane point sets {planes:?} vs expected {expected:?}"
        ));
    }
    for cl in &b.closures {
        let line: BTreeSet<u32> = cl
            .structure
            .line(cl.line_at_infinity)
            .unwrap()
            .point_ids
            .iter()
            .copied()
            .collect();
        if line != closure_line {
            failures.push(format!(
                "closure line {line:?} vs expected {closure_line:?}"
            ));
        }
    }
    report(
        7,
        &failures,
        "three planes and the closure line match the reference labels".into(),
    );
}

fn cli(args: &[String]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("trimat-geom".to_string()).chain(args.iter().cloned()),
        &mut out,
        &mut err,
    );
    (code, out)
}

#[test]
fn criterion_8_properties() {
    let mut failures = Vec::new();

    // orbit invariance, freeness by order, unimodular implies free
    let mut pairs = 0u64;
    for (n, q) in [(2, 2), (2, 3), (3, 2)] {
        let ctx = RingContext::new(n, FieldTable::new(q).unwrap()).unwrap();
        let full = ctx.size() as usize;
        let units = ctx.units();
        for code in 0..ctx.size().pow(2) {
            let g = ModPair::decode(code, n, q);
            let s = cyclic_submodule(&ctx, &g).unwrap();
            if is_free(&ctx, &g) != (s.order() == full) {
                failures.push(format!("n={n} q={q} {g}: freeness vs order"));
            }
            if g.is_unimodular() && s.order() != full {
                failures.push(format!("n={n} q={q} {g}: unimodular but not free"));
            }
            for &u in units {
                let h = left_mul(&ctx, ctx.element(u), &g);
                if cyclic_submodule(&ctx, &h).unwrap().elements() != s.elements() {
                    failures.push(format!("n={n} q={q} {g}: orbit under unit {u}"));
                }
            }
            pairs += 1;
        }
    }

    // worker determinism and JSON round trip
    let runs = [
        ("2", "3", "planes"),
        ("3", "2", "planes"),
        ("3", "2", "2affine"),
        ("3", "2", "shielded"),
    ];
    for (n, q, kind) in runs {
        let mut outputs = BTreeSet::new();
        for workers in ["1", "2", "4"] {
            let args: Vec<String> = [
                "export",
                "--n",
                n,
                "--q",
                q,
                "--kind",
                kind,
                "--workers",
                workers,
            ]
            .map(String::from)
            .to_vec();
            let (code, out) = cli(&args);
            if code != 0 {
                failures.push(format!("export n={n} q={q} {kind}: exit {code}"));
            }
            outputs.insert(out);
        }
        if outputs.len() != 1 {
            failures.push(format!(
                "export n={n} q={q} {kind}: output depends on workers"
            ));
        }
        let text = String::from_utf8(outputs.into_iter().next().unwrap()).unwrap();
        let doc = Document::from_json(&text).unwrap();
        if doc.to_json().unwrap() != text {
            failures.push(format!(
                "export n={n} q={q} {kind}: JSON does not round-trip"
            ));
        }
    }
    let dots: BTreeSet<Vec<u8>> = ["1", "3"]
        .iter()
        .map(|w| {
            cli(&[
                "planes",
                "--n",
                "2",
                "--q",
                "2",
                "--format",
                "dot",
                "--workers",
                w,
            ]
            .map(String::from))
            .1
        })
        .collect();
    if dots.len() != 1 {
        failures.push("DOT output depends on workers".into());
    }

    // explicit isomorphisms for q <= 3
    let mut isos = 0;
    for (n, q) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let b = built(n, q);
        let structures = b
            .planes
            .iter()
            .map(|p| &p.structure)
            .chain(b.closures.iter().map(|c| &c.structure));
        for s in structures {
            if !isomorphism_to_classical(s, q).unwrap().is_found() {
                failures.push(format!("n={n} q={q}: no isomorphism for a structure"));
            }
            isos += 1;
        }
    }
    report(
        8,
        &failures,
        format!(
            "{pairs} pairs, {} export runs, {isos} isomorphisms",
            runs.len() * 3
        ),
    );
}

fn consistent(r: &FastPathReport, failures: &mut Vec<String>) {
    let text = serde_json::to_string(r).unwrap();
    let back: FastPathReport = serde_json::from_str(&text).unwrap();
    if &back != r {
        failures.push(format!("{}: report does not round-trip", r.criterion));
    }
    if r.agreements + r.disagreements.len() as u64 != r.pairs_checked {
        failures.push(format!("{}: tallies do not add up", r.criterion));
    }
    let f = FieldTable::new(r.q).unwrap();
    for d in &r.disagreements {
        let g = ModPair::decode(d.code, r.n, r.q);
        if d.criterion == d.brute_force || rank_free(&f, &g) != d.brute_force {
            failures.push(format!("{}: bogus diff entry {}", r.criterion, d.pair));
        }
    }
    let tally: u64 = r.by_clause.values().sum();
    if r.disagreements.len() as u64 > tally {
        failures.push(format!("{}: clause histogram misses entries", r.criterion));
    }
}

#[test]
fn criterion_9_fast_path() {
    let mut failures = Vec::new();
    for q in 2..=4u32 {
        let ctx = RingContext::new(2, FieldTable::new(q).unwrap()).unwrap();
        let r = fast_path_report(&ctx, "n2", fast_free_nonuni_n2);
        if !r.all_agree() {
            failures.push(format!(
                "n=2 q={q}: {} disagreements",
                r.disagreements.len()
            ));
        }
        consistent(&r, &mut failures);
    }
    let mut n3 = BTreeMap::new();
    for q in [2, 3] {
        let ctx = RingContext::new(3, FieldTable::new(q).unwrap()).unwrap();
        let r = n3_fast_path_report(&ctx, N3Reading::Literal);
        consistent(&r, &mut failures);
        n3.insert(
            q,
            format!("{}/{} {:?}", r.agreements, r.pairs_checked, r.by_clause),
        );
    }
    report(
        9,
        &failures,
        format!("n=2 q=2..4 agree 100%; n=3 table {n3:?}"),
    );
}
