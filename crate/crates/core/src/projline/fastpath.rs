//! Closed-form freeness criteria for non-unimodular pairs, compared against
//! brute force.
//!
//! The n = 3 table is evaluated exactly as stated. An atom that needs the
//! inverse of zero is false. Its opening clause repeats "x22 = y22 = 0"
//! twice; [`N3Reading::Literal`] keeps it, [`N3Reading::Amended`] reads the
//! second copy as "x33 = y33 = 0".

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gf::FieldTable;
use crate::modspace::{is_free, ModPair};
use crate::trimat::RingContext;

/// Four-condition criterion for n = 2.
pub fn fast_free_nonuni_n2(f: &FieldTable, g: &ModPair) -> bool {
    let (x11, x21, x22) = (g.x.get(0, 0), g.x.get(1, 0), g.x.get(1, 1));
    let (y11, y21, y22) = (g.y.get(0, 0), g.y.get(1, 0), g.y.get(1, 1));
    if x22 != 0 || y22 != 0 {
        return false;
    }
    let c1 = x11 == 0 && y11 != 0 && x21 != 0;
    let c2 = x11 != 0 && y11 == 0 && y21 != 0;
    let c3 = x11 != 0 && y11 != 0 && x21 == 0 && y21 != 0;
    let c4 = x11 != 0 && y11 != 0 && x21 != 0 && {
        let rhs = f.mul(f.mul(f.inv(x11).unwrap(), x21), y11);
        y21 != rhs
    };
    c1 || c2 || c3 || c4
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum N3Reading {
    Literal,
    Amended,
}

/// Three-valued helper: `None` means an inverse of zero was needed.
struct Ev<'a> {
    f: &'a FieldTable,
}

impl Ev<'_> {
    fn inv(&self, a: u8) -> Option<u8> {
        self.f.inv(a)
    }
    fn mul(&self, a: u8, b: u8) -> u8 {
        self.f.mul(a, b)
    }
    fn add(&self, a: u8, b: u8) -> u8 {
        self.f.add(a, b)
    }
    fn sub(&self, a: u8, b: u8) -> u8 {
        self.f.sub(a, b)
    }
    /// a * inv(b) * c
    fn quot(&self, a: u8, b: u8, c: u8) -> Option<u8> {
        Some(self.mul(self.mul(a, self.inv(b)?), c))
    }
}

fn ne(lhs: u8, rhs: Option<u8>) -> bool {
    rhs.is_some_and(|r| lhs != r)
}

fn eq(lhs: u8, rhs: Option<u8>) -> bool {
    rhs.is_some_and(|r| lhs == r)
}

/// The n = 3 condition table.
pub fn fast_free_nonuni_n3(f: &FieldTable, g: &ModPair, reading: N3Reading) -> bool {
    !n3_clauses(f, g, reading).is_empty()
}

/// Names ("1a" .. "3d") of the n = 3 clauses that hold for `g`.
pub fn n3_clauses(f: &FieldTable, g: &ModPair, reading: N3Reading) -> Vec<&'static str> {
    let e = Ev { f };
    let x = |i: usize, j: usize| g.x.get(i - 1, j - 1);
    let y = |i: usize, j: usize| g.y.get(i - 1, j - 1);
    let (x11, x21, x22, x31, x32, x33) = (x(1, 1), x(2, 1), x(2, 2), x(3, 1), x(3, 2), x(3, 3));
    let (y11, y21, y22, y31, y32, y33) = (y(1, 1), y(2, 1), y(2, 2), y(3, 1), y(3, 2), y(3, 3));

    let lead = match reading {
        N3Reading::Literal => x22 == 0 && y22 == 0,
        N3Reading::Amended => (x22 == 0 && y22 == 0) || (x33 == 0 && y33 == 0),
    };
    if !lead {
        return Vec::new();
    }
    let row3_nonzero = x32 != 0 || x33 != 0 || y32 != 0 || y33 != 0;
    let diag = |a: bool, b: bool| (x22 != 0) == a && (y22 != 0) == b;

    // shared by 1(d) and 2(d)
    let d12 = diag(true, true)
        && (ne(x32, e.quot(x22, y22, y32))
            || (eq(x32, e.quot(x22, y22, y32)) && ne(x31, e.quot(x21, y22, y32))));

    // x11 y11^{-1} y_k1 and the bracket (x21 - x11 y11^{-1} y21)
    let s = |yk1: u8| e.quot(x11, y11, yk1);
    let bracket = s(y21).map(|v| e.sub(x21, v));
    let tail =
        |den: u8, num: u8| -> Option<u8> { Some(e.add(s(y31)?, e.quot(bracket?, den, num)?)) };

    let first = x11 == 0 && y11 != 0;
    let second = x11 != 0 && y11 == 0;
    let third = x11 != 0 && y11 != 0;
    let clauses = [
        (
            "1a",
            first && diag(false, false) && x21 != 0 && row3_nonzero,
        ),
        (
            "1b",
            first
                && diag(false, true)
                && (ne(x31, e.quot(x21, x22, x32)) || (eq(x31, e.quot(x21, y22, y32)) && x32 != 0)),
        ),
        (
            "1c",
            first
                && diag(true, false)
                && (ne(x31, e.quot(x21, x22, x32)) || (eq(x31, e.quot(x21, x22, x32)) && y32 != 0)),
        ),
        ("1d", first && d12),
        (
            "2a",
            second && diag(false, false) && y21 != 0 && row3_nonzero,
        ),
        (
            "2b",
            second
                && diag(false, true)
                && (ne(y31, e.quot(y21, y22, y32)) || (eq(y31, e.quot(y21, y22, y32)) && x32 != 0)),
        ),
        (
            "2c",
            second
                && diag(true, false)
                && (ne(y31, e.quot(y21, x22, x32)) || (eq(y31, e.quot(y21, x22, x32)) && y32 != 0)),
        ),
        ("2d", second && d12),
        ("3a", third && diag(false, false) && ne(x21, s(y21))),
        (
            "3b",
            third && diag(false, true) && (x32 != 0 || (x32 == 0 && ne(x31, tail(y22, y32)))),
        ),
        (
            "3c",
            third && diag(true, false) && (y32 != 0 || (y32 == 0 && ne(x31, tail(x22, x32)))),
        ),
        (
            "3d",
            third
                && diag(true, true)
                && (ne(x32, e.quot(x22, y22, y32))
                    || (eq(x32, e.quot(x22, y22, y32)) && ne(x31, tail(y22, y32)))),
        ),
    ];
    clauses
        .into_iter()
        .filter_map(|(name, holds)| holds.then_some(name))
        .collect()
}

/// Freeness by linear algebra: the rows (x_i | y_i) must be independent.
pub fn rank_free(f: &FieldTable, g: &ModPair) -> bool {
    let n = g.dim();
    let mut rows: Vec<Vec<u8>> = (0..n)
        .map(|i| {
            let mut r = vec![0u8; 2 * n];
            for j in 0..=i {
                r[j] = g.x.get(i, j);
                r[n + j] = g.y.get(i, j);
            }
            r
        })
        .collect();
    let mut rank = 0;
    for col in 0..2 * n {
        let Some(p) = (rank..n).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = f.inv(rows[rank][col]).unwrap();
        let pivot: Vec<u8> = rows[rank].iter().map(|&v| f.mul(v, inv)).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = row[col];
                for (v, &pv) in row.iter_mut().zip(&pivot) {
                    *v = f.sub(*v, f.mul(c, pv));
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank == n
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FastPathDiff {
    pub code: u32,
    pub pair: String,
    pub criterion: bool,
    pub brute_force: bool,
    /// Clauses of the criterion that fired; empty for false negatives.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub clauses: Vec<String>,
}

/// Agreement of one criterion with brute-force freeness over all
/// non-unimodular pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FastPathReport {
    pub n: usize,
    pub q: u32,
    pub criterion: String,
    pub pairs_checked: u64,
    pub agreements: u64,
    /// Disagreements per firing clause ("none" for missed free pairs).
    pub by_clause: BTreeMap<String, u64>,
    pub disagreements: Vec<FastPathDiff>,
}

impl FastPathReport {
    pub fn agreement_rate(&self) -> f64 {
        if self.pairs_checked == 0 {
            1.0
        } else {
            self.agreements as f64 / self.pairs_checked as f64
        }
    }

    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Runs `criterion` against [`is_free`] on every non-unimodular pair.
pub fn fast_path_report(
    ctx: &RingContext,
    name: &str,
    criterion: impl Fn(&FieldTable, &ModPair) -> bool + Sync,
) -> FastPathReport {
    explained_report(ctx, name, |f, g| {
        if criterion(f, g) {
            vec!["holds"]
        } else {
            Vec::new()
        }
    })
}

/// Report for the n = 3 table with clause attribution.
pub fn n3_fast_path_report(ctx: &RingContext, reading: N3Reading) -> FastPathReport {
    let name = match reading {
        N3Reading::Literal => "n = 3 table, literal reading",
        N3Reading::Amended => "n = 3 table, amended opening clause",
    };
    explained_report(ctx, name, |f, g| n3_clauses(f, g, reading))
}

fn explained_report(
    ctx: &RingContext,
    name: &str,
    clauses: impl Fn(&FieldTable, &ModPair) -> Vec<&'static str> + Sync,
) -> FastPathReport {
    let q = ctx.q();
    let n = ctx.dim();
    // (fired clauses, brute force) per non-unimodular pair, in code order
    let verdicts: Vec<(u32, Vec<&'static str>, bool)> = (0..ctx.size().pow(2))
        .into_par_iter()
        .filter_map(|code| {
            let g = ModPair::decode(code, n, q);
            (!g.is_unimodular()).then(|| (code, clauses(ctx.field(), &g), is_free(ctx, &g)))
        })
        .collect();
    let mut report = FastPathReport {
        n,
        q,
        criterion: name.to_string(),
        pairs_checked: verdicts.len() as u64,
        agreements: 0,
        by_clause: BTreeMap::new(),
        disagreements: Vec::new(),
    };
    for (code, fired, brute) in verdicts {
        let fast = !fired.is_empty();
        if fast == brute {
            report.agreements += 1;
            continue;
        }
        if fired.is_empty() {
            *report.by_clause.entry("none".into()).or_default() += 1;
        }
        for c in &fired {
            *report.by_clause.entry(c.to_string()).or_default() += 1;
        }
        report.disagreements.push(FastPathDiff {
            code,
            pair: ModPair::decode(code, n, q).to_string(),
            criterion: fast,
            brute_force: brute,
            clauses: fired.iter().map(|c| c.to_string()).collect(),
        });
    }
    report
}
