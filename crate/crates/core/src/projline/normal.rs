//! Row-reduced normal form of generators and the labels read off it.
//!
//! Row i of A(X, Y) is a combination of rows 1..=i of (X, Y), so every unit
//! orbit has a unique representative whose rows are reduced against the
//! pivots of the rows above. The pivot of a row sits on the diagonal when
//! (x_ii, y_ii) is nonzero; the X side is preferred in the first set
//! (y_22 = 0) and the Y side otherwise, which gives the
//! classical normal forms of points and of shielded submodules.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FieldTable;
use crate::modspace::ModPair;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    X,
    Y,
}

struct Pivot {
    row: usize,
    side: Side,
    col: usize,
}

/// Canonical representative of the unit orbit of `g`.
#[allow(clippy::needless_range_loop)]
pub fn normal_form(f: &FieldTable, g: &ModPair) -> ModPair {
    let n = g.dim();
    let pref = if g.y.get(1, 1) != 0 { Side::Y } else { Side::X };
    let other = if pref == Side::X { Side::Y } else { Side::X };
    let mut out = ModPair::zero(n);
    let mut pivots: Vec<Pivot> = Vec::with_capacity(n);

    for i in 0..n {
        let mut row = [[0u8; 4]; 2];
        for j in 0..=i {
            row[0][j] = g.x.get(i, j);
            row[1][j] = g.y.get(i, j);
        }
        let at = |row: &[[u8; 4]; 2], s: Side, j: usize| row[s as usize][j];

        for p in &pivots {
            let c = at(&row, p.side, p.col);
            if c == 0 {
                continue;
            }
            for j in 0..=p.row {
                row[0][j] = f.sub(row[0][j], f.mul(c, out.x.get(p.row, j)));
                row[1][j] = f.sub(row[1][j], f.mul(c, out.y.get(p.row, j)));
            }
        }

        let pivot = if at(&row, pref, i) != 0 {
            Some((pref, i))
        } else if at(&row, other, i) != 0 {
            Some((other, i))
        } else {
            (0..i)
                .rev()
                .flat_map(|j| [(pref, j), (other, j)])
                .find(|&(s, j)| at(&row, s, j) != 0)
        };
        if let Some((side, col)) = pivot {
            let inv = f.inv(at(&row, side, col)).expect("pivot entry is nonzero");
            for v in row.iter_mut().flat_map(|r| r[..=i].iter_mut()) {
                *v = f.mul(inv, *v);
            }
            pivots.push(Pivot { row: i, side, col });
        }
        for j in 0..=i {
            out.x.set(i, j, row[0][j]);
            out.y.set(i, j, row[1][j]);
        }
    }
    out
}

/// Which of the q + 1 sets a point or shielded submodule belongs to,
/// read from the projective point (x_22 : y_22).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SetLabel {
    First,
    K(u8),
}

impl SetLabel {
    /// Label of a normal-form generator; `None` when x_22 = y_22 = 0.
    pub fn of(nf: &ModPair) -> Option<Self> {
        match (nf.x.get(1, 1), nf.y.get(1, 1)) {
            (0, 0) => None,
            (_, 0) => Some(SetLabel::First),
            (k, _) => Some(SetLabel::K(k)),
        }
    }

    /// (x_22, y_22) of the normal form of any member.
    pub fn diagonal(&self) -> (u8, u8) {
        match *self {
            SetLabel::First => (1, 0),
            SetLabel::K(k) => (k, 1),
        }
    }

    pub fn all(f: &FieldTable) -> Vec<SetLabel> {
        std::iter::once(SetLabel::First)
            .chain(f.elements().map(SetLabel::K))
            .collect()
    }
}

impl fmt::Display for SetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetLabel::First => write!(f, "first"),
            SetLabel::K(k) => write!(f, "k:{k}"),
        }
    }
}

impl FromStr for SetLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "first" || s == "inf" || s == "∞" {
            return Ok(SetLabel::First);
        }
        s.strip_prefix("k:")
            .and_then(|k| k.parse::<u8>().ok())
            .map(SetLabel::K)
            .ok_or_else(|| Error::SelectorInvalid(format!("unknown set label {s:?}")))
    }
}

impl Serialize for SetLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SetLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The n = 3 subset invariant (x_32, x_33, y_32, y_33) of the normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetLabel {
    pub x32: u8,
    pub x33: u8,
    pub y32: u8,
    pub y33: u8,
}

impl SubsetLabel {
    pub fn of(nf: &ModPair) -> Option<Self> {
        (nf.dim() == 3).then(|| SubsetLabel {
            x32: nf.x.get(2, 1),
            x33: nf.x.get(2, 2),
            y32: nf.y.get(2, 1),
            y33: nf.y.get(2, 2),
        })
    }

    /// The q^2 + q subsets belonging to a set.
    pub fn all_in(set: SetLabel, f: &FieldTable) -> Vec<SubsetLabel> {
        let mut out = Vec::new();
        for a in f.elements() {
            for b in f.elements() {
                out.push(match set {
                    SetLabel::First => SubsetLabel {
                        x32: 0,
                        x33: 1,
                        y32: a,
                        y33: b,
                    },
                    SetLabel::K(_) => SubsetLabel {
                        x32: a,
                        x33: b,
                        y32: 0,
                        y33: 1,
                    },
                });
            }
        }
        for a in f.elements() {
            out.push(match set {
                SetLabel::First => SubsetLabel {
                    x32: 0,
                    x33: 0,
                    y32: a,
                    y33: 1,
                },
                SetLabel::K(_) => SubsetLabel {
                    x32: a,
                    x33: 1,
                    y32: 0,
                    y33: 0,
                },
            });
        }
        out.sort();
        out
    }
}

impl fmt::Display for SubsetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.x32, self.x33, self.y32, self.y33)
    }
}

impl FromStr for SubsetLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<u8> = inner
            .split(',')
            .map(|p| p.trim().parse::<u8>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::SubsetInvalid(s.to_string()))?;
        match parts[..] {
            [x32, x33, y32, y33] => Ok(SubsetLabel { x32, x33, y32, y33 }),
            _ => Err(Error::SubsetInvalid(s.to_string())),
        }
    }
}

impl Serialize for SubsetLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SubsetLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Position of a point of the projective line in the set/subset partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointLabel {
    pub set: SetLabel,
    pub subset: Option<SubsetLabel>,
}

impl PointLabel {
    pub fn of(nf: &ModPair) -> Option<Self> {
        Some(PointLabel {
            set: SetLabel::of(nf)?,
            subset: SubsetLabel::of(nf),
        })
    }
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.subset {
            Some(s) => write!(f, "{} {}", self.set, s),
            None => write!(f, "{}", self.set),
        }
    }
}

/// Parallel-class signature of a point of the projective line: its normal
/// form with the (n, 1) slots of both matrices cleared.
pub fn class_signature(nf: &ModPair) -> ModPair {
    let n = nf.dim();
    let mut s = *nf;
    s.x.set(n - 1, 0, 0);
    s.y.set(n - 1, 0, 0);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modspace::{generator_orbit, left_mul};
    use crate::trimat::{RingContext, TriMatrix};

    fn m3(rows: [&[u8]; 3]) -> TriMatrix {
        TriMatrix::from_rows(&rows)
    }

    #[test]
    fn normal_form_is_constant_on_unit_orbits() {
        for q in [2, 3] {
            let ctx = RingContext::new(2, FieldTable::new(q).unwrap()).unwrap();
            for code in 0..ctx.size().pow(2) {
                let g = ModPair::decode(code, 2, q);
                let nf = normal_form(ctx.field(), &g);
                for &u in ctx.units() {
                    let h = left_mul(&ctx, ctx.element(u), &g);
                    assert_eq!(normal_form(ctx.field(), &h), nf, "{g} vs {h}");
                }
            }
        }
    }

    #[test]
    fn normal_form_lies_in_the_orbit() {
        let ctx = RingContext::new(3, FieldTable::new(2).unwrap()).unwrap();
        for code in (0..ctx.size().pow(2)).step_by(7) {
            let g = ModPair::decode(code, 3, 2);
            let nf = normal_form(ctx.field(), &g);
            let orbit = generator_orbit(&ctx, &g).unwrap();
            assert!(orbit.members.contains(&nf));
        }
    }

    #[test]
    fn first_set_points_take_the_classical_shape() {
        let f = FieldTable::new(3).unwrap();
        // (I, Y) with y_22 = 0 stays as is
        let g = ModPair::new(TriMatrix::identity(3), m3([&[2], &[1, 0], &[2, 1, 2]]));
        assert_eq!(normal_form(&f, &g), g);
        // scaling row 2 and adding row 1 to row 3 is undone
        let h = ModPair::new(
            m3([&[1], &[0, 2], &[1, 0, 1]]),
            m3([&[2], &[2, 0], &[1, 1, 2]]),
        );
        let nf = normal_form(&f, &h);
        assert_eq!(nf.x, TriMatrix::identity(3));
        assert_eq!(SetLabel::of(&nf), Some(SetLabel::First));
    }

    #[test]
    fn k_set_prefers_the_y_side() {
        let f = FieldTable::new(3).unwrap();
        let g = ModPair::new(
            m3([&[1], &[0, 2], &[0, 0, 0]]),
            m3([&[1], &[0, 2], &[0, 1, 0]]),
        );
        let nf = normal_form(&f, &g);
        assert_eq!(nf.y.get(0, 0), 1);
        assert_eq!(nf.y.get(1, 1), 1);
        assert_eq!(SetLabel::of(&nf), Some(SetLabel::K(1)));
    }

    #[test]
    fn labels_round_trip_through_strings() {
        for s in ["first", "k:0", "k:3"] {
            assert_eq!(s.parse::<SetLabel>().unwrap().to_string(), s);
        }
        assert!("k:x".parse::<SetLabel>().is_err());
        let sub: SubsetLabel = "(0,1,2,0)".parse().unwrap();
        assert_eq!(
            sub,
            SubsetLabel {
                x32: 0,
                x33: 1,
                y32: 2,
                y33: 0
            }
        );
        assert_eq!(sub.to_string(), "(0,1,2,0)");
        assert_eq!("0,1,2,0".parse::<SubsetLabel>().unwrap(), sub);
        assert!("1,2".parse::<SubsetLabel>().is_err());
    }

    #[test]
    fn subset_lists_have_q_squared_plus_q_entries() {
        for q in [2, 3, 4] {
            let f = FieldTable::new(q).unwrap();
            for set in SetLabel::all(&f) {
                assert_eq!(SubsetLabel::all_in(set, &f).len(), (q * q + q) as usize);
            }
        }
    }
}
