//! Finite fields GF(q) backed by full lookup tables.
//!
//! Elements are plain `u8` indices. For q = p^k an element with coefficient
//! vector (c_0, ..., c_{k-1}) over GF(p) has index c_0 + c_1 p + ... so index
//! 0 is zero and index 1 is one. Extension fields are built as
//! GF(p)[x]/(f) with f the lexicographically smallest monic irreducible
//! polynomial of degree k, comparing coefficients from the constant term up.

use crate::error::{Error, Result};

/// Default ceiling on the field order.
pub const DEFAULT_MAX_Q: u32 = 16;

/// Absolute limit imposed by the `u8` element representation.
pub const HARD_MAX_Q: u32 = 256;

/// Complete arithmetic tables for GF(q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTable {
    q: u32,
    p: u32,
    k: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    // inv[0] is unused
    inv: Vec<u8>,
    poly: Vec<u8>,
}

impl FieldTable {
    /// Builds GF(q) with the default ceiling of 16.
    pub fn new(q: u32) -> Result<Self> {
        Self::with_ceiling(q, DEFAULT_MAX_Q)
    }

    /// Builds GF(q), rejecting orders above `ceiling`.
    pub fn with_ceiling(q: u32, ceiling: u32) -> Result<Self> {
        let ceiling = ceiling.min(HARD_MAX_Q);
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > ceiling {
            return Err(Error::OrderTooLarge { q, ceiling });
        }
        let poly = if k == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, k)
        };
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let ca = digits(a, p, k);
            for b in 0..q {
                let cb = digits(b, p, k);
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = undigits(&sum, p) as u8;
                let prod = poly_mulmod(&ca, &cb, &poly, p);
                mul[a as usize * qs + b as usize] = undigits(&prod, p) as u8;
            }
        }
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u8;
            }
        }
        Ok(Self {
            q,
            p,
            k,
            add,
            mul,
            neg,
            inv,
            poly: poly.iter().map(|&c| c as u8).collect(),
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Coefficients (constant term first) of the defining polynomial.
    /// For prime fields this is `x`.
    pub fn modulus(&self) -> &[u8] {
        &self.poly
    }

    /// All element indices in ascending order; zero first, one second.
    pub fn elements(&self) -> impl Iterator<Item = u8> + Clone {
        (0..self.q).map(|e| e as u8)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = u8> + Clone {
        (1..self.q).map(|e| e as u8)
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }

    /// `a / b`, or `None` when `b` is zero.
    pub fn div(&self, a: u8, b: u8) -> Option<u8> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: u8, mut e: u32) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Returns (p, k) with q = p^k, or `None` when q is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn digits(mut v: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Product of `a` and `b` reduced modulo the monic polynomial `f`.
fn poly_mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let k = f.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        // subtract c * x^(d-k) * f
        for (i, &fc) in f.iter().enumerate() {
            let idx = d - k + i;
            prod[idx] = (prod[idx] + (p - (c * fc) % p)) % p;
        }
    }
    prod.truncate(k);
    prod.resize(k, 0);
    prod
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = (1..p).find(|x| x * m[dm] % p == 1).unwrap();
    while r.len() > dm {
        let c = r[r.len() - 1] * lead_inv % p;
        let shift = r.len() - 1 - dm;
        for (i, &mc) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (c * mc) % p) % p;
        }
        r.pop();
    }
    r
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    // trial division by every monic polynomial of degree 1..=k/2
    for d in 1..=k / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut g = digits(low, p, d as u32);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = p.pow(k);
    // lexicographic order with the constant term most significant
    let mut candidates: Vec<Vec<u32>> = (0..count).map(|v| digits(v, p, k)).collect();
    candidates.sort();
    for mut f in candidates {
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}
