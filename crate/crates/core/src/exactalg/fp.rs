//! Linear algebra over the prime field F_p.
//!
//! Subspaces are kept in strict reduced row-echelon form so that equality,
//! hashing and ordering of subspaces are plain structural comparisons.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub(crate) fn as_u64(self) -> u64 {
        self.0 as u64
    }

    /// Reduces an arbitrary integer into `0..p`.
    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }
}

impl<'de> Deserialize<'de> for Prime {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = u64::deserialize(d)?;
        Prime::new(raw).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative inverse of `j` modulo `p`, in `1..p`.
pub fn mod_inverse(j: i64, p: Prime) -> Result<u32> {
    let j = p.reduce(j) as i64;
    if j == 0 {
        return Err(invalid(format!("0 has no inverse modulo {p}")));
    }
    // extended Euclid on (j, p)
    let (mut r0, mut r1) = (p.get() as i64, j);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    Ok(p.reduce(t0))
}

/// A vector in F_p^k.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpVector {
    p: Prime,
    entries: Vec<u32>,
}

impl FpVector {
    /// Builds a vector, reducing every entry mod p.
    pub fn new(p: Prime, entries: &[i64]) -> Self {
        FpVector {
            p,
            entries: entries.iter().map(|&x| p.reduce(x)).collect(),
        }
    }

    pub fn zero(p: Prime, k: usize) -> Self {
        FpVector {
            p,
            entries: vec![0; k],
        }
    }

    pub(crate) fn from_residues(p: Prime, entries: Vec<u32>) -> Self {
        debug_assert!(entries.iter().all(|&e| e < p.get()));
        FpVector { p, entries }
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.entries.iter().map(|&e| e as i64).collect()
    }

    /// The pairing sum_i a_i b_i mod p.
    pub fn dot(&self, other: &FpVector) -> u32 {
        let p = self.p.as_u64();
        let s = self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
        s as u32
    }

    pub fn scale(&self, c: u32) -> FpVector {
        let p = self.p.as_u64();
        FpVector {
            p: self.p,
            entries: self
                .entries
                .iter()
                .map(|&e| ((e as u64 * c as u64) % p) as u32)
                .collect(),
        }
    }

    /// The first nonzero entry, if any.
    pub fn leading(&self) -> Option<(usize, u32)> {
        self.entries
            .iter()
            .enumerate()
            .find(|(_, &e)| e != 0)
            .map(|(i, &e)| (i, e))
    }

    /// Scales the vector so its first nonzero entry is 1. Returns the
    /// normalized vector and the coefficient `c` with `self = c * normalized`.
    pub fn normalize_line(&self) -> Option<(FpVector, u32)> {
        let (_, lead) = self.leading()?;
        let inv = mod_inverse(lead as i64, self.p).ok()?;
        Some((self.scale(inv), lead))
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A subspace of F_p^k stored by its canonical RREF basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpSubspace {
    p: Prime,
    ambient_rank: usize,
    basis: Vec<FpVector>,
}

impl FpSubspace {
    pub fn zero(p: Prime, k: usize) -> Self {
        FpSubspace {
            p,
            ambient_rank: k,
            basis: Vec::new(),
        }
    }

    pub fn full(p: Prime, k: usize) -> Self {
        let basis = (0..k)
            .map(|i| {
                let mut e = vec![0; k];
                e[i] = 1;
                FpVector::from_residues(p, e)
            })
            .collect();
        FpSubspace {
            p,
            ambient_rank: k,
            basis,
        }
    }

    /// Span of the given rows.
    pub fn span(p: Prime, k: usize, rows: &[FpVector]) -> Result<Self> {
        rref(p, k, rows).map(|(s, _)| s)
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FpVector] {
        &self.basis
    }

    fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|b| b.leading().expect("basis rows are nonzero").0)
            .collect()
    }

    pub fn contains(&self, v: &FpVector) -> bool {
        if v.p != self.p || v.len() != self.ambient_rank {
            return false;
        }
        // reduce v against the pivots
        let p = self.p.as_u64();
        let mut r: Vec<u64> = v.entries.iter().map(|&e| e as u64).collect();
        for (row, piv) in self.basis.iter().zip(self.pivots()) {
            let c = r[piv];
            if c != 0 {
                for (x, &b) in r.iter_mut().zip(&row.entries) {
                    *x = (*x + (p - c) * b as u64) % p;
                }
            }
        }
        r.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &FpSubspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// The subspace generated by `self` and one extra vector.
    pub fn extend(&self, v: &FpVector) -> Result<FpSubspace> {
        let mut rows = self.basis.clone();
        rows.push(v.clone());
        FpSubspace::span(self.p, self.ambient_rank, &rows)
    }

    pub fn annihilator(&self) -> FpSubspace {
        annihilator(self)
    }

    /// All elements of the subspace. Only sensible for tiny p^rank.
    pub fn elements(&self) -> Vec<FpVector> {
        let p = self.p.get();
        let mut out = vec![FpVector::zero(self.p, self.ambient_rank)];
        for b in &self.basis {
            let mut next = Vec::with_capacity(out.len() * p as usize);
            for v in &out {
                for c in 0..p {
                    let s = b.scale(c);
                    let entries = v
                        .entries
                        .iter()
                        .zip(&s.entries)
                        .map(|(&a, &b)| (a + b) % p)
                        .collect();
                    next.push(FpVector::from_residues(self.p, entries));
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for FpSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return write!(f, "{{0}}");
        }
        write!(f, "span{{")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}}")
    }
}

fn check_rows(p: Prime, k: usize, rows: &[FpVector]) -> Result<()> {
    for r in rows {
        if r.p != p {
            return Err(invalid(format!(
                "mixed moduli: row {r} is over F_{} but expected F_{p}",
                r.p
            )));
        }
        if r.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: r.len(),
            });
        }
    }
    Ok(())
}

/// Row-reduces `rows` (vectors in F_p^k) to strict RREF and returns the
/// canonical span together with its rank.
pub fn rref(p: Prime, k: usize, rows: &[FpVector]) -> Result<(FpSubspace, usize)> {
    check_rows(p, k, rows)?;
    let pm = p.as_u64();
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.entries.iter().map(|&e| e as u64).collect())
        .collect();
    let mut pivot_row = 0;
    for col in 0..k {
        let Some(src) = (pivot_row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(pivot_row, src);
        let inv = mod_inverse(m[pivot_row][col] as i64, p)? as u64;
        for x in m[pivot_row].iter_mut() {
            *x = *x * inv % pm;
        }
        let piv = m[pivot_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == pivot_row || row[col] == 0 {
                continue;
            }
            let c = row[col];
            for (x, &b) in row.iter_mut().zip(&piv) {
                *x = (*x + (pm - c) * b) % pm;
            }
        }
        pivot_row += 1;
        if pivot_row == m.len() {
            break;
        }
    }
    m.truncate(pivot_row);
    let basis: Vec<FpVector> = m
        .into_iter()
        .map(|r| FpVector::from_residues(p, r.into_iter().map(|x| x as u32).collect()))
        .collect();
    let rank = basis.len();
    Ok((
        FpSubspace {
            p,
            ambient_rank: k,
            basis,
        },
        rank,
    ))
}

/// `{ b : <b, s> = 0 for all s in S }`.
pub fn annihilator(s: &FpSubspace) -> FpSubspace {
    let p = s.p;
    let k = s.ambient_rank;
    let pivots = s.pivots();
    let mut rows = Vec::with_capacity(k - pivots.len());
    // one kernel vector per free column of the RREF basis
    for free in (0..k).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; k];
        v[free] = 1;
        for (row, &piv) in s.basis.iter().zip(&pivots) {
            v[piv] = p.reduce(-(row.entries[free] as i64));
        }
        rows.push(FpVector::from_residues(p, v));
    }
    FpSubspace::span(p, k, &rows).expect("kernel rows share the ambient space")
}

/// Every distinct span of a nonempty subset of `vectors`, found by
/// breadth-first closure (adding one generator at a time) with dedup on the
/// canonical basis. Results are in discovery order.
pub fn span_of_subsets(vectors: &[FpVector]) -> Result<Vec<FpSubspace>> {
    let first = vectors
        .first()
        .ok_or_else(|| invalid("span_of_subsets needs at least one vector"))?;
    let (p, k) = (first.p, first.len());
    check_rows(p, k, vectors)?;

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for v in vectors {
        let s = FpSubspace::span(p, k, std::slice::from_ref(v))?;
        if seen.insert(s.clone()) {
            out.push(s.clone());
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        for v in vectors {
            if s.contains(v) {
                continue;
            }
            let t = s.extend(v)?;
            if seen.insert(t.clone()) {
                out.push(t.clone());
                queue.push_back(t);
            }
        }
    }
    Ok(out)
}
