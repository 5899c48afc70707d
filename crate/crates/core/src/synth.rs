//! Explicit equivariant maps built from blockwise power maps.
//!
//! A map sends source slot `i` to target slot `σ(i)` by
//! `x_i ↦ |x_i| (x_i/|x_i|)^e`, or sends it to nothing (a zero block). On each
//! line of weights this is a join of power maps, so the whole map is a join
//! over lines.

use std::collections::HashSet;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{decide_map_existence, Verdict};
use crate::error::{invalid, Error, Result};
use crate::exactalg::{mod_inverse, Prime};
use crate::reps::{
    line_partition, GroupDescriptor, GroupDoc, Line, RepDoc, Representation, Weight,
};

/// Points further than this from the unit sphere are rejected by [`evaluate`].
pub const SPHERE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Block {
    Assign { src: usize, dst: usize, exponent: u32 },
    Zero { src: usize },
}

impl Block {
    pub fn src(&self) -> usize {
        match *self {
            Block::Assign { src, .. } | Block::Zero { src } => src,
        }
    }
}

/// A block-structured map `S(V) -> W`.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesizedMap {
    source: Representation,
    target: Representation,
    blocks: Vec<Block>,
    analytic_zero_set: Option<Vec<usize>>,
}

impl SynthesizedMap {
    /// Checks the structural invariants: every source slot in exactly one
    /// block, targets injective and in range, exponents reduced mod p.
    /// Equivariance is not checked here.
    pub fn new(
        source: Representation,
        target: Representation,
        mut blocks: Vec<Block>,
        analytic_zero_set: Option<Vec<usize>>,
    ) -> Result<Self> {
        source.check_same_group(&target)?;
        let (n_src, n_dst) = (source.num_slots(), target.num_slots());
        blocks.sort_by_key(Block::src);
        if blocks.len() != n_src || blocks.iter().enumerate().any(|(i, b)| b.src() != i) {
            return Err(invalid(format!(
                "blocks must cover each of the {n_src} source slots exactly once"
            )));
        }
        let mut used = HashSet::new();
        for b in &blocks {
            if let Block::Assign { src, dst, exponent } = *b {
                if dst >= n_dst {
                    return Err(invalid(format!(
                        "block for slot {src} targets slot {dst}, but W has {n_dst} slots"
                    )));
                }
                if !used.insert(dst) {
                    return Err(invalid(format!("target slot {dst} is assigned twice")));
                }
                if let Some(p) = source.group().p() {
                    if exponent >= p.get() {
                        return Err(invalid(format!(
                            "exponent {exponent} of slot {src} is not reduced mod {p}"
                        )));
                    }
                }
            }
        }
        if let Some(z) = &analytic_zero_set {
            let distinct: HashSet<_> = z.iter().collect();
            if distinct.len() != z.len() || z.iter().any(|&s| s >= n_src) {
                return Err(invalid("analytic zero set must list distinct source slots"));
            }
        }
        Ok(SynthesizedMap {
            source,
            target,
            blocks,
            analytic_zero_set,
        })
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn group(&self) -> GroupDescriptor {
        self.source.group()
    }

    /// Blocks sorted by source slot.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Source slots spanning `U` with `Z_f = S(U)`, when known.
    pub fn analytic_zero_set(&self) -> Option<&[usize]> {
        self.analytic_zero_set.as_deref()
    }

    /// `dim S(U) = dim_R U - 1` (so `-1` for an empty zero set).
    pub fn analytic_zero_dim(&self) -> Option<i64> {
        self.analytic_zero_set
            .as_ref()
            .map(|z| (z.len() * self.group().slot_real_dim()) as i64 - 1)
    }

    pub fn has_zero_blocks(&self) -> bool {
        self.blocks.iter().any(|b| matches!(b, Block::Zero { .. }))
    }

    /// A copy with the exponent of source slot `src` replaced.
    pub fn with_exponent(&self, src: usize, exponent: u32) -> Result<Self> {
        let mut blocks = self.blocks.clone();
        match blocks.get_mut(src) {
            Some(Block::Assign { exponent: e, .. }) => *e = exponent,
            _ => return Err(invalid(format!("source slot {src} has no assignment"))),
        }
        SynthesizedMap::new(
            self.source.clone(),
            self.target.clone(),
            blocks,
            self.analytic_zero_set.clone(),
        )
    }

    pub fn to_doc(&self) -> MapDoc {
        MapDoc {
            group: self.group().to_doc(),
            source: self.source.to_doc(),
            target: self.target.to_doc(),
            blocks: self.blocks.clone(),
            analytic_zero_set: self.analytic_zero_set.clone(),
        }
    }

    pub fn from_doc(doc: &MapDoc) -> Result<Self> {
        let group = doc.group.to_group()?;
        SynthesizedMap::new(
            doc.source.to_rep(group, "source")?,
            doc.target.to_rep(group, "target")?,
            doc.blocks.clone(),
            doc.analytic_zero_set.clone(),
        )
    }

    /// Pretty JSON with a trailing newline; stable across round trips.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_doc()).expect("map docs serialize");
        s.push('\n');
        s
    }

    pub fn from_json(document: &str) -> Result<Self> {
        let doc: MapDoc = serde_json::from_str(document)
            .map_err(|e| invalid(format!("malformed map document: {e}")))?;
        Self::from_doc(&doc)
    }
}

/// Serialized form of a [`SynthesizedMap`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub group: GroupDoc,
    pub source: RepDoc,
    pub target: RepDoc,
    pub blocks: Vec<Block>,
    pub analytic_zero_set: Option<Vec<usize>>,
}

/// A point of `V` or `W`: one real coordinate per slot for `Z_2^k`, one
/// complex coordinate otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

impl Point {
    pub fn zeros(group: GroupDescriptor, n: usize) -> Self {
        if group.is_real() {
            Point::Real(vec![0.0; n])
        } else {
            Point::Complex(vec![Complex64::new(0.0, 0.0); n])
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Point::Real(v) => v.len(),
            Point::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_real(&self) -> bool {
        matches!(self, Point::Real(_))
    }

    pub fn norm_sqr(&self) -> f64 {
        match self {
            Point::Real(v) => v.iter().map(|x| x * x).sum(),
            Point::Complex(v) => v.iter().map(|z| z.norm_sqr()).sum(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Modulus of one coordinate.
    pub fn abs_at(&self, i: usize) -> f64 {
        match self {
            Point::Real(v) => v[i].abs(),
            Point::Complex(v) => v[i].norm(),
        }
    }

    /// Real coordinates (re, im interleaved for complex points).
    pub fn to_real(&self) -> Vec<f64> {
        match self {
            Point::Real(v) => v.clone(),
            Point::Complex(v) => v.iter().flat_map(|z| [z.re, z.im]).collect(),
        }
    }

    /// Inverse of [`Point::to_real`].
    pub fn from_real(real: bool, coords: &[f64]) -> Self {
        if real {
            Point::Real(coords.to_vec())
        } else {
            Point::Complex(
                coords
                    .chunks_exact(2)
                    .map(|c| Complex64::new(c[0], c[1]))
                    .collect(),
            )
        }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        self.to_real()
            .iter()
            .zip(other.to_real())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn normalized(&self) -> Point {
        let n = self.norm();
        let r = self.to_real().iter().map(|x| x / n).collect::<Vec<_>>();
        Point::from_real(self.is_real(), &r)
    }

    /// Uniform point on the unit sphere of `n` slots (normalized Gaussian).
    pub fn random_on_sphere<R: Rng + ?Sized>(group: GroupDescriptor, n: usize, rng: &mut R) -> Self {
        let dim = n * group.slot_real_dim();
        loop {
            let g: Vec<f64> = (0..dim)
                .map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal))
                .collect();
            let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-12 || dim == 0 {
                let v: Vec<f64> = g.iter().map(|x| x / norm).collect();
                return Point::from_real(group.is_real(), &v);
            }
        }
    }
}

/// An element of `Z_p^k` (residues) or `T^k` (angles in turns, `[0, 1)^k`).
#[derive(Debug, Clone, PartialEq)]
pub enum GroupElement {
    PTorus(Vec<u32>),
    Torus(Vec<f64>),
}

impl GroupElement {
    pub fn identity(group: GroupDescriptor) -> Self {
        match group {
            GroupDescriptor::PTorus { rank, .. } => GroupElement::PTorus(vec![0; rank]),
            GroupDescriptor::Torus { rank } => GroupElement::Torus(vec![0.0; rank]),
        }
    }

    pub fn random<R: Rng + ?Sized>(group: GroupDescriptor, rng: &mut R) -> Self {
        match group {
            GroupDescriptor::PTorus { p, rank } => {
                GroupElement::PTorus((0..rank).map(|_| rng.random_range(0..p.get())).collect())
            }
            GroupDescriptor::Torus { rank } => {
                GroupElement::Torus((0..rank).map(|_| rng.random::<f64>()).collect())
            }
        }
    }

    pub fn p_torus(p: Prime, entries: &[i64]) -> Self {
        GroupElement::PTorus(entries.iter().map(|&x| p.reduce(x)).collect())
    }
}

/// The exponent `e = j1^{-1} j2 mod p`, so that `z ↦ z^e` intertwines the
/// characters `j1·a` and `j2·a`.
pub fn power_exponent(j1: i64, j2: i64, p: Prime) -> Result<u32> {
    let j2r = p.reduce(j2);
    if j2r == 0 {
        return Err(invalid(format!("{j2} is zero modulo {p}")));
    }
    let inv = mod_inverse(j1, p)?;
    Ok(((inv as u64 * j2r as u64) % p.get() as u64) as u32)
}

/// Slots of one line sorted by (weight, slot index), paired with their
/// coefficients relative to the line representative.
fn sorted_line_slots(rep: &Representation, line: &Line) -> Vec<(usize, i64)> {
    let slots = rep.slots();
    let mut out: Vec<(usize, i64)> = line
        .slots
        .iter()
        .copied()
        .zip(line.coefficients.iter().copied())
        .collect();
    out.sort_by(|a, b| (slots[a.0], a.0).cmp(&(slots[b.0], b.0)));
    out
}

/// Joins power maps line by line: on each line the i-th source slot goes to
/// the i-th target slot; surplus source slots become zero blocks.
fn join_by_lines(v: &Representation, w: &Representation, p: Prime) -> Result<(Vec<Block>, Vec<usize>)> {
    let lw = line_partition(w);
    let mut blocks = Vec::with_capacity(v.num_slots());
    let mut zeros = Vec::new();
    for line in line_partition(v).lines {
        let src = sorted_line_slots(v, &line);
        let dst = lw
            .line_of(&line.representative)
            .map(|l| sorted_line_slots(w, l))
            .unwrap_or_default();
        for (i, &(s, cv)) in src.iter().enumerate() {
            match dst.get(i) {
                Some(&(d, cw)) => blocks.push(Block::Assign {
                    src: s,
                    dst: d,
                    exponent: power_exponent(cv, cw, p)?,
                }),
                None => {
                    blocks.push(Block::Zero { src: s });
                    zeros.push(s);
                }
            }
        }
    }
    zeros.sort_unstable();
    Ok((blocks, zeros))
}

/// An equivariant map `S(V) -> S(W)`, built when the existence criterion
/// holds. Refuses, naming the violating line, otherwise.
///
/// For the torus only identity maps between equal weights are built.
pub fn synthesize_equivariant(v: &Representation, w: &Representation) -> Result<SynthesizedMap> {
    let decision = decide_map_existence(v, w)?;
    match v.group() {
        GroupDescriptor::PTorus { p, .. } => {
            if decision.verdict != Verdict::Exists {
                return Err(decision.refusal());
            }
            let (blocks, zeros) = join_by_lines(v, w, p)?;
            debug_assert!(zeros.is_empty());
            SynthesizedMap::new(v.clone(), w.clone(), blocks, Some(Vec::new()))
        }
        GroupDescriptor::Torus { .. } => {
            if decision.verdict == Verdict::NonexistenceByDimension {
                return Err(decision.refusal());
            }
            torus_identity_map(v, w)
        }
    }
}

fn torus_identity_map(v: &Representation, w: &Representation) -> Result<SynthesizedMap> {
    let w_slots = w.slots();
    let mut used = vec![false; w_slots.len()];
    let mut blocks = Vec::with_capacity(v.num_slots());
    for (s, wt) in v.slots().into_iter().enumerate() {
        let d = (0..w_slots.len())
            .find(|&d| !used[d] && w_slots[d] == wt)
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "torus synthesis needs weight {wt} with multiplicity {} in W, found {}",
                    v.multiplicity(wt),
                    w.multiplicity(wt)
                ))
            })?;
        used[d] = true;
        blocks.push(Block::Assign {
            src: s,
            dst: d,
            exponent: 1,
        });
    }
    SynthesizedMap::new(v.clone(), w.clone(), blocks, Some(Vec::new()))
}

/// A partial join: on every line of V as many slots as W offers on that line
/// are joined by power maps, the rest are zero blocks. The zero set is the
/// sphere of the zero-block slots.
pub fn synthesize_partial(v: &Representation, w: &Representation) -> Result<SynthesizedMap> {
    v.check_same_group(w)?;
    let GroupDescriptor::PTorus { p, .. } = v.group() else {
        return Err(Error::Unsupported("partial synthesis for the torus".into()));
    };
    let (blocks, zeros) = join_by_lines(v, w, p)?;
    SynthesizedMap::new(v.clone(), w.clone(), blocks, Some(zeros))
}

/// Projection of V onto the sub-representation spanned by `target_slots`.
/// The target representation lists the chosen weights in order of first
/// appearance; the zero set is the sphere of the complementary slots.
pub fn projection_map(v: &Representation, target_slots: &[usize]) -> Result<SynthesizedMap> {
    let n = v.num_slots();
    let distinct: HashSet<_> = target_slots.iter().collect();
    if distinct.len() != target_slots.len() || target_slots.iter().any(|&s| s >= n) {
        return Err(invalid(format!(
            "target slots must be distinct indices below {n}"
        )));
    }
    if target_slots.is_empty() {
        log::warn!("projection onto no slots is the zero map");
    }
    let slots = v.slots();
    let chosen: Vec<Weight> = target_slots.iter().map(|&s| slots[s].clone()).collect();
    let w = Representation::from_slot_weights(v.group(), &chosen)?;

    // W's slots group equal weights together; hand them out in order.
    let w_slots = w.slots();
    let mut used = vec![false; w_slots.len()];
    let mut blocks = Vec::with_capacity(n);
    for &s in target_slots {
        let d = (0..w_slots.len())
            .find(|&d| !used[d] && w_slots[d] == slots[s])
            .expect("target built from these weights");
        used[d] = true;
        blocks.push(Block::Assign {
            src: s,
            dst: d,
            exponent: 1,
        });
    }
    let mut zeros: Vec<usize> = (0..n).filter(|s| !distinct.contains(s)).collect();
    zeros.sort_unstable();
    blocks.extend(zeros.iter().map(|&s| Block::Zero { src: s }));
    SynthesizedMap::new(v.clone(), w, blocks, Some(zeros))
}

fn check_point(group: GroupDescriptor, n: usize, x: &Point) -> Result<()> {
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    if x.is_real() != group.is_real() {
        return Err(invalid(if group.is_real() {
            "Z_2^k points take real coordinates"
        } else {
            "points take complex coordinates"
        }));
    }
    Ok(())
}

/// `f(x)` for a point of the unit sphere `S(V)`.
pub fn evaluate(f: &SynthesizedMap, x: &Point) -> Result<Point> {
    check_point(f.group(), f.source.num_slots(), x)?;
    let norm = x.norm();
    if (norm - 1.0).abs() > SPHERE_TOL {
        return Err(Error::NotOnSphere { norm });
    }
    Ok(evaluate_ambient(f, x))
}

/// The same formula on all of `V` (no sphere check). Coordinates are assumed
/// to match the map's source.
pub fn evaluate_ambient(f: &SynthesizedMap, x: &Point) -> Point {
    let mut y = Point::zeros(f.group(), f.target.num_slots());
    for b in &f.blocks {
        let Block::Assign { src, dst, exponent } = *b else {
            continue;
        };
        match (x, &mut y) {
            (Point::Real(xs), Point::Real(ys)) => {
                let v = xs[src];
                ys[dst] = if exponent % 2 == 1 { v } else { v.abs() };
            }
            (Point::Complex(xs), Point::Complex(ys)) => {
                let z = xs[src];
                let r = z.norm();
                ys[dst] = if r == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    (z / r).powu(exponent) * r
                };
            }
            _ => unreachable!("point kind matches the group"),
        }
    }
    y
}

/// `g · x` on the representation `r`.
pub fn act(g: &GroupElement, r: &Representation, x: &Point) -> Result<Point> {
    let group = r.group();
    check_point(group, r.num_slots(), x)?;
    let k = group.rank();
    let slots = r.slots();
    match (group, g, x) {
        (GroupDescriptor::PTorus { p, .. }, GroupElement::PTorus(gv), _) => {
            if gv.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: gv.len(),
                });
            }
            let phase = |w: &Weight| -> u64 {
                w.entries()
                    .iter()
                    .zip(gv)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p.get() as u64)
            };
            Ok(match x {
                Point::Real(xs) => Point::Real(
                    xs.iter()
                        .zip(&slots)
                        .map(|(&c, w)| if phase(w) % 2 == 1 { -c } else { c })
                        .collect(),
                ),
                Point::Complex(xs) => Point::Complex(
                    xs.iter()
                        .zip(&slots)
                        .map(|(&c, w)| {
                            let t = TAU * phase(w) as f64 / p.get() as f64;
                            c * Complex64::from_polar(1.0, t)
                        })
                        .collect(),
                ),
            })
        }
        (GroupDescriptor::Torus { .. }, GroupElement::Torus(theta), Point::Complex(xs)) => {
            if theta.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: theta.len(),
                });
            }
            Ok(Point::Complex(
                xs.iter()
                    .zip(&slots)
                    .map(|(&c, w)| {
                        let t: f64 = w.entries().iter().zip(theta).map(|(&a, b)| a as f64 * b).sum();
                        c * Complex64::from_polar(1.0, TAU * t)
                    })
                    .collect(),
            ))
        }
        _ => Err(invalid("group element does not belong to the representation's group")),
    }
}
