//! Representations of p-tori `Z_p^k` and tori `T^k` as multisets of
//! one-dimensional characters (weights), together with fixed-point
//! sub-representations, isotropy subgroups and the partition of weights into
//! lines.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exactalg::{
    annihilator, dot, integer_orthogonal, saturate, span_of_subsets, FpSubspace, FpVector,
    IntLattice, Prime,
};

/// `Z_p^k` or `T^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    PTorus { p: Prime, rank: usize },
    Torus { rank: usize },
}

impl GroupDescriptor {
    pub fn p_torus(p: u64, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(invalid("group rank must be at least 1"));
        }
        Ok(GroupDescriptor::PTorus {
            p: Prime::new(p)?,
            rank,
        })
    }

    pub fn torus(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(invalid("group rank must be at least 1"));
        }
        Ok(GroupDescriptor::Torus { rank })
    }

    pub fn rank(&self) -> usize {
        match *self {
            GroupDescriptor::PTorus { rank, .. } | GroupDescriptor::Torus { rank } => rank,
        }
    }

    pub fn p(&self) -> Option<Prime> {
        match *self {
            GroupDescriptor::PTorus { p, .. } => Some(p),
            GroupDescriptor::Torus { .. } => None,
        }
    }

    pub fn is_torus(&self) -> bool {
        matches!(self, GroupDescriptor::Torus { .. })
    }

    /// `Z_2^k` acts by signs on real coordinates; every other group acts on
    /// complex coordinates.
    pub fn is_real(&self) -> bool {
        self.p().map(|p| p.get() == 2).unwrap_or(false)
    }

    /// Real dimension of one weight slot.
    pub fn slot_real_dim(&self) -> usize {
        if self.is_real() {
            1
        } else {
            2
        }
    }

    pub fn to_doc(&self) -> GroupDoc {
        match *self {
            GroupDescriptor::PTorus { p, rank } => GroupDoc {
                kind: GroupKind::PTorus,
                p: Some(p.get() as u64),
                rank,
            },
            GroupDescriptor::Torus { rank } => GroupDoc {
                kind: GroupKind::Torus,
                p: None,
                rank,
            },
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::PTorus { p, rank } => write!(f, "Z_{p}^{rank}"),
            GroupDescriptor::Torus { rank } => write!(f, "T^{rank}"),
        }
    }
}

/// A character of the group: a vector in F_p^k (entries kept in `0..p`) or
/// an integer vector for the torus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub(crate) fn to_fp(&self, p: Prime) -> FpVector {
        FpVector::new(p, &self.0)
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A fixed-point-free representation: distinct nonzero weights with
/// multiplicities. Slots expand the multiplicities left to right in input
/// order; slot `i` is one coordinate (real for p = 2, complex otherwise).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    group: GroupDescriptor,
    weights: Vec<(Weight, usize)>,
}

impl Representation {
    pub fn new(group: GroupDescriptor, weights: Vec<(Vec<i64>, usize)>) -> Result<Self> {
        Self::labeled(group, "representation", weights)
    }

    /// Like [`Representation::new`], naming the representation in errors.
    pub fn labeled(
        group: GroupDescriptor,
        label: &str,
        weights: Vec<(Vec<i64>, usize)>,
    ) -> Result<Self> {
        let k = group.rank();
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(weights.len());
        for (raw, mult) in weights {
            if raw.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: raw.len(),
                });
            }
            if mult == 0 {
                return Err(invalid(format!(
                    "weight {raw:?} in {label} has multiplicity 0"
                )));
            }
            let w = match group.p() {
                Some(p) => Weight(raw.iter().map(|&x| p.reduce(x) as i64).collect()),
                None => Weight(raw.clone()),
            };
            if w.is_zero() {
                return Err(Error::FixedPointViolated {
                    rep: label.to_string(),
                    weight: raw,
                });
            }
            if !seen.insert(w.clone()) {
                return Err(invalid(format!("duplicate weight {w} in {label}")));
            }
            out.push((w, mult));
        }
        Ok(Representation {
            group,
            weights: out,
        })
    }

    /// Builds a representation from a list of slot weights, merging repeats
    /// into multiplicities in order of first appearance.
    pub fn from_slot_weights(group: GroupDescriptor, slots: &[Weight]) -> Result<Self> {
        let mut weights: Vec<(Vec<i64>, usize)> = Vec::new();
        for w in slots {
            match weights.iter_mut().find(|(x, _)| x.as_slice() == w.entries()) {
                Some((_, m)) => *m += 1,
                None => weights.push((w.entries().to_vec(), 1)),
            }
        }
        Self::new(group, weights)
    }

    pub fn empty(group: GroupDescriptor) -> Self {
        Representation {
            group,
            weights: Vec::new(),
        }
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group
    }

    pub fn weights(&self) -> &[(Weight, usize)] {
        &self.weights
    }

    pub fn multiplicity(&self, w: &Weight) -> usize {
        self.weights
            .iter()
            .find(|(x, _)| x == w)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }

    pub fn num_slots(&self) -> usize {
        self.weights.iter().map(|(_, m)| m).sum()
    }

    /// Slot weights in slot order.
    pub fn slots(&self) -> Vec<&Weight> {
        self.weights
            .iter()
            .flat_map(|(w, m)| std::iter::repeat_n(w, *m))
            .collect()
    }

    pub fn real_dim(&self) -> usize {
        self.group.slot_real_dim() * self.num_slots()
    }

    /// `dim_C`, defined for odd p and the torus.
    pub fn complex_dim(&self) -> Result<usize> {
        if self.group.is_real() {
            return Err(Error::Unsupported(
                "complex dimension of a Z_2^k representation".into(),
            ));
        }
        Ok(self.num_slots())
    }

    /// `d(V)`: complex dimension for odd p and the torus, real dimension for p = 2.
    pub fn d(&self) -> usize {
        self.num_slots()
    }

    /// Whether every weight of `self` occurs in `other` with at least the same multiplicity.
    pub fn is_subrep_of(&self, other: &Representation) -> bool {
        self.group == other.group
            && self
                .weights
                .iter()
                .all(|(w, m)| other.multiplicity(w) >= *m)
    }

    /// Adds `mult` copies of a weight (merging with an existing entry).
    pub fn with_weight(&self, w: Vec<i64>, mult: usize) -> Result<Self> {
        let mut ws: Vec<(Vec<i64>, usize)> = self
            .weights
            .iter()
            .map(|(x, m)| (x.entries().to_vec(), *m))
            .collect();
        let probe = Representation::new(self.group, vec![(w, mult)])?;
        let (nw, _) = &probe.weights[0];
        match ws.iter_mut().find(|(x, _)| x.as_slice() == nw.entries()) {
            Some((_, m)) => *m += mult,
            None => ws.push((nw.entries().to_vec(), mult)),
        }
        Representation::new(self.group, ws)
    }

    pub fn to_doc(&self) -> RepDoc {
        RepDoc {
            weights: self
                .weights
                .iter()
                .map(|(w, m)| WeightDoc {
                    w: w.entries().to_vec(),
                    mult: *m,
                })
                .collect(),
        }
    }

    pub(crate) fn check_same_group(&self, other: &Representation) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.weights.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, m)) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *m == 1 {
                write!(f, "{w}")?;
            } else {
                write!(f, "{m}x{w}")?;
            }
        }
        Ok(())
    }
}

/// A subgroup of `Z_p^k` (as a canonical subspace of F_p^k) or a subtorus of
/// `T^k` (as a saturated cocharacter lattice).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subgroup {
    PTorus(FpSubspace),
    Torus(IntLattice),
}

impl Subgroup {
    pub fn trivial(group: GroupDescriptor) -> Self {
        match group {
            GroupDescriptor::PTorus { p, rank } => Subgroup::PTorus(FpSubspace::zero(p, rank)),
            GroupDescriptor::Torus { rank } => Subgroup::Torus(IntLattice::zero(rank)),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Subgroup::PTorus(s) => s.rank(),
            Subgroup::Torus(l) => l.rank(),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        match self {
            Subgroup::PTorus(s) => s.ambient_rank(),
            Subgroup::Torus(l) => l.ambient_rank(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank() == 0
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        match (self, other) {
            (Subgroup::PTorus(a), Subgroup::PTorus(b)) => a.is_subspace_of(b),
            (Subgroup::Torus(a), Subgroup::Torus(b)) => a.basis().iter().all(|v| b.contains(v)),
            _ => false,
        }
    }

    /// Whether the character `w` is trivial on this subgroup.
    pub fn kills(&self, w: &Weight) -> bool {
        match self {
            Subgroup::PTorus(s) => annihilator(s).contains(&w.to_fp(s.p())),
            Subgroup::Torus(l) => l.is_orthogonal_to(w.entries()),
        }
    }

    /// Generators as integer rows, for reports.
    pub fn generators(&self) -> Vec<Vec<i64>> {
        match self {
            Subgroup::PTorus(s) => s.basis().iter().map(|b| b.to_i64()).collect(),
            Subgroup::Torus(l) => l.basis().to_vec(),
        }
    }

    fn matches_group(&self, g: GroupDescriptor) -> bool {
        match (self, g) {
            (Subgroup::PTorus(s), GroupDescriptor::PTorus { p, rank }) => {
                s.p() == p && s.ambient_rank() == rank
            }
            (Subgroup::Torus(l), GroupDescriptor::Torus { rank }) => l.ambient_rank() == rank,
            _ => false,
        }
    }
}

impl Serialize for Subgroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Subgroup", 3)?;
        st.serialize_field(
            "kind",
            match self {
                Subgroup::PTorus(_) => "p-torus",
                Subgroup::Torus(_) => "torus",
            },
        )?;
        st.serialize_field("rank", &self.rank())?;
        st.serialize_field("generators", &self.generators())?;
        st.end()
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subgroup::PTorus(s) => s.fmt(f),
            Subgroup::Torus(l) => l.fmt(f),
        }
    }
}

/// `R^H`: the weights of `r` that vanish on `h`, with their multiplicities.
pub fn fixed_subrep(r: &Representation, h: &Subgroup) -> Result<Representation> {
    if !h.matches_group(r.group) {
        return Err(Error::DimensionMismatch {
            expected: r.group.rank(),
            found: h.ambient_rank(),
        });
    }
    let weights = match h {
        Subgroup::PTorus(s) => {
            let ann = annihilator(s);
            r.weights
                .iter()
                .filter(|(w, _)| ann.contains(&w.to_fp(s.p())))
                .cloned()
                .collect()
        }
        Subgroup::Torus(l) => {
            let orth = integer_orthogonal(l);
            r.weights
                .iter()
                .filter(|(w, _)| orth.contains(w.entries()))
                .cloned()
                .collect()
        }
    };
    Ok(Representation {
        group: r.group,
        weights,
    })
}

/// All isotropy subgroups `∩_{a ∈ A} ker a` over nonempty subsets `A` of the
/// weights. For the torus only identity components (subtori) are returned.
pub fn isotropy_subgroups(r: &Representation) -> Vec<Subgroup> {
    if r.weights.is_empty() {
        return Vec::new();
    }
    match r.group {
        GroupDescriptor::PTorus { p, .. } => {
            let vs: Vec<FpVector> = r.weights.iter().map(|(w, _)| w.to_fp(p)).collect();
            span_of_subsets(&vs)
                .expect("weights share the ambient space")
                .iter()
                .map(|s| Subgroup::PTorus(annihilator(s)))
                .collect()
        }
        GroupDescriptor::Torus { rank } => {
            let ws: Vec<Vec<i64>> = r.weights.iter().map(|(w, _)| w.entries().to_vec()).collect();
            saturated_span_closure(rank, &ws)
                .iter()
                .map(|l| Subgroup::Torus(integer_orthogonal(l)))
                .collect()
        }
    }
}

/// Breadth-first closure of saturated spans of nonempty subsets of `ws`.
fn saturated_span_closure(k: usize, ws: &[Vec<i64>]) -> Vec<IntLattice> {
    let span = |rows: &[Vec<i64>]| saturate(&IntLattice::from_rows(k, rows).expect("rank k rows"));
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for w in ws {
        let l = span(std::slice::from_ref(w));
        if seen.insert(l.clone()) {
            out.push(l.clone());
            queue.push_back(l);
        }
    }
    while let Some(l) = queue.pop_front() {
        for w in ws {
            if integer_orthogonal(&l).basis().iter().all(|o| dot(o, w) == 0) {
                continue;
            }
            let mut rows = l.basis().to_vec();
            rows.push(w.clone());
            let t = span(&rows);
            if seen.insert(t.clone()) {
                out.push(t.clone());
                queue.push_back(t);
            }
        }
    }
    out
}

/// The corank-one isotropy subgroups `ker a`, one per line met by the weights.
pub fn maximal_isotropy(r: &Representation) -> Vec<Subgroup> {
    line_partition(r)
        .lines
        .iter()
        .map(|line| line_kernel(r.group, &line.representative))
        .collect()
}

/// `ker a` for a single character.
pub fn line_kernel(group: GroupDescriptor, w: &Weight) -> Subgroup {
    match group {
        GroupDescriptor::PTorus { p, rank } => {
            let line = FpSubspace::span(p, rank, &[w.to_fp(p)]).expect("weight has length k");
            Subgroup::PTorus(annihilator(&line))
        }
        GroupDescriptor::Torus { rank } => {
            let line = IntLattice::from_rows(rank, &[w.entries().to_vec()]).expect("length k");
            Subgroup::Torus(integer_orthogonal(&line))
        }
    }
}

/// One projective line of weights and the slots of a representation on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Line {
    /// Canonical generator: first nonzero entry 1 (p-torus) or a primitive
    /// vector with positive first nonzero entry (torus).
    pub representative: Weight,
    pub slots: Vec<usize>,
    /// `weight(slot) = coefficient * representative`, per slot.
    pub coefficients: Vec<i64>,
    pub real_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinePartition {
    pub lines: Vec<Line>,
}

impl LinePartition {
    pub fn line_of(&self, representative: &Weight) -> Option<&Line> {
        self.lines.iter().find(|l| &l.representative == representative)
    }
}

/// Canonical line generator of a weight and the coefficient relating them.
pub fn line_representative(group: GroupDescriptor, w: &Weight) -> (Weight, i64) {
    match group {
        GroupDescriptor::PTorus { p, .. } => {
            let (rep, c) = w
                .to_fp(p)
                .normalize_line()
                .expect("representation weights are nonzero");
            (Weight(rep.to_i64()), c as i64)
        }
        GroupDescriptor::Torus { .. } => {
            let g = w.0.iter().fold(0i64, |a, &b| gcd(a, b.abs()));
            let lead = *w.0.iter().find(|&&x| x != 0).expect("nonzero weight");
            let c = if lead < 0 { -g } else { g };
            (Weight(w.0.iter().map(|x| x / c).collect()), c)
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Groups the slots of `r` by the line of their weight. Lines appear in order
/// of their first slot.
pub fn line_partition(r: &Representation) -> LinePartition {
    let slot_dim = r.group.slot_real_dim();
    let mut lines: Vec<Line> = Vec::new();
    for (slot, w) in r.slots().into_iter().enumerate() {
        let (rep, c) = line_representative(r.group, w);
        let idx = match lines.iter().position(|l| l.representative == rep) {
            Some(i) => i,
            None => {
                lines.push(Line {
                    representative: rep,
                    slots: Vec::new(),
                    coefficients: Vec::new(),
                    real_dim: 0,
                });
                lines.len() - 1
            }
        };
        let line = &mut lines[idx];
        line.slots.push(slot);
        line.coefficients.push(c);
        line.real_dim += slot_dim;
    }
    LinePartition { lines }
}

// ---------------------------------------------------------------------------
// Problem documents

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupKind {
    #[serde(rename = "p-torus")]
    PTorus,
    #[serde(rename = "torus")]
    Torus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub kind: GroupKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub rank: usize,
}

impl GroupDoc {
    pub fn to_group(&self) -> Result<GroupDescriptor> {
        match (self.kind, self.p) {
            (GroupKind::PTorus, Some(p)) => GroupDescriptor::p_torus(p, self.rank),
            (GroupKind::PTorus, None) => Err(invalid("p-torus group needs a prime \"p\"")),
            (GroupKind::Torus, None) => GroupDescriptor::torus(self.rank),
            (GroupKind::Torus, Some(_)) => Err(invalid("torus group takes no \"p\"")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightDoc {
    pub w: Vec<i64>,
    pub mult: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct RepDoc {
    pub weights: Vec<WeightDoc>,
}

impl RepDoc {
    pub fn to_rep(&self, group: GroupDescriptor, label: &str) -> Result<Representation> {
        Representation::labeled(
            group,
            label,
            self.weights.iter().map(|w| (w.w.clone(), w.mult)).collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDoc {
    pub group: GroupDoc,
    #[serde(rename = "V")]
    pub v: RepDoc,
    #[serde(rename = "W")]
    pub w: RepDoc,
}

/// A validated pair `(V, W)` over one group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub group: GroupDescriptor,
    pub v: Representation,
    pub w: Representation,
}

impl Problem {
    pub fn new(v: Representation, w: Representation) -> Result<Self> {
        v.check_same_group(&w)?;
        Ok(Problem {
            group: v.group,
            v,
            w,
        })
    }

    pub fn from_doc(doc: &ProblemDoc) -> Result<Self> {
        let group = doc.group.to_group()?;
        Ok(Problem {
            group,
            v: doc.v.to_rep(group, "V")?,
            w: doc.w.to_rep(group, "W")?,
        })
    }

    pub fn to_doc(&self) -> ProblemDoc {
        ProblemDoc {
            group: self.group.to_doc(),
            v: self.v.to_doc(),
            w: self.w.to_doc(),
        }
    }
}

/// Parses and validates a problem document (JSON).
pub fn parse_representation(document: &str) -> Result<Problem> {
    let doc: ProblemDoc = serde_json::from_str(document)
        .map_err(|e| invalid(format!("malformed problem document: {e}")))?;
    Problem::from_doc(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(p: u64, k: usize) -> GroupDescriptor {
        GroupDescriptor::p_torus(p, k).unwrap()
    }

    fn rep(g: GroupDescriptor, ws: &[(&[i64], usize)]) -> Representation {
        Representation::new(g, ws.iter().map(|(w, m)| (w.to_vec(), *m)).collect()).unwrap()
    }

    fn fp_sub(p: u64, k: usize, rows: &[&[i64]]) -> Subgroup {
        let pr = Prime::new(p).unwrap();
        let rows: Vec<FpVector> = rows.iter().map(|r| FpVector::new(pr, r)).collect();
        Subgroup::PTorus(FpSubspace::span(pr, k, &rows).unwrap())
    }

    #[test]
    fn parse_classical_problem() {
        let doc = r#"{"group":{"kind":"p-torus","p":2,"rank":1},
            "V":{"weights":[{"w":[1],"mult":5}]},
            "W":{"weights":[{"w":[1],"mult":2}]}}"#;
        let pr = parse_representation(doc).unwrap();
        assert_eq!(pr.v.real_dim(), 5);
        assert_eq!(pr.w.real_dim(), 2);
        assert!(pr.group.is_real());
    }

    #[test]
    fn parse_rejects_zero_weight() {
        let doc = r#"{"group":{"kind":"p-torus","p":3,"rank":2},
            "V":{"weights":[{"w":[0,0],"mult":1}]},"W":{"weights":[]}}"#;
        let err = parse_representation(doc).unwrap_err();
        assert!(matches!(err, Error::FixedPointViolated { .. }));
        assert!(err.to_string().contains("V^G"));
        // reduces to zero mod p
        let doc = r#"{"group":{"kind":"p-torus","p":3,"rank":1},
            "V":{"weights":[{"w":[3],"mult":1}]},"W":{"weights":[]}}"#;
        assert!(matches!(
            parse_representation(doc),
            Err(Error::FixedPointViolated { .. })
        ));
    }

    #[test]
    fn parse_rejects_bad_inputs() {
        let composite = r#"{"group":{"kind":"p-torus","p":4,"rank":1},
            "V":{"weights":[]},"W":{"weights":[]}}"#;
        assert_eq!(parse_representation(composite), Err(Error::NotPrime(4)));
        let ragged = r#"{"group":{"kind":"p-torus","p":3,"rank":2},
            "V":{"weights":[{"w":[1],"mult":1}]},"W":{"weights":[]}}"#;
        assert!(parse_representation(ragged).is_err());
        let dup = r#"{"group":{"kind":"p-torus","p":3,"rank":1},
            "V":{"weights":[{"w":[1],"mult":1},{"w":[4],"mult":1}]},"W":{"weights":[]}}"#;
        assert!(parse_representation(dup).is_err());
        let torus_p = r#"{"group":{"kind":"torus","p":3,"rank":1},
            "V":{"weights":[]},"W":{"weights":[]}}"#;
        assert!(parse_representation(torus_p).is_err());
    }

    #[test]
    fn dims() {
        let r = rep(pt(3, 2), &[(&[1, 0], 2), (&[0, 1], 1)]);
        assert_eq!(r.complex_dim().unwrap(), 3);
        assert_eq!(r.real_dim(), 6);
        let r = rep(pt(2, 1), &[(&[1], 5)]);
        assert_eq!(r.real_dim(), 5);
        assert!(r.complex_dim().is_err());
        assert_eq!(Representation::empty(pt(5, 2)).real_dim(), 0);
    }

    #[test]
    fn fixed_subrep_examples() {
        let g = pt(3, 2);
        let r = rep(g, &[(&[1, 0], 2), (&[0, 1], 1)]);
        let f = fixed_subrep(&r, &fp_sub(3, 2, &[&[0, 1]])).unwrap();
        assert_eq!(f, rep(g, &[(&[1, 0], 2)]));
        assert_eq!(f.complex_dim().unwrap(), 2);
        assert_eq!(fixed_subrep(&r, &Subgroup::trivial(g)).unwrap(), r);

        let t = GroupDescriptor::torus(2).unwrap();
        let r = rep(t, &[(&[1, 0], 1), (&[1, 1], 1)]);
        let h = Subgroup::Torus(IntLattice::from_rows(2, &[vec![0, 1]]).unwrap());
        assert_eq!(fixed_subrep(&r, &h).unwrap(), rep(t, &[(&[1, 0], 1)]));

        assert!(fixed_subrep(&r, &fp_sub(3, 2, &[&[0, 1]])).is_err());
    }

    #[test]
    fn isotropy_examples() {
        let g = pt(3, 2);
        let iso = isotropy_subgroups(&rep(g, &[(&[1, 0], 1), (&[0, 1], 1)]));
        assert_eq!(
            iso,
            vec![
                fp_sub(3, 2, &[&[0, 1]]),
                fp_sub(3, 2, &[&[1, 0]]),
                Subgroup::trivial(g)
            ]
        );
        let iso = isotropy_subgroups(&rep(pt(5, 1), &[(&[2], 1)]));
        assert_eq!(iso, vec![Subgroup::trivial(pt(5, 1))]);
        let iso = isotropy_subgroups(&rep(g, &[(&[1, 0], 1), (&[2, 0], 1)]));
        assert_eq!(iso, vec![fp_sub(3, 2, &[&[0, 1]])]);
    }

    #[test]
    fn torus_isotropy_is_subtori() {
        let t = GroupDescriptor::torus(2).unwrap();
        let iso = isotropy_subgroups(&rep(t, &[(&[2, 0], 1), (&[1, 1], 1)]));
        assert_eq!(iso.len(), 3);
        assert!(iso.contains(&Subgroup::trivial(t)));
        assert!(iso.contains(&Subgroup::Torus(
            IntLattice::from_rows(2, &[vec![0, 1]]).unwrap()
        )));
        assert!(iso.contains(&Subgroup::Torus(
            IntLattice::from_rows(2, &[vec![1, -1]]).unwrap()
        )));
    }

    #[test]
    fn maximal_isotropy_examples() {
        let g = pt(3, 2);
        let m = maximal_isotropy(&rep(g, &[(&[1, 0], 1), (&[2, 0], 1), (&[0, 1], 1)]));
        assert_eq!(m, vec![fp_sub(3, 2, &[&[0, 1]]), fp_sub(3, 2, &[&[1, 0]])]);
        let m = maximal_isotropy(&rep(pt(7, 1), &[(&[3], 2), (&[1], 1)]));
        assert_eq!(m, vec![Subgroup::trivial(pt(7, 1))]);
        let m = maximal_isotropy(&rep(pt(2, 2), &[(&[1, 1], 1)]));
        assert_eq!(m, vec![fp_sub(2, 2, &[&[1, 1]])]);
    }

    #[test]
    fn line_partition_examples() {
        let lp = line_partition(&rep(pt(3, 2), &[(&[1, 0], 1), (&[2, 0], 1), (&[0, 1], 1)]));
        assert_eq!(lp.lines.len(), 2);
        assert_eq!(lp.lines[0].representative, Weight(vec![1, 0]));
        assert_eq!(lp.lines[0].slots, vec![0, 1]);
        assert_eq!(lp.lines[0].coefficients, vec![1, 2]);
        assert_eq!(lp.lines[1].slots, vec![2]);

        let lp = line_partition(&rep(pt(5, 2), &[(&[2, 3], 3)]));
        assert_eq!(lp.lines.len(), 1);
        assert_eq!(lp.lines[0].slots, vec![0, 1, 2]);

        let r = rep(pt(2, 2), &[(&[1, 0], 1), (&[0, 1], 1), (&[1, 1], 2)]);
        assert_eq!(line_partition(&r).lines.len(), 3);
    }

    #[test]
    fn torus_line_representative_is_primitive() {
        let t = GroupDescriptor::torus(2).unwrap();
        let (rep, c) = line_representative(t, &Weight(vec![-2, 4]));
        assert_eq!(rep, Weight(vec![1, -2]));
        assert_eq!(c, -2);
    }

    #[test]
    fn problem_doc_roundtrip() {
        let doc = r#"{"group":{"kind":"torus","rank":2},
            "V":{"weights":[{"w":[1,0],"mult":1},{"w":[1,1],"mult":2}]},
            "W":{"weights":[{"w":[0,1],"mult":1}]}}"#;
        let pr = parse_representation(doc).unwrap();
        let again = Problem::from_doc(&pr.to_doc()).unwrap();
        assert_eq!(pr, again);
    }
}
