//! Existence decisions and lower bounds on the dimension of zero sets
//! `Z_f = f^{-1}(0) ∩ S(V)` of equivariant maps `f : S(V) -> W`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::reps::{
    fixed_subrep, isotropy_subgroups, line_kernel, line_partition, GroupDoc, RepDoc,
    Representation, Subgroup, Weight,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Every maximal isotropy subgroup passes the dimension test (p-torus).
    Exists,
    /// Some maximal isotropy subgroup fails it (p-torus).
    NotExists,
    /// `dim_R V > dim_R W` (torus).
    NonexistenceByDimension,
    /// Torus instance passing the dimension test; no criterion applies.
    Unknown,
}

/// One row of the per-line ledger: `H = ker a` for a line `[a]` met by V.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineRecord {
    pub line: Weight,
    pub subgroup: Subgroup,
    pub dim_v: usize,
    pub dim_w: usize,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecisionReport {
    pub verdict: Verdict,
    pub dim_v: usize,
    pub dim_w: usize,
    pub ledger: Vec<LineRecord>,
    pub violating_lines: Vec<Weight>,
}

impl DecisionReport {
    pub fn first_violation(&self) -> Option<&LineRecord> {
        self.ledger.iter().find(|r| !r.satisfied)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubgroupBound {
    pub subgroup: Subgroup,
    pub dim_v: usize,
    pub dim_w: usize,
    pub bound: i64,
    /// Set for torus entries, where the bound comes from applying the global
    /// bound to the restriction `f^H` over the quotient torus.
    pub derived_by_restriction: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub global_bound: i64,
    pub per_subgroup: Vec<SubgroupBound>,
    pub best_bound: i64,
    pub parity_refined: bool,
}

/// `dim_R V - dim_R W - 1`. Negative values are vacuous.
pub fn global_bound(v: &Representation, w: &Representation) -> Result<i64> {
    v.check_same_group(w)?;
    Ok(v.real_dim() as i64 - w.real_dim() as i64 - 1)
}

/// For odd p and the torus the bound `2(d(V) - d(W)) - 1` is odd, hence at
/// least 1 once `dim_R V > dim_R W`. Returns the bound and whether that
/// refinement applies. Never refines for p = 2.
pub fn parity_refine(v: &Representation, w: &Representation, bound: i64) -> (i64, bool) {
    if v.group().is_real() {
        return (bound, false);
    }
    debug_assert!(bound.rem_euclid(2) == 1, "complex bound {bound} must be odd");
    let refined = v.real_dim() > w.real_dim();
    debug_assert!(!refined || bound >= 1);
    (bound, refined)
}

/// Bounds for every restriction `f^H : S(V^H) -> W^H`, one per isotropy
/// subgroup of `V`, led by the trivial subgroup (which reproduces the global
/// bound).
pub fn refined_bounds(v: &Representation, w: &Representation) -> Result<BoundReport> {
    let global = global_bound(v, w)?;
    let (_, parity_refined) = parity_refine(v, w, global);
    let torus = v.group().is_torus();

    let mut subgroups = vec![Subgroup::trivial(v.group())];
    subgroups.extend(isotropy_subgroups(v).into_iter().filter(|h| !h.is_trivial()));

    let mut per_subgroup = Vec::with_capacity(subgroups.len());
    for h in subgroups {
        let dim_v = fixed_subrep(v, &h)?.real_dim();
        let dim_w = fixed_subrep(w, &h)?.real_dim();
        per_subgroup.push(SubgroupBound {
            bound: dim_v as i64 - dim_w as i64 - 1,
            dim_v,
            dim_w,
            derived_by_restriction: torus && !h.is_trivial(),
            subgroup: h,
        });
    }
    let best_bound = per_subgroup
        .iter()
        .map(|e| e.bound)
        .fold(global, i64::max);
    Ok(BoundReport {
        global_bound: global,
        per_subgroup,
        best_bound,
        parity_refined,
    })
}

/// Decides whether an equivariant map `S(V) -> S(W)` exists.
///
/// For `Z_p^k` this compares `dim_R V^H` with `dim_R W^H` for `H = ker a`
/// over every line `[a]` met by V. Lines of W not met by V play no role. For
/// `T^k` only the dimension obstruction is available.
pub fn decide_map_existence(v: &Representation, w: &Representation) -> Result<DecisionReport> {
    v.check_same_group(w)?;
    let (dim_v, dim_w) = (v.real_dim(), w.real_dim());
    if v.group().is_torus() {
        let verdict = if dim_v > dim_w {
            Verdict::NonexistenceByDimension
        } else {
            Verdict::Unknown
        };
        return Ok(DecisionReport {
            verdict,
            dim_v,
            dim_w,
            ledger: Vec::new(),
            violating_lines: Vec::new(),
        });
    }

    let mut ledger = Vec::new();
    for line in line_partition(v).lines {
        let h = line_kernel(v.group(), &line.representative);
        let lv = fixed_subrep(v, &h)?.real_dim();
        let lw = fixed_subrep(w, &h)?.real_dim();
        ledger.push(LineRecord {
            line: line.representative,
            subgroup: h,
            dim_v: lv,
            dim_w: lw,
            satisfied: lv <= lw,
        });
    }
    let violating_lines: Vec<Weight> = ledger
        .iter()
        .filter(|r| !r.satisfied)
        .map(|r| r.line.clone())
        .collect();
    let verdict = if violating_lines.is_empty() {
        Verdict::Exists
    } else {
        Verdict::NotExists
    };
    Ok(DecisionReport {
        verdict,
        dim_v,
        dim_w,
        ledger,
        violating_lines,
    })
}

impl DecisionReport {
    pub(crate) fn refusal(&self) -> Error {
        match self.first_violation() {
            Some(r) => Error::Refused {
                line: r.line.entries().to_vec(),
                dim_v: r.dim_v,
                dim_w: r.dim_w,
            },
            None => Error::Unsupported(format!(
                "no construction for verdict {:?} (dim_R V = {}, dim_R W = {})",
                self.verdict, self.dim_v, self.dim_w
            )),
        }
    }
}

/// A finite sub-representation `V(d)` cut from an unbounded weight stream.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub sub_rep: Representation,
    pub bound: i64,
}

/// Takes the shortest prefix of `stream` whose representation has real
/// dimension at least `target_d` and returns it with the bound
/// `dim_R V(d) - dim_R W - 1` for maps `S(V(d)) -> W`.
pub fn infinite_witness<I>(stream: I, w: &Representation, target_d: usize) -> Result<Witness>
where
    I: IntoIterator<Item = Weight>,
{
    if target_d == 0 {
        return Err(invalid("target dimension must be at least 1"));
    }
    let group = w.group();
    let slot_dim = group.slot_real_dim();
    let mut slots: Vec<Weight> = Vec::new();
    let mut it = stream.into_iter();
    while slots.len() * slot_dim < target_d {
        match it.next() {
            Some(x) => {
                // validate and reduce through the representation constructor
                let single = Representation::labeled(group, "stream", vec![(x.entries().to_vec(), 1)])?;
                slots.push(single.weights()[0].0.clone());
            }
            None => {
                return Err(Error::StreamExhausted {
                    produced: slots.len(),
                    dim: slots.len() * slot_dim,
                    target: target_d,
                })
            }
        }
    }
    let sub_rep = Representation::from_slot_weights(group, &slots)?;
    let bound = global_bound(&sub_rep, w)?;
    Ok(Witness { sub_rep, bound })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Repeat {
    /// Cycle through the block forever.
    #[default]
    Cycle,
    /// Emit the block once.
    Once,
}

/// A finite generator block plus a repetition rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightStream {
    block: Vec<Weight>,
    repeat: Repeat,
}

impl WeightStream {
    pub fn new(block: Vec<Weight>, repeat: Repeat) -> Result<Self> {
        if block.is_empty() && repeat == Repeat::Cycle {
            return Err(invalid("a cycling stream needs a nonempty block"));
        }
        Ok(WeightStream { block, repeat })
    }

    pub fn iter(&self) -> Box<dyn Iterator<Item = Weight> + '_> {
        match self.repeat {
            Repeat::Cycle => Box::new(self.block.iter().cloned().cycle()),
            Repeat::Once => Box::new(self.block.iter().cloned()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StreamSpec {
    pub block: Vec<Vec<i64>>,
    #[serde(default)]
    pub repeat: Repeat,
}

/// Stream file: group, target representation `W`, and the weight stream
/// standing in for an infinite-dimensional `V`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StreamDoc {
    pub group: GroupDoc,
    #[serde(rename = "W")]
    pub w: RepDoc,
    pub stream: StreamSpec,
}

impl StreamDoc {
    pub fn parse(document: &str) -> Result<(Representation, WeightStream)> {
        let doc: StreamDoc = serde_json::from_str(document)
            .map_err(|e| invalid(format!("malformed stream document: {e}")))?;
        let group = doc.group.to_group()?;
        let w = doc.w.to_rep(group, "W")?;
        let block = doc.stream.block.into_iter().map(Weight::from).collect();
        Ok((w, WeightStream::new(block, doc.stream.repeat)?))
    }
}
