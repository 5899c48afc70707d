//! Random instances and brute-force oracles shared by the integration tests.
//! Nothing here calls into the algebra under test except to build inputs.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use equimap_core::reps::{GroupDescriptor, Representation, Subgroup};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Elem = Vec<u32>;
pub type ElemSet = BTreeSet<Elem>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn all_vectors(p: u32, k: usize) -> Vec<Elem> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn dot(a: &[u32], b: &[u32], p: u32) -> u32 {
    a.iter().zip(b).map(|(x, y)| x * y).sum::<u32>() % p
}

/// All elements of the span of `gens`: every combination `sum c_i g_i` with
/// coefficients in `0..p`.
pub fn span_elements(p: u32, k: usize, gens: &[Elem]) -> ElemSet {
    all_vectors(p, gens.len())
        .into_iter()
        .map(|c| {
            (0..k)
                .map(|j| c.iter().zip(gens).map(|(ci, g)| ci * g[j]).sum::<u32>() % p)
                .collect()
        })
        .collect()
}

/// `{ b : <b, s> = 0 for all s }` by enumeration.
pub fn bf_annihilator(p: u32, k: usize, s: &ElemSet) -> ElemSet {
    all_vectors(p, k)
        .into_iter()
        .filter(|b| s.iter().all(|x| dot(b, x, p) == 0))
        .collect()
}

pub fn subgroup_elements(h: &Subgroup, p: u32) -> ElemSet {
    let k = h.ambient_rank();
    let gens: Vec<Elem> = h
        .generators()
        .into_iter()
        .map(|g| g.into_iter().map(|x| x.rem_euclid(p as i64) as u32).collect())
        .collect();
    span_elements(p, k, &gens)
}

fn weight_elem(w: &[i64], p: u32) -> Elem {
    w.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect()
}

/// Isotropy groups `G_x` for every support pattern of `x` (a nonempty set of
/// distinct weights carrying nonzero coordinates), as element sets.
pub fn bf_isotropy(r: &Representation) -> BTreeSet<ElemSet> {
    let p = r.group().p().unwrap().get();
    let k = r.group().rank();
    let ws: Vec<Elem> = r.weights().iter().map(|(w, _)| weight_elem(w.entries(), p)).collect();
    let group = all_vectors(p, k);
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << ws.len()) {
        let support: Vec<&Elem> = (0..ws.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| &ws[i])
            .collect();
        let gx: ElemSet = group
            .iter()
            .filter(|g| support.iter().all(|w| dot(w, g, p) == 0))
            .cloned()
            .collect();
        out.insert(gx);
    }
    out
}

/// `dim_R R^H` by filtering weights against the elements of `H`.
pub fn bf_fixed_dim(r: &Representation, h: &ElemSet) -> usize {
    let p = r.group().p().unwrap().get();
    let slot = r.group().slot_real_dim();
    r.weights()
        .iter()
        .filter(|(w, _)| {
            let e = weight_elem(w.entries(), p);
            h.iter().all(|x| dot(&e, x, p) == 0)
        })
        .map(|(_, m)| m * slot)
        .sum()
}

/// The projective line `{c·w : 1 <= c < p}` as a set.
pub fn bf_line(w: &[i64], p: u32) -> ElemSet {
    let e = weight_elem(w, p);
    (1..p).map(|c| e.iter().map(|x| x * c % p).collect()).collect()
}

/// Existence by direct line bookkeeping: every line met by V must carry at
/// least as much of W as of V.
pub fn bf_decide(v: &Representation, w: &Representation) -> bool {
    let p = v.group().p().unwrap().get();
    let mut dims: BTreeMap<ElemSet, (usize, usize)> = BTreeMap::new();
    for (x, m) in v.weights() {
        dims.entry(bf_line(x.entries(), p)).or_default().0 += m;
    }
    for (x, m) in w.weights() {
        if let Some(e) = dims.get_mut(&bf_line(x.entries(), p)) {
            e.1 += m;
        }
    }
    dims.values().all(|(a, b)| a <= b)
}

fn random_weight<R: Rng>(rng: &mut R, p: u32, k: usize) -> Vec<i64> {
    loop {
        let w: Vec<i64> = (0..k).map(|_| rng.random_range(0..p) as i64).collect();
        if w.iter().any(|&x| x != 0) {
            return w;
        }
    }
}

/// A random representation with at most `max_slots` slots. With `lines` set,
/// weights are drawn as multiples of those vectors.
pub fn random_rep<R: Rng>(
    rng: &mut R,
    g: GroupDescriptor,
    max_slots: usize,
    lines: Option<&[Vec<i64>]>,
) -> Representation {
    let p = g.p().unwrap().get();
    let k = g.rank();
    let total = rng.random_range(0..=max_slots);
    let mut ws: Vec<(Vec<i64>, usize)> = Vec::new();
    for _ in 0..total {
        let w = match lines {
            Some(ls) if !ls.is_empty() && rng.random_bool(0.8) => {
                let base = ls.choose(rng).unwrap();
                let c = rng.random_range(1..p) as i64;
                base.iter().map(|x| (x * c).rem_euclid(p as i64)).collect()
            }
            _ => random_weight(rng, p, k),
        };
        match ws.iter_mut().find(|(x, _)| *x == w) {
            Some((_, m)) => *m += 1,
            None => ws.push((w, 1)),
        }
    }
    Representation::new(g, ws).unwrap()
}

/// A random p-torus problem with p in {2,3,5}, k <= 3 and at most 12 slots in
/// total. About half the time W reuses the lines of V.
pub fn random_instance<R: Rng>(rng: &mut R) -> (Representation, Representation) {
    let p = *[2u64, 3, 5].choose(rng).unwrap();
    let k = rng.random_range(1..=3);
    let g = GroupDescriptor::p_torus(p, k).unwrap();
    let v = random_rep(rng, g, 6, None);
    let v_lines: Vec<Vec<i64>> = v.weights().iter().map(|(w, _)| w.entries().to_vec()).collect();
    let w = if rng.random_bool(0.5) {
        random_rep(rng, g, 6, Some(&v_lines))
    } else {
        random_rep(rng, g, 6, None)
    };
    (v, w)
}

/// A random torus problem with small integer weights.
pub fn random_torus_instance<R: Rng>(rng: &mut R) -> (Representation, Representation) {
    let k = rng.random_range(1..=3);
    let g = GroupDescriptor::torus(k).unwrap();
    let mk = |rng: &mut R| {
        let n = rng.random_range(0..=4);
        let mut ws: Vec<(Vec<i64>, usize)> = Vec::new();
        for _ in 0..n {
            let w: Vec<i64> = loop {
                let w: Vec<i64> = (0..k).map(|_| rng.random_range(-3..=3)).collect();
                if w.iter().any(|&x| x != 0) {
                    break w;
                }
            };
            match ws.iter_mut().find(|(x, _)| *x == w) {
                Some((_, m)) => *m += 1,
                None => ws.push((w, rng.random_range(1..=2))),
            }
        }
        Representation::new(g, ws).unwrap()
    };
    let v = mk(rng);
    let w = mk(rng);
    (v, w)
}
