//! Acceptance suite. Prints one `[PASS]`/`[FAIL]` line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use equimap_core::bounds::{
    decide_map_existence, global_bound, infinite_witness, refined_bounds, Repeat, Verdict,
    WeightStream,
};
use equimap_core::exactalg::{annihilator, span_of_subsets, FpSubspace, FpVector, Prime};
use equimap_core::reps::{isotropy_subgroups, line_partition, GroupDescriptor, Representation};
use equimap_core::synth::{projection_map, synthesize_equivariant, synthesize_partial, Block};
use equimap_core::verify::{check_equivariance, estimate_local_dimension, sample_zero_set, VerificationConfig};
use equimap_core::Weight;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, &'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, limit: Duration) -> Result<String, String> {
    let e = t.elapsed();
    check(e < limit, format!("took {e:.2?}, limit {limit:?}"))?;
    Ok(format!("{e:.2?}"))
}

fn ac1() -> Outcome {
    let t = Instant::now();
    let g = GroupDescriptor::p_torus(2, 1).unwrap();
    let v = Representation::new(g, vec![(vec![1], 5)]).unwrap();
    let w = Representation::new(g, vec![(vec![1], 2)]).unwrap();
    let bound = global_bound(&v, &w).unwrap();
    check(bound == 2, format!("global bound {bound}"))?;
    let f = projection_map(&v, &[0, 1]).unwrap();
    check(f.target() == &w, "projection target is not W")?;
    let analytic = f.analytic_zero_dim();
    check(analytic == Some(2), format!("analytic dim {analytic:?}"))?;
    let cfg = VerificationConfig {
        trials: 3000,
        seed: 1,
        neighborhood_radius: 0.25,
        max_anchors: Some(200),
        ..Default::default()
    };
    let zs = sample_zero_set(&f, &cfg).unwrap();
    check(zs.len() >= 100, format!("{} zero samples", zs.len()))?;
    let est = estimate_local_dimension(&zs, &cfg).unwrap();
    check(est.dim() == Some(2), format!("estimate {:?}", est.dim()))?;
    let time = within(t, Duration::from_secs(10))?;
    Ok(format!("bound 2, analytic 2, estimate 2 from {} samples, {time}", zs.len()))
}

struct Sweep {
    instances: Vec<(Representation, Representation)>,
    torus: Vec<(Representation, Representation)>,
}

fn sweep() -> Sweep {
    let mut r = rng(2024);
    Sweep {
        instances: (0..250).map(|_| random_instance(&mut r)).collect(),
        torus: (0..100).map(|_| random_torus_instance(&mut r)).collect(),
    }
}

fn ac2(s: &Sweep) -> Outcome {
    let t = Instant::now();
    let (mut exists, mut refused) = (0, 0);
    for (i, (v, w)) in s.instances.iter().enumerate() {
        let d = decide_map_existence(v, w).unwrap();
        match d.verdict {
            Verdict::Exists => {
                let f = synthesize_equivariant(v, w).map_err(|e| format!("#{i}: {e}"))?;
                let cfg = VerificationConfig {
                    trials: 1000,
                    seed: i as u64,
                    ..Default::default()
                };
                let rep = check_equivariance(&f, &cfg).unwrap();
                check(
                    rep.max_residual < 1e-9 && rep.max_norm_deviation.is_none_or(|d| d < 1e-12),
                    format!("#{i}: {rep:?}"),
                )?;
                check(!f.has_zero_blocks(), format!("#{i}: zero block in witness"))?;
                exists += 1;
            }
            _ => {
                check(synthesize_equivariant(v, w).is_err(), format!("#{i}: not refused"))?;
                refused += 1;
            }
        }
    }
    let time = within(t, Duration::from_secs(60))?;
    Ok(format!("{exists} witnesses verified, {refused} refusals, {time}"))
}

fn ac3(s: &Sweep) -> Outcome {
    let mut n = 0;
    for (i, (v, w)) in s.instances.iter().enumerate() {
        if v.real_dim() > w.real_dim() {
            let d = decide_map_existence(v, w).unwrap();
            check(d.verdict == Verdict::NotExists, format!("#{i}: {:?}", d.verdict))?;
            n += 1;
        }
    }
    for (i, (v, w)) in s.torus.iter().enumerate() {
        if v.real_dim() > w.real_dim() {
            let d = decide_map_existence(v, w).unwrap();
            check(
                d.verdict == Verdict::NonexistenceByDimension,
                format!("torus #{i}: {:?}", d.verdict),
            )?;
            n += 1;
        }
    }
    check(n > 0, "no instance with dim V > dim W")?;
    Ok(format!("{n} instances with dim V > dim W all refused"))
}

fn ac4(s: &Sweep) -> Outcome {
    let mut n = 0;
    for (i, (v, w)) in s.instances.iter().chain(&s.torus).enumerate() {
        if v.group().is_real() {
            continue;
        }
        let b = global_bound(v, w).unwrap();
        check(b.rem_euclid(2) == 1, format!("#{i}: bound {b} is even"))?;
        if v.real_dim() > w.real_dim() {
            check(b >= 1, format!("#{i}: bound {b} < 1"))?;
        }
        n += 1;
    }
    Ok(format!("{n} odd-p and torus bounds odd"))
}

fn ac5(s: &Sweep) -> Outcome {
    let mut entries = 0;
    for (i, (v, w)) in s.instances.iter().enumerate() {
        let p = v.group().p().unwrap().get();
        let rep = refined_bounds(v, w).unwrap();
        let first = &rep.per_subgroup[0];
        check(
            first.subgroup.is_trivial() && first.bound == global_bound(v, w).unwrap(),
            format!("#{i}: H = {{0}} entry {first:?}"),
        )?;
        for e in &rep.per_subgroup {
            let h = subgroup_elements(&e.subgroup, p);
            let want = bf_fixed_dim(v, &h) as i64 - bf_fixed_dim(w, &h) as i64 - 1;
            check(e.bound == want, format!("#{i}: H = {}: {} vs {want}", e.subgroup, e.bound))?;
            entries += 1;
        }
    }
    Ok(format!("{entries} per-subgroup bounds match the filtering oracle"))
}

/// W built on the lines of V: each weight of V is kept with full multiplicity
/// (saturating its line) or cut down (violating it), up to a random multiple.
fn on_lines_instance<R: Rng>(r: &mut R) -> (Representation, Representation) {
    let p = [3u64, 5][r.random_range(0..2)];
    let k = r.random_range(1..=3);
    let g = GroupDescriptor::p_torus(p, k).unwrap();
    let v = random_rep(r, g, 6, None);
    let mut ws: Vec<(Vec<i64>, usize)> = Vec::new();
    for (x, m) in v.weights() {
        let c = r.random_range(1..p) as i64;
        let y: Vec<i64> = x.entries().iter().map(|e| (e * c).rem_euclid(p as i64)).collect();
        let mult = if r.random_bool(0.6) { *m } else { r.random_range(0..*m) };
        if mult == 0 {
            continue;
        }
        match ws.iter_mut().find(|(z, _)| *z == y) {
            Some((_, n)) => *n += mult,
            None => ws.push((y, mult)),
        }
    }
    (v.clone(), Representation::new(g, ws).unwrap())
}

fn ac6() -> Outcome {
    let mut r = rng(66);
    let mut tight = 0;
    for i in 0..50 {
        let (v, w) = if i % 2 == 0 {
            random_instance(&mut r)
        } else {
            on_lines_instance(&mut r)
        };
        let f = synthesize_partial(&v, &w).unwrap();
        let dim = f.analytic_zero_dim().unwrap();
        let bound = global_bound(&v, &w).unwrap();
        check(dim >= bound, format!("#{i}: {dim} < {bound}"))?;
        let (lv, lw) = (line_partition(&v), line_partition(&w));
        let on_lines = lw.lines.iter().all(|l| lv.line_of(&l.representative).is_some());
        // satisfied lines (dim W_L >= dim V_L) must be saturated
        let saturated = lv.lines.iter().all(|l| {
            lw.line_of(&l.representative).map_or(0, |m| m.real_dim) <= l.real_dim
        });
        if on_lines && saturated {
            check(dim == bound, format!("#{i}: {dim} != {bound} in the tight case"))?;
            tight += 1;
        }
    }
    check(tight >= 10, format!("only {tight} tight instances"))?;
    Ok(format!("50 instances meet the bound, {tight} tight cases exact"))
}

fn ac7() -> Outcome {
    let g = GroupDescriptor::p_torus(3, 1).unwrap();
    let w = Representation::new(g, vec![(vec![1], 2)]).unwrap();
    check(w.d() == 2, "d(W) != 2")?;
    let stream = WeightStream::new(vec![Weight::from(vec![1])], Repeat::Cycle).unwrap();
    let mut got = Vec::new();
    for target in [20, 40, 80] {
        let wit = infinite_witness(stream.iter(), &w, target).unwrap();
        let want = wit.sub_rep.real_dim() as i64 - w.real_dim() as i64 - 1;
        check(wit.bound == want, format!("target {target}: {} vs {want}", wit.bound))?;
        got.push(wit.bound);
    }
    check(got == [15, 35, 75], format!("bounds {got:?}"))?;
    Ok("bounds 15, 35, 75".into())
}

fn ac8() -> Outcome {
    let t = Instant::now();
    let mut subspaces = 0;
    for p in [2u64, 3, 5] {
        let prime = Prime::new(p).unwrap();
        for k in 1..=3usize {
            let nonzero: Vec<FpVector> = all_vectors(p as u32, k)
                .into_iter()
                .filter(|v| v.iter().any(|&x| x != 0))
                .map(|v| FpVector::new(prime, &v.iter().map(|&x| x as i64).collect::<Vec<_>>()))
                .collect();
            let mut all = span_of_subsets(&nonzero).unwrap();
            all.push(FpSubspace::zero(prime, k));
            // brute force: spans of pairs give every subspace of rank <= 2,
            // and rank 3 only occurs as the whole space
            let vs = all_vectors(p as u32, k);
            let mut bf: BTreeSet<ElemSet> = BTreeSet::new();
            for a in &vs {
                for b in &vs {
                    bf.insert(span_elements(p as u32, k, &[a.clone(), b.clone()]));
                }
            }
            bf.insert(vs.iter().cloned().collect());
            let got: BTreeSet<ElemSet> = all.iter().map(elements).collect();
            check(got == bf && got.len() == all.len(), format!("p={p} k={k}: subspace count"))?;
            let lines = all.iter().filter(|s| s.rank() == 1).count() as u64;
            let want = (p.pow(k as u32) - 1) / (p - 1);
            check(lines == want, format!("p={p} k={k}: {lines} lines, want {want}"))?;
            for s in &all {
                let a = annihilator(s);
                check(annihilator(&a) == *s, format!("p={p} k={k}: involution fails at {s}"))?;
                check(
                    elements(&a) == bf_annihilator(p as u32, k, &elements(s)),
                    format!("p={p} k={k}: annihilator of {s}"),
                )?;
                subspaces += 1;
            }
        }
    }
    let mut r = rng(88);
    let mut reps = 0;
    while reps < 500 {
        let p = [2u64, 3][r.random_range(0..2)];
        let k = r.random_range(1..=3);
        let g = GroupDescriptor::p_torus(p, k).unwrap();
        let v = random_rep(&mut r, g, 6, None);
        if v.weights().is_empty() || v.weights().len() > 4 {
            continue;
        }
        let got: BTreeSet<ElemSet> = isotropy_subgroups(&v)
            .iter()
            .map(|h| subgroup_elements(h, p as u32))
            .collect();
        check(got == bf_isotropy(&v), format!("isotropy of {v}"))?;
        reps += 1;
    }
    let time = within(t, Duration::from_secs(30))?;
    Ok(format!("{subspaces} subspaces, {reps} isotropy lattices, {time}"))
}

fn elements(s: &FpSubspace) -> ElemSet {
    let gens: Vec<Elem> = s.basis().iter().map(|b| b.entries().to_vec()).collect();
    span_elements(s.p().get(), s.ambient_rank(), &gens)
}

fn ac9() -> Outcome {
    let mut r = rng(99);
    let mut faults = 0;
    let mut min_residual = f64::INFINITY;
    while faults < 20 {
        let (v, w) = random_instance(&mut r);
        let Some(p) = v.group().p().filter(|p| p.get() > 2) else { continue };
        let Ok(f) = synthesize_equivariant(&v, &w) else { continue };
        let assigns: Vec<(usize, u32)> = f
            .blocks()
            .iter()
            .enumerate()
            .filter_map(|(i, b)| match b {
                Block::Assign { exponent, .. } => Some((i, *exponent)),
                Block::Zero { .. } => None,
            })
            .collect();
        if assigns.is_empty() {
            continue;
        }
        let (i, e) = assigns[r.random_range(0..assigns.len())];
        let shift = r.random_range(1..p.get());
        let bad = f.with_exponent(i, (e + shift) % p.get()).unwrap();
        let cfg = VerificationConfig {
            trials: 1000,
            seed: faults as u64,
            ..Default::default()
        };
        let rep = check_equivariance(&bad, &cfg).unwrap();
        check(rep.max_residual > 0.1 && !rep.passed, format!("fault {faults}: {rep:?}"))?;
        min_residual = min_residual.min(rep.max_residual);
        faults += 1;
    }
    Ok(format!("20/20 faults flagged, smallest residual {min_residual:.3}"))
}

fn main() {
    let s = sweep();
    let criteria: [Criterion; 9] = [
        ("AC1", "antipodal R^5 -> R^2 zero set has dimension 2", Box::new(ac1)),
        ("AC2", "decision/witness duality", Box::new(|| ac2(&s))),
        ("AC3", "pigeonhole nonexistence", Box::new(|| ac3(&s))),
        ("AC4", "parity of complex bounds", Box::new(|| ac4(&s))),
        ("AC5", "refined bound coherence", Box::new(|| ac5(&s))),
        ("AC6", "partial constructions meet the bound", Box::new(ac6)),
        ("AC7", "growing witness bounds", Box::new(ac7)),
        ("AC8", "exact algebra against enumeration", Box::new(ac8)),
        ("AC9", "fault detection", Box::new(ac9)),
    ];
    let mut failed = 0;
    for (id, name, run) in &criteria {
        match run() {
            Ok(detail) => println!("[PASS] {id} {name}: {detail}"),
            Err(why) => {
                println!("[FAIL] {id} {name}: {why}");
                failed += 1;
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
