//! Numerical checks on synthesized maps: Monte-Carlo equivariance, zero-set
//! sampling by projected gradient descent on the sphere, and a local-PCA
//! estimate of the zero set's dimension.
//!
//! Every trial draws from its own ChaCha stream keyed by `(seed, trial)`, so
//! results do not depend on how rayon schedules the trials.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::global_bound;
use crate::error::{invalid, Result};
use crate::reps::Representation;
use crate::synth::{act, evaluate, evaluate_ambient, GroupElement, Point, SynthesizedMap};

/// `| |f(x)| - 1 |` allowed for maps without zero blocks.
pub const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerificationConfig {
    pub trials: usize,
    pub seed: u64,
    pub equiv_tol: f64,
    pub zero_tol: f64,
    /// Central finite-difference step.
    pub fd_step: f64,
    /// Singular values above `pca_cutoff * largest` count as dimensions.
    pub pca_cutoff: f64,
    pub neighborhood_radius: f64,
    /// Descent step on `|f(x)|^2` before renormalizing.
    pub step_size: f64,
    pub max_iters: usize,
    /// Neighborhoods with fewer points are skipped.
    pub min_neighbors: usize,
    /// Only the first `max_anchors` samples are used as neighborhood centers.
    pub max_anchors: Option<usize>,
}

impl Default for VerificationConfig {
    fn default() -> Self {
        VerificationConfig {
            trials: 1000,
            seed: 0,
            equiv_tol: 1e-9,
            zero_tol: 1e-7,
            fd_step: 1e-6,
            pca_cutoff: 0.1,
            neighborhood_radius: 0.05,
            step_size: 0.25,
            max_iters: 500,
            min_neighbors: 10,
            max_anchors: None,
        }
    }
}

impl VerificationConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("equiv_tol", self.equiv_tol),
            ("zero_tol", self.zero_tol),
            ("fd_step", self.fd_step),
            ("pca_cutoff", self.pca_cutoff),
            ("neighborhood_radius", self.neighborhood_radius),
            ("step_size", self.step_size),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(format!("{name} must be positive, got {v}")));
            }
        }
        if self.trials == 0 {
            return Err(invalid("trials must be at least 1"));
        }
        if self.min_neighbors < 2 {
            return Err(invalid("min_neighbors must be at least 2"));
        }
        Ok(())
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivarianceReport {
    pub trials: usize,
    /// `max |f(g x) - g f(x)|`.
    pub max_residual: f64,
    /// `max | |f(x)| - 1 |`, reported only for maps without zero blocks.
    pub max_norm_deviation: Option<f64>,
    pub passed: bool,
}

/// Monte-Carlo check of `f(g·x) = g·f(x)` with uniform `g` and uniform `x` on
/// the sphere.
pub fn check_equivariance(f: &SynthesizedMap, cfg: &VerificationConfig) -> Result<EquivarianceReport> {
    cfg.validate()?;
    let (v, w) = (f.source(), f.target());
    let n = v.num_slots();
    if n == 0 {
        return Ok(EquivarianceReport {
            trials: 0,
            max_residual: 0.0,
            max_norm_deviation: None,
            passed: true,
        });
    }
    let group = f.group();
    let track_norm = !f.has_zero_blocks();
    let (max_residual, max_norm) = (0..cfg.trials)
        .into_par_iter()
        .map(|t| -> Result<(f64, f64)> {
            let mut rng = trial_rng(cfg.seed, t);
            let g = GroupElement::random(group, &mut rng);
            let x = Point::random_on_sphere(group, n, &mut rng);
            let fx = evaluate(f, &x)?;
            let lhs = evaluate(f, &act(&g, v, &x)?)?;
            let rhs = act(&g, w, &fx)?;
            Ok((lhs.distance(&rhs), (fx.norm() - 1.0).abs()))
        })
        .try_reduce(|| (0.0, 0.0), |a, b| Ok((a.0.max(b.0), a.1.max(b.1))))?;
    let max_norm_deviation = track_norm.then_some(max_norm);
    let passed = max_residual < cfg.equiv_tol && max_norm_deviation.is_none_or(|d| d < NORM_TOL);
    Ok(EquivarianceReport {
        trials: cfg.trials,
        max_residual,
        max_norm_deviation,
        passed,
    })
}

fn objective(f: &SynthesizedMap, real: bool, coords: &[f64]) -> f64 {
    evaluate_ambient(f, &Point::from_real(real, coords)).norm_sqr()
}

fn normalize(v: &mut [f64]) -> bool {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n < 1e-300 {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= n);
    true
}

/// One projected-descent run from a random start; `None` if it does not reach
/// `|f| < zero_tol`.
fn descend(f: &SynthesizedMap, cfg: &VerificationConfig, trial: usize) -> Option<Point> {
    let group = f.group();
    let real = group.is_real();
    let mut rng = trial_rng(cfg.seed, trial);
    let mut x = Point::random_on_sphere(group, f.source().num_slots(), &mut rng).to_real();
    let h = cfg.fd_step;
    let mut grad = vec![0.0; x.len()];
    for _ in 0..=cfg.max_iters {
        if objective(f, real, &x).sqrt() < cfg.zero_tol {
            return Some(Point::from_real(real, &x));
        }
        let mut probe = x.clone();
        for i in 0..x.len() {
            probe[i] = x[i] + h;
            let up = objective(f, real, &probe);
            probe[i] = x[i] - h;
            let down = objective(f, real, &probe);
            probe[i] = x[i];
            grad[i] = (up - down) / (2.0 * h);
        }
        for (xi, gi) in x.iter_mut().zip(&grad) {
            *xi -= cfg.step_size * gi;
        }
        if !normalize(&mut x) {
            return None;
        }
    }
    None
}

/// Points of `Z_f` found by projected gradient descent on `|f(x)|^2` from
/// `cfg.trials` random starts. Empty when no start converges (as for maps into
/// `S(W)`). Results are in trial order.
pub fn sample_zero_set(f: &SynthesizedMap, cfg: &VerificationConfig) -> Result<Vec<Point>> {
    cfg.validate()?;
    if f.source().num_slots() == 0 {
        return Ok(Vec::new());
    }
    let samples: Vec<Option<Point>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| descend(f, cfg, t))
        .collect();
    Ok(samples.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionEstimate {
    pub estimated_dim: usize,
    pub n_zero_samples: usize,
    pub n_neighborhoods: usize,
    /// One spectrum per neighborhood, descending.
    pub singular_values: Vec<Vec<f64>>,
    pub bound_checked: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum DimensionOutcome {
    Estimate(DimensionEstimate),
    Inconclusive { n_zero_samples: usize, reason: String },
}

impl DimensionOutcome {
    pub fn estimate(&self) -> Option<&DimensionEstimate> {
        match self {
            DimensionOutcome::Estimate(e) => Some(e),
            DimensionOutcome::Inconclusive { .. } => None,
        }
    }

    pub fn dim(&self) -> Option<usize> {
        self.estimate().map(|e| e.estimated_dim)
    }
}

/// Number of singular values of the centered neighborhood above
/// `cutoff * largest`.
fn local_rank(points: &[&Vec<f64>], cutoff: f64) -> (usize, Vec<f64>) {
    let dim = points[0].len();
    let n = points.len();
    let mut mean = vec![0.0; dim];
    for p in points {
        for (m, x) in mean.iter_mut().zip(p.iter()) {
            *m += x / n as f64;
        }
    }
    let m = DMatrix::from_fn(n, dim, |i, j| points[i][j] - mean[j]);
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let largest = sv.first().copied().unwrap_or(0.0);
    // a collapsed neighborhood has only rounding-level spread
    if largest <= 1e-12 {
        return (0, sv);
    }
    (sv.iter().filter(|&&s| s > cutoff * largest).count(), sv)
}

/// Local-PCA dimension estimate: the median, over neighborhoods of radius
/// `cfg.neighborhood_radius`, of the number of dominant singular values.
pub fn estimate_local_dimension(samples: &[Point], cfg: &VerificationConfig) -> Result<DimensionOutcome> {
    cfg.validate()?;
    let n = samples.len();
    let inconclusive = |reason: String| {
        Ok(DimensionOutcome::Inconclusive {
            n_zero_samples: n,
            reason,
        })
    };
    if n < cfg.min_neighbors {
        return inconclusive(format!(
            "{n} samples, need at least {} for one neighborhood",
            cfg.min_neighbors
        ));
    }
    let coords: Vec<Vec<f64>> = samples.iter().map(Point::to_real).collect();
    let r2 = cfg.neighborhood_radius * cfg.neighborhood_radius;
    let anchors = cfg.max_anchors.unwrap_or(n).min(n);
    let spectra: Vec<(usize, Vec<f64>)> = (0..anchors)
        .into_par_iter()
        .filter_map(|a| {
            let nbrs: Vec<&Vec<f64>> = coords
                .iter()
                .filter(|c| {
                    c.iter()
                        .zip(&coords[a])
                        .map(|(x, y)| (x - y) * (x - y))
                        .sum::<f64>()
                        <= r2
                })
                .collect();
            (nbrs.len() >= cfg.min_neighbors).then(|| local_rank(&nbrs, cfg.pca_cutoff))
        })
        .collect();
    if spectra.is_empty() {
        return inconclusive(format!(
            "no neighborhood of radius {} holds {} samples",
            cfg.neighborhood_radius, cfg.min_neighbors
        ));
    }
    let mut counts: Vec<usize> = spectra.iter().map(|(c, _)| *c).collect();
    counts.sort_unstable();
    let estimated_dim = counts[(counts.len() - 1) / 2];
    Ok(DimensionOutcome::Estimate(DimensionEstimate {
        estimated_dim,
        n_zero_samples: n,
        n_neighborhoods: spectra.len(),
        singular_values: spectra.into_iter().map(|(_, s)| s).collect(),
        bound_checked: None,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundVerification {
    pub global_bound: i64,
    /// `dim_R U - 1` for `Z_f = S(U)`.
    pub analytic_dim: Option<i64>,
    pub numerical: DimensionOutcome,
    /// Whether the numerical estimate also meets the bound, when one exists.
    pub numerical_agrees: Option<bool>,
    pub vacuous: bool,
    pub status: Status,
}

/// Confronts the zero set of `f` with `dim_R V - dim_R W - 1`. The analytic
/// zero-set dimension decides the status; without one the result is
/// inconclusive unless the bound is vacuous.
pub fn verify_bound(
    v: &Representation,
    w: &Representation,
    f: &SynthesizedMap,
    cfg: &VerificationConfig,
) -> Result<BoundVerification> {
    if f.source() != v || f.target() != w {
        return Err(invalid("map does not go from S(V) to W of this problem"));
    }
    let bound = global_bound(v, w)?;
    let analytic = f.analytic_zero_dim();

    let samples = if analytic == Some(-1) {
        Vec::new()
    } else {
        sample_zero_set(f, cfg)?
    };
    let mut numerical = estimate_local_dimension(&samples, cfg)?;
    if let DimensionOutcome::Estimate(e) = &mut numerical {
        e.bound_checked = Some(bound);
    }
    let numerical_agrees = numerical.dim().map(|d| d as i64 >= bound);

    let vacuous = bound < 0;
    let status = match analytic {
        _ if vacuous => Status::Pass,
        Some(a) if a >= bound => Status::Pass,
        Some(_) => Status::Fail,
        None => Status::Inconclusive,
    };
    Ok(BoundVerification {
        global_bound: bound,
        analytic_dim: analytic,
        numerical,
        numerical_agrees,
        vacuous,
        status,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub config: VerificationConfig,
    pub equivariance: EquivarianceReport,
    pub bound: BoundVerification,
    pub status: Status,
}

/// Equivariance plus bound verification. FAIL if either check fails.
pub fn verify_map(
    v: &Representation,
    w: &Representation,
    f: &SynthesizedMap,
    cfg: &VerificationConfig,
) -> Result<VerificationReport> {
    let equivariance = check_equivariance(f, cfg)?;
    let bound = verify_bound(v, w, f, cfg)?;
    let status = if !equivariance.passed || bound.status == Status::Fail {
        Status::Fail
    } else {
        bound.status
    };
    Ok(VerificationReport {
        config: cfg.clone(),
        equivariance,
        bound,
        status,
    })
}
