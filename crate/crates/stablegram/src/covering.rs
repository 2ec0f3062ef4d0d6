//! Dyadic-block pseudo-metrics on function classes, greedy covering
//! numbers, and the entropy-condition fit.
//!
//! d_j(f, g) = j |a_j(f) - a_j(g)| and rho_k = max over 2^k <= j < 2^{k+1};
//! the covering number N(eps, F, rho_k) is estimated by greedy set cover on
//! a finite discretization. Greedy returns a valid cover, so the reported
//! size can only overestimate the true covering number; the entropy check
//! stays conservative.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::funcs::{fourier_coeffs, FourierCoeffs, FunctionClass, FunctionSpec};

/// rho_k(f, g) = max_{2^k <= j < 2^{k+1}} j |a_j(f) - a_j(g)|, evaluated on
/// precomputed coefficient tables. Both tables must reach lag 2^{k+1} - 1.
pub fn rho_k(f: &FourierCoeffs, g: &FourierCoeffs, k: usize) -> Result<f64> {
    let hi = (1usize << (k + 1)) - 1;
    if f.truncation() < hi || g.truncation() < hi {
        return Err(Error::Truncation(format!(
            "rho_{k} needs coefficients through lag {hi}, have {} and {}",
            f.truncation(),
            g.truncation()
        )));
    }
    let mut m: f64 = 0.0;
    for j in (1usize << k)..=hi {
        m = m.max(j as f64 * (f.coeff(j) - g.coeff(j)).abs());
    }
    Ok(m)
}

/// rho_k between two function specs, computing what it needs.
pub fn pseudo_metric_rho_k(f: &FunctionSpec, g: &FunctionSpec, k: usize) -> Result<f64> {
    let hi = (1usize << (k + 1)) - 1;
    rho_k(&fourier_coeffs(f, hi)?, &fourier_coeffs(g, hi)?, k)
}

/// Member-by-member rho_k distance matrix for a class.
pub struct CoveringContext {
    tables: Vec<FourierCoeffs>,
}

impl CoveringContext {
    /// Precompute coefficient tables deep enough for every k in 0..=k_max.
    pub fn new(class: &FunctionClass, k_max: usize) -> Result<Self> {
        let hi = (1usize << (k_max + 1)) - 1;
        Ok(Self {
            tables: class.coeff_tables(hi)?,
        })
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    /// Symmetric rho_k matrix, row-major.
    pub fn distance_matrix(&self, k: usize) -> Result<Vec<f64>> {
        let m = self.tables.len();
        let mut d = vec![0.0; m * m];
        for i in 0..m {
            for j in i + 1..m {
                let v = rho_k(&self.tables[i], &self.tables[j], k)?;
                d[i * m + j] = v;
                d[j * m + i] = v;
            }
        }
        Ok(d)
    }
}

/// Greedy cover of the members at radius eps under a distance matrix;
/// returns the chosen center indices. Coverage uses strict inequality,
/// matching the covering-number definition sup min rho < eps.
///
/// Candidate gain counts are maintained incrementally, so the whole cover
/// costs O(members^2) regardless of how many balls it takes.
pub fn greedy_cover(dist: &[f64], members: usize, eps: f64) -> Vec<usize> {
    let mut uncovered: Vec<bool> = vec![true; members];
    let mut remaining = members;
    // counts[c] = number of still-uncovered members within eps of c.
    let mut counts: Vec<usize> = (0..members)
        .map(|c| (0..members).filter(|&i| dist[c * members + i] < eps).count())
        .collect();
    let mut centers = Vec::new();
    while remaining > 0 {
        // Ties go to the lowest index so the cover is deterministic.
        let (best, &best_count) = counts
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .expect("nonempty class");
        if best_count == 0 {
            // Every ball has strictly positive radius around its own
            // center, so this only happens for eps = 0 or NaN distances;
            // fall back to singleton covers.
            for i in 0..members {
                if uncovered[i] {
                    centers.push(i);
                }
            }
            return centers;
        }
        centers.push(best);
        for i in 0..members {
            if uncovered[i] && dist[best * members + i] < eps {
                uncovered[i] = false;
                remaining -= 1;
                for c in 0..members {
                    if dist[c * members + i] < eps {
                        counts[c] -= 1;
                    }
                }
            }
        }
    }
    centers
}

/// Size of a greedy eps-cover of the class under rho_k.
pub fn covering_number(class: &FunctionClass, eps: f64, k: usize) -> Result<usize> {
    if !(eps > 0.0) {
        return Err(Error::param("eps", eps, "covering radius must be positive"));
    }
    let ctx = CoveringContext::new(class, k)?;
    let dist = ctx.distance_matrix(k)?;
    Ok(greedy_cover(&dist, ctx.len(), eps).len())
}

/// One grid point of the entropy fit.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EntropyPoint {
    pub k: usize,
    pub eps: f64,
    pub covering: usize,
}

/// Least-squares fit of log N(eps, F, rho_k) against log(2^k / eps).
#[derive(Debug, Clone, Serialize)]
pub struct EntropyFitReport {
    pub points: Vec<EntropyPoint>,
    /// Fitted slope of log N in log(2^k / eps).
    pub slope: f64,
    /// Fitted intercept, i.e. log of the empirical constant.
    pub log_const: f64,
    pub beta_candidate: f64,
    pub alpha: f64,
    /// slope <= beta_candidate (the entropy condition with this beta).
    pub slope_within_beta: bool,
    /// beta_candidate < alpha (the theorem's admissibility constraint).
    pub beta_admissible: bool,
}

/// Covering numbers over (k, eps) grids and the joint log-log slope.
pub fn entropy_condition_fit(
    class: &FunctionClass,
    alpha: f64,
    beta_candidate: f64,
    eps_grid: &[f64],
    k_grid: &[usize],
) -> Result<EntropyFitReport> {
    if !(beta_candidate > 0.0) {
        return Err(Error::param("beta_candidate", beta_candidate, "must be positive"));
    }
    if eps_grid.is_empty() || k_grid.is_empty() {
        return Err(Error::Degenerate("entropy fit needs nonempty grids".into()));
    }
    let k_max = *k_grid.iter().max().unwrap();
    let ctx = CoveringContext::new(class, k_max)?;
    let mut points = Vec::new();
    for &k in k_grid {
        let dist = ctx.distance_matrix(k)?;
        for &eps in eps_grid {
            if !(eps > 0.0) {
                return Err(Error::param("eps", eps, "covering radius must be positive"));
            }
            points.push(EntropyPoint {
                k,
                eps,
                covering: greedy_cover(&dist, ctx.len(), eps).len(),
            });
        }
    }
    // Regress log N on log(2^k / eps).
    let xy: Vec<(f64, f64)> = points
        .iter()
        .map(|p| {
            (
                ((1u64 << p.k) as f64 / p.eps).ln(),
                (p.covering as f64).ln(),
            )
        })
        .collect();
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Degenerate(
            "entropy fit needs at least two distinct 2^k/eps values".into(),
        ));
    }
    let slope = sxy / sxx;
    let log_const = my - slope * mx;
    Ok(EntropyFitReport {
        points,
        slope,
        log_const,
        beta_candidate,
        alpha,
        slope_within_beta: slope <= beta_candidate,
        beta_admissible: beta_candidate < alpha,
    })
}
