//! Tail estimate check for random quadratic forms
//! Q_n(b) = sum_{1 <= s != t <= n} b_{s,t} eps_s eps_t.
//!
//! The bound under test has the shape
//! P(Q > x) <= D (1 + log+ x) x^(-alpha) Gamma_n(b) with
//! Gamma_n(b) = sum_{s != t} |b_{s,t}|^alpha (1 + log+ 1/|b_{s,t}|),
//! where the constant D is existential. The experiment reports the
//! empirical ratio envelope r(x) = P_hat(Q > x) x^alpha / ((1 + log+ x) Gamma_n(b))
//! so that ratios can be compared across coefficient choices; no absolute
//! target value is asserted.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{ksum, log_plus, KahanSum};
use crate::rng::RngStream;
use crate::stable::{sample_sas, StableLaw};

use super::{SeedsEcho, CH_REPLICATES};

/// Coefficient array b_{s,t}, 1 <= s != t <= n, with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticFormSpec {
    n: usize,
    /// Row-major dense coefficients including the (zero) diagonal.
    b: Vec<f64>,
    /// Set when the array is the symmetric Toeplitz b_{s,t} = a_{|s-t|};
    /// holds (a_1, a_2, ...) and enables the O(n K) sampling path.
    toeplitz: Option<Vec<f64>>,
}

impl QuadraticFormSpec {
    pub fn dense(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Degenerate("coefficient array must be square".into()));
        }
        let mut b = Vec::with_capacity(n * n);
        for (s, row) in rows.iter().enumerate() {
            for (t, &v) in row.iter().enumerate() {
                if s == t && v != 0.0 {
                    return Err(Error::Degenerate(
                        "quadratic-form coefficients must have a zero diagonal".into(),
                    ));
                }
                b.push(v);
            }
        }
        Ok(Self {
            n,
            b,
            toeplitz: None,
        })
    }

    /// Symmetric Toeplitz constructor b_{s,t} = a_{|s-t|} from (a_1, a_2, ...).
    pub fn toeplitz(n: usize, a: &[f64]) -> Result<Self> {
        if n < 2 {
            return Err(Error::param("n", n as f64, "needs at least two indices"));
        }
        let mut b = vec![0.0; n * n];
        for s in 0..n {
            for t in 0..n {
                if s != t {
                    let lag = s.abs_diff(t);
                    b[s * n + t] = a.get(lag - 1).copied().unwrap_or(0.0);
                }
            }
        }
        Ok(Self {
            n,
            b,
            toeplitz: Some(a.to_vec()),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, s: usize, t: usize) -> f64 {
        self.b[s * self.n + t]
    }

    /// Gamma_n(b) = sum_{s != t} |b|^alpha (1 + log+ 1/|b|); zero entries
    /// contribute nothing.
    pub fn gamma_n(&self, alpha: f64) -> f64 {
        ksum(self.b.iter().map(|&v| {
            let av = v.abs();
            if av == 0.0 {
                0.0
            } else {
                av.powf(alpha) * (1.0 + log_plus(1.0 / av))
            }
        }))
    }

    /// Evaluate Q on one innovation vector.
    pub fn evaluate(&self, eps: &[f64]) -> f64 {
        debug_assert_eq!(eps.len(), self.n);
        if let Some(a) = &self.toeplitz {
            // Q = 2 sum_k a_k sum_t eps_t eps_{t+k}
            let mut acc = KahanSum::new();
            for (k, &ak) in a.iter().enumerate() {
                if ak == 0.0 || k + 1 >= self.n {
                    continue;
                }
                let mut inner = KahanSum::new();
                for t in 0..self.n - (k + 1) {
                    inner.add(eps[t] * eps[t + k + 1]);
                }
                acc.add(2.0 * ak * inner.value());
            }
            return acc.value();
        }
        let mut acc = KahanSum::new();
        for s in 0..self.n {
            for t in 0..self.n {
                let v = self.b[s * self.n + t];
                if v != 0.0 {
                    acc.add(v * eps[s] * eps[t]);
                }
            }
        }
        acc.value()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QformPerX {
    pub x: f64,
    pub exceedances: usize,
    pub p_hat: f64,
    /// r(x) = p_hat x^alpha / ((1 + log+ x) Gamma_n(b)); None for a
    /// degenerate (all-zero) spec.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct QformOutput {
    pub report: QformTailReport,
    /// Raw Q values, one per replicate.
    pub q_samples: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct QformTailReport {
    pub alpha: f64,
    pub n: usize,
    pub replicates: usize,
    pub gamma_n: f64,
    /// All coefficients zero: the bound is vacuous and ratios are undefined.
    pub degenerate: bool,
    pub seeds: SeedsEcho,
    pub per_x: Vec<QformPerX>,
    /// max over the x grid of r(x), when defined.
    pub max_ratio: Option<f64>,
}

/// Empirical exceedance probabilities of Q over the x grid and the implied
/// constant ratios.
pub fn quadratic_form_tail_check(
    spec: &QuadraticFormSpec,
    alpha: f64,
    x_grid: &[f64],
    replicates: usize,
    stream: RngStream,
) -> Result<QformOutput> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::param("alpha", alpha, "must lie in (0, 2)"));
    }
    if x_grid.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::param("x", f64::NAN, "the x grid must be positive"));
    }
    let gamma_n = spec.gamma_n(alpha);
    let degenerate = gamma_n == 0.0;
    let law = StableLaw::sas(alpha, 1.0)?;
    let rep_stream = stream.substream(CH_REPLICATES);
    let qs: Vec<f64> = (0..replicates)
        .into_par_iter()
        .map(|r| {
            let eps = sample_sas(&law, rep_stream.substream(r as u64), spec.size())
                .expect("validated parameters");
            spec.evaluate(&eps)
        })
        .collect();

    let mut per_x = Vec::with_capacity(x_grid.len());
    for &x in x_grid {
        let exceedances = qs.iter().filter(|&&q| q > x).count();
        let p_hat = exceedances as f64 / replicates as f64;
        let ratio = if degenerate {
            None
        } else {
            Some(p_hat * x.powf(alpha) / ((1.0 + log_plus(x)) * gamma_n))
        };
        per_x.push(QformPerX {
            x,
            exceedances,
            p_hat,
            ratio,
        });
    }
    let max_ratio = per_x
        .iter()
        .filter_map(|p| p.ratio)
        .fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.max(r))));
    Ok(QformOutput {
        report: QformTailReport {
            alpha,
            n: spec.size(),
            replicates,
            gamma_n,
            degenerate,
            seeds: stream.into(),
            per_x,
            max_ratio,
        },
        q_samples: qs,
    })
}
