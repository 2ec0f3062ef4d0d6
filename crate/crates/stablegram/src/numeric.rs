//! Small numerical utilities shared across modules.

/// Compensated (Kahan–Neumaier) accumulator.
///
/// The spectral identities in this crate are asserted to 1e-9 even on
/// paths with large cancellations, so plain accumulation is not enough.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated sum of an iterator.
pub fn ksum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    let mut acc = KahanSum::new();
    for x in iter {
        acc.add(x);
    }
    acc.value()
}

/// Adaptive Simpson quadrature on [a, b] with an absolute tolerance.
///
/// Returns `None` when the recursion depth is exhausted before the
/// tolerance is met. Callers are expected to split at known breakpoints
/// of the integrand first.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, abs_tol: f64) -> Option<f64> {
    adaptive_simpson_panels(f, a, b, abs_tol, 1)
}

/// Adaptive Simpson started from `panels` uniform subintervals.
///
/// The initial subdivision must resolve the fastest oscillation of the
/// integrand; a dyadic refinement that starts from a single panel can
/// alias a periodic integrand whose period divides the probe spacing and
/// converge to a wrong value.
pub fn adaptive_simpson_panels<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    panels: usize,
) -> Option<f64> {
    if a == b {
        return Some(0.0);
    }
    let panels = panels.max(1);
    let tol = abs_tol / panels as f64;
    let width = (b - a) / panels as f64;
    let mut total = KahanSum::new();
    for i in 0..panels {
        let x0 = a + i as f64 * width;
        let x1 = if i + 1 == panels { b } else { x0 + width };
        let fa = f(x0);
        let fb = f(x1);
        let m = 0.5 * (x0 + x1);
        let fm = f(m);
        let whole = (x1 - x0) / 6.0 * (fa + 4.0 * fm + fb);
        total.add(simpson_rec(f, x0, x1, fa, fm, fb, whole, tol, 48)?);
    }
    Some(total.value())
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Option<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Some(left + right + delta / 15.0);
    }
    if depth == 0 {
        return None;
    }
    let half = 0.5 * tol;
    let l = simpson_rec(f, a, m, fa, flm, fm, left, half, depth - 1)?;
    let r = simpson_rec(f, m, b, fm, frm, fb, right, half, depth - 1)?;
    Some(l + r)
}

/// log^+(x) = max(log x, 0).
#[inline]
pub fn log_plus(x: f64) -> f64 {
    if x > 1.0 {
        x.ln()
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_recovers_cancellation() {
        let mut s = KahanSum::new();
        s.add(1e16);
        s.add(1.0);
        s.add(-1e16);
        assert_eq!(s.value(), 1.0);
    }

    #[test]
    fn simpson_polynomial_is_exact() {
        let v = adaptive_simpson(&|x: f64| x * x * x, 0.0, 2.0, 1e-12).unwrap();
        assert!((v - 4.0).abs() < 1e-10);
    }

    #[test]
    fn simpson_oscillatory_needs_panels() {
        // int_0^pi cos(40 x) dx = sin(40 pi)/40, essentially 0. A single
        // starting panel aliases this integrand (every dyadic probe point
        // hits a crest); a fine initial grid does not.
        let f = |x: f64| (40.0 * x).cos();
        let v = adaptive_simpson_panels(&f, 0.0, std::f64::consts::PI, 1e-11, 101).unwrap();
        assert!(v.abs() < 1e-9, "value {v}");
    }

    #[test]
    fn log_plus_branches() {
        assert_eq!(log_plus(0.5), 0.0);
        assert_eq!(log_plus(1.0), 0.0);
        assert!((log_plus(std::f64::consts::E) - 1.0).abs() < 1e-15);
    }
}
