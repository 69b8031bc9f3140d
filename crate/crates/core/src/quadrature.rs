//! Wave-vector integration at fixed frequency.
//!
//! The propagating disc `0 < q < |ω|` is mapped to `s = |qz|` through
//! `q dq = s ds`, which removes the inverse square-root singularity of
//! `1/qz` at the light cone. The evanescent range is mapped to `κ = Im qz`
//! through `q dq = κ dκ` and truncated at `κmax`. Both pieces use adaptive
//! Gauss-Legendre panels, summed in a fixed order.

use crate::error::{Error, Result};

/// Gauss-Legendre rule on `[−1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "order must be positive");
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let n = order as f64;
        for i in 0..order.div_ceil(2) {
            // Chebyshev-like initial guess, then Newton on P_n
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(order, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(order, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// `∫_lo^hi f`.
    pub fn integrate(&self, f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let dp = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, dp)
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Sum over accepted panels of `|fine − coarse|`.
    pub error: f64,
    pub panels: usize,
}

/// Adaptive bisection with a fixed Gauss-Legendre order.
#[derive(Debug, Clone)]
pub struct Adaptive {
    rule: GaussLegendre,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Adaptive {
    pub fn new(order: usize, rel_tol: f64, abs_tol: f64) -> Self {
        Adaptive {
            rule: GaussLegendre::new(order),
            rel_tol,
            abs_tol,
            max_depth: 40,
        }
    }

    pub fn integrate(&self, f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<Integral> {
        if hi <= lo {
            return Ok(Integral {
                value: 0.0,
                error: 0.0,
                panels: 0,
            });
        }
        let coarse = self.rule.integrate(f, lo, hi);
        // a first refinement gives a scale for the relative target
        let mid = 0.5 * (lo + hi);
        let fine = self.rule.integrate(f, lo, mid) + self.rule.integrate(f, mid, hi);
        let target = self.abs_tol.max(self.rel_tol * fine.abs().max(coarse.abs()));
        let mut out = Integral {
            value: 0.0,
            error: 0.0,
            panels: 0,
        };
        self.refine(f, lo, hi, coarse, target, hi - lo, 0, &mut out)?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn refine(
        &self,
        f: &impl Fn(f64) -> f64,
        lo: f64,
        hi: f64,
        whole: f64,
        target: f64,
        span: f64,
        depth: u32,
        out: &mut Integral,
    ) -> Result<()> {
        let mid = 0.5 * (lo + hi);
        let left = self.rule.integrate(f, lo, mid);
        let right = self.rule.integrate(f, mid, hi);
        let diff = (left + right - whole).abs();
        let local = target * (hi - lo) / span;
        if !diff.is_finite() || !(left + right).is_finite() {
            return Err(Error::ToleranceNotMet {
                tol: target,
                estimate: f64::INFINITY,
            });
        }
        if diff <= local || mid <= lo || mid >= hi {
            out.value += left + right;
            out.error += diff;
            out.panels += 2;
            return Ok(());
        }
        if depth >= self.max_depth {
            return Err(Error::ToleranceNotMet {
                tol: target,
                estimate: diff,
            });
        }
        self.refine(f, lo, mid, left, target, span, depth + 1, out)?;
        self.refine(f, mid, hi, right, target, span, depth + 1, out)
    }
}

/// Settings for `integrate_q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QSettings {
    pub kappa_max: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub order: usize,
    /// Gap width used for the evanescent tail bound `e^{−2κmax a}`.
    pub a: f64,
}

impl QSettings {
    /// `κmax = max(20/a, 10|ω|)`.
    pub fn for_gap(a: f64, omega: f64) -> Self {
        QSettings {
            kappa_max: (20.0 / a).max(10.0 * omega.abs()),
            rel_tol: 1e-10,
            abs_tol: 1e-300,
            order: 10,
            a,
        }
    }

    pub fn tail_bound(&self) -> f64 {
        (-2.0 * self.kappa_max * self.a).exp()
    }
}

/// Sector-resolved q integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QIntegral {
    pub propagating: Integral,
    pub evanescent: Integral,
    pub tail_bound: f64,
}

impl QIntegral {
    pub fn value(&self) -> f64 {
        self.propagating.value + self.evanescent.value
    }

    pub fn error(&self) -> f64 {
        self.propagating.error + self.evanescent.error
    }
}

/// `∫_0^∞ f(q) dq` at frequency ω, split at the light cone `q = |ω|`.
///
/// The integrand is called as `f(q, k)` with `k = |qz|` (propagating) or
/// `k = κ` (evanescent), so that it never has to rebuild `qz` from `q`.
pub fn integrate_q(f: impl Fn(f64, f64) -> f64, omega: f64, settings: &QSettings) -> Result<QIntegral> {
    let w = omega.abs();
    let rule = Adaptive::new(settings.order, settings.rel_tol, settings.abs_tol);
    let prop = |s: f64| {
        let q = (w * w - s * s).max(0.0).sqrt();
        if q == 0.0 {
            0.0
        } else {
            f(q, s) * s / q
        }
    };
    let evan = |k: f64| {
        let q = (w * w + k * k).sqrt();
        f(q, k) * k / q
    };
    Ok(QIntegral {
        propagating: rule.integrate(&prop, 0.0, w)?,
        evanescent: rule.integrate(&evan, 0.0, settings.kappa_max)?,
        tail_bound: settings.tail_bound(),
    })
}

/// `∫_0^{|ω|} f(q) dq` over the propagating disc only, called as `f(q, |qz|)`.
pub fn integrate_propagating(f: impl Fn(f64, f64) -> f64, omega: f64, settings: &QSettings) -> Result<Integral> {
    let w = omega.abs();
    let rule = Adaptive::new(settings.order, settings.rel_tol, settings.abs_tol);
    let prop = |s: f64| {
        let q = (w * w - s * s).max(0.0).sqrt();
        if q == 0.0 {
            0.0
        } else {
            f(q, s) * s / q
        }
    };
    rule.integrate(&prop, 0.0, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        let rule = GaussLegendre::new(6);
        let wsum: f64 = rule.weights.iter().sum();
        assert!((wsum - 2.0).abs() < 1e-14);
        assert!(rule.nodes.windows(2).all(|p| p[0] < p[1]));
        let v = rule.integrate(&|x: f64| x.powi(11) + 3.0 * x.powi(4), 0.0, 1.0);
        assert!((v - (1.0 / 12.0 + 3.0 / 5.0)).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_peaks() {
        let ad = Adaptive::new(10, 1e-12, 0.0);
        let r = ad.integrate(&|x: f64| 1.0 / (1e-4 + x * x), -1.0, 1.0).unwrap();
        let exact = 2.0 / 1e-2 * (1.0f64 / 1e-2).atan();
        assert!(((r.value - exact) / exact).abs() < 1e-11);
    }

    #[test]
    fn light_cone_substitution() {
        // ∫_0^ω q/qz dq = ω
        let s = QSettings::for_gap(1.0, 2.0);
        let r = integrate_propagating(|q, qz| q / qz, 2.0, &s).unwrap();
        assert!((r.value - 2.0).abs() < 1e-14);
    }

    #[test]
    fn evanescent_tail() {
        let omega = 1.0;
        let a = 0.4;
        let f = |q: f64, k: f64| if q > omega { q * (-2.0 * k * a).exp() } else { 0.0 };
        let s = QSettings::for_gap(a, omega);
        assert!(s.tail_bound() < 1e-17);
        let base = integrate_q(f, omega, &s).unwrap();
        let wide = integrate_q(
            f,
            omega,
            &QSettings {
                kappa_max: 2.0 * s.kappa_max,
                ..s
            },
        )
        .unwrap();
        assert!((base.evanescent.value - wide.evanescent.value).abs() < 1e-10 * base.evanescent.value);
        // ∫ κ e^{−2κa} dκ = 1/(4a²)
        assert!((base.evanescent.value - 1.0 / (4.0 * a * a)).abs() < 1e-9);
    }

    #[test]
    fn refinement_error_estimate_is_honest() {
        let f = |x: f64| (5.0 * x).sin() * (-x).exp();
        let exact = 5.0 / 26.0 * (1.0 - (-3.0f64).exp() * ((15.0f64).cos() + (15.0f64).sin() / 5.0));
        let r = Adaptive::new(4, 1e-9, 0.0).integrate(&f, 0.0, 3.0).unwrap();
        assert!((r.value - exact).abs() <= r.error.max(1e-12));
    }
}
