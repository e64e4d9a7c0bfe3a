use libm::erfc;
use statrs::function::beta::beta_reg;
use statrs::function::gamma::ln_gamma;

use super::{SpectrumError, WeightSpectrum};

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Gaussian tail `Q(x) = erfc(x / sqrt 2) / 2`.
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// `sum_w A(w) Q(sqrt(2 w R Eb/N0))`.
pub fn union_bound(spectrum: &WeightSpectrum, rate: f64, ebn0_db: f64) -> f64 {
    let e = db_to_linear(ebn0_db);
    spectrum
        .iter()
        .map(|(w, a)| a as f64 * q_function((2.0 * w as f64 * rate * e).sqrt()))
        .sum()
}

/// Sphere-packing lower bound for `(n, k)` codes on the AWGN channel, with
/// the cone half-angle solved once.
#[derive(Clone, Copy, Debug)]
pub struct SpherePacking {
    pub n: usize,
    pub k: usize,
    /// Solves `Omega_n(theta) = 2^-k`.
    pub theta: f64,
    /// `|Omega_n(theta) - 2^-k| / 2^-k` at the returned angle.
    pub residual: f64,
}

/// Normalized solid-angle fraction of a cone of half-angle `theta` in
/// `R^n`, so that `Omega_n(pi) = 1`.
pub fn solid_angle_fraction(n: usize, theta: f64) -> f64 {
    let a = (n as f64 - 1.0) / 2.0;
    let s2 = theta.sin().powi(2).min(1.0);
    let half = 0.5 * beta_reg(a, 0.5, s2);
    if theta <= std::f64::consts::FRAC_PI_2 {
        half
    } else {
        1.0 - half
    }
}

impl SpherePacking {
    pub fn new(n: usize, k: usize) -> Result<Self, SpectrumError> {
        if !(n > k && k >= 1) {
            return Err(SpectrumError::Bound(format!(
                "need n > k >= 1, got n={n} k={k}"
            )));
        }
        let target = (-(k as f64) * std::f64::consts::LN_2).exp();
        let (mut lo, mut hi) = (0.0f64, std::f64::consts::PI);
        for _ in 0..2000 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if solid_angle_fraction(n, mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let res = |t: f64| ((solid_angle_fraction(n, t) - target) / target).abs();
        let theta = if res(lo) <= res(hi) { lo } else { hi };
        let residual = res(theta);
        if residual > 1e-9 {
            return Err(SpectrumError::Bound(format!(
                "cone angle solve did not converge (relative residual {residual:e})"
            )));
        }
        Ok(SpherePacking {
            n,
            k,
            theta,
            residual,
        })
    }

    /// The bound at `ebn0_db`: the probability that the noisy point leaves
    /// the cone, with `A = sqrt(2 (k/n) Eb/N0)`.
    pub fn eval(&self, ebn0_db: f64) -> f64 {
        let n = self.n as f64;
        let amp = (2.0 * self.k as f64 / n * db_to_linear(ebn0_db)).sqrt();
        let ln_pre0 = (n - 1.0).ln()
            - 0.5 * std::f64::consts::PI.ln()
            - 0.5 * n * std::f64::consts::LN_2
            - ln_gamma((n + 1.0) / 2.0);
        let ln_outer = |phi: f64| -> f64 {
            let s = phi.sin();
            if s <= 0.0 {
                return f64::NEG_INFINITY;
            }
            ln_pre0 + (n - 2.0) * s.ln() + ln_radial(n, amp, phi)
        };
        let (a, b) = (self.theta, std::f64::consts::PI);
        let peak = (0..=256)
            .map(|j| ln_outer(a + (b - a) * j as f64 / 256.0))
            .fold(f64::NEG_INFINITY, f64::max);
        if !peak.is_finite() {
            return 0.0;
        }
        let out = quadrature::integrate(|phi| (ln_outer(phi) - peak).exp(), a, b, 1e-13);
        (out.integral * peak.exp()).min(1.0)
    }
}

/// `ln int_0^inf s^(n-1) exp(-(s^2 + n A^2 - 2 s sqrt(n) A cos phi) / 2) ds`,
/// integrated around the peak of the log-integrand.
fn ln_radial(n: f64, amp: f64, phi: f64) -> f64 {
    let c = n.sqrt() * amp * phi.cos();
    let f = |s: f64| (n - 1.0) * s.ln() - (s * s + n * amp * amp - 2.0 * s * c) / 2.0;
    let s_star = (c + (c * c + 4.0 * (n - 1.0)).sqrt()) / 2.0;
    let width = 1.0 / ((n - 1.0) / (s_star * s_star) + 1.0).sqrt();
    let f_star = f(s_star);
    let lo = (s_star - 40.0 * width).max(0.0);
    let hi = s_star + 40.0 * width;
    let j = quadrature::integrate(
        |s| if s <= 0.0 { 0.0 } else { (f(s) - f_star).exp() },
        lo,
        hi,
        1e-14,
    );
    f_star + j.integral.ln()
}

pub fn sphere_packing_lower_bound(n: usize, k: usize, ebn0_db: f64) -> Result<f64, SpectrumError> {
    Ok(SpherePacking::new(n, k)?.eval(ebn0_db))
}

/// Eb/N0 (dB) where a decreasing curve crosses `target`, by bisection on
/// `[lo, hi]` to 1e-4 dB.
pub fn bound_crossing(
    curve: impl Fn(f64) -> f64,
    target: f64,
    lo: f64,
    hi: f64,
) -> Result<f64, SpectrumError> {
    let (f_lo, f_hi) = (curve(lo), curve(hi));
    if f_lo <= f_hi {
        return Err(SpectrumError::Bound(format!(
            "curve is not decreasing on [{lo}, {hi}] dB ({f_lo:e} .. {f_hi:e})"
        )));
    }
    if !(f_hi <= target && target <= f_lo) {
        return Err(SpectrumError::Bound(format!(
            "target {target:e} outside curve range [{f_hi:e}, {f_lo:e}]"
        )));
    }
    let (mut a, mut b) = (lo, hi);
    while b - a > 1e-4 {
        let m = 0.5 * (a + b);
        if curve(m) > target {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}
