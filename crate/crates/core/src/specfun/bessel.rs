//! Bessel functions of the first kind with arbitrary real order ≥ −1,
//! batched discrete-index evaluation, and positive zeros.
//!
//! Evaluation strategy (f64 throughout, double-double compensation inside
//! the ascending series):
//!
//! * base orders p ∈ [0, 2]: ascending power series for x ≤ 12, Hankel
//!   large-argument asymptotics beyond ("Handbook of Mathematical
//!   Functions" 9.1.10 / 9.2.5);
//! * higher orders with p ≤ x: forward recurrence from the base pair —
//!   stable while the order stays below the argument;
//! * higher orders with p > x: backward (Miller) recurrence started well
//!   above the target and normalized against the base pair, since forward
//!   recurrence in n is unstable for n > x.
//!
//! The series is summed in double-double arithmetic because near x ≈ 12 the
//! alternating terms peak around e^x/√(2πx) ≈ 2·10⁴ while the result is
//! O(0.1); plain f64 would surrender ~5 digits there.

use super::dd::Dd;
use super::gamma::{gamma_real, log_gamma};
use super::AccuracyPolicy;
use crate::{Error, Result};
use std::f64::consts::PI;

/// Switch point between the ascending series and the Hankel asymptotic
/// expansion for the base orders p ∈ [0, 2].
const SERIES_ASYMPTOTIC_SWITCH: f64 = 12.0;

/// Ascending series Σ (−1)^j (x/2)^{p+2j} / (j! Γ(p+j+1)), summed in dd.
fn series_j(p: f64, x: f64, policy: &AccuracyPolicy) -> Result<f64> {
    debug_assert!(x > 0.0 && p > -1.0);
    // common prefactor (x/2)^p / Γ(p+1); in log space when it could overflow
    let half_x = 0.5 * x;
    let prefactor = if p <= 30.0 {
        half_x.powf(p) / gamma_real(p + 1.0)?
    } else {
        (p * half_x.ln() - log_gamma(p + 1.0)?).exp()
    };

    let x_quarter_sq = Dd::from_prod(half_x, half_x); // exact
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut max_term = 1.0_f64;
    for j in 1..=policy.max_terms {
        let jf = j as f64;
        let denom = Dd::from_sum(p, jf).mul_f64(jf);
        term = term.mul(x_quarter_sq.div(denom)).neg();
        sum = sum.add(term);
        let mag = term.abs();
        max_term = max_term.max(mag);
        if mag < 1e-36 * max_term {
            return Ok(prefactor * sum.to_f64());
        }
    }
    Err(Error::Accuracy {
        context: format!("bessel series J_{p}({x})"),
        partial: prefactor * sum.to_f64(),
        estimate: term.abs() / sum.abs().max(f64::MIN_POSITIVE),
    })
}

/// Hankel asymptotic expansion, valid for x well above the order:
/// J_p(x) ≈ √(2/πx) [P cos ω − Q sin ω], ω = x − pπ/2 − π/4.
fn hankel_j(p: f64, x: f64) -> f64 {
    debug_assert!(x > SERIES_ASYMPTOTIC_SWITCH);
    let mu = 4.0 * p * p;
    let omega = x - (0.5 * p + 0.25) * PI;
    let mut p_sum = 0.0;
    let mut q_sum = 0.0;
    let mut term = 1.0_f64;
    let mut prev_mag = f64::INFINITY;
    for j in 0..64 {
        let mag = term.abs();
        if mag >= prev_mag || mag < 1e-19 {
            break; // optimal truncation: stop before the terms turn around
        }
        prev_mag = mag;
        // sign pattern + + − − + + − − on (P₀, Q₀, P₁, Q₁, …)
        let signed = if (j / 2) % 2 == 0 { term } else { -term };
        if j % 2 == 0 {
            p_sum += signed;
        } else {
            q_sum += signed;
        }
        let jf = j as f64;
        term *= (mu - (2.0 * jf + 1.0).powi(2)) / (8.0 * (jf + 1.0) * x);
    }
    (2.0 / (PI * x)).sqrt() * (p_sum * omega.cos() - q_sum * omega.sin())
}

/// Base-order evaluation for p ∈ [0, 2].
fn base_j(p: f64, x: f64, policy: &AccuracyPolicy) -> Result<f64> {
    debug_assert!((0.0..=2.0).contains(&p));
    if x <= SERIES_ASYMPTOTIC_SWITCH.max(1.5 * p) {
        series_j(p, x, policy)
    } else {
        Ok(hankel_j(p, x))
    }
}

/// Backward (Miller) recurrence on orders q, q+1, …, q+n_max, normalized
/// against independently computed base values. `q` must lie in [0, 1).
fn miller_backward(q: f64, x: f64, n_max: usize, policy: &AccuracyPolicy) -> Result<Vec<f64>> {
    let len = n_max.max(1) + 1;
    let start = len + 24 + x.ceil() as usize;
    let mut out = vec![0.0_f64; len];
    let mut f_above = 0.0_f64;
    let mut f = 1e-240_f64;
    for k in (0..=start).rev() {
        if k < len {
            out[k] = f;
        }
        if k == 0 {
            break;
        }
        let next = (2.0 * (q + k as f64) / x) * f - f_above;
        f_above = f;
        f = next;
        if f.abs() > 1e250 {
            f *= 1e-250;
            f_above *= 1e-250;
            if k < len {
                for v in &mut out[k..] {
                    *v *= 1e-250;
                }
            }
        }
    }
    let b0 = base_j(q, x, policy)?;
    let b1 = base_j(q + 1.0, x, policy)?;
    let scale = if out[0].abs() >= out[1].abs() {
        b0 / out[0]
    } else {
        b1 / out[1]
    };
    for v in &mut out {
        *v *= scale;
    }
    out.truncate(n_max + 1);
    Ok(out)
}

/// J_ν(x) for real order ν > −1 and x ≥ 0.
///
/// Orders in (−1, 0) are supported through one step of the three-term
/// recurrence J_{ν−1} = (2ν/x)J_ν − J_{ν+1} and require x > 0.
pub fn bessel_j(nu: f64, x: f64, policy: &AccuracyPolicy) -> Result<f64> {
    if !nu.is_finite() || !x.is_finite() {
        return Err(Error::Domain("bessel_j: non-finite argument".into()));
    }
    if nu <= -1.0 {
        return Err(Error::Domain(format!("bessel_j: order {nu} not in (-1, inf)")));
    }
    if x < 0.0 {
        return Err(Error::Domain(format!("bessel_j: negative argument {x}")));
    }
    if nu < 0.0 {
        if x == 0.0 {
            return Err(Error::Domain("bessel_j: J_nu(0) diverges for nu < 0".into()));
        }
        let up = nu + 1.0;
        let j1 = bessel_j(up, x, policy)?;
        let j2 = bessel_j(up + 1.0, x, policy)?;
        return Ok((2.0 * up / x) * j1 - j2);
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    let m = nu.floor() as usize;
    let q = nu - m as f64;
    if m == 0 {
        return base_j(q, x, policy);
    }
    if m == 1 {
        return base_j(q + 1.0, x, policy);
    }
    if nu <= x {
        // forward recurrence through the oscillatory regime
        let mut below = base_j(q, x, policy)?;
        let mut here = base_j(q + 1.0, x, policy)?;
        for k in 1..m {
            let next = (2.0 * (q + k as f64) / x) * here - below;
            below = here;
            here = next;
        }
        Ok(here)
    } else {
        let values = miller_backward(q, x, m, policy)?;
        Ok(values[m])
    }
}

/// d/dx J_ν(x) = (ν/x) J_ν(x) − J_{ν+1}(x).
pub fn bessel_j_prime(nu: f64, x: f64, policy: &AccuracyPolicy) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::Domain("bessel_j_prime: x must be positive".into()));
    }
    Ok((nu / x) * bessel_j(nu, x, policy)? - bessel_j(nu + 1.0, x, policy)?)
}

/// Consecutive orders J_ν(x), J_{ν+1}(x), …, J_{ν+N}(x) at fixed argument.
#[derive(Debug, Clone)]
pub struct BesselBatch {
    pub nu: f64,
    pub x: f64,
    pub values: Vec<f64>,
}

impl BesselBatch {
    /// Largest residual of the three-term recurrence
    /// J_{n−1+ν} + J_{n+1+ν} − (2(n+ν)/x) J_{n+ν}, scaled by max(1, |J_{n+ν}|).
    pub fn recurrence_residual_max(&self) -> f64 {
        if self.x == 0.0 {
            return 0.0;
        }
        let mut worst = 0.0_f64;
        for n in 1..self.values.len().saturating_sub(1) {
            let j = self.values[n];
            let r = self.values[n - 1] + self.values[n + 1]
                - (2.0 * (n as f64 + self.nu) / self.x) * j;
            worst = worst.max(r.abs() / j.abs().max(1.0));
        }
        worst
    }
}

/// All orders ν … ν+n_max at once. Backward (Miller) recurrence with
/// two-point normalization against [`bessel_j`] when any order exceeds the
/// argument; plain forward recurrence otherwise.
pub fn bessel_batch(nu: f64, x: f64, n_max: usize) -> Result<BesselBatch> {
    if !(nu > 0.0) {
        return Err(Error::Domain(format!("bessel_batch: order {nu} must be > 0")));
    }
    if x < 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_batch: bad argument {x}")));
    }
    let policy = AccuracyPolicy::default();
    if x == 0.0 {
        return Ok(BesselBatch { nu, x, values: vec![0.0; n_max + 1] });
    }
    let values = if nu + n_max as f64 <= x {
        let mut v = Vec::with_capacity(n_max + 1);
        v.push(bessel_j(nu, x, &policy)?);
        if n_max >= 1 {
            v.push(bessel_j(nu + 1.0, x, &policy)?);
            for k in 1..n_max {
                let next = (2.0 * (nu + k as f64) / x) * v[k] - v[k - 1];
                v.push(next);
            }
        }
        v
    } else {
        // run Miller on the reduced base order and shift
        let m = nu.floor() as usize;
        let q = nu - m as f64;
        let all = miller_backward(q, x, m + n_max, &policy)?;
        all[m..=m + n_max].to_vec()
    };
    Ok(BesselBatch { nu, x, values })
}

/// Discrete Bessel function of even (J_{2n+ν}) or odd (J_{2n+1+ν}) index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// 𝒦ₙ^ν(x) = J_{2n+ν}(x) (even) or 𝒥ₙ^ν(x) = J_{2n+1+ν}(x) (odd).
/// The odd family at base order ν equals the even family at ν+1.
pub fn discrete_bessel(parity: Parity, n: usize, nu: f64, x: f64) -> Result<f64> {
    let order = match parity {
        Parity::Even => 2.0 * n as f64 + nu,
        Parity::Odd => 2.0 * n as f64 + 1.0 + nu,
    };
    bessel_j(order, x, &AccuracyPolicy::default())
}

/// McMahon 3-term asymptotic estimate for the k-th positive zero of J_ν.
fn mcmahon_estimate(nu: f64, k: usize) -> f64 {
    let mu = 4.0 * nu * nu;
    let beta = (k as f64 + 0.5 * nu - 0.25) * PI;
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
}

/// First `count` positive zeros of J_ν, ascending.
///
/// Brackets come from the McMahon expansion, refined by bisection to a
/// width of 1e-13 and one final Newton step.
pub fn bessel_zeros(nu: f64, count: usize) -> Result<Vec<f64>> {
    if nu < 0.0 || !nu.is_finite() {
        return Err(Error::Domain(format!("bessel_zeros: order {nu} must be >= 0")));
    }
    if count < 1 {
        return Err(Error::Domain("bessel_zeros: count must be >= 1".into()));
    }
    let policy = AccuracyPolicy::default();
    let j = |x: f64| bessel_j(nu, x, &policy);
    let mut zeros = Vec::with_capacity(count);
    for k in 1..=count {
        let est = mcmahon_estimate(nu, k);
        let floor = zeros.last().copied().unwrap_or(0.0) + 1e-6;
        let mut lo = (est - 0.45 * PI).max(floor);
        let mut hi = est + 0.45 * PI;
        let mut f_lo = j(lo)?;
        let mut f_hi = j(hi)?;
        let mut widen = 0;
        while f_lo * f_hi > 0.0 {
            widen += 1;
            if widen > 8 {
                return Err(Error::Accuracy {
                    context: format!("bessel_zeros: no bracket for zero {k} of J_{nu}"),
                    partial: est,
                    estimate: f64::NAN,
                });
            }
            lo = (lo - 0.25 * PI).max(floor);
            hi += 0.25 * PI;
            f_lo = j(lo)?;
            f_hi = j(hi)?;
        }
        for _ in 0..200 {
            if hi - lo <= 1e-13 {
                break;
            }
            let mid = 0.5 * (lo + hi);
            let f_mid = j(mid)?;
            if f_lo * f_mid <= 0.0 {
                hi = mid;
                f_hi = f_mid;
            } else {
                lo = mid;
                f_lo = f_mid;
            }
        }
        let _ = f_hi;
        let mut root = 0.5 * (lo + hi);
        let deriv = bessel_j_prime(nu, root, &policy)?;
        if deriv != 0.0 {
            root -= j(root)? / deriv;
        }
        let residual = j(root)?.abs();
        if residual > 1e-10 {
            return Err(Error::Accuracy {
                context: format!("bessel_zeros: refinement of zero {k} of J_{nu}"),
                partial: root,
                estimate: residual,
            });
        }
        zeros.push(root);
    }
    Ok(zeros)
}
