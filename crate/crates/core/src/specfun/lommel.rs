//! Lommel polynomials h_{n,ν}(z) = R_{n,ν}(1/z), the polynomials that
//! connect a shifted Bessel order back to the base pair:
//!
//!   J_{n+ν}(x) = h_{n,ν}(1/x) J_ν(x) − h_{n−1,ν+1}(1/x) J_{ν−1}(x).
//!
//! Generated forward from h_{0,ν} = 1, h_{1,ν} = 2νz by
//! h_{n+1,ν}(z) = 2z(n+ν) h_{n,ν}(z) − h_{n−1,ν}(z)
//! (Watson §9.6; Ismail, "Classical and Quantum Orthogonal Polynomials",
//! ch. 6.5).

/// h_{n,ν}(z) by forward recurrence.
pub fn lommel_h(n: usize, nu: f64, z: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut below = 1.0_f64;
    let mut here = 2.0 * nu * z;
    for k in 1..n {
        let next = 2.0 * z * (k as f64 + nu) * here - below;
        below = here;
        here = next;
    }
    here
}
