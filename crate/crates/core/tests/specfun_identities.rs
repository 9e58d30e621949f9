//! Identity checks on the special-function kernel: the Bessel differential
//! equation and its ladder relations under random sampling, the recursion
//! and differential properties of the even/odd discrete families, and the
//! Lommel-polynomial connection formula.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tra_core::specfun::{
    bessel_j, bessel_j_prime, discrete_bessel, lommel_h, AccuracyPolicy, Parity,
};

fn j(nu: f64, x: f64) -> f64 {
    bessel_j(nu, x, &AccuracyPolicy::default()).unwrap()
}

/// 5-point central first derivative.
fn d_dx(nu: f64, x: f64, h: f64) -> f64 {
    (-j(nu, x + 2.0 * h) + 8.0 * j(nu, x + h) - 8.0 * j(nu, x - h) + j(nu, x - 2.0 * h))
        / (12.0 * h)
}

#[test]
fn ladder_relations_under_random_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xbe55e1);
    for _ in 0..50 {
        let nu = rng.gen_range(1e-3..3.0);
        let x = rng.gen_range(1e-2..30.0);
        let n = rng.gen_range(0..=20) as f64;
        let order = n + nu;

        let jm = j(order - 1.0, x);
        let j0 = j(order, x);
        let jp = j(order + 1.0, x);

        // derivative relation: J' = (J_{ν−1} − J_{ν+1})/2, against finite differences
        let h = (1e-3 * x.max(0.5)).min(4e-3);
        let fd = d_dx(order, x, h);
        assert!(
            (fd - 0.5 * (jm - jp)).abs() <= 1e-9,
            "derivative relation off at nu={nu}, n={n}, x={x}: {:e}",
            (fd - 0.5 * (jm - jp)).abs()
        );

        // three-term recurrence: J/x = (J_{ν+1} + J_{ν−1}) / (2(n+ν))
        let res = j0 / x - (jp + jm) / (2.0 * order);
        assert!(
            res.abs() <= 1e-10,
            "recurrence residual {res:e} at nu={nu}, n={n}, x={x}"
        );

        // the defining equation, normalized by its leading coefficient:
        // J'' + J'/x + (1 − ν²/x²) J = 0, second derivative from the stencil
        let hh = 1e-4;
        let d2 = (-j(order, x + 2.0 * hh) + 16.0 * j(order, x + hh) - 30.0 * j0
            + 16.0 * j(order, x - hh)
            - j(order, x - 2.0 * hh))
            / (12.0 * hh * hh);
        let ode = d2 + fd / x + (1.0 - order * order / (x * x)) * j0;
        assert!(
            ode.abs() <= 1e-6 * j0.abs().max(1.0),
            "equation residual {ode:e} at nu={nu}, n={n}, x={x}"
        );
    }
}

#[test]
fn even_family_recursion_and_derivative() {
    // (2/x²)𝒦ₙ = 𝒦ₙ/((2n+ν)²−1) + ½𝒦ₙ₋₁/((2n+ν)(2n+ν−1)) + ½𝒦ₙ₊₁/((2n+ν)(2n+ν+1))
    // (2/x) d𝒦ₙ/dx = 𝒦ₙ/((2n+ν)²−1) + ½𝒦ₙ₋₁/(2n+ν−1) − ½𝒦ₙ₊₁/(2n+ν+1)
    for &nu in &[0.7, 1.5, 2.3] {
        for &x in &[0.5, 3.0, 10.0] {
            for n in 1..=10usize {
                let p = 2.0 * n as f64 + nu;
                let here = discrete_bessel(Parity::Even, n, nu, x).unwrap();
                let below = discrete_bessel(Parity::Even, n - 1, nu, x).unwrap();
                let above = discrete_bessel(Parity::Even, n + 1, nu, x).unwrap();

                let lhs = 2.0 / (x * x) * here;
                let rhs = here / (p * p - 1.0)
                    + 0.5 * below / (p * (p - 1.0))
                    + 0.5 * above / (p * (p + 1.0));
                assert!(
                    (lhs - rhs).abs() <= 1e-9,
                    "even recursion off at nu={nu}, x={x}, n={n}: {:e}",
                    (lhs - rhs).abs()
                );

                let deriv = bessel_j_prime(p, x, &AccuracyPolicy::default()).unwrap();
                let lhs = 2.0 / x * deriv;
                let rhs = here / (p * p - 1.0) + 0.5 * below / (p - 1.0)
                    - 0.5 * above / (p + 1.0);
                assert!(
                    (lhs - rhs).abs() <= 1e-9,
                    "even differential property off at nu={nu}, x={x}, n={n}: {:e}",
                    (lhs - rhs).abs()
                );
            }
        }
    }
}

#[test]
fn odd_family_recursion_and_derivative() {
    // the odd family at base ν is the even family at ν+1:
    // (2/x²)𝒥ₙ = 𝒥ₙ/((2n+ν+1)²−1) + ½𝒥ₙ₋₁/((2n+ν)(2n+ν+1)) + ½𝒥ₙ₊₁/((2n+ν+1)(2n+ν+2))
    for &nu in &[0.7, 1.5, 2.3] {
        for &x in &[0.5, 3.0, 10.0] {
            for n in 1..=10usize {
                let p = 2.0 * n as f64 + nu + 1.0;
                let here = discrete_bessel(Parity::Odd, n, nu, x).unwrap();
                let below = discrete_bessel(Parity::Odd, n - 1, nu, x).unwrap();
                let above = discrete_bessel(Parity::Odd, n + 1, nu, x).unwrap();

                let lhs = 2.0 / (x * x) * here;
                let rhs = here / (p * p - 1.0)
                    + 0.5 * below / ((p - 1.0) * p)
                    + 0.5 * above / (p * (p + 1.0));
                assert!(
                    (lhs - rhs).abs() <= 1e-9,
                    "odd recursion off at nu={nu}, x={x}, n={n}: {:e}",
                    (lhs - rhs).abs()
                );

                let deriv = bessel_j_prime(p, x, &AccuracyPolicy::default()).unwrap();
                let lhs = 2.0 / x * deriv;
                let rhs = here / (p * p - 1.0) + 0.5 * below / (p - 1.0)
                    - 0.5 * above / (p + 1.0);
                assert!(
                    (lhs - rhs).abs() <= 1e-9,
                    "odd differential property off at nu={nu}, x={x}, n={n}: {:e}",
                    (lhs - rhs).abs()
                );
            }
        }
    }
}

#[test]
fn lommel_connection_formula() {
    // J_{n+ν}(x) = h_{n,ν}(1/x) J_ν(x) − h_{n−1,ν+1}(1/x) J_{ν−1}(x);
    // ν ∈ (0, 1] exercises the negative-order extension of J_{ν−1}
    for &nu in &[1.2_f64, 2.5] {
        for &x in &[2.0, 5.0, 9.0] {
            for n in 1..=8usize {
                let lhs = j(n as f64 + nu, x);
                let rhs = lommel_h(n, nu, 1.0 / x) * j(nu, x)
                    - lommel_h(n - 1, nu + 1.0, 1.0 / x) * j(nu - 1.0, x);
                assert!(
                    (lhs - rhs).abs() <= 1e-9,
                    "connection formula off at nu={nu}, x={x}, n={n}: {:e}",
                    (lhs - rhs).abs()
                );
            }
        }
    }
    // below ν = 1 the second term needs J at a negative order
    let (nu, x) = (0.8, 4.0);
    for n in 1..=6usize {
        let lhs = j(n as f64 + nu, x);
        let rhs = lommel_h(n, nu, 1.0 / x) * j(nu, x)
            - lommel_h(n - 1, nu + 1.0, 1.0 / x) * j(nu - 1.0, x);
        assert!((lhs - rhs).abs() <= 1e-9, "negative-order branch off at n={n}");
    }
}
