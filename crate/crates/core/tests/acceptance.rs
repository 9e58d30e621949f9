//! Acceptance suite: every criterion runs at its stated tolerance and
//! prints one line with the measured numbers. Criteria that are
//! mathematically unattainable are still asserted at their stated
//! tolerance and fail loudly rather than being quietly weakened; the
//! accompanying analysis lives in the test output.

use std::time::Instant;

use tra_core::dipole;
use tra_core::potentials::{
    schrodinger_residual, DipoleQuadrupoleParams, Parity, PotentialModel,
};
use tra_core::recursion::{
    asymptotic_exponent, forward_solve, invcube_w_monic_lambda, positivity_check, support_bound,
    RecursionFamily,
};
use tra_core::scattering::{
    amplitude_match, coulomb_exact, exponential_spectrum, ode_oracle, solve,
};
use tra_core::specfun::{bessel_batch, AccuracyPolicy};
use tra_core::validation::{lommel_ortho_check, ortho_check, OrthoKind};

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

const FIG1: PotentialModel = PotentialModel::Kratzer { xi: 2.0, lambda: 1.0 };
const FIG1_ENERGY: f64 = 3.0;

fn fig2_model() -> PotentialModel {
    PotentialModel::DipoleQuadrupole(DipoleQuadrupoleParams {
        d: 2.0,
        q: 3.0,
        eta: 0.5,
        m: 1,
        branch: 0,
    })
}

/// Criterion 1: the Kratzer series with the closed-form normalization
/// reproduces the exact Coulomb wave on r ∈ [0.05, 10] (400 points) to
/// 1e-4 absolute, with N chosen adaptively, in under 5 s; the deviation
/// decreases monotonically with the series length until roundoff.
#[test]
fn acceptance_01_coulomb_reproduction() {
    let clock = Instant::now();
    let policy = AccuracyPolicy::default();
    let r = linspace(0.05, 10.0, 400);
    let sol = solve(&FIG1, FIG1_ENERGY, &r, 200).unwrap();
    let mut max_dev = 0.0_f64;
    for (i, &ri) in r.iter().enumerate() {
        let exact = coulomb_exact(2.0, 1, FIG1_ENERGY, ri, &policy).unwrap();
        max_dev = max_dev.max((sol.samples.psi[i] - exact).abs());
    }
    let elapsed = clock.elapsed().as_secs_f64();

    // manual truncations: deviation must fall with N until roundoff
    let map = sol.map;
    let weights = forward_solve(
        &RecursionFamily::KratzerQ { nu: map.nu, z: map.z },
        80,
    )
    .unwrap()
    .values_f64();
    let mut previous = f64::INFINITY;
    let mut floor_reached = false;
    for &n_terms in &[10usize, 20, 30, 45, 60] {
        let mut dev = 0.0_f64;
        for &ri in r.iter().step_by(10) {
            let x = map.k * ri;
            let batch = bessel_batch(map.nu, x, n_terms).unwrap();
            let psi: f64 = sol.c0
                * x.sqrt()
                * weights[..=n_terms]
                    .iter()
                    .enumerate()
                    .map(|(n, &w)| w * batch.values[n])
                    .sum::<f64>();
            let exact = coulomb_exact(2.0, 1, FIG1_ENERGY, ri, &policy).unwrap();
            dev = dev.max((psi - exact).abs());
        }
        if !floor_reached {
            assert!(
                dev < previous || dev < 1e-9,
                "deviation did not shrink: {dev:e} after {previous:e} at N = {n_terms}"
            );
        }
        floor_reached = dev < 1e-9;
        previous = dev;
    }

    println!(
        "criterion 1: max|TRA - exact| = {max_dev:.3e} over 400 points (N_used = {}), {elapsed:.2} s",
        sol.n_used
    );
    assert!(max_dev <= 1e-4, "deviation {max_dev:e} above 1e-4");
    assert!(max_dev <= 1e-6, "expected ≤ 1e-6 with adaptive N, got {max_dev:e}");
    assert!(elapsed < 5.0, "runtime {elapsed:.2} s exceeds 5 s");
}

/// Criterion 2: exact Coulomb, the Runge–Kutta oracle and the series agree
/// pairwise to 1e-6 after a single amplitude match.
#[test]
fn acceptance_02_oracle_triangle() {
    let policy = AccuracyPolicy::default();
    let r = linspace(0.05, 10.0, 400);
    let sol = solve(&FIG1, FIG1_ENERGY, &r, 200).unwrap();
    let exact: Vec<f64> = r
        .iter()
        .map(|&ri| coulomb_exact(2.0, 1, FIG1_ENERGY, ri, &policy).unwrap())
        .collect();
    let oracle = ode_oracle(&FIG1, FIG1_ENERGY, &r).unwrap();

    let (_, tra_vs_exact) = amplitude_match(&exact, &sol.samples.psi);
    let (_, ode_vs_exact) = amplitude_match(&exact, &oracle.psi);
    let (_, tra_vs_ode) = amplitude_match(&sol.samples.psi, &oracle.psi);
    println!(
        "criterion 2: pairwise deviations TRA/exact = {tra_vs_exact:.3e}, ODE/exact = {ode_vs_exact:.3e}, TRA/ODE = {tra_vs_ode:.3e}"
    );
    assert!(tra_vs_exact < 1e-6);
    assert!(ode_vs_exact < 1e-6);
    assert!(tra_vs_ode < 1e-6);
}

/// Criterion 3: free particle exactness and the pure-centrifugal phase.
#[test]
fn acceptance_03_free_particle_exactness() {
    let free = PotentialModel::Kratzer { xi: 0.0, lambda: 0.0 };
    let sol = solve(&free, 2.0, &linspace(0.3, 6.0, 40), 40).unwrap();
    let d_dev = (sol.delta + std::f64::consts::FRAC_PI_2).abs();
    let c_dev = (sol.c0 - (std::f64::consts::PI / 2.0).sqrt()).abs();
    let mut worst_centrifugal = 0.0_f64;
    for &lambda in &[0.3, 1.0, 2.4, 6.0] {
        let model = PotentialModel::Kratzer { xi: 0.0, lambda };
        let s = solve(&model, 1.7, &linspace(0.3, 6.0, 24), 40).unwrap();
        let expect = -(s.map.nu + 0.5) * std::f64::consts::FRAC_PI_2;
        let wrapped = (s.delta - expect).rem_euclid(std::f64::consts::PI);
        worst_centrifugal = worst_centrifugal.max(wrapped.min(std::f64::consts::PI - wrapped));
    }
    println!(
        "criterion 3: |δ+π/2| = {d_dev:.2e}, |C₀-√(π/2)| = {c_dev:.2e}, centrifugal phase dev = {worst_centrifugal:.2e}"
    );
    assert!(d_dev < 1e-15);
    assert!(c_dev < 5e-15);
    assert!(worst_centrifugal < 1e-12);
}

/// Criterion 4: recursion seed identities, exact to 1e-14.
#[test]
fn acceptance_04_seed_identities() {
    let mut worst = 0.0_f64;
    for &nu in &[0.6, 1.5, 3.2] {
        for &z in &[0.1, 1.0, 5.0] {
            let q = forward_solve(&RecursionFamily::InvCubeQ { nu, z }, 3).unwrap();
            let rel = |got: f64, want: f64| {
                (got - want).abs() / want.abs().max(1.0)
            };
            worst = worst.max(q.value(1).abs());
            worst = worst.max(rel(nu * q.value(2), -(nu + 2.0)));
            worst = worst.max(rel(
                nu * q.value(3),
                -4.0 * (nu + 1.0) * (nu + 2.0) * (nu + 3.0) * z,
            ));
            let qt = forward_solve(&RecursionFamily::DipQuadQ { nu, z }, 3).unwrap();
            worst = worst.max(rel(qt.value(0), 1.0));
            worst = worst.max(qt.value(1).abs());
            worst = worst.max(rel(qt.value(2), -1.0));
            worst = worst.max(rel(qt.value(3), -4.0 * (nu + 1.0) * (nu + 2.0) * z));
            let w = forward_solve(&RecursionFamily::InvCubeW { nu, z }, 1).unwrap();
            worst = worst.max(rel(w.value(0), 1.0));
            worst = worst.max(rel(w.value(1), 4.0 * (nu + 1.0) * (nu + 2.0) * z));
        }
    }
    println!("criterion 4: worst seed-identity deviation = {worst:.2e}");
    assert!(worst <= 1e-14);
}

/// Criterion 5, eigenvalue clause: χ converged to 1e-10 between the
/// truncations 120 and 240, inside the 10 s budget together with the
/// series solve.
#[test]
fn acceptance_05_fig2_chi_convergence_and_runtime() {
    let clock = Instant::now();
    let s120 = dipole::chi_values(2.0, 1, 120).unwrap();
    let s240 = dipole::chi_values(2.0, 1, 240).unwrap();
    let drift = (s120.eigenvalues[0] - s240.eigenvalues[0]).abs();
    let r = linspace(0.5, 5.0, 120);
    let sol = solve(&fig2_model(), 5.0, &r, 80).unwrap();
    let oracle = ode_oracle(&fig2_model(), 5.0, &r).unwrap();
    let (_, rel) = amplitude_match(&oracle.psi, &sol.samples.psi);
    let elapsed = clock.elapsed().as_secs_f64();
    println!(
        "criterion 5 (χ/runtime): |λ₀(120)-λ₀(240)| = {drift:.2e}, solve+oracle in {elapsed:.2} s (shape dev {rel:.2e} — see shape clause)"
    );
    assert!(drift <= 1e-10);
    assert!(elapsed < 10.0);
}

/// Criterion 5, shape clause: plateau-truncated series vs the oracle to
/// 1e-3 relative L∞ on r ∈ [0.5, 5].
///
/// Unattainable as stated: the coefficients of this family grow like
/// z·n³ per step (z = 1/(kp) = 0.211 here), so the optimal truncation
/// keeps only 2–3 terms with a first omitted term of O(0.1) of the wave's
/// scale. A deep plateau would require the Bessel cutoff kr to precede
/// the growth onset (1/z)^{1/3}, which happens only inside the
/// classically forbidden core — where the true wave is exponentially
/// suppressed and pointwise accuracy is lost anyway. The series is
/// asymptotic with an irreducible O(tail_estimate) error, reported
/// honestly by the solver.
#[test]
fn acceptance_05_fig2_shape_vs_oracle() {
    let r = linspace(0.5, 5.0, 120);
    let sol = solve(&fig2_model(), 5.0, &r, 80).unwrap();
    let oracle = ode_oracle(&fig2_model(), 5.0, &r).unwrap();
    let (_, rel) = amplitude_match(&oracle.psi, &sol.samples.psi);
    println!(
        "criterion 5 (shape): rel L∞ = {rel:.3e} with N_used = {}, tail_estimate = {:.3e}",
        sol.n_used, sol.tail_estimate
    );
    assert!(
        rel <= 1e-3,
        "plateau-truncated series deviates from the oracle by {rel:.3e} (> 1e-3); \
         the optimal truncation of this factorially growing family cannot do better"
    );
}

/// Criterion 6: the orthogonality/cross-integral table and the discrete
/// Lommel orthogonality.
#[test]
fn acceptance_06_orthogonality_tables() {
    let mut checked = 0usize;
    let mut worst = (0.0_f64, String::new());
    for &nu in &[0.5, 1.3, 2.7] {
        for n in 0..=4usize {
            for m in 0..=4usize {
                for kind in [OrthoKind::KK, OrthoKind::JJ, OrthoKind::KJWeighted, OrthoKind::KJPlain]
                {
                    let r = ortho_check(kind, nu, n, m).unwrap();
                    let allowed = r.tail_bound.max(1e-8);
                    if r.abs_error / allowed > worst.0 {
                        worst = (r.abs_error / allowed, format!("{kind:?} ν={nu} n={n} m={m}"));
                    }
                    assert!(
                        r.abs_error <= allowed,
                        "{kind:?} ν={nu} n={n} m={m}: err {:e} > {:e}",
                        r.abs_error,
                        allowed
                    );
                    checked += 1;
                }
            }
        }
    }
    let mut lommel_worst = 0.0_f64;
    for &nu in &[0.5, 1.3] {
        for &(n, m) in &[(0usize, 0usize), (1, 1), (0, 2), (1, 0)] {
            let r = lommel_ortho_check(nu, n, m, 1000).unwrap();
            assert!(
                r.abs_error <= r.tail_bound,
                "lommel ν={nu} n={n} m={m}: err {:e} > bound {:e}",
                r.abs_error,
                r.tail_bound
            );
            lommel_worst = lommel_worst.max(r.abs_error / r.tail_bound);
            checked += 1;
        }
    }
    println!(
        "criterion 6: {checked} identities pass; worst margin {:.2} ({}); lommel worst {:.2} of bound",
        worst.0, worst.1, lommel_worst
    );
}

/// Criterion 7, positivity clause (holds).
#[test]
fn acceptance_07_positivity() {
    for &nu in &[0.8, 1.5] {
        let (ok, first) = positivity_check(nu + 1.0, 2.0 * nu + 2.0, 1.0, 2.0 * nu, 2000);
        assert!(ok, "positivity violated at n = {first:?} for ν = {nu}");
    }
    println!("criterion 7 (positivity): monic weights positive through n = 2000");
}

/// Criterion 7, envelope-exponent clause: fitted exponent of the Kratzer
/// ladder polynomials over n ∈ [200, 2000] equal to −2 ± 0.05.
///
/// Unattainable as stated: the ladder V_{n+1}/V_n = i(1 + a/n + …) has
/// Re a = (α+β−b−1)/2 = −1 for this quadruple, so the plain sequence
/// decays like n^{−1} (verified against a 40-digit recursion). The −2
/// value belongs to the orthonormalized variant, whose norm ratio
/// contributes exactly one more power of n.
#[test]
fn acceptance_07_envelope_exponent_fit() {
    let mut measured = Vec::new();
    for &nu in &[0.8, 1.5] {
        for &z in &[1.0, 4.0] {
            let seq = forward_solve(&RecursionFamily::KratzerV { nu, z }, 2000).unwrap();
            let s = asymptotic_exponent(&seq, 200, 2000).unwrap();
            measured.push((nu, z, s));
        }
    }
    println!("criterion 7 (exponent): fitted slopes {measured:?}");
    for (nu, z, s) in measured {
        assert!(
            (s + 2.0).abs() <= 0.05,
            "fitted exponent {s:.3} at ν={nu}, z={z} is not −2±0.05 (the plain sequence decays like n⁻¹)"
        );
    }
}

/// Criterion 7, support-bound clause: all eigenvalues of the order-12
/// Jacobi matrix of the monic inverse-cube weights within ±support_bound.
///
/// Unattainable as stated: the 2×2 truncation alone has eigenvalues
/// ±√λ₁ = ±1/√((2)₂(ν+2)₂(2ν+2)₂)^{1/2}…, numerically ≈ 0.03–0.04, which
/// already exceeds 1/(3(ν+1)₃(2ν+1)₃) ≈ 4e-4…1e-3 by nearly two orders of
/// magnitude; truncated-matrix eigenvalues lie inside the true support,
/// so the bound cannot hold for the measure either.
#[test]
fn acceptance_07_support_bound_containment() {
    for &nu in &[0.8, 1.5] {
        let lambdas: Vec<f64> = (1..12).map(|n| invcube_w_monic_lambda(nu, n)).collect();
        let t = dipole::TridiagonalSymmetric {
            diag: vec![0.0; 12],
            offdiag: lambdas.iter().map(|l| l.sqrt()).collect(),
        };
        let eig = dipole::eigen_tridiag(&t);
        let bound = support_bound(nu).unwrap();
        let max_abs = eig.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
        println!(
            "criterion 7 (support): ν={nu}: max|eig| = {max_abs:.4e} vs bound {bound:.4e} (ratio {:.1})",
            max_abs / bound
        );
        assert!(
            max_abs <= bound,
            "order-12 eigenvalue {max_abs:.4e} exceeds the bound {bound:.4e} at ν = {nu}"
        );
    }
}

/// Criterion 8: exponential-potential bound states.
#[test]
fn acceptance_08_exponential_bound_states() {
    for (n, expect) in [(0usize, -2.0), (1, -8.0), (2, -18.0)] {
        let state = exponential_spectrum(1.0, 1.0, Parity::Odd, n).unwrap();
        assert_eq!(state.energy, expect, "E_{n} must be exact");
    }
    let state = exponential_spectrum(1.0, 1.0, Parity::Odd, 0).unwrap();
    let model = PotentialModel::Exponential1D { lambda: 1.0, nu: 1.0, parity: Parity::Odd };
    let h = 1e-3;
    let count = ((2.0_f64 - (-4.0)) / h).round() as usize + 1;
    let r: Vec<f64> = (0..count).map(|i| -4.0 + i as f64 * h).collect();
    let psi: Vec<f64> = r.iter().map(|&ri| state.sample(ri).unwrap()).collect();
    let residual = schrodinger_residual(&r, &psi, state.energy, &model).unwrap();

    // λ∫ψ² dr over the line equals 2(2n+ν+1) ∫ x⁻¹ J²_{2n+1+ν} dx
    let norm_check = ortho_check(OrthoKind::JJ, 1.0, 0, 0).unwrap();
    let norm = 2.0 * (2.0 * 0.0 + 1.0 + 1.0) * norm_check.numeric;
    println!(
        "criterion 8: E exact; ψ₀ residual = {residual:.2e}; λ∫ψ₀² dr = {norm:.9} (dev {:.2e})",
        (norm - 1.0).abs()
    );
    assert!(residual <= 1e-5);
    assert!((norm - 1.0).abs() <= 1e-6);
}

/// Criterion 9: dipole eigenproblem — exact decoupled spectrum, trace
/// identity, interlacing, and a truncation-stable critical coupling.
#[test]
fn acceptance_09_dipole_eigenproblem() {
    // d = 0 spectrum exact
    let spec = dipole::chi_values(0.0, 1, 60).unwrap();
    for (i, &lam) in spec.eigenvalues.iter().enumerate() {
        assert_eq!(lam, (i as f64 + 1.5) * (i as f64 + 1.5));
    }
    // trace identity at N = 200
    let t = dipole::build_t(2.0, 1, 200).unwrap();
    let eig = dipole::eigen_tridiag(&t);
    let trace: f64 = t.diag.iter().sum();
    let sum: f64 = eig.iter().sum();
    let trace_dev = ((sum - trace) / trace).abs();
    // interlacing through N = 30
    for n in 3..=30usize {
        let outer = dipole::eigen_tridiag(&dipole::build_t(1.7, 0, n).unwrap());
        let inner = dipole::eigen_tridiag(&dipole::build_t(1.7, 0, n - 1).unwrap());
        for k in 0..n - 1 {
            assert!(outer[k] <= inner[k] + 1e-10 && inner[k] <= outer[k + 1] + 1e-10);
        }
    }
    // critical coupling: truncation-stable and matching the frozen value
    let d200 = dipole::critical_dipole(0, 200, 1e-8).unwrap();
    let d400 = dipole::critical_dipole(0, 400, 1e-8).unwrap();
    println!(
        "criterion 9: trace dev = {trace_dev:.2e}; d_max(m=0) = {d200:.9} (N=200) vs {d400:.9} (N=400)"
    );
    assert!(trace_dev <= 1e-9);
    assert!((d200 - d400).abs() <= 1e-6);
    // regression constant, pinned after an N-convergence study
    assert!((d200 - 0.639314879).abs() <= 1e-6);
}
