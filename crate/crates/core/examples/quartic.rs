use tra_core::potentials::PotentialModel;
use tra_core::scattering::{amplitude_match, ode_oracle, solve};
fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}
fn main() {
    let m = PotentialModel::InverseQuartic { lambda: 0.375, zeta: 2.0, nu: None };
    // turning point (zeta/E)^(1/4) = 1; open region beyond
    let r = grid(1.5, 4.0, 60);
    let sol = solve(&m, 2.0, &r, 60).unwrap();
    let oracle = ode_oracle(&m, 2.0, &r).unwrap();
    let (_, rel) = amplitude_match(&oracle.psi, &sol.samples.psi);
    let psi_max = sol.samples.psi.iter().fold(0.0_f64, |mx, &v| mx.max(v.abs()));
    let k = sol.map.k;
    let bar = sol.tail_estimate * sol.c0 * (k * 4.0).sqrt() / psi_max;
    println!("N_used={} plateau={:?} tail={:.3e} delta={:.6} c0={:.6}", sol.n_used, sol.plateau, sol.tail_estimate, sol.delta, sol.c0);
    println!("rel={rel:.3e} bar={bar:.3e} ratio={:.2}", rel / bar);
}
