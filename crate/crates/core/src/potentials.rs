//! The solvable potential models, their parameter validation, the map from
//! physical parameters to the spectral variables of the coefficient
//! recursions, and a direct finite-difference residual checker for
//! candidate wavefunctions. Atomic units (ħ = M = 1) throughout; radial
//! lengths in Bohr radii.

use crate::dipole;
use crate::{Error, Result};

/// Dipole-field angular parameters: the dipole moment d, quadrupole moment
/// q, the effective angular factor η ∈ [−½, 1] replacing ½(3cos²θ − 1),
/// the azimuthal quantum number m ≥ 0 and the eigenbranch index selecting
/// one χ out of the angular spectrum (0 = lowest).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleQuadrupoleParams {
    pub d: f64,
    pub q: f64,
    pub eta: f64,
    pub m: u32,
    pub branch: usize,
}

impl DipoleQuadrupoleParams {
    /// Effective quadrupole moment p = ηq.
    pub fn p(&self) -> f64 {
        self.eta * self.q
    }
}

/// Parity of the discrete-index basis for the 1D exponential model.
pub use crate::specfun::Parity;

/// One of the five solvable potential models.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialModel {
    /// V(r) = ξ/r + Λ/r², the Coulomb-plus-inverse-square potential.
    Kratzer { xi: f64, lambda: f64 },
    /// V(r) = Λ/r² + ζ/r³.
    InverseCube { lambda: f64, zeta: f64 },
    /// V(r) = Λ/r² + ζ/r⁴ with ζ > 0; the basis order ν is a caller
    /// choice, √(2Λ+¼) by default.
    InverseQuartic { lambda: f64, zeta: f64, nu: Option<f64> },
    /// V(r) = −(λ²/2) e^{2λr} on the whole line; bound states only.
    Exponential1D { lambda: f64, nu: f64, parity: Parity },
    /// Electron against a polar molecule: χ(χ+1)/(2r²) + ηq/r³ with the
    /// angular number χ resolved from the dipole eigenproblem.
    DipoleQuadrupole(DipoleQuadrupoleParams),
}

/// Default truncation used when resolving χ; grown automatically until the
/// selected eigenvalue settles to 1e-10.
pub const CHI_TRUNCATION: usize = 120;

impl PotentialModel {
    /// Parameter validation: Λ > −1/8 where an inverse-square term feeds
    /// the basis order, ζ > 0 for the quartic, η ∈ [−½, 1], λ > 0.
    pub fn validate(&self) -> Result<()> {
        match self {
            PotentialModel::Kratzer { lambda, .. } | PotentialModel::InverseCube { lambda, .. } => {
                if !(*lambda > -0.125) {
                    return Err(Error::Domain(format!(
                        "inverse-square coefficient must exceed -1/8, got {lambda}"
                    )));
                }
            }
            PotentialModel::InverseQuartic { lambda, zeta, nu } => {
                if !(*zeta > 0.0) {
                    return Err(Error::Domain(format!("quartic strength must be > 0, got {zeta}")));
                }
                if nu.is_none() && !(*lambda > -0.125) {
                    return Err(Error::Domain(format!(
                        "default basis order needs 2Λ+¼ > 0, got Λ = {lambda}"
                    )));
                }
                if let Some(nu) = nu {
                    if !(*nu > 0.0) {
                        return Err(Error::Domain(format!("basis order must be > 0, got {nu}")));
                    }
                }
            }
            PotentialModel::Exponential1D { lambda, nu, .. } => {
                if !(*lambda > 0.0) {
                    return Err(Error::Domain(format!("range parameter must be > 0, got {lambda}")));
                }
                if !(*nu > 0.0) {
                    return Err(Error::Domain(format!("basis order must be > 0, got {nu}")));
                }
            }
            PotentialModel::DipoleQuadrupole(p) => {
                if !(-0.5..=1.0).contains(&p.eta) {
                    return Err(Error::Domain(format!(
                        "angular parameter eta must lie in [-1/2, 1], got {}",
                        p.eta
                    )));
                }
                if !(p.d >= 0.0) {
                    return Err(Error::Domain(format!("dipole moment must be >= 0, got {}", p.d)));
                }
            }
        }
        Ok(())
    }

    /// Resolve the angular quantum number χ for the dipole model
    /// (truncation grown until the eigenvalue settles to 1e-10).
    pub fn resolve_chi(&self) -> Result<f64> {
        match self {
            PotentialModel::DipoleQuadrupole(p) => {
                dipole::chi_converged(p.d, p.m, p.branch, CHI_TRUNCATION, 1e-10)
            }
            _ => Err(Error::Domain("resolve_chi: not a dipole model".into())),
        }
    }

    /// Effective potential V(r). Radial models require r > 0; the
    /// exponential model lives on the whole line.
    pub fn effective_potential(&self, r: f64) -> Result<f64> {
        self.validate()?;
        match self {
            PotentialModel::Exponential1D { lambda, .. } => {
                Ok(-0.5 * lambda * lambda * (2.0 * lambda * r).exp())
            }
            _ if r <= 0.0 => Err(Error::Domain(format!(
                "effective_potential: radial coordinate must be positive, got {r}"
            ))),
            PotentialModel::Kratzer { xi, lambda } => Ok(xi / r + lambda / (r * r)),
            PotentialModel::InverseCube { lambda, zeta } => Ok(lambda / (r * r) + zeta / (r * r * r)),
            PotentialModel::InverseQuartic { lambda, zeta, .. } => {
                Ok(lambda / (r * r) + zeta / (r * r * r * r))
            }
            PotentialModel::DipoleQuadrupole(p) => {
                let chi = self.resolve_chi()?;
                Ok(0.5 * chi * (chi + 1.0) / (r * r) + p.p() / (r * r * r))
            }
        }
    }
}

/// Energy-dependent spectral data: wavenumber k = √(2E), basis order ν and
/// the dimensionless spectral variable z of the coefficient recursion
/// (4ξ/k, 1/kζ, 1/kp; the quartic family is driven by ζk², stored here).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralMap {
    pub energy: f64,
    pub k: f64,
    pub nu: f64,
    pub z: f64,
}

/// Map a scattering model at energy E > 0 to its spectral parameters.
///
/// Only positive energies are admitted: the Bessel-basis construction
/// yields continuum scattering states, never bound states, for the radial
/// models handled here.
pub fn spectral_map(model: &PotentialModel, energy: f64) -> Result<SpectralMap> {
    model.validate()?;
    if !(energy > 0.0) {
        return Err(Error::Domain(format!(
            "scattering requires E > 0, got {energy} (only continuum states exist in this basis)"
        )));
    }
    let k = (2.0 * energy).sqrt();
    let (nu, z) = match model {
        PotentialModel::Kratzer { xi, lambda } => ((2.0 * lambda + 0.25).sqrt(), 4.0 * xi / k),
        PotentialModel::InverseCube { lambda, zeta } => {
            if *zeta == 0.0 {
                return Err(Error::Degenerate(
                    "inverse-cube strength is zero; use the Kratzer model with xi = 0".into(),
                ));
            }
            ((2.0 * lambda + 0.25).sqrt(), 1.0 / (k * zeta))
        }
        PotentialModel::InverseQuartic { lambda, zeta, nu } => {
            let nu = nu.unwrap_or_else(|| (2.0 * lambda + 0.25).sqrt());
            // the quartic recursion is driven by ζk², not a 1/k-type z
            (nu, zeta * k * k)
        }
        PotentialModel::DipoleQuadrupole(p) => {
            if p.p() == 0.0 {
                return Err(Error::Degenerate(
                    "effective quadrupole moment p = ηq vanishes; use the Kratzer model with xi = 0"
                        .into(),
                ));
            }
            let chi = model.resolve_chi()?;
            (chi + 0.5, 1.0 / (k * p.p()))
        }
        PotentialModel::Exponential1D { .. } => {
            return Err(Error::Domain(
                "the exponential model has bound states only; no scattering map".into(),
            ));
        }
    };
    Ok(SpectralMap { energy, k, nu, z })
}

/// Scaled L∞ residual of −½ψ'' + Vψ − Eψ on a uniform grid, using 5-point
/// central differences; the outermost two points on each side carry no
/// stencil and are excluded. Normalized by E·max|ψ|.
pub fn schrodinger_residual(
    r: &[f64],
    psi: &[f64],
    energy: f64,
    model: &PotentialModel,
) -> Result<f64> {
    if r.len() != psi.len() || r.len() < 5 {
        return Err(Error::Domain("schrodinger_residual: need >= 5 matching samples".into()));
    }
    let h = r[1] - r[0];
    if h <= 0.0 {
        return Err(Error::Domain("schrodinger_residual: grid must ascend".into()));
    }
    for w in r.windows(2) {
        if ((w[1] - w[0]) - h).abs() > 1e-9 * h {
            return Err(Error::Domain("schrodinger_residual: grid must be uniform".into()));
        }
    }
    let mut v = Vec::with_capacity(r.len());
    let mut v_max = 0.0_f64;
    for &ri in r {
        let vi = model.effective_potential(ri)?;
        v_max = v_max.max(vi.abs());
        v.push(vi);
    }
    if h * h * v_max > 1.0 {
        return Err(Error::Resolution(format!(
            "grid too coarse: h²·max|V| = {:.3e} exceeds 1",
            h * h * v_max
        )));
    }
    let psi_max = psi.iter().fold(0.0_f64, |m, &p| m.max(p.abs()));
    if psi_max == 0.0 {
        return Err(Error::Domain("schrodinger_residual: psi is identically zero".into()));
    }
    let mut worst = 0.0_f64;
    for i in 2..r.len() - 2 {
        let d2 = (-psi[i - 2] + 16.0 * psi[i - 1] - 30.0 * psi[i] + 16.0 * psi[i + 1]
            - psi[i + 2])
            / (12.0 * h * h);
        let res = -0.5 * d2 + v[i] * psi[i] - energy * psi[i];
        worst = worst.max(res.abs());
    }
    Ok(worst / (energy.abs() * psi_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{bessel_j, AccuracyPolicy};
    use approx::assert_relative_eq;

    #[test]
    fn kratzer_potential_values() {
        let flat = PotentialModel::Kratzer { xi: 0.0, lambda: 0.0 };
        assert_eq!(flat.effective_potential(0.7).unwrap(), 0.0);
        let v = PotentialModel::Kratzer { xi: 2.0, lambda: 1.0 };
        assert_relative_eq!(v.effective_potential(2.0).unwrap(), 1.25, max_relative = 1e-15);
        assert!(v.effective_potential(-1.0).is_err());
        assert!(v.effective_potential(0.0).is_err());
    }

    #[test]
    fn lambda_boundary_is_sharp() {
        let eps = 1e-9;
        assert!(PotentialModel::Kratzer { xi: 0.0, lambda: -0.125 - eps }.validate().is_err());
        assert!(PotentialModel::Kratzer { xi: 0.0, lambda: -0.125 + eps }.validate().is_ok());
        assert!(PotentialModel::InverseCube { lambda: -0.125 - eps, zeta: 1.0 }.validate().is_err());
    }

    #[test]
    fn eta_range_is_enforced() {
        let mk = |eta| {
            PotentialModel::DipoleQuadrupole(DipoleQuadrupoleParams {
                d: 1.0,
                q: 2.0,
                eta,
                m: 1,
                branch: 0,
            })
        };
        assert!(mk(-0.6).validate().is_err());
        assert!(mk(1.2).validate().is_err());
        assert!(mk(0.5).validate().is_ok());
    }

    #[test]
    fn kratzer_spectral_map_matches_hand_values() {
        // ξ = Z = 2, Λ = ℓ(ℓ+1)/2 with ℓ = 1, E = 3 → k = √6, ν = 3/2, z = 8/√6
        let model = PotentialModel::Kratzer { xi: 2.0, lambda: 1.0 };
        let map = spectral_map(&model, 3.0).unwrap();
        assert_relative_eq!(map.k, 6.0_f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(map.nu, 1.5, max_relative = 1e-15);
        assert_relative_eq!(map.z, 8.0 / 6.0_f64.sqrt(), max_relative = 1e-15);

        let free = spectral_map(&PotentialModel::Kratzer { xi: 0.0, lambda: 0.0 }, 2.0).unwrap();
        assert_eq!(free.z, 0.0);
        assert_relative_eq!(free.nu, 0.5, max_relative = 1e-15);
    }

    #[test]
    fn nonpositive_energy_is_rejected() {
        let model = PotentialModel::Kratzer { xi: 1.0, lambda: 0.5 };
        assert!(spectral_map(&model, 0.0).is_err());
        assert!(spectral_map(&model, -2.0).is_err());
    }

    #[test]
    fn dipole_quadrupole_map() {
        // d=2, q=3, η=1/2, m=1, E=5 → k=√10, p=1.5, z=1/(1.5√10)
        let model = PotentialModel::DipoleQuadrupole(DipoleQuadrupoleParams {
            d: 2.0,
            q: 3.0,
            eta: 0.5,
            m: 1,
            branch: 0,
        });
        let map = spectral_map(&model, 5.0).unwrap();
        assert_relative_eq!(map.k, 10.0_f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(map.z, 1.0 / (1.5 * 10.0_f64.sqrt()), max_relative = 1e-14);
        // ν = χ + ½ with χ from the angular eigenproblem
        let chi = model.resolve_chi().unwrap();
        assert_relative_eq!(map.nu, chi + 0.5, max_relative = 1e-14);
        assert!(chi > 0.0 && chi < 1.0, "lowest branch at these couplings, got {chi}");

        // the effective potential at r = 1 is χ(χ+1)/2 + 1.5
        let v1 = model.effective_potential(1.0).unwrap();
        assert_relative_eq!(v1, 0.5 * chi * (chi + 1.0) + 1.5, max_relative = 1e-12);
    }

    #[test]
    fn degenerate_quadrupole_points_to_kratzer() {
        let model = PotentialModel::DipoleQuadrupole(DipoleQuadrupoleParams {
            d: 1.0,
            q: 3.0,
            eta: 0.0,
            m: 1,
            branch: 0,
        });
        match spectral_map(&model, 5.0) {
            Err(Error::Degenerate(msg)) => assert!(msg.contains("Kratzer")),
            other => panic!("expected degenerate-model error, got {other:?}"),
        }
    }

    #[test]
    fn zero_dipole_reduces_to_integer_angular_momentum() {
        for m in 0..3u32 {
            let spec = dipole::chi_values(0.0, m, 30).unwrap();
            for (i, chi) in spec.chi_list().iter().enumerate() {
                assert_relative_eq!(*chi, (i as u32 + m) as f64, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn spectral_map_inverts() {
        let model = PotentialModel::Kratzer { xi: 1.7, lambda: 0.9 };
        let map = spectral_map(&model, 2.3).unwrap();
        assert_relative_eq!(map.z * map.k / 4.0, 1.7, max_relative = 1e-14);
        assert_relative_eq!((map.nu * map.nu - 0.25) / 2.0, 0.9, max_relative = 1e-14);

        let model = PotentialModel::InverseCube { lambda: 0.9, zeta: 2.4 };
        let map = spectral_map(&model, 2.3).unwrap();
        assert_relative_eq!(1.0 / (map.z * map.k), 2.4, max_relative = 1e-14);
    }

    #[test]
    fn quartic_default_basis_order() {
        let model = PotentialModel::InverseQuartic { lambda: 0.375, zeta: 2.0, nu: None };
        let map = spectral_map(&model, 2.0).unwrap();
        assert_relative_eq!(map.nu, 1.0, max_relative = 1e-15);
        assert_relative_eq!(map.z, 2.0 * 4.0, max_relative = 1e-15); // ζk²
        let custom = PotentialModel::InverseQuartic { lambda: 0.375, zeta: 2.0, nu: Some(1.7) };
        assert_relative_eq!(spectral_map(&custom, 2.0).unwrap().nu, 1.7, max_relative = 1e-15);
    }

    #[test]
    fn residual_of_free_wave_is_stencil_limited() {
        let k = 1.0_f64;
        let h = 1e-3;
        let model = PotentialModel::Kratzer { xi: 0.0, lambda: 0.0 };
        let r: Vec<f64> = (0..2001).map(|i| 1.0 + i as f64 * h).collect();
        let psi: Vec<f64> = r.iter().map(|&ri| (k * ri).sin()).collect();
        let res = schrodinger_residual(&r, &psi, 0.5 * k * k, &model).unwrap();
        assert!(res < 5e-9, "free-wave residual {res:e}"); // stencil roundoff floor eps/h²
    }

    #[test]
    fn residual_of_bessel_identity() {
        // ψ = √(kr) J_ν(kr) solves −½ψ'' + (ν²−¼)/(2r²) ψ = (k²/2) ψ
        let policy = AccuracyPolicy::default();
        let (nu, k) = (1.3_f64, 1.0_f64);
        let lambda = 0.5 * (nu * nu - 0.25);
        let model = PotentialModel::Kratzer { xi: 0.0, lambda };
        let h = 1e-3;
        let r: Vec<f64> = (0..3001).map(|i| 0.8 + i as f64 * h).collect();
        let psi: Vec<f64> = r
            .iter()
            .map(|&ri| (k * ri).sqrt() * bessel_j(nu, k * ri, &policy).unwrap())
            .collect();
        let res = schrodinger_residual(&r, &psi, 0.5 * k * k, &model).unwrap();
        assert!(res < 1e-6, "bessel residual {res:e}");
    }

    #[test]
    fn coarse_grid_is_a_resolution_error() {
        let model = PotentialModel::Kratzer { xi: 0.0, lambda: 50.0 };
        let r: Vec<f64> = (0..6).map(|i| 0.1 + 0.5 * i as f64).collect();
        let psi = vec![1.0; 6];
        assert!(matches!(
            schrodinger_residual(&r, &psi, 1.0, &model),
            Err(Error::Resolution(_))
        ));
    }
}
