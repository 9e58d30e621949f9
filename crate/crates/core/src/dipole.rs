//! The dipole angular eigenproblem: an infinite symmetric tridiagonal
//! matrix whose eigenvalues are the allowed values of (χ+½)², where χ is
//! the dipole-modified angular quantum number. Diagonalization is by
//! Sturm-sequence bisection, which is deterministic, needs no workspace
//! and delivers every eigenvalue to near machine precision.

use crate::{Error, Result};

/// Symmetric tridiagonal matrix stored as its diagonal and one off-diagonal.
#[derive(Debug, Clone)]
pub struct TridiagonalSymmetric {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl TridiagonalSymmetric {
    pub fn size(&self) -> usize {
        self.diag.len()
    }

    /// Gershgorin bounds on the spectrum.
    fn bounds(&self) -> (f64, f64) {
        let n = self.size();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.offdiag[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo - 1.0, hi + 1.0)
    }
}

/// Number of eigenvalues strictly below `lambda` (Sturm count via the
/// LDLᵀ pivot signs).
pub fn sturm_count(t: &TridiagonalSymmetric, lambda: f64) -> usize {
    let n = t.size();
    if n == 0 {
        return 0;
    }
    // pivot guard keeps the factorization moving through exact ties
    let scale = t
        .diag
        .iter()
        .chain(t.offdiag.iter())
        .fold(1.0_f64, |m, &v| m.max(v.abs()));
    let guard = f64::EPSILON * f64::EPSILON * scale;
    let mut count = 0;
    let mut q = t.diag[0] - lambda;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let q_safe = if q.abs() < guard {
            if q >= 0.0 {
                guard
            } else {
                -guard
            }
        } else {
            q
        };
        q = (t.diag[i] - lambda) - t.offdiag[i - 1] * t.offdiag[i - 1] / q_safe;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// k-th smallest eigenvalue (0-based) by bisection on the Sturm count.
fn eigenvalue_k(t: &TridiagonalSymmetric, k: usize, lo0: f64, hi0: f64) -> f64 {
    let mut lo = lo0;
    let mut hi = hi0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 4.0 * f64::EPSILON * mid.abs().max(1.0) {
            break;
        }
        if sturm_count(t, mid) <= k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All eigenvalues, ascending.
pub fn eigen_tridiag(t: &TridiagonalSymmetric) -> Vec<f64> {
    let n = t.size();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 || t.offdiag.iter().all(|&e| e == 0.0) {
        // decoupled: the spectrum is the diagonal, exactly
        let mut eig = t.diag.clone();
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        return eig;
    }
    let (lo, hi) = t.bounds();
    (0..n).map(|k| eigenvalue_k(t, k, lo, hi)).collect()
}

/// Smallest eigenvalue only (the branch that decides criticality).
pub fn lowest_eigenvalue(t: &TridiagonalSymmetric) -> f64 {
    let (lo, hi) = t.bounds();
    eigenvalue_k(t, 0, lo, hi)
}

/// Truncated angular matrix for dipole strength d and azimuthal number m:
/// diagonal (i+m+½)², couplings −d √((i+1)(i+2m+1) / ((i+m+1)²−¼)).
///
/// The printed sub-diagonal expression −d√(i(i+2m)/((i+m)²−¼)) evaluated at
/// row i+1 must equal the super-diagonal at column i; this symmetry is
/// asserted at build time and only one array is stored.
pub fn build_t(d: f64, m: u32, size: usize) -> Result<TridiagonalSymmetric> {
    if size < 2 {
        return Err(Error::Domain(format!("build_t: size {size} < 2")));
    }
    if d < 0.0 {
        return Err(Error::Domain(format!("build_t: dipole strength {d} < 0")));
    }
    let mf = m as f64;
    let diag: Vec<f64> = (0..size).map(|i| (i as f64 + mf + 0.5).powi(2)).collect();
    let mut offdiag = Vec::with_capacity(size - 1);
    for i in 0..size - 1 {
        let ifl = i as f64;
        let super_diag =
            -d * ((ifl + 1.0) * (ifl + 2.0 * mf + 1.0) / ((ifl + mf + 1.0).powi(2) - 0.25)).sqrt();
        let j = ifl + 1.0; // sub-diagonal row index
        let sub_diag = -d * ((j * (j + 2.0 * mf)) / ((j + mf).powi(2) - 0.25)).sqrt();
        debug_assert!(
            (super_diag - sub_diag).abs() <= 1e-14 * super_diag.abs().max(1.0),
            "asymmetric couplings at i = {i}"
        );
        offdiag.push(super_diag);
    }
    Ok(TridiagonalSymmetric { diag, offdiag })
}

/// Criticality classification of one eigenvalue branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchClass {
    /// λ > 0: a real χ = √λ − ½ exists.
    Subcritical,
    /// λ = 0 (within tolerance): χ = −½ exactly, the boundary case.
    Critical,
    /// λ < 0: no real χ.
    Supercritical,
}

/// One branch of the angular spectrum.
#[derive(Debug, Clone, Copy)]
pub struct ChiBranch {
    /// Eigenvalue, i.e. the value of (χ+½)².
    pub lambda: f64,
    /// χ = √λ − ½ for λ ≥ 0; None when supercritical.
    pub chi: Option<f64>,
    pub class: BranchClass,
}

/// Spectrum of the truncated angular matrix and the derived χ values.
#[derive(Debug, Clone)]
pub struct DipoleSpectrum {
    pub m: u32,
    pub d: f64,
    pub size: usize,
    /// Ascending eigenvalues of the truncation, i.e. (χ+½)² candidates.
    pub eigenvalues: Vec<f64>,
    pub branches: Vec<ChiBranch>,
}

impl DipoleSpectrum {
    /// Real χ values in ascending order (supercritical branches skipped).
    pub fn chi_list(&self) -> Vec<f64> {
        self.branches.iter().filter_map(|b| b.chi).collect()
    }

    /// χ of one eigenbranch; supercritical branches are an error telling
    /// the caller to raise |m|.
    pub fn branch_chi(&self, branch: usize) -> Result<f64> {
        let b = self
            .branches
            .get(branch)
            .ok_or_else(|| Error::Domain(format!("branch {branch} outside truncation {}", self.size)))?;
        b.chi.ok_or(Error::Supercritical { m: self.m })
    }
}

/// Eigenvalues of the truncated angular matrix and χᵢ = √λᵢ − ½.
///
/// Fails with [`Error::Supercritical`] when every branch has λ ≤ 0
/// (the remedy is a larger |m|).
pub fn chi_values(d: f64, m: u32, size: usize) -> Result<DipoleSpectrum> {
    let t = build_t(d, m, size)?;
    let eigenvalues = eigen_tridiag(&t);
    let zero_tol = 1e-12 * eigenvalues.last().map(|v| v.abs()).unwrap_or(1.0).max(1.0);
    let branches: Vec<ChiBranch> = eigenvalues
        .iter()
        .map(|&lambda| {
            if lambda > zero_tol {
                ChiBranch {
                    lambda,
                    chi: Some(lambda.sqrt() - 0.5),
                    class: BranchClass::Subcritical,
                }
            } else if lambda >= -zero_tol {
                ChiBranch { lambda, chi: Some(-0.5), class: BranchClass::Critical }
            } else {
                ChiBranch { lambda, chi: None, class: BranchClass::Supercritical }
            }
        })
        .collect();
    if branches.iter().all(|b| b.class == BranchClass::Supercritical) {
        return Err(Error::Supercritical { m });
    }
    Ok(DipoleSpectrum { m, d, size, eigenvalues, branches })
}

/// χ of one branch with the truncation grown (doubling from `size`) until
/// the eigenvalue moves by less than `tol`.
pub fn chi_converged(d: f64, m: u32, branch: usize, size: usize, tol: f64) -> Result<f64> {
    let mut n = size.max(16);
    let mut prev = chi_values(d, m, n)?
        .eigenvalues
        .get(branch)
        .copied()
        .ok_or_else(|| Error::Domain(format!("branch {branch} outside truncation {n}")))?;
    for _ in 0..6 {
        n *= 2;
        let next = chi_values(d, m, n)?.eigenvalues[branch];
        if (next - prev).abs() <= tol {
            if next <= 0.0 {
                return Err(Error::Supercritical { m });
            }
            return Ok(next.sqrt() - 0.5);
        }
        prev = next;
    }
    Err(Error::Accuracy {
        context: format!("chi eigenvalue not converged at truncation {n}"),
        partial: prev,
        estimate: tol,
    })
}

/// Critical dipole strength: the d at which the lowest eigenvalue of the
/// truncated angular matrix crosses zero, found by bisection to |Δd| ≤ tol.
pub fn critical_dipole(m: u32, size: usize, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Domain("critical_dipole: tol must be positive".into()));
    }
    let lowest = |d: f64| -> Result<f64> { Ok(lowest_eigenvalue(&build_t(d, m, size)?)) };
    let mut hi = 1.0;
    while lowest(hi)? > 0.0 {
        hi *= 2.0;
        if hi > 100.0 {
            return Err(Error::NotFound(format!(
                "critical_dipole: lowest eigenvalue positive for all d <= 100 at m = {m}"
            )));
        }
    }
    let mut lo = 0.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if lowest(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
