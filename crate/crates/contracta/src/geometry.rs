//! Monotone metric values, fidelity, Bures distance, and the closed-form
//! geodesic distances of the Wigner–Yanase and Bures metrics.
//!
//! The metric value at ρ in direction A is ⟨A, Ω_ρ^κ(A)⟩, reducing to the
//! Fisher–Rao sum Tr ρ^{−1}A² whenever ρ and A commute. Geodesic distances
//! have closed forms only for κ_WY and κ_min:
//!
//!   D_WY = arccos Tr ρ^{1/2}γ^{1/2}     D̃_WY = ‖ρ^{1/2} − γ^{1/2}‖₂
//!   D_min = arccos F(ρ, γ)              d_Bures = √(2 − 2F(ρ, γ))
//!
//! with F the fidelity; other κ raise `Unsupported` for geodesic queries.

use crate::functions::KappaFunction;
use crate::linalg::{hs_norm, trace, DensityMatrix, HermitianMatrix, TracelessHermitian};
use crate::superop::{omega, OmegaPower};
use crate::{Error, Result};

/// Geodesic distance flavors with closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeodesicKind {
    /// arccos Tr ρ^{1/2}γ^{1/2} (WY metric, curves inside the densities).
    WyArc,
    /// ‖ρ^{1/2} − γ^{1/2}‖₂ (WY metric, curves through the ambient cone).
    WyChord,
    /// arccos F(ρ, γ) (Bures metric geodesic).
    BuresArc,
    /// √(2 − 2F(ρ, γ)) (Bures chordal distance).
    BuresChord,
}

impl GeodesicKind {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "wy" | "wy-arc" => Ok(Self::WyArc),
            "wy-chord" => Ok(Self::WyChord),
            "bures" | "bures-arc" => Ok(Self::BuresArc),
            "bures-chord" => Ok(Self::BuresChord),
            _ => Err(Error::InvalidInput(format!("unknown geodesic kind {name:?}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::WyArc => "wy-arc",
            Self::WyChord => "wy-chord",
            Self::BuresArc => "bures-arc",
            Self::BuresChord => "bures-chord",
        }
    }

    /// The κ whose monotone metric induces this distance.
    pub fn kappa(&self) -> KappaFunction {
        match self {
            Self::WyArc | Self::WyChord => KappaFunction::wy(),
            Self::BuresArc | Self::BuresChord => KappaFunction::min(),
        }
    }
}

/// Metric quadratic form M_ρ^κ(A, A) = ⟨A, Ω_ρ^κ(A)⟩.
pub fn metric_value(
    kappa: &KappaFunction,
    rho: &DensityMatrix,
    a: &TracelessHermitian,
) -> Result<f64> {
    if rho.dim() != a.dim() {
        return Err(Error::InvalidInput("metric_value dimension mismatch".into()));
    }
    omega(rho, kappa, OmegaPower::One)?.quadratic_form(a.mat())
}

fn psd_sqrt(h: &HermitianMatrix) -> Result<crate::linalg::CMat> {
    let dec = h.eig();
    if dec.eigenvalues[0] < -1e-10 {
        return Err(Error::InvalidInput(format!(
            "expected a positive semidefinite matrix, min eigenvalue {:.3e}",
            dec.eigenvalues[0]
        )));
    }
    dec.apply_fn(|x| x.max(0.0).sqrt())
}

fn check_state(h: &HermitianMatrix) -> Result<()> {
    let tr = h.trace_re();
    if (tr - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidInput(format!(
            "expected a unit-trace state, got trace {tr}"
        )));
    }
    Ok(())
}

/// Fidelity F(ρ, γ) = Tr (ρ^{1/2} γ ρ^{1/2})^{1/2}.
///
/// Accepts positive semidefinite states, so pure-state boundary cases work.
pub fn fidelity(rho: &HermitianMatrix, gamma: &HermitianMatrix) -> Result<f64> {
    if rho.dim() != gamma.dim() {
        return Err(Error::InvalidInput("fidelity dimension mismatch".into()));
    }
    check_state(rho)?;
    check_state(gamma)?;
    let sr = psd_sqrt(rho)?;
    let inner = sr.dot(gamma.mat()).dot(&sr);
    let dec = HermitianMatrix::new_unchecked(inner).eig();
    Ok(dec.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).sum())
}

/// Tr ρ^{1/2} γ^{1/2}, the WY overlap (≤ fidelity, equal iff commuting).
pub fn sqrt_overlap(rho: &HermitianMatrix, gamma: &HermitianMatrix) -> Result<f64> {
    if rho.dim() != gamma.dim() {
        return Err(Error::InvalidInput("overlap dimension mismatch".into()));
    }
    let sr = psd_sqrt(rho)?;
    let sg = psd_sqrt(gamma)?;
    Ok(trace(&sr.dot(&sg)).re)
}

fn clamped_acos(t: f64) -> Result<f64> {
    if t > 1.0 + 1e-12 || t < -1.0 - 1e-12 {
        return Err(Error::Domain(format!("arccos argument {t} outside [-1, 1]")));
    }
    Ok(t.clamp(-1.0, 1.0).acos())
}

/// Closed-form geodesic / chordal distance of the requested kind.
///
/// Accepts positive semidefinite states; arc arguments are clamped into
/// [−1, 1] with 1e-12 slack against floating-point overshoot.
pub fn geodesic_distance(
    kind: GeodesicKind,
    rho: &HermitianMatrix,
    gamma: &HermitianMatrix,
) -> Result<f64> {
    if rho.dim() != gamma.dim() {
        return Err(Error::InvalidInput("geodesic distance dimension mismatch".into()));
    }
    check_state(rho)?;
    check_state(gamma)?;
    match kind {
        GeodesicKind::WyArc => clamped_acos(sqrt_overlap(rho, gamma)?),
        GeodesicKind::WyChord => {
            let sr = psd_sqrt(rho)?;
            let sg = psd_sqrt(gamma)?;
            Ok(hs_norm(&(&sr - &sg)))
        }
        GeodesicKind::BuresArc => clamped_acos(fidelity(rho, gamma)?),
        GeodesicKind::BuresChord => {
            let f = fidelity(rho, gamma)?;
            Ok((2.0 - 2.0 * f).max(0.0).sqrt())
        }
    }
}

/// Geodesic distance between strictly positive densities.
pub fn geodesic_distance_densities(
    kind: GeodesicKind,
    rho: &DensityMatrix,
    gamma: &DensityMatrix,
) -> Result<f64> {
    geodesic_distance(kind, rho.hermitian(), gamma.hermitian())
}

/// Checks that a κ has a closed-form geodesic (only WY and min do).
pub fn geodesic_kind_for_kappa(kappa: &KappaFunction) -> Result<GeodesicKind> {
    if *kappa == KappaFunction::wy() {
        Ok(GeodesicKind::WyArc)
    } else if *kappa == KappaFunction::min() {
        Ok(GeodesicKind::BuresArc)
    } else {
        Err(Error::Unsupported(format!(
            "no closed-form geodesic distance for kappa {:?}; only wy and min are supported",
            kappa.name()
        )))
    }
}
