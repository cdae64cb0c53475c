//! Quantum g-divergences H_g(A, B) = ⟨B^{1/2}, g(L_A R_B^{−1}) B^{1/2}⟩.
//!
//! The primary evaluation route is the two-sided spectral double sum
//!
//!   H_g(A, B) = Σ_ij g(λ_i/μ_j) · μ_j · |⟨u_i|v_j⟩|²
//!
//! over the eigensystems (λ, u) of A and (μ, v) of B, which reduces to the
//! classical Σ g(p_i/q_i) q_i when the inputs commute. The superoperator
//! route through [`crate::superop::left_right_op`] serves as a cross-check
//! oracle, including the resolvent atoms Tr (ρ−γ)(L_ρ + sR_γ)^{−1}(ρ−γ) of
//! the integral representation of H_g.

use crate::functions::GFunction;
use crate::linalg::{dagger, hs_inner, CMat, DensityMatrix};
use crate::superop::{left_right_op, SideScale};
use crate::{Error, Result};

/// Result record for a divergence evaluation.
#[derive(Debug, Clone)]
pub struct DivergenceValue {
    pub value: f64,
    /// Canonical name of the g function used.
    pub g_tag: String,
    /// FNV-1a digest of the inputs, for cache keys and report provenance.
    pub inputs_hash: u64,
}

fn fnv1a(bytes: impl IntoIterator<Item = u8>) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn hash_inputs(tag: &str, a: &CMat, b: &CMat) -> u64 {
    let bytes = tag
        .as_bytes()
        .iter()
        .copied()
        .chain(a.iter().flat_map(|z| {
            z.re.to_bits()
                .to_le_bytes()
                .into_iter()
                .chain(z.im.to_bits().to_le_bytes())
        }))
        .chain(b.iter().flat_map(|z| {
            z.re.to_bits()
                .to_le_bytes()
                .into_iter()
                .chain(z.im.to_bits().to_le_bytes())
        }));
    fnv1a(bytes)
}

/// Two-sided spectral double sum Σ_ij g(λ_i/μ_j)·μ_j·|⟨u_i|v_j⟩|².
///
/// Near-degenerate cross terms are summed without pruning.
pub fn h_g(g: &GFunction, a: &DensityMatrix, b: &DensityMatrix) -> Result<DivergenceValue> {
    if a.dim() != b.dim() {
        return Err(Error::InvalidInput("divergence needs equal dimensions".into()));
    }
    let da = a.eig();
    let db = b.eig();
    let overlap = dagger(&da.eigenvectors).dot(&db.eigenvectors);
    let d = a.dim();
    let mut value = 0.0;
    for i in 0..d {
        for j in 0..d {
            let w = overlap[[i, j]].norm_sqr();
            value += g.eval(da.eigenvalues[i] / db.eigenvalues[j])? * db.eigenvalues[j] * w;
        }
    }
    Ok(DivergenceValue {
        value,
        g_tag: g.name(),
        inputs_hash: hash_inputs(&g.name(), a.mat(), b.mat()),
    })
}

/// H_{g̃}(A, B) with g̃(x) = x·g(1/x), which equals H_g(B, A).
pub fn h_g_dual(g: &GFunction, a: &DensityMatrix, b: &DensityMatrix) -> Result<DivergenceValue> {
    h_g(&g.dual(), a, b)
}

/// Named closed-form divergences used as oracles for the spectral route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpecialDivergence {
    /// Relative entropy Tr ρ(log ρ − log γ).
    RelEnt,
    /// Quadratic relative entropy Tr ρ²γ^{−1} − 1.
    Quadratic,
    /// WYD divergence (1 − Tr ρ^t γ^{1−t})/(t(1−t)), t ∈ (0,1) ∪ (1,2].
    Wyd(f64),
    /// Wigner–Yanase divergence 4(1 − Tr ρ^{1/2} γ^{1/2}).
    Wy,
    /// Symmetrized minimal-metric divergence ⟨ρ−γ, 2/(L_ρ+R_γ)(ρ−γ)⟩.
    MinSym,
}

impl SpecialDivergence {
    fn g_tag(&self) -> String {
        match self {
            SpecialDivergence::RelEnt => "xlogx".into(),
            SpecialDivergence::Quadratic => "quadratic".into(),
            SpecialDivergence::Wyd(t) => format!("gt:{t}"),
            SpecialDivergence::Wy => "gt:0.5".into(),
            SpecialDivergence::MinSym => "gmin".into(),
        }
    }
}

/// Closed-form evaluation of the named divergences.
pub fn special_divergence(
    kind: SpecialDivergence,
    rho: &DensityMatrix,
    gamma: &DensityMatrix,
) -> Result<DivergenceValue> {
    if rho.dim() != gamma.dim() {
        return Err(Error::InvalidInput("divergence needs equal dimensions".into()));
    }
    let dr = rho.eig();
    let dg = gamma.eig();
    let value = match kind {
        SpecialDivergence::RelEnt => {
            let log_r = dr.apply_fn(f64::ln)?;
            let log_g = dg.apply_fn(f64::ln)?;
            hs_inner(rho.mat(), &(&log_r - &log_g))?.re
        }
        SpecialDivergence::Quadratic => {
            let g_inv = dg.apply_fn(|x| 1.0 / x)?;
            hs_inner(rho.mat(), &rho.mat().dot(&g_inv))?.re - 1.0
        }
        SpecialDivergence::Wyd(t) => {
            let ok = (t > 0.0 && t < 1.0) || (t > 1.0 && t <= 2.0);
            if !ok {
                return Err(Error::InvalidInput(format!(
                    "WYD divergence parameter {t} outside (0,1) u (1,2]"
                )));
            }
            let rp = dr.apply_fn(|x| x.powf(t))?;
            let gp = dg.apply_fn(|x| x.powf(1.0 - t))?;
            (1.0 - hs_inner(&dagger(&rp), &gp)?.re) / (t * (1.0 - t))
        }
        SpecialDivergence::Wy => {
            let rs = dr.apply_fn(f64::sqrt)?;
            let gs = dg.apply_fn(f64::sqrt)?;
            4.0 * (1.0 - hs_inner(&rs, &gs)?.re)
        }
        SpecialDivergence::MinSym => {
            let d = rho.dim();
            let overlap = dagger(&dr.eigenvectors).dot(&dg.eigenvectors);
            let mut acc = 0.0;
            for i in 0..d {
                for j in 0..d {
                    let li = dr.eigenvalues[i];
                    let mj = dg.eigenvalues[j];
                    acc += 2.0 * (li - mj) * (li - mj) / (li + mj) * overlap[[i, j]].norm_sqr();
                }
            }
            acc
        }
    };
    Ok(DivergenceValue {
        value,
        g_tag: kind.g_tag(),
        inputs_hash: hash_inputs(&kind.g_tag(), rho.mat(), gamma.mat()),
    })
}

/// Resolvent quadratic form Tr (ρ−γ)(L_ρ + sR_γ)^{−1}(ρ−γ), evaluated through
/// the superoperator route; equals H_{g_s}(ρ, γ) for g_s(x) = (x−1)²/(x+s).
pub fn h_g_integral_check(s: f64, rho: &DensityMatrix, gamma: &DensityMatrix) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::InvalidInput(format!("resolvent parameter {s} must be >= 0")));
    }
    let op = left_right_op(
        rho.hermitian(),
        gamma.hermitian(),
        |x| 1.0 / (x + s),
        SideScale::InverseRight,
    )?;
    let delta = rho.mat() - gamma.mat();
    Ok(hs_inner(&delta, &op.apply(&delta)?)?.re)
}

/// H_g resynthesized from an integral-form measure (constant c for the
/// quadratic atom plus resolvent atoms), for cross-checking the double sum.
pub fn h_g_from_measure(
    measure: &crate::functions::DiscreteMeasure,
    rho: &DensityMatrix,
    gamma: &DensityMatrix,
) -> Result<f64> {
    let mut acc = 0.0;
    if measure.constant_c != 0.0 {
        let quad = special_divergence(SpecialDivergence::Quadratic, rho, gamma)?;
        acc += measure.constant_c * quad.value;
    }
    for &(s, w) in &measure.atoms {
        acc += w * h_g_integral_check(s, rho, gamma)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{DiscreteMeasure, GFunction};
    use crate::linalg::{random_density_rng, rng_from_seed};
    use approx::assert_abs_diff_eq;
    use ndarray::Array2;
    use num_complex::Complex64 as C64;

    fn diag_density(p: &[f64]) -> DensityMatrix {
        let d = p.len();
        let m = Array2::from_shape_fn((d, d), |(i, j)| {
            if i == j {
                C64::new(p[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        DensityMatrix::new(m).unwrap()
    }

    #[test]
    fn classical_pairs_match_hand_sums() {
        let rho = diag_density(&[0.6, 0.4]);
        let gam = diag_density(&[0.5, 0.5]);

        let v = h_g(&GFunction::x_log_x(), &rho, &gam).unwrap();
        let expect = 0.6 * (0.6f64 / 0.5).ln() + 0.4 * (0.4f64 / 0.5).ln();
        assert_abs_diff_eq!(v.value, expect, epsilon = 1e-12);
        assert_abs_diff_eq!(v.value, 0.020135, epsilon = 1e-6);

        let q = h_g(&GFunction::quadratic(), &rho, &gam).unwrap();
        assert_abs_diff_eq!(q.value, 0.04, epsilon = 1e-12);
        let q2 = special_divergence(SpecialDivergence::Quadratic, &rho, &gam).unwrap();
        assert_abs_diff_eq!(q2.value, 0.04, epsilon = 1e-12);

        // Swapped roles via the dual.
        let dual = h_g(&GFunction::neg_log(), &rho, &gam).unwrap();
        let swapped = h_g(&GFunction::x_log_x(), &gam, &rho).unwrap();
        assert_abs_diff_eq!(dual.value, swapped.value, epsilon = 1e-12);
        assert_abs_diff_eq!(dual.value, 0.020411, epsilon = 1e-6);

        let rel = special_divergence(SpecialDivergence::RelEnt, &rho, &gam).unwrap();
        assert_abs_diff_eq!(rel.value, 0.020135, epsilon = 1e-6);
    }

    #[test]
    fn zero_at_equal_inputs() {
        let mut rng = rng_from_seed(40);
        let rho = random_density_rng(&mut rng, 3, 1e-2);
        for g in GFunction::catalog() {
            let v = h_g(&g, &rho, &rho).unwrap();
            assert!(v.value.abs() < 1e-10, "{}: {}", g.name(), v.value);
        }
        let wy = special_divergence(SpecialDivergence::Wy, &rho, &rho).unwrap();
        assert!(wy.value.abs() < 1e-10);
    }

    #[test]
    fn dual_identity_on_random_pairs() {
        let mut rng = rng_from_seed(41);
        for _ in 0..20 {
            let a = random_density_rng(&mut rng, 2, 1e-2);
            let b = random_density_rng(&mut rng, 2, 1e-2);
            for g in [GFunction::x_log_x(), GFunction::g_s(0.7).unwrap()] {
                let lhs = h_g_dual(&g, &a, &b).unwrap().value;
                let rhs = h_g(&g, &b, &a).unwrap().value;
                assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn special_divergences_match_spectral_route() {
        let mut rng = rng_from_seed(42);
        for _ in 0..20 {
            let a = random_density_rng(&mut rng, 3, 1e-2);
            let b = random_density_rng(&mut rng, 3, 1e-2);

            let rel = special_divergence(SpecialDivergence::RelEnt, &a, &b).unwrap().value;
            let spectral = h_g(&GFunction::x_log_x(), &a, &b).unwrap().value;
            assert_abs_diff_eq!(rel, spectral, epsilon = 1e-9);

            let wyd = special_divergence(SpecialDivergence::Wyd(0.5), &a, &b).unwrap().value;
            let wy = special_divergence(SpecialDivergence::Wy, &a, &b).unwrap().value;
            assert_abs_diff_eq!(wyd, wy, epsilon = 1e-10);
            let spectral = h_g(&GFunction::g_t_wyd(0.5).unwrap(), &a, &b).unwrap().value;
            assert_abs_diff_eq!(wyd, spectral, epsilon = 1e-9);

            let msym = special_divergence(SpecialDivergence::MinSym, &a, &b).unwrap().value;
            let spectral = h_g(&GFunction::g_min(), &a, &b).unwrap().value;
            assert_abs_diff_eq!(msym, spectral, epsilon = 1e-9);

            let wyd2 = special_divergence(SpecialDivergence::Wyd(1.5), &a, &b).unwrap().value;
            let spectral = h_g(&GFunction::g_t_wyd(1.5).unwrap(), &a, &b).unwrap().value;
            assert_abs_diff_eq!(wyd2, spectral, epsilon = 1e-9);
        }
    }

    #[test]
    fn resolvent_atoms_match_g_s() {
        let rho = diag_density(&[0.6, 0.4]);
        let gam = diag_density(&[0.5, 0.5]);
        // s = 0 classical: sum (p-q)^2 / p.
        let v = h_g_integral_check(0.0, &rho, &gam).unwrap();
        assert_abs_diff_eq!(v, 0.01 / 0.6 + 0.01 / 0.4, epsilon = 1e-12);
        assert_abs_diff_eq!(v, 0.0416667, epsilon = 1e-6);

        let mut rng = rng_from_seed(44);
        for _ in 0..10 {
            let a = random_density_rng(&mut rng, 2, 1e-2);
            let b = random_density_rng(&mut rng, 2, 1e-2);
            for s in [0.0, 0.3, 1.0, 10.0, 1e3] {
                let via_resolvent = h_g_integral_check(s, &a, &b).unwrap();
                let via_sum = h_g(&GFunction::g_s(s).unwrap(), &a, &b).unwrap().value;
                assert!((via_resolvent - via_sum).abs() < 1e-9 * via_sum.max(1.0));
            }
            // Large-s scaling: H_{g_s} decays like 1/s.
            let v1e3 = h_g_integral_check(1e3, &a, &b).unwrap();
            let v1e2 = h_g_integral_check(1e2, &a, &b).unwrap();
            assert!(v1e3 < v1e2);
        }
    }

    #[test]
    fn integral_measure_reconstructs_named_g() {
        let mut rng = rng_from_seed(45);
        let a = random_density_rng(&mut rng, 3, 1e-2);
        let b = random_density_rng(&mut rng, 3, 1e-2);
        // g_max = 1/2 (x-1)^2 + 1/2 g_0: constant atom plus one resolvent atom.
        let measure = DiscreteMeasure {
            atoms: vec![(0.0, 0.5)],
            constant_c: 0.5,
        };
        let via_measure = h_g_from_measure(&measure, &a, &b).unwrap();
        let direct = h_g(&GFunction::g_max(), &a, &b).unwrap().value;
        assert_abs_diff_eq!(via_measure, direct, epsilon = 1e-9);
        // g_min = 2 g_1.
        let measure = DiscreteMeasure {
            atoms: vec![(1.0, 2.0)],
            constant_c: 0.0,
        };
        let via_measure = h_g_from_measure(&measure, &a, &b).unwrap();
        let direct = h_g(&GFunction::g_min(), &a, &b).unwrap().value;
        assert_abs_diff_eq!(via_measure, direct, epsilon = 1e-9);
    }

    #[test]
    fn symmetrization_identity() {
        let mut rng = rng_from_seed(46);
        for _ in 0..20 {
            let a = random_density_rng(&mut rng, 2, 1e-2);
            let b = random_density_rng(&mut rng, 2, 1e-2);
            for g in [
                GFunction::x_log_x(),
                GFunction::quadratic(),
                GFunction::g_t_wyd(0.3).unwrap(),
            ] {
                let sym = g.symmetrize().unwrap();
                let lhs = h_g(&sym, &a, &b).unwrap().value;
                let rhs = (h_g(&g, &a, &b).unwrap().value + h_g(&g, &b, &a).unwrap().value)
                    / g.second_derivative_at_one();
                assert!((lhs - rhs).abs() < 1e-9 * rhs.abs().max(1.0));
            }
        }
    }

    #[test]
    fn positivity_on_random_pairs() {
        let mut rng = rng_from_seed(47);
        for _ in 0..100 {
            let a = random_density_rng(&mut rng, 2, 1e-3);
            let b = random_density_rng(&mut rng, 2, 1e-3);
            for g in GFunction::catalog() {
                let v = h_g(&g, &a, &b).unwrap().value;
                assert!(v >= -1e-10, "{} negative: {v}", g.name());
            }
        }
    }

    #[test]
    fn hash_distinguishes_inputs() {
        let rho = diag_density(&[0.6, 0.4]);
        let gam = diag_density(&[0.5, 0.5]);
        let a = h_g(&GFunction::x_log_x(), &rho, &gam).unwrap();
        let b = h_g(&GFunction::x_log_x(), &gam, &rho).unwrap();
        assert_ne!(a.inputs_hash, b.inputs_hash);
        let c = h_g(&GFunction::x_log_x(), &rho, &gam).unwrap();
        assert_eq!(a.inputs_hash, c.inputs_hash);
    }

    #[test]
    fn wyd_parameter_validation() {
        let rho = diag_density(&[0.6, 0.4]);
        let gam = diag_density(&[0.5, 0.5]);
        assert!(special_divergence(SpecialDivergence::Wyd(0.0), &rho, &gam).is_err());
        assert!(special_divergence(SpecialDivergence::Wyd(2.5), &rho, &gam).is_err());
    }
}
