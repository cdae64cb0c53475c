//! Dense complex-Hermitian matrix kernel.
//!
//! Spectral decomposition (cyclic Jacobi), spectral functional calculus,
//! Hilbert–Schmidt inner products, trace norms, and seeded random generators
//! for the matrix sizes this crate cares about (d ≤ 16).
//!
//! The Jacobi sweep order is fixed, so for a given input the decomposition is
//! bit-stable per platform. Eigenvalues come back ascending; each eigenvector
//! column is phase-fixed so its first component of magnitude above 1e-12 is
//! real and positive.

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

pub type C64 = Complex64;
pub type CMat = Array2<C64>;
pub type CVec = Array1<C64>;

/// Absolute tolerance for Hermiticity / trace checks on inputs.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalue floor below which a nominally positive matrix is treated as singular.
pub const SINGULAR_FLOOR: f64 = 1e-12;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

pub fn identity(d: usize) -> CMat {
    Array2::eye(d).mapv(|x: f64| C64::new(x, 0.0))
}

pub fn zeros(rows: usize, cols: usize) -> CMat {
    Array2::from_elem((rows, cols), ZERO)
}

/// Conjugate transpose.
pub fn dagger(m: &CMat) -> CMat {
    let (r, c) = m.dim();
    Array2::from_shape_fn((c, r), |(i, j)| m[[j, i]].conj())
}

pub fn trace(m: &CMat) -> C64 {
    m.diag().sum()
}

/// Hilbert–Schmidt inner product ⟨X, Y⟩ = Tr X*Y.
///
/// Conjugate-symmetric; real when both arguments are Hermitian.
pub fn hs_inner(x: &CMat, y: &CMat) -> Result<C64> {
    if x.dim() != y.dim() {
        return Err(Error::InvalidInput(format!(
            "hs_inner dimension mismatch: {:?} vs {:?}",
            x.dim(),
            y.dim()
        )));
    }
    let mut acc = ZERO;
    for (a, b) in x.iter().zip(y.iter()) {
        acc += a.conj() * b;
    }
    Ok(acc)
}

/// Hilbert–Schmidt (Frobenius) norm ‖X‖₂.
pub fn hs_norm(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn max_abs_entry(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// How far M is from being Hermitian, as max |M − M*| entry.
pub fn hermiticity_defect(m: &CMat) -> f64 {
    let (r, c) = m.dim();
    if r != c {
        return f64::INFINITY;
    }
    let mut worst = 0.0f64;
    for i in 0..r {
        for j in i..c {
            worst = worst.max((m[[i, j]] - m[[j, i]].conj()).norm());
        }
    }
    worst
}

/// A square complex matrix guaranteed Hermitian.
///
/// Construction symmetrizes (M + M*)/2 when the defect is within
/// [`HERMITIAN_TOL`] and rejects anything worse.
#[derive(Debug, Clone)]
pub struct HermitianMatrix {
    mat: CMat,
}

impl HermitianMatrix {
    pub fn new(m: CMat) -> Result<Self> {
        let (r, c) = m.dim();
        if r != c {
            return Err(Error::InvalidInput(format!(
                "expected square matrix, got {r}x{c}"
            )));
        }
        let defect = hermiticity_defect(&m);
        let scale = 1.0 + max_abs_entry(&m);
        if defect > HERMITIAN_TOL * scale {
            return Err(Error::InvalidInput(format!(
                "matrix is not Hermitian: defect {defect:.3e}"
            )));
        }
        let sym = Array2::from_shape_fn((r, c), |(i, j)| {
            (m[[i, j]] + m[[j, i]].conj()) * C64::new(0.5, 0.0)
        });
        Ok(Self { mat: sym })
    }

    /// Wraps a matrix that is Hermitian by construction (U f(Λ) U*, sums of
    /// Hermitian terms, ...) without re-checking; still symmetrizes.
    pub(crate) fn new_unchecked(m: CMat) -> Self {
        let d = m.nrows();
        let sym = Array2::from_shape_fn((d, d), |(i, j)| {
            (m[[i, j]] + m[[j, i]].conj()) * C64::new(0.5, 0.0)
        });
        Self { mat: sym }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn mat(&self) -> &CMat {
        &self.mat
    }

    pub fn into_mat(self) -> CMat {
        self.mat
    }

    pub fn eig(&self) -> SpectralDecomposition {
        jacobi_eig(&self.mat)
    }

    pub fn trace_re(&self) -> f64 {
        trace(&self.mat).re
    }
}

/// Positive-definite unit-trace Hermitian matrix (ρ ∈ 𝒟_d).
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    inner: HermitianMatrix,
}

impl DensityMatrix {
    pub fn new(m: CMat) -> Result<Self> {
        let h = HermitianMatrix::new(m)?;
        Self::from_hermitian(h)
    }

    pub fn from_hermitian(h: HermitianMatrix) -> Result<Self> {
        let tr = h.trace_re();
        if (tr - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidInput(format!(
                "density matrix must have unit trace, got {tr}"
            )));
        }
        let eigs = h.eig();
        let lambda_min = eigs.eigenvalues[0];
        if lambda_min < SINGULAR_FLOOR {
            return Err(Error::SingularInput(format!(
                "density matrix not strictly positive: lambda_min = {lambda_min:.3e}"
            )));
        }
        Ok(Self { inner: h })
    }

    /// Maximally mixed state I/d.
    pub fn maximally_mixed(d: usize) -> Self {
        let m = identity(d).mapv(|z| z / d as f64);
        Self {
            inner: HermitianMatrix::new_unchecked(m),
        }
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn mat(&self) -> &CMat {
        self.inner.mat()
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.inner
    }

    pub fn eig(&self) -> SpectralDecomposition {
        self.inner.eig()
    }
}

/// Hermitian matrix with zero trace (tangent vector A ∈ ℍ_d⁰).
#[derive(Debug, Clone)]
pub struct TracelessHermitian {
    inner: HermitianMatrix,
}

impl TracelessHermitian {
    pub fn new(m: CMat) -> Result<Self> {
        let h = HermitianMatrix::new(m)?;
        let tr = h.trace_re();
        let scale = 1.0 + max_abs_entry(h.mat());
        if tr.abs() > 1e-10 * scale {
            return Err(Error::InvalidInput(format!(
                "expected traceless matrix, got trace {tr:.3e}"
            )));
        }
        Ok(Self { inner: h })
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn mat(&self) -> &CMat {
        self.inner.mat()
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.inner
    }
}

/// Eigen-decomposition H = U diag(λ) U* with λ ascending and U unitary.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Eigenvectors as columns, matching `eigenvalues` order.
    pub eigenvectors: CMat,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// U diag(f(λ)) U*.
    pub fn apply_fn(&self, f: impl Fn(f64) -> f64) -> Result<CMat> {
        let d = self.dim();
        let mut fvals = Vec::with_capacity(d);
        for &l in &self.eigenvalues {
            let v = f(l);
            if !v.is_finite() {
                return Err(Error::Domain(format!(
                    "spectral function undefined at eigenvalue {l}"
                )));
            }
            fvals.push(v);
        }
        let u = &self.eigenvectors;
        let mut scaled = u.clone();
        for (j, &fv) in fvals.iter().enumerate() {
            let fc = C64::new(fv, 0.0);
            for i in 0..d {
                scaled[[i, j]] *= fc;
            }
        }
        Ok(scaled.dot(&dagger(u)))
    }

    pub fn reconstruct(&self) -> CMat {
        // f = identity cannot fail
        self.apply_fn(|x| x).expect("identity is total")
    }
}

/// Spectral decomposition of a Hermitian matrix, validating Hermiticity first.
pub fn hermitian_eig(m: &CMat) -> Result<SpectralDecomposition> {
    Ok(HermitianMatrix::new(m.clone())?.eig())
}

/// Functional calculus f(H) = U diag(f(λ)) U*.
pub fn apply_spectral_function(
    h: &HermitianMatrix,
    f: impl Fn(f64) -> f64,
) -> Result<HermitianMatrix> {
    let m = h.eig().apply_fn(f)?;
    Ok(HermitianMatrix::new_unchecked(m))
}

/// Trace norm ‖X‖₁ = Tr|X| (sum of singular values).
pub fn trace_norm(x: &CMat) -> Result<f64> {
    let (r, c) = x.dim();
    if r != c {
        return Err(Error::InvalidInput(format!(
            "trace_norm expects a square matrix, got {r}x{c}"
        )));
    }
    // Singular values are the square roots of eig(X*X).
    let gram = dagger(x).dot(x);
    let dec = jacobi_eig(&gram);
    Ok(dec
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .sum())
}

/// Cyclic Jacobi eigensolver for a Hermitian matrix.
///
/// Deterministic sweeps over (p, q) in lexicographic order. The input is
/// assumed Hermitian (callers go through [`HermitianMatrix`]); only the
/// Hermitian part participates via symmetrized updates.
fn jacobi_eig(h: &CMat) -> SpectralDecomposition {
    let d = h.nrows();
    let mut a = h.clone();
    let mut v = identity(d);
    if d > 1 {
        let scale = 1.0 + max_abs_entry(&a);
        let tol = 1e-15 * scale;
        const MAX_SWEEPS: usize = 64;
        for _ in 0..MAX_SWEEPS {
            let mut off = 0.0f64;
            for p in 0..d {
                for q in (p + 1)..d {
                    off = off.max(a[[p, q]].norm());
                }
            }
            if off <= tol {
                break;
            }
            for p in 0..(d - 1) {
                for q in (p + 1)..d {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| {
        a[[i, i]]
            .re
            .partial_cmp(&a[[j, j]].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[[i, i]].re).collect();
    let mut u = zeros(d, d);
    for (new_j, &old_j) in order.iter().enumerate() {
        // Phase convention: first component with magnitude > 1e-12 made real positive.
        let mut phase = ONE;
        for i in 0..d {
            let z = v[[i, old_j]];
            if z.norm() > 1e-12 {
                phase = z.conj() / z.norm();
                break;
            }
        }
        for i in 0..d {
            u[[i, new_j]] = v[[i, old_j]] * phase;
        }
    }
    SpectralDecomposition {
        eigenvalues,
        eigenvectors: u,
    }
}

/// One Jacobi rotation annihilating A[p][q].
fn rotate(a: &mut CMat, v: &mut CMat, p: usize, q: usize) {
    let alpha = a[[p, q]];
    let r = alpha.norm();
    let app = a[[p, p]].re;
    let aqq = a[[q, q]].re;
    if r <= 1e-18 * (1.0 + app.abs() + aqq.abs()) {
        a[[p, q]] = ZERO;
        a[[q, p]] = ZERO;
        return;
    }
    let phase = alpha / r; // e^{i phi}
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let cc = C64::new(c, 0.0);
    let d = a.nrows();

    // Column update: A <- A R with R[p][p]=c, R[p][q]=s, R[q][p]=-s e^{-i phi}, R[q][q]=c e^{-i phi}.
    let se_m = phase.conj() * s;
    let ce_m = phase.conj() * c;
    for k in 0..d {
        let akp = a[[k, p]];
        let akq = a[[k, q]];
        a[[k, p]] = akp * cc - akq * se_m;
        a[[k, q]] = akp * s + akq * ce_m;
    }
    // Row update: A <- R* A.
    let se_p = phase * s;
    let ce_p = phase * c;
    for k in 0..d {
        let apk = a[[p, k]];
        let aqk = a[[q, k]];
        a[[p, k]] = apk * cc - aqk * se_p;
        a[[q, k]] = apk * s + aqk * ce_p;
    }
    a[[p, q]] = ZERO;
    a[[q, p]] = ZERO;
    a[[p, p]] = C64::new(a[[p, p]].re, 0.0);
    a[[q, q]] = C64::new(a[[q, q]].re, 0.0);
    // Eigenvector update: V <- V R.
    for k in 0..d {
        let vkp = v[[k, p]];
        let vkq = v[[k, q]];
        v[[k, p]] = vkp * cc - vkq * se_m;
        v[[k, q]] = vkp * s + vkq * ce_m;
    }
}

/// HS-orthonormal basis of the traceless Hermitian subspace (generalized
/// Gell-Mann matrices), d² − 1 elements.
pub fn traceless_basis(d: usize) -> Vec<CMat> {
    let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
    let mut basis = Vec::with_capacity(d * d - 1);
    for i in 0..d {
        for j in (i + 1)..d {
            let mut sym = zeros(d, d);
            sym[[i, j]] = C64::new(inv_sqrt2, 0.0);
            sym[[j, i]] = C64::new(inv_sqrt2, 0.0);
            basis.push(sym);
            let mut asym = zeros(d, d);
            asym[[i, j]] = C64::new(0.0, -inv_sqrt2);
            asym[[j, i]] = C64::new(0.0, inv_sqrt2);
            basis.push(asym);
        }
    }
    for k in 1..d {
        let norm = 1.0 / ((k * (k + 1)) as f64).sqrt();
        let mut diag = zeros(d, d);
        for i in 0..k {
            diag[[i, i]] = C64::new(norm, 0.0);
        }
        diag[[k, k]] = C64::new(-(k as f64) * norm, 0.0);
        basis.push(diag);
    }
    basis
}

// ---------------------------------------------------------------------------
// Seeded random generators
// ---------------------------------------------------------------------------

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream for item `index` of a batch.
pub fn rng_for_index(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(index + 1)))
}

/// Standard normal via Box–Muller on the ChaCha stream.
pub fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn random_complex_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMat {
    Array2::from_shape_fn((rows, cols), |_| {
        C64::new(gaussian(rng), gaussian(rng)) * C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
    })
}

pub fn random_hermitian<R: Rng>(rng: &mut R, d: usize) -> HermitianMatrix {
    let g = random_complex_matrix(rng, d, d);
    let h = (&g + &dagger(&g)).mapv(|z| z * 0.5);
    HermitianMatrix::new_unchecked(h)
}

pub fn random_traceless<R: Rng>(rng: &mut R, d: usize) -> TracelessHermitian {
    let h = random_hermitian(rng, d);
    let tr = h.trace_re() / d as f64;
    let mut m = h.into_mat();
    for i in 0..d {
        m[[i, i]] -= C64::new(tr, 0.0);
    }
    TracelessHermitian {
        inner: HermitianMatrix::new_unchecked(m),
    }
}

/// Interior density ρ = (1−δ)·GG*/Tr(GG*) + δ·I/d, so λ_min(ρ) ≥ δ/d.
pub fn random_density_rng<R: Rng>(rng: &mut R, d: usize, interior_margin: f64) -> DensityMatrix {
    let delta = interior_margin;
    assert!(d >= 1 && delta > 0.0 && delta <= 1.0);
    let g = random_complex_matrix(rng, d, d);
    let gram = g.dot(&dagger(&g));
    let tr = trace(&gram).re;
    let m = Array2::from_shape_fn((d, d), |(i, j)| {
        let wishart = gram[[i, j]] * ((1.0 - delta) / tr);
        if i == j {
            wishart + C64::new(delta / d as f64, 0.0)
        } else {
            wishart
        }
    });
    DensityMatrix {
        inner: HermitianMatrix::new_unchecked(m),
    }
}

/// Seeded interior density sample (see [`random_density_rng`]).
pub fn random_density(d: usize, interior_margin: f64, seed: u64) -> Result<DensityMatrix> {
    if d < 2 {
        return Err(Error::InvalidInput("random_density needs d >= 2".into()));
    }
    if !(interior_margin > 0.0 && interior_margin < 1.0) && interior_margin != 1.0 {
        return Err(Error::InvalidInput(
            "interior margin must lie in (0, 1]".into(),
        ));
    }
    let mut rng = rng_from_seed(seed);
    Ok(random_density_rng(&mut rng, d, interior_margin))
}

/// Random d×d unitary: Gram–Schmidt of a complex Gaussian matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, d: usize) -> CMat {
    let g = random_complex_matrix(rng, d, d);
    let mut q = zeros(d, d);
    for j in 0..d {
        let mut col: Vec<C64> = (0..d).map(|i| g[[i, j]]).collect();
        for k in 0..j {
            let mut proj = ZERO;
            for i in 0..d {
                proj += q[[i, k]].conj() * col[i];
            }
            for i in 0..d {
                let qik = q[[i, k]];
                col[i] -= proj * qik;
            }
        }
        let norm: f64 = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for i in 0..d {
            q[[i, j]] = col[i] / norm;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cm(rows: usize, cols: usize, data: &[(f64, f64)]) -> CMat {
        Array2::from_shape_vec((rows, cols), data.iter().map(|&(r, i)| C64::new(r, i)).collect())
            .unwrap()
    }

    #[test]
    fn eig_of_diagonal_sorts_ascending() {
        let m = cm(2, 2, &[(2.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        let dec = hermitian_eig(&m).unwrap();
        assert_abs_diff_eq!(dec.eigenvalues[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(dec.eigenvalues[1], 2.0, epsilon = 1e-12);
        // Permutation eigenvectors.
        assert_abs_diff_eq!(dec.eigenvectors[[1, 0]].re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(dec.eigenvectors[[0, 1]].re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn eig_of_pauli_x() {
        let sx = cm(2, 2, &[(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 0.0)]);
        let dec = hermitian_eig(&sx).unwrap();
        assert_abs_diff_eq!(dec.eigenvalues[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(dec.eigenvalues[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn eig_reconstruction_random_4x4() {
        let mut rng = rng_from_seed(7);
        for _ in 0..20 {
            let h = random_hermitian(&mut rng, 4);
            let dec = h.eig();
            let rec = dec.reconstruct();
            assert!(hs_norm(&(&rec - h.mat())) < 1e-10);
            let u = &dec.eigenvectors;
            let gram = dagger(u).dot(u);
            assert!(hs_norm(&(&gram - &identity(4))) < 1e-10);
        }
    }

    #[test]
    fn eigenvector_phase_is_deterministic() {
        let mut rng = rng_from_seed(3);
        let h = random_hermitian(&mut rng, 3);
        let d1 = h.eig();
        let d2 = h.eig();
        assert_eq!(d1.eigenvectors, d2.eigenvectors);
        for j in 0..3 {
            let first = (0..3)
                .map(|i| d1.eigenvectors[[i, j]])
                .find(|z| z.norm() > 1e-12)
                .unwrap();
            assert!(first.im.abs() < 1e-12 && first.re > 0.0);
        }
    }

    #[test]
    fn spectral_function_sqrt_and_square() {
        let m = cm(2, 2, &[(4.0, 0.0), (0.0, 0.0), (0.0, 0.0), (9.0, 0.0)]);
        let h = HermitianMatrix::new(m).unwrap();
        let s = apply_spectral_function(&h, f64::sqrt).unwrap();
        assert_abs_diff_eq!(s.mat()[[0, 0]].re, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.mat()[[1, 1]].re, 3.0, epsilon = 1e-12);

        let mut rng = rng_from_seed(11);
        let h = random_hermitian(&mut rng, 4);
        let sq = apply_spectral_function(&h, |x| x * x).unwrap();
        let prod = h.mat().dot(h.mat());
        assert!(hs_norm(&(sq.mat() - &prod)) < 1e-10);
    }

    #[test]
    fn spectral_function_domain_error() {
        let m = cm(2, 2, &[(-1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        let h = HermitianMatrix::new(m).unwrap();
        assert!(matches!(
            apply_spectral_function(&h, f64::ln),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn composition_of_spectral_functions() {
        let mut rng = rng_from_seed(5);
        let h = random_hermitian(&mut rng, 3);
        // exp then log recovers H when spectrum is safe.
        let e = apply_spectral_function(&h, f64::exp).unwrap();
        let back = apply_spectral_function(&e, f64::ln).unwrap();
        assert!(hs_norm(&(back.mat() - h.mat())) < 1e-9);
    }

    #[test]
    fn hs_inner_paulis() {
        let id = identity(2);
        assert_abs_diff_eq!(hs_inner(&id, &id).unwrap().re, 2.0, epsilon = 1e-14);
        let sx = cm(2, 2, &[(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 0.0)]);
        let sy = cm(2, 2, &[(0.0, 0.0), (0.0, -1.0), (0.0, 1.0), (0.0, 0.0)]);
        let sz = cm(2, 2, &[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (-1.0, 0.0)]);
        assert_abs_diff_eq!(hs_inner(&sx, &sy).unwrap().norm(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(hs_inner(&sz, &sz).unwrap().re, 2.0, epsilon = 1e-14);
        assert!(hs_inner(&identity(2), &identity(3)).is_err());
    }

    #[test]
    fn trace_norm_examples() {
        let m = cm(2, 2, &[(0.3, 0.0), (0.0, 0.0), (0.0, 0.0), (-0.3, 0.0)]);
        assert_abs_diff_eq!(trace_norm(&m).unwrap(), 0.6, epsilon = 1e-12);
        let mut rng = rng_from_seed(2);
        let u = random_unitary(&mut rng, 4);
        assert_abs_diff_eq!(trace_norm(&u).unwrap(), 4.0, epsilon = 1e-10);
        for _ in 0..20 {
            let x = random_complex_matrix(&mut rng, 3, 3);
            assert!(trace_norm(&x).unwrap() + 1e-12 >= trace(&x).norm());
        }
    }

    #[test]
    fn random_density_determinism_and_floor() {
        let a = random_density(3, 0.05, 42).unwrap();
        let b = random_density(3, 0.05, 42).unwrap();
        assert_eq!(a.mat(), b.mat());

        for seed in 0..200 {
            let rho = random_density(3, 0.05, seed).unwrap();
            let dec = rho.eig();
            assert!(dec.eigenvalues[0] >= 0.05 / 3.0 - 1e-13);
            assert_abs_diff_eq!(trace(rho.mat()).re, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn random_density_delta_one_is_maximally_mixed() {
        let rho = random_density(4, 1.0, 9).unwrap();
        assert!(hs_norm(&(rho.mat() - DensityMatrix::maximally_mixed(4).mat())) < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = cm(2, 2, &[(0.0, 0.0), (1.0, 0.0), (0.5, 0.0), (0.0, 0.0)]);
        assert!(HermitianMatrix::new(m).is_err());
    }

    #[test]
    fn traceless_basis_orthonormal() {
        for d in 2..=4 {
            let basis = traceless_basis(d);
            assert_eq!(basis.len(), d * d - 1);
            for (i, a) in basis.iter().enumerate() {
                assert!(trace(a).norm() < 1e-14);
                for (j, b) in basis.iter().enumerate() {
                    let ip = hs_inner(a, b).unwrap();
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((ip.re - expect).abs() < 1e-13 && ip.im.abs() < 1e-13);
                }
            }
        }
    }
}
