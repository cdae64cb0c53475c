//! Channels and superoperators.
//!
//! Channels are stored as Kraus lists Φ(X) = Σ K_m X K_m* and validated
//! trace-preserving; complete positivity is the Choi test. Superoperators are
//! (d′²)×(d²) complex matrices over the Hilbert–Schmidt matrix-unit basis
//! with column-major vectorization, so the HS adjoint is the plain conjugate
//! transpose.
//!
//! The metric operator Ω_ρ^κ = R_ρ^{−1} κ(L_ρ R_ρ^{−1}) acts as a Schur
//! multiplier in the eigenbasis of ρ: with ρ = U diag(λ) U*, its multiplier
//! matrix is a_ij = κ(λ_i/λ_j)/λ_j, and powers of Ω act through entrywise
//! powers of (a_ij).

use ndarray::Array2;

use crate::functions::KappaFunction;
use crate::linalg::{
    self, dagger, hermiticity_defect, hs_norm, identity, trace, zeros, CMat, CVec, C64,
    DensityMatrix, HermitianMatrix, SINGULAR_FLOOR,
};
use crate::{Error, Result};

/// Column-major vectorization: vec(X)[i + j·d] = X[i, j].
pub fn vec_mat(x: &CMat) -> CVec {
    let (rows, cols) = x.dim();
    CVec::from_shape_fn(rows * cols, |k| x[[k % rows, k / rows]])
}

/// Inverse of [`vec_mat`] for a `rows`×`cols` target.
pub fn unvec_mat(v: &CVec, rows: usize, cols: usize) -> CMat {
    assert_eq!(v.len(), rows * cols, "vector length does not match shape");
    Array2::from_shape_fn((rows, cols), |(i, j)| v[i + j * rows])
}

/// Linear map on matrices stored densely over the vectorized basis.
#[derive(Debug, Clone)]
pub struct SuperOperator {
    dim_in: usize,
    dim_out: usize,
    mat: CMat,
}

impl SuperOperator {
    /// Builds the matrix by applying `action` to every matrix unit E_ij.
    pub fn from_action(dim_in: usize, dim_out: usize, action: impl Fn(&CMat) -> CMat) -> Self {
        let mut mat = zeros(dim_out * dim_out, dim_in * dim_in);
        for j in 0..dim_in {
            for i in 0..dim_in {
                let mut basis = zeros(dim_in, dim_in);
                basis[[i, j]] = C64::new(1.0, 0.0);
                let out = vec_mat(&action(&basis));
                let col = i + j * dim_in;
                for (row, val) in out.iter().enumerate() {
                    mat[[row, col]] = *val;
                }
            }
        }
        Self { dim_in, dim_out, mat }
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn apply(&self, x: &CMat) -> Result<CMat> {
        if x.dim() != (self.dim_in, self.dim_in) {
            return Err(Error::InvalidInput(format!(
                "superoperator expects {0}x{0} input, got {1:?}",
                self.dim_in,
                x.dim()
            )));
        }
        let out = self.mat.dot(&vec_mat(x));
        Ok(unvec_mat(&out, self.dim_out, self.dim_out))
    }

    /// Composition self ∘ other.
    pub fn compose(&self, other: &SuperOperator) -> Result<SuperOperator> {
        if other.dim_out != self.dim_in {
            return Err(Error::InvalidInput(
                "superoperator composition dimension mismatch".into(),
            ));
        }
        Ok(SuperOperator {
            dim_in: other.dim_in,
            dim_out: self.dim_out,
            mat: self.mat.dot(&other.mat),
        })
    }

    /// HS adjoint (conjugate transpose over the orthonormal basis).
    pub fn adjoint(&self) -> SuperOperator {
        SuperOperator {
            dim_in: self.dim_out,
            dim_out: self.dim_in,
            mat: dagger(&self.mat),
        }
    }
}

/// Operator-sum map Σ K_m X K_m* with no trace-preservation requirement
/// (used for channel adjoints, which are unital instead).
#[derive(Debug, Clone)]
pub struct OperatorSumMap {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<CMat>,
}

impl OperatorSumMap {
    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn kraus(&self) -> &[CMat] {
        &self.kraus
    }

    pub fn apply(&self, x: &CMat) -> Result<CMat> {
        if x.dim() != (self.dim_in, self.dim_in) {
            return Err(Error::InvalidInput(format!(
                "operator-sum map expects {0}x{0} input, got {1:?}",
                self.dim_in,
                x.dim()
            )));
        }
        let mut out = zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            out = out + k.dot(x).dot(&dagger(k));
        }
        Ok(out)
    }
}

/// Report of the Choi-based complete-positivity / trace-preservation test.
#[derive(Debug, Clone, Copy)]
pub struct CptReport {
    pub is_tp: bool,
    pub is_cp: bool,
    pub min_choi_eig: f64,
}

/// Trace-preserving map in Kraus form; CPT when `assume_cpt` is validated.
#[derive(Debug, Clone)]
pub struct Channel {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<CMat>,
    assume_cpt: bool,
}

impl Channel {
    /// Validates Σ K_m* K_m = I within 1e-10 and, when `assume_cpt`, the Choi
    /// PSD condition with a −1e-10 eigenvalue floor.
    pub fn from_kraus(kraus: Vec<CMat>, assume_cpt: bool) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::InvalidInput("channel needs at least one Kraus operator".into()));
        }
        let (dim_out, dim_in) = kraus[0].dim();
        for k in &kraus {
            if k.dim() != (dim_out, dim_in) {
                return Err(Error::InvalidInput("inconsistent Kraus operator shapes".into()));
            }
        }
        let mut sum = zeros(dim_in, dim_in);
        for k in &kraus {
            sum = sum + dagger(k).dot(k);
        }
        let defect = hs_norm(&(&sum - &identity(dim_in)));
        if defect > 1e-10 * (dim_in as f64) {
            return Err(Error::InvalidInput(format!(
                "Kraus operators are not trace-preserving: |K*K - I| = {defect:.3e}"
            )));
        }
        let chan = Self { dim_in, dim_out, kraus, assume_cpt };
        if assume_cpt {
            let report = chan.cpt_report();
            if !report.is_cp {
                return Err(Error::NotCompletelyPositive(format!(
                    "min Choi eigenvalue {:.3e}",
                    report.min_choi_eig
                )));
            }
        }
        Ok(chan)
    }

    pub fn identity_channel(d: usize) -> Self {
        Self {
            dim_in: d,
            dim_out: d,
            kraus: vec![identity(d)],
            assume_cpt: true,
        }
    }

    /// Depolarizing channel X ↦ (1−p)X + p·Tr(X)·I/d.
    pub fn depolarizing(d: usize, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidInput(format!("depolarizing strength {p} outside [0, 1]")));
        }
        // Kraus set: sqrt(1-p+p/d^2) I plus sqrt(p)/d * (matrix units scaled).
        // Simpler to factor from the Choi matrix.
        let id = identity(d);
        let mut choi = zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                let mut e = zeros(d, d);
                e[[i, j]] = C64::new(1.0, 0.0);
                let tr = if i == j { 1.0 } else { 0.0 };
                let out = e.mapv(|z| z * (1.0 - p))
                    + id.mapv(|z| z * (p * tr / d as f64));
                for a in 0..d {
                    for b in 0..d {
                        choi[[i * d + a, j * d + b]] = out[[a, b]];
                    }
                }
            }
        }
        Self::from_choi(&choi, d, d)
    }

    /// Unitary conjugation X ↦ U X U*.
    pub fn unitary(u: CMat) -> Result<Self> {
        Self::from_kraus(vec![u], true)
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn kraus(&self) -> &[CMat] {
        &self.kraus
    }

    pub fn assume_cpt(&self) -> bool {
        self.assume_cpt
    }

    pub fn apply(&self, x: &CMat) -> Result<CMat> {
        if x.dim() != (self.dim_in, self.dim_in) {
            return Err(Error::InvalidInput(format!(
                "channel expects {0}x{0} input, got {1:?}",
                self.dim_in,
                x.dim()
            )));
        }
        let mut out = zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            out = out + k.dot(x).dot(&dagger(k));
        }
        Ok(out)
    }

    /// Output state Φ(ρ); fails if the image leaves the strictly positive cone.
    pub fn apply_density(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let out = self.apply(rho.mat())?;
        DensityMatrix::new(out)
    }

    /// HS adjoint Φ̂ with Kraus list {K_m*}; unital when Φ is trace-preserving.
    pub fn adjoint(&self) -> OperatorSumMap {
        OperatorSumMap {
            dim_in: self.dim_out,
            dim_out: self.dim_in,
            kraus: self.kraus.iter().map(dagger).collect(),
        }
    }

    /// Choi matrix C = Σ_ij E_ij ⊗ Φ(E_ij), a (d·d′)×(d·d′) matrix with
    /// block (i, j) equal to Φ(E_ij).
    pub fn choi(&self) -> CMat {
        let d = self.dim_in;
        let dp = self.dim_out;
        let mut choi = zeros(d * dp, d * dp);
        for i in 0..d {
            for j in 0..d {
                let mut e = zeros(d, d);
                e[[i, j]] = C64::new(1.0, 0.0);
                let out = self.apply(&e).expect("shape is valid");
                for a in 0..dp {
                    for b in 0..dp {
                        choi[[i * dp + a, j * dp + b]] = out[[a, b]];
                    }
                }
            }
        }
        choi
    }

    pub fn cpt_report(&self) -> CptReport {
        let mut sum = zeros(self.dim_in, self.dim_in);
        for k in &self.kraus {
            sum = sum + dagger(k).dot(k);
        }
        let tp_defect = hs_norm(&(&sum - &identity(self.dim_in)));
        let choi = self.choi();
        let dec = HermitianMatrix::new_unchecked(choi).eig();
        let min_choi_eig = dec.eigenvalues[0];
        CptReport {
            is_tp: tp_defect <= 1e-10 * (self.dim_in as f64),
            is_cp: min_choi_eig >= -1e-10,
            min_choi_eig,
        }
    }

    /// Kraus factorization of a Choi matrix, keeping eigenpairs above 1e-12.
    pub fn from_choi(choi: &CMat, dim_in: usize, dim_out: usize) -> Result<Self> {
        let n = dim_in * dim_out;
        if choi.dim() != (n, n) {
            return Err(Error::InvalidInput(format!(
                "Choi matrix must be {n}x{n}, got {:?}",
                choi.dim()
            )));
        }
        if hermiticity_defect(choi) > 1e-10 {
            return Err(Error::InvalidInput("Choi matrix is not Hermitian".into()));
        }
        let dec = HermitianMatrix::new_unchecked(choi.clone()).eig();
        if dec.eigenvalues[0] < -1e-10 {
            return Err(Error::NotCompletelyPositive(format!(
                "min Choi eigenvalue {:.3e}",
                dec.eigenvalues[0]
            )));
        }
        let mut kraus = Vec::new();
        for (m, &lam) in dec.eigenvalues.iter().enumerate() {
            if lam <= 1e-12 {
                continue;
            }
            let root = lam.sqrt();
            let mut k = zeros(dim_out, dim_in);
            for i in 0..dim_in {
                for a in 0..dim_out {
                    k[[a, i]] = dec.eigenvectors[[i * dim_out + a, m]] * root;
                }
            }
            kraus.push(k);
        }
        Self::from_kraus(kraus, true)
    }

    /// Transfer matrix over the vectorized basis.
    pub fn transfer_matrix(&self) -> SuperOperator {
        SuperOperator::from_action(self.dim_in, self.dim_out, |x| {
            self.apply(x).expect("shape is valid")
        })
    }
}

/// Power at which a Schur-multiplier metric operator acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaPower {
    One,
    Inverse,
    Sqrt,
    InvSqrt,
}

impl OmegaPower {
    pub fn exponent(self) -> f64 {
        match self {
            OmegaPower::One => 1.0,
            OmegaPower::Inverse => -1.0,
            OmegaPower::Sqrt => 0.5,
            OmegaPower::InvSqrt => -0.5,
        }
    }
}

/// Ω_ρ^κ (or a power of it) as a Schur multiplier in the eigenbasis of ρ.
#[derive(Debug, Clone)]
pub struct SchurMultiplierOp {
    rho_eigs: Vec<f64>,
    rho_basis: CMat,
    /// Base multipliers a_ij = κ(λ_i/λ_j)/λ_j (power 1).
    multipliers: Array2<f64>,
    power: OmegaPower,
}

impl SchurMultiplierOp {
    pub fn dim(&self) -> usize {
        self.rho_eigs.len()
    }

    pub fn rho_eigenvalues(&self) -> &[f64] {
        &self.rho_eigs
    }

    pub fn rho_basis(&self) -> &CMat {
        &self.rho_basis
    }

    pub fn power(&self) -> OmegaPower {
        self.power
    }

    /// Base multiplier a_ij (before the power is applied).
    pub fn base_multiplier(&self, i: usize, j: usize) -> f64 {
        self.multipliers[[i, j]]
    }

    /// Effective multiplier a_ij^p.
    pub fn multiplier(&self, i: usize, j: usize) -> f64 {
        self.multipliers[[i, j]].powf(self.power.exponent())
    }

    /// X ↦ U [(a_ij^p) ∘ (U* X U)] U*.
    pub fn apply(&self, x: &CMat) -> Result<CMat> {
        let d = self.dim();
        if x.dim() != (d, d) {
            return Err(Error::InvalidInput(format!(
                "metric operator expects {d}x{d} input, got {:?}",
                x.dim()
            )));
        }
        let u = &self.rho_basis;
        let mut y = dagger(u).dot(x).dot(u);
        let p = self.power.exponent();
        for i in 0..d {
            for j in 0..d {
                y[[i, j]] *= self.multipliers[[i, j]].powf(p);
            }
        }
        Ok(u.dot(&y).dot(&dagger(u)))
    }

    /// ⟨A, Ω(B)⟩ over the HS inner product.
    pub fn inner(&self, a: &CMat, b: &CMat) -> Result<C64> {
        let d = self.dim();
        if a.dim() != (d, d) || b.dim() != (d, d) {
            return Err(Error::InvalidInput("metric inner product shape mismatch".into()));
        }
        let u = &self.rho_basis;
        let ua = dagger(u).dot(a).dot(u);
        let ub = dagger(u).dot(b).dot(u);
        let p = self.power.exponent();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                acc += ua[[i, j]].conj() * ub[[i, j]] * self.multipliers[[i, j]].powf(p);
            }
        }
        Ok(acc)
    }

    /// ⟨A, Ω(A)⟩, real for Hermitian A.
    pub fn quadratic_form(&self, a: &CMat) -> Result<f64> {
        Ok(self.inner(a, a)?.re)
    }

    pub fn to_superoperator(&self) -> SuperOperator {
        let d = self.dim();
        SuperOperator::from_action(d, d, |x| self.apply(x).expect("shape is valid"))
    }
}

/// Builds Ω_ρ^κ (or the requested power) for a strictly positive ρ.
pub fn omega(rho: &DensityMatrix, kappa: &KappaFunction, power: OmegaPower) -> Result<SchurMultiplierOp> {
    let dec = rho.eig();
    let d = dec.dim();
    let lambda_min = dec.eigenvalues[0];
    if lambda_min < SINGULAR_FLOOR {
        return Err(Error::SingularInput(format!(
            "omega needs a strictly positive state; lambda_min = {lambda_min:.3e}"
        )));
    }
    let mut mult = Array2::zeros((d, d));
    for i in 0..d {
        for j in 0..d {
            let ratio = dec.eigenvalues[i] / dec.eigenvalues[j];
            mult[[i, j]] = kappa.eval(ratio)? / dec.eigenvalues[j];
        }
    }
    Ok(SchurMultiplierOp {
        rho_eigs: dec.eigenvalues,
        rho_basis: dec.eigenvectors,
        multipliers: mult,
        power,
    })
}

/// How the two-sided spectral coefficient is scaled by the right eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideScale {
    /// Coefficient f(λ_i/μ_j) alone, realizing f(L_A R_B^{−1}).
    Unit,
    /// Coefficient f(λ_i/μ_j)/μ_j, realizing R_B^{−1} f(L_A R_B^{−1}).
    InverseRight,
}

/// Two-sided spectral operator X ↦ Σ_ij f(λ_i/μ_j)·scale(μ_j)·⟨u_i|X|v_j⟩ |u_i⟩⟨v_j|
/// built on the eigenbases of positive definite A and B.
pub fn left_right_op(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    f: impl Fn(f64) -> f64,
    scale: SideScale,
) -> Result<SuperOperator> {
    if a.dim() != b.dim() {
        return Err(Error::InvalidInput("left_right_op needs equal dimensions".into()));
    }
    let da = a.eig();
    let db = b.eig();
    if da.eigenvalues[0] < SINGULAR_FLOOR || db.eigenvalues[0] < SINGULAR_FLOOR {
        return Err(Error::SingularInput(
            "left_right_op needs strictly positive operands".into(),
        ));
    }
    let d = a.dim();
    let u = da.eigenvectors;
    let v = db.eigenvectors;
    let mut coeff = Array2::zeros((d, d));
    for i in 0..d {
        for j in 0..d {
            let c = f(da.eigenvalues[i] / db.eigenvalues[j]);
            coeff[[i, j]] = match scale {
                SideScale::Unit => c,
                SideScale::InverseRight => c / db.eigenvalues[j],
            };
        }
    }
    let ud = dagger(&u);
    let vd = dagger(&v);
    Ok(SuperOperator::from_action(d, d, move |x| {
        let mut y = ud.dot(x).dot(&v);
        for i in 0..d {
            for j in 0..d {
                y[[i, j]] *= coeff[[i, j]];
            }
        }
        u.dot(&y).dot(&vd)
    }))
}

/// Interior mixing (1−δ)·X + δ·I/d used by estimators to keep channel
/// outputs invertible.
pub fn mix_toward_identity(x: &CMat, delta: f64) -> CMat {
    let d = x.nrows();
    let mut out = x.mapv(|z| z * (1.0 - delta));
    for i in 0..d {
        out[[i, i]] += C64::new(delta / d as f64, 0.0);
    }
    out
}
