//! Catalog and calculus of the operator-convex function classes 𝒦 and 𝒢.
//!
//! Members of 𝒦 are positive operator-convex functions with κ(1) = 1 and the
//! symmetry x·κ(x) = κ(1/x); they parametrize symmetric monotone metrics and
//! sit between κ_min(x) = 2/(1+x) and κ_max(x) = (1+x)/(2x). Members of 𝒢
//! are operator-convex with g(1) = 0 and g″(1) > 0 and generate divergences.
//! The two classes correspond one-to-one through g(x) = (x−1)²·κ(x) once g is
//! symmetrized to g(x) = x·g(1/x) with g″(1) = 2.
//!
//! Every catalog entry stores its g″(1) analytically; symmetrization divides
//! by it, so it is never obtained by finite differences (tests re-check it by
//! central differences instead).

use crate::{Error, Result};

/// Below this distance from x = 1 the removable-singularity forms (BKM, WYD)
/// switch to 4th-order expansions in u = x − 1.
const NEAR_ONE: f64 = 1e-4;

fn check_positive(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "function argument must be positive and finite, got {x}"
        )));
    }
    Ok(())
}

/// κ_BKM(x) = log(x)/(x − 1) with the expansion log(1+u)/u near 1.
fn kappa_bkm(x: f64) -> f64 {
    let u = x - 1.0;
    if u.abs() < NEAR_ONE {
        1.0 + u * (-0.5 + u * (1.0 / 3.0 + u * (-0.25 + u * 0.2)))
    } else {
        x.ln() / u
    }
}

/// Divided difference ((1+u)^a − 1)/u, expanded near u = 0.
fn power_divided_difference(a: f64, u: f64) -> f64 {
    if u.abs() < NEAR_ONE {
        a * (1.0
            + (a - 1.0) / 2.0 * u
            + (a - 1.0) * (a - 2.0) / 6.0 * u * u
            + (a - 1.0) * (a - 2.0) * (a - 3.0) / 24.0 * u * u * u
            + (a - 1.0) * (a - 2.0) * (a - 3.0) * (a - 4.0) / 120.0 * u * u * u * u)
    } else {
        ((1.0 + u).powf(a) - 1.0) / u
    }
}

/// κ_t^WYD(x) = (1 − x^t)(1 − x^{1−t}) / (t(1−t)(1−x)²) for t outside {0, 1}.
fn kappa_wyd(t: f64, x: f64) -> f64 {
    let u = x - 1.0;
    power_divided_difference(t, u) * power_divided_difference(1.0 - t, u) / (t * (1.0 - t))
}

/// Extreme point κ_s(x) = (1+s)/2 · (1/(x+s) + 1/(1+sx)) of the Bauer simplex 𝒦.
fn kappa_extreme(s: f64, x: f64) -> f64 {
    0.5 * (1.0 + s) * (1.0 / (x + s) + 1.0 / (1.0 + s * x))
}

/// Discrete measure on [0, 1] plus a quadratic-term constant, as used in the
/// integral representations of operator convex functions.
///
/// For κ-mixtures the atoms must be a probability measure and `constant_c`
/// must vanish; the constant participates only in divergence cross-checks of
/// the integral form of H_g.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    pub atoms: Vec<(f64, f64)>,
    pub constant_c: f64,
}

impl DiscreteMeasure {
    pub fn probability(atoms: Vec<(f64, f64)>) -> Result<Self> {
        let m = Self {
            atoms,
            constant_c: 0.0,
        };
        m.validate_probability()?;
        Ok(m)
    }

    pub fn validate_probability(&self) -> Result<()> {
        if self.constant_c != 0.0 {
            return Err(Error::InvalidInput(
                "kappa mixtures require constant_c = 0".into(),
            ));
        }
        if self.atoms.is_empty() {
            return Err(Error::InvalidInput("measure needs at least one atom".into()));
        }
        let mut total = 0.0;
        for &(s, w) in &self.atoms {
            if !(0.0..=1.0).contains(&s) {
                return Err(Error::InvalidInput(format!("atom location {s} outside [0, 1]")));
            }
            if !(w > 0.0) {
                return Err(Error::InvalidInput(format!("atom weight {w} must be positive")));
            }
            total += w;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "atom weights must sum to 1, got {total}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum KappaKind {
    Min,
    Max,
    Bkm,
    Wy,
    WyHat,
    InvSqrt,
    Wyd(f64),
    Extreme(f64),
    Mixture(DiscreteMeasure),
}

/// A member of 𝒦: κ(1) = 1, x·κ(x) = κ(1/x), κ_min ≤ κ ≤ κ_max.
#[derive(Debug, Clone, PartialEq)]
pub struct KappaFunction {
    kind: KappaKind,
}

impl KappaFunction {
    pub fn min() -> Self {
        Self { kind: KappaKind::Min }
    }
    pub fn max() -> Self {
        Self { kind: KappaKind::Max }
    }
    pub fn bkm() -> Self {
        Self { kind: KappaKind::Bkm }
    }
    pub fn wy() -> Self {
        Self { kind: KappaKind::Wy }
    }
    pub fn wy_hat() -> Self {
        Self { kind: KappaKind::WyHat }
    }
    pub fn inv_sqrt() -> Self {
        Self { kind: KappaKind::InvSqrt }
    }

    /// WYD family on t ∈ [−1, 2]; t = 0, 1 collapse to the BKM tag.
    pub fn wyd(t: f64) -> Result<Self> {
        if !(-1.0..=2.0).contains(&t) {
            return Err(Error::InvalidInput(format!("WYD parameter {t} outside [-1, 2]")));
        }
        if t.abs() < 1e-12 || (t - 1.0).abs() < 1e-12 {
            return Ok(Self::bkm());
        }
        Ok(Self { kind: KappaKind::Wyd(t) })
    }

    /// Extreme point κ_s, s ∈ [0, 1].
    pub fn extreme(s: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidInput(format!("extreme parameter {s} outside [0, 1]")));
        }
        Ok(Self { kind: KappaKind::Extreme(s) })
    }

    /// Finite mixture Σᵢ wᵢ κ_{sᵢ} of extreme points.
    pub fn mixture(m: DiscreteMeasure) -> Result<Self> {
        m.validate_probability()?;
        Ok(Self { kind: KappaKind::Mixture(m) })
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        check_positive(x)?;
        Ok(match &self.kind {
            KappaKind::Min => 2.0 / (1.0 + x),
            KappaKind::Max => (1.0 + x) / (2.0 * x),
            KappaKind::Bkm => kappa_bkm(x),
            KappaKind::Wy => {
                let r = 1.0 + x.sqrt();
                4.0 / (r * r)
            }
            KappaKind::WyHat => {
                let r = 1.0 + x.sqrt();
                r * r / (4.0 * x)
            }
            KappaKind::InvSqrt => 1.0 / x.sqrt(),
            KappaKind::Wyd(t) => kappa_wyd(*t, x),
            KappaKind::Extreme(s) => kappa_extreme(*s, x),
            KappaKind::Mixture(m) => m
                .atoms
                .iter()
                .map(|&(s, w)| w * kappa_extreme(s, x))
                .sum(),
        })
    }

    /// Corresponding g ∈ 𝒢_sym via g(x) = (x−1)²·κ(x).
    pub fn to_g(&self) -> GFunction {
        match &self.kind {
            KappaKind::Min => GFunction::g_min(),
            KappaKind::Max => GFunction::g_max(),
            _ => GFunction {
                kind: GKind::FromKappa(Box::new(self.clone())),
            },
        }
    }

    /// Canonical CLI name.
    pub fn name(&self) -> String {
        match &self.kind {
            KappaKind::Min => "min".into(),
            KappaKind::Max => "max".into(),
            KappaKind::Bkm => "bkm".into(),
            KappaKind::Wy => "wy".into(),
            KappaKind::WyHat => "wy-hat".into(),
            KappaKind::InvSqrt => "inv-sqrt".into(),
            KappaKind::Wyd(t) => format!("wyd:{t}"),
            KappaKind::Extreme(s) => format!("extreme:{s}"),
            KappaKind::Mixture(m) => {
                let atoms: Vec<String> =
                    m.atoms.iter().map(|(s, w)| format!("{s}@{w}")).collect();
                format!("mixture:{}", atoms.join("+"))
            }
        }
    }

    /// Parses the canonical names: `min`, `max`, `bkm`, `wy`, `wy-hat`,
    /// `inv-sqrt`, `wyd:<t>`, `extreme:<s>`.
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "min" => Ok(Self::min()),
            "max" => Ok(Self::max()),
            "bkm" => Ok(Self::bkm()),
            "wy" => Ok(Self::wy()),
            "wy-hat" => Ok(Self::wy_hat()),
            "inv-sqrt" => Ok(Self::inv_sqrt()),
            _ => {
                if let Some(t) = name.strip_prefix("wyd:") {
                    let t: f64 = t
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad wyd parameter in {name:?}")))?;
                    Self::wyd(t)
                } else if let Some(s) = name.strip_prefix("extreme:") {
                    let s: f64 = s.parse().map_err(|_| {
                        Error::InvalidInput(format!("bad extreme parameter in {name:?}"))
                    })?;
                    Self::extreme(s)
                } else {
                    Err(Error::InvalidInput(format!("unknown kappa function {name:?}")))
                }
            }
        }
    }

    /// The catalog entries without free parameters, handy for grid tests.
    pub fn catalog() -> Vec<KappaFunction> {
        vec![
            Self::min(),
            Self::max(),
            Self::bkm(),
            Self::wy(),
            Self::wy_hat(),
            Self::inv_sqrt(),
            Self::wyd(0.3).expect("valid parameter"),
            Self::wyd(1.7).expect("valid parameter"),
            Self::extreme(0.25).expect("valid parameter"),
            Self::extreme(0.75).expect("valid parameter"),
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
enum GKind {
    XLogX,
    NegLog,
    Quadratic,
    Gs(f64),
    GtWyd(f64),
    GMin,
    GMax,
    FromKappa(Box<KappaFunction>),
    Symmetrized(Box<GFunction>),
    Dual(Box<GFunction>),
}

/// A member of 𝒢: operator convex on (0, ∞), g(1) = 0, g″(1) > 0.
#[derive(Debug, Clone, PartialEq)]
pub struct GFunction {
    kind: GKind,
}

impl GFunction {
    /// x log x, generating the relative entropy.
    pub fn x_log_x() -> Self {
        Self { kind: GKind::XLogX }
    }
    /// −log x, the dual of x log x.
    pub fn neg_log() -> Self {
        Self { kind: GKind::NegLog }
    }
    /// (x−1)², generating the quadratic relative entropy.
    pub fn quadratic() -> Self {
        Self { kind: GKind::Quadratic }
    }
    /// g_s(x) = (x−1)²/(x+s), s ≥ 0, the resolvent atom of the integral form.
    pub fn g_s(s: f64) -> Result<Self> {
        if !(s >= 0.0) {
            return Err(Error::InvalidInput(format!("g_s parameter {s} must be >= 0")));
        }
        Ok(Self { kind: GKind::Gs(s) })
    }
    /// g^{(t)}(x) = (x − x^t)/(t(1−t)), t ∈ (0,1) ∪ (1,2].
    pub fn g_t_wyd(t: f64) -> Result<Self> {
        let ok = (t > 0.0 && t < 1.0) || (t > 1.0 && t <= 2.0);
        if !ok {
            return Err(Error::InvalidInput(format!(
                "WYD divergence parameter {t} outside (0,1) u (1,2]"
            )));
        }
        Ok(Self { kind: GKind::GtWyd(t) })
    }
    /// g_min(x) = 2(x−1)²/(x+1), the partner of κ_min.
    pub fn g_min() -> Self {
        Self { kind: GKind::GMin }
    }
    /// g_max(x) = (x−1)²(1+x)/(2x), the partner of κ_max.
    pub fn g_max() -> Self {
        Self { kind: GKind::GMax }
    }
    /// (x−1)²·κ(x) for a given κ ∈ 𝒦.
    pub fn from_kappa(k: KappaFunction) -> Self {
        k.to_g()
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        check_positive(x)?;
        Ok(match &self.kind {
            GKind::XLogX => x * x.ln(),
            GKind::NegLog => -x.ln(),
            GKind::Quadratic => (x - 1.0) * (x - 1.0),
            GKind::Gs(s) => (x - 1.0) * (x - 1.0) / (x + s),
            GKind::GtWyd(t) => (x - x.powf(*t)) / (t * (1.0 - t)),
            GKind::GMin => 2.0 * (x - 1.0) * (x - 1.0) / (x + 1.0),
            GKind::GMax => (x - 1.0) * (x - 1.0) * (1.0 + x) / (2.0 * x),
            GKind::FromKappa(k) => (x - 1.0) * (x - 1.0) * k.eval(x)?,
            GKind::Symmetrized(g) => {
                (g.eval(x)? + x * g.eval(1.0 / x)?) / g.second_derivative_at_one()
            }
            GKind::Dual(g) => x * g.eval(1.0 / x)?,
        })
    }

    /// g″(1), stored analytically per tag.
    pub fn second_derivative_at_one(&self) -> f64 {
        match &self.kind {
            GKind::XLogX | GKind::NegLog | GKind::GtWyd(_) => 1.0,
            GKind::Quadratic => 2.0,
            GKind::Gs(s) => 2.0 / (1.0 + s),
            GKind::GMin | GKind::GMax | GKind::FromKappa(_) | GKind::Symmetrized(_) => 2.0,
            GKind::Dual(g) => g.second_derivative_at_one(),
        }
    }

    /// The dual g̃(x) = x·g(1/x), also in 𝒢, with H_g̃(A,B) = H_g(B,A).
    pub fn dual(&self) -> GFunction {
        match &self.kind {
            GKind::XLogX => Self::neg_log(),
            GKind::NegLog => Self::x_log_x(),
            GKind::Dual(g) => (**g).clone(),
            _ => Self {
                kind: GKind::Dual(Box::new(self.clone())),
            },
        }
    }

    /// Symmetrization (g + g̃)/g″(1) ∈ 𝒢_sym.
    pub fn symmetrize(&self) -> Result<GFunction> {
        if self.second_derivative_at_one() <= 1e-12 {
            return Err(Error::InvalidInput(
                "symmetrization needs g''(1) > 0".into(),
            ));
        }
        Ok(Self {
            kind: GKind::Symmetrized(Box::new(self.clone())),
        })
    }

    /// Whether g(x) = x·g(1/x) holds structurally.
    pub fn is_symmetric(&self) -> bool {
        match &self.kind {
            GKind::GMin | GKind::GMax | GKind::FromKappa(_) | GKind::Symmetrized(_) => true,
            GKind::Dual(g) => g.is_symmetric(),
            _ => false,
        }
    }

    /// Partner κ ∈ 𝒦 with g(x) = (x−1)²·κ(x); requires g symmetric.
    pub fn to_kappa(&self) -> Result<KappaFunction> {
        match &self.kind {
            GKind::GMin => Ok(KappaFunction::min()),
            GKind::GMax => Ok(KappaFunction::max()),
            GKind::FromKappa(k) => Ok((**k).clone()),
            GKind::Dual(g) => g.to_kappa(),
            GKind::Symmetrized(inner) => match &inner.kind {
                GKind::XLogX | GKind::NegLog => Ok(KappaFunction::bkm()),
                GKind::Quadratic => Ok(KappaFunction::max()),
                GKind::Gs(s) => {
                    if *s <= 1.0 {
                        KappaFunction::extreme(*s)
                    } else {
                        // kappa_s and kappa_{1/s} generate the same symmetrized g.
                        KappaFunction::extreme(1.0 / *s)
                    }
                }
                GKind::GtWyd(t) => KappaFunction::wyd(*t),
                _ => inner.to_kappa(),
            },
            _ => Err(Error::InvalidInput(format!(
                "{} is not symmetric; symmetrize it first",
                self.name()
            ))),
        }
    }

    /// Canonical CLI name.
    pub fn name(&self) -> String {
        match &self.kind {
            GKind::XLogX => "xlogx".into(),
            GKind::NegLog => "neglog".into(),
            GKind::Quadratic => "quadratic".into(),
            GKind::Gs(s) => format!("gs:{s}"),
            GKind::GtWyd(t) => format!("gt:{t}"),
            GKind::GMin => "gmin".into(),
            GKind::GMax => "gmax".into(),
            GKind::FromKappa(k) => format!("kappa:{}", k.name()),
            GKind::Symmetrized(g) => format!("sym:{}", g.name()),
            GKind::Dual(g) => format!("dual:{}", g.name()),
        }
    }

    /// Parses `xlogx`, `quadratic`, `gs:<s>`, `gt:<t>`, `gmin`, `gmax`,
    /// `sym:<gname>`; also `neglog` and `kappa:<kname>`.
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "xlogx" => Ok(Self::x_log_x()),
            "neglog" => Ok(Self::neg_log()),
            "quadratic" => Ok(Self::quadratic()),
            "gmin" => Ok(Self::g_min()),
            "gmax" => Ok(Self::g_max()),
            _ => {
                if let Some(s) = name.strip_prefix("gs:") {
                    let s: f64 = s
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad gs parameter in {name:?}")))?;
                    Self::g_s(s)
                } else if let Some(t) = name.strip_prefix("gt:") {
                    let t: f64 = t
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad gt parameter in {name:?}")))?;
                    Self::g_t_wyd(t)
                } else if let Some(inner) = name.strip_prefix("sym:") {
                    Self::parse(inner)?.symmetrize()
                } else if let Some(inner) = name.strip_prefix("kappa:") {
                    Ok(Self::from_kappa(KappaFunction::parse(inner)?))
                } else {
                    Err(Error::InvalidInput(format!("unknown g function {name:?}")))
                }
            }
        }
    }

    pub fn catalog() -> Vec<GFunction> {
        vec![
            Self::x_log_x(),
            Self::neg_log(),
            Self::quadratic(),
            Self::g_s(0.0).expect("valid parameter"),
            Self::g_s(1.0).expect("valid parameter"),
            Self::g_s(2.5).expect("valid parameter"),
            Self::g_t_wyd(0.5).expect("valid parameter"),
            Self::g_t_wyd(2.0).expect("valid parameter"),
            Self::g_min(),
            Self::g_max(),
        ]
    }
}

/// Dyadic evaluation grid x ∈ {2^k : k = −20..20} used by the invariants.
pub fn dyadic_grid() -> Vec<f64> {
    (-20..=20).map(|k| (k as f64).exp2()).collect()
}
