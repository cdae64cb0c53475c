//! # contracta
//!
//! Numerical toolkit for contraction coefficients of quantum channels.
//!
//! A channel Φ (a completely positive trace-preserving map between matrix
//! algebras) shrinks every monotone quantity defined on density matrices:
//! g-divergences, monotone Riemannian metrics, the geodesic distances those
//! metrics induce, and the trace distance. This crate computes the four
//! associated contraction coefficients
//!
//! - `η_g^RelEnt(Φ)` — supremal ratio of g-divergences,
//! - `η_κ^Riem(Φ)`  — supremal ratio of monotone-metric quadratic forms,
//! - `η_κ^geod(Φ)`  — supremal squared ratio of geodesic distances,
//! - `η^Tr(Φ)`      — the quantum Dobrushin coefficient,
//!
//! together with the machinery behind them: a dense Hermitian spectral
//! kernel ([`linalg`]), the operator-convex function classes 𝒦 and 𝒢
//! ([`functions`]), channels and the metric operators Ω_ρ^κ as Schur
//! multipliers ([`superop`]), divergences ([`divergence`]), metric and
//! geodesic values ([`geometry`]), multi-start estimators and the λ₂
//! eigenvalue formulation ([`contraction`]), and Bloch-sphere closed forms
//! for qubit channels that serve as exact oracles ([`qubit`]).
//!
//! Everything is desk scale: dimensions d ≤ 16, dense storage, seeded and
//! reproducible. Estimator values are certified lower bounds of suprema —
//! the maximum over every ratio actually evaluated — never upper bounds.
//!
//! The `parallel` feature (on by default) runs independent optimizer starts
//! and verification batches on a rayon pool; results are merged in start
//! order, so outputs are bit-identical with the feature on or off.

#![forbid(unsafe_code)]

use thiserror::Error;

pub mod contraction;
pub mod divergence;
pub mod functions;
pub mod geometry;
pub mod linalg;
mod optim;
mod parallel;
pub mod qubit;
pub mod superop;
pub mod verify;

pub use linalg::{C64, CMat};

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular input: {0}")]
    SingularInput(String),

    #[error("not completely positive: {0}")]
    NotCompletelyPositive(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
