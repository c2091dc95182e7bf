//! Finite-truncation numerics for frames of operator orbits on the
//! Hardy space of the unit disc.
//!
//! Everything here works on explicit finite sections: truncated power
//! series, finite orbit sums, finite grids. Infinite-dimensional
//! statements are probed through their finite-scale proxies, and every
//! reported quantity carries the truncation tail or tolerance that
//! separates the proxy from the limit.
//!
//! Modules:
//! - [`series`]: truncated Hardy-space coefficient arithmetic.
//! - [`linalg`]: Hermitian/general eigensolvers, minimum-norm solves,
//!   rank and norm utilities for complex dense matrices.
//! - [`disk`]: points and sequences in the unit disc, pseudo-hyperbolic
//!   separation, Carleson constants, finite Blaschke products.
//! - [`orbit`]: frames of diagonal-operator orbits `{Dⁿ b}`: closed-form
//!   and partial-sum frame operators, bound extraction, subsampling, and
//!   the four-condition frame diagnostic.
//! - [`muntz`]: sparse exponent sets, the power-sum condition along
//!   radii, the associated slow-decay envelope, and the spectral model
//!   that diagonalizes diagonal orbits against a discrete measure.
//! - [`interp`]: weighted interpolation — feasibility bands, minimum-norm
//!   interpolants, Riesz-basic kernel families, Carleson partitions.
//! - [`wco`]: weighted composition operators `M_u C_φ` for
//!   linear-fractional symbols — invertibility, unitarity, adjoint
//!   identities, and multiplication-orbit frames.
//! - [`model`]: model spaces K_θ — orthonormal bases, compressed shifts,
//!   spectra and Jordan structure, kernel-orbit Parseval identities, and
//!   the interleaving unitary.

pub mod disk;
pub mod interp;
pub mod linalg;
pub mod model;
pub mod muntz;
pub mod orbit;
pub mod series;
pub mod wco;
