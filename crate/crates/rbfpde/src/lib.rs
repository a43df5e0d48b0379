//! Meshfree radial-basis-function solvers for elliptic and thin-plate problems.
//!
//! The crate is organized bottom-up:
//!
//! * [`specfun`] — Bessel, Kelvin and gamma function evaluation on real order,
//!   the scalar backbone for every kernel in the crate.
//! * [`kernels`] — radial kernels: nonsingular general solutions and singular
//!   fundamental solutions of second- and fourth-order operators at arbitrary
//!   hierarchy order, plus classic RBFs (MQ, thin-plate spline) and the
//!   smoothing strategies (even-power augmentation, shape shift).
//! * [`geometry`] — node clouds on the benchmark domains (square with a
//!   trigonometric cutout, cube with a two-ball cavity, circles/spheres),
//!   normals, symmetric orderings, CSV export.
//! * [`linalg`] — dense LU/QR with factorization reuse, centrosymmetric
//!   half-size decomposition, condition estimation, binary matrix dumps.
//! * [`solvers`] — boundary knot method (BKM), boundary particle method
//!   (BPM), Hermite (modified Kansa) and plain Kansa collocation, and
//!   least-squares collocation on decoupled field/source nodes.
//! * [`bench`] — config-driven experiment runner behind the CLI: node-count
//!   sweeps, error tables, convergence-rate fits.

// Frozen reference literals are kept at their full published precision even
// where f64 rounds them; the extra digits document the intended value.
#![allow(clippy::excessive_precision)]

pub mod bench;
pub mod geometry;
pub mod kernels;
pub mod linalg;
pub mod solvers;
pub mod specfun;
