//! Order hierarchies of radial solutions.
//!
//! For an operator `R` the order-m profiles obey the recurrence
//! `R{u_m} = u_{m-1}` with `R{u_0} = 0`. Because every operator here maps
//! each atom to an exact combination of atoms with strictly smaller index
//! (see [`super::atoms`]), raising the order reduces to back-substitution
//! over index levels: at each level a tiny lower-triangular system in the
//! set coefficients is solved, descending from the top index to 1. Level-0
//! coefficients of a raised profile are pinned to zero — they span the
//! operator kernel and would otherwise make the hierarchy non-unique.

use std::sync::Arc;

use num_complex::Complex64;

use super::atoms::{atom_origin_value, atom_value, atom_vdd, delta_action, AtomSet, Family, Span};
use super::{KernelError, OperatorKind, OperatorSpec, RadialProfile, MAX_ORDER};
use crate::specfun;

/// Exact action of the operator on a coefficient vector over the span.
///
/// The zero-order constants are taken from the operator itself so that they
/// cancel the sets' Laplacian diagonals exactly in floating point.
pub(crate) fn operator_action(
    op: &OperatorSpec,
    span: &Span,
    width: usize,
    coeffs: &[Complex64],
) -> Vec<Complex64> {
    let add_scaled = |mut base: Vec<Complex64>, scale: f64, c: &[Complex64]| {
        for (b, v) in base.iter_mut().zip(c) {
            *b += scale * v;
        }
        base
    };
    match *op.kind() {
        OperatorKind::Laplace => delta_action(span, width, coeffs),
        OperatorKind::Helmholtz { gamma } => {
            let lap = delta_action(span, width, coeffs);
            add_scaled(lap, gamma * gamma, coeffs)
        }
        OperatorKind::ConvectionDiffusion { .. } => {
            let mu = reduction_mu(op).expect("operator was validated at construction");
            let lap = delta_action(span, width, coeffs);
            add_scaled(lap, -(mu * mu), coeffs)
        }
        OperatorKind::VibrationPlate { lambda } => {
            let lap = delta_action(span, width, coeffs);
            let bilap = delta_action(span, width, &lap);
            add_scaled(bilap, -(lambda * lambda), coeffs)
        }
        OperatorKind::WinklerPlate { kappa } => {
            let lap = delta_action(span, width, coeffs);
            let bilap = delta_action(span, width, &lap);
            add_scaled(bilap, kappa * kappa, coeffs)
        }
        OperatorKind::BurgerPlate { mu } => {
            let lap = delta_action(span, width, coeffs);
            let bilap = delta_action(span, width, &lap);
            add_scaled(bilap, -(mu * mu), &lap)
        }
    }
}

/// The reduction parameter of a convection–diffusion operator.
pub(crate) fn reduction_mu(op: &OperatorSpec) -> Result<f64, KernelError> {
    match op.kind() {
        OperatorKind::ConvectionDiffusion { diffusivity, velocity, reaction } => {
            super::mu_parameter(*diffusivity, velocity, *reaction)
        }
        _ => Err(KernelError::Parameter {
            what: "reduction parameter is defined for convection-diffusion only".into(),
        }),
    }
}

/// Solve `R{next} = prev` for the coefficients of the order-`top` profile,
/// given `prev` supported on indices `< top`.
fn raise_order(
    op: &OperatorSpec,
    span: &Span,
    width: usize,
    prev: &[Complex64],
    top: usize,
) -> Result<Vec<Complex64>, KernelError> {
    let nsets = span.sets.len();
    let len = nsets * width;
    let mut x = vec![Complex64::ZERO; len];
    let mut residual = prev.to_vec();
    for level in (1..=top).rev() {
        // Columns of the level map: where the operator sends a unit
        // coefficient of each set at this index level, read one level down.
        let mut s_mat = vec![vec![Complex64::ZERO; nsets]; nsets];
        for s_in in 0..nsets {
            let mut unit = vec![Complex64::ZERO; len];
            unit[s_in * width + level] = Complex64::new(1.0, 0.0);
            let image = operator_action(op, span, width, &unit);
            for (s_out, row) in s_mat.iter_mut().enumerate() {
                row[s_in] = image[s_out * width + level - 1];
            }
        }
        // The sets are ordered so this system is lower triangular (the
        // logarithmic family couples only into its later power partner).
        let mut level_x = vec![Complex64::ZERO; nsets];
        for t in 0..nsets {
            for u in t + 1..nsets {
                debug_assert!(
                    s_mat[t][u].norm() <= 1e-12 * s_mat[t][t].norm().max(1.0),
                    "level system is not lower triangular"
                );
            }
            let mut rhs = residual[t * width + level - 1];
            for u in 0..t {
                rhs -= s_mat[t][u] * level_x[u];
            }
            let pivot = s_mat[t][t];
            if pivot.norm() < f64::MIN_POSITIVE {
                return Err(KernelError::Parameter {
                    what: format!("hierarchy level {level} is degenerate for {:?}", op.kind()),
                });
            }
            level_x[t] = rhs / pivot;
        }
        // Consume this level's full contribution from the residual so the
        // two-below couplings are accounted for at the next level.
        let mut lifted = vec![Complex64::ZERO; len];
        for (t, &v) in level_x.iter().enumerate() {
            lifted[t * width + level] = v;
            x[t * width + level] = v;
        }
        let image = operator_action(op, span, width, &lifted);
        for (res, img) in residual.iter_mut().zip(&image) {
            *res -= img;
        }
    }
    #[cfg(debug_assertions)]
    {
        let scale = prev.iter().map(|c| c.norm()).fold(f64::MIN_POSITIVE, f64::max);
        let worst = residual.iter().map(|c| c.norm()).fold(0.0, f64::max);
        debug_assert!(worst <= 1e-9 * scale, "hierarchy residual {worst:e} vs scale {scale:e}");
    }
    Ok(x)
}

/// Build the coefficients of the order-`order` profile from the level-0
/// seed coefficients (one per set).
fn solve_chain(
    op: &OperatorSpec,
    span: &Span,
    width: usize,
    seed: &[Complex64],
    order: usize,
) -> Result<Vec<Complex64>, KernelError> {
    let nsets = span.sets.len();
    debug_assert_eq!(seed.len(), nsets);
    let mut current = vec![Complex64::ZERO; nsets * width];
    for (s, &v) in seed.iter().enumerate() {
        current[s * width] = v;
    }
    for top in 1..=order {
        current = raise_order(op, span, width, &current, top)?;
    }
    Ok(current)
}

/// `(scale/2)^{n/2-1} / Gamma(n/2)`: the origin limit of the zero-index
/// regular cylinder atoms, used to normalize seeds.
fn bessel_origin(scale: f64, dim: usize) -> Result<f64, KernelError> {
    let nu0 = dim as f64 / 2.0 - 1.0;
    Ok((scale / 2.0).powf(nu0) / specfun::gamma(nu0 + 1.0)?)
}

fn power_set() -> AtomSet {
    AtomSet { family: Family::Power, scale: 0.0, shift: 0.0, diag: Complex64::ZERO }
}

fn log_set() -> AtomSet {
    AtomSet { family: Family::LogPower, scale: 0.0, shift: 0.0, diag: Complex64::ZERO }
}

fn cylinder_set(family: Family, scale: f64, diag: Complex64) -> AtomSet {
    AtomSet { family, scale, shift: 0.0, diag }
}

/// Atom sets and level-0 seed coefficients for the regular (general) or
/// singular (fundamental) branch of the operator.
fn span_and_seed(op: &OperatorSpec, singular: bool) -> Result<(Span, Vec<Complex64>), KernelError> {
    let dim = op.dim();
    let one = Complex64::new(1.0, 0.0);
    let half = Complex64::new(0.5, 0.0);
    let (sets, seed): (Vec<AtomSet>, Vec<Complex64>) = match *op.kind() {
        OperatorKind::Laplace => {
            if singular {
                if dim == 2 {
                    (vec![log_set(), power_set()], vec![one, Complex64::ZERO])
                } else {
                    (vec![AtomSet { shift: 2.0 - dim as f64, ..power_set() }], vec![one])
                }
            } else {
                (vec![power_set()], vec![one])
            }
        }
        OperatorKind::Helmholtz { gamma } => {
            if singular {
                return Err(KernelError::Capability {
                    what: "the singular oscillatory branch needs the second-kind Bessel \
                           function, which is outside this crate's function set"
                        .into(),
                });
            }
            let diag = Complex64::new(-(gamma * gamma), 0.0);
            let seed = Complex64::new(1.0 / bessel_origin(gamma, dim)?, 0.0);
            (vec![cylinder_set(Family::BesselJ, gamma, diag)], vec![seed])
        }
        OperatorKind::ConvectionDiffusion { .. } => {
            let mu = reduction_mu(op)?;
            if mu <= 0.0 {
                return Err(KernelError::Parameter {
                    what: "convection-diffusion with zero drift and zero reaction reduces \
                           to the Laplace operator; use that operator instead"
                        .into(),
                });
            }
            let diag = Complex64::new(mu * mu, 0.0);
            if singular {
                (vec![cylinder_set(Family::BesselK, mu, diag)], vec![one])
            } else {
                let seed = Complex64::new(1.0 / bessel_origin(mu, dim)?, 0.0);
                (vec![cylinder_set(Family::BesselI, mu, diag)], vec![seed])
            }
        }
        OperatorKind::VibrationPlate { lambda } => {
            let beta = lambda.sqrt();
            let regular_seed = Complex64::new(0.5 / bessel_origin(beta, dim)?, 0.0);
            let j_set = cylinder_set(Family::BesselJ, beta, Complex64::new(-lambda, 0.0));
            if singular {
                (
                    vec![j_set, cylinder_set(Family::BesselK, beta, Complex64::new(lambda, 0.0))],
                    vec![regular_seed, half],
                )
            } else {
                (
                    vec![j_set, cylinder_set(Family::BesselI, beta, Complex64::new(lambda, 0.0))],
                    vec![regular_seed, regular_seed],
                )
            }
        }
        OperatorKind::WinklerPlate { kappa } => {
            let beta = kappa.sqrt();
            let diag = Complex64::new(0.0, kappa);
            if singular {
                (vec![cylinder_set(Family::KelvinK, beta, diag)], vec![one])
            } else {
                let set = cylinder_set(Family::KelvinI, beta, diag);
                let origin = atom_origin_value(&set, dim, 0)?;
                if origin.re <= 0.0 {
                    return Err(KernelError::Parameter {
                        what: "zero-order profile cannot be normalized at the origin".into(),
                    });
                }
                let seed = Complex64::new(1.0 / origin.re, 0.0);
                (vec![set], vec![seed])
            }
        }
        OperatorKind::BurgerPlate { mu } => {
            let diag = Complex64::new(mu * mu, 0.0);
            if singular {
                let bessel = cylinder_set(Family::BesselK, mu, diag);
                if dim == 2 {
                    (vec![log_set(), power_set(), bessel], vec![half, Complex64::ZERO, half])
                } else {
                    (
                        vec![AtomSet { shift: 2.0 - dim as f64, ..power_set() }, bessel],
                        vec![half, half],
                    )
                }
            } else {
                let seed = Complex64::new(0.5 / bessel_origin(mu, dim)?, 0.0);
                (vec![power_set(), cylinder_set(Family::BesselI, mu, diag)], vec![half, seed])
            }
        }
    };
    Ok((Span { dim, sets }, seed))
}

/// Construct the order-`order` regular or singular profile of the operator.
pub(crate) fn build_profile(
    op: &OperatorSpec,
    order: usize,
    singular: bool,
) -> Result<AtomProfile, KernelError> {
    if order > MAX_ORDER {
        return Err(KernelError::Capability {
            what: format!("order {order} exceeds the supported maximum {MAX_ORDER}"),
        });
    }
    if op.dim() > 3 && order > 0 {
        return Err(KernelError::Capability {
            what: format!("dimension {} is supported for the zero-order profile only", op.dim()),
        });
    }
    let (span, seed) = span_and_seed(op, singular)?;
    let width = order + 1;
    let coeffs = solve_chain(op, &span, width, &seed, order)?;
    Ok(AtomProfile { span, width, coeffs, singular, order, op: Some(op.clone()) })
}

/// A radial profile stored as atom coefficients.
#[derive(Clone, Debug)]
pub(crate) struct AtomProfile {
    span: Span,
    width: usize,
    coeffs: Vec<Complex64>,
    singular: bool,
    order: usize,
    op: Option<OperatorSpec>,
}

impl AtomProfile {
    fn check_radius(&self, r: f64) -> Result<(), KernelError> {
        if !r.is_finite() || r < 0.0 {
            return Err(KernelError::Parameter { what: format!("radius {r} is invalid") });
        }
        if r == 0.0 && self.singular {
            return Err(KernelError::Singularity);
        }
        Ok(())
    }

    fn origin_sum(&self, coeffs: &[Complex64]) -> Result<f64, KernelError> {
        let mut acc = Complex64::ZERO;
        for (s, set) in self.span.sets.iter().enumerate() {
            for k in 0..self.width {
                let c = coeffs[s * self.width + k];
                if c != Complex64::ZERO {
                    acc += c * atom_origin_value(set, self.span.dim, k)?;
                }
            }
        }
        Ok(acc.re)
    }
}

impl RadialProfile for AtomProfile {
    fn evaluate(&self, r: f64) -> Result<f64, KernelError> {
        self.check_radius(r)?;
        if r == 0.0 {
            return self.origin_sum(&self.coeffs);
        }
        let mut acc = Complex64::ZERO;
        for (s, set) in self.span.sets.iter().enumerate() {
            for k in 0..self.width {
                let c = self.coeffs[s * self.width + k];
                if c != Complex64::ZERO {
                    acc += c * atom_value(set, self.span.dim, k, r)?;
                }
            }
        }
        Ok(acc.re)
    }

    fn d_dr(&self, r: f64) -> Result<f64, KernelError> {
        self.check_radius(r)?;
        if r == 0.0 {
            // Regular profiles are even in r.
            return Ok(0.0);
        }
        let mut acc = Complex64::ZERO;
        for (s, set) in self.span.sets.iter().enumerate() {
            for k in 0..self.width {
                let c = self.coeffs[s * self.width + k];
                if c != Complex64::ZERO {
                    acc += c * atom_vdd(set, self.span.dim, k, r)?.1;
                }
            }
        }
        Ok(acc.re)
    }

    fn d2_dr2(&self, r: f64) -> Result<f64, KernelError> {
        self.check_radius(r)?;
        if r == 0.0 {
            // lap u(0) = n u''(0) for an even profile.
            let lap = delta_action(&self.span, self.width, &self.coeffs);
            return Ok(self.origin_sum(&lap)? / self.span.dim as f64);
        }
        let mut acc = Complex64::ZERO;
        for (s, set) in self.span.sets.iter().enumerate() {
            for k in 0..self.width {
                let c = self.coeffs[s * self.width + k];
                if c != Complex64::ZERO {
                    acc += c * atom_vdd(set, self.span.dim, k, r)?.2;
                }
            }
        }
        Ok(acc.re)
    }

    fn singular_at_origin(&self) -> bool {
        self.singular
    }

    fn order_m(&self) -> usize {
        self.order
    }

    fn operator(&self) -> Option<&OperatorSpec> {
        self.op.as_ref()
    }

    fn laplacian_profile(&self) -> Option<Arc<dyn RadialProfile>> {
        Some(Arc::new(AtomProfile {
            span: self.span.clone(),
            width: self.width,
            coeffs: delta_action(&self.span, self.width, &self.coeffs),
            singular: self.singular,
            order: self.order,
            op: None,
        }))
    }
}
