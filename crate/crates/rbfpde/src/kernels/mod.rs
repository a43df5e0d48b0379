//! PDE operators, their order-m general and fundamental radial solutions,
//! kernel evaluation with the convective drift factor, and composed radial
//! basis functions.
//!
//! The operators handled here are the Laplace, Helmholtz and
//! convection-diffusion equations (second order) and the vibration, Winkler
//! and Burger plate equations (fourth order). For each one,
//! [`general_solution`] returns the order-m radial solution that is smooth
//! at the origin and [`fundamental_solution`] the branch that is singular
//! there; both satisfy the recurrence `R{u_m} = u_{m-1}` with `R{u_0} = 0`.
//! [`evaluate_kernel`] and the derived quantities ([`normal_derivative`],
//! [`binormal_second_derivative`], [`apply_operator`]) turn a radial profile
//! into the two-point kernel used by the collocation solvers, including the
//! exponential drift factor of convection-diffusion operators.
//! [`make_kernel_rbf`] composes profiles (or plain distance powers) with a
//! shape shift or an even-power augmentation to produce globally smooth
//! radial basis functions.

mod atoms;
mod hierarchy;

use std::sync::Arc;

use crate::specfun::SpecFunError;

/// Largest supported order in the solution hierarchies.
pub const MAX_ORDER: usize = 8;

/// Errors from kernel construction and evaluation.
#[derive(Debug, thiserror::Error)]
pub enum KernelError {
    /// A parameter lies outside its documented domain.
    #[error("invalid parameter: {what}")]
    Parameter { what: String },
    /// The request is well posed but outside what this crate implements.
    #[error("unsupported: {what}")]
    Capability { what: String },
    /// Evaluation at a point where the profile is singular.
    #[error("evaluation at a singular point")]
    Singularity,
    /// A special-function evaluation failed.
    #[error("special function evaluation failed: {0}")]
    SpecialFunction(#[from] SpecFunError),
}

/// The differential operator a kernel belongs to.
#[derive(Clone, Debug, PartialEq)]
pub enum OperatorKind {
    /// `lap u`.
    Laplace,
    /// `lap u + gamma^2 u`.
    Helmholtz { gamma: f64 },
    /// `D lap u - v . grad u - kappa u`.
    ConvectionDiffusion { diffusivity: f64, velocity: Vec<f64>, reaction: f64 },
    /// `lap^2 u - lambda^2 u`.
    VibrationPlate { lambda: f64 },
    /// `lap^2 u + kappa^2 u`.
    WinklerPlate { kappa: f64 },
    /// `lap^2 u - mu^2 lap u`.
    BurgerPlate { mu: f64 },
}

/// A validated operator together with its spatial dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSpec {
    kind: OperatorKind,
    dim: usize,
}

impl OperatorSpec {
    /// Validate the parameter set and dimension.
    ///
    /// Dimensions 2 and 3 are accepted everywhere; 4 and 5 only for the
    /// Winkler plate (whose zero-order profile is the one quantity the
    /// higher-dimensional models need).
    pub fn new(kind: OperatorKind, dim: usize) -> Result<Self, KernelError> {
        let max_dim = if matches!(kind, OperatorKind::WinklerPlate { .. }) { 5 } else { 3 };
        if !(2..=max_dim).contains(&dim) {
            return Err(KernelError::Parameter {
                what: format!("dimension {dim} is outside 2..={max_dim} for {kind:?}"),
            });
        }
        let positive = |name: &str, value: f64| -> Result<(), KernelError> {
            if value.is_finite() && value > 0.0 {
                Ok(())
            } else {
                Err(KernelError::Parameter {
                    what: format!("{name} must be positive and finite, got {value}"),
                })
            }
        };
        match &kind {
            OperatorKind::Laplace => {}
            OperatorKind::Helmholtz { gamma } => positive("wave number", *gamma)?,
            OperatorKind::ConvectionDiffusion { diffusivity, velocity, reaction } => {
                positive("diffusivity", *diffusivity)?;
                if !reaction.is_finite() || *reaction < 0.0 {
                    return Err(KernelError::Parameter {
                        what: format!("reaction must be nonnegative and finite, got {reaction}"),
                    });
                }
                if velocity.len() != dim {
                    return Err(KernelError::Parameter {
                        what: format!(
                            "velocity has {} components for a {dim}-dimensional operator",
                            velocity.len()
                        ),
                    });
                }
                if velocity.iter().any(|v| !v.is_finite()) {
                    return Err(KernelError::Parameter {
                        what: "velocity components must be finite".into(),
                    });
                }
            }
            OperatorKind::VibrationPlate { lambda } => positive("plate eigenvalue", *lambda)?,
            OperatorKind::WinklerPlate { kappa } => positive("foundation stiffness", *kappa)?,
            OperatorKind::BurgerPlate { mu } => positive("tension parameter", *mu)?,
        }
        Ok(Self { kind, dim })
    }

    pub fn kind(&self) -> &OperatorKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Drift vector `v / (2 D)` of the convective transformation, present
    /// only for convection-diffusion operators with a nonzero velocity.
    pub(crate) fn drift(&self) -> Option<Vec<f64>> {
        match &self.kind {
            OperatorKind::ConvectionDiffusion { diffusivity, velocity, .. }
                if velocity.iter().any(|&v| v != 0.0) =>
            {
                Some(velocity.iter().map(|v| v / (2.0 * diffusivity)).collect())
            }
            _ => None,
        }
    }

    /// Whether the operator involves the bilaplacian.
    pub fn is_fourth_order(&self) -> bool {
        matches!(
            self.kind,
            OperatorKind::VibrationPlate { .. }
                | OperatorKind::WinklerPlate { .. }
                | OperatorKind::BurgerPlate { .. }
        )
    }
}

/// Reduction parameter `sqrt((|v| / 2D)^2 + kappa / D)` of the convective
/// transformation that turns convection-diffusion into a modified Helmholtz
/// equation.
pub fn mu_parameter(diffusivity: f64, velocity: &[f64], reaction: f64) -> Result<f64, KernelError> {
    if !diffusivity.is_finite() || diffusivity <= 0.0 {
        return Err(KernelError::Parameter {
            what: format!("diffusivity must be positive and finite, got {diffusivity}"),
        });
    }
    if !reaction.is_finite() || reaction < 0.0 {
        return Err(KernelError::Parameter {
            what: format!("reaction must be nonnegative and finite, got {reaction}"),
        });
    }
    if velocity.iter().any(|v| !v.is_finite()) {
        return Err(KernelError::Parameter { what: "velocity components must be finite".into() });
    }
    let speed2: f64 = velocity.iter().map(|v| v * v).sum();
    Ok((speed2 / (4.0 * diffusivity * diffusivity) + reaction / diffusivity).sqrt())
}

/// Order coefficient `Q_m` of the diffusion hierarchy:
/// `Q_0 = 1`, `Q_m = Q_{m-1} / (2 m mu^2)`.
pub fn q_coefficient(m: usize, mu: f64) -> f64 {
    let mut q = 1.0;
    for j in 1..=m {
        q /= 2.0 * j as f64 * mu * mu;
    }
    q
}

/// A radial function with two derivatives, as used by every scheme in this
/// crate. All radii are nonnegative; implementations report evaluation at a
/// singular origin as [`KernelError::Singularity`].
pub trait RadialProfile: Send + Sync {
    fn evaluate(&self, r: f64) -> Result<f64, KernelError>;
    fn d_dr(&self, r: f64) -> Result<f64, KernelError>;
    fn d2_dr2(&self, r: f64) -> Result<f64, KernelError>;
    /// Whether the profile diverges (or loses smoothness) at `r = 0`.
    fn singular_at_origin(&self) -> bool;
    /// Position in the order hierarchy, zero for plain radial functions.
    fn order_m(&self) -> usize;
    /// The operator whose hierarchy this profile belongs to, if any.
    fn operator(&self) -> Option<&OperatorSpec>;
    /// The exact radial Laplacian as another profile, when it is available
    /// in closed form; fourth-order operator application falls back to
    /// numerical composition otherwise.
    fn laplacian_profile(&self) -> Option<Arc<dyn RadialProfile>> {
        None
    }
}

/// Order-`order` radial solution of `R{u} = 0` (for `order = 0`) or
/// `R{u_m} = u_{m-1}` that is smooth at the origin, normalized to
/// `u_0(0) = 1`.
pub fn general_solution(
    op: &OperatorSpec,
    order: usize,
) -> Result<Arc<dyn RadialProfile>, KernelError> {
    Ok(Arc::new(hierarchy::build_profile(op, order, false)?))
}

/// Order-`order` member of the hierarchy built on the branch that is
/// singular at the origin.
pub fn fundamental_solution(
    op: &OperatorSpec,
    order: usize,
) -> Result<Arc<dyn RadialProfile>, KernelError> {
    Ok(Arc::new(hierarchy::build_profile(op, order, true)?))
}

fn check_points(op: &OperatorSpec, points: &[&[f64]]) -> Result<(), KernelError> {
    for p in points {
        if p.len() != op.dim() {
            return Err(KernelError::Parameter {
                what: format!(
                    "vector has {} components for a {}-dimensional operator",
                    p.len(),
                    op.dim()
                ),
            });
        }
        if p.iter().any(|v| !v.is_finite()) {
            return Err(KernelError::Parameter { what: "coordinates must be finite".into() });
        }
    }
    Ok(())
}

fn distance(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

fn dot_difference(x: &[f64], y: &[f64], v: &[f64]) -> f64 {
    x.iter().zip(y).zip(v).map(|((a, b), c)| (a - b) * c).sum()
}

fn drift_factor(a: &[f64], x: &[f64], y: &[f64]) -> f64 {
    dot_difference(x, y, a).exp()
}

/// Two-point kernel value `phi(|x - y|)`, times the convective factor
/// `exp(v . (x - y) / 2D)` when the operator carries a drift.
pub fn evaluate_kernel(
    profile: &dyn RadialProfile,
    x: &[f64],
    y: &[f64],
    op: &OperatorSpec,
) -> Result<f64, KernelError> {
    check_points(op, &[x, y])?;
    let value = profile.evaluate(distance(x, y))?;
    Ok(match op.drift() {
        Some(a) => drift_factor(&a, x, y) * value,
        None => value,
    })
}

/// Derivative of the kernel along a direction at `x`:
/// `d/dt phi_kernel(x + t n, y)` at `t = 0`.
///
/// Coincident points are allowed only when the profile is smooth there
/// (`d/dr` vanishing at the origin); otherwise the evaluation reports the
/// singularity.
pub fn normal_derivative(
    profile: &dyn RadialProfile,
    x: &[f64],
    y: &[f64],
    normal: &[f64],
    op: &OperatorSpec,
) -> Result<f64, KernelError> {
    check_points(op, &[x, y, normal])?;
    let r = distance(x, y);
    let drift = op.drift();
    if r == 0.0 {
        let slope = profile.d_dr(0.0)?;
        if slope != 0.0 {
            return Err(KernelError::Singularity);
        }
        return Ok(match drift {
            Some(a) => profile.evaluate(0.0)? * dot(&a, normal),
            None => 0.0,
        });
    }
    let radial = profile.d_dr(r)? * (dot_difference(x, y, normal) / r);
    Ok(match drift {
        Some(a) => drift_factor(&a, x, y) * (radial + profile.evaluate(r)? * dot(&a, normal)),
        None => radial,
    })
}

/// Mixed second derivative of the kernel along a direction at `x` and a
/// direction at `y`: `d^2/ds dt phi_kernel(x + s n_x, y + t n_y)` at zero.
///
/// The points must be distinct; the radial projector algebra degenerates at
/// coincident points even for smooth profiles.
pub fn binormal_second_derivative(
    profile: &dyn RadialProfile,
    x: &[f64],
    y: &[f64],
    normal_x: &[f64],
    normal_y: &[f64],
    op: &OperatorSpec,
) -> Result<f64, KernelError> {
    check_points(op, &[x, y, normal_x, normal_y])?;
    let r = distance(x, y);
    if r == 0.0 {
        return Err(KernelError::Singularity);
    }
    let d1 = profile.d_dr(r)?;
    let d2 = profile.d2_dr2(r)?;
    let rnx = dot_difference(x, y, normal_x) / r;
    let rny = dot_difference(x, y, normal_y) / r;
    let nn = dot(normal_x, normal_y);
    let core = d2 * rnx * rny + d1 / r * (nn - rnx * rny);
    Ok(match op.drift() {
        Some(a) => {
            let anx = dot(&a, normal_x);
            let any = dot(&a, normal_y);
            let phi = profile.evaluate(r)?;
            -drift_factor(&a, x, y) * (phi * anx * any + d1 * (anx * rny + rnx * any) + core)
        }
        None => -core,
    })
}

fn radial_laplacian_value(profile: &dyn RadialProfile, r: f64, n: f64) -> Result<f64, KernelError> {
    if r == 0.0 {
        // lap u(0) = n u''(0) for an even smooth profile.
        return Ok(n * profile.d2_dr2(0.0)?);
    }
    Ok(profile.d2_dr2(r)? + (n - 1.0) / r * profile.d_dr(r)?)
}

fn bilaplacian_value(profile: &dyn RadialProfile, r: f64, n: f64) -> Result<f64, KernelError> {
    if let Some(lap) = profile.laplacian_profile() {
        return radial_laplacian_value(lap.as_ref(), r, n);
    }
    // Numerical composition: differentiate the exact radial Laplacian with a
    // seven-point stencil. The stencil needs positive radii on both sides.
    if r == 0.0 {
        return Err(KernelError::Singularity);
    }
    let h = (0.01f64).min(r / 4.0);
    let mut v = [0.0; 7];
    for (i, slot) in v.iter_mut().enumerate() {
        *slot = radial_laplacian_value(profile, r + (i as f64 - 3.0) * h, n)?;
    }
    let d1 = (-v[0] + 9.0 * v[1] - 45.0 * v[2] + 45.0 * v[4] - 9.0 * v[5] + v[6]) / (60.0 * h);
    let d2 = (2.0 * v[0] - 27.0 * v[1] + 270.0 * v[2] - 490.0 * v[3] + 270.0 * v[4] - 27.0 * v[5]
        + 2.0 * v[6])
        / (180.0 * h * h);
    Ok(d2 + (n - 1.0) / r * d1)
}

/// Apply the operator's radial form to a profile at radius `r`.
///
/// Second-order operators use the profile's own derivatives. Fourth-order
/// operators use the exact Laplacian profile when the profile provides one
/// and numerical composition otherwise.
pub fn apply_operator(
    op: &OperatorSpec,
    profile: &dyn RadialProfile,
    r: f64,
) -> Result<f64, KernelError> {
    if !r.is_finite() || r < 0.0 {
        return Err(KernelError::Parameter { what: format!("radius {r} is invalid") });
    }
    let n = op.dim() as f64;
    match *op.kind() {
        OperatorKind::Laplace => radial_laplacian_value(profile, r, n),
        OperatorKind::Helmholtz { gamma } => {
            Ok(radial_laplacian_value(profile, r, n)? + gamma * gamma * profile.evaluate(r)?)
        }
        OperatorKind::ConvectionDiffusion { diffusivity, ref velocity, reaction } => {
            let mu = mu_parameter(diffusivity, velocity, reaction)?;
            Ok(radial_laplacian_value(profile, r, n)? - mu * mu * profile.evaluate(r)?)
        }
        OperatorKind::VibrationPlate { lambda } => {
            Ok(bilaplacian_value(profile, r, n)? - lambda * lambda * profile.evaluate(r)?)
        }
        OperatorKind::WinklerPlate { kappa } => {
            Ok(bilaplacian_value(profile, r, n)? + kappa * kappa * profile.evaluate(r)?)
        }
        OperatorKind::BurgerPlate { mu } => {
            Ok(bilaplacian_value(profile, r, n)? - mu * mu * radial_laplacian_value(profile, r, n)?)
        }
    }
}

/// What a composed radial basis function is built from.
#[derive(Clone)]
pub enum RadialBase {
    /// The plain distance `r`.
    Distance,
    /// The polyharmonic function `r^{2m} ln r`.
    ThinPlateSpline { m: usize },
    /// A solution profile from one of the operator hierarchies.
    Profile(Arc<dyn RadialProfile>),
}

/// How the base is turned into a globally smooth kernel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KernelStrategy {
    Unmodified,
    /// Replace `r` by `sqrt(r^2 + c^2)` (for the distance this is the
    /// multiquadric; for the polyharmonic base only the logarithm's argument
    /// is shifted, keeping the power prefactor).
    ShapeShift {
        c: f64,
    },
    /// Multiply by `r^{2m}` to cancel an origin singularity.
    AugmentEvenPower {
        m: usize,
    },
}

enum RbfForm {
    Distance,
    ShiftedDistance { c2: f64 },
    Tps { m: i32 },
    ShiftedTps { m: i32, c2: f64 },
    Plain(Arc<dyn RadialProfile>),
    Shifted { base: Arc<dyn RadialProfile>, c2: f64 },
    Augmented { base: Arc<dyn RadialProfile>, m: i32 },
}

/// A composed radial basis function; see [`make_kernel_rbf`].
pub struct KernelRbf {
    form: RbfForm,
}

fn check_shape(c: f64) -> Result<f64, KernelError> {
    if c.is_finite() && c > 0.0 {
        Ok(c * c)
    } else {
        Err(KernelError::Parameter {
            what: format!("shape parameter must be positive and finite, got {c}"),
        })
    }
}

/// Smallest power `p` with `|phi| ~ r^{-p}` near the origin, probed on a
/// two-decade log-log slope. Logarithmic divergence reports zero.
fn divergence_power(profile: &dyn RadialProfile) -> Result<i32, KernelError> {
    let f_far = profile.evaluate(1e-2)?.abs().max(f64::MIN_POSITIVE);
    let f_near = profile.evaluate(1e-4)?.abs().max(f64::MIN_POSITIVE);
    let slope = (f_near.ln() - f_far.ln()) / (1e-4f64.ln() - 1e-2f64.ln());
    Ok((-slope).max(0.0).round() as i32)
}

/// Build a composed radial basis function.
///
/// Validation: shape parameters must be positive, polyharmonic and
/// augmentation orders at least one. Even-power augmentation applies only to
/// profile bases that are singular at the origin, and the power must be
/// large enough to restore two continuous derivatives: `2m >= p + 2` with
/// `p` the probed divergence power.
pub fn make_kernel_rbf(
    base: RadialBase,
    strategy: KernelStrategy,
) -> Result<KernelRbf, KernelError> {
    let form = match (base, strategy) {
        (RadialBase::Distance, KernelStrategy::Unmodified) => RbfForm::Distance,
        (RadialBase::Distance, KernelStrategy::ShapeShift { c }) => {
            RbfForm::ShiftedDistance { c2: check_shape(c)? }
        }
        (RadialBase::ThinPlateSpline { m }, strategy) => {
            if m == 0 {
                return Err(KernelError::Parameter {
                    what: "polyharmonic order must be at least 1".into(),
                });
            }
            match strategy {
                KernelStrategy::Unmodified => RbfForm::Tps { m: m as i32 },
                KernelStrategy::ShapeShift { c } => {
                    RbfForm::ShiftedTps { m: m as i32, c2: check_shape(c)? }
                }
                KernelStrategy::AugmentEvenPower { .. } => {
                    return Err(KernelError::Parameter {
                        what: "augmentation applies to singular solution profiles".into(),
                    });
                }
            }
        }
        (RadialBase::Distance, KernelStrategy::AugmentEvenPower { .. }) => {
            return Err(KernelError::Parameter {
                what: "augmentation applies to singular solution profiles".into(),
            });
        }
        (RadialBase::Profile(p), KernelStrategy::Unmodified) => RbfForm::Plain(p),
        (RadialBase::Profile(p), KernelStrategy::ShapeShift { c }) => {
            RbfForm::Shifted { base: p, c2: check_shape(c)? }
        }
        (RadialBase::Profile(p), KernelStrategy::AugmentEvenPower { m }) => {
            if m == 0 {
                return Err(KernelError::Parameter {
                    what: "augmentation order must be at least 1".into(),
                });
            }
            if !p.singular_at_origin() {
                return Err(KernelError::Parameter {
                    what: "augmentation applies to singular solution profiles".into(),
                });
            }
            let power = divergence_power(p.as_ref())?;
            if 2 * m as i32 - 2 < power {
                return Err(KernelError::Parameter {
                    what: format!(
                        "augmentation power 2m = {} cannot smooth a divergence of power \
                         {power}; it must be at least {}",
                        2 * m,
                        power + 2
                    ),
                });
            }
            RbfForm::Augmented { base: p, m: m as i32 }
        }
    };
    Ok(KernelRbf { form })
}

impl KernelRbf {
    fn check_radius(&self, r: f64) -> Result<(), KernelError> {
        if !r.is_finite() || r < 0.0 {
            return Err(KernelError::Parameter { what: format!("radius {r} is invalid") });
        }
        Ok(())
    }
}

impl RadialProfile for KernelRbf {
    fn evaluate(&self, r: f64) -> Result<f64, KernelError> {
        self.check_radius(r)?;
        match &self.form {
            RbfForm::Distance => Ok(r),
            RbfForm::ShiftedDistance { c2 } => Ok((r * r + c2).sqrt()),
            RbfForm::Tps { m } => Ok(if r == 0.0 { 0.0 } else { r.powi(2 * m) * r.ln() }),
            RbfForm::ShiftedTps { m, c2 } => Ok(r.powi(2 * m) * 0.5 * (r * r + c2).ln()),
            RbfForm::Plain(p) => p.evaluate(r),
            RbfForm::Shifted { base, c2 } => base.evaluate((r * r + c2).sqrt()),
            RbfForm::Augmented { base, m } => {
                Ok(if r == 0.0 { 0.0 } else { r.powi(2 * m) * base.evaluate(r)? })
            }
        }
    }

    fn d_dr(&self, r: f64) -> Result<f64, KernelError> {
        self.check_radius(r)?;
        match &self.form {
            RbfForm::Distance => Ok(1.0),
            RbfForm::ShiftedDistance { c2 } => Ok(r / (r * r + c2).sqrt()),
            RbfForm::Tps { m } => Ok(if r == 0.0 {
                0.0
            } else {
                r.powi(2 * m - 1) * (2.0 * f64::from(*m) * r.ln() + 1.0)
            }),
            RbfForm::ShiftedTps { m, c2 } => {
                let two_m = 2.0 * f64::from(*m);
                let log = 0.5 * (r * r + c2).ln();
                Ok(two_m * r.powi(2 * m - 1) * log + r.powi(2 * m) * r / (r * r + c2))
            }
            RbfForm::Plain(p) => p.d_dr(r),
            RbfForm::Shifted { base, c2 } => {
                let rho = (r * r + c2).sqrt();
                Ok(base.d_dr(rho)? * (r / rho))
            }
            RbfForm::Augmented { base, m } => {
                if r == 0.0 {
                    return Ok(0.0);
                }
                let two_m = 2.0 * f64::from(*m);
                Ok(two_m * r.powi(2 * m - 1) * base.evaluate(r)? + r.powi(2 * m) * base.d_dr(r)?)
            }
        }
    }

    fn d2_dr2(&self, r: f64) -> Result<f64, KernelError> {
        self.check_radius(r)?;
        match &self.form {
            RbfForm::Distance => Ok(0.0),
            RbfForm::ShiftedDistance { c2 } => {
                let f = (r * r + c2).sqrt();
                Ok(c2 / (f * f * f))
            }
            RbfForm::Tps { m } => {
                if r == 0.0 {
                    return if *m == 1 { Err(KernelError::Singularity) } else { Ok(0.0) };
                }
                let two_m = 2.0 * f64::from(*m);
                Ok(r.powi(2 * m - 2) * (two_m * (two_m - 1.0) * r.ln() + 2.0 * two_m - 1.0))
            }
            RbfForm::ShiftedTps { m, c2 } => {
                let two_m = 2.0 * f64::from(*m);
                let s = r * r + c2;
                let log = 0.5 * s.ln();
                Ok(two_m * (two_m - 1.0) * r.powi(2 * m - 2) * log
                    + 2.0 * two_m * r.powi(2 * m - 1) * r / s
                    + r.powi(2 * m) * (c2 - r * r) / (s * s))
            }
            RbfForm::Plain(p) => p.d2_dr2(r),
            RbfForm::Shifted { base, c2 } => {
                let rho = (r * r + c2).sqrt();
                let t = r / rho;
                Ok(base.d2_dr2(rho)? * t * t + base.d_dr(rho)? * c2 / (rho * rho * rho))
            }
            RbfForm::Augmented { base, m } => {
                if r == 0.0 {
                    return Err(KernelError::Singularity);
                }
                let two_m = 2.0 * f64::from(*m);
                Ok(two_m * (two_m - 1.0) * r.powi(2 * m - 2) * base.evaluate(r)?
                    + 2.0 * two_m * r.powi(2 * m - 1) * base.d_dr(r)?
                    + r.powi(2 * m) * base.d2_dr2(r)?)
            }
        }
    }

    fn singular_at_origin(&self) -> bool {
        match &self.form {
            RbfForm::Plain(p) => p.singular_at_origin(),
            _ => false,
        }
    }

    fn order_m(&self) -> usize {
        match &self.form {
            RbfForm::Tps { m } | RbfForm::ShiftedTps { m, .. } => *m as usize,
            RbfForm::Plain(p) => p.order_m(),
            RbfForm::Shifted { base, .. } | RbfForm::Augmented { base, .. } => base.order_m(),
            RbfForm::Distance | RbfForm::ShiftedDistance { .. } => 0,
        }
    }

    fn operator(&self) -> Option<&OperatorSpec> {
        match &self.form {
            RbfForm::Plain(p) => p.operator(),
            _ => None,
        }
    }

    fn laplacian_profile(&self) -> Option<Arc<dyn RadialProfile>> {
        match &self.form {
            RbfForm::Plain(p) => p.laplacian_profile(),
            _ => None,
        }
    }
}
