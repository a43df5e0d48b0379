//! Real-order special functions: gamma, Bessel J / I / K, and the Kelvin
//! family ber, bei, ker, kei, for orders nu >= -1/2 and arguments x >= 0.
//!
//! Evaluation strategy: ascending power series in double-double arithmetic
//! below a crossover argument (the internally cancelling combinations keep
//! full double accuracy that way), continued fractions or asymptotic series
//! above it. Every function is pure; failures are explicit `SpecFunError`s,
//! never silently wrong numbers.

mod dd;
mod dgamma;
mod gamma;
mod kcf;
mod klog;
mod series;
mod steed;

pub use gamma::{gamma, ln_gamma};

use dd::DdComplex;
use series::Phase;

/// A converged function value together with the work it took.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpecialFunctionResult {
    pub value: f64,
    /// Always true on the `Ok` path; non-convergence surfaces as an error.
    pub converged: bool,
    /// Number of series terms or continued-fraction iterations (>= 1).
    pub terms_used: usize,
}

/// The four Kelvin functions at one (order, argument) pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KelvinValues {
    pub ber: f64,
    pub bei: f64,
    pub ker: f64,
    pub kei: f64,
    pub terms_used: usize,
}

/// The regular Kelvin pair, defined for x = 0 as well.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KelvinRegular {
    pub ber: f64,
    pub bei: f64,
    pub terms_used: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum SpecFunError {
    #[error("domain error: {what}")]
    Domain { what: String },
    #[error("overflow: {what}")]
    Overflow { what: String },
    #[error("no convergence after {terms} terms: {what}")]
    NoConvergence { terms: usize, what: String },
}

/// Ascending series are used for J below this argument; Steed's continued
/// fractions above. 20 keeps the series' cancellation well inside the
/// double-double headroom.
const J_SERIES_MAX_X: f64 = 20.0;

/// Crossover for K and ker/kei. The reflection formula divides by
/// sin(nu pi) ~ 1e-12 for the worst near-integer orders, which eats twelve
/// of the double-double digits on top of the series' own e^{2x}
/// cancellation and the extended gamma's error; staying below 2 keeps that
/// budget comfortable, and Steed's continued fraction is reliable from 2 up.
const K_SERIES_MAX_X: f64 = 2.0;

/// Orders closer to an integer than this are routed to the logarithmic
/// series, where the reflection formula would divide by a vanishing sine.
const INTEGER_ORDER_TOL: f64 = 1e-12;

fn check_order_and_argument(nu: f64, x: f64, name: &str) -> Result<(), SpecFunError> {
    if !nu.is_finite() || !x.is_finite() {
        return Err(SpecFunError::Domain { what: format!("{name}: non-finite input") });
    }
    if nu < -0.5 {
        return Err(SpecFunError::Domain {
            what: format!("{name}: order {nu} below -1/2 is unsupported"),
        });
    }
    if x < 0.0 {
        return Err(SpecFunError::Domain { what: format!("{name}: negative argument {x}") });
    }
    Ok(())
}

fn finish(
    value: f64,
    terms: usize,
    converged: bool,
    name: &str,
    nu: f64,
    x: f64,
) -> Result<SpecialFunctionResult, SpecFunError> {
    if !converged {
        return Err(SpecFunError::NoConvergence { terms, what: format!("{name}({nu}, {x})") });
    }
    if !value.is_finite() {
        return Err(SpecFunError::Overflow { what: format!("{name}({nu}, {x})") });
    }
    Ok(SpecialFunctionResult { value, converged: true, terms_used: terms.max(1) })
}

/// Bessel function of the first kind, J_nu(x).
pub fn bessel_j(nu: f64, x: f64) -> Result<SpecialFunctionResult, SpecFunError> {
    check_order_and_argument(nu, x, "bessel_j")?;
    if x == 0.0 {
        return value_at_origin(nu, "bessel_j");
    }
    if x <= J_SERIES_MAX_X {
        let raw = series::bessel_j_series(nu, x);
        finish(raw.value.re.to_f64(), raw.terms, raw.converged, "bessel_j", nu, x)
    } else {
        match steed::bessel_j_steed(nu, x) {
            Some((value, iters)) => finish(value, iters, true, "bessel_j", nu, x),
            None => Err(SpecFunError::NoConvergence {
                terms: 0,
                what: format!("bessel_j({nu}, {x}): continued fraction stalled"),
            }),
        }
    }
}

/// Modified Bessel function of the first kind, I_nu(x).
pub fn bessel_i(nu: f64, x: f64) -> Result<SpecialFunctionResult, SpecFunError> {
    check_order_and_argument(nu, x, "bessel_i")?;
    if x == 0.0 {
        return value_at_origin(nu, "bessel_i");
    }
    let raw = series::bessel_i_series(nu, x, Phase::Zero);
    // Distinguish overflow (terms blew past the double range) from a
    // genuinely stalled sum.
    let value = raw.value.re.to_f64();
    if !value.is_finite() {
        return Err(SpecFunError::Overflow { what: format!("bessel_i({nu}, {x})") });
    }
    finish(value, raw.terms, raw.converged, "bessel_i", nu, x)
}

/// Modified Bessel function of the second kind, K_nu(x); requires x > 0.
pub fn bessel_k(nu: f64, x: f64) -> Result<SpecialFunctionResult, SpecFunError> {
    check_order_and_argument(nu, x, "bessel_k")?;
    if x == 0.0 {
        return Err(SpecFunError::Domain { what: "bessel_k: singular at x = 0".into() });
    }
    // K is even in its order.
    let anu = nu.abs();
    let (value, terms, converged) = k_by_phase(anu, x, Phase::Zero)?;
    finish(value.re.to_f64(), terms, converged, "bessel_k", nu, x)
}

/// Shared K dispatch; returns the double-double complex value so the Kelvin
/// path can keep both components.
fn k_by_phase(anu: f64, x: f64, phase: Phase) -> Result<(DdComplex, usize, bool), SpecFunError> {
    if x <= K_SERIES_MAX_X {
        let raw = if (anu - anu.round()).abs() < INTEGER_ORDER_TOL {
            klog::bessel_k_log_series(anu.round() as u32, x, phase)
        } else {
            series::bessel_k_reflection(anu, x, phase)
        };
        Ok((raw.value, raw.terms, raw.converged))
    } else {
        match kcf::bessel_k_cf(anu, x, phase) {
            Some((v, terms)) => Ok((DdComplex::from_f64(v.re, v.im), terms, true)),
            None => Err(SpecFunError::NoConvergence {
                terms: 0,
                what: format!("bessel_k order {anu} at {x}: continued fraction stalled"),
            }),
        }
    }
}

/// All four Kelvin functions; requires x > 0 because ker/kei are singular
/// at the origin. For the regular pair alone at x = 0 use `kelvin_regular`.
pub fn kelvin(nu: f64, x: f64) -> Result<KelvinValues, SpecFunError> {
    check_order_and_argument(nu, x, "kelvin")?;
    if nu < 0.0 {
        return Err(SpecFunError::Domain { what: format!("kelvin: negative order {nu}") });
    }
    if x == 0.0 {
        return Err(SpecFunError::Domain { what: "kelvin: ker/kei are singular at x = 0".into() });
    }
    let reg = kelvin_regular(nu, x)?;
    let (kc, kterms, converged) = k_by_phase(nu, x, Phase::QuarterPi)?;
    if !converged {
        return Err(SpecFunError::NoConvergence {
            terms: kterms,
            what: format!("kelvin({nu}, {x}): singular pair"),
        });
    }
    // ker + i kei = e^{-i nu pi/2} K_nu(x e^{i pi/4}).
    let rotated = series::unit_phase(nu, -2).mul(kc);
    let (ker, kei) = (rotated.re.to_f64(), rotated.im.to_f64());
    if !ker.is_finite() || !kei.is_finite() {
        return Err(SpecFunError::Overflow { what: format!("kelvin({nu}, {x})") });
    }
    Ok(KelvinValues {
        ber: reg.ber,
        bei: reg.bei,
        ker,
        kei,
        terms_used: reg.terms_used.max(kterms),
    })
}

/// The regular Kelvin pair ber_nu, bei_nu, defined for all x >= 0.
pub fn kelvin_regular(nu: f64, x: f64) -> Result<KelvinRegular, SpecFunError> {
    check_order_and_argument(nu, x, "kelvin")?;
    if nu < 0.0 {
        return Err(SpecFunError::Domain { what: format!("kelvin: negative order {nu}") });
    }
    if x == 0.0 {
        let ber = if nu == 0.0 { 1.0 } else { 0.0 };
        return Ok(KelvinRegular { ber, bei: 0.0, terms_used: 1 });
    }
    // ber + i bei = e^{i nu pi/2} I_nu(x e^{i pi/4}).
    let raw = series::bessel_i_series(nu, x, Phase::QuarterPi);
    if !raw.converged {
        return Err(SpecFunError::NoConvergence {
            terms: raw.terms,
            what: format!("kelvin({nu}, {x}): regular pair"),
        });
    }
    let rotated = series::unit_phase(nu, 2).mul(raw.value);
    let (ber, bei) = (rotated.re.to_f64(), rotated.im.to_f64());
    if !ber.is_finite() || !bei.is_finite() {
        return Err(SpecFunError::Overflow { what: format!("kelvin({nu}, {x})") });
    }
    Ok(KelvinRegular { ber, bei, terms_used: raw.terms.max(1) })
}

fn value_at_origin(nu: f64, name: &str) -> Result<SpecialFunctionResult, SpecFunError> {
    if nu < 0.0 {
        return Err(SpecFunError::Domain { what: format!("{name}: order {nu} diverges at x = 0") });
    }
    let value = if nu == 0.0 { 1.0 } else { 0.0 };
    Ok(SpecialFunctionResult { value, converged: true, terms_used: 1 })
}
