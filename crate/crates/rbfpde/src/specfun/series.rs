//! Ascending power series for Bessel functions, evaluated in double-double
//! arithmetic so that the alternating-sum cancellation (which can swallow
//! ~e^{2x} of headroom in the K reflection formula) still leaves full double
//! accuracy in the result.
//!
//! Complex arguments only ever arise on the ray arg z = pi/4 (the Kelvin
//! functions), so instead of general complex logarithms the argument is
//! carried as a magnitude plus a `Phase` tag, and all rotations are built
//! from a table of exact eighth-turn values times a small Taylor rotation.

use super::dd::{Dd, DdComplex};
use super::dgamma::gamma_dd;

/// Maximum number of series terms before giving up.
pub(super) const TERM_BUDGET: usize = 500;

/// z = x * e^{i phase}.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(super) enum Phase {
    /// Real positive argument.
    Zero,
    /// arg z = pi/4 (Kelvin functions).
    QuarterPi,
}

/// Raw series output before conversion to the public result type.
pub(super) struct RawSeries {
    pub value: DdComplex,
    pub terms: usize,
    pub converged: bool,
}

fn sqrt_half() -> Dd {
    Dd::from_f64(0.5).sqrt()
}

/// cos/sin of k * pi/4 for k in 0..8, exact in double-double.
fn eighth_turn(k: usize) -> DdComplex {
    let h = sqrt_half();
    match k {
        0 => DdComplex::new(Dd::ONE, Dd::ZERO),
        1 => DdComplex::new(h, h),
        2 => DdComplex::new(Dd::ZERO, Dd::ONE),
        3 => DdComplex::new(-h, h),
        4 => DdComplex::new(-Dd::ONE, Dd::ZERO),
        5 => DdComplex::new(-h, -h),
        6 => DdComplex::new(Dd::ZERO, -Dd::ONE),
        _ => DdComplex::new(h, -h),
    }
}

/// e^{i nu eighths pi/4}: split nu into the nearest integer plus a remainder
/// in [-1/2, 1/2]; the integer part lands on the exact eighth-turn table and
/// the remainder stays small enough for the Taylor sin/cos.
pub(super) fn unit_phase(nu: f64, eighths: i32) -> DdComplex {
    let m = nu.round();
    let mu = nu - m;
    let steps = ((m as i64 * eighths as i64).rem_euclid(8)) as usize;
    // mu * eighths is exact (|eighths| <= 2), and /4 is a power-of-two scale.
    let angle = Dd::PI * Dd::from_f64(mu * eighths as f64 / 4.0);
    let rot = DdComplex::new(angle.cos_small(), angle.sin_small());
    eighth_turn(steps).mul(rot)
}

/// sin(nu pi) without argument-reduction error: reduce by the nearest
/// integer (where the sine vanishes identically) and Taylor the remainder.
pub(super) fn sin_nu_pi(nu: f64) -> Dd {
    super::dgamma::sin_pi_dd(Dd::from_f64(nu))
}

/// Sum_{k>=0} t_k with t_0 = 1, t_k = t_{k-1} w / (k (k + nu)), for real w.
pub(super) fn power_sum_real(nu: f64, w: Dd) -> (Dd, usize, bool) {
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for k in 1..=TERM_BUDGET {
        // k + nu must not round through f64: near-integer negative orders give
        // k + nu ~ 1e-12, and the reflection formula for K amplifies any
        // rounding of that factor by the reciprocal of that distance.
        let kf = Dd::from_f64(k as f64);
        term = term * w / (kf * (kf + Dd::from_f64(nu)));
        sum = sum + term;
        if term.hi.abs() < 1e-35 * sum.hi.abs().max(1e-300) {
            return (sum, k, true);
        }
    }
    (sum, TERM_BUDGET, false)
}

/// Complex counterpart of `power_sum_real`.
pub(super) fn power_sum_complex(nu: f64, w: DdComplex) -> (DdComplex, usize, bool) {
    let mut term = DdComplex::ONE;
    let mut sum = DdComplex::ONE;
    for k in 1..=TERM_BUDGET {
        let kf = Dd::from_f64(k as f64);
        let denom = (kf * (kf + Dd::from_f64(nu))).recip();
        term = term.mul(w).scale(denom);
        sum = sum.add(term);
        if term.mag_hi() < 1e-35 * sum.mag_hi().max(1e-300) {
            return (sum, k, true);
        }
    }
    (sum, TERM_BUDGET, false)
}

/// (z/2)^2 for z = x e^{i phase}.
pub(super) fn w_of(x: f64, phase: Phase) -> DdComplex {
    let q = Dd::from_f64(0.5 * x);
    let m = q * q;
    match phase {
        Phase::Zero => DdComplex::new(m, Dd::ZERO),
        Phase::QuarterPi => DdComplex::new(Dd::ZERO, m),
    }
}

/// I_nu(z) for z = x e^{i phase}, x > 0: ascending series with the
/// (z/2)^nu / Gamma(nu+1) prefactor carried in double-double.
pub(super) fn bessel_i_series(nu: f64, x: f64, phase: Phase) -> RawSeries {
    let q = Dd::from_f64(0.5 * x);
    let pref = q.pow(Dd::from_f64(nu)) / gamma_dd(Dd::from_f64(nu) + Dd::ONE);
    match phase {
        Phase::Zero => {
            let (sum, terms, converged) = power_sum_real(nu, q * q);
            RawSeries { value: DdComplex::new(pref * sum, Dd::ZERO), terms, converged }
        }
        Phase::QuarterPi => {
            let (sum, terms, converged) = power_sum_complex(nu, w_of(x, phase));
            let rotated = unit_phase(nu, 1).scale(pref).mul(sum);
            RawSeries { value: rotated, terms, converged }
        }
    }
}

/// J_nu(x) for real x > 0 by the alternating ascending series.
pub(super) fn bessel_j_series(nu: f64, x: f64) -> RawSeries {
    let q = Dd::from_f64(0.5 * x);
    let pref = q.pow(Dd::from_f64(nu)) / gamma_dd(Dd::from_f64(nu) + Dd::ONE);
    let (sum, terms, converged) = power_sum_real(nu, -(q * q));
    RawSeries { value: DdComplex::new(pref * sum, Dd::ZERO), terms, converged }
}

/// K_nu(z) for non-integer nu via the reflection formula
/// K_nu = (pi/2) (I_{-nu} - I_{nu}) / sin(nu pi).
pub(super) fn bessel_k_reflection(nu: f64, x: f64, phase: Phase) -> RawSeries {
    let ip = bessel_i_series(nu, x, phase);
    let im = bessel_i_series(-nu, x, phase);
    let scale = Dd::PI * Dd::from_f64(0.5) / sin_nu_pi(nu);
    RawSeries {
        value: im.value.sub(ip.value).scale(scale),
        terms: ip.terms.max(im.terms),
        converged: ip.converged && im.converged,
    }
}
