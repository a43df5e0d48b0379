//! Radial atom families closed under the Laplacian.
//!
//! Every solution profile in this module is a finite combination of
//! "atoms", each one of
//!
//! * a cylinder form `r^{s_k} Z_{nu_k}(scale * r)` with `s_k = 1 - n/2 + k`,
//!   `nu_k = n/2 - 1 + k` and `Z` one of `I`, `K`, `J`, or `I`/`K` on the
//!   rotated argument `zeta * r` with `zeta = scale * e^{i pi/4}` (evaluated
//!   through the Kelvin functions),
//! * a pure power `r^{2k + shift}`,
//! * a logarithmic power `r^{2k} ln r` (two-dimensional harmonics).
//!
//! Atoms are convenient because the n-dimensional radial Laplacian maps each
//! of them to an exact one- or two-term combination of atoms with index
//! `k - 1` in the same span (plus a diagonal multiple of itself for the
//! cylinder forms). All operator algebra therefore happens on small complex
//! coefficient vectors; function values enter only at evaluation time.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64;

use super::KernelError;
use crate::specfun;

/// Which concrete radial function an [`AtomSet`] indexes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Family {
    /// `r^{s_k} I_{nu_k}(scale r)`: branch of `(lap - scale^2)` regular at 0.
    BesselI,
    /// `r^{s_k} K_{nu_k}(scale r)`: branch of `(lap - scale^2)` singular at 0.
    BesselK,
    /// `r^{s_k} J_{nu_k}(scale r)`: branch of `(lap + scale^2)` regular at 0.
    BesselJ,
    /// `r^{s_k} I_{nu_k}(zeta r)`, `zeta = scale e^{i pi/4}`: regular branch
    /// of `(lap - i scale^2)`, evaluated via ber/bei.
    KelvinI,
    /// `r^{s_k} K_{nu_k}(zeta r)`: the matching singular branch, via ker/kei.
    KelvinK,
    /// `r^{2k + shift}`.
    Power,
    /// `r^{2k} ln r`; always paired with a plain `Power` set in the span.
    LogPower,
}

/// One indexed family of atoms together with the exact diagonal of the
/// Laplacian on it: `lap A_k = diag * A_k + (lower-index terms)`.
///
/// `diag` is stored explicitly rather than derived from `scale` so that the
/// operator constants cancel it exactly in floating point (e.g. a vibration
/// plate stores `-lambda` here, not `-(sqrt(lambda))^2`).
#[derive(Clone, Debug)]
pub(crate) struct AtomSet {
    pub family: Family,
    /// Argument scale of the cylinder forms; unused for the power families.
    pub scale: f64,
    /// Power offset: atoms are `r^{2k + shift}`. Only used by `Power`.
    pub shift: f64,
    /// Exact Laplacian diagonal on this family.
    pub diag: Complex64,
}

impl AtomSet {
    /// The rotated argument `scale * e^{i pi/4}` of the Kelvin families.
    fn zeta(&self) -> Complex64 {
        Complex64::from_polar(self.scale, FRAC_PI_4)
    }

    /// Coefficient of `A_{k-1}` in `lap A_k` for the cylinder families.
    fn lower_band(&self, k: usize) -> Complex64 {
        let two_k = 2.0 * k as f64;
        match self.family {
            Family::BesselI | Family::BesselJ => Complex64::new(two_k * self.scale, 0.0),
            Family::BesselK => Complex64::new(-two_k * self.scale, 0.0),
            Family::KelvinI => self.zeta() * two_k,
            Family::KelvinK => -self.zeta() * two_k,
            Family::Power | Family::LogPower => {
                unreachable!("power families have no cylinder band")
            }
        }
    }

    /// Coefficient `f` in the first-derivative identity
    /// `A_k'(r) = (2k A_k(r) + f * A_{k+1}(r)) / r` for the cylinder families.
    fn raising_coupling(&self) -> Complex64 {
        match self.family {
            Family::BesselI => Complex64::new(self.scale, 0.0),
            Family::BesselK | Family::BesselJ => Complex64::new(-self.scale, 0.0),
            Family::KelvinI => self.zeta(),
            Family::KelvinK => -self.zeta(),
            Family::Power | Family::LogPower => {
                unreachable!("power families differentiate directly")
            }
        }
    }

    fn is_cylinder(&self) -> bool {
        !matches!(self.family, Family::Power | Family::LogPower)
    }
}

/// An ordered collection of atom sets over a fixed spatial dimension.
///
/// Set order matters: a `LogPower` set must precede its plain `Power`
/// partner so that the per-level hierarchy systems are lower triangular.
#[derive(Clone, Debug)]
pub(crate) struct Span {
    pub dim: usize,
    pub sets: Vec<AtomSet>,
}

impl Span {
    /// Index of the plain power set that absorbs the logarithmic couplings.
    fn plain_power_set(&self) -> Option<usize> {
        self.sets.iter().position(|s| s.family == Family::Power && s.shift == 0.0)
    }
}

/// Value of the single atom `(set, k)` at `r > 0`.
pub(crate) fn atom_value(
    set: &AtomSet,
    dim: usize,
    k: usize,
    r: f64,
) -> Result<Complex64, KernelError> {
    let n = dim as f64;
    let s = 1.0 - n / 2.0 + k as f64;
    let nu = n / 2.0 - 1.0 + k as f64;
    match set.family {
        Family::BesselI => {
            Ok(Complex64::new(r.powf(s) * specfun::bessel_i(nu, set.scale * r)?.value, 0.0))
        }
        Family::BesselK => {
            Ok(Complex64::new(r.powf(s) * specfun::bessel_k(nu, set.scale * r)?.value, 0.0))
        }
        Family::BesselJ => {
            Ok(Complex64::new(r.powf(s) * specfun::bessel_j(nu, set.scale * r)?.value, 0.0))
        }
        Family::KelvinI => {
            // I_nu(zeta r) = e^{-i nu pi/2} (ber_nu + i bei_nu)(scale r).
            let kv = specfun::kelvin_regular(nu, set.scale * r)?;
            let rot = Complex64::from_polar(r.powf(s), -nu * FRAC_PI_2);
            Ok(rot * Complex64::new(kv.ber, kv.bei))
        }
        Family::KelvinK => {
            // K_nu(zeta r) = e^{+i nu pi/2} (ker_nu + i kei_nu)(scale r).
            let kv = specfun::kelvin(nu, set.scale * r)?;
            let rot = Complex64::from_polar(r.powf(s), nu * FRAC_PI_2);
            Ok(rot * Complex64::new(kv.ker, kv.kei))
        }
        Family::Power => Ok(Complex64::new(r.powf(2.0 * k as f64 + set.shift), 0.0)),
        Family::LogPower => Ok(Complex64::new(r.powi(2 * k as i32) * r.ln(), 0.0)),
    }
}

/// Value, first and second radial derivative of the atom `(set, k)` at
/// `r > 0`, all exact up to the underlying special-function accuracy.
pub(crate) fn atom_vdd(
    set: &AtomSet,
    dim: usize,
    k: usize,
    r: f64,
) -> Result<(Complex64, Complex64, Complex64), KernelError> {
    let n = dim as f64;
    if set.is_cylinder() {
        let v = atom_value(set, dim, k, r)?;
        let raised = atom_value(set, dim, k + 1, r)?;
        let two_k = 2.0 * k as f64;
        let d1 = (v * two_k + set.raising_coupling() * raised) / r;
        let mut lap = set.diag * v;
        if k > 0 {
            lap += set.lower_band(k) * atom_value(set, dim, k - 1, r)?;
        }
        let d2 = lap - d1 * ((n - 1.0) / r);
        return Ok((v, d1, d2));
    }
    match set.family {
        Family::Power => {
            let p = 2.0 * k as f64 + set.shift;
            let v = r.powf(p);
            let d1 = p * v / r;
            let d2 = p * (p - 1.0) * v / (r * r);
            Ok((Complex64::new(v, 0.0), Complex64::new(d1, 0.0), Complex64::new(d2, 0.0)))
        }
        Family::LogPower => {
            let p = 2.0 * k as f64;
            let rp = r.powi(2 * k as i32);
            let lnr = r.ln();
            let v = rp * lnr;
            let d1 = rp / r * (p * lnr + 1.0);
            let d2 = rp / (r * r) * (p * (p - 1.0) * lnr + 2.0 * p - 1.0);
            Ok((Complex64::new(v, 0.0), Complex64::new(d1, 0.0), Complex64::new(d2, 0.0)))
        }
        _ => unreachable!("cylinder families handled above"),
    }
}

/// Limit of the atom `(set, k)` as `r -> 0`, when it exists.
pub(crate) fn atom_origin_value(
    set: &AtomSet,
    dim: usize,
    k: usize,
) -> Result<Complex64, KernelError> {
    let n = dim as f64;
    let nu0 = n / 2.0 - 1.0;
    match set.family {
        Family::BesselI | Family::BesselJ => {
            if k > 0 {
                return Ok(Complex64::ZERO);
            }
            let amp = (set.scale / 2.0).powf(nu0) / specfun::gamma(nu0 + 1.0)?;
            Ok(Complex64::new(amp, 0.0))
        }
        Family::KelvinI => {
            if k > 0 {
                return Ok(Complex64::ZERO);
            }
            // (zeta/2)^{nu0} / Gamma(nu0 + 1) on the principal branch.
            let amp = (set.scale / 2.0).powf(nu0) / specfun::gamma(nu0 + 1.0)?;
            Ok(Complex64::from_polar(amp, nu0 * FRAC_PI_4))
        }
        Family::Power => {
            if set.shift == 0.0 {
                Ok(if k == 0 { Complex64::new(1.0, 0.0) } else { Complex64::ZERO })
            } else {
                Err(KernelError::Singularity)
            }
        }
        Family::BesselK | Family::KelvinK | Family::LogPower => Err(KernelError::Singularity),
    }
}

/// Exact action of the radial Laplacian on a coefficient vector over the
/// span. Coefficients are laid out as `c[set * width + k]`.
pub(crate) fn delta_action(span: &Span, width: usize, coeffs: &[Complex64]) -> Vec<Complex64> {
    debug_assert_eq!(coeffs.len(), span.sets.len() * width);
    let n = span.dim as f64;
    let mut out = vec![Complex64::ZERO; coeffs.len()];
    for (s, set) in span.sets.iter().enumerate() {
        for k in 0..width {
            let c = coeffs[s * width + k];
            if c == Complex64::ZERO {
                continue;
            }
            let idx = s * width + k;
            if set.is_cylinder() {
                out[idx] += set.diag * c;
                if k > 0 {
                    out[idx - 1] += set.lower_band(k) * c;
                }
                continue;
            }
            match set.family {
                Family::Power => {
                    let p = 2.0 * k as f64 + set.shift;
                    let factor = p * (p + n - 2.0);
                    debug_assert!(k > 0 || factor == 0.0, "power seed must be harmonic");
                    if k > 0 {
                        out[idx - 1] += factor * c;
                    }
                }
                Family::LogPower => {
                    // lap(r^{2k} ln r) = 2k(2k + n - 2) r^{2k-2} ln r
                    //                    + (4k + n - 2) r^{2k-2}
                    debug_assert!(k > 0 || n == 2.0, "ln r is harmonic only in 2-d");
                    if k > 0 {
                        let two_k = 2.0 * k as f64;
                        out[idx - 1] += two_k * (two_k + n - 2.0) * c;
                        let partner = span
                            .plain_power_set()
                            .expect("log atoms are always paired with a plain power set");
                        out[partner * width + k - 1] += (2.0 * two_k + n - 2.0) * c;
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    out
}
