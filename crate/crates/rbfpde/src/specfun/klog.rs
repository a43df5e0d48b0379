//! K_n(z) for integer order n, where the reflection formula degenerates.
//!
//! Uses the logarithmic ascending expansion
//!
//!   K_n(z) = (1/2) (z/2)^{-n} Sum_{k=0}^{n-1} ((n-k-1)!/k!) (-z^2/4)^k
//!          + (-1)^{n+1} ln(z/2) I_n(z)
//!          + (-1)^n (1/2) (z/2)^n
//!              Sum_{k>=0} (psi(k+1) + psi(n+k+1)) (z^2/4)^k / (k! (n+k)!)
//!
//! entirely in double-double arithmetic: the three pieces cancel against
//! each other by up to ~e^{2x}, which is exactly why plain doubles fail
//! here. psi values are Euler's constant plus harmonic numbers, accumulated
//! exactly as the sum runs.

use super::dd::{Dd, DdComplex};
use super::series::{bessel_i_series, unit_phase, w_of, Phase, RawSeries, TERM_BUDGET};

/// ln(z/2) for z = x e^{i phase}; the imaginary part is an exact multiple
/// of pi/4.
fn ln_half_z(x: f64, phase: Phase) -> DdComplex {
    let re = Dd::from_f64(0.5 * x).ln();
    let im = match phase {
        Phase::Zero => Dd::ZERO,
        Phase::QuarterPi => Dd::PI * Dd::from_f64(0.25),
    };
    DdComplex::new(re, im)
}

pub(super) fn bessel_k_log_series(n: u32, x: f64, phase: Phase) -> RawSeries {
    let w = w_of(x, phase);
    let half = Dd::from_f64(0.5);
    let q = Dd::from_f64(0.5 * x);
    let nf = n as f64;

    // (z/2)^{+-n} as magnitude times an exact rotation; on the real ray the
    // rotation is the identity.
    let pow_plus = q.powi(n as i32);
    let (rot_plus, rot_minus) = match phase {
        Phase::Zero => (DdComplex::ONE, DdComplex::ONE),
        Phase::QuarterPi => (unit_phase(nf, 1), unit_phase(nf, -1)),
    };

    // Finite part: (1/2) (z/2)^{-n} Sum_{k<n} ((n-k-1)!/k!) (-w)^k.
    let mut finite = DdComplex::ZERO;
    if n > 0 {
        let mut coef = Dd::ONE; // (n-1)! / 0! at k = 0
        for j in 2..n {
            coef = coef * Dd::from_f64(j as f64);
        }
        let neg_w = DdComplex::ZERO.sub(w);
        let mut wp = DdComplex::ONE;
        for k in 0..n {
            finite = finite.add(wp.scale(coef));
            if k + 1 < n {
                // coef_{k+1} = coef_k / ((n-k-1) (k+1))
                coef = coef / (Dd::from_f64((n - k - 1) as f64) * Dd::from_f64((k + 1) as f64));
                wp = wp.mul(neg_w);
            }
        }
        finite = rot_minus.scale(half / pow_plus).mul(finite);
    }

    // Logarithmic part: (-1)^{n+1} ln(z/2) I_n(z).
    let i_part = bessel_i_series(nf, x, phase);
    let mut log_piece = ln_half_z(x, phase).mul(i_part.value);
    if n.is_multiple_of(2) {
        log_piece = DdComplex::ZERO.sub(log_piece);
    }

    // Tail: (-1)^n (1/2) (z/2)^n Sum_k (psi(k+1)+psi(n+k+1)) w^k / (k!(n+k)!).
    let mut inv_n_fact = Dd::ONE;
    for j in 2..=n {
        inv_n_fact = inv_n_fact / Dd::from_f64(j as f64);
    }
    let mut base = DdComplex::new(inv_n_fact, Dd::ZERO); // w^k/(k!(n+k)!) at k=0
    let mut psi_small = -Dd::EULER_GAMMA; // psi(k+1)
    let mut psi_large = -Dd::EULER_GAMMA; // psi(n+k+1)
    for j in 1..=n {
        psi_large = psi_large + Dd::from_f64(j as f64).recip();
    }
    let mut tail = DdComplex::ZERO;
    let mut terms = i_part.terms;
    let mut converged = false;
    for k in 0..=TERM_BUDGET {
        let contrib = base.scale(psi_small + psi_large);
        tail = tail.add(contrib);
        if k > 0 && contrib.mag_hi() < 1e-35 * tail.mag_hi().max(1e-300) {
            terms = terms.max(k);
            converged = true;
            break;
        }
        let kn = k + 1;
        base = base
            .mul(w)
            .scale((Dd::from_f64(kn as f64) * Dd::from_f64((n as usize + kn) as f64)).recip());
        psi_small = psi_small + Dd::from_f64(kn as f64).recip();
        psi_large = psi_large + Dd::from_f64((n as usize + kn) as f64).recip();
    }
    let mut tail_piece = rot_plus.scale(half * pow_plus).mul(tail);
    if n % 2 == 1 {
        tail_piece = DdComplex::ZERO.sub(tail_piece);
    }

    RawSeries {
        value: finite.add(log_piece).add(tail_piece),
        terms,
        converged: converged && i_part.converged,
    }
}
