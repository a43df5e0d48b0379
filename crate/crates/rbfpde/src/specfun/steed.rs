//! J_nu(x) for x > 20 by Steed's method: the real continued fraction CF1
//! for J'/J, the complex continued fraction CF2 for (J' - iY')/(J - iY),
//! and the Wronskian to fix the normalization. This is the classical
//! bessjy construction; only the J value is surfaced.

const FPMIN: f64 = 1e-300;
const EPS: f64 = 1e-16;
const MAX_ITER: usize = 10_000;

/// Returns (J_nu(x), iterations) or None if either fraction stalls.
pub(super) fn bessel_j_steed(nu: f64, x: f64) -> Option<(f64, usize)> {
    debug_assert!(x > 2.0 && nu >= -0.5);
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    // Shift the order down only far enough for CF2's oscillatory regime.
    let nl = (nu - x + 1.5).floor().max(0.0);
    let mu = nu - nl;

    // CF1: h = J'_nu / J_nu with the sign of J_nu tracked in isign.
    let mut isign = 1.0f64;
    // The first convergent nu/x may be negative (orders down to -1/2 are
    // supported); only rescue it from an exact zero, never clamp the sign.
    let mut h = nu * xi;
    if h.abs() < FPMIN {
        h = FPMIN;
    }
    let mut b = xi2 * nu;
    let mut d = 0.0f64;
    let mut c = h;
    let mut cf1_iters = 0;
    for i in 1..=MAX_ITER {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() <= EPS {
            cf1_iters = i;
            break;
        }
    }
    if cf1_iters == 0 {
        return None;
    }

    // Downward recurrence of the unnormalized pair (J, J') from nu to mu.
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl; // unnormalized J at order nu
    let mut fact = nu * xi;
    for _ in 0..nl as i64 {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = rjtemp * fact - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    // CF2: p + iq = (J' - iY')/(J - iY) at order mu.
    let a0 = 0.25 - mu * mu;
    let mut p = -0.5 * xi;
    let mut q = 1.0f64;
    let br = 2.0 * x;
    let mut bi = 2.0f64;
    let mut fact2 = a0 * xi / (p * p + q * q);
    let mut cr = br + q * fact2;
    let mut ci = bi + p * fact2;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let dlr1 = cr * dr - ci * di;
    let dli1 = cr * di + ci * dr;
    let temp = p * dlr1 - q * dli1;
    q = p * dli1 + q * dlr1;
    p = temp;
    let mut a = a0;
    let mut cf2_iters = 0;
    for i in 2..=MAX_ITER {
        a += 2.0 * (i - 1) as f64;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fact2 = a / (cr * cr + ci * ci);
        cr = br + cr * fact2;
        ci = bi - ci * fact2;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        let dlr = cr * dr - ci * di;
        let dli = cr * di + ci * dr;
        let temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < EPS {
            cf2_iters = i;
            break;
        }
    }
    if cf2_iters == 0 {
        return None;
    }

    // Wronskian J Y' - J' Y = 2/(pi x) pins the magnitude of J_mu.
    let w = xi2 / std::f64::consts::PI;
    let gam = (p - f) / q;
    let mut rjmu = (w / ((p - f) * gam + q)).sqrt();
    if rjl < 0.0 {
        rjmu = -rjmu.abs();
    } else {
        rjmu = rjmu.abs();
    }
    let scale = rjmu / rjl;
    Some((rjl1 * scale, cf1_iters.max(cf2_iters)))
}
