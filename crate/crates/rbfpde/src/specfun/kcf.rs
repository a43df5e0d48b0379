//! K_nu(z) away from the origin via Steed's continued fraction.
//!
//! The order is first reduced to mu in [-1/2, 1/2]; the Thompson-Barnett
//! CF2 fraction then yields K_mu and K_{mu+1} together, and the target
//! order is rebuilt by the (stable, growing) upward recurrence
//! K_{nu+1} = K_{nu-1} + (2 nu / z) K_nu. The fraction converges for
//! Re z > 0, fast enough to be practical from |z| ~ 2 upward, which is
//! where the dispatcher routes to it. Plain doubles suffice here: the
//! result is never combined against a cancelling partner.

use num_complex::Complex64;

use super::series::Phase;

const EPS: f64 = 1e-16;
const MAX_ITER: usize = 10_000;

/// CF2 evaluation at a reduced order |mu| <= 1/2: returns (K_mu(z),
/// K_{mu+1}(z), iterations), or None if the fraction fails to settle.
fn k_pair(mu: f64, z: Complex64) -> Option<(Complex64, Complex64, usize)> {
    let one = Complex64::new(1.0, 0.0);
    let a1 = 0.25 - mu * mu;
    let mut b = 2.0 * (z + 1.0);
    let mut d = one / b;
    let mut delh = d;
    let mut h = delh;
    let mut q1 = Complex64::new(0.0, 0.0);
    let mut q2 = one;
    let mut a = -a1;
    let mut c = a1;
    let mut q = Complex64::new(a1, 0.0);
    let mut s = one + q * delh;
    for i in 2..=MAX_ITER {
        a -= 2.0 * (i - 1) as f64;
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = one / (b + a * d);
        delh = (b * d - one) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).norm() <= EPS {
            let h = a1 * h;
            let kmu = (std::f64::consts::PI / (2.0 * z)).sqrt() * (-z).exp() / s;
            let kmu1 = kmu * (Complex64::new(mu + 0.5, 0.0) + z - h) / z;
            return Some((kmu, kmu1, i));
        }
    }
    None
}

/// K_nu(x e^{i phase}) for nu >= 0 by order reduction plus upward recurrence.
pub(super) fn bessel_k_cf(nu: f64, x: f64, phase: Phase) -> Option<(Complex64, usize)> {
    let z = match phase {
        Phase::Zero => Complex64::new(x, 0.0),
        Phase::QuarterPi => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            Complex64::new(x * h, x * h)
        }
    };
    let m = nu.round();
    let mu = nu - m;
    let (mut below, mut here, iters) = k_pair(mu, z)?;
    if (m as i64) < 1 {
        // nu rounded to 0: the first seed already is K_nu.
        return Some((below, iters));
    }
    let mut order = mu + 1.0;
    let mut steps = m as i64 - 1;
    while steps > 0 {
        let next = below + 2.0 * order / z * here;
        below = here;
        here = next;
        order += 1.0;
        steps -= 1;
    }
    Some((here, iters))
}
