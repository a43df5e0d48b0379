//! Shared numerical helpers for the integration tests: high-order radial
//! finite-difference stencils used to apply differential operators to
//! kernel profiles without touching the profiles' own derivative code.

/// First four radial derivatives of `f` at `r` from a symmetric 7-point
/// stencil (sixth-order accurate for d1/d2, fourth-order for d3/d4).
/// The step must satisfy `r - 3h > 0` when `f` is undefined at 0.
pub fn stencil7(f: &dyn Fn(f64) -> f64, r: f64, h: f64) -> [f64; 4] {
    let v: Vec<f64> = (-3..=3).map(|k| f(r + k as f64 * h)).collect();
    let d1 = (-v[0] + 9.0 * v[1] - 45.0 * v[2] + 45.0 * v[4] - 9.0 * v[5] + v[6]) / (60.0 * h);
    let d2 = (2.0 * v[0] - 27.0 * v[1] + 270.0 * v[2] - 490.0 * v[3] + 270.0 * v[4] - 27.0 * v[5]
        + 2.0 * v[6])
        / (180.0 * h * h);
    let d3 =
        (v[0] - 8.0 * v[1] + 13.0 * v[2] - 13.0 * v[4] + 8.0 * v[5] - v[6]) / (8.0 * h * h * h);
    let d4 = (-v[0] + 12.0 * v[1] - 39.0 * v[2] + 56.0 * v[3] - 39.0 * v[4] + 12.0 * v[5] - v[6])
        / (6.0 * h * h * h * h);
    [d1, d2, d3, d4]
}

/// Radial Laplacian in `n` dimensions from the stencil derivatives.
pub fn radial_laplacian(d: &[f64; 4], r: f64, n: usize) -> f64 {
    d[1] + (n as f64 - 1.0) / r * d[0]
}

/// Radial bilaplacian in `n` dimensions from the stencil derivatives:
/// d4 + 2(n-1)/r d3 + (n-1)(n-3)/r^2 d2 - (n-1)(n-3)/r^3 d1.
pub fn radial_bilaplacian(d: &[f64; 4], r: f64, n: usize) -> f64 {
    let a = n as f64 - 1.0;
    let b = a * (a - 2.0);
    d[3] + 2.0 * a / r * d[2] + b / (r * r) * d[1] - b / (r * r * r) * d[0]
}

/// Magnitude scale of the bilaplacian assembly, for relative comparisons.
pub fn bilaplacian_scale(d: &[f64; 4], r: f64, n: usize) -> f64 {
    let a = n as f64 - 1.0;
    let b = (a * (a - 2.0)).abs();
    d[3].abs()
        + (2.0 * a / r * d[2]).abs()
        + (b / (r * r) * d[1]).abs()
        + (b / (r * r * r) * d[0]).abs()
}

/// Magnitude scale of the Laplacian assembly.
pub fn laplacian_scale(d: &[f64; 4], r: f64, n: usize) -> f64 {
    d[1].abs() + ((n as f64 - 1.0) / r * d[0]).abs()
}
