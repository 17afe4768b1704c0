//! Smooth solutions with homogeneous clamped / no-slip boundary data.

/// `g(t) = t²(1−t)²` and its derivatives.
fn g(t: f64, k: usize) -> f64 {
    match k {
        0 => t * t * (1.0 - t) * (1.0 - t),
        1 => 2.0 * t - 6.0 * t * t + 4.0 * t * t * t,
        2 => 2.0 - 12.0 * t + 12.0 * t * t,
        3 => -12.0 + 24.0 * t,
        4 => 24.0,
        _ => 0.0,
    }
}

/// `u = (x(1−x)y(1−y))²`, partial derivative `alpha`.
pub fn plate_solution(x: &[f64], alpha: &[usize]) -> f64 {
    g(x[0], alpha[0]) * g(x[1], alpha[1])
}

/// `Δ²u` for [`plate_solution`].
pub fn plate_load(x: &[f64]) -> f64 {
    g(x[0], 4) * g(x[1], 0) + 2.0 * g(x[0], 2) * g(x[1], 2) + g(x[0], 0) * g(x[1], 4)
}

/// `u = curl ψ = (ψ_y, −ψ_x)` with `ψ = g(x) g(y)`.
pub fn stokes_velocity(x: &[f64], alpha: &[usize], comp: usize) -> f64 {
    match comp {
        0 => g(x[0], alpha[0]) * g(x[1], alpha[1] + 1),
        _ => -g(x[0], alpha[0] + 1) * g(x[1], alpha[1]),
    }
}

/// `p = x³ + y³ − 1/2`, which has zero mean on the unit square.
pub fn stokes_pressure(x: &[f64], alpha: &[usize]) -> f64 {
    match (alpha[0], alpha[1]) {
        (0, 0) => x[0].powi(3) + x[1].powi(3) - 0.5,
        (1, 0) => 3.0 * x[0] * x[0],
        (0, 1) => 3.0 * x[1] * x[1],
        (2, 0) => 6.0 * x[0],
        (0, 2) => 6.0 * x[1],
        (3, 0) | (0, 3) => 6.0,
        _ => 0.0,
    }
}

/// `f = −Δu + ∇p` for unit viscosity.
pub fn stokes_load(x: &[f64], comp: usize) -> f64 {
    let lap = stokes_velocity(x, &[2, 0], comp) + stokes_velocity(x, &[0, 2], comp);
    let dp = if comp == 0 { stokes_pressure(x, &[1, 0]) } else { stokes_pressure(x, &[0, 1]) };
    -lap + dp
}
