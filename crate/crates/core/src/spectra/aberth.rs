//! Aberth–Ehrlich simultaneous iteration for all roots of a real polynomial.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 1000;

/// Horner evaluation of `p(z)`, `p'(z)` and `Σ |a_i| |z|^i` (the scale of the
/// rounding error in `p(z)`).
fn eval(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut bound = 0.0;
    let r = z.norm();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        bound = bound * r + c.norm();
    }
    (p, dp, bound)
}

fn initial_guesses(monic: &[Complex64]) -> Vec<Complex64> {
    let n = monic.len() - 1;
    let center = -monic[n - 1] / n as f64;
    // Fujiwara bound on |z| for the roots of the monic polynomial.
    let fujiwara = (1..=n)
        .map(|i| {
            let a = monic[n - i].norm();
            let a = if i == n { a / 2.0 } else { a };
            a.powf(1.0 / i as f64)
        })
        .fold(0.0f64, f64::max)
        * 2.0;
    let radius = (fujiwara + center.norm()).max(1e-3);
    (0..n)
        .map(|j| {
            let angle = std::f64::consts::TAU * j as f64 / n as f64 + 0.4;
            center + Complex64::from_polar(radius, angle)
        })
        .collect()
}

/// All complex roots of `Σ coeffs[i] z^i`. The leading coefficient must be
/// nonzero.
pub fn aberth_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 || coeffs[n] == 0.0 {
        return Err(Error::ConstantPolynomial);
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFiniteCoefficient);
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs
        .iter()
        .map(|&c| Complex64::new(c / lead, 0.0))
        .collect();
    if n == 1 {
        return Ok(vec![-monic[0]]);
    }

    let mut roots = initial_guesses(&monic);
    let mut done = vec![false; n];
    let tol = 4.0 * n as f64 * f64::EPSILON;
    for _ in 0..MAX_ITERATIONS {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let z = roots[i];
            let (p, dp, bound) = eval(&monic, z);
            if p.norm() <= tol * bound {
                done[i] = true;
                continue;
            }
            let newton = p / dp;
            let repulsion: Complex64 = roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &w)| (z - w).inv())
                .sum();
            let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            roots[i] = z - step;
            if step.norm() <= f64::EPSILON * roots[i].norm() {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(roots);
        }
    }
    Err(Error::NoConvergence(MAX_ITERATIONS))
}
