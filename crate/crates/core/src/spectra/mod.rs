//! Roots of Ehrhart polynomials: the closed-form roots of `(k+1)^d + k^d`,
//! numeric roots of arbitrary polynomials, and verdicts about the canonical
//! line `Re z = -1/2`.

mod aberth;
mod polish;

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use aberth::{aberth_roots, MAX_ITERATIONS};

use crate::ehrhart::EhrhartPolynomial;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Largest degree accepted by [`numeric_roots`]. Beyond this the binomial
/// coefficients of `(k+1)^d + k^d` stop being meaningful in `f64`.
pub const MAX_NUMERIC_DEGREE: usize = 60;

pub const DEFAULT_CL_TOL: f64 = 1e-8;
pub const DEFAULT_AGREEMENT_TOL: f64 = 1e-6;
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-10;

/// Root `-1/2 + y i` of `(k+1)^d + k^d`, where `k/(k+1) = e^{iθ}` and
/// `θ = (2j-1)π/d` for `j = k_index`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalRoot {
    pub d: usize,
    pub k_index: usize,
    pub theta: f64,
    pub real_part: f64,
    pub imag_part: f64,
    /// `e^{iθ}`.
    pub r: Complex64,
}

impl CanonicalRoot {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.real_part, self.imag_part)
    }
}

/// `sin θ / (2 (1 - cos θ))`, written as `cot(θ/2) / 2`.
pub fn canonical_imag(theta: f64) -> f64 {
    0.5 / (theta / 2.0).tan()
}

fn unpaired_imag(d: usize, j: usize) -> f64 {
    if 2 * j - 1 == d {
        // θ = π
        0.0
    } else {
        canonical_imag((2 * j - 1) as f64 * PI / d as f64)
    }
}

/// The `d` roots of `(k+1)^d + k^d`, by descending imaginary part
/// (equivalently, ascending `k_index`).
pub fn closed_form_roots(d: usize) -> Result<Vec<CanonicalRoot>> {
    if d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    Ok((1..=d)
        .map(|j| {
            let theta = (2 * j - 1) as f64 * PI / d as f64;
            // θ_{d+1-j} = 2π - θ_j, so the imaginary parts pair up exactly
            let imag_part = if 2 * j <= d + 1 {
                unpaired_imag(d, j)
            } else {
                -unpaired_imag(d, d + 1 - j)
            };
            CanonicalRoot {
                d,
                k_index: j,
                theta,
                real_part: -0.5,
                imag_part,
                r: Complex64::from_polar(1.0, theta),
            }
        })
        .collect())
}

/// Relative residual `|(z+1)^d + z^d| / (|z+1|^d + |z|^d)`, rescaled so it
/// stays finite at large `d`.
pub fn closed_form_residual(z: Complex64, d: usize) -> f64 {
    let z1 = z + 1.0;
    let m = z.norm().max(z1.norm());
    let (a, b) = (z1 / m, z / m);
    let n = d as i32;
    (a.powi(n) + b.powi(n)).norm() / (a.norm().powi(n) + b.norm().powi(n))
}

/// Descending imaginary part, then ascending real part.
pub fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| b.im.total_cmp(&a.im).then(a.re.total_cmp(&b.re)));
}

/// Numeric roots of a polynomial with rational coefficients: Aberth–Ehrlich
/// in `f64`, then Newton refinement with exactly evaluated `p` and `p'`.
pub fn numeric_roots_of(p: &Polynomial) -> Result<Vec<Complex64>> {
    let degree = p.degree();
    if p.is_zero() || degree == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if degree > MAX_NUMERIC_DEGREE {
        return Err(Error::DegreeGuard {
            degree,
            limit: MAX_NUMERIC_DEGREE,
        });
    }
    let coeffs = p.to_f64_coeffs().ok_or(Error::NonFiniteCoefficient)?;
    let exact = polish::ExactPolynomial::new(p);
    let mut roots: Vec<Complex64> = aberth_roots(&coeffs)?
        .into_iter()
        .map(|z| exact.refine(z))
        .collect();
    sort_roots(&mut roots);
    Ok(roots)
}

/// All complex roots of `p`, sorted by [`sort_roots`].
pub fn numeric_roots(p: &EhrhartPolynomial) -> Result<Vec<Complex64>> {
    numeric_roots_of(p.poly())
}

/// Largest relative residual `|p(z)| / Σ|a_i||z|^i` over the given roots.
pub fn max_relative_residual(p: &Polynomial, roots: &[Complex64]) -> Option<f64> {
    let coeffs = p.to_f64_coeffs()?;
    Some(
        roots
            .iter()
            .map(|&z| {
                let (mut v, mut s) = (Complex64::new(0.0, 0.0), 0.0);
                for &c in coeffs.iter().rev() {
                    v = v * z + c;
                    s = s * z.norm() + c.abs();
                }
                v.norm() / s
            })
            .fold(0.0, f64::max),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClVerdict {
    pub holds: bool,
    /// `max |Re z + 1/2|`.
    pub max_deviation: f64,
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

/// Whether every root lies within `tol` of the canonical line.
pub fn cl_check(roots: &[Complex64], tol: f64) -> Result<ClVerdict> {
    check_tol(tol)?;
    if roots.is_empty() {
        return Err(Error::EmptyRoots);
    }
    let max_deviation = roots.iter().map(|z| (z.re + 0.5).abs()).fold(0.0, f64::max);
    Ok(ClVerdict {
        holds: max_deviation <= tol,
        max_deviation,
    })
}

fn by_imag_then_real(a: &Complex64, b: &Complex64) -> Ordering {
    a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re))
}

const EXACT_MATCHING_LIMIT: usize = 8;

/// Whether the root multiset is invariant, within `tol`, under the
/// reflection `z -> -1 - conj(z)` in the canonical line.
///
/// Roots are paired greedily after sorting; if that fails and there are at
/// most eight roots, an exhaustive bottleneck matching decides.
pub fn symmetry_check(roots: &[Complex64], tol: f64) -> Result<bool> {
    check_tol(tol)?;
    let mut orig = roots.to_vec();
    let mut mirrored: Vec<Complex64> = roots.iter().map(|z| -1.0 - z.conj()).collect();
    orig.sort_by(by_imag_then_real);
    mirrored.sort_by(by_imag_then_real);
    if orig
        .iter()
        .zip(&mirrored)
        .all(|(a, b)| (a - b).norm() <= tol)
    {
        return Ok(true);
    }
    if orig.len() > EXACT_MATCHING_LIMIT {
        return Ok(false);
    }
    let mut used = vec![false; mirrored.len()];
    Ok(match_rest(&orig, &mirrored, &mut used, tol))
}

fn match_rest(orig: &[Complex64], mirrored: &[Complex64], used: &mut [bool], tol: f64) -> bool {
    let Some((first, rest)) = orig.split_first() else {
        return true;
    };
    for j in 0..mirrored.len() {
        if used[j] || (first - mirrored[j]).norm() > tol {
            continue;
        }
        used[j] = true;
        if match_rest(rest, mirrored, used, tol) {
            return true;
        }
        used[j] = false;
    }
    false
}

/// Interlacing of the roots of `E_{C*_{d+1}}` (the `t` values) by those of
/// `E_{C*_d}` (the `s` values) along the line `β + R γ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterlacingReport {
    pub d: usize,
    pub line_base: Complex64,
    pub line_dir: Complex64,
    /// Ascending imaginary parts of the degree-`d+1` roots.
    pub t_values: Vec<f64>,
    /// Ascending imaginary parts of the degree-`d` roots.
    pub s_values: Vec<f64>,
    /// `t_1 <= s_1 <= t_2 <= ... <= s_d <= t_{d+1}`.
    pub non_strict: bool,
    /// The same chain with strict inequalities.
    pub strict: bool,
    /// `θ_{(d+1,j)} < θ_{(d,j)} < θ_{(d+1,j+1)}` for every `j`, in exact
    /// integer arithmetic.
    pub angle_chain: bool,
}

impl InterlacingReport {
    pub fn verdict(&self) -> bool {
        self.non_strict
    }
}

fn ascending_imag(d: usize) -> Result<Vec<f64>> {
    let mut v: Vec<f64> = closed_form_roots(d)?.iter().map(|r| r.imag_part).collect();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Merged sequence `t_1, s_1, t_2, ..., s_d, t_{d+1}`.
fn interleave(t: &[f64], s: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(t.len() + s.len());
    for (i, &tv) in t.iter().enumerate() {
        out.push(tv);
        if let Some(&sv) = s.get(i) {
            out.push(sv);
        }
    }
    out
}

/// `a/b < c/e` for positive denominators.
fn frac_lt(a: u128, b: u128, c: u128, e: u128) -> bool {
    a * e < c * b
}

/// Exact check of `(2j-1)/(d+1) < (2j-1)/d < (2j+1)/(d+1)`, `1 <= j <= d`
/// (angles in units of π).
pub fn angle_chain_holds(d: usize) -> bool {
    let (dd, d1) = (d as u128, d as u128 + 1);
    (1..=dd).all(|j| {
        let odd = 2 * j - 1;
        frac_lt(odd, d1, odd, dd) && frac_lt(odd, dd, odd + 2, d1)
    })
}

pub fn interlace_check(d: usize) -> Result<InterlacingReport> {
    if d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let t_values = ascending_imag(d + 1)?;
    let s_values = ascending_imag(d)?;
    let merged = interleave(&t_values, &s_values);
    let non_strict = merged.windows(2).all(|w| w[0] <= w[1]);
    let strict = merged.windows(2).all(|w| w[0] < w[1]);
    Ok(InterlacingReport {
        d,
        line_base: Complex64::new(-0.5, 0.0),
        line_dir: Complex64::new(0.0, 1.0),
        t_values,
        s_values,
        non_strict,
        strict,
        angle_chain: angle_chain_holds(d),
    })
}
