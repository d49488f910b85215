//! Newton refinement of approximate roots using exact evaluation.
//!
//! An `f64` complex number is a dyadic rational `w / 2^s` with `w` a
//! Gaussian integer, so `p(z)` and `p'(z)` can be computed exactly from the
//! integer-scaled coefficients and rounded once. This removes the
//! evaluation error that limits roots found in plain `f64`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::poly::Polynomial;

const MAX_STEPS: usize = 64;

#[derive(Clone)]
struct Gauss {
    re: BigInt,
    im: BigInt,
}

impl Gauss {
    fn mul(&self, o: &Gauss) -> Gauss {
        Gauss {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// Splits `x` into `(m, e)` with `x = m · 2^e`.
fn dyadic(x: f64) -> (BigInt, i64) {
    if x == 0.0 {
        return (BigInt::zero(), 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let mantissa = if exp == 0 {
        (bits & 0xf_ffff_ffff_ffff) << 1
    } else {
        (bits & 0xf_ffff_ffff_ffff) | 0x10_0000_0000_0000
    };
    (BigInt::from(sign) * BigInt::from(mantissa), exp - 1075)
}

pub(crate) struct ExactPolynomial {
    /// `L · c_i`, with `L` the lcm of the coefficient denominators.
    coeffs: Vec<BigInt>,
    /// `(i+1) L c_{i+1}`.
    deriv: Vec<BigInt>,
}

impl ExactPolynomial {
    pub(crate) fn new(p: &Polynomial) -> Self {
        let lcm = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs: Vec<BigInt> = p
            .coeffs()
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let deriv = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        Self { coeffs, deriv }
    }

    /// Horner on `w` with the term for power `i` scaled by `2^{s(n-i)}`.
    fn horner(coeffs: &[BigInt], w: &Gauss, s: u32) -> Gauss {
        let n = coeffs.len() - 1;
        let mut acc = Gauss {
            re: coeffs[n].clone(),
            im: BigInt::zero(),
        };
        for i in (0..n).rev() {
            acc = acc.mul(w);
            acc.re += &coeffs[i] << (s as usize * (n - i));
        }
        acc
    }

    /// Exact Newton step `p(z) / p'(z)`, rounded to `f64`. `None` when `z`
    /// is an exact root or `p'(z) = 0`.
    fn newton_step(&self, z: Complex64) -> Option<Complex64> {
        let (mr, er) = dyadic(z.re);
        let (mi, ei) = dyadic(z.im);
        let e = er.min(ei).min(0);
        let w = Gauss {
            re: mr << (er - e) as usize,
            im: mi << (ei - e) as usize,
        };
        let s = (-e) as u32;
        let p = Self::horner(&self.coeffs, &w, s);
        if p.is_zero() || self.deriv.is_empty() {
            return None;
        }
        let dp = Self::horner(&self.deriv, &w, s);
        if dp.is_zero() {
            return None;
        }
        // p/p' = P / (D 2^s) with P, D the scaled Horner results
        let den = (&dp.re * &dp.re + &dp.im * &dp.im) << s as usize;
        let num_re = &p.re * &dp.re + &p.im * &dp.im;
        let num_im = &p.im * &dp.re - &p.re * &dp.im;
        let re = BigRational::new(num_re, den.clone()).to_f64()?;
        let im = BigRational::new(num_im, den).to_f64()?;
        Some(Complex64::new(re, im))
    }

    /// Newton iteration from `z` until the step no longer moves it.
    pub(crate) fn refine(&self, mut z: Complex64) -> Complex64 {
        for _ in 0..MAX_STEPS {
            let Some(step) = self.newton_step(z) else {
                break;
            };
            if !(step.re.is_finite() && step.im.is_finite()) {
                break;
            }
            let next = z - step;
            if next == z || step.norm() <= f64::EPSILON * z.norm() * 0.5 {
                z = next;
                break;
            }
            z = next;
        }
        z
    }
}
