//! Ehrhart polynomials: closed forms for the four root-polytope families,
//! exact interpolation from lattice-point counts, and the reflexivity and
//! root-symmetry verdicts.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::enumerate::count;
use crate::error::{Error, Result};
use crate::poly::{rat, Polynomial};
use crate::polytope::{HPolytope, PolytopeLabel};

/// Polytope families with a known closed-form Ehrhart polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Root polytope of type A: `Σ C(d,i)^2 C(k+d-i, d)`.
    A,
    /// Root polytope of type C: `Σ C(2d,2i) C(k+d-i, d)`.
    C,
    /// Dual of A_d: `Σ_{i<=d} C(d+1,i) k^i`.
    AStar,
    /// Dual of C_d: `(k+1)^d + k^d`.
    CStar,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::A, Family::C, Family::AStar, Family::CStar];

    /// The matching H-representation, for the two dual families only.
    pub fn polytope(self, dim: usize) -> Result<HPolytope> {
        match self {
            Family::AStar => Ok(HPolytope::a_star(dim)),
            Family::CStar => HPolytope::c_star(dim),
            other => Err(Error::UnsupportedPolytope(other.to_string())),
        }
    }

    pub fn from_label(label: PolytopeLabel) -> Option<Family> {
        match label {
            PolytopeLabel::AStar => Some(Family::AStar),
            PolytopeLabel::CStar => Some(Family::CStar),
            PolytopeLabel::Custom => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::C => "C",
            Family::AStar => "Astar",
            Family::CStar => "Cstar",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "A" => Ok(Family::A),
            "C" => Ok(Family::C),
            "Astar" | "A*" => Ok(Family::AStar),
            "Cstar" | "C*" => Ok(Family::CStar),
            other => Err(format!(
                "unknown polytope family `{other}` (expected A, C, Astar, Cstar)"
            )),
        }
    }
}

/// `C(n, m)` for any integer `n`, via the falling factorial
/// `n (n-1) ... (n-m+1) / m!`.
pub fn binomial(n: &BigInt, m: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..m {
        num *= n - BigInt::from(t);
        den *= BigInt::from(t + 1);
    }
    num / den
}

fn binom_small(n: usize, m: usize) -> BigInt {
    binomial(&BigInt::from(n), m)
}

/// The polynomial `C(k + shift, m)` in `k`.
fn binomial_polynomial(shift: i64, m: usize) -> Polynomial {
    let mut p = Polynomial::one();
    let mut fact = BigInt::one();
    for t in 0..m {
        p = &p * &Polynomial::linear(rat(shift - t as i64), rat(1));
        fact *= BigInt::from(t + 1);
    }
    p.scale(&BigRational::new(BigInt::one(), fact))
}

/// Evaluates the closed form of `family` in dimension `d` at `k`, directly
/// from the defining sum (not through the expanded polynomial).
pub fn eval_closed_form(family: Family, d: usize, k: i64) -> Result<BigRational> {
    if d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let kb = BigInt::from(k);
    let value = match family {
        Family::A => (0..=d)
            .map(|i| {
                let c = binom_small(d, i);
                &c * &c * binomial(&(&kb + BigInt::from(d - i)), d)
            })
            .sum(),
        Family::C => (0..=d)
            .map(|i| binom_small(2 * d, 2 * i) * binomial(&(&kb + BigInt::from(d - i)), d))
            .sum(),
        Family::AStar => (0..=d)
            .map(|i| binom_small(d + 1, i) * num_traits::pow(kb.clone(), i))
            .sum(),
        Family::CStar => num_traits::pow(&kb + 1, d) + num_traits::pow(kb.clone(), d),
    };
    Ok(BigRational::from_integer(value))
}

/// Where an [`EhrhartPolynomial`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolySource {
    ClosedForm(Family),
    Interpolated(PolytopeLabel),
    Nodes,
}

/// A candidate Ehrhart polynomial of nominal dimension `dim`.
///
/// Construction does not enforce the Ehrhart invariants, because
/// interpolation of arbitrary data must be representable; call
/// [`EhrhartPolynomial::invariant_violations`] to audit them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    poly: Polynomial,
    dim: usize,
    source: PolySource,
}

impl EhrhartPolynomial {
    pub fn new(poly: Polynomial, dim: usize, source: PolySource) -> Self {
        Self { poly, dim, source }
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn source(&self) -> PolySource {
        self.source
    }

    pub fn coeffs(&self) -> &[BigRational] {
        self.poly.coeffs()
    }

    pub fn eval(&self, k: i64) -> BigRational {
        self.poly.eval_int(k)
    }

    /// Violated invariants: degree equals `dim`, positive leading
    /// coefficient, constant term 1, nonnegative integer values on `0..=dim`.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.poly.is_zero() || self.poly.degree() != self.dim {
            out.push(format!("degree {} != dim {}", self.poly.degree(), self.dim));
        }
        if !self.poly.is_positive_leading() {
            out.push("leading coefficient not positive".into());
        }
        if self.poly.coeff(0) != BigRational::one() {
            out.push(format!("constant term {} != 1", self.poly.coeff(0)));
        }
        for k in 0..=self.dim as i64 {
            let v = self.eval(k);
            if !v.is_integer() || v.is_negative() {
                out.push(format!("E({k}) = {v} is not a nonnegative integer"));
            }
        }
        out
    }
}

impl fmt::Display for EhrhartPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// Expanded closed-form polynomial of `family` in dimension `d`.
pub fn closed_form_polynomial(family: Family, d: usize) -> Result<EhrhartPolynomial> {
    if d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let poly = match family {
        Family::A => (0..=d).fold(Polynomial::zero(), |acc, i| {
            let c = binom_small(d, i);
            let w = BigRational::from_integer(&c * &c);
            &acc + &binomial_polynomial((d - i) as i64, d).scale(&w)
        }),
        Family::C => (0..=d).fold(Polynomial::zero(), |acc, i| {
            let w = BigRational::from_integer(binom_small(2 * d, 2 * i));
            &acc + &binomial_polynomial((d - i) as i64, d).scale(&w)
        }),
        Family::AStar => Polynomial::new(
            (0..=d)
                .map(|i| BigRational::from_integer(binom_small(d + 1, i)))
                .collect(),
        ),
        Family::CStar => {
            let k = Polynomial::from_integers(&[0, 1]);
            let k1 = Polynomial::from_integers(&[1, 1]);
            &k1.pow(d as u32) + &k.pow(d as u32)
        }
    };
    Ok(EhrhartPolynomial::new(
        poly,
        d,
        PolySource::ClosedForm(family),
    ))
}

/// The unique polynomial of degree `<= degree` through the given nodes,
/// by exact Lagrange interpolation.
pub fn interpolate(nodes: &[(i64, BigInt)], degree: usize) -> Result<EhrhartPolynomial> {
    if nodes.len() != degree + 1 {
        return Err(Error::NodeCount {
            expected: degree + 1,
            got: nodes.len(),
        });
    }
    let mut seen = HashSet::new();
    for &(k, _) in nodes {
        if !seen.insert(k) {
            return Err(Error::DuplicateNode(k));
        }
    }
    let mut acc = Polynomial::zero();
    for (j, (kj, vj)) in nodes.iter().enumerate() {
        let mut basis = Polynomial::one();
        let mut denom = BigRational::one();
        for (m, (km, _)) in nodes.iter().enumerate() {
            if m == j {
                continue;
            }
            basis = &basis * &Polynomial::linear(rat(-km), rat(1));
            denom *= rat(kj - km);
        }
        let w = BigRational::from_integer(vj.clone()) / denom;
        acc = &acc + &basis.scale(&w);
    }
    Ok(EhrhartPolynomial::new(acc, degree, PolySource::Nodes))
}

/// Recovers `E_P` from brute-force counts at `k = 0, ..., dim`.
pub fn interpolate_counts(p: &HPolytope, budget: u64) -> Result<EhrhartPolynomial> {
    let d = p.dim();
    let nodes = (0..=d as i64)
        .map(|k| Ok((k, BigInt::from(count(p, k, budget)?.total))))
        .collect::<Result<Vec<_>>>()?;
    let fitted = interpolate(&nodes, d)?;
    Ok(EhrhartPolynomial::new(
        fitted.poly,
        d,
        PolySource::Interpolated(p.label()),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellMismatch {
    pub k: i64,
    /// `|kP ∩ Z^d| - |(k-1)P ∩ Z^d|`.
    pub shell: u64,
    /// `|k∂P ∩ Z^d|`.
    pub boundary: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflexivityVerdict {
    pub holds: bool,
    pub counterexample: Option<ShellMismatch>,
}

/// Checks that no lattice point of `kP` lies strictly inside yet outside
/// `(k-1)P`, i.e. `|kP| - |(k-1)P| = |k∂P|` for `1 <= k <= k_max`.
pub fn reflexivity_check(p: &HPolytope, k_max: i64, budget: u64) -> Result<ReflexivityVerdict> {
    if p.label() == PolytopeLabel::Custom {
        return Err(Error::UnsupportedPolytope(p.name()));
    }
    if k_max < 1 {
        return Err(Error::InvalidScale(k_max));
    }
    let mut prev = count(p, 0, budget)?.total;
    for k in 1..=k_max {
        let c = count(p, k, budget)?;
        let shell = c.total - prev;
        if shell != c.boundary {
            return Ok(ReflexivityVerdict {
                holds: false,
                counterexample: Some(ShellMismatch {
                    k,
                    shell,
                    boundary: c.boundary,
                }),
            });
        }
        prev = c.total;
    }
    Ok(ReflexivityVerdict {
        holds: true,
        counterexample: None,
    })
}

/// `p(k) = (-1)^deg p(-k-1)` as a coefficient identity; for real
/// polynomials this is symmetry of the roots under `z -> -1 - z`.
pub fn canonical_symmetry_check(p: &EhrhartPolynomial) -> bool {
    let reflected = p.poly.reflect();
    if p.poly.degree().is_multiple_of(2) {
        reflected == p.poly
    } else {
        -&reflected == p.poly
    }
}
