//! H-representation polytopes and the two dual root polytopes A*_d and C*_d.
//!
//! Every absolute-value facet `|<a, x>| <= 1` is stored as the pair of
//! one-sided inequalities `<a, x> <= 1` and `<-a, x> <= 1`. Membership in the
//! dilation `kP` is `<a, x> <= k * b` for every stored inequality, evaluated
//! in checked `i64` arithmetic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer coordinate vector `(x_1, ..., x_d)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    /// Drops the last coordinate.
    pub fn truncated(&self) -> LatticePoint {
        let mut c = self.0.clone();
        c.pop();
        LatticePoint(c)
    }

    pub fn extended(&self, last: i64) -> LatticePoint {
        let mut c = self.0.clone();
        c.push(last);
        LatticePoint(c)
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, c) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Sum of the coordinates `x_i + ... + x_j`, with 1-based inclusive indices.
///
/// An empty range (`i > j`) sums to zero. `i = 0` or `j > len` is an error.
pub fn interval_sum(x: &LatticePoint, i: usize, j: usize) -> Result<i64> {
    let len = x.dim();
    if i == 0 || j > len {
        return Err(Error::IndexOutOfRange { i, j, len });
    }
    if i > j {
        return Ok(0);
    }
    x.0[i - 1..j]
        .iter()
        .try_fold(0i64, |acc, &c| acc.checked_add(c))
        .ok_or(Error::Overflow)
}

/// One-sided inequality `<normal, x> <= bound`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inequality {
    normal: Vec<i64>,
    bound: i64,
}

impl Inequality {
    pub fn new(normal: Vec<i64>, bound: i64) -> Result<Self> {
        if normal.iter().all(|&a| a == 0) {
            return Err(Error::ZeroNormal);
        }
        Ok(Self { normal, bound })
    }

    pub fn normal(&self) -> &[i64] {
        &self.normal
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn negated_normal(&self) -> Inequality {
        Inequality {
            normal: self.normal.iter().map(|a| -a).collect(),
            bound: self.bound,
        }
    }

    /// `<normal, x>`, overflow-checked.
    pub fn lhs(&self, x: &[i64]) -> Result<i64> {
        self.normal
            .iter()
            .zip(x)
            .try_fold(0i64, |acc, (&a, &c)| acc.checked_add(a.checked_mul(c)?))
            .ok_or(Error::Overflow)
    }

    /// Right-hand side at dilation `k`.
    pub fn rhs(&self, k: i64) -> Result<i64> {
        self.bound.checked_mul(k).ok_or(Error::Overflow)
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &a) in self.normal.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let sign = if a < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = a.abs();
            if mag == 1 {
                write!(f, "{sign}x{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}x{}", i + 1)?;
            }
            first = false;
        }
        write!(f, " <= {}", self.bound)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolytopeLabel {
    /// Dual of the type-A root polytope.
    AStar,
    /// Dual of the type-C root polytope.
    CStar,
    /// Any other inequality system; accepted by membership and enumeration,
    /// rejected by the reflexivity and bijection machinery.
    Custom,
}

impl fmt::Display for PolytopeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolytopeLabel::AStar => "Astar",
            PolytopeLabel::CStar => "Cstar",
            PolytopeLabel::Custom => "custom",
        })
    }
}

/// Where a point sits relative to `kP`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Outside,
    Interior,
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPolytope {
    dim: usize,
    inequalities: Vec<Inequality>,
    label: PolytopeLabel,
}

impl HPolytope {
    /// A custom inequality system. Every normal must have length `dim`.
    pub fn custom(dim: usize, inequalities: Vec<Inequality>) -> Result<Self> {
        for ineq in &inequalities {
            if ineq.normal.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: ineq.normal.len(),
                });
            }
        }
        Ok(Self {
            dim,
            inequalities,
            label: PolytopeLabel::Custom,
        })
    }

    /// A*_d: `|x_i + ... + x_j| <= 1` for `1 <= i <= j <= d`, giving
    /// `d(d+1)` one-sided inequalities. `d = 0` is the single point.
    pub fn a_star(dim: usize) -> Self {
        let mut inequalities = Vec::with_capacity(dim * (dim + 1));
        for i in 1..=dim {
            for j in i..=dim {
                let mut normal = vec![0; dim];
                normal[i - 1..j].iter_mut().for_each(|a| *a = 1);
                push_symmetric(&mut inequalities, normal);
            }
        }
        Self {
            dim,
            inequalities,
            label: PolytopeLabel::AStar,
        }
    }

    /// C*_d, from the three facet families
    ///
    /// * `|x_i| <= 1` for `1 <= i <= d`,
    /// * `|x_i + ... + x_j| <= 1` for `1 <= i < j <= d-1`,
    /// * `|2(x_i + ... + x_{d-1}) + x_d| <= 1` for `1 <= i <= d-1`.
    pub fn c_star(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let d = dim;
        let mut inequalities =
            Vec::with_capacity(2 * (d + (d - 1) * d.saturating_sub(2) / 2 + d - 1));
        for i in 1..=d {
            let mut normal = vec![0; d];
            normal[i - 1] = 1;
            push_symmetric(&mut inequalities, normal);
        }
        for i in 1..d {
            for j in (i + 1)..d {
                let mut normal = vec![0; d];
                normal[i - 1..j].iter_mut().for_each(|a| *a = 1);
                push_symmetric(&mut inequalities, normal);
            }
        }
        for i in 1..d {
            let mut normal = vec![0; d];
            normal[i - 1..d - 1].iter_mut().for_each(|a| *a = 2);
            normal[d - 1] = 1;
            push_symmetric(&mut inequalities, normal);
        }
        Ok(Self {
            dim,
            inequalities,
            label: PolytopeLabel::CStar,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn label(&self) -> PolytopeLabel {
        self.label
    }

    /// Human-readable name such as `C*_3`.
    pub fn name(&self) -> String {
        match self.label {
            PolytopeLabel::AStar => format!("A*_{}", self.dim),
            PolytopeLabel::CStar => format!("C*_{}", self.dim),
            PolytopeLabel::Custom => format!("P_{}", self.dim),
        }
    }

    /// Same system with inequality `index` removed, relabelled as custom.
    pub fn without(&self, index: usize) -> HPolytope {
        let mut inequalities = self.inequalities.clone();
        inequalities.remove(index);
        HPolytope {
            dim: self.dim,
            inequalities,
            label: PolytopeLabel::Custom,
        }
    }

    fn check_dim(&self, x: &LatticePoint) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        Ok(())
    }

    /// Classifies `x` against `kP`. Boundary means some inequality is tight.
    pub fn membership(&self, k: i64, x: &LatticePoint) -> Result<Membership> {
        self.check_dim(x)?;
        if k < 0 {
            return Err(Error::InvalidScale(k));
        }
        let mut tight = false;
        for ineq in &self.inequalities {
            let lhs = ineq.lhs(x.coords())?;
            let rhs = ineq.rhs(k)?;
            if lhs > rhs {
                return Ok(Membership::Outside);
            }
            tight |= lhs == rhs;
        }
        Ok(if tight {
            Membership::Boundary
        } else {
            Membership::Interior
        })
    }

    /// `x ∈ kP`.
    pub fn contains(&self, k: i64, x: &LatticePoint) -> Result<bool> {
        Ok(self.membership(k, x)? != Membership::Outside)
    }

    /// `x ∈ kP` with at least one tight inequality. Requires `k >= 1`.
    pub fn on_boundary(&self, k: i64, x: &LatticePoint) -> Result<bool> {
        if k < 1 {
            return Err(Error::InvalidScale(k));
        }
        Ok(self.membership(k, x)? == Membership::Boundary)
    }

    /// Per-coordinate bounds of `kP` read off the single-coordinate
    /// inequalities `±x_i <= b`. For A*_d and C*_d this is `[-k, k]^d`.
    pub fn coordinate_box(&self, k: i64) -> Result<Vec<(i64, i64)>> {
        if k < 0 {
            return Err(Error::InvalidScale(k));
        }
        let mut lo = vec![None::<i64>; self.dim];
        let mut hi = vec![None::<i64>; self.dim];
        for ineq in &self.inequalities {
            let mut nonzero = ineq.normal.iter().enumerate().filter(|(_, &a)| a != 0);
            let (Some((i, &a)), None) = (nonzero.next(), nonzero.next()) else {
                continue;
            };
            let rhs = ineq.rhs(k)?;
            if a > 0 {
                let b = rhs.div_euclid(a);
                hi[i] = Some(hi[i].map_or(b, |h| h.min(b)));
            } else {
                // a x <= rhs with a < 0  =>  x >= ceil(rhs / a)
                let b = ceil_div(rhs, a);
                lo[i] = Some(lo[i].map_or(b, |l| l.max(b)));
            }
        }
        (0..self.dim)
            .map(|i| match (lo[i], hi[i]) {
                (Some(l), Some(h)) => Ok((l, h)),
                _ => Err(Error::UnboundedBox(i + 1)),
            })
            .collect()
    }
}

fn ceil_div(n: i64, d: i64) -> i64 {
    let q = n.div_euclid(d);
    if q * d == n {
        q
    } else if d > 0 {
        q + 1
    } else {
        q
    }
}

fn push_symmetric(out: &mut Vec<Inequality>, normal: Vec<i64>) {
    let neg = normal.iter().map(|a| -a).collect();
    out.push(Inequality { normal, bound: 1 });
    out.push(Inequality {
        normal: neg,
        bound: 1,
    });
}
