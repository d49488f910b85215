//! Brute-force lattice-point enumeration over the coordinate box of `kP`.
//!
//! Points are produced in lexicographic order. Counting splits the box into
//! slabs along the first coordinate and sums them in parallel.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::{HPolytope, LatticePoint, Membership, PolytopeLabel};

/// Default cap on membership tests per enumeration.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Axis-aligned integer box `∏ [lo_i, hi_i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBox {
    bounds: Vec<(i64, i64)>,
}

impl LatticeBox {
    pub fn new(bounds: Vec<(i64, i64)>) -> Self {
        Self { bounds }
    }

    pub fn cube(dim: usize, radius: i64) -> Self {
        Self::new(vec![(-radius, radius); dim])
    }

    pub fn bounds(&self) -> &[(i64, i64)] {
        &self.bounds
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.iter().any(|&(lo, hi)| lo > hi)
    }

    /// Number of integer points, saturating at `u128::MAX`.
    pub fn len(&self) -> u128 {
        if self.is_empty() {
            return 0;
        }
        self.bounds.iter().fold(1u128, |acc, &(lo, hi)| {
            acc.saturating_mul((hi as i128 - lo as i128 + 1) as u128)
        })
    }

    /// Splits along the first coordinate into one slab per value.
    pub fn slabs(&self) -> Vec<LatticeBox> {
        match self.bounds.first() {
            None => vec![self.clone()],
            Some(&(lo, hi)) => (lo..=hi)
                .map(|v| {
                    let mut b = self.bounds.clone();
                    b[0] = (v, v);
                    LatticeBox::new(b)
                })
                .collect(),
        }
    }

    pub fn iter(&self) -> BoxIter {
        BoxIter {
            bounds: self.bounds.clone(),
            next: if self.is_empty() {
                None
            } else {
                Some(self.bounds.iter().map(|&(lo, _)| lo).collect())
            },
        }
    }
}

/// Lexicographic odometer over a [`LatticeBox`].
#[derive(Debug, Clone)]
pub struct BoxIter {
    bounds: Vec<(i64, i64)>,
    next: Option<Vec<i64>>,
}

impl Iterator for BoxIter {
    type Item = LatticePoint;

    fn next(&mut self) -> Option<LatticePoint> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut pos = succ.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            if succ[pos] < self.bounds[pos].1 {
                succ[pos] += 1;
                self.next = Some(succ);
                break;
            }
            succ[pos] = self.bounds[pos].0;
        }
        Some(LatticePoint::new(current))
    }
}

/// Total and boundary counts of `kP ∩ Z^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountResult {
    pub total: u64,
    pub boundary: u64,
    pub dim: usize,
    pub scale: i64,
    pub label: PolytopeLabel,
}

fn search_box(p: &HPolytope, k: i64, budget: u64) -> Result<LatticeBox> {
    let region = LatticeBox::new(p.coordinate_box(k)?);
    let required = region.len();
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(region)
}

/// Lattice points of `kP` in lexicographic order.
pub fn enumerate_points(
    p: &HPolytope,
    k: i64,
    budget: u64,
) -> Result<impl Iterator<Item = Result<LatticePoint>> + '_> {
    let region = search_box(p, k, budget)?;
    Ok(region.iter().filter_map(move |x| match p.contains(k, &x) {
        Ok(true) => Some(Ok(x)),
        Ok(false) => None,
        Err(e) => Some(Err(e)),
    }))
}

/// Lattice points of `kP` that lie on a facet, in lexicographic order.
pub fn enumerate_boundary(
    p: &HPolytope,
    k: i64,
    budget: u64,
) -> Result<impl Iterator<Item = Result<LatticePoint>> + '_> {
    if k < 1 {
        return Err(Error::InvalidScale(k));
    }
    let region = search_box(p, k, budget)?;
    Ok(region
        .iter()
        .filter_map(move |x| match p.membership(k, &x) {
            Ok(Membership::Boundary) => Some(Ok(x)),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        }))
}

/// `(total, boundary)` over one region. Boundary is only counted for `k >= 1`.
pub fn count_region(p: &HPolytope, k: i64, region: &LatticeBox) -> Result<(u64, u64)> {
    let mut total = 0;
    let mut boundary = 0;
    for x in region.iter() {
        match p.membership(k, &x)? {
            Membership::Outside => {}
            Membership::Interior => total += 1,
            Membership::Boundary => {
                total += 1;
                if k >= 1 {
                    boundary += 1;
                }
            }
        }
    }
    Ok((total, boundary))
}

/// Counts `|kP ∩ Z^d|` and `|k∂P ∩ Z^d|` in one pass. At `k = 0` the
/// boundary count is 0.
pub fn count(p: &HPolytope, k: i64, budget: u64) -> Result<CountResult> {
    let region = search_box(p, k, budget)?;
    let (total, boundary) = region
        .slabs()
        .par_iter()
        .map(|slab| count_region(p, k, slab))
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
    Ok(CountResult {
        total,
        boundary,
        dim: p.dim(),
        scale: k,
        label: p.label(),
    })
}

pub fn count_points(p: &HPolytope, k: i64, budget: u64) -> Result<u64> {
    Ok(count(p, k, budget)?.total)
}

pub fn count_boundary(p: &HPolytope, k: i64, budget: u64) -> Result<u64> {
    Ok(count(p, k, budget)?.boundary)
}
