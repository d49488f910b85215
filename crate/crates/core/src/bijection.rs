//! The boundary bijection behind `|kC*_d ∩ Z^d| = (k+1)^d + k^d`.
//!
//! Let `A = k∂C*_d` and let `B` be the multiset
//! `k∂A*_{d-1} ⊔ (k-1)A*_{d-1} ⊔ (k-1)A*_{d-1}`. The forward map
//! [`project_f`] drops the last coordinate and tags the prefix with the
//! part of `B` it came from; the inverse [`lift_g`] rebuilds `x_d` from the
//! prefix alone:
//!
//! * shell prefix with a tight pair `x_{i0} + ... + x_{j0} = k`:
//!   `x_d = -k - 2 (x_{j0+1} + ... + x_{d-1})`;
//! * shell prefix with `x_{i0} + ... + x_{j0} = -k`:
//!   `x_d = k - 2 (x_{j0+1} + ... + x_{d-1})`;
//! * interior prefix, first copy: `x_d = k` if `p <= 0`, else `k - 2p`;
//! * interior prefix, second copy: `x_d = -k - 2q` if `q < 0`, else `-k`;
//!
//! where `p` and `q` are the max and min of the suffix sums
//! `x_i + ... + x_{d-1}` over `1 <= i <= d-1` (both 0 when `d = 1`).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_boundary, enumerate_points};
use crate::error::{Error, Result};
use crate::polytope::{interval_sum, HPolytope, LatticePoint};

const MAX_REPORTED_FAILURES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

/// Which part of `kA*_{d-1}` a prefix lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrefixClass {
    /// On the boundary; `(i0, j0)` is the lexicographically smallest pair
    /// with `|x_{i0} + ... + x_{j0}| = k`.
    Shell { i0: usize, j0: usize, sign: Sign },
    /// Every interval sum has absolute value at most `k - 1`.
    Interior,
}

/// Copy tag of an element of the multiset `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CopyTag {
    /// `k∂A*_{d-1}`.
    Shell,
    /// First copy of `(k-1)A*_{d-1}`, lifted with the `k` / `k - 2p` rule.
    Copy1,
    /// Second copy of `(k-1)A*_{d-1}`, lifted with the `-k - 2q` / `-k` rule.
    Copy2,
}

impl fmt::Display for CopyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CopyTag::Shell => "SHELL",
            CopyTag::Copy1 => "COPY1",
            CopyTag::Copy2 => "COPY2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TaggedBoundaryElement {
    pub point: LatticePoint,
    pub tag: CopyTag,
}

impl TaggedBoundaryElement {
    pub fn new(point: LatticePoint, tag: CopyTag) -> Self {
        Self { point, tag }
    }
}

impl fmt::Display for TaggedBoundaryElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.tag, self.point)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseId {
    /// Shell prefix, positive tight pair.
    BoundaryPos,
    /// Shell prefix, negative tight pair.
    BoundaryNeg,
    Interior1,
    Interior2,
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseId::BoundaryPos => "BOUNDARY_POS (case i)",
            CaseId::BoundaryNeg => "BOUNDARY_NEG (case ii)",
            CaseId::Interior1 => "INTERIOR_1",
            CaseId::Interior2 => "INTERIOR_2",
        })
    }
}

/// The data used to pick (or recognise) the last coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconstructionWitness {
    pub case_id: CaseId,
    pub i0: Option<usize>,
    pub j0: Option<usize>,
    pub p: Option<i64>,
    pub q: Option<i64>,
    pub alpha_d: i64,
}

impl fmt::Display for ReconstructionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn opt<T: fmt::Display>(v: Option<T>) -> String {
            v.map_or_else(|| "-".to_string(), |v| v.to_string())
        }
        write!(
            f,
            "case={} i0={} j0={} p={} q={} alpha_d={}",
            self.case_id,
            opt(self.i0),
            opt(self.j0),
            opt(self.p),
            opt(self.q),
            self.alpha_d
        )
    }
}

fn prefix_sums(x: &LatticePoint) -> Result<Vec<i64>> {
    let mut s = Vec::with_capacity(x.dim() + 1);
    s.push(0i64);
    for &c in x.coords() {
        let next = s.last().unwrap().checked_add(c).ok_or(Error::Overflow)?;
        s.push(next);
    }
    Ok(s)
}

/// Every pair `(i, j)`, `1 <= i <= j <= len`, with `|x_i + ... + x_j| = k`,
/// in lexicographic order.
pub fn tight_pairs(x: &LatticePoint, k: i64) -> Result<Vec<(usize, usize, Sign)>> {
    let s = prefix_sums(x)?;
    let n = x.dim();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            let sum = s[j] - s[i - 1];
            if sum == k {
                out.push((i, j, Sign::Pos));
            } else if sum == -k {
                out.push((i, j, Sign::Neg));
            }
        }
    }
    Ok(out)
}

/// Classifies a prefix `x ∈ kA*_{len}` as shell or interior.
pub fn classify_prefix(x: &LatticePoint, k: i64) -> Result<PrefixClass> {
    if k < 1 {
        return Err(Error::InvalidScale(k));
    }
    let host = HPolytope::a_star(x.dim());
    if !host.contains(k, x)? {
        return Err(Error::NotInPolytope {
            point: x.to_string(),
            scale: k,
            polytope: host.name(),
        });
    }
    Ok(match tight_pairs(x, k)?.first() {
        Some(&(i0, j0, sign)) => PrefixClass::Shell { i0, j0, sign },
        None => PrefixClass::Interior,
    })
}

/// Max and min of the suffix sums `x_i + ... + x_len`, `1 <= i <= len`;
/// `(0, 0)` for the empty prefix.
pub fn suffix_extrema(x: &LatticePoint) -> Result<(i64, i64)> {
    let n = x.dim();
    if n == 0 {
        return Ok((0, 0));
    }
    let mut p = i64::MIN;
    let mut q = i64::MAX;
    let mut acc = 0i64;
    for &c in x.coords().iter().rev() {
        acc = acc.checked_add(c).ok_or(Error::Overflow)?;
        p = p.max(acc);
        q = q.min(acc);
    }
    Ok((p, q))
}

/// Last coordinate for a shell prefix with tight pair ending at `j0`.
pub fn shell_alpha(x: &LatticePoint, k: i64, j0: usize, sign: Sign) -> Result<i64> {
    let tail = interval_sum(x, j0 + 1, x.dim())?;
    let twice = tail.checked_mul(2).ok_or(Error::Overflow)?;
    Ok(match sign {
        Sign::Pos => -k - twice,
        Sign::Neg => k - twice,
    })
}

/// The two candidate last coordinates `(first copy, second copy)` for an
/// interior prefix.
pub fn interior_alphas(x: &LatticePoint, k: i64) -> Result<(i64, i64)> {
    let (p, q) = suffix_extrema(x)?;
    let first = if p <= 0 { k } else { k - 2 * p };
    let second = if q < 0 { -k - 2 * q } else { -k };
    Ok((first, second))
}

fn check_dims(d: usize, k: i64) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    if k < 1 {
        return Err(Error::InvalidScale(k));
    }
    Ok(())
}

/// `g: B -> k∂C*_d`. Appends the last coordinate chosen by the element's tag
/// and verifies that the result lies on `k∂C*_d`.
pub fn lift_g(
    e: &TaggedBoundaryElement,
    d: usize,
    k: i64,
) -> Result<(LatticePoint, ReconstructionWitness)> {
    check_dims(d, k)?;
    if e.point.dim() != d - 1 {
        return Err(Error::DimensionMismatch {
            expected: d - 1,
            got: e.point.dim(),
        });
    }
    let base = HPolytope::a_star(d - 1);
    let x = &e.point;
    let witness = match e.tag {
        CopyTag::Shell => {
            if !base.on_boundary(k, x)? {
                return Err(Error::TagInvariant(e.to_string()));
            }
            let PrefixClass::Shell { i0, j0, sign } = classify_prefix(x, k)? else {
                return Err(Error::Internal(format!(
                    "{x} tight in A* but no tight pair"
                )));
            };
            ReconstructionWitness {
                case_id: match sign {
                    Sign::Pos => CaseId::BoundaryPos,
                    Sign::Neg => CaseId::BoundaryNeg,
                },
                i0: Some(i0),
                j0: Some(j0),
                p: None,
                q: None,
                alpha_d: shell_alpha(x, k, j0, sign)?,
            }
        }
        CopyTag::Copy1 | CopyTag::Copy2 => {
            if !base.contains(k - 1, x)? {
                return Err(Error::TagInvariant(e.to_string()));
            }
            let (p, q) = suffix_extrema(x)?;
            let (first, second) = interior_alphas(x, k)?;
            let (case_id, alpha_d) = if e.tag == CopyTag::Copy1 {
                (CaseId::Interior1, first)
            } else {
                (CaseId::Interior2, second)
            };
            ReconstructionWitness {
                case_id,
                i0: None,
                j0: None,
                p: Some(p),
                q: Some(q),
                alpha_d,
            }
        }
    };
    let lifted = x.extended(witness.alpha_d);
    let target = HPolytope::c_star(d)?;
    if !target.on_boundary(k, &lifted)? {
        return Err(Error::Internal(format!(
            "lift of {e} gave {lifted}, not on {k}∂{}",
            target.name()
        )));
    }
    Ok((lifted, witness))
}

/// `f: k∂C*_d -> B`. Drops the last coordinate and tags the prefix.
pub fn project_f(
    x: &LatticePoint,
    d: usize,
    k: i64,
) -> Result<(TaggedBoundaryElement, ReconstructionWitness)> {
    check_dims(d, k)?;
    let host = HPolytope::c_star(d)?;
    if !host.on_boundary(k, x)? {
        return Err(Error::NotOnBoundary {
            point: x.to_string(),
            scale: k,
            polytope: host.name(),
        });
    }
    let alpha_d = x.coords()[d - 1];
    let prefix = x.truncated();
    let class = classify_prefix(&prefix, k)
        .map_err(|e| Error::Internal(format!("prefix of boundary point {x}: {e}")))?;
    match class {
        PrefixClass::Shell { i0, j0, sign } => Ok((
            TaggedBoundaryElement::new(prefix, CopyTag::Shell),
            ReconstructionWitness {
                case_id: match sign {
                    Sign::Pos => CaseId::BoundaryPos,
                    Sign::Neg => CaseId::BoundaryNeg,
                },
                i0: Some(i0),
                j0: Some(j0),
                p: None,
                q: None,
                alpha_d,
            },
        )),
        PrefixClass::Interior => {
            let (p, q) = suffix_extrema(&prefix)?;
            let (first, second) = interior_alphas(&prefix, k)?;
            let (tag, case_id) = if alpha_d == first {
                (CopyTag::Copy1, CaseId::Interior1)
            } else if alpha_d == second {
                (CopyTag::Copy2, CaseId::Interior2)
            } else {
                return Err(Error::Internal(format!(
                    "{x}: last coordinate matches neither {first} nor {second}"
                )));
            };
            Ok((
                TaggedBoundaryElement::new(prefix, tag),
                ReconstructionWitness {
                    case_id,
                    i0: None,
                    j0: None,
                    p: Some(p),
                    q: Some(q),
                    alpha_d,
                },
            ))
        }
    }
}

/// Outcome of checking `g ∘ f = id_A` and `f ∘ g = id_B` exhaustively.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub dim: usize,
    pub scale: i64,
    /// `|k∂C*_d|`.
    pub size_a: u64,
    /// `|k∂A*_{d-1}|`.
    pub size_shell: u64,
    /// `|(k-1)A*_{d-1}|`, counted once.
    pub size_interior: u64,
    pub failures: u64,
    /// The first few failures, for diagnostics.
    pub failure_samples: Vec<String>,
}

impl BijectionReport {
    /// `|B|` with the interior counted twice.
    pub fn size_b(&self) -> u64 {
        self.size_shell + 2 * self.size_interior
    }

    pub fn ok(&self) -> bool {
        self.failures == 0 && self.size_a == self.size_b()
    }
}

impl fmt::Display for BijectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "|A|={} |B|={} roundtrip {}",
            self.size_a,
            self.size_b(),
            if self.ok() { "OK" } else { "FAILED" }
        )
    }
}

/// Enumerates `A` and `B` for `(d, k)` and checks both compositions.
pub fn verify_bijection(d: usize, k: i64, budget: u64) -> Result<BijectionReport> {
    check_dims(d, k)?;
    let c = HPolytope::c_star(d)?;
    let a = HPolytope::a_star(d - 1);
    let mut report = BijectionReport {
        dim: d,
        scale: k,
        size_a: 0,
        size_shell: 0,
        size_interior: 0,
        failures: 0,
        failure_samples: Vec::new(),
    };
    let fail = |report: &mut BijectionReport, msg: String| {
        report.failures += 1;
        if report.failure_samples.len() < MAX_REPORTED_FAILURES {
            report.failure_samples.push(msg);
        }
    };

    for x in enumerate_boundary(&c, k, budget)? {
        let x = x?;
        report.size_a += 1;
        match project_f(&x, d, k).and_then(|(e, _)| lift_g(&e, d, k)) {
            Ok((y, _)) if y == x => {}
            Ok((y, _)) => fail(&mut report, format!("g(f({x})) = {y}")),
            Err(e) => fail(&mut report, format!("g(f({x})): {e}")),
        }
    }

    let check_b = |report: &mut BijectionReport, e: TaggedBoundaryElement| match lift_g(&e, d, k)
        .and_then(|(y, _)| project_f(&y, d, k))
    {
        Ok((back, _)) if back == e => {}
        Ok((back, _)) => fail(report, format!("f(g({e})) = {back}")),
        Err(err) => fail(report, format!("f(g({e})): {err}")),
    };
    for x in enumerate_boundary(&a, k, budget)? {
        report.size_shell += 1;
        check_b(&mut report, TaggedBoundaryElement::new(x?, CopyTag::Shell));
    }
    for x in enumerate_points(&a, k - 1, budget)? {
        let x = x?;
        report.size_interior += 1;
        check_b(
            &mut report,
            TaggedBoundaryElement::new(x.clone(), CopyTag::Copy1),
        );
        check_b(&mut report, TaggedBoundaryElement::new(x, CopyTag::Copy2));
    }
    Ok(report)
}

/// `f` followed by `g` for a single point, with both witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionTrace {
    pub point: LatticePoint,
    pub image: TaggedBoundaryElement,
    pub forward: ReconstructionWitness,
    pub restored: LatticePoint,
    pub backward: ReconstructionWitness,
}

impl BijectionTrace {
    pub fn round_trips(&self) -> bool {
        self.point == self.restored
    }
}

pub fn trace_point(x: &LatticePoint, d: usize, k: i64) -> Result<BijectionTrace> {
    let (image, forward) = project_f(x, d, k)?;
    let (restored, backward) = lift_g(&image, d, k)?;
    Ok(BijectionTrace {
        point: x.clone(),
        image,
        forward,
        restored,
        backward,
    })
}

/// Exhaustive audit of the case analysis over every prefix in `kA*_{d-1}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseAudit {
    pub shell_prefixes: u64,
    /// Shell prefixes with more than one tight pair.
    pub multi_tight_prefixes: u64,
    pub interior_prefixes: u64,
    /// Shell prefixes whose tight pairs prescribe different last coordinates.
    pub well_defined_failures: u64,
    /// Interior prefixes whose two candidate last coordinates coincide.
    pub distinctness_failures: u64,
    /// Tight pairs violating the sign pattern of the partial sums around them.
    pub sign_chain_failures: u64,
}

impl CaseAudit {
    pub fn ok(&self) -> bool {
        self.well_defined_failures == 0
            && self.distinctness_failures == 0
            && self.sign_chain_failures == 0
    }
}

/// For a tight pair `x_{i0} + ... + x_{j0} = ±k` inside `kA*`, the partial
/// sums around it have fixed signs (shown for `+k`; flipped for `-k`):
/// `x_l + ... + x_{i0-1} <= 0` for `l < i0`, `x_{i0} + ... + x_l >= 0` for
/// `i0 <= l <= j0`, `x_{j0+1} + ... + x_l <= 0` for `l > j0`.
pub fn sign_chain_holds(x: &LatticePoint, i0: usize, j0: usize, sign: Sign) -> Result<bool> {
    let n = x.dim();
    let s = match sign {
        Sign::Pos => 1,
        Sign::Neg => -1,
    };
    for l in 1..i0 {
        if s * interval_sum(x, l, i0 - 1)? > 0 {
            return Ok(false);
        }
    }
    for l in i0..=j0 {
        if s * interval_sum(x, i0, l)? < 0 {
            return Ok(false);
        }
    }
    for l in (j0 + 1)..=n {
        if s * interval_sum(x, j0 + 1, l)? > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn audit_cases(d: usize, k: i64, budget: u64) -> Result<CaseAudit> {
    check_dims(d, k)?;
    let a = HPolytope::a_star(d - 1);
    let mut audit = CaseAudit::default();
    for x in enumerate_points(&a, k, budget)? {
        let x = x?;
        let pairs = tight_pairs(&x, k)?;
        if pairs.is_empty() {
            audit.interior_prefixes += 1;
            let (first, second) = interior_alphas(&x, k)?;
            if first == second {
                audit.distinctness_failures += 1;
            }
            continue;
        }
        audit.shell_prefixes += 1;
        if pairs.len() > 1 {
            audit.multi_tight_prefixes += 1;
        }
        let mut alphas = Vec::with_capacity(pairs.len());
        for &(i0, j0, sign) in &pairs {
            alphas.push(shell_alpha(&x, k, j0, sign)?);
            if !sign_chain_holds(&x, i0, j0, sign)? {
                audit.sign_chain_failures += 1;
            }
        }
        if alphas.windows(2).any(|w| w[0] != w[1]) {
            audit.well_defined_failures += 1;
        }
    }
    Ok(audit)
}
