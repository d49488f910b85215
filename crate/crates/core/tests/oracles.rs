//! Brute-force and closed-form oracles, checked against the library.
//!
//! Membership here is written straight from the absolute-value facet lists,
//! without going through `HPolytope`.

use ehrhart_lab::ehrhart::{
    canonical_symmetry_check, closed_form_polynomial, eval_closed_form, interpolate_counts, Family,
};
use ehrhart_lab::enumerate::{count, count_region, enumerate_points, LatticeBox};
use ehrhart_lab::poly::rat;
use ehrhart_lab::{BigInt, BigRational, HPolytope, LatticePoint, DEFAULT_BUDGET};
use num_traits::pow;

fn isum(x: &[i64], i: usize, j: usize) -> i64 {
    x[i - 1..j].iter().sum()
}

/// `x ∈ kA*_d` and whether some facet is tight.
fn oracle_a_star(x: &[i64], k: i64) -> (bool, bool) {
    let d = x.len();
    let mut inside = true;
    let mut tight = false;
    for i in 1..=d {
        for j in i..=d {
            let s = isum(x, i, j).abs();
            inside &= s <= k;
            tight |= s == k;
        }
    }
    (inside, inside && tight)
}

fn oracle_c_star(x: &[i64], k: i64) -> (bool, bool) {
    let d = x.len();
    let mut vals = Vec::new();
    for i in 1..=d {
        vals.push(x[i - 1].abs());
    }
    for i in 1..d {
        for j in (i + 1)..d {
            vals.push(isum(x, i, j).abs());
        }
    }
    for i in 1..d {
        vals.push((2 * isum(x, i, d - 1) + x[d - 1]).abs());
    }
    let inside = vals.iter().all(|&v| v <= k);
    (inside, inside && vals.contains(&k))
}

fn oracle_counts(d: usize, k: i64, c_star: bool) -> (u64, u64) {
    let mut total = 0;
    let mut boundary = 0;
    for x in LatticeBox::cube(d, k).iter() {
        let (inside, tight) = if c_star {
            oracle_c_star(x.coords(), k)
        } else {
            oracle_a_star(x.coords(), k)
        };
        total += inside as u64;
        boundary += (tight && k >= 1) as u64;
    }
    (total, boundary)
}

#[test]
fn library_membership_matches_facet_lists() {
    for d in 1..=4 {
        let c = HPolytope::c_star(d).unwrap();
        let a = HPolytope::a_star(d);
        for k in 1..=3 {
            for x in LatticeBox::cube(d, k + 1).iter() {
                let (ci, cb) = oracle_c_star(x.coords(), k);
                assert_eq!(c.contains(k, &x).unwrap(), ci, "C*_{d} k={k} {x}");
                assert_eq!(c.on_boundary(k, &x).unwrap(), cb, "C*_{d} k={k} {x}");
                let (ai, ab) = oracle_a_star(x.coords(), k);
                assert_eq!(a.contains(k, &x).unwrap(), ai, "A*_{d} k={k} {x}");
                assert_eq!(a.on_boundary(k, &x).unwrap(), ab, "A*_{d} k={k} {x}");
            }
        }
    }
}

#[test]
fn counts_match_oracle_and_closed_forms() {
    for d in 1..=5usize {
        let c = HPolytope::c_star(d).unwrap();
        let a = HPolytope::a_star(d);
        for k in 0..=4i64 {
            let kb = BigInt::from(k);
            let got = count(&c, k, DEFAULT_BUDGET).unwrap();
            assert_eq!((got.total, got.boundary), oracle_counts(d, k, true));
            let closed = pow(&kb + 1, d) + pow(kb.clone(), d);
            assert_eq!(BigInt::from(got.total), closed, "C*_{d} k={k}");

            let got = count(&a, k, DEFAULT_BUDGET).unwrap();
            assert_eq!((got.total, got.boundary), oracle_counts(d, k, false));
            let closed = pow(&kb + 1, d + 1) - pow(kb.clone(), d + 1);
            assert_eq!(BigInt::from(got.total), closed, "A*_{d} k={k}");
        }
    }
}

#[test]
fn boundary_shells_telescope() {
    for d in 1..=4 {
        for p in [HPolytope::a_star(d), HPolytope::c_star(d).unwrap()] {
            for k in 1..=4 {
                let shells: u64 = (1..=k)
                    .map(|j| count(&p, j, DEFAULT_BUDGET).unwrap().boundary)
                    .sum();
                assert_eq!(shells + 1, count(&p, k, DEFAULT_BUDGET).unwrap().total);
            }
        }
    }
}

#[test]
fn reduction_identity() {
    for d in 2..=5 {
        let c = HPolytope::c_star(d).unwrap();
        let a = HPolytope::a_star(d - 1);
        for k in 1..=4 {
            let lhs = count(&c, k, DEFAULT_BUDGET).unwrap().boundary;
            let rhs = count(&a, k, DEFAULT_BUDGET).unwrap().boundary
                + 2 * count(&a, k - 1, DEFAULT_BUDGET).unwrap().total;
            assert_eq!(lhs, rhs, "d={d} k={k}");
        }
    }
}

#[test]
fn tight_facet_iff_outside_previous_dilation() {
    for d in 1..=5 {
        for p in [HPolytope::a_star(d), HPolytope::c_star(d).unwrap()] {
            for k in 1..=4 {
                for x in enumerate_points(&p, k, DEFAULT_BUDGET).unwrap() {
                    let x = x.unwrap();
                    assert_eq!(
                        p.on_boundary(k, &x).unwrap(),
                        !p.contains(k - 1, &x).unwrap(),
                        "{} k={k} {x}",
                        p.name()
                    );
                }
            }
        }
    }
}

/// Inequalities of C*_d not implied by the rest, found by searching 2·P
/// with one facet dropped for a lattice point violating exactly that facet.
fn irredundant_facets(c: &HPolytope) -> Vec<bool> {
    let d = c.dim();
    c.inequalities()
        .iter()
        .enumerate()
        .map(|(idx, ineq)| {
            let relaxed = c.without(idx);
            LatticeBox::cube(d, 6).iter().any(|x| {
                relaxed.contains(2, &x).unwrap() && ineq.lhs(x.coords()).unwrap() > 2 * ineq.bound()
            })
        })
        .collect()
}

#[test]
fn c_star_facet_redundancy() {
    // Only ±x_d <= 1 and the |2(x_i+...+x_{d-1}) + x_d| <= 1 family are
    // facets. Any x_i + ... + x_j with j < d is half the difference of two
    // normals of that family (or of one of them and ±x_d when j = d-1), so
    // the first two families are implied once d >= 2.
    for d in 1..=4 {
        let c = HPolytope::c_star(d).unwrap();
        for (ineq, needed) in c.inequalities().iter().zip(irredundant_facets(&c)) {
            let n = ineq.normal();
            let is_facet = n[d - 1] != 0;
            assert_eq!(needed, is_facet, "C*_{d}: {ineq}");
        }
    }
}

#[test]
fn a_star_facets_are_irredundant() {
    for d in 1..=4 {
        let a = HPolytope::a_star(d);
        for (idx, ineq) in a.inequalities().iter().enumerate() {
            let relaxed = a.without(idx);
            let found = LatticeBox::cube(d, 6).iter().any(|x| {
                relaxed.contains(2, &x).unwrap() && ineq.lhs(x.coords()).unwrap() > 2 * ineq.bound()
            });
            assert!(found, "A*_{d}: {ineq} is implied by the others");
        }
    }
}

#[test]
fn interpolation_recovers_closed_forms() {
    for d in 1..=5 {
        for family in [Family::CStar, Family::AStar] {
            let p = family.polytope(d).unwrap();
            let fitted = interpolate_counts(&p, DEFAULT_BUDGET).unwrap();
            assert_eq!(
                fitted.poly(),
                closed_form_polynomial(family, d).unwrap().poly()
            );
            assert!(fitted.invariant_violations().is_empty());
        }
    }
    // (k+1)^d + k^d expanded by hand from binomials
    for d in 1..=5usize {
        let fitted = interpolate_counts(&HPolytope::c_star(d).unwrap(), DEFAULT_BUDGET).unwrap();
        for i in 0..=d {
            let binom = (0..i).fold(BigInt::from(1), |acc, t| acc * (d - t) / (t + 1));
            let expected = binom + if i == d { 1 } else { 0 };
            assert_eq!(fitted.poly().coeff(i), BigRational::from_integer(expected));
        }
    }
}

#[test]
fn closed_form_identities() {
    for d in 1..=10usize {
        for family in Family::ALL {
            assert!(
                canonical_symmetry_check(&closed_form_polynomial(family, d).unwrap()),
                "{family} d={d}"
            );
        }
        for k in -5..=8i64 {
            let kb = BigInt::from(k);
            let diff = eval_closed_form(Family::CStar, d, k).unwrap()
                - eval_closed_form(Family::CStar, d, k - 1).unwrap();
            assert_eq!(
                diff,
                BigRational::from_integer(pow(&kb + 1, d) - pow(&kb - 1, d))
            );
            let a = eval_closed_form(Family::AStar, d, k).unwrap();
            assert_eq!(
                a,
                BigRational::from_integer(pow(&kb + 1, d + 1) - pow(kb.clone(), d + 1))
            );
        }
    }
    assert_eq!(eval_closed_form(Family::CStar, 2, 1).unwrap(), rat(5));
}

#[test]
fn lexicographic_stream() {
    let c3 = HPolytope::c_star(3).unwrap();
    let pts: Vec<LatticePoint> = enumerate_points(&c3, 2, DEFAULT_BUDGET)
        .unwrap()
        .map(Result::unwrap)
        .collect();
    assert!(pts.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(pts.len(), 35);
    let (total, _) = count_region(&c3, 2, &LatticeBox::cube(3, 2)).unwrap();
    assert_eq!(total, 35);
}
