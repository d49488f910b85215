use ehrhart_lab::ehrhart::interpolate;
use ehrhart_lab::enumerate::{count, count_region, LatticeBox};
use ehrhart_lab::poly::rat;
use ehrhart_lab::{BigInt, HPolytope, LatticePoint, Polynomial, DEFAULT_BUDGET};
use proptest::prelude::*;

fn polytope(c_star: bool, d: usize) -> HPolytope {
    if c_star {
        HPolytope::c_star(d).unwrap()
    } else {
        HPolytope::a_star(d)
    }
}

proptest! {
    #[test]
    fn membership_is_monotone_in_scale(
        c_star in any::<bool>(),
        coords in prop::collection::vec(-6i64..=6, 1..=6),
        k in 0i64..6,
    ) {
        let p = polytope(c_star, coords.len());
        let x = LatticePoint::new(coords);
        if p.contains(k, &x).unwrap() {
            prop_assert!(p.contains(k + 1, &x).unwrap());
        }
    }

    #[test]
    fn split_boxes_count_the_same(
        c_star in any::<bool>(),
        d in 1usize..=4,
        k in 1i64..=3,
        axis in 0usize..4,
        cut in -3i64..=3,
    ) {
        let p = polytope(c_star, d);
        let axis = axis % d;
        let whole = count(&p, k, DEFAULT_BUDGET).unwrap();
        let mut lo = vec![(-k, k); d];
        let mut hi = lo.clone();
        lo[axis].1 = cut.min(k);
        hi[axis].0 = cut.min(k) + 1;
        let a = count_region(&p, k, &LatticeBox::new(lo)).unwrap();
        let b = count_region(&p, k, &LatticeBox::new(hi)).unwrap();
        prop_assert_eq!(a.0 + b.0, whole.total);
        prop_assert_eq!(a.1 + b.1, whole.boundary);
    }

    #[test]
    fn interpolation_reproduces_polynomials(
        coeffs in prop::collection::vec(-20i64..=20, 1..=6),
        offset in -10i64..10,
        stride in 1i64..4,
    ) {
        let p = Polynomial::from_integers(&coeffs);
        let degree = coeffs.len() - 1;
        let nodes: Vec<(i64, BigInt)> = (0..=degree as i64)
            .map(|i| {
                let k = offset + stride * i;
                (k, p.eval_int(k).to_integer())
            })
            .collect();
        let fitted = interpolate(&nodes, degree).unwrap();
        prop_assert_eq!(fitted.poly(), &p);
    }

    #[test]
    fn reflection_is_an_involution(coeffs in prop::collection::vec(-9i64..=9, 0..=7)) {
        let p = Polynomial::from_integers(&coeffs);
        prop_assert_eq!(p.reflect().reflect(), p.clone());
        // p(-k-1) evaluated at k equals p evaluated at -k-1
        for k in -3..=3 {
            prop_assert_eq!(p.reflect().eval_int(k), p.eval(&rat(-k - 1)));
        }
    }
}
