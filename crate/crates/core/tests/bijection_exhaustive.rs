use std::collections::BTreeSet;

use ehrhart_lab::bijection::{audit_cases, trace_point, CopyTag};
use ehrhart_lab::enumerate::{enumerate_boundary, enumerate_points};
use ehrhart_lab::{
    lift_g, project_f, verify_bijection, HPolytope, TaggedBoundaryElement, DEFAULT_BUDGET,
};

#[test]
fn round_trips_up_to_dimension_five() {
    for d in 1..=5 {
        for k in 1..=3 {
            let r = verify_bijection(d, k, DEFAULT_BUDGET).unwrap();
            assert!(r.ok(), "d={d} k={k}: {:?}", r.failure_samples);
            let expected = (k + 1).pow(d as u32) - (k - 1).pow(d as u32);
            assert_eq!(r.size_a as i64, expected, "d={d} k={k}");
        }
    }
}

#[test]
fn case_analysis_is_consistent() {
    for d in 1..=5 {
        for k in 1..=3 {
            let a = audit_cases(d, k, DEFAULT_BUDGET).unwrap();
            assert!(a.ok(), "d={d} k={k}: {a:?}");
        }
    }
}

#[test]
fn images_partition_the_multiset() {
    // f is injective and its image is exactly B.
    for d in 2..=4 {
        for k in 1..=3 {
            let c = HPolytope::c_star(d).unwrap();
            let a = HPolytope::a_star(d - 1);
            let image: BTreeSet<TaggedBoundaryElement> = enumerate_boundary(&c, k, DEFAULT_BUDGET)
                .unwrap()
                .map(|x| project_f(&x.unwrap(), d, k).unwrap().0)
                .collect();
            let mut b = BTreeSet::new();
            for x in enumerate_boundary(&a, k, DEFAULT_BUDGET).unwrap() {
                b.insert(TaggedBoundaryElement::new(x.unwrap(), CopyTag::Shell));
            }
            for x in enumerate_points(&a, k - 1, DEFAULT_BUDGET).unwrap() {
                let x = x.unwrap();
                b.insert(TaggedBoundaryElement::new(x.clone(), CopyTag::Copy1));
                b.insert(TaggedBoundaryElement::new(x, CopyTag::Copy2));
            }
            assert_eq!(image, b, "d={d} k={k}");
        }
    }
}

#[test]
fn every_lift_lands_on_the_boundary() {
    let d = 4;
    let k = 2;
    let c = HPolytope::c_star(d).unwrap();
    let a = HPolytope::a_star(d - 1);
    for x in enumerate_points(&a, k, DEFAULT_BUDGET).unwrap() {
        let x = x.unwrap();
        let tags: &[CopyTag] = if a.on_boundary(k, &x).unwrap() {
            &[CopyTag::Shell]
        } else {
            &[CopyTag::Copy1, CopyTag::Copy2]
        };
        for &tag in tags {
            if tag != CopyTag::Shell && !a.contains(k - 1, &x).unwrap() {
                continue;
            }
            let (y, _) = lift_g(&TaggedBoundaryElement::new(x.clone(), tag), d, k).unwrap();
            assert!(c.on_boundary(k, &y).unwrap());
        }
    }
}

#[test]
fn traces_round_trip() {
    let c = HPolytope::c_star(3).unwrap();
    for x in enumerate_boundary(&c, 2, DEFAULT_BUDGET).unwrap() {
        assert!(trace_point(&x.unwrap(), 3, 2).unwrap().round_trips());
    }
}
