//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use ehrhart_lab::bijection::audit_cases;
use ehrhart_lab::ehrhart::{
    canonical_symmetry_check, closed_form_polynomial, interpolate_counts, reflexivity_check, Family,
};
use ehrhart_lab::spectra::{
    cl_check, closed_form_residual, closed_form_roots, interlace_check, numeric_roots,
};
use ehrhart_lab::{count, verify_bijection, BigInt, HPolytope, DEFAULT_BUDGET};
use num_traits::pow;

const AGREEMENT_TOL: f64 = 1e-6;
const CL_TOL: f64 = 1e-8;
const RESIDUAL_TOL: f64 = 1e-10;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1_c_star_counts() -> Outcome {
    for d in 1..=5usize {
        let c = HPolytope::c_star(d).map_err(|e| e.to_string())?;
        for k in 0..=4i64 {
            let got = count(&c, k, DEFAULT_BUDGET)
                .map_err(|e| e.to_string())?
                .total;
            let kb = BigInt::from(k);
            let want = pow(&kb + 1, d) + pow(kb, d);
            ensure(BigInt::from(got) == want, || {
                format!("C*_{d} k={k}: {got} != {want}")
            })?;
        }
    }
    Ok("|kC*_d| = (k+1)^d + k^d for d<=5, k<=4".into())
}

fn ac2_a_star_counts() -> Outcome {
    for d in 1..=5usize {
        let a = HPolytope::a_star(d);
        for k in 0..=4i64 {
            let got = count(&a, k, DEFAULT_BUDGET)
                .map_err(|e| e.to_string())?
                .total;
            let kb = BigInt::from(k);
            let want = pow(&kb + 1, d + 1) - pow(kb, d + 1);
            ensure(BigInt::from(got) == want, || {
                format!("A*_{d} k={k}: {got} != {want}")
            })?;
        }
    }
    Ok("|kA*_d| = (k+1)^(d+1) - k^(d+1) for d<=5, k<=4".into())
}

fn ac3_reduction() -> Outcome {
    for d in 2..=5usize {
        let c = HPolytope::c_star(d).map_err(|e| e.to_string())?;
        let a = HPolytope::a_star(d - 1);
        for k in 1..=4i64 {
            let run = |p: &HPolytope, k| count(p, k, DEFAULT_BUDGET).map_err(|e| e.to_string());
            let lhs = run(&c, k)?.boundary;
            let rhs = run(&a, k)?.boundary + 2 * run(&a, k - 1)?.total;
            ensure(lhs == rhs, || format!("d={d} k={k}: {lhs} != {rhs}"))?;
        }
    }
    Ok("|k∂C*_d| = |k∂A*_(d-1)| + 2|(k-1)A*_(d-1)| for 2<=d<=5, 1<=k<=4".into())
}

fn ac4_bijection() -> Outcome {
    let mut checked = 0;
    for d in 1..=5usize {
        for k in 1..=3i64 {
            let r = verify_bijection(d, k, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(r.ok(), || {
                format!("d={d} k={k}: {r} {:?}", r.failure_samples)
            })?;
            let a = audit_cases(d, k, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(a.ok(), || format!("d={d} k={k}: case audit {a:?}"))?;
            checked += r.size_a;
        }
    }
    Ok(format!(
        "g∘f = id, f∘g = id, |A| = |B|, well-defined and distinct cases for d<=5, k<=3 ({checked} points)"
    ))
}

fn ac5_interpolation() -> Outcome {
    for d in 1..=5usize {
        let c = HPolytope::c_star(d).map_err(|e| e.to_string())?;
        let fitted = interpolate_counts(&c, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let closed = closed_form_polynomial(Family::CStar, d).map_err(|e| e.to_string())?;
        ensure(fitted.poly() == closed.poly(), || {
            format!("d={d}: interpolated {fitted} vs {closed}")
        })?;
    }
    Ok("interpolated counts at k=0..d equal (k+1)^d + k^d coefficientwise, d<=5".into())
}

fn ac6_canonical_line() -> Outcome {
    for d in 1..=500usize {
        let roots = closed_form_roots(d).map_err(|e| e.to_string())?;
        ensure(roots.iter().all(|r| r.real_part == -0.5), || {
            format!("d={d}: Re != -1/2")
        })?;
    }
    let mut worst_agreement = 0.0f64;
    let mut worst_cl = 0.0f64;
    for d in 1..=20usize {
        let p = closed_form_polynomial(Family::CStar, d).map_err(|e| e.to_string())?;
        let numeric = numeric_roots(&p).map_err(|e| e.to_string())?;
        let closed = closed_form_roots(d).map_err(|e| e.to_string())?;
        ensure(numeric.len() == closed.len(), || {
            format!("d={d}: root count")
        })?;
        for (z, r) in numeric.iter().zip(&closed) {
            let gap = (z - r.value()).norm();
            worst_agreement = worst_agreement.max(gap);
            ensure(gap <= AGREEMENT_TOL, || {
                format!("d={d}: {z} vs {}", r.value())
            })?;
        }
        let v = cl_check(&numeric, CL_TOL).map_err(|e| e.to_string())?;
        worst_cl = worst_cl.max(v.max_deviation);
        ensure(v.holds, || {
            format!("d={d}: max |Re+1/2| = {:e}", v.max_deviation)
        })?;
    }
    Ok(format!(
        "closed-form Re = -1/2 exactly (d<=500); numeric vs closed max {worst_agreement:.2e} <= {AGREEMENT_TOL:e}; max |Re+1/2| {worst_cl:.2e} <= {CL_TOL:e} (d<=20)"
    ))
}

fn ac7_interlacing() -> Outcome {
    for d in 1..50usize {
        let r = interlace_check(d).map_err(|e| e.to_string())?;
        ensure(r.non_strict && r.strict && r.angle_chain, || {
            format!(
                "d={d}: non-strict {} strict {} angles {}",
                r.non_strict, r.strict, r.angle_chain
            )
        })?;
    }
    Ok("strict and non-strict interlacing, exact angle chain, all pairs up to d=50".into())
}

fn ac8_reflexivity_symmetry() -> Outcome {
    for d in 1..=4usize {
        for p in [
            HPolytope::a_star(d),
            HPolytope::c_star(d).map_err(|e| e.to_string())?,
        ] {
            let v = reflexivity_check(&p, 4, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(v.holds, || format!("{}: {:?}", p.name(), v.counterexample))?;
        }
    }
    for family in Family::ALL {
        for d in 1..=10usize {
            let p = closed_form_polynomial(family, d).map_err(|e| e.to_string())?;
            ensure(canonical_symmetry_check(&p), || format!("{family} d={d}"))?;
        }
    }
    Ok("no lattice points strictly between (k-1)P and k∂P (A*, C*, d<=4, k<=4); p(k) = (-1)^d p(-k-1) for A, C, A*, C*, d<=10".into())
}

fn ac9_residual() -> Outcome {
    let mut worst = 0.0f64;
    for d in 1..=50usize {
        for r in closed_form_roots(d).map_err(|e| e.to_string())? {
            let res = closed_form_residual(r.value(), d);
            worst = worst.max(res);
            ensure(res <= RESIDUAL_TOL, || {
                format!("d={d} j={}: residual {res:e}", r.k_index)
            })?;
        }
    }
    Ok(format!("relative residual of (z+1)^d + z^d at closed-form roots max {worst:.2e} <= {RESIDUAL_TOL:e}, d<=50"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("AC1 C* counts", ac1_c_star_counts),
        ("AC2 A* closed form", ac2_a_star_counts),
        ("AC3 reduction identity", ac3_reduction),
        ("AC4 bijection round trips", ac4_bijection),
        ("AC5 interpolation", ac5_interpolation),
        ("AC6 canonical line", ac6_canonical_line),
        ("AC7 interlacing", ac7_interlacing),
        ("AC8 reflexivity and symmetry", ac8_reflexivity_symmetry),
        ("AC9 closed-form residual", ac9_residual),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("[PASS] {name}: {msg} ({secs:.2}s)"),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {name}: {msg} ({secs:.2}s)");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
