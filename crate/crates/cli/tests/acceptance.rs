//! Acceptance criteria, one timed pass/fail line each. Expected values come from oracles
//! written out here independently of the library's constructions.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use mha_cli::pipeline::{self, Loaded};
use mha_cli::report::digest;
use mha_core::algebras::{window_basis, GradedAlgebra, GradedElement, GradedMultiplier, Key, Side};
use mha_core::cograded::{
    check_cograded, check_crossing, deform, deformed_right_integral, mirror_check, Action,
};
use mha_core::double::{
    build_double, build_module_actions, check_double_axioms, check_pairing, classical_double,
    double_crossing, double_right_integral, induced_grading_check, reduced_dual, Pairing,
};
use mha_core::groups::{Elem, Group, Window};
use mha_core::hopf::{
    antipode_of, check_hopf, check_positive_integral, check_star, integral_residual,
    make_constant_family, make_group_algebra, make_kg, make_ordinary_group_algebra,
    modular_automorphism, modular_element, solve_left_integral, solve_right_integral,
    GradedFunctional, MhaStructure, MultiplierHopf,
};
use mha_core::report::CertificateReport;
use mha_core::Q;

type Outcome = Result<(), String>;

fn ensure(ok: bool, what: impl Into<String>) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn passed(r: &CertificateReport, what: &str) -> Outcome {
    match r.failures().next() {
        None => Ok(()),
        Some(e) => Err(format!(
            "{what}: {} failed: {}",
            e.name,
            e.witness.clone().unwrap_or_default()
        )),
    }
}

fn s3() -> Group {
    Group::symmetric3()
}

fn full(g: &Group) -> Window {
    Window::full(g).unwrap()
}

fn constant_family(g: &Group) -> MhaStructure {
    make_constant_family(&make_ordinary_group_algebra(&Group::cyclic(2)).unwrap(), g).unwrap()
}

/// Whether `f` is a nonzero multiple of `expected` on `keys`.
fn proportional(f: &GradedFunctional, expected: impl Fn(Key) -> Q, keys: &[Key]) -> bool {
    let Some(&pivot) = keys.iter().find(|k| !expected(**k).is_zero()) else {
        return false;
    };
    let scale = &f.at(pivot) / &expected(pivot);
    !scale.is_zero() && keys.iter().all(|&k| f.at(k) == &scale * &expected(k))
}

fn kg_s3_suite() -> Outcome {
    let g = s3();
    let h = make_kg(&g);
    let r = check_hopf(h.as_ref(), &full(&g));
    passed(&r, "K(S3)")?;
    for note in [
        "T1: 36 of 36 blocks bijective",
        "T2: 36 of 36 blocks bijective",
    ] {
        ensure(
            r.notes.iter().any(|n| n == note),
            format!("missing note {note:?}"),
        )?;
    }
    ensure(r.passed_matching("coassociativ"), "coassociativity entries")?;
    ensure(
        r.passed_matching("counit") && r.passed_matching("antipode"),
        "counit and antipode entries",
    )?;
    ensure(
        r.passed_matching("comultiplication respects star"),
        "star compatibility entry",
    )
}

fn kg_s3_integrals() -> Outcome {
    let g = s3();
    let h = make_kg(&g);
    let w = full(&g);
    let sol = solve_left_integral(h.as_ref(), &w);
    ensure(
        sol.dimension == 1,
        format!("left integral space has dimension {}", sol.dimension),
    )?;
    let phi = sol.functional().cloned().ok_or("no unique left integral")?;
    let keys = window_basis(h.as_ref(), &w);
    ensure(
        proportional(&phi, |_| Q::one(), &keys),
        "φ(δ_p) is not constant",
    )?;
    let delta = modular_element(h.as_ref(), &phi, &w).map_err(|e| e.to_string())?;
    ensure(
        delta.equals_on(&GradedMultiplier::unit(h.clone()), &w),
        "δ is not the unit",
    )?;
    let sigma = modular_automorphism(h.as_ref(), &phi, &w).map_err(|e| e.to_string())?;
    ensure(sigma.is_identity(), "σ is not the identity")?;
    let pos = check_positive_integral(h.as_ref(), &phi, &w).map_err(|e| e.to_string())?;
    passed(&pos, "positivity")
}

fn group_algebra_s3() -> Outcome {
    let g = s3();
    let h = make_group_algebra(&g);
    let w = full(&g);
    passed(&check_hopf(h.as_ref(), &w), "C[S3]")?;
    let sol = solve_left_integral(h.as_ref(), &w);
    ensure(
        sol.dimension == 1,
        format!("left integral space has dimension {}", sol.dimension),
    )?;
    let phi = sol.functional().cloned().ok_or("no unique left integral")?;
    let e = g.identity();
    let delta_e = |k: Key| if k.0 == e { Q::one() } else { Q::zero() };
    ensure(
        proportional(&phi, delta_e, &window_basis(h.as_ref(), &w)),
        "integral is not u_g ↦ [g = e]",
    )
}

fn pairing_checks() -> Outcome {
    let g = s3();
    let p = Pairing::group_functions(&g).map_err(|e| e.to_string())?;
    let w = full(&g);
    let r = check_pairing(&p, &w);
    passed(&r, "pairing")?;
    for name in [
        "pairing non-degenerate on each component",
        "antipodes are adjoint",
        "*-pairing law",
    ] {
        ensure(
            r.entry(name).is_some_and(|e| e.passed),
            format!("missing entry {name:?}"),
        )?;
    }
    passed(&induced_grading_check(&p, &w), "induced grading")?;
    passed(
        &build_module_actions(&p, &w)
            .map_err(|e| e.to_string())?
            .report,
        "module actions",
    )
}

/// Index of `(g, p)` in the basis of the double ordered by `g`, then `p`.
fn position(elems: &[Elem], g: Elem, p: Elem) -> usize {
    let at = |x: Elem| elems.iter().position(|&y| y == x).unwrap();
    at(g) * elems.len() + at(p)
}

fn trivial_double() -> Outcome {
    let g = s3();
    let p = Pairing::group_functions(&g).map_err(|e| e.to_string())?;
    let d = build_double(&p, &Action::trivial()).map_err(|e| e.to_string())?;
    let classical = classical_double(&p).map_err(|e| e.to_string())?;
    let (t, c) = (d.table(), &classical);
    ensure(t.keys() == c.keys(), "bases differ")?;
    for &x in &t.keys() {
        for &y in &t.keys() {
            ensure(
                t.mul_basis(x, y) == c.mul_basis(x, y),
                format!("product {x:?}·{y:?} differs"),
            )?;
        }
        ensure(
            t.coproduct.get(&x) == c.coproduct.get(&x),
            format!("Δ{x:?} differs"),
        )?;
        ensure(
            t.counit(x) == c.counit(x) && t.antipode(x) == c.antipode(x),
            format!("ε or S at {x:?} differs"),
        )?;
        ensure(
            t.star(&GradedElement::basis(x)) == c.star(&GradedElement::basis(x)),
            format!("star at {x:?} differs"),
        )?;
    }
    let elems = g.elements().unwrap();
    let z = Group::trivial().identity();
    let mut products = 0;
    for &a in &elems {
        for &b in &elems {
            for &h in &elems {
                for &q in &elems {
                    let x = (z, position(&elems, a, b));
                    let y = (z, position(&elems, h, q));
                    let expected = if g.mul(g.mul(g.inv(h), b), h) == q {
                        GradedElement::basis((z, position(&elems, g.mul(a, h), q)))
                    } else {
                        GradedElement::new()
                    };
                    ensure(
                        t.mul_basis(x, y) == expected,
                        format!("closed form fails at {x:?}·{y:?}"),
                    )?;
                    products += 1;
                }
            }
        }
    }
    ensure(products == 36 * 36, "not all basis products compared")
}

fn adjoint_double() -> Outcome {
    let g = s3();
    let p = Pairing::group_functions(&g).map_err(|e| e.to_string())?;
    let d = build_double(&p, &Action::adjoint(&g)).map_err(|e| e.to_string())?;
    ensure(d.is_crossing(), "double is not graded")?;
    let w = d.window();
    let r = check_double_axioms(&d, &w);
    passed(&r, "double")?;
    ensure(
        r.passed_matching("Δ̄(R(b⊗a))"),
        "compatibility entry missing",
    )?;
    ensure(
        r.passed_matching("T1 bijective") && r.passed_matching("T2 bijective"),
        "T1/T2 entries missing",
    )?;
    for x in d.table().keys() {
        let (_, b) = d.factors(x);
        ensure(b.0 == g.inv(x.0), format!("{x:?} is not in A ⋈ B_p⁻¹"))?;
    }
    let crossing = double_crossing(&d).map_err(|e| e.to_string())?;
    passed(
        &check_crossing(d.table(), &crossing, &w),
        "crossing on the double",
    )
}

fn deformation_suite() -> Outcome {
    let g = s3();
    let w = full(&g);
    let a = Action::adjoint(&g);
    for b in [make_kg(&g), constant_family(&g)] {
        let label = b.label();
        let d = deform(b.clone(), &a, &w).map_err(|e| e.to_string())?;
        let (bh, dh) = (b.as_ref(), d.as_ref());
        passed(&check_hopf(dh, &w), &label)?;
        passed(&check_cograded(dh, &w), &label)?;
        let keys = window_basis(bh, &w);
        for &k in &keys {
            ensure(
                dh.counit(k) == bh.counit(k),
                format!("{label}: ε̃ ≠ ε at {k:?}"),
            )?;
            let expected = a.apply(g.inv(k.0), &antipode_of(bh, &GradedElement::basis(k)));
            ensure(
                dh.antipode(k) == expected,
                format!("{label}: S̃ ≠ π_p⁻¹∘S at {k:?}"),
            )?;
            ensure(
                dh.star(&GradedElement::basis(k)) == bh.star(&GradedElement::basis(k)),
                format!("{label}: star changed"),
            )?;
        }
        let star = check_star(dh, &w).map_err(|e| e.to_string())?;
        passed(&star, &label)?;
        let phi = solve_left_integral(bh, &w)
            .functional()
            .cloned()
            .ok_or("no left integral")?;
        ensure(
            integral_residual(dh, &phi, Side::Left, &w).is_empty(),
            format!("{label}: φ not left invariant on B̃"),
        )?;
        let psi = solve_right_integral(bh, &w)
            .functional()
            .cloned()
            .ok_or("no right integral")?;
        let psi_t = deformed_right_integral(bh, &a, &psi);
        ensure(
            integral_residual(dh, &psi_t, Side::Right, &w).is_empty(),
            format!("{label}: ψ̃ not right invariant"),
        )?;
    }
    Ok(())
}

fn mirror() -> Outcome {
    let g = s3();
    let w = full(&g);
    let a = Action::adjoint(&g);
    for b in [make_kg(&g), constant_family(&g)] {
        let r = mirror_check(&b, &a, &w).map_err(|e| e.to_string())?;
        passed(&r, &b.label())?;
        ensure(
            r.passed_matching("restores the original"),
            "involution entry missing",
        )?;
        ensure(r.passed_matching("regraded"), "regrading entries missing")?;
    }
    Ok(())
}

fn integers_window() -> Outcome {
    let g = Group::integers();
    let w = Window::range(&g, -5, 5).map_err(|e| e.to_string())?;
    let h = make_kg(&g);
    let mut r = check_hopf(h.as_ref(), &w);
    r.absorb("", check_cograded(h.as_ref(), &w));
    passed(&r, "K(Z)")?;
    ensure(
        r.window.iter().any(|l| l.contains("-5") && l.contains('5')),
        format!("window not recorded: {:?}", r.window),
    )?;
    let sol = solve_left_integral(h.as_ref(), &w);
    let phi = sol
        .functional()
        .cloned()
        .ok_or("no left integral on the window")?;
    ensure(
        integral_residual(h.as_ref(), &phi, Side::Left, &w).is_empty(),
        "left integral residual",
    )?;
    let delta = modular_element(h.as_ref(), &phi, &w).map_err(|e| e.to_string())?;
    ensure(
        delta.equals_on(&GradedMultiplier::unit(h.clone()), &w),
        "δ is not the unit on the window",
    )?;
    let verified = pipeline::verify(
        &pipeline::load("builtin:kg-integers").map_err(|e| e.to_string())?,
        Some("-5..5"),
    )
    .map_err(|e| e.to_string())?;
    passed(&verified, "verify builtin:kg-integers")
}

fn double_integrals() -> Outcome {
    let g = s3();
    let p = Pairing::group_functions(&g).map_err(|e| e.to_string())?;
    let phi = solve_left_integral(p.a_side().as_ref(), p.window())
        .functional()
        .cloned()
        .ok_or("φ_A")?;
    let psi = solve_right_integral(p.b_side().as_ref(), p.window())
        .functional()
        .cloned()
        .ok_or("ψ_B")?;
    for a in [Action::trivial(), Action::adjoint(&g)] {
        let d = build_double(&p, &a).map_err(|e| e.to_string())?;
        let integral = double_right_integral(&d, &phi, &psi).map_err(|e| e.to_string())?;
        passed(&integral.report, &a.name)?;
        ensure(
            integral
                .report
                .passed_matching("solved right-integral space"),
            "membership entry missing",
        )?;
        ensure(
            integral.report.passed_matching("δ_B⁻¹"),
            "auxiliary identity entry missing",
        )?;
        ensure(
            integral.scalar == Some(Q::one()),
            format!("scalar {:?} ≠ 1", integral.scalar),
        )?;
    }
    let z2 = Group::cyclic(2);
    let cases = [
        Pairing::group_functions(&z2).map_err(|e| e.to_string())?,
        reduced_dual(&constant_family(&z2))
            .map_err(|e| e.to_string())?
            .pairing,
    ];
    for p in cases {
        let d = build_double(&p, &Action::trivial()).map_err(|e| e.to_string())?;
        let phi = solve_left_integral(p.a_side().as_ref(), p.window())
            .functional()
            .cloned()
            .ok_or("φ_A")?;
        let psi = solve_right_integral(p.b_side().as_ref(), p.window())
            .functional()
            .cloned()
            .ok_or("ψ_B")?;
        let integral = double_right_integral(&d, &phi, &psi).map_err(|e| e.to_string())?;
        passed(&integral.report, "D(Z2)")?;
        ensure(
            integral.report.passed_matching("positive"),
            format!(
                "no positivity entry on the {}-dimensional double",
                d.table().keys().len()
            ),
        )?;
    }
    Ok(())
}

fn reduced_dual_double() -> Outcome {
    let g = s3();
    let rd = reduced_dual(&constant_family(&g)).map_err(|e| e.to_string())?;
    let w = full(&g);
    passed(&check_hopf(rd.dual.as_ref(), &w), "B*")?;
    passed(&check_pairing(&rd.pairing, &w), "evaluation pairing")?;
    passed(
        &induced_grading_check(&rd.pairing, &w),
        "evaluation pairing grading",
    )?;
    let d = build_double(&rd.pairing, &Action::adjoint(&g)).map_err(|e| e.to_string())?;
    ensure(d.is_crossing(), "double is not graded")?;
    let dw = d.window();
    passed(&check_double_axioms(&d, &dw), "double")?;
    let crossing = double_crossing(&d).map_err(|e| e.to_string())?;
    passed(
        &check_crossing(d.table(), &crossing, &dw),
        "crossing on the double",
    )
}

fn cli_round_trip() -> Outcome {
    let g = s3();
    let p = Pairing::group_functions(&g).map_err(|e| e.to_string())?;
    let d = build_double(&p, &Action::adjoint(&g)).map_err(|e| e.to_string())?;
    let in_memory = pipeline::verify(&Loaded::from_double(&d).map_err(|e| e.to_string())?, None)
        .map_err(|e| e.to_string())?;
    passed(&in_memory, "in-memory verification")?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let exported = dir.path().join("double.json");
    let mha = env!("CARGO_BIN_EXE_mha");
    let status = Command::new(mha)
        .args([
            "double",
            "--pair",
            "pairing-gacs3",
            "--action",
            "adjoint",
            "--out",
        ])
        .arg(&exported)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(status.status.success(), "mha double failed")?;
    let out = Command::new(mha)
        .args(["verify", "--format", "structured"])
        .arg(&exported)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), "mha verify failed")?;
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let reloaded = report["digest"].as_str().ok_or("no digest in report")?;
    ensure(
        reloaded == digest(&in_memory),
        format!("digest {reloaded} ≠ {}", digest(&in_memory)),
    )?;

    let again = dir.path().join("again.json");
    let status = Command::new(mha)
        .arg("export")
        .arg(&exported)
        .arg("--out")
        .arg(&again)
        .status()
        .map_err(|e| e.to_string())?;
    ensure(status.success(), "mha export failed")?;
    let (a, b) = (
        std::fs::read(&exported).map_err(|e| e.to_string())?,
        std::fs::read(&again).map_err(|e| e.to_string())?,
    );
    ensure(a == b, "re-export differs from the export")
}

struct Criterion {
    number: usize,
    title: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            number: 1,
            title: "K(S3) multiplier Hopf *-algebra suite",
            limit: secs(10),
            run: kg_s3_suite,
        },
        Criterion {
            number: 2,
            title: "integrals, modular data and positivity on K(S3)",
            limit: secs(5),
            run: kg_s3_integrals,
        },
        Criterion {
            number: 3,
            title: "C[S3] suite and its integral",
            limit: secs(5),
            run: group_algebra_s3,
        },
        Criterion {
            number: 4,
            title: "pairing of C[S3] with K(S3)",
            limit: secs(10),
            run: pairing_checks,
        },
        Criterion {
            number: 5,
            title: "trivial twist gives the classical double",
            limit: secs(30),
            run: trivial_double,
        },
        Criterion {
            number: 6,
            title: "adjoint-crossing double",
            limit: secs(60),
            run: adjoint_double,
        },
        Criterion {
            number: 7,
            title: "deformation suite",
            limit: secs(30),
            run: deformation_suite,
        },
        Criterion {
            number: 8,
            title: "mirror involution and regrading",
            limit: secs(10),
            run: mirror,
        },
        Criterion {
            number: 9,
            title: "K(Z) on the window -5..5",
            limit: secs(10),
            run: integers_window,
        },
        Criterion {
            number: 10,
            title: "right integrals on doubles",
            limit: secs(30),
            run: double_integrals,
        },
        Criterion {
            number: 11,
            title: "double of a reduced dual with the adjoint crossing",
            limit: secs(60),
            run: reduced_dual_double,
        },
        Criterion {
            number: 12,
            title: "CLI export, reload and re-verify",
            limit: secs(30),
            run: cli_round_trip,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(
                elapsed <= c.limit,
                format!(
                    "took {:.1}s, limit {}s",
                    elapsed.as_secs_f64(),
                    c.limit.as_secs()
                ),
            )
        });
        match outcome {
            Ok(()) => println!(
                "criterion {:>2}: PASS  {:>6.2}s  {}",
                c.number,
                elapsed.as_secs_f64(),
                c.title
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {:>2}: FAIL  {:>6.2}s  {}: {why}",
                    c.number,
                    elapsed.as_secs_f64(),
                    c.title
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
