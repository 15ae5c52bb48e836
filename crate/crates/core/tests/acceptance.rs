//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits nonzero if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lazval::arith::{int, rat, Point, Polynomial, Rational};
use lazval::demos::run_demo;
use lazval::invariance::arcs::circle_point;
use lazval::invariance::{
    check_order_invariant, check_section_valuation, check_valuation_invariant, InvarianceVerdict,
};
use lazval::lazard_eval::{lazard_evaluate, prefix_consistency_check};
use lazval::parser::{parse_polynomial, Variables};
use lazval::projection::{
    discriminant, lazard_projection, resultant, sylvester_resultant, trailing_coefficient,
};
use lazval::suites::run_suite;
use lazval::valuation::{lazard_valuation, lazard_valuation_by_derivatives, order_at, OrderValue};

type Outcome = Result<String, String>;

fn poly(text: &str, vars: &str) -> Polynomial {
    parse_polynomial(text, &Variables::parse_list(vars).unwrap()).unwrap()
}

fn pt(coords: &[Rational]) -> Point {
    Point::new(coords.to_vec())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Valuation by both routes; they must agree.
fn val(f: &Polynomial, a: &Point) -> Result<Vec<u32>, String> {
    let v = lazard_valuation(f, a).map_err(|e| e.to_string())?;
    let w = lazard_valuation_by_derivatives(f, a).map_err(|e| e.to_string())?;
    ensure(v == w, || format!("routes disagree at {a}: {v} vs {w}"))?;
    Ok(v.components().to_vec())
}

fn example_values() -> Outcome {
    let f = poly("x1^2 - x1^3", "x1");
    let at = |c: i64| pt(&[int(c)]);
    ensure(val(&f, &at(0))? == [2], || "v_0(x1^2 - x1^3) != (2)".into())?;
    ensure(val(&f, &at(1))? == [1], || "v_1(x1^2 - x1^3) != (1)".into())?;
    let g = poly("x1*x2", "x1,x2");
    for (a, expected) in [([0, 0], [1, 1]), ([1, 0], [0, 1]), ([0, 1], [1, 0])] {
        let v = val(&g, &pt(&[int(a[0]), int(a[1])]))?;
        ensure(v == expected, || format!("v of x1*x2 at {a:?} is {v:?}"))?;
    }
    Ok("5 values exact".into())
}

fn circle() -> Outcome {
    let f = poly("x^2 + y^2 - 1", "x,y");
    let mut points: Vec<Point> = [
        rat(1, 3),
        rat(1, 2),
        rat(2, 3),
        int(1),
        int(2),
        int(-1),
        rat(-1, 2),
        int(3),
        rat(-3, 2),
        int(0),
    ]
    .iter()
    .map(circle_point)
    .collect();
    points.push(pt(&[int(-1), int(0)]));
    for p in &points {
        ensure(f.evaluate(p).unwrap() == int(0), || {
            format!("{p} is off the circle")
        })?;
        let ord = order_at(&f, p).map_err(|e| e.to_string())?;
        ensure(ord == OrderValue(1), || format!("ord at {p} is {ord}"))?;
        let v = val(&f, p)?;
        let special = p.coords()[1] == int(0);
        let expected = if special { [0, 2] } else { [0, 1] };
        ensure(v == expected, || format!("v at {p} is {v:?}"))?;
    }
    let specials = points.iter().filter(|p| p.coords()[1] == int(0)).count();
    ensure(specials == 2, || {
        "both (1,0) and (-1,0) must be sampled".into()
    })?;
    Ok(format!("{} circle points", points.len()))
}

fn z_axis() -> Outcome {
    let f = poly("x*z - y^2", "x,y,z");
    let samples: Vec<Point> = (-2..=2).map(|c| pt(&[int(0), int(0), int(c)])).collect();
    for p in &samples {
        ensure(val(&f, p)? == [0, 2, 0], || format!("v at {p}"))?;
    }
    let inv = check_valuation_invariant(&f, &samples).map_err(|e| e.to_string())?;
    ensure(inv.is_invariant(), || "valuation not constant".into())?;
    let ord = check_order_invariant(&f, &samples).map_err(|e| e.to_string())?;
    let expected: Vec<OrderValue> = [1, 1, 2, 1, 1].into_iter().map(OrderValue).collect();
    ensure(ord.values == expected, || {
        format!("orders {:?}", ord.values)
    })?;
    ensure(
        matches!(ord.verdict, InvarianceVerdict::NonConstant { .. }),
        || "order reported constant".into(),
    )?;
    Ok("valuation (0,2,0) constant, order 1,1,2,1,1".into())
}

fn lazard_eval_golden() -> Outcome {
    let f = poly("x*z - y^2", "x,y,z");
    let alpha = pt(&[int(0), int(0)]);
    let e = lazard_evaluate(&f, &alpha).map_err(|e| e.to_string())?;
    ensure(e.residual == Polynomial::constant(3, int(-1)), || {
        format!("residual {}", e.residual)
    })?;
    ensure(e.prefix_valuation == [0, 2], || {
        format!("prefix {:?}", e.prefix_valuation)
    })?;
    ensure(e.nullified(), || "not nullified".into())?;
    for a_n in [0, 1, 7] {
        let r = prefix_consistency_check(&f, &alpha, &int(a_n)).map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("prefix check at a_n = {a_n}: {r:?}"))?;
    }
    Ok("residual -1, prefix (0,2), nullified".into())
}

fn projection_golden() -> Outcome {
    let xy = "x,y";
    let f = poly("x^2 + y^2 - 1", xy);
    let set = lazard_projection(std::slice::from_ref(&f), 1).map_err(|e| e.to_string())?;
    ensure(set.polynomials() == [poly("x^2 - 1", xy)], || {
        format!("P_L(circle) = {:?}", set.polynomials())
    })?;

    let fy = f.partial_derivative(1).unwrap();
    ensure(fy == poly("2*y", xy), || format!("f_y = {fy}"))?;
    for r in [
        resultant(&f, &fy, 1),
        sylvester_resultant(&f, &fy, 1),
        discriminant(&f, 1),
    ] {
        let r = r.map_err(|e| e.to_string())?;
        ensure(r == poly("4*x^2 - 4", xy), || format!("res_y(f, 2y) = {r}"))?;
    }
    let trcf = trailing_coefficient(&f, 1).map_err(|e| e.to_string())?;
    ensure(trcf == poly("x^2 - 1", xy), || format!("trcf = {trcf}"))?;

    let lines = [poly("y - x", xy), poly("y + x", xy)];
    let set = lazard_projection(&lines, 1).map_err(|e| e.to_string())?;
    ensure(set.polynomials() == [poly("x", xy)], || {
        format!("P_L(lines) = {:?}", set.polynomials())
    })?;
    for r in [
        resultant(&lines[0], &lines[1], 1),
        sylvester_resultant(&lines[0], &lines[1], 1),
    ] {
        let r = r.map_err(|e| e.to_string())?;
        ensure(r == poly("2*x", xy), || format!("res_y(y-x, y+x) = {r}"))?;
    }
    Ok("{x^2 - 1}, {x}; res_y(f, 2y) = 4x^2 - 4 by PRS and Sylvester".into())
}

fn suite(name: &str, count: usize) -> Outcome {
    let r = run_suite(name, 1, count).map_err(|e| e.to_string())?;
    let summary = format!(
        "{} trials, {} passed, {} skipped, {} failed",
        r.trials, r.passed, r.skipped, r.failed
    );
    ensure(r.failed == 0, || {
        let first = r
            .witnesses
            .first()
            .map(|w| format!("; trial {}: {}", w.trial, w.detail))
            .unwrap_or_default();
        format!("{summary}{first}")
    })?;
    ensure(r.passed > 0, || {
        format!("{summary}; every trial was vacuous")
    })?;
    Ok(summary)
}

fn prop31() -> Outcome {
    let xy = "x,y";
    let goldens = [
        ("x^2 + y^2 - 1", int(0), int(1), 1, [0, 1]),
        ("(y - x)^2", int(1), int(1), 2, [0, 2]),
        ("x^2 + y^2 - 1", int(1), int(0), 2, [0, 2]),
        ("(y - x)^2*(y^2 + 1)", rat(1, 2), rat(1, 2), 2, [0, 2]),
    ];
    for (f, x, y, m, expected) in goldens {
        let r =
            check_section_valuation(&poly(f, xy), &pt(&[x]), &y, m).map_err(|e| e.to_string())?;
        ensure(r.passed && r.valuation.components() == expected, || {
            format!("{f}: {r:?}")
        })?;
    }
    let s = suite("prop31", 100)?;
    Ok(format!("4 goldens; {s}"))
}

fn theorem36() -> Outcome {
    let r = run_demo("theorem36").map_err(|e| e.to_string())?;
    let failed: Vec<&str> = r
        .assertions
        .iter()
        .filter(|a| !a.passed)
        .map(|a| a.claim.as_str())
        .collect();
    ensure(failed.is_empty(), || {
        format!("failed: {}", failed.join("; "))
    })?;
    ensure(!r.stacks.is_empty(), || "no stack reports".into())?;
    Ok(format!(
        "{} assertions, {} stack reports",
        r.assertions.len(),
        r.stacks.len()
    ))
}

fn probes() -> Outcome {
    let mut parts = Vec::new();
    for name in ["product-invariance", "prop27", "lemma26"] {
        parts.push(format!("{name}: {}", suite(name, 100)?));
    }
    Ok(parts.join("; "))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: Box<dyn Fn() -> Outcome>,
}

fn criterion(
    id: u32,
    name: &'static str,
    secs: u64,
    run: impl Fn() -> Outcome + 'static,
) -> Criterion {
    Criterion {
        id,
        name,
        limit: Duration::from_secs(secs),
        run: Box::new(run),
    }
}

fn main() -> ExitCode {
    let criteria = vec![
        criterion(1, "univariate and x1*x2 valuations", 1, example_values),
        criterion(2, "unit circle valuation and order", 1, circle),
        criterion(3, "xz - y^2 on the z-axis", 1, z_axis),
        criterion(4, "Lazard evaluation of xz - y^2", 1, lazard_eval_golden),
        criterion(5, "projection goldens", 1, projection_golden),
        criterion(6, "valuation axioms (200)", 10, || suite("axioms", 200)),
        criterion(7, "dual-route valuation (200)", 10, || {
            suite("dual-route", 200)
        }),
        criterion(8, "upper semicontinuity (100)", 30, || {
            suite("semicontinuity", 100)
        }),
        criterion(9, "resultant oracle (100)", 30, || {
            suite("resultant-oracle", 100)
        }),
        criterion(10, "nullification and prefix (200)", 10, || {
            suite("remark33", 200)
        }),
        criterion(11, "section valuations", 10, prop31),
        criterion(12, "root isolation (100)", 10, || suite("roots", 100)),
        criterion(13, "sphere and saddle pipeline", 60, theorem36),
        criterion(14, "falsification probes (3 x 100)", 60, probes),
    ];
    // keep panics from individual criteria on one line
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(|| (c.run)())).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > c.limit => Err(format!("exceeded {:?}", c.limit)),
            o => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{tag} {:>2} {:<36} {:>8.3}s / {:>2}s  {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
