//! End-to-end scenarios with asserted values.
//!
//! Every asserted valuation is computed both by the Taylor-shift route and by
//! derivative enumeration, and every projection component is recomputed as a
//! Sylvester determinant, before it is compared with the expected value.

use serde::Serialize;

use crate::arith::{int, rat, Point, Polynomial, Rational};
use crate::error::Result;
use crate::invariance::arcs::{circle_arc, line_points};
use crate::invariance::{
    build_stack_report, check_order_invariant, check_valuation_invariant, InvarianceVerdict,
    StackReport, ValuationSource,
};
use crate::lazard_eval::{lazard_evaluate, prefix_consistency_check};
use crate::parser::{parse_polynomial, Variables};
use crate::projection::{discriminant, lazard_projection, sylvester_resultant, ProjectionSet};
use crate::valuation::{
    lazard_valuation, lazard_valuation_by_derivatives, order_at, ValuationVector,
};

pub const DEMO_NAMES: [&str; 3] = ["circle", "xz-minus-y2", "theorem36"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledStack {
    pub arc: String,
    pub report: StackReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DemoReport {
    pub demo: String,
    pub assertions: Vec<Assertion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projection: Option<ProjectionSet>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub stacks: Vec<LabeledStack>,
}

impl DemoReport {
    fn new(name: &str) -> Self {
        Self {
            demo: name.to_string(),
            assertions: Vec::new(),
            projection: None,
            stacks: Vec::new(),
        }
    }

    fn check(&mut self, claim: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion {
            claim: claim.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DemoError {
    #[error("unknown demo `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Compute(#[from] crate::Error),
}

pub fn run_demo(name: &str) -> std::result::Result<DemoReport, DemoError> {
    Ok(match name {
        "circle" => circle()?,
        "xz-minus-y2" => xz_minus_y2()?,
        "theorem36" => theorem36()?,
        _ => return Err(DemoError::Unknown(name.to_string())),
    })
}

fn poly(text: &str, vars: &str) -> Polynomial {
    let vars = Variables::parse_list(vars).expect("fixed variable list");
    parse_polynomial(text, &vars).expect("fixed demo polynomial")
}

fn vv(c: &[u32]) -> ValuationVector {
    ValuationVector::new(c.to_vec())
}

/// Valuation by both routes; a disagreement is recorded as a failed assertion.
fn valuation(report: &mut DemoReport, f: &Polynomial, a: &Point) -> Result<ValuationVector> {
    let v = lazard_valuation(f, a)?;
    let w = lazard_valuation_by_derivatives(f, a)?;
    if v != w {
        report.check(
            format!("both valuation routes agree for {f} at {a}"),
            false,
            format!("{v} vs {w}"),
        );
    }
    Ok(v)
}

fn circle() -> Result<DemoReport> {
    let mut r = DemoReport::new("circle");
    let f = poly("x^2 + y^2 - 1", "x,y");
    let params: Vec<Rational> = [
        (1, 3),
        (1, 2),
        (2, 3),
        (1, 1),
        (2, 1),
        (3, 1),
        (-1, 2),
        (-2, 1),
        (-3, 1),
    ]
    .iter()
    .map(|&(n, d)| rat(n, d))
    .collect();
    let generic = circle_arc(&params);
    let poles = [
        Point::new(vec![int(1), int(0)]),
        Point::new(vec![int(-1), int(0)]),
    ];

    for a in generic.iter().chain(&poles) {
        let ord = order_at(&f, a)?;
        r.check(format!("ord at {a} is 1"), ord.0 == 1, format!("{}", ord.0));
    }
    for a in &generic {
        let v = valuation(&mut r, &f, a)?;
        r.check(
            format!("v at {a} is (0,1)"),
            v == vv(&[0, 1]),
            v.to_string(),
        );
    }
    for a in &poles {
        let v = valuation(&mut r, &f, a)?;
        r.check(
            format!("v at {a} is (0,2)"),
            v == vv(&[0, 2]),
            v.to_string(),
        );
    }

    let inv = check_valuation_invariant(&f, &generic)?;
    r.check(
        "valuation-invariant on the circle minus (+-1, 0)",
        inv.verdict == InvarianceVerdict::Constant { value: vv(&[0, 1]) },
        inv.verdict.to_string(),
    );
    let mut whole = generic.clone();
    whole.extend(poles.iter().cloned());
    let inv = check_valuation_invariant(&f, &whole)?;
    r.check(
        "not valuation-invariant on the whole circle",
        !inv.is_invariant(),
        inv.verdict.to_string(),
    );
    let ord = check_order_invariant(&f, &whole)?;
    r.check(
        "order-invariant on the whole circle",
        ord.is_invariant(),
        ord.verdict.to_string(),
    );
    Ok(r)
}

fn xz_minus_y2() -> Result<DemoReport> {
    let mut r = DemoReport::new("xz-minus-y2");
    let f = poly("x*z - y^2", "x,y,z");
    let samples: Vec<Point> = (-2..=2)
        .map(|a| Point::new(vec![int(0), int(0), int(a)]))
        .collect();
    for a in &samples {
        let v = valuation(&mut r, &f, a)?;
        r.check(
            format!("v at {a} is (0,2,0)"),
            v == vv(&[0, 2, 0]),
            v.to_string(),
        );
        let expected = if a.coords()[2] == int(0) { 2 } else { 1 };
        let ord = order_at(&f, a)?;
        r.check(
            format!("ord at {a} is {expected}"),
            ord.0 == expected,
            ord.0.to_string(),
        );
    }
    let inv = check_valuation_invariant(&f, &samples)?;
    r.check(
        "valuation-invariant on the z-axis",
        inv.is_invariant(),
        inv.verdict.to_string(),
    );
    let ord = check_order_invariant(&f, &samples)?;
    r.check(
        "not order-invariant on the z-axis",
        !ord.is_invariant(),
        ord.verdict.to_string(),
    );

    let origin = Point::origin(2);
    let e = lazard_evaluate(&f, &origin)?;
    r.check(
        "Lazard evaluation over (0, 0) has residual -1 and prefix (0,2)",
        e.residual == Polynomial::constant(3, int(-1)) && e.prefix_valuation == [0, 2],
        format!("residual {}, prefix {:?}", e.residual, e.prefix_valuation),
    );
    r.check("f is nullified over (0, 0)", e.nullified(), "");
    for a_n in [0, 1, 7] {
        let p = prefix_consistency_check(&f, &origin, &int(a_n))?;
        r.check(
            format!("prefix agrees with v at (0, 0, {a_n})"),
            p.passed,
            format!("{:?} vs {:?}", p.prefix_valuation, p.full_valuation),
        );
    }
    Ok(r)
}

fn stack_checks(r: &mut DemoReport, label: &str, report: &StackReport) {
    let v = &report.verdict;
    r.check(
        format!("{label}: every element is Lazard delineable"),
        v.delineable.iter().all(|&d| d),
        format!("{:?}", v.delineable),
    );
    r.check(
        format!("{label}: sections are pairwise disjoint"),
        v.sections_disjoint,
        "",
    );
    r.check(
        format!("{label}: same cell structure over every sample"),
        v.cell_structure_consistent,
        "",
    );
    r.check(
        format!("{label}: every element is valuation-invariant on every cell"),
        v.cell_valuations_invariant,
        "",
    );
    r.check(
        format!("{label}: exact sections have valuation (prefix, m)"),
        v.exact_sections_agree,
        "",
    );
}

/// A = {x^2 + y^2 + z^2 - 1, z - x*y} with main variable z.
fn theorem36() -> Result<DemoReport> {
    let mut r = DemoReport::new("theorem36");
    let vars = "x,y,z";
    let a = vec![poly("x^2 + y^2 + z^2 - 1", vars), poly("z - x*y", vars)];

    // Projection, with every component recomputed independently.
    let proj = lazard_projection(&a, 2)?;
    let mut expected: Vec<Polynomial> = ["x^2 + y^2 - 1", "x*y", "x^2*y^2 + x^2 + y^2 - 1"]
        .iter()
        .map(|s| poly(s, vars).normalized())
        .collect();
    expected.sort();
    let mut got = proj.polynomials();
    got.sort();
    r.check(
        "P_L(A) = {x^2 + y^2 - 1, x*y, x^2*y^2 + x^2 + y^2 - 1}",
        got == expected,
        got.iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(", "),
    );
    let disc = discriminant(&a[0], 2)?;
    let disc_oracle = sylvester_resultant(&a[0], &a[0].partial_derivative(2)?, 2)?;
    r.check(
        "disc(f1) = 4*x^2 + 4*y^2 - 4 by both routes",
        disc == poly("4*x^2 + 4*y^2 - 4", vars) && disc == disc_oracle,
        format!("{disc} / {disc_oracle}"),
    );
    let res = crate::projection::resultant(&a[0], &a[1], 2)?;
    let res_oracle = sylvester_resultant(&a[0], &a[1], 2)?;
    r.check(
        "res(f1, f2) = x^2*y^2 + x^2 + y^2 - 1 by both routes",
        res == poly("x^2*y^2 + x^2 + y^2 - 1", vars) && res == res_oracle,
        format!("{res} / {res_oracle}"),
    );
    let pl = proj
        .polynomials()
        .iter()
        .map(|p| p.truncate_vars(2))
        .collect::<Result<Vec<_>>>()?;
    r.projection = Some(proj);

    let quarter = circle_arc(&[rat(1, 3), rat(1, 2), rat(2, 3), rat(1, 4)]);
    let axis_segment = line_points(
        &Point::new(vec![int(0), int(0)]),
        &Point::new(vec![int(0), int(1)]),
        &[rat(3, 5), rat(1, 2), rat(5, 13), rat(1, 3)],
    );
    let interior = line_points(
        &Point::new(vec![rat(1, 5), rat(1, 5)]),
        &Point::new(vec![int(1), int(0)]),
        &[int(0), rat(1, 10), rat(1, 5)],
    );
    let arcs = [
        ("open quarter circle", quarter.clone()),
        ("segment x = 0, 0 < y < 1", axis_segment.clone()),
        ("segment inside the disc", interior),
    ];

    for (label, samples) in &arcs {
        for p in &pl {
            let inv = check_valuation_invariant(p, samples)?;
            r.check(
                format!("{label}: {p} is valuation-invariant"),
                inv.is_invariant(),
                inv.verdict.to_string(),
            );
        }
        let stack = build_stack_report(&a, samples)?;
        stack_checks(&mut r, label, &stack);
        for col in &stack.columns {
            for s in &col.sections {
                if !s.interval.is_exact() {
                    continue;
                }
                let point = col.base.extended(s.interval.lower.clone());
                for (e, cell) in s.valuations.iter().enumerate() {
                    let oracle = lazard_valuation_by_derivatives(&a[e], &point)?;
                    if cell.value != oracle {
                        r.check(
                            format!("{label}: both routes agree for element {e} at {point}"),
                            false,
                            format!("{} vs {oracle}", cell.value),
                        );
                    }
                }
            }
        }
        r.stacks.push(LabeledStack {
            arc: label.to_string(),
            report: stack,
        });
    }

    // Section valuations on the quarter circle: z = 0 is a double root of the
    // sphere, z = x*y a simple root of the plane.
    let quarter_stack = &r.stacks[0].report;
    let mut golden = true;
    for col in &quarter_stack.columns {
        let [low, high] = &col.sections[..] else {
            golden = false;
            continue;
        };
        golden &= low.interval.is_exact()
            && low.interval.lower == int(0)
            && low.owners.len() == 1
            && low.owners[0].element == 0
            && low.owners[0].multiplicity == 2
            && low.valuations[0].value == vv(&[0, 0, 2])
            && low.valuations[1].value == vv(&[0, 0, 0]);
        let x = &col.base.coords()[0];
        let y = &col.base.coords()[1];
        golden &= high.interval.is_exact()
            && high.interval.lower == x * y
            && high.owners[0].element == 1
            && high.valuations[0].value == vv(&[0, 0, 0])
            && high.valuations[1].value == vv(&[0, 0, 1]);
        golden &= low
            .valuations
            .iter()
            .chain(&high.valuations)
            .all(|c| c.source == ValuationSource::Computed);
    }
    r.check(
        "quarter circle: sections z = 0 (sphere, m = 2, v = (0,0,2)) below z = x*y (plane, v = (0,0,1))",
        golden,
        "",
    );

    // Leaving the invariant region: at (0, 1) the sphere and the plane meet
    // at z = 0.
    let mut extended = axis_segment;
    extended.push(Point::new(vec![int(0), int(1)]));
    let inv = check_valuation_invariant(&poly("x^2 + y^2 - 1", "x,y"), &extended)?;
    r.check(
        "control: x^2 + y^2 - 1 is not valuation-invariant once (0, 1) is added",
        !inv.is_invariant(),
        inv.verdict.to_string(),
    );
    let stack = build_stack_report(&a, &extended)?;
    let last = stack.columns.last().expect("nonempty samples");
    r.check(
        "control: over (0, 1) the sections meet at z = 0",
        !last.disjoint
            && last
                .sections
                .iter()
                .any(|s| s.owners.len() == 2 && s.interval.lower == int(0)),
        "",
    );
    r.check("control: the stack verdict fails", !stack.passed(), "");
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_demos_pass() {
        for name in DEMO_NAMES {
            let r = run_demo(name).unwrap();
            let failed: Vec<_> = r.assertions.iter().filter(|a| !a.passed).collect();
            assert!(failed.is_empty(), "{name}: {failed:?}");
        }
        assert_eq!(
            run_demo("sphere"),
            Err(DemoError::Unknown("sphere".to_string()))
        );
    }
}
