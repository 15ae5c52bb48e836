use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use lazval::demos::{run_demo, DemoError};
use lazval::invariance::{
    build_stack_report, check_lazard_delineable, check_order_invariant, check_valuation_invariant,
    isolate_real_roots, Delineability, InvarianceReport, InvarianceVerdict, IsolatingInterval,
    StackReport, ValuationSource,
};
use lazval::lazard_eval::lazard_evaluate;
use lazval::parser::{
    format_polynomial_with, parse_basis_file, parse_point, parse_points_file, parse_polynomial,
    BasisFile, Variables,
};
use lazval::projection::lazard_projection;
use lazval::suites::run_suite;
use lazval::valuation::{lazard_valuation, order_at};
use lazval::{arith::format_rational, Error, Point, Polynomial, Rational};
use serde::Serialize;
use serde_json::{json, Value};

use crate::Property;

pub struct Report {
    pub text: String,
    pub json: Value,
    pub ok: bool,
    pub warnings: Vec<String>,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            ok: true,
            warnings: Vec::new(),
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Input(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Usage(_) => "usage",
            Self::Input(_) => "input",
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Usage(m) | Self::Input(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Empty(_) => Self::Usage(e.to_string()),
            _ => Self::Input(e.to_string()),
        }
    }
}

fn input<E: std::fmt::Display>(context: &str) -> impl FnOnce(E) -> CliError + '_ {
    move |e| CliError::Input(format!("{context}: {e}"))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(input(&path.display().to_string()))
}

fn variables(text: &str) -> Result<Variables, CliError> {
    Variables::parse_list(text).map_err(input("--vars"))
}

fn polynomial(text: &str, vars: &Variables) -> Result<Polynomial, CliError> {
    parse_polynomial(text, vars).map_err(input("polynomial"))
}

fn point(text: &str) -> Result<Point, CliError> {
    parse_point(text).map_err(input("point"))
}

fn basis(path: &Path, vars: Option<&str>) -> Result<BasisFile, CliError> {
    let given = vars.map(variables).transpose()?;
    parse_basis_file(&read(path)?, given.as_ref()).map_err(input(&path.display().to_string()))
}

fn samples(file: Option<&Path>, at: &[String]) -> Result<Vec<Point>, CliError> {
    let mut out = match file {
        Some(path) => {
            parse_points_file(&read(path)?).map_err(input(&path.display().to_string()))?
        }
        None => Vec::new(),
    };
    for a in at {
        out.push(point(a)?);
    }
    if out.is_empty() {
        return Err(CliError::Usage(
            "no sample points: pass --samples-file or --at".into(),
        ));
    }
    Ok(out)
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn tuple(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn val(poly: &str, vars: &str, at: &str) -> Result<Report, CliError> {
    let vars = variables(vars)?;
    let f = polynomial(poly, &vars)?;
    let a = point(at)?;
    let v = lazard_valuation(&f, &a)?;
    let ord = order_at(&f, &a)?;
    Ok(Report::ok(
        format!("valuation: {v}\norder: {ord}\n"),
        json!({
            "polynomial": format_polynomial_with(&f, &vars),
            "point": a,
            "valuation": v,
            "order": ord,
        }),
    ))
}

pub fn order(poly: &str, vars: &str, at: &str) -> Result<Report, CliError> {
    let vars = variables(vars)?;
    let f = polynomial(poly, &vars)?;
    let a = point(at)?;
    let ord = order_at(&f, &a)?;
    Ok(Report::ok(
        format!("order: {ord}\n"),
        json!({
            "polynomial": format_polynomial_with(&f, &vars),
            "point": a,
            "order": ord,
        }),
    ))
}

pub fn lazeval(poly: &str, vars: &str, at: &str) -> Result<Report, CliError> {
    let vars = variables(vars)?;
    let f = polynomial(poly, &vars)?;
    let alpha = point(at)?;
    let e = lazard_evaluate(&f, &alpha)?;
    let residual = format_polynomial_with(&e.residual, &vars);
    Ok(Report::ok(
        format!(
            "residual: {residual}\nprefix: {}\nnullified: {}\n",
            tuple(&e.prefix_valuation),
            e.nullified()
        ),
        json!({
            "polynomial": format_polynomial_with(&f, &vars),
            "point": alpha,
            "residual": residual,
            "prefix": e.prefix_valuation,
            "nullified": e.nullified(),
        }),
    ))
}

fn main_var_index(vars: &Variables, name: Option<&str>) -> Result<usize, CliError> {
    match name {
        None if vars.is_empty() => Err(CliError::Input("no variables".into())),
        None => Ok(vars.len() - 1),
        Some(n) => vars
            .index_of(n)
            .ok_or_else(|| CliError::Input(format!("--main-var `{n}` is not one of {vars}"))),
    }
}

pub fn project(
    path: &Path,
    vars: Option<&str>,
    main_var: Option<&str>,
) -> Result<Report, CliError> {
    let file = basis(path, vars)?;
    let main = main_var_index(&file.vars, main_var)?;
    let set = lazard_projection(&file.polys, main)?;
    let show = |p: &Polynomial| format_polynomial_with(p, &file.vars);
    let mut text = format!("basis (main variable {}):\n", file.vars.names()[main]);
    for (i, p) in file.polys.iter().enumerate() {
        let _ = writeln!(text, "  [{i}] {}", show(p));
    }
    let _ = writeln!(text, "P_L: {} factors", set.factors.len());
    let width = set
        .factors
        .iter()
        .map(|f| show(&f.polynomial).len())
        .max()
        .unwrap_or(0);
    let mut factors = Vec::new();
    for f in &set.factors {
        let poly = show(&f.polynomial);
        let provenance: Vec<String> = f.provenance.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(text, "  {poly:<width$}  {}", provenance.join(", "));
        factors.push(json!({ "polynomial": poly, "provenance": provenance }));
    }
    let json = json!({
        "vars": file.vars.names(),
        "main_var": file.vars.names()[main],
        "basis": file.polys.iter().map(show).collect::<Vec<_>>(),
        "factors": factors,
        "discriminant_undefined": set.discriminant_undefined,
        "warnings": set.warnings,
    });
    Ok(Report {
        text,
        json,
        ok: true,
        warnings: set.warnings.clone(),
    })
}

fn interval_text(iv: &IsolatingInterval) -> String {
    if iv.is_exact() {
        format_rational(&iv.lower)
    } else {
        format!(
            "({}, {})",
            format_rational(&iv.lower),
            format_rational(&iv.upper)
        )
    }
}

pub fn roots(poly: &str, vars: &str, width: Option<&str>) -> Result<Report, CliError> {
    let vars = variables(vars)?;
    let f = polynomial(poly, &vars)?;
    let mut iso = isolate_real_roots(&f)?;
    if let Some(w) = width {
        let w = Rational::from_str(w)
            .ok()
            .filter(|w| *w > Rational::default())
            .ok_or_else(|| CliError::Input(format!("--width `{w}` is not a positive rational")))?;
        iso.refine_to_width(&w);
    }
    let mut text = format!(
        "{} real roots (degree {})\n",
        iso.root_count(),
        iso.polynomial_degree
    );
    for iv in &iso.intervals {
        let _ = writeln!(
            text,
            "  {}  multiplicity {}",
            interval_text(iv),
            iv.multiplicity
        );
    }
    let roots: Vec<Value> = iso
        .intervals
        .iter()
        .map(|iv| {
            json!({
                "lower": format_rational(&iv.lower),
                "upper": format_rational(&iv.upper),
                "exact": iv.is_exact(),
                "multiplicity": iv.multiplicity,
            })
        })
        .collect();
    Ok(Report::ok(
        text,
        json!({
            "polynomial": format_polynomial_with(&f, &vars),
            "degree": iso.polynomial_degree,
            "roots": roots,
        }),
    ))
}

fn invariance_text<T: std::fmt::Display + Serialize>(
    what: &str,
    report: &InvarianceReport<T>,
) -> String {
    let mut text = String::new();
    for (p, v) in report.samples.iter().zip(&report.values) {
        let _ = writeln!(text, "  {p}: {v}");
    }
    match &report.verdict {
        InvarianceVerdict::Constant { value } => {
            let _ = writeln!(text, "{what}-invariant on the samples: {value}");
        }
        InvarianceVerdict::NonConstant {
            first,
            witness_index,
            witness,
        } => {
            let _ = writeln!(
                text,
                "not {what}-invariant: sample {witness_index} has {witness}, sample 0 has {first}"
            );
        }
    }
    text
}

pub fn invariance(
    poly: &str,
    vars: &str,
    property: Property,
    file: Option<&Path>,
    at: &[String],
) -> Result<Report, CliError> {
    let vars = variables(vars)?;
    let f = polynomial(poly, &vars)?;
    let pts = samples(file, at)?;
    let header = json!({ "polynomial": format_polynomial_with(&f, &vars) });
    let (text, body, ok) = match property {
        Property::Valuation => {
            let r = check_valuation_invariant(&f, &pts)?;
            (
                invariance_text("valuation", &r),
                to_json(&r),
                r.is_invariant(),
            )
        }
        Property::Order => {
            let r = check_order_invariant(&f, &pts)?;
            (invariance_text("order", &r), to_json(&r), r.is_invariant())
        }
        Property::Delineability => {
            let r = check_lazard_delineable(&f, &pts)?;
            let mut text = String::new();
            for (i, p) in r.sample_points.iter().enumerate() {
                let _ = writeln!(
                    text,
                    "  {p}: prefix {}, {} roots, multiplicities {:?}",
                    tuple(&r.prefix_valuations[i]),
                    r.root_counts[i],
                    r.multiplicity_vectors[i]
                );
            }
            match &r.verdict {
                Delineability::Consistent => text.push_str("Lazard delineable on the samples\n"),
                Delineability::Inconsistent {
                    condition,
                    witness_index,
                } => {
                    let _ = writeln!(
                        text,
                        "not Lazard delineable: {condition:?} differs at sample {witness_index}"
                    );
                }
            }
            let ok = r.is_consistent();
            (text, to_json(&r), ok)
        }
    };
    let mut json = header;
    if let (Some(obj), Value::Object(body)) = (json.as_object_mut(), body) {
        obj.extend(body);
    }
    Ok(Report {
        text,
        json,
        ok,
        warnings: Vec::new(),
    })
}

fn stack_text(report: &StackReport, vars: &Variables) -> String {
    let mut text = String::new();
    let last = &vars.names()[vars.len() - 1];
    for col in &report.columns {
        let _ = writeln!(text, "over {}:", col.base);
        for (k, sector) in col.sectors.iter().enumerate() {
            let vals: Vec<String> = sector.valuations.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(
                text,
                "  sector  {last} = {}  v = {}",
                format_rational(&sector.sample),
                vals.join(" ")
            );
            let Some(s) = col.sections.get(k) else {
                continue;
            };
            let owners: Vec<String> = s
                .owners
                .iter()
                .map(|o| format!("[{}] m={}", o.element, o.multiplicity))
                .collect();
            let vals: Vec<String> = s
                .valuations
                .iter()
                .map(|c| match c.source {
                    ValuationSource::Computed => c.value.to_string(),
                    ValuationSource::Implied => format!("{}*", c.value),
                })
                .collect();
            let place = if s.interval.is_exact() { "=" } else { "in" };
            let _ = writeln!(
                text,
                "  section {last} {place} {}  {}  v = {}",
                interval_text(&s.interval),
                owners.join(" "),
                vals.join(" ")
            );
        }
    }
    let v = &report.verdict;
    let yes = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(
        text,
        "delineable: {}",
        v.delineable
            .iter()
            .enumerate()
            .map(|(i, &d)| format!("[{i}] {}", yes(d)))
            .collect::<Vec<_>>()
            .join(", ")
    );
    let _ = writeln!(text, "sections disjoint: {}", yes(v.sections_disjoint));
    let _ = writeln!(
        text,
        "cell structure consistent: {}",
        yes(v.cell_structure_consistent)
    );
    let _ = writeln!(
        text,
        "valuations invariant on cells: {}",
        yes(v.cell_valuations_invariant)
    );
    let _ = writeln!(
        text,
        "exact sections match (prefix, m): {}",
        yes(v.exact_sections_agree)
    );
    let implied = report.columns.iter().any(|c| {
        c.sections.iter().any(|s| {
            s.valuations
                .iter()
                .any(|v| v.source == ValuationSource::Implied)
        })
    });
    if implied {
        text.push_str("* prefix and multiplicity at an irrational section\n");
    }
    text
}

pub fn stack(
    path: &Path,
    vars: Option<&str>,
    file: Option<&Path>,
    at: &[String],
) -> Result<Report, CliError> {
    let b = basis(path, vars)?;
    let pts = samples(file, at)?;
    let report = build_stack_report(&b.polys, &pts)?;
    let mut json = to_json(&report);
    json["basis"] = json!(b
        .polys
        .iter()
        .map(|p| format_polynomial_with(p, &b.vars))
        .collect::<Vec<_>>());
    json["vars"] = json!(b.vars.names());
    Ok(Report {
        text: stack_text(&report, &b.vars),
        json,
        ok: report.passed(),
        warnings: Vec::new(),
    })
}

pub fn check(suite: &str, seed: u64, count: usize) -> Result<Report, CliError> {
    let r = run_suite(suite, seed, count).map_err(|e| {
        CliError::Usage(format!(
            "{e}; available: {}",
            lazval::suites::SUITE_NAMES.join(", ")
        ))
    })?;
    let mut text = format!(
        "{} (seed {}): {} trials, {} passed, {} skipped, {} failed\n",
        r.suite, r.seed, r.trials, r.passed, r.skipped, r.failed
    );
    for w in &r.witnesses {
        let _ = writeln!(text, "  trial {}: {}", w.trial, w.detail);
    }
    Ok(Report {
        text,
        json: to_json(&r),
        ok: r.all_passed(),
        warnings: Vec::new(),
    })
}

pub fn demo(name: &str) -> Result<Report, CliError> {
    let r = match run_demo(name) {
        Ok(r) => r,
        Err(DemoError::Unknown(_)) => {
            return Err(CliError::Usage(format!(
                "unknown demo `{name}`; available: {}",
                lazval::demos::DEMO_NAMES.join(", ")
            )))
        }
        Err(DemoError::Compute(e)) => {
            return Ok(Report {
                text: format!("demo {name} aborted: {e}\n"),
                json: json!({ "demo": name, "aborted": e.to_string() }),
                ok: false,
                warnings: Vec::new(),
            })
        }
    };
    let mut text = String::new();
    for a in &r.assertions {
        let mark = if a.passed { "ok  " } else { "FAIL" };
        if a.detail.is_empty() {
            let _ = writeln!(text, "[{mark}] {}", a.claim);
        } else {
            let _ = writeln!(text, "[{mark}] {}  ({})", a.claim, a.detail);
        }
    }
    let passed = r.assertions.iter().filter(|a| a.passed).count();
    let _ = writeln!(text, "{passed}/{} assertions hold", r.assertions.len());
    Ok(Report {
        text,
        json: to_json(&r),
        ok: r.passed(),
        warnings: Vec::new(),
    })
}
