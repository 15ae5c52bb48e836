//! Seeded randomized property suites.
//!
//! Every suite draws its inputs from one ChaCha8 stream seeded with the
//! given seed, so a `(suite, seed, count)` triple always reproduces the same
//! trials and the same report.

mod gen;

use num_traits::Zero;
use serde::Serialize;

pub use gen::Gen;

use crate::arith::{content_and_primitive, dyadic, int, rat, Point, Polynomial, Rational};
use crate::error::Result;
use crate::invariance::arcs::{circle_point, line_points};
use crate::invariance::{
    check_lazard_delineable, check_order_invariant, check_section_valuation,
    check_valuation_invariant, isolate_real_roots,
};
use crate::lazard_eval::{
    is_nullified, lazard_evaluate, prefix_consistency_check, substitute_prefix,
};
use crate::projection::{discriminant, resultant, sylvester_resultant};
use crate::valuation::{
    lazard_valuation, lazard_valuation_by_derivatives, order_at, valuation_sum_check, SumAxiom,
    ValuationVector,
};

pub const SUITE_NAMES: [&str; 10] = [
    "axioms",
    "semicontinuity",
    "product-invariance",
    "lemma26",
    "prop27",
    "prop31",
    "remark33",
    "dual-route",
    "resultant-oracle",
    "roots",
];

const MAX_WITNESSES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub trial: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    /// Trials whose hypothesis did not hold (vacuous sum axiom, a sample
    /// set that was not delineable, ...).
    pub skipped: usize,
    pub failed: usize,
    /// The first failing trials.
    pub witnesses: Vec<Witness>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

enum Outcome {
    Pass,
    Skip,
    Fail(String),
}

type Trial = fn(&mut Gen) -> Result<Outcome>;

fn trial_fn(name: &str) -> Option<Trial> {
    Some(match name {
        "axioms" => axioms,
        "semicontinuity" => semicontinuity,
        "product-invariance" => product_invariance,
        "lemma26" => lemma26,
        "prop27" => prop27,
        "prop31" => prop31,
        "remark33" => remark33,
        "dual-route" => dual_route,
        "resultant-oracle" => resultant_oracle,
        "roots" => roots,
        _ => return None,
    })
}

pub fn run_suite(
    name: &str,
    seed: u64,
    count: usize,
) -> std::result::Result<SuiteReport, UnknownSuite> {
    let trial = trial_fn(name).ok_or_else(|| UnknownSuite(name.to_string()))?;
    let mut gen = Gen::new(seed);
    let mut report = SuiteReport {
        suite: name.to_string(),
        seed,
        trials: count,
        passed: 0,
        skipped: 0,
        failed: 0,
        witnesses: Vec::new(),
    };
    for t in 0..count {
        let outcome = trial(&mut gen).unwrap_or_else(|e| Outcome::Fail(format!("error: {e}")));
        match outcome {
            Outcome::Pass => report.passed += 1,
            Outcome::Skip => report.skipped += 1,
            Outcome::Fail(detail) => {
                report.failed += 1;
                if report.witnesses.len() < MAX_WITNESSES {
                    report.witnesses.push(Witness { trial: t, detail });
                }
            }
        }
    }
    Ok(report)
}

fn vv_list(vs: &[ValuationVector]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn axioms(g: &mut Gen) -> Result<Outcome> {
    let n = g.num_vars();
    let a = g.point(n);
    let f = g.poly_at(&a);
    let h = if g.chance(0.1) {
        -f.clone()
    } else if g.chance(0.3) {
        // cancel the low-order part of f so the sum valuation jumps
        let i = g.index(n);
        let lin = Polynomial::linear(n, i, &a.coords()[i])?;
        let e = &g.poly_at(&a) * &lin.pow(2);
        if e.is_zero() || (&e - &f).is_zero() {
            g.poly_at(&a)
        } else {
            &e - &f
        }
    } else {
        g.poly_at(&a)
    };
    let r = valuation_sum_check(&f, &h, &a)?;
    if !r.passed() {
        return Ok(Outcome::Fail(format!("f = {f}, g = {h}, a = {a}: {r:?}")));
    }
    Ok(match r.sum {
        SumAxiom::Vacuous => Outcome::Skip,
        SumAxiom::Checked { .. } => Outcome::Pass,
    })
}

fn dual_route(g: &mut Gen) -> Result<Outcome> {
    let n = g.num_vars();
    let a = g.point(n);
    let f = g.poly_at(&a);
    let v = lazard_valuation(&f, &a)?;
    let w = lazard_valuation_by_derivatives(&f, &a)?;
    let ord = order_at(&f, &a)?;
    let nonvanishing = !f.evaluate(&a)?.is_zero();
    let mut problems = Vec::new();
    if v != w {
        problems.push(format!("shift {v} vs derivatives {w}"));
    }
    if v.is_zero() != nonvanishing {
        problems.push(format!("v = {v} but f(a) != 0 is {nonvanishing}"));
    }
    if ord.0 > v.total() {
        problems.push(format!("order {} exceeds |v| = {}", ord.0, v.total()));
    }
    if n == 1 && v.components()[0] != ord.0 {
        problems.push(format!("univariate v = {v} but order {}", ord.0));
    }
    Ok(if problems.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("f = {f}, a = {a}: {}", problems.join("; ")))
    })
}

fn semicontinuity(g: &mut Gen) -> Result<Outcome> {
    let n = g.num_vars();
    let a = g.point(n);
    let f = g.poly_at(&a);
    let d = g.direction(n);
    let va = lazard_valuation(&f, &a)?;
    let vs = (0..=24u32)
        .map(|k| lazard_valuation(&f, &a.offset(&d, &dyadic(k))?))
        .collect::<Result<Vec<_>>>()?;
    let k0 = (0..=20).find(|&k0| vs[k0..].iter().all(|v| v <= &va));
    Ok(match k0 {
        Some(_) => Outcome::Pass,
        None => Outcome::Fail(format!(
            "f = {f}, a = {a}, d = {d}: v_a = {va}, v_(a + 2^-k d) = {}",
            vv_list(&vs)
        )),
    })
}

/// A random connected arc: a line segment, or (for n >= 2) a unit circle arc
/// in the first two coordinates, together with a polynomial vanishing on the
/// whole curve.
fn random_arc(g: &mut Gen, n: usize) -> Result<(Vec<Point>, Polynomial)> {
    let base = g.point(n);
    let params: Vec<Rational> = (0..4).map(|_| g.generic_unit()).collect();
    if n >= 2 && g.chance(0.4) {
        let samples = params
            .iter()
            .map(|t| {
                let c = circle_point(t);
                let mut coords = base.coords().to_vec();
                coords[0] += &c.coords()[0];
                coords[1] += &c.coords()[1];
                Point::new(coords)
            })
            .collect();
        let x = Polynomial::linear(n, 0, &base.coords()[0])?;
        let y = Polynomial::linear(n, 1, &base.coords()[1])?;
        let curve = &(&(&x * &x) + &(&y * &y)) - &Polynomial::one(n);
        return Ok((samples, curve));
    }
    let mut dir = g.direction(n).coords().to_vec();
    let fixed = g.index(n);
    if n >= 2 {
        dir[fixed] = int(0);
        if dir.iter().all(Zero::is_zero) {
            dir[(fixed + 1) % n] = int(1);
        }
    }
    let dir = Point::new(dir);
    let samples = line_points(&base, &dir, &params);
    let curve = if n >= 2 {
        Polynomial::linear(n, fixed, &base.coords()[fixed])?
    } else {
        // the segment is open in the line; nothing vanishes on all of it
        Polynomial::one(n)
    };
    Ok((samples, curve))
}

fn maybe_vanishing(g: &mut Gen, n: usize, curve: &Polynomial) -> Polynomial {
    let h = g.poly(n);
    if g.chance(0.5) {
        let k = g.range(1, 2) as u32;
        &h * &curve.pow(k)
    } else {
        h
    }
}

fn product_invariance(g: &mut Gen) -> Result<Outcome> {
    let n = g.num_vars();
    let (samples, curve) = random_arc(g, n)?;
    let f = maybe_vanishing(g, n, &curve);
    let h = maybe_vanishing(g, n, &curve);
    let fh = &f * &h;
    let inv_f = check_valuation_invariant(&f, &samples)?.is_invariant();
    let inv_h = check_valuation_invariant(&h, &samples)?.is_invariant();
    let inv_fh = check_valuation_invariant(&fh, &samples)?.is_invariant();
    let detail = || {
        let pts: Vec<String> = samples.iter().map(|p| p.to_string()).collect();
        format!(
            "f = {f}, g = {h}, samples {}: f {inv_f}, g {inv_h}, fg {inv_fh}",
            pts.join(" ")
        )
    };
    Ok(if inv_fh != (inv_f && inv_h) {
        Outcome::Fail(detail())
    } else {
        Outcome::Pass
    })
}

fn lemma26(g: &mut Gen) -> Result<Outcome> {
    let p = g.point(2);
    let bounds = [g.range(0, 3) as u32, g.range(1, 3) as u32];
    let raw = g.poly_with_bounds(&bounds);
    let f = &raw - &Polynomial::constant(2, raw.evaluate(&p)?);
    if f.degree_in(1).unwrap_or(0) == 0 {
        return Ok(Outcome::Skip);
    }
    let (_, f) = content_and_primitive(&f, 1)?;
    if !f.evaluate(&p)?.is_zero() {
        return Ok(Outcome::Skip);
    }
    // away from the zeros of res_y(f, f_y)
    let generic = if f.degree_in(1) >= Some(2) {
        let disc = discriminant(&f, 1)?;
        if disc.is_zero() {
            return Ok(Outcome::Skip);
        }
        !disc.evaluate(&p)?.is_zero()
    } else {
        !f.partial_derivative(1)?.evaluate(&p)?.is_zero()
    };
    if !generic {
        return Ok(Outcome::Skip);
    }
    let v = lazard_valuation(&f, &p)?;
    Ok(if v.components() == [0, 1] {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("f = {f}, a = {p}: v = {v}"))
    })
}

fn prop27(g: &mut Gen) -> Result<Outcome> {
    let (samples, curve) = random_arc(g, 2)?;
    let f = maybe_vanishing(g, 2, &curve);
    let val = check_valuation_invariant(&f, &samples)?;
    if !val.is_invariant() {
        return Ok(Outcome::Skip);
    }
    let ord = check_order_invariant(&f, &samples)?;
    Ok(if ord.is_invariant() {
        Outcome::Pass
    } else {
        Outcome::Fail(format!(
            "f = {f}: valuations {:?}, orders {:?}",
            val.values, ord.values
        ))
    })
}

fn remark33(g: &mut Gen) -> Result<Outcome> {
    let n = g.range(2, 3) as usize;
    let alpha = g.point(n - 1);
    let mut f = g.poly(n);
    if g.chance(0.3) {
        // vanish identically on the fibre over alpha
        let fibre = substitute_prefix(&f, &alpha)?;
        f = &f - &fibre;
    }
    if g.chance(0.4) {
        let i = g.index(n - 1);
        let k = g.range(1, 3) as u32;
        f = &f * &Polynomial::linear(n, i, &alpha.coords()[i])?.pow(k);
    }
    if f.is_zero() {
        return Ok(Outcome::Skip);
    }
    let last = n - 1;
    let e = lazard_evaluate(&f, &alpha)?;
    let nullified = is_nullified(&f, &alpha)?;
    let mut problems = Vec::new();
    if nullified != e.nullified() {
        problems.push("nullification criterion disagrees".to_string());
    }
    if e.residual.variables().iter().any(|&v| v != last) {
        problems.push(format!("residual {} mentions a base variable", e.residual));
    }
    if e.residual.degree_in(last) > f.degree_in(last) {
        problems.push("residual degree exceeds f".to_string());
    }
    if !nullified && e.residual != substitute_prefix(&f, &alpha)? {
        problems.push("residual differs from f(alpha, x_n)".to_string());
    }
    for _ in 0..3 {
        let a_n = g.small_rational();
        let r = prefix_consistency_check(&f, &alpha, &a_n)?;
        if !r.passed {
            problems.push(format!(
                "a_n = {a_n}: prefix {:?} vs valuation {:?}",
                r.prefix_valuation, r.full_valuation
            ));
        }
    }
    Ok(if problems.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("f = {f}, alpha = {alpha}: {}", problems.join("; ")))
    })
}

/// `prod (x_n - r_i(x))^{m_i} * extra` with affine `r_i` and a factor
/// `extra` that has no real root in `x_n`.
fn prop31(g: &mut Gen) -> Result<Outcome> {
    let n = g.range(2, 3) as usize;
    let last = n - 1;
    let y = Polynomial::var(n, last)?;
    let k = g.range(1, 3) as usize;
    let mut sections: Vec<(Polynomial, u32)> = Vec::new();
    let mut f = Polynomial::one(n);
    for _ in 0..k {
        let mut r = Polynomial::constant(n, g.small_rational());
        for j in 0..last {
            r = &r + &Polynomial::var(n, j)?.scale(&int(g.range(-2, 2)));
        }
        let m = g.range(1, 3) as u32;
        f = &f * &(&y - &r).pow(m);
        sections.push((r, m));
    }
    let base_sq = (0..last)
        .map(|j| Polynomial::var(n, j).map(|x| &x * &x))
        .collect::<Result<Vec<_>>>()?;
    let extra = match g.index(3) {
        0 => Polynomial::one(n),
        1 => &(&y * &y) + &Polynomial::one(n),
        _ => base_sq
            .iter()
            .fold(&(&y * &y) + &Polynomial::one(n), |acc, s| &acc + s),
    };
    f = &f * &extra;

    let base = g.point(last);
    let mut dir = g.direction(last);
    if n == 3 && g.chance(0.3) {
        // lie in x_1 = c, where f is made to vanish identically
        let c = base.coords()[0].clone();
        f = &f * &Polynomial::linear(n, 0, &c)?.pow(g.range(1, 2) as u32);
        dir = Point::new(vec![int(0), int(1)]);
    }
    let params: Vec<Rational> = (0..3).map(|_| g.generic_unit()).collect();
    let samples = line_points(&base, &dir, &params);
    if !check_lazard_delineable(&f, &samples)?.is_consistent() {
        return Ok(Outcome::Skip);
    }
    for alpha in &samples {
        let mut roots: Vec<(Rational, u32)> = Vec::new();
        for (r, m) in &sections {
            let mut coords = alpha.coords().to_vec();
            coords.push(Rational::zero());
            let value = r.evaluate(&Point::new(coords))?;
            match roots.iter_mut().find(|(v, _)| *v == value) {
                Some((_, total)) => *total += m,
                None => roots.push((value, *m)),
            }
        }
        for (root, m) in roots {
            let r = check_section_valuation(&f, alpha, &root, m)?;
            if !r.passed {
                return Ok(Outcome::Fail(format!(
                    "f = {f}, alpha = {alpha}, root {root}, m = {m}: valuation {} expected {}",
                    r.valuation, r.expected
                )));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn random_main_degree_poly(g: &mut Gen, n: usize, main: usize) -> Polynomial {
    loop {
        let bounds: Vec<u32> = (0..n)
            .map(|i| {
                if i == main {
                    g.range(1, 5) as u32
                } else {
                    g.range(0, 2) as u32
                }
            })
            .collect();
        let p = g.poly_with_bounds(&bounds);
        if p.degree_in(main).unwrap_or(0) > 0 {
            return p;
        }
    }
}

fn resultant_oracle(g: &mut Gen) -> Result<Outcome> {
    let n = g.num_vars();
    let main = g.index(n);
    let f = random_main_degree_poly(g, n, main);
    let h = random_main_degree_poly(g, n, main);
    let prs = resultant(&f, &h, main)?;
    let det = sylvester_resultant(&f, &h, main)?;
    let mut problems = Vec::new();
    if prs != det {
        problems.push(format!("PRS {prs} vs Sylvester {det}"));
    }
    let (df, dh) = (
        f.degree_in(main).unwrap_or(0),
        h.degree_in(main).unwrap_or(0),
    );
    let swapped = resultant(&h, &f, main)?;
    let expected = if df * dh % 2 == 1 {
        -prs.clone()
    } else {
        prs.clone()
    };
    if swapped != expected {
        problems.push(format!("res(g, f) = {swapped}, expected {expected}"));
    }
    if df + dh <= 5 {
        let e = random_main_degree_poly(g, n, main);
        let lhs = resultant(&(&f * &e), &h, main)?;
        let rhs = &resultant(&e, &h, main)? * &prs;
        if lhs != rhs {
            problems.push(format!(
                "res(f e, g) = {lhs} vs res(f, g) res(e, g) = {rhs}, e = {e}"
            ));
        }
    }
    Ok(if problems.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Fail(format!(
            "f = {f}, g = {h}, main x{}: {}",
            main + 1,
            problems.join("; ")
        ))
    })
}

fn roots(g: &mut Gen) -> Result<Outcome> {
    let k = g.range(1, 5);
    let mut expected: Vec<(Rational, u32)> = Vec::new();
    let mut degree = 0;
    for _ in 0..k {
        let r = rat(g.range(-9, 9), g.range(1, 5));
        if expected.iter().any(|(s, _)| *s == r) {
            continue;
        }
        let m = (g.range(1, 3) as u32).min(8 - degree);
        if m == 0 {
            break;
        }
        degree += m;
        expected.push((r, m));
    }
    let scale = rat(
        g.range(1, 9) * if g.chance(0.5) { 1 } else { -1 },
        g.range(1, 4),
    );
    let mut p = Polynomial::constant(1, scale);
    for (r, m) in &expected {
        p = &p * &Polynomial::linear(1, 0, r)?.pow(*m);
    }
    expected.sort();
    let iso = isolate_real_roots(&p)?;
    let found = iso.rational_roots();
    Ok(if found == expected && iso.root_count() == expected.len() {
        Outcome::Pass
    } else {
        Outcome::Fail(format!(
            "p = {p}: expected {expected:?}, isolated {:?}",
            iso.intervals
        ))
    })
}
