//! Browser bindings: each export takes plain strings and returns a JSON
//! string, `{"ok": true, ...}` or `{"ok": false, "error": "..."}`.

use lazval::arith::format_rational;
use lazval::invariance::isolate_real_roots;
use lazval::lazard_eval::lazard_evaluate;
use lazval::parser::{
    format_polynomial_with, parse_basis_file, parse_point, parse_polynomial, Variables,
};
use lazval::projection::lazard_projection;
use lazval::valuation::{lazard_valuation, order_at};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn finish(result: Result<Value, String>) -> String {
    match result {
        Ok(mut v) => {
            v["ok"] = Value::Bool(true);
            v.to_string()
        }
        Err(e) => json!({ "ok": false, "error": e }).to_string(),
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Lazard valuation and order of `poly` at `point`, plus (for n >= 2) the
/// Lazard evaluation over the first n-1 coordinates.
#[wasm_bindgen]
pub fn valuation(poly: &str, vars: &str, point: &str) -> String {
    finish((|| {
        let vars = Variables::parse_list(vars).map_err(err)?;
        let f = parse_polynomial(poly, &vars).map_err(err)?;
        let a = parse_point(point).map_err(err)?;
        let v = lazard_valuation(&f, &a).map_err(err)?;
        let ord = order_at(&f, &a).map_err(err)?;
        let mut out = json!({
            "polynomial": format_polynomial_with(&f, &vars),
            "valuation": v,
            "order": ord,
            "residual": null,
            "nullified": null,
        });
        // Lazard evaluation needs at least two variables.
        if a.dim() >= 2 {
            let prefix = lazval::Point::new(a.coords()[..a.dim() - 1].to_vec());
            let e = lazard_evaluate(&f, &prefix).map_err(err)?;
            out["residual"] = json!(format_polynomial_with(&e.residual, &vars));
            out["nullified"] = json!(e.nullified());
        }
        Ok(out)
    })())
}

/// Real roots of a univariate polynomial in `x`.
#[wasm_bindgen]
pub fn real_roots(poly: &str) -> String {
    finish((|| {
        let vars = Variables::parse_list("x").map_err(err)?;
        let f = parse_polynomial(poly, &vars).map_err(err)?;
        let iso = isolate_real_roots(&f).map_err(err)?;
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
        Ok(json!({ "degree": iso.polynomial_degree, "roots": roots }))
    })())
}

/// Lazard projection of a basis given as text (optional `vars:` header, one
/// polynomial per line) with respect to its last variable.
#[wasm_bindgen]
pub fn projection(basis: &str, vars: &str) -> String {
    finish((|| {
        let given = if vars.trim().is_empty() {
            None
        } else {
            Some(Variables::parse_list(vars).map_err(err)?)
        };
        let file = parse_basis_file(basis, given.as_ref()).map_err(err)?;
        let main = file.vars.len() - 1;
        let set = lazard_projection(&file.polys, main).map_err(err)?;
        let factors: Vec<Value> = set
            .factors
            .iter()
            .map(|f| {
                json!({
                    "polynomial": format_polynomial_with(&f.polynomial, &file.vars),
                    "provenance": f.provenance.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        Ok(json!({
            "main_var": file.vars.names()[main],
            "factors": factors,
            "warnings": set.warnings,
        }))
    })())
}
