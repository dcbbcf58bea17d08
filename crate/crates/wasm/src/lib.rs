//! Browser bindings: a spherical function, an affine Tamagawa quotient and a
//! curve zeta value, each returned as a JSON string.

use affsatake::json::{curve_from_json, Envelope, Formula};
use affsatake::satake::{macdonald_affine, macdonald_finite, AffineOptions};
use affsatake::zeta::{tamagawa_affine, zeta_eval, CurveZeta};
use affsatake::{build_root_datum, LatticeVector};
use num_complex::Complex;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn parse_ints(text: &str) -> Result<Vec<i64>, String> {
    text.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("not an integer: {t:?}")))
        .collect()
}

/// Spherical function of `lambda`; a `level` above zero selects the affine
/// version truncated at `delta`-degree `n`.
pub fn spherical(cartan_type: &str, lambda: &str, level: i64, n: i64) -> Result<String, String> {
    let d = build_root_datum(cartan_type).map_err(err)?;
    let finite = parse_ints(lambda)?;
    if finite.len() != d.rank {
        return Err(format!(
            "{} needs {} coordinates, got {}",
            d.label(),
            d.rank,
            finite.len()
        ));
    }
    let (s, formula, lam, shells) = if level > 0 {
        let lam = LatticeVector::new(level, finite, 0);
        let s = macdonald_affine(&d, &lam, n, 12, AffineOptions::default()).map_err(err)?;
        (s.series, Formula::MacAff, lam, Some(12))
    } else {
        let lam = LatticeVector::finite(finite);
        let s = macdonald_finite(&d, &lam).map_err(err)?;
        (s.series, Formula::Mac, lam, None)
    };
    let rows: Vec<Value> = s
        .terms()
        .map(|(e, c)| json!({"exp": e.to_string(), "coeff": c.to_string()}))
        .collect();
    let envelope = Envelope::new(formula, Some(&lam), shells, &s);
    Ok(json!({"rows": rows, "envelope": envelope}).to_string())
}

/// Affine Tamagawa quotient in product form, evaluated over the projective line at `q`.
pub fn affine_volume(cartan_type: &str, q: u64) -> Result<String, String> {
    let d = build_root_datum(cartan_type).map_err(err)?;
    let c = CurveZeta::projective_line(q).map_err(err)?;
    let t = tamagawa_affine(&c, &d).map_err(err)?;
    Ok(json!({
        "product": t.product(),
        "cancelled": t.cancelled,
        "exact": t.exact.to_string(),
        "value": t.value,
    })
    .to_string())
}

/// `zeta_X(s)` for a curve given as `{"q", "genus", "L_poly"}`.
pub fn curve_zeta(curve: &str, re: f64, im: f64) -> Result<String, String> {
    let c = curve_from_json(curve).map_err(err)?;
    let z = zeta_eval(&c, Complex::new(re, im)).map_err(err)?;
    Ok(json!({"re": z.re, "im": z.im, "pic0": c.pic0().to_string()}).to_string())
}

#[wasm_bindgen(js_name = spherical)]
pub fn spherical_js(cartan_type: &str, lambda: &str, level: i64, n: i64) -> Result<String, JsError> {
    spherical(cartan_type, lambda, level, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = affineVolume)]
pub fn affine_volume_js(cartan_type: &str, q: u64) -> Result<String, JsError> {
    affine_volume(cartan_type, q).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = curveZeta)]
pub fn curve_zeta_js(curve: &str, re: f64, im: f64) -> Result<String, JsError> {
    curve_zeta(curve, re, im).map_err(|e| JsError::new(&e))
}
