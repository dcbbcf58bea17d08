use std::str::FromStr;

use affsatake::hecke::{bernstein_cross, degree_and_cone, hecke_mul, parse_hecke, spherical_projector, HeckeElement};
use affsatake::json::{Envelope, Formula};
use affsatake::rootdata::{affine_poincare_series, affine_positive_coroots, stabilizer_poincare};
use affsatake::satake::{
    delta_affine, gk_series, inverse_satake_coeffs, macdonald_affine, macdonald_finite, point_count, AffineOptions,
    DeltaMode, GkMode,
};
use affsatake::zeta::{
    affine_correction_and_ct, borel_constant_term, eisenstein_residue, tamagawa_affine, tamagawa_finite, AffineCtMode,
    CurveZeta, EisensteinParam, Extended, Real, TamagawaMode, TamagawaValue,
};
use affsatake::{build_root_datum, Error, GradedSeries, LatticeVector, QRat, RootDatum, WeylElement};
use num_bigint::BigInt;
use num_complex::Complex;
use serde_json::{json, Map, Number, Value};

use crate::args::*;
use crate::render::{Doc, Table};

pub enum CliError {
    /// Rejected before any computation.
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Out = Result<Doc, CliError>;

#[derive(Clone, Copy)]
pub enum Precision {
    Double,
    Extended,
}

impl Precision {
    pub fn from_bits(bits: u32) -> Result<Self, CliError> {
        match bits {
            1..=53 => Ok(Precision::Double),
            54..=128 => Ok(Precision::Extended),
            _ => Err(CliError::Usage(format!(
                "--precision must lie in 1..=128 bits, got {bits}"
            ))),
        }
    }
}

macro_rules! with_real {
    ($p:expr, $f:ident($($a:expr),*)) => {
        match $p {
            Precision::Double => $f::<f64>($($a),*),
            Precision::Extended => $f::<Extended>($($a),*),
        }
    };
}

fn parse_ints(flag: &str, s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("--{flag}: `{t}` is not an integer")))
        })
        .collect()
}

fn parse_floats(flag: &str, s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| match t.trim().parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => Err(CliError::Usage(format!("--{flag}: `{t}` is not a finite number"))),
        })
        .collect()
}

fn datum(t: &TypeArg) -> Result<RootDatum, CliError> {
    Ok(build_root_datum(&t.type_label)?)
}

fn load_curve(spec: &str) -> Result<CurveZeta, CliError> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        std::fs::read_to_string(spec).map_err(|e| CliError::Usage(format!("--curve: cannot read `{spec}`: {e}")))?
    };
    Ok(affsatake::json::curve_from_json(&text)?)
}

fn check_rank(flag: &str, v: &[i64], d: &RootDatum) -> Result<(), CliError> {
    if v.len() != d.rank {
        return Err(CliError::Usage(format!(
            "--{flag} needs {} coordinates for {}, got {}",
            d.rank,
            d.label(),
            v.len()
        )));
    }
    Ok(())
}

fn big(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

fn f64_of<R: Real>(x: R) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn cjson<R: Real>(z: Complex<R>) -> Value {
    json!({"re": f64_of(z.re), "im": f64_of(z.im)})
}

fn series_table(s: &GradedSeries<QRat>) -> Table {
    let mut t = Table::new(&["a", "finite", "j", "coefficient"]);
    for (e, c) in s.terms() {
        let f: Vec<String> = e.finite.iter().map(|x| x.to_string()).collect();
        t.push(vec![
            e.central.to_string(),
            f.join(","),
            e.delta.to_string(),
            c.to_string(),
        ]);
    }
    t
}

fn envelope(formula: Formula, lambda: Option<&LatticeVector>, shells: Option<usize>, s: &GradedSeries<QRat>) -> Doc {
    let env = Envelope::new(formula, lambda, shells, s);
    Doc {
        json: serde_json::to_value(env).expect("envelope serializes"),
        table: Some(series_table(s)),
    }
}

pub fn rootdata(a: &RootdataArgs) -> Out {
    let d = datum(&a.ty)?;
    let order: BigInt = d.exponents.iter().map(|&x| BigInt::from(x)).product();
    let wq = stabilizer_poincare(&d, &LatticeVector::zero(d.rank), false)?;
    let coroots: Vec<LatticeVector> = d
        .positive_coroots
        .iter()
        .map(|c| LatticeVector::finite(c.clone()))
        .collect();
    let mut doc = json!({
        "type": d.label(),
        "rank": d.rank,
        "cartan_matrix": d.cartan_matrix,
        "exponents": d.exponents,
        "dual_coxeter": d.dual_coxeter,
        "dim_g": d.dim_g,
        "dim_n": d.dim_n,
        "simply_laced": d.simply_laced,
        "weyl_order": big(&order),
        "poincare": wq.to_string(),
        "positive_coroots": coroots,
    });
    let mut table = Table::new(&["central", "finite", "delta", "multiplicity"]);
    let mut rows: Vec<(LatticeVector, usize)> = coroots.into_iter().map(|c| (c, 1)).collect();
    if a.affine {
        let aff = affine_positive_coroots(&d, a.n)?;
        let p = affine_poincare_series(&d)?;
        doc["affine_positive_coroots"] = serde_json::to_value(&aff).expect("coroots serialize");
        doc["affine_poincare"] = json!({
            "numerator": p.numerator.coeffs().iter().map(big).collect::<Vec<_>>(),
            "denominator": p.denominator.coeffs().iter().map(big).collect::<Vec<_>>(),
            "value": p.to_qrat().to_string(),
        });
        rows = aff.into_iter().map(|c| (c.coroot, c.multiplicity)).collect();
    }
    for (c, m) in rows {
        let f: Vec<String> = c.finite.iter().map(|x| x.to_string()).collect();
        table.push(vec![
            c.central.to_string(),
            f.join(","),
            c.delta.to_string(),
            m.to_string(),
        ]);
    }
    Ok(Doc {
        json: doc,
        table: Some(table),
    })
}

pub fn macdonald(a: &MacdonaldArgs) -> Out {
    let d = datum(&a.ty)?;
    let finite = parse_ints("lambda", &a.lambda)?;
    check_rank("lambda", &finite, &d)?;
    match a.level {
        None => {
            if a.delta != 0 {
                return Err(CliError::Usage("--delta needs --level (affine weights only)".into()));
            }
            let lam = LatticeVector::finite(finite);
            let e = macdonald_finite(&d, &lam)?;
            Ok(envelope(Formula::Mac, Some(&lam), Some(e.shells), &e.series))
        }
        Some(level) => {
            let lam = LatticeVector::new(level, finite, a.delta);
            let e = macdonald_affine(&d, &lam, a.n, a.l, AffineOptions::default())?;
            Ok(envelope(Formula::MacAff, Some(&lam), Some(a.l), &e.series))
        }
    }
}

pub fn kostka(a: &KostkaArgs) -> Out {
    let d = datum(&a.ty)?;
    let finite = parse_ints("lambda", &a.lambda)?;
    check_rank("lambda", &finite, &d)?;
    let inv = inverse_satake_coeffs(&d, &LatticeVector::finite(finite))?;
    let mut table = Table::new(&["mu", "raw", "normalized", "at_q1"]);
    let mut rows = Vec::new();
    for (mu, raw) in &inv.raw {
        let at1 = raw.at_one().map(|r| r.to_string());
        let norm = inv.normalized[mu].to_string();
        let m: Vec<String> = mu.iter().map(|x| x.to_string()).collect();
        table.push(vec![
            m.join(","),
            raw.to_string(),
            norm.clone(),
            at1.clone().unwrap_or_default(),
        ]);
        rows.push(json!({"mu": mu, "raw": raw.to_string(), "normalized": norm, "at_q1": at1}));
    }
    Ok(Doc {
        json: json!({"type": d.label(), "lambda": inv.lambda, "coefficients": rows}),
        table: Some(table),
    })
}

fn delta_coeffs(s: &GradedSeries<QRat>, rank: usize, n: i64) -> Vec<String> {
    (0..=n)
        .map(|j| s.coeff(&LatticeVector::new(0, vec![0; rank], -j)).to_string())
        .collect()
}

pub fn delta(a: &DeltaArgs) -> Out {
    let d = datum(&a.ty)?;
    let sum_mode = DeltaMode::Sum { max_length: a.l };
    match a.mode {
        DeltaModeArg::Product => Ok(envelope(
            Formula::Delta,
            None,
            None,
            &delta_affine(&d, a.n, DeltaMode::Product)?,
        )),
        DeltaModeArg::Sum => Ok(envelope(
            Formula::Delta,
            None,
            Some(a.l),
            &delta_affine(&d, a.n, sum_mode)?,
        )),
        DeltaModeArg::Both => {
            let p = delta_affine(&d, a.n, DeltaMode::Product)?;
            let s = delta_affine(&d, a.n, sum_mode)?;
            let (pc, sc) = (delta_coeffs(&p, d.rank, a.n), delta_coeffs(&s, d.rank, a.n));
            let mut table = Table::new(&["j", "product", "sum"]);
            for (j, (x, y)) in pc.iter().zip(&sc).enumerate() {
                table.push(vec![j.to_string(), x.clone(), y.clone()]);
            }
            Ok(Doc {
                json: json!({
                    "formula": "delta",
                    "type": d.label(),
                    "truncation": a.n,
                    "shells": a.l,
                    "product": pc,
                    "sum": sc,
                    "agree": p == s,
                }),
                table: Some(table),
            })
        }
    }
}

pub fn gk(a: &GkArgs) -> Out {
    let d = datum(&a.ty)?;
    let mode = match (a.depth, a.n, a.height) {
        (Some(depth), None, None) => GkMode::Finite { depth },
        (None, Some(n), Some(height)) => GkMode::Affine { n, height },
        _ => {
            return Err(CliError::Usage(
                "gk needs either --depth or both --N and --height".into(),
            ))
        }
    };
    let s = gk_series(&d, mode)?;
    let Some(qs) = &a.counts else {
        return Ok(envelope(Formula::Gk, None, None, &s));
    };
    let qs = parse_ints("counts", qs)?;
    if qs.iter().any(|&q| q < 2) {
        return Err(CliError::Usage("--counts values must be at least 2".into()));
    }
    let mut header = vec!["gamma".to_string(), "count".to_string()];
    header.extend(qs.iter().map(|q| format!("q={q}")));
    let mut table = Table {
        header,
        rows: Vec::new(),
    };
    let mut rows = Vec::new();
    for (e, _) in s.terms() {
        let gamma = -e;
        let c = point_count(&d, &s, &gamma);
        let mut values = Map::new();
        let mut row = vec![gamma.to_string(), c.to_string()];
        for &q in &qs {
            let v = c.eval_integer(q);
            row.push(v.as_ref().map(|n| n.to_string()).unwrap_or_default());
            values.insert(q.to_string(), v.as_ref().map_or(Value::Null, big));
        }
        table.push(row);
        rows.push(json!({"gamma": gamma, "count": c.to_string(), "values": values}));
    }
    Ok(Doc {
        json: json!({"formula": "gk", "type": d.label(), "truncation": s.truncation(), "counts": rows}),
        table: Some(table),
    })
}

fn q_minus(k: i64) -> QRat {
    &QRat::q_pow(1) - &QRat::from_int(k)
}

/// Order of `s_i s_j`, when at most 6.
fn braid_order(d: &RootDatum, i: usize, j: usize, affine: bool) -> Result<Option<usize>, Error> {
    for m in 2..=6 {
        let word: Vec<usize> = (0..2 * m).map(|k| if k % 2 == 0 { i } else { j }).collect();
        if WeylElement::from_word(d, &word, affine)?.is_identity() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn relation_suite(d: &RootDatum, affine: bool) -> Result<Vec<(String, bool)>, Error> {
    let nodes: Vec<usize> = if affine {
        (0..=d.rank).collect()
    } else {
        (1..=d.rank).collect()
    };
    let t = |i: usize| HeckeElement::t_word(d, &[i], affine);
    let one = HeckeElement::one(d, affine);
    let mut checks = Vec::new();
    for &i in &nodes {
        let ti = t(i)?;
        let rhs = ti.scale(&q_minus(1)).add(&one.scale(&QRat::q_pow(1)))?;
        checks.push((format!("quadratic T_{i}"), hecke_mul(d, &ti, &ti)? == rhs));
    }
    for (k, &i) in nodes.iter().enumerate() {
        for &j in &nodes[k + 1..] {
            let Some(m) = braid_order(d, i, j, affine)? else {
                continue;
            };
            let (ti, tj) = (t(i)?, t(j)?);
            let mut a = one.clone();
            let mut b = one.clone();
            for step in 0..m {
                let (x, y) = if step % 2 == 0 { (&ti, &tj) } else { (&tj, &ti) };
                a = hecke_mul(d, &a, x)?;
                b = hecke_mul(d, &b, y)?;
            }
            checks.push((format!("braid T_{i} T_{j} (m = {m})"), a == b));
        }
    }
    let level = i64::from(affine);
    let mut weights: Vec<LatticeVector> = (0..d.rank)
        .map(|k| {
            let mut w = LatticeVector::simple(d.rank, k);
            w.central = level;
            w
        })
        .collect();
    if affine {
        weights.push(LatticeVector::new(1, vec![0; d.rank], 0));
    }
    for &i in &nodes {
        let ti = t(i)?;
        let s = WeylElement::simple(d, i, affine)?;
        for lam in &weights {
            let x = HeckeElement::x(d, affine, lam.clone())?;
            let xs = HeckeElement::x(d, affine, s.apply(lam))?;
            let lhs = hecke_mul(d, &x, &ti)?.sub(&hecke_mul(d, &ti, &xs)?)?;
            let f = GradedSeries::monomial(lam.clone(), QRat::one(), None);
            let rhs = bernstein_cross(d, affine, &f, i)?;
            checks.push((format!("cross X[{lam}] T_{i}"), lhs == rhs));
        }
    }
    if !affine {
        let p = spherical_projector(d);
        let wq = stabilizer_poincare(d, &LatticeVector::zero(d.rank), false)?;
        checks.push(("projector P^2 = W(q) P".into(), hecke_mul(d, &p, &p)? == p.scale(&wq)));
    }
    Ok(checks)
}

pub fn hecke_check(a: &HeckeArgs) -> Out {
    let d = datum(&a.ty)?;
    if let (Some(l), Some(r)) = (&a.left, &a.right) {
        let x = parse_hecke(&d, a.affine, l)?;
        let y = parse_hecke(&d, a.affine, r)?;
        let p = hecke_mul(&d, &x, &y)?;
        let mut doc = json!({
            "type": d.label(),
            "affine": a.affine,
            "left": x.to_string(),
            "right": y.to_string(),
            "product": p.to_string(),
            "terms": p.len(),
        });
        if a.affine {
            let g = degree_and_cone(&p)?;
            doc["degrees"] = json!(g.degrees);
            doc["homogeneous_degree"] = json!(g.homogeneous());
            doc["positive"] = json!(g.positive);
        }
        return Ok(Doc::json(doc));
    }
    let checks = relation_suite(&d, a.affine)?;
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect();
    if !failed.is_empty() {
        return Err(Error::Internal {
            op: "hecke_mul",
            msg: format!("relations failed: {}", failed.join("; ")),
        }
        .into());
    }
    let mut table = Table::new(&["check", "passed"]);
    let list: Vec<Value> = checks
        .iter()
        .map(|(n, ok)| {
            table.push(vec![n.clone(), ok.to_string()]);
            json!({"name": n, "passed": ok})
        })
        .collect();
    Ok(Doc {
        json: json!({"type": d.label(), "affine": a.affine, "checks": list, "passed": true}),
        table: Some(table),
    })
}

fn zeta_doc<R: Real>(c: &CurveZeta, s: Option<(f64, f64)>, bits: u32) -> Result<Value, CliError> {
    let eig: Vec<Value> = c.frobenius_eigenvalues().into_iter().map(cjson).collect();
    let mut doc = json!({
        "curve": c,
        "precision_bits": bits,
        "pic0": big(&c.pic0()),
        "residue_at_1": f64_of(c.residue_at_1::<R>()),
        "frobenius_eigenvalues": eig,
    });
    if let Some((re, im)) = s {
        let z = Complex::new(R::from(re).expect("finite"), R::from(im).expect("finite"));
        doc["s"] = json!({"re": re, "im": im});
        doc["value"] = cjson(c.zeta(z)?);
        if im == 0.0 && re.fract() == 0.0 && re.abs() < 1e6 {
            doc["exact"] = json!(c.zeta_exact(re as i64)?.to_string());
        }
    }
    Ok(doc)
}

pub fn zeta(a: &ZetaArgs, p: Precision, bits: u32) -> Out {
    let c = load_curve(&a.curve.curve)?;
    let s = match &a.s {
        None => None,
        Some(t) => match parse_floats("s", t)?.as_slice() {
            [re] => Some((*re, 0.0)),
            [re, im] => Some((*re, *im)),
            _ => return Err(CliError::Usage("--s takes `re` or `re,im`".into())),
        },
    };
    Ok(Doc::json(with_real!(p, zeta_doc(&c, s, bits))?))
}

fn tam_json(v: &TamagawaValue) -> Value {
    json!({
        "exact": v.exact.to_string(),
        "symbolic": v.symbolic.as_ref().map(|s| s.to_string()),
        "numeric": v.numeric,
    })
}

const MODE_AGREEMENT: f64 = 1e-12;

pub fn tamagawa(a: &TamagawaArgs) -> Out {
    let d = datum(&a.ty)?;
    let c = load_curve(&a.curve.curve)?;
    let mut doc = json!({"type": d.label(), "curve": c});
    let want = |m: TamagawaModeArg| a.mode == m || a.mode == TamagawaModeArg::Both;
    let f = want(TamagawaModeArg::Formula)
        .then(|| tamagawa_finite(&c, &d, TamagawaMode::Formula))
        .transpose()?;
    let h = want(TamagawaModeArg::Cohomology)
        .then(|| tamagawa_finite(&c, &d, TamagawaMode::Cohomology))
        .transpose()?;
    if let Some(f) = &f {
        doc["formula"] = tam_json(f);
    }
    if let Some(h) = &h {
        doc["cohomology"] = tam_json(h);
    }
    if let (Some(f), Some(h)) = (&f, &h) {
        let rel = ((f.numeric - h.numeric) / f.numeric).abs();
        doc["exact_agree"] = json!(f.exact == h.exact);
        doc["symbolic_agree"] = json!(f.symbolic == h.symbolic);
        doc["relative_difference"] = json!(rel);
        doc["numeric_agree"] = json!(rel < MODE_AGREEMENT);
        doc["tolerances"] = json!({"mode_agreement": MODE_AGREEMENT});
    }
    Ok(Doc::json(doc))
}

pub fn tamagawa_aff(a: &TamagawaAffineArgs) -> Out {
    let d = datum(&a.ty)?;
    // The symbolic quotient does not depend on the curve.
    let c = match &a.curve {
        Some(s) => Some(load_curve(s)?),
        None => None,
    };
    let eval_on = c
        .clone()
        .unwrap_or_else(|| CurveZeta::projective_line(2).expect("valid curve"));
    let t = tamagawa_affine(&eval_on, &d)?;
    let counts = |m: &std::collections::BTreeMap<i64, u32>| -> Map<String, Value> {
        m.iter().map(|(n, k)| (n.to_string(), json!(k))).collect()
    };
    let mut doc = json!({
        "type": d.label(),
        "product": t.product(),
        "cancelled": t.cancelled,
        "numerator": counts(&t.numerator),
        "denominator": counts(&t.denominator),
    });
    if let Some(c) = c {
        doc["curve"] = json!(c);
        doc["exact"] = json!(t.exact.to_string());
        doc["value"] = json!(t.value);
        doc["unreduced_value"] = json!(t.unreduced_value);
    }
    Ok(Doc::json(doc))
}

fn ct_doc<R: Real>(d: &RootDatum, c: &CurveZeta, sigma: &[f64]) -> Result<Value, CliError> {
    let sig = sigma
        .iter()
        .map(|&x| Complex::new(R::from(x).expect("finite"), R::zero()))
        .collect();
    let param = EisensteinParam::new(d, c, sig)?;
    let terms: Vec<Value> = borel_constant_term(&param)?
        .into_iter()
        .map(|t| {
            json!({
                "word": t.word,
                "inversions": t.inversions,
                "q_power": t.q_power,
                "factor": cjson(t.factor),
                "completed_ratio": cjson(t.completed_ratio),
                "w_sigma": t.w_sigma.into_iter().map(cjson).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({"type": d.label(), "curve": c, "sigma": sigma, "terms": terms}))
}

const RESIDUE_TOL: f64 = 1e-6;

pub fn constant_term(a: &ConstantTermArgs, p: Precision) -> Out {
    let d = datum(&a.ty)?;
    let c = load_curve(&a.curve.curve)?;
    if !a.residue {
        let sigma = parse_floats("sigma", a.sigma.as_deref().unwrap_or_default())?;
        if sigma.len() != d.rank {
            return Err(CliError::Usage(format!(
                "--sigma needs {} values for {}",
                d.rank,
                d.label()
            )));
        }
        return Ok(Doc::json(with_real!(p, ct_doc(&d, &c, &sigma))?));
    }
    let gamma = match &a.gamma {
        Some(g) => parse_ints("gamma", g)?,
        None => vec![0; d.rank],
    };
    check_rank("gamma", &gamma, &d)?;
    let r = eisenstein_residue(&c, &d, &gamma)?;
    let mut table = Table::new(&["epsilon", "scaled_constant_term"]);
    for (e, v) in &r.path {
        table.push(vec![format!("{e:e}"), format!("{v:e}")]);
    }
    let doc = json!({
        "type": d.label(),
        "curve": c,
        "gamma": r.gamma,
        "path": r.path.iter().map(|(e, v)| json!([e, v])).collect::<Vec<_>>(),
        "residue": r.residue,
        "closed_form": r.closed_form,
        "relative_error": r.relative_error,
        "r_value": r.r_value,
        "volume": r.volume,
        "product": r.product,
        "product_expected": r.product_expected,
        "product_relative_error": r.product_relative_error,
        "within_tolerance": r.relative_error < RESIDUE_TOL && r.product_relative_error < RESIDUE_TOL,
        "tolerances": {"residue_relative": RESIDUE_TOL, "product_relative": RESIDUE_TOL},
    });
    Ok(Doc {
        json: doc,
        table: Some(table),
    })
}

fn act_doc<R: Real>(
    d: &RootDatum,
    c: &CurveZeta,
    sigma: &[f64],
    s: f64,
    j: usize,
    mode: AffineCtMode,
) -> Result<Doc, CliError> {
    let sig = sigma
        .iter()
        .map(|&x| Complex::new(R::from(x).expect("finite"), R::zero()))
        .collect();
    let param = EisensteinParam::new(d, c, sig)?;
    let s = Complex::new(R::from(s).expect("finite"), R::zero());
    let r = affine_correction_and_ct(&param, s, j, mode)?;
    let mut table = Table::new(&["J", "re", "im", "delta"]);
    let partial: Vec<Value> = r
        .partial_products
        .iter()
        .zip(&r.deltas)
        .enumerate()
        .map(|(k, (z, dl))| {
            table.push(vec![
                (k + 1).to_string(),
                format!("{:e}", f64_of(z.re)),
                format!("{:e}", f64_of(z.im)),
                format!("{dl:e}"),
            ]);
            json!({"J": k + 1, "value": cjson(*z), "delta": dl})
        })
        .collect();
    let mut doc = json!({
        "type": d.label(),
        "curve": c,
        "s": f64_of(s.re),
        "J": j,
        "prefactor": cjson(r.prefactor),
        "converged_at": r.converged_at,
        "partial_products": partial,
        "tolerances": {"successive_delta": r.tolerance},
    });
    if let AffineCtMode::WSum { max_length } = mode {
        doc["L"] = json!(max_length);
        doc["sigma"] = json!(sigma);
        doc["shells"] = r
            .shells
            .iter()
            .map(
                |sh| json!({"length": sh.length, "terms": sh.terms, "partial": cjson(sh.partial), "change": sh.change}),
            )
            .collect();
        doc["total"] = r.total.map_or(Value::Null, cjson);
        doc["total_opposite_sign"] = r.total_opposite_sign.map_or(Value::Null, cjson);
        doc["sign_convention"] = json!({
            "total": "q^{(g-1) l(w)} per term",
            "total_opposite_sign": "q^{-(g-1) l(w)} per term",
        });
    }
    Ok(Doc {
        json: doc,
        table: Some(table),
    })
}

pub fn affine_ct(a: &AffineCtArgs, p: Precision) -> Out {
    let d = datum(&a.ty)?;
    let c = load_curve(&a.curve.curve)?;
    let sigma = match &a.sigma {
        Some(s) => parse_floats("sigma", s)?,
        None => vec![1.0; d.rank],
    };
    if sigma.len() != d.rank {
        return Err(CliError::Usage(format!(
            "--sigma needs {} values for {}",
            d.rank,
            d.label()
        )));
    }
    let mode = match a.mode {
        AffineCtModeArg::Prefactor => AffineCtMode::Prefactor,
        AffineCtModeArg::WSum => AffineCtMode::WSum { max_length: a.l },
    };
    with_real!(p, act_doc(&d, &c, &sigma, a.s, a.j, mode))
}
