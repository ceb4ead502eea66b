//! JSON, text, and LaTeX renderings of the core types.
//!
//! The JSON encoding is self-describing and exact: Laurent polynomials are
//! maps from exponent to rational coefficient (both as strings, so no
//! precision is lost), rational functions carry numerator and denominator,
//! and polynomial terms list generator index pairs. All maps are emitted in
//! sorted key order, so equal values serialize identically.

use std::collections::BTreeMap;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use qmat_core::ncpoly::{Algebra, Gen, NCPoly, Word};
use qmat_core::scalars::{LaurentPoly, RatFunc, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutFormat {
    Text,
    Json,
    Latex,
}

pub fn laurent_to_json(p: &LaurentPoly) -> Value {
    let map: BTreeMap<String, String> =
        p.iter().map(|(e, c)| (e.to_string(), c.to_string())).collect();
    json!(map)
}

pub fn laurent_from_json(v: &Value) -> Result<LaurentPoly> {
    let obj = v.as_object().ok_or_else(|| anyhow!("laurent: expected object"))?;
    let mut out = LaurentPoly::from_int(0);
    for (k, val) in obj {
        let e: i64 = k.parse().with_context(|| format!("laurent exponent {k:?}"))?;
        let s = val.as_str().ok_or_else(|| anyhow!("laurent coefficient must be a string"))?;
        let c = Rational::from_str(s).map_err(|e| anyhow!("rational {s:?}: {e}"))?;
        out = out.add(&LaurentPoly::monomial(e, c));
    }
    Ok(out)
}

pub fn ratfunc_to_json(f: &RatFunc) -> Value {
    json!({
        "num": laurent_to_json(f.numer()),
        "den": laurent_to_json(f.denom()),
    })
}

pub fn ratfunc_from_json(v: &Value) -> Result<RatFunc> {
    let num = laurent_from_json(v.get("num").ok_or_else(|| anyhow!("ratfunc: missing num"))?)?;
    let den = laurent_from_json(v.get("den").ok_or_else(|| anyhow!("ratfunc: missing den"))?)?;
    RatFunc::new(num, den).map_err(|e| anyhow!("ratfunc: {e}"))
}

pub fn algebra_name(a: Algebra) -> &'static str {
    match a {
        Algebra::Rea => "rea",
        Algebra::Frt => "frt",
    }
}

pub fn algebra_from_name(s: &str) -> Result<Algebra> {
    match s {
        "rea" => Ok(Algebra::Rea),
        "frt" => Ok(Algebra::Frt),
        other => bail!("unknown algebra {other:?}"),
    }
}

pub fn poly_to_json(p: &NCPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(w, c)| {
            let word: Vec<[u8; 2]> = w.0.iter().map(|g| [g.row, g.col]).collect();
            json!({ "word": word, "coeff": ratfunc_to_json(c) })
        })
        .collect();
    json!({ "algebra": algebra_name(p.algebra()), "n": p.n(), "terms": terms })
}

pub fn poly_from_json(v: &Value) -> Result<NCPoly> {
    let algebra = algebra_from_name(
        v.get("algebra")
            .and_then(Value::as_str)
            .ok_or_else(|| anyhow!("poly: missing algebra"))?,
    )?;
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| anyhow!("poly: missing n"))?;
    let n = u8::try_from(n).context("poly: n out of range")?;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("poly: missing terms"))?;
    let mut out = NCPoly::zero(algebra, n);
    for t in terms {
        let word = t
            .get("word")
            .and_then(Value::as_array)
            .ok_or_else(|| anyhow!("poly term: missing word"))?;
        let mut letters = Vec::with_capacity(word.len());
        for g in word {
            let pair = g.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                anyhow!("poly term: generator must be a [row, col] pair")
            })?;
            let row = pair[0].as_u64().and_then(|x| u8::try_from(x).ok());
            let col = pair[1].as_u64().and_then(|x| u8::try_from(x).ok());
            match (row, col) {
                (Some(r), Some(c)) => letters.push(Gen::new(r, c)),
                _ => bail!("poly term: bad generator indices"),
            }
        }
        let coeff =
            ratfunc_from_json(t.get("coeff").ok_or_else(|| anyhow!("poly term: missing coeff"))?)?;
        let mono = NCPoly::monomial(algebra, n, Word(letters), coeff)
            .map_err(|e| anyhow!("poly term: {e}"))?;
        out = out.add(&mono).map_err(|e| anyhow!("poly: {e}"))?;
    }
    Ok(out)
}

fn rational_latex(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\tfrac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

/// Descending exponent order, matching the text `Display`.
fn laurent_latex(p: &LaurentPoly) -> String {
    let mut parts = Vec::new();
    let monomials: Vec<_> = p.iter().collect();
    for (e, c) in monomials.into_iter().rev() {
        let coeff = rational_latex(c);
        let body = match *e {
            0 => String::new(),
            1 => "q".to_string(),
            e => format!("q^{{{e}}}"),
        };
        let piece = match (coeff.as_str(), body.is_empty()) {
            (_, true) => coeff.clone(),
            ("1", false) => body,
            ("-1", false) => format!("-{body}"),
            (_, false) => format!("{coeff} {body}"),
        };
        parts.push(piece);
    }
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, piece) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(piece);
        } else if let Some(rest) = piece.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(piece);
        }
    }
    out
}

pub fn ratfunc_latex(f: &RatFunc) -> String {
    if f.is_polynomial() {
        laurent_latex(f.numer())
    } else {
        format!("\\frac{{{}}}{{{}}}", laurent_latex(f.numer()), laurent_latex(f.denom()))
    }
}

pub fn poly_to_latex(p: &NCPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let letter = match p.algebra() {
        Algebra::Rea => "a",
        Algebra::Frt => "x",
    };
    let mut parts = Vec::new();
    for (w, c) in p.terms() {
        let word: String = w
            .0
            .iter()
            .map(|g| format!("{letter}^{{{}}}_{{{}}}", g.row, g.col))
            .collect::<Vec<_>>()
            .join(" ");
        let coeff = ratfunc_latex(c);
        let piece = if w.degree() == 0 {
            coeff
        } else if coeff == "1" {
            word
        } else if coeff.contains(" + ") || coeff.contains(" -") || coeff.starts_with("\\frac") {
            format!("\\left({coeff}\\right) {word}")
        } else {
            format!("{coeff} \\, {word}")
        };
        parts.push(piece);
    }
    let mut out = String::new();
    for (i, piece) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(piece);
        } else if let Some(rest) = piece.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(piece);
        }
    }
    out
}

pub fn render_poly(p: &NCPoly, fmt: OutFormat) -> String {
    match fmt {
        OutFormat::Text => p.to_string(),
        OutFormat::Json => poly_to_json(p).to_string(),
        OutFormat::Latex => poly_to_latex(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qmat_core::ncpoly::parse;

    #[test]
    fn poly_json_roundtrip() {
        let p = parse("q^-6*(a[1,1]*a[2,2] - q^2*a[1,2]*a[2,1]) + 1/2", Algebra::Rea, 2).unwrap();
        let v = poly_to_json(&p);
        let back = poly_from_json(&v).unwrap();
        assert_eq!(p, back);
        // sorted maps make serialization canonical
        assert_eq!(v.to_string(), poly_to_json(&back).to_string());
    }

    #[test]
    fn ratfunc_json_roundtrip() {
        let f = RatFunc::qint(3).inv().unwrap().mul(&RatFunc::q_pow(-2)).neg();
        let back = ratfunc_from_json(&ratfunc_to_json(&f)).unwrap();
        assert_eq!(f, back);
    }

    #[test]
    fn latex_has_indexed_generators() {
        let p = parse("q^-2*a[1,2]*a[2,1]", Algebra::Rea, 2).unwrap();
        let s = poly_to_latex(&p);
        assert!(s.contains("a^{1}_{2}"), "{s}");
        assert!(s.contains("q^{-2}"), "{s}");
    }

    #[test]
    fn bad_json_is_rejected() {
        assert!(poly_from_json(&json!({"algebra": "rea", "n": 2})).is_err());
        let bad_gen = json!({
            "algebra": "rea", "n": 2,
            "terms": [{"word": [[3, 1]], "coeff": {"num": {"0": "1"}, "den": {"0": "1"}}}]
        });
        assert!(poly_from_json(&bad_gen).is_err());
        let zero_den = json!({
            "algebra": "rea", "n": 2,
            "terms": [{"word": [[1, 1]], "coeff": {"num": {"0": "1"}, "den": {}}}]
        });
        assert!(poly_from_json(&zero_den).is_err());
    }
}
