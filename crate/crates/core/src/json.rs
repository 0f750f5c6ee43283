//! JSON encoding of spectra, Jordan forms, matrices and certificates.
//!
//! Rationals are strings `"p/q"` (or `"p"`), Gaussian rationals are
//! `{"re", "im"}` objects. Object keys come out sorted, so equal values
//! always serialize to identical bytes.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::exact::{format_rational, gauss, parse_rational, GaussianRational, RatMatrix, Rational};
use crate::families::UniformPairList;
use crate::realize::{Decomposition, RealizationCertificate};
use crate::spectrum::{EigenList, JordanForm, Spectrum};
use crate::verify::{compute_verdicts, Verdicts};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonError {
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("SchemaError: {0}")]
    Schema(String),
}

fn schema(msg: impl Into<String>) -> JsonError {
    JsonError::Schema(msg.into())
}

pub fn parse(text: &str) -> Result<Value, JsonError> {
    serde_json::from_str(text).map_err(|e| JsonError::Parse(e.to_string()))
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

/// Accepts `"p/q"`, `"p"` or a JSON integer.
pub fn rational_from_json(v: &Value) -> Result<Rational, JsonError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| schema(e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().expect("i64").into())),
        other => Err(schema(format!("expected a rational string, got {other}"))),
    }
}

pub fn gaussian_to_json(z: &GaussianRational) -> Value {
    json!({ "re": rational_to_json(&z.re), "im": rational_to_json(&z.im) })
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, JsonError> {
    obj.get(key).ok_or_else(|| schema(format!("missing field {key:?}")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, JsonError> {
    v.as_object().ok_or_else(|| schema(format!("{what} must be an object")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, JsonError> {
    v.as_array().ok_or_else(|| schema(format!("{what} must be an array")))
}

fn count(v: &Value, what: &str) -> Result<usize, JsonError> {
    v.as_u64()
        .map(|k| k as usize)
        .ok_or_else(|| schema(format!("{what} must be a nonnegative integer")))
}

/// `{"re", "im"}` with `im` defaulting to zero.
pub fn gaussian_from_json(v: &Value) -> Result<GaussianRational, JsonError> {
    let obj = object(v, "a complex entry")?;
    let re = rational_from_json(field(obj, "re")?)?;
    let im = match obj.get("im") {
        Some(x) => rational_from_json(x)?,
        None => Rational::from_integer(0.into()),
    };
    Ok(gauss(re, im))
}

pub fn matrix_to_json(m: &RatMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(rational_to_json).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value) -> Result<RatMatrix, JsonError> {
    let rows = array(v, "matrix")?;
    let rows = rows
        .iter()
        .map(|r| array(r, "matrix row")?.iter().map(rational_from_json).collect())
        .collect::<Result<Vec<Vec<Rational>>, JsonError>>()?;
    RatMatrix::from_rows(rows).map_err(|e| schema(e.to_string()))
}

pub fn list_to_json(list: &EigenList) -> Value {
    Value::Array(
        list.entries()
            .iter()
            .map(|(z, k)| json!({ "re": rational_to_json(&z.re), "im": rational_to_json(&z.im), "mult": k }))
            .collect(),
    )
}

pub fn list_from_json(v: &Value) -> Result<EigenList, JsonError> {
    let pairs = array(v, "entries")?
        .iter()
        .map(|e| {
            let z = gaussian_from_json(e)?;
            let k = match e.get("mult") {
                Some(m) => count(m, "mult")?,
                None => 1,
            };
            Ok((z, k))
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    EigenList::from_pairs(pairs).map_err(|e| schema(e.to_string()))
}

pub fn spectrum_to_json(s: &Spectrum) -> Value {
    json!({ "perron": rational_to_json(s.perron()), "entries": list_to_json(s.list()) })
}

/// `{"perron"?, "entries": [...]}` or a bare entries array.
pub fn spectrum_from_json(v: &Value) -> Result<Spectrum, JsonError> {
    let (entries, perron) = match v {
        Value::Array(_) => (v, None),
        Value::Object(obj) => (field(obj, "entries")?, obj.get("perron")),
        _ => return Err(schema("spectrum must be an object or an array")),
    };
    let list = list_from_json(entries)?;
    let spec = match perron {
        Some(p) => Spectrum::with_perron(list, rational_from_json(p)?),
        None => Spectrum::from_list(list),
    };
    spec.map_err(|e| schema(e.to_string()))
}

pub fn jcf_to_json(j: &JordanForm) -> Value {
    Value::Array(
        j.blocks()
            .iter()
            .map(|(z, p)| json!({ "re": rational_to_json(&z.re), "im": rational_to_json(&z.im), "blocks": p }))
            .collect(),
    )
}

pub fn jcf_from_json(v: &Value) -> Result<JordanForm, JsonError> {
    let blocks = array(v, "jcf")?
        .iter()
        .map(|e| {
            let z = gaussian_from_json(e)?;
            let parts = array(field(object(e, "jcf entry")?, "blocks")?, "blocks")?
                .iter()
                .map(|p| count(p, "block size"))
                .collect::<Result<Vec<usize>, JsonError>>()?;
            Ok((z, parts))
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    Ok(JordanForm::new(blocks))
}

pub fn decomposition_to_json(d: &Decomposition) -> Value {
    json!({
        "sublists": d.sublists.iter().map(list_to_json).collect::<Vec<_>>(),
        "aux": d.aux.iter().map(list_to_json).collect::<Vec<_>>(),
        "glue_values": d.glue_values.iter().map(rational_to_json).collect::<Vec<_>>(),
    })
}

pub fn verdicts_to_json(v: &Verdicts) -> Value {
    json!({
        "spectrum_match": v.spectrum_match,
        "jcf_match": v.jcf_match,
        "nonnegative": v.nonnegative,
        "positive_column": v.positive_column,
        "irreducible": v.irreducible,
        "cs_value": v.cs_value.as_ref().map(rational_to_json),
    })
}

pub fn verdicts_from_json(v: &Value) -> Result<Verdicts, JsonError> {
    let obj = object(v, "verdicts")?;
    let flag = |key: &str| -> Result<bool, JsonError> {
        field(obj, key)?
            .as_bool()
            .ok_or_else(|| schema(format!("{key} must be a boolean")))
    };
    let positive_column = match field(obj, "positive_column")? {
        Value::Null => None,
        x => Some(count(x, "positive_column")?),
    };
    let cs_value = match field(obj, "cs_value")? {
        Value::Null => None,
        x => Some(rational_from_json(x)?),
    };
    Ok(Verdicts {
        spectrum_match: flag("spectrum_match")?,
        jcf_match: flag("jcf_match")?,
        nonnegative: flag("nonnegative")?,
        positive_column,
        irreducible: flag("irreducible")?,
        cs_value,
    })
}

pub fn certificate_to_json(c: &RealizationCertificate) -> Value {
    json!({
        "spectrum": spectrum_to_json(&c.spectrum),
        "jcf": jcf_to_json(&c.jcf),
        "decomposition": c.decomposition.as_ref().map(decomposition_to_json),
        "matrix": matrix_to_json(&c.matrix),
        "verdicts": verdicts_to_json(&c.verdicts),
    })
}

/// Claims carried by a certificate or a claims file: the matrix is
/// checked against these.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claims {
    pub spectrum: Spectrum,
    pub jcf: Option<JordanForm>,
    pub verdicts: Option<Verdicts>,
}

pub fn claims_from_json(v: &Value) -> Result<Claims, JsonError> {
    let obj = object(v, "claims")?;
    Ok(Claims {
        spectrum: spectrum_from_json(field(obj, "spectrum")?)?,
        jcf: obj.get("jcf").map(jcf_from_json).transpose()?,
        verdicts: obj.get("verdicts").map(verdicts_from_json).transpose()?,
    })
}

/// Outcome of checking a matrix against [`Claims`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimCheck {
    pub verdicts: Verdicts,
    pub jcf_match: Option<bool>,
    pub verdicts_match: Option<bool>,
}

impl ClaimCheck {
    pub fn ok(&self) -> bool {
        self.verdicts.spectrum_match
            && self.verdicts.nonnegative
            && self.jcf_match.unwrap_or(true)
            && self.verdicts_match.unwrap_or(true)
    }

    /// Names of the claims that failed.
    pub fn failed(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.verdicts.spectrum_match {
            out.push("spectrum");
        }
        if !self.verdicts.nonnegative {
            out.push("nonnegativity");
        }
        if self.jcf_match == Some(false) {
            out.push("jordan form");
        }
        if self.verdicts_match == Some(false) {
            out.push("verdicts");
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ok": self.ok(),
            "spectrum_match": self.verdicts.spectrum_match,
            "nonnegative": self.verdicts.nonnegative,
            "jcf_match": self.jcf_match,
            "verdicts_match": self.verdicts_match,
            "verdicts": verdicts_to_json(&self.verdicts),
        })
    }
}

/// Recomputes every verdict for `m` and compares with the claims. Without a
/// Jordan form claim the verdicts are computed against the diagonal form.
pub fn check_claims(m: &RatMatrix, claims: &Claims) -> ClaimCheck {
    let j = claims
        .jcf
        .clone()
        .unwrap_or_else(|| JordanForm::diagonal(claims.spectrum.list()));
    let verdicts = compute_verdicts(m, claims.spectrum.list(), &j);
    ClaimCheck {
        jcf_match: claims.jcf.as_ref().map(|_| verdicts.jcf_match),
        verdicts_match: claims.verdicts.as_ref().map(|v| *v == verdicts),
        verdicts,
    }
}

/// Splits a certificate document into its matrix and claims.
pub fn certificate_claims(v: &Value) -> Result<(RatMatrix, Claims), JsonError> {
    let m = matrix_from_json(field(object(v, "certificate")?, "matrix")?)?;
    Ok((m, claims_from_json(v)?))
}

pub fn params_to_json(p: &UniformPairList) -> Value {
    json!({
        "lambda": rational_to_json(&p.lambda),
        "a": rational_to_json(&p.a),
        "b": rational_to_json(&p.b),
        "n": p.n,
        "c": rational_to_json(&p.c),
    })
}

/// Family parameters; every key is optional so callers can merge them
/// with command-line flags.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParamsJson {
    pub lambda: Option<Rational>,
    pub a: Option<Rational>,
    pub b: Option<Rational>,
    pub n: Option<usize>,
    pub c: Option<Rational>,
}

pub fn params_from_json(v: &Value) -> Result<ParamsJson, JsonError> {
    let obj = object(v, "parameters")?;
    let r = |key: &str| obj.get(key).map(rational_from_json).transpose();
    Ok(ParamsJson {
        lambda: r("lambda")?,
        a: r("a")?,
        b: r("b")?,
        n: obj.get("n").map(|x| count(x, "n")).transpose()?,
        c: r("c")?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gi, int, rat};
    use crate::spectrum::tests::spec;

    #[test]
    fn spectrum_round_trip() {
        let s = spec(&[(6, 0), (-2, 0), (-1, 3), (-1, -3), (-1, 3), (-1, -3)]);
        let v = spectrum_to_json(&s);
        assert_eq!(spectrum_from_json(&v).unwrap(), s);
        let text = r#"[{"re":"6"},{"re":"-1","im":"3","mult":2},{"re":"-1","im":"-3","mult":2},{"re":-2}]"#;
        assert_eq!(spectrum_from_json(&parse(text).unwrap()).unwrap(), s);
        let bad = r#"[{"re":"6"},{"re":"-1","im":"3"}]"#;
        assert!(spectrum_from_json(&parse(bad).unwrap()).is_err());
    }

    #[test]
    fn canonical_bytes() {
        let v = json!({ "b": rational_to_json(&rat(6, 4)), "a": gaussian_to_json(&gi(-1, 5)) });
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"a":{"im":"5","re":"-1"},"b":"3/2"}"#);
    }

    #[test]
    fn matrix_and_jcf_round_trip() {
        let m = RatMatrix::from_rows(vec![vec![rat(1, 2), int(0)], vec![int(-3), int(4)]]).unwrap();
        assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
        let j = JordanForm::new([(gi(-1, 3), vec![2]), (gi(-1, -3), vec![2]), (gi(6, 0), vec![1])]);
        assert_eq!(jcf_from_json(&jcf_to_json(&j)).unwrap(), j);
        assert!(matrix_from_json(&parse("[[1,2],[3]]").unwrap()).is_err());
    }
}
