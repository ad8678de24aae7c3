//! JSON forms shared by every subcommand. Rationals travel as strings ("p/q" or "p");
//! integers that may grow past 64 bits are emitted as exact JSON numbers.

use std::fmt::{Debug, Display};
use std::path::Path;

use num_bigint::BigInt;
use realcount::groebner::MultiPoly;
use realcount::lowerbounds::Poset;
use realcount::polytope::Support;
use realcount::qpoly::parse_rational;
use realcount::{Rational, UniPoly};
use serde_json::{json, Value};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain { code: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain { .. } => 1,
        }
    }

    pub fn payload(&self) -> Value {
        match self {
            CliError::Usage(m) => json!({"code": "UsageError", "message": m}),
            CliError::Domain { code, message } => json!({"code": code, "message": message}),
        }
    }
}

/// Domain error whose code is the library error variant name.
pub fn domain<E: Debug + Display>(e: E) -> CliError {
    let dbg = format!("{e:?}");
    let code = dbg.split(|c: char| !c.is_alphanumeric() && c != '_').next().unwrap_or("Error").to_string();
    CliError::Domain { code, message: e.to_string() }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parsed file contents; the output envelope of another command is unwrapped to its payload.
pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    match v {
        Value::Object(mut m) if m.contains_key("status") && m.contains_key("payload") => Ok(m.remove("payload").unwrap()),
        v => Ok(v),
    }
}

pub fn big(n: &BigInt) -> Value {
    serde_json::from_str(&n.to_string()).expect("integer literal")
}

pub fn rat(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rats(rs: &[Rational]) -> Value {
    Value::Array(rs.iter().map(rat).collect())
}

pub fn parse_rat(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| usage(e.to_string()))
}

pub fn rational(v: &Value) -> Result<Rational, CliError> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rat(&n.to_string()),
        _ => Err(usage(format!("expected a rational, got {v}"))),
    }
}

pub fn rational_list(v: &Value) -> Result<Vec<Rational>, CliError> {
    array(v)?.iter().map(rational).collect()
}

fn array(v: &Value) -> Result<&Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| usage(format!("expected an array, got {v}")))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key).ok_or_else(|| usage(format!("missing field {key:?}")))
}

pub fn int_list(v: &Value) -> Result<Vec<i64>, CliError> {
    array(v)?.iter().map(|x| x.as_i64().ok_or_else(|| usage(format!("expected an integer, got {x}")))).collect()
}

fn u32_list(v: &Value) -> Result<Vec<u32>, CliError> {
    array(v)?
        .iter()
        .map(|x| x.as_u64().and_then(|k| u32::try_from(k).ok()).ok_or_else(|| usage(format!("expected an exponent, got {x}"))))
        .collect()
}

/// `{"var":"t","coeffs":[c0, c1, …]}` or a bare coefficient array.
pub fn uni_poly(v: &Value) -> Result<(String, UniPoly), CliError> {
    let (var, coeffs) = match v {
        Value::Array(_) => ("t".to_string(), v),
        _ => (v.get("var").and_then(Value::as_str).unwrap_or("t").to_string(), field(v, "coeffs")?),
    };
    Ok((var, UniPoly::new(rational_list(coeffs)?)))
}

pub fn uni_poly_json(f: &UniPoly, var: &str) -> Value {
    json!({"var": var, "coeffs": rats(f.coeffs())})
}

pub fn multi_poly(v: &Value, vars: Option<&[String]>) -> Result<(Vec<String>, MultiPoly), CliError> {
    let names: Vec<String> = match (v.get("vars"), vars) {
        (Some(vs), _) => array(vs)?.iter().map(|x| x.as_str().map(str::to_string).ok_or_else(|| usage("variable names must be strings"))).collect::<Result<_, _>>()?,
        (None, Some(vs)) => vs.to_vec(),
        (None, None) => return Err(usage("missing field \"vars\"")),
    };
    if let Some(vs) = vars {
        if vs != names.as_slice() {
            return Err(usage("polynomials of one system must share their variables"));
        }
    }
    let mut f = MultiPoly::zero(names.len());
    for t in array(field(v, "terms")?)? {
        let e = u32_list(field(t, "exp")?)?;
        if e.len() != names.len() {
            return Err(usage(format!("exponent {e:?} does not match {} variables", names.len())));
        }
        f.add_term(e, rational(field(t, "coef")?)?);
    }
    Ok((names, f))
}

pub fn multi_poly_json(f: &MultiPoly, vars: &[String]) -> Value {
    let terms: Vec<Value> = f.terms().map(|(e, c)| json!({"exp": e, "coef": rat(c)})).collect();
    json!({"vars": vars, "terms": terms, "text": f.fmt_with(vars)})
}

/// A JSON array of polynomials, or `{"vars":[…],"polys":[{"terms":…},…]}`.
pub fn system(v: &Value) -> Result<(Vec<String>, Vec<MultiPoly>), CliError> {
    let (mut vars, items): (Option<Vec<String>>, &Vec<Value>) = match v {
        Value::Array(a) => (None, a),
        _ => {
            let vars = match v.get("vars") {
                Some(vs) => Some(array(vs)?.iter().filter_map(|x| x.as_str().map(str::to_string)).collect()),
                None => None,
            };
            (vars, array(field(v, "polys")?)?)
        }
    };
    if items.is_empty() {
        return Err(usage("empty system"));
    }
    let mut polys = Vec::with_capacity(items.len());
    for item in items {
        let (names, f) = multi_poly(item, vars.as_deref())?;
        vars = Some(names);
        polys.push(f);
    }
    Ok((vars.unwrap_or_default(), polys))
}

/// `{"support":[[…]…],"coeffs":[[…]…]}` with the origin first, or a polynomial system whose
/// monomials are collected in order of first appearance after the constant.
pub fn sparse(v: &Value) -> Result<(Vec<Vec<i64>>, Vec<Vec<Rational>>), CliError> {
    if let Some(s) = v.get("support") {
        let support: Vec<Vec<i64>> = array(s)?.iter().map(int_list).collect::<Result<_, _>>()?;
        let coeffs: Vec<Vec<Rational>> = array(field(v, "coeffs")?)?.iter().map(rational_list).collect::<Result<_, _>>()?;
        return Ok((support, coeffs));
    }
    let (vars, polys) = system(v)?;
    let mut support: Vec<Vec<u32>> = vec![vec![0; vars.len()]];
    for f in &polys {
        for (e, _) in f.terms() {
            if !support.contains(e) {
                support.push(e.clone());
            }
        }
    }
    let coeffs = polys.iter().map(|f| support.iter().map(|e| f.coeff(e)).collect()).collect();
    let support = support.into_iter().map(|e| e.into_iter().map(i64::from).collect()).collect();
    Ok((support, coeffs))
}

/// `{"rows":[[…]…]}` or a bare array of rows.
pub fn int_rows(v: &Value) -> Result<Vec<Vec<i64>>, CliError> {
    let rows = v.get("rows").unwrap_or(v);
    array(rows)?.iter().map(int_list).collect()
}

pub fn support(v: &Value) -> Result<Support, CliError> {
    let points: Vec<Vec<i64>> = array(field(v, "points")?)?.iter().map(int_list).collect::<Result<_, _>>()?;
    let dim = match v.get("dim") {
        Some(d) => d.as_u64().ok_or_else(|| usage("dim must be a nonnegative integer"))? as usize,
        None => points.first().map_or(0, Vec::len),
    };
    Support::new(dim, points).map_err(domain)
}

pub fn poset(v: &Value) -> Result<Poset, CliError> {
    let names = |x: &Value| -> Result<String, CliError> {
        match x {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(usage(format!("bad element {x}"))),
        }
    };
    let elements: Vec<String> = array(field(v, "elements")?)?.iter().map(names).collect::<Result<_, _>>()?;
    let covers: Vec<(String, String)> = match v.get("covers") {
        None => vec![],
        Some(c) => array(c)?
            .iter()
            .map(|pair| match pair.as_array().map(Vec::as_slice) {
                Some([a, b]) => Ok((names(a)?, names(b)?)),
                _ => Err(usage(format!("cover {pair} must be a pair"))),
            })
            .collect::<Result<_, _>>()?,
    };
    Poset::from_named(&elements, &covers).map_err(domain)
}

pub fn comma_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, CliError> {
    s.split(',').map(|x| x.trim().parse().map_err(|_| usage(format!("bad list entry {x:?}")))).collect()
}
