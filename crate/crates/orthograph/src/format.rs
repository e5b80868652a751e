//! JSON encodings and the plain-text polynomial notation used by the
//! golden tables, e.g. `x12^2x23 - 2/(n+2) x12x13 - (n-2)x23`.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use orthograph_core::inversion::FourierTarget;
use orthograph_core::polyspace::ConcretePoly;
use orthograph_core::symnum::Style;
use orthograph_core::{Edge, Graph, IntPoly, InvariantPoly, RatFunc, Setting, Vertex};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Core(#[from] orthograph_core::Error),
}

fn json_err(msg: impl Into<String>) -> ParseError {
    ParseError::Json(msg.into())
}

// ---------------------------------------------------------------------------
// JSON.

pub fn edges_to_json(edges: &[Edge]) -> Value {
    Value::Array(edges.iter().map(|e| json!(e.vertices())).collect())
}

pub fn graph_to_json(g: &Graph) -> Value {
    json!({
        "setting": g.setting().name(),
        "vertices": g.vertices(),
        "edges": edges_to_json(g.edges()),
    })
}

fn parse_edges(v: &Value) -> Result<Vec<Edge>, ParseError> {
    let arr = v.as_array().ok_or_else(|| json_err("edges must be an array"))?;
    arr.iter()
        .map(|e| {
            let vs = e.as_array().ok_or_else(|| json_err("an edge must be an array of vertices"))?;
            let vs: Vec<Vertex> = vs
                .iter()
                .map(|x| {
                    x.as_u64()
                        .and_then(|x| Vertex::try_from(x).ok())
                        .ok_or_else(|| json_err("vertex labels are nonnegative integers"))
                })
                .collect::<Result<_, _>>()?;
            Ok(Edge::new(vs))
        })
        .collect()
}

fn parse_vertices(v: &Value) -> Result<Vec<Vertex>, ParseError> {
    v.as_array()
        .ok_or_else(|| json_err("vertices must be an array"))?
        .iter()
        .map(|x| x.as_u64().and_then(|x| Vertex::try_from(x).ok()).ok_or_else(|| json_err("bad vertex label")))
        .collect()
}

fn parse_setting(v: Option<&Value>, default: Option<Setting>) -> Result<Setting, ParseError> {
    match v {
        Some(s) => s
            .as_str()
            .and_then(Setting::from_name)
            .ok_or_else(|| json_err("setting must be gaussian, spherical or boolean")),
        None => default.ok_or_else(|| json_err("missing setting")),
    }
}

/// A graph from either a bare edge list `[[1,2],[2,3]]` or an object with
/// `edges` and optional `setting` and `vertices`.
pub fn graph_from_json(text: &str, setting: Option<Setting>) -> Result<Graph, ParseError> {
    let v: Value = serde_json::from_str(text).map_err(|e| json_err(e.to_string()))?;
    graph_from_value(&v, setting)
}

pub fn graph_from_value(v: &Value, setting: Option<Setting>) -> Result<Graph, ParseError> {
    let (edges, vertices, setting) = match v {
        Value::Array(_) => (parse_edges(v)?, None, parse_setting(None, setting)?),
        Value::Object(m) => {
            let edges = parse_edges(m.get("edges").ok_or_else(|| json_err("missing edges"))?)?;
            let vertices = m.get("vertices").map(parse_vertices).transpose()?;
            (edges, vertices, parse_setting(m.get("setting"), setting)?)
        }
        _ => return Err(json_err("expected an edge list or a graph object")),
    };
    let vertices =
        vertices.unwrap_or_else(|| edges.iter().flat_map(|e| e.vertices().iter().copied()).collect());
    Ok(Graph::new(setting, vertices, edges)?)
}

pub fn intpoly_to_json(p: &IntPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn ratfunc_to_json(r: &RatFunc) -> Value {
    json!({
        "text": r.render(Style::Ascii),
        "num": intpoly_to_json(r.numer()),
        "den": intpoly_to_json(r.denom()),
    })
}

fn intpoly_from_json(v: &Value) -> Result<IntPoly, ParseError> {
    let coeffs = v
        .as_array()
        .ok_or_else(|| json_err("polynomial coefficients must be an array"))?
        .iter()
        .map(|c| {
            c.as_str()
                .and_then(|s| BigInt::from_str(s).ok())
                .ok_or_else(|| json_err("coefficients are decimal strings"))
        })
        .collect::<Result<_, _>>()?;
    Ok(IntPoly::from_coeffs(coeffs))
}

pub fn ratfunc_from_json(v: &Value) -> Result<RatFunc, ParseError> {
    let num = intpoly_from_json(v.get("num").ok_or_else(|| json_err("missing num"))?)?;
    let den = intpoly_from_json(v.get("den").ok_or_else(|| json_err("missing den"))?)?;
    Ok(RatFunc::new(num, den)?)
}

pub fn poly_to_json(p: &InvariantPoly) -> Value {
    let terms: Vec<Value> = p
        .raw_terms()
        .iter()
        .map(|(e, c)| json!({"edges": edges_to_json(e), "coeff": ratfunc_to_json(c)}))
        .collect();
    json!({
        "setting": p.setting().name(),
        "vertices": p.vertices(),
        "text": p.render(Style::Ascii),
        "terms": terms,
    })
}

pub fn poly_from_json(v: &Value) -> Result<InvariantPoly, ParseError> {
    let setting = parse_setting(v.get("setting"), None)?;
    let vertices = parse_vertices(v.get("vertices").ok_or_else(|| json_err("missing vertices"))?)?;
    let mut p = InvariantPoly::zero(setting, &vertices);
    for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| json_err("missing terms"))? {
        let edges = parse_edges(t.get("edges").ok_or_else(|| json_err("missing edges"))?)?;
        Graph::new(setting, vertices.iter().copied(), edges.iter().cloned())?;
        let c = ratfunc_from_json(t.get("coeff").ok_or_else(|| json_err("missing coeff"))?)?;
        p.add_term(edges, c);
    }
    Ok(p)
}

pub fn concrete_to_json(p: &ConcretePoly, n: i64) -> Value {
    let terms: Vec<Value> = p
        .raw_terms()
        .iter()
        .map(|(e, c)| json!({"edges": edges_to_json(e), "coeff": c.to_string()}))
        .collect();
    json!({
        "setting": p.setting().name(),
        "vertices": p.vertices(),
        "n": n,
        "text": p.render(Style::Ascii),
        "terms": terms,
    })
}

pub fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    BigRational::from_str(s.trim()).map_err(|_| json_err(format!("not a rational number: {s:?}")))
}

/// `{"setting", "vertices", "n", "targets": [{"edges", "value"}]}`.
pub fn fourier_target_from_json(text: &str) -> Result<(Vec<Graph>, FourierTarget), ParseError> {
    let v: Value = serde_json::from_str(text).map_err(|e| json_err(e.to_string()))?;
    let setting = parse_setting(v.get("setting"), None)?;
    let n = v.get("n").and_then(Value::as_i64).ok_or_else(|| json_err("missing integer n"))?;
    let targets = v.get("targets").and_then(Value::as_array).ok_or_else(|| json_err("missing targets"))?;
    let mut edge_sets = Vec::new();
    for t in targets {
        let edges = parse_edges(t.get("edges").ok_or_else(|| json_err("missing edges"))?)?;
        let value = match t.get("value") {
            Some(Value::String(s)) => parse_rational(s)?,
            Some(Value::Number(x)) => parse_rational(&x.to_string())?,
            _ => return Err(json_err("value must be a rational string or integer")),
        };
        edge_sets.push((edges, value));
    }
    let vertices: Vec<Vertex> = match v.get("vertices") {
        Some(vs) => parse_vertices(vs)?,
        None => edge_sets.iter().flat_map(|(e, _)| e.iter().flat_map(|x| x.vertices().to_vec())).collect(),
    };
    let mut graphs = Vec::new();
    let mut out = Vec::new();
    for (edges, value) in edge_sets {
        let g = Graph::new(setting, vertices.iter().copied(), edges)?;
        graphs.push(g.clone());
        out.push((g, value));
    }
    Ok((graphs, FourierTarget { targets: out, n }))
}

// ---------------------------------------------------------------------------
// Plain-text notation.

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    N,
    Var(Vec<Vertex>),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn superscript(c: char) -> Option<u32> {
    "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|s| s == c).map(|d| d as u32)
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
    let mut out = Vec::new();
    for (lineno, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            let tok = match c {
                ' ' | '\t' => {
                    i += 1;
                    continue;
                }
                '+' => Tok::Plus,
                '-' | '−' => Tok::Minus,
                '*' | '·' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                'n' => Tok::N,
                'x' => {
                    let start = i + 1;
                    let mut j = start;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == start {
                        return Err(ParseError::Syntax {
                            line: lineno + 1,
                            column: col,
                            message: "expected vertex digits after x".into(),
                        });
                    }
                    let vs = chars[start..j].iter().map(|d| d.to_digit(10).unwrap() as Vertex).collect();
                    out.push((Tok::Var(vs), lineno + 1, col));
                    i = j;
                    continue;
                }
                s if superscript(s).is_some() => {
                    let mut j = i;
                    let mut e = BigInt::from(0u32);
                    while let Some(d) = chars.get(j).copied().and_then(superscript) {
                        e = e * 10u32 + d;
                        j += 1;
                    }
                    out.push((Tok::Caret, lineno + 1, col));
                    out.push((Tok::Num(e), lineno + 1, col));
                    i = j;
                    continue;
                }
                d if d.is_ascii_digit() => {
                    let mut j = i;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    let s: String = chars[i..j].iter().collect();
                    out.push((Tok::Num(s.parse().unwrap()), lineno + 1, col));
                    i = j;
                    continue;
                }
                other => {
                    return Err(ParseError::Syntax {
                        line: lineno + 1,
                        column: col,
                        message: format!("unexpected character {other:?}"),
                    })
                }
            };
            out.push((tok, lineno + 1, col));
            i += 1;
        }
    }
    Ok(out)
}

/// Polynomial under construction: edge multiset → coefficient.
type Terms = BTreeMap<Vec<Edge>, RatFunc>;

fn scalar(r: RatFunc) -> Terms {
    let mut t = Terms::new();
    if !r.is_zero() {
        t.insert(Vec::new(), r);
    }
    t
}

fn add_into(acc: &mut Terms, other: Terms, sign: bool) {
    for (k, v) in other {
        let v = if sign { v } else { -v };
        let slot = acc.entry(k.clone()).or_default();
        *slot += &v;
        if slot.is_zero() {
            acc.remove(&k);
        }
    }
}

fn mul_terms(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let mut k: Vec<Edge> = ka.iter().chain(kb).cloned().collect();
            k.sort_unstable();
            add_into(&mut out, BTreeMap::from([(k, va * vb)]), true);
        }
    }
    out
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    setting: Setting,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self.toks.get(self.pos).map_or_else(
            || self.toks.last().map_or((1, 1), |t| (t.1, t.2 + 1)),
            |t| (t.1, t.2),
        );
        ParseError::Syntax { line, column, message: message.into() }
    }

    fn expr(&mut self) -> Result<Terms, ParseError> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            let sign = match t {
                Tok::Plus => true,
                Tok::Minus => false,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            add_into(&mut acc, rhs, sign);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Terms, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = mul_terms(&acc, &rhs);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    let d = match (rhs.len(), rhs.get(&Vec::new())) {
                        (1, Some(d)) => d.clone(),
                        (0, _) => return Err(self.error("division by zero")),
                        _ => return Err(self.error("only division by expressions in n is allowed")),
                    };
                    let inv = d.inv().map_err(|e| self.error(e.to_string()))?;
                    acc = mul_terms(&acc, &scalar(inv));
                }
                Some(Tok::Num(_) | Tok::N | Tok::Var(_) | Tok::LParen) => {
                    let rhs = self.power()?;
                    acc = mul_terms(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Terms, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(mul_terms(&inner, &scalar(RatFunc::from_int(-1))));
        }
        if self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Terms, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let Some(Tok::Num(k)) = self.peek().cloned() else {
            return Err(self.error("expected an integer exponent"));
        };
        self.pos += 1;
        let k: u32 = k.try_into().map_err(|_| self.error("exponent too large"))?;
        let mut out = scalar(RatFunc::one());
        for _ in 0..k {
            out = mul_terms(&out, &base);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Terms, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error("unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Num(k) => Ok(scalar(RatFunc::from_int(k))),
            Tok::N => Ok(scalar(RatFunc::var())),
            Tok::Var(vs) => {
                let e = Edge::new(vs);
                let ok = match self.setting {
                    Setting::Boolean => e.len() >= 2,
                    _ => e.len() == 2,
                };
                if !ok {
                    self.pos -= 1;
                    return Err(self.error(format!("bad variable for the {} setting", self.setting)));
                }
                Ok(BTreeMap::from([(vec![e], RatFunc::one())]))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.error("expected a number, n, a variable or '('"))
            }
        }
    }
}

/// Parses the plain-text notation. Variables are `x` followed by one digit
/// per vertex; `n` is the dimension; juxtaposition multiplies. The vertex
/// set is `vertices` if given, otherwise every vertex that appears.
pub fn parse_poly(src: &str, setting: Setting, vertices: Option<&[Vertex]>) -> Result<InvariantPoly, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, setting };
    let terms = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.error("trailing input"));
    }
    let vs: Vec<Vertex> = match vertices {
        Some(v) => v.to_vec(),
        None => {
            let mut v: Vec<Vertex> = terms.keys().flatten().flat_map(|e| e.vertices().to_vec()).collect();
            v.sort_unstable();
            v.dedup();
            v
        }
    };
    let mut out = InvariantPoly::zero(setting, &vs);
    for (edges, c) in terms {
        Graph::new(setting, vs.iter().copied(), edges.iter().cloned())?;
        out.add_term(edges, c);
    }
    Ok(out)
}

/// Parses a scalar expression in `n`.
pub fn parse_ratfunc(src: &str) -> Result<RatFunc, ParseError> {
    let p = parse_poly(src, Setting::Gaussian, Some(&[]))?;
    match p.raw_terms().len() {
        0 => Ok(RatFunc::zero()),
        1 => p
            .raw_terms()
            .get(&Vec::new())
            .cloned()
            .ok_or_else(|| ParseError::Syntax { line: 1, column: 1, message: "expected an expression in n".into() }),
        _ => Err(ParseError::Syntax { line: 1, column: 1, message: "expected an expression in n".into() }),
    }
}

/// Parses a single monomial such as `x12^2x23` into its graph.
pub fn parse_monomial(src: &str, setting: Setting) -> Result<Graph, ParseError> {
    let p = parse_poly(src, setting, None)?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((g, c)), None) if c.is_one() => Ok(g),
        _ => Err(ParseError::Syntax { line: 1, column: 1, message: format!("{src:?} is not a monomial") }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_implicit_products_and_fractions() {
        let p = parse_poly("x12^2x23 - 2/(n+2) x12x13 - (n-2)x23", Setting::Spherical, None).unwrap();
        assert_eq!(p.len(), 3);
        let g = parse_monomial("x12x13", Setting::Spherical).unwrap();
        let want = RatFunc::new(IntPoly::constant(-2), IntPoly::affine(1, 2)).unwrap();
        assert_eq!(p.coeff(&g.on_vertex_set(&[1, 2, 3]).unwrap()), want);
    }

    #[test]
    fn reports_position() {
        let err = parse_poly("x12 + ?", Setting::Gaussian, None).unwrap_err();
        assert_eq!(err, ParseError::Syntax { line: 1, column: 7, message: "unexpected character '?'".into() });
    }

    #[test]
    fn ratfunc_json_round_trip() {
        let r = parse_ratfunc("-8(n-1)(n-2)(n-4)/(n^8(n+2)^4)").unwrap();
        assert_eq!(ratfunc_from_json(&ratfunc_to_json(&r)).unwrap(), r);
    }
}
