//! JSON specification documents for points, integer sets and Følner sequences.
//!
//! Every spec is accepted as inline JSON, as a bare name (`example51`,
//! `standard`, `example52.A`, ...) or as a path to a file holding either.

use std::path::Path;

use num_bigint::BigInt;
use orbitdensity_core::density::visit_set;
use orbitdensity_core::expr::Expr;
use orbitdensity_core::folner::FolnerSequence;
use orbitdensity_core::setclass::{example52_sets, example53_support, IntegerSet, IntervalFamily};
use orbitdensity_core::shift::{Alphabet, Cylinder, Symbol, SymbolicPoint, Word};
use serde_json::{Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("{origin}: invalid JSON: {source}")]
    Json { origin: String, source: serde_json::Error },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn field_err(path: &str, message: impl Into<String>) -> SpecError {
    SpecError::Field { path: path.to_string(), message: message.into() }
}

/// Reads a spec argument: inline JSON, a file path, or a bare name.
pub fn load(arg: &str) -> Result<Value, SpecError> {
    let text = arg.trim();
    if text.starts_with(['{', '[', '"']) {
        return serde_json::from_str(text).map_err(|source| SpecError::Json { origin: "inline spec".into(), source });
    }
    let path = Path::new(text);
    if path.is_file() {
        let body = std::fs::read_to_string(path).map_err(|source| SpecError::Io { path: text.to_string(), source })?;
        let body = body.trim();
        if body.starts_with(['{', '[', '"']) {
            return serde_json::from_str(body).map_err(|source| SpecError::Json { origin: text.to_string(), source });
        }
        return Ok(Value::String(body.to_string()));
    }
    Ok(Value::String(text.to_string()))
}

struct Obj<'a> {
    path: &'a str,
    map: &'a Map<String, Value>,
}

impl<'a> Obj<'a> {
    fn new(path: &'a str, value: &'a Value) -> Result<Self, SpecError> {
        match value {
            Value::Object(map) => Ok(Obj { path, map }),
            _ => Err(field_err(path, "expected an object or a known name")),
        }
    }

    fn sub(&self, key: &str) -> String {
        format!("{}.{key}", self.path)
    }

    fn kind(&self) -> Result<&'a str, SpecError> {
        match self.map.get("type") {
            Some(Value::String(s)) => Ok(s),
            Some(_) => Err(field_err(&self.sub("type"), "expected a string")),
            None => Err(field_err(&self.sub("type"), "missing")),
        }
    }

    fn get(&self, key: &str) -> Result<&'a Value, SpecError> {
        self.map.get(key).ok_or_else(|| field_err(&self.sub(key), "missing"))
    }

    fn int(&self, key: &str) -> Result<i64, SpecError> {
        self.get(key)?.as_i64().ok_or_else(|| field_err(&self.sub(key), "expected an integer"))
    }

    fn int_or(&self, key: &str, default: i64) -> Result<i64, SpecError> {
        if self.map.contains_key(key) {
            self.int(key)
        } else {
            Ok(default)
        }
    }

    fn opt_int(&self, key: &str) -> Result<Option<i64>, SpecError> {
        match self.map.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => v.as_i64().map(Some).ok_or_else(|| field_err(&self.sub(key), "expected an integer or null")),
        }
    }

    fn uint(&self, key: &str) -> Result<u64, SpecError> {
        self.get(key)?.as_u64().ok_or_else(|| field_err(&self.sub(key), "expected a nonnegative integer"))
    }

    fn string(&self, key: &str) -> Result<&'a str, SpecError> {
        self.get(key)?.as_str().ok_or_else(|| field_err(&self.sub(key), "expected a string"))
    }

    fn array(&self, key: &str) -> Result<&'a Vec<Value>, SpecError> {
        self.get(key)?.as_array().ok_or_else(|| field_err(&self.sub(key), "expected an array"))
    }
}

fn core_err(path: &str, e: orbitdensity_core::Error) -> SpecError {
    field_err(path, e.to_string())
}

pub fn parse_point(value: &Value) -> Result<SymbolicPoint, SpecError> {
    point_at("point", value)
}

fn point_at(path: &str, value: &Value) -> Result<SymbolicPoint, SpecError> {
    if let Value::String(name) = value {
        return match name.as_str() {
            "example51" => Ok(SymbolicPoint::example51()),
            "word_enumeration" => Ok(SymbolicPoint::word_enumeration()),
            "z" => Ok(SymbolicPoint::indicator(example53_support())),
            _ => Err(field_err(path, format!("unknown point name {name:?}"))),
        };
    }
    let o = Obj::new(path, value)?;
    let point = match o.kind()? {
        "periodic" => {
            let word = Word::parse(o.string("word")?).map_err(|e| core_err(&o.sub("word"), e))?;
            let size = o.int_or("alphabet", 2)?;
            let alphabet = u16::try_from(size)
                .ok()
                .and_then(|s| Alphabet::new(s).ok())
                .ok_or_else(|| field_err(&o.sub("alphabet"), "expected a size in 2..=36"))?;
            SymbolicPoint::periodic(alphabet, &word, o.int_or("phase", 0)?).map_err(|e| core_err(&o.sub("word"), e))?
        }
        "indicator" => SymbolicPoint::indicator(set_at(&o.sub("set"), o.get("set")?)?),
        "example51" => SymbolicPoint::example51(),
        "word_enumeration" => SymbolicPoint::word_enumeration(),
        "mutation" => {
            let base = point_at(&o.sub("base"), o.get("base")?)?;
            let mut patches = Vec::new();
            for (n, p) in o.array("patches")?.iter().enumerate() {
                let at = format!("{}[{n}]", o.sub("patches"));
                let pair =
                    p.as_array().filter(|a| a.len() == 2).ok_or_else(|| field_err(&at, "expected [index, symbol]"))?;
                let i = pair[0].as_i64().ok_or_else(|| field_err(&at, "index must be an integer"))?;
                let s = pair[1]
                    .as_u64()
                    .and_then(|s| Symbol::try_from(s).ok())
                    .ok_or_else(|| field_err(&at, "symbol must be a small nonnegative integer"))?;
                patches.push((i, s));
            }
            base.mutate(&patches).map_err(|e| core_err(&o.sub("patches"), e))?
        }
        other => return Err(field_err(&o.sub("type"), format!("unknown point type {other:?}"))),
    };
    match o.opt_int("shift")? {
        Some(g) => Ok(point.shift(g)),
        None => Ok(point),
    }
}

pub fn parse_set(value: &Value) -> Result<IntegerSet, SpecError> {
    set_at("set", value)
}

fn named_set(name: &str) -> Option<IntegerSet> {
    let (a, b, c) = example52_sets();
    Some(match name {
        "example52.A" => a,
        "example52.B" => b,
        "example52.C" => c,
        "example53_support" => example53_support(),
        "all" => IntegerSet::all(),
        "empty" => IntegerSet::empty(),
        "naturals" => IntegerSet::naturals(),
        "positives" => IntegerSet::positives(),
        _ => return None,
    })
}

fn set_list(o: &Obj<'_>) -> Result<Vec<IntegerSet>, SpecError> {
    let parts = o.array("of")?;
    if parts.is_empty() {
        return Err(field_err(&o.sub("of"), "expected at least one set"));
    }
    parts.iter().enumerate().map(|(n, v)| set_at(&format!("{}[{n}]", o.sub("of")), v)).collect()
}

fn set_at(path: &str, value: &Value) -> Result<IntegerSet, SpecError> {
    if let Value::String(name) = value {
        return named_set(name).ok_or_else(|| field_err(path, format!("unknown set name {name:?}")));
    }
    let o = Obj::new(path, value)?;
    Ok(match o.kind()? {
        "finite" => {
            let elems = o.array("elems")?;
            let mut out = Vec::with_capacity(elems.len());
            for (n, e) in elems.iter().enumerate() {
                out.push(
                    e.as_i64().ok_or_else(|| field_err(&format!("{}[{n}]", o.sub("elems")), "expected an integer"))?,
                );
            }
            IntegerSet::finite(out)
        }
        "progression" => {
            let m = o.uint("m")?;
            IntegerSet::progression(m, o.int_or("r", 0)?).map_err(|e| core_err(&o.sub("m"), e))?
        }
        "interval" => IntegerSet::interval(o.opt_int("lo")?, o.opt_int("hi")?),
        "interval_family" => {
            let start = parse_expr(o.string("start")?).map_err(|m| field_err(&o.sub("start"), m))?;
            let end = parse_expr(o.string("end")?).map_err(|m| field_err(&o.sub("end"), m))?;
            let from = if o.map.contains_key("from") { o.uint("from")? } else { 1 };
            IntegerSet::family(IntervalFamily::new(from, start, end).map_err(|e| core_err(o.path, e))?)
        }
        "union" => set_list(&o)?.into_iter().reduce(IntegerSet::union).expect("nonempty"),
        "intersection" => set_list(&o)?.into_iter().reduce(IntegerSet::intersect).expect("nonempty"),
        "complement" => set_at(&o.sub("of"), o.get("of")?)?.complement(),
        "negate" => set_at(&o.sub("of"), o.get("of")?)?.negate(),
        "symmetrize" => set_at(&o.sub("of"), o.get("of")?)?.symmetrize(),
        "translate" => set_at(&o.sub("of"), o.get("of")?)?.translate(o.int("g")?),
        "visits" => {
            let x = point_at(&o.sub("point"), o.get("point")?)?;
            let word = Word::parse(o.string("word")?).map_err(|e| core_err(&o.sub("word"), e))?;
            visit_set(&x, &Cylinder::new(word, o.int_or("position", 0)?))
        }
        other => return Err(field_err(&o.sub("type"), format!("unknown set type {other:?}"))),
    })
}

pub fn parse_folner(value: &Value) -> Result<FolnerSequence, SpecError> {
    folner_at("folner", value)
}

fn folner_at(path: &str, value: &Value) -> Result<FolnerSequence, SpecError> {
    let named = |name: &str| match name {
        "standard" => Some(FolnerSequence::standard()),
        "example53_F" => Some(FolnerSequence::example53_f()),
        "example53_H" => Some(FolnerSequence::example53_h()),
        _ => None,
    };
    if let Value::String(name) = value {
        return named(name).ok_or_else(|| field_err(path, format!("unknown Følner sequence {name:?}")));
    }
    let o = Obj::new(path, value)?;
    let kind = o.kind()?;
    if let Some(f) = named(kind) {
        return Ok(f);
    }
    match kind {
        "translate" => Ok(folner_at(&o.sub("base"), o.get("base")?)?.translate(o.int("g")?)),
        "interval_family" => {
            let start = parse_expr(o.string("start")?).map_err(|m| field_err(&o.sub("start"), m))?;
            let end = parse_expr(o.string("end")?).map_err(|m| field_err(&o.sub("end"), m))?;
            let label = format!("interval_family([{start}, {end}])");
            Ok(FolnerSequence::interval_family(label, start, end))
        }
        other => Err(field_err(&o.sub("type"), format!("unknown Følner type {other:?}"))),
    }
}

/// Parses a cylinder written `word@position`, or just `word` for position 0.
pub fn parse_cylinder(text: &str) -> Result<Cylinder, SpecError> {
    let (word, pos) = match text.split_once('@') {
        Some((w, p)) => {
            (w, p.trim().parse::<i64>().map_err(|_| field_err("cylinder", format!("bad position in {text:?}")))?)
        }
        None => (text, 0),
    };
    let word = Word::parse(word.trim()).map_err(|e| core_err("cylinder", e))?;
    Ok(Cylinder::new(word, pos))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    N,
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<Tok>, String> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                out.push(Tok::Int(digits.parse().map_err(|_| format!("integer {digits} is too large"))?));
                continue;
            }
            b'n' => Tok::N,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::Open,
            b')' => Tok::Close,
            _ => return Err(format!("unexpected character {:?} at offset {i}", c as char)),
        };
        out.push(tok);
        i += 1;
    }
    Ok(out)
}

struct ExprParser {
    toks: Vec<Tok>,
    pos: usize,
}

impl ExprParser {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).copied()
    }

    fn eat(&mut self, t: Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, String> {
        let mut lhs = self.product()?;
        loop {
            if self.eat(Tok::Plus) {
                lhs = lhs.add(self.product()?);
            } else if self.eat(Tok::Minus) {
                lhs = lhs.sub(self.product()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, String> {
        let mut lhs = self.factor()?;
        while self.eat(Tok::Star) {
            lhs = lhs.mul(self.factor()?);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, String> {
        if self.eat(Tok::Minus) {
            return Ok(match self.factor()? {
                Expr::Const(c) => Expr::Const(-c),
                e => Expr::constant(-1).mul(e),
            });
        }
        let atom = match self.peek() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Expr::constant(v)
            }
            Some(Tok::N) => {
                self.pos += 1;
                Expr::Index
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(Tok::Close) {
                    return Err("missing ')'".into());
                }
                inner
            }
            other => return Err(format!("expected a number, n or '(' but found {other:?}")),
        };
        if self.eat(Tok::Caret) {
            if !self.eat(Tok::N) {
                return Err("only powers of the form base^n are supported".into());
            }
            return match atom {
                Expr::Const(base) => Ok(Expr::Pow(base)),
                _ => Err("the base of ^n must be an integer constant".into()),
            };
        }
        Ok(atom)
    }
}

/// Parses closed-form expressions such as `10^n + 10*n - 1`.
pub fn parse_expr(text: &str) -> Result<Expr, String> {
    let mut p = ExprParser { toks: tokenize(text)?, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input in {text:?}"));
    }
    Ok(e)
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.05`, exactly.
pub fn parse_rational(text: &str) -> Result<orbitdensity_core::Rational, String> {
    let t = text.trim();
    let bad = || format!("{t:?} is not a rational number");
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q == BigInt::from(0) {
            return Err(format!("{t:?} has a zero denominator"));
        }
        return Ok(orbitdensity_core::Rational::new(p, q));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = BigInt::from(10u32).pow(frac.len() as u32);
    let value = orbitdensity_core::Rational::new(digits, scale);
    Ok(if neg { -value } else { value })
}
