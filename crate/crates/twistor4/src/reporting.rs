//! Geometry documents, report assembly, and the entry points behind the CLI.
//!
//! A geometry document is a small JSON object:
//!
//! ```json
//! {
//!   "kind": "lie_group",
//!   "structure_constants": [[["0", ...], ...], ...],
//!   "gram": [["1", "0", "0", "0"], ...],
//!   "orientation": 1,
//!   "tau": ["0", "0", "0", "0"],
//!   "params": {}
//! }
//! ```
//!
//! Every scalar entry is a rational written as `"p/q"`, `"n"`, or a finite
//! decimal; documents never carry floats, so a document round-trips through
//! the exact backend without loss.  `kind` selects the backend: `lie_group`
//! gives the structure constants and gram matrix directly, `catalog` names a
//! built-in family through `params` (`name`, `lambda`, `k`), and `chart`
//! names a coordinate metric (`metric`, `point`).
//!
//! Reports are built as JSON values whose object keys live in sorted maps,
//! so serializing the same analysis twice yields identical bytes; the text
//! format is a plain walk of the same value.  The analyze report contains
//!
//! * `geometry`: an echo of what was analyzed,
//! * `curvature`: `ricci`, `scalar`, `wplus_norm2`, `wminus_norm2` plus the
//!   Einstein / self-dual / anti-self-dual flags,
//! * `weyl`: `conf_scalar` for θ = τ and `ew_residual` for θ = −τ,
//! * `checks`: the sixteen (m, component pair) verdicts with breakdowns,
//! * `audit`: the three-route equivalence table (exact backends only).
//!
//! Chart metrics may be rescaled by `conformal(base, expr)` where `expr` is
//! a function of the coordinates in a tiny grammar: numbers, `x1`..`x4`,
//! `|x|^2` (also spelled `normsq`), `exp`, `log`, `+ - * / ^`, unary minus,
//! and parentheses.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::bivector_algebra::Summand;
use crate::catalog::{make_flat, make_g_lambda, make_hopf, tau_product_grid, CatalogError};
use crate::chart_geometry::{
    conformal_rescale, curvature_at, euclidean, round_sphere, ChartError, ChartMetric, ScalarFn,
};
use crate::curvature_analysis::{decompose, is_asd, is_einstein, is_sd};
use crate::integrability_checks::{audit_equivalence, integrability_report, AuditTable, CheckRecord};
use crate::invariant_geometry::{
    analyze, structure_zero, GeometryError, InvariantGeometry, LieAlgebra4,
};
use crate::linalg::{Mat4, Vec4};
use crate::scalar::{rat, Rat, Scalar};
use crate::twistor_structures::sample_fibers;
use crate::weyl_structures::{
    conformal_scalar_with, einstein_weyl_residual_with, weyl_scan_context,
};

#[derive(Debug, Error, PartialEq)]
pub enum ReportError {
    /// Malformed document, expression, or flag value.
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed input that the geometry layer rejects.
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl From<GeometryError> for ReportError {
    fn from(e: GeometryError) -> Self {
        ReportError::Invalid(e.to_string())
    }
}

impl From<ChartError> for ReportError {
    fn from(e: ChartError) -> Self {
        ReportError::Invalid(e.to_string())
    }
}

impl From<CatalogError> for ReportError {
    fn from(e: CatalogError) -> Self {
        ReportError::Invalid(e.to_string())
    }
}

// ---------------------------------------------------------------------------
// Rational parsing and printing.

/// Parse `"p/q"`, an integer, or a finite decimal into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rat, ReportError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ReportError::Parse("empty rational".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| ReportError::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| ReportError::Parse(format!("bad denominator in {s:?}")))?;
        if d == BigInt::from(0) {
            return Err(ReportError::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(n, d));
    }
    if s.contains('.') {
        return parse_decimal(s).ok_or_else(|| ReportError::Parse(format!("bad decimal {s:?}")));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| ReportError::Parse(format!("bad rational {s:?}")))?;
    Ok(Rat::from_integer(n))
}

fn parse_decimal(s: &str) -> Option<Rat> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.')?;
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
        || (int_part.is_empty() && frac_part.is_empty())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits.parse().ok()?;
    let d = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(Rat::new(if neg { -n } else { n }, d))
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn rat_str(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Comma-separated rationals; an all-whitespace input is the empty list.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rat>, ReportError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_rational).collect()
}

pub fn parse_tau(text: &str) -> Result<Vec4<Rat>, ReportError> {
    let list = parse_rational_list(text)?;
    if list.len() != 4 {
        return Err(ReportError::Parse(format!(
            "tau needs 4 components, got {}",
            list.len()
        )));
    }
    Ok(std::array::from_fn(|i| list[i].clone()))
}

pub fn parse_point(text: &str) -> Result<[f64; 4], ReportError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(ReportError::Parse(format!(
            "point needs 4 coordinates, got {}",
            parts.len()
        )));
    }
    let mut out = [0.0; 4];
    for (i, p) in parts.iter().enumerate() {
        out[i] = p
            .parse()
            .map_err(|_| ReportError::Parse(format!("bad coordinate {p:?}")))?;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Geometry documents.

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryDocument {
    pub kind: String,
    #[serde(default)]
    pub structure_constants: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default)]
    pub gram: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub orientation: Option<i8>,
    #[serde(default)]
    pub tau: Option<Vec<String>>,
    #[serde(default)]
    pub params: Option<BTreeMap<String, String>>,
}

pub fn parse_document(text: &str) -> Result<GeometryDocument, ReportError> {
    serde_json::from_str(text).map_err(|e| ReportError::Parse(format!("document: {e}")))
}

/// What a target resolves to before analysis.
#[derive(Debug, Clone)]
pub enum ParsedTarget {
    Exact {
        label: String,
        geometry: InvariantGeometry<Rat>,
    },
    Chart {
        label: String,
        metric: ChartMetric,
        point: [f64; 4],
    },
}

impl ParsedTarget {
    pub fn label(&self) -> &str {
        match self {
            ParsedTarget::Exact { label, .. } => label,
            ParsedTarget::Chart { label, .. } => label,
        }
    }
}

fn parse_gram(rows: &[Vec<String>]) -> Result<Mat4<Rat>, ReportError> {
    if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
        return Err(ReportError::Parse("gram must be 4x4".into()));
    }
    let mut g = std::array::from_fn(|_| std::array::from_fn(|_| Rat::zero()));
    for (i, row) in rows.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            g[i][j] = parse_rational(entry)?;
        }
    }
    Ok(g)
}

fn parse_orientation(o: Option<i8>) -> Result<i8, ReportError> {
    match o {
        None => Ok(1),
        Some(1) => Ok(1),
        Some(-1) => Ok(-1),
        Some(other) => Err(ReportError::Parse(format!(
            "orientation must be 1 or -1, got {other}"
        ))),
    }
}

fn parse_tau_field(tau: &Option<Vec<String>>) -> Result<Vec4<Rat>, ReportError> {
    match tau {
        None => Ok(std::array::from_fn(|_| Rat::zero())),
        Some(list) => {
            if list.len() != 4 {
                return Err(ReportError::Parse(format!(
                    "tau needs 4 components, got {}",
                    list.len()
                )));
            }
            let mut out = std::array::from_fn(|_| Rat::zero());
            for (i, entry) in list.iter().enumerate() {
                out[i] = parse_rational(entry)?;
            }
            Ok(out)
        }
    }
}

fn catalog_geometry(
    name: &str,
    lambda: Option<&str>,
    k: Option<&str>,
) -> Result<(String, InvariantGeometry<Rat>), ReportError> {
    match name {
        "flat" => Ok(("flat".into(), make_flat())),
        "hopf" => Ok(("hopf".into(), make_hopf())),
        "g_lambda" => {
            let l = lambda.map(parse_rational).transpose()?.unwrap_or_else(|| rat(0, 1));
            let kk = k.map(parse_rational).transpose()?.unwrap_or_else(|| rat(1, 1));
            let label = format!("g_lambda(lambda={}, k={})", rat_str(&l), rat_str(&kk));
            Ok((label, make_g_lambda(l, kk)?))
        }
        other => Err(ReportError::Invalid(format!(
            "unknown catalog geometry {other:?}: expected flat, hopf, or g_lambda"
        ))),
    }
}

pub fn document_to_target(doc: &GeometryDocument) -> Result<ParsedTarget, ReportError> {
    match doc.kind.as_str() {
        "lie_group" => {
            let sc = doc.structure_constants.as_ref().ok_or_else(|| {
                ReportError::Parse("lie_group document needs structure_constants".into())
            })?;
            if sc.len() != 4
                || sc.iter().any(|p| p.len() != 4)
                || sc.iter().flatten().any(|r| r.len() != 4)
            {
                return Err(ReportError::Parse("structure_constants must be 4x4x4".into()));
            }
            let mut c = structure_zero::<Rat>();
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        c[i][j][k] = parse_rational(&sc[i][j][k])?;
                    }
                }
            }
            let algebra = LieAlgebra4::new(c)?;
            let gram = parse_gram(doc.gram.as_ref().ok_or_else(|| {
                ReportError::Parse("lie_group document needs gram".into())
            })?)?;
            let geometry = InvariantGeometry {
                algebra,
                gram,
                orientation: parse_orientation(doc.orientation)?,
                tau: parse_tau_field(&doc.tau)?,
            };
            Ok(ParsedTarget::Exact {
                label: "lie_group document".into(),
                geometry,
            })
        }
        "catalog" => {
            let params = doc.params.clone().unwrap_or_default();
            let name = params
                .get("name")
                .ok_or_else(|| ReportError::Parse("catalog document needs params.name".into()))?;
            let (label, mut geometry) = catalog_geometry(
                name,
                params.get("lambda").map(String::as_str),
                params.get("k").map(String::as_str),
            )?;
            if doc.tau.is_some() {
                geometry.tau = parse_tau_field(&doc.tau)?;
            }
            if doc.orientation.is_some() {
                geometry.orientation = parse_orientation(doc.orientation)?;
            }
            Ok(ParsedTarget::Exact { label, geometry })
        }
        "chart" => {
            let params = doc.params.clone().unwrap_or_default();
            let metric =
                parse_metric_spec(params.get("metric").map(String::as_str).unwrap_or("euclidean"))?;
            let point = match params.get("point") {
                Some(p) => parse_point(p)?,
                None => [0.0; 4],
            };
            let label = metric.name.clone();
            Ok(ParsedTarget::Chart { label, metric, point })
        }
        other => Err(ReportError::Parse(format!(
            "unknown document kind {other:?}: expected lie_group, catalog, or chart"
        ))),
    }
}

/// How the CLI names a target: a document path, a catalog name, or `chart`.
#[derive(Debug, Clone, Default)]
pub struct TargetSpec {
    pub target: String,
    pub lambda: Option<String>,
    pub k: Option<String>,
    pub tau: Option<String>,
    pub metric: Option<String>,
    pub point: Option<String>,
}

pub fn load_target(spec: &TargetSpec) -> Result<ParsedTarget, ReportError> {
    if std::path::Path::new(&spec.target).exists() {
        let text = std::fs::read_to_string(&spec.target)
            .map_err(|e| ReportError::Invalid(format!("{}: {e}", spec.target)))?;
        let doc = parse_document(&text)?;
        return document_to_target(&doc);
    }
    match spec.target.as_str() {
        "flat" | "hopf" | "g_lambda" => {
            let (label, mut geometry) =
                catalog_geometry(&spec.target, spec.lambda.as_deref(), spec.k.as_deref())?;
            if let Some(t) = &spec.tau {
                geometry.tau = parse_tau(t)?;
            }
            Ok(ParsedTarget::Exact { label, geometry })
        }
        "chart" => {
            let metric = parse_metric_spec(spec.metric.as_deref().unwrap_or("euclidean"))?;
            let point = match &spec.point {
                Some(p) => parse_point(p)?,
                None => [0.0; 4],
            };
            let label = metric.name.clone();
            Ok(ParsedTarget::Chart { label, metric, point })
        }
        other => Err(ReportError::Invalid(format!(
            "no such target {other:?}: expected a document path, flat, hopf, g_lambda, or chart"
        ))),
    }
}

// ---------------------------------------------------------------------------
// Expression grammar for chart rescale factors.

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    NormSq,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LPar,
    RPar,
}

fn lex(src: &str) -> Result<Vec<Tok>, ReportError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        match c {
            '+' => { out.push(Tok::Plus); i += 1; }
            '-' => { out.push(Tok::Minus); i += 1; }
            '*' => { out.push(Tok::Star); i += 1; }
            '/' => { out.push(Tok::Slash); i += 1; }
            '^' => { out.push(Tok::Caret); i += 1; }
            '(' => { out.push(Tok::LPar); i += 1; }
            ')' => { out.push(Tok::RPar); i += 1; }
            '|' => {
                // |x|^2 or |x|2
                let rest: String = chars[i..].iter().take(5).collect();
                if rest.starts_with("|x|^2") {
                    out.push(Tok::NormSq);
                    i += 5;
                } else if rest.starts_with("|x|2") {
                    out.push(Tok::NormSq);
                    i += 4;
                } else {
                    return Err(ReportError::Parse(
                        "expected |x|^2 after '|' in expression".into(),
                    ));
                }
            }
            d if d.is_ascii_digit() || d == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        i = j;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text: String = chars[start..i].iter().collect();
                let v: f64 = text
                    .parse()
                    .map_err(|_| ReportError::Parse(format!("bad number {text:?}")))?;
                out.push(Tok::Num(v));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => {
                return Err(ReportError::Parse(format!(
                    "unexpected character {other:?} in expression"
                )));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Expr {
    Const(f64),
    Coord(usize),
    NormSq,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Exp(Box<Expr>),
    Log(Box<Expr>),
}

fn eval(e: &Expr, x: &[f64; 4]) -> f64 {
    match e {
        Expr::Const(v) => *v,
        Expr::Coord(i) => x[*i],
        Expr::NormSq => x.iter().map(|v| v * v).sum(),
        Expr::Neg(a) => -eval(a, x),
        Expr::Add(a, b) => eval(a, x) + eval(b, x),
        Expr::Sub(a, b) => eval(a, x) - eval(b, x),
        Expr::Mul(a, b) => eval(a, x) * eval(b, x),
        Expr::Div(a, b) => eval(a, x) / eval(b, x),
        Expr::Pow(a, b) => eval(a, x).powf(eval(b, x)),
        Expr::Exp(a) => eval(a, x).exp(),
        Expr::Log(a) => eval(a, x).ln(),
    }
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: &Tok) -> Result<(), ReportError> {
        match self.bump() {
            Some(ref got) if got == t => Ok(()),
            got => Err(ReportError::Parse(format!(
                "expected {t:?}, found {got:?}"
            ))),
        }
    }

    fn expr(&mut self) -> Result<Expr, ReportError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ReportError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ReportError> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ReportError> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            // Right-associative; the exponent may carry a unary minus.
            return Ok(Expr::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ReportError> {
        match self.bump() {
            Some(Tok::Num(v)) => Ok(Expr::Const(v)),
            Some(Tok::NormSq) => Ok(Expr::NormSq),
            Some(Tok::LPar) => {
                let inner = self.expr()?;
                self.expect(&Tok::RPar)?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "x1" => Ok(Expr::Coord(0)),
                "x2" => Ok(Expr::Coord(1)),
                "x3" => Ok(Expr::Coord(2)),
                "x4" => Ok(Expr::Coord(3)),
                "normsq" => Ok(Expr::NormSq),
                "exp" | "log" => {
                    self.expect(&Tok::LPar)?;
                    let inner = self.expr()?;
                    self.expect(&Tok::RPar)?;
                    Ok(if name == "exp" {
                        Expr::Exp(Box::new(inner))
                    } else {
                        Expr::Log(Box::new(inner))
                    })
                }
                other => Err(ReportError::Parse(format!(
                    "unknown name {other:?}: expected x1..x4, normsq, exp, or log"
                ))),
            },
            got => Err(ReportError::Parse(format!(
                "expected a value, found {got:?}"
            ))),
        }
    }
}

/// Compile the rescale grammar to a coordinate function.
pub fn compile_expr(src: &str) -> Result<ScalarFn, ReportError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let ast = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ReportError::Parse(format!(
            "trailing input after expression: {:?}",
            &p.toks[p.pos..]
        )));
    }
    Ok(Arc::new(move |x| eval(&ast, x)))
}

fn call_args<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    let rest = s.strip_prefix(name)?.trim_start();
    let rest = rest.strip_prefix('(')?;
    rest.strip_suffix(')')
}

fn split_top_comma(s: &str) -> Result<(&str, &str), ReportError> {
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = depth.checked_sub(1).ok_or_else(|| {
                    ReportError::Parse("unbalanced parentheses in metric".into())
                })?;
            }
            ',' if depth == 0 => return Ok((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    Err(ReportError::Parse(
        "conformal(base, expr) needs two arguments".into(),
    ))
}

/// Resolve `euclidean`, `round_sphere(r)`, or `conformal(base, expr)`.
pub fn parse_metric_spec(spec: &str) -> Result<ChartMetric, ReportError> {
    let s = spec.trim();
    if s == "euclidean" {
        return Ok(euclidean());
    }
    if let Some(inner) = call_args(s, "round_sphere") {
        let r = parse_rational(inner)?.to_f64();
        if r <= 0.0 {
            return Err(ReportError::Invalid("sphere radius must be positive".into()));
        }
        return Ok(round_sphere(r));
    }
    if let Some(inner) = call_args(s, "conformal") {
        let (base, expr) = split_top_comma(inner)?;
        let base_metric = parse_metric_spec(base)?;
        let f = compile_expr(expr)?;
        return Ok(conformal_rescale(&base_metric, f));
    }
    Err(ReportError::Parse(format!(
        "unknown metric {s:?}: expected euclidean, round_sphere(r), or conformal(base, expr)"
    )))
}

// ---------------------------------------------------------------------------
// Reports.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub struct CliConfig {
    /// `None` keeps the per-backend default: 1e-9 exact/Lie, 1e-4 chart.
    pub tol: Option<f64>,
    pub seed: u64,
    pub samples: usize,
    pub orientation_flip: bool,
    pub inject_fault: bool,
    pub format: Format,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            tol: None,
            seed: 7,
            samples: 26,
            orientation_flip: false,
            inject_fault: false,
            format: Format::Text,
        }
    }
}

impl CliConfig {
    pub fn lie_tol(&self) -> f64 {
        self.tol.unwrap_or(1e-9)
    }

    pub fn chart_tol(&self) -> f64 {
        self.tol.unwrap_or(1e-4)
    }
}

/// Reverse the orientation while negating τ; the two flips cancel in the
/// torsion three-form, so this is the pure swap Λ²₊ ↔ Λ²₋.
pub fn flipped<S: Scalar>(geom: &InvariantGeometry<S>) -> InvariantGeometry<S> {
    let mut g = geom.clone();
    g.orientation = -g.orientation;
    for t in &mut g.tau {
        *t = S::zero() - t.clone();
    }
    g
}

fn summand_char(o: Summand) -> char {
    match o {
        Summand::Plus => '+',
        Summand::Minus => '-',
    }
}

fn pair_str(p: (Summand, Summand)) -> String {
    format!("{}{}", summand_char(p.0), summand_char(p.1))
}

fn rat_vec_value(v: &Vec4<Rat>) -> Value {
    json!(v.iter().map(rat_str).collect::<Vec<_>>())
}

fn rat_mat_value(m: &Mat4<Rat>) -> Value {
    json!(m
        .iter()
        .map(|row| row.iter().map(rat_str).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn f64_mat_value(m: &Mat4<f64>) -> Value {
    json!(m.iter().map(|row| row.to_vec()).collect::<Vec<_>>())
}

fn record_value(rec: &CheckRecord) -> Value {
    json!({
        "m": rec.m,
        "components": pair_str(rec.pair),
        "verdict": rec.verdict,
        "breakdown": {
            "weyl_flag": rec.breakdown.weyl_flag,
            "weyl_residual": rec.breakdown.weyl_residual,
            "conf_residual": rec.breakdown.conf_residual,
            "dtau_residual": rec.breakdown.dtau_residual,
            "ricci_residual": rec.breakdown.ricci_residual,
            "block_residual": rec.breakdown.block_residual,
            "block_flag": rec.breakdown.block_flag,
            "witness": rec.breakdown.witness,
        },
    })
}

fn audit_value(table: &AuditTable) -> Value {
    json!({
        "all_agree": table.all_agree,
        "rows": table
            .rows
            .iter()
            .map(|r| json!({
                "m": r.m,
                "components": pair_str(r.pair),
                "identities": r.identities,
                "blocks": r.blocks,
                "sampled": r.sampled,
                "sampled_residual": r.sampled_residual,
                "agree": r.agree,
                "witness": r.witness,
            }))
            .collect::<Vec<_>>(),
    })
}

fn neg4(v: &Vec4<Rat>) -> Vec4<Rat> {
    std::array::from_fn(|i| -v[i].clone())
}

fn frob4_f64(m: &Mat4<Rat>) -> f64 {
    m.iter()
        .flat_map(|row| row.iter())
        .map(|v| {
            let x = v.to_f64();
            x * x
        })
        .sum::<f64>()
        .sqrt()
}

/// Full analysis of one target as a JSON value with sorted keys.
pub fn analyze_report(target: &ParsedTarget, cfg: &CliConfig) -> Result<Value, ReportError> {
    match target {
        ParsedTarget::Exact { label, geometry } => {
            let geom = if cfg.orientation_flip {
                flipped(geometry)
            } else {
                geometry.clone()
            };
            let tol = cfg.lie_tol();
            let mut a = analyze(&geom)?;
            if cfg.inject_fault {
                a.point.rd_op[0][0] += Rat::one();
            }
            let dec = decompose(&a.point.rnabla_op, &a.point.ricci_std, &a.point.scalar_std, tol)
                .map_err(|e| ReportError::Invalid(e.to_string()))?;
            let report = integrability_report(&a.point, tol);
            let samples = sample_fibers::<Rat>(cfg.samples, cfg.seed);
            let audit = audit_equivalence(&a, &samples, tol);
            let ctx = weyl_scan_context(&geom)?;
            let conf = conformal_scalar_with(&ctx, &geom.tau);
            let ew = einstein_weyl_residual_with(&ctx, &neg4(&geom.tau));
            Ok(json!({
                "geometry": {
                    "label": label,
                    "backend": "exact",
                    "orientation": geom.orientation,
                    "gram": rat_mat_value(&geom.gram),
                    "tau": rat_vec_value(&geom.tau),
                },
                "curvature": {
                    "ricci": rat_mat_value(&a.point.ricci),
                    "scalar": rat_str(&a.point.scalar_curv),
                    "wplus_norm2": rat_str(&dec.wplus_norm2()),
                    "wminus_norm2": rat_str(&dec.wminus_norm2()),
                    "einstein": is_einstein(&dec, tol),
                    "self_dual": is_sd(&dec, tol),
                    "anti_self_dual": is_asd(&dec, tol),
                },
                "weyl": {
                    "conf_scalar": rat_str(&conf),
                    "ew_residual": frob4_f64(&ew),
                },
                "checks": report.records.iter().map(record_value).collect::<Vec<_>>(),
                "audit": audit_value(&audit),
            }))
        }
        ParsedTarget::Chart { label, metric, point } => {
            if cfg.orientation_flip {
                return Err(ReportError::Invalid(
                    "orientation flip applies to exact backends only".into(),
                ));
            }
            let tol = cfg.chart_tol();
            let pc = curvature_at(metric, point)?;
            let dec = decompose(&pc.rnabla_op, &pc.ricci_std, &pc.scalar_std, tol)
                .map_err(|e| ReportError::Invalid(e.to_string()))?;
            let report = integrability_report(&pc, tol);
            let mut ew2 = 0.0;
            for x in 0..4 {
                for y in 0..4 {
                    let mut v = pc.ricci_std[x][y];
                    if x == y {
                        v -= pc.scalar_std / 4.0;
                    }
                    ew2 += v * v;
                }
            }
            Ok(json!({
                "geometry": {
                    "label": label,
                    "backend": "chart",
                    "point": point.to_vec(),
                    "fd_step": metric.fd_step,
                },
                "curvature": {
                    "ricci": f64_mat_value(&pc.ricci),
                    "scalar": pc.scalar_curv,
                    "wplus_norm2": dec.wplus_norm2(),
                    "wminus_norm2": dec.wminus_norm2(),
                    "einstein": is_einstein(&dec, tol),
                    "self_dual": is_sd(&dec, tol),
                    "anti_self_dual": is_asd(&dec, tol),
                },
                "weyl": {
                    "conf_scalar": pc.scalar_std,
                    "ew_residual": ew2.sqrt(),
                },
                "checks": report.records.iter().map(record_value).collect::<Vec<_>>(),
                "audit": Value::Null,
            }))
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScanBase {
    pub lambda: Rat,
    pub k: Rat,
}

/// Sweep one parameter of the solvable family. `param` is `k`, `lambda`,
/// or `mu1` (τ = μ₁·α¹ on the fixed base geometry).
pub fn scan_report(
    param: &str,
    values: &[Rat],
    base: &ScanBase,
    cfg: &CliConfig,
) -> Result<Value, ReportError> {
    let tol = cfg.lie_tol();
    let mut rows = Vec::new();
    for v in values {
        let geometry = match param {
            "k" => make_g_lambda(base.lambda.clone(), v.clone())?,
            "lambda" => make_g_lambda(v.clone(), base.k.clone())?,
            "mu1" => {
                let mut g = make_g_lambda(base.lambda.clone(), base.k.clone())?;
                g.tau = [v.clone(), Rat::zero(), Rat::zero(), Rat::zero()];
                g
            }
            other => {
                return Err(ReportError::Parse(format!(
                    "scan parameter must be k, lambda, or mu1, got {other:?}"
                )));
            }
        };
        let geometry = if cfg.orientation_flip {
            flipped(&geometry)
        } else {
            geometry
        };
        let a = analyze(&geometry)?;
        let dec = decompose(&a.point.rnabla_op, &a.point.ricci_std, &a.point.scalar_std, tol)
            .map_err(|e| ReportError::Invalid(e.to_string()))?;
        let ctx = weyl_scan_context(&geometry)?;
        let conf = conformal_scalar_with(&ctx, &geometry.tau);
        let conf_opp = conf.clone() - rat(2, 1) * ctx.scalar_std.clone();
        let ew = einstein_weyl_residual_with(&ctx, &neg4(&geometry.tau));
        rows.push(json!({
            "value": rat_str(v),
            "wplus_norm2": rat_str(&dec.wplus_norm2()),
            "wminus_norm2": rat_str(&dec.wminus_norm2()),
            "conf_scalar": rat_str(&conf),
            "conf_scalar_opp": rat_str(&conf_opp),
            "ew_residual": frob4_f64(&ew),
        }));
    }
    Ok(json!({
        "scan": {
            "param": param,
            "lambda": rat_str(&base.lambda),
            "k": rat_str(&base.k),
        },
        "rows": rows,
    }))
}

/// Audit a list of exact targets; the boolean is the overall agreement.
pub fn audit_report(
    targets: &[ParsedTarget],
    cfg: &CliConfig,
) -> Result<(Value, bool), ReportError> {
    let tol = cfg.lie_tol();
    let samples = sample_fibers::<Rat>(cfg.samples, cfg.seed);
    let mut groups = Vec::new();
    let mut ok = true;
    for target in targets {
        let ParsedTarget::Exact { label, geometry } = target else {
            return Err(ReportError::Invalid(
                "audit runs on exact backends only".into(),
            ));
        };
        let geom = if cfg.orientation_flip {
            flipped(geometry)
        } else {
            geometry.clone()
        };
        let mut a = analyze(&geom)?;
        if cfg.inject_fault {
            a.point.rd_op[0][0] += Rat::one();
        }
        let table = audit_equivalence(&a, &samples, tol);
        ok &= table.all_agree;
        groups.push(json!({
            "target": label,
            "audit": audit_value(&table),
        }));
    }
    Ok((json!({ "all_agree": ok, "targets": groups }), ok))
}

fn cases_for(
    out: &mut Vec<ParsedTarget>,
    base: &str,
    geom: &InvariantGeometry<Rat>,
    taus: &[Vec4<Rat>],
) {
    for t in taus {
        let label = format!(
            "{base} tau=[{}]",
            t.iter().map(rat_str).collect::<Vec<_>>().join(",")
        );
        out.push(ParsedTarget::Exact {
            label,
            geometry: InvariantGeometry {
                tau: t.clone(),
                ..geom.clone()
            },
        });
    }
}

/// The default audit suite: every catalog geometry crossed with τ = 0, the
/// rational roots of its standard conformal scalar along α¹, and the sixteen
/// grid corners with all components ±2 (plus ±(Lee form) on the Hopf group).
pub fn default_audit_targets() -> Vec<ParsedTarget> {
    let zero: Vec4<Rat> = std::array::from_fn(|_| Rat::zero());
    let corners = tau_product_grid::<Rat>(&[rat(-2, 1), rat(2, 1)]);
    let mut out = Vec::new();

    let mut taus = vec![zero.clone()];
    taus.extend(corners.iter().cloned());
    cases_for(&mut out, "flat", &make_flat(), &taus);

    let mut taus = vec![zero.clone()];
    taus.push([Rat::zero(), Rat::zero(), Rat::zero(), rat(2, 1)]);
    taus.push([Rat::zero(), Rat::zero(), Rat::zero(), rat(-2, 1)]);
    taus.extend(corners.iter().cloned());
    cases_for(&mut out, "hopf", &make_hopf(), &taus);

    let family: [((i64, i64), (i64, i64), &[i64]); 6] = [
        ((0, 1), (1, 1), &[-3, -5]),
        ((1, 1), (1, 1), &[-3, -5]),
        ((0, 1), (2, 1), &[-4]),
        ((1, 1), (2, 1), &[-4]),
        ((0, 1), (1, 2), &[]),
        ((0, 1), (3, 1), &[]),
    ];
    for (lam, k, roots) in family {
        let geom = make_g_lambda::<Rat>(rat(lam.0, lam.1), rat(k.0, k.1))
            .expect("catalog parameters are positive");
        let label = format!(
            "g_lambda(lambda={}, k={})",
            rat_str(&rat(lam.0, lam.1)),
            rat_str(&rat(k.0, k.1))
        );
        let mut taus = vec![zero.clone()];
        for r in roots {
            taus.push([rat(*r, 1), Rat::zero(), Rat::zero(), Rat::zero()]);
        }
        taus.extend(corners.iter().cloned());
        cases_for(&mut out, &label, &geom, &taus);
    }
    out
}

// ---------------------------------------------------------------------------
// Rendering.

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items.iter().map(inline).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(_) => None,
    }
}

fn dump(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match inline(val) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        dump(val, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match inline(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let compact =
                            serde_json::to_string(item).expect("report values serialize");
                        let _ = writeln!(out, "{pad}- {compact}");
                    }
                }
            }
        }
        leaf => {
            let s = inline(leaf).expect("leaves always inline");
            let _ = writeln!(out, "{pad}{s}");
        }
    }
}

/// Serialize a report value; both formats are byte-deterministic because
/// every object is a sorted map and floats print by shortest round trip.
pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("report values serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            dump(v, 0, &mut out);
            out
        }
    }
}

// ---------------------------------------------------------------------------
// Command entry points. Exit-code policy lives with the binary: 0 on
// success, 1 when an audit disagrees, 2 on any ReportError.

pub fn run_analyze(spec: &TargetSpec, cfg: &CliConfig) -> Result<String, ReportError> {
    let target = load_target(spec)?;
    let value = analyze_report(&target, cfg)?;
    Ok(render(&value, cfg.format))
}

pub fn run_scan(
    param: &str,
    values_text: &str,
    lambda: Option<&str>,
    k: Option<&str>,
    cfg: &CliConfig,
) -> Result<String, ReportError> {
    let values = parse_rational_list(values_text)?;
    let base = ScanBase {
        lambda: lambda.map(parse_rational).transpose()?.unwrap_or_else(|| rat(0, 1)),
        k: k.map(parse_rational).transpose()?.unwrap_or_else(|| rat(1, 1)),
    };
    let value = scan_report(param, &values, &base, cfg)?;
    Ok(render(&value, cfg.format))
}

/// Audit the given targets, or the whole default suite when none are named.
pub fn run_audit(
    specs: &[TargetSpec],
    cfg: &CliConfig,
) -> Result<(String, bool), ReportError> {
    let targets = if specs.is_empty() {
        default_audit_targets()
    } else {
        specs.iter().map(load_target).collect::<Result<Vec<_>, _>>()?
    };
    let (value, ok) = audit_report(&targets, cfg)?;
    Ok((render(&value, cfg.format), ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings_round_trip() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational(" -2 ").unwrap(), rat(-2, 1));
        assert_eq!(parse_rational("1.5").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("3.").unwrap(), rat(3, 1));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(rat_str(&rat(3, 2)), "3/2");
        assert_eq!(rat_str(&rat(-8, 4)), "-2");

        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5.2").is_err());

        assert_eq!(parse_rational_list("  ").unwrap(), Vec::<Rat>::new());
        assert_eq!(
            parse_rational_list("1, 1/2, -3").unwrap(),
            vec![rat(1, 1), rat(1, 2), rat(-3, 1)]
        );
        assert!(parse_tau("1,2,3").is_err());
        assert!(parse_point("0, 1, 2, x").is_err());
    }

    #[test]
    fn expression_grammar_evaluates() {
        let x = [0.3, -0.7, 0.2, 0.5];
        let n2: f64 = x.iter().map(|v| v * v).sum();

        let f = compile_expr("exp(x1) * (1 + x2^2) - |x|^2 / 4").unwrap();
        let expected = x[0].exp() * (1.0 + x[1] * x[1]) - n2 / 4.0;
        assert!((f(&x) - expected).abs() < 1e-12);

        let g = compile_expr("normsq").unwrap();
        assert!((g(&x) - n2).abs() < 1e-15);

        let h = compile_expr("-x1^2").unwrap();
        assert!((h(&[3.0, 0.0, 0.0, 0.0]) + 9.0).abs() < 1e-15);

        let p = compile_expr("2^-2").unwrap();
        assert!((p(&x) - 0.25).abs() < 1e-15);

        let l = compile_expr("log(exp(x4))").unwrap();
        assert!((l(&x) - x[3]).abs() < 1e-12);

        assert!(compile_expr("x5").is_err());
        assert!(compile_expr("exp").is_err());
        assert!(compile_expr("1 +").is_err());
        assert!(compile_expr("(1").is_err());
        assert!(compile_expr("1 2").is_err());
    }

    #[test]
    fn metric_specs_build_the_named_charts() {
        let origin = [0.0; 4];
        let s = parse_metric_spec("round_sphere(1/2)").unwrap();
        let g = s.at(&origin);
        assert!((g[0][0] - 4.0).abs() < 1e-15);
        assert!((g[1][0]).abs() < 1e-15);

        let p = [0.7, -0.1, 0.4, 0.2];
        let c = parse_metric_spec("conformal(conformal(euclidean, x1), x2)").unwrap();
        let got = c.at(&p);
        let want = (p[0] + p[1]).exp();
        for (i, row) in got.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let target = if i == j { want } else { 0.0 };
                assert!((v - target).abs() < 1e-12);
            }
        }

        assert!(parse_metric_spec("torus").is_err());
        assert!(parse_metric_spec("round_sphere(-1)").is_err());
        assert!(parse_metric_spec("conformal(euclidean)").is_err());
    }

    #[test]
    fn documents_parse_and_reject() {
        let zero4 = r#"["0","0","0","0"]"#;
        let zero_plane = format!("[{zero4},{zero4},{zero4},{zero4}]");
        let flat_doc = format!(
            r#"{{"kind":"lie_group",
                "structure_constants":[{zero_plane},{zero_plane},{zero_plane},{zero_plane}],
                "gram":[["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]]}}"#
        );
        let doc = parse_document(&flat_doc).unwrap();
        let target = document_to_target(&doc).unwrap();
        let ParsedTarget::Exact { geometry, .. } = &target else {
            panic!("lie_group documents are exact");
        };
        let a = analyze(geometry).unwrap();
        assert!(a.point.scalar_std.is_zero());

        let cat = r#"{"kind":"catalog","params":{"name":"g_lambda","lambda":"1","k":"2"},
                      "tau":["-4","0","0","0"]}"#;
        let target = document_to_target(&parse_document(cat).unwrap()).unwrap();
        assert_eq!(target.label(), "g_lambda(lambda=1, k=2)");
        let ParsedTarget::Exact { geometry, .. } = &target else {
            panic!("catalog documents are exact");
        };
        assert_eq!(geometry.tau[0], rat(-4, 1));

        let chart = r#"{"kind":"chart","params":{"metric":"round_sphere(1)","point":"0,0,0,0"}}"#;
        let target = document_to_target(&parse_document(chart).unwrap()).unwrap();
        assert!(matches!(target, ParsedTarget::Chart { .. }));

        assert!(parse_document("{").is_err());
        assert!(parse_document(r#"{"kind":"lie_group","extra":1}"#).is_err());
        let bad_kind = r#"{"kind":"sphere"}"#;
        assert!(document_to_target(&parse_document(bad_kind).unwrap()).is_err());
        let bad_gram = flat_doc.replace(r#"["0","0","0","1"]]"#, r#"["0","0","0"]]"#);
        assert_ne!(bad_gram, flat_doc);
        let d = parse_document(&bad_gram).unwrap();
        assert!(document_to_target(&d).is_err());
    }

    #[test]
    fn analyze_report_is_deterministic_and_complete() {
        let spec = TargetSpec {
            target: "flat".into(),
            ..TargetSpec::default()
        };
        let target = load_target(&spec).unwrap();
        let cfg = CliConfig {
            samples: 8,
            ..CliConfig::default()
        };
        let v1 = analyze_report(&target, &cfg).unwrap();
        let v2 = analyze_report(&target, &cfg).unwrap();
        assert_eq!(v1, v2);
        assert_eq!(
            serde_json::to_string(&v1).unwrap(),
            serde_json::to_string(&v2).unwrap()
        );

        assert_eq!(v1["checks"].as_array().unwrap().len(), 16);
        assert_eq!(v1["audit"]["all_agree"], Value::Bool(true));
        assert_eq!(v1["curvature"]["scalar"], Value::String("0".into()));
        assert_eq!(v1["curvature"]["einstein"], Value::Bool(true));

        let text = render(&v1, Format::Text);
        assert!(text.contains("curvature:"));
        assert!(text.contains("wplus_norm2: 0"));
        let js = render(&v1, Format::Json);
        assert!(js.ends_with('\n'));
        assert_eq!(render(&v1, Format::Json), js);
    }

    #[test]
    fn scan_rows_track_wplus_and_the_two_conf_branches() {
        let cfg = CliConfig::default();
        let base = ScanBase {
            lambda: rat(0, 1),
            k: rat(1, 1),
        };

        let v = scan_report("k", &[rat(1, 1), rat(2, 1), rat(3, 1)], &base, &cfg).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows[0]["wplus_norm2"], Value::String("0".into()));
        assert_eq!(rows[1]["wplus_norm2"], Value::String("0".into()));
        assert_ne!(rows[2]["wplus_norm2"], Value::String("0".into()));

        let v = scan_report("mu1", &[rat(-3, 1), rat(1, 1), rat(2, 1)], &base, &cfg).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows[0]["conf_scalar"], Value::String("0".into()));
        assert_eq!(rows[1]["conf_scalar"], Value::String("-36".into()));
        assert_eq!(rows[2]["conf_scalar_opp"], Value::String("-15/2".into()));

        let empty = scan_report("k", &[], &base, &cfg).unwrap();
        assert!(empty["rows"].as_array().unwrap().is_empty());

        assert!(scan_report("mu2", &[rat(1, 1)], &base, &cfg).is_err());
    }

    #[test]
    fn audit_report_flags_injected_faults() {
        let spec = TargetSpec {
            target: "flat".into(),
            ..TargetSpec::default()
        };
        let target = load_target(&spec).unwrap();
        let cfg = CliConfig {
            samples: 8,
            ..CliConfig::default()
        };
        let (_, ok) = audit_report(std::slice::from_ref(&target), &cfg).unwrap();
        assert!(ok);

        let faulty = CliConfig {
            samples: 8,
            inject_fault: true,
            ..CliConfig::default()
        };
        let (v, ok) = audit_report(std::slice::from_ref(&target), &faulty).unwrap();
        assert!(!ok);
        assert_eq!(v["all_agree"], Value::Bool(false));
        let rows = v["targets"][0]["audit"]["rows"].as_array().unwrap();
        assert!(rows.iter().any(|r| r["agree"] == Value::Bool(false)));
    }

    #[test]
    fn default_suite_covers_the_catalog() {
        let suite = default_audit_targets();
        assert_eq!(suite.len(), 17 + 19 + 19 + 19 + 18 + 18 + 17 + 17);
        let labels: std::collections::BTreeSet<&str> =
            suite.iter().map(|t| t.label()).collect();
        assert_eq!(labels.len(), suite.len());
        assert_eq!(suite[0].label(), "flat tau=[0,0,0,0]");
    }
}
