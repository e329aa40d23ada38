//! Sweeps over the real parameter line and the spectrum reports built from them.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{parse_ratio, GaussianRational, Poly, RatFunc, RationalPoint};
use crate::duality::{intertwiner, DualityError, Intertwiner};
use crate::family::{build_family, FamilyError, FamilyModule};
use crate::jantzen::{
    analyze_at, classify_layer, distinguished_points, JantzenAnalysis, JantzenError, RationalInterval, RealForm,
    Verdict, TRIVIAL_LABEL,
};

const MAX_EXPONENT: i64 = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    ExpectedExponent,
    ExponentTooLarge,
    InvalidNumber,
    DivisionByZero,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character '{c}'"),
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::ExpectedExponent => f.write_str("expected an integer exponent"),
            ParseErrorKind::ExponentTooLarge => write!(f, "exponent exceeds {MAX_EXPONENT} in absolute value"),
            ParseErrorKind::InvalidNumber => f.write_str("invalid number"),
            ParseErrorKind::DivisionByZero => f.write_str("division by the zero polynomial"),
        }
    }
}

/// Error from [`parse_casimir`]; `offset` is a byte offset into the input.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at offset {offset}: {kind}")]
pub struct CasimirParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

/// Parses a rational function of `z` with rational (or Gaussian, via `i`)
/// coefficients. Juxtaposition such as `2z` or `z(1+z)` means multiplication.
pub fn parse_casimir(expr: &str) -> Result<RatFunc, CasimirParseError> {
    let mut parser = Parser { src: expr, pos: 0 };
    let value = parser.expr()?;
    parser.skip_ws();
    match parser.peek() {
        None => Ok(value),
        Some(c) => Err(parser.error(ParseErrorKind::UnexpectedChar(c))),
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek().filter(|c| c.is_whitespace()) {
            self.pos += c.len_utf8();
        }
    }

    fn error(&self, kind: ParseErrorKind) -> CasimirParseError {
        CasimirParseError { offset: self.pos, kind }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc, CasimirParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, CasimirParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                self.skip_ws();
                let at = self.pos;
                let rhs = self.unary()?;
                acc = acc.checked_div(&rhs).ok_or(CasimirParseError { offset: at, kind: ParseErrorKind::DivisionByZero })?;
            } else if matches!(self.peek(), Some('z' | 'i' | '(')) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, CasimirParseError> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<RatFunc, CasimirParseError> {
        self.skip_ws();
        let base_at = self.pos;
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        let negative = self.eat('-');
        self.skip_ws();
        let digits_at = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_at {
            self.pos = start;
            return Err(self.error(ParseErrorKind::ExpectedExponent));
        }
        let exp: i64 = self.src[digits_at..self.pos].parse().unwrap_or(i64::MAX);
        if exp > MAX_EXPONENT {
            return Err(CasimirParseError { offset: digits_at, kind: ParseErrorKind::ExponentTooLarge });
        }
        let exp = if negative { -exp } else { exp };
        if exp < 0 && base.is_zero() {
            return Err(CasimirParseError { offset: base_at, kind: ParseErrorKind::DivisionByZero });
        }
        Ok(base.pow(exp as i32))
    }

    fn primary(&mut self) -> Result<RatFunc, CasimirParseError> {
        self.skip_ws();
        let Some(c) = self.peek() else {
            return Err(self.error(ParseErrorKind::UnexpectedEnd));
        };
        match c {
            'z' => {
                self.pos += 1;
                Ok(RatFunc::z())
            }
            'i' => {
                self.pos += 1;
                Ok(RatFunc::constant(GaussianRational::i()))
            }
            '(' => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                match self.peek() {
                    Some(')') => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(c) => Err(self.error(ParseErrorKind::UnexpectedChar(c))),
                    None => Err(self.error(ParseErrorKind::UnexpectedEnd)),
                }
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
                    self.pos += 1;
                }
                let text = &self.src[start..self.pos];
                let value = parse_ratio(text)
                    .filter(|_| !text.contains('/'))
                    .ok_or(CasimirParseError { offset: start, kind: ParseErrorKind::InvalidNumber })?;
                Ok(RatFunc::constant(GaussianRational::real(value)))
            }
            c => Err(self.error(ParseErrorKind::UnexpectedChar(c))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Ascii,
    Svg,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Ascii => "txt",
            Format::Svg => "svg",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "ascii" => Ok(Format::Ascii),
            "svg" => Ok(Format::Svg),
            other => Err(format!("unknown format '{other}' (expected json, ascii or svg)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Ascii => "ascii",
            Format::Svg => "svg",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub casimir: String,
    pub window: i64,
    pub range: RationalInterval,
    pub grid_count: usize,
    pub formats: Vec<Format>,
    pub out: Option<PathBuf>,
}

impl SweepConfig {
    pub const DEFAULT_WINDOW: i64 = 40;
    pub const DEFAULT_GRID: usize = 49;

    pub fn new(casimir: impl Into<String>) -> Self {
        let range = RationalInterval::new(RationalPoint::from_ratio(-6, 5), RationalPoint::from_integer(1))
            .expect("default range is nonempty");
        Self {
            casimir: casimir.into(),
            window: Self::DEFAULT_WINDOW,
            range,
            grid_count: Self::DEFAULT_GRID,
            formats: vec![Format::Json],
            out: None,
        }
    }

    pub fn with_window(mut self, window: i64) -> Self {
        self.window = window;
        self
    }

    pub fn with_range(mut self, range: RationalInterval) -> Self {
        self.range = range;
        self
    }

    pub fn with_grid(mut self, grid_count: usize) -> Self {
        self.grid_count = grid_count;
        self
    }

    /// `grid_count` exactly spaced rationals from `lo` to `hi` inclusive.
    pub fn grid_points(&self) -> Vec<RationalPoint> {
        let lo = self.range.lo().value();
        let hi = self.range.hi().value();
        let steps = BigRational::from_integer((self.grid_count.max(2) - 1).into());
        let step = (hi - lo) / &steps;
        (0..self.grid_count)
            .map(|i| RationalPoint::new(lo + &step * BigRational::from_integer(i.into())))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SpectrumError {
    #[error("invalid Casimir expression: {0}")]
    Parse(#[from] CasimirParseError),
    #[error("invalid family: {0}")]
    Family(#[from] FamilyError),
    #[error("no hermitian structure: {0}")]
    Duality(#[from] DualityError),
    #[error("analysis failed: {0}")]
    Jantzen(#[from] JantzenError),
    #[error("grid count must be at least 2, got {0}")]
    GridTooSmall(usize),
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl SpectrumError {
    /// Errors caused by user input rather than the environment.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            SpectrumError::Parse(_)
                | SpectrumError::Family(_)
                | SpectrumError::Duality(_)
                | SpectrumError::GridTooSmall(_)
                | SpectrumError::InvalidRange(_)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub casimir: String,
    pub casimir_canonical: String,
    pub window: i64,
    pub range: RationalInterval,
    pub grid_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerReport {
    pub level: i64,
    pub weights: Vec<i64>,
    pub verdict: Verdict,
    pub label: Option<String>,
    pub form_values: Vec<GaussianRational>,
}

impl LayerReport {
    pub fn is_trivial_rep(&self) -> bool {
        self.label.as_deref() == Some(TRIVIAL_LABEL)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointReport {
    pub x: RationalPoint,
    pub real_form: RealForm,
    pub distinguished: bool,
    pub layers: Vec<LayerReport>,
}

impl PointReport {
    pub fn from_analysis(analysis: &JantzenAnalysis, distinguished: bool) -> Result<Self, JantzenError> {
        let layers = analysis
            .layers()
            .iter()
            .map(|(&level, weights)| {
                let cls = classify_layer(analysis, level)?;
                Ok(LayerReport {
                    level,
                    weights: weights.clone(),
                    verdict: cls.verdict,
                    label: cls.label,
                    form_values: analysis.layer_values(level).into_iter().cloned().collect(),
                })
            })
            .collect::<Result<_, JantzenError>>()?;
        Ok(Self { x: analysis.point().clone(), real_form: analysis.real_form(), distinguished, layers })
    }

    pub fn definite_layers(&self) -> impl Iterator<Item = &LayerReport> {
        self.layers.iter().filter(|l| l.verdict.is_definite())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub config: ConfigEcho,
    pub points: Vec<PointReport>,
    /// Factors whose real roots in the range are irrational; not analyzed.
    pub unanalyzed: Vec<String>,
}

impl SpectrumReport {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, SpectrumError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn distinguished(&self) -> impl Iterator<Item = &PointReport> {
        self.points.iter().filter(|p| p.distinguished)
    }

    /// Every `(x, k)` with `k` in a definite layer at `x`.
    pub fn unitary_markers(&self) -> BTreeSet<(RationalPoint, i64)> {
        self.points
            .iter()
            .flat_map(|p| p.definite_layers().flat_map(move |l| l.weights.iter().map(move |&k| (p.x.clone(), k))))
            .collect()
    }
}

/// Family, intertwiner and echo for a config, shared by sweeps and single analyses.
pub fn prepare(casimir: &str, window: i64) -> Result<(RatFunc, FamilyModule, Intertwiner), SpectrumError> {
    let c = parse_casimir(casimir)?;
    let family = build_family(&c, window)?;
    let phi = intertwiner(&family)?;
    Ok((c, family, phi))
}

pub fn sweep(config: &SweepConfig) -> Result<SpectrumReport, SpectrumError> {
    if config.grid_count < 2 {
        return Err(SpectrumError::GridTooSmall(config.grid_count));
    }
    let (c, family, phi) = prepare(&config.casimir, config.window)?;
    let special = distinguished_points(&family, &phi, &config.range)?;
    let marked: BTreeSet<RationalPoint> = special.points.iter().cloned().collect();
    let mut todo: Vec<(RationalPoint, bool)> = marked.iter().map(|x| (x.clone(), true)).collect();
    todo.extend(config.grid_points().into_iter().filter(|x| !marked.contains(x)).map(|x| (x, false)));
    todo.sort_by(|a, b| a.0.cmp(&b.0));

    let points = todo
        .par_iter()
        .map(|(x, distinguished)| {
            let analysis = analyze_at(&family, &phi, x)?;
            PointReport::from_analysis(&analysis, *distinguished)
        })
        .collect::<Result<Vec<_>, JantzenError>>()?;

    Ok(SpectrumReport {
        config: ConfigEcho {
            casimir: config.casimir.clone(),
            casimir_canonical: c.to_string(),
            window: config.window,
            range: config.range.clone(),
            grid_count: config.grid_count,
        },
        points,
        unanalyzed: special.unanalyzed.iter().map(Poly::to_string).collect(),
    })
}

pub fn render(report: &SpectrumReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Ascii => render_ascii(report),
        Format::Svg => render_svg(report),
    }
}

fn window_weights(report: &SpectrumReport) -> Vec<i64> {
    let w = report.config.window;
    (-w..=w).rev().step_by(2).collect()
}

fn render_ascii(report: &SpectrumReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("Unitary Jantzen quotients for c(z) = {}\n", report.config.casimir_canonical));
    out.push_str("'#' unitary weight, 'o' trivial representation, '.' none; '^' marks distinguished points\n\n");
    for k in window_weights(report) {
        out.push_str(&format!("{k:>5} |"));
        for p in &report.points {
            let mark = p
                .definite_layers()
                .find(|l| l.weights.contains(&k))
                .map(|l| if l.is_trivial_rep() { 'o' } else { '#' })
                .unwrap_or('.');
            out.push(mark);
        }
        out.push('\n');
    }
    out.push_str("      +");
    out.push_str(&"-".repeat(report.points.len()));
    out.push_str("\n       ");
    out.extend(report.points.iter().map(|p| if p.distinguished { '^' } else { ' ' }));
    out.push_str("\n\n");
    for (col, p) in report.points.iter().enumerate() {
        let tag = if p.distinguished { "  distinguished" } else { "" };
        out.push_str(&format!("  [{col:>3}] x = {}{tag}\n", p.x));
    }
    out
}

const SVG_WIDTH: f64 = 800.0;
const SVG_HEIGHT: f64 = 520.0;
const MARGIN: f64 = 50.0;

fn render_svg(report: &SpectrumReport) -> String {
    let lo = report.config.range.lo().to_f64();
    let hi = report.config.range.hi().to_f64();
    let span = if hi > lo { hi - lo } else { 1.0 };
    let w = report.config.window as f64;
    let sx = |x: f64| MARGIN + (x - lo) / span * (SVG_WIDTH - 2.0 * MARGIN);
    let sy = |k: f64| SVG_HEIGHT / 2.0 - k / w * (SVG_HEIGHT / 2.0 - MARGIN);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SVG_WIDTH}\" height=\"{SVG_HEIGHT}\" viewBox=\"0 0 {SVG_WIDTH} {SVG_HEIGHT}\">\n"
    ));
    out.push_str(&format!("  <title>Unitary Jantzen quotients, c(z) = {}</title>\n", xml_escape(&report.config.casimir_canonical)));
    out.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    let (x0, x1) = (sx(lo), sx(hi));
    let y0 = sy(0.0);
    out.push_str(&format!("  <line class=\"axis\" x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y0:.2}\" stroke=\"gray\"/>\n"));
    if lo <= 0.0 && hi >= 0.0 {
        let xz = sx(0.0);
        out.push_str(&format!(
            "  <line class=\"axis\" x1=\"{xz:.2}\" y1=\"{:.2}\" x2=\"{xz:.2}\" y2=\"{:.2}\" stroke=\"gray\"/>\n",
            sy(w),
            sy(-w)
        ));
    }
    out.push_str(&format!(
        "  <text x=\"{x0:.2}\" y=\"{:.2}\" font-size=\"12\">{}</text>\n",
        SVG_HEIGHT - 15.0,
        report.config.range.lo()
    ));
    out.push_str(&format!(
        "  <text x=\"{x1:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{}</text>\n",
        SVG_HEIGHT - 15.0,
        report.config.range.hi()
    ));
    out.push_str(&format!("  <text x=\"10\" y=\"{:.2}\" font-size=\"12\">k = {}</text>\n", sy(w), report.config.window));
    out.push_str(&format!("  <text x=\"10\" y=\"{:.2}\" font-size=\"12\">k = -{}</text>\n", sy(-w), report.config.window));

    for p in &report.points {
        let cx = sx(p.x.to_f64());
        for layer in p.definite_layers() {
            for &k in &layer.weights {
                let class = if p.distinguished { "unitary distinguished" } else { "unitary" };
                let r = if p.distinguished { 3.5 } else { 2.0 };
                let paint = if layer.is_trivial_rep() { "fill=\"white\" stroke=\"black\"" } else { "fill=\"black\"" };
                out.push_str(&format!(
                    "  <circle class=\"{class}\" data-x=\"{}\" data-k=\"{k}\" cx=\"{cx:.2}\" cy=\"{:.2}\" r=\"{r}\" {paint}/>\n",
                    p.x,
                    sy(k as f64)
                ));
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Output path for `format`: `out` itself for a single format, otherwise
/// `out` used as a stem with the format's extension.
pub fn output_path(out: &Path, format: Format, several: bool) -> PathBuf {
    if several {
        out.with_extension(format.extension())
    } else {
        out.to_path_buf()
    }
}

/// Writes every configured format; returns the paths written.
pub fn write_outputs(report: &SpectrumReport, formats: &[Format], out: &Path) -> Result<Vec<PathBuf>, SpectrumError> {
    let several = formats.len() > 1;
    let mut written = Vec::new();
    for &format in formats {
        let path = output_path(out, format, several);
        fs::write(&path, render(report, format)).map_err(|source| SpectrumError::Io { path: path.clone(), source })?;
        written.push(path);
    }
    Ok(written)
}
