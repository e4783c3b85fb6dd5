//! The KD3 interchange format.
//!
//! ```text
//! kd3 v1
//! 1handle d1
//! 2handle f1 framing=0 word=d1,d1^-1
//! link f1 f2 = 1
//! 3handle s1 1a={d1:1} 1b={} 2a={} 2b={f1:1}
//! 4handles 1
//! pd X[1,4,2,5]+ X[3,6,4,1]-
//! arcs f1 1 2 3
//! ```
//!
//! A banded-unlink document uses `unlink <id> slots=<n>` and
//! `band <id> <comp>@<slot> <comp>@<slot> [orient=+1|-1]` instead. The two
//! kinds of statement cannot be mixed. `#` starts a comment; unknown
//! statements are errors.

mod lex;
pub mod matrix;
pub mod presentation;
pub mod script;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::diagram::{Diagnostic, KirbyDiagram, Letter, OneHandle, ThreeHandleData, TwoHandle};
use crate::id::{Id, Sign};
use crate::pd::{ComponentKind, Crossing, Edge, PdComponent, PlanarDiagramCode};
use crate::unlink::{Band, BandedUnlink, SlotRef, UnlinkComponent};

pub(crate) use lex::{significant_lines, utf8_error_line, Line, Token};

/// A Kirby diagram together with an optional planar diagram code of its
/// link (dotted circles included), used for boundary group computations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KirbyDocument {
    pub diagram: KirbyDiagram,
    pub surgery_pd: Option<PlanarDiagramCode>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Document {
    Kirby(KirbyDocument),
    Unlink(BandedUnlink),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax { expected: String, found: String },
    Semantic(String),
    Invalid(Vec<Diagnostic>),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax { expected, found } => {
                write!(f, "syntax error: expected {expected}, found {found}")
            }
            ParseErrorKind::Semantic(msg) => write!(f, "semantic error: {msg}"),
            ParseErrorKind::Invalid(diags) => {
                write!(f, "invalid diagram:")?;
                for d in diags {
                    write!(f, " {d};")?;
                }
                Ok(())
            }
        }
    }
}

pub(crate) fn syntax(
    line: usize,
    column: usize,
    expected: impl Into<String>,
    found: &str,
) -> ParseError {
    ParseError {
        line,
        column,
        kind: ParseErrorKind::Syntax {
            expected: expected.into(),
            found: if found.is_empty() {
                "end of line".to_string()
            } else {
                format!("`{found}`")
            },
        },
    }
}

pub(crate) fn semantic(line: usize, column: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        kind: ParseErrorKind::Semantic(msg.into()),
    }
}

pub(crate) struct Cursor<'l, 'a> {
    line: &'l Line<'a>,
    pos: usize,
}

impl<'l, 'a> Cursor<'l, 'a> {
    pub(crate) fn new(line: &'l Line<'a>) -> Self {
        Cursor { line, pos: 0 }
    }

    pub(crate) fn line(&self) -> usize {
        self.line.number
    }

    fn end_column(&self) -> usize {
        self.line
            .tokens
            .last()
            .map_or(1, |t| t.column + t.text.chars().count())
    }

    pub(crate) fn column(&self) -> usize {
        self.line
            .tokens
            .get(self.pos)
            .map_or_else(|| self.end_column(), |t| t.column)
    }

    pub(crate) fn next(&mut self, expected: &str) -> Result<&'l Token<'a>, ParseError> {
        match self.line.tokens.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t)
            }
            None => Err(syntax(self.line(), self.end_column(), expected, "")),
        }
    }

    pub(crate) fn peek(&self) -> Option<&'l Token<'a>> {
        self.line.tokens.get(self.pos)
    }

    pub(crate) fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let t = self.next(&format!("`{kw}`"))?;
        if t.text == kw {
            Ok(())
        } else {
            Err(syntax(self.line(), t.column, format!("`{kw}`"), t.text))
        }
    }

    pub(crate) fn id(&mut self) -> Result<(Id, usize), ParseError> {
        let t = self.next("identifier")?;
        let id =
            Id::new(t.text).map_err(|_| syntax(self.line(), t.column, "identifier", t.text))?;
        Ok((id, t.column))
    }

    pub(crate) fn end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(syntax(self.line(), t.column, "end of line", t.text)),
        }
    }

    pub(crate) fn rest(&mut self) -> &'l [Token<'a>] {
        let r = &self.line.tokens[self.pos..];
        self.pos = self.line.tokens.len();
        r
    }
}

pub(crate) fn parse_int<T: std::str::FromStr>(
    line: usize,
    column: usize,
    text: &str,
    what: &str,
) -> Result<T, ParseError> {
    let t = text.strip_prefix('+').unwrap_or(text);
    // `str::parse` accepts a leading '+' on its own; reject "++1" and the like.
    if t.starts_with(['+']) {
        return Err(syntax(line, column, what, text));
    }
    t.parse::<T>().map_err(|_| syntax(line, column, what, text))
}

fn parse_letter(line: usize, column: usize, text: &str) -> Result<Letter, ParseError> {
    let (name, sign) = match text.split_once('^') {
        None => (text, Sign::Plus),
        Some((name, exp)) => {
            let sign = exp
                .parse::<Sign>()
                .map_err(|_| syntax(line, column, "exponent 1 or -1", text))?;
            (name, sign)
        }
    };
    let id = Id::new(name)
        .map_err(|_| syntax(line, column, "signed letter like `d1` or `d1^-1`", text))?;
    Ok(Letter::new(id, sign))
}

fn parse_word(line: usize, column: usize, text: &str) -> Result<Vec<Letter>, ParseError> {
    if text.is_empty() || text == "1" {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|part| parse_letter(line, column, part.trim()))
        .collect()
}

fn parse_map(line: usize, column: usize, text: &str) -> Result<BTreeMap<Id, u64>, ParseError> {
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| syntax(line, column, "`{id:n,...}`", text))?;
    let mut map = BTreeMap::new();
    if inner.trim().is_empty() {
        return Ok(map);
    }
    for entry in inner.split(',') {
        let (k, v) = entry
            .split_once(':')
            .ok_or_else(|| syntax(line, column, "`id:n` entry", entry.trim()))?;
        let id = Id::new(k.trim()).map_err(|_| syntax(line, column, "identifier", k.trim()))?;
        let n: u64 = parse_int(line, column, v.trim(), "non-negative integer")?;
        if map.insert(id.clone(), n).is_some() {
            return Err(semantic(line, column, format!("duplicate key {id} in map")));
        }
    }
    Ok(map)
}

fn parse_crossing(line: usize, column: usize, text: &str) -> Result<Crossing, ParseError> {
    let expected = "crossing like `X[1,2,3,4]+`";
    let (body, sign) = if let Some(b) = text.strip_suffix('+') {
        (b, Sign::Plus)
    } else if let Some(b) = text.strip_suffix('-') {
        (b, Sign::Minus)
    } else {
        return Err(syntax(line, column, expected, text));
    };
    let inner = body
        .strip_prefix("X[")
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| syntax(line, column, expected, text))?;
    let edges: Vec<Edge> = inner
        .split(',')
        .map(|e| parse_int(line, column, e.trim(), "edge label"))
        .collect::<Result<_, _>>()?;
    let edges: [Edge; 4] = edges
        .try_into()
        .map_err(|_| syntax(line, column, "four edge labels", text))?;
    Ok(Crossing::new(edges, sign))
}

fn parse_slot(line: usize, column: usize, text: &str) -> Result<SlotRef, ParseError> {
    let (c, s) = text
        .split_once('@')
        .ok_or_else(|| syntax(line, column, "slot like `c1@0`", text))?;
    let component = Id::new(c).map_err(|_| syntax(line, column, "slot like `c1@0`", text))?;
    let slot = parse_int(line, column, s, "slot number")?;
    Ok(SlotRef { component, slot })
}

fn key_value<'a>(line: usize, tok: &Token<'a>) -> Result<(&'a str, &'a str), ParseError> {
    tok.text
        .split_once('=')
        .ok_or_else(|| syntax(line, tok.column, "`key=value`", tok.text))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Kirby,
    Unlink,
}

#[derive(Default)]
struct Builder {
    diagram: KirbyDiagram,
    unlink: BandedUnlink,
    kind: Option<(Kind, usize)>,
    /// definition line of every id
    defined: BTreeMap<Id, usize>,
    links: BTreeMap<(Id, Id), (i64, usize, usize)>,
    four_line: Option<usize>,
    crossings: Vec<Crossing>,
    pd_line: Option<usize>,
    arcs: Vec<(Id, Vec<Edge>, usize, usize)>,
}

impl Builder {
    fn set_kind(&mut self, kind: Kind, line: usize, column: usize) -> Result<(), ParseError> {
        match self.kind {
            None => {
                self.kind = Some((kind, line));
                Ok(())
            }
            Some((k, _)) if k == kind => Ok(()),
            Some((_, first)) => Err(semantic(
                line,
                column,
                format!("banded-unlink and Kirby statements cannot be mixed (document kind fixed on line {first})"),
            )),
        }
    }

    fn define(&mut self, id: &Id, line: usize, column: usize) -> Result<(), ParseError> {
        if let Some(prev) = self.defined.insert(id.clone(), line) {
            return Err(semantic(
                line,
                column,
                format!("identifier {id} already defined on line {prev}"),
            ));
        }
        Ok(())
    }

    fn statement(&mut self, l: &Line<'_>) -> Result<(), ParseError> {
        let mut c = Cursor::new(l);
        let head = c.next("statement")?;
        let line = l.number;
        match head.text {
            "1handle" => {
                self.set_kind(Kind::Kirby, line, head.column)?;
                let (id, col) = c.id()?;
                c.end()?;
                self.define(&id, line, col)?;
                self.diagram.one_handles.push(OneHandle { id });
            }
            "2handle" => {
                self.set_kind(Kind::Kirby, line, head.column)?;
                let (id, col) = c.id()?;
                let mut framing = None;
                let mut word = None;
                for tok in c.rest() {
                    let (k, v) = key_value(line, tok)?;
                    match k {
                        "framing" if framing.is_none() => {
                            framing =
                                Some(parse_int::<i64>(line, tok.column, v, "integer framing")?)
                        }
                        "word" if word.is_none() => word = Some(parse_word(line, tok.column, v)?),
                        _ => {
                            return Err(syntax(line, tok.column, "`framing=` or `word=`", tok.text))
                        }
                    }
                }
                let framing =
                    framing.ok_or_else(|| syntax(line, c.column(), "`framing=<int>`", ""))?;
                self.define(&id, line, col)?;
                self.diagram.two_handles.push(TwoHandle {
                    id,
                    framing,
                    disc_word: word.unwrap_or_default(),
                });
            }
            "link" => {
                self.set_kind(Kind::Kirby, line, head.column)?;
                let (a, ca) = c.id()?;
                let (b, _) = c.id()?;
                c.keyword("=")?;
                let t = c.next("integer")?;
                let value: i64 = parse_int(line, t.column, t.text, "integer")?;
                c.end()?;
                if a == b {
                    return Err(semantic(
                        line,
                        ca,
                        format!("link {a} {a}: self-linking is given by the framing"),
                    ));
                }
                let key = if a <= b {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                };
                let reversed = a > b;
                if let Some(&(prev, prev_line, _)) = self.links.get(&key) {
                    if prev != value {
                        let what = if self.links[&key].2 != reversed as usize {
                            "asymmetric linking entry"
                        } else {
                            "conflicting linking entry"
                        };
                        return Err(semantic(
                            line,
                            ca,
                            format!(
                                "{what}: link {a} {b} = {value} but line {prev_line} gives {prev}"
                            ),
                        ));
                    }
                }
                self.links.insert(key, (value, line, reversed as usize));
            }
            "3handle" => {
                self.set_kind(Kind::Kirby, line, head.column)?;
                let (id, col) = c.id()?;
                let mut h = ThreeHandleData::empty(id.clone());
                let mut seen = BTreeSet::new();
                for tok in c.rest() {
                    let (k, v) = key_value(line, tok)?;
                    if !seen.insert(k) {
                        return Err(semantic(line, tok.column, format!("map {k} given twice")));
                    }
                    let map = parse_map(line, tok.column, v)?;
                    match k {
                        "1a" => h.link_1h_attach = map,
                        "1b" => h.link_1h_core = map,
                        "2a" => h.link_2h_circle = map,
                        "2b" => h.link_2h_core = map,
                        _ => {
                            return Err(syntax(
                                line,
                                tok.column,
                                "`1a=`, `1b=`, `2a=` or `2b=`",
                                tok.text,
                            ))
                        }
                    }
                }
                self.define(&id, line, col)?;
                self.diagram.three_handles.push(h);
            }
            "4handles" => {
                self.set_kind(Kind::Kirby, line, head.column)?;
                let t = c.next("count")?;
                let n: u32 = parse_int(line, t.column, t.text, "non-negative count")?;
                c.end()?;
                if let Some(prev) = self.four_line.replace(line) {
                    return Err(semantic(
                        line,
                        head.column,
                        format!("4handles already given on line {prev}"),
                    ));
                }
                self.diagram.four_handles = n;
            }
            "pd" => {
                self.set_kind(Kind::Kirby, line, head.column)?;
                self.pd_line.get_or_insert(line);
                for tok in c.rest() {
                    self.crossings
                        .push(parse_crossing(line, tok.column, tok.text)?);
                }
            }
            "arcs" => {
                self.set_kind(Kind::Kirby, line, head.column)?;
                let (id, col) = c.id()?;
                self.pd_line.get_or_insert(line);
                let edges = c
                    .rest()
                    .iter()
                    .map(|t| parse_int(line, t.column, t.text, "edge label"))
                    .collect::<Result<Vec<Edge>, _>>()?;
                if edges.is_empty() {
                    return Err(syntax(line, c.column(), "edge label", ""));
                }
                self.arcs.push((id, edges, line, col));
            }
            "unlink" => {
                self.set_kind(Kind::Unlink, line, head.column)?;
                let (id, col) = c.id()?;
                let t = c.next("`slots=<n>`")?;
                let (k, v) = key_value(line, t)?;
                if k != "slots" {
                    return Err(syntax(line, t.column, "`slots=<n>`", t.text));
                }
                let slots = parse_int(line, t.column, v, "slot count")?;
                c.end()?;
                self.define(&id, line, col)?;
                self.unlink.components.push(UnlinkComponent { id, slots });
            }
            "band" => {
                self.set_kind(Kind::Unlink, line, head.column)?;
                let (id, col) = c.id()?;
                let ta = c.next("slot")?;
                let a = parse_slot(line, ta.column, ta.text)?;
                let tb = c.next("slot")?;
                let b = parse_slot(line, tb.column, tb.text)?;
                let mut coherent = true;
                if let Some(t) = c.peek() {
                    let (k, v) = key_value(line, t)?;
                    let sign = v.parse::<Sign>().ok().filter(|_| k == "orient");
                    let Some(sign) = sign else {
                        return Err(syntax(line, t.column, "`orient=+1` or `orient=-1`", t.text));
                    };
                    coherent = sign == Sign::Plus;
                    c.next("orient")?;
                }
                c.end()?;
                self.define(&id, line, col)?;
                self.unlink.bands.push(Band { id, a, b, coherent });
            }
            other => {
                return Err(syntax(
                    line,
                    head.column,
                    "statement (1handle, 2handle, link, 3handle, 4handles, pd, arcs, unlink, band)",
                    other,
                ))
            }
        }
        Ok(())
    }

    fn line_of(&self, id: &Id) -> usize {
        self.defined.get(id).copied().unwrap_or(1)
    }

    fn finish_kirby(mut self) -> Result<KirbyDocument, ParseError> {
        // resolve identifiers before structural validation
        for f in &self.diagram.two_handles {
            for letter in &f.disc_word {
                if !self.defined.contains_key(&letter.id) {
                    return Err(semantic(
                        self.line_of(&f.id),
                        1,
                        format!("unknown identifier {} in word of {}", letter.id, f.id),
                    ));
                }
            }
        }
        for h in &self.diagram.three_handles {
            for (map, entries) in h.maps() {
                if let Some(id) = entries.keys().find(|id| !self.defined.contains_key(*id)) {
                    return Err(semantic(
                        self.line_of(&h.id),
                        1,
                        format!("unknown identifier {id} in map {map} of {}", h.id),
                    ));
                }
            }
        }
        for ((a, b), &(value, line, _)) in &self.links {
            for id in [a, b] {
                let is_circle = self.diagram.is_dotted(id) || self.diagram.is_framed(id);
                if !is_circle {
                    let what = if self.defined.contains_key(id) {
                        "is not a dotted or framed circle"
                    } else {
                        "is unknown"
                    };
                    return Err(semantic(
                        line,
                        1,
                        format!("link {a} {b}: identifier {id} {what}"),
                    ));
                }
            }
            self.diagram.linking.set(a, b, value);
        }
        self.diagram.canonicalize();

        let diags = self.diagram.validate();
        if let Some(first) = diags.first() {
            let line = first.ids().first().map_or(1, |id| self.line_of(id));
            return Err(ParseError {
                line,
                column: 1,
                kind: ParseErrorKind::Invalid(diags),
            });
        }

        let surgery_pd = match self.pd_line {
            None => None,
            Some(pd_line) => Some(self.build_pd(pd_line)?),
        };
        Ok(KirbyDocument {
            diagram: self.diagram,
            surgery_pd,
        })
    }

    fn build_pd(&mut self, pd_line: usize) -> Result<PlanarDiagramCode, ParseError> {
        let mut components = Vec::new();
        for (id, edges, line, col) in std::mem::take(&mut self.arcs) {
            let kind = if self.diagram.is_dotted(&id) {
                ComponentKind::Dotted
            } else if let Some(f) = self.diagram.two_handle(&id) {
                ComponentKind::Framed(f.framing)
            } else {
                return Err(semantic(
                    line,
                    col,
                    format!("arcs {id}: not a dotted or framed circle"),
                ));
            };
            components.push(PdComponent { id, edges, kind });
        }
        components.sort_by(|a, b| a.id.cmp(&b.id));
        let pd = PlanarDiagramCode {
            crossings: std::mem::take(&mut self.crossings),
            components,
        };
        pd.validate()
            .map_err(|e| semantic(pd_line, 1, format!("planar diagram: {e}")))?;
        for id in self.diagram.component_ids() {
            if pd.component(&id).is_none() {
                return Err(semantic(
                    pd_line,
                    1,
                    format!("planar diagram has no arcs for {id}"),
                ));
            }
        }
        let ids = self.diagram.component_ids();
        for (i, a) in ids.iter().enumerate() {
            for b in &ids[i + 1..] {
                let from_pd = pd.linking_number(a, b).expect("components checked above");
                let table = self.diagram.linking.get(a, b);
                if from_pd != table {
                    return Err(semantic(
                        pd_line,
                        1,
                        format!("pd/linking mismatch: crossings give lk({a},{b}) = {from_pd}, table gives {table}"),
                    ));
                }
            }
        }
        Ok(pd)
    }

    fn finish_unlink(mut self) -> Result<BandedUnlink, ParseError> {
        self.unlink.canonicalize();
        if let Err(e) = self.unlink.validate() {
            let line = match &e {
                crate::unlink::UnlinkError::DuplicateId(id) => self.line_of(id),
                crate::unlink::UnlinkError::UnknownComponent { band, .. }
                | crate::unlink::UnlinkError::SlotOutOfRange { band, .. }
                | crate::unlink::UnlinkError::SameSlot { band, .. } => self.line_of(band),
                crate::unlink::UnlinkError::SlotReused { slot }
                | crate::unlink::UnlinkError::SlotUnused { slot } => self.line_of(&slot.component),
            };
            return Err(semantic(line, 1, e.to_string()));
        }
        Ok(self.unlink)
    }
}

/// Parses a KD3 document. Every input yields either a validated document or
/// a diagnostic with a line number.
pub fn parse_kd3(input: &[u8]) -> Result<Document, ParseError> {
    let text = std::str::from_utf8(input).map_err(|e| ParseError {
        line: utf8_error_line(input, e.valid_up_to()),
        column: 1,
        kind: ParseErrorKind::Syntax {
            expected: "UTF-8 text".into(),
            found: "invalid byte sequence".into(),
        },
    })?;
    let lines = significant_lines(text);
    let Some((header, body)) = lines.split_first() else {
        return Err(syntax(1, 1, "header `kd3 v1`", ""));
    };
    let texts: Vec<&str> = header.tokens.iter().map(|t| t.text).collect();
    if texts != ["kd3", "v1"] {
        return Err(syntax(
            header.number,
            header.tokens[0].column,
            "header `kd3 v1`",
            &texts.join(" "),
        ));
    }

    let mut b = Builder::default();
    for l in body {
        b.statement(l)?;
    }
    match b.kind {
        Some((Kind::Unlink, _)) => Ok(Document::Unlink(b.finish_unlink()?)),
        _ => Ok(Document::Kirby(b.finish_kirby()?)),
    }
}

/// Parses a document that must be a Kirby diagram.
pub fn parse_kirby(input: &[u8]) -> Result<KirbyDocument, ParseError> {
    match parse_kd3(input)? {
        Document::Kirby(k) => Ok(k),
        Document::Unlink(_) => Err(semantic(
            1,
            1,
            "expected a Kirby diagram, found a banded unlink",
        )),
    }
}

/// Parses a document that must be a banded unlink.
pub fn parse_unlink(input: &[u8]) -> Result<BandedUnlink, ParseError> {
    match parse_kd3(input)? {
        Document::Unlink(u) => Ok(u),
        Document::Kirby(_) => Err(semantic(
            1,
            1,
            "expected a banded unlink, found a Kirby diagram",
        )),
    }
}

fn write_word(out: &mut String, word: &[Letter]) {
    let parts: Vec<String> = word.iter().map(|l| l.to_string()).collect();
    out.push_str(&parts.join(","));
}

fn write_map(out: &mut String, map: &BTreeMap<Id, u64>) {
    out.push('{');
    let parts: Vec<String> = map
        .iter()
        .filter(|(_, &v)| v != 0)
        .map(|(k, v)| format!("{k}:{v}"))
        .collect();
    out.push_str(&parts.join(","));
    out.push('}');
}

fn write_diagram(out: &mut String, d: &KirbyDiagram) {
    let mut d = d.clone();
    d.canonicalize();
    out.push_str("kd3 v1\n");
    for h in &d.one_handles {
        let _ = writeln!(out, "1handle {}", h.id);
    }
    for h in &d.two_handles {
        let _ = write!(out, "2handle {} framing={}", h.id, h.framing);
        if !h.disc_word.is_empty() {
            out.push_str(" word=");
            write_word(out, &h.disc_word);
        }
        out.push('\n');
    }
    for (a, b, v) in d.linking.iter() {
        let _ = writeln!(out, "link {a} {b} = {v}");
    }
    for h in &d.three_handles {
        let _ = write!(out, "3handle {}", h.id);
        for (name, map) in h.maps() {
            if map.values().any(|&v| v != 0) {
                let _ = write!(out, " {name}=");
                write_map(out, map);
            }
        }
        out.push('\n');
    }
    if d.four_handles != 0 {
        let _ = writeln!(out, "4handles {}", d.four_handles);
    }
}

/// Canonical text of a diagram: ids sorted, zero entries dropped, one
/// statement per line.
pub fn serialize_kd3(d: &KirbyDiagram) -> String {
    let mut out = String::new();
    write_diagram(&mut out, d);
    out
}

pub fn serialize_kirby_document(doc: &KirbyDocument) -> String {
    let mut out = serialize_kd3(&doc.diagram);
    if let Some(pd) = &doc.surgery_pd {
        for chunk in pd.crossings.chunks(6) {
            out.push_str("pd");
            for c in chunk {
                let _ = write!(out, " {c}");
            }
            out.push('\n');
        }
        let mut comps: Vec<&PdComponent> = pd.components.iter().collect();
        comps.sort_by(|a, b| a.id.cmp(&b.id));
        for comp in comps {
            let _ = write!(out, "arcs {}", comp.id);
            for e in &comp.edges {
                let _ = write!(out, " {e}");
            }
            out.push('\n');
        }
    }
    out
}

pub fn serialize_unlink(u: &BandedUnlink) -> String {
    let mut u = u.clone();
    u.canonicalize();
    let mut out = String::from("kd3 v1\n");
    for c in &u.components {
        let _ = writeln!(out, "unlink {} slots={}", c.id, c.slots);
    }
    for b in &u.bands {
        let _ = write!(out, "band {} {} {}", b.id, b.a, b.b);
        if !b.coherent {
            out.push_str(" orient=-1");
        }
        out.push('\n');
    }
    out
}

pub fn serialize_document(doc: &Document) -> String {
    match doc {
        Document::Kirby(k) => serialize_kirby_document(k),
        Document::Unlink(u) => serialize_unlink(u),
    }
}
