//! Line-oriented registry format.
//!
//! ```text
//! [identity]
//! id = "s2.G.z15"
//! kind = "series"
//! index = "n"  start = 0
//! term = "C(n)/5^n"
//! tail = "geometric ratio=9/10 from=1"
//! rhs = "-beta*sqrt5"
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use super::{parse_expression, FiniteSpec, IdentityRecord, Kind, Lhs, ParamRange, SeriesSpec, TailStrategy};
use crate::expr::Expr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Location {
    pub source: String,
    pub line: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.source, self.line)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub source: String,
    pub line: usize,
    pub column: usize,
    pub record: Option<String>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}: ", self.source, self.line, self.column)?;
        if let Some(id) = &self.record {
            write!(f, "[{id}] ")?;
        }
        f.write_str(&self.message)
    }
}

/// Records that validated, with their block locations, plus all diagnostics.
#[derive(Clone, Debug, Default)]
pub struct ParsedRegistry {
    pub records: Vec<IdentityRecord>,
    pub locations: Vec<Location>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParsedRegistry {
    pub fn is_ok(&self) -> bool {
        self.diagnostics.is_empty()
    }

    /// Appends `other`, reporting ids that collide across the two.
    pub fn merge(&mut self, other: ParsedRegistry) {
        let seen: HashMap<String, Location> =
            self.records.iter().zip(&self.locations).map(|(r, l)| (r.id.clone(), l.clone())).collect();
        self.diagnostics.extend(other.diagnostics);
        for (r, l) in other.records.into_iter().zip(other.locations) {
            if let Some(first) = seen.get(&r.id) {
                self.diagnostics.push(Diagnostic {
                    source: l.source.clone(),
                    line: l.line,
                    column: 1,
                    record: Some(r.id.clone()),
                    message: format!("duplicate id `{}` (first defined at {first}, again at {l})", r.id),
                });
                continue;
            }
            self.records.push(r);
            self.locations.push(l);
        }
    }
}

struct Field {
    value: String,
    line: usize,
    column: usize,
}

struct Block {
    line: usize,
    fields: BTreeMap<String, Field>,
}

const KEYS: [&str; 15] = [
    "id", "kind", "paper", "index", "start", "lower", "upper", "term", "lhs", "tail", "rhs", "params",
    "as_printed", "note", "digits",
];

fn parse_string(chars: &[char], mut i: usize) -> Result<(String, usize), String> {
    let mut s = String::new();
    i += 1;
    while i < chars.len() {
        match chars[i] {
            '"' => return Ok((s, i + 1)),
            '\\' => match chars.get(i + 1) {
                Some('"') => {
                    s.push('"');
                    i += 2;
                }
                Some('\\') => {
                    s.push('\\');
                    i += 2;
                }
                Some(c) => return Err(format!("unsupported escape `\\{c}`")),
                None => return Err("unterminated string".into()),
            },
            c => {
                s.push(c);
                i += 1;
            }
        }
    }
    Err("unterminated string".into())
}

// Parses `key = value` pairs on one line; trailing `# ...` is a comment.
fn parse_pairs(line: &str) -> Result<Vec<(String, String, usize)>, (usize, String)> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    loop {
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        if i >= chars.len() || chars[i] == '#' {
            return Ok(out);
        }
        let kstart = i;
        while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
            i += 1;
        }
        if i == kstart {
            return Err((i + 1, format!("expected a key, found `{}`", chars[i])));
        }
        let key: String = chars[kstart..i].iter().collect();
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        if chars.get(i) != Some(&'=') {
            return Err((i + 1, format!("expected `=` after `{key}`")));
        }
        i += 1;
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        let vcol = i + 1;
        let value = if chars.get(i) == Some(&'"') {
            let (s, next) = parse_string(&chars, i).map_err(|m| (vcol, m))?;
            i = next;
            s
        } else {
            let vstart = i;
            while i < chars.len() && !chars[i].is_whitespace() && chars[i] != '#' {
                i += 1;
            }
            if i == vstart {
                return Err((vcol, format!("missing value for `{key}`")));
            }
            chars[vstart..i].iter().collect()
        };
        out.push((key, value, vcol));
    }
}

/// Parses registry text; `source` names the file in diagnostics.
pub fn parse_registry_named(text: &str, source: &str) -> ParsedRegistry {
    let mut out = ParsedRegistry::default();
    let mut blocks: Vec<Block> = Vec::new();
    let diag = |line, column, record: Option<String>, message: String| Diagnostic {
        source: source.to_string(),
        line,
        column,
        record,
        message,
    };
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if t.starts_with('[') {
            let header = t.split('#').next().unwrap_or("").trim();
            if header == "[identity]" {
                blocks.push(Block { line: lineno, fields: BTreeMap::new() });
            } else {
                out.diagnostics.push(diag(lineno, 1, None, format!("unknown section `{header}`")));
            }
            continue;
        }
        let pairs = match parse_pairs(raw) {
            Ok(p) => p,
            Err((col, m)) => {
                out.diagnostics.push(diag(lineno, col, None, m));
                continue;
            }
        };
        let Some(block) = blocks.last_mut() else {
            out.diagnostics.push(diag(lineno, 1, None, "key outside of an [identity] block".into()));
            continue;
        };
        for (key, value, column) in pairs {
            if !KEYS.contains(&key.as_str()) {
                out.diagnostics.push(diag(lineno, column, None, format!("unknown key `{key}`")));
                continue;
            }
            if block.fields.contains_key(&key) {
                out.diagnostics.push(diag(lineno, column, None, format!("key `{key}` given twice")));
                continue;
            }
            block.fields.insert(key, Field { value, line: lineno, column });
        }
    }
    let mut first_seen: HashMap<String, usize> = HashMap::new();
    for block in blocks {
        let id = block.fields.get("id").map(|f| f.value.clone());
        match build_record(&block) {
            Ok(rec) => {
                if let Some(&prev) = first_seen.get(&rec.id) {
                    out.diagnostics.push(diag(
                        block.line,
                        1,
                        Some(rec.id.clone()),
                        format!(
                            "duplicate id `{}` (first defined at {source}:{prev}, again at {source}:{})",
                            rec.id, block.line
                        ),
                    ));
                    continue;
                }
                first_seen.insert(rec.id.clone(), block.line);
                out.records.push(rec);
                out.locations.push(Location { source: source.to_string(), line: block.line });
            }
            Err(errs) => {
                for (line, column, m) in errs {
                    out.diagnostics.push(diag(line, column, id.clone(), m));
                }
            }
        }
    }
    out
}

pub fn parse_registry(text: &str) -> ParsedRegistry {
    parse_registry_named(text, "<registry>")
}

type Errs = Vec<(usize, usize, String)>;

fn build_record(b: &Block) -> Result<IdentityRecord, Errs> {
    let mut errs: Errs = Vec::new();
    let get = |k: &str| b.fields.get(k);
    let require = |k: &str, errs: &mut Errs| -> Option<&Field> {
        let f = get(k);
        if f.is_none() {
            errs.push((b.line, 1, format!("missing key `{k}`")));
        }
        f
    };
    let id = require("id", &mut errs).map(|f| f.value.clone()).unwrap_or_default();
    if get("id").is_some() && id.trim().is_empty() {
        errs.push((b.line, 1, "empty id".into()));
    }
    let paper_ref = require("paper", &mut errs).map(|f| f.value.clone()).unwrap_or_default();
    if get("paper").is_some() && paper_ref.trim().is_empty() {
        errs.push((get("paper").unwrap().line, 1, "empty paper reference".into()));
    }
    let kind = require("kind", &mut errs).and_then(|f| match f.value.parse::<Kind>() {
        Ok(k) => Some(k),
        Err(m) => {
            errs.push((f.line, f.column, m));
            None
        }
    });
    let expr = |k: &str, errs: &mut Errs| -> Option<Expr> {
        let f = get(k)?;
        match parse_expression(&f.value) {
            Ok(e) => Some(e),
            Err(pe) => {
                let col = if pe.line == 1 { f.column + pe.column } else { pe.column };
                errs.push((f.line + pe.line - 1, col, format!("in `{k}`: {pe}")));
                None
            }
        }
    };
    let rhs = if get("rhs").is_none() {
        errs.push((b.line, 1, "missing key `rhs`".into()));
        None
    } else {
        expr("rhs", &mut errs)
    };
    let params = match get("params") {
        None => Some(vec![]),
        Some(f) => match ParamRange::parse_list(&f.value) {
            Ok(p) => Some(p),
            Err(m) => {
                errs.push((f.line, f.column, m));
                None
            }
        },
    };
    let tail = match get("tail") {
        None => None,
        Some(f) => match f.value.parse::<TailStrategy>() {
            Ok(t) => Some(t),
            Err(m) => {
                errs.push((f.line, f.column, format!("in `tail`: {m}")));
                None
            }
        },
    };
    let int_field = |k: &str, errs: &mut Errs| -> Option<i64> {
        let f = get(k)?;
        match f.value.parse::<i64>() {
            Ok(v) => Some(v),
            Err(_) => {
                errs.push((f.line, f.column, format!("`{k}` must be an integer")));
                None
            }
        }
    };
    let as_printed = match get("as_printed").map(|f| (f, f.value.as_str())) {
        None | Some((_, "false")) => false,
        Some((_, "true")) => true,
        Some((f, _)) => {
            errs.push((f.line, f.column, "`as_printed` must be true or false".into()));
            false
        }
    };
    let digits = int_field("digits", &mut errs).and_then(|d| {
        if d >= 1 && d <= 10_000 {
            Some(d as u32)
        } else {
            errs.push((get("digits").unwrap().line, 1, "`digits` must be in 1..=10000".into()));
            None
        }
    });
    let note = get("note").map(|f| f.value.clone()).unwrap_or_default();

    let has_term = get("term").is_some();
    let has_lhs = get("lhs").is_some();
    let lhs = if has_term && has_lhs {
        errs.push((b.line, 1, "record has both `term` and `lhs`".into()));
        None
    } else if has_lhs {
        expr("lhs", &mut errs).map(Lhs::Expr)
    } else if has_term {
        let index = get("index").map(|f| f.value.clone());
        if index.is_none() {
            errs.push((b.line, 1, "missing key `index`".into()));
        }
        let term = expr("term", &mut errs);
        if get("start").is_some() {
            let start = int_field("start", &mut errs);
            match (index, start, term) {
                (Some(index), Some(start), Some(term)) => Some(Lhs::Series(SeriesSpec { index, start, term })),
                _ => None,
            }
        } else if get("lower").is_some() && get("upper").is_some() {
            let lower = expr("lower", &mut errs);
            let upper = expr("upper", &mut errs);
            match (index, lower, upper, term) {
                (Some(index), Some(lower), Some(upper), Some(summand)) => {
                    Some(Lhs::Finite(FiniteSpec { index, lower, upper, summand }))
                }
                _ => None,
            }
        } else {
            errs.push((b.line, 1, "`term` needs either `start` or `lower`/`upper`".into()));
            None
        }
    } else {
        errs.push((b.line, 1, "missing left-hand side (`term` or `lhs`)".into()));
        None
    };

    if let (Some(kind), Some(lhs), Some(rhs), Some(params)) = (kind, lhs, rhs, params) {
        let rec = IdentityRecord {
            id,
            kind,
            lhs,
            rhs,
            params,
            tail,
            paper_ref,
            as_printed,
            note,
            digits,
        };
        if let Err(m) = validate(&rec) {
            errs.extend(m.into_iter().map(|m| (b.line, 1, m)));
        }
        if errs.is_empty() {
            return Ok(rec);
        }
    }
    if errs.is_empty() {
        errs.push((b.line, 1, "invalid record".into()));
    }
    Err(errs)
}

fn validate(r: &IdentityRecord) -> Result<(), Vec<String>> {
    let mut errs = Vec::new();
    let declared: BTreeSet<String> = r.params.iter().map(|p| p.name.clone()).collect();
    let mut check = |what: &str, e: &Expr, extra: Option<&str>| {
        for v in e.free_vars() {
            if !declared.contains(&v) && Some(v.as_str()) != extra {
                errs.push(format!("undeclared variable `{v}` in {what}"));
            }
        }
    };
    check("rhs", &r.rhs, None);
    let shape_ok = match (&r.kind, &r.lhs) {
        (Kind::Series, Lhs::Series(_)) | (Kind::Finite, Lhs::Finite(_)) => true,
        (Kind::Integral, Lhs::Series(_) | Lhs::Expr(_)) => true,
        (Kind::Algebraic | Kind::Radical | Kind::Constant, Lhs::Expr(_)) => true,
        _ => false,
    };
    match &r.lhs {
        Lhs::Series(s) => {
            check("term", &s.term, Some(&s.index));
            if r.tail.is_none() {
                errs.push("series record needs a tail strategy".into());
            }
        }
        Lhs::Finite(f) => {
            check("term", &f.summand, Some(&f.index));
            check("lower", &f.lower, None);
            check("upper", &f.upper, None);
        }
        Lhs::Expr(e) => check("lhs", e, None),
    }
    let index = match &r.lhs {
        Lhs::Series(s) => Some(&s.index),
        Lhs::Finite(f) => Some(&f.index),
        Lhs::Expr(_) => None,
    };
    if let Some(ix) = index {
        if declared.contains(ix) {
            errs.push(format!("index `{ix}` is also declared as a parameter"));
        }
    }
    if !shape_ok {
        errs.push(format!("left-hand side does not fit kind `{}`", r.kind));
    }
    if r.tail.is_some() && !matches!(r.lhs, Lhs::Series(_)) {
        errs.push("tail strategy given for a non-series left-hand side".into());
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs)
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Canonical text for one record; parses back to an equal record.
pub fn serialize_record(r: &IdentityRecord) -> String {
    let mut s = String::from("[identity]\n");
    s += &format!("id = {}\n", quote(&r.id));
    s += &format!("kind = {}\n", quote(r.kind.name()));
    s += &format!("paper = {}\n", quote(&r.paper_ref));
    match &r.lhs {
        Lhs::Series(sp) => {
            s += &format!("index = {}  start = {}\n", quote(&sp.index), sp.start);
            s += &format!("term = {}\n", quote(&sp.term.to_string()));
        }
        Lhs::Finite(f) => {
            s += &format!(
                "index = {}  lower = {}  upper = {}\n",
                quote(&f.index),
                quote(&f.lower.to_string()),
                quote(&f.upper.to_string())
            );
            s += &format!("term = {}\n", quote(&f.summand.to_string()));
        }
        Lhs::Expr(e) => s += &format!("lhs = {}\n", quote(&e.to_string())),
    }
    if let Some(t) = &r.tail {
        s += &format!("tail = {}\n", quote(&t.to_string()));
    }
    s += &format!("rhs = {}\n", quote(&r.rhs.to_string()));
    s += &format!("params = {}\n", quote(&ParamRange::format_list(&r.params)));
    if let Some(d) = r.digits {
        s += &format!("digits = {d}\n");
    }
    s += &format!("as_printed = {}\n", r.as_printed);
    s += &format!("note = {}\n", quote(&r.note));
    s
}

const SOURCES: [(&str, &str); 7] = [
    ("paper_s1.reg", include_str!("../../registry/paper_s1.reg")),
    ("paper_s2.reg", include_str!("../../registry/paper_s2.reg")),
    ("paper_s3.reg", include_str!("../../registry/paper_s3.reg")),
    ("paper_s4.reg", include_str!("../../registry/paper_s4.reg")),
    ("paper_s5.reg", include_str!("../../registry/paper_s5.reg")),
    ("paper_s6.reg", include_str!("../../registry/paper_s6.reg")),
    ("paper_s7.reg", include_str!("../../registry/paper_s7.reg")),
];

/// Names and contents of the shipped registry files.
pub fn builtin_sources() -> &'static [(&'static str, &'static str)] {
    &SOURCES
}

/// Every shipped record, in file order.
pub fn builtin_registry() -> Vec<IdentityRecord> {
    let mut all = ParsedRegistry::default();
    for (name, text) in SOURCES {
        all.merge(parse_registry_named(text, name));
    }
    if !all.is_ok() {
        let msgs: Vec<String> = all.diagnostics.iter().map(|d| d.to_string()).collect();
        panic!("shipped registry is invalid:\n{}", msgs.join("\n"));
    }
    all.records
}
