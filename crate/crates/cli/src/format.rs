//! Line-oriented text format for algebras and ring specifications.
//!
//! ```text
//! format_version 1
//! name dual-n2
//! note free text, kept verbatim
//! field Q
//! algebra
//!   dim 2
//!   labels 1 x
//!   unit [1 0]
//!   mult 0 0 0 1        # b_0 * b_0 += 1 * b_0  (0-based basis indices)
//!   mult 0 1 1 1
//!   mult 1 0 1 1
//! end
//! subspace I = ideal [0 1]
//! lambda
//!   n 2
//!   ideal 2 I
//! end
//! ```
//!
//! Instead of `algebra ... end` a `quiver ... end` block may define the algebra (see
//! [`crate::quiver`]); its vertex idempotents are available as elements `e1, e2, ...`.
//! Comments start with `#`. Scalars are integers or `p/q`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use tiltkit::field::{FieldSpec, Rat};

use crate::quiver::{Arrow, QuiverSpec, Relation};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecFile {
    pub name: String,
    pub notes: Vec<String>,
    pub field: FieldSpec,
    pub algebra: AlgebraSource,
    pub elements: Vec<(String, Vec<Rat>)>,
    pub subspaces: Vec<(String, SubspaceExpr)>,
    pub lambda: Option<LambdaBlock>,
    pub block: Option<BlockBlock>,
    pub tiled: Option<TiledBlock>,
    pub options: FileOptions,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSource {
    Table(AlgebraTable),
    Quiver(QuiverSpec),
}

/// Structure constants `b_i b_j = Σ c b_k` as sparse triples, sorted by `(i, j, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraTable {
    pub dim: usize,
    pub labels: Option<Vec<String>>,
    pub unit: Vec<Rat>,
    pub mult: Vec<(usize, usize, usize, Rat)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubspaceExpr {
    Full,
    Zero,
    Radical,
    Span(Vec<Vec<Rat>>),
    /// Two-sided ideal generated by the vectors.
    Ideal(Vec<Vec<Rat>>),
    /// `k`-th power of a named subspace.
    Power(String, usize),
    /// `e A f` for named elements.
    Corner(String, String),
    Sum(String, String),
    Meet(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaBlock {
    pub n: usize,
    /// `I_2..I_n` by name.
    pub ideals: Vec<String>,
    /// `A_i` overrides (default `A`).
    pub subrings: BTreeMap<usize, String>,
    /// `I_ij` overrides for `2 ≤ j < i` (default `I_j`, or `A` with `lower_full`).
    pub ideals_ij: BTreeMap<(usize, usize), String>,
    pub lower_full: bool,
}

/// Block extension; block indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockBlock {
    pub idempotents: Vec<String>,
    pub sizes: Vec<usize>,
    pub strict_case2: bool,
    /// `(block, q) → B_{block,q}`
    pub subrings: BTreeMap<(usize, usize), String>,
    /// `(block, q) → I_{block,q}`
    pub ideals: BTreeMap<(usize, usize), String>,
    /// `(block, p, q) → I_{block,p,q}`
    pub ideals_pq: BTreeMap<(usize, usize, usize), String>,
    /// `(i, s, p, q)` off-diagonal entries
    pub off: BTreeMap<(usize, usize, usize, usize), String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiledBlock {
    pub n: usize,
    /// `I_ij = P^{j-i}` for the named subspace `P`.
    pub powers: Option<String>,
    pub ideals: BTreeMap<(usize, usize), String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FileOptions {
    pub depth: Option<usize>,
    /// `max_dim, samples, depth`
    pub budget: Option<(usize, usize, usize)>,
    pub seed: Option<u64>,
}

impl FileOptions {
    fn is_empty(&self) -> bool {
        self.depth.is_none() && self.budget.is_none() && self.seed.is_none()
    }
}

// ---------------------------------------------------------------- serialization

fn vec_text(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(Rat::to_string).collect();
    format!("[{}]", parts.join(" "))
}

fn vecs_text(vs: &[Vec<Rat>]) -> String {
    vs.iter().map(|v| vec_text(v)).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for SubspaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubspaceExpr::Full => write!(f, "full"),
            SubspaceExpr::Zero => write!(f, "zero"),
            SubspaceExpr::Radical => write!(f, "radical"),
            SubspaceExpr::Span(v) => write!(f, "span {}", vecs_text(v)),
            SubspaceExpr::Ideal(v) => write!(f, "ideal {}", vecs_text(v)),
            SubspaceExpr::Power(s, k) => write!(f, "power {s} {k}"),
            SubspaceExpr::Corner(a, b) => write!(f, "corner {a} {b}"),
            SubspaceExpr::Sum(a, b) => write!(f, "sum {a} {b}"),
            SubspaceExpr::Meet(a, b) => write!(f, "meet {a} {b}"),
        }
    }
}

impl SpecFile {
    /// Canonical text; `parse(&x.to_text()) == x` for normalized values.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "format_version {FORMAT_VERSION}");
        let _ = writeln!(s, "name {}", self.name);
        for n in &self.notes {
            let _ = writeln!(s, "note {n}");
        }
        let _ = writeln!(s, "field {}", self.field);
        match &self.algebra {
            AlgebraSource::Table(t) => {
                s.push_str("algebra\n");
                let _ = writeln!(s, "  dim {}", t.dim);
                if let Some(l) = &t.labels {
                    let _ = writeln!(s, "  labels {}", l.join(" "));
                }
                let _ = writeln!(s, "  unit {}", vec_text(&t.unit));
                for (i, j, k, c) in &t.mult {
                    let _ = writeln!(s, "  mult {i} {j} {k} {c}");
                }
                s.push_str("end\n");
            }
            AlgebraSource::Quiver(q) => {
                s.push_str("quiver\n");
                let _ = writeln!(s, "  vertices {}", q.vertices);
                for a in &q.arrows {
                    let _ = writeln!(s, "  arrow {} {} {}", a.label, a.source, a.target);
                }
                for r in &q.relations {
                    let _ = writeln!(s, "  relation {r}");
                }
                let _ = writeln!(s, "  bound {}", q.bound);
                s.push_str("end\n");
            }
        }
        for (name, v) in &self.elements {
            let _ = writeln!(s, "element {name} = {}", vec_text(v));
        }
        for (name, e) in &self.subspaces {
            let _ = writeln!(s, "subspace {name} = {e}");
        }
        if let Some(l) = &self.lambda {
            s.push_str("lambda\n");
            let _ = writeln!(s, "  n {}", l.n);
            for (k, name) in l.ideals.iter().enumerate() {
                let _ = writeln!(s, "  ideal {} {name}", k + 2);
            }
            for (i, name) in &l.subrings {
                let _ = writeln!(s, "  subring {i} {name}");
            }
            if l.lower_full {
                s.push_str("  lower_full\n");
            }
            for ((i, j), name) in &l.ideals_ij {
                let _ = writeln!(s, "  ideal_ij {i} {j} {name}");
            }
            s.push_str("end\n");
        }
        if let Some(b) = &self.block {
            s.push_str("block\n");
            let _ = writeln!(s, "  idempotents {}", b.idempotents.join(" "));
            let sizes: Vec<String> = b.sizes.iter().map(usize::to_string).collect();
            let _ = writeln!(s, "  sizes {}", sizes.join(" "));
            if !b.strict_case2 {
                s.push_str("  strict_case2 false\n");
            }
            for ((blk, q), name) in &b.subrings {
                let _ = writeln!(s, "  diag_subring {blk} {q} {name}");
            }
            for ((blk, q), name) in &b.ideals {
                let _ = writeln!(s, "  diag_ideal {blk} {q} {name}");
            }
            for ((blk, p, q), name) in &b.ideals_pq {
                let _ = writeln!(s, "  diag_ideal_pq {blk} {p} {q} {name}");
            }
            for ((i, t, p, q), name) in &b.off {
                let _ = writeln!(s, "  off {i} {t} {p} {q} {name}");
            }
            s.push_str("end\n");
        }
        if let Some(t) = &self.tiled {
            s.push_str("tiled\n");
            let _ = writeln!(s, "  n {}", t.n);
            if let Some(p) = &t.powers {
                let _ = writeln!(s, "  powers {p}");
            }
            for ((i, j), name) in &t.ideals {
                let _ = writeln!(s, "  ideal {i} {j} {name}");
            }
            s.push_str("end\n");
        }
        if !self.options.is_empty() {
            s.push_str("options\n");
            if let Some(d) = self.options.depth {
                let _ = writeln!(s, "  depth {d}");
            }
            if let Some((m, k, d)) = self.options.budget {
                let _ = writeln!(s, "  budget {m},{k},{d}");
            }
            if let Some(seed) = self.options.seed {
                let _ = writeln!(s, "  seed {seed}");
            }
            s.push_str("end\n");
        }
        s
    }
}

// ---------------------------------------------------------------- parsing

#[derive(Clone, Copy, Debug)]
struct Tok<'a> {
    text: &'a str,
    col: usize,
}

/// Splits on whitespace, with `[`, `]` and `=` as separate tokens. Columns are 1-based
/// character positions.
fn tokenize(line: &str) -> Vec<Tok<'_>> {
    let line = match line.find('#') {
        Some(p) => &line[..p],
        None => line,
    };
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let col_of = |byte: usize| line[..byte].chars().count() + 1;
    for (b, ch) in line.char_indices() {
        let special = matches!(ch, '[' | ']' | '=');
        if ch.is_whitespace() || special {
            if let Some(s) = start.take() {
                out.push(Tok { text: &line[s..b], col: col_of(s) });
            }
            if special {
                out.push(Tok { text: &line[b..b + 1], col: col_of(b) });
            }
        } else if start.is_none() {
            start = Some(b);
        }
    }
    if let Some(s) = start {
        out.push(Tok { text: &line[s..], col: col_of(s) });
    }
    out
}

struct Line<'a> {
    no: usize,
    raw: &'a str,
    toks: Vec<Tok<'a>>,
}

impl<'a> Line<'a> {
    fn err(&self, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError { line: self.no, column: col, message: msg.into() }
    }

    fn end_col(&self) -> usize {
        self.toks.last().map_or(1, |t| t.col + t.text.chars().count())
    }

    fn tok(&self, k: usize, what: &str) -> Result<Tok<'a>, ParseError> {
        self.toks.get(k).copied().ok_or_else(|| self.err(self.end_col(), format!("expected {what}")))
    }

    fn usize_at(&self, k: usize, what: &str) -> Result<usize, ParseError> {
        let t = self.tok(k, what)?;
        t.text.parse().map_err(|_| self.err(t.col, format!("expected {what}, found `{}`", t.text)))
    }

    fn name_at(&self, k: usize, what: &str) -> Result<String, ParseError> {
        let t = self.tok(k, what)?;
        if !is_name(t.text) {
            return Err(self.err(t.col, format!("expected {what}, found `{}`", t.text)));
        }
        Ok(t.text.to_string())
    }

    fn expect_len(&self, n: usize) -> Result<(), ParseError> {
        match self.toks.get(n) {
            Some(t) => Err(self.err(t.col, format!("unexpected `{}`", t.text))),
            None if self.toks.len() < n => Err(self.err(self.end_col(), "missing arguments")),
            None => Ok(()),
        }
    }

    /// Text after the first token, verbatim.
    fn rest(&self) -> &'a str {
        match self.toks.first() {
            Some(t) => {
                let byte = self.raw.char_indices().nth(t.col - 1).map_or(0, |(b, _)| b) + t.text.len();
                self.raw[byte..].trim()
            }
            None => "",
        }
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '^' || c == '\'')
}

fn parse_rat(line: &Line<'_>, t: Tok<'_>) -> Result<Rat, ParseError> {
    Rat::from_str(t.text).map_err(|_| line.err(t.col, format!("expected a scalar, found `{}`", t.text)))
}

/// Parses `[a b c] [d e f] ...` starting at token `k`; returns the vectors and the next index.
fn parse_vectors(line: &Line<'_>, mut k: usize) -> Result<(Vec<Vec<Rat>>, usize), ParseError> {
    let mut out = Vec::new();
    while let Some(t) = line.toks.get(k) {
        if t.text != "[" {
            break;
        }
        k += 1;
        let mut v = Vec::new();
        loop {
            let t = line.tok(k, "`]`")?;
            k += 1;
            if t.text == "]" {
                break;
            }
            v.push(parse_rat(line, t)?);
        }
        out.push(v);
    }
    Ok((out, k))
}

fn parse_subspace_expr(line: &Line<'_>, k: usize) -> Result<SubspaceExpr, ParseError> {
    let head = line.tok(k, "subspace expression")?;
    let two_names = |ctor: fn(String, String) -> SubspaceExpr| -> Result<SubspaceExpr, ParseError> {
        let a = line.name_at(k + 1, "a name")?;
        let b = line.name_at(k + 2, "a name")?;
        line.expect_len(k + 3)?;
        Ok(ctor(a, b))
    };
    match head.text {
        "full" | "zero" | "radical" => {
            line.expect_len(k + 1)?;
            Ok(match head.text {
                "full" => SubspaceExpr::Full,
                "zero" => SubspaceExpr::Zero,
                _ => SubspaceExpr::Radical,
            })
        }
        "span" | "ideal" => {
            let (vs, next) = parse_vectors(line, k + 1)?;
            line.expect_len(next)?;
            if vs.is_empty() {
                return Err(line.err(line.end_col(), "expected at least one vector `[...]`"));
            }
            Ok(if head.text == "span" { SubspaceExpr::Span(vs) } else { SubspaceExpr::Ideal(vs) })
        }
        "power" => {
            let s = line.name_at(k + 1, "a subspace name")?;
            let e = line.usize_at(k + 2, "an exponent")?;
            line.expect_len(k + 3)?;
            Ok(SubspaceExpr::Power(s, e))
        }
        "corner" => two_names(SubspaceExpr::Corner),
        "sum" => two_names(SubspaceExpr::Sum),
        "meet" => two_names(SubspaceExpr::Meet),
        other => Err(line.err(head.col, format!("unknown subspace expression `{other}`"))),
    }
}

fn parse_relation(line: &Line<'_>, k: usize) -> Result<Relation, ParseError> {
    let mut terms = Vec::new();
    let mut idx = k;
    let mut sign = Rat::one();
    let mut expect_term = true;
    while let Some(t) = line.toks.get(idx) {
        if !expect_term {
            sign = match t.text {
                "+" => Rat::one(),
                "-" => Rat::one().neg(),
                _ => return Err(line.err(t.col, format!("expected `+` or `-`, found `{}`", t.text))),
            };
            expect_term = true;
        } else if t.text == "-" && terms.is_empty() && sign == Rat::one() {
            sign = sign.neg();
        } else {
            let (coef, path_tok) = if Rat::from_str(t.text).is_ok() {
                let c = parse_rat(line, *t)?;
                idx += 1;
                (c, line.tok(idx, "a path")?)
            } else {
                (Rat::one(), *t)
            };
            let path: Vec<String> = path_tok.text.split('*').map(str::to_string).collect();
            if path.iter().any(|a| !is_name(a)) {
                return Err(line.err(path_tok.col, format!("bad path `{}`", path_tok.text)));
            }
            terms.push((sign.mul(&coef), path));
            sign = Rat::one();
            expect_term = false;
        }
        idx += 1;
    }
    if terms.is_empty() || expect_term {
        return Err(line.err(line.end_col(), "incomplete relation"));
    }
    Ok(Relation { terms })
}

fn parse_budget(line: &Line<'_>, k: usize) -> Result<(usize, usize, usize), ParseError> {
    let t = line.tok(k, "max_dim,samples,depth")?;
    let nums: Vec<Option<usize>> = t.text.split(',').map(|p| p.parse().ok()).collect();
    match nums.as_slice() {
        [Some(a), Some(b), Some(c)] => Ok((*a, *b, *c)),
        _ => Err(line.err(t.col, "budget must be max_dim,samples,depth")),
    }
}

/// Parses a spec file; errors carry the line and column of the offending token.
pub fn parse(text: &str) -> Result<SpecFile, ParseError> {
    let lines: Vec<Line<'_>> = text
        .lines()
        .enumerate()
        .map(|(i, raw)| Line { no: i + 1, raw, toks: tokenize(raw) })
        .filter(|l| !l.toks.is_empty())
        .collect();
    let mut it = lines.iter().peekable();
    let first = it.next().ok_or(ParseError { line: 1, column: 1, message: "empty input".into() })?;
    if first.toks[0].text != "format_version" {
        return Err(first.err(first.toks[0].col, "the first line must be `format_version 1`"));
    }
    let v = first.usize_at(1, "a version number")?;
    first.expect_len(2)?;
    if v != FORMAT_VERSION as usize {
        return Err(first.err(first.toks[1].col, format!("unsupported format_version {v}")));
    }

    let mut name = None;
    let mut notes = Vec::new();
    let mut field = None;
    let mut algebra = None;
    let mut elements: Vec<(String, Vec<Rat>)> = Vec::new();
    let mut subspaces: Vec<(String, SubspaceExpr)> = Vec::new();
    let mut lambda = None;
    let mut block = None;
    let mut tiled = None;
    let mut options = None;

    // Collects the lines of a `... end` section.
    fn section<'l, 'a>(
        it: &mut std::iter::Peekable<std::slice::Iter<'l, Line<'a>>>,
        opener: &Line<'a>,
    ) -> Result<Vec<&'l Line<'a>>, ParseError> {
        let mut body = Vec::new();
        for l in it.by_ref() {
            if l.toks[0].text == "end" {
                l.expect_len(1)?;
                return Ok(body);
            }
            body.push(l);
        }
        Err(opener.err(opener.toks[0].col, format!("`{}` section is missing `end`", opener.toks[0].text)))
    }

    fn dup(l: &Line<'_>) -> ParseError {
        l.err(l.toks[0].col, format!("duplicate `{}`", l.toks[0].text))
    }

    while let Some(l) = it.next() {
        let head = l.toks[0];
        match head.text {
            "name" => {
                if name.is_some() {
                    return Err(dup(l));
                }
                name = Some(l.name_at(1, "a name")?);
                l.expect_len(2)?;
            }
            "note" => notes.push(l.rest().to_string()),
            "field" => {
                if field.is_some() {
                    return Err(dup(l));
                }
                let t = l.tok(1, "Q or Fp:p")?;
                field = Some(FieldSpec::from_str(t.text).map_err(|e| l.err(t.col, e.to_string()))?);
                l.expect_len(2)?;
            }
            "algebra" => {
                if algebra.is_some() {
                    return Err(dup(l));
                }
                l.expect_len(1)?;
                algebra = Some(AlgebraSource::Table(parse_table(l, &section(&mut it, l)?)?));
            }
            "quiver" => {
                if algebra.is_some() {
                    return Err(l.err(head.col, "the algebra is already defined"));
                }
                l.expect_len(1)?;
                algebra = Some(AlgebraSource::Quiver(parse_quiver(l, &section(&mut it, l)?)?));
            }
            "element" => {
                let n = l.name_at(1, "an element name")?;
                let eq = l.tok(2, "`=`")?;
                if eq.text != "=" {
                    return Err(l.err(eq.col, "expected `=`"));
                }
                let (vs, next) = parse_vectors(l, 3)?;
                l.expect_len(next)?;
                if vs.len() != 1 {
                    return Err(l.err(eq.col + 2, "expected exactly one vector"));
                }
                if elements.iter().any(|(m, _)| *m == n) {
                    return Err(l.err(l.toks[1].col, format!("element `{n}` defined twice")));
                }
                elements.push((n, vs.into_iter().next().unwrap()));
            }
            "subspace" => {
                let n = l.name_at(1, "a subspace name")?;
                let eq = l.tok(2, "`=`")?;
                if eq.text != "=" {
                    return Err(l.err(eq.col, "expected `=`"));
                }
                let e = parse_subspace_expr(l, 3)?;
                if subspaces.iter().any(|(m, _)| *m == n) {
                    return Err(l.err(l.toks[1].col, format!("subspace `{n}` defined twice")));
                }
                subspaces.push((n, e));
            }
            "lambda" => {
                if lambda.is_some() {
                    return Err(dup(l));
                }
                l.expect_len(1)?;
                lambda = Some(parse_lambda(l, &section(&mut it, l)?)?);
            }
            "block" => {
                if block.is_some() {
                    return Err(dup(l));
                }
                l.expect_len(1)?;
                block = Some(parse_block(l, &section(&mut it, l)?)?);
            }
            "tiled" => {
                if tiled.is_some() {
                    return Err(dup(l));
                }
                l.expect_len(1)?;
                tiled = Some(parse_tiled(l, &section(&mut it, l)?)?);
            }
            "options" => {
                if options.is_some() {
                    return Err(dup(l));
                }
                l.expect_len(1)?;
                options = Some(parse_options(&section(&mut it, l)?)?);
            }
            other => return Err(l.err(head.col, format!("unknown keyword `{other}`"))),
        }
    }
    let last = lines.last().map_or(1, |l| l.no);
    let missing = |what: &str| ParseError { line: last, column: 1, message: format!("missing `{what}`") };
    Ok(SpecFile {
        name: name.ok_or_else(|| missing("name"))?,
        notes,
        field: field.ok_or_else(|| missing("field"))?,
        algebra: algebra.ok_or_else(|| missing("algebra"))?,
        elements,
        subspaces,
        lambda,
        block,
        tiled,
        options: options.unwrap_or_default(),
    })
}

fn parse_table(opener: &Line<'_>, body: &[&Line<'_>]) -> Result<AlgebraTable, ParseError> {
    let mut dim = None;
    let mut labels = None;
    let mut unit = None;
    let mut mult = Vec::new();
    for l in body {
        let head = l.toks[0];
        match head.text {
            "dim" => {
                dim = Some(l.usize_at(1, "a dimension")?);
                l.expect_len(2)?;
            }
            "labels" => labels = Some(l.toks[1..].iter().map(|t| t.text.to_string()).collect::<Vec<_>>()),
            "unit" => {
                let (vs, next) = parse_vectors(l, 1)?;
                l.expect_len(next)?;
                if vs.len() != 1 {
                    return Err(l.err(head.col, "expected one vector"));
                }
                unit = Some(vs.into_iter().next().unwrap());
            }
            "mult" => {
                let i = l.usize_at(1, "a basis index")?;
                let j = l.usize_at(2, "a basis index")?;
                let k = l.usize_at(3, "a basis index")?;
                let c = parse_rat(l, l.tok(4, "a coefficient")?)?;
                l.expect_len(5)?;
                mult.push(((i, j, k, c), l.no));
            }
            other => return Err(l.err(head.col, format!("unknown algebra field `{other}`"))),
        }
    }
    let dim = dim.ok_or_else(|| opener.err(1, "algebra block is missing `dim`"))?;
    let unit = unit.ok_or_else(|| opener.err(1, "algebra block is missing `unit`"))?;
    if unit.len() != dim {
        return Err(opener.err(1, format!("unit has length {} but dim is {dim}", unit.len())));
    }
    if let Some(l) = &labels {
        if l.len() != dim {
            return Err(opener.err(1, format!("{} labels for dimension {dim}", l.len())));
        }
    }
    let mut seen = BTreeMap::new();
    for ((i, j, k, c), no) in mult {
        if i >= dim || j >= dim || k >= dim {
            return Err(ParseError { line: no, column: 1, message: format!("mult index out of range (dim {dim})") });
        }
        if seen.insert((i, j, k), c).is_some() {
            return Err(ParseError { line: no, column: 1, message: format!("duplicate mult {i} {j} {k}") });
        }
    }
    let mult = seen.into_iter().filter(|(_, c)| !c.is_zero()).map(|((i, j, k), c)| (i, j, k, c)).collect();
    Ok(AlgebraTable { dim, labels, unit, mult })
}

fn parse_quiver(opener: &Line<'_>, body: &[&Line<'_>]) -> Result<QuiverSpec, ParseError> {
    let mut vertices = None;
    let mut arrows = Vec::new();
    let mut relations = Vec::new();
    let mut bound = None;
    for l in body {
        let head = l.toks[0];
        match head.text {
            "vertices" => {
                vertices = Some(l.usize_at(1, "a vertex count")?);
                l.expect_len(2)?;
            }
            "arrow" => {
                let label = l.name_at(1, "an arrow label")?;
                let source = l.usize_at(2, "a source vertex")?;
                let target = l.usize_at(3, "a target vertex")?;
                l.expect_len(4)?;
                arrows.push(Arrow { label, source, target });
            }
            "relation" => relations.push(parse_relation(l, 1)?),
            "bound" => {
                bound = Some(l.usize_at(1, "a path length bound")?);
                l.expect_len(2)?;
            }
            other => return Err(l.err(head.col, format!("unknown quiver field `{other}`"))),
        }
    }
    Ok(QuiverSpec {
        vertices: vertices.ok_or_else(|| opener.err(1, "quiver block is missing `vertices`"))?,
        arrows,
        relations,
        bound: bound.ok_or_else(|| opener.err(1, "quiver block is missing `bound`"))?,
    })
}

fn parse_lambda(opener: &Line<'_>, body: &[&Line<'_>]) -> Result<LambdaBlock, ParseError> {
    let mut n = None;
    let mut ideals = BTreeMap::new();
    let mut subrings = BTreeMap::new();
    let mut ideals_ij = BTreeMap::new();
    let mut lower_full = false;
    for l in body {
        let head = l.toks[0];
        match head.text {
            "n" => {
                n = Some(l.usize_at(1, "n")?);
                l.expect_len(2)?;
            }
            "ideal" => {
                ideals.insert(l.usize_at(1, "an index")?, l.name_at(2, "a subspace name")?);
                l.expect_len(3)?;
            }
            "subring" => {
                subrings.insert(l.usize_at(1, "an index")?, l.name_at(2, "a subspace name")?);
                l.expect_len(3)?;
            }
            "ideal_ij" => {
                let i = l.usize_at(1, "i")?;
                let j = l.usize_at(2, "j")?;
                ideals_ij.insert((i, j), l.name_at(3, "a subspace name")?);
                l.expect_len(4)?;
            }
            "lower_full" => {
                l.expect_len(1)?;
                lower_full = true;
            }
            other => return Err(l.err(head.col, format!("unknown lambda field `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| opener.err(1, "lambda block is missing `n`"))?;
    if n < 2 {
        return Err(opener.err(1, "lambda needs n ≥ 2"));
    }
    let keys: Vec<usize> = ideals.keys().copied().collect();
    if keys != (2..=n).collect::<Vec<_>>() {
        return Err(opener.err(1, format!("lambda needs `ideal i` for exactly i = 2..{n}")));
    }
    if subrings.keys().any(|&i| i < 2 || i > n) {
        return Err(opener.err(1, "subring index out of range"));
    }
    if ideals_ij.keys().any(|&(i, j)| !(2 <= j && j < i && i <= n)) {
        return Err(opener.err(1, "ideal_ij needs 2 ≤ j < i ≤ n"));
    }
    Ok(LambdaBlock { n, ideals: ideals.into_values().collect(), subrings, ideals_ij, lower_full })
}

fn parse_block(opener: &Line<'_>, body: &[&Line<'_>]) -> Result<BlockBlock, ParseError> {
    let mut idempotents = None;
    let mut sizes = None;
    let mut strict_case2 = true;
    let mut subrings = BTreeMap::new();
    let mut ideals = BTreeMap::new();
    let mut ideals_pq = BTreeMap::new();
    let mut off = BTreeMap::new();
    for l in body {
        let head = l.toks[0];
        match head.text {
            "idempotents" => {
                idempotents = Some((1..l.toks.len()).map(|k| l.name_at(k, "an element name")).collect::<Result<Vec<_>, _>>()?)
            }
            "sizes" => sizes = Some((1..l.toks.len()).map(|k| l.usize_at(k, "a size")).collect::<Result<Vec<_>, _>>()?),
            "strict_case2" => {
                let t = l.tok(1, "true or false")?;
                strict_case2 = match t.text {
                    "true" => true,
                    "false" => false,
                    _ => return Err(l.err(t.col, "expected true or false")),
                };
                l.expect_len(2)?;
            }
            "diag_subring" | "diag_ideal" => {
                let key = (l.usize_at(1, "a block index")?, l.usize_at(2, "an index")?);
                let name = l.name_at(3, "a subspace name")?;
                l.expect_len(4)?;
                if head.text == "diag_subring" { &mut subrings } else { &mut ideals }.insert(key, name);
            }
            "diag_ideal_pq" => {
                let key = (l.usize_at(1, "a block index")?, l.usize_at(2, "p")?, l.usize_at(3, "q")?);
                ideals_pq.insert(key, l.name_at(4, "a subspace name")?);
                l.expect_len(5)?;
            }
            "off" => {
                let key = (l.usize_at(1, "i")?, l.usize_at(2, "s")?, l.usize_at(3, "p")?, l.usize_at(4, "q")?);
                off.insert(key, l.name_at(5, "a subspace name")?);
                l.expect_len(6)?;
            }
            other => return Err(l.err(head.col, format!("unknown block field `{other}`"))),
        }
    }
    let idempotents = idempotents.ok_or_else(|| opener.err(1, "block is missing `idempotents`"))?;
    let sizes = sizes.ok_or_else(|| opener.err(1, "block is missing `sizes`"))?;
    if idempotents.len() != sizes.len() || sizes.is_empty() {
        return Err(opener.err(1, "block needs one size per idempotent"));
    }
    Ok(BlockBlock { idempotents, sizes, strict_case2, subrings, ideals, ideals_pq, off })
}

fn parse_tiled(opener: &Line<'_>, body: &[&Line<'_>]) -> Result<TiledBlock, ParseError> {
    let mut n = None;
    let mut powers = None;
    let mut ideals = BTreeMap::new();
    for l in body {
        let head = l.toks[0];
        match head.text {
            "n" => {
                n = Some(l.usize_at(1, "n")?);
                l.expect_len(2)?;
            }
            "powers" => {
                powers = Some(l.name_at(1, "a subspace name")?);
                l.expect_len(2)?;
            }
            "ideal" => {
                let key = (l.usize_at(1, "i")?, l.usize_at(2, "j")?);
                ideals.insert(key, l.name_at(3, "a subspace name")?);
                l.expect_len(4)?;
            }
            other => return Err(l.err(head.col, format!("unknown tiled field `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| opener.err(1, "tiled block is missing `n`"))?;
    if ideals.keys().any(|&(i, j)| !(1 <= i && i < j && j <= n)) {
        return Err(opener.err(1, "tiled ideals need 1 ≤ i < j ≤ n"));
    }
    if powers.is_none() && ideals.len() != n * (n - 1) / 2 {
        return Err(opener.err(1, "tiled block needs `powers` or every ideal above the diagonal"));
    }
    Ok(TiledBlock { n, powers, ideals })
}

fn parse_options(body: &[&Line<'_>]) -> Result<FileOptions, ParseError> {
    let mut o = FileOptions::default();
    for l in body {
        let head = l.toks[0];
        match head.text {
            "depth" => o.depth = Some(l.usize_at(1, "a depth")?),
            "seed" => {
                let t = l.tok(1, "a seed")?;
                o.seed = Some(t.text.parse().map_err(|_| l.err(t.col, "expected a seed"))?);
            }
            "budget" => o.budget = Some(parse_budget(l, 1)?),
            other => return Err(l.err(head.col, format!("unknown option `{other}`"))),
        }
        l.expect_len(2)?;
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL: &str = "format_version 1
name dual
field Q
algebra
  dim 2
  labels 1 x
  unit [1 0]
  mult 0 0 0 1
  mult 0 1 1 1
  mult 1 0 1 1
end
subspace I = ideal [0 1]
lambda
  n 2
  ideal 2 I
end
";

    #[test]
    fn round_trip() {
        let s = parse(DUAL).unwrap();
        assert_eq!(s.to_text(), DUAL);
        assert_eq!(parse(&s.to_text()).unwrap(), s);
    }

    #[test]
    fn errors_carry_positions() {
        let bad = DUAL.replace("mult 0 1 1 1", "mult 0 1 x 1");
        let e = parse(&bad).unwrap_err();
        assert_eq!((e.line, e.column), (9, 12));
        let e = parse(&DUAL.replace("end\nsubspace", "subspace")).unwrap_err();
        assert!(e.message.contains("unknown algebra field"), "{e}");
        let e = parse("format_version 2\n").unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn relations_parse() {
        let text = "format_version 1\nname q\nfield Q\nquiver\n  vertices 2\n  arrow a 1 1\n  arrow b 1 2\n  arrow d 2 1\n  relation a*a*a - b*d\n  relation -2/3 a*b + d*a\n  bound 5\nend\n";
        let s = parse(text).unwrap();
        let AlgebraSource::Quiver(q) = &s.algebra else { panic!() };
        assert_eq!(q.relations[1].terms[0].0, "-2/3".parse().unwrap());
        assert_eq!(s.to_text(), text);
    }
}
