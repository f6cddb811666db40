//! Parsers for the structure-equation DSL, CDGA documents and mapping-torus
//! documents, plus the shared element-expression grammar.
//!
//! Errors carry line and column (1-based) for diagnostics. Comments start
//! with `#` and run to the end of the line.

use cosym_core::cdga::{Cdga, Element, Generator, GeneratorTable};
use cosym_core::liealg::{LieAlgebra, StructureRow};
use cosym_core::linalg::Matrix;
use cosym_core::mapping_torus::{phi_from_exterior_powers, MappingTorusSpec};
use cosym_core::rational::Rational;
use cosym_core::cdga::CohomologyRing;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        col,
        msg: msg.into(),
    })
}

/// A parsed document of one of the three kinds.
pub enum Document {
    Lie(LieAlgebra),
    Cdga(CdgaDocument),
    MappingTorus(TorusDocument),
}

impl fmt::Debug for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Document::Lie(l) => write!(f, "Lie({l:?})"),
            Document::Cdga(_) => write!(f, "Cdga(..)"),
            Document::MappingTorus(t) => write!(f, "MappingTorus({:?})", t.spec),
        }
    }
}

/// CDGA document: the built algebra plus the original generator order for
/// printing.
pub struct CdgaDocument {
    pub cdga: Cdga,
    pub truncation_given: Option<usize>,
}

/// Mapping-torus document: the validated-or-not spec plus layout details
/// used by the printer.
pub struct TorusDocument {
    pub spec: MappingTorusSpec,
    pub exterior_names: Option<Vec<String>>,
    pub derived_powers: bool,
}

/// Logical lines with comments stripped: (line_number, content).
fn logical_lines(text: &str) -> Vec<(usize, String)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let no_comment = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let trimmed = no_comment.trim();
            if trimmed.is_empty() {
                None
            } else {
                Some((i + 1, trimmed.to_string()))
            }
        })
        .collect()
}

pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let lines = logical_lines(text);
    let Some((first_no, first)) = lines.first() else {
        return err(1, 1, "empty document");
    };
    let head = first.split_whitespace().next().unwrap_or("");
    match head {
        "lie" => parse_lie(&lines).map(Document::Lie),
        "cdga" => parse_cdga(&lines).map(Document::Cdga),
        "mapping-torus" => parse_torus(&lines).map(Document::MappingTorus),
        other => err(
            *first_no,
            1,
            format!("expected `lie`, `cdga` or `mapping-torus`, found `{other}`"),
        ),
    }
}

// ---------------------------------------------------------------- rationals

/// `p`, `-p`, `p/q`; no decimals accepted.
pub fn parse_rational(s: &str) -> Option<Rational> {
    use num_bigint::BigInt;
    let digits_only = |t: &str| {
        let body = t.strip_prefix(['+', '-']).unwrap_or(t);
        !body.is_empty() && body.chars().all(|c| c.is_ascii_digit())
    };
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    if !digits_only(num) {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = match den {
        Some(d) if digits_only(d) => d.parse().ok()?,
        Some(_) => return None,
        None => BigInt::from(1),
    };
    if d == BigInt::from(0) {
        return None;
    }
    Some(Rational::new(n, d))
}

// --------------------------------------------------------------- expressions

/// Element expression over a generator table:
/// `expr := term (('+'|'-') term)*`,
/// `term := [rational '*'] factor ('^' factor)* | rational | '0'`.
pub fn parse_element(
    text: &str,
    table: &Arc<GeneratorTable>,
    line: usize,
) -> Result<Element, ParseError> {
    let mut acc = Element::zero(table.clone());
    let mut rest = text.trim();
    if rest.is_empty() {
        return err(line, 1, "empty expression");
    }
    let mut sign = Rational::one();
    let mut first = true;
    while !rest.is_empty() {
        if !first || rest.starts_with(['+', '-']) {
            let (op, tail) = rest.split_at(1);
            match op {
                "+" => sign = Rational::one(),
                "-" => sign = -Rational::one(),
                _ => {
                    if first {
                        sign = Rational::one();
                        // no explicit sign on the first term
                        let (term, tail2) = take_term(rest, line)?;
                        acc = add_term(acc, &term, &sign, table, line)?;
                        rest = tail2.trim_start();
                        first = false;
                        continue;
                    }
                    return err(line, 1, format!("expected `+` or `-`, found `{op}`"));
                }
            }
            rest = tail.trim_start();
        }
        let (term, tail) = take_term(rest, line)?;
        acc = add_term(acc, &term, &sign, table, line)?;
        rest = tail.trim_start();
        first = false;
    }
    Ok(acc)
}

fn take_term(s: &str, line: usize) -> Result<(String, &str), ParseError> {
    let end = s
        .char_indices()
        .find(|(_, c)| *c == '+' || *c == '-')
        .map(|(i, _)| i)
        .unwrap_or(s.len());
    let term = s[..end].trim();
    if term.is_empty() {
        return err(line, 1, "empty term in expression");
    }
    Ok((term.to_string(), &s[end..]))
}

fn add_term(
    acc: Element,
    term: &str,
    sign: &Rational,
    table: &Arc<GeneratorTable>,
    line: usize,
) -> Result<Element, ParseError> {
    // split optional rational prefix `q*`
    let (coeff, body) = match term.split_once('*') {
        Some((maybe_coeff, body)) => match parse_rational(maybe_coeff) {
            Some(q) => (q, body.trim()),
            None => {
                return err(
                    line,
                    1,
                    format!("`{maybe_coeff}` is not a rational (decimals are not accepted)"),
                )
            }
        },
        None => (Rational::one(), term),
    };
    if body == "0" || (body.is_empty() && coeff.is_zero()) {
        return Ok(acc);
    }
    let mut value = if let Some(q) = parse_rational(body) {
        // pure scalar term
        Element::one(table.clone()).scale(&q)
    } else {
        let mut v = Element::one(table.clone());
        for factor in body.split('^') {
            let name = factor.trim();
            let gen = Element::generator_by_name(table.clone(), name).map_err(|_| ParseError {
                line,
                col: 1,
                msg: format!("unknown generator `{name}`"),
            })?;
            v = v.wedge(&gen).map_err(|e| ParseError {
                line,
                col: 1,
                msg: e.to_string(),
            })?;
        }
        v
    };
    value = value.scale(&(&coeff * sign));
    acc.add(&value).map_err(|e| ParseError {
        line,
        col: 1,
        msg: e.to_string(),
    })
}

// ----------------------------------------------------------------- lie files

fn parse_lie(lines: &[(usize, String)]) -> Result<LieAlgebra, ParseError> {
    let (line_no, header) = &lines[0];
    let tokens: Vec<&str> = header.split_whitespace().collect();
    match tokens.get(1) {
        Some(&"compact") => {
            if lines.len() > 1 {
                return err(
                    lines[1].0,
                    1,
                    "compact form is a single line; unexpected extra content",
                );
            }
            let tuple = header[header.find("compact").unwrap() + "compact".len()..].trim();
            parse_compact_tuple(tuple, *line_no)
        }
        Some(&"dim") => parse_lie_explicit(lines),
        _ => err(
            *line_no,
            1,
            "expected `lie compact (...)` or `lie dim N basis ...`",
        ),
    }
}

/// `(0,0,12,13,14+23)` with optional rational coefficients `q*ij` and
/// `+`/`-` joined terms; digit pairs index generators, so the compact form
/// is restricted to dimension <= 9.
fn parse_compact_tuple(text: &str, line: usize) -> Result<LieAlgebra, ParseError> {
    let inner = text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or(ParseError {
            line,
            col: 1,
            msg: "compact form must be parenthesized: (0,0,12,...)".to_string(),
        })?;
    let slots: Vec<&str> = inner.split(',').collect();
    let dim = slots.len();
    if dim > 9 {
        return err(
            line,
            1,
            format!("compact form supports dimension <= 9, got {dim}; use the explicit form"),
        );
    }
    let mut structure: Vec<StructureRow> = Vec::with_capacity(dim);
    for slot in &slots {
        let slot = slot.trim();
        let mut row: StructureRow = BTreeMap::new();
        if slot != "0" {
            let mut rest = slot;
            let mut sign = Rational::one();
            let mut first = true;
            while !rest.is_empty() {
                if rest.starts_with(['+', '-']) {
                    sign = if rest.starts_with('-') {
                        -Rational::one()
                    } else {
                        Rational::one()
                    };
                    rest = rest[1..].trim_start();
                } else if !first {
                    return err(line, 1, format!("expected `+` or `-` in slot `{slot}`"));
                }
                let end = rest
                    .char_indices()
                    .find(|(_, c)| *c == '+' || *c == '-')
                    .map(|(i, _)| i)
                    .unwrap_or(rest.len());
                let term = rest[..end].trim();
                rest = &rest[end..];
                first = false;
                let (coeff, pair) = match term.split_once('*') {
                    Some((c, p)) => (
                        parse_rational(c).ok_or(ParseError {
                            line,
                            col: 1,
                            msg: format!("bad coefficient `{c}`"),
                        })?,
                        p.trim(),
                    ),
                    None => (Rational::one(), term),
                };
                let digits: Vec<u32> = pair.chars().filter_map(|c| c.to_digit(10)).collect();
                if digits.len() != 2 || pair.chars().count() != 2 {
                    return err(
                        line,
                        1,
                        format!("`{pair}` is not a digit pair (generator indices 1-9)"),
                    );
                }
                let (mut i, mut j) = (digits[0] as usize, digits[1] as usize);
                if i == 0 || j == 0 || i > dim || j > dim {
                    return err(line, 1, format!("indices in `{pair}` out of range 1..={dim}"));
                }
                let mut c = &coeff * &sign;
                if i == j {
                    return err(line, 1, format!("`{pair}` repeats an index"));
                }
                if i > j {
                    std::mem::swap(&mut i, &mut j);
                    c = -c;
                }
                let entry = row.entry((i - 1, j - 1)).or_insert_with(Rational::zero);
                *entry += c;
            }
        }
        structure.push(row);
    }
    LieAlgebra::new(dim, None, structure).map_err(|e| ParseError {
        line,
        col: 1,
        msg: e.to_string(),
    })
}

/// Names are either a range `e1..e5` or an explicit whitespace list.
fn parse_basis_names(tokens: &[&str], dim: usize, line: usize) -> Result<Vec<String>, ParseError> {
    if tokens.len() == 1 && tokens[0].contains("..") {
        let (start, end) = tokens[0].split_once("..").unwrap();
        let prefix: String = start.chars().take_while(|c| !c.is_ascii_digit()).collect();
        let from: usize = start[prefix.len()..].parse().map_err(|_| ParseError {
            line,
            col: 1,
            msg: format!("bad range start `{start}`"),
        })?;
        let to: usize = end.strip_prefix(&prefix).unwrap_or(end).parse().map_err(|_| ParseError {
            line,
            col: 1,
            msg: format!("bad range end `{end}`"),
        })?;
        if to < from || to - from + 1 != dim {
            return err(line, 1, format!("range `{}` does not produce {dim} names", tokens[0]));
        }
        Ok((from..=to).map(|i| format!("{prefix}{i}")).collect())
    } else {
        if tokens.len() != dim {
            return err(line, 1, format!("expected {dim} basis names, got {}", tokens.len()));
        }
        Ok(tokens.iter().map(|t| t.to_string()).collect())
    }
}

fn parse_lie_explicit(lines: &[(usize, String)]) -> Result<LieAlgebra, ParseError> {
    let (line_no, header) = &lines[0];
    let tokens: Vec<&str> = header.split_whitespace().collect();
    // lie dim N basis <names>
    if tokens.len() < 4 || tokens[1] != "dim" || tokens[3] != "basis" {
        return err(*line_no, 1, "expected `lie dim N basis <names>`");
    }
    let dim: usize = tokens[2].parse().map_err(|_| ParseError {
        line: *line_no,
        col: 1,
        msg: format!("bad dimension `{}`", tokens[2]),
    })?;
    let names = parse_basis_names(&tokens[4..], dim, *line_no)?;
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let table = GeneratorTable::degree_one(&name_refs).map_err(|e| ParseError {
        line: *line_no,
        col: 1,
        msg: e.to_string(),
    })?;

    let mut structure: Vec<StructureRow> = vec![BTreeMap::new(); dim];
    for (no, content) in &lines[1..] {
        let (target, expr) = parse_d_line(content, *no)?;
        let idx = names
            .iter()
            .position(|n| *n == target)
            .ok_or(ParseError {
                line: *no,
                col: 1,
                msg: format!("unknown basis name `{target}`"),
            })?;
        let value = parse_element(&expr, &table, *no)?;
        let mut row: StructureRow = BTreeMap::new();
        for (mono, coeff) in value.terms() {
            let f = mono.factors();
            if f.len() != 2 {
                return err(*no, 1, "differential terms must be products of two generators");
            }
            row.insert((f[0] as usize, f[1] as usize), coeff.clone());
        }
        structure[idx] = row;
    }
    LieAlgebra::new(dim, Some(names), structure).map_err(|e| ParseError {
        line: *line_no,
        col: 1,
        msg: e.to_string(),
    })
}

fn parse_d_line(content: &str, line: usize) -> Result<(String, String), ParseError> {
    let rest = content.strip_prefix("d ").ok_or(ParseError {
        line,
        col: 1,
        msg: format!("expected `d <name> = <expr>`, found `{content}`"),
    })?;
    let (target, expr) = rest.split_once('=').ok_or(ParseError {
        line,
        col: 1,
        msg: "missing `=` in differential line".to_string(),
    })?;
    Ok((target.trim().to_string(), expr.trim().to_string()))
}

// ---------------------------------------------------------------- cdga files

fn parse_cdga(lines: &[(usize, String)]) -> Result<CdgaDocument, ParseError> {
    let (line_no, header) = &lines[0];
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let truncation_given = match tokens.get(1) {
        None => None,
        Some(&"truncation") => {
            let t: usize = tokens
                .get(2)
                .and_then(|s| s.parse().ok())
                .ok_or(ParseError {
                    line: *line_no,
                    col: 1,
                    msg: "expected `cdga truncation N`".to_string(),
                })?;
            Some(t)
        }
        Some(other) => {
            return err(*line_no, 1, format!("unexpected token `{other}` after `cdga`"))
        }
    };

    let mut gens: Vec<Generator> = Vec::new();
    let mut d_lines: Vec<(usize, String, String)> = Vec::new();
    for (no, content) in &lines[1..] {
        if let Some(rest) = content.strip_prefix("gen ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 2 {
                return err(*no, 1, "expected `gen <name> <degree>`");
            }
            let degree: usize = parts[1].parse().map_err(|_| ParseError {
                line: *no,
                col: 1,
                msg: format!("bad degree `{}`", parts[1]),
            })?;
            gens.push(Generator {
                name: parts[0].to_string(),
                degree,
            });
        } else if content.starts_with("d ") {
            let (target, expr) = parse_d_line(content, *no)?;
            d_lines.push((*no, target, expr));
        } else {
            return err(*no, 1, format!("expected `gen` or `d` line, found `{content}`"));
        }
    }
    let table = GeneratorTable::new(gens).map_err(|e| ParseError {
        line: *line_no,
        col: 1,
        msg: e.to_string(),
    })?;
    let mut builder = Cdga::builder(table.clone());
    if let Some(t) = truncation_given {
        builder = builder.truncation(t);
    }
    for (no, target, expr) in d_lines {
        let value = parse_element(&expr, &table, no)?;
        builder = builder.differential(&target, value).map_err(|e| ParseError {
            line: no,
            col: 1,
            msg: e.to_string(),
        })?;
    }
    let cdga = builder.build().map_err(|e| ParseError {
        line: *line_no,
        col: 1,
        msg: e.to_string(),
    })?;
    Ok(CdgaDocument {
        cdga,
        truncation_given,
    })
}

// ---------------------------------------------------------- mapping torus

fn parse_torus(lines: &[(usize, String)]) -> Result<TorusDocument, ParseError> {
    let mut exterior_names: Option<Vec<String>> = None;
    let mut fiber_dim: Option<usize> = None;
    let mut h_bases: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    let mut cup_lines: Vec<(usize, String)> = Vec::new();
    let mut fundamental: Option<(usize, usize)> = None;
    let mut phi: BTreeMap<usize, Matrix> = BTreeMap::new();
    let mut derive_powers = false;
    let mut symplectic_expr: Option<(usize, String)> = None;

    for (no, content) in &lines[1..] {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.first().copied() {
            Some("fiber") => {
                // `fiber dim N` or `fiber exterior dim N basis <names>`
                match tokens.get(1) {
                    Some(&"dim") => {
                        fiber_dim = Some(tokens.get(2).and_then(|s| s.parse().ok()).ok_or(
                            ParseError {
                                line: *no,
                                col: 1,
                                msg: "expected `fiber dim N`".to_string(),
                            },
                        )?);
                    }
                    Some(&"exterior") => {
                        if tokens.get(2) != Some(&"dim") || tokens.get(4) != Some(&"basis") {
                            return err(*no, 1, "expected `fiber exterior dim N basis <names>`");
                        }
                        let n: usize = tokens[3].parse().map_err(|_| ParseError {
                            line: *no,
                            col: 1,
                            msg: format!("bad dimension `{}`", tokens[3]),
                        })?;
                        let names = parse_basis_names(&tokens[5..], n, *no)?;
                        fiber_dim = Some(n);
                        exterior_names = Some(names);
                    }
                    _ => return err(*no, 1, "expected `fiber dim N` or `fiber exterior ...`"),
                }
            }
            Some("h") => {
                let k: usize = tokens.get(1).and_then(|s| s.parse().ok()).ok_or(ParseError {
                    line: *no,
                    col: 1,
                    msg: "expected `h <degree> = <labels>`".to_string(),
                })?;
                let eq = content.find('=').ok_or(ParseError {
                    line: *no,
                    col: 1,
                    msg: "missing `=` in h line".to_string(),
                })?;
                let labels: Vec<String> = content[eq + 1..]
                    .split_whitespace()
                    .map(str::to_string)
                    .collect();
                h_bases.insert(k, labels);
            }
            Some("cup") => cup_lines.push((*no, content.clone())),
            Some("fundamental") => {
                let eq = content.find('=').ok_or(ParseError {
                    line: *no,
                    col: 1,
                    msg: "missing `=` in fundamental line".to_string(),
                })?;
                fundamental = Some(parse_degree_index(content[eq + 1..].trim(), *no)?);
            }
            Some("phi") => {
                let k: usize = tokens.get(1).and_then(|s| s.parse().ok()).ok_or(ParseError {
                    line: *no,
                    col: 1,
                    msg: "expected `phi <degree> = [rows]`".to_string(),
                })?;
                let eq = content.find('=').ok_or(ParseError {
                    line: *no,
                    col: 1,
                    msg: "missing `=` in phi line".to_string(),
                })?;
                phi.insert(k, parse_matrix(content[eq + 1..].trim(), *no)?);
            }
            Some("derive-exterior-powers") => {
                // `derive-exterior-powers true` or `derive-exterior-powers = true`
                let value = content
                    .split(['=', ' '])
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .nth(1);
                match value {
                    Some("true") => derive_powers = true,
                    Some("false") | None => derive_powers = false,
                    Some(other) => {
                        return err(*no, 1, format!("expected true/false, found `{other}`"))
                    }
                }
            }
            Some("symplectic") => {
                let eq = content.find('=').ok_or(ParseError {
                    line: *no,
                    col: 1,
                    msg: "missing `=` in symplectic line".to_string(),
                })?;
                symplectic_expr = Some((*no, content[eq + 1..].trim().to_string()));
            }
            _ => return err(*no, 1, format!("unrecognized mapping-torus line `{content}`")),
        }
    }

    let n = fiber_dim.ok_or(ParseError {
        line: lines[0].0,
        col: 1,
        msg: "missing `fiber dim N` section".to_string(),
    })?;

    let (ring, labels) = if let Some(names) = &exterior_names {
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let ring = CohomologyRing::exterior(&name_refs).map_err(|e| ParseError {
            line: lines[0].0,
            col: 1,
            msg: e.to_string(),
        })?;
        let labels: Vec<Vec<String>> = (0..=n).map(|k| ring.labels(k).to_vec()).collect();
        (ring, labels)
    } else {
        // assemble from h/cup/fundamental sections
        let mut dims = vec![1usize];
        let mut labels: Vec<Vec<String>> = vec![vec!["1".to_string()]];
        for k in 1..=n {
            let basis = h_bases.remove(&k).unwrap_or_default();
            dims.push(basis.len());
            labels.push(basis);
        }
        let mut cup: HashMap<(usize, usize), Vec<Vec<Vec<Rational>>>> = HashMap::new();
        for p in 1..=n {
            for q in p..=n {
                if p + q > n {
                    continue;
                }
                cup.insert(
                    (p, q),
                    vec![vec![vec![Rational::zero(); dims[p + q]]; dims[q]]; dims[p]],
                );
            }
        }
        let mut explicit: std::collections::HashSet<(usize, usize, usize, usize)> =
            std::collections::HashSet::new();
        for (no, content) in &cup_lines {
            let ((p, i), (q, j), rhs) = parse_cup_line(content, *no)?;
            if p > q {
                return err(*no, 1, "cup lines must list the lower degree first");
            }
            let table = cup.get_mut(&(p, q)).ok_or(ParseError {
                line: *no,
                col: 1,
                msg: format!("cup degrees ({p},{q}) exceed the top degree"),
            })?;
            if i >= table.len() || j >= table[i].len() {
                return err(*no, 1, "cup indices out of range");
            }
            let mut value = vec![Rational::zero(); dims[p + q]];
            for (k, c) in rhs {
                if k >= value.len() {
                    return err(*no, 1, format!("target index {k} out of range"));
                }
                value[k] += c;
            }
            table[i][j] = value;
            explicit.insert((p, i, q, j));
        }
        // fill graded-commutative counterparts not given explicitly (p == q)
        for (&(p, q), table) in cup.iter_mut() {
            if p != q {
                continue;
            }
            let dim = table.len();
            for i in 0..dim {
                for j in 0..dim {
                    if i == j || !explicit.contains(&(p, i, q, j)) || explicit.contains(&(p, j, q, i))
                    {
                        continue;
                    }
                    let mut mirrored = table[i][j].clone();
                    if (p * q) % 2 == 1 {
                        for c in &mut mirrored {
                            *c = -c.clone();
                        }
                    }
                    table[j][i] = mirrored;
                }
            }
        }
        if let Some((deg, idx)) = fundamental {
            if deg != n || idx != 0 {
                return err(
                    lines[0].0,
                    1,
                    format!("fundamental class must be ({n}:0), got ({deg}:{idx})"),
                );
            }
        }
        let ring = CohomologyRing::assemble(dims, labels.clone(), cup).map_err(|e| ParseError {
            line: lines[0].0,
            col: 1,
            msg: e.to_string(),
        })?;
        (ring, labels)
    };

    // pullback matrices: given ones win, the rest derived when requested
    let mut phis: Vec<Matrix> = Vec::with_capacity(n + 1);
    if derive_powers {
        if exterior_names.is_none() {
            return err(
                lines[0].0,
                1,
                "derive-exterior-powers needs an exterior fiber",
            );
        }
        let phi1 = phi.get(&1).cloned().ok_or(ParseError {
            line: lines[0].0,
            col: 1,
            msg: "derive-exterior-powers needs `phi 1`".to_string(),
        })?;
        phis = phi_from_exterior_powers(&phi1, n);
        for (k, m) in &phi {
            phis[*k] = m.clone();
        }
    } else {
        for k in 0..=n {
            match phi.get(&k) {
                Some(m) => phis.push(m.clone()),
                None if k == 0 => phis.push(Matrix::identity(1)),
                None => {
                    return err(
                        lines[0].0,
                        1,
                        format!("missing `phi {k}` (or set derive-exterior-powers)"),
                    )
                }
            }
        }
    }

    let symplectic_class = match &symplectic_expr {
        None => None,
        Some((no, expr)) => Some(parse_label_vector(expr, &labels[2], *no)?),
    };

    let spec = MappingTorusSpec::new(ring, phis, symplectic_class);
    Ok(TorusDocument {
        spec,
        exterior_names,
        derived_powers: derive_powers,
    })
}

fn parse_degree_index(s: &str, line: usize) -> Result<(usize, usize), ParseError> {
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(s);
    let (d, i) = inner.split_once(':').ok_or(ParseError {
        line,
        col: 1,
        msg: format!("expected `(degree:index)`, found `{s}`"),
    })?;
    let d = d.trim().parse().map_err(|_| ParseError {
        line,
        col: 1,
        msg: format!("bad degree `{d}`"),
    })?;
    let i = i.trim().parse().map_err(|_| ParseError {
        line,
        col: 1,
        msg: format!("bad index `{i}`"),
    })?;
    Ok((d, i))
}

type CupLine = ((usize, usize), (usize, usize), Vec<(usize, Rational)>);

/// `cup (p:i, q:j) -> (k, c) + (k2, c2)` or `cup (p:i, q:j) -> 0`.
fn parse_cup_line(content: &str, line: usize) -> Result<CupLine, ParseError> {
    let rest = content.strip_prefix("cup").unwrap_or(content).trim();
    let (lhs, rhs) = rest.split_once("->").ok_or(ParseError {
        line,
        col: 1,
        msg: "missing `->` in cup line".to_string(),
    })?;
    let lhs = lhs.trim();
    let inner = lhs
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or(ParseError {
            line,
            col: 1,
            msg: "cup left side must be `(p:i, q:j)`".to_string(),
        })?;
    let (a, b) = inner.split_once(',').ok_or(ParseError {
        line,
        col: 1,
        msg: "cup left side must have two entries".to_string(),
    })?;
    let pi = parse_degree_index(a.trim(), line)?;
    let qj = parse_degree_index(b.trim(), line)?;
    let rhs = rhs.trim();
    if rhs == "0" {
        return Ok((pi, qj, Vec::new()));
    }
    let mut targets = Vec::new();
    for part in rhs.split('+') {
        let part = part.trim();
        let inner = part
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or(ParseError {
                line,
                col: 1,
                msg: format!("expected `(index, coeff)`, found `{part}`"),
            })?;
        let (k, c) = inner.split_once(',').ok_or(ParseError {
            line,
            col: 1,
            msg: format!("expected `(index, coeff)`, found `{part}`"),
        })?;
        let k: usize = k.trim().parse().map_err(|_| ParseError {
            line,
            col: 1,
            msg: format!("bad index `{k}`"),
        })?;
        let c = parse_rational(c.trim()).ok_or(ParseError {
            line,
            col: 1,
            msg: format!("bad coefficient `{c}`"),
        })?;
        targets.push((k, c));
    }
    Ok((pi, qj, targets))
}

/// Matrix given as a command-line argument.
pub fn parse_matrix_arg(s: &str) -> Result<Matrix, String> {
    parse_matrix(s.trim(), 0).map_err(|e| e.msg)
}

/// `[a b c; d e f; ...]` with rational entries.
fn parse_matrix(s: &str, line: usize) -> Result<Matrix, ParseError> {
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or(ParseError {
            line,
            col: 1,
            msg: "matrix must be bracketed: [r1; r2; ...]".to_string(),
        })?;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for row in inner.split(';') {
        let entries: Result<Vec<Rational>, ParseError> = row
            .split_whitespace()
            .map(|t| {
                parse_rational(t).ok_or(ParseError {
                    line,
                    col: 1,
                    msg: format!("bad matrix entry `{t}`"),
                })
            })
            .collect();
        rows.push(entries?);
    }
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return err(line, 1, "ragged matrix rows");
    }
    Ok(Matrix::from_rows(rows))
}

/// Linear combination of basis labels, e.g. `e12 + e34` or `2*x1 - y2`.
fn parse_label_vector(
    expr: &str,
    labels: &[String],
    line: usize,
) -> Result<Vec<Rational>, ParseError> {
    let mut coords = vec![Rational::zero(); labels.len()];
    let mut rest = expr.trim();
    let mut sign = Rational::one();
    let mut first = true;
    while !rest.is_empty() {
        if rest.starts_with(['+', '-']) {
            sign = if rest.starts_with('-') {
                -Rational::one()
            } else {
                Rational::one()
            };
            rest = rest[1..].trim_start();
        } else if !first {
            return err(line, 1, "expected `+` or `-`");
        }
        let end = rest
            .char_indices()
            .find(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        let term = rest[..end].trim();
        rest = &rest[end..];
        first = false;
        let (coeff, label) = match term.split_once('*') {
            Some((c, l)) => (
                parse_rational(c).ok_or(ParseError {
                    line,
                    col: 1,
                    msg: format!("bad coefficient `{c}`"),
                })?,
                l.trim(),
            ),
            None => (Rational::one(), term),
        };
        let idx = labels.iter().position(|l| l == label).ok_or(ParseError {
            line,
            col: 1,
            msg: format!("unknown basis label `{label}`"),
        })?;
        coords[idx] += &coeff * &sign;
    }
    Ok(coords)
}
