//! Canonical text forms and parsers.
//!
//! Printing emits the shortest grammar form, and parse-after-print is the
//! identity on ordinals, products, and words. Parsers distinguish grammar
//! failures, reported with a byte offset, from semantic failures such as
//! unknown points or exponents where a bound is required.
//!
//! Grammar sketch (whitespace between tokens is ignored):
//!
//! ```text
//! ordinal  := term ("+" term)*
//! term     := "w" ("^" "(" ordinal ")" | "^" nat)? ("*" nat)? | nat
//! product  := "eps" | atom+
//! atom     := "[" set "]" "^{<" ordinal "}"
//! set      := "*" | point ("," point)*
//! word     := "eps" | comp+
//! comp     := letter | "(" set ")" "^" ("w" | nat | "(" ordinal ")")
//! ```
//!
//! Space definition files are line oriented: a `kind:` line naming
//! `finite_poset` or `cofinite_nat`, for posets an `elements:` line with
//! whitespace-separated names, and any number of `order: x <= y` lines.
//! Blank lines and lines starting with `#` are skipped.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Atom, Product, ProductUnion};
use crate::error::Error;
use crate::oracle::FiniteWord;
use crate::ordinal::{Bound, Ordinal};
use crate::space::{ClosedSet, Space};
use crate::word::{SymbolicWord, WordComponent};

/// A grammar failure at a byte offset of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

/// Failure of a parsing entry point: either the input does not fit the
/// grammar, or it names something the space or the algebra rejects.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum TextError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Semantic(#[from] Error),
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (exp, coeff) in self.terms() {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if exp.is_zero() {
                write!(f, "{coeff}")?;
                continue;
            }
            match exp.as_finite() {
                Some(1) => f.write_str("w")?,
                Some(n) => write!(f, "w^{n}")?,
                None => write!(f, "w^({exp})")?,
            }
            if coeff != 1 {
                write!(f, "*{coeff}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_ordinal().fmt(f)
    }
}

fn write_set_body(set: &ClosedSet, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match set.maximal_points() {
        None => f.write_str("*"),
        Some(points) => {
            let mut first = true;
            for p in points {
                if !first {
                    f.write_str(",")?;
                }
                first = false;
                f.write_str(&set.space().point_name(p))?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for ClosedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        write_set_body(self, f)?;
        f.write_str("]")
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{{<{}}}", self.support(), self.exponent())
    }
}

impl fmt::Display for Product {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_epsilon() {
            return f.write_str("eps");
        }
        let mut first = true;
        for atom in self.atoms() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            atom.fmt(f)?;
        }
        Ok(())
    }
}

impl fmt::Display for ProductUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty_set() {
            return f.write_str("empty");
        }
        let mut first = true;
        for member in self.members() {
            if !first {
                f.write_str("\n")?;
            }
            first = false;
            member.fmt(f)?;
        }
        Ok(())
    }
}

impl fmt::Display for WordComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.length().as_finite() == Some(1) {
            // Length-1 supports are irreducible over a finite alphabet,
            // so the single maximal point names the letter.
            let points = self.support().maximal_points().expect("finite support");
            return f.write_str(&self.support().space().point_name(points[0]));
        }
        f.write_str("(")?;
        write_set_body(self.support(), f)?;
        f.write_str(")^")?;
        let len = self.length();
        if *len == Ordinal::omega() {
            f.write_str("w")
        } else if let Some(n) = len.as_finite() {
            write!(f, "{n}")
        } else {
            write!(f, "({len})")
        }
    }
}

impl fmt::Display for SymbolicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_epsilon() {
            return f.write_str("eps");
        }
        let mut first = true;
        for comp in self.components() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            comp.fmt(f)?;
        }
        Ok(())
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("eps");
        }
        let mut first = true;
        for &p in self.letters() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(&self.space().point_name(p))?;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        self.pos = self.src.len() - self.rest().trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.fail(format!("expected '{c}'")))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.fail("unexpected trailing input"))
        }
    }

    fn at_name_char(&self) -> bool {
        self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_')
    }

    fn name(&mut self) -> Result<&'a str, ParseError> {
        let start = self.pos;
        while self.at_name_char() {
            self.pos += self.peek().expect("peeked").len_utf8();
        }
        if self.pos == start {
            Err(self.fail("expected a name"))
        } else {
            Ok(&self.src[start..self.pos])
        }
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.fail("expected a number"));
        }
        self.src[start..self.pos].parse().map_err(|_| ParseError {
            pos: start,
            msg: "number out of range".into(),
        })
    }

    fn fail(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.pos,
            msg: msg.into(),
        }
    }
}

/// Parses a whole input as an ordinal.
pub fn parse_ordinal(input: &str) -> Result<Ordinal, TextError> {
    let mut cur = Cursor::new(input);
    let value = ordinal(&mut cur)?;
    cur.finish()?;
    Ok(value)
}

fn ordinal(cur: &mut Cursor) -> Result<Ordinal, ParseError> {
    let mut total = term(cur)?;
    loop {
        cur.skip_ws();
        if cur.eat('+') {
            total = total + term(cur)?;
        } else {
            return Ok(total);
        }
    }
}

fn term(cur: &mut Cursor) -> Result<Ordinal, ParseError> {
    cur.skip_ws();
    if cur.eat('w') {
        let exp = if cur.eat('^') {
            if cur.eat('(') {
                let e = ordinal(cur)?;
                cur.skip_ws();
                cur.expect(')')?;
                e
            } else {
                cur.skip_ws();
                Ordinal::finite(cur.nat()?)
            }
        } else {
            Ordinal::finite(1)
        };
        cur.skip_ws();
        let coeff = if cur.eat('*') {
            cur.skip_ws();
            cur.nat()?
        } else {
            1
        };
        Ok(Ordinal::omega_pow_times(exp, coeff))
    } else if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        Ok(Ordinal::finite(cur.nat()?))
    } else {
        Err(cur.fail("expected 'w' or a number"))
    }
}

fn set_expr(space: &Arc<Space>, cur: &mut Cursor) -> Result<ClosedSet, TextError> {
    cur.skip_ws();
    if cur.eat('*') {
        return Ok(space.whole_set());
    }
    let mut points = Vec::new();
    loop {
        cur.skip_ws();
        let name = cur.name()?;
        points.push(space.point_named(name)?);
        cur.skip_ws();
        if !cur.eat(',') {
            break;
        }
    }
    Ok(space.closure_of_points(&points)?)
}

fn atom(space: &Arc<Space>, cur: &mut Cursor) -> Result<Atom, TextError> {
    cur.expect('[')?;
    let support = set_expr(space, cur)?;
    cur.skip_ws();
    cur.expect(']')?;
    cur.skip_ws();
    cur.expect('^')?;
    cur.expect('{')?;
    cur.expect('<')?;
    let ord = ordinal(cur)?;
    cur.skip_ws();
    cur.expect('}')?;
    let bound = Bound::from_ordinal(&ord).ok_or(Error::NotABound(ord.to_string()))?;
    Ok(Atom::new(support, bound)?)
}

/// Parses a whole input as a product over the given space. The result is
/// taken as written: it is valid but not reduced.
pub fn parse_product(space: &Arc<Space>, input: &str) -> Result<Product, TextError> {
    let mut cur = Cursor::new(input);
    cur.skip_ws();
    if cur.peek() != Some('[') {
        let pos = cur.pos;
        if cur.name().ok() == Some("eps") {
            cur.finish()?;
            return Ok(Product::epsilon(space));
        }
        return Err(ParseError {
            pos,
            msg: "expected an atom or 'eps'".into(),
        }
        .into());
    }
    let mut atoms = Vec::new();
    loop {
        atoms.push(atom(space, &mut cur)?);
        cur.skip_ws();
        if cur.peek() != Some('[') {
            break;
        }
    }
    cur.finish()?;
    Ok(Product::from_atoms(space, atoms)?)
}

fn word_exponent(cur: &mut Cursor) -> Result<Ordinal, ParseError> {
    cur.skip_ws();
    let value = if cur.eat('(') {
        let e = ordinal(cur)?;
        cur.skip_ws();
        cur.expect(')')?;
        return Ok(e);
    } else if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        Ordinal::finite(cur.nat()?)
    } else if cur.eat('w') {
        Ordinal::omega()
    } else {
        return Err(cur.fail("expected an exponent"));
    };
    if cur.at_name_char() {
        return Err(cur.fail("ambiguous exponent; parenthesize it"));
    }
    Ok(value)
}

/// Parses a whole input as a symbolic word over the given space.
pub fn parse_word(space: &Arc<Space>, input: &str) -> Result<SymbolicWord, TextError> {
    let mut cur = Cursor::new(input);
    let mut comps = Vec::new();
    loop {
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some('(') => {
                cur.eat('(');
                let support = set_expr(space, &mut cur)?;
                cur.skip_ws();
                cur.expect(')')?;
                cur.expect('^')?;
                let len = word_exponent(&mut cur)?;
                comps.push(WordComponent::new(support, len)?);
            }
            Some(c) if c.is_alphanumeric() || c == '_' => {
                let pos = cur.pos;
                let name = cur.name()?;
                if name == "eps" {
                    if comps.is_empty() {
                        cur.finish()?;
                        return Ok(SymbolicWord::epsilon(space));
                    }
                    return Err(ParseError {
                        pos,
                        msg: "'eps' cannot appear inside a word".into(),
                    }
                    .into());
                }
                let point = space.point_named(name)?;
                let support = space.closure_of_points(&[point])?;
                comps.push(WordComponent::new(support, Ordinal::finite(1))?);
            }
            Some(_) => return Err(cur.fail("expected a letter or '('").into()),
        }
    }
    if comps.is_empty() {
        return Err(Cursor::new(input)
            .fail("empty input; write 'eps' for the empty word")
            .into());
    }
    Ok(SymbolicWord::new(space, comps)?)
}

/// Parses a space definition file.
pub fn parse_space(input: &str) -> Result<Arc<Space>, TextError> {
    let mut kind: Option<&str> = None;
    let mut elements: Option<(Vec<&str>, usize)> = None;
    let mut order: Vec<(&str, &str)> = Vec::new();
    let mut offset = 0;
    for raw in input.split_inclusive('\n') {
        let line_start = offset;
        offset += raw.len();
        let line = raw.trim_end_matches(['\n', '\r']);
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let pos = line_start + (line.len() - line.trim_start().len());
        let fail = |msg: &str| ParseError {
            pos,
            msg: msg.into(),
        };
        let Some(colon) = line.find(':') else {
            return Err(fail("expected 'key: value'").into());
        };
        let value = line[colon + 1..].trim();
        match line[..colon].trim() {
            "kind" => {
                if kind.replace(value).is_some() {
                    return Err(fail("duplicate 'kind'").into());
                }
            }
            "elements" => {
                let names: Vec<&str> = value.split_whitespace().collect();
                if elements.replace((names, pos)).is_some() {
                    return Err(fail("duplicate 'elements'").into());
                }
            }
            "order" => {
                let Some(idx) = value.find("<=") else {
                    return Err(fail("expected 'order: x <= y'").into());
                };
                let below = value[..idx].trim();
                let above = value[idx + 2..].trim();
                if below.is_empty() || above.is_empty() {
                    return Err(fail("expected 'order: x <= y'").into());
                }
                order.push((below, above));
            }
            _ => return Err(fail("unknown key; expected kind, elements, or order").into()),
        }
    }
    match kind {
        None => Err(Cursor::new(input).fail("missing 'kind' line").into()),
        Some("cofinite_nat") => {
            if elements.is_some() || !order.is_empty() {
                Err(Cursor::new(input)
                    .fail("cofinite_nat takes no elements or order")
                    .into())
            } else {
                Ok(Space::cofinite_nat())
            }
        }
        Some("finite_poset") => {
            let (names, pos) = elements
                .ok_or_else(|| Cursor::new(input).fail("finite_poset requires 'elements'"))?;
            for name in &names {
                let well_formed = name.chars().all(|c| c.is_alphanumeric() || c == '_');
                if !well_formed || *name == "eps" {
                    return Err(ParseError {
                        pos,
                        msg: format!("'{name}' cannot be used as an element name"),
                    }
                    .into());
                }
            }
            Ok(Space::finite_poset(&names, &order)?)
        }
        Some(other) => Err(Cursor::new(input)
            .fail(format!(
                "unknown kind '{other}'; expected finite_poset or cofinite_nat"
            ))
            .into()),
    }
}
