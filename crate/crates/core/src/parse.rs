//! Text grammar for polynomials, ideals and ring presentations.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := [int '*'] factor ('*' factor)*
//! factor := var ['^' int] | int
//! ring   := 'GF(' int ')' '[' var (',' var)* ']' ['/' '(' expr (',' expr)* ')'] [':' ('lex'|'grevlex')]
//! ```
//!
//! Integer literals have arbitrary length and are reduced mod p digit by digit.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, OrderKind};
use crate::poly::Term;
use crate::ring::RingPresentation;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    base: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, base: usize) -> Self {
        Cursor { src, pos: 0, base }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.base + self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let n = rest.bytes().take_while(|b| b.is_ascii_digit()).count();
        if n == 0 {
            return None;
        }
        self.pos += n;
        Some(&rest[..n])
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let n = chars
            .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        self.pos += n;
        Some(&rest[..n])
    }
}

fn small_int(cur: &Cursor, digits: &str) -> Result<u32> {
    digits.parse::<u32>().map_err(|_| cur.err(format!("exponent `{digits}` too large")))
}

/// Parses one polynomial into (unsorted, possibly repeated) terms.
pub(crate) fn parse_terms(text: &str, vars: &[String], field: &PrimeField) -> Result<Vec<Term>> {
    parse_terms_at(text, 0, vars, field)
}

fn parse_terms_at(text: &str, base: usize, vars: &[String], field: &PrimeField) -> Result<Vec<Term>> {
    let mut cur = Cursor::new(text, base);
    let mut out = Vec::new();
    let mut negative = cur.eat('-');
    loop {
        let (coeff, mono) = parse_term(&mut cur, vars, field)?;
        let coeff = if negative { field.neg(coeff) } else { coeff };
        if coeff != 0 {
            out.push(Term { coeff, mono });
        }
        if cur.eat('+') {
            negative = false;
        } else if cur.eat('-') {
            negative = true;
        } else if cur.at_end() {
            return Ok(out);
        } else {
            return Err(cur.err("expected `+`, `-` or end of input"));
        }
    }
}

fn parse_term(cur: &mut Cursor, vars: &[String], field: &PrimeField) -> Result<(u32, Monomial)> {
    let mut coeff = 1u32;
    let mut mono = Monomial::one(vars.len());
    loop {
        if let Some(d) = cur.digits() {
            coeff = field.mul(coeff, field.from_decimal(d));
        } else if let Some(name) = cur.ident() {
            let idx = vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            let power = if cur.eat('^') {
                let d = cur.digits().ok_or_else(|| cur.err("expected exponent after `^`"))?;
                small_int(cur, d)?
            } else {
                1
            };
            let e = &mut mono.exps_mut()[idx];
            *e = e
                .checked_add(power)
                .ok_or_else(|| Error::ExponentOverflow(format!("variable `{name}`")))?;
        } else {
            return Err(cur.err("expected a variable or an integer"));
        }
        if !cur.eat('*') {
            return Ok((coeff, mono));
        }
    }
}

/// Splits on commas that are not nested inside parentheses, returning
/// each piece with its byte offset.
fn split_top_level(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

/// Parses a generator list, `(f1, f2, ...)` or `f1, f2, ...`. `()` is the zero ideal.
pub(crate) fn parse_generator_list(text: &str, vars: &[String], field: &PrimeField) -> Result<Vec<Vec<Term>>> {
    let trimmed = text.trim();
    let (inner, base) = if trimmed.starts_with('(') && trimmed.ends_with(')') && balanced_outer(trimmed) {
        let off = text.find('(').unwrap() + 1;
        (&trimmed[1..trimmed.len() - 1], off)
    } else {
        (trimmed, text.len() - text.trim_start().len())
    };
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(inner)
        .into_iter()
        .map(|(off, piece)| parse_terms_at(piece, base + off, vars, field))
        .collect()
}

fn balanced_outer(s: &str) -> bool {
    // true when the first '(' closes at the final character
    let mut depth = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return i == s.len() - 1;
                }
            }
            _ => {}
        }
    }
    false
}

/// Parses `GF(p)[vars]/(relations):order`.
pub fn parse_ring_text(text: &str) -> Result<RingPresentation> {
    let mut cur = Cursor::new(text, 0);
    match cur.ident() {
        Some("GF") | Some("F") => {}
        _ => return Err(cur.err("ring must start with `GF(p)`")),
    }
    cur.expect('(')?;
    let p = cur.digits().ok_or_else(|| cur.err("expected characteristic"))?;
    let p: u64 = p.parse().map_err(|_| cur.err("characteristic too large"))?;
    cur.expect(')')?;
    cur.expect('[')?;
    let mut vars = Vec::new();
    loop {
        let v = cur.ident().ok_or_else(|| cur.err("expected variable name"))?;
        vars.push(v.to_string());
        if cur.eat(']') {
            break;
        }
        cur.expect(',')?;
    }
    let mut relations = Vec::new();
    if cur.eat('/') {
        cur.skip_ws();
        let start = cur.pos;
        if cur.peek() != Some('(') {
            return Err(cur.err("expected `(` after `/`"));
        }
        let mut depth = 0;
        let mut end = None;
        for (i, c) in text[start..].char_indices() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        end = Some(start + i);
                        break;
                    }
                }
                _ => {}
            }
        }
        let end = end.ok_or_else(|| cur.err("unbalanced parentheses in relations"))?;
        for (_, piece) in split_top_level(&text[start + 1..end]) {
            if !piece.trim().is_empty() {
                relations.push(piece.trim().to_string());
            }
        }
        cur.pos = end + 1;
    }
    let mut order = OrderKind::Grevlex;
    if cur.eat(':') {
        order = match cur.ident() {
            Some("lex") => OrderKind::Lex,
            Some("grevlex") => OrderKind::Grevlex,
            _ => return Err(cur.err("expected `lex` or `grevlex`")),
        };
    }
    if !cur.at_end() {
        return Err(cur.err("trailing input after ring"));
    }
    Ok(RingPresentation { p, vars, order, relations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn syntax_errors_report_position() {
        let f = PrimeField::new(5).unwrap();
        match parse_terms("x + * y", &vars(&["x", "y"]), &f) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_terms("x + w", &vars(&["x"]), &f), Err(Error::UnknownVariable(v)) if v == "w"));
        assert!(parse_terms("x^", &vars(&["x"]), &f).is_err());
        assert!(parse_terms("", &vars(&["x"]), &f).is_err());
    }

    #[test]
    fn ring_text() {
        let r = parse_ring_text("GF(2)[u, v]/(u*v)").unwrap();
        assert_eq!(r.p, 2);
        assert_eq!(r.vars, vars(&["u", "v"]));
        assert_eq!(r.relations, vec!["u*v".to_string()]);
        let r = parse_ring_text("GF(7)[x,y]:lex").unwrap();
        assert_eq!(r.order, OrderKind::Lex);
        assert!(r.relations.is_empty());
        assert!(parse_ring_text("GF(7)[x,y] junk").is_err());
    }

    #[test]
    fn generator_lists() {
        let f = PrimeField::new(3).unwrap();
        let v = vars(&["x", "y"]);
        assert_eq!(parse_generator_list("(x, y^2)", &v, &f).unwrap().len(), 2);
        assert_eq!(parse_generator_list("x, y", &v, &f).unwrap().len(), 2);
        assert!(parse_generator_list("()", &v, &f).unwrap().is_empty());
    }
}
