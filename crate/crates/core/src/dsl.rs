//! Text format for quivers with relations.
//!
//! ```text
//! # comment
//! vertices: 0 1 2
//! arrow a: 2 -> 1
//! arrow b: 1 -> 0
//! rel a*b
//! ```
//!
//! The full grammar is in `docs/dsl.md`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::quiver::{LinComb, PathWord, Presentation, Quiver};
use crate::scalar::{Rational, Scalar};

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(src: &str, line: usize) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, line }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { line: self.line, col: self.pos + 1, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
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

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn expect_str(&mut self, s: &str) -> Result<()> {
        self.skip_ws();
        let n = s.chars().count();
        let got: String = self.chars.iter().skip(self.pos).take(n).collect();
        if got == s {
            self.pos += n;
            Ok(())
        } else {
            Err(self.err(format!("expected `{s}`")))
        }
    }

    fn word(&mut self, allow_leading_digit: bool) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            let ok = c.is_ascii_alphanumeric() || c == '_';
            if !ok || (self.pos == start && c.is_ascii_digit() && !allow_leading_digit) {
                break;
            }
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn label(&mut self) -> Result<String> {
        self.word(true).ok_or_else(|| self.err("expected vertex label"))
    }

    fn ident(&mut self) -> Result<String> {
        self.word(false).ok_or_else(|| self.err("expected identifier"))
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }
}

/// Parses DSL source into a presentation.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut q = Quiver::new();
    let mut pending: Vec<(usize, String)> = Vec::new();
    // Relations are resolved after all arrows are known.
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor::new(body, line_no);
        cur.skip_ws();
        if cur.at_end() {
            continue;
        }
        let kw = cur.ident()?;
        match kw.as_str() {
            "vertices" => {
                cur.expect(':')?;
                loop {
                    cur.skip_ws();
                    if cur.at_end() {
                        break;
                    }
                    let col = cur.pos + 1;
                    let l = cur.label()?;
                    q.add_vertex(&l).map_err(|_| Error::Syntax {
                        line: line_no,
                        col,
                        msg: format!("duplicate vertex `{l}`"),
                    })?;
                }
            }
            "arrow" => {
                let col = cur.pos + 1;
                let name = cur.ident()?;
                cur.expect(':')?;
                let s = cur.label()?;
                cur.expect_str("->")?;
                let t = cur.label()?;
                cur.skip_ws();
                if !cur.at_end() {
                    return Err(cur.err("trailing input"));
                }
                let si = q.vertex_index(&s).ok_or(Error::UnknownVertex(s))?;
                let ti = q.vertex_index(&t).ok_or(Error::UnknownVertex(t))?;
                q.add_arrow(&name, si, ti).map_err(|_| Error::Syntax {
                    line: line_no,
                    col,
                    msg: format!("duplicate arrow `{name}`"),
                })?;
            }
            "rel" => {
                let rest: String = cur.chars[cur.pos..].iter().collect();
                pending.push((line_no, rest));
            }
            other => {
                return Err(Error::Syntax { line: line_no, col: 1, msg: format!("unknown statement `{other}`") })
            }
        }
    }
    let mut p = Presentation::new(q);
    for (line_no, src) in pending {
        let offset = text.lines().nth(line_no - 1).map(|l| l.find("rel").unwrap_or(0) + 3).unwrap_or(0);
        let rel = parse_lincomb(&p.quiver, &src, line_no).map_err(|e| match e {
            Error::Syntax { line, col, msg } => Error::Syntax { line, col: col + offset, msg },
            e => e,
        })?;
        if rel.is_zero() {
            continue;
        }
        p.add_relation(rel)?;
    }
    Ok(p)
}

/// Parses a linear combination of paths, e.g. `a3*b1 - b2*a1` or `2*x + 1/2 e(0)`.
pub fn parse_lincomb(q: &Quiver, src: &str, line: usize) -> Result<LinComb<Rational>> {
    let mut cur = Cursor::new(src, line);
    let mut out = LinComb::zero();
    let mut first = true;
    loop {
        cur.skip_ws();
        if cur.at_end() {
            if first {
                return Err(cur.err("empty expression"));
            }
            break;
        }
        let neg = cur.eat('-');
        if !neg && !cur.eat('+') && !first {
            return Err(cur.err("expected `+` or `-`"));
        }
        first = false;
        let (c, path) = parse_term(q, &mut cur)?;
        out.add_term(path, if neg { c.neg() } else { c });
    }
    Ok(out)
}

fn parse_term(q: &Quiver, cur: &mut Cursor) -> Result<(Rational, PathWord)> {
    let mut coeff = Rational::one();
    if let Some(num) = cur.integer() {
        let den = if cur.eat('/') { cur.integer().ok_or_else(|| cur.err("expected denominator"))? } else { BigInt::from(1) };
        coeff = Rational::from_ratio(&num, &den).ok_or_else(|| cur.err("zero denominator"))?;
        cur.eat('*');
    }
    let mut atoms: Vec<PathWord> = vec![parse_atom(q, cur)?];
    while cur.eat('*') {
        atoms.push(parse_atom(q, cur)?);
    }
    let mut path = atoms[0].clone();
    for a in &atoms[1..] {
        path = path.concat(a).ok_or_else(|| {
            Error::NotComposable(format!("{} then {}", path.display(q), a.display(q)))
        })?;
    }
    Ok((coeff, path))
}

fn parse_atom(q: &Quiver, cur: &mut Cursor) -> Result<PathWord> {
    let name = cur.ident()?;
    if name == "e" && cur.peek() == Some('(') {
        cur.expect('(')?;
        let l = cur.label()?;
        cur.expect(')')?;
        let v = q.vertex_index(&l).ok_or(Error::UnknownVertex(l))?;
        return Ok(PathWord::trivial(v));
    }
    let a = q.arrow_index(&name).ok_or(Error::UnknownArrow(name))?;
    Ok(q.arrow_path(a))
}

/// Writes a presentation in DSL syntax. Parsing the output gives back an
/// equal presentation.
pub fn write_presentation(p: &Presentation) -> String {
    let mut s = String::new();
    s.push_str("vertices:");
    for v in &p.quiver.vertices {
        s.push(' ');
        s.push_str(v);
    }
    s.push('\n');
    for a in &p.quiver.arrows {
        s.push_str(&format!(
            "arrow {}: {} -> {}\n",
            a.name, p.quiver.vertices[a.source], p.quiver.vertices[a.target]
        ));
    }
    for r in &p.relations {
        s.push_str("rel ");
        s.push_str(&r.display(&p.quiver));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_roundtrips() {
        let src = "vertices: 0 1 2\narrow a: 2 -> 1  # first\narrow b: 1 -> 0\narrow c: 2 -> 0\nrel a*b - 1/2 c\n";
        let p = parse_presentation(src).unwrap();
        assert_eq!(p.quiver.arrows.len(), 3);
        assert_eq!(p.relations.len(), 1);
        let again = parse_presentation(&write_presentation(&p)).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn rejects_trailing_garbage() {
        let e = parse_presentation("vertices: 0 1\narrow a: 0 -> 1 x\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 2, .. }));
        let e = parse_presentation("vertices: 0 1\narrow a: 0 -> 1\nrel a a\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 3, .. }), "{e:?}");
    }

    #[test]
    fn reports_unknown_arrow_and_non_parallel() {
        let e = parse_presentation("vertices: 0 1\nrel z\n").unwrap_err();
        assert_eq!(e, Error::UnknownArrow("z".into()));
        let src = "vertices: 0 1 2\narrow a: 1 -> 0\narrow b: 2 -> 0\nrel a - b\n";
        assert!(matches!(parse_presentation(src).unwrap_err(), Error::NonParallel(_)));
    }

    #[test]
    fn trivial_paths() {
        let p = parse_presentation("vertices: x\nrel e(x) - e(x)\n").unwrap();
        assert!(p.relations.is_empty());
    }
}
