//! Shorthand text for theta monomials: `-q^3 [2,3,6,17:42]`, `[1,2:24](3:24)`,
//! `q / [1,5:32]`, and equations `A - B = q^3 C` made of them.

use std::fmt;

use crate::error::{Error, Result};
use crate::theta::{AtomKind, ThetaAtom, ThetaMonomial};

impl fmt::Display for ThetaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign() < 0 {
            write!(f, "-")?;
        }
        let q = match self.qexp() {
            0 => String::new(),
            1 => "q".to_string(),
            k => format!("q^{k}"),
        };
        let num = render_atoms(self.numerator());
        match (q.is_empty(), num.is_empty()) {
            (true, true) => write!(f, "1")?,
            (true, false) => write!(f, "{num}")?,
            (false, true) => write!(f, "{q}")?,
            (false, false) => write!(f, "{q} {num}")?,
        }
        if !self.denominator().is_empty() {
            write!(f, " / {}", render_atoms(self.denominator()))?;
        }
        Ok(())
    }
}

/// Groups consecutive atoms that share kind and base: `[1,2:24](3:24)`.
pub fn render_atoms(atoms: &[ThetaAtom]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < atoms.len() {
        let head = atoms[i];
        let mut j = i;
        while j < atoms.len() && atoms[j].kind == head.kind && atoms[j].base == head.base {
            j += 1;
        }
        let exps: Vec<String> = atoms[i..j].iter().map(|a| a.exp.to_string()).collect();
        let (open, close) = match head.kind {
            AtomKind::Bracket => ('[', ']'),
            AtomKind::Paren => ('(', ')'),
        };
        out.push_str(&format!("{open}{}:{}{close}", exps.join(","), head.base));
        i = j;
    }
    out
}

/// Renders `Σ terms = 0` as `t1 + t2 - t3 = 0`.
pub fn render_combination(terms: &[ThetaMonomial]) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        let s = t.to_string();
        if i == 0 {
            out.push_str(&s);
        } else if let Some(rest) = s.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&s);
        }
    }
    out.push_str(" = 0");
    out
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(format!("column {}", self.pos + 1), msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let v: i64 = text.parse().map_err(|_| self.err("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    /// `q`, `q^k`, `q^{k}` or `q^-k`.
    fn qpower(&mut self) -> Result<i64> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        if self.eat(b'{') {
            let k = self.int()?;
            self.expect(b'}')?;
            Ok(k)
        } else {
            self.int()
        }
    }

    fn group(&mut self, out: &mut Vec<ThetaAtom>) -> Result<()> {
        let (kind, close) = match self.peek() {
            Some(b'[') => (AtomKind::Bracket, b']'),
            Some(b'(') => (AtomKind::Paren, b')'),
            _ => return Err(self.err("expected '[' or '('")),
        };
        self.pos += 1;
        let mut exps = vec![self.int()?];
        while self.eat(b',') {
            exps.push(self.int()?);
        }
        self.expect(b':')?;
        let base = self.int()?;
        self.expect(close)?;
        if base < 1 {
            return Err(self.err(format!("base {base} must be positive")));
        }
        out.extend(exps.into_iter().map(|exp| ThetaAtom { kind, exp, base }));
        Ok(())
    }

    fn groups(&mut self, out: &mut Vec<ThetaAtom>) -> Result<()> {
        while matches!(self.peek(), Some(b'[') | Some(b'(')) {
            self.group(out)?;
        }
        Ok(())
    }

    /// One term without its leading sign.
    fn term(&mut self, sign: i32) -> Result<ThetaMonomial> {
        let mut qexp = 0;
        let mut seen = false;
        if self.peek() == Some(b'1') {
            let save = self.pos;
            self.pos += 1;
            if self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                self.pos = save;
                return Err(self.err("only unit coefficients are supported"));
            }
            seen = true;
        }
        if self.eat(b'q') {
            qexp = self.qpower()?;
            seen = true;
        }
        let mut num = Vec::new();
        self.groups(&mut num)?;
        seen |= !num.is_empty();
        if !seen {
            return Err(self.err("empty term"));
        }
        let mut den = Vec::new();
        if self.eat(b'/') {
            self.groups(&mut den)?;
            if den.is_empty() {
                return Err(self.err("expected denominator after '/'"));
            }
        }
        ThetaMonomial::from_parts(sign, qexp, &num, &den)
    }

    /// `±t ± t ...` up to `=` or end.
    fn side(&mut self) -> Result<Vec<ThetaMonomial>> {
        let mut terms = Vec::new();
        let mut sign = if self.eat(b'-') {
            -1
        } else {
            self.eat(b'+');
            1
        };
        loop {
            terms.push(self.term(sign)?);
            sign = match self.peek() {
                Some(b'+') => 1,
                Some(b'-') => -1,
                _ => break,
            };
            self.pos += 1;
        }
        Ok(terms)
    }

    fn done(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(format!("unexpected '{}'", c as char))),
        }
    }
}

/// Parses a single monomial such as `-q^3 [2,3,6,17:42]` or `q / [1:5]`.
pub fn parse_monomial(src: &str) -> Result<ThetaMonomial> {
    let mut p = Parser::new(src);
    let sign = if p.eat(b'-') { -1 } else { 1 };
    let m = p.term(sign)?;
    p.done()?;
    Ok(m)
}

/// Parses `lhs = rhs` into the zero combination `lhs - rhs`.
///
/// A bare expression without `=` is read as `expr = 0`.
pub fn parse_equation(src: &str) -> Result<Vec<ThetaMonomial>> {
    let mut p = Parser::new(src);
    let mut terms = p.side()?;
    if p.eat(b'=') {
        if p.peek() == Some(b'0') {
            p.pos += 1;
        } else {
            terms.extend(p.side()?.into_iter().map(|t| t.neg()));
        }
    }
    p.done()?;
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_round_trip() {
        for src in [
            "-q^3 [2,3,6,17:42]",
            "[5,6,9,14:42]",
            "q [1:5](2:5)",
            "1 / [1,2,3:32]",
            "-q^-2 [3:10] / [1,2:10]",
            "1",
            "-q",
        ] {
            let m = parse_monomial(src).unwrap();
            assert_eq!(m.to_string(), src);
        }
    }

    #[test]
    fn parse_folds_atoms() {
        let m = parse_monomial("[4,16,22,18:48]").unwrap();
        assert_eq!(m.to_string(), "[4,16,18,22:48]");
        let m = parse_monomial("q^{4}[34:72]").unwrap();
        assert_eq!(m.to_string(), "q^4 [34:72]");
        let m = parse_monomial("[13:10]").unwrap();
        assert_eq!(m.to_string(), "-q^-3 [3:10]");
    }

    #[test]
    fn parse_equation_collects_zero_combination() {
        let eq = parse_equation("[5,6,9,14:42]-[3,8,11,12:42]=q^3[2,3,6,17:42]").unwrap();
        assert_eq!(eq.len(), 3);
        assert_eq!(
            render_combination(&eq),
            "[5,6,9,14:42] - [3,8,11,12:42] - q^3 [2,3,6,17:42] = 0"
        );
        let eq = parse_equation("[1:4] - [1:4] = 0").unwrap();
        assert_eq!(eq.len(), 2);
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "", "[1,2:0]", "[1,2]", "2q[1:4]", "[1:4] +", "[1:4] x", "q/",
        ] {
            assert!(
                matches!(parse_equation(bad), Err(Error::Parse { .. })),
                "{bad}"
            );
        }
        assert!(matches!(
            parse_monomial("[4:4]"),
            Err(Error::DegenerateZero { .. })
        ));
    }
}
