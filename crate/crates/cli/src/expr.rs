//! Polynomial expressions.
//!
//! Grammar, whitespace insensitive:
//!
//! ```text
//! expr    := ['+' | '-'] term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := ['+' | '-'] power
//! power   := primary ['^' uint]
//! primary := number | number 'i' | 'i' | var | '(' expr ')'
//! number  := digits ['.' digits] [('e' | 'E') ['+' | '-'] digits]
//! ```
//!
//! `var` is the indeterminate, `X` or `t` depending on the context. Errors
//! carry the byte offset of the offending input.

use std::fmt;

use remcalc::{Complex64, Poly};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 4096;

/// Name of the indeterminate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    T,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::X => "X",
            Var::T => "t",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Parses a polynomial in `X`.
pub fn parse_poly_expr(text: &str) -> Result<Poly, ParseError> {
    parse_poly_expr_in(text, Var::X)
}

/// Parses a polynomial in the indeterminate `var`.
pub fn parse_poly_expr_in(text: &str, var: Var) -> Result<Poly, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        var,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let value = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(&format!("unexpected '{}'", p.peek_char())));
    }
    Ok(value)
}

/// Parses an expression that must be a constant.
pub fn parse_constant(text: &str) -> Result<Complex64, ParseError> {
    let p = parse_poly_expr(text)?;
    match p.degree() {
        None => Ok(Complex64::new(0.0, 0.0)),
        Some(0) => Ok(p.coeff(0)),
        Some(_) => Err(ParseError {
            offset: 0,
            message: "expected a constant".into(),
        }),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: Var,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
            .unwrap_or(char::REPLACEMENT_CHARACTER)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        if self.eat(b'+') {
            return self.factor();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.primary()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a nonnegative integer exponent"));
        }
        if self.peek().is_some_and(|b| b == b'.' || b.is_ascii_alphabetic()) {
            self.pos = start;
            return Err(self.error("expected a nonnegative integer exponent"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match digits.parse::<u32>() {
            Ok(e) if e <= MAX_EXPONENT => Ok(base.pow(e)),
            _ => {
                self.pos = start;
                Err(self.error(&format!("exponent exceeds {MAX_EXPONENT}")))
            }
        }
    }

    fn primary(&mut self) -> Result<Poly, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() || b == b'.' => self.number(),
            Some(b) if b.is_ascii_alphabetic() => self.identifier(),
            Some(_) => Err(self.error(&format!("unexpected '{}'", self.peek_char()))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Poly, ParseError> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.peek().is_some_and(|b| b.is_ascii_digit()) {
                p.pos += 1;
            }
            p.pos - s
        };
        let mut n = digits(self);
        if self.peek() == Some(b'.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            self.pos = start;
            return Err(self.error("malformed number"));
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = mark;
                return Err(self.error("malformed exponent"));
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii number");
        let value: f64 = text.parse().map_err(|_| ParseError {
            offset: start,
            message: "malformed number".into(),
        })?;
        if !value.is_finite() {
            return Err(ParseError {
                offset: start,
                message: "number out of range".into(),
            });
        }
        // an `i` directly after the digits makes the literal imaginary
        let imaginary =
            self.peek() == Some(b'i') && !self.src.get(self.pos + 1).is_some_and(|b| b.is_ascii_alphanumeric());
        if imaginary {
            self.pos += 1;
            return Ok(Poly::constant(Complex64::new(0.0, value)));
        }
        if self.peek().is_some_and(|b| b.is_ascii_alphabetic()) {
            return Err(self.error("expected an operator"));
        }
        Ok(Poly::constant(Complex64::new(value, 0.0)))
    }

    fn identifier(&mut self) -> Result<Poly, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_alphanumeric() || b == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        if name == "i" {
            return Ok(Poly::constant(Complex64::new(0.0, 1.0)));
        }
        if name == self.var.name() {
            return Ok(Poly::x());
        }
        let message = match name {
            "X" | "t" => format!(
                "unexpected identifier '{name}', the indeterminate here is '{}'",
                self.var.name()
            ),
            _ => format!("unknown identifier '{name}'"),
        };
        Err(ParseError { offset: start, message })
    }
}

/// Shortest decimal text that parses back to `v` exactly.
pub fn format_real(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-4..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// `a+bi` form of a complex number, parseable by [`parse_constant`].
pub fn format_complex(c: Complex64) -> String {
    match (c.re == 0.0, c.im == 0.0) {
        (_, true) => format_real(c.re),
        (true, false) => format!("{}i", format_real(c.im)),
        (false, false) => {
            let sign = if c.im.is_sign_negative() { '-' } else { '+' };
            format!("{}{}{}i", format_real(c.re), sign, format_real(c.im.abs()))
        }
    }
}

/// Expression text of `p` in decreasing degree, e.g. `5*X - 4`. Parsing the
/// text with [`parse_poly_expr_in`] gives back the same coefficients.
pub fn format_poly(p: &Poly, var: Var) -> String {
    let mut out = String::new();
    for (n, &c) in p.coeffs().iter().enumerate().rev() {
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        let (negative, magnitude) = match (c.re == 0.0, c.im == 0.0) {
            (_, true) => (c.re < 0.0, format_real(c.re.abs())),
            (true, false) => (c.im < 0.0, format!("{}i", format_real(c.im.abs()))),
            (false, false) => (false, format!("({})", format_complex(c))),
        };
        let monomial = match n {
            0 => String::new(),
            1 => var.name().to_string(),
            _ => format!("{}^{n}", var.name()),
        };
        let body = match (monomial.is_empty(), magnitude == "1") {
            (true, _) => magnitude,
            (false, true) => monomial,
            (false, false) => format!("{magnitude}*{monomial}"),
        };
        match (out.is_empty(), negative) {
            (true, false) => out.push_str(&body),
            (true, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (false, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
