//! Recursive-descent parser for the polynomial text format.
//!
//! Grammar (whitespace, including newlines, is free between tokens):
//!
//! ```text
//! expr   := [ '+' | '-' ] term { ('+' | '-') term }
//! term   := factor { ('*' | '/') factor }
//! factor := atom [ '^' integer ]
//! atom   := integer | 'i' | variable | '(' expr ')'
//! ```
//!
//! `/` divides by a constant subexpression, so `5/2*x` and printed
//! fraction coefficients read back. `i` is always the imaginary unit and
//! cannot be declared as a variable.

use num::BigInt;

use super::MultiPoly;
use crate::exactfield::GaussianRational;

#[derive(Debug, Clone, thiserror::Error)]
#[error("parse error at line {line}, column {col}: expected {expected}, found {found}")]
pub struct ParseError {
    pub pos: usize,
    pub line: usize,
    pub col: usize,
    pub expected: String,
    pub found: String,
}

const MAX_DEPTH: usize = 64;

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    vars: Vec<String>,
    depth: usize,
}

/// Parses the text format over the given variables.
pub fn parse_poly(text: &str, variables: &[&str]) -> Result<MultiPoly, ParseError> {
    assert!(
        !variables.iter().any(|v| *v == "i"),
        "'i' is reserved for the imaginary unit"
    );
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
        vars: variables.iter().map(|s| s.to_string()).collect(),
        depth: 0,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return Err(p.err("end of input"));
    }
    Ok(poly)
}

/// Reads a curve file: `#` comment lines are dropped, a trailing `;` is
/// allowed, and the polynomial is parsed over x, y, z.
pub fn parse_curve_file(contents: &str) -> Result<MultiPoly, ParseError> {
    let body: String = contents
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n");
    let body = body.trim().trim_end_matches(';');
    parse_poly(body, &["x", "y", "z"])
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn err(&self, expected: &str) -> ParseError {
        let mut line = 1;
        let mut col = 1;
        for &b in &self.text[..self.pos.min(self.text.len())] {
            if b == b'\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        let found = match self.text.get(self.pos) {
            None => "end of input".to_string(),
            Some(&b) => format!("'{}'", b as char),
        };
        ParseError {
            pos: self.pos,
            line,
            col,
            expected: expected.to_string(),
            found,
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let mut acc = MultiPoly::zero(&vars);
        let mut sign_negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if sign_negative { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign_negative = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign_negative = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let f = self.factor()?;
                    if !f.is_constant() || f.is_zero() {
                        self.pos = at;
                        return Err(self.err("a nonzero constant divisor"));
                    }
                    let inv = f.constant_term().inverse().expect("checked nonzero");
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.exponent()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("an exponent"));
        }
        let digits = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
        digits.parse::<u32>().map_err(|_| {
            self.pos = start;
            self.err("an exponent that fits in 32 bits")
        })
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        let next = self.peek();
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        match next {
            Some(b'(') => {
                self.pos += 1;
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    return Err(self.err("shallower nesting"));
                }
                let inner = self.expr()?;
                self.depth -= 1;
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    Ok(inner)
                } else {
                    Err(self.err("')'"))
                }
            }
            Some(b) if b.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
                let n: BigInt = digits.parse().expect("digit run parses as an integer");
                Ok(MultiPoly::constant(&vars, GaussianRational::from(n)))
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let start = self.pos;
                while self.pos < self.text.len()
                    && (self.text[self.pos].is_ascii_alphanumeric()
                        || self.text[self.pos] == b'_'
                        || self.text[self.pos] == b'\'')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
                if name == "i" {
                    return Ok(MultiPoly::constant(&vars, GaussianRational::i()));
                }
                if self.vars.iter().any(|v| v == name) {
                    Ok(MultiPoly::var(&vars, name))
                } else {
                    self.pos = start;
                    Err(self.err("a declared variable, 'i', or a number"))
                }
            }
            _ => Err(self.err("a number, 'i', a variable, or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{rat, GaussianRational};

    #[test]
    fn simple_terms() {
        let f = parse_poly("4*x^6-273*x^4*y^2", &["x", "y", "z"]).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.degree(), Some(6));
        assert_eq!(f.coeff(&[6, 0, 0]), GaussianRational::from_int(4));
        assert_eq!(f.coeff(&[4, 2, 0]), GaussianRational::from_int(-273));
    }

    #[test]
    fn single_variable() {
        let f = parse_poly("x", &["x", "y"]).unwrap();
        assert_eq!(f.coeff(&[1, 0]), GaussianRational::one());
        assert_eq!(f.num_terms(), 1);
    }

    #[test]
    fn complex_coefficients() {
        let f = parse_poly("(8*i+420)*x^6*y+(-242*i+720)*y^7", &["x", "y", "z"]).unwrap();
        assert_eq!(
            f.coeff(&[6, 1, 0]),
            GaussianRational::new(rat(420), rat(8))
        );
        assert_eq!(
            f.coeff(&[0, 7, 0]),
            GaussianRational::new(rat(720), rat(-242))
        );
    }

    #[test]
    fn unary_minus_and_fractions() {
        let f = parse_poly("-x+5/2*y-1/3", &["x", "y"]).unwrap();
        assert_eq!(f.coeff(&[1, 0]), GaussianRational::from_int(-1));
        assert_eq!(
            f.coeff(&[0, 1]),
            GaussianRational::from_rational(rat(5) / rat(2))
        );
        assert_eq!(
            f.coeff(&[0, 0]),
            GaussianRational::from_rational(-rat(1) / rat(3))
        );
    }

    #[test]
    fn whitespace_and_newlines() {
        let f = parse_poly("720*x^4*y*z+\n1740*x^2*y^3*z", &["x", "y", "z"]).unwrap();
        assert_eq!(f.num_terms(), 2);
    }

    #[test]
    fn error_reporting() {
        let e = parse_poly("4*x^6-273*w", &["x", "y", "z"]).unwrap_err();
        assert_eq!(e.line, 1);
        assert_eq!(e.col, 11);
        assert!(e.expected.contains("variable"));
        let e2 = parse_poly("x/(y)", &["x", "y"]).unwrap_err();
        assert!(e2.expected.contains("constant divisor"));
        assert!(parse_poly("x+", &["x"]).is_err());
        assert!(parse_poly("(x", &["x"]).is_err());
    }

    #[test]
    fn division_by_constant_only() {
        let f = parse_poly("x/2/3", &["x"]).unwrap();
        assert_eq!(
            f.coeff(&[1]),
            GaussianRational::from_rational(rat(1) / rat(6))
        );
        assert!(parse_poly("x/0", &["x"]).is_err());
    }

    #[test]
    fn curve_file_with_comments() {
        let src = "# a conic\nx^2+y^2-z^2;\n";
        let f = parse_curve_file(src).unwrap();
        assert_eq!(f.num_terms(), 3);
        assert!(f.is_homogeneous());
    }
}
