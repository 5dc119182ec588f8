//! Text form of Laurent polynomials.
//!
//! The accepted grammar, with `ws` permitted only where shown:
//!
//! ```text
//! poly     := ws [ "-" ] term { ws ("+" | "-") ws term } ws
//! term     := [ integer ] { [ "*" ] factor }
//! factor   := ident [ "^" sinteger ]
//! ident    := letter { letter | digit | "_" }
//! integer  := digit { digit }
//! sinteger := [ "-" ] integer
//! ws       := { " " | "\t" | "\r" | "\n" }
//! ```
//!
//! So `2*L^2*M^-4` and `2L^2M^-4` are the same term (the `*` is optional),
//! while `2 L^2` and `L^ 2` are rejected: whitespace is only legal around
//! the `+`/`-` joining terms. Coefficients are unbounded integers;
//! exponents must fit in `i64`.
//!
//! Printing is the `Display` impl on [`LaurentPolynomial`]: terms in
//! increasing monomial order with explicit `*` between coefficient and
//! variables. `parse_poly(p.to_string()) == p` for every polynomial `p`.

use std::fmt;

use num_bigint::BigInt;

use crate::poly::{LaurentPolynomial, Monomial, VarName};

/// A syntax error, with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, column {}: {}",
            self.line, self.col, self.message
        )
    }
}

impl std::error::Error for ParseError {}

/// Parses the grammar above into a polynomial (terms with equal monomials
/// are summed, so `x + x` parses to `2*x`).
pub fn parse_poly(text: &str) -> Result<LaurentPolynomial, ParseError> {
    let mut scanner = Scanner::new(text);
    scanner.skip_ws();

    let mut poly = LaurentPolynomial::zero();
    let mut negate = scanner.eat('-');
    if negate {
        // The grammar allows no whitespace between a sign and its term, but
        // a leading "- 3" reads too naturally to reject. Interior signs are
        // binary operators and may be spaced anyway.
        scanner.skip_ws();
    }
    loop {
        let (monomial, coeff) = scanner.parse_term()?;
        poly = &poly
            + &LaurentPolynomial::from_monomial(if negate { -coeff } else { coeff }, monomial);

        scanner.skip_ws();
        match scanner.peek() {
            None => return Ok(poly),
            Some('+') => negate = false,
            Some('-') => negate = true,
            Some(c) => return Err(scanner.error(format!("expected `+`, `-`, or end, found `{c}`"))),
        }
        scanner.advance();
        scanner.skip_ws();
    }
}

struct Scanner<'a> {
    rest: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            rest: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.rest.peek().copied()
    }

    fn advance(&mut self) -> Option<char> {
        let c = self.rest.next();
        match c {
            Some('\n') => {
                self.line += 1;
                self.col = 1;
            }
            Some(_) => self.col += 1,
            None => {}
        }
        c
    }

    fn eat(&mut self, expected: char) -> bool {
        if self.peek() == Some(expected) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t' | '\r' | '\n')) {
            self.advance();
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            message: message.into(),
        }
    }

    /// term := [ integer ] { ["*"] factor } — at least one of the two parts.
    fn parse_term(&mut self) -> Result<(Monomial, BigInt), ParseError> {
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => Some(self.parse_integer()?),
            _ => None,
        };
        let mut exponents: Vec<(VarName, i64)> = Vec::new();
        loop {
            match self.peek() {
                Some('*') => {
                    self.advance();
                    exponents.push(self.parse_factor()?);
                }
                Some(c) if c.is_ascii_alphabetic() => exponents.push(self.parse_factor()?),
                _ => break,
            }
        }
        if coeff.is_none() && exponents.is_empty() {
            let found = match self.peek() {
                Some(c) => format!("found `{c}`"),
                None => "found end of input".to_string(),
            };
            return Err(self.error(format!("expected a term, {found}")));
        }
        Ok((
            Monomial::from_exponents(exponents),
            coeff.unwrap_or_else(|| BigInt::from(1)),
        ))
    }

    /// factor := ident [ "^" sinteger ]
    fn parse_factor(&mut self) -> Result<(VarName, i64), ParseError> {
        let var = match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => self.parse_ident()?,
            Some(c) => return Err(self.error(format!("expected a variable, found `{c}`"))),
            None => return Err(self.error("expected a variable, found end of input")),
        };
        let exponent = if self.eat('^') {
            let negative = self.eat('-');
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {}
                Some(c) => return Err(self.error(format!("expected an exponent, found `{c}`"))),
                None => return Err(self.error("expected an exponent, found end of input")),
            }
            let digits = self.take_digits();
            let magnitude: i64 = digits
                .parse()
                .map_err(|_| self.error(format!("exponent `{digits}` does not fit in 64 bits")))?;
            if negative {
                -magnitude
            } else {
                magnitude
            }
        } else {
            1
        };
        Ok((var, exponent))
    }

    fn parse_ident(&mut self) -> Result<VarName, ParseError> {
        let mut name = String::new();
        name.push(self.advance().expect("caller peeked a letter"));
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            name.push(self.advance().expect("peeked"));
        }
        VarName::new(&name).map_err(|_| self.error(format!("invalid variable name `{name}`")))
    }

    fn parse_integer(&mut self) -> Result<BigInt, ParseError> {
        let digits = self.take_digits();
        digits
            .parse()
            .map_err(|_| self.error(format!("invalid integer `{digits}`")))
    }

    fn take_digits(&mut self) -> String {
        let mut digits = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.advance().expect("peeked"));
        }
        digits
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::vn;

    #[test]
    fn parses_starred_and_juxtaposed_terms() {
        let starred = parse_poly("2*L^2*M^-4").unwrap();
        let tight = parse_poly("2L^2M^-4").unwrap();
        assert_eq!(starred, tight);
        assert_eq!(
            starred,
            LaurentPolynomial::from_monomial(
                BigInt::from(2),
                Monomial::from_exponents([(vn("L"), 2), (vn("M"), -4)])
            )
        );
    }

    #[test]
    fn parses_signs_and_merges_like_terms() {
        assert_eq!(parse_poly("x + x").unwrap().to_string(), "2*x");
        assert_eq!(parse_poly("-x + 1").unwrap().to_string(), "1 - x");
        assert_eq!(parse_poly("- 3").unwrap().to_string(), "-3");
        assert!(parse_poly("x - x").unwrap().is_zero());
        assert_eq!(parse_poly("0").unwrap(), LaurentPolynomial::zero());
        assert_eq!(parse_poly("  1 - t  ").unwrap().to_string(), "1 - t");
    }

    #[test]
    fn multi_character_identifiers() {
        let p = parse_poly("alpha_2^3 - beta").unwrap();
        let alpha = Monomial::from_exponents([(vn("alpha_2"), 3)]);
        assert_eq!(p.coeff(&alpha), BigInt::from(1));
    }

    #[test]
    fn rejects_whitespace_inside_terms() {
        assert!(parse_poly("L ^2").is_err());
        assert!(parse_poly("L^ 2").is_err());
        assert!(parse_poly("L^- 2").is_err());
        assert!(parse_poly("2 * L").is_err());
        assert!(parse_poly("2 L^2").is_err());
    }

    #[test]
    fn rejects_malformed_input_with_position() {
        let err = parse_poly("x +").unwrap_err();
        assert_eq!((err.line, err.col), (1, 4));

        let err = parse_poly("x + $").unwrap_err();
        assert_eq!((err.line, err.col), (1, 5));
        assert!(err.message.contains('$'));

        let err = parse_poly("x\n+ y^")
            .expect_err("dangling caret");
        assert_eq!((err.line, err.col), (2, 5));

        assert!(parse_poly("").is_err());
        assert!(parse_poly("   ").is_err());
        assert!(parse_poly("x y +").is_err());
        assert!(parse_poly("3^2").is_err());
        assert!(parse_poly("x^99999999999999999999").is_err());
    }

    #[test]
    fn printer_round_trips_hall_of_fame() {
        for text in [
            "0",
            "1",
            "-1",
            "x",
            "-x",
            "x^-2",
            "1 - t",
            "3 + 2*x",
            "M^4 - L + L*M^2 + 2*L*M^4 + L*M^6 - L*M^8 + L^2*M^4",
            "x^-3*y^2 + 42 - 7*z",
        ] {
            let parsed = parse_poly(text).unwrap();
            assert_eq!(parsed.to_string(), text, "canonical form of `{text}`");
            assert_eq!(parse_poly(&parsed.to_string()).unwrap(), parsed);
        }
    }
}
