//! Text grammar for exact values:
//!
//! ```text
//! INT := ['-'] digits
//! RAT := INT ['/' digits]
//! GR  := RAT | RAT ('+'|'-') RAT 'i' | ['-'] RAT 'i' | ['-'] 'i'
//! ```
//!
//! No whitespace is accepted anywhere.

use num_bigint::BigInt;

use super::{GaussianRational, ParseError, Rational};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos == self.src.len()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, expected: &'static str) -> ParseError {
        ParseError {
            offset: self.pos,
            expected,
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("digit"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("validated digits"))
    }

    fn rat(&mut self) -> Result<Rational, ParseError> {
        let neg = self.eat(b'-');
        let mut numer = self.digits()?;
        if neg {
            numer = -numer;
        }
        if self.eat(b'/') {
            let at = self.pos;
            let denom = self.digits()?;
            return Rational::new(numer, denom).map_err(|_| ParseError {
                offset: at,
                expected: "nonzero denominator",
            });
        }
        Ok(Rational::from_integer(numer))
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("end of input"))
        }
    }
}

pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let mut c = Cursor::new(text);
    let q = c.rat()?;
    c.finish()?;
    Ok(q)
}

/// Parses a Gaussian rational; errors carry the byte offset of the failure.
pub fn parse_gaussian(text: &str) -> Result<GaussianRational, ParseError> {
    let mut c = Cursor::new(text);
    match text {
        "i" => return Ok(GaussianRational::i()),
        "-i" => return Ok(-GaussianRational::i()),
        _ => {}
    }
    // ['-'] RAT 'i' where the RAT itself carries a sign: "--2i"
    if text.as_bytes().starts_with(b"--") {
        c.pos = 1;
        let im = c.rat()?;
        if !c.eat(b'i') {
            return Err(c.err("'i'"));
        }
        c.finish()?;
        return Ok(GaussianRational::new(Rational::zero(), -im));
    }
    let first = c.rat()?;
    if c.at_end() {
        return Ok(GaussianRational::real(first));
    }
    if c.eat(b'i') {
        c.finish()?;
        return Ok(GaussianRational::new(Rational::zero(), first));
    }
    let negate = match c.peek() {
        Some(b'+') => false,
        Some(b'-') => true,
        _ => return Err(c.err("'+', '-', 'i' or end of input")),
    };
    c.pos += 1;
    let second = c.rat()?;
    if !c.eat(b'i') {
        return Err(c.err("'i'"));
    }
    c.finish()?;
    let im = if negate { -second } else { second };
    Ok(GaussianRational::new(first, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(parse_gaussian("3/4").unwrap(), GaussianRational::real(q(3, 4)));
        assert_eq!(
            parse_gaussian("-1/2+2/3i").unwrap(),
            GaussianRational::new(q(-1, 2), q(2, 3))
        );
        assert_eq!(parse_gaussian("i").unwrap(), GaussianRational::i());
        assert_eq!(parse_gaussian("-i").unwrap(), -GaussianRational::i());
        assert_eq!(
            parse_gaussian("5-7i").unwrap(),
            GaussianRational::new(q(5, 1), q(-7, 1))
        );
        assert_eq!(
            parse_gaussian("-3/9i").unwrap(),
            GaussianRational::new(q(0, 1), q(-1, 3))
        );
        assert_eq!(
            parse_gaussian("--2i").unwrap(),
            GaussianRational::new(q(0, 1), q(2, 1))
        );
        assert_eq!(
            parse_gaussian("1+-2i").unwrap(),
            GaussianRational::new(q(1, 1), q(-2, 1))
        );
    }

    #[test]
    fn malformed_inputs_report_offsets() {
        let cases = [
            ("", 0),
            ("1 ", 1),
            (" 1", 0),
            ("1/", 2),
            ("1/0", 2),
            ("1+i", 2),
            ("1+2", 3),
            ("1+2ix", 4),
            ("abc", 0),
            ("2/3j", 3),
            ("1.5", 1),
            ("-", 1),
        ];
        for (text, offset) in cases {
            let err = parse_gaussian(text).unwrap_err();
            assert_eq!(err.offset, offset, "input {text:?}: {err}");
        }
    }

    #[test]
    fn rational_only_parser_rejects_imaginary() {
        assert_eq!(parse_rational("-7/14").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("2i").unwrap_err().offset, 1);
    }
}
