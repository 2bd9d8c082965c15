use super::monomial::Monomial;
use super::poly::Polynomial;
use super::{Error, Result};
use crate::{BigInt, Rat};
use num_traits::Zero;

/// Parse the polynomial input language.
///
/// Grammar:
/// ```text
/// expression ::= ['-'] term (('+'|'-') term)*
/// term       ::= coeff | [coeff '*'] factor ('*' factor)*
/// factor     ::= var ['^' posint]
/// coeff      ::= int | '(' int '/' posint ')'
/// var        ::= 'x' nonneg-int
/// ```
/// Whitespace is insignificant. Bare constant terms and a leading minus are
/// accepted so that dehomogenized polynomials round-trip through printing.
/// Like terms are combined, zero coefficients dropped, and a polynomial that
/// cancels to zero is rejected.
pub fn parse_polynomial(text: &str, num_vars: usize) -> Result<Polynomial> {
    if num_vars == 0 {
        return Err(Error::Syntax {
            pos: 0,
            msg: "need at least one variable".into(),
        });
    }
    let mut s = Scanner::new(text);
    let mut poly = Polynomial::zero(num_vars);
    s.skip_ws();
    if s.at_end() {
        return Err(Error::Syntax {
            pos: s.pos,
            msg: "empty input".into(),
        });
    }
    let mut sign = if s.eat('-') {
        -1
    } else {
        s.eat('+');
        1
    };
    loop {
        let (m, c) = parse_term(&mut s, num_vars)?;
        poly.add_term(m, if sign < 0 { -c } else { c });
        s.skip_ws();
        if s.at_end() {
            break;
        }
        sign = if s.eat('+') {
            1
        } else if s.eat('-') {
            -1
        } else {
            return Err(Error::Syntax {
                pos: s.pos,
                msg: format!("expected '+' or '-', found {}", s.describe_here()),
            });
        };
    }
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(poly)
}

fn parse_term(s: &mut Scanner, num_vars: usize) -> Result<(Monomial, Rat)> {
    s.skip_ws();
    let mut coeff = Rat::from(BigInt::from(1));
    let mut exps = vec![0u32; num_vars];
    let mut saw_factor = false;

    if s.peek() == Some('(') || s.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
        coeff = parse_coeff(s)?;
        s.skip_ws();
        if s.eat('*') {
            parse_factor(s, num_vars, &mut exps)?;
            saw_factor = true;
        }
    } else {
        parse_factor(s, num_vars, &mut exps)?;
        saw_factor = true;
    }

    if saw_factor {
        loop {
            s.skip_ws();
            let mark = s.pos;
            if s.eat('*') {
                parse_factor(s, num_vars, &mut exps)?;
            } else {
                s.pos = mark;
                break;
            }
        }
    }
    Ok((Monomial(exps), coeff))
}

fn parse_coeff(s: &mut Scanner) -> Result<Rat> {
    s.skip_ws();
    if s.eat('(') {
        s.skip_ws();
        let num = parse_int(s)?;
        s.skip_ws();
        if !s.eat('/') {
            return Err(Error::Syntax {
                pos: s.pos,
                msg: "expected '/' in rational coefficient".into(),
            });
        }
        s.skip_ws();
        let den = parse_int(s)?;
        if den <= BigInt::zero() {
            return Err(Error::Syntax {
                pos: s.pos,
                msg: "denominator must be a positive integer".into(),
            });
        }
        s.skip_ws();
        if !s.eat(')') {
            return Err(Error::Syntax {
                pos: s.pos,
                msg: "expected ')'".into(),
            });
        }
        Ok(Rat::new(num, den))
    } else {
        Ok(Rat::from(parse_int(s)?))
    }
}

fn parse_int(s: &mut Scanner) -> Result<BigInt> {
    s.skip_ws();
    let start = s.pos;
    let neg = s.eat('-');
    let digits = s.take_digits();
    if digits.is_empty() {
        return Err(Error::Syntax {
            pos: start,
            msg: "expected an integer".into(),
        });
    }
    let mut v: BigInt = digits.parse().expect("digits");
    if neg {
        v = -v;
    }
    Ok(v)
}

fn parse_factor(s: &mut Scanner, num_vars: usize, exps: &mut [u32]) -> Result<()> {
    s.skip_ws();
    let start = s.pos;
    if !s.eat('x') {
        return Err(Error::Syntax {
            pos: s.pos,
            msg: format!("expected a variable, found {}", s.describe_here()),
        });
    }
    let digits = s.take_digits();
    if digits.is_empty() {
        return Err(Error::Syntax {
            pos: s.pos,
            msg: "expected a variable index after 'x'".into(),
        });
    }
    let index: usize = digits.parse().map_err(|_| Error::Syntax {
        pos: start,
        msg: "variable index too large".into(),
    })?;
    if index >= num_vars {
        return Err(Error::VarOutOfRange {
            index,
            num_vars,
            pos: start,
        });
    }
    let mut exp = 1u32;
    let mark = s.pos;
    s.skip_ws();
    if s.eat('^') {
        s.skip_ws();
        let digits = s.take_digits();
        if digits.is_empty() {
            return Err(Error::Syntax {
                pos: s.pos,
                msg: "expected a positive exponent after '^'".into(),
            });
        }
        exp = digits.parse().map_err(|_| Error::Syntax {
            pos: s.pos,
            msg: "exponent too large".into(),
        })?;
        if exp == 0 {
            return Err(Error::Syntax {
                pos: s.pos,
                msg: "exponent must be positive".into(),
            });
        }
    } else {
        s.pos = mark;
    }
    exps[index] += exp;
    Ok(())
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<char> {
        self.bytes.get(self.pos).map(|&b| b as char)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn take_digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    fn describe_here(&self) -> String {
        match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn fermat_cubic() {
        let f = parse_polynomial("x0^3 + x1^3 + x2^3", 3).unwrap();
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.homogeneous_degree(), Some(3));
    }

    #[test]
    fn cancellation_is_zero_error() {
        assert_eq!(
            parse_polynomial("x0*x1 - x1*x0", 2),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn rational_coefficient() {
        let f = parse_polynomial("x0^2*x1 + (3/2)*x1^3", 2).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coefficient(&Monomial(vec![0, 3])), rat(3, 2));
    }

    #[test]
    fn position_reporting() {
        match parse_polynomial("x0 + ?", 2) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_polynomial("x0 + x7", 2) {
            Err(Error::VarOutOfRange { index, pos, .. }) => {
                assert_eq!(index, 7);
                assert_eq!(pos, 5);
            }
            other => panic!("expected range error, got {other:?}"),
        }
    }

    #[test]
    fn constants_and_leading_minus() {
        let f = parse_polynomial("-x0^2 + 1", 1).unwrap();
        assert_eq!(f.to_string(), "-x0^2 + 1");
        let back = parse_polynomial(&f.to_string(), 1).unwrap();
        assert_eq!(back, f);
    }
}
