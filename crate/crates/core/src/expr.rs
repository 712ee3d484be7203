//! Text syntax for [`NCElement`]s.
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := scalar | gen | '(' expr ')'
//! gen    := ('U' | 'V') ('^' sint)?
//! scalar := rat | 'i' | 'ph(' rat ')'
//! rat    := sint ('/' uint)?
//! ```
//!
//! `ph(r)` denotes `e(ϑ r)` for the algebra parameter `ϑ`. Whitespace is ignored.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::algebra::{NCElement, Param};
use crate::error::{Error, Result};
use crate::exact::{ExactInt, GaussRat, PhaseScalar};

struct Parser<'a, I: ExactInt> {
    src: &'a [u8],
    pos: usize,
    param: &'a Param<I>,
}

impl<'a, I: ExactInt> Parser<'a, I> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
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
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn expr(&mut self) -> Result<NCElement<I>> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            acc = acc.add(&self.term()?)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<NCElement<I>> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<NCElement<I>> {
        let p = self.param.clone();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(g @ (b'U' | b'V')) => {
                self.pos += 1;
                let k = if self.eat(b'^') { self.sint_i64()? } else { 1 };
                let (m, n) = if g == b'U' { (k, 0) } else { (0, k) };
                Ok(NCElement::monomial(p, PhaseScalar::one(), m, n))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(NCElement::scalar(p, PhaseScalar::constant(GaussRat::i())))
            }
            Some(b'p') => {
                if !self.src[self.pos..].starts_with(b"ph") {
                    return self.err("unexpected character");
                }
                self.pos += 2;
                self.expect(b'(')?;
                let r = self.rat()?;
                self.expect(b')')?;
                Ok(NCElement::scalar(p, PhaseScalar::phase(r)))
            }
            Some(b'-' | b'0'..=b'9') => {
                let r = self.rat()?;
                Ok(NCElement::scalar(p, PhaseScalar::constant(GaussRat::real(r))))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn sint(&mut self) -> Result<I> {
        let negative = self.eat(b'-');
        let start = self.pos;
        let v: I = self.digits()?.parse().or_else(|_| {
            self.pos = start;
            self.err("malformed integer")
        })?;
        Ok(if negative { -v } else { v })
    }

    fn sint_i64(&mut self) -> Result<i64> {
        let start = self.pos;
        let v = self.sint()?;
        v.to_i64().map_or_else(
            || {
                self.pos = start;
                self.err("exponent out of range")
            },
            Ok,
        )
    }

    fn rat(&mut self) -> Result<Ratio<I>> {
        let num = self.sint()?;
        if !self.eat(b'/') {
            return Ok(Ratio::from_integer(num));
        }
        self.skip_ws();
        let start = self.pos;
        let den: I = self.digits()?.parse().or_else(|_| self.err("malformed integer"))?;
        if den.is_zero() {
            self.pos = start;
            return self.err("zero denominator");
        }
        Ok(Ratio::new(num, den))
    }
}

/// Parses `text` into normal form over `param`.
pub fn parse<I: ExactInt>(text: &str, param: &Param<I>) -> Result<NCElement<I>> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0, param };
    let out = parser.expr()?;
    if parser.peek().is_some() {
        return parser.err("trailing input");
    }
    Ok(out)
}

fn print_gauss<I: ExactInt>(g: &GaussRat<I>) -> String {
    let imag = |im: &Ratio<I>| if im.is_one() { "i".to_string() } else { format!("{im}*i") };
    match (g.re.is_zero(), g.im.is_zero()) {
        (_, true) => g.re.to_string(),
        (true, false) => imag(&g.im),
        (false, false) => format!("({} + {})", g.re, imag(&g.im)),
    }
}

fn print_summand<I: ExactInt>(r: &Ratio<I>, g: &GaussRat<I>) -> String {
    match (r.is_zero(), g.is_one()) {
        (true, _) => print_gauss(g),
        (false, true) => format!("ph({r})"),
        (false, false) => format!("{}*ph({r})", print_gauss(g)),
    }
}

fn print_monomial(m: i64, n: i64) -> String {
    let gen = |name: &str, k: i64| match k {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{k}")),
    };
    [gen("U", m), gen("V", n)].into_iter().flatten().collect::<Vec<_>>().join("*")
}

/// Canonical text: terms ordered by `(m, n)`, unit coefficients omitted.
pub fn print<I: ExactInt>(x: &NCElement<I>) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = x
        .terms()
        .map(|(&(m, n), c)| {
            let mono = print_monomial(m, n);
            let summands: Vec<String> = c.terms().map(|(r, g)| print_summand(r, g)).collect();
            let coeff = match summands.len() {
                1 => summands.into_iter().next().expect("one summand"),
                _ => format!("({})", summands.join(" + ")),
            };
            match (c.is_one(), mono.is_empty()) {
                (true, true) => "1".into(),
                (true, false) => mono,
                (false, true) => coeff,
                (false, false) => format!("{coeff}*{mono}"),
            }
        })
        .collect();
    terms.join(" + ")
}

/// `print(parse(text))`.
pub fn canonical<I: ExactInt>(text: &str, param: &Param<I>) -> Result<String> {
    Ok(print(&parse(text, param)?))
}
