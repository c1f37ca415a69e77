//! Textual grammar for expressions: how the CLI reads them and how both
//! domains render.
//!
//! Time-domain input is deliberately minimal: whitespace-separated terms
//! joined by `+`, each an optional rational scalar followed by a basis
//! function and its argument, e.g. `2 sin 1 + 3 cosh 1`, `1/2 pow 3`,
//! `const 5`. Image-domain input (for inversion) uses the same syntax the
//! renderer emits: `2/c^(m+3)`, `3/(c^(m-1)*(c^2+9))`, `c/(c^m*(c-2))`.
//!
//! Parsing a rendered trig/hyperbolic image recovers the frequency from its
//! square, so it canonicalizes to the positive root; everything else round
//! trips structurally.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::transform::{ImageAtom, ImageExpr, TimeAtom, TimeExpr};
use crate::{Rational, Result};

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

/// `5`, `5/2` — num-rational's plain rendering.
fn plain(r: &Rational) -> String {
    r.to_string()
}

/// A coefficient standing in numerator position: fractions get parentheses.
fn numerator(r: &Rational) -> String {
    if r.is_integer() {
        plain(r)
    } else {
        format!("({})", plain(r))
    }
}

/// A multiplicative prefix: empty for 1, `5*`, `(5/2)*`.
fn prefix(r: &Rational) -> String {
    if r.is_one() {
        String::new()
    } else {
        format!("{}*", numerator(r))
    }
}

/// The `a*t` argument of a trig/exponential atom: `t`, `3*t`, `(1/2)*t`, `-t`.
fn frequency(a: &Rational) -> String {
    if a.is_one() {
        "t".to_string()
    } else if (-a.clone()).is_one() {
        "-t".to_string()
    } else {
        format!("{}*t", numerator(a))
    }
}

/// `c-3`, `c+3`, `c-1/2` — the linear factor of an exp image.
fn linear_group(a: &Rational) -> String {
    if a.is_negative() {
        format!("c+{}", plain(&-a.clone()))
    } else {
        format!("c-{}", plain(a))
    }
}

fn time_term(magnitude: &Rational, atom: &TimeAtom) -> String {
    match atom {
        TimeAtom::Const => plain(magnitude),
        TimeAtom::Power(1) => format!("{}t", prefix(magnitude)),
        TimeAtom::Power(p) => format!("{}t^{p}", prefix(magnitude)),
        TimeAtom::Exp(a) => format!("{}e^({})", prefix(magnitude), frequency(a)),
        TimeAtom::Sin(a) => format!("{}sin({})", prefix(magnitude), frequency(a)),
        TimeAtom::Cos(a) => format!("{}cos({})", prefix(magnitude), frequency(a)),
        TimeAtom::Sinh(a) => format!("{}sinh({})", prefix(magnitude), frequency(a)),
        TimeAtom::Cosh(a) => format!("{}cosh({})", prefix(magnitude), frequency(a)),
    }
}

fn image_term(magnitude: &Rational, atom: &ImageAtom) -> String {
    let coeff = numerator(magnitude);
    match atom {
        ImageAtom::InvPow(e) => format!("{coeff}/c^(m+{e})"),
        ImageAtom::Exp(a) => {
            let lead = if magnitude.is_one() {
                "c".to_string()
            } else {
                format!("{coeff}*c")
            };
            format!("{lead}/(c^m*({}))", linear_group(a))
        }
        ImageAtom::Sin(a) => format!("{coeff}/(c^(m-1)*(c^2+{}))", plain(&(a * a))),
        ImageAtom::Cos(a) => format!("{coeff}/(c^(m-2)*(c^2+{}))", plain(&(a * a))),
        ImageAtom::Sinh(a) => format!("{coeff}/(c^(m-1)*(c^2-{}))", plain(&(a * a))),
        ImageAtom::Cosh(a) => format!("{coeff}/(c^(m-2)*(c^2-{}))", plain(&(a * a))),
    }
}

fn fmt_terms<A>(
    f: &mut fmt::Formatter<'_>,
    terms: &[(Rational, A)],
    render: impl Fn(&Rational, &A) -> String,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (index, (coeff, atom)) in terms.iter().enumerate() {
        let magnitude = coeff.abs();
        let sep = match (index, coeff.is_negative()) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        write!(f, "{sep}{}", render(&magnitude, atom))?;
    }
    Ok(())
}

impl fmt::Display for TimeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms(), time_term)
    }
}

impl fmt::Display for ImageExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms(), image_term)
    }
}

// ---------------------------------------------------------------------------
// Time-domain parsing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum TimeToken {
    Plus,
    Word(String),
    Number(Rational),
}

fn lex_time(input: &str) -> Result<Vec<TimeToken>> {
    let mut tokens = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&ch) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
        } else if ch == '+' {
            chars.next();
            tokens.push(TimeToken::Plus);
        } else if ch.is_ascii_alphabetic() {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphabetic() {
                    word.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            tokens.push(TimeToken::Word(word));
        } else if ch.is_ascii_digit() || ch == '-' {
            let mut text = String::new();
            if ch == '-' {
                text.push(ch);
                chars.next();
            }
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() || c == '/' {
                    text.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            tokens.push(TimeToken::Number(parse_rational_text(&text)?));
        } else {
            return Err(Error::Parse(format!("unexpected character `{ch}`")));
        }
    }
    Ok(tokens)
}

fn parse_rational_text(text: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("`{text}` is not a rational number"));
    let (sign, digits) = match text.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, text),
    };
    let (numer, denom) = match digits.split_once('/') {
        Some((n, d)) => (n, d),
        None => (digits, "1"),
    };
    if numer.is_empty()
        || denom.is_empty()
        || !numer.bytes().all(|b| b.is_ascii_digit())
        || !denom.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let numer: BigInt = numer.parse().expect("digits checked");
    let denom: BigInt = denom.parse().expect("digits checked");
    if denom.is_zero() {
        return Err(Error::Parse(format!("`{text}` has a zero denominator")));
    }
    Ok(Rational::new(numer * sign, denom))
}

/// Parse the minimal time-domain grammar:
/// `[scalar] <const|pow|exp|sin|cos|sinh|cosh> <arg>` terms joined by `+`,
/// or the literal `0`.
pub fn parse_time_expr(input: &str) -> Result<TimeExpr> {
    let tokens = lex_time(input)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    if tokens == [TimeToken::Number(Rational::zero())] {
        return Ok(TimeExpr::zero());
    }
    let mut terms = Vec::new();
    let mut pos = 0;
    loop {
        let coeff = match tokens.get(pos) {
            Some(TimeToken::Number(n)) => {
                pos += 1;
                n.clone()
            }
            _ => Rational::one(),
        };
        let word = match tokens.get(pos) {
            Some(TimeToken::Word(w)) => {
                pos += 1;
                w.as_str()
            }
            _ => return Err(Error::Parse("expected a basis function name".into())),
        };
        let arg = match tokens.get(pos) {
            Some(TimeToken::Number(n)) => {
                pos += 1;
                n.clone()
            }
            _ => return Err(Error::Parse(format!("`{word}` needs a numeric argument"))),
        };
        match word {
            "const" => terms.push((coeff * arg, TimeAtom::Const)),
            "pow" => {
                if !arg.is_integer() || arg.is_negative() {
                    return Err(Error::Parse(
                        "pow needs a nonnegative integer exponent".into(),
                    ));
                }
                let p = arg
                    .to_integer()
                    .to_u32()
                    .ok_or_else(|| Error::Parse("pow exponent is too large".into()))?;
                terms.push((coeff, TimeAtom::Power(p)));
            }
            "exp" => terms.push((coeff, TimeAtom::Exp(arg))),
            "sin" => terms.push((coeff, TimeAtom::Sin(arg))),
            "cos" => terms.push((coeff, TimeAtom::Cos(arg))),
            "sinh" => terms.push((coeff, TimeAtom::Sinh(arg))),
            "cosh" => terms.push((coeff, TimeAtom::Cosh(arg))),
            other => return Err(Error::Parse(format!("unknown function `{other}`"))),
        }
        match tokens.get(pos) {
            None => break,
            Some(TimeToken::Plus) => pos += 1,
            Some(other) => {
                return Err(Error::Parse(format!(
                    "expected `+` between terms, found {other:?}"
                )))
            }
        }
    }
    Ok(TimeExpr::new(terms))
}

// ---------------------------------------------------------------------------
// Image-domain parsing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum ImageToken {
    Num(BigUint),
    C,
    M,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex_image(input: &str) -> Result<Vec<ImageToken>> {
    let mut tokens = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&ch) = chars.peek() {
        match ch {
            c if c.is_whitespace() => {
                chars.next();
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(ImageToken::Num(digits.parse().expect("digits checked")));
            }
            'c' => {
                chars.next();
                tokens.push(ImageToken::C);
            }
            'm' => {
                chars.next();
                tokens.push(ImageToken::M);
            }
            '+' => {
                chars.next();
                tokens.push(ImageToken::Plus);
            }
            '-' => {
                chars.next();
                tokens.push(ImageToken::Minus);
            }
            '*' => {
                chars.next();
                tokens.push(ImageToken::Star);
            }
            '/' => {
                chars.next();
                tokens.push(ImageToken::Slash);
            }
            '^' => {
                chars.next();
                tokens.push(ImageToken::Caret);
            }
            '(' => {
                chars.next();
                tokens.push(ImageToken::LParen);
            }
            ')' => {
                chars.next();
                tokens.push(ImageToken::RParen);
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character `{other}` in image expression"
                )))
            }
        }
    }
    Ok(tokens)
}

struct ImageParser {
    tokens: Vec<ImageToken>,
    pos: usize,
}

enum GroupShape {
    /// `(c ± a)`; `minus == true` for `c-a`.
    Linear { minus: bool, value: Rational },
    /// `(c^2 ± s)`; `plus == true` for `c^2+s`.
    Quadratic { plus: bool, value: Rational },
}

impl ImageParser {
    fn peek(&self) -> Option<&ImageToken> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, offset: usize) -> Option<&ImageToken> {
        self.tokens.get(self.pos + offset)
    }

    fn advance(&mut self) -> Option<ImageToken> {
        let token = self.tokens.get(self.pos).cloned();
        if token.is_some() {
            self.pos += 1;
        }
        token
    }

    fn expect(&mut self, token: ImageToken, what: &str) -> Result<()> {
        match self.advance() {
            Some(found) if found == token => Ok(()),
            Some(found) => Err(Error::Parse(format!("expected {what}, found {found:?}"))),
            None => Err(Error::Parse(format!("expected {what}, found end of input"))),
        }
    }

    fn eat(&mut self, token: &ImageToken) -> bool {
        if self.peek() == Some(token) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self, what: &str) -> Result<BigUint> {
        match self.advance() {
            Some(ImageToken::Num(n)) => Ok(n),
            other => Err(Error::Parse(format!("expected {what}, found {other:?}"))),
        }
    }

    /// `n`, `n/d` — used inside groups where `/` is unambiguous.
    fn unsigned_rational(&mut self, what: &str) -> Result<Rational> {
        let numer = self.number(what)?;
        let denom = if self.eat(&ImageToken::Slash) {
            let d = self.number("a denominator")?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            d
        } else {
            BigUint::one()
        };
        Ok(Rational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// Leading coefficient: `n`, `n/d` (only when the `/` is followed by a
    /// number), or `(n/d)`.
    fn coefficient(&mut self) -> Result<Rational> {
        match self.peek() {
            Some(ImageToken::Num(_)) => {
                let numer = self.number("a number")?;
                if self.peek() == Some(&ImageToken::Slash)
                    && matches!(self.peek_at(1), Some(ImageToken::Num(_)))
                {
                    self.advance();
                    let denom = self.number("a denominator")?;
                    if denom.is_zero() {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    Ok(Rational::new(BigInt::from(numer), BigInt::from(denom)))
                } else {
                    Ok(Rational::from_integer(BigInt::from(numer)))
                }
            }
            Some(ImageToken::LParen) => {
                self.advance();
                let numer = self.number("a numerator")?;
                self.expect(ImageToken::Slash, "`/`")?;
                let denom = self.number("a denominator")?;
                if denom.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                self.expect(ImageToken::RParen, "`)`")?;
                Ok(Rational::new(BigInt::from(numer), BigInt::from(denom)))
            }
            other => Err(Error::Parse(format!(
                "expected a coefficient, found {other:?}"
            ))),
        }
    }

    /// Exponent of `c` in denominator position: `m`, `(m+e)`, `(m-e)` after
    /// the caret has been consumed. Returns the signed offset from `m`.
    fn order_offset(&mut self) -> Result<i64> {
        if self.eat(&ImageToken::M) {
            return Ok(0);
        }
        self.expect(ImageToken::LParen, "`m` or `(m±e)` after `c^`")?;
        self.expect(ImageToken::M, "`m`")?;
        let negative = match self.advance() {
            Some(ImageToken::Plus) => false,
            Some(ImageToken::Minus) => true,
            other => {
                return Err(Error::Parse(format!(
                    "expected `+` or `-`, found {other:?}"
                )))
            }
        };
        let magnitude = self.number("an exponent offset")?;
        self.expect(ImageToken::RParen, "`)`")?;
        let magnitude = magnitude
            .to_i64()
            .ok_or_else(|| Error::Parse("exponent offset is too large".into()))?;
        Ok(if negative { -magnitude } else { magnitude })
    }

    /// `(c±a)` or `(c^2±s)` with the opening paren already consumed.
    fn group(&mut self) -> Result<GroupShape> {
        self.expect(ImageToken::C, "`c`")?;
        if self.eat(&ImageToken::Caret) {
            let two = self.number("the exponent 2")?;
            if two != BigUint::from(2u32) {
                return Err(Error::Parse(
                    "only c^2 can appear inside an image group".into(),
                ));
            }
            let plus = match self.advance() {
                Some(ImageToken::Plus) => true,
                Some(ImageToken::Minus) => false,
                other => {
                    return Err(Error::Parse(format!(
                        "expected `+` or `-`, found {other:?}"
                    )))
                }
            };
            let value = self.unsigned_rational("a squared frequency")?;
            self.expect(ImageToken::RParen, "`)`")?;
            Ok(GroupShape::Quadratic { plus, value })
        } else {
            let minus = match self.advance() {
                Some(ImageToken::Minus) => true,
                Some(ImageToken::Plus) => false,
                other => {
                    return Err(Error::Parse(format!(
                        "expected `+` or `-`, found {other:?}"
                    )))
                }
            };
            let value = self.unsigned_rational("a frequency")?;
            self.expect(ImageToken::RParen, "`)`")?;
            Ok(GroupShape::Linear { minus, value })
        }
    }

    /// `(c^<off>*(<group>))` with the opening paren already consumed.
    fn denominator(&mut self, has_c_numerator: bool) -> Result<ImageAtom> {
        self.expect(ImageToken::C, "`c`")?;
        self.expect(ImageToken::Caret, "`^`")?;
        let offset = self.order_offset()?;
        self.expect(ImageToken::Star, "`*`")?;
        self.expect(ImageToken::LParen, "`(`")?;
        let shape = self.group()?;
        self.expect(ImageToken::RParen, "`)` closing the denominator")?;
        match (has_c_numerator, offset, shape) {
            (true, 0, GroupShape::Linear { minus, value })
            | (false, -1, GroupShape::Linear { minus, value }) => {
                Ok(ImageAtom::Exp(if minus { value } else { -value }))
            }
            (false, -1, GroupShape::Quadratic { plus, value }) => {
                let a = sqrt_rational(&value)?;
                Ok(if plus {
                    ImageAtom::Sin(a)
                } else {
                    ImageAtom::Sinh(a)
                })
            }
            (false, -2, GroupShape::Quadratic { plus, value }) => {
                let a = sqrt_rational(&value)?;
                Ok(if plus {
                    ImageAtom::Cos(a)
                } else {
                    ImageAtom::Cosh(a)
                })
            }
            _ => Err(Error::Parse(
                "unrecognized image shape: expected one of q/c^(m+e), \
                 [q*]c/(c^m*(c-a)), q/(c^(m-1)*(c-a)), q/(c^(m-1)*(c^2±a^2)), \
                 q/(c^(m-2)*(c^2±a^2))"
                    .into(),
            )),
        }
    }

    /// `c/(...)` with the leading `c` already consumed.
    fn c_over_denominator(&mut self) -> Result<ImageAtom> {
        self.expect(ImageToken::Slash, "`/`")?;
        self.expect(ImageToken::LParen, "`(`")?;
        self.denominator(true)
    }

    fn term(&mut self) -> Result<(Rational, ImageAtom)> {
        if self.eat(&ImageToken::C) {
            return Ok((Rational::one(), self.c_over_denominator()?));
        }
        let coeff = self.coefficient()?;
        if self.eat(&ImageToken::Star) {
            self.expect(ImageToken::C, "`c` after `*`")?;
            return Ok((coeff, self.c_over_denominator()?));
        }
        self.expect(ImageToken::Slash, "`/`")?;
        match self.peek() {
            Some(ImageToken::C) => {
                self.advance();
                self.expect(ImageToken::Caret, "`^`")?;
                let offset = self.order_offset()?;
                if offset < 0 {
                    return Err(Error::Parse("1/c^(m-e) is not a recognized image".into()));
                }
                let offset = u32::try_from(offset)
                    .map_err(|_| Error::Parse("exponent offset is too large".into()))?;
                Ok((coeff, ImageAtom::InvPow(offset)))
            }
            Some(ImageToken::LParen) => {
                self.advance();
                Ok((coeff, self.denominator(false)?))
            }
            other => Err(Error::Parse(format!(
                "expected `c` or `(` after `/`, found {other:?}"
            ))),
        }
    }
}

fn sqrt_rational(value: &Rational) -> Result<Rational> {
    let not_square = || Error::Parse(format!("{value} is not the square of a rational frequency"));
    let numer = value.numer().to_biguint().ok_or_else(not_square)?;
    let denom = value.denom().to_biguint().ok_or_else(not_square)?;
    let numer_root = numer.sqrt();
    let denom_root = denom.sqrt();
    if &numer_root * &numer_root != numer || &denom_root * &denom_root != denom {
        return Err(not_square());
    }
    Ok(Rational::new(
        BigInt::from(numer_root),
        BigInt::from(denom_root),
    ))
}

/// Parse the rendered image syntax back into an [`ImageExpr`]: terms of the
/// shapes listed in [`ImageAtom`] joined by `+`/`-`, or the literal `0`.
pub fn parse_image_expr(input: &str) -> Result<ImageExpr> {
    let tokens = lex_image(input)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    if tokens == [ImageToken::Num(BigUint::zero())] {
        return Ok(ImageExpr::zero());
    }
    let mut parser = ImageParser { tokens, pos: 0 };
    let mut terms = Vec::new();
    let mut negative = parser.eat(&ImageToken::Minus);
    loop {
        let (coeff, atom) = parser.term()?;
        let coeff = if negative { -coeff } else { coeff };
        terms.push((coeff, atom));
        match parser.advance() {
            None => break,
            Some(ImageToken::Plus) => negative = false,
            Some(ImageToken::Minus) => negative = true,
            Some(other) => {
                return Err(Error::Parse(format!(
                    "expected `+` or `-` between terms, found {other:?}"
                )))
            }
        }
    }
    Ok(ImageExpr::new(terms))
}
