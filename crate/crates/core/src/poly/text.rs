//! Text form of polynomials: `coef*z1^a*z2^b*s^c` terms joined by `+`/`-`.

use std::fmt;

use super::multipoly::{Monomial, MultiPoly};
use super::scalar::Coeff;
use super::PolyError;

/// `z1, ..., zn`.
pub fn default_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("z{i}")).collect()
}

impl<C: Coeff> MultiPoly<C> {
    /// Prints terms from highest to lowest in graded-lex order.
    pub fn to_text<S: AsRef<str>>(&self, names: &[S]) -> String {
        assert_eq!(names.len(), self.nvars(), "one name per variable");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let (neg, mag) = c.split_sign();
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let factors = monomial_factors(m, names);
            if factors.is_empty() {
                out.push_str(&mag.fmt_coeff());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.fmt_coeff());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    pub fn parse<S: AsRef<str>>(text: &str, names: &[S]) -> Result<Self, PolyError> {
        Parser {
            src: text,
            pos: 0,
            names,
        }
        .poly()
    }
}

fn monomial_factors<S: AsRef<str>>(m: &Monomial, names: &[S]) -> Vec<String> {
    m.exponents()
        .iter()
        .zip(names)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, name)| match e {
            1 => name.as_ref().to_string(),
            _ => format!("{}^{e}", name.as_ref()),
        })
        .collect()
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&default_names(self.nvars())))
    }
}

struct Parser<'a, S> {
    src: &'a str,
    pos: usize,
    names: &'a [S],
}

impl<S: AsRef<str>> Parser<'_, S> {
    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn poly<C: Coeff>(mut self) -> Result<MultiPoly<C>, PolyError> {
        let nvars = self.names.len();
        let mut out = MultiPoly::zero(nvars);
        self.skip_ws();
        let mut negate = false;
        if self.peek() == Some('-') {
            negate = true;
            self.pos += 1;
        }
        loop {
            let (m, mut c) = self.term::<C>()?;
            if negate {
                c = -c;
            }
            out.add_term(m, c);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('+') => negate = false,
                Some('-') => negate = true,
                Some(ch) => return Err(self.err(format!("unexpected '{ch}'"))),
            }
            self.pos += 1;
        }
        Ok(out)
    }

    fn term<C: Coeff>(&mut self) -> Result<(Monomial, C), PolyError> {
        let mut exps = vec![0u32; self.names.len()];
        let mut coeff = C::one();
        loop {
            self.skip_ws();
            match self.peek() {
                Some('(') => {
                    let start = self.pos;
                    let end = self.src[start..]
                        .find(')')
                        .ok_or_else(|| self.err("unclosed '('"))?;
                    self.pos = start + end + 1;
                    let c = C::parse_coeff(&self.src[start..self.pos])
                        .ok_or_else(|| self.err("bad coefficient"))?;
                    coeff = coeff * c;
                }
                Some(ch) if ch.is_ascii_digit() || ch == '.' => {
                    let start = self.pos;
                    while self
                        .peek()
                        .is_some_and(|c| c.is_ascii_digit() || c == '/' || c == '.')
                    {
                        self.pos += 1;
                    }
                    let c = C::parse_coeff(&self.src[start..self.pos])
                        .ok_or_else(|| self.err("bad coefficient"))?;
                    coeff = coeff * c;
                }
                Some(ch) if ch.is_alphabetic() || ch == '_' => {
                    let start = self.pos;
                    while self
                        .peek()
                        .is_some_and(|c| c.is_alphanumeric() || c == '_')
                    {
                        self.pos += 1;
                    }
                    let name = &self.src[start..self.pos];
                    let idx = self
                        .names
                        .iter()
                        .position(|n| n.as_ref() == name)
                        .ok_or_else(|| self.err(format!("unknown variable '{name}'")))?;
                    let mut e = 1;
                    self.skip_ws();
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        self.skip_ws();
                        let s = self.pos;
                        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                            self.pos += 1;
                        }
                        e = self.src[s..self.pos]
                            .parse()
                            .map_err(|_| self.err("bad exponent"))?;
                    }
                    exps[idx] += e;
                }
                _ => return Err(self.err("expected coefficient or variable")),
            }
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::new(exps), coeff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::scalar::{rat, Rational};
    use num_complex::Complex64;
    use proptest::prelude::*;

    #[test]
    fn prints_in_descending_order() {
        let names = ["z1", "z2", "s"];
        let p: MultiPoly<Rational> = MultiPoly::parse("z2 + s + z1*s^2", &names).unwrap();
        assert_eq!(p.to_text(&names), "z1*s^2 + z2 + s");
        let q: MultiPoly<Rational> = MultiPoly::parse("-3/2*z1 + 7 - z2^3", &names).unwrap();
        assert_eq!(q.to_text(&names), "-z2^3 - 3/2*z1 + 7");
        assert_eq!(MultiPoly::<Rational>::zero(3).to_text(&names), "0");
    }

    #[test]
    fn complex_coefficients() {
        let names = ["z1"];
        let p: MultiPoly<Complex64> = MultiPoly::parse("(1.5-2i)*z1^2 + (0+1i)", &names).unwrap();
        assert_eq!(p.coeff(&[2]), Complex64::new(1.5, -2.0));
        assert_eq!(p.coeff(&[0]), Complex64::new(0.0, 1.0));
        let back: MultiPoly<Complex64> = MultiPoly::parse(&p.to_text(&names), &names).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn parse_errors() {
        let names = ["x"];
        assert!(MultiPoly::<Rational>::parse("x + y", &names).is_err());
        assert!(MultiPoly::<Rational>::parse("x +", &names).is_err());
        assert!(MultiPoly::<Rational>::parse("1/0*x", &names).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly<Rational>> {
        prop::collection::vec(
            (prop::collection::vec(0u32..4, 3), -50i64..50, 1i64..9),
            0..8,
        )
        .prop_map(|terms| {
            MultiPoly::from_terms(3, terms.into_iter().map(|(e, n, d)| (e, rat(n, d)))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn exact_text_round_trip(p in arb_poly()) {
            let names = default_names(3);
            let text = p.to_text(&names);
            let back = MultiPoly::<Rational>::parse(&text, &names).unwrap();
            prop_assert_eq!(back.to_text(&names), text);
            prop_assert_eq!(back, p);
        }
    }
}
