//! Text form of polynomials: signed terms `c*G1^e1*G2^e2`, coefficient
//! `p` or `p/q`, omitted when 1. This is the grammar `canonical_string`
//! emits, so every rendered polynomial parses back to itself.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{MultiPoly, Vars};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn syntax(message: impl Into<String>) -> Error {
    Error::Syntax {
        line: 1,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Num(BigInt::from_str(&s).map_err(|e| syntax(e.to_string()))?));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(syntax(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

/// A term as coefficient and (name, exponent) factors.
type RawTerm = (BigRational, Vec<(String, u32)>);

fn parse_terms(text: &str) -> Result<Vec<RawTerm>> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(syntax("empty polynomial"));
    }
    let mut pos = 0;
    let mut terms = Vec::new();
    let mut first = true;
    while pos < toks.len() {
        let mut sign = BigRational::one();
        match toks[pos] {
            Tok::Plus => pos += 1,
            Tok::Minus => {
                sign = -sign;
                pos += 1
            }
            _ if !first => return Err(syntax("expected `+` or `-` between terms")),
            _ => {}
        }
        first = false;
        let mut coeff = sign;
        let mut factors = Vec::new();
        loop {
            match toks.get(pos) {
                Some(Tok::Num(n)) => {
                    let mut value = BigRational::from_integer(n.clone());
                    pos += 1;
                    if let Some(Tok::Slash) = toks.get(pos) {
                        match toks.get(pos + 1) {
                            Some(Tok::Num(d)) if !d.is_zero() => {
                                value /= BigRational::from_integer(d.clone());
                                pos += 2;
                            }
                            Some(Tok::Num(_)) => return Err(syntax("zero denominator")),
                            _ => return Err(syntax("expected denominator after `/`")),
                        }
                    }
                    coeff *= value;
                }
                Some(Tok::Ident(name)) => {
                    pos += 1;
                    let mut exp = 1u32;
                    if let Some(Tok::Caret) = toks.get(pos) {
                        match toks.get(pos + 1) {
                            Some(Tok::Num(e)) => {
                                exp = u32::try_from(e).map_err(|_| syntax("exponent too large"))?;
                                pos += 2;
                            }
                            _ => return Err(syntax("expected exponent after `^`")),
                        }
                    }
                    factors.push((name.clone(), exp));
                }
                _ => return Err(syntax("expected a number or a variable")),
            }
            match toks.get(pos) {
                Some(Tok::Star) => pos += 1,
                None | Some(Tok::Plus) | Some(Tok::Minus) => break,
                Some(t) => return Err(syntax(format!("unexpected token {t:?}"))),
            }
        }
        terms.push((coeff, factors));
    }
    Ok(terms)
}

fn build(terms: Vec<RawTerm>, vars: &Vars) -> Result<MultiPoly> {
    let mut poly = MultiPoly::zero(vars);
    for (c, factors) in terms {
        let mut e = vec![0u32; vars.len()];
        for (name, x) in factors {
            let i = vars
                .iter()
                .position(|v| *v == name)
                .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            e[i] += x;
        }
        poly.add_term(e, c);
    }
    Ok(poly)
}

/// Parses over a fixed variable table; unknown names are an error.
pub fn parse_poly(text: &str, vars: &Vars) -> Result<MultiPoly> {
    build(parse_terms(text)?, vars)
}

/// Parses and collects variables in order of first appearance.
pub fn parse_poly_auto(text: &str) -> Result<MultiPoly> {
    let terms = parse_terms(text)?;
    let mut names: Vec<String> = Vec::new();
    for (_, fs) in &terms {
        for (n, _) in fs {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
    }
    build(terms, &names.into())
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| syntax(format!("bad rational `{t}`")))?;
    let d = BigInt::from_str(den).map_err(|_| syntax(format!("bad rational `{t}`")))?;
    if d.is_zero() {
        return Err(syntax(format!("zero denominator in `{t}`")));
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{ratio, vars_from};

    #[test]
    fn parses_signed_rational_terms() {
        let v = vars_from(&["H", "E"]);
        let p = parse_poly("-3/2*H^2*E + E - 7", &v).unwrap();
        assert_eq!(p.coefficient(&[2, 1]), ratio(-3, 2));
        assert_eq!(p.coefficient(&[0, 1]), ratio(1, 1));
        assert_eq!(p.constant_term(), ratio(-7, 1));
    }

    #[test]
    fn auto_collects_in_first_appearance_order() {
        let p = parse_poly_auto("k^2 + 2*k + a").unwrap();
        assert_eq!(p.vars().as_ref(), ["k".to_string(), "a".to_string()]);
    }

    #[test]
    fn rejects_garbage() {
        let v = vars_from(&["x"]);
        assert!(parse_poly("", &v).is_err());
        assert!(parse_poly("x +", &v).is_err());
        assert!(parse_poly("x y", &v).is_err());
        assert!(parse_poly("1/0", &v).is_err());
        assert!(matches!(parse_poly("z", &v), Err(Error::UnknownVariable(_))));
        assert!(parse_rational("3/x").is_err());
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
    }
}
