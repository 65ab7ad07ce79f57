//! Micro-grammar for writing polynomials inline: terms separated by `+`/`-`,
//! factors inside a term separated by whitespace or `*`, exponents with `^`.
//!
//! `"z^3 - 9/4 g2 z + 27/4 g3"` parses to `z³ − (9/4)g₂z + (27/4)g₃`. This is
//! the notation used by the cover catalog and the test suites; it is not a
//! general expression language (no parentheses, no nested operators).

use super::poly::MultiPoly;
use super::rational::Rational;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum PolyParseError {
    #[error("empty term in polynomial expression")]
    EmptyTerm,
    #[error("bad coefficient {0:?}")]
    BadCoefficient(String),
    #[error("bad exponent in {0:?}")]
    BadExponent(String),
    #[error("bad variable name {0:?}")]
    BadVariable(String),
}

fn is_var_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

/// Parse the micro-grammar into a polynomial.
pub fn parse_poly(src: &str) -> Result<MultiPoly, PolyParseError> {
    let cleaned = src.replace('*', " ");
    let mut acc = MultiPoly::zero();
    // split into signed terms; an operator must be followed by an operand
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut neg = false;
    let mut expect_operand = false;
    for ch in cleaned.chars() {
        match ch {
            '+' | '-' => {
                if current.trim().is_empty() {
                    if terms.is_empty() && !expect_operand {
                        // leading sign
                        neg = ch == '-';
                        expect_operand = true;
                    } else {
                        return Err(PolyParseError::EmptyTerm);
                    }
                } else {
                    terms.push((neg, std::mem::take(&mut current)));
                    neg = ch == '-';
                    expect_operand = true;
                }
            }
            _ => {
                if !ch.is_whitespace() {
                    expect_operand = false;
                }
                current.push(ch);
            }
        }
    }
    if !current.trim().is_empty() {
        terms.push((neg, current));
    } else if expect_operand {
        return Err(PolyParseError::EmptyTerm);
    }
    if terms.is_empty() {
        // blank input or an explicit "0" is the zero polynomial
        let t = src.trim();
        if t == "0" || t.is_empty() {
            return Ok(MultiPoly::zero());
        }
        return Err(PolyParseError::EmptyTerm);
    }
    for (neg, body) in terms {
        let body = body.trim();
        if body.is_empty() {
            return Err(PolyParseError::EmptyTerm);
        }
        let mut coef = Rational::one();
        let mut vars: Vec<(String, u16)> = Vec::new();
        for tok in body.split_whitespace() {
            let first = tok.chars().next().unwrap();
            if first.is_ascii_digit() {
                let c: Rational = tok
                    .parse()
                    .map_err(|_| PolyParseError::BadCoefficient(tok.to_string()))?;
                coef = &coef * &c;
            } else if is_var_start(first) {
                let (name, exp) = match tok.split_once('^') {
                    Some((v, e)) => {
                        let exp: u16 = e
                            .parse()
                            .map_err(|_| PolyParseError::BadExponent(tok.to_string()))?;
                        (v, exp)
                    }
                    None => (tok, 1),
                };
                if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(PolyParseError::BadVariable(name.to_string()));
                }
                vars.push((name.to_string(), exp));
            } else {
                return Err(PolyParseError::BadVariable(tok.to_string()));
            }
        }
        if neg {
            coef = -coef;
        }
        let ve: Vec<(&str, u16)> = vars.iter().map(|(v, e)| (v.as_str(), *e)).collect();
        acc = acc.add(&MultiPoly::monomial(&ve, coef));
    }
    Ok(acc)
}

/// Panicking convenience for statically known expressions.
pub fn poly(src: &str) -> MultiPoly {
    parse_poly(src).unwrap_or_else(|e| panic!("bad polynomial literal {src:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_signs_and_fractions() {
        let p = poly("z^3 - 9/4 g2 z + 27/4 g3");
        assert_eq!(p.degree_in("z"), 3);
        let q = poly("-z + 1").add(&poly("z - 1"));
        assert!(q.is_zero());
        assert_eq!(poly("0"), MultiPoly::zero());
        assert_eq!(poly("2 2 z"), poly("4 z"));
        assert_eq!(poly("3*z*w"), poly("3 z w"));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("z +").is_err());
        assert!(parse_poly("1/0 z").is_err());
        assert!(parse_poly("z^x").is_err());
        assert!(parse_poly("@").is_err());
    }
}
