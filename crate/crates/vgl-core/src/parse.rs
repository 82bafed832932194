//! Text grammar for polynomials.
//!
//! Terms joined by `+`; a term is an optional rational coefficient (with
//! `*`) followed by factors `x<i>` with optional `^<exp>`, or a bare
//! rational. Example: `3/2*x1^2*x2 + x2 + 1`. Negative coefficients and
//! exponents are rejected with the offending position.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exponent::ExponentVec;
use crate::poly::SparsePoly;
use crate::rational::Rat;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Star,
    Caret,
    Slash,
    Int(BigInt),
    Var(usize),
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    fn next_tok(&mut self) -> Result<Option<(usize, Tok)>> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let start = self.pos;
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'/' => {
                self.pos += 1;
                Tok::Slash
            }
            b'-' => {
                return Err(self.err(start, "negative coefficients and exponents are rejected"))
            }
            b'0'..=b'9' => {
                let mut end = self.pos;
                while end < self.src.len() && self.src[end].is_ascii_digit() {
                    end += 1;
                }
                let s = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                self.pos = end;
                Tok::Int(s.parse().unwrap())
            }
            b'x' | b'X' => {
                let mut end = self.pos + 1;
                while end < self.src.len() && self.src[end].is_ascii_digit() {
                    end += 1;
                }
                if end == self.pos + 1 {
                    return Err(self.err(start, "variable must be x<i> with an index"));
                }
                let s = std::str::from_utf8(&self.src[self.pos + 1..end]).unwrap();
                let idx: usize = s
                    .parse()
                    .map_err(|_| self.err(start, "variable index out of range"))?;
                if idx == 0 {
                    return Err(self.err(start, "variable indices start at x1"));
                }
                self.pos = end;
                Tok::Var(idx)
            }
            other => {
                return Err(self.err(start, format!("unexpected character {:?}", other as char)))
            }
        };
        Ok(Some((start, tok)))
    }
}

/// One parsed term before dimensioning: coefficient and (1-based variable
/// index, exponent) factors.
#[derive(Debug, Clone)]
pub struct RawTerm {
    pub coeff: Rat,
    pub factors: Vec<(usize, u32)>,
}

/// Parses the grammar into raw terms plus the largest variable index seen.
pub fn parse_raw(text: &str) -> Result<(Vec<RawTerm>, usize)> {
    let mut lx = Lexer::new(text);
    let mut toks = Vec::new();
    while let Some(t) = lx.next_tok()? {
        toks.push(t);
    }
    if toks.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty polynomial".into(),
        });
    }
    let mut terms = Vec::new();
    let mut max_var = 0usize;
    let mut i = 0usize;
    loop {
        let (term, used) = parse_term(&toks[i..], text.len())?;
        for &(v, _) in &term.factors {
            max_var = max_var.max(v);
        }
        terms.push(term);
        i += used;
        if i == toks.len() {
            break;
        }
        match &toks[i] {
            (_, Tok::Plus) => {
                i += 1;
                if i == toks.len() {
                    return Err(Error::Parse {
                        pos: text.len(),
                        msg: "dangling '+' at end of input".into(),
                    });
                }
            }
            (pos, _) => {
                return Err(Error::Parse {
                    pos: *pos,
                    msg: "expected '+' between terms".into(),
                })
            }
        }
    }
    Ok((terms, max_var))
}

fn parse_term(toks: &[(usize, Tok)], end_pos: usize) -> Result<(RawTerm, usize)> {
    let mut i = 0usize;
    let mut coeff = Rat::one();
    let mut saw_coeff = false;

    if let (_, Tok::Int(n)) = &toks[0] {
        let num = n.clone();
        i = 1;
        let mut den = BigInt::one();
        if let Some((_, Tok::Slash)) = toks.get(i) {
            match toks.get(i + 1) {
                Some((_, Tok::Int(d))) => {
                    if d.is_zero() {
                        return Err(Error::Parse {
                            pos: toks[i + 1].0,
                            msg: "zero denominator".into(),
                        });
                    }
                    den = d.clone();
                    i += 2;
                }
                other => {
                    return Err(Error::Parse {
                        pos: other.map_or(end_pos, |t| t.0),
                        msg: "expected denominator after '/'".into(),
                    })
                }
            }
        }
        coeff = Rat::new(num, den);
        saw_coeff = true;
        // a coefficient is followed by '*' and factors, or ends the term
        match toks.get(i) {
            Some((_, Tok::Star)) => i += 1,
            _ => return Ok((RawTerm { coeff, factors: vec![] }, i)),
        }
    }

    let mut factors = Vec::new();
    loop {
        match toks.get(i) {
            Some((_, Tok::Var(v))) => {
                let mut exp = 1u32;
                i += 1;
                if let Some((_, Tok::Caret)) = toks.get(i) {
                    match toks.get(i + 1) {
                        Some((pos, Tok::Int(e))) => {
                            exp = u32::try_from(e.clone()).map_err(|_| Error::Parse {
                                pos: *pos,
                                msg: "exponent out of range".into(),
                            })?;
                            i += 2;
                        }
                        other => {
                            return Err(Error::Parse {
                                pos: other.map_or(end_pos, |t| t.0),
                                msg: "expected exponent after '^'".into(),
                            })
                        }
                    }
                }
                factors.push((*v, exp));
            }
            Some((pos, _)) => {
                return Err(Error::Parse {
                    pos: *pos,
                    msg: "expected a variable factor".into(),
                })
            }
            None => {
                return Err(Error::Parse {
                    pos: end_pos,
                    msg: if saw_coeff {
                        "expected a variable factor after '*'".into()
                    } else {
                        "expected a term".into()
                    },
                })
            }
        }
        match toks.get(i) {
            Some((_, Tok::Star)) => i += 1,
            _ => break,
        }
    }
    Ok((RawTerm { coeff, factors }, i))
}

/// Parses a polynomial with an explicit ambient dimension. Errors if a
/// variable index exceeds `dim`.
pub fn parse_poly(text: &str, dim: usize) -> Result<SparsePoly> {
    let (raw, max_var) = parse_raw(text)?;
    if max_var > dim {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("variable x{max_var} exceeds dimension {dim}"),
        });
    }
    let terms = raw.into_iter().map(|t| {
        let mut exp = vec![0u32; dim];
        for (v, e) in t.factors {
            exp[v - 1] += e;
        }
        (ExponentVec::new(exp), t.coeff)
    });
    SparsePoly::from_terms(dim, terms)
}

/// Largest variable index mentioned across the inputs; at least 1 so a pair
/// of constants still lives in a one-variable semiring.
pub fn infer_dim(texts: &[&str]) -> Result<usize> {
    let mut d = 1usize;
    for t in texts {
        let (_, m) = parse_raw(t)?;
        d = d.max(m);
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_frac};

    #[test]
    fn parses_spec_examples() {
        let p = parse_poly("1 + x1", 1).unwrap();
        assert_eq!(p.coeff(&ExponentVec::new(vec![0])), rat(1));
        assert_eq!(p.coeff(&ExponentVec::new(vec![1])), rat(1));

        let p = parse_poly("3/2*x1^2*x2", 2).unwrap();
        assert_eq!(p.coeff(&ExponentVec::new(vec![2, 1])), rat_frac(3, 2));
        assert_eq!(p.num_terms(), 1);
    }

    #[test]
    fn rejects_negative() {
        let e = parse_poly("x1 - 1", 1).unwrap_err();
        match e {
            Error::Parse { pos, msg } => {
                assert_eq!(pos, 3);
                assert!(msg.contains("negative"));
            }
            other => panic!("unexpected error {other:?}"),
        }
        assert!(parse_poly("-2*x1", 1).is_err());
    }

    #[test]
    fn rejects_syntax_errors_with_position() {
        assert!(matches!(
            parse_poly("1 +", 1),
            Err(Error::Parse { pos: 3, .. })
        ));
        assert!(parse_poly("x", 1).is_err());
        assert!(parse_poly("x0", 1).is_err());
        assert!(parse_poly("2*3", 1).is_err());
        assert!(parse_poly("", 1).is_err());
        assert!(parse_poly("x1^", 1).is_err());
        assert!(parse_poly("1/0", 1).is_err());
    }

    #[test]
    fn repeated_factors_accumulate() {
        let p = parse_poly("x1*x1^2", 1).unwrap();
        assert_eq!(p.coeff(&ExponentVec::new(vec![3])), rat(1));
    }

    #[test]
    fn merges_duplicate_terms_and_prunes_zero() {
        let p = parse_poly("x1 + x1 + 0*x2", 2).unwrap();
        assert_eq!(p.coeff(&ExponentVec::new(vec![1, 0])), rat(2));
        assert_eq!(p.num_terms(), 1);
        assert!(parse_poly("0", 1).unwrap().is_zero());
    }

    #[test]
    fn infers_dimension_across_inputs() {
        assert_eq!(infer_dim(&["1 + x1", "x3"]).unwrap(), 3);
        assert_eq!(infer_dim(&["2", "3"]).unwrap(), 1);
    }

    #[test]
    fn display_parse_round_trip() {
        let p = parse_poly("3/2*x1^2*x2 + x2 + 1", 2).unwrap();
        let again = parse_poly(&p.to_string(), 2).unwrap();
        assert_eq!(p, again);
    }
}
