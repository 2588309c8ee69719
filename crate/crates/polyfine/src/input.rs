//! Line-oriented input format for polytopes.
//!
//! `V <d> <n>` heads a list of `n` vertex rows with `d` tokens each;
//! `H <d> <m>` heads `m` rows of `d+1` tokens `nu_1 .. nu_d delta`,
//! each meaning `<x, nu> >= delta`. Tokens are integers or `p/q`
//! fractions; `#` starts a comment line.

use crate::num::*;
use crate::polytope::{HrepError, Polytope};
use num_traits::Zero;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq)]
pub enum Body {
    Vertices(Vec<RatVec>),
    HalfSpaces(Vec<(LatVec, Rat)>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct InputDocument {
    pub dim: usize,
    pub body: Body,
}

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("line {0}: expected header 'V <d> <n>' or 'H <d> <m>'")]
    BadHeader(usize),
    #[error("line {line}: expected {expected} tokens, found {found}")]
    BadArity {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {0}: '{1}' is not an integer or p/q fraction")]
    BadToken(usize, String),
    #[error("line {0}: unexpected trailing content")]
    TrailingContent(usize),
    #[error("missing {0} data row(s) at end of input")]
    MissingRows(usize),
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("half-space system has no solution")]
    EmptyPolytope,
    #[error("half-space system is unbounded")]
    Unbounded,
    #[error("polytope is not full-dimensional (dim {0}, ambient {1})")]
    NotFullDim(usize, usize),
}

fn parse_rat(tok: &str, line: usize) -> Result<Rat, ParseError> {
    let bad = || ParseError::BadToken(line, tok.to_string());
    if let Some((p, q)) = tok.split_once('/') {
        let p: Int = p.parse().map_err(|_| bad())?;
        let q: Int = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(Rat::new(p, q))
    } else {
        let p: Int = tok.parse().map_err(|_| bad())?;
        Ok(Rat::from(p))
    }
}

pub fn parse_input(text: &str) -> Result<InputDocument, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(ParseError::BadHeader(1))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 {
        return Err(ParseError::BadHeader(hline));
    }
    let dim: usize = toks[1].parse().map_err(|_| ParseError::BadHeader(hline))?;
    let count: usize = toks[2].parse().map_err(|_| ParseError::BadHeader(hline))?;
    if dim == 0 || count == 0 {
        return Err(ParseError::BadHeader(hline));
    }
    let want = match toks[0] {
        "V" => dim,
        "H" => dim + 1,
        _ => return Err(ParseError::BadHeader(hline)),
    };

    let mut rows: Vec<RatVec> = Vec::with_capacity(count);
    for _ in 0..count {
        let Some((line, text)) = lines.next() else {
            return Err(ParseError::MissingRows(count - rows.len()));
        };
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() != want {
            return Err(ParseError::BadArity {
                line,
                expected: want,
                found: toks.len(),
            });
        }
        let row: Result<RatVec, ParseError> =
            toks.iter().map(|t| parse_rat(t, line)).collect();
        rows.push(row?);
    }
    if let Some((line, _)) = lines.next() {
        return Err(ParseError::TrailingContent(line));
    }

    let body = if toks[0] == "V" {
        Body::Vertices(rows)
    } else {
        // clear denominators rowwise to get an integer normal
        Body::HalfSpaces(
            rows.into_iter()
                .map(|row| {
                    let l: Int = row[..dim]
                        .iter()
                        .fold(int(1), |l, x| num_integer::lcm(l, x.denom().clone()));
                    let scale = Rat::from(l);
                    let nu: LatVec = row[..dim]
                        .iter()
                        .map(|x| (x * &scale).to_integer())
                        .collect();
                    (nu, &row[dim] * &scale)
                })
                .collect(),
        )
    };
    Ok(InputDocument { dim, body })
}

/// Builds the polytope and insists it is full-dimensional, which the
/// analysis entry points require.
pub fn to_polytope(doc: &InputDocument) -> Result<Polytope, InputError> {
    let p = match &doc.body {
        Body::Vertices(vs) => Polytope::from_vertices(vs, doc.dim),
        Body::HalfSpaces(hs) => Polytope::from_halfspaces(hs, doc.dim).map_err(|e| match e {
            HrepError::Empty => InputError::EmptyPolytope,
            HrepError::Unbounded => InputError::Unbounded,
        })?,
    };
    if !p.is_full_dim() {
        return Err(InputError::NotFullDim(p.adim, p.dim));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{point, rat, ratio};

    #[test]
    fn vertex_format() {
        let doc = parse_input("# triangle\nV 2 3\n0 0\n3 0\n0 3\n").unwrap();
        assert_eq!(doc.dim, 2);
        assert_eq!(
            doc.body,
            Body::Vertices(vec![point(&[0, 0]), point(&[3, 0]), point(&[0, 3])])
        );
        let p = to_polytope(&doc).unwrap();
        assert_eq!(p.vertices.len(), 3);
    }

    #[test]
    fn halfspace_format() {
        let doc = parse_input("H 1 2\n1 0\n-1 -1\n").unwrap();
        let p = to_polytope(&doc).unwrap();
        assert_eq!(p.vertices, vec![vec![rat(0)], vec![rat(1)]]);
    }

    #[test]
    fn rational_tokens() {
        let doc = parse_input("V 2 1\n1/2 1/3\n").unwrap();
        assert_eq!(doc.body, Body::Vertices(vec![vec![ratio(1, 2), ratio(1, 3)]]));
    }

    #[test]
    fn rational_halfspace_scaled() {
        let doc = parse_input("H 1 2\n1/2 0\n-1 -3/2\n").unwrap();
        let Body::HalfSpaces(hs) = &doc.body else { panic!() };
        assert_eq!(hs[0], (vec![int(1)], rat(0)));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse_input("X 2 1\n0 0\n"), Err(ParseError::BadHeader(1)));
        assert_eq!(
            parse_input("V 2 1\n0 0 0\n"),
            Err(ParseError::BadArity {
                line: 2,
                expected: 2,
                found: 3
            })
        );
        assert_eq!(
            parse_input("V 2 1\n0 x\n"),
            Err(ParseError::BadToken(2, "x".into()))
        );
        assert_eq!(parse_input("V 2 1\n0 0\n1 1\n"), Err(ParseError::TrailingContent(3)));
        assert_eq!(parse_input("V 2 2\n0 0\n"), Err(ParseError::MissingRows(1)));
    }

    #[test]
    fn degenerate_inputs_rejected() {
        let doc = parse_input("V 2 2\n0 0\n1 1\n").unwrap();
        assert!(matches!(to_polytope(&doc), Err(InputError::NotFullDim(1, 2))));
        let doc = parse_input("H 1 2\n1 1\n-1 0\n").unwrap();
        assert!(matches!(to_polytope(&doc), Err(InputError::EmptyPolytope)));
        let doc = parse_input("H 2 1\n1 0 0\n").unwrap();
        assert!(matches!(to_polytope(&doc), Err(InputError::Unbounded)));
    }
}
