//! Text form `(c) * X[a,l1,...,lr,j] * T[i1,...,ik] + ...`, with `0` for the zero element.

use std::fmt;

use super::element::HeckeElement;
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::qrat::QRat;
use crate::rootdata::{RootDatum, WeylElement};

fn join(v: impl Iterator<Item = String>) -> String {
    v.collect::<Vec<_>>().join(",")
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(l, w, c)| {
                let mut coords = vec![l.central];
                coords.extend_from_slice(&l.finite);
                coords.push(l.delta);
                format!(
                    "({c}) * X[{}] * T[{}]",
                    join(coords.iter().map(|x| x.to_string())),
                    join(w.word.iter().map(|x| x.to_string()))
                )
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("hecke element: expected {what} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.s[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(&format!("`{tok}`")))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.s.len()
    }

    /// Contents of a balanced `( ... )`.
    fn parenthesized(&mut self) -> Result<&'a str> {
        self.expect("(")?;
        let start = self.pos;
        let mut depth = 1;
        for (k, ch) in self.s[start..].char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        self.pos = start + k + 1;
                        return Ok(&self.s[start..start + k]);
                    }
                }
                _ => {}
            }
        }
        Err(self.err("`)`"))
    }

    fn int_list(&mut self) -> Result<Vec<i64>> {
        self.expect("[")?;
        let end = self.s[self.pos..]
            .find(']')
            .map(|k| self.pos + k)
            .ok_or_else(|| self.err("`]`"))?;
        let body = self.s[self.pos..end].trim();
        let out = if body.is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| self.err("a comma-separated integer list"))?
        };
        self.pos = end + 1;
        Ok(out)
    }
}

/// Parse the printed form of an element of the finite or affine algebra.
pub fn parse_hecke(datum: &RootDatum, affine: bool, text: &str) -> Result<HeckeElement> {
    let mut out = HeckeElement::zero(datum, affine);
    let mut cur = Cursor { s: text, pos: 0 };
    if cur.eat("0") && cur.at_end() {
        return Ok(out);
    }
    cur.pos = 0;
    loop {
        let c: QRat = cur.parenthesized()?.parse()?;
        cur.expect("*")?;
        cur.expect("X")?;
        let coords = cur.int_list()?;
        if coords.len() != datum.rank + 2 {
            return Err(Error::Parse(format!(
                "hecke element: X needs {} coordinates (level, finite part, delta), got {}",
                datum.rank + 2,
                coords.len()
            )));
        }
        let n = coords.len();
        let lambda = LatticeVector::new(coords[0], coords[1..n - 1].to_vec(), coords[n - 1]);
        cur.expect("*")?;
        cur.expect("T")?;
        let word: Vec<usize> = cur
            .int_list()?
            .into_iter()
            .map(|i| usize::try_from(i).map_err(|_| Error::Parse(format!("negative node {i}"))))
            .collect::<Result<_>>()?;
        let w = WeylElement::from_word(datum, &word, affine)?;
        if w.word != word {
            return Err(Error::Parse(format!(
                "hecke element: T{word:?} is not the canonical reduced word {:?}",
                w.word
            )));
        }
        out = out.add(&HeckeElement::monomial(datum, lambda, w, c)?)?;
        if cur.at_end() {
            return Ok(out);
        }
        cur.expect("+")?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::hecke_mul;
    use crate::rootdata::build_root_datum;

    #[test]
    fn roundtrip() {
        let d = build_root_datum("A2").unwrap();
        let x = HeckeElement::x(&d, false, LatticeVector::finite(vec![1, -1])).unwrap();
        let t = HeckeElement::t_word(&d, &[2, 1], false).unwrap();
        let h = hecke_mul(&d, &t, &x).unwrap();
        let s = h.to_string();
        assert_eq!(parse_hecke(&d, false, &s).unwrap(), h);
        assert_eq!(parse_hecke(&d, false, "0").unwrap(), HeckeElement::zero(&d, false));
    }

    #[test]
    fn rejects_malformed() {
        let d = build_root_datum("A1").unwrap();
        assert!(parse_hecke(&d, false, "(1) * X[0,1] * T[]").is_err());
        assert!(parse_hecke(&d, false, "(1) * X[0,1,0] * T[1,1]").is_err());
        assert!(parse_hecke(&d, false, "(1) * X[0,1,0]").is_err());
    }
}
