//! Exact rational functions in `q` with integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{format_terms, Poly};

/// `num / den` in lowest terms with the leading coefficient of `den` positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: Poly,
    den: Poly,
}

impl QRat {
    pub fn zero() -> Self {
        QRat {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        QRat::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        QRat {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        QRat {
            num: p,
            den: Poly::one(),
        }
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        QRat::monomial(BigInt::one(), k)
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: i64) -> Self {
        if c.is_zero() {
            return QRat::zero();
        }
        if k >= 0 {
            QRat {
                num: Poly::monomial(c, k as usize),
                den: Poly::one(),
            }
        } else {
            QRat {
                num: Poly::from_coeffs(vec![c]),
                den: Poly::monomial(1, (-k) as usize),
            }
        }
    }

    /// A Laurent polynomial `sum c_i q^(low + i)`.
    pub fn laurent(coeffs: &[BigInt], low: i64) -> Self {
        let p = Poly::from_coeffs(coeffs.to_vec());
        if low >= 0 {
            QRat::from_poly(p.shift(low as usize))
        } else {
            QRat::new_unchecked(p, Poly::monomial(1, (-low) as usize))
        }
    }

    /// Build and canonicalise `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero { op: "qrat_arith" });
        }
        Ok(QRat::new_unchecked(num, den))
    }

    fn new_unchecked(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return QRat::zero();
        }
        if den.is_one() {
            return QRat { num, den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        if den.lead().is_negative() {
            num = -num;
            den = -den;
        }
        QRat { num, den }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        QRat::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &QRat) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero { op: "qrat_arith" });
        }
        Ok(QRat::new_unchecked(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut out = QRat::one();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Substitute `q -> 1/q`.
    pub fn invert_q(&self) -> Self {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let rev = |p: &Poly, d: usize| {
            let mut c: Vec<BigInt> = (0..=d).map(|k| p.coeff(k)).collect();
            c.reverse();
            Poly::from_coeffs(c)
        };
        let num = rev(&self.num, dn);
        let den = rev(&self.den, dd);
        if dn >= dd {
            QRat::new_unchecked(num, den.shift(dn - dd))
        } else {
            QRat::new_unchecked(num.shift(dd - dn), den)
        }
    }

    /// `(coeffs, low)` when the value is a Laurent polynomial with integer coefficients.
    pub fn as_laurent(&self) -> Option<(Vec<BigInt>, i64)> {
        if self.is_zero() {
            return Some((Vec::new(), 0));
        }
        let (c, k) = self.den.as_monomial()?;
        if !c.is_one() {
            return None;
        }
        let v = self.num.valuation().unwrap_or(0);
        let coeffs = self.num.coeffs()[v..].to_vec();
        Some((coeffs, v as i64 - k as i64))
    }

    /// Value at `q = 1`, `None` on a pole.
    pub fn at_one(&self) -> Option<BigRational> {
        self.eval_rational(&BigRational::one())
    }

    pub fn eval_rational(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_rational(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    /// Integer value at integral `q`, when it is one.
    pub fn eval_integer(&self, q: i64) -> Option<BigInt> {
        let v = self.eval_rational(&BigRational::from_integer(BigInt::from(q)))?;
        v.is_integer().then(|| v.to_integer())
    }

    /// Coefficient lists (ascending) of numerator and denominator as `i64`.
    pub fn to_i64_parts(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        Some((self.num.to_i64s()?, self.den.to_i64s()?))
    }
}

impl Default for QRat {
    fn default() -> Self {
        QRat::zero()
    }
}

impl From<i64> for QRat {
    fn from(c: i64) -> Self {
        QRat::from_int(c)
    }
}

impl From<Poly> for QRat {
    fn from(p: Poly) -> Self {
        QRat::from_poly(p)
    }
}

impl Add for &QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QRat::new_unchecked(&self.num + &rhs.num, self.den.clone());
        }
        // Monomial denominators: bring both over the larger power.
        if let (Some((c1, k1)), Some((c2, k2))) = (self.den.as_monomial(), rhs.den.as_monomial()) {
            if c1.is_one() && c2.is_one() {
                let k = k1.max(k2);
                let num = &self.num.shift(k - k1) + &rhs.num.shift(k - k2);
                return QRat::new_unchecked(num, Poly::monomial(1, k));
            }
        }
        QRat::new_unchecked(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        self + &(-rhs)
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        if self.is_zero() || rhs.is_zero() {
            return QRat::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QRat::from_poly(&self.num * &rhs.num);
        }
        QRat::new_unchecked(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Add for QRat {
    type Output = QRat;
    fn add(self, rhs: QRat) -> QRat {
        &self + &rhs
    }
}

impl Sub for QRat {
    type Output = QRat;
    fn sub(self, rhs: QRat) -> QRat {
        &self - &rhs
    }
}

impl Mul for QRat {
    type Output = QRat;
    fn mul(self, rhs: QRat) -> QRat {
        &self * &rhs
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

/// Laurent polynomials print as `q^2 - q + 1 - q^-1`; anything else as `(num)/(den)`.
impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((coeffs, low)) = self.as_laurent() {
            let terms: Vec<(BigInt, i64)> = coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (c, low + i as i64))
                .collect();
            return f.write_str(&format_terms(&terms, "q"));
        }
        write!(f, "({})/({})", self.num.display_with("q"), self.den.display_with("q"))
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRat({self})")
    }
}

impl FromStr for QRat {
    type Err = Error;

    /// Accepts integers, `q`, `^` with integer exponents, `+ - * /` and parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            s: s.as_bytes(),
            pos: 0,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at offset {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<QRat> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<QRat> {
        let mut acc = self.factor()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = if c == b'*' { &acc * &f } else { acc.checked_div(&f)? };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<QRat> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.signed_int()?;
            let e = e.to_i64().ok_or_else(|| self.err("exponent out of range"))?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let v = self.uint()?;
        Ok(if neg { -v } else { v })
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<QRat> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(QRat::q_pow(1))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(QRat::from_poly(Poly::from_coeffs(vec![self.uint()?]))),
            _ => Err(self.err("expected integer, `q` or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QRat {
        s.parse().unwrap()
    }

    #[test]
    fn cancellation_examples() {
        let a = q("q - 1");
        let b = QRat::new(Poly::from_i64s(&[-1, 1]), Poly::from_i64s(&[0, 1])).unwrap();
        assert_eq!(a.checked_div(&b).unwrap(), q("q"));
        let s = &q("1/(1-q)") + &q("1/(1+q)");
        assert_eq!(s, q("2/(1-q^2)"));
        let c = QRat::new(Poly::from_i64s(&[-1, 0, 1]), Poly::from_i64s(&[1, 1])).unwrap();
        assert_eq!(c.num(), &Poly::from_i64s(&[-1, 1]));
        assert!(c.den().is_one());
    }

    #[test]
    fn canonical_denominator_sign() {
        let r = QRat::new(Poly::constant(1), Poly::from_i64s(&[1, -1])).unwrap();
        assert!(r.den().lead().is_positive());
        assert_eq!(r, q("-1/(q-1)"));
    }

    #[test]
    fn division_by_zero_rejected() {
        assert!(q("q").checked_div(&QRat::zero()).is_err());
        assert!(QRat::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn display_roundtrip() {
        for s in [
            "q^2 - q + 1 - q^-1",
            "-q^-3",
            "0",
            "7",
            "(q + 1)/(q^2 - q + 1)",
            "(1)/(2)",
        ] {
            let v = q(s);
            assert_eq!(v.to_string(), s);
            assert_eq!(q(&v.to_string()), v);
        }
    }

    #[test]
    fn invert_q_is_involution() {
        let v = q("(q^3 + 2)/(q - 5)");
        assert_eq!(v.invert_q().invert_q(), v);
        assert_eq!(q("q^2 + q^-1").invert_q(), q("q^-2 + q"));
    }

    #[test]
    fn laurent_view() {
        let (c, low) = q("q - q^-2").as_laurent().unwrap();
        assert_eq!(low, -2);
        assert_eq!(c, vec![BigInt::from(-1), 0.into(), 0.into(), 1.into()]);
        assert!(q("1/(1-q)").as_laurent().is_none());
    }
}
