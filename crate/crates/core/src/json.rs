//! JSON forms of series, output envelopes and curve data.
//!
//! A series is `{"truncation": N | null, "terms": [{"exp": {"a", "finite", "j"},
//! "num": [..], "den": [..]}]}` with terms sorted by `delta`-degree and then the
//! finite part; `num`/`den` are coefficient lists in `q`, constant term first,
//! written as exact JSON integers of any size.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Number, Value};

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::poly::Poly;
use crate::qrat::QRat;
use crate::series::GradedSeries;
use crate::zeta::CurveZeta;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpJson {
    pub a: i64,
    pub finite: Vec<i64>,
    pub j: i64,
}

impl From<&LatticeVector> for ExpJson {
    fn from(v: &LatticeVector) -> Self {
        ExpJson {
            a: v.central,
            finite: v.finite.clone(),
            j: v.delta,
        }
    }
}

impl From<ExpJson> for LatticeVector {
    fn from(e: ExpJson) -> Self {
        LatticeVector::new(e.a, e.finite, e.j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigInts(pub Vec<BigInt>);

impl Serialize for BigInts {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nums: Vec<Number> = self
            .0
            .iter()
            .map(|c| Number::from_str(&c.to_string()).expect("integer literal"))
            .collect();
        nums.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BigInts {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let nums = Vec::<Number>::deserialize(d)?;
        nums.iter()
            .map(|n| {
                BigInt::from_str(&n.to_string())
                    .map_err(|_| serde::de::Error::custom(format!("coefficient {n} is not an integer")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(BigInts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub exp: ExpJson,
    pub num: BigInts,
    pub den: BigInts,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub truncation: Option<i64>,
    pub terms: Vec<TermJson>,
}

impl From<&GradedSeries<QRat>> for SeriesJson {
    fn from(s: &GradedSeries<QRat>) -> Self {
        SeriesJson {
            truncation: s.truncation(),
            terms: s
                .terms()
                .map(|(e, c)| TermJson {
                    exp: e.into(),
                    num: BigInts(c.num().coeffs().to_vec()),
                    den: BigInts(c.den().coeffs().to_vec()),
                })
                .collect(),
        }
    }
}

impl SeriesJson {
    /// Rebuild the series; `rank` is needed only when there are no terms.
    pub fn to_series(&self, rank: Option<usize>) -> Result<GradedSeries<QRat>> {
        let r = match (self.terms.first(), rank) {
            (Some(t), _) => t.exp.finite.len(),
            (None, Some(r)) => r,
            (None, None) => 0,
        };
        let mut out = GradedSeries::zero(r, self.truncation);
        for t in &self.terms {
            if t.exp.finite.len() != r {
                return Err(Error::Parse(format!(
                    "term exponent has rank {}, expected {r}",
                    t.exp.finite.len()
                )));
            }
            let c = QRat::new(Poly::from_coeffs(t.num.0.clone()), Poly::from_coeffs(t.den.0.clone()))
                .map_err(|e| Error::Parse(format!("coefficient: {e}")))?;
            out.add_term(t.exp.clone().into(), c);
        }
        Ok(out)
    }
}

/// Which formula produced an enveloped series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Formula {
    #[serde(rename = "mac")]
    Mac,
    #[serde(rename = "mac-aff")]
    MacAff,
    #[serde(rename = "gk")]
    Gk,
    #[serde(rename = "delta")]
    Delta,
}

/// A series together with the parameters that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Envelope {
    pub formula: Formula,
    pub lambda: Option<LatticeVector>,
    /// Length budget of the Weyl sum, when one was used.
    pub shells: Option<usize>,
    pub truncation: Option<i64>,
    pub terms: Vec<TermJson>,
}

impl Envelope {
    pub fn new(
        formula: Formula,
        lambda: Option<&LatticeVector>,
        shells: Option<usize>,
        s: &GradedSeries<QRat>,
    ) -> Self {
        let j = SeriesJson::from(s);
        Envelope {
            formula,
            lambda: lambda.cloned(),
            shells,
            truncation: j.truncation,
            terms: j.terms,
        }
    }

    pub fn series(&self) -> SeriesJson {
        SeriesJson {
            truncation: self.truncation,
            terms: self.terms.clone(),
        }
    }
}

pub fn series_to_json(s: &GradedSeries<QRat>) -> Value {
    serde_json::to_value(SeriesJson::from(s)).expect("series serializes")
}

pub fn series_from_json(text: &str) -> Result<GradedSeries<QRat>> {
    let j: SeriesJson = serde_json::from_str(text).map_err(|e| Error::Parse(format!("series JSON: {e}")))?;
    j.to_series(None)
}

pub fn curve_from_json(text: &str) -> Result<CurveZeta> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Raw {
        q: u64,
        genus: u32,
        #[serde(rename = "L_poly")]
        l_poly: Vec<i64>,
    }
    let r: Raw = serde_json::from_str(text).map_err(|e| Error::Parse(format!("curve JSON: {e}")))?;
    CurveZeta::new(r.q, r.genus, r.l_poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> GradedSeries<QRat> {
        let big = BigInt::from(10).pow(30);
        GradedSeries::from_terms(
            1,
            Some(2),
            [
                (LatticeVector::new(0, vec![1], -1), QRat::q_pow(-2)),
                (LatticeVector::new(0, vec![-1], 0), "(q-1)/(q+1)".parse().unwrap()),
                (LatticeVector::new(1, vec![0], -2), QRat::monomial(big, 3)),
            ],
        )
    }

    #[test]
    fn roundtrip_and_order() {
        let s = sample();
        let text = serde_json::to_string(&series_to_json(&s)).unwrap();
        assert_eq!(series_from_json(&text).unwrap(), s);
        let v: Value = serde_json::from_str(&text).unwrap();
        let js: Vec<i64> = v["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| t["exp"]["j"].as_i64().unwrap())
            .collect();
        assert_eq!(js, vec![0, -1, -2]);
        assert!(text.contains("1000000000000000000000000000000"));
        assert!(text.contains(r#""exp":{"a":0,"finite":[-1],"j":0},"num":[-1,1],"den":[1,1]"#));
    }

    #[test]
    fn envelope_layout() {
        let s = sample();
        let e = Envelope::new(Formula::MacAff, Some(&LatticeVector::new(1, vec![0], 0)), Some(8), &s);
        let text = serde_json::to_string(&e).unwrap();
        assert!(text.starts_with(
            r#"{"formula":"mac-aff","lambda":{"central":1,"finite":[0],"delta":0},"shells":8,"truncation":2"#
        ));
        let back: Envelope = serde_json::from_str(&text).unwrap();
        assert_eq!(back.series().to_series(None).unwrap(), s);
        assert!(serde_json::from_str::<Envelope>(&text.replace("\"shells\"", "\"shell\"")).is_err());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(series_from_json(
            r#"{"truncation":null,"terms":[{"exp":{"a":0,"finite":[0],"j":0},"num":[1],"den":[0]}]}"#
        )
        .is_err());
        assert!(series_from_json(r#"{"truncation":null,"terms":[],"extra":1}"#).is_err());
        assert!(series_from_json(
            r#"{"truncation":null,"terms":[{"exp":{"a":0,"finite":[0],"j":0},"num":[1.5],"den":[1]}]}"#
        )
        .is_err());
        assert!(curve_from_json(r#"{"q":4,"genus":0,"L_poly":[1]}"#).is_ok());
        assert!(curve_from_json(r#"{"q":4,"genus":1,"L_poly":[1]}"#).is_err());
    }
}
