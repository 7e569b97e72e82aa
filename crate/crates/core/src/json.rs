//! JSON encoding of elements with exact rational coordinates.
//!
//! ```json
//! {"d": 2, "terms": [{"coeff": {"a": "1", "b": "0", "c": "0", "d": "-1/2"},
//!                     "creators": [1], "annihilators": [2]}]}
//! ```
//!
//! `coeff` is `(a + b√2) + (c + d√2)i`; both words are listed in creator
//! order, so the term above is `ψ_1 ψ_2*`.

use std::str::FromStr;

use num::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::scalar::Scalar;

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    a: String,
    b: String,
    c: String,
    d: String,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: ScalarRepr,
    creators: Vec<u8>,
    annihilators: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    d: usize,
    terms: Vec<TermRepr>,
}

impl From<&Scalar> for ScalarRepr {
    fn from(s: &Scalar) -> Self {
        let [a, b, c, d] = s.components().map(|r| r.to_string());
        Self { a, b, c, d }
    }
}

fn parse_rational(text: &str) -> Result<BigRational> {
    BigRational::from_str(text.trim())
        .map_err(|e| Error::Serialization(format!("bad rational {:?}: {}", text, e)))
}

impl TryFrom<ScalarRepr> for Scalar {
    type Error = Error;
    fn try_from(r: ScalarRepr) -> Result<Self> {
        Ok(Scalar::from_components(
            parse_rational(&r.a)?,
            parse_rational(&r.b)?,
            parse_rational(&r.c)?,
            parse_rational(&r.d)?,
        ))
    }
}

impl From<&Element> for ElementRepr {
    fn from(x: &Element) -> Self {
        Self {
            d: x.d(),
            terms: x
                .terms()
                .map(|(m, c)| TermRepr {
                    coeff: c.into(),
                    creators: m.creators().to_vec(),
                    annihilators: m.annihilators().to_vec(),
                })
                .collect(),
        }
    }
}

impl TryFrom<ElementRepr> for Element {
    type Error = Error;
    fn try_from(r: ElementRepr) -> Result<Self> {
        let terms = r
            .terms
            .into_iter()
            .map(|t| Ok((Monomial::new(t.creators, t.annihilators), Scalar::try_from(t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Element::from_terms(r.d, terms)
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(deserializer)?;
        Element::try_from(repr).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarRepr::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(deserializer)?;
        Scalar::try_from(repr).map_err(serde::de::Error::custom)
    }
}

pub fn element_to_json(x: &Element) -> String {
    serde_json::to_string(x).expect("element serialization is infallible")
}

pub fn element_from_json(text: &str) -> Result<Element> {
    serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))
}
