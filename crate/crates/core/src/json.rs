//! JSON shapes for triples and points.
//!
//! Rationals travel as canonical `"num/den"` strings (`"num"` when the
//! denominator is one); integers as JSON numbers of any size.

use serde::{Deserialize, Serialize};

use crate::numeric::parse_rat;
use crate::{Angle, Error, Int, Point, Rat, Result, ThetaTriple};

/// Serde adapter writing an [`Int`] as a JSON number.
pub mod int {
    use super::Int;
    use serde::{de, ser, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(n: &Int, s: S) -> Result<S::Ok, S::Error> {
        let num: serde_json::Number = n.to_string().parse().map_err(ser::Error::custom)?;
        num.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        let num = serde_json::Number::deserialize(d)?;
        num.to_string().parse().map_err(de::Error::custom)
    }
}

/// Serde adapter writing a [`Rat`] as its canonical string.
pub mod rat {
    use super::Rat;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(q)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_rat(&text).map_err(de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleJson {
    #[serde(with = "rat")]
    pub a: Rat,
    #[serde(with = "rat")]
    pub b: Rat,
    #[serde(with = "rat")]
    pub c: Rat,
    #[serde(with = "int")]
    pub r: Int,
    #[serde(with = "int")]
    pub s: Int,
    #[serde(rename = "N", with = "int")]
    pub n: Int,
}

impl From<&ThetaTriple> for TripleJson {
    fn from(t: &ThetaTriple) -> Self {
        TripleJson {
            a: t.a().clone(),
            b: t.b().clone(),
            c: t.c().clone(),
            r: t.angle().r().clone(),
            s: t.angle().s().clone(),
            n: t.n().clone(),
        }
    }
}

impl TryFrom<TripleJson> for ThetaTriple {
    type Error = Error;

    fn try_from(j: TripleJson) -> Result<Self> {
        let angle = Angle::new(j.s, j.r)?;
        let t = ThetaTriple::new(&angle, j.a, j.b, j.c)?;
        if *t.n() != j.n {
            return Err(Error::InvalidTriple(format!(
                "triple witnesses N = {}, not {}",
                t.n(),
                j.n
            )));
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointJson {
    Affine {
        #[serde(with = "rat")]
        x: Rat,
        #[serde(with = "rat")]
        y: Rat,
    },
    Infinity { infinity: bool },
}

impl From<&Point> for PointJson {
    fn from(p: &Point) -> Self {
        match p {
            Point::Infinity => PointJson::Infinity { infinity: true },
            Point::Affine { x, y } => PointJson::Affine { x: x.clone(), y: y.clone() },
        }
    }
}

impl TryFrom<PointJson> for Point {
    type Error = Error;

    fn try_from(j: PointJson) -> Result<Self> {
        match j {
            PointJson::Infinity { infinity: true } => Ok(Point::Infinity),
            PointJson::Infinity { infinity: false } => {
                Err(Error::Parse("point object needs x and y, or infinity: true".into()))
            }
            PointJson::Affine { x, y } => Ok(Point::new(x, y)),
        }
    }
}

pub fn triple_to_string(t: &ThetaTriple) -> String {
    serde_json::to_string(&TripleJson::from(t)).expect("triple serializes")
}

pub fn triple_from_str(text: &str) -> Result<ThetaTriple> {
    let j: TripleJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    j.try_into()
}

pub fn point_to_string(p: &Point) -> String {
    serde_json::to_string(&PointJson::from(p)).expect("point serializes")
}

pub fn point_from_str(text: &str) -> Result<Point> {
    let j: PointJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    j.try_into()
}
