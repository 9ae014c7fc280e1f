//! JSON shape of exact scalars.
//!
//! `{"kind":"rational","num":n,"den":d}` and
//! `{"kind":"surd","a":[p,q],"b":[p,q],"s":s}`. Integers may be JSON numbers or
//! decimal strings. A `{"kind":"decimal","value":"0.125"}` literal is read as
//! the exact rational it spells, and refused when marked `"irrational": true`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{from_bigint, ExactInt, ExactScalar, SurdSum};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Num(i64),
    Text(String),
}

impl IntRepr {
    fn from_big(v: BigInt) -> Self {
        match v.to_i64() {
            Some(x) => IntRepr::Num(x),
            None => IntRepr::Text(v.to_string()),
        }
    }

    fn to_big(&self) -> Result<BigInt, String> {
        match self {
            IntRepr::Num(x) => Ok(BigInt::from(*x)),
            IntRepr::Text(s) => {
                BigInt::from_str(s.trim()).map_err(|e| format!("bad integer {s:?}: {e}"))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum Raw {
    Rational {
        num: IntRepr,
        den: IntRepr,
    },
    Surd {
        a: (IntRepr, IntRepr),
        b: (IntRepr, IntRepr),
        s: IntRepr,
    },
    Decimal {
        value: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        precision: Option<u32>,
        #[serde(default)]
        irrational: bool,
    },
}

fn ratio_pair<I: ExactInt>(r: &Ratio<I>) -> (IntRepr, IntRepr) {
    (
        IntRepr::from_big(r.numer().clone().into()),
        IntRepr::from_big(r.denom().clone().into()),
    )
}

fn parse_ratio<I: ExactInt>(p: &(IntRepr, IntRepr)) -> Result<Ratio<I>, String> {
    let n = p.0.to_big()?;
    let d = p.1.to_big()?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    let r = Ratio::new(n, d);
    Ok(Ratio::new(
        from_bigint(r.numer().clone()).map_err(|e| e.to_string())?,
        from_bigint(r.denom().clone()).map_err(|e| e.to_string())?,
    ))
}

/// Exact value of a plain decimal literal such as `-12.0625` or `3e-2`.
pub(crate) fn parse_decimal(text: &str) -> Result<Ratio<BigInt>, String> {
    let t = text.trim();
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (
            &t[..i],
            t[i + 1..].parse::<i32>().map_err(|e| e.to_string())?,
        ),
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
    {
        return Err(format!("not a decimal literal: {text:?}"));
    }
    let digits: BigInt = format!("{int_part}{frac_part}0")
        .parse()
        .map_err(|_| "bad digits")?;
    let digits = digits / 10;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        Ratio::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Ratio::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

impl<I: ExactInt> TryFrom<Raw> for ExactScalar<I> {
    type Error = String;

    fn try_from(raw: Raw) -> Result<Self, String> {
        match raw {
            Raw::Rational { num, den } => Ok(ExactScalar::Rational(parse_ratio(&(num, den))?)),
            Raw::Surd { a, b, s } => {
                let s = from_bigint(s.to_big()?).map_err(|e| e.to_string())?;
                ExactScalar::surd(parse_ratio(&a)?, parse_ratio(&b)?, s).map_err(|e| e.to_string())
            }
            Raw::Decimal {
                value, irrational, ..
            } => {
                if irrational {
                    return Err(format!(
                        "decimal literal {value:?} cannot stand for an irrational value; give it as a surd"
                    ));
                }
                let r = parse_decimal(&value)?;
                Ok(ExactScalar::Rational(Ratio::new(
                    from_bigint(r.numer().clone()).map_err(|e| e.to_string())?,
                    from_bigint(r.denom().clone()).map_err(|e| e.to_string())?,
                )))
            }
        }
    }
}

impl<I: ExactInt> Serialize for ExactScalar<I> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let raw = match self {
            ExactScalar::Rational(r) => {
                let (num, den) = ratio_pair(r);
                Raw::Rational { num, den }
            }
            ExactScalar::Surd(q) => Raw::Surd {
                a: ratio_pair(&q.a),
                b: ratio_pair(&q.b),
                s: IntRepr::from_big(q.s.clone().into()),
            },
        };
        raw.serialize(ser)
    }
}

impl<'de, I: ExactInt> Deserialize<'de> for ExactScalar<I> {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = Raw::deserialize(de)?;
        ExactScalar::try_from(raw).map_err(D::Error::custom)
    }
}

#[derive(Serialize)]
struct SumTerm {
    s: IntRepr,
    c: (IntRepr, IntRepr),
}

#[derive(Serialize)]
struct SumRepr {
    rational: (IntRepr, IntRepr),
    terms: Vec<SumTerm>,
    approx: f64,
}

impl<I: ExactInt> Serialize for SurdSum<I> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        SumRepr {
            rational: ratio_pair(self.rational_part()),
            terms: self
                .terms()
                .map(|(s, c)| SumTerm {
                    s: IntRepr::from_big(s.clone().into()),
                    c: ratio_pair(c),
                })
                .collect(),
            approx: self.to_f64(),
        }
        .serialize(ser)
    }
}
