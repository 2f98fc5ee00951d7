//! Serde helpers: rationals travel as exact `"numer/denom"` strings so the
//! JSON reports stay human-readable and round-trip losslessly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

pub fn rat_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_string(s: &str) -> Result<BigRational, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = num.parse().map_err(|_| format!("bad rational '{s}'"))?;
    let d: BigInt = den.parse().map_err(|_| format!("bad rational '{s}'"))?;
    if d == BigInt::from(0) {
        return Err(format!("zero denominator in '{s}'"));
    }
    Ok(BigRational::new(n, d))
}

pub mod rat_str {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        rat_from_string(&text).map_err(D::Error::custom)
    }
}

pub mod opt_rat_str {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(v) => s.serialize_some(&rat_to_string(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Option<BigRational>, D::Error> {
        let text = Option::<String>::deserialize(d)?;
        text.map(|t| rat_from_string(&t).map_err(D::Error::custom)).transpose()
    }
}

pub mod rat_vec_str {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(rat_to_string).collect();
        serde::Serialize::serialize(&strings, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings.iter().map(|t| rat_from_string(t).map_err(D::Error::custom)).collect()
    }
}

pub mod opt_rat_vec_str {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        v: &Option<Vec<BigRational>>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        match v {
            Some(vals) => {
                let strings: Vec<String> = vals.iter().map(rat_to_string).collect();
                s.serialize_some(&strings)
            }
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Option<Vec<BigRational>>, D::Error> {
        let strings = Option::<Vec<String>>::deserialize(d)?;
        strings
            .map(|v| v.iter().map(|t| rat_from_string(t).map_err(D::Error::custom)).collect())
            .transpose()
    }
}
