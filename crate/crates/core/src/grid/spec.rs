use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Grid, GridFamily, IIIVariant};
use crate::error::{Error, Result};
use crate::exactfield::{parse_rational, Scalar};

/// JSON description of a grid, e.g.
/// `{"family":"I","n":2,"params":{"a":"1","b":"2","c":"3","q":"2/3","t":"5/7"}}`.
///
/// `E1` and `E2` list their `values` (for `E2`, starting at index `start`);
/// `Explicit` gives a `table` of rows. Scalars use the text encoding and may
/// mention named parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub family: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<String>,
    #[serde(default)]
    pub start: i64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<Vec<String>>,
}

impl GridSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("grid spec: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    fn all_scalars(&self) -> impl Iterator<Item = &String> {
        self.params.values().chain(self.values.iter()).chain(self.table.iter().flatten())
    }

    /// Whether every scalar is a rational constant (so the grid can be built
    /// over the rationals).
    pub fn is_rational(&self) -> bool {
        self.family != "Universal" && self.all_scalars().all(|s| parse_rational(s).is_ok())
    }

    pub fn build<S: Scalar>(&self, parse: impl Fn(&str) -> Result<S>) -> Result<Grid<S>> {
        let param = |name: &str| -> Result<S> {
            let text = self
                .params
                .get(name)
                .ok_or_else(|| Error::Parse(format!("family {} needs parameter `{name}`", self.family)))?;
            parse(text)
        };
        let list = |v: &[String]| v.iter().map(|s| parse(s)).collect::<Result<Vec<S>>>();
        let family = match self.family.as_str() {
            "E1" => GridFamily::E1 { gamma: list(&self.values)? },
            "E2" => GridFamily::E2 { gamma: list(&self.values)?, start: self.start },
            "I" => GridFamily::I { a: param("a")?, b: param("b")?, c: param("c")?, q: param("q")?, t: param("t")? },
            "II" => GridFamily::II {
                alpha: param("alpha")?,
                beta: param("beta")?,
                beta_p: param("beta'")?,
                gamma: param("gamma")?,
            },
            "IIIa" | "IIIb" | "IIIc" => GridFamily::III {
                variant: match self.family.as_str() {
                    "IIIa" => IIIVariant::A,
                    "IIIb" => IIIVariant::B,
                    _ => IIIVariant::C,
                },
                alpha: param("alpha")?,
                alpha_p: param("alpha'")?,
                beta: param("beta")?,
                beta_p: param("beta'")?,
            },
            "IV" => {
                GridFamily::IV { alpha: param("alpha")?, beta: param("beta")?, beta_p: param("beta'")?, q: param("q")? }
            }
            "Universal" => GridFamily::Universal,
            "Explicit" => {
                let table = self.table.iter().map(|r| list(r)).collect::<Result<Vec<_>>>()?;
                if table.len() != self.n + 1 {
                    return Err(Error::Parse(format!("table has {} rows, expected {}", table.len(), self.n + 1)));
                }
                GridFamily::Explicit { table }
            }
            other => return Err(Error::Parse(format!("unknown grid family `{other}`"))),
        };
        Grid::new(family, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{parse_ratfunc, RatFunc, Rational};

    #[test]
    fn build_family_i() {
        let s = GridSpec::from_json(r#"{"family":"I","n":2,"params":{"a":"1","b":"2","c":"3","q":"2/3","t":"5/7"}}"#)
            .unwrap();
        assert!(s.is_rational());
        let g = s.build(parse_rational).unwrap();
        // 1 + 2*(2/3) + 3*(3/2) = 41/6
        assert_eq!(g.value(0, 1).unwrap(), Rational::new(41, 6));
    }

    #[test]
    fn symbolic_and_universal() {
        let s =
            GridSpec::from_json(r#"{"family":"II","n":1,"params":{"alpha":"a0","beta":"1","beta'":"2","gamma":"0"}}"#)
                .unwrap();
        assert!(!s.is_rational());
        let g = s.build(parse_ratfunc).unwrap();
        assert_eq!(g.value(1, 1).unwrap(), parse_ratfunc("a0+3").unwrap());
        let u = GridSpec::from_json(r#"{"family":"Universal","n":1}"#).unwrap();
        assert!(!u.is_rational());
        assert_eq!(u.build::<RatFunc>(parse_ratfunc).unwrap().value(1, 0).unwrap(), RatFunc::var("u10"));
        assert!(u.build::<Rational>(parse_rational).unwrap().value(0, 0).is_err());
    }

    #[test]
    fn malformed_specs() {
        assert!(GridSpec::from_json(r#"{"family":"I","n":1}"#).unwrap().build(parse_rational).is_err());
        assert!(GridSpec::from_json(r#"{"family":"V","n":1}"#).unwrap().build(parse_rational).is_err());
        assert!(GridSpec::from_json(r#"{"family":"I"}"#).is_err());
    }
}
