use std::collections::HashSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cijt::m_bar_for_paths;
use crate::error::{Error, Result};
use crate::exact::ExactInt;
use crate::index_iteration::PathClass;
use crate::loop_homology::CohomologyShape;
use crate::normal_forms::{BasicNormalForm, SymplecticClass};

pub const DATASET_VERSION: u32 = 1;

/// A prime closed geodesic, described by its Morse index and linearized Poincare class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicRecord<I: ExactInt = BigInt> {
    pub name: String,
    pub path: PathClass<I>,
}

impl<I: ExactInt> GeodesicRecord<I> {
    pub fn new(name: impl Into<String>, path: PathClass<I>) -> Self {
        GeodesicRecord {
            name: name.into(),
            path,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicDataset<I: ExactInt = BigInt> {
    pub shape: CohomologyShape,
    pub records: Vec<GeodesicRecord<I>>,
    pub bumpy_required: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "", deny_unknown_fields)]
struct RawRecord<I: ExactInt> {
    name: String,
    initial_index: i64,
    blocks: Vec<BasicNormalForm<I>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    #[serde(default = "yes")]
    bumpy_required: bool,
}

fn yes() -> bool {
    true
}

impl Default for RawOptions {
    fn default() -> Self {
        RawOptions {
            bumpy_required: true,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "", deny_unknown_fields)]
struct RawDataset<I: ExactInt> {
    version: u32,
    shape: CohomologyShape,
    records: Vec<RawRecord<I>>,
    #[serde(default)]
    options: RawOptions,
}

impl<I: ExactInt> GeodesicDataset<I> {
    pub fn new(
        shape: CohomologyShape,
        records: Vec<GeodesicRecord<I>>,
        bumpy_required: bool,
    ) -> Result<Self> {
        let want = shape.poincare_half_dim() as usize;
        let mut seen = HashSet::new();
        for r in &records {
            if !seen.insert(r.name.as_str()) {
                return Err(Error::Dataset(format!(
                    "duplicate record name {:?}",
                    r.name
                )));
            }
            let got = r.path.monodromy.half_dimension();
            if got != want {
                return Err(Error::Dataset(format!(
                    "record {:?} has half-dimension {got}, shape needs dn - 1 = {want}",
                    r.name
                )));
            }
            if bumpy_required && !r.path.monodromy.validate_bumpy() {
                return Err(Error::Dataset(format!("record {:?} is not bumpy", r.name)));
            }
            let mean = r.path.mean_index();
            if !mean.is_positive()? {
                return Err(Error::Dataset(format!(
                    "record {:?} has mean index {mean} <= 0",
                    r.name
                )));
            }
        }
        Ok(GeodesicDataset {
            shape,
            records,
            bumpy_required,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawDataset<I> =
            serde_json::from_str(text).map_err(|e| Error::Dataset(e.to_string()))?;
        if raw.version != DATASET_VERSION {
            return Err(Error::Dataset(format!(
                "unsupported dataset version {}",
                raw.version
            )));
        }
        let mut records = Vec::with_capacity(raw.records.len());
        for r in raw.records {
            let class = SymplecticClass::new(r.blocks)
                .map_err(|e| Error::Dataset(format!("record {:?}: {e}", r.name)))?;
            records.push(GeodesicRecord::new(
                r.name,
                PathClass::new(r.initial_index, class),
            ));
        }
        Self::new(raw.shape, records, raw.options.bumpy_required)
    }

    pub fn to_json(&self) -> String {
        let raw = RawDataset::<I> {
            version: DATASET_VERSION,
            shape: self.shape,
            records: self
                .records
                .iter()
                .map(|r| RawRecord {
                    name: r.name.clone(),
                    initial_index: r.path.initial_index,
                    blocks: r.path.monodromy.blocks().to_vec(),
                })
                .collect(),
            options: RawOptions {
                bumpy_required: self.bumpy_required,
            },
        };
        serde_json::to_string_pretty(&raw).expect("dataset serializes")
    }

    pub fn record(&self, name: &str) -> Result<&GeodesicRecord<I>> {
        self.records
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| Error::UnknownRecord(name.into()))
    }

    pub fn paths(&self) -> Vec<PathClass<I>> {
        self.records.iter().map(|r| r.path.clone()).collect()
    }

    pub(crate) fn require_bumpy(&self) -> Result<()> {
        match self
            .records
            .iter()
            .find(|r| !r.path.monodromy.validate_bumpy())
        {
            Some(r) => Err(Error::Hypothesis(format!(
                "record {:?} is not bumpy",
                r.name
            ))),
            None => Ok(()),
        }
    }
}

/// `m_bar` with index budget `dn - 1` for every record.
pub fn m_bar_for_geodesics<I: ExactInt>(
    records: &[GeodesicRecord<I>],
    shape: CohomologyShape,
) -> Result<u64> {
    let paths: Vec<_> = records.iter().map(|r| r.path.clone()).collect();
    let budget = vec![shape.poincare_half_dim() as i64; paths.len()];
    m_bar_for_paths(&paths, &budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    const S2: &str = r#"{
      "version": 1,
      "shape": {"d": 2, "n": 1},
      "records": [
        {"name": "c1", "initial_index": 1,
         "blocks": [{"type": "R", "theta_over_pi": {"kind": "surd", "a": [3, 1], "b": [-1, 1], "s": 5}}]},
        {"name": "c2", "initial_index": 2,
         "blocks": [{"type": "R", "theta_over_pi": {"kind": "surd", "a": [-1, 2], "b": [1, 2], "s": 5}}]}
      ]
    }"#;

    #[test]
    fn parse_and_round_trip() {
        let d = GeodesicDataset::<BigInt>::from_json(S2).unwrap();
        assert_eq!(d.records.len(), 2);
        assert!(d.bumpy_required);
        let back = GeodesicDataset::<BigInt>::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
        assert_eq!(m_bar_for_geodesics(&d.records, d.shape).unwrap(), 3);
        assert!(d.record("c3").is_err());
    }

    #[test]
    fn rejects_bad_input() {
        let wrong_dim = S2.replace(r#""d": 2, "n": 1"#, r#""d": 2, "n": 2"#);
        assert!(matches!(
            GeodesicDataset::<BigInt>::from_json(&wrong_dim),
            Err(Error::Dataset(_))
        ));
        let dup = S2.replace(r#""name": "c2""#, r#""name": "c1""#);
        assert!(GeodesicDataset::<BigInt>::from_json(&dup).is_err());
        let v2 = S2.replace(r#""version": 1"#, r#""version": 2"#);
        assert!(GeodesicDataset::<BigInt>::from_json(&v2).is_err());
        let rational = S2.replace(
            r#""a": [3, 1], "b": [-1, 1], "s": 5"#,
            r#""a": [1, 2], "b": [0, 1], "s": 5"#,
        );
        assert!(GeodesicDataset::<BigInt>::from_json(&rational).is_err());
    }
}
