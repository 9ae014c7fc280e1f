use serde::Serialize;

use super::GeodesicDataset;
use crate::cijt::{check_windows, CijtTuple, SelectionProblem};
use crate::error::{Error, Result};
use crate::exact::ExactInt;

/// Which side of `2N` the `2m_k`-th iterate lands on, by parity of `i(c_k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bucket {
    PlusEven,
    PlusOdd,
    MinusEven,
    MinusOdd,
}

impl Bucket {
    /// The same parity on the other side of `2N`.
    pub fn mirrored(self) -> Bucket {
        match self {
            Bucket::PlusEven => Bucket::MinusEven,
            Bucket::PlusOdd => Bucket::MinusOdd,
            Bucket::MinusEven => Bucket::PlusEven,
            Bucket::MinusOdd => Bucket::PlusOdd,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub name: String,
    pub initial_index: i64,
    pub m_k: u64,
    pub delta: usize,
    /// `i(c_k^{2 m_k})`.
    pub index_at_2mk: i64,
    pub bucket: Option<Bucket>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JumpCensus {
    #[serde(rename = "N")]
    pub n: u64,
    pub margin: i64,
    pub plus_even: usize,
    pub plus_odd: usize,
    pub minus_even: usize,
    pub minus_odd: usize,
    pub entries: Vec<CensusEntry>,
}

impl JumpCensus {
    pub fn count(&self, b: Bucket) -> usize {
        match b {
            Bucket::PlusEven => self.plus_even,
            Bucket::PlusOdd => self.plus_odd,
            Bucket::MinusEven => self.minus_even,
            Bucket::MinusOdd => self.minus_odd,
        }
    }

    /// Every bucket of `self` equals the mirrored bucket of `other`, record by record.
    pub fn mirrors(&self, other: &JumpCensus) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.bucket.map(Bucket::mirrored) == b.bucket)
    }

    pub fn names_in(&self, b: Bucket) -> Vec<String> {
        self.entries
            .iter()
            .filter(|e| e.bucket == Some(b))
            .map(|e| e.name.clone())
            .collect()
    }
}

/// Buckets records with `i(c_k^{2m_k}) >= 2N + margin` or `<= 2N - margin`
/// and `i(c_k^{2m_k}) - i(c_k)` even. The jump windows at the same margin are
/// re-verified first, up to `10 m_k` iterates past `2 m_k`.
pub fn jump_census<I: ExactInt>(
    dataset: &GeodesicDataset<I>,
    problem: &SelectionProblem<I>,
    tuple: &CijtTuple<I>,
    margin: i64,
) -> Result<JumpCensus> {
    dataset.require_bumpy()?;
    if let Some(r) = dataset
        .records
        .iter()
        .find(|r| r.path.initial_index < margin)
    {
        return Err(Error::Hypothesis(format!(
            "record {:?} has i(c) = {} < {margin}",
            r.name, r.path.initial_index
        )));
    }
    let horizon = 10 * tuple.m.iter().copied().max().unwrap_or(1);
    check_windows(tuple, problem, margin, horizon)?;

    let two_n = 2 * tuple.n as i64;
    let mut census = JumpCensus {
        n: tuple.n,
        margin,
        plus_even: 0,
        plus_odd: 0,
        minus_even: 0,
        minus_odd: 0,
        entries: Vec::with_capacity(dataset.records.len()),
    };
    for (k, r) in dataset.records.iter().enumerate() {
        let cls = &r.path.monodromy;
        let delta = tuple.deltas[k];
        let at = r.path.index(2 * tuple.m[k]);
        let predicted =
            two_n - cls.crossing_sum() as i64 + 2 * delta as i64 - cls.s_plus_one() as i64;
        if at != predicted {
            return Err(Error::Verification {
                path: k,
                m: 2 * tuple.m[k] as i64,
                equation: "i(c^{2m_k}) = 2N - C + 2 Delta".into(),
                lhs: at.to_string(),
                rhs: predicted.to_string(),
            });
        }
        let i1 = r.path.initial_index;
        let even = i1 % 2 == 0;
        let bucket = if (at - i1) % 2 != 0 {
            None
        } else if at >= two_n + margin {
            Some(if even {
                Bucket::PlusEven
            } else {
                Bucket::PlusOdd
            })
        } else if at <= two_n - margin {
            Some(if even {
                Bucket::MinusEven
            } else {
                Bucket::MinusOdd
            })
        } else {
            None
        };
        match bucket {
            Some(Bucket::PlusEven) => census.plus_even += 1,
            Some(Bucket::PlusOdd) => census.plus_odd += 1,
            Some(Bucket::MinusEven) => census.minus_even += 1,
            Some(Bucket::MinusOdd) => census.minus_odd += 1,
            None => {}
        }
        census.entries.push(CensusEntry {
            name: r.name.clone(),
            initial_index: i1,
            m_k: tuple.m[k],
            delta,
            index_at_2mk: at,
            bucket,
        });
    }
    Ok(census)
}
