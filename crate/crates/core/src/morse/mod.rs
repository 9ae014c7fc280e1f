//! Morse-theoretic bookkeeping over finite sets of prime closed geodesics.

mod census;
mod dataset;
mod theorems;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, ExactInt, SurdSum};
use crate::index_iteration::FastIndex;
use crate::loop_homology::{betti, resonance_constant, CohomologyShape};

pub use census::{jump_census, Bucket, CensusEntry, JumpCensus};
pub use dataset::{m_bar_for_geodesics, GeodesicDataset, GeodesicRecord, DATASET_VERSION};
pub use theorems::{
    verify_theorem_1_1, verify_theorem_1_5, verify_theorem_1_8, ChainCheck, GammaIdentityCheck,
    PipelineConfig, Theorem11Report, Theorem15Report, Theorem18Report,
};

/// `dim C_q(E, c^m)`: 1 iff `q = i(c^m)` and `i(c^m) - i(c)` is even.
pub fn critical_module_dim<I: ExactInt>(record: &GeodesicRecord<I>, m: u64, q: i64) -> u8 {
    let im = record.path.index(m);
    u8::from(q == im && (im - record.path.initial_index) % 2 == 0)
}

/// `gamma_c` in `{-1, -1/2, 1/2, 1}`.
pub fn gamma_invariant<I: ExactInt>(record: &GeodesicRecord<I>) -> Ratio<I> {
    let i1 = record.path.initial_index;
    let sign = if i1 % 2 == 0 { 1 } else { -1 };
    let mag = if (record.path.index(2) - i1) % 2 == 0 {
        2
    } else {
        1
    };
    Ratio::new(int(sign * mag), int(2))
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound = "")]
pub struct ResonanceReport<I: ExactInt = BigInt> {
    pub lhs: SurdSum<I>,
    pub rhs: String,
    pub pass: bool,
}

/// `sum_k gamma_k / mean_k` against `B(d, n)`, compared exactly.
pub fn resonance_check<I: ExactInt>(dataset: &GeodesicDataset<I>) -> Result<ResonanceReport<I>> {
    let mut lhs = SurdSum::zero();
    for r in &dataset.records {
        let g = SurdSum::from_ratio(gamma_invariant(r));
        lhs = lhs.add(&g.div(&r.path.mean_index())?);
    }
    let b = resonance_constant::<I>(dataset.shape);
    let pass = lhs.add_ratio(&-b.clone()).is_zero();
    Ok(ResonanceReport {
        lhs,
        rhs: b.to_string(),
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AltSumCheck {
    pub lhs: i64,
    pub rhs: String,
    pub pass: bool,
}

/// `sum_{m <= 2 m_k} (-1)^{i(c^m)} dim C_{i(c^m)}(E, c^m)` against `2 m_k gamma`.
pub fn alternating_sum_identity<I: ExactInt>(record: &GeodesicRecord<I>, m_k: u64) -> AltSumCheck {
    let fast = FastIndex::new(&record.path);
    let i1 = record.path.initial_index;
    let lhs: i64 = (1..=2 * m_k)
        .map(|m| fast.index(m))
        .filter(|im| (im - i1) % 2 == 0)
        .map(|im| if im % 2 == 0 { 1 } else { -1 })
        .sum();
    let rhs = gamma_invariant(record) * int::<I>(2 * m_k as i64);
    AltSumCheck {
        lhs,
        rhs: rhs.to_string(),
        pass: Ratio::from_integer(int::<I>(lhs)) == rhs,
    }
}

/// Last iterate that can still have index `<= p_cap`.
pub(crate) fn iteration_horizon<I: ExactInt>(
    record: &GeodesicRecord<I>,
    half_dim: u64,
    p_cap: i64,
) -> Result<u64> {
    let mean = record.path.mean_index();
    let top = p_cap + 2 * half_dim as i64 + record.path.initial_index.abs();
    let h = SurdSum::from_int(top).div(&mean)?.floor()?;
    Ok(h.to_u64().unwrap_or(0) + 2)
}

/// Morse-type numbers against Betti numbers up to degree `P`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorseNumbers {
    pub morse: Vec<u64>,
    pub betti: Vec<u64>,
    /// `M_p >= b_p`.
    pub strong: Vec<bool>,
    /// `sum_{j <= p} (-1)^{p-j} M_j >= sum_{j <= p} (-1)^{p-j} b_j`.
    pub alternating: Vec<bool>,
}

impl MorseNumbers {
    pub fn all_hold(&self) -> bool {
        self.strong.iter().chain(&self.alternating).all(|&b| b)
    }

    /// `sum_{p <= l} (-1)^p M_p`.
    pub fn alternating_sum(&self, l: usize) -> i128 {
        signed_sum(&self.morse[..=l])
    }
}

fn signed_sum(v: &[u64]) -> i128 {
    v.iter()
        .enumerate()
        .map(|(p, &x)| if p % 2 == 0 { x as i128 } else { -(x as i128) })
        .sum()
}

/// `M_0, ..., M_P` by enumerating every iterate whose index can reach `[0, P]`.
pub fn morse_type_numbers<I: ExactInt>(
    dataset: &GeodesicDataset<I>,
    p_cap: u64,
) -> Result<MorseNumbers> {
    dataset.require_bumpy()?;
    let len = p_cap as usize + 1;
    let half = dataset.shape.poincare_half_dim();
    let parts: Vec<Result<Vec<u64>>> = dataset
        .records
        .par_iter()
        .map(|r| {
            let mut local = vec![0u64; len];
            let fast = FastIndex::new(&r.path);
            let i1 = r.path.initial_index;
            for m in 1..=iteration_horizon(r, half, p_cap as i64)? {
                let im = fast.index(m);
                if (0..=p_cap as i64).contains(&im) && (im - i1) % 2 == 0 {
                    local[im as usize] += 1;
                }
            }
            Ok(local)
        })
        .collect();
    let mut morse = vec![0u64; len];
    for part in parts {
        for (acc, x) in morse.iter_mut().zip(part?) {
            *acc += x;
        }
    }
    let betti: Vec<u64> = (0..=p_cap).map(|p| betti(dataset.shape, p)).collect();
    let strong = morse.iter().zip(&betti).map(|(m, b)| m >= b).collect();
    let mut alternating = Vec::with_capacity(len);
    let (mut am, mut ab) = (0i128, 0i128);
    for p in 0..len {
        am = morse[p] as i128 - am;
        ab = betti[p] as i128 - ab;
        alternating.push(am >= ab);
    }
    Ok(MorseNumbers {
        morse,
        betti,
        strong,
        alternating,
    })
}

/// `sum_{p <= l} (-1)^p M_p` without materializing every `M_p`.
pub(crate) fn morse_alternating_sum<I: ExactInt>(
    dataset: &GeodesicDataset<I>,
    l: i64,
) -> Result<i128> {
    let half = dataset.shape.poincare_half_dim();
    let parts: Vec<Result<i128>> = dataset
        .records
        .par_iter()
        .map(|r| {
            let fast = FastIndex::new(&r.path);
            let i1 = r.path.initial_index;
            let mut acc = 0i128;
            for m in 1..=iteration_horizon(r, half, l)? {
                let im = fast.index(m);
                if (0..=l).contains(&im) && (im - i1) % 2 == 0 {
                    acc += if im % 2 == 0 { 1 } else { -1 };
                }
            }
            Ok(acc)
        })
        .collect();
    parts.into_iter().sum()
}

/// `sum_k 2 m_k gamma_k` as an exact rational.
pub(crate) fn weighted_gamma_sum<I: ExactInt>(
    dataset: &GeodesicDataset<I>,
    ms: &[u64],
) -> Ratio<I> {
    dataset
        .records
        .iter()
        .zip(ms)
        .fold(Ratio::zero(), |acc, (r, &m)| {
            acc + gamma_invariant(r) * int::<I>(2 * m as i64)
        })
}

pub(crate) fn shape_error(what: &str, shape: CohomologyShape) -> Error {
    Error::Hypothesis(format!("{what} (d = {}, n = {})", shape.d(), shape.n()))
}
