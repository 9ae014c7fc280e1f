//! Maslov-type index and nullity of iterated symplectic paths.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{ceil_mult, floor_mult, to_i64, ExactInt, ExactScalar, RotationAngle, SurdSum};
use crate::normal_forms::SymplecticClass;

/// Initial index `i(gamma, 1)` and the normal-form class of the end matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct PathClass<I: ExactInt = BigInt> {
    pub initial_index: i64,
    pub monodromy: SymplecticClass<I>,
}

impl<I: ExactInt> PathClass<I> {
    pub fn new(initial_index: i64, monodromy: SymplecticClass<I>) -> Self {
        PathClass {
            initial_index,
            monodromy,
        }
    }

    /// `i1 + S+(1) - C(M)`, the slope of the iteration formula.
    pub fn slope(&self) -> i64 {
        self.initial_index + self.monodromy.s_plus_one() as i64
            - self.monodromy.crossing_sum() as i64
    }

    /// `S+(1) + C(M)`, which also bounds `|i(gamma, m) - m * mean|`.
    pub fn offset(&self) -> i64 {
        (self.monodromy.s_plus_one() + self.monodromy.crossing_sum()) as i64
    }

    pub fn index(&self, m: u64) -> i64 {
        index_iterate(self, m)
    }

    pub fn nullity(&self, m: u64) -> usize {
        self.monodromy.nullity(m)
    }

    pub fn mean_index(&self) -> SurdSum<I> {
        mean_index(self)
    }
}

fn iterate_i64(m: u64) -> i64 {
    i64::try_from(m).expect("iterate fits i64")
}

/// `i(gamma, m)` by the precise iteration formula.
pub fn index_iterate<I: ExactInt>(p: &PathClass<I>, m: u64) -> i64 {
    assert!(m >= 1, "iterates start at 1");
    let mi = iterate_i64(m);
    let mut acc = mi * p.slope() - p.offset();
    for e in p.monodromy.angle_entries() {
        // E(m theta / 2 pi) with alpha = theta / pi.
        let half = e
            .alpha
            .mul_ratio(&num_rational::Ratio::new(I::one(), crate::exact::int(2)));
        let ceil = to_i64(&ceil_mult(&half, mi)).expect("index fits i64");
        acc += 2 * ceil * e.weight as i64;
    }
    acc
}

/// `nu(gamma, m)`.
pub fn nullity_iterate<I: ExactInt>(p: &PathClass<I>, m: u64) -> usize {
    p.monodromy.nullity(m)
}

/// The shortcut for bumpy classes: `m (i_c - r) + 2 sum_j [m theta_j / 2 pi] + r`.
pub fn index_iterate_bumpy<I: ExactInt>(
    i_c: i64,
    r: usize,
    angles: &[RotationAngle<I>],
    m: u64,
) -> Result<i64> {
    if angles.len() != r {
        return Err(Error::InvalidBlock(format!(
            "expected {r} rotation angles, got {}",
            angles.len()
        )));
    }
    if let Some(t) = angles.iter().find(|t| t.is_rational()) {
        return Err(Error::RationalAngle(t.to_string()));
    }
    let mi = iterate_i64(m);
    let r = r as i64;
    let mut acc = mi * (i_c - r) + r;
    for t in angles {
        acc += 2 * to_i64(&floor_mult(&t.turns(), mi))?;
    }
    Ok(acc)
}

/// `(i_c, r, angles)` for the bumpy shortcut, when the class is bumpy.
pub fn bumpy_parameters<I: ExactInt>(
    p: &PathClass<I>,
) -> Option<(i64, usize, Vec<RotationAngle<I>>)> {
    if !p.monodromy.validate_bumpy() {
        return None;
    }
    let angles = p.monodromy.rotation_angles();
    Some((p.initial_index, angles.len(), angles))
}

/// `i1 + S+(1) - C(M) + sum theta/pi * S-(e^{i theta})`, as a formal surd sum.
pub fn mean_index<I: ExactInt>(p: &PathClass<I>) -> SurdSum<I> {
    let mut acc = SurdSum::from_int(p.slope());
    for e in p.monodromy.angle_entries() {
        acc = acc.add(&SurdSum::from(e.alpha.mul_int(e.weight as i64)));
    }
    acc
}

/// The mean index as a single scalar; fails when two radicands meet.
pub fn mean_index_scalar<I: ExactInt>(p: &PathClass<I>) -> Result<ExactScalar<I>> {
    let mut acc = ExactScalar::integer(p.slope());
    for e in p.monodromy.angle_entries() {
        acc = acc.checked_add(&e.alpha.mul_int(e.weight as i64))?;
    }
    Ok(acc)
}

/// Index evaluation for hot loops: `f64` with an exact fallback near integers.
#[derive(Debug, Clone)]
pub struct FastIndex<I: ExactInt = BigInt> {
    slope: i64,
    offset: i64,
    entries: Vec<(f64, ExactScalar<I>, i64)>,
}

// Rounding error of `h * m` is about `|x| * 2^-52`; stay far above it.
const GUARD: f64 = 1e-12;

impl<I: ExactInt> FastIndex<I> {
    pub fn new(p: &PathClass<I>) -> Self {
        let half = num_rational::Ratio::new(I::one(), crate::exact::int(2));
        FastIndex {
            slope: p.slope(),
            offset: p.offset(),
            entries: p
                .monodromy
                .angle_entries()
                .into_iter()
                .map(|e| {
                    let h = e.alpha.mul_ratio(&half);
                    (h.to_f64(), h, e.weight as i64)
                })
                .collect(),
        }
    }

    pub fn index(&self, m: u64) -> i64 {
        let mi = iterate_i64(m);
        let mut acc = mi * self.slope - self.offset;
        for (h, exact, w) in &self.entries {
            let x = *h * m as f64;
            let r = x.round();
            let ceil = if (x - r).abs() < GUARD * x.abs().max(1e3) || x.abs() > 1e12 {
                to_i64(&ceil_mult(exact, mi)).expect("index fits i64")
            } else {
                x.ceil() as i64
            };
            acc += 2 * ceil * w;
        }
        acc
    }
}
