//! Certified rational enclosures for sums of square roots.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub const START_BITS: u32 = 256;
pub const DEFAULT_MAX_BITS: u32 = 4096;

/// Cap on escalation, read once from `CIJT_MAX_PRECISION_BITS`.
pub fn max_precision_bits() -> u32 {
    static CAP: OnceLock<u32> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("CIJT_MAX_PRECISION_BITS")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&b: &u32| b >= 8)
            .unwrap_or(DEFAULT_MAX_BITS)
    })
}

/// `[floor(sqrt(s) 2^k), floor(sqrt(s) 2^k) + 1] / 2^k`, which contains `sqrt(s)`.
pub fn sqrt_bounds(s: &BigInt, bits: u32) -> (Ratio<BigInt>, Ratio<BigInt>) {
    let scaled: BigInt = s << (2 * bits as usize);
    let f = scaled.sqrt();
    let den = BigInt::one() << bits as usize;
    let lo = Ratio::new(f.clone(), den.clone());
    let hi = Ratio::new(f + 1, den);
    (lo, hi)
}

/// Closed enclosure `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub lo: Ratio<BigInt>,
    pub hi: Ratio<BigInt>,
}

impl Bounds {
    /// Sign, if the enclosure excludes zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Floor, if both ends agree on it.
    pub fn floor(&self) -> Option<BigInt> {
        let a = self.lo.floor().to_integer();
        let b = self.hi.floor().to_integer();
        (a == b).then_some(a)
    }

    pub fn width(&self) -> Ratio<BigInt> {
        self.hi.clone() - self.lo.clone()
    }
}

/// Doubles precision from [`START_BITS`] until `decide` answers or the cap is hit.
pub fn refine<T>(mut decide: impl FnMut(u32) -> Option<T>) -> Result<T> {
    refine_with_cap(max_precision_bits(), &mut decide)
}

pub fn refine_with_cap<T>(cap: u32, decide: &mut impl FnMut(u32) -> Option<T>) -> Result<T> {
    let mut bits = START_BITS.min(cap);
    loop {
        if let Some(v) = decide(bits) {
            return Ok(v);
        }
        if bits >= cap {
            return Err(Error::PrecisionExhausted(bits));
        }
        bits = (bits * 2).min(cap);
    }
}
