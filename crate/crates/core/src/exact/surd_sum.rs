use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use super::interval::{self, Bounds};
use super::{int, prime_factors, ratio_to_f64, ExactInt, ExactScalar, QuadSurd};
use crate::error::{Error, Result};

/// `r + sum_s c_s * sqrt(s)` over distinct squarefree radicands `s >= 2`.
///
/// Square roots of distinct squarefree integers are linearly independent
/// over the rationals, so the canonical form makes equality and the zero
/// test structural. Order and floor go through certified intervals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SurdSum<I: ExactInt = BigInt> {
    rational: Ratio<I>,
    terms: BTreeMap<I, Ratio<I>>,
}

impl<I: ExactInt> SurdSum<I> {
    pub fn zero() -> Self {
        Self::from_ratio(Ratio::zero())
    }

    pub fn from_ratio(r: Ratio<I>) -> Self {
        SurdSum {
            rational: r,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_ratio(Ratio::from_integer(int(v)))
    }

    pub fn rational_part(&self) -> &Ratio<I> {
        &self.rational
    }

    /// `(radicand, coefficient)` pairs in ascending radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (&I, &Ratio<I>)> {
        self.terms.iter()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.rational.is_zero()
    }

    /// Collapses to a single scalar when at most one radicand is present.
    pub fn to_scalar(&self) -> Option<ExactScalar<I>> {
        match self.terms.len() {
            0 => Some(ExactScalar::Rational(self.rational.clone())),
            1 => {
                let (s, b) = self.terms.iter().next().unwrap();
                Some(ExactScalar::Surd(QuadSurd {
                    a: self.rational.clone(),
                    b: b.clone(),
                    s: s.clone(),
                }))
            }
            _ => None,
        }
    }

    fn add_term(&mut self, s: I, c: Ratio<I>) {
        if c.is_zero() {
            return;
        }
        if s.is_one() {
            self.rational = self.rational.clone() + c;
            return;
        }
        let slot = self.terms.entry(s.clone()).or_insert_with(Ratio::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.rational = out.rational + other.rational.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        SurdSum {
            rational: -self.rational.clone(),
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (s.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn add_ratio(&self, r: &Ratio<I>) -> Self {
        let mut out = self.clone();
        out.rational = out.rational + r.clone();
        out
    }

    pub fn mul_ratio(&self, r: &Ratio<I>) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        SurdSum {
            rational: self.rational.clone() * r.clone(),
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (s.clone(), c.clone() * r.clone()))
                .collect(),
        }
    }

    pub fn mul_int(&self, m: i64) -> Self {
        self.mul_ratio(&Ratio::from_integer(int(m)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::from_ratio(self.rational.clone() * other.rational.clone());
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone() * self.rational.clone());
        }
        for (s, c) in &self.terms {
            out.add_term(s.clone(), c.clone() * other.rational.clone());
            for (t, e) in &other.terms {
                // sqrt(s) sqrt(t) = g sqrt((s/g)(t/g))
                let g = s.gcd(t);
                let rad = (s.clone() / g.clone()) * (t.clone() / g.clone());
                out.add_term(rad, c.clone() * e.clone() * Ratio::from_integer(g));
            }
        }
        out
    }

    /// Multiplicative inverse by repeated conjugation over the largest prime.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidScalar("division by zero".into()));
        }
        if self.terms.is_empty() {
            return Ok(Self::from_ratio(self.rational.recip()));
        }
        let p = self
            .terms
            .keys()
            .flat_map(prime_factors)
            .max()
            .expect("radicands >= 2 have prime factors");
        let conj = self.conjugate_at(&p);
        let norm = self.mul(&conj);
        debug_assert!(norm.terms.keys().all(|s| !s.is_multiple_of(&p)));
        Ok(conj.mul(&norm.recip()?))
    }

    /// Image under `sqrt(p) -> -sqrt(p)`.
    fn conjugate_at(&self, p: &I) -> Self {
        SurdSum {
            rational: self.rational.clone(),
            terms: self
                .terms
                .iter()
                .map(|(s, c)| {
                    if s.is_multiple_of(p) {
                        (s.clone(), -c.clone())
                    } else {
                        (s.clone(), c.clone())
                    }
                })
                .collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn to_f64(&self) -> f64 {
        let mut v = ratio_to_f64(&self.rational);
        for (s, c) in &self.terms {
            v += ratio_to_f64(c) * s.to_f64().unwrap_or(f64::NAN).sqrt();
        }
        v
    }

    /// Enclosure of the value with `bits` fractional bits per square root.
    pub fn bounds(&self, bits: u32) -> Bounds {
        let mut lo: Ratio<BigInt> = big_ratio(&self.rational);
        let mut hi = lo.clone();
        for (s, c) in &self.terms {
            let s: BigInt = s.clone().into();
            let (rlo, rhi) = interval::sqrt_bounds(&s, bits);
            let c = big_ratio(c);
            if c.is_positive() {
                lo += c.clone() * rlo;
                hi += c * rhi;
            } else {
                lo += c.clone() * rhi;
                hi += c * rlo;
            }
        }
        Bounds { lo, hi }
    }

    pub fn signum(&self) -> Result<Ordering> {
        if self.terms.is_empty() {
            return Ok(self.rational.cmp(&Ratio::zero()));
        }
        if let Some(x) = self.to_scalar() {
            return Ok(x.signum());
        }
        interval::refine(|bits| self.bounds(bits).sign())
    }

    pub fn floor(&self) -> Result<BigInt> {
        if let Some(x) = self.to_scalar() {
            return Ok(x.floor().into());
        }
        interval::refine(|bits| self.bounds(bits).floor())
    }

    pub fn is_positive(&self) -> Result<bool> {
        Ok(self.signum()? == Ordering::Greater)
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        self.sub(other).signum()
    }

    pub fn cmp_ratio(&self, r: &Ratio<I>) -> Result<Ordering> {
        self.add_ratio(&-r.clone()).signum()
    }
}

fn big_ratio<I: ExactInt>(r: &Ratio<I>) -> Ratio<BigInt> {
    Ratio::new_raw(r.numer().clone().into(), r.denom().clone().into())
}

impl<I: ExactInt> From<ExactScalar<I>> for SurdSum<I> {
    fn from(x: ExactScalar<I>) -> Self {
        match x {
            ExactScalar::Rational(r) => SurdSum::from_ratio(r),
            ExactScalar::Surd(q) => {
                let mut terms = BTreeMap::new();
                terms.insert(q.s, q.b);
                SurdSum {
                    rational: q.a,
                    terms,
                }
            }
        }
    }
}

impl<I: ExactInt> fmt::Display for SurdSum<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.rational.is_zero() || self.terms.is_empty() {
            write!(f, "{}", self.rational)?;
            first = false;
        }
        for (s, c) in &self.terms {
            if first {
                write!(f, "{c}*sqrt({s})")?;
            } else if c.is_negative() {
                write!(f, " - {}*sqrt({s})", -c.clone())?;
            } else {
                write!(f, " + {c}*sqrt({s})")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl<I: ExactInt> fmt::Debug for SurdSum<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (~{:.6})", self.to_f64())
    }
}
