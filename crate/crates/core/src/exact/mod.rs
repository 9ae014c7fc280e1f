//! Exact scalars for rotation numbers.
//!
//! Every rotation number `theta / pi` handled by the crate is either a
//! rational or a real quadratic surd `a + b * sqrt(s)`. Both admit exact
//! floor, ceiling and fractional part of integer multiples using only
//! integer arithmetic, which is what the index formulas need.
//!
//! The integer backend is a type parameter. [`num_bigint::BigInt`] is the
//! default and never overflows; `i128` is faster for bounded inputs and
//! panics on overflow (overflow checks stay on in every profile).

mod approx;
pub mod interval;
mod serde_repr;
mod surd_sum;

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use approx::best_lower_rational;
pub use surd_sum::SurdSum;

/// Integer backends usable by the exact layer.
pub trait ExactInt:
    Integer
    + Signed
    + Roots
    + Clone
    + Hash
    + Debug
    + Display
    + FromPrimitive
    + ToPrimitive
    + Into<BigInt>
    + TryFrom<BigInt>
    + Send
    + Sync
    + 'static
{
}

impl<T> ExactInt for T where
    T: Integer
        + Signed
        + Roots
        + Clone
        + Hash
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + Into<BigInt>
        + TryFrom<BigInt>
        + Send
        + Sync
        + 'static
{
}

#[inline]
pub(crate) fn int<I: ExactInt>(v: i64) -> I {
    I::from_i64(v).expect("every backend holds i64")
}

#[inline]
pub(crate) fn ratio<I: ExactInt>(v: i64) -> Ratio<I> {
    Ratio::from_integer(int(v))
}

pub(crate) fn to_i64<I: ExactInt>(v: &I) -> Result<i64> {
    v.to_i64().ok_or(Error::Overflow)
}

pub(crate) fn from_bigint<I: ExactInt>(v: BigInt) -> Result<I> {
    I::try_from(v).map_err(|_| Error::Overflow)
}

/// Splits `s > 0` into `(k, t)` with `s = k^2 * t` and `t` squarefree.
pub(crate) fn square_free_split<I: ExactInt>(s: &I) -> (I, I) {
    let mut k = I::one();
    let mut t = I::one();
    let mut rest = s.clone();
    let mut p: I = int(2);
    while p.clone() * p.clone() <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(&p) {
            rest = rest / p.clone();
            e += 1;
        }
        for _ in 0..e / 2 {
            k = k * p.clone();
        }
        if e % 2 == 1 {
            t = t * p.clone();
        }
        p = p + I::one();
    }
    t = t * rest;
    (k, t)
}

/// Prime factors of `s`, ascending, without repetition.
pub(crate) fn prime_factors<I: ExactInt>(s: &I) -> Vec<I> {
    let mut out = Vec::new();
    let mut rest = s.abs();
    let mut p: I = int(2);
    while p.clone() * p.clone() <= rest {
        if rest.is_multiple_of(&p) {
            out.push(p.clone());
            while rest.is_multiple_of(&p) {
                rest = rest / p.clone();
            }
        }
        p = p + I::one();
    }
    if rest > I::one() {
        out.push(rest);
    }
    out
}

/// `a + b * sqrt(s)` with `b != 0` and `s >= 2` squarefree; always irrational.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadSurd<I: ExactInt = BigInt> {
    a: Ratio<I>,
    b: Ratio<I>,
    s: I,
}

impl<I: ExactInt> QuadSurd<I> {
    pub fn rational_part(&self) -> &Ratio<I> {
        &self.a
    }

    pub fn surd_coefficient(&self) -> &Ratio<I> {
        &self.b
    }

    pub fn radicand(&self) -> &I {
        &self.s
    }

    fn floor(&self) -> I {
        // (p t + r q sqrt(s)) / (q t), strictly between integer numerators.
        let (p, q) = (self.a.numer().clone(), self.a.denom().clone());
        let (r, t) = (self.b.numer().clone(), self.b.denom().clone());
        let den = q.clone() * t.clone();
        let base = p * t;
        let coef = r * q;
        let root = (coef.clone() * coef.clone() * self.s.clone()).sqrt();
        if coef.is_positive() {
            (base + root).div_floor(&den)
        } else {
            (base - root - I::one()).div_floor(&den)
        }
    }

    fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Ratio::zero());
        let sb = self.b.cmp(&Ratio::zero());
        if sa == sb || sa == Ordering::Equal {
            return sb;
        }
        let a2 = self.a.clone() * self.a.clone();
        let b2s = self.b.clone() * self.b.clone() * Ratio::from_integer(self.s.clone());
        let mag = a2.cmp(&b2s);
        // |a| vs |b| sqrt(s): the larger magnitude decides; equality impossible.
        if mag == Ordering::Greater {
            sa
        } else {
            sb
        }
    }

    fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.a) + ratio_to_f64(&self.b) * self.s.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

pub(crate) fn ratio_to_f64<I: ExactInt>(r: &Ratio<I>) -> f64 {
    let n: BigInt = r.numer().clone().into();
    let d: BigInt = r.denom().clone().into();
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() && b != 0.0 => a / b,
        _ => {
            // Very large parts: shift both down before converting.
            let bits = n.bits().max(d.bits()) as i64 - 60;
            let shift = bits.max(0) as usize;
            let a = (n >> shift).to_f64().unwrap_or(0.0);
            let b = (d >> shift).to_f64().unwrap_or(1.0);
            a / b
        }
    }
}

/// An exact real: rational or quadratic surd.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExactScalar<I: ExactInt = BigInt> {
    Rational(Ratio<I>),
    Surd(QuadSurd<I>),
}

impl<I: ExactInt> ExactScalar<I> {
    pub fn integer(v: i64) -> Self {
        ExactScalar::Rational(ratio(v))
    }

    /// `num / den`; fails on a zero denominator.
    pub fn rational(num: I, den: I) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidScalar("zero denominator".into()));
        }
        Ok(ExactScalar::Rational(Ratio::new(num, den)))
    }

    pub fn from_ratio(r: Ratio<I>) -> Self {
        ExactScalar::Rational(r)
    }

    /// `a + b * sqrt(s)` with square factors of `s` pulled out; collapses to a
    /// rational when `b = 0` or `s` is a perfect square.
    pub fn surd(a: Ratio<I>, b: Ratio<I>, s: I) -> Result<Self> {
        if !s.is_positive() {
            return Err(Error::InvalidScalar(format!(
                "radicand {s} must be positive"
            )));
        }
        let (k, t) = square_free_split(&s);
        let b = b * Ratio::from_integer(k);
        if b.is_zero() {
            return Ok(ExactScalar::Rational(a));
        }
        if t.is_one() {
            return Ok(ExactScalar::Rational(a + b));
        }
        Ok(ExactScalar::Surd(QuadSurd { a, b, s: t }))
    }

    /// Convenience constructor from small integers: `(an/ad) + (bn/bd) sqrt(s)`.
    pub fn surd_i64(an: i64, ad: i64, bn: i64, bd: i64, s: i64) -> Result<Self> {
        if ad == 0 || bd == 0 {
            return Err(Error::InvalidScalar("zero denominator".into()));
        }
        Self::surd(
            Ratio::new(int(an), int(ad)),
            Ratio::new(int(bn), int(bd)),
            int(s),
        )
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, ExactScalar::Rational(_))
    }

    pub fn as_ratio(&self) -> Option<&Ratio<I>> {
        match self {
            ExactScalar::Rational(r) => Some(r),
            ExactScalar::Surd(_) => None,
        }
    }

    pub fn radicand(&self) -> Option<&I> {
        match self {
            ExactScalar::Rational(_) => None,
            ExactScalar::Surd(q) => Some(&q.s),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExactScalar::Rational(r) if r.is_zero())
    }

    pub fn signum(&self) -> Ordering {
        match self {
            ExactScalar::Rational(r) => r.cmp(&Ratio::zero()),
            ExactScalar::Surd(q) => q.signum(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactScalar::Rational(r) => ratio_to_f64(r),
            ExactScalar::Surd(q) => q.to_f64(),
        }
    }

    pub fn floor(&self) -> I {
        match self {
            ExactScalar::Rational(r) => r.floor().to_integer(),
            ExactScalar::Surd(q) => q.floor(),
        }
    }

    /// Least integer `>= self`.
    pub fn ceil(&self) -> I {
        match self {
            ExactScalar::Rational(r) => r.ceil().to_integer(),
            ExactScalar::Surd(q) => q.floor() + I::one(),
        }
    }

    /// `self - floor(self)`, in `[0, 1)`.
    pub fn fract(&self) -> Self {
        let f = self.floor();
        self.add_ratio(&Ratio::from_integer(-f))
    }

    pub fn neg(&self) -> Self {
        match self {
            ExactScalar::Rational(r) => ExactScalar::Rational(-r.clone()),
            ExactScalar::Surd(q) => ExactScalar::Surd(QuadSurd {
                a: -q.a.clone(),
                b: -q.b.clone(),
                s: q.s.clone(),
            }),
        }
    }

    pub fn add_ratio(&self, r: &Ratio<I>) -> Self {
        match self {
            ExactScalar::Rational(x) => ExactScalar::Rational(x.clone() + r.clone()),
            ExactScalar::Surd(q) => ExactScalar::Surd(QuadSurd {
                a: q.a.clone() + r.clone(),
                b: q.b.clone(),
                s: q.s.clone(),
            }),
        }
    }

    pub fn mul_ratio(&self, r: &Ratio<I>) -> Self {
        if r.is_zero() {
            return ExactScalar::Rational(Ratio::zero());
        }
        match self {
            ExactScalar::Rational(x) => ExactScalar::Rational(x.clone() * r.clone()),
            ExactScalar::Surd(q) => ExactScalar::Surd(QuadSurd {
                a: q.a.clone() * r.clone(),
                b: q.b.clone() * r.clone(),
                s: q.s.clone(),
            }),
        }
    }

    pub fn mul_int(&self, m: i64) -> Self {
        self.mul_ratio(&ratio(m))
    }

    /// Sum of two scalars; fails when both are surds over different radicands.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (ExactScalar::Rational(r), x) | (x, ExactScalar::Rational(r)) => Ok(x.add_ratio(r)),
            (ExactScalar::Surd(p), ExactScalar::Surd(q)) => {
                if p.s != q.s {
                    return Err(Error::MixedRadicands(p.s.to_string(), q.s.to_string()));
                }
                let b = p.b.clone() + q.b.clone();
                let a = p.a.clone() + q.a.clone();
                if b.is_zero() {
                    Ok(ExactScalar::Rational(a))
                } else {
                    Ok(ExactScalar::Surd(QuadSurd {
                        a,
                        b,
                        s: p.s.clone(),
                    }))
                }
            }
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    /// Product; fails for surds over different radicands.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (ExactScalar::Rational(r), x) | (x, ExactScalar::Rational(r)) => Ok(x.mul_ratio(r)),
            (ExactScalar::Surd(p), ExactScalar::Surd(q)) => {
                if p.s != q.s {
                    return Err(Error::MixedRadicands(p.s.to_string(), q.s.to_string()));
                }
                let s = Ratio::from_integer(p.s.clone());
                let a = p.a.clone() * q.a.clone() + p.b.clone() * q.b.clone() * s;
                let b = p.a.clone() * q.b.clone() + p.b.clone() * q.a.clone();
                if b.is_zero() {
                    Ok(ExactScalar::Rational(a))
                } else {
                    Ok(ExactScalar::Surd(QuadSurd {
                        a,
                        b,
                        s: p.s.clone(),
                    }))
                }
            }
        }
    }

    /// Multiplicative inverse; fails on zero.
    pub fn recip(&self) -> Result<Self> {
        match self {
            ExactScalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::InvalidScalar("division by zero".into()))
                } else {
                    Ok(ExactScalar::Rational(r.recip()))
                }
            }
            ExactScalar::Surd(q) => {
                // 1 / (a + b sqrt s) = (a - b sqrt s) / (a^2 - b^2 s)
                let norm = q.a.clone() * q.a.clone()
                    - q.b.clone() * q.b.clone() * Ratio::from_integer(q.s.clone());
                Ok(ExactScalar::Surd(QuadSurd {
                    a: q.a.clone() / norm.clone(),
                    b: -q.b.clone() / norm,
                    s: q.s.clone(),
                }))
            }
        }
    }

    /// Exact comparison, including surds over different radicands.
    pub fn exact_cmp(&self, other: &Self) -> Ordering {
        match self.checked_sub(other) {
            Ok(d) => d.signum(),
            Err(_) => {
                let (ExactScalar::Surd(p), ExactScalar::Surd(q)) = (self, other) else {
                    unreachable!("only two surds can clash");
                };
                // Compare X = (p.a - q.a) + p.b sqrt(p.s) against Y = q.b sqrt(q.s).
                let x = ExactScalar::Surd(QuadSurd {
                    a: p.a.clone() - q.a.clone(),
                    b: p.b.clone(),
                    s: p.s.clone(),
                });
                let sx = x.signum();
                let sy = q.b.cmp(&Ratio::zero());
                if sx != sy {
                    return sx.cmp(&sy);
                }
                let x2 = x.checked_mul(&x).expect("same radicand");
                let y2 = q.b.clone() * q.b.clone() * Ratio::from_integer(q.s.clone());
                let mag = x2.exact_cmp(&ExactScalar::Rational(y2));
                if sx == Ordering::Greater {
                    mag
                } else {
                    mag.reverse()
                }
            }
        }
    }

    pub fn cmp_ratio(&self, r: &Ratio<I>) -> Ordering {
        self.add_ratio(&-r.clone()).signum()
    }
}

impl<I: ExactInt> PartialOrd for ExactScalar<I> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<I: ExactInt> Ord for ExactScalar<I> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exact_cmp(other)
    }
}

impl<I: ExactInt> Display for ExactScalar<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(r) => write!(f, "{r}"),
            ExactScalar::Surd(q) => {
                if q.a.is_zero() {
                    write!(f, "{}*sqrt({})", q.b, q.s)
                } else if q.b.is_negative() {
                    write!(f, "{} - {}*sqrt({})", q.a, -q.b.clone(), q.s)
                } else {
                    write!(f, "{} + {}*sqrt({})", q.a, q.b, q.s)
                }
            }
        }
    }
}

impl<I: ExactInt> Debug for ExactScalar<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (~{:.6})", self.to_f64())
    }
}

impl<I: ExactInt> From<Ratio<I>> for ExactScalar<I> {
    fn from(r: Ratio<I>) -> Self {
        ExactScalar::Rational(r)
    }
}

/// `[m x]`.
pub fn floor_mult<I: ExactInt>(x: &ExactScalar<I>, m: i64) -> I {
    x.mul_int(m).floor()
}

/// `E(m x)`, the least integer not below `m x`.
pub fn ceil_mult<I: ExactInt>(x: &ExactScalar<I>, m: i64) -> I {
    x.mul_int(m).ceil()
}

/// `{m x}` in `[0, 1)`.
pub fn frac_mult<I: ExactInt>(x: &ExactScalar<I>, m: i64) -> ExactScalar<I> {
    x.mul_int(m).fract()
}

/// Position of `{m x}` relative to the integer lattice at tolerance `delta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeClass {
    /// `{m x} = 0`.
    Zero,
    /// `0 < {m x} < delta`.
    Low,
    /// `1 - delta < {m x} < 1`.
    High,
    Interior,
}

/// Classifies `{m x}`; the boundary `{m x} = delta` counts as interior.
pub fn is_near_lattice<I: ExactInt>(x: &ExactScalar<I>, m: i64, delta: &Ratio<I>) -> LatticeClass {
    classify_fraction(&frac_mult(x, m), delta)
}

pub(crate) fn classify_fraction<I: ExactInt>(f: &ExactScalar<I>, delta: &Ratio<I>) -> LatticeClass {
    if f.is_zero() {
        return LatticeClass::Zero;
    }
    if f.cmp_ratio(delta) == Ordering::Less {
        return LatticeClass::Low;
    }
    let upper = Ratio::one() - delta.clone();
    if f.cmp_ratio(&upper) == Ordering::Greater {
        return LatticeClass::High;
    }
    LatticeClass::Interior
}

/// A rotation number `theta / pi` in the open interval `(0, 2)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RotationAngle<I: ExactInt = BigInt>(ExactScalar<I>);

impl<I: ExactInt> RotationAngle<I> {
    pub fn new(value: ExactScalar<I>) -> Result<Self> {
        if value.signum() != Ordering::Greater || value.cmp_ratio(&ratio(2)) != Ordering::Less {
            return Err(Error::AngleOutOfRange(value.to_string()));
        }
        Ok(RotationAngle(value))
    }

    pub fn value(&self) -> &ExactScalar<I> {
        &self.0
    }

    pub fn is_rational(&self) -> bool {
        self.0.is_rational()
    }

    /// `theta / pi == 1`, i.e. the eigenvalue `-1`.
    pub fn is_half_turn(&self) -> bool {
        matches!(&self.0, ExactScalar::Rational(r) if r.is_one())
    }

    /// The angle of the complex conjugate eigenvalue, `2 - theta/pi`.
    pub fn conjugate(&self) -> Self {
        RotationAngle(self.0.neg().add_ratio(&ratio(2)))
    }

    /// `theta / 2 pi`.
    pub fn turns(&self) -> ExactScalar<I> {
        self.0.mul_ratio(&Ratio::new(I::one(), int(2)))
    }

    pub fn into_inner(self) -> ExactScalar<I> {
        self.0
    }
}

impl<I: ExactInt> Display for RotationAngle<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<I: ExactInt> Debug for RotationAngle<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RotationAngle({:?})", self.0)
    }
}
