//! Basic symplectic normal forms, their diamond sums, and the spectral data
//! the iteration formulas read off them.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{ratio, ExactInt, ExactScalar, RotationAngle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BSign {
    Negative,
    Zero,
    Positive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum N2Kind {
    Trivial,
    Nontrivial,
}

/// Eigenvalue `+1` or `-1` of an `N1` block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unit {
    Plus,
    Minus,
}

impl Unit {
    pub fn as_i8(self) -> i8 {
        match self {
            Unit::Plus => 1,
            Unit::Minus => -1,
        }
    }
}

/// One of the 2x2 or 4x4 building blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasicNormalForm<I: ExactInt = BigInt> {
    N1 {
        lambda: Unit,
        b: BSign,
    },
    D {
        lambda: ExactScalar<I>,
    },
    R {
        theta: RotationAngle<I>,
    },
    N2 {
        theta: RotationAngle<I>,
        kind: N2Kind,
    },
}

impl<I: ExactInt> BasicNormalForm<I> {
    pub fn n1(lambda: i8, b: BSign) -> Result<Self> {
        let lambda = match lambda {
            1 => Unit::Plus,
            -1 => Unit::Minus,
            _ => {
                return Err(Error::InvalidBlock(format!(
                    "N1 needs lambda = +-1, got {lambda}"
                )))
            }
        };
        Ok(BasicNormalForm::N1 { lambda, b })
    }

    pub fn d(lambda: ExactScalar<I>) -> Result<Self> {
        let abs_one = lambda.cmp_ratio(&Ratio::one()) == Ordering::Equal
            || lambda.cmp_ratio(&-Ratio::<I>::one()) == Ordering::Equal;
        if lambda.is_zero() || abs_one {
            return Err(Error::InvalidBlock(format!(
                "D needs lambda outside {{0, +-1}}, got {lambda}"
            )));
        }
        Ok(BasicNormalForm::D { lambda })
    }

    pub fn r(theta: RotationAngle<I>) -> Result<Self> {
        if theta.is_half_turn() {
            return Err(Error::InvalidBlock("R(theta) needs theta != pi".into()));
        }
        Ok(BasicNormalForm::R { theta })
    }

    pub fn n2(theta: RotationAngle<I>, kind: N2Kind) -> Result<Self> {
        if theta.is_half_turn() {
            return Err(Error::InvalidBlock("N2 needs theta != pi".into()));
        }
        Ok(BasicNormalForm::N2 { theta, kind })
    }

    /// Shorthand for `R(theta)` from a scalar `theta / pi`.
    pub fn rotation(theta_over_pi: ExactScalar<I>) -> Result<Self> {
        Self::r(RotationAngle::new(theta_over_pi)?)
    }

    pub fn dimension(&self) -> usize {
        match self {
            BasicNormalForm::N2 { .. } => 4,
            _ => 2,
        }
    }

    /// `(S+, S-)` of this block at `omega`.
    pub fn splitting_at(&self, omega: &UnitPoint<I>) -> SplittingPair {
        let pair = |p, m| SplittingPair { plus: p, minus: m };
        match (self, omega) {
            (
                BasicNormalForm::N1 {
                    lambda: Unit::Plus,
                    b,
                },
                UnitPoint::One,
            ) => match b {
                BSign::Zero | BSign::Positive => pair(1, 1),
                BSign::Negative => pair(0, 0),
            },
            (
                BasicNormalForm::N1 {
                    lambda: Unit::Minus,
                    b,
                },
                UnitPoint::MinusOne,
            ) => match b {
                BSign::Zero | BSign::Negative => pair(1, 1),
                BSign::Positive => pair(0, 0),
            },
            (BasicNormalForm::R { theta }, UnitPoint::Angle(w)) => {
                if w == theta {
                    pair(0, 1)
                } else if *w == theta.conjugate() {
                    pair(1, 0)
                } else {
                    pair(0, 0)
                }
            }
            (BasicNormalForm::N2 { theta, kind }, UnitPoint::Angle(w)) => {
                if *kind == N2Kind::Trivial && (w == theta || *w == theta.conjugate()) {
                    pair(1, 1)
                } else {
                    pair(0, 0)
                }
            }
            _ => pair(0, 0),
        }
    }

    /// Unit-circle eigenvalues with algebraic multiplicity.
    pub fn unit_spectrum(&self) -> Vec<(UnitPoint<I>, usize)> {
        match self {
            BasicNormalForm::N1 {
                lambda: Unit::Plus, ..
            } => vec![(UnitPoint::One, 2)],
            BasicNormalForm::N1 {
                lambda: Unit::Minus,
                ..
            } => vec![(UnitPoint::MinusOne, 2)],
            BasicNormalForm::D { .. } => vec![],
            BasicNormalForm::R { theta } => vec![
                (UnitPoint::Angle(theta.clone()), 1),
                (UnitPoint::Angle(theta.conjugate()), 1),
            ],
            BasicNormalForm::N2 { theta, .. } => vec![
                (UnitPoint::Angle(theta.clone()), 2),
                (UnitPoint::Angle(theta.conjugate()), 2),
            ],
        }
    }

    /// `dim ker(B^m - I)` for this block `B`.
    pub fn nullity(&self, m: u64) -> usize {
        match self {
            BasicNormalForm::N1 {
                lambda: Unit::Plus,
                b,
            } => {
                if *b == BSign::Zero {
                    2
                } else {
                    1
                }
            }
            BasicNormalForm::N1 {
                lambda: Unit::Minus,
                b,
            } => match (m.is_multiple_of(2), b) {
                (false, _) => 0,
                (true, BSign::Zero) => 2,
                (true, _) => 1,
            },
            BasicNormalForm::D { .. } => 0,
            BasicNormalForm::R { theta } | BasicNormalForm::N2 { theta, .. } => {
                let m = i64::try_from(m).expect("iterate fits i64");
                if theta.turns().mul_int(m).fract().is_zero() {
                    2
                } else {
                    0
                }
            }
        }
    }

    fn angle(&self) -> Option<&RotationAngle<I>> {
        match self {
            BasicNormalForm::R { theta } | BasicNormalForm::N2 { theta, .. } => Some(theta),
            _ => None,
        }
    }
}

impl<I: ExactInt> fmt::Display for BasicNormalForm<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasicNormalForm::N1 { lambda, b } => write!(f, "N1({}, {b:?})", lambda.as_i8()),
            BasicNormalForm::D { lambda } => write!(f, "D({lambda})"),
            BasicNormalForm::R { theta } => write!(f, "R(pi*({theta}))"),
            BasicNormalForm::N2 { theta, kind } => write!(f, "N2(pi*({theta}), {kind:?})"),
        }
    }
}

/// A point of the unit circle that can carry spectrum of a normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnitPoint<I: ExactInt = BigInt> {
    One,
    MinusOne,
    /// `e^{i theta}` with `theta / pi` in `(0, 2)` and different from 1.
    Angle(RotationAngle<I>),
}

impl<I: ExactInt> UnitPoint<I> {
    /// `e^{i pi x}`; `x = 1` maps to `MinusOne`.
    pub fn from_angle(theta: RotationAngle<I>) -> Self {
        if theta.is_half_turn() {
            UnitPoint::MinusOne
        } else {
            UnitPoint::Angle(theta)
        }
    }

    pub fn conjugate(&self) -> Self {
        match self {
            UnitPoint::Angle(t) => UnitPoint::Angle(t.conjugate()),
            other => other.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SplittingPair {
    pub plus: usize,
    pub minus: usize,
}

impl std::ops::Add for SplittingPair {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        SplittingPair {
            plus: self.plus + o.plus,
            minus: self.minus + o.minus,
        }
    }
}

/// An eigenvalue angle `theta / pi` in `(0, 2)` with positive `S-`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AngleEntry<I: ExactInt = BigInt> {
    pub alpha: ExactScalar<I>,
    pub weight: usize,
}

/// Diamond sum of basic normal forms, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymplecticClass<I: ExactInt = BigInt> {
    blocks: Vec<BasicNormalForm<I>>,
    half_dim: usize,
}

impl<I: ExactInt> SymplecticClass<I> {
    pub fn new(mut blocks: Vec<BasicNormalForm<I>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidBlock(
                "a symplectic class needs at least one block".into(),
            ));
        }
        blocks.sort();
        let half_dim = blocks.iter().map(|b| b.dimension()).sum::<usize>() / 2;
        Ok(SymplecticClass { blocks, half_dim })
    }

    pub fn blocks(&self) -> &[BasicNormalForm<I>] {
        &self.blocks
    }

    pub fn half_dimension(&self) -> usize {
        self.half_dim
    }

    pub fn diamond(&self, other: &Self) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        SymplecticClass::new(blocks).expect("nonempty")
    }

    pub fn splitting_numbers(&self, omega: &UnitPoint<I>) -> SplittingPair {
        self.blocks
            .iter()
            .map(|b| b.splitting_at(omega))
            .fold(SplittingPair::default(), |a, b| a + b)
    }

    /// `S+(1)`.
    pub fn s_plus_one(&self) -> usize {
        self.splitting_numbers(&UnitPoint::One).plus
    }

    /// Distinct unit-circle eigenvalues with algebraic multiplicities.
    pub fn unit_spectrum(&self) -> Vec<(UnitPoint<I>, usize)> {
        let mut all: Vec<(UnitPoint<I>, usize)> = Vec::new();
        for b in &self.blocks {
            for (w, k) in b.unit_spectrum() {
                match all.iter_mut().find(|(x, _)| *x == w) {
                    Some(slot) => slot.1 += k,
                    None => all.push((w, k)),
                }
            }
        }
        all.sort();
        all
    }

    /// The angles `theta / pi` in `(0, 2)` with `S-(e^{i theta}) > 0`, merged and sorted.
    pub fn angle_entries(&self) -> Vec<AngleEntry<I>> {
        let mut out: Vec<AngleEntry<I>> = Vec::new();
        let mut push = |alpha: ExactScalar<I>, w: usize| {
            if w == 0 {
                return;
            }
            match out.iter_mut().find(|e| e.alpha == alpha) {
                Some(e) => e.weight += w,
                None => out.push(AngleEntry { alpha, weight: w }),
            }
        };
        for (w, _) in self.unit_spectrum() {
            let alpha = match &w {
                UnitPoint::One => continue,
                UnitPoint::MinusOne => ExactScalar::integer(1),
                UnitPoint::Angle(t) => t.value().clone(),
            };
            push(alpha, self.splitting_numbers(&w).minus);
        }
        out.sort_by(|a, b| a.alpha.cmp(&b.alpha));
        out
    }

    /// `C(M)`, the sum of `S-` over eigenvalue angles in `(0, 2 pi)`.
    pub fn crossing_sum(&self) -> usize {
        self.angle_entries().iter().map(|e| e.weight).sum()
    }

    /// `dim ker(M^m - I)`.
    pub fn nullity(&self, m: u64) -> usize {
        self.blocks.iter().map(|b| b.nullity(m)).sum()
    }

    pub fn elliptic_height(&self) -> usize {
        self.blocks
            .iter()
            .map(|b| match b {
                BasicNormalForm::D { .. } => 0,
                other => other.dimension(),
            })
            .sum()
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.elliptic_height() == 0
    }

    pub fn is_elliptic(&self) -> bool {
        self.elliptic_height() == 2 * self.half_dim
    }

    /// Elliptic with every unit eigenvalue off `+-1` at an irrational angle.
    pub fn is_irrationally_elliptic(&self) -> bool {
        self.is_elliptic()
            && self
                .blocks
                .iter()
                .all(|b| b.angle().is_some_and(|t| !t.is_rational()))
    }

    /// Least `k` returning some rational elliptic eigenvalue to 1; `None` is `+infinity`.
    pub fn m_check(&self) -> Option<u64> {
        self.blocks
            .iter()
            .filter_map(|b| match b {
                BasicNormalForm::N1 {
                    lambda: Unit::Minus,
                    ..
                } => Some(2),
                BasicNormalForm::R { theta } | BasicNormalForm::N2 { theta, .. } => {
                    theta.value().as_ratio().map(return_time)
                }
                _ => None,
            })
            .min()
    }

    /// No eigenvalue `+-1` and every elliptic angle irrational.
    pub fn validate_bumpy(&self) -> bool {
        self.blocks.iter().all(|b| match b {
            BasicNormalForm::N1 { .. } => false,
            BasicNormalForm::D { .. } => true,
            BasicNormalForm::R { theta } | BasicNormalForm::N2 { theta, .. } => {
                !theta.is_rational()
            }
        })
    }

    /// Denominators of all rational eigenvalue angles `theta / pi` (including `pi` itself).
    pub fn rational_angle_denominators(&self) -> Vec<I> {
        self.blocks
            .iter()
            .filter_map(|b| match b {
                BasicNormalForm::N1 {
                    lambda: Unit::Minus,
                    ..
                } => Some(I::one()),
                BasicNormalForm::R { theta } | BasicNormalForm::N2 { theta, .. } => {
                    theta.value().as_ratio().map(|r| r.denom().clone())
                }
                _ => None,
            })
            .collect()
    }

    /// Number of `R` blocks.
    pub fn rotation_count(&self) -> usize {
        self.blocks
            .iter()
            .filter(|b| matches!(b, BasicNormalForm::R { .. }))
            .count()
    }

    /// Angles of the `R` blocks, in block order.
    pub fn rotation_angles(&self) -> Vec<RotationAngle<I>> {
        self.blocks
            .iter()
            .filter_map(|b| match b {
                BasicNormalForm::R { theta } => Some(theta.clone()),
                _ => None,
            })
            .collect()
    }
}

/// Least `k >= 1` with `k * theta` a multiple of `2 pi`, for `theta / pi = p / q`.
fn return_time<I: ExactInt>(r: &Ratio<I>) -> u64 {
    let q = r.denom().to_u64().expect("angle denominator fits u64");
    if r.numer().is_even() {
        q
    } else {
        2 * q
    }
}

impl<I: ExactInt> fmt::Display for SymplecticClass<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, " <> ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

pub fn splitting_numbers<I: ExactInt>(
    m: &SymplecticClass<I>,
    omega: &UnitPoint<I>,
) -> SplittingPair {
    m.splitting_numbers(omega)
}

pub fn crossing_sum<I: ExactInt>(m: &SymplecticClass<I>) -> usize {
    m.crossing_sum()
}

pub fn nullity<I: ExactInt>(m: &SymplecticClass<I>, iterate: u64) -> usize {
    m.nullity(iterate)
}

pub fn elliptic_height<I: ExactInt>(m: &SymplecticClass<I>) -> usize {
    m.elliptic_height()
}

pub fn m_check<I: ExactInt>(m: &SymplecticClass<I>) -> Option<u64> {
    m.m_check()
}

pub fn validate_bumpy<I: ExactInt>(m: &SymplecticClass<I>) -> bool {
    m.validate_bumpy()
}

// JSON shape: {"type":"R","theta_over_pi":{..}}, {"type":"N1","lambda":1,"b_sign":"positive"},
// {"type":"D","lambda":{..}}, {"type":"N2","theta_over_pi":{..},"kind":"trivial"}.
#[derive(Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields, bound = "")]
enum RawBlock<I: ExactInt> {
    N1 {
        lambda: i8,
        b_sign: BSign,
    },
    D {
        lambda: ExactScalar<I>,
    },
    R {
        theta_over_pi: ExactScalar<I>,
    },
    N2 {
        theta_over_pi: ExactScalar<I>,
        kind: N2Kind,
    },
}

impl<I: ExactInt> Serialize for BasicNormalForm<I> {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let raw: RawBlock<I> = match self.clone() {
            BasicNormalForm::N1 { lambda, b } => RawBlock::N1 {
                lambda: lambda.as_i8(),
                b_sign: b,
            },
            BasicNormalForm::D { lambda } => RawBlock::D { lambda },
            BasicNormalForm::R { theta } => RawBlock::R {
                theta_over_pi: theta.into_inner(),
            },
            BasicNormalForm::N2 { theta, kind } => RawBlock::N2 {
                theta_over_pi: theta.into_inner(),
                kind,
            },
        };
        raw.serialize(ser)
    }
}

impl<'de, I: ExactInt> Deserialize<'de> for BasicNormalForm<I> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawBlock::<I>::deserialize(de)?;
        let block = match raw {
            RawBlock::N1 { lambda, b_sign } => BasicNormalForm::n1(lambda, b_sign),
            RawBlock::D { lambda } => BasicNormalForm::d(lambda),
            RawBlock::R { theta_over_pi } => BasicNormalForm::rotation(theta_over_pi),
            RawBlock::N2 {
                theta_over_pi,
                kind,
            } => RotationAngle::new(theta_over_pi).and_then(|t| BasicNormalForm::n2(t, kind)),
        };
        block.map_err(D::Error::custom)
    }
}

impl<I: ExactInt> Serialize for SymplecticClass<I> {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks.serialize(ser)
    }
}

impl<'de, I: ExactInt> Deserialize<'de> for SymplecticClass<I> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let blocks = Vec::<BasicNormalForm<I>>::deserialize(de)?;
        SymplecticClass::new(blocks).map_err(D::Error::custom)
    }
}

/// `D(lambda)` from an integer, for tests and examples.
pub fn hyperbolic<I: ExactInt>(lambda: i64) -> BasicNormalForm<I> {
    BasicNormalForm::d(ExactScalar::from_ratio(ratio(lambda))).expect("|lambda| > 1")
}

#[cfg(test)]
mod tests {
    use super::*;

    type B = BasicNormalForm<BigInt>;
    type M = SymplecticClass<BigInt>;
    type S = ExactScalar<BigInt>;

    fn rot(x: S) -> B {
        B::rotation(x).unwrap()
    }

    fn q(n: i64, d: i64) -> S {
        S::from_ratio(Ratio::new(n.into(), d.into()))
    }

    fn sqrt2m1() -> S {
        S::surd_i64(-1, 1, 1, 1, 2).unwrap()
    }

    #[test]
    fn splitting_examples() {
        let m = M::new(vec![hyperbolic(2)]).unwrap();
        assert_eq!(
            m.splitting_numbers(&UnitPoint::One),
            SplittingPair::default()
        );
        let m = M::new(vec![B::n1(1, BSign::Positive).unwrap()]).unwrap();
        assert_eq!(m.splitting_numbers(&UnitPoint::One).plus, 1);
        let t = RotationAngle::new(sqrt2m1()).unwrap();
        let w = UnitPoint::Angle(t.clone());
        let one = M::new(vec![rot(sqrt2m1())]).unwrap();
        let two = M::new(vec![rot(sqrt2m1()), rot(sqrt2m1())]).unwrap();
        assert_eq!(
            one.splitting_numbers(&w),
            SplittingPair { plus: 0, minus: 1 }
        );
        assert_eq!(
            two.splitting_numbers(&w),
            SplittingPair { plus: 0, minus: 2 }
        );
        assert_eq!(
            two.splitting_numbers(&w.conjugate()),
            SplittingPair { plus: 2, minus: 0 }
        );
    }

    #[test]
    fn crossing_sum_examples() {
        assert_eq!(
            M::new(vec![hyperbolic(2), hyperbolic(-3)])
                .unwrap()
                .crossing_sum(),
            0
        );
        assert_eq!(M::new(vec![rot(sqrt2m1())]).unwrap().crossing_sum(), 1);
        let t = RotationAngle::new(sqrt2m1()).unwrap();
        let n2 = M::new(vec![B::n2(t.clone(), N2Kind::Trivial).unwrap()]).unwrap();
        assert_eq!(n2.crossing_sum(), 2);
        let n2 = M::new(vec![B::n2(t, N2Kind::Nontrivial).unwrap()]).unwrap();
        assert_eq!(n2.crossing_sum(), 0);
        let minus = M::new(vec![B::n1(-1, BSign::Negative).unwrap()]).unwrap();
        assert_eq!(minus.crossing_sum(), 1);
        assert_eq!(minus.angle_entries()[0].alpha, S::integer(1));
    }

    #[test]
    fn nullity_examples() {
        let d = M::new(vec![hyperbolic(2)]).unwrap();
        assert!((1..20).all(|m| d.nullity(m) == 0));
        let r = M::new(vec![rot(q(2, 3))]).unwrap();
        assert_eq!(r.nullity(3), 2);
        assert_eq!(r.nullity(2), 0);
        let bumpy = M::new(vec![rot(sqrt2m1()), hyperbolic(3)]).unwrap();
        assert!((1..200).all(|m| bumpy.nullity(m) == 0));
    }

    #[test]
    fn heights_and_m_check() {
        assert_eq!(
            M::new(vec![hyperbolic(2), hyperbolic(5)])
                .unwrap()
                .elliptic_height(),
            0
        );
        let r = M::new(vec![rot(sqrt2m1())]).unwrap();
        assert_eq!(r.elliptic_height(), 2);
        assert!(r.is_elliptic() && r.is_irrationally_elliptic());
        let mixed = M::new(vec![rot(sqrt2m1()), hyperbolic(2)]).unwrap();
        assert_eq!(mixed.elliptic_height(), 2);
        assert!(!mixed.is_elliptic() && !mixed.is_hyperbolic());
        assert_eq!(r.m_check(), None);
        assert_eq!(M::new(vec![rot(q(2, 3))]).unwrap().m_check(), Some(3));
        assert_eq!(
            M::new(vec![B::n1(-1, BSign::Negative).unwrap()])
                .unwrap()
                .m_check(),
            Some(2)
        );
        assert_eq!(M::new(vec![rot(q(1, 3))]).unwrap().m_check(), Some(6));
    }

    #[test]
    fn bumpy_validation() {
        assert!(M::new(vec![hyperbolic(2), rot(sqrt2m1())])
            .unwrap()
            .validate_bumpy());
        assert!(!M::new(vec![B::n1(1, BSign::Positive).unwrap()])
            .unwrap()
            .validate_bumpy());
        assert!(!M::new(vec![rot(q(2, 3))]).unwrap().validate_bumpy());
    }

    #[test]
    fn block_constructors_reject_bad_input() {
        assert!(B::n1(2, BSign::Zero).is_err());
        assert!(B::d(S::integer(1)).is_err());
        assert!(B::d(S::integer(-1)).is_err());
        assert!(B::d(S::integer(0)).is_err());
        assert!(B::rotation(S::integer(1)).is_err());
    }

    #[test]
    fn json_blocks() {
        let j = r#"[{"type":"R","theta_over_pi":{"kind":"surd","a":[-1,1],"b":[1,1],"s":2}},
                    {"type":"N1","lambda":1,"b_sign":"positive"},
                    {"type":"D","lambda":{"kind":"rational","num":2,"den":1}},
                    {"type":"N2","theta_over_pi":{"kind":"rational","num":1,"den":3},"kind":"nontrivial"}]"#;
        let m: M = serde_json::from_str(j).unwrap();
        assert_eq!(m.half_dimension(), 5);
        let back: M = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(m, back);
        let bad = r#"[{"type":"N1","lambda":3,"b_sign":"zero"}]"#;
        assert!(serde_json::from_str::<M>(bad).is_err());
    }
}
