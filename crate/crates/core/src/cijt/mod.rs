//! Enhanced common index jump tuples: selection problems, vertices, the
//! Diophantine search and exact certification.

mod search;
mod verify;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{best_lower_rational, frac_mult, int, ExactInt, ExactScalar, SurdSum};
use crate::index_iteration::PathClass;
use crate::normal_forms::{AngleEntry, UnitPoint};

pub use search::{find_tuple, find_tuple_in, opposite_tuple};
pub use verify::{check_windows, verify_tuple, xi_minus, xi_plus, Check, VerificationReport};

/// Denominator cap for the certified rational lower bound on `delta_0`.
pub const DELTA_ZERO_MAX_DEN: i64 = 1_000_000;

/// Least `M` with `M * theta / pi` integral for every rational eigenvalue angle; 1 if none.
pub fn common_period<I: ExactInt>(paths: &[PathClass<I>]) -> u64 {
    paths
        .iter()
        .flat_map(|p| p.monodromy.rational_angle_denominators())
        .fold(I::one(), |acc, q| acc.lcm(&q))
        .to_u64()
        .expect("common period fits u64")
}

/// Certified rational lower bound on `min(1/2, {h theta/2pi}, 1 - {h theta/2pi})`
/// over irrational eigenvalue angles and `1 <= h <= m_bar`.
pub fn delta_zero<I: ExactInt>(paths: &[PathClass<I>], m_bar: u64) -> Ratio<I> {
    let half = Ratio::new(I::one(), int(2));
    let mut best: Option<ExactScalar<I>> = None;
    for p in paths {
        for (w, _) in p.monodromy.unit_spectrum() {
            let UnitPoint::Angle(t) = w else { continue };
            if t.is_rational() {
                continue;
            }
            let turns = t.turns();
            for h in 1..=m_bar as i64 {
                let g = frac_mult(&turns, h);
                let other = g.neg().add_ratio(&Ratio::one());
                let d = g.min(other);
                if best.as_ref().is_none_or(|b| d < *b) {
                    best = Some(d);
                }
            }
        }
    }
    match best {
        None => half,
        Some(x) => best_lower_rational(&x, &int(DELTA_ZERO_MAX_DEN)).min(half),
    }
}

/// `min(1/200, delta_0 / 2)`.
pub fn default_delta<I: ExactInt>(paths: &[PathClass<I>], m_bar: u64) -> Ratio<I> {
    let d0 = delta_zero(paths, m_bar) / int::<I>(2);
    d0.min(Ratio::new(I::one(), int(200)))
}

/// One coordinate of a cube vertex. `Free` marks coordinates the search does
/// not constrain: rational mean indices and rational angles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bit {
    Zero,
    One,
    Free,
}

impl Bit {
    pub fn complement(self) -> Bit {
        match self {
            Bit::Zero => Bit::One,
            Bit::One => Bit::Zero,
            Bit::Free => Bit::Free,
        }
    }

    /// Whether a realized bit satisfies this demanded bit.
    pub fn admits(self, realized: Bit) -> bool {
        self == Bit::Free || self == realized
    }

    fn as_char(self) -> char {
        match self {
            Bit::Zero => '0',
            Bit::One => '1',
            Bit::Free => '*',
        }
    }
}

/// A vertex of `[0,1]^l`: the `q` bits `chi_k` followed by one bit per unit
/// of `S-` weight of each path's eigenvalue angles. An angle bit is 1 when
/// `{m_k theta/pi}` sits just below an integer and 0 when just above.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex(pub Vec<Bit>);

impl Vertex {
    pub fn complement(&self) -> Vertex {
        Vertex(self.0.iter().map(|b| b.complement()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|b| write!(f, "{}", b.as_char()))
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(Bit::Zero),
                '1' => Ok(Bit::One),
                '*' => Ok(Bit::Free),
                _ => Err(Error::InvalidProblem(format!(
                    "vertex bit {c:?} is not 0, 1 or *"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Vertex)
    }
}

impl Serialize for Vertex {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexSpec {
    /// Accept whichever vertex the first admissible `N` realizes.
    Auto,
    Bits(Vertex),
    /// The vertex opposite to the given one.
    Opposite(Vertex),
}

impl VertexSpec {
    pub(crate) fn demanded(&self) -> Option<Vertex> {
        match self {
            VertexSpec::Auto => None,
            VertexSpec::Bits(v) => Some(v.clone()),
            VertexSpec::Opposite(v) => Some(v.complement()),
        }
    }
}

/// Paths plus search parameters for tuple selection.
#[derive(Debug, Clone)]
pub struct SelectionProblem<I: ExactInt = BigInt> {
    pub(crate) paths: Vec<PathClass<I>>,
    pub(crate) delta: Ratio<I>,
    pub(crate) requested_delta: Ratio<I>,
    pub(crate) m_bar: u64,
    pub(crate) n_bound: u64,
    pub(crate) n_multiple_of: u64,
    pub(crate) coupling: Option<Ratio<I>>,
    pub(crate) period: u64,
    pub(crate) mean: Vec<SurdSum<I>>,
    /// `1 / (M * mean index)` per path.
    pub(crate) inv_mean: Vec<SurdSum<I>>,
    pub(crate) entries: Vec<Vec<AngleEntry<I>>>,
}

impl<I: ExactInt> SelectionProblem<I> {
    /// Validates the paths and clamps `delta` below `delta_0`.
    pub fn new(paths: Vec<PathClass<I>>, delta: Ratio<I>, m_bar: u64) -> Result<Self> {
        if paths.is_empty() {
            return Err(Error::InvalidProblem("need at least one path".into()));
        }
        if m_bar == 0 {
            return Err(Error::InvalidProblem("m_bar must be positive".into()));
        }
        let half = Ratio::new(I::one(), int(2));
        if delta <= Ratio::zero() || delta >= half {
            return Err(Error::InvalidProblem(format!(
                "delta = {delta} must lie in (0, 1/2)"
            )));
        }
        let period = common_period(&paths);
        let mut mean = Vec::with_capacity(paths.len());
        let mut inv_mean = Vec::with_capacity(paths.len());
        for (k, p) in paths.iter().enumerate() {
            let mi = p.mean_index();
            if mi.signum()? != Ordering::Greater {
                return Err(Error::NonPositiveMeanIndex(format!("path {k} ({mi})")));
            }
            inv_mean.push(mi.mul_int(period as i64).recip()?);
            mean.push(mi);
        }
        let d0 = delta_zero(&paths, m_bar);
        let requested_delta = delta.clone();
        let delta = if delta < d0 { delta } else { d0 / int::<I>(2) };
        let entries = paths.iter().map(|p| p.monodromy.angle_entries()).collect();
        Ok(SelectionProblem {
            paths,
            delta,
            requested_delta,
            m_bar,
            n_bound: 100_000_000,
            n_multiple_of: 1,
            coupling: None,
            period,
            mean,
            inv_mean,
            entries,
        })
    }

    pub fn with_n_bound(mut self, bound: u64) -> Self {
        self.n_bound = bound.max(1);
        self
    }

    pub fn with_n_multiple_of(mut self, k: u64) -> Self {
        self.n_multiple_of = k.max(1);
        self
    }

    /// Also require `|{N / (M mean_k)} - chi_k| < eps` for every path.
    pub fn with_coupling(mut self, eps: Ratio<I>) -> Self {
        self.coupling = Some(eps);
        self
    }

    pub fn paths(&self) -> &[PathClass<I>] {
        &self.paths
    }

    pub fn delta(&self) -> &Ratio<I> {
        &self.delta
    }

    /// Whether `delta` had to be shrunk below the requested value.
    pub fn delta_was_shrunk(&self) -> bool {
        self.delta != self.requested_delta
    }

    pub fn m_bar(&self) -> u64 {
        self.m_bar
    }

    pub fn n_bound(&self) -> u64 {
        self.n_bound
    }

    pub fn n_multiple_of(&self) -> u64 {
        self.n_multiple_of
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn mean_indices(&self) -> &[SurdSum<I>] {
        &self.mean
    }

    /// `l = q + sum_k mu_k`.
    pub fn vertex_len(&self) -> usize {
        self.paths.len()
            + self
                .entries
                .iter()
                .flatten()
                .map(|e| e.weight)
                .sum::<usize>()
    }
}

/// A certified `(N, m_1, ..., m_q)`.
#[derive(Debug, Clone, Serialize)]
#[serde(bound = "")]
pub struct CijtTuple<I: ExactInt = BigInt> {
    #[serde(rename = "N")]
    pub n: u64,
    pub m: Vec<u64>,
    pub chi: Vec<u8>,
    pub vertex: Vertex,
    #[serde(rename = "Delta")]
    pub deltas: Vec<usize>,
    #[serde(rename = "M_bar")]
    pub period: u64,
    pub delta: ExactScalar<I>,
    pub m_bar: u64,
    pub report: VerificationReport,
}

/// `m_k` for the given `N` and `chi_k`: `m_k = ([N/(M i_k)] + chi_k) M`.
pub fn iterate_for<I: ExactInt>(
    problem: &SelectionProblem<I>,
    k: usize,
    n: u64,
    chi: u8,
) -> Result<u64> {
    let x = problem.inv_mean[k].mul_int(n as i64);
    let fl = x.floor()?;
    let base = (fl + BigInt::from(chi)).to_u64().ok_or(Error::Overflow)?;
    base.checked_mul(problem.period).ok_or(Error::Overflow)
}

/// Least `m` with `i(gamma, m) >= i(gamma, 1) + 2 budget`, maximized over paths.
pub fn m_bar_for_paths<I: ExactInt>(paths: &[PathClass<I>], budget: &[i64]) -> Result<u64> {
    let mut out = 1;
    for (k, p) in paths.iter().enumerate() {
        let mi = p.mean_index();
        if mi.signum()? != Ordering::Greater {
            return Err(Error::NonPositiveMeanIndex(format!("path {k} ({mi})")));
        }
        let target = p.initial_index + 2 * budget[k];
        // |i(m) - m * mean| <= offset, so the target is reached once m * mean >= target + offset.
        let need = SurdSum::from_int(target + p.offset()).div(&mi)?.floor()?;
        let cap = need.to_u64().unwrap_or(0) + 2;
        let m = (1..=cap).find(|&m| p.index(m) >= target).ok_or_else(|| {
            Error::InvalidProblem(format!("index of path {k} never reaches {target}"))
        })?;
        out = out.max(m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_forms::{hyperbolic, BasicNormalForm, SymplecticClass};

    type S = ExactScalar<BigInt>;

    fn path(i1: i64, blocks: Vec<BasicNormalForm>) -> PathClass {
        PathClass::new(i1, SymplecticClass::new(blocks).unwrap())
    }

    fn rot(x: S) -> BasicNormalForm {
        BasicNormalForm::rotation(x).unwrap()
    }

    fn q(n: i64, d: i64) -> S {
        S::from_ratio(Ratio::new(n.into(), d.into()))
    }

    #[test]
    fn periods() {
        assert_eq!(common_period(&[path(1, vec![hyperbolic(2)])]), 1);
        assert_eq!(
            common_period(&[path(1, vec![rot(q(2, 3)), rot(q(1, 2))])]),
            6
        );
        assert_eq!(common_period(&[path(1, vec![rot(q(3, 5))])]), 5);
    }

    #[test]
    fn delta_zero_sqrt2() {
        let p = vec![path(1, vec![rot(S::surd_i64(-1, 1, 1, 1, 2).unwrap())])];
        assert_eq!(
            delta_zero(&[path(1, vec![hyperbolic(2)])], 4),
            Ratio::new(1.into(), 2.into())
        );
        let exact = (2f64.sqrt() - 1.0) / 2.0;
        for mb in [1, 3] {
            let d = delta_zero(&p, mb);
            let f = d.numer().to_f64().unwrap() / d.denom().to_f64().unwrap();
            assert!(f < exact && exact - f < 1e-6, "{d}");
        }
    }

    #[test]
    fn vertex_text() {
        let v: Vertex = "01*".parse().unwrap();
        assert_eq!(v.complement().to_string(), "10*");
        assert!("0x".parse::<Vertex>().is_err());
    }

    #[test]
    fn m_bar_examples() {
        let h = path(1, vec![hyperbolic(2)]);
        assert_eq!(m_bar_for_paths(std::slice::from_ref(&h), &[1]).unwrap(), 3);
        let r = path(1, vec![rot(S::surd_i64(3, 1, -1, 1, 5).unwrap())]);
        assert_eq!(m_bar_for_paths(std::slice::from_ref(&r), &[1]).unwrap(), 3);
        assert_eq!(m_bar_for_paths(&[h, r], &[1, 1]).unwrap(), 3);
    }
}
