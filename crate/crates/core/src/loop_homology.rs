//! Betti numbers of the free loop space (relative to constant loops, modulo
//! the circle action) for manifolds with `H*(M; Q) = T_{d,n+1}(x)`.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, ExactInt};

/// `(d, n)`: rational cohomology truncated polynomial in a degree-`d` class, `x^{n+1} = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawShape", into = "RawShape")]
pub struct CohomologyShape {
    d: u64,
    n: u64,
}

#[derive(Serialize, Deserialize)]
struct RawShape {
    d: u64,
    n: u64,
}

impl TryFrom<RawShape> for CohomologyShape {
    type Error = Error;

    fn try_from(r: RawShape) -> Result<Self> {
        CohomologyShape::new(r.d, r.n)
    }
}

impl From<CohomologyShape> for RawShape {
    fn from(s: CohomologyShape) -> Self {
        RawShape { d: s.d, n: s.n }
    }
}

impl CohomologyShape {
    pub fn new(d: u64, n: u64) -> Result<Self> {
        if d < 2 || n < 1 {
            return Err(Error::Dataset(format!(
                "shape needs d >= 2 and n >= 1, got ({d}, {n})"
            )));
        }
        if d % 2 == 1 && n != 1 {
            return Err(Error::Dataset(format!(
                "odd d = {d} forces n = 1, got n = {n}"
            )));
        }
        Ok(CohomologyShape { d, n })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn is_even(&self) -> bool {
        self.d.is_multiple_of(2)
    }

    /// `dim M = d n`.
    pub fn manifold_dim(&self) -> u64 {
        self.d * self.n
    }

    /// Half-dimension of the linearized Poincare map, `dn - 1`.
    pub fn poincare_half_dim(&self) -> u64 {
        self.d * self.n - 1
    }

    /// `D = d(n+1) - 2` for even `d`; `d - 1` for odd `d`. `N` is taken a multiple of it.
    pub fn period(&self) -> u64 {
        if self.is_even() {
            self.d * (self.n + 1) - 2
        } else {
            self.d - 1
        }
    }

    /// Least `l` for which the closed form of the partial Betti sum applies.
    pub fn closed_form_start(&self) -> u64 {
        if self.is_even() {
            self.d * self.n - 1
        } else {
            self.d - 1
        }
    }
}

fn r<I: ExactInt>(n: i64, d: i64) -> Ratio<I> {
    Ratio::new(int(n), int(d))
}

fn frac<I: ExactInt>(x: Ratio<I>) -> Ratio<I> {
    x.clone() - x.floor()
}

/// `B(d, n)`.
pub fn resonance_constant<I: ExactInt>(shape: CohomologyShape) -> Ratio<I> {
    let (d, n) = (shape.d as i64, shape.n as i64);
    if shape.is_even() {
        r(-n * (n + 1) * d, 2 * d * (n + 1) - 4)
    } else {
        r(d + 1, 2 * d - 2)
    }
}

/// `b_p`, with `Omega(d, n)` read as `p - (d-1) = iD + jd`, `i >= 1`, `0 <= j <= n-1`.
pub fn betti(shape: CohomologyShape, p: u64) -> u64 {
    let (d, n) = (shape.d, shape.n);
    if !shape.is_even() {
        let in_k = p >= 2 * (d - 1) && p.is_multiple_of(d - 1);
        if in_k {
            2
        } else if p >= d - 1 && (p - (d - 1)).is_multiple_of(2) {
            1
        } else {
            0
        }
    } else {
        if p.is_multiple_of(2) || p + 2 <= d {
            return 0;
        }
        let t = p - (d - 1);
        if t < (n - 1) * d {
            return t / d + 1;
        }
        if in_omega(shape, p) {
            n + 1
        } else {
            n
        }
    }
}

fn in_omega(shape: CohomologyShape, p: u64) -> bool {
    let (d, n) = (shape.d, shape.n);
    let big_d = shape.period();
    if p.is_multiple_of(2) || p < d - 1 {
        return false;
    }
    let t = p - (d - 1);
    (1..=t / big_d).any(|i| {
        let rest = t - i * big_d;
        rest.is_multiple_of(d) && rest / d < n
    })
}

/// `sum_{p <= l} b_p` by direct summation.
pub fn betti_sum_direct(shape: CohomologyShape, l: u64) -> u64 {
    (0..=l).map(|p| betti(shape, p)).sum()
}

/// `epsilon_{d,n}(l)` for even `d`.
pub fn epsilon_correction<I: ExactInt>(shape: CohomologyShape, l: u64) -> Result<Ratio<I>> {
    if !shape.is_even() {
        return Err(Error::Hypothesis(
            "epsilon_{d,n} is defined for even d".into(),
        ));
    }
    let (d, n) = (shape.d as i64, shape.n as i64);
    let big_d = shape.period() as i64;
    let u: Ratio<I> = frac(r(l as i64 - (d - 1), big_d));
    let t1 = frac(u.clone() * r(big_d, d * n));
    let t2 = (r::<I>(2, d) + r(d - 2, d * n)) * u.clone();
    let t3 = frac(u.clone() * r(big_d, 2)) * r(n, 1);
    let t4 = frac(u * r(big_d, d));
    Ok(t1 - t2 - t3 - t4)
}

/// `sum_{p <= l} b_p` by the closed form; `l` must be at least [`CohomologyShape::closed_form_start`].
pub fn betti_sum_closed<I: ExactInt>(shape: CohomologyShape, l: u64) -> Result<Ratio<I>> {
    let min = shape.closed_form_start();
    if l < min {
        return Err(Error::PartialSumRange { l, min });
    }
    let (d, n) = (shape.d as i64, shape.n as i64);
    let li = l as i64;
    if shape.is_even() {
        let big_d = shape.period() as i64;
        Ok(
            r::<I>(n * (n + 1) * d, 2 * big_d) * r(li - (d - 1), 1) - r(n * (n - 1) * d, 4)
                + r(1, 1)
                + epsilon_correction(shape, l)?,
        )
    } else {
        Ok(r(li / (d - 1) + li / 2, 1) - r(d - 1, 2))
    }
}

/// Both evaluations of the partial Betti sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialSums {
    pub l: u64,
    pub closed: String,
    pub direct: u64,
    pub agree: bool,
}

pub fn betti_partial_sum(shape: CohomologyShape, l: u64) -> Result<PartialSums> {
    let closed = betti_sum_closed::<i128>(shape, l)?;
    let direct = betti_sum_direct(shape, l);
    Ok(PartialSums {
        l,
        closed: closed.to_string(),
        direct,
        agree: closed == Ratio::from_integer(direct as i128),
    })
}

/// `sum_{p <= l} b_p`, closed form when admissible.
pub fn betti_sum(shape: CohomologyShape, l: u64) -> i128 {
    match betti_sum_closed::<i128>(shape, l) {
        Ok(v) if v.is_integer() => v.to_integer(),
        _ => betti_sum_direct(shape, l) as i128,
    }
}

/// `sum_{p <= l} (-1)^p b_p`. All Betti numbers sit in odd degrees for even
/// `d` and in even degrees for odd `d`, so this is a signed partial sum.
pub fn alternating_betti_sum(shape: CohomologyShape, l: u64) -> i128 {
    let s = betti_sum(shape, l);
    if shape.is_even() {
        -s
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sh(d: u64, n: u64) -> CohomologyShape {
        CohomologyShape::new(d, n).unwrap()
    }

    #[test]
    fn resonance_values() {
        assert_eq!(resonance_constant::<i64>(sh(2, 1)), Ratio::from_integer(-1));
        assert_eq!(resonance_constant::<i64>(sh(3, 1)), Ratio::from_integer(1));
        assert_eq!(resonance_constant::<i64>(sh(4, 2)), Ratio::new(-6, 5));
    }

    #[test]
    fn betti_values() {
        assert_eq!(betti(sh(3, 1), 2), 1);
        assert_eq!(betti(sh(3, 1), 4), 2);
        assert_eq!(betti(sh(2, 1), 1), 1);
        assert_eq!(betti(sh(2, 1), 3), 2);
        for s in [sh(2, 1), sh(3, 1), sh(4, 2)] {
            assert_eq!(betti(s, 0), 0);
        }
        assert!(CohomologyShape::new(3, 2).is_err());
    }

    #[test]
    fn partial_sums() {
        let s = betti_partial_sum(sh(3, 1), 4).unwrap();
        assert_eq!((s.direct, s.agree), (3, true));
        let s = betti_partial_sum(sh(3, 1), 7).unwrap();
        assert_eq!((s.direct, s.agree), (5, true));
        let s = betti_partial_sum(sh(2, 1), 5).unwrap();
        assert_eq!((s.direct, s.agree), (5, true));
        assert_eq!(
            betti_partial_sum(sh(4, 2), 3),
            Err(Error::PartialSumRange { l: 3, min: 7 })
        );
    }

    #[test]
    fn epsilon_at_window_edge() {
        for s in [sh(2, 1), sh(4, 2), sh(6, 1), sh(8, 2)] {
            let big_d = s.period();
            let e = epsilon_correction::<i64>(s, 2 * 3 * big_d - 1).unwrap();
            assert_eq!(e, Ratio::new(-(s.d() as i64 - 2), big_d as i64));
        }
        assert_eq!(
            epsilon_correction::<i64>(sh(2, 1), 5).unwrap(),
            Ratio::from_integer(0)
        );
    }

    #[test]
    fn alternating_examples() {
        // (2,1): l = 2N, N a multiple of D = 2 gives -2N + 1.
        for n in [2u64, 4, 10] {
            assert_eq!(alternating_betti_sum(sh(2, 1), 2 * n), -(2 * n as i128) + 1);
        }
        // (3,1): N a multiple of 2 gives N(d+1)/(d-1) - (d-1)/2 = 2N - 1.
        for n in [2u64, 6] {
            assert_eq!(alternating_betti_sum(sh(3, 1), 2 * n), 2 * n as i128 - 1);
        }
    }
}
