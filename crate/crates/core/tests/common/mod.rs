#![allow(dead_code)]

use cijt::exact::{ExactInt, ExactScalar, RotationAngle};
use cijt::index_iteration::PathClass;
use cijt::normal_forms::{BSign, BasicNormalForm, N2Kind, SymplecticClass};
use num_rational::Ratio;
use rand::Rng;

pub const RADICANDS: [i64; 5] = [2, 3, 5, 6, 7];

/// Twenty irrational `theta / pi` in `(0, 2)`: `{k sqrt s} + c` for `k = 1..4`, `c` alternating.
pub fn surd_pool<I: ExactInt>() -> Vec<ExactScalar<I>> {
    let mut out = Vec::new();
    for (i, &s) in RADICANDS.iter().enumerate() {
        for k in 1..=4i64 {
            let fl = ((k * k * s) as f64).sqrt().floor() as i64;
            let c = ((i as i64) + k) % 2;
            out.push(ExactScalar::surd_i64(c - fl, 1, k, 1, s).unwrap());
        }
    }
    out
}

pub fn rational_angle<I: ExactInt>(p: i64, q: i64) -> ExactScalar<I> {
    ExactScalar::from_ratio(Ratio::new(I::from_i64(p).unwrap(), I::from_i64(q).unwrap()))
}

pub fn rot<I: ExactInt>(x: ExactScalar<I>) -> BasicNormalForm<I> {
    BasicNormalForm::rotation(x).unwrap()
}

pub fn hyp<I: ExactInt>(num: i64, den: i64) -> BasicNormalForm<I> {
    BasicNormalForm::d(rational_angle(num, den)).unwrap()
}

/// A bumpy block: irrational `R`, irrational `N2`, or `D`.
pub fn random_bumpy_block<I: ExactInt>(
    rng: &mut impl Rng,
    pool: &[ExactScalar<I>],
) -> BasicNormalForm<I> {
    match rng.gen_range(0..10) {
        0..=5 => rot(pool[rng.gen_range(0..pool.len())].clone()),
        6 | 7 => {
            let lam = [(2, 1), (-3, 1), (5, 2), (-1, 3), (7, 1)][rng.gen_range(0..5)];
            hyp(lam.0, lam.1)
        }
        _ => {
            let t = RotationAngle::new(pool[rng.gen_range(0..pool.len())].clone()).unwrap();
            let kind = if rng.gen_bool(0.5) {
                N2Kind::Trivial
            } else {
                N2Kind::Nontrivial
            };
            BasicNormalForm::n2(t, kind).unwrap()
        }
    }
}

/// Any block, including degenerate ones.
pub fn random_block<I: ExactInt>(
    rng: &mut impl Rng,
    pool: &[ExactScalar<I>],
) -> BasicNormalForm<I> {
    let signs = [BSign::Negative, BSign::Zero, BSign::Positive];
    match rng.gen_range(0..6) {
        0 => BasicNormalForm::n1(
            if rng.gen_bool(0.5) { 1 } else { -1 },
            signs[rng.gen_range(0..3)],
        )
        .unwrap(),
        1 => {
            let q = rng.gen_range(2..8);
            let mut p = rng.gen_range(1..2 * q);
            if p == q {
                p += 1;
            }
            rot(rational_angle(p, q))
        }
        2 => {
            let q = rng.gen_range(3..7);
            let t = RotationAngle::new(rational_angle(1, q)).unwrap();
            let kind = if rng.gen_bool(0.5) {
                N2Kind::Trivial
            } else {
                N2Kind::Nontrivial
            };
            BasicNormalForm::n2(t, kind).unwrap()
        }
        _ => random_bumpy_block(rng, pool),
    }
}

pub fn random_bumpy_path<I: ExactInt>(
    rng: &mut impl Rng,
    pool: &[ExactScalar<I>],
    blocks: usize,
    i1: i64,
) -> PathClass<I> {
    let b = (0..blocks).map(|_| random_bumpy_block(rng, pool)).collect();
    PathClass::new(i1, SymplecticClass::new(b).unwrap())
}

pub fn random_path<I: ExactInt>(
    rng: &mut impl Rng,
    pool: &[ExactScalar<I>],
    blocks: usize,
    i1: i64,
) -> PathClass<I> {
    let b = (0..blocks).map(|_| random_block(rng, pool)).collect();
    PathClass::new(i1, SymplecticClass::new(b).unwrap())
}
