//! Floating-point matrix oracles for the combinatorial data read off normal forms.

mod common;

use cijt::exact::ExactScalar;
use cijt::normal_forms::{BSign, BasicNormalForm, N2Kind, SymplecticClass, Unit, UnitPoint};
use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn rotation(theta: f64) -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[theta.cos(), -theta.sin(), theta.sin(), theta.cos()])
}

fn block_matrix(b: &BasicNormalForm) -> DMatrix<f64> {
    match b {
        BasicNormalForm::N1 { lambda, b } => {
            let l = lambda.as_i8() as f64;
            let off = match b {
                BSign::Negative => -1.0,
                BSign::Zero => 0.0,
                BSign::Positive => 1.0,
            };
            DMatrix::from_row_slice(2, 2, &[l, off, 0.0, l])
        }
        BasicNormalForm::D { lambda } => {
            let l = lambda.to_f64();
            DMatrix::from_row_slice(2, 2, &[l, 0.0, 0.0, 1.0 / l])
        }
        BasicNormalForm::R { theta } => rotation(theta.value().to_f64() * PI),
        BasicNormalForm::N2 { theta, kind } => {
            let r = rotation(theta.value().to_f64() * PI);
            // Off-diagonal block with a nonzero part commuting with rotations.
            let off = match kind {
                N2Kind::Trivial => [0.3, -1.0, 1.0, 0.2],
                N2Kind::Nontrivial => [0.3, 1.0, -1.0, 0.2],
            };
            let mut m = DMatrix::zeros(4, 4);
            m.view_mut((0, 0), (2, 2)).copy_from(&r);
            m.view_mut((2, 2), (2, 2)).copy_from(&r);
            m.view_mut((0, 2), (2, 2))
                .copy_from(&DMatrix::from_row_slice(2, 2, &off));
            m
        }
    }
}

fn class_matrix(c: &SymplecticClass) -> DMatrix<f64> {
    let n: usize = c.blocks().iter().map(|b| b.dimension()).sum();
    let mut m = DMatrix::zeros(n, n);
    let mut at = 0;
    for b in c.blocks() {
        let bm = block_matrix(b);
        let k = bm.nrows();
        m.view_mut((at, at), (k, k)).copy_from(&bm);
        at += k;
    }
    m
}

fn kernel_dim(a: DMatrix<Complex<f64>>) -> usize {
    let sv = a.clone().svd(false, false).singular_values;
    // Absolute threshold: block entries are O(1) except hyperbolic powers, whose
    // small singular value stays near 1.
    sv.iter().filter(|&&s| s < 1e-7).count()
}

fn complexify(m: &DMatrix<f64>) -> DMatrix<Complex<f64>> {
    m.map(|x| Complex::new(x, 0.0))
}

#[test]
fn nullity_against_matrix_rank() {
    let pool = common::surd_pool::<BigInt>();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let blocks = (0..3)
            .map(|_| common::random_block(&mut rng, &pool))
            .collect();
        let c = SymplecticClass::new(blocks).unwrap();
        // Nullity is additive over the block decomposition; ranks are taken per block
        // so a large hyperbolic power does not swamp the tolerance.
        let mats: Vec<_> = c.blocks().iter().map(block_matrix).collect();
        let mut pows: Vec<_> = mats
            .iter()
            .map(|b| DMatrix::identity(b.nrows(), b.nrows()))
            .collect();
        for k in 1..=28u64 {
            let mut total = 0;
            for (p, b) in pows.iter_mut().zip(&mats) {
                *p = &*p * b;
                total += kernel_dim(complexify(&(&*p - DMatrix::identity(b.nrows(), b.nrows()))));
            }
            assert_eq!(c.nullity(k), total, "{c} at m = {k}");
        }
    }
}

#[test]
fn splitting_numbers_bounded_by_eigenspace() {
    let pool = common::surd_pool::<BigInt>();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..300 {
        let blocks = (0..3)
            .map(|_| common::random_block(&mut rng, &pool))
            .collect();
        let c = SymplecticClass::new(blocks).unwrap();
        let m = complexify(&class_matrix(&c));
        let n = m.nrows();
        for (w, mult) in c.unit_spectrum() {
            let z = match &w {
                UnitPoint::One => Complex::new(1.0, 0.0),
                UnitPoint::MinusOne => Complex::new(-1.0, 0.0),
                UnitPoint::Angle(t) => Complex::from_polar(1.0, t.value().to_f64() * PI),
            };
            let geo = kernel_dim(&m - DMatrix::identity(n, n) * z);
            let s = c.splitting_numbers(&w);
            assert!(
                s.plus <= geo && s.minus <= geo,
                "{c} at {w:?}: {s:?} vs {geo}"
            );
            assert!(geo <= mult);
        }
    }
}

#[test]
fn n1_splitting_table() {
    for (lam, b, expect) in [
        (1, BSign::Positive, (1, 1)),
        (1, BSign::Zero, (1, 1)),
        (1, BSign::Negative, (0, 0)),
        (-1, BSign::Negative, (1, 1)),
        (-1, BSign::Zero, (1, 1)),
        (-1, BSign::Positive, (0, 0)),
    ] {
        let blk = BasicNormalForm::<BigInt>::n1(lam, b).unwrap();
        let c = SymplecticClass::new(vec![blk.clone()]).unwrap();
        let w = if lam == 1 {
            UnitPoint::One
        } else {
            UnitPoint::MinusOne
        };
        let s = c.splitting_numbers(&w);
        assert_eq!((s.plus, s.minus), expect, "N1({lam}, {b:?})");
        assert_eq!(
            matches!(
                blk,
                BasicNormalForm::N1 {
                    lambda: Unit::Plus,
                    ..
                }
            ),
            lam == 1
        );
    }
}

#[test]
fn rotation_blocks_match_exact_angles() {
    let x = ExactScalar::<BigInt>::surd_i64(-1, 1, 1, 1, 2).unwrap();
    let c = SymplecticClass::new(vec![common::rot(x.clone())]).unwrap();
    let m = class_matrix(&c);
    let (re, im) = (m[(0, 0)], m[(1, 0)]);
    assert!((im.atan2(re) - x.to_f64() * PI).abs() < 1e-12);
}
