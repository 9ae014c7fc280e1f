use num_rational::Ratio;

use super::{ExactInt, ExactScalar};

/// Largest `p/q <= x` with `1 <= q <= max_den`; strictly below `x` when `x` is
/// irrational.
///
/// Walks the continued fraction of `x`: the last convergent with an admissible
/// denominator and the extreme semiconvergent after it bracket `x`, and the
/// lower of the two is the answer.
pub fn best_lower_rational<I: ExactInt>(x: &ExactScalar<I>, max_den: &I) -> Ratio<I> {
    assert!(*max_den >= I::one(), "max_den must be positive");
    let floor = x.floor();
    // Convergents (p_{k-1}/q_{k-1}), (p_k/q_k), seeded with 1/0 and a0/1.
    let (mut p0, mut q0) = (I::one(), I::zero());
    let (mut p1, mut q1) = (floor.clone(), I::one());
    let mut rest = x.add_ratio(&Ratio::from_integer(-floor));
    loop {
        if rest.is_zero() {
            // x = p1/q1 exactly.
            return Ratio::new(p1, q1);
        }
        let y = rest.recip().expect("nonzero remainder");
        let a = y.floor();
        let q2 = a.clone() * q1.clone() + q0.clone();
        if q2 > *max_den {
            let t = (max_den.clone() - q0.clone()) / q1.clone();
            let semi = Ratio::new(t.clone() * p1.clone() + p0, t * q1.clone() + q0);
            let conv = Ratio::new(p1, q1);
            let below = |r: &Ratio<I>| x.cmp_ratio(r) != std::cmp::Ordering::Less;
            return match (below(&conv), below(&semi)) {
                (true, true) => conv.max(semi),
                (true, false) => conv,
                (false, true) => semi,
                (false, false) => unreachable!("Farey neighbours straddle x"),
            };
        }
        let p2 = a.clone() * p1.clone() + p0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        rest = y.add_ratio(&Ratio::from_integer(-a));
    }
}
