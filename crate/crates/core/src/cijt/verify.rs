use num_rational::Ratio;
use serde::Serialize;

use super::{iterate_for, CijtTuple, SelectionProblem};
use crate::error::{Error, Result};
use crate::exact::{
    ceil_mult, frac_mult, int, is_near_lattice, to_i64, ExactInt, ExactScalar, LatticeClass,
};
use crate::index_iteration::{index_iterate, FastIndex};

/// One equation or range condition, both sides rendered as text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub path: usize,
    pub m: i64,
    pub equation: String,
    pub lhs: String,
    pub rhs: String,
    pub ok: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn push(
        &mut self,
        path: usize,
        m: i64,
        equation: &str,
        lhs: impl ToString,
        rhs: impl ToString,
        ok: bool,
    ) {
        self.checks.push(Check {
            path,
            m,
            equation: equation.to_string(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            ok,
        });
    }

    fn same<T: PartialEq + ToString>(
        &mut self,
        path: usize,
        m: i64,
        equation: &str,
        lhs: T,
        rhs: T,
    ) {
        let ok = lhs == rhs;
        self.push(path, m, equation, lhs, rhs, ok);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }

    /// The first mismatch as an error, if any.
    pub fn into_result(self) -> Result<Self> {
        let Some(c) = self.mismatches().next() else {
            return Ok(self);
        };
        Err(Error::Verification {
            path: c.path,
            m: c.m,
            equation: c.equation.clone(),
            lhs: c.lhs.clone(),
            rhs: c.rhs.clone(),
        })
    }
}

fn half<I: ExactInt>(alpha: &ExactScalar<I>) -> ExactScalar<I> {
    alpha.mul_ratio(&Ratio::new(I::one(), int(2)))
}

fn ceil_i64<I: ExactInt>(x: &ExactScalar<I>) -> i64 {
    to_i64(&x.ceil()).expect("bracket fits i64")
}

/// `E({m_k a} + {m a/2}) - E({m_k a}) - E({m a/2})` for `a = theta / pi`.
pub fn xi_plus<I: ExactInt>(m_k: u64, alpha: &ExactScalar<I>, m: u64) -> i64 {
    let f = frac_mult(alpha, m_k as i64);
    let g = frac_mult(&half(alpha), m as i64);
    let s = f.checked_add(&g).expect("same radicand");
    ceil_i64(&s) - ceil_i64(&f) - ceil_i64(&g)
}

/// `E({m_k a} - {m a/2}) - E({m_k a}) + E({m a/2})` for `a = theta / pi`.
pub fn xi_minus<I: ExactInt>(m_k: u64, alpha: &ExactScalar<I>, m: u64) -> i64 {
    let f = frac_mult(alpha, m_k as i64);
    let g = frac_mult(&half(alpha), m as i64);
    let s = f.checked_sub(&g).expect("same radicand");
    ceil_i64(&s) - ceil_i64(&f) + ceil_i64(&g)
}

/// Recomputes every postcondition of the tuple from scratch.
pub fn verify_tuple<I: ExactInt>(
    t: &CijtTuple<I>,
    problem: &SelectionProblem<I>,
) -> VerificationReport {
    verify_parts(problem, t.n, &t.m, &t.chi, &t.deltas)
}

pub(crate) fn verify_parts<I: ExactInt>(
    problem: &SelectionProblem<I>,
    n: u64,
    ms: &[u64],
    chi: &[u8],
    deltas: &[usize],
) -> VerificationReport {
    let mut rep = VerificationReport::default();
    let two_n = 2 * n as i64;
    for (k, p) in problem.paths.iter().enumerate() {
        let mk = ms[k];
        let mki = mk as i64;
        let cls = p.monodromy.clone();
        let s_plus = cls.s_plus_one() as i64;
        let c = cls.crossing_sum() as i64;

        match iterate_for(problem, k, n, chi[k]) {
            Ok(expect) => rep.same(k, 0, "m_k = ([N/(M i_k)] + chi_k) M", mk, expect),
            Err(e) => rep.push(k, 0, "m_k = ([N/(M i_k)] + chi_k) M", mk, e, false),
        }
        rep.push(
            k,
            0,
            "2 m_k > m_bar",
            2 * mk,
            problem.m_bar,
            2 * mk > problem.m_bar,
        );

        let mut delta = 0usize;
        let mut big_i = mki * p.slope();
        for e in &problem.entries[k] {
            let class = is_near_lattice(&e.alpha, mki, &problem.delta);
            let ok = if e.alpha.is_rational() {
                class == LatticeClass::Zero
            } else {
                matches!(class, LatticeClass::Low | LatticeClass::High)
            };
            rep.push(
                k,
                0,
                &format!("{{m_k * {}}} near lattice", e.alpha),
                format!("{class:?}"),
                "zero/low/high",
                ok,
            );
            if class == LatticeClass::Low {
                delta += e.weight;
            }
            big_i += to_i64(&ceil_mult(&e.alpha, mki)).expect("fits i64") * e.weight as i64;
        }
        rep.same(k, 0, "Delta_k", deltas[k], delta);
        rep.same(k, 0, "I(m_k) = N + Delta", big_i, n as i64 + delta as i64);

        let at = |m: i64| index_iterate(p, m as u64);
        rep.same(
            k,
            0,
            "i(2m_k) = 2N - (S+ + C - 2 Delta)",
            at(2 * mki),
            two_n - (s_plus + c - 2 * delta as i64),
        );

        let m_check = cls.m_check();
        let nu1 = cls.nullity(1);
        for m in 1..=problem.m_bar {
            let mi = m as i64;
            let nu_m = cls.nullity(m);
            rep.same(k, mi, "nu(2m_k+m) = nu(m)", cls.nullity(2 * mk + m), nu_m);
            if 2 * mk > m {
                rep.same(k, mi, "nu(2m_k-m) = nu(m)", cls.nullity(2 * mk - m), nu_m);
            }
            if m_check.is_none_or(|mc| m < mc) {
                rep.same(k, mi, "nu(2m_k+m) = nu(1)", cls.nullity(2 * mk + m), nu1);
                if 2 * mk > m {
                    rep.same(k, mi, "nu(2m_k-m) = nu(1)", cls.nullity(2 * mk - m), nu1);
                }
            }

            let i_m = at(mi);
            rep.same(
                k,
                mi,
                "i(2m_k+m) = 2N + i(m)",
                at(2 * mki + mi),
                two_n + i_m,
            );

            let mut q = 0i64;
            let mut xi_sum = 0i64;
            for e in &problem.entries[k] {
                let w = e.weight as i64;
                if frac_mult(&e.alpha, mki).is_zero() && frac_mult(&half(&e.alpha), mi).is_zero() {
                    q += w;
                }
                let xp = xi_plus(mk, &e.alpha, m);
                let xm = xi_minus(mk, &e.alpha, m);
                rep.push(
                    k,
                    mi,
                    &format!("xi+ in {{-1,0}} at {}", e.alpha),
                    xp,
                    "-1|0",
                    xp == -1 || xp == 0,
                );
                rep.push(
                    k,
                    mi,
                    &format!("xi- in {{0,1}} at {}", e.alpha),
                    xm,
                    "0|1",
                    xm == 0 || xm == 1,
                );
                xi_sum += xm * w;
            }
            rep.same(
                k,
                mi,
                "sum xi- S- = C - Delta - Q",
                xi_sum,
                c - delta as i64 - q,
            );
            if 2 * mk > m {
                rep.same(
                    k,
                    mi,
                    "i(2m_k-m) = 2N - i(m) - 2(S+ + Q)",
                    at(2 * mki - mi),
                    two_n - i_m - 2 * (s_plus + q),
                );
            }
        }
    }
    rep
}

/// Jump windows: `i(2m_k - m) <= 2N - margin` for `1 <= m < 2m_k` and
/// `i(2m_k + m) >= 2N + margin` for `1 <= m <= horizon`.
pub fn check_windows<I: ExactInt>(
    t: &CijtTuple<I>,
    problem: &SelectionProblem<I>,
    margin: i64,
    horizon: u64,
) -> Result<()> {
    let two_n = 2 * t.n as i64;
    for (k, p) in problem.paths.iter().enumerate() {
        let fast = FastIndex::new(p);
        let mk = t.m[k];
        for m in 1..2 * mk {
            let v = fast.index(2 * mk - m);
            if v > two_n - margin {
                return Err(window_error(
                    k,
                    m,
                    "i(2m_k-m) <= 2N - margin",
                    v,
                    two_n - margin,
                ));
            }
        }
        for m in 1..=horizon {
            let v = fast.index(2 * mk + m);
            if v < two_n + margin {
                return Err(window_error(
                    k,
                    m,
                    "i(2m_k+m) >= 2N + margin",
                    v,
                    two_n + margin,
                ));
            }
        }
    }
    Ok(())
}

fn window_error(path: usize, m: u64, equation: &str, lhs: i64, rhs: i64) -> Error {
    Error::Verification {
        path,
        m: m as i64,
        equation: equation.into(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type S = ExactScalar<BigInt>;

    #[test]
    fn xi_cases() {
        let a = S::surd_i64(-1, 1, 1, 1, 2).unwrap();
        // {169 a} is just above an integer, {70 a} just below.
        assert_eq!(xi_plus(169, &a, 1), -1);
        assert_eq!(xi_minus(169, &a, 1), 0);
        assert_eq!(xi_plus(70, &a, 1), 0);
        assert_eq!(xi_minus(70, &a, 1), 1);
        let r = S::from_ratio(Ratio::new(2.into(), 3.into()));
        assert_eq!(xi_plus(3, &r, 1), 0);
    }
}
