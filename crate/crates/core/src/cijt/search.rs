//! Ascending scan over admissible `N`: a float screen discards most
//! candidates, survivors are re-derived and certified exactly.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::verify::verify_parts;
use super::{Bit, CijtTuple, SelectionProblem, Vertex, VertexSpec};
use crate::error::{Error, Result};
use crate::exact::{
    ceil_mult, is_near_lattice, ratio_to_f64, to_i64, ExactInt, ExactScalar, LatticeClass, SurdSum,
};

const CHUNK: u64 = 1 << 12;

/// The first certified tuple with `N <= n_bound`.
pub fn find_tuple<I: ExactInt>(
    problem: &SelectionProblem<I>,
    vertex: &VertexSpec,
) -> Result<CijtTuple<I>> {
    find_tuple_in(problem, vertex, 1, problem.n_bound)
}

/// The first certified tuple with `n_min <= N <= n_max`.
pub fn find_tuple_in<I: ExactInt>(
    problem: &SelectionProblem<I>,
    vertex: &VertexSpec,
    n_min: u64,
    n_max: u64,
) -> Result<CijtTuple<I>> {
    let demanded = vertex.demanded();
    if let Some(v) = &demanded {
        if v.len() != problem.vertex_len() {
            return Err(Error::InvalidProblem(format!(
                "vertex has {} bits, the problem needs {}",
                v.len(),
                problem.vertex_len()
            )));
        }
    }
    let scan = Scan::new(problem, demanded);
    let step = problem.n_multiple_of;
    let j_start = n_min.max(1).div_ceil(step);
    let j_end = n_max / step;
    let wave = (rayon::current_num_threads() as u64 * 4).max(4);
    let mut best = (f64::INFINITY, 0u64);
    let mut j0 = j_start;
    while j0 <= j_end {
        let chunks: Vec<(u64, u64)> = (0..wave)
            .map(|c| j0 + c * CHUNK)
            .take_while(|&lo| lo <= j_end)
            .map(|lo| (lo, (lo + CHUNK - 1).min(j_end)))
            .collect();
        let outs: Vec<Result<ChunkOut<I>>> = chunks
            .par_iter()
            .map(|&(lo, hi)| scan.chunk(lo, hi))
            .collect();
        for out in outs {
            let out = out?;
            if out.best.0.total_cmp(&best.0).then(out.best.1.cmp(&best.1)) == Ordering::Less {
                best = out.best;
            }
            if let Some(t) = out.hit {
                return Ok(t);
            }
        }
        j0 = chunks.last().map_or(j_end, |c| c.1) + 1;
    }
    Err(Error::NotFoundWithinBound {
        bound: n_max,
        best_n: best.1,
        best_residual: best.0,
    })
}

/// The tuple at the vertex opposite to `t`'s, with `Delta_k + Delta'_k = C(M_k)` checked.
pub fn opposite_tuple<I: ExactInt>(
    t: &CijtTuple<I>,
    problem: &SelectionProblem<I>,
) -> Result<CijtTuple<I>> {
    let o = find_tuple(problem, &VertexSpec::Opposite(t.vertex.clone()))?;
    for (k, p) in problem.paths.iter().enumerate() {
        let c = p.monodromy.crossing_sum();
        if t.deltas[k] + o.deltas[k] != c {
            return Err(Error::Verification {
                path: k,
                m: o.m[k] as i64,
                equation: "Delta + Delta' = C".into(),
                lhs: (t.deltas[k] + o.deltas[k]).to_string(),
                rhs: c.to_string(),
            });
        }
    }
    Ok(o)
}

struct ChunkOut<I: ExactInt> {
    hit: Option<CijtTuple<I>>,
    best: (f64, u64),
}

struct AngleF {
    alpha: f64,
    rational: bool,
    /// First vertex coordinate of this angle.
    bit: usize,
}

struct PathF {
    inv: f64,
    /// `1/(M mean)` as `p/q` when rational and small.
    inv_exact: Option<(i128, i128)>,
    angles: Vec<AngleF>,
}

enum Screen {
    Pass,
    Fail(f64),
}

struct Scan<'a, I: ExactInt> {
    problem: &'a SelectionProblem<I>,
    demanded: Option<Vertex>,
    paths: Vec<PathF>,
    delta: f64,
    coupling: Vec<Option<f64>>,
}

fn rational_inv<I: ExactInt>(x: &SurdSum<I>) -> Option<(i128, i128)> {
    if !x.is_rational() {
        return None;
    }
    let r = x.rational_part();
    let p: BigInt = r.numer().clone().into();
    let q: BigInt = r.denom().clone().into();
    Some((p.to_i128()?, q.to_i128()?))
}

fn realized(class: LatticeClass) -> Bit {
    match class {
        LatticeClass::Low => Bit::Zero,
        LatticeClass::High => Bit::One,
        _ => Bit::Free,
    }
}

fn compatible(demand: Bit, real: Bit) -> bool {
    demand == Bit::Free || real == Bit::Free || demand == real
}

impl<'a, I: ExactInt> Scan<'a, I> {
    fn new(problem: &'a SelectionProblem<I>, demanded: Option<Vertex>) -> Self {
        let q = problem.paths.len();
        let mut next_bit = q;
        let paths = (0..q)
            .map(|k| {
                let angles = problem.entries[k]
                    .iter()
                    .map(|e| {
                        let a = AngleF {
                            alpha: e.alpha.to_f64(),
                            rational: e.alpha.is_rational(),
                            bit: next_bit,
                        };
                        next_bit += e.weight;
                        a
                    })
                    .collect();
                PathF {
                    inv: problem.inv_mean[k].to_f64(),
                    inv_exact: rational_inv(&problem.inv_mean[k]),
                    angles,
                }
            })
            .collect();
        let delta = ratio_to_f64(&problem.delta);
        let coupling = (0..q)
            .map(|k| {
                let mut tol = problem.coupling.as_ref().map(ratio_to_f64);
                if demanded.as_ref().is_some_and(|v| v.0[k] != Bit::Free) {
                    tol = Some(tol.map_or(delta, |t| t.min(delta)));
                }
                tol
            })
            .collect();
        Scan {
            problem,
            demanded,
            paths,
            delta,
            coupling,
        }
    }

    fn demand(&self, i: usize) -> Bit {
        self.demanded.as_ref().map_or(Bit::Free, |v| v.0[i])
    }

    fn chunk(&self, lo: u64, hi: u64) -> Result<ChunkOut<I>> {
        let mut best = (f64::INFINITY, 0u64);
        for j in lo..=hi {
            let n = j * self.problem.n_multiple_of;
            let mut worst = 0.0f64;
            let mut pass = true;
            for k in 0..self.paths.len() {
                match self.screen(k, n) {
                    Screen::Pass => {}
                    Screen::Fail(r) => {
                        pass = false;
                        worst = worst.max(r);
                    }
                }
            }
            if !pass {
                if worst < best.0 {
                    best = (worst, n);
                }
                continue;
            }
            if let Some(t) = self.certify(n)? {
                return Ok(ChunkOut { hit: Some(t), best });
            }
        }
        Ok(ChunkOut { hit: None, best })
    }

    /// Float pre-filter for path `k`; errs toward `Pass` near decision points.
    fn screen(&self, k: usize, n: u64) -> Screen {
        let p = &self.paths[k];
        let (fl, fr) = match p.inv_exact {
            Some((a, b)) => {
                let t = n as i128 * a;
                let fl = t.div_euclid(b);
                (fl as f64, t.rem_euclid(b) as f64 / b as f64)
            }
            None => {
                let x = n as f64 * p.inv;
                let fl = x.floor();
                let fr = x - fl;
                let eta = x.abs() * 8.0 * f64::EPSILON + 1e-12;
                if fr < eta || 1.0 - fr < eta {
                    return Screen::Pass;
                }
                (fl, fr)
            }
        };
        let mut best_r = f64::INFINITY;
        for chi in [0u8, 1] {
            let chi_bit = if p.inv_exact.is_some() {
                Bit::Free
            } else {
                bit_of(chi)
            };
            if !compatible(self.demand(k), chi_bit) {
                continue;
            }
            let mut r = 0.0f64;
            if let Some(tol) = self.coupling[k] {
                let d = (fr - chi as f64).abs();
                r = r.max(d);
                if d >= tol + 1e-9 {
                    best_r = best_r.min(r);
                    continue;
                }
            }
            let m = (fl + chi as f64) * self.problem.period as f64;
            if m < 1.0 || 2.0 * m <= self.problem.m_bar as f64 {
                continue;
            }
            let mut ok = true;
            for a in &p.angles {
                if a.rational {
                    continue;
                }
                let y = m * a.alpha;
                let fy = y - y.floor();
                let eta = y.abs() * 8.0 * f64::EPSILON + 1e-12;
                let low = fy < self.delta + eta;
                let high = fy > 1.0 - self.delta - eta;
                let want = self.demand(a.bit);
                let dist = match want {
                    Bit::Zero => fy,
                    Bit::One => 1.0 - fy,
                    Bit::Free => fy.min(1.0 - fy),
                };
                r = r.max(dist);
                let fits = match want {
                    Bit::Zero => low,
                    Bit::One => high,
                    Bit::Free => low || high,
                };
                ok &= fits;
            }
            if ok {
                return Screen::Pass;
            }
            best_r = best_r.min(r);
        }
        Screen::Fail(best_r)
    }

    /// Exact re-derivation of the candidate at `N`; `None` if any condition fails.
    fn certify(&self, n: u64) -> Result<Option<CijtTuple<I>>> {
        let q = self.problem.paths.len();
        let mut ms = Vec::with_capacity(q);
        let mut chis = Vec::with_capacity(q);
        let mut deltas = Vec::with_capacity(q);
        let mut bits = vec![Bit::Free; self.problem.vertex_len()];
        for k in 0..q {
            match self.certify_path(k, n, &mut bits)? {
                Some((m, chi, d)) => {
                    ms.push(m);
                    chis.push(chi);
                    deltas.push(d);
                }
                None => return Ok(None),
            }
        }
        let report = verify_parts(self.problem, n, &ms, &chis, &deltas);
        if !report.passed() {
            return Ok(None);
        }
        Ok(Some(CijtTuple {
            n,
            m: ms,
            chi: chis,
            vertex: Vertex(bits),
            deltas,
            period: self.problem.period,
            delta: ExactScalar::from_ratio(self.problem.delta.clone()),
            m_bar: self.problem.m_bar,
            report,
        }))
    }

    fn certify_path(&self, k: usize, n: u64, bits: &mut [Bit]) -> Result<Option<(u64, u8, usize)>> {
        let problem = self.problem;
        let x = problem.inv_mean[k].mul_int(n as i64);
        let fl = x.floor()?;
        let fr = x.add_ratio(&Ratio::from_integer(crate::exact::from_bigint(
            -fl.clone(),
        )?));
        let rational_mean = x.is_rational();
        let tol = self.exact_tolerance(k);
        for chi in [0u8, 1] {
            let chi_bit = if rational_mean {
                Bit::Free
            } else {
                bit_of(chi)
            };
            if !compatible(self.demand(k), chi_bit) {
                continue;
            }
            if let Some(tol) = &tol {
                let near = if chi == 0 {
                    fr.cmp_ratio(tol)? == Ordering::Less
                } else {
                    fr.cmp_ratio(&(Ratio::one() - tol.clone()))? == Ordering::Greater
                };
                if !near {
                    continue;
                }
            }
            let Some(m) = (fl.clone() + BigInt::from(chi))
                .to_u64()
                .and_then(|b| b.checked_mul(problem.period))
            else {
                continue;
            };
            if m == 0 || 2 * m <= problem.m_bar {
                continue;
            }
            let mi = m as i64;
            let mut local = Vec::new();
            let mut delta = 0usize;
            let mut big_i = mi * problem.paths[k].slope();
            let mut ok = true;
            let mut pos = self.paths[k].angles.first().map_or(0, |a| a.bit);
            for e in &problem.entries[k] {
                let class = is_near_lattice(&e.alpha, mi, &problem.delta);
                let real = realized(class);
                let valid = if e.alpha.is_rational() {
                    class == LatticeClass::Zero
                } else {
                    matches!(class, LatticeClass::Low | LatticeClass::High)
                };
                if !valid || (pos..pos + e.weight).any(|i| !compatible(self.demand(i), real)) {
                    ok = false;
                    break;
                }
                for i in pos..pos + e.weight {
                    local.push((i, real));
                }
                pos += e.weight;
                if class == LatticeClass::Low {
                    delta += e.weight;
                }
                big_i += to_i64(&ceil_mult(&e.alpha, mi))? * e.weight as i64;
            }
            if !ok || big_i != n as i64 + delta as i64 {
                continue;
            }
            bits[k] = chi_bit;
            for (i, b) in local {
                bits[i] = b;
            }
            return Ok(Some((m, chi, delta)));
        }
        Ok(None)
    }

    fn exact_tolerance(&self, k: usize) -> Option<Ratio<I>> {
        let mut tol = self.problem.coupling.clone();
        if self.demand(k) != Bit::Free {
            let d = self.problem.delta.clone();
            tol = Some(match tol {
                Some(t) if t < d => t,
                _ => d,
            });
        }
        tol.filter(|t| !t.is_zero())
    }
}

fn bit_of(chi: u8) -> Bit {
    if chi == 0 {
        Bit::Zero
    } else {
        Bit::One
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index_iteration::PathClass;
    use crate::normal_forms::{hyperbolic, BasicNormalForm, SymplecticClass};

    type S = ExactScalar<BigInt>;

    fn sqrt2_problem() -> SelectionProblem {
        let p = PathClass::new(
            1,
            SymplecticClass::new(vec![BasicNormalForm::rotation(
                S::surd_i64(-1, 1, 1, 1, 2).unwrap(),
            )
            .unwrap()])
            .unwrap(),
        );
        SelectionProblem::new(vec![p], Ratio::new(1.into(), 100.into()), 1).unwrap()
    }

    #[test]
    fn sqrt2_auto_and_opposite() {
        let pr = sqrt2_problem();
        assert!(!pr.delta_was_shrunk());
        let t = find_tuple(&pr, &VertexSpec::Auto).unwrap();
        assert_eq!(
            (t.n, t.m.clone(), t.deltas.clone()),
            (29, vec![70], vec![0])
        );
        assert_eq!(t.vertex.to_string(), "01");
        let o = opposite_tuple(&t, &pr).unwrap();
        assert_eq!(
            (o.n, o.m.clone(), o.deltas.clone()),
            (70, vec![169], vec![1])
        );
        assert_eq!(o.vertex.to_string(), "10");
    }

    #[test]
    fn hyperbolic_any_n() {
        let p: PathClass = PathClass::new(1, SymplecticClass::new(vec![hyperbolic(2)]).unwrap());
        let pr = SelectionProblem::new(vec![p], Ratio::new(1.into(), 100.into()), 1).unwrap();
        let t = find_tuple(&pr, &VertexSpec::Auto).unwrap();
        assert_eq!((t.n, t.m.clone(), t.deltas.clone()), (1, vec![1], vec![0]));
        let t = find_tuple_in(&pr, &VertexSpec::Auto, 17, 100).unwrap();
        assert_eq!((t.n, t.m.clone()), (17, vec![17]));
    }

    #[test]
    fn exhaustion_reports_near_miss() {
        let pr = sqrt2_problem().with_n_bound(20);
        match find_tuple(&pr, &VertexSpec::Auto) {
            Err(Error::NotFoundWithinBound {
                bound,
                best_n,
                best_residual,
            }) => {
                assert_eq!(bound, 20);
                assert!(best_n >= 1 && best_residual > 0.01);
            }
            other => panic!("{other:?}"),
        }
    }
}
