//! Contrapositive pipelines: either the counting bounds are certified, or the
//! dataset is shown inconsistent with a finite bumpy set of closed geodesics.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{
    gamma_invariant, jump_census, m_bar_for_geodesics, morse_alternating_sum, resonance_check,
    shape_error, weighted_gamma_sum, Bucket, GeodesicDataset, JumpCensus, ResonanceReport,
};
use crate::cijt::{
    default_delta, find_tuple, opposite_tuple, CijtTuple, SelectionProblem, VertexSpec,
};
use crate::error::{Error, Result};
use crate::exact::{int, ExactInt};
use crate::loop_homology::{
    alternating_betti_sum, betti, epsilon_correction, resonance_constant, CohomologyShape,
};

#[derive(Debug, Clone)]
pub struct PipelineConfig<I: ExactInt = BigInt> {
    pub delta: Option<Ratio<I>>,
    pub n_bound: u64,
    /// Extra divisibility for `N`, on top of the shape period.
    pub n_multiple_of: u64,
    pub m_bar: Option<u64>,
}

impl<I: ExactInt> Default for PipelineConfig<I> {
    fn default() -> Self {
        PipelineConfig {
            delta: None,
            n_bound: 100_000_000,
            n_multiple_of: 1,
            m_bar: None,
        }
    }
}

/// `sum_k 2 m_k gamma_k` against `2 N B(d, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaIdentityCheck {
    pub lhs: String,
    pub rhs: String,
    /// `2NB` is an integer, so `|lhs - rhs| < 1` forces equality.
    pub integral: bool,
    pub pass: bool,
}

/// `sum_{p <= l} (-1)^p M_p` three ways, and the Morse inequality at degree `l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainCheck {
    pub degree: u64,
    pub two_n_b: String,
    pub plus_odd: usize,
    pub plus_even: usize,
    /// `2NB + plus_odd - plus_even`.
    pub chain_value: String,
    /// `sum_k 2 m_k gamma_k + plus_odd - plus_even`.
    pub gamma_value: String,
    pub morse_alternating_sum: i128,
    pub betti_alternating_sum: i128,
    pub identity_holds: bool,
    /// `(-1)^l (sum M - sum b) >= 0`.
    pub inequality_holds: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound = "")]
pub struct Theorem11Report<I: ExactInt = BigInt> {
    pub shape: CohomologyShape,
    pub q: usize,
    pub resonance: ResonanceReport<I>,
    pub coupling: String,
    pub tuple: CijtTuple<I>,
    pub opposite: CijtTuple<I>,
    pub census: JumpCensus,
    pub opposite_census: JumpCensus,
    pub gamma_identity: [GammaIdentityCheck; 2],
    pub chain: [ChainCheck; 2],
    /// `dn(n+1)/4`.
    pub required: String,
    /// The lower bound for `N_+^o - N_+^e` from the Betti closed form.
    pub n_tilde: String,
    pub n_tilde_matches: bool,
    pub bound_plus_odd: bool,
    pub bound_minus_odd: bool,
    pub symmetry: bool,
    /// Records with odd `i(c^{2m_k}) != 2N`, each checked non-hyperbolic.
    pub non_hyperbolic: Vec<String>,
    pub count_bound: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound = "")]
pub struct Theorem15Report<I: ExactInt = BigInt> {
    pub shape: CohomologyShape,
    pub q: usize,
    pub resonance: ResonanceReport<I>,
    pub coupling: String,
    pub tuple: CijtTuple<I>,
    pub opposite: CijtTuple<I>,
    pub census: JumpCensus,
    pub opposite_census: JumpCensus,
    pub gamma_identity: [GammaIdentityCheck; 2],
    pub chain: [ChainCheck; 2],
    /// `(d-1)/2`.
    pub required: String,
    pub bound_plus_even: bool,
    pub bound_minus_even: bool,
    pub symmetry: bool,
    /// Records with `i(c^{2m_k}) = 2N` and even difference.
    pub records_at_2n: Vec<String>,
    pub morse_at_2n: u64,
    pub betti_at_2n: u64,
    pub degree_2n_holds: bool,
    pub even_classified: usize,
    pub non_hyperbolic: Vec<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound = "")]
pub struct Theorem18Report<I: ExactInt = BigInt> {
    pub shape: CohomologyShape,
    pub q: usize,
    pub resonance: ResonanceReport<I>,
    pub tuple: CijtTuple<I>,
    pub gamma_identity: GammaIdentityCheck,
    pub two_n_b: String,
    pub morse_alternating_sum: i128,
    pub betti_alternating_sum: i128,
    /// `sum (-1)^p b_p - 2NB`.
    pub gap: String,
    pub expected_gap: String,
    pub gap_exact: bool,
    pub contradiction_found: bool,
}

struct Run<I: ExactInt> {
    problem: SelectionProblem<I>,
    coupling: Ratio<I>,
    tuple: CijtTuple<I>,
}

fn ratio_int<I: ExactInt>(r: &Ratio<I>) -> Option<i128> {
    r.is_integer()
        .then(|| r.to_integer().to_string().parse().ok())
        .flatten()
}

fn search<I: ExactInt>(dataset: &GeodesicDataset<I>, cfg: &PipelineConfig<I>) -> Result<Run<I>> {
    let paths = dataset.paths();
    let m_bar = match cfg.m_bar {
        Some(m) => m,
        None => m_bar_for_geodesics(&dataset.records, dataset.shape)?,
    };
    let delta = cfg
        .delta
        .clone()
        .unwrap_or_else(|| default_delta(&paths, m_bar));
    let multiple = dataset.shape.period().lcm(&cfg.n_multiple_of.max(1));
    let problem = SelectionProblem::new(paths, delta, m_bar)?
        .with_n_bound(cfg.n_bound)
        .with_n_multiple_of(multiple);
    // eps < 1/(1 + 2 M sum|gamma|) makes |sum 2 m_k gamma_k - 2NB| < 1.
    let abs_gamma = dataset
        .records
        .iter()
        .fold(Ratio::<I>::zero(), |acc, r| acc + gamma_invariant(r).abs());
    let coupling = Ratio::from_integer(I::one())
        / (Ratio::from_integer(int::<I>(2)) + abs_gamma * int::<I>(2 * problem.period() as i64));
    let problem = problem.with_coupling(coupling.clone());
    let tuple = find_tuple(&problem, &VertexSpec::Auto)?;
    Ok(Run {
        problem,
        coupling,
        tuple,
    })
}

fn gamma_identity<I: ExactInt>(
    dataset: &GeodesicDataset<I>,
    t: &CijtTuple<I>,
) -> GammaIdentityCheck {
    let lhs = weighted_gamma_sum(dataset, &t.m);
    let rhs = resonance_constant::<I>(dataset.shape) * int::<I>(2 * t.n as i64);
    GammaIdentityCheck {
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        integral: rhs.is_integer(),
        pass: lhs == rhs,
    }
}

fn chain<I: ExactInt>(
    dataset: &GeodesicDataset<I>,
    t: &CijtTuple<I>,
    census: &JumpCensus,
    degree: u64,
) -> Result<ChainCheck> {
    let two_n_b = resonance_constant::<I>(dataset.shape) * int::<I>(2 * t.n as i64);
    let shift = Ratio::from_integer(int::<I>(census.plus_odd as i64 - census.plus_even as i64));
    let chain_value = two_n_b.clone() + shift.clone();
    let gamma_value = weighted_gamma_sum(dataset, &t.m) + shift;
    let morse = morse_alternating_sum(dataset, degree as i64)?;
    let betti_sum = alternating_betti_sum(dataset.shape, degree);
    let sign = if degree.is_multiple_of(2) { 1 } else { -1 };
    Ok(ChainCheck {
        degree,
        two_n_b: two_n_b.to_string(),
        plus_odd: census.plus_odd,
        plus_even: census.plus_even,
        chain_value: chain_value.to_string(),
        gamma_value: gamma_value.to_string(),
        morse_alternating_sum: morse,
        betti_alternating_sum: betti_sum,
        identity_holds: ratio_int(&gamma_value) == Some(morse),
        inequality_holds: sign * (morse - betti_sum) >= 0,
    })
}

fn require_records<I: ExactInt>(dataset: &GeodesicDataset<I>, min_index: i64) -> Result<()> {
    if dataset.records.is_empty() {
        return Err(Error::Hypothesis("dataset has no closed geodesics".into()));
    }
    dataset.require_bumpy()?;
    if let Some(r) = dataset
        .records
        .iter()
        .find(|r| r.path.initial_index < min_index)
    {
        return Err(Error::Hypothesis(format!(
            "record {:?} has i(c) = {} < {min_index}",
            r.name, r.path.initial_index
        )));
    }
    Ok(())
}

fn non_hyperbolic<I: ExactInt>(
    dataset: &GeodesicDataset<I>,
    census: &JumpCensus,
    buckets: &[Bucket],
) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for b in buckets {
        for name in census.names_in(*b) {
            if dataset.record(&name)?.path.monodromy.is_hyperbolic() {
                return Err(Error::Verification {
                    path: dataset
                        .records
                        .iter()
                        .position(|r| r.name == name)
                        .unwrap_or(0),
                    m: 0,
                    equation: "i(c^{2m_k}) != 2N implies non-hyperbolic".into(),
                    lhs: name,
                    rhs: "hyperbolic".into(),
                });
            }
            out.push(name);
        }
    }
    Ok(out)
}

/// Even `d`: a finite bumpy set with nonzero indices has at least `dn(n+1)/2`
/// members with odd `i(c^{2m_k})`, or it is inconsistent.
pub fn verify_theorem_1_1<I: ExactInt>(
    dataset: &GeodesicDataset<I>,
    cfg: &PipelineConfig<I>,
) -> Result<Theorem11Report<I>> {
    let shape = dataset.shape;
    if !shape.is_even() {
        return Err(shape_error("this count needs even d", shape));
    }
    require_records(dataset, 1)?;
    let resonance = resonance_check(dataset)?;
    let Run {
        problem,
        coupling,
        tuple,
    } = search(dataset, cfg)?;
    let opposite = opposite_tuple(&tuple, &problem)?;
    let census = jump_census(dataset, &problem, &tuple, 1)?;
    let opposite_census = jump_census(dataset, &problem, &opposite, 1)?;

    let gamma_identity = [
        gamma_identity(dataset, &tuple),
        gamma_identity(dataset, &opposite),
    ];
    let chain = [
        chain(dataset, &tuple, &census, 2 * tuple.n)?,
        chain(dataset, &opposite, &opposite_census, 2 * opposite.n)?,
    ];

    let (d, n) = (shape.d() as i64, shape.n() as i64);
    let big_d = shape.period() as i64;
    let required = Ratio::<I>::new(int(d * n * (n + 1)), int(4));
    let n_tilde = Ratio::new(int(n * (n + 1) * d * d), int(2 * big_d))
        + Ratio::new(int(d * n * (n - 1)), int(4))
        - Ratio::from_integer(I::one())
        - epsilon_correction::<I>(shape, 2 * tuple.n - 1)?;
    let req_int = ratio_int(&required).unwrap_or(i128::MAX);
    let bound_plus_odd = census.plus_odd as i128 >= req_int;
    let bound_minus_odd = opposite_census.plus_odd as i128 >= req_int;
    let symmetry = census.mirrors(&opposite_census);
    let non_hyperbolic = non_hyperbolic(dataset, &census, &[Bucket::PlusOdd, Bucket::MinusOdd])?;
    let count_bound =
        2 * req_int <= dataset.records.len() as i128 && 2 * req_int <= non_hyperbolic.len() as i128;

    let pass = resonance.pass
        && gamma_identity.iter().all(|c| c.pass)
        && chain.iter().all(|c| c.identity_holds && c.inequality_holds)
        && n_tilde == required
        && bound_plus_odd
        && bound_minus_odd
        && symmetry
        && count_bound;
    Ok(Theorem11Report {
        shape,
        q: dataset.records.len(),
        resonance,
        coupling: coupling.to_string(),
        tuple,
        opposite,
        census,
        opposite_census,
        gamma_identity,
        chain,
        required: required.to_string(),
        n_tilde_matches: n_tilde == required,
        n_tilde: n_tilde.to_string(),
        bound_plus_odd,
        bound_minus_odd,
        symmetry,
        non_hyperbolic,
        count_bound,
        pass,
    })
}

/// Odd `d` with every `i(c) >= 2`: margins widen to 2 and the count is taken
/// over records with even `i(c^{2m_k})`.
pub fn verify_theorem_1_5<I: ExactInt>(
    dataset: &GeodesicDataset<I>,
    cfg: &PipelineConfig<I>,
) -> Result<Theorem15Report<I>> {
    let shape = dataset.shape;
    if shape.is_even() {
        return Err(shape_error("this count needs odd d", shape));
    }
    require_records(dataset, 2)?;
    let resonance = resonance_check(dataset)?;
    let Run {
        problem,
        coupling,
        tuple,
    } = search(dataset, cfg)?;
    let opposite = opposite_tuple(&tuple, &problem)?;
    let census = jump_census(dataset, &problem, &tuple, 2)?;
    let opposite_census = jump_census(dataset, &problem, &opposite, 2)?;

    let gamma_identity = [
        gamma_identity(dataset, &tuple),
        gamma_identity(dataset, &opposite),
    ];
    let chain = [
        chain(dataset, &tuple, &census, 2 * tuple.n + 1)?,
        chain(dataset, &opposite, &opposite_census, 2 * opposite.n + 1)?,
    ];

    let d = shape.d() as usize;
    let half = (d - 1) / 2;
    let bound_plus_even = census.plus_even >= half;
    let bound_minus_even = opposite_census.plus_even >= half;
    let symmetry = census.mirrors(&opposite_census);

    let two_n = 2 * tuple.n as i64;
    let records_at_2n: Vec<String> = census
        .entries
        .iter()
        .filter(|e| e.index_at_2mk == two_n && (e.index_at_2mk - e.initial_index) % 2 == 0)
        .map(|e| e.name.clone())
        .collect();
    let morse_at_2n = (morse_alternating_sum(dataset, two_n)?
        - morse_alternating_sum(dataset, two_n - 1)?) as u64;
    let betti_at_2n = betti(shape, 2 * tuple.n);
    let degree_2n_holds = records_at_2n.len() >= 2
        && morse_at_2n >= betti_at_2n
        && morse_at_2n == records_at_2n.len() as u64;
    let even_classified = census.plus_even + census.minus_even + records_at_2n.len();
    let non_hyperbolic = non_hyperbolic(dataset, &census, &[Bucket::PlusEven, Bucket::MinusEven])?;

    let pass = resonance.pass
        && gamma_identity.iter().all(|c| c.pass)
        && chain.iter().all(|c| c.identity_holds && c.inequality_holds)
        && bound_plus_even
        && bound_minus_even
        && symmetry
        && degree_2n_holds
        && even_classified > d
        && non_hyperbolic.len() + 1 >= d;
    Ok(Theorem15Report {
        shape,
        q: dataset.records.len(),
        resonance,
        coupling: coupling.to_string(),
        tuple,
        opposite,
        census,
        opposite_census,
        gamma_identity,
        chain,
        required: Ratio::<I>::new(int(d as i64 - 1), int(2)).to_string(),
        bound_plus_even,
        bound_minus_even,
        symmetry,
        records_at_2n,
        morse_at_2n,
        betti_at_2n,
        degree_2n_holds,
        even_classified,
        non_hyperbolic,
        pass,
    })
}

/// Even `d`, every record hyperbolic: the alternating Morse sum at `2N` is
/// `2NB`, but the Morse inequality asks for `2NB + dn(n+1)/4`.
pub fn verify_theorem_1_8<I: ExactInt>(
    dataset: &GeodesicDataset<I>,
    cfg: &PipelineConfig<I>,
) -> Result<Theorem18Report<I>> {
    let shape = dataset.shape;
    if !shape.is_even() {
        return Err(shape_error("this count needs even d", shape));
    }
    require_records(dataset, 1)?;
    if let Some(r) = dataset
        .records
        .iter()
        .find(|r| !r.path.monodromy.is_hyperbolic())
    {
        return Err(Error::Hypothesis(format!(
            "record {:?} is not hyperbolic",
            r.name
        )));
    }
    let resonance = resonance_check(dataset)?;
    let Run { tuple, .. } = search(dataset, cfg)?;
    let gamma_identity = gamma_identity(dataset, &tuple);
    let two_n_b = resonance_constant::<I>(shape) * int::<I>(2 * tuple.n as i64);
    let morse = morse_alternating_sum(dataset, 2 * tuple.n as i64)?;
    let betti_sum = alternating_betti_sum(shape, 2 * tuple.n);
    let gap = Ratio::from_integer(int::<I>(betti_sum as i64)) - two_n_b.clone();
    let (d, n) = (shape.d() as i64, shape.n() as i64);
    let expected_gap = Ratio::<I>::new(int(d * n * (n + 1)), int(4));
    let contradiction_found = !resonance.pass || !gamma_identity.pass || morse < betti_sum;
    Ok(Theorem18Report {
        shape,
        q: dataset.records.len(),
        resonance,
        tuple,
        gamma_identity,
        two_n_b: two_n_b.to_string(),
        morse_alternating_sum: morse,
        betti_alternating_sum: betti_sum,
        gap_exact: gap == expected_gap,
        gap: gap.to_string(),
        expected_gap: expected_gap.to_string(),
        contradiction_found,
    })
}
