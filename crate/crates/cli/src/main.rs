use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use cijt::cijt::{
    default_delta, find_tuple, opposite_tuple, verify_tuple, CijtTuple, SelectionProblem, Vertex,
    VertexSpec,
};
use cijt::loop_homology::{betti, betti_partial_sum, CohomologyShape};
use cijt::morse::{
    m_bar_for_geodesics, resonance_check, verify_theorem_1_1, verify_theorem_1_5,
    verify_theorem_1_8, GeodesicDataset, PipelineConfig,
};
use cijt::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde_json::{json, Value};

macro_rules! outln {
    ($buf:expr, $($arg:tt)*) => {
        writeln!($buf, $($arg)*).expect("writing to a String")
    };
}

#[derive(Parser)]
#[command(
    name = "cijt",
    version,
    about = "Index iteration, common index jump tuples and closed-geodesic counting"
)]
struct Cli {
    /// Worker threads for the parallel engines (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rows (m, i(c^m), nu(c^m)) for one record.
    Iterate {
        dataset: PathBuf,
        #[arg(long)]
        record: String,
        #[arg(long)]
        m_max: u64,
    },
    /// Betti numbers of the free loop space with both partial-sum evaluations.
    Betti {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p_max: u64,
    },
    /// Exact resonance identity for a dataset.
    Resonance { dataset: PathBuf },
    /// Search and certify a common index jump tuple.
    Cijt {
        dataset: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        /// auto, opposite, or bits:<0|1|*...>
        #[arg(long, default_value = "auto")]
        vertex: String,
    },
    /// Run a counting pipeline and emit its audit.
    Verify {
        dataset: PathBuf,
        #[arg(long, value_parser = ["1.1", "1.5", "1.8"])]
        theorem: String,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Approximation radius, as p/q or a decimal literal; must be below 1/2.
    #[arg(long)]
    delta: Option<String>,
    #[arg(long, default_value_t = 100_000_000)]
    n_bound: u64,
    #[arg(long, default_value_t = 1)]
    n_multiple: u64,
    #[arg(long)]
    m_bar: Option<u64>,
}

impl SearchArgs {
    fn config(&self) -> anyhow::Result<PipelineConfig> {
        if self.n_bound == 0 {
            bail!(Error::InvalidProblem("--n-bound must be at least 1".into()));
        }
        if self.n_multiple == 0 {
            bail!(Error::InvalidProblem(
                "--n-multiple must be at least 1".into()
            ));
        }
        Ok(PipelineConfig {
            delta: self.delta.as_deref().map(parse_delta).transpose()?,
            n_bound: self.n_bound,
            n_multiple_of: self.n_multiple,
            m_bar: self.m_bar,
        })
    }
}

/// Exact rational from `p/q`, an integer, or a finite decimal.
fn parse_delta(s: &str) -> anyhow::Result<Ratio<BigInt>> {
    let s = s.trim();
    let r = if let Some((int_part, frac)) = s.split_once('.') {
        let digits = format!("{int_part}{frac}");
        let num: BigInt = digits
            .parse()
            .with_context(|| format!("bad decimal {s:?}"))?;
        Ratio::new(num, BigInt::from(10).pow(frac.len() as u32))
    } else {
        s.parse::<Ratio<BigInt>>()
            .map_err(|e| anyhow!("bad rational {s:?}: {e}"))?
    };
    if r <= Ratio::zero() || r >= Ratio::new(BigInt::one(), BigInt::from(2)) {
        bail!(Error::InvalidProblem(format!(
            "delta = {r} must lie in (0, 1/2)"
        )));
    }
    Ok(r)
}

fn load(path: &PathBuf) -> anyhow::Result<GeodesicDataset> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(GeodesicDataset::from_json(&text)?)
}

fn emit_json(buf: &mut String, v: &Value, format: Format) {
    match format {
        Format::Json => outln!(
            buf,
            "{}",
            serde_json::to_string_pretty(v).expect("reports serialize")
        ),
        Format::Tsv => {
            // Audits are nested; TSV carries the top-level scalars only.
            if let Value::Object(map) = v {
                for (k, x) in map {
                    if !x.is_object() && !x.is_array() {
                        outln!(buf, "{k}\t{}", x.to_string().trim_matches('"'));
                    }
                }
            }
        }
    }
}

fn problem_for(
    dataset: &GeodesicDataset,
    cfg: &PipelineConfig,
) -> anyhow::Result<SelectionProblem> {
    let paths = dataset.paths();
    let m_bar = match cfg.m_bar {
        Some(m) => m,
        None => m_bar_for_geodesics(&dataset.records, dataset.shape)?,
    };
    let delta = cfg
        .delta
        .clone()
        .unwrap_or_else(|| default_delta(&paths, m_bar));
    Ok(SelectionProblem::new(paths, delta, m_bar)?
        .with_n_bound(cfg.n_bound)
        .with_n_multiple_of(cfg.n_multiple_of))
}

fn tuple_json(t: &CijtTuple) -> Value {
    serde_json::to_value(t).expect("tuples serialize")
}

fn run(cli: Cli, buf: &mut String) -> anyhow::Result<bool> {
    match cli.cmd {
        Cmd::Iterate {
            dataset,
            record,
            m_max,
        } => {
            let d = load(&dataset)?;
            let r = d.record(&record)?;
            let rows: Vec<(u64, i64, usize)> = (1..=m_max)
                .map(|m| (m, r.path.index(m), r.path.nullity(m)))
                .collect();
            match cli.format.unwrap_or(Format::Tsv) {
                Format::Tsv => {
                    outln!(buf, "m\ti\tnu");
                    for (m, i, nu) in rows {
                        outln!(buf, "{m}\t{i}\t{nu}");
                    }
                }
                Format::Json => {
                    let rows: Vec<Value> = rows
                        .iter()
                        .map(|(m, i, nu)| json!({"m": m, "i": i, "nu": nu}))
                        .collect();
                    outln!(buf, "{}", serde_json::to_string_pretty(&rows)?);
                }
            }
            Ok(true)
        }
        Cmd::Betti { d, n, p_max } => {
            let shape = CohomologyShape::new(d, n)?;
            let mut rows = Vec::new();
            let mut agree = true;
            for p in 0..=p_max {
                let (closed, direct) = match betti_partial_sum(shape, p) {
                    Ok(s) => {
                        agree &= s.agree;
                        (Some(s.closed), s.direct)
                    }
                    Err(Error::PartialSumRange { .. }) => {
                        (None, cijt::loop_homology::betti_sum_direct(shape, p))
                    }
                    Err(e) => return Err(e.into()),
                };
                rows.push((p, betti(shape, p), closed, direct));
            }
            match cli.format.unwrap_or(Format::Tsv) {
                Format::Tsv => {
                    outln!(buf, "p\tb_p\tclosed\tdirect");
                    for (p, b, closed, direct) in rows {
                        outln!(
                            buf,
                            "{p}\t{b}\t{}\t{direct}",
                            closed.as_deref().unwrap_or("-")
                        );
                    }
                }
                Format::Json => {
                    let rows: Vec<Value> = rows
                        .iter()
                        .map(|(p, b, c, dir)| json!({"p": p, "b_p": b, "closed": c, "direct": dir}))
                        .collect();
                    outln!(buf, "{}", serde_json::to_string_pretty(&rows)?);
                }
            }
            Ok(agree)
        }
        Cmd::Resonance { dataset } => {
            let r = resonance_check(&load(&dataset)?)?;
            emit_json(
                buf,
                &serde_json::to_value(&r)?,
                cli.format.unwrap_or(Format::Json),
            );
            Ok(r.pass)
        }
        Cmd::Cijt {
            dataset,
            search,
            vertex,
        } => {
            let d = load(&dataset)?;
            let cfg = search.config()?;
            let pr = problem_for(&d, &cfg)?;
            let (t, base) = match vertex.as_str() {
                "auto" => (find_tuple(&pr, &VertexSpec::Auto)?, None),
                "opposite" => {
                    let base = find_tuple(&pr, &VertexSpec::Auto)?;
                    (opposite_tuple(&base, &pr)?, Some(base))
                }
                other => {
                    let bits = other.strip_prefix("bits:").ok_or_else(|| {
                        Error::InvalidProblem(format!(
                            "--vertex {other:?}: expected auto, opposite or bits:..."
                        ))
                    })?;
                    (
                        find_tuple(&pr, &VertexSpec::Bits(bits.parse::<Vertex>()?))?,
                        None,
                    )
                }
            };
            let report = verify_tuple(&t, &pr);
            let pass = report.passed();
            let mut out = json!({
                "pass": pass,
                "delta": pr.delta().to_string(),
                "m_bar": pr.m_bar(),
                "tuple": tuple_json(&t),
                "verification": report,
            });
            if let Some(b) = base {
                out["opposite_of"] = tuple_json(&b);
            }
            emit_json(buf, &out, cli.format.unwrap_or(Format::Json));
            Ok(pass)
        }
        Cmd::Verify {
            dataset,
            theorem,
            search,
        } => {
            let d = load(&dataset)?;
            let cfg = search.config()?;
            let (pass, v) = match theorem.as_str() {
                "1.1" => {
                    let r = verify_theorem_1_1(&d, &cfg)?;
                    (r.pass, serde_json::to_value(&r)?)
                }
                "1.5" => {
                    let r = verify_theorem_1_5(&d, &cfg)?;
                    (r.pass, serde_json::to_value(&r)?)
                }
                _ => {
                    let r = verify_theorem_1_8(&d, &cfg)?;
                    (r.contradiction_found, serde_json::to_value(&r)?)
                }
            };
            let mut out = json!({"theorem": theorem, "pass": pass});
            out["report"] = v;
            emit_json(buf, &out, cli.format.unwrap_or(Format::Json));
            Ok(pass)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::NotFoundWithinBound { .. }) => 3,
        Some(Error::Verification { .. }) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut buf = String::new();
    let res = run(cli, &mut buf);
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(buf.as_bytes());
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
