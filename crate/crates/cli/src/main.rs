use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use flagzeta_core::cone_lq::{alpha_star, alpha_star_from_lq, chi_value, effective_cone};
use flagzeta_core::curve_zeta::{make_curve, CurveZeta};
use flagzeta_core::eisenstein::{c_constant, global_c, WeightLine};
use flagzeta_core::rational_fn::{q_string, RatFn, ScaledLimit, Q};
use flagzeta_core::root_system::{GroupSpec, RootSystem};
use flagzeta_core::verify::{parse_parabolic, predict, verify, Variety};
use flagzeta_core::Error;

#[derive(Parser)]
#[command(
    name = "flagzeta",
    version,
    about = "Height zeta residues of flag varieties over F_q(t)"
)]
struct Cli {
    /// Size of the constant field.
    #[arg(long, global = true, default_value_t = 2)]
    q: u64,
    /// Genus of the base curve.
    #[arg(long, global = true, default_value_t = 0)]
    genus: u32,
    /// Coefficients of the zeta numerator P(t), lowest degree first, e.g. "1,0,2".
    #[arg(long, global = true)]
    zeta_numerator: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for enumeration.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// alpha*, beta, tau, theta* and the Eisenstein-side constant.
    Predict {
        #[arg(long)]
        group: String,
        /// Simple roots of the Levi factor, 1-based and comma separated.
        #[arg(long, default_value = "")]
        parabolic: String,
        /// Also evaluate tau as an Euler product over places of degree <= N.
        #[arg(long)]
        truncate: Option<u32>,
    },
    /// alpha* of the effective cone along the anticanonical class.
    Alpha {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "")]
        parabolic: String,
    },
    /// Regularized constant C_J, or c(w, lambda) along a line when --word is given.
    Cfunction {
        #[arg(long)]
        group: String,
        /// Simple roots J, 1-based and comma separated.
        #[arg(long, default_value = "")]
        subset: String,
        /// Direction of approach in the fundamental weight basis; defaults to rho.
        #[arg(long)]
        direction: Option<String>,
        /// Reduced word of w, 1-based simple reflections.
        #[arg(long)]
        word: Option<String>,
        /// Base point of the line for --word; defaults to rho.
        #[arg(long)]
        base: Option<String>,
    },
    /// Points of bounded height.
    Count {
        #[arg(long)]
        variety: String,
        #[arg(long)]
        max_degree: u32,
    },
    /// Compare the Eisenstein side, the arithmetic side and the point counts.
    Verify {
        #[arg(long)]
        variety: String,
        #[arg(long)]
        max_degree: u32,
    },
    /// The zeta function of the base curve.
    ZetaCurve {
        /// Also list the number of places of each degree up to N.
        #[arg(long)]
        places: Option<u32>,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_)
            | Error::WorkCap { .. }
            | Error::Domain(_)
            | Error::InvalidCurve(_)
            | Error::WeylGroupTooLarge { .. } => Failure::Usage(e.to_string()),
            other => Failure::Compute(other.to_string()),
        }
    }
}

fn parse_ints(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse()
                .map_err(|_| Failure::Usage(format!("expected an integer, got {p:?}")))
        })
        .collect()
}

fn root_system(group: &str) -> Result<RootSystem, Failure> {
    let spec: GroupSpec = group.parse()?;
    Ok(RootSystem::new(spec)?)
}

fn curve(cli: &Cli) -> Result<CurveZeta, Failure> {
    let numerator = match &cli.zeta_numerator {
        Some(s) => parse_ints(s)?,
        None if cli.genus == 0 => vec![1],
        None => {
            return Err(Failure::Usage(
                "--zeta-numerator is required when --genus is positive".into(),
            ))
        }
    };
    Ok(make_curve(cli.q, cli.genus, &numerator)?)
}

fn require_rational_line(cli: &Cli) -> Result<(), Failure> {
    if cli.genus != 0 || cli.zeta_numerator.is_some() {
        return Err(Failure::Usage(
            "point counts are only available over F_q(t) (genus 0)".into(),
        ));
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value).map_err(|e| Failure::Compute(e.to_string()))
}

fn csv_only_for_counts(cli: &Cli) -> Result<(), Failure> {
    if cli.format == Format::Csv {
        return Err(Failure::Usage("--format csv applies to count only".into()));
    }
    Ok(())
}

#[derive(Serialize)]
struct AlphaOut {
    group: String,
    parabolic: Vec<usize>,
    t: usize,
    anticanonical: Vec<i64>,
    #[serde(with = "q_string")]
    alpha_star: Q,
    #[serde(with = "q_string")]
    chi: Q,
    #[serde(with = "q_string")]
    alpha_from_lq: Q,
}

#[derive(Serialize)]
struct ConstantOut {
    group: String,
    subset: Vec<usize>,
    direction: Vec<i64>,
    c_constant: ScaledLimit,
}

#[derive(Serialize)]
struct LineOut {
    group: String,
    word: Vec<usize>,
    base: Vec<i64>,
    direction: Vec<i64>,
    variable: &'static str,
    c: RatFn,
}

#[derive(Serialize)]
struct CurveOut<'a> {
    q: u64,
    genus: u32,
    numerator: &'a [i64],
    class_number: i64,
    zeta: RatFn,
    residue: ScaledLimit,
    #[serde(skip_serializing_if = "Option::is_none")]
    places: Option<Vec<u128>>,
}

fn one_based_indices(s: &str, rank: usize) -> Result<Vec<usize>, Failure> {
    let v = parse_parabolic(s)?;
    if let Some(bad) = v.iter().find(|&&i| i >= rank) {
        return Err(Failure::Usage(format!(
            "simple root {} out of range 1..={rank}",
            bad + 1
        )));
    }
    Ok(v)
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Predict {
            group,
            parabolic,
            truncate,
        } => {
            csv_only_for_counts(cli)?;
            let rs = root_system(group)?;
            let levi = one_based_indices(parabolic, rs.rank())?;
            json(&predict(&curve(cli)?, &rs, &levi, *truncate)?)
        }
        Command::Alpha { group, parabolic } => {
            csv_only_for_counts(cli)?;
            let rs = root_system(group)?;
            let levi = one_based_indices(parabolic, rs.rank())?;
            let pd = rs.parabolic_datum(&levi)?;
            if pd.t == 0 {
                return Err(Failure::Usage("the parabolic is the whole group".into()));
            }
            let cone = effective_cone(&pd);
            json(&AlphaOut {
                group: rs.spec().to_string(),
                parabolic: levi.iter().map(|i| i + 1).collect(),
                t: pd.t,
                anticanonical: pd.anticanonical_coords.clone(),
                alpha_star: alpha_star(&pd),
                chi: chi_value(&cone, &pd.anticanonical_coords)?,
                alpha_from_lq: alpha_star_from_lq(&pd, cli.q)?,
            })
        }
        Command::Cfunction {
            group,
            subset,
            direction,
            word,
            base,
        } => {
            csv_only_for_counts(cli)?;
            let rs = root_system(group)?;
            let c = curve(cli)?;
            let direction = match direction {
                Some(d) => parse_ints(d)?,
                None => rs.rho(),
            };
            if direction.len() != rs.rank() {
                return Err(Failure::Usage(format!(
                    "direction needs {} coordinates",
                    rs.rank()
                )));
            }
            match word {
                Some(w) => {
                    let word = one_based_word(w, rs.rank())?;
                    let base = match base {
                        Some(b) => parse_ints(b)?,
                        None => rs.rho(),
                    };
                    if base.len() != rs.rank() {
                        return Err(Failure::Usage(format!(
                            "base needs {} coordinates",
                            rs.rank()
                        )));
                    }
                    let w = rs.element_from_word(&word)?;
                    let line = WeightLine::new(base.clone(), direction.clone());
                    json(&LineOut {
                        group: rs.spec().to_string(),
                        word: word.iter().map(|i| i + 1).collect(),
                        base,
                        direction,
                        variable: "y = q^(-u)",
                        c: global_c(&c, &rs, &w, &line)?,
                    })
                }
                None => {
                    let subset = one_based_indices(subset, rs.rank())?;
                    json(&ConstantOut {
                        group: rs.spec().to_string(),
                        subset: subset.iter().map(|i| i + 1).collect(),
                        c_constant: c_constant(&c, &rs, &subset, &direction)?,
                        direction,
                    })
                }
            }
        }
        Command::Count {
            variety,
            max_degree,
        } => {
            require_rational_line(cli)?;
            let v: Variety = variety.parse()?;
            let table = v.count(cli.q, *max_degree)?;
            match cli.format {
                Format::Csv => Ok(table.to_csv().trim_end().to_string()),
                Format::Json => json(&table),
            }
        }
        Command::Verify {
            variety,
            max_degree,
        } => {
            csv_only_for_counts(cli)?;
            require_rational_line(cli)?;
            let v: Variety = variety.parse()?;
            let report = verify(v, cli.q, *max_degree)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            let out = json(&report)?;
            if report.passed {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
        Command::ZetaCurve { places } => {
            csv_only_for_counts(cli)?;
            let c = curve(cli)?;
            json(&CurveOut {
                q: c.q(),
                genus: c.genus(),
                numerator: c.numerator(),
                class_number: c.class_number(),
                zeta: c.zeta_rat(),
                residue: c.curve_residue(),
                places: places.map(|d| c.places(d)).transpose()?,
            })
        }
    }
}

fn one_based_word(s: &str, rank: usize) -> Result<Vec<usize>, Failure> {
    parse_ints(s)?
        .into_iter()
        .map(|i| {
            if i < 1 || i as usize > rank {
                Err(Failure::Usage(format!(
                    "reflection {i} out of range 1..={rank}"
                )))
            } else {
                Ok(i as usize - 1)
            }
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            println!("{out}");
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
