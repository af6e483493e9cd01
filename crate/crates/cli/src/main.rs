//! `coxrig`: rigidity tables, orbit data, gradings and strata for Coxeter connections.
//!
//! Exit codes: 0 success, 2 invalid flags or input, 3 illegal `(r, m)`, 4 oracle or
//! classification mismatch.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coxrig_core::chevalley::{structure_constants, StructureConstants};
use coxrig_core::coxeter::{connection_matrix, coxeter_cartan_graded_dim, kmp_graded_dim, CoxeterParams, LoopElement};
use coxrig_core::orbits::{nilpotent_data, Oracle};
use coxrig_core::rigidity::{classify_range, compare, numerical_index, theorem_predicate};
use coxrig_core::rootsys::{Family, RootSystem, SimpleType};
use coxrig_core::strata::{leading_stratum, newton_polygon, parse_terms, ApartmentPoint};
use coxrig_core::Error;

use output::{Format, Payload};

#[derive(Parser, Debug)]
#[command(name = "coxrig", version, about = "Exact rigidity computations for Coxeter connections")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Numerical rigidity index of a single connection
    Check {
        #[command(flatten)]
        ty: TypeArgs,
        #[command(flatten)]
        slope: SlopeArgs,
        #[arg(long, value_enum)]
        oracle: Option<OracleArg>,
    },
    /// Verdicts for every legal triple in range, with agreement against the classification
    Table {
        /// Comma-separated families, e.g. `A,B,E`
        #[arg(long, value_delimiter = ',', default_value = "A,B,C,D,E,F,G")]
        families: Vec<String>,
        #[arg(long, default_value_t = 8)]
        rank_max: usize,
        #[arg(long, default_value_t = 2)]
        m_max: u32,
        #[arg(long, value_enum)]
        oracle: Option<OracleArg>,
    },
    /// Jordan type, centralizer and orbit dimension of N_r
    Orbit {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        #[arg(long, value_enum)]
        oracle: Option<OracleArg>,
    },
    /// Graded dimensions at the barycenter and of the Coxeter Cartan subalgebra
    Grading {
        #[command(flatten)]
        ty: TypeArgs,
    },
    /// Leading stratum of a connection matrix at an apartment point
    Strata {
        #[command(flatten)]
        ty: TypeArgs,
        #[command(flatten)]
        matrix: MatrixArgs,
        /// `barycenter`, `origin`, or a JSON array of rationals `alpha_j(x)`
        #[arg(long, default_value = "barycenter")]
        point: String,
    },
    /// Adjoint irregularity from the Newton polygon
    Irregularity {
        #[command(flatten)]
        ty: TypeArgs,
        #[command(flatten)]
        matrix: MatrixArgs,
    },
}

#[derive(Args, Debug)]
struct TypeArgs {
    /// Family letter, or family with rank such as `E7`
    #[arg(long = "type")]
    ty: String,
    /// Rank; type A of rank l is sl_(l+1)
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Args, Debug)]
struct SlopeArgs {
    #[arg(long, allow_negative_numbers = true)]
    r: i64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
    m: i64,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    /// Coxeter connection slope numerator (ignored with --input)
    #[arg(long, allow_negative_numbers = true)]
    r: Option<i64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
    m: i64,
    /// JSON file with a list of terms `{degree, basis, root_coeffs | cartan_index, value}`
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OracleArg {
    Brute,
    Partition,
    Both,
}

impl From<OracleArg> for Oracle {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::Brute => Oracle::Brute,
            OracleArg::Partition => Oracle::Partition,
            OracleArg::Both => Oracle::Both,
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BadSlopeNumerator { .. } | Error::BadM(_) => 3,
        Error::OracleMismatch { .. } | Error::MismatchFound(_) => 4,
        _ => 2,
    }
}

fn resolve_type(args: &TypeArgs) -> Result<SimpleType, Error> {
    let s = args.ty.trim();
    if s.len() > 1 {
        let ty: SimpleType = s.parse()?;
        match args.rank {
            Some(r) if r != ty.rank => Err(Error::Input(format!("--type {s} conflicts with --rank {r}"))),
            _ => Ok(ty),
        }
    } else {
        let family: Family = s.parse()?;
        let rank = args
            .rank
            .ok_or_else(|| Error::Input(format!("--rank is required with --type {s}")))?;
        SimpleType::new(family, rank)
    }
}

fn algebra(args: &TypeArgs) -> Result<StructureConstants, Error> {
    Ok(structure_constants(&RootSystem::new(resolve_type(args)?)?))
}

fn oracle_for(ty: SimpleType, o: Option<OracleArg>) -> Oracle {
    o.map(Oracle::from).unwrap_or_else(|| Oracle::default_for(ty.family))
}

fn load_matrix(sc: &StructureConstants, m: &MatrixArgs) -> Result<LoopElement, Error> {
    match (&m.input, m.r) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
            parse_terms(&sc.rs, &text)
        }
        (None, Some(r)) => {
            let p = CoxeterParams::new(&sc.rs, r, m.m)?;
            Ok(connection_matrix(&sc.rs, &p))
        }
        (None, None) => Err(Error::Input("either --r or --input is required".into())),
    }
}

fn parse_point(sc: &StructureConstants, spec: &str) -> Result<ApartmentPoint, Error> {
    match spec {
        "barycenter" => Ok(ApartmentPoint::barycenter(&sc.rs)),
        "origin" => Ok(ApartmentPoint::origin(sc.rank())),
        json => ApartmentPoint::from_json(json, sc.rank()),
    }
}

fn run(cmd: &Command) -> Result<(Payload, Option<Error>), Error> {
    match cmd {
        Command::Check { ty, slope, oracle } => {
            let sc = algebra(ty)?;
            let p = CoxeterParams::new(&sc.rs, slope.r, slope.m)?;
            let v = numerical_index(&sc, &p, oracle_for(sc.rs.ty, *oracle))?;
            let predicate = theorem_predicate(&p);
            Ok((Payload::Check { verdict: v, predicate }, None))
        }
        Command::Table {
            families,
            rank_max,
            m_max,
            oracle,
        } => {
            let fams = families
                .iter()
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.parse::<Family>())
                .collect::<Result<Vec<_>, _>>()?;
            let rows = classify_range(&fams, *rank_max, *m_max, oracle.map(Oracle::from))?;
            let report = compare(&rows);
            let err = (!report.mismatches.is_empty()).then(|| Error::MismatchFound(report.mismatches.clone()));
            Ok((Payload::table(rows, report), err))
        }
        Command::Orbit { ty, r, oracle } => {
            let sc = algebra(ty)?;
            CoxeterParams::new(&sc.rs, *r, 0)?;
            let d = nilpotent_data(&sc, *r as u32, oracle_for(sc.rs.ty, *oracle))?;
            Ok((Payload::Orbit(d), None))
        }
        Command::Grading { ty } => {
            let sc = algebra(ty)?;
            let h = sc.rs.h() as i64;
            let rows = (0..h)
                .map(|i| output::GradingRow {
                    i,
                    kmp_dim: kmp_graded_dim(&sc.rs, i),
                    coxeter_cartan_dim: coxeter_cartan_graded_dim(&sc, i),
                })
                .collect();
            Ok((
                Payload::Grading {
                    ty: sc.rs.ty.to_string(),
                    h: sc.rs.h(),
                    rank: sc.rank(),
                    exponents: sc.rs.exponents(),
                    rows,
                },
                None,
            ))
        }
        Command::Strata { ty, matrix, point } => {
            let sc = algebra(ty)?;
            let a = load_matrix(&sc, matrix)?;
            let x = parse_point(&sc, point)?;
            Ok((Payload::Strata(leading_stratum(&sc, &a, &x).describe(&sc.rs)), None))
        }
        Command::Irregularity { ty, matrix } => {
            let sc = algebra(ty)?;
            let a = load_matrix(&sc, matrix)?;
            let poly = newton_polygon(&sc, &a);
            Ok((
                Payload::Irregularity {
                    ty: sc.rs.ty.to_string(),
                    irregularity: poly.irregularity().to_string(),
                    slopes: poly,
                },
                None,
            ))
        }
    }
}

fn configure_threads() -> Result<(), Error> {
    if let Ok(v) = std::env::var("COXRIG_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Input(format!("COXRIG_THREADS must be a positive integer, got `{v}`")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Input(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| run(&cli.command));
    match result {
        Ok((payload, deferred)) => {
            let name = output::command_name(&cli.command);
            if let Err(e) = output::emit(name, &payload, cli.format) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            match deferred {
                Some(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(exit_code(&e))
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
