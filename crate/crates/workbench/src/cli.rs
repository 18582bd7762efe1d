//! Command line definitions and dispatch.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use jordan_core::classify::Engine;
use jordan_core::repforge::{catalog_build, scramble, Variant};
use jordan_core::twodim::{build_counterexample, TwoDAlgebra};
use jordan_core::{MultialgebraInstance, Rational, Subspace};

use crate::json::{
    self, read_algebra, read_json, read_subspace, AlgebraFile, LabelJson, SubspaceJson,
    TwoDAlgebraJson,
};
use crate::{report, scenario, WbError};

#[derive(Debug, Parser)]
#[command(
    name = "jordan-workbench",
    version,
    about = "Exact Jordan multialgebra computations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a catalog algebra and write it as a subspace file.
    Construct(ConstructArgs),
    /// Closure, completion, chain conditions and classification.
    Analyze(AnalyzeArgs),
    /// Identify the simple components of a Jordan algebra.
    Classify(ClassifyArgs),
    /// Check the 3- and 4-chain conditions.
    Chains(ChainsArgs),
    /// Reproduce the incomplete rotation-invariant pair in dimension two.
    Counterexample(CounterexampleArgs),
    /// Representation data of the groups generated by anticommuting square roots of ε.
    Eckmann(EckmannArgs),
    /// Tensor-product multifields (End(R^3) ⊗ B)_sym.
    So3(So3Args),
}

#[derive(Debug, Args)]
pub struct LabelArgs {
    /// Label file `{"form":..,"r":..,"N":..,...}`; overrides the flags.
    #[arg(long)]
    pub label: Option<PathBuf>,
    #[arg(long)]
    pub form: Option<String>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long = "N")]
    pub n: Option<usize>,
    #[arg(long)]
    pub multiplicity: Option<usize>,
    #[arg(long)]
    pub s1: Option<usize>,
    #[arg(long)]
    pub s2: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub label: LabelArgs,
    /// Conjugate by a seeded rational orthogonal matrix.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// A subspace file, or a two-dimensional pair file with keys "L" and "M".
    #[arg(long)]
    pub algebra: PathBuf,
    /// A subspace file, or `classical` for span{I}. Ignored for pair files.
    #[arg(long, default_value = "classical")]
    pub mults: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EngineArg {
    Exact,
    Modular,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub algebra: PathBuf,
    #[arg(long, value_enum, default_value = "modular")]
    pub engine: EngineArg,
    /// Scramble the input by a seeded orthogonal conjugation first.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ChainsArgs {
    #[arg(long)]
    pub algebra: PathBuf,
    #[arg(long, default_value = "classical")]
    pub mults: String,
    /// Only this chain length (3 or 4).
    #[arg(long)]
    pub length: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CounterexampleArgs {
    /// Replace the generators by seeded invertible combinations first.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub json: bool,
    /// Also write the pair (L, M) to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VariantArg {
    Default,
    Plus,
    Minus,
}

#[derive(Debug, Args)]
pub struct EckmannArgs {
    #[arg(long)]
    pub p: usize,
    /// Required for p divisible by 4.
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct So3Args {
    #[arg(long)]
    pub json: bool,
}

/// What a command prints and the process exit code.
#[derive(Debug)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

fn ok(stdout: String) -> Output {
    Output { stdout, code: 0 }
}

fn write_file(path: &Path, text: &str) -> Result<(), WbError> {
    std::fs::write(path, text).map_err(|source| WbError::Io {
        path: path.display().to_string(),
        source,
    })
}

// Write to `out` if given, otherwise return the text for stdout.
fn emit(text: String, out: &Option<PathBuf>) -> Result<String, WbError> {
    match out {
        Some(p) => write_file(p, &text).map(|_| String::new()),
        None => Ok(text),
    }
}

fn label_from(args: &LabelArgs) -> Result<LabelJson, WbError> {
    if let Some(p) = &args.label {
        return read_json(p);
    }
    let form = args
        .form
        .clone()
        .ok_or_else(|| WbError::Usage("construct needs --form or --label".into()))?;
    Ok(LabelJson {
        form,
        r: args.r,
        n: args.n,
        multiplicity: args.multiplicity,
        s1: args.s1,
        s2: args.s2,
    })
}

fn mults_for(arg: &str, n: usize) -> Result<Subspace<Rational>, WbError> {
    if arg == "classical" {
        Ok(Subspace::scalars(n))
    } else {
        read_subspace(Path::new(arg))
    }
}

fn instance(
    algebra: &Path,
    mults: &str,
) -> Result<(MultialgebraInstance, Option<TwoDAlgebra>), WbError> {
    match read_algebra(algebra)? {
        AlgebraFile::Real(pi) => {
            let n = pi.ambient().0;
            Ok((MultialgebraInstance::new(pi, mults_for(mults, n)?)?, None))
        }
        AlgebraFile::TwoD(alg) => Ok((alg.realify(), Some(alg))),
    }
}

pub fn run(cli: &Cli) -> Result<Output, WbError> {
    match &cli.command {
        Command::Construct(a) => {
            let label = label_from(&a.label)?.to_label()?;
            let mut pi = catalog_build(&label)?;
            if let Some(seed) = a.seed {
                pi = scramble(&pi, seed)?.0;
            }
            Ok(ok(emit(
                json::to_pretty(&SubspaceJson::from_real(&pi)),
                &a.out,
            )?))
        }
        Command::Analyze(a) => {
            let (inst, twod) = instance(&a.algebra, &a.mults)?;
            let mut rep = report::analyze(&inst);
            rep.two_d = twod.as_ref().map(report::twod);
            Ok(ok(emit(json::to_pretty(&rep), &a.out)?))
        }
        Command::Classify(a) => {
            let mut pi = read_subspace(&a.algebra)?;
            if let Some(seed) = a.seed {
                pi = scramble(&pi, seed)?.0;
            }
            let engine = match a.engine {
                EngineArg::Exact => Engine::Exact,
                EngineArg::Modular => Engine::Modular,
            };
            Ok(ok(emit(
                json::to_pretty(&report::classify(&pi, engine)?),
                &a.out,
            )?))
        }
        Command::Chains(a) => {
            let lengths = match a.length {
                None => vec![3, 4],
                Some(l @ (3 | 4)) => vec![l],
                Some(l) => return Err(WbError::Usage(format!("--length must be 3 or 4, got {l}"))),
            };
            let (inst, _) = instance(&a.algebra, &a.mults)?;
            Ok(ok(emit(
                json::to_pretty(&report::chains(&inst, &lengths)),
                &a.out,
            )?))
        }
        Command::Counterexample(a) => {
            if let Some(p) = &a.out {
                write_file(
                    p,
                    &json::to_pretty(&TwoDAlgebraJson::from_algebra(&build_counterexample())),
                )?;
            }
            let s = scenario::counterexample(a.seed);
            let text = if a.json {
                json::to_pretty(&s)
            } else {
                s.to_text()
            };
            Ok(Output {
                stdout: text,
                code: s.exit_code,
            })
        }
        Command::Eckmann(a) => {
            let variant = match a.variant {
                Some(VariantArg::Default) => Variant::Default,
                Some(VariantArg::Plus) => Variant::Plus,
                Some(VariantArg::Minus) => Variant::Minus,
                None if a.p % 4 == 0 => {
                    return Err(WbError::Usage(format!(
                        "p = {} has two variants; pass --variant plus|minus",
                        a.p
                    )))
                }
                None => Variant::Default,
            };
            let rep = report::eckmann(a.p, variant)?;
            let code = if rep.consistent { 0 } else { 1 };
            Ok(Output {
                stdout: emit(json::to_pretty(&rep), &a.out)?,
                code,
            })
        }
        Command::So3(a) => {
            let s = scenario::so3();
            let text = if a.json {
                json::to_pretty(&s)
            } else {
                s.to_text()
            };
            Ok(Output {
                stdout: text,
                code: s.exit_code,
            })
        }
    }
}
