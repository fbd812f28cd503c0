//! Command-line front end: validation, homology, Smith normal form and
//! boundary-matrix export for every supported model kind.

pub mod formats;

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use cubhom::asts::AsyncTransitionSystem;
use cubhom::intlinalg::{smith_normal_form, ChainComplex, FGAbelianGroup, IntegerMatrix};
use cubhom::msets::{mset_complex, MSetSystem, RightMSet};
use cubhom::precubical::{coefficient_complex, HomologicalSystem, PrecubicalSet};
use cubhom::trace::{
    factorization_poset, hochschild_complex, leech_complex, right_module_complex, CliqueSystem,
    IndependenceAlphabet, Trace,
};

use formats::{AlphabetCoefficients, Model, Unsupported};

#[derive(Debug, Parser)]
#[command(
    name = "cubhom",
    version,
    about = "Exact integer homology of cubical and concurrency models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a model file and print `ok` or the first violation.
    Validate { input: PathBuf },
    /// Print `H_n` for each degree.
    Homology {
        input: PathBuf,
        #[command(flatten)]
        coeff: CoeffArgs,
        /// Highest degree to print; defaults to the top degree of the complex.
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// For alphabets: homology of the factorization poset of this trace instead.
        #[arg(long, value_name = "WORD")]
        factorizations: Option<String>,
    },
    /// Smith normal form of a matrix in the text format.
    Snf {
        input: PathBuf,
        /// Also print the unimodular transforms with A = T D S.
        #[arg(long)]
        transforms: bool,
    },
    /// Write the boundary matrices of the model's chain complex.
    ExportComplex {
        input: PathBuf,
        #[command(flatten)]
        coeff: CoeffArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, clap::Args)]
pub struct CoeffArgs {
    /// `constant`, `goubault0`, `goubault1` (precubical and cubical only), or a JSON file.
    #[arg(long, default_value = "constant")]
    pub coeff: String,
    /// Give the base point of an M-set or transition system the zero group.
    /// This departs from the standard complex, which includes the base point.
    #[arg(long)]
    pub exclude_point: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Exit status for a failed run: `1` for models that fail validation,
/// `2` for unreadable, malformed or unsupported input.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<cubhom::Error>() {
            return match e {
                cubhom::Error::Parse { .. } => 2,
                _ => 1,
            };
        }
    }
    2
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Validate { input } => {
            let result = read_model(input).and_then(|m| validate(&m, out));
            if let Err(e) = &result {
                if exit_code(e) == 1 {
                    writeln!(out, "invalid: {}", e.root_cause())?;
                }
            }
            result
        }
        Command::Homology {
            input,
            coeff,
            max_degree,
            format,
            factorizations,
        } => {
            let model = read_model(input)?;
            let complex = match factorizations {
                Some(word) => factorization_complex(&model, word)?,
                None => build_complex(&model, coeff)?,
            };
            let groups = match max_degree {
                Some(m) => complex.homology_up_to(*m),
                None => complex.homology(),
            };
            write_groups(&groups, *format, out)
        }
        Command::Snf { input, transforms } => snf(input, *transforms, out),
        Command::ExportComplex {
            input,
            coeff,
            output,
        } => {
            let complex = build_complex(&read_model(input)?, coeff)?;
            let text = complex.to_text();
            match output {
                Some(path) => std::fs::write(path, text)
                    .with_context(|| format!("cannot write {}", path.display()))?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(())
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_model(path: &Path) -> Result<Model> {
    let text = read_text(path)?;
    formats::parse_model(&text).with_context(|| format!("in {}", path.display()))
}

fn validate(model: &Model, out: &mut dyn Write) -> Result<()> {
    match model {
        Model::Precubical(x) => x.validate()?,
        Model::Ast(t) => {
            t.validate()?;
            t.to_pointed_mset()?;
        }
        Model::Matrix(text) => {
            ChainComplex::from_text(text)?;
        }
        Model::Cubical(_) | Model::Alphabet(_) | Model::MSet(..) | Model::Schema(_) => {}
    }
    writeln!(out, "ok")?;
    Ok(())
}

fn build_complex(model: &Model, args: &CoeffArgs) -> Result<ChainComplex> {
    let coeff = args.coeff.as_str();
    if args.exclude_point && !matches!(model, Model::MSet(..) | Model::Ast(_)) {
        return Err(Unsupported(format!(
            "--exclude-point does not apply to {} models",
            model.kind()
        ))
        .into());
    }
    match model {
        Model::Precubical(x) => precubical_complex(x, coeff),
        Model::Cubical(k) => precubical_complex(&k.to_precubical(), coeff),
        Model::Alphabet(a) => alphabet_complex(a, coeff),
        Model::MSet(a, x) => pointed_complex(a, x, args),
        Model::Ast(t) => ast_complex(t, args),
        Model::Schema(s) => {
            constant_only(model, coeff)?;
            Ok(s.complex())
        }
        Model::Matrix(text) => {
            constant_only(model, coeff)?;
            Ok(ChainComplex::from_text(text)?)
        }
    }
}

fn constant_only(model: &Model, coeff: &str) -> Result<()> {
    if coeff != "constant" {
        return Err(Unsupported(format!(
            "{} models only take constant coefficients",
            model.kind()
        ))
        .into());
    }
    Ok(())
}

fn precubical_complex(x: &PrecubicalSet, coeff: &str) -> Result<ChainComplex> {
    let system = match coeff {
        "constant" => return Ok(x.integral_complex()?),
        "goubault0" => HomologicalSystem::goubault_systems(x).0,
        "goubault1" => HomologicalSystem::goubault_systems(x).1,
        path => formats::precubical_system(x, &read_text(Path::new(path))?)?,
    };
    Ok(coefficient_complex(x, &system)?)
}

fn alphabet_complex(a: &IndependenceAlphabet, coeff: &str) -> Result<ChainComplex> {
    if coeff == "constant" {
        return Ok(leech_complex(a, &CliqueSystem::constant(a))?);
    }
    let text = read_text(Path::new(coeff))?;
    Ok(match formats::alphabet_coefficients(a, &text)? {
        AlphabetCoefficients::Right(g) => right_module_complex(a, &g)?,
        AlphabetCoefficients::Bi(b) => hochschild_complex(a, &b)?,
        AlphabetCoefficients::Cliques(f) => leech_complex(a, &f)?,
    })
}

fn pointed_complex(
    a: &IndependenceAlphabet,
    x: &RightMSet,
    args: &CoeffArgs,
) -> Result<ChainComplex> {
    let system = match (args.coeff.as_str(), args.exclude_point) {
        ("constant", false) => MSetSystem::constant(a, x),
        ("constant", true) => {
            if x.point().is_none() {
                return Err(Unsupported("--exclude-point needs a base point".into()).into());
            }
            MSetSystem::excluding_point(a, x)?
        }
        (_, true) => {
            return Err(Unsupported(
                "--exclude-point only combines with constant coefficients".into(),
            )
            .into())
        }
        (path, false) => formats::mset_system(a, x, &read_text(Path::new(path))?)?,
    };
    Ok(mset_complex(a, x, &system)?)
}

fn ast_complex(t: &AsyncTransitionSystem, args: &CoeffArgs) -> Result<ChainComplex> {
    let x = t.to_pointed_mset()?;
    pointed_complex(t.alphabet(), &x, args)
}

fn factorization_complex(model: &Model, word: &str) -> Result<ChainComplex> {
    let Model::Alphabet(a) = model else {
        return Err(Unsupported("--factorizations needs an alphabet model".into()).into());
    };
    let alpha = Trace::parse(a, word)?;
    let (_, poset) = factorization_poset(a, &alpha)?;
    Ok(poset.order_complex().complex())
}

fn write_groups(groups: &[FGAbelianGroup], format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Text => {
            for (n, g) in groups.iter().enumerate() {
                writeln!(out, "H_{n} = {g}")?;
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = groups
                .iter()
                .enumerate()
                .map(|(n, g)| {
                    serde_json::json!({
                        "degree": n,
                        "group": g.to_string(),
                        "free_rank": g.free_rank,
                        "torsion": g.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    })
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &serde_json::json!({ "homology": rows }))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn snf(input: &Path, transforms: bool, out: &mut dyn Write) -> Result<()> {
    let text = read_text(input)?;
    let a: IntegerMatrix = text
        .parse()
        .with_context(|| format!("in {}", input.display()))?;
    let snf = smith_normal_form(&a);
    let factors: Vec<String> = snf
        .invariant_factors
        .iter()
        .map(ToString::to_string)
        .collect();
    writeln!(out, "# invariant factors {}", factors.join(" "))?;
    write!(out, "# D\n{}", snf.d)?;
    if transforms {
        write!(out, "# T\n{}# S\n{}", snf.t, snf.s)?;
    }
    Ok(())
}
