//! `roughmat` command-line front-end. Parses inputs, calls the library and
//! renders results; all computation lives in the `roughmat` crate.
//!
//! Exit status: 0 on success, 1 when a verification sweep finds failures,
//! 2 on input, usage or size-guard errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use roughmat::binrel::{
    is_binary_dependence, relation_from_matrix, BdmVerdict, BdmWitness, PairRelation,
};
use roughmat::io::{
    detect_kind, parse_matrix, parse_partition, parse_set, write_matrix, InputKind,
};
use roughmat::matroid::{bases_via_ones, circuits_via_nullspace, VectorMatroid};
use roughmat::verify::{self, Theorem, VerifyConfig, VerifyReport};
use roughmat::{ElementSet, ExactMatrix, FieldSpec, SetFamily};

#[derive(Parser)]
#[command(
    name = "roughmat",
    version,
    about = "Rough set partitions and their vector matroids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Lower,
    Upper,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Circuits,
    Bases,
    IndepCheck,
    NullspaceMin,
    OnesMin,
    Relation,
    IsBdm,
    Encode,
}

impl What {
    fn name(self) -> &'static str {
        match self {
            What::Circuits => "circuits",
            What::Bases => "bases",
            What::IndepCheck => "indep-check",
            What::NullspaceMin => "nullspace-min",
            What::OnesMin => "ones-min",
            What::Relation => "relation",
            What::IsBdm => "is-bdm",
            What::Encode => "encode",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Lower or upper approximation of a set under a partition.
    Approx {
        /// Partition file.
        file: PathBuf,
        #[arg(long, value_enum)]
        which: Which,
        /// Set literal, e.g. `x1,x2,x3`; `{}` or `-` for the empty set.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Run one computation on a matrix or partition file.
    Compute {
        /// Matrix or partition file.
        file: PathBuf,
        #[arg(value_enum)]
        what: What,
        /// Field tag (gf2, gf<p>, q). Reinterprets a matrix, or encodes a
        /// partition over this field (default gf2).
        #[arg(long)]
        field: Option<FieldSpec>,
        /// Set literal for `indep-check`.
        #[arg(long, allow_hyphen_values = true)]
        set: Option<String>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Run a verification sweep.
    Verify {
        /// One of t1, t2, t3, t4, props, all.
        theorem: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
}

/// A failure that ends the program with exit status 2.
struct CliError(String);

impl From<roughmat::Error> for CliError {
    fn from(e: roughmat::Error) -> CliError {
        CliError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((text, code)) => {
            print!("{text}");
            code
        }
        Err(CliError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(String, ExitCode), CliError> {
    match command {
        Command::Approx {
            file,
            which,
            set,
            format,
        } => approx(&file, which, &set, format).map(|t| (t, ExitCode::SUCCESS)),
        Command::Compute {
            file,
            what,
            field,
            set,
            format,
        } => compute(&file, what, field, set.as_deref(), format).map(|t| (t, ExitCode::SUCCESS)),
        Command::Verify {
            theorem,
            max_n,
            seed,
            samples,
            format,
        } => verify_cmd(
            &theorem,
            VerifyConfig {
                max_n,
                seed,
                samples,
            },
            format,
        ),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn labels(set: &ElementSet) -> Vec<String> {
    set.labels().into_iter().map(str::to_string).collect()
}

fn approx(path: &Path, which: Which, literal: &str, format: Format) -> Result<String, CliError> {
    let partition = parse_partition(&read(path)?)?;
    let x = parse_set(partition.universe(), literal)?;
    let result = match which {
        Which::Lower => partition.lower_approx(&x)?,
        Which::Upper => partition.upper_approx(&x)?,
    };
    Ok(match format {
        Format::Plain if result.is_empty() => String::new(),
        Format::Plain => format!("{result}\n"),
        Format::Structured => {
            #[derive(Serialize)]
            struct Out<'a> {
                command: &'a str,
                which: &'a str,
                set: Vec<String>,
            }
            json(&Out {
                command: "approx",
                which: if which == Which::Lower {
                    "lower"
                } else {
                    "upper"
                },
                set: labels(&result),
            })
        }
    })
}

/// Loads the file as a matrix, encoding partitions over `field` (GF(2) when
/// unset) and reinterpreting matrices when `field` is given.
fn load_matrix(text: &str, field: Option<FieldSpec>) -> Result<ExactMatrix, CliError> {
    Ok(match detect_kind(text)? {
        InputKind::Partition => {
            parse_partition(text)?.encode_matrix(field.unwrap_or(FieldSpec::Binary))
        }
        InputKind::Matrix => {
            let m = parse_matrix(text)?;
            match field {
                Some(spec) if spec != m.spec() => m.reinterpret(spec)?,
                _ => m,
            }
        }
    })
}

fn compute(
    path: &Path,
    what: What,
    field: Option<FieldSpec>,
    set: Option<&str>,
    format: Format,
) -> Result<String, CliError> {
    let text = read(path)?;
    if what == What::Encode && detect_kind(&text)? != InputKind::Partition {
        return Err(CliError("encode expects a partition file".to_string()));
    }
    let matrix = load_matrix(&text, field)?;
    let header = Header {
        command: what.name(),
        field: matrix.spec().tag(),
    };
    let family = |f: SetFamily| render_family(&header, &f, format);
    Ok(match what {
        What::Circuits => family(VectorMatroid::new(matrix).circuits()?),
        What::Bases => family(VectorMatroid::new(matrix).bases()?),
        What::NullspaceMin => family(circuits_via_nullspace(&matrix)?),
        What::OnesMin => family(bases_via_ones(&matrix)?),
        What::IndepCheck => {
            let literal = set.ok_or_else(|| CliError("indep-check needs --set".to_string()))?;
            let s = parse_set(matrix.labels(), literal)?;
            let independent = VectorMatroid::new(matrix).independent(&s)?;
            render_independence(&header, &s, independent, format)
        }
        What::Relation => render_relation(&header, &relation_from_matrix(&matrix), format),
        What::IsBdm => render_verdict(&header, &matrix, &is_binary_dependence(&matrix)?, format),
        What::Encode => match format {
            Format::Plain => write_matrix(&matrix),
            Format::Structured => {
                #[derive(Serialize)]
                struct Out<'a> {
                    #[serde(flatten)]
                    header: &'a Header,
                    labels: &'a [String],
                    rows: Vec<Vec<String>>,
                }
                json(&Out {
                    header: &header,
                    labels: matrix.labels().labels(),
                    rows: (0..matrix.rows())
                        .map(|r| matrix.row(r).iter().map(ToString::to_string).collect())
                        .collect(),
                })
            }
        },
    })
}

#[derive(Serialize)]
struct Header {
    command: &'static str,
    field: String,
}

fn render_family(header: &Header, family: &SetFamily, format: Format) -> String {
    match format {
        Format::Plain => family
            .iter()
            .map(|s| {
                if s.is_empty() {
                    "{}\n".to_string()
                } else {
                    format!("{s}\n")
                }
            })
            .collect(),
        Format::Structured => {
            #[derive(Serialize)]
            struct Out<'a> {
                #[serde(flatten)]
                header: &'a Header,
                sets: Vec<Vec<String>>,
            }
            json(&Out {
                header,
                sets: family.iter().map(|s| labels(&s)).collect(),
            })
        }
    }
}

fn render_independence(
    header: &Header,
    set: &ElementSet,
    independent: bool,
    format: Format,
) -> String {
    match format {
        Format::Plain => format!(
            "{}\n",
            if independent {
                "independent"
            } else {
                "dependent"
            }
        ),
        Format::Structured => {
            #[derive(Serialize)]
            struct Out<'a> {
                #[serde(flatten)]
                header: &'a Header,
                set: Vec<String>,
                independent: bool,
            }
            json(&Out {
                header,
                set: labels(set),
                independent,
            })
        }
    }
}

fn render_relation(header: &Header, relation: &PairRelation, format: Format) -> String {
    match format {
        Format::Plain => relation.to_string(),
        Format::Structured => {
            #[derive(Serialize)]
            struct Out<'a> {
                #[serde(flatten)]
                header: &'a Header,
                pairs: Vec<[&'a str; 2]>,
            }
            let u = relation.universe();
            json(&Out {
                header,
                pairs: relation
                    .pairs()
                    .map(|(a, b)| [u.label(a), u.label(b)])
                    .collect(),
            })
        }
    }
}

fn render_verdict(
    header: &Header,
    matrix: &ExactMatrix,
    verdict: &BdmVerdict,
    format: Format,
) -> String {
    let witness = verdict.witness().map(|w| match w {
        BdmWitness::ZeroColumn(c) => ("zero-column", vec![matrix.labels().label(*c).to_string()]),
        BdmWitness::DependentSet(s) => ("dependent-set", labels(s)),
    });
    match format {
        Format::Plain => match witness {
            None => "member\n".to_string(),
            Some((kind, set)) => format!("non-member\n{kind} {}\n", set.join(" ")),
        },
        Format::Structured => {
            #[derive(Serialize)]
            struct Witness<'a> {
                kind: &'a str,
                set: Vec<String>,
            }
            #[derive(Serialize)]
            struct Out<'a> {
                #[serde(flatten)]
                header: &'a Header,
                member: bool,
                witness: Option<Witness<'a>>,
            }
            json(&Out {
                header,
                member: verdict.is_member(),
                witness: witness.map(|(kind, set)| Witness { kind, set }),
            })
        }
    }
}

fn verify_cmd(
    theorem: &str,
    config: VerifyConfig,
    format: Format,
) -> Result<(String, ExitCode), CliError> {
    let reports: Vec<VerifyReport> = if theorem == "all" {
        verify::run_all(&config)?
    } else {
        let t: Theorem = theorem.parse().map_err(CliError)?;
        vec![verify::run(t, &config)?]
    };
    // Wall time goes to stderr so that stdout is reproducible.
    for r in &reports {
        eprintln!("{}: {:.3}s", r.theorem, r.elapsed.as_secs_f64());
    }
    let text = match format {
        Format::Plain => reports
            .iter()
            .map(|r| {
                let mut s = format!("{r}\n");
                for failure in &r.failures {
                    s.push_str(&format!("  {failure}\n"));
                }
                s
            })
            .collect(),
        Format::Structured => {
            #[derive(Serialize)]
            struct Out<'a> {
                theorem: String,
                passed: bool,
                max_n: usize,
                instances: usize,
                seed: Option<u64>,
                failures: &'a [String],
            }
            let out: Vec<Out> = reports
                .iter()
                .map(|r| Out {
                    theorem: r.theorem.to_string(),
                    passed: r.passed(),
                    max_n: r.max_n,
                    instances: r.instances,
                    seed: r.seed,
                    failures: &r.failures,
                })
                .collect();
            json(&out)
        }
    };
    let code = if reports.iter().all(VerifyReport::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    };
    Ok((text, code))
}
