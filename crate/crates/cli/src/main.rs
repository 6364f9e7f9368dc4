use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use hopfperm::format::{self, Algebra, Expansion};
use hopfperm::structure::{self, TableName};
use hopfperm::verify;
use hopfperm::{config, qsym, ssym, weak_order, Basis, Error, Permutation};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DEGREE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hopfperm",
    version,
    about = "Exact computations with permutations and quasi-symmetric functions"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite an element in another basis.
    Expand {
        #[command(flatten)]
        space: Space,
        /// Basis of the input.
        #[arg(long, value_enum)]
        from: BasisArg,
        /// Basis of the output.
        #[arg(long, value_enum)]
        to: BasisArg,
        element: String,
    },
    /// Multiply two elements.
    Product {
        #[command(flatten)]
        space: Space,
        #[arg(long, value_enum, default_value = "F")]
        basis: BasisArg,
        left: String,
        right: String,
    },
    /// Coproduct of an element.
    Coproduct {
        #[command(flatten)]
        space: Space,
        #[arg(long, value_enum, default_value = "F")]
        basis: BasisArg,
        element: String,
    },
    /// Antipode of an element, optionally iterated.
    Antipode {
        #[command(flatten)]
        space: Space,
        #[arg(long, value_enum, default_value = "F")]
        basis: BasisArg,
        /// Apply the antipode this many times.
        #[arg(long, default_value_t = 1)]
        power: usize,
        /// Use the alternating sum of convolution powers instead of the closed form.
        #[arg(long)]
        takeuchi: bool,
        element: String,
    },
    /// Mobius function of the weak order: mu(u, v), or every nonzero mu(u, -).
    Mobius { u: String, v: Option<String> },
    /// Tables of theta and of the descent-pair numbers d, b, c.
    Table {
        #[arg(long, value_enum)]
        name: TableArg,
        #[arg(long)]
        degree: usize,
    },
    /// Global-descent generating series G_k.
    Series {
        /// G1, G2, ...
        #[arg(long, default_value = "G1")]
        name: String,
        /// Number of coefficients, starting at the lowest degree.
        #[arg(long, default_value_t = 7)]
        terms: usize,
    },
    /// Permutations without global descents (indices of a basis of the primitives).
    Primitives {
        #[arg(long)]
        degree: usize,
    },
    /// Basis of the Hopf kernel of the descent map.
    Kernel {
        #[arg(long)]
        degree: usize,
    },
    /// Run invariant suites.
    Verify {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
        /// List the suites and their checks instead of running them.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
struct Space {
    #[arg(long, value_enum, default_value = "ssym")]
    algebra: AlgebraArg,
    /// Work in the dual basis.
    #[arg(long)]
    dual: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraArg {
    Ssym,
    Qsym,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    #[value(name = "F", alias = "f")]
    F,
    #[value(name = "M", alias = "m")]
    M,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    Theta,
    D,
    B,
    C,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::F => Basis::F,
            BasisArg::M => Basis::M,
        }
    }
}

impl From<AlgebraArg> for Algebra {
    fn from(a: AlgebraArg) -> Algebra {
        match a {
            AlgebraArg::Ssym => Algebra::Ssym,
            AlgebraArg::Qsym => Algebra::Qsym,
        }
    }
}

impl From<TableArg> for TableName {
    fn from(t: TableArg) -> TableName {
        match t {
            TableArg::Theta => TableName::Theta,
            TableArg::D => TableName::D,
            TableArg::B => TableName::B,
            TableArg::C => TableName::C,
        }
    }
}

/// What a command produced.
enum Output {
    Text(String),
    Both {
        text: String,
        json: serde_json::Value,
    },
    Expansion(Expansion),
    Verify(verify::VerifyReport),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    if let Ok(v) = std::env::var("HOPFPERM_MAX_DEGREE") {
        match v.trim().parse::<usize>() {
            Ok(n) => config::set_max_degree(n),
            Err(_) => {
                eprintln!("error: HOPFPERM_MAX_DEGREE must be a nonnegative integer, got {v:?}");
                return ExitCode::from(EXIT_USAGE);
            }
        }
    }
    match run(&cli.command) {
        Ok(out) => emit(out, cli.json),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) => {
                    eprintln!("{}", Cli::command().render_usage());
                    ExitCode::from(EXIT_USAGE)
                }
                Error::DegreeTooLarge { .. } => ExitCode::from(EXIT_DEGREE),
                _ => ExitCode::from(EXIT_FAILURE),
            }
        }
    }
}

fn emit(out: Output, json: bool) -> ExitCode {
    match out {
        Output::Text(t) => println!("{t}"),
        Output::Both { text, json: v } => {
            if json {
                println!("{v}");
            } else {
                println!("{text}");
            }
        }
        Output::Expansion(x) => {
            if json {
                println!("{}", x.to_json());
            } else {
                println!("{}", x.to_text());
            }
        }
        Output::Verify(report) => {
            if json {
                println!("{}", report.to_json());
            } else {
                println!("{}", report.to_text());
            }
            if !report.all_passed() {
                return ExitCode::from(EXIT_FAILURE);
            }
        }
    }
    ExitCode::SUCCESS
}

fn element(text: &str, space: &Space, basis: BasisArg) -> hopfperm::Result<Expansion> {
    let x = format::parse_element(text, space.algebra.into(), basis.into(), space.dual)?;
    let (b, d) = match &x {
        Expansion::Perm(p) => (p.basis, p.dual),
        Expansion::QSym(q) => (q.basis, q.dual),
        _ => {
            return Err(Error::Parse(format!(
                "{text:?} is a tensor, expected an element"
            )))
        }
    };
    if b != Basis::from(basis) || d != space.dual {
        return Err(Error::Parse(format!(
            "{text:?} is not written in the {}{} basis",
            Basis::from(basis),
            if space.dual { "*" } else { "" }
        )));
    }
    Ok(x)
}

fn run(command: &Command) -> hopfperm::Result<Output> {
    Ok(match command {
        Command::Expand {
            space,
            from,
            to,
            element: text,
        } => {
            let target = Basis::from(*to);
            match element(text, space, *from)? {
                Expansion::Perm(x) => Output::Expansion(ssym::to_basis(&x, target)?.into()),
                Expansion::QSym(x) => Output::Expansion(qsym::to_basis(&x, target)?.into()),
                _ => unreachable!("element() only returns elements"),
            }
        }
        Command::Product {
            space,
            basis,
            left,
            right,
        } => match (
            element(left, space, *basis)?,
            element(right, space, *basis)?,
        ) {
            (Expansion::Perm(x), Expansion::Perm(y)) => {
                Output::Expansion(ssym::product(&x, &y)?.into())
            }
            (Expansion::QSym(x), Expansion::QSym(y)) => {
                Output::Expansion(qsym::product(&x, &y)?.into())
            }
            _ => unreachable!("both factors come from the same algebra"),
        },
        Command::Coproduct {
            space,
            basis,
            element: text,
        } => match element(text, space, *basis)? {
            Expansion::Perm(x) => Output::Expansion(ssym::coproduct(&x)?.into()),
            Expansion::QSym(x) => Output::Expansion(qsym::coproduct(&x)?.into()),
            _ => unreachable!("element() only returns elements"),
        },
        Command::Antipode {
            space,
            basis,
            power,
            takeuchi,
            element: text,
        } => match element(text, space, *basis)? {
            Expansion::Perm(mut x) => {
                for _ in 0..*power {
                    x = if *takeuchi {
                        ssym::takeuchi_antipode(&x)?
                    } else {
                        ssym::antipode(&x)?
                    };
                }
                Output::Expansion(x.into())
            }
            Expansion::QSym(mut x) => {
                if *takeuchi {
                    return Err(Error::InvalidInput(
                        "--takeuchi applies to permutation expansions".into(),
                    ));
                }
                for _ in 0..*power {
                    x = qsym::antipode(&x)?;
                }
                Output::Expansion(x.into())
            }
            _ => unreachable!("element() only returns elements"),
        },
        Command::Mobius { u, v } => {
            let u: Permutation = u.parse()?;
            match v {
                Some(v) => {
                    let v: Permutation = v.parse()?;
                    let mu = weak_order::mobius(&u, &v)?;
                    Output::Both {
                        text: mu.to_string(),
                        json: serde_json::json!({"u": u.to_string(), "v": v.to_string(), "mobius": mu}),
                    }
                }
                None => {
                    let row = weak_order::mobius_row(&u)?;
                    let lines: Vec<String> = row.iter().map(|(v, m)| format!("{v} {m}")).collect();
                    let json = serde_json::json!({
                        "u": u.to_string(),
                        "values": row.iter().map(|(v, m)| serde_json::json!({"v": v.to_string(), "mobius": m})).collect::<Vec<_>>(),
                    });
                    Output::Both {
                        text: lines.join("\n"),
                        json,
                    }
                }
            }
        }
        Command::Table { name, degree } => {
            let table = structure::table((*name).into(), *degree)?;
            Output::Both {
                text: table.to_csv()?.trim_end().to_string(),
                json: table.to_json(),
            }
        }
        Command::Series { name, terms } => {
            let k: usize = name
                .strip_prefix(['G', 'g'])
                .and_then(|k| k.parse().ok())
                .filter(|&k| k >= 1)
                .ok_or_else(|| {
                    Error::Parse(format!("unknown series {name:?}; expected G1, G2, ..."))
                })?;
            if *terms == 0 {
                return Err(Error::Parse("--terms must be positive".into()));
            }
            let series = structure::g_series(k, k + terms - 1)?;
            let window = series.window(k, *terms);
            let text = window
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            let json = serde_json::json!({
                "name": format!("G{k}"),
                "start_degree": k,
                "coefficients": window.iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            Output::Both { text, json }
        }
        Command::Primitives { degree } => {
            perm_list("primitives", *degree, structure::primitives(*degree)?)
        }
        Command::Kernel { degree } => {
            perm_list("kernel", *degree, structure::hopf_kernel_basis(*degree)?)
        }
        Command::Verify {
            suite,
            max_degree,
            list,
        } => {
            let suites = verify::parse_suites(suite)?;
            if *list {
                let mut lines = Vec::new();
                for s in &suites {
                    for (name, min, cap) in verify::describe(*s) {
                        lines.push(format!("{s}: {name} (n = {min}..{cap})"));
                    }
                }
                return Ok(Output::Text(lines.join("\n")));
            }
            config::check_degree(*max_degree)?;
            Output::Verify(verify::run(&suites, *max_degree))
        }
    })
}

fn perm_list(name: &str, degree: usize, perms: Vec<Permutation>) -> Output {
    let words: Vec<String> = perms.iter().map(ToString::to_string).collect();
    let json = serde_json::json!({"set": name, "degree": degree, "dimension": perms.len(), "basis": words});
    let mut text = format!("dimension {}", perms.len());
    for w in &words {
        text.push('\n');
        text.push_str(w);
    }
    Output::Both { text, json }
}
