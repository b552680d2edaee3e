use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wpolar_core::harness::{BoundCampaign, VerificationReport};
use wpolar_core::{
    bound_by_name, enumerate_chemical_trees, family_by_name, parse_edge_list, report_to_csv,
    report_to_json, rule_catalog, serialize, verify_bounds, verify_rules, verify_wp_equivalence,
    Constraint, EnumerationQuery,
};

#[derive(Parser, Debug)]
#[command(name = "wpolar", version, about = "Wiener polarity index of chemical trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute W_p of a tree given as an edge list ("-" reads stdin).
    Compute {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Edge)]
        method: Method,
    },
    /// Stream every chemical tree of order n, optionally filtered.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        param: OptionalParam,
        #[arg(long, value_enum, default_value_t = Emit::Trees)]
        emit: Emit,
    },
    /// Evaluate a closed-form bound.
    Bound {
        #[arg(long)]
        which: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        param: Param,
    },
    /// Build a member of an extremal family.
    Construct {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        param: Param,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification campaign against exhaustive enumeration.
    Verify {
        #[arg(long, value_enum)]
        which: Which,
        /// Publish the empirical fixed-k minimum table instead of the bound checks.
        #[arg(long)]
        min_k_empirical: bool,
        /// Restrict a bounds campaign to one formula.
        #[arg(long, conflicts_with = "min_k_empirical")]
        bound: Option<String>,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Describe the rewrite rules.
    Rules {
        #[arg(long, required = true)]
        list: bool,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Param {
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args, Debug)]
#[group(required = false, multiple = false)]
struct OptionalParam {
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
}

impl Param {
    fn get(&self) -> (Constraint, usize) {
        match (self.b, self.k) {
            (Some(b), _) => (Constraint::Branching, b),
            (_, Some(k)) => (Constraint::Segments, k),
            _ => unreachable!("clap requires one of --b or --k"),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Edge,
    Distance,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Emit {
    Trees,
    Census,
    Count,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    Bounds,
    Rules,
    WpEquiv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Input or usage problem; exits with status 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display()))),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn check_symbol(expected: Constraint, given: Constraint, what: &str) -> Result<(), Failure> {
    if expected != given {
        return Err(Failure(format!("{what} takes --{}, not --{}", expected.symbol(), given.symbol())));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Compute { input, method } => {
            let tree = parse_edge_list(&read_input(&input)?)?;
            match method {
                Method::Edge => println!("{}", tree.wp_edge()),
                Method::Distance => println!("{}", tree.wp_distance()),
                Method::Both => println!("{} {}", tree.wp_edge(), tree.wp_distance()),
            }
        }
        Command::Enumerate { n, param, emit } => {
            let query = match (param.b, param.k) {
                (Some(b), _) => EnumerationQuery::with_branching(n, b),
                (_, Some(k)) => EnumerationQuery::with_segments(n, k),
                _ => EnumerationQuery::all(n),
            };
            let trees = enumerate_chemical_trees(query)?;
            let mut out = BufWriter::new(io::stdout().lock());
            match emit {
                Emit::Count => writeln!(out, "{}", trees.count())?,
                Emit::Trees => {
                    for (i, t) in trees.enumerate() {
                        if i > 0 {
                            writeln!(out)?;
                        }
                        out.write_all(serialize(&t).as_bytes())?;
                    }
                }
                Emit::Census => {
                    writeln!(out, "n1,n2,n3,n4,b,k,wp,code")?;
                    for t in trees {
                        let c = t.degree_census();
                        writeln!(
                            out,
                            "{},{},{},{},{},{},{},{}",
                            c.n1,
                            c.n2,
                            c.n3,
                            c.n4,
                            t.branching_count(),
                            t.segment_count(),
                            t.wp_edge(),
                            t.canonical_form()
                        )?;
                    }
                }
            }
            out.flush()?;
        }
        Command::Bound { which, n, param } => {
            let bound = bound_by_name(&which)?;
            let (constraint, value) = param.get();
            check_symbol(bound.constraint(), constraint, bound.name())?;
            let result = bound.evaluate(n, value)?;
            println!("{}", serde_json::to_string(&result)?);
        }
        Command::Construct { family, n, param, out } => {
            let family = family_by_name(&family)?;
            let (constraint, value) = param.get();
            check_symbol(family.constraint(), constraint, family.name())?;
            let tree = family.construct(n, value)?;
            write_output(out.as_deref(), &serialize(&tree))?;
        }
        Command::Verify {
            which,
            min_k_empirical,
            bound,
            n_min,
            n_max,
            format,
            out,
        } => {
            let report = match which {
                Which::Bounds if min_k_empirical => verify_bounds(n_min, n_max, BoundCampaign::MinKEmpirical)?,
                Which::Bounds => {
                    let campaigns = match bound {
                        Some(name) => vec![name.parse::<BoundCampaign>()?],
                        None => vec![BoundCampaign::MaxB, BoundCampaign::MinB, BoundCampaign::MaxK],
                    };
                    if campaigns.contains(&BoundCampaign::MinKEmpirical) {
                        return Err(Failure("use --min-k-empirical for the fixed-k minimum table".into()));
                    }
                    let parts = campaigns
                        .into_iter()
                        .map(|c| verify_bounds(n_min, n_max, c))
                        .collect::<Result<Vec<_>, _>>()?;
                    if parts.len() == 1 {
                        parts.into_iter().next().expect("one part")
                    } else {
                        VerificationReport::merge("bounds", parts)
                    }
                }
                Which::Rules if min_k_empirical || bound.is_some() => {
                    return Err(Failure("--min-k-empirical and --bound apply only to --which bounds".into()))
                }
                Which::WpEquiv if min_k_empirical || bound.is_some() => {
                    return Err(Failure("--min-k-empirical and --bound apply only to --which bounds".into()))
                }
                Which::Rules => verify_rules(n_min, n_max)?,
                Which::WpEquiv => verify_wp_equivalence(n_min, n_max)?,
            };
            let text = match format {
                Format::Csv => report_to_csv(&report),
                Format::Json => report_to_json(&report),
            };
            write_output(out.as_deref(), &text)?;
            if !report.passed() {
                eprintln!("{} violation(s) in campaign {}", report.violations.len(), report.campaign);
                return Ok(2);
            }
        }
        Command::Rules { .. } => {
            let mut out = BufWriter::new(io::stdout().lock());
            for rule in rule_catalog() {
                writeln!(
                    out,
                    "{}\tpreserves {}\tdelta {}\t{}\tsite ({})",
                    rule.id(),
                    rule.preserves().symbol(),
                    rule.sign(),
                    rule.label(),
                    rule.variables().join(",")
                )?;
                writeln!(out, "\t{}", rule.hypothesis())?;
            }
            out.flush()?;
        }
    }
    Ok(0)
}
