//! `polycrystal`: emit, enumerate, graph and verify polyhedral realizations
//! of crystal bases.
//!
//! Exit status is 0 on success, 1 on invalid input and 2 when `verify`
//! reports a failing check.

use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use polycrystal::forms::{closure, lambda_form, FormSet, LinearForm, Operator};
use polycrystal::polytope::{self, build, Object, Polyhedron, Source};
use polycrystal::rootdata::{cartan_matrix, weyl_dim, CartanDatum, TypeLabel, Weight};
use polycrystal::zcrystal::{Ambient, Iota, Pos, ZVector};
use polycrystal::{Error, Limits};

use polycrystal_cli::output::{self, Graph, Header};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    /// Print the defining inequalities.
    Emit,
    /// List lattice points (B(λ), or B(∞) up to --depth).
    Enumerate,
    /// Print the crystal graph.
    Graph,
    /// Run the verification harness.
    Verify,
    /// Weyl dimension of V(λ).
    Dim,
    /// Operator closure of x_{j;1} (or of the λ^(i) for blambda).
    Closure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ObjectArg {
    Binf,
    Blambda,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SourceArg {
    Table,
    Closure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

/// Polyhedral realizations of crystal bases B(∞) and B(λ).
///
/// Size caps: POLYCRYSTAL_CLOSURE_CAP (default 100000 forms) and
/// POLYCRYSTAL_ENUM_CAP (default 10000000 points).
#[derive(Debug, Parser)]
#[command(name = "polycrystal", version)]
struct Cli {
    command: Command,
    /// Cartan type: A, B, C, D, E6, E7, E8, F4, G2.
    #[arg(long = "type", value_name = "TYPE")]
    type_label: String,
    /// Rank; implied for the exceptional types.
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long, value_enum, default_value = "binf")]
    object: ObjectArg,
    /// Dominant weight as comma-separated fundamental-weight coordinates.
    #[arg(long, value_name = "L1,L2,...")]
    lambda: Option<String>,
    /// Coordinate-sum bound for B(∞); for `closure`, the number of rows of
    /// generators.
    #[arg(long)]
    depth: Option<usize>,
    /// Inequality source; `verify` runs both when omitted, the other commands
    /// prefer the table and fall back to the closure when none exists.
    #[arg(long, value_enum)]
    source: Option<SourceArg>,
    /// Output format; `dot` is only valid for `graph`.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

/// A failure and the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

struct Request {
    command: Command,
    cartan: CartanDatum,
    object: ObjectArg,
    lambda: Option<Weight>,
    depth: Option<usize>,
    source: Option<Source>,
    format: Format,
}

/// Accepts `F4` as well as `F` with `--rank 4`.
fn parse_label(text: &str, rank: Option<usize>) -> Result<TypeLabel, Failure> {
    let upper = text.trim().to_ascii_uppercase();
    let joined = match (upper.as_str(), rank) {
        ("E" | "F" | "G", Some(r)) => format!("{upper}{r}"),
        _ => upper,
    };
    Ok(joined.parse()?)
}

impl Request {
    fn from_cli(cli: Cli) -> Result<Self, Failure> {
        let label = parse_label(&cli.type_label, cli.rank)?;
        let rank = match (cli.rank, label.fixed_rank()) {
            (Some(r), _) => r,
            (None, Some(r)) => r,
            (None, None) => return Err(invalid(format!("--rank is required for type {label}"))),
        };
        let cartan = cartan_matrix(label, rank)?;
        let lambda = cli
            .lambda
            .as_deref()
            .map(|s| parse_weight(s, &cartan))
            .transpose()?;
        let needs_lambda = cli.object == ObjectArg::Blambda || cli.command == Command::Dim;
        if needs_lambda && lambda.is_none() {
            return Err(invalid("this request needs --lambda"));
        }
        if cli.command != Command::Verify
            && cli.command != Command::Dim
            && cli.object == ObjectArg::Binf
            && lambda.is_some()
        {
            return Err(invalid("--lambda only applies to --object blambda"));
        }
        let format = cli.format.unwrap_or(if cli.command == Command::Graph {
            Format::Dot
        } else {
            Format::Text
        });
        if format == Format::Dot && cli.command != Command::Graph {
            return Err(invalid("--format dot is only valid for graph"));
        }
        let source = cli.source.map(|s| match s {
            SourceArg::Table => Source::Table,
            SourceArg::Closure => Source::Closure,
        });
        Ok(Request {
            command: cli.command,
            cartan,
            object: cli.object,
            lambda,
            depth: cli.depth,
            source,
            format,
        })
    }

    fn object(&self) -> Object {
        match (&self.object, &self.lambda) {
            (ObjectArg::Blambda, Some(l)) => Object::Blambda(l.clone()),
            _ => Object::Binf,
        }
    }

    fn header(&self, source: Source) -> Header {
        Header {
            type_label: self.cartan.type_label.to_string(),
            rank: self.cartan.rank,
            object: self.object().name().to_string(),
            lambda: self
                .lambda
                .as_ref()
                .filter(|_| self.object == ObjectArg::Blambda)
                .map(|l| l.0.clone()),
            source: source.as_str().to_string(),
        }
    }

    fn depth(&self) -> Result<usize, Failure> {
        self.depth
            .ok_or_else(|| invalid("this request needs --depth"))
    }
}

fn parse_weight(s: &str, cartan: &CartanDatum) -> Result<Weight, Failure> {
    let parts: Result<Vec<i64>, _> = s.split(',').map(|t| t.trim().parse::<i64>()).collect();
    let w = Weight(parts.map_err(|_| invalid(format!("cannot parse --lambda `{s}`")))?);
    cartan.check_weight(&w)?;
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.0).into());
    }
    Ok(w)
}

fn build_requested(req: &Request, limits: &Limits) -> Result<(Polyhedron, Source), Failure> {
    if let Some(source) = req.source {
        return Ok((build(&req.cartan, req.object(), source, limits)?, source));
    }
    match build(&req.cartan, req.object(), Source::Table, limits) {
        Err(Error::UnsupportedTable { .. }) => Ok((
            build(&req.cartan, req.object(), Source::Closure, limits)?,
            Source::Closure,
        )),
        other => Ok((other?, Source::Table)),
    }
}

fn run(req: &Request, limits: &Limits) -> Result<String, Failure> {
    match req.command {
        Command::Emit => {
            let (poly, source) = build_requested(req, limits)?;
            Ok(emit_forms(req, &req.header(source), &poly.forms()))
        }
        Command::Enumerate => {
            let (poly, source) = build_requested(req, limits)?;
            let (points, depth) = match req.object {
                ObjectArg::Blambda => (poly.enumerate_blambda(limits)?, None),
                ObjectArg::Binf => {
                    let d = req.depth()?;
                    (poly.enumerate_binf_truncated(d, limits)?, Some(d))
                }
            };
            Ok(match req.format {
                Format::Json => output::points_to_json(&req.header(source), depth, &points),
                _ => output::points_to_text(&points),
            })
        }
        Command::Graph => {
            let iota = Iota::new(req.cartan.clone());
            let graph = match (&req.object, &req.lambda) {
                (ObjectArg::Blambda, Some(l)) => {
                    let g = iota.crystal_graph(l, limits.enumeration_cap)?;
                    Graph::new(g.nodes, g.edges)
                }
                _ => binf_graph(&iota, req.depth()?),
            };
            let name = req.cartan.type_label.name(req.cartan.rank);
            Ok(match req.format {
                Format::Dot => output::graph_to_dot(&name, &graph),
                Format::Json => output::graph_to_json(&graph),
                Format::Text => output::graph_to_text(&graph),
            })
        }
        Command::Verify => {
            let sources: Vec<Source> = req.source.map_or(Source::ALL.to_vec(), |s| vec![s]);
            let report = polytope::verify(
                &req.cartan,
                req.lambda.as_ref(),
                req.depth.unwrap_or(3),
                &sources,
                limits,
            );
            let text = format!("{report}\n");
            if report.passed() {
                Ok(text)
            } else {
                Err(Failure {
                    code: 2,
                    message: text,
                })
            }
        }
        Command::Dim => {
            let lambda = req.lambda.as_ref().expect("validated");
            Ok(format!("{}\n", weyl_dim(&req.cartan, lambda)?))
        }
        Command::Closure => {
            let iota = Iota::new(req.cartan.clone());
            let n = req.cartan.rank;
            let bound = polytope::closure_row_bound(&iota)? * n;
            let (gens, op): (FormSet, Operator) = match req.object {
                ObjectArg::Binf => {
                    let rows = req.depth.unwrap_or(1).max(1);
                    (
                        (1..=rows)
                            .map(|j| LinearForm::coordinate(n, Pos::new(j, 1)))
                            .collect(),
                        Operator::S,
                    )
                }
                ObjectArg::Blambda => (
                    (1..=n).map(|i| lambda_form(&iota, i)).collect(),
                    Operator::SHat,
                ),
            };
            let c = closure(&iota, &gens, op, bound, limits.closure_cap)?;
            if c.truncated {
                return Err(invalid("closure did not stabilize within the row bound"));
            }
            let mut text = emit_forms(req, &req.header(Source::Closure), &c.forms);
            if req.format == Format::Text && !c.violations.is_empty() {
                text.push_str(&format!(
                    "# positivity violations: {}\n",
                    c.violations.len()
                ));
            }
            Ok(text)
        }
    }
}

fn emit_forms(req: &Request, header: &Header, forms: &FormSet) -> String {
    match req.format {
        Format::Json => output::system_to_json(header, forms),
        _ => output::system_to_text(header, forms),
    }
}

/// `B(∞)` up to coordinate sum `depth`, with the `f̃_i` edges inside it.
fn binf_graph(iota: &Iota, depth: usize) -> Graph {
    let nodes: Vec<ZVector> = iota.generate_binf(depth).into_iter().collect();
    let index: BTreeSet<&ZVector> = nodes.iter().collect();
    let position = |v: &ZVector| nodes.binary_search(v).ok();
    let mut edges = Vec::new();
    for (s, x) in nodes.iter().enumerate() {
        for i in 1..=iota.rank() {
            if let Some(y) = iota
                .f_tilde(x, &Ambient::Plain, i)
                .filter(|y| index.contains(y))
            {
                edges.push((s, i, position(&y).expect("member")));
            }
        }
    }
    Graph::new(nodes, edges)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let limits = Limits::from_env();
    let result = Request::from_cli(cli).and_then(|req| run(&req, &limits));
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure { code: 2, message }) => {
            print!("{message}");
            ExitCode::from(2)
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
