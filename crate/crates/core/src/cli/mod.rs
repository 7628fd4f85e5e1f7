//! The `splines` command-line tool.
//!
//! Exit codes: 0 success, 1 domain failure (not a spline, King precondition,
//! ...), 2 malformed input, 3 search budget exceeded. With `--format machine`
//! a single JSON document is written to stdout; diagnostics go to stderr.

mod input;
mod render;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use crate::algebra::{
    decompose, generic_multiplication_table, king_multiplication_table, multiply,
    triangulation_table_3cycle, MultiplicationTable,
};
use crate::bases::{
    check_flow_up_basis, king_basis, smallest_basis, triangulation_basis, triangulation_spline,
    FlowUpBasis,
};
use crate::error::SplineError;
use crate::oracle::{
    brute_force_smallest, check_basis_by_definition, verify_triangulated_extension,
    EnumerationBudget, DEFAULT_MAX_STATES,
};
use crate::spline::{is_spline, EdgeLabeledCycle, LabeledGraph, Spline};

pub use input::{parse_document, Input};

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Domain(String),
    Budget(String),
    /// A failed spline check; violations are reported with the error.
    NotASpline(Vec<crate::spline::Violation>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::NotASpline(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Domain(m) | CliError::Budget(m) => f.write_str(m),
            CliError::NotASpline(v) => {
                write!(f, "not a spline:")?;
                for violation in v {
                    write!(f, "\n  {violation}")?;
                }
                Ok(())
            }
        }
    }
}

impl From<SplineError> for CliError {
    fn from(e: SplineError) -> Self {
        match e {
            SplineError::Budget(_) => CliError::Budget(e.to_string()),
            SplineError::NotASpline(v) => CliError::NotASpline(v),
            SplineError::CycleTooShort(_)
            | SplineError::NonPositiveLabel { .. }
            | SplineError::InvalidEdge { .. }
            | SplineError::Dimension { .. } => CliError::Parse(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "splines", version, about = "Integer generalized splines on edge-labeled cycles")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Cycle labels l_1,...,l_n
    #[arg(long, value_name = "L1,...,LN")]
    cycle: Option<String>,
    /// JSON document with a `cycle` or `graph` key
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

impl InputArgs {
    fn load(&self) -> Result<Input, CliError> {
        input::from_flags(self.cycle.as_deref(), self.input.as_deref())
    }
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Largest entry searched (default: product of the labels)
    #[arg(long)]
    bound: Option<BigInt>,
    #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
    max_states: u64,
}

impl BudgetArgs {
    fn budget(&self, graph: &dyn LabeledGraph) -> EnumerationBudget {
        let mut budget = EnumerationBudget::for_graph(graph);
        if let Some(bound) = &self.bound {
            budget.entry_bound = bound.clone();
        }
        budget.max_states = self.max_states;
        budget
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Triangulation,
    King,
    Smallest,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the edge congruences for a vertex labeling
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, allow_hyphen_values = true, value_name = "G1,...,GN")]
        labels: String,
    },
    /// Print a flow-up basis, one spline per line
    Basis {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Kind::Triangulation)]
        kind: Kind,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Coordinates of a spline in a flow-up basis
    Decompose {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, allow_hyphen_values = true, value_name = "G1,...,GN")]
        labels: String,
        #[arg(long, value_enum, default_value_t = Kind::Triangulation)]
        kind: Kind,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Product of two basis elements as a combination of basis elements
    Multiply {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Kind::King)]
        kind: Kind,
        #[arg(long = "i")]
        left: usize,
        #[arg(long = "j")]
        right: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Full multiplication table of a basis
    Table {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Kind::King)]
        kind: Kind,
        /// Compute every cell by pointwise product and decomposition
        #[arg(long)]
        generic: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Brute-force checks at desk scale
    Oracle {
        #[command(subcommand)]
        check: OracleCommand,
    },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Smallest flow-up classes by search
    Smallest {
        #[command(flatten)]
        input: InputArgs,
        /// Only this number of leading zeros (default: all)
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Decide the basis condition by search
    CheckBasis {
        #[command(flatten)]
        input: InputArgs,
        /// Candidates as `g,..;g,..;...`
        #[arg(long, allow_hyphen_values = true, conflicts_with = "kind")]
        basis: Option<String>,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check a spline against the chord-augmented cycle
    Extension {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        k: usize,
        /// Defaults to the triangulation spline H_k
        #[arg(long, allow_hyphen_values = true)]
        labels: Option<String>,
    },
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    run(args, &mut std::io::stdout(), &mut std::io::stderr())
}

pub fn run(args: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let mut session = Session {
        out,
        format: Format::Human,
    };
    match session.dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            if let (Format::Machine, CliError::NotASpline(v)) = (session.format, &e) {
                let doc = json!({ "ok": false, "violations": render::violations(v) });
                let _ = writeln!(session.out, "{doc}");
            }
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

struct Session<'a> {
    out: &'a mut dyn Write,
    format: Format,
}

fn build_basis(cycle: &EdgeLabeledCycle, kind: Kind, budget: &BudgetArgs) -> Result<FlowUpBasis, CliError> {
    Ok(match kind {
        Kind::Triangulation => triangulation_basis(cycle)?,
        Kind::King => king_basis(cycle)?,
        Kind::Smallest => smallest_basis(cycle, &budget.budget(cycle))?,
    })
}

fn io(e: std::io::Error) -> CliError {
    CliError::Domain(format!("write failed: {e}"))
}

impl Session<'_> {
    fn emit(&mut self, machine: serde_json::Value, human: impl FnOnce() -> String) -> Result<(), CliError> {
        match self.format {
            Format::Machine => writeln!(self.out, "{machine}").map_err(io),
            Format::Human => write!(self.out, "{}", human()).map_err(io),
        }
    }

    fn dispatch(&mut self, command: Command) -> Result<i32, CliError> {
        match command {
            Command::Verify { input, labels } => {
                self.format = input.format;
                let loaded = input.load()?;
                let labels = input::parse_list(&labels)?;
                let report = is_spline(loaded.graph(), &labels)?;
                let graph = loaded.graph();
                self.emit(
                    json!({ "ok": report.is_ok(), "violations": render::violations(&report.violations) }),
                    || render::verification(graph, &labels, &report),
                )?;
                Ok(if report.is_ok() { 0 } else { 1 })
            }
            Command::Basis { input, kind, budget } => {
                self.format = input.format;
                let loaded = input.load()?;
                let basis = build_basis(loaded.cycle()?, kind, &budget)?;
                self.emit(render::basis_json(&basis), || render::basis(&basis))?;
                Ok(0)
            }
            Command::Decompose { input, labels, kind, budget } => {
                self.format = input.format;
                let loaded = input.load()?;
                let cycle = loaded.cycle()?;
                let spline = Spline::new(input::parse_list(&labels)?);
                let report = is_spline(cycle, spline.entries())?;
                if !report.is_ok() {
                    return Err(CliError::NotASpline(report.violations));
                }
                let basis = build_basis(cycle, kind, &budget)?;
                let c = decompose(&spline, &basis)?;
                self.emit(
                    json!({
                        "kind": basis.kind().to_string(),
                        "coefficients": render::numbers(c.values()),
                    }),
                    || format!("{c}\n"),
                )?;
                Ok(0)
            }
            Command::Multiply { input, kind, left, right, budget } => {
                self.format = input.format;
                let loaded = input.load()?;
                let basis = build_basis(loaded.cycle()?, kind, &budget)?;
                let product = multiply(&basis, left, right)?;
                let symbol = basis.kind().symbol();
                self.emit(render::product_json(&product, symbol), || {
                    format!("{symbol}{left}*{symbol}{right} = {}\n", product.render(symbol))
                })?;
                Ok(0)
            }
            Command::Table { input, kind, generic, budget } => {
                self.format = input.format;
                let loaded = input.load()?;
                let cycle = loaded.cycle()?;
                let table: MultiplicationTable = if generic {
                    generic_multiplication_table(build_basis(cycle, kind, &budget)?)?
                } else {
                    match kind {
                        Kind::King => king_multiplication_table(cycle)?,
                        Kind::Triangulation if cycle.len() == 3 => triangulation_table_3cycle(cycle)?,
                        Kind::Triangulation => {
                            return Err(CliError::Domain(format!(
                                "no closed-form triangulation table for a {}-cycle (only n = 3); \
                                 use --generic or `multiply` to decompose pointwise products",
                                cycle.len()
                            )))
                        }
                        Kind::Smallest => {
                            return Err(CliError::Domain(
                                "no closed-form table for smallest classes; use --generic".into(),
                            ))
                        }
                    }
                };
                self.emit(render::table_json(&table), || render::table(&table))?;
                Ok(0)
            }
            Command::Oracle { check } => self.oracle(check),
        }
    }

    fn oracle(&mut self, check: OracleCommand) -> Result<i32, CliError> {
        match check {
            OracleCommand::Smallest { input, k, budget } => {
                self.format = input.format;
                let loaded = input.load()?;
                let cycle = loaded.cycle()?;
                let b = budget.budget(cycle);
                let ks: Vec<usize> = match k {
                    Some(k) => vec![k],
                    None => (0..cycle.len()).collect(),
                };
                let classes = ks
                    .iter()
                    .map(|&k| Ok((k, brute_force_smallest(cycle, k, &b)?)))
                    .collect::<Result<Vec<_>, CliError>>()?;
                self.emit(
                    json!({
                        "classes": classes
                            .iter()
                            .map(|(k, g)| json!({ "k": k, "spline": render::numbers(g.entries()) }))
                            .collect::<Vec<_>>(),
                    }),
                    || {
                        classes
                            .iter()
                            .map(|(k, g)| format!("G{k} = {g}\n"))
                            .collect()
                    },
                )?;
                Ok(0)
            }
            OracleCommand::CheckBasis { input, basis, kind, budget } => {
                self.format = input.format;
                let loaded = input.load()?;
                let candidates = match (basis, kind) {
                    (Some(text), _) => input::parse_splines(&text)?,
                    (None, Some(kind)) => build_basis(loaded.cycle()?, kind, &budget)?
                        .elements()
                        .to_vec(),
                    (None, None) => {
                        return Err(CliError::Parse("give --basis or --kind".into()))
                    }
                };
                let graph = loaded.graph();
                let by_search = check_basis_by_definition(graph, &candidates, &budget.budget(graph))?;
                let closed = match &loaded {
                    Input::Cycle(c) => Some(check_flow_up_basis(c, &candidates)?.is_basis()),
                    Input::Graph(_) => None,
                };
                self.emit(
                    json!({ "is_basis": by_search, "closed_form": closed }),
                    || {
                        let mut s = format!(
                            "basis condition by search: {}\n",
                            if by_search { "holds" } else { "fails" }
                        );
                        if let Some(c) = closed {
                            s.push_str(&format!(
                                "leading-entry criterion: {}\n",
                                if c { "holds" } else { "fails" }
                            ));
                        }
                        s
                    },
                )?;
                Ok(if by_search { 0 } else { 1 })
            }
            OracleCommand::Extension { input, k, labels } => {
                self.format = input.format;
                let loaded = input.load()?;
                let cycle = loaded.cycle()?;
                let h = match labels {
                    Some(text) => Spline::new(input::parse_list(&text)?),
                    None => triangulation_spline(cycle, k)?,
                };
                let ok = verify_triangulated_extension(cycle, k, &h);
                self.emit(
                    json!({ "k": k, "spline": render::numbers(h.entries()), "ok": ok }),
                    || {
                        format!(
                            "{h} on the triangulated {}-cycle: {}\n",
                            cycle.len(),
                            if ok { "OK" } else { "FAILS" }
                        )
                    },
                )?;
                Ok(if ok { 0 } else { 1 })
            }
        }
    }
}
