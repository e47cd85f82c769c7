//! `compalg` command line.
//!
//! Exit codes: 0 success, 1 parse or semantic error (including bad usage and
//! unknown names), 2 operation error, 3 validation failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use compalg_core::algebra::{Algebra, AlgebraKind, Amplitude};
use compalg_core::axioms::{verify_axioms_with, DEFAULT_SAMPLES, DEFAULT_SEED};
use compalg_core::model::{
    enumerate_partitions, enumerate_paths_bounded, MeasurementSequence, Path, DEFAULT_MAX_PATHS,
};
use compalg_core::prob::{
    check_markov, probability_of, total_probability, validate_assignment, Assignment,
    FrequencyTable, Issue, PathDistribution, ProbError, ValidationReport,
};
use compalg_core::scalar::Scalar;
use serde_json::{json, Value};

use crate::assignment_file::AssignmentData;
use crate::dsl::{self, Workspace};
use crate::sampling::sample_parallel;

#[derive(Parser, Debug)]
#[command(
    name = "compalg",
    version,
    about = "Measurement paths, composition algebras and path probabilities"
)]
struct Cli {
    /// Workspace document.
    #[arg(short = 'w', long = "workspace", global = true)]
    workspace: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cyclic, symmetric, trivial, possible and impossibility-generating pairs.
    Classify {
        path: String,
    },
    /// Nonredundant normal form.
    Normalize {
        path: String,
    },
    /// Impossibility-generating pairs.
    Igps {
        path: String,
    },
    /// Whether two paths share a normal form.
    Equivalent {
        a: String,
        b: String,
    },
    /// `a . b`.
    Chain {
        a: String,
        b: String,
    },
    /// `a v b`.
    Coarsen {
        a: String,
        b: String,
    },
    /// `c ^ b`: the path `a` with `a v b = c`.
    Refine {
        c: String,
        b: String,
    },
    /// `c / b`: the prefix `a` with `a . b = c`.
    UnchainRight {
        c: String,
        b: String,
    },
    /// `a \ c`: the suffix `b` with `a . b = c`.
    UnchainLeft {
        a: String,
        c: String,
    },
    /// Steps and results in opposite order.
    Reverse {
        path: String,
    },
    /// Replaces step `index` of `path` by the cyclic path `x`.
    Insert {
        path: String,
        index: usize,
        x: String,
    },
    /// Splits at interior atomic steps.
    Factorize {
        path: String,
    },
    /// Partitions of a ground set or paths over a sequence.
    #[command(subcommand)]
    Enumerate(Enumerate),
    /// Amplitude and probability of a path.
    Prob {
        path: String,
        #[arg(long)]
        assignment: String,
    },
    /// Compares a path's probability with the product over its factors.
    Markov {
        path: String,
        #[arg(long)]
        assignment: String,
    },
    /// Checks an assignment along a sequence.
    Validate {
        sequence: String,
        #[arg(long)]
        assignment: String,
    },
    /// Total probability over all paths from one source element.
    SumRule {
        sequence: String,
        #[arg(long)]
        assignment: String,
        #[arg(long)]
        source: String,
    },
    /// Axiom report for an algebra.
    VerifyAlgebra {
        algebra: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Frequency table of `n` seeded draws, as CSV.
    Sample {
        sequence: String,
        #[arg(long)]
        assignment: String,
        #[arg(long)]
        source: String,
        #[arg(short = 'n', default_value_t = 100_000)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum Enumerate {
    /// Every measurement on a ground set.
    Partitions {
        ground: String,
        #[arg(long)]
        count_only: bool,
    },
    /// Every path over a sequence.
    Paths {
        sequence: String,
        #[arg(long)]
        count_only: bool,
    },
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Operation(String),
    Validation(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Operation(_) => 2,
            Failure::Validation(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Operation(m) | Failure::Validation(m) => m,
        }
    }
}

fn op<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Operation(e.to_string()))
}

fn prob_err(e: ProbError) -> Failure {
    match e {
        ProbError::NotADistribution(_) => Failure::Validation(e.to_string()),
        e => Failure::Operation(e.to_string()),
    }
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err((partial, f)) => {
            let _ = out.write_all(partial.as_bytes());
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn execute(cli: &Cli) -> Result<String, (String, Failure)> {
    let ws = match &cli.workspace {
        Some(p) => {
            dsl::parse_file(p).map_err(|e| (String::new(), Failure::Input(e.to_string())))?
        }
        None => Workspace::default(),
    };
    let mut ctx = Ctx {
        ws: &ws,
        format: cli.format,
        partial: String::new(),
    };
    match ctx.command(&cli.command) {
        Ok(s) => Ok(s),
        Err(f) => Err((ctx.partial, f)),
    }
}

struct Ctx<'a> {
    ws: &'a Workspace,
    format: Format,
    /// Data already produced when a command fails validation afterwards.
    partial: String,
}

fn line(v: Value) -> String {
    format!("{v}\n")
}

fn scalar<S: Scalar>(s: &S) -> Value {
    if S::EXACT {
        Value::String(s.to_canonical_string())
    } else {
        json!(s.to_f64())
    }
}

fn amplitude<S: Scalar>(a: &Amplitude<S>) -> Value {
    Value::Array(a.coeffs().iter().map(scalar).collect())
}

impl<'a> Ctx<'a> {
    fn path(&self, name: &str) -> Result<&'a Path, Failure> {
        self.ws
            .paths
            .get(name)
            .map(|d| &d.path)
            .ok_or_else(|| Failure::Input(format!("unknown path `{name}`")))
    }

    fn sequence(&self, name: &str) -> Result<&'a MeasurementSequence, Failure> {
        self.ws
            .sequences
            .get(name)
            .map(|d| &d.sequence)
            .ok_or_else(|| Failure::Input(format!("unknown sequence `{name}`")))
    }

    fn assignment(&self, name: &str) -> Result<&'a AssignmentData, Failure> {
        self.ws
            .assignments
            .get(name)
            .map(|d| &d.data)
            .ok_or_else(|| Failure::Input(format!("unknown assignment `{name}`")))
    }

    fn source(&self, s: &MeasurementSequence, source: &str) -> Result<usize, Failure> {
        let g = s.source().ground();
        let name = source
            .trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .trim();
        g.index_of(name)
            .ok_or_else(|| Failure::Input(format!("`{name}` is not an element of `{}`", g.name())))
    }

    fn path_out(&self, key: &str, p: &Path) -> String {
        match self.format {
            Format::Json => line(json!({ key: p.notation() })),
            Format::Text => format!("{p}\n"),
        }
    }

    fn paths_out(&self, key: &str, ps: &[Path]) -> String {
        match self.format {
            Format::Json => line(json!({ key: ps.iter().map(Path::notation).collect::<Vec<_>>() })),
            Format::Text => ps.iter().map(|p| format!("{p}\n")).collect(),
        }
    }

    fn listing(&self, count_only: bool, items: Vec<String>) -> String {
        match (count_only, self.format) {
            (true, _) => format!("{}\n", items.len()),
            (false, Format::Json) => line(json!({ "count": items.len(), "items": items })),
            (false, Format::Text) => format!(
                "{}\n{}",
                items.len(),
                items.iter().map(|i| format!("{i}\n")).collect::<String>()
            ),
        }
    }

    fn command(&mut self, cmd: &Command) -> Result<String, Failure> {
        match cmd {
            Command::Classify { path } => {
                let k = self.path(path)?.classify();
                Ok(match self.format {
                    Format::Json => line(json!({
                        "cyclic": k.cyclic,
                        "symmetric": k.symmetric,
                        "trivial": k.trivial,
                        "possible": k.possible,
                        "igps": k.igps,
                    })),
                    Format::Text => format!(
                        "cyclic: {}\nsymmetric: {}\ntrivial: {}\npossible: {}\nigps: {:?}\n",
                        k.cyclic, k.symmetric, k.trivial, k.possible, k.igps
                    ),
                })
            }
            Command::Normalize { path } => {
                Ok(self.path_out("normal_form", &op(self.path(path)?.normal_form())?))
            }
            Command::Igps { path } => {
                let igps = self.path(path)?.find_igps();
                Ok(match self.format {
                    Format::Json => line(json!({ "igps": igps })),
                    Format::Text => igps.iter().map(|(j, k)| format!("{j} {k}\n")).collect(),
                })
            }
            Command::Equivalent { a, b } => {
                let eq = op(self.path(a)?.equivalent(self.path(b)?))?;
                Ok(match self.format {
                    Format::Json => line(json!({ "equivalent": eq })),
                    Format::Text => format!("{eq}\n"),
                })
            }
            Command::Chain { a, b } => {
                Ok(self.path_out("path", &op(self.path(a)?.chain(self.path(b)?))?))
            }
            Command::Coarsen { a, b } => {
                Ok(self.path_out("path", &op(self.path(a)?.coarsen(self.path(b)?))?))
            }
            Command::Refine { c, b } => {
                Ok(self.path_out("path", &op(self.path(c)?.refine(self.path(b)?))?))
            }
            Command::UnchainRight { c, b } => {
                Ok(self.path_out("path", &op(self.path(c)?.unchain_right(self.path(b)?))?))
            }
            Command::UnchainLeft { a, c } => {
                Ok(self.path_out("path", &op(self.path(a)?.unchain_left(self.path(c)?))?))
            }
            Command::Reverse { path } => Ok(self.path_out("path", &self.path(path)?.reverse())),
            Command::Insert { path, index, x } => Ok(self.path_out(
                "path",
                &op(self.path(path)?.insert_path(*index, self.path(x)?))?,
            )),
            Command::Factorize { path } => {
                Ok(self.paths_out("factors", &self.path(path)?.factorize()))
            }
            Command::Enumerate(Enumerate::Partitions { ground, count_only }) => {
                let g = self
                    .ws
                    .ground_sets
                    .get(ground)
                    .ok_or_else(|| Failure::Input(format!("unknown ground set `{ground}`")))?;
                let items = op(enumerate_partitions(g))?
                    .iter()
                    .map(|m| m.notation())
                    .collect();
                Ok(self.listing(*count_only, items))
            }
            Command::Enumerate(Enumerate::Paths {
                sequence,
                count_only,
            }) => {
                let s = self.sequence(sequence)?;
                if *count_only {
                    let count: u128 = s.steps().iter().map(|m| m.block_count() as u128).product();
                    return Ok(format!("{count}\n"));
                }
                let items = op(enumerate_paths_bounded(s, DEFAULT_MAX_PATHS))?
                    .iter()
                    .map(Path::notation)
                    .collect();
                Ok(self.listing(false, items))
            }
            Command::Prob { path, assignment } => {
                let p = self.path(path)?;
                match self.assignment(assignment)? {
                    AssignmentData::Exact(a) => self.prob(p, a),
                    AssignmentData::Float(a) => self.prob(p, a),
                }
            }
            Command::Markov { path, assignment } => {
                let p = self.path(path)?;
                match self.assignment(assignment)? {
                    AssignmentData::Exact(a) => self.markov(p, a),
                    AssignmentData::Float(a) => self.markov(p, a),
                }
            }
            Command::Validate {
                sequence,
                assignment,
            } => {
                let s = self.sequence(sequence)?;
                let text = match self.assignment(assignment)? {
                    AssignmentData::Exact(a) => self.validation(s, a)?,
                    AssignmentData::Float(a) => self.validation(s, a)?,
                };
                Ok(text)
            }
            Command::SumRule {
                sequence,
                assignment,
                source,
            } => {
                let s = self.sequence(sequence)?;
                let src = self.source(s, source)?;
                match self.assignment(assignment)? {
                    AssignmentData::Exact(a) => self.sum_rule(s, src, a),
                    AssignmentData::Float(a) => self.sum_rule(s, src, a),
                }
            }
            Command::VerifyAlgebra {
                algebra,
                samples,
                seed,
            } => {
                let kind: AlgebraKind = algebra
                    .parse()
                    .map_err(|e| Failure::Input(format!("{e}")))?;
                Ok(self.verify(kind, *samples, *seed))
            }
            Command::Sample {
                sequence,
                assignment,
                source,
                n,
                seed,
                workers,
            } => {
                let s = self.sequence(sequence)?;
                let src = self.source(s, source)?;
                let workers = workers
                    .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
                match self.assignment(assignment)? {
                    AssignmentData::Exact(a) => sample_csv(s, src, a, *n, *seed, workers),
                    AssignmentData::Float(a) => sample_csv(s, src, a, *n, *seed, workers),
                }
            }
        }
    }

    fn prob<S: Scalar>(&self, p: &Path, asg: &Assignment<S>) -> Result<String, Failure> {
        let r = probability_of(p, asg).map_err(prob_err)?;
        Ok(match self.format {
            Format::Json => line(json!({
                "path": p.notation(),
                "algebra": asg.kind().name(),
                "amplitude": amplitude(&r.amplitude),
                "probability": scalar(&r.probability),
            })),
            Format::Text => format!(
                "amplitude: {}\nprobability: {}\n",
                r.amplitude,
                r.probability.to_canonical_string()
            ),
        })
    }

    fn markov<S: Scalar>(&self, p: &Path, asg: &Assignment<S>) -> Result<String, Failure> {
        let holds = check_markov(p, asg).map_err(prob_err)?;
        let whole = probability_of(p, asg).map_err(prob_err)?.probability;
        let factors = p
            .factorize()
            .iter()
            .map(|f| Ok(json!({ "path": f.notation(), "probability": scalar(&probability_of(f, asg)?.probability) })))
            .collect::<Result<Vec<_>, ProbError>>()
            .map_err(prob_err)?;
        Ok(match self.format {
            Format::Json => {
                line(json!({ "markov": holds, "probability": scalar(&whole), "factors": factors }))
            }
            Format::Text => format!(
                "markov: {holds}\nprobability: {}\n",
                whole.to_canonical_string()
            ),
        })
    }

    fn report<S: Scalar>(&self, rep: &ValidationReport<S>) -> String {
        let issues: Vec<Value> = rep
            .issues
            .iter()
            .map(|i| match i {
                Issue::MissingTransition { step, from, to } => json!({ "kind": "missing_transition", "step": step, "from": from, "to": to }),
                Issue::RowNotNormalized { step, row, sum } => json!({ "kind": "row_not_normalized", "step": step, "row": row, "sum": scalar(sum) }),
                Issue::AdjointInconsistent { from, to } => json!({ "kind": "adjoint_inconsistent", "from": from, "to": to }),
                Issue::SumRuleViolated { step, row, sum } => json!({ "kind": "sum_rule_violated", "step": step, "row": row, "sum": scalar(sum) }),
                Issue::SymmetricNotScalar { step, row } => json!({ "kind": "symmetric_not_scalar", "step": step, "row": row }),
            })
            .collect();
        match self.format {
            Format::Json => {
                let sums: Vec<Value> = rep
                    .block_sums
                    .iter()
                    .map(|b| json!({ "step": b.step, "row": b.row, "sum": scalar(&b.sum), "asserted": b.asserted }))
                    .collect();
                line(json!({ "passed": rep.passed(), "issues": issues, "block_sums": sums }))
            }
            Format::Text => {
                let mut s = format!("passed: {}\n", rep.passed());
                for i in issues {
                    s.push_str(&format!("{i}\n"));
                }
                s
            }
        }
    }

    fn validation<S: Scalar>(
        &mut self,
        s: &MeasurementSequence,
        asg: &Assignment<S>,
    ) -> Result<String, Failure> {
        let rep = validate_assignment(s, asg).map_err(prob_err)?;
        let text = self.report(&rep);
        if rep.passed() {
            Ok(text)
        } else {
            self.partial = text;
            Err(Failure::Validation(format!(
                "assignment fails validation with {} issue(s)",
                rep.issues.len()
            )))
        }
    }

    fn sum_rule<S: Scalar>(
        &mut self,
        s: &MeasurementSequence,
        src: usize,
        asg: &Assignment<S>,
    ) -> Result<String, Failure> {
        let rep = validate_assignment(s, asg).map_err(prob_err)?;
        let total = total_probability(s, src, asg).map_err(prob_err)?;
        let text = match self.format {
            Format::Json => line(json!({
                "source": s.source().ground().elements()[src],
                "steps": s.len(),
                "total": scalar(&total),
                "asserted": s.len() == 2,
                "validated": rep.passed(),
            })),
            Format::Text => format!("{}\n", total.to_canonical_string()),
        };
        if rep.passed() {
            Ok(text)
        } else {
            self.partial = text;
            Err(Failure::Validation(format!(
                "assignment fails validation with {} issue(s)",
                rep.issues.len()
            )))
        }
    }

    fn verify(&self, kind: AlgebraKind, samples: usize, seed: u64) -> String {
        let rep = verify_axioms_with(&Algebra::new(kind), samples, seed);
        match self.format {
            Format::Json => {
                let checks: serde_json::Map<String, Value> = rep
                    .checks
                    .iter()
                    .map(|c| (c.axiom.name().to_string(), json!(c.pass)))
                    .collect();
                let witnesses: serde_json::Map<String, Value> = rep
                    .checks
                    .iter()
                    .filter_map(|c| {
                        c.witness
                            .as_ref()
                            .map(|w| (c.axiom.name().to_string(), json!(w)))
                    })
                    .collect();
                line(json!({
                    "algebra": kind.name(),
                    "dimension": kind.dim(),
                    "checks": checks,
                    "witnesses": witnesses,
                    "composition_algebra": rep.is_composition_algebra(),
                    "associative_composition_algebra": rep.is_associative_composition_algebra(),
                }))
            }
            Format::Text => {
                let mut s = format!("{kind} (dimension {})\n", kind.dim());
                for c in &rep.checks {
                    match &c.witness {
                        Some(w) if !c.pass => {
                            s.push_str(&format!("{}: FAIL ({w})\n", c.axiom.name()))
                        }
                        _ => s.push_str(&format!(
                            "{}: {}\n",
                            c.axiom.name(),
                            if c.pass { "pass" } else { "FAIL" }
                        )),
                    }
                }
                s
            }
        }
    }
}

fn sample_csv<S: Scalar + Send + Sync>(
    s: &MeasurementSequence,
    src: usize,
    asg: &Assignment<S>,
    n: u64,
    seed: u64,
    workers: usize,
) -> Result<String, Failure> {
    let dist = PathDistribution::new(s, src, asg).map_err(prob_err)?;
    Ok(frequency_csv(&sample_parallel(&dist, n, seed, workers)))
}

/// `path,count,probability` rows.
pub fn frequency_csv<S: Scalar>(t: &FrequencyTable<S>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["path", "count", "probability"])
        .expect("in-memory write");
    for row in &t.rows {
        w.write_record([
            row.path.notation(),
            row.count.to_string(),
            row.probability.to_canonical_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}
