//! Command-line front end. [`run`] takes the argument list and returns the
//! output and exit status, so the binary is a thin wrapper.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::mitosis::{mitosis, rp_by_mitosis, rp_by_mitosis_with_word};
use crate::oracle::{Oracle, DEFAULT_ORACLE_BOUND};
use crate::permutation::{Permutation, Word};
use crate::pipedream::{PipeDream, MAX_GRID};
use crate::poset::{build_poset_bounded, preimage_tree};
use crate::schubert::{
    schubert_bjs, schubert_divdiff, schubert_divdiff_with_word, schubert_mitosis, Polynomial,
};
use crate::verify::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_CLI_POSET_BOUND: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Divdiff,
    Bjs,
    Mitosis,
}

#[derive(Debug, Parser)]
#[command(
    name = "mitosis",
    version,
    about = "Reduced pipe dreams and Schubert polynomials by mitosis"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, clap::Args)]
pub struct Config {
    /// Largest n for brute-force enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_BOUND, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..=64))]
    pub oracle_bound: usize,
    /// Largest n for which the whole mitosis poset is built.
    #[arg(long, global = true, default_value_t = DEFAULT_CLI_POSET_BOUND, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..=64))]
    pub poset_bound: usize,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Ascii)]
    pub format: Format,
    /// Worker threads (0 picks one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Schubert polynomial of a permutation.
    Schubert {
        perm: Permutation,
        #[arg(long, value_enum, default_value_t = Method::Mitosis)]
        method: Method,
        /// Compute by all three methods and compare.
        #[arg(long)]
        all_methods: bool,
        /// Reduced word for w0*w to use instead of the lex-first one.
        #[arg(long)]
        word: Option<Word>,
    },
    /// List the reduced pipe dreams of a permutation.
    Pipedreams {
        perm: Permutation,
        /// Use brute-force enumeration instead of mitosis.
        #[arg(long)]
        oracle: bool,
        /// Reduced word for w0*w to run mitosis along.
        #[arg(long)]
        word: Option<Word>,
        /// Only report whether the dream with these crosses ("r,c;r,c;...")
        /// is among them.
        #[arg(long)]
        contains: Option<String>,
    },
    /// Show the offspring of a pipe dream under mitosis_i.
    Mitosis {
        /// A permutation (its top reduced pipe dream is used) or a JSON pipe
        /// dream {"n":..,"crosses":[[r,c],..]}.
        input: String,
        row: usize,
    },
    /// Draw the mitosis poset or the preimage tree of a path.
    Poset {
        n: usize,
        /// Hasse diagram in Graphviz format (the default).
        #[arg(long, conflicts_with_all = ["tree", "json"])]
        dot: bool,
        /// Fibers as JSON.
        #[arg(long, conflicts_with = "tree")]
        json: bool,
        /// Preimage tree of the path with this reduced word for w0*w.
        #[arg(long)]
        tree: Option<Word>,
    },
    /// Run the exhaustive checks over S_n.
    Verify {
        n: usize,
        /// Also run the unproved experiments (never affects the exit code).
        #[arg(long)]
        experiments: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.config.threads)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            return Outcome {
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
                code: EXIT_USAGE,
            }
        }
    };
    match pool.install(|| execute(&cli.config, &cli.command)) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: EXIT_USAGE,
        },
    }
}

pub fn execute(config: &Config, command: &Command) -> Result<Outcome> {
    let oracle = Oracle::new(config.oracle_bound);
    match command {
        Command::Schubert {
            perm,
            method,
            all_methods,
            word,
        } => cmd_schubert(config, &oracle, perm, *method, *all_methods, word.as_ref()),
        Command::Pipedreams {
            perm,
            oracle: use_oracle,
            word,
            contains,
        } => cmd_pipedreams(
            config,
            &oracle,
            perm,
            *use_oracle,
            word.as_ref(),
            contains.as_deref(),
        ),
        Command::Mitosis { input, row } => cmd_mitosis(config, input, *row),
        Command::Poset { n, json, tree, .. } => cmd_poset(config, *n, *json, tree.as_ref()),
        Command::Verify { n, experiments } => Ok(cmd_verify(&oracle, *n, *experiments)),
    }
}

/// `true` for ASCII output, `false` for JSON.
fn text_format(config: &Config) -> Result<bool> {
    match config.format {
        Format::Ascii => Ok(true),
        Format::Json => Ok(false),
        Format::Dot => Err(Error::Parse(
            "dot output is only available for `poset`".into(),
        )),
    }
}

fn polynomial_by(
    oracle: &Oracle,
    w: &Permutation,
    method: Method,
    word: Option<&Word>,
) -> Result<Polynomial> {
    match (method, word) {
        (Method::Divdiff, Some(word)) => schubert_divdiff_with_word(w, word),
        (Method::Divdiff, None) => schubert_divdiff(w),
        (Method::Bjs, _) => Ok(schubert_bjs(w, &oracle.enumerate_rp(w)?)),
        (Method::Mitosis, Some(word)) => Ok(schubert_bjs(w, &rp_by_mitosis_with_word(w, word)?)),
        (Method::Mitosis, None) => schubert_mitosis(w),
    }
}

pub fn cmd_schubert(
    config: &Config,
    oracle: &Oracle,
    w: &Permutation,
    method: Method,
    all_methods: bool,
    word: Option<&Word>,
) -> Result<Outcome> {
    let text = text_format(config)?;
    if !all_methods {
        let p = polynomial_by(oracle, w, method, word)?;
        let out = if text {
            format!("{p}\n")
        } else {
            format!("{}\n", serde_json::to_string(&p)?)
        };
        return Ok(Outcome::ok(out));
    }
    let routes = [
        ("divdiff", polynomial_by(oracle, w, Method::Divdiff, word)?),
        ("bjs", polynomial_by(oracle, w, Method::Bjs, word)?),
        ("mitosis", polynomial_by(oracle, w, Method::Mitosis, word)?),
    ];
    let equal = routes.iter().all(|(_, p)| *p == routes[0].1);
    let stdout = if text {
        let mut s = String::new();
        for (name, p) in &routes {
            let _ = writeln!(s, "{name}: {p}");
        }
        let _ = writeln!(s, "equal: {equal}");
        s
    } else {
        let v = json!({
            "divdiff": routes[0].1,
            "bjs": routes[1].1,
            "mitosis": routes[2].1,
            "equal": equal,
        });
        format!("{v}\n")
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if equal { EXIT_OK } else { EXIT_VERIFY_FAILED },
    })
}

fn render_dreams(header: &str, dreams: &[PipeDream], text: bool) -> Result<String> {
    if !text {
        return Ok(format!("{}\n", serde_json::to_string(dreams)?));
    }
    let mut s = format!("{header}\n");
    for (k, d) in dreams.iter().enumerate() {
        let _ = write!(s, "\n#{}\n{}", k + 1, d.render_ascii());
    }
    Ok(s)
}

pub fn cmd_pipedreams(
    config: &Config,
    oracle: &Oracle,
    w: &Permutation,
    use_oracle: bool,
    word: Option<&Word>,
    contains: Option<&str>,
) -> Result<Outcome> {
    let text = text_format(config)?;
    let rp: BTreeSet<PipeDream> = match (use_oracle, word) {
        (true, _) => oracle.enumerate_rp(w)?,
        (false, Some(word)) => rp_by_mitosis_with_word(w, word)?,
        (false, None) => rp_by_mitosis(w)?,
    };
    if let Some(list) = contains {
        let d = PipeDream::parse_cross_list(w.n(), list)?;
        let found = rp.contains(&d);
        let out = if text {
            format!("{found}\n")
        } else {
            format!("{}\n", json!({ "contains": found }))
        };
        return Ok(Outcome::ok(out));
    }
    let dreams: Vec<PipeDream> = rp.into_iter().collect();
    let noun = if dreams.len() == 1 {
        "pipe dream"
    } else {
        "pipe dreams"
    };
    let header = format!("{w}: {} reduced {noun}", dreams.len());
    Ok(Outcome::ok(render_dreams(&header, &dreams, text)?))
}

fn parse_dream_input(input: &str) -> Result<PipeDream> {
    let input = input.trim();
    if input.starts_with('{') {
        return Ok(serde_json::from_str(input)?);
    }
    let w: Permutation = input.parse()?;
    let top = rp_by_mitosis(&w)?
        .into_iter()
        .filter(PipeDream::is_top)
        .collect::<Vec<_>>();
    assert_eq!(top.len(), 1, "top pipe dream of {w} is not unique");
    Ok(top.into_iter().next().unwrap())
}

pub fn cmd_mitosis(config: &Config, input: &str, row: usize) -> Result<Outcome> {
    let text = text_format(config)?;
    let d = parse_dream_input(input)?;
    let children = mitosis(&d, row)?.children;
    if text && children.is_empty() {
        return Ok(Outcome::ok("no offspring (apoptosis)\n".into()));
    }
    let header = format!("mitosis_{row}: {} offspring", children.len());
    Ok(Outcome::ok(render_dreams(&header, &children, text)?))
}

pub fn cmd_poset(config: &Config, n: usize, json: bool, tree: Option<&Word>) -> Result<Outcome> {
    if let Some(word) = tree {
        if n == 0 || n > MAX_GRID {
            return Err(Error::GridTooLarge { n, max: MAX_GRID });
        }
        return Ok(Outcome::ok(preimage_tree(word, n)?.to_dot()));
    }
    let poset = build_poset_bounded(n, config.poset_bound)?;
    if json || config.format == Format::Json {
        Ok(Outcome::ok(format!("{}\n", poset.fibers_json()?)))
    } else {
        Ok(Outcome::ok(poset.to_dot()))
    }
}

pub fn cmd_verify(oracle: &Oracle, n: usize, experiments: bool) -> Outcome {
    let report = verify(n, oracle, experiments);
    Outcome {
        stdout: report.to_string(),
        stderr: String::new(),
        code: if report.hard_passed() {
            EXIT_OK
        } else {
            EXIT_VERIFY_FAILED
        },
    }
}
