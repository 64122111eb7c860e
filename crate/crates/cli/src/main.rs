use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kohnert::bijection::{backward_with, forward_with, Checks as StepChecks};
use kohnert::colswap::{find_derivation, SwapEngine};
use kohnert::diagrams::{kd_closure_bounded, weight, Diagram, DEFAULT_STATE_BUDGET};
use kohnert::error::{Error, ErrorClass};
use kohnert::perm::{rothe_diagram, Permutation};
use kohnert::poly::Polynomial;
use kohnert::words::{
    compatible_sequences, is_reduced, match_to_super_yamanouchi, reduced_words_bounded,
    super_yamanouchi, CompatiblePair, Word,
};

use kohnert_cli::checks::{
    self, Scope, Settings, GLOBAL_CHECKS, MAX_SCOPE_N, MAX_TRIPLE_N, PER_PERMUTATION_CHECKS,
};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_INTEGRITY: u8 = 4;

#[derive(Parser)]
#[command(
    name = "kohnert",
    version,
    about = "Schubert polynomials three ways: divided differences, compatible sequences, and Kohnert diagrams, with the bijection between the last two"
)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Budget for closure and reduced-word enumerations
    #[arg(long, global = true, default_value_t = DEFAULT_STATE_BUDGET)]
    max_states: usize,

    /// Worker threads for verification (default: one per core)
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Verify closure membership at every bijection step (exponential)
    #[arg(long, global = true)]
    debug_checks: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Schubert,
    Bjs,
    Kohnert,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the Schubert polynomial of w by the chosen construction
    Compute {
        /// Permutation in one-line notation ("2143" or "1,5,2,...")
        w: String,
        #[arg(long, value_enum)]
        method: Method,
    },
    /// List the Kohnert diagrams of the Rothe diagram of w
    Diagrams {
        w: String,
        /// Print at most this many diagrams
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Map a compatible pair (rho, alpha) to its Kohnert diagram
    Forward {
        /// Reduced word, comma-separated display order
        #[arg(long)]
        rho: String,
        /// Compatible word of the same length
        #[arg(long)]
        alpha: String,
    },
    /// Map a Kohnert diagram of w back to its compatible pair
    Backward {
        /// Path to a diagram JSON file, or "-" for stdin
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        w: String,
    },
    /// Reduced words, super-Yamanouchi words, compatible sequences, matchings
    #[command(subcommand)]
    Words(WordsCmd),
    /// Run verification suites
    Verify {
        /// Verify a single permutation
        #[arg(long, conflicts_with = "all_n")]
        w: Option<String>,
        /// Verify all of S_n
        #[arg(long)]
        all_n: Option<usize>,
        /// Comma-separated checks, or "all"
        #[arg(long, default_value = "all")]
        checks: String,
    },
}

#[derive(Subcommand)]
enum WordsCmd {
    /// List all reduced words of w
    Red { w: String },
    /// The super-Yamanouchi reduced word of w
    Super { w: String },
    /// List all words compatible with a reduced word
    Compatible {
        #[arg(long)]
        rho: String,
    },
    /// Match a reduced word of w to the super-Yamanouchi word of w
    Matching {
        w: String,
        #[arg(long)]
        rho: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.class() {
                ErrorClass::Input | ErrorClass::Contract => EXIT_INPUT,
                ErrorClass::Resource => EXIT_RESOURCE,
                ErrorClass::Integrity => EXIT_INTEGRITY,
            })
        }
    }
}

fn dispatch(cli: &Cli) -> Result<ExitCode, Error> {
    let settings = Settings {
        max_states: cli.max_states,
        debug_checks: cli.debug_checks,
    };
    match &cli.cmd {
        Cmd::Compute { w, method } => cmd_compute(w, *method, cli.json, settings),
        Cmd::Diagrams { w, limit } => cmd_diagrams(w, *limit, cli.json, settings),
        Cmd::Forward { rho, alpha } => cmd_forward(rho, alpha, cli.json, settings),
        Cmd::Backward { diagram, w } => cmd_backward(diagram, w, cli.json, settings),
        Cmd::Words(words) => cmd_words(words, cli.json, settings),
        Cmd::Verify { w, all_n, checks } => {
            cmd_verify(w.as_deref(), *all_n, checks, cli.json, settings, cli.workers)
        }
    }
}

#[derive(Serialize)]
struct TermOut {
    coeff: i64,
    exps: Vec<u16>,
}

fn polynomial_json(p: &Polynomial, n: usize) -> String {
    let terms: Vec<TermOut> = p
        .terms_graded_lex(n)
        .into_iter()
        .map(|(coeff, exps)| TermOut { coeff, exps })
        .collect();
    serde_json::to_string(&terms).expect("terms serialize")
}

fn cmd_compute(w: &str, method: Method, json: bool, s: Settings) -> Result<ExitCode, Error> {
    let w: Permutation = w.parse()?;
    let p = match method {
        Method::Schubert => kohnert::poly::schubert(&w),
        Method::Bjs => kohnert::poly::bjs_polynomial_bounded(&w, s.max_states)?,
        Method::Kohnert => kohnert::poly::kohnert_polynomial_bounded(&w, s.max_states)?,
    };
    if json {
        println!("{}", polynomial_json(&p, w.n()));
    } else {
        println!("{p}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_diagrams(
    w: &str,
    limit: Option<usize>,
    json: bool,
    s: Settings,
) -> Result<ExitCode, Error> {
    let w: Permutation = w.parse()?;
    let base = rothe_diagram(&w);
    let closure = kd_closure_bounded(&base, s.max_states)?;
    let total = closure.len();
    let shown = limit.unwrap_or(total).min(total);
    if json {
        println!(
            "{}",
            serde_json::to_string(&closure[..shown]).expect("diagrams serialize")
        );
    } else {
        let (rows, cols) = (base.max_row(), base.max_col());
        for (idx, t) in closure[..shown].iter().enumerate() {
            let wt: Vec<String> = weight(t).counts().iter().map(|c| c.to_string()).collect();
            println!("# {}/{} weight=({})", idx + 1, total, wt.join(","));
            print!("{}", t.render_grid(rows, cols));
        }
        println!("total: {total}");
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct PairOut<'a> {
    rho: &'a Word,
    alpha: &'a Word,
    diagram: &'a Diagram,
}

fn print_pair(rho: &Word, alpha: &Word, diagram: &Diagram, json: bool) {
    if json {
        let out = PairOut {
            rho,
            alpha,
            diagram,
        };
        println!("{}", serde_json::to_string(&out).expect("pair serializes"));
    } else {
        println!("rho:   {rho}");
        println!("alpha: {alpha}");
        println!("diagram:");
        print!("{}", diagram.render());
    }
}

fn cmd_forward(rho: &str, alpha: &str, json: bool, s: Settings) -> Result<ExitCode, Error> {
    let rho: Word = rho.parse()?;
    let alpha: Word = alpha.parse()?;
    let pair = CompatiblePair::new(rho, alpha)?;
    let n = pair.rho().max_letter() + 1;
    let mode = if s.debug_checks {
        StepChecks::Full
    } else {
        StepChecks::Fast
    };
    let image = forward_with(&mut SwapEngine::default(), &pair, n, mode)?;
    print_pair(pair.rho(), pair.alpha(), &image, json);
    Ok(ExitCode::SUCCESS)
}

fn cmd_backward(diagram: &str, w: &str, json: bool, s: Settings) -> Result<ExitCode, Error> {
    let w: Permutation = w.parse()?;
    let text = if diagram == "-" {
        std::io::read_to_string(std::io::stdin())
            .map_err(|e| Error::InvalidDiagram(format!("reading stdin: {e}")))?
    } else {
        std::fs::read_to_string(diagram)
            .map_err(|e| Error::InvalidDiagram(format!("reading {diagram}: {e}")))?
    };
    let t: Diagram =
        serde_json::from_str(&text).map_err(|e| Error::InvalidDiagram(e.to_string()))?;

    // membership precheck so that a stray diagram is an input error, not an
    // integrity fault: reachability from the Rothe diagram is decided
    // exactly by the derivation search
    let base = rothe_diagram(&w);
    if t.len() != base.len() || find_derivation(&base, &t).is_err() {
        return Err(Error::NotInClosure);
    }

    let mode = if s.debug_checks {
        StepChecks::Full
    } else {
        StepChecks::Fast
    };
    let pair = backward_with(&mut SwapEngine::default(), &t, &w, mode)?;
    print_pair(pair.rho(), pair.alpha(), &t, json);
    Ok(ExitCode::SUCCESS)
}

fn cmd_words(cmd: &WordsCmd, json: bool, s: Settings) -> Result<ExitCode, Error> {
    match cmd {
        WordsCmd::Red { w } => {
            let w: Permutation = w.parse()?;
            let words = reduced_words_bounded(&w, s.max_states)?;
            if json {
                println!("{}", serde_json::to_string(&words).expect("words serialize"));
            } else {
                for word in &words {
                    println!("{word}");
                }
                println!("total: {}", words.len());
            }
        }
        WordsCmd::Super { w } => {
            let w: Permutation = w.parse()?;
            let pi = super_yamanouchi(&w);
            if json {
                println!("{}", serde_json::to_string(&pi).expect("word serializes"));
            } else {
                println!("{pi}");
            }
        }
        WordsCmd::Compatible { rho } => {
            let rho: Word = rho.parse()?;
            if !is_reduced(&rho) {
                return Err(Error::NotReduced);
            }
            let alphas = compatible_sequences(&rho);
            if json {
                println!("{}", serde_json::to_string(&alphas).expect("words serialize"));
            } else {
                for alpha in &alphas {
                    println!("{alpha}");
                }
                println!("total: {}", alphas.len());
            }
        }
        WordsCmd::Matching { w, rho } => {
            let w: Permutation = w.parse()?;
            let rho: Word = rho.parse()?;
            let pi = super_yamanouchi(&w);
            let m = match_to_super_yamanouchi(&rho, &pi)?;
            if json {
                #[derive(Serialize)]
                struct MatchOut<'a> {
                    rho: &'a Word,
                    pi: &'a Word,
                    pairs: &'a [usize],
                }
                let out = MatchOut {
                    rho: &rho,
                    pi: &pi,
                    pairs: m.pairs(),
                };
                println!(
                    "{}",
                    serde_json::to_string(&out).expect("matching serializes")
                );
            } else {
                println!("pi:  {pi}");
                println!("rho: {rho}");
                for (i, p) in m.pairs().iter().enumerate() {
                    println!("{} -> {}", i + 1, p);
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    w: Option<&str>,
    all_n: Option<usize>,
    checks_arg: &str,
    json: bool,
    settings: Settings,
    workers: Option<usize>,
) -> Result<ExitCode, Error> {
    let scope = match (w, all_n) {
        (Some(w), None) => Scope::Single(w.parse()?),
        (None, Some(n)) => {
            if n == 0 || n > MAX_SCOPE_N {
                return Err(Error::SizeLimit {
                    n,
                    max: MAX_SCOPE_N,
                });
            }
            Scope::AllN(n)
        }
        _ => {
            return Err(Error::InvalidWord(
                "verify needs exactly one of --w or --all-n".into(),
            ))
        }
    };

    let known: Vec<&str> = PER_PERMUTATION_CHECKS
        .iter()
        .chain(GLOBAL_CHECKS.iter())
        .copied()
        .collect();
    let names: Vec<String> = if checks_arg.trim() == "all" {
        known.iter().map(|s| s.to_string()).collect()
    } else {
        let names: Vec<String> = checks_arg
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect();
        for name in &names {
            if !known.contains(&name.as_str()) {
                return Err(Error::InvalidWord(format!(
                    "unknown check {name:?}; known: {}, all",
                    known.join(", ")
                )));
            }
        }
        names
    };
    if names.is_empty() {
        return Err(Error::InvalidWord("no checks selected".into()));
    }
    if let Scope::AllN(n) = scope {
        if n > MAX_TRIPLE_N && names.iter().any(|c| c == "triple") {
            return Err(Error::SizeLimit {
                n,
                max: MAX_TRIPLE_N,
            });
        }
    }

    let report = checks::run_verify(&scope, &names, settings, workers)?;
    if json {
        println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        );
    } else {
        print!("{}", report.render_text());
    }
    Ok(if report.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAILED)
    })
}
