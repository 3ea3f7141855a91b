use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use idealsync::aw::{build_aw, verify_aw};
use idealsync::constants::constants_report;
use idealsync::corpus::random_scs;
use idealsync::decomp::{
    automaton_of_decomposition, extract_decomposition, verify_decomposition, Decomposition,
};
use idealsync::format::{acceptor_to_aut, parse_automaton, semiautomaton_to_aut, Automaton};
use idealsync::isomorphism::is_isomorphic;
use idealsync::lift::{lift, verify_lift};
use idealsync::probe::cerny_probes;
use idealsync::synchro::{
    cerny_automaton, is_finitely_generated, rc_search, shortest_reset, syn_language,
};
use idealsync::syntactic::syntactic_complexity;
use idealsync::{Acceptor, Alphabet, Language, Limits, Semiautomaton, Word};

#[derive(Parser)]
#[command(
    name = "idealsync",
    version,
    about = "Ideal languages and synchronizing automata"
)]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Options {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Comma-separated alphabet for inline words.
    #[arg(long, default_value = "a,b", global = true)]
    alphabet: String,
    /// Read inline words as space-separated tokens.
    #[arg(long, global = true)]
    tokens: bool,
    #[arg(long, global = true)]
    subset_cap: Option<usize>,
    #[arg(long, global = true)]
    semigroup_cap: Option<usize>,
    #[arg(long, global = true)]
    enumeration_budget: Option<usize>,
    #[arg(long, global = true)]
    congruence_budget: Option<usize>,
    /// Seed for random corpora (ChaCha8).
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
    /// Report elapsed times as 0, for reproducible output.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Aut,
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a `.aut` file and write it back.
    Parse { file: PathBuf },
    #[command(subcommand)]
    Syn(SynCommand),
    #[command(subcommand)]
    Aw(AwCommand),
    /// Closed-form syntactic complexity of Σ*w against the semigroup size.
    Syntactic { word: String },
    #[command(subcommand)]
    Constants(ConstantsCommand),
    #[command(subcommand)]
    Ideal(IdealCommand),
    #[command(subcommand)]
    Decomp(DecompCommand),
    /// Lift a strongly connected synchronizing automaton along its
    /// shortest reset word.
    Lift { file: PathBuf },
    #[command(subcommand)]
    Probe(ProbeCommand),
    #[command(subcommand)]
    Fixtures(FixturesCommand),
}

#[derive(Subcommand)]
enum SynCommand {
    /// Synchronizability and reset threshold.
    Check { file: PathBuf },
    /// The shortlex-least shortest reset word.
    Shortest { file: PathBuf },
    /// The minimal acceptor of the reset words.
    Language { file: PathBuf },
}

#[derive(Subcommand)]
enum AwCommand {
    /// The prefix automaton of a word.
    Build { word: String },
    /// Structural checks on the prefix automaton.
    Verify { word: String },
}

#[derive(Subcommand)]
enum ConstantsCommand {
    Check { file: PathBuf },
    Witness { file: PathBuf },
}

#[derive(Subcommand)]
enum IdealCommand {
    /// Left, right and two-sided ideal properties of an accepted language.
    Kind { file: PathBuf },
    /// Smallest semiautomata whose reset words are exactly Σ*wΣ*.
    RcSearch {
        word: String,
        #[arg(long, default_value_t = 3)]
        max_states: usize,
    },
}

#[derive(Subcommand)]
enum DecompCommand {
    /// The parts {u : Q·u = {q}} of a strongly connected synchronizing automaton.
    Extract { file: PathBuf },
    /// Check a decomposition given as one acceptor file per part.
    Verify {
        #[arg(required = true)]
        parts: Vec<PathBuf>,
    },
    /// Extract and rebuild, then compare with the input.
    Roundtrip { file: PathBuf },
}

#[derive(Subcommand)]
enum ProbeCommand {
    /// Černý-bound probes on the given automata, or on a random corpus.
    Cerny {
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        max_states: usize,
    },
}

#[derive(Subcommand)]
enum FixturesCommand {
    /// The Černý automaton with n states.
    Cerny { n: usize },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(PathBuf, std::io::Error),
    Lib(idealsync::Error),
}

impl From<idealsync::Error> for CliError {
    fn from(e: idealsync::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use idealsync::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io(..) => 2,
            CliError::Lib(e) => match e {
                E::Parse { .. }
                | E::UnknownSymbol(_)
                | E::InvalidAlphabet(_)
                | E::AlphabetMismatch => 2,
                E::Precondition(_) | E::InvalidDecomposition(_) => 3,
                E::Budget { .. } => 4,
                E::TheoremViolation(_) => 1,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

struct Context {
    opts: Options,
    alphabet: Alphabet,
    limits: Limits,
}

impl Context {
    fn new(opts: Options) -> CliResult<Self> {
        let alphabet = Alphabet::from_csv(&opts.alphabet)?;
        let defaults = Limits::default();
        let limits = Limits {
            subset_cap: opts.subset_cap.unwrap_or(defaults.subset_cap),
            semigroup_cap: opts.semigroup_cap.unwrap_or(defaults.semigroup_cap),
            enumeration_budget: opts
                .enumeration_budget
                .unwrap_or(defaults.enumeration_budget),
            congruence_budget: opts.congruence_budget.unwrap_or(defaults.congruence_budget),
        };
        Ok(Context {
            opts,
            alphabet,
            limits,
        })
    }

    fn word(&self, text: &str) -> CliResult<Word> {
        Ok(self.alphabet.parse_word(text, self.opts.tokens)?)
    }

    fn show(&self, w: &Word) -> String {
        self.alphabet.format_word(w)
    }

    fn read(&self, path: &Path) -> CliResult<Automaton> {
        let text = if path == Path::new("-") {
            std::io::read_to_string(std::io::stdin())
        } else {
            std::fs::read_to_string(path)
        }
        .map_err(|e| CliError::Io(path.to_path_buf(), e))?;
        Ok(parse_automaton(&text)?)
    }

    fn read_acceptor(&self, path: &Path) -> CliResult<Acceptor> {
        match self.read(path)? {
            Automaton::Acceptor(a) => Ok(a),
            Automaton::Semi(_) => Err(CliError::Usage(format!(
                "{}: expected an acceptor (initial state missing)",
                path.display()
            ))),
        }
    }

    fn read_semi(&self, path: &Path) -> CliResult<Semiautomaton> {
        Ok(self.read(path)?.base().clone())
    }

    fn json_only(&self) -> CliResult<()> {
        match self.opts.format {
            Format::Json => Ok(()),
            _ => Err(CliError::Usage("this command only writes JSON".into())),
        }
    }

    fn elapsed(&self, ms: u64) -> u64 {
        if self.opts.no_timing {
            0
        } else {
            ms
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("reports serialize")
}

fn automaton_json(a: &Automaton) -> Value {
    let base = a.base();
    let (initial, finals) = match a {
        Automaton::Acceptor(acc) => (Some(acc.initial()), Some(acc.finals())),
        Automaton::Semi(_) => (None, None),
    };
    json!({
        "alphabet": base.alphabet().tokens(),
        "states": base.n_states(),
        "initial": initial,
        "finals": finals,
        "aut": a.to_aut(),
    })
}

// An automaton in the requested format.
fn emit_automaton(ctx: &Context, a: &Automaton) -> String {
    match ctx.opts.format {
        Format::Aut => a.to_aut(),
        Format::Dot => a.to_dot(),
        Format::Json => pretty(&automaton_json(a)),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn run(cli: Cli) -> CliResult<String> {
    let ctx = Context::new(cli.opts)?;
    let limits = &ctx.limits;
    let out = match cli.command {
        Command::Parse { file } => emit_automaton(&ctx, &ctx.read(&file)?),
        Command::Syn(cmd) => {
            if !matches!(cmd, SynCommand::Language { .. }) {
                ctx.json_only()?;
            }
            match cmd {
                SynCommand::Check { file } => {
                    let a = ctx.read_semi(&file)?;
                    let r = shortest_reset(&a, limits)?;
                    pretty(&json!({
                        "states": a.n_states(),
                        "synchronizing": r.synchronizing,
                        "threshold": r.threshold,
                        "cerny_bound": (a.n_states() - 1).pow(2),
                    }))
                }
                SynCommand::Shortest { file } => {
                    let a = ctx.read_semi(&file)?;
                    let r = shortest_reset(&a, limits)?;
                    pretty(&json!({
                        "synchronizing": r.synchronizing,
                        "shortest": r.shortest.as_ref().map(|w| ctx.show(w)),
                        "threshold": r.threshold,
                    }))
                }
                SynCommand::Language { file } => {
                    let a = ctx.read_semi(&file)?;
                    let syn = syn_language(&a, limits)?;
                    let acc = Automaton::Acceptor(syn.acceptor().clone());
                    if ctx.opts.format != Format::Json {
                        emit_automaton(&ctx, &acc)
                    } else {
                        let fg = if syn.is_empty() {
                            None
                        } else {
                            Some(is_finitely_generated(&a, limits)?)
                        };
                        let mut v = automaton_json(&acc);
                        v["empty"] = json!(syn.is_empty());
                        v["shortest"] = json!(syn.shortest_word().map(|w| ctx.show(&w)));
                        v["finitely_generated"] = json!(fg);
                        pretty(&v)
                    }
                }
            }
        }
        Command::Aw(AwCommand::Build { word }) => {
            let acc = build_aw(&ctx.word(&word)?, &ctx.alphabet)?;
            emit_automaton(&ctx, &Automaton::Acceptor(acc))
        }
        Command::Aw(AwCommand::Verify { word }) => {
            ctx.json_only()?;
            pretty(&to_json(&verify_aw(
                &ctx.word(&word)?,
                &ctx.alphabet,
                limits,
            )?))
        }
        Command::Syntactic { word } => {
            ctx.json_only()?;
            pretty(&to_json(&syntactic_complexity(
                &ctx.word(&word)?,
                &ctx.alphabet,
                limits,
            )?))
        }
        Command::Constants(cmd) => {
            ctx.json_only()?;
            let file = match &cmd {
                ConstantsCommand::Check { file } | ConstantsCommand::Witness { file } => file,
            };
            let lang = Language::from_acceptor(&ctx.read_acceptor(file)?);
            let mut r = constants_report(&lang, limits)?;
            if let ConstantsCommand::Check { .. } = cmd {
                r.witness = None;
            }
            pretty(&to_json(&r))
        }
        Command::Ideal(IdealCommand::Kind { file }) => {
            ctx.json_only()?;
            let lang = Language::from_acceptor(&ctx.read_acceptor(&file)?);
            let mut v = to_json(&lang.ideal_kind(limits)?);
            v["empty"] = json!(lang.is_empty());
            pretty(&v)
        }
        Command::Ideal(IdealCommand::RcSearch { word, max_states }) => {
            ctx.json_only()?;
            let mut r = rc_search(&ctx.word(&word)?, &ctx.alphabet, max_states, limits)?;
            r.elapsed_ms = ctx.elapsed(r.elapsed_ms);
            pretty(&to_json(&r))
        }
        Command::Decomp(cmd) => {
            ctx.json_only()?;
            decomp(&ctx, cmd)?
        }
        Command::Lift { file } => {
            ctx.json_only()?;
            let a = ctx.read_semi(&file)?;
            let r = lift(&a, limits)?;
            let report = verify_lift(&a, &r, limits)?;
            pretty(&json!({
                "word": ctx.show(&r.word),
                "lifted": acceptor_to_aut(&r.b),
                "phi": r.phi.images,
                "labels": r.labels,
                "report": to_json(&report),
            }))
        }
        Command::Probe(ProbeCommand::Cerny {
            files,
            count,
            max_states,
        }) => {
            ctx.json_only()?;
            let corpus = if files.is_empty() {
                random_scs(ctx.opts.seed, count, max_states, &ctx.alphabet)
            } else {
                files
                    .iter()
                    .map(|f| ctx.read_semi(f))
                    .collect::<CliResult<_>>()?
            };
            let mut v = to_json(&cerny_probes(&corpus, limits)?);
            v["seed"] = json!(files.is_empty().then_some(ctx.opts.seed));
            pretty(&v)
        }
        Command::Fixtures(FixturesCommand::Cerny { n }) => {
            if ctx.alphabet.len() != 2 {
                return Err(CliError::Usage("Černý automata need two letters".into()));
            }
            let c = cerny_automaton(n)?;
            let c = Semiautomaton::new(ctx.alphabet.clone(), n, c.table().to_vec())?;
            emit_automaton(&ctx, &Automaton::Semi(c))
        }
    };
    Ok(out)
}

fn decomp(ctx: &Context, cmd: DecompCommand) -> CliResult<String> {
    let limits = &ctx.limits;
    let v = match cmd {
        DecompCommand::Extract { file } => {
            let a = ctx.read_semi(&file)?;
            let d = extract_decomposition(&a, limits)?;
            let report = verify_decomposition(&d, limits)?;
            json!({
                "parts": parts_json(&d),
                "report": to_json(&report),
            })
        }
        DecompCommand::Verify { parts } => {
            let langs = parts
                .iter()
                .map(|p| Ok(Language::from_acceptor(&ctx.read_acceptor(p)?)))
                .collect::<CliResult<Vec<_>>>()?;
            let d = Decomposition::new(langs)?;
            let report = verify_decomposition(&d, limits)?;
            let rebuilt = automaton_of_decomposition(&d).ok();
            json!({
                "passed": report.passed(),
                "report": to_json(&report),
                "automaton": rebuilt.as_ref().map(semiautomaton_to_aut),
            })
        }
        DecompCommand::Roundtrip { file } => {
            let a = ctx.read_semi(&file)?;
            let d = extract_decomposition(&a, limits)?;
            let rebuilt = automaton_of_decomposition(&d)?;
            json!({
                "parts": d.len(),
                "isomorphic": is_isomorphic(&rebuilt, &a)?,
                "automaton": semiautomaton_to_aut(&rebuilt),
            })
        }
    };
    Ok(pretty(&v))
}

fn parts_json(d: &Decomposition) -> Vec<Value> {
    d.parts()
        .iter()
        .map(|p| {
            json!({
                "states": p.acceptor().n_states(),
                "aut": acceptor_to_aut(p.acceptor()),
            })
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("idealsync: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
