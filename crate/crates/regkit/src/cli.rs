//! The `regkit` command line.
//!
//! Exit status is 0 on success, 1 when validation finds problems or an
//! input cannot be read, and 2 for usage errors.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use regkit_core::algorithms::LetterMap;
use regkit_core::analysis::{classify, scene_profile, ProfileConfig, SceneProfile, DEFAULT_ENUMERATION_BOUND};
use regkit_core::evaluation::{evaluate, sweep_type_probability, DiceOptions, Grouping, OtherHandling};
use regkit_core::stats::{chi_squared_independence, one_way_anova, ContingencyTable2x2, TestResult};
use regkit_core::{AlgorithmSpec, Corpus, Domain, GeneratedDescription, RandomStream, TrialId, TypePolicy, Usability};

use crate::formats::{self, Side};
use crate::report::{number, optional, OutputFormat, Table};

#[derive(Parser, Debug)]
#[command(name = "regkit", version, about = "Referring-expression generation workbench")]
struct Cli {
    /// Worker threads for per-trial work (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a corpus against the schema and report every problem found.
    Validate(CorpusArgs),
    /// Minimal and numerically over-specified descriptions per scene.
    Profile {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Largest candidate universe to enumerate.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        bound: usize,
    },
    /// Run selection algorithms on every scene.
    Generate {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        algo: AlgoArgs,
    },
    /// DICE and PRP of algorithm output against the human expressions.
    Evaluate {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        algo: AlgoArgs,
        #[command(flatten)]
        dice: DiceArgs,
        /// Split results by these keys.
        #[arg(long, value_delimiter = ',')]
        group: Vec<GroupBy>,
    },
    /// Place each human expression in the specification taxonomy.
    Classify {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Per-domain category counts instead of one row per expression.
        #[arg(long)]
        summary: bool,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        bound: usize,
    },
    /// Mean DICE as a function of the probability of adding TYPE.
    Sweep {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        dice: DiceArgs,
        /// Base algorithm; its TYPE policy is replaced at each grid point.
        #[arg(long, default_value = "FB")]
        algo: String,
        #[arg(long, value_enum, default_value_t = Letters::Standard)]
        letters: Letters,
        /// Explicit probabilities, comma separated.
        #[arg(long, value_delimiter = ',', conflicts_with = "step")]
        grid: Vec<f64>,
        /// Grid spacing over [0, 1].
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        #[arg(long, default_value_t = 100)]
        runs: u64,
        #[arg(long, env = "REGKIT_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Significance tests.
    Stats {
        #[command(subcommand)]
        test: StatsCommand,
        #[arg(long, value_enum, global = true)]
        format: Option<OutputFormat>,
        #[arg(long, global = true)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum StatsCommand {
    /// Chi-squared test of independence on a 2x2 table.
    Chi2 {
        /// Cells a,b,c,d of [[a, b], [c, d]].
        #[arg(long, value_delimiter = ',', num_args = 1, required_unless_present = "file")]
        table: Vec<u64>,
        /// File holding the four cells.
        #[arg(long, conflicts_with = "table")]
        file: Option<PathBuf>,
        /// Apply the continuity correction.
        #[arg(long)]
        yates: bool,
    },
    /// One-way ANOVA across groups of scores.
    Anova {
        /// One group of comma-separated scores; repeat per group.
        #[arg(long = "group", required_unless_present = "file")]
        groups: Vec<String>,
        /// File with one group per line.
        #[arg(long, conflicts_with = "groups")]
        file: Option<PathBuf>,
    },
    /// Not implemented; prints a notice.
    Tukey {
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        rest: Vec<String>,
    },
}

#[derive(Args, Debug)]
struct CorpusArgs {
    /// Scene file.
    #[arg(long)]
    scenes: PathBuf,
    /// RE-record file.
    #[arg(long)]
    res: Option<PathBuf>,
    /// Corpus name for reports; defaults to the scene file's stem.
    #[arg(long)]
    corpus: Option<String>,
    /// Overlap table; keeps the trials paired on both sides.
    #[arg(long)]
    trials: Option<PathBuf>,
    /// Which column of the overlap table names this corpus's trials.
    #[arg(long, value_enum, default_value_t = Column::Left, requires = "trials")]
    trials_column: Column,
    #[arg(long, value_enum)]
    domain: Option<DomainArg>,
    /// Let algorithms and analysis use X-DIMENSION and Y-DIMENSION.
    #[arg(long)]
    location: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Write here (atomically) instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AlgoArgs {
    /// Algorithm spec such as FB, FB+TYPE, GR, IA-COS, GR@p=0.5@seed=7.
    #[arg(long, required = true)]
    algo: Vec<String>,
    #[arg(long, value_enum, default_value_t = Letters::Standard)]
    letters: Letters,
    /// Seed for probabilistic TYPE policies that do not name one.
    #[arg(long, env = "REGKIT_SEED")]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct DiceArgs {
    /// Compare attribute-value pairs rather than attribute names.
    #[arg(long)]
    strict_values: bool,
    #[arg(long, value_enum, default_value_t = OtherArg::Count)]
    other: OtherArg,
}

impl DiceArgs {
    fn options(&self) -> DiceOptions {
        DiceOptions {
            strict_values: self.strict_values,
            other: match self.other {
                OtherArg::Count => OtherHandling::CountAsAttribute,
                OtherArg::Exclude => OtherHandling::Exclude,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Column {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DomainArg {
    Furniture,
    People,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GroupBy {
    Domain,
    Position,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Letters {
    /// B = Beard, G = hasGlasses.
    Standard,
    /// B = hasGlasses, G = Beard.
    Caption,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OtherArg {
    /// OTHER counts as one attribute of the human description.
    Count,
    /// OTHER entries are left out of the comparison.
    Exclude,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Data(_) => 1,
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Output is buffered while a command runs and written out afterwards, so
/// the command can run inside the worker pool.
#[derive(Default)]
struct Io {
    out: Vec<u8>,
    err: Vec<u8>,
}

impl Io {
    fn warn(&mut self, msg: impl std::fmt::Display) {
        let _ = writeln!(self.err, "warning: {msg}");
    }

    fn emit(&mut self, text: &str, output: Option<&Path>) -> Result<(), Failure> {
        match output {
            None => self.out.write_all(text.as_bytes()).map_err(|e| Failure::Data(e.to_string())),
            Some(path) => write_atomically(path, text).map_err(|e| Failure::Data(format!("{}: {e}", path.display()))),
        }
    }
}

/// Writes to a temporary file next to `path` and renames it into place.
fn write_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut io = Io::default();
    let code = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            1
        }
        Ok(pool) => match pool.install(|| execute(cli.command, &mut io)) {
            Ok(code) => code,
            Err(f) => {
                let (Failure::Usage(m) | Failure::Data(m)) = &f;
                let _ = writeln!(io.err, "error: {m}");
                f.code()
            }
        },
    };
    let _ = out.write_all(&io.out).and_then(|_| out.flush());
    let _ = err.write_all(&io.err).and_then(|_| err.flush());
    code
}

fn execute(command: Command, io: &mut Io) -> Outcome {
    match command {
        Command::Validate(args) => validate(&args, io),
        Command::Profile { corpus, bound } => profile(&corpus, bound, io),
        Command::Generate { corpus, algo } => generate(&corpus, &algo, io),
        Command::Evaluate {
            corpus,
            algo,
            dice,
            group,
        } => evaluate_cmd(&corpus, &algo, &dice, &group, io),
        Command::Classify { corpus, summary, bound } => classify_cmd(&corpus, summary, bound, io),
        Command::Sweep {
            corpus,
            dice,
            algo,
            letters,
            grid,
            step,
            runs,
            seed,
        } => sweep(&corpus, &dice, &algo, letters, &grid, step, runs, seed, io),
        Command::Stats { test, format, output } => stats(test, format, output.as_deref(), io),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn usability(args: &CorpusArgs) -> Usability {
    Usability {
        location: args.location,
    }
}

/// Numeric ids in numeric order, then everything else lexicographically.
pub fn trial_order(a: &TrialId, b: &TrialId) -> Ordering {
    match (a.as_str().parse::<u64>(), b.as_str().parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

struct Loaded {
    corpus: Corpus,
    record_errors: Vec<formats::RecordError>,
}

fn load(args: &CorpusArgs, io: &mut Io) -> Result<Loaded, Failure> {
    let scenes = formats::parse_scene_file(&read(&args.scenes)?)
        .map_err(|e| Failure::Data(format!("{}: {e}", args.scenes.display())))?;
    let mut record_errors = Vec::new();
    let expressions = match &args.res {
        None => Vec::new(),
        Some(path) => {
            let parsed = formats::parse_re_records(&read(path)?)
                .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
            for w in &parsed.warnings {
                io.warn(w);
            }
            record_errors = parsed.errors;
            parsed.records
        }
    };
    let name = args.corpus.clone().unwrap_or_else(|| {
        let stem = args.scenes.file_stem().and_then(|s| s.to_str()).unwrap_or("corpus");
        stem.split('.').next().unwrap_or(stem).to_string()
    });
    let mut corpus = Corpus::new(name, scenes, expressions);
    if let Some(path) = &args.trials {
        let rows = formats::parse_overlap(&read(path)?)
            .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
        let side = match args.trials_column {
            Column::Left => Side::Left,
            Column::Right => Side::Right,
        };
        let (kept, absent) = corpus.filter_trials(&formats::shared_trials(&rows, side));
        for t in absent {
            io.warn(format_args!("trial {t} from {} is not in the corpus", path.display()));
        }
        corpus = kept;
    }
    if let Some(d) = args.domain {
        corpus = corpus.restrict_domain(match d {
            DomainArg::Furniture => Domain::Furniture,
            DomainArg::People => Domain::People,
        });
    }
    corpus.scenes.sort_by(|a, b| trial_order(a.trial(), b.trial()));
    Ok(Loaded { corpus, record_errors })
}

/// Loads the corpus and refuses to go on if any record was rejected.
fn load_strict(args: &CorpusArgs, io: &mut Io) -> Result<Corpus, Failure> {
    let loaded = load(args, io)?;
    if let Some(first) = loaded.record_errors.first() {
        for e in &loaded.record_errors {
            let _ = writeln!(io.err, "{e}");
        }
        return Err(Failure::Data(format!(
            "{} record(s) rejected, first: {first}",
            loaded.record_errors.len()
        )));
    }
    Ok(loaded.corpus)
}

fn validate(args: &CorpusArgs, io: &mut Io) -> Outcome {
    let loaded = load(args, io)?;
    let mut lines = String::new();
    for e in &loaded.record_errors {
        lines.push_str(&format!("{e}\n"));
    }
    let findings = loaded.corpus.validate();
    for f in &findings {
        lines.push_str(&format!("{f}\n"));
    }
    io.emit(&lines, args.output.as_deref())?;
    let problems = loaded.record_errors.len() + findings.len();
    let _ = writeln!(
        io.err,
        "{} scene(s), {} expression(s), {problems} problem(s)",
        loaded.corpus.scenes.len(),
        loaded.corpus.expressions.len()
    );
    Ok(i32::from(problems > 0))
}

fn profiles(corpus: &Corpus, cfg: &ProfileConfig) -> Result<BTreeMap<TrialId, SceneProfile>, Failure> {
    let results: Vec<_> = corpus.scenes.par_iter().map(|s| scene_profile(s, cfg)).collect();
    let mut out = BTreeMap::new();
    for r in results {
        let p = r.map_err(|e| Failure::Data(e.to_string()))?;
        out.insert(p.trial.clone(), p);
    }
    Ok(out)
}

fn profile(args: &CorpusArgs, bound: usize, io: &mut Io) -> Outcome {
    let corpus = load_strict(args, io)?;
    let cfg = ProfileConfig {
        usability: usability(args),
        bound,
    };
    let found = profiles(&corpus, &cfg)?;
    let mut table = Table::new(&["trial_id", "m", "n_minimal", "n_numerical"]);
    for s in &corpus.scenes {
        let p = &found[s.trial()];
        table.push(vec![
            p.trial.to_string(),
            optional(p.minimal_size),
            p.n_minimal().to_string(),
            p.numerical.to_string(),
        ]);
    }
    io.emit(&table.render(args.format), args.output.as_deref())?;
    Ok(0)
}

fn letter_map(l: Letters) -> LetterMap {
    match l {
        Letters::Standard => LetterMap::Standard,
        Letters::Caption => LetterMap::CaptionGloss,
    }
}

fn parse_spec(s: &str, letters: Letters) -> Result<AlgorithmSpec, Failure> {
    AlgorithmSpec::parse_with(s, letter_map(letters)).map_err(|e| Failure::Usage(e.to_string()))
}

fn specs(args: &AlgoArgs) -> Result<Vec<AlgorithmSpec>, Failure> {
    args.algo
        .iter()
        .map(|s| {
            let spec = parse_spec(s, args.letters)?;
            Ok(match (spec.policy, spec.seed, args.seed) {
                (TypePolicy::Probabilistic(_), None, Some(seed)) => spec.with_seed(seed),
                _ => spec,
            })
        })
        .collect()
}

/// Runs `spec` on every scene in parallel; scenes the spec cannot handle
/// are reported and skipped.
fn outputs(
    corpus: &Corpus,
    spec: &AlgorithmSpec,
    usability: Usability,
    io: &mut Io,
) -> BTreeMap<TrialId, GeneratedDescription> {
    let results: Vec<_> = corpus
        .scenes
        .par_iter()
        .map(|s| {
            let mut rng = RandomStream::for_trial(spec.seed_or_default(), 0, s.trial());
            spec.generate(s, usability, &mut rng)
        })
        .collect();
    let mut out = BTreeMap::new();
    for r in results {
        match r {
            Ok(g) => {
                out.insert(g.trial.clone(), g);
            }
            Err(e) => io.warn(format_args!("{spec}: {e}")),
        }
    }
    out
}

fn generate(args: &CorpusArgs, algo: &AlgoArgs, io: &mut Io) -> Outcome {
    let corpus = load_strict(args, io)?;
    let specs = specs(algo)?;
    let mut table = Table::new(&["trial_id", "algorithm", "description", "distinguishing"]);
    for spec in &specs {
        let found = outputs(&corpus, spec, usability(args), io);
        for s in &corpus.scenes {
            if let Some(g) = found.get(s.trial()) {
                table.push(vec![
                    g.trial.to_string(),
                    g.algorithm.clone(),
                    g.description.to_string(),
                    g.distinguishing.to_string(),
                ]);
            }
        }
    }
    io.emit(&table.render(args.format), args.output.as_deref())?;
    Ok(0)
}

pub const EVALUATION_HEADERS: [&str; 8] = ["corpus", "domain", "position", "algorithm", "n", "mean_dice", "sd", "prp"];

fn evaluate_cmd(args: &CorpusArgs, algo: &AlgoArgs, dice: &DiceArgs, group: &[GroupBy], io: &mut Io) -> Outcome {
    let corpus = load_strict(args, io)?;
    let specs = specs(algo)?;
    let grouping = Grouping {
        domain: group.contains(&GroupBy::Domain),
        position: group.contains(&GroupBy::Position),
    };
    let mut summaries = Vec::new();
    for spec in &specs {
        let found = outputs(&corpus, spec, usability(args), io);
        let eval = evaluate(&corpus, &spec.to_string(), &found, grouping, dice.options());
        for t in &eval.missing {
            io.warn(format_args!("{spec}: no output for trial {t}; its expressions are not scored"));
        }
        summaries.extend(eval.summaries);
    }
    summaries.sort_by(|a, b| a.key.cmp(&b.key));
    let mut table = Table::new(&EVALUATION_HEADERS);
    for s in summaries {
        table.push(vec![
            s.key.corpus.clone(),
            s.key.domain_label(),
            s.key.position_label(),
            s.key.algorithm.clone(),
            s.n.to_string(),
            number(s.mean_dice),
            s.sd.map(number).unwrap_or_default(),
            number(s.prp),
        ]);
    }
    io.emit(&table.render(args.format), args.output.as_deref())?;
    Ok(0)
}

fn classify_cmd(args: &CorpusArgs, summary: bool, bound: usize, io: &mut Io) -> Outcome {
    let corpus = load_strict(args, io)?;
    let usability = usability(args);
    let found = profiles(&corpus, &ProfileConfig { usability, bound })?;
    let table = if summary {
        let counts = regkit_core::analysis::spec_count_table(&corpus, &found, usability);
        if counts.skipped > 0 {
            io.warn(format_args!("{} expression(s) have no scene", counts.skipped));
        }
        let mut t = Table::new(&[
            "domain", "total", "minimal", "real", "nominal", "numerical", "wrong", "other", "under",
        ]);
        for (domain, r) in &counts.rows {
            let mut row = vec![domain.to_string()];
            row.extend(
                [r.total, r.minimal, r.real, r.nominal, r.numerical, r.wrong, r.other, r.under]
                    .iter()
                    .map(ToString::to_string),
            );
            t.push(row);
        }
        t
    } else {
        let mut t = Table::new(&[
            "trial_id",
            "participant",
            "position",
            "category",
            "superfluity",
            "deficit",
            "description",
        ]);
        for re in &corpus.expressions {
            let (Some(scene), Some(p)) = (corpus.scene(&re.trial), found.get(&re.trial)) else {
                io.warn(format_args!("expression for trial {} has no scene", re.trial));
                continue;
            };
            let r = classify(re, scene, p, usability);
            t.push(vec![
                re.trial.to_string(),
                re.participant.clone(),
                re.position.as_str().to_ascii_lowercase(),
                r.category.to_string(),
                optional(r.superfluity),
                optional(r.deficit),
                re.description.to_string(),
            ]);
        }
        t
    };
    io.emit(&table.render(args.format), args.output.as_deref())?;
    Ok(0)
}

/// `0, step, 2 step, ...` up to 1. When `1 / step` is a whole number the
/// points are computed as `k / n` so that they print cleanly.
pub fn grid_points(step: f64) -> Result<Vec<f64>, String> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(format!("step must be in (0, 1], got {step}"));
    }
    let n = (1.0 / step).round();
    if ((n * step) - 1.0).abs() < 1e-9 {
        let n = n as u64;
        return Ok((0..=n).map(|k| k as f64 / n as f64).collect());
    }
    let mut out = Vec::new();
    let mut k = 0u64;
    while k as f64 * step <= 1.0 + 1e-12 {
        out.push((k as f64 * step).min(1.0));
        k += 1;
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    args: &CorpusArgs,
    dice: &DiceArgs,
    algo: &str,
    letters: Letters,
    grid: &[f64],
    step: f64,
    runs: u64,
    seed: u64,
    io: &mut Io,
) -> Outcome {
    let spec = parse_spec(algo, letters)?;
    let grid = if grid.is_empty() {
        grid_points(step).map_err(Failure::Usage)?
    } else {
        grid.to_vec()
    };
    if let Some(bad) = grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Failure::Usage(format!("grid value {bad} is outside [0, 1]")));
    }
    if runs == 0 {
        return Err(Failure::Usage("--runs must be at least 1".into()));
    }
    let corpus = load_strict(args, io)?;
    let usability = usability(args);
    let opts = dice.options();
    let points: Vec<_> = grid
        .par_iter()
        .map(|p| sweep_type_probability(&corpus, &spec, &[*p], runs, seed, usability, opts))
        .collect();
    let mut rows = Vec::new();
    for r in points {
        let r = r.map_err(|e| Failure::Data(e.to_string()))?;
        rows.extend(r.points);
    }
    rows.sort_by(|a, b| a.p.total_cmp(&b.p));
    rows.dedup_by(|a, b| a.p == b.p);
    let mut table = Table::new(&["p", "mean_dice", "runs", "seed"]);
    for pt in rows {
        table.push(vec![number(pt.p), number(pt.mean_dice), runs.to_string(), seed.to_string()]);
    }
    io.emit(&table.render(args.format), args.output.as_deref())?;
    Ok(0)
}

fn numbers<T: std::str::FromStr>(text: &str) -> Result<Vec<T>, Failure> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Failure::Usage(format!("not a number: {s:?}"))))
        .collect()
}

fn stats(test: StatsCommand, format: Option<OutputFormat>, output: Option<&Path>, io: &mut Io) -> Outcome {
    let result: TestResult = match test {
        StatsCommand::Tukey { .. } => {
            let _ = writeln!(
                io.err,
                "Tukey's HSD is not available: it needs the studentized range distribution, \
                 which regkit does not implement. Use `stats anova` for the omnibus test."
            );
            return Ok(2);
        }
        StatsCommand::Chi2 { table, file, yates } => {
            let cells: Vec<u64> = match file {
                Some(path) => numbers(&read(&path)?)?,
                None => table,
            };
            let [a, b, c, d] = cells[..] else {
                return Err(Failure::Usage(format!("a 2x2 table needs 4 cells, got {}", cells.len())));
            };
            chi_squared_independence(&ContingencyTable2x2::new([[a, b], [c, d]]), yates)
                .map_err(|e| Failure::Data(e.to_string()))?
        }
        StatsCommand::Anova { groups, file } => {
            let lines: Vec<String> = match file {
                Some(path) => read(&path)?
                    .lines()
                    .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
                    .map(str::to_string)
                    .collect(),
                None => groups,
            };
            let parsed: Vec<Vec<f64>> = lines.iter().map(|l| numbers(l)).collect::<Result<_, _>>()?;
            one_way_anova(&parsed).map_err(|e| Failure::Data(e.to_string()))?
        }
    };
    let text = match format {
        None => format!("{result}\n"),
        Some(f) => {
            let mut t = Table::new(&["test", "statistic", "df", "p"]);
            t.push(vec![
                result.test.as_str().into(),
                number(result.statistic),
                result.df.to_string(),
                number(result.p),
            ]);
            t.render(f)
        }
    };
    io.emit(&text, output)?;
    Ok(0)
}
