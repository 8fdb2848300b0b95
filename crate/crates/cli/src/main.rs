use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use subshift::extension::{
    anchor_words, cocycle, conjugacy_check, entry_positions, extension_trace, EntryMode,
    ExtensionTrace, SubgroupEstimate,
};
use subshift::graphspeedup::{enumerated_patterns, SpeedupPresentation};
use subshift::lr::{golden_for, proof_bound_check, recurrence_profile, speedup_recurrence_profile};
use subshift::returnwords::{return_bound_check, return_words};
use subshift::shiftspaces::complexity;
use subshift::speedup::{orbit_coloring, speedup_complexity, validate_jump, JumpFunction};
use subshift::words::{subwords, OrbitSegment, Word};

mod check;
mod source;

use source::{resolve_jump, ShiftSource};

#[derive(Debug)]
pub enum CliError {
    Core(subshift::Error),
    Io(String),
    Usage(String),
}

impl CliError {
    pub fn class(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.class(),
            CliError::Io(_) => "io",
            CliError::Usage(_) => "usage",
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Io(m) | CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<subshift::Error> for CliError {
    fn from(e: subshift::Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// Subshifts, their speedups and the permutations S-orbits undergo.
#[derive(Parser, Debug)]
#[command(name = "subshift", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// fibonacci, thue-morse, golden-mean, even, sturmian:a1,a2@p/q, or a rule/presentation file
    #[arg(long, default_value = "fibonacci")]
    pub shift: String,
    /// Jump file, `first-return:<radius>`, or inline text such as `constant 2` or `K 0;0 1;1 2`
    #[arg(long)]
    pub jump: Option<String>,
    #[arg(long)]
    word: Option<String>,
    /// Length of the generated window
    #[arg(long, alias = "length", default_value_t = 10_000)]
    window: usize,
    #[arg(long)]
    nmax: Option<usize>,
    /// Seed for random walks and randomized checks
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Letter whose fixed point is generated
    #[arg(long)]
    seed_symbol: Option<String>,
    /// Directory for artifacts
    #[arg(long)]
    out: Option<PathBuf>,
    /// Accept base words shorter than p_max + 4K + 2 (default)
    #[arg(long, conflicts_with = "strict")]
    relaxed: bool,
    /// Reject base words shorter than p_max + 4K + 2
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a prefix of the shift
    Gen(Common),
    /// List the factors of length --nmax
    Lang(Common),
    /// Factor complexity; with --jump also S-pattern counts and their bound
    Complexity(Common),
    /// Totality and bijectivity of a jump on the window
    ValidateJump(Common),
    /// Orbit number and orbit-class coloring
    Orbits(Common),
    /// Return words of --word and the derived sequence
    Returns(Common),
    /// Entry positions, transition permutations and the cocycle trace
    Perms(Common),
    /// Cocycle values from the middle occurrence
    Cocycle {
        #[command(flatten)]
        common: Common,
        /// Number of steps (negative for backwards); may be repeated
        #[arg(long, allow_hyphen_values = true, default_values_t = [1i64])]
        steps: Vec<i64>,
    },
    /// Local group estimates at anchor words and their conjugacy
    Localgroup {
        #[command(flatten)]
        common: Common,
        /// Anchor word containing --word; may be repeated
        #[arg(long)]
        anchor: Vec<String>,
        /// Number of anchors to pick automatically when none are given
        #[arg(long, default_value_t = 4)]
        anchors: usize,
    },
    /// Recurrence profiles of the shift and its speedup
    Lrscan {
        #[command(flatten)]
        common: Common,
        /// Largest S-pattern length (defaults to 3/4 of --nmax)
        #[arg(long)]
        speedup_nmax: Option<usize>,
    },
    /// Speedup presentation of an SFT or sofic shift
    SpeedupGraph(Common),
    /// Run every applicable invariant on the configured inputs
    Check(Common),
}

/// Loaded inputs shared by all commands.
pub struct Run {
    pub common: Common,
    pub source: ShiftSource,
    pub segment: OrbitSegment,
}

impl Run {
    fn load(common: Common) -> CliResult<Self> {
        if common.window == 0 {
            return Err(CliError::Usage("--window must be positive".into()));
        }
        let source = ShiftSource::resolve(&common.shift)?;
        let segment = source.segment(common.window, common.seed, common.seed_symbol.as_deref())?;
        Ok(Run { common, source, segment })
    }

    pub fn jump(&self) -> CliResult<JumpFunction> {
        let spec = self.common.jump.as_deref().ok_or_else(|| CliError::Usage("--jump is required".into()))?;
        resolve_jump(spec, &self.segment)
    }

    pub fn optional_jump(&self) -> CliResult<Option<JumpFunction>> {
        self.common.jump.as_ref().map(|_| self.jump()).transpose()
    }

    pub fn word(&self) -> CliResult<Word> {
        let text = self.common.word.as_deref().ok_or_else(|| CliError::Usage("--word is required".into()))?;
        Ok(Word::parse(self.segment.alphabet(), text)?)
    }

    pub fn optional_word(&self) -> CliResult<Option<Word>> {
        self.common.word.as_ref().map(|_| self.word()).transpose()
    }

    pub fn mode(&self) -> EntryMode {
        if self.common.strict {
            EntryMode::Strict
        } else {
            EntryMode::Relaxed
        }
    }

    pub fn nmax(&self, default: usize) -> usize {
        self.common.nmax.unwrap_or(default)
    }

    pub fn require_window(&self, n_max: usize, p_max: usize) -> CliResult<()> {
        let floor = 4 * n_max * p_max;
        if self.segment.len() < floor {
            return Err(CliError::Core(subshift::Error::WindowTooShort { what: "window floor 4 n_max p_max", n: n_max }));
        }
        Ok(())
    }

    /// Writes `contents` to `<out>/<name>`; without `--out` nothing is written.
    pub fn artifact(&self, name: &str, contents: &str) -> CliResult<()> {
        if let Some(dir) = &self.common.out {
            fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            let path = dir.join(name);
            fs::write(&path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            println!("wrote {}", path.display());
        }
        Ok(())
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn gen(run: &Run) -> CliResult<bool> {
    let text = format!("{}\n", run.segment);
    print!("{text}");
    run.artifact("prefix.txt", &text)?;
    Ok(true)
}

fn lang(run: &Run) -> CliResult<bool> {
    let n = run.nmax(4);
    complexity(&run.segment, n)?;
    let mut text = String::new();
    for w in subwords(&run.segment, n)? {
        let _ = writeln!(text, "{w}");
    }
    print!("{text}");
    run.artifact("lang.txt", &text)?;
    Ok(true)
}

fn complexity_cmd(run: &Run) -> CliResult<bool> {
    let n_max = run.nmax(10);
    match run.optional_jump()? {
        None => {
            run.require_window(n_max, 1)?;
            let profile = complexity(&run.segment, n_max)?;
            let mut csv = String::from("n,count\n");
            for (n, c) in profile.counts().iter().enumerate() {
                let _ = writeln!(csv, "{},{}", n + 1, c);
            }
            print!("{csv}");
            run.artifact("complexity.csv", &csv)?;
            Ok(true)
        }
        Some(jump) => {
            run.require_window(n_max, jump.max_value())?;
            let sc = speedup_complexity(&run.segment, &jump, n_max)?;
            let mut csv = String::from("n,speedup_count,base_count,bound\n");
            for c in &sc.checks {
                let _ = writeln!(csv, "{},{},{},{}", c.n, c.speedup_count, c.base_count, c.bound);
            }
            print!("{csv}");
            println!("N = {}, p_max = {}, K' = {}", sc.radius, sc.p_max, sc.k_prime);
            println!("bound p_S(n) <= K' p(p_max n): {}", verdict(sc.holds()));
            run.artifact("speedup_complexity.csv", &csv)?;
            Ok(sc.holds())
        }
    }
}

fn validate(run: &Run) -> CliResult<bool> {
    let report = validate_jump(&run.jump()?, &run.segment)?;
    print!("{report}");
    Ok(report.is_homeomorphic())
}

fn orbits(run: &Run) -> CliResult<bool> {
    let coloring = orbit_coloring(&run.segment, &run.jump()?)?;
    println!("orbit number: {}", coloring.c());
    println!("p_max: {}", coloring.p_max());
    let central = coloring.central();
    println!("central window: {}..{}", central.start, central.end);
    let shown = central.start..central.end.min(central.start + 60);
    let letters = run.segment.alphabet().render(&run.segment.letters()[shown.clone()]);
    let classes: String = shown
        .clone()
        .map(|i| coloring.label(i).map_or('.', |c| char::from_digit((c + 1) as u32 % 36, 36).unwrap_or('?')))
        .collect();
    println!("letters {letters}");
    println!("classes {classes}");
    let mut csv = String::from("index,letter,class\n");
    for i in 0..run.segment.len() {
        let class = coloring.label(i).map_or_else(String::new, |c| (c + 1).to_string());
        let _ = writeln!(csv, "{},{},{}", i, run.segment.alphabet().symbol(run.segment.letters()[i]), class);
    }
    run.artifact("orbits.csv", &csv)?;
    Ok(coloring.c() <= coloring.p_max())
}

fn returns(run: &Run) -> CliResult<bool> {
    let system = return_words(&run.segment, &run.word()?)?;
    let text = system.to_string();
    let mut lines = text.lines();
    println!("base word: {}", lines.next().unwrap_or(""));
    for (k, r) in system.returns().iter().enumerate() {
        println!("R{} = {r}", k + 1);
    }
    let derived: Vec<String> = system.derived().iter().take(40).map(|d| (d + 1).to_string()).collect();
    println!("derived: {}{}", derived.join(" "), if system.derived().len() > 40 { " ..." } else { "" });
    let rebuilt = system.reconstruct();
    let (first, last) = (system.occurrences()[0], *system.occurrences().last().expect("occurrences"));
    let ok = rebuilt == run.segment.letters()[first..last];
    println!("reconstruction: {}", verdict(ok));
    if let Ok(profile) = recurrence_profile(&run.segment, system.base().len()) {
        let bound = return_bound_check(&system, profile.max_ratio());
        println!(
            "count {} <= {} and max length {} <= {}: {}",
            bound.count,
            bound.count_bound,
            bound.max_len,
            bound.len_bound,
            verdict(bound.holds())
        );
    }
    run.artifact("returns.txt", &text)?;
    Ok(ok)
}

fn trace(run: &Run) -> CliResult<(JumpFunction, Word, ExtensionTrace)> {
    let jump = run.jump()?;
    let w = run.word()?;
    let trace = extension_trace(&run.segment, &jump, &w, run.mode())?;
    Ok((jump, w, trace))
}

fn perms(run: &Run) -> CliResult<bool> {
    let (jump, w, trace) = trace(run)?;
    print!("{}", entry_positions(&run.segment, &jump, &w, run.mode())?);
    println!("orbit number: {}", trace.degree());
    let table = trace.permutation_table();
    for (d, ps) in &table {
        let shown: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
        println!("R{} = {}: {}", d + 1, trace.returns()[*d], shown.join(" "));
    }
    let mut pairs: std::collections::BTreeMap<(usize, usize), std::collections::BTreeSet<String>> =
        Default::default();
    for k in 0..trace.len().saturating_sub(1) {
        pairs
            .entry((trace.derived()[k], trace.derived()[k + 1]))
            .or_default()
            .insert(trace.perms()[k].to_string());
    }
    for ((a, b), ps) in &pairs {
        let shown: Vec<&str> = ps.iter().map(String::as_str).collect();
        println!("psi(R{} R{}) = {}", a + 1, b + 1, shown.join(" "));
    }
    let determined = table.values().all(|ps| ps.len() == 1);
    println!("steps traced: {}", trace.len());
    println!("permutation determined by return word: {}", verdict(determined));
    run.artifact("trace.csv", &trace.to_csv())?;
    Ok(determined)
}

fn cocycle_cmd(run: &Run, steps: &[i64]) -> CliResult<bool> {
    let (_, _, trace) = trace(run)?;
    println!("origin: occurrence {} at index {}", trace.origin(), trace.occurrences()[trace.origin()]);
    let mut text = String::from("n,cocycle\n");
    for &n in steps {
        let value = cocycle(&trace, n)?;
        println!("phi^{n} = {value}");
        let _ = writeln!(text, "{n},{value}");
    }
    run.artifact("cocycle.csv", &text)?;
    Ok(true)
}

fn localgroup(run: &Run, anchors: &[String], count: usize) -> CliResult<bool> {
    let (_, w, trace) = trace(run)?;
    let anchors: Vec<Word> = if anchors.is_empty() {
        anchor_words(&run.segment, &w, count)?
    } else {
        anchors
            .iter()
            .map(|a| Word::parse(run.segment.alphabet(), a))
            .collect::<subshift::Result<_>>()?
    };
    let groups: Vec<SubgroupEstimate> = anchors
        .iter()
        .map(|a| trace.local_group(&run.segment, a))
        .collect::<subshift::Result<_>>()?;
    for (a, g) in anchors.iter().zip(&groups) {
        println!("G({a}) = {g}");
    }
    let mut all = true;
    let mut matrix = String::new();
    for (i, h1) in groups.iter().enumerate() {
        let row: Vec<String> = groups
            .iter()
            .map(|h2| {
                let g = conjugacy_check(h1, h2)?;
                all &= g.is_some();
                Ok(g.map_or_else(|| "-".to_string(), |g| g.to_string()))
            })
            .collect::<CliResult<_>>()?;
        let _ = writeln!(matrix, "{}: {}", i + 1, row.join(" "));
    }
    print!("conjugators:\n{matrix}");
    println!("pairwise conjugate: {}", verdict(all));
    run.artifact("conjugacy.txt", &matrix)?;
    Ok(all)
}

fn lrscan(run: &Run, speedup_nmax: Option<usize>) -> CliResult<bool> {
    let jump = run.jump()?;
    let base_n = run.nmax(20);
    let speed_n = speedup_nmax.unwrap_or((base_n * 3 / 4).max(1));
    run.require_window(base_n.max(speed_n), jump.max_value())?;
    let base = recurrence_profile(&run.segment, base_n)?;
    let speed = speedup_recurrence_profile(&run.segment, &jump, speed_n)?;
    println!("base max gap ratio (n <= {base_n}): {}", base.max_ratio());
    println!("speedup max gap ratio (n <= {speed_n}): {}", speed.max_ratio());
    let mut ok = true;
    let golden = jump.constant_value().and_then(|k| golden_for(&run.source.name(), k));
    match golden {
        Some(g) if g.window == run.segment.len() && g.base_n_max == base_n && g.speedup_n_max == speed_n => {
            let pass = base.max_ratio() <= g.base_max() && speed.max_ratio() <= g.speedup_max();
            println!("golden base {} speedup {}: {}", g.base_max(), g.speedup_max(), verdict(pass));
            ok &= pass;
        }
        Some(g) => println!(
            "golden applies to window {} with n_max {}/{}; not compared",
            g.window, g.base_n_max, g.speedup_n_max
        ),
        None => println!("no golden for this configuration"),
    }
    if let Some(w) = run.optional_word()? {
        let scan = extension_trace(&run.segment, &jump, &w, run.mode())?.gap_scan();
        let p_max = validate_jump(&jump, &run.segment)?.p_max;
        let rows = proof_bound_check(&speed, base.max_ratio(), scan.ratio, p_max);
        let mut csv = String::from("n,gap,bound\n");
        for r in &rows {
            let _ = writeln!(csv, "{},{},{}", r.n, r.gap, r.bound);
        }
        let pass = rows.iter().all(|r| r.holds());
        println!("L* estimate from {w}: {}", scan.ratio);
        println!("gap <= 2 L* L p_max n: {}", verdict(pass));
        ok &= pass;
        run.artifact("proof_bound.csv", &csv)?;
    }
    run.artifact("base_profile.csv", &base.to_csv())?;
    run.artifact("speedup_profile.csv", &speed.to_csv())?;
    println!("verdict: {}", verdict(ok));
    Ok(ok)
}

fn speedup_graph(run: &Run) -> CliResult<bool> {
    let graph = run
        .source
        .presentation()
        .ok_or_else(|| CliError::Usage("speedup-graph needs a presentation (golden-mean, even, or a file)".into()))?;
    let jump = run.jump()?;
    let sp = SpeedupPresentation::build(graph, &jump)?;
    let pres = sp.presentation();
    println!("block length M = {} (p_max {}, N {})", sp.block_len(), sp.p_max(), sp.radius());
    let n_max = run.nmax(6);
    let mut ok = true;
    for n in 1..=n_max {
        let built = sp.pattern_language(n)?;
        let oracle = enumerated_patterns(graph, &jump, n)?;
        println!("n = {n}: {} S-patterns, oracle {}: {}", built.len(), oracle.len(), verdict(built == oracle));
        ok &= built == oracle;
    }
    if run.common.out.is_none() {
        print!("{}", pres.to_dot());
    }
    run.artifact("speedup.txt", &pres.to_string())?;
    run.artifact("speedup.dot", &pres.to_dot())?;
    Ok(ok)
}

fn dispatch(command: Command) -> CliResult<bool> {
    match command {
        Command::Gen(c) => gen(&Run::load(c)?),
        Command::Lang(c) => lang(&Run::load(c)?),
        Command::Complexity(c) => complexity_cmd(&Run::load(c)?),
        Command::ValidateJump(c) => validate(&Run::load(c)?),
        Command::Orbits(c) => orbits(&Run::load(c)?),
        Command::Returns(c) => returns(&Run::load(c)?),
        Command::Perms(c) => perms(&Run::load(c)?),
        Command::Cocycle { common, steps } => cocycle_cmd(&Run::load(common)?, &steps),
        Command::Localgroup { common, anchor, anchors } => localgroup(&Run::load(common)?, &anchor, anchors),
        Command::Lrscan { common, speedup_nmax } => lrscan(&Run::load(common)?, speedup_nmax),
        Command::SpeedupGraph(c) => speedup_graph(&Run::load(c)?),
        Command::Check(c) => check::run(&Run::load(c)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error[usage]: {first}");
            return ExitCode::from(2);
        }
    };
    match dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("error[{}]: {msg}", e.class());
            ExitCode::from(2)
        }
    }
}
