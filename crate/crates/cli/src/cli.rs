//! Argument parsing and the subcommands.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use entrench_core::agent::Document;
use entrench_core::format::{parse_corpus, parse_domain, parse_profile, write_profile};
use entrench_core::{parse_formula, AgentProfile, ClassifierConfig, EntrenchmentRanking, Formula, Mode};

use crate::error::CliError;
use crate::server::{self, AppState};
use crate::store::{read_text, ProfileDir, DEFAULT_PROFILE};
use crate::views::{BeliefsView, LearnRecord, VerdictRecord};

#[derive(Debug, Parser)]
#[command(name = "entrench", version, about = "Entrenchment-ranked belief revision for adaptive document filtering")]
pub struct Cli {
    /// Profile directory. Defaults to `<home>/default`.
    #[arg(long, global = true)]
    pub profile: Option<PathBuf>,
    /// Root holding one directory per profile.
    #[arg(long, global = true, env = "ENTRENCH_HOME")]
    pub home: Option<PathBuf>,
    /// Rank-1 rule: `strict` (tautologies only) or `paper` (also protected
    /// knowledge). Stored by `init`; overrides the stored mode for `validate`.
    #[arg(long, global = true, value_parser = parse_mode)]
    pub mode: Option<Mode>,
    /// Preference amplitude, stored by `init`.
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    /// Neutrality threshold, stored by `init`.
    #[arg(long, global = true)]
    pub lambda: Option<f64>,
    /// Prior probability of relevance, stored by `init`.
    #[arg(long, global = true)]
    pub prel: Option<f64>,
    /// Machine-readable output, and JSON error records on stderr.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Create a profile, optionally seeded with domain knowledge.
    Init {
        /// Protected formulas and schemas, one per line, or belief-base records.
        #[arg(long)]
        domain: Option<PathBuf>,
        /// Individuals over which rule schemas are instantiated.
        #[arg(long, value_delimiter = ',')]
        constants: Vec<String>,
        /// Overwrite an existing profile.
        #[arg(long)]
        force: bool,
    },
    /// Replay the labeled documents of a corpus as relevance feedback.
    Learn { corpus: PathBuf },
    /// Print a verdict for every unlabeled (`?`) document of a corpus.
    Filter { corpus: PathBuf },
    /// Print the ranking, most entrenched first.
    Show,
    /// Explain the verdict on one document or query.
    Explain {
        /// Document id, looked up in `--corpus` or else the pending queue.
        doc_id: Option<String>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Query with these keywords instead of a stored document.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["doc_id", "formula"])]
        keywords: Vec<String>,
        /// Query with an arbitrary ground formula.
        #[arg(long, conflicts_with = "doc_id")]
        formula: Option<String>,
    },
    /// Check the ranking conditions and the history; exit 2 on violations.
    Validate,
    /// Write the profile file to stdout or `--output`.
    Export {
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Replace the profile with a previously exported file.
    Import {
        file: PathBuf,
        #[arg(long)]
        force: bool,
    },
    /// Serve the HTTP API over every profile under the home directory.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        listen: String,
        /// Bearer token required on profile routes.
        #[arg(long, env = "ENTRENCH_TOKEN")]
        token: Option<String>,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: entrench_core::Error| e.to_string())
}

impl Cli {
    pub fn home(&self) -> PathBuf {
        self.home.clone().unwrap_or_else(|| PathBuf::from(".entrench"))
    }

    pub fn profile_dir(&self) -> ProfileDir {
        match &self.profile {
            Some(p) => ProfileDir::new(p),
            None => ProfileDir::new(self.home().join(DEFAULT_PROFILE)),
        }
    }

    fn config(&self) -> Result<ClassifierConfig, CliError> {
        let d = ClassifierConfig::default();
        Ok(ClassifierConfig::new(
            self.epsilon.unwrap_or(d.epsilon),
            self.lambda.unwrap_or(d.lambda),
            self.prel.unwrap_or(d.p_rel),
        )?)
    }

    fn load(&self) -> Result<(ProfileDir, AgentProfile), CliError> {
        let dir = self.profile_dir();
        if !dir.exists() {
            return Err(CliError::Usage(format!(
                "no profile at {}; run `entrench init` first",
                dir.path().display()
            )));
        }
        let profile = dir.load()?;
        Ok((dir, profile))
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

fn emit_json<T: serde::Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("payloads serialize");
    text.push('\n');
    emit(out, &text)
}

/// Parse `args` (program name first) and run the command. Returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    let json = cli.json;
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = if json { writeln!(err, "{}", e.to_json()) } else { writeln!(err, "entrench: {e}") };
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Init { domain, constants, force } => init(cli, domain.as_deref(), constants, *force, out),
        Command::Learn { corpus } => learn(cli, corpus, out),
        Command::Filter { corpus } => filter(cli, corpus, out),
        Command::Show => show(cli, out),
        Command::Explain { doc_id, corpus, keywords, formula } => {
            explain(cli, doc_id.as_deref(), corpus.as_deref(), keywords, formula.as_deref(), out)
        }
        Command::Validate => validate(cli, out),
        Command::Export { output } => export(cli, output.as_deref(), out),
        Command::Import { file, force } => import(cli, file, *force, out),
        Command::Serve { listen, token } => serve(cli, listen, token.clone(), out),
    }
}

fn init(
    cli: &Cli,
    domain: Option<&Path>,
    constants: &[String],
    force: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let dir = cli.profile_dir();
    if dir.exists() && !force {
        return Err(CliError::Usage(format!(
            "a profile already exists at {}; pass --force to replace it",
            dir.path().display()
        )));
    }
    let ranking = match domain {
        Some(path) => parse_domain(&read_text(path)?).map_err(|e| CliError::file(path, e))?,
        None => EntrenchmentRanking::new(),
    };
    let mode = cli.mode.unwrap_or_default();
    let mut profile = AgentProfile::with_domain(ranking, cli.config()?, mode)?;
    profile.declare_constants(constants.iter().map(|c| c.trim().to_string()).filter(|c| !c.is_empty()));
    dir.save(&profile)?;
    dir.save_queue(&[])?;
    if cli.json {
        emit_json(out, &BeliefsView::of(&profile))
    } else {
        emit(
            out,
            &format!(
                "initialized {} ({} domain entries, {mode} mode)\n",
                dir.path().display(),
                profile.ranking.len()
            ),
        )
    }
}

fn read_corpus(path: &Path) -> Result<Vec<Document>, CliError> {
    parse_corpus(&read_text(path)?).map_err(|e| CliError::file(path, e))
}

fn learn(cli: &Cli, corpus: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let (dir, mut profile) = cli.load()?;
    let docs = read_corpus(corpus)?;
    let mut records = Vec::new();
    let mut skipped = 0;
    for doc in &docs {
        let Some(judgment) = doc.label else {
            skipped += 1;
            continue;
        };
        let (next, reports) = profile.learn(doc, judgment)?;
        profile = next;
        records.push(LearnRecord { doc_id: doc.id.clone(), judgment, reports });
    }
    dir.save(&profile)?;
    let judged: Vec<&str> = records.iter().map(|r| r.doc_id.as_str()).collect();
    let queue = dir.load_queue()?;
    if queue.iter().any(|d| judged.contains(&d.id.as_str())) {
        let rest: Vec<Document> = queue.into_iter().filter(|d| !judged.contains(&d.id.as_str())).collect();
        dir.save_queue(&rest)?;
    }

    if cli.json {
        return emit_json(out, &records);
    }
    let mut text = String::new();
    for r in &records {
        let label = if r.judgment.is_relevant() { "relevant" } else { "nonrelevant" };
        let n = r.reports.len();
        text.push_str(&format!("{}\t{label}\t{n} adjustment{}\n", r.doc_id, if n == 1 { "" } else { "s" }));
        for c in r.reports.iter().flat_map(|rep| &rep.changes) {
            text.push_str(&format!("  {}: {} -> {}\n", c.formula, c.before, c.after));
        }
    }
    text.push_str(&format!(
        "learned from {} document(s), skipped {skipped} unlabeled; version {}\n",
        records.len(),
        profile.version()
    ));
    emit(out, &text)
}

fn filter(cli: &Cli, corpus: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let (_, profile) = cli.load()?;
    let records: Vec<VerdictRecord> = read_corpus(corpus)?
        .iter()
        .filter(|d| d.label.is_none())
        .map(|d| VerdictRecord { doc_id: d.id.clone(), verdict: profile.filter(d) })
        .collect();
    if cli.json {
        return emit_json(out, &records);
    }
    let mut text = String::new();
    for r in &records {
        let label = if r.verdict.relevant { "relevant" } else { "not-relevant" };
        text.push_str(&format!("{}\t{label}\t{}\n", r.doc_id, r.verdict.degree));
    }
    emit(out, &text)
}

/// Two columns, formula and rank, most entrenched first.
pub fn render_table(view: &BeliefsView) -> String {
    let header = "Formula";
    let width = view
        .entries
        .iter()
        .map(|e| e.formula.to_string().chars().count())
        .chain([header.len()])
        .max()
        .unwrap_or(0);
    let mut text = format!("{header:<width$}  B(α)\n");
    for e in &view.entries {
        text.push_str(&format!("{:<width$}  {}\n", e.formula.to_string(), e.rank));
    }
    text.push_str(&format!(
        "Incons {}; cut holds {} of {} entries\n",
        view.incons,
        view.cut_size,
        view.entries.len()
    ));
    text
}

fn show(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let (_, profile) = cli.load()?;
    let view = BeliefsView::of(&profile);
    if cli.json {
        emit_json(out, &view)
    } else {
        emit(out, &render_table(&view))
    }
}

fn explain(
    cli: &Cli,
    doc_id: Option<&str>,
    corpus: Option<&Path>,
    keywords: &[String],
    formula: Option<&str>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let (dir, profile) = cli.load()?;
    let query: Formula = if let Some(text) = formula {
        parse_formula(text).map_err(entrench_core::Error::from)?
    } else if !keywords.is_empty() {
        Document::new("query", keywords)?.formula()
    } else if let Some(id) = doc_id {
        let docs = match corpus {
            Some(path) => read_corpus(path)?,
            None => dir.load_queue()?,
        };
        let doc = docs
            .iter()
            .find(|d| d.id == id)
            .ok_or_else(|| CliError::Usage(format!("document {id:?} not found")))?;
        doc.formula()
    } else {
        return Err(CliError::Usage("explain needs a document id, --keywords or --formula".into()));
    };
    let e = profile.explain_formula(&query);
    if cli.json {
        return emit_json(out, &e);
    }
    let v = &e.verdict;
    let mut text = format!("query: {}\n", e.query);
    if v.relevant {
        text.push_str(&format!("verdict: relevant (degree {})\n", v.degree));
        text.push_str("premises:\n");
        for p in &v.premises {
            text.push_str(&format!("  {p}\n"));
        }
    } else {
        text.push_str("verdict: not relevant\n");
    }
    text.push_str(&format!("incons: {}\ncut ({}):\n", v.incons, v.cut_size));
    for s in &e.cut {
        text.push_str(&format!("  {s}\n"));
    }
    emit(out, &text)
}

fn validate(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let (_, profile) = cli.load()?;
    let mode = cli.mode.unwrap_or(profile.mode);
    let report = profile.ranking.validate(mode);
    let replays = profile.replay_history() == profile.ranking;
    let mut problems = report.violations.len();
    if !replays {
        problems += 1;
    }
    if cli.json {
        emit_json(out, &serde_json::json!({ "mode": mode, "report": report, "history_replays": replays }))?;
    } else {
        let mut text = String::new();
        for v in &report.violations {
            text.push_str(&format!("{}\t{}\t{}\n", v.condition, v.formula, v.message));
        }
        for w in &report.warnings {
            let entrench_core::entrenchment::Warning::InconsistentBase { incons } = w;
            text.push_str(&format!("warning\tinconsistent base, Incons {incons}\n"));
        }
        if !replays {
            text.push_str("history\thistory does not replay to the current ranking\n");
        }
        if problems == 0 {
            text.push_str(&format!("valid ({mode} mode, {} entries)\n", profile.ranking.len()));
        }
        emit(out, &text)?;
    }
    if problems == 0 {
        Ok(())
    } else {
        Err(CliError::Invalid {
            message: format!("{problems} violation(s) in {mode} mode"),
            details: serde_json::to_value(&report).expect("reports serialize"),
        })
    }
}

fn export(cli: &Cli, output: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let (_, profile) = cli.load()?;
    let text = write_profile(&profile);
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => emit(out, &text),
    }
}

fn import(cli: &Cli, file: &Path, force: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let profile = parse_profile(&read_text(file)?).map_err(|e| CliError::file(file, e))?;
    let dir = cli.profile_dir();
    if dir.exists() && !force {
        return Err(CliError::Usage(format!(
            "a profile already exists at {}; pass --force to replace it",
            dir.path().display()
        )));
    }
    dir.save(&profile)?;
    if !dir.queue_path().exists() {
        dir.save_queue(&[])?;
    }
    emit(out, &format!("imported {} into {}\n", file.display(), dir.path().display()))
}

fn serve(cli: &Cli, listen: &str, token: Option<String>, out: &mut dyn Write) -> Result<(), CliError> {
    let state = Arc::new(AppState::new(cli.home(), token));
    let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::io("<runtime>", e))?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind(listen).await.map_err(|e| CliError::io(listen, e))?;
        let addr = listener.local_addr().map_err(|e| CliError::io(listen, e))?;
        emit(out, &format!("listening on http://{addr}\n"))?;
        let _ = out.flush();
        server::serve(listener, state).await.map_err(|e| CliError::io(listen, e))
    })
}
