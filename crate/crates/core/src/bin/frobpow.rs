use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use frobpow::session::{Diagnostic, RunOutput, Session, SessionFile, TaskSpec};

#[derive(Parser)]
#[command(name = "frobpow", version, about = "Frobenius powers, closures and flat base change checks over GF(p)")]
struct Cli {
    /// Resource cap override: `N` (basis size) or `basis=N,degree=M`. Repeatable.
    #[arg(long, global = true)]
    cap: Vec<String>,

    /// Output format; defaults to json for `run` and text otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Leave wall-clock timing out of the JSON report.
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the tasks of a session file.
    Run {
        session: PathBuf,
        /// Only tasks whose id or command matches, or `verify-<verb>`.
        #[arg(long)]
        task: Option<String>,
        /// Run tasks concurrently; report order is unchanged.
        #[arg(long)]
        parallel: bool,
    },
    /// Reduced Groebner basis of an ideal.
    Gb(Target),
    /// Normal form of an element.
    Nf {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        elem: String,
    },
    /// Ideal membership.
    Member {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        elem: String,
    },
    /// Frobenius power I^[q].
    Fpower {
        #[command(flatten)]
        target: Target,
        #[arg(long, conflicts_with = "e")]
        q: Option<u64>,
        #[arg(long)]
        e: Option<u64>,
    },
    /// Frobenius closure membership.
    Fclosure {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        elem: String,
        #[arg(long)]
        emax: Option<u64>,
    },
    /// Tight closure membership evidence.
    Tclosure {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        elem: String,
        #[command(flatten)]
        te: TestElementArgs,
        #[arg(long)]
        emax: Option<u64>,
        /// `regular` for the exponent-1 certificate of a regular ring.
        #[arg(long)]
        certificate: Option<String>,
        #[arg(long, requires = "certificate_c")]
        certificate_q: Option<u64>,
        #[arg(long, requires = "certificate_q")]
        certificate_c: Option<String>,
    },
    /// Hilbert-Kunz table l(R/I^[q]) for e = 0..=emax.
    Hk {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        emax: Option<u64>,
    },
    /// Truncated test ideals along a system of parameters.
    Tau {
        #[command(flatten)]
        ring: RingArg,
        /// System of parameters, e.g. "(x, y)".
        #[arg(long)]
        z: String,
        #[arg(long)]
        tmax: Option<u64>,
        #[arg(long)]
        emax: Option<u64>,
        #[command(flatten)]
        te: TestElementArgs,
    },
    /// Socle of R/I and irreducibility of I.
    Socle(Target),
    /// Krull dimension of R/I.
    Dim {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Check a base change or closure identity on a concrete instance.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct RingArg {
    /// Ring text, builtin name (fermat7, node2, plane5, line3) or session name.
    #[arg(long)]
    ring: String,
    /// Session file supplying named rings, ideals and extensions.
    #[arg(long)]
    session: Option<PathBuf>,
}

#[derive(Args)]
struct Target {
    #[command(flatten)]
    ring: RingArg,
    /// Generators "(x^2, y)", variable letters "xy", `m`, or a session name.
    #[arg(long)]
    ideal: String,
}

#[derive(Args)]
struct TestElementArgs {
    /// `jacobian`, `unit`, or a polynomial.
    #[arg(long)]
    test_element: Option<String>,
    #[arg(long)]
    test_power: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// length-identity, hk-product, kunz-inequality, tight-extension,
    /// strong-test-ideal, test-exponent-transfer, tau-extension, f-injective, f-rational
    verb: String,
    #[arg(long)]
    session: Option<PathBuf>,
    #[arg(long)]
    extension: Option<String>,
    #[arg(long)]
    base: Option<String>,
    #[arg(long)]
    fiber: Option<String>,
    #[arg(long)]
    fiber_z: Option<String>,
    #[arg(long)]
    ring: Option<String>,
    #[arg(long)]
    ideal: Option<String>,
    /// Candidate strong test ideal.
    #[arg(long = "test-ideal")]
    test_ideal: Option<String>,
    #[arg(long)]
    z: Option<String>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    t: Option<u64>,
    #[arg(long)]
    e_min: Option<u64>,
    #[arg(long)]
    e_max: Option<u64>,
    #[arg(long)]
    tmax: Option<u64>,
    #[arg(long)]
    emax: Option<u64>,
    #[command(flatten)]
    te: TestElementArgs,
}

/// Task arguments collected from flags; absent flags are left out.
#[derive(Default)]
struct Builder(BTreeMap<String, Value>);

impl Builder {
    fn s(mut self, k: &str, v: Option<&String>) -> Self {
        if let Some(v) = v {
            self.0.insert(k.into(), Value::String(v.clone()));
        }
        self
    }

    fn n(mut self, k: &str, v: Option<u64>) -> Self {
        if let Some(v) = v {
            self.0.insert(k.into(), Value::from(v));
        }
        self
    }

    fn target(self, t: &Target) -> Self {
        self.s("ring", Some(&t.ring.ring)).s("ideal", Some(&t.ideal))
    }

    fn te(self, te: &TestElementArgs) -> Self {
        self.s("test_element", te.test_element.as_ref()).n("test_power", te.test_power)
    }
}

/// The one-task session for a direct subcommand.
fn single_task(cmd: Cmd) -> (String, Option<PathBuf>, Builder) {
    let b = Builder::default();
    match cmd {
        Cmd::Run { .. } => unreachable!(),
        Cmd::Gb(t) => ("gb".into(), t.ring.session.clone(), b.target(&t)),
        Cmd::Nf { target, elem } => ("nf".into(), target.ring.session.clone(), b.target(&target).s("elem", Some(&elem))),
        Cmd::Member { target, elem } => {
            ("member".into(), target.ring.session.clone(), b.target(&target).s("elem", Some(&elem)))
        }
        Cmd::Fpower { target, q, e } => ("fpower".into(), target.ring.session.clone(), b.target(&target).n("q", q).n("e", e)),
        Cmd::Fclosure { target, elem, emax } => (
            "fclosure".into(),
            target.ring.session.clone(),
            b.target(&target).s("elem", Some(&elem)).n("emax", emax),
        ),
        Cmd::Tclosure { target, elem, te, emax, certificate, certificate_q, certificate_c } => (
            "tclosure".into(),
            target.ring.session.clone(),
            b.target(&target)
                .s("elem", Some(&elem))
                .te(&te)
                .n("emax", emax)
                .s("certificate", certificate.as_ref())
                .n("certificate_q", certificate_q)
                .s("certificate_c", certificate_c.as_ref()),
        ),
        Cmd::Hk { target, emax } => ("hk".into(), target.ring.session.clone(), b.target(&target).n("emax", emax)),
        Cmd::Tau { ring, z, tmax, emax, te } => (
            "tau".into(),
            ring.session.clone(),
            b.s("ring", Some(&ring.ring)).s("z", Some(&z)).n("tmax", tmax).n("emax", emax).te(&te),
        ),
        Cmd::Socle(t) => ("socle".into(), t.ring.session.clone(), b.target(&t)),
        Cmd::Dim { ring, ideal } => ("dim".into(), ring.session.clone(), b.s("ring", Some(&ring.ring)).s("ideal", ideal.as_ref())),
        Cmd::Verify(v) => {
            let b = b
                .s("verb", Some(&v.verb))
                .s("extension", v.extension.as_ref())
                .s("base", v.base.as_ref())
                .s("fiber", v.fiber.as_ref())
                .s("fiber_z", v.fiber_z.as_ref())
                .s("ring", v.ring.as_ref())
                .s("ideal", v.ideal.as_ref())
                .s("T", v.test_ideal.as_ref())
                .s("z", v.z.as_ref())
                .s("c", v.c.as_ref())
                .n("t", v.t)
                .n("e_min", v.e_min)
                .n("e_max", v.e_max)
                .n("tmax", v.tmax)
                .n("emax", v.emax)
                .te(&v.te);
            ("verify".into(), v.session, b)
        }
    }
}

fn read_session_file(path: &Path) -> Result<SessionFile, Diagnostic> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Diagnostic::new(("E001", "io error"), format!("{}: {e}", path.display())))?;
    SessionFile::from_json(&text)
}

fn execute(cli: Cli) -> Result<(RunOutput, Format), Diagnostic> {
    let mut caps = Vec::new();
    if let Ok(env) = std::env::var("FROBPOW_CAP") {
        caps.push(env);
    }
    caps.extend(cli.cap.iter().cloned());
    match cli.cmd {
        Cmd::Run { session, task, parallel } => {
            let s = Session::load(&session, &caps)?;
            Ok((s.run(task.as_deref(), parallel)?, cli.format.unwrap_or(Format::Json)))
        }
        cmd => {
            let (command, session, args) = single_task(cmd);
            let mut file = match &session {
                Some(p) => read_session_file(p)?,
                None => SessionFile::default(),
            };
            let id = command.clone();
            file.tasks = vec![TaskSpec { id: id.clone(), command, expect: None, args: args.0 }];
            let text = serde_json::to_string(&file).expect("session serializes");
            let s = Session::from_json(&text, &caps)?;
            Ok((s.run(Some(&id), false)?, cli.format.unwrap_or(Format::Text)))
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let no_timing = cli.no_timing;
    let (out, format) = match execute(cli) {
        Ok(r) => r,
        Err(d) => {
            eprintln!("{d}");
            return ExitCode::from(1);
        }
    };
    let mut stdout = std::io::stdout().lock();
    let written = match format {
        Format::Json => {
            let env = if no_timing { out.envelope.without_timing() } else { out.envelope.clone() };
            writeln!(stdout, "{}", env.to_json())
        }
        Format::Text => writeln!(stdout, "{}{}", out.text, out.envelope.summary_line()),
        Format::Csv => {
            if out.csv.is_empty() {
                eprintln!("no task in the selection produces CSV output");
            }
            let many = out.csv.len() > 1;
            out.csv.iter().try_for_each(|(id, csv)| {
                if many {
                    writeln!(stdout, "# {id}")?;
                }
                write!(stdout, "{csv}")
            })
        }
    };
    if written.is_err() {
        return ExitCode::from(1);
    }
    for t in &out.envelope.tasks {
        if let Some(d) = &t.diagnostic {
            eprintln!("{}: {d}", t.id);
        }
    }
    ExitCode::from(out.exit_code as u8)
}
