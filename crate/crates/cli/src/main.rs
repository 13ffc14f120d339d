use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ntiers_core::io::{read_pim, sniff_kind, DocumentKind};
use ntiers_core::scaffold::ScaffoldError;
use ntiers_core::transform::TransformError;
use ntiers_core::{
    diff, emit_scaffold, parse_pim, parse_psm, serialize_psm, transform, validate_pim, validate_psm, Dialect,
    ModelIoError, ModelRef, OrderMode, PsmModel, TemplateSet, ValidationReport,
};

#[derive(Debug, Parser)]
#[command(
    name = "ntiers",
    version,
    about = "Compile a UML class model into an N-tiers platform model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Transform a PIM document into a PSM document.
    Transform {
        input: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Write the rule trace as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Emit name-and-reference elements only.
        #[arg(long)]
        fig9_compat: bool,
    },
    /// Validate a PIM or PSM document.
    Validate {
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Print per-feature counts and names of a PSM document.
    Inspect { input: PathBuf },
    /// Structurally compare two documents of the same kind.
    Diff {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        order_insensitive: bool,
    },
    /// Write stub files for every element of a PSM document.
    Scaffold {
        input: PathBuf,
        out_dir: PathBuf,
        /// Directory holding `<kind>.tmpl` overrides.
        #[arg(long)]
        templates: Option<PathBuf>,
        /// Write the file manifest as JSON lines.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Pim,
    Psm,
}

/// Exit 1 is a model that failed validation (or a non-empty diff); exit 2 is
/// everything that kept the tool from looking at a model at all.
#[derive(Debug)]
enum Failure {
    Invalid(ValidationReport),
    Differs(String),
    Usage(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Invalid(_) | Failure::Differs(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

impl From<ModelIoError> for Failure {
    fn from(e: ModelIoError) -> Self {
        match e {
            ModelIoError::ValidationFailed(r) | ModelIoError::InvalidModel(r) => Failure::Invalid(r),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<TransformError> for Failure {
    fn from(e: TransformError) -> Self {
        match e {
            TransformError::InvalidInput(r) => Failure::Invalid(r),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<ScaffoldError> for Failure {
    fn from(e: ScaffoldError) -> Self {
        match e {
            ScaffoldError::InvalidModel(r) => Failure::Invalid(r),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("io-failure: {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Usage(format!("io-failure: {}: {e}", path.display())))
}

fn report_outcome(report: ValidationReport) -> Outcome {
    if report.is_valid() {
        Ok("valid\n".to_string())
    } else {
        Err(Failure::Invalid(report))
    }
}

fn cmd_transform(input: &Path, out: &Path, trace: Option<&Path>, fig9_compat: bool) -> Outcome {
    let pim = parse_pim(&read(input)?)?;
    let t = transform(&pim)?;
    let dialect = if fig9_compat {
        Dialect::Fig9Compat
    } else {
        Dialect::Full
    };
    let text = serialize_psm(&t.psm, dialect)?;
    write(out, &text)?;
    if let Some(path) = trace {
        write(path, &t.trace.to_jsonl())?;
    }
    let m = &t.psm;
    let am = m.action_mapping();
    let counts = [
        ("classes", pim.classes.len()),
        ("pojos", m.dao_package.pojos.len()),
        ("daos", m.dao_package.daos.len()),
        ("daoimpls", m.dao_package.daoimpls.len()),
        ("dtos", m.business_package.dtos.len()),
        ("services", m.business_package.services.len()),
        ("serviceimpls", m.business_package.serviceimpls.len()),
        ("pages", m.pages().len()),
        ("actions", am.actions.len()),
        ("forms", am.forms.len()),
        ("trace links", t.trace.len()),
    ];
    let mut s = String::new();
    for (what, n) in counts {
        writeln!(s, "{what}: {n}").unwrap();
    }
    Ok(s)
}

fn cmd_validate(input: &Path, kind: Kind) -> Outcome {
    let text = read(input)?;
    match kind {
        Kind::Pim => report_outcome(validate_pim(&read_pim(&text)?)),
        Kind::Psm => report_outcome(validate_psm(&parse_psm(&text)?)),
    }
}

fn inspect(m: &PsmModel) -> String {
    fn section<'a>(s: &mut String, feature: &str, names: impl ExactSizeIterator<Item = &'a String>) {
        writeln!(s, "{feature}: {}", names.len()).unwrap();
        for n in names {
            writeln!(s, "  {n}").unwrap();
        }
    }
    let mut s = String::new();
    writeln!(s, "name: {}", m.name).unwrap();
    let am = m.action_mapping();
    section(&mut s, "jsp", m.pages().iter().map(|x| &x.name));
    section(&mut s, "action", am.actions.iter().map(|x| &x.name));
    section(&mut s, "form", am.forms.iter().map(|x| &x.name));
    let bp = &m.business_package;
    section(&mut s, "services", bp.services.iter().map(|x| &x.name));
    section(&mut s, "serviceimpl", bp.serviceimpls.iter().map(|x| &x.name));
    section(&mut s, "dto", bp.dtos.iter().map(|x| &x.name));
    let dp = &m.dao_package;
    section(&mut s, "dao", dp.daos.iter().map(|x| &x.name));
    section(&mut s, "pojo", dp.pojos.iter().map(|x| &x.name));
    section(&mut s, "daoimpl", dp.daoimpls.iter().map(|x| &x.name));
    s
}

fn cmd_inspect(input: &Path) -> Outcome {
    Ok(inspect(&parse_psm(&read(input)?)?))
}

enum Loaded {
    Pim(ntiers_core::PimModel),
    Psm(Box<PsmModel>),
}

impl Loaded {
    fn load(path: &Path) -> Result<Self, Failure> {
        let text = read(path)?;
        Ok(match sniff_kind(&text)? {
            DocumentKind::Pim => Loaded::Pim(read_pim(&text)?),
            DocumentKind::Psm => Loaded::Psm(Box::new(parse_psm(&text)?)),
        })
    }

    fn as_ref(&self) -> ModelRef<'_> {
        match self {
            Loaded::Pim(m) => ModelRef::Pim(m),
            Loaded::Psm(m) => ModelRef::Psm(m),
        }
    }
}

fn cmd_diff(a: &Path, b: &Path, order_insensitive: bool) -> Outcome {
    let mode = if order_insensitive {
        OrderMode::Insensitive
    } else {
        OrderMode::Sensitive
    };
    let (a, b) = (Loaded::load(a)?, Loaded::load(b)?);
    let d = diff(a.as_ref(), b.as_ref(), mode).map_err(|e| Failure::Usage(e.to_string()))?;
    if d.is_empty() {
        Ok("no differences\n".to_string())
    } else {
        Err(Failure::Differs(format!("{d}differences: {}\n", d.entries.len())))
    }
}

fn cmd_scaffold(input: &Path, out_dir: &Path, templates: Option<&Path>, manifest: Option<&Path>) -> Outcome {
    let psm = parse_psm(&read(input)?)?;
    let set = match templates {
        Some(dir) => TemplateSet::from_dir(dir)?,
        None => TemplateSet::default(),
    };
    let m = emit_scaffold(&psm, &set, out_dir)?;
    if let Some(path) = manifest {
        write(path, &m.to_jsonl())?;
    }
    let bytes: u64 = m.entries.iter().map(|e| e.bytes).sum();
    Ok(format!("files: {}\nbytes: {bytes}\n", m.len()))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Transform {
            input,
            out,
            trace,
            fig9_compat,
        } => cmd_transform(&input, &out, trace.as_deref(), fig9_compat),
        Command::Validate { input, kind } => cmd_validate(&input, kind),
        Command::Inspect { input } => cmd_inspect(&input),
        Command::Diff {
            a,
            b,
            order_insensitive,
        } => cmd_diff(&a, &b, order_insensitive),
        Command::Scaffold {
            input,
            out_dir,
            templates,
            manifest,
        } => cmd_scaffold(&input, &out_dir, templates.as_deref(), manifest.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(summary) => {
            print!("{summary}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            match &failure {
                Failure::Invalid(report) => eprint!("{report}"),
                Failure::Differs(summary) => print!("{summary}"),
                Failure::Usage(message) => eprintln!("error: {message}"),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
