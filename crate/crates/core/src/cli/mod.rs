//! Command-line front end. [`run`] parses arguments, does the work and
//! returns the process exit code: 0 on success, 1 when a verification or
//! count comparison fails, 2 for configuration and I/O errors.

pub mod document;
pub mod render;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::error::{Error, Result};
use crate::gf::{FieldTable, DEFAULT_MAX_Q};
use crate::planes::{select_affine_planes, subsets, Reading};
use crate::projline::{LineCensus, PointLabel, SetLabel, SubsetLabel};
use crate::trimat::RingContext;

use document::{count_table, enumerate_document, planes_document, two_affine_document, Document};

/// Environment variable that raises or lowers the field-order ceiling.
pub const MAX_Q_ENV: &str = "TRIMAT_GEOM_MAX_Q";

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Counts,
    Enumerate,
    Planes,
    Verify,
    Export,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Points,
    NonuniFcs,
    Shielded,
    Planes,
    #[value(name = "2affine")]
    TwoAffine,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Points => "points",
            Kind::NonuniFcs => "nonuni-fcs",
            Kind::Shielded => "shielded",
            Kind::Planes => "planes",
            Kind::TwoAffine => "2affine",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

/// Free cyclic submodules of pairs over lower triangular matrix rings and
/// the finite planes they carry.
#[derive(Clone, Debug, Parser)]
#[command(name = "trimat-geom", version)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Matrix dimension.
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
    pub n: u8,
    /// Field order (a prime power).
    #[arg(long)]
    pub q: u32,
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    /// `first` or `k:<element>`.
    #[arg(long)]
    pub set: Option<SetLabel>,
    /// n = 3 subset as `(x32,x33,y32,y33)`.
    #[arg(long)]
    pub subset: Option<SubsetLabel>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Worker threads; 0 uses every core, 1 the sequential path.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// The output and exit code of a successful run.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

fn config(msg: impl Into<String>) -> Error {
    Error::SelectorInvalid(msg.into())
}

fn ceiling() -> Result<u32> {
    match std::env::var(MAX_Q_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| config(format!("{MAX_Q_ENV}={v:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_MAX_Q),
    }
}

impl RunConfig {
    fn format(&self) -> Format {
        self.format.unwrap_or(match self.command {
            Command::Export => Format::Json,
            _ => Format::Text,
        })
    }

    fn kind(&self) -> Kind {
        self.kind.unwrap_or(match self.command {
            Command::Enumerate => Kind::Points,
            _ => Kind::Planes,
        })
    }

    /// Rejects combinations that can never succeed, before any enumeration.
    pub fn validate(&self) -> Result<()> {
        let n = self.n as usize;
        let format = self.format();
        let kind = self.kind();
        let planar = !matches!(self.command, Command::Counts | Command::Enumerate)
            && !(self.command == Command::Export
                && matches!(kind, Kind::Points | Kind::NonuniFcs | Kind::Shielded));
        if planar && n == 4 {
            return Err(Error::DimensionUnsupported(
                n,
                "2 or 3; planes and theorem checks are not defined for n = 4",
            ));
        }
        if kind == Kind::TwoAffine && n != 3 {
            return Err(Error::DimensionUnsupported(n, "3 for 2-affine planes"));
        }
        if self.subset.is_some() && n != 3 {
            return Err(Error::SubsetInvalid("--subset needs n = 3".into()));
        }
        match (self.command, format) {
            (Command::Counts | Command::Verify, Format::Dot) => Err(config(
                "--format dot applies to enumerate, planes and export",
            )),
            (Command::Verify, Format::Csv) => Err(config("verify reports are text or json")),
            _ => Ok(()),
        }
    }
}

fn census(cfg: &RunConfig) -> Result<LineCensus> {
    let field = FieldTable::with_ceiling(cfg.q, ceiling()?)?;
    let ctx = RingContext::new(cfg.n as usize, field)?;
    LineCensus::enumerate(ctx, cfg.workers)
}

fn check_selectors(cfg: &RunConfig, census: &LineCensus) -> Result<()> {
    if let Some(SetLabel::K(k)) = cfg.set {
        if u32::from(k) >= census.q() {
            return Err(Error::SelectorInvalid(format!(
                "k:{k} is not an element of GF({})",
                census.q()
            )));
        }
    }
    if let Some(sub) = cfg.subset {
        let field = census.ctx().field();
        let sets = cfg.set.map_or_else(|| SetLabel::all(field), |s| vec![s]);
        if !sets
            .iter()
            .any(|&s| SubsetLabel::all_in(s, field).contains(&sub))
        {
            return Err(Error::SubsetInvalid(format!("{sub} is not a subset label")));
        }
    }
    Ok(())
}

fn document(cfg: &RunConfig, census: &LineCensus) -> Result<Document> {
    check_selectors(cfg, census)?;
    let kind = cfg.kind();
    Ok(match kind {
        Kind::Points => enumerate_document(census, kind.name(), census.points()),
        Kind::NonuniFcs => enumerate_document(census, kind.name(), census.nonuni_fcs()),
        Kind::Shielded => enumerate_document(census, kind.name(), census.shielded()),
        Kind::Planes => {
            let total = select_affine_planes(census, None, None)?.len() as u64;
            let planes = select_affine_planes(census, cfg.set, cfg.subset)?;
            planes_document(census, &planes, total)?
        }
        Kind::TwoAffine => {
            let chosen: Vec<PointLabel> = subsets(census)?
                .into_iter()
                .filter(|s| cfg.set.is_none_or(|set| s.set == set))
                .filter(|s| cfg.subset.is_none_or(|sub| s.subset == Some(sub)))
                .collect();
            if chosen.is_empty() {
                return Err(Error::SubsetInvalid(
                    "no subset matches the selectors".into(),
                ));
            }
            let total = select_affine_planes(census, None, None)?.len() as u64;
            two_affine_document(census, &chosen, Reading::Every, total)?
        }
    })
}

fn render(doc: &Document, format: Format) -> Result<String> {
    match format {
        Format::Json => doc.to_json(),
        Format::Csv => render::document_csv(doc),
        Format::Dot => Ok(render::document_dot(doc)),
        Format::Text => Ok(render::document_text(doc)),
    }
}

fn structures_fail(doc: &Document) -> bool {
    !doc.count_mismatches().is_empty() || doc.structures.iter().any(|s| !s.axioms_hold())
}

/// Runs a validated configuration and returns its output.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    let census = census(cfg)?;
    let format = cfg.format();
    let (text, failed) = match cfg.command {
        Command::Counts => {
            let (n, planar) = (census.n(), matches!(census.n(), 2 | 3));
            let planes = planar
                .then(|| select_affine_planes(&census, None, None).map(|p| p.len() as u64))
                .transpose()?;
            let two = (n == 3)
                .then(|| subsets(&census).map(|s| s.len() as u64))
                .transpose()?;
            let counts = count_table(&census, planes, two);
            let failed = counts.values().any(|r| r.matches == Some(false));
            let text = match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&counts)?;
                    s.push('\n');
                    s
                }
                Format::Csv => render::counts_csv(&counts)?,
                _ => render::counts_text(n, census.q(), &counts),
            };
            (text, failed)
        }
        Command::Verify => {
            let report = verify::verify(&census)?;
            let text = match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report)?;
                    s.push('\n');
                    s
                }
                _ => report.to_text(),
            };
            (text, !report.passed())
        }
        Command::Enumerate | Command::Planes | Command::Export => {
            let doc = document(cfg, &census)?;
            (render(&doc, format)?, structures_fail(&doc))
        }
    };
    Ok(Outcome {
        text,
        code: if failed { EXIT_MISMATCH } else { EXIT_OK },
    })
}

/// Full command-line entry point; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let outcome = match execute(&cfg) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_CONFIG;
        }
    };
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, &outcome.text).map_err(Error::from),
        None => stdout
            .write_all(outcome.text.as_bytes())
            .map_err(Error::from),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_CONFIG;
    }
    outcome.code
}
