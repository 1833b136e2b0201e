//! Config-driven experiment runner for `fqx-core`.
//!
//! A run is described by a TOML file (see `SCHEMA.md`). [`config::validate_config`]
//! checks it and fills defaults, [`execute`] runs it and writes CSV or JSON.

pub mod config;
pub mod experiments;
pub mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};

use fqx_core::descriptor::{Builtin, ValueSet};

use config::{Config, Diagnostic, Format, Params, Severity};
use experiments::{beta_indices, columns, Prepared, RunError};
use output::{CsvSink, JsonSink, Sink};

/// Process exit statuses.
pub mod exit {
    pub const OK: u8 = 0;
    pub const INVALID: u8 = 1;
    pub const BUDGET: u8 = 2;
    pub const INTERNAL: u8 = 3;
}

#[derive(Debug)]
pub enum Failure {
    Invalid(Vec<String>),
    Budget(Vec<String>),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => exit::INVALID,
            Failure::Budget(_) => exit::BUDGET,
            Failure::Internal(_) => exit::INTERNAL,
        }
    }

    pub fn messages(&self) -> Vec<String> {
        match self {
            Failure::Invalid(m) | Failure::Budget(m) => m.clone(),
            Failure::Internal(m) => vec![m.clone()],
        }
    }

    /// Validation diagnostics; budget refusals only count as such when
    /// nothing else is wrong.
    pub fn from_diagnostics(file: &str, diags: &[Diagnostic]) -> Failure {
        let lines = diags.iter().map(|d| d.render(file)).collect();
        if diags.iter().all(|d| d.severity == Severity::Budget) {
            Failure::Budget(lines)
        } else {
            Failure::Invalid(lines)
        }
    }
}

impl From<RunError> for Failure {
    fn from(e: RunError) -> Self {
        match e {
            RunError::Budget { .. } => Failure::Budget(vec![e.to_string()]),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

/// Everything needed to re-derive a row, as `key: value` pairs.
pub fn metadata(c: &Config, prep: &Prepared) -> Vec<(String, String)> {
    let f = &prep.field;
    let mut m = vec![
        (
            "field".to_string(),
            format!(
                "q={} p={} r={} modulus={:?}",
                f.order(),
                f.characteristic(),
                f.degree(),
                f.modulus()
            ),
        ),
        ("n".into(), format!("{}..={}", c.n.min, c.n.max)),
        (
            "seed".into(),
            c.seed.map_or_else(|| "none".to_string(), |s| s.to_string()),
        ),
        ("budget".into(), c.budget.evaluations.to_string()),
        ("factor_degree".into(), prep.fz.max_degree().to_string()),
    ];
    if let Some(f) = &prep.function {
        m.push(("function".into(), f.descriptor().to_string()));
    }
    if c.against.is_some() {
        m.push(("against".into(), prep.against.descriptor().to_string()));
    }
    if let Some(p) = &c.phase {
        m.push((
            "phase".into(),
            format!("{} * L_1 ... L_{}", p.coeff, p.degree),
        ));
        m.push(("betas".into(), format!("{:?}", beta_indices(prep))));
    }
    let params = serde_json::to_string(&c.params).expect("params serialize");
    m.push(("params".into(), params));
    if let Params::Decay(d) = &c.params {
        m.push(("domain".into(), d.domain.name().into()));
    }
    m
}

fn open(path: &str) -> io::Result<Box<dyn Write>> {
    Ok(if path == "-" {
        Box::new(io::stdout().lock())
    } else {
        Box::new(BufWriter::new(File::create(path)?))
    })
}

/// Runs a validated config, writing to its output path.
pub fn execute(c: &Config) -> Result<(), Failure> {
    let out =
        open(&c.output.path).map_err(|e| Failure::Internal(format!("{}: {e}", c.output.path)))?;
    execute_to(c, out)
}

/// Runs a validated config, writing to `out`.
pub fn execute_to<W: Write + 'static>(c: &Config, out: W) -> Result<(), Failure> {
    let prep = Prepared::new(c)?;
    let meta = metadata(c, &prep);
    let cols = columns(c.kind);
    let io_err = |e: io::Error| Failure::Internal(format!("writing output: {e}"));
    let mut sink: Box<dyn Sink> = match c.output.format {
        Format::Csv => Box::new(CsvSink::new(out, c.kind, cols, &meta).map_err(io_err)?),
        Format::Json => {
            let cfg = serde_json::to_value(c).expect("configs serialize");
            Box::new(JsonSink::new(out, c.kind, cols, &meta, cfg))
        }
    };
    experiments::run(c, &prep, &mut |row| sink.row(row))?;
    sink.finish().map_err(io_err)
}

/// Text printed by `--list-builtins`.
pub fn builtins() -> String {
    let mut s = String::from("functions:\n");
    for b in Builtin::ALL {
        s.push_str(&format!("  {}\n", b.name()));
    }
    s.push_str("  random      values = ");
    s.push_str(
        &[ValueSet::Signs, ValueSet::UnitCircle]
            .map(ValueSet::name)
            .join(" | "),
    );
    s.push_str(", needs seed\n");
    s.push_str("  character   a Hayes character given by [<section>.character]\n");
    s.push_str("characters ([<section>.character] keys):\n");
    s.push_str("  modulus = [c0, c1, ...]     Dirichlet modulus, lowest coefficient first\n");
    s.push_str("  dirichlet_index = [...]     exponent vector; empty is principal\n");
    s.push_str("  short_length, short_index   short-interval character of that length\n");
    s.push_str("  unit_index                  character of F_q^* on the leading coefficient\n");
    s.push_str("  theta = { rational = { num, den } } | { real = t }   degree twist\n");
    s.push_str("kinds:\n");
    for k in config::Kind::ALL {
        s.push_str(&format!("  {k}  [{}]\n", columns(k).join(", ")));
    }
    s
}
