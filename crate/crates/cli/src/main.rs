use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fqx_cli::config::{validate_config, Kind, Overrides};
use fqx_cli::{builtins, execute, exit, Failure};

/// Exhaustive experiments over F_q[x].
#[derive(Parser, Debug)]
#[command(name = "fqx", version, arg_required_else_help = true)]
struct Cli {
    /// Print the available functions, characters and experiment kinds.
    #[arg(long)]
    list_builtins: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the experiment a config file describes.
    Run(FileArgs),
    /// Check a config and print it with defaults filled in.
    Validate(FileArgs),
    DecayTable(KindArgs),
    DistanceGrowth(KindArgs),
    GowersDecay(KindArgs),
    ApDecay(KindArgs),
    KataiCheck(KindArgs),
    TkCheck(KindArgs),
    BiasRankDemo(KindArgs),
    ZeroCountCheck(KindArgs),
}

#[derive(Args, Debug)]
struct FileArgs {
    config: PathBuf,
    #[command(flatten)]
    over: OverrideArgs,
}

#[derive(Args, Debug)]
struct KindArgs {
    /// Optional config file; its `kind` must match the subcommand.
    config: Option<PathBuf>,
    #[command(flatten)]
    over: OverrideArgs,
}

#[derive(Args, Debug)]
struct OverrideArgs {
    /// Set any config key, e.g. `--set field.p=3` or `--set params.domain=monic`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// TOML integers are signed, so seeds stop at 2^63 - 1.
    #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
    seed: Option<i64>,
    #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
    n_min: Option<i64>,
    #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
    n_max: Option<i64>,
    /// Evaluation budget per row.
    #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
    budget: Option<i64>,
    /// Output path, `-` for standard output.
    #[arg(long, short)]
    output: Option<String>,
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,
}

impl OverrideArgs {
    fn collect(&self, kind: Option<Kind>) -> Result<Overrides, String> {
        let mut o = Overrides {
            kind,
            ..Overrides::default()
        };
        for s in &self.set {
            o.push(s)?;
        }
        let int = toml::Value::Integer;
        if let Some(v) = self.seed {
            o.set("seed", int(v));
        }
        if let Some(v) = self.n_min {
            o.set("n.min", int(v));
        }
        if let Some(v) = self.n_max {
            o.set("n.max", int(v));
        }
        if let Some(v) = self.budget {
            o.set("budget.evaluations", int(v));
        }
        if let Some(v) = &self.output {
            o.set("output.path", v.as_str());
        }
        if let Some(v) = &self.format {
            o.set("output.format", v.as_str());
        }
        Ok(o)
    }
}

fn report(f: &Failure) -> ExitCode {
    for m in f.messages() {
        eprintln!("error: {m}");
    }
    ExitCode::from(f.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::INVALID
            } else {
                exit::OK
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.list_builtins {
        print!("{}", builtins());
        if cli.command.is_none() {
            return ExitCode::SUCCESS;
        }
    }
    let Some(command) = cli.command else {
        return ExitCode::SUCCESS;
    };
    let (path, over, kind, dry) = match command {
        Command::Run(a) => (Some(a.config), a.over, None, false),
        Command::Validate(a) => (Some(a.config), a.over, None, true),
        Command::DecayTable(a) => (a.config, a.over, Some(Kind::DecayTable), false),
        Command::DistanceGrowth(a) => (a.config, a.over, Some(Kind::DistanceGrowth), false),
        Command::GowersDecay(a) => (a.config, a.over, Some(Kind::GowersDecay), false),
        Command::ApDecay(a) => (a.config, a.over, Some(Kind::ApDecay), false),
        Command::KataiCheck(a) => (a.config, a.over, Some(Kind::KataiCheck), false),
        Command::TkCheck(a) => (a.config, a.over, Some(Kind::TkCheck), false),
        Command::BiasRankDemo(a) => (a.config, a.over, Some(Kind::BiasRankDemo), false),
        Command::ZeroCountCheck(a) => (a.config, a.over, Some(Kind::ZeroCountCheck), false),
    };
    let overrides = match over.collect(kind) {
        Ok(o) => o,
        Err(e) => return report(&Failure::Invalid(vec![e])),
    };
    let (name, text) = match &path {
        Some(p) => match std::fs::read_to_string(p) {
            Ok(t) => (p.display().to_string(), t),
            Err(e) => return report(&Failure::Invalid(vec![format!("{}: {e}", p.display())])),
        },
        None => ("<flags>".to_string(), String::new()),
    };
    let config = match validate_config(&text, &overrides) {
        Ok(c) => c,
        Err(d) => return report(&Failure::from_diagnostics(&name, &d)),
    };
    if dry {
        print!("{}", config.to_toml());
        return ExitCode::SUCCESS;
    }
    match execute(&config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => report(&f),
    }
}
